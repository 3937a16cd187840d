//! Sub- and quotient complexes, short exact sequences, connecting
//! homomorphisms and the resulting long exact sequence in homology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::chain::{induced_map_with_bases, ChainMap, ChainSlice, HomologyBasis};
use crate::linalg::echelon::{LinearSolver, Subspace};
use crate::linalg::sparse::{SparseMatrix, SparseVec};

/// The subcomplex spanned by `spaces[n]` in each degree, in the RREF bases
/// of the subspaces, together with its inclusion. Fails unless the
/// subspaces are closed under the boundary.
pub fn subcomplex(c: &ChainSlice, spaces: &[Subspace]) -> Result<(ChainSlice, ChainMap)> {
    check_spaces(c, spaces)?;
    let field = c.field();
    let mut boundaries = Vec::new();
    for n in 1..=c.top() {
        let d = c.boundary(n).expect("degree in range");
        let cols = spaces[n]
            .basis()
            .iter()
            .map(|v| {
                let dv = d.apply(v);
                spaces[n - 1].coordinates(&dv).ok_or_else(|| {
                    Error::InvalidArgument(format!("subspace in degree {n} is not closed under the boundary"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(SparseMatrix::from_columns(spaces[n - 1].dim(), cols, field)?);
    }
    let dims = spaces.iter().map(Subspace::dim).collect();
    let sub = ChainSlice::new(field, dims, boundaries)?;
    let incl = ChainMap::new(spaces.iter().map(Subspace::basis_matrix).collect());
    Ok((sub, incl))
}

/// The quotient by the subcomplex spanned by `spaces`, with basis the
/// coordinate vectors off the pivots of each subspace, and the projection.
pub fn quotient(c: &ChainSlice, spaces: &[Subspace]) -> Result<(ChainSlice, ChainMap)> {
    check_spaces(c, spaces)?;
    let field = c.field();
    let complements: Vec<Vec<usize>> = spaces.iter().map(Subspace::complement).collect();
    let positions: Vec<Vec<Option<usize>>> = complements
        .iter()
        .zip(spaces)
        .map(|(comp, s)| {
            let mut pos = vec![None; s.ambient()];
            for (k, &i) in comp.iter().enumerate() {
                pos[i] = Some(k);
            }
            pos
        })
        .collect();
    let project = |n: usize, v: &SparseVec| -> SparseVec {
        let r = spaces[n].reduce(v);
        SparseVec::from_terms(r.iter().map(|(i, a)| {
            (positions[n][*i].expect("reduced vectors live off the pivots"), a.clone())
        }))
    };
    for n in 1..=c.top() {
        let d = c.boundary(n).expect("degree in range");
        for v in spaces[n].basis() {
            if !spaces[n - 1].contains(&d.apply(v)) {
                return Err(Error::InvalidArgument(format!(
                    "subspace in degree {n} is not closed under the boundary"
                )));
            }
        }
    }
    let mut boundaries = Vec::new();
    for n in 1..=c.top() {
        let d = c.boundary(n).expect("degree in range");
        let cols = complements[n].iter().map(|&j| project(n - 1, d.column(j))).collect();
        boundaries.push(SparseMatrix::from_columns(complements[n - 1].len(), cols, field)?);
    }
    let dims = complements.iter().map(Vec::len).collect();
    let quot = ChainSlice::new(field, dims, boundaries)?;
    let proj = (0..=c.top())
        .map(|n| {
            let cols = (0..c.dim(n)).map(|j| project(n, &SparseVec::unit(j, field))).collect();
            SparseMatrix::from_columns(complements[n].len(), cols, field)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((quot, ChainMap::new(proj)))
}

fn check_spaces(c: &ChainSlice, spaces: &[Subspace]) -> Result<()> {
    if spaces.len() != c.top() + 1 {
        return Err(Error::Dimension(format!(
            "{} subspaces for a complex with {} degrees",
            spaces.len(),
            c.top() + 1
        )));
    }
    for (n, s) in spaces.iter().enumerate() {
        if s.ambient() != c.dim(n) || s.field() != c.field() {
            return Err(Error::Dimension(format!("subspace in degree {n} has the wrong ambient space")));
        }
    }
    Ok(())
}

/// `0 -> sub --i--> mid --p--> quot -> 0`, certified exact in every degree.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    sub: ChainSlice,
    mid: ChainSlice,
    quot: ChainSlice,
    i: ChainMap,
    p: ChainMap,
}

impl ShortExactSequence {
    /// Checks that `i` and `p` are chain maps, `i` is injective, `p` is
    /// surjective, `p i = 0` and `rank i + rank p = dim mid` in every degree.
    pub fn new(
        sub: ChainSlice,
        mid: ChainSlice,
        quot: ChainSlice,
        i: ChainMap,
        p: ChainMap,
    ) -> Result<ShortExactSequence> {
        if sub.top() != mid.top() || mid.top() != quot.top() {
            return Err(Error::NotExact("the three complexes have different ranges".into()));
        }
        for c in [&sub, &mid, &quot] {
            c.check_complex()?;
        }
        i.check(&sub, &mid)?;
        p.check(&mid, &quot)?;
        for n in 0..=mid.top() {
            let (in_, pn) = (&i.components()[n], &p.components()[n]);
            let ri = in_.rank();
            let rp = pn.rank();
            if ri != sub.dim(n) {
                return Err(Error::NotExact(format!("i is not injective in degree {n}")));
            }
            if rp != quot.dim(n) {
                return Err(Error::NotExact(format!("p is not surjective in degree {n}")));
            }
            if !pn.mul(in_)?.is_zero() {
                return Err(Error::NotExact(format!("p o i is nonzero in degree {n}")));
            }
            if ri + rp != mid.dim(n) {
                return Err(Error::NotExact(format!("image of i differs from kernel of p in degree {n}")));
            }
        }
        Ok(ShortExactSequence { sub, mid, quot, i, p })
    }

    /// The sequence `0 -> S -> C -> C/S -> 0` for a subcomplex given by subspaces.
    pub fn from_subcomplex(c: &ChainSlice, spaces: &[Subspace]) -> Result<ShortExactSequence> {
        let (sub, i) = subcomplex(c, spaces)?;
        let (quot, p) = quotient(c, spaces)?;
        ShortExactSequence::new(sub, c.clone(), quot, i, p)
    }

    pub fn sub(&self) -> &ChainSlice {
        &self.sub
    }

    pub fn mid(&self) -> &ChainSlice {
        &self.mid
    }

    pub fn quot(&self) -> &ChainSlice {
        &self.quot
    }

    pub fn inclusion(&self) -> &ChainMap {
        &self.i
    }

    pub fn projection(&self) -> &ChainMap {
        &self.p
    }

    /// `delta_n : H_n(quot) -> H_{n-1}(sub)` in freshly computed homology bases.
    pub fn connecting_homomorphism(&self, n: usize) -> Result<SparseMatrix> {
        if n == 0 || n > self.mid.top() {
            return Err(Error::InvalidArgument(format!("no connecting map out of degree {n}")));
        }
        let hq = HomologyBasis::compute(&self.quot, n)?;
        let hs = HomologyBasis::compute(&self.sub, n - 1)?;
        self.connecting_with_bases(&hq, &hs, None)
    }

    /// As [`ShortExactSequence::connecting_homomorphism`], lifting through
    /// `p` with the supplied function instead of a solver. Each lift is checked.
    pub fn connecting_homomorphism_with_lift(
        &self,
        n: usize,
        lift: &dyn Fn(&SparseVec) -> SparseVec,
    ) -> Result<SparseMatrix> {
        if n == 0 || n > self.mid.top() {
            return Err(Error::InvalidArgument(format!("no connecting map out of degree {n}")));
        }
        let hq = HomologyBasis::compute(&self.quot, n)?;
        let hs = HomologyBasis::compute(&self.sub, n - 1)?;
        self.connecting_with_bases(&hq, &hs, Some(lift))
    }

    fn connecting_with_bases(
        &self,
        hq: &HomologyBasis,
        hs: &HomologyBasis,
        lift: Option<&dyn Fn(&SparseVec) -> SparseVec>,
    ) -> Result<SparseMatrix> {
        let n = hq.degree();
        self.connecting_on_cycles(n, hq.representatives(), hs, lift)
    }

    fn connecting_on_cycles(
        &self,
        n: usize,
        cycles: &[SparseVec],
        hs: &HomologyBasis,
        lift: Option<&dyn Fn(&SparseVec) -> SparseVec>,
    ) -> Result<SparseMatrix> {
        let pn = &self.p.components()[n];
        let solver = lift.is_none().then(|| LinearSolver::new(pn));
        let down = LinearSolver::new(&self.i.components()[n - 1]);
        let d = self.mid.boundary(n).expect("degree in range");
        let mut images = Vec::with_capacity(cycles.len());
        for z in cycles {
            let y = match (&solver, lift) {
                (Some(s), _) => s.solve(z).expect("p is surjective"),
                (None, Some(f)) => {
                    let y = f(z);
                    if pn.apply(&y) != *z {
                        return Err(Error::InvalidArgument(format!(
                            "supplied lift is not a preimage in degree {n}"
                        )));
                    }
                    y
                }
                (None, None) => unreachable!(),
            };
            let dy = d.apply(&y);
            let x = down.solve(&dy).ok_or_else(|| {
                Error::NotExact(format!("boundary of a lift does not come from the subcomplex in degree {}", n - 1))
            })?;
            images.push(x);
        }
        hs.classes_matrix(&images)
    }

    /// Assembles `H_n(sub) -> H_n(mid) -> H_n(quot) -> H_{n-1}(sub)` for
    /// `n <= top - 1` and certifies exactness at every node.
    ///
    /// The top degree of the slices only feeds the incoming connecting map
    /// into `H_{top-1}(sub)`: its cycles are used in place of `H_top(quot)`,
    /// which has the same image.
    pub fn long_exact_sequence(&self) -> Result<LongExactSequence> {
        let top = self.mid.top();
        if top == 0 {
            return Err(Error::InvalidArgument(
                "a long exact sequence needs slices through degree 1".into(),
            ));
        }
        let max = top - 1;
        let bases = |c: &ChainSlice| (0..=max).map(|n| HomologyBasis::compute(c, n)).collect::<Result<Vec<_>>>();
        let hs = bases(&self.sub)?;
        let hm = bases(&self.mid)?;
        let hq = bases(&self.quot)?;

        let mut i_maps = Vec::new();
        let mut p_maps = Vec::new();
        let mut delta = Vec::new();
        for n in 0..=max {
            i_maps.push(induced_map_with_bases(&self.i, &hs[n], &hm[n])?);
            p_maps.push(induced_map_with_bases(&self.p, &hm[n], &hq[n])?);
            delta.push(if n == 0 {
                SparseMatrix::zero(0, hq[0].dim(), self.mid.field())
            } else {
                self.connecting_with_bases(&hq[n], &hs[n - 1], None)?
            });
        }
        let top_cycles = match self.quot.boundary(top) {
            Some(d) => d.kernel_basis().into_columns(),
            None => Vec::new(),
        };
        let delta_top = self.connecting_on_cycles(top, &top_cycles, &hs[max], None)?;

        let mut nodes = Vec::new();
        for n in (0..=max).rev() {
            let into_sub = if n == max { &delta_top } else { &delta[n + 1] };
            nodes.push(LesNode::new("sub", n, hs[n].dim(), into_sub, &i_maps[n])?);
            nodes.push(LesNode::new("mid", n, hm[n].dim(), &i_maps[n], &p_maps[n])?);
            nodes.push(LesNode::new("quot", n, hq[n].dim(), &p_maps[n], &delta[n])?);
        }
        Ok(LongExactSequence {
            induced_sub_to_mid: i_maps,
            induced_mid_to_quot: p_maps,
            connecting: delta,
            nodes,
        })
    }
}

/// One group of a long exact sequence together with the ranks of the maps
/// into and out of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesNode {
    /// `sub`, `mid` or `quot`
    pub complex: String,
    pub degree: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// `out o in = 0`
    pub composite_zero: bool,
    pub exact: bool,
}

impl LesNode {
    fn new(complex: &str, degree: usize, dim: usize, incoming: &SparseMatrix, outgoing: &SparseMatrix) -> Result<LesNode> {
        let rank_in = incoming.rank();
        let rank_out = outgoing.rank();
        let composite_zero = outgoing.mul(incoming)?.is_zero();
        Ok(LesNode {
            complex: complex.to_string(),
            degree,
            dim,
            rank_in,
            rank_out,
            composite_zero,
            exact: composite_zero && rank_in + rank_out == dim,
        })
    }
}

#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub induced_sub_to_mid: Vec<SparseMatrix>,
    pub induced_mid_to_quot: Vec<SparseMatrix>,
    /// `connecting[n] : H_n(quot) -> H_{n-1}(sub)`; `connecting[0]` is empty.
    pub connecting: Vec<SparseMatrix>,
    /// From the highest degree down.
    pub nodes: Vec<LesNode>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn first_failure(&self) -> Option<&LesNode> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::Field;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_cone_has_invertible_connecting_map() {
        // 0 -> (0 -> Q) -> (Q --id--> Q) -> (Q -> 0) -> 0
        let f = q();
        let mid = ChainSlice::new(f, vec![1, 1], vec![SparseMatrix::identity(1, f)]).unwrap();
        let sub = ChainSlice::new(f, vec![1, 0], vec![SparseMatrix::zero(1, 0, f)]).unwrap();
        let quot = ChainSlice::new(f, vec![0, 1], vec![SparseMatrix::zero(0, 1, f)]).unwrap();
        let i = ChainMap::new(vec![SparseMatrix::identity(1, f), SparseMatrix::zero(1, 0, f)]);
        let p = ChainMap::new(vec![SparseMatrix::zero(0, 1, f), SparseMatrix::identity(1, f)]);
        let ses = ShortExactSequence::new(sub, mid, quot, i, p).unwrap();
        let delta = ses.connecting_homomorphism(1).unwrap();
        assert_eq!(delta.shape(), (1, 1));
        assert_eq!(delta.rank(), 1);
    }

    #[test]
    fn rejects_non_exact_data() {
        let f = q();
        let c = ChainSlice::new(f, vec![1], vec![]).unwrap();
        let zero = ChainSlice::new(f, vec![0], vec![]).unwrap();
        let i = ChainMap::new(vec![SparseMatrix::identity(1, f)]);
        let p = ChainMap::new(vec![SparseMatrix::identity(1, f)]);
        assert!(ShortExactSequence::new(c.clone(), c.clone(), c.clone(), i, p).is_err());
        let i0 = ChainMap::new(vec![SparseMatrix::zero(1, 0, f)]);
        let p0 = ChainMap::new(vec![SparseMatrix::zero(0, 1, f)]);
        assert!(ShortExactSequence::new(zero.clone(), c.clone(), zero, i0, p0).is_err());
    }

    #[test]
    fn subcomplex_and_quotient_of_a_cone() {
        let f = q();
        let c = ChainSlice::new(f, vec![1, 1], vec![SparseMatrix::identity(1, f)]).unwrap();
        let spaces = vec![Subspace::full(1, f), Subspace::zero(1, f)];
        let ses = ShortExactSequence::from_subcomplex(&c, &spaces).unwrap();
        assert_eq!(ses.sub().dims(), &[1, 0]);
        assert_eq!(ses.quot().dims(), &[0, 1]);
        let bad = vec![Subspace::zero(1, f), Subspace::full(1, f)];
        assert!(subcomplex(&c, &bad).is_err());
        assert!(quotient(&c, &bad).is_err());
    }
}
