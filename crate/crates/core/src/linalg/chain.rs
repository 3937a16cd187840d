//! Bounded chain complexes, their homology and induced maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::echelon::{Echelon, Subspace};
use crate::linalg::scalar::Field;
use crate::linalg::sparse::{SparseMatrix, SparseVec};

/// A chain complex concentrated in degrees `0..=top`, zero elsewhere.
///
/// `boundary(n)` is the `dim(n-1) x dim(n)` matrix of `d_n`. Truncations of
/// unbounded complexes are represented by building one degree more than the
/// homology that is wanted and discarding the top degree of the report.
#[derive(Clone, Debug)]
pub struct ChainSlice {
    field: Field,
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainSlice {
    /// `boundaries[k]` is `d_{k+1}`. Only shapes are checked here; see
    /// [`ChainSlice::check_complex`] for `d o d = 0`.
    pub fn new(field: Field, dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<ChainSlice> {
        if dims.is_empty() {
            return Err(Error::Dimension("a chain slice needs degree 0".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!(
                "{} degrees need {} boundary matrices, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.shape() != (dims[k], dims[k + 1]) {
                return Err(Error::Dimension(format!(
                    "d{} has shape {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    (dims[k], dims[k + 1])
                )));
            }
            if d.field() != field {
                return Err(Error::Dimension(format!("d{} is over the wrong field", k + 1)));
            }
        }
        Ok(ChainSlice {
            field,
            dims,
            boundaries,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `d_n` for `1 <= n <= top`.
    pub fn boundary(&self, n: usize) -> Option<&SparseMatrix> {
        if n == 0 {
            return None;
        }
        self.boundaries.get(n - 1)
    }

    /// `d_n` for any `n`, with zero maps outside the stored range.
    pub fn boundary_or_zero(&self, n: usize) -> SparseMatrix {
        match self.boundary(n) {
            Some(d) => d.clone(),
            None => SparseMatrix::zero(
                if n == 0 { 0 } else { self.dim(n - 1) },
                self.dim(n),
                self.field,
            ),
        }
    }

    /// Verifies `d_n d_{n+1} = 0` exactly in every degree.
    pub fn check_complex(&self) -> Result<()> {
        for n in 1..self.top() {
            let dd = self.boundaries[n - 1].mul(&self.boundaries[n])?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(())
    }

    /// Keeps degrees `0..=top`.
    pub fn truncated(&self, top: usize) -> ChainSlice {
        let top = top.min(self.top());
        ChainSlice {
            field: self.field,
            dims: self.dims[..=top].to_vec(),
            boundaries: self.boundaries[..top].to_vec(),
        }
    }
}

/// A family of matrices `f_n : C_n -> D_n`, `n = 0..=top`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    components: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(components: Vec<SparseMatrix>) -> ChainMap {
        ChainMap { components }
    }

    pub fn identity(c: &ChainSlice) -> ChainMap {
        ChainMap::new(
            c.dims()
                .iter()
                .map(|&d| SparseMatrix::identity(d, c.field()))
                .collect(),
        )
    }

    pub fn zero(src: &ChainSlice, dst: &ChainSlice) -> ChainMap {
        ChainMap::new(
            (0..=src.top().min(dst.top()))
                .map(|n| SparseMatrix::zero(dst.dim(n), src.dim(n), src.field()))
                .collect(),
        )
    }

    pub fn top(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn component(&self, n: usize) -> Option<&SparseMatrix> {
        self.components.get(n)
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.components
    }

    /// `self o other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let top = self.top().min(other.top());
        let components = (0..=top)
            .map(|n| self.components[n].mul(&other.components[n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap::new(components))
    }

    /// Verifies shapes and `d^dst_n f_n = f_{n-1} d^src_n` in every degree
    /// covered by both the map and the two complexes.
    pub fn check(&self, src: &ChainSlice, dst: &ChainSlice) -> Result<()> {
        let top = src.top().min(dst.top());
        if self.components.len() < top + 1 {
            return Err(Error::Dimension(format!(
                "chain map has {} components, complexes need {}",
                self.components.len(),
                top + 1
            )));
        }
        for n in 0..=top {
            if self.components[n].shape() != (dst.dim(n), src.dim(n)) {
                return Err(Error::NotAChainMap {
                    degree: n,
                    detail: format!(
                        "component has shape {:?}, expected {:?}",
                        self.components[n].shape(),
                        (dst.dim(n), src.dim(n))
                    ),
                });
            }
        }
        for n in 1..=top {
            let left = dst.boundary_or_zero(n).mul(&self.components[n])?;
            let right = self.components[n - 1].mul(&src.boundary_or_zero(n))?;
            if left != right {
                return Err(Error::NotAChainMap {
                    degree: n,
                    detail: "boundary does not commute".into(),
                });
            }
        }
        Ok(())
    }
}

/// Homology dimensions in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    /// dim ker d_n
    pub cycles: usize,
    /// rank d_{n+1}
    pub boundaries: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
    #[serde(skip)]
    pub representatives: Option<Vec<Vec<SparseVec>>>,
}

impl HomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.homology).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.homology)
    }

    /// Keeps degrees `0..=top`.
    pub fn truncated(mut self, top: usize) -> HomologyReport {
        self.degrees.truncate(top + 1);
        if let Some(reps) = self.representatives.as_mut() {
            reps.truncate(top + 1);
        }
        self
    }
}

/// Homology dimensions of a bounded complex. Fails if `d o d != 0`.
pub fn homology(c: &ChainSlice) -> Result<HomologyReport> {
    c.check_complex()?;
    let ranks: Vec<usize> = (0..=c.top() + 1).map(|n| match c.boundary(n) {
        Some(d) => d.rank(),
        None => 0,
    })
    .collect();
    let degrees = (0..=c.top())
        .map(|n| {
            let cycles = c.dim(n) - ranks[n];
            let boundaries = ranks[n + 1];
            DegreeHomology {
                degree: n,
                cycles,
                boundaries,
                homology: cycles - boundaries,
            }
        })
        .collect();
    Ok(HomologyReport {
        degrees,
        representatives: None,
    })
}

/// Homology with cycle representatives in every degree.
pub fn homology_with_representatives(c: &ChainSlice) -> Result<HomologyReport> {
    let mut report = homology(c)?;
    let mut reps = Vec::new();
    for n in 0..=c.top() {
        let basis = HomologyBasis::compute(c, n)?;
        debug_assert_eq!(basis.dim(), report.degrees[n].homology);
        reps.push(basis.representatives().to_vec());
    }
    report.representatives = Some(reps);
    Ok(report)
}

/// Chosen cycle representatives for a basis of `H_n`, with the machinery to
/// express any cycle's class in that basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    degree: usize,
    field: Field,
    cycle_test: Option<SparseMatrix>,
    boundaries: Subspace,
    representatives: Vec<SparseVec>,
    rep_space: Subspace,
    rep_transform: Vec<SparseVec>,
}

impl HomologyBasis {
    /// Extends a basis of the boundaries to one of the cycles; the added
    /// cycles are the representatives.
    pub fn compute(c: &ChainSlice, n: usize) -> Result<HomologyBasis> {
        let field = c.field();
        let cycles = match c.boundary(n) {
            Some(d) => d.kernel_basis().into_columns(),
            None => (0..c.dim(n)).map(|i| SparseVec::unit(i, field)).collect(),
        };
        let boundaries = match c.boundary(n + 1) {
            Some(d) => Subspace::spanned_by(c.dim(n), field, d.columns().iter()),
            None => Subspace::zero(c.dim(n), field),
        };
        Ok(HomologyBasis::from_cycles(
            n,
            field,
            c.boundary(n).cloned(),
            boundaries,
            cycles,
        ))
    }

    fn from_cycles(
        degree: usize,
        field: Field,
        cycle_test: Option<SparseMatrix>,
        boundaries: Subspace,
        cycles: Vec<SparseVec>,
    ) -> HomologyBasis {
        let ambient = boundaries.ambient();
        let mut ech = Echelon::tracked(field);
        let mut representatives = Vec::new();
        for z in cycles {
            let r = boundaries.reduce(&z);
            let label = representatives.len();
            if ech.insert_tracked(r, SparseVec::unit(label, field)).is_ok() {
                representatives.push(z);
            }
        }
        let (rep_space, tracks) = ech.into_rref(ambient);
        let tracks = tracks.unwrap_or_default();
        HomologyBasis {
            degree,
            field,
            cycle_test,
            boundaries,
            representatives,
            rep_space,
            rep_transform: tracks,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn boundary_space(&self) -> &Subspace {
        &self.boundaries
    }

    /// Coordinates of the class of the cycle `z`.
    pub fn class_of(&self, z: &SparseVec) -> Result<SparseVec> {
        if let Some(d) = &self.cycle_test {
            if !d.apply(z).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "vector is not a cycle in degree {}",
                    self.degree
                )));
            }
        }
        let r = self.boundaries.reduce(z);
        let coords = self.rep_space.coordinates(&r).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "cycle in degree {} lies outside the chosen cycle space",
                self.degree
            ))
        })?;
        let mut terms = Vec::new();
        for (k, c) in coords.iter() {
            for (j, a) in self.rep_transform[*k].iter() {
                terms.push((*j, a * c));
            }
        }
        Ok(SparseVec::from_terms(terms))
    }

    /// Matrix of classes of the given cycles, one column each.
    pub fn classes_matrix(&self, cycles: &[SparseVec]) -> Result<SparseMatrix> {
        let columns = cycles
            .iter()
            .map(|z| self.class_of(z))
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(self.dim(), columns, self.field)
    }
}

/// Matrix of `H_n(f) : H_n(src) -> H_n(dst)` in the chosen homology bases.
pub fn induced_map_on_homology(
    f: &ChainMap,
    src: &ChainSlice,
    dst: &ChainSlice,
    n: usize,
) -> Result<SparseMatrix> {
    f.check(src, dst)?;
    src.check_complex()?;
    dst.check_complex()?;
    let hs = HomologyBasis::compute(src, n)?;
    let hd = HomologyBasis::compute(dst, n)?;
    induced_map_with_bases(f, &hs, &hd)
}

pub(crate) fn induced_map_with_bases(
    f: &ChainMap,
    src: &HomologyBasis,
    dst: &HomologyBasis,
) -> Result<SparseMatrix> {
    let fn_ = f
        .component(src.degree())
        .ok_or_else(|| Error::Dimension(format!("chain map lacks degree {}", src.degree())))?;
    let images: Vec<SparseVec> = src.representatives().iter().map(|z| fn_.apply(z)).collect();
    dst.classes_matrix(&images)
}
