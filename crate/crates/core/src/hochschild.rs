//! The Hochschild complex `C(A, M)` in one weight, its sub- and quotient
//! complexes, the Eulerian splitting and the normalized Harrison complex.
//!
//! A basis element of `C_n(A, M)` is the word `[m, a_1, ..., a_n]`; words of
//! one weight are listed in lexicographic order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{expand_tensor, words_of_weight, Bimodule, Combination, Letter};
use crate::error::{Error, Result};
use crate::linalg::{
    homology, quotient, subcomplex, ChainMap, ChainSlice, Field, IndexedBasis, SparseMatrix, SparseVec,
    Subspace,
};
use crate::symmetric::{act_on_chain, eulerian_idempotents, total_shuffle, GroupAlgebraElement};

pub type Word = Vec<Letter>;

/// Which piece of the Hochschild complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Selector {
    Full,
    /// Spanned by words with a trivial slot.
    Degenerate,
    /// `C / D`.
    Normalized,
    /// Image of the total shuffle on the algebra slots.
    Shuffle,
    /// `C / Sh` in positive degrees, zero in degree 0.
    HarrisonQuotient,
    /// `e^(i) C`; zero in degree 0 and in degrees below `i`.
    Idempotent(usize),
    /// `C(I, M)`: words without trivial slots.
    IdealOnly,
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Full => write!(f, "full"),
            Selector::Degenerate => write!(f, "degenerate"),
            Selector::Normalized => write!(f, "normalized"),
            Selector::Shuffle => write!(f, "shuffle"),
            Selector::HarrisonQuotient => write!(f, "harrison-quotient"),
            Selector::Idempotent(i) => write!(f, "idempotent({i})"),
            Selector::IdealOnly => write!(f, "ideal-only"),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Selector> {
        let sel = match s {
            "full" => Selector::Full,
            "degenerate" => Selector::Degenerate,
            "normalized" => Selector::Normalized,
            "shuffle" => Selector::Shuffle,
            "harrison-quotient" => Selector::HarrisonQuotient,
            "ideal-only" => Selector::IdealOnly,
            _ => {
                let i = s
                    .strip_prefix("idempotent(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|i| i.parse().ok())
                    .filter(|&i: &usize| i >= 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown selector {s:?}")))?;
                Selector::Idempotent(i)
            }
        };
        Ok(sel)
    }
}

/// A selected piece together with its inclusion into `C` (subcomplexes) or
/// the projection from `C` (quotients).
#[derive(Clone, Debug)]
pub struct Selection {
    pub selector: Selector,
    pub slice: ChainSlice,
    pub map: ChainMap,
    pub is_quotient: bool,
}

/// `C_0(A, M), ..., C_top(A, M)` in weight `w`.
#[derive(Clone, Debug)]
pub struct HochschildComplex<'a> {
    module: Bimodule<'a>,
    weight: u32,
    bases: Vec<IndexedBasis<Word>>,
    slice: ChainSlice,
}

impl<'a> HochschildComplex<'a> {
    /// Builds degrees `0..=top`; `limit` caps the basis size of any degree.
    pub fn build(module: Bimodule<'a>, top: usize, weight: u32, limit: Option<usize>) -> Result<Self> {
        let alg = module.algebra();
        let mlet = module.letters();
        let alet: Vec<Letter> = (0..=alg.ideal_dim() as Letter).collect();
        let mut bases = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut alphabets: Vec<&[Letter]> = vec![&mlet];
            alphabets.extend(std::iter::repeat_n(alet.as_slice(), n));
            let words = words_of_weight(alg, &alphabets, weight, limit).map_err(|e| relabel(e, n, weight))?;
            bases.push(IndexedBasis::from_vec(words)?);
        }
        let field = alg.field();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let cols = bases[n]
                .iter()
                .map(|w| hochschild_boundary_of(&module, w, &bases[n - 1]))
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(SparseMatrix::from_columns(bases[n - 1].len(), cols, field)?);
        }
        let dims = bases.iter().map(IndexedBasis::len).collect();
        let slice = ChainSlice::new(field, dims, boundaries)?;
        Ok(HochschildComplex {
            module,
            weight,
            bases,
            slice,
        })
    }

    pub fn module(&self) -> &Bimodule<'a> {
        &self.module
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn top(&self) -> usize {
        self.slice.top()
    }

    pub fn field(&self) -> Field {
        self.slice.field()
    }

    pub fn basis(&self, n: usize) -> &IndexedBasis<Word> {
        &self.bases[n]
    }

    pub fn slice(&self) -> &ChainSlice {
        &self.slice
    }

    /// Matrix of `1_M (x) a` on `C_n`.
    pub fn act(&self, a: &GroupAlgebraElement, n: usize) -> Result<SparseMatrix> {
        act_on_chain(a, &self.bases[n], 1..n + 1)
    }

    /// `e_n^(i)` acting on `C_n` for every `i = 1..=n`; empty for `n = 0`.
    pub fn idempotent_actions(&self, n: usize) -> Result<Vec<SparseMatrix>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        eulerian_idempotents(n, self.field())?
            .iter()
            .map(|e| self.act(e, n))
            .collect()
    }

    fn is_degenerate(w: &Word) -> bool {
        w[1..].contains(&0)
    }

    fn coordinate_space(&self, n: usize, pred: impl Fn(&Word) -> bool) -> Subspace {
        let idx = self.bases[n].iter().enumerate().filter(|(_, w)| pred(w)).map(|(i, _)| i);
        Subspace::coordinate(self.bases[n].len(), self.field(), idx)
    }

    fn image_space(&self, m: &SparseMatrix) -> Subspace {
        Subspace::spanned_by(m.rows(), m.field(), m.columns().iter())
    }

    fn image_of_restriction(&self, m: &SparseMatrix, cols: &Subspace) -> Subspace {
        let images: Vec<SparseVec> = cols.basis().iter().map(|v| m.apply(v)).collect();
        Subspace::spanned_by(m.rows(), m.field(), images.iter())
    }

    /// Per-degree subspaces of a subcomplex selector.
    pub fn subspaces(&self, sel: Selector) -> Result<Vec<Subspace>> {
        let f = self.field();
        (0..=self.top())
            .map(|n| {
                let dim = self.bases[n].len();
                Ok(match sel {
                    Selector::Full => Subspace::full(dim, f),
                    Selector::Degenerate => self.coordinate_space(n, Self::is_degenerate),
                    Selector::IdealOnly => self.coordinate_space(n, |w| !Self::is_degenerate(w)),
                    Selector::Shuffle => {
                        if n < 2 {
                            Subspace::zero(dim, f)
                        } else {
                            self.image_space(&self.act(&total_shuffle(n, f)?, n)?)
                        }
                    }
                    Selector::Idempotent(i) => {
                        if n == 0 || i > n {
                            Subspace::zero(dim, f)
                        } else {
                            let e = &eulerian_idempotents(n, f)?[i - 1];
                            self.image_space(&self.act(e, n)?)
                        }
                    }
                    Selector::Normalized | Selector::HarrisonQuotient => {
                        return Err(Error::InvalidArgument(format!("{sel} is a quotient, not a subcomplex")))
                    }
                })
            })
            .collect()
    }

    /// Builds the selected piece; closure under the boundary is checked.
    pub fn select(&self, sel: Selector) -> Result<Selection> {
        let (spaces, is_quotient) = match sel {
            Selector::Normalized => (self.subspaces(Selector::Degenerate)?, true),
            Selector::HarrisonQuotient => {
                let mut sh = self.subspaces(Selector::Shuffle)?;
                sh[0] = Subspace::full(self.bases[0].len(), self.field());
                (sh, true)
            }
            _ => (self.subspaces(sel)?, false),
        };
        let (slice, map) = if is_quotient {
            quotient(&self.slice, &spaces)?
        } else {
            subcomplex(&self.slice, &spaces)?
        };
        Ok(Selection {
            selector: sel,
            slice,
            map,
            is_quotient,
        })
    }

    /// The normalized complex `C / D`, the ideal-only complex `C(I, M)` and
    /// mutually inverse chain maps between them.
    pub fn aug_split(&self) -> Result<AugSplit> {
        let normalized = self.select(Selector::Normalized)?;
        let ideal = self.select(Selector::IdealOnly)?;
        let field = self.field();
        let mut to_ideal = Vec::new();
        let mut from_ideal = Vec::new();
        for n in 0..=self.top() {
            // quotient basis vectors are classes of words; ideal basis vectors are words
            let words_q = quotient_words(&normalized.map, n, &self.bases[n]);
            let words_i = sub_words(&ideal.map, n, &self.bases[n]);
            let lookup = |ws: &[Word], w: &Word| ws.iter().position(|x| x == w);
            let fwd = words_q
                .iter()
                .map(|w| {
                    let j = lookup(&words_i, w).ok_or_else(|| {
                        Error::Certification(format!("normalized word {w:?} is not ideal-only"))
                    })?;
                    Ok(SparseVec::unit(j, field))
                })
                .collect::<Result<Vec<_>>>()?;
            let bwd = words_i
                .iter()
                .map(|w| {
                    let j = lookup(&words_q, w).ok_or_else(|| {
                        Error::Certification(format!("ideal-only word {w:?} has no normalized class"))
                    })?;
                    Ok(SparseVec::unit(j, field))
                })
                .collect::<Result<Vec<_>>>()?;
            to_ideal.push(SparseMatrix::from_columns(words_i.len(), fwd, field)?);
            from_ideal.push(SparseMatrix::from_columns(words_q.len(), bwd, field)?);
        }
        Ok(AugSplit {
            normalized: normalized.slice,
            ideal: ideal.slice,
            to_ideal: ChainMap::new(to_ideal),
            from_ideal: ChainMap::new(from_ideal),
        })
    }

    /// `e^(i) C(A, M)`, `e^(i) D(A, M)`, their quotient, `e^(i) C(I, M)` and
    /// the maps `I_i`, `Q_i`, `f_i` between them.
    pub fn normalized_harrison(&self, i: usize) -> Result<NormalizedHarrison> {
        if i == 0 {
            return Err(Error::InvalidArgument("Eulerian summands are indexed from 1".into()));
        }
        let field = self.field();
        let top = self.top();
        let mut e_full = Vec::new();
        let mut e_degen = Vec::new();
        let mut e_ideal = Vec::new();
        for n in 0..=top {
            let dim = self.bases[n].len();
            if n == 0 || i > n {
                for v in [&mut e_full, &mut e_degen, &mut e_ideal] {
                    v.push(Subspace::zero(dim, field));
                }
                continue;
            }
            let act = self.act(&eulerian_idempotents(n, field)?[i - 1], n)?;
            e_full.push(self.image_space(&act));
            e_degen.push(self.image_of_restriction(&act, &self.coordinate_space(n, Self::is_degenerate)));
            e_ideal.push(self.image_of_restriction(&act, &self.coordinate_space(n, |w| !Self::is_degenerate(w))));
        }
        let (full, incl_full) = subcomplex(&self.slice, &e_full)?;
        let (ideal, incl_ideal) = subcomplex(&self.slice, &e_ideal)?;
        // e^(i) D inside e^(i) C, in the coordinates of e^(i) C
        let degen_in_full: Vec<Subspace> = (0..=top)
            .map(|n| {
                let coords: Vec<SparseVec> = e_degen[n]
                    .basis()
                    .iter()
                    .map(|v| e_full[n].coordinates(v).expect("e D lies in e C"))
                    .collect();
                Subspace::spanned_by(e_full[n].dim(), field, coords.iter())
            })
            .collect();
        let (degenerate, _) = subcomplex(&full, &degen_in_full)?;
        let (quot, q_map) = quotient(&full, &degen_in_full)?;

        let mut inc = Vec::new();
        let mut f = Vec::new();
        for n in 0..=top {
            let cols = e_ideal[n]
                .basis()
                .iter()
                .map(|v| e_full[n].coordinates(v).expect("e C(I) lies in e C"))
                .collect();
            inc.push(SparseMatrix::from_columns(e_full[n].dim(), cols, field)?);
            // quotient basis k is the class of the e C basis vector complement[k];
            // f_i drops the coordinates of degenerate words
            let keep = self.coordinate_space(n, |w| !Self::is_degenerate(w));
            let cols = degen_in_full[n]
                .complement()
                .into_iter()
                .map(|k| {
                    let v = &e_full[n].basis()[k];
                    let kept = SparseVec::from_terms(v.iter().filter(|(j, _)| keep.is_pivot(*j)).cloned());
                    e_ideal[n].coordinates(&kept).ok_or_else(|| {
                        Error::Certification(format!("f_{i} leaves e C(I, M) in degree {n}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            f.push(SparseMatrix::from_columns(e_ideal[n].dim(), cols, field)?);
        }
        Ok(NormalizedHarrison {
            index: i,
            full,
            degenerate,
            quotient: quot,
            ideal,
            inclusion_full: incl_full,
            inclusion_ideal: incl_ideal,
            i_map: ChainMap::new(inc),
            q_map,
            f_map: ChainMap::new(f),
        })
    }

    pub fn certify_hodge(&self) -> Result<HodgeCertificate> {
        let mut commutes = true;
        let mut dimensions_add_up = true;
        let mut summand_dims = vec![Vec::new()];
        let mut below: Vec<SparseMatrix> = Vec::new();
        for n in 1..=self.top() {
            let acts = self.idempotent_actions(n)?;
            let b = self.slice.boundary(n).expect("degree in range");
            for (i, e) in acts.iter().enumerate() {
                let left = b.mul(e)?;
                let right = match below.get(i) {
                    Some(e_low) => e_low.mul(b)?,
                    None => SparseMatrix::zero(b.rows(), b.cols(), self.field()),
                };
                commutes &= left == right;
            }
            let dims: Vec<usize> = acts.iter().map(SparseMatrix::rank).collect();
            dimensions_add_up &= dims.iter().sum::<usize>() == self.bases[n].len();
            summand_dims.push(dims);
            below = acts;
        }
        Ok(HodgeCertificate {
            weight: self.weight,
            commutes,
            dimensions_add_up,
            summand_dims,
        })
    }

    pub fn certify_barr(&self) -> Result<BarrCertificate> {
        let e1 = self.subspaces(Selector::Idempotent(1))?;
        let quot = self.select(Selector::HarrisonQuotient)?;
        let ranks = e1
            .iter()
            .zip(quot.map.components())
            .map(|(space, p)| {
                let images: Vec<SparseVec> = space.basis().iter().map(|v| p.apply(v)).collect();
                Subspace::spanned_by(p.rows(), self.field(), images.iter()).dim()
            })
            .collect();
        Ok(BarrCertificate {
            weight: self.weight,
            idempotent_dims: e1.iter().map(Subspace::dim).collect(),
            quotient_dims: quot.slice.dims().to_vec(),
            ranks,
        })
    }
}

/// Outcome of the Hodge splitting checks in one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeCertificate {
    pub weight: u32,
    /// `b e_n^(i) = e_{n-1}^(i) b` for all `n >= 1` and `i`, reading
    /// `e_{n-1}^(n)` and `e_0^(i)` as zero.
    pub commutes: bool,
    /// `sum_i dim e_n^(i) C_n = dim C_n` for `n >= 1`.
    pub dimensions_add_up: bool,
    pub summand_dims: Vec<Vec<usize>>,
}

impl HodgeCertificate {
    pub fn passed(&self) -> bool {
        self.commutes && self.dimensions_add_up
    }
}

/// Outcome of comparing `e^(1) C(A, M)` with `C(A, M) / Sh(A, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarrCertificate {
    pub weight: u32,
    pub idempotent_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    /// Rank of `e^(1) C -> C -> C / Sh` per degree.
    pub ranks: Vec<usize>,
}

impl BarrCertificate {
    pub fn passed(&self) -> bool {
        self.idempotent_dims == self.quotient_dims && self.ranks == self.quotient_dims
    }
}

fn relabel(e: Error, n: usize, w: u32) -> Error {
    match e {
        Error::BasisTooLarge { size, limit, .. } => Error::BasisTooLarge {
            size,
            limit,
            context: format!("Hochschild degree {n}, weight {w}"),
        },
        e => e,
    }
}

/// The word behind each basis vector of a coordinate subcomplex.
fn sub_words(incl: &ChainMap, n: usize, basis: &IndexedBasis<Word>) -> Vec<Word> {
    incl.components()[n]
        .columns()
        .iter()
        .map(|c| basis.get(c.leading().expect("nonzero basis vector").0).clone())
        .collect()
}

/// The word whose class is each basis vector of a coordinate quotient.
fn quotient_words(proj: &ChainMap, n: usize, basis: &IndexedBasis<Word>) -> Vec<Word> {
    let p = &proj.components()[n];
    let mut words = vec![None; p.rows()];
    for (j, c) in p.columns().iter().enumerate() {
        if let [(k, a)] = c.entries() {
            if a.is_one() && words[*k].is_none() {
                words[*k] = Some(basis.get(j).clone());
            }
        }
    }
    words.into_iter().map(|w| w.expect("coordinate quotient")).collect()
}

/// `b = sum (-1)^i d_i` on one word, as a vector in the basis one degree down.
fn hochschild_boundary_of(module: &Bimodule<'_>, word: &Word, target: &IndexedBasis<Word>) -> Result<SparseVec> {
    let alg = module.algebra();
    let field = alg.field();
    let n = word.len() - 1;
    let mut terms = Vec::new();
    let mut push = |factors: Vec<Combination>, sign: i64| -> Result<()> {
        let s = field.from_i64(sign);
        for (w, c) in expand_tensor(field, &factors) {
            let j = target
                .index_of(&w)
                .ok_or_else(|| Error::InvalidAlgebra(format!("face of {word:?} leaves its weight")))?;
            terms.push((j, &c * &s));
        }
        Ok(())
    };
    let single = |l: Letter| -> Combination { vec![(l, field.one())] };
    for i in 0..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let mut factors = Vec::with_capacity(n);
        if i == 0 {
            factors.push(module.act(word[1], word[0]));
            factors.extend(word[2..].iter().map(|&l| single(l)));
        } else if i < n {
            factors.push(single(word[0]));
            factors.extend(word[1..i].iter().map(|&l| single(l)));
            factors.push(alg.mul_letters(word[i], word[i + 1]).clone());
            factors.extend(word[i + 2..].iter().map(|&l| single(l)));
        } else {
            factors.push(module.act(word[n], word[0]));
            factors.extend(word[1..n].iter().map(|&l| single(l)));
        }
        push(factors, sign)?;
    }
    Ok(SparseVec::from_terms(terms))
}

/// The matrix of `b : C_n(A, M)_w -> C_{n-1}(A, M)_w`.
pub fn hochschild_boundary(module: Bimodule<'_>, n: usize, w: u32) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Hochschild boundary starts in degree 1".into()));
    }
    let c = HochschildComplex::build(module, n, w, None)?;
    Ok(c.slice.boundary(n).expect("built through degree n").clone())
}

/// `N = C / D` and `C(I, M)` with the canonical isomorphisms.
#[derive(Clone, Debug)]
pub struct AugSplit {
    pub normalized: ChainSlice,
    pub ideal: ChainSlice,
    pub to_ideal: ChainMap,
    pub from_ideal: ChainMap,
}

impl AugSplit {
    /// Both maps are chain maps and the two composites are identities.
    pub fn certify(&self) -> Result<()> {
        self.to_ideal.check(&self.normalized, &self.ideal)?;
        self.from_ideal.check(&self.ideal, &self.normalized)?;
        for n in 0..=self.normalized.top() {
            let a = self.from_ideal.components()[n].mul(&self.to_ideal.components()[n])?;
            let b = self.to_ideal.components()[n].mul(&self.from_ideal.components()[n])?;
            let f = self.normalized.field();
            if a != SparseMatrix::identity(self.normalized.dim(n), f)
                || b != SparseMatrix::identity(self.ideal.dim(n), f)
            {
                return Err(Error::Certification(format!("augmentation splitting is not inverse in degree {n}")));
            }
        }
        Ok(())
    }
}

/// The pieces of the splitting `e^(i) C(A, M) = e^(i) C(I, M) + e^(i) D(A, M)`.
#[derive(Clone, Debug)]
pub struct NormalizedHarrison {
    pub index: usize,
    /// `e^(i) C(A, M)`
    pub full: ChainSlice,
    /// `e^(i) D(A, M)`
    pub degenerate: ChainSlice,
    /// `e^(i) C(A, M) / e^(i) D(A, M)`
    pub quotient: ChainSlice,
    /// `e^(i) C(I, M)`
    pub ideal: ChainSlice,
    /// `e^(i) C(A, M) -> C(A, M)`
    pub inclusion_full: ChainMap,
    /// `e^(i) C(I, M) -> C(A, M)`
    pub inclusion_ideal: ChainMap,
    /// `I_i : e^(i) C(I, M) -> e^(i) C(A, M)`
    pub i_map: ChainMap,
    /// `Q_i : e^(i) C(A, M) -> quotient`
    pub q_map: ChainMap,
    /// `f_i : quotient -> e^(i) C(I, M)`
    pub f_map: ChainMap,
}

/// Per-degree outcome of certifying a [`NormalizedHarrison`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarrisonCertificate {
    pub index: usize,
    pub chain_maps: bool,
    pub composite_identity: bool,
    /// `dim ker(f_i Q_i) = dim e^(i) D(A, M)` in every degree.
    pub kernel_matches_degenerate: bool,
    /// `dim e^(i) C(A, M) = dim e^(i) C(I, M) + dim e^(i) D(A, M)`.
    pub dimensions_add_up: bool,
    /// `H(e^(i) D(A, M)) = 0` below the top degree.
    pub degenerate_acyclic: bool,
    /// `Q_i` and `I_i` preserve homology dimensions below the top degree.
    pub quasi_isomorphisms: bool,
}

impl HarrisonCertificate {
    pub fn passed(&self) -> bool {
        self.chain_maps
            && self.composite_identity
            && self.kernel_matches_degenerate
            && self.dimensions_add_up
            && self.degenerate_acyclic
            && self.quasi_isomorphisms
    }
}

impl NormalizedHarrison {
    pub fn certify(&self) -> Result<HarrisonCertificate> {
        let chain_maps = self.i_map.check(&self.ideal, &self.full).is_ok()
            && self.q_map.check(&self.full, &self.quotient).is_ok()
            && self.f_map.check(&self.quotient, &self.ideal).is_ok();
        let f = self.full.field();
        let mut composite_identity = true;
        let mut kernel_matches_degenerate = true;
        let mut dimensions_add_up = true;
        for n in 0..=self.full.top() {
            let fq = self.f_map.components()[n].mul(&self.q_map.components()[n])?;
            let fqi = fq.mul(&self.i_map.components()[n])?;
            composite_identity &= fqi == SparseMatrix::identity(self.ideal.dim(n), f);
            kernel_matches_degenerate &= self.full.dim(n) - fq.rank() == self.degenerate.dim(n);
            dimensions_add_up &= self.full.dim(n) == self.ideal.dim(n) + self.degenerate.dim(n);
        }
        let below = self.full.top().saturating_sub(1);
        let h = |c: &ChainSlice| -> Result<Vec<usize>> { Ok(homology(c)?.truncated(below).dims()) };
        let degenerate_acyclic = h(&self.degenerate)?.iter().all(|&d| d == 0);
        let h_full = h(&self.full)?;
        let quasi_isomorphisms = h_full == h(&self.quotient)? && h_full == h(&self.ideal)?;
        Ok(HarrisonCertificate {
            index: self.index,
            chain_maps,
            composite_identity,
            kernel_matches_degenerate,
            dimensions_add_up,
            degenerate_acyclic,
            quasi_isomorphisms,
        })
    }
}

/// Harrison homology dimensions in one weight, from both constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarrisonWeight {
    pub weight: u32,
    /// Homology of `C(A, M) / Sh(A, M)`.
    pub quotient_dims: Vec<usize>,
    /// Homology of `e^(1) C(I, M)`.
    pub normalized_dims: Vec<usize>,
}

/// `Harr_n(A, M)_w` for `n <= max_n`, `w <= max_w`, computed through the
/// shuffle quotient and through the normalized Harrison complex. The two
/// must agree; a disagreement is a certification failure.
pub fn harrison_homology(
    module: Bimodule<'_>,
    max_n: usize,
    max_w: u32,
    limit: Option<usize>,
) -> Result<Vec<HarrisonWeight>> {
    (0..=max_w)
        .map(|w| {
            let c = HochschildComplex::build(module, max_n + 1, w, limit)?;
            let hw = harrison_in_weight(&c, max_n)?;
            if hw.quotient_dims != hw.normalized_dims {
                return Err(Error::Certification(format!(
                    "Harrison pipelines disagree in weight {w}: {:?} vs {:?}",
                    hw.quotient_dims, hw.normalized_dims
                )));
            }
            Ok(hw)
        })
        .collect()
}

/// Both Harrison computations on a complex built through degree `max_n + 1`.
pub fn harrison_in_weight(c: &HochschildComplex<'_>, max_n: usize) -> Result<HarrisonWeight> {
    let quot = c.select(Selector::HarrisonQuotient)?;
    let quotient_dims = homology(&quot.slice)?.truncated(max_n).dims();
    let normalized = c.subspaces(Selector::IdealOnly)?;
    let field = c.field();
    let spaces: Vec<Subspace> = (0..=c.top())
        .map(|n| {
            if n == 0 {
                return Ok(Subspace::zero(c.basis(0).len(), field));
            }
            let act = c.act(&eulerian_idempotents(n, field)?[0], n)?;
            Ok(c.image_of_restriction(&act, &normalized[n]))
        })
        .collect::<Result<_>>()?;
    let (e1, _) = subcomplex(c.slice(), &spaces)?;
    let normalized_dims = homology(&e1)?.truncated(max_n).dims();
    Ok(HarrisonWeight {
        weight: c.weight(),
        quotient_dims,
        normalized_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, Coefficients, GradedAlgebra};

    #[test]
    fn dual_numbers_small_faces() {
        let a = GradedAlgebra::validated(&dual_numbers(), None).unwrap();
        let k = Bimodule::new(&a, Coefficients::Ground);
        // b(1 (x) x (x) x) = 0
        let b = hochschild_boundary(k, 2, 2).unwrap();
        let c = HochschildComplex::build(k, 2, 2, None).unwrap();
        let j = c.basis(2).index_of(&vec![0, 1, 1]).unwrap();
        assert!(b.column(j).is_zero());
        // symmetric coefficients kill b on C_1
        let m = Bimodule::new(&a, Coefficients::Algebra);
        for w in 0..3 {
            assert!(hochschild_boundary(m, 1, w).unwrap().is_zero());
        }
    }

    #[test]
    fn degenerate_part_in_degree_one_is_weight_zero() {
        let a = GradedAlgebra::validated(&dual_numbers(), None).unwrap();
        let k = Bimodule::new(&a, Coefficients::Ground);
        let c = HochschildComplex::build(k, 2, 1, None).unwrap();
        assert_eq!(c.subspaces(Selector::Degenerate).unwrap()[1].dim(), 0);
        let c0 = HochschildComplex::build(k, 2, 0, None).unwrap();
        assert_eq!(c0.subspaces(Selector::Degenerate).unwrap()[1].dim(), 1);
    }

    #[test]
    fn selector_names_round_trip() {
        for s in [
            Selector::Full,
            Selector::Degenerate,
            Selector::Normalized,
            Selector::Shuffle,
            Selector::HarrisonQuotient,
            Selector::Idempotent(3),
            Selector::IdealOnly,
        ] {
            assert_eq!(s.to_string().parse::<Selector>().unwrap(), s);
        }
        assert!("idempotent(0)".parse::<Selector>().is_err());
    }

    #[test]
    fn dual_numbers_harrison() {
        let a = GradedAlgebra::validated(&dual_numbers(), None).unwrap();
        let k = Bimodule::new(&a, Coefficients::Ground);
        let table = harrison_homology(k, 4, 4, None).unwrap();
        assert_eq!(table[1].quotient_dims[1], 1);
        for n in 1..=4 {
            assert_eq!(table[0].quotient_dims[n], 0);
        }
    }
}
