//! Exact Gaussian elimination on sparse vectors.
//!
//! Everything here is built on an incremental echelon basis whose pivot is
//! the leading index of each stored vector. Callers that care about fill-in
//! relabel indices first so that sparse rows and columns come first; this is
//! a static Markowitz-style ordering (pivot on the candidates with the fewest
//! nonzeros) and never changes the exact result, only its cost.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::scalar::{Field, Scalar};
use crate::linalg::sparse::{SparseMatrix, SparseVec};

/// Incremental row-echelon basis. Stored vectors have leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    pivot_of: HashMap<usize, usize>,
    vecs: Vec<SparseVec>,
    tracks: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            pivot_of: HashMap::new(),
            vecs: Vec::new(),
            tracks: None,
        }
    }

    /// An echelon basis that remembers, for every stored vector, which
    /// combination of inserted vectors produced it.
    pub fn tracked(field: Field) -> Echelon {
        Echelon {
            tracks: Some(Vec::new()),
            ..Echelon::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Eliminates leading entries until the leading index is not a pivot.
    fn reduce_leading(&self, mut v: SparseVec, mut t: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
        while let Some((i, c)) = v.leading() {
            let Some(&k) = self.pivot_of.get(i) else { break };
            let c = -c;
            v = v.add_scaled(&self.vecs[k], &c);
            if let (Some(t), Some(tracks)) = (t.as_mut(), self.tracks.as_ref()) {
                *t = t.add_scaled(&tracks[k], &c);
            }
        }
        (v, t)
    }

    /// Reduces `v` until no pivot index remains in its support.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((i, c)) = work.pop_first() {
            match self.pivot_of.get(&i) {
                Some(&k) => {
                    for (j, a) in self.vecs[k].iter().skip(1) {
                        let delta = a * &c;
                        let e = work.entry(*j).or_insert_with(|| self.field.zero());
                        *e -= &delta;
                        if e.is_zero() {
                            work.remove(j);
                        }
                    }
                }
                None => out.push((i, c)),
            }
        }
        SparseVec::from_sorted_unchecked(out)
    }

    /// Inserts `v`; returns whether it was independent of the stored vectors.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tracked(v, SparseVec::new()).is_ok()
    }

    /// Inserts `v` carrying the combination `t`. When `v` is dependent the
    /// reduced combination (a relation among inserted vectors) is returned
    /// as the error value.
    pub fn insert_tracked(&mut self, v: SparseVec, t: SparseVec) -> std::result::Result<(), SparseVec> {
        let tracked = self.tracks.is_some();
        let (v, t) = self.reduce_leading(v, tracked.then_some(t));
        let Some((lead, c)) = v.leading().cloned() else {
            return Err(t.unwrap_or_default());
        };
        let inv = c.inv().expect("leading coefficient is nonzero");
        let v = v.scaled(&inv);
        self.pivot_of.insert(lead, self.vecs.len());
        self.vecs.push(v);
        if let (Some(tracks), Some(t)) = (self.tracks.as_mut(), t) {
            tracks.push(t.scaled(&inv));
        }
        Ok(())
    }

    /// Back-substitutes into reduced row-echelon form.
    pub fn into_subspace(self, ambient: usize) -> Subspace {
        self.into_rref(ambient).0
    }

    pub(crate) fn into_rref(self, ambient: usize) -> (Subspace, Option<Vec<SparseVec>>) {
        let field = self.field;
        let mut order: Vec<usize> = (0..self.vecs.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.vecs[k].leading().unwrap().0));
        let tracked = self.tracks.is_some();
        let mut done_vecs: HashMap<usize, (SparseVec, SparseVec)> = HashMap::new();
        let empty_tracks = Vec::new();
        let old_tracks = self.tracks.as_ref().unwrap_or(&empty_tracks);
        for &k in &order {
            let v = &self.vecs[k];
            let pivot = v.leading().unwrap().0;
            let mut terms: Vec<(usize, Scalar)> = vec![(pivot, field.one())];
            let mut tterms: Vec<(usize, Scalar)> = if tracked {
                old_tracks[k].iter().cloned().collect()
            } else {
                Vec::new()
            };
            for (j, c) in v.iter().skip(1) {
                match done_vecs.get(j) {
                    Some((w, tw)) => {
                        for (i, a) in w.iter().skip(1) {
                            terms.push((*i, -(a * c)));
                        }
                        if tracked {
                            for (i, a) in tw.iter() {
                                tterms.push((*i, -(a * c)));
                            }
                        }
                    }
                    None => terms.push((*j, c.clone())),
                }
            }
            done_vecs.insert(
                pivot,
                (SparseVec::from_terms(terms), SparseVec::from_terms(tterms)),
            );
        }
        let mut pivots: Vec<usize> = done_vecs.keys().copied().collect();
        pivots.sort_unstable();
        let mut basis = Vec::with_capacity(pivots.len());
        let mut tracks = Vec::with_capacity(pivots.len());
        for p in &pivots {
            let (v, t) = done_vecs.remove(p).unwrap();
            basis.push(v);
            tracks.push(t);
        }
        let subspace = Subspace::from_parts(ambient, field, pivots, basis);
        (subspace, tracked.then_some(tracks))
    }
}

/// A subspace of `field^ambient` in reduced row-echelon form: basis vector
/// `k` has coefficient 1 at `pivots[k]` and 0 at every other pivot.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    pivots: Vec<usize>,
    pivot_pos: HashMap<usize, usize>,
    basis: Vec<SparseVec>,
}

impl Subspace {
    fn from_parts(ambient: usize, field: Field, pivots: Vec<usize>, basis: Vec<SparseVec>) -> Subspace {
        let pivot_pos = pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        Subspace {
            ambient,
            field,
            pivots,
            pivot_pos,
            basis,
        }
    }

    pub fn zero(ambient: usize, field: Field) -> Subspace {
        Subspace::from_parts(ambient, field, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize, field: Field) -> Subspace {
        let basis = (0..ambient).map(|i| SparseVec::unit(i, field)).collect();
        Subspace::from_parts(ambient, field, (0..ambient).collect(), basis)
    }

    /// Span of the given vectors.
    pub fn spanned_by<'a>(ambient: usize, field: Field, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Subspace {
        let mut ech = Echelon::new(field);
        for v in vectors {
            ech.insert(v.clone());
        }
        ech.into_subspace(ambient)
    }

    /// Span of the coordinate vectors `e_i`, `i` in `indices`.
    pub fn coordinate(ambient: usize, field: Field, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let mut pivots: Vec<usize> = indices.into_iter().collect();
        pivots.sort_unstable();
        pivots.dedup();
        let basis = pivots.iter().map(|&i| SparseVec::unit(i, field)).collect();
        Subspace::from_parts(ambient, field, pivots, basis)
    }

    /// Accepts a basis that is already in reduced echelon form with respect
    /// to the given pivots (which need not be leading indices). Checked.
    pub fn from_pivoted_basis(
        ambient: usize,
        field: Field,
        mut pairs: Vec<(usize, SparseVec)>,
    ) -> Result<Subspace> {
        pairs.sort_by_key(|(p, _)| *p);
        let pivots: Vec<usize> = pairs.iter().map(|(p, _)| *p).collect();
        if pivots.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated pivot".into()));
        }
        let pivot_set: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        for (p, v) in &pairs {
            if v.max_index().is_some_and(|m| m >= ambient) {
                return Err(Error::Dimension("basis vector outside ambient space".into()));
            }
            for (i, c) in v.iter() {
                if pivot_set.contains_key(i) && ((i == p) != c.is_one() || (i != p && !c.is_zero())) {
                    return Err(Error::InvalidArgument(format!(
                        "vector with pivot {p} is not reduced at index {i}"
                    )));
                }
            }
            if v.get(*p).is_none() {
                return Err(Error::InvalidArgument(format!("vector misses its pivot {p}")));
            }
        }
        let basis = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Subspace::from_parts(ambient, field, pivots, basis))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_pos.contains_key(&i)
    }

    /// Indices that are not pivots, ascending; they index a basis of the quotient.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.is_pivot(*i)).collect()
    }

    /// `v - sum_k v[p_k] b_k`: the canonical representative of `v` modulo
    /// the subspace, supported off the pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut terms: Vec<(usize, Scalar)> = v.iter().cloned().collect();
        for (i, c) in v.iter() {
            if let Some(&k) = self.pivot_pos.get(i) {
                for (j, a) in self.basis[k].iter() {
                    terms.push((*j, -(a * c)));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates with respect to the basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(self.coordinates_unchecked(v))
    }

    /// Coordinates assuming `v` lies in the subspace.
    pub fn coordinates_unchecked(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_terms(
            v.iter()
                .filter_map(|(i, c)| self.pivot_pos.get(i).map(|k| (*k, c.clone()))),
        )
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.basis.clone(), self.field)
            .expect("basis vectors lie in the ambient space")
    }
}

/// Solves `m x = b` for many right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    image: Subspace,
    preimages: Vec<SparseVec>,
    cols: usize,
}

impl LinearSolver {
    pub fn new(m: &SparseMatrix) -> LinearSolver {
        let mut ech = Echelon::tracked(m.field());
        let mut order: Vec<usize> = (0..m.cols()).collect();
        order.sort_by_key(|&j| (m.column(j).nnz(), j));
        for j in order {
            let _ = ech.insert_tracked(m.column(j).clone(), SparseVec::unit(j, m.field()));
        }
        let (image, tracks) = ech.into_rref(m.rows());
        LinearSolver {
            image,
            preimages: tracks.expect("tracked echelon"),
            cols: m.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.image.dim()
    }

    pub fn image(&self) -> &Subspace {
        &self.image
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Some `x` with `m x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let coords = self.image.coordinates(b)?;
        let mut terms = Vec::new();
        for (k, c) in coords.iter() {
            for (j, a) in self.preimages[*k].iter() {
                terms.push((*j, a * c));
            }
        }
        Some(SparseVec::from_terms(terms))
    }
}

/// Permutation of `0..n` ordering indices by ascending count (ties by index);
/// returns `new_label[old]`.
fn sparsity_order(counts: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&i| (counts[i], i));
    let mut label = vec![0; counts.len()];
    for (new, old) in order.into_iter().enumerate() {
        label[old] = new;
    }
    label
}

/// Exact rank.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut row_counts = vec![0usize; m.rows()];
    for (i, _, _) in m.entries() {
        row_counts[i] += 1;
    }
    let label = sparsity_order(&row_counts);
    let mut cols: Vec<&SparseVec> = m.columns().iter().filter(|c| !c.is_zero()).collect();
    cols.sort_by_key(|c| c.nnz());
    let mut ech = Echelon::new(m.field());
    for c in cols {
        ech.insert(c.reindexed(|i| label[i]));
        if ech.rank() == m.rows() {
            break;
        }
    }
    ech.rank()
}

/// Row space of `m` in reduced echelon form, with column indices relabelled
/// by `label` (sparse columns first). Returns the subspace and the inverse labels.
fn row_rref(m: &SparseMatrix) -> (Subspace, Vec<usize>) {
    let mut col_counts = vec![0usize; m.cols()];
    for (_, j, _) in m.entries() {
        col_counts[j] += 1;
    }
    let label = sparsity_order(&col_counts);
    let mut unlabel = vec![0; m.cols()];
    for (old, new) in label.iter().enumerate() {
        unlabel[*new] = old;
    }
    let mut rows = m.row_vectors();
    rows.retain(|r| !r.is_zero());
    rows.sort_by_key(|r| r.nnz());
    let mut ech = Echelon::new(m.field());
    for r in rows {
        ech.insert(r.reindexed(|j| label[j]));
    }
    (ech.into_subspace(m.cols()), unlabel)
}

/// A basis of the kernel as the columns of a `cols x (cols - rank)` matrix.
pub fn kernel_basis(m: &SparseMatrix) -> SparseMatrix {
    let field = m.field();
    let (rref, unlabel) = row_rref(m);
    let mut kernel: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for free in rref.complement() {
        kernel.insert(free, vec![(unlabel[free], field.one())]);
    }
    for (k, v) in rref.basis().iter().enumerate() {
        let pivot = rref.pivots()[k];
        for (j, c) in v.iter() {
            if *j != pivot {
                kernel
                    .get_mut(j)
                    .expect("non-pivot entries of an RREF row sit in free columns")
                    .push((unlabel[pivot], -c));
            }
        }
    }
    let mut columns: Vec<SparseVec> = kernel.into_values().map(SparseVec::from_terms).collect();
    columns.sort_by_key(|c| c.max_index());
    SparseMatrix::from_columns(m.cols(), columns, field).expect("kernel vectors are in range")
}
