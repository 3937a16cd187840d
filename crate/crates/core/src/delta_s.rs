//! The category ΔS as non-commutative sets, the symmetric bar construction,
//! the normalized Gabriel–Zisman complex of `B_I^sym` over EpiΔS, its
//! quotient by strings not ending at `1`, and the comparison map to the
//! normalized Robinson–Whitehouse complex `NCΓ(I, k)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{expand_tensor, words_of_weight, Bimodule, Coefficients, GradedAlgebra, Letter};
use crate::error::{Error, Result};
use crate::gamma::{GammaComplex, GammaGenerator, GammaOptions, OmegaString, Surjection, Variant};
use crate::linalg::{
    homology, subcomplex, ChainMap, ChainSlice, HomologyReport, IndexedBasis, LongExactSequence, Scalar,
    ShortExactSequence, SparseMatrix, SparseVec, Subspace,
};
use crate::symmetric::Permutation;

/// A weakly order-preserving map `{1..x} -> {1..y}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMap {
    target: u8,
    images: Vec<u8>,
}

impl DeltaMap {
    /// From the 1-based images `(f(1), ..., f(x))`.
    pub fn new(y: usize, images: &[usize]) -> Result<DeltaMap> {
        if y >= 256 || images.len() >= 256 {
            return Err(Error::InvalidArgument("objects have at most 255 points".into()));
        }
        if images.iter().any(|&v| v == 0 || v > y) || images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{images:?} is not an order-preserving map into 1..{y}"
            )));
        }
        Ok(DeltaMap {
            target: y as u8,
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> DeltaMap {
        DeltaMap {
            target: n as u8,
            images: (0..n as u8).collect(),
        }
    }

    /// `delta_i : n -> n+1`, the injection missing `i`.
    pub fn face(n: usize, i: usize) -> Result<DeltaMap> {
        if i == 0 || i > n + 1 {
            return Err(Error::InvalidArgument(format!("delta_{i} is not defined on {n}")));
        }
        let images: Vec<usize> = (1..=n).map(|p| if p < i { p } else { p + 1 }).collect();
        DeltaMap::new(n + 1, &images)
    }

    /// `sigma_j : n+1 -> n`, the surjection hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> Result<DeltaMap> {
        if j == 0 || j > n {
            return Err(Error::InvalidArgument(format!("sigma_{j} is not defined on {}", n + 1)));
        }
        let images: Vec<usize> = (1..=n + 1).map(|p| if p <= j { p } else { p - 1 }).collect();
        DeltaMap::new(n, &images)
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    /// `f(i)` for `i` in `1..=x`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.target()];
        for &v in &self.images {
            hit[v as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

impl fmt::Debug for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<u8> = self.images.iter().map(|v| v + 1).collect();
        write!(f, "{imgs:?}->{}", self.target)
    }
}

/// A morphism `x -> y` of ΔS: a set map with a total order on each fiber.
/// Fibers may be empty; the morphism is epi when none is.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSMorphism {
    source: u8,
    /// `fibers[j]` lists the preimage of `j` (0-based) in its order.
    fibers: Vec<Vec<u8>>,
}

impl DeltaSMorphism {
    /// From 1-based ordered fibers, which must partition `1..=x`.
    pub fn new(x: usize, fibers: &[Vec<usize>]) -> Result<DeltaSMorphism> {
        if x >= 256 || fibers.len() >= 256 {
            return Err(Error::InvalidArgument("objects have at most 255 points".into()));
        }
        let mut seen = vec![false; x];
        for &p in fibers.iter().flatten() {
            if p == 0 || p > x || seen[p - 1] {
                return Err(Error::InvalidArgument(format!("{fibers:?} does not partition 1..{x}")));
            }
            seen[p - 1] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument(format!("{fibers:?} does not partition 1..{x}")));
        }
        Ok(DeltaSMorphism {
            source: x as u8,
            fibers: fibers.iter().map(|f| f.iter().map(|&p| (p - 1) as u8).collect()).collect(),
        })
    }

    pub fn identity(x: usize) -> DeltaSMorphism {
        DeltaSMorphism {
            source: x as u8,
            fibers: (0..x as u8).map(|p| vec![p]).collect(),
        }
    }

    /// The lift of a surjection with every fiber in increasing order.
    pub fn canonical_lift(f: &Surjection) -> DeltaSMorphism {
        let mut fibers = vec![Vec::new(); f.target()];
        for (p, v) in f.images().into_iter().enumerate() {
            fibers[v - 1].push(p as u8);
        }
        DeltaSMorphism {
            source: f.source() as u8,
            fibers,
        }
    }

    /// The morphism with pair form `(phi, g)`: the fiber over `j` lists
    /// `g^{-1}(i)` for `i` in `phi^{-1}(j)` in increasing order.
    pub fn from_pair(phi: &DeltaMap, g: &Permutation) -> Result<DeltaSMorphism> {
        if phi.source() != g.n() {
            return Err(Error::InvalidArgument("phi and g act on different objects".into()));
        }
        let ginv = g.inverse();
        let mut fibers = vec![Vec::new(); phi.target()];
        for (i, &j) in phi.images.iter().enumerate() {
            fibers[j as usize].push(ginv.images()[i]);
        }
        Ok(DeltaSMorphism {
            source: phi.source() as u8,
            fibers,
        })
    }

    /// The unique `(phi, g)` with `from_pair(phi, g) == self`.
    pub fn pair_form(&self) -> (DeltaMap, Permutation) {
        let mut images = Vec::with_capacity(self.source());
        let mut g = vec![0u8; self.source()];
        for (j, fib) in self.fibers.iter().enumerate() {
            for &p in fib {
                g[p as usize] = images.len() as u8;
                images.push(j as u8);
            }
        }
        let phi = DeltaMap {
            target: self.fibers.len() as u8,
            images,
        };
        (phi, Permutation::from_zero_based(g))
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn target(&self) -> usize {
        self.fibers.len()
    }

    /// The ordered fiber over `j`, 1-based.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        self.fibers[j - 1].iter().map(|&p| p as usize + 1).collect()
    }

    pub fn is_epi(&self) -> bool {
        self.fibers.iter().all(|f| !f.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.target() == self.source() && self.fibers.iter().enumerate().all(|(j, f)| f.len() == 1 && f[0] as usize == j)
    }

    /// `f(i)` for `i` in `1..=x`.
    pub fn image(&self, i: usize) -> usize {
        self.fibers
            .iter()
            .position(|f| f.contains(&((i - 1) as u8)))
            .expect("fibers partition the source")
            + 1
    }

    /// The underlying surjection of an epimorphism.
    pub fn forget(&self) -> Result<Surjection> {
        if !self.is_epi() {
            return Err(Error::InvalidArgument("only epimorphisms have an underlying surjection".into()));
        }
        let images: Vec<usize> = (1..=self.source()).map(|i| self.image(i)).collect();
        Surjection::from_images(self.target(), &images)
    }

    /// `self o other`: the fiber over `k` concatenates the fibers of `other`
    /// over the points of `self`'s fiber over `k`, in that order.
    pub fn compose(&self, other: &DeltaSMorphism) -> Result<DeltaSMorphism> {
        if other.target() != self.source() {
            return Err(Error::InvalidArgument("morphisms are not composable".into()));
        }
        Ok(DeltaSMorphism {
            source: other.source,
            fibers: self
                .fibers
                .iter()
                .map(|fib| fib.iter().flat_map(|&j| other.fibers[j as usize].iter().copied()).collect())
                .collect(),
        })
    }

    /// `B^sym` on formal words: output slot `j` concatenates the input slots
    /// along the fiber over `j`.
    pub fn apply_formal<T: Clone>(&self, slots: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        if slots.len() != self.source() {
            return Err(Error::InvalidArgument(format!(
                "{} slots for a morphism out of {}",
                slots.len(),
                self.source()
            )));
        }
        Ok(self
            .fibers
            .iter()
            .map(|fib| fib.iter().flat_map(|&p| slots[p as usize].iter().cloned()).collect())
            .collect())
    }
}

impl fmt::Debug for DeltaSMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibs: Vec<Vec<u8>> = self.fibers.iter().map(|fib| fib.iter().map(|p| p + 1).collect()).collect();
        write!(f, "{}:{fibs:?}", self.source)
    }
}

/// `B^sym(f)` on a basis tensor: slot `j` is the product of the slots over
/// `j` in fiber order, the unit for an empty fiber. For `Variant::I` the
/// morphism must be epi and every slot an ideal letter.
pub fn b_sym(alg: &GradedAlgebra, f: &DeltaSMorphism, word: &[Letter], variant: Variant) -> Result<Vec<(Vec<Letter>, Scalar)>> {
    if word.len() != f.source() {
        return Err(Error::InvalidArgument(format!(
            "{} letters for a morphism out of {}",
            word.len(),
            f.source()
        )));
    }
    if variant == Variant::I {
        if !f.is_epi() {
            return Err(Error::InvalidArgument(
                "B_I^sym is only defined on epimorphisms: an empty fiber would need the unit".into(),
            ));
        }
        if word.contains(&0) {
            return Err(Error::InvalidArgument("B_I^sym takes ideal letters only".into()));
        }
    }
    Ok(apply_fibers(alg, f, word))
}

fn apply_fibers(alg: &GradedAlgebra, f: &DeltaSMorphism, word: &[Letter]) -> Vec<(Vec<Letter>, Scalar)> {
    let factors: Vec<_> = f
        .fibers
        .iter()
        .map(|fib| {
            let letters: Vec<Letter> = fib.iter().map(|&p| word[p as usize]).collect();
            alg.product(&letters)
        })
        .collect();
    expand_tensor(alg.field(), &factors)
}

fn orderings(items: &[u8]) -> Vec<Vec<u8>> {
    Permutation::all(items.len())
        .iter()
        .map(|s| s.images().iter().map(|&i| items[i as usize]).collect())
        .collect()
}

/// All epimorphisms `x -> y` of ΔS, sorted.
pub fn epi_morphisms(x: usize, y: usize) -> Result<Vec<DeltaSMorphism>> {
    let mut out = Vec::new();
    for s in crate::gamma::enumerate_surjections(x, y)? {
        let base = DeltaSMorphism::canonical_lift(&s);
        let mut partial: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
        for fib in &base.fibers {
            let orders = orderings(fib);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    orders.iter().map(move |o| {
                        let mut q = p.clone();
                        q.push(o.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|fibers| DeltaSMorphism {
            source: x as u8,
            fibers,
        }));
    }
    out.sort();
    Ok(out)
}

/// A string `x -> x_1 -> ... -> x_n` of epimorphisms; `maps[0]` is `f_1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpiString {
    source: u8,
    maps: Vec<DeltaSMorphism>,
}

impl EpiString {
    pub fn new(source: usize, maps: Vec<DeltaSMorphism>) -> Result<EpiString> {
        let mut at = source;
        for f in &maps {
            if f.source() != at || !f.is_epi() {
                return Err(Error::InvalidArgument("not a composable string of epimorphisms".into()));
            }
            at = f.target();
        }
        Ok(EpiString {
            source: source as u8,
            maps,
        })
    }

    pub fn empty(x: usize) -> EpiString {
        EpiString {
            source: x as u8,
            maps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    /// The final codomain `x_n` (the source for the empty string).
    pub fn target(&self) -> usize {
        self.maps.last().map_or(self.source(), DeltaSMorphism::target)
    }

    pub fn maps(&self) -> &[DeltaSMorphism] {
        &self.maps
    }

    pub fn is_degenerate(&self) -> bool {
        self.maps.iter().any(DeltaSMorphism::is_identity)
    }

    /// `U` applied to every morphism. Only strings ending at `1` are Ω-strings.
    pub fn forget(&self) -> Result<OmegaString> {
        if self.target() != 1 {
            return Err(Error::InvalidArgument("only strings ending at 1 are Omega strings".into()));
        }
        OmegaString::new(self.maps.iter().map(DeltaSMorphism::forget).collect::<Result<_>>()?)
    }
}

impl fmt::Debug for EpiString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        for m in &self.maps {
            write!(f, " -{m:?}->")?;
        }
        Ok(())
    }
}

type StringCache = HashMap<(usize, usize), Vec<EpiString>>;

/// All strings of `n` epimorphisms out of `x` with any final codomain,
/// optionally without identities, sorted.
pub fn epi_strings(x: usize, n: usize, normalized: bool) -> Result<Vec<EpiString>> {
    strings_cached(x, n, normalized, &mut HashMap::new())
}

fn strings_cached(x: usize, n: usize, normalized: bool, cache: &mut StringCache) -> Result<Vec<EpiString>> {
    if let Some(s) = cache.get(&(x, n)) {
        return Ok(s.clone());
    }
    let out = if n == 0 {
        vec![EpiString::empty(x)]
    } else {
        let mut out = Vec::new();
        for y in 1..=x {
            let tails = strings_cached(y, n - 1, normalized, cache)?;
            for f in epi_morphisms(x, y)? {
                if normalized && f.is_identity() {
                    continue;
                }
                for t in &tails {
                    let mut maps = Vec::with_capacity(n);
                    maps.push(f.clone());
                    maps.extend_from_slice(&t.maps);
                    out.push(EpiString {
                        source: x as u8,
                        maps,
                    });
                }
            }
        }
        out.sort();
        out
    };
    cache.insert((x, n), out.clone());
    Ok(out)
}

/// `(f_n, ..., f_1, y_1 (x) ... (x) y_x)` with ideal letters `y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymGenerator {
    pub string: EpiString,
    pub word: Vec<Letter>,
}

/// `NCS(I)` itself, or its quotient `NCS(I) / NCS^1(I)` keeping only strings
/// that end at `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymVariant {
    Full,
    Quotient,
}

/// `sum_i (-1)^i d_i` on one generator, before normalization.
pub fn sym_faces(alg: &GradedAlgebra, g: &SymGenerator) -> Result<Vec<(SymGenerator, Scalar)>> {
    let n = g.string.len();
    if n == 0 {
        return Err(Error::InvalidArgument("degree 0 has no faces".into()));
    }
    let field = alg.field();
    let sign = |i: usize| field.from_i64(if i.is_multiple_of(2) { 1 } else { -1 });
    let maps = &g.string.maps;
    let mut out = Vec::new();
    let rest = EpiString {
        source: maps[0].target() as u8,
        maps: maps[1..].to_vec(),
    };
    for (w, c) in apply_fibers(alg, &maps[0], &g.word) {
        if w.contains(&0) {
            return Err(Error::Certification(format!("B_I^sym of {g:?} leaves the ideal")));
        }
        out.push((
            SymGenerator {
                string: rest.clone(),
                word: w,
            },
            c,
        ));
    }
    for i in 1..n {
        let mut m = Vec::with_capacity(n - 1);
        m.extend_from_slice(&maps[..i - 1]);
        m.push(maps[i].compose(&maps[i - 1])?);
        m.extend_from_slice(&maps[i + 1..]);
        out.push((
            SymGenerator {
                string: EpiString {
                    source: g.string.source,
                    maps: m,
                },
                word: g.word.clone(),
            },
            sign(i),
        ));
    }
    out.push((
        SymGenerator {
            string: EpiString {
                source: g.string.source,
                maps: maps[..n - 1].to_vec(),
            },
            word: g.word.clone(),
        },
        sign(n),
    ));
    Ok(out)
}

/// `NCS_0, ..., NCS_top` (or the quotient) in weight `w`.
#[derive(Clone, Debug)]
pub struct SymmetricComplex {
    weight: u32,
    variant: SymVariant,
    bases: Vec<IndexedBasis<SymGenerator>>,
    slice: ChainSlice,
}

impl SymmetricComplex {
    pub fn build(
        alg: &GradedAlgebra,
        top: usize,
        weight: u32,
        variant: SymVariant,
        basis_limit: Option<usize>,
    ) -> Result<SymmetricComplex> {
        let arity = match alg.min_ideal_weight() {
            Some(m) if m > 0 => (weight / m) as usize,
            _ => 0,
        };
        let ideal: Vec<Letter> = alg.ideal_letters().collect();
        let too_large = |n: usize| Error::BasisTooLarge {
            size: basis_limit.unwrap_or(0) + 1,
            limit: basis_limit.unwrap_or(0),
            context: format!("symmetric degree {n}, weight {weight}"),
        };
        let mut cache = HashMap::new();
        let mut bases = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut gens = Vec::new();
            for x in 1..=arity {
                let words = words_of_weight(alg, &vec![ideal.as_slice(); x], weight, basis_limit)
                    .map_err(|_| too_large(n))?;
                if words.is_empty() {
                    continue;
                }
                for s in strings_cached(x, n, true, &mut cache)? {
                    if variant == SymVariant::Quotient && s.target() != 1 {
                        continue;
                    }
                    for w in &words {
                        gens.push(SymGenerator {
                            string: s.clone(),
                            word: w.clone(),
                        });
                    }
                    if basis_limit.is_some_and(|l| gens.len() > l) {
                        return Err(too_large(n));
                    }
                }
            }
            gens.sort();
            bases.push(IndexedBasis::from_vec(gens)?);
        }
        let field = alg.field();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let cols = bases[n]
                .iter()
                .map(|g| {
                    let mut entries = Vec::new();
                    for (h, c) in sym_faces(alg, g)? {
                        if h.string.is_degenerate() {
                            continue;
                        }
                        if variant == SymVariant::Quotient && h.string.target() != 1 {
                            continue;
                        }
                        let j = bases[n - 1].index_of(&h).ok_or_else(|| {
                            Error::Certification(format!("face {h:?} of {g:?} lies outside the slice"))
                        })?;
                        entries.push((j, c));
                    }
                    Ok(SparseVec::from_terms(entries))
                })
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(SparseMatrix::from_columns(bases[n - 1].len(), cols, field)?);
        }
        let dims = bases.iter().map(IndexedBasis::len).collect();
        let slice = ChainSlice::new(field, dims, boundaries)?;
        Ok(SymmetricComplex {
            weight,
            variant,
            bases,
            slice,
        })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn variant(&self) -> SymVariant {
        self.variant
    }

    pub fn top(&self) -> usize {
        self.slice.top()
    }

    pub fn basis(&self, n: usize) -> &IndexedBasis<SymGenerator> {
        &self.bases[n]
    }

    pub fn slice(&self) -> &ChainSlice {
        &self.slice
    }
}

/// `H̃S_n(A)_w` for `n <= max_n` and each `w <= max_w`.
pub fn reduced_symmetric_homology(
    alg: &GradedAlgebra,
    max_n: usize,
    max_w: u32,
    basis_limit: Option<usize>,
) -> Result<Vec<HomologyReport>> {
    (0..=max_w)
        .map(|w| {
            let c = SymmetricComplex::build(alg, max_n + 1, w, SymVariant::Full, basis_limit)?;
            Ok(homology(c.slice())?.truncated(max_n))
        })
        .collect()
}

/// `dim H̃S_0(A)_w + [w = 0]` against `dim A_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hs0Row {
    pub weight: u32,
    pub reduced_hs0: usize,
    pub algebra_dim: usize,
    pub consistent: bool,
}

pub fn hs0_consistency(alg: &GradedAlgebra, max_w: u32) -> Result<Vec<Hs0Row>> {
    reduced_symmetric_homology(alg, 0, max_w, None)?
        .into_iter()
        .zip(0..)
        .map(|(h, w)| {
            let reduced_hs0 = h.dim(0);
            let algebra_dim = alg.graded_dim(w);
            Ok(Hs0Row {
                weight: w,
                reduced_hs0,
                algebra_dim,
                consistent: reduced_hs0 + usize::from(w == 0) == algebra_dim,
            })
        })
        .collect()
}

/// `q : NCS(I) -> NCS(I)/NCS^1(I)`, `Phi` into `NCΓ(I, k)` and the kernel
/// of `Phi o q`, in one weight.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub weight: u32,
    pub full: ChainSlice,
    pub quotient: ChainSlice,
    pub gamma: ChainSlice,
    pub q: ChainMap,
    pub phi: ChainMap,
    pub phi_q: ChainMap,
    /// For every generator of `NCΓ`, the canonical lift it came from.
    pub lifts_found: bool,
    pub kernel: ChainSlice,
    pub kernel_inclusion: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonCertificate {
    pub weight: u32,
    pub q_is_chain_map: bool,
    pub phi_is_chain_map: bool,
    pub phi_q_is_chain_map: bool,
    /// `rank (Phi o q)_n = dim NCΓ_n(I, k)_w` for every `n`.
    pub surjective: bool,
    pub canonical_lifts: bool,
    pub ranks: Vec<usize>,
    pub symmetric_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub gamma_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
}

impl ComparisonCertificate {
    pub fn passed(&self) -> bool {
        self.q_is_chain_map && self.phi_is_chain_map && self.phi_q_is_chain_map && self.surjective && self.canonical_lifts
    }
}

impl Comparison {
    pub fn build(alg: &GradedAlgebra, top: usize, weight: u32, basis_limit: Option<usize>) -> Result<Comparison> {
        let full = SymmetricComplex::build(alg, top, weight, SymVariant::Full, basis_limit)?;
        let quot = SymmetricComplex::build(alg, top, weight, SymVariant::Quotient, basis_limit)?;
        let module = Bimodule::new(alg, Coefficients::Ground);
        let mut opts = GammaOptions::new(Variant::I);
        opts.basis_limit = basis_limit;
        let gamma = GammaComplex::build(module, top, weight, opts)?;
        let field = alg.field();

        let mut q_mats = Vec::new();
        let mut phi_mats = Vec::new();
        let mut phi_q_mats = Vec::new();
        let mut kernel_spaces = Vec::new();
        let mut lifts_found = true;
        for n in 0..=top {
            let (fb, qb, gb) = (full.basis(n), quot.basis(n), gamma.basis(n));
            let image_of = |g: &SymGenerator| -> Result<Option<usize>> {
                let s = g.string.forget()?;
                if s.is_degenerate() {
                    return Ok(None);
                }
                let mut word = g.word.clone();
                word.push(0);
                let h = GammaGenerator::new(s, word)?;
                gb.index_of(&h)
                    .map(Some)
                    .ok_or_else(|| Error::Certification(format!("Phi of {g:?} lies outside NCΓ")))
            };
            let phi_cols = qb
                .iter()
                .map(|g| Ok(image_of(g)?.map_or_else(SparseVec::new, |k| SparseVec::unit(k, field))))
                .collect::<Result<Vec<_>>>()?;
            phi_mats.push(SparseMatrix::from_columns(gb.len(), phi_cols, field)?);

            let mut q_cols = Vec::with_capacity(fb.len());
            let mut pq_cols = Vec::with_capacity(fb.len());
            let mut targets = Vec::with_capacity(fb.len());
            for g in fb.iter() {
                match qb.index_of(g) {
                    Some(k) => {
                        q_cols.push(SparseVec::unit(k, field));
                        let t = image_of(g)?;
                        pq_cols.push(t.map_or_else(SparseVec::new, |k| SparseVec::unit(k, field)));
                        targets.push(t);
                    }
                    None => {
                        if g.string.target() == 1 {
                            return Err(Error::Certification(format!("{g:?} is missing from the quotient")));
                        }
                        q_cols.push(SparseVec::new());
                        pq_cols.push(SparseVec::new());
                        targets.push(None);
                    }
                }
            }
            q_mats.push(SparseMatrix::from_columns(qb.len(), q_cols, field)?);
            phi_q_mats.push(SparseMatrix::from_columns(gb.len(), pq_cols, field)?);

            // the canonical lift of each Γ generator is the pivot of its fibre
            let mut lift_of = vec![None; gb.len()];
            for h in gb.iter() {
                let string = EpiString::new(
                    h.string.source(),
                    h.string.maps().iter().map(DeltaSMorphism::canonical_lift).collect(),
                )?;
                let lift = SymGenerator {
                    string,
                    word: h.slots().to_vec(),
                };
                match fb.index_of(&lift) {
                    Some(j) if targets[j] == gb.index_of(h) => lift_of[gb.index_of(h).expect("in basis")] = Some(j),
                    _ => lifts_found = false,
                }
            }
            let mut kernel = Vec::new();
            for (j, t) in targets.iter().enumerate() {
                match t {
                    None => kernel.push((j, SparseVec::unit(j, field))),
                    Some(k) => match lift_of[*k] {
                        Some(p) if p == j => {}
                        Some(p) => kernel.push((j, SparseVec::from_terms([(j, field.one()), (p, -field.one())]))),
                        None => lifts_found = false,
                    },
                }
            }
            kernel_spaces.push(Subspace::from_pivoted_basis(fb.len(), field, kernel)?);
        }
        let (kernel, kernel_inclusion) = subcomplex(full.slice(), &kernel_spaces)?;
        Ok(Comparison {
            weight,
            full: full.slice().clone(),
            quotient: quot.slice().clone(),
            gamma: gamma.slice().clone(),
            q: ChainMap::new(q_mats),
            phi: ChainMap::new(phi_mats),
            phi_q: ChainMap::new(phi_q_mats),
            lifts_found,
            kernel,
            kernel_inclusion,
        })
    }

    pub fn certify(&self) -> Result<ComparisonCertificate> {
        let ranks: Vec<usize> = self.phi_q.components().iter().map(SparseMatrix::rank).collect();
        Ok(ComparisonCertificate {
            weight: self.weight,
            q_is_chain_map: self.q.check(&self.full, &self.quotient).is_ok(),
            phi_is_chain_map: self.phi.check(&self.quotient, &self.gamma).is_ok(),
            phi_q_is_chain_map: self.phi_q.check(&self.full, &self.gamma).is_ok(),
            surjective: ranks.iter().zip(self.gamma.dims()).all(|(r, d)| r == d),
            canonical_lifts: self.lifts_found,
            symmetric_dims: self.full.dims().to_vec(),
            quotient_dims: self.quotient.dims().to_vec(),
            gamma_dims: self.gamma.dims().to_vec(),
            kernel_dims: self.kernel.dims().to_vec(),
            ranks,
        })
    }

    /// `0 -> ker(Phi o q) -> NCS(I) -> NCΓ(I, k) -> 0`, certified exact.
    pub fn short_exact_sequence(&self) -> Result<ShortExactSequence> {
        ShortExactSequence::new(
            self.kernel.clone(),
            self.full.clone(),
            self.gamma.clone(),
            self.kernel_inclusion.clone(),
            self.phi_q.clone(),
        )
    }

    /// The long exact sequence through degree `top - 1`.
    pub fn long_exact_sequence(&self) -> Result<LongExactSequence> {
        self.short_exact_sequence()?.long_exact_sequence()
    }
}
