//! The category of finite sets and surjections, the Robinson–Whitehouse
//! complexes `CΓ(A, M)` and `CΓ(I, M)` in one weight, and the pruning map
//! between them.
//!
//! Sets are `{1, ..., x}`; internally maps are stored 0-based.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{expand_tensor, words_of_weight, Bimodule, GradedAlgebra, Letter};
use crate::error::{Error, Result};
use crate::linalg::{
    homology, subcomplex, ChainMap, ChainSlice, Field, HomologyReport, IndexedBasis, Scalar, SparseMatrix,
    SparseVec, Subspace,
};

/// A surjection `{1..x} -> {1..y}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    target: u8,
    images: Vec<u8>,
}

impl Surjection {
    /// `images[i - 1] = f(i)`.
    pub fn from_images(y: usize, images: &[usize]) -> Result<Surjection> {
        let mut hit = vec![false; y];
        for &v in images {
            if v == 0 || v > y {
                return Err(Error::InvalidArgument(format!("image {v} outside 1..={y}")));
            }
            hit[v - 1] = true;
        }
        if y == 0 || !hit.iter().all(|&h| h) {
            return Err(Error::InvalidArgument(format!("{images:?} does not cover 1..={y}")));
        }
        Ok(Surjection {
            target: y as u8,
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub(crate) fn from_zero_based(y: usize, images: Vec<u8>) -> Surjection {
        Surjection { target: y as u8, images }
    }

    pub fn identity(x: usize) -> Surjection {
        Surjection {
            target: x as u8,
            images: (0..x as u8).collect(),
        }
    }

    /// The unique map `{1..x} -> {1}`.
    pub fn collapse(x: usize) -> Surjection {
        Surjection {
            target: 1,
            images: vec![0; x],
        }
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

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Surjection) -> Result<Surjection> {
        if other.target() != self.source() {
            return Err(Error::InvalidArgument("surjections are not composable".into()));
        }
        Ok(Surjection {
            target: self.target,
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    /// The restriction to `domain`, a sorted subset of `{0..x-1}` whose
    /// image is `codomain` (sorted), with both relabelled in order.
    fn restrict(&self, domain: &[usize], codomain: &[usize]) -> Surjection {
        let images = domain
            .iter()
            .map(|&i| {
                let v = self.images[i] as usize;
                codomain.binary_search(&v).expect("image lies in the codomain") as u8
            })
            .collect();
        Surjection {
            target: codomain.len() as u8,
            images,
        }
    }

    /// Sorted image of a set of 0-based points.
    fn image_set(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points.iter().map(|&i| self.images[i] as usize).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.images(), self.target)
    }
}

/// All surjections `{1..x} -> {1..y}` in lexicographic order of image lists.
pub fn enumerate_surjections(x: usize, y: usize) -> Result<Vec<Surjection>> {
    if y == 0 || x < y {
        return Err(Error::InvalidArgument(format!("no surjection {x} -> {y}")));
    }
    if x > u8::MAX as usize {
        return Err(Error::InvalidArgument(format!("domain {x} is too large")));
    }
    let mut out = Vec::new();
    let mut images = vec![0u8; x];
    let mut counts = vec![0usize; y];
    fn go(k: usize, y: usize, images: &mut Vec<u8>, counts: &mut Vec<usize>, missing: usize, out: &mut Vec<Surjection>) {
        let x = images.len();
        if x - k < missing {
            return;
        }
        if k == x {
            out.push(Surjection::from_zero_based(y, images.clone()));
            return;
        }
        for v in 0..y {
            images[k] = v as u8;
            counts[v] += 1;
            let missing = if counts[v] == 1 { missing - 1 } else { missing };
            go(k + 1, y, images, counts, missing, out);
            counts[v] -= 1;
        }
    }
    go(0, y, &mut images, &mut counts, y, &mut out);
    Ok(out)
}

/// `y! S(x, y)`, the number of surjections `x -> y`.
pub fn surjection_count(x: usize, y: usize) -> u128 {
    // inclusion-exclusion: sum_j (-1)^j C(y, j) (y - j)^x
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for j in 0..=y {
        let term = binom * ((y - j) as i128).pow(x as u32);
        total += if j % 2 == 0 { term } else { -term };
        binom = binom * (y - j) as i128 / (j + 1) as i128;
    }
    total as u128
}

/// A string `x -> x_1 -> ... -> x_{n-1} -> 1` of surjections, stored as
/// `[f_1, ..., f_n]`. The empty string sits on the one-point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaString {
    maps: Vec<Surjection>,
}

impl OmegaString {
    /// `maps = [f_1, ..., f_n]`; composability and final codomain are checked.
    pub fn new(maps: Vec<Surjection>) -> Result<OmegaString> {
        for w in maps.windows(2) {
            if w[0].target() != w[1].source() {
                return Err(Error::InvalidArgument("string is not composable".into()));
            }
        }
        if maps.last().is_some_and(|f| f.target() != 1) {
            return Err(Error::InvalidArgument("string must end at the one-point set".into()));
        }
        Ok(OmegaString { maps })
    }

    pub fn empty() -> OmegaString {
        OmegaString { maps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Surjection] {
        &self.maps
    }

    /// The initial domain `x`.
    pub fn source(&self) -> usize {
        self.maps.first().map_or(1, Surjection::source)
    }

    pub fn is_degenerate(&self) -> bool {
        self.maps.iter().any(Surjection::is_identity)
    }

    /// The `i`-th component (`i` in `1..=x_{n-1}`) and the sorted 0-based
    /// preimage of `i` under `f_{n-1} o ... o f_1`.
    pub fn ith_component(&self, i: usize) -> Result<(OmegaString, Vec<usize>)> {
        let n = self.len();
        if n == 0 {
            return Err(Error::InvalidArgument("the empty string has no components".into()));
        }
        let top = self.maps[n - 1].source();
        if i == 0 || i > top {
            return Err(Error::InvalidArgument(format!("component {i} outside 1..={top}")));
        }
        // levels[j] = iterated preimage of i in the domain of f_{j+1}
        let mut levels: Vec<Vec<usize>> = vec![Vec::new(); n];
        levels[n - 1] = vec![i - 1];
        for j in (0..n - 1).rev() {
            let f = &self.maps[j];
            levels[j] = (0..f.source())
                .filter(|&p| levels[j + 1].binary_search(&(f.images[p] as usize)).is_ok())
                .collect();
        }
        let mut maps = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            maps.push(self.maps[j].restrict(&levels[j], &levels[j + 1]));
        }
        let pre = levels.swap_remove(0);
        Ok((OmegaString { maps }, pre))
    }

    /// `[f_n | ... | f_{i+1} f_i | ... | f_1]` for `1 <= i < n`.
    fn compose_at(&self, i: usize) -> OmegaString {
        let mut maps = Vec::with_capacity(self.len() - 1);
        maps.extend_from_slice(&self.maps[..i - 1]);
        maps.push(self.maps[i].compose(&self.maps[i - 1]).expect("composable"));
        maps.extend_from_slice(&self.maps[i + 1..]);
        OmegaString { maps }
    }

    fn drop_first(&self) -> OmegaString {
        OmegaString {
            maps: self.maps[1..].to_vec(),
        }
    }
}

/// All strings of length `n` from `x` to `1`, optionally without identities,
/// in lexicographic order.
pub fn omega_strings(x: usize, n: usize, normalized: bool) -> Vec<OmegaString> {
    let mut cache = HashMap::new();
    strings_cached(x, n, normalized, &mut cache)
}

fn strings_cached(
    x: usize,
    n: usize,
    normalized: bool,
    cache: &mut HashMap<(usize, usize), Vec<OmegaString>>,
) -> Vec<OmegaString> {
    if let Some(s) = cache.get(&(x, n)) {
        return s.clone();
    }
    let out = if n == 0 {
        if x == 1 {
            vec![OmegaString::empty()]
        } else {
            Vec::new()
        }
    } else if n == 1 {
        if normalized && x == 1 {
            Vec::new()
        } else {
            vec![OmegaString {
                maps: vec![Surjection::collapse(x)],
            }]
        }
    } else {
        let mut out = Vec::new();
        for y in 1..=x {
            let tails = strings_cached(y, n - 1, normalized, cache);
            if tails.is_empty() {
                continue;
            }
            for f in enumerate_surjections(x, y).expect("y <= x") {
                if normalized && f.is_identity() {
                    continue;
                }
                for t in &tails {
                    let mut maps = Vec::with_capacity(n);
                    maps.push(f.clone());
                    maps.extend_from_slice(&t.maps);
                    out.push(OmegaString { maps });
                }
            }
        }
        out
    };
    cache.insert((x, n), out.clone());
    out
}

/// `f_*(a_1 (x) ... (x) a_x)`: slot `j` is the product of the slots over `j`.
pub fn apply_surjection(alg: &GradedAlgebra, f: &Surjection, word: &[Letter]) -> Vec<(Vec<Letter>, Scalar)> {
    let mut fibers: Vec<Vec<Letter>> = vec![Vec::new(); f.target()];
    for (i, &l) in word.iter().enumerate() {
        fibers[f.images[i] as usize].push(l);
    }
    let factors: Vec<_> = fibers.iter().map(|fib| alg.product(fib)).collect();
    expand_tensor(alg.field(), &factors)
}

/// The matrix of `f_* : (A^{(x) x})_w -> (A^{(x) y})_w` on letter words in
/// lexicographic order.
pub fn induced_tensor_map(alg: &GradedAlgebra, f: &Surjection, w: u32) -> Result<SparseMatrix> {
    let letters: Vec<Letter> = (0..=alg.ideal_dim() as Letter).collect();
    let dom = IndexedBasis::from_vec(words_of_weight(alg, &vec![letters.as_slice(); f.source()], w, None)?)?;
    let cod = IndexedBasis::from_vec(words_of_weight(alg, &vec![letters.as_slice(); f.target()], w, None)?)?;
    let cols = dom
        .iter()
        .map(|word| {
            SparseVec::from_terms(
                apply_surjection(alg, f, word)
                    .into_iter()
                    .map(|(v, c)| (cod.index_of(&v).expect("weight is preserved"), c)),
            )
        })
        .collect();
    SparseMatrix::from_columns(cod.len(), cols, alg.field())
}

/// Whether tensor slots range over `A` (unit allowed) or over `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    A,
    I,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::A => write!(f, "A"),
            Variant::I => write!(f, "I"),
        }
    }
}

/// `[f_n | ... | f_1] (x) (a_1 (x) ... (x) a_x) (x) m`; `word = [a_1, ..., a_x, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaGenerator {
    pub string: OmegaString,
    pub word: Vec<Letter>,
}

impl GammaGenerator {
    pub fn new(string: OmegaString, word: Vec<Letter>) -> Result<GammaGenerator> {
        if word.len() != string.source() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} letters for a string out of {}",
                word.len(),
                string.source()
            )));
        }
        Ok(GammaGenerator { string, word })
    }

    pub fn slots(&self) -> &[Letter] {
        &self.word[..self.word.len() - 1]
    }

    pub fn module(&self) -> Letter {
        *self.word.last().expect("module slot")
    }
}

/// Build options for a Robinson–Whitehouse slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaOptions {
    pub variant: Variant,
    /// Drop strings containing identities (the normalized quotient).
    pub normalized: bool,
    /// Largest initial domain `x` kept; `None` means the weight. Only the
    /// `A` variant needs it: faces never increase `x`, so the truncation is
    /// a subcomplex.
    pub arity_bound: Option<usize>,
    pub basis_limit: Option<usize>,
}

impl GammaOptions {
    pub fn new(variant: Variant) -> GammaOptions {
        GammaOptions {
            variant,
            normalized: true,
            arity_bound: None,
            basis_limit: None,
        }
    }
}

/// `CΓ_0, ..., CΓ_top` in weight `w`.
#[derive(Clone, Debug)]
pub struct GammaComplex<'a> {
    module: Bimodule<'a>,
    weight: u32,
    options: GammaOptions,
    arity: usize,
    bases: Vec<IndexedBasis<GammaGenerator>>,
    slice: ChainSlice,
}

impl<'a> GammaComplex<'a> {
    pub fn build(module: Bimodule<'a>, top: usize, weight: u32, options: GammaOptions) -> Result<Self> {
        let alg = module.algebra();
        let arity = arity_of(&module, weight, options);
        let mut bases = Vec::with_capacity(top + 1);
        let mut cache = HashMap::new();
        for n in 0..=top {
            let mut gens = Vec::new();
            for_each_generator(&module, n, weight, options, &mut cache, |g| {
                gens.push(g);
                if options.basis_limit.is_some_and(|l| gens.len() > l) {
                    return Err(too_large(options.basis_limit, n, weight));
                }
                Ok(())
            })?;
            bases.push(IndexedBasis::from_vec(gens)?);
        }
        let field = alg.field();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let cols = bases[n]
                .iter()
                .map(|g| {
                    let terms = gamma_faces(&module, g)?;
                    let mut entries = Vec::with_capacity(terms.len());
                    for (h, c) in terms {
                        if options.normalized && h.string.is_degenerate() {
                            continue;
                        }
                        if options.variant == Variant::I && h.slots().contains(&0) {
                            return Err(Error::Certification(format!("face of {g:?} leaves CΓ(I, M)")));
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
        Ok(GammaComplex {
            module,
            weight,
            options,
            arity,
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

    pub fn options(&self) -> GammaOptions {
        self.options
    }

    /// The largest initial domain present.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn top(&self) -> usize {
        self.slice.top()
    }

    pub fn field(&self) -> Field {
        self.slice.field()
    }

    pub fn basis(&self, n: usize) -> &IndexedBasis<GammaGenerator> {
        &self.bases[n]
    }

    pub fn slice(&self) -> &ChainSlice {
        &self.slice
    }
}

fn arity_of(module: &Bimodule<'_>, weight: u32, options: GammaOptions) -> usize {
    let min_w = module.algebra().min_ideal_weight().unwrap_or(1).max(1);
    match options.variant {
        Variant::I => (weight / min_w) as usize,
        Variant::A => options.arity_bound.unwrap_or(weight as usize),
    }
}

/// Visits the generators of degree `n` in build order.
fn for_each_generator(
    module: &Bimodule<'_>,
    n: usize,
    weight: u32,
    options: GammaOptions,
    cache: &mut HashMap<(usize, usize), Vec<OmegaString>>,
    mut f: impl FnMut(GammaGenerator) -> Result<()>,
) -> Result<()> {
    let alg = module.algebra();
    let slot_letters: Vec<Letter> = match options.variant {
        Variant::A => (0..=alg.ideal_dim() as Letter).collect(),
        Variant::I => alg.ideal_letters().collect(),
    };
    let mlet = module.letters();
    for x in 1..=arity_of(module, weight, options) {
        let strings = strings_cached(x, n, options.normalized, cache);
        if strings.is_empty() {
            continue;
        }
        let mut alphabets: Vec<&[Letter]> = vec![slot_letters.as_slice(); x];
        alphabets.push(&mlet);
        let remaining = options.basis_limit.map(|l| l / strings.len());
        let words = words_of_weight(alg, &alphabets, weight, remaining).map_err(|e| match e {
            Error::BasisTooLarge { .. } => too_large(options.basis_limit, n, weight),
            e => e,
        })?;
        for s in &strings {
            for w in &words {
                f(GammaGenerator {
                    string: s.clone(),
                    word: w.clone(),
                })?;
            }
        }
    }
    Ok(())
}

fn too_large(limit: Option<usize>, n: usize, w: u32) -> Error {
    Error::BasisTooLarge {
        size: limit.unwrap_or(0) + 1,
        limit: limit.unwrap_or(0),
        context: format!("gamma degree {n}, weight {w}"),
    }
}

/// `sum_i (-1)^i d_i` on one generator, as a list of generators with coefficients.
pub fn gamma_faces(module: &Bimodule<'_>, g: &GammaGenerator) -> Result<Vec<(GammaGenerator, Scalar)>> {
    let alg = module.algebra();
    let field = alg.field();
    let n = g.string.len();
    if n == 0 {
        return Err(Error::InvalidArgument("degree 0 has no faces".into()));
    }
    let slots = g.slots();
    let m = g.module();
    let mut out = Vec::new();
    let sign = |i: usize| field.from_i64(if i.is_multiple_of(2) { 1 } else { -1 });

    // d_0
    let rest = g.string.drop_first();
    let s0 = sign(0);
    for (mut w, c) in apply_surjection(alg, &g.string.maps[0], slots) {
        w.push(m);
        out.push((
            GammaGenerator {
                string: rest.clone(),
                word: w,
            },
            &c * &s0,
        ));
    }
    // middle faces
    for i in 1..n {
        out.push((
            GammaGenerator {
                string: g.string.compose_at(i),
                word: g.word.clone(),
            },
            sign(i),
        ));
    }
    // d_n
    let sn = sign(n);
    for i in 1..=g.string.maps[n - 1].source() {
        let (comp, pre) = g.string.ith_component(i)?;
        let kept: Vec<Letter> = pre.iter().map(|&p| slots[p]).collect();
        let others: Vec<Letter> = (0..slots.len())
            .filter(|p| pre.binary_search(p).is_err())
            .map(|p| slots[p])
            .collect();
        for (mm, c) in module.act_product(&others, m) {
            let mut w = kept.clone();
            w.push(mm);
            out.push((
                GammaGenerator {
                    string: comp.clone(),
                    word: w,
                },
                &c * &sn,
            ));
        }
    }
    Ok(out)
}

/// The pruning map on one generator of `CΓ(A, M)`: `None` when every slot is
/// trivial.
pub fn prune(g: &GammaGenerator) -> Option<GammaGenerator> {
    let slots = g.slots();
    let keep: Vec<usize> = (0..slots.len()).filter(|&p| slots[p] != 0).collect();
    if keep.is_empty() {
        return None;
    }
    let mut maps = Vec::with_capacity(g.string.len());
    let mut domain = keep.clone();
    for f in &g.string.maps {
        let image = f.image_set(&domain);
        maps.push(f.restrict(&domain, &image));
        domain = image;
    }
    let mut word: Vec<Letter> = keep.iter().map(|&p| slots[p]).collect();
    word.push(g.module());
    Some(GammaGenerator {
        string: OmegaString { maps },
        word,
    })
}

/// `P : CΓ(A, M) -> CΓ(I, M)`, the inclusion `i` and `ker P`, in one weight.
#[derive(Clone, Debug)]
pub struct PruningSplit {
    pub full: ChainSlice,
    pub ideal: ChainSlice,
    pub prune: ChainMap,
    pub inclusion: ChainMap,
    pub kernel: ChainSlice,
    pub kernel_inclusion: ChainMap,
}

/// Per-degree outcome of the pruning checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruningCertificate {
    pub weight: u32,
    pub prune_is_chain_map: bool,
    pub inclusion_is_chain_map: bool,
    pub retraction: bool,
    /// `dim CΓ_n(A, M) = dim CΓ_n(I, M) + dim ker P_n`.
    pub dimensions_add_up: bool,
    /// `HΓ_n(A, M) = HΓ_n(I, M) + H_n(ker P)`.
    pub homology_adds_up: bool,
    pub full_dims: Vec<usize>,
    pub ideal_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
}

impl PruningCertificate {
    pub fn passed(&self) -> bool {
        self.prune_is_chain_map
            && self.inclusion_is_chain_map
            && self.retraction
            && self.dimensions_add_up
            && self.homology_adds_up
    }
}

impl PruningSplit {
    /// Both complexes must be built with the same normalization and the
    /// `A` variant's arity bound must be at least the `I` variant's.
    pub fn new(full: &GammaComplex<'_>, ideal: &GammaComplex<'_>) -> Result<PruningSplit> {
        if full.options.variant != Variant::A || ideal.options.variant != Variant::I {
            return Err(Error::InvalidArgument("pruning runs from the A variant to the I variant".into()));
        }
        if full.options.normalized != ideal.options.normalized || full.top() != ideal.top() {
            return Err(Error::InvalidArgument("pruning needs matching slices".into()));
        }
        let field = full.field();
        let normalized = full.options.normalized;
        let mut prune_mats = Vec::new();
        let mut incl_mats = Vec::new();
        let mut kernel_spaces = Vec::new();
        for n in 0..=full.top() {
            let fb = full.basis(n);
            let ib = ideal.basis(n);
            let mut cols = Vec::with_capacity(fb.len());
            let mut kernel = Vec::new();
            for (j, g) in fb.iter().enumerate() {
                let image = prune(g).filter(|h| !(normalized && h.string.is_degenerate()));
                match image {
                    None => {
                        cols.push(SparseVec::new());
                        kernel.push((j, SparseVec::unit(j, field)));
                    }
                    Some(h) => {
                        let k = ib.index_of(&h).ok_or_else(|| {
                            Error::Certification(format!("pruned generator {h:?} is missing from CΓ(I, M)"))
                        })?;
                        cols.push(SparseVec::unit(k, field));
                        if h != *g {
                            let back = fb.index_of(&h).ok_or_else(|| {
                                Error::Certification(format!("{h:?} is missing from CΓ(A, M)"))
                            })?;
                            let v = SparseVec::from_terms([(j, field.one()), (back, -field.one())]);
                            kernel.push((j, v));
                        }
                    }
                }
            }
            prune_mats.push(SparseMatrix::from_columns(ib.len(), cols, field)?);
            let icols = ib
                .iter()
                .map(|h| {
                    fb.index_of(h)
                        .map(|k| SparseVec::unit(k, field))
                        .ok_or_else(|| Error::Certification(format!("{h:?} is missing from CΓ(A, M)")))
                })
                .collect::<Result<Vec<_>>>()?;
            incl_mats.push(SparseMatrix::from_columns(fb.len(), icols, field)?);
            kernel_spaces.push(Subspace::from_pivoted_basis(fb.len(), field, kernel)?);
        }
        let (kernel, kernel_inclusion) = subcomplex(full.slice(), &kernel_spaces)?;
        Ok(PruningSplit {
            full: full.slice().clone(),
            ideal: ideal.slice().clone(),
            prune: ChainMap::new(prune_mats),
            inclusion: ChainMap::new(incl_mats),
            kernel,
            kernel_inclusion,
        })
    }

    pub fn certify(&self, weight: u32) -> Result<PruningCertificate> {
        let prune_is_chain_map = self.prune.check(&self.full, &self.ideal).is_ok();
        let inclusion_is_chain_map = self.inclusion.check(&self.ideal, &self.full).is_ok();
        let composite = self.prune.compose(&self.inclusion)?;
        let field = self.full.field();
        let retraction = (0..=self.full.top())
            .all(|n| composite.components()[n] == SparseMatrix::identity(self.ideal.dim(n), field));
        let dimensions_add_up =
            (0..=self.full.top()).all(|n| self.full.dim(n) == self.ideal.dim(n) + self.kernel.dim(n));
        let top = self.full.top().saturating_sub(1);
        let h_full = homology(&self.full)?.truncated(top);
        let h_ideal = homology(&self.ideal)?.truncated(top);
        let h_ker = homology(&self.kernel)?.truncated(top);
        let homology_adds_up = (0..=top).all(|n| h_full.dim(n) == h_ideal.dim(n) + h_ker.dim(n));
        Ok(PruningCertificate {
            weight,
            prune_is_chain_map,
            inclusion_is_chain_map,
            retraction,
            dimensions_add_up,
            homology_adds_up,
            full_dims: self.full.dims().to_vec(),
            ideal_dims: self.ideal.dims().to_vec(),
            kernel_dims: self.kernel.dims().to_vec(),
        })
    }
}

/// Normalized pruning checks in degrees `0..=top` for one weight. Matrices
/// are built through degree `top - 1`; degree `top` is checked one generator
/// at a time, so its chain group is never stored. Homology is compared
/// through degree `top - 2`.
pub fn certify_pruning(
    module: Bimodule<'_>,
    weight: u32,
    top: usize,
    arity_bound: Option<usize>,
) -> Result<PruningCertificate> {
    if top == 0 {
        return Err(Error::InvalidArgument("the pruning certificate needs top >= 1".into()));
    }
    let mut full_opts = GammaOptions::new(Variant::A);
    full_opts.arity_bound = arity_bound;
    let ideal_opts = GammaOptions::new(Variant::I);
    let full = GammaComplex::build(module, top - 1, weight, full_opts)?;
    let ideal = GammaComplex::build(module, top, weight, ideal_opts)?;
    let ideal_low = GammaComplex::build(module, top - 1, weight, ideal_opts)?;
    let mut cert = PruningSplit::new(&full, &ideal_low)?.certify(weight)?;

    let pruned = |g: &GammaGenerator| prune(g).filter(|h| !h.string.is_degenerate());
    let faces = |g: &GammaGenerator| -> Result<Vec<(GammaGenerator, Scalar)>> {
        let mut out = gamma_faces(&module, g)?;
        out.retain(|(h, _)| !h.string.is_degenerate());
        Ok(out)
    };
    let (ib_top, ib_low, fb_low) = (ideal.basis(top), ideal.basis(top - 1), full.basis(top - 1));
    let d_ideal = ideal.slice().boundary(top).expect("top >= 1");

    let (mut full_dim, mut kernel_dim, mut prune_ok) = (0usize, 0usize, true);
    let mut cache = HashMap::new();
    for_each_generator(&module, top, weight, full_opts, &mut cache, |g| {
        full_dim += 1;
        let image = pruned(&g);
        if image.as_ref() != Some(&g) {
            kernel_dim += 1;
        }
        if !prune_ok {
            return Ok(());
        }
        let mut lhs = Vec::new();
        for (h, c) in faces(&g)? {
            if let Some(p) = pruned(&h) {
                match ib_low.index_of(&p) {
                    Some(k) => lhs.push((k, c)),
                    None => prune_ok = false,
                }
            }
        }
        let rhs = match image {
            None => SparseVec::new(),
            Some(h) => match ib_top.index_of(&h) {
                Some(k) => d_ideal.column(k).clone(),
                None => {
                    prune_ok = false;
                    SparseVec::new()
                }
            },
        };
        prune_ok &= SparseVec::from_terms(lhs) == rhs;
        Ok(())
    })?;

    let (mut incl_ok, mut retraction) = (true, true);
    for (k, h) in ib_top.iter().enumerate() {
        retraction &= pruned(h).as_ref() == Some(h);
        if h.string.source() > full.arity() {
            incl_ok = false;
            continue;
        }
        let mut lhs = Vec::new();
        for (f, c) in faces(h)? {
            match fb_low.index_of(&f) {
                Some(j) => lhs.push((j, c)),
                None => incl_ok = false,
            }
        }
        let rhs = d_ideal
            .column(k)
            .iter()
            .map(|(j, c)| fb_low.index_of(ib_low.get(*j)).map(|i| (i, c.clone())))
            .collect::<Option<Vec<_>>>();
        match rhs {
            Some(rhs) => incl_ok &= SparseVec::from_terms(lhs) == SparseVec::from_terms(rhs),
            None => incl_ok = false,
        }
    }

    cert.prune_is_chain_map &= prune_ok;
    cert.inclusion_is_chain_map &= incl_ok;
    cert.retraction &= retraction;
    cert.dimensions_add_up &= full_dim == ib_top.len() + kernel_dim;
    cert.full_dims.push(full_dim);
    cert.ideal_dims.push(ib_top.len());
    cert.kernel_dims.push(kernel_dim);
    Ok(cert)
}

/// Normalized Γ-homology of the chosen variant per weight `0..=max_w`, in
/// degrees `0..=max_n` (slices are built one degree higher).
pub fn gamma_homology(
    module: Bimodule<'_>,
    variant: Variant,
    max_n: usize,
    max_w: u32,
    arity_bound: Option<usize>,
    basis_limit: Option<usize>,
) -> Result<Vec<HomologyReport>> {
    (0..=max_w)
        .map(|w| {
            let mut opts = GammaOptions::new(variant);
            opts.arity_bound = arity_bound;
            opts.basis_limit = basis_limit;
            let c = GammaComplex::build(module, max_n + 1, w, opts)?;
            Ok(homology(c.slice())?.truncated(max_n))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, Coefficients};

    #[test]
    fn surjection_counts() {
        assert_eq!(enumerate_surjections(2, 1).unwrap().len(), 1);
        assert_eq!(enumerate_surjections(2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_surjections(3, 2).unwrap().len(), 6);
        assert!(enumerate_surjections(2, 3).is_err());
        assert_eq!(surjection_count(3, 2), 6);
        assert_eq!(surjection_count(5, 3), 150);
    }

    #[test]
    fn components_of_a_short_string() {
        let f1 = Surjection::from_images(2, &[1, 1, 2]).unwrap();
        let s = OmegaString::new(vec![f1, Surjection::collapse(2)]).unwrap();
        let (c1, p1) = s.ith_component(1).unwrap();
        assert_eq!(c1.maps(), &[Surjection::collapse(2)]);
        assert_eq!(p1, vec![0, 1]);
        let (c2, p2) = s.ith_component(2).unwrap();
        assert_eq!(c2.maps(), &[Surjection::identity(1)]);
        assert_eq!(p2, vec![2]);
        let single = OmegaString::new(vec![Surjection::collapse(3)]).unwrap();
        let (c, p) = single.ith_component(2).unwrap();
        assert!(c.is_empty());
        assert_eq!(p, vec![1]);
    }

    #[test]
    fn first_boundary_on_two_slots() {
        let a = GradedAlgebra::validated(&dual_numbers(), None).unwrap();
        let m = Bimodule::new(&a, Coefficients::Algebra);
        let g = GammaGenerator::new(OmegaString::new(vec![Surjection::collapse(2)]).unwrap(), vec![1, 0, 0]).unwrap();
        // d_0 = (x . 1) (x) 1, d_1 = x (x) (1 . 1) + 1 (x) (x . 1)
        let mut terms: Vec<_> = gamma_faces(&m, &g).unwrap();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let q = a.field();
        let expected = vec![
            (GammaGenerator::new(OmegaString::empty(), vec![0, 1]).unwrap(), q.from_i64(-1)),
            (GammaGenerator::new(OmegaString::empty(), vec![1, 0]).unwrap(), q.one()),
            (GammaGenerator::new(OmegaString::empty(), vec![1, 0]).unwrap(), q.from_i64(-1)),
        ];
        let mut expected = expected;
        expected.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(terms, expected);
    }

    #[test]
    fn pruning_example() {
        let f1 = Surjection::from_images(2, &[1, 1, 2]).unwrap();
        let s = OmegaString::new(vec![f1, Surjection::collapse(2)]).unwrap();
        let g = GammaGenerator::new(s, vec![1, 0, 1, 0]).unwrap();
        let p = prune(&g).unwrap();
        assert_eq!(p.string.maps(), &[Surjection::identity(2), Surjection::collapse(2)]);
        assert_eq!(p.word, vec![1, 1, 0]);
        let t = GammaGenerator::new(OmegaString::new(vec![Surjection::collapse(2)]).unwrap(), vec![0, 0, 1]).unwrap();
        assert_eq!(prune(&t), None);
    }

    #[test]
    fn dual_numbers_degree_zero() {
        let a = GradedAlgebra::validated(&dual_numbers(), None).unwrap();
        let k = Bimodule::new(&a, Coefficients::Ground);
        let h = gamma_homology(k, Variant::I, 2, 2, None, None).unwrap();
        assert_eq!(h[1].dim(0), 1);
        assert_eq!(h[2].dim(1), 1);
    }
}
