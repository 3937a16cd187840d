//! Weight-graded augmented commutative algebras given by structure constants.
//!
//! Basis letters: `0` is the unit, `1..=d` the ideal basis `b_1..b_d`.
//! Tensors are words of letters, and a letter is trivial iff it is `0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub type Letter = u32;

/// A linear combination of letters, sorted, without zero coefficients.
pub type Combination = Vec<(Letter, Scalar)>;

/// Serializable description of an algebra: the file format and the presets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    #[serde(default = "default_field")]
    pub field: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub symbol: String,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub result: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    /// An ideal basis symbol, or `"1"` for the unit.
    pub symbol: String,
    pub coefficient: CoefficientSpec,
}

/// `3`, `-2` or `"1/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Integer(i64),
    Text(String),
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Integer(v) => write!(f, "{v}"),
            CoefficientSpec::Text(s) => write!(f, "{s}"),
        }
    }
}

impl AlgebraSpec {
    /// Parses TOML or JSON, chosen by extension (`.json` is JSON, anything else TOML).
    pub fn load(path: &Path) -> Result<AlgebraSpec> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            AlgebraSpec::from_json(&text)
        } else {
            AlgebraSpec::from_toml(&text)
        }
    }

    pub fn from_toml(text: &str) -> Result<AlgebraSpec> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<AlgebraSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("algebra specs serialize")
    }
}

/// `k[x]/(x^2)` with `x` in weight 1.
pub fn dual_numbers() -> AlgebraSpec {
    truncated_polynomial(2).with_name("dual-numbers")
}

/// `k[x]/(x^m)` with basis `x, x2, ..., x{m-1}` in weights `1..m-1`.
pub fn truncated_polynomial(m: u32) -> AlgebraSpec {
    assert!(m >= 2, "k[x]/(x^m) needs m >= 2");
    let symbol = |a: u32| if a == 1 { "x".to_string() } else { format!("x{a}") };
    let generators = (1..m).map(|a| GeneratorSpec { symbol: symbol(a), weight: a }).collect();
    let mut products = Vec::new();
    for a in 1..m {
        for b in 1..m {
            if a + b < m {
                products.push(ProductSpec {
                    left: symbol(a),
                    right: symbol(b),
                    result: vec![TermSpec {
                        symbol: symbol(a + b),
                        coefficient: CoefficientSpec::Integer(1),
                    }],
                });
            }
        }
    }
    AlgebraSpec {
        name: format!("trunc{m}"),
        field: default_field(),
        generators,
        products,
    }
}

/// `k[x,y]/(x^2, xy, y^2)` with `x`, `y` in weight 1.
pub fn xy_square_zero() -> AlgebraSpec {
    AlgebraSpec {
        name: "xy-square-zero".into(),
        field: default_field(),
        generators: vec![
            GeneratorSpec { symbol: "x".into(), weight: 1 },
            GeneratorSpec { symbol: "y".into(), weight: 1 },
        ],
        products: Vec::new(),
    }
}

impl AlgebraSpec {
    fn with_name(mut self, name: &str) -> AlgebraSpec {
        self.name = name.into();
        self
    }
}

pub const PRESET_NAMES: [&str; 3] = ["dual-numbers", "trunc<m>", "xy-square-zero"];

/// `dual-numbers`, `trunc<m>` for `m >= 2`, or `xy-square-zero`.
pub fn preset(name: &str) -> Result<AlgebraSpec> {
    match name {
        "dual-numbers" => Ok(dual_numbers()),
        "xy-square-zero" => Ok(xy_square_zero()),
        _ => match name.strip_prefix("trunc").and_then(|m| m.parse::<u32>().ok()) {
            Some(m) if (2..=64).contains(&m) => Ok(truncated_polynomial(m)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown preset {name:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            ))),
        },
    }
}

/// A finite-dimensional augmented commutative algebra `A = k + I` with a
/// positive weight grading on `I`. Not validated on construction; see
/// [`GradedAlgebra::validate`].
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    name: String,
    field: Field,
    symbols: Vec<String>,
    /// `weights[0] = 0` for the unit.
    weights: Vec<u32>,
    /// `table[i][j]` is the product of letters `i` and `j`.
    table: Vec<Vec<Combination>>,
}

impl GradedAlgebra {
    /// Builds the structure constants from a description, in `field` if given
    /// and otherwise in the field the description names.
    pub fn from_spec(spec: &AlgebraSpec, field: Option<Field>) -> Result<GradedAlgebra> {
        let field = match field {
            Some(f) => f,
            None => spec.field.parse()?,
        };
        let d = spec.generators.len();
        if d >= u32::MAX as usize {
            return Err(Error::InvalidAlgebra("too many generators".into()));
        }
        let mut index: HashMap<&str, Letter> = HashMap::new();
        let mut symbols = vec!["1".to_string()];
        let mut weights = vec![0];
        for (k, g) in spec.generators.iter().enumerate() {
            if g.symbol == "1" || g.symbol.trim().is_empty() {
                return Err(Error::InvalidAlgebra(format!("{:?} cannot name an ideal basis element", g.symbol)));
            }
            if index.insert(&g.symbol, (k + 1) as Letter).is_some() {
                return Err(Error::InvalidAlgebra(format!("symbol {:?} is declared twice", g.symbol)));
            }
            symbols.push(g.symbol.clone());
            weights.push(g.weight);
        }
        let lookup = |s: &str| -> Result<Letter> {
            if s == "1" {
                return Ok(0);
            }
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown symbol {s:?}")))
        };
        let mut table = vec![vec![Vec::new(); d + 1]; d + 1];
        for (j, row) in table.iter_mut().enumerate() {
            row[0] = vec![(j as Letter, field.one())];
        }
        for (j, entry) in table[0].iter_mut().enumerate() {
            *entry = vec![(j as Letter, field.one())];
        }
        let mut seen = vec![vec![false; d + 1]; d + 1];
        for p in &spec.products {
            let (i, j) = (lookup(&p.left)?, lookup(&p.right)?);
            if i == 0 || j == 0 {
                return Err(Error::InvalidAlgebra(format!(
                    "products with the unit are fixed; remove {} * {}",
                    p.left, p.right
                )));
            }
            let (i, j) = (i as usize, j as usize);
            if seen[i][j] {
                return Err(Error::InvalidAlgebra(format!("product {} * {} is given twice", p.left, p.right)));
            }
            seen[i][j] = true;
            let mut terms = BTreeMap::new();
            for t in &p.result {
                let l = lookup(&t.symbol)?;
                let c = field.parse_scalar(&t.coefficient.to_string())?;
                let e = terms.entry(l).or_insert_with(|| field.zero());
                *e += &c;
            }
            table[i][j] = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(GradedAlgebra {
            name: spec.name.clone(),
            field,
            symbols,
            weights,
            table,
        })
    }

    /// Builds and validates; the first violated axiom is the error.
    pub fn validated(spec: &AlgebraSpec, field: Option<Field>) -> Result<GradedAlgebra> {
        let a = GradedAlgebra::from_spec(spec, field)?;
        let report = a.validate();
        match report.violation {
            None => Ok(a),
            Some(v) => Err(Error::InvalidAlgebra(v.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the augmentation ideal.
    pub fn ideal_dim(&self) -> usize {
        self.symbols.len() - 1
    }

    /// Letters of the ideal basis, `1..=d`.
    pub fn ideal_letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.ideal_dim() as Letter
    }

    pub fn symbol(&self, l: Letter) -> &str {
        &self.symbols[l as usize]
    }

    pub fn weight(&self, l: Letter) -> u32 {
        self.weights[l as usize]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn min_ideal_weight(&self) -> Option<u32> {
        self.weights[1..].iter().copied().min()
    }

    /// `dim A_w`, counting the unit in weight 0.
    pub fn graded_dim(&self, w: u32) -> usize {
        self.weights.iter().filter(|&&x| x == w).count()
    }

    pub fn word_weight(&self, word: &[Letter]) -> u32 {
        word.iter().map(|&l| self.weights[l as usize]).sum()
    }

    /// The product of two letters.
    pub fn mul_letters(&self, i: Letter, j: Letter) -> &Combination {
        &self.table[i as usize][j as usize]
    }

    /// The ordered product `l_1 l_2 ... l_r`; the empty product is the unit.
    pub fn product(&self, letters: &[Letter]) -> Combination {
        let mut acc: Combination = vec![(0, self.field.one())];
        for &l in letters {
            if acc.is_empty() {
                break;
            }
            acc = self.mul_combination_letter(&acc, l);
        }
        acc
    }

    pub fn mul_combination_letter(&self, a: &Combination, l: Letter) -> Combination {
        let mut out: BTreeMap<Letter, Scalar> = BTreeMap::new();
        for (i, c) in a {
            for (k, d) in self.mul_letters(*i, l) {
                let e = out.entry(*k).or_insert_with(|| self.field.zero());
                *e += &(c * d);
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (Letter, Scalar)>) -> AlgebraElement {
        let mut coeffs = vec![self.field.zero(); self.ideal_dim() + 1];
        for (l, c) in terms {
            coeffs[l as usize] += &c;
        }
        AlgebraElement { coeffs }
    }

    pub fn unit(&self) -> AlgebraElement {
        self.element([(0, self.field.one())])
    }

    pub fn letter(&self, l: Letter) -> AlgebraElement {
        self.element([(l, self.field.one())])
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.element([]);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mul_letters(i as Letter, j as Letter) {
                    out.coeffs[*k as usize] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Checks commutativity, associativity, that the augmentation is
    /// multiplicative and that products respect the weights.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            algebra: self.name.clone(),
            field: self.field.to_string(),
            ideal_dim: self.ideal_dim(),
            violation: self.first_violation(),
        }
    }

    fn first_violation(&self) -> Option<Violation> {
        let d = self.ideal_dim() as Letter;
        let name = |l: Letter| self.symbol(l).to_string();
        for i in 1..=d {
            if self.weight(i) == 0 {
                return Some(Violation {
                    axiom: Axiom::Grading,
                    witnesses: vec![name(i)],
                    detail: "ideal basis elements need positive weight".into(),
                });
            }
        }
        for i in 1..=d {
            for j in i..=d {
                if self.mul_letters(i, j) != self.mul_letters(j, i) {
                    return Some(Violation {
                        axiom: Axiom::Commutativity,
                        witnesses: vec![name(i), name(j)],
                        detail: format!("{} * {} differs from {} * {}", name(i), name(j), name(j), name(i)),
                    });
                }
            }
        }
        for i in 1..=d {
            for j in 1..=d {
                let prod = self.mul_letters(i, j);
                if prod.iter().any(|(k, _)| *k == 0) {
                    return Some(Violation {
                        axiom: Axiom::Augmentation,
                        witnesses: vec![name(i), name(j)],
                        detail: "a product of ideal elements has a nonzero scalar part".into(),
                    });
                }
                let w = self.weight(i) + self.weight(j);
                if let Some((k, _)) = prod.iter().find(|(k, _)| self.weight(*k) != w) {
                    return Some(Violation {
                        axiom: Axiom::Grading,
                        witnesses: vec![name(i), name(j)],
                        detail: format!("{} has weight {}, expected {w}", name(*k), self.weight(*k)),
                    });
                }
            }
        }
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    let left = self.mul_combination_letter(self.mul_letters(i, j), k);
                    let jk = self.element(self.mul_letters(j, k).iter().cloned());
                    let right = self.multiply(&self.letter(i), &jk);
                    if self.element(left) != right {
                        return Some(Violation {
                            axiom: Axiom::Associativity,
                            witnesses: vec![name(i), name(j), name(k)],
                            detail: "(ab)c differs from a(bc)".into(),
                        });
                    }
                }
            }
        }
        None
    }
}

/// An element `lambda + y` with `y` in the augmentation ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    /// `coeffs[0]` is the scalar part.
    coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn scalar_part(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn coefficient(&self, l: Letter) -> &Scalar {
        &self.coeffs[l as usize]
    }

    /// `(y, lambda)` with `y` in the ideal and `self = y + lambda 1`.
    pub fn decompose(&self) -> (AlgebraElement, Scalar) {
        let mut y = self.clone();
        let field = self.coeffs[0].field();
        let lambda = std::mem::replace(&mut y.coeffs[0], field.zero());
        (y, lambda)
    }

    /// `y + lambda 1`.
    pub fn reassemble(y: &AlgebraElement, lambda: &Scalar) -> AlgebraElement {
        let mut a = y.clone();
        a.coeffs[0] += lambda;
        a
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn terms(&self) -> Combination {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l as Letter, c.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Commutativity,
    Associativity,
    Augmentation,
    Grading,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at ({}): {}", self.axiom, self.witnesses.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub field: String,
    pub ideal_dim: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// The two coefficient bimodules: `k` through the augmentation, or `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "k")]
    Ground,
    #[serde(rename = "A")]
    Algebra,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Ground => write!(f, "k"),
            Coefficients::Algebra => write!(f, "A"),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Coefficients> {
        match s {
            "k" => Ok(Coefficients::Ground),
            "A" => Ok(Coefficients::Algebra),
            _ => Err(Error::InvalidArgument(format!("coefficients must be k or A, got {s:?}"))),
        }
    }
}

/// A symmetric bimodule over `alg`; module letters share the algebra's
/// numbering, and `k` has the single letter `0`.
#[derive(Clone, Copy, Debug)]
pub struct Bimodule<'a> {
    alg: &'a GradedAlgebra,
    kind: Coefficients,
}

impl<'a> Bimodule<'a> {
    pub fn new(alg: &'a GradedAlgebra, kind: Coefficients) -> Bimodule<'a> {
        Bimodule { alg, kind }
    }

    pub fn kind(&self) -> Coefficients {
        self.kind
    }

    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.alg
    }

    pub fn letters(&self) -> Vec<Letter> {
        match self.kind {
            Coefficients::Ground => vec![0],
            Coefficients::Algebra => (0..=self.alg.ideal_dim() as Letter).collect(),
        }
    }

    pub fn weight(&self, m: Letter) -> u32 {
        self.alg.weight(m)
    }

    /// `a m` for letters; equal to `m a`.
    pub fn act(&self, a: Letter, m: Letter) -> Combination {
        match self.kind {
            Coefficients::Ground => {
                if a == 0 {
                    vec![(m, self.alg.field().one())]
                } else {
                    Vec::new()
                }
            }
            Coefficients::Algebra => self.alg.mul_letters(a, m).clone(),
        }
    }

    /// `(a_1 ... a_r) m`.
    pub fn act_product(&self, letters: &[Letter], m: Letter) -> Combination {
        match self.kind {
            Coefficients::Ground => {
                if letters.iter().all(|&l| l == 0) {
                    vec![(m, self.alg.field().one())]
                } else {
                    Vec::new()
                }
            }
            Coefficients::Algebra => {
                let mut acc = vec![(m, self.alg.field().one())];
                for &l in letters {
                    if acc.is_empty() {
                        break;
                    }
                    acc = self.alg.mul_combination_letter(&acc, l);
                }
                acc
            }
        }
    }
}

/// All words obtained by choosing one term from each factor, with the
/// product of the chosen coefficients.
pub fn expand_tensor(field: Field, factors: &[Combination]) -> Vec<(Vec<Letter>, Scalar)> {
    let mut out: Vec<(Vec<Letter>, Scalar)> = vec![(Vec::with_capacity(factors.len()), field.one())];
    for f in factors {
        if f.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(out.len() * f.len());
        for (w, c) in &out {
            for (l, a) in f {
                let mut w2 = w.clone();
                w2.push(*l);
                next.push((w2, c * a));
            }
        }
        out = next;
    }
    out
}

/// All words `l_1 ... l_r` with `l_k` drawn from `alphabets[k]` and total
/// weight `w`, in lexicographic order. Fails once more than `limit` words
/// would be produced.
pub fn words_of_weight(
    alg: &GradedAlgebra,
    alphabets: &[&[Letter]],
    w: u32,
    limit: Option<usize>,
) -> Result<Vec<Vec<Letter>>> {
    // min_rest[k]: least weight the positions k.. can reach
    let r = alphabets.len();
    let mut min_rest = vec![0u32; r + 1];
    for k in (0..r).rev() {
        let m = alphabets[k].iter().map(|&l| alg.weight(l)).min();
        match m {
            Some(m) => min_rest[k] = min_rest[k + 1] + m,
            None => return Ok(Vec::new()),
        }
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(r);
    fn go(
        alg: &GradedAlgebra,
        alphabets: &[&[Letter]],
        min_rest: &[u32],
        left: u32,
        word: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
        limit: Option<usize>,
    ) -> Result<()> {
        let k = word.len();
        if k == alphabets.len() {
            if left == 0 {
                if limit.is_some_and(|l| out.len() >= l) {
                    return Err(Error::BasisTooLarge {
                        size: out.len() + 1,
                        limit: limit.unwrap_or(0),
                        context: "tensor words".into(),
                    });
                }
                out.push(word.clone());
            }
            return Ok(());
        }
        for &l in alphabets[k] {
            let wl = alg.weight(l);
            if wl + min_rest[k + 1] <= left {
                word.push(l);
                go(alg, alphabets, min_rest, left - wl, word, out, limit)?;
                word.pop();
            }
        }
        Ok(())
    }
    if min_rest[0] <= w {
        go(alg, alphabets, &min_rest, w, &mut word, &mut out, limit)?;
    }
    Ok(out)
}

/// An elementary tensor `a_1 (x) ... (x) a_p (x) m` of basis letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicTensor {
    pub slots: Vec<Letter>,
    pub module: Letter,
}

impl BasicTensor {
    pub fn new(slots: Vec<Letter>, module: Letter) -> BasicTensor {
        BasicTensor { slots, module }
    }

    pub fn is_trivial(&self, i: usize) -> bool {
        self.slots[i] == 0
    }

    /// Positions (0-based) of the non-trivial slots.
    pub fn nontrivial_positions(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&i| self.slots[i] != 0).collect()
    }
}

/// A based map `[p] -> [q]`: `images[i-1] = f(i)`, with `f(0) = 0` implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaMorphism {
    target: usize,
    images: Vec<usize>,
}

impl GammaMorphism {
    pub fn new(q: usize, images: Vec<usize>) -> Result<GammaMorphism> {
        if let Some(&v) = images.iter().find(|&&v| v > q) {
            return Err(Error::InvalidArgument(format!("image {v} outside [{q}]")));
        }
        Ok(GammaMorphism { target: q, images })
    }

    pub fn identity(p: usize) -> GammaMorphism {
        GammaMorphism {
            target: p,
            images: (1..=p).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `f(i)` for `i` in `0..=p`.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &GammaMorphism) -> Result<GammaMorphism> {
        if other.target != self.source() {
            return Err(Error::InvalidArgument("based maps are not composable".into()));
        }
        Ok(GammaMorphism {
            target: self.target,
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }
}

/// The Loday functor on a basic tensor: slot `j` of the output is the product
/// of the slots in `f^{-1}(j)` (empty products are 1), and the slots in
/// `f^{-1}(0)` multiply the module slot.
pub fn loday_apply(
    f: &GammaMorphism,
    module: &Bimodule<'_>,
    t: &BasicTensor,
) -> Result<Vec<(BasicTensor, Scalar)>> {
    if t.slots.len() != f.source() {
        return Err(Error::InvalidArgument(format!(
            "tensor of length {} for a map out of [{}]",
            t.slots.len(),
            f.source()
        )));
    }
    let alg = module.algebra();
    let mut fibers: Vec<Vec<Letter>> = vec![Vec::new(); f.target() + 1];
    for (i, &l) in t.slots.iter().enumerate() {
        fibers[f.apply(i + 1)].push(l);
    }
    let mut factors: Vec<Combination> = fibers[1..].iter().map(|fib| alg.product(fib)).collect();
    factors.push(module.act_product(&fibers[0], t.module));
    let out = expand_tensor(alg.field(), &factors)
        .into_iter()
        .map(|(mut w, c)| {
            let m = w.pop().expect("module slot");
            (BasicTensor::new(w, m), c)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(spec: AlgebraSpec) -> GradedAlgebra {
        GradedAlgebra::validated(&spec, None).unwrap()
    }

    #[test]
    fn dual_numbers_multiply() {
        let a = alg(dual_numbers());
        let x = a.letter(1);
        assert_eq!(a.multiply(&x, &x), a.element([]));
        assert_eq!(a.multiply(&a.unit(), &x), x);
        let q = a.field();
        let e = a.element([(0, q.from_i64(3)), (1, q.from_i64(2))]);
        let (y, lambda) = e.decompose();
        assert_eq!(y, a.element([(1, q.from_i64(2))]));
        assert_eq!(lambda, q.from_i64(3));
        assert_eq!(AlgebraElement::reassemble(&y, &lambda), e);
        assert_eq!(a.unit().decompose(), (a.element([]), q.one()));
    }

    #[test]
    fn presets_validate() {
        for name in ["dual-numbers", "trunc3", "trunc5", "xy-square-zero"] {
            let a = GradedAlgebra::from_spec(&preset(name).unwrap(), None).unwrap();
            assert!(a.validate().is_valid(), "{name}");
        }
        let t3 = alg(truncated_polynomial(3));
        assert_eq!(t3.mul_letters(1, 1), &vec![(2, t3.field().one())]);
        assert!(t3.mul_letters(1, 2).is_empty());
        assert!(preset("trunc1").is_err());
        assert!(preset("nope").is_err());
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let mut spec = xy_square_zero();
        spec.generators.push(GeneratorSpec { symbol: "z".into(), weight: 2 });
        spec.products.push(ProductSpec {
            left: "x".into(),
            right: "y".into(),
            result: vec![TermSpec { symbol: "z".into(), coefficient: CoefficientSpec::Integer(1) }],
        });
        let a = GradedAlgebra::from_spec(&spec, None).unwrap();
        assert_eq!(a.validate().violation.unwrap().axiom, Axiom::Commutativity);
    }

    #[test]
    fn scalar_parts_and_weights_are_checked() {
        let mut spec = dual_numbers();
        spec.products.push(ProductSpec {
            left: "x".into(),
            right: "x".into(),
            result: vec![TermSpec { symbol: "1".into(), coefficient: CoefficientSpec::Integer(1) }],
        });
        let a = GradedAlgebra::from_spec(&spec, None).unwrap();
        assert_eq!(a.validate().violation.unwrap().axiom, Axiom::Augmentation);

        let mut spec = truncated_polynomial(3);
        spec.generators[1].weight = 3;
        let a = GradedAlgebra::from_spec(&spec, None).unwrap();
        assert_eq!(a.validate().violation.unwrap().axiom, Axiom::Grading);
    }

    #[test]
    fn loday_examples() {
        let a = alg(truncated_polynomial(3));
        let m = Bimodule::new(&a, Coefficients::Algebra);
        // f(1) = 1, f(2) = 0: a1 (x) a2 (x) m -> a1 (x) a2 m
        let f = GammaMorphism::new(1, vec![1, 0]).unwrap();
        let out = loday_apply(&f, &m, &BasicTensor::new(vec![1, 1], 0)).unwrap();
        assert_eq!(out, vec![(BasicTensor::new(vec![1], 1), a.field().one())]);
        // an empty fiber gives the unit
        let g = GammaMorphism::new(1, vec![0]).unwrap();
        let out = loday_apply(&g, &m, &BasicTensor::new(vec![1], 0)).unwrap();
        assert_eq!(out, vec![(BasicTensor::new(vec![0], 1), a.field().one())]);
        let id = GammaMorphism::identity(2);
        let t = BasicTensor::new(vec![2, 0], 1);
        assert_eq!(loday_apply(&id, &m, &t).unwrap(), vec![(t, a.field().one())]);
    }

    #[test]
    fn file_formats_round_trip() {
        let spec = truncated_polynomial(4);
        let back = AlgebraSpec::from_toml(&spec.to_toml()).unwrap();
        assert_eq!(back, spec);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(AlgebraSpec::from_json(&json).unwrap(), spec);
        let text = r#"
            name = "half"
            field = "Fp:7"
            [[generators]]
            symbol = "x"
            weight = 1
            [[generators]]
            symbol = "x2"
            weight = 2
            [[products]]
            left = "x"
            right = "x"
            result = [{ symbol = "x2", coefficient = "1/2" }]
        "#;
        let a = GradedAlgebra::validated(&AlgebraSpec::from_toml(text).unwrap(), None).unwrap();
        assert_eq!(a.field(), Field::Prime(7));
        assert_eq!(a.mul_letters(1, 1), &vec![(2, a.field().from_i64(4))]);
    }
}
