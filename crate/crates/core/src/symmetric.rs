//! Permutations, the group algebra `k[S_n]`, shuffles and the Eulerian
//! idempotents.
//!
//! A permutation `s` acts on words by moving the letter in position `i` to
//! position `s(i)`, so `(s t) . w = s . (t . w)` with `s t = s o t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::basis::IndexedBasis;
use crate::linalg::{Field, Scalar, SparseMatrix, SparseVec};

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!(n < 256, "permutations act on at most 255 points");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From the 1-based image sequence `(s(1), ..., s(n))`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        if n >= 256 {
            return Err(Error::InvalidArgument("permutations act on at most 255 points".into()));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Permutation {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation { images }
    }

    /// The adjacent transposition `theta_i = (i i+1)` in `S_n`.
    pub fn transposition(i: usize, n: usize) -> Result<Permutation> {
        if i == 0 || i >= n {
            return Err(Error::InvalidArgument(format!("theta_{i} is not defined in S_{n}")));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `s(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 0-based images.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::InvalidArgument(format!(
                "cannot compose permutations of {} and {} points",
                self.n(),
                other.n()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> i64 {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if !seen[start] {
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i] as usize;
                }
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `s(1) < ... < s(i)` and `s(i+1) < ... < s(n)`.
    pub fn is_shuffle(&self, i: usize) -> bool {
        let (a, b) = self.images.split_at(i.min(self.n()));
        a.windows(2).all(|w| w[0] < w[1]) && b.windows(2).all(|w| w[0] < w[1])
    }

    /// The word with letter `i` moved to position `s(i)`.
    pub fn act<T: Clone>(&self, word: &[T]) -> Vec<T> {
        assert_eq!(word.len(), self.n(), "word length differs from permutation size");
        let mut out = word.to_vec();
        for (i, &v) in self.images.iter().enumerate() {
            out[v as usize] = word[i].clone();
        }
        out
    }

    /// All of `S_n` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { images: cur.clone() });
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// A finitely supported combination of permutations of a fixed `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    field: Field,
    terms: BTreeMap<Permutation, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize, field: Field) -> GroupAlgebraElement {
        GroupAlgebraElement {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: Field) -> GroupAlgebraElement {
        GroupAlgebraElement::basis(Permutation::identity(n), field)
    }

    pub fn basis(s: Permutation, field: Field) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(s.n(), field);
        e.terms.insert(s, field.one());
        e
    }

    /// Sums repeated permutations and drops zero coefficients.
    pub fn from_terms(
        n: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Permutation, Scalar)>,
    ) -> Result<GroupAlgebraElement> {
        let mut e = GroupAlgebraElement::zero(n, field);
        for (s, c) in terms {
            if s.n() != n {
                return Err(Error::InvalidArgument(format!("permutation of {} points in k[S_{n}]", s.n())));
            }
            if c.field() != field {
                return Err(Error::InvalidArgument("coefficient over the wrong field".into()));
            }
            e.add_term(s, &c);
        }
        Ok(e)
    }

    fn add_term(&mut self, s: Permutation, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c.clone());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Permutation) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &GroupAlgebraElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "elements of k[S_{}] and k[S_{}]",
                self.n, other.n
            )));
        }
        if self.field != other.field {
            return Err(Error::InvalidArgument("group algebra elements over different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.add(&other.scaled(&-self.field.one()))
    }

    pub fn scaled(&self, c: &Scalar) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.n, self.field);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(s, a)| (s.clone(), a * c)).collect();
        out
    }

    /// The convolution product `self * other`.
    pub fn multiply(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check_compatible(other)?;
        if self.field == Field::Rationals {
            if let Some(p) = self.multiply_integral(other) {
                return Ok(p);
            }
        }
        let mut acc: HashMap<Permutation, Scalar> = HashMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let c = a * b;
                let e = acc.entry(s.compose_unchecked(t)).or_insert_with(|| self.field.zero());
                *e += &c;
            }
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: HashMap<Permutation, Scalar>) -> GroupAlgebraElement {
        GroupAlgebraElement {
            n: self.n,
            field: self.field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Clears denominators and multiplies with checked `i128` arithmetic;
    /// `None` on overflow.
    fn multiply_integral(&self, other: &GroupAlgebraElement) -> Option<GroupAlgebraElement> {
        let (a, da) = self.integral_parts()?;
        let (b, db) = other.integral_parts()?;
        let mut acc: HashMap<Permutation, i128> = HashMap::new();
        for (s, x) in &a {
            for (t, y) in &b {
                let c = x.checked_mul(*y)?;
                let e = acc.entry(s.compose_unchecked(t)).or_insert(0);
                *e = e.checked_add(c)?;
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(s, c)| (s, Scalar::rational(BigRational::new(BigInt::from(c), den.clone()))))
            .collect();
        Some(GroupAlgebraElement {
            n: self.n,
            field: self.field,
            terms,
        })
    }

    fn integral_parts(&self) -> Option<(Vec<(&Permutation, i128)>, BigInt)> {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.as_rational()?.denom());
        }
        den.to_i128()?;
        let nums = self
            .terms
            .iter()
            .map(|(s, c)| {
                let q = c.as_rational()?;
                let v = q.numer() * (&den / q.denom());
                Some((s, v.to_i128()?))
            })
            .collect::<Option<Vec<_>>>()?;
        Some((nums, den))
    }

    /// Maps rational coefficients into another field.
    pub fn to_field(&self, field: Field) -> Result<GroupAlgebraElement> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = GroupAlgebraElement::zero(self.n, field);
        for (s, c) in &self.terms {
            let q = c.as_rational().ok_or_else(|| {
                Error::InvalidField("only rational elements can be moved to another field".into())
            })?;
            out.add_term(s.clone(), &field.from_rational(&q)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{s:?}")?;
        }
        Ok(())
    }
}

/// `sh_{i,n-i}`, the signed sum of the `i`-shuffles in `S_n`.
pub fn shuffle_element(i: usize, n: usize, field: Field) -> Result<GroupAlgebraElement> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!("sh_{{{i},{}}} needs 1 <= i <= n-1", n as i64 - i as i64)));
    }
    let mut e = GroupAlgebraElement::zero(n, field);
    // an i-shuffle is determined by the set {s(1) < ... < s(i)}
    let mut chosen: Vec<usize> = (0..i).collect();
    loop {
        let mut images = Vec::with_capacity(n);
        images.extend(chosen.iter().map(|&v| v as u8));
        images.extend((0..n).filter(|v| !chosen.contains(v)).map(|v| v as u8));
        let s = Permutation::from_zero_based(images);
        let c = field.from_i64(s.sign());
        e.add_term(s, &c);
        if !next_combination(&mut chosen, n) {
            break;
        }
    }
    Ok(e)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `sh_n = sum_{i=1}^{n-1} sh_{i,n-i}`.
pub fn total_shuffle(n: usize, field: Field) -> Result<GroupAlgebraElement> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("the total shuffle needs n >= 2, got {n}")));
    }
    let mut e = GroupAlgebraElement::zero(n, field);
    for i in 1..n {
        e = e.add(&shuffle_element(i, n, field)?)?;
    }
    Ok(e)
}

/// The eigenvalue `2^i - 2` of `sh_n` on the `i`-th Eulerian summand.
pub fn shuffle_eigenvalue(i: usize) -> BigInt {
    (BigInt::one() << i) - 2
}

/// `prod_{j=1}^{n} (sh_n - (2^j - 2) e)`, which vanishes exactly when the
/// eigenvalues used by [`eulerian_idempotents`] are the right ones.
pub fn shuffle_eigenvalue_polynomial(n: usize, field: Field) -> Result<GroupAlgebraElement> {
    let sh = total_shuffle(n, Field::Rationals)?;
    let e = GroupAlgebraElement::identity(n, Field::Rationals);
    let mut acc = e.clone();
    for j in 1..=n {
        let lam = Scalar::rational(BigRational::from_integer(shuffle_eigenvalue(j)));
        acc = acc.multiply(&sh.sub(&e.scaled(&lam))?)?;
    }
    acc.to_field(field)
}

/// `e_n^(1), ..., e_n^(n)` by Lagrange interpolation in `sh_n`:
/// `e^(i) = prod_{j != i} (sh_n - l_j) / (l_i - l_j)` with `l_j = 2^j - 2`.
///
/// Built over the rationals and reduced into `field`; over `F_p` this needs
/// `p > n`, and also fails if some coefficient has a denominator divisible by `p`.
pub fn eulerian_idempotents(n: usize, field: Field) -> Result<Vec<GroupAlgebraElement>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Eulerian idempotents need n >= 1".into()));
    }
    if let Field::Prime(p) = field {
        if p as usize <= n {
            return Err(Error::InvalidField(format!(
                "Eulerian idempotents in degree {n} need characteristic 0 or p > {n}, got {p}"
            )));
        }
    }
    if n == 1 {
        return Ok(vec![GroupAlgebraElement::identity(1, field)]);
    }
    let q = Field::Rationals;
    let sh = total_shuffle(n, q)?;
    let mut powers = vec![GroupAlgebraElement::identity(n, q)];
    for k in 1..n {
        powers.push(powers[k - 1].multiply(&sh)?);
    }
    let lam: Vec<BigRational> = (1..=n).map(|j| BigRational::from_integer(shuffle_eigenvalue(j))).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // coefficients of prod_{j != i} (t - l_j) / (l_i - l_j), lowest first
        let mut poly = vec![BigRational::one()];
        for j in (0..n).filter(|&j| j != i) {
            let denom = &lam[i] - &lam[j];
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c / &denom;
                next[k] -= c * &lam[j] / &denom;
            }
            poly = next;
        }
        let mut acc: BTreeMap<Permutation, BigRational> = BTreeMap::new();
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (s, a) in powers[k].terms() {
                let a = a.as_rational().expect("rational");
                *acc.entry(s.clone()).or_insert_with(BigRational::zero) += a * c;
            }
        }
        let e = GroupAlgebraElement::from_terms(
            n,
            q,
            acc.into_iter().map(|(s, c)| (s, Scalar::rational(c))),
        )?;
        out.push(e.to_field(field)?);
    }
    Ok(out)
}

/// Outcome of checking the defining identities of an idempotent family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentCertificate {
    pub n: usize,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sums_to_identity: bool,
    /// First failing product as `(i, j)`, 1-based.
    pub witness: Option<(usize, usize)>,
}

impl IdempotentCertificate {
    pub fn passed(&self) -> bool {
        self.idempotent && self.orthogonal && self.sums_to_identity
    }
}

/// Checks `e_i e_j = delta_ij e_i` for all pairs and `sum e_i = 1`.
pub fn certify_idempotents(family: &[GroupAlgebraElement]) -> Result<IdempotentCertificate> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty idempotent family".into()))?;
    let (n, field) = (first.n(), first.field());
    let mut cert = IdempotentCertificate {
        n,
        idempotent: true,
        orthogonal: true,
        sums_to_identity: true,
        witness: None,
    };
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            let prod = a.multiply(b)?;
            let ok = if i == j { prod == *a } else { prod.is_zero() };
            if !ok {
                if i == j {
                    cert.idempotent = false;
                } else {
                    cert.orthogonal = false;
                }
                cert.witness.get_or_insert((i + 1, j + 1));
            }
        }
    }
    let mut sum = GroupAlgebraElement::zero(n, field);
    for e in family {
        sum = sum.add(e)?;
    }
    cert.sums_to_identity = sum == GroupAlgebraElement::identity(n, field);
    Ok(cert)
}

/// Matrix of the action of `a` on a space whose basis elements are words,
/// permuting the letters in `positions` and fixing the rest.
pub fn act_on_chain<K>(
    a: &GroupAlgebraElement,
    basis: &IndexedBasis<K>,
    positions: Range<usize>,
) -> Result<SparseMatrix>
where
    K: AsRef<[u32]> + From<Vec<u32>> + Clone + Eq + Hash,
{
    if positions.len() != a.n() {
        return Err(Error::InvalidArgument(format!(
            "k[S_{}] cannot act on {} positions",
            a.n(),
            positions.len()
        )));
    }
    let field = a.field();
    let mut columns = Vec::with_capacity(basis.len());
    for key in basis {
        let word = key.as_ref();
        if word.len() < positions.end {
            return Err(Error::InvalidArgument(format!(
                "basis word of length {} lacks positions {positions:?}",
                word.len()
            )));
        }
        let block = &word[positions.clone()];
        let mut terms = Vec::with_capacity(a.support_size());
        for (s, c) in a.terms() {
            let mut image = word.to_vec();
            image.splice(positions.clone(), s.act(block));
            let j = basis.index_of(&K::from(image)).ok_or_else(|| {
                Error::InvalidArgument("permuted word lies outside the basis".into())
            })?;
            terms.push((j, c.clone()));
        }
        columns.push(SparseVec::from_terms(terms));
    }
    SparseMatrix::from_columns(basis.len(), columns, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn theta(i: usize, n: usize) -> Permutation {
        Permutation::transposition(i, n).unwrap()
    }

    #[test]
    fn group_relations() {
        let t1 = theta(1, 2);
        assert!(t1.compose(&t1).unwrap().is_identity());
        assert_eq!(t1.sign(), -1);
        let c = theta(1, 3).compose(&theta(2, 3)).unwrap();
        let c3 = c.compose(&c).unwrap().compose(&c).unwrap();
        assert!(c3.is_identity());
        assert!(theta(1, 2).compose(&theta(1, 3)).is_err());
    }

    #[test]
    fn action_is_a_left_action() {
        let s = Permutation::from_images(&[2, 3, 1]).unwrap();
        let t = Permutation::from_images(&[1, 3, 2]).unwrap();
        let w = ['a', 'b', 'c'];
        assert_eq!(s.act(&w), vec!['c', 'a', 'b']);
        assert_eq!(s.compose(&t).unwrap().act(&w), s.act(&t.act(&w)));
    }

    #[test]
    fn small_shuffles() {
        let sh = shuffle_element(1, 2, q()).unwrap();
        let expected = GroupAlgebraElement::identity(2, q())
            .sub(&GroupAlgebraElement::basis(theta(1, 2), q()))
            .unwrap();
        assert_eq!(sh, expected);
        assert_eq!(total_shuffle(2, q()).unwrap(), expected);
        assert_eq!(shuffle_element(1, 3, q()).unwrap().support_size(), 3);
        assert_eq!(shuffle_element(2, 3, q()).unwrap().support_size(), 3);
        assert!(shuffle_element(0, 3, q()).is_err());
        assert!(shuffle_element(3, 3, q()).is_err());
        assert!(total_shuffle(1, q()).is_err());
    }

    #[test]
    fn products_in_s2() {
        let e = GroupAlgebraElement::identity(2, q());
        let t = GroupAlgebraElement::basis(theta(1, 2), q());
        let minus = e.sub(&t).unwrap();
        let plus = e.add(&t).unwrap();
        assert!(minus.multiply(&plus).unwrap().is_zero());
        assert_eq!(minus.multiply(&minus).unwrap(), minus.scaled(&q().from_i64(2)));
        assert_eq!(minus.multiply(&e).unwrap(), minus);
    }

    #[test]
    fn eulerian_in_low_degree() {
        let one = eulerian_idempotents(1, q()).unwrap();
        assert_eq!(one, vec![GroupAlgebraElement::identity(1, q())]);
        let two = eulerian_idempotents(2, q()).unwrap();
        let half = q().parse_scalar("1/2").unwrap();
        let e = GroupAlgebraElement::identity(2, q());
        let t = GroupAlgebraElement::basis(theta(1, 2), q());
        assert_eq!(two[0], e.add(&t).unwrap().scaled(&half));
        assert_eq!(two[1], e.sub(&t).unwrap().scaled(&half));
        for n in 1..=4 {
            assert!(certify_idempotents(&eulerian_idempotents(n, q()).unwrap()).unwrap().passed());
        }
    }

    #[test]
    fn eulerian_over_prime_fields() {
        assert!(eulerian_idempotents(3, Field::Prime(3)).is_err());
        let f = Field::prime(5).unwrap();
        let fam = eulerian_idempotents(4, f).unwrap();
        assert!(certify_idempotents(&fam).unwrap().passed());
    }

    #[test]
    fn acting_on_words() {
        let basis = IndexedBasis::from_vec(vec![vec![0u32, 1, 2], vec![0, 2, 1]]).unwrap();
        let id = GroupAlgebraElement::identity(2, q());
        assert_eq!(act_on_chain(&id, &basis, 1..3).unwrap(), SparseMatrix::identity(2, q()));
        let t = GroupAlgebraElement::basis(theta(1, 2), q());
        let m = act_on_chain(&t, &basis, 1..3).unwrap();
        assert_eq!(m, SparseMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]], q()));
        let e1 = &eulerian_idempotents(2, q()).unwrap()[0];
        let m = act_on_chain(e1, &basis, 1..3).unwrap();
        let half = q().parse_scalar("1/2").unwrap();
        assert_eq!(m.get(0, 0), Some(&half));
        assert_eq!(m.get(1, 0), Some(&half));
        assert!(act_on_chain(&id, &basis, 0..3).is_err());
    }
}
