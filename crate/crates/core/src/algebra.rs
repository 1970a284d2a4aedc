//! The generic algebra on `S_n` with basis `T_w` and a single pair of
//! structure constants `(a, b)`:
//!
//! ```text
//! T_i T_w = T_{s_i w}               if l(s_i w) > l(w)
//! T_i T_w = a T_w + b T_{s_i w}     otherwise
//! ```
//!
//! and the mirrored rule for right multiplication by `T_i`. The presets are
//! the Nilcoxeter algebra `(0, 0)`, the 0-Hecke algebra `(1, 0)` and the
//! group algebra `(0, 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational, SparseVector};
use crate::perm::{check_generator, check_n, factorial, Permutation, Word};

/// Named specializations of the structure constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Nilcoxeter,
    ZeroHecke,
    GroupAlgebra,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Nilcoxeter => "nilcoxeter",
            Preset::ZeroHecke => "0-hecke",
            Preset::GroupAlgebra => "group",
        }
    }

    pub fn params(self) -> AlgebraParams {
        match self {
            Preset::Nilcoxeter => AlgebraParams::nilcoxeter(),
            Preset::ZeroHecke => AlgebraParams::zero_hecke(),
            Preset::GroupAlgebra => AlgebraParams::group_algebra(),
        }
    }

    pub const ALL: [Preset; 3] = [Preset::Nilcoxeter, Preset::ZeroHecke, Preset::GroupAlgebra];
}

/// Structure constants `(a, b)` in `T_i^2 = a T_i + b T_e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    a: Rational,
    b: Rational,
}

impl AlgebraParams {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    fn from_ints(a: i64, b: i64) -> Self {
        Self::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
        )
    }

    pub fn nilcoxeter() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn zero_hecke() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn group_algebra() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn preset(&self) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| &p.params() == self)
    }

    /// Preset name, or `"a,b"` for other parameters.
    pub fn name(&self) -> String {
        match self.preset() {
            Some(p) => p.name().to_string(),
            None => format!("{},{}", format_rational(&self.a), format_rational(&self.b)),
        }
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for AlgebraParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nilcoxeter" | "nc" => Ok(Self::nilcoxeter()),
            "0-hecke" | "hecke" => Ok(Self::zero_hecke()),
            "group" => Ok(Self::group_algebra()),
            other => {
                let (a, b) = other.split_once(',').ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown algebra {other:?}; expected nilcoxeter, 0-hecke, group or a,b"
                    ))
                })?;
                Ok(Self::new(parse_rational(a)?, parse_rational(b)?))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamsRepr {
    Named(String),
    Explicit { a: String, b: String },
}

impl Serialize for AlgebraParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.preset() {
            Some(p) => ParamsRepr::Named(p.name().to_string()),
            None => ParamsRepr::Explicit {
                a: format_rational(&self.a),
                b: format_rational(&self.b),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match ParamsRepr::deserialize(d)? {
            ParamsRepr::Named(name) => name.parse(),
            ParamsRepr::Explicit { a, b } => {
                parse_rational(&a).and_then(|a| Ok(Self::new(a, parse_rational(&b)?)))
            }
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// `T_i T_w` expanded in the basis; zero, one or two terms.
pub fn left_generator_on_basis(
    params: &AlgebraParams,
    i: usize,
    w: &Permutation,
) -> Vec<(Permutation, Rational)> {
    let shifted = w.left_mul_generator(i);
    if w.has_left_descent(i) {
        shortening_terms(params, w, shifted)
    } else {
        vec![(shifted, Rational::one())]
    }
}

/// `T_w T_i` expanded in the basis; zero, one or two terms.
pub fn right_generator_on_basis(
    params: &AlgebraParams,
    w: &Permutation,
    i: usize,
) -> Vec<(Permutation, Rational)> {
    let shifted = w.right_mul_generator(i);
    if w.has_right_descent(i) {
        shortening_terms(params, w, shifted)
    } else {
        vec![(shifted, Rational::one())]
    }
}

fn shortening_terms(
    params: &AlgebraParams,
    w: &Permutation,
    shifted: Permutation,
) -> Vec<(Permutation, Rational)> {
    let mut out = Vec::with_capacity(2);
    if !params.a.is_zero() {
        out.push((w.clone(), params.a.clone()));
    }
    if !params.b.is_zero() {
        out.push((shifted, params.b.clone()));
    }
    out
}

/// A finite linear combination of basis elements `T_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    params: AlgebraParams,
    terms: BTreeMap<Permutation, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize, params: &AlgebraParams) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            params: params.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// The basis element `T_w`.
    pub fn basis(params: &AlgebraParams, w: &Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), Rational::one());
        Self {
            n: w.n(),
            params: params.clone(),
            terms,
        }
    }

    /// `T_{s_{i_1}} ... T_{s_{i_k}}` for an arbitrary (not necessarily
    /// reduced) word.
    pub fn from_word(n: usize, params: &AlgebraParams, word: &Word) -> Result<Self> {
        let mut x = Self::basis(params, &Permutation::identity(n)?);
        for &i in word.letters().iter().rev() {
            x = x.mul_left_generator(i)?;
        }
        Ok(x)
    }

    pub fn from_terms<I>(n: usize, params: &AlgebraParams, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, Rational)>,
    {
        let mut x = Self::zero(n, params)?;
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: w.n(),
                });
            }
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Permutation) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support of the element.
    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.terms.keys()
    }

    fn add_term(&mut self, w: Permutation, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self {
            n: self.n,
            params: self.params.clone(),
            terms: BTreeMap::new(),
        };
        if !factor.is_zero() {
            out.terms = self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect();
        }
        out
    }

    /// `T_i · self`.
    pub fn mul_left_generator(&self, i: usize) -> Result<Self> {
        check_generator(self.n, i)?;
        Ok(self.left_generator_unchecked(i))
    }

    fn left_generator_unchecked(&self, i: usize) -> Self {
        let mut out = Self {
            n: self.n,
            params: self.params.clone(),
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            for (v, d) in left_generator_on_basis(&self.params, i, w) {
                out.add_term(v, c * d);
            }
        }
        out
    }

    /// `self · T_i`.
    pub fn mul_right_generator(&self, i: usize) -> Result<Self> {
        check_generator(self.n, i)?;
        let mut out = Self {
            n: self.n,
            params: self.params.clone(),
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            for (v, d) in right_generator_on_basis(&self.params, w, i) {
                out.add_term(v, c * d);
            }
        }
        Ok(out)
    }

    /// The product `self · other`.
    ///
    /// Each basis term `T_u` of `self` is factored along a reduced word of
    /// `u`, and the generators are applied to `other` from the right end.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self {
            n: self.n,
            params: self.params.clone(),
            terms: BTreeMap::new(),
        };
        for (u, c) in &self.terms {
            let mut partial = other.clone();
            for &i in u.reduced_word().letters().iter().rev() {
                partial = partial.left_generator_unchecked(i);
                if partial.is_zero() {
                    break;
                }
            }
            for (v, d) in partial.terms {
                out.add_term(v, c * d);
            }
        }
        Ok(out)
    }

    /// The Frobenius trace: the coefficient of `T_{w_0}`.
    pub fn trace(&self) -> Rational {
        let w0 = Permutation::longest_element(self.n).expect("valid n");
        self.coefficient(&w0)
    }

    /// The involution `T_w ↦ T_{w_0 w w_0}`, which sends `T_i` to `T_{n-i}`.
    pub fn involve(&self) -> Self {
        Self {
            n: self.n,
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.conjugate_by_w0(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates indexed by lexicographic rank, in a space of dimension `n!`.
    pub fn to_vector(&self) -> SparseVector {
        SparseVector::from_entries(
            factorial(self.n),
            self.terms.iter().map(|(w, c)| (w.lex_rank(), c.clone())),
        )
        .expect("lex rank below n!")
    }

    pub fn from_vector(n: usize, params: &AlgebraParams, v: &SparseVector) -> Result<Self> {
        check_n(n)?;
        if v.dim() != factorial(n) {
            return Err(Error::DimensionMismatch {
                expected: factorial(n),
                actual: v.dim(),
            });
        }
        let terms = v
            .iter()
            .map(|(i, c)| Ok((Permutation::from_lex_rank(n, i)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, params, terms)
    }

    /// Lengths of the basis elements in the support, deduplicated.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Permutation::length).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(w, _)| w.shortlex_key());
        for (k, (w, c)) in sorted.into_iter().enumerate() {
            let word = w.reduced_word();
            let basis = if word.is_empty() {
                "T_e".to_string()
            } else {
                format!("T_{{{}}}", word.dotted())
            };
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                f.write_str(&basis)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), basis)?;
            }
        }
        Ok(())
    }
}

/// JSON form of a single term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Word,
    #[serde(with = "crate::linalg::rational_string")]
    pub coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    algebra: AlgebraParams,
    terms: Vec<TermJson>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            n: self.n,
            algebra: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.reduced_word(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = ElementJson::deserialize(d)?;
        let build = || -> Result<Self> {
            let terms = json
                .terms
                .iter()
                .map(|t| Ok((t.word.evaluate(json.n)?, t.coeff.clone())))
                .collect::<Result<Vec<_>>>()?;
            Self::from_terms(json.n, &json.algebra, terms)
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// `T_u · T_v`.
pub fn mul_basis(
    params: &AlgebraParams,
    u: &Permutation,
    v: &Permutation,
) -> Result<AlgebraElement> {
    AlgebraElement::basis(params, u).mul(&AlgebraElement::basis(params, v))
}

/// All `β` with `trace(T_w T_β) = 1`, sorted by length and then canonical
/// reduced word.
pub fn right_complements(w: &Permutation, params: &AlgebraParams) -> Result<Vec<Permutation>> {
    let one = Rational::one();
    let lhs = AlgebraElement::basis(params, w);
    let mut out = Vec::new();
    for beta in Permutation::all(w.n())? {
        if lhs.mul(&AlgebraElement::basis(params, &beta))?.trace() == one {
            out.push(beta);
        }
    }
    out.sort_by_key(Permutation::shortlex_key);
    Ok(out)
}

/// `G[u][v] = trace(T_u T_v)` over the basis in lexicographic order.
pub fn gram_matrix(n: usize, params: &AlgebraParams) -> Result<Vec<Vec<Rational>>> {
    Ok(gram_rows(n, params)?
        .into_iter()
        .map(|row| row.to_dense())
        .collect())
}

/// Rows of the Gram matrix as sparse vectors; row `u` is the functional
/// `x ↦ trace(T_u x)` in coordinates.
pub fn gram_rows(n: usize, params: &AlgebraParams) -> Result<Vec<SparseVector>> {
    let all = Permutation::all(n)?;
    let dim = all.len();
    let w0 = Permutation::longest_element(n)?;
    all.iter()
        .map(|u| {
            let tu = AlgebraElement::basis(params, u);
            let mut row = SparseVector::zero(dim);
            for v in &all {
                let c = tu.mul(&AlgebraElement::basis(params, v))?.coefficient(&w0);
                row.set(v.lex_rank(), c)?;
            }
            Ok(row)
        })
        .collect()
}

/// One checked instance of a defining relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub family: &'static str,
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub algebra: AlgebraParams,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Verifies the braid, far-commutation and quadratic relations by explicit
/// multiplication.
pub fn check_defining_relations(n: usize, params: &AlgebraParams) -> Result<RelationReport> {
    check_n(n)?;
    let word = |letters: &[usize]| AlgebraElement::from_word(n, params, &Word(letters.to_vec()));
    let mut checks = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let lhs = word(&[i, i + 1, i])?;
        let rhs = word(&[i + 1, i, i + 1])?;
        checks.push(RelationCheck {
            family: "braid",
            relation: format!("T_{i}T_{j}T_{i} = T_{j}T_{i}T_{j}", j = i + 1),
            holds: lhs == rhs,
        });
    }
    for i in 1..n {
        for j in i + 2..n {
            checks.push(RelationCheck {
                family: "commutation",
                relation: format!("T_{i}T_{j} = T_{j}T_{i}"),
                holds: word(&[i, j])? == word(&[j, i])?,
            });
        }
    }
    let e = AlgebraElement::basis(params, &Permutation::identity(n)?);
    for i in 1..n {
        let ti = word(&[i])?;
        let rhs = ti.scale(params.a()).add(&e.scale(params.b()))?;
        checks.push(RelationCheck {
            family: "quadratic",
            relation: format!(
                "T_{i}^2 = {}*T_{i} + {}*T_e",
                format_rational(params.a()),
                format_rational(params.b())
            ),
            holds: word(&[i, i])? == rhs,
        });
    }
    Ok(RelationReport {
        n,
        algebra: params.clone(),
        checks,
    })
}
