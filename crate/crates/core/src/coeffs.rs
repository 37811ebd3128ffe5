//! Exact coefficients and the sparse group algebra they act on.
//!
//! A [`ParamScalar`] is a Laurent polynomial with rational coefficients in half-powers of
//! named parameters: the exponent vector of a monomial counts half-powers, so the entry `k`
//! stands for `t^{k/2}`. A [`GroupAlgebraElement`] is a finitely supported map from weights to
//! such scalars.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::rat;
use crate::rootdata::Weight;
use crate::{Error, Rat, Result};

/// The ordered list of parameter names a scalar is written in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Namespace {
    names: Vec<String>,
}

impl Namespace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(Namespace { names: names.into_iter().map(Into::into).collect() })
    }

    /// The namespace with no parameters.
    pub fn empty() -> Arc<Self> {
        Namespace::new(Vec::<String>::new())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn compatible(a: &Arc<Self>, b: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(a, b) || a == b {
            Ok(())
        } else {
            Err(Error::Namespace(a.names.join(","), b.names.join(",")))
        }
    }
}

/// Half-power exponents, one per parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Box<[i32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    /// The monomial `x_var^{half/2}`.
    pub fn var(nvars: usize, var: usize, half: i32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = half;
        Monomial(e.into_boxed_slice())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Sum of all half-exponents.
    pub fn half_degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }
}

/// A Laurent polynomial over `ℚ` in half-powers of the namespace parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamScalar {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl ParamScalar {
    pub fn zero(nvars: usize) -> Self {
        ParamScalar { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn integer(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamScalar { nvars, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rat::one())
    }

    /// `x_var^{half/2}`.
    pub fn var(nvars: usize, var: usize, half: i32) -> Self {
        Self::monomial(Monomial::var(nvars, var, half))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::zero(self.nvars);
        }
        ParamScalar { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Multiplication by a monomial with coefficient 1.
    pub fn mul_monomial(&self, m: &Monomial) -> ParamScalar {
        ParamScalar { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    /// The single term, if this scalar is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of a monomial scalar.
    pub fn inverse(&self) -> Result<ParamScalar> {
        let (m, c) = self
            .as_monomial()
            .ok_or_else(|| Error::Invariant(format!("only monomials are invertible, got {} terms", self.len())))?;
        Ok(ParamScalar::term(m.pow(-1), c.recip()))
    }

    /// Square root of a monomial with coefficient 1 and even half-exponents.
    pub fn sqrt(&self) -> Result<ParamScalar> {
        let (m, c) = self
            .as_monomial()
            .ok_or_else(|| Error::Invariant("square root of a non-monomial".into()))?;
        if !c.is_one() || m.0.iter().any(|e| e % 2 != 0) {
            return Err(Error::Invariant("square root leaves the half-power ring".into()));
        }
        Ok(ParamScalar::monomial(Monomial(m.0.iter().map(|e| e / 2).collect())))
    }

    /// Value after setting every parameter to 1.
    pub fn eval_one(&self) -> Rat {
        self.terms.values().sum()
    }

    /// Whether the parameter `var` occurs with a nonzero exponent.
    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] != 0)
    }

    /// Substitutes each half-power generator `x_k^{1/2}` by the monomial `images[k]`.
    pub fn substitute(&self, images: &[Monomial], target_nvars: usize) -> ParamScalar {
        let mut out = ParamScalar::zero(target_nvars);
        for (m, c) in &self.terms {
            let img = m.0.iter().zip(images).fold(Monomial::one(target_nvars), |acc, (&e, im)| acc.mul(&im.pow(e)));
            out.add_term(img, c.clone());
        }
        out
    }

    /// Collapses all parameters to a single half-power variable: half-degree → coefficient.
    pub fn collapse(&self) -> BTreeMap<i64, Rat> {
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            *out.entry(m.half_degree()).or_insert_with(Rat::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Human-readable form using the names of `ns`.
    pub fn display(&self, ns: &Namespace) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            let mono = monomial_string(m, ns);
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{a}*{mono}");
            }
        }
        s
    }
}

fn monomial_string(m: &Monomial, ns: &Namespace) -> String {
    let mut parts = Vec::new();
    for (e, name) in m.0.iter().zip(ns.names()) {
        match *e {
            0 => {}
            2 => parts.push(name.clone()),
            e if e % 2 == 0 => parts.push(format!("{name}^{}", e / 2)),
            e => parts.push(format!("{name}^({e}/2)")),
        }
    }
    parts.join("*")
}

impl Add<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        self.scale(&-Rat::one())
    }
}

impl Mul<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// An element of the group algebra of the weight lattice over [`ParamScalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    ns: Arc<Namespace>,
    terms: BTreeMap<Weight, ParamScalar>,
}

impl GroupAlgebraElement {
    pub fn zero(ns: &Arc<Namespace>) -> Self {
        GroupAlgebraElement { ns: ns.clone(), terms: BTreeMap::new() }
    }

    /// The basis element `e^λ`.
    pub fn exp(ns: &Arc<Namespace>, w: Weight) -> Self {
        Self::monomial(ns, w, ParamScalar::one(ns.len()))
    }

    /// `c · e^λ`.
    pub fn monomial(ns: &Arc<Namespace>, w: Weight, c: ParamScalar) -> Self {
        let mut out = Self::zero(ns);
        out.add_term(w, c);
        out
    }

    pub fn namespace(&self) -> &Arc<Namespace> {
        &self.ns
    }

    pub fn terms(&self) -> &BTreeMap<Weight, ParamScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e^λ` (zero when absent).
    pub fn coeff(&self, w: &Weight) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_else(|| ParamScalar::zero(self.ns.len()))
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Adds `c · e^λ` in place.
    pub fn add_term(&mut self, w: Weight, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · e^λ` where `c` is borrowed.
    pub fn add_term_ref(&mut self, w: &Weight, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(w) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.clone(), c.clone());
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Namespace::compatible(&self.ns, &other.ns)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term_ref(w, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Namespace::compatible(&self.ns, &other.ns)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Namespace::compatible(&self.ns, &other.ns)?;
        let mut out = Self::zero(&self.ns);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.add(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut out = Self::zero(&self.ns);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Multiplication by `e^μ`.
    pub fn shift(&self, mu: &Weight) -> Self {
        GroupAlgebraElement { ns: self.ns.clone(), terms: self.terms.iter().map(|(w, c)| (w.add(mu), c.clone())).collect() }
    }

    /// Applies `f` to every coefficient, moving into namespace `ns`.
    pub fn map_coeffs(&self, ns: &Arc<Namespace>, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        let mut out = Self::zero(ns);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Applies a weight map term by term (which must be injective for exactness of the result).
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(&self.ns);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Human-readable form.
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let cs = c.display(&self.ns);
                if c.len() > 1 {
                    format!("({cs})·e^{w}")
                } else {
                    format!("{cs}·e^{w}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The canonical JSON term list.
    pub fn to_json(&self) -> Result<Vec<TermJson>> {
        self.terms
            .iter()
            .map(|(w, c)| {
                let coeff = c
                    .terms()
                    .map(|(m, v)| {
                        let q2exp = m
                            .0
                            .iter()
                            .zip(self.ns.names())
                            .filter(|(e, _)| **e != 0)
                            .map(|(e, n)| (n.clone(), *e as i64))
                            .collect();
                        Ok(CoeffJson { q2exp, num: big_to_i64(v.numer())?, den: big_to_i64(v.denom())? })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(TermJson { weight: w.0.clone(), coeff })
            })
            .collect()
    }

    /// Reads the canonical JSON term list back into namespace `ns`.
    pub fn from_json(ns: &Arc<Namespace>, terms: &[TermJson]) -> Result<Self> {
        let mut out = Self::zero(ns);
        for t in terms {
            let mut c = ParamScalar::zero(ns.len());
            for cj in &t.coeff {
                if cj.den == 0 {
                    return Err(Error::Config("zero denominator in coefficient".into()));
                }
                let mut e = vec![0i32; ns.len()];
                for (name, k) in &cj.q2exp {
                    let idx = ns.index(name).ok_or_else(|| Error::Config(format!("unknown parameter {name:?}")))?;
                    e[idx] = i32::try_from(*k).map_err(|_| Error::Config(format!("exponent {k} out of range")))?;
                }
                c.add_term(Monomial(e.into_boxed_slice()), Rat::new(cj.num.into(), cj.den.into()));
            }
            out.add_term(Weight(t.weight.clone()), c);
        }
        Ok(out)
    }
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Domain(format!("coefficient {x} exceeds the 64-bit JSON range")))
}

/// One term of the JSON serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub weight: Vec<i64>,
    pub coeff: Vec<CoeffJson>,
}

/// One monomial of a coefficient; `q2exp` counts half-powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub q2exp: BTreeMap<String, i64>,
    pub num: i64,
    pub den: i64,
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Solves `(1 − e^{−order·α}) g = f` by long division along `α`-strings.
///
/// Terms of `f` are grouped into cosets of `ℤ·(order·α)`; inside each coset `g_k = Σ_{j ≥ k} f_j`,
/// which has finite support exactly when the coset sum vanishes.
pub fn string_quotient(f: &GroupAlgebraElement, alpha: &Weight, order: i64) -> Result<GroupAlgebraElement> {
    let beta = alpha.scaled(order);
    let p = beta
        .iter()
        .position(|&b| b != 0)
        .ok_or_else(|| Error::Invariant("string division by a zero root".into()))?;
    let bp = beta[p];
    let mut cosets: BTreeMap<Weight, BTreeMap<i64, &ParamScalar>> = BTreeMap::new();
    for (w, c) in f.terms() {
        let r = w[p].rem_euclid(bp.abs());
        let k = (w[p] - r) / bp;
        let rep = w.add_scaled(&beta, -k);
        cosets.entry(rep).or_default().insert(k, c);
    }
    let nvars = f.namespace().len();
    let mut out = GroupAlgebraElement::zero(f.namespace());
    for (rep, string) in cosets {
        let lo = *string.keys().next().unwrap();
        let hi = *string.keys().next_back().unwrap();
        let mut acc = ParamScalar::zero(nvars);
        for k in (lo..=hi).rev() {
            if let Some(c) = string.get(&k) {
                acc += c;
            }
            if !acc.is_zero() {
                out.add_term(rep.add_scaled(&beta, k), acc.clone());
            }
        }
        if !acc.is_zero() {
            return Err(Error::Divisibility {
                alpha: alpha.0.clone(),
                order,
                coset: rep.0,
                remainder: acc.display(f.namespace()),
            });
        }
    }
    Ok(out)
}
