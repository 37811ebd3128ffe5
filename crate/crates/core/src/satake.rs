//! The specialized side: a p-adic group datum `(𝔱, d)`, volumes `𝔱(w)`, the modular character
//! `δ_P`, the Satake basis `𝓔_λ` and matrix coefficients of unramified principal series.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{GroupAlgebraElement, Monomial, Namespace, ParamScalar};
use crate::hecke::{HeckeContext, RecursionCache};
use crate::macdonald::MacdonaldEngine;
use crate::rootdata::Weight;
use crate::weyl::{WeylElement, WeylGroup};
use crate::{Error, Rat, Result};

/// Name of the single parameter of the specialized namespace.
pub const TAU: &str = "tau";

/// Residue field cardinality: a number or a formal symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tau {
    Numeric(u64),
    Formal(FormalTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormalTag {
    #[serde(rename = "formal")]
    Formal,
}

impl Tau {
    pub fn numeric(&self) -> Option<u64> {
        match self {
            Tau::Numeric(q) => Some(*q),
            Tau::Formal(_) => None,
        }
    }
}

impl FromStr for Tau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "formal" {
            return Ok(Tau::Formal(FormalTag::Formal));
        }
        s.parse::<u64>().map(Tau::Numeric).map_err(|_| Error::Config(format!("tau must be an integer >= 2 or \"formal\", got {s:?}")))
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::Numeric(q) => write!(f, "{q}"),
            Tau::Formal(_) => f.write_str("formal"),
        }
    }
}

/// `𝔱` and the exponents `d(a_i)`, `d(2a_i)` for the affine simple roots `a_0, …, a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeData {
    pub tau: Tau,
    pub d: Vec<i64>,
    #[serde(default)]
    pub d2: Vec<i64>,
}

impl SatakeData {
    /// All `d(a_i) = 1`, `d(2a_i) = 0`.
    pub fn split(rank: usize, tau: Tau) -> Self {
        SatakeData { tau, d: vec![1; rank + 1], d2: vec![0; rank + 1] }
    }

    /// `d_i = d(a_i) + d(2a_i)`, so that `𝔱_i = 𝔱^{d_i}`.
    pub fn d_total(&self, i: usize) -> i64 {
        self.d[i] + self.d2[i]
    }

    /// `d(a_i) − d(2a_i)`, so that `𝔱_i^* = 𝔱^{d(a_i) − d(2a_i)}`.
    pub fn d_star(&self, i: usize) -> i64 {
        self.d[i] - self.d2[i]
    }

    fn normalized(&self, weyl: &WeylGroup) -> Result<Self> {
        let rs = weyl.root_system();
        let n = rs.rank();
        let mut out = self.clone();
        if out.d2.is_empty() {
            out.d2 = vec![0; n + 1];
        }
        if out.d.len() != n + 1 || out.d2.len() != n + 1 {
            return Err(Error::Config(format!("d and d2 need {} entries", n + 1)));
        }
        if let Tau::Numeric(q) = out.tau {
            if q < 2 {
                return Err(Error::Config(format!("tau = {q} must be at least 2")));
            }
        }
        for i in 0..=n {
            if out.d[i] < 1 {
                return Err(Error::Config(format!("d(a_{i}) = {} must be positive", out.d[i])));
            }
            if out.d2[i] < 0 {
                return Err(Error::Config(format!("d(2a_{i}) = {} must be nonnegative", out.d2[i])));
            }
            if out.d2[i] != 0 && rs.affine_double(i).is_none() {
                return Err(Error::Config(format!("2a_{i} is not an affine root, so d(2a_{i}) must be 0")));
            }
        }
        Ok(out)
    }
}

/// Values of an unramified character on the chosen basis of `Λ`.
#[derive(Clone, Debug, PartialEq)]
pub enum UnramifiedCharacter {
    Exact(Vec<Complex<Rat>>),
    Float(Vec<Complex64>),
}

fn parse_part_rat(s: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|_| Error::Config(format!("bad rational {s:?}")))
}

fn parse_part_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad float {s:?}")))
}

impl UnramifiedCharacter {
    /// Parses values written `re` or `re:im`; rationals `p/q` give an exact character, decimals a
    /// floating one. Mixing the two is rejected.
    pub fn parse(values: &[String]) -> Result<Self> {
        let is_float = |s: &str| s.contains(['.', 'e', 'E']);
        let floats = values.iter().filter(|v| is_float(v)).count();
        if floats != 0 && floats != values.len() {
            return Err(Error::Mode("character mixes exact and floating values".into()));
        }
        let split = |v: &str| -> (String, Option<String>) {
            match v.split_once(':') {
                Some((a, b)) => (a.to_string(), Some(b.to_string())),
                None => (v.to_string(), None),
            }
        };
        if floats == 0 {
            values
                .iter()
                .map(|v| {
                    let (re, im) = split(v);
                    Ok(Complex::new(parse_part_rat(&re)?, im.map_or(Ok(Rat::zero()), |s| parse_part_rat(&s))?))
                })
                .collect::<Result<_>>()
                .map(UnramifiedCharacter::Exact)
        } else {
            values
                .iter()
                .map(|v| {
                    let (re, im) = split(v);
                    Ok(Complex64::new(parse_part_f64(&re)?, im.map_or(Ok(0.0), |s| parse_part_f64(&s))?))
                })
                .collect::<Result<_>>()
                .map(UnramifiedCharacter::Float)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            UnramifiedCharacter::Exact(v) => v.len(),
            UnramifiedCharacter::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same character with floating values.
    pub fn to_float(&self) -> UnramifiedCharacter {
        match self {
            UnramifiedCharacter::Exact(v) => UnramifiedCharacter::Float(v.iter().map(complex_to_f64).collect()),
            f => f.clone(),
        }
    }

    fn check(&self, rank: usize) -> Result<()> {
        if self.len() != rank {
            return Err(Error::Config(format!("character needs {rank} values, got {}", self.len())));
        }
        let zero = match self {
            UnramifiedCharacter::Exact(v) => v.iter().any(|z| z.is_zero()),
            UnramifiedCharacter::Float(v) => v.iter().any(|z| z.norm() == 0.0),
        };
        if zero {
            return Err(Error::Domain("character takes the value 0 on a basis vector".into()));
        }
        Ok(())
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn complex_to_f64(z: &Complex<Rat>) -> Complex64 {
    Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

fn gauss_pow(z: &Complex<Rat>, k: i64) -> Complex<Rat> {
    let mut acc = Complex::new(Rat::one(), Rat::zero());
    let base = if k < 0 { gauss_inv(z) } else { z.clone() };
    for _ in 0..k.unsigned_abs() {
        acc = &acc * &base;
    }
    acc
}

fn gauss_inv(z: &Complex<Rat>) -> Complex<Rat> {
    let n = &z.re * &z.re + &z.im * &z.im;
    Complex::new(&z.re / &n, -&z.im / &n)
}

fn fmt_gauss(z: &Complex<Rat>) -> String {
    if z.im.is_zero() {
        z.re.to_string()
    } else if z.re.is_zero() {
        format!("{}i", z.im)
    } else {
        let sign = if z.im.is_negative() { "-" } else { "+" };
        format!("({}{}{}i)", z.re, sign, z.im.abs())
    }
}

/// An element `a + b√𝔱` with Gaussian rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtTauNumber {
    pub a: Complex<Rat>,
    pub b: Complex<Rat>,
    tau: u64,
}

impl SqrtTauNumber {
    fn zero(tau: u64) -> Self {
        SqrtTauNumber { a: Complex::new(Rat::zero(), Rat::zero()), b: Complex::new(Rat::zero(), Rat::zero()), tau }
    }

    fn normalize(mut self) -> Self {
        let r = self.tau.sqrt();
        if r * r == self.tau && !self.b.is_zero() {
            let rr = Rat::from_integer(BigInt::from(r));
            self.a = &self.a + &(&self.b * &rr);
            self.b = Complex::new(Rat::zero(), Rat::zero());
        }
        self
    }

    /// `c 𝔱^{h/2}`.
    fn half_power(tau: u64, c: &Complex<Rat>, h: i64) -> Self {
        let t = Rat::from_integer(BigInt::from(tau));
        let p = |k: i64| -> Rat {
            if k >= 0 {
                num_traits::pow(t.clone(), k as usize)
            } else {
                num_traits::pow(t.recip(), (-k) as usize)
            }
        };
        let mut out = Self::zero(tau);
        if h.rem_euclid(2) == 0 {
            out.a = c * p(h / 2);
        } else {
            out.b = c * p(h.div_euclid(2));
        }
        out.normalize()
    }

    fn add(&self, o: &Self) -> Self {
        SqrtTauNumber { a: &self.a + &o.a, b: &self.b + &o.b, tau: self.tau }
    }

    fn mul(&self, o: &Self) -> Self {
        let t = Rat::from_integer(BigInt::from(self.tau));
        SqrtTauNumber { a: &self.a * &o.a + &self.b * &o.b * &t, b: &self.a * &o.b + &self.b * &o.a, tau: self.tau }.normalize()
    }

    fn inv(&self) -> Result<Self> {
        let t = Rat::from_integer(BigInt::from(self.tau));
        let norm = &self.a * &self.a - &self.b * &self.b * &t;
        if norm.is_zero() {
            return Err(Error::Domain("division by zero in Q(i, √τ)".into()));
        }
        let ni = gauss_inv(&norm);
        Ok(SqrtTauNumber { a: &self.a * &ni, b: -(&self.b * &ni), tau: self.tau })
    }

    pub fn to_f64(&self) -> Complex64 {
        complex_to_f64(&self.a) + complex_to_f64(&self.b) * (self.tau as f64).sqrt()
    }
}

impl fmt::Display for SqrtTauNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_gauss(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", fmt_gauss(&self.b), self.tau)
        } else {
            write!(f, "{} + {}*sqrt({})", fmt_gauss(&self.a), fmt_gauss(&self.b), self.tau)
        }
    }
}

/// A matrix coefficient value.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValue {
    Exact(SqrtTauNumber),
    Float(Complex64),
}

impl CoeffValue {
    pub fn to_f64(&self) -> Complex64 {
        match self {
            CoeffValue::Exact(x) => x.to_f64(),
            CoeffValue::Float(z) => *z,
        }
    }
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValue::Exact(x) => write!(f, "{x}"),
            CoeffValue::Float(z) => write!(f, "{:.17e}{:+.17e}i", z.re, z.im),
        }
    }
}

/// One term `c 𝔱^{h/2} 𝔢^μ` of a Satake table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeTermJson {
    pub weight: Weight,
    pub t_num_halfexp: i64,
    pub coeff: String,
}

/// A row of the `𝓔_λ` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeRecordJson {
    pub lambda: Weight,
    pub terms: Vec<SatakeTermJson>,
    pub data: SatakeData,
}

/// Flattens an element of the specialized namespace into `(weight, half exponent, coefficient)`.
pub fn satake_terms(f: &GroupAlgebraElement) -> Vec<SatakeTermJson> {
    let mut out = Vec::new();
    for (w, c) in f.terms() {
        for (m, r) in c.terms() {
            out.push(SatakeTermJson { weight: w.clone(), t_num_halfexp: m.0[0] as i64, coeff: r.to_string() });
        }
    }
    out
}

/// Inverse of [`satake_terms`].
pub fn from_satake_terms(ns: &Arc<Namespace>, terms: &[SatakeTermJson]) -> Result<GroupAlgebraElement> {
    let mut f = GroupAlgebraElement::zero(ns);
    for t in terms {
        let c: Rat = t.coeff.parse().map_err(|_| Error::Config(format!("bad coefficient {:?}", t.coeff)))?;
        f.add_term(t.weight.clone(), ParamScalar::term(tau_half(t.t_num_halfexp), c));
    }
    Ok(f)
}

fn tau_half(h: i64) -> Monomial {
    Monomial::var(1, 0, h as i32)
}

/// The specialized Hecke algebra for a fixed datum, with its recursion cache.
#[derive(Debug)]
pub struct SatakeEngine {
    mac: Arc<MacdonaldEngine>,
    data: SatakeData,
    ns: Arc<Namespace>,
    ctx: Arc<HeckeContext>,
    images: Vec<Monomial>,
    finite: Vec<WeylElement>,
    cache: RecursionCache,
}

impl SatakeEngine {
    pub fn new(mac: Arc<MacdonaldEngine>, data: &SatakeData) -> Result<Self> {
        let weyl = mac.weyl().clone();
        let data = data.normalized(&weyl)?;
        let rs = weyl.root_system().clone();
        let n = rs.rank();
        let classes = mac.classes();
        let k = classes.namespace().len();

        // exponent of 𝔱 assigned to every generic parameter class
        let mut exps: Vec<Option<i64>> = vec![None; k];
        let mut assign = |class: usize, e: i64, what: &str| -> Result<()> {
            match exps[class] {
                Some(old) if old != e => Err(Error::Config(format!(
                    "{what}: parameter {} would be both tau^{old} and tau^{e}; d must be constant on Ω-orbits",
                    classes.namespace().names()[class]
                ))),
                _ => {
                    exps[class] = Some(e);
                    Ok(())
                }
            }
        };
        if rs.is_reduced() {
            for j in 0..=n {
                assign(classes.quad_class(j), data.d_total(j), &format!("d(a_{j})"))?;
            }
        } else {
            let a = |name: &str| classes.alias(name).unwrap();
            assign(a("t01"), data.d_star(n), "t01")?;
            assign(a("t02"), data.d_star(0), "t02")?;
            assign(a("t03"), data.d_total(0), "t03")?;
            for i in 1..=n {
                assign(a(&format!("t{i}")), data.d_total(i), &format!("t{i}"))?;
            }
        }
        let images = exps
            .iter()
            .enumerate()
            .map(|(c, e)| {
                e.map(|e| tau_half(e)).ok_or_else(|| Error::Invariant(format!("parameter class {c} has no specialization")))
            })
            .collect::<Result<Vec<_>>>()?;

        let ns = Namespace::new([TAU]);
        let quad = (0..=n).map(|i| tau_half(2 * data.d_total(i))).collect();
        let cross = (0..=n)
            .map(|i| {
                if i == 0 {
                    None
                } else if !rs.is_reduced() {
                    (i == n).then(|| tau_half(2 * data.d_total(0)))
                } else {
                    classes.cross_class(i).map(|c| images[c].pow(2))
                }
            })
            .collect();
        let ctx = Arc::new(HeckeContext::new(weyl.clone(), ns.clone(), quad, cross)?);
        let finite = weyl.finite_elements();
        Ok(SatakeEngine { mac, data, ns, ctx, images, finite, cache: RecursionCache::new() })
    }

    pub fn data(&self) -> &SatakeData {
        &self.data
    }

    pub fn namespace(&self) -> &Arc<Namespace> {
        &self.ns
    }

    pub fn context(&self) -> &Arc<HeckeContext> {
        &self.ctx
    }

    pub fn macdonald(&self) -> &Arc<MacdonaldEngine> {
        &self.mac
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        self.mac.weyl()
    }

    fn tau_half_exp(&self, w: &WeylElement) -> i64 {
        let rw = self.weyl().reduced_word(w);
        rw.word.iter().map(|&i| 2 * self.data.d_total(i)).sum()
    }

    /// `𝔱(w)` over a reduced word; `Ω` contributes 1.
    pub fn tau_of(&self, w: &WeylElement) -> ParamScalar {
        ParamScalar::monomial(tau_half(self.tau_half_exp(w)))
    }

    fn delta_half_exp(&self, lambda: &Weight) -> Result<i64> {
        let weyl = self.weyl();
        weyl.lattice().check(lambda)?;
        let rs = weyl.root_system();
        let rho2 = rs.positive_roots().iter().fold(Weight::zero(rs.rank()), |acc, r| acc.add(&r.labels));
        let k = lambda.iter().zip(rho2.iter()).map(|(&l, &s)| if l < 0 { (-l + s - 1) / s } else { 0 }).max().unwrap_or(0);
        let l2 = rho2.scaled(k);
        let l1 = lambda.add(&l2);
        Ok(self.tau_half_exp(&weyl.translation(&l1)?) - self.tau_half_exp(&weyl.translation(&l2)?))
    }

    /// `δ_P(t_λ)`, equal to `𝔱(t_λ)` for dominant `λ` and extended multiplicatively.
    pub fn delta_p(&self, lambda: &Weight) -> Result<ParamScalar> {
        Ok(ParamScalar::monomial(tau_half(self.delta_half_exp(lambda)?)))
    }

    /// `δ_P^{-1/2}(t_λ)`.
    pub fn delta_p_inv_sqrt(&self, lambda: &Weight) -> Result<ParamScalar> {
        let h = self.delta_half_exp(lambda)?;
        debug_assert!(h % 2 == 0);
        Ok(ParamScalar::monomial(tau_half(-h / 2)))
    }

    /// The Poincaré polynomial `Σ_{ẘ ∈ W̊} 𝔱(ẘ)`.
    pub fn poincare(&self) -> ParamScalar {
        self.finite.iter().fold(ParamScalar::zero(1), |acc, u| &acc + &self.tau_of(u))
    }

    /// `vol(I t_λ K) = Σ_{ẘ ∈ W̊} 𝔱(t_λ ẘ)`, which also equals `vol(K t_{−λ} I)`.
    pub fn vol(&self, lambda: &Weight) -> Result<ParamScalar> {
        let t = self.weyl().translation(lambda)?;
        Ok(self.finite.iter().fold(ParamScalar::zero(1), |acc, u| &acc + &self.tau_of(&t.mul(u))))
    }

    /// `vol(I t_λ K)` as `𝔱(m) · P_W̊(𝔱)` with `m` the shortest element of `t_λ W̊`.
    pub fn vol_by_coset(&self, lambda: &Weight) -> Result<ParamScalar> {
        let t = self.weyl().translation(lambda)?;
        let weyl = self.weyl();
        let m = self.finite.iter().map(|u| t.mul(u)).min_by_key(|x| weyl.length(x)).unwrap();
        Ok(&self.tau_of(&m) * &self.poincare())
    }

    /// Substitutes `t_{01}, t_{02}, t_{03}, t_1, …, t_n ↦ 𝔱_n^*, 𝔱_0^*, 𝔱_0, 𝔱_1, …, 𝔱_n` in the
    /// nonreduced case, and each parameter class to the `𝔱_j` of any simple root in it otherwise.
    pub fn specialize_scalar(&self, c: &ParamScalar) -> ParamScalar {
        c.substitute(&self.images, 1)
    }

    pub fn specialize(&self, f: &GroupAlgebraElement) -> GroupAlgebraElement {
        f.map_coeffs(&self.ns, |c| self.specialize_scalar(c))
    }

    /// `𝓔_λ`, computed from `δ_P^{-1/2}(t_{λ̃}) 𝔢^{λ̃}` by the specialized operators.
    pub fn satake_e(&self, lambda: &Weight) -> Result<Arc<GroupAlgebraElement>> {
        self.cache.get_or_compute(&self.ctx, lambda, &|nu| self.delta_p_inv_sqrt(nu))
    }

    pub fn satake_many(&self, lambdas: &[Weight]) -> Result<Vec<Arc<GroupAlgebraElement>>> {
        lambdas.par_iter().map(|l| self.satake_e(l)).collect()
    }

    /// `𝓔_λ − j_λ(𝔱) E_λ(𝔱)`, which must vanish.
    pub fn cross_path_residual(&self, lambda: &Weight) -> Result<GroupAlgebraElement> {
        let lhs = self.satake_e(lambda)?;
        let j = self.specialize_scalar(&self.mac.normalization(lambda)?.j);
        let rhs = self.specialize(&self.mac.e(lambda)?).scale(&j);
        lhs.try_sub(&rhs)
    }

    pub fn record(&self, lambda: &Weight) -> Result<SatakeRecordJson> {
        Ok(SatakeRecordJson { lambda: lambda.clone(), terms: satake_terms(&*self.satake_e(lambda)?), data: self.data.clone() })
    }

    fn numeric_tau(&self) -> Result<u64> {
        self.data.tau.numeric().ok_or_else(|| Error::Mode("matrix coefficients need a numeric tau".into()))
    }

    /// `E_χ(t_{−λ}) = j_λ(𝔱) / vol(K t_{−λ} I) · Σ_μ c_μ(𝔱) χ(𝔢^μ)^{-1}`.
    pub fn matrix_coefficient(&self, lambda: &Weight, chi: &UnramifiedCharacter) -> Result<CoeffValue> {
        let e = self.mac.e(lambda)?;
        self.coefficient_from(lambda, &e, chi)
    }

    /// The same value with `E_λ` recomputed by a fresh engine along the full operator word.
    pub fn matrix_coefficient_fresh(&self, lambda: &Weight, chi: &UnramifiedCharacter) -> Result<CoeffValue> {
        let e = self.mac.fresh().e_direct(lambda)?;
        self.coefficient_from(lambda, &e, chi)
    }

    fn coefficient_from(&self, lambda: &Weight, e: &GroupAlgebraElement, chi: &UnramifiedCharacter) -> Result<CoeffValue> {
        let tau = self.numeric_tau()?;
        let weyl = self.weyl();
        chi.check(weyl.rank())?;
        let j = self.specialize_scalar(&self.mac.normalization(lambda)?.j);
        let vol = self.vol(lambda)?;
        let spec = self.specialize(e);
        let coords = |w: &Weight| weyl.lattice().coords(w).ok_or_else(|| Error::Membership(w.0.clone()));
        match chi {
            UnramifiedCharacter::Exact(vals) => {
                let eval = |c: &ParamScalar| {
                    c.terms().fold(SqrtTauNumber::zero(tau), |acc, (m, r)| {
                        acc.add(&SqrtTauNumber::half_power(tau, &Complex::new(r.clone(), Rat::zero()), m.0[0] as i64))
                    })
                };
                let mut sum = SqrtTauNumber::zero(tau);
                for (w, c) in spec.terms() {
                    let x = coords(w)?;
                    let chi_mu = vals.iter().zip(&x).fold(Complex::new(Rat::one(), Rat::zero()), |acc, (v, &k)| acc * gauss_pow(v, k));
                    let inv = SqrtTauNumber { a: gauss_inv(&chi_mu), b: Complex::new(Rat::zero(), Rat::zero()), tau };
                    sum = sum.add(&eval(c).mul(&inv));
                }
                Ok(CoeffValue::Exact(eval(&j).mul(&sum).mul(&eval(&vol).inv()?)))
            }
            UnramifiedCharacter::Float(vals) => {
                let tf = tau as f64;
                let eval = |c: &ParamScalar| -> Complex64 {
                    c.terms().map(|(m, r)| Complex64::new(rat_to_f64(r) * tf.powf(m.0[0] as f64 / 2.0), 0.0)).sum()
                };
                let mut sum = Complex64::new(0.0, 0.0);
                for (w, c) in spec.terms() {
                    let x = coords(w)?;
                    let chi_mu = vals.iter().zip(&x).fold(Complex64::new(1.0, 0.0), |acc, (v, &k)| acc * v.powi(k as i32));
                    sum += eval(c) / chi_mu;
                }
                Ok(CoeffValue::Float(eval(&j) * sum / eval(&vol)))
            }
        }
    }
}

/// Relative distance `|a − b| / max(|a|, |b|)`, or 0 when both vanish.
pub fn relative_error(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// `1/P(𝔱)` as an exact value, for checking `E_χ(1) = 1/vol(K)`.
pub fn inverse_poincare_at(engine: &SatakeEngine) -> Result<SqrtTauNumber> {
    let tau = engine.numeric_tau()?;
    let p = engine.poincare();
    let v = p.terms().fold(SqrtTauNumber::zero(tau), |acc, (m, r)| {
        acc.add(&SqrtTauNumber::half_power(tau, &Complex::new(r.clone(), Rat::zero()), m.0[0] as i64))
    });
    v.inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};

    fn engine(t: CartanType, n: usize, lat: &str, data: Option<SatakeData>) -> SatakeEngine {
        let rs = Arc::new(RootSystem::build(t, n).unwrap());
        let l = Arc::new(Lattice::new(&rs, lat.parse::<LatticeSpec>().unwrap()).unwrap());
        let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, l).unwrap())).unwrap());
        let data = data.unwrap_or_else(|| SatakeData::split(n, Tau::Formal(FormalTag::Formal)));
        SatakeEngine::new(mac, &data).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> ParamScalar {
        coeffs.iter().fold(ParamScalar::zero(1), |acc, &(h, c)| &acc + &ParamScalar::term(tau_half(h), rat(c)))
    }

    #[test]
    fn poincare_small() {
        assert_eq!(engine(CartanType::A, 1, "P", None).vol(&Weight(vec![0])).unwrap(), poly(&[(0, 1), (2, 1)]));
        let a2 = engine(CartanType::A, 2, "P", None);
        assert_eq!(a2.vol(&Weight(vec![0, 0])).unwrap(), poly(&[(0, 1), (2, 2), (4, 2), (6, 1)]));
        let w0 = a2.weyl().finite_elements().pop().unwrap();
        assert_eq!(a2.tau_of(&w0), poly(&[(6, 1)]));
    }

    #[test]
    fn delta_examples() {
        let s = engine(CartanType::A, 1, "P", None);
        assert!(s.delta_p(&Weight(vec![0])).unwrap().is_one());
        assert_eq!(s.delta_p(&Weight(vec![2])).unwrap(), poly(&[(4, 1)]));
        assert_eq!(s.delta_p(&Weight(vec![-2])).unwrap(), poly(&[(-4, 1)]));
    }

    #[test]
    fn minuscule_base() {
        let s = engine(CartanType::A, 2, "P", None);
        for nu in s.weyl().minuscule_set() {
            let e = s.satake_e(nu).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e.coeff(nu), s.delta_p_inv_sqrt(nu).unwrap());
        }
    }

    #[test]
    fn cross_path_presets() {
        let presets = [
            (CartanType::A, 1, "Q", SatakeData { tau: Tau::Formal(FormalTag::Formal), d: vec![3, 1], d2: vec![0, 0] }),
            (CartanType::BC, 1, "Q", SatakeData { tau: Tau::Formal(FormalTag::Formal), d: vec![2, 3], d2: vec![1, 1] }),
            (CartanType::A, 2, "P", SatakeData::split(2, Tau::Numeric(5))),
        ];
        for (t, n, l, d) in presets {
            let s = engine(t, n, l, Some(d));
            for lam in s.weyl().weights_up_to_length(4) {
                assert!(s.cross_path_residual(&lam).unwrap().is_zero(), "{t}{n} λ={lam:?}");
            }
        }
    }

    #[test]
    fn omega_consistency_enforced() {
        let rs = Arc::new(RootSystem::build(CartanType::A, 1).unwrap());
        let l = Arc::new(Lattice::new(&rs, "P".parse::<LatticeSpec>().unwrap()).unwrap());
        let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, l).unwrap())).unwrap());
        let bad = SatakeData { tau: Tau::Numeric(3), d: vec![3, 1], d2: vec![0, 0] };
        assert!(matches!(SatakeEngine::new(mac, &bad), Err(Error::Config(_))));
    }

    #[test]
    fn coefficient_at_zero() {
        let s = engine(CartanType::A, 1, "P", Some(SatakeData::split(1, Tau::Numeric(3))));
        let chi = UnramifiedCharacter::parse(&["2:1".to_string()]).unwrap();
        let v = s.matrix_coefficient(&Weight(vec![0]), &chi).unwrap();
        assert_eq!(v, CoeffValue::Exact(inverse_poincare_at(&s).unwrap()));
        assert_eq!(v.to_string(), "1/4");
        let lam = Weight(vec![2]);
        let f = s.matrix_coefficient(&lam, &chi.to_float()).unwrap();
        assert!(relative_error(s.matrix_coefficient(&lam, &chi).unwrap().to_f64(), f.to_f64()) < 1e-12);
        assert_eq!(s.matrix_coefficient(&lam, &chi).unwrap(), s.matrix_coefficient_fresh(&lam, &chi).unwrap());
    }

    #[test]
    fn sqrt_arithmetic() {
        let one = Complex::new(Rat::one(), Rat::zero());
        let x = SqrtTauNumber::half_power(2, &one, 1);
        assert_eq!(x.mul(&x), SqrtTauNumber::half_power(2, &one, 2));
        assert_eq!(x.mul(&x.inv().unwrap()), SqrtTauNumber::half_power(2, &one, 0));
        assert_eq!(SqrtTauNumber::half_power(4, &one, 1), SqrtTauNumber::half_power(4, &Complex::new(rat(2), Rat::zero()), 0));
    }
}
