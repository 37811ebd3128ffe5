//! Nonsymmetric Macdonald polynomials `E_λ(∞, t)`.
//!
//! `E_λ` is obtained from the recursion `T_{w_λ} · j_{λ̃} e^{λ̃} = j_λ E_λ` with
//! `j_λ = ξ(w_λ) 𝐭^{(λ,λ̄)}`. Two independent oracles live here as well: setting all parameters
//! to 1, and the `t → ∞` limit compared with Demazure characters built from isobaric
//! divided differences.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeffs::{string_quotient, GroupAlgebraElement, Monomial, Namespace, ParamScalar};
use crate::hecke::{HeckeContext, ParamClasses, RecursionCache};
use crate::linalg::{rat, to_i64};
use crate::rootdata::Weight;
use crate::weyl::{WeylElement, WeylGroup};
use crate::{Error, Rat, Result};

/// `j_λ` together with its two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationFactor {
    pub j: ParamScalar,
    pub xi: ParamScalar,
    pub t_power: ParamScalar,
}

/// Computes and caches `E_λ` for one root datum and lattice.
#[derive(Debug)]
pub struct MacdonaldEngine {
    weyl: Arc<WeylGroup>,
    classes: Arc<ParamClasses>,
    ctx: Arc<HeckeContext>,
    cache: RecursionCache,
}

impl MacdonaldEngine {
    pub fn new(weyl: Arc<WeylGroup>) -> Result<Self> {
        let classes = Arc::new(ParamClasses::new(&weyl)?);
        let ctx = Arc::new(classes.generic_context(weyl.clone())?);
        Ok(MacdonaldEngine { weyl, classes, ctx, cache: RecursionCache::new() })
    }

    /// An engine sharing the same context but with an empty cache.
    pub fn fresh(&self) -> Self {
        MacdonaldEngine { weyl: self.weyl.clone(), classes: self.classes.clone(), ctx: self.ctx.clone(), cache: RecursionCache::new() }
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn classes(&self) -> &Arc<ParamClasses> {
        &self.classes
    }

    pub fn context(&self) -> &Arc<HeckeContext> {
        &self.ctx
    }

    pub fn namespace(&self) -> &Arc<Namespace> {
        self.ctx.namespace()
    }

    fn xi_letter(&self, i: usize) -> Result<ParamScalar> {
        if i == 0 {
            let (a, b) = self.classes.xi0_classes();
            let k = self.namespace().len();
            Ok(&ParamScalar::var(k, a, 1) * &ParamScalar::var(k, b, 1))
        } else {
            Ok(self.ctx.quad(i).clone())
        }
    }

    /// `ξ(w)`: product over a reduced word with `ξ(T_0) = t_{01}^{1/2} t_{03}^{1/2}` and
    /// `ξ(T_i) = t_i`.
    pub fn xi(&self, w: &WeylElement) -> Result<ParamScalar> {
        let rw = self.weyl.reduced_word(w);
        if rw.omega != 0 {
            return Err(Error::Invariant("ξ is defined on W only".into()));
        }
        self.xi_word(&rw.word)
    }

    fn xi_word(&self, word: &[usize]) -> Result<ParamScalar> {
        let mut out = ParamScalar::one(self.namespace().len());
        for &i in word {
            out = &out * &self.xi_letter(i)?;
        }
        Ok(out)
    }

    /// `𝐭^{(λ,λ̄)} = ∏_i (t_i^* t_i)^{½(λ_−, λ_i^∨)}`. Away from two-parameter nodes `t_i^* = t_i`,
    /// so this is `(t_n^* t_n)^{½(λ_−, λ_n^∨)} ∏_{i<n} t_i^{(λ_−, λ_i^∨)}` whenever only `α_n` is special.
    pub fn t_power(&self, lambda: &Weight) -> Result<ParamScalar> {
        let data = self.weyl.orbit_data(lambda)?;
        let rs = self.weyl.root_system();
        let x = data.antidominant.to_rat();
        let mut exps: BTreeMap<usize, Rat> = BTreeMap::new();
        for i in 1..=rs.rank() {
            let half = rs.coweight_pair(&x, i) / rat(2);
            *exps.entry(self.classes.quad_class(i)).or_insert_with(Rat::zero) += &half;
            *exps.entry(self.classes.star_class(i)).or_insert_with(Rat::zero) += &half;
        }
        let mut e = vec![0i32; self.namespace().len()];
        for (class, v) in exps {
            let doubled = to_i64(&(v * rat(2)))
                .ok_or_else(|| Error::Invariant(format!("non-integral doubled exponent in 𝐭^(λ,λ̄) for {lambda:?}")))?;
            e[class] = doubled as i32;
        }
        Ok(ParamScalar::monomial(Monomial(e.into_boxed_slice())))
    }

    /// `j_λ = ξ(w_λ) 𝐭^{(λ,λ̄)}`.
    pub fn normalization(&self, lambda: &Weight) -> Result<NormalizationFactor> {
        let data = self.weyl.orbit_data(lambda)?;
        let xi = self.xi_word(&data.word)?;
        let t_power = self.t_power(lambda)?;
        Ok(NormalizationFactor { j: &xi * &t_power, xi, t_power })
    }

    /// `j_λ E_λ`, cached.
    pub fn unnormalized(&self, lambda: &Weight) -> Result<Arc<GroupAlgebraElement>> {
        self.cache.get_or_compute(&self.ctx, lambda, &|nu| Ok(self.normalization(nu)?.j))
    }

    /// `E_λ(∞, t)`.
    pub fn e(&self, lambda: &Weight) -> Result<GroupAlgebraElement> {
        let u = self.unnormalized(lambda)?;
        Ok(u.scale(&self.normalization(lambda)?.j.inverse()?))
    }

    /// `E_λ` recomputed from scratch as `j_λ^{-1} T_{w_λ}(j_{λ̃} e^{λ̃})` along the greedy reduced
    /// word of `w_λ`, bypassing the cache.
    pub fn e_direct(&self, lambda: &Weight) -> Result<GroupAlgebraElement> {
        let data = self.weyl.orbit_data(lambda)?;
        let base = GroupAlgebraElement::monomial(self.namespace(), data.minuscule.clone(), self.normalization(&data.minuscule)?.j);
        let u = self.ctx.apply_tw(&data.w, &base)?;
        Ok(u.scale(&self.normalization(lambda)?.j.inverse()?))
    }

    /// `E_λ` for many weights in parallel; results follow the input order.
    pub fn e_many(&self, lambdas: &[Weight]) -> Result<Vec<GroupAlgebraElement>> {
        lambdas.par_iter().map(|l| self.e(l)).collect()
    }
}

/// The isobaric divided difference `π_i f = (f − e^{−α_i} r_i f) / (1 − e^{−α_i})`, `i ≥ 1`.
pub fn demazure_pi(weyl: &WeylGroup, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let alpha = &weyl.root_system().simple_root(i).labels;
    let reflected = f.map_weights(|w| weyl.r(i).act(w));
    let numerator = f.try_sub(&reflected.shift(&alpha.scaled(-1)))?;
    string_quotient(&numerator, alpha, 1)
}

/// The Demazure character attached to `λ`: writing `λ = r_{i_1} ⋯ r_{i_k} λ_+` by descending
/// through negative labels, returns `π_{i_1} ⋯ π_{i_k} e^{λ_+}`.
pub fn demazure_limit(weyl: &WeylGroup, lambda: &Weight) -> Result<GroupAlgebraElement> {
    weyl.lattice().check(lambda)?;
    let mut x = lambda.clone();
    let mut word = Vec::new();
    while let Some(i) = (1..=weyl.rank()).find(|&i| x[i - 1] < 0) {
        x = weyl.r(i).act(&x);
        word.push(i);
    }
    let mut f = GroupAlgebraElement::exp(&Namespace::empty(), x);
    for &i in word.iter().rev() {
        f = demazure_pi(weyl, i, &f)?;
    }
    Ok(f)
}

/// Sets every parameter to 1.
pub fn at_t_one(f: &GroupAlgebraElement) -> GroupAlgebraElement {
    f.map_coeffs(&Namespace::empty(), |c| ParamScalar::constant(0, c.eval_one()))
}

/// The coefficientwise limit `s → ∞` after collapsing all half-powers to one symbol `s` and
/// normalizing the coefficient of `e^{lead}` to leading coefficient 1.
pub fn limit_t_infinity(f: &GroupAlgebraElement, lead: &Weight) -> Result<GroupAlgebraElement> {
    let lc = f.coeff(lead).collapse();
    let (&top, c_top) = lc
        .iter()
        .next_back()
        .ok_or_else(|| Error::Limit { weight: lead.0.clone(), coeff: "0".into() })?;
    let ns = Namespace::empty();
    let mut out = GroupAlgebraElement::zero(&ns);
    for (w, c) in f.terms() {
        let col = c.collapse();
        if let Some((&d, v)) = col.iter().next_back() {
            if d > top {
                return Err(Error::Limit { weight: w.0.clone(), coeff: c.display(f.namespace()) });
            }
            if d == top {
                out.add_term(w.clone(), ParamScalar::constant(0, v / c_top));
            }
        }
    }
    Ok(out)
}

/// The coefficient of `e^λ` in `E_λ` is 1.
pub fn is_monic(e: &GroupAlgebraElement, lambda: &Weight) -> bool {
    let c = e.coeff(lambda);
    c.is_one()
}

/// Whether the parameter named `name` occurs in any coefficient.
pub fn mentions_param(e: &GroupAlgebraElement, name: &str) -> bool {
    match e.namespace().index(name) {
        Some(k) => e.terms().values().any(|c| c.mentions(k)),
        None => false,
    }
}

/// Rational check helper: `1` as a parameter-free element.
pub fn one_free(rank: usize) -> GroupAlgebraElement {
    GroupAlgebraElement::monomial(&Namespace::empty(), Weight::zero(rank), ParamScalar::constant(0, Rat::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};

    fn engine(t: CartanType, n: usize, lat: &str) -> MacdonaldEngine {
        let rs = Arc::new(RootSystem::build(t, n).unwrap());
        let l = Arc::new(Lattice::new(&rs, lat.parse::<LatticeSpec>().unwrap()).unwrap());
        MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, l).unwrap())).unwrap()
    }

    #[test]
    fn base_cases() {
        let m = engine(CartanType::A, 2, "P");
        let zero = Weight(vec![0, 0]);
        assert_eq!(m.e(&zero).unwrap(), GroupAlgebraElement::exp(m.namespace(), zero.clone()));
        for nu in m.weyl().minuscule_set() {
            assert_eq!(m.e(nu).unwrap(), GroupAlgebraElement::exp(m.namespace(), nu.clone()));
        }
    }

    #[test]
    fn xi_examples() {
        let m = engine(CartanType::A, 1, "Q");
        let g = m.weyl();
        assert!(m.xi(&g.identity()).unwrap().is_one());
        assert_eq!(&m.xi(g.r(1)).unwrap(), m.context().quad(1));
        let w = g.r(0).mul(g.r(1));
        let (a, b) = m.classes().xi0_classes();
        let expect = &(&ParamScalar::var(2, a, 1) * &ParamScalar::var(2, b, 1)) * m.context().quad(1);
        assert_eq!(m.xi(&w).unwrap(), expect);
    }

    #[test]
    fn t_power_examples() {
        let m = engine(CartanType::A, 1, "P");
        assert!(m.t_power(&Weight(vec![0])).unwrap().is_one());
        // λ = α: (t_1 t_1)^{-1/2} = t_1^{-1}
        assert_eq!(m.t_power(&Weight(vec![2])).unwrap(), ParamScalar::var(1, 0, -2));
        assert_eq!(m.t_power(&Weight(vec![2])).unwrap(), m.t_power(&Weight(vec![-2])).unwrap());
    }

    #[test]
    fn monic_small() {
        for (t, n, l) in [(CartanType::A, 1, "P"), (CartanType::A, 1, "Q"), (CartanType::B, 2, "Q"), (CartanType::BC, 1, "Q")] {
            let m = engine(t, n, l);
            for lam in m.weyl().weights_up_to_length(5) {
                let e = m.e(&lam).unwrap();
                assert!(is_monic(&e, &lam), "{t}{n} {l} λ={lam:?}: {e}");
                assert_eq!(at_t_one(&e), GroupAlgebraElement::exp(&Namespace::empty(), lam.clone()));
                assert_eq!(limit_t_infinity(&e, &lam).unwrap(), demazure_limit(m.weyl(), &lam).unwrap());
            }
        }
    }

    #[test]
    fn limit_examples() {
        let ns = Namespace::new(["t1"]);
        let l = Weight(vec![2]);
        let mu = Weight(vec![0]);
        let t = ParamScalar::var(1, 0, 2);
        let c = &(&t - &ParamScalar::one(1)) * &t.inverse().unwrap();
        let mut f = GroupAlgebraElement::exp(&ns, l.clone());
        f.add_term(mu.clone(), -&c);
        let mut expect = GroupAlgebraElement::exp(&Namespace::empty(), l.clone());
        expect.add_term(mu, ParamScalar::integer(0, -1));
        assert_eq!(limit_t_infinity(&f, &l).unwrap(), expect);
    }

    #[test]
    fn pi_idempotent() {
        let m = engine(CartanType::A, 2, "P");
        let f = GroupAlgebraElement::exp(&Namespace::empty(), Weight(vec![2, -1]));
        for i in 1..=2 {
            let a = demazure_pi(m.weyl(), i, &f).unwrap();
            assert_eq!(demazure_pi(m.weyl(), i, &a).unwrap(), a);
        }
    }
}
