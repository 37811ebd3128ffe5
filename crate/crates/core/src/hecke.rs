//! The polynomial representation of the affine Hecke algebra at `q = ∞`.
//!
//! `T_1, …, T_n` act on exponentials by Demazure–Lusztig formulas with closed-form string sums.
//! A generator whose root pairs evenly with the whole lattice (always the case for `α_n` in
//! `BC_n`) uses the two-parameter form
//!
//! ```text
//! T e^λ = t e^{rλ} + (t − 1 + t^{1/2}(t'^{1/2} − t'^{−1/2}) e^{−α}) (e^λ − e^{rλ}) / (1 − e^{−2α}).
//! ```
//!
//! `T_0` is the composite `𝔱(t_{μ_0})^{1/2} X_{μ_0} T_{r_θ}^{-1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Signed;

use crate::coeffs::{string_quotient, GroupAlgebraElement, Monomial, Namespace, ParamScalar};
use crate::linalg::rat;
use crate::rootdata::{AffineRoot, OrbitTable, Weight};
use crate::weyl::{WeylElement, WeylGroup};
use crate::{Error, Rat, Result};

/// Orbits of affine roots merged under `Ω`: the independent Hecke parameters of `W^e`.
#[derive(Clone, Debug)]
pub struct ParamClasses {
    ns: Arc<Namespace>,
    orbits: OrbitTable,
    class_of_orbit: Vec<usize>,
    aliases: BTreeMap<String, usize>,
    quad: Vec<usize>,
    cross: Vec<Option<usize>>,
    xi0: (usize, usize),
    star: Vec<usize>,
}

impl ParamClasses {
    pub fn new(weyl: &WeylGroup) -> Result<Self> {
        let rs = weyl.root_system();
        let n = rs.rank();
        let orbits = OrbitTable::new(rs)?;
        let mut parent: Vec<usize> = (0..orbits.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let union = |a: usize, b: usize, p: &mut Vec<usize>| {
            let (x, y) = (find(p, a), find(p, b));
            if x != y {
                p[x.max(y)] = x.min(y);
            }
        };
        for o in weyl.omega() {
            for i in 0..=n {
                let j = o.perm[i];
                union(orbits.simple_orbit(i), orbits.simple_orbit(j), &mut parent);
                if let (Some(a), Some(b)) = (orbits.double_orbit(i), orbits.double_orbit(j)) {
                    union(a, b, &mut parent);
                }
            }
        }

        let priority: Vec<String> = if rs.is_reduced() {
            (1..=n).map(|i| format!("t{i}")).chain(["t0", "t01", "t02", "t03"].map(String::from)).collect()
        } else {
            ["t01", "t02", "t03"].map(String::from).into_iter().chain((1..=n).map(|i| format!("t{i}"))).collect()
        };
        let mut root_to_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut aliases = BTreeMap::new();
        for name in &priority {
            let orbit = orbits.alias(name).ok_or_else(|| Error::Invariant(format!("alias {name} unbound")))?;
            let root = find(&mut parent, orbit);
            let next = names.len();
            let class = *root_to_class.entry(root).or_insert_with(|| {
                names.push(name.clone());
                next
            });
            aliases.insert(name.clone(), class);
        }
        let mut class_of_orbit = Vec::with_capacity(orbits.len());
        for o in 0..orbits.len() {
            let root = find(&mut parent, o);
            let next = names.len();
            let class = *root_to_class.entry(root).or_insert_with(|| {
                names.push(format!("o{o}"));
                next
            });
            class_of_orbit.push(class);
        }
        let ns = Namespace::new(names);
        let class_of = |a: &AffineRoot| class_of_orbit[orbits.orbit_of(a)];
        let first_shift = |root: usize| -> AffineRoot {
            let shift2 = (1..).find(|&s| rs.is_affine_root(root, s)).unwrap();
            AffineRoot { root, shift2 }
        };

        let mut quad: Vec<usize> = (0..=n).map(|i| class_of(&rs.affine_simple(i))).collect();
        let mut cross: Vec<Option<usize>> = vec![None; n + 1];
        if rs.is_reduced() {
            for i in 1..=n {
                if weyl.lattice().basis().iter().all(|b| b[i - 1] % 2 == 0) {
                    cross[i] = Some(class_of(&first_shift(rs.simple_index(i))));
                }
            }
        } else {
            quad[0] = aliases["t03"];
            quad[n] = class_of(&rs.affine_double(n).unwrap());
            cross[n] = Some(aliases["t03"]);
        }
        let xi0 = (aliases["t01"], aliases["t03"]);
        let star = (1..=n)
            .map(|i| {
                let c = if i == n { rs.c0() } else { 1 };
                let scaled: Vec<i64> = rs.simple_root(i).simple.iter().map(|x| x * c).collect();
                class_of(&first_shift(rs.root_index(&scaled).unwrap()))
            })
            .collect();
        Ok(ParamClasses { ns, orbits, class_of_orbit, aliases, quad, cross, xi0, star })
    }

    /// The generic namespace, one parameter per class.
    pub fn namespace(&self) -> &Arc<Namespace> {
        &self.ns
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }

    pub fn class_of_orbit(&self, orbit: usize) -> usize {
        self.class_of_orbit[orbit]
    }

    /// Parameter aliases (`t01`, `t02`, `t03`, `t1`, …) and the class each denotes.
    pub fn aliases(&self) -> &BTreeMap<String, usize> {
        &self.aliases
    }

    pub fn alias(&self, name: &str) -> Option<usize> {
        self.aliases.get(name).copied()
    }

    /// Class of the quadratic parameter of `T_i`.
    pub fn quad_class(&self, i: usize) -> usize {
        self.quad[i]
    }

    /// Class of the second parameter of a two-parameter generator `T_i`.
    pub fn cross_class(&self, i: usize) -> Option<usize> {
        self.cross[i]
    }

    /// Classes of `t_{01}` and `t_{03}` entering `ξ(T_0)`.
    pub fn xi0_classes(&self) -> (usize, usize) {
        self.xi0
    }

    /// Class of `t_i^*`, the parameter of `c α_i + mδ` with `m > 0` minimal (`c = c_0` for
    /// `i = n`, else 1). It differs from `t_i` exactly at two-parameter nodes.
    pub fn star_class(&self, i: usize) -> usize {
        self.star[i - 1]
    }

    /// Class of `t_n^*`.
    pub fn tn_star_class(&self) -> usize {
        self.star_class(self.star.len())
    }

    /// The monomial `t_c` (full power) for a class.
    pub fn param(&self, class: usize) -> Monomial {
        Monomial::var(self.ns.len(), class, 2)
    }

    /// The generic Hecke context.
    pub fn generic_context(&self, weyl: Arc<WeylGroup>) -> Result<HeckeContext> {
        let quad = self.quad.iter().map(|&c| self.param(c)).collect();
        let cross = self.cross.iter().map(|c| c.map(|c| self.param(c))).collect();
        HeckeContext::new(weyl, self.ns.clone(), quad, cross)
    }
}

/// Parameters and cached data for the operators `T_0, …, T_n` in a given namespace.
#[derive(Clone, Debug)]
pub struct HeckeContext {
    weyl: Arc<WeylGroup>,
    ns: Arc<Namespace>,
    quad: Vec<ParamScalar>,
    quad_minus_one: Vec<ParamScalar>,
    quad_inv: Vec<ParamScalar>,
    cross_term: Vec<Option<ParamScalar>>,
    alphas: Vec<Weight>,
    rtheta_word: Vec<usize>,
    t0_const: ParamScalar,
}

impl HeckeContext {
    /// Builds a context from the quadratic parameters `quad[i]` of `T_i` (`0 ≤ i ≤ n`) and the
    /// second parameters of two-parameter generators.
    pub fn new(weyl: Arc<WeylGroup>, ns: Arc<Namespace>, quad: Vec<Monomial>, cross: Vec<Option<Monomial>>) -> Result<Self> {
        let n = weyl.rank();
        let k = ns.len();
        let quad: Vec<ParamScalar> = quad.into_iter().map(ParamScalar::monomial).collect();
        let one = ParamScalar::one(k);
        let quad_minus_one = quad.iter().map(|t| t - &one).collect();
        let quad_inv = quad.iter().map(|t| t.inverse()).collect::<Result<Vec<_>>>()?;
        let mut cross_term = Vec::with_capacity(n + 1);
        for (i, c) in cross.into_iter().enumerate() {
            cross_term.push(match c {
                Some(c) if i > 0 => {
                    let half = ParamScalar::monomial(c).sqrt()?;
                    Some(&quad[i].sqrt()? * &(&half - &half.inverse()?))
                }
                Some(_) => return Err(Error::Invariant("T_0 cannot be a two-parameter generator".into())),
                None => None,
            });
        }
        let rs = weyl.root_system().clone();
        let alphas = (0..=n).map(|i| if i == 0 { weyl.mu0().scaled(-1) } else { rs.simple_root(i).labels.clone() }).collect();

        let r_theta = weyl.r(0).finite_part();
        let rtheta_word = weyl.reduced_word(&r_theta).word;
        let t_mu0 = weyl.translation(weyl.mu0())?;
        let (lt, lr) = (weyl.length(&t_mu0), rtheta_word.len());
        if lt != lr + 1 {
            return Err(Error::Invariant(format!("ℓ(t_μ0) = {lt} but ℓ(r_θ) = {lr}")));
        }
        let tau_mu0 = rtheta_word.iter().fold(quad[0].clone(), |acc, &j| &acc * &quad[j]);
        let t0_const = tau_mu0.sqrt()?;
        Ok(HeckeContext { weyl, ns, quad, quad_minus_one, quad_inv, cross_term, alphas, rtheta_word, t0_const })
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn namespace(&self) -> &Arc<Namespace> {
        &self.ns
    }

    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    /// The quadratic parameter of `T_i`.
    pub fn quad(&self, i: usize) -> &ParamScalar {
        &self.quad[i]
    }

    /// Whether `T_i` uses the two-parameter form.
    pub fn is_two_parameter(&self, i: usize) -> bool {
        self.cross_term[i].is_some()
    }

    /// The reduced word of `r_θ` used by the composite `T_0`.
    pub fn rtheta_word(&self) -> &[usize] {
        &self.rtheta_word
    }

    /// The constant `𝔱(t_{μ_0})^{1/2}` in front of the composite `T_0`.
    pub fn t0_constant(&self) -> &ParamScalar {
        &self.t0_const
    }

    /// Test hook: rescales the `T_0` constant, breaking the quadratic relation on purpose.
    pub fn with_corrupted_t0(mut self, factor: Rat) -> Self {
        self.t0_const = self.t0_const.scale(&factor);
        self
    }

    /// `α_i` in fundamental-weight coordinates (`α_0` means its finite part `−θ/c_0`).
    pub fn alpha(&self, i: usize) -> &Weight {
        &self.alphas[i]
    }

    /// The Demazure–Lusztig operator `T_i` for `1 ≤ i ≤ n`.
    pub fn apply_ti(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        if i == 0 || i > self.rank() {
            return Err(Error::Invariant(format!("T_{i} is not a finite generator")));
        }
        if self.cross_term[i].is_some() {
            return self.apply_two_parameter(i, f);
        }
        let alpha = &self.alphas[i];
        let t = &self.quad[i];
        let tm1 = &self.quad_minus_one[i];
        let mut out = GroupAlgebraElement::zero(&self.ns);
        for (lam, c) in f.terms() {
            let m = lam[i - 1];
            out.add_term(lam.add_scaled(alpha, -m), t * c);
            if m != 0 {
                let d = tm1 * c;
                if m > 0 {
                    for k in 0..m {
                        out.add_term_ref(&lam.add_scaled(alpha, -k), &d);
                    }
                } else {
                    let d = -&d;
                    for k in 1..=-m {
                        out.add_term_ref(&lam.add_scaled(alpha, k), &d);
                    }
                }
            }
        }
        Ok(out)
    }

    fn apply_two_parameter(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let alpha = &self.alphas[i];
        let t = &self.quad[i];
        let tm1 = &self.quad_minus_one[i];
        let x = self.cross_term[i].as_ref().unwrap();
        let mut out = GroupAlgebraElement::zero(&self.ns);
        for (lam, c) in f.terms() {
            let m = lam[i - 1];
            if m % 2 != 0 {
                return Err(Error::Invariant(format!("odd pairing ⟨{lam:?}, α_{i}^∨⟩ = {m} in a two-parameter generator")));
            }
            out.add_term(lam.add_scaled(alpha, -m), t * c);
            if m != 0 {
                let (ks, sign): (Vec<i64>, i64) = if m > 0 { ((0..m).step_by(2).map(|k| -k).collect(), 1) } else { ((2..=-m).step_by(2).collect(), -1) };
                let a = tm1 * c;
                let b = x * c;
                let (a, b) = if sign < 0 { (-&a, -&b) } else { (a, b) };
                for k in ks {
                    let mu = lam.add_scaled(alpha, k);
                    out.add_term(mu.add_scaled(alpha, -1), b.clone());
                    out.add_term(mu, a.clone());
                }
            }
        }
        Ok(out)
    }

    /// `T_n` of a nonreduced system, where `2α_n` is a root.
    pub fn apply_tn_nonreduced(&self, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let n = self.rank();
        if self.weyl.root_system().is_reduced() {
            return Err(Error::Invariant("T_n nonreduced form requested for a reduced system".into()));
        }
        self.apply_two_parameter(n, f)
    }

    /// `T_i^{-1} = t_i^{-1}(T_i − (t_i − 1))`.
    pub fn apply_ti_inv(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let g = self.apply_generator(i, f)?;
        let h = g.try_sub(&f.scale(&self.quad_minus_one[i]))?;
        Ok(h.scale(&self.quad_inv[i]))
    }

    /// Multiplication by `e^μ`.
    pub fn apply_x(&self, mu: &Weight, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.weyl.lattice().check(mu)?;
        Ok(f.shift(mu))
    }

    /// The composite `T_0 = 𝔱(t_{μ_0})^{1/2} X_{μ_0} T_{r_θ}^{-1}`.
    pub fn apply_t0(&self, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let mut g = f.clone();
        for &j in &self.rtheta_word {
            g = self.apply_ti_inv(j, &g)?;
        }
        Ok(g.shift(self.weyl.mu0()).scale(&self.t0_const))
    }

    /// `T_i` for any `0 ≤ i ≤ n`.
    pub fn apply_generator(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        if i == 0 {
            self.apply_t0(f)
        } else {
            self.apply_ti(i, f)
        }
    }

    /// `T_{r_{i_1}} ∘ ⋯ ∘ T_{r_{i_ℓ}}` applied to `f` (rightmost letter first).
    pub fn apply_word(&self, word: &[usize], f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.apply_generator(i, &g)?;
        }
        Ok(g)
    }

    /// `T_w` for `w ∈ W`, along the greedy reduced word.
    pub fn apply_tw(&self, w: &WeylElement, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let rw = self.weyl.reduced_word(w);
        if rw.omega != 0 {
            return Err(Error::Invariant("T_w requested for w outside W (nontrivial Ω part)".into()));
        }
        self.apply_word(&rw.word, f)
    }

    /// Order of `r_i r_j` from the affine Cartan matrix; `None` when infinite.
    pub fn braid_order(&self, i: usize, j: usize) -> Option<usize> {
        let rs = self.weyl.root_system();
        let ri = rs.root(rs.affine_simple(i).root);
        let rj = rs.root(rs.affine_simple(j).root);
        let p = rs.pair_roots(ri, rj) * rs.pair_roots(rj, ri);
        match p {
            p if p == rat(0) => Some(2),
            p if p == rat(1) => Some(3),
            p if p == rat(2) => Some(4),
            p if p == rat(3) => Some(6),
            _ => None,
        }
    }

    /// `T_i² f − (t_i − 1) T_i f − t_i f`.
    pub fn quadratic_defect(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let g = self.apply_generator(i, f)?;
        let gg = self.apply_generator(i, &g)?;
        gg.try_sub(&g.scale(&self.quad_minus_one[i]))?.try_sub(&f.scale(&self.quad[i]))
    }

    /// `T_i T_j T_i ⋯ f − T_j T_i T_j ⋯ f` with `m_{ij}` factors on each side.
    pub fn braid_defect(&self, i: usize, j: usize, f: &GroupAlgebraElement) -> Result<Option<GroupAlgebraElement>> {
        let Some(m) = self.braid_order(i, j) else { return Ok(None) };
        let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
        let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
        Ok(Some(self.apply_word(&w1, f)?.try_sub(&self.apply_word(&w2, f)?)?))
    }

    /// `T_i X_λ f − X_{r_iλ} T_i f` minus the right-hand side of the Bernstein–Lusztig relation,
    /// the latter computed by string division in the group algebra.
    pub fn bernstein_defect(&self, i: usize, lambda: &Weight, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let alpha = &self.alphas[i];
        let r_lambda = lambda.add_scaled(alpha, -lambda[i - 1]);
        let lhs = self
            .apply_ti(i, &f.shift(lambda))?
            .try_sub(&self.apply_ti(i, f)?.shift(&r_lambda))?;
        let diff = GroupAlgebraElement::exp(&self.ns, lambda.clone())
            .try_sub(&GroupAlgebraElement::exp(&self.ns, r_lambda))?;
        let factor = match &self.cross_term[i] {
            None => string_quotient(&diff, alpha, 1)?.scale(&self.quad_minus_one[i]),
            Some(x) => {
                let q = string_quotient(&diff, alpha, 2)?;
                let mut mult = GroupAlgebraElement::monomial(&self.ns, Weight::zero(self.rank()), self.quad_minus_one[i].clone());
                mult.add_term(alpha.scaled(-1), x.clone());
                q.try_mul(&mult)?
            }
        };
        lhs.try_sub(&factor.try_mul(f)?)
    }
}

/// Memo table for the recursion `U_λ = T_i U_{r_i λ}` along greedy wall crossings, with the
/// base values `U_ν = base(ν) e^ν` on minuscule weights.
#[derive(Debug, Default)]
pub struct RecursionCache {
    map: Mutex<HashMap<Weight, Arc<GroupAlgebraElement>>>,
}

impl RecursionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, w: &Weight) -> Option<Arc<GroupAlgebraElement>> {
        self.map.lock().unwrap().get(w).cloned()
    }

    /// Returns `T_{w_λ}(base(λ̃) e^{λ̃})`, reusing every cached weight on the greedy chain.
    pub fn get_or_compute(
        &self,
        ctx: &HeckeContext,
        lambda: &Weight,
        base: &dyn Fn(&Weight) -> Result<ParamScalar>,
    ) -> Result<Arc<GroupAlgebraElement>> {
        let weyl = ctx.weyl();
        weyl.lattice().check(lambda)?;
        let mut chain: Vec<(Weight, usize)> = Vec::new();
        let mut x = lambda.clone();
        let mut value = loop {
            if let Some(v) = self.lookup(&x) {
                break v;
            }
            match (0..=weyl.rank()).find(|&i| weyl.wall_value(i, &x).is_negative()) {
                Some(i) => {
                    let y = weyl.r(i).act(&x);
                    chain.push((x, i));
                    x = y;
                }
                None => {
                    let v = Arc::new(GroupAlgebraElement::monomial(ctx.namespace(), x.clone(), base(&x)?));
                    self.map.lock().unwrap().insert(x.clone(), v.clone());
                    break v;
                }
            }
        };
        for (w, i) in chain.into_iter().rev() {
            value = Arc::new(ctx.apply_generator(i, &value)?);
            self.map.lock().unwrap().insert(w, value.clone());
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};

    fn ctx(t: CartanType, n: usize, lat: &str) -> (ParamClasses, HeckeContext) {
        let rs = Arc::new(RootSystem::build(t, n).unwrap());
        let l = Arc::new(Lattice::new(&rs, lat.parse::<LatticeSpec>().unwrap()).unwrap());
        let g = Arc::new(WeylGroup::new(rs, l).unwrap());
        let pc = ParamClasses::new(&g).unwrap();
        let c = pc.generic_context(g).unwrap();
        (pc, c)
    }

    fn e(c: &HeckeContext, v: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::exp(c.namespace(), Weight(v.to_vec()))
    }

    #[test]
    fn t1_on_zero() {
        let (_, c) = ctx(CartanType::A, 1, "P");
        assert_eq!(c.apply_ti(1, &e(&c, &[0])).unwrap(), e(&c, &[0]).scale(c.quad(1)));
    }

    #[test]
    fn t1_on_minus_alpha() {
        let (_, c) = ctx(CartanType::A, 1, "P");
        let got = c.apply_ti(1, &e(&c, &[-2])).unwrap();
        let tm1 = c.quad(1) - &ParamScalar::one(1);
        assert_eq!(got, e(&c, &[2]).try_sub(&e(&c, &[0]).scale(&tm1)).unwrap());
    }

    #[test]
    fn t0_a1_on_one() {
        let (_, c) = ctx(CartanType::A, 1, "P");
        let g = c.apply_t0(&e(&c, &[0])).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.terms().contains_key(&Weight(vec![2])));
    }

    #[test]
    fn bc1_tn() {
        let (pc, c) = ctx(CartanType::BC, 1, "Q");
        assert!(c.is_two_parameter(1));
        let one = e(&c, &[0]);
        assert_eq!(c.apply_tn_nonreduced(&one).unwrap(), one.scale(c.quad(1)));
        let f = e(&c, &[-2]);
        let g = c.apply_tn_nonreduced(&f).unwrap();
        // multiply back: (1 − e^{−2α}) (T f − t e^{rλ}) = numerator
        let ns = c.namespace();
        let t = c.quad(1);
        let h = pc.param(pc.alias("t03").unwrap());
        let h = ParamScalar::monomial(h).sqrt().unwrap();
        let x = &t.sqrt().unwrap() * &(&h - &h.inverse().unwrap());
        let tm1 = t - &ParamScalar::one(ns.len());
        let diff = e(&c, &[-2]).try_sub(&e(&c, &[2])).unwrap();
        let mut mult = GroupAlgebraElement::monomial(ns, Weight(vec![0]), tm1);
        mult.add_term(Weight(vec![-2]), x);
        let numerator = mult.try_mul(&diff).unwrap();
        let rest = g.try_sub(&e(&c, &[2]).scale(t)).unwrap();
        let denom = e(&c, &[0]).try_sub(&e(&c, &[-4])).unwrap();
        assert_eq!(rest.try_mul(&denom).unwrap(), numerator);
    }

    #[test]
    fn quadratic_and_braid_small() {
        for (t, n, l) in [(CartanType::A, 1, "P"), (CartanType::A, 1, "Q"), (CartanType::B, 2, "Q"), (CartanType::C, 2, "P"), (CartanType::BC, 2, "Q")] {
            let (_, c) = ctx(t, n, l);
            let basis = c.weyl().lattice().box_points(1);
            for f in basis.iter().map(|w| GroupAlgebraElement::exp(c.namespace(), w.clone())) {
                for i in 0..=n {
                    assert!(c.quadratic_defect(i, &f).unwrap().is_zero(), "{t}{n} quad T_{i} on {f}");
                    for j in 0..i {
                        if let Some(d) = c.braid_defect(i, j, &f).unwrap() {
                            assert!(d.is_zero(), "{t}{n} braid {i}{j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classes() {
        let (pc, _) = ctx(CartanType::A, 1, "Q");
        assert_eq!(pc.namespace().names(), &["t1".to_string(), "t0".to_string()]);
        let (pc, _) = ctx(CartanType::A, 1, "P");
        assert_eq!(pc.namespace().names(), &["t1".to_string()]);
        let (pc, _) = ctx(CartanType::BC, 2, "Q");
        assert_eq!(pc.namespace().len(), 5);
    }
}
