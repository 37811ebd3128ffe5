//! The extended affine Weyl group `W^e = W̊ ⋉ Λ`.
//!
//! Elements are stored as `t_μ ẘ` with the finite part given by its integer matrix on
//! fundamental-weight coordinates. Lengths count separating hyperplanes at a fixed interior
//! point of the fundamental alcove, and reduced words come from greedy right descent.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::linalg::{rat, ratio};
use crate::rootdata::{Lattice, RootSystem, Weight};
use crate::{Error, Rat, Result};

/// An element `t_μ ẘ` of `W^e`.
#[derive(Clone, Debug)]
pub struct WeylElement {
    translation: Weight,
    mat: Arc<[i64]>,
    inv: Arc<[i64]>,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.translation == other.translation && self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.translation.hash(state);
        self.mat.hash(state);
    }
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Arc<[i64]> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x != 0 {
                for c in 0..n {
                    out[r * n + c] += x * b[k * n + c];
                }
            }
        }
    }
    out.into()
}

fn mat_apply(a: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|r| (0..n).map(|c| a[r * n + c] * v[c]).sum()).collect()
}

fn identity(n: usize) -> Arc<[i64]> {
    (0..n * n).map(|k| i64::from(k / n == k % n)).collect::<Vec<_>>().into()
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { translation: Weight::zero(n), mat: identity(n), inv: identity(n), word: Vec::new() }
    }

    /// The translation part `μ` of `t_μ ẘ`.
    pub fn translation(&self) -> &Weight {
        &self.translation
    }

    /// A word in `r_1..r_n` for the finite part (not necessarily reduced).
    pub fn finite_word(&self) -> &[usize] {
        &self.word
    }

    /// The matrix of the finite part on fundamental-weight coordinates, row major.
    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn rank(&self) -> usize {
        self.translation.len()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && *self.mat == *identity(self.rank())
    }

    /// The finite part `ẘ` as an element of `W^e`.
    pub fn finite_part(&self) -> WeylElement {
        WeylElement { translation: Weight::zero(self.rank()), ..self.clone() }
    }

    pub fn is_finite(&self) -> bool {
        self.translation.is_zero()
    }

    /// `(μ_1, ẘ_1)(μ_2, ẘ_2) = (μ_1 + ẘ_1 μ_2, ẘ_1 ẘ_2)`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let t = self.translation.add(&Weight(mat_apply(&self.mat, &other.translation, n)));
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { translation: t, mat: mat_mul(&self.mat, &other.mat, n), inv: mat_mul(&other.inv, &self.inv, n), word }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let t = Weight(mat_apply(&self.inv, &self.translation, n)).scaled(-1);
        let word = self.word.iter().rev().copied().collect();
        WeylElement { translation: t, mat: self.inv.clone(), inv: self.mat.clone(), word }
    }

    /// Linear action of the finite part on an integral weight.
    pub fn apply_linear(&self, x: &Weight) -> Weight {
        Weight(mat_apply(&self.mat, x, self.rank()))
    }

    /// The level-zero affine action `w · x = ẘ(x) + μ` on an integral weight.
    pub fn act(&self, x: &Weight) -> Weight {
        self.apply_linear(x).add(&self.translation)
    }

    /// The affine action on a rational point.
    pub fn act_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|r| (0..n).map(|c| rat(self.mat[r * n + c]) * &x[c]).sum::<Rat>() + rat(self.translation[r]))
            .collect()
    }
}

/// A reduced expression `w = ω · r_{i_1} ⋯ r_{i_ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    /// Index into [`WeylGroup::omega`].
    pub omega: usize,
    pub word: Vec<usize>,
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w =")?;
        if self.omega != 0 {
            write!(f, " omega{} *", self.omega)?;
        } else if self.word.is_empty() {
            return write!(f, " 1");
        }
        for i in &self.word {
            write!(f, " r{i}")?;
        }
        Ok(())
    }
}

/// An element of the length-zero subgroup `Ω`.
#[derive(Clone, Debug)]
pub struct OmegaElement {
    /// The minuscule weight `ν` with `ω = t_ν ẘ_ν`.
    pub weight: Weight,
    pub element: WeylElement,
    /// `ω r_i ω^{-1} = r_{perm[i]}`.
    pub perm: Vec<usize>,
}

/// The distinguished representatives attached to a weight.
#[derive(Clone, Debug)]
pub struct WeightOrbitData {
    pub lambda: Weight,
    /// `λ̃`, the minuscule weight in the `W`-orbit of `λ`.
    pub minuscule: Weight,
    /// Word with `w_λ = r_{word[0]} ⋯ r_{word[k-1]}`, one step per separating wall.
    pub word: Vec<usize>,
    /// `w_λ`, minimal with `w_λ · λ̃ = λ`.
    pub w: WeylElement,
    /// `λ_−`, the antidominant element of `W̊λ`.
    pub antidominant: Weight,
    /// `ẘ_λ`, minimal with `ẘ_λ^{-1}(λ) = λ_−`.
    pub finite: WeylElement,
}

/// The group `W^e` for a root system and lattice, with cached generators and `Ω`.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    lattice: Arc<Lattice>,
    gens: Vec<WeylElement>,
    mu0: Weight,
    theta_fund: Vec<Rat>,
    sample: Vec<i64>,
    sample_den: i64,
    coroots2: Vec<Vec<i64>>,
    minuscule: Vec<Weight>,
    omega: Vec<OmegaElement>,
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>, lattice: Arc<Lattice>) -> Result<Self> {
        let n = rs.rank();
        let mu0 = rs.mu0().labels.clone();
        lattice.check(&mu0).map_err(|_| Error::UnsupportedLattice(format!("θ/c_0 = {mu0:?} not in Λ")))?;

        let mut gens = Vec::with_capacity(n + 1);
        let reflection = |alpha: &Weight, coroot: &[i64]| -> Arc<[i64]> {
            let mut m: Vec<i64> = identity(n).to_vec();
            for r in 0..n {
                for c in 0..n {
                    m[r * n + c] -= alpha[r] * coroot[c];
                }
            }
            m.into()
        };
        let mu0_coroot: Vec<i64> = rs
            .mu0()
            .coroot
            .iter()
            .map(|c| c.to_integer().to_i64().filter(|_| c.is_integer()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invariant("θ/c_0 has a non-integral coroot".into()))?;
        let s_theta = reflection(&mu0, &mu0_coroot);
        gens.push(WeylElement { translation: mu0.clone(), mat: s_theta.clone(), inv: s_theta, word: Vec::new() });
        for i in 1..=n {
            let unit: Vec<i64> = (0..n).map(|c| i64::from(c == i - 1)).collect();
            let m = reflection(&rs.simple_root(i).labels, &unit);
            gens.push(WeylElement { translation: Weight::zero(n), mat: m.clone(), inv: m, word: vec![i] });
        }
        // the finite part of r_0 is s_θ; record a word for it lazily below
        let theta_fund = rs.theta_fundamental();

        // sample point: half the barycenter of the alcove vertices 0 and λ_k / (θ, λ_k)
        let xs: Vec<Rat> = theta_fund.iter().map(|t| ratio(1, 2 * (n as i64 + 1)) / t).collect();
        let den = xs.iter().fold(1i64, |acc, x| acc.lcm(&x.denom().to_i64().unwrap()));
        let sample: Vec<i64> = xs.iter().map(|x| (x * rat(den)).to_integer().to_i64().unwrap()).collect();
        let coroots2: Vec<Vec<i64>> = rs
            .positive_roots()
            .iter()
            .filter(|r| r.indivisible)
            .map(|r| r.coroot.iter().map(|c| (c * rat(2)).to_integer().to_i64().unwrap()).collect())
            .collect();

        let mut g = WeylGroup {
            rs,
            lattice,
            gens,
            mu0,
            theta_fund,
            sample,
            sample_den: den,
            coroots2,
            minuscule: Vec::new(),
            omega: Vec::new(),
        };
        let word = g.reduced_word_finite(&g.gens[0].finite_part());
        g.gens[0].word = word;
        g.minuscule = g.enumerate_minuscule();
        g.omega = g.build_omega()?;
        Ok(g)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank())
    }

    /// The simple affine reflection `r_i`, `0 ≤ i ≤ n`.
    pub fn r(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    /// The translation `t_μ`.
    pub fn translation(&self, mu: &Weight) -> Result<WeylElement> {
        self.lattice.check(mu)?;
        let n = self.rank();
        Ok(WeylElement { translation: mu.clone(), mat: identity(n), inv: identity(n), word: Vec::new() })
    }

    /// `μ_0 = θ / c_0` in fundamental-weight coordinates.
    pub fn mu0(&self) -> &Weight {
        &self.mu0
    }

    /// Product of generators along a word.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(&self.gens[i]))
    }

    /// `a_i(x)` up to a positive factor: the sign tells which side of the wall `x` lies on.
    pub fn wall_value(&self, i: usize, x: &Weight) -> Rat {
        if i == 0 {
            let t: Rat = x.iter().zip(&self.theta_fund).map(|(&a, b)| rat(a) * b).sum();
            (rat(1) - t) / rat(self.rs.c0())
        } else {
            rat(x[i - 1])
        }
    }

    fn hyperplane_floors(&self, w: &WeylElement) -> Vec<i64> {
        let n = self.rank();
        let den = self.sample_den;
        let x: Vec<i64> = (0..n)
            .map(|r| (0..n).map(|c| w.mat[r * n + c] * self.sample[c]).sum::<i64>() + den * w.translation[r])
            .collect();
        self.coroots2
            .iter()
            .map(|cr| {
                let p: i64 = cr.iter().zip(&x).map(|(a, b)| a * b).sum();
                debug_assert!(p % (2 * den) != 0, "sample point on a wall");
                p.div_euclid(2 * den)
            })
            .collect()
    }

    /// Number of affine hyperplanes separating the fundamental alcove from its image.
    pub fn length(&self, w: &WeylElement) -> usize {
        let base = self.hyperplane_floors(&self.identity());
        let moved = self.hyperplane_floors(w);
        base.iter().zip(&moved).map(|(a, b)| (a - b).unsigned_abs() as usize).sum()
    }

    fn reduced_word_finite(&self, w: &WeylElement) -> Vec<usize> {
        let mut cur = w.clone();
        let mut word = Vec::new();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next, l) = (1..=self.rank())
                .map(|i| {
                    let x = cur.mul(&self.gens[i]);
                    let l = self.length(&x);
                    (i, x, l)
                })
                .find(|(_, _, l)| *l < len)
                .expect("finite element of positive length has a finite descent");
            word.push(i);
            cur = next;
            len = l;
        }
        word.reverse();
        word
    }

    /// Greedy right-descent reduced word, smallest index first.
    pub fn reduced_word(&self, w: &WeylElement) -> ReducedWord {
        let mut cur = w.clone();
        let mut word = Vec::new();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next, l) = (0..=self.rank())
                .map(|i| {
                    let x = cur.mul(&self.gens[i]);
                    let l = self.length(&x);
                    (i, x, l)
                })
                .find(|(_, _, l)| *l < len)
                .expect("element of positive length has a descent");
            word.push(i);
            cur = next;
            len = l;
        }
        word.reverse();
        let omega = self.omega.iter().position(|o| o.element == cur).expect("length-zero element lies in Ω");
        ReducedWord { omega, word }
    }

    /// Rebuilds `ω · r_{i_1} ⋯ r_{i_ℓ}`.
    pub fn compose(&self, rw: &ReducedWord) -> WeylElement {
        self.omega[rw.omega].element.mul(&self.from_word(&rw.word))
    }

    /// The minuscule weights `𝒪_Λ`, i.e. lattice points of the closed fundamental alcove.
    pub fn minuscule_set(&self) -> &[Weight] {
        &self.minuscule
    }

    /// `Ω`, indexed consistently with [`Self::minuscule_set`]; entry 0 is the identity.
    pub fn omega(&self) -> &[OmegaElement] {
        &self.omega
    }

    fn enumerate_minuscule(&self) -> Vec<Weight> {
        let n = self.rank();
        let bounds: Vec<i64> = self.theta_fund.iter().map(|t| (rat(1) / t).floor().to_integer().to_i64().unwrap()).collect();
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        loop {
            let w = Weight(c.clone());
            if !self.wall_value(0, &w).is_negative() && self.lattice.contains(&w) {
                out.push(w);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                c[k] += 1;
                if c[k] <= bounds[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
        }
    }

    fn build_omega(&self) -> Result<Vec<OmegaElement>> {
        let n = self.rank();
        let mut out = Vec::new();
        for nu in &self.minuscule {
            let finite = self.finite_descent(nu).1;
            let element = WeylElement { translation: nu.clone(), ..finite };
            let l = self.length(&element);
            if l != 0 {
                return Err(Error::Invariant(format!("ω for {nu:?} has length {l}")));
            }
            let inv = element.inverse();
            let perm = (0..=n)
                .map(|i| {
                    let conj = element.mul(&self.gens[i]).mul(&inv);
                    (0..=n).find(|&j| self.gens[j] == conj).ok_or_else(|| Error::Invariant("Ω does not permute the walls".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(OmegaElement { weight: nu.clone(), element, perm });
        }
        Ok(out)
    }

    /// `(λ_−, ẘ_λ)` by descending through positive pairings, smallest index first.
    fn finite_descent(&self, lambda: &Weight) -> (Weight, WeylElement) {
        let mut x = lambda.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..=self.rank()).find(|&i| x[i - 1] > 0) {
            x = self.gens[i].act(&x);
            word.push(i);
        }
        (x, self.from_word(&word))
    }

    /// `λ̃`, `w_λ`, `λ_−` and `ẘ_λ` for `λ ∈ Λ`.
    pub fn orbit_data(&self, lambda: &Weight) -> Result<WeightOrbitData> {
        self.lattice.check(lambda)?;
        let mut x = lambda.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..=self.rank()).find(|&i| self.wall_value(i, &x).is_negative()) {
            x = self.gens[i].act(&x);
            word.push(i);
        }
        let w = self.from_word(&word);
        let (antidominant, finite) = self.finite_descent(lambda);
        Ok(WeightOrbitData { lambda: lambda.clone(), minuscule: x, word, w, antidominant, finite })
    }

    /// All `λ ∈ Λ` with `ℓ(w_λ) ≤ max_len`, sorted.
    pub fn weights_up_to_length(&self, max_len: usize) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = self.minuscule.iter().cloned().collect();
        let mut layer: Vec<Weight> = self.minuscule.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for lam in &layer {
                for i in 0..=self.rank() {
                    if self.wall_value(i, lam).is_positive() {
                        let mu = self.gens[i].act(lam);
                        if seen.insert(mu.clone()) {
                            next.push(mu);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// All elements of `W̊`, in breadth-first order of word length.
    pub fn finite_elements(&self) -> Vec<WeylElement> {
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut k = 0;
        while k < out.len() {
            let cur = out[k].clone();
            for i in 1..=self.rank() {
                let x = cur.mul(&self.gens[i]);
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
            k += 1;
        }
        out
    }

    /// Breadth-first ball in `W^e`: every element reachable with at most `radius` simple
    /// reflections, where multiplication by `Ω` is free. Returns minimal word lengths.
    pub fn word_ball(&self, radius: usize) -> HashMap<WeylElement, usize> {
        let mut dist: HashMap<WeylElement, usize> = HashMap::new();
        let mut queue: VecDeque<WeylElement> = VecDeque::new();
        for o in &self.omega {
            dist.insert(o.element.clone(), 0);
            queue.push_back(o.element.clone());
        }
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            if d == radius {
                continue;
            }
            for i in 0..=self.rank() {
                let x = cur.mul(&self.gens[i]);
                for o in &self.omega {
                    let y = x.mul(&o.element);
                    if !dist.contains_key(&y) {
                        dist.insert(y.clone(), d + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        dist
    }

    /// Products of all subwords of `word`; by the subword property these are the elements
    /// below `from_word(word)` in Bruhat order when `word` is reduced.
    pub fn subword_products(&self, word: &[usize]) -> HashSet<WeylElement> {
        let mut set: HashSet<WeylElement> = HashSet::new();
        set.insert(self.identity());
        for &i in word.iter().rev() {
            let extra: Vec<WeylElement> = set.iter().map(|x| self.gens[i].mul(x)).collect();
            set.extend(extra);
        }
        set
    }

    /// Whether `x` lies in the open fundamental alcove test: all `a_i(x) > 0`.
    pub fn in_open_alcove(&self, x: &[Rat]) -> bool {
        let t: Rat = x.iter().zip(&self.theta_fund).map(|(a, b)| a * b).sum();
        x.iter().all(|a| a.is_positive()) && (rat(1) - t).is_positive()
    }

    /// The interior sample point used for hyperplane counting.
    pub fn sample_point(&self) -> Vec<Rat> {
        self.sample.iter().map(|&s| ratio(s, self.sample_den)).collect()
    }

    /// Whether `x` is in the closed alcove (used for minuscule checks on rational points).
    pub fn is_minuscule(&self, x: &Weight) -> bool {
        (0..=self.rank()).all(|i| !self.wall_value(i, x).is_negative())
    }

    /// `⟨x, θ⟩`-style helper exposing `(θ, λ_k)`.
    pub fn theta_fundamental(&self) -> &[Rat] {
        &self.theta_fund
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanType, LatticeSpec};

    fn group(t: CartanType, n: usize, lat: &str) -> WeylGroup {
        let rs = Arc::new(RootSystem::build(t, n).unwrap());
        let l = Arc::new(Lattice::new(&rs, lat.parse::<LatticeSpec>().unwrap()).unwrap());
        WeylGroup::new(rs, l).unwrap()
    }

    #[test]
    fn affine_action_examples() {
        let g = group(CartanType::A, 1, "P");
        assert_eq!(g.r(0).act(&Weight(vec![0])), Weight(vec![2]));
        assert_eq!(g.r(1).act(&Weight(vec![2])), Weight(vec![-2]));
        let t = g.translation(&Weight(vec![1])).unwrap();
        assert_eq!(t.act(&Weight(vec![3])), Weight(vec![4]));
    }

    #[test]
    fn a1_lengths() {
        let g = group(CartanType::A, 1, "P");
        assert_eq!(g.length(&g.identity()), 0);
        assert_eq!(g.length(&g.translation(&Weight(vec![-1])).unwrap()), 1);
        assert_eq!(g.length(&g.translation(&Weight(vec![-2])).unwrap()), 2);
        let rw = g.reduced_word(&g.translation(&Weight(vec![-2])).unwrap());
        assert_eq!(rw.word.len(), 2);
        assert_eq!(rw.omega, 0);
    }

    #[test]
    fn minuscule_and_omega() {
        let g = group(CartanType::A, 1, "P");
        assert_eq!(g.minuscule_set(), &[Weight(vec![0]), Weight(vec![1])]);
        assert_eq!(g.omega().len(), 2);
        assert_eq!(g.omega()[1].perm, vec![1, 0]);
        for (t, n) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::BC, 2)] {
            let g = group(t, n, "Q");
            assert_eq!(g.minuscule_set().len(), 1);
        }
        assert_eq!(group(CartanType::A, 3, "P").omega().len(), 4);
        assert_eq!(group(CartanType::E, 6, "P").omega().len(), 3);
        let rw = g.reduced_word(&g.omega()[1].element);
        assert_eq!(rw, ReducedWord { omega: 1, word: vec![] });
    }

    #[test]
    fn orbit_data_a1() {
        let g = group(CartanType::A, 1, "P");
        let d = g.orbit_data(&Weight(vec![2])).unwrap();
        assert_eq!(d.minuscule, Weight(vec![0]));
        assert_eq!(d.word, vec![0]);
        let d = g.orbit_data(&Weight(vec![1])).unwrap();
        assert!(d.word.is_empty());
        let gq = group(CartanType::A, 1, "Q");
        assert!(matches!(gq.orbit_data(&Weight(vec![1])), Err(Error::Membership(_))));
    }

    #[test]
    fn word_text() {
        let g = group(CartanType::A, 2, "P");
        let w = g.from_word(&[0, 1]).mul(&g.omega()[1].element);
        let rw = g.reduced_word(&w);
        assert_eq!(g.compose(&rw), w);
        assert!(rw.to_string().starts_with("w = omega"));
        assert_eq!(g.reduced_word(&g.identity()).to_string(), "w = 1");
    }

    #[test]
    fn sample_point_interior() {
        for (t, n) in [(CartanType::A, 3), (CartanType::C, 3), (CartanType::G, 2), (CartanType::BC, 2), (CartanType::F, 4)] {
            let g = group(t, n, if t == CartanType::BC { "Q" } else { "P" });
            assert!(g.in_open_alcove(&g.sample_point()));
        }
    }
}
