//! Finite and affine root systems, lattices between `Q` and `P`, and parameter orbits.
//!
//! Roots are realized in an orthogonal ambient space with exact rational coordinates. The
//! inner product is `scale · dot`, chosen so that short roots of a reduced system have squared
//! length 2 and the nonreduced `BC_n` has squared lengths 1, 2 and 4.
//!
//! Weights are recorded by their fundamental-weight coordinates `⟨λ, α_i^∨⟩`, called labels
//! below. Simple roots are numbered as in Bourbaki; affine simple roots carry indices `0..=n`
//! with `α_0 = c_0^{-1}(δ − θ)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{inverse, mat_vec, rat, ratio, to_i64};
use crate::{Error, Rat, Result};

/// A weight given by its fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Weight, c: i64) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|&a| rat(a)).collect()
    }
}

impl Deref for Weight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Cartan–Killing type of an irreducible root system, including the nonreduced `BC`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            "BC" => CartanType::BC,
            other => return Err(Error::Construction(format!("type label {other:?}"))),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
            CartanType::BC => "BC",
        };
        f.write_str(s)
    }
}

/// A root together with the coordinates used throughout the crate.
#[derive(Clone, Debug)]
pub struct Root {
    /// Ambient orthogonal coordinates.
    pub ambient: Vec<Rat>,
    /// Coefficients on the simple roots.
    pub simple: Vec<i64>,
    /// Fundamental-weight coordinates `⟨α, α_j^∨⟩`.
    pub labels: Weight,
    /// Coefficients of `α^∨` on the simple coroots.
    pub coroot: Vec<Rat>,
    /// Squared length `(α, α)`.
    pub norm: Rat,
    /// False when `α/2` is also a root.
    pub indivisible: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.simple.iter().all(|&c| c >= 0)
    }

    /// `⟨x, α^∨⟩` for `x` in fundamental-weight coordinates.
    pub fn pair(&self, x: &[Rat]) -> Rat {
        self.coroot.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// `⟨λ, α^∨⟩` for an integral weight.
    pub fn pair_int(&self, x: &[i64]) -> Rat {
        self.coroot.iter().zip(x).map(|(c, &v)| c * rat(v)).sum()
    }
}

/// A vector of the extended space `ℏ* ⊕ ℝδ ⊕ ℝΛ_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtVector {
    pub finite: Vec<Rat>,
    pub delta: Rat,
    pub lambda0: Rat,
}

/// An affine root `α + kδ`, stored as a finite root index and the doubled shift `2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub shift2: i64,
}

impl AffineRoot {
    pub fn shift(&self) -> Rat {
        ratio(self.shift2, 2)
    }
}

/// A finite irreducible root system with its affine extension data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    scale: Rat,
    simple_ambient: Vec<Vec<Rat>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    n_positive: usize,
    cartan: Vec<Vec<i64>>,
    fund_weights: Vec<Vec<Rat>>,
    fund_coweights: Vec<Vec<Rat>>,
    weight_gram: Vec<Vec<Rat>>,
    coweight_pairing: Vec<Vec<Rat>>,
    theta: usize,
    mu0: usize,
    c0: i64,
    lace: Option<i64>,
}

fn unit(i: usize, m: usize) -> Vec<Rat> {
    (0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()
}

fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vscale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

fn simple_realization(kind: CartanType, n: usize) -> Result<(usize, Rat, Vec<Vec<Rat>>)> {
    let bad = || Error::Construction(format!("({kind}, {n})"));
    let chain = |m: usize, k: usize| -> Vec<Vec<Rat>> {
        (0..k).map(|i| vsub(&unit(i, m), &unit(i + 1, m))).collect()
    };
    let half = ratio(1, 2);
    Ok(match kind {
        CartanType::A if n >= 1 => (n + 1, rat(1), chain(n + 1, n)),
        CartanType::B if n >= 2 => {
            let mut s = chain(n, n - 1);
            s.push(unit(n - 1, n));
            (n, rat(2), s)
        }
        CartanType::C if n >= 2 => {
            let mut s = chain(n, n - 1);
            s.push(vscale(&rat(2), &unit(n - 1, n)));
            (n, rat(1), s)
        }
        CartanType::D if n >= 4 => {
            let mut s = chain(n, n - 1);
            s.push(vadd(&unit(n - 2, n), &unit(n - 1, n)));
            (n, rat(1), s)
        }
        CartanType::E if (6..=8).contains(&n) => {
            let e = |i: usize| unit(i, 8);
            let mut a1 = vscale(&half, &vadd(&e(0), &e(7)));
            for i in 1..7 {
                a1 = vsub(&a1, &vscale(&half, &e(i)));
            }
            let mut s = vec![a1, vadd(&e(0), &e(1))];
            for i in 0..(n - 2) {
                s.push(vsub(&e(i + 1), &e(i)));
            }
            (8, rat(1), s)
        }
        CartanType::F if n == 4 => {
            let e = |i: usize| unit(i, 4);
            let a4 = vscale(&half, &vsub(&vsub(&vsub(&e(0), &e(1)), &e(2)), &e(3)));
            (4, rat(2), vec![vsub(&e(1), &e(2)), vsub(&e(2), &e(3)), e(3), a4])
        }
        CartanType::G if n == 2 => {
            let e = |i: usize| unit(i, 3);
            let a2 = vadd(&vscale(&rat(-2), &e(0)), &vadd(&e(1), &e(2)));
            (3, rat(1), vec![vsub(&e(0), &e(1)), a2])
        }
        CartanType::BC if n >= 1 => {
            let mut s = chain(n, n - 1);
            s.push(unit(n - 1, n));
            (n, rat(1), s)
        }
        _ => return Err(bad()),
    })
}

impl RootSystem {
    /// Builds the root system of the given type and rank.
    pub fn build(kind: CartanType, rank: usize) -> Result<Self> {
        let (_, scale, simple) = simple_realization(kind, rank)?;
        let n = rank;
        let ip = |a: &[Rat], b: &[Rat]| -> Rat { &scale * a.iter().zip(b).map(|(x, y)| x * y).sum::<Rat>() };
        let reflect = |a: &[Rat], x: &[Rat]| -> Vec<Rat> {
            let c = rat(2) * ip(x, a) / ip(a, a);
            vsub(x, &vscale(&c, a))
        };

        let mut seed: Vec<Vec<Rat>> = simple.clone();
        if kind == CartanType::BC {
            seed.push(vscale(&rat(2), &simple[n - 1]));
        }
        let mut set: HashSet<Vec<Rat>> = seed.iter().cloned().collect();
        let mut frontier = seed;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for a in &simple {
                    let x = reflect(a, r);
                    if set.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }

        let gram: Vec<Vec<Rat>> = simple.iter().map(|a| simple.iter().map(|b| ip(a, b)).collect()).collect();
        let ginv = inverse(&gram).ok_or_else(|| Error::Invariant("singular Gram matrix".into()))?;
        // λ_i^∨ = Σ_j ginv[i][j] α_j, so (α_k, λ_i^∨) = δ_ik.
        let fund_coweights: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n).fold(vec![Rat::zero(); simple[0].len()], |acc, j| vadd(&acc, &vscale(&ginv[i][j], &simple[j])))
            })
            .collect();
        let fund_weights: Vec<Vec<Rat>> = (0..n)
            .map(|i| vscale(&(&gram[i][i] / rat(2)), &fund_coweights[i]))
            .collect();

        let mut roots: Vec<Root> = set
            .into_iter()
            .map(|v| {
                let simple_c: Vec<i64> = fund_coweights
                    .iter()
                    .map(|cw| to_i64(&ip(&v, cw)).expect("integral root coordinates"))
                    .collect();
                let norm = ip(&v, &v);
                let labels: Vec<i64> = simple
                    .iter()
                    .map(|a| to_i64(&(rat(2) * ip(&v, a) / ip(a, a))).expect("integral Cartan pairing"))
                    .collect();
                let coroot: Vec<Rat> = (0..n).map(|k| rat(simple_c[k]) * &gram[k][k] / &norm).collect();
                Root { ambient: v, simple: simple_c, labels: Weight(labels), coroot, norm, indivisible: true }
            })
            .collect();
        let amb: HashSet<Vec<Rat>> = roots.iter().map(|r| r.ambient.clone()).collect();
        for r in roots.iter_mut() {
            let half_root = vscale(&ratio(1, 2), &r.ambient);
            r.indivisible = !amb.contains(&half_root);
        }
        roots.sort_by(|a, b| {
            b.is_positive()
                .cmp(&a.is_positive())
                .then(a.height().abs().cmp(&b.height().abs()))
                .then(b.simple.iter().map(|c| c.abs()).collect::<Vec<_>>().cmp(&a.simple.iter().map(|c| c.abs()).collect::<Vec<_>>()))
        });
        let n_positive = roots.iter().filter(|r| r.is_positive()).count();
        if 2 * n_positive != roots.len() {
            return Err(Error::Invariant("roots not split evenly by sign".into()));
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r.simple.clone(), k)).collect();

        let cartan: Vec<Vec<i64>> = (0..n).map(|i| roots[index[&unit_i64(i, n)]].labels.0.clone()).collect();
        let weight_gram: Vec<Vec<Rat>> =
            fund_weights.iter().map(|a| fund_weights.iter().map(|b| ip(a, b)).collect()).collect();
        let coweight_pairing: Vec<Vec<Rat>> =
            fund_weights.iter().map(|a| fund_coweights.iter().map(|b| ip(a, b)).collect()).collect();

        let nonreduced = kind == CartanType::BC;
        let min_norm = roots.iter().map(|r| r.norm.clone()).min().unwrap();
        let max_norm = roots.iter().map(|r| r.norm.clone()).max().unwrap();
        let theta = (0..n_positive)
            .filter(|&k| nonreduced || roots[k].norm == min_norm)
            .max_by_key(|&k| roots[k].height())
            .unwrap();
        let c0 = if nonreduced { 2 } else { 1 };
        let mu0_simple: Vec<i64> = roots[theta].simple.iter().map(|c| c / c0).collect();
        let mu0 = *index.get(&mu0_simple).ok_or_else(|| Error::Invariant("θ/c_0 is not a root".into()))?;
        let lace = if nonreduced { None } else { to_i64(&(&max_norm / &min_norm)) };

        Ok(RootSystem {
            kind,
            rank,
            scale,
            simple_ambient: simple,
            roots,
            index,
            n_positive,
            cartan,
            fund_weights,
            fund_coweights,
            weight_gram,
            coweight_pairing,
            theta,
            mu0,
            c0,
            lace,
        })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.kind != CartanType::BC
    }

    /// `c_0 = 2` for the nonreduced system, 1 otherwise.
    pub fn c0(&self) -> i64 {
        self.c0
    }

    /// Ratio of long to short squared lengths; `None` for `BC_n`.
    pub fn lace(&self) -> Option<i64> {
        self.lace
    }

    /// The ambient inner-product scale.
    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// All roots; positive roots come first, ordered by height.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    /// Index of the root with the given simple-root coefficients.
    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.index.get(simple_coords).copied()
    }

    /// Index of the root with the given labels.
    pub fn root_index_of_labels(&self, labels: &Weight) -> Option<usize> {
        self.roots.iter().position(|r| &r.labels == labels)
    }

    /// Index of the simple root `α_i`, `1 ≤ i ≤ n`.
    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&unit_i64(i - 1, self.rank)]
    }

    /// The simple root `α_i`, `1 ≤ i ≤ n`.
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[self.simple_index(i)]
    }

    pub fn simple_ambient(&self) -> &[Vec<Rat>] {
        &self.simple_ambient
    }

    /// Cartan pairings `⟨α_i, α_j^∨⟩`, zero-based.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// The highest short root (reduced) or the highest root (nonreduced).
    pub fn theta(&self) -> &Root {
        &self.roots[self.theta]
    }

    pub fn theta_index(&self) -> usize {
        self.theta
    }

    /// The root `μ_0 = θ / c_0`.
    pub fn mu0(&self) -> &Root {
        &self.roots[self.mu0]
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rat>] {
        &self.fund_weights
    }

    pub fn fundamental_coweights(&self) -> &[Vec<Rat>] {
        &self.fund_coweights
    }

    /// Ambient coordinates of a weight given in labels.
    pub fn to_ambient(&self, x: &[Rat]) -> Vec<Rat> {
        let m = self.fund_weights[0].len();
        (0..self.rank).fold(vec![Rat::zero(); m], |acc, k| vadd(&acc, &vscale(&x[k], &self.fund_weights[k])))
    }

    /// Inner product of two ambient vectors.
    pub fn ambient_inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        &self.scale * a.iter().zip(b).map(|(x, y)| x * y).sum::<Rat>()
    }

    /// `(x, y)` for weights in labels.
    pub fn inner_labels(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = mat_vec(&self.weight_gram, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `(x, λ_i^∨)` for `x` in labels and `1 ≤ i ≤ n`.
    pub fn coweight_pair(&self, x: &[Rat], i: usize) -> Rat {
        x.iter().zip(&self.coweight_pairing).map(|(a, row)| a * &row[i - 1]).sum()
    }

    /// The bilinear form on `ℏ* ⊕ ℝδ ⊕ ℝΛ_0`.
    pub fn inner(&self, x: &ExtVector, y: &ExtVector) -> Rat {
        self.ambient_inner(&x.finite, &y.finite) + &x.delta * &y.lambda0 + &x.lambda0 * &y.delta
    }

    /// `δ` as an extended vector.
    pub fn delta(&self) -> ExtVector {
        ExtVector { finite: vec![Rat::zero(); self.fund_weights[0].len()], delta: Rat::one(), lambda0: Rat::zero() }
    }

    /// `Λ_0` as an extended vector.
    pub fn lambda0(&self) -> ExtVector {
        ExtVector { finite: vec![Rat::zero(); self.fund_weights[0].len()], delta: Rat::zero(), lambda0: Rat::one() }
    }

    pub fn ext_of_root(&self, k: usize) -> ExtVector {
        ExtVector { finite: self.roots[k].ambient.clone(), delta: Rat::zero(), lambda0: Rat::zero() }
    }

    pub fn ext_of_affine(&self, a: &AffineRoot) -> ExtVector {
        ExtVector { finite: self.roots[a.root].ambient.clone(), delta: a.shift(), lambda0: Rat::zero() }
    }

    /// Whether `α + kδ` (with `k = shift2 / 2`) is an affine root.
    pub fn is_affine_root(&self, root: usize, shift2: i64) -> bool {
        let r = &self.roots[root];
        match self.lace {
            Some(lace) => {
                let short = r.norm == rat(2);
                if short {
                    shift2 % 2 == 0
                } else {
                    shift2 % (2 * lace) == 0
                }
            }
            None => r.norm == rat(1) || shift2 % 2 == 0,
        }
    }

    /// All affine roots with `|shift| ≤ bound`.
    pub fn affine_roots(&self, bound: &Rat) -> Vec<AffineRoot> {
        let b2 = (bound * rat(2)).floor();
        let b2 = to_i64(&b2).unwrap_or(0);
        let mut out = Vec::new();
        for shift2 in -b2..=b2 {
            for root in 0..self.roots.len() {
                if self.is_affine_root(root, shift2) {
                    out.push(AffineRoot { root, shift2 });
                }
            }
        }
        out
    }

    /// The affine simple root `a_i`, `0 ≤ i ≤ n`.
    pub fn affine_simple(&self, i: usize) -> AffineRoot {
        if i == 0 {
            let neg: Vec<i64> = self.mu0().simple.iter().map(|c| -c).collect();
            AffineRoot { root: self.index[&neg], shift2: 2 / self.c0 }
        } else {
            AffineRoot { root: self.simple_index(i), shift2: 0 }
        }
    }

    /// `2a_i` when it is an affine root.
    pub fn affine_double(&self, i: usize) -> Option<AffineRoot> {
        let a = self.affine_simple(i);
        let doubled: Vec<i64> = self.roots[a.root].simple.iter().map(|c| 2 * c).collect();
        let root = self.root_index(&doubled)?;
        let shift2 = 2 * a.shift2;
        self.is_affine_root(root, shift2).then_some(AffineRoot { root, shift2 })
    }

    /// The level-zero action of the simple affine reflection `r_i` on an affine root.
    pub fn affine_reflect(&self, i: usize, a: &AffineRoot) -> AffineRoot {
        let beta = &self.roots[a.root];
        if i == 0 {
            let theta = self.theta();
            let pairing = to_i64(&self.pair_roots(beta, theta)).expect("integral pairing with θ^∨");
            let image: Vec<i64> =
                beta.simple.iter().zip(&theta.simple).map(|(b, t)| b - pairing * t).collect();
            AffineRoot { root: self.index[&image], shift2: a.shift2 + 2 * pairing }
        } else {
            let alpha = self.simple_root(i);
            let pairing = beta.labels[i - 1];
            let image: Vec<i64> =
                beta.simple.iter().zip(&alpha.simple).map(|(b, s)| b - pairing * s).collect();
            AffineRoot { root: self.index[&image], shift2: a.shift2 }
        }
    }

    /// `⟨β, γ^∨⟩` for two roots.
    pub fn pair_roots(&self, beta: &Root, gamma: &Root) -> Rat {
        rat(2) * self.ambient_inner(&beta.ambient, &gamma.ambient) / &gamma.norm
    }

    /// `(θ, λ_k)` for each fundamental weight.
    pub fn theta_fundamental(&self) -> Vec<Rat> {
        let th = &self.theta().ambient;
        self.fund_weights.iter().map(|w| self.ambient_inner(th, w)).collect()
    }
}

fn unit_i64(i: usize, n: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// Which lattice between `Q` and `P` the weights live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Named(LatticeName),
    Basis { basis: Vec<Vec<i64>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeName {
    P,
    Q,
}

impl FromStr for LatticeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P" => Ok(LatticeSpec::Named(LatticeName::P)),
            "Q" => Ok(LatticeSpec::Named(LatticeName::Q)),
            other if other.starts_with('[') => serde_json::from_str::<Vec<Vec<i64>>>(other)
                .map(|basis| LatticeSpec::Basis { basis })
                .map_err(|e| Error::Config(format!("lattice basis {other:?}: {e}"))),
            other => Err(Error::Config(format!("lattice {other:?} (expected P, Q or a basis)"))),
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Named(LatticeName::P) => f.write_str("P"),
            LatticeSpec::Named(LatticeName::Q) => f.write_str("Q"),
            LatticeSpec::Basis { basis } => write!(f, "basis{basis:?}"),
        }
    }
}

/// A lattice `Q ⊆ Λ ⊆ P` with an integral basis in labels.
#[derive(Clone, Debug)]
pub struct Lattice {
    spec: LatticeSpec,
    basis: Vec<Weight>,
    inv: Vec<Vec<Rat>>,
}

impl Lattice {
    pub fn new(rs: &RootSystem, spec: LatticeSpec) -> Result<Self> {
        let n = rs.rank();
        let basis: Vec<Weight> = match &spec {
            LatticeSpec::Named(LatticeName::P) => (0..n).map(|i| Weight(unit_i64(i, n))).collect(),
            LatticeSpec::Named(LatticeName::Q) => (1..=n).map(|i| rs.simple_root(i).labels.clone()).collect(),
            LatticeSpec::Basis { basis } => {
                if basis.len() != n || basis.iter().any(|b| b.len() != n) {
                    return Err(Error::Config(format!("lattice basis must be {n} vectors of length {n}")));
                }
                basis.iter().map(|b| Weight(b.clone())).collect()
            }
        };
        // columns are basis vectors
        let cols: Vec<Vec<Rat>> = (0..n).map(|r| (0..n).map(|c| rat(basis[c][r])).collect()).collect();
        let inv = inverse(&cols).ok_or_else(|| Error::Config("lattice basis is not of full rank".into()))?;
        let lat = Lattice { spec, basis, inv };
        for i in 1..=n {
            if !lat.contains(&rs.simple_root(i).labels) {
                return Err(Error::Config(format!("lattice does not contain the root lattice (α_{i} missing)")));
            }
        }
        if rs.kind() == CartanType::BC {
            for b in &lat.basis {
                if b[n - 1] % 2 != 0 {
                    return Err(Error::UnsupportedLattice(format!(
                        "BC_{n} requires even pairings with α_n^∨; {b:?} violates it (only Λ = Q is supported)"
                    )));
                }
            }
        }
        Ok(lat)
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    /// Coordinates in the lattice basis, `None` if `w ∉ Λ`.
    pub fn coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let c = mat_vec(&self.inv, &w.to_rat());
        c.iter().map(to_i64).collect()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.coords(w).is_some()
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::Membership(w.0.clone()))
        }
    }

    pub fn from_coords(&self, c: &[i64]) -> Weight {
        let n = self.basis.len();
        let mut out = Weight::zero(n);
        for (b, &k) in self.basis.iter().zip(c) {
            out = out.add_scaled(b, k);
        }
        out
    }

    /// All lattice points whose basis coordinates lie in `[-radius, radius]`.
    pub fn box_points(&self, radius: i64) -> Vec<Weight> {
        let n = self.basis.len();
        let mut out = Vec::new();
        let mut c = vec![-radius; n];
        loop {
            out.push(self.from_coords(&c));
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                c[k] += 1;
                if c[k] <= radius {
                    break;
                }
                c[k] = -radius;
                k += 1;
            }
        }
    }
}

const ORBIT_WINDOW2: i64 = 32;

/// The partition of affine roots into orbits of the level-zero `W`-action, with the named
/// parameter aliases attached to orbits.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    period2: i64,
    ids: HashMap<(usize, i64), usize>,
    names: Vec<String>,
    aliases: BTreeMap<String, usize>,
    simple: Vec<usize>,
    double: Vec<Option<usize>>,
}

impl OrbitTable {
    /// Computes the orbits by closure under all `r_i` on a shift window, then detects the
    /// `δ`-period of the partition.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let w = ORBIT_WINDOW2;
        let mut nodes: Vec<AffineRoot> = Vec::new();
        for shift2 in -w..=w {
            for root in 0..rs.roots().len() {
                if rs.is_affine_root(root, shift2) {
                    nodes.push(AffineRoot { root, shift2 });
                }
            }
        }
        let pos: HashMap<AffineRoot, usize> = nodes.iter().enumerate().map(|(k, a)| (*a, k)).collect();
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (k, a) in nodes.iter().enumerate() {
            for i in 0..=n {
                let b = rs.affine_reflect(i, a);
                if let Some(&j) = pos.get(&b) {
                    let (x, y) = (find(&mut parent, k), find(&mut parent, j));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut ids: HashMap<(usize, i64), usize> = HashMap::new();
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&k| (nodes[k].shift2.abs(), nodes[k].shift2, nodes[k].root));
        for k in order {
            let r = find(&mut parent, k);
            let next = label.len();
            let id = *label.entry(r).or_insert(next);
            ids.insert((nodes[k].root, nodes[k].shift2), id);
        }

        let half = w / 2;
        let period2 = (1..=half)
            .find(|&p| {
                (-half..=(half - p)).all(|s| {
                    (0..rs.roots().len()).all(|root| {
                        let a = ids.get(&(root, s));
                        let b = ids.get(&(root, s + p));
                        a == b
                    })
                })
            })
            .ok_or_else(|| Error::Invariant("no δ-period found for the orbit partition".into()))?;

        // keep only the central window so that ids are canonical
        let mut canon: HashMap<usize, usize> = HashMap::new();
        let mut central: HashMap<(usize, i64), usize> = HashMap::new();
        let mut keys: Vec<(usize, i64)> =
            ids.keys().filter(|(_, s)| (0..period2).contains(s)).copied().collect();
        keys.sort_by_key(|&(root, s)| (s, root));
        for key in &keys {
            let next = canon.len();
            let id = *canon.entry(ids[key]).or_insert(next);
            central.insert(*key, id);
        }
        let count = canon.len();

        let mut table = OrbitTable {
            period2,
            ids: central,
            names: vec![String::new(); count],
            aliases: BTreeMap::new(),
            simple: Vec::new(),
            double: Vec::new(),
        };
        table.simple = (0..=n).map(|i| table.orbit_of(&rs.affine_simple(i))).collect();
        table.double = (0..=n).map(|i| rs.affine_double(i).map(|a| table.orbit_of(&a))).collect();

        let mut priority: Vec<(String, usize)> = Vec::new();
        if rs.is_reduced() {
            for i in 1..=n {
                priority.push((format!("t{i}"), table.simple[i]));
            }
            for name in ["t0", "t01", "t02", "t03"] {
                priority.push((name.to_string(), table.simple[0]));
            }
        } else {
            let two0 = table.double[0].ok_or_else(|| Error::Invariant("2a_0 missing".into()))?;
            let twon = table.double[n].ok_or_else(|| Error::Invariant("2a_n missing".into()))?;
            priority.push(("t01".into(), two0));
            priority.push(("t02".into(), table.simple[0]));
            priority.push(("t03".into(), table.simple[n]));
            for i in 1..n {
                priority.push((format!("t{i}"), table.simple[i]));
            }
            priority.push((format!("t{n}"), twon));
        }
        for (name, orbit) in priority {
            if table.names[orbit].is_empty() {
                table.names[orbit] = name.clone();
            }
            table.aliases.insert(name, orbit);
        }
        for (k, name) in table.names.iter_mut().enumerate() {
            if name.is_empty() {
                *name = format!("o{k}");
            }
        }
        Ok(table)
    }

    /// The orbit identifier of an affine root.
    pub fn orbit_of(&self, a: &AffineRoot) -> usize {
        let s = a.shift2.rem_euclid(self.period2);
        self.ids[&(a.root, s)]
    }

    /// Number of orbits.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The period of the partition in units of `δ/2`.
    pub fn period2(&self) -> i64 {
        self.period2
    }

    /// Display name of each orbit.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Parameter aliases (`t01`, `t02`, `t03`, `t1`, …) and the orbit each is bound to.
    pub fn aliases(&self) -> &BTreeMap<String, usize> {
        &self.aliases
    }

    pub fn alias(&self, name: &str) -> Option<usize> {
        self.aliases.get(name).copied()
    }

    /// Orbit of the affine simple root `a_i`.
    pub fn simple_orbit(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// Orbit of `2a_i`, if that is an affine root.
    pub fn double_orbit(&self, i: usize) -> Option<usize> {
        self.double[i]
    }
}

/// The root datum configuration accepted in JSON job files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumConfig {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    #[serde(default = "default_lattice")]
    pub lattice: LatticeSpec,
}

fn default_lattice() -> LatticeSpec {
    LatticeSpec::Named(LatticeName::P)
}

impl RootDatumConfig {
    pub fn build(&self) -> Result<(RootSystem, Lattice)> {
        let rs = RootSystem::build(self.type_label.parse()?, self.rank)?;
        let lat = Lattice::new(&rs, self.lattice.clone())?;
        Ok((rs, lat))
    }
}
