//! Root systems of classical type (and finite products), Weyl-chamber faces
//! and the Levi data attached to each face.
//!
//! Weights are integer vectors in the fundamental-weight basis. A root system
//! may carry extra central coordinates (rank-one torus factors): they sit after
//! the semisimple coordinates, have no roots, and are never constrained by
//! dominance.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{rat, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: CartanType,
    pub rank: usize,
}

impl Factor {
    pub fn new(kind: CartanType, rank: usize) -> Self {
        Self { kind, rank }
    }

    fn validate(&self) -> Result<()> {
        let min = match self.kind {
            CartanType::A => 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 3,
        };
        if self.rank < min {
            return Err(Error::InvalidRootSystem(format!(
                "{}{} (rank must be at least {min})",
                self.kind, self.rank
            )));
        }
        Ok(())
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
        }
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        match self.kind {
            CartanType::A | CartanType::B | CartanType::C => {
                for i in 0..n - 1 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                if self.kind == CartanType::B {
                    c[n - 2][n - 1] = -2;
                } else if self.kind == CartanType::C {
                    c[n - 1][n - 2] = -2;
                }
            }
            CartanType::D => {
                for i in 0..n - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
        }
        c
    }

    /// Half squared lengths of the simple roots (short roots have 1).
    fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank;
        match self.kind {
            CartanType::A | CartanType::D => vec![1; n],
            CartanType::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            CartanType::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

/// Integer coordinates in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, n: i64) -> Self {
        Weight(self.0.iter().map(|x| x * n).collect())
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
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

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", xs.join(","))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    factors: Vec<Factor>,
    central_rank: usize,
    ss_rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height.
    positive_roots_simple: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
    /// `alpha^vee = sum_i c_i alpha_i^vee` for each positive root.
    coroot_coeffs: Vec<Vec<i64>>,
    /// `(C^T)^{-1}` scaled by `root_coord_scale` to integers.
    root_coord_matrix: Vec<Vec<i64>>,
    root_coord_scale: i64,
    /// Gram matrix of the invariant form on fundamental weights, scaled to integers.
    form_gram: Vec<Vec<i64>>,
    rho: Weight,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.central_rank == other.central_rank
    }
}

impl Eq for RootSystem {}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if self.central_rank > 0 {
            parts.push(format!("T{}", self.central_rank));
        }
        if parts.is_empty() {
            return f.write_str("T0");
        }
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Grammar: factors separated by `x`, each `A<n>`, `B<n>`, `C<n>`, `D<n>`,
    /// or `T<n>` for an `n`-dimensional central torus.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut central = 0;
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidRootSystem("empty specification".into()));
        }
        for tok in s.split(['x', 'X']) {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let head = chars
                .next()
                .ok_or_else(|| Error::InvalidRootSystem(format!("empty factor in `{s}`")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidRootSystem(format!("bad rank in `{tok}`")))?;
            let kind = match head.to_ascii_uppercase() {
                'A' => CartanType::A,
                'B' => CartanType::B,
                'C' => CartanType::C,
                'D' => CartanType::D,
                'T' => {
                    central += rank;
                    continue;
                }
                _ => return Err(Error::InvalidRootSystem(format!("unknown type `{tok}`"))),
            };
            factors.push(Factor::new(kind, rank));
        }
        RootSystem::with_center(&factors, central)
    }
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    out
}

/// Exact inverse of a small integer matrix, returned as (integer matrix, scale).
fn integer_inverse(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = m.len();
    if n == 0 {
        return (Vec::new(), 1);
    }
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].iter().map(|&x| rat(x)).collect();
            row.extend((0..n).map(|j| rat(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| aug[r][c] != rat(0))
            .expect("Cartan matrices are invertible");
        aug.swap(c, p);
        let piv = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && aug[r][c] != rat(0) {
                let f = aug[r][c].clone();
                for k in 0..2 * n {
                    let v = &aug[c][k] * &f;
                    aug[r][k] -= v;
                }
            }
        }
    }
    let scale = aug
        .iter()
        .flat_map(|r| r[n..].iter())
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scale_i: i64 = scale.try_into().expect("small scale");
    let inv = aug
        .iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| {
                    let v = x * rat(scale_i);
                    i64::try_from(v.to_integer()).expect("small entry")
                })
                .collect()
        })
        .collect();
    (inv, scale_i)
}

impl RootSystem {
    pub fn new(factors: &[Factor]) -> Result<Self> {
        Self::with_center(factors, 0)
    }

    /// Root system of a reductive group: semisimple factors plus a central torus.
    pub fn with_center(factors: &[Factor], central_rank: usize) -> Result<Self> {
        for f in factors {
            f.validate()?;
        }
        let cartan = block_diag(&factors.iter().map(Factor::cartan).collect::<Vec<_>>());
        let symmetrizer: Vec<i64> = factors.iter().flat_map(|f| f.symmetrizer()).collect();
        let ss_rank = cartan.len();
        let rank = ss_rank + central_rank;

        let positive_roots_simple = generate_positive_roots(&cartan);
        let (root_coord_matrix, root_coord_scale) = {
            let ct: Vec<Vec<i64>> = (0..ss_rank)
                .map(|i| (0..ss_rank).map(|j| cartan[j][i]).collect())
                .collect();
            integer_inverse(&ct)
        };

        let positive_roots = positive_roots_simple
            .iter()
            .map(|r| {
                let mut w = vec![0i64; rank];
                for (i, &ri) in r.iter().enumerate() {
                    for j in 0..ss_rank {
                        w[j] += ri * cartan[i][j];
                    }
                }
                Weight(w)
            })
            .collect();

        let coroot_coeffs = positive_roots_simple
            .iter()
            .map(|r| {
                let mut norm = 0i64;
                for i in 0..ss_rank {
                    for j in 0..ss_rank {
                        norm += r[i] * r[j] * cartan[i][j] * symmetrizer[j];
                    }
                }
                let half = norm / 2;
                r.iter()
                    .zip(&symmetrizer)
                    .map(|(&ri, &di)| {
                        let c = ri * di;
                        debug_assert_eq!(c % half, 0);
                        c / half
                    })
                    .collect()
            })
            .collect();

        // (w_i, w_j) = [(C^T)^{-1}]_{j,i} d_j
        let form_gram = (0..ss_rank)
            .map(|i| {
                (0..ss_rank)
                    .map(|j| root_coord_matrix[j][i] * symmetrizer[j])
                    .collect()
            })
            .collect();

        let mut rho = vec![1i64; ss_rank];
        rho.extend(std::iter::repeat_n(0, central_rank));

        Ok(Self {
            factors: factors.to_vec(),
            central_rank,
            ss_rank,
            cartan,
            symmetrizer,
            positive_roots_simple,
            positive_roots,
            coroot_coeffs,
            root_coord_matrix,
            root_coord_scale,
            form_gram,
            rho: Weight(rho),
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total rank of the character lattice (semisimple plus central).
    pub fn rank(&self) -> usize {
        self.ss_rank + self.central_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.ss_rank
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    /// Simple root `alpha_i` in fundamental coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        let mut w = self.cartan[i].clone();
        w.extend(std::iter::repeat_n(0, self.central_rank));
        Weight(w)
    }

    /// `<w, alpha^vee>` for the `k`-th positive root.
    pub fn coroot_pairing(&self, w: &[i64], k: usize) -> i64 {
        self.coroot_coeffs[k]
            .iter()
            .zip(w)
            .map(|(c, x)| c * x)
            .sum()
    }

    pub fn check_weight(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                context: "weight length",
                expected: self.rank(),
                found: w.len(),
            });
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w[..self.ss_rank].iter().all(|&x| x >= 0)
    }

    pub fn require_dominant(&self, w: &[i64]) -> Result<()> {
        self.check_weight(w)?;
        if !self.is_dominant(w) {
            return Err(Error::NotDominant { weight: w.to_vec() });
        }
        Ok(())
    }

    /// Simple reflection `s_i` in fundamental coordinates.
    pub fn reflect(&self, w: &mut [i64], i: usize) {
        let c = w[i];
        if c == 0 {
            return;
        }
        for (j, x) in self.cartan[i].iter().enumerate() {
            w[j] -= c * x;
        }
    }

    /// Moves `w` into the dominant chamber. Returns the number of reflections
    /// used, or `None` if `w` lies on a wall (is fixed by some reflection).
    /// Only meaningful for regular or singular detection of `w` itself: if `w`
    /// is singular the conjugate is still returned through `w`.
    pub fn to_dominant(&self, w: &mut [i64]) -> (usize, bool) {
        let mut steps = 0;
        loop {
            match (0..self.ss_rank).find(|&i| w[i] < 0) {
                Some(i) => {
                    self.reflect(w, i);
                    steps += 1;
                }
                None => {
                    let singular = w[..self.ss_rank].contains(&0);
                    return (steps, singular);
                }
            }
        }
    }

    /// The Weyl orbit of a dominant weight.
    pub fn weyl_orbit(&self, dominant: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut stack = vec![dominant.clone()];
        seen.insert(dominant.clone());
        let mut out = Vec::new();
        while let Some(w) = stack.pop() {
            for i in 0..self.ss_rank {
                if w[i] > 0 {
                    let mut v = w.0.clone();
                    self.reflect(&mut v, i);
                    let v = Weight(v);
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
            out.push(w);
        }
        out
    }

    /// Invariant form scaled to integers (semisimple coordinates only).
    pub fn scaled_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.ss_rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.ss_rank {
                acc += a[i] * self.form_gram[i][j] * b[j];
            }
        }
        acc
    }

    /// Simple-root coordinates of `w` times `root_coord_scale()`.
    pub fn scaled_root_coords(&self, w: &[i64]) -> Vec<i64> {
        (0..self.ss_rank)
            .map(|i| {
                (0..self.ss_rank)
                    .map(|j| self.root_coord_matrix[i][j] * w[j])
                    .sum()
            })
            .collect()
    }

    pub fn root_coord_scale(&self) -> i64 {
        self.root_coord_scale
    }

    /// Exact simple-root coordinates (semisimple part).
    pub fn root_coords(&self, w: &[i64]) -> Vec<Rational> {
        let s = self.root_coord_scale;
        self.scaled_root_coords(w)
            .into_iter()
            .map(|x| crate::exactq::ratio(x, s))
            .collect()
    }

    /// A strictly positive functional on positive roots (scaled height).
    pub fn scaled_height(&self, w: &[i64]) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    /// All weights with `0 <= coord <= bound`, lexicographically ordered.
    pub fn dominant_weights_up_to(&self, bound: usize) -> Vec<Weight> {
        let n = self.rank();
        let b = bound as i64;
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            out.push(Weight(cur.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < b {
                    cur[k] += 1;
                    for x in cur.iter_mut().skip(k + 1) {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn enumerate_faces(&self) -> Vec<LeviData> {
        (0..1usize << self.ss_rank)
            .map(|mask| {
                let face = Face::new((0..self.ss_rank).filter(|i| mask >> i & 1 == 1).collect());
                self.levi_data(&face)
                    .expect("faces built from valid indices")
            })
            .collect()
    }

    pub fn faces(&self) -> Vec<Face> {
        self.enumerate_faces().into_iter().map(|l| l.face).collect()
    }

    pub fn check_face(&self, f: &Face) -> Result<()> {
        if let Some(&i) = f.support.iter().find(|&&i| i >= self.ss_rank) {
            return Err(Error::InvalidFace(format!(
                "index {} out of range for rank {}",
                i + 1,
                self.ss_rank
            )));
        }
        Ok(())
    }

    pub fn full_face(&self) -> Face {
        Face::new((0..self.ss_rank).collect())
    }

    pub fn levi_data(&self, f: &Face) -> Result<LeviData> {
        self.check_face(f)?;
        let in_face: BTreeSet<usize> = f.support.iter().copied().collect();
        let levi_simple_roots: Vec<usize> =
            (0..self.ss_rank).filter(|j| !in_face.contains(j)).collect();
        let (levi, pu): (Vec<usize>, Vec<usize>) = (0..self.positive_roots.len()).partition(|&k| {
            in_face
                .iter()
                .all(|&i| self.positive_roots_simple[k][i] == 0)
        });
        Ok(LeviData {
            face: f.clone(),
            semisimple_rank_of_d: levi_simple_roots.len(),
            levi_simple_roots,
            levi_positive_roots: levi,
            pu_positive_roots: pu,
        })
    }

    /// Map from positive roots (fundamental coordinates) to their index.
    pub fn positive_root_index(&self) -> HashMap<Weight, usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect()
    }

    /// The dual-weight involution `-w_0`.
    /// Highest weight of the dual module: the dominant conjugate of `-w`.
    pub fn dual_weight(&self, w: &Weight) -> Weight {
        let mut v = (-w).0;
        self.to_dominant(&mut v);
        Weight(v)
    }
}

fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for r in &level {
        set.insert(r.clone());
    }
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut q = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= q + 1;
                    if set.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let p = q - pairing;
                if p > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        level = next;
    }
    all
}

/// A face `F_I` of the dominant chamber: the span of the fundamental weights
/// indexed by `support` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub support: Vec<usize>,
}

impl Face {
    pub fn new(mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        Self { support }
    }

    pub fn zero() -> Self {
        Self {
            support: Vec::new(),
        }
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.support.iter().all(|i| other.contains_index(*i))
    }

    /// `dim F`, counting the central directions every face contains.
    pub fn dim(&self, rs: &RootSystem) -> usize {
        self.support.len() + rs.central_rank()
    }

    /// Does `w` lie in the span of the face?
    pub fn contains_weight(&self, rs: &RootSystem, w: &[i64]) -> bool {
        (0..rs.semisimple_rank()).all(|i| w[i] == 0 || self.contains_index(i))
    }

    pub fn subspace(&self, rs: &RootSystem) -> Subspace {
        let n = rs.rank();
        let vecs: Vec<Vec<i64>> = self
            .support
            .iter()
            .copied()
            .chain(rs.semisimple_rank()..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span_i64(n, vecs.iter().map(Vec::as_slice))
    }

    /// Parses the CLI face grammar: comma-separated 1-based indices, empty for
    /// the zero face, `full` for the whole chamber.
    pub fn parse(s: &str, rs: &RootSystem) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("full") {
            return Ok(rs.full_face());
        }
        if s.is_empty() || s == "{}" || s == "0" && rs.semisimple_rank() == 0 {
            return Ok(Face::zero());
        }
        let mut support = Vec::new();
        for tok in s.split(',') {
            let i: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidFace(s.to_string()))?;
            if i == 0 || i > rs.semisimple_rank() {
                return Err(Error::InvalidFace(format!(
                    "{s}: index {i} outside 1..={}",
                    rs.semisimple_rank()
                )));
            }
            support.push(i - 1);
        }
        let f = Face::new(support);
        rs.check_face(&f)?;
        Ok(f)
    }

    /// 1-based label used in reports.
    pub fn label(&self) -> String {
        let xs: Vec<String> = self.support.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", xs.join(","))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Levi and parabolic bookkeeping for a face: `L` has the roots orthogonal to
/// the face, `P = L U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviData {
    pub face: Face,
    pub levi_simple_roots: Vec<usize>,
    /// Indices into `RootSystem::positive_roots`.
    pub levi_positive_roots: Vec<usize>,
    pub pu_positive_roots: Vec<usize>,
    pub semisimple_rank_of_d: usize,
}

pub fn build_root_system(spec: &[(CartanType, usize)]) -> Result<RootSystem> {
    let factors: Vec<Factor> = spec.iter().map(|&(k, r)| Factor::new(k, r)).collect();
    RootSystem::new(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.cartan_matrix(), &[vec![2]]);
        assert_eq!(rs("A2").positive_roots().len(), 3);
        let a1a1 = rs("A1xA1");
        assert_eq!(a1a1.rank(), 2);
        assert_eq!(a1a1.positive_roots().len(), 2);
    }

    #[test]
    fn invalid_ranks_rejected() {
        for bad in ["B1", "C1", "D2", "A0", "E6", "A", ""] {
            assert!(bad.parse::<RootSystem>().is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn classical_root_counts_and_cartan_shape() {
        for spec in [
            "A1", "A3", "A5", "B2", "B3", "C2", "C3", "D3", "D4", "D5", "A2xB2",
        ] {
            let r = rs(spec);
            let expected: usize = r.factors().iter().map(Factor::positive_root_count).sum();
            assert_eq!(r.positive_roots().len(), expected, "{spec}");
            let c = r.cartan_matrix();
            for i in 0..c.len() {
                assert_eq!(c[i][i], 2);
                for j in 0..c.len() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                    }
                }
            }
            assert!(r.rho().iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn sum_of_positive_roots_is_two_rho() {
        for spec in ["A1", "A2", "B2", "C3", "D4", "A1xA1xT1"] {
            let r = rs(spec);
            let mut sum = r.zero_weight();
            for a in r.positive_roots() {
                sum = &sum + a;
            }
            assert_eq!(sum, r.rho().scaled(2), "{spec}");
        }
    }

    #[test]
    fn simple_reflections_permute_other_positive_roots() {
        for spec in ["A3", "B3", "C3", "D4", "B2"] {
            let r = rs(spec);
            let pos: HashSet<Weight> = r.positive_roots().iter().cloned().collect();
            for j in 0..r.semisimple_rank() {
                let aj = r.simple_root(j);
                let mut image = HashSet::new();
                for a in r.positive_roots().iter().filter(|a| **a != aj) {
                    let mut v = a.0.clone();
                    r.reflect(&mut v, j);
                    image.insert(Weight(v));
                }
                let others: HashSet<Weight> = pos.iter().filter(|a| **a != aj).cloned().collect();
                assert_eq!(image, others, "{spec} s_{j}");
            }
        }
    }

    #[test]
    fn dominant_weight_enumeration() {
        let a1 = rs("A1");
        assert_eq!(
            a1.dominant_weights_up_to(2),
            vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]
        );
        let a2 = rs("A2");
        assert_eq!(
            a2.dominant_weights_up_to(1),
            vec![
                Weight(vec![0, 0]),
                Weight(vec![0, 1]),
                Weight(vec![1, 0]),
                Weight(vec![1, 1])
            ]
        );
        assert_eq!(
            rs("B3").dominant_weights_up_to(0),
            vec![Weight(vec![0, 0, 0])]
        );
    }

    #[test]
    fn face_enumeration() {
        assert_eq!(rs("A1").enumerate_faces().len(), 2);
        let a2 = rs("A2");
        let faces = a2.enumerate_faces();
        assert_eq!(faces.len(), 4);
        let f1 = a2.levi_data(&Face::new(vec![0])).unwrap();
        assert_eq!(f1.levi_simple_roots, vec![1]);
        assert_eq!(f1.pu_positive_roots.len(), 2);
    }

    #[test]
    fn levi_conventions_at_extreme_faces() {
        let a2 = rs("A2");
        let zero = a2.levi_data(&Face::zero()).unwrap();
        assert_eq!(zero.levi_simple_roots, vec![0, 1]);
        assert!(zero.pu_positive_roots.is_empty());
        assert_eq!(zero.semisimple_rank_of_d, 2);
        let full = a2.levi_data(&a2.full_face()).unwrap();
        assert!(full.levi_simple_roots.is_empty());
        assert_eq!(full.pu_positive_roots.len(), 3);
        assert_eq!(full.semisimple_rank_of_d, 0);
    }

    #[test]
    fn larger_face_has_larger_unipotent_radical() {
        for spec in ["A3", "B3", "D4"] {
            let r = rs(spec);
            let data = r.enumerate_faces();
            for a in &data {
                for b in &data {
                    if a.face.is_subface_of(&b.face) {
                        let pb: HashSet<_> = b.pu_positive_roots.iter().collect();
                        assert!(a.pu_positive_roots.iter().all(|k| pb.contains(k)));
                        let la: HashSet<_> = a.levi_simple_roots.iter().collect();
                        assert!(b.levi_simple_roots.iter().all(|k| la.contains(k)));
                    }
                    let total = a.levi_positive_roots.len() + a.pu_positive_roots.len();
                    assert_eq!(total, r.positive_roots().len());
                }
            }
        }
    }

    #[test]
    fn weyl_orbit_sizes() {
        let a2 = rs("A2");
        assert_eq!(a2.weyl_orbit(&Weight(vec![1, 1])).len(), 6);
        assert_eq!(a2.weyl_orbit(&Weight(vec![1, 0])).len(), 3);
        assert_eq!(rs("B2").weyl_orbit(&Weight(vec![1, 1])).len(), 8);
        assert_eq!(rs("D4").weyl_orbit(&Weight(vec![1, 1, 1, 1])).len(), 192);
    }

    #[test]
    fn face_parsing() {
        let a2 = rs("A2");
        assert_eq!(Face::parse("", &a2).unwrap(), Face::zero());
        assert_eq!(Face::parse("full", &a2).unwrap(), Face::new(vec![0, 1]));
        assert_eq!(Face::parse("2", &a2).unwrap(), Face::new(vec![1]));
        assert!(Face::parse("3", &a2).is_err());
        assert!(Face::parse("x", &a2).is_err());
    }

    #[test]
    fn dual_weight_on_a2_swaps_coordinates() {
        let a2 = rs("A2");
        assert_eq!(a2.dual_weight(&Weight(vec![2, 1])), Weight(vec![1, 2]));
        let b2 = rs("B2");
        assert_eq!(b2.dual_weight(&Weight(vec![2, 1])), Weight(vec![2, 1]));
    }

    #[test]
    fn central_torus_coordinates() {
        let r = rs("A1xA1xT1");
        assert_eq!(r.rank(), 3);
        assert_eq!(r.semisimple_rank(), 2);
        assert!(r.is_dominant(&[0, 1, -4]));
        let f = Face::zero();
        assert_eq!(f.dim(&r), 1);
        assert!(f.contains_weight(&r, &[0, 0, 5]));
        assert_eq!(r.to_string(), "A1xA1xT1");
    }
}
