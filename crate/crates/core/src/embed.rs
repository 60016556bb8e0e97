//! The catalog of embeddings `G ⊂ Ĝ`.
//!
//! Names: `diag:<rs>` (G inside G×G), `sym2:<n>` (SL(n) on S²kⁿ), `wedge2:<n>`
//! (SL(n) on Λ²kⁿ, n ≥ 4) and `tensor:<p>x<q>` (GL(p)×GL(q) on kᵖ⊗k^q, with
//! the common center kept as one rank-1 lattice factor on both sides).
//!
//! Every embedding carries Chevalley generators for both Lie algebras as exact
//! matrices on the defining Ĝ-module. Cartan elements are diagonal and positive
//! root vectors upper triangular, so `b̂ = ĝ ∩ upper triangular`.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{column_relations, rank_i64, rat, Echelon, Rational, RationalMatrix, Subspace};
use crate::rootsys::{CartanType, Face, Factor, LeviData, RootSystem, Weight};

/// Integer matrix sending `Ξ(T̂)` coordinates to `Ξ(T)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightMap {
    matrix: Vec<Vec<i64>>,
}

impl WeightMap {
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        )
    }

    /// Rank of the target lattice.
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    /// Rank of the source lattice.
    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, w: &[i64]) -> Result<Weight> {
        if w.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                context: "weight map source",
                expected: self.cols(),
                found: w.len(),
            });
        }
        Ok(Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn rank(&self) -> usize {
        rank_i64(&self.matrix, self.cols())
    }

    pub fn is_full_row_rank(&self) -> bool {
        self.rank() == self.rows()
    }
}

/// Simple generators `h_i, e_i, f_i` of a semisimple Lie algebra as matrices.
#[derive(Clone, Debug)]
struct Generators {
    dim: usize,
    h: Vec<RationalMatrix>,
    e: Vec<RationalMatrix>,
    f: Vec<RationalMatrix>,
}

impl Generators {
    fn map(&self, dim: usize, op: impl Fn(&RationalMatrix) -> RationalMatrix) -> Generators {
        Generators {
            dim,
            h: self.h.iter().map(&op).collect(),
            e: self.e.iter().map(&op).collect(),
            f: self.f.iter().map(&op).collect(),
        }
    }

    fn concat(parts: Vec<Generators>, dim: usize) -> Generators {
        let mut out = Generators {
            dim,
            h: Vec::new(),
            e: Vec::new(),
            f: Vec::new(),
        };
        for p in parts {
            assert_eq!(p.dim, dim);
            out.h.extend(p.h);
            out.e.extend(p.e);
            out.f.extend(p.f);
        }
        out
    }
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::unit(n, i, j, rat(1))
}

fn finish(dim: usize, e: Vec<RationalMatrix>, f: Vec<RationalMatrix>) -> Generators {
    let h = e.iter().zip(&f).map(|(a, b)| a.bracket(b)).collect();
    Generators { dim, h, e, f }
}

/// Defining module of a simple factor. Orderings: type A `1..n+1`; type B
/// `1..n, 0, -n..-1`; types C and D `1..n, -n..-1`.
fn standard_generators(factor: &Factor) -> Generators {
    let n = factor.rank;
    match factor.kind {
        CartanType::A => {
            let d = n + 1;
            let e = (0..n).map(|i| unit(d, i, i + 1)).collect();
            let f = (0..n).map(|i| unit(d, i + 1, i)).collect();
            finish(d, e, f)
        }
        CartanType::B | CartanType::C | CartanType::D => {
            let odd = factor.kind == CartanType::B;
            let d = if odd { 2 * n + 1 } else { 2 * n };
            let p = |i: usize| i - 1;
            let m = |i: usize| d - i;
            let z = n;
            let mut e = Vec::with_capacity(n);
            let mut f = Vec::with_capacity(n);
            for i in 1..n {
                e.push(&unit(d, p(i), p(i + 1)) - &unit(d, m(i + 1), m(i)));
                f.push(&unit(d, p(i + 1), p(i)) - &unit(d, m(i), m(i + 1)));
            }
            match factor.kind {
                CartanType::B => {
                    e.push(&unit(d, p(n), z) - &unit(d, z, m(n)));
                    f.push((&unit(d, z, p(n)) - &unit(d, m(n), z)).scale(&rat(2)));
                }
                CartanType::C => {
                    e.push(unit(d, p(n), m(n)));
                    f.push(unit(d, m(n), p(n)));
                }
                _ => {
                    e.push(&unit(d, p(n - 1), m(n)) - &unit(d, p(n), m(n - 1)));
                    f.push(&unit(d, m(n), p(n - 1)) - &unit(d, m(n - 1), p(n)));
                }
            }
            finish(d, e, f)
        }
    }
}

fn block_diag(blocks: &[&RationalMatrix]) -> RationalMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = RationalMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let v = b.get(i, j);
                if !v.is_zero() {
                    out.set(off + i, off + j, v.clone());
                }
            }
        }
        off += b.rows();
    }
    out
}

/// Defining module of a semisimple root system: direct sum over factors.
fn semisimple_generators(rs: &RootSystem) -> Generators {
    let parts: Vec<Generators> = rs.factors().iter().map(standard_generators).collect();
    let dim: usize = parts.iter().map(|g| g.dim).sum();
    let mut off = 0;
    let mut lifted = Vec::new();
    for g in &parts {
        let before = RationalMatrix::zeros(off, off);
        let after = RationalMatrix::zeros(dim - off - g.dim, dim - off - g.dim);
        lifted.push(g.map(dim, |x| block_diag(&[&before, x, &after])));
        off += g.dim;
    }
    Generators::concat(lifted, dim)
}

fn kron(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let (p, q) = (a.rows(), b.rows());
    let mut out = RationalMatrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..p {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..q {
                for l in 0..q {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * q + k, j * q + l, x * y);
                    }
                }
            }
        }
    }
    out
}

fn pair_index(n: usize, strict: bool) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>) {
    let mut pairs = Vec::new();
    for i in 0..n {
        let start = if strict { i + 1 } else { i };
        for j in start..n {
            pairs.push((i, j));
        }
    }
    let idx = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    (pairs, idx)
}

/// Induced action on `S²kⁿ`, basis `e_i e_j` (`i ≤ j`, lex).
fn sym2_matrix(x: &RationalMatrix) -> RationalMatrix {
    let n = x.rows();
    let (pairs, idx) = pair_index(n, false);
    let mut out = RationalMatrix::zeros(pairs.len(), pairs.len());
    for (c, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            for (src, other) in [(i, j), (j, i)] {
                let v = x.get(k, src);
                if v.is_zero() {
                    continue;
                }
                let key = (k.min(other), k.max(other));
                let r = idx[&key];
                let cur = out.get(r, c) + v;
                out.set(r, c, cur);
            }
        }
    }
    out
}

/// Induced action on `Λ²kⁿ`, basis `e_i ∧ e_j` (`i < j`, lex).
fn wedge2_matrix(x: &RationalMatrix) -> RationalMatrix {
    let n = x.rows();
    let (pairs, idx) = pair_index(n, true);
    let mut out = RationalMatrix::zeros(pairs.len(), pairs.len());
    for (c, &(i, j)) in pairs.iter().enumerate() {
        // X(e_i ∧ e_j) = Xe_i ∧ e_j + e_i ∧ Xe_j
        for k in 0..n {
            let a = x.get(k, i);
            if !a.is_zero() && k != j {
                let (r, s) = if k < j {
                    (idx[&(k, j)], 1)
                } else {
                    (idx[&(j, k)], -1)
                };
                let cur = out.get(r, c) + a * rat(s);
                out.set(r, c, cur);
            }
            let b = x.get(k, j);
            if !b.is_zero() && k != i {
                let (r, s) = if i < k {
                    (idx[&(i, k)], 1)
                } else {
                    (idx[&(k, i)], -1)
                };
                let cur = out.get(r, c) + b * rat(s);
                out.set(r, c, cur);
            }
        }
    }
    out
}

/// Chevalley-type basis of a Lie algebra acting on the defining module:
/// Cartan elements `h_i` plus one root vector per root, indexed like
/// `RootSystem::positive_roots`.
#[derive(Clone, Debug)]
pub struct LieRealization {
    pub dim: usize,
    pub cartan: Vec<RationalMatrix>,
    pub pos: Vec<RationalMatrix>,
    pub neg: Vec<RationalMatrix>,
}

impl LieRealization {
    fn from_generators(rs: &RootSystem, g: Generators) -> Self {
        let simple = rs.positive_roots_simple_coords();
        let index: HashMap<&[i64], usize> = simple
            .iter()
            .enumerate()
            .map(|(k, r)| (r.as_slice(), k))
            .collect();
        let mut pos: Vec<RationalMatrix> = Vec::with_capacity(simple.len());
        let mut neg: Vec<RationalMatrix> = Vec::with_capacity(simple.len());
        for r in simple {
            let height: i64 = r.iter().sum();
            if height == 1 {
                let i = r.iter().position(|&x| x == 1).expect("simple root");
                pos.push(g.e[i].clone());
                neg.push(g.f[i].clone());
                continue;
            }
            let (i, j) = (0..r.len())
                .filter(|&i| r[i] > 0)
                .find_map(|i| {
                    let mut s = r.clone();
                    s[i] -= 1;
                    index.get(s.as_slice()).map(|&j| (i, j))
                })
                .expect("every non-simple positive root has a predecessor");
            pos.push(g.e[i].bracket(&pos[j]));
            neg.push(neg[j].bracket(&g.f[i]));
        }
        Self {
            dim: g.dim,
            cartan: g.h,
            pos,
            neg,
        }
    }

    /// `cartan ++ pos ++ neg`.
    pub fn basis(&self) -> Vec<RationalMatrix> {
        self.cartan
            .iter()
            .chain(&self.pos)
            .chain(&self.neg)
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.cartan.len() + 2 * self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Diag,
    Sym2,
    Wedge2,
    Tensor,
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub name: String,
    pub kind: EmbeddingKind,
    pub g_rs: RootSystem,
    pub ghat_rs: RootSystem,
    pub wm: WeightMap,
    pub ambient_dim: usize,
    pub g: LieRealization,
    pub ghat: LieRealization,
}

/// Name templates accepted by `build_embedding`.
pub fn catalog() -> Vec<&'static str> {
    vec!["diag:<rs>", "sym2:<n>", "wedge2:<n>", "tensor:<p>x<q>"]
}

/// The fixed set of small instances used by the cross-validation suite.
pub fn desk_scale() -> Vec<&'static str> {
    vec![
        "diag:A1",
        "diag:A2",
        "sym2:2",
        "sym2:3",
        "wedge2:4",
        "tensor:2x2",
    ]
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidEmbedding {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn parse_dim(name: &str, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| invalid(name, format!("`{s}` is not a dimension")))
}

fn sl(n: usize) -> Factor {
    Factor::new(CartanType::A, n - 1)
}

pub fn build_embedding(name: &str) -> Result<Embedding> {
    let (kind, arg) = name
        .split_once(':')
        .ok_or_else(|| Error::UnknownEmbedding(name.to_string()))?;
    match kind {
        "diag" => {
            let rs: RootSystem = arg
                .parse()
                .map_err(|e: Error| invalid(name, e.to_string()))?;
            if rs.central_rank() > 0 || rs.semisimple_rank() == 0 {
                return Err(invalid(name, "diag needs a semisimple root system"));
            }
            let base = semisimple_generators(&rs);
            let n = base.dim;
            let zero = RationalMatrix::zeros(n, n);
            let g = base.map(2 * n, |x| block_diag(&[x, x]));
            let first = base.map(2 * n, |x| block_diag(&[x, &zero]));
            let second = base.map(2 * n, |x| block_diag(&[&zero, x]));
            let ghat_gens = Generators::concat(vec![first, second], 2 * n);
            let doubled: Vec<Factor> = rs.factors().iter().chain(rs.factors()).cloned().collect();
            let ghat_rs = RootSystem::new(&doubled)?;
            assemble(name, EmbeddingKind::Diag, rs, ghat_rs, g, ghat_gens, 0)
        }
        "sym2" | "wedge2" => {
            let n = parse_dim(name, arg)?;
            let wedge = kind == "wedge2";
            if wedge && n <= 3 {
                return Err(invalid(
                    name,
                    "needs n >= 4: for n = 3 the square is the dual module and G = Ĝ",
                ));
            }
            if n < 2 {
                return Err(invalid(name, "needs n >= 2"));
            }
            let g_rs = RootSystem::new(&[sl(n)])?;
            let base = semisimple_generators(&g_rs);
            let big = if wedge {
                n * (n - 1) / 2
            } else {
                n * (n + 1) / 2
            };
            let g = if wedge {
                base.map(big, wedge2_matrix)
            } else {
                base.map(big, sym2_matrix)
            };
            let ghat_rs = RootSystem::new(&[sl(big)])?;
            let ghat_gens = semisimple_generators(&ghat_rs);
            let kind = if wedge {
                EmbeddingKind::Wedge2
            } else {
                EmbeddingKind::Sym2
            };
            assemble(name, kind, g_rs, ghat_rs, g, ghat_gens, 0)
        }
        "tensor" => {
            let (p, q) = arg
                .split_once(['x', 'X'])
                .ok_or_else(|| invalid(name, "expected <p>x<q>"))?;
            let (p, q) = (parse_dim(name, p)?, parse_dim(name, q)?);
            if p < 2 || q < 2 {
                return Err(invalid(name, "needs p, q >= 2"));
            }
            let g_rs = RootSystem::with_center(&[sl(p), sl(q)], 1)?;
            let ep = semisimple_generators(&RootSystem::new(&[sl(p)])?);
            let fq = semisimple_generators(&RootSystem::new(&[sl(q)])?);
            let (ip, iq) = (RationalMatrix::identity(p), RationalMatrix::identity(q));
            let g = Generators::concat(
                vec![
                    ep.map(p * q, |x| kron(x, &iq)),
                    fq.map(p * q, |y| kron(&ip, y)),
                ],
                p * q,
            );
            let ghat_rs = RootSystem::with_center(&[sl(p * q)], 1)?;
            let ghat_gens = semisimple_generators(&RootSystem::new(&[sl(p * q)])?);
            assemble(name, EmbeddingKind::Tensor, g_rs, ghat_rs, g, ghat_gens, 1)
        }
        _ => Err(Error::UnknownEmbedding(name.to_string())),
    }
}

/// Solves `h_i = Σ_k c_ik ĥ_k` on the diagonals.
fn coroot_coefficients(g_h: &[RationalMatrix], ghat_h: &[RationalMatrix]) -> Result<Vec<Vec<i64>>> {
    let n = ghat_h.first().map_or(0, RationalMatrix::rows);
    let diag =
        |m: &RationalMatrix| -> Vec<Rational> { (0..n).map(|a| m.get(a, a).clone()).collect() };
    let hat_cols: Vec<Vec<Rational>> = ghat_h.iter().map(diag).collect();
    let mut out = Vec::with_capacity(g_h.len());
    for h in g_h {
        let mut cols = hat_cols.clone();
        cols.push(diag(h));
        let rel = column_relations(&cols, n);
        let r = rel
            .iter()
            .find(|v| !v[hat_cols.len()].is_zero())
            .ok_or_else(|| Error::Integrity("Cartan element of G not inside Ĝ's Cartan".into()))?;
        let last = r[hat_cols.len()].clone();
        let row = r[..hat_cols.len()]
            .iter()
            .map(|c| {
                let q = -(c / &last);
                if !q.is_integer() {
                    return Err(Error::Integrity("non-integral weight restriction".into()));
                }
                Ok(q.to_integer().to_i64().expect("small coefficient"))
            })
            .collect::<Result<Vec<i64>>>()?;
        out.push(row);
    }
    Ok(out)
}

fn assemble(
    name: &str,
    kind: EmbeddingKind,
    g_rs: RootSystem,
    ghat_rs: RootSystem,
    g: Generators,
    ghat: Generators,
    central: usize,
) -> Result<Embedding> {
    let ss = coroot_coefficients(&g.h, &ghat.h)?;
    let cols = ghat_rs.rank();
    let mut matrix: Vec<Vec<i64>> = ss
        .into_iter()
        .map(|mut r| {
            r.resize(cols, 0);
            r
        })
        .collect();
    for c in 0..central {
        let mut r = vec![0; cols];
        r[ghat_rs.semisimple_rank() + c] = 1;
        matrix.push(r);
    }
    let ambient_dim = ghat.dim;
    let e = Embedding {
        name: name.to_string(),
        kind,
        g: LieRealization::from_generators(&g_rs, g),
        ghat: LieRealization::from_generators(&ghat_rs, ghat),
        g_rs,
        ghat_rs,
        wm: WeightMap::new(matrix),
        ambient_dim,
    };
    Ok(e)
}

pub(crate) fn flatten_all(mats: &[RationalMatrix], n2: usize) -> Subspace {
    let flat: Vec<Vec<Rational>> = mats.iter().map(RationalMatrix::flatten).collect();
    Subspace::span(n2, flat.iter().map(Vec::as_slice))
}

/// Keeps a linearly independent subfamily.
fn independent(mats: Vec<RationalMatrix>) -> Vec<RationalMatrix> {
    let Some(first) = mats.first() else {
        return mats;
    };
    let mut ech = Echelon::new(first.rows() * first.cols());
    mats.into_iter()
        .filter(|m| ech.insert(&m.flatten()))
        .collect()
}

impl Embedding {
    /// Basis of `Lie([G,G])` as matrices on the defining module.
    pub fn lie_g_basis(&self) -> Vec<RationalMatrix> {
        self.g.basis()
    }

    pub fn lie_ghat_basis(&self) -> Vec<RationalMatrix> {
        self.ghat.basis()
    }

    /// Ĝ-weights of the ambient basis vectors. Central coordinates record the
    /// degree, which is 1 on the defining module.
    pub fn ambient_hat_weights(&self) -> Vec<Weight> {
        let r = self.ghat_rs.semisimple_rank();
        (0..self.ambient_dim)
            .map(|a| {
                let mut w: Vec<i64> = self
                    .ghat
                    .cartan
                    .iter()
                    .map(|h| h.get(a, a).to_integer().to_i64().expect("integral weight"))
                    .collect();
                w.extend(std::iter::repeat_n(1, self.ghat_rs.rank() - r));
                Weight(w)
            })
            .collect()
    }

    /// T-weights of the ambient basis vectors.
    pub fn ambient_weights(&self) -> Vec<Weight> {
        self.ambient_hat_weights()
            .iter()
            .map(|w| self.wm.apply(w).expect("weight map matches Ĝ rank"))
            .collect()
    }

    /// Restriction of the `k`-th positive root of Ĝ to T.
    pub fn restricted_hat_root(&self, k: usize) -> Weight {
        self.wm
            .apply(&self.ghat_rs.positive_roots()[k])
            .expect("weight map matches Ĝ rank")
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n2 = self.ambient_dim * self.ambient_dim;
        check_chevalley(&self.g_rs, &self.g, "G")?;
        check_chevalley(&self.ghat_rs, &self.ghat, "Ĝ")?;

        let basis = self.lie_g_basis();
        let span = flatten_all(&basis, n2);
        if span.dim() != basis.len() {
            return Err(Error::Integrity(format!(
                "{}: Lie(G) basis is dependent",
                self.name
            )));
        }
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                if !span.contains(&x.bracket(y).flatten()) {
                    return Err(Error::Integrity(format!(
                        "{}: Lie(G) not bracket closed",
                        self.name
                    )));
                }
            }
            if !x.trace().is_zero() {
                return Err(Error::Integrity(format!(
                    "{}: generator not traceless",
                    self.name
                )));
            }
        }
        if !flatten_all(&self.lie_ghat_basis(), n2).contains_subspace(&span) {
            return Err(Error::Integrity(format!(
                "{}: Lie(G) not inside Lie(Ĝ)",
                self.name
            )));
        }

        let weights = self.ambient_weights();
        for (i, h) in self.g.cartan.iter().enumerate() {
            if !h.is_diagonal() {
                return Err(Error::Integrity(format!(
                    "{}: Cartan element not diagonal",
                    self.name
                )));
            }
            for (a, w) in weights.iter().enumerate() {
                if *h.get(a, a) != rat(w[i]) {
                    return Err(Error::Integrity(format!(
                        "{}: Cartan eigenvalue disagrees with weight map",
                        self.name
                    )));
                }
            }
        }
        if !self.wm.is_full_row_rank() {
            return Err(Error::Integrity(format!(
                "{}: weight map not surjective",
                self.name
            )));
        }
        Ok(())
    }

    pub fn dump(&self) -> EmbeddingDump {
        let conv =
            |ms: &[RationalMatrix]| ms.iter().map(RationalMatrix::to_fraction_rows).collect();
        EmbeddingDump {
            name: self.name.clone(),
            g: self.g_rs.to_string(),
            ghat: self.ghat_rs.to_string(),
            ambient_dim: self.ambient_dim,
            wm: self.wm.matrix().to_vec(),
            ambient_weights: self.ambient_weights(),
            cartan: conv(&self.g.cartan),
            positive: conv(&self.g.pos),
            negative: conv(&self.g.neg),
        }
    }
}

fn check_chevalley(rs: &RootSystem, r: &LieRealization, label: &str) -> Result<()> {
    let c = rs.cartan_matrix();
    let k = c.len();
    let err = |what: &str| Error::Integrity(format!("{label}: {what}"));
    for i in 0..k {
        if r.pos[i].bracket(&r.neg[i]) != r.cartan[i] {
            return Err(err("[e_i, f_i] != h_i"));
        }
        for j in 0..k {
            let a = rat(c[j][i]);
            if r.cartan[i].bracket(&r.pos[j]) != r.pos[j].scale(&a) {
                return Err(err("[h_i, e_j] != a_ji e_j"));
            }
            if r.cartan[i].bracket(&r.neg[j]) != r.neg[j].scale(&-a) {
                return Err(err("[h_i, f_j] != -a_ji f_j"));
            }
            if i != j && !r.pos[i].bracket(&r.neg[j]).is_zero() {
                return Err(err("[e_i, f_j] != 0"));
            }
        }
    }
    for (p, q) in r.pos.iter().zip(&r.neg) {
        if p.is_zero() || q.is_zero() {
            return Err(err("vanishing root vector"));
        }
        for a in 0..r.dim {
            for b in 0..=a {
                if !p.get(a, b).is_zero() {
                    return Err(err("positive root vector not strictly upper triangular"));
                }
            }
        }
    }
    Ok(())
}

/// JSON view of an embedding; matrices as rows of `[numerator, denominator]`.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingDump {
    pub name: String,
    pub g: String,
    pub ghat: String,
    pub ambient_dim: usize,
    pub wm: Vec<Vec<i64>>,
    pub ambient_weights: Vec<Weight>,
    pub cartan: Vec<Vec<Vec<[String; 2]>>>,
    pub positive: Vec<Vec<Vec<[String; 2]>>>,
    pub negative: Vec<Vec<Vec<[String; 2]>>>,
}

/// Parabolic data attached to a face, read off from a cocharacter
/// `λ = Σ_{i∈I} c_i ϖ_i^∨` of the center of L.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub face: Face,
    pub levi: LeviData,
    /// `c_i`, zero off the support.
    pub lambda: Vec<i64>,
    /// `<β̂, λ>` (scaled) for each positive root of Ĝ.
    pub hat_grades: Vec<i64>,
    /// `<w_a, λ>` (scaled) for each ambient basis vector.
    pub ambient_grades: Vec<i64>,
    pub t_weights_on_puhat_mod_pu: Vec<Weight>,
    pub pu_matrices: Vec<RationalMatrix>,
    pub puhat_matrices: Vec<RationalMatrix>,
    pub levi_l_matrices: Vec<RationalMatrix>,
    pub borel_bl_matrices: Vec<RationalMatrix>,
    pub d_matrices: Vec<RationalMatrix>,
    pub levi_lhat_matrices: Vec<RationalMatrix>,
    /// Borel of L̂: Cartan of Ĝ plus the positive root vectors of grade 0.
    pub borel_lhat_matrices: Vec<RationalMatrix>,
    pub dhat_borel_matrices: Vec<RationalMatrix>,
    /// Root vectors of D̂ (grade 0), positive then negative.
    pub dhat_pos: Vec<RationalMatrix>,
    pub dhat_neg: Vec<RationalMatrix>,
}

/// Restrictions of Ĝ's positive roots to the face directions, in scaled
/// simple-root coordinates of G.
fn face_projections(e: &Embedding, f: &Face) -> Vec<Vec<i64>> {
    (0..e.ghat_rs.positive_roots().len())
        .map(|k| {
            let rc = e.g_rs.scaled_root_coords(&e.restricted_hat_root(k));
            f.support.iter().map(|&i| rc[i]).collect()
        })
        .collect()
}

fn is_generic(proj: &[Vec<i64>], c: &[i64]) -> bool {
    proj.iter()
        .all(|p| p.iter().all(|&x| x == 0) || p.iter().zip(c).map(|(a, b)| a * b).sum::<i64>() != 0)
}

/// Positive integer vectors of length `len` summing to `total`, lex order.
fn compositions(total: i64, len: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let max = total - (len as i64 - 1);
    for x in 1..=max {
        prefix.push(x);
        compositions(total - x, len - 1, prefix, out);
        prefix.pop();
    }
}

/// The first positive `c` (by sum, then lex) such that no Ĝ-root that is
/// nonzero on the center of L is orthogonal to `λ`.
pub fn generic_cocharacter(e: &Embedding, f: &Face) -> Result<Vec<i64>> {
    e.g_rs.check_face(f)?;
    let proj = face_projections(e, f);
    let len = f.support.len();
    let mut full = vec![0i64; e.g_rs.semisimple_rank()];
    if len == 0 {
        return Ok(full);
    }
    let mut total = len as i64;
    loop {
        let mut cands = Vec::new();
        compositions(total, len, &mut Vec::new(), &mut cands);
        if let Some(c) = cands.into_iter().find(|c| is_generic(&proj, c)) {
            for (&i, x) in f.support.iter().zip(c) {
                full[i] = x;
            }
            return Ok(full);
        }
        total += 1;
    }
}

pub fn parabolic_data(e: &Embedding, f: &Face) -> Result<ParabolicData> {
    let lambda = generic_cocharacter(e, f)?;
    parabolic_data_with(e, f, lambda)
}

/// Parabolic data for `F₁ ⊂ F₂` with `λ₂ = K λ₁ + λ₂'`, so that `P̂₂ ⊆ P̂₁`.
pub fn compatible_pair(
    e: &Embedding,
    f1: &Face,
    f2: &Face,
) -> Result<(ParabolicData, ParabolicData)> {
    if !f1.is_subface_of(f2) {
        return Err(Error::InvalidFace(format!("{f1} is not contained in {f2}")));
    }
    let p1 = parabolic_data(e, f1)?;
    let l2 = generic_cocharacter(e, f2)?;
    let g2 = grades(e, &l2);
    let k = g2.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    let lambda: Vec<i64> = p1.lambda.iter().zip(&l2).map(|(a, b)| k * a + b).collect();
    let p2 = parabolic_data_with(e, f2, lambda)?;
    Ok((p1, p2))
}

fn grades(e: &Embedding, lambda: &[i64]) -> Vec<i64> {
    (0..e.ghat_rs.positive_roots().len())
        .map(|k| pair_with(e, &e.restricted_hat_root(k), lambda))
        .collect()
}

fn pair_with(e: &Embedding, w: &[i64], lambda: &[i64]) -> i64 {
    e.g_rs
        .scaled_root_coords(w)
        .iter()
        .zip(lambda)
        .map(|(a, b)| a * b)
        .sum()
}

pub fn parabolic_data_with(e: &Embedding, f: &Face, lambda: Vec<i64>) -> Result<ParabolicData> {
    let levi = e.g_rs.levi_data(f)?;
    let ok_support = (0..lambda.len()).all(|i| (lambda[i] > 0) == f.contains_index(i));
    let proj = face_projections(e, f);
    let c: Vec<i64> = f.support.iter().map(|&i| lambda[i]).collect();
    if lambda.len() != e.g_rs.semisimple_rank() || !ok_support || !is_generic(&proj, &c) {
        return Err(Error::Integrity(format!(
            "cocharacter {lambda:?} is not generic for face {f}"
        )));
    }
    let hat_grades = grades(e, &lambda);
    let ambient_grades = e
        .ambient_weights()
        .iter()
        .map(|w| pair_with(e, w, &lambda))
        .collect();

    let (mut puhat, mut lhat, mut bhat, mut dhat_pos, mut dhat_neg) = (
        Vec::new(),
        e.ghat.cartan.clone(),
        e.ghat.cartan.clone(),
        Vec::new(),
        Vec::new(),
    );
    let mut hat_weights: Vec<Weight> = Vec::new();
    for (k, &gr) in hat_grades.iter().enumerate() {
        let (p, n) = (&e.ghat.pos[k], &e.ghat.neg[k]);
        let w = e.restricted_hat_root(k);
        match gr.signum() {
            1 => {
                puhat.push(p.clone());
                hat_weights.push(w);
            }
            -1 => {
                puhat.push(n.clone());
                hat_weights.push(-&w);
            }
            _ => {
                lhat.push(p.clone());
                lhat.push(n.clone());
                bhat.push(p.clone());
                dhat_pos.push(p.clone());
                dhat_neg.push(n.clone());
            }
        }
    }
    let dhat_cartan = independent(
        dhat_pos
            .iter()
            .zip(&dhat_neg)
            .map(|(a, b)| a.bracket(b))
            .collect(),
    );
    let mut dhat_borel = dhat_cartan;
    dhat_borel.extend(dhat_pos.iter().cloned());

    let g = &e.g;
    let pu: Vec<RationalMatrix> = levi
        .pu_positive_roots
        .iter()
        .map(|&k| g.pos[k].clone())
        .collect();
    let mut l = g.cartan.clone();
    let mut bl = g.cartan.clone();
    let mut d: Vec<RationalMatrix> = levi
        .levi_simple_roots
        .iter()
        .map(|&j| g.cartan[j].clone())
        .collect();
    for &k in &levi.levi_positive_roots {
        l.push(g.pos[k].clone());
        l.push(g.neg[k].clone());
        bl.push(g.pos[k].clone());
        d.push(g.pos[k].clone());
        d.push(g.neg[k].clone());
    }

    let mut counts: HashMap<Weight, i64> = HashMap::new();
    for w in hat_weights {
        *counts.entry(w).or_insert(0) += 1;
    }
    for &k in &levi.pu_positive_roots {
        let e_k = counts
            .entry(e.g_rs.positive_roots()[k].clone())
            .or_insert(0);
        *e_k -= 1;
        if *e_k < 0 {
            return Err(Error::Integrity(format!(
                "{}: p^u weight missing from p̂^u",
                e.name
            )));
        }
    }
    let mut quotient: Vec<Weight> = Vec::new();
    for (w, c) in counts {
        for _ in 0..c {
            quotient.push(w.clone());
        }
    }
    quotient.sort();

    Ok(ParabolicData {
        face: f.clone(),
        levi,
        lambda,
        hat_grades,
        ambient_grades,
        t_weights_on_puhat_mod_pu: quotient,
        pu_matrices: pu,
        puhat_matrices: puhat,
        levi_l_matrices: l,
        borel_bl_matrices: bl,
        d_matrices: d,
        levi_lhat_matrices: lhat,
        borel_lhat_matrices: bhat,
        dhat_borel_matrices: dhat_borel,
        dhat_pos,
        dhat_neg,
    })
}

impl ParabolicData {
    /// Ambient basis order under which `b̂_L̂ ⊕ p̂^u` is upper triangular:
    /// decreasing grade, ties by index.
    pub fn flag_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.ambient_grades.len()).collect();
        order.sort_by(|&a, &b| {
            self.ambient_grades[b]
                .cmp(&self.ambient_grades[a])
                .then(a.cmp(&b))
        });
        order
    }

    pub fn check_invariants(&self, e: &Embedding) -> Result<()> {
        let n2 = e.ambient_dim * e.ambient_dim;
        let err = |what: &str| {
            Err(Error::Integrity(format!(
                "{} face {}: {what}",
                e.name, self.face
            )))
        };
        let g = flatten_all(&e.lie_g_basis(), n2);
        let pu = flatten_all(&self.pu_matrices, n2);
        let puhat = flatten_all(&self.puhat_matrices, n2);
        let l = flatten_all(&self.levi_l_matrices, n2);
        let lhat = flatten_all(&self.levi_lhat_matrices, n2);
        if self.puhat_matrices.len() - self.pu_matrices.len()
            != self.t_weights_on_puhat_mod_pu.len()
        {
            return err("quotient dimension");
        }
        if crate::exactq::span_intersection(&puhat, &g)? != pu {
            return err("p^u != p̂^u ∩ g");
        }
        if crate::exactq::span_intersection(&lhat, &g)? != l {
            return err("l != l̂ ∩ g");
        }
        for x in &self.levi_l_matrices {
            if !self
                .puhat_matrices
                .iter()
                .all(|a| puhat.contains(&x.bracket(a).flatten()))
            {
                return err("[l, p̂^u] not in p̂^u");
            }
            if !self
                .pu_matrices
                .iter()
                .all(|a| pu.contains(&x.bracket(a).flatten()))
            {
                return err("[l, p^u] not in p^u");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: &str) -> Embedding {
        build_embedding(name).unwrap()
    }

    #[test]
    fn realizations_satisfy_chevalley_relations() {
        for spec in ["A1", "A3", "B2", "B3", "C2", "C3", "D4", "A1xB2"] {
            let e = build(&format!("diag:{spec}"));
            e.check_invariants()
                .unwrap_or_else(|err| panic!("{spec}: {err}"));
        }
    }

    #[test]
    fn desk_scale_invariants() {
        for name in desk_scale()
            .into_iter()
            .chain(["sym2:4", "wedge2:5", "tensor:2x3"])
        {
            build(name)
                .check_invariants()
                .unwrap_or_else(|err| panic!("{name}: {err}"));
        }
    }

    #[test]
    fn sym2_2_is_the_three_dimensional_irrep() {
        let e = build("sym2:2");
        assert_eq!(e.ambient_dim, 3);
        let ws: Vec<i64> = e.ambient_weights().iter().map(|w| w[0]).collect();
        assert_eq!(ws, vec![2, 0, -2]);
        assert_eq!(e.wm.matrix(), &[vec![2, 2]]);
    }

    #[test]
    fn diag_weight_map_sums_copies() {
        assert_eq!(build("diag:A1").wm.matrix(), &[vec![1, 1]]);
        assert_eq!(
            build("diag:A2").wm.matrix(),
            &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]
        );
    }

    #[test]
    fn wedge2_small_is_rejected() {
        assert!(matches!(
            build_embedding("wedge2:3"),
            Err(Error::InvalidEmbedding { .. })
        ));
        assert!(matches!(
            build_embedding("foo:3"),
            Err(Error::UnknownEmbedding(_))
        ));
        assert!(build_embedding("sym2:1").is_err());
        assert!(build_embedding("tensor:1x3").is_err());
    }

    #[test]
    fn tensor_tracks_the_center() {
        let e = build("tensor:2x2");
        assert_eq!(e.g_rs.rank(), 3);
        assert_eq!(e.ghat_rs.rank(), 4);
        assert_eq!(e.wm.matrix()[2], vec![0, 0, 0, 1]);
        assert!(e.ambient_weights().iter().all(|w| w[2] == 1));
    }

    #[test]
    fn parabolic_examples() {
        let e = build("diag:A1");
        let p0 = parabolic_data(&e, &Face::zero()).unwrap();
        assert!(p0.t_weights_on_puhat_mod_pu.is_empty());
        assert!(p0.puhat_matrices.is_empty());

        let pf = parabolic_data(&e, &e.g_rs.full_face()).unwrap();
        assert_eq!(pf.pu_matrices.len(), 1);
        assert_eq!(pf.puhat_matrices.len(), 2);
        assert_eq!(pf.t_weights_on_puhat_mod_pu, vec![Weight(vec![2])]);

        let e = build("sym2:2");
        let pf = parabolic_data(&e, &e.g_rs.full_face()).unwrap();
        assert_eq!(pf.puhat_matrices.len(), 3);
        let mut ws: Vec<i64> = pf.t_weights_on_puhat_mod_pu.iter().map(|w| w[0]).collect();
        ws.sort();
        assert_eq!(ws, vec![2, 4]);
    }

    #[test]
    fn parabolic_invariants_every_face() {
        for name in desk_scale() {
            let e = build(name);
            for f in e.g_rs.faces() {
                let p = parabolic_data(&e, &f).unwrap();
                p.check_invariants(&e).unwrap_or_else(|err| panic!("{err}"));
            }
        }
    }

    #[test]
    fn nested_faces_give_nested_parabolics() {
        for name in desk_scale() {
            let e = build(name);
            let n2 = e.ambient_dim * e.ambient_dim;
            let faces = e.g_rs.faces();
            for f1 in &faces {
                for f2 in faces.iter().filter(|f2| f1.is_subface_of(f2)) {
                    let (p1, p2) = compatible_pair(&e, f1, f2).unwrap();
                    p2.check_invariants(&e).unwrap();
                    let u1 = flatten_all(&p1.puhat_matrices, n2);
                    let u2 = flatten_all(&p2.puhat_matrices, n2);
                    assert!(u2.contains_subspace(&u1), "{name} {f1} {f2}");
                }
            }
        }
    }

    #[test]
    fn weight_map_apply_checks_length() {
        let wm = WeightMap::new(vec![vec![1, 1]]);
        assert_eq!(wm.apply(&[2, 3]).unwrap(), Weight(vec![5]));
        assert!(wm.apply(&[1]).is_err());
        assert!(wm.is_full_row_rank());
    }

    #[test]
    fn dump_serializes() {
        let d = build("sym2:2").dump();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"ambient_dim\":3"));
    }
}
