//! Finite windows onto the semigroup `C = {(μ, ν̂) : (V_μ, V_ν̂|_G) ≠ 0}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::exactq::{rank_i64, ratio, Rational};
use crate::repcalc::{
    branch, brauer_decompose, freudenthal_character, restrict_character, DominantCharCache,
};
use crate::rootsys::{Face, Weight};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupPoint {
    pub mu: Weight,
    pub nuhat: Weight,
    pub mult: u64,
}

impl SemigroupPoint {
    fn coords(&self) -> Vec<i64> {
        self.mu.concat(&self.nuhat).0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSample {
    pub embedding: String,
    pub bound: usize,
    pub saturated: bool,
    pub points: Vec<SemigroupPoint>,
}

/// How per-ν̂ fibers are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, else sequential.
    #[default]
    Parallel,
}

/// Desk-scale enumeration bound, by semisimple rank of Ĝ.
pub fn default_bound(e: &Embedding) -> usize {
    match e.ghat_rs.semisimple_rank() {
        0..=2 => 4,
        3..=4 => 3,
        _ => 2,
    }
}

fn fiber(
    e: &Embedding,
    nuhat: &Weight,
    cache: &mut DominantCharCache,
) -> Result<Vec<SemigroupPoint>> {
    let d = branch(&e.ghat_rs, &e.g_rs, &e.wm, nuhat, cache)?;
    Ok(d.terms
        .into_iter()
        .map(|(mu, mult)| SemigroupPoint {
            mu,
            nuhat: nuhat.clone(),
            mult,
        })
        .collect())
}

fn fibers(e: &Embedding, nus: &[Weight], exec: Exec) -> Result<Vec<SemigroupPoint>> {
    let parts: Vec<Result<Vec<SemigroupPoint>>> = match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            nus.par_iter()
                .map_init(DominantCharCache::default, |cache, nu| fiber(e, nu, cache))
                .collect()
        }
        _ => {
            let mut cache = DominantCharCache::default();
            nus.iter().map(|nu| fiber(e, nu, &mut cache)).collect()
        }
    };
    let mut points = Vec::new();
    for p in parts {
        points.extend(p?);
    }
    Ok(points)
}

pub fn enumerate(e: &Embedding, bound: usize) -> Result<SemigroupSample> {
    enumerate_with(e, bound, Exec::default())
}

pub fn enumerate_with(e: &Embedding, bound: usize, exec: Exec) -> Result<SemigroupSample> {
    let nus = e.ghat_rs.dominant_weights_up_to(bound);
    let points = fibers(e, &nus, exec)?;
    let mut s = SemigroupSample {
        embedding: e.name.clone(),
        bound,
        saturated: false,
        points,
    };
    if bound > 0 {
        let now = span_profile(e, &s, bound);
        s.saturated = now == span_profile(e, &s, bound - 1) || now == span_ceiling(e);
    }
    Ok(s)
}

/// Largest possible value of each entry of `span_profile`: spans that reach it
/// cannot grow any further.
fn span_ceiling(e: &Embedding) -> Vec<usize> {
    let hat = e.ghat_rs.rank();
    let mut out = vec![e.g_rs.rank() + hat];
    out.extend(e.g_rs.faces().iter().map(|f| f.dim(&e.g_rs) + hat));
    out
}

/// `dim C` followed by `dim C_F` for every face, using points with ν̂ ≤ `b`.
fn span_profile(e: &Embedding, s: &SemigroupSample, b: usize) -> Vec<usize> {
    let b = b as i64;
    let window: Vec<&SemigroupPoint> = s
        .points
        .iter()
        .filter(|p| p.nuhat.iter().all(|&x| x <= b))
        .collect();
    let n = e.g_rs.rank() + e.ghat_rs.rank();
    let rank_of = |pts: &mut dyn Iterator<Item = &&SemigroupPoint>| {
        let rows: Vec<Vec<i64>> = pts.map(|p| p.coords()).collect();
        rank_i64(&rows, n)
    };
    let mut out = vec![rank_of(&mut window.iter())];
    for f in e.g_rs.faces() {
        out.push(rank_of(
            &mut window.iter().filter(|p| f.contains_weight(&e.g_rs, &p.mu)),
        ));
    }
    out
}

fn span_dim(points: &[SemigroupPoint]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let n = first.mu.len() + first.nuhat.len();
    let rows: Vec<Vec<i64>> = points.iter().map(SemigroupPoint::coords).collect();
    rank_i64(&rows, n)
}

pub fn dim_c(s: &SemigroupSample) -> usize {
    span_dim(&s.points)
}

pub fn c_face(e: &Embedding, s: &SemigroupSample, f: &Face) -> Vec<SemigroupPoint> {
    s.points
        .iter()
        .filter(|p| f.contains_weight(&e.g_rs, &p.mu))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDirect {
    pub value: i64,
    /// When false the value is only an upper bound.
    pub saturated: bool,
    pub dim_c: usize,
    pub dim_c_face: usize,
    pub dim_face: usize,
}

/// `δ_F = dim C − dim C_F + dim F − rank T`.
pub fn delta_direct(e: &Embedding, s: &SemigroupSample, f: &Face) -> Result<DeltaDirect> {
    e.g_rs.check_face(f)?;
    let dim_c = dim_c(s);
    let dim_c_face = span_dim(&c_face(e, s, f));
    let dim_face = f.dim(&e.g_rs);
    Ok(DeltaDirect {
        value: dim_c as i64 - dim_c_face as i64 + dim_face as i64 - e.g_rs.rank() as i64,
        saturated: s.saturated,
        dim_c,
        dim_c_face,
        dim_face,
    })
}

/// A point `μ/n` of a moment polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlicePoint {
    pub n: u64,
    pub mu: Weight,
}

impl SlicePoint {
    pub fn rational(&self) -> Vec<Rational> {
        self.mu.iter().map(|&x| ratio(x, self.n as i64)).collect()
    }
}

/// All `(n, μ)` with `n ≤ nmax` and `(μ, n ν̂) ∈ C`.
pub fn moment_polytope_slice(
    e: &Embedding,
    nuhat: &Weight,
    nmax: usize,
) -> Result<Vec<SlicePoint>> {
    e.ghat_rs.require_dominant(nuhat)?;
    let mut cache = DominantCharCache::default();
    let mut out = Vec::new();
    for n in 1..=nmax {
        let scaled = nuhat.scaled(n as i64);
        for (mu, _) in branch(&e.ghat_rs, &e.g_rs, &e.wm, &scaled, &mut cache)?.terms {
            out.push(SlicePoint { n: n as u64, mu });
        }
    }
    Ok(out)
}

/// Distinct rational points of a slice, sorted.
pub fn distinct_points(slice: &[SlicePoint]) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = slice.iter().map(SlicePoint::rational).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Dimension of the affine span; `-1` for the empty set.
pub fn affine_dim(points: &[Vec<Rational>]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    crate::exactq::Subspace::span(first.len(), diffs.iter().map(Vec::as_slice)).dim() as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolmomEntry {
    pub nuhat: Weight,
    pub dim_p: i64,
    pub dim_p_cap_f: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// `dim P = rank T` and `dim(P ∩ F) = dim F`.
    pub in_window: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolmomReport {
    pub embedding: String,
    pub face: String,
    pub nmax: usize,
    /// `<C>` is everything: `dim C = rank T + rank T̂`.
    pub spanning_hypothesis: bool,
    pub face_full: bool,
    pub entries: Vec<PolmomEntry>,
}

fn polmom_entry(e: &Embedding, f: &Face, nuhat: &Weight, nmax: usize) -> Result<PolmomEntry> {
    let slice = moment_polytope_slice(e, nuhat, nmax)?;
    let pts = distinct_points(&slice);
    let in_f: Vec<Vec<Rational>> = slice
        .iter()
        .filter(|p| f.contains_weight(&e.g_rs, &p.mu))
        .map(SlicePoint::rational)
        .collect();
    let mut in_f = in_f;
    in_f.sort();
    in_f.dedup();
    let dim_p = affine_dim(&pts);
    let dim_p_cap_f = affine_dim(&in_f);
    let rank = e.g_rs.rank() as i64;
    let dim_f = f.dim(&e.g_rs) as i64;
    let lhs = dim_p - dim_p_cap_f;
    let rhs = rank - dim_f;
    Ok(PolmomEntry {
        nuhat: nuhat.clone(),
        dim_p,
        dim_p_cap_f,
        lhs,
        rhs,
        holds: lhs == rhs,
        in_window: dim_p == rank && dim_p_cap_f == dim_f,
    })
}

/// Checks `dim P_ν̂ − dim(P_ν̂ ∩ F) = rank T − dim F` on the first `samples`
/// interior dominant ν̂ with coordinates ≤ `bound`, plus any `extra` ν̂.
pub fn polmom_check(
    e: &Embedding,
    f: &Face,
    samples: usize,
    bound: usize,
    nmax: usize,
    extra: &[Weight],
) -> Result<PolmomReport> {
    e.g_rs.check_face(f)?;
    let s = enumerate(e, bound)?;
    let spanning = dim_c(&s) == e.g_rs.rank() + e.ghat_rs.rank();
    let face_full = delta_direct(e, &s, f)?.value == 0;
    let r = e.ghat_rs.semisimple_rank();
    let mut nus: Vec<Weight> = e
        .ghat_rs
        .dominant_weights_up_to(bound)
        .into_iter()
        .filter(|w| w[..r].iter().all(|&x| x > 0))
        .take(samples)
        .collect();
    nus.extend(extra.iter().cloned());
    let entries = nus
        .iter()
        .map(|nu| polmom_entry(e, f, nu, nmax))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolmomReport {
        embedding: e.name.clone(),
        face: f.label(),
        nmax,
        spanning_hypothesis: spanning,
        face_full,
        entries,
    })
}

impl SemigroupSample {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(p) = self.points.first() {
            let mut head: Vec<String> = (1..=p.mu.len()).map(|i| format!("mu_{i}")).collect();
            head.extend((1..=p.nuhat.len()).map(|i| format!("nuhat_{i}")));
            head.push("mult".into());
            out.push_str(&head.join(","));
            out.push('\n');
        }
        for p in &self.points {
            let cells: Vec<String> =
                p.mu.iter()
                    .chain(p.nuhat.iter())
                    .map(i64::to_string)
                    .chain(std::iter::once(p.mult.to_string()))
                    .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Multiplicities grouped by ν̂.
    pub fn fibers(&self) -> BTreeMap<&Weight, Vec<&SemigroupPoint>> {
        let mut m: BTreeMap<&Weight, Vec<&SemigroupPoint>> = BTreeMap::new();
        for p in &self.points {
            m.entry(&p.nuhat).or_default().push(p);
        }
        m
    }
}

/// Recomputes every fiber through the full-character path (restriction of the
/// whole weight multiset, then decomposition) and compares.
pub fn verify_sample(e: &Embedding, s: &SemigroupSample) -> Result<()> {
    verify_sample_window(e, s, s.bound)
}

/// As `verify_sample`, recomputing only fibers over ν̂ with coordinates
/// `≤ window`; the structural checks still cover the whole sample.
pub fn verify_sample_window(e: &Embedding, s: &SemigroupSample, window: usize) -> Result<()> {
    let fail = |msg: String| Err(Error::Integrity(format!("{}: {msg}", s.embedding)));
    if s.embedding != e.name {
        return fail(format!("sample belongs to {}", s.embedding));
    }
    let origin = SemigroupPoint {
        mu: e.g_rs.zero_weight(),
        nuhat: e.ghat_rs.zero_weight(),
        mult: 1,
    };
    if !s.points.contains(&origin) {
        return fail("origin (0,0) with multiplicity 1 missing".into());
    }
    let fibers = s.fibers();
    let nus = e.ghat_rs.dominant_weights_up_to(s.bound);
    let expected: std::collections::BTreeSet<&Weight> = nus.iter().collect();
    for nu in fibers.keys() {
        if !expected.contains(nu) {
            return fail(format!("unexpected ν̂ {nu}"));
        }
    }
    for nu in &nus {
        if nu.iter().any(|&x| x > window as i64) {
            if !fibers.contains_key(nu) {
                return fail(format!("fiber over {nu} missing"));
            }
            continue;
        }
        let ch = freudenthal_character(&e.ghat_rs, nu)?;
        let d = brauer_decompose(&e.g_rs, &restrict_character(&e.wm, &ch)?)?;
        let got: BTreeMap<&Weight, u64> = fibers
            .get(nu)
            .map(|v| v.iter().map(|p| (&p.mu, p.mult)).collect())
            .unwrap_or_default();
        let want: BTreeMap<&Weight, u64> = d.terms.iter().map(|(k, &m)| (k, m)).collect();
        if got != want {
            return fail(format!("fiber over {nu} disagrees with recomputation"));
        }
    }
    Ok(())
}
