//! Torus kernels and generic stabilizers on `p̂^u/p^u × L̂/B̂_L̂`.
//!
//! Stabilizer subalgebras are solved exactly as linear systems over `Q`.
//! Generic points are drawn with a seeded ChaCha stream per trial, so results
//! do not depend on scheduling.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::embed::{flatten_all, parabolic_data, Embedding, EmbeddingKind, ParabolicData};
use crate::error::{Error, Result};
use crate::exactq::{kernel_basis, rank_i64, rat, Rational, RationalMatrix, Subspace};
use crate::rootsys::{Face, Weight};

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_HEIGHT: i64 = 7;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `rank − rank(weights)`.
pub fn torus_kernel_dim(rank: usize, weights: &[Weight]) -> usize {
    let rows: Vec<Vec<i64>> = weights.iter().map(|w| w.0.clone()).collect();
    rank - rank_i64(&rows, rank)
}

/// Dimension of the kernel of T on `û/u`; `dim C = rank T + rank T̂ − dim_c_dual`.
pub fn dim_c_dual(e: &Embedding) -> Result<usize> {
    let p = parabolic_data(e, &e.g_rs.full_face())?;
    Ok(torus_kernel_dim(
        e.g_rs.rank(),
        &p.t_weights_on_puhat_mod_pu,
    ))
}

/// Increasing chain of subspaces of the ambient module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPoint {
    pub ambient_dim: usize,
    pub subspaces: Vec<Subspace>,
}

impl FlagPoint {
    pub fn new(ambient_dim: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        for w in &subspaces {
            if w.ambient_dim() != ambient_dim {
                return Err(Error::InvalidFlag(format!(
                    "subspace in dimension {} inside a flag of dimension {ambient_dim}",
                    w.ambient_dim()
                )));
            }
        }
        for pair in subspaces.windows(2) {
            if pair[0].dim() >= pair[1].dim() || !pair[1].contains_subspace(&pair[0]) {
                return Err(Error::InvalidFlag(
                    "chain is not strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            ambient_dim,
            subspaces,
        })
    }

    /// `⟨c_1⟩ ⊂ ⟨c_1, c_2⟩ ⊂ …` for the columns of `g` taken in `order`.
    pub fn from_columns(g: &RationalMatrix, order: &[usize]) -> Result<Self> {
        let n = g.rows();
        let mut subs = Vec::new();
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for &c in order.iter().take(n.saturating_sub(1)) {
            cols.push(g.column(c));
            subs.push(Subspace::span(n, cols.iter().map(Vec::as_slice)));
        }
        Self::new(n, subs)
    }

    /// Completes the chain by adding coordinate vectors in order.
    pub fn completed(&self) -> Result<Self> {
        let n = self.ambient_dim;
        let mut subs = self.subspaces.clone();
        let mut cur = subs.last().cloned().unwrap_or_else(|| Subspace::zero(n));
        for i in 0..n {
            if cur.dim() + 1 >= n {
                break;
            }
            let mut v = vec![Rational::zero(); n];
            v[i] = rat(1);
            if cur.contains(&v) {
                continue;
            }
            cur = cur.sum(&Subspace::span(n, [v.as_slice()]))?;
            subs.push(cur.clone());
        }
        Self::new(n, subs)
    }

    /// Chain of annihilators, reversed: a flag in the dual turned into a flag
    /// of the module with the same stabilizer.
    pub fn annihilator_flag(&self) -> Result<Self> {
        let subs = self
            .subspaces
            .iter()
            .rev()
            .map(Subspace::annihilator)
            .collect();
        Self::new(self.ambient_dim, subs)
    }

    pub fn is_full(&self) -> bool {
        self.subspaces.len() + 1 == self.ambient_dim
            && self
                .subspaces
                .iter()
                .enumerate()
                .all(|(i, w)| w.dim() == i + 1)
    }

    pub fn rational_rows(&self) -> Vec<Vec<Vec<[String; 2]>>> {
        self.subspaces
            .iter()
            .map(|w| {
                w.basis()
                    .iter()
                    .map(|r| r.iter().map(|x| [x.to_string(), "1".to_string()]).collect())
                    .collect()
            })
            .collect()
    }
}

/// How a Lie algebra element acts on the space carrying a flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagAction {
    /// The defining module.
    Module,
    /// Its dual: `X ↦ −Xᵀ`.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
pub enum ReductiveDim {
    Known(usize),
    Unavailable,
}

impl Serialize for ReductiveDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ReductiveDim::Known(d) => s.serialize_u64(*d as u64),
            ReductiveDim::Unavailable => s.serialize_str("unavailable"),
        }
    }
}

impl ReductiveDim {
    pub fn known(self) -> Option<usize> {
        match self {
            ReductiveDim::Known(d) => Some(d),
            ReductiveDim::Unavailable => None,
        }
    }
}

impl std::fmt::Display for ReductiveDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReductiveDim::Known(d) => write!(f, "{d}"),
            ReductiveDim::Unavailable => f.write_str("unavailable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Actor {
    L,
    #[serde(rename = "B_L")]
    BL,
    D,
}

impl std::fmt::Display for Actor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Actor::L => "L",
            Actor::BL => "B_L",
            Actor::D => "D",
        })
    }
}

impl std::str::FromStr for Actor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(Actor::L),
            "B_L" | "BL" | "B" | "b" => Ok(Actor::BL),
            "D" | "d" => Ok(Actor::D),
            _ => Err(Error::InvalidFace(format!("unknown actor `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub embedding: String,
    pub face: String,
    pub actor: String,
    pub point_description: String,
    pub trials: usize,
    pub dim: usize,
    pub reductive_dim: ReductiveDim,
    /// Stabilizer dimension at each trial; the reported value is the minimum.
    pub dims_per_trial: Vec<usize>,
    #[serde(skip)]
    pub subalgebra: Vec<RationalMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<Vec<[String; 2]>>>>,
}

impl StabilizerReport {
    pub fn is_bracket_closed(&self) -> bool {
        is_bracket_closed(&self.subalgebra)
    }
}

/// Basis of `{Σ x_k B_k : Σ x_k c(B_k) = 0}` for a linear constraint map `c`.
pub fn solve_subalgebra(
    basis: &[RationalMatrix],
    constraint: impl Fn(&RationalMatrix) -> Vec<Rational>,
) -> Vec<RationalMatrix> {
    if basis.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Rational>> = basis.iter().map(&constraint).collect();
    let rows = cols[0].len();
    if rows == 0 {
        return basis.to_vec();
    }
    let m = RationalMatrix::from_columns(&cols, rows);
    kernel_basis(&m)
        .basis_rational()
        .into_iter()
        .map(|x| combine(basis, &x))
        .collect()
}

fn combine(basis: &[RationalMatrix], coeffs: &[Rational]) -> RationalMatrix {
    let n = basis[0].rows();
    let mut acc = RationalMatrix::zeros(n, n);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &b.scale(c);
        }
    }
    acc
}

/// Linear functionals cutting out `w`.
fn equations(w: &Subspace) -> Vec<Vec<Rational>> {
    w.annihilator().basis_rational()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_bracket_closed(basis: &[RationalMatrix]) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let n2 = first.rows() * first.cols();
    let span = flatten_all(basis, n2);
    basis.iter().enumerate().all(|(i, x)| {
        basis[i + 1..]
            .iter()
            .all(|y| span.contains(&x.bracket(y).flatten()))
    })
}

/// Dimension of `h / rad(trace form)` when the radical consists of nilpotent
/// matrices; otherwise unavailable.
pub fn reductive_dim(basis: &[RationalMatrix]) -> ReductiveDim {
    let k = basis.len();
    if k == 0 {
        return ReductiveDim::Known(0);
    }
    let mut gram = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].trace_product(&basis[j]);
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    let rad = kernel_basis(&gram);
    let nilpotent = rad
        .basis_rational()
        .iter()
        .all(|c| combine(basis, c).is_nilpotent());
    if nilpotent {
        ReductiveDim::Known(k - rad.dim())
    } else {
        ReductiveDim::Unavailable
    }
}

fn acting(x: &RationalMatrix, action: FlagAction) -> RationalMatrix {
    match action {
        FlagAction::Module => x.clone(),
        FlagAction::Dual => -&x.transpose(),
    }
}

/// `{X ∈ span(basis) : X W ⊆ W for every W in the chain}`.
pub fn stabilizer_of_flag(
    basis: &[RationalMatrix],
    flag: &FlagPoint,
    action: FlagAction,
) -> Result<Vec<RationalMatrix>> {
    if let Some(b) = basis.first() {
        if b.rows() != flag.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "flag ambient dimension",
                expected: b.rows(),
                found: flag.ambient_dim,
            });
        }
    }
    let conds: Vec<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> = flag
        .subspaces
        .iter()
        .map(|w| (w.basis_rational(), equations(w)))
        .collect();
    Ok(solve_subalgebra(basis, |x| {
        let y = acting(x, action);
        let mut out = Vec::new();
        for (vecs, eqs) in &conds {
            for v in vecs {
                let yv = y.mul_vec(v);
                out.extend(eqs.iter().map(|phi| dot(phi, &yv)));
            }
        }
        out
    }))
}

/// Stabilizer of a flag in `Lie([G,G])`.
pub fn flag_stabilizer(
    e: &Embedding,
    flag: &FlagPoint,
    action: FlagAction,
) -> Result<StabilizerReport> {
    let sub = stabilizer_of_flag(&e.lie_g_basis(), flag, action)?;
    Ok(StabilizerReport {
        embedding: e.name.clone(),
        face: String::new(),
        actor: "[G,G]".into(),
        point_description: format!("given flag ({action:?}), {} members", flag.subspaces.len()),
        trials: 1,
        dim: sub.len(),
        reductive_dim: reductive_dim(&sub),
        dims_per_trial: vec![sub.len()],
        subalgebra: sub,
        witness: Some(flag.rational_rows()),
    })
}

/// A sampled point `(a, ĝ)` of the model.
#[derive(Clone, Debug)]
pub struct ModelPoint {
    pub a: RationalMatrix,
    pub g: RationalMatrix,
    pub g_inv: RationalMatrix,
    pub description: String,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// `Π exp(t X)` over `pos` then `neg`, with its exact inverse.
fn random_group_element(
    pos: &[RationalMatrix],
    neg: &[RationalMatrix],
    n: usize,
    h: i64,
    rng: &mut ChaCha8Rng,
) -> (RationalMatrix, RationalMatrix, Vec<i64>) {
    let mut g = RationalMatrix::identity(n);
    let mut factors = Vec::new();
    let mut params = Vec::new();
    for x in pos.iter().chain(neg) {
        let t = rng.gen_range(-h..=h);
        params.push(t);
        if t == 0 {
            continue;
        }
        let tx = x.scale(&rat(t));
        g = &g * &tx.exp_nilpotent().expect("root vectors are nilpotent");
        factors.push(tx);
    }
    let mut inv = RationalMatrix::identity(n);
    for tx in factors.iter().rev() {
        inv = &inv * &(-tx).exp_nilpotent().expect("root vectors are nilpotent");
    }
    (g, inv, params)
}

pub fn sample_point(
    e: &Embedding,
    p: &ParabolicData,
    h: i64,
    seed: u64,
    trial: usize,
) -> ModelPoint {
    let mut rng = trial_rng(seed, trial);
    let n = e.ambient_dim;
    let mut a = RationalMatrix::zeros(n, n);
    let mut coeffs = Vec::new();
    for x in &p.puhat_matrices {
        let c = rng.gen_range(-h..=h);
        coeffs.push(c);
        if c != 0 {
            a = &a + &x.scale(&rat(c));
        }
    }
    let (g, g_inv, params) = random_group_element(&p.dhat_pos, &p.dhat_neg, n, h, &mut rng);
    ModelPoint {
        a,
        g,
        g_inv,
        description: format!("seed {seed} trial {trial}: a = {coeffs:?}, g = {params:?}"),
    }
}

fn actor_basis(p: &ParabolicData, actor: Actor) -> &[RationalMatrix] {
    match actor {
        Actor::L => &p.levi_l_matrices,
        Actor::BL => &p.borel_bl_matrices,
        Actor::D => &p.d_matrices,
    }
}

/// `{X ∈ Lie(actor) : [X, a] ∈ p^u, ĝ⁻¹Xĝ ∈ b̂_L̂}`.
pub fn stabilizer_at(
    e: &Embedding,
    p: &ParabolicData,
    actor: Actor,
    x: &ModelPoint,
) -> Vec<RationalMatrix> {
    let n2 = e.ambient_dim * e.ambient_dim;
    let pu_eq = equations(&flatten_all(&p.pu_matrices, n2));
    let b_eq = equations(&flatten_all(&p.borel_lhat_matrices, n2));
    solve_subalgebra(actor_basis(p, actor), |m| {
        let br = m.bracket(&x.a).flatten();
        let conj = (&(&x.g_inv * m) * &x.g).flatten();
        pu_eq
            .iter()
            .map(|phi| dot(phi, &br))
            .chain(b_eq.iter().map(|phi| dot(phi, &conj)))
            .collect()
    })
}

fn run_trials<T: Send>(trials: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(f).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub trials: usize,
    pub height: i64,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            height: DEFAULT_HEIGHT,
            seed: DEFAULT_SEED,
        }
    }
}

impl Sampling {
    pub fn with_trials(trials: usize) -> Self {
        Self {
            trials,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 || self.height < 1 {
            return Err(Error::Integrity("need trials >= 1 and height >= 1".into()));
        }
        Ok(())
    }
}

fn report(
    e: &Embedding,
    f: &Face,
    actor: Actor,
    x: &ModelPoint,
    sub: Vec<RationalMatrix>,
    dims: Vec<usize>,
    p: &ParabolicData,
) -> StabilizerReport {
    let witness = FlagPoint::from_columns(&x.g, &p.flag_order())
        .ok()
        .map(|fl| fl.rational_rows());
    StabilizerReport {
        embedding: e.name.clone(),
        face: f.label(),
        actor: actor.to_string(),
        point_description: x.description.clone(),
        trials: dims.len(),
        dim: sub.len(),
        reductive_dim: reductive_dim(&sub),
        dims_per_trial: dims,
        subalgebra: sub,
        witness,
    }
}

pub fn generic_stabilizer(
    e: &Embedding,
    f: &Face,
    actor: Actor,
    s: Sampling,
) -> Result<StabilizerReport> {
    s.check()?;
    let p = parabolic_data(e, f)?;
    let runs = run_trials(s.trials, |t| {
        let x = sample_point(e, &p, s.height, s.seed, t);
        let sub = stabilizer_at(e, &p, actor, &x);
        (x, sub)
    });
    let dims: Vec<usize> = runs.iter().map(|(_, sub)| sub.len()).collect();
    let (x, sub) = runs
        .into_iter()
        .min_by_key(|(_, sub)| sub.len())
        .expect("at least one trial");
    Ok(report(e, f, actor, &x, sub, dims, &p))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaTheoretical {
    /// `None` when a reductive dimension is unavailable.
    pub value: Option<i64>,
    pub l: StabilizerReport,
    pub b_l: StabilizerReport,
}

/// `rdim Stab_L(x) − rdim Stab_{B_L}(x)` at the trial minimising both.
pub fn delta_theoretical(e: &Embedding, f: &Face, s: Sampling) -> Result<DeltaTheoretical> {
    s.check()?;
    let p = parabolic_data(e, f)?;
    let runs = run_trials(s.trials, |t| {
        let x = sample_point(e, &p, s.height, s.seed, t);
        let l = stabilizer_at(e, &p, Actor::L, &x);
        let b = stabilizer_at(e, &p, Actor::BL, &x);
        (x, l, b)
    });
    let dims_l: Vec<usize> = runs.iter().map(|r| r.1.len()).collect();
    let dims_b: Vec<usize> = runs.iter().map(|r| r.2.len()).collect();
    let (x, l, b) = runs
        .into_iter()
        .min_by_key(|r| (r.1.len() + r.2.len(), r.1.len()))
        .expect("at least one trial");
    let l = report(e, f, Actor::L, &x, l, dims_l, &p);
    let b_l = report(e, f, Actor::BL, &x, b, dims_b, &p);
    let value = match (l.reductive_dim, b_l.reductive_dim) {
        (ReductiveDim::Known(a), ReductiveDim::Known(b)) => Some(a as i64 - b as i64),
        _ => None,
    };
    Ok(DeltaTheoretical { value, l, b_l })
}

/// A deterministic flag built by hand for the embeddings where one is known,
/// living in the dual of the defining module.
#[derive(Clone, Debug)]
pub struct ExplicitFlag {
    pub label: String,
    pub dual_chain: FlagPoint,
}

fn coord(n: usize, entries: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &(i, c) in entries {
        v[i] += rat(c);
    }
    v
}

/// `⟨ω₀⟩ ⊂ ⟨ω₀, ω₁⟩` in S²V* with `ω₀ = Σ e_i*²`, `ω₁ = Σ i e_i*²`; for
/// `wedge2:4` the chain `⟨ω₀⟩ ⊂ ⟨ω₀,ω₁⟩ ⊂ ⟨Id,H,F⟩^⊥ ⊂ ⟨Id,H⟩^⊥ ⊂ ⟨Id⟩^⊥`.
pub fn explicit_flag(e: &Embedding) -> Option<ExplicitFlag> {
    let big = e.ambient_dim;
    match e.kind {
        EmbeddingKind::Sym2 => {
            let n = e.g_rs.rank() + 1;
            let mut idx = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    if i == j {
                        idx.push(k);
                    }
                    k += 1;
                }
            }
            let w0 = coord(big, &idx.iter().map(|&k| (k, 1)).collect::<Vec<_>>());
            let w1 = coord(
                big,
                &idx.iter()
                    .enumerate()
                    .map(|(i, &k)| (k, i as i64 + 1))
                    .collect::<Vec<_>>(),
            );
            let chain = vec![
                Subspace::span(big, [w0.as_slice()]),
                Subspace::span(big, [w0.as_slice(), w1.as_slice()]),
            ];
            Some(ExplicitFlag {
                label: "sym2: <w0> < <w0,w1>".into(),
                dual_chain: FlagPoint::new(big, chain).ok()?,
            })
        }
        EmbeddingKind::Wedge2 if e.g_rs.rank() == 3 => {
            // pairs (0,1) (0,2) (0,3) (1,2) (1,3) (2,3); V = (e1, e2, ε1, ε2)
            let w0 = coord(6, &[(1, 1), (4, 1)]);
            let w1 = coord(6, &[(1, 1), (4, 2)]);
            let id = coord(6, &[(0, 1), (5, 1)]);
            let hh = coord(6, &[(0, 1), (5, -1)]);
            let ff = coord(6, &[(2, 1), (3, -1)]);
            let ann = |vs: &[&[Rational]]| Subspace::span(6, vs.iter().copied()).annihilator();
            let chain = vec![
                Subspace::span(6, [w0.as_slice()]),
                Subspace::span(6, [w0.as_slice(), w1.as_slice()]),
                ann(&[&id, &hh, &ff]),
                ann(&[&id, &hh]),
                ann(&[&id]),
            ];
            Some(ExplicitFlag {
                label: "wedge2:4: <w0> < <w0,w1> < <Id,H,F>^perp < <Id,H>^perp < <Id>^perp".into(),
                dual_chain: FlagPoint::new(6, chain).ok()?,
            })
        }
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FullFacesReport {
    pub embedding: String,
    pub holds: bool,
    /// `explicit` or `sampled`.
    pub source: String,
    pub explicit_flag_dim: Option<usize>,
    pub sampled_dims: Vec<usize>,
    /// Full flag of the defining module with finite `[G,G]`-stabilizer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<Vec<[String; 2]>>>>,
    #[serde(skip)]
    pub witness_flag: Option<FlagPoint>,
}

/// Looks for a point of `Ĝ/B̂` with finite `[G,G]`-stabilizer: first the
/// deterministic fixture, then sampled full flags.
pub fn all_faces_full_check(e: &Embedding, s: Sampling) -> Result<FullFacesReport> {
    s.check()?;
    let mut explicit_dim = None;
    if let Some(pf) = explicit_flag(e) {
        let d = flag_stabilizer(e, &pf.dual_chain, FlagAction::Dual)?.dim;
        explicit_dim = Some(d);
        if d == 0 {
            let witness = pf.dual_chain.completed()?.annihilator_flag()?;
            return Ok(FullFacesReport {
                embedding: e.name.clone(),
                holds: true,
                source: "explicit".into(),
                explicit_flag_dim: explicit_dim,
                sampled_dims: Vec::new(),
                witness: Some(witness.rational_rows()),
                witness_flag: Some(witness),
            });
        }
    }
    let n = e.ambient_dim;
    let order: Vec<usize> = (0..n).collect();
    let runs = run_trials(s.trials, |t| -> Result<(FlagPoint, usize)> {
        let mut rng = trial_rng(s.seed, t);
        let (g, _, _) = random_group_element(&e.ghat.pos, &e.ghat.neg, n, s.height, &mut rng);
        let flag = FlagPoint::from_columns(&g, &order)?;
        let d = stabilizer_of_flag(&e.lie_g_basis(), &flag, FlagAction::Module)?.len();
        Ok((flag, d))
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = runs.iter().map(|r| r.1).collect();
    let best = runs.into_iter().find(|r| r.1 == 0).map(|r| r.0);
    Ok(FullFacesReport {
        embedding: e.name.clone(),
        holds: best.is_some(),
        source: "sampled".into(),
        explicit_flag_dim: explicit_dim,
        sampled_dims: dims,
        witness: best.as_ref().map(FlagPoint::rational_rows),
        witness_flag: best,
    })
}
