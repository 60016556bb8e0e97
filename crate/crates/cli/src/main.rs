use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lrcone::embed::{build_embedding, desk_scale, Embedding};
use lrcone::isotropy::{
    all_faces_full_check, delta_theoretical, dim_c_dual, explicit_flag, flag_stabilizer,
    generic_stabilizer, Actor, FlagAction, Sampling, DEFAULT_HEIGHT, DEFAULT_SEED, DEFAULT_TRIALS,
};
use lrcone::lrsemigroup::{
    default_bound, delta_direct, dim_c, enumerate_with, polmom_check, verify_sample, Exec,
    SemigroupSample,
};
use lrcone::rootsys::{Face, Weight};
use lrcone::suite::{run_suite, SuiteConfig};
use serde_json::json;

/// Directory used for relative `--out` paths.
const OUT_DIR_ENV: &str = "LRCONE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "lrcone",
    version,
    about = "Generalized Littlewood-Richardson semigroups and face defects"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate C up to a bound on ν̂.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bound: Option<usize>,
        /// Run fibers one after the other.
        #[arg(long)]
        sequential: bool,
    },
    /// δ_F from the semigroup and from generic isotropy, side by side.
    Delta {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Comma-separated 1-based indices, "" for the zero face, `full`.
        #[arg(long, allow_hyphen_values = true)]
        face: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// dim C^∨ from the torus kernel, and the predicted dim C.
    KernelDim {
        #[command(flatten)]
        common: Common,
    },
    /// Generic stabilizer of L, B_L or D on the model variety.
    Stabilizer {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, allow_hyphen_values = true)]
        face: String,
        /// L, B_L or D.
        #[arg(long, default_value = "L")]
        actor: String,
    },
    /// Stabilizers of the explicit flags, plus the all-faces-full check.
    #[command(name = "flags-paper")]
    Flags {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Codimension identity for moment-polytope slices.
    Polmom {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        face: String,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Extra ν̂ to test, e.g. `--nuhat 1,0`.
        #[arg(long)]
        nuhat: Vec<String>,
    },
    /// Run every cross-check on the desk-scale catalog.
    CheckAll {
        /// Embeddings to check (default: the desk-scale catalog).
        #[arg(long = "embedding")]
        embeddings: Vec<String>,
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Also verify a saved sample file.
        #[arg(long)]
        sample: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// JSON dump of an embedding.
    Dump {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, short)]
    embedding: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Clone, Copy)]
struct SamplingArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample coordinates are drawn from [-h, h].
    #[arg(long = "height", default_value_t = DEFAULT_HEIGHT)]
    height: i64,
}

impl SamplingArgs {
    fn get(self) -> Result<Sampling, Failure> {
        if self.trials == 0 || self.height < 1 {
            return Err(Failure::Usage(anyhow::anyhow!(
                "need --trials >= 1 and --height >= 1"
            )));
        }
        Ok(Sampling {
            trials: self.trials,
            height: self.height,
            seed: self.seed,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    /// Bad arguments or inputs: exit 1.
    Usage(anyhow::Error),
    /// A check or invariant failed: exit 2.
    Check(anyhow::Error),
}

impl From<lrcone::Error> for Failure {
    fn from(e: lrcone::Error) -> Self {
        match e {
            lrcone::Error::Integrity(_) | lrcone::Error::NotAModuleCharacter { .. } => {
                Failure::Check(e.into())
            }
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Check(e)) => {
            eprintln!("check failed: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let p = resolve_out(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn embedding(name: &str) -> Result<Embedding, Failure> {
    Ok(build_embedding(name)?)
}

fn parse_weight(s: &str) -> Result<Weight, Failure> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("bad weight `{s}`"))?;
    Ok(Weight(v))
}

fn run(cmd: Command) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Enumerate {
            common,
            bound,
            sequential,
        } => {
            let e = embedding(&common.embedding)?;
            let bound = bound.unwrap_or_else(|| default_bound(&e));
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            let s = enumerate_with(&e, bound, exec)?;
            let body = match common.format {
                Format::Json => s.to_json()? + "\n",
                Format::Csv => s.to_csv(),
                Format::Text => sample_text(&s),
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::Delta {
            common,
            sampling,
            face,
            bound,
        } => {
            let e = embedding(&common.embedding)?;
            let f = Face::parse(&face, &e.g_rs)?;
            let bound = bound.unwrap_or_else(|| default_bound(&e));
            let s = enumerate_with(&e, bound, Exec::Parallel)?;
            let d = delta_direct(&e, &s, &f)?;
            let t = delta_theoretical(&e, &f, sampling.get()?)?;
            let theory = t.value.map_or("unavailable".to_string(), |v| v.to_string());
            let body = match common.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({
                        "embedding": e.name,
                        "face": f.label(),
                        "bound": bound,
                        "direct": d,
                        "theoretical": t,
                    }))? + "\n"
                }
                _ => format!(
                    "embedding {} face {} bound {bound} saturated {}\ndirect {}\ntheoretical {theory}\n",
                    e.name,
                    f.label(),
                    d.saturated,
                    d.value
                ),
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::KernelDim { common } => {
            let e = embedding(&common.embedding)?;
            let k = dim_c_dual(&e)?;
            let predicted = e.g_rs.rank() + e.ghat_rs.rank() - k;
            let body = match common.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({
                        "embedding": e.name,
                        "dim_c_dual": k,
                        "dim_c": predicted,
                    }))? + "\n"
                }
                _ => format!("embedding {}\ndim_c_dual {k}\ndim_c {predicted}\n", e.name),
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::Stabilizer {
            common,
            sampling,
            face,
            actor,
        } => {
            let e = embedding(&common.embedding)?;
            let f = Face::parse(&face, &e.g_rs)?;
            let actor: Actor = actor.parse()?;
            let r = generic_stabilizer(&e, &f, actor, sampling.get()?)?;
            let body = match common.format {
                Format::Json => serde_json::to_string_pretty(&r)? + "\n",
                _ => format!(
                    "embedding {} face {} actor {}\ndim {}\nreductive_dim {}\ndims_per_trial {:?}\n",
                    e.name, r.face, r.actor, r.dim, r.reductive_dim, r.dims_per_trial
                ),
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::Flags { common, sampling } => {
            let e = embedding(&common.embedding)?;
            let explicit = match explicit_flag(&e) {
                Some(pf) => Some((
                    pf.label.clone(),
                    flag_stabilizer(&e, &pf.dual_chain, FlagAction::Dual)?,
                )),
                None => None,
            };
            let full = all_faces_full_check(&e, sampling.get()?)?;
            let body = match common.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({
                        "embedding": e.name,
                        "explicit_flag": explicit.as_ref().map(|(l, r)| json!({"label": l, "report": r})),
                        "all_faces_full": full,
                    }))? + "\n"
                }
                _ => {
                    let mut s = format!("embedding {}\n", e.name);
                    match &explicit {
                        Some((l, r)) => {
                            s += &format!("explicit flag {l}: stabilizer dim {}\n", r.dim)
                        }
                        None => s += "explicit flag: none for this embedding\n",
                    }
                    s += &format!(
                        "all faces full: {} (source {}, sampled dims {:?})\n",
                        full.holds, full.source, full.sampled_dims
                    );
                    s
                }
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::Polmom {
            common,
            face,
            samples,
            bound,
            nmax,
            nuhat,
        } => {
            let e = embedding(&common.embedding)?;
            let f = Face::parse(&face, &e.g_rs)?;
            let extra = nuhat
                .iter()
                .map(|s| parse_weight(s))
                .collect::<Result<Vec<_>, _>>()?;
            let r = polmom_check(&e, &f, samples, bound, nmax.max(1), &extra)?;
            let body = match common.format {
                Format::Json => serde_json::to_string_pretty(&r)? + "\n",
                _ => {
                    let mut s = format!(
                        "embedding {} face {} nmax {}\nspanning hypothesis {}\nface full {}\n",
                        r.embedding, r.face, r.nmax, r.spanning_hypothesis, r.face_full
                    );
                    for en in &r.entries {
                        s += &format!(
                            "nuhat {}: dim P {} dim P∩F {} lhs {} rhs {} holds {} window {}\n",
                            en.nuhat,
                            en.dim_p,
                            en.dim_p_cap_f,
                            en.lhs,
                            en.rhs,
                            en.holds,
                            en.in_window
                        );
                    }
                    s
                }
            };
            emit(common.out.as_ref(), &body)?;
        }
        Command::CheckAll {
            embeddings,
            bound,
            sampling,
            sample,
            out,
            format,
        } => {
            let cfg = SuiteConfig {
                embeddings: if embeddings.is_empty() {
                    desk_scale().into_iter().map(String::from).collect()
                } else {
                    embeddings
                },
                bound,
                sampling: sampling.get()?,
            };
            if let Some(path) = sample {
                let text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let s = SemigroupSample::from_json(&text)
                    .map_err(|e| Failure::Check(anyhow::anyhow!("{}: {e}", path.display())))?;
                let e = embedding(&s.embedding)?;
                verify_sample(&e, &s).map_err(|err| Failure::Check(err.into()))?;
                eprintln!("sample {} verified", path.display());
            }
            let report = run_suite(&cfg)?;
            let body = match format {
                Format::Json => report.to_json()? + "\n",
                _ => report.to_text(),
            };
            emit(out.as_ref(), &body)?;
            if !report.all_passed() {
                eprintln!("{} checks failed", report.failed);
                return Ok(ExitCode::from(2));
            }
        }
        Command::Dump { common } => {
            let e = embedding(&common.embedding)?;
            emit(
                common.out.as_ref(),
                &(serde_json::to_string_pretty(&e.dump())? + "\n"),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sample_text(s: &SemigroupSample) -> String {
    let mut out = format!(
        "embedding {} bound {} saturated {} points {} dim_c {}\n",
        s.embedding,
        s.bound,
        s.saturated,
        s.points.len(),
        dim_c(s)
    );
    for p in &s.points {
        out += &format!("{} {} {}\n", p.mu, p.nuhat, p.mult);
    }
    out
}
