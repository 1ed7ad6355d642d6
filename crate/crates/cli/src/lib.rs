//! Command-line front end: parses fixture files, runs a check and prints a
//! single JSON report.

pub mod io;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use sharpset::boolean::{
    is_sheaf, is_sheaf_all_decompositions, sheafify, verify_inverse_image_preserves_hocartesian, InverseImageOptions,
};
use sharpset::category::FiniteCategory;
use sharpset::certificate::{certify_weak_equivalence, CertifyOptions};
use sharpset::hocolim::harness::{
    cartesian_verdict, verify_horn_gluing, verify_special_diagrams, verify_thm_hocolims, HarnessOptions, SpecialCase,
};
use sharpset::hocolim::{hocolim, tilde, verify_tilde_pullback_all};
use sharpset::homology::homology;
use sharpset::kan::has_horn_lifts;
use sharpset::limits::verify_distributive_law;
use sharpset::map::SimplicialMap;
use sharpset::peculiar::{Ladder, LadderVerdict};
use sharpset::random::{random_diagram_map, random_map_into_colimit, Bounds};
use sharpset::sharp::{is_sharp, CartesianOptions, SharpOptions, Sharpness};
use sharpset::sset::DEFAULT_DIM_CAP;

use crate::io::*;
use crate::report::{evidence, ErrorDetail, ErrorReport, InputDigest, Outcome, VerdictReport};

#[derive(Parser, Debug)]
#[command(name = "sharpset", version, about = "Checks finite simplicial sets, diagrams and sheaves")]
pub struct Cli {
    #[command(flatten)]
    pub options: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOptions {
    /// Compare homology only below this degree.
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    /// Largest simplex dimension accepted from input files.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: usize,
    /// Vouch that the spaces involved are simply connected.
    #[arg(long, global = true)]
    pub simply_connected: bool,
    /// Check sharpness against every simplex operator, not only vertices.
    #[arg(long, global = true)]
    pub exhaustive_delta: bool,
    /// Seed for randomized verifiers.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add the elapsed time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a file of any supported kind and check its invariants.
    Validate { file: PathBuf },
    /// Integral homology of a simplicial set.
    Homology { file: PathBuf },
    /// Certify or refute that a map is a weak equivalence.
    CheckWe { file: PathBuf },
    /// Bounded horn filling for a map, or for a simplicial set over a point.
    CheckKan {
        file: PathBuf,
        /// Largest horn dimension; defaults to one more than the top dimension.
        #[arg(long)]
        horn_bound: Option<usize>,
    },
    /// Decide whether a map is sharp.
    CheckSharp { file: PathBuf },
    /// Decide whether a square is homotopy cartesian.
    CheckHocartesian { file: PathBuf },
    /// Homotopy colimit of a diagram.
    Hocolim {
        file: PathBuf,
        /// Truncation of the simplicial replacement.
        #[arg(long)]
        bound: Option<usize>,
        /// Include the simplicial set in the report.
        #[arg(long)]
        emit: bool,
    },
    /// Homotopy colimit over the category of objects over one object.
    Tilde {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        emit: bool,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Sheafify a presheaf on a finite boolean algebra.
    Sheafify {
        file: PathBuf,
        #[arg(long)]
        emit: bool,
    },
    /// Check the sheaf condition.
    SheafCheck {
        file: PathBuf,
        /// Check every decomposition, not only the one into atoms.
        #[arg(long)]
        all_decompositions: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseArg {
    Chain,
    Span,
    ProperSubsets,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteFixture {
    Arrow,
    Span,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Pulling a diagram back along a map into its colimit.
    Distributive {
        diagram: Option<PathBuf>,
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// The tilde construction of the source is a pullback at each object.
    TildePullback {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Homotopy colimits of sharp maps of diagrams.
    ThmHocolims {
        #[arg(long)]
        part: u8,
        file: PathBuf,
    },
    /// Restriction to objects preserves homotopy cartesian squares.
    ThmInverseImage {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        fixture: Option<SiteFixture>,
    },
    /// Colimits of sharp maps over chains, spans and subset posets.
    SpecialDiagrams {
        #[arg(long = "case", value_enum)]
        case: CaseArg,
        file: PathBuf,
    },
    /// Horn pieces of a pullback over a simplex.
    HornGluing {
        file: PathBuf,
        #[arg(long)]
        simplex: String,
        #[arg(long)]
        horn: usize,
    },
    /// The ladder lemma on finite sets.
    Peculiar {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(IoError),
    Compute(sharpset::Error),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e)
    }
}

impl From<sharpset::Error> for Failure {
    fn from(e: sharpset::Error) -> Self {
        Failure::Compute(e)
    }
}

type Run<T> = Result<T, Failure>;

struct Context {
    options: GlobalOptions,
    inputs: Vec<InputDigest>,
}

impl Context {
    fn load<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Run<T> {
        let (v, bytes) = read_json(path)?;
        self.inputs.push(InputDigest::new(&path.display().to_string(), &bytes));
        Ok(v)
    }

    fn certify(&self) -> CertifyOptions {
        CertifyOptions { simply_connected_assertion: self.options.simply_connected, degree_bound: self.options.degree_bound }
    }

    fn sharp(&self) -> SharpOptions {
        SharpOptions { exhaustive: self.options.exhaustive_delta, certify: self.certify() }
    }

    fn cartesian(&self) -> CartesianOptions {
        CartesianOptions { sharp: self.sharp(), horn_bound: None }
    }

    fn harness(&self) -> HarnessOptions {
        HarnessOptions { certify: self.certify(), cartesian: self.cartesian() }
    }

    fn seed(&self) -> Run<u64> {
        self.options.seed.ok_or_else(|| Failure::Usage("randomized runs need --seed".into()))
    }
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn from_sharpness(s: Sharpness) -> Outcome {
    match s {
        Sharpness::Sharp => Outcome::Pass,
        Sharpness::NotSharp => Outcome::Fail,
        Sharpness::Indeterminate => Outcome::Indeterminate,
    }
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

#[derive(Serialize)]
struct SetSummary {
    cells: Vec<usize>,
    homology: Vec<String>,
}

fn summary(x: &sharpset::SSet) -> SetSummary {
    let top = if x.is_empty() { 0 } else { x.max_dim() };
    SetSummary { cells: x.cell_counts(), homology: homology(x, top).iter().map(|g| g.to_string()).collect() }
}

fn execute(ctx: &mut Context, command: &Command) -> Run<(Outcome, serde_json::Value)> {
    let cap = ctx.options.dim_cap;
    match command {
        Command::Validate { file } => {
            let kind = extension(file).to_string();
            match validate(ctx, file) {
                Ok(summary) => Ok((Outcome::Pass, json!({"kind": kind, "summary": summary}))),
                Err(Failure::Input(IoError::Invalid(m))) => Ok((Outcome::Fail, json!({"kind": kind, "violation": m}))),
                Err(e) => Err(e),
            }
        }
        Command::Homology { file } => {
            let x = sset_from_record(&ctx.load(file)?, cap)?;
            let top = ctx.options.degree_bound.unwrap_or(if x.is_empty() { 0 } else { x.max_dim() });
            let groups: Vec<String> = homology(&x, top).iter().map(|g| g.to_string()).collect();
            Ok((Outcome::Pass, json!({"cells": x.cell_counts(), "homology": groups})))
        }
        Command::CheckWe { file } => {
            let f = map_from_record(&ctx.load(file)?, cap)?;
            let c = certify_weak_equivalence(&f, &ctx.certify())?;
            Ok((c.verdict.into(), evidence(&c)))
        }
        Command::CheckKan { file, horn_bound } => {
            let f = match extension(file) {
                "sset" => SimplicialMap::terminal(sset_from_record(&ctx.load(file)?, cap)?),
                _ => map_from_record(&ctx.load(file)?, cap)?,
            };
            let bound = horn_bound.unwrap_or_else(|| f.source().cell_counts().len().max(f.target().cell_counts().len()));
            let r = has_horn_lifts(&f, bound)?;
            Ok((pass_if(r.holds), evidence(&r)))
        }
        Command::CheckSharp { file } => {
            let f = map_from_record(&ctx.load(file)?, cap)?;
            let r = is_sharp(&f, &ctx.sharp())?;
            Ok((from_sharpness(r.verdict), evidence(&r)))
        }
        Command::CheckHocartesian { file } => match square_from_record(&ctx.load(file)?, cap)? {
            ParsedSquare::Maps(sq) => {
                let v = cartesian_verdict(&sq, &ctx.cartesian())?;
                Ok((v.into(), json!({"verdict": v})))
            }
            ParsedSquare::Diagrams(sq) => {
                let mut per_object = serde_json::Map::new();
                let mut verdicts = Vec::new();
                for (o, name) in sq.px.shape().objects().iter().enumerate() {
                    let v = cartesian_verdict(&sq.at(o)?, &ctx.cartesian())?;
                    per_object.insert(name.clone(), json!(v));
                    verdicts.push(Outcome::from(v));
                }
                Ok((combine(&verdicts), json!({"objects": per_object})))
            }
        },
        Command::Hocolim { file, bound, emit } => {
            let d = diagram_from_record(&ctx.load(file)?, cap)?;
            let h = hocolim(&d, *bound)?;
            let mut ev = json!({"hocolim": summary(&h.object)});
            if *emit {
                ev["simplicial_set"] = json!(sset_to_record(&h.object));
            }
            Ok((Outcome::Pass, ev))
        }
        Command::Tilde { file, object, bound, emit } => {
            let d = diagram_from_record(&ctx.load(file)?, cap)?;
            let i = d.shape().object_index(object).ok_or_else(|| Failure::Usage(format!("no object `{object}`")))?;
            let t = tilde(&d, i, *bound)?;
            let mut ev = json!({"object": object, "tilde": summary(&t.object)});
            if *emit {
                ev["simplicial_set"] = json!(sset_to_record(&t.object));
            }
            Ok((Outcome::Pass, ev))
        }
        Command::Verify(v) => verify(ctx, v),
        Command::Sheafify { file, emit } => {
            let r: PresheafRecord = ctx.load(file)?;
            let x = presheaf_from_record(&r, cap)?;
            let l = sheafify(&x)?;
            let cells: Vec<Vec<usize>> = x.algebra.elements().map(|b| l.sheaf.value(b).cell_counts()).collect();
            let mut ev = json!({"cells": cells, "unit_is_iso": l.unit.is_iso(), "is_sheaf": is_sheaf(&l.sheaf)?.is_sheaf});
            if *emit {
                ev["sheaf"] = json!(presheaf_to_record(&l.sheaf, &r.atoms));
            }
            Ok((pass_if(is_sheaf(&l.sheaf)?.is_sheaf), ev))
        }
        Command::SheafCheck { file, all_decompositions } => {
            let x = presheaf_from_record(&ctx.load(file)?, cap)?;
            let r = if *all_decompositions { is_sheaf_all_decompositions(&x)? } else { is_sheaf(&x)? };
            Ok((pass_if(r.is_sheaf), evidence(&r)))
        }
    }
}

fn validate(ctx: &mut Context, file: &Path) -> Run<serde_json::Value> {
    let cap = ctx.options.dim_cap;
    Ok(match extension(file) {
        "sset" => json!(summary(&sset_from_record(&ctx.load(file)?, cap)?)),
        "smap" => {
            let f = map_from_record(&ctx.load(file)?, cap)?;
            json!({"source": f.source().cell_counts(), "target": f.target().cell_counts()})
        }
        "diag" => {
            let d = diagram_from_record(&ctx.load(file)?, cap)?;
            json!({"objects": d.shape().objects(), "arrows": d.shape().num_arrows()})
        }
        "dmap" => {
            let f = diagram_map_from_record(&ctx.load(file)?, cap)?;
            json!({"objects": f.shape().objects()})
        }
        "square" => {
            square_from_record(&ctx.load(file)?, cap)?;
            json!({})
        }
        "bpsh" => {
            let x = presheaf_from_record(&ctx.load(file)?, cap)?;
            json!({"atoms": x.algebra.atoms})
        }
        other => return Err(Failure::Usage(format!("unknown file kind `.{other}`"))),
    })
}

fn combine(outcomes: &[Outcome]) -> Outcome {
    if outcomes.contains(&Outcome::Fail) {
        Outcome::Fail
    } else if outcomes.iter().all(|&o| o == Outcome::Pass) {
        Outcome::Pass
    } else {
        Outcome::Indeterminate
    }
}

fn verify(ctx: &mut Context, v: &Verify) -> Run<(Outcome, serde_json::Value)> {
    let cap = ctx.options.dim_cap;
    match v {
        Verify::Distributive { diagram, map, trials } => match (diagram, map) {
            (Some(dp), Some(mp)) => {
                let d = diagram_from_record(&ctx.load(dp)?, cap)?;
                let a = map_from_record(&ctx.load(mp)?, cap)?;
                let c = sharpset::limits::colimit(&d)?;
                // The map file names its target; read it as the colimit.
                let a = retarget(&a, &c.object)?;
                let r = verify_distributive_law(&d, &a)?;
                Ok((pass_if(r.holds), evidence(&r)))
            }
            (None, None) => {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed()?);
                let mut failures = Vec::new();
                for t in 0..*trials {
                    let (d, a) = random_map_into_colimit(&mut rng, Bounds::default())?;
                    if !verify_distributive_law(&d, &a)?.holds {
                        failures.push(t);
                    }
                }
                Ok((pass_if(failures.is_empty()), json!({"trials": trials, "failures": failures})))
            }
            _ => Err(Failure::Usage("give a diagram and a map, or neither".into())),
        },
        Verify::TildePullback { file, trials } => {
            let maps = match file {
                Some(p) => vec![diagram_map_from_record(&ctx.load(p)?, cap)?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed()?);
                    (0..*trials).map(|_| random_diagram_map(&mut rng, Bounds::default())).collect::<Result<_, _>>()?
                }
            };
            let mut reports = Vec::new();
            for f in &maps {
                reports.push(verify_tilde_pullback_all(f)?);
            }
            let ok = reports.iter().flatten().all(|r| r.holds);
            let ev = if file.is_some() { evidence(&reports[0]) } else { json!({"trials": maps.len(), "objects": reports.iter().flatten().count(), "failures": reports.iter().flatten().filter(|r| !r.holds).count()}) };
            Ok((pass_if(ok), ev))
        }
        Verify::ThmHocolims { part, file } => {
            if !matches!(part, 1 | 2) {
                return Err(Failure::Usage("--part must be 1 or 2".into()));
            }
            let f = diagram_map_from_record(&ctx.load(file)?, cap)?;
            let r = verify_thm_hocolims(&f, *part, &ctx.harness())?;
            Ok((r.outcome.into(), evidence(&r)))
        }
        Verify::ThmInverseImage { file, fixture } => {
            let sq = match (file, fixture) {
                (Some(p), None) => match square_from_record(&ctx.load(p)?, cap)? {
                    ParsedSquare::Diagrams(sq) => sq,
                    ParsedSquare::Maps(_) => return Err(Failure::Usage("the square must consist of maps of diagrams".into())),
                },
                (None, Some(fx)) => {
                    let shape = match fx {
                        SiteFixture::Arrow => FiniteCategory::chain(2),
                        SiteFixture::Span => FiniteCategory::span(),
                    };
                    sharpset::fixtures::bundle_restriction_square(std::sync::Arc::new(shape))?
                }
                _ => return Err(Failure::Usage("give a square file or --fixture".into())),
            };
            let opts = InverseImageOptions { cartesian: ctx.cartesian(), ..Default::default() };
            let r = verify_inverse_image_preserves_hocartesian(&sq, &opts)?;
            Ok((r.outcome.into(), evidence(&r)))
        }
        Verify::SpecialDiagrams { case, file } => {
            let f = diagram_map_from_record(&ctx.load(file)?, cap)?;
            let case = match case {
                CaseArg::Chain => SpecialCase::Chain,
                CaseArg::Span => SpecialCase::Span,
                CaseArg::ProperSubsets => SpecialCase::ProperSubsets,
            };
            let r = verify_special_diagrams(&f, case, &ctx.harness())?;
            Ok((r.outcome.into(), evidence(&r)))
        }
        Verify::HornGluing { file, simplex, horn } => {
            let f = map_from_record(&ctx.load(file)?, cap)?;
            let c = f.target().find(simplex).ok_or_else(|| Failure::Usage(format!("no simplex `{simplex}` in the target")))?;
            let r = verify_horn_gluing(&f, &sharpset::SimplexRef::cell(c), *horn, &ctx.harness())?;
            let outcome = if r.horn_colimit_agrees { r.harness.outcome.into() } else { Outcome::Fail };
            Ok((outcome, evidence(&r)))
        }
        Verify::Peculiar { file, trials } => match file {
            Some(p) => {
                let l: Ladder = ctx.load(p)?;
                let v = l.verify();
                let outcome = match v {
                    LadderVerdict::Holds => Outcome::Pass,
                    LadderVerdict::Fails => Outcome::Fail,
                    LadderVerdict::Precondition { .. } => Outcome::Indeterminate,
                };
                Ok((outcome, evidence(&v)))
            }
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed()?);
                let failures: Vec<usize> = (0..*trials).filter(|_| Ladder::random(&mut rng, 5).verify() != LadderVerdict::Holds).collect();
                Ok((pass_if(failures.is_empty()), json!({"trials": trials, "failures": failures})))
            }
        },
    }
}

/// Reads `a` as a map into `target`, matching simplices by id.
fn retarget(a: &SimplicialMap, target: &sharpset::SSet) -> Run<SimplicialMap> {
    let assignment = assignment_of(a);
    Ok(map_from_assignment(a.source(), target, &assignment)?)
}

/// Runs one command line; returns the report text and the exit status.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> (String, i32) {
    let args: Vec<String> = args.into_iter().collect();
    let echo: Vec<String> = args.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                return (e.to_string(), 0);
            }
            return (error_report(echo, "usage", e.to_string()), 3);
        }
    };
    let start = Instant::now();
    let mut ctx = Context { options: cli.options.clone(), inputs: Vec::new() };
    match execute(&mut ctx, &cli.command) {
        Ok((verdict, evidence)) => {
            let report = VerdictReport {
                command: echo,
                inputs: ctx.inputs,
                verdict,
                evidence,
                seed: cli.options.seed,
                elapsed_micros: cli.options.timing.then(|| start.elapsed().as_micros() as u64),
            };
            (to_json(&report), verdict.exit_code())
        }
        Err(Failure::Usage(m)) => (error_report(echo, "usage", m), 3),
        Err(Failure::Input(e)) => {
            let kind = match e {
                IoError::Read(_) => "read",
                IoError::Syntax(_) => "syntax",
                IoError::Invalid(_) => "invalid",
            };
            (error_report(echo, kind, e.to_string()), 3)
        }
        Err(Failure::Compute(e)) => (error_report(echo, "computation", e.to_string()), 3),
    }
}

fn error_report(command: Vec<String>, kind: &'static str, message: String) -> String {
    to_json(&ErrorReport { command, error: ErrorDetail { kind, message: message.trim_end().to_string() } })
}
