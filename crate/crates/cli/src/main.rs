use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isotopy_core::eala::{check_construction, chi_iso, root_space_dims, Eala, EalaOptions};
use isotopy_core::lattice::LatticeVec;
use isotopy_core::lie::{
    check_axioms, diag_conjugation_iso, dimension_match, identity_map, opposite_iso, ssp_isotope_iso, tkk_isotope_iso,
    verify_graded_map, AxiomOptions,
};
use isotopy_core::quadform::{self, QuadFormF2};
use isotopy_core::report::Report;
use isotopy_core::scenario::{self, RunOptions, Scenario};
use isotopy_core::spec::{parse_json, ModelSpec, TorusSpec};
use isotopy_core::torus::{
    alternative_isotope, check_flavor_laws, check_involution, invariants, jordan_isotope, Involution, InvolutionSpec,
    LawOptions,
};
use isotopy_core::{Error, Flavor, ShiftHom};

#[derive(Parser)]
#[command(name = "isotopy", version, about = "Coordinate tori, Lie tori, isotopes and extended affine Lie algebras")]
struct Cli {
    /// Seed for sampled sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree window [-w, w]^n; each command has its own default
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Print JSON instead of a summary
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock durations (reports are then no longer reproducible byte for byte)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coordinate tori
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Mod-2 quadratic forms
    #[command(subcommand)]
    Quadform(QuadformCmd),
    /// Lie tori and their isotopes
    #[command(subcommand)]
    Lietorus(LieCmd),
    /// Extended affine Lie algebras
    #[command(subcommand)]
    Eala(EalaCmd),
    /// Built-in and file-based scenarios
    #[command(subcommand)]
    Scenario(ScenarioCmd),
}

#[derive(Args)]
struct SpecArg {
    /// JSON text or a path to a JSON file
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Flavor laws, unit, invertibility and support checks
    Check {
        #[command(flatten)]
        spec: SpecArg,
        /// Also check an involution, given as {"e": [...]}
        #[arg(long)]
        involution: Option<String>,
    },
    /// Build an isotope and check it
    Isotope {
        #[command(flatten)]
        spec: SpecArg,
        /// Degree of u for a Jordan isotope
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Degrees of u1 and u2 for an alternative isotope
        #[arg(long, allow_hyphen_values = true)]
        u1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u2: Option<String>,
    },
    /// Support, centroidal grading group and coset sum
    Invariants {
        #[command(flatten)]
        spec: SpecArg,
    },
}

#[derive(Subcommand)]
enum QuadformCmd {
    /// Isometry classes of all forms of rank n
    Classify {
        #[arg(long)]
        n: usize,
    },
    /// Search for an isometry between two forms given as {"n","b","a"}
    Isometric {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Identity,
    Diag,
    Opposite,
    Tkk,
    Ssp,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Component dimensions on the window
    Build {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Window checks of the Lie torus axioms
    Check {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// The isotope L^(s) for a shift "s(α_1);s(α_2);..."
    Isotope {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
    },
    /// Build and verify one of the explicit isotope isomorphisms
    Iso {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum)]
        kind: MapKind,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Negate the image of one component (negative control)
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Subcommand)]
enum EalaCmd {
    /// Construct E(L, SCDer, 0) and run the window checks
    Build {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 5000)]
        samples: usize,
        /// Write the report here (same as --out)
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The map chi: E(L) -> E(L^(s))
    Chi {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Run the window verification
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 5000)]
        samples: usize,
        /// Flip the sign of omega (negative control)
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Run a built-in scenario by name, or one read from a JSON file
    Run {
        name: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Names of the built-in scenarios
    List,
}

struct Outcome {
    json: Value,
    lines: Vec<String>,
    passed: bool,
}

impl Outcome {
    fn report(r: &Report) -> Self {
        let mut lines = vec![r.subject.clone()];
        lines.extend(r.summary_lines().into_iter().map(|l| format!("  {l}")));
        Outcome { json: serde_json::to_value(r).expect("serializable"), lines, passed: r.all_passed() }
    }

    fn info(json: Value, lines: Vec<String>) -> Self {
        Outcome { json, lines, passed: true }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.lines.push(format!("  {key}: {v}"));
        if let Value::Object(m) = &mut self.json {
            m.insert(key.to_string(), v);
        }
        self
    }
}

fn read_text(arg: &str) -> Result<String, Error> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))
    }
}

fn torus_spec(arg: &str) -> Result<TorusSpec, Error> {
    parse_json(&read_text(arg)?)
}

fn model_spec(arg: &str) -> Result<ModelSpec, Error> {
    parse_json(&read_text(arg)?)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let win = |d: i64| cli.window.unwrap_or(d);
    match &cli.command {
        Command::Torus(cmd) => match cmd {
            TorusCmd::Check { spec, involution } => {
                let a = torus_spec(&spec.spec)?.build()?;
                let opts = LawOptions::with_window(win(2));
                let mut report = check_flavor_laws(&a, &opts);
                if let Some(text) = involution {
                    let e: InvolutionSpec = parse_json(&read_text(text)?)?;
                    report.extend(check_involution(&Involution::new(&a, e.e)?, &opts)?.checks);
                }
                Ok(Outcome::report(&report))
            }
            TorusCmd::Isotope { spec, u, u1, u2 } => {
                let a = torus_spec(&spec.spec)?.build()?;
                let iso = match (u, u1, u2) {
                    (Some(u), None, None) if a.flavor() == Flavor::Jordan => jordan_isotope(&a, &LatticeVec::parse(u)?)?,
                    (None, Some(u1), Some(u2)) => alternative_isotope(&a, &LatticeVec::parse(u1)?, &LatticeVec::parse(u2)?)?,
                    _ => {
                        return Err(Error::Validation(
                            "give --u for a Jordan torus or --u1 and --u2 for an alternative or associative one".into(),
                        ))
                    }
                };
                let report = check_flavor_laws(&iso, &LawOptions::with_window(win(2)));
                let inv = invariants(&iso, win(1).min(2))?;
                Ok(Outcome::report(&report)
                    .with("support", json!(inv.support))
                    .with("sigma", json!(inv.sigma)))
            }
            TorusCmd::Invariants { spec } => {
                let a = torus_spec(&spec.spec)?.build()?;
                let inv = invariants(&a, win(1))?;
                let lines = vec![
                    format!("{} torus ({})", inv.kind, inv.flavor),
                    format!("  support: {}", inv.support),
                    format!("  gamma basis: {}", json!(inv.gamma)),
                    format!("  cosets S/gamma: {}", json!(inv.cosets)),
                    format!("  sigma(S/gamma): {}", json!(inv.sigma)),
                    format!("  centrality table consistent: {}", inv.centrality_consistent),
                ];
                let passed = inv.centrality_consistent;
                Ok(Outcome { json: serde_json::to_value(&inv).expect("serializable"), lines, passed })
            }
        },
        Command::Quadform(cmd) => match cmd {
            QuadformCmd::Classify { n } => {
                let classes = quadform::classify(*n)?;
                let mut lines = vec![format!("{} isometry classes of rank-{n} forms", classes.len())];
                for c in &classes {
                    lines.push(format!("  size {}: {}", c.size, json!(c.representative)));
                }
                Ok(Outcome::info(json!({"n": n, "classes": classes}), lines))
            }
            QuadformCmd::Isometric { a, b } => {
                let ka: QuadFormF2 = parse_json(&read_text(a)?)?;
                let kb: QuadFormF2 = parse_json(&read_text(b)?)?;
                let tau = quadform::is_isometric(&ka, &kb)?;
                let line = match &tau {
                    Some(t) => format!("isometric, tau = {}", json!(t)),
                    None => "not isometric".to_string(),
                };
                Ok(Outcome::info(json!({"isometric": tau.is_some(), "tau": tau}), vec![line]))
            }
        },
        Command::Lietorus(cmd) => match cmd {
            LieCmd::Build { spec } => {
                let m = model_spec(&spec.spec)?.build()?;
                let dims = m.component_dims(win(1));
                let mut lines = vec![format!("{} (window {})", m.name(), win(1))];
                lines.extend(dims.iter().map(|d| format!("  dim L_{}^{} = {}", d.root, d.degree, d.dim)));
                Ok(Outcome::info(json!({"model": m.name(), "components": dims}), lines))
            }
            LieCmd::Check { spec, samples } => {
                let m = model_spec(&spec.spec)?.build()?;
                let opts = AxiomOptions { window: win(1), jacobi_samples: *samples, seed: cli.seed };
                Ok(Outcome::report(&check_axioms(&m, &opts)))
            }
            LieCmd::Isotope { spec, shift } => {
                let m = model_spec(&spec.spec)?.build()?;
                let iso = m.shift_isotope(&ShiftHom::parse(shift)?)?;
                let dims = iso.component_dims(win(1));
                let mut lines = vec![format!("{} (window {})", iso.name(), win(1))];
                lines.extend(dims.iter().map(|d| format!("  dim L_{}^{} = {}", d.root, d.degree, d.dim)));
                Ok(Outcome::info(json!({"model": iso.name(), "components": dims}), lines))
            }
            LieCmd::Iso { spec, kind, shift, perturb } => {
                let m = model_spec(&spec.spec)?.build()?;
                let s = || -> Result<ShiftHom, Error> {
                    ShiftHom::parse(shift.as_deref().ok_or_else(|| Error::Validation("this map needs --shift".into()))?)
                };
                let mut phi = match kind {
                    MapKind::Identity => identity_map(&m),
                    MapKind::Diag => diag_conjugation_iso(&m, &s()?)?,
                    MapKind::Opposite => opposite_iso(&m)?,
                    MapKind::Tkk => tkk_isotope_iso(&m, &s()?)?,
                    MapKind::Ssp => ssp_isotope_iso(&m, &s()?)?,
                };
                if *perturb {
                    let zero = LatticeVec::zero(m.lattice_rank());
                    let root = phi
                        .source
                        .datum()
                        .nonzero_roots()
                        .into_iter()
                        .find(|a| !phi.source.basis(a, &zero).is_empty())
                        .ok_or_else(|| Error::Validation("no nonzero root space in degree 0".into()))?;
                    phi = phi.perturbed(&root, &zero);
                }
                let mut report = verify_graded_map(&phi, win(1));
                report.push(dimension_match(&phi, win(1)));
                Ok(Outcome::report(&report))
            }
        },
        Command::Eala(cmd) => match cmd {
            EalaCmd::Build { spec, samples, .. } => {
                let e = Eala::new(&model_spec(&spec.spec)?.build()?)?;
                let opts = EalaOptions { window: win(2), samples: *samples, seed: cli.seed };
                let report = check_construction(&e, &opts);
                let dims = root_space_dims(&e, win(2));
                Ok(Outcome::report(&report)
                    .with("degree_zero_dim", json!(e.degree_zero_dim()))
                    .with("h_dim", json!(e.h_basis().len()))
                    .with("max_root_space_dim", json!(dims.iter().map(|d| d.dim_e).max())))
            }
            EalaCmd::Chi { spec, shift, verify, samples, perturb } => {
                let mut chi = chi_iso(&model_spec(&spec.spec)?.build()?, &ShiftHom::parse(shift)?)?;
                if *perturb {
                    chi = chi.perturbed();
                }
                if *verify {
                    Ok(Outcome::report(&chi.verify(win(1), *samples, cli.seed)))
                } else {
                    let line = format!("chi: E({}) -> E({})", chi.source.model().name(), chi.target.model().name());
                    Ok(Outcome::info(json!({"source": chi.source.model().name(), "target": chi.target.model().name()}), vec![line]))
                }
            }
        },
        Command::Scenario(cmd) => match cmd {
            ScenarioCmd::List => {
                let names = scenario::list_scenarios();
                Ok(Outcome::info(json!(names), names.clone()))
            }
            ScenarioCmd::Run { name, file } => {
                let s: Scenario = match (name, file) {
                    (Some(n), None) => scenario::find_scenario(n)?,
                    (None, Some(f)) => parse_json(&read_text(&f.to_string_lossy())?)?,
                    _ => return Err(Error::Validation("give a scenario name or --file".into())),
                };
                let opts = RunOptions { seed: cli.seed, window: cli.window, timing: cli.timing };
                let r = scenario::run_scenario(&s, &opts)?;
                Ok(Outcome { json: serde_json::to_value(&r).expect("serializable"), lines: r.summary_lines(), passed: r.passed })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        outcome = outcome.with("duration_ms", json!(ms));
    }
    let text = serde_json::to_string_pretty(&outcome.json).expect("serializable");
    let report_file = match &cli.command {
        Command::Eala(EalaCmd::Build { report: Some(p), .. }) => Some(p),
        _ => None,
    };
    for path in cli.out.iter().chain(report_file) {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{text}");
    } else {
        for l in &outcome.lines {
            println!("{l}");
        }
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
