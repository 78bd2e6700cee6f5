//! Command-line surface. Exit codes: 0 pass, 1 audit failure, 2 fixture or usage error.

use crate::families::families_verify;
use crate::fixture::{ingest, load_chart, Fixture};
use crate::render::{render_chart, RenderOptions};
use anyhow::{anyhow, bail, Context};
use chart_core::{validate, Chart, SyntheticClass, Window};
use clap::{Args, Parser, Subcommand};
use ext_engine::{export_chart, minimal_resolution, GradedAlgebra};
use moore_lift::{replay_lift_argument, LiftScript, MooreError};
use spectral_maps::{build_fiber_chart, delete_differential_check, ChartMap, Verdict};
use std::io::Write;
use std::path::{Path, PathBuf};
use toda_ledger::chain::Chain;
use toda_ledger::{check_relation_chain, force_nonzero_from_empty};

pub const PASS: i32 = 0;
pub const AUDIT_FAILURE: i32 = 1;
pub const FIXTURE_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "workbench", about = "Check chart computations and lifting arguments against cited fixtures")]
pub struct Cli {
    /// Fixture directory.
    #[arg(long, global = true, default_value = "fixtures")]
    pub fixtures: PathBuf,
    /// Directory for written artifacts (SVG, JSON, reports).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ext over A(n) by minimal resolution.
    Ext {
        #[command(subcommand)]
        cmd: ExtCmd,
    },
    /// Validate or render a chart.
    Chart {
        #[command(subcommand)]
        cmd: ChartCmd,
    },
    /// Fiber chart of a fixture map.
    Fiber {
        #[command(subcommand)]
        cmd: FiberCmd,
    },
    /// Deleted-differential checks.
    #[command(name = "delete-diff")]
    DeleteDiff {
        #[command(subcommand)]
        cmd: DeleteCmd,
    },
    /// Relation chains and empty brackets.
    Toda {
        #[command(subcommand)]
        cmd: TodaCmd,
    },
    /// Replay lifting scripts.
    Moore {
        #[command(subcommand)]
        cmd: MooreCmd,
    },
    /// The family audit.
    Families {
        #[command(subcommand)]
        cmd: FamiliesCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtCmd {
    Compute {
        /// n in A(n).
        #[arg(long, default_value_t = 1)]
        algebra: usize,
        #[arg(long, default_value_t = 20)]
        stems: usize,
        #[arg(long, default_value_t = 10)]
        filtrations: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChartCmd {
    Validate { file: PathBuf },
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Chart file, or the name of a fixture chart (KO, TMF, TMF0(3)).
    pub chart: String,
    /// Stem range `a..b`.
    #[arg(long)]
    pub stems: Option<String>,
    /// Filtration range `a..b`.
    #[arg(long)]
    pub filtrations: Option<String>,
    #[arg(long)]
    pub no_labels: bool,
}

#[derive(Debug, Subcommand)]
pub enum FiberCmd {
    Build {
        #[arg(long, default_value = "ko_psi3")]
        map: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeleteCmd {
    Check {
        /// Degree of a differential table row.
        #[arg(long, conflicts_with = "class")]
        row: Option<i64>,
        #[arg(long, default_value = "ko_psi3")]
        map: String,
        /// Generator name in the map's source chart.
        #[arg(long, requires = "page")]
        class: Option<String>,
        #[arg(long)]
        page: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TodaCmd {
    Verify {
        /// Chain file or chain id; every fixture chain when absent.
        #[arg(long)]
        chain: Option<String>,
    },
    Force {
        #[arg(long)]
        bracket: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum MooreCmd {
    Replay {
        /// Script file or script id; every fixture script when absent.
        #[arg(long)]
        script: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamiliesCmd {
    Verify,
}

/// Parse `a..b` or `a,b`.
pub fn parse_range(s: &str) -> anyhow::Result<(i64, i64)> {
    let (a, b) = s.split_once("..").or_else(|| s.split_once(',')).ok_or_else(|| anyhow!("range `{s}` is not a..b"))?;
    let a: i64 = a.trim().parse().with_context(|| format!("range `{s}`"))?;
    let b: i64 = b.trim().parse().with_context(|| format!("range `{s}`"))?;
    if a > b {
        bail!("range `{s}` is empty");
    }
    Ok((a, b))
}

fn write_artifact(out: &Option<PathBuf>, name: &str, body: &str, w: &mut dyn Write) -> anyhow::Result<()> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let p = dir.join(name);
        std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        writeln!(w, "wrote {}", p.display())?;
    }
    Ok(())
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' }).collect()
}

/// Either a fixture error (exit 2) or an I/O problem.
struct Fail(i32, String);

impl<E: Into<anyhow::Error>> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(FIXTURE_ERROR, format!("{:#}", e.into()))
    }
}

fn fixture(cli: &Cli) -> Result<Fixture, Fail> {
    ingest(&cli.fixtures).map_err(|e| Fail(FIXTURE_ERROR, format!("fixture error: {e}")))
}

fn map<'a>(fx: &'a Fixture, name: &str) -> Result<&'a ChartMap, Fail> {
    match name {
        "ko_psi3" | "psi3" => Ok(&fx.psi3),
        "qp3" => Ok(&fx.qp3),
        _ => Err(Fail(FIXTURE_ERROR, format!("unknown map `{name}` (ko_psi3, qp3)"))),
    }
}

/// Run a parsed command, writing human-readable output to `w`.
pub fn run(cli: &Cli, w: &mut dyn Write) -> i32 {
    match dispatch(cli, w) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(w, "error: {msg}");
            code
        }
    }
}

fn dispatch(cli: &Cli, w: &mut dyn Write) -> Result<i32, Fail> {
    match &cli.command {
        Command::Ext { cmd: ExtCmd::Compute { algebra, stems, filtrations } } => {
            let alg = GradedAlgebra::milnor(*algebra)?;
            let res = minimal_resolution(&alg, *stems, *filtrations)?;
            let dims = res.dims();
            writeln!(w, "Ext over A({algebra}), stems 0..{stems}, filtrations 0..{filtrations}")?;
            for f in (0..dims.len()).rev() {
                let row: Vec<String> = dims[f].iter().map(|d| if *d == 0 { ".".into() } else { d.to_string() }).collect();
                writeln!(w, "{f:>3} | {}", row.join(" "))?;
            }
            write_artifact(&cli.out, &format!("ext_a{algebra}.json"), &export_chart(&res).to_json(), w)?;
            Ok(PASS)
        }
        Command::Chart { cmd: ChartCmd::Validate { file } } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let rel = file.display().to_string();
            let chart: Chart = serde_json::from_str(&text)
                .map_err(|e| Fail(FIXTURE_ERROR, format!("{rel}:{}: schema: {e}", e.line())))?;
            let rep = validate(&chart);
            writeln!(w, "{}: {} cells, {} differentials", chart.name, chart.cells.len(), chart.differentials.len())?;
            for v in &rep.violations {
                writeln!(w, "  {v}")?;
            }
            if !rep.pass() {
                writeln!(w, "fail")?;
                return Ok(AUDIT_FAILURE);
            }
            load_chart(&rel, &text).map_err(|e| Fail(FIXTURE_ERROR, e.to_string()))?;
            writeln!(w, "pass")?;
            Ok(PASS)
        }
        Command::Chart { cmd: ChartCmd::Render(args) } => {
            let chart = if Path::new(&args.chart).is_file() {
                let text = std::fs::read_to_string(&args.chart)?;
                load_chart(&args.chart, &text).map_err(|e| Fail(FIXTURE_ERROR, e.to_string()))?
            } else {
                let fx = fixture(cli)?;
                fx.chart(&args.chart)
                    .cloned()
                    .ok_or_else(|| Fail(FIXTURE_ERROR, format!("no chart `{}` (file or KO, TMF, TMF0(3))", args.chart)))?
            };
            let stems = args.stems.as_deref().map(parse_range).transpose()?.unwrap_or(chart.window.stems);
            let filts = args.filtrations.as_deref().map(parse_range).transpose()?.unwrap_or(chart.window.filtrations);
            let opts = RenderOptions { window: Some(Window::new(stems, filts)), labels: !args.no_labels, ..Default::default() };
            let svg = render_chart(&chart, &opts).map_err(|e| Fail(FIXTURE_ERROR, e.to_string()))?;
            if cli.out.is_some() {
                let name = format!("{}_{}_{}.svg", file_stem(&chart.name), stems.0, stems.1);
                write_artifact(&cli.out, &name, &svg, w)?;
            } else {
                write!(w, "{svg}")?;
            }
            Ok(PASS)
        }
        Command::Fiber { cmd: FiberCmd::Build { map: name } } => {
            let fx = fixture(cli)?;
            let f = map(&fx, name)?;
            let fib = build_fiber_chart(f, f.source.window)?;
            writeln!(w, "fiber of {} ({} -> {})", f.name, f.source.name, f.target.name)?;
            for c in &fib.chart.cells {
                if let Some(g) = fib.group_at(c.at) {
                    writeln!(w, "  {}: {g}  {}", c.at, c.group.names().join(", "))?;
                }
            }
            for at in &fib.ambiguous {
                writeln!(w, "  {at}: extension open")?;
            }
            for at in &fib.unknown {
                writeln!(w, "  {at}: no map data")?;
            }
            write_artifact(&cli.out, &format!("fiber_{}.json", file_stem(&f.name)), &fib.chart.to_json(), w)?;
            Ok(PASS)
        }
        Command::DeleteDiff { cmd: DeleteCmd::Check { row, map: name, class, page } } => {
            let fx = fixture(cli)?;
            let verdict = match (row, class) {
                (Some(d), _) => {
                    let r = fx.table2.row(*d).ok_or_else(|| Fail(FIXTURE_ERROR, format!("no table row {d}")))?;
                    writeln!(w, "row {d}: {}  [{}]", r.printed, r.provenance)?;
                    r.check(&fx.qp3)?
                }
                (None, Some(cls)) => {
                    let f = map(&fx, name)?;
                    let x = SyntheticClass::named(&f.source, cls)?;
                    delete_differential_check(&x, page.unwrap_or(2), f)?
                }
                (None, None) => return Err(Fail(FIXTURE_ERROR, "give --row or --class with --page".into())),
            };
            for l in verdict.transcript() {
                writeln!(w, "  {l}")?;
            }
            Ok(match verdict {
                Verdict::Certificate(c) if c.detected => PASS,
                _ => AUDIT_FAILURE,
            })
        }
        Command::Toda { cmd: TodaCmd::Verify { chain } } => {
            let fx = fixture(cli)?;
            let chains: Vec<Chain> = match chain {
                Some(c) if Path::new(c).is_file() => vec![Chain::parse(&std::fs::read_to_string(c)?)?],
                Some(c) => vec![fx.chain(c).cloned().ok_or_else(|| Fail(FIXTURE_ERROR, format!("no chain `{c}`")))?],
                None => fx.chains.iter().map(|(_, c)| c.clone()).collect(),
            };
            let mut code = PASS;
            for c in &chains {
                let prov = c.provenance.as_deref().unwrap_or("-");
                match check_relation_chain(c, &fx.relations) {
                    Ok(t) => {
                        writeln!(w, "chain {}: pass  [{prov}]", c.id)?;
                        write!(w, "{}", t.to_string().lines().skip(1).map(|l| format!("{l}\n")).collect::<String>())?;
                    }
                    Err(e) => {
                        writeln!(w, "chain {}: FAIL {e}  [{prov}]", c.id)?;
                        code = AUDIT_FAILURE;
                    }
                }
            }
            Ok(code)
        }
        Command::Toda { cmd: TodaCmd::Force { bracket } } => {
            let fx = fixture(cli)?;
            let b = fx.relations.bracket(bracket).ok_or_else(|| Fail(FIXTURE_ERROR, format!("no bracket `{bracket}`")))?;
            let c = force_nonzero_from_empty(b, &fx.relations)?;
            writeln!(w, "{c}  [{}]", b.provenance)?;
            Ok(if c.nonzero.is_some() { PASS } else { AUDIT_FAILURE })
        }
        Command::Moore { cmd: MooreCmd::Replay { script } } => {
            let fx = fixture(cli)?;
            let scripts: Vec<LiftScript> = match script {
                Some(s) if Path::new(s).is_file() => vec![LiftScript::parse(&std::fs::read_to_string(s)?)?],
                Some(s) => vec![fx.script(s).cloned().ok_or_else(|| Fail(FIXTURE_ERROR, format!("no script `{s}`")))?],
                None => fx.scripts.iter().map(|(_, s)| s.clone()).collect(),
            };
            let mut code = PASS;
            for s in &scripts {
                let ladder = s.ladder(&fx.sphere)?;
                match replay_lift_argument(s, &ladder) {
                    Ok(t) => write!(w, "{t}")?,
                    Err(e @ MooreError::Failed { .. }) => {
                        writeln!(w, "script {}: FAIL {e}  [{}]", s.id, s.provenance)?;
                        code = code.max(AUDIT_FAILURE);
                    }
                    Err(e) => {
                        writeln!(w, "script {}: {e}  [{}]", s.id, s.provenance)?;
                        code = FIXTURE_ERROR;
                    }
                }
            }
            Ok(code)
        }
        Command::Families { cmd: FamiliesCmd::Verify } => {
            let fx = fixture(cli)?;
            let rep = families_verify(&fx);
            let text = rep.to_string();
            write!(w, "{text}")?;
            write_artifact(&cli.out, "families_report.txt", &text, w)?;
            Ok(if rep.pass() { PASS } else { AUDIT_FAILURE })
        }
    }
}
