//! `sepline` command-line interface.
//!
//! Exit codes: 0 success, 2 infeasible or "No" answers, 1 input or internal
//! errors.

use std::fs;
use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepline::decomposition::{build_switch_graph, decompose, diagnostics_json};
use sepline::generate::{gen_circle, Pattern};
use sepline::geometry::{verify_separation, Separation};
use sepline::oracle::{feasible_pq, min_axis_separation, min_general_separation_circle, OracleResult};
use sepline::reduction::{extract, lift, normalize_with, reduce, Crbds, Layout, Normalization};
use sepline::report::{OracleComparison, RunReport, SolveSummary};
use sepline::solution::{line_json, lines_document, lines_from_json_str};
use sepline::solvers::axis::solve_axis_traced;
use sepline::solvers::{solve_general, wedge_baseline};
use sepline::svg::{render_svg, SvgOptions};
use sepline::{Error, Instance, Line};

#[derive(Parser)]
#[command(name = "sepline", version, about = "Red-blue separation by lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveVariant {
    General,
    Axis,
    Wedge,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleVariant {
    Axis,
    General,
    Pq,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a circle instance.
    Solve {
        /// Instance JSON file, or `-` for stdin.
        #[arg(required_unless_present = "batch")]
        instance: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "axis")]
        variant: SolveVariant,
        /// Compare the size with the exhaustive oracle; mismatches fail.
        #[arg(long)]
        check: bool,
        /// Write one SVG per refinement arrangement into this directory.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Solve every `*.json` in a directory; writes `<name>.solution.json`
        /// into `--out` (default: the same directory).
        #[arg(long, conflicts_with = "instance")]
        batch: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a run report JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Chunks, switch graph and kappa of a circle instance.
    Kappa { instance: PathBuf },
    /// Exhaustive baselines.
    Oracle {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: OracleVariant,
        #[arg(long, required_if_eq("variant", "pq"))]
        p: Option<usize>,
        #[arg(long, required_if_eq("variant", "pq"))]
        q: Option<usize>,
    },
    /// Reduce a C-RBDS instance to a planar (p,q) instance and layout sidecar.
    Reduce {
        crbds: PathBuf,
        /// Instance output (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        layout: PathBuf,
        #[arg(long, default_value = "plain")]
        normalization: Normalization,
    },
    /// Lines for a colorful dominating set of a reduced instance.
    Lift {
        #[arg(long)]
        layout: PathBuf,
        /// Red vertex names, one per input class (comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Colorful dominating set read off a solution of a reduced instance.
    Extract {
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        lines: PathBuf,
    },
    /// Check whether lines separate an instance.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        lines: PathBuf,
    },
    /// Seeded random circle instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "random")]
        pattern: Pattern,
        #[arg(long, env = "SEPLINE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of an instance with optional lines.
    Render {
        instance: PathBuf,
        #[arg(long)]
        lines: Option<PathBuf>,
        /// Layout sidecar; draws the track grid.
        #[arg(long)]
        layout: Option<PathBuf>,
        /// Shade cells holding both colours.
        #[arg(long)]
        shade: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::NotSeparating | Error::BudgetViolation(_) | Error::NoSignalLine(_) | Error::PointOnLine { .. } => 2,
            _ => 1,
        };
        Fail { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Fail {
    Fail { code: 1, message }
}

type Outcome = Result<(), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => {
            let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
            fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display())))
        }
        None => match writeln!(std::io::stdout().lock(), "{}", text.trim_end()) {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(input_error(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn load_instance(path: &Path) -> Result<Instance, Fail> {
    Ok(Instance::from_json_str(&read(path)?)?)
}

fn load_layout(path: &Path) -> Result<Layout, Fail> {
    Ok(Layout::from_json_str(&read(path)?)?)
}

fn oracle_json(r: &OracleResult) -> Value {
    json!({"size": r.size, "lines": r.lines.iter().map(line_json).collect::<Vec<_>>()})
}

struct Solved {
    document: Value,
    lines: Vec<Line>,
    summary: SolveSummary,
    arrangements: Vec<Vec<Line>>,
}

fn solve_one(inst: &Instance, variant: SolveVariant) -> Result<Solved, Fail> {
    Ok(match variant {
        SolveVariant::General => {
            let s = solve_general(inst)?;
            let summary =
                SolveSummary { variant: "general".into(), size: s.lines.len(), kappa: None, steps: None, repair_used: None };
            Solved { document: s.to_json(), lines: s.lines(), summary, arrangements: Vec::new() }
        }
        SolveVariant::Axis | SolveVariant::Wedge => {
            let (s, arrangements, name) = match variant {
                SolveVariant::Axis => {
                    let (s, _, trace) = solve_axis_traced(inst)?;
                    (s, trace.arrangements, "axis")
                }
                _ => (wedge_baseline(inst)?, Vec::new(), "wedge"),
            };
            let summary = SolveSummary {
                variant: name.into(),
                size: s.len(),
                kappa: s.kappa,
                steps: Some(s.steps),
                repair_used: Some(s.repair_used),
            };
            Solved { document: s.to_json(name), lines: s.lines.clone(), summary, arrangements }
        }
    })
}

fn check_against_oracle(inst: &Instance, variant: SolveVariant, size: usize) -> Result<OracleComparison, Fail> {
    let (name, optimum) = match variant {
        SolveVariant::General => ("general", min_general_separation_circle(inst)?.size),
        SolveVariant::Axis | SolveVariant::Wedge => ("axis", min_axis_separation(inst)?.size),
    };
    // The wedge baseline is only an upper bound.
    let agrees = match variant {
        SolveVariant::Wedge => size >= optimum,
        _ => size == optimum,
    };
    Ok(OracleComparison { oracle: name.into(), optimum, agrees })
}

fn solve_batch(dir: &Path, out: Option<&Path>, variant: SolveVariant, check: bool) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| input_error(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".solution.json")
        })
        .collect();
    files.sort();
    let out_dir = out.unwrap_or(dir).to_path_buf();
    fs::create_dir_all(&out_dir).map_err(|e| input_error(format!("{}: {e}", out_dir.display())))?;
    let one = |path: &PathBuf| -> (u8, Value) {
        let run = || -> Result<Value, Fail> {
            let inst = load_instance(path)?;
            let solved = solve_one(&inst, variant)?;
            let mut entry = json!({"file": path.display().to_string(), "size": solved.summary.size, "code": 0});
            if check {
                let cmp = check_against_oracle(&inst, variant, solved.summary.size)?;
                entry["oracle_optimum"] = json!(cmp.optimum);
                if !cmp.agrees {
                    return Err(Fail { code: 1, message: format!("size {} disagrees with oracle optimum {}", solved.summary.size, cmp.optimum) });
                }
            }
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().to_string();
            write(Some(&out_dir.join(format!("{stem}.solution.json"))), &pretty(&solved.document))?;
            Ok(entry)
        };
        match std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)) {
            Ok(Ok(v)) => (0, v),
            Ok(Err(f)) => (f.code, json!({"file": path.display().to_string(), "code": f.code, "error": f.message})),
            Err(_) => (1, json!({"file": path.display().to_string(), "code": 1, "error": "solver panicked"})),
        }
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let mut results: Vec<(usize, (u8, Value))> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let files = &files;
                let one = &one;
                s.spawn(move || (w..files.len()).step_by(workers).map(|i| (i, one(&files[i]))).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker joins")).collect()
    });
    results.sort_by_key(|r| r.0);
    let mut code = 0u8;
    for (_, (c, v)) in &results {
        write(None, &v.to_string())?;
        code = match (code, *c) {
            (1, _) | (_, 1) => 1,
            (a, b) => a.max(b),
        };
    }
    if code == 0 {
        Ok(())
    } else {
        Err(Fail { code, message: format!("{} of {} files failed", results.iter().filter(|r| r.1 .0 != 0).count(), results.len()) })
    }
}

fn run(cli: Cli, argv: Vec<String>) -> Outcome {
    match cli.command {
        Command::Solve { instance, variant, check, trace, batch, out, report, timing } => {
            if let Some(dir) = batch {
                return solve_batch(&dir, out.as_deref(), variant, check);
            }
            let started = Instant::now();
            let inst = load_instance(instance.as_deref().expect("clap requires an instance"))?;
            let solved = solve_one(&inst, variant)?;
            let oracle = if check { Some(check_against_oracle(&inst, variant, solved.summary.size)?) } else { None };
            if let Some(dir) = trace {
                fs::create_dir_all(&dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
                let steps = if solved.arrangements.is_empty() { vec![solved.lines.clone()] } else { solved.arrangements.clone() };
                for (i, lines) in steps.iter().enumerate() {
                    let svg = render_svg(&inst, lines, &SvgOptions { shade_corrupt: true, layout: None });
                    write(Some(&dir.join(format!("step_{i:03}.svg"))), &svg)?;
                }
            }
            write(out.as_deref(), &pretty(&solved.document))?;
            if let Some(path) = report {
                let r = RunReport {
                    command: argv,
                    digest: inst.digest(),
                    summary: solved.summary.clone(),
                    oracle: oracle.clone(),
                    timing_ms: timing.then(|| started.elapsed().as_millis() as u64),
                };
                write(Some(&path), &r.to_json_string())?;
            }
            match oracle {
                Some(c) if !c.agrees => Err(Fail {
                    code: 1,
                    message: format!("size {} disagrees with {} oracle optimum {}", solved.summary.size, c.oracle, c.optimum),
                }),
                _ => Ok(()),
            }
        }
        Command::Kappa { instance } => {
            let inst = load_instance(&instance)?;
            let dec = decompose(&inst)?;
            let g = build_switch_graph(&dec)?;
            write(None, &pretty(&diagnostics_json(&dec, &g)))
        }
        Command::Oracle { instance, variant, p, q } => {
            let inst = load_instance(&instance)?;
            match variant {
                OracleVariant::Axis => write(None, &pretty(&oracle_json(&min_axis_separation(&inst)?))),
                OracleVariant::General => write(None, &pretty(&oracle_json(&min_general_separation_circle(&inst)?))),
                OracleVariant::Pq => {
                    let (p, q) = (p.expect("clap requires p"), q.expect("clap requires q"));
                    let found = feasible_pq(&inst, p, q)?;
                    let doc = json!({
                        "p": p,
                        "q": q,
                        "feasible": found.is_some(),
                        "lines": found.as_ref().map(|ls| ls.iter().map(line_json).collect::<Vec<_>>()),
                    });
                    write(None, &pretty(&doc))?;
                    match found {
                        Some(_) => Ok(()),
                        None => Err(Fail { code: 2, message: format!("no separation with p = {p}, q = {q}") }),
                    }
                }
            }
        }
        Command::Reduce { crbds, out, layout, normalization } => {
            let g = Crbds::from_json_str(&read(&crbds)?)?;
            let red = reduce(&normalize_with(&g, normalization));
            write(Some(&layout), &red.layout.to_json_string())?;
            write(out.as_deref(), &red.instance.to_json_string())
        }
        Command::Lift { layout, set } => {
            let layout = load_layout(&layout)?;
            let lifted = lift(&layout, &set)?;
            let mut doc = lines_document("pq", &lifted.lines);
            doc["p"] = json!(layout.p);
            doc["q"] = json!(layout.q);
            doc["method"] = json!(lifted.method);
            doc["g"] = json!(lifted.g);
            write(None, &pretty(&doc))
        }
        Command::Extract { layout, lines } => {
            let layout = load_layout(&layout)?;
            let lines = lines_from_json_str(&read(&lines)?)?;
            let set = extract(&layout, &lines)?;
            write(None, &pretty(&json!({ "set": set })))
        }
        Command::Verify { instance, lines } => {
            let inst = load_instance(&instance)?;
            let lines = lines_from_json_str(&read(&lines)?)?;
            match verify_separation(&inst.points, &lines)? {
                Separation::Separated => write(None, &pretty(&json!({"separated": true}))),
                Separation::Violation { red, blue } => {
                    write(None, &pretty(&json!({"separated": false, "red": red, "blue": blue})))?;
                    Err(Fail { code: 2, message: format!("points {red} (red) and {blue} (blue) share a cell") })
                }
            }
        }
        Command::Gen { n, pattern, seed, out } => {
            let inst = gen_circle(n, seed, &pattern)?;
            write(out.as_deref(), &inst.to_json_string())
        }
        Command::Render { instance, lines, layout, shade, out } => {
            let inst = load_instance(&instance)?;
            let lines = match lines {
                Some(p) => lines_from_json_str(&read(&p)?)?,
                None => Vec::new(),
            };
            let layout = layout.as_deref().map(load_layout).transpose()?;
            let svg = render_svg(&inst, &lines, &SvgOptions { shade_corrupt: shade, layout: layout.as_ref() });
            write(out.as_deref(), &svg)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli, argv.into_iter().skip(1).collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
