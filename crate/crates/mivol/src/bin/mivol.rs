//! Command-line front end for the exact mixed-integer volume toolkit.
//!
//! Subcommands compute volumes, fiber decompositions, halfspace mass
//! fractions, centerpoint certificates, and run the named inequality
//! suites and end-to-end theorem checks.  Every command is deterministic
//! for a fixed `--seed` and renders to CSV or JSON.  Exit code 0 means
//! all applicable checks were satisfied, 2 means some check was violated,
//! and 1 means the command itself failed.

use clap::{Args, Parser, Subcommand};
use mivol::centerpoint::{
    oertel_radius_lower_bound, reference_bounds, DirectionSearchConfig,
};
use mivol::constructions::worst_case_instance;
use mivol::error::{Error, Result};
use mivol::harness::records::{records_from_json, write_report};
use mivol::harness::{
    check_corollary_width, check_theorem_general, check_theorem_n1, generate_instance,
    mc_volume, render_csv, render_json, run_lemma_suite, ExperimentRecord, InstanceFamily,
    LemmaRow, ReportFormat, Satisfied,
};
use mivol::lattice::{lattice_width, unimodular_enlarge, width_search_bound, DEFAULT_ENLARGE_BUDGET};
use mivol::linalg::Point;
use mivol::mixed::{enumerate_fibers, fiberset_to_csv, mu, total_volume, MixedIntegerBody};
use mivol::polytope::json::rat_to_json;
use mivol::polytope::{project, volume, Halfspace};
use mivol::scalar::{format_rat, parse_rat, to_f64, Rat};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "mivol", version, about = "Exact mixed-integer volume toolkit")]
struct Cli {
    /// Seed for every randomized search and instance generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

/// Instance source: a JSON file or a named seeded family.
#[derive(Args)]
struct InstanceArgs {
    /// JSON instance file with keys n, d, body.
    #[arg(long)]
    instance: Option<PathBuf>,

    /// Named instance family: worst_case, product_box, cone_product,
    /// random_hull, or sheared.
    #[arg(long)]
    family: Option<String>,

    /// Comma-separated key=value family parameters, e.g. n=1,d=2,k=8.
    #[arg(long, default_value = "")]
    params: String,
}

impl InstanceArgs {
    fn load(&self, seed: u64) -> Result<(MixedIntegerBody, String)> {
        match (&self.instance, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                let v: Value = serde_json::from_str(&text)?;
                let m = MixedIntegerBody::from_json(&v)?;
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "instance".into());
                Ok((m, id))
            }
            (None, Some(name)) => {
                let f = InstanceFamily::parse(name, &self.params, seed)?;
                let m = generate_instance(&f)?;
                Ok((m, f.id()))
            }
            _ => Err(Error::BadParams(
                "pass exactly one of --instance or --family".into(),
            )),
        }
    }
}

/// Overrides for the candidate direction search budget.
#[derive(Args)]
struct SearchArgs {
    /// Random sphere directions to sample.
    #[arg(long)]
    samples: Option<usize>,

    /// Local refinement sweeps per direction.
    #[arg(long)]
    refine: Option<usize>,

    /// Amplitude cap for composite lattice-dominant directions.
    #[arg(long)]
    rmax: Option<String>,
}

impl SearchArgs {
    fn build(&self, m: &MixedIntegerBody, seed: u64) -> Result<DirectionSearchConfig> {
        let mut cfg = DirectionSearchConfig::defaults_for(m)?;
        cfg.seed = seed;
        if let Some(s) = self.samples {
            cfg.sphere_samples = s;
        }
        if let Some(r) = self.refine {
            cfg.refine_iters = r;
        }
        if let Some(raw) = &self.rmax {
            cfg.r_max = parse_rat_arg(raw, "--rmax")?;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Total fiber volume and continuous volume of an instance.
    Volume(InstanceArgs),

    /// Fiber decomposition: every nonempty integer slice with its volume.
    Fibers(InstanceArgs),

    /// Mass fraction of a halfspace normal.y >= offset.
    Mu {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated inner normal, e.g. 1,0,-1/2.
        #[arg(long)]
        normal: String,
        /// Halfspace offset.
        #[arg(long)]
        offset: Option<String>,
        /// Anchor point the halfspace boundary passes through.
        #[arg(long)]
        anchor: Option<String>,
    },

    /// Best centerpoint candidate with its worst tested fraction.
    Centerpoint {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Centerpoint certificate bundled against the guaranteed thresholds.
    Oertel {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Seeded suites for one named inequality check.
    Verify {
        /// Lemma token: 3.1, 3.2, 3.3, 4.1, 4.2, 4.3, or 4.4.
        #[arg(long)]
        lemma: String,
        /// Family override replacing the per-lemma defaults.
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated key=value parameters for the family override.
        #[arg(long, default_value = "")]
        params: String,
        /// Number of instances to run.
        #[arg(long, default_value_t = 12)]
        count: usize,
    },

    /// Cut-construction guarantee for one integer coordinate.
    TheoremN1 {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Shift-construction guarantee for a general lattice block.
    TheoremGeneral {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },

    /// Width-threshold guarantee after unimodular enlargement.
    CorollaryWidth {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Coefficient bound for the exhaustive width search.
        #[arg(long)]
        bound: Option<i64>,
    },

    /// Exact composite-cut value on the box-times-simplex family.
    WorstCase {
        /// Integer coordinates.
        #[arg(long)]
        n: usize,
        /// Continuous coordinates.
        #[arg(long)]
        d: usize,
        /// Lattice block weight of the cut normal.
        #[arg(long, default_value = "100")]
        r: String,
    },

    /// Lattice width of the integer-block projection.
    LatticeWidth {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Coefficient bound for the exhaustive direction search.
        #[arg(long)]
        bound: Option<i64>,
    },

    /// Greedy unimodular enlargement of the projected block's ball.
    Enlarge {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Rounds of greedy improvement.
        #[arg(long, default_value_t = DEFAULT_ENLARGE_BUDGET)]
        budget: usize,
    },

    /// Monte Carlo cross-check of the exact continuous volume.
    McCheck {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Uniform samples to draw.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },

    /// Re-render a JSON record report and recompute its exit code.
    Report {
        /// JSON report produced by a theorem or corollary command.
        #[arg(long)]
        input: PathBuf,
    },
}

/// Rendered command output plus the exit code it implies.
enum Output {
    Object(Value),
    Records(Vec<ExperimentRecord>),
    Lemmas(Vec<LemmaRow>),
    Table { csv: String, json: Value },
}

fn parse_rat_arg(raw: &str, what: &str) -> Result<Rat> {
    parse_rat(raw).ok_or_else(|| Error::BadParams(format!("{what}: bad rational {raw:?}")))
}

fn parse_point_arg(raw: &str, what: &str) -> Result<Point> {
    raw.split(',').map(|c| parse_rat_arg(c.trim(), what)).collect()
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn object_to_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            out.push_str(&csv_cell(k));
            out.push(',');
            out.push_str(&csv_cell(&value_cell(val)));
            out.push('\n');
        }
    }
    out
}

fn lemmas_to_csv(rows: &[LemmaRow]) -> String {
    let mut out = String::from("instance_id,params,measured,bound,satisfied\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_cell(&r.instance_id),
            csv_cell(&r.params),
            csv_cell(&format_rat(&r.measured)),
            csv_cell(&format_rat(&r.bound)),
            r.satisfied
        ));
    }
    out
}

fn lemmas_to_json(rows: &[LemmaRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "instance_id": r.instance_id,
                    "params": r.params,
                    "measured": rat_to_json(&r.measured),
                    "measured_f64": to_f64(&r.measured),
                    "bound": rat_to_json(&r.bound),
                    "bound_f64": to_f64(&r.bound),
                    "satisfied": r.satisfied.to_string(),
                })
            })
            .collect(),
    )
}

fn render(output: &Output, format: ReportFormat) -> String {
    match (output, format) {
        (Output::Object(v), ReportFormat::Json) => {
            format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
        }
        (Output::Object(v), ReportFormat::Csv) => object_to_csv(v),
        (Output::Records(rs), ReportFormat::Csv) => render_csv(rs),
        (Output::Records(rs), ReportFormat::Json) => {
            format!("{}\n", serde_json::to_string_pretty(&render_json(rs)).expect("serializable"))
        }
        (Output::Lemmas(rows), ReportFormat::Csv) => lemmas_to_csv(rows),
        (Output::Lemmas(rows), ReportFormat::Json) => {
            format!("{}\n", serde_json::to_string_pretty(&lemmas_to_json(rows)).expect("serializable"))
        }
        (Output::Table { csv, .. }, ReportFormat::Csv) => csv.clone(),
        (Output::Table { json, .. }, ReportFormat::Json) => {
            format!("{}\n", serde_json::to_string_pretty(json).expect("serializable"))
        }
    }
}

fn records_exit(records: &[ExperimentRecord]) -> i32 {
    if records.iter().any(|r| r.satisfied == Satisfied::No) {
        2
    } else {
        0
    }
}

fn run_command(cli: &Cli) -> Result<(Output, i32)> {
    match &cli.command {
        Command::Volume(instance) => {
            let (m, id) = instance.load(cli.seed)?;
            let total = total_volume(&m)?;
            let cont = volume(m.body())?;
            let obj = json!({
                "instance_id": id,
                "n": m.n(),
                "d": m.d(),
                "total_fiber_volume": rat_to_json(&total),
                "total_fiber_volume_f64": to_f64(&total),
                "continuous_volume": rat_to_json(&cont),
                "continuous_volume_f64": to_f64(&cont),
            });
            Ok((Output::Object(obj), 0))
        }
        Command::Fibers(instance) => {
            let (m, id) = instance.load(cli.seed)?;
            let fs = enumerate_fibers(&m)?;
            let csv = fiberset_to_csv(&fs);
            let fibers: Vec<Value> = fs
                .fibers
                .iter()
                .map(|f| {
                    json!({
                        "z": f.z,
                        "volume": rat_to_json(&f.vol),
                        "volume_f64": to_f64(&f.vol),
                    })
                })
            .collect();
            let jout = json!({
                "instance_id": id,
                "n": fs.n,
                "d": fs.d,
                "total": rat_to_json(&fs.total),
                "total_f64": to_f64(&fs.total),
                "fibers": fibers,
            });
            Ok((Output::Table { csv, json: jout }, 0))
        }
        Command::Mu { instance, normal, offset, anchor } => {
            let (m, id) = instance.load(cli.seed)?;
            let normal = parse_point_arg(normal, "--normal")?;
            let h = match (offset, anchor) {
                (Some(o), None) => Halfspace::new(normal, parse_rat_arg(o, "--offset")?)?,
                (None, Some(a)) => {
                    Halfspace::from_anchor(normal, &parse_point_arg(a, "--anchor")?)?
                }
                _ => {
                    return Err(Error::BadParams(
                        "pass exactly one of --offset or --anchor".into(),
                    ))
                }
            };
            let value = mu(&m, &h)?;
            let obj = json!({
                "instance_id": id,
                "n": m.n(),
                "d": m.d(),
                "normal": h.normal.iter().map(rat_to_json).collect::<Vec<_>>(),
                "offset": rat_to_json(&h.offset),
                "mu": rat_to_json(&value),
                "mu_f64": to_f64(&value),
            });
            Ok((Output::Object(obj), 0))
        }
        Command::Centerpoint { instance, search } => {
            let (m, id) = instance.load(cli.seed)?;
            let cfg = search.build(&m, cli.seed)?;
            let cert = oertel_radius_lower_bound(&m, &cfg)?;
            let mut obj = cert.to_json();
            obj["instance_id"] = json!(id);
            obj["n"] = json!(m.n());
            obj["d"] = json!(m.d());
            Ok((Output::Object(obj), 0))
        }
        Command::Oertel { instance, search } => {
            let (m, id) = instance.load(cli.seed)?;
            let cfg = search.build(&m, cli.seed)?;
            let cert = oertel_radius_lower_bound(&m, &cfg)?;
            let bounds = reference_bounds(m.n(), m.d())?;
            let meets_helly = cert.value >= bounds.helly;
            let obj = json!({
                "instance_id": id,
                "n": m.n(),
                "d": m.d(),
                "certificate": cert.to_json(),
                "reference_bounds": bounds.to_json(),
                "meets_helly_floor": meets_helly,
            });
            Ok((Output::Object(obj), if meets_helly { 0 } else { 2 }))
        }
        Command::Verify { lemma, family, params, count } => {
            let family = family.as_deref().map(|name| (name, params.as_str()));
            let rows = run_lemma_suite(lemma, family, *count, cli.seed)?;
            let exit = if rows.iter().any(|r| r.satisfied == Satisfied::No) { 2 } else { 0 };
            Ok((Output::Lemmas(rows), exit))
        }
        Command::TheoremN1 { instance, search } => {
            let (m, id) = instance.load(cli.seed)?;
            let cfg = search.build(&m, cli.seed)?;
            let records = check_theorem_n1(&m, &id, cli.seed, Some(&cfg))?;
            let exit = records_exit(&records);
            Ok((Output::Records(records), exit))
        }
        Command::TheoremGeneral { instance, search } => {
            let (m, id) = instance.load(cli.seed)?;
            let cfg = search.build(&m, cli.seed)?;
            let records = check_theorem_general(&m, &id, cli.seed, Some(&cfg))?;
            let exit = records_exit(&records);
            Ok((Output::Records(records), exit))
        }
        Command::CorollaryWidth { instance, search, bound } => {
            let (m, id) = instance.load(cli.seed)?;
            let cfg = search.build(&m, cli.seed)?;
            let records = check_corollary_width(&m, &id, cli.seed, Some(&cfg), *bound)?;
            let exit = records_exit(&records);
            Ok((Output::Records(records), exit))
        }
        Command::WorstCase { n, d, r } => {
            let r = parse_rat_arg(r, "--r")?;
            let wc = worst_case_instance(*n, *d, &r)?;
            let measured = mu(&wc.m, &wc.h)?;
            let matches = measured == wc.expected;
            let obj = json!({
                "n": n,
                "d": d,
                "r": rat_to_json(&r),
                "threshold": rat_to_json(&wc.threshold),
                "tight": wc.tight,
                "mu": rat_to_json(&measured),
                "mu_f64": to_f64(&measured),
                "expected": rat_to_json(&wc.expected),
                "expected_f64": to_f64(&wc.expected),
                "matches": matches,
            });
            Ok((Output::Object(obj), if wc.tight && !matches { 2 } else { 0 }))
        }
        Command::LatticeWidth { instance, bound } => {
            let (m, id) = instance.load(cli.seed)?;
            let proj = project(m.body(), m.n())?;
            let b = bound.unwrap_or_else(|| width_search_bound(m.n()));
            let wres = lattice_width(&proj, b)?;
            let mut obj = wres.to_json();
            obj["instance_id"] = json!(id);
            obj["coefficient_bound"] = json!(b);
            Ok((Output::Object(obj), 0))
        }
        Command::Enlarge { instance, budget } => {
            let (m, id) = instance.load(cli.seed)?;
            let proj = project(m.body(), m.n())?;
            let outcome = unimodular_enlarge(&proj, *budget)?;
            let mut obj = outcome.to_json();
            obj["instance_id"] = json!(id);
            Ok((Output::Object(obj), 0))
        }
        Command::McCheck { instance, samples } => {
            let (m, id) = instance.load(cli.seed)?;
            let exact = volume(m.body())?;
            let exact_f64 = to_f64(&exact);
            let (estimate, stderr) = mc_volume(m.body(), *samples, cli.seed)?;
            let sigmas = if stderr > 0.0 {
                (estimate - exact_f64).abs() / stderr
            } else if estimate == exact_f64 {
                0.0
            } else {
                f64::INFINITY
            };
            let within = sigmas <= 3.0;
            let obj = json!({
                "instance_id": id,
                "samples": samples,
                "seed": cli.seed,
                "exact": rat_to_json(&exact),
                "exact_f64": exact_f64,
                "estimate": estimate,
                "stderr": stderr,
                "sigmas": sigmas,
                "within_three_sigma": within,
            });
            Ok((Output::Object(obj), if within { 0 } else { 2 }))
        }
        Command::Report { input } => {
            let text = std::fs::read_to_string(input)?;
            let v: Value = serde_json::from_str(&text)?;
            let records = records_from_json(&v)?;
            let exit = records_exit(&records);
            Ok((Output::Records(records), exit))
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let format = ReportFormat::from_str(&cli.format)?;
    let (output, exit) = run_command(cli)?;
    match (&cli.out, &output) {
        (Some(path), Output::Records(records)) => write_report(records, path, format)?,
        (Some(path), _) => std::fs::write(path, render(&output, format))?,
        (None, _) => print!("{}", render(&output, format)),
    }
    Ok(exit)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
