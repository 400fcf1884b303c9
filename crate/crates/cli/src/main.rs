use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mps_cli::catalog::{exit_code, run_catalog, Catalog, RunOptions};
use mps_cli::input::{classify, load_ideal, load_matrix, parse_field, read_json, CliError, IdealJson};
use mps_cli::report::{emit_report, Format};
use mps_core::determinantal::{fitting_ideal, row_relation_suite, sylvester_suite, ModulePresentation};
use mps_core::dim::{codim_grade, free_resolution, ideal_presentation, is_perfect, krull_dim, length_artinian, local_length};
use mps_core::field::Field;
use mps_core::ideal::{Ideal, QuotientRingContext};
use mps_core::linkage::{
    conductor_suite, koszul_identity_checks, self_linkage_check, strong_perfection_instance, KoszulComplex,
    LinkageInstance, SEARCH_BUDGET,
};
use mps_core::multipoint::{adjoint_conductor, multipoint_report, scheme_image_and_annihilator, MapJson};
use mps_core::poly::{Ring, RingJson};

#[derive(Parser)]
#[command(name = "mps", version, about = "Multiple-point ideals, determinantal linkage and Koszul homology")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Coefficient field overriding the input files: QQ, F<p>, or QQ(z, ...).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Draw limit for randomized searches.
    #[arg(long, global = true, default_value_t = SEARCH_BUDGET)]
    budget: usize,
    /// Worker threads for catalog runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal file.
    Gb { ideal: PathBuf },
    /// Krull dimension and codimension.
    Dim { ideal: PathBuf },
    /// Length of an Artinian quotient.
    Length { ideal: PathBuf },
    /// Length at the generic point of a prime.
    LocalLength {
        ideal: PathBuf,
        /// Generators of the prime, comma separated.
        #[arg(long, value_delimiter = ',')]
        prime: Vec<String>,
        /// Variables moved into the coefficient field.
        #[arg(long, value_delimiter = ',')]
        invert: Vec<String>,
    },
    /// Minimal free resolution of R / I.
    Resolve { ideal: PathBuf },
    /// Fitting ideal of the cokernel of a matrix file.
    Fitting {
        matrix: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Randomized Sylvester and row-relation suites.
    Sylvester {
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        row_trials: usize,
    },
    /// Image and Fitting-annihilator verdicts of a map file.
    Image { map: PathBuf },
    /// Adjoint ideal and conductor of a map file.
    Conductor { map: PathBuf },
    /// Multiple-point ideals of a map file.
    Multipoint {
        map: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        r: Vec<usize>,
    },
    /// Linkage of the ideals of minors of a matrix file.
    Linkage {
        matrix: PathBuf,
        #[arg(long)]
        p: usize,
        /// Also run the conductor identities.
        #[arg(long)]
        conductor: bool,
    },
    /// Koszul homology of elements of a quotient ring.
    Koszul { file: PathBuf },
    /// Koszul homology of a generic determinantal instance.
    StrongPerfection {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
    /// The example catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Verify entries and print a report.
    Run {
        /// Glob on entry names.
        #[arg(long)]
        filter: Option<String>,
        /// Run every entry; the default when no filter is given.
        #[arg(long, conflicts_with = "filter")]
        all: bool,
        /// Catalog file to use instead of the built-in one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// List entry names.
    List {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// `{"ring": {...}, "defining": [...], "elements": [...]}`.
#[derive(serde::Deserialize)]
struct KoszulJson {
    ring: RingJson,
    #[serde(default)]
    defining: Vec<String>,
    elements: Vec<String>,
}

struct Outcome {
    text: String,
    code: i32,
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json values serialize") + "\n",
        Format::Text => match v {
            Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            other => format!("{other}\n"),
        },
    }
}

fn ok(v: Value, format: Format) -> Result<Outcome, CliError> {
    Ok(Outcome { text: render(&v, format), code: 0 })
}

fn core<T>(r: mps_core::Result<T>) -> Result<T, CliError> {
    r.map_err(classify)
}

fn field(g: &Global) -> Result<Option<Field>, CliError> {
    g.field.as_deref().map(parse_field).transpose()
}

fn load_map(path: &std::path::Path, f: Option<&Field>) -> Result<mps_core::multipoint::FiniteAlgebra, CliError> {
    let mut m: MapJson = read_json(path)?;
    if let Some(f) = f {
        let fj = mps_core::field::FieldJson::from(f);
        m.target.field = fj.clone();
        m.source.field = fj;
    }
    core(m.build().and_then(|s| s.algebra()))
}

fn gens(i: &Ideal) -> Value {
    json!(i.gb_strings())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let f = field(g)?;
    let fmt = g.format;
    match cli.command {
        Command::Gb { ideal } => ok(json!({"gb": gens(&load_ideal(&ideal, f.as_ref())?)}), fmt),
        Command::Dim { ideal } => {
            let i = load_ideal(&ideal, f.as_ref())?;
            ok(json!({"dim": krull_dim(&i), "codim": codim_grade(&i).ok()}), fmt)
        }
        Command::Length { ideal } => ok(json!({"length": core(length_artinian(&load_ideal(&ideal, f.as_ref())?))?}), fmt),
        Command::LocalLength { ideal, prime, invert } => {
            let i = load_ideal(&ideal, f.as_ref())?;
            let p = core(Ideal::parse(i.ring(), &prime))?;
            ok(json!({"length": core(local_length(&i, &p, &invert))?}), fmt)
        }
        Command::Resolve { ideal } => {
            let i = load_ideal(&ideal, f.as_ref())?;
            let res = core(free_resolution(&ideal_presentation(&i), true))?;
            core(res.certify())?;
            let perf = core(is_perfect(&i)).ok();
            ok(
                json!({
                    "betti": res.betti(),
                    "pd": res.length(),
                    "grade": perf.as_ref().map(|p| p.grade),
                    "perfect": perf.as_ref().map(|p| p.perfect),
                }),
                fmt,
            )
        }
        Command::Fitting { matrix, index } => {
            let m = load_matrix(&matrix, f.as_ref())?;
            let p = ModulePresentation::unlabeled(m);
            ok(json!({"index": index, "fitting": gens(&core(fitting_ideal(&p, index))?)}), fmt)
        }
        Command::Sylvester { rows, cols, p, trials, row_trials } => {
            let field = f.unwrap_or(core(Field::prime(101))?);
            let ring = core(Ring::grevlex(field, &["x", "y", "z"]))?;
            let s = core(sylvester_suite(&ring, rows, cols, p, trials, g.seed))?;
            let r = core(row_relation_suite(&ring, rows, cols, p, row_trials, g.seed))?;
            let v = json!({
                "sylvester": {"trials": s.trials, "failures": s.failures},
                "row_relation": {"trials": r.trials, "failures": r.failures},
            });
            let code = if s.failures + r.failures > 0 { 1 } else { 0 };
            Ok(Outcome { text: render(&v, fmt), code })
        }
        Command::Image { map } => {
            let alg = load_map(&map, f.as_ref())?;
            let v = core(scheme_image_and_annihilator(&alg))?;
            ok(
                json!({
                    "image": gens(&v.image),
                    "annihilator": gens(&v.annihilator),
                    "fitt0": gens(&v.fitt0),
                    "fitt1": gens(&v.fitt1),
                    "annihilator_is_image": v.annihilator_is_image,
                    "fitt0_in_image": v.fitt0_in_image,
                    "same_support": v.same_support,
                    "fitt0_is_image": v.fitt0_is_image,
                }),
                fmt,
            )
        }
        Command::Conductor { map } => {
            let alg = load_map(&map, f.as_ref())?;
            let a = core(adjoint_conductor(&alg))?;
            ok(json!({"adjoint": gens(&a.via_fitting), "conductor": gens(&a.conductor), "agree": a.agree}), fmt)
        }
        Command::Multipoint { map, r } => {
            let alg = load_map(&map, f.as_ref())?;
            let rep = core(multipoint_report(&alg, &r, g.seed, g.budget))?;
            ok(serde_json::to_value(rep).expect("report serializes"), fmt)
        }
        Command::Linkage { matrix, p, conductor } => {
            let m = load_matrix(&matrix, f.as_ref())?;
            let inst = core(LinkageInstance::new(&m, p))?;
            let mut v = json!({"hypotheses": inst.hypotheses(), "admissible": inst.hypotheses().admissible()});
            if !inst.hypotheses().admissible() {
                return ok(v, fmt);
            }
            let choice = core(inst.find_regular_delta(g.seed, g.budget))?;
            let link = core(inst.link(&choice))?;
            let verdict = core(link.verify())?;
            v["delta"] = json!(link.delta.to_string());
            v["draws"] = json!(choice.draws);
            v["verdict"] = json!(verdict);
            if conductor {
                let ctx = inst.context();
                let j = core(mps_core::determinantal::minors_ideal(&m, p))?.gens().to_vec();
                let c = core(conductor_suite(ctx, &link.deltas, &j, &link.delta))?;
                let s = core(self_linkage_check(ctx, &j, &c.algebra, &link.delta, g.seed, g.budget))?;
                v["conductor"] = json!({
                    "algebra": c.algebra.to_string(),
                    "exponent": c.exponent,
                    "conductor_is_j": c.conductor_is_j,
                    "jb_is_j": c.jb_is_j,
                    "b_is_endomorphisms": c.b_is_endomorphisms,
                    "b_is_dual": c.b_is_dual,
                    "rees_agrees": c.rees.agrees,
                    "self_linking_element": s.t.to_string(),
                    "self_linked": s.self_linked,
                });
            }
            let code = if !verdict.inclusions_hold() {
                3
            } else if verdict.product && verdict.colon {
                0
            } else {
                1
            };
            Ok(Outcome { text: render(&v, fmt), code })
        }
        Command::Koszul { file } => {
            let k: KoszulJson = read_json(&file)?;
            let ideal = IdealJson { ring: k.ring, gens: k.defining }.build(f.as_ref())?;
            let ctx = core(QuotientRingContext::new(ideal.clone()))?;
            let elems = core(ideal.ring().parse_all(&k.elements))?;
            let kc = core(KoszulComplex::new(&ctx, elems))?;
            let ids = core(koszul_identity_checks(&kc))?;
            let mut v = serde_json::to_value(&ids).expect("identities serialize");
            v["nonzero_degrees"] = json!(core(kc.nonzero_degrees())?);
            ok(v, fmt)
        }
        Command::StrongPerfection { p, n } => {
            let sp = core(strong_perfection_instance(p, n, &f.unwrap_or(Field::Rationals)))?;
            let mut v = serde_json::to_value(&sp).expect("verdict serializes");
            v["strongly_perfect"] = json!(sp.strongly_perfect());
            ok(v, fmt)
        }
        Command::Catalog(c) => run_catalog_command(c, g),
    }
}

fn run_catalog_command(c: CatalogCommand, g: &Global) -> Result<Outcome, CliError> {
    let load = |file: &Option<PathBuf>| -> Result<Catalog, CliError> {
        match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                Catalog::parse(&text)
            }
            None => Ok(Catalog::builtin()),
        }
    };
    match c {
        CatalogCommand::List { file } => {
            let cat = load(&file)?;
            let text = cat.entries.iter().map(|e| format!("{}\t{}\n", e.name, e.description)).collect();
            Ok(Outcome { text, code: 0 })
        }
        CatalogCommand::Run { filter, all: _, file } => {
            let cat = load(&file)?;
            let entries = cat.select(filter.as_deref())?;
            if entries.is_empty() {
                return Err(CliError::Input(format!("no catalog entry matches {:?}", filter.unwrap_or_default())));
            }
            let opts = RunOptions { seed: g.seed, budget: g.budget, jobs: g.jobs };
            let reports = run_catalog(&entries, opts)?;
            Ok(Outcome { text: emit_report(&reports, g.format), code: exit_code(&reports) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(o) => {
            let written = match &out {
                Some(p) => std::fs::write(p, &o.text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{}", o.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
