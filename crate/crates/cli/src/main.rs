//! `qtensor`: q-tensor and q-exterior squares of finite groups by two
//! routes, an eta-group builder, and the claim verification harness.

use clap::{Parser, Subcommand, ValueEnum};
use qtensor_core::analyze::{close_subgroup, SubgroupHandle};
use qtensor_core::catalog::{self, CatalogFilter};
use qtensor_core::claims::{self, Session, VerifyOptions};
use qtensor_core::coset::{CosetTable, Strategy, DEFAULT_MAX_COSETS};
use qtensor_core::error::Error;
use qtensor_core::eta::{build_eta_q, build_nu_q, NamedSubgroup};
use qtensor_core::report::{render_markdown, results_json, GroupReport, Timings, Verdict};
use qtensor_core::table::{EmbeddedPair, FiniteGroupTable};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "qtensor",
    version,
    about = "q-tensor and q-exterior squares of finite groups, two ways"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Pc,
    Enum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute G (x)_q G for a built-in group spec or a table file.
    TensorSquare {
        /// Group spec (`dihedral:5`, `cyclic:8`, `abelian:[2,4]`, ...) or
        /// path to a multiplication-table file.
        spec: String,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
        #[arg(long = "max-cosets", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
        strategy: StrategyArg,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Export the completed coset table (enumeration route only).
        #[arg(long = "dump-table")]
        dump_table: Option<PathBuf>,
    },
    /// Build and analyze eta_q(G, H) for subgroups of an overgroup L.
    Eta {
        /// Overgroup spec or table file.
        l: String,
        /// Generators of G as comma-separated 1-based element indices, or `all`.
        #[arg(long = "G")]
        g: String,
        /// Generators of H in the same format.
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        q: u32,
        #[arg(long = "max-cosets", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
        strategy: StrategyArg,
        #[arg(long)]
        json: bool,
        #[arg(long = "dump-table")]
        dump_table: Option<PathBuf>,
    },
    /// Run one claim (or `all`) against the catalog.
    Verify {
        /// Claim id such as `Prop4.4`, `Lemma2.2.vi`, or `all`.
        claim: String,
        /// Catalog filter: `all`, `class-le-3`, or a group spec.
        #[arg(long, default_value = "all")]
        catalog: String,
        /// Restrict to one group spec or named pair (overrides --catalog).
        #[arg(long)]
        group: Option<String>,
        /// q range `A..B` (inclusive) or a single value.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "max-cosets", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Also write the results as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the full verification and write JSON + Markdown reports.
    Report {
        #[arg(long)]
        out: PathBuf,
        /// Reuse results from a previous `verify --json` run instead of
        /// re-running the claims.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        catalog: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_q_range(text: &str) -> Result<(u32, u32), Error> {
    if let Some((a, b)) = text.split_once("..") {
        let lo = a.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad q range `{text}`")))?;
        let hi = b.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad q range `{text}`")))?;
        Ok((lo, hi))
    } else {
        let v = text.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad q `{text}`")))?;
        Ok((v, v))
    }
}

/// A built-in spec, or a path to a table file.
fn load_table(spec: &str) -> Result<FiniteGroupTable, Error> {
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)?;
        FiniteGroupTable::parse(&text)
    } else {
        FiniteGroupTable::from_spec(spec)
    }
}

fn parse_elements(text: &str, order: usize) -> Result<Vec<u32>, Error> {
    if text == "all" {
        return Ok((0..order as u32).collect());
    }
    text.split(',')
        .map(|tok| {
            let idx: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad element index `{tok}`")))?;
            if idx == 0 || idx > order {
                return Err(Error::InvalidArgument(format!(
                    "element index {idx} out of range 1..={order}"
                )));
            }
            Ok((idx - 1) as u32)
        })
        .collect()
}

fn tensor_square_enum(
    table: &FiniteGroupTable,
    q: u32,
    max_cosets: usize,
    strategy: Strategy,
) -> Result<(GroupReport, CosetTable), Error> {
    let t0 = std::time::Instant::now();
    let e = build_nu_q(table, q)?;
    let build_ms = t0.elapsed().as_millis() as u64;
    let t1 = std::time::Instant::now();
    let (ct, reg) = e.enumerate_regular(max_cosets, strategy)?;
    let enumerate_ms = t1.elapsed().as_millis() as u64;
    let t2 = std::time::Instant::now();
    let ups = close_subgroup(&reg, &e.named_subgroup_words(NamedSubgroup::Upsilon)?)?;
    let report = GroupReport {
        order: ups.order(),
        exponent: ups.exponent()?,
        invariant_factors: ups.abelian_invariants().ok().map(|a| a.0),
        structure: ups.recognize_structure()?.to_string(),
        route: "enum".into(),
        q,
        timings: Timings {
            build_ms,
            enumerate_ms,
            analyze_ms: t2.elapsed().as_millis() as u64,
            total_ms: t0.elapsed().as_millis() as u64,
        },
    };
    Ok((report, ct))
}

fn cmd_tensor_square(
    spec: &str,
    q: u32,
    route: Route,
    max_cosets: usize,
    strategy: Strategy,
    json: bool,
    dump_table: Option<PathBuf>,
) -> Result<(), Error> {
    let table = load_table(spec)?;
    let pc_report = || -> Result<GroupReport, Error> {
        let pc = catalog::pc_from_spec(spec)?;
        Ok(qtensor_core::eqext::tensor_square_pc(&pc, q)?.0)
    };
    let report = match route {
        Route::Pc => {
            if dump_table.is_some() {
                return Err(Error::InvalidArgument(
                    "--dump-table requires the enumeration route".into(),
                ));
            }
            pc_report()?
        }
        Route::Enum => {
            let (report, ct) = tensor_square_enum(&table, q, max_cosets, strategy)?;
            if let Some(path) = dump_table {
                std::fs::write(path, ct.export_text())?;
            }
            report
        }
        Route::Both => {
            let (enum_report, ct) = tensor_square_enum(&table, q, max_cosets, strategy)?;
            if let Some(path) = dump_table {
                std::fs::write(path, ct.export_text())?;
            }
            let pc = pc_report()?;
            if !pc.same_group_data(&enum_report) {
                return Err(Error::RouteMismatch(format!(
                    "pc route gives order {} {}, enumeration gives order {} {}",
                    pc.order, pc.structure, enum_report.order, enum_report.structure
                )));
            }
            let mut combined = enum_report;
            combined.route = "both".into();
            combined
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        println!(
            "{} (x)_{} {}: order {}, exponent {}, structure {}{} [route {}]",
            spec,
            q,
            spec,
            report.order,
            report.exponent,
            report.structure,
            report
                .invariant_factors
                .as_ref()
                .map(|f| format!(", invariants {f:?}"))
                .unwrap_or_default(),
            report.route
        );
    }
    Ok(())
}

fn cmd_eta(
    lspec: &str,
    g: &str,
    h: &str,
    q: u32,
    max_cosets: usize,
    strategy: Strategy,
    json: bool,
    dump_table: Option<PathBuf>,
) -> Result<(), Error> {
    let l = load_table(lspec)?;
    let g_gens = parse_elements(g, l.order())?;
    let h_gens = parse_elements(h, l.order())?;
    let pair = EmbeddedPair::new(l, &g_gens, &h_gens)?;
    let t0 = std::time::Instant::now();
    let e = build_eta_q(&pair, q)?;
    let build_ms = t0.elapsed().as_millis() as u64;
    let t1 = std::time::Instant::now();
    let (ct, reg) = e.enumerate_regular(max_cosets, strategy)?;
    let enumerate_ms = t1.elapsed().as_millis() as u64;
    if let Some(path) = dump_table {
        std::fs::write(path, ct.export_text())?;
    }
    let t2 = std::time::Instant::now();
    let ups = close_subgroup(&reg, &e.named_subgroup_words(NamedSubgroup::Upsilon)?)?;
    let k_sub = close_subgroup(&reg, &e.named_subgroup_words(NamedSubgroup::K)?)?;
    let rho = qtensor_core::analyze::GroupHom::new(
        reg.clone(),
        e.pair().overgroup().clone(),
        qtensor_core::eta::rho_images(&e),
    )?;
    let theta = rho.kernel();
    let mu = theta.intersect(&ups)?;
    let whole = SubgroupHandle::whole(&reg)?;
    let report = GroupReport {
        order: reg.order(),
        exponent: whole.exponent()?,
        invariant_factors: whole.abelian_invariants().ok().map(|a| a.0),
        structure: whole.recognize_structure()?.to_string(),
        route: "enum".into(),
        q,
        timings: Timings {
            build_ms,
            enumerate_ms,
            analyze_ms: t2.elapsed().as_millis() as u64,
            total_ms: t0.elapsed().as_millis() as u64,
        },
    };
    if json {
        let out = serde_json::json!({
            "eta_order": reg.order(),
            "upsilon_order": ups.order(),
            "k_order": k_sub.order(),
            "mu_order": mu.order(),
            "theta_order": theta.order(),
            "q": q,
            "report": serde_json::from_str::<serde_json::Value>(&report.to_json()).unwrap(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!(
            "eta^{q}: order {}, |Upsilon| = {}, |K| = {}, |mu| = {}, |theta| = {}",
            reg.order(),
            ups.order(),
            k_sub.order(),
            mu.order(),
            theta.order()
        );
    }
    Ok(())
}

fn cmd_verify(
    claim: &str,
    catalog_filter: &str,
    group: Option<String>,
    q: Option<String>,
    seed: u64,
    max_cosets: usize,
    json: Option<PathBuf>,
) -> Result<i32, Error> {
    let mut opts = VerifyOptions::default();
    opts.filter = match group {
        Some(g) => CatalogFilter::Group(g),
        None => catalog_filter.parse()?,
    };
    opts.q_range = q.as_deref().map(parse_q_range).transpose()?;
    opts.seed = seed;
    opts.max_cosets = max_cosets;
    let session = Session::new(opts);
    let results = if claim == "all" {
        claims::run_all(&session)?
    } else {
        claims::run_claim(&session, claim)?
    };
    let mut fails = 0;
    for r in &results {
        println!("[{}] {} :: {} ({} ms)", r.verdict, r.claim, r.instance, r.millis);
        if r.verdict == Verdict::Fail {
            fails += 1;
            if let Some(w) = &r.witness {
                println!("        {w}");
            }
        }
    }
    let passes = results.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let skips = results.iter().filter(|r| r.verdict == Verdict::Skipped).count();
    println!("{} checks: {passes} passed, {fails} failed, {skips} skipped (seed {seed})", results.len());
    if let Some(path) = json {
        std::fs::write(path, results_json(&results))?;
    }
    Ok(if fails == 0 { 0 } else { 1 })
}

fn cmd_report(
    out_dir: &PathBuf,
    from: Option<PathBuf>,
    catalog_filter: &str,
    q: Option<String>,
    seed: u64,
) -> Result<i32, Error> {
    std::fs::create_dir_all(out_dir)?;
    let mut opts = VerifyOptions::default();
    opts.filter = catalog_filter.parse()?;
    opts.q_range = q.as_deref().map(parse_q_range).transpose()?;
    opts.seed = seed;
    let session = Session::new(opts);
    let results: Vec<qtensor_core::report::ClaimResult> = match from {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidArgument(format!("bad results file: {e}")))?
        }
        None => claims::run_all(&session)?,
    };
    let examples = claims::example_table(&session)?;
    std::fs::write(out_dir.join("report.json"), results_json(&results))?;
    std::fs::write(out_dir.join("report.md"), render_markdown(&results, &examples))?;
    let fails = results.iter().filter(|r| r.verdict == Verdict::Fail).count();
    println!(
        "wrote {} and {} ({} failures)",
        out_dir.join("report.json").display(),
        out_dir.join("report.md").display(),
        fails
    );
    Ok(if fails == 0 { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::TensorSquare { spec, q, route, max_cosets, strategy, json, dump_table } => {
            cmd_tensor_square(&spec, q, route, max_cosets, strategy.into(), json, dump_table)?;
            Ok(0)
        }
        Cmd::Eta { l, g, h, q, max_cosets, strategy, json, dump_table } => {
            cmd_eta(&l, &g, &h, q, max_cosets, strategy.into(), json, dump_table)?;
            Ok(0)
        }
        Cmd::Verify { claim, catalog, group, q, seed, max_cosets, json } => {
            cmd_verify(&claim, &catalog, group, q, seed, max_cosets, json)
        }
        Cmd::Report { out, from, catalog, q, seed } => cmd_report(&out, from, &catalog, q, seed),
    }
}
