use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use agkit::enumerate::{census, enumerate_ag, CensusFilter};
use agkit::identity::{classify, satisfies, IdentityId, PropertySet};
use agkit::magma::Magma;
use agkit::table_test::{lad_test, rad_test, render_report, TestReport};
use agkit::theorems::{check_implication, find_counterexample, paper_implications};

#[derive(Parser)]
#[command(name = "agkit", version, about = "Finite AG-groupoid toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable tables.
    Human,
    /// Line-oriented key=value output for machine consumption.
    Keyval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Yes,
    No,
}

#[derive(Args)]
struct CommonEnum {
    /// Enumeration worker threads (default 1 for reproducible timings).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Permit orders 6 and above (long-running).
    #[arg(long)]
    allow_long_run: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a Cayley table against the identity catalog.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run the extended-table LAD or RAD membership test.
    Test {
        /// Test for the LAD identity a(bc) = (ab)(ca).
        #[arg(long, conflicts_with = "rad")]
        lad: bool,
        /// Test for the RAD identity (ab)c = (ca)(bc).
        #[arg(long)]
        rad: bool,
        /// Render the per-x derived table pairs.
        #[arg(long)]
        show_table: bool,
        /// Expected verdict; a mismatch exits with status 1.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        file: PathBuf,
    },
    /// Enumerate AG-groupoid classes of one order, optionally filtered.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Required identities, comma-separated kebab-case names.
        #[arg(long, value_delimiter = ',')]
        require: Vec<IdentityId>,
        /// Forbidden identities, comma-separated kebab-case names.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<IdentityId>,
        /// Write each representative as a table file in this directory.
        #[arg(long)]
        emit_tables: Option<PathBuf>,
        #[command(flatten)]
        common: CommonEnum,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Full census for one order: total plus the non-associative rows.
    Census {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        common: CommonEnum,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check the implication suite over all classes up to a bound.
    Implications {
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[command(flatten)]
        common: CommonEnum,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Search for the first class with the given required/forbidden split.
    Counterexample {
        #[arg(long, value_delimiter = ',', required = true)]
        require: Vec<IdentityId>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<IdentityId>,
        #[arg(long)]
        max_order: usize,
        #[command(flatten)]
        common: CommonEnum,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn load_magma(path: &Path) -> Result<Magma, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Magma::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn satisfied_names(props: PropertySet) -> String {
    props
        .iter()
        .map(|id| id.name())
        .collect::<Vec<_>>()
        .join(",")
}

fn run_classify(file: &Path, format: Format) -> Result<ExitCode, String> {
    let m = load_magma(file)?;
    let props = classify(&m);
    let left_ids: Vec<String> = m.left_identities().iter().map(|e| e.to_string()).collect();
    match format {
        Format::Human => {
            println!("order: {}", m.order());
            println!(
                "ag-groupoid: {}",
                if props.contains(IdentityId::LeftInvertive) { "yes" } else { "no" }
            );
            println!("satisfies:");
            for id in props.iter() {
                println!("  {}", id.name());
            }
            println!(
                "left identities: {}",
                if left_ids.is_empty() { "none".to_string() } else { left_ids.join(" ") }
            );
        }
        Format::Keyval => {
            println!("order={}", m.order());
            println!("satisfies={}", satisfied_names(props));
            println!("left-identities={}", left_ids.join(","));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_test(
    lad: bool,
    rad: bool,
    show_table: bool,
    expect: Option<Expect>,
    file: &Path,
) -> Result<ExitCode, String> {
    if lad == rad {
        return Err("exactly one of --lad or --rad is required".to_string());
    }
    let m = load_magma(file)?;
    let report: TestReport = if lad { lad_test(&m) } else { rad_test(&m) };
    if show_table {
        print!("{}", render_report(&report));
    } else {
        println!(
            "{}: {}",
            report.identity.name(),
            if report.verdict { "yes" } else { "no" }
        );
        if let Some((x, a, b)) = report.first_disagreement {
            println!("first disagreement: x={x} a={a} b={b}");
        }
    }
    if let Some(expect) = expect {
        let expected = expect == Expect::Yes;
        if report.verdict != expected {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn build_filter(require: &[IdentityId], forbid: &[IdentityId]) -> Result<CensusFilter, String> {
    let required = PropertySet::from_ids(require.iter().copied());
    let forbidden = PropertySet::from_ids(forbid.iter().copied());
    CensusFilter::new(required, forbidden)
        .ok_or_else(|| "--require and --forbid sets overlap".to_string())
}

fn run_enumerate(
    order: usize,
    require: &[IdentityId],
    forbid: &[IdentityId],
    emit_tables: Option<&Path>,
    common: &CommonEnum,
    format: Format,
) -> Result<ExitCode, String> {
    let filter = build_filter(require, forbid)?;
    if let Some(dir) = emit_tables {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let mut emitted = Vec::new();
    let stats = enumerate_ag(order, &filter, common.jobs, common.allow_long_run, |m| {
        emitted.push(m.clone());
    })
    .map_err(|e| e.to_string())?;
    // buffered and already in canonical order; write/print deterministically
    if let Some(dir) = emit_tables {
        for m in &emitted {
            let digits: String = m.cells().iter().map(|c| c.to_string()).collect();
            let path = dir.join(format!("{digits}.tbl"));
            std::fs::write(&path, m.render()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    match format {
        Format::Human => {
            println!("order {order}: {} AG-groupoid classes total", stats.total_ag);
            println!("matching filter: {}", stats.matched);
            println!("search nodes: {}", stats.generated_nodes);
        }
        Format::Keyval => {
            println!("order={order}");
            println!("total-ag={}", stats.total_ag);
            println!("matched={}", stats.matched);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_census(order: usize, common: &CommonEnum, format: Format) -> Result<ExitCode, String> {
    let report = census(order, common.jobs, common.allow_long_run).map_err(|e| e.to_string())?;
    match format {
        Format::Human => {
            println!("census for order {order}");
            println!("  total AG-groupoids:              {}", report.total_ag);
            println!("  non-associative RAD AG-groupoids: {}", report.rad_non_associative);
            println!("  non-associative LAD AG-groupoids: {}", report.lad_non_associative);
            println!("  non-associative AD AG-groupoids:  {}", report.ad_non_associative);
        }
        Format::Keyval => {
            println!("order={order}");
            println!("total-ag={}", report.total_ag);
            println!("rad-non-associative={}", report.rad_non_associative);
            println!("lad-non-associative={}", report.lad_non_associative);
            println!("ad-non-associative={}", report.ad_non_associative);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_implications(
    max_order: usize,
    common: &CommonEnum,
    format: Format,
) -> Result<ExitCode, String> {
    let mut any_failure = false;
    for imp in paper_implications() {
        let report = check_implication(&imp, max_order, common.jobs, common.allow_long_run)
            .map_err(|e| e.to_string())?;
        let verdict = if report.holds() { "holds" } else { "FAILS" };
        match format {
            Format::Human => {
                println!(
                    "{}: {} (orders 1..={}, {} classes checked) [{}]{}",
                    imp.name,
                    verdict,
                    max_order,
                    report.classes_checked,
                    imp.source,
                    if imp.definition_caveat { " (imported definition)" } else { "" }
                );
                if let Some(cx) = &report.counterexample {
                    println!("counterexample:");
                    print!("{}", cx.render());
                }
            }
            Format::Keyval => {
                println!(
                    "implication={} verdict={} max-order={} classes={}",
                    imp.name,
                    if report.holds() { "holds" } else { "fails" },
                    max_order,
                    report.classes_checked
                );
            }
        }
        any_failure |= !report.holds();
    }
    Ok(if any_failure { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run_counterexample(
    require: &[IdentityId],
    forbid: &[IdentityId],
    max_order: usize,
    common: &CommonEnum,
    format: Format,
) -> Result<ExitCode, String> {
    build_filter(require, forbid)?; // validates disjointness
    let required = PropertySet::from_ids(require.iter().copied());
    let forbidden = PropertySet::from_ids(forbid.iter().copied());
    let found = find_counterexample(
        required,
        forbidden,
        max_order,
        common.jobs,
        common.allow_long_run,
    )
    .map_err(|e| e.to_string())?;
    match (&found, format) {
        (Some(m), Format::Human) => {
            println!("found at order {}:", m.order());
            print!("{}", m.render());
            debug_assert!(require.iter().all(|&id| satisfies(m, id)));
        }
        (Some(m), Format::Keyval) => {
            println!("found=yes");
            println!("order={}", m.order());
            println!(
                "cells={}",
                m.cells().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            );
        }
        (None, Format::Human) => println!("none up to order {max_order}"),
        (None, Format::Keyval) => println!("found=no"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { file, format } => run_classify(file, *format),
        Command::Test {
            lad,
            rad,
            show_table,
            expect,
            file,
        } => run_test(*lad, *rad, *show_table, *expect, file),
        Command::Enumerate {
            order,
            require,
            forbid,
            emit_tables,
            common,
            format,
        } => run_enumerate(*order, require, forbid, emit_tables.as_deref(), common, *format),
        Command::Census {
            order,
            common,
            format,
        } => run_census(*order, common, *format),
        Command::Implications {
            max_order,
            common,
            format,
        } => run_implications(*max_order, common, *format),
        Command::Counterexample {
            require,
            forbid,
            max_order,
            common,
            format,
        } => run_counterexample(require, forbid, *max_order, common, *format),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
