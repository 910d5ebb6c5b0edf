//! `beauville`: construct, verify and search for Beauville structures.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beauville_core::atlas::{load_generators, table_row, table_structure, AtlasOutcome, BracketMode};
use beauville_core::constructions::{ConstructionError, FamilyRequest, FAMILIES};
use beauville_core::format::{parse_group_file, parse_witness_file, StructureFile};
use beauville_core::search::{search_beauville, search_strongly_real};
use beauville_core::structure::{
    surface_invariants, verify_strongly_real, verify_structure, verify_witness, Automorphism, StructureType,
    SurfaceInvariants,
};
use beauville_core::Verdict;
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use report::{Report, EXIT_FAIL, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "beauville", version, about = "Construct, verify and search for Beauville structures")]
#[command(disable_help_flag = true, disable_version_flag = true, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print help
    #[arg(long, action = ArgAction::Help, global = true)]
    help: Option<bool>,
    /// Print version
    #[arg(long, action = ArgAction::Version)]
    version: Option<bool>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure file (`-` reads standard input)
    Verify { file: String },
    /// Build a structure from one of the families
    Construct {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FAMILIES))]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the printed data even when it fails and replacement data exists
        #[arg(long)]
        printed: bool,
    },
    /// Exhaustive search over the class-pair space of a group
    Search {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        strongly_real: bool,
        /// Witness file with candidate automorphisms
        #[arg(long, requires = "strongly_real")]
        autos: Option<PathBuf>,
    },
    /// Genera, Euler number and χ of the surface
    Invariants {
        #[arg(long)]
        order: BigUint,
        #[arg(long = "type", value_name = "a,b,c,d,e,f", value_parser = StructureType::parse)]
        structure_type: StructureType,
    },
    /// Evaluate a sporadic table row on standard generators
    AtlasVerify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, value_enum, default_value_t = Bracket::Auto)]
        bracket: Bracket,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bracket {
    /// Both readings when a word is ambiguous, reporting the one matching the tabulated type
    Auto,
    Commutator,
    Grouping,
}

/// A failure that ends the run before a report exists.
struct Abort(i32, String);

fn usage(msg: impl Into<String>) -> Abort {
    Abort(EXIT_USAGE, msg.into())
}

fn read_input(path: &Path) -> Result<String, Abort> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn invariant_lines(order: &BigUint, t: &StructureType) -> (SurfaceInvariants, String) {
    let s = surface_invariants(order, t);
    let line = format!("g1={} g2={} e={} chi={}", s.g1, s.g2, s.euler, s.chi);
    (s, line)
}

fn invariants_json(s: &SurfaceInvariants) -> serde_json::Value {
    json!({"g1": s.g1.to_string(), "g2": s.g2.to_string(), "e": s.euler.to_string(), "chi": s.chi.to_string()})
}

fn verify(report: &mut Report, file: &str) -> Result<(), Abort> {
    let text = read_input(Path::new(file))?;
    let sf = StructureFile::parse(&text).map_err(|e| usage(format!("{file}: {e}")))?;
    let (s, witness) = sf.to_structure().map_err(|e| usage(format!("{file}: {e}")))?;
    let r = verify_structure(&s);
    if let Some(name) = s.group.name() {
        report.line(format!("group: {name}"));
    }
    report.line(format!("type: {} coprime={}", r.structure_type, r.coprime));
    if let Some(order) = &r.order {
        let (inv, line) = invariant_lines(order, &r.structure_type);
        report.line(format!("order: {order}"));
        report.line(format!("invariants: {line}"));
        report.data("order", json!(order.to_string()));
        report.data("invariants", invariants_json(&inv));
    }
    for n in r.notes.iter().chain(&sf.notes) {
        report.line(format!("note: {n}"));
    }
    report.item("generation.pair1", r.generation[0].clone());
    report.item("generation.pair2", r.generation[1].clone());
    report.item("dagger", r.dagger.clone());
    if let Some(w) = witness {
        let sr = verify_witness(&s.group, &s.pairs, &w, r.overall.is_pass());
        report.line(format!("witness equations (x1,y1,x2,y2): {:?}", sr.equations));
        report.item("witness", sr.verdict);
    }
    report.data("type", json!(r.structure_type.to_string()));
    report.data("coprime", json!(r.coprime));
    Ok(())
}

fn construct(report: &mut Report, family: &str, params: &str, out: Option<&Path>, printed: bool) -> Result<(), Abort> {
    let req = FamilyRequest::parse(family, params).map_err(|e| usage(e.to_string()))?;
    let c = req.construct().map_err(|e| match e {
        ConstructionError::NotFound(_) => Abort(EXIT_FAIL, e.to_string()),
        _ => usage(e.to_string()),
    })?;
    let cand = if printed { &c.printed } else { c.emitted() };
    report.line(format!("family: {req}"));
    report.line(format!("emitted: {} data", cand.provenance));
    for d in &c.discrepancies {
        report.line(format!("discrepancy in printed data: {d}"));
    }
    for n in &cand.notes {
        report.line(format!("note: {n}"));
    }
    let r = cand.report.as_ref().expect("constructions are adjudicated");
    let sr = cand.strong.as_ref().expect("constructions are adjudicated");
    report.line(format!("type: {} coprime={}", r.structure_type, r.coprime));
    report.item("structure", r.overall.clone());
    report.item("witness", sr.verdict.clone());
    report.data("provenance", json!(cand.provenance.to_string()));
    report.data("discrepancies", json!(c.discrepancies));
    report.data("type", json!(r.structure_type.to_string()));

    let mut notes = vec![format!("{req}: {} data", cand.provenance)];
    notes.extend(c.discrepancies.iter().map(|d| format!("printed data: {d}")));
    notes.extend(cand.notes.iter().cloned());
    let json = StructureFile::new(&cand.structure, Some(&cand.witness), notes).to_json();
    match out {
        Some(path) => {
            fs::write(path, json).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            report.line(format!("written: {}", path.display()));
        }
        None => io::stdout().write_all(json.as_bytes()).map_err(|e| usage(e.to_string()))?,
    }
    Ok(())
}

fn search(report: &mut Report, group: &Path, strongly_real: bool, autos: Option<&Path>) -> Result<(), Abort> {
    let text = read_input(group)?;
    let g = parse_group_file(&text).map_err(|e| usage(format!("{}: {e}", group.display())))?;
    let outcome = if strongly_real {
        let mut candidates: Vec<Automorphism> = match autos {
            Some(p) => parse_witness_file(&read_input(p)?, g.kind())
                .map_err(|e| usage(format!("{}: {e}", p.display())))?
                .into_iter()
                .map(|w| w.automorphism)
                .collect(),
            None => Vec::new(),
        };
        if autos.is_none() && g.is_abelian() {
            candidates.push(Automorphism::AbelianInversion);
        }
        report.line(format!("automorphisms: inner plus {} supplied", candidates.len()));
        search_strongly_real(&g, &candidates)
    } else {
        search_beauville(&g)
    }
    .map_err(|e| usage(format!("{}: {e}", group.display())))?;
    report.line(outcome.summary());
    report.data("pairs_examined", json!(outcome.pairs_examined));
    report.data("group_order", json!(outcome.group_order));
    match &outcome.structure {
        Some(s) => {
            report.item("search", Verdict::pass(format!("structure of type {}", s.structure_type())));
            if let Some(w) = &outcome.witness {
                report.item("witness", verify_strongly_real(s, w).verdict);
            }
            let sf = StructureFile::new(s, outcome.witness.as_ref(), vec![]);
            report.data("structure", serde_json::to_value(&sf).expect("structure files serialize"));
        }
        None => report.item("search", Verdict::fail(outcome.summary())),
    }
    Ok(())
}

fn invariants(report: &mut Report, order: &BigUint, t: &StructureType) {
    let (inv, line) = invariant_lines(order, t);
    report.line(line);
    report.data("invariants", invariants_json(&inv));
    let bad: Vec<u64> = t.0.iter().flatten().copied().filter(|&o| o < 2 || order % o != 0u32.into()).collect();
    let v = if !bad.is_empty() {
        Verdict::fail(format!("orders {bad:?} do not divide {order}"))
    } else if !inv.genera_integral() {
        Verdict::fail("genera are not integers")
    } else if !inv.hyperbolic() {
        Verdict::fail("a curve has genus below 2")
    } else {
        Verdict::pass("orders divide the group order and both genera are integers at least 2")
    };
    report.item("admissible", v);
}

fn atlas_report(report: &mut Report, out: &AtlasOutcome, label: &str) {
    report.line(format!("{label}: type {} (tabulated {})", out.computed, out.expected));
}

fn atlas_verify(report: &mut Report, group: &str, gens: &Path, bracket: Bracket) -> Result<(), Abort> {
    let row = table_row(group).map_err(|e| usage(e.to_string()))?;
    let (c, d) = load_generators(&read_input(gens)?).map_err(|e| usage(format!("{}: {e}", gens.display())))?;
    let (c, d) = (c.into(), d.into());
    let eval = |mode| table_structure(row, &c, &d, mode).map_err(|e| usage(e.to_string()));
    let modes = match bracket {
        Bracket::Commutator => vec![BracketMode::Commutator],
        Bracket::Grouping => vec![BracketMode::Grouping],
        Bracket::Auto if row.bracket_ambiguous() => vec![BracketMode::Commutator, BracketMode::Grouping],
        Bracket::Auto => vec![BracketMode::Commutator],
    };
    let both = modes.len() > 1;
    let mut outcomes = Vec::new();
    for m in modes {
        let o = eval(m)?;
        if both {
            atlas_report(report, &o, &format!("{m:?} reading"));
        }
        outcomes.push(o);
    }
    let chosen = outcomes.iter().position(AtlasOutcome::type_matches).unwrap_or(0);
    let out = &outcomes[chosen];
    report.line(format!("group: {}", row.group));
    report.line(format!("type: {} (tabulated {})", out.computed, out.expected));
    if row.bracket_ambiguous() {
        report.line(format!("bracket reading: {:?}", out.mode));
    }
    let problems = out.discrepancies();
    let recipe: Vec<&String> = problems.iter().filter(|p| !p.starts_with("type")).collect();
    report.item(
        "recipe",
        if recipe.is_empty() {
            Verdict::pass("t1, t2 are involutions and u1, u2 commute with t1")
        } else {
            Verdict::fail(recipe.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))
        },
    );
    report.item(
        "type",
        if out.type_matches() {
            Verdict::pass("matches the tabulated type")
        } else {
            Verdict::fail(format!("computed {}, tabulated {}", out.computed, out.expected))
        },
    );
    let want: BigUint = row.order.parse().expect("tabulated orders are integers");
    let got = out.structure.group.order().map_err(|e| usage(e.to_string()))?;
    report.item(
        "order",
        if got == want {
            Verdict::pass(format!("stabilizer chain order {got}"))
        } else {
            Verdict::fail(format!("⟨c,d⟩ has order {got}, tabulated {want}"))
        },
    );
    let r = verify_structure(&out.structure);
    report.item("generation.pair1", r.generation[0].clone());
    report.item("generation.pair2", r.generation[1].clone());
    report.item("dagger", r.dagger.clone());
    let sr = verify_witness(&out.structure.group, &out.structure.pairs, &out.witness, r.overall.is_pass());
    report.item("witness", sr.verdict);
    report.data("type", json!(out.computed.to_string()));
    report.data("expected_type", json!(out.expected.to_string()));
    Ok(())
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Abort> {
    match &cli.command {
        Command::Verify { file } => verify(report, file),
        Command::Construct { family, params, out, printed } => {
            construct(report, family, params, out.as_deref(), *printed)
        }
        Command::Search { group, strongly_real, autos } => search(report, group, *strongly_real, autos.as_deref()),
        Command::Invariants { order, structure_type } => {
            invariants(report, order, structure_type);
            Ok(())
        }
        Command::AtlasVerify { group, gens, bracket } => atlas_verify(report, group, gens, *bracket),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut report = Report::new(format!("beauville {}", argv.join(" ")));
    // the structure itself goes to standard output when `construct` has no --out
    let to_stderr = matches!(&cli.command, Command::Construct { out: None, .. });
    let code = match run(&cli, &mut report) {
        Ok(()) => report.exit_code(),
        Err(Abort(code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code as u8);
        }
    };
    let written = if to_stderr { report.write(&mut io::stderr()) } else { report.write(&mut io::stdout()) };
    if written.is_err() {
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
