use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use k3order9::classifier::{
    classify_all_in, diff_table1, enumerate_case_in, explain_row_in, AxiomPack,
};
use k3order9::dataset::{bundled, PaperDataset};
use k3order9::exact::{parse_poly, QPoly};
use k3order9::fibration::{analyze, bisection_genus, invariant_fibers, WeierstrassModel};
use k3order9::lattices::{invariants, LatticeExpr};
use k3order9::lefschetz::{
    admissible_types, build_holo_system, solution_relations, solve_nonneg_integer, Relations,
};
use k3order9::projective::{
    coordinate_point_singularity_screen, fixed_strata, invariant_monomials, DiagAction,
};
use k3order9::verify::verify_paper;

/// Exact computations for order-9 non-symplectic automorphisms of K3 surfaces.
#[derive(Parser)]
#[command(name = "k3order9", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Holomorphic Lefschetz system for ζ_n acting with character k.
    Lefschetz(LefschetzArgs),
    /// Enumerate fixed-locus configurations under an axiom pack.
    Classify(ClassifyArgs),
    /// Invariants of a lattice expression such as "U(3)+A2^4".
    Lattice { expr: String },
    /// Singular fibres of y^2 = x^3 + a(t) x + b(t), or the genus of y^2 = f(t).
    Fibration(FibrationArgs),
    /// Monomials of a given degree on which a diagonal action acts by ζ^c.
    Monomials(MonomialArgs),
    /// Recompute every bundled expectation.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Replace the bundled expected classification table.
        #[arg(long, value_name = "PATH")]
        table1: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LefschetzArgs {
    #[arg(long)]
    order: u32,
    #[arg(long)]
    k: u32,
    /// Only isolated points; no fixed curves, and points stay isolated for the cube.
    #[arg(long, conflicts_with = "no_curve")]
    isolated_only: bool,
    /// No fixed curves.
    #[arg(long)]
    no_curve: bool,
    /// Drop types where the cube of the action has eigenvalue 1.
    #[arg(long)]
    cube_isolated: bool,
    /// Enumerate nonnegative integer solutions.
    #[arg(long)]
    solve: bool,
    #[arg(long, default_value_t = 24)]
    max_points: i64,
    #[arg(long, default_value_t = 4)]
    max_alpha: i64,
}

#[derive(Args)]
struct ClassifyArgs {
    /// full, combinatorial, none, or a comma separated list of axioms.
    #[arg(long, default_value = "full")]
    axioms: String,
    /// Compare with the expected table; exit 1 on any difference.
    #[arg(long)]
    diff: bool,
    #[arg(long)]
    case: Option<String>,
    /// Show the derivation of one row.
    #[arg(long, value_name = "ROW")]
    explain: Option<String>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["b", "bisection"]))]
struct FibrationArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Order of an action t -> ζ t on the base to check.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, value_name = "F", allow_hyphen_values = true, conflicts_with_all = ["b", "order"])]
    bisection: Option<String>,
}

#[derive(Args)]
struct MonomialArgs {
    #[arg(long)]
    order: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u32>,
    #[arg(long)]
    degree: u32,
    #[arg(long, default_value_t = 0)]
    character: u32,
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check did not hold: exit 1, output already printed.
    Mismatch,
}

type Run = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn say(line: &str) {
    // a closed pipe is not an error for a report
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(v: &Value) {
    say(&serde_json::to_string_pretty(v).expect("serializable"));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn lefschetz(a: &LefschetzArgs) -> Run {
    let curve_points = !(a.isolated_only || a.no_curve);
    let types = admissible_types(
        a.order,
        a.k,
        curve_points,
        a.cube_isolated || a.isolated_only,
    )
    .map_err(usage)?;
    let curve_term = curve_points && a.k == 1;
    let sys = build_holo_system(a.order, a.k, &types, curve_term).map_err(usage)?;
    let relations = solution_relations(&sys);
    let mut out = json!({
        "order": a.order,
        "k": a.k,
        "types": types.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "unknowns": sys.unknown_names(),
        "consistent": relations.is_consistent(),
        "relations": relations.render(),
    });
    if let Relations::Affine { rows, free, .. } = &relations {
        out["relation_rows"] = to_value(rows);
        out["free"] = json!(free
            .iter()
            .map(|&i| sys.unknown_names()[i].clone())
            .collect::<Vec<_>>());
    }
    if a.solve {
        let bounds: Vec<(i64, i64)> = sys
            .unknowns
            .iter()
            .map(|u| match u {
                k3order9::lefschetz::Unknown::Alpha => (0, a.max_alpha),
                _ => (0, a.max_points),
            })
            .collect();
        let sols = solve_nonneg_integer(&sys, &bounds).map_err(usage)?;
        out["solutions"] = json!(sols);
    }
    emit(&out);
    Ok(())
}

fn classify(a: &ClassifyArgs) -> Run {
    let pack = AxiomPack::parse(&a.axioms).map_err(usage)?;
    let data = bundled();
    if let Some(row) = &a.explain {
        let ex = explain_row_in(data, row, &pack).map_err(usage)?;
        let mut v = to_value(&ex);
        v["trace"] = json!(ex.render());
        emit(&v);
        return Ok(());
    }
    let rows = match &a.case {
        Some(c) => enumerate_case_in(data, c, &pack).map_err(usage)?,
        None => classify_all_in(data, &pack),
    };
    let mut out = json!({ "axioms": pack.names(), "rows": to_value(&rows) });
    if a.diff {
        let expected: Vec<_> = match &a.case {
            Some(c) => data
                .table1
                .iter()
                .filter(|t| &t.case == c)
                .cloned()
                .collect(),
            None => data.table1.clone(),
        };
        let diff = diff_table1(&rows, &expected);
        out["diff"] = to_value(&diff);
        emit(&out);
        return if diff.is_empty() {
            Ok(())
        } else {
            Err(Failure::Mismatch)
        };
    }
    emit(&out);
    Ok(())
}

fn lattice(expr: &str) -> Run {
    let e = LatticeExpr::parse(expr).map_err(usage)?;
    emit(&to_value(&invariants(&e).map_err(usage)?));
    Ok(())
}

fn poly(text: &str) -> Result<QPoly, Failure> {
    parse_poly(text, "t").map_err(usage)
}

fn fibration(a: &FibrationArgs) -> Run {
    if let Some(f) = &a.bisection {
        let p = poly(f)?;
        let g = bisection_genus(&p).map_err(usage)?;
        emit(&json!({ "polynomial": p.to_string(), "bisection": to_value(&g) }));
        return Ok(());
    }
    let b = a.b.as_deref().expect("clap requires --b here");
    let m = WeierstrassModel::new(poly(&a.a)?, poly(b)?).map_err(usage)?;
    let r = analyze(&m).map_err(usage)?;
    let mut out = to_value(&r);
    out["census"] = to_value(&r.census());
    out["bisection"] = to_value(&bisection_genus(m.b()).ok());
    if let Some(d) = a.order {
        out["invariant_fibers"] = to_value(&invariant_fibers(&m, d).map_err(usage)?);
    }
    emit(&out);
    Ok(())
}

fn monomials(a: &MonomialArgs) -> Run {
    let act = DiagAction::new(a.order, &a.weights, a.character).map_err(usage)?;
    let ms = invariant_monomials(&act, a.degree).map_err(usage)?;
    let screen = coordinate_point_singularity_screen(&ms, act.ambient_dim()).map_err(usage)?;
    emit(&json!({
        "action": to_value(&act),
        "degree": a.degree,
        "fixed_strata": to_value(&fixed_strata(&act)),
        "monomials": to_value(&ms),
        "screen": to_value(&screen),
    }));
    Ok(())
}

fn verify(json_out: bool, table1: Option<&PathBuf>) -> Run {
    let custom;
    let data: &PaperDataset = match table1 {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            custom = PaperDataset::with_table1(&text).map_err(usage)?;
            &custom
        }
        None => bundled(),
    };
    let report = verify_paper(data);
    if json_out {
        emit(&to_value(&report));
    } else {
        for l in report.lines() {
            say(&l);
        }
        say(&format!(
            "{} passed, {} failed, {} notes",
            report.passed, report.failed, report.notes
        ));
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Lefschetz(a) => lefschetz(a),
        Command::Classify(a) => classify(a),
        Command::Lattice { expr } => lattice(expr),
        Command::Fibration(a) => fibration(a),
        Command::Monomials(a) => monomials(a),
        Command::VerifyPaper { json, table1 } => verify(*json, table1.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
