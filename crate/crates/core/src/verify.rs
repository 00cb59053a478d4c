//! Recomputes every bundled expectation from first principles and reports
//! each comparison.

use num_traits::Zero;
use serde::Serialize;

use crate::classifier::{classify_all_in, diff_table1, AxiomPack, DiffEntry, RowStatus};
use crate::dataset::{
    BisectionExpectation, FibrationFixture, FileDigest, LefschetzFixture, MonomialFixture,
    PaperDataset,
};
use crate::exact::{parse_poly, rat, Rat};
use crate::fibration::{analyze, bisection_genus, invariant_fibers, Bisection, WeierstrassModel};
use crate::lattices::check_lattice_row;
use crate::lefschetz::{
    admissible_types, build_holo_system, solution_relations, solve_nonneg_integer, HoloSystem,
    Relations,
};
use crate::projective::{
    coordinate_point_singularity_screen, invariant_monomials, DiagAction, Monomial, Screen,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded discrepancy that does not count as a failure.
    Note,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub data: Vec<FileDigest>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub notes: usize,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Note => "NOTE",
                };
                format!("{tag} {}: {}", c.id, c.detail)
            })
            .collect()
    }
}

fn check(id: String, anchor: &str, ok: bool, detail: String) -> Check {
    Check {
        id,
        anchor: anchor.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    let mut r = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Integer points of the bounding box satisfying `relations`, found by
/// running over the free unknowns and solving for the pivots.
fn points_from_relations(relations: &Relations, bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let Relations::Affine {
        rows, pivots, free, ..
    } = relations
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut values = vec![0i64; bounds.len()];
    let mut idx: Vec<i64> = free.iter().map(|&f| bounds[f].0).collect();
    'outer: loop {
        for (k, &f) in free.iter().enumerate() {
            values[f] = idx[k];
        }
        let mut ok = true;
        for (row, &p) in rows.iter().zip(pivots) {
            let mut rest = row.constant.clone();
            for &f in free {
                rest -= &row.coeffs[f] * rat(values[f]);
            }
            let v = rest / &row.coeffs[p];
            if !v.is_integer() {
                ok = false;
                break;
            }
            match i64::try_from(v.to_integer()) {
                Ok(x) if x >= bounds[p].0 && x <= bounds[p].1 => values[p] = x,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(values.clone());
        }
        for k in (0..free.len()).rev() {
            if idx[k] < bounds[free[k]].1 {
                idx[k] += 1;
                for j in k + 1..free.len() {
                    idx[j] = bounds[free[j]].0;
                }
                continue 'outer;
            }
        }
        break;
    }
    out.sort();
    out
}

fn expected_rows(fx: &LefschetzFixture, system: &HoloSystem) -> Result<Vec<Vec<Rat>>, String> {
    let names = system.unknown_names();
    let mut out = Vec::new();
    for rel in fx.relations.iter().flatten() {
        let mut row = vec![Rat::zero(); names.len() + 1];
        for (side, sign) in [(&rel.lhs, 1i64), (&rel.rhs, -1)] {
            for (name, &c) in side {
                let slot = if name == "1" {
                    names.len()
                } else {
                    names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| format!("unknown {name} not in the system"))?
                };
                // constants move to the right hand side
                let s = if slot == names.len() { -sign } else { sign };
                row[slot] += rat(s * c);
            }
        }
        out.push(row);
    }
    Ok(out)
}

fn lefschetz_checks(fx: &LefschetzFixture) -> Vec<Check> {
    let mut out = Vec::new();
    let id = |s: &str| format!("lefschetz/{}/{s}", fx.id);
    let types = match admissible_types(fx.order, fx.k, fx.curve_points, fx.cube_isolated_only) {
        Ok(t) => t,
        Err(e) => return vec![check(id("types"), &fx.anchor, false, e.to_string())],
    };
    let got: Vec<(u32, u32)> = types.iter().map(|t| (t.i, t.j)).collect();
    out.push(check(
        id("types"),
        &fx.anchor,
        got == fx.types,
        format!("admissible types {got:?}"),
    ));
    let system = match build_holo_system(fx.order, fx.k, &types, fx.curve_term) {
        Ok(s) => s,
        Err(e) => {
            out.push(check(id("relations"), &fx.anchor, false, e.to_string()));
            return out;
        }
    };
    let relations = solution_relations(&system);
    let bounds = system.default_bounds();
    let solutions = solve_nonneg_integer(&system, &bounds).unwrap_or_default();
    match (&fx.relations, &relations) {
        (None, Relations::Inconsistent) => out.push(check(
            id("relations"),
            &fx.anchor,
            solutions.is_empty(),
            "inconsistent over Q; no integer solutions".into(),
        )),
        (None, Relations::Affine { .. }) => out.push(check(
            id("relations"),
            &fx.anchor,
            false,
            format!("expected inconsistency, got {:?}", relations.render()),
        )),
        (Some(_), Relations::Inconsistent) => out.push(check(
            id("relations"),
            &fx.anchor,
            false,
            "system is inconsistent".into(),
        )),
        (Some(_), Relations::Affine { rows, .. }) => {
            let computed: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| {
                    let mut v = r.coeffs.clone();
                    v.push(r.constant.clone());
                    v
                })
                .collect();
            let (ok, detail) = match expected_rows(fx, &system) {
                Err(e) => (false, e),
                Ok(expected) => {
                    let rc = rank(&computed);
                    let re = rank(&expected);
                    let both: Vec<Vec<Rat>> = computed.iter().chain(&expected).cloned().collect();
                    (
                        rc == re && rank(&both) == rc,
                        format!(
                            "{} (same solution space as expected)",
                            relations.render().join("; ")
                        ),
                    )
                }
            };
            out.push(check(id("relations"), &fx.anchor, ok, detail));
            let from_relations = points_from_relations(&relations, &bounds);
            let mut searched = solutions.clone();
            searched.sort();
            out.push(check(
                id("solutions"),
                &fx.anchor,
                searched == from_relations,
                format!(
                    "{} integer solutions in the default box, search and relations agree",
                    searched.len()
                ),
            ));
        }
    }
    out
}

fn table1_checks(data: &PaperDataset) -> Vec<Check> {
    let rows = classify_all_in(data, &AxiomPack::full());
    let diff = diff_table1(&rows, &data.table1);
    let mut out = Vec::new();
    for t in &data.table1 {
        let hit = rows
            .iter()
            .find(|r| r.status == RowStatus::Table && r.id == t.id);
        let detail = match hit {
            Some(r) => format!(
                "{} r={} l={} a={:?}",
                r.triple(),
                r.ranks.r,
                r.ranks.l,
                r.profile.a
            ),
            None => "no enumerated row matches".to_string(),
        };
        out.push(check(
            format!("table/{}", t.id),
            &t.anchor,
            hit.is_some(),
            detail,
        ));
    }
    for d in diff {
        let (id, detail) = match d {
            DiffEntry::Missing { .. } => continue,
            DiffEntry::Extra { id, triple, r, l } => {
                (id, format!("extra row {triple} r={r} l={l}"))
            }
            DiffEntry::Ambiguous { id } => (id, "several rows match".to_string()),
        };
        out.push(check(format!("table/{id}"), "enumeration", false, detail));
    }
    out
}

fn lattice_checks(data: &PaperDataset) -> Vec<Check> {
    data.table2
        .iter()
        .map(|tc| {
            let id = format!("lattice/{}", tc.id);
            match check_lattice_row(&tc.id, &tc.lattice, tc.m) {
                Ok(c) => {
                    let inv = &c.invariants;
                    let detail = if c.ok() {
                        format!(
                            "{} rank {} signature {:?} det {} group {:?}",
                            inv.expr,
                            inv.rank,
                            inv.signature,
                            inv.determinant,
                            inv.discriminant_group
                                .iter()
                                .map(|d| d.to_string())
                                .collect::<Vec<_>>()
                        )
                    } else {
                        c.problems.join("; ")
                    };
                    check(id, &tc.anchor, c.ok(), detail)
                }
                Err(e) => check(id, &tc.anchor, false, e.to_string()),
            }
        })
        .collect()
}

fn fibration_checks(fx: &FibrationFixture) -> Vec<Check> {
    let id = |s: &str| format!("fibration/{}/{s}", fx.id);
    let model = parse_poly(&fx.a, "t")
        .and_then(|a| parse_poly(&fx.b, "t").map(|b| (a, b)))
        .map_err(|e| e.to_string())
        .and_then(|(a, b)| WeierstrassModel::new(a, b).map_err(|e| e.to_string()));
    let model = match model {
        Ok(m) => m,
        Err(e) => return vec![check(id("model"), &fx.anchor, false, e)],
    };
    let report = match analyze(&model) {
        Ok(r) => r,
        Err(e) => return vec![check(id("model"), &fx.anchor, false, e.to_string())],
    };
    let census = report.census();
    let mut out = Vec::new();
    out.push(check(
        id("action"),
        &fx.anchor,
        invariant_fibers(&model, fx.base_order).is_ok(),
        format!("model compatible with t -> zeta_{} t", fx.base_order),
    ));
    if let Some(expected) = &fx.fibers {
        out.push(check(
            id("fibers"),
            &fx.anchor,
            &census == expected,
            format!("{census:?}"),
        ));
    }
    let inf = report
        .at_infinity()
        .map_or_else(|| "I0".to_string(), |p| p.kodaira.to_string());
    out.push(check(
        id("infinity"),
        &fx.anchor,
        inf == fx.infinity,
        format!("{inf} at infinity"),
    ));
    out.push(check(
        id("euler"),
        &fx.anchor,
        report.euler_total == fx.euler_total,
        format!("euler number {}", report.euler_total),
    ));
    if let Some(expected) = &fx.bisection {
        let got = bisection_genus(model.b());
        let ok = matches!(
            (&got, expected),
            (Ok(Bisection::Genus(g)), BisectionExpectation::Genus { genus }) if g == genus
        ) || matches!(
            (&got, expected),
            (Ok(Bisection::Splits), BisectionExpectation::Splits(_))
        );
        let detail = match got {
            Ok(Bisection::Genus(g)) => format!("bisection of genus {g}"),
            Ok(Bisection::Splits) => "bisection splits".to_string(),
            Err(e) => e.to_string(),
        };
        out.push(check(id("bisection"), &fx.anchor, ok, detail));
    }
    if let Some(tc) = &fx.text_count {
        let got = census.get(&tc.kodaira).copied().unwrap_or(0);
        out.push(Check {
            id: id("text-count"),
            anchor: fx.anchor.clone(),
            status: if got == tc.count {
                Status::Pass
            } else {
                Status::Note
            },
            detail: format!(
                "computed {got} fibres of type {}, prose states {}",
                tc.kodaira, tc.count
            ),
        });
    }
    out
}

fn monomial_checks(fx: &MonomialFixture) -> Vec<Check> {
    let id = |s: &str| format!("monomials/{}/{s}", fx.id);
    let ms = DiagAction::new(fx.order, &fx.weights, fx.character)
        .and_then(|act| invariant_monomials(&act, fx.degree));
    let ms = match ms {
        Ok(m) => m,
        Err(e) => return vec![check(id("family"), &fx.anchor, false, e.to_string())],
    };
    let mut out = Vec::new();
    if let Some(expected) = &fx.monomials {
        let mut want: Vec<Monomial> = expected.iter().cloned().map(Monomial).collect();
        let mut got = ms.clone();
        want.sort();
        got.sort();
        out.push(check(
            id("family"),
            &fx.anchor,
            want == got,
            format!(
                "{} monomials: {}",
                ms.len(),
                ms.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    match coordinate_point_singularity_screen(&ms, fx.weights.len() - 1) {
        Ok(screen) => {
            let singular: Vec<usize> = screen
                .iter()
                .filter(|p| p.verdict == Screen::NecessarilySingular)
                .map(|p| p.point)
                .collect();
            out.push(check(
                id("screen"),
                &fx.anchor,
                singular == fx.screen_singular,
                format!("singular at coordinate points {singular:?}"),
            ));
        }
        Err(e) => out.push(check(id("screen"), &fx.anchor, false, e.to_string())),
    }
    out
}

/// Runs every check against `data`.
pub fn verify_paper(data: &PaperDataset) -> VerifyReport {
    let mut checks = Vec::new();
    for fx in &data.lefschetz {
        checks.extend(lefschetz_checks(fx));
    }
    checks.extend(table1_checks(data));
    checks.extend(lattice_checks(data));
    for fx in &data.fibrations {
        checks.extend(fibration_checks(fx));
    }
    for fx in &data.monomials {
        checks.extend(monomial_checks(fx));
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    VerifyReport {
        data: data.digests.clone(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        notes: count(Status::Note),
        checks,
    }
}
