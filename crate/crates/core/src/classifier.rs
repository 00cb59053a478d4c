//! Enumeration of the fixed loci of an order-9 non-symplectic automorphism σ
//! that are compatible with a given fixed locus of τ = σ³.
//!
//! Every τ-fixed curve is either fixed by σ, invariant with `f` isolated
//! σ-fixed points on it, or one of three curves permuted cyclically. Each
//! assignment of fates is combined with the integer solutions of the
//! holomorphic Lefschetz system and filtered by constraints C1 to C7.
//! Geometric input enters only through the axioms of an [`AxiomPack`].

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{bundled, PaperDataset, Table1Row};
use crate::lattices::LatticeExpr;
use crate::lefschetz::{
    admissible_types, build_holo_system, eigen_ranks_from_counts, solve_nonneg_integer, EigenRanks,
    FixProfile, HoloSystem, Unknown,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("unknown row `{0}`")]
    UnknownRow(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
}

/// Fixed locus of τ = σ³.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCase {
    pub id: String,
    /// Isolated fixed points.
    pub n: u32,
    /// Genera of the fixed curves, descending.
    pub curves: Vec<u32>,
    pub m: u32,
    pub lattice: LatticeExpr,
    /// The curve of genus at least 2, if any, is hyperelliptic.
    pub hyperelliptic: bool,
    pub anchor: String,
}

impl TauCase {
    /// `(n, k, g)`: isolated points, number of curves, largest genus.
    pub fn invariants(&self) -> (u32, u32, u32) {
        (
            self.n,
            self.curves.len() as u32,
            self.curves.iter().copied().max().unwrap_or(0),
        )
    }

    pub fn validate(&self) -> Result<(), String> {
        if !matches!(self.m, 3 | 6 | 9) {
            return Err(format!("case {}: m = {} not in {{3,6,9}}", self.id, self.m));
        }
        if self.n + self.m != 10 {
            return Err(format!(
                "case {}: n + m = {} != 10",
                self.id,
                self.n + self.m
            ));
        }
        if self.curves.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("case {}: curve genera not descending", self.id));
        }
        let chi: i64 = i64::from(self.n)
            + self
                .curves
                .iter()
                .map(|&g| 2 - 2 * i64::from(g))
                .sum::<i64>();
        if chi != 24 - 3 * i64::from(self.m) {
            return Err(format!(
                "case {}: Euler characteristic {chi} != 24 - 3m",
                self.id
            ));
        }
        Ok(())
    }
}

/// What σ does with one τ-fixed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFate {
    Fixed,
    Invariant { fixed_points: u32 },
    Cycle,
}

impl fmt::Display for CurveFate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveFate::Fixed => write!(f, "fixed"),
            CurveFate::Invariant { fixed_points } => write!(f, "inv({fixed_points})"),
            CurveFate::Cycle => write!(f, "cycle"),
        }
    }
}

fn inv(f: u32) -> CurveFate {
    CurveFate::Invariant { fixed_points: f }
}

pub fn render_fates(curves: &[u32], fates: &[CurveFate]) -> String {
    curves
        .iter()
        .zip(fates)
        .map(|(g, f)| format!("g{g}:{f}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Genus,
    FRational,
    DConfig,
    HConfig,
    Hyper,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Genus,
        Axiom::FRational,
        Axiom::DConfig,
        Axiom::HConfig,
        Axiom::Hyper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Genus => "AX-GENUS",
            Axiom::FRational => "AX-F-RATIONAL",
            Axiom::DConfig => "AX-D-CONFIG",
            Axiom::HConfig => "AX-H-CONFIG",
            Axiom::Hyper => "AX-HYPER",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            Axiom::Genus => "proposition on fixed curves: a curve fixed by σ has genus 0 or 1",
            Axiom::FRational => {
                "proposition on fixed curves: for τ-invariants (4,4,3) the fixed locus of σ contains a rational curve"
            }
            Axiom::DConfig => {
                "proposition on invariant elliptic fibrations, I0* branch: only the four configurations D1-D4"
            }
            Axiom::HConfig => {
                "proposition on invariant elliptic fibrations, I9* branch: two rational curves fixed, 3 points on the elliptic curve"
            }
            Axiom::Hyper => {
                "lemma on hyperelliptic curves: an order-3 automorphism of a hyperelliptic curve of genus >= 2 has 2, 3 or 4 fixed points"
            }
        }
    }

    pub fn parse(name: &str) -> Result<Axiom, ClassifyError> {
        let key = name.trim().to_ascii_uppercase();
        let key = key.strip_prefix("AX-").unwrap_or(&key);
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().strip_prefix("AX-") == Some(key))
            .ok_or_else(|| ClassifyError::UnknownAxiom(name.to_string()))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of enabled axioms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomPack(BTreeSet<Axiom>);

impl AxiomPack {
    pub fn full() -> Self {
        AxiomPack(Axiom::ALL.into_iter().collect())
    }

    /// No geometric input at all.
    pub fn combinatorial() -> Self {
        AxiomPack(BTreeSet::new())
    }

    /// `full`, `combinatorial`, or a comma separated list of axiom names.
    pub fn parse(spec: &str) -> Result<Self, ClassifyError> {
        match spec.trim() {
            "full" => Ok(AxiomPack::full()),
            "combinatorial" | "none" | "" => Ok(AxiomPack::combinatorial()),
            list => list
                .split(',')
                .map(Axiom::parse)
                .collect::<Result<BTreeSet<_>, _>>()
                .map(AxiomPack),
        }
    }

    pub fn with(mut self, a: Axiom) -> Self {
        self.0.insert(a);
        self
    }

    pub fn without(mut self, a: Axiom) -> Self {
        self.0.remove(&a);
        self
    }

    pub fn contains(&self, a: Axiom) -> bool {
        self.0.contains(&a)
    }

    pub fn is_subset(&self, other: &AxiomPack) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn axioms(&self) -> impl Iterator<Item = Axiom> + '_ {
        self.0.iter().copied()
    }

    pub fn names(&self) -> Vec<String> {
        self.axioms().map(|a| a.name().to_string()).collect()
    }
}

/// Possible numbers of fixed points of an order-3 automorphism of a curve of
/// genus `g`: `g + 2 - 3g'` for quotient genus `g'`. For a hyperelliptic
/// curve of genus at least 2 only 2, 3 and 4 remain.
pub fn rh_options(g: u32, hyperelliptic: bool) -> Vec<u32> {
    let mut out: Vec<u32> = (0..=g.div_ceil(3)).map(|q| g + 2 - 3 * q).collect();
    if hyperelliptic && g >= 2 {
        out.retain(|f| (2..=4).contains(f));
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Constraint {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl Constraint {
    pub fn description(self) -> &'static str {
        match self {
            Constraint::C1 => "fixed curves have admissible genus",
            Constraint::C2 => "curve fates are well formed",
            Constraint::C3 => "holomorphic Lefschetz system has a solution",
            Constraint::C4 => "a28 + a55 <= n and a28 + a55 = n mod 3",
            Constraint::C5 => "a37 + a46 equals the fixed points on invariant curves",
            Constraint::C6 => "case-specific axioms",
            Constraint::C7 => "eigenvalue ranks are integral and nonnegative",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Whether a row appears in the expected table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Table,
    /// Several enumerated rows share the profile of one expected row.
    TableAmbiguous,
    #[serde(rename = "not excluded combinatorially")]
    NotExcluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaRow {
    pub id: String,
    pub case: String,
    pub status: RowStatus,
    pub fates: Vec<CurveFate>,
    pub profile: FixProfile,
    pub ranks: EigenRanks,
}

impl SigmaRow {
    pub fn matches(&self, t: &Table1Row) -> bool {
        self.case == t.case
            && self.profile.n_sigma == t.n_sigma
            && self.profile.k_sigma == t.k_sigma
            && self.profile.g_sigma == t.g_sigma
            && self.ranks.r == t.r
            && self.ranks.l == t.l
            && t.a.is_none_or(|a| a == self.profile.a)
    }

    /// `(n_σ, k_σ, g_σ)` with `-` for no curve.
    pub fn triple(&self) -> String {
        let g = self
            .profile
            .g_sigma
            .map_or_else(|| "-".to_string(), |g| g.to_string());
        format!("({},{},{g})", self.profile.n_sigma, self.profile.k_sigma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected {
        constraint: Constraint,
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        citation: Option<&'static str>,
    },
}

/// One candidate (fates together with a solution of the system, if any) and
/// what happened to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub fates: Vec<CurveFate>,
    pub alpha: i64,
    pub a: Option<[u32; 4]>,
    pub verdict: Verdict,
}

fn reject(constraint: Constraint, reason: String) -> Verdict {
    Verdict::Rejected {
        constraint,
        reason,
        citation: None,
    }
}

fn reject_axiom(axiom: Axiom, reason: String) -> Verdict {
    let constraint = if axiom == Axiom::Genus {
        Constraint::C1
    } else {
        Constraint::C6
    };
    Verdict::Rejected {
        constraint,
        reason: format!("{axiom}: {reason}"),
        citation: Some(axiom.citation()),
    }
}

fn order9_system() -> &'static HoloSystem {
    static SYSTEM: OnceLock<HoloSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let types = admissible_types(9, 1, true, false).expect("valid character");
        build_holo_system(9, 1, &types, true).expect("valid system")
    })
}

/// Nonnegative solutions `(a28, a37, a46, a55)` of the order-9 system for a
/// fixed α, each count at most 24.
pub fn star_solutions(alpha: i64) -> Vec<[u32; 4]> {
    let system = order9_system();
    let bounds: Vec<(i64, i64)> = system
        .unknowns
        .iter()
        .map(|u| match u {
            Unknown::Points(_) => (0, 24),
            Unknown::Alpha => (alpha, alpha),
        })
        .collect();
    let names = system.unknown_names();
    let order: Vec<usize> = ["a_{2,8}", "a_{3,7}", "a_{4,6}", "a_{5,5}"]
        .iter()
        .map(|n| names.iter().position(|x| x == n).expect("order-9 unknown"))
        .collect();
    solve_nonneg_integer(system, &bounds)
        .expect("bounds match")
        .into_iter()
        .map(|v| [0, 1, 2, 3].map(|i| v[order[i]] as u32))
        .collect()
}

/// Sorted `(genus, fate)` pairs; the canonical form of an assignment.
fn signature(tc: &TauCase, fates: &[CurveFate]) -> Vec<(u32, CurveFate)> {
    let mut s: Vec<_> = tc
        .curves
        .iter()
        .copied()
        .zip(fates.iter().copied())
        .collect();
    s.sort_unstable();
    s
}

/// Checks the cyclic-orbit rule and the Riemann-Hurwitz range.
pub fn check_fates(tc: &TauCase, fates: &[CurveFate]) -> Result<(), String> {
    if fates.len() != tc.curves.len() {
        return Err(format!(
            "{} fates for {} curves",
            fates.len(),
            tc.curves.len()
        ));
    }
    let mut cycles: BTreeMap<u32, usize> = BTreeMap::new();
    for (&g, fate) in tc.curves.iter().zip(fates) {
        match fate {
            CurveFate::Cycle => *cycles.entry(g).or_default() += 1,
            CurveFate::Invariant { fixed_points }
                if !rh_options(g, false).contains(fixed_points) =>
            {
                return Err(format!(
                    "{fixed_points} fixed points impossible on a genus {g} curve"
                ));
            }
            _ => {}
        }
    }
    for (g, c) in cycles {
        if c % 3 != 0 {
            return Err(format!("{c} genus {g} curves in 3-cycles"));
        }
    }
    Ok(())
}

fn multisets<T: Copy>(options: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &o) in options.iter().enumerate() {
        for mut rest in multisets(&options[i..], size - 1) {
            rest.insert(0, o);
            out.push(rest);
        }
    }
    out
}

/// All well-formed fate assignments up to permuting curves of equal genus.
pub fn fate_assignments(tc: &TauCase) -> Vec<Vec<CurveFate>> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &g in &tc.curves {
        match groups.last_mut() {
            Some((h, s)) if *h == g => *s += 1,
            _ => groups.push((g, 1)),
        }
    }
    let mut out: Vec<Vec<CurveFate>> = vec![Vec::new()];
    for (g, size) in groups {
        let mut options = vec![CurveFate::Fixed];
        options.extend(rh_options(g, false).into_iter().map(inv));
        let mut choices = Vec::new();
        for cycles in 0..=size / 3 {
            for mut rest in multisets(&options, size - 3 * cycles) {
                rest.extend(std::iter::repeat_n(CurveFate::Cycle, 3 * cycles));
                choices.push(rest);
            }
        }
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.extend(c);
                    v
                })
            })
            .collect();
    }
    out
}

fn axiom_check(tc: &TauCase, fates: &[CurveFate], pack: &AxiomPack) -> Option<Verdict> {
    let inv_tuple = tc.invariants();
    let sig = signature(tc, fates);
    if pack.contains(Axiom::Hyper) && tc.hyperelliptic {
        for (&g, fate) in tc.curves.iter().zip(fates) {
            if let CurveFate::Invariant { fixed_points } = fate {
                if !rh_options(g, true).contains(fixed_points) {
                    return Some(reject_axiom(
                        Axiom::Hyper,
                        format!("{fixed_points} fixed points on the hyperelliptic genus {g} curve"),
                    ));
                }
            }
        }
    }
    if pack.contains(Axiom::FRational)
        && inv_tuple == (4, 4, 3)
        && !sig.contains(&(0, CurveFate::Fixed))
    {
        return Some(reject_axiom(
            Axiom::FRational,
            "no rational curve is fixed".into(),
        ));
    }
    if pack.contains(Axiom::DConfig) && inv_tuple == (4, 2, 1) {
        let allowed = [
            [(0, CurveFate::Fixed), (1, inv(3))],
            [(0, inv(2)), (1, CurveFate::Fixed)],
            [(0, inv(2)), (1, inv(3))],
            [(0, inv(2)), (1, inv(0))],
        ];
        if !allowed.iter().any(|a| a[..] == sig[..]) {
            return Some(reject_axiom(
                Axiom::DConfig,
                "not one of the four I0* configurations".into(),
            ));
        }
    }
    if pack.contains(Axiom::HConfig) && inv_tuple == (7, 5, 1) {
        let allowed = [
            (0, CurveFate::Fixed),
            (0, CurveFate::Fixed),
            (0, inv(2)),
            (0, inv(2)),
            (1, inv(3)),
        ];
        if sig[..] != allowed[..] {
            return Some(reject_axiom(
                Axiom::HConfig,
                "not the I9* configuration".into(),
            ));
        }
    }
    None
}

/// Every candidate of one case with its verdict, in enumeration order.
pub fn trace_case(tc: &TauCase, pack: &AxiomPack) -> Vec<TraceEntry> {
    let mut solutions: HashMap<i64, Vec<[u32; 4]>> = HashMap::new();
    let mut out = Vec::new();
    for fates in fate_assignments(tc) {
        let fixed_genera: Vec<u32> = tc
            .curves
            .iter()
            .zip(&fates)
            .filter(|(_, f)| **f == CurveFate::Fixed)
            .map(|(&g, _)| g)
            .collect();
        let alpha: i64 = fixed_genera.iter().map(|&g| 1 - i64::from(g)).sum();
        let entry = |a: Option<[u32; 4]>, verdict: Verdict| TraceEntry {
            fates: fates.clone(),
            alpha,
            a,
            verdict,
        };
        if pack.contains(Axiom::Genus) {
            if let Some(g) = fixed_genera.iter().find(|&&g| g > 1) {
                out.push(entry(
                    None,
                    reject_axiom(Axiom::Genus, format!("fixed curve of genus {g}")),
                ));
                continue;
            }
        }
        if let Err(e) = check_fates(tc, &fates) {
            out.push(entry(None, reject(Constraint::C2, e)));
            continue;
        }
        let sols = solutions
            .entry(alpha)
            .or_insert_with(|| star_solutions(alpha));
        if sols.is_empty() {
            out.push(entry(
                None,
                reject(
                    Constraint::C3,
                    format!("no nonnegative solution with alpha = {alpha}"),
                ),
            ));
            continue;
        }
        let f_total: u32 = fates
            .iter()
            .map(|f| match f {
                CurveFate::Invariant { fixed_points } => *fixed_points,
                _ => 0,
            })
            .sum();
        for &a in sols.iter() {
            let [a28, a37, a46, a55] = a;
            let verdict = if a28 + a55 > tc.n || (a28 + a55) % 3 != tc.n % 3 {
                reject(
                    Constraint::C4,
                    format!("a28 + a55 = {} against n = {}", a28 + a55, tc.n),
                )
            } else if a37 + a46 != f_total {
                reject(
                    Constraint::C5,
                    format!(
                        "a37 + a46 = {} but invariant curves carry {f_total} points",
                        a37 + a46
                    ),
                )
            } else if let Some(v) = axiom_check(tc, &fates, pack) {
                v
            } else {
                let profile = FixProfile::new(a, &fixed_genera);
                match eigen_ranks_from_counts(profile.n_sigma, alpha, tc.m) {
                    Ok(_) => Verdict::Accepted,
                    Err(e) => reject(Constraint::C7, e.to_string()),
                }
            };
            out.push(entry(Some(a), verdict));
        }
    }
    out
}

fn unlabelled_rows(tc: &TauCase, pack: &AxiomPack) -> Vec<SigmaRow> {
    let mut rows: Vec<SigmaRow> = trace_case(tc, pack)
        .into_iter()
        .filter(|e| e.verdict == Verdict::Accepted)
        .map(|e| {
            let fixed: Vec<u32> = tc
                .curves
                .iter()
                .zip(&e.fates)
                .filter(|(_, f)| **f == CurveFate::Fixed)
                .map(|(&g, _)| g)
                .collect();
            let profile =
                FixProfile::new(e.a.expect("accepted candidates have a solution"), &fixed);
            let ranks = eigen_ranks_from_counts(profile.n_sigma, profile.alpha, tc.m)
                .expect("accepted candidates pass C7");
            SigmaRow {
                id: String::new(),
                case: tc.id.clone(),
                status: RowStatus::NotExcluded,
                fates: e.fates,
                profile,
                ranks,
            }
        })
        .collect();
    rows.sort_by(|x, y| {
        (
            Reverse(x.profile.n_sigma),
            Reverse(x.profile.k_sigma),
            x.profile.a,
            &x.fates,
        )
            .cmp(&(
                Reverse(y.profile.n_sigma),
                Reverse(y.profile.k_sigma),
                y.profile.a,
                &y.fates,
            ))
    });
    rows
}

fn label(rows: &mut [SigmaRow], case: &str, table1: &[Table1Row]) {
    let expected: Vec<&Table1Row> = table1.iter().filter(|t| t.case == case).collect();
    let mut unmatched = 0;
    let matches: Vec<Option<usize>> = rows
        .iter()
        .map(|r| expected.iter().position(|t| r.matches(t)))
        .collect();
    for (i, row) in rows.iter_mut().enumerate() {
        match matches[i] {
            Some(t) => {
                let same: Vec<usize> = (0..matches.len())
                    .filter(|&j| matches[j] == Some(t))
                    .collect();
                if same.len() == 1 {
                    row.id = expected[t].id.clone();
                    row.status = RowStatus::Table;
                } else {
                    let k = same.iter().position(|&j| j == i).expect("present") + 1;
                    row.id = format!("{}/{k}", expected[t].id);
                    row.status = RowStatus::TableAmbiguous;
                }
            }
            None => {
                unmatched += 1;
                row.id = format!("{case}?{unmatched}");
                row.status = RowStatus::NotExcluded;
            }
        }
    }
}

/// Rows of one case, labelled against the expected table of `data`.
pub fn enumerate_case_in(
    data: &PaperDataset,
    case_id: &str,
    pack: &AxiomPack,
) -> Result<Vec<SigmaRow>, ClassifyError> {
    let tc = data
        .case(case_id)
        .ok_or_else(|| ClassifyError::UnknownCase(case_id.to_string()))?;
    let mut rows = unlabelled_rows(tc, pack);
    label(&mut rows, &tc.id, &data.table1);
    Ok(rows)
}

pub fn enumerate_case(case_id: &str, pack: &AxiomPack) -> Result<Vec<SigmaRow>, ClassifyError> {
    enumerate_case_in(bundled(), case_id, pack)
}

pub fn classify_all_in(data: &PaperDataset, pack: &AxiomPack) -> Vec<SigmaRow> {
    let mut ids: Vec<&str> = data.table2.iter().map(|tc| tc.id.as_str()).collect();
    ids.sort_unstable();
    ids.into_iter()
        .flat_map(|id| enumerate_case_in(data, id, pack).expect("case from the table"))
        .collect()
}

pub fn classify_all(pack: &AxiomPack) -> Vec<SigmaRow> {
    classify_all_in(bundled(), pack)
}

/// Differences between an enumeration and the expected table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiffEntry {
    Missing {
        id: String,
    },
    Extra {
        id: String,
        triple: String,
        r: u32,
        l: u32,
    },
    Ambiguous {
        id: String,
    },
}

pub fn diff_table1(rows: &[SigmaRow], table1: &[Table1Row]) -> Vec<DiffEntry> {
    let mut out = Vec::new();
    for t in table1 {
        if !rows
            .iter()
            .any(|r| r.status == RowStatus::Table && r.id == t.id)
        {
            out.push(DiffEntry::Missing { id: t.id.clone() });
        }
    }
    for r in rows {
        match r.status {
            RowStatus::Table => {}
            RowStatus::TableAmbiguous => out.push(DiffEntry::Ambiguous { id: r.id.clone() }),
            RowStatus::NotExcluded => out.push(DiffEntry::Extra {
                id: r.id.clone(),
                triple: r.triple(),
                r: r.ranks.r,
                l: r.ranks.l,
            }),
        }
    }
    out
}

/// Derivation trace for one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub row: SigmaRow,
    pub curves: Vec<u32>,
    pub axioms: Vec<String>,
    pub candidates: Vec<TraceEntry>,
}

impl Explanation {
    pub fn render(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "row {} (case {}): {} (r,l)=({},{}) a={:?} alpha={}",
            self.row.id,
            self.row.case,
            self.row.triple(),
            self.row.ranks.r,
            self.row.ranks.l,
            self.row.profile.a,
            self.row.profile.alpha
        )];
        for c in &self.candidates {
            let a = c.a.map_or_else(|| "-".to_string(), |a| format!("{a:?}"));
            let head = format!(
                "  [{}] alpha={} a={a}",
                render_fates(&self.curves, &c.fates),
                c.alpha
            );
            match &c.verdict {
                Verdict::Accepted => {
                    let tag = if c.fates == self.row.fates && c.a == Some(self.row.profile.a) {
                        format!("accepted as {}", self.row.id)
                    } else {
                        "accepted".to_string()
                    };
                    lines.push(format!("{head}: {tag}"));
                }
                Verdict::Rejected {
                    constraint,
                    reason,
                    citation,
                } => {
                    let mut l = format!("{head}: rejected by {constraint} ({reason})");
                    if let Some(c) = citation {
                        l.push_str(&format!(" [{c}]"));
                    }
                    lines.push(l);
                }
            }
        }
        lines
    }
}

pub fn explain_row_in(
    data: &PaperDataset,
    row_id: &str,
    pack: &AxiomPack,
) -> Result<Explanation, ClassifyError> {
    let row = classify_all_in(data, pack)
        .into_iter()
        .find(|r| r.id == row_id)
        .ok_or_else(|| ClassifyError::UnknownRow(row_id.to_string()))?;
    let tc = data.case(&row.case).expect("row from a known case");
    Ok(Explanation {
        curves: tc.curves.clone(),
        axioms: pack.names(),
        candidates: trace_case(tc, pack),
        row,
    })
}

pub fn explain_row(row_id: &str, pack: &AxiomPack) -> Result<Explanation, ClassifyError> {
    explain_row_in(bundled(), row_id, pack)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(rows: &[SigmaRow]) -> Vec<&str> {
        rows.iter().map(|r| r.id.as_str()).collect()
    }

    #[test]
    fn riemann_hurwitz_options() {
        assert_eq!(rh_options(0, false), vec![2]);
        assert_eq!(rh_options(1, false), vec![0, 3]);
        assert_eq!(rh_options(4, false), vec![0, 3, 6]);
        assert_eq!(rh_options(4, true), vec![3]);
        assert_eq!(rh_options(2, true), vec![4]);
        assert_eq!(rh_options(3, true), vec![2]);
        assert_eq!(rh_options(1, true), vec![0, 3]);
    }

    #[test]
    fn star_solutions_alpha_zero() {
        assert_eq!(star_solutions(0), vec![[0, 1, 4, 1], [1, 1, 1, 0]]);
        assert!(star_solutions(-1).is_empty());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(Axiom::parse(a.name()).unwrap(), a);
        }
        assert_eq!(Axiom::parse("hyper").unwrap(), Axiom::Hyper);
        assert!(Axiom::parse("AX-NOPE").is_err());
        assert_eq!(AxiomPack::parse("full").unwrap(), AxiomPack::full());
        assert_eq!(
            AxiomPack::parse("AX-GENUS,AX-HYPER").unwrap(),
            AxiomPack::combinatorial()
                .with(Axiom::Genus)
                .with(Axiom::Hyper)
        );
    }

    #[test]
    fn fate_enumeration_is_canonical() {
        let g = bundled().case("G").unwrap();
        let fates = fate_assignments(g);
        // fixed or inv(2) for each of 4 curves: 5 multisets, plus 2 with a 3-cycle.
        assert_eq!(fates.len(), 7);
        assert!(fates.iter().all(|f| check_fates(g, f).is_ok()));
    }

    #[test]
    fn check_fates_rejects_bad_cycles() {
        let g = bundled().case("G").unwrap();
        let bad = vec![CurveFate::Cycle, CurveFate::Cycle, inv(2), inv(2)];
        assert!(check_fates(g, &bad).is_err());
        let d = bundled().case("D").unwrap();
        assert!(check_fates(d, &[inv(1), inv(2)]).is_err());
    }

    #[test]
    fn case_a_full() {
        let rows = enumerate_case("A", &AxiomPack::full()).unwrap();
        assert_eq!(ids(&rows), ["A1", "A2"]);
        assert_eq!(rows[0].profile.a, [0, 1, 4, 1]);
        assert_eq!(rows[1].profile.a, [1, 1, 1, 0]);
    }

    #[test]
    fn case_d_full() {
        let rows = enumerate_case("D", &AxiomPack::full()).unwrap();
        assert_eq!(ids(&rows), ["D1", "D3", "D2", "D4"]);
        assert!(rows.iter().all(|r| r.status == RowStatus::Table));
    }

    #[test]
    fn case_h_full_and_relaxed() {
        let rows = enumerate_case("H", &AxiomPack::full()).unwrap();
        assert_eq!(ids(&rows), ["H"]);
        assert_eq!(rows[0].profile.a, [6, 5, 2, 1]);
        let relaxed = enumerate_case("H", &AxiomPack::full().without(Axiom::HConfig)).unwrap();
        assert!(relaxed.len() > 1);
        assert!(relaxed
            .iter()
            .any(|r| r.status == RowStatus::Table && r.id == "H"));
        assert!(relaxed
            .iter()
            .any(|r| r.profile.alpha == 1 && r.profile.n_sigma == 10));
    }

    #[test]
    fn f_without_rational_axiom() {
        let rows = enumerate_case("F", &AxiomPack::full().without(Axiom::FRational)).unwrap();
        let extra: Vec<_> = rows
            .iter()
            .filter(|r| r.status == RowStatus::NotExcluded)
            .collect();
        assert_eq!(extra.len(), 1);
        assert_eq!(extra[0].profile.n_sigma, 3);
        assert_eq!(extra[0].profile.alpha, 0);
        assert_eq!((extra[0].ranks.r, extra[0].ranks.l), (4, 3));
        assert_eq!(
            extra[0]
                .fates
                .iter()
                .filter(|f| **f == CurveFate::Cycle)
                .count(),
            3
        );
    }

    #[test]
    fn b_without_hyper_axiom() {
        let rows = enumerate_case("B", &AxiomPack::full().without(Axiom::Hyper)).unwrap();
        assert_eq!(rows.len(), 2);
        let extra = rows
            .iter()
            .find(|r| r.status == RowStatus::NotExcluded)
            .unwrap();
        assert_eq!(extra.fates[0], inv(0));
        assert_eq!(extra.profile.a, [1, 1, 1, 0]);
    }

    #[test]
    fn full_pack_matches_table() {
        let rows = classify_all(&AxiomPack::full());
        assert_eq!(rows.len(), 13);
        assert!(diff_table1(&rows, &bundled().table1).is_empty());
        assert!(rows.iter().all(|r| r.profile.satisfies_identity()));
    }

    #[test]
    fn explain_traces() {
        let e = explain_row("D1", &AxiomPack::full()).unwrap();
        let both_fixed = e
            .candidates
            .iter()
            .find(|c| c.fates == [CurveFate::Fixed, CurveFate::Fixed] && c.a.is_some())
            .unwrap();
        match &both_fixed.verdict {
            Verdict::Rejected { constraint, .. } => assert_eq!(*constraint, Constraint::C5),
            v => panic!("{v:?}"),
        }
        let e = explain_row("E", &AxiomPack::full()).unwrap();
        assert!(e
            .candidates
            .iter()
            .filter(|c| c.alpha == 0 && c.a.is_some() && c.fates[0] == inv(4))
            .all(|c| matches!(
                c.verdict,
                Verdict::Rejected {
                    constraint: Constraint::C5,
                    ..
                }
            )));
        let lines = explain_row("A1", &AxiomPack::full()).unwrap().render();
        assert!(lines
            .iter()
            .any(|l| l.contains("g3:inv(5)") && l.contains("accepted as A1")));
        assert_eq!(
            explain_row("Z9", &AxiomPack::full()),
            Err(ClassifyError::UnknownRow("Z9".into()))
        );
    }
}
