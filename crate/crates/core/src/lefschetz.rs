//! Holomorphic and topological Lefschetz constraints for a non-symplectic
//! automorphism of order n acting on the 2-form by ζ^k.
//!
//! The holomorphic fixed-point identity
//!
//! ```text
//! 1 + ζ^(-k) = Σ a_{i,j} / ((1 - ζ^i)(1 - ζ^j)) + α (1 + ζ) / (1 - ζ)^2
//! ```
//!
//! lives in Q(ζ_n). Expanding both sides in the power basis turns it into
//! φ(n) rational linear equations in the integer unknowns `a_{i,j}` and `α`.
//! The sum runs over isolated local types only; points on a fixed curve are
//! accounted for by the curve term.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{rational_coordinates, zeta_pow, CycNum};
use crate::exact::{rat, rat_to_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("character k={k} out of range 1..={n}")]
    BadCharacter { n: u32, k: u32 },
    #[error("local type ({i},{j}) has an eigenvalue 1 for order {n}")]
    TrivialEigenvalue { n: u32, i: u32, j: u32 },
    #[error("curve term needs order at least 2")]
    OrderTooSmall,
    #[error("the fixed-curve term is only defined for character k = 1 (got k = {0})")]
    CurveTermNeedsCharacterOne(u32),
    #[error("no local types given")]
    NoTypes,
    #[error("bounds: {0}")]
    BadBounds(String),
    #[error("coefficients too large for the integer search")]
    Overflow,
    #[error("m must be 3, 6 or 9 (got {0})")]
    BadM(u32),
    #[error("geometrically impossible: {0}")]
    GeometricallyImpossible(String),
}

/// Local linearization `diag(ζ^i, ζ^j)` at a fixed point, `1 ≤ i ≤ j ≤ n`.
/// `j ≡ 0 (mod n)` means the point lies on a pointwise fixed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalType {
    pub order: u32,
    pub i: u32,
    pub j: u32,
}

impl LocalType {
    pub fn new(order: u32, i: u32, j: u32) -> Self {
        LocalType { order, i, j }
    }

    pub fn on_curve(&self) -> bool {
        self.j.is_multiple_of(self.order) || self.i.is_multiple_of(self.order)
    }

    /// `a_{i,j}` with the on-curve type written as `a_{1,0}`.
    pub fn unknown_name(&self) -> String {
        format!("a_{{{},{}}}", self.i % self.order, self.j % self.order)
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{{{},{}}}", self.i % self.order, self.j % self.order)
    }
}

/// All `(i, j)` with `1 ≤ i ≤ j ≤ n` and `i + j ≡ k (mod n)`.
///
/// Without `curve_points_allowed` the on-curve types are dropped. With
/// `cube_isolated_only`, types where the cube of the action has an eigenvalue
/// 1 (`3i ≡ 0` or `3j ≡ 0`) are dropped, i.e. the point must also be isolated
/// for the third power.
pub fn admissible_types(
    n: u32,
    k: u32,
    curve_points_allowed: bool,
    cube_isolated_only: bool,
) -> Result<Vec<LocalType>, LefschetzError> {
    if k == 0 || k > n {
        return Err(LefschetzError::BadCharacter { n, k });
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if (i + j) % n != k % n {
                continue;
            }
            let t = LocalType::new(n, i, j);
            if !curve_points_allowed && t.on_curve() {
                continue;
            }
            if cube_isolated_only && ((3 * i) % n == 0 || (3 * j) % n == 0) {
                continue;
            }
            out.push(t);
        }
    }
    Ok(out)
}

fn one_minus_zeta(n: u32, e: i64) -> CycNum {
    &CycNum::one(n) - &zeta_pow(n, e)
}

/// `1 / ((1 - ζ^i)(1 - ζ^j))`
pub fn holo_term_point(n: u32, i: u32, j: u32) -> Result<CycNum, LefschetzError> {
    if i.is_multiple_of(n) || j.is_multiple_of(n) {
        return Err(LefschetzError::TrivialEigenvalue { n, i, j });
    }
    let den = &one_minus_zeta(n, i.into()) * &one_minus_zeta(n, j.into());
    Ok(den.inverse().expect("1 - ζ^i is a unit times a prime"))
}

/// `(1 + ζ) / (1 - ζ)^2`
pub fn holo_term_curve(n: u32) -> Result<CycNum, LefschetzError> {
    if n < 2 {
        return Err(LefschetzError::OrderTooSmall);
    }
    let num = &CycNum::one(n) + &zeta_pow(n, 1);
    let den = one_minus_zeta(n, 1).pow(2);
    Ok(num.checked_div(&den).expect("nonzero"))
}

/// Left hand side `1 + ζ^(-k)`.
pub fn holo_lhs(n: u32, k: u32) -> CycNum {
    &CycNum::one(n) + &zeta_pow(n, -i64::from(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unknown {
    /// Number of isolated fixed points of the given type.
    Points(LocalType),
    /// α = Σ (1 - g(C)) over pointwise fixed curves.
    Alpha,
}

impl Unknown {
    pub fn name(&self) -> String {
        match self {
            Unknown::Points(t) => t.unknown_name(),
            Unknown::Alpha => "alpha".to_string(),
        }
    }
}

/// `Σ coeffs[u] x_u = rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEquation {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl LinearEquation {
    pub fn holds(&self, values: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(values).map(|(c, v)| c * v).sum();
        lhs == self.rhs
    }
}

/// The coordinate expansion of one holomorphic Lefschetz identity.
#[derive(Debug, Clone)]
pub struct HoloSystem {
    pub order: u32,
    pub k: u32,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<LinearEquation>,
}

impl HoloSystem {
    pub fn unknown_names(&self) -> Vec<String> {
        self.unknowns.iter().map(Unknown::name).collect()
    }

    pub fn index_of(&self, u: Unknown) -> Option<usize> {
        self.unknowns.iter().position(|&x| x == u)
    }

    /// Point counts in `0..=24` and α in `0..=4`.
    pub fn default_bounds(&self) -> Vec<(i64, i64)> {
        self.unknowns
            .iter()
            .map(|u| match u {
                Unknown::Points(_) => (0, 24),
                Unknown::Alpha => (0, 4),
            })
            .collect()
    }
}

/// Builds the linear system from the identity over Q(ζ_n). On-curve types
/// carry no unknown. The curve term is only available for `k = 1`.
pub fn build_holo_system(
    n: u32,
    k: u32,
    types: &[LocalType],
    with_curve_term: bool,
) -> Result<HoloSystem, LefschetzError> {
    if types.is_empty() {
        return Err(LefschetzError::NoTypes);
    }
    if k == 0 || k > n {
        return Err(LefschetzError::BadCharacter { n, k });
    }
    if with_curve_term && k != 1 {
        return Err(LefschetzError::CurveTermNeedsCharacterOne(k));
    }
    let mut unknowns = Vec::new();
    let mut terms = Vec::new();
    for t in types.iter().filter(|t| !t.on_curve()) {
        unknowns.push(Unknown::Points(*t));
        terms.push(holo_term_point(n, t.i, t.j)?);
    }
    if with_curve_term {
        unknowns.push(Unknown::Alpha);
        terms.push(holo_term_curve(n)?);
    }
    let lhs = rational_coordinates(&holo_lhs(n, k));
    let term_coords: Vec<Vec<Rat>> = terms.iter().map(rational_coordinates).collect();
    let equations = lhs
        .into_iter()
        .enumerate()
        .map(|(row, rhs)| LinearEquation {
            coeffs: term_coords.iter().map(|c| c[row].clone()).collect(),
            rhs,
        })
        .collect();
    Ok(HoloSystem {
        order: n,
        k,
        unknowns,
        equations,
    })
}

/// Re-evaluates the identity directly in Q(ζ_n) for an integer assignment,
/// without going through the coordinate equations.
pub fn identity_holds(
    n: u32,
    k: u32,
    assignment: &[(Unknown, i64)],
) -> Result<bool, LefschetzError> {
    let mut rhs = CycNum::zero(n);
    for (u, v) in assignment {
        let term = match u {
            Unknown::Points(t) => holo_term_point(n, t.i, t.j)?,
            Unknown::Alpha => holo_term_curve(n)?,
        };
        rhs = &rhs + &term.scale(&rat(*v));
    }
    Ok(rhs == holo_lhs(n, k))
}

fn to_integer_rows(system: &HoloSystem) -> Result<Vec<(Vec<i128>, i128)>, LefschetzError> {
    let to_i128 = |x: BigInt| x.to_i128().ok_or(LefschetzError::Overflow);
    let mut rows = Vec::new();
    for eq in &system.equations {
        let lcm = eq
            .coeffs
            .iter()
            .chain(std::iter::once(&eq.rhs))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = Rat::from_integer(lcm);
        let coeffs = eq
            .coeffs
            .iter()
            .map(|c| to_i128((c * &scale).to_integer()))
            .collect::<Result<Vec<_>, _>>()?;
        let rhs = to_i128((&eq.rhs * &scale).to_integer())?;
        rows.push((coeffs, rhs));
    }
    Ok(rows)
}

/// Every integer assignment inside `bounds` (one inclusive range per unknown)
/// that satisfies all equations exactly, in lexicographic order.
///
/// The search is exhaustive; branches are cut only when an equation can no
/// longer be met by any completion inside the bounds. Point counts must have
/// nonnegative lower bounds; α may go below zero only through an explicit
/// bound.
pub fn solve_nonneg_integer(
    system: &HoloSystem,
    bounds: &[(i64, i64)],
) -> Result<Vec<Vec<i64>>, LefschetzError> {
    if bounds.len() != system.unknowns.len() {
        return Err(LefschetzError::BadBounds(format!(
            "{} ranges for {} unknowns",
            bounds.len(),
            system.unknowns.len()
        )));
    }
    for (u, &(lo, hi)) in system.unknowns.iter().zip(bounds) {
        if lo > hi {
            return Err(LefschetzError::BadBounds(format!(
                "empty range for {}",
                u.name()
            )));
        }
        if matches!(u, Unknown::Points(_)) && lo < 0 {
            return Err(LefschetzError::BadBounds(format!(
                "negative lower bound for point count {}",
                u.name()
            )));
        }
    }
    let rows = to_integer_rows(system)?;
    let nvars = bounds.len();
    // suffix[e][d] = (min, max) of Σ_{u ≥ d} c_u x_u over the box.
    let suffix: Vec<Vec<(i128, i128)>> = rows
        .iter()
        .map(|(coeffs, _)| {
            let mut s = vec![(0i128, 0i128); nvars + 1];
            for d in (0..nvars).rev() {
                let (lo, hi) = (i128::from(bounds[d].0), i128::from(bounds[d].1));
                let (a, b) = (coeffs[d] * lo, coeffs[d] * hi);
                s[d] = (s[d + 1].0 + a.min(b), s[d + 1].1 + a.max(b));
            }
            s
        })
        .collect();

    struct Search<'a> {
        rows: &'a [(Vec<i128>, i128)],
        suffix: &'a [Vec<(i128, i128)>],
        bounds: &'a [(i64, i64)],
        partial: Vec<i128>,
        current: Vec<i64>,
        out: Vec<Vec<i64>>,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) {
            for (e, (_, rhs)) in self.rows.iter().enumerate() {
                let need = rhs - self.partial[e];
                let (lo, hi) = self.suffix[e][depth];
                if need < lo || need > hi {
                    return;
                }
            }
            if depth == self.bounds.len() {
                self.out.push(self.current.clone());
                return;
            }
            let (lo, hi) = self.bounds[depth];
            for v in lo..=hi {
                for (e, (coeffs, _)) in self.rows.iter().enumerate() {
                    self.partial[e] += coeffs[depth] * i128::from(v);
                }
                self.current.push(v);
                self.go(depth + 1);
                self.current.pop();
                for (e, (coeffs, _)) in self.rows.iter().enumerate() {
                    self.partial[e] -= coeffs[depth] * i128::from(v);
                }
            }
        }
    }

    let mut search = Search {
        rows: &rows,
        suffix: &suffix,
        bounds,
        partial: vec![0; rows.len()],
        current: Vec::with_capacity(nvars),
        out: Vec::new(),
    };
    search.go(0);
    Ok(search.out)
}

/// One affine relation `Σ coeffs[u] x_u = constant` with integer
/// coefficients, positive leading pivot and content 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<Rat>,
    #[serde(serialize_with = "ser_rat")]
    pub constant: Rat,
}

pub(crate) fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

pub(crate) fn ser_rats<S: serde::Serializer>(rs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(rat_to_string))
}

/// Reduced description of the rational affine solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relations {
    Inconsistent,
    Affine {
        unknowns: Vec<String>,
        rows: Vec<Relation>,
        pivots: Vec<usize>,
        free: Vec<usize>,
    },
}

impl Relations {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Relations::Affine { .. })
    }

    pub fn satisfied_by(&self, values: &[i64]) -> bool {
        match self {
            Relations::Inconsistent => false,
            Relations::Affine { rows, .. } => rows.iter().all(|r| {
                let lhs: Rat = r.coeffs.iter().zip(values).map(|(c, &v)| c * rat(v)).sum();
                lhs == r.constant
            }),
        }
    }

    /// Human readable form, e.g. `a_{3,7} - 2 alpha = 1`.
    pub fn render(&self) -> Vec<String> {
        match self {
            Relations::Inconsistent => vec!["inconsistent".to_string()],
            Relations::Affine { unknowns, rows, .. } => rows
                .iter()
                .map(|r| {
                    let mut s = String::new();
                    for (c, name) in r.coeffs.iter().zip(unknowns) {
                        if c.is_zero() {
                            continue;
                        }
                        let sign = if c.is_negative() { "-" } else { "+" };
                        if s.is_empty() {
                            if c.is_negative() {
                                s.push('-');
                            }
                        } else {
                            s.push_str(&format!(" {sign} "));
                        }
                        let a = c.abs();
                        if !a.is_one() {
                            s.push_str(&format!("{} ", rat_to_string(&a)));
                        }
                        s.push_str(name);
                    }
                    format!("{s} = {}", rat_to_string(&r.constant))
                })
                .collect(),
        }
    }
}

/// Reduced row echelon form of the system.
///
/// Pivots are chosen with priority: point unknowns from the last to the
/// first, then α. The first point unknown and α therefore remain free
/// whenever possible, which puts the relations in the form
/// `pivot + (terms in free unknowns) = constant`.
pub fn solution_relations(system: &HoloSystem) -> Relations {
    let nvars = system.unknowns.len();
    let mut priority: Vec<usize> = (0..nvars)
        .filter(|&u| matches!(system.unknowns[u], Unknown::Points(_)))
        .rev()
        .collect();
    priority.extend((0..nvars).filter(|&u| system.unknowns[u] == Unknown::Alpha));

    let mut m: Vec<Vec<Rat>> = system
        .equations
        .iter()
        .map(|e| {
            let mut row = e.coeffs.clone();
            row.push(e.rhs.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for &col in &priority {
        let Some(p) = (next_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, next_row);
        let inv = m[next_row][col].recip();
        for c in m[next_row].iter_mut() {
            *c *= &inv;
        }
        for r in 0..m.len() {
            if r != next_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=nvars {
                    let v = &f * &m[next_row][c];
                    m[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    if m[next_row..].iter().any(|row| !row[nvars].is_zero()) {
        return Relations::Inconsistent;
    }
    let rows = m[..next_row]
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let scaled: Vec<BigInt> = row
                .iter()
                .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                .collect();
            let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let g = Rat::from_integer(if g.is_zero() { BigInt::one() } else { g });
            let mut ints: Vec<Rat> = scaled
                .into_iter()
                .map(|c| Rat::from_integer(c) / &g)
                .collect();
            let constant = ints.pop().expect("augmented column");
            Relation {
                coeffs: ints,
                constant,
            }
        })
        .collect();
    let free = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    Relations::Affine {
        unknowns: system.unknown_names(),
        rows,
        pivots,
        free,
    }
}

/// Multiplicities of the eigenvalues of σ* on H²(X, C) for order 9:
/// `r` for 1, `l` for each primitive cube root, `s` for each primitive
/// ninth root. `m` is the multiplicity of each primitive cube root for σ³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EigenRanks {
    pub r: u32,
    pub l: u32,
    pub s: u32,
    pub m: u32,
}

impl EigenRanks {
    /// Trace of σ* on H², computed in Q(ζ_9).
    pub fn trace_h2(&self) -> Rat {
        let primitive_cube = &zeta_pow(9, 3) + &zeta_pow(9, 6);
        let primitive_ninth = [1, 2, 4, 5, 7, 8]
            .iter()
            .fold(CycNum::zero(9), |acc, &e| &acc + &zeta_pow(9, e));
        let tr = &(&CycNum::rational(9, rat(self.r.into()))
            + &primitive_cube.scale(&rat(self.l.into())))
            + &primitive_ninth.scale(&rat(self.s.into()));
        tr.as_rational()
            .expect("trace of an integral isometry is rational")
    }
}

/// Solves `r - l = n_σ + 2α - 2` (topological Lefschetz) together with
/// `r + 2l = 22 - 2m`.
pub fn eigen_ranks_from_counts(
    n_sigma: u32,
    alpha: i64,
    m: u32,
) -> Result<EigenRanks, LefschetzError> {
    if !matches!(m, 3 | 6 | 9) {
        return Err(LefschetzError::BadM(m));
    }
    let chi = i64::from(n_sigma) + 2 * alpha;
    let three_l = 24 - 2 * i64::from(m) - chi;
    if three_l % 3 != 0 {
        return Err(LefschetzError::GeometricallyImpossible(format!(
            "l = {three_l}/3 is not an integer"
        )));
    }
    let l = three_l / 3;
    let r = chi - 2 + l;
    if l < 0 {
        return Err(LefschetzError::GeometricallyImpossible(format!(
            "l = {l} < 0"
        )));
    }
    if r < 1 {
        return Err(LefschetzError::GeometricallyImpossible(format!(
            "r = {r} < 1 (the invariant lattice contains an ample class)"
        )));
    }
    let ranks = EigenRanks {
        r: r as u32,
        l: l as u32,
        s: m / 3,
        m,
    };
    debug_assert_eq!(rat(2) + ranks.trace_h2(), rat(chi));
    Ok(ranks)
}

/// Euler characteristic of Fix(σ³) from the topological Lefschetz formula:
/// σ³ acts on H² with eigenvalue 1 of multiplicity `22 - 2m` and each
/// primitive cube root with multiplicity `m`.
pub fn chi_fix_order3(m: u32) -> Result<i64, LefschetzError> {
    if !matches!(m, 3 | 6 | 9) {
        return Err(LefschetzError::BadM(m));
    }
    let roots = &zeta_pow(3, 1) + &zeta_pow(3, 2);
    let tr = &CycNum::rational(3, rat(22 - 2 * i64::from(m))) + &roots.scale(&rat(m.into()));
    let chi = rat(2) + tr.as_rational().expect("rational trace");
    Ok(chi.to_integer().to_i64().expect("small"))
}

/// Fixed-locus data of an order-9 automorphism acting on the 2-form by ζ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FixProfile {
    /// `(a_{2,8}, a_{3,7}, a_{4,6}, a_{5,5})`
    pub a: [u32; 4],
    pub alpha: i64,
    pub n_sigma: u32,
    pub k_sigma: u32,
    pub g_sigma: Option<u32>,
}

impl FixProfile {
    /// Builds the profile from the isolated counts and the genera of the
    /// pointwise fixed curves.
    pub fn new(a: [u32; 4], fixed_genera: &[u32]) -> Self {
        FixProfile {
            a,
            alpha: fixed_genera.iter().map(|&g| 1 - i64::from(g)).sum(),
            n_sigma: a.iter().sum(),
            k_sigma: fixed_genera.len() as u32,
            g_sigma: fixed_genera.iter().copied().max(),
        }
    }

    /// The assignment in the unknown order of the order-9, k = 1 system.
    pub fn assignment(&self) -> Vec<(Unknown, i64)> {
        [(2, 8), (3, 7), (4, 6), (5, 5)]
            .iter()
            .zip(self.a)
            .map(|(&(i, j), v)| (Unknown::Points(LocalType::new(9, i, j)), i64::from(v)))
            .chain(std::iter::once((Unknown::Alpha, self.alpha)))
            .collect()
    }

    pub fn satisfies_identity(&self) -> bool {
        identity_holds(9, 1, &self.assignment()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn pairs(ts: &[LocalType]) -> Vec<(u32, u32)> {
        ts.iter().map(|t| (t.i, t.j)).collect()
    }

    #[test]
    fn admissible_type_lists() {
        assert_eq!(
            pairs(&admissible_types(9, 3, false, true).unwrap()),
            vec![(1, 2), (4, 8), (5, 7)]
        );
        assert_eq!(
            pairs(&admissible_types(9, 1, true, false).unwrap()),
            vec![(1, 9), (2, 8), (3, 7), (4, 6), (5, 5)]
        );
        assert_eq!(
            pairs(&admissible_types(3, 1, true, false).unwrap()),
            vec![(1, 3), (2, 2)]
        );
        assert_eq!(LocalType::new(9, 1, 9).to_string(), "A_{1,0}");
        assert!(admissible_types(9, 0, true, false).is_err());
    }

    #[test]
    fn point_terms() {
        // Galois orbit sum; 0 from a floating-point evaluation of the six
        // conjugates 1/((1-w)(1-w^2)) over primitive ninth roots w.
        let t = holo_term_point(9, 1, 2).unwrap();
        let orbit = [1, 2, 4, 5, 7, 8].iter().fold(CycNum::zero(9), |acc, &k| {
            &acc + &t.galois_conjugate(k).unwrap()
        });
        assert_eq!(orbit.as_rational(), Some(rat(0)));
        let conj = holo_term_point(9, 8, 7).unwrap();
        // t * conj(t) = 1/|(1-ζ)(1-ζ^2)|^2 is real: fixed by ζ ↦ ζ^-1.
        let prod = &t * &conj;
        assert_eq!(prod.galois_conjugate(8).unwrap(), prod);
        assert_eq!(t.galois_conjugate(8).unwrap(), conj);

        assert_eq!(
            holo_term_point(3, 2, 2).unwrap(),
            zeta_pow(3, 1).scale(&ratio(-1, 3))
        );
        let one_minus = &CycNum::one(9) - &zeta_pow(9, 5);
        assert_eq!(
            &holo_term_point(9, 5, 5).unwrap() * &one_minus.pow(2),
            CycNum::one(9)
        );
        assert!(holo_term_point(9, 1, 9).is_err());
    }

    #[test]
    fn curve_terms() {
        assert_eq!(
            holo_term_curve(3).unwrap(),
            zeta_pow(3, 1).scale(&ratio(1, 3))
        );
        let c = holo_term_curve(9).unwrap();
        let one_minus = &CycNum::one(9) - &zeta_pow(9, 1);
        assert_eq!(&c * &one_minus.pow(2), &CycNum::one(9) + &zeta_pow(9, 1));
        // Σ (1+w)/(1-w)^2 over primitive ninth roots w is -9 (floating-point
        // evaluation of the six conjugates).
        assert_eq!(c.trace(), rat(-9));
        assert!(holo_term_curve(1).is_err());
    }

    #[test]
    fn order_nine_character_one_relations() {
        let types = admissible_types(9, 1, true, false).unwrap();
        let sys = build_holo_system(9, 1, &types, true).unwrap();
        assert_eq!(sys.equations.len(), 6);
        assert_eq!(
            sys.unknown_names(),
            vec!["a_{2,8}", "a_{3,7}", "a_{4,6}", "a_{5,5}", "alpha"]
        );
        let rel = solution_relations(&sys);
        assert_eq!(
            rel.render(),
            vec![
                "a_{2,8} + a_{5,5} - 3 alpha = 1",
                "3 a_{2,8} + a_{4,6} - 8 alpha = 4",
                "a_{3,7} - 2 alpha = 1",
            ]
        );
    }

    #[test]
    fn symplectic_cube_is_inconsistent() {
        let types = admissible_types(9, 3, false, true).unwrap();
        let sys = build_holo_system(9, 3, &types, false).unwrap();
        assert_eq!(sys.equations.len(), 6);
        assert_eq!(solution_relations(&sys), Relations::Inconsistent);
        assert!(solve_nonneg_integer(&sys, &sys.default_bounds())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn order_three_relation() {
        let types = admissible_types(3, 1, true, false).unwrap();
        let sys = build_holo_system(3, 1, &types, true).unwrap();
        assert_eq!(
            solution_relations(&sys).render(),
            vec!["a_{2,2} - alpha = 3"]
        );
    }

    #[test]
    fn curve_term_requires_character_one() {
        let types = admissible_types(9, 3, true, false).unwrap();
        assert_eq!(
            build_holo_system(9, 3, &types, true).unwrap_err(),
            LefschetzError::CurveTermNeedsCharacterOne(3)
        );
        assert_eq!(
            build_holo_system(9, 1, &[], true).unwrap_err(),
            LefschetzError::NoTypes
        );
    }

    #[test]
    fn alpha_zero_solutions() {
        let types = admissible_types(9, 1, true, false).unwrap();
        let sys = build_holo_system(9, 1, &types, true).unwrap();
        let mut bounds = sys.default_bounds();
        bounds[4] = (0, 0);
        let sols = solve_nonneg_integer(&sys, &bounds).unwrap();
        assert_eq!(sols, vec![vec![0, 1, 4, 1, 0], vec![1, 1, 1, 0, 0]]);
        for s in &sols {
            let assignment: Vec<_> = sys
                .unknowns
                .iter()
                .copied()
                .zip(s.iter().copied())
                .collect();
            assert!(identity_holds(9, 1, &assignment).unwrap());
        }
    }

    #[test]
    fn bounds_are_validated() {
        let types = admissible_types(9, 1, true, false).unwrap();
        let sys = build_holo_system(9, 1, &types, true).unwrap();
        assert!(solve_nonneg_integer(&sys, &[(0, 1)]).is_err());
        let mut b = sys.default_bounds();
        b[0] = (-1, 3);
        assert!(solve_nonneg_integer(&sys, &b).is_err());
        b[0] = (0, 3);
        b[4] = (-2, 0);
        // negative α is allowed when asked for; (*) forces a_{3,7} = 2α+1 ≥ 0
        let sols = solve_nonneg_integer(&sys, &b).unwrap();
        assert!(sols.iter().all(|s| s[4] == 0));
    }

    #[test]
    fn eigen_ranks() {
        let d1 = eigen_ranks_from_counts(7, 1, 6).unwrap();
        assert_eq!((d1.r, d1.l, d1.s), (8, 1, 2));
        let a2 = eigen_ranks_from_counts(3, 0, 9).unwrap();
        assert_eq!((a2.r, a2.l), (2, 1));
        let h = eigen_ranks_from_counts(14, 2, 3).unwrap();
        assert_eq!((h.r, h.l), (16, 0));
        assert_eq!(h.r + 2 * h.l + 6 * h.s, 22);
        assert!(matches!(
            eigen_ranks_from_counts(4, 0, 6),
            Err(LefschetzError::GeometricallyImpossible(_))
        ));
        assert!(matches!(
            eigen_ranks_from_counts(13, 1, 6),
            Err(LefschetzError::GeometricallyImpossible(_))
        ));
        assert_eq!(
            eigen_ranks_from_counts(3, 0, 4),
            Err(LefschetzError::BadM(4))
        );
    }

    #[test]
    fn euler_characteristic_of_cube_fixed_locus() {
        assert_eq!(chi_fix_order3(9).unwrap(), -3);
        assert_eq!(chi_fix_order3(3).unwrap(), 15);
        assert_eq!(chi_fix_order3(6).unwrap(), 6);
        // point + genus 3 curve; 7 points + 4 rational curves; 4 points + elliptic + rational
        assert_eq!(1 + (2 - 6), -3);
        assert_eq!(7 + 4 * 2, 15);
        assert_eq!(4 + 2, 6);
    }
}
