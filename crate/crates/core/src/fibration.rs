//! Singular fibres of elliptic K3 surfaces `y² = x³ + a(t)x + b(t)` with
//! `deg a ≤ 8`, `deg b ≤ 12`.
//!
//! Finite places are never computed as roots. They are grouped into classes,
//! one per squarefree factor of a gcd-free basis of `a`, `b` and `Δ`; all
//! roots of one factor share their valuations and hence their fibre type.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{coprime_refinement, rat, squarefree_decomposition, ExactError, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("discriminant vanishes identically: not an elliptic surface")]
    NotElliptic,
    #[error("deg {which} = {degree} exceeds {max}")]
    DegreeBound {
        which: &'static str,
        degree: usize,
        max: usize,
    },
    #[error("valuations (v_a, v_b, v_Δ) = ({}, {}, {vd}) are not in the Kodaira table", show(*.va), show(*.vb))]
    Unclassified {
        va: Option<u32>,
        vb: Option<u32>,
        vd: u32,
    },
    #[error("the zero polynomial has no bisection")]
    ZeroPolynomial,
    #[error("model is not compatible with t -> ζ_{order} t: {reason}")]
    Incompatible { order: u32, reason: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn show(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

/// Kodaira fibre type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kodaira {
    /// `I_n`; `I_0` is a smooth fibre.
    I(u32),
    II,
    III,
    IV,
    /// `I_n^*`
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    pub fn euler(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(n) => n + 6,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Fibre type from the valuations of `a`, `b`, `Δ` at a place of a minimal
/// model, in residue characteristic 0. `None` is the valuation of the zero
/// polynomial.
pub fn kodaira_type(
    va: Option<u32>,
    vb: Option<u32>,
    vd: u32,
) -> Result<(Kodaira, u32), FibrationError> {
    let inf = u32::MAX;
    let (a, b) = (va.unwrap_or(inf), vb.unwrap_or(inf));
    let t = match (a, b, vd) {
        (_, _, 0) => Kodaira::I(0),
        (0, 0, n) => Kodaira::I(n),
        (a, 1, 2) if a >= 1 => Kodaira::II,
        (1, b, 3) if b >= 2 => Kodaira::III,
        (a, 2, 4) if a >= 2 => Kodaira::IV,
        (a, b, 6) if a >= 2 && b >= 3 => Kodaira::IStar(0),
        (2, 3, d) if d > 6 => Kodaira::IStar(d - 6),
        (a, 4, 8) if a >= 3 => Kodaira::IVStar,
        (3, b, 9) if b >= 5 => Kodaira::IIIStar,
        (a, 5, 10) if a >= 4 => Kodaira::IIStar,
        _ => return Err(FibrationError::Unclassified { va, vb, vd }),
    };
    Ok((t, t.euler()))
}

/// `y² = x³ + a(t)x + b(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: QPoly,
    b: QPoly,
}

impl WeierstrassModel {
    pub fn new(a: QPoly, b: QPoly) -> Result<Self, FibrationError> {
        for (which, p, max) in [("a", &a, 8), ("b", &b, 12)] {
            if let Some(d) = p.degree().finite() {
                if d > max {
                    return Err(FibrationError::DegreeBound {
                        which,
                        degree: d,
                        max,
                    });
                }
            }
        }
        let var = if a.is_constant() {
            b.var().to_string()
        } else {
            a.var().to_string()
        };
        let (a, b) = (a.with_var(var.clone()), b.with_var(var));
        if b.var() != a.var() {
            return Err(ExactError::VariableMismatch(a.var().into(), b.var().into()).into());
        }
        let m = WeierstrassModel { a, b };
        if m.discriminant_raw().is_zero() {
            return Err(FibrationError::NotElliptic);
        }
        Ok(m)
    }

    pub fn a(&self) -> &QPoly {
        &self.a
    }

    pub fn b(&self) -> &QPoly {
        &self.b
    }

    fn discriminant_raw(&self) -> QPoly {
        let four_a3 = self.a.pow(3).scale(&rat(4));
        let b2 = self.b.pow(2).scale(&rat(27));
        (&four_a3 + &b2).scale(&rat(-16))
    }

    /// `Δ = -16(4a³ + 27b²)`
    pub fn discriminant(&self) -> QPoly {
        self.discriminant_raw()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    /// All roots of a squarefree monic polynomial.
    Finite(QPoly),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One Galois class of places with its fibre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceClass {
    pub place: Place,
    /// Number of places in the class.
    pub count: u32,
    /// Valuations after minimal reduction; `null` means identically zero.
    pub v_a: Option<u32>,
    pub v_b: Option<u32>,
    pub v_delta: u32,
    pub kodaira: Kodaira,
    /// Euler number of one fibre of the class.
    pub euler: u32,
    /// The given model was not minimal here and was reduced by (4, 6, 12).
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    pub a: String,
    pub b: String,
    pub discriminant: String,
    pub places: Vec<PlaceClass>,
    pub euler_total: u32,
    pub k3: bool,
    pub warnings: Vec<String>,
}

impl FibrationReport {
    /// Number of places of each fibre type, singular fibres only.
    pub fn census(&self) -> std::collections::BTreeMap<String, u32> {
        let mut out = std::collections::BTreeMap::new();
        for p in self.places.iter().filter(|p| p.kodaira != Kodaira::I(0)) {
            *out.entry(p.kodaira.to_string()).or_insert(0) += p.count;
        }
        out
    }

    pub fn at_infinity(&self) -> Option<&PlaceClass> {
        self.places.iter().find(|p| p.place == Place::Infinity)
    }
}

fn valuation(p: &QPoly, factor: &QPoly) -> Result<Option<u32>, FibrationError> {
    Ok(p.multiplicity(factor)?)
}

fn classify(
    place: Place,
    count: u32,
    (mut va, mut vb, mut vd): (Option<u32>, Option<u32>, u32),
    warnings: &mut Vec<String>,
) -> Result<PlaceClass, FibrationError> {
    let mut reduced = false;
    while va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6) && vd >= 12 {
        va = va.map(|v| v - 4);
        vb = vb.map(|v| v - 6);
        vd -= 12;
        reduced = true;
    }
    if reduced {
        warnings.push(format!(
            "model is not minimal at {place}; reduced by (4,6,12)"
        ));
    }
    let (kodaira, euler) = kodaira_type(va, vb, vd)?;
    Ok(PlaceClass {
        place,
        count,
        v_a: va,
        v_b: vb,
        v_delta: vd,
        kodaira,
        euler,
        reduced,
    })
}

/// Singular fibres by place class and the Euler number total.
pub fn analyze(m: &WeierstrassModel) -> Result<FibrationReport, FibrationError> {
    let delta = m.discriminant();
    let mut layers = Vec::new();
    for p in [&m.a, &m.b, &delta] {
        if !p.is_zero() {
            layers.extend(squarefree_decomposition(p)?.into_iter().map(|(s, _)| s));
        }
    }
    let mut warnings = Vec::new();
    let mut places = Vec::new();
    for f in coprime_refinement(&layers)? {
        let vd = valuation(&delta, &f)?.expect("Δ is nonzero");
        if vd == 0 {
            continue;
        }
        let count = f.degree().finite().expect("nonzero") as u32;
        let vals = (valuation(&m.a, &f)?, valuation(&m.b, &f)?, vd);
        places.push(classify(Place::Finite(f), count, vals, &mut warnings)?);
    }
    let deg = |p: &QPoly| p.degree().finite();
    let v_inf = |p: &QPoly, k: usize| deg(p).map(|d| (k - d) as u32);
    let vd_inf = v_inf(&delta, 24).expect("Δ is nonzero");
    if vd_inf > 0 {
        let vals = (v_inf(&m.a, 8), v_inf(&m.b, 12), vd_inf);
        places.push(classify(Place::Infinity, 1, vals, &mut warnings)?);
    }
    let euler_total = places.iter().map(|p| p.euler * p.count).sum();
    Ok(FibrationReport {
        a: m.a.to_string(),
        b: m.b.to_string(),
        discriminant: delta.to_string(),
        places,
        euler_total,
        k3: euler_total == 24,
        warnings,
    })
}

/// The curve `y² = f(t)` on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bisection {
    Genus(u32),
    /// `f` is a constant times a square: two sections.
    Splits,
}

impl Serialize for Bisection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Bisection::Genus(g) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("genus", g)?;
                m.end()
            }
            Bisection::Splits => s.serialize_str("splits"),
        }
    }
}

/// Writes `f = c·s·h²` with `s` squarefree; the curve `y² = f` has genus
/// `⌊(deg s - 1)/2⌋`, or splits when `s` is constant.
pub fn bisection_genus(f: &QPoly) -> Result<Bisection, FibrationError> {
    if f.is_zero() {
        return Err(FibrationError::ZeroPolynomial);
    }
    let odd_degree: usize = squarefree_decomposition(f)?
        .iter()
        .filter(|(_, mult)| mult % 2 == 1)
        .map(|(s, _)| s.degree().finite().expect("nonzero"))
        .sum();
    Ok(match odd_degree {
        0 => Bisection::Splits,
        d => Bisection::Genus(((d - 1) / 2) as u32),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantFibers {
    /// The action on the base is trivial.
    All,
    /// The two fixed points `t = 0` and `t = ∞`.
    ZeroAndInfinity,
}

impl Serialize for InvariantFibers {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            InvariantFibers::All => s.serialize_str("all"),
            InvariantFibers::ZeroAndInfinity => s.collect_seq(["0", "infinity"]),
        }
    }
}

fn exponent_class(p: &QPoly, order: u32) -> Option<Vec<u32>> {
    let classes: Vec<u32> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| (e as u32) % order)
        .collect();
    (!classes.is_empty()).then_some(classes)
}

/// Fibres over the fixed points of `t ↦ ζ_d t`. Each nonzero coefficient
/// polynomial must be supported on a single residue class of exponents mod
/// `d`, so that the model is preserved up to rescaling `x` and `y`.
pub fn invariant_fibers(
    m: &WeierstrassModel,
    base_order: u32,
) -> Result<InvariantFibers, FibrationError> {
    if base_order == 0 {
        return Err(FibrationError::Incompatible {
            order: 0,
            reason: "order must be positive".into(),
        });
    }
    if base_order == 1 {
        return Ok(InvariantFibers::All);
    }
    for (name, p) in [("a", &m.a), ("b", &m.b)] {
        if let Some(cl) = exponent_class(p, base_order) {
            if cl.iter().any(|&c| c != cl[0]) {
                return Err(FibrationError::Incompatible {
                    order: base_order,
                    reason: format!("exponents of {name} lie in several classes mod {base_order}"),
                });
            }
        }
    }
    Ok(InvariantFibers::ZeroAndInfinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(s, "t").unwrap()
    }

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::new(p(a), p(b)).unwrap()
    }

    #[test]
    fn discriminants() {
        let m = model("0", "t^3 - 2");
        assert_eq!(m.discriminant(), p("t^3-2").pow(2).scale(&rat(-432)));
        assert_eq!(model("1", "0").discriminant(), p("-64"));
        assert_eq!(
            model("1", "t^9+1").discriminant().degree().finite(),
            Some(18)
        );
        assert_eq!(
            WeierstrassModel::new(p("0"), p("0")),
            Err(FibrationError::NotElliptic)
        );
        assert!(matches!(
            WeierstrassModel::new(p("t^9"), p("1")),
            Err(FibrationError::DegreeBound { which: "a", .. })
        ));
    }

    #[test]
    fn kodaira_table() {
        assert_eq!(kodaira_type(None, Some(1), 2).unwrap(), (Kodaira::II, 2));
        assert_eq!(kodaira_type(None, Some(2), 4).unwrap(), (Kodaira::IV, 4));
        assert_eq!(
            kodaira_type(None, Some(4), 8).unwrap(),
            (Kodaira::IVStar, 8)
        );
        assert_eq!(
            kodaira_type(Some(0), Some(0), 5).unwrap(),
            (Kodaira::I(5), 5)
        );
        assert_eq!(kodaira_type(Some(1), None, 3).unwrap(), (Kodaira::III, 3));
        assert_eq!(
            kodaira_type(Some(2), Some(3), 9).unwrap(),
            (Kodaira::IStar(3), 9)
        );
        assert_eq!(
            kodaira_type(Some(3), None, 9).unwrap(),
            (Kodaira::IIIStar, 9)
        );
        assert_eq!(
            kodaira_type(None, Some(5), 10).unwrap(),
            (Kodaira::IIStar, 10)
        );
        assert_eq!(
            kodaira_type(Some(8), Some(3), 6).unwrap(),
            (Kodaira::IStar(0), 6)
        );
        assert!(kodaira_type(Some(1), Some(1), 5).is_err());
    }

    #[test]
    fn example_b_census() {
        let r = analyze(&model("0", "t*(t^3-1)*(t^3-2)*(t^3-3)")).unwrap();
        assert_eq!(r.euler_total, 24);
        assert!(r.k3);
        let census = r.census();
        assert_eq!(census.get("II"), Some(&10));
        assert_eq!(census.get("IV"), Some(&1));
        assert_eq!(r.at_infinity().unwrap().kodaira, Kodaira::IV);
    }

    #[test]
    fn non_minimal_place_is_reduced() {
        let r = analyze(&model("0", "t^6*(t-1)")).unwrap();
        let zero = r
            .places
            .iter()
            .find(|c| c.place == Place::Finite(p("t")))
            .unwrap();
        assert!(zero.reduced);
        assert_eq!(zero.kodaira, Kodaira::I(0));
        assert_eq!(r.warnings.len(), 1);
        assert!(!r.census().contains_key("I0"));
    }

    #[test]
    fn bisections() {
        assert_eq!(
            bisection_genus(&p("t*(t^3-1)*(t^3-2)*(t^3-3)")).unwrap(),
            Bisection::Genus(4)
        );
        assert_eq!(
            bisection_genus(&p("t^4*(t^3-2)*(t^3-3)")).unwrap(),
            Bisection::Genus(2)
        );
        assert_eq!(
            bisection_genus(&p("t^4*(t^3-2)^2")).unwrap(),
            Bisection::Splits
        );
        assert_eq!(
            bisection_genus(&p("t^4*(t^3-2)")).unwrap(),
            Bisection::Genus(1)
        );
        assert_eq!(
            bisection_genus(&p("0")),
            Err(FibrationError::ZeroPolynomial)
        );
    }

    #[test]
    fn base_action() {
        let m = model("0", "t*(t^3-1)*(t^3-2)*(t^3-3)");
        assert_eq!(
            invariant_fibers(&m, 3).unwrap(),
            InvariantFibers::ZeroAndInfinity
        );
        assert_eq!(invariant_fibers(&m, 1).unwrap(), InvariantFibers::All);
        assert!(invariant_fibers(&m, 9).is_err());
        let d2 = model("1", "t^9+1");
        assert_eq!(
            invariant_fibers(&d2, 9).unwrap(),
            InvariantFibers::ZeroAndInfinity
        );
    }
}
