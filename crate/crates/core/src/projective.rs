//! Diagonal actions `x_i ↦ ζ_n^{w_i} x_i` on projective space: fixed
//! coordinate subspaces, invariant monomials, and a necessary smoothness
//! test at the coordinate points.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{squarefree_decomposition, ExactError, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("an action needs at least one coordinate")]
    NoWeights,
    #[error("the order must be positive")]
    ZeroOrder,
    #[error("the degree must be positive")]
    ZeroDegree,
    #[error("the zero form has no roots")]
    ZeroForm,
    #[error("dehomogenized form of degree {got} exceeds the form degree {degree}")]
    DegreeTooLarge { got: usize, degree: u32 },
    #[error("monomials of different degrees")]
    MixedDegree,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `x_i ↦ ζ_n^{w_i} x_i`; invariant forms are those multiplied by `ζ_n^c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagAction {
    pub order: u32,
    pub weights: Vec<u32>,
    pub character: u32,
}

impl DiagAction {
    pub fn new(order: u32, weights: &[u32], character: u32) -> Result<Self, ProjectiveError> {
        if order == 0 {
            return Err(ProjectiveError::ZeroOrder);
        }
        if weights.is_empty() {
            return Err(ProjectiveError::NoWeights);
        }
        Ok(DiagAction {
            order,
            weights: weights.iter().map(|w| w % order).collect(),
            character: character % order,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight_of(&self, m: &Monomial) -> u32 {
        let s: u64 =
            m.0.iter()
                .zip(&self.weights)
                .map(|(&e, &w)| u64::from(e) * u64::from(w))
                .sum();
        (s % u64::from(self.order)) as u32
    }
}

/// Coordinate subspace on which the action is the identity (projectively).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub weight: u32,
    pub coords: Vec<usize>,
    /// Projective dimension.
    pub dim: usize,
    pub description: String,
}

/// One stratum per distinct weight: the span of the coordinates carrying it.
pub fn fixed_strata(act: &DiagAction) -> Vec<Stratum> {
    let n = act.weights.len();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for &w in &act.weights {
        if seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let coords: Vec<usize> = (0..n).filter(|&i| act.weights[i] == w).collect();
        let description = if coords.len() == 1 {
            let pt: Vec<&str> = (0..n)
                .map(|i| if i == coords[0] { "1" } else { "0" })
                .collect();
            format!("point ({})", pt.join(","))
        } else if coords.len() == n {
            "whole space".to_string()
        } else {
            let zeros: Vec<String> = (0..n)
                .filter(|i| !coords.contains(i))
                .map(|i| format!("x{i}"))
                .collect();
            let kind = match coords.len() {
                2 => "line",
                3 => "plane",
                _ => "subspace",
            };
            format!("{kind} {{{}=0}}", zeros.join("="))
        };
        out.push(Stratum {
            weight: w,
            dim: coords.len() - 1,
            coords,
            description,
        });
    }
    out
}

/// Exponent vector of a monomial in `x_0, ..., x_N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn compositions(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for e in (0..=degree).rev() {
        for mut rest in compositions(vars - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// All monomials of `degree` multiplied by `ζ^c` under the action, in
/// descending lexicographic order of exponent vectors (`x0^d` first).
pub fn invariant_monomials(
    act: &DiagAction,
    degree: u32,
) -> Result<Vec<Monomial>, ProjectiveError> {
    if degree == 0 {
        return Err(ProjectiveError::ZeroDegree);
    }
    Ok(compositions(act.weights.len(), degree)
        .into_iter()
        .map(Monomial)
        .filter(|m| act.weight_of(m) == act.character)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Screen {
    /// Some member of the family may be smooth at the point; this is a
    /// necessary condition only.
    Passed,
    /// Every member of the family is singular at the point.
    NecessarilySingular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointScreen {
    pub point: usize,
    pub verdict: Screen,
    /// A monomial with exponent at least `d - 1` in the point's coordinate.
    pub witness: Option<Monomial>,
}

/// For each coordinate point `e_i`, a general member of the span of
/// `monomials` can only be smooth there if some monomial is `x_i^d` or
/// `x_i^{d-1} x_j`.
pub fn coordinate_point_singularity_screen(
    monomials: &[Monomial],
    ambient_dim: usize,
) -> Result<Vec<PointScreen>, ProjectiveError> {
    let Some(d) = monomials.first().map(Monomial::degree) else {
        return Ok((0..=ambient_dim)
            .map(|point| PointScreen {
                point,
                verdict: Screen::NecessarilySingular,
                witness: None,
            })
            .collect());
    };
    if monomials.iter().any(|m| m.degree() != d) {
        return Err(ProjectiveError::MixedDegree);
    }
    Ok((0..=ambient_dim)
        .map(|i| {
            let witness = monomials
                .iter()
                .find(|m| m.0.get(i).copied().unwrap_or(0) + 1 >= d)
                .cloned();
            PointScreen {
                point: i,
                verdict: if witness.is_some() {
                    Screen::Passed
                } else {
                    Screen::NecessarilySingular
                },
                witness,
            }
        })
        .collect())
}

/// Roots of a binary form `F(x0, x1)` of degree `d` on the line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub degree: u32,
    /// Root multiplicities, descending, including the point at infinity.
    pub multiplicities: Vec<u32>,
    pub distinct: bool,
    /// Multiplicity of the root `x0 = 0`, the point at infinity of the chart
    /// `u = x1 / x0`.
    pub at_infinity: u32,
}

/// Takes `f(u) = F(1, u)` and the degree `d` of `F`.
pub fn line_intersection_count(f: &QPoly, degree: u32) -> Result<RootCount, ProjectiveError> {
    if f.is_zero() {
        return Err(ProjectiveError::ZeroForm);
    }
    let deg_f = f.degree().finite().expect("nonzero");
    if deg_f > degree as usize {
        return Err(ProjectiveError::DegreeTooLarge { got: deg_f, degree });
    }
    let mut multiplicities = Vec::new();
    if deg_f > 0 {
        for (s, m) in squarefree_decomposition(f)? {
            let k = s.degree().finite().expect("nonzero");
            multiplicities.extend(std::iter::repeat_n(m, k));
        }
    }
    let at_infinity = degree - deg_f as u32;
    if at_infinity > 0 {
        multiplicities.push(at_infinity);
    }
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    Ok(RootCount {
        degree,
        distinct: multiplicities.iter().all(|&m| m == 1),
        multiplicities,
        at_infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn strata() {
        let s = fixed_strata(&DiagAction::new(9, &[0, 0, 6, 4], 0).unwrap());
        let d: Vec<_> = s.iter().map(|x| x.description.as_str()).collect();
        assert_eq!(d, ["line {x2=x3=0}", "point (0,0,1,0)", "point (0,0,0,1)"]);
        let s = fixed_strata(&DiagAction::new(9, &[0, 0, 0, 3], 0).unwrap());
        assert_eq!(s[0].description, "plane {x3=0}");
        assert_eq!(s[1].description, "point (0,0,0,1)");
        let s = fixed_strata(&DiagAction::new(9, &[5, 5, 5, 5], 0).unwrap());
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].dim, 3);
    }

    #[test]
    fn sigma_11_family() {
        let act = DiagAction::new(9, &[0, 0, 3, 1], 0).unwrap();
        let ms = invariant_monomials(&act, 4).unwrap();
        assert_eq!(ms.len(), 7);
        assert!(ms.iter().all(|m| m.0[3] == 0));
        let screen = coordinate_point_singularity_screen(&ms, 3).unwrap();
        assert_eq!(screen[3].verdict, Screen::NecessarilySingular);
        assert!(screen[..3].iter().all(|p| p.verdict == Screen::Passed));
    }

    #[test]
    fn monomial_display_and_order() {
        let act = DiagAction::new(9, &[0, 3, 6, 1], 0).unwrap();
        let ms = invariant_monomials(&act, 4).unwrap();
        let s: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            s,
            [
                "x0^4",
                "x0^2*x1*x2",
                "x0*x1^3",
                "x0*x2^3",
                "x1^2*x2^2",
                "x2*x3^3"
            ]
        );
        assert!(coordinate_point_singularity_screen(&[mono(&[2, 0]), mono(&[1])], 1).is_err());
    }

    #[test]
    fn binary_forms() {
        let r = line_intersection_count(&parse_poly("u^4 - 3*u + 1", "u").unwrap(), 4).unwrap();
        assert_eq!(r.multiplicities, [1, 1, 1, 1]);
        assert!(r.distinct);
        let r = line_intersection_count(&parse_poly("(1-u)^2*(1+u)^2", "u").unwrap(), 4).unwrap();
        assert_eq!(r.multiplicities, [2, 2]);
        let r = line_intersection_count(&parse_poly("1", "u").unwrap(), 4).unwrap();
        assert_eq!((r.multiplicities.as_slice(), r.at_infinity), (&[4][..], 4));
        assert_eq!(
            line_intersection_count(&QPoly::zero("u"), 4),
            Err(ProjectiveError::ZeroForm)
        );
    }
}
