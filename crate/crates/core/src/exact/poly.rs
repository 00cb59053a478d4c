use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_to_string, ExactError, Rat};

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `var^i`. Trailing zeros are stripped on
/// construction, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rat>,
    var: String,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>, var: impl Into<String>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly {
            coeffs,
            var: var.into(),
        }
    }

    pub fn from_ints(coeffs: &[i64], var: impl Into<String>) -> Self {
        QPoly::new(coeffs.iter().map(|&c| super::rat(c)).collect(), var)
    }

    pub fn zero(var: impl Into<String>) -> Self {
        QPoly::new(Vec::new(), var)
    }

    pub fn one(var: impl Into<String>) -> Self {
        QPoly::constant(Rat::one(), var)
    }

    pub fn constant(c: Rat, var: impl Into<String>) -> Self {
        QPoly::new(vec![c], var)
    }

    /// `c * var^deg`
    pub fn monomial(c: Rat, deg: usize, var: impl Into<String>) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        QPoly::new(coeffs, var)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::new(
            self.coeffs.iter().map(|a| a * c).collect(),
            self.var.clone(),
        )
    }

    pub fn derivative(&self) -> QPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        QPoly::new(coeffs, self.var.clone())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut result = QPoly::one(self.var.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Variable shared by `self` and `other`. A constant adopts the variable of
    /// the other operand.
    pub fn common_var(&self, other: &QPoly) -> Result<String, ExactError> {
        if self.var == other.var || other.is_constant() {
            Ok(self.var.clone())
        } else if self.is_constant() {
            Ok(other.var.clone())
        } else {
            Err(ExactError::VariableMismatch(
                self.var.clone(),
                other.var.clone(),
            ))
        }
    }

    pub fn checked_add(&self, other: &QPoly) -> Result<QPoly, ExactError> {
        let var = self.common_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(QPoly::new(coeffs, var))
    }

    pub fn checked_sub(&self, other: &QPoly) -> Result<QPoly, ExactError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &QPoly) -> Result<QPoly, ExactError> {
        let var = self.common_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(QPoly::zero(var));
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(QPoly::new(coeffs, var))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly), ExactError> {
        let var = self.common_var(divisor)?;
        let lc = divisor.leading().ok_or(ExactError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::zero(var.clone()), QPoly::new(rem, var)));
        }
        let inv = lc.recip();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quot, var.clone()), QPoly::new(rem, var)))
    }

    pub fn rem(&self, divisor: &QPoly) -> Result<QPoly, ExactError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<Option<QPoly>, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Multiplicity of `factor` in `self`; `None` when `self` is zero.
    /// `factor` must be non-constant.
    pub fn multiplicity(&self, factor: &QPoly) -> Result<Option<u32>, ExactError> {
        if factor.is_constant() {
            return Err(ExactError::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(None);
        }
        let mut count = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor)? {
            cur = q;
            count += 1;
        }
        Ok(Some(count))
    }
}

fn expect_same(r: Result<QPoly, ExactError>) -> QPoly {
    r.unwrap_or_else(|e| panic!("{e}"))
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        expect_same(self.checked_add(rhs))
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        expect_same(self.checked_sub(rhs))
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        expect_same(self.checked_mul(rhs))
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var.clone())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, i),
            };
            match (abs.is_one(), var.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{var}")?,
                (false, true) => write!(f, "{}", rat_to_string(&abs))?,
                (false, false) => write!(f, "{}*{var}", rat_to_string(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down. Used only to give
/// deterministic output order.
impl Ord for QPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.var.cmp(&other.var))
    }
}
