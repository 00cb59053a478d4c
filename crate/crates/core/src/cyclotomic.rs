//! Exact arithmetic in the cyclotomic field Q(ζ_n).
//!
//! Elements are stored in the power basis `1, ζ, ..., ζ^(φ(n)-1)` and always
//! reduced modulo the n-th cyclotomic polynomial, so two elements are equal
//! iff their coordinate vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rat_to_string, QPoly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic orders differ: {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero in Q(ζ_{0})")]
    DivisionByZero(u32),
    #[error("exponent {k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u32 },
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// The n-th cyclotomic polynomial in the variable `x`.
pub fn cyclotomic_polynomial(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d
    let mut p = QPoly::monomial(Rat::one(), n as usize, "x");
    p = &p - &QPoly::one("x");
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p
            .exact_div(&cyclotomic_polynomial(d))
            .expect("same variable")
            .expect("Φ_d divides x^n - 1");
    }
    cache.lock().expect("cache poisoned").insert(n, p.clone());
    p
}

/// An element of Q(ζ_n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        CycNum {
            order: n,
            coeffs: vec![Rat::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u32) -> Self {
        CycNum::rational(n, Rat::one())
    }

    pub fn rational(n: u32, r: Rat) -> Self {
        let mut z = CycNum::zero(n);
        z.coeffs[0] = r;
        z
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φ_n.
    pub fn from_poly(n: u32, p: &QPoly) -> Self {
        let modulus = cyclotomic_polynomial(n);
        let r = p
            .clone()
            .with_var("x")
            .rem(&modulus)
            .expect("same variable");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(euler_phi(n) as usize, Rat::zero());
        CycNum { order: n, coeffs }
    }

    /// Builds an element from power-basis coordinates; missing coordinates
    /// are zero and extra ones are reduced.
    pub fn from_coords(n: u32, coords: Vec<Rat>) -> Self {
        CycNum::from_poly(n, &QPoly::new(coords, "x"))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The element as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn to_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone(), "x")
    }

    fn same_order(&self, other: &CycNum) -> Result<(), CycError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.same_order(other)?;
        Ok(CycNum::from_poly(
            self.order,
            &(&self.to_poly() * &other.to_poly()),
        ))
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_n.
    pub fn inverse(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.order));
        }
        // Invariant: r_i = s_i * a (mod Φ_n).
        let a = self.to_poly();
        let (mut r0, mut r1) = (cyclotomic_polynomial(self.order), a);
        let (mut s0, mut s1) = (QPoly::zero("x"), QPoly::one("x"));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("same variable");
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_n is irreducible, so the last nonzero remainder is a constant.
        debug_assert!(r0.is_constant());
        let c = r0.leading().expect("nonzero").recip();
        Ok(CycNum::from_poly(self.order, &s0.scale(&c)))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> CycNum {
        (0..e).fold(CycNum::one(self.order), |acc, _| &acc * self)
    }

    /// Image under the field automorphism ζ ↦ ζ^k.
    pub fn galois_conjugate(&self, k: i64) -> Result<CycNum, CycError> {
        let n = i64::from(self.order);
        if k.gcd(&n) != 1 {
            return Err(CycError::NotCoprime { k, n: self.order });
        }
        let mut acc = CycNum::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &zeta_pow(self.order, k * i as i64).scale(c);
            }
        }
        Ok(acc)
    }

    /// Product of all Galois conjugates; always rational.
    pub fn norm(&self) -> Rat {
        let n = i64::from(self.order);
        let prod = (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| self.galois_conjugate(k).expect("coprime"))
            .fold(CycNum::one(self.order), |acc, x| &acc * &x);
        prod.as_rational().expect("norm is rational")
    }

    /// Sum of all Galois conjugates; always rational.
    pub fn trace(&self) -> Rat {
        let n = i64::from(self.order);
        let sum = (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| self.galois_conjugate(k).expect("coprime"))
            .fold(CycNum::zero(self.order), |acc, x| &acc + &x);
        sum.as_rational().expect("trace is rational")
    }
}

/// ζ_n^k in the power basis (k taken mod n).
pub fn zeta_pow(n: u32, k: i64) -> CycNum {
    let e = k.rem_euclid(i64::from(n)) as usize;
    CycNum::from_poly(n, &QPoly::monomial(Rat::one(), e, "x"))
}

/// Power-basis coordinates; the element is rational iff all entries after the
/// first vanish.
pub fn rational_coordinates(a: &CycNum) -> Vec<Rat> {
    a.coeffs.clone()
}

fn expect<T>(r: Result<T, CycError>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        expect(self.checked_add(rhs))
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        expect(self.checked_sub(rhs))
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        expect(self.checked_mul(rhs))
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.scale(&-Rat::one())
    }
}

/// Symbolic form, e.g. `-1 - ζ^3`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => "ζ".to_string(),
                _ => format!("ζ^{i}"),
            };
            match (abs.is_one(), z.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{z}")?,
                (false, true) => write!(f, "{}", rat_to_string(&abs))?,
                (false, false) => write!(f, "{}*{z}", rat_to_string(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<{}>({})", self.order, self)
    }
}
