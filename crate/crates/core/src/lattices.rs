//! Integer lattices given by Gram matrices: the hyperbolic plane `U`, its
//! rescalings `U(λ)`, and the negative definite root lattices `A_n`, `E_6`,
//! `E_8`, combined by orthogonal direct sums.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unsupported lattice atom `{0}`")]
    UnsupportedAtom(String),
    #[error("lattice expression parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("Gram matrix is empty")]
    Empty,
    #[error("Gram matrix is singular")]
    Singular,
}

/// Symbolic lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeExpr {
    /// Hyperbolic plane.
    U,
    /// Negative definite root lattice A_n.
    A(u32),
    E6,
    E8,
    /// Form multiplied by a nonzero integer.
    Scaled(Box<LatticeExpr>, i64),
    /// Orthogonal direct sum.
    Sum(Vec<LatticeExpr>),
    /// k-fold orthogonal direct sum of one summand.
    Power(Box<LatticeExpr>, u32),
}

impl LatticeExpr {
    pub fn parse(text: &str) -> Result<LatticeExpr, LatticeError> {
        let mut p = ExprParser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            len: text.len(),
        };
        let e = p.sum()?;
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl Serialize for LatticeExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LatticeExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        LatticeExpr::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LatticeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeExpr::U => write!(f, "U"),
            LatticeExpr::A(n) => write!(f, "A{n}"),
            LatticeExpr::E6 => write!(f, "E6"),
            LatticeExpr::E8 => write!(f, "E8"),
            LatticeExpr::Scaled(inner, l) => match **inner {
                LatticeExpr::Sum(_) => write!(f, "({inner})({l})"),
                _ => write!(f, "{inner}({l})"),
            },
            LatticeExpr::Sum(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join("+"))
            }
            LatticeExpr::Power(inner, k) => match **inner {
                LatticeExpr::Sum(_) => write!(f, "({inner})^{k}"),
                _ => write!(f, "{inner}^{k}"),
            },
        }
    }
}

struct ExprParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> LatticeError {
        LatticeError::Parse {
            offset: self.chars.get(self.pos).map_or(self.len, |&(o, _)| o),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, LatticeError> {
        let neg = self.eat('-');
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        let v: i64 = s.parse().map_err(|_| self.error("expected an integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn sum(&mut self) -> Result<LatticeExpr, LatticeError> {
        let mut parts = vec![self.term()?];
        while self.eat('+') || self.eat('⊕') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            LatticeExpr::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<LatticeExpr, LatticeError> {
        let mut e = self.primary()?;
        if self.eat('(') {
            let l = self.integer()?;
            if l == 0 {
                return Err(self.error("scaling factor must be nonzero"));
            }
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            e = LatticeExpr::Scaled(Box::new(e), l);
        }
        if self.eat('^') {
            let k = self.integer()?;
            if k < 1 {
                return Err(self.error("exponent must be at least 1"));
            }
            e = LatticeExpr::Power(Box::new(e), k as u32);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<LatticeExpr, LatticeError> {
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        let start = self.pos;
        let mut name = String::new();
        if let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            name.push(c);
            self.pos += 1;
        } else {
            return Err(self.error("expected a lattice atom"));
        }
        self.eat('_');
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            name.push(c);
            self.pos += 1;
        }
        match name.as_str() {
            "U" => Ok(LatticeExpr::U),
            "E6" => Ok(LatticeExpr::E6),
            "E8" => Ok(LatticeExpr::E8),
            s if s.starts_with('A') && s.len() > 1 => {
                let n: u32 = s[1..].parse().map_err(|_| {
                    self.pos = start;
                    LatticeError::UnsupportedAtom(name.clone())
                })?;
                if n == 0 {
                    return Err(LatticeError::UnsupportedAtom(name));
                }
                Ok(LatticeExpr::A(n))
            }
            _ => Err(LatticeError::UnsupportedAtom(name)),
        }
    }
}

/// Symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gram {
    entries: Vec<Vec<BigInt>>,
}

impl Gram {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Gram, LatticeError> {
        let n = entries.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(Gram { entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Gram, LatticeError> {
        Gram::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("small entry")).collect())
            .collect()
    }

    /// Orthogonal direct sum.
    pub fn block_sum(&self, other: &Gram) -> Gram {
        let (a, b) = (self.dim(), other.dim());
        let mut entries = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            entries[i][..a].clone_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            entries[a + i][a..].clone_from_slice(&other.entries[i]);
        }
        Gram { entries }
    }

    fn scaled(&self, l: i64) -> Gram {
        let l = BigInt::from(l);
        Gram {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * &l).collect())
                .collect(),
        }
    }
}

fn dynkin(nodes: usize, edges: &[(usize, usize)]) -> Gram {
    let mut m = vec![vec![0i64; nodes]; nodes];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    Gram::from_i64(&m).expect("symmetric by construction")
}

/// Concrete Gram matrix, block diagonal in the order of the expression.
pub fn gram(expr: &LatticeExpr) -> Result<Gram, LatticeError> {
    match expr {
        LatticeExpr::U => Gram::from_i64(&[vec![0, 1], vec![1, 0]]),
        LatticeExpr::A(n) => {
            let n = *n as usize;
            if n == 0 {
                return Err(LatticeError::UnsupportedAtom("A0".into()));
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Ok(dynkin(n, &edges))
        }
        // chain 0-1-2-3-4 with node 5 on the middle node
        LatticeExpr::E6 => Ok(dynkin(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])),
        // chain 0-...-6 with node 7 on node 4
        LatticeExpr::E8 => Ok(dynkin(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)],
        )),
        LatticeExpr::Scaled(inner, l) => Ok(gram(inner)?.scaled(*l)),
        LatticeExpr::Sum(parts) => {
            let mut it = parts.iter();
            let first = it.next().ok_or(LatticeError::Empty)?;
            it.try_fold(gram(first)?, |acc, p| Ok(acc.block_sum(&gram(p)?)))
        }
        LatticeExpr::Power(inner, k) => {
            let g = gram(inner)?;
            Ok((1..*k).fold(g.clone(), |acc, _| acc.block_sum(&g)))
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(g: &Gram) -> BigInt {
    let n = g.dim();
    let mut m = g.entries.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * prev
}

/// Diagonal of a rational congruence diagonalization `P^T G P = D`.
///
/// When every remaining diagonal entry vanishes but some off-diagonal entry
/// `g_ij` does not, basis vector `e_i` is replaced by `e_i + e_j`, which puts
/// `2 g_ij` on the diagonal (a hyperbolic pivot).
pub fn congruence_diagonal(g: &Gram) -> Vec<Rat> {
    let n = g.dim();
    let mut m: Vec<Vec<Rat>> = g
        .entries
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !m[i][i].is_zero()) {
            m.swap(k, p);
            for row in m.iter_mut() {
                row.swap(k, p);
            }
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_zero())
        {
            // e_i += e_j
            for c in 0..n {
                let v = m[j][c].clone();
                m[i][c] += v;
            }
            for r in 0..n {
                let v = m[r][j].clone();
                m[r][i] += v;
            }
            m.swap(k, i);
            for row in m.iter_mut() {
                row.swap(k, i);
            }
        } else {
            diag.extend(std::iter::repeat_n(Rat::zero(), n - k));
            break;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for c in k..n {
                let v = &f * &m[k][c];
                m[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &m[r][k];
                m[r][i] -= v;
            }
        }
        diag.push(pivot);
    }
    diag
}

/// Signature `(positive, negative)`; zeros are `dim - p - q`.
pub fn signature(g: &Gram) -> (usize, usize) {
    let d = congruence_diagonal(g);
    let p = d.iter().filter(|x| x.is_positive()).count();
    let q = d.iter().filter(|x| x.is_negative()).count();
    (p, q)
}

pub fn rank(g: &Gram) -> usize {
    congruence_diagonal(g)
        .iter()
        .filter(|x| !x.is_zero())
        .count()
}

pub fn is_even(g: &Gram) -> bool {
    (0..g.dim()).all(|i| g.entries[i][i].is_even())
}

/// Invariant factors `d_1 | d_2 | ... | d_n` (all positive) by elementary
/// integer row and column operations.
pub fn smith_normal_form(g: &Gram) -> Result<Vec<BigInt>, LatticeError> {
    if determinant(g).is_zero() {
        return Err(LatticeError::Singular);
    }
    let n = g.dim();
    let mut a = g.entries.clone();
    let mut factors = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let (pi, pj) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
                .expect("nonsingular");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..n {
                let q = &a[i][t] / &p;
                if !q.is_zero() {
                    for c in t..n {
                        let v = &q * &a[t][c];
                        a[i][c] -= v;
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = &a[t][j] / &p;
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    for c in t..n {
                        let v = a[i][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    Ok(factors)
}

/// Nontrivial invariant factors: the discriminant group is `⊕ Z/d`.
pub fn discriminant_group(g: &Gram) -> Result<Vec<BigInt>, LatticeError> {
    Ok(smith_normal_form(g)?
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

/// Summary of the invariants of one lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub expr: String,
    pub rank: usize,
    pub signature: (usize, usize),
    #[serde(serialize_with = "ser_bigint")]
    pub determinant: BigInt,
    #[serde(serialize_with = "ser_bigints")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub discriminant_group: Vec<BigInt>,
    pub even: bool,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn ser_bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&BigIntJson(x))?;
    }
    seq.end()
}

struct BigIntJson<'a>(&'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_bigint(self.0, s)
    }
}

pub fn invariants(expr: &LatticeExpr) -> Result<LatticeInvariants, LatticeError> {
    let g = gram(expr)?;
    let det = determinant(&g);
    let (invariant_factors, discriminant_group) = if det.is_zero() {
        (Vec::new(), Vec::new())
    } else {
        let f = smith_normal_form(&g)?;
        let d = f.iter().filter(|d| !d.is_one()).cloned().collect();
        (f, d)
    };
    Ok(LatticeInvariants {
        expr: expr.to_string(),
        rank: rank(&g),
        signature: signature(&g),
        determinant: det,
        invariant_factors,
        discriminant_group,
        even: is_even(&g),
    })
}

/// Check of one invariant-lattice row against `rank = 22 - 2m`, hyperbolic
/// signature and evenness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeRowCheck {
    pub id: String,
    pub m: u32,
    pub invariants: LatticeInvariants,
    pub problems: Vec<String>,
}

impl LatticeRowCheck {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn check_lattice_row(
    id: &str,
    expr: &LatticeExpr,
    m: u32,
) -> Result<LatticeRowCheck, LatticeError> {
    let inv = invariants(expr)?;
    let mut problems = Vec::new();
    let expected_rank = 22 - 2 * m as usize;
    if inv.rank != expected_rank {
        problems.push(format!("rank {} != 22 - 2m = {expected_rank}", inv.rank));
    }
    if inv.rank != inv.signature.0 + inv.signature.1 {
        problems.push("degenerate form".to_string());
    }
    if inv.signature != (1, inv.rank.saturating_sub(1)) {
        problems.push(format!("signature {:?} is not hyperbolic", inv.signature));
    }
    if !inv.even {
        problems.push("not even".to_string());
    }
    Ok(LatticeRowCheck {
        id: id.to_string(),
        m,
        invariants: inv,
        problems,
    })
}

/// Checks the invariant-lattice column of the bundled τ-case table.
pub fn verify_table1_lattices() -> Result<Vec<LatticeRowCheck>, LatticeError> {
    crate::dataset::bundled()
        .table2
        .iter()
        .map(|tc| check_lattice_row(&tc.id, &tc.lattice, tc.m))
        .collect()
}
