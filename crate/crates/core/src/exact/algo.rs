use num_traits::{One, Zero};

use super::{ExactError, QPoly, Rat};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &QPoly, q: &QPoly) -> Result<QPoly, ExactError> {
    let var = p.common_var(q)?;
    let mut a = p.clone().with_var(var.clone());
    let mut b = q.clone().with_var(var);
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Yun's squarefree decomposition.
///
/// Returns `(s_i, m_i)` with each `s_i` monic, squarefree and non-constant,
/// pairwise coprime, multiplicities strictly increasing, and
/// `p = lc(p) * prod s_i^m_i`.
pub fn squarefree_decomposition(p: &QPoly) -> Result<Vec<(QPoly, u32)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let f = p.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = exact(&f, &a0)?;
    let c = exact(&df, &a0)?;
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        let next_b = exact(&b, &a)?;
        let next_c = exact(&d, &a)?;
        d = &next_c - &next_b.derivative();
        b = next_b;
        if !a.is_constant() {
            out.push((a, mult));
        }
        mult += 1;
    }
    Ok(out)
}

fn exact(num: &QPoly, den: &QPoly) -> Result<QPoly, ExactError> {
    let (q, r) = num.div_rem(den)?;
    debug_assert!(r.is_zero(), "inexact division {num} / {den}");
    Ok(q)
}

/// Gcd-free basis of a family of nonzero polynomials: pairwise coprime,
/// squarefree, monic, non-constant polynomials such that every input is a
/// constant times a product of powers of basis elements.
pub fn coprime_refinement(ps: &[QPoly]) -> Result<Vec<QPoly>, ExactError> {
    let mut basis: Vec<QPoly> = Vec::new();
    for p in ps {
        if let Some(first) = ps.first() {
            p.common_var(first)?;
        }
        for (s, _) in squarefree_decomposition(p)? {
            basis.push(s);
        }
    }
    'refine: loop {
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let g = poly_gcd(&basis[i], &basis[j])?;
                if g.is_constant() {
                    continue;
                }
                let u = exact(&basis[i], &g)?;
                let v = exact(&basis[j], &g)?;
                basis.swap_remove(j);
                basis.swap_remove(i);
                basis.extend([g, u, v].into_iter().filter(|x| !x.is_constant()));
                continue 'refine;
            }
        }
        break;
    }
    basis.sort();
    Ok(basis)
}

fn rat_pow(base: &Rat, e: i64) -> Rat {
    let mut r = Rat::one();
    for _ in 0..e.unsigned_abs() {
        r *= base;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `lc(d)^(deg n - deg d + 1) * n mod d`
fn pseudo_rem(n: &QPoly, d: &QPoly) -> Result<QPoly, ExactError> {
    let delta = n.degree().finite().unwrap_or(0) as i64 - d.degree().finite().unwrap_or(0) as i64;
    let lc = d.leading().ok_or(ExactError::DivisionByZero)?;
    n.scale(&rat_pow(lc, delta + 1)).rem(d)
}

/// Resultant by the subresultant pseudo-remainder sequence, with the usual
/// convention `res(p, q) = lc(p)^deg(q) * prod_{p(x)=0} q(x)`. Zero iff `p`
/// and `q` share a root (or one of them is zero).
pub fn resultant(p: &QPoly, q: &QPoly) -> Result<Rat, ExactError> {
    let var = p.common_var(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(Rat::zero());
    }
    let deg = |x: &QPoly| x.degree().finite().unwrap_or(0) as i64;
    let (mut a, mut b) = (p.clone().with_var(var.clone()), q.clone().with_var(var));
    let mut sign = Rat::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Rat::one();
    let mut h = Rat::one();
    while deg(&b) > 0 {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b)?;
        if r.is_zero() {
            return Ok(Rat::zero());
        }
        a = b;
        b = r.scale(&(&g * rat_pow(&h, delta)).recip());
        g = a.leading().cloned().expect("nonzero");
        h = rat_pow(&h, 1 - delta) * rat_pow(&g, delta);
    }
    let lb = b.leading().cloned().expect("nonzero");
    h = rat_pow(&h, 1 - deg(&a)) * rat_pow(&lb, deg(&a));
    Ok(sign * h)
}
