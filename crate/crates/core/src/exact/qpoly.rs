//! Dense polynomials over the rationals, low degree first, no trailing zeros.
//!
//! Used for cyclotomic moduli: computing Phi_e, checking divisibility, and
//! inverting residues via the extended Euclidean algorithm.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type QPoly = Vec<BigRational>;

pub fn trim(mut f: QPoly) -> QPoly {
    while f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

pub fn deg(f: &QPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(f: &QPoly, g: &QPoly) -> QPoly {
    let n = f.len().max(g.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(f.get(i).unwrap_or(&zero) + g.get(i).unwrap_or(&zero));
    }
    trim(out)
}

pub fn sub(f: &QPoly, g: &QPoly) -> QPoly {
    let n = f.len().max(g.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(f.get(i).unwrap_or(&zero) - g.get(i).unwrap_or(&zero));
    }
    trim(out)
}

pub fn mul(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

pub fn divrem(f: &QPoly, g: &QPoly) -> Result<(QPoly, QPoly)> {
    let gd = deg(g).ok_or(Error::DivisionByZero)?;
    let mut r = trim(f.clone());
    let fd = match deg(&r) {
        None => return Ok((vec![], vec![])),
        Some(fd) if fd < gd => return Ok((vec![], r)),
        Some(fd) => fd,
    };
    let mut q = vec![BigRational::zero(); fd - gd + 1];
    while let Some(rd) = deg(&r) {
        if rd < gd {
            break;
        }
        let c = &r[rd] / &g[gd];
        q[rd - gd] = c.clone();
        for k in 0..=gd {
            let t = &c * &g[k];
            r[rd - gd + k] -= t;
        }
        r = trim(r);
    }
    Ok((trim(q), r))
}

/// Extended Euclid: (g, s, t) with s*f + t*h = g, g monic when nonzero.
pub fn eea(f: &QPoly, h: &QPoly) -> Result<(QPoly, QPoly, QPoly)> {
    let mut r0 = trim(f.clone());
    let mut r1 = trim(h.clone());
    let mut s0: QPoly = vec![BigRational::one()];
    let mut s1: QPoly = vec![];
    let mut t0: QPoly = vec![];
    let mut t1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1)?;
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(d) = deg(&r0) {
        let lead = r0[d].clone();
        let scale = |v: &QPoly| trim(v.iter().map(|c| c / &lead).collect());
        return Ok((scale(&r0), scale(&s0), scale(&t0)));
    }
    Ok((r0, s0, t0))
}

pub fn from_ints(v: &[i64]) -> QPoly {
    trim(v.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
}

/// Cyclotomic polynomial Phi_e via repeated exact division of x^e - 1.
pub fn cyclotomic(e: u32) -> Result<QPoly> {
    if e == 0 {
        return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
    }
    let mut num = vec![BigRational::zero(); e as usize + 1];
    num[0] = -BigRational::one();
    num[e as usize] = BigRational::one();
    let mut phi = num;
    for d in 1..e {
        if e % d == 0 {
            let sub_phi = cyclotomic(d)?;
            let (q, r) = divrem(&phi, &sub_phi)?;
            debug_assert!(r.is_empty());
            phi = q;
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic(1).unwrap(), from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), from_ints(&[1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn eea_inverts_mod_phi3() {
        // (1 + zeta)^(-1) mod x^2+x+1: (1+x)(x) = x + x^2 = -1, so inverse is -x.
        let phi = cyclotomic(3).unwrap();
        let f = from_ints(&[1, 1]);
        let (g, _s, t) = eea(&phi, &f).unwrap();
        assert_eq!(g, from_ints(&[1]));
        let prod = divrem(&mul(&t, &f), &phi).unwrap().1;
        assert_eq!(prod, from_ints(&[1]));
    }
}
