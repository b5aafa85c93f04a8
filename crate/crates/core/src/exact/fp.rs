//! Arithmetic mod a prime p fitting in u64, plus just enough F_p[x] to
//! validate extension-field moduli and invert residues.
//!
//! Products go through u128, so no intermediate overflows for p < 2^63.

use crate::error::{Error, Result};

pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    addm(a, p - b % p, p)
}

pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::DivisionByZero);
    }
    // p prime, so Fermat.
    Ok(powm(a, p - 2, p))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64 with the standard witness set.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &FpPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn mul(f: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(a, b, p), p);
        }
    }
    trim(out)
}

/// Remainder of f by g; g need not be monic.
pub fn rem(f: &FpPoly, g: &FpPoly, p: u64) -> Result<FpPoly> {
    let gd = deg(g).ok_or(Error::DivisionByZero)?;
    let lead_inv = invm(g[gd], p)?;
    let mut r = trim(f.clone());
    while let Some(rd) = deg(&r) {
        if rd < gd {
            break;
        }
        let c = mulm(r[rd], lead_inv, p);
        for k in 0..=gd {
            r[rd - gd + k] = subm(r[rd - gd + k], mulm(c, g[k], p), p);
        }
        r = trim(r);
    }
    Ok(r)
}

pub fn gcd(f: &FpPoly, g: &FpPoly, p: u64) -> Result<FpPoly> {
    let mut a = trim(f.clone());
    let mut b = trim(g.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p)?;
        a = b;
        b = r;
    }
    // Monic normalization keeps gcds canonical.
    if let Some(d) = deg(&a) {
        let inv = invm(a[d], p)?;
        for c in a.iter_mut() {
            *c = mulm(*c, inv, p);
        }
    }
    Ok(a)
}

/// x^e mod f via square-and-multiply on polynomials.
pub fn x_powmod(e: u128, f: &FpPoly, p: u64) -> Result<FpPoly> {
    let mut result = vec![1u64];
    let mut base = rem(&vec![0, 1], f, p)?;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base, p), f, p)?;
        }
        base = rem(&mul(&base, &base, p), f, p)?;
        e >>= 1;
    }
    Ok(result)
}

/// Irreducibility over F_p: f monic of degree d is irreducible iff
/// x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1 for every prime q | d.
pub fn is_irreducible(f: &FpPoly, p: u64) -> Result<bool> {
    let d = match deg(f) {
        Some(0) | None => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) => d,
    };
    let mut prime_divs = vec![];
    let mut m = d;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            prime_divs.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    let pd = (p as u128).checked_pow(d as u32).ok_or_else(|| {
        Error::InvalidInput("modulus degree too large for irreducibility test".into())
    })?;
    let xq = x_powmod(pd, f, p)?;
    if !sub_poly(&xq, &vec![0, 1], p).is_empty() {
        return Ok(false);
    }
    for q in prime_divs {
        let e = (p as u128)
            .checked_pow((d / q) as u32)
            .ok_or_else(|| Error::InvalidInput("degree overflow".into()))?;
        let xe = x_powmod(e, f, p)?;
        let diff = sub_poly(&xe, &vec![0, 1], p);
        let g = gcd(&diff, f, p)?;
        if deg(&g) != Some(0) && !g.is_empty() {
            return Ok(false);
        }
        if g.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn sub_poly(f: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out[i] = subm(a, b, p);
    }
    trim(out)
}

/// Extended Euclid: returns (g, s, t) with s*f + t*h = g, g monic.
pub fn eea(f: &FpPoly, h: &FpPoly, p: u64) -> Result<(FpPoly, FpPoly, FpPoly)> {
    let mut r0 = trim(f.clone());
    let mut r1 = trim(h.clone());
    let mut s0: FpPoly = vec![1];
    let mut s1: FpPoly = vec![];
    let mut t0: FpPoly = vec![];
    let mut t1: FpPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p)?;
        let s = sub_poly(&s0, &mul(&q, &s1, p), p);
        let t = sub_poly(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(d) = deg(&r0) {
        let inv = invm(r0[d], p)?;
        let scale = |v: &FpPoly| trim(v.iter().map(|&c| mulm(c, inv, p)).collect());
        return Ok((scale(&r0), scale(&s0), scale(&t0)));
    }
    Ok((r0, s0, t0))
}

pub fn divrem(f: &FpPoly, g: &FpPoly, p: u64) -> Result<(FpPoly, FpPoly)> {
    let gd = deg(g).ok_or(Error::DivisionByZero)?;
    let lead_inv = invm(g[gd], p)?;
    let mut r = trim(f.clone());
    let fd = match deg(&r) {
        None => return Ok((vec![], vec![])),
        Some(fd) if fd < gd => return Ok((vec![], r)),
        Some(fd) => fd,
    };
    let mut q = vec![0u64; fd - gd + 1];
    while let Some(rd) = deg(&r) {
        if rd < gd {
            break;
        }
        let c = mulm(r[rd], lead_inv, p);
        q[rd - gd] = c;
        for k in 0..=gd {
            r[rd - gd + k] = subm(r[rd - gd + k], mulm(c, g[k], p), p);
        }
        r = trim(r);
    }
    Ok((trim(q), r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse_roundtrip() {
        for p in [2u64, 3, 5, 7, 13, 101] {
            for a in 1..p.min(40) {
                let inv = invm(a, p).unwrap();
                assert_eq!(mulm(a, inv, p), 1);
            }
        }
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (2..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn irreducibility_over_f2_and_f3() {
        // x^2 + x + 1 irreducible over F_2, x^2 + 1 is not.
        assert!(is_irreducible(&vec![1, 1, 1], 2).unwrap());
        assert!(!is_irreducible(&vec![1, 0, 1], 2).unwrap());
        // x^2 + 1 irreducible over F_3 (-1 is not a square mod 3).
        assert!(is_irreducible(&vec![1, 0, 1], 3).unwrap());
        // x^3 - x + 1 irreducible over F_3.
        assert!(is_irreducible(&vec![1, 2, 0, 1], 3).unwrap());
        assert!(!is_irreducible(&vec![5, 0, 1], 7).unwrap()); // x^2+5 = (x-3)(x+3) mod 7
    }

    #[test]
    fn eea_bezout_identity() {
        let f = vec![1, 1, 1]; // x^2+x+1
        let h = vec![1, 1]; // x+1
        let (g, s, t) = eea(&f, &h, 2).unwrap();
        assert_eq!(g, vec![1]);
        let residue = sub_poly(&sub_poly(&g, &mul(&s, &f, 2), 2), &mul(&t, &h, 2), 2);
        assert!(residue.is_empty());
    }
}
