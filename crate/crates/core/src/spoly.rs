//! Dense polynomials with scalar coefficients, low degree first and always
//! trimmed. Includes complete factorization over finite fields (squarefree
//! split, distinct degree, Cantor-Zassenhaus with a seeded generator) and a
//! deliberately partial root finder for characteristic zero: linear and
//! quadratic factors plus a candidate grid of small rationals times roots of
//! unity. That is all the splitting schedule needs; anything deeper reports
//! FactorizationIncomplete rather than guessing.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, FieldKind, Scalar};

pub type SPoly = Vec<Scalar>;

pub fn trim(ctx: &FieldCtx, mut f: SPoly) -> SPoly {
    while f.last().map(|c| ctx.is_zero(c)).unwrap_or(false) {
        f.pop();
    }
    f
}

pub fn deg(f: &SPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn x(ctx: &FieldCtx) -> SPoly {
    vec![ctx.zero(), ctx.one()]
}

pub fn constant(ctx: &FieldCtx, c: Scalar) -> SPoly {
    trim(ctx, vec![c])
}

pub fn add(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<SPoly> {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| ctx.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| ctx.zero());
        out.push(ctx.add(&a, &b)?);
    }
    Ok(trim(ctx, out))
}

pub fn sub(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<SPoly> {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| ctx.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| ctx.zero());
        out.push(ctx.sub(&a, &b)?);
    }
    Ok(trim(ctx, out))
}

pub fn mul(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<SPoly> {
    if f.is_empty() || g.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![ctx.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ctx.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            let t = ctx.mul(a, b)?;
            out[i + j] = ctx.add(&out[i + j], &t)?;
        }
    }
    Ok(trim(ctx, out))
}

pub fn scale(ctx: &FieldCtx, f: &SPoly, s: &Scalar) -> Result<SPoly> {
    let mut out = Vec::with_capacity(f.len());
    for c in f {
        out.push(ctx.mul(c, s)?);
    }
    Ok(trim(ctx, out))
}

pub fn divrem(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<(SPoly, SPoly)> {
    let gd = deg(g).ok_or(Error::DivisionByZero)?;
    let lead_inv = ctx.inv(&g[gd])?;
    let mut rem = f.clone();
    if rem.len() <= gd {
        return Ok((Vec::new(), trim(ctx, rem)));
    }
    let mut quo = vec![ctx.zero(); rem.len() - gd];
    while rem.len() > gd {
        let k = rem.len() - 1 - gd;
        let c = ctx.mul(rem.last().unwrap(), &lead_inv)?;
        if !ctx.is_zero(&c) {
            quo[k] = c.clone();
            for i in 0..=gd {
                let t = ctx.mul(&g[i], &c)?;
                rem[k + i] = ctx.sub(&rem[k + i], &t)?;
            }
        }
        rem.pop();
        while rem.last().map(|v| ctx.is_zero(v)).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() <= gd {
            break;
        }
    }
    Ok((trim(ctx, quo), rem))
}

pub fn monic(ctx: &FieldCtx, f: &SPoly) -> Result<SPoly> {
    let d = deg(f).ok_or(Error::DivisionByZero)?;
    scale(ctx, f, &ctx.inv(&f[d])?)
}

pub fn gcd(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<SPoly> {
    let mut a = trim(ctx, f.clone());
    let mut b = trim(ctx, g.clone());
    while !b.is_empty() {
        let (_, r) = divrem(ctx, &a, &b)?;
        a = b;
        b = r;
    }
    if a.is_empty() {
        Ok(a)
    } else {
        monic(ctx, &a)
    }
}

/// Extended Euclid: (g, u, v) with u f + v g_in = g, g monic (or zero).
pub fn ext_gcd(ctx: &FieldCtx, f: &SPoly, g: &SPoly) -> Result<(SPoly, SPoly, SPoly)> {
    let mut r0 = trim(ctx, f.clone());
    let mut r1 = trim(ctx, g.clone());
    let mut u0 = vec![ctx.one()];
    let mut u1: SPoly = Vec::new();
    let mut v0: SPoly = Vec::new();
    let mut v1 = vec![ctx.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(ctx, &r0, &r1)?;
        let nu = sub(ctx, &u0, &mul(ctx, &q, &u1)?)?;
        let nv = sub(ctx, &v0, &mul(ctx, &q, &v1)?)?;
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, nu);
        v0 = std::mem::replace(&mut v1, nv);
    }
    if r0.is_empty() {
        return Ok((r0, u0, v0));
    }
    let lead = r0[r0.len() - 1].clone();
    let inv = ctx.inv(&lead)?;
    Ok((
        scale(ctx, &r0, &inv)?,
        scale(ctx, &u0, &inv)?,
        scale(ctx, &v0, &inv)?,
    ))
}

pub fn derivative(ctx: &FieldCtx, f: &SPoly) -> Result<SPoly> {
    if f.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(ctx.mul(c, &ctx.from_int(i as i64))?);
    }
    Ok(trim(ctx, out))
}

pub fn eval(ctx: &FieldCtx, f: &SPoly, at: &Scalar) -> Result<Scalar> {
    let mut acc = ctx.zero();
    for c in f.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, at)?, c)?;
    }
    Ok(acc)
}

/// base^e mod m by binary exponentiation; e may be astronomically large.
pub fn pow_mod(ctx: &FieldCtx, base: &SPoly, e: &BigUint, m: &SPoly) -> Result<SPoly> {
    let mut acc = vec![ctx.one()];
    let (_, mut b) = divrem(ctx, base, m)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = divrem(ctx, &mul(ctx, &acc, &b)?, m)?.1;
        }
        if i + 1 < bits {
            b = divrem(ctx, &mul(ctx, &b, &b)?, m)?.1;
        }
    }
    Ok(acc)
}

/// Field size as a big integer, for finite fields.
fn field_size(ctx: &FieldCtx) -> Result<BigUint> {
    let p = ctx.characteristic();
    if p == 0 {
        return Err(Error::InvalidInput("field is infinite".into()));
    }
    Ok(BigUint::from(p).pow(ctx.degree() as u32))
}

// ----------------------------------------------------------------------
// factorization over finite fields

/// Squarefree decomposition of a monic polynomial over a finite field:
/// pairwise coprime squarefree parts with their multiplicities.
pub fn squarefree_parts(ctx: &FieldCtx, f: &SPoly) -> Result<Vec<(SPoly, usize)>> {
    let p = ctx.characteristic();
    if p == 0 {
        return Err(Error::InvalidInput("squarefree split implemented for finite fields".into()));
    }
    let f = monic(ctx, f)?;
    if deg(&f) == Some(0) {
        return Ok(Vec::new());
    }
    let fd = derivative(ctx, &f)?;
    let mut out = Vec::new();
    if fd.is_empty() {
        // f = g(x^p); take the p-th root of each coefficient
        let g = pth_root_poly(ctx, &f)?;
        for (h, m) in squarefree_parts(ctx, &g)? {
            out.push((h, m * p as usize));
        }
        return Ok(out);
    }
    let mut c = gcd(ctx, &f, &fd)?;
    let mut w = divrem(ctx, &f, &c)?.0;
    let mut i = 1usize;
    while deg(&w) != Some(0) {
        let y = gcd(ctx, &w, &c)?;
        let z = divrem(ctx, &w, &y)?.0;
        if deg(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        w = y;
        c = divrem(ctx, &c, &w)?.0;
        i += 1;
    }
    if deg(&c).unwrap_or(0) > 0 {
        let g = pth_root_poly(ctx, &c)?;
        for (h, m) in squarefree_parts(ctx, &g)? {
            out.push((h, m * p as usize));
        }
    }
    Ok(out)
}

/// For f = g(x^p) over F_q, recover g; the p-th root of a coefficient is
/// c^(q/p) since Frobenius is a bijection.
fn pth_root_poly(ctx: &FieldCtx, f: &SPoly) -> Result<SPoly> {
    let p = ctx.characteristic();
    let q = field_size(ctx)?;
    let e = &q / BigUint::from(p);
    let mut out = Vec::new();
    for (i, c) in f.iter().enumerate() {
        if i % p as usize == 0 {
            out.push(pow_scalar_big(ctx, c, &e)?);
        } else if !ctx.is_zero(c) {
            return Err(Error::InvalidInput("derivative vanished but f is not in x^p".into()));
        }
    }
    Ok(trim(ctx, out))
}

fn pow_scalar_big(ctx: &FieldCtx, c: &Scalar, e: &BigUint) -> Result<Scalar> {
    let mut acc = ctx.one();
    let mut b = c.clone();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = ctx.mul(&acc, &b)?;
        }
        if i + 1 < bits {
            b = ctx.mul(&b, &b)?;
        }
    }
    Ok(acc)
}

/// Distinct-degree split of a monic squarefree polynomial: (product, d)
/// pairs where every irreducible factor of the product has degree d.
pub fn distinct_degree(ctx: &FieldCtx, f: &SPoly) -> Result<Vec<(SPoly, usize)>> {
    let q = field_size(ctx)?;
    let mut rest = monic(ctx, f)?;
    let mut h = x(ctx);
    let mut out = Vec::new();
    let mut d = 0usize;
    while deg(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(ctx, &h, &q, &rest)?;
        let g = gcd(ctx, &sub(ctx, &h, &x(ctx))?, &rest)?;
        if deg(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rest = divrem(ctx, &rest, &g)?.0;
            h = divrem(ctx, &h, &rest)?.1;
        }
    }
    if deg(&rest).unwrap_or(0) > 0 {
        let dd = deg(&rest).unwrap();
        out.push((rest, dd));
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree split: f monic squarefree, all factors of
/// degree d. Deterministic given the generator state.
pub fn equal_degree(
    ctx: &FieldCtx,
    f: &SPoly,
    d: usize,
    rng: &mut ChaCha20Rng,
) -> Result<Vec<SPoly>> {
    let n = deg(f).unwrap_or(0);
    if n == d {
        return Ok(vec![monic(ctx, f)?]);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = ctx.characteristic();
    let q = field_size(ctx)?;
    for _attempt in 0..200 {
        let r = random_poly(ctx, n - 1, rng)?;
        if deg(&r).unwrap_or(0) < 1 && r.is_empty() {
            continue;
        }
        let s = if p == 2 {
            // trace map over F_2: sum of r^(2^i) for i < k*d, q = 2^k
            let k = ctx.degree() as u64;
            let m = k * d as u64;
            let mut acc: SPoly = Vec::new();
            let mut t = divrem(ctx, &r, f)?.1;
            for _ in 0..m {
                acc = add(ctx, &acc, &t)?;
                t = divrem(ctx, &mul(ctx, &t, &t)?, f)?.1;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let t = pow_mod(ctx, &r, &e, f)?;
            sub(ctx, &t, &vec![ctx.one()])?
        };
        let g = gcd(ctx, &s, f)?;
        let gd = deg(&g).unwrap_or(0);
        if gd > 0 && gd < n {
            let rest = divrem(ctx, f, &g)?.0;
            let mut out = equal_degree(ctx, &g, d, rng)?;
            out.extend(equal_degree(ctx, &rest, d, rng)?);
            return Ok(out);
        }
    }
    Err(Error::FactorizationIncomplete(n / d))
}

/// Complete factorization over a finite field: (monic irreducible, multiplicity),
/// canonically ordered.
pub fn factor(ctx: &FieldCtx, f: &SPoly, rng: &mut ChaCha20Rng) -> Result<Vec<(SPoly, usize)>> {
    if ctx.characteristic() == 0 {
        return Err(Error::InvalidInput("complete factorization only over finite fields".into()));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_parts(ctx, f)? {
        for (h, d) in distinct_degree(ctx, &g)? {
            for piece in equal_degree(ctx, &h, d, rng)? {
                out.push((piece, m));
            }
        }
    }
    sort_factors(ctx, &mut out);
    Ok(out)
}

fn sort_factors(ctx: &FieldCtx, factors: &mut [(SPoly, usize)]) {
    factors.sort_by(|a, b| {
        a.0.len().cmp(&b.0.len()).then_with(|| {
            for (u, v) in a.0.iter().zip(&b.0) {
                let o = ctx.cmp_scalars(u, v);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
}

fn random_poly(ctx: &FieldCtx, max_deg: usize, rng: &mut ChaCha20Rng) -> Result<SPoly> {
    let p = ctx.characteristic();
    let d = ctx.degree();
    let mut out = Vec::with_capacity(max_deg + 1);
    for _ in 0..=max_deg {
        match ctx.kind() {
            FieldKind::PrimeField { .. } => {
                out.push(ctx.from_int((rng.next_u64() % p) as i64));
            }
            FieldKind::ExtField { .. } => {
                let coeffs: Vec<u64> = (0..d).map(|_| rng.next_u64() % p).collect();
                out.push(Scalar::Fq { p, coeffs });
            }
            _ => return Err(Error::InvalidInput("random sampling needs a finite field".into())),
        }
    }
    Ok(trim(ctx, out))
}

// ----------------------------------------------------------------------
// characteristic-zero roots

/// Roots (with multiplicity) found by the restricted search: exact for
/// degree <= 2 factors; for higher degree, only roots of the form
/// c * zeta^j with c a small rational or a rational-root-theorem candidate.
pub fn char0_roots(ctx: &FieldCtx, f: &SPoly) -> Result<Vec<(Scalar, usize)>> {
    if ctx.characteristic() != 0 {
        return Err(Error::InvalidInput("char0_roots needs characteristic zero".into()));
    }
    let mut rest = monic(ctx, f)?;
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let push = |r: Scalar, roots: &mut Vec<(Scalar, usize)>| {
        for (s, m) in roots.iter_mut() {
            if *s == r {
                *m += 1;
                return;
            }
        }
        roots.push((r, 1));
    };
    'outer: while deg(&rest).unwrap_or(0) >= 1 {
        let d = deg(&rest).unwrap();
        if d == 1 {
            let r = ctx.neg(&rest[0])?;
            push(r, &mut roots);
            break;
        }
        if d == 2 {
            // monic x^2 + bx + c
            let b = rest[1].clone();
            let c = rest[0].clone();
            let disc = ctx.sub(
                &ctx.mul(&b, &b)?,
                &ctx.mul(&ctx.from_int(4), &c)?,
            )?;
            if let Some(t) = sqrt_in_field(ctx, &disc)? {
                let half = ctx.inv(&ctx.from_int(2))?;
                let r1 = ctx.mul(&ctx.sub(&t, &b)?, &half)?;
                let r2 = ctx.mul(&ctx.sub(&ctx.neg(&t)?, &b)?, &half)?;
                push(r1.clone(), &mut roots);
                push(r2, &mut roots);
                break;
            }
            break; // irreducible quadratic (as far as this search can see)
        }
        for cand in root_candidates(ctx, &rest)? {
            if ctx.is_zero(&eval(ctx, &rest, &cand)?) {
                push(cand.clone(), &mut roots);
                let lin = vec![ctx.neg(&cand)?, ctx.one()];
                rest = divrem(ctx, &rest, &lin)?.0;
                continue 'outer;
            }
        }
        break; // no further candidates
    }
    Ok(roots)
}

/// Square root of s when it has the shape (rational square) * zeta^(2j);
/// covers rational squares (j = 0) and zero.
fn sqrt_in_field(ctx: &FieldCtx, s: &Scalar) -> Result<Option<Scalar>> {
    if ctx.is_zero(s) {
        return Ok(Some(ctx.zero()));
    }
    let e = match ctx.kind() {
        FieldKind::Rationals => 1u32,
        FieldKind::Cyclotomic { e, .. } => *e,
        _ => return Ok(None),
    };
    for j in 0..e {
        let zj = if j == 0 {
            ctx.one()
        } else {
            ctx.pow(&ctx.generator()?, (2 * j) as u64)?
        };
        let u = ctx.div(s, &zj)?;
        if let Some(r) = as_rational(&u) {
            if let Some(sq) = rational_sqrt(&r) {
                let base = ctx.from_rational(&sq)?;
                let zeta_j = if j == 0 { ctx.one() } else { ctx.pow(&ctx.generator()?, j as u64)? };
                return Ok(Some(ctx.mul(&base, &zeta_j)?));
            }
        }
    }
    Ok(None)
}

fn as_rational(s: &Scalar) -> Option<BigRational> {
    match s {
        Scalar::Rat(r) => Some(r.clone()),
        Scalar::Cyc { coeffs, .. } => {
            if coeffs.iter().skip(1).all(|c| c.is_zero()) {
                coeffs.first().cloned().or_else(|| Some(BigRational::zero()))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = num_integer::Roots::sqrt(r.numer());
    let ds = num_integer::Roots::sqrt(r.denom());
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Candidate roots: rational-root-theorem fractions (when the poly lives
/// over Q and its ends factor easily) and small rationals times powers of
/// zeta for cyclotomic fields.
fn root_candidates(ctx: &FieldCtx, f: &SPoly) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    let e = match ctx.kind() {
        FieldKind::Rationals => 1u32,
        FieldKind::Cyclotomic { e, .. } => *e,
        _ => return Ok(out),
    };
    let mut rationals: Vec<BigRational> = Vec::new();
    // rational-root-theorem candidates from integer-cleared ends
    if let Some(fracs) = rational_candidates(f) {
        rationals.extend(fracs);
    }
    for small in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 6, -6] {
        rationals.push(BigRational::from(BigInt::from(small)));
    }
    for (n, d) in [(1i64, 2i64), (-1, 2), (1, 3), (-1, 3), (2, 3), (-2, 3), (3, 2), (-3, 2)] {
        rationals.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
    }
    rationals.dedup();
    for r in &rationals {
        let base = ctx.from_rational(r)?;
        out.push(base.clone());
        for j in 1..e {
            let zj = ctx.pow(&ctx.generator()?, j as u64)?;
            out.push(ctx.mul(&base, &zj)?);
        }
    }
    Ok(out)
}

/// p/q with p | constant, q | leading, after clearing denominators; bails
/// out (returns None) when the ends are too big to factor quickly.
fn rational_candidates(f: &SPoly) -> Option<Vec<BigRational>> {
    let mut ints: Vec<BigInt> = Vec::with_capacity(f.len());
    let mut lcm = BigInt::one();
    for c in f {
        let r = as_rational(c)?;
        lcm = num_integer::Integer::lcm(&lcm, r.denom());
    }
    for c in f {
        let r = as_rational(c)?;
        ints.push(r.numer() * (&lcm / r.denom()));
    }
    let lead = ints.last()?.clone();
    let mut k = 0usize;
    while k < ints.len() && ints[k].is_zero() {
        k += 1;
    }
    let low = ints.get(k)?.clone();
    let d_low = small_divisors(&low.abs())?;
    let d_lead = small_divisors(&lead.abs())?;
    let mut out = Vec::new();
    for p in &d_low {
        for q in &d_lead {
            let r = BigRational::new(p.clone(), q.clone());
            if !out.contains(&r) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    Some(out)
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n == 0 || n > 1_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if out.len() > 400 {
            return None;
        }
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    fn f7() -> FieldCtx {
        FieldCtx::prime_field(7).unwrap()
    }

    fn poly_i64(ctx: &FieldCtx, coeffs: &[i64]) -> SPoly {
        trim(ctx, coeffs.iter().map(|c| ctx.from_int(*c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let ctx = f7();
        let f = poly_i64(&ctx, &[6, 0, 1]); // x^2 - 1 = (x-1)(x+1)
        let g = poly_i64(&ctx, &[6, 1]); // x - 1
        let (q, r) = divrem(&ctx, &f, &g).unwrap();
        assert!(r.is_empty());
        assert_eq!(q, poly_i64(&ctx, &[1, 1]));
        let h = poly_i64(&ctx, &[5, -6, 1]); // (x-1)(x-5)
        assert_eq!(gcd(&ctx, &f, &h).unwrap(), g);
    }

    #[test]
    fn factor_over_f7() {
        let ctx = f7();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        // (x-1)^2 (x-2) (x^2+1), with x^2+1 irreducible mod 7
        let f = {
            let a = poly_i64(&ctx, &[6, 1]);
            let b = poly_i64(&ctx, &[5, 1]);
            let c = poly_i64(&ctx, &[1, 0, 1]);
            let aa = mul(&ctx, &a, &a).unwrap();
            mul(&ctx, &mul(&ctx, &aa, &b).unwrap(), &c).unwrap()
        };
        let factors = factor(&ctx, &f, &mut rng).unwrap();
        assert_eq!(factors.len(), 3);
        let mut recon = vec![ctx.one()];
        for (g, m) in &factors {
            for _ in 0..*m {
                recon = mul(&ctx, &recon, g).unwrap();
            }
        }
        assert_eq!(recon, monic(&ctx, &f).unwrap());
        let mults: Vec<usize> = factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2));
        assert!(factors.iter().any(|(g, _)| deg(g) == Some(2)));
    }

    #[test]
    fn factor_full_split_f11() {
        let ctx = FieldCtx::prime_field(11).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        // x^10 - 1 splits into all ten nonzero residues
        let mut f = vec![ctx.from_int(-1)];
        f.extend(std::iter::repeat(ctx.zero()).take(9));
        f.push(ctx.one());
        let factors = factor(&ctx, &f, &mut rng).unwrap();
        assert_eq!(factors.len(), 10);
        assert!(factors.iter().all(|(g, m)| deg(g) == Some(1) && *m == 1));
    }

    #[test]
    fn factor_over_f2_and_f4() {
        let ctx2 = FieldCtx::prime_field(2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2
        let f = poly_i64(&ctx2, &[1, 0, 1, 0, 1]);
        let factors = factor(&ctx2, &f, &mut rng).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 2);
        assert_eq!(factors[0].0, poly_i64(&ctx2, &[1, 1, 1]));
        // over F_4 the same polynomial splits into linear factors squared
        let ctx4 = FieldCtx::ext_field(2, vec![1, 1, 1]).unwrap();
        let f4: SPoly = f
            .iter()
            .map(|c| if ctx2.is_zero(c) { ctx4.zero() } else { ctx4.one() })
            .collect();
        let factors4 = factor(&ctx4, &trim(&ctx4, f4), &mut rng).unwrap();
        assert_eq!(factors4.len(), 2);
        assert!(factors4.iter().all(|(g, m)| deg(g) == Some(1) && *m == 2));
    }

    #[test]
    fn rational_roots() {
        let ctx = FieldCtx::rationals();
        // (x - 2)(x + 1/2)(x - 5) = cleared: (x-2)(2x+1)(x-5)/2
        let f = {
            let a = poly_i64(&ctx, &[-2, 1]);
            let b = vec![
                ctx.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(),
                ctx.one(),
            ];
            let c = poly_i64(&ctx, &[-5, 1]);
            mul(&ctx, &mul(&ctx, &a, &b).unwrap(), &c).unwrap()
        };
        let roots = char0_roots(&ctx, &f).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|(_, m)| *m == 1));
        assert!(roots.iter().any(|(r, _)| *r == ctx.from_int(2)));
        assert!(roots
            .iter()
            .any(|(r, _)| *r == ctx.from_rational(&BigRational::new((-1).into(), 2.into())).unwrap()));
    }

    #[test]
    fn cyclotomic_roots_of_quadratics() {
        // min poly of the eigenvalues of T_s in the A2 specialization at zeta_3:
        // x^2 + (z^2 - z) x - 1 has roots z and -z^2 = 1 + z
        let ctx = FieldCtx::cyclotomic(3).unwrap();
        let z = ctx.generator().unwrap();
        let z2 = ctx.mul(&z, &z).unwrap();
        let f = vec![
            ctx.from_int(-1),
            ctx.sub(&z2, &z).unwrap(),
            ctx.one(),
        ];
        let roots = char0_roots(&ctx, &f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, _)| *r == z));
        let one_plus_z = ctx.add(&ctx.one(), &z).unwrap();
        assert!(roots.iter().any(|(r, _)| *r == one_plus_z));
        // double root at i: (x - i)^2 over Q(zeta_4)
        let ctx4 = FieldCtx::cyclotomic(4).unwrap();
        let i = ctx4.generator().unwrap();
        let g = vec![
            ctx4.from_int(-1),
            ctx4.mul(&ctx4.from_int(-2), &i).unwrap(),
            ctx4.one(),
        ];
        let roots4 = char0_roots(&ctx4, &g).unwrap();
        assert_eq!(roots4.len(), 1);
        assert_eq!(roots4[0].0, i);
    }

    #[test]
    fn pow_mod_fermat() {
        let ctx = f7();
        let f = poly_i64(&ctx, &[3, 1, 1]); // arbitrary modulus
        let xp = pow_mod(&ctx, &x(&ctx), &BigUint::from(49u32), &f).unwrap();
        // x^(q^2) = x mod any irreducible quadratic... x^2+x+3 mod 7: check irred
        // (discriminant 1 - 12 = -11 = 3 mod 7, non-square mod 7: squares are 1,2,4)
        assert_eq!(xp, x(&ctx));
    }

    #[test]
    fn ext_gcd_bezout() {
        for ctx in [f7(), FieldCtx::rationals()] {
            // coprime pair: (x - 1) and (x + 1)
            let a = poly_i64(&ctx, &[-1, 1]);
            let b = poly_i64(&ctx, &[1, 1]);
            let (g, u, v) = ext_gcd(&ctx, &a, &b).unwrap();
            assert_eq!(g, vec![ctx.one()]);
            let lhs = add(&ctx, &mul(&ctx, &u, &a).unwrap(), &mul(&ctx, &v, &b).unwrap()).unwrap();
            assert_eq!(lhs, g);
            // shared factor
            let c = mul(&ctx, &a, &poly_i64(&ctx, &[2, 1])).unwrap();
            let d = mul(&ctx, &a, &poly_i64(&ctx, &[3, 1])).unwrap();
            let (g2, u2, v2) = ext_gcd(&ctx, &c, &d).unwrap();
            assert_eq!(g2, monic(&ctx, &a).unwrap());
            let lhs2 =
                add(&ctx, &mul(&ctx, &u2, &c).unwrap(), &mul(&ctx, &v2, &d).unwrap()).unwrap();
            assert_eq!(lhs2, g2);
        }
    }
}
