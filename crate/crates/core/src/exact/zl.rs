//! Hensel lifting of a factor of an integer polynomial from F_ell to
//! Z/ell^k, plus remainder arithmetic mod (lifted factor, ell^k).
//!
//! This is the computational backend for valuations and reductions at
//! unramified primes of a cyclotomic field: the completion at a prime over
//! ell with residue factor g is Z_ell[x]/(G) where G is the lift of g.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::fp::{self, FpPoly};

pub type ZPoly = Vec<BigInt>;

fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

fn mul_z(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
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

fn sub_z(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let n = f.len().max(g.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(f.get(i).unwrap_or(&zero) - g.get(i).unwrap_or(&zero));
    }
    trim(out)
}

fn reduce_coeffs(f: &ZPoly, m: &BigInt) -> ZPoly {
    trim(
        f.iter()
            .map(|c| {
                let r = c % m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(f: &ZPoly, ell: u64) -> FpPoly {
    let m = BigInt::from(ell);
    fp::trim(
        f.iter()
            .map(|c| {
                let r = c % &m;
                let r = if r.is_negative() { r + &m } else { r };
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Remainder of f by monic g, coefficients reduced mod m.
pub fn rem_monic(f: &ZPoly, g: &ZPoly, m: &BigInt) -> ZPoly {
    let gd = g.len() - 1;
    debug_assert!(g[gd].is_one());
    let mut r = reduce_coeffs(f, m);
    while r.len() > gd {
        let rd = r.len() - 1;
        let c = r[rd].clone();
        if !c.is_zero() {
            // g monic, so subtracting c*x^(rd-gd)*g cancels the lead exactly.
            for k in 0..gd {
                let t = &c * &g[k];
                r[rd - gd + k] -= t;
            }
        }
        r.pop();
        r = reduce_coeffs(&r, m);
    }
    r
}

/// Monic factor of an integer polynomial lifted to increasing powers of ell.
#[derive(Debug)]
pub struct FactorLift {
    pub ell: u64,
    pub precision: u32,
    pub modulus: BigInt,
    pub factor: ZPoly,
    cofactor: ZPoly,
    mu: ZPoly,
    bez_s: FpPoly,
    bez_t: FpPoly,
}

impl FactorLift {
    /// mu monic over Z, g0 a monic factor of mu mod ell coprime to its cofactor.
    pub fn new(mu: &ZPoly, g0: &FpPoly, ell: u64) -> Result<Self> {
        let mu = trim(mu.clone());
        if mu.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        let mu_p = to_fp(&mu, ell);
        let g_p = fp::trim(g0.clone());
        if fp::deg(&g_p).is_none() {
            return Err(Error::InvalidInput("residue factor must be nonzero".into()));
        }
        if *g_p.last().unwrap() != 1 {
            return Err(Error::InvalidInput("residue factor must be monic".into()));
        }
        let (h_p, r) = fp::divrem(&mu_p, &g_p, ell)?;
        if !r.is_empty() {
            return Err(Error::UnsupportedPrime(format!(
                "residue factor does not divide the minimal polynomial mod {ell}"
            )));
        }
        let (gcd, s, t) = fp::eea(&g_p, &h_p, ell)?;
        if fp::deg(&gcd) != Some(0) {
            return Err(Error::UnsupportedPrime(format!(
                "residue factor is not coprime to its cofactor mod {ell}; prime is ramified"
            )));
        }
        Ok(FactorLift {
            ell,
            precision: 1,
            modulus: BigInt::from(ell),
            factor: from_fp(&g_p),
            cofactor: from_fp(&h_p),
            mu,
            bez_s: s,
            bez_t: t,
        })
    }

    /// Linear Hensel steps until factors are valid mod ell^k.
    pub fn raise_to(&mut self, k: u32) -> Result<()> {
        let ell_big = BigInt::from(self.ell);
        while self.precision < k {
            let next_modulus = &self.modulus * &ell_big;
            // defect = (mu - g*h) / ell^precision, taken mod ell
            let defect = sub_z(&self.mu, &mul_z(&self.factor, &self.cofactor));
            let mut scaled = Vec::with_capacity(defect.len());
            for c in &defect {
                let (q, r) = num_integer::Integer::div_rem(c, &self.modulus);
                if !r.is_zero() {
                    return Err(Error::PrecisionExhausted(self.precision));
                }
                scaled.push(q);
            }
            let e = to_fp(&trim(scaled), self.ell);
            // corrections: dg = t*e mod g, dh = s*e mod h (all mod ell)
            let g_p = to_fp(&self.factor, self.ell);
            let h_p = to_fp(&self.cofactor, self.ell);
            let dg = fp::rem(&fp::mul(&self.bez_t, &e, self.ell), &g_p, self.ell)?;
            let dh = fp::rem(&fp::mul(&self.bez_s, &e, self.ell), &h_p, self.ell)?;
            let lift = |base: &ZPoly, delta: &FpPoly, modulus: &BigInt| -> ZPoly {
                let mut out = base.clone();
                if out.len() < delta.len() {
                    out.resize(delta.len(), BigInt::zero());
                }
                for (i, &d) in delta.iter().enumerate() {
                    out[i] += modulus * BigInt::from(d);
                }
                trim(out)
            };
            self.factor = reduce_coeffs(&lift(&self.factor, &dg, &self.modulus), &next_modulus);
            self.cofactor = reduce_coeffs(&lift(&self.cofactor, &dh, &self.modulus), &next_modulus);
            self.modulus = next_modulus;
            self.precision += 1;
        }
        Ok(())
    }
}

/// ell-adic valuation, with v(0) read as 0 (callers handle zero themselves).
pub fn int_valuation_or_zero(n: &BigInt, ell: u64) -> u64 {
    if n.is_zero() {
        0
    } else {
        int_valuation(n, ell)
    }
}

/// ell-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, ell: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let ell_big = BigInt::from(ell);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &ell_big);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(v: &[i64]) -> ZPoly {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn lift_linear_factor_of_phi3_mod_7() {
        // Phi_3 = x^2+x+1 = (x-2)(x-4) mod 7; lift x-2 to mod 7^4.
        let mu = z(&[1, 1, 1]);
        let mut lift = FactorLift::new(&mu, &vec![5, 1], 7).unwrap(); // x + 5 = x - 2
        lift.raise_to(4).unwrap();
        assert_eq!(lift.modulus, BigInt::from(2401));
        // factor is x - r with r^2 + r + 1 = 0 mod 7^4 and r = 2 mod 7
        let r = (&lift.modulus - &lift.factor[0]) % &lift.modulus;
        let check = (&r * &r + &r + BigInt::from(1)) % &lift.modulus;
        assert!(check.is_zero());
        assert_eq!(&r % BigInt::from(7), BigInt::from(2));
        // product of factor and cofactor recovers mu mod 7^4
        let prod = reduce_coeffs(&mul_z(&lift.factor, &lift.cofactor), &lift.modulus);
        assert_eq!(prod, reduce_coeffs(&mu, &lift.modulus));
    }

    #[test]
    fn lift_quadratic_factor_of_phi5_mod_19() {
        // ord(19 mod 5) = 2, so Phi_5 splits into two quadratics mod 19.
        let mu = z(&[1, 1, 1, 1, 1]);
        let mu_p: FpPoly = vec![1, 1, 1, 1, 1];
        // find a monic quadratic factor by scanning
        let mut found = None;
        'outer: for b in 0..19u64 {
            for c in 0..19u64 {
                let g = vec![c, b, 1];
                if fp::rem(&mu_p, &g, 19).unwrap().is_empty() {
                    found = Some(g);
                    break 'outer;
                }
            }
        }
        let g = found.expect("Phi_5 must factor mod 19");
        let mut lift = FactorLift::new(&mu, &g, 19).unwrap();
        lift.raise_to(3).unwrap();
        let prod = reduce_coeffs(&mul_z(&lift.factor, &lift.cofactor), &lift.modulus);
        assert_eq!(prod, reduce_coeffs(&mu, &lift.modulus));
    }

    #[test]
    fn ramified_factor_rejected() {
        // Phi_3 = (x-1)^2 mod 3: factor x-1 not coprime to cofactor.
        let mu = z(&[1, 1, 1]);
        let err = FactorLift::new(&mu, &vec![2, 1], 3).unwrap_err();
        assert!(matches!(err, Error::UnsupportedPrime(_)));
    }

    #[test]
    fn valuations_of_integers() {
        assert_eq!(int_valuation(&BigInt::from(24), 2), 3);
        assert_eq!(int_valuation(&BigInt::from(-9), 3), 2);
        assert_eq!(int_valuation(&BigInt::from(7), 5), 0);
    }
}
