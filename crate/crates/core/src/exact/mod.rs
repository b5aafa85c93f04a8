//! Exact scalar arithmetic over the four ground fields: Q, F_p, F_q, and
//! cyclotomic fields Q(zeta_e), together with p-adic valuations and
//! reduction maps into residue fields.
//!
//! Every scalar has a unique canonical representation, so equality is
//! representation equality. No floating point anywhere.

pub mod fp;
pub mod qpoly;
pub mod zl;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use qpoly::QPoly;

/// Hard cap for Hensel precision (in ell-adic digits).
const PRECISION_HARD_CAP: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField { p: u64 },
    /// F_p[x]/(modulus); modulus monic irreducible, coeffs low degree first.
    ExtField { p: u64, modulus: Vec<u64> },
    /// Q[x]/(min_poly) with min_poly = Phi_e; x is the class of zeta_e.
    Cyclotomic { e: u32, min_poly: QPoly },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    kind: FieldKind,
}

/// Canonical scalar: tagged with just enough field data to detect mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
    /// Fixed length = deg(modulus), entries reduced mod p.
    Fq { p: u64, coeffs: Vec<u64> },
    /// Fixed length = deg(min_poly), entries reduced rationals.
    Cyc { e: u32, coeffs: Vec<BigRational> },
}

/// Value of a p-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

/// A prime of the coefficient field: a rational prime ell, for cyclotomic
/// fields together with an irreducible factor of the minimal polynomial mod
/// ell (unramified case) or the ramified marker (e a power of ell).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpec {
    pub ell: u64,
    pub residue_factor: Option<Vec<u64>>,
    pub ramified: bool,
}

impl PrimeSpec {
    pub fn rational(ell: u64) -> Self {
        PrimeSpec { ell, residue_factor: None, ramified: false }
    }

    pub fn unramified(ell: u64, residue_factor: Vec<u64>) -> Self {
        PrimeSpec { ell, residue_factor: Some(residue_factor), ramified: false }
    }

    pub fn ramified(ell: u64) -> Self {
        PrimeSpec { ell, residue_factor: None, ramified: true }
    }
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx { kind: FieldKind::Rationals }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !fp::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(FieldCtx { kind: FieldKind::PrimeField { p } })
    }

    pub fn ext_field(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !fp::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let modulus = fp::trim(modulus.iter().map(|c| c % p).collect());
        let d = fp::deg(&modulus)
            .ok_or_else(|| Error::InvalidInput("zero modulus".into()))?;
        if d < 1 {
            return Err(Error::InvalidInput("modulus must have degree >= 1".into()));
        }
        if modulus[d] != 1 {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        if !fp::is_irreducible(&modulus, p)? {
            return Err(Error::InvalidInput(format!(
                "modulus is reducible over F_{p}"
            )));
        }
        Ok(FieldCtx { kind: FieldKind::ExtField { p, modulus } })
    }

    pub fn cyclotomic(e: u32) -> Result<Self> {
        let min_poly = qpoly::cyclotomic(e)?;
        Ok(FieldCtx { kind: FieldKind::Cyclotomic { e, min_poly } })
    }

    /// Custom modulus must be a monic divisor of Phi_e; Phi_e is irreducible
    /// over Q, so any proper divisor is rejected by the division check.
    pub fn cyclotomic_with_min_poly(e: u32, min_poly: QPoly) -> Result<Self> {
        let phi = qpoly::cyclotomic(e)?;
        let min_poly = qpoly::trim(min_poly);
        let d = qpoly::deg(&min_poly)
            .ok_or_else(|| Error::InvalidInput("zero minimal polynomial".into()))?;
        if !min_poly[d].is_one() {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        let (_, r) = qpoly::divrem(&phi, &min_poly)?;
        if !r.is_empty() {
            return Err(Error::InvalidInput(format!(
                "minimal polynomial does not divide Phi_{e}"
            )));
        }
        Ok(FieldCtx { kind: FieldKind::Cyclotomic { e, min_poly } })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::Rationals | FieldKind::Cyclotomic { .. } => 0,
            FieldKind::PrimeField { p } | FieldKind::ExtField { p, .. } => *p,
        }
    }

    /// Degree over the prime field / over Q.
    pub fn degree(&self) -> usize {
        match &self.kind {
            FieldKind::Rationals | FieldKind::PrimeField { .. } => 1,
            FieldKind::ExtField { modulus, .. } => modulus.len() - 1,
            FieldKind::Cyclotomic { min_poly, .. } => min_poly.len() - 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::zero()),
            FieldKind::PrimeField { p } => Scalar::Fp { p: *p, val: 0 },
            FieldKind::ExtField { p, modulus } => Scalar::Fq {
                p: *p,
                coeffs: vec![0; modulus.len() - 1],
            },
            FieldKind::Cyclotomic { e, min_poly } => Scalar::Cyc {
                e: *e,
                coeffs: vec![BigRational::zero(); min_poly.len() - 1],
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::from(n.clone())),
            FieldKind::PrimeField { p } => Scalar::Fp { p: *p, val: bigint_mod(n, *p) },
            FieldKind::ExtField { p, modulus } => {
                let mut coeffs = vec![0; modulus.len() - 1];
                coeffs[0] = bigint_mod(n, *p);
                Scalar::Fq { p: *p, coeffs }
            }
            FieldKind::Cyclotomic { e, min_poly } => {
                let mut coeffs = vec![BigRational::zero(); min_poly.len() - 1];
                coeffs[0] = BigRational::from(n.clone());
                Scalar::Cyc { e: *e, coeffs }
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match &self.kind {
            FieldKind::Rationals => Ok(Scalar::Rat(r.clone())),
            FieldKind::Cyclotomic { e, min_poly } => {
                let mut coeffs = vec![BigRational::zero(); min_poly.len() - 1];
                coeffs[0] = r.clone();
                Ok(Scalar::Cyc { e: *e, coeffs })
            }
            _ => Err(Error::FieldMismatch(
                "rational scalar into a finite field requires reduce_mod".into(),
            )),
        }
    }

    /// The class of x (zeta for cyclotomic fields, the residue generator for
    /// extension fields).
    pub fn generator(&self) -> Result<Scalar> {
        match &self.kind {
            FieldKind::ExtField { p, modulus } => {
                let d = modulus.len() - 1;
                if d == 1 {
                    // x = -modulus[0]
                    return Ok(Scalar::Fq {
                        p: *p,
                        coeffs: vec![(*p - modulus[0] % *p) % *p],
                    });
                }
                let mut coeffs = vec![0; d];
                coeffs[1] = 1;
                Ok(Scalar::Fq { p: *p, coeffs })
            }
            FieldKind::Cyclotomic { e, min_poly } => {
                let d = min_poly.len() - 1;
                if d == 1 {
                    return Ok(Scalar::Cyc { e: *e, coeffs: vec![-min_poly[0].clone()] });
                }
                let mut coeffs = vec![BigRational::zero(); d];
                coeffs[1] = BigRational::one();
                Ok(Scalar::Cyc { e: *e, coeffs })
            }
            _ => Err(Error::InvalidInput("field has no distinguished generator".into())),
        }
    }

    pub fn belongs(&self, s: &Scalar) -> bool {
        match (&self.kind, s) {
            (FieldKind::Rationals, Scalar::Rat(_)) => true,
            (FieldKind::PrimeField { p }, Scalar::Fp { p: q, val }) => p == q && val < p,
            (FieldKind::ExtField { p, modulus }, Scalar::Fq { p: q, coeffs }) => {
                p == q && coeffs.len() == modulus.len() - 1 && coeffs.iter().all(|c| c < p)
            }
            (FieldKind::Cyclotomic { e, min_poly }, Scalar::Cyc { e: f, coeffs }) => {
                e == f && coeffs.len() == min_poly.len() - 1
            }
            _ => false,
        }
    }

    fn check2(&self, x: &Scalar, y: &Scalar) -> Result<()> {
        self.check(x)?;
        self.check(y)
    }

    pub fn check(&self, x: &Scalar) -> Result<()> {
        if self.belongs(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{x:?} not in {:?}", self.kind)))
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Fq { coeffs, .. } => coeffs.iter().all(|c| *c == 0),
            Scalar::Cyc { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        self.check2(x, y)?;
        Ok(match (x, y) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { p: *p, val: fp::addm(*a, *b, *p) }
            }
            (Scalar::Fq { p, coeffs: a }, Scalar::Fq { coeffs: b, .. }) => Scalar::Fq {
                p: *p,
                coeffs: a.iter().zip(b).map(|(u, v)| fp::addm(*u, *v, *p)).collect(),
            },
            (Scalar::Cyc { e, coeffs: a }, Scalar::Cyc { coeffs: b, .. }) => Scalar::Cyc {
                e: *e,
                coeffs: a.iter().zip(b).map(|(u, v)| u + v).collect(),
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self, x: &Scalar) -> Result<Scalar> {
        self.check(x)?;
        Ok(match x {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: (*p - *val % *p) % *p },
            Scalar::Fq { p, coeffs } => Scalar::Fq {
                p: *p,
                coeffs: coeffs.iter().map(|c| (*p - *c % *p) % *p).collect(),
            },
            Scalar::Cyc { e, coeffs } => Scalar::Cyc {
                e: *e,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        })
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        self.add(x, &self.neg(y)?)
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        self.check2(x, y)?;
        Ok(match (x, y) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { p: *p, val: fp::mulm(*a, *b, *p) }
            }
            (Scalar::Fq { p, coeffs: a }, Scalar::Fq { coeffs: b, .. }) => {
                let modulus = match &self.kind {
                    FieldKind::ExtField { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                let prod = fp::mul(a, b, *p);
                let red = fp::rem(&prod, modulus, *p)?;
                Scalar::Fq { p: *p, coeffs: pad(&red, modulus.len() - 1) }
            }
            (Scalar::Cyc { e, coeffs: a }, Scalar::Cyc { coeffs: b, .. }) => {
                let min_poly = match &self.kind {
                    FieldKind::Cyclotomic { min_poly, .. } => min_poly,
                    _ => unreachable!(),
                };
                let prod = qpoly::mul(&qpoly::trim(a.clone()), &qpoly::trim(b.clone()));
                let red = qpoly::divrem(&prod, min_poly)?.1;
                Scalar::Cyc { e: *e, coeffs: pad_q(&red, min_poly.len() - 1) }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, x: &Scalar) -> Result<Scalar> {
        self.check(x)?;
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(match x {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: fp::invm(*val, *p)? },
            Scalar::Fq { p, coeffs } => {
                let modulus = match &self.kind {
                    FieldKind::ExtField { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                let (g, _s, t) = fp::eea(modulus, &fp::trim(coeffs.clone()), *p)?;
                if fp::deg(&g) != Some(0) {
                    return Err(Error::DivisionByZero);
                }
                let red = fp::rem(&t, modulus, *p)?;
                Scalar::Fq { p: *p, coeffs: pad(&red, modulus.len() - 1) }
            }
            Scalar::Cyc { e, coeffs } => {
                let min_poly = match &self.kind {
                    FieldKind::Cyclotomic { min_poly, .. } => min_poly,
                    _ => unreachable!(),
                };
                let (g, _s, t) = qpoly::eea(min_poly, &qpoly::trim(coeffs.clone()))?;
                if qpoly::deg(&g) != Some(0) {
                    return Err(Error::DivisionByZero);
                }
                let red = qpoly::divrem(&t, min_poly)?.1;
                Scalar::Cyc { e: *e, coeffs: pad_q(&red, min_poly.len() - 1) }
            }
        })
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        self.mul(x, &self.inv(y)?)
    }

    pub fn pow(&self, x: &Scalar, mut n: u64) -> Result<Scalar> {
        let mut base = x.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Total order used only for canonical sorting of reports and catalogs.
    /// Finite-field representatives are compared balanced (centered at 0) so
    /// that orderings agree with the characteristic-zero ones they reduce.
    pub fn cmp_scalars(&self, x: &Scalar, y: &Scalar) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (x, y) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                balanced(*a, *p).cmp(&balanced(*b, *p))
            }
            (Scalar::Fq { p, coeffs: a }, Scalar::Fq { coeffs: b, .. }) => {
                for (u, v) in a.iter().zip(b) {
                    let o = balanced(*u, *p).cmp(&balanced(*v, *p));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            (Scalar::Cyc { coeffs: a, .. }, Scalar::Cyc { coeffs: b, .. }) => {
                for (u, v) in a.iter().zip(b) {
                    let o = u.cmp(v);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            _ => Ordering::Equal,
        }
    }

    // ------------------------------------------------------------------
    // text encoding

    pub fn scalar_to_string(&self, x: &Scalar) -> String {
        match x {
            Scalar::Rat(r) => rat_to_string(r),
            Scalar::Fp { val, .. } => val.to_string(),
            Scalar::Fq { coeffs, .. } => {
                serde_json::to_string(coeffs).expect("serializing u64 list")
            }
            Scalar::Cyc { coeffs, .. } => {
                let strings: Vec<String> = coeffs.iter().map(rat_to_string).collect();
                serde_json::to_string(&strings).expect("serializing string list")
            }
        }
    }

    pub fn scalar_from_str(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match &self.kind {
            FieldKind::Rationals => Ok(Scalar::Rat(parse_rational(s)?)),
            FieldKind::PrimeField { p } => {
                let n: BigInt = s
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad residue: {s}")))?;
                Ok(Scalar::Fp { p: *p, val: bigint_mod(&n, *p) })
            }
            FieldKind::ExtField { p, modulus } => {
                let coeffs: Vec<i64> = if s.starts_with('[') {
                    serde_json::from_str(s)
                        .map_err(|_| Error::InvalidInput(format!("bad coefficient list: {s}")))?
                } else {
                    vec![s
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad residue: {s}")))?]
                };
                let d = modulus.len() - 1;
                if coeffs.len() > d {
                    return Err(Error::InvalidInput(format!(
                        "coefficient list longer than field degree {d}"
                    )));
                }
                let mut out = vec![0u64; d];
                for (i, c) in coeffs.iter().enumerate() {
                    out[i] = bigint_mod(&BigInt::from(*c), *p);
                }
                Ok(Scalar::Fq { p: *p, coeffs: out })
            }
            FieldKind::Cyclotomic { e, min_poly } => {
                let d = min_poly.len() - 1;
                let parts: Vec<String> = if s.starts_with('[') {
                    serde_json::from_str(s)
                        .map_err(|_| Error::InvalidInput(format!("bad coefficient list: {s}")))?
                } else {
                    vec![s.to_string()]
                };
                if parts.len() > d {
                    return Err(Error::InvalidInput(format!(
                        "coefficient list longer than field degree {d}"
                    )));
                }
                let mut out = vec![BigRational::zero(); d];
                for (i, part) in parts.iter().enumerate() {
                    out[i] = parse_rational(part)?;
                }
                Ok(Scalar::Cyc { e: *e, coeffs: out })
            }
        }
    }

    // ------------------------------------------------------------------
    // valuations and reductions

    pub fn validate_prime(&self, prime: &PrimeSpec) -> Result<()> {
        if !fp::is_prime_u64(prime.ell) {
            return Err(Error::UnsupportedPrime(format!("{} is not prime", prime.ell)));
        }
        match &self.kind {
            FieldKind::Rationals => {
                if prime.ramified || prime.residue_factor.is_some() {
                    return Err(Error::UnsupportedPrime(
                        "rational primes take no residue factor".into(),
                    ));
                }
                Ok(())
            }
            FieldKind::Cyclotomic { e, min_poly } => {
                if prime.ramified {
                    // Totally ramified with residue field F_ell exactly when
                    // e is a power of ell; then 1 - zeta uniformizes.
                    if !is_prime_power_of(u64::from(*e), prime.ell) {
                        return Err(Error::UnsupportedPrime(format!(
                            "ramified primes need e to be a power of ell; got e = {e}, ell = {}",
                            prime.ell
                        )));
                    }
                    if prime.residue_factor.is_some() {
                        return Err(Error::UnsupportedPrime(
                            "ramified prime takes no residue factor".into(),
                        ));
                    }
                    return Ok(());
                }
                if u64::from(*e) % prime.ell == 0 {
                    return Err(Error::UnsupportedPrime(format!(
                        "ell = {} divides e = {e}: use the ramified form when e is a power of ell",
                        prime.ell
                    )));
                }
                let g = prime.residue_factor.as_ref().ok_or_else(|| {
                    Error::UnsupportedPrime(
                        "cyclotomic prime needs a residue factor of the minimal polynomial".into(),
                    )
                })?;
                let g = fp::trim(g.iter().map(|c| c % prime.ell).collect());
                let gd = fp::deg(&g)
                    .ok_or_else(|| Error::UnsupportedPrime("zero residue factor".into()))?;
                if gd < 1 || g[gd] != 1 {
                    return Err(Error::UnsupportedPrime(
                        "residue factor must be monic of degree >= 1".into(),
                    ));
                }
                if !fp::is_irreducible(&g, prime.ell)? {
                    return Err(Error::UnsupportedPrime(format!(
                        "residue factor is reducible mod {}",
                        prime.ell
                    )));
                }
                let mu = min_poly_mod(min_poly, prime.ell)?;
                let r = fp::rem(&mu, &g, prime.ell)?;
                if !r.is_empty() {
                    return Err(Error::UnsupportedPrime(format!(
                        "residue factor does not divide the minimal polynomial mod {}",
                        prime.ell
                    )));
                }
                Ok(())
            }
            _ => Err(Error::UnsupportedPrime(
                "valuations are defined over Q and cyclotomic fields only".into(),
            )),
        }
    }

    /// The residue field k_p for a validated prime of this field.
    pub fn residue_ctx(&self, prime: &PrimeSpec) -> Result<FieldCtx> {
        self.validate_prime(prime)?;
        match &self.kind {
            FieldKind::Rationals => FieldCtx::prime_field(prime.ell),
            FieldKind::Cyclotomic { .. } => {
                if prime.ramified {
                    return FieldCtx::prime_field(prime.ell);
                }
                let g = fp::trim(
                    prime
                        .residue_factor
                        .as_ref()
                        .expect("validated")
                        .iter()
                        .map(|c| c % prime.ell)
                        .collect(),
                );
                if g.len() == 2 {
                    FieldCtx::prime_field(prime.ell)
                } else {
                    FieldCtx::ext_field(prime.ell, g)
                }
            }
            _ => unreachable!("validate_prime rejected"),
        }
    }

    pub fn valuation(&self, x: &Scalar, prime: &PrimeSpec) -> Result<Valuation> {
        self.check(x)?;
        self.validate_prime(prime)?;
        if self.is_zero(x) {
            return Ok(Valuation::Infinity);
        }
        match (x, &self.kind) {
            (Scalar::Rat(r), FieldKind::Rationals) => {
                let vn = zl::int_valuation(r.numer(), prime.ell) as i64;
                let vd = zl::int_valuation(r.denom(), prime.ell) as i64;
                Ok(Valuation::Finite(vn - vd))
            }
            (Scalar::Cyc { coeffs, .. }, FieldKind::Cyclotomic { min_poly, .. }) => {
                if prime.ramified {
                    // Totally ramified with residue degree 1: v_p(x) equals
                    // the ell-valuation of the field norm.
                    let n = self.norm(x)?;
                    let vn = zl::int_valuation(n.numer(), prime.ell) as i64;
                    let vd = zl::int_valuation(n.denom(), prime.ell) as i64;
                    return Ok(Valuation::Finite(vn - vd));
                }
                let g = prime.residue_factor.as_ref().expect("validated");
                let (y, den) = clear_denominators(coeffs);
                let vden = zl::int_valuation(&den, prime.ell) as i64;
                let mu = min_poly_int(min_poly)?;
                let max_bits = coeffs
                    .iter()
                    .map(|c| c.denom().bits().max(c.numer().bits()))
                    .max()
                    .unwrap_or(1) as u32;
                let mut precision = (2 * max_bits).max(16);
                loop {
                    let mut lift = zl::FactorLift::new(&mu, g, prime.ell)?;
                    lift.raise_to(precision)?;
                    let c = zl::rem_monic(&y, &lift.factor, &lift.modulus);
                    let vy = c
                        .iter()
                        .filter(|v| !v.is_zero())
                        .map(|v| zl::int_valuation(v, prime.ell))
                        .min();
                    match vy {
                        Some(v) => return Ok(Valuation::Finite(v as i64 - vden)),
                        None => {
                            if precision >= PRECISION_HARD_CAP {
                                return Err(Error::PrecisionExhausted(precision));
                            }
                            precision = (precision * 2).min(PRECISION_HARD_CAP);
                        }
                    }
                }
            }
            _ => unreachable!("validate_prime rejected"),
        }
    }

    pub fn reduce_mod(&self, x: &Scalar, prime: &PrimeSpec, dst: &FieldCtx) -> Result<Scalar> {
        self.check(x)?;
        let expected = self.residue_ctx(prime)?;
        if expected != *dst {
            return Err(Error::FieldMismatch(format!(
                "destination field is not the residue field of ell = {}",
                prime.ell
            )));
        }
        match (x, &self.kind) {
            (Scalar::Rat(r), FieldKind::Rationals) => {
                if zl::int_valuation_or_zero(r.denom(), prime.ell) > 0 {
                    return Err(Error::NegativeValuation(format!(
                        "{} has ell = {} in its denominator",
                        rat_to_string(r),
                        prime.ell
                    )));
                }
                let num = bigint_mod(r.numer(), prime.ell);
                let den = bigint_mod(r.denom(), prime.ell);
                Ok(Scalar::Fp { p: prime.ell, val: fp::mulm(num, fp::invm(den, prime.ell)?, prime.ell) })
            }
            (Scalar::Cyc { coeffs, .. }, FieldKind::Cyclotomic { e, min_poly }) => {
                if prime.ramified {
                    return self.reduce_ramified(coeffs, *e, min_poly, prime.ell, dst);
                }
                let g = prime.residue_factor.as_ref().expect("validated");
                let (y, den) = clear_denominators(coeffs);
                let k = zl::int_valuation_or_zero(&den, prime.ell);
                let m = &den / BigInt::from(prime.ell).pow(k as u32);
                let mu = min_poly_int(min_poly)?;
                let mut lift = zl::FactorLift::new(&mu, g, prime.ell)?;
                let precision = (k + 1) as u32;
                lift.raise_to(precision)?;
                let c = zl::rem_monic(&y, &lift.factor, &lift.modulus);
                let ell_k = BigInt::from(prime.ell).pow(k as u32);
                let mut residue_coeffs = Vec::with_capacity(c.len());
                for v in &c {
                    let (q, r) = num_integer::Integer::div_rem(v, &ell_k);
                    if !r.is_zero() {
                        return Err(Error::NegativeValuation(format!(
                            "element is not integral at ell = {}",
                            prime.ell
                        )));
                    }
                    residue_coeffs.push(bigint_mod(&q, prime.ell));
                }
                let m_inv = fp::invm(bigint_mod(&m, prime.ell), prime.ell)?;
                let residue_coeffs: Vec<u64> = residue_coeffs
                    .iter()
                    .map(|&v| fp::mulm(v, m_inv, prime.ell))
                    .collect();
                Ok(match dst.kind() {
                    FieldKind::PrimeField { p } => Scalar::Fp {
                        p: *p,
                        val: residue_coeffs.first().copied().unwrap_or(0),
                    },
                    FieldKind::ExtField { p, modulus } => Scalar::Fq {
                        p: *p,
                        coeffs: pad(&residue_coeffs, modulus.len() - 1),
                    },
                    _ => unreachable!(),
                })
            }
            _ => Err(Error::UnsupportedPrime(
                "reduction is defined over Q and cyclotomic fields only".into(),
            )),
        }
    }

    /// Reduction at the unique prime over ell when e is a power of ell:
    /// zeta maps to 1. x = z * (pi^d/ell)^k / m with z integral, d the
    /// degree of the minimal polynomial, pi = 1 - zeta.
    fn reduce_ramified(
        &self,
        coeffs: &[BigRational],
        _e: u32,
        min_poly: &QPoly,
        ell: u64,
        dst: &FieldCtx,
    ) -> Result<Scalar> {
        let d = min_poly.len() - 1;
        let (y, den) = clear_denominators(coeffs);
        let k = zl::int_valuation_or_zero(&den, ell);
        let m = &den / BigInt::from(ell).pow(k as u32);
        // pi^{-1} once via EEA, then k*(ell-1) exact divisions.
        let pi = {
            let mut v = vec![BigRational::zero(); d];
            v[0] = BigRational::one();
            if d > 1 {
                v[1] = -BigRational::one();
            } else {
                // degree 1 means e = 2: pi = 1 - zeta with zeta = -min_poly[0]
                v[0] = BigRational::one() + min_poly[0].clone();
            }
            Scalar::Cyc { e: _e, coeffs: v }
        };
        let pi_inv = self.inv(&pi)?;
        let mut z = Scalar::Cyc {
            e: _e,
            coeffs: pad_q(&y.iter().map(|c| BigRational::from(c.clone())).collect::<QPoly>(), d),
        };
        let steps = k as u64 * (d as u64);
        for _ in 0..steps {
            z = self.mul(&z, &pi_inv)?;
            if !scalar_coeffs_integral(&z) {
                return Err(Error::NegativeValuation(format!(
                    "element is not integral at the ramified prime over {ell}"
                )));
            }
        }
        // u' = ell / pi^(ell-1) is a unit of the ring of integers.
        let mut upr = self.from_int(ell as i64);
        for _ in 0..d {
            upr = self.mul(&upr, &pi_inv)?;
        }
        debug_assert!(scalar_coeffs_integral(&upr));
        let eval1 = |s: &Scalar| -> u64 {
            match s {
                Scalar::Cyc { coeffs, .. } => {
                    let mut acc = BigInt::zero();
                    for c in coeffs {
                        debug_assert!(c.denom().is_one());
                        acc += c.numer();
                    }
                    bigint_mod(&acc, ell)
                }
                _ => unreachable!(),
            }
        };
        let z1 = eval1(&z);
        let u1 = eval1(&upr);
        let m_inv = fp::invm(bigint_mod(&m, ell), ell)?;
        let u1_pow_k = fp::powm(u1, k, ell);
        let val = fp::mulm(fp::mulm(z1, fp::invm(u1_pow_k, ell)?, ell), m_inv, ell);
        match dst.kind() {
            FieldKind::PrimeField { p } => Ok(Scalar::Fp { p: *p, val }),
            _ => unreachable!("residue field of a ramified prime is F_ell"),
        }
    }

    /// Field norm down to Q: determinant of the multiplication matrix on the
    /// power basis. Defined for cyclotomic scalars (and trivially for Q).
    pub fn norm(&self, x: &Scalar) -> Result<BigRational> {
        self.check(x)?;
        match (x, &self.kind) {
            (Scalar::Rat(r), FieldKind::Rationals) => Ok(r.clone()),
            (Scalar::Cyc { .. }, FieldKind::Cyclotomic { min_poly, .. }) => {
                let d = min_poly.len() - 1;
                let mut rows = Vec::with_capacity(d);
                let mut power = self.one();
                for i in 0..d {
                    if i > 0 {
                        power = self.mul(&power, &self.generator()?)?;
                    }
                    let prod = self.mul(x, &power)?;
                    match prod {
                        Scalar::Cyc { coeffs, .. } => rows.push(coeffs),
                        _ => unreachable!(),
                    }
                }
                Ok(det_q(rows))
            }
            _ => Err(Error::InvalidInput("norm defined for characteristic-zero fields".into())),
        }
    }

    /// Denominator data for criteria ideals: the positive integer t with
    /// t*x integral (lcm of coefficient denominators; the denominator for Q).
    pub fn denominator(&self, x: &Scalar) -> Result<BigInt> {
        self.check(x)?;
        Ok(match x {
            Scalar::Rat(r) => r.denom().clone(),
            Scalar::Cyc { coeffs, .. } => clear_denominators(coeffs).1,
            _ => BigInt::one(),
        })
    }
}

// ----------------------------------------------------------------------
// helpers

fn pad(f: &[u64], len: usize) -> Vec<u64> {
    let mut out = f.to_vec();
    out.resize(len, 0);
    out
}

fn pad_q(f: &QPoly, len: usize) -> Vec<BigRational> {
    let mut out = f.clone();
    out.resize(len, BigRational::zero());
    out
}

fn balanced(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a * 2 >= p {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

fn is_prime_power_of(mut e: u64, ell: u64) -> bool {
    if e < 2 {
        return false;
    }
    while e % ell == 0 {
        e /= ell;
    }
    e == 1
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = n % &m;
    let r = if r.sign() == Sign::Minus { r + &m } else { r };
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational: {s}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational: {s}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator: {s}")));
    }
    Ok(BigRational::new(n, d))
}

/// (integer coefficient vector, common denominator > 0)
fn clear_denominators(coeffs: &[BigRational]) -> (zl::ZPoly, BigInt) {
    let mut den = BigInt::one();
    for c in coeffs {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        out.push(c.numer() * (&den / c.denom()));
    }
    while out.last().map(|c: &BigInt| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    (out, den)
}

fn scalar_coeffs_integral(s: &Scalar) -> bool {
    match s {
        Scalar::Cyc { coeffs, .. } => coeffs.iter().all(|c| c.denom().is_one()),
        Scalar::Rat(r) => r.denom().is_one(),
        _ => true,
    }
}

fn min_poly_mod(min_poly: &QPoly, ell: u64) -> Result<fp::FpPoly> {
    let mut out = Vec::with_capacity(min_poly.len());
    for c in min_poly {
        if !c.denom().is_one() {
            return Err(Error::InvalidInput("minimal polynomial must be integral".into()));
        }
        out.push(bigint_mod(c.numer(), ell));
    }
    Ok(fp::trim(out))
}

fn min_poly_int(min_poly: &QPoly) -> Result<zl::ZPoly> {
    let mut out = Vec::with_capacity(min_poly.len());
    for c in min_poly {
        if !c.denom().is_one() {
            return Err(Error::InvalidInput("minimal polynomial must be integral".into()));
        }
        out.push(c.numer().clone());
    }
    Ok(out)
}

/// Determinant over Q by Gaussian elimination with exact fractions.
fn det_q(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let lead = rows[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..n {
                let t = &factor * &rows[col][c];
                rows[r][c] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn rat(s: &str) -> Scalar {
        q().scalar_from_str(s).unwrap()
    }

    #[test]
    fn rational_field_ops() {
        let f = q();
        let a = rat("2/3");
        let b = rat("-1/6");
        assert_eq!(f.add(&a, &b).unwrap(), rat("1/2"));
        assert_eq!(f.mul(&a, &b).unwrap(), rat("-1/9"));
        assert_eq!(f.inv(&a).unwrap(), rat("3/2"));
        assert_eq!(f.scalar_to_string(&rat("4/2")), "2");
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn prime_field_ops() {
        let f = FieldCtx::prime_field(7).unwrap();
        let a = f.scalar_from_str("5").unwrap();
        let b = f.scalar_from_str("-1").unwrap();
        assert_eq!(f.add(&a, &b).unwrap(), f.from_int(4));
        assert_eq!(f.inv(&a).unwrap(), f.from_int(3));
        assert!(FieldCtx::prime_field(6).is_err());
    }

    #[test]
    fn ext_field_f4() {
        let f = FieldCtx::ext_field(2, vec![1, 1, 1]).unwrap();
        let x = f.generator().unwrap();
        let x1 = f.add(&x, &f.one()).unwrap();
        // x * (x+1) = x^2 + x = 1 in F_4
        assert_eq!(f.mul(&x, &x1).unwrap(), f.one());
        assert_eq!(f.inv(&x).unwrap(), x1);
        assert_eq!(f.scalar_to_string(&x), "[0,1]");
        assert_eq!(f.scalar_from_str("[0,1]").unwrap(), x);
        assert!(FieldCtx::ext_field(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn cyclotomic_field_q_i() {
        let f = FieldCtx::cyclotomic(4).unwrap();
        let i = f.generator().unwrap();
        assert_eq!(f.mul(&i, &i).unwrap(), f.from_int(-1));
        let half_minus_i = f.scalar_from_str("[\"1/2\",\"-1\"]").unwrap();
        let expected = f
            .sub(&f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(), &i)
            .unwrap();
        assert_eq!(half_minus_i, expected);
        assert_eq!(f.scalar_to_string(&half_minus_i), "[\"1/2\",\"-1\"]");
        // (1+i)(1-i) = 2
        let a = f.add(&f.one(), &i).unwrap();
        let b = f.sub(&f.one(), &i).unwrap();
        assert_eq!(f.mul(&a, &b).unwrap(), f.from_int(2));
    }

    #[test]
    fn rational_valuations() {
        let f = q();
        let p2 = PrimeSpec::rational(2);
        assert_eq!(f.valuation(&rat("12/5"), &p2).unwrap(), Valuation::Finite(2));
        assert_eq!(f.valuation(&rat("5/8"), &p2).unwrap(), Valuation::Finite(-3));
        assert_eq!(f.valuation(&f.zero(), &p2).unwrap(), Valuation::Infinity);
    }

    #[test]
    fn ramified_valuation_of_one_minus_zeta3() {
        let f = FieldCtx::cyclotomic(3).unwrap();
        let x = f.sub(&f.one(), &f.generator().unwrap()).unwrap();
        // Norm(1 - zeta_3) = 3, fully ramified, so v = 1.
        assert_eq!(f.norm(&x).unwrap(), BigRational::from(BigInt::from(3)));
        let p = PrimeSpec::ramified(3);
        assert_eq!(f.valuation(&x, &p).unwrap(), Valuation::Finite(1));
        assert_eq!(f.valuation(&f.from_int(3), &p).unwrap(), Valuation::Finite(2));
    }

    #[test]
    fn unramified_valuation_in_q_zeta3() {
        let f = FieldCtx::cyclotomic(3).unwrap();
        let zeta = f.generator().unwrap();
        let p = PrimeSpec::unramified(7, vec![5, 1]); // zeta -> 2
        let x = f.sub(&zeta, &f.from_int(2)).unwrap();
        assert_eq!(f.valuation(&x, &p).unwrap(), Valuation::Finite(1));
        let y = f.add(&f.one(), &zeta).unwrap();
        assert_eq!(f.valuation(&y, &p).unwrap(), Valuation::Finite(0));
        // at the conjugate prime (zeta -> 4), zeta - 2 is a unit
        let p4 = PrimeSpec::unramified(7, vec![3, 1]);
        assert_eq!(f.valuation(&x, &p4).unwrap(), Valuation::Finite(0));
    }

    #[test]
    fn reduce_q_zeta3_to_f7() {
        let f = FieldCtx::cyclotomic(3).unwrap();
        let zeta = f.generator().unwrap();
        let p = PrimeSpec::unramified(7, vec![5, 1]);
        let dst = f.residue_ctx(&p).unwrap();
        assert_eq!(dst, FieldCtx::prime_field(7).unwrap());
        let x = f.add(&f.one(), &zeta).unwrap();
        assert_eq!(f.reduce_mod(&x, &p, &dst).unwrap(), dst.from_int(3));
        // (zeta - 2)/7 has valuation 0 at this prime: image must be defined
        let y = f.div(&f.sub(&zeta, &f.from_int(2)).unwrap(), &f.from_int(7)).unwrap();
        assert_eq!(f.valuation(&y, &p).unwrap(), Valuation::Finite(0));
        let img = f.reduce_mod(&y, &p, &dst).unwrap();
        // (zeta-2)/7 * (conjugate stuff): verify by reducing 7*y + 2 = zeta
        let back = dst.sub(&dst.mul(&img, &dst.from_int(7)).unwrap(), &dst.zero()).unwrap();
        let _ = back; // 7 = 0 in F_7; instead check via the other factor:
        // (zeta-2)(zeta-4) = zeta^2 - 6 zeta + 8 = (-1 - zeta) - 6 zeta + 8 = 7 - 7 zeta
        // so y * (zeta-4) = 1 - zeta, giving img * (2-4) = 1 - 2 = -1, img = 1/2 * ...
        let z_minus_4 = dst.sub(&dst.from_int(2), &dst.from_int(4)).unwrap();
        let lhs = dst.mul(&img, &z_minus_4).unwrap();
        assert_eq!(lhs, dst.from_int(-1));
        // non-integral input errors
        let bad = f.div(&f.add(&f.one(), &zeta).unwrap(), &f.from_int(7)).unwrap();
        assert!(matches!(f.reduce_mod(&bad, &p, &dst), Err(Error::NegativeValuation(_))));
    }

    #[test]
    fn reduce_ramified_q_zeta3_to_f3() {
        let f = FieldCtx::cyclotomic(3).unwrap();
        let zeta = f.generator().unwrap();
        let p = PrimeSpec::ramified(3);
        let dst = f.residue_ctx(&p).unwrap();
        assert_eq!(f.reduce_mod(&zeta, &p, &dst).unwrap(), dst.from_int(1));
        // (1-zeta)^2/3 = -zeta maps to -1 = 2
        let pi = f.sub(&f.one(), &zeta).unwrap();
        let x = f.div(&f.mul(&pi, &pi).unwrap(), &f.from_int(3)).unwrap();
        assert_eq!(x, f.neg(&zeta).unwrap());
        assert_eq!(f.reduce_mod(&x, &p, &dst).unwrap(), dst.from_int(2));
        // 1/3 is not integral
        let bad = f.inv(&f.from_int(3)).unwrap();
        assert!(matches!(f.reduce_mod(&bad, &p, &dst), Err(Error::NegativeValuation(_))));
    }

    #[test]
    fn ramified_prime_power_in_q_i() {
        // e = 4 = 2^2: the prime over 2 is (1 - i), totally ramified.
        let f = FieldCtx::cyclotomic(4).unwrap();
        let i = f.generator().unwrap();
        let p = PrimeSpec::ramified(2);
        f.validate_prime(&p).unwrap();
        let pi = f.sub(&f.one(), &i).unwrap();
        assert_eq!(f.valuation(&pi, &p).unwrap(), Valuation::Finite(1));
        assert_eq!(f.valuation(&f.from_int(2), &p).unwrap(), Valuation::Finite(2));
        let dst = f.residue_ctx(&p).unwrap();
        assert_eq!(f.reduce_mod(&i, &p, &dst).unwrap(), dst.from_int(1));
        // (1-i)^2/2 = -i is a unit and reduces to 1
        let u = f.div(&f.mul(&pi, &pi).unwrap(), &f.from_int(2)).unwrap();
        assert_eq!(u, f.neg(&i).unwrap());
        assert_eq!(f.valuation(&u, &p).unwrap(), Valuation::Finite(0));
        assert_eq!(f.reduce_mod(&u, &p, &dst).unwrap(), dst.from_int(1));
        // (1+i)/2 has valuation 1 - 2
        let x = f.div(&f.add(&f.one(), &i).unwrap(), &f.from_int(2)).unwrap();
        assert_eq!(f.valuation(&x, &p).unwrap(), Valuation::Finite(-1));
        assert!(matches!(f.reduce_mod(&x, &p, &dst), Err(Error::NegativeValuation(_))));
        // e = 6 is not a power of 2 or 3
        let f6 = FieldCtx::cyclotomic(6).unwrap();
        assert!(f6.validate_prime(&PrimeSpec::ramified(2)).is_err());
        assert!(f6.validate_prime(&PrimeSpec::ramified(3)).is_err());
    }

    #[test]
    fn reduce_to_extension_residue_field() {
        // 11 has order 3 mod 5? 11 mod 5 = 1... use e = 5, ell = 2: ord(2 mod 5) = 4,
        // so Phi_5 is irreducible mod 2 and the residue field is F_16.
        let f = FieldCtx::cyclotomic(5).unwrap();
        let p = PrimeSpec::unramified(2, vec![1, 1, 1, 1, 1]);
        let dst = f.residue_ctx(&p).unwrap();
        assert_eq!(dst.degree(), 4);
        let zeta = f.generator().unwrap();
        let img = f.reduce_mod(&zeta, &p, &dst).unwrap();
        assert_eq!(img, dst.generator().unwrap());
        assert_eq!(dst.pow(&img, 5).unwrap(), dst.one());
    }

    #[test]
    fn prime_validation_rejects_bad_specs() {
        let f = FieldCtx::cyclotomic(6).unwrap();
        // ell = 2 divides e = 6 and e != ell: unsupported
        assert!(matches!(
            f.validate_prime(&PrimeSpec::unramified(2, vec![1, 1])),
            Err(Error::UnsupportedPrime(_))
        ));
        assert!(matches!(
            f.validate_prime(&PrimeSpec::ramified(2)),
            Err(Error::UnsupportedPrime(_))
        ));
        // Phi_6 = x^2 - x + 1 = (x - 3)(x - 5) mod 7
        let f7 = PrimeSpec::unramified(7, vec![4, 1]); // x + 4 = x - 3
        f.validate_prime(&f7).unwrap();
        assert!(matches!(
            f.validate_prime(&PrimeSpec::unramified(7, vec![1, 1])),
            Err(Error::UnsupportedPrime(_))
        ));
        // 5 is inert in Q(zeta_6): Phi_6 itself is the residue factor
        f.validate_prime(&PrimeSpec::unramified(5, vec![1, 4, 1])).unwrap();
    }

    #[test]
    fn norm_multiplicativity() {
        let f = FieldCtx::cyclotomic(4).unwrap();
        let i = f.generator().unwrap();
        let a = f.add(&f.from_int(2), &i).unwrap(); // 2 + i, norm 5
        let b = f.sub(&f.from_int(1), &i).unwrap(); // 1 - i, norm 2
        assert_eq!(f.norm(&a).unwrap(), BigRational::from(BigInt::from(5)));
        assert_eq!(f.norm(&b).unwrap(), BigRational::from(BigInt::from(2)));
        let ab = f.mul(&a, &b).unwrap();
        assert_eq!(f.norm(&ab).unwrap(), BigRational::from(BigInt::from(10)));
    }
}
