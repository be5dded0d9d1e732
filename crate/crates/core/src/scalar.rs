//! Exact scalar arithmetic over the supported ground rings: arbitrary-precision
//! integers and rationals, prime fields, and the quadratic extension field with
//! p^2 elements (the smallest ring with a nontrivial automorphism, its Frobenius).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The ground ring of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField { p: u64 },
    /// The field with p^2 elements, realized as F_p[x]/(q(x)) for the
    /// lexicographically least irreducible monic quadratic q.
    QuadExt { p: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingSpec::PrimeField { p })
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn quad_ext(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingSpec::QuadExt { p })
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn name(&self) -> String {
        match self {
            RingSpec::Integers => "Z".into(),
            RingSpec::Rationals => "Q".into(),
            RingSpec::PrimeField { p } => format!("F{p}"),
            RingSpec::QuadExt { p } => format!("F{}", p * p),
        }
    }

    /// Coefficients (a, b) of the defining modulus x^2 + a x + b of QuadExt(p):
    /// the lexicographically least (a, b) making the quadratic irreducible.
    pub fn quad_modulus(p: u64) -> (u64, u64) {
        for a in 0..p {
            for b in 0..p {
                let mut has_root = false;
                for x in 0..p {
                    if (x * x + a * x + b) % p == 0 {
                        has_root = true;
                        break;
                    }
                }
                if !has_root {
                    return (a, b);
                }
            }
        }
        unreachable!("an irreducible monic quadratic exists over every prime field")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Fp(u64),
    /// c0 + c1 x in F_p[x]/(x^2 + a x + b).
    Fp2(u64, u64),
}

/// An exact element of a [`RingSpec`]. Residues are kept in `[0, p)` and
/// rationals reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    ring: RingSpec,
    value: Value,
}

impl Scalar {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_int(ring, 1)
    }

    /// The image of the integer `n` in the ring.
    pub fn from_int(ring: RingSpec, n: i64) -> Self {
        Self::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: RingSpec, n: BigInt) -> Self {
        let value = match ring {
            RingSpec::Integers => Value::Int(n),
            RingSpec::Rationals => Value::Rat(BigRational::from_integer(n)),
            RingSpec::PrimeField { p } => Value::Fp(mod_reduce(&n, p)),
            RingSpec::QuadExt { p } => Value::Fp2(mod_reduce(&n, p), 0),
        };
        Scalar { ring, value }
    }

    /// The generator x of QuadExt(p).
    pub fn quad_gen(p: u64) -> Self {
        Scalar {
            ring: RingSpec::QuadExt { p },
            value: Value::Fp2(0, 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Rat(r) => r.is_zero(),
            Value::Fp(v) => *v == 0,
            Value::Fp2(c0, c1) => *c0 == 0 && *c1 == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Rat(r) => r.is_one(),
            Value::Fp(v) => *v == 1,
            Value::Fp2(c0, c1) => *c0 == 1 && *c1 == 0,
        }
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.name(),
                other.ring.name(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Fp(a), Value::Fp(b)) => {
                let p = self.prime();
                Value::Fp((a + b) % p)
            }
            (Value::Fp2(a0, a1), Value::Fp2(b0, b1)) => {
                let p = self.prime();
                Value::Fp2((a0 + b0) % p, (a1 + b1) % p)
            }
            _ => unreachable!("ring checked"),
        };
        Ok(Scalar { ring: self.ring, value })
    }

    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Fp(a) => {
                let p = self.prime();
                Value::Fp((p - a) % p)
            }
            Value::Fp2(a0, a1) => {
                let p = self.prime();
                Value::Fp2((p - a0) % p, (p - a1) % p)
            }
        };
        Scalar { ring: self.ring, value }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Fp(a), Value::Fp(b)) => Value::Fp(mul_mod(*a, *b, self.prime())),
            (Value::Fp2(a0, a1), Value::Fp2(b0, b1)) => {
                let p = self.prime();
                let (qa, qb) = RingSpec::quad_modulus(p);
                // (a0 + a1 x)(b0 + b1 x) with x^2 = -qa x - qb.
                let c0 = mul_mod(*a0, *b0, p);
                let c1 = (mul_mod(*a0, *b1, p) + mul_mod(*a1, *b0, p)) % p;
                let c2 = mul_mod(*a1, *b1, p);
                let r0 = (c0 + mul_mod(c2, (p - qb) % p, p)) % p;
                let r1 = (c1 + mul_mod(c2, (p - qa) % p, p)) % p;
                Value::Fp2(r0, r1)
            }
            _ => unreachable!("ring checked"),
        };
        Ok(Scalar { ring: self.ring, value })
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NonInvertible(self.to_string()));
        }
        let value = match &self.value {
            Value::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Value::Int(a.clone())
                } else {
                    return Err(Error::NonInvertible(self.to_string()));
                }
            }
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Fp(a) => Value::Fp(inv_mod(*a, self.prime())?),
            Value::Fp2(..) => {
                // x^(p^2 - 2) by square-and-multiply.
                let p = self.prime();
                let mut e = p * p - 2;
                let mut acc = Scalar::one(self.ring);
                let mut base = self.clone();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul(&base)?;
                    }
                    base = base.mul(&base)?;
                    e >>= 1;
                }
                return Ok(acc);
            }
        };
        Ok(Scalar { ring: self.ring, value })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = Scalar::one(self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    /// The Frobenius x -> x^p on QuadExt(p); the identity on every other ring
    /// (whose automorphism group is trivial).
    pub fn frobenius(&self) -> Scalar {
        match self.ring {
            RingSpec::QuadExt { p } => self.pow(p),
            _ => self.clone(),
        }
    }

    fn prime(&self) -> u64 {
        match self.ring {
            RingSpec::PrimeField { p } | RingSpec::QuadExt { p } => p,
            _ => unreachable!("prime() on non-modular ring"),
        }
    }

    /// Reinterpret an integer scalar over the rationals.
    pub fn to_rational(&self) -> Result<Scalar> {
        match &self.value {
            Value::Int(n) => Ok(Scalar {
                ring: RingSpec::Rationals,
                value: Value::Rat(BigRational::from_integer(n.clone())),
            }),
            Value::Rat(_) => Ok(self.clone()),
            _ => Err(Error::Invalid("not an integer or rational scalar".into())),
        }
    }

    pub fn as_bigint(&self) -> Result<BigInt> {
        match &self.value {
            Value::Int(n) => Ok(n.clone()),
            _ => Err(Error::Invalid("not an integer scalar".into())),
        }
    }

    pub fn as_bigrational(&self) -> Result<BigRational> {
        match &self.value {
            Value::Rat(r) => Ok(r.clone()),
            Value::Int(n) => Ok(BigRational::from_integer(n.clone())),
            _ => Err(Error::Invalid("not a rational scalar".into())),
        }
    }

    pub fn as_residue(&self) -> Result<u64> {
        match &self.value {
            Value::Fp(v) => Ok(*v),
            _ => Err(Error::Invalid("not a prime-field scalar".into())),
        }
    }

    pub fn as_residue_pair(&self) -> Result<(u64, u64)> {
        match &self.value {
            Value::Fp2(c0, c1) => Ok((*c0, *c1)),
            Value::Fp(v) => Ok((*v, 0)),
            _ => Err(Error::Invalid("not an extension-field scalar".into())),
        }
    }

    pub fn from_residue_pair(ring: RingSpec, c0: u64, c1: u64) -> Result<Scalar> {
        match ring {
            RingSpec::QuadExt { p } => Ok(Scalar {
                ring,
                value: Value::Fp2(c0 % p, c1 % p),
            }),
            _ => Err(Error::Invalid("ring is not a quadratic extension".into())),
        }
    }

    /// Parse a canonical value string for the given ring: "2", "-3", "3/4",
    /// and for QuadExt strings such as "a", "2a+1", "1".
    pub fn parse(ring: RingSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot parse {s:?} over {}", ring.name()));
        match ring {
            RingSpec::Integers => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::from_bigint(ring, n))
            }
            RingSpec::Rationals => {
                if let Some((num, den)) = s.split_once('/') {
                    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                    if den.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar {
                        ring,
                        value: Value::Rat(BigRational::new(num, den)),
                    })
                } else {
                    let n: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(Scalar::from_bigint(ring, n))
                }
            }
            RingSpec::PrimeField { .. } => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::from_bigint(ring, n))
            }
            RingSpec::QuadExt { p } => {
                let mut c0 = 0u64;
                let mut c1 = 0u64;
                for term in s.split('+') {
                    let term = term.trim();
                    if let Some(coef) = term.strip_suffix('a') {
                        let coef = coef.trim();
                        let c: u64 = if coef.is_empty() {
                            1
                        } else {
                            coef.parse().map_err(|_| bad())?
                        };
                        c1 = (c1 + c) % p;
                    } else {
                        let c: BigInt = term.parse().map_err(|_| bad())?;
                        c0 = (c0 + mod_reduce(&c, p)) % p;
                    }
                }
                Ok(Scalar {
                    ring,
                    value: Value::Fp2(c0, c1),
                })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Fp(v) => write!(f, "{v}"),
            Value::Fp2(c0, c1) => match (c0, c1) {
                (_, 0) => write!(f, "{c0}"),
                (0, 1) => write!(f, "a"),
                (0, _) => write!(f, "{c1}a"),
                (_, 1) => write!(f, "a+{c0}"),
                _ => write!(f, "{c1}a+{c0}"),
            },
        }
    }
}

fn mod_reduce(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    r.to_u64().expect("reduced residue fits u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> Result<u64> {
    // Fermat: a^(p-2) mod p.
    if a % p == 0 {
        return Err(Error::NonInvertible(format!("{a} mod {p}")));
    }
    let mut e = p - 2;
    let mut acc = 1u64;
    let mut base = a % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    Ok(acc)
}
