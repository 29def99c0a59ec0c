//! Exact scalar arithmetic for the linear-algebra layer.
//!
//! Every computation in this crate that touches a matrix runs over a [`Field`]:
//! arbitrary-precision rationals by default, or integers modulo a prime when a
//! finite field is requested. There is no floating point anywhere; isomorphism
//! checks rely on exact equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Exact rational scalar, the default coefficient field.
pub type Rat = num::BigRational;

/// Scalars the matrix code can eliminate over.
///
/// `Zero`/`One` come from `num-traits` so generic code can build identity and
/// zero blocks without a field descriptor in scope.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + 'static
{
}

impl Field for Rat {}

/// Element of the prime field `Z/p` with the modulus chosen at run time.
///
/// A modulus of `0` marks a plain integer that has not met a concrete field
/// element yet (`Zero::zero()` and `One::one()` have no modulus to consult).
/// Such values are absorbed into the other operand's modulus on first contact.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    raw: i64,
    modulus: u64,
}

impl Fp {
    /// Reduces `raw` into `Z/modulus`. Panics if `modulus` is not prime.
    pub fn new(raw: i64, modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        Fp {
            raw: reduce(raw, modulus),
            modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical representative in `0..modulus` (or the raw integer if the
    /// modulus is still pending).
    pub fn residue(&self) -> i64 {
        self.raw
    }

    fn pinned(&self, modulus: u64) -> Self {
        if self.modulus == modulus {
            *self
        } else if self.modulus == 0 {
            Fp {
                raw: reduce(self.raw, modulus),
                modulus,
            }
        } else {
            panic!(
                "mixed moduli {} and {} in one computation",
                self.modulus, modulus
            );
        }
    }

    fn align(a: &Fp, b: &Fp) -> (Fp, Fp, u64) {
        let m = if a.modulus != 0 { a.modulus } else { b.modulus };
        (a.pinned(m), b.pinned(m), m)
    }
}

fn reduce(raw: i64, modulus: u64) -> i64 {
    let m = modulus as i64;
    ((raw % m) + m) % m
}

/// Modular inverse by extended Euclid; `value` must be nonzero mod `modulus`.
fn mod_inverse(value: i64, modulus: u64) -> i64 {
    let m = modulus as i64;
    let (mut old_r, mut r) = (value, m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r.abs() == 1, "element has no inverse mod {modulus}");
    reduce(old_s * old_r.signum(), modulus)
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = if self.modulus == 0 && other.modulus == 0 {
            return self.raw == other.raw;
        } else {
            Fp::align(self, other)
        };
        a.raw == b.raw
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        if self.modulus == 0 && rhs.modulus == 0 {
            return Fp {
                raw: self.raw.checked_add(rhs.raw).expect("pending-modulus overflow"),
                modulus: 0,
            };
        }
        let (a, b, m) = Fp::align(&self, &rhs);
        Fp {
            raw: reduce(a.raw + b.raw, m),
            modulus: m,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            Fp {
                raw: -self.raw,
                modulus: 0,
            }
        } else {
            Fp {
                raw: reduce(-self.raw, self.modulus),
                modulus: self.modulus,
            }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        if self.modulus == 0 && rhs.modulus == 0 {
            return Fp {
                raw: self.raw.checked_mul(rhs.raw).expect("pending-modulus overflow"),
                modulus: 0,
            };
        }
        let (a, b, m) = Fp::align(&self, &rhs);
        Fp {
            raw: reduce(
                (a.raw as i128 * b.raw as i128 % m as i128) as i64,
                m,
            ),
            modulus: m,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        if self.modulus == 0 && rhs.modulus == 0 {
            assert!(rhs.raw != 0, "division by zero");
            assert!(
                self.raw % rhs.raw == 0,
                "inexact division of pending-modulus integers {} / {}",
                self.raw,
                rhs.raw
            );
            return Fp {
                raw: self.raw / rhs.raw,
                modulus: 0,
            };
        }
        let (a, b, m) = Fp::align(&self, &rhs);
        assert!(b.raw != 0, "division by zero mod {m}");
        a * Fp {
            raw: mod_inverse(b.raw, m),
            modulus: m,
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { raw: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.raw == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { raw: 1, modulus: 0 }
    }
    fn is_one(&self) -> bool {
        self.raw == 1
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw)
    }
}

impl Field for Fp {}

/// Deterministic Miller-Rabin over the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow = |mut base: u128, mut exp: u64, m: u128| -> u128 {
        let mut acc = 1u128;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    };
    // Sufficient witness set for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The rational `n/1`.
pub fn rat(n: i64) -> Rat {
    Rat::from(num::BigInt::from(n))
}

/// Parses a rational written as `a` or `a/b`.
pub fn parse_rational(text: &str) -> Option<Rat> {
    use num::BigInt;
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = text.parse().ok()?;
        Some(Rat::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_basic_arithmetic() {
        let a = Fp::new(5, 7);
        let b = Fp::new(4, 7);
        assert_eq!(a + b, Fp::new(2, 7));
        assert_eq!(a * b, Fp::new(6, 7));
        assert_eq!(a - b, Fp::new(1, 7));
        assert_eq!(a / b, Fp::new(3, 7)); // 4 * 3 = 12 = 5 mod 7
        assert_eq!(-a, Fp::new(2, 7));
    }

    #[test]
    fn fp_pending_modulus_is_absorbed() {
        let one = Fp::one();
        let a = Fp::new(4, 5);
        assert_eq!(one + a, Fp::new(0, 5));
        assert_eq!((-Fp::one()) * a, Fp::new(1, 5));
        assert!(Fp::zero().is_zero());
        assert_eq!(Fp::one(), Fp::new(1, 5));
        assert_eq!(Fp::zero(), Fp::new(0, 11));
    }

    #[test]
    fn fp_negative_reduction() {
        assert_eq!(Fp::new(-1, 7), Fp::new(6, 7));
        assert_eq!(Fp::new(-15, 7), Fp::new(6, 7));
    }

    #[test]
    #[should_panic(expected = "mixed moduli")]
    fn fp_rejects_mixed_moduli() {
        let _ = Fp::new(1, 5) + Fp::new(1, 7);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(7919));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(7917));
    }

    #[test]
    fn rational_parsing() {
        use num::BigInt;
        assert_eq!(parse_rational("3"), Some(Rat::from(BigInt::from(3))));
        assert_eq!(
            parse_rational("-4/6"),
            Some(Rat::new(BigInt::from(-2), BigInt::from(3)))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
