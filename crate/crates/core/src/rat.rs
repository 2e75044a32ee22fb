//! Arbitrary-precision rational numbers with an inline `i64/i64` fast path.
//!
//! The words stay small in almost every computation this crate does, so the
//! representation keeps numerator and denominator in machine words and only
//! promotes to heap-allocated big integers when a product or sum overflows.
//! Values are always canonical: lowest terms, positive denominator, and
//! demoted back to the inline form whenever they fit.

use alloc::boxed::Box;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational number.
#[derive(Clone, PartialEq, Eq)]
pub enum Rat {
    /// numerator / denominator in lowest terms, denominator > 0
    Small(i64, i64),
    /// promoted pair, same invariants, at least one side outside i64
    Big(Box<(BigInt, BigInt)>),
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num as i128, den as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n.unsigned_abs(), d as u128) as i128;
        Rat::from_i128(n / g, d / g)
    }

    pub fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d > 0);
        if let (Ok(sn), Ok(sd)) = (i64::try_from(n), i64::try_from(d)) {
            Rat::Small(sn, sd)
        } else {
            Rat::Big(Box::new((BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(n: BigInt, d: BigInt) -> Rat {
        debug_assert!(d.is_positive());
        let g = n.gcd(&d);
        let (n, d) = (n / &g, d / g);
        match (n.to_i64(), d.to_i64()) {
            (Some(sn), Some(sd)) => Rat::Small(sn, sd),
            _ => Rat::Big(Box::new((n, d))),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.0.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.1 == BigInt::from(1),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                if *n < 0 {
                    Rat::from_i128(-(*d as i128), -(*n as i128))
                } else {
                    Rat::Small(*d, *n)
                }
            }
            Rat::Big(b) => {
                assert!(!b.0.is_zero(), "division by zero");
                if b.0.is_negative() {
                    Rat::from_big(-b.1.clone(), -b.0.clone())
                } else {
                    Rat::from_big(b.1.clone(), b.0.clone())
                }
            }
        }
    }

    fn to_big_parts(&self) -> (BigInt, BigInt) {
        match self {
            Rat::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    /// Numerator/denominator as i64 when the value is inline.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self {
            Rat::Small(n, d) => Some((*n, *d)),
            Rat::Big(_) => None,
        }
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::int(n as i64)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, rhs) {
            // a/b + c/d over i128 cannot overflow for i64 inputs
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let g = gcd_i128(b as u128, d as u128) as i128;
            let (db, dd) = (b / g, d / g);
            let num = a * dd + c * db;
            let den = b * dd;
            let g2 = gcd_i128(num.unsigned_abs(), den as u128) as i128;
            return Rat::from_i128(num / g2, den / g2);
        }
        let (an, ad) = self.to_big_parts();
        let (bn, bd) = rhs.to_big_parts();
        Rat::from_big(&an * &bd + &bn * &ad, ad * bd)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, rhs) {
            if *a == 0 || *c == 0 {
                return Rat::ZERO;
            }
            // cross-reduce first so the products stay small
            let g1 = gcd_i128(a.unsigned_abs() as u128, *d as u128) as i128;
            let g2 = gcd_i128(c.unsigned_abs() as u128, *b as u128) as i128;
            let num = (*a as i128 / g1) * (*c as i128 / g2);
            let den = (*b as i128 / g2) * (*d as i128 / g1);
            return Rat::from_i128(num, den);
        }
        let (an, ad) = self.to_big_parts();
        let (bn, bd) = rhs.to_big_parts();
        Rat::from_big(an * bn, ad * bd)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self + &(-rhs.clone())
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self * &rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, d),
                None => Rat::from_big(-BigInt::from(n), BigInt::from(d)),
            },
            Rat::Big(b) => Rat::from_big(-b.0, b.1),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, other) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (an, ad) = self.to_big_parts();
        let (bn, bd) = other.to_big_parts();
        (an * bd).cmp(&(bn * ad))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) if b.1 == 1.to_bigint().unwrap() => write!(f, "{}", b.0),
            Rat::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-2, -4), Rat::new(1, 2));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert!(Rat::new(0, 5).is_zero());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rat::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn field_ops() {
        let a = Rat::new(3, 4);
        let b = Rat::new(-5, 6);
        assert_eq!(&a + &b, Rat::new(-1, 12));
        assert_eq!(&a * &b, Rat::new(-5, 8));
        assert_eq!(&a / &b, Rat::new(-9, 10));
        assert_eq!(&a - &a, Rat::ZERO);
    }
}
