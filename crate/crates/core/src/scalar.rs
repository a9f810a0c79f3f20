//! Exact rational scalars.
//!
//! `Q` keeps a reduced fraction of `i128`s while it fits and switches to an
//! arbitrary-precision fraction when an operation would overflow. Values are
//! always stored in the small form when possible, so equality and hashing
//! work on the representation directly.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i128>),
    Big(Box<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(Repr);

fn to_big(r: &Ratio<i128>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Q {
    pub const fn zero() -> Self {
        Q(Repr::Small(Ratio::new_raw(0, 1)))
    }

    pub const fn one() -> Self {
        Q(Repr::Small(Ratio::new_raw(1, 1)))
    }

    pub fn from_int(v: i64) -> Self {
        Q(Repr::Small(Ratio::from_integer(v as i128)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Q(Repr::Small(Ratio::new(num as i128, den as i128)))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) => Q(Repr::Small(Ratio::new_raw(n, d))),
            _ => Q(Repr::Big(Box::new(r))),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.numer().is_zero(),
            Repr::Big(_) => false,
        }
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(_) => false,
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.0 {
            Repr::Small(r) if *r.numer() != i128::MIN => Q(Repr::Small(r.recip())),
            _ => Q::from_big(self.big().recip()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// The value as a small integer, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => i64::try_from(*r.numer()).ok(),
            _ => None,
        }
    }

    /// Rough size of the numerator and denominator, in bits.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(r) => {
                (128 - r.numer().unsigned_abs().leading_zeros()).max(128 - r.denom().leading_zeros()) as u64
            }
            Repr::Big(b) => b.numer().bits().max(b.denom().bits()),
        }
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Self {
        Q::from_int(v)
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident, $op:tt) => {
        impl<'a> $tr<&'a Q> for &'a Q {
            type Output = Q;
            #[inline]
            fn $m(self, rhs: &Q) -> Q {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return Q(Repr::Small(r));
                    }
                }
                Q::from_big(self.big() $op rhs.big())
            }
        }

        impl $tr for Q {
            type Output = Q;
            #[inline]
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }

        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            #[inline]
            fn $m(self, rhs: &Q) -> Q {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    #[inline]
    fn div(self, rhs: &Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_div(b) {
                return Q(Repr::Small(r));
            }
        }
        Q::from_big(self.big() / rhs.big())
    }
}

impl Div for Q {
    type Output = Q;
    #[inline]
    fn div(self, rhs: Q) -> Q {
        (&self).div(&rhs)
    }
}

impl Div<&Q> for Q {
    type Output = Q;
    #[inline]
    fn div(self, rhs: &Q) -> Q {
        (&self).div(rhs)
    }
}

impl Neg for Q {
    type Output = Q;
    #[inline]
    fn neg(self) -> Q {
        match self.0 {
            Repr::Small(r) if *r.numer() != i128::MIN => Q(Repr::Small(-r)),
            _ => Q::from_big(-self.big()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    #[inline]
    fn neg(self) -> Q {
        -self.clone()
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, rhs: Q) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = &*self + rhs;
    }
}

impl SubAssign for Q {
    fn sub_assign(&mut self, rhs: Q) {
        *self = &*self - &rhs;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad number {s:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad number {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}
