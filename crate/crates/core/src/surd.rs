//! Exact quadratic irrationals (p + q*sqrt(D))/r.
//!
//! Used for positive-cone boundary slopes that are not lattice rays. The
//! representation is canonical: r > 0, D squarefree (square factors pulled
//! into q), gcd(p, q, r) = 1, and q = 0 forces D = 0.

use crate::scalar::{int, LatticeInt, Rational};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd<I> {
    pub p: I,
    pub q: I,
    pub d: I,
    pub r: I,
}

impl<I: LatticeInt> Surd<I> {
    /// Canonical (p + q*sqrt(d))/r.
    pub fn new(p: I, q: I, d: I, r: I) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(!d.is_negative(), "negative radicand");
        let (mut p, mut q, mut d, mut r) = (p, q, d, r);
        // pull square factors out of d
        if q.is_zero() || d.is_zero() {
            q = I::zero();
            d = I::zero();
        } else {
            let mut f: I = int(2);
            while f.clone() * f.clone() <= d {
                let f2 = f.clone() * f.clone();
                while d.mod_floor(&f2).is_zero() {
                    d = d.div_floor(&f2);
                    q = q * f.clone();
                }
                f = f + I::one();
            }
            if d == I::one() {
                p = p + q.clone();
                q = I::zero();
                d = I::zero();
            }
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if g > I::one() {
            p = p.div_floor(&g);
            q = q.div_floor(&g);
            r = r.div_floor(&g);
        }
        Surd { p, q, d, r }
    }

    pub fn sqrt_of(d: I) -> Self {
        Self::new(I::zero(), I::one(), d, I::one())
    }

    pub fn from_rational(x: &Rational<I>) -> Self {
        Self::new(x.numer().clone(), I::zero(), I::zero(), x.denom().clone())
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational<I>> {
        self.is_rational()
            .then(|| Rational::new(self.p.clone(), self.r.clone()))
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        // r > 0, so this is the sign of p + q*sqrt(d)
        sign_a_plus_b_sqrt(&self.p, &self.q, &self.d)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &Rational<I>) -> Ordering {
        // (p + q sqrt d)/r - a/b  ~  (pb - ar) + qb sqrt(d)   [times positive rb]
        let a = x.numer();
        let b = x.denom();
        let lin = self.p.clone() * b.clone() - a.clone() * self.r.clone();
        let rad = self.q.clone() * b.clone();
        sign_a_plus_b_sqrt(&lin, &rad, &self.d)
    }
}

/// Exact sign of a + b*sqrt(d), d >= 0.
fn sign_a_plus_b_sqrt<I: LatticeInt>(a: &I, b: &I, d: &I) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&I::zero());
    }
    match (a.is_negative(), b.is_negative()) {
        (false, false) => Ordering::Greater,
        (true, true) => Ordering::Less,
        (true, false) => {
            // sign of b^2 d - a^2
            (b.clone() * b.clone() * d.clone()).cmp(&(a.clone() * a.clone()))
        }
        (false, true) => (a.clone() * a.clone()).cmp(&(b.clone() * b.clone() * d.clone())),
    }
}

impl<I: LatticeInt> fmt::Display for Surd<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.r.is_one() {
                return write!(f, "{}", self.p);
            }
            return write!(f, "{}/{}", self.p, self.r);
        }
        let radical = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if self.q.is_negative() {
            format!("-{}*sqrt({})", -self.q.clone(), self.d)
        } else {
            format!("{}*sqrt({})", self.q, self.d)
        };
        let num = if self.p.is_zero() {
            radical
        } else if self.q.is_negative() {
            format!("{} - {}", self.p, &radical[1..])
        } else {
            format!("{} + {}", self.p, radical)
        };
        if self.r.is_one() {
            write!(f, "{}", num)
        } else {
            write!(f, "({})/{}", num, self.r)
        }
    }
}
