//! Closed rational intervals with outward-exact arithmetic.

use num_traits::{Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        self.mul(&Interval::point(c.clone()))
    }

    /// Tight enclosure of `{|x|}`.
    pub fn abs(&self) -> Interval {
        if self.lo >= Rational::zero() {
            self.clone()
        } else if self.hi <= Rational::zero() {
            self.neg()
        } else {
            Interval { lo: Rational::zero(), hi: self.lo.abs().max(self.hi.abs()) }
        }
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::point(Rational::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        if e % 2 == 0 && self.lo < Rational::zero() && self.hi > Rational::zero() {
            acc.lo = Rational::zero();
        }
        acc
    }

    /// Strictly below every point of `o`.
    pub fn strictly_below(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }
}
