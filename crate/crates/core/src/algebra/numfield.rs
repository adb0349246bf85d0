//! Arithmetic in simple algebraic extensions `Q[x]/(f)`.

use std::sync::Arc;

use num_traits::One;

use super::linalg::FieldElem;
use super::rational::Rational;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Element of `Q[x]/(modulus)`; the representative is always reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldElement {
    modulus: Arc<UniPoly>,
    rep: UniPoly,
}

/// A field `Q(alpha)` given by the minimal polynomial of `alpha`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: Arc<UniPoly>,
}

impl NumberField {
    /// `modulus` must be irreducible over Q; it is made monic here.
    pub fn new(modulus: &UniPoly) -> Result<Self> {
        match modulus.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::InvalidArgument("modulus must be nonconstant".into())),
            Some(_) => Ok(NumberField { modulus: Arc::new(modulus.monic()) }),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn elem(&self, p: &UniPoly) -> NumberFieldElement {
        let (_, r) = p.div_rem(&self.modulus).expect("nonzero modulus");
        NumberFieldElement { modulus: self.modulus.clone(), rep: r }
    }

    pub fn from_rational(&self, c: &Rational) -> NumberFieldElement {
        self.elem(&UniPoly::constant(c.clone()))
    }

    /// The generator `alpha`.
    pub fn gen(&self) -> NumberFieldElement {
        self.elem(&UniPoly::x())
    }

    pub fn zero(&self) -> NumberFieldElement {
        self.elem(&UniPoly::zero())
    }

    pub fn one(&self) -> NumberFieldElement {
        self.elem(&UniPoly::one())
    }
}

impl NumberFieldElement {
    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn wrap(&self, p: UniPoly) -> Self {
        let (_, r) = p.div_rem(&self.modulus).expect("nonzero modulus");
        NumberFieldElement { modulus: self.modulus.clone(), rep: r }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.wrap(&self.rep + &o.rep)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.wrap(&self.rep - &o.rep)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.wrap(&self.rep * &o.rep)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.wrap(self.rep.scale(c))
    }

    /// Inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let (mut r0, mut r1) = ((*self.modulus).clone(), self.rep.clone());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        Ok(self.wrap(t0.scale(&(Rational::one() / r0.lead()))))
    }

    /// Evaluate a rational polynomial at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> Self {
        let mut acc = self.wrap(UniPoly::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.wrap(UniPoly::constant(c.clone())));
        }
        acc
    }
}

impl FieldElem for NumberFieldElement {
    fn zero_like(&self) -> Self {
        self.wrap(UniPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.wrap(UniPoly::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.rep.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_e(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_e(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn inv_e(&self) -> Self {
        self.inv().expect("pivot is invertible in a field")
    }
}
