//! Dense univariate polynomials over a [`Field`], coefficients lowest degree first.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Field, FieldId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Poly {
    #[serde(skip)]
    pub field: FieldId,
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: FieldId, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldId) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldId) -> Self {
        Poly {
            field,
            coeffs: vec![1],
        }
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(f: &Field, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = f.neg(1);
        c[n] = 1;
        Poly::new(f.id(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn check(&self, other: &Poly, f: &Field) -> Result<()> {
        if self.field != f.id() || other.field != f.id() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Result<Poly> {
        self.check(other, f)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field, c))
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Result<Poly> {
        self.check(other, f)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field, c))
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Result<Poly> {
        self.check(other, f)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(self.field, c))
    }

    pub fn scale(&self, s: u32, f: &Field) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn monic(&self, f: &Field) -> Result<Poly> {
        let inv = f.inv(self.leading())?;
        Ok(self.scale(inv, f))
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        self.check(divisor, f)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    pub fn eval(&self, x: u32, f: &Field) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &Field) -> Result<Poly> {
        self.check(other, f)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b, f)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(f)
        }
    }

    pub fn lcm(&self, other: &Poly, f: &Field) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let g = self.gcd(other, f)?;
        let (q, _) = self.mul(other, f)?.divmod(&g, f)?;
        q.monic(f)
    }

    /// `x^deg · p(1/x)`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.field, c)
    }
}
