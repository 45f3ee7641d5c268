//! Sparse bivariate polynomials over a [`Field`], with formal derivatives
//! and Taylor shifts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, FieldElem};

/// `Σ c_{ij} x^i y^j`, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly2 {
    field: Field,
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl Poly2 {
    pub fn zero(field: Field) -> Self {
        Poly2 {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: FieldElem, i: u32, j: u32) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field.one(), 1, 0)
    }

    pub fn y(field: Field) -> Self {
        Self::monomial(field.one(), 0, 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElem)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32), c: &FieldElem) {
        let sum = match self.terms.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly2 {
        let mut out = Poly2::zero(self.field);
        for (&k, v) in &self.terms {
            out.insert_add(k, &(v * c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        (0..e).fold(Poly2::constant(self.field.one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.terms.iter().fold(self.field.zero(), |acc, (&(i, j), c)| {
            &acc + &(c * &(&x.pow(i as u64) * &y.pow(j as u64)))
        })
    }

    /// Formal ∂/∂x.
    pub fn d_dx(&self) -> Poly2 {
        let mut out = Poly2::zero(self.field);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.insert_add((i - 1, j), &(c * &self.field.from_i64(i as i64)));
            }
        }
        out
    }

    /// Formal ∂/∂y.
    pub fn d_dy(&self) -> Poly2 {
        let mut out = Poly2::zero(self.field);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.insert_add((i, j - 1), &(c * &self.field.from_i64(j as i64)));
            }
        }
        out
    }

    /// `F(X + a, Y + b)` in the variables X, Y.
    pub fn shift(&self, a: &FieldElem, b: &FieldElem) -> Poly2 {
        let xs = &Poly2::x(self.field) + &Poly2::constant(a.clone());
        let ys = &Poly2::y(self.field) + &Poly2::constant(b.clone());
        let mut out = Poly2::zero(self.field);
        for (&(i, j), c) in &self.terms {
            out = &out + &(&xs.pow(i) * &ys.pow(j)).scale(c);
        }
        out
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        Poly2 {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Smallest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.insert_add(k, v);
        }
        out
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-self.field.one())
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(self.field);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.insert_add((i + k, j + l), &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, j) => {
                    let px = match i {
                        0 => String::new(),
                        1 => "x".into(),
                        i => format!("x^{i}"),
                    };
                    let py = match j {
                        0 => String::new(),
                        1 => "y".into(),
                        j => format!("y^{j}"),
                    };
                    px + &py
                }
            };
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c}){mono}")?;
            }
        }
        Ok(())
    }
}
