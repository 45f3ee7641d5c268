//! Weierstrass curves `y² + a1xy + a3y = x³ + a2x² + a4x + a6` over ℚ and
//! small finite fields.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldElem, FieldError};

/// Point counting is exhaustive; larger fields are refused.
pub const MAX_COUNT_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("the Weierstrass equation is singular (Δ = 0)")]
    SingularCurve,
    #[error("field of order {order} exceeds the point-counting limit {MAX_COUNT_ORDER}")]
    ScaleCap { order: String },
    #[error("operation is not available in {0}")]
    WrongCharacteristic(String),
    #[error("expected 5 coefficients, got {0}")]
    CoefficientCount(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassCurve {
    field: Field,
    a: [FieldElem; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub b2: FieldElem,
    pub b4: FieldElem,
    pub b6: FieldElem,
    pub b8: FieldElem,
    pub c4: FieldElem,
    pub discriminant: FieldElem,
}

impl WeierstrassCurve {
    /// Coefficients in the order `a1, a2, a3, a4, a6`.
    pub fn new(coeffs: [FieldElem; 5]) -> Result<Self, EllipticError> {
        let field = coeffs[0].field();
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(FieldError::FieldMismatch(field.to_string(), c.field().to_string()).into());
        }
        let curve = WeierstrassCurve { field, a: coeffs };
        if curve.invariants().discriminant.is_zero() {
            return Err(EllipticError::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_slice(coeffs: &[FieldElem]) -> Result<Self, EllipticError> {
        let arr: [FieldElem; 5] = coeffs
            .to_vec()
            .try_into()
            .map_err(|v: Vec<_>| EllipticError::CoefficientCount(v.len()))?;
        Self::new(arr)
    }

    /// `y² = x(x-1)(x-λ)`, i.e. `a2 = -(1+λ)`, `a4 = λ`.
    pub fn legendre(lambda: &FieldElem) -> Result<Self, EllipticError> {
        let f = lambda.field();
        Self::new([
            f.zero(),
            -&(&f.one() + lambda),
            f.zero(),
            lambda.clone(),
            f.zero(),
        ])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coefficients(&self) -> &[FieldElem; 5] {
        &self.a
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of(&self.a)
    }

    /// Left side minus right side at an affine point.
    pub fn evaluate(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = &(&y.square() + &(&(a1 * x) * y)) + &(a3 * y);
        let rhs = &(&(&x.pow(3) + &(a2 * &x.square())) + &(a4 * x)) + a6;
        &lhs - &rhs
    }

    fn require_countable(&self) -> Result<u64, EllipticError> {
        match self.field.small_order() {
            Some(q) if q <= MAX_COUNT_ORDER => Ok(q),
            _ => Err(EllipticError::ScaleCap {
                order: self
                    .field
                    .order()
                    .map_or_else(|| "∞".to_string(), |o| o.to_string()),
            }),
        }
    }

    /// Number of `y` with `(x, y)` on the curve.
    fn points_over(&self, x: &FieldElem) -> u64 {
        let [a1, a2, a3, a4, a6] = &self.a;
        let field = self.field;
        // y² + b y = c
        let b = &(a1 * x) + a3;
        let c = &(&(&x.pow(3) + &(a2 * &x.square())) + &(a4 * x)) + a6;
        if field.characteristic() == 2 {
            if b.is_zero() {
                // squaring is a bijection
                1
            } else if (&c / &b.square()).trace().is_zero() {
                // y = b z with z² + z = c/b², solvable iff the trace vanishes
                2
            } else {
                0
            }
        } else {
            let disc = &b.square() + &(&field.from_i64(4) * &c);
            (1 + disc.quadratic_character()) as u64
        }
    }

    /// Projective point count `N`, including the point at infinity.
    pub fn point_count(&self) -> Result<u64, EllipticError> {
        self.require_countable()?;
        let affine: u64 = self.field.elements()?.map(|x| self.points_over(&x)).sum();
        Ok(affine + 1)
    }

    /// Frobenius trace `t = q + 1 - N`.
    pub fn trace(&self) -> Result<i64, EllipticError> {
        let q = self.require_countable()?;
        Ok(q as i64 + 1 - self.point_count()? as i64)
    }

    pub fn is_supersingular(&self) -> Result<bool, EllipticError> {
        let t = self.trace()?;
        Ok(t.rem_euclid(self.field.characteristic() as i64) == 0)
    }

    /// Affine points with `a1 x + a3 = 0`; over a field of characteristic 2
    /// these are the nontrivial rational 2-torsion points.
    pub fn two_torsion_count(&self) -> Result<u64, EllipticError> {
        if self.field.characteristic() != 2 {
            return Err(EllipticError::WrongCharacteristic(self.field.to_string()));
        }
        self.require_countable()?;
        let [a1, _, a3, _, _] = &self.a;
        let count = self
            .field
            .elements()?
            .filter(|x| (&(a1 * x) + a3).is_zero())
            .map(|x| self.points_over(&x))
            .sum();
        Ok(count)
    }

    /// The curve after `x ↦ x + r`, `y ↦ y + s x + t`.
    pub fn substitute(&self, r: &FieldElem, s: &FieldElem, t: &FieldElem) -> Self {
        let [a1, a2, a3, a4, a6] = &self.a;
        let f = self.field;
        let two = f.from_i64(2);
        let three = f.from_i64(3);
        let na1 = a1 + &(&two * s);
        let na2 = &(&(a2 - &(s * a1)) + &(&three * r)) - &s.square();
        let na3 = &(a3 + &(r * a1)) + &(&two * t);
        let na4 = &(&(&(&(a4 - &(s * a3)) + &(&two * &(r * a2))) - &(&(t + &(r * s)) * a1))
            + &(&three * &r.square()))
            - &(&two * &(s * t));
        let na6 = &(&(&(&(a6 + &(r * a4)) + &(&r.square() * a2)) + &r.pow(3)) - &(t * a3)) - &(&t.square() + &(&(r * t) * a1));
        WeierstrassCurve {
            field: f,
            a: [na1, na2, na3, na4, na6],
        }
    }
}

/// Integral `b`/`c` invariants and the discriminant. `b8` uses the expanded
/// form so nothing is divided by 4.
pub fn invariants_of(a: &[FieldElem; 5]) -> Invariants {
    let [a1, a2, a3, a4, a6] = a;
    let f = a1.field();
    let n = |k: i64| f.from_i64(k);
    let b2 = &a1.square() + &(&n(4) * a2);
    let b4 = &(&n(2) * a4) + &(a1 * a3);
    let b6 = &a3.square() + &(&n(4) * a6);
    let b8 = &(&(&(&(&a1.square() * a6) + &(&n(4) * &(a2 * a6))) - &(&(a1 * a3) * a4)) + &(a2 * &a3.square()))
        - &a4.square();
    let c4 = &b2.square() - &(&n(24) * &b4);
    let discriminant = {
        let t1 = -&(&b2.square() * &b8);
        let t2 = &n(8) * &b4.pow(3);
        let t3 = &n(27) * &b6.square();
        let t4 = &n(9) * &(&(&b2 * &b4) * &b6);
        &(&(&t1 - &t2) - &t3) + &t4
    };
    Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        discriminant,
    }
}

/// `j = c4³ / Δ`.
pub fn weierstrass_j(curve: &WeierstrassCurve) -> FieldElem {
    let inv = curve.invariants();
    &inv.c4.pow(3) / &inv.discriminant
}

/// `j` for raw coefficients, rejecting singular equations.
pub fn j_of_coefficients(a: &[FieldElem; 5]) -> Result<FieldElem, EllipticError> {
    let inv = invariants_of(a);
    if inv.discriminant.is_zero() {
        return Err(EllipticError::SingularCurve);
    }
    Ok(&inv.c4.pow(3) / &inv.discriminant)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub j: FieldElem,
    #[serde(rename = "N")]
    pub n: u64,
    pub trace: i64,
    pub supersingular: bool,
    /// Absent outside characteristic 2.
    pub two_torsion: Option<u64>,
}

pub fn report(curve: &WeierstrassCurve) -> Result<CurveReport, EllipticError> {
    let n = curve.point_count()?;
    let trace = curve.trace()?;
    let two_torsion = match curve.two_torsion_count() {
        Ok(c) => Some(c),
        Err(EllipticError::WrongCharacteristic(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CurveReport {
        j: weierstrass_j(curve),
        n,
        trace,
        supersingular: curve.is_supersingular()?,
        two_torsion,
    })
}

/// Every nonsingular curve over `field`, in coefficient-index order, mapped
/// through `f` in parallel.
pub fn sweep<T, F>(field: Field, f: F) -> Result<Vec<T>, EllipticError>
where
    T: Send,
    F: Fn(&WeierstrassCurve) -> T + Sync,
{
    let q = field
        .small_order()
        .ok_or(EllipticError::Field(FieldError::NotEnumerable(field.to_string())))?;
    let total = q
        .checked_pow(5)
        .filter(|&t| t <= 1 << 25)
        .ok_or_else(|| EllipticError::ScaleCap {
            order: q.to_string(),
        })?;
    let out = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rest = idx;
            let coeffs = std::array::from_fn(|_| {
                let c = field.from_index(rest % q);
                rest /= q;
                c
            });
            WeierstrassCurve::new(coeffs).ok().map(|c| f(&c))
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(field: Field, c: [i64; 5]) -> Result<WeierstrassCurve, EllipticError> {
        WeierstrassCurve::new(c.map(|v| field.from_i64(v)))
    }

    fn naive_count(e: &WeierstrassCurve) -> u64 {
        let elems: Vec<_> = e.field().elements().unwrap().collect();
        let mut n = 1;
        for x in &elems {
            for y in &elems {
                if e.evaluate(x, y).is_zero() {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn examples_over_gf2() {
        let f2 = Field::new(2, 1).unwrap();
        let ss = curve(f2, [0, 0, 1, 0, 0]).unwrap();
        assert_eq!(ss.point_count().unwrap(), 3);
        assert!(weierstrass_j(&ss).is_zero());
        assert!(ss.is_supersingular().unwrap());
        assert_eq!(ss.trace().unwrap(), 0);
        assert_eq!(ss.two_torsion_count().unwrap(), 0);

        let ord = curve(f2, [1, 0, 0, 0, 1]).unwrap();
        assert_eq!(ord.point_count().unwrap(), 4);
        assert_eq!(ord.trace().unwrap(), -1);
        assert!(!ord.is_supersingular().unwrap());
        assert_eq!(ord.two_torsion_count().unwrap(), 1);
        assert!(weierstrass_j(&ord).is_one());
    }

    #[test]
    fn rational_examples() {
        let q = Field::rationals();
        let e = curve(q, [0, 0, 0, -1, 0]).unwrap();
        assert_eq!(weierstrass_j(&e), q.from_i64(1728));
        assert_eq!(
            WeierstrassCurve::legendre(&q.from_i64(-1)).unwrap(),
            e
        );
        assert_eq!(curve(q, [0; 5]), Err(EllipticError::SingularCurve));
        assert!(matches!(e.point_count(), Err(EllipticError::ScaleCap { .. })));
        assert!(matches!(
            e.two_torsion_count(),
            Err(EllipticError::WrongCharacteristic(_))
        ));
    }

    #[test]
    fn counting_matches_double_loop() {
        for (p, k) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            let field = Field::new(p, k).unwrap();
            let q = field.small_order().unwrap() as f64;
            let counts = sweep(field, |e| (e.point_count().unwrap(), naive_count(e))).unwrap();
            assert!(!counts.is_empty());
            for (fast, slow) in counts {
                assert_eq!(fast, slow);
                assert!((fast as f64 - (q + 1.0)).abs() <= 2.0 * q.sqrt());
            }
        }
    }

    #[test]
    fn translation_preserves_count() {
        let f4 = Field::new(2, 2).unwrap();
        let elems: Vec<_> = f4.elements().unwrap().collect();
        let zero = f4.zero();
        sweep(f4, |e| {
            let n = e.point_count().unwrap();
            for r in &elems {
                let moved = e.substitute(r, &zero, &zero);
                assert_eq!(moved.point_count().unwrap(), n);
                assert_eq!(weierstrass_j(&moved), weierstrass_j(e));
            }
        })
        .unwrap();
    }

    #[test]
    fn substitution_preserves_j_in_odd_characteristic() {
        let f = Field::new(7, 1).unwrap();
        let e = curve(f, [1, 2, 3, 4, 5]).unwrap();
        let (r, s, t) = (f.from_i64(3), f.from_i64(5), f.from_i64(2));
        let moved = e.substitute(&r, &s, &t);
        assert_eq!(weierstrass_j(&moved), weierstrass_j(&e));
        assert_eq!(moved.point_count().unwrap(), e.point_count().unwrap());
    }
}
