//! Legendre curves `y² = x(x-1)(x-λ)`: the λ ↦ j map, the λ-orbit under
//! relabelling of the four branch points, and the characteristic-2
//! singularity analysis.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::field::{p1_normalize, Field, FieldElem, FieldError, P1Point};
use crate::poly::Poly2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegendreError {
    #[error("λ = {0} is degenerate (λ must avoid 0 and 1)")]
    DegenerateLambda(String),
    #[error("operation is not available in {0}")]
    WrongCharacteristic(String),
    #[error("the Legendre curve with λ = {0} is smooth")]
    NotSingular(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The curve `y² = x(x-1)(x-λ)` with `λ ∉ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreCurve {
    lambda: FieldElem,
}

fn check_lambda(lambda: &FieldElem) -> Result<(), LegendreError> {
    let field = lambda.field();
    if lambda.is_zero() || *lambda == field.one() {
        return Err(LegendreError::DegenerateLambda(lambda.to_string()));
    }
    Ok(())
}

impl LegendreCurve {
    pub fn new(lambda: FieldElem) -> Result<Self, LegendreError> {
        check_lambda(&lambda)?;
        Ok(LegendreCurve { lambda })
    }

    pub fn lambda(&self) -> &FieldElem {
        &self.lambda
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    /// `F = y² - x(x-1)(x-λ)`; in characteristic 2 this is `y² + x(x+1)(x+λ)`.
    pub fn equation(&self) -> Poly2 {
        let f = self.field();
        let x = Poly2::x(f);
        let one = Poly2::constant(f.one());
        let lam = Poly2::constant(self.lambda.clone());
        let cubic = &(&x * &(&x - &one)) * &(&x - &lam);
        &Poly2::y(f).pow(2) - &cubic
    }

    /// Discriminant `16 λ² (λ-1)²` of the cubic model.
    pub fn discriminant(&self) -> FieldElem {
        let f = self.field();
        let l1 = &self.lambda - &f.one();
        &f.from_i64(16) * &(&self.lambda.square() * &l1.square())
    }
}

/// `j = 2⁸ (λ² - λ + 1)³ / (λ² (λ-1)²)`, characteristic ≠ 2.
pub fn j_from_lambda(lambda: &FieldElem) -> Result<FieldElem, LegendreError> {
    let field = lambda.field();
    if field.characteristic() == 2 {
        return Err(LegendreError::WrongCharacteristic(field.to_string()));
    }
    check_lambda(lambda)?;
    let one = field.one();
    let num = &field.from_i64(256) * &(&(&lambda.square() - lambda) + &one).pow(3);
    let den = &lambda.square() * &(lambda - &one).square();
    Ok(&num / &den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaOrbit {
    /// `λ, 1-λ, 1/λ, 1/(1-λ), (λ-1)/λ, λ/(λ-1)` in this order.
    pub values: Vec<FieldElem>,
    #[serde(serialize_with = "serialize_multiset")]
    pub multiplicities: BTreeMap<FieldElem, usize>,
}

fn serialize_multiset<S: serde::Serializer>(
    m: &BTreeMap<FieldElem, usize>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), v)?;
    }
    map.end()
}

/// The six values of λ obtained by permuting the branch points `0, 1, ∞, λ`.
pub fn lambda_orbit(lambda: &FieldElem) -> Result<LambdaOrbit, LegendreError> {
    check_lambda(lambda)?;
    let values: Vec<FieldElem> = OrbitMap::ALL
        .iter()
        .map(|m| {
            m.apply(lambda.field(), &P1Point::Finite(lambda.clone()))
                .finite()
                .cloned()
                .expect("orbit of a nondegenerate λ stays finite")
        })
        .collect();
    let mut multiplicities = BTreeMap::new();
    for v in &values {
        *multiplicities.entry(v.clone()).or_insert(0) += 1;
    }
    Ok(LambdaOrbit {
        values,
        multiplicities,
    })
}

/// The six fractional linear maps by which S₄ acts on the λ-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OrbitMap {
    Identity,
    OneMinus,
    Reciprocal,
    ReciprocalOfOneMinus,
    OneMinusReciprocal,
    RatioToMinusOne,
}

impl OrbitMap {
    pub const ALL: [OrbitMap; 6] = [
        OrbitMap::Identity,
        OrbitMap::OneMinus,
        OrbitMap::Reciprocal,
        OrbitMap::ReciprocalOfOneMinus,
        OrbitMap::OneMinusReciprocal,
        OrbitMap::RatioToMinusOne,
    ];

    /// Integer matrix `[[a, b], [c, d]]` of `λ ↦ (aλ + b)/(cλ + d)`.
    fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            OrbitMap::Identity => [[1, 0], [0, 1]],
            OrbitMap::OneMinus => [[-1, 1], [0, 1]],
            OrbitMap::Reciprocal => [[0, 1], [1, 0]],
            OrbitMap::ReciprocalOfOneMinus => [[0, 1], [-1, 1]],
            OrbitMap::OneMinusReciprocal => [[1, -1], [1, 0]],
            OrbitMap::RatioToMinusOne => [[1, 0], [1, -1]],
        }
    }

    pub fn mobius(self, field: Field) -> Mobius {
        let [[a, b], [c, d]] = self.matrix();
        Mobius::new(
            field.from_i64(a),
            field.from_i64(b),
            field.from_i64(c),
            field.from_i64(d),
        )
        .expect("orbit maps are invertible in every characteristic")
    }

    pub fn apply(self, field: Field, point: &P1Point) -> P1Point {
        self.mobius(field).apply(point)
    }

    /// The map sending each of `0, 1, ∞` to the given images, if one exists.
    pub fn from_action_on_boundary(images: [Boundary; 3]) -> Option<OrbitMap> {
        OrbitMap::ALL
            .into_iter()
            .find(|m| Boundary::ALL.map(|b| m.act_on_boundary(b)) == images)
    }

    pub fn act_on_boundary(self, b: Boundary) -> Boundary {
        let [[a, bb], [c, d]] = self.matrix();
        // (aX + bZ : cX + dZ) at (0:1), (1:1), (1:0)
        let (num, den) = match b {
            Boundary::Zero => (bb, d),
            Boundary::One => (a + bb, c + d),
            Boundary::Infinity => (a, c),
        };
        match (num, den) {
            (_, 0) => Boundary::Infinity,
            (0, _) => Boundary::Zero,
            (n, d) if n == d => Boundary::One,
            _ => unreachable!("orbit maps permute 0, 1, ∞"),
        }
    }
}

/// The three degenerate values of λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Boundary {
    Zero,
    One,
    Infinity,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::Zero, Boundary::One, Boundary::Infinity];

    pub fn of(point: &P1Point) -> Option<Boundary> {
        match point {
            P1Point::Infinity => Some(Boundary::Infinity),
            p if p.is_value(0) => Some(Boundary::Zero),
            p if p.is_value(1) => Some(Boundary::One),
            _ => None,
        }
    }

    pub fn point(self, field: Field) -> P1Point {
        match self {
            Boundary::Zero => P1Point::Finite(field.zero()),
            Boundary::One => P1Point::Finite(field.one()),
            Boundary::Infinity => P1Point::Infinity,
        }
    }
}

/// `x ↦ (ax + b)/(cx + d)` acting on P¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl Mobius {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Option<Mobius> {
        let det = &(&a * &d) - &(&b * &c);
        (!det.is_zero()).then_some(Mobius { a, b, c, d })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn apply(&self, point: &P1Point) -> P1Point {
        let (x, z) = point.homogeneous(self.field());
        let num = &(&self.a * &x) + &(&self.b * &z);
        let den = &(&self.c * &x) + &(&self.d * &z);
        p1_normalize(&num, &den).expect("invertible map has no indeterminacy")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius::new(
            &(&self.a * &other.a) + &(&self.b * &other.c),
            &(&self.a * &other.b) + &(&self.b * &other.d),
            &(&self.c * &other.a) + &(&self.d * &other.c),
            &(&self.c * &other.b) + &(&self.d * &other.d),
        )
        .expect("product of invertible maps")
    }

    /// The unique map sending `p, q, r` to `0, 1, ∞`.
    pub fn to_standard(p: &P1Point, q: &P1Point, r: &P1Point, field: Field) -> Option<Mobius> {
        // z ↦ (z - p)(q - r) / ((z - r)(q - p)) in homogeneous form:
        // numerator kills p, denominator kills r, then rescale so q ↦ 1.
        let (px, pz) = p.homogeneous(field);
        let (rx, rz) = r.homogeneous(field);
        let base = Mobius::new(pz.clone(), -&px, rz.clone(), -&rx)?;
        let (qn, qd) = match base.apply(q) {
            P1Point::Finite(v) if !v.is_zero() => (v, field.one()),
            _ => return None,
        };
        let scale = &qd / &qn;
        Mobius::new(&base.a * &scale, &base.b * &scale, base.c, base.d)
    }

    /// Coefficients `(A, B, C)` of the fixed-point form `A X² + B XZ + C Z²`.
    pub fn fixed_point_form(&self) -> (FieldElem, FieldElem, FieldElem) {
        (self.c.clone(), &self.d - &self.a, -&self.b)
    }

    /// Denominator `c x + d` at a finite point.
    pub fn denominator_at(&self, x: &FieldElem) -> FieldElem {
        &(&self.c * x) + &self.d
    }
}

/// The two branch-point symmetries of the Legendre model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    /// `x ↦ λ/x`, swapping `0 ↔ ∞` and `1 ↔ λ`.
    Inv,
    /// `x ↦ (x-1)/(λ⁻¹x - 1)`, swapping `0 ↔ 1` and `∞ ↔ λ`.
    Cross,
}

impl Involution {
    pub fn mobius(self, lambda: &FieldElem) -> Result<Mobius, LegendreError> {
        check_lambda(lambda)?;
        let f = lambda.field();
        let m = match self {
            Involution::Inv => Mobius::new(f.zero(), lambda.clone(), f.one(), f.zero()),
            Involution::Cross => Mobius::new(f.one(), -f.one(), lambda.inv()?, -f.one()),
        };
        Ok(m.expect("λ ∉ {0, 1} keeps the map invertible"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoints {
    /// Fixed points defined over the base field, sorted.
    pub rational: Vec<P1Point>,
    /// Number of distinct fixed points over an algebraic closure.
    pub geometric_count: usize,
    /// No rational fixed point is a pole of the affine formula.
    pub poles_avoided: bool,
    /// When the fixed points are conjugate over the base field, the
    /// discriminant `D` of the fixed-point form: they are `(-B ± √D)/2A`.
    pub quadratic_extension: Option<FieldElem>,
}

/// Fixed points of one of the two involutions, from the denominator-free
/// equation `c X² + (d - a) XZ - b Z² = 0`.
pub fn fixed_points(which: Involution, lambda: &FieldElem) -> Result<FixedPoints, LegendreError> {
    let m = which.mobius(lambda)?;
    let (a, b, c) = m.fixed_point_form();
    let (rational, geometric_count) = projective_quadratic_roots(&a, &b, &c)?;
    let quadratic_extension = (geometric_count == 2
        && rational.is_empty()
        && a.field().characteristic() != 2)
        .then(|| &b.square() - &(&a.field().from_i64(4) * &(&a * &c)));
    let poles_avoided = rational.iter().all(|p| match p {
        P1Point::Finite(x) => !m.denominator_at(x).is_zero(),
        P1Point::Infinity => true,
    });
    for p in &rational {
        debug_assert_eq!(m.apply(p), *p);
    }
    Ok(FixedPoints {
        rational,
        geometric_count,
        poles_avoided,
        quadratic_extension,
    })
}

/// Rational roots and geometric root count of `A X² + B XZ + C Z²` on P¹.
fn projective_quadratic_roots(
    a: &FieldElem,
    b: &FieldElem,
    c: &FieldElem,
) -> Result<(Vec<P1Point>, usize), LegendreError> {
    let field = a.field();
    if a.is_zero() {
        // Z | form: ∞ is a root, plus the linear factor's root.
        return Ok(if b.is_zero() {
            assert!(!c.is_zero(), "identically zero fixed-point form");
            (vec![P1Point::Infinity], 1)
        } else {
            let mut roots = vec![P1Point::Finite(-&(c / b)), P1Point::Infinity];
            roots.sort();
            (roots, 2)
        });
    }
    let mut roots = Vec::new();
    let geometric;
    if field.characteristic() == 2 {
        if b.is_zero() {
            roots.push(P1Point::Finite((c / a).sqrt_char2()?));
            geometric = 1;
        } else {
            // two distinct roots over the closure; search the base field
            geometric = 2;
            for x in field.elements()? {
                if (&(&(a * &x.square()) + &(b * &x)) + c).is_zero() {
                    roots.push(P1Point::Finite(x));
                }
            }
        }
    } else {
        let disc = &b.square() - &(&field.from_i64(4) * &(a * c));
        let two_a = &field.from_i64(2) * a;
        if disc.is_zero() {
            roots.push(P1Point::Finite(-&(b / &two_a)));
            geometric = 1;
        } else {
            geometric = 2;
            if let Some(r) = disc.sqrt() {
                roots.push(P1Point::Finite(&(&-b + &r) / &two_a));
                roots.push(P1Point::Finite(&(&-b - &r) / &two_a));
            }
        }
    }
    roots.sort();
    Ok((roots, geometric))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPointCertificate {
    pub equation_vanishes: bool,
    pub d_dx_vanishes: bool,
    /// `∂F/∂y` is the zero polynomial.
    pub d_dy_identically_zero: bool,
    /// `∂F/∂x` equals `x² + λ` as a polynomial.
    pub d_dx_is_x2_plus_lambda: bool,
    /// Singular affine points found by exhaustive search, when the field is small enough.
    pub affine_singular_points: Option<usize>,
    /// The point at infinity `(0 : 1 : 0)` is smooth.
    pub smooth_at_infinity: bool,
}

impl SingularPointCertificate {
    pub fn holds(&self) -> bool {
        self.equation_vanishes
            && self.d_dx_vanishes
            && self.d_dy_identically_zero
            && self.d_dx_is_x2_plus_lambda
            && self.affine_singular_points.is_none_or(|n| n == 1)
            && self.smooth_at_infinity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub x: FieldElem,
    pub y: FieldElem,
    pub certificate: SingularPointCertificate,
}

/// Largest field order searched exhaustively for singular points.
pub const EXHAUSTIVE_SEARCH_LIMIT: u64 = 1 << 8;

fn require_char2(curve: &LegendreCurve) -> Result<(), LegendreError> {
    let field = curve.field();
    if field.characteristic() != 2 {
        return Err(LegendreError::WrongCharacteristic(field.to_string()));
    }
    Ok(())
}

/// The singular point `(√λ, λ + √λ)` of a Legendre curve in characteristic 2.
pub fn char2_singular_point(curve: &LegendreCurve) -> Result<SingularPoint, LegendreError> {
    require_char2(curve)?;
    let field = curve.field();
    let lambda = curve.lambda();
    let x = lambda.sqrt_char2()?;
    let y = lambda + &x;
    let f = curve.equation();
    let fx = f.d_dx();
    let fy = f.d_dy();
    let expected_fx = &Poly2::x(field).pow(2) + &Poly2::constant(lambda.clone());

    let affine_singular_points = match field.small_order() {
        Some(q) if q <= EXHAUSTIVE_SEARCH_LIMIT => {
            let elems: Vec<_> = field.elements()?.collect();
            let mut count = 0;
            for u in &elems {
                // ∂F/∂x depends on x alone; skip whole columns early.
                if !fx.eval(u, &field.zero()).is_zero() {
                    continue;
                }
                for v in &elems {
                    if f.eval(u, v).is_zero() && fy.eval(u, v).is_zero() {
                        count += 1;
                    }
                }
            }
            Some(count)
        }
        _ => None,
    };

    // Chart Y = 1 of Y²Z = X(X - Z)(X - λZ): G(X, Z) = Z - X(X - Z)(X - λZ);
    // at (0, 0) the Z-derivative is 1.
    let chart = {
        let xz = Poly2::x(field);
        let z = Poly2::y(field);
        let lz = z.scale(lambda);
        &z - &(&(&xz * &(&xz - &z)) * &(&xz - &lz))
    };
    let smooth_at_infinity = !chart.d_dy().eval(&field.zero(), &field.zero()).is_zero()
        || !chart.d_dx().eval(&field.zero(), &field.zero()).is_zero();

    let certificate = SingularPointCertificate {
        equation_vanishes: f.eval(&x, &y).is_zero(),
        d_dx_vanishes: fx.eval(&x, &y).is_zero(),
        d_dy_identically_zero: fy.is_zero(),
        d_dx_is_x2_plus_lambda: fx == expected_fx,
        affine_singular_points,
        smooth_at_infinity,
    };
    Ok(SingularPoint { x, y, certificate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularityKind {
    Node,
    NonNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    pub x: FieldElem,
    pub y: FieldElem,
    /// Lowest-order part of F at the point.
    pub tangent_cone: String,
    /// `c` with tangent cone `(Y + cX)²` when it is a perfect square.
    pub square_root_coefficient: Option<FieldElem>,
}

/// Node / non-node classification from the tangent cone `aX² + bXY + cY²`:
/// a node has two distinct tangent lines, i.e. `b² - 4ac ≠ 0`.
pub fn singularity_type(curve: &LegendreCurve) -> Result<SingularityReport, LegendreError> {
    if curve.field().characteristic() != 2 {
        // y² = cubic with distinct roots 0, 1, λ is smooth away from char 2.
        debug_assert!(!curve.discriminant().is_zero());
        return Err(LegendreError::NotSingular(curve.lambda().to_string()));
    }
    let point = char2_singular_point(curve)?;
    let shifted = curve.equation().shift(&point.x, &point.y);
    let order = shifted.order().unwrap_or(u32::MAX);
    debug_assert!(order >= 2);
    let cone = shifted.homogeneous_part(2);
    let (a, b, c) = (cone.coeff(2, 0), cone.coeff(1, 1), cone.coeff(0, 2));
    let field = curve.field();
    let disc = &b.square() - &(&field.from_i64(4) * &(&a * &c));
    let kind = if order == 2 && !disc.is_zero() {
        SingularityKind::Node
    } else {
        SingularityKind::NonNode
    };
    let square_root_coefficient = (b.is_zero() && c.is_one()).then(|| a.sqrt_char2()).transpose()?;
    Ok(SingularityReport {
        kind,
        x: point.x,
        y: point.y,
        tangent_cone: shifted.homogeneous_part(order).to_string(),
        square_root_coefficient,
    })
}
