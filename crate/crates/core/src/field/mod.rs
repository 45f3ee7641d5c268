//! Exact arithmetic over ℚ and over small finite fields GF(p^k).
//!
//! Extension fields are represented in the polynomial basis `1, t, ..., t^(k-1)`
//! modulo a fixed monic irreducible polynomial. The moduli for the fields used
//! throughout the crate are pinned in [`MODULUS_TABLE`]; any other supported
//! `(p, k)` takes the first monic irreducible polynomial in the order of
//! [`Field::new`], which agrees with the table wherever the two overlap.

mod gfp;
mod literal;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// Version tag of [`MODULUS_TABLE`]; bump whenever an entry changes.
pub const MODULUS_TABLE_VERSION: u32 = 1;

/// Fixed moduli `(p, k, coefficients low-to-high)`, all monic.
pub const MODULUS_TABLE: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("unsupported extension degree {k} for characteristic {p}")]
    UnsupportedDegree { p: u64, k: usize },
    #[error("characteristic {0} exceeds the supported range (p < 2^32)")]
    CharacteristicTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("operation requires characteristic 2, field is {0}")]
    WrongCharacteristic(String),
    #[error("(0 : 0) is not a point of the projective line")]
    IndeterminatePoint,
    #[error("{0} is infinite and cannot be enumerated")]
    NotEnumerable(String),
    #[error("cannot parse {literal:?} in {field}: {reason}")]
    Parse {
        literal: String,
        field: String,
        reason: String,
    },
    #[error("missing operand for binary operation")]
    MissingOperand,
}

/// A coefficient field: ℚ (`p = 0`) or GF(p^k).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u64,
    k: usize,
    // Monic modulus, low-to-high, significant only for k ≥ 2.
    modulus: [u64; MAX_EXTENSION_DEGREE + 1],
}

impl Field {
    /// The field ℚ.
    pub fn rationals() -> Self {
        Field {
            p: 0,
            k: 1,
            modulus: [0; MAX_EXTENSION_DEGREE + 1],
        }
    }

    /// Builds ℚ for `(0, 1)` or GF(p^k) for a prime `p` and `1 ≤ k ≤ 8`.
    ///
    /// Moduli come from [`MODULUS_TABLE`] when listed there; otherwise the
    /// monic irreducible `t^k + c_{k-1} t^{k-1} + ... + c_0` with the smallest
    /// value of `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` is used.
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if p == 0 {
            return if k == 1 {
                Ok(Self::rationals())
            } else {
                Err(FieldError::UnsupportedDegree { p, k })
            };
        }
        if !gfp::is_prime(p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if p >= 1 << 32 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(FieldError::UnsupportedDegree { p, k });
        }
        let mut modulus = [0; MAX_EXTENSION_DEGREE + 1];
        if k >= 2 {
            let coeffs = match MODULUS_TABLE.iter().find(|(tp, tk, _)| *tp == p && *tk == k) {
                Some((_, _, c)) => c.to_vec(),
                None => first_irreducible(p, k),
            };
            modulus[..=k].copy_from_slice(&coeffs);
        }
        Ok(Field { p, k, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_finite(&self) -> bool {
        self.p != 0
    }

    /// The modulus, low-to-high; empty for ℚ and prime fields.
    pub fn modulus(&self) -> &[u64] {
        if self.k >= 2 {
            &self.modulus[..=self.k]
        } else {
            &[]
        }
    }

    /// `p^k` for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| BigUint::from(self.p).pow(self.k as u32))
    }

    /// `p^k` when it fits in a `u64`.
    pub fn small_order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.p.checked_pow(self.k as u32)
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        if self.p == 0 {
            return self.make(Value::Rational(BigRational::from_integer(n.clone())));
        }
        let r = n.mod_floor_u64(self.p);
        let mut c = [0; MAX_EXTENSION_DEGREE];
        c[0] = r;
        self.make(Value::Finite(c))
    }

    /// The rational `num/den`.
    pub fn rational(&self, num: i64, den: i64) -> Result<FieldElem, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(&self.from_i64(num) / &self.from_i64(den))
    }

    /// The element `Σ coeffs[i] t^i`, reduced mod p and the modulus.
    ///
    /// Panics if a prime field or ℚ is given a nonconstant polynomial.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElem {
        if self.k == 1 {
            assert!(
                coeffs.iter().skip(1).all(|&c| c == 0),
                "{self} has no generator t"
            );
            return self.from_i64(coeffs.first().copied().unwrap_or(0));
        }
        let p = self.p as i64;
        self.reduce_poly(coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect())
    }

    /// The polynomial-basis generator `t` of an extension field.
    pub fn generator(&self) -> Option<FieldElem> {
        (self.p != 0 && self.k >= 2).then(|| self.reduce_poly(vec![0, 1]))
    }

    /// Element with base-p digits of `index` as its coefficients.
    pub fn from_index(&self, index: u64) -> FieldElem {
        assert!(self.is_finite(), "from_index on {self}");
        let mut c = [0; MAX_EXTENSION_DEGREE];
        let mut rest = index;
        for slot in c.iter_mut().take(self.k) {
            *slot = rest % self.p;
            rest /= self.p;
        }
        self.make(Value::Finite(c))
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem>, FieldError> {
        let field = *self;
        let order = field.small_order().ok_or(FieldError::NotEnumerable(field.to_string()))?;
        Ok((0..order).map(move |i| field.from_index(i)))
    }

    /// Parses a literal: an integer or `a/b` over ℚ, a polynomial in `t`
    /// over a finite field (`"t^2+t+1"`, `"2t-1"`, `"3"`).
    pub fn parse(&self, literal: &str) -> Result<FieldElem, FieldError> {
        literal::parse(self, literal)
    }

    /// Parses `inf` / `∞` as the point at infinity, anything else via [`Field::parse`].
    pub fn parse_p1(&self, literal: &str) -> Result<P1Point, FieldError> {
        match literal.trim() {
            "inf" | "∞" | "infinity" => Ok(P1Point::Infinity),
            other => self.parse(other).map(P1Point::Finite),
        }
    }

    fn make(&self, value: Value) -> FieldElem {
        FieldElem { field: *self, value }
    }

    fn reduce_poly(&self, poly: Vec<u64>) -> FieldElem {
        let p = self.p;
        let reduced = if self.k >= 2 {
            gfp::rem(&poly, self.modulus(), p)
        } else {
            let v = poly.first().copied().unwrap_or(0) % p;
            vec![v]
        };
        let mut c = [0; MAX_EXTENSION_DEGREE];
        for (slot, v) in c.iter_mut().zip(reduced) {
            *slot = v % p;
        }
        self.make(Value::Finite(c))
    }
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut idx: u64 = 0;
    loop {
        let mut f = Vec::with_capacity(k + 1);
        let mut rest = idx;
        for _ in 0..k {
            f.push(rest % p);
            rest /= p;
        }
        f.push(1);
        if gfp::is_irreducible(&f, p) {
            return f;
        }
        idx += 1;
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p, self.k) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "GF({p})"),
            (p, k) => write!(f, "GF({p}^{k})"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.k >= 2 {
            write!(f, "{:?}", self.modulus())?;
        }
        Ok(())
    }
}

/// JSON echo of a field: `{"p":2,"k":2,"modulus":[1,1,1]}`.
impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Echo<'a> {
            p: u64,
            k: usize,
            modulus: &'a [u64],
        }
        Echo {
            p: self.p,
            k: self.k,
            modulus: self.modulus(),
        }
        .serialize(serializer)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Value {
    Rational(BigRational),
    Finite([u64; MAX_EXTENSION_DEGREE]),
}

/// An exact element of ℚ or GF(p^k), always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElem {
    field: Field,
    value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked entry point for the four basic operations.
pub fn arith(op: ArithOp, a: &FieldElem, b: Option<&FieldElem>) -> Result<FieldElem, FieldError> {
    match op {
        ArithOp::Add => a.try_add(b.ok_or(FieldError::MissingOperand)?),
        ArithOp::Mul => a.try_mul(b.ok_or(FieldError::MissingOperand)?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

impl FieldElem {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Finite(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Coefficients in the polynomial basis (length k); `None` over ℚ.
    pub fn coeffs(&self) -> Option<&[u64]> {
        match &self.value {
            Value::Finite(c) => Some(&c[..self.field.k]),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            Value::Finite(_) => None,
        }
    }

    /// Inverse of the base-p digit encoding used by [`Field::from_index`].
    pub fn index(&self) -> Option<u64> {
        let c = self.coeffs()?;
        Some(c.iter().rev().fold(0u64, |acc, &x| acc * self.field.p + x))
    }

    fn check_same(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &FieldElem) -> FieldElem {
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Finite(a), Value::Finite(b)) => {
                let p = self.field.p;
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..self.field.k {
                    c[i] = (a[i] + b[i]) % p;
                }
                Value::Finite(c)
            }
            _ => unreachable!("same field implies same representation"),
        };
        self.field.make(value)
    }

    fn mul_unchecked(&self, other: &FieldElem) -> FieldElem {
        match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => self.field.make(Value::Rational(a * b)),
            (Value::Finite(a), Value::Finite(b)) => {
                let k = self.field.k;
                let p = self.field.p;
                if k == 1 {
                    let mut c = [0; MAX_EXTENSION_DEGREE];
                    c[0] = gfp::mul_mod(a[0], b[0], p);
                    return self.field.make(Value::Finite(c));
                }
                self.field.reduce_poly(gfp::mul(&a[..k], &b[..k], p))
            }
            _ => unreachable!("same field implies same representation"),
        }
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(r.recip()),
            Value::Finite(a) => {
                let p = self.field.p;
                let k = self.field.k;
                let mut c = [0; MAX_EXTENSION_DEGREE];
                if k == 1 {
                    c[0] = gfp::inv_mod(a[0], p);
                } else {
                    let u = gfp::inv_modulo(&a[..k], self.field.modulus(), p)
                        .expect("nonzero element of a field is invertible");
                    c[..u.len()].copy_from_slice(&u);
                }
                Value::Finite(c)
            }
        };
        Ok(self.field.make(value))
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn pow(&self, exp: u64) -> FieldElem {
        self.pow_big(&BigUint::from(exp))
    }

    pub fn pow_big(&self, exp: &BigUint) -> FieldElem {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Signed integer power; negative exponents invert first.
    pub fn powi(&self, exp: i64) -> Result<FieldElem, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// `a ↦ a^p`; identity over ℚ.
    pub fn frobenius(&self) -> FieldElem {
        if self.field.p == 0 {
            self.clone()
        } else {
            self.pow(self.field.p)
        }
    }

    /// The unique square root in GF(2^k), computed as `a^(2^(k-1))`.
    pub fn sqrt_char2(&self) -> Result<FieldElem, FieldError> {
        if self.field.p != 2 {
            return Err(FieldError::WrongCharacteristic(self.field.to_string()));
        }
        let mut b = self.clone();
        for _ in 1..self.field.k {
            b = b.square();
        }
        Ok(b)
    }

    /// Some square root in the field, if one exists. Over ℚ the nonnegative
    /// root; in odd characteristic the root found by Tonelli–Shanks.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match &self.value {
            Value::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| self.field.make(Value::Rational(BigRational::new(n, d))))
            }
            Value::Finite(_) if self.field.p == 2 => self.sqrt_char2().ok(),
            Value::Finite(_) => self.tonelli_shanks(),
        }
    }

    /// `1` for nonzero squares, `-1` for non-squares, `0` for zero; odd finite fields only.
    pub fn quadratic_character(&self) -> i32 {
        assert!(
            self.field.p > 2,
            "quadratic character needs odd characteristic"
        );
        if self.is_zero() {
            return 0;
        }
        let q = self.field.order().unwrap();
        let e = (q - 1u32) >> 1;
        if self.pow_big(&e).is_one() {
            1
        } else {
            -1
        }
    }

    fn tonelli_shanks(&self) -> Option<FieldElem> {
        if self.quadratic_character() != 1 {
            return None;
        }
        let field = self.field;
        let q = field.order().unwrap();
        let q1: BigUint = &q - 1u32;
        let s = q1.trailing_zeros().unwrap_or(0);
        let m = &q1 >> s;
        let z = (2u64..)
            .map(|i| field.from_index(i))
            .find(|z| z.quadratic_character() == -1)
            .expect("odd finite field has a non-residue");
        let mut c = z.pow_big(&m);
        let mut t = self.pow_big(&m);
        let mut r = self.pow_big(&((&m + 1u32) >> 1));
        let mut big_m = s;
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = t2.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(big_m - i - 1) {
                b = b.square();
            }
            big_m = i;
            c = b.square();
            t = &t * &c;
            r = &r * &b;
        }
        Some(r)
    }

    /// Absolute trace `a + a^p + ... + a^(p^(k-1))`, an element of the prime field.
    pub fn trace(&self) -> FieldElem {
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..self.field.k {
            conj = conj.frobenius();
            acc = &acc + &conj;
        }
        acc
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Finite(c) => {
                let k = self.field.k;
                let mut wrote = false;
                for i in (0..k).rev() {
                    let a = c[i];
                    if a == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "+")?;
                    }
                    wrote = true;
                    match (i, a) {
                        (0, a) => write!(f, "{a}")?,
                        (1, 1) => write!(f, "t")?,
                        (1, a) => write!(f, "{a}t")?,
                        (i, 1) => write!(f, "t^{i}")?,
                        (i, a) => write!(f, "{a}t^{i}")?,
                    }
                }
                if !wrote {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

// Operator impls panic on mixed fields; use the `try_*` methods or
// [`arith`] where operands are not known to share a parent.
macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                assert_eq!(self.field, rhs.field, "field mismatch");
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElem, b: &FieldElem| a.add_unchecked(b));
binop!(Sub, sub, |a: &FieldElem, b: &FieldElem| a.add_unchecked(&-b));
binop!(Mul, mul, |a: &FieldElem, b: &FieldElem| a.mul_unchecked(b));
binop!(Div, div, |a: &FieldElem, b: &FieldElem| a
    .mul_unchecked(&b.inv().expect("division by zero")));

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(-r),
            Value::Finite(a) => {
                let p = self.field.p;
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..self.field.k {
                    c[i] = (p - a[i]) % p;
                }
                Value::Finite(c)
            }
        };
        self.field.make(value)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// A point of the projective line over a field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum P1Point {
    Finite(FieldElem),
    Infinity,
}

impl P1Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, P1Point::Infinity)
    }

    pub fn finite(&self) -> Option<&FieldElem> {
        match self {
            P1Point::Finite(x) => Some(x),
            P1Point::Infinity => None,
        }
    }

    /// True iff this is the finite value `n` of the field.
    pub fn is_value(&self, n: i64) -> bool {
        matches!(self, P1Point::Finite(x) if *x == x.field().from_i64(n))
    }

    /// Homogeneous coordinates `(num : den)` with `den ∈ {0, 1}`.
    pub fn homogeneous(&self, field: Field) -> (FieldElem, FieldElem) {
        match self {
            P1Point::Finite(x) => (x.clone(), field.one()),
            P1Point::Infinity => (field.one(), field.zero()),
        }
    }
}

/// `(num : den)` as a point of P¹; `den = 0` is the point at infinity.
pub fn p1_normalize(num: &FieldElem, den: &FieldElem) -> Result<P1Point, FieldError> {
    num.check_same(den)?;
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(FieldError::IndeterminatePoint),
        (_, true) => Ok(P1Point::Infinity),
        _ => Ok(P1Point::Finite(num / den)),
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(x) => write!(f, "{x}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for P1Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
