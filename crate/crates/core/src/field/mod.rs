//! Exact fields: the rationals, prime fields `F_p`, and simple algebraic
//! extensions `K[x]/(m(x))` built on top of either.
//!
//! A [`Field`] is a cheap, shareable handle to a [`FieldDescriptor`]. Every
//! [`FieldElem`] carries the handle of the field it lives in, so arithmetic
//! can be written with ordinary operators. Mixing elements of different fields
//! through the operators is a programming error and panics; the `try_*`
//! methods and [`arith`] report it as [`Error::DescriptorMismatch`] instead.

mod expr;
mod json;

pub use json::parse_json_elem;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Symbols used for the generators of nested extensions, innermost first.
const GENERATOR_SYMBOLS: [&str; 6] = ["a", "b", "c", "d", "e", "w"];

/// Largest integer whose divisors are enumerated by the rational root test.
const ROOT_TEST_LIMIT: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rationals,
    Prime {
        p: u64,
    },
    /// `base[x]/(minpoly)`. `minpoly` is monic, low-to-high, of degree at
    /// least two. `trusted` is set when irreducibility was not verified
    /// (degree above three, or a base where root search is unavailable).
    Extension {
        base: Field,
        minpoly: Vec<FieldElem>,
        trusted: bool,
    },
}

/// Shared handle to a field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "F_{p}"),
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let sym = self.generator_symbol();
                write!(f, "{base}[{sym}]/(")?;
                let mut first = true;
                for (k, c) in minpoly.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = expr::format_term(c, k, sym, base.is_extension());
                    if !first && !term.starts_with('-') {
                        write!(f, "+")?;
                    }
                    write!(f, "{term}")?;
                    first = false;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Rational(BigRational),
    Residue(u64),
    /// Coefficients over the base field, low-to-high, exactly `deg(minpoly)` long.
    Poly(Vec<FieldElem>),
}

/// An element of a [`Field`], always in canonical form.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    value: Value,
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field(Arc::new(FieldDescriptor::Prime { p })))
    }

    /// Builds `base[x]/(minpoly)`. A non-monic polynomial is scaled to be
    /// monic. Polynomials of degree two or three are rejected when they have
    /// a root in the base field; anything else is accepted as trusted.
    pub fn extension(base: &Field, minpoly: Vec<FieldElem>) -> Result<Field> {
        if minpoly.iter().any(|c| c.field != *base) {
            return Err(Error::InvalidField(
                "minimal polynomial coefficients must lie in the base field".into(),
            ));
        }
        let mut m = minpoly;
        while m.last().is_some_and(FieldElem::is_zero) {
            m.pop();
        }
        if m.len() < 3 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree at least 2".into(),
            ));
        }
        let lc_inv = m.last().unwrap().try_inv()?;
        let m: Vec<FieldElem> = m.iter().map(|c| c * &lc_inv).collect();
        let degree = m.len() - 1;
        let trusted = if degree <= 3 {
            match has_root(base, &m)? {
                Some(true) => {
                    return Err(Error::InvalidField(format!(
                        "minimal polynomial has a root in {base} and is reducible"
                    )))
                }
                Some(false) => false,
                None => true,
            }
        } else {
            true
        };
        Ok(Field(Arc::new(FieldDescriptor::Extension {
            base: base.clone(),
            minpoly: m,
            trusted,
        })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn is_extension(&self) -> bool {
        matches!(*self.0, FieldDescriptor::Extension { .. })
    }

    /// `false` for the rationals and extensions of them.
    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime { p } => *p,
            FieldDescriptor::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, `None` for infinite fields or overflow.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime { p } => Some(*p as u128),
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let q = base.order()?;
                let mut acc: u128 = 1;
                for _ in 1..minpoly.len() {
                    acc = acc.checked_mul(q)?;
                }
                Some(acc)
            }
        }
    }

    /// Extension degree over the base, 1 for prime fields and the rationals.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldDescriptor::Extension { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    fn depth(&self) -> usize {
        match &*self.0 {
            FieldDescriptor::Extension { base, .. } => base.depth() + 1,
            _ => 0,
        }
    }

    /// Symbol used for the generator when printing and parsing elements.
    pub fn generator_symbol(&self) -> &'static str {
        let d = self.depth();
        if d == 0 {
            ""
        } else {
            GENERATOR_SYMBOLS[(d - 1).min(GENERATOR_SYMBOLS.len() - 1)]
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldDescriptor::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&[FieldElem]> {
        match &*self.0 {
            FieldDescriptor::Extension { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    pub fn is_trusted(&self) -> bool {
        match &*self.0 {
            FieldDescriptor::Extension { base, trusted, .. } => *trusted || base.is_trusted(),
            _ => false,
        }
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
        let value = match &*self.0 {
            FieldDescriptor::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::Prime { p } => Value::Residue(reduce_bigint(n, *p)),
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let mut coeffs = vec![base.zero(); minpoly.len() - 1];
                coeffs[0] = base.from_bigint(n);
                Value::Poly(coeffs)
            }
        };
        self.wrap(value)
    }

    /// The image of `num/den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(den);
        self.from_bigint(num).try_div(&d)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// The class of `x` in an extension.
    pub fn generator(&self) -> Result<FieldElem> {
        match &*self.0 {
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let mut coeffs = vec![base.zero(); minpoly.len() - 1];
                coeffs[1] = base.one();
                Ok(self.wrap(Value::Poly(coeffs)))
            }
            _ => Err(Error::UnsupportedField(format!("{self} has no generator"))),
        }
    }

    /// Maps an element of a subfield in the tower below `self` into `self`.
    pub fn embed(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field == *self {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let inner = base.embed(x)?;
                let mut coeffs = vec![base.zero(); minpoly.len() - 1];
                coeffs[0] = inner;
                Ok(self.wrap(Value::Poly(coeffs)))
            }
            _ => Err(Error::DescriptorMismatch(x.field.to_string(), self.to_string())),
        }
    }

    /// Builds an extension element from its coefficient vector over the base.
    pub fn from_coefficients(&self, coeffs: Vec<FieldElem>) -> Result<FieldElem> {
        match &*self.0 {
            FieldDescriptor::Extension { base, minpoly, .. } => {
                if coeffs.iter().any(|c| c.field != *base) {
                    return Err(Error::DescriptorMismatch(
                        "coefficients".into(),
                        base.to_string(),
                    ));
                }
                let reduced = reduce_mod(base, coeffs, minpoly);
                Ok(self.wrap(Value::Poly(reduced)))
            }
            _ => Err(Error::UnsupportedField(format!("{self} is not an extension"))),
        }
    }

    /// Parses an element written as an arithmetic expression in integers,
    /// fractions and the generator symbols of the tower (`a`, `b`, ...).
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        expr::parse(self, s)
    }

    /// The element with the given index in the deterministic enumeration
    /// order of a finite field.
    pub fn element_at(&self, index: u128) -> Result<FieldElem> {
        match &*self.0 {
            FieldDescriptor::Rationals => Err(Error::InfiniteField),
            FieldDescriptor::Prime { p } => {
                if index >= *p as u128 {
                    return Err(Error::InvalidField(format!("index {index} out of range")));
                }
                Ok(self.wrap(Value::Residue(index as u64)))
            }
            FieldDescriptor::Extension { base, minpoly, .. } => {
                let q = base.order().ok_or(Error::InfiniteField)?;
                let mut rest = index;
                let mut coeffs = Vec::with_capacity(minpoly.len() - 1);
                for _ in 1..minpoly.len() {
                    coeffs.push(base.element_at(rest % q)?);
                    rest /= q;
                }
                if rest != 0 {
                    return Err(Error::InvalidField(format!("index {index} out of range")));
                }
                Ok(self.wrap(Value::Poly(coeffs)))
            }
        }
    }

    /// Every element of a finite field exactly once, in a fixed order.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(move |i| self.element_at(i).expect("index below field order")))
    }

    /// All roots of `x^2 + c1 x + c0` in this field, sorted.
    ///
    /// Finite fields are scanned exhaustively; over the rationals the
    /// discriminant is tested for being a square.
    pub fn solve_quadratic(&self, c1: &FieldElem, c0: &FieldElem) -> Result<Vec<FieldElem>> {
        c1.check_field(self)?;
        c0.check_field(self)?;
        let mut roots: Vec<FieldElem> = if self.is_finite() {
            self.enumerate()?
                .filter(|x| (&(x * x) + &(c1 * x) + c0.clone()).is_zero())
                .collect()
        } else if matches!(&*self.0, FieldDescriptor::Rationals) {
            let four = self.from_i64(4);
            let disc = &(c1 * c1) - &(&four * c0);
            match rational_sqrt(disc.as_rational().unwrap()) {
                Some(s) => {
                    let s = self.wrap(Value::Rational(s));
                    let two = self.from_i64(2);
                    let r1 = &(&(-c1) + &s) / &two;
                    let r2 = &(&(-c1) - &s) / &two;
                    vec![r1, r2]
                }
                None => Vec::new(),
            }
        } else {
            return Err(Error::UnsupportedField(format!(
                "quadratic root finding over {self}"
            )));
        };
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    fn wrap(&self, value: Value) -> FieldElem {
        FieldElem {
            field: self.clone(),
            value,
        }
    }
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(c) => c.iter().all(FieldElem::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
            Value::Poly(c) => c[0].is_one() && c[1..].iter().all(FieldElem::is_zero),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&[FieldElem]> {
        match &self.value {
            Value::Poly(c) => Some(c),
            _ => None,
        }
    }

    fn check_field(&self, field: &Field) -> Result<()> {
        if self.field == *field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(
                self.field.to_string(),
                field.to_string(),
            ))
        }
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        other.check_field(&self.field)
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_value()))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.try_inv()?))
    }

    /// Multiplicative inverse; extension elements are inverted with the
    /// extended Euclidean algorithm against the minimal polynomial.
    pub fn try_inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue(inv_mod(*r, p))
            }
            Value::Poly(c) => {
                let (base, minpoly) = match &*self.field.0 {
                    FieldDescriptor::Extension { base, minpoly, .. } => (base, minpoly),
                    _ => unreachable!(),
                };
                Value::Poly(poly_inverse(base, c, minpoly)?)
            }
        };
        Ok(self.field.wrap(value))
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn neg_value(&self) -> FieldElem {
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(-q),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue(if *r == 0 { 0 } else { p - r })
            }
            Value::Poly(c) => Value::Poly(c.iter().map(FieldElem::neg_value).collect()),
        };
        self.field.wrap(value)
    }

    fn add_unchecked(&self, other: &FieldElem) -> FieldElem {
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => {
                Value::Poly(a.iter().zip(b).map(|(x, y)| x.add_unchecked(y)).collect())
            }
            _ => unreachable!("field check precedes arithmetic"),
        };
        self.field.wrap(value)
    }

    fn mul_unchecked(&self, other: &FieldElem) -> FieldElem {
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(mul_mod(*a, *b, p))
            }
            (Value::Poly(a), Value::Poly(b)) => {
                let (base, minpoly) = match &*self.field.0 {
                    FieldDescriptor::Extension { base, minpoly, .. } => (base, minpoly),
                    _ => unreachable!(),
                };
                let mut prod = vec![base.zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = prod[i + j].add_unchecked(&x.mul_unchecked(y));
                    }
                }
                Value::Poly(reduce_mod(base, prod, minpoly))
            }
            _ => unreachable!("field check precedes arithmetic"),
        };
        self.field.wrap(value)
    }
}

/// Binary and unary field operations, for callers that want errors rather
/// than panics on bad input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

pub fn arith(op: ArithOp, a: &FieldElem, b: Option<&FieldElem>) -> Result<FieldElem> {
    let rhs = || {
        b.ok_or_else(|| Error::InvalidField(format!("{op:?} needs a second operand")))
    };
    match op {
        ArithOp::Add => a.try_add(rhs()?),
        ArithOp::Sub => a.try_sub(rhs()?),
        ArithOp::Mul => a.try_mul(rhs()?),
        ArithOp::Div => a.try_div(rhs()?),
        ArithOp::Neg => Ok(a.neg_value()),
        ArithOp::Inv => a.try_inv(),
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

/// Orders canonical payloads; only meaningful within one field.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
            Value::Poly(c) => f.write_str(&expr::format_poly(&self.field, c)),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn expect_same(a: &FieldElem, b: &FieldElem) {
    if a.field != b.field {
        panic!("field mismatch: {} vs {}", a.field, b.field);
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        expect_same(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Add<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        expect_same(self, rhs);
        self.add_unchecked(&rhs.neg_value())
    }
}

impl Sub<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        expect_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Mul<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

/// Panics on division by zero; use [`FieldElem::try_div`] to get an error.
impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        expect_same(self, rhs);
        self.try_div(rhs).expect("division by zero")
    }
}

impl Div<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        &self / &rhs
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_value()
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_value()
    }
}

// ---- helpers on raw coefficient vectors over a base field ----

fn trim(v: &mut Vec<FieldElem>) {
    while v.last().is_some_and(FieldElem::is_zero) {
        v.pop();
    }
}

/// Reduces `v` modulo the monic `minpoly`, padding to `deg(minpoly)` entries.
fn reduce_mod(base: &Field, mut v: Vec<FieldElem>, minpoly: &[FieldElem]) -> Vec<FieldElem> {
    let n = minpoly.len() - 1;
    while v.len() > n {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - n;
        for (i, m) in minpoly[..n].iter().enumerate() {
            v[shift + i] = &v[shift + i] - &(&top * m);
        }
    }
    v.resize(n, base.zero());
    v
}

/// Quotient and remainder of `a` by a nonzero trimmed `b`.
fn divrem(a: &[FieldElem], b: &[FieldElem]) -> (Vec<FieldElem>, Vec<FieldElem>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc_inv = b[db].try_inv().expect("trimmed divisor");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let zero = b[0].field().zero();
    let mut q = vec![zero; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lc_inv;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&c * bi);
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[FieldElem], b: &[FieldElem], zero: &FieldElem) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn poly_sub(a: &[FieldElem], b: &[FieldElem], zero: &FieldElem) -> Vec<FieldElem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(zero);
        let y = b.get(i).unwrap_or(zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn poly_inverse(base: &Field, a: &[FieldElem], minpoly: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let zero = base.zero();
    let mut r0 = minpoly.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<FieldElem> = Vec::new();
    let mut s1: Vec<FieldElem> = vec![base.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, &zero), &zero);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        // gcd is not a unit: the minimal polynomial is reducible
        return Err(Error::DivisionByZero);
    }
    let c = r0[0].try_inv()?;
    let inv: Vec<FieldElem> = s0.iter().map(|x| x * &c).collect();
    Ok(reduce_mod(base, inv, minpoly))
}

/// `Some(true)` if `m` has a root in `base`, `Some(false)` if not, `None`
/// when root search is unavailable.
fn has_root(base: &Field, m: &[FieldElem]) -> Result<Option<bool>> {
    let eval = |x: &FieldElem| {
        m.iter()
            .rev()
            .fold(base.zero(), |acc, c| &(&acc * x) + c)
    };
    if base.is_finite() {
        if base.order().is_some_and(|q| q <= 1 << 24) {
            return Ok(Some(base.enumerate()?.any(|x| eval(&x).is_zero())));
        }
        return Ok(None);
    }
    if !matches!(base.descriptor(), FieldDescriptor::Rationals) {
        return Ok(None);
    }
    // rational root test on the integer-scaled polynomial
    let qs: Vec<&BigRational> = m.iter().map(|c| c.as_rational().unwrap()).collect();
    let lcm = qs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (*q * &lcm).to_integer()).collect();
    if ints[0].is_zero() {
        return Ok(Some(true));
    }
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return Ok(None);
    };
    if a0 > ROOT_TEST_LIMIT || an > ROOT_TEST_LIMIT {
        return Ok(None);
    }
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let x = base.from_ratio(&BigInt::from(sign * num as i64), &BigInt::from(den))?;
                if eval(&x).is_zero() {
                    return Ok(Some(true));
                }
            }
        }
    }
    Ok(Some(false))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below p")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
