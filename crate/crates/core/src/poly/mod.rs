//! Dense univariate polynomials, reduced rational functions, sparse bivariate
//! polynomials, resultants and exact linear algebra.

mod bipoly;
mod matrix;
mod ratfunc;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use bipoly::BiPoly;
pub use matrix::ExactMatrix;
pub use ratfunc::RatFunc;
pub use resultant::{determinant, resultant};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Univariate polynomial, coefficients low-to-high with a nonzero leading
/// coefficient (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Poly {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    /// The variable `t`.
    pub fn var(field: &Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(&field, coeffs)
    }

    /// `t - r`.
    pub fn linear_root(r: &FieldElem) -> Poly {
        Poly::new(r.field(), vec![-r, r.field().one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `sum c_i a^i b^(n-i)`: the degree-`n` homogenization evaluated at `(a:b)`.
    pub fn eval_homogeneous(&self, a: &FieldElem, b: &FieldElem, n: usize) -> FieldElem {
        debug_assert!(self.coeffs.len() <= n + 1);
        let bpows: Vec<FieldElem> = std::iter::successors(Some(self.field.one()), |p| Some(p * b))
            .take(n + 1)
            .collect();
        let mut acc = self.field.zero();
        let mut apow = self.field.one();
        for k in 0..=n {
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = &acc + &(&(&c * &apow) * &bpows[n - k]);
            }
            apow = &apow * a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.from_i64(k as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            Some(lc) if !lc.is_one() => self.scale(&lc.try_inv().expect("nonzero leading")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.lc().unwrap().try_inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = &r[top] * &lc_inv;
            if !c.is_zero() {
                let k = top - dd;
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] = &r[k + i] - &(&c * di);
                }
                q[k] = c;
            }
            r.pop();
        }
        Ok((Poly::new(&self.field, q), Poly::new(&self.field, r)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.exact_div(&g).expect("gcd divides") * other).monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &FieldElem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.divrem(&lin).expect("linear divisor");
            if !rem.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let atomic = !cs[1..].contains(['+', '-']);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                if atomic {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if atomic {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn combine(&self, other: &Poly, f: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> Poly {
        assert!(self.field == other.field, "field mismatch");
        let zero = self.field.zero();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Poly::new(&self.field, coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let q = Field::rationals();
        let a = Poly::from_i64s(&q, &[-1, 0, 1]);
        let b = Poly::from_i64s(&q, &[-1, 1]);
        let (quo, rem) = a.divrem(&b).unwrap();
        assert_eq!(quo, Poly::from_i64s(&q, &[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&Poly::from_i64s(&q, &[2, 2])), Poly::from_i64s(&q, &[1, 1]));
        assert_eq!(a.lcm(&b), a);
        assert!(a.divrem(&Poly::zero(&q)).is_err());
        assert_eq!(
            Poly::from_i64s(&q, &[1, 0, 1]).exact_div(&b),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn homogeneous_evaluation() {
        let q = Field::rationals();
        // t^2 + 3 at (2:5) with n = 3: 4*5 + 3*125
        let p = Poly::from_i64s(&q, &[3, 0, 1]);
        let v = p.eval_homogeneous(&q.from_i64(2), &q.from_i64(5), 3);
        assert_eq!(v, q.from_i64(4 * 5 + 3 * 125));
    }

    #[test]
    fn root_multiplicity_and_render() {
        let q = Field::rationals();
        let p = &Poly::from_i64s(&q, &[-1, 1]).pow(3) * &Poly::from_i64s(&q, &[0, 1]);
        assert_eq!(p.root_multiplicity(&q.one()), 3);
        assert_eq!(p.root_multiplicity(&q.zero()), 1);
        assert_eq!(p.root_multiplicity(&q.from_i64(2)), 0);
        assert_eq!(Poly::from_i64s(&q, &[1, 0, -6, 0, 1]).render("t"), "t^4-6*t^2+1");
        assert_eq!(Poly::zero(&q).to_string(), "0");
    }
}
