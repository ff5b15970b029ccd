use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value as Json};

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Sparse polynomial in `X` and `Y`; the key `(i, j)` stands for `X^i Y^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(usize, usize), FieldElem>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem) -> BiPoly {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: FieldElem, i: usize, j: usize) -> BiPoly {
        let mut p = BiPoly::zero(c.field());
        p.add_term(i, j, c);
        p
    }

    pub fn x(field: &Field) -> BiPoly {
        BiPoly::monomial(field.one(), 1, 0)
    }

    pub fn y(field: &Field) -> BiPoly {
        BiPoly::monomial(field.one(), 0, 1)
    }

    /// A polynomial in `X` alone.
    pub fn from_x_poly(p: &Poly) -> BiPoly {
        let mut out = BiPoly::zero(p.field());
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i, 0, c.clone());
        }
        out
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (usize, usize, FieldElem)>) -> BiPoly {
        let mut out = BiPoly::zero(field);
        for (i, j, c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Terms sorted by `(i + j, i)` ascending.
    pub fn sorted_terms(&self) -> Vec<(usize, usize, FieldElem)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.clone()))
            .collect();
        v.sort_by_key(|&(i, j, _)| (i + j, i));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    fn add_term(&mut self, i: usize, j: usize, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn scale(&self, c: &FieldElem) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(&(i, j), v)| (i, j, v * c)),
        )
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.terms.iter().fold(self.field.zero(), |acc, (&(i, j), c)| {
            &acc + &(&(c * &x.pow(i as u64)) * &y.pow(j as u64))
        })
    }

    /// Scaled so the first nonzero coefficient in `(i + j, i)` order is one.
    pub fn normalized(&self) -> BiPoly {
        match self.sorted_terms().first() {
            Some((_, _, c)) => self.scale(&c.try_inv().expect("stored terms are nonzero")),
            None => self.clone(),
        }
    }

    /// `sum c_ij F0^i F1^j F2^(d-i-j)` with `d` the total degree: the curve
    /// equation pulled back along a homogeneous parametrization `(F0:F1:F2)`.
    pub fn eval_homogeneous(&self, f0: &Poly, f1: &Poly, f2: &Poly) -> Poly {
        let Some(d) = self.total_degree() else {
            return Poly::zero(&self.field);
        };
        let pw = |p: &Poly| {
            std::iter::successors(Some(Poly::one(&self.field)), |q| Some(q * p))
                .take(d + 1)
                .collect::<Vec<_>>()
        };
        let (p0, p1, p2) = (pw(f0), pw(f1), pw(f2));
        self.terms.iter().fold(Poly::zero(&self.field), |acc, (&(i, j), c)| {
            let term = &(&p0[i] * &p1[j]) * &p2[d - i - j];
            &acc + &term.scale(c)
        })
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| (i - 1, j, c * &self.field.from_i64(i as i64))),
        )
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| (i, j - 1, c * &self.field.from_i64(j as i64))),
        )
    }

    /// `[[i, j, "coeff"], ...]` sorted by `(i + j, i)`.
    pub fn to_json(&self) -> Json {
        Json::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(i, j, c)| json!([i, j, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(field: &Field, v: &Json) -> Result<BiPoly> {
        let bad = || Error::Parse {
            input: v.to_string(),
            reason: "expected a list of [i, j, coeff] triples".into(),
        };
        let items = v.as_array().ok_or_else(bad)?;
        let mut out = BiPoly::zero(field);
        for item in items {
            let t = item.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let i = t[0].as_u64().ok_or_else(bad)? as usize;
            let j = t[1].as_u64().ok_or_else(bad)? as usize;
            let c = crate::field::parse_json_elem(field, &t[2])?;
            out.add_term(i, j, c);
        }
        Ok(out)
    }

    /// Human-readable form, highest total degree first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, j, c) in self.sorted_terms().into_iter().rev() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let part = |v: &str, e: usize| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    let xs = part("X", i);
                    let ys = part("Y", j);
                    if xs.is_empty() || ys.is_empty() {
                        format!("{xs}{ys}")
                    } else {
                        format!("{xs}*{ys}")
                    }
                }
            };
            let cs = c.to_string();
            let atomic = !cs[1..].contains(['+', '-']);
            let cs = if atomic { cs } else { format!("({cs})") };
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
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

    // ---- bivariate gcd via k[X][Y] ----

    /// Coefficients in `Y`, each a polynomial in `X`.
    fn to_y_major(&self) -> Vec<Poly> {
        let dy = self.degree_y().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<FieldElem>> = vec![Vec::new(); dy];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j];
            if row.len() <= i {
                row.resize(i + 1, self.field.zero());
            }
            row[i] = c.clone();
        }
        rows.into_iter().map(|r| Poly::new(&self.field, r)).collect()
    }

    fn from_y_major(field: &Field, rows: &[Poly]) -> BiPoly {
        let mut out = BiPoly::zero(field);
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// Greatest common divisor, normalized; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        let a = self.to_y_major();
        let b = other.to_y_major();
        let g = ypoly_gcd(a, b);
        BiPoly::from_y_major(&self.field, &g).normalized()
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Result<BiPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.to_y_major();
        let dv = d.to_y_major();
        let dd = dv.len() - 1;
        let lc = &dv[dd];
        trim_rows(&mut r);
        let mut q = vec![Poly::zero(&self.field); r.len().saturating_sub(dd)];
        while !r.is_empty() && r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r[r.len() - 1].exact_div(lc)?;
            for (i, di) in dv.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * di);
            }
            q[k] = c;
            trim_rows(&mut r);
        }
        if !r.is_empty() {
            return Err(Error::InexactDivision);
        }
        Ok(BiPoly::from_y_major(&self.field, &q))
    }

    /// Radical of a polynomial in characteristic zero: `self / gcd(self, ∂X, ∂Y)`.
    /// Returns `self` (normalized) when it is already squarefree.
    pub fn squarefree_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative_x()).gcd(&self.derivative_y());
        if g.total_degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        self.exact_div(&g).expect("gcd divides").normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative_x()).gcd(&self.derivative_y());
        g.total_degree().unwrap_or(0) == 0
    }
}

fn trim_rows(r: &mut Vec<Poly>) {
    while r.last().is_some_and(Poly::is_zero) {
        r.pop();
    }
}

fn content(rows: &[Poly]) -> Poly {
    rows.iter()
        .fold(Poly::zero(rows[0].field()), |acc, p| acc.gcd(p))
}

fn primitive(rows: &[Poly]) -> Vec<Poly> {
    let c = content(rows);
    rows.iter().map(|p| p.exact_div(&c).expect("content divides")).collect()
}

/// Pseudo-remainder of `a` by `b` in `k[X][Y]`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = &b[db];
    trim_rows(&mut r);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let top = r[r.len() - 1].clone();
        for p in r.iter_mut() {
            *p = &*p * lc;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&top * bi);
        }
        trim_rows(&mut r);
    }
    r
}

/// Primitive polynomial remainder sequence gcd.
fn ypoly_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim_rows(&mut a);
    trim_rows(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let c = content(&a).gcd(&content(&b));
    let mut a = primitive(&a);
    let mut b = primitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(&r) };
    }
    a.iter().map(|p| p * &c).collect()
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(&(i, j), c)| (i, j, -c)))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(&self.field);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(q: &Field) -> BiPoly {
        let x = BiPoly::x(q);
        let y = BiPoly::y(q);
        &(&(&x * &x) + &(&y * &y)) - &BiPoly::constant(q.one())
    }

    #[test]
    fn json_sorted_by_degree_then_x() {
        let q = Field::rationals();
        let c = circle(&q);
        assert_eq!(
            serde_json::to_string(&c.to_json()).unwrap(),
            r#"[[0,0,"-1"],[0,2,"1"],[2,0,"1"]]"#
        );
        assert_eq!(BiPoly::from_json(&q, &c.to_json()).unwrap(), c);
        assert_eq!(c.normalized().coeff(0, 0), q.one());
        assert_eq!(c.render(), "X^2+Y^2-1");
    }

    #[test]
    fn squarefree_part_removes_powers() {
        let q = Field::rationals();
        let c = circle(&q);
        let line = &BiPoly::x(&q) - &BiPoly::y(&q);
        let p = &(&(&c * &c) * &c) * &line;
        assert!(!p.is_squarefree());
        let r = p.squarefree_part();
        assert_eq!(r, (&c * &line).normalized());
        assert!(r.is_squarefree());
        assert_eq!(c.squarefree_part(), c.normalized());
    }

    #[test]
    fn gcd_and_exact_division() {
        let q = Field::rationals();
        let c = circle(&q);
        let a = &c * &(&BiPoly::x(&q) + &BiPoly::constant(q.from_i64(2)));
        let b = &c * &BiPoly::y(&q);
        assert_eq!(a.gcd(&b), c.normalized());
        assert_eq!(a.exact_div(&c).unwrap(), &BiPoly::x(&q) + &BiPoly::constant(q.from_i64(2)));
        assert!(b.exact_div(&BiPoly::x(&q)).is_err());
    }
}
