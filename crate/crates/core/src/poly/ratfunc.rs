use std::fmt;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::projective::ProjPoint;

/// A rational function `num/den` in lowest terms with a monic denominator.
///
/// Read as a map of the projective line to itself, its degree is
/// `max(deg num, deg den)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Cancels the gcd and makes the denominator monic.
    pub fn reduce(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            let one = Poly::one(den.field());
            return Ok(RatFunc { num, den: one });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc_inv = den.lc().unwrap().try_inv()?;
        Ok(RatFunc {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn constant(c: FieldElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The identity function `t`.
    pub fn var(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::var(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `max(deg num, deg den)`; the degree of `k(t)` over `k(f)`.
    pub fn map_degree(&self) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        Ok(self.homogeneous_degree())
    }

    /// `max(deg num, deg den)`, zero for constants.
    pub fn homogeneous_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// `self ∘ inner`, reduced.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let n = self.homogeneous_degree();
        let a = &inner.num;
        let b = &inner.den;
        let apows = powers(a, n);
        let bpows = powers(b, n);
        let homogenize = |p: &Poly| {
            let mut acc = Poly::zero(p.field());
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&apows[k] * &bpows[n - k]).scale(c);
                }
            }
            acc
        };
        RatFunc::reduce(homogenize(&self.num), homogenize(&self.den))
            .expect("composition with a nonconstant-denominator map stays defined")
    }

    /// Value at an affine point; `None` at a pole.
    pub fn eval(&self, x: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(&self.num.eval(x) / &d)
        }
    }

    /// Value at a point of the projective line, with poles mapping to `(1:0)`.
    pub fn eval_point(&self, p: &ProjPoint) -> ProjPoint {
        let n = self.homogeneous_degree();
        let (a, b) = (p.x(), p.y());
        let top = self.num.eval_homogeneous(a, b, n);
        let bottom = self.den.eval_homogeneous(a, b, n);
        ProjPoint::new(top, bottom).expect("reduced forms have no common zero")
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::reduce(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::reduce(&self.num * &other.num, &self.den * &other.den)
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::reduce(&self.num * &other.den, &self.den * &other.num)
    }

    /// `1/self`.
    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::reduce(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.render(var);
        }
        format!("({})/({})", self.num.render(var), self.den.render(var))
    }
}

fn powers(p: &Poly, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one(p.field()));
    for k in 1..=n {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
