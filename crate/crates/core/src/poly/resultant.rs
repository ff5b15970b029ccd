use std::collections::HashMap;

use super::BiPoly;

/// Division-free determinant of a square matrix over `k[X, Y]`.
///
/// Laplace expansion along rows with minors memoized by column subset, so
/// the cost is `O(n 2^n)` ring operations; zero entries are skipped, which
/// keeps Sylvester matrices cheap.
pub fn determinant(m: &[Vec<BiPoly>]) -> BiPoly {
    let n = m.len();
    assert!(n <= 63, "determinant supports at most 63 rows");
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        panic!("empty matrix has no field; callers handle the 0x0 case");
    }
    let field = m[0][0].field().clone();
    // minors of rows k..n keyed by the set of columns they use
    let mut level: HashMap<u64, BiPoly> = HashMap::new();
    level.insert(0, BiPoly::constant(field.one()));
    for k in (0..n).rev() {
        let mut next: HashMap<u64, BiPoly> = HashMap::new();
        for (&mask, minor) in &level {
            for (j, entry) in m[k].iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let full = mask | (1 << j);
                // position of column j within the enlarged column set
                let pos = (full & ((1u64 << j) - 1)).count_ones();
                let term = entry * minor;
                let term = if pos % 2 == 1 { -&term } else { term };
                next.entry(full)
                    .and_modify(|acc| *acc = &*acc + &term)
                    .or_insert(term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        level = next;
    }
    let all = (1u64 << n) - 1;
    level.remove(&all).unwrap_or_else(|| BiPoly::zero(&field))
}

/// Resultant with respect to `t` of two polynomials whose coefficients
/// (low-to-high in `t`) are bivariate polynomials.
///
/// Sign convention: `Res(a, b) = lc(b)^deg(a) * prod a(beta)` over the roots
/// `beta` of `b`, so `Res(t - X, t - Y) = Y - X`. This is the Sylvester
/// determinant with the rows of `b` placed above the rows of `a`.
pub fn resultant(a: &[BiPoly], b: &[BiPoly]) -> BiPoly {
    let trim = |v: &[BiPoly]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(BiPoly::is_zero) {
            v.pop();
        }
        v
    };
    let a = trim(a);
    let b = trim(b);
    let field = a
        .first()
        .or(b.first())
        .expect("resultant of two zero polynomials")
        .field()
        .clone();
    if a.is_empty() || b.is_empty() {
        return BiPoly::zero(&field);
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BiPoly::constant(field.one());
    }
    let zero = BiPoly::zero(&field);
    let mut rows = Vec::with_capacity(size);
    // m shifted copies of b, then n shifted copies of a; column c holds t^(size-1-c)
    for (copies, poly) in [(m, &b), (n, &a)] {
        let deg = poly.len() - 1;
        for shift in 0..copies {
            let mut row = vec![zero.clone(); size];
            for (k, c) in poly.iter().enumerate() {
                row[shift + deg - k] = c.clone();
            }
            rows.push(row);
        }
    }
    determinant(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn c(q: &Field, n: i64) -> BiPoly {
        BiPoly::constant(q.from_i64(n))
    }

    #[test]
    fn linear_sign_convention() {
        let q = Field::rationals();
        let a = [-&BiPoly::x(&q), c(&q, 1)];
        let b = [-&BiPoly::y(&q), c(&q, 1)];
        assert_eq!(resultant(&a, &b), &BiPoly::y(&q) - &BiPoly::x(&q));
    }

    #[test]
    fn evaluation_property() {
        let q = Field::rationals();
        let a = [-&BiPoly::x(&q), c(&q, 0), c(&q, 1)];
        let b = [c(&q, -1), c(&q, 1)];
        assert_eq!(resultant(&a, &b), &c(&q, 1) - &BiPoly::x(&q));
    }

    #[test]
    fn product_of_root_differences() {
        let q = Field::rationals();
        // oracle: roots ±1 and ±2, prod over pairs (r - s)
        let roots_a = [1i64, -1];
        let roots_b = [2i64, -2];
        let oracle: i64 = roots_a
            .iter()
            .flat_map(|r| roots_b.iter().map(move |s| r - s))
            .product();
        let a = [c(&q, -1), c(&q, 0), c(&q, 1)];
        let b = [c(&q, -4), c(&q, 0), c(&q, 1)];
        assert_eq!(oracle, 9);
        assert_eq!(resultant(&a, &b), c(&q, oracle));
    }

    #[test]
    fn determinant_small() {
        let q = Field::rationals();
        let m = vec![
            vec![c(&q, 2), c(&q, 0), c(&q, 1)],
            vec![c(&q, 1), c(&q, 3), c(&q, 2)],
            vec![c(&q, 1), c(&q, 1), c(&q, 1)],
        ];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(determinant(&m).is_zero());
        let m = vec![vec![BiPoly::x(&q), c(&q, 1)], vec![c(&q, 1), BiPoly::y(&q)]];
        assert_eq!(determinant(&m), &(&BiPoly::x(&q) * &BiPoly::y(&q)) - &c(&q, 1));
    }
}
