use crate::field::{Field, FieldElem};

/// Dense rectangular matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<FieldElem>>,
}

impl ExactMatrix {
    /// Panics if the rows are ragged.
    pub fn new(field: &Field, cols: usize, rows: Vec<Vec<FieldElem>>) -> ExactMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "matrix must be rectangular");
        ExactMatrix {
            field: field.clone(),
            cols,
            rows,
        }
    }

    pub fn identity(field: &Field, n: usize) -> ExactMatrix {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        ExactMatrix::new(field, n, rows)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.rows[i]
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns. Pivots are chosen as
    /// the first nonzero column, smallest row index.
    pub fn rref(&self) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].try_inv().expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..a.len() {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in c..self.cols {
                    let sub = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column in order.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let (a, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            basis.push(v);
        }
        basis
    }
}
