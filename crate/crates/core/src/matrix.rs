//! Dense square matrices over [`Scalar`].

use std::sync::Arc;

use crate::graph::VertexSet;
use crate::scalar::{FieldContext, FieldExt, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Matrix {
        let mut data = vec![ctx.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = ctx.one();
        }
        Matrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &Scalar> {
        (0..self.n).map(move |i| self.get(i, j))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc: Option<Scalar> = None;
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let p = a * b;
                acc = Some(match acc {
                    Some(s) => &s + &p,
                    None => p,
                });
            }
            acc.unwrap_or_else(|| self.data[0].context().zero())
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// True iff the matrix is `-I`.
    pub fn is_neg_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    (-x).is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// The principal submatrix on the rows and columns in `set`.
    pub fn principal(&self, set: VertexSet) -> Matrix {
        let idx: Vec<usize> = set.iter().collect();
        let mut data = Vec::with_capacity(idx.len() * idx.len());
        for &i in &idx {
            for &j in &idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            n: idx.len(),
            data,
        }
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self, ctx: &Arc<FieldContext>) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = ctx.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return ctx.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &p_inv;
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &delta;
                }
            }
        }
        det
    }
}
