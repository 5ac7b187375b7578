//! Incremental row echelon form over an exact field.

use crate::scalar::Field;

/// Row-reduced basis of a subspace of `F^dim`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    // Each row has a leading 1 at `pivots[r]` and zeros in all other pivot columns.
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - factor.clone() * r.clone();
                }
            }
        }
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v;
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / w[p].clone();
        for x in w.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // keep existing rows reduced in the new pivot column
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, n) in row.iter_mut().zip(&w) {
                *x = x.clone() - factor.clone() * n.clone();
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Adds the unit vector `e_i`. Returns `true` if the rank grew.
    pub fn insert_unit(&mut self, i: usize) -> bool {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        self.insert(v)
    }
}
