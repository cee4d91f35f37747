//! Minimal dense/sparse linear-algebra layer.
//!
//! Everything downstream needs exactly one nontrivial primitive: the full
//! eigendecomposition of a real symmetric matrix. That is delegated to
//! `faer`, with results copied into plain column-major storage so the rest
//! of the crate never touches solver types. Eigenvalues come back in
//! ascending order with matched eigenvector columns; both facts are
//! re-checked cheaply after every solve.

use crate::error::{Error, Result};

/// Dense symmetric matrix builder (column-major, full storage).
#[derive(Debug, Clone)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> SymMatrix {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.dim + i]
    }

    /// Set entry (i, j) and its mirror (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.dim + i] = v;
        self.data[i * self.dim + j] = v;
    }

    /// Add to entry (i, j) and, when i ≠ j, its mirror.
    pub fn add_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.dim + i] += v;
        if i != j {
            self.data[i * self.dim + j] += v;
        }
    }

    fn to_faer(&self) -> faer::Mat<f64> {
        faer::Mat::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }
}

/// Eigendecomposition of a real symmetric matrix: ascending eigenvalues and
/// orthonormal eigenvectors stored column-major (column λ pairs with
/// `values[λ]`).
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    vectors: Vec<f64>,
    dim: usize,
}

impl Eigh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvector for eigenvalue index λ, as a contiguous slice.
    pub fn vector(&self, lambda: usize) -> &[f64] {
        &self.vectors[lambda * self.dim..(lambda + 1) * self.dim]
    }
}

/// Full symmetric eigendecomposition, ascending eigenvalue order.
pub fn eigh(m: &SymMatrix) -> Result<Eigh> {
    let n = m.dim;
    let evd = m
        .to_faer()
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    let s = evd.S();
    let u = evd.U();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        values.push(s[i]);
    }
    let mut vectors = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            vectors[j * n + i] = u[(i, j)];
        }
    }
    // The two contracts everything downstream leans on.
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Solver("eigenvalues not in ascending order".into()));
    }
    for j in 0..n {
        let col = &vectors[j * n..(j + 1) * n];
        let norm2: f64 = col.iter().map(|c| c * c).sum();
        if (norm2 - 1.0).abs() > 1e-8 {
            return Err(Error::Solver(format!(
                "eigenvector {j} not normalized: |v|^2 = {norm2}"
            )));
        }
    }
    Ok(Eigh {
        values,
        vectors,
        dim: n,
    })
}

/// Symmetric sparse matrix in compressed-row form, assembled from
/// coordinate entries of the upper triangle (diagonal included). Only used
/// as an assembly intermediate — sectors are diagonalized densely.
#[derive(Debug, Clone)]
pub struct SparseSym {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<f64>,
}

impl SparseSym {
    /// Build from upper-triangle coordinates (i ≤ j); duplicate
    /// coordinates accumulate.
    pub fn from_upper_triplets(dim: usize, mut triplets: Vec<(u32, u32, f64)>) -> SparseSym {
        debug_assert!(triplets.iter().all(|&(i, j, _)| i <= j && (j as usize) < dim));
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(triplets.len());
        for (i, j, v) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        let mut row_ptr = vec![0usize; dim + 1];
        for &(i, _, _) in &merged {
            row_ptr[i as usize + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        SparseSym {
            dim,
            row_ptr,
            col_idx: merged.iter().map(|&(_, j, _)| j).collect(),
            values: merged.iter().map(|&(_, _, v)| v).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz_upper(&self) -> usize {
        self.values.len()
    }

    /// Expand to the full dense symmetric matrix.
    pub fn to_dense(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col_idx[p] as usize;
                m.add_sym(i, j, self.values[p]);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_recovers_known_spectrum() {
        // 3x3 with eigenvalues {1, 2, 4}: diag(1,2,4) rotated is overkill;
        // use a matrix whose spectrum is known analytically instead.
        // Tridiagonal (0, 1) chain of length 3: eigenvalues 2cos(kπ/4)·t.
        let mut m = SymMatrix::zeros(3);
        m.set_sym(0, 1, 1.0);
        m.set_sym(1, 2, 1.0);
        let e = eigh(&m).unwrap();
        let expect = [-(2.0f64).sqrt(), 0.0, (2.0f64).sqrt()];
        for (got, want) in e.values.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        // Residual ‖Av − λv‖ for each pair.
        for l in 0..3 {
            let v = e.vector(l);
            for i in 0..3 {
                let av: f64 = (0..3).map(|k| m.get(i, k) * v[k]).sum();
                assert!((av - e.values[l] * v[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let mut m = SymMatrix::zeros(8);
        for i in 0..8 {
            m.set_sym(i, i, (i as f64).sin());
            if i + 1 < 8 {
                m.set_sym(i, i + 1, 0.5);
            }
        }
        let e = eigh(&m).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let dot: f64 = e
                    .vector(a)
                    .iter()
                    .zip(e.vector(b))
                    .map(|(x, y)| x * y)
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10, "({a},{b}): {dot}");
            }
        }
    }

    #[test]
    fn sparse_round_trip_matches_dense() {
        let triplets = vec![
            (0u32, 0u32, 1.5),
            (0, 2, -0.5),
            (1, 1, 2.0),
            (0, 2, -0.5), // duplicate accumulates
            (2, 3, 0.25),
            (3, 3, -1.0),
        ];
        let sp = SparseSym::from_upper_triplets(4, triplets);
        let d = sp.to_dense();
        assert_eq!(d.get(0, 0), 1.5);
        assert_eq!(d.get(0, 2), -1.0);
        assert_eq!(d.get(2, 0), -1.0);
        assert_eq!(d.get(1, 1), 2.0);
        assert_eq!(d.get(2, 3), 0.25);
        assert_eq!(d.get(3, 2), 0.25);
        assert_eq!(d.get(3, 3), -1.0);
        assert_eq!(d.get(1, 2), 0.0);
    }
}
