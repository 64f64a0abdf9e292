//! Small dense real matrix helpers.
//!
//! Everything here operates on tiny symmetric matrices (the intrinsic
//! dimension never exceeds seven), so simple Gauss elimination and cyclic
//! Jacobi sweeps are accurate and fast enough.

/// Row-major square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SquareMat {
    pub fn zeros(n: usize) -> Self {
        SquareMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SquareMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Inverse by Gauss-Jordan with partial pivoting. Returns `None` when a
    /// pivot falls below `1e-14` times the largest initial entry.
    pub fn inverse(&self) -> Option<SquareMat> {
        let n = self.n;
        let scale = self
            .data
            .iter()
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()))
            .max(1.0);
        let mut a = self.data.clone();
        let mut inv = SquareMat::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 });
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col].abs() < 1e-14 * scale {
                return None;
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                    inv.data.swap(col * n + k, piv * n + k);
                }
            }
            let d = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= d;
                inv.data[col * n + k] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f != 0.0 {
                    for k in 0..n {
                        a[r * n + k] -= f * a[col * n + k];
                        inv.data[r * n + k] -= f * inv.data[col * n + k];
                    }
                }
            }
        }
        Some(inv)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / a[col * n + col];
                if f != 0.0 {
                    for k in col..n {
                        a[r * n + k] -= f * a[col * n + k];
                    }
                }
            }
        }
        det
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues(m: &SquareMat) -> Vec<f64> {
    let n = m.n;
    let mut a = m.data.clone();
    let idx = |i: usize, j: usize| i * n + j;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                // Angle zeroing a_pq: tan(2t) = 2 a_pq / (a_qq - a_pp).
                let t = 0.5 * (2.0 * apq).atan2(aqq - app);
                let (s, c) = t.sin_cos();
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Singular values of a rectangular row-major `rows x cols` matrix, descending,
/// computed as square roots of the eigenvalues of `A A^T` (rows <= cols here).
pub fn singular_values(rows: usize, cols: usize, data: &[f64]) -> Vec<f64> {
    assert_eq!(data.len(), rows * cols);
    let gram = SquareMat::from_fn(rows, |i, j| {
        (0..cols)
            .map(|k| data[i * cols + k] * data[j * cols + k])
            .sum()
    });
    let mut eig = sym_eigenvalues(&gram);
    eig.reverse();
    eig.into_iter().map(|e| e.max(0.0).sqrt()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_solves_identity() {
        let m = SquareMat::from_fn(3, |i, j| {
            [[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]][i][j]
        });
        let inv = m.inverse().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += m.get(i, k) * inv.get(k, j);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-12, "product entry ({i},{j}) = {s}");
            }
        }
    }

    #[test]
    fn det_of_diagonal() {
        let m = SquareMat::from_fn(3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        assert!((m.det() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_known_symmetric() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let m = SquareMat::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = sym_eigenvalues(&m);
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_rank_one() {
        // [1 2 2; 2 4 4] has rank 1, sigma_1 = sqrt(45)
        let data = vec![1.0, 2.0, 2.0, 2.0, 4.0, 4.0];
        let sv = singular_values(2, 3, &data);
        assert!((sv[0] - 45.0_f64.sqrt()).abs() < 1e-10);
        assert!(sv[1].abs() < 1e-10);
    }
}
