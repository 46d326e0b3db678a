//! Minimal dense linear algebra: square matrices, Householder QR, and a
//! pivoted-LU determinant. Sized for the desk-scale dimensions used here
//! (n up to a few hundred).

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>, // row-major
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// y = M x
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let mut s = 0.0;
            for j in 0..n {
                s += row[j] * x[j];
            }
            y[i] = s;
        }
    }

    /// y = M^T x
    pub fn t_matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        for v in y.iter_mut() {
            *v = 0.0;
        }
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let xi = x[i];
            for j in 0..n {
                y[j] += row[j] * xi;
            }
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.at(i, j)).collect()
    }

    /// Max entrywise deviation of M^T M from the identity.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.at(k, i) * self.at(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].abs();
            for r in (col + 1)..n {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let f = a[r * n + col] / p;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }
}

/// Householder QR of a square matrix; returns (Q, diag(R)).
///
/// Q is assembled explicitly, accurate to ~1e-14 in orthogonality.
pub fn qr_decompose(m: &Matrix) -> (Matrix, Vec<f64>) {
    let n = m.dim();
    let mut r = m.clone();
    // Accumulate Q^T by applying the reflectors to the identity.
    let mut qt = Matrix::identity(n);
    for k in 0..n {
        let mut norm = 0.0;
        for i in k..n {
            norm += r.at(i, k) * r.at(i, k);
        }
        norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if r.at(k, k) >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        v[k] = r.at(k, k) - alpha;
        for i in (k + 1)..n {
            v[i] = r.at(i, k);
        }
        let vtv: f64 = v[k..].iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        // Apply H = I - 2 v v^T / (v^T v) to R (left) and accumulate into Q^T.
        for j in 0..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += v[i] * r.at(i, j);
            }
            let f = 2.0 * dot / vtv;
            for i in k..n {
                let val = r.at(i, j) - f * v[i];
                r.set(i, j, val);
            }
        }
        for j in 0..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += v[i] * qt.at(i, j);
            }
            let f = 2.0 * dot / vtv;
            for i in k..n {
                let val = qt.at(i, j) - f * v[i];
                qt.set(i, j, val);
            }
        }
    }
    let q = Matrix::from_fn(n, |i, j| qt.at(j, i));
    let diag = (0..n).map(|k| r.at(k, k)).collect();
    (q, diag)
}
