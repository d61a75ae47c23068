//! Scalar math shims and small fixed-size linear algebra.
//!
//! All transcendental functions route through `libm` so that results are
//! bit-identical across platforms and feature sets; golden-file tests in the
//! CLI depend on this. Summations that feed symmetry-sensitive observables go
//! through [`sorted_sum`], which is invariant under permutation of its inputs.

use alloc::vec::Vec;

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// (e^x - 1 - x) / x^2, the second-order remainder of `expm1`.
///
/// Continuous at `x = 0` where it equals 1/2. Used by the confluent kernel
/// integrals, where the naive difference cancels catastrophically.
pub fn em1mx_over_x2(x: f64) -> f64 {
    if abs(x) < 0.5 {
        // Taylor series sum_{k>=2} x^(k-2)/k!, evaluated by Horner.
        let mut acc = 0.0;
        for k in (2..=14u32).rev() {
            acc = (acc + 1.0) * x / (k as f64 + 1.0);
        }
        (acc + 1.0) / 2.0
    } else {
        (expm1(x) - x) / (x * x)
    }
}

/// Permutation-invariant summation: sorts by total order, then accumulates.
///
/// Two calls whose inputs are the same multiset of f64 values return the
/// same bits. This is what makes mode-relabelling symmetries (U1 <-> U2)
/// exact in the mixture observables instead of merely close.
pub fn sorted_sum(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let mut acc = 0.0;
    for v in values.iter() {
        acc += v;
    }
    acc
}

/// Symmetric 2x2 matrix stored as full entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 { m: [[0.0; 2]; 2] };
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    /// Symmetric outer product u u^t.
    pub fn outer(u: [f64; 2]) -> Self {
        Mat2::new(u[0] * u[0], u[0] * u[1], u[1] * u[0], u[1] * u[1])
    }

    /// Symmetrized outer product (u v^t + v u^t) / 2.
    pub fn sym_outer(u: [f64; 2], v: [f64; 2]) -> Self {
        let off = 0.5 * (u[0] * v[1] + u[1] * v[0]);
        Mat2::new(u[0] * v[0], off, off, u[1] * v[1])
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat2::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    pub fn add(&self, o: &Mat2) -> Self {
        Mat2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }

    pub fn sub(&self, o: &Mat2) -> Self {
        Mat2::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(Mat2::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        ))
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// v^t M v.
    pub fn quad_form(&self, v: [f64; 2]) -> f64 {
        let mv = self.mul_vec(v);
        v[0] * mv[0] + v[1] * mv[1]
    }

    /// U^t M U for a 2x2 change of basis U.
    pub fn congruence(&self, u: &Mat2) -> Mat2 {
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        acc += u.m[k][i] * self.m[k][l] * u.m[l][j];
                    }
                }
                out[i][j] = acc;
            }
        }
        Mat2 { m: out }
    }

    /// Positive definiteness by Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.m[0][0] > 0.0 && self.det() > 0.0
    }

    pub fn max_asymmetry(&self) -> f64 {
        abs(self.m[0][1] - self.m[1][0])
    }
}

/// Symmetric 4x4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub m: [[f64; 4]; 4],
}

impl Mat4 {
    pub const ZERO: Mat4 = Mat4 { m: [[0.0; 4]; 4] };

    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Mat4 { m }
    }

    pub fn quad_form(&self, v: [f64; 4]) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += v[i] * self.m[i][j] * v[j];
            }
        }
        acc
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let d = abs(self.m[i][j] - self.m[j][i]);
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Cholesky factorization; `None` when the matrix is not positive definite.
    pub fn cholesky(&self) -> Option<[[f64; 4]; 4]> {
        let mut l = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..=i {
                let mut s = self.m[i][j];
                for k in 0..j {
                    s -= l[i][k] * l[j][k];
                }
                if i == j {
                    if s <= 0.0 {
                        return None;
                    }
                    l[i][j] = sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        Some(l)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.cholesky().is_some()
    }

    /// Eigenvalues by cyclic Jacobi rotations, ascending order.
    pub fn sym_eigenvalues(&self) -> [f64; 4] {
        let mut a = self.m;
        for _ in 0..64 {
            let mut off = 0.0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    off += a[i][j] * a[i][j];
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..4 {
                for q in (p + 1)..4 {
                    if abs(a[p][q]) < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + sqrt(1.0 + theta * theta))
                    } else {
                        -1.0 / (-theta + sqrt(1.0 + theta * theta))
                    };
                    let c = 1.0 / sqrt(1.0 + t * t);
                    let s = t * c;
                    for k in 0..4 {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..4 {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev = [a[0][0], a[1][1], a[2][2], a[3][3]];
        ev.sort_unstable_by(f64::total_cmp);
        ev
    }
}

/// Collects addends for a [`sorted_sum`] without exposing the buffer.
#[derive(Debug, Default)]
pub struct SumAccumulator {
    terms: Vec<f64>,
}

impl SumAccumulator {
    pub fn new() -> Self {
        SumAccumulator { terms: Vec::new() }
    }

    pub fn push(&mut self, v: f64) {
        self.terms.push(v);
    }

    pub fn total(mut self) -> f64 {
        sorted_sum(&mut self.terms)
    }
}
