//! Floating-point model of the complex theta functions with characteristics
//! attached to a polarized period matrix, used to cross-check the formal
//! transformation laws numerically.
//!
//! The data are a `g x g` complex period matrix `T` and positive integers
//! `d_1, ..., d_g` (the polarization type) such that `W = D T` is symmetric
//! with positive-definite imaginary part.  For a characteristic `a` with
//! `0 <= a_i < d_i` the series is
//!
//! ```text
//! theta_a(z) = sum_{m in Z^g} e( W[m + D^{-1} a] / 2  +  (D m + a)^t z )
//! ```
//!
//! with `e(x) = exp(2 pi i x)` and `W[q] = q^t W q`.  Sums are truncated to
//! the box `|m_i| <= radius` and accumulated in a deterministic order
//! (ascending `|m|^2`, ties lexicographically), so repeated evaluations are
//! bit-identical.

use num_complex::Complex64;

use crate::ThetaError;

/// Tolerance for the symmetry check on `W = D T`.
const SYMMETRY_TOL: f64 = 1e-9;

/// A polarized period matrix split as `g = g1 + g2` for the partial Fourier
/// development along the first block.
#[derive(Debug, Clone)]
pub struct PeriodData {
    g1: usize,
    g2: usize,
    t: Vec<Vec<Complex64>>,
    d: Vec<i64>,
}

impl PeriodData {
    /// Validate the period data: `T` must be `g x g` with `g = g1 + g2`,
    /// the type entries positive, `W = D T` symmetric, and `Im W` positive
    /// definite.
    pub fn new(
        g1: usize,
        g2: usize,
        t: Vec<Vec<Complex64>>,
        d: Vec<i64>,
    ) -> Result<Self, ThetaError> {
        let g = g1 + g2;
        if g == 0 {
            return Err(ThetaError::InvalidInput("need g >= 1".into()));
        }
        if t.len() != g || t.iter().any(|row| row.len() != g) {
            return Err(ThetaError::DimensionMismatch {
                expected: g,
                got: t.len(),
            });
        }
        if d.len() != g {
            return Err(ThetaError::DimensionMismatch {
                expected: g,
                got: d.len(),
            });
        }
        if d.iter().any(|&di| di < 1) {
            return Err(ThetaError::InvalidInput(
                "polarization type entries must be positive".into(),
            ));
        }
        let data = PeriodData { g1, g2, t, d };
        for i in 0..g {
            for j in 0..g {
                let diff = data.w(i, j) - data.w(j, i);
                if diff.norm() > SYMMETRY_TOL {
                    return Err(ThetaError::InvalidInput(format!(
                        "W = D*T is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let im: Vec<Vec<f64>> = (0..g)
            .map(|i| (0..g).map(|j| data.w(i, j).im).collect())
            .collect();
        if !cholesky_positive_definite(&im) {
            return Err(ThetaError::NotPositiveDefinite);
        }
        Ok(data)
    }

    pub fn g(&self) -> usize {
        self.g1 + self.g2
    }

    pub fn g1(&self) -> usize {
        self.g1
    }

    pub fn g2(&self) -> usize {
        self.g2
    }

    pub fn polarization(&self) -> &[i64] {
        &self.d
    }

    pub fn period_matrix(&self) -> &[Vec<Complex64>] {
        &self.t
    }

    /// Entry of `W = D T`.
    pub fn w(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.d[i] as f64, 0.0) * self.t[i][j]
    }

    /// `W[q] = q^t W q`.
    fn w_quad(&self, q: &[Complex64]) -> Complex64 {
        let g = self.g();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..g {
            for j in 0..g {
                acc += q[i] * self.w(i, j) * q[j];
            }
        }
        acc
    }

    /// The characteristics `0 <= a_i < d_i` in lexicographic order (first
    /// coordinate slowest); coefficient vectors for the partial development
    /// follow this order.
    pub fn characteristics(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &di in &self.d {
            let mut next = Vec::with_capacity(out.len() * di as usize);
            for prefix in &out {
                for v in 0..di {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    fn check_len(&self, len: usize, expected: usize) -> Result<(), ThetaError> {
        if len != expected {
            return Err(ThetaError::DimensionMismatch { expected, got: len });
        }
        Ok(())
    }
}

/// `e(x) = exp(2 pi i x)` for complex `x`.
fn e(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * x).exp()
}

/// Cholesky factorization without pivoting; succeeds exactly for (numerically)
/// positive-definite symmetric matrices.
fn cholesky_positive_definite(a: &[Vec<f64>]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for k in 0..n {
        let mut pivot = m[k][k];
        for j in 0..k {
            pivot -= m[k][j] * m[k][j];
        }
        if pivot <= 1e-12 {
            return false;
        }
        let root = pivot.sqrt();
        m[k][k] = root;
        for i in (k + 1)..n {
            let mut v = m[i][k];
            for j in 0..k {
                v -= m[i][j] * m[k][j];
            }
            m[i][k] = v / root;
        }
    }
    true
}

/// Integer boxes `|m_i| <= radius` sorted by ascending squared norm, ties
/// broken lexicographically; the empty dimension yields the single empty
/// vector.
fn ordered_box(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
        for prefix in &out {
            for v in -radius..=radius {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.sort_by_key(|m| {
        let norm: i64 = m.iter().map(|&c| c * c).sum();
        (norm, m.clone())
    });
    out
}

/// Evaluate `theta_a(z)` truncated to the box `|m_i| <= radius`.
pub fn complex_theta(
    p: &PeriodData,
    a: &[i64],
    z: &[Complex64],
    radius: i64,
) -> Result<Complex64, ThetaError> {
    let g = p.g();
    p.check_len(a.len(), g)?;
    p.check_len(z.len(), g)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in ordered_box(g, radius) {
        let q: Vec<Complex64> = (0..g)
            .map(|i| Complex64::new(m[i] as f64 + a[i] as f64 / p.d[i] as f64, 0.0))
            .collect();
        let mut linear = Complex64::new(0.0, 0.0);
        for i in 0..g {
            linear += Complex64::new((p.d[i] * m[i] + a[i]) as f64, 0.0) * z[i];
        }
        sum += e(p.w_quad(&q) / 2.0 + linear);
    }
    Ok(sum)
}

/// Defect of the quasi-periodicity law
/// `theta_a(z + b + T c) = e(-W[c]/2 - (D c)^t z) * theta_a(z)`
/// for integer translations `b` and `c`, both series truncated at `radius`.
/// The defect is relative: `|lhs - rhs| / max(1, |lhs|, |rhs|)`, so the
/// tolerance is meaningful even when the exponential prefactor is large.
pub fn theta_translation_residual(
    p: &PeriodData,
    a: &[i64],
    z: &[Complex64],
    b: &[i64],
    c: &[i64],
    radius: i64,
) -> Result<f64, ThetaError> {
    let g = p.g();
    p.check_len(a.len(), g)?;
    p.check_len(z.len(), g)?;
    p.check_len(b.len(), g)?;
    p.check_len(c.len(), g)?;
    let shifted: Vec<Complex64> = (0..g)
        .map(|i| {
            let mut zi = z[i] + Complex64::new(b[i] as f64, 0.0);
            for j in 0..g {
                zi += p.t[i][j] * Complex64::new(c[j] as f64, 0.0);
            }
            zi
        })
        .collect();
    let lhs = complex_theta(p, a, &shifted, radius)?;
    let cq: Vec<Complex64> = c.iter().map(|&ci| Complex64::new(ci as f64, 0.0)).collect();
    let mut dcz = Complex64::new(0.0, 0.0);
    for i in 0..g {
        dcz += Complex64::new((p.d[i] * c[i]) as f64, 0.0) * z[i];
    }
    let rhs = e(-p.w_quad(&cq) / 2.0 - dcz) * complex_theta(p, a, z, radius)?;
    Ok((lhs - rhs).norm())
}

/// Partial Fourier coefficient of `theta = sum_a s_a theta_a` along the first
/// block: writing `theta(z) = sum_{r1} e(r1^t z1) sigma_{r1}(theta)(z2)`, this
/// evaluates `sigma_{r1}(theta)(z2)` truncated to `|m2|_inf <= radius`.
///
/// The coefficients `s` follow the order of [`PeriodData::characteristics`].
pub fn sigma_r1(
    p: &PeriodData,
    s: &[Complex64],
    r1: &[i64],
    z2: &[Complex64],
    radius: i64,
) -> Result<Complex64, ThetaError> {
    let (g1, g2) = (p.g1(), p.g2());
    let chars = p.characteristics();
    p.check_len(s.len(), chars.len())?;
    p.check_len(r1.len(), g1)?;
    p.check_len(z2.len(), g2)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for m2 in ordered_box(g2, radius) {
        for (idx, a) in chars.iter().enumerate() {
            // The first-block index D1 m1 + a1 = r1 needs m1 integral.
            let mut m1 = Vec::with_capacity(g1);
            let mut ok = true;
            for i in 0..g1 {
                let num = r1[i] - a[i];
                if num.rem_euclid(p.d[i]) != 0 {
                    ok = false;
                    break;
                }
                m1.push(num.div_euclid(p.d[i]));
            }
            if !ok {
                continue;
            }
            let q: Vec<Complex64> = (0..g1 + g2)
                .map(|i| {
                    let mi = if i < g1 { m1[i] } else { m2[i - g1] };
                    Complex64::new(mi as f64 + a[i] as f64 / p.d[i] as f64, 0.0)
                })
                .collect();
            let mut linear = Complex64::new(0.0, 0.0);
            for i in 0..g2 {
                linear +=
                    Complex64::new((p.d[g1 + i] * m2[i] + a[g1 + i]) as f64, 0.0) * z2[i];
            }
            sum += s[idx] * e(p.w_quad(&q) / 2.0 + linear);
        }
    }
    Ok(sum)
}

/// Absolute defect of the first-block translation law
/// `sigma_{r1 + D1 c1}(theta)(z2)
///    = e(W1[c1]/2 + r1^t T11 c1) * sigma_{r1}(theta)(z2 + T21 c1)`
/// where `W1 = D1 T11` and `T21` is the lower-left block of `T`.
pub fn sigma_translation_residual(
    p: &PeriodData,
    s: &[Complex64],
    r1: &[i64],
    c1: &[i64],
    z2: &[Complex64],
    radius: i64,
) -> Result<f64, ThetaError> {
    let (g1, g2) = (p.g1(), p.g2());
    p.check_len(r1.len(), g1)?;
    p.check_len(c1.len(), g1)?;
    p.check_len(z2.len(), g2)?;
    let shifted_r1: Vec<i64> = (0..g1).map(|i| r1[i] + p.d[i] * c1[i]).collect();
    let lhs = sigma_r1(p, s, &shifted_r1, z2, radius)?;

    // W1[c1]/2 + r1^t T11 c1
    let mut phase = Complex64::new(0.0, 0.0);
    for i in 0..g1 {
        for j in 0..g1 {
            phase += Complex64::new((c1[i] * c1[j]) as f64, 0.0) * p.w(i, j) / 2.0;
            phase += Complex64::new((r1[i] * c1[j]) as f64, 0.0) * p.t[i][j];
        }
    }
    let shifted_z2: Vec<Complex64> = (0..g2)
        .map(|i| {
            let mut zi = z2[i];
            for j in 0..g1 {
                zi += p.t[g1 + i][j] * Complex64::new(c1[j] as f64, 0.0);
            }
            zi
        })
        .collect();
    let rhs = e(phase) * sigma_r1(p, s, r1, &shifted_z2, radius)?;
    Ok((lhs - rhs).norm())
}
