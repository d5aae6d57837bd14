//! Laplacian spectra: all eigenvalues of the dense symmetric Laplacian,
//! with zero/non-zero counts under a combined relative/absolute tolerance.
//!
//! The solver is the classic Householder tridiagonalization followed by
//! implicit-shift QL, eigenvalues only. Dense O(n^3) work is fine at the
//! network sizes this crate targets (at most a few thousand species).

use crate::error::{Error, Result};
use crate::graph::SymmetricMatrix;

/// Default tolerance for deciding that an eigenvalue is zero. The effective
/// threshold is `max(tol, tol * largest_eigenvalue)`.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;

const MAX_QL_ITERATIONS: usize = 64;

/// Sorted Laplacian eigenvalues plus the derived counts.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    zero_tolerance: f64,
    zero_count: usize,
}

impl Spectrum {
    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    /// Multiplicity of the zero eigenvalue; for a Laplacian this equals the
    /// number of connected components.
    pub fn zero_count(&self) -> usize {
        self.zero_count
    }

    /// Count of eigenvalues above the zero threshold.
    pub fn nonzero_count(&self) -> usize {
        self.eigenvalues.len() - self.zero_count
    }

    /// Component count read off the spectrum (alias for `zero_count`).
    pub fn component_count(&self) -> usize {
        self.zero_count
    }

    /// Largest eigenvalue; 0 for an edgeless graph.
    pub fn largest(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Sum of all eigenvalues (equals the Laplacian trace, i.e. 2m).
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Computes the full spectrum of a Laplacian matrix.
///
/// An eigenvalue counts as zero iff `|lambda| <= max(tol, tol * lambda_max)`;
/// negative values inside that band are numerical noise on a positive
/// semidefinite matrix and get clamped to exactly 0.
pub fn laplacian_spectrum(l: &SymmetricMatrix, zero_tolerance: f64) -> Result<Spectrum> {
    if zero_tolerance.is_nan() || zero_tolerance <= 0.0 {
        return Err(Error::Config(format!(
            "zero tolerance must be positive, got {zero_tolerance}"
        )));
    }
    let mut eigenvalues = symmetric_eigenvalues(l)?;
    eigenvalues.sort_unstable_by(|a, b| a.total_cmp(b));
    let largest = eigenvalues.last().copied().unwrap_or(0.0);
    let threshold = zero_tolerance.max(zero_tolerance * largest);
    let mut zero_count = 0;
    for value in &mut eigenvalues {
        if value.abs() <= threshold {
            *value = 0.0;
            zero_count += 1;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        zero_tolerance,
        zero_count,
    })
}

/// All eigenvalues of a dense symmetric matrix, unsorted.
///
/// Householder reduction to tridiagonal form, then QL with implicit shifts.
/// Fails with a numerical error only if some eigenvalue needs more than
/// `MAX_QL_ITERATIONS` QL sweeps, which does not happen for the matrix
/// sizes and conditioning this crate works with.
pub fn symmetric_eigenvalues(matrix: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = matrix.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a: Vec<f64> = matrix.as_slice().to_vec();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tridiagonalize(&mut a, n, &mut d, &mut e);
    ql_implicit_shifts(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction of a symmetric matrix (row-major, lower triangle
/// used) to tridiagonal form: diagonal in `d`, subdiagonal in `e[1..]`.
fn tridiagonalize(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut fsum = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    fsum += e[j] * a[i * n + j];
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        let _ = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i * n + i];
    }
}

/// QL algorithm with implicit shifts on a tridiagonal matrix.
fn ql_implicit_shifts(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::Numerical(format!(
                    "QL iteration limit reached at eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn spectrum_of(g: &Graph) -> Spectrum {
        laplacian_spectrum(&g.laplacian(), DEFAULT_ZERO_TOLERANCE).unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, b) in actual.iter().zip(expected) {
            assert!((a - b).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn single_edge_spectrum() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let s = spectrum_of(&g);
        assert_close(s.eigenvalues(), &[0.0, 2.0], 1e-12);
        assert_eq!(s.zero_count(), 1);
        assert_eq!(s.nonzero_count(), 1);
        assert!((s.largest() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn isolated_nodes_all_zero() {
        let g = Graph::new(5, &[]).unwrap();
        let s = spectrum_of(&g);
        assert_eq!(s.zero_count(), 5);
        assert_eq!(s.nonzero_count(), 0);
        assert_eq!(s.largest(), 0.0);
    }

    #[test]
    fn cycle_c4_spectrum() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = spectrum_of(&g);
        assert_close(s.eigenvalues(), &[0.0, 2.0, 2.0, 4.0], 1e-9);
    }

    #[test]
    fn star_k13_spectrum() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = spectrum_of(&g);
        assert_close(s.eigenvalues(), &[0.0, 1.0, 1.0, 4.0], 1e-9);
        assert_eq!(s.largest(), s.eigenvalues()[3]);
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let s = spectrum_of(&g);
        assert_eq!(s.component_count(), 2);
        assert_close(s.eigenvalues(), &[0.0, 0.0, 2.0, 2.0], 1e-9);
    }

    #[test]
    fn component_count_matches_bfs_on_example() {
        let g = Graph::new(5, &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4)]).unwrap();
        let s = spectrum_of(&g);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.nonzero_count(), 4);
    }

    #[test]
    fn spectrum_sum_equals_trace() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]).unwrap();
        let s = spectrum_of(&g);
        let two_m = 2.0 * g.edge_count() as f64;
        assert!((s.sum() - two_m).abs() <= 1e-9 * two_m);
    }

    #[test]
    fn path_closed_form() {
        let n = 17;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let s = spectrum_of(&g);
        let mut expected: Vec<f64> = (0..n)
            .map(|k| {
                let x = (k as f64) * std::f64::consts::PI / (2.0 * n as f64);
                4.0 * x.sin() * x.sin()
            })
            .collect();
        expected.sort_unstable_by(|a, b| a.total_cmp(b));
        assert_close(s.eigenvalues(), &expected, 1e-10);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            laplacian_spectrum(&g.laplacian(), 0.0),
            Err(Error::Config(_))
        ));
    }
}
