//! Real symmetric tridiagonal eigenproblems.
//!
//! The finite-difference Hamiltonians only ever need their lowest few
//! eigenpairs on grids of 10⁴–10⁵ nodes, so the solver uses Sturm-sequence
//! bisection for eigenvalues and inverse iteration for eigenvectors, both
//! `O(n)` per eigenpair. An implicit-shift QL sweep for the full spectrum is
//! kept for small matrices and as a cross-check.

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() − 1`).
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            if q == 0.0 {
                q = tiny;
            }
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.len());
        let (lo, hi) = self.gershgorin();
        let span = (hi - lo).max(f64::MIN_POSITIVE);
        let mut out: Vec<f64> = Vec::with_capacity(k);
        for i in 0..k {
            let mut a = out.last().copied().unwrap_or(lo).max(lo) - 1e-12 * span;
            let mut b = hi + 1e-12 * span;
            // Invariant: count_below(a) ≤ i < count_below(b).
            loop {
                let mid = 0.5 * (a + b);
                let width = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-3 * span);
                if mid <= a || mid >= b || b - a <= width {
                    break;
                }
                if self.count_below(mid) > i {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            out.push(0.5 * (a + b));
        }
        out
    }

    /// Eigenvector for a converged eigenvalue by inverse iteration,
    /// normalized to unit Euclidean length.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let shift = lambda + 4.0 * f64::EPSILON * scale;
        let lu = PivotedLu::factor(self, shift, f64::EPSILON * scale);
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            lu.solve_in_place(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// Every eigenvalue, ascending, by implicit-shift QL iteration.
    pub fn all_eigenvalues(&self) -> Vec<f64> {
        let n = self.len();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                assert!(iter <= 60, "QL iteration failed to converge");
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut i = m;
                let mut underflow = false;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
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
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        d
    }
}

/// LU factorization of `T − σI` with partial pivoting; `U` has two
/// superdiagonals.
struct PivotedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl PivotedLu {
    fn factor(t: &SymTridiagonal, shift: f64, pivot_floor: f64) -> Self {
        let n = t.len();
        let mut u0: Vec<f64> = t.diag.iter().map(|d| d - shift).collect();
        let mut u1: Vec<f64> = t.off.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        // Row i+1 of the working matrix starts as (sub, diag, super).
        for i in 0..n.saturating_sub(1) {
            let sub = t.off[i];
            if sub.abs() > u0[i].abs() {
                swapped[i] = true;
                let m = u0[i] / sub;
                mult[i] = m;
                let (d_next, s_next) = (u0[i + 1], u1[i + 1]);
                // Pivot row becomes (sub, d_next, s_next).
                let (a1, a2) = (u1[i], 0.0);
                u0[i] = sub;
                u1[i] = d_next;
                u2[i] = s_next;
                u0[i + 1] = a1 - m * d_next;
                u1[i + 1] = a2 - m * s_next;
            } else {
                let pivot = if u0[i] == 0.0 { pivot_floor } else { u0[i] };
                u0[i] = pivot;
                let m = sub / pivot;
                mult[i] = m;
                u0[i + 1] -= m * u1[i];
            }
        }
        if u0[n - 1] == 0.0 {
            u0[n - 1] = pivot_floor;
        }
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.u2[i] * b[i + 2];
            }
            let pivot = if self.u0[i] == 0.0 {
                f64::MIN_POSITIVE
            } else {
                self.u0[i]
            };
            b[i] = acc / pivot;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    // Eigenvalues of tridiag(−1, 2, −1): 2 − 2cos(jπ/(n+1)).
    fn laplacian_exact(n: usize) -> Vec<f64> {
        (1..=n)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect()
    }

    #[test]
    fn bisection_matches_closed_form() {
        let t = laplacian(200);
        let exact = laplacian_exact(200);
        for (a, b) in t.lowest_eigenvalues(10).iter().zip(&exact) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn ql_matches_closed_form() {
        let t = laplacian(50);
        let exact = laplacian_exact(50);
        for (a, b) in t.all_eigenvalues().iter().zip(&exact) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn bisection_agrees_with_ql_on_irregular_matrix() {
        let n = 120;
        let diag: Vec<f64> = (0..n).map(|i| ((i * 37) % 11) as f64 - 3.0).collect();
        let off: Vec<f64> = (0..n - 1)
            .map(|i| 0.5 + ((i * 13) % 7) as f64 * 0.1)
            .collect();
        let t = SymTridiagonal::new(diag, off);
        let all = t.all_eigenvalues();
        let low = t.lowest_eigenvalues(n);
        for (a, b) in low.iter().zip(&all) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn inverse_iteration_residual() {
        let n = 300;
        let diag: Vec<f64> = (0..n).map(|i| 2.0 + (i as f64 * 0.1).sin()).collect();
        let t = SymTridiagonal::new(diag.clone(), vec![-1.0; n - 1]);
        for lambda in t.lowest_eigenvalues(3) {
            let v = t.eigenvector(lambda);
            let mut res: f64 = 0.0;
            for i in 0..n {
                let mut tv = diag[i] * v[i];
                if i > 0 {
                    tv -= v[i - 1];
                }
                if i + 1 < n {
                    tv -= v[i + 1];
                }
                res = res.max((tv - lambda * v[i]).abs());
            }
            assert!(res < 1e-10, "residual {res}");
        }
    }

    #[test]
    fn single_element() {
        let t = SymTridiagonal::new(vec![3.0], vec![]);
        assert_eq!(t.lowest_eigenvalues(1).len(), 1);
        assert!((t.lowest_eigenvalues(1)[0] - 3.0).abs() < 1e-14);
        assert_eq!(t.all_eigenvalues(), vec![3.0]);
    }
}
