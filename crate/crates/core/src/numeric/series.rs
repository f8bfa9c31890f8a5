use num_complex::Complex64;

use super::NumericError;

/// A truncated series value with a rigorous bound on the discarded tail.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

const MAX_TERMS: usize = 200_000;

/// Lauricella's F_D(a, b, c; x), summed by total degree N:
/// F_D = Σ_N (a)_N/(c)_N · [z^N] Π_i (1 − x_i z)^{−b_i}.
///
/// Stops once a geometric majorant of the tail drops below `tol`.
pub fn fd_series(a: Complex64, b: &[Complex64], c: Complex64, x: &[f64], tol: f64) -> Result<SeriesValue, NumericError> {
    if b.len() != x.len() {
        return Err(NumericError::InvalidParameter(format!("{} b-values for {} variables", b.len(), x.len())));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(NumericError::InvalidParameter("tolerance must be positive".into()));
    }
    if c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0 {
        return Err(NumericError::InvalidParameter(format!("c = {} is a non-positive integer", c.re)));
    }
    if let Some(xi) = x.iter().find(|xi| xi.abs() >= 1.0) {
        return Err(NumericError::NoConvergence(format!("|x| = {} is not below 1", xi.abs())));
    }
    let rho = x.iter().fold(0.0f64, |m, xi| m.max(xi.abs()));
    let big_b: f64 = b.iter().map(|bi| bi.norm()).sum();
    let m = b.len();
    // g[i][k] = (b_i)_k x_i^k / k!; prefix[j][k] = coefficients of g_0 * … * g_j.
    let mut g: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]; m];
    let mut prefix: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]; m];
    let mut ratio = Complex64::new(1.0, 0.0); // (a)_N / (c)_N
    let mut sum = Complex64::new(1.0, 0.0);
    if m == 0 || rho == 0.0 {
        return Ok(SeriesValue { value: sum, tail_bound: 0.0, terms: 1 });
    }
    // |(a)_N/(c)_N| · (B)_N/N! · ρ^N, the majorant of the degree-N term.
    let mut majorant = 1.0f64;
    for n in 1..MAX_TERMS {
        let nf = (n - 1) as f64;
        ratio *= (a + nf) / (c + nf);
        majorant *= ((a + nf) / (c + nf)).norm() * (big_b + nf) / (nf + 1.0) * rho;
        for i in 0..m {
            let prev = g[i][n - 1];
            g[i].push(prev * (b[i] + nf) * x[i] / (nf + 1.0));
        }
        for j in 0..m {
            let coeff = if j == 0 {
                g[0][n]
            } else {
                (0..=n).map(|k| prefix[j - 1][k] * g[j][n - k]).sum()
            };
            prefix[j].push(coeff);
        }
        sum += ratio * prefix[m - 1][n];
        let k = (n + 1) as f64;
        if k > c.norm() {
            let q = (a.norm() + k) / (k - c.norm()) * ((big_b + k) / (k + 1.0)).max(1.0) * rho;
            if q < 1.0 {
                let next = majorant * ((a.norm() + k - 1.0) / (k - 1.0 - c.norm()).max(f64::MIN_POSITIVE)) * (big_b + k - 1.0) / k * rho;
                let tail = next / (1.0 - q);
                if tail < tol * sum.norm().max(1e-300) || tail < tol * 1e-3 {
                    return Ok(SeriesValue { value: sum, tail_bound: tail, terms: n + 1 });
                }
            }
        }
    }
    Err(NumericError::NoConvergence(format!("no convergence within {MAX_TERMS} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn trivial_values() {
        let v = fd_series(c(0.3), &[c(0.0), c(0.0)], c(1.5), &[0.4, -0.2], 1e-14).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-15);
        let v = fd_series(c(0.3), &[c(0.2), c(0.7)], c(1.5), &[0.0, 0.0], 1e-14).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_closed_forms() {
        // 2F1(1,1;2;x) = −ln(1−x)/x
        let x = 0.6;
        let v = fd_series(c(1.0), &[c(1.0)], c(2.0), &[x], 1e-13).unwrap();
        assert!((v.value.re + (1.0f64 - x).ln() / x).abs() < 1e-12, "{v:?}");
        // 2F1(a,b;b;x) = (1−x)^{−a}
        let v = fd_series(c(0.7), &[c(1.3)], c(1.3), &[-0.5], 1e-13).unwrap();
        assert!((v.value.re - 1.5f64.powf(-0.7)).abs() < 1e-12);
    }

    #[test]
    fn factorizes_when_a_equals_c() {
        // F_D(c, b, c; x) = Π (1 − x_i)^{−b_i}
        let v = fd_series(c(0.9), &[c(0.4), c(-0.3)], c(0.9), &[0.5, 0.25], 1e-13).unwrap();
        let exact = 0.5f64.powf(-0.4) * 0.75f64.powf(0.3);
        assert!((v.value.re - exact).abs() < 1e-12);
        assert!(v.tail_bound < 1e-13 * exact);
    }

    #[test]
    fn errors() {
        assert!(matches!(fd_series(c(0.3), &[c(0.2)], c(1.5), &[1.0], 1e-10), Err(NumericError::NoConvergence(_))));
        assert!(matches!(fd_series(c(0.3), &[c(0.2)], c(-2.0), &[0.1], 1e-10), Err(NumericError::InvalidParameter(_))));
    }
}
