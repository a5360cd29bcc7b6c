//! Least-squares building blocks shared by the fitting modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Ordinary least squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub intercept: f64,
    pub slope: f64,
    pub ss_res: f64,
    pub ss_tot: f64,
    pub n: usize,
}

impl LineFit {
    /// Coefficient of determination. Zero-variance input counts as a
    /// perfect fit when the residuals vanish and as no fit otherwise.
    pub fn r_squared(&self) -> f64 {
        if self.ss_tot == 0.0 {
            return if self.ss_res <= f64::EPSILON {
                1.0
            } else {
                0.0
            };
        }
        (1.0 - self.ss_res / self.ss_tot).clamp(0.0, 1.0)
    }

    pub fn rmse(&self) -> f64 {
        (self.ss_res / self.n as f64).sqrt()
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::TooFewPoints { needed: 2, got: 1 });
    }
    let slope = sxy / sxx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = (y - y_mean) - slope * (x - x_mean);
            r * r
        })
        .sum();
    Ok(LineFit {
        intercept: y_mean - slope * x_mean,
        slope,
        ss_res,
        ss_tot: syy,
        n,
    })
}

/// Least-squares polynomial coefficients `c0 + c1 x + ... + ck x^k`.
///
/// Abscissae are rescaled to [-1, 1] before solving and the coefficients
/// mapped back, which keeps the Vandermonde system well conditioned.
pub fn fit_polynomial(xs: &[f64], ys: &[f64], degree: usize) -> Result<Vec<f64>> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let n = xs.len();
    if n < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: n,
        });
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    if half == 0.0 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: 1,
        });
    }
    let a = DMatrix::from_fn(n, degree + 1, |i, j| {
        ((xs[i] - center) / half).powi(j as i32)
    });
    let b = DVector::from_column_slice(ys);
    let scaled = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|_| Error::TooFewPoints {
            needed: degree + 1,
            got: n,
        })?;

    // p(x) = sum d_j ((x - center)/half)^j; expand into powers of x.
    let mut coeffs = vec![0.0; degree + 1];
    for (j, d) in scaled.iter().enumerate() {
        let scale = d / half.powi(j as i32);
        // (x - center)^j = sum_m C(j, m) x^m (-center)^(j-m)
        let mut binom = 1.0;
        for (m, c) in coeffs.iter_mut().enumerate().take(j + 1) {
            *c += scale * binom * (-center).powi((j - m) as i32);
            binom = binom * (j - m) as f64 / (m + 1) as f64;
        }
    }
    Ok(coeffs)
}

pub fn eval_polynomial(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = fit_line(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-15);
        assert!((f.intercept - 1.0).abs() < 1e-15);
        assert_eq!(f.r_squared(), 1.0);
    }

    #[test]
    fn constant_input_convention() {
        let f = fit_line(&[0.0, 1.0, 2.0], &[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(f.slope, 0.0);
        assert_eq!(f.r_squared(), 1.0);
    }

    #[test]
    fn degenerate_abscissa() {
        assert!(fit_line(&[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(fit_line(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn parabola_through_three_points() {
        let c = fit_polynomial(&[0.0, 1.0, 2.0], &[0.0, 1.0, 4.0], 2).unwrap();
        for (got, want) in c.iter().zip([0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn horner() {
        assert_eq!(eval_polynomial(&[1.0, 2.0, 3.0], 2.0), 17.0);
    }
}
