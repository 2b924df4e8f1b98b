//! Unnormalised n-D FFTs over row-major buffers (n ≤ 2), built on `rustfft`.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

pub(crate) fn fft_nd(values: &mut [Complex64], counts: &[usize], direction: FftDirection) {
    debug_assert_eq!(values.len(), counts.iter().product::<usize>());
    let mut planner = FftPlanner::<f64>::new();
    match counts {
        [n0] => planner.plan_fft(*n0, direction).process(values),
        [n0, n1] => {
            // rows are contiguous
            planner.plan_fft(*n1, direction).process(values);
            let col_fft = planner.plan_fft(*n0, direction);
            let mut col = vec![Complex64::new(0.0, 0.0); *n0];
            for j in 0..*n1 {
                for (i, c) in col.iter_mut().enumerate() {
                    *c = values[i * n1 + j];
                }
                col_fft.process(&mut col);
                for (i, c) in col.iter().enumerate() {
                    values[i * n1 + j] = *c;
                }
            }
        }
        _ => unreachable!("grids are 1-D or 2-D"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_dft_2d() {
        let (n0, n1) = (8usize, 16usize);
        let x: Vec<Complex64> = (0..n0 * n1)
            .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
            .collect();
        let mut y = x.clone();
        fft_nd(&mut y, &[n0, n1], FftDirection::Forward);
        for m0 in 0..n0 {
            for m1 in 0..n1 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k0 in 0..n0 {
                    for k1 in 0..n1 {
                        let ph = -2.0
                            * std::f64::consts::PI
                            * ((m0 * k0) as f64 / n0 as f64 + (m1 * k1) as f64 / n1 as f64);
                        acc += x[k0 * n1 + k1] * Complex64::from_polar(1.0, ph);
                    }
                }
                assert!((acc - y[m0 * n1 + m1]).norm() < 1e-11);
            }
        }
    }
}
