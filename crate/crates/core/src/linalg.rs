//! Dense complex linear algebra helpers: LU solve and the matrix exponential.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

/// Conjugate transpose.
pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

/// Largest entrywise modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Maximum absolute column sum.
pub fn norm_one(a: &CMatrix) -> f64 {
    a.columns().into_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Solves `A X = B` by LU decomposition with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
    }
    if b.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.nrows() });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let (p, pivot) =
            (k..n).map(|i| (i, lu[[i, k]].norm())).fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot == 0.0 {
            return Err(Error::SingularMatrix);
        }
        if p != k {
            for j in 0..n {
                lu.swap([k, j], [p, j]);
            }
            for j in 0..x.ncols() {
                x.swap([k, j], [p, j]);
            }
        }
        let d = lu[[k, k]];
        for i in k + 1..n {
            let factor = lu[[i, k]] / d;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            lu[[i, k]] = factor;
            for j in k + 1..n {
                let t = lu[[k, j]];
                lu[[i, j]] -= factor * t;
            }
            for j in 0..x.ncols() {
                let t = x[[k, j]];
                x[[i, j]] -= factor * t;
            }
        }
    }
    for k in (0..n).rev() {
        let d = lu[[k, k]];
        for j in 0..x.ncols() {
            let mut s = x[[k, j]];
            for i in k + 1..n {
                s -= lu[[k, i]] * x[[i, j]];
            }
            x[[k, j]] = s / d;
        }
    }
    Ok(x)
}

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
    }
    let norm = norm_one(a);
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scaled = a.mapv(|z| z / 2f64.powi(s));

    let id = identity(n);
    let a2 = scaled.dot(&scaled);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let b = |i: usize| Complex64::new(PADE13[i], 0.0);

    let u_inner = &a6.mapv(|z| z * b(13)) + &a4.mapv(|z| z * b(11)) + &a2.mapv(|z| z * b(9));
    let u_tail = &a6.mapv(|z| z * b(7)) + &a4.mapv(|z| z * b(5)) + &a2.mapv(|z| z * b(3)) + &id.mapv(|z| z * b(1));
    let u = scaled.dot(&(&a6.dot(&u_inner) + &u_tail));

    let v_inner = &a6.mapv(|z| z * b(12)) + &a4.mapv(|z| z * b(10)) + &a2.mapv(|z| z * b(8));
    let v = &a6.dot(&v_inner)
        + &a6.mapv(|z| z * b(6))
        + &a4.mapv(|z| z * b(4))
        + &a2.mapv(|z| z * b(2))
        + &id.mapv(|z| z * b(0));

    let p = &v + &u;
    let q = &v - &u;
    let mut r = solve(&q, &p)?;
    for _ in 0..s {
        r = r.dot(&r);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = array![
            [c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0)],
            [c(1.0, 0.0), c(1.0, -1.0), c(3.0, 0.0)],
            [c(0.0, 0.0), c(4.0, 0.0), c(1.0, 1.0)]
        ];
        let x = array![[c(1.0, 0.0)], [c(-2.0, 0.5)], [c(0.25, 3.0)]];
        let b = a.dot(&x);
        let got = solve(&a, &b).unwrap();
        assert!(max_abs(&(&got - &x)) < 1e-14);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = array![[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]];
        assert_eq!(solve(&a, &identity(2)), Err(Error::SingularMatrix));
    }

    #[test]
    fn expm_of_diagonal() {
        let a = Array2::from_diag(&array![c(0.5, 0.0), c(0.0, -3.0), c(-20.0, 7.0)]);
        let e = expm(&a).unwrap();
        for i in 0..3 {
            assert!((e[[i, i]] - a[[i, i]].exp()).norm() < 1e-13 * a[[i, i]].exp().norm().max(1.0));
        }
    }

    #[test]
    fn expm_rotation_generator() {
        // exp(-i theta sigma_x) = cos(theta) I - i sin(theta) sigma_x
        for &theta in &[0.1, 1.0, 10.0, 100.0] {
            let a = array![[c(0.0, 0.0), c(0.0, -theta)], [c(0.0, -theta), c(0.0, 0.0)]];
            let e = expm(&a).unwrap();
            let expected =
                array![[c(theta.cos(), 0.0), c(0.0, -theta.sin())], [c(0.0, -theta.sin()), c(theta.cos(), 0.0)]];
            assert!(max_abs(&(&e - &expected)) < 1e-12, "theta {theta}");
        }
    }

    #[test]
    fn expm_matches_taylor_for_small_norm() {
        let a = array![[c(0.01, 0.02), c(-0.03, 0.0)], [c(0.05, -0.01), c(0.0, 0.04)]];
        let mut term = identity(2);
        let mut sum = identity(2);
        for k in 1..30 {
            term = term.dot(&a).mapv(|z| z / k as f64);
            sum = &sum + &term;
        }
        assert!(max_abs(&(&expm(&a).unwrap() - &sum)) < 1e-15);
    }

    #[test]
    fn expm_nilpotent() {
        let a = array![[c(0.0, 0.0), c(3.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        let e = expm(&a).unwrap();
        assert!(max_abs(&(&e - &array![[c(1.0, 0.0), c(3.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])) < 1e-14);
    }
}
