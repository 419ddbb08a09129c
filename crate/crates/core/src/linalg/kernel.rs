//! Slice-level O(N) kernels.
//!
//! These operate on raw amplitude buffers with no normalization requirement,
//! so they can be used on intermediate linear combinations. The checked
//! [`StateVector`](super::StateVector) operations are thin wrappers.

use num_complex::Complex64;

/// `<a|b>`, conjugating the first argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum()
}

/// `target <- target - 2 <mirror|target> mirror`.
///
/// Assumes `mirror` is unit norm.
pub fn reflect_in_place(mirror: &[Complex64], target: &mut [Complex64]) {
    let c = inner(mirror, target) * 2.0;
    axpy(-c, mirror, target);
}

/// `y <- y + a x`.
pub fn axpy(a: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn scale_in_place(a: Complex64, x: &mut [Complex64]) {
    for xi in x {
        *xi *= a;
    }
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_conjugates_first_argument() {
        let a = [c(0.0, 1.0)];
        let b = [c(1.0, 0.0)];
        assert_eq!(inner(&a, &b), c(0.0, -1.0));
        assert_eq!(inner(&b, &a), c(0.0, 1.0));
    }

    #[test]
    fn reflection_flips_parallel_component_only() {
        let mirror = [c(1.0, 0.0), c(0.0, 0.0)];
        let mut t = [c(0.3, 0.1), c(-0.2, 0.5)];
        reflect_in_place(&mirror, &mut t);
        assert_eq!(t, [c(-0.3, -0.1), c(-0.2, 0.5)]);
    }
}
