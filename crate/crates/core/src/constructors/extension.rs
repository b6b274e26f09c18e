//! Up and down extensions of a U_FL(n-1) unitary into an n-dimensional
//! operator with respect to an ordered basis: the unitary occupies the
//! top-left (up) or bottom-right (down) block in the logical ordering, zero
//! elsewhere, expressed here in computational coordinates.

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::states::OrderedBasis;

use super::ufl::UflUnitary;

fn extension(h: &UflUnitary, basis: &OrderedBasis, shift: usize) -> Result<ComplexMatrix> {
    let n = basis.dim();
    if h.n() + 1 != n {
        return Err(Error::Shape(format!(
            "extension of a U_FL({}) member needs an ordered basis of dim {}, got {n}",
            h.n(),
            h.n() + 1
        )));
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..h.n() {
        for k in 0..h.n() {
            out.set(basis.map(j + shift), basis.map(k + shift), h.matrix().get(j, k));
        }
    }
    Ok(out)
}

/// Top-left block embedding; annihilates the last logical basis vector.
pub fn up_extension(h: &UflUnitary, basis: &OrderedBasis) -> Result<ComplexMatrix> {
    extension(h, basis, 0)
}

/// Bottom-right block embedding; annihilates the first logical basis vector.
pub fn down_extension(h: &UflUnitary, basis: &OrderedBasis) -> Result<ComplexMatrix> {
    extension(h, basis, 1)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::constructors::ufl::{hadamard2, random_ufl};
    use crate::numerics::RealLinearSystem;

    fn h2() -> UflUnitary {
        UflUnitary::new(hadamard2()).unwrap()
    }

    #[test]
    fn up_extension_identity_basis() {
        let out = up_extension(&h2(), &OrderedBasis::identity(3)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [
            [s, s, 0.0],
            [s, -s, 0.0],
            [0.0, 0.0, 0.0],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!((out.get(r, c) - Complex64::new(expect[r][c], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn down_extension_identity_basis() {
        let out = down_extension(&h2(), &OrderedBasis::identity(3)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [
            [0.0, 0.0, 0.0],
            [0.0, s, s],
            [0.0, s, -s],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!((out.get(r, c) - Complex64::new(expect[r][c], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn extensions_annihilate_edge_kets() {
        let up = up_extension(&h2(), &OrderedBasis::identity(3)).unwrap();
        let down = down_extension(&h2(), &OrderedBasis::identity(3)).unwrap();
        // up kills |3>, down kills |1> (1-based logical kets).
        for r in 0..3 {
            assert_eq!(up.get(r, 2), Complex64::new(0.0, 0.0));
            assert_eq!(down.get(r, 0), Complex64::new(0.0, 0.0));
        }
    }

    fn complex_rank(m: &ComplexMatrix) -> usize {
        // Real embedding doubles the rank of a complex matrix.
        let mut sys = RealLinearSystem::new(2 * m.cols()).unwrap();
        for r in 0..m.rows() {
            let mut re_row = Vec::with_capacity(2 * m.cols());
            let mut im_row = Vec::with_capacity(2 * m.cols());
            for c in 0..m.cols() {
                let z = m.get(r, c);
                re_row.extend_from_slice(&[z.re, -z.im]);
                im_row.extend_from_slice(&[z.im, z.re]);
            }
            sys.push_row(&re_row).unwrap();
            sys.push_row(&im_row).unwrap();
        }
        crate::numerics::rank(&sys, 1e-9) / 2
    }

    #[test]
    fn extensions_are_rank_deficient_partial_isometries() {
        for n in 3..=5usize {
            let h = random_ufl(n - 1, n as u64).unwrap();
            let basis = OrderedBasis::identity(n);
            let up = up_extension(&h, &basis).unwrap();
            let down = down_extension(&h, &basis).unwrap();
            assert_eq!(complex_rank(&up), n - 1);
            assert_eq!(complex_rank(&down), n - 1);
            // up * down^dagger drops both edge directions.
            let prod = up.mul(&down.dagger()).unwrap();
            assert!(complex_rank(&prod) <= n - 2);
        }
    }

    #[test]
    fn extension_respects_permuted_basis() {
        let basis = OrderedBasis::with_swaps(3, &[(0, 1)]).unwrap();
        let out = up_extension(&h2(), &basis).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Logical (1,1) entry lands at computational (2,2) under the swap.
        assert!((out.get(1, 1) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((out.get(0, 0) - Complex64::new(-s, 0.0)).norm() < 1e-15);
        assert_eq!(out.get(2, 2), Complex64::new(0.0, 0.0));
    }
}
