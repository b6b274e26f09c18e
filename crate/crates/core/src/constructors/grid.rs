//! The bipartite grid family: `2(x+y) - 4` orthogonal product states on
//! `C^x (x) C^y` whose span is the boundary of the x-by-y grid and whose
//! every orthogonality-preserving first-round measurement is trivial.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{OrderedBasis, PartyDims, ProductState, StateSet};

use super::extension::{down_extension, up_extension};
use super::ufl::UflUnitary;

/// Logical basis ket as a computational vector.
fn logical_ket(basis: &OrderedBasis, logical: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); basis.dim()];
    v[basis.map(logical)] = Complex64::new(1.0, 0.0);
    v
}

/// Column of `op` applied to the logical basis ket, renormalized.
fn applied_column(op: &ComplexMatrix, basis: &OrderedBasis, logical: usize) -> Vec<Complex64> {
    let mut col = op.col_vec(basis.map(logical));
    let norm = crate::states::vec_norm(&col);
    for z in col.iter_mut() {
        *z /= norm;
    }
    col
}

/// Build the `2(x+y) - 4` state family in the source order:
/// four runs indexed `i = 1..y-1`, `j = 1..x-1`, `k = 2..y`, `l = 2..x`.
pub fn build_grid(
    x: usize,
    y: usize,
    xu: &UflUnitary,
    yu: &UflUnitary,
    basis_a: &OrderedBasis,
    basis_b: &OrderedBasis,
) -> Result<StateSet> {
    if x < 3 || y < 3 {
        return Err(Error::Domain(format!(
            "grid family needs x, y >= 3 (got {x}, {y}): no orthogonal product set on a \
             dimension-2 party can be nonlocal"
        )));
    }
    if xu.n() + 1 != x || yu.n() + 1 != y {
        return Err(Error::Shape(format!(
            "unitary sizes ({}, {}) do not match (x-1, y-1) = ({}, {})",
            xu.n(),
            yu.n(),
            x - 1,
            y - 1
        )));
    }
    if basis_a.dim() != x || basis_b.dim() != y {
        return Err(Error::Shape("ordered basis dims do not match (x, y)".into()));
    }

    let xu_up = up_extension(xu, basis_a)?;
    let xu_down = down_extension(xu, basis_a)?;
    let yu_up = up_extension(yu, basis_b)?;
    let yu_down = down_extension(yu, basis_b)?;

    let mut states = Vec::with_capacity(2 * (x + y) - 4);
    // |1>_A (x) Y_up |i>_B, i = 1..y-1 (1-based logical indices).
    for i in 0..(y - 1) {
        states.push(ProductState::new(vec![
            logical_ket(basis_a, 0),
            applied_column(&yu_up, basis_b, i),
        ])?);
    }
    // X_up |j>_A (x) |y>_B, j = 1..x-1.
    for j in 0..(x - 1) {
        states.push(ProductState::new(vec![
            applied_column(&xu_up, basis_a, j),
            logical_ket(basis_b, y - 1),
        ])?);
    }
    // |x>_A (x) Y_down |k>_B, k = 2..y.
    for k in 1..y {
        states.push(ProductState::new(vec![
            logical_ket(basis_a, x - 1),
            applied_column(&yu_down, basis_b, k),
        ])?);
    }
    // X_down |l>_A (x) |1>_B, l = 2..x.
    for l in 1..x {
        states.push(ProductState::new(vec![
            applied_column(&xu_down, basis_a, l),
            logical_ket(basis_b, 0),
        ])?);
    }

    StateSet::new(
        PartyDims::new(vec![x, y])?,
        states,
        format!("grid({x},{y})"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::ufl::{fourier, hadamard2, random_ufl, UflUnitary};
    use crate::states::inner_product;

    fn h2() -> UflUnitary {
        UflUnitary::new(hadamard2()).unwrap()
    }

    fn build(x: usize, y: usize) -> StateSet {
        let xu = if x == 3 { h2() } else { UflUnitary::new(fourier(x - 1)).unwrap() };
        let yu = if y == 3 { h2() } else { UflUnitary::new(fourier(y - 1)).unwrap() };
        build_grid(x, y, &xu, &yu, &OrderedBasis::identity(x), &OrderedBasis::identity(y))
            .unwrap()
    }

    #[test]
    fn grid_3_3_matches_hand_instance() {
        let set = build(3, 3);
        assert_eq!(set.len(), 8);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // psi_1 = |1> (x) (|1>+|2>)/sqrt2
        let psi1 = &set.states()[0];
        assert!((psi1.factor(0)[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((psi1.factor(1)[0] - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((psi1.factor(1)[1] - Complex64::new(s, 0.0)).norm() < 1e-15);
        // psi_5 = |3> (x) (|2>+|3>)/sqrt2
        let psi5 = &set.states()[4];
        assert!((psi5.factor(0)[2] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((psi5.factor(1)[1] - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((psi5.factor(1)[2] - Complex64::new(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn count_matches_formula() {
        for x in 3..=6 {
            for y in 3..=6 {
                assert_eq!(build(x, y).len(), 2 * (x + y) - 4);
            }
        }
        assert_eq!(build(5, 9).len(), 24);
    }

    #[test]
    fn rejects_dimension_two_party() {
        let xu = h2();
        let yu = UflUnitary::new(fourier(4)).unwrap();
        let err = build_grid(
            2,
            5,
            &xu,
            &yu,
            &OrderedBasis::identity(2),
            &OrderedBasis::identity(5),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn pairwise_orthogonal() {
        for (x, y) in [(3, 3), (3, 4), (4, 5)] {
            let set = build(x, y);
            for i in 0..set.len() {
                for j in (i + 1)..set.len() {
                    let ip = inner_product(&set.states()[i], &set.states()[j]).unwrap();
                    assert!(ip.norm() <= 1e-12, "states {i},{j} overlap {}", ip.norm());
                }
            }
        }
    }

    #[test]
    fn pairwise_orthogonal_random_unitaries() {
        for seed in 0..3 {
            let xu = random_ufl(3, seed).unwrap();
            let yu = random_ufl(4, seed + 100).unwrap();
            let set = build_grid(
                4,
                5,
                &xu,
                &yu,
                &OrderedBasis::identity(4),
                &OrderedBasis::identity(5),
            )
            .unwrap();
            assert_eq!(set.len(), 14);
            for i in 0..set.len() {
                for j in (i + 1)..set.len() {
                    let ip = inner_product(&set.states()[i], &set.states()[j]).unwrap();
                    assert!(ip.norm() <= 1e-12);
                }
            }
        }
    }
}
