//! Shared helpers for the integration suites: an independent dense
//! brute-force solver for the orthogonality-preserving-measurement space,
//! and state-set generators.
#![allow(dead_code)]

use num_complex::Complex64;

use nonlocal_core::constructors::{build_grid, hadamard2, UflUnitary};
use nonlocal_core::numerics::{kron, kron_vec, null_space, vec_to_herm, ComplexMatrix, RealLinearSystem};
use nonlocal_core::states::{vec_inner, OrderedBasis, PartyDims, ProductState, StateSet};

/// Dense oracle: assemble full global vectors (side parties first) and solve
/// `<psi_i| (M (x) I) |psi_j> = 0` for every pair directly, parameterizing
/// Hermitian `M` over the standard real basis. Independent of the factored
/// per-pair constraint construction in the library.
pub fn dense_opm_dim(set: &StateSet, side: &[usize], tol: f64) -> usize {
    let party_count = set.dims().len();
    let mut side_sorted = side.to_vec();
    side_sorted.sort_unstable();
    let complement: Vec<usize> =
        (0..party_count).filter(|p| !side_sorted.contains(p)).collect();
    let ds: usize = side_sorted.iter().map(|&p| set.dims().dims()[p]).product();
    let dc: usize = complement.iter().map(|&p| set.dims().dims()[p]).product();

    let globals: Vec<Vec<Complex64>> = set
        .states()
        .iter()
        .map(|s| kron_vec(&s.assemble_parties(&side_sorted), &s.assemble_parties(&complement)))
        .collect();

    let n_params = ds * ds;
    let operators: Vec<ComplexMatrix> = (0..n_params)
        .map(|k| {
            let mut e = vec![0.0; n_params];
            e[k] = 1.0;
            kron(&vec_to_herm(&e, ds).unwrap(), &ComplexMatrix::identity(dc))
        })
        .collect();

    let mut sys = RealLinearSystem::new(n_params).unwrap();
    for i in 0..globals.len() {
        for j in (i + 1)..globals.len() {
            let mut re_row = Vec::with_capacity(n_params);
            let mut im_row = Vec::with_capacity(n_params);
            for op in &operators {
                let image = op.mul(&ComplexMatrix::column(&globals[j]).unwrap()).unwrap();
                let z = vec_inner(&globals[i], &image.col_vec(0));
                re_row.push(z.re);
                im_row.push(z.im);
            }
            sys.push_row(&re_row).unwrap();
            sys.push_row(&im_row).unwrap();
        }
    }
    null_space(&sys, tol).len()
}

/// The 8-state bipartite family on two qutrits, Hadamard-driven.
pub fn qutrit_grid() -> StateSet {
    let h = UflUnitary::new(hadamard2()).unwrap();
    build_grid(3, 3, &h, &h, &OrderedBasis::identity(3), &OrderedBasis::identity(3)).unwrap()
}

/// A product state with the given (unnormalized, nonzero) factor entries.
pub fn product_state(factors: Vec<Vec<Complex64>>) -> ProductState {
    let normalized = factors
        .into_iter()
        .map(|f| {
            let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            f.into_iter().map(|z| z / norm).collect()
        })
        .collect();
    ProductState::new(normalized).unwrap()
}

/// A state set over `dims` from raw factor data.
pub fn state_set(dims: Vec<usize>, states: Vec<ProductState>, label: &str) -> StateSet {
    StateSet::new(PartyDims::new(dims).unwrap(), states, label).unwrap()
}
