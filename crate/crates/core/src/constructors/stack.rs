//! The tripartite stack: `2x + 4y + 2z - 8` orthogonal product states on
//! `C^x (x) C^y (x) C^z`, genuinely nonlocal. The first family is the grid
//! family on (A, B) with C pinned to `|1>`; the second is the grid family on
//! (B, C) under primed bases with A pinned to `|2>`, chosen so the two
//! computational supports are disjoint.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{OrderedBasis, PartyDims, ProductState, StateSet};

use super::compose::{CompositionPlan, PlanBlock, SeedSpec};
use super::grid::build_grid;
use super::ufl::UflUnitary;

fn computational_ket(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// Primed basis on B: transpositions (1,2) and (y-1, y) of the 1-based
/// indices. Needs y >= 4 so the two swaps do not collide.
fn primed_basis_b(y: usize) -> Result<OrderedBasis> {
    OrderedBasis::with_swaps(y, &[(0, 1), (y - 2, y - 1)])
}

/// Primed basis on C: transposition (1,2).
fn primed_basis_c(z: usize) -> Result<OrderedBasis> {
    OrderedBasis::with_swaps(z, &[(0, 1)])
}

fn check_params(x: usize, y: usize, z: usize) -> Result<()> {
    if x < 3 || z < 3 {
        return Err(Error::Domain(format!("tripartite stack needs x, z >= 3 (got {x}, {z})")));
    }
    if y < 4 {
        return Err(Error::Domain(format!(
            "tripartite stack needs y >= 4 (got {y}): at y = 3 the primed-basis transpositions \
             (1,2) and (y-1,y) collide"
        )));
    }
    Ok(())
}

/// The two bipartite seeds of the stack: the (A,B) grid family in the
/// computational bases and the (B,C) grid family in the primed bases.
fn seeds(
    x: usize,
    y: usize,
    z: usize,
    xu: &UflUnitary,
    yu: &UflUnitary,
    zu: &UflUnitary,
) -> Result<(StateSet, StateSet)> {
    let psi_seed = build_grid(
        x,
        y,
        xu,
        yu,
        &OrderedBasis::identity(x),
        &OrderedBasis::identity(y),
    )?;
    let phi_seed = build_grid(y, z, yu, zu, &primed_basis_b(y)?, &primed_basis_c(z)?)?
        .with_label(format!("grid({y},{z}) primed"));
    Ok((psi_seed, phi_seed))
}

/// Build the full `2x + 4y + 2z - 8` state stack in source order: the Psi
/// family followed by the Phi family.
pub fn build_stack(
    x: usize,
    y: usize,
    z: usize,
    xu: &UflUnitary,
    yu: &UflUnitary,
    zu: &UflUnitary,
) -> Result<StateSet> {
    check_params(x, y, z)?;
    let (psi_seed, phi_seed) = seeds(x, y, z, xu, yu, zu)?;

    let mut states = Vec::with_capacity(2 * x + 4 * y + 2 * z - 8);
    for s in psi_seed.states() {
        states.push(ProductState::new(vec![
            s.factor(0).to_vec(),
            s.factor(1).to_vec(),
            computational_ket(z, 0),
        ])?);
    }
    for s in phi_seed.states() {
        states.push(ProductState::new(vec![
            computational_ket(x, 1),
            s.factor(0).to_vec(),
            s.factor(1).to_vec(),
        ])?);
    }

    StateSet::new(
        PartyDims::new(vec![x, y, z])?,
        states,
        format!("stack({x},{y},{z})"),
    )
}

/// The stack as a two-block composition plan, mirroring the proof route:
/// the Psi family lives on parties (1,2) padded with `|1>` on party 3, the
/// Phi family on parties (2,3) padded with `|2>` on party 1. The attached
/// graph (edges {1,2} and {2,3}) is connected.
pub fn stack_plan(
    x: usize,
    y: usize,
    z: usize,
    xu: &UflUnitary,
    yu: &UflUnitary,
    zu: &UflUnitary,
) -> Result<CompositionPlan> {
    check_params(x, y, z)?;
    let (psi_seed, phi_seed) = seeds(x, y, z, xu, yu, zu)?;
    Ok(CompositionPlan {
        dims: PartyDims::new(vec![x, y, z])?,
        blocks: vec![
            PlanBlock {
                parties: vec![0, 1],
                seed: SeedSpec::Set(psi_seed),
                padding: vec![(2, computational_ket(z, 0))],
                attestation: None,
            },
            PlanBlock {
                parties: vec![1, 2],
                seed: SeedSpec::Set(phi_seed),
                padding: vec![(0, computational_ket(x, 1))],
                attestation: None,
            },
        ],
        label: format!("stack({x},{y},{z})"),
    })
}

/// Exact (integer-level) computational support of a slice of product states:
/// the set of index tuples whose amplitude is structurally nonzero.
pub fn computational_support(states: &[ProductState]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for s in states {
        let per_factor: Vec<Vec<usize>> = s
            .factors()
            .iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for indices in &per_factor {
            tuples = tuples
                .iter()
                .flat_map(|t| {
                    indices.iter().map(move |&i| {
                        let mut t2 = t.clone();
                        t2.push(i);
                        t2
                    })
                })
                .collect();
        }
        out.extend(tuples);
    }
    out
}
