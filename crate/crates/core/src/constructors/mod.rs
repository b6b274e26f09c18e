//! State-set generators and composers: validated first/last-row-nonzero
//! unitaries, up/down extensions, the bipartite grid family, the tripartite
//! stack, padding, the star/chain/tri-star patterns, the general graph
//! composer and the synthesizer.

mod compose;
mod extension;
mod grid;
mod stack;
mod synth;
mod ufl;

pub use compose::{
    chain_plan, compose_chain, compose_general, compose_star, compose_tristar, pad, place_blocks,
    read_plan, star_plan, tristar_plan, write_plan, CompositionPlan, PlanBlock, SeedSpec,
};
pub use extension::{down_extension, up_extension};
pub use grid::build_grid;
pub use stack::{build_stack, computational_support, stack_plan};
pub use synth::{synthesize, Synthesis};
pub use ufl::{
    fourier, hadamard2, random_ufl, ufl_check, ufl_check_with, UflUnitary, UnitarySource,
    UFL_FLOOR,
};
