//! Polymatroid functions, subset lattices and the exact LP feasibility prover.

pub mod lattice;
pub mod lp;
pub mod polyfn;
pub mod seeds;
pub mod simplex;

pub use lattice::{build_family, build_lattice, rectangle_factors, SubsetLattice, DEFAULT_LATTICE_CAP};
pub use polyfn::{
    enumerate_integer_polymatroids, helgason_lift, quotient, HelgasonLift, PolymatroidFn, SetFunction,
    MAX_POLY_GROUND,
};
pub use lp::{lp_chain_feasible, lp_tensor_feasible, render_farkas, verify_farkas, FarkasRow, LpOutcome, RowKind, Side};
