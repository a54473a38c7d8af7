//! Construction, search, and verification of cocyclic Hadamard matrices.
//!
//! A binary cocycle over a finite group of order `n` can be written as an
//! `n x n` matrix of signs; when every row except the first sums to zero,
//! that matrix is Hadamard. This crate builds the two classical infinite
//! families over groups of order `4t` — the abelian Z_t x Z_2 x Z_2 case
//! and the dihedral case — and provides:
//!
//! - group tables with law checking, plus a text format for custom tables;
//! - elementary and generalized coboundary matrices and a GF(2) solver
//!   that enumerates the full normalized cocycle space of small groups;
//! - per-family coboundary bases with their reduced row-sum equation
//!   systems over 0/1 coordinates;
//! - a pruned depth-first search over those coordinates, with optional
//!   structural filters, fixed-variable masks, and parallel subtree
//!   splitting that keeps output order deterministic;
//! - polynomial ideal export (full and reduced systems) for external
//!   computer-algebra systems, in a plain line format and in SINGULAR
//!   syntax;
//! - embedded tables of known solutions with verification helpers.
//!
//! Matrix entries are `+1`/`-1` stored as bits; group elements and
//! coboundary subscripts are 1-based everywhere on the public surface.

pub mod basis;
pub mod cocycle;
pub mod error;
pub mod group;
pub mod hadamard;
pub mod ideal;
pub mod matrix;
pub mod search;
pub mod system;
pub mod tables;

pub use basis::{chi, family_basis, j_index, BasisDescriptor};
pub use cocycle::{
    cocycle_space_basis, elementary_coboundary, enumerate_hadamard_cocycles,
    generalized_coboundary, is_cocycle, CocycleVector, EnumerateOptions, EnumerationResult,
};
pub use error::{Error, Result};
pub use group::{make_group, parse_group_table, render_group_table, Family, GroupKind, GroupTable};
pub use hadamard::{
    diagram_of, is_hadamard, restricted_symmetric, row_sum_test, symmetric_closure, Diagram,
};
pub use ideal::{emit_ig, emit_jg, eval_generators, parse_plain, render, Poly, PolynomialText, Syntax};
pub use matrix::SignMatrix;
pub use search::{
    search, verify_support, FixMask, FixState, SearchFilters, SearchOptions, SearchStats,
    SolutionSet,
};
pub use system::{
    assemble_matrix, build_system, eval_system, AssembleMode, CoordinateVector, MonomialSystem,
    Term,
};
pub use tables::{table2, table3, verify_row, TableRow};
