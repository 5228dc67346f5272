//! Canonical forms of commuting nilpotent matrix pairs of size at most 4
//! under simultaneous similarity, with exact arithmetic over ℚ, GF(p) and
//! GF(p²).

pub mod canon;
pub mod checks;
pub mod commutant;
pub mod decompose;
pub mod document;
pub mod error;
pub mod field;
pub mod jordan;
pub mod matrix;
pub mod oracle;
pub mod pair;
pub mod poly;
pub mod sample;

pub use canon::{
    build_canonical, canonicalize, canonicalize_with, normalize_block_order, similar, BlockLabel,
    CanonForm, CanonOptions, Canonical, DecomposeHint, IndecBlock, Reduction,
};
pub use commutant::{
    case_coordinates, commutant, nilc_contains, pair_commutant, stab_contains, CaseCoordinates,
    StabParams,
};
pub use decompose::{fitting_split, is_indecomposable, IndecCertificate, Method, Verdict};
pub use document::PairDocument;
pub use error::{Error, NotSplit, Result};
pub use field::{quadratic_roots, FieldScalar, FieldSpec, QuadRoots};
pub use jordan::{jnf_2x2, nilpotent_jnf, Form2, JordanType, Jnf2};
pub use matrix::{conjugate, mat_add, mat_mul, mat_scale, solve_matrix_equations, LinSpace, LinearConstraint, SqMatrix};
pub use oracle::{crosscheck, exhaustively_checked, orbit_partition, CrosscheckOptions, CrosscheckReport};
pub use pair::MatrixPair;
pub use poly::Poly;
