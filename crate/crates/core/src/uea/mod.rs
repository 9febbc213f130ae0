//! Exact computations in the enveloping algebra at fixed fractional level:
//! PBW normal ordering, Verma and quotient weight spaces, Sugawara `L_0`,
//! singular vector search, the explicit singular-vector products, and the
//! staggered-module coupling solver.

mod element;
mod singular;
mod staggered;
mod verma;

pub use element::{
    commutator, j3, jm, jp, straighten, word_charge, word_grade, GenKind, Generator, UeaElement,
    Word,
};
pub use singular::{
    decompose_raising, find_singular, fuchs_astashkevich_leading, mff_vector, FaLeading,
    MffVector,
};
pub use staggered::{
    displayed_grade_four_singular, displayed_grade_two_singular, element_from_vector,
    example_from_descriptor, example_i, example_ii, five_term_singular,
    staggered_solve, verify_off_relation, StaggeredExample, StaggeredSolution,
    StaggeredSolveError,
};
pub use verma::{weight_space_basis, HwModule, WeightVector};
