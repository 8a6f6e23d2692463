//! Exact commutative algebra for 2x2 permanental ideals of generic
//! matrices: Groebner bases, normal forms, ideal operations, the
//! associated-prime structure, and a scripted verification suite.

pub mod certify;
pub mod claimed;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod primes;
pub mod vars;
pub mod verify;

pub use certify::{closure_witness, quad_certificate, triple_certificate, Certificate, ClosureWitness};
pub use claimed::{
    basis_count, claimed_basis, claimed_radical_basis, polynomials, radical_basis_count,
    radical_generators, radical_ideal, BasisElement, BasisElementKind,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use groebner::{
    buchberger, is_groebner_basis, normal_form, reduce_with_cofactors, s_polynomial, Budget,
    BuchbergerOptions, GbReport,
};
pub use ideal::{eliminate, Ideal};
pub use matrix::{permanental_ideal, GenericMatrix};
pub use monomial::Monomial;
pub use order::{DiagBase, TermOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use primes::{
    block_pair_family, component_count, gap_length_formula, is_parameter_support,
    linear_form_in_prime, minimal_primes, minimum_parameter_support,
    parameter_support_lower_bound, permanent_quadric_rank, q_component,
    sum_intersection_identity, unmixed_part, MinimalPrime, PrimeKind,
};
pub use vars::{Ambient, Shape, VarRef};
pub use verify::{run_suite, CheckResult, CheckStatus, Report, ReportJson, SuiteOptions};
