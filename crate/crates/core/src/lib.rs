//! Exact computation of quantum traces of curves on ideally triangulated
//! punctured surfaces, Chebyshev threading, the Frobenius homomorphism, and
//! mechanical verification of the cancellation and compatibility identities
//! that hold at roots of unity.
//!
//! Everything is exact: coefficients live in the rational function field
//! Q(w) or in a cyclotomic field, and every identity check is an equality
//! of canonical forms with zero tolerance.

pub mod cheb;
pub mod jw;
pub mod scalar;
pub mod statesum;
pub mod suite;
pub mod surface;
pub mod thread;
pub mod torus;

pub use cheb::{
    cheb_poly, quantum_binom, quantum_factorial, quantum_int, ChebKind, IntPolynomial, QIntKind,
    SignState,
};
pub use scalar::{
    choose_modulus, parse_scalar, scalar_arith, ArithOp, Scalar, ScalarContext, ScalarError,
};
pub use statesum::{trace_embedded, trace_simple, StateSumError};
pub use surface::{fixture, CurveDiagram, SurfaceError, Triangulation};
pub use thread::{thread_s, thread_t_embedded, thread_t_root, ThreadError, ThreadReport};
pub use torus::{
    frobenius, parse_element, torus_context, SigmaMatrix, TorusContext, TorusElement, TorusError,
};
