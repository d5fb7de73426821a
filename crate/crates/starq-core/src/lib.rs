//! Exact symbolic engine for deformed products on polynomial algebras.
//!
//! Everything is computed over arbitrary-precision rationals — no floating
//! point, no truncation surprises beyond the explicitly tracked series
//! orders.  The crate is `no_std` (with `alloc`); IO, file formats, and the
//! command-line surface live in the companion `starq` crate.
//!
//! The layers, bottom to top:
//!
//! * [`poly`] — sparse multivariate polynomials with exact rational
//!   coefficients, graded-lex canonical form, parsing and printing;
//! * [`ratfun`], [`series`] — rational functions and truncated power series
//!   over the same substrate;
//! * [`graded`], [`explat`] — two small auxiliary algebras: an exterior
//!   algebra on anticommuting generators and the group algebra of an
//!   exponential lattice; each carries its own deformed product;
//! * [`diffop`], [`cochain`] — differential operators and the multilinear
//!   cochain calculus: cup product, coboundary, insertion compositions,
//!   normal forms with explicit coboundary certificates;
//! * [`star`] — star products built from commuting (or `[D₁,D₂]=D₁`)
//!   derivation data, with associativity-defect cochains and termination
//!   certificates for commutators;
//! * [`poisson`] — bivectors, Jacobi testing, the primary obstruction
//!   equations, quadratic scaling, and the solvable families (reduced
//!   equation, linear series ODE, quasibasic factorization).

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

pub mod cochain;
pub mod diffop;
pub mod error;
pub mod explat;
pub mod graded;
pub mod parse;
pub mod poisson;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod star;

pub use cochain::{Cochain, NormalForm3, SkewForm};
pub use diffop::{Derivation, DiffOp};
pub use error::{Error, Result};
pub use explat::ExpLatticeElement;
pub use graded::GradedElement;
pub use parse::{parse_poly, parse_ratfun};
pub use poisson::{
    basic_bivector, d4_scale_counterexample_search, genode_solve, kks_bivector,
    obs3_lhs, obstruction_coeffs, obstruction_vanishes, poisson_equiv_check,
    quasibasic_factor, reduced_solve_d3, separated_conditions, triple_cochain,
    varphi_scale_check,
    Bivector, D4ScaleSearch, D4ScaleWitness, DiffRing, GenOdeSolution, LieStructure,
    PoissonEquivReport, QuasibasicOutcome, VarphiScaleReport,
};
pub use poly::{MultiIndex, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::Rat;
pub use series::TruncatedSeries;
pub use star::{HbarSeries, StarCommutator, StarKind, StarSeries, Termination};
