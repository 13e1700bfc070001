//! Exact computations over PBW algebras with rational coefficients: left
//! Gröbner bases and syzygies of submodules of `R^s`, free resolutions,
//! two-sided Gröbner bases of subbimodules, and finite presentations of
//! `Tor_k(M, N)`.

pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod par;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod render;
pub mod resolution;
pub mod tor;
pub mod vector;

pub use algebra::{enveloping, AlgebraSpec, EnvAlgebra, Relation, RelationSpec};
pub use error::{Error, Result};
pub use groebner::{left_groebner_basis, left_syzygies, normal_form, DivisionRecord, GroebnerBasis, SyzygyBasis};
pub use monomial::{ModuleOrder, ModuleScheme, Monomial, OrderSpec};
pub use poly::{Polynomial, Rational, Term};
pub use vector::{ModuleVector, PolyMatrix};
