//! Standard algebras used throughout the tests, benches and docs.

use crate::algebra::{AlgebraSpec, RelationSpec};
use crate::monomial::{Monomial, OrderSpec};
use crate::poly::{int, rat, Polynomial, Term};

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

/// `k[vars]` with the degree-lexicographic order.
pub fn commutative(vars: &[&str]) -> AlgebraSpec {
    AlgebraSpec::commutative(names(vars), OrderSpec::deglex(vars.len())).expect("commutative algebra is valid")
}

/// `U(sl2)` on `x, y, z` with `yx = xy - z`, `zx = xz + 2x`, `zy = yz - 2y`
/// and weights `(1, 2, 2)`.
pub fn sl2() -> AlgebraSpec {
    let n = 3;
    let specs = vec![
        RelationSpec { j: 1, i: 0, coeff: int(1), tail: Polynomial::var(n, 2).neg() },
        RelationSpec { j: 2, i: 0, coeff: int(1), tail: Polynomial::var(n, 0).scale(&int(2)) },
        RelationSpec { j: 2, i: 1, coeff: int(1), tail: Polynomial::var(n, 1).scale(&int(-2)) },
    ];
    let order = OrderSpec::weighted(vec![1, 2, 2]).expect("positive weights");
    AlgebraSpec::construct(names(&["x", "y", "z"]), specs, order).expect("U(sl2) is a PBW algebra")
}

/// The Casimir element `z^2/2 + 2xy - z` of [`sl2`].
pub fn casimir(alg: &AlgebraSpec) -> Polynomial {
    let t = |c, e: &[u32]| Term { coeff: c, mono: Monomial::from_exponents(e) };
    Polynomial::from_terms([t(rat(1, 2), &[0, 0, 2]), t(int(2), &[1, 1, 0]), t(int(-1), &[0, 0, 1])], alg.order())
}

/// The first Weyl algebra on `x, d` with `dx = xd + 1`.
pub fn weyl1() -> AlgebraSpec {
    let specs = vec![RelationSpec { j: 1, i: 0, coeff: int(1), tail: Polynomial::one(2) }];
    AlgebraSpec::construct(names(&["x", "d"]), specs, OrderSpec::deglex(2)).expect("Weyl algebra is valid")
}

/// The quantum plane `yx = q xy`.
pub fn quantum_plane(q: i64) -> AlgebraSpec {
    let specs = vec![RelationSpec { j: 1, i: 0, coeff: int(q), tail: Polynomial::zero() }];
    AlgebraSpec::construct(names(&["x", "y"]), specs, OrderSpec::deglex(2)).expect("quantum plane is valid")
}
