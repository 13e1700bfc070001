//! Presentations `0 -> L -> R^m -> M -> 0` of bimodules, with a two-sided
//! Gröbner basis of `L`.

use crate::algebra::{AlgebraSpec, EnvAlgebra};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::monomial::ModuleOrder;
use crate::par;
use crate::render;
use crate::vector::ModuleVector;

/// `x_i * w - w * x_i` for each variable.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralizerWitness {
    pub commutators: Vec<ModuleVector>,
}

impl CentralizerWitness {
    pub fn is_central(&self) -> bool {
        self.commutators.iter().all(ModuleVector::is_zero)
    }

    /// Index of the first variable that does not commute with the element.
    pub fn first_failure(&self) -> Option<usize> {
        self.commutators.iter().position(|c| !c.is_zero())
    }
}

pub fn is_central(alg: &AlgebraSpec, w: &ModuleVector) -> CentralizerWitness {
    let commutators = (0..alg.nvars())
        .map(|i| {
            let x = alg.var(i);
            alg.mul_vec(&x, w).sub(&alg.right_multiply(w, &x), alg.order())
        })
        .collect();
    CentralizerWitness { commutators }
}

/// Which construction produced the two-sided basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Left Gröbner basis of central generators.
    Central,
    Enveloping,
    Closure,
}

#[derive(Clone, Debug)]
pub struct BimodulePresentation {
    pub ambient: usize,
    pub generators: Vec<ModuleVector>,
    /// Reduced left Gröbner basis of `L` that is closed under right reduction.
    pub basis: Vec<ModuleVector>,
    pub centralizing: bool,
    pub route: Route,
}

impl BimodulePresentation {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Rank check, plus the centralizing claim when one is made.
fn check(alg: &AlgebraSpec, m: usize, gens: &[ModuleVector], centralizing: bool) -> Result<()> {
    gens.iter().try_for_each(|g| g.check_rank(m))?;
    if !centralizing {
        return Ok(());
    }
    for g in gens {
        let w = is_central(alg, g);
        if let Some(i) = w.first_failure() {
            return Err(Error::NotCentral {
                generator: render::vector(g, alg.names()),
                variable: alg.names()[i].clone(),
                commutator: render::vector(&w.commutators[i], alg.names()),
            });
        }
    }
    Ok(())
}

/// Checks that every generator lies in `R H` and that `h * x_i` reduces to zero
/// for every `h` and every variable.
pub fn verify_two_sided(gb: &GroebnerBasis, gens: &[ModuleVector]) -> Result<()> {
    let alg = &gb.algebra;
    if let Some(g) = gens.iter().find(|g| !gb.contains(g)) {
        return Err(Error::TwoSidednessFailure(format!(
            "generator {} does not reduce to zero",
            render::vector(g, alg.names())
        )));
    }
    let checks: Vec<(usize, usize)> =
        (0..gb.len()).flat_map(|k| (0..alg.nvars()).map(move |i| (k, i))).collect();
    let failures = par::map(&checks, |&(k, i)| {
        let prod = alg.right_multiply(&gb.elements()[k], &alg.var(i));
        (!gb.reduce(&prod).is_zero()).then_some((k, i))
    });
    if let Some((k, i)) = failures.into_iter().flatten().next() {
        return Err(Error::TwoSidednessFailure(format!(
            "{} * {} does not reduce to zero",
            render::vector(&gb.elements()[k], alg.names()),
            alg.names()[i]
        )));
    }
    Ok(())
}

/// Generators of the preimage of `L` under the multiplication map `(R^env)^m -> R^m`.
pub fn enveloping_generators(env: &EnvAlgebra, m: usize, gens: &[ModuleVector]) -> Vec<ModuleVector> {
    let mut out: Vec<ModuleVector> = gens.iter().map(|g| env.env_lift(g)).collect();
    for j in 0..m {
        for i in 0..env.n() {
            out.push(ModuleVector::single(m, j, env.kernel_generator(i)));
        }
    }
    out
}

/// Two-sided basis through a left Gröbner basis over `R ⊗ R^op`, projected by
/// the multiplication map. The projection is completed to a reduced left basis
/// and then checked for two-sidedness.
pub fn two_sided_gb_enveloping(
    alg: &AlgebraSpec,
    mo: &ModuleOrder,
    env: &EnvAlgebra,
    m: usize,
    gens: &[ModuleVector],
    centralizing: bool,
) -> Result<BimodulePresentation> {
    check(alg, m, gens, centralizing)?;
    let env_mo = ModuleOrder { base: env.env.order().clone(), scheme: mo.scheme };
    let lifted = enveloping_generators(env, m, gens);
    let g = groebner_basis(&env.env, &env_mo, m, &lifted)?;
    let projected: Vec<ModuleVector> =
        par::map(g.elements(), |v| env.env_project(v)).into_iter().filter(|v| !v.is_zero()).collect();
    let h = groebner_basis(alg, mo, m, &projected)?;
    verify_two_sided(&h, gens)?;
    Ok(BimodulePresentation {
        ambient: m,
        generators: gens.to_vec(),
        basis: h.elements().to_vec(),
        centralizing,
        route: Route::Enveloping,
    })
}

/// Two-sided basis by repeatedly adjoining nonzero normal forms of `g * x_i`.
pub fn two_sided_gb_closure(
    alg: &AlgebraSpec,
    mo: &ModuleOrder,
    m: usize,
    gens: &[ModuleVector],
    centralizing: bool,
) -> Result<BimodulePresentation> {
    check(alg, m, gens, centralizing)?;
    let mut current = groebner_basis(alg, mo, m, gens)?;
    loop {
        let checks: Vec<(usize, usize)> =
            (0..current.len()).flat_map(|k| (0..alg.nvars()).map(move |i| (k, i))).collect();
        let extra: Vec<ModuleVector> = par::map(&checks, |&(k, i)| {
            current.reduce(&alg.right_multiply(&current.elements()[k], &alg.var(i)))
        })
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect();
        if extra.is_empty() {
            break;
        }
        let mut next = current.elements().to_vec();
        next.extend(extra);
        current = groebner_basis(alg, mo, m, &next)?;
    }
    verify_two_sided(&current, gens)?;
    Ok(BimodulePresentation {
        ambient: m,
        generators: gens.to_vec(),
        basis: current.elements().to_vec(),
        centralizing,
        route: Route::Closure,
    })
}

/// Picks a route: central generators need only a left basis; otherwise the
/// enveloping construction is used.
pub fn two_sided_basis(
    alg: &AlgebraSpec,
    mo: &ModuleOrder,
    m: usize,
    gens: &[ModuleVector],
    centralizing: bool,
) -> Result<BimodulePresentation> {
    check(alg, m, gens, centralizing)?;
    if gens.iter().all(|g| is_central(alg, g).is_central()) {
        let gb = groebner_basis(alg, mo, m, gens)?;
        verify_two_sided(&gb, gens)?;
        return Ok(BimodulePresentation {
            ambient: m,
            generators: gens.to_vec(),
            basis: gb.elements().to_vec(),
            centralizing,
            route: Route::Central,
        });
    }
    let env = crate::algebra::enveloping(alg)?;
    two_sided_gb_enveloping(alg, mo, &env, m, gens, centralizing)
}

/// Generators of `L^s ⊆ R^{ms}`: each basis element placed in each block, the
/// block `i` copy occupying components `i*m .. i*m + m`.
pub fn l_power_generators(basis: &[ModuleVector], m: usize, s: usize) -> Vec<ModuleVector> {
    basis
        .iter()
        .flat_map(|h| (0..s).map(move |i| h.placed(m * s, i * m)))
        .collect()
}
