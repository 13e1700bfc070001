//! Presentations of `Tor_k(M, N)` for a bimodule `M = R^m / L` and a left
//! module `N` given by a free resolution.
//!
//! `M ⊗ R^{s}` is identified with `R^{ms}` blockwise: `e'_j ⊗ e_i` is component
//! `i*m + j` (both 0-based), so `∂_k` turns into the block matrix `A_k` whose
//! blocks are `g_{iλ} I_m`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::algebra::AlgebraSpec;
use crate::bimodule::{l_power_generators, BimodulePresentation};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, left_syzygies, GroebnerBasis};
use crate::monomial::{ModuleOrder, Monomial};
use crate::par;
use crate::render;
use crate::resolution::{compose, FreeResolution};
use crate::vector::{ModuleVector, PolyMatrix};

/// Component index of `e'_j ⊗ e_i` in `R^{ms}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatIndex {
    pub m: usize,
    pub s: usize,
}

impl FlatIndex {
    pub fn len(&self) -> usize {
        self.m * self.s
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.s && j < self.m);
        i * self.m + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.m, k % self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(u64),
    Infinite,
    NotComputed,
}

/// The left module `⟨numerator⟩ / ⟨denominator⟩` inside `R^ambient`, with the
/// quotient understood as `(U + D) / D`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub ambient: usize,
    /// Reduced modulo the denominator basis; zeros removed.
    pub numerator: Vec<ModuleVector>,
    pub denominator: Vec<ModuleVector>,
    pub is_zero: bool,
    pub dimension: Dimension,
}

impl QuotientPresentation {
    pub fn zero() -> Self {
        QuotientPresentation {
            ambient: 0,
            numerator: Vec::new(),
            denominator: Vec::new(),
            is_zero: true,
            dimension: Dimension::NotComputed,
        }
    }

    fn reduced(
        alg: &AlgebraSpec,
        mo: &ModuleOrder,
        ambient: usize,
        numerator: Vec<ModuleVector>,
        denominator: Vec<ModuleVector>,
    ) -> Result<(Self, GroebnerBasis)> {
        let denominator: Vec<ModuleVector> = denominator.into_iter().filter(|v| !v.is_zero()).collect();
        let gb = groebner_basis(alg, mo, ambient, &denominator)?;
        let numerator: Vec<ModuleVector> =
            par::map(&numerator, |v| gb.reduce(v)).into_iter().filter(|v| !v.is_zero()).collect();
        let is_zero = numerator.is_empty();
        let q = QuotientPresentation { ambient, numerator, denominator, is_zero, dimension: Dimension::NotComputed };
        Ok((q, gb))
    }
}

/// `A_k`: row `i*m + j` carries `g_{iλ}` in column `λ*m + j`.
pub fn build_ak(d: &PolyMatrix, m: usize) -> PolyMatrix {
    let rows_ix = FlatIndex { m, s: d.nrows() };
    let cols_ix = FlatIndex { m, s: d.ncols() };
    let mut rows = Vec::with_capacity(rows_ix.len());
    for k in 0..rows_ix.len() {
        let (i, j) = rows_ix.split(k);
        let mut row = ModuleVector::zero(cols_ix.len());
        for (lambda, g) in d.row(i).entries() {
            row.set(cols_ix.flat(lambda, j), g.clone());
        }
        rows.push(row);
    }
    PolyMatrix::new(cols_ix.len(), rows).expect("ranks agree by construction")
}

/// Generators of `ker(π_{k-1} ∘ A_k)`, with the full syzygies of the stacked
/// matrix they were projected from.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub generators: Vec<ModuleVector>,
    pub stacked_syzygies: Vec<ModuleVector>,
    pub stacked_rows: Vec<ModuleVector>,
}

/// Stacks `A_k` over the generators of `L^{s_{k-1}}`, computes the syzygies and
/// keeps their first `m * s_k` coordinates.
pub fn kernel_mod_l(alg: &AlgebraSpec, mo: &ModuleOrder, ak: &PolyMatrix, basis: &[ModuleVector], m: usize) -> Result<Kernel> {
    let cols = ak.ncols();
    let rows = ak.nrows();
    if rows == 0 {
        return Ok(Kernel { generators: Vec::new(), stacked_syzygies: Vec::new(), stacked_rows: Vec::new() });
    }
    let mut stacked: Vec<ModuleVector> = ak.rows().to_vec();
    stacked.extend(l_power_generators(basis, m, cols / m.max(1)));
    let syz = left_syzygies(alg, mo, cols, &stacked)?;
    let generators = syz.generators.iter().map(|p| p.slice(0, rows)).filter(|v| !v.is_zero()).collect();
    Ok(Kernel { generators, stacked_syzygies: syz.generators, stacked_rows: stacked })
}

/// `Tor_k(M, N)` for `k >= 1` as `ker / (rows of A_{k+1} + L^{s_k})`.
pub fn tor_k(
    alg: &AlgebraSpec,
    mo: &ModuleOrder,
    mp: &BimodulePresentation,
    nres: &FreeResolution,
    k: usize,
) -> Result<QuotientPresentation> {
    assert!(k >= 1, "use tor_zero for k = 0");
    let depth_error = || Error::InsufficientResolutionDepth { k, available: nres.depth(), needed: k + 1 };
    let s_k = nres.rank(k).ok_or_else(depth_error)?;
    if s_k == 0 {
        return Ok(QuotientPresentation::zero());
    }
    let m = mp.ambient;
    let dk = nres.differential(k)?;
    let next = nres.differential(k + 1).map_err(|_| depth_error())?;
    let ak = build_ak(&dk, m);
    let kernel = kernel_mod_l(alg, mo, &ak, &mp.basis, m)?;
    let mut denominator = build_ak(&next, m).into_rows();
    denominator.extend(l_power_generators(&mp.basis, m, s_k));
    Ok(QuotientPresentation::reduced(alg, mo, m * s_k, kernel.generators, denominator)?.0)
}

/// `Tor_0(M, N) = M ⊗ N` as `R^{m s_0} / (rows of A_1 + L^{s_0})`.
pub fn tor_zero(alg: &AlgebraSpec, mo: &ModuleOrder, mp: &BimodulePresentation, nres: &FreeResolution) -> Result<QuotientPresentation> {
    let s0 = nres.rank(0).expect("s_0 is always known");
    let m = mp.ambient;
    let t = m * s0;
    if t == 0 {
        return Ok(QuotientPresentation::zero());
    }
    let numerator = (0..t).map(|i| ModuleVector::unit(t, i, alg.nvars())).collect();
    let mut denominator = build_ak(&nres.differential(1)?, m).into_rows();
    denominator.extend(l_power_generators(&mp.basis, m, s0));
    Ok(QuotientPresentation::reduced(alg, mo, t, numerator, denominator)?.0)
}

/// `A_k · A_{k-1} = 0` under the row convention.
pub fn verify_complex(alg: &AlgebraSpec, ak: &PolyMatrix, ak_prev: &PolyMatrix) -> bool {
    compose(alg, ak, ak_prev).is_ok_and(|p| p.is_zero())
}

/// Number of standard monomials of `R^t / ⟨gb⟩`, or `None` if infinite.
fn standard_monomials(alg: &AlgebraSpec, gb: &GroebnerBasis, t: usize) -> Option<u64> {
    let n = alg.nvars();
    let mut by_pos: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for (pos, mono) in gb.leading_words() {
        by_pos.entry(pos).or_default().push(mono);
    }
    let mut total = 0u64;
    for pos in 0..t {
        let leads = by_pos.get(&pos).map(Vec::as_slice).unwrap_or(&[]);
        if leads.iter().any(Monomial::is_one) {
            continue;
        }
        // a staircase is finite iff every variable has a pure power among the leads
        let mut bounds = vec![u32::MAX; n];
        for l in leads {
            if let Some(v) = l.pure_power_var() {
                bounds[v] = bounds[v].min(l.exponent(v));
            }
        }
        if bounds.contains(&u32::MAX) {
            return None;
        }
        total += count_box(&bounds, leads);
    }
    Some(total)
}

/// Monomials below `bounds` componentwise that no lead divides.
fn count_box(bounds: &[u32], leads: &[Monomial]) -> u64 {
    let mut exps = vec![0u32; bounds.len()];
    let mut count = 0;
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == exps.len() {
                return count;
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

/// `dim_k (U + D) / D` computed as `dim R^t/D - dim R^t/(U + D)`. Reported as
/// infinite whenever `R^t/D` is, even if the difference might be finite.
pub fn dimension_if_finite(alg: &AlgebraSpec, mo: &ModuleOrder, q: &QuotientPresentation) -> Result<Dimension> {
    if q.is_zero {
        return Ok(Dimension::Finite(0));
    }
    let d = groebner_basis(alg, mo, q.ambient, &q.denominator)?;
    let Some(whole) = standard_monomials(alg, &d, q.ambient) else {
        return Ok(Dimension::Infinite);
    };
    let mut sum = q.denominator.clone();
    sum.extend(q.numerator.iter().cloned());
    let ud = groebner_basis(alg, mo, q.ambient, &sum)?;
    let rest = standard_monomials(alg, &ud, q.ambient).expect("a quotient of a finite module is finite");
    Ok(Dimension::Finite(whole - rest))
}

/// Fills in the `dimension` field.
pub fn with_dimension(alg: &AlgebraSpec, mo: &ModuleOrder, mut q: QuotientPresentation) -> Result<QuotientPresentation> {
    q.dimension = dimension_if_finite(alg, mo, &q)?;
    Ok(q)
}

/// Canonical text form of a presentation.
pub fn render_presentation(q: &QuotientPresentation, names: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "ambient: {}", q.ambient).unwrap();
    writeln!(out, "numerator:").unwrap();
    for v in &q.numerator {
        writeln!(out, "  {}", render::vector(v, names)).unwrap();
    }
    writeln!(out, "denominator:").unwrap();
    for v in &q.denominator {
        writeln!(out, "  {}", render::vector(v, names)).unwrap();
    }
    writeln!(out, "zero: {}", q.is_zero).unwrap();
    match q.dimension {
        Dimension::Finite(d) => writeln!(out, "dimension: {d}").unwrap(),
        Dimension::Infinite => writeln!(out, "dimension: infinite").unwrap(),
        Dimension::NotComputed => {}
    }
    out
}
