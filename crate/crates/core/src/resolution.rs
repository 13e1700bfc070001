//! Free resolutions of finitely generated left modules by iterated syzygies.

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::groebner::left_syzygies;
use crate::monomial::ModuleOrder;
use crate::vector::{ModuleVector, PolyMatrix};

/// How the listed vectors describe `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PresentationForm {
    /// `N` is the submodule of `R^ambient` generated by the vectors; `∂₀` sends
    /// `e_i` to the `i`-th vector, so `s₀` is the number of vectors.
    #[default]
    Generators,
    /// `N = R^ambient / B` with `B` generated by the vectors; `s₀ = ambient`.
    Cokernel,
}

#[derive(Clone, Debug)]
pub struct LeftPresentation {
    pub form: PresentationForm,
    pub ambient: usize,
    pub vectors: Vec<ModuleVector>,
}

impl LeftPresentation {
    pub fn new(form: PresentationForm, ambient: usize, vectors: Vec<ModuleVector>) -> Result<Self> {
        for v in &vectors {
            v.check_rank(ambient)?;
        }
        Ok(LeftPresentation { form, ambient, vectors })
    }

    pub fn generators(ambient: usize, vectors: Vec<ModuleVector>) -> Result<Self> {
        Self::new(PresentationForm::Generators, ambient, vectors)
    }

    pub fn cokernel(ambient: usize, vectors: Vec<ModuleVector>) -> Result<Self> {
        Self::new(PresentationForm::Cokernel, ambient, vectors)
    }
}

/// `0 <- N <- R^{s_0} <- R^{s_1} <- ...` with `∂_k` of shape `s_k × s_{k-1}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub form: PresentationForm,
    /// Rows of `∂₀` in generator form; empty in cokernel form.
    pub cover: Vec<ModuleVector>,
    /// Cokernel form: original indices of the relation rows kept in `∂₁`.
    pub kept_relations: Vec<usize>,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
    complete: bool,
}

impl FreeResolution {
    /// `∂₁..∂_K` as computed.
    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Computed depth `K`.
    pub fn depth(&self) -> usize {
        self.differentials.len()
    }

    /// Whether a zero syzygy module was reached, so all later `∂` vanish.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of nonzero free modules; `None` while the resolution is open.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.ranks.iter().take_while(|&&s| s > 0).count())
    }

    /// `s_k`, known for `k <= depth` or for any `k` once complete.
    pub fn rank(&self, k: usize) -> Option<usize> {
        match self.ranks.get(k) {
            Some(&s) => Some(s),
            None if self.complete => Some(0),
            None => None,
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_k` for `k >= 1`; beyond a complete resolution this is the empty map.
    pub fn differential(&self, k: usize) -> Result<PolyMatrix> {
        assert!(k >= 1, "differentials start at index 1");
        if let Some(d) = self.differentials.get(k - 1) {
            return Ok(d.clone());
        }
        match self.rank(k - 1) {
            Some(prev) if self.complete => Ok(PolyMatrix::empty(prev)),
            _ => Err(Error::InsufficientResolutionDepth { k, available: self.depth(), needed: k }),
        }
    }
}

/// Computes `∂₁..∂_K`, stopping early when a syzygy module vanishes.
pub fn free_resolution(alg: &AlgebraSpec, mo: &ModuleOrder, p: &LeftPresentation, depth: usize) -> Result<FreeResolution> {
    assert!(depth >= 1, "resolution depth must be positive");
    let (s0, first, cover, kept) = match p.form {
        PresentationForm::Generators => {
            let syz = left_syzygies(alg, mo, p.ambient, &p.vectors)?;
            (p.vectors.len(), syz.generators, p.vectors.clone(), Vec::new())
        }
        PresentationForm::Cokernel => {
            let kept: Vec<usize> = (0..p.vectors.len()).filter(|&i| !p.vectors[i].is_zero()).collect();
            let rows = kept.iter().map(|&i| p.vectors[i].clone()).collect();
            (p.ambient, rows, Vec::new(), kept)
        }
    };
    let mut res = FreeResolution {
        form: p.form,
        cover,
        kept_relations: kept,
        ranks: vec![s0],
        differentials: Vec::new(),
        complete: false,
    };
    let mut rows = first;
    let mut cols = s0;
    loop {
        let d = PolyMatrix::new(cols, rows)?;
        let s = d.nrows();
        res.ranks.push(s);
        res.differentials.push(d);
        if s == 0 {
            res.complete = true;
            break;
        }
        if res.differentials.len() == depth {
            break;
        }
        let prev = res.differentials.last().expect("just pushed");
        rows = left_syzygies(alg, mo, prev.ncols(), prev.rows())?.generators;
        cols = s;
    }
    // the next syzygy module may already be known to vanish
    if !res.complete {
        let last = res.differentials.last().expect("depth >= 1");
        if left_syzygies(alg, mo, last.ncols(), last.rows())?.generators.is_empty() {
            res.complete = true;
        }
    }
    Ok(res)
}

/// Matrix product `a · b` under the row convention: row `r` of the result is
/// `sum_λ a[r][λ] * row_λ(b)`.
pub fn compose(alg: &AlgebraSpec, a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch { expected: b.nrows(), found: a.ncols() });
    }
    let rows = a.rows().iter().map(|r| alg.combine(r, b.rows(), b.ncols())).collect();
    PolyMatrix::new(b.ncols(), rows)
}

/// Checks `∂_k · ∂_{k-1} = 0` for consecutive differentials and, in generator
/// form, `∂₁ · ∂₀ = 0`.
pub fn is_complex(alg: &AlgebraSpec, res: &FreeResolution) -> Result<bool> {
    let ds = res.differentials();
    if res.form == PresentationForm::Generators {
        if let Some(d1) = ds.first() {
            let ambient = res.cover.first().map_or(0, ModuleVector::rank);
            let cover = PolyMatrix::new(ambient, res.cover.clone())?;
            if !compose(alg, d1, &cover)?.is_zero() {
                return Ok(false);
            }
        }
    }
    for w in ds.windows(2) {
        if !compose(alg, &w[1], &w[0])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
