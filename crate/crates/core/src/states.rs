//! Multipartite product states, state sets, ordered-basis permutations and
//! the on-disk interchange format.
//!
//! States are always stored factored, one complex unit vector per party;
//! orthogonality checks use the factor-product formula, so a single pair of
//! orthogonal factors gives an exact structural zero without assembling
//! global vectors.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::kron_vec;

/// Tolerance for accepting a factor as unit-norm on input.
pub const NORM_TOL: f64 = 1e-9;

/// One local dimension per party, `d_1 ... d_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyDims(Vec<usize>);

impl PartyDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::Input("need at least two parties".into()));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::Input("party dimensions must be positive".into()));
        }
        Ok(Self(dims))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().product()
    }
}

/// Fully product pure state: one complex vector per party.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    factors: Vec<Vec<Complex64>>,
}

impl ProductState {
    /// Validates factor norms against [`NORM_TOL`].
    pub fn new(factors: Vec<Vec<Complex64>>) -> Result<Self> {
        for (k, f) in factors.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::Input(format!("factor {k} is empty")));
            }
            if f.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Input(format!("factor {k} has non-finite amplitudes")));
            }
            let norm = vec_norm(f);
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Input(format!("factor {k} has norm {norm}, expected 1")));
            }
        }
        Ok(Self { factors })
    }

    /// Computational basis state `|i_1> (x) ... (x) |i_L>` (indices 0-based).
    pub fn basis(dims: &PartyDims, indices: &[usize]) -> Result<Self> {
        if indices.len() != dims.len() {
            return Err(Error::Shape("one basis index per party required".into()));
        }
        let factors = dims
            .dims()
            .iter()
            .zip(indices)
            .map(|(&d, &i)| {
                if i >= d {
                    return Err(Error::Shape(format!("basis index {i} out of range for dim {d}")));
                }
                let mut f = vec![Complex64::new(0.0, 0.0); d];
                f[i] = Complex64::new(1.0, 0.0);
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Vec<Complex64>] {
        &self.factors
    }

    pub fn factor(&self, party: usize) -> &[Complex64] {
        &self.factors[party]
    }

    pub fn party_count(&self) -> usize {
        self.factors.len()
    }

    pub fn matches_dims(&self, dims: &PartyDims) -> bool {
        self.factors.len() == dims.len()
            && self.factors.iter().zip(dims.dims()).all(|(f, &d)| f.len() == d)
    }

    /// Kronecker product of the factors in party order.
    pub fn assemble(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(1.0, 0.0)];
        for f in &self.factors {
            out = kron_vec(&out, f);
        }
        out
    }

    /// Tensor of the factors of the given (0-based, ascending) parties.
    pub fn assemble_parties(&self, parties: &[usize]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(1.0, 0.0)];
        for &p in parties {
            out = kron_vec(&out, &self.factors[p]);
        }
        out
    }
}

/// `<a|b>` for plain complex vectors, conjugate-linear in `a`.
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<a|b>` as the product over parties of the factor inner products.
pub fn inner_product(a: &ProductState, b: &ProductState) -> Result<Complex64> {
    if a.party_count() != b.party_count()
        || a.factors.iter().zip(&b.factors).any(|(x, y)| x.len() != y.len())
    {
        return Err(Error::Shape("inner product of states with mismatched dims".into()));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for (x, y) in a.factors.iter().zip(&b.factors) {
        acc *= vec_inner(x, y);
        if acc == Complex64::new(0.0, 0.0) {
            break;
        }
    }
    Ok(acc)
}

/// Ordered orthonormal basis restricted to permutations of the computational
/// basis: `perm[k]` is the computational index of logical index `k` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis {
    dim: usize,
    perm: Vec<usize>,
}

impl OrderedBasis {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let dim = perm.len();
        let mut seen = vec![false; dim];
        for &p in &perm {
            if p >= dim || seen[p] {
                return Err(Error::Input("ordered basis permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        Ok(Self { dim, perm })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, perm: (0..dim).collect() }
    }

    /// Identity with the listed transpositions applied (0-based index pairs).
    pub fn with_swaps(dim: usize, swaps: &[(usize, usize)]) -> Result<Self> {
        let mut perm: Vec<usize> = (0..dim).collect();
        for &(a, b) in swaps {
            if a >= dim || b >= dim {
                return Err(Error::Input("swap index out of range".into()));
            }
            perm.swap(a, b);
        }
        Self::new(perm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Computational index of logical index `k`.
    pub fn map(&self, k: usize) -> usize {
        self.perm[k]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.dim];
        for (k, &p) in self.perm.iter().enumerate() {
            inv[p] = k;
        }
        Self { dim: self.dim, perm: inv }
    }
}

/// Permute coordinates so logical index `k` of the input lands at
/// computational index `perm(k)`.
pub fn apply_basis(v: &[Complex64], basis: &OrderedBasis) -> Result<Vec<Complex64>> {
    if v.len() != basis.dim() {
        return Err(Error::Shape(format!(
            "vector of length {} against basis of dim {}",
            v.len(),
            basis.dim()
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (k, &z) in v.iter().enumerate() {
        out[basis.map(k)] = z;
    }
    Ok(out)
}

/// Ordered set of product states over fixed party dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSet {
    dims: PartyDims,
    states: Vec<ProductState>,
    label: String,
}

impl StateSet {
    pub fn new(dims: PartyDims, states: Vec<ProductState>, label: impl Into<String>) -> Result<Self> {
        for (i, s) in states.iter().enumerate() {
            if !s.matches_dims(&dims) {
                return Err(Error::Shape(format!("state {i} does not match party dims {:?}", dims.dims())));
            }
        }
        Ok(Self { dims, states, label: label.into() })
    }

    pub fn dims(&self) -> &PartyDims {
        &self.dims
    }

    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Reorder parties: `perm[k]` is the output position of input party `k`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<Self> {
        let l = self.dims.len();
        if perm.len() != l {
            return Err(Error::Shape("party permutation length mismatch".into()));
        }
        let mut seen = vec![false; l];
        for &p in perm {
            if p >= l || seen[p] {
                return Err(Error::Input("party permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        let mut new_dims = vec![0; l];
        for (k, &p) in perm.iter().enumerate() {
            new_dims[p] = self.dims.dims()[k];
        }
        let states = self
            .states
            .iter()
            .map(|s| {
                let mut factors: Vec<Vec<Complex64>> = vec![Vec::new(); l];
                for (k, &p) in perm.iter().enumerate() {
                    factors[p] = s.factors[k].clone();
                }
                ProductState::new(factors)
            })
            .collect::<Result<Vec<_>>>()?;
        StateSet::new(PartyDims::new(new_dims)?, states, self.label.clone())
    }

    /// Largest |inner product| deviation from `other`, entrywise over states.
    pub fn max_state_distance(&self, other: &Self) -> f64 {
        if self.dims != other.dims || self.len() != other.len() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for (a, b) in self.states.iter().zip(&other.states) {
            for (fa, fb) in a.factors.iter().zip(&b.factors) {
                for (x, y) in fa.iter().zip(fb) {
                    worst = worst.max((x - y).norm());
                }
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct StateSetFile {
    dims: Vec<usize>,
    label: String,
    states: Vec<StateFile>,
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    factors: Vec<Vec<[f64; 2]>>,
}

impl StateSet {
    pub fn to_json(&self) -> String {
        let file = StateSetFile {
            dims: self.dims.dims().to_vec(),
            label: self.label.clone(),
            states: self
                .states
                .iter()
                .map(|s| StateFile {
                    factors: s
                        .factors
                        .iter()
                        .map(|f| f.iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("state set serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateSetFile = serde_json::from_str(text)?;
        let dims = PartyDims::new(file.dims)?;
        let mut states = Vec::with_capacity(file.states.len());
        for (i, s) in file.states.iter().enumerate() {
            if s.factors.len() != dims.len() {
                return Err(Error::Input(format!(
                    "state {i}: {} factors for {} parties",
                    s.factors.len(),
                    dims.len()
                )));
            }
            for (k, (f, &d)) in s.factors.iter().zip(dims.dims()).enumerate() {
                if f.len() != d {
                    return Err(Error::Input(format!(
                        "state {i}, factor {k}: length {} does not match dim {d}",
                        f.len()
                    )));
                }
            }
            let factors: Vec<Vec<Complex64>> = s
                .factors
                .iter()
                .map(|f| f.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect();
            let state = ProductState::new(factors)
                .map_err(|e| Error::Input(format!("state {i}: {e}")))?;
            states.push(state);
        }
        StateSet::new(dims, states, file.label)
    }
}

/// Read a state set from a JSON file.
pub fn read_state_set(path: impl AsRef<Path>) -> Result<StateSet> {
    let text = std::fs::read_to_string(path.as_ref())?;
    StateSet::from_json(&text)
}

/// Write a state set as JSON; whole-file atomic (temp file + rename).
pub fn write_state_set(set: &StateSet, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), set.to_json().as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
