//! Padding of a nonlocal seed into a larger party set and the graph-based
//! composition of block sets: star, chain, tri-star, and the general
//! composer that accepts any plan whose attached graph is connected.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition_graph::CompositionGraph;
use crate::states::{inner_product, vec_norm, PartyDims, ProductState, StateSet};

/// Orthogonality tolerance for the composed union.
pub const UNION_TOL: f64 = 1e-9;

/// A block seed: an explicit state set, or a nested plan composed on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedSpec {
    Set(StateSet),
    Plan(Box<CompositionPlan>),
}

impl SeedSpec {
    pub fn resolve(&self) -> Result<StateSet> {
        match self {
            SeedSpec::Set(set) => Ok(set.clone()),
            SeedSpec::Plan(plan) => compose_general(plan),
        }
    }
}

/// One block of a composition plan: a seed over a proper subset of parties
/// plus one fixed padding factor per remaining party (0-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct PlanBlock {
    pub parties: Vec<usize>,
    pub seed: SeedSpec,
    pub padding: Vec<(usize, Vec<Complex64>)>,
    /// User-supplied attestation that this block's seed is genuinely
    /// nonlocal; the certifier marks such subtrees as trust-assumed.
    pub attestation: Option<String>,
}

/// The composition data of the graph composer: party dims, blocks, and the
/// attached graph (a clique per block's party subset).
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionPlan {
    pub dims: PartyDims,
    pub blocks: Vec<PlanBlock>,
    pub label: String,
}

impl CompositionPlan {
    /// The attached graph: vertices are parties, a clique per block.
    pub fn graph(&self) -> Result<CompositionGraph> {
        let blocks: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.parties.clone()).collect();
        CompositionGraph::from_blocks(self.dims.len(), &blocks)
    }

    /// Relabel parties: `perm[k]` is the new index of party `k`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<Self> {
        let l = self.dims.len();
        if perm.len() != l {
            return Err(Error::Shape("party permutation length mismatch".into()));
        }
        let mut new_dims = vec![0; l];
        for (k, &p) in perm.iter().enumerate() {
            if p >= l || new_dims[p] != 0 {
                return Err(Error::Input("party permutation is not a bijection".into()));
            }
            new_dims[p] = self.dims.dims()[k];
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| PlanBlock {
                parties: b.parties.iter().map(|&p| perm[p]).collect(),
                seed: b.seed.clone(),
                padding: b.padding.iter().map(|(p, f)| (perm[*p], f.clone())).collect(),
                attestation: b.attestation.clone(),
            })
            .collect();
        Ok(Self { dims: PartyDims::new(new_dims)?, blocks, label: self.label.clone() })
    }
}

/// Place a seed into a larger party set: seed party `k` goes to
/// `layout[k]`, every remaining party gets its fixed padding factor.
/// Preserves the seed's Gram matrix exactly (each padding contributes 1).
pub fn pad(
    seed: &StateSet,
    dims: &PartyDims,
    layout: &[usize],
    padding: &[(usize, Vec<Complex64>)],
) -> Result<StateSet> {
    let l = dims.len();
    if layout.len() != seed.dims().len() {
        return Err(Error::Input("layout needs one target party per seed party".into()));
    }
    let mut occupied = vec![false; l];
    for (k, &p) in layout.iter().enumerate() {
        if p >= l {
            return Err(Error::Input(format!("layout party {} out of range", p + 1)));
        }
        if occupied[p] {
            return Err(Error::Input("layout is not injective".into()));
        }
        occupied[p] = true;
        if dims.dims()[p] != seed.dims().dims()[k] {
            return Err(Error::Input(format!(
                "seed party {} has dim {}, target party {} has dim {}",
                k + 1,
                seed.dims().dims()[k],
                p + 1,
                dims.dims()[p]
            )));
        }
    }
    let mut padded = vec![false; l];
    for (p, factor) in padding {
        if *p >= l || occupied[*p] || padded[*p] {
            return Err(Error::Input(format!("padding party {} invalid or duplicated", p + 1)));
        }
        padded[*p] = true;
        if factor.len() != dims.dims()[*p] {
            return Err(Error::Input(format!(
                "padding factor for party {} has length {}, dim is {}",
                p + 1,
                factor.len(),
                dims.dims()[*p]
            )));
        }
        if (vec_norm(factor) - 1.0).abs() > crate::states::NORM_TOL {
            return Err(Error::Input(format!("padding factor for party {} is not unit norm", p + 1)));
        }
    }
    if let Some(p) = (0..l).find(|&p| !occupied[p] && !padded[p]) {
        return Err(Error::Input(format!("party {} has neither seed factor nor padding", p + 1)));
    }

    let states = seed
        .states()
        .iter()
        .map(|s| {
            let mut factors: Vec<Vec<Complex64>> = vec![Vec::new(); l];
            for (k, &p) in layout.iter().enumerate() {
                factors[p] = s.factor(k).to_vec();
            }
            for (p, factor) in padding {
                factors[*p] = factor.clone();
            }
            ProductState::new(factors)
        })
        .collect::<Result<Vec<_>>>()?;
    StateSet::new(dims.clone(), states, seed.label())
}

/// Resolve and place every block of a plan, without the union-orthogonality
/// audit. Cross-block orthogonality of the fixed patterns is structural and
/// holds for arbitrary seeds; the audit lives in [`compose_general`].
pub fn place_blocks(plan: &CompositionPlan) -> Result<Vec<StateSet>> {
    let l = plan.dims.len();
    plan.blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            if block.parties.is_empty() || block.parties.len() >= l {
                return Err(Error::Plan(format!(
                    "block {} party set must be a nonempty proper subset",
                    i + 1
                )));
            }
            let seed = block.seed.resolve()?;
            pad(&seed, &plan.dims, &block.parties, &block.padding)
                .map_err(|e| Error::Plan(format!("block {}: {e}", i + 1)))
        })
        .collect()
}

/// Compose a plan: connectivity of the attached graph, block placement,
/// union in block order, and a pairwise-orthogonality audit of the union.
pub fn compose_general(plan: &CompositionPlan) -> Result<StateSet> {
    let graph = plan.graph()?;
    if !graph.is_connected() {
        let components = graph.components();
        let show = |vs: &[usize]| {
            let inner: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
            format!("{{{}}}", inner.join(","))
        };
        return Err(Error::Plan(format!(
            "composition graph is disconnected: components {} and {}",
            show(&components[0]),
            show(&components[1])
        )));
    }
    let placed = place_blocks(plan)?;
    let mut states = Vec::new();
    for set in &placed {
        states.extend(set.states().iter().cloned());
    }
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let overlap = inner_product(&states[i], &states[j])?.norm();
            if overlap > UNION_TOL {
                return Err(Error::Plan(format!(
                    "union is not orthogonal: states {} and {} overlap by {overlap:.3e}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    StateSet::new(plan.dims.clone(), states, plan.label.clone())
}

fn computational_ket(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

fn fill_padding(
    party_count: usize,
    seed_parties: &[usize],
    two_parties: &[usize],
    dims: &PartyDims,
) -> Vec<(usize, Vec<Complex64>)> {
    (0..party_count)
        .filter(|p| !seed_parties.contains(p))
        .map(|p| {
            let index = usize::from(two_parties.contains(&p));
            (p, computational_ket(dims.dims()[p], index))
        })
        .collect()
}

/// Star pattern over `L >= 4` parties: block `i` couples party 1 with party
/// `i+1`; the `|2>` filler sits on party `i` for `i >= 2` and on party `L`
/// for block 1 (1-based as in the source pattern).
pub fn star_plan(dims: &PartyDims, seeds: Vec<StateSet>) -> Result<CompositionPlan> {
    let l = dims.len();
    if l < 4 {
        return Err(Error::Domain(format!("star pattern needs at least 4 parties, got {l}")));
    }
    if let Some(&d) = dims.dims().iter().find(|&&d| d < 3) {
        return Err(Error::Domain(format!("star pattern needs every dim >= 3, found {d}")));
    }
    if seeds.len() != l - 1 {
        return Err(Error::Input(format!("star pattern needs {} seeds, got {}", l - 1, seeds.len())));
    }
    let blocks = seeds
        .into_iter()
        .enumerate()
        .map(|(b, seed)| {
            let parties = vec![0, b + 1];
            let two = if b == 0 { vec![l - 1] } else { vec![b] };
            let padding = fill_padding(l, &parties, &two, dims);
            check_seed_dims(&seed, dims, &parties, b)?;
            Ok(PlanBlock { parties, seed: SeedSpec::Set(seed), padding, attestation: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompositionPlan { dims: dims.clone(), blocks, label: format!("star(L={l})") })
}

/// Chain pattern over `L >= 5` parties: block `i` couples parties `(i, i+1)`
/// with the `|2>` filler on party `i+2`, wrapping the last block's filler to
/// party 1.
pub fn chain_plan(dims: &PartyDims, seeds: Vec<StateSet>) -> Result<CompositionPlan> {
    let l = dims.len();
    if l < 5 {
        return Err(Error::Domain(format!(
            "chain pattern needs at least 5 parties for its structural zeros, got {l}"
        )));
    }
    if let Some(&d) = dims.dims().iter().find(|&&d| d < 3) {
        return Err(Error::Domain(format!("chain pattern needs every dim >= 3, found {d}")));
    }
    if seeds.len() != l - 1 {
        return Err(Error::Input(format!("chain pattern needs {} seeds, got {}", l - 1, seeds.len())));
    }
    let blocks = seeds
        .into_iter()
        .enumerate()
        .map(|(b, seed)| {
            let parties = vec![b, b + 1];
            let two = if b == l - 2 { vec![0] } else { vec![b + 2] };
            let padding = fill_padding(l, &parties, &two, dims);
            check_seed_dims(&seed, dims, &parties, b)?;
            Ok(PlanBlock { parties, seed: SeedSpec::Set(seed), padding, attestation: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompositionPlan { dims: dims.clone(), blocks, label: format!("chain(L={l})") })
}

/// Tri-star pattern: one tripartite seed repeated over `2L+1` parties; block
/// `i` couples party 1 with parties `(2i, 2i+1)`, `|2>|2>` fillers on the
/// previous pair (the last pair for block 1).
pub fn tristar_plan(
    block_count: usize,
    seed: SeedSpec,
    dims: &PartyDims,
) -> Result<CompositionPlan> {
    if block_count < 3 {
        return Err(Error::Domain(format!(
            "tri-star pattern needs at least 3 blocks, got {block_count}"
        )));
    }
    let seed_set = seed.resolve()?;
    if seed_set.dims().len() != 3 {
        return Err(Error::Input("tri-star seed must be tripartite".into()));
    }
    let l = 2 * block_count + 1;
    if dims.len() != l {
        return Err(Error::Input(format!(
            "tri-star over {block_count} blocks needs {l} parties, got {}",
            dims.len()
        )));
    }
    let blocks = (0..block_count)
        .map(|b| {
            let parties = vec![0, 2 * b + 1, 2 * b + 2];
            let two = if b == 0 {
                vec![l - 2, l - 1]
            } else {
                vec![2 * b - 1, 2 * b]
            };
            let padding = fill_padding(l, &parties, &two, dims);
            check_seed_dims(&seed_set, dims, &parties, b)?;
            Ok(PlanBlock {
                parties,
                seed: seed.clone(),
                padding,
                attestation: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompositionPlan {
        dims: dims.clone(),
        blocks,
        label: format!("tristar(blocks={block_count})"),
    })
}

fn check_seed_dims(seed: &StateSet, dims: &PartyDims, parties: &[usize], block: usize) -> Result<()> {
    let expect: Vec<usize> = parties.iter().map(|&p| dims.dims()[p]).collect();
    if seed.dims().dims() != expect.as_slice() {
        return Err(Error::Input(format!(
            "seed {} has dims {:?}, block expects {:?}",
            block + 1,
            seed.dims().dims(),
            expect
        )));
    }
    Ok(())
}

pub fn compose_star(dims: &PartyDims, seeds: Vec<StateSet>) -> Result<(StateSet, CompositionPlan)> {
    let plan = star_plan(dims, seeds)?;
    Ok((compose_general(&plan)?, plan))
}

pub fn compose_chain(dims: &PartyDims, seeds: Vec<StateSet>) -> Result<(StateSet, CompositionPlan)> {
    let plan = chain_plan(dims, seeds)?;
    Ok((compose_general(&plan)?, plan))
}

pub fn compose_tristar(
    block_count: usize,
    seed: SeedSpec,
    dims: &PartyDims,
) -> Result<(StateSet, CompositionPlan)> {
    let plan = tristar_plan(block_count, seed, dims)?;
    Ok((compose_general(&plan)?, plan))
}

// ---------------------------------------------------------------------------
// Plan files
// ---------------------------------------------------------------------------

impl CompositionPlan {
    pub fn to_json(&self) -> String {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let seed = match &b.seed {
                    SeedSpec::Set(set) => {
                        serde_json::from_str(&set.to_json()).expect("state set value")
                    }
                    SeedSpec::Plan(plan) => {
                        let inner: Value =
                            serde_json::from_str(&plan.to_json()).expect("plan value");
                        json!({ "plan": inner })
                    }
                };
                let padding: Vec<Value> = b
                    .padding
                    .iter()
                    .map(|(p, f)| {
                        json!({
                            "party": p + 1,
                            "factor": f.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let mut block = json!({
                    "parties": b.parties.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "seed": seed,
                    "padding": padding,
                });
                if let Some(att) = &b.attestation {
                    block["attestation"] = json!(att);
                }
                block
            })
            .collect();
        let out = json!({
            "dims": self.dims.dims(),
            "label": self.label,
            "blocks": blocks,
        });
        serde_json::to_string_pretty(&out).expect("plan serialization")
    }

    /// Parse a plan; `base_dir` resolves relative seed paths.
    pub fn from_json(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        plan_from_value(&value, base_dir)
    }
}

fn plan_from_value(value: &Value, base_dir: Option<&Path>) -> Result<CompositionPlan> {
    let dims_value = value
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("plan is missing 'dims'".into()))?;
    let dims: Vec<usize> = dims_value
        .iter()
        .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| Error::Input("bad dim".into())))
        .collect::<Result<_>>()?;
    let dims = PartyDims::new(dims)?;
    let label = value.get("label").and_then(Value::as_str).unwrap_or("").to_string();
    let blocks_value = value
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("plan is missing 'blocks'".into()))?;

    let mut blocks = Vec::with_capacity(blocks_value.len());
    for (i, bv) in blocks_value.iter().enumerate() {
        let bad = |msg: &str| Error::Input(format!("plan block {}: {msg}", i + 1));
        let parties: Vec<usize> = bv
            .get("parties")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing 'parties'"))?
            .iter()
            .map(|p| {
                p.as_u64()
                    .filter(|&p| p >= 1)
                    .map(|p| (p - 1) as usize)
                    .ok_or_else(|| bad("party indices are 1-based positive integers"))
            })
            .collect::<Result<_>>()?;
        let seed_value = bv.get("seed").ok_or_else(|| bad("missing 'seed'"))?;
        let seed = match seed_value {
            Value::String(path) => {
                let full = match base_dir {
                    Some(dir) => dir.join(path),
                    None => Path::new(path).to_path_buf(),
                };
                SeedSpec::Set(crate::states::read_state_set(&full).map_err(|e| {
                    bad(&format!("seed file {}: {e}", full.display()))
                })?)
            }
            Value::Object(map) if map.contains_key("plan") => {
                SeedSpec::Plan(Box::new(plan_from_value(&map["plan"], base_dir)?))
            }
            Value::Object(_) => SeedSpec::Set(
                StateSet::from_json(&seed_value.to_string())
                    .map_err(|e| bad(&format!("inline seed: {e}")))?,
            ),
            _ => return Err(bad("seed must be a path, a state set, or {\"plan\": ...}")),
        };
        let padding = match bv.get("padding") {
            None => Vec::new(),
            Some(pv) => pv
                .as_array()
                .ok_or_else(|| bad("'padding' must be an array"))?
                .iter()
                .map(|entry| {
                    let party = entry
                        .get("party")
                        .and_then(Value::as_u64)
                        .filter(|&p| p >= 1)
                        .ok_or_else(|| bad("padding entry needs a 1-based 'party'"))?
                        as usize
                        - 1;
                    let factor = entry
                        .get("factor")
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad("padding entry needs a 'factor'"))?
                        .iter()
                        .map(|z| {
                            let pair = z.as_array().filter(|p| p.len() == 2);
                            match pair {
                                Some(p) => Ok(Complex64::new(
                                    p[0].as_f64().ok_or_else(|| bad("bad amplitude"))?,
                                    p[1].as_f64().ok_or_else(|| bad("bad amplitude"))?,
                                )),
                                None => Err(bad("amplitudes are [re, im] pairs")),
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((party, factor))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let attestation =
            bv.get("attestation").and_then(Value::as_str).map(str::to_string);
        blocks.push(PlanBlock { parties, seed, padding, attestation });
    }
    Ok(CompositionPlan { dims, blocks, label })
}

pub fn read_plan(path: impl AsRef<Path>) -> Result<CompositionPlan> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    CompositionPlan::from_json(&text, path.parent())
}

pub fn write_plan(plan: &CompositionPlan, path: impl AsRef<Path>) -> Result<()> {
    crate::states::write_atomic(path.as_ref(), plan.to_json().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::grid::build_grid;
    use crate::constructors::ufl::{hadamard2, UflUnitary};
    use crate::states::OrderedBasis;

    fn qutrit_grid() -> StateSet {
        let h = UflUnitary::new(hadamard2()).unwrap();
        build_grid(3, 3, &h, &h, &OrderedBasis::identity(3), &OrderedBasis::identity(3))
            .unwrap()
    }

    fn ket(d: usize, i: usize) -> Vec<Complex64> {
        computational_ket(d, i)
    }

    #[test]
    fn pad_into_three_parties() {
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 3, 3]).unwrap();
        let out = pad(&seed, &dims, &[0, 1], &[(2, ket(3, 0))]).unwrap();
        assert_eq!(out.len(), 8);
        for s in out.states() {
            assert_eq!(s.factor(2), &ket(3, 0)[..]);
        }
    }

    #[test]
    fn pad_preserves_gram_matrix() {
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 3, 4]).unwrap();
        let out = pad(&seed, &dims, &[0, 1], &[(2, ket(4, 1))]).unwrap();
        for s in out.states() {
            assert_eq!(s.factor(2), &ket(4, 1)[..]);
        }
        for i in 0..seed.len() {
            for j in 0..seed.len() {
                let a = inner_product(&seed.states()[i], &seed.states()[j]).unwrap();
                let b = inner_product(&out.states()[i], &out.states()[j]).unwrap();
                assert!((a - b).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn pad_rejects_non_injective_layout() {
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 3, 3]).unwrap();
        assert!(pad(&seed, &dims, &[0, 0], &[(2, ket(3, 0))]).is_err());
    }

    #[test]
    fn pad_rejects_dim_mismatch() {
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 4, 3]).unwrap();
        assert!(pad(&seed, &dims, &[0, 1], &[(2, ket(3, 0))]).is_err());
    }

    #[test]
    fn star_composition_counts_and_orthogonality() {
        let dims = PartyDims::new(vec![3, 3, 3, 3]).unwrap();
        let seeds = vec![qutrit_grid(); 3];
        let (set, plan) = compose_star(&dims, seeds).unwrap();
        assert_eq!(set.len(), 24);
        assert!(plan.graph().unwrap().is_connected());
    }

    #[test]
    fn chain_composition_counts() {
        let dims = PartyDims::new(vec![3, 3, 3, 3, 3]).unwrap();
        let seeds = vec![qutrit_grid(); 4];
        let (set, _) = compose_chain(&dims, seeds).unwrap();
        assert_eq!(set.len(), 32);
    }

    #[test]
    fn chain_rejects_four_parties() {
        let dims = PartyDims::new(vec![3, 3, 3, 3]).unwrap();
        let err = chain_plan(&dims, vec![qutrit_grid(); 3]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn star_rejects_small_dims() {
        let dims = PartyDims::new(vec![3, 2, 3, 3]).unwrap();
        let err = star_plan(&dims, vec![qutrit_grid(); 3]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn disconnected_plan_rejected_naming_components() {
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 3, 3, 3]).unwrap();
        let plan = CompositionPlan {
            dims: dims.clone(),
            blocks: vec![
                PlanBlock {
                    parties: vec![0, 1],
                    seed: SeedSpec::Set(seed.clone()),
                    padding: vec![(2, ket(3, 0)), (3, ket(3, 0))],
                    attestation: None,
                },
                PlanBlock {
                    parties: vec![2, 3],
                    seed: SeedSpec::Set(seed),
                    padding: vec![(0, ket(3, 1)), (1, ket(3, 1))],
                    attestation: None,
                },
            ],
            label: "disconnected".into(),
        };
        let err = compose_general(&plan).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("disconnected"), "{msg}");
        assert!(msg.contains("{1,2}") && msg.contains("{3,4}"), "{msg}");
    }

    #[test]
    fn overlapping_union_rejected_with_pair() {
        // A duplicated block collides state-for-state; a third block on
        // {2,3} keeps the graph connected so the union audit is what fires.
        let seed = qutrit_grid();
        let dims = PartyDims::new(vec![3, 3, 3]).unwrap();
        let block = PlanBlock {
            parties: vec![0, 1],
            seed: SeedSpec::Set(seed.clone()),
            padding: vec![(2, ket(3, 0))],
            attestation: None,
        };
        let connector = PlanBlock {
            parties: vec![1, 2],
            seed: SeedSpec::Set(seed),
            padding: vec![(0, ket(3, 1))],
            attestation: None,
        };
        let plan = CompositionPlan {
            dims,
            blocks: vec![block.clone(), block, connector],
            label: "colliding".into(),
        };
        let err = compose_general(&plan).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("states 1 and 9"), "{msg}");
    }

    #[test]
    fn plan_json_roundtrip() {
        let dims = PartyDims::new(vec![3, 3, 3, 3]).unwrap();
        let mut plan = star_plan(&dims, vec![qutrit_grid(); 3]).unwrap();
        plan.blocks[1].attestation = Some("externally certified".into());
        let back = CompositionPlan::from_json(&plan.to_json(), None).unwrap();
        assert_eq!(plan, back);
    }

    #[test]
    fn plan_with_seed_path() {
        let dir = tempfile::tempdir().unwrap();
        let seed_path = dir.path().join("seed.json");
        crate::states::write_state_set(&qutrit_grid(), &seed_path).unwrap();
        let text = format!(
            r#"{{"dims":[3,3,3],"label":"from path","blocks":[
                {{"parties":[1,2],"seed":"seed.json","padding":[{{"party":3,"factor":[[1.0,0.0],[0.0,0.0],[0.0,0.0]]}}]}},
                {{"parties":[2,3],"seed":"seed.json","padding":[{{"party":1,"factor":[[0.0,0.0],[1.0,0.0],[0.0,0.0]]}}]}}
            ]}}"#
        );
        let plan_path = dir.path().join("plan.json");
        std::fs::write(&plan_path, &text).unwrap();
        let plan = read_plan(&plan_path).unwrap();
        assert_eq!(plan.blocks.len(), 2);
        assert_eq!(plan.blocks[0].seed.resolve().unwrap().len(), 8);
    }
}
