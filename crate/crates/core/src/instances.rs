//! Seeded instance generators and the bipartite-graph embedding.
//!
//! Every generator is a pure function of its [`GeneratorSpec`]. Randomness
//! comes from ChaCha8 seeded with `seed_from_u64`; bounded integers are drawn
//! from full `u64` outputs by rejection, so the same spec regenerates the same
//! instance on any platform. Edges are emitted sorted by `(a, bs)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::hypergraph::{AVertex, BVertex, BipartiteHypergraph, InstanceError};
use crate::ratio::{ceil_usize, int};

/// Identifier of the random source, recorded in generated files.
pub const RNG_ALGORITHM: &str = "chacha8-u64-rejection";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// A hidden perfect matching plus random edges.
    Planted,
    /// Private disjoint edges per vertex, enough to force the strengthened
    /// condition, plus random shared edges.
    Guaranteed,
    /// A random bipartite graph (`r = 2`) with `extra_edges` edges.
    Graph,
    /// Sparse instances funnelled through a few `B`-vertices.
    Adversarial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub mode: GeneratorMode,
    pub r: usize,
    pub a_count: usize,
    pub b_count: usize,
    pub extra_edges: usize,
    /// Private edges per vertex in guaranteed mode; `⌈2r − 2 + ε⌉` if unset.
    pub d: Option<usize>,
    /// Funnel size in adversarial mode; `max(1, |A|/3)` if unset.
    pub funnel: Option<usize>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(mode: GeneratorMode, r: usize, a_count: usize, b_count: usize, seed: u64) -> Self {
        GeneratorSpec {
            mode,
            r,
            a_count,
            b_count,
            extra_edges: 0,
            d: None,
            funnel: None,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// `⌈2r − 2 + ε⌉`, the smallest private degree that forces the condition.
pub fn default_private_degree(r: usize, epsilon: &BigRational) -> usize {
    ceil_usize(&(int(2 * r) - int(2) + epsilon.clone())).unwrap_or(0)
}

/// Dispatches on `spec.mode`. `epsilon` only matters for the default `d`.
pub fn generate(spec: &GeneratorSpec, epsilon: &BigRational) -> Result<BipartiteHypergraph, GenError> {
    match spec.mode {
        GeneratorMode::Planted => gen_planted(spec),
        GeneratorMode::Guaranteed => gen_guaranteed(spec, epsilon),
        GeneratorMode::Graph => gen_graph(spec),
        GeneratorMode::Adversarial => gen_adversarial(spec),
    }
}

pub fn gen_planted(spec: &GeneratorSpec) -> Result<BipartiteHypergraph, GenError> {
    check_r(spec)?;
    let k = spec.r - 1;
    if spec.b_count < k * spec.a_count {
        return Err(GenError::InfeasibleSpec("planted mode needs |B| >= (r-1)|A|"));
    }
    let mut rng = Rng::new(spec.seed);
    let mut edges = EdgeSet::default();
    let pool = rng.permutation(spec.b_count);
    for a in 0..spec.a_count {
        edges.insert(a, pool[a * k..(a + 1) * k].to_vec());
    }
    let all: Vec<BVertex> = (0..spec.b_count).collect();
    add_random_edges(&mut rng, &mut edges, spec, &all);
    finish(spec, edges)
}

pub fn gen_guaranteed(spec: &GeneratorSpec, epsilon: &BigRational) -> Result<BipartiteHypergraph, GenError> {
    check_r(spec)?;
    let k = spec.r - 1;
    let d = spec.d.unwrap_or_else(|| default_private_degree(spec.r, epsilon));
    let private = d * k * spec.a_count;
    if spec.b_count < private {
        return Err(GenError::InfeasibleSpec("guaranteed mode needs |B| >= d(r-1)|A|"));
    }
    if spec.extra_edges > 0 && spec.b_count - private < k {
        return Err(GenError::InfeasibleSpec("no shared B-vertices left for extra edges"));
    }
    let mut rng = Rng::new(spec.seed);
    let mut edges = EdgeSet::default();
    let pool = rng.permutation(spec.b_count);
    for a in 0..spec.a_count {
        for j in 0..d {
            let start = (a * d + j) * k;
            edges.insert(a, pool[start..start + k].to_vec());
        }
    }
    let shared = pool[private..].to_vec();
    add_random_edges(&mut rng, &mut edges, spec, &shared);
    finish(spec, edges)
}

pub fn gen_graph(spec: &GeneratorSpec) -> Result<BipartiteHypergraph, GenError> {
    if spec.r != 2 {
        return Err(GenError::InfeasibleSpec("graph mode requires r = 2"));
    }
    if spec.extra_edges > spec.a_count * spec.b_count {
        return Err(GenError::InfeasibleSpec("more edges requested than |A||B|"));
    }
    let mut rng = Rng::new(spec.seed);
    let mut edges = EdgeSet::default();
    // Partial Fisher-Yates over the |A||B| candidate pairs.
    let total = spec.a_count * spec.b_count;
    let mut cells: Vec<usize> = (0..total).collect();
    for i in 0..spec.extra_edges {
        let j = i + rng.below(total - i);
        cells.swap(i, j);
        let c = cells[i];
        edges.insert(c / spec.b_count, alloc::vec![c % spec.b_count]);
    }
    finish(spec, edges)
}

/// Every edge contains one vertex of a small random funnel set, so
/// `τ(E_A)` is at most the funnel size and the condition fails for `|A| ≥ 2`.
/// Each vertex gets one to three edges, then `extra_edges` more are spread at
/// random.
pub fn gen_adversarial(spec: &GeneratorSpec) -> Result<BipartiteHypergraph, GenError> {
    check_r(spec)?;
    let k = spec.r - 1;
    if spec.b_count < k.max(1) {
        return Err(GenError::InfeasibleSpec("adversarial mode needs |B| >= r-1"));
    }
    let funnel_size = spec.funnel.unwrap_or((spec.a_count / 3).max(1)).clamp(1, spec.b_count);
    let mut rng = Rng::new(spec.seed);
    let order = rng.permutation(spec.b_count);
    let funnel = &order[..funnel_size];
    let mut edges = EdgeSet::default();
    let draw = |rng: &mut Rng, edges: &mut EdgeSet, a: AVertex| {
        for _ in 0..ATTEMPTS {
            let hub = funnel[rng.below(funnel_size)];
            let rest: Vec<BVertex> = (0..spec.b_count).filter(|&b| b != hub).collect();
            let mut bs = rng.sample(&rest, k - 1);
            bs.push(hub);
            if edges.insert(a, bs) {
                return;
            }
        }
    };
    for a in 0..spec.a_count {
        let count = 1 + rng.below(3);
        for _ in 0..count {
            draw(&mut rng, &mut edges, a);
        }
    }
    if spec.a_count > 0 {
        for _ in 0..spec.extra_edges {
            let a = rng.below(spec.a_count);
            draw(&mut rng, &mut edges, a);
        }
    }
    finish(spec, edges)
}

/// The `r = 2` hypergraph of a bipartite graph given as `(a, b)` pairs.
pub fn from_bipartite_graph(
    adjacency: &[(AVertex, BVertex)],
    a_count: usize,
    b_count: usize,
) -> Result<BipartiteHypergraph, InstanceError> {
    let edges = adjacency.iter().map(|&(a, b)| (a, alloc::vec![b])).collect();
    BipartiteHypergraph::new(2, a_count, b_count, edges)
}

/// Retries per random edge before giving up on a duplicate-heavy draw.
const ATTEMPTS: usize = 64;

fn check_r(spec: &GeneratorSpec) -> Result<(), GenError> {
    if spec.r < 2 {
        return Err(GenError::InfeasibleSpec("r must be at least 2"));
    }
    Ok(())
}

fn add_random_edges(rng: &mut Rng, edges: &mut EdgeSet, spec: &GeneratorSpec, pool: &[BVertex]) {
    let k = spec.r - 1;
    if spec.a_count == 0 || pool.len() < k {
        return;
    }
    for _ in 0..spec.extra_edges {
        for _ in 0..ATTEMPTS {
            let a = rng.below(spec.a_count);
            if edges.insert(a, rng.sample(pool, k)) {
                break;
            }
        }
    }
}

fn finish(spec: &GeneratorSpec, edges: EdgeSet) -> Result<BipartiteHypergraph, GenError> {
    let list = edges.0.into_iter().collect();
    Ok(BipartiteHypergraph::new(spec.r, spec.a_count, spec.b_count, list)?)
}

/// Edges kept sorted and unique.
#[derive(Default)]
struct EdgeSet(BTreeSet<(AVertex, Vec<BVertex>)>);

impl EdgeSet {
    fn insert(&mut self, a: AVertex, mut bs: Vec<BVertex>) -> bool {
        bs.sort_unstable();
        self.0.insert((a, bs))
    }
}

struct Rng(ChaCha8Rng);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `0..n` by rejection from the top of the `u64` range.
    fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.0.next_u64();
            if x <= zone {
                return (x % n) as usize;
            }
        }
    }

    fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            v.swap(i, j);
        }
        v
    }

    /// `k` distinct elements of `pool`.
    fn sample(&mut self, pool: &[usize], k: usize) -> Vec<usize> {
        let mut v = pool.to_vec();
        for i in 0..k {
            let j = i + self.below(v.len() - i);
            v.swap(i, j);
        }
        v.truncate(k);
        v
    }
}
