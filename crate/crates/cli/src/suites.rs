//! Verification suites. Each suite runs a family of instances, checks the
//! structural formulas and bounds against the exact oracle, and tallies
//! every property it checks.
//!
//! Instances are processed in parallel but merged in instance order, so a
//! suite's report depends only on its parameters.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use pebblekit_core::diam2::conjectured_bound;
use pebblekit_core::generate::{
    connected_graphs, parent_sequence_trees, random_block_graph, random_configuration,
    random_diameter_two, random_weighted_tree,
};
use pebblekit_core::{
    audit_claim, blockcut_bound, clique_block_pebbling, detect_cheap, extremal_config, f_value,
    families, fractional_estimate, greedy_is_solvable, is_solvable, kpd2_bound, maximal_partition,
    normalize_solution, pebbling_number, psv_bound, r_maximal_partition, solution_cost,
    unsolvable_config, verify_solution, build_extremal, corollary_formula, engine::is_acyclic,
    bounds::BNode, Configuration, Error, ExtremalSpec, Graph, Pebbling, PebblingOptions, Result,
    Solver, SearchOptions, Vertex, DEFAULT_WEIGHT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Closed forms for complete graphs and paths.
    Known,
    /// Path-partition formulas against the oracle on all small trees.
    Trees,
    /// The weighted path-partition bound on random weighted trees.
    Weighted,
    /// Exact values of graphs whose blocks are cliques.
    Cliqueblocks,
    /// The block-cutpoint upper bound on random block graphs.
    Blockbound,
    /// Diameter-two upper bounds over all small diameter-two graphs.
    Diam2,
    /// Unsolvability of the extremal configuration.
    Extremal,
    /// Cheap-solution detection and the counting audit.
    Cheap,
    /// `pi_k / k` approaching `2^diam`.
    Fractional,
    /// Self-consistency of the exact engine.
    Engine,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Known,
        Suite::Trees,
        Suite::Weighted,
        Suite::Cliqueblocks,
        Suite::Blockbound,
        Suite::Diam2,
        Suite::Extremal,
        Suite::Cheap,
        Suite::Fractional,
        Suite::Engine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Known => "known",
            Suite::Trees => "trees",
            Suite::Weighted => "weighted",
            Suite::Cliqueblocks => "cliqueblocks",
            Suite::Blockbound => "blockbound",
            Suite::Diam2 => "diam2",
            Suite::Extremal => "extremal",
            Suite::Cheap => "cheap",
            Suite::Fractional => "fractional",
            Suite::Engine => "engine",
        }
    }

    /// Default `(max_n, k, trials)`.
    fn defaults(self) -> (usize, u64, usize) {
        match self {
            Suite::Known => (6, 3, 0),
            Suite::Trees => (7, 2, 0),
            Suite::Weighted => (6, 2, 200),
            Suite::Cliqueblocks => (8, 2, 20),
            Suite::Blockbound => (9, 2, 100),
            Suite::Diam2 => (6, 2, 0),
            Suite::Extremal => (10, 3, 0),
            Suite::Cheap => (8, 2, 10_000),
            Suite::Fractional => (5, 2, 0),
            Suite::Engine => (5, 2, 0),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub max_n: Option<usize>,
    pub k: Option<u64>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Per-computation cap on explored search states.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Property {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    /// Observations are reported but never fail a run.
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Property {
    pub fn passed(&self) -> bool {
        self.informational || self.failed == 0
    }
}

/// Property counters in first-seen order.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    props: Vec<Property>,
}

impl Tally {
    fn entry(&mut self, name: &str, informational: bool) -> &mut Property {
        if let Some(i) = self.props.iter().position(|p| p.name == name) {
            return &mut self.props[i];
        }
        self.props.push(Property {
            name: name.to_string(),
            checked: 0,
            failed: 0,
            informational,
            first_failure: None,
        });
        self.props.last_mut().expect("just pushed")
    }

    fn record(&mut self, name: &str, informational: bool, ok: bool, detail: impl FnOnce() -> String) {
        let p = self.entry(name, informational);
        p.checked += 1;
        if !ok {
            p.failed += 1;
            if p.first_failure.is_none() {
                p.first_failure = Some(detail());
            }
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.record(name, false, ok, detail);
    }

    pub fn observe(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.record(name, true, ok, detail);
    }

    pub fn merge(&mut self, other: Tally) {
        for p in other.props {
            let e = self.entry(&p.name, p.informational);
            e.checked += p.checked;
            e.failed += p.failed;
            if e.first_failure.is_none() {
                e.first_failure = p.first_failure;
            }
        }
    }

    pub fn into_properties(self) -> Vec<Property> {
        self.props
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: usize,
    pub k: u64,
    pub trials: usize,
    pub seed: u64,
    pub instances: u64,
    pub properties: Vec<Property>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(Property::passed)
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Property names shared with the acceptance target.
pub mod names {
    pub const LOWER_BOUND: &str = "pi_1(G,r) >= max(n, 2^ecc(r))";
    pub const COMPLETE: &str = "pi_k(K_n) = n + 2(k-1)";
    pub const PATH: &str = "pi_k(P_n) = k 2^(n-1)";
    pub const PARTITION_VALID: &str = "r-maximal partition is a valid r-path partition";
    pub const TREE_FORMULA: &str = "f_k(r-maximal partition) = pi_k(T,r)";
    pub const COROLLARY_IDENTITY: &str = "corollary formula = f_k";
    pub const TREE_MAXIMAL: &str = "f_k(maximal partition) = pi_k(T)";
    pub const WITNESS_UNSOLVABLE: &str = "unsolvable_config is unsolvable";
    pub const WITNESS_SIZE: &str = "|unsolvable_config| = f_1 - 1";
    pub const GREEDY: &str = "greedy search solves sampled configurations of size pi_k(T,r)";
    pub const WEIGHTED_BOUND: &str = "pi_k^w(T,r) <= f_k^w(T,r)";
    pub const WEIGHTED_WITNESS: &str = "weighted unsolvable_config is unsolvable";
    pub const CLIQUE_FORMULA: &str = "clique-block formula = pi_k(G,r)";
    pub const CLIQUE_TREE: &str = "pi_k(G,r) = pi_k(BFS tree,r)";
    pub const CLIQUE_AFFINE: &str = "clique-block formula is affine in k with slope 2^a_1";
    pub const BOWTIE: &str = "bowtie pi_k = 4k + 2";
    pub const BLOCKCUT: &str = "blockcut bound >= pi_k(G,r)";
    pub const BPRIME_SHAPE: &str = "B'(G) is a tree with r' a weight-1 leaf";
    pub const PSV: &str = "pi_1(G) <= n + 1";
    pub const KPD2: &str = "pi_k(G) <= n + 7k - 6";
    pub const CONJECTURE: &str = "pi_k(G) <= n + 4k - 3 (conjectured)";
    pub const EXTREMAL_DIAMETER: &str = "extremal graph has diameter 2";
    pub const EXTREMAL_SIZE: &str = "|extremal_config| = n + 4k - 4";
    pub const EXTREMAL_UNSOLVABLE: &str = "extremal_config is k-fold r-unsolvable";
    pub const DETECTED: &str = "cheap solution found at size n + 7k - 6";
    pub const PATTERN_COST: &str = "cheap solution replays at its declared cost";
    pub const AUDIT: &str = "S1-S6 hold without cheap solutions";
    pub const NO_CHEAP_SMALL: &str = "configurations without cheap solutions have at most n pebbles";
    pub const FRACTIONAL_FORMULA: &str = "bowtie pi_k/k = 4 + 2/k";
    pub const FRACTIONAL_ORACLE: &str = "oracle confirms pi_k(G)";
    pub const FRACTIONAL_TREND: &str = "pi_k/k decreases toward 2^diam";
    pub const PRUNING: &str = "pruning on and off agree";
    pub const WITNESS_MAXIMAL: &str = "witness is unsolvable of size pi - 1";
    pub const SOLUTIONS_VERIFY: &str = "returned solutions verify";
    pub const NORMALIZED: &str = "normalized solutions are acyclic and verify";
}

use names::*;

/// Worker count from `PEBBLEKIT_THREADS`, else rayon's default.
pub fn thread_count() -> Option<usize> {
    std::env::var("PEBBLEKIT_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

fn par_tally<T, F>(items: &[T], f: F) -> Result<Tally>
where
    T: Sync,
    F: Fn(usize, &T) -> Result<Tally> + Sync,
{
    let run = || -> Vec<Result<Tally>> {
        items
            .par_iter()
            .enumerate()
            .map(|(i, x)| f(i, x))
            .collect()
    };
    let results = match thread_count() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let mut total = Tally::default();
    for r in results {
        total.merge(r?);
    }
    Ok(total)
}

/// Compact description used in failure details.
pub fn describe(g: &Graph) -> String {
    let mut s = format!("n={} [", g.n());
    for (i, e) in g.edges().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{}-{}", e.u, e.v).unwrap();
        if e.weight != DEFAULT_WEIGHT {
            write!(s, ":{}", e.weight).unwrap();
        }
    }
    s.push(']');
    s
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

struct Ctx {
    opts: PebblingOptions,
}

impl Ctx {
    /// Exact `pi_k(G, r)`, checking the basic lower bound along the way.
    fn exact(&self, g: &Graph, r: Vertex, k: u64, t: &mut Tally) -> Result<Pebbling> {
        let p = pebbling_number(g, r, k, self.opts)?;
        if k == 1 && g.has_uniform_weight(DEFAULT_WEIGHT) {
            let ecc = g.eccentricity(r);
            let lb = (g.n() as u64).max(1u64 << ecc.min(63));
            t.check(LOWER_BOUND, p.value >= lb, || {
                format!("{} r={r}: pi={} < {lb}", describe(g), p.value)
            });
        }
        Ok(p)
    }

    fn exact_global(&self, g: &Graph, k: u64, t: &mut Tally) -> Result<u64> {
        let mut best = 0;
        for r in 0..g.n() {
            best = best.max(self.exact(g, r, k, t)?.value);
        }
        Ok(best)
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let (dn, dk, dt) = suite.defaults();
    let max_n = params.max_n.unwrap_or(dn);
    let k = params.k.unwrap_or(dk);
    let trials = params.trials.unwrap_or(dt);
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let ctx = Ctx {
        opts: PebblingOptions {
            budget: params.budget,
            ..Default::default()
        },
    };
    let seed = params.seed;
    let (instances, tally) = match suite {
        Suite::Known => known(&ctx, max_n, k)?,
        Suite::Trees => trees(&ctx, max_n, k, seed)?,
        Suite::Weighted => weighted(&ctx, max_n, k, trials, seed)?,
        Suite::Cliqueblocks => clique_blocks(&ctx, max_n, k, trials, seed)?,
        Suite::Blockbound => block_bound(&ctx, max_n, k, trials, seed)?,
        Suite::Diam2 => diameter_two(&ctx, max_n, k)?,
        Suite::Extremal => extremal(&ctx, k)?,
        Suite::Cheap => cheap(max_n, k, trials, seed)?,
        Suite::Fractional => fractional(&ctx, k)?,
        Suite::Engine => engine(&ctx, max_n, k)?,
    };
    Ok(SuiteReport {
        suite,
        max_n,
        k,
        trials,
        seed,
        instances,
        properties: tally.into_properties(),
    })
}

fn known(ctx: &Ctx, max_n: usize, kmax: u64) -> Result<(u64, Tally)> {
    let mut cases = Vec::new();
    for n in 2..=max_n {
        for k in 1..=kmax {
            cases.push((families::complete(n), k, (n as u64) + 2 * (k - 1), COMPLETE));
        }
    }
    for n in 2..=max_n.min(4) {
        for k in 1..=kmax.min(2) {
            cases.push((families::path(n), k, k << (n - 1), PATH));
        }
    }
    let t = par_tally(&cases, |_, (g, k, expected, name)| {
        let mut t = Tally::default();
        let got = ctx.exact_global(g, *k, &mut t)?;
        t.check(name, got == *expected, || {
            format!("{} k={k}: oracle {got}, expected {expected}", describe(g))
        });
        Ok(t)
    })?;
    Ok((cases.len() as u64, t))
}

fn trees(ctx: &Ctx, max_n: usize, kmax: u64, seed: u64) -> Result<(u64, Tally)> {
    let all: Vec<Graph> = (1..=max_n).flat_map(parent_sequence_trees).collect();
    let t = par_tally(&all, |i, tree| {
        let mut t = Tally::default();
        let mut rng = instance_rng(seed, i);
        let d = describe(tree);
        let maximal = maximal_partition(tree)?;
        for k in 1..=kmax {
            let mut global = 0;
            for r in 0..tree.n() {
                let p = r_maximal_partition(tree, r)?;
                t.check(PARTITION_VALID, p.is_valid_for(tree), || format!("{d} r={r}"));
                let f = f_value(&p, k);
                let oracle = ctx.exact(tree, r, k, &mut t)?;
                global = global.max(oracle.value);
                t.check(TREE_FORMULA, f == BigUint::from(oracle.value), || {
                    format!("{d} r={r} k={k}: f={f} oracle={}", oracle.value)
                });
                let cf = corollary_formula(tree.n(), &p.lengths(), k)?;
                t.check(COROLLARY_IDENTITY, cf == f, || format!("{d} r={r} k={k}: {cf} vs {f}"));
                if k == 1 {
                    let c = unsolvable_config(tree, &p)?;
                    let solvable = is_solvable(tree, &c, r, 1)?.0.is_some();
                    t.check(WITNESS_UNSOLVABLE, !solvable, || format!("{d} r={r}: {c}"));
                    t.check(WITNESS_SIZE, BigUint::from(c.size()) + 1u32 == f, || {
                        format!("{d} r={r}: |C|={} f_1={f}", c.size())
                    });
                }
                let sample = random_configuration(&mut rng, tree.n(), oracle.value, None);
                let greedy = greedy_is_solvable(tree, &sample, r, k)?;
                let ok = greedy.as_ref().is_some_and(|s| verify_solution(tree, &sample, r, k, s));
                t.check(GREEDY, ok, || format!("{d} r={r} k={k}: {sample}"));
            }
            let fm = f_value(&maximal, k);
            t.check(TREE_MAXIMAL, fm == BigUint::from(global), || {
                format!("{d} k={k}: maximal f={fm} pi={global}")
            });
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}

fn weighted(ctx: &Ctx, max_n: usize, kmax: u64, trials: usize, seed: u64) -> Result<(u64, Tally)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Graph> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(2..=max_n.max(2));
            random_weighted_tree(&mut rng, n, &[1, 2, 3])
        })
        .collect();
    let t = par_tally(&all, |_, tree| {
        let mut t = Tally::default();
        let d = describe(tree);
        for r in 0..tree.n() {
            let p = r_maximal_partition(tree, r)?;
            t.check(PARTITION_VALID, p.is_valid_for(tree), || format!("{d} r={r}"));
            for k in 1..=kmax {
                let f = f_value(&p, k);
                let oracle = ctx.exact(tree, r, k, &mut t)?.value;
                t.check(WEIGHTED_BOUND, BigUint::from(oracle) <= f, || {
                    format!("{d} r={r} k={k}: oracle={oracle} f={f}")
                });
            }
            let c = unsolvable_config(tree, &p)?;
            let solvable = is_solvable(tree, &c, r, 1)?.0.is_some();
            t.check(WEIGHTED_WITNESS, !solvable, || format!("{d} r={r}: {c}"));
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}

/// The fixed catalog of clique-block graphs.
pub fn clique_block_catalog() -> Vec<(&'static str, Graph)> {
    vec![
        ("bowtie", families::bowtie()),
        ("K4 with pendant triangle", families::k4_with_pendant_triangle()),
        ("three triangles in a path", families::triangle_path(3)),
        ("star of three triangles", families::friendship(3)),
    ]
}

/// Random graph whose blocks are `K_2`, `K_3` or `K_4`.
fn random_clique_block<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let g = random_block_graph(rng, max_n);
        if pebblekit_core::is_clique_block(&g) {
            return g;
        }
    }
}

fn clique_blocks(ctx: &Ctx, max_n: usize, kmax: u64, trials: usize, seed: u64) -> Result<(u64, Tally)> {
    let mut all: Vec<Graph> = clique_block_catalog().into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.extend((0..trials).map(|_| random_clique_block(&mut rng, max_n)));
    let t = par_tally(&all, |i, g| {
        let mut t = Tally::default();
        let d = describe(g);
        let mut global = vec![0u64; kmax as usize];
        for r in 0..g.n() {
            let tree = g.bfs_spanning_tree(r).to_graph();
            let mut values = Vec::new();
            for k in 1..=kmax.max(2) {
                let cb = clique_block_pebbling(g, r, k)?;
                values.push((cb.value.clone(), cb.partition.lengths()));
                if k > kmax {
                    continue;
                }
                let oracle = ctx.exact(g, r, k, &mut t)?.value;
                let on_tree = ctx.exact(&tree, r, k, &mut t)?.value;
                t.check(CLIQUE_FORMULA, cb.value == BigUint::from(oracle), || {
                    format!("{d} r={r} k={k}: formula={} oracle={oracle}", cb.value)
                });
                t.check(CLIQUE_TREE, oracle == on_tree, || {
                    format!("{d} r={r} k={k}: G={oracle} T={on_tree}")
                });
                let slot = &mut global[k as usize - 1];
                *slot = (*slot).max(oracle);
            }
            let slope = values[0].1.first().map_or(BigUint::from(1u32), |&a| BigUint::from(1u32) << a);
            for (j, (v, _)) in values.iter().enumerate() {
                let expected = &values[0].0 + &slope * BigUint::from(j);
                t.check(CLIQUE_AFFINE, *v == expected, || format!("{d} r={r} k={}: {v}", j + 1));
            }
        }
        if i == 0 {
            for (j, &pi) in global.iter().enumerate() {
                let k = j as u64 + 1;
                t.check(BOWTIE, pi == 4 * k + 2, || format!("k={k}: {pi}"));
            }
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}

fn block_bound(ctx: &Ctx, max_n: usize, kmax: u64, trials: usize, seed: u64) -> Result<(u64, Tally)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Graph> = (0..trials).map(|_| random_block_graph(&mut rng, max_n)).collect();
    let t = par_tally(&all, |_, g| {
        let mut t = Tally::default();
        let d = describe(g);
        for r in 0..g.n() {
            for k in 1..=kmax {
                let b = blockcut_bound(g, r, k, ctx.opts.budget)?;
                if k == 1 {
                    let tree = &b.b_prime.tree;
                    let ok = tree.is_tree()
                        && b.b_prime.nodes[0] == BNode::Aux
                        && tree.degree(0) == 1
                        && tree.weight(0, 1) == Some(1);
                    t.check(BPRIME_SHAPE, ok, || format!("{d} r={r}"));
                }
                let oracle = ctx.exact(g, r, k, &mut t)?.value;
                t.check(BLOCKCUT, b.value >= BigUint::from(oracle), || {
                    format!("{d} r={r} k={k}: bound={} oracle={oracle}", b.value)
                });
            }
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}

fn diameter_two(ctx: &Ctx, max_n: usize, kmax: u64) -> Result<(u64, Tally)> {
    let all: Vec<Graph> = (1..=max_n)
        .flat_map(connected_graphs)
        .filter(|g| g.diameter() <= 2)
        .collect();
    let t = par_tally(&all, |_, g| {
        let mut t = Tally::default();
        let n = g.n() as u64;
        for k in 1..=kmax {
            let pi = ctx.exact_global(g, k, &mut t)?;
            if k == 1 {
                t.check(PSV, pi <= psv_bound(n), || format!("{}: pi_1={pi}", describe(g)));
            }
            t.check(KPD2, pi <= kpd2_bound(n, k), || format!("{} k={k}: pi={pi}", describe(g)));
            t.observe(CONJECTURE, pi <= conjectured_bound(n, k), || {
                format!("{} k={k}: pi={pi}", describe(g))
            });
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}

fn extremal(ctx: &Ctx, kmax: u64) -> Result<(u64, Tally)> {
    let mut t = Tally::default();
    let specs = [ExtremalSpec::isolated(1, 1, 1, 1), ExtremalSpec::isolated(0, 0, 0, 0)];
    for (i, spec) in specs.iter().enumerate() {
        let x = build_extremal(spec)?;
        let g = &x.graph;
        let n = g.n() as u64;
        t.check(EXTREMAL_DIAMETER, g.diameter() == 2, || describe(g));
        let top = if i == 0 { kmax } else { 1 };
        for k in 1..=top {
            let c = extremal_config(&x, k)?;
            t.check(EXTREMAL_SIZE, c.size() + 4 == n + 4 * k, || format!("k={k}: {c}"));
            let mut solver = Solver::new(g, x.root(), search_opts(ctx))?;
            let solvable = solver.is_solvable(&c, k)?;
            t.check(EXTREMAL_UNSOLVABLE, !solvable, || format!("{} k={k}: {c}", describe(g)));
        }
    }
    Ok((specs.len() as u64, t))
}

fn search_opts(ctx: &Ctx) -> SearchOptions {
    SearchOptions {
        prune: ctx.opts.prune,
        budget: ctx.opts.budget,
        ..Default::default()
    }
}

fn check_pattern(t: &mut Tally, g: &Graph, c: &Configuration, r: Vertex) -> Result<bool> {
    let Some(s) = detect_cheap(g, c, r)? else {
        return Ok(false);
    };
    let ok = verify_solution(g, c, r, 1, &s.solution)
        && solution_cost(g, c, &s.solution)? == s.pattern.cost()
        && s.pattern.cost() <= 7;
    t.check(PATTERN_COST, ok, || format!("{} r={r} {c}: {}", describe(g), s.pattern));
    Ok(true)
}

fn cheap(max_n: usize, kmax: u64, trials: usize, seed: u64) -> Result<(u64, Tally)> {
    let ids: Vec<usize> = (0..trials).collect();
    let t = par_tally(&ids, |i, _| {
        let mut t = Tally::default();
        let mut rng = instance_rng(seed, i);
        let n = rng.gen_range(3..=max_n.max(3));
        let k = rng.gen_range(1..=kmax);
        let g = random_diameter_two(&mut rng, n);
        let r = rng.gen_range(0..n);
        let big = random_configuration(&mut rng, n, kpd2_bound(n as u64, k), Some(r));
        let found = check_pattern(&mut t, &g, &big, r)?;
        t.check(DETECTED, found, || format!("{} r={r} k={k}: {big}", describe(&g)));

        let size = rng.gen_range(1..=n as u64 + 1);
        let small = random_configuration(&mut rng, n, size, Some(r));
        if !check_pattern(&mut t, &g, &small, r)? {
            let audit = audit_claim(&g, &small, r)?;
            t.check(AUDIT, audit.passed(), || {
                let failed: Vec<_> = audit.checks.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
                format!("{} r={r} {small}: {}", describe(&g), failed.join(","))
            });
            t.check(NO_CHEAP_SMALL, small.size() <= n as u64, || {
                format!("{} r={r} {small}", describe(&g))
            });
        }
        Ok(t)
    })?;
    Ok((trials as u64, t))
}

fn fractional(ctx: &Ctx, kmax: u64) -> Result<(u64, Tally)> {
    let mut t = Tally::default();
    let bowtie = families::bowtie();
    let mut prev: Option<Ratio<u64>> = None;
    for k in 1..=4u64.max(kmax) {
        let formula = (0..bowtie.n())
            .map(|r| clique_block_pebbling(&bowtie, r, k).map(|c| c.value))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .expect("five roots");
        let formula: u64 = formula.try_into().expect("small value");
        let ratio = Ratio::new(formula, k);
        t.check(FRACTIONAL_FORMULA, ratio == Ratio::new(4 * k + 2, k), || {
            format!("k={k}: {ratio}")
        });
        let decreasing = prev.is_none_or(|p| ratio < p) && ratio > Ratio::from_integer(4);
        t.check(FRACTIONAL_TREND, decreasing, || format!("bowtie k={k}: {ratio}"));
        prev = Some(ratio);
        if k <= kmax {
            let oracle = ctx.exact_global(&bowtie, k, &mut t)?;
            t.check(FRACTIONAL_ORACLE, oracle == formula, || {
                format!("bowtie k={k}: oracle {oracle}, formula {formula}")
            });
        }
    }
    for g in [families::complete(4), families::path(3)] {
        let est = fractional_estimate(&g, kmax, ctx.opts)?;
        let limit: u64 = est.limit.clone().try_into().expect("small limit");
        let limit = Ratio::from_integer(limit);
        let ok = est.ratios.windows(2).all(|w| w[1] <= w[0]) && est.ratios.iter().all(|&x| x >= limit);
        t.check(FRACTIONAL_TREND, ok, || format!("{}: {:?}", describe(&g), est.ratios));
    }
    Ok((3, t))
}

fn engine(ctx: &Ctx, max_n: usize, kmax: u64) -> Result<(u64, Tally)> {
    let all: Vec<Graph> = (1..=max_n).flat_map(connected_graphs).collect();
    let t = par_tally(&all, |_, g| {
        let mut t = Tally::default();
        let d = describe(g);
        for r in 0..g.n() {
            for k in 1..=kmax {
                let on = ctx.exact(g, r, k, &mut t)?;
                let off_opts = PebblingOptions {
                    prune: false,
                    ..ctx.opts
                };
                let off = pebbling_number(g, r, k, off_opts)?;
                t.check(PRUNING, on.value == off.value, || {
                    format!("{d} r={r} k={k}: {} vs {}", on.value, off.value)
                });
                let w = &on.witness;
                let unsolvable = is_solvable(g, w, r, k)?.0.is_none();
                t.check(WITNESS_MAXIMAL, unsolvable && w.size() + 1 == on.value, || {
                    format!("{d} r={r} k={k}: {w}")
                });
                for v in 0..g.n() {
                    let mut c = w.clone();
                    c[v] += 1;
                    let Some(s) = is_solvable(g, &c, r, k)?.0 else {
                        t.check(SOLUTIONS_VERIFY, false, || format!("{d} r={r} k={k}: {c} unsolved"));
                        continue;
                    };
                    t.check(SOLUTIONS_VERIFY, verify_solution(g, &c, r, k, &s), || {
                        format!("{d} r={r} k={k}: {c}")
                    });
                    let ok = normalize_solution(g, &c, &s)
                        .is_ok_and(|ns| is_acyclic(g.n(), &ns.moves) && verify_solution(g, &c, r, k, &ns));
                    t.check(NORMALIZED, ok, || format!("{d} r={r} k={k}: {c}"));
                }
            }
        }
        Ok(t)
    })?;
    Ok((all.len() as u64, t))
}
