//! Subcommand implementations. Each returns a report; printing and exit
//! codes are left to the binary.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use num_bigint::BigUint;
use pebblekit_core::io::{parse_configuration, parse_edge_list, write_configuration, write_edge_list};
use pebblekit_core::partition::PathPartition;
use pebblekit_core::{
    audit_claim, block_cutpoint_graph, blockcut_bound, build_extremal, clique_block_pebbling,
    detect_cheap, extremal_config, f_value, families, is_clique_block, kpd2_bound,
    maximal_partition, pebbling_number, pebbling_number_global, psv_bound, r_maximal_partition,
    Configuration, Error, ExtremalSpec, LabeledGraph, PebblingOptions, Vertex,
};
use pebblekit_core::diam2::conjectured_bound;
use pebblekit_core::bounds::BNode;

use crate::report::{InputDigest, RunReport, Section};
use crate::suites::{run_suite, Suite, SuiteParams};

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge-list file.
    pub graph: String,
    /// Root vertex (id or label).
    #[arg(long)]
    pub root: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Cap on search states explored per exact computation.
    #[arg(long = "budget-states")]
    pub budget_states: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Tree,
    Blockcut,
    Cliqueblock,
    Diam2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Path,
    Cycle,
    Star,
    Bowtie,
    Friendship,
    TrianglePath,
    K4PendantTriangle,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Generate {
    /// The diameter-two extremal graph with its unsolvable configuration.
    Extremal {
        #[arg(long, default_value_t = 0)]
        hp: usize,
        #[arg(long, default_value_t = 0)]
        hq: usize,
        #[arg(long, default_value_t = 0)]
        hr: usize,
        #[arg(long, default_value_t = 0)]
        hc: usize,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Also write the configuration to this file.
        #[arg(long = "config-out")]
        config_out: Option<String>,
    },
    /// A named graph family.
    Family {
        #[arg(value_enum)]
        family: Family,
        /// Vertex count, or number of triangles for friendship and
        /// triangle-path.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Exact pebbling number, rooted or over all roots.
    Compute {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Disable potential pruning in the solvability search.
        #[arg(long)]
        no_prune: bool,
    },
    /// A structural bound or exact formula.
    Bound {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, value_enum)]
        method: BoundMethod,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The r-maximal path partition of a tree and its f-values.
    Partition {
        #[command(flatten)]
        g: GraphArgs,
        /// Values of k to evaluate; repeatable.
        #[arg(long, default_values_t = [1u64])]
        k: Vec<u64>,
    },
    /// Blocks and cut vertices.
    Blocks {
        /// Edge-list file.
        graph: String,
    },
    /// Print a graph in edge-list format.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Look for a cheap solution in a diameter-two graph.
    Detect {
        #[command(flatten)]
        g: GraphArgs,
        /// Configuration file.
        config: String,
    },
    /// Check the counting statements on a configuration without cheap
    /// solutions.
    Audit {
        #[command(flatten)]
        g: GraphArgs,
        /// Configuration file.
        config: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        /// Largest k checked.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// What a command produced: a report, or raw text (for `generate`).
pub enum Output {
    Report(RunReport),
    Text(String),
}

struct Loaded {
    lg: LabeledGraph,
    digest: InputDigest,
}

fn load_graph(path: &str) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("reading {path}"))?;
    let text = String::from_utf8_lossy(&bytes);
    let lg = parse_edge_list(&text).map_err(|e| anyhow::Error::new(e).context(format!("parsing {path}")))?;
    Ok(Loaded {
        lg,
        digest: InputDigest::new(path, &bytes),
    })
}

fn load_config(path: &str, lg: &LabeledGraph) -> Result<(Configuration, InputDigest)> {
    let bytes = fs::read(path).with_context(|| format!("reading {path}"))?;
    let c = parse_configuration(&String::from_utf8_lossy(&bytes), lg)
        .map_err(|e| anyhow::Error::new(e).context(format!("parsing {path}")))?;
    c.check_len(&lg.graph)?;
    Ok((c, InputDigest::new(path, &bytes)))
}

fn resolve_root(lg: &LabeledGraph, root: &Option<String>) -> Result<Option<Vertex>> {
    match root {
        None => Ok(None),
        Some(tok) => match lg.vertex(tok) {
            Some(v) => Ok(Some(v)),
            None => Err(Error::VertexOutOfRange {
                vertex: tok.parse().unwrap_or(usize::MAX),
                n: lg.graph.n(),
            }
            .into()),
        },
    }
}

fn graph_section(lg: &LabeledGraph) -> Section {
    let g = &lg.graph;
    let mut s = Section::new("graph")
        .field("n", g.n())
        .field("edges", g.edges().len())
        .field("diameter", g.diameter());
    if lg.labels.iter().enumerate().any(|(i, l)| *l != i.to_string()) {
        s.set("labels", &lg.labels);
    }
    s
}

fn partition_lines(p: &PathPartition, labels: &[String]) -> Vec<String> {
    p.paths
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let verts: Vec<&str> = q.vertices.iter().map(|&v| labels[v].as_str()).collect();
            format!("P_{}: {} | a_{}={} w={}", i + 1, verts.join(" "), i + 1, q.len(), q.weight)
        })
        .collect()
}

fn opts(budget: &BudgetArgs, prune: bool) -> PebblingOptions {
    PebblingOptions {
        prune,
        budget: budget.budget_states,
        lower_bound: None,
    }
}

pub fn run(cmd: &Command, echo: &str) -> Result<Output> {
    let mut report = RunReport::new(echo);
    match cmd {
        Command::Compute { g, k, budget, no_prune } => {
            let loaded = load_graph(&g.graph)?;
            report.inputs.push(loaded.digest);
            let graph = &loaded.lg.graph;
            report.sections.push(graph_section(&loaded.lg));
            let opts = opts(budget, !no_prune);
            let mut s = Section::new("pebbling number").field("k", k);
            let (value, lower) = match resolve_root(&loaded.lg, &g.root)? {
                Some(r) => {
                    let p = pebbling_number(graph, r, *k, opts)?;
                    s.set("root", r);
                    s.set("value", p.value);
                    s.set("witness", p.witness.counts());
                    s.set("explored", p.stats.explored);
                    s.set("pruned", p.stats.pruned);
                    s.set("memo_hits", p.stats.memo_hits);
                    (p.value, 1u64 << graph.eccentricity(r).min(63))
                }
                None => {
                    let p = pebbling_number_global(graph, *k, opts)?;
                    s.set("root", "all");
                    s.set("value", p.value);
                    s.set("maximizing_root", p.root);
                    let best = &p.per_root[p.root];
                    s.set("witness", best.witness.counts());
                    for q in &p.per_root {
                        s.line(format!("root {}: {}", q.root, q.value));
                    }
                    (p.value, 1u64 << graph.diameter().min(63))
                }
            };
            if *k == 1 && graph.has_uniform_weight(2) {
                let lb = lower.max(graph.n() as u64);
                s.set("lower_bound", lb);
                report.passed = value >= lb;
            }
            report.sections.push(s);
        }
        Command::Bound { g, method, k, budget } => {
            let loaded = load_graph(&g.graph)?;
            report.inputs.push(loaded.digest);
            report.sections.push(graph_section(&loaded.lg));
            let root = resolve_root(&loaded.lg, &g.root)?;
            report.sections.push(bound(&loaded.lg, *method, root, *k, budget)?);
        }
        Command::Partition { g, k } => {
            let loaded = load_graph(&g.graph)?;
            report.inputs.push(loaded.digest);
            let graph = &loaded.lg.graph;
            let p = match resolve_root(&loaded.lg, &g.root)? {
                Some(r) => r_maximal_partition(graph, r)?,
                None => maximal_partition(graph)?,
            };
            let mut s = Section::new("partition")
                .field("root", &loaded.lg.labels[p.root])
                .field("paths", p.paths.len());
            for line in partition_lines(&p, &loaded.lg.labels) {
                s.line(line);
            }
            for &k in k {
                s.line(format!("f_{k} = {}", f_value(&p, k)));
            }
            report.sections.push(s);
        }
        Command::Blocks { graph } => {
            let loaded = load_graph(graph)?;
            report.inputs.push(loaded.digest);
            let g = &loaded.lg.graph;
            let bc = block_cutpoint_graph(g);
            let mut s = Section::new("blocks")
                .field("blocks", bc.blocks.len())
                .field("cut_vertices", &bc.cut_vertices)
                .field("clique_blocks", is_clique_block(g));
            for (i, b) in bc.blocks.iter().enumerate() {
                let vs: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                s.line(format!("B_{i}: {}", vs.join(" ")));
            }
            for (b, c) in &bc.tree_edges {
                s.line(format!("B_{b} - {c}"));
            }
            report.sections.push(s);
        }
        Command::Generate { what } => return generate(what).map(Output::Text),
        Command::Detect { g, config } => {
            let loaded = load_graph(&g.graph)?;
            let (c, cd) = load_config(config, &loaded.lg)?;
            report.inputs.extend([loaded.digest, cd]);
            let r = resolve_root(&loaded.lg, &g.root)?.unwrap_or(0);
            let mut s = Section::new("cheap solution").field("root", r).field("size", c.size());
            match detect_cheap(&loaded.lg.graph, &c, r)? {
                Some(found) => {
                    s.set("pattern", found.pattern.to_string());
                    s.set("cost", found.pattern.cost());
                    s.set("witness", &found.witness);
                    for m in &found.solution.moves {
                        s.line(m.to_string());
                    }
                }
                None => s.set("pattern", "none"),
            }
            report.sections.push(s);
        }
        Command::Audit { g, config } => {
            let loaded = load_graph(&g.graph)?;
            let (c, cd) = load_config(config, &loaded.lg)?;
            report.inputs.extend([loaded.digest, cd]);
            let r = resolve_root(&loaded.lg, &g.root)?.unwrap_or(0);
            let audit = audit_claim(&loaded.lg.graph, &c, r)?;
            let st = &audit.stats;
            let mut s = Section::new("claim audit")
                .field("root", r)
                .field("n_0", st.n_by_count[0].len())
                .field("n_1", st.n_by_count[1].len())
                .field("n_2", st.n_by_count[2].len())
                .field("n_3", st.n_by_count[3].len())
                .field("n_2r", st.n2r.len())
                .field("n_3r", st.n3r.len())
                .field("n_33", st.n33.len())
                .field("n_0_prime", st.n0_prime.len());
            for check in &audit.checks {
                s.line(format!("{}: {}", check.name, if check.holds { "pass" } else { "FAIL" }));
            }
            report.passed = audit.passed();
            report.sections.push(s);
        }
        Command::Verify { suite, max_n, k, trials, seed, budget } => {
            let params = SuiteParams {
                max_n: *max_n,
                k: *k,
                trials: *trials,
                seed: *seed,
                budget: budget.budget_states,
            };
            let r = run_suite(*suite, &params)?;
            report.seed = Some(*seed);
            let mut s = Section::new(format!("verify {}", suite.name()))
                .field("max_n", r.max_n)
                .field("k", r.k)
                .field("trials", r.trials)
                .field("instances", r.instances);
            for p in &r.properties {
                let status = match (p.passed(), p.informational) {
                    (_, true) => "observed",
                    (true, false) => "pass",
                    (false, false) => "FAIL",
                };
                s.line(format!("{status} {}/{} {}", p.checked - p.failed, p.checked, p.name));
                if let Some(f) = &p.first_failure {
                    s.line(format!("  first counterexample: {f}"));
                }
            }
            report.passed = r.passed();
            report.sections.push(s);
        }
    }
    Ok(Output::Report(report))
}

fn bound(lg: &LabeledGraph, method: BoundMethod, root: Option<Vertex>, k: u64, budget: &BudgetArgs) -> Result<Section> {
    let mut s = Section::new(match method {
        BoundMethod::Tree => "bound tree",
        BoundMethod::Blockcut => "bound blockcut",
        BoundMethod::Cliqueblock => "bound cliqueblock",
        BoundMethod::Diam2 => "bound diam2",
    })
    .field("k", k);
    let g = &lg.graph;
    match method {
        BoundMethod::Tree => {
            let p = match root {
                Some(r) => r_maximal_partition(g, r)?,
                None => maximal_partition(g)?,
            };
            s.set("root", p.root);
            s.set("value", f_value(&p, k).to_string());
            s.lines.extend(partition_lines(&p, &lg.labels));
        }
        BoundMethod::Blockcut => {
            let r = root.unwrap_or(0);
            let b = blockcut_bound(g, r, k, budget.budget_states)?;
            s.set("root", r);
            s.set("value", b.value.to_string());
            for (i, node) in b.b_prime.nodes.iter().enumerate() {
                let what = match node {
                    BNode::Aux => "r'".to_string(),
                    BNode::Root(v) => format!("root {v}"),
                    BNode::Block(j) => format!("block B_{j}"),
                    BNode::Cut(v) => format!("cut vertex {v}"),
                };
                s.line(format!("node {i}: {what}"));
            }
            for e in b.b_prime.tree.edges() {
                s.line(format!("edge {} - {} w={}", e.u, e.v, e.weight));
            }
            // partition of B', whose nodes are listed above
            let ids: Vec<String> = (0..b.b_prime.nodes.len()).map(|i| i.to_string()).collect();
            s.lines.extend(partition_lines(&b.partition, &ids));
        }
        BoundMethod::Cliqueblock => {
            let roots: Vec<Vertex> = match root {
                Some(r) => vec![r],
                None => (0..g.n()).collect(),
            };
            let mut best: Option<(BigUint, Vertex)> = None;
            for &r in &roots {
                let v = clique_block_pebbling(g, r, k)?;
                s.line(format!("root {r}: {} (a = {:?})", v.value, v.partition.lengths()));
                if best.as_ref().is_none_or(|(b, _)| v.value > *b) {
                    best = Some((v.value, r));
                }
            }
            let (value, r) = best.expect("at least one root");
            s.set("root", if root.is_some() { r.to_string() } else { "all".to_string() });
            s.set("value", value.to_string());
        }
        BoundMethod::Diam2 => {
            let d = g.diameter();
            if d > 2 {
                return Err(Error::DiameterTooLarge(d).into());
            }
            let n = g.n() as u64;
            let kpd2 = kpd2_bound(n, k);
            let value = if k == 1 { kpd2.min(psv_bound(n)) } else { kpd2 };
            s.set("value", value);
            s.line(format!("n + 7k - 6 = {n} + {} - 6 = {kpd2}", 7 * k));
            if k == 1 {
                s.line(format!("n + 1 = {}", psv_bound(n)));
            }
            s.line(format!("conjectured n + 4k - 3 = {} (unproven)", conjectured_bound(n, k)));
        }
    }
    Ok(s)
}

fn generate(what: &Generate) -> Result<String> {
    match what {
        Generate::Extremal { hp, hq, hr, hc, k, config_out } => {
            let x = build_extremal(&ExtremalSpec::isolated(*hp, *hq, *hr, *hc))?;
            let c = extremal_config(&x, *k)?;
            let mut out = write_edge_list(&x.graph);
            out.push_str(&format!("# root {}\n# configuration k={k}: {c}\n", x.root()));
            if let Some(path) = config_out {
                fs::write(Path::new(path), write_configuration(&c)).with_context(|| format!("writing {path}"))?;
            }
            Ok(out)
        }
        Generate::Family { family, n } => {
            let n = *n;
            let g = match family {
                Family::Complete => families::complete(n.max(1)),
                Family::Path => families::path(n.max(1)),
                Family::Cycle => {
                    if n < 3 {
                        bail!("cycles need at least 3 vertices");
                    }
                    families::cycle(n)
                }
                Family::Star => families::star(n.max(1)),
                Family::Bowtie => families::bowtie(),
                Family::Friendship => families::friendship(n),
                Family::TrianglePath => families::triangle_path(n),
                Family::K4PendantTriangle => families::k4_with_pendant_triangle(),
            };
            Ok(write_edge_list(&g))
        }
    }
}
