use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use udag_core::markov::maximal_ancestral_sets_for_node;
use udag_core::{
    check_causal_identity, count_graphs, decompose, factorizes_ancestral, factorizes_components, gibbs_run,
    markov_equivalent, maximal_ancestral_sets_fact, moralize_minimal_ancestral, non_separable_pairs,
    oracle_from_distribution, oracle_from_graph, sample_markov_fixture_with_cards, satisfies_global, satisfies_local,
    satisfies_pairwise, separated_moral, separated_reach, AnmConfig, DiscreteDistribution, GraphClass, HsicMethod,
    IndependenceOracle, KernelRidge, LearnerConfig, MarkovReport, NodeSet, SeparationQuery, Strictness, Udag,
    CI_TOLERANCE,
};

use udag::data::read_dataset;
use udag::distribution::{read_distribution, write_distribution, write_samples_csv};
use udag::dot::{udag_to_dot, ug_to_dot};
use udag::error::read_file;
use udag::oracle::{parse_oracle, write_oracle};
use udag::parallel::{learn_causal_parallel, learn_parallel, pool};
use udag::text::{format_node_set, parse_node_set, read_graph, reorder, write_graph, write_ug};
use udag::{json, Error, Result};

/// Graphs with directed and undirected edges: separation, Markov checks and
/// structure learning.
#[derive(Parser)]
#[command(name = "udag", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Udag,
    Dag,
    Lwf,
}

impl From<Class> for GraphClass {
    fn from(c: Class) -> Self {
        match c {
            Class::Udag => GraphClass::Udag,
            Class::Dag => GraphClass::Dag,
            Class::Lwf => GraphClass::LwfCg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Local,
    Pairwise,
    Global,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Test {
    Gamma,
    Perm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Regressor {
    Kridge,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Moral,
    Reach,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    /// DAGs and undirected graphs only; guaranteed Markov.
    Exact,
    /// Any graph; component-chain form.
    Components,
}

#[derive(clap::Args)]
struct Query {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short = 'x', long)]
    x: String,
    #[arg(short = 'y', long)]
    y: String,
    /// Conditioning set; empty by default.
    #[arg(short = 'z', long, default_value = "")]
    z: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Whether Z separates X from Y (always JSON).
    Separate {
        #[command(flatten)]
        q: Query,
        #[arg(long, value_enum, default_value = "moral")]
        criterion: Criterion,
    },
    /// Reachability sets U1, U2, U3 of the separation closure (always JSON).
    Reach {
        #[command(flatten)]
        q: Query,
    },
    /// Moral graph.
    Moralize {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Minimal ancestral sets, components, boundaries and star graphs.
    Decompose {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// Whether two graphs have the same separations.
    Equivalent {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Non-adjacent pairs that no set separates.
    Nonseparable {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// Replaces the minimal ancestral set W by its moral graph.
    Transform {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        w: String,
    },
    /// Local, pairwise and global Markov properties of a distribution.
    CheckMarkov {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        distribution: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        property: Property,
        #[arg(long, default_value_t = CI_TOLERANCE)]
        tol: f64,
    },
    /// Factorization over ancestral sets and over components.
    CheckFactorization {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        distribution: PathBuf,
        /// Check every ancestral set, not only the maximal ones.
        #[arg(long)]
        all_ancestral: bool,
        #[arg(long, default_value_t = CI_TOLERANCE)]
        tol: f64,
    },
    /// Exhaustive search for a sparsest graph consistent with an oracle.
    #[command(group(clap::ArgGroup::new("source").required(true)))]
    LearnExact {
        #[arg(long, value_enum, default_value = "udag")]
        class: Class,
        #[arg(long, group = "source")]
        oracle: Option<PathBuf>,
        #[arg(long, group = "source")]
        distribution: Option<PathBuf>,
        #[arg(short, long, group = "source")]
        graph: Option<PathBuf>,
        /// Return every optimum instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1.0)]
        line_weight: f64,
        #[arg(long, default_value_t = 1.0)]
        arrow_weight: f64,
        #[arg(long)]
        max_nodes: Option<usize>,
        /// Independence tolerance for --distribution.
        #[arg(long, default_value_t = CI_TOLERANCE)]
        tol: f64,
    },
    /// Additive-noise search over sampled graphs.
    LearnAnm {
        #[arg(long)]
        data: PathBuf,
        /// Number of sampled candidate graphs.
        #[arg(short = 'L', long = "L", default_value_t = 100)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "gamma")]
        test: Test,
        #[arg(long, default_value_t = 1000)]
        permutations: usize,
        #[arg(long, value_enum, default_value = "kridge")]
        regressor: Regressor,
        #[arg(long, default_value_t = KernelRidge::default().lambda)]
        lambda: f64,
        /// Use the columns as given instead of standardizing them.
        #[arg(long)]
        raw: bool,
        /// Include every scored candidate.
        #[arg(long)]
        candidates: bool,
    },
    /// Gibbs sampling of one component given each boundary configuration.
    Gibbs {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        distribution: PathBuf,
        /// Component index, starting at 1.
        #[arg(long)]
        component: usize,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz output.
    ExportDot {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// Random positive distribution built along the graph.
    Fixture {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated cardinalities in node order; binary by default.
        #[arg(long)]
        cards: Option<String>,
        #[arg(long, value_enum, default_value = "components")]
        kind: FixtureKind,
    },
    /// Draws configurations from a distribution as CSV.
    Sample {
        #[arg(short, long)]
        distribution: PathBuf,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact conditional independence test on a distribution.
    Ci {
        #[arg(short, long)]
        distribution: PathBuf,
        #[arg(short = 'x', long)]
        x: String,
        #[arg(short = 'y', long)]
        y: String,
        #[arg(short = 'z', long, default_value = "")]
        z: String,
        #[arg(long, default_value_t = CI_TOLERANCE)]
        tol: f64,
    },
    /// Scores one graph against data with the additive-noise test.
    Score {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "gamma")]
        test: Test,
        #[arg(long, default_value_t = 1000)]
        permutations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = KernelRidge::default().lambda)]
        lambda: f64,
        #[arg(long)]
        raw: bool,
    },
    /// Number of graphs of a class over n nodes.
    Enumerate {
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "udag")]
        class: Class,
    },
    /// All elementary independences of a graph or a distribution.
    #[command(group(clap::ArgGroup::new("source").required(true)))]
    Oracle {
        #[arg(short, long, group = "source")]
        graph: Option<PathBuf>,
        #[arg(short, long, group = "source")]
        distribution: Option<PathBuf>,
        #[arg(long, default_value_t = CI_TOLERANCE)]
        tol: f64,
    },
    /// Maximal ancestral sets, for one node or for the factorization.
    MaximalSets {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        node: Option<String>,
    },
    /// Distance between each Gibbs update and its parent/neighbour conditional.
    CausalIdentity {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        distribution: PathBuf,
    },
}

fn print_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn sets(names: &[String], s: &[NodeSet]) -> Vec<Vec<String>> {
    s.iter().map(|&w| udag::text::node_names(names, w)).collect()
}

fn text_sets(names: &[String], s: &[NodeSet]) -> String {
    s.iter().map(|&w| format_node_set(names, w) + "\n").collect()
}

/// Graph and distribution over the same variables, the graph put in the
/// distribution's variable order.
fn graph_and_distribution(graph: &Path, distribution: &Path) -> Result<(Udag, DiscreteDistribution)> {
    let g = read_graph(graph)?;
    let p = read_distribution(distribution)?;
    let names: Vec<String> = p.variables().iter().map(|v| v.name.clone()).collect();
    Ok((reorder(&g, &names)?, p))
}

fn query(q: &Query) -> Result<(Udag, SeparationQuery)> {
    let g = read_graph(&q.graph)?;
    let n = g.names();
    let sq = SeparationQuery::new(
        parse_node_set(n, &q.x)?,
        parse_node_set(n, &q.y)?,
        parse_node_set(n, &q.z)?,
    );
    Ok((g, sq))
}

fn hsic(test: Test, permutations: usize, seed: u64) -> HsicMethod {
    match test {
        Test::Gamma => HsicMethod::Gamma,
        Test::Perm => HsicMethod::Permutation { permutations, seed },
    }
}

fn markov_text(r: &MarkovReport) -> String {
    let mut out = format!(
        "{}: {} ({} statements checked)\n",
        r.property.as_str(),
        if r.holds { "holds" } else { "fails" },
        r.checked
    );
    for v in &r.violations {
        out.push_str(&format!("  {}  deviation {:e}\n", v.rendered, v.deviation));
    }
    out
}

fn run(cli: Cli) -> Result<String> {
    let js = cli.json;
    match cli.cmd {
        Cmd::Separate { q, criterion } => {
            let (g, sq) = query(&q)?;
            let separated = match criterion {
                Criterion::Moral => separated_moral(&g, &sq)?,
                Criterion::Reach => separated_reach(&g, &sq)?.0,
            };
            print_json(&json::Separation { separated })
        }
        Cmd::Reach { q } => {
            let (g, sq) = query(&q)?;
            let (separated, state) = separated_reach(&g, &sq)?;
            print_json(&json::Reach::new(g.names(), separated, &state))
        }
        Cmd::Moralize { graph, dot } => {
            let m = read_graph(&graph)?.moral_graph();
            if js {
                print_json(&json::UgJson::new(&m))
            } else if dot {
                Ok(ug_to_dot(&m))
            } else {
                Ok(write_ug(&m))
            }
        }
        Cmd::Decompose { graph } => {
            let g = read_graph(&graph)?;
            let d = decompose(&g);
            let names = g.names();
            if js {
                return print_json(&json::decomposition(names, &d));
            }
            let mut out = String::new();
            for i in 0..d.len() {
                let star: Vec<String> = d.star_graphs[i]
                    .edges()
                    .into_iter()
                    .map(|(a, b)| format!("{}-{}", names[a], names[b]))
                    .collect();
                out.push_str(&format!(
                    "W_{k} = {}  C_{k} = {}  bd(C_{k}) = {}  star: {}\n",
                    format_node_set(names, d.minimal_ancestral_sets[i]),
                    format_node_set(names, d.components[i]),
                    format_node_set(names, d.boundaries[i]),
                    if star.is_empty() {
                        "-".to_string()
                    } else {
                        star.join(" ")
                    },
                    k = i + 1
                ));
            }
            Ok(out)
        }
        Cmd::Equivalent { graph, other } => {
            let g = read_graph(&graph)?;
            let h = reorder(&read_graph(&other)?, g.names())?;
            let equivalent = markov_equivalent(&g, &h)?;
            if js {
                #[derive(Serialize)]
                struct Eq {
                    equivalent: bool,
                }
                print_json(&Eq { equivalent })
            } else {
                Ok(if equivalent { "equivalent\n" } else { "not equivalent\n" }.to_string())
            }
        }
        Cmd::Nonseparable { graph } => {
            let g = read_graph(&graph)?;
            let pairs: Vec<[String; 2]> = non_separable_pairs(&g)
                .into_iter()
                .map(|(a, b)| [g.name(a).to_string(), g.name(b).to_string()])
                .collect();
            if js {
                print_json(&pairs)
            } else {
                Ok(pairs.iter().map(|[a, b]| format!("{a} {b}\n")).collect())
            }
        }
        Cmd::Transform { graph, w } => {
            let g = read_graph(&graph)?;
            let w = parse_node_set(g.names(), &w)?;
            let t = moralize_minimal_ancestral(&g, w)?;
            if js {
                print_json(&write_graph(&t))
            } else {
                Ok(write_graph(&t))
            }
        }
        Cmd::CheckMarkov {
            graph,
            distribution,
            property,
            tol,
        } => {
            let (g, p) = graph_and_distribution(&graph, &distribution)?;
            let mut reports = Vec::new();
            if matches!(property, Property::Local | Property::All) {
                reports.push(satisfies_local(&p, &g, tol)?);
            }
            if matches!(property, Property::Pairwise | Property::All) {
                reports.push(satisfies_pairwise(&p, &g, tol)?);
            }
            if matches!(property, Property::Global | Property::All) {
                reports.push(satisfies_global(&p, &g, tol)?);
            }
            if js {
                let r: Vec<json::Markov> = reports.iter().map(json::Markov::from).collect();
                print_json(&r)
            } else {
                Ok(reports.iter().map(markov_text).collect())
            }
        }
        Cmd::CheckFactorization {
            graph,
            distribution,
            all_ancestral,
            tol,
        } => {
            let (g, p) = graph_and_distribution(&graph, &distribution)?;
            let anc = factorizes_ancestral(&p, &g, tol, !all_ancestral)?;
            let comp = factorizes_components(&p, &g, tol)?;
            let names = g.names();
            if js {
                return print_json(&json::Factorization::new(names, &anc, &comp));
            }
            let mut out = format!(
                "ancestral factorization: {} ({} sets checked)\n",
                if anc.holds { "holds" } else { "fails" },
                anc.checked.len()
            );
            if let Some((w, dev)) = anc.witness {
                out.push_str(&format!(
                    "  fails on {}  deviation {:e}\n",
                    format_node_set(names, w),
                    dev
                ));
            }
            out.push_str(&format!(
                "component factorization: {} (chain deviation {:e})\n",
                if comp.holds { "holds" } else { "fails" },
                comp.chain_deviation
            ));
            Ok(out)
        }
        Cmd::LearnExact {
            class,
            oracle,
            distribution,
            graph,
            all,
            line_weight,
            arrow_weight,
            max_nodes,
            tol,
        } => {
            let (names, o): (Vec<String>, IndependenceOracle) = if let Some(path) = oracle {
                parse_oracle(&read_file(&path)?, None)?
            } else if let Some(path) = distribution {
                let p = read_distribution(&path)?;
                let names = p.variables().iter().map(|v| v.name.clone()).collect();
                (names, oracle_from_distribution(&p, tol)?)
            } else if let Some(path) = graph {
                let g = read_graph(&path)?;
                (g.names().to_vec(), oracle_from_graph(&g)?)
            } else {
                return Err(Error::Invalid(
                    "one of --oracle, --distribution or --graph is required".into(),
                ));
            };
            let cfg = LearnerConfig {
                graph_class: class.into(),
                line_weight,
                arrow_weight,
                return_all_optima: all,
                max_nodes,
            };
            let mut r = pool()?.install(|| learn_parallel(&o, &cfg))?;
            for g in &mut r.graphs {
                *g = g.renamed(names.clone())?;
            }
            if js {
                return print_json(&json::Learned::from(&r));
            }
            let mut out = format!("# objective {} ({} graphs searched)\n", r.objective, r.graphs_searched);
            for (i, g) in r.graphs.iter().enumerate() {
                if i > 0 {
                    out.push_str("\n# ---\n");
                }
                out.push_str(&write_graph(g));
            }
            Ok(out)
        }
        Cmd::LearnAnm {
            data,
            l,
            seed,
            test,
            permutations,
            regressor: Regressor::Kridge,
            lambda,
            raw,
            candidates,
        } => {
            let d = read_dataset(&data)?;
            let cfg = AnmConfig {
                regressor: KernelRidge { lambda },
                test: hsic(test, permutations, seed),
                standardize: !raw,
            };
            let s = pool()?.install(|| learn_causal_parallel(&d, l, seed, &cfg))?;
            if js {
                let cands = if candidates {
                    s.candidates.iter().map(json::Scored::from).collect()
                } else {
                    Vec::new()
                };
                return print_json(&json::CausalSearch {
                    best: json::Scored::from(&s.best),
                    candidates: cands,
                });
            }
            let mut out = format!(
                "# p-value {:e}, statistic {:e}, {} distinct candidates\n",
                s.best.p_value,
                s.best.statistic,
                s.candidates.len()
            );
            out.push_str(&write_graph(&s.best.graph));
            if candidates {
                for c in &s.candidates {
                    out.push_str(&format!(
                        "\n# candidate p-value {:e}\n{}",
                        c.p_value,
                        write_graph(&c.graph)
                    ));
                }
            }
            Ok(out)
        }
        Cmd::Gibbs {
            graph,
            distribution,
            component,
            sweeps,
            seed,
        } => {
            let (g, p) = graph_and_distribution(&graph, &distribution)?;
            let d = decompose(&g);
            if component == 0 || component > d.len() {
                return Err(Error::Invalid(format!("component must be in 1..={}", d.len())));
            }
            let t = gibbs_run(&p, &g, component - 1, sweeps, seed)?;
            if js {
                return print_json(&json::Gibbs::new(g.names(), &d, &t));
            }
            let mut out = format!(
                "C_{} = {} given {}: {} sweeps, max total variation {:.4}\n",
                component,
                format_node_set(g.names(), d.components[t.component]),
                format_node_set(g.names(), d.boundaries[t.component]),
                t.sweeps,
                t.max_total_variation()
            );
            for b in &t.per_boundary {
                out.push_str(&format!("  boundary {:?}: TV {:.4}\n", b.boundary, b.total_variation));
            }
            Ok(out)
        }
        Cmd::ExportDot { graph } => Ok(udag_to_dot(&read_graph(&graph)?)),
        Cmd::Fixture {
            graph,
            seed,
            cards,
            kind,
        } => {
            let g = read_graph(&graph)?;
            let cards: Vec<usize> = match cards {
                None => vec![2; g.n()],
                Some(s) => s
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse()
                            .map_err(|_| Error::Invalid(format!("bad cardinality `{c}`")))
                    })
                    .collect::<Result<_>>()?,
            };
            let strictness = match kind {
                FixtureKind::Exact => Strictness::DagOrUgExact,
                FixtureKind::Components => Strictness::ComponentForm,
            };
            let f = sample_markov_fixture_with_cards(&g, &cards, seed, strictness)?;
            Ok(write_distribution(&f.distribution))
        }
        Cmd::Sample {
            distribution,
            count,
            seed,
        } => {
            let p = read_distribution(&distribution)?;
            let rows = p.sample(&mut ChaCha8Rng::seed_from_u64(seed), count);
            write_samples_csv(&p, &rows)
        }
        Cmd::Ci {
            distribution,
            x,
            y,
            z,
            tol,
        } => {
            let p = read_distribution(&distribution)?;
            let names: Vec<String> = p.variables().iter().map(|v| v.name.clone()).collect();
            let (x, y, z) = (
                parse_node_set(&names, &x)?,
                parse_node_set(&names, &y)?,
                parse_node_set(&names, &z)?,
            );
            if x.is_empty() || y.is_empty() || !(x & y).is_empty() || !(z & (x | y)).is_empty() {
                return Err(Error::Invalid("X and Y must be non-empty and X, Y, Z disjoint".into()));
            }
            let deviation = p.ci_deviation(x, y, z);
            let independent = deviation <= tol;
            if js {
                #[derive(Serialize)]
                struct Ci {
                    independent: bool,
                    deviation: f64,
                }
                print_json(&Ci { independent, deviation })
            } else {
                Ok(format!(
                    "{} (deviation {:e})\n",
                    if independent { "independent" } else { "dependent" },
                    deviation
                ))
            }
        }
        Cmd::Score {
            graph,
            data,
            test,
            permutations,
            seed,
            lambda,
            raw,
        } => {
            let d = read_dataset(&data)?;
            let g = reorder(&read_graph(&graph)?, d.names())?;
            let cfg = AnmConfig {
                regressor: KernelRidge { lambda },
                test: hsic(test, permutations, seed),
                standardize: !raw,
            };
            let s = udag_core::score_udag(&g, &d, &cfg)?;
            if js {
                print_json(&json::Scored::from(&s))
            } else {
                Ok(format!("p-value {:e}, statistic {:e}\n", s.p_value, s.statistic))
            }
        }
        Cmd::Enumerate { n, class } => {
            let count = count_graphs(n, class.into())?;
            if js {
                print_json(&count)
            } else {
                Ok(format!("{count}\n"))
            }
        }
        Cmd::Oracle {
            graph,
            distribution,
            tol,
        } => {
            let (names, o) = if let Some(path) = graph {
                let g = read_graph(&path)?;
                (g.names().to_vec(), oracle_from_graph(&g)?)
            } else {
                let p = read_distribution(&distribution.expect("clap requires a source"))?;
                let names = p.variables().iter().map(|v| v.name.clone()).collect();
                (names, oracle_from_distribution(&p, tol)?)
            };
            Ok(write_oracle(&names, &o))
        }
        Cmd::MaximalSets { graph, node } => {
            let g = read_graph(&graph)?;
            let found = match node {
                Some(a) => {
                    let a = g.index_of(&a).ok_or_else(|| Error::UnknownNode(a.clone()))?;
                    maximal_ancestral_sets_for_node(&g, a)?
                }
                None => maximal_ancestral_sets_fact(&g)?,
            };
            if js {
                print_json(&sets(g.names(), &found))
            } else {
                Ok(text_sets(g.names(), &found))
            }
        }
        Cmd::CausalIdentity { graph, distribution } => {
            let (g, p) = graph_and_distribution(&graph, &distribution)?;
            let devs = check_causal_identity(&p, &g)?;
            if js {
                let v: Vec<json::Identity> = devs.iter().map(|d| json::Identity::new(g.names(), d)).collect();
                print_json(&v)
            } else {
                Ok(devs
                    .iter()
                    .map(|d| format!("C_{} {}: {:e}\n", d.component + 1, g.name(d.node), d.deviation))
                    .collect())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
