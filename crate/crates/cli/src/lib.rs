//! The `hog` command line: argument types, error classification and the
//! dispatcher that turns a parsed command into a rendered report.

pub mod args;
pub mod error;
pub mod report;

use std::io::Read;
use std::path::Path;

use hog_core::euler::{euler_check_with, euler_cycle_with, euler_decompose_with, EulerOptions};
use hog_core::homology::{cycle_basis, positive_cycle_vectors};
use hog_core::homotopy::{attach_cycle, glue_nodes, glue_paths, is_weak_equivalence_cycles_only, Surgery};
use hog_core::io::{self, GraphJson, MorphismJson};
use hog_core::pagerank::connectivity_report;
use hog_core::reflexive::{
    add_degeneracies, add_degeneracies_morphism, induces_nondegenerate_bijection, is_weak_equivalence_reflexive,
    strip_degeneracies,
};
use hog_core::{
    brute_force_weq_check, cofibrant_replacement, count_hom_cycles, decompose_positive_chain, enumerate_hom_cycles,
    fundamental_chain, homology_summary, is_weak_equivalence, minimal_covering_walk, pagerank, scc_decompose, ArcChain,
    DirectedGraph, GraphMorphism, PageRankParams, ReflexiveMorphism, SharedGraph, Walk,
};

pub use args::{Cli, Command, Format, ReflexiveCommand};
pub use error::CliError;
use report::*;

/// Runs one command and returns its rendered output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let mut ctx = Context {
        format: cli.format.into(),
        stdin_used: false,
    };
    let cap = u128::from(cli.cap);
    match &cli.command {
        Command::Scc { graph } => {
            let g = ctx.graph(graph)?;
            let d = scc_decompose(&g);
            emit(
                cli,
                &SccReport {
                    strongly_connected: d.len() == 1,
                    component_count: d.len(),
                    components: d
                        .components
                        .iter()
                        .map(|c| c.iter().map(|&x| g.node_id(x).to_string()).collect())
                        .collect(),
                    condensation: GraphJson::from_graph(&d.condensation),
                },
            )
        }
        Command::Weq {
            domain,
            codomain,
            morphism,
            cycles_only,
            oracle,
        } => {
            let f = ctx.morphism(domain, codomain, morphism)?;
            let verdict = if *cycles_only {
                is_weak_equivalence_cycles_only(&f)?
            } else {
                is_weak_equivalence(&f)?
            };
            let oracle = match oracle {
                Some(n) => Some(
                    brute_force_weq_check(&f, *n, !cycles_only, cap)?
                        .lengths
                        .into_iter()
                        .map(|c| OracleLine {
                            length: c.length,
                            domain_count: c.domain_count,
                            codomain_count: c.codomain_count,
                            bijective: c.bijective,
                        })
                        .collect(),
                ),
                None => None,
            };
            emit(
                cli,
                &WeqReport {
                    weak_equivalence: verdict.is_weak_equivalence,
                    cycles_only: *cycles_only,
                    component_matching: verdict.component_matching,
                    witness: verdict.witness.map(|w| describe_witness(&w, &f)),
                    oracle,
                },
            )
        }
        Command::Cofibrant { graph } => {
            let g = ctx.graph(graph)?.into_shared();
            let c = cofibrant_replacement(&g);
            let mut kept = vec![false; g.arc_count()];
            for &a in c.embedding.arc_map() {
                kept[a.0] = true;
            }
            emit(
                cli,
                &CofibrantReport {
                    graph: GraphJson::from_graph(&c.graph),
                    embedding: MorphismJson::from_morphism(&c.embedding),
                    removed_arcs: g.arcs().filter(|a| !kept[a.0]).map(|a| g.arc_id(a).to_string()).collect(),
                },
            )
        }
        Command::GlueNodes { graph, x, y } => {
            let g = ctx.graph(graph)?.into_shared();
            let s = glue_nodes(&g, g.node(x)?, g.node(y)?)?;
            emit(cli, &surgery_report(&s))
        }
        Command::AttachCycle { graph, at, length } => {
            let g = ctx.graph(graph)?.into_shared();
            let s = attach_cycle(&g, g.node(at)?, *length)?;
            emit(cli, &surgery_report(&s))
        }
        Command::GluePaths { graph, first, second } => {
            let g = ctx.graph(graph)?.into_shared();
            let p1 = Walk::from_arc_ids(&g, &args::arc_list(first))?;
            let p2 = Walk::from_arc_ids(&g, &args::arc_list(second))?;
            let s = glue_paths(&g, &p1, &p2)?;
            emit(cli, &surgery_report(&s))
        }
        Command::Euler {
            graph,
            construct,
            decompose,
            ignore_isolated,
        } => {
            let g = ctx.graph(graph)?;
            let opts = EulerOptions {
                ignore_isolated: *ignore_isolated,
            };
            let check = euler_check_with(&g, opts)?;
            let cycle = if *construct {
                Some(WalkJson::new(&g, &euler_cycle_with(&g, opts)?))
            } else {
                None
            };
            let decomposition = if *decompose {
                let d = euler_decompose_with(&g, opts)?;
                Some(DecompositionJson {
                    base_nodes: d.base.nodes.clone(),
                    base_arcs: d.base.arcs.clone(),
                    steps: d.steps.iter().map(StepJson::from).collect(),
                })
            } else {
                None
            };
            emit(
                cli,
                &EulerJson {
                    eulerian: check.is_eulerian,
                    connected: check.connected,
                    unbalanced: check
                        .balance_violations
                        .iter()
                        .map(|v| Imbalance {
                            node: g.node_id(v.node).to_string(),
                            in_degree: v.in_degree,
                            out_degree: v.out_degree,
                        })
                        .collect(),
                    cycle,
                    decomposition,
                },
            )
        }
        Command::Homology { graph, max_coeff, limit } => {
            let g = ctx.graph(graph)?;
            let s = homology_summary(&g);
            emit(
                cli,
                &HomologyReport {
                    h0_rank: s.h0_rank,
                    h1_rank: s.h1_rank,
                    component_count: s.component_count,
                    basis: cycle_basis(&g).iter().map(chain_map).collect(),
                    positive_cycles: max_coeff.map(|k| positive_cycle_vectors(&g, k, *limit).iter().map(chain_map).collect()),
                },
            )
        }
        Command::Decompose { graph, chain } => {
            let g = ctx.graph(graph)?;
            let u: ArcChain<'_> = match chain {
                Some(path) => io::chain_from_json(&ctx.text(path)?, &g)?,
                None => fundamental_chain(&g),
            };
            let d = decompose_positive_chain(&u)?;
            emit(
                cli,
                &DecomposeReport {
                    length: u.length(),
                    cycles: d
                        .cycles
                        .iter()
                        .zip(&d.multiplicities)
                        .map(|(w, &multiplicity)| CycleJson {
                            multiplicity,
                            walk: WalkJson::new(&g, w),
                        })
                        .collect(),
                },
            )
        }
        Command::Postman { graph } => {
            let g = ctx.graph(graph)?;
            let c = minimal_covering_walk(&g)?;
            emit(
                cli,
                &PostmanReport {
                    n: c.n_of_x,
                    walk: WalkJson::new(&g, &c.walk),
                    extra: g
                        .arcs()
                        .filter(|a| c.extra[a.0] > 0)
                        .map(|a| (g.arc_id(a).to_string(), c.extra[a.0]))
                        .collect(),
                },
            )
        }
        Command::Reflexive { command } => run_reflexive(cli, &mut ctx, command, cap),
        Command::Pagerank {
            graph,
            damping,
            tol,
            max_iter,
        } => {
            let g = ctx.graph(graph)?;
            let r = pagerank(
                &g,
                PageRankParams {
                    damping: *damping,
                    tol: *tol,
                    max_iter: *max_iter,
                },
            )?;
            emit(
                cli,
                &PageRankReport {
                    scores: r.scores.into_iter().collect(),
                    iterations: r.iterations,
                    residual: r.residual,
                    connectivity: connectivity_report(&g),
                },
            )
        }
        Command::HomCount { graph, length, enumerate } => {
            let g = ctx.graph(graph)?;
            let walks = if *enumerate {
                let set = enumerate_hom_cycles(&g, *length, cap)?;
                Some(set.morphisms.iter().map(|w| WalkJson::new(&g, w)).collect())
            } else {
                None
            };
            emit(
                cli,
                &HomCountReport {
                    length: *length,
                    count: count_hom_cycles(&g, *length),
                    walks,
                },
            )
        }
    }
}

fn run_reflexive(cli: &Cli, ctx: &mut Context, command: &ReflexiveCommand, cap: u128) -> Result<String, CliError> {
    match command {
        ReflexiveCommand::Weq {
            domain,
            codomain,
            morphism,
            plain,
            n_max,
        } => {
            let f = if *plain {
                add_degeneracies_morphism(&ctx.morphism(domain, codomain, morphism)?)
            } else {
                let x = io::reflexive_from_json(&ctx.text(domain)?)?;
                let y = io::reflexive_from_json(&ctx.text(codomain)?)?;
                let underlying = io::morphism_from_json(&ctx.text(morphism)?, x.graph().clone(), y.graph().clone())?;
                ReflexiveMorphism::new(x, y, underlying)?
            };
            let verdict = is_weak_equivalence_reflexive(&f)?;
            emit(
                cli,
                &ReflexiveWeqReport {
                    weak_equivalence: verdict.is_weak_equivalence,
                    witness: verdict.witness.map(|w| describe_witness(&w, f.underlying())),
                    n_max: *n_max,
                    nondegenerate_bijection: induces_nondegenerate_bijection(&f, *n_max, cap)?,
                },
            )
        }
        ReflexiveCommand::Strip { graph } => {
            let r = io::reflexive_from_json(&ctx.text(graph)?)?;
            emit(cli, &GraphJson::from_graph(&strip_degeneracies(&r)))
        }
        ReflexiveCommand::Add { graph } => {
            let g = ctx.graph(graph)?;
            emit(cli, &GraphJson::from_reflexive(&add_degeneracies(&g)))
        }
    }
}

fn surgery_report(s: &Surgery) -> SurgeryReport {
    SurgeryReport {
        graph: GraphJson::from_graph(&s.graph),
        map: MorphismJson::from_morphism(&s.morphism),
        map_title: "map",
    }
}

fn emit<R: Render>(cli: &Cli, report: &R) -> Result<String, CliError> {
    Ok(if cli.json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.text()
    })
}

struct Context {
    format: io::GraphFormat,
    stdin_used: bool,
}

impl Context {
    fn text(&mut self, path: &Path) -> Result<String, CliError> {
        if path.as_os_str() == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(CliError::Input("standard input can be read only once".into()));
            }
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
            Ok(s)
        } else {
            Ok(io::read(path)?)
        }
    }

    fn graph(&mut self, path: &Path) -> Result<DirectedGraph, CliError> {
        if path.as_os_str() == "-" {
            let text = self.text(path)?;
            Ok(io::parse_graph(&text, self.format)?)
        } else {
            Ok(io::parse_graph_file(path, self.format)?)
        }
    }

    fn morphism(&mut self, domain: &Path, codomain: &Path, morphism: &Path) -> Result<GraphMorphism, CliError> {
        let x: SharedGraph = self.graph(domain)?.into_shared();
        let y: SharedGraph = self.graph(codomain)?.into_shared();
        Ok(io::morphism_from_json(&self.text(morphism)?, x, y)?)
    }
}
