use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use tuza_core::certifier::certify;
use tuza_core::constructions::{
    bb_hitting_set, bb_packing_lower_bound, bose_burton_triangle_partition, build_bose_burton, build_partial_spread, build_pg,
    build_spread, rainbow_coloring,
};
use tuza_core::io::{parse_graph, parse_matroid, write_matroid};
use tuza_core::solver::{solve_nu, solve_tau, SolveStatus, SolverConfig, TriangleSystem};
use tuza_core::WeightedMatroid;
use tuza_harness::campaign::{cographic_campaign, enumerate_rank4_campaign, sample_rank5_campaign, GraphSource};
use tuza_harness::ratio::ratio_check;

#[derive(Parser)]
#[command(name = "tuza", version, about = "Exact triangle packing and hitting on binary matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Clone)]
struct Solve {
    /// Instances with more triangles are reported unsolved.
    #[arg(long, default_value_t = SolverConfig::default().triangle_cap)]
    triangle_cap: usize,
    /// Give up after this many search nodes.
    #[arg(long)]
    node_limit: Option<u64>,
}

impl Solve {
    fn config(&self) -> SolverConfig {
        SolverConfig { triangle_cap: self.triangle_cap, node_limit: self.node_limit }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimum weight of a point set meeting every triangle.
    Tau {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: Solve,
    },
    /// Maximum number of disjoint triangles, with weights as capacities.
    Nu {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: Solve,
    },
    /// Looks for a Fano plane restriction.
    Fano {
        #[command(flatten)]
        input: Input,
    },
    /// Critical number, with a rainbow colouring when it is at most 2.
    Chi {
        #[command(flatten)]
        input: Input,
    },
    /// Hitting set and packing for the triads of a graph with `w(R) <= 2 |Pi|`.
    CertifyCographic {
        #[command(flatten)]
        input: Input,
    },
    /// Builds an extremal object.
    Construct {
        #[arg(value_enum)]
        object: Object,
        #[arg(long)]
        n: usize,
        /// Spread member rank or Bose-Burton parameter.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Runs a verification campaign.
    Campaign {
        #[arg(value_enum)]
        kind: CampaignKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Graph files for the cographic campaign instead of enumeration.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Use seeded random weighted graphs in the cographic campaign.
        #[arg(long)]
        random: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Where to write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solve: Solve,
    },
    /// Checks `nu <= tau <= 3 nu` and, without a Fano restriction, `tau <= 66/23 nu`.
    Ratio {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: Solve,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Pg,
    Spread,
    PartialSpread,
    BoseBurton,
    BbHitting,
    BbPartition,
    BbPacking,
    Rainbow,
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignKind {
    Rank4,
    Rank5,
    Cographic,
}

fn read_matroid(input: &Input) -> Result<WeightedMatroid> {
    let text = std::fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
    Ok(parse_matroid(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Optimal => 0,
        SolveStatus::Unsolved => 3,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Tau { input, solve } => {
            let sys = TriangleSystem::from_matroid(&read_matroid(&input)?);
            let report = solve_tau(&sys, &solve.config())?;
            print_json(&report)?;
            Ok(status_code(report.status))
        }
        Command::Nu { input, solve } => {
            let sys = TriangleSystem::from_matroid(&read_matroid(&input)?);
            let report = solve_nu(&sys, &solve.config())?;
            print_json(&report)?;
            Ok(status_code(report.status))
        }
        Command::Fano { input } => {
            let m = read_matroid(&input)?;
            match m.matroid().contains_fano() {
                Some(e) => {
                    let images: Vec<u32> = (0..3).map(|i| e.map.apply_mask(1 << i)).collect();
                    let points: Vec<u32> = e.source.points().iter().map(|&p| e.map.apply_mask(p)).collect();
                    print_json(&serde_json::json!({ "fano": true, "basis_images": images, "points": points }))?;
                }
                None => print_json(&serde_json::json!({ "fano": false }))?,
            }
            Ok(0)
        }
        Command::Chi { input } => {
            let mw = read_matroid(&input)?;
            let m = mw.matroid();
            let chi = m.critical_number()?;
            let coloring = if chi <= 2 { Some(rainbow_coloring(m)?) } else { None };
            print_json(&serde_json::json!({ "chi": chi, "rainbow": coloring }))?;
            Ok(0)
        }
        Command::CertifyCographic { input } => {
            let text = std::fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
            let (g, w) = parse_graph(&text)?;
            let w = g.edge_ids().into_iter().map(|e| (e, w.get(&e).copied().unwrap_or(1))).collect();
            let cert = certify(&g, &w)?;
            let ok = cert.verify(&g, &w);
            print_json(&cert)?;
            Ok(if ok { 0 } else { 2 })
        }
        Command::Construct { object, n, k } => {
            construct(object, n, k)?;
            Ok(0)
        }
        Command::Campaign { kind, seed, count, max_vertices, input, random, jobs, out, solve } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
            }
            let config = solve.config();
            let report = match kind {
                CampaignKind::Rank4 => enumerate_rank4_campaign(&config),
                CampaignKind::Rank5 => sample_rank5_campaign(count, seed, &config),
                CampaignKind::Cographic => {
                    let source = if !input.is_empty() {
                        let mut list = Vec::new();
                        for path in &input {
                            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                            let (g, w) = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
                            list.push((path.display().to_string(), g, w));
                        }
                        GraphSource::Given(list)
                    } else if random {
                        GraphSource::Random { count, seed, max_vertices, max_edges: 2 * max_vertices, max_weight: 3 }
                    } else {
                        if max_vertices > 8 {
                            bail!("exhaustive enumeration supports at most 8 vertices");
                        }
                        GraphSource::Exhaustive { max_vertices }
                    };
                    cographic_campaign(&source, &config)
                }
            };
            if let Some(path) = out {
                std::fs::write(&path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            print!("{}", report.summary());
            Ok(report.exit_code() as u8)
        }
        Command::Ratio { input, solve } => {
            let record = ratio_check(read_matroid(&input)?.matroid(), &solve.config());
            print_json(&record)?;
            Ok(if !record.failures.is_empty() {
                2
            } else if !record.solved() {
                3
            } else {
                0
            })
        }
    }
}

fn construct(object: Object, n: usize, k: Option<usize>) -> Result<()> {
    let need_k = || k.context("this object needs --k");
    match object {
        Object::Pg => print!("{}", write_matroid(&WeightedMatroid::unit(build_pg(n)?))),
        Object::Spread => {
            let s = build_spread(n, need_k()?)?;
            let members: Vec<Vec<u32>> = s.members.iter().map(|f| f.points()).collect();
            print_json(&serde_json::json!({ "n": n, "d": s.d, "members": members }))?;
        }
        Object::PartialSpread => print_json(&build_partial_spread(n)?)?,
        Object::BoseBurton => print!("{}", write_matroid(&WeightedMatroid::unit(build_bose_burton(n, need_k()?)?.matroid))),
        Object::BbHitting => print_json(&bb_hitting_set(&build_bose_burton(n, need_k()?)?))?,
        Object::BbPartition => print_json(&bose_burton_triangle_partition(&build_bose_burton(n, 2)?)?)?,
        Object::BbPacking => print_json(&bb_packing_lower_bound(n, need_k()?)?)?,
        Object::Rainbow => {
            let b = build_bose_burton(n, 2)?;
            print_json(&rainbow_coloring(&b.matroid)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
