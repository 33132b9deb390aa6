use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coalwalk::bounds::{measure, verify_relations};
use coalwalk::coalesce::{default_cap, estimate, SimKind};
use coalwalk::experiment::{self, far_pair, ExperimentConfig, Quantity, ScalingModel};
use coalwalk::graph::{generate, load_edge_list, to_edge_list, FamilyKind, FamilySpec};
use coalwalk::markov::ExactConfig;
use coalwalk::{Error, Graph, Result};

#[derive(Parser)]
#[command(name = "coalwalk", version, about = "Coalescing random walks, voter consensus and walk time scales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge list of a generated graph.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact Markov-chain quantities as JSON.
    Exact {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Monte Carlo estimate of one process as JSON.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        /// t_coal, t_meet_mc, t_meet_pi_mc or voter.
        #[arg(long, default_value = "t_coal")]
        quantity: Quantity,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
        /// Start pair for t_meet_mc, as `u,v`.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(usize, usize)>,
        /// Non-lazy voter.
        #[arg(long)]
        non_lazy: bool,
    },
    /// Check every explicit-constant inequality; exits with 2 on a violation.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a sweep and fit one quantity against a growth model.
    Scale {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        quantity: Quantity,
        /// n^a, "n log n" or "log n".
        #[arg(long, default_value = "n^a")]
        model: ScalingModel,
    },
    /// Run the full pipeline from a config file.
    All {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, required_unless_present = "edges")]
    family: Option<FamilyKind>,
    /// Approximate vertex count, or the family parameter with --native.
    #[arg(long, required_unless_present = "edges")]
    size: Option<usize>,
    #[arg(long)]
    native: bool,
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Seed for random families.
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
    /// Read the graph from an edge-list file instead.
    #[arg(long, conflicts_with = "family")]
    edges: Option<PathBuf>,
    /// Declare an edge-list graph vertex-transitive.
    #[arg(long)]
    vertex_transitive: bool,
}

impl GraphArgs {
    fn load(&self) -> Result<(Graph, bool)> {
        if let Some(path) = &self.edges {
            let text = std::fs::read_to_string(path)?;
            return Ok((load_edge_list(&text)?, self.vertex_transitive));
        }
        let (kind, size) = (self.family.expect("clap enforces"), self.size.expect("clap enforces"));
        let spec = if self.native {
            FamilySpec::from_size(kind, size, self.dim, self.degree, self.alpha)?
        } else {
            FamilySpec::with_vertices(kind, size, self.dim, self.degree, self.alpha)?
        };
        Ok((generate(&spec, self.graph_seed)?, kind.is_vertex_transitive()))
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `master_seed`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    cap: Option<u64>,
    /// Overrides `output_dir`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::load(&self.config)?;
        cfg.master_seed = self.seed.or(cfg.master_seed);
        cfg.trials = self.trials.unwrap_or(cfg.trials);
        cfg.cap = self.cap.or(cfg.cap);
        cfg.output_dir = self.output.clone().or(cfg.output_dir);
        Ok(cfg)
    }
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

fn execute(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Gen { graph, output } => {
            let (g, _) = graph.load()?;
            let text = to_edge_list(&g);
            match output {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        Command::Exact { graph } => {
            let (g, vt) = graph.load()?;
            println!("{}", to_json(&measure(&g, &ExactConfig::default(), vt)?)?);
        }
        Command::Simulate { graph, quantity, trials, seed, cap, pair, non_lazy } => {
            let (g, _) = graph.load()?;
            let kind = match quantity {
                Quantity::TCoal => SimKind::Coalescence { start: None },
                Quantity::TMeetMc => {
                    let (u, v) = pair.unwrap_or_else(|| far_pair(&g));
                    SimKind::Meeting { u, v }
                }
                Quantity::TMeetPiMc => SimKind::MeetingStationary,
                Quantity::Voter => SimKind::Voter { lazy: !non_lazy },
                q => return Err(Error::InvalidArgument(format!("{q} is not a Monte Carlo quantity"))),
            };
            let cap = cap.unwrap_or_else(|| default_cap(g.n()));
            let est = estimate(&kind, &g, trials, seed, cap)?;
            let out = serde_json::json!({ "quantity": quantity, "process": kind, "seed": seed, "cap": cap, "estimate": est });
            println!("{}", to_json(&out)?);
        }
        Command::Verify { graph, json } => {
            let (g, vt) = graph.load()?;
            let report = verify_relations(&g, &measure(&g, &ExactConfig::default(), vt)?)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_csv());
            }
            if !report.explicit_passed() {
                return Ok(2);
            }
        }
        Command::Scale { run, quantity, model } => {
            let mut cfg = run.config()?;
            if !cfg.quantities.contains(&quantity) {
                cfg.quantities.push(quantity);
            }
            let summary = experiment::run(&cfg)?;
            let fits: Vec<serde_json::Value> = summary
                .fits(quantity, model)
                .into_iter()
                .map(|(family, fit)| match fit {
                    Ok(f) => serde_json::json!({ "family": family, "fit": f }),
                    Err(e) => serde_json::json!({ "family": family, "error": e.to_string() }),
                })
                .collect();
            let text = to_json(&fits)?;
            if let Some(dir) = &cfg.output_dir {
                experiment::write_atomic(&dir.join("fits.json"), text.as_bytes())?;
            }
            println!("{text}");
            return Ok(summary.exit_code() as u8);
        }
        Command::All { run } => {
            let cfg = run.config()?;
            let summary = experiment::run(&cfg)?;
            if cfg.output_dir.is_none() {
                print!("{}", summary.csv);
            }
            for r in &summary.records {
                if let Some(rep) = &r.report {
                    for f in rep.failures() {
                        log::error!("{}: {} {} {} {} violated", r.label, f.name, f.lhs, f.rel, f.rhs);
                    }
                }
            }
            return Ok(summary.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors exit with 1; 2 is reserved for explicit-bound violations.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = experiment::init_workers_from_env().and_then(|_| execute(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
