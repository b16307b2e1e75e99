use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use interlearn::edgelist;
use interlearn::experiment::{
    self, all_bounds, bound_by_name, bounds_csv, bounds_json, bounds_table, build_graph,
    build_transition, chain_report, render_summary, run_experiment, run_sweep, split_values,
    write_outputs, BoundInputs, ChainKind, ExperimentConfig,
};

#[derive(Parser)]
#[command(name = "interlearn", version, about = "Simulate and bound learning a moving target on a feedback graph")]
struct Cli {
    /// Flat key = value experiment file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (run, sweep) or file (graph, chain, bound).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded trials and compare the mean to the matching bound.
    Run(ConfigFlags),
    /// Run one experiment per value of a single parameter.
    Sweep {
        /// One of p, B, n, d, k, m.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Evaluate closed-form bounds; NAME is a bound or `all`.
    Bound {
        name: String,
        /// Inputs as key=value: n, n_prime, delta, delta_prime, k, m, d, B, R, p.
        params: Vec<String>,
    },
    /// Build a follow-the-feedback Markov chain and solve it.
    Chain {
        /// clique, star, quasi_star or walk.
        kind: String,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long)]
        p: f64,
        /// Per-round move probability.
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        #[arg(long, visible_alias = "R", default_value_t = 1000)]
        rounds: usize,
    },
    /// Export or inspect the configured graphs.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Print the effective configuration.
    Config(ConfigFlags),
}

#[derive(Subcommand)]
enum GraphAction {
    /// Write the feedback graph as an edge list.
    Export(ConfigFlags),
    /// Print vertex count, degrees, diameter and center.
    Inspect(ConfigFlags),
    /// Write the transition graph as a weighted edge list.
    Transition {
        /// Print a summary instead of the edge list.
        #[arg(long)]
        inspect: bool,
        #[command(flatten)]
        flags: ConfigFlags,
    },
}

/// One flag per configuration key; each overrides the config file.
#[derive(Args, Default)]
struct ConfigFlags {
    /// clique, star, path, cycle, quasi_star or file.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    leaves: Option<String>,
    #[arg(long)]
    branches: Option<String>,
    #[arg(long = "branch_len", alias = "branch-len")]
    branch_len: Option<String>,
    /// Graph diameter; overrides the size keys.
    #[arg(long)]
    d: Option<String>,
    #[arg(long = "graph_file", alias = "graph-file")]
    graph_file: Option<String>,
    /// drifting, shifting, shortest_path, m_neighborhood or complete.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long = "leaves_only", alias = "leaves-only")]
    leaves_only: Option<String>,
    /// mwu or follow.
    #[arg(long)]
    learner: Option<String>,
    /// distance_max, random or likelihood_greedy.
    #[arg(long)]
    policy: Option<String>,
    /// move_first or query_first.
    #[arg(long)]
    order: Option<String>,
    /// uniform_rounds, bernoulli or fixed:<r1,r2,...>.
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long, visible_alias = "R")]
    rounds: Option<String>,
    #[arg(long, visible_alias = "B")]
    budget: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long = "learner_p", alias = "learner-p", allow_hyphen_values = true)]
    learner_p: Option<String>,
    #[arg(long = "write_rounds", alias = "write-rounds")]
    write_rounds: Option<String>,
}

impl ConfigFlags {
    fn pairs(&self) -> Vec<(String, String)> {
        let fields: [(&str, &Option<String>); 20] = [
            ("graph", &self.graph),
            ("n", &self.n),
            ("leaves", &self.leaves),
            ("branches", &self.branches),
            ("branch_len", &self.branch_len),
            ("d", &self.d),
            ("graph_file", &self.graph_file),
            ("model", &self.model),
            ("k", &self.k),
            ("m", &self.m),
            ("leaves_only", &self.leaves_only),
            ("learner", &self.learner),
            ("policy", &self.policy),
            ("order", &self.order),
            ("schedule", &self.schedule),
            ("rounds", &self.rounds),
            ("budget", &self.budget),
            ("p", &self.p),
            ("learner_p", &self.learner_p),
            ("write_rounds", &self.write_rounds),
        ];
        fields
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

impl Cli {
    fn load_config(&self, flags: &ConfigFlags) -> Result<ExperimentConfig> {
        let mut pairs = flags.pairs();
        if let Some(seed) = self.seed {
            pairs.push(("seed".into(), seed.to_string()));
        }
        if let Some(trials) = self.trials {
            pairs.push(("trials".into(), trials.to_string()));
        }
        if let Some(out) = &self.out {
            pairs.push(("out".into(), out.display().to_string()));
        }
        if let Some(format) = self.format {
            let name = match format {
                Format::Csv => "csv",
                Format::Json => "json",
            };
            pairs.push(("format".into(), name.into()));
        }
        Ok(ExperimentConfig::load(self.config.as_deref(), &pairs)?)
    }

    fn info(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    /// Writes `text` to `--out` if given, otherwise to stdout.
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, text)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(|e| interlearn::Error::Io(format!("{e:#}")))?;
                self.info(&format!("wrote {}", path.display()));
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn run_cli(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run(flags) => {
            let mut cfg = cli.load_config(flags)?;
            if cfg.out.is_none() {
                cfg.write_rounds = false;
            }
            let out = run_experiment(&cfg)?;
            let rows = [out.summary];
            match &cfg.out {
                Some(dir) => {
                    for path in write_outputs(dir, &rows, &out.trials, cfg.format)? {
                        cli.info(&format!("wrote {}", path.display()));
                    }
                }
                None => print!("{}", render_summary(&rows, cfg.format)),
            }
        }
        Command::Sweep {
            axis,
            values,
            flags,
        } => {
            let cfg = cli.load_config(flags)?;
            let rows = run_sweep(&cfg, axis, &split_values(values))?;
            match &cfg.out {
                Some(dir) => {
                    for path in write_outputs(dir, &rows, &[], cfg.format)? {
                        cli.info(&format!("wrote {}", path.display()));
                    }
                }
                None => print!("{}", render_summary(&rows, cfg.format)),
            }
        }
        Command::Bound { name, params } => {
            let inputs = BoundInputs::parse(params)?;
            let reports = if name == "all" {
                all_bounds(&inputs)?
            } else {
                vec![bound_by_name(name, &inputs)?]
            };
            let text = match cli.format {
                None => bounds_table(&reports),
                Some(Format::Csv) => bounds_csv(&reports),
                Some(Format::Json) => bounds_json(&reports),
            };
            cli.emit(&text)?;
        }
        Command::Chain {
            kind,
            d,
            p,
            b,
            rounds,
        } => {
            let report = chain_report(ChainKind::parse(kind)?, *d, *p, *b, *rounds)?;
            let text = match cli.format {
                None => report.to_text(),
                Some(Format::Csv) => report.matrix_csv(),
                Some(Format::Json) => report.to_json(),
            };
            cli.emit(&text)?;
        }
        Command::Graph { action } => match action {
            GraphAction::Export(flags) => {
                let cfg = cli.load_config(flags)?;
                let g = build_graph(&cfg)?;
                cli.emit(&edgelist::write_graph(&g))?;
            }
            GraphAction::Inspect(flags) => {
                let cfg = cli.load_config(flags)?;
                let g = build_graph(&cfg)?;
                print!("{}", experiment::inspect_graph(&g));
            }
            GraphAction::Transition { inspect, flags } => {
                let cfg = cli.load_config(flags)?;
                let g = build_graph(&cfg)?;
                let t = build_transition(&cfg, &g)?;
                if *inspect {
                    print!("{}", experiment::inspect_transition(&t));
                } else {
                    cli.emit(&edgelist::write_transition(&t))?;
                }
            }
        },
        Command::Config(flags) => {
            let cfg = cli.load_config(flags)?;
            cfg.validate()?;
            print!("{}", cfg.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<interlearn::Error>()
                .map(|e| e.exit_code())
                .unwrap_or(1);
            ExitCode::from(code as u8)
        }
    }
}
