//! Experiment configuration and drivers.
//!
//! A configuration is a flat list of `key = value` pairs. Files may hold
//! comments (`#`) and blank lines; command-line flags use the same keys and
//! take precedence over the file, which takes precedence over the defaults.
//!
//! Trial `i` of an experiment with master seed `s` is seeded with
//! [`mix_seed`]`(s, i)`; sweep point `j` uses `mix_seed(s, j)` as its master
//! seed. Trials run in parallel and are reduced in index order, so outputs do
//! not depend on the number of worker threads.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, BoundModel, BoundReport, ModelParams};
use crate::chain::{self, MarkovChain};
use crate::edgelist;
use crate::environment::{mix_seed, AdversaryPolicy, EventOrder, Schedule};
use crate::error::{Error, Result};
use crate::fmt::{csv_table, sig};
use crate::graph::{families, FeedbackGraph};
use crate::learner::{run, LearnerKind, RoundRecord, RunParams};
use crate::stats::mean_and_stderr;
use crate::transition::TransitionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Clique,
    Star,
    Path,
    Cycle,
    QuasiStar,
    File,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Clique => "clique",
            GraphKind::Star => "star",
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::QuasiStar => "quasi_star",
            GraphKind::File => "file",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphKind,
    /// Vertex count for clique, path and cycle; `leaves + 1` for a star.
    pub n: usize,
    pub leaves: Option<usize>,
    pub branches: usize,
    pub branch_len: usize,
    /// Target diameter; when set it overrides the size keys.
    pub d: Option<usize>,
    pub graph_file: Option<PathBuf>,
    pub model: BoundModel,
    pub k: Option<usize>,
    pub m: Option<usize>,
    /// Restrict the target to the leaves of a star (complete model only).
    /// Unset means "yes for stars".
    pub leaves_only: Option<bool>,
    pub learner: LearnerKind,
    pub policy: AdversaryPolicy,
    pub order: EventOrder,
    pub schedule: Schedule,
    pub rounds: usize,
    pub budget: usize,
    pub p: f64,
    pub learner_p: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Keep per-round records (needed for `rounds.csv`).
    pub write_rounds: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            graph: GraphKind::Clique,
            n: 20,
            leaves: None,
            branches: 3,
            branch_len: 2,
            d: None,
            graph_file: None,
            model: BoundModel::Complete,
            k: None,
            m: None,
            leaves_only: None,
            learner: LearnerKind::Follow,
            policy: AdversaryPolicy::DistanceMax,
            order: EventOrder::MoveFirst,
            schedule: Schedule::UniformRounds,
            rounds: 1000,
            budget: 10,
            p: 0.1,
            learner_p: None,
            trials: 100,
            seed: 0,
            out: None,
            format: OutputFormat::Csv,
            write_rounds: true,
        }
    }
}

/// Every key accepted in config files and as `--key` flags.
pub const CONFIG_KEYS: &[&str] = &[
    "graph",
    "n",
    "leaves",
    "branches",
    "branch_len",
    "d",
    "graph_file",
    "model",
    "k",
    "m",
    "leaves_only",
    "learner",
    "policy",
    "order",
    "schedule",
    "rounds",
    "budget",
    "p",
    "learner_p",
    "trials",
    "seed",
    "out",
    "format",
    "write_rounds",
];

fn parse_num<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("`{value}` is not a valid number"))
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(format!("`{value}` is not a boolean")),
    }
}

fn pick<T: Copy>(value: &str, options: &[(&str, T)]) -> std::result::Result<T, String> {
    options
        .iter()
        .find(|(name, _)| *name == value)
        .map(|&(_, v)| v)
        .ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            format!("`{value}` is not one of {}", names.join(", "))
        })
}

pub fn parse_model(value: &str) -> std::result::Result<BoundModel, String> {
    pick(
        value,
        &[
            ("drifting", BoundModel::Drifting),
            ("shifting", BoundModel::Shifting),
            ("shortest_path", BoundModel::ShortestPath),
            ("m_neighborhood", BoundModel::MNeighborhood),
            ("complete", BoundModel::Complete),
        ],
    )
}

fn parse_schedule(value: &str) -> std::result::Result<Schedule, String> {
    match value {
        "uniform_rounds" => Ok(Schedule::UniformRounds),
        "bernoulli" => Ok(Schedule::Bernoulli),
        _ => match value.strip_prefix("fixed:") {
            Some(list) => list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_num::<usize>(s.trim()))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Schedule::Fixed),
            None => Err(format!(
                "`{value}` is not one of uniform_rounds, bernoulli, fixed:<r1,r2,...>"
            )),
        },
    }
}

fn schedule_name(s: &Schedule) -> String {
    match s {
        Schedule::UniformRounds => "uniform_rounds".into(),
        Schedule::Bernoulli => "bernoulli".into(),
        Schedule::Fixed(rounds) => {
            let list: Vec<String> = rounds.iter().map(|r| r.to_string()).collect();
            format!("fixed:{}", list.join(","))
        }
    }
}

fn policy_name(p: AdversaryPolicy) -> &'static str {
    match p {
        AdversaryPolicy::DistanceMax => "distance_max",
        AdversaryPolicy::Random => "random",
        AdversaryPolicy::LikelihoodGreedy => "likelihood_greedy",
    }
}

fn learner_name(l: LearnerKind) -> &'static str {
    match l {
        LearnerKind::Mwu => "mwu",
        LearnerKind::Follow => "follow",
    }
}

fn config_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        location: location.into(),
        message: message.into(),
    }
}

impl ExperimentConfig {
    /// Sets one key. `location` names the source in error messages, e.g.
    /// `exp.cfg:4` or `--p`.
    pub fn set(&mut self, key: &str, value: &str, location: &str) -> Result<()> {
        self.set_inner(key, value.trim())
            .map_err(|msg| config_error(location, format!("{key}: {msg}")))
    }

    fn set_inner(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "graph" => {
                self.graph = pick(
                    value,
                    &[
                        ("clique", GraphKind::Clique),
                        ("star", GraphKind::Star),
                        ("path", GraphKind::Path),
                        ("cycle", GraphKind::Cycle),
                        ("quasi_star", GraphKind::QuasiStar),
                        ("file", GraphKind::File),
                    ],
                )?
            }
            "n" => self.n = parse_num(value)?,
            "leaves" => self.leaves = Some(parse_num(value)?),
            "branches" => self.branches = parse_num(value)?,
            "branch_len" => self.branch_len = parse_num(value)?,
            "d" => self.d = Some(parse_num(value)?),
            "graph_file" => self.graph_file = Some(PathBuf::from(value)),
            "model" => self.model = parse_model(value)?,
            "k" => self.k = Some(parse_num(value)?),
            "m" => self.m = Some(parse_num(value)?),
            "leaves_only" => self.leaves_only = Some(parse_bool(value)?),
            "learner" => {
                self.learner = pick(
                    value,
                    &[("mwu", LearnerKind::Mwu), ("follow", LearnerKind::Follow)],
                )?
            }
            "policy" => {
                self.policy = pick(
                    value,
                    &[
                        ("distance_max", AdversaryPolicy::DistanceMax),
                        ("random", AdversaryPolicy::Random),
                        ("likelihood_greedy", AdversaryPolicy::LikelihoodGreedy),
                    ],
                )?
            }
            "order" => {
                self.order = pick(
                    value,
                    &[
                        ("move_first", EventOrder::MoveFirst),
                        ("query_first", EventOrder::QueryFirst),
                    ],
                )?
            }
            "schedule" => self.schedule = parse_schedule(value)?,
            "rounds" | "R" => self.rounds = parse_num(value)?,
            "budget" | "B" => self.budget = parse_num(value)?,
            "p" => self.p = parse_num(value)?,
            "learner_p" => self.learner_p = Some(parse_num(value)?),
            "trials" => self.trials = parse_num(value)?,
            "seed" => self.seed = parse_num(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => {
                self.format = pick(
                    value,
                    &[("csv", OutputFormat::Csv), ("json", OutputFormat::Json)],
                )?
            }
            "write_rounds" => self.write_rounds = parse_bool(value)?,
            _ => return Err("unknown key".into()),
        }
        Ok(())
    }

    /// Applies a `key = value` file on top of `self`.
    pub fn apply_text(&mut self, text: &str, source: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let location = format!("{source}:{}", idx + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_error(&location, "expected `key = value`"))?;
            self.set(key.trim(), value, &location)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// Defaults, then `file`, then `overrides` in order.
    pub fn load(file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        for (key, value) in overrides {
            cfg.set(key, value, &format!("--{key}"))?;
        }
        Ok(cfg)
    }

    fn leaves_only_effective(&self) -> bool {
        self.graph == GraphKind::Star && self.leaves_only.unwrap_or(true)
    }

    fn star_leaves(&self) -> usize {
        self.leaves.unwrap_or(self.n.saturating_sub(1))
    }

    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: String| Err(config_error(format!("field {name}"), msg));
        if !(0.0..0.5).contains(&self.p) {
            return field("p", format!("noise rate {} must satisfy 0 <= p < 1/2", self.p));
        }
        if let Some(lp) = self.learner_p {
            if !(0.0..=0.5).contains(&lp) {
                return field("learner_p", format!("{lp} must lie in [0, 1/2]"));
            }
        }
        if self.budget > self.rounds {
            return field(
                "budget",
                format!("B = {} exceeds R = {}", self.budget, self.rounds),
            );
        }
        if self.trials == 0 {
            return field("trials", "need at least one trial".into());
        }
        match self.graph {
            GraphKind::File => match &self.graph_file {
                None => return field("graph_file", "required when graph = file".into()),
                Some(path) if !path.is_file() => {
                    return field("graph_file", format!("{} does not exist", path.display()))
                }
                _ => {}
            },
            GraphKind::Star if self.star_leaves() == 0 && self.d.is_none() => {
                return field("leaves", "a star needs at least one leaf".into())
            }
            GraphKind::Clique | GraphKind::Path | GraphKind::Cycle
                if self.n == 0 && self.d.is_none() =>
            {
                return field("n", "need at least one vertex".into())
            }
            _ => {}
        }
        if let Some(d) = self.d {
            let ok = match self.graph {
                GraphKind::Clique => d == 1,
                GraphKind::Star => d == 2,
                GraphKind::Path | GraphKind::Cycle => d >= 1,
                GraphKind::QuasiStar => d >= 2 && d % 2 == 0,
                GraphKind::File => false,
            };
            if !ok {
                return field(
                    "d",
                    format!("diameter {d} is not available for graph = {}", self.graph.name()),
                );
            }
        }
        if self.leaves_only_effective() && self.model != BoundModel::Complete {
            return field(
                "leaves_only",
                "restricting the target to leaves needs model = complete; set leaves_only = false"
                    .into(),
            );
        }
        match self.model {
            BoundModel::Shifting if self.k.unwrap_or(0) == 0 => {
                return field("k", "shifting needs k >= 1".into())
            }
            BoundModel::MNeighborhood if self.m.unwrap_or(0) == 0 => {
                return field("m", "m_neighborhood needs m >= 1".into())
            }
            _ => {}
        }
        if let Schedule::Fixed(rounds) = &self.schedule {
            if rounds.len() > self.budget {
                return field("schedule", "more fixed move rounds than the budget".into());
            }
        }
        Ok(())
    }

    /// Move probability `b = B / R` used by the transition kernel.
    pub fn move_prob(&self) -> f64 {
        if self.rounds == 0 {
            0.0
        } else {
            self.budget as f64 / self.rounds as f64
        }
    }

    pub fn run_params(&self) -> RunParams {
        let mut params = RunParams::new(self.learner, self.rounds, self.budget, self.p)
            .policy(self.policy)
            .schedule(self.schedule.clone())
            .order(self.order);
        params.learner_p = self.learner_p;
        params
    }

    /// Renders the configuration back into `key = value` lines.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("graph = {}", self.graph.name()),
            format!("n = {}", self.n),
        ];
        let opt = |k: &str, v: Option<String>| v.map(|v| format!("{k} = {v}"));
        lines.extend(opt("leaves", self.leaves.map(|x| x.to_string())));
        lines.push(format!("branches = {}", self.branches));
        lines.push(format!("branch_len = {}", self.branch_len));
        lines.extend(opt("d", self.d.map(|x| x.to_string())));
        lines.extend(opt(
            "graph_file",
            self.graph_file.as_ref().map(|p| p.display().to_string()),
        ));
        lines.push(format!("model = {}", self.model.name()));
        lines.extend(opt("k", self.k.map(|x| x.to_string())));
        lines.extend(opt("m", self.m.map(|x| x.to_string())));
        lines.extend(opt("leaves_only", self.leaves_only.map(|x| x.to_string())));
        lines.push(format!("learner = {}", learner_name(self.learner)));
        lines.push(format!("policy = {}", policy_name(self.policy)));
        lines.push(format!(
            "order = {}",
            match self.order {
                EventOrder::MoveFirst => "move_first",
                EventOrder::QueryFirst => "query_first",
            }
        ));
        lines.push(format!("schedule = {}", schedule_name(&self.schedule)));
        lines.push(format!("rounds = {}", self.rounds));
        lines.push(format!("budget = {}", self.budget));
        lines.push(format!("p = {}", self.p));
        lines.extend(opt("learner_p", self.learner_p.map(|x| x.to_string())));
        lines.push(format!("trials = {}", self.trials));
        lines.push(format!("seed = {}", self.seed));
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

/// Builds the feedback graph a configuration describes.
pub fn build_graph(cfg: &ExperimentConfig) -> Result<FeedbackGraph> {
    match (cfg.graph, cfg.d) {
        (GraphKind::Clique, Some(_)) => families::clique(cfg.n.max(2)),
        (GraphKind::Clique, None) => families::clique(cfg.n),
        (GraphKind::Star, _) => families::star(cfg.star_leaves()),
        (GraphKind::Path, Some(d)) => families::path(d + 1),
        (GraphKind::Path, None) => families::path(cfg.n),
        (GraphKind::Cycle, Some(d)) => families::cycle(2 * d),
        (GraphKind::Cycle, None) => families::cycle(cfg.n),
        (GraphKind::QuasiStar, Some(d)) => families::quasi_star(cfg.branches, d / 2),
        (GraphKind::QuasiStar, None) => families::quasi_star(cfg.branches, cfg.branch_len),
        (GraphKind::File, _) => {
            let path = cfg
                .graph_file
                .as_ref()
                .ok_or(Error::MissingParam("graph_file"))?;
            edgelist::read(path)
        }
    }
}

/// Builds the transition graph for the configured evolution model.
pub fn build_transition(cfg: &ExperimentConfig, g: &FeedbackGraph) -> Result<TransitionGraph> {
    let b = cfg.move_prob();
    let n = g.vertex_count();
    if cfg.leaves_only_effective() {
        let leaves: Vec<usize> = (1..n).collect();
        return TransitionGraph::complete_over(n, &leaves, b);
    }
    match cfg.model {
        BoundModel::Drifting => TransitionGraph::drifting(g, b),
        BoundModel::Shifting => {
            TransitionGraph::shifting(n, cfg.k.ok_or(Error::MissingParam("k"))?, b)
        }
        BoundModel::ShortestPath => TransitionGraph::shortest_path(g, cfg.budget, b),
        BoundModel::MNeighborhood => {
            TransitionGraph::m_neighborhood(g, cfg.m.ok_or(Error::MissingParam("m"))?, b)
        }
        BoundModel::Complete => TransitionGraph::complete(n, b),
    }
}

/// Integer hop diameter used by the diameter bound.
fn hop_diameter(g: &FeedbackGraph) -> usize {
    (g.diameter() - 1e-9).ceil().max(0.0) as usize
}

/// The bound an experiment is compared against, plus an optional sharper
/// reference value (the star's exact expectation).
pub fn matching_bound(
    cfg: &ExperimentConfig,
    g: &FeedbackGraph,
) -> Result<(String, f64, Option<(String, f64)>)> {
    let (r, b, p) = (cfg.rounds, cfg.budget, cfg.p);
    match cfg.learner {
        LearnerKind::Follow => match cfg.graph {
            GraphKind::Clique => Ok(("clique".into(), bounds::clique_bound(r, b, p)?, None)),
            GraphKind::Star => Ok((
                "star".into(),
                bounds::star_bound(r, b, p)?,
                Some(("star_exact".into(), bounds::star_exact(r, b, p)?)),
            )),
            _ => {
                let d = hop_diameter(g);
                Ok((
                    format!("diameter(d={d})"),
                    bounds::diameter_bound(d, r, b, p)?,
                    None,
                ))
            }
        },
        LearnerKind::Mwu => {
            let params = ModelParams {
                n: Some(g.vertex_count()),
                max_degree: Some(g.max_degree()),
                k: cfg.k,
                m: cfg.m,
                budget: b,
                rounds: r,
                p,
            };
            let report = bounds::model_bound(cfg.model, &params)?;
            Ok((report.name, report.value, None))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub mistakes: usize,
    pub moves: usize,
    pub rounds: Option<Vec<RoundRecord>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub label: String,
    pub graph: String,
    pub model: String,
    pub learner: String,
    pub policy: String,
    pub n: usize,
    pub rounds: usize,
    pub budget: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub mean_mistakes: f64,
    pub stderr: f64,
    pub mean_moves: f64,
    pub bound_name: String,
    pub bound: f64,
    /// `mean_mistakes / max(bound, 1)`, so it stays finite when the bound is 0.
    pub ratio: f64,
    pub exact_name: Option<String>,
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub summary: SummaryRow,
    pub trials: Vec<TrialResult>,
}

/// Runs `cfg.trials` independent seeded trials.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    run_labeled(cfg, "run")
}

fn run_labeled(cfg: &ExperimentConfig, label: &str) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let g = build_graph(cfg)?;
    let tg = build_transition(cfg, &g)?;
    let (bound_name, bound, exact) = matching_bound(cfg, &g)?;
    let params = cfg.run_params();
    let keep = cfg.write_rounds;

    let trials: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = mix_seed(cfg.seed, trial as u64);
            let record = run(&g, &tg, &params, seed)?;
            Ok(TrialResult {
                trial,
                seed,
                mistakes: record.total_mistakes,
                moves: record.moves,
                rounds: keep.then_some(record.rounds),
            })
        })
        .collect::<Result<_>>()?;

    let mistakes: Vec<f64> = trials.iter().map(|t| t.mistakes as f64).collect();
    let (mean, stderr) = mean_and_stderr(&mistakes);
    let mean_moves = trials.iter().map(|t| t.moves as f64).sum::<f64>() / trials.len() as f64;
    let (exact_name, exact) = match exact {
        Some((name, value)) => (Some(name), Some(value)),
        None => (None, None),
    };
    Ok(ExperimentOutput {
        summary: SummaryRow {
            label: label.to_string(),
            graph: cfg.graph.name().to_string(),
            model: if cfg.leaves_only_effective() {
                "complete_leaves".to_string()
            } else {
                cfg.model.name().to_string()
            },
            learner: learner_name(cfg.learner).to_string(),
            policy: policy_name(cfg.policy).to_string(),
            n: g.vertex_count(),
            rounds: cfg.rounds,
            budget: cfg.budget,
            p: cfg.p,
            trials: cfg.trials,
            seed: cfg.seed,
            mean_mistakes: mean,
            stderr,
            mean_moves,
            bound_name,
            bound,
            ratio: mean / bound.max(1.0),
            exact_name,
            exact,
        },
        trials,
    })
}

/// Axes a sweep may vary.
pub const SWEEP_AXES: &[&str] = &["p", "B", "n", "d", "k", "m"];

/// Runs one experiment per value of `axis`; point `j` uses master seed
/// `mix_seed(cfg.seed, j)`.
pub fn run_sweep(cfg: &ExperimentConfig, axis: &str, values: &[String]) -> Result<Vec<SummaryRow>> {
    if !SWEEP_AXES.contains(&axis) {
        return Err(config_error(
            "sweep axis",
            format!("`{axis}` is not one of {}", SWEEP_AXES.join(", ")),
        ));
    }
    if values.is_empty() {
        return Err(config_error("sweep values", "value list is empty"));
    }
    let key = if axis == "B" { "budget" } else { axis };
    let mut rows = Vec::with_capacity(values.len());
    for (j, value) in values.iter().enumerate() {
        let mut point = cfg.clone();
        point.set(key, value, &format!("sweep value {}", j + 1))?;
        point.seed = mix_seed(cfg.seed, j as u64);
        point.write_rounds = false;
        let label = format!("{axis}={}", value.trim());
        rows.push(run_labeled(&point, &label)?.summary);
    }
    Ok(rows)
}

/// Splits `"0.05, 0.1,0.2"` into trimmed, non-empty items.
pub fn split_values(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub const ROUNDS_HEADER: [&str; 8] = [
    "trial",
    "round",
    "query",
    "target",
    "feedback",
    "mistake",
    "noisy",
    "cum_mistakes",
];

pub fn rounds_csv(trials: &[TrialResult]) -> String {
    let records = trials.iter().flat_map(|t| {
        let mut cum = 0usize;
        t.rounds.iter().flatten().enumerate().map(move |(i, r)| {
            cum += r.mistake as usize;
            [
                t.trial,
                i + 1,
                r.query,
                r.target,
                r.feedback,
                r.mistake as usize,
                r.noisy as usize,
                cum,
            ]
            .map(|x| x.to_string())
        })
    });
    csv_table(&ROUNDS_HEADER, records)
}

pub const SUMMARY_HEADER: [&str; 19] = [
    "label",
    "graph",
    "model",
    "learner",
    "policy",
    "n",
    "rounds",
    "budget",
    "p",
    "trials",
    "seed",
    "mean_mistakes",
    "stderr",
    "mean_moves",
    "bound_name",
    "bound",
    "ratio",
    "exact_name",
    "exact",
];

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    csv_table(
        &SUMMARY_HEADER,
        rows.iter().map(|r| {
            vec![
                r.label.clone(),
                r.graph.clone(),
                r.model.clone(),
                r.learner.clone(),
                r.policy.clone(),
                r.n.to_string(),
                r.rounds.to_string(),
                r.budget.to_string(),
                sig(r.p),
                r.trials.to_string(),
                r.seed.to_string(),
                sig(r.mean_mistakes),
                sig(r.stderr),
                sig(r.mean_moves),
                r.bound_name.clone(),
                sig(r.bound),
                sig(r.ratio),
                r.exact_name.clone().unwrap_or_default(),
                r.exact.map(sig).unwrap_or_default(),
            ]
        }),
    )
}

pub fn summary_json(rows: &[SummaryRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("summary rows serialize");
    s.push('\n');
    s
}

pub fn render_summary(rows: &[SummaryRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => summary_csv(rows),
        OutputFormat::Json => summary_json(rows),
    }
}

/// Writes `summary.{csv,json}` and, when rounds were kept, `rounds.csv`
/// into `dir`. Returns the paths written.
pub fn write_outputs(
    dir: &Path,
    rows: &[SummaryRow],
    trials: &[TrialResult],
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let name = match format {
        OutputFormat::Csv => "summary.csv",
        OutputFormat::Json => "summary.json",
    };
    let summary = dir.join(name);
    std::fs::write(&summary, render_summary(rows, format))?;
    written.push(summary);
    if trials.iter().any(|t| t.rounds.is_some()) {
        let path = dir.join("rounds.csv");
        std::fs::write(&path, rounds_csv(trials))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Clique,
    Star,
    QuasiStar,
    Walk,
}

impl ChainKind {
    pub fn parse(value: &str) -> Result<Self> {
        pick(
            value,
            &[
                ("clique", ChainKind::Clique),
                ("star", ChainKind::Star),
                ("quasi_star", ChainKind::QuasiStar),
                ("walk", ChainKind::Walk),
            ],
        )
        .map_err(|msg| config_error("chain kind", msg))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub kind: ChainKind,
    pub d: usize,
    pub p: f64,
    pub b: f64,
    pub rounds: usize,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub correct_state: usize,
    pub stationary: Vec<f64>,
    /// `R (1 - pi[correct_state])`.
    pub expected_mistakes: f64,
    /// `(state, expected steps to reach the correct state)`.
    pub hitting_times: Vec<(usize, f64)>,
    pub closed_forms: Vec<(String, f64)>,
}

/// Builds a chain and lays its numeric solution next to the closed forms.
///
/// For the clique, star and quasi-star chains the closed forms are evaluated
/// with the budget `B = round(b R)`. `d` is ignored for the clique and star.
pub fn chain_report(kind: ChainKind, d: usize, p: f64, b: f64, rounds: usize) -> Result<ChainReport> {
    let (chain, correct, d) = match kind {
        ChainKind::Clique => (chain::clique_chain(p, b)?, 0, 1),
        ChainKind::Star => (chain::star_chain(p, b)?, 0, 2),
        ChainKind::QuasiStar => (chain::quasi_star_chain(d, p, b)?, 0, d),
        ChainKind::Walk => (chain::walk_chain(d, p)?, d, d),
    };
    let stationary = chain::stationary(&chain)?;
    let expected_mistakes = rounds as f64 * (1.0 - stationary[correct]);
    let hitting_times = (0..chain.size())
        .filter(|&i| i != correct)
        .map(|i| Ok((i, chain::hitting_time(&chain, i, correct)?)))
        .collect::<Result<Vec<_>>>()?;

    let budget = ((b * rounds as f64).round() as usize).min(rounds);
    let mut closed_forms = Vec::new();
    match kind {
        ChainKind::Clique => {
            closed_forms.push(("(1-p)(1-b)".into(), (1.0 - p) * (1.0 - b)));
            closed_forms.push(("clique_bound".into(), bounds::clique_bound(rounds, budget, p)?));
        }
        ChainKind::Star => {
            closed_forms.push(("star_exact".into(), bounds::star_exact(rounds, budget, p)?));
            closed_forms.push(("star_bound".into(), bounds::star_bound(rounds, budget, p)?));
        }
        ChainKind::QuasiStar => {
            closed_forms.push((
                "diameter_bound".into(),
                bounds::diameter_bound(d, rounds, budget, p)?,
            ));
        }
        ChainKind::Walk => {
            if p < 0.5 {
                closed_forms.push(("h(0,d) exact".into(), chain::walk_hitting_closed_form(d, p)?));
                closed_forms.push(("hitting_bound".into(), bounds::hitting_bound(d, p)?));
                closed_forms.push((
                    "off-target fraction".into(),
                    chain::walk_off_target_fraction(d, p)?,
                ));
                closed_forms.push(("t_off_bound".into(), bounds::t_off_bound(p)?));
            }
        }
    }
    Ok(ChainReport {
        kind,
        d,
        p,
        b,
        rounds,
        labels: chain.labels().to_vec(),
        matrix: matrix_rows(&chain),
        correct_state: correct,
        stationary,
        expected_mistakes,
        hitting_times,
        closed_forms,
    })
}

fn matrix_rows(chain: &MarkovChain) -> Vec<Vec<f64>> {
    (0..chain.size()).map(|i| chain.row(i).to_vec()).collect()
}

impl ChainReport {
    /// Matrix in CSV, header `state,0,1,...`.
    pub fn matrix_csv(&self) -> String {
        chain::matrix_csv(&self.matrix)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("chain report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "chain {:?} d={} p={} b={} R={}",
            self.kind,
            self.d,
            sig(self.p),
            sig(self.b),
            self.rounds
        );
        let _ = writeln!(out, "\ntransition matrix:");
        let cells: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| sig(x)).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(out, "{i:>4} |");
            for c in row {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "\nstationary distribution:");
        for (i, x) in self.stationary.iter().enumerate() {
            let _ = writeln!(out, "{i:>4}  {:<18} {}", sig(*x), self.labels[i]);
        }
        let _ = writeln!(
            out,
            "\nR(1 - pi[{}]) = {}",
            self.correct_state,
            sig(self.expected_mistakes)
        );
        let _ = writeln!(out, "\nhitting times to state {}:", self.correct_state);
        for (i, h) in &self.hitting_times {
            let _ = writeln!(out, "{i:>4}  {}", sig(*h));
        }
        if !self.closed_forms.is_empty() {
            let _ = writeln!(out, "\nclosed forms:");
            let w = self.closed_forms.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &self.closed_forms {
                let _ = writeln!(out, "  {k:<w$}  {}", sig(*v));
            }
        }
        out
    }
}

/// Names accepted by [`bound_by_name`].
pub const BOUND_NAMES: &[&str] = &[
    "unified",
    "drifting",
    "shifting",
    "shortest_path",
    "m_neighborhood",
    "complete",
    "lower_bound",
    "sequence_prior",
    "clique",
    "star",
    "star_exact",
    "diameter",
    "hitting",
    "t_off",
];

/// Numeric inputs for the `bound` command, keyed like `n`, `n_prime`,
/// `delta`, `delta_prime`, `k`, `m`, `d`, `B`, `R`, `p`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundInputs {
    values: Vec<(String, f64)>,
}

impl BoundInputs {
    pub fn set(&mut self, key: &str, value: f64) {
        let key = match key {
            "budget" => "B",
            "rounds" => "R",
            other => other,
        };
        self.values.retain(|(k, _)| k != key);
        self.values.push((key.to_string(), value));
    }

    /// Parses `key=value` items.
    pub fn parse(items: &[String]) -> Result<Self> {
        let mut inputs = BoundInputs::default();
        for item in items {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| config_error(item.as_str(), "expected key=value"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| config_error(item.as_str(), "value is not a number"))?;
            inputs.set(k.trim(), v);
        }
        Ok(inputs)
    }

    fn get(&self, key: &'static str) -> Result<f64> {
        self.values
            .iter()
            .find(|(k, _)| k == key)
            .map(|&(_, v)| v)
            .ok_or(Error::MissingParam(key))
    }

    fn count(&self, key: &'static str) -> Result<usize> {
        let v = self.get(key)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(config_error(key, format!("{v} is not a non-negative integer")));
        }
        Ok(v as usize)
    }

    fn opt_count(&self, key: &'static str) -> Result<Option<usize>> {
        match self.count(key) {
            Err(Error::MissingParam(_)) => Ok(None),
            other => other.map(Some),
        }
    }
}

/// Evaluates one named bound.
pub fn bound_by_name(name: &str, inputs: &BoundInputs) -> Result<BoundReport> {
    let scalar = |value: f64, keys: &[&'static str]| -> Result<BoundReport> {
        let ins = keys
            .iter()
            .map(|&k| Ok((k, inputs.get(k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundReport::scalar(name, ins, value))
    };
    match name {
        "unified" => bounds::unified_bound(
            inputs.count("n_prime")?,
            inputs.count("delta_prime")?,
            inputs.count("B")?,
            inputs.count("R")?,
            inputs.get("p")?,
        ),
        "drifting" | "shifting" | "shortest_path" | "m_neighborhood" | "complete" => {
            let model = parse_model(name).map_err(|m| config_error("bound", m))?;
            let params = ModelParams {
                n: inputs.opt_count("n")?,
                max_degree: inputs.opt_count("delta")?,
                k: inputs.opt_count("k")?,
                m: inputs.opt_count("m")?,
                budget: inputs.count("B")?,
                rounds: inputs.count("R")?,
                p: inputs.get("p")?,
            };
            bounds::model_bound(model, &params)
        }
        "lower_bound" => scalar(
            bounds::lower_bound_main_term(
                inputs.count("n")?,
                inputs.count("delta_prime")?,
                inputs.count("B")?,
                inputs.count("R")?,
                inputs.get("p")?,
            )?,
            &["n", "delta_prime", "B", "R", "p"],
        ),
        "sequence_prior" => {
            let s = bounds::sequence_prior(
                inputs.count("n_prime")?,
                inputs.count("delta_prime")?,
                inputs.count("B")?,
                inputs.count("R")?,
            )?;
            let mut r = scalar(s.log2_exact, &["n_prime", "delta_prime", "B", "R"])?;
            r.components = vec![
                ("log2 exact".into(), s.log2_exact),
                ("log2 product".into(), s.log2_product),
                ("log2 gap".into(), s.log2_gap()),
            ];
            r.scale = 1.0;
            r.value = s.log2_exact;
            r.name = "sequence_prior (log2)".into();
            Ok(r)
        }
        "clique" => scalar(
            bounds::clique_bound(inputs.count("R")?, inputs.count("B")?, inputs.get("p")?)?,
            &["R", "B", "p"],
        ),
        "star" => scalar(
            bounds::star_bound(inputs.count("R")?, inputs.count("B")?, inputs.get("p")?)?,
            &["R", "B", "p"],
        ),
        "star_exact" => scalar(
            bounds::star_exact(inputs.count("R")?, inputs.count("B")?, inputs.get("p")?)?,
            &["R", "B", "p"],
        ),
        "diameter" => scalar(
            bounds::diameter_bound(
                inputs.count("d")?,
                inputs.count("R")?,
                inputs.count("B")?,
                inputs.get("p")?,
            )?,
            &["d", "R", "B", "p"],
        ),
        "hitting" => scalar(
            bounds::hitting_bound(inputs.count("d")?, inputs.get("p")?)?,
            &["d", "p"],
        ),
        "t_off" => scalar(bounds::t_off_bound(inputs.get("p")?)?, &["p"]),
        other => Err(config_error(
            "bound",
            format!("unknown bound `{other}`; known: {}", BOUND_NAMES.join(", ")),
        )),
    }
}

/// Every bound whose inputs are all present.
pub fn all_bounds(inputs: &BoundInputs) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for name in BOUND_NAMES {
        match bound_by_name(name, inputs) {
            Ok(r) => out.push(r),
            Err(Error::MissingParam(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn bounds_table(reports: &[BoundReport]) -> String {
    let w = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<w$}  {:>18}  terms\n", "name", "value");
    for r in reports {
        let terms: Vec<String> = r
            .components
            .iter()
            .map(|(k, v)| format!("{k}={}", sig(*v)))
            .collect();
        let scale = if r.scale != 1.0 {
            format!(" x {}", sig(r.scale))
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "{:<w$}  {:>18}  {}{}",
            r.name,
            sig(r.value),
            terms.join(" "),
            scale
        );
    }
    out
}

/// One row per component plus a `scale` and a `value` row per bound.
pub fn bounds_csv(reports: &[BoundReport]) -> String {
    let records = reports.iter().flat_map(|r| {
        r.components
            .iter()
            .map(|(k, v)| (k.clone(), *v))
            .chain([("scale".to_string(), r.scale), ("value".to_string(), r.value)])
            .map(|(k, v)| [r.name.clone(), k, sig(v)])
    });
    csv_table(&["bound", "term", "value"], records)
}

pub fn bounds_json(reports: &[BoundReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("bound reports serialize");
    s.push('\n');
    s
}

/// Human-readable summary of a feedback graph.
pub fn inspect_graph(g: &FeedbackGraph) -> String {
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let min_deg = degrees.iter().copied().min().unwrap_or(0);
    format!(
        "vertices   {}\nedges      {}\ndirected   {}\ndegree     min {} max {}\ndiameter   {}\ncenter     {}\n",
        g.vertex_count(),
        g.edges().len(),
        g.is_directed(),
        min_deg,
        g.max_degree(),
        sig(g.diameter()),
        g.center()
    )
}

/// Human-readable summary of a transition graph.
pub fn inspect_transition(t: &TransitionGraph) -> String {
    format!(
        "duplicated vertices  {}\nbase vertices        {}\nmax out-degree       {}\nmove probability     {}\nper-arc probability  {}\ncomponents           {}\n",
        t.dup_count(),
        t.base_count(),
        t.max_out_degree(),
        sig(t.move_prob()),
        sig(t.pi_out()),
        t.component_count()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            n: 6,
            rounds: 60,
            budget: 3,
            trials: 4,
            seed: 11,
            ..Default::default()
        }
    }

    #[test]
    fn config_precedence() {
        let text = "# comment\ngraph = path\nn = 7\np = 0.2\n\nseed=5\n";
        let path = std::env::temp_dir().join(format!("interlearn-cfg-{}.cfg", std::process::id()));
        std::fs::write(&path, text).unwrap();
        let cfg = ExperimentConfig::load(
            Some(&path),
            &[("p".into(), "0.3".into()), ("R".into(), "50".into())],
        )
        .unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(cfg.graph, GraphKind::Path);
        assert_eq!(cfg.n, 7);
        assert_eq!(cfg.p, 0.3);
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.rounds, 50);
        assert_eq!(cfg.trials, ExperimentConfig::default().trials);
    }

    #[test]
    fn config_diagnostics() {
        let mut cfg = ExperimentConfig::default();
        let err = cfg.apply_text("n = 3\nbogus = 1\n", "exp.cfg").unwrap_err();
        assert_eq!(
            err,
            Error::Config {
                location: "exp.cfg:2".into(),
                message: "bogus: unknown key".into()
            }
        );
        assert!(matches!(
            cfg.apply_text("just words", "x"),
            Err(Error::Config { .. })
        ));
        let err = cfg.set("learner", "gradient", "--learner").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn validation() {
        let bad = |f: &dyn Fn(&mut ExperimentConfig)| {
            let mut c = small();
            f(&mut c);
            c.validate().unwrap_err()
        };
        let e = bad(&|c| c.p = 0.6);
        assert!(matches!(e, Error::Config { ref location, .. } if location == "field p"));
        bad(&|c| c.p = 0.5);
        bad(&|c| c.budget = 100);
        bad(&|c| c.trials = 0);
        bad(&|c| c.graph = GraphKind::File);
        bad(&|c| {
            c.graph = GraphKind::File;
            c.graph_file = Some("/definitely/not/here.txt".into());
        });
        bad(&|c| c.model = BoundModel::Shifting);
        bad(&|c| {
            c.graph = GraphKind::Star;
            c.model = BoundModel::Drifting;
        });
        bad(&|c| {
            c.graph = GraphKind::QuasiStar;
            c.d = Some(5);
        });
        small().validate().unwrap();
    }

    #[test]
    fn noiseless_clique_costs_one_per_move() {
        let cfg = ExperimentConfig {
            p: 0.0,
            ..small()
        };
        let out = run_experiment(&cfg).unwrap();
        // each move costs one round, plus one if the start misses the target
        for t in &out.trials {
            let first_miss = t.rounds.as_ref().unwrap()[0].mistake as usize;
            assert!(t.mistakes == 3 || t.mistakes == 3 + first_miss);
        }
        assert_eq!(out.summary.bound, 3.0);
        assert_eq!(out.trials.len(), 4);
    }

    #[test]
    fn deterministic_outputs() {
        let cfg = ExperimentConfig {
            graph: GraphKind::Path,
            learner: LearnerKind::Mwu,
            model: BoundModel::Drifting,
            ..small()
        };
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(rounds_csv(&a.trials), rounds_csv(&b.trials));
        assert_eq!(summary_csv(std::slice::from_ref(&a.summary)), summary_csv(&[b.summary]));
        let csv = rounds_csv(&a.trials);
        assert!(csv.starts_with(&ROUNDS_HEADER.join(",")));
        assert_eq!(csv.lines().count(), 1 + 4 * 60);
    }

    #[test]
    fn seeds_differ_between_trials() {
        let out = run_experiment(&small()).unwrap();
        let seeds: Vec<u64> = out.trials.iter().map(|t| t.seed).collect();
        assert_eq!(seeds[0], mix_seed(11, 0));
        assert_ne!(seeds[0], seeds[1]);
    }

    #[test]
    fn star_reports_exact_value() {
        let cfg = ExperimentConfig {
            graph: GraphKind::Star,
            leaves: Some(5),
            ..small()
        };
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.summary.bound_name, "star");
        assert_eq!(out.summary.exact_name.as_deref(), Some("star_exact"));
        assert_eq!(out.summary.model, "complete_leaves");
        assert_eq!(out.summary.n, 6);
        let csv = summary_csv(&[out.summary]);
        assert!(csv.lines().nth(1).unwrap().contains(",star_exact,"));
    }

    #[test]
    fn sweeps() {
        let rows = run_sweep(&small(), "p", &split_values("0.05, 0.1,0.2")).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].label, "p=0.2");
        assert_eq!(rows[1].seed, mix_seed(11, 1));
        assert!(run_sweep(&small(), "p", &[]).is_err());
        assert!(run_sweep(&small(), "q", &["1".into()]).is_err());
        assert!(run_sweep(&small(), "p", &["0.7".into()]).is_err());
        let rows = run_sweep(&small(), "B", &split_values("0,2")).unwrap();
        assert_eq!(rows[0].budget, 0);
        assert_eq!(rows[1].budget, 2);
    }

    #[test]
    fn diameter_sizes() {
        let mut cfg = small();
        cfg.graph = GraphKind::Cycle;
        cfg.d = Some(4);
        assert_eq!(build_graph(&cfg).unwrap().vertex_count(), 8);
        cfg.graph = GraphKind::Path;
        assert_eq!(build_graph(&cfg).unwrap().diameter(), 4.0);
        cfg.graph = GraphKind::QuasiStar;
        assert_eq!(build_graph(&cfg).unwrap().diameter(), 4.0);
    }

    #[test]
    fn chain_reports() {
        let r = chain_report(ChainKind::Clique, 0, 0.1, 0.01, 10_000).unwrap();
        assert!((r.stationary[0] - 0.9 * 0.99).abs() < 1e-12);
        assert!((r.expected_mistakes - 1090.0).abs() < 1e-8);
        let text = r.to_text();
        assert!(text.contains("clique_bound"));

        let r = chain_report(ChainKind::QuasiStar, 4, 0.1, 0.05, 100).unwrap();
        assert_eq!(r.matrix.len(), 5);
        assert!(r.matrix_csv().starts_with("state,0,1,2,3,4\n"));

        let r = chain_report(ChainKind::Walk, 10, 0.25, 0.0, 100).unwrap();
        assert_eq!(r.correct_state, 10);
        let h0 = r.hitting_times[0];
        assert_eq!(h0.0, 0);
        assert!((h0.1 - 19.0).abs() < 1e-4);
        assert!(r.to_json().contains("\"hitting_times\""));
        assert!(chain_report(ChainKind::QuasiStar, 3, 0.1, 0.05, 100).is_err());
    }

    #[test]
    fn named_bounds() {
        let inputs = BoundInputs::parse(&[
            "R=100".into(),
            "B=10".into(),
            "p=0.1".into(),
            "d=2".into(),
        ])
        .unwrap();
        let r = bound_by_name("clique", &inputs).unwrap();
        assert!((r.value - 19.0).abs() < 1e-12);
        let all = all_bounds(&inputs).unwrap();
        let names: Vec<&str> = all.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            ["clique", "star", "star_exact", "diameter", "hitting", "t_off"]
        );
        assert!(bounds_csv(&all).starts_with("bound,term,value\nclique,value,19\n"));
        assert!(bounds_table(&all).contains("29.9"));
        assert!(matches!(
            bound_by_name("unified", &inputs),
            Err(Error::MissingParam("n_prime"))
        ));
        assert!(bound_by_name("nope", &inputs).is_err());
    }
}
