//! Closed-form mistake bounds.
//!
//! Logarithms are base 2 throughout, so entropies are in bits and the noise
//! inflation factor is `1 / (1 - H(p))`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// `log2(x)` with `log2(0)` read as 0, for terms like `(B+1) log B` that
/// vanish with their budget.
fn log2_or_zero(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.log2()
    }
}

/// `R * H(B / R)`, 0 when `R = 0`.
fn budget_entropy_term(budget: usize, rounds: usize) -> f64 {
    if rounds == 0 {
        return 0.0;
    }
    rounds as f64 * entropy(budget as f64 / rounds as f64)
}

fn check_budget(budget: usize, rounds: usize) -> Result<()> {
    if budget > rounds {
        return Err(Error::InvalidParameter {
            name: "B",
            value: budget as f64,
            reason: "move budget cannot exceed the number of rounds",
        });
    }
    Ok(())
}

/// `1 / (1 - H(p))`.
pub fn noise_factor(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1]",
        });
    }
    let gap = 1.0 - entropy(p);
    if gap <= 1e-15 {
        return Err(Error::NoisePoorlyPosed(p));
    }
    if p > 0.5 {
        return Err(Error::InvalidNoise(p));
    }
    Ok(1.0 / gap)
}

/// A bound value with the terms it was assembled from:
/// `value = scale * sum(components)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Vec<(String, f64)>,
    pub components: Vec<(String, f64)>,
    pub scale: f64,
    pub value: f64,
}

impl BoundReport {
    fn assemble(
        name: &str,
        inputs: Vec<(&str, f64)>,
        components: Vec<(&str, f64)>,
        scale: f64,
    ) -> Self {
        let value = scale * components.iter().map(|(_, x)| x).sum::<f64>();
        BoundReport {
            name: name.to_string(),
            inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            components: components
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            scale,
            value,
        }
    }

    /// A bound that is a single closed-form number.
    pub fn scalar(name: &str, inputs: Vec<(&str, f64)>, value: f64) -> Self {
        Self::assemble(name, inputs, vec![("value", value)], 1.0)
    }

    pub fn input(&self, key: &str) -> Option<f64> {
        self.inputs.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

/// `(log n' + B log Δ' + R H(B/R)) / (1 - H(p))`.
pub fn unified_bound(
    dup_count: usize,
    max_out_degree: usize,
    budget: usize,
    rounds: usize,
    p: f64,
) -> Result<BoundReport> {
    check_budget(budget, rounds)?;
    if dup_count == 0 || max_out_degree == 0 {
        return Err(Error::InvalidParameter {
            name: "n', Δ'",
            value: dup_count.min(max_out_degree) as f64,
            reason: "need n' >= 1 and Δ' >= 1",
        });
    }
    let scale = noise_factor(p)?;
    Ok(BoundReport::assemble(
        "unified",
        vec![
            ("n'", dup_count as f64),
            ("Δ'", max_out_degree as f64),
            ("B", budget as f64),
            ("R", rounds as f64),
            ("p", p),
        ],
        vec![
            ("log n'", (dup_count as f64).log2()),
            ("B log Δ'", budget as f64 * (max_out_degree as f64).log2()),
            ("R H(B/R)", budget_entropy_term(budget, rounds)),
        ],
        scale,
    ))
}

/// Mass of the true target sequence under the uniform sequence prior, in
/// both of its forms, as base-2 logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequencePrior {
    /// `log2(1 / (n' Δ'^B C(R, B)))`.
    pub log2_exact: f64,
    /// `log2((1/n') π_out^B (1 - b)^(R - B))` with `b = B/R`, `π_out = b/Δ'`.
    pub log2_product: f64,
}

impl SequencePrior {
    pub fn exact(&self) -> f64 {
        self.log2_exact.exp2()
    }

    pub fn product(&self) -> f64 {
        self.log2_product.exp2()
    }

    /// `log2(exact / product) = R H(B/R) - log2 C(R, B)`, never negative.
    pub fn log2_gap(&self) -> f64 {
        self.log2_exact - self.log2_product
    }
}

/// `log2 C(n, k)` as a sum of logs; exact enough for `n` in the millions.
pub fn log2_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).log2())
        .sum()
}

pub fn sequence_prior(
    dup_count: usize,
    max_out_degree: usize,
    budget: usize,
    rounds: usize,
) -> Result<SequencePrior> {
    check_budget(budget, rounds)?;
    if dup_count == 0 || max_out_degree == 0 {
        return Err(Error::InvalidParameter {
            name: "n', Δ'",
            value: dup_count.min(max_out_degree) as f64,
            reason: "need n' >= 1 and Δ' >= 1",
        });
    }
    let log_n = (dup_count as f64).log2();
    let log_delta = (max_out_degree as f64).log2();
    let log2_exact = -(log_n + budget as f64 * log_delta + log2_binomial(rounds, budget));

    let mut log2_product = -log_n;
    if rounds > 0 {
        let b = budget as f64 / rounds as f64;
        if budget > 0 {
            log2_product += budget as f64 * (b / max_out_degree as f64).log2();
        }
        if budget < rounds {
            log2_product += (rounds - budget) as f64 * (1.0 - b).log2();
        }
    }
    Ok(SequencePrior {
        log2_exact,
        log2_product,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundModel {
    Drifting,
    Shifting,
    ShortestPath,
    MNeighborhood,
    Complete,
}

impl BoundModel {
    pub fn name(self) -> &'static str {
        match self {
            BoundModel::Drifting => "drifting",
            BoundModel::Shifting => "shifting",
            BoundModel::ShortestPath => "shortest_path",
            BoundModel::MNeighborhood => "m_neighborhood",
            BoundModel::Complete => "complete",
        }
    }
}

/// Parameters for [`model_bound`]; which of the optional ones are needed
/// depends on the model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelParams {
    pub n: Option<usize>,
    /// Maximum degree of the feedback graph (drifting, m-neighborhood).
    pub max_degree: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub budget: usize,
    pub rounds: usize,
    pub p: f64,
}

/// The evolution-model corollaries of the unified bound.
pub fn model_bound(model: BoundModel, params: &ModelParams) -> Result<BoundReport> {
    let ModelParams {
        budget,
        rounds,
        p,
        ..
    } = *params;
    check_budget(budget, rounds)?;
    let scale = noise_factor(p)?;
    let n = params.n.ok_or(Error::MissingParam("n"))? as f64;
    let bf = budget as f64;
    let rh = budget_entropy_term(budget, rounds);
    let log_n = n.log2();
    let mut inputs = vec![("n", n), ("B", bf), ("R", rounds as f64), ("p", p)];

    let components = match model {
        BoundModel::Drifting => {
            let delta = params.max_degree.ok_or(Error::MissingParam("Δ"))? as f64;
            inputs.push(("Δ", delta));
            vec![("log n", log_n), ("B log Δ", bf * log2_or_zero(delta))]
        }
        BoundModel::Shifting => {
            let k = params.k.ok_or(Error::MissingParam("k"))? as f64;
            inputs.push(("k", k));
            vec![
                ("k log n", k * log_n),
                ("(B+1) log k", (bf + 1.0) * log2_or_zero(k)),
            ]
        }
        BoundModel::ShortestPath => vec![
            ("B log n", bf * log_n),
            ("(B+1) log B", (bf + 1.0) * log2_or_zero(bf)),
        ],
        BoundModel::MNeighborhood => {
            let delta = params.max_degree.ok_or(Error::MissingParam("Δ"))? as f64;
            let m = params.m.ok_or(Error::MissingParam("m"))? as f64;
            inputs.push(("Δ", delta));
            inputs.push(("m", m));
            vec![("log n", log_n), ("B m log Δ", bf * m * log2_or_zero(delta))]
        }
        BoundModel::Complete => vec![("(B+1) log n", (bf + 1.0) * log_n)],
    };
    let mut components = components;
    components.push(("R H(B/R)", rh));
    Ok(BoundReport::assemble(model.name(), inputs, components, scale))
}

/// Main term of the lower bound for the path instance:
/// `(log n + B log Δ' + R H(B/R)) / (1 - H(1 - p))`.
pub fn lower_bound_main_term(
    n: usize,
    max_out_degree: usize,
    budget: usize,
    rounds: usize,
    p: f64,
) -> Result<f64> {
    check_budget(budget, rounds)?;
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidNoise(p));
    }
    let bits = (n as f64).log2()
        + budget as f64 * (max_out_degree as f64).log2()
        + budget_entropy_term(budget, rounds);
    Ok(bits / (1.0 - entropy(1.0 - p)))
}

fn check_rounds_noise(rounds: usize, budget: usize, p: f64) -> Result<()> {
    check_budget(budget, rounds)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

fn require_half(p: f64) -> Result<()> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidNoise(p));
    }
    Ok(())
}

/// Follow-the-feedback on a clique: `B + p (R - B)`.
pub fn clique_bound(rounds: usize, budget: usize, p: f64) -> Result<f64> {
    check_rounds_noise(rounds, budget, p)?;
    let (r, b) = (rounds as f64, budget as f64);
    Ok(b + p * (r - b))
}

/// Follow-the-feedback on a star: `2B + p (R - B) + p^2 (R - B)`.
pub fn star_bound(rounds: usize, budget: usize, p: f64) -> Result<f64> {
    check_rounds_noise(rounds, budget, p)?;
    let (r, b) = (rounds as f64, budget as f64);
    Ok(2.0 * b + p * (r - b) + p * p * (r - b))
}

/// The star's expected mistakes before the final relaxation:
/// `B + p(R-B) + [B + p^2(R-B)] (1-p)(R-B) / (B + p^2(R-B) + (1-p)R)`.
pub fn star_exact(rounds: usize, budget: usize, p: f64) -> Result<f64> {
    check_rounds_noise(rounds, budget, p)?;
    let (r, b) = (rounds as f64, budget as f64);
    let stray = b + p * p * (r - b);
    let denom = stray + (1.0 - p) * r;
    let extra = if denom == 0.0 {
        0.0
    } else {
        stray * (1.0 - p) * (r - b) / denom
    };
    Ok(b + p * (r - b) + extra)
}

/// Follow-the-feedback on a diameter-`d` graph:
/// `(d B - p B / (1 - 2p) + p R) / (1 - p)`.
pub fn diameter_bound(d: usize, rounds: usize, budget: usize, p: f64) -> Result<f64> {
    check_rounds_noise(rounds, budget, p)?;
    require_half(p)?;
    let (r, b, d) = (rounds as f64, budget as f64, d as f64);
    Ok((d * b - p * b / (1.0 - 2.0 * p) + p * r) / (1.0 - p))
}

/// The stated walk hitting-time bound `d / (1 - 2p) - p / (1 - 2p)^2`.
pub fn hitting_bound(d: usize, p: f64) -> Result<f64> {
    require_half(p)?;
    let s = 1.0 - 2.0 * p;
    Ok(d as f64 / s - p / (s * s))
}

/// `p / (1 - p)`.
pub fn t_off_bound(p: f64) -> Result<f64> {
    require_half(p)?;
    Ok(p / (1.0 - p))
}
