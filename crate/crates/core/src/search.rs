//! Numerical search for weighted 2-designs made of `m` bases in `C^d`, by
//! minimizing the frame potential `Σ_{a,b} w_a w_b Σ_{j,k} |⟨e_j^a|e_k^b⟩|^4`.
//!
//! A point holds one Hermitian generator per basis (`U_a = exp(i H_a)`, `d^2`
//! reals each) and `m` weight logits (`w = softmax(logits)/d`).

use std::path::Path;

use nalgebra::Schur;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::design::{verify_design, welch_bound, welch_sum, Basis, DesignReport, Provenance, Weight, WeightedBasisFamily};
use crate::error::{domain, Error, Result};
use crate::linalg::{c, CMatrix};
use crate::random::trial_rng;

/// Finite-difference step for [`gradient`].
pub const FD_STEP: f64 = 1e-5;
const MAX_HALVINGS: usize = 40;
const STALL_WINDOW: usize = 50;
const STALL_REL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub d: usize,
    pub m: usize,
    /// Iteration budget per restart.
    pub max_iters: usize,
    pub step: f64,
    /// Relative tolerance on the gap to the Welch bound.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(d: usize, m: usize) -> Self {
        Self {
            d,
            m,
            max_iters: 3000,
            step: 0.1,
            tol: 1e-8,
            restarts: 20,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d < 2 || self.m < 1 {
            return domain(format!("need d >= 2 and m >= 1, got d = {}, m = {}", self.d, self.m));
        }
        if !(self.tol > 0.0) || !(self.step > 0.0) || self.restarts == 0 {
            return domain("tolerance, step and restarts must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchPoint {
    pub d: usize,
    pub m: usize,
    /// `m·d^2` generator parameters followed by `m` logits.
    pub params: Vec<f64>,
}

impl SearchPoint {
    pub fn random<R: Rng + ?Sized>(d: usize, m: usize, rng: &mut R) -> Self {
        let mut params: Vec<f64> = (0..m * d * d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        params.extend((0..m).map(|_| 0.1 * rng.sample::<f64, _>(StandardNormal)));
        Self { d, m, params }
    }

    fn generator(&self, a: usize) -> CMatrix {
        let d = self.d;
        let p = &self.params[a * d * d..(a + 1) * d * d];
        let mut h = CMatrix::zeros(d, d);
        let mut k = d;
        for i in 0..d {
            h[(i, i)] = c(p[i], 0.0);
            for j in i + 1..d {
                h[(i, j)] = c(p[k], p[k + 1]);
                h[(j, i)] = c(p[k], -p[k + 1]);
                k += 2;
            }
        }
        h
    }

    pub fn unitary(&self, a: usize) -> CMatrix {
        (self.generator(a) * c(0.0, 1.0)).exp()
    }

    /// `softmax(logits) / d`.
    pub fn weights(&self) -> Vec<f64> {
        let logits = &self.params[self.m * self.d * self.d..];
        let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let e: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
        let s: f64 = e.iter().sum();
        e.iter().map(|x| x / s / self.d as f64).collect()
    }
}

/// The family encoded by `point`.
pub fn realize(point: &SearchPoint) -> Result<WeightedBasisFamily> {
    let bases = (0..point.m).map(|a| Basis::new(point.unitary(a))).collect::<Result<Vec<_>>>()?;
    let weights = point.weights().into_iter().map(Weight::approx).collect();
    WeightedBasisFamily::new(bases, weights, Provenance::named("numerical-search"))
}

/// Encodes an existing family: `H_a = -i log U_a` through a Schur form of
/// `U_a`, logits `log(w_a d)`.
pub fn from_family(family: &WeightedBasisFamily) -> SearchPoint {
    let d = family.dim();
    let mut params = Vec::with_capacity(family.len() * (d * d + 1));
    for b in family.bases() {
        let (q, t) = Schur::new(b.matrix().clone()).unpack();
        let mut diag = CMatrix::zeros(d, d);
        for i in 0..d {
            diag[(i, i)] = c(t[(i, i)].arg(), 0.0);
        }
        let h = &q * diag * q.adjoint();
        for i in 0..d {
            params.push(h[(i, i)].re);
        }
        for i in 0..d {
            for j in i + 1..d {
                params.push(h[(i, j)].re);
                params.push(h[(i, j)].im);
            }
        }
    }
    params.extend(family.weight_values().iter().map(|w| (w * d as f64).ln()));
    SearchPoint { d, m: family.len(), params }
}

/// Frame potential of the realized family; equal to its Welch sum at `t = 2`.
pub fn potential(point: &SearchPoint) -> f64 {
    welch_sum(&realize(point).expect("points encode valid families"), 2).expect("t = 2 is supported")
}

/// Central differences with step [`FD_STEP`].
pub fn gradient(point: &SearchPoint) -> Vec<f64> {
    gradient_with_step(point, FD_STEP)
}

pub fn gradient_with_step(point: &SearchPoint, h: f64) -> Vec<f64> {
    let mut p = point.clone();
    (0..point.params.len())
        .map(|i| {
            let x = p.params[i];
            p.params[i] = x + h;
            let up = potential(&p);
            p.params[i] = x - h;
            let down = potential(&p);
            p.params[i] = x;
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// One row of the progress log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProgressRow {
    pub restart: usize,
    pub iteration: usize,
    pub potential: f64,
    pub step: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub point: SearchPoint,
    pub potential: f64,
    pub bound: f64,
    /// `potential - bound`.
    pub gap: f64,
    pub certified: bool,
    /// Restart that produced `point`.
    pub restart: usize,
    pub log: Vec<ProgressRow>,
}

fn is_certified(value: f64, bound: f64, tol: f64) -> bool {
    (value - bound).abs() <= tol * bound
}

fn descend(start: SearchPoint, config: &SearchConfig, restart: usize, log: &mut Vec<ProgressRow>) -> (SearchPoint, f64) {
    let bound = welch_bound(2, config.d);
    let mut x = start;
    let mut fx = potential(&x);
    let mut step = config.step;
    let mut history = vec![fx];
    log.push(ProgressRow { restart, iteration: 0, potential: fx, step });
    for it in 1..=config.max_iters {
        if is_certified(fx, bound, config.tol) {
            break;
        }
        let g = gradient(&x);
        let gnorm2: f64 = g.iter().map(|v| v * v).sum();
        if gnorm2 == 0.0 {
            break;
        }
        let mut trial_step = step * 2.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let mut y = x.clone();
            for (p, gi) in y.params.iter_mut().zip(&g) {
                *p -= trial_step * gi;
            }
            let fy = potential(&y);
            if fy < fx {
                accepted = Some((y, fy));
                break;
            }
            trial_step *= 0.5;
        }
        let Some((y, fy)) = accepted else { break };
        x = y;
        fx = fy;
        step = trial_step;
        history.push(fx);
        log.push(ProgressRow { restart, iteration: it, potential: fx, step });
        if history.len() > STALL_WINDOW {
            let old = history[history.len() - 1 - STALL_WINDOW];
            if (old - fx) / old < STALL_REL {
                break;
            }
        }
    }
    (x, fx)
}

/// Gradient descent with backtracking from `restarts` seeded starting
/// points, stopping at the first certified point. Restart `r` starts from
/// `trial_rng(seed, r)`; the best point is the lowest potential, ties going
/// to the earlier restart.
pub fn minimize(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let bound = welch_bound(2, config.d);
    let mut log = Vec::new();
    let mut best: Option<(SearchPoint, f64, usize)> = None;
    for r in 0..config.restarts {
        let mut rng = trial_rng(config.seed, r as u64);
        let start = SearchPoint::random(config.d, config.m, &mut rng);
        let (x, fx) = descend(start, config, r, &mut log);
        if best.as_ref().is_none_or(|(_, f, _)| fx < *f) {
            best = Some((x, fx, r));
        }
        if is_certified(fx, bound, config.tol) {
            break;
        }
    }
    let (point, value, restart) = best.expect("at least one restart");
    Ok(SearchResult {
        certified: is_certified(value, bound, config.tol),
        gap: value - bound,
        point,
        potential: value,
        bound,
        restart,
        log,
    })
}

/// Realizes `point` and verifies it as a 2-design.
pub fn certify(point: &SearchPoint, tol: f64) -> Result<DesignReport> {
    verify_design(&realize(point)?, 2, tol)
}

/// The realized family with the search configuration in its provenance.
pub fn result_family(result: &SearchResult, config: &SearchConfig) -> Result<WeightedBasisFamily> {
    let family = realize(&result.point)?;
    let mut prov = Provenance::named("numerical-search");
    prov.parameters = vec![
        ("d".into(), config.d.to_string()),
        ("m".into(), config.m.to_string()),
        ("max_iters".into(), config.max_iters.to_string()),
        ("step".into(), config.step.to_string()),
        ("tol".into(), config.tol.to_string()),
        ("restarts".into(), config.restarts.to_string()),
        ("seed".into(), config.seed.to_string()),
        ("restart".into(), result.restart.to_string()),
    ];
    Ok(family.with_provenance(prov))
}

/// Writes `restart,iteration,potential,step` rows.
pub fn write_progress_csv(path: &Path, log: &[ProgressRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
    for row in log {
        w.serialize(row).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}
