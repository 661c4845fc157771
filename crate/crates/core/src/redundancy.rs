//! Exact redundancy tests for inequality systems.
//!
//! All constraints are homogeneous, so a constraint `c·x ≤ 0` is implied by
//! the others iff `max c·x` over the others intersected with the box
//! `[−1, 1]ⁿ` is zero. The default route solves the dual of that LP,
//!
//! ```text
//! minimize Σ (p_k + q_k)  subject to  Σ μ_i a_i + p − q = c,  μ, p, q ≥ 0,
//! ```
//!
//! whose optimum is the same number and whose optimal `μ` is a conic
//! certificate when it vanishes.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::CycleType;
use crate::error::{HornError, Result};
use crate::kirwan::{format_rational, Constraint, InequalitySystem, SystemLevel};
use crate::lp::{LpOutcome, RationalLp, Relation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    #[default]
    Dual,
    /// Maximize the candidate directly over the box.
    PrimalBox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Essential,
    Redundant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RedundancyVerdict {
    pub index: usize,
    pub kind: VerdictKind,
    /// `max c·x` over the other constraints and the box.
    pub optimum: BigRational,
    /// A box point satisfying the others with `c·x > 0` (essential case).
    pub point: Option<Vec<BigRational>>,
    /// `c = Σ μ_i a_i` with `μ_i ≥ 0` (redundant case, dual route).
    pub multipliers: Option<Vec<(usize, BigRational)>>,
}

impl RedundancyVerdict {
    pub fn is_redundant(&self) -> bool {
        self.kind == VerdictKind::Redundant
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RedundancyOptions {
    pub route: Route,
    /// Compute a primal point for every essential verdict.
    pub certificates: bool,
}

impl Default for RedundancyOptions {
    fn default() -> Self {
        RedundancyOptions {
            route: Route::Dual,
            certificates: true,
        }
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Decides whether `system[index]` follows from all other constraints.
pub fn is_redundant(system: &InequalitySystem, index: usize) -> Result<RedundancyVerdict> {
    let others: Vec<usize> = (0..system.len()).filter(|&i| i != index).collect();
    is_redundant_among(system, index, &others, RedundancyOptions::default())
}

/// Decides whether `system[index]` follows from the constraints `others`.
pub fn is_redundant_among(
    system: &InequalitySystem,
    index: usize,
    others: &[usize],
    options: RedundancyOptions,
) -> Result<RedundancyVerdict> {
    if index >= system.len() {
        return Err(HornError::DimensionMismatch(format!(
            "constraint {index} of a system with {} constraints",
            system.len()
        )));
    }
    let rows: Vec<Vec<BigRational>> = others
        .iter()
        .map(|&i| system.row(&system.constraints()[i]))
        .collect();
    let target = system.row(&system.constraints()[index]);
    let mut verdict = match options.route {
        Route::Dual => dual_route(&target, &rows)?,
        Route::PrimalBox => primal_route(&target, &rows)?,
    };
    verdict.index = index;
    if let Some(mu) = verdict.multipliers.as_mut() {
        for entry in mu.iter_mut() {
            entry.0 = others[entry.0];
        }
    }
    if verdict.kind == VerdictKind::Essential && options.certificates && verdict.point.is_none() {
        verdict.point = primal_route(&target, &rows)?.point;
    }
    if let Some(x) = &verdict.point {
        if !dot(&target, x).is_positive() || rows.iter().any(|a| dot(a, x).is_positive()) {
            return Err(HornError::NumericalFailure(format!(
                "certificate point for constraint {index} does not verify"
            )));
        }
    }
    Ok(verdict)
}

fn primal_route(target: &[BigRational], rows: &[Vec<BigRational>]) -> Result<RedundancyVerdict> {
    let mut lp = RationalLp::new(target.to_vec());
    for a in rows {
        lp.constrain(a.clone(), Relation::Le, BigRational::zero())?;
    }
    lp.set_box(&-BigRational::one(), &BigRational::one());
    match lp.solve()? {
        LpOutcome::Optimal { value, point } => {
            let essential = value.is_positive();
            Ok(RedundancyVerdict {
                index: 0,
                kind: if essential {
                    VerdictKind::Essential
                } else {
                    VerdictKind::Redundant
                },
                optimum: value,
                point: essential.then_some(point),
                multipliers: None,
            })
        }
        other => Err(HornError::NumericalFailure(format!(
            "bounded feasible LP reported {other:?}"
        ))),
    }
}

fn dual_route(target: &[BigRational], rows: &[Vec<BigRational>]) -> Result<RedundancyVerdict> {
    let n = target.len();
    let m = rows.len();
    // Columns: μ (m), p (n), q (n).
    let mut objective = vec![BigRational::zero(); m + 2 * n];
    for c in objective[m..].iter_mut() {
        *c = -BigRational::one();
    }
    let mut lp = RationalLp::new(objective);
    for k in 0..n {
        let mut coeffs = vec![BigRational::zero(); m + 2 * n];
        for (i, a) in rows.iter().enumerate() {
            coeffs[i] = a[k].clone();
        }
        coeffs[m + k] = BigRational::one();
        coeffs[m + n + k] = -BigRational::one();
        lp.constrain(coeffs, Relation::Eq, target[k].clone())?;
    }
    for v in 0..m + 2 * n {
        lp.set_nonnegative(v);
    }
    match lp.solve()? {
        LpOutcome::Optimal { value, point } => {
            let optimum = -value;
            if optimum.is_zero() {
                let multipliers = point[..m]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect::<Vec<_>>();
                let mut combo = vec![BigRational::zero(); n];
                for (i, mu) in &multipliers {
                    for (acc, a) in combo.iter_mut().zip(&rows[*i]) {
                        *acc += mu * a;
                    }
                }
                if combo != target {
                    return Err(HornError::NumericalFailure(
                        "redundancy multipliers do not reproduce the constraint".into(),
                    ));
                }
                Ok(RedundancyVerdict {
                    index: 0,
                    kind: VerdictKind::Redundant,
                    optimum,
                    point: None,
                    multipliers: Some(multipliers),
                })
            } else {
                Ok(RedundancyVerdict {
                    index: 0,
                    kind: VerdictKind::Essential,
                    optimum,
                    point: None,
                    multipliers: None,
                })
            }
        }
        other => Err(HornError::NumericalFailure(format!(
            "dual redundancy LP reported {other:?}"
        ))),
    }
}

/// Verdict of every constraint against all the others, independently.
pub fn check_all(
    system: &InequalitySystem,
    options: RedundancyOptions,
) -> Result<Vec<RedundancyVerdict>> {
    (0..system.len())
        .into_par_iter()
        .map(|index| {
            let others: Vec<usize> = (0..system.len()).filter(|&i| i != index).collect();
            is_redundant_among(system, index, &others, options)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RedundancyReport {
    pub r: u32,
    pub cycle_type: CycleType,
    pub level: SystemLevel,
    /// One verdict per constraint, in canonical order; each refers to the
    /// constraints retained at the moment it was examined.
    pub verdicts: Vec<RedundancyVerdict>,
}

impl RedundancyReport {
    pub fn retained(&self) -> Vec<usize> {
        self.verdicts
            .iter()
            .filter(|v| !v.is_redundant())
            .map(|v| v.index)
            .collect()
    }

    pub fn retained_count(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.is_redundant()).count()
    }

    pub fn reduced_system(&self, system: &InequalitySystem) -> InequalitySystem {
        let constraints: Vec<Constraint> = self
            .retained()
            .into_iter()
            .map(|i| system.constraints()[i].clone())
            .collect();
        InequalitySystem::from_constraints(
            system.r(),
            system.cycle_type().clone(),
            system.level(),
            constraints,
        )
    }

    pub fn to_json(&self, system: &InequalitySystem) -> String {
        #[derive(Serialize)]
        struct Row {
            index: usize,
            constraint: Constraint,
            inequality: String,
            verdict: VerdictKind,
            optimum: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            point: Option<Vec<String>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            multipliers: Option<Vec<(usize, String)>>,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            r: u32,
            cycle_type: &'a CycleType,
            level: SystemLevel,
            total: usize,
            retained: usize,
            verdicts: Vec<Row>,
        }
        let verdicts = self
            .verdicts
            .iter()
            .map(|v| {
                let con = &system.constraints()[v.index];
                Row {
                    index: v.index,
                    constraint: con.clone(),
                    inequality: system.render(con),
                    verdict: v.kind,
                    optimum: format_rational(&v.optimum),
                    point: v
                        .point
                        .as_ref()
                        .map(|p| p.iter().map(format_rational).collect()),
                    multipliers: v.multipliers.as_ref().map(|m| {
                        m.iter()
                            .map(|(i, mu)| (*i, format_rational(mu)))
                            .collect()
                    }),
                }
            })
            .collect();
        serde_json::to_string_pretty(&Out {
            r: self.r,
            cycle_type: &self.cycle_type,
            level: self.level,
            total: self.verdicts.len(),
            retained: self.retained_count(),
            verdicts,
        })
        .expect("reports serialize")
    }
}

/// Greedy removal in canonical order.
pub fn minimize_system(system: &InequalitySystem) -> Result<RedundancyReport> {
    minimize_system_with(system, RedundancyOptions::default())
}

pub fn minimize_system_with(
    system: &InequalitySystem,
    options: RedundancyOptions,
) -> Result<RedundancyReport> {
    let mut retained: Vec<bool> = vec![true; system.len()];
    let mut verdicts = Vec::with_capacity(system.len());
    for index in 0..system.len() {
        let others: Vec<usize> = (0..system.len())
            .filter(|&i| i != index && retained[i])
            .collect();
        let verdict = is_redundant_among(system, index, &others, options)?;
        if verdict.is_redundant() {
            retained[index] = false;
        }
        verdicts.push(verdict);
    }
    Ok(RedundancyReport {
        r: system.r(),
        cycle_type: system.cycle_type().clone(),
        level: system.level(),
        verdicts,
    })
}
