//! Numerical witnesses for cone points: Hermitian matrices `X_1, …, X_s`
//! with prescribed spectra and `Σ X_l = t·I`, found by alternating
//! projections between the product of orbits and the affine subspace.
//!
//! The verdicts here are advisory. Exact membership comes from
//! [`crate::kirwan`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HornError, Result};
use crate::kirwan::SpectrumFamily;

pub const MAX_ORDER: usize = 12;
const JACOBI_THRESHOLD: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    data: DMatrix<Complex64>,
}

/// Eigenvalues in decreasing order with the matching unit eigenvectors as
/// columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Symmetrizes `(M + M*)/2`.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(HornError::DimensionMismatch(format!(
                "{}×{} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut h = HermitianMatrix { data: m };
        h.hermitize();
        Ok(h)
    }

    pub fn zeros(r: usize) -> Self {
        HermitianMatrix {
            data: DMatrix::zeros(r, r),
        }
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let r = values.len();
        HermitianMatrix {
            data: DMatrix::from_fn(r, r, |i, j| {
                if i == j {
                    Complex64::new(values[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    fn hermitize(&mut self) {
        let adj = self.data.adjoint();
        self.data = (&self.data + adj).scale(0.5);
    }

    pub fn trace(&self) -> f64 {
        (0..self.order()).map(|i| self.data[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn determinant(&self) -> f64 {
        self.data.clone().determinant().re
    }

    /// Cyclic Jacobi eigensolver.
    pub fn eigen(&self) -> Result<EigenDecomposition> {
        jacobi(&self.data)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigen()?.values)
    }
}

fn off_diagonal_norm(a: &DMatrix<Complex64>) -> f64 {
    let n = a.nrows();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += a[(i, j)].norm_sqr();
            }
        }
    }
    total.sqrt()
}

fn jacobi(input: &DMatrix<Complex64>) -> Result<EigenDecomposition> {
    let n = input.nrows();
    let mut a = input.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let mut sweeps = 0;
    while off_diagonal_norm(&a) > JACOBI_THRESHOLD * scale {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(HornError::NumericalFailure(format!(
                "Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                let phase = apq / abs;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

fn check_order(r: usize) -> Result<()> {
    if r == 0 || r > MAX_ORDER {
        return Err(HornError::DimensionMismatch(format!(
            "order {r} outside 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}

fn sorted_decreasing(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn conjugate_diagonal(u: &DMatrix<Complex64>, values: &[f64]) -> HermitianMatrix {
    let n = values.len();
    let mut scaled = u.clone();
    for j in 0..n {
        for i in 0..n {
            scaled[(i, j)] *= values[j];
        }
    }
    let mut h = HermitianMatrix {
        data: scaled * u.adjoint(),
    };
    h.hermitize();
    h
}

/// Haar-distributed unitary from the QR factorization of a complex
/// Gaussian matrix, with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary(r: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(r, r, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    let qr = z.qr();
    let mut q = qr.q();
    let rmat = qr.r();
    for j in 0..r {
        let d = rmat[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..r {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A Haar-random point `U·diag(λ)·U*` of the orbit `O_λ`.
pub fn sample_orbit(lambda: &[f64], seed: u64) -> Result<HermitianMatrix> {
    check_order(lambda.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_orbit_with(lambda, &mut rng))
}

fn sample_orbit_with(lambda: &[f64], rng: &mut ChaCha8Rng) -> HermitianMatrix {
    let u = haar_unitary(lambda.len(), rng);
    conjugate_diagonal(&u, &sorted_decreasing(lambda))
}

/// Nearest point of `O_λ` in Frobenius norm.
pub fn project_to_orbit(x: &HermitianMatrix, lambda: &[f64]) -> Result<HermitianMatrix> {
    if lambda.len() != x.order() {
        return Err(HornError::DimensionMismatch(format!(
            "spectrum of length {} for a matrix of order {}",
            lambda.len(),
            x.order()
        )));
    }
    let eig = x.eigen()?;
    Ok(conjugate_diagonal(&eig.vectors, &sorted_decreasing(lambda)))
}

#[derive(Clone, Copy, Debug)]
pub struct WitnessOptions {
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    /// A run ends early when its sum residual shrinks by less than the
    /// factor `1 − stall_ratio` over `stall_window` iterations; `0`
    /// disables the check.
    pub stall_window: usize,
    pub stall_ratio: f64,
    /// Keep the per-iteration residuals of the returned run.
    pub record_history: bool,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            max_iters: 5000,
            tol: 1e-8,
            seed: 0,
            restarts: 20,
            stall_window: 500,
            stall_ratio: 1e-6,
            record_history: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Converged,
    /// No run reached the tolerance. This is not evidence of non-membership.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `‖Σ X_l − tI‖_F` after the orbit projections.
    pub sum_residual: f64,
    /// Distance of the affine iterate to the product of orbits.
    pub orbit_gap: f64,
}

#[derive(Clone, Debug)]
pub struct WitnessResult {
    pub matrices: Vec<HermitianMatrix>,
    /// `max(‖ΣX_l − tI‖_F, max_l ‖spec(X_l) − Λ_l‖_∞)`.
    pub residual: f64,
    pub sum_residual: f64,
    pub spectrum_residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub status: WitnessStatus,
    /// Index of the restart that produced these matrices.
    pub restart: usize,
    /// Whether the orbit gap was non-increasing along the run.
    pub monotone: bool,
    pub history: Vec<IterationRecord>,
}

struct Run {
    matrices: Vec<HermitianMatrix>,
    sum_residual: f64,
    spectrum_residual: f64,
    iterations: usize,
    monotone: bool,
    history: Vec<IterationRecord>,
}

impl Run {
    fn residual(&self) -> f64 {
        self.sum_residual.max(self.spectrum_residual)
    }
}

fn sum_residual(matrices: &[HermitianMatrix], t: f64) -> DMatrix<Complex64> {
    let r = matrices[0].order();
    let mut total = DMatrix::<Complex64>::zeros(r, r);
    for x in matrices {
        total += &x.data;
    }
    for i in 0..r {
        total[(i, i)] -= Complex64::new(t, 0.0);
    }
    total
}

fn frobenius(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn spectrum_residual(matrices: &[HermitianMatrix], spectra: &[Vec<f64>]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (x, lambda) in matrices.iter().zip(spectra) {
        let values = x.eigenvalues()?;
        for (a, b) in values.iter().zip(sorted_decreasing(lambda)) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

fn run_once(
    spectra: &[Vec<f64>],
    t: f64,
    options: &WitnessOptions,
    restart: usize,
) -> Result<Run> {
    let s = spectra.len();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    rng.set_stream(restart as u64);
    let mut xs: Vec<HermitianMatrix> = spectra
        .iter()
        .map(|lambda| sample_orbit_with(lambda, &mut rng))
        .collect();
    let mut history = Vec::new();
    let mut monotone = true;
    let mut last_gap = f64::INFINITY;
    let mut last_sum = frobenius(&sum_residual(&xs, t));
    let mut window_sum = last_sum;
    for iteration in 1..=options.max_iters {
        let correction = sum_residual(&xs, t).scale(1.0 / s as f64);
        let mut gap_sq = 0.0;
        for (x, lambda) in xs.iter_mut().zip(spectra) {
            let mut y = HermitianMatrix {
                data: &x.data - &correction,
            };
            y.hermitize();
            let projected = project_to_orbit(&y, lambda)?;
            gap_sq += frobenius(&(&projected.data - &y.data)).powi(2);
            *x = projected;
        }
        let gap = gap_sq.sqrt();
        let sum = frobenius(&sum_residual(&xs, t));
        let slack = 1e-12 * (1.0 + last_sum);
        if gap > last_gap + slack || gap > last_sum / (s as f64).sqrt() + slack {
            monotone = false;
        }
        last_gap = gap;
        last_sum = sum;
        if options.record_history {
            history.push(IterationRecord {
                iteration,
                sum_residual: sum,
                orbit_gap: gap,
            });
        }
        let mut stalled = false;
        if options.stall_window > 0 && iteration % options.stall_window == 0 {
            stalled = sum > (1.0 - options.stall_ratio) * window_sum;
            window_sum = sum;
        }
        let last = stalled || iteration == options.max_iters;
        if sum <= options.tol || last {
            let spec = spectrum_residual(&xs, spectra)?;
            if sum.max(spec) <= options.tol || last {
                return Ok(Run {
                    matrices: xs,
                    sum_residual: sum,
                    spectrum_residual: spec,
                    iterations: iteration,
                    monotone,
                    history,
                });
            }
        }
    }
    unreachable!("the loop returns on its last iteration")
}

/// Searches for a witness of `(Λ, t)` given as floating-point data.
pub fn find_witness_f64(
    spectra: &[Vec<f64>],
    t: f64,
    options: &WitnessOptions,
) -> Result<WitnessResult> {
    let Some(first) = spectra.first() else {
        return Err(HornError::DimensionMismatch("no spectra".into()));
    };
    check_order(first.len())?;
    if spectra.iter().any(|l| l.len() != first.len()) {
        return Err(HornError::DimensionMismatch("spectra of different lengths".into()));
    }
    if options.max_iters == 0 {
        return Err(HornError::NumericalFailure("max_iters must be positive".into()));
    }
    let attempts = options.restarts.max(1);
    let batch = rayon::current_num_threads().max(1);
    let mut best: Option<(usize, Run)> = None;
    let mut start = 0;
    while start < attempts {
        let end = (start + batch).min(attempts);
        let runs: Vec<Result<Run>> = (start..end)
            .into_par_iter()
            .map(|k| run_once(spectra, t, options, k))
            .collect();
        for (k, run) in (start..end).zip(runs) {
            let run = run?;
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    let done = run.residual() <= options.tol;
                    let best_done = b.residual() <= options.tol;
                    (done && !best_done) || (done == best_done && !done && run.residual() < b.residual())
                }
            };
            if better {
                best = Some((k, run));
            }
        }
        if best.as_ref().is_some_and(|(_, b)| b.residual() <= options.tol) {
            break;
        }
        start = end;
    }
    let (restart, run) = best.expect("at least one attempt");
    let residual = run.residual();
    let converged = residual <= options.tol;
    Ok(WitnessResult {
        residual,
        sum_residual: run.sum_residual,
        spectrum_residual: run.spectrum_residual,
        iterations: run.iterations,
        converged,
        status: if converged {
            WitnessStatus::Converged
        } else {
            WitnessStatus::Inconclusive
        },
        restart,
        monotone: run.monotone,
        history: run.history,
        matrices: run.matrices,
    })
}

pub fn find_witness(family: &SpectrumFamily, options: &WitnessOptions) -> Result<WitnessResult> {
    let (spectra, t) = family.to_f64();
    find_witness_f64(&spectra, t, options)
}

impl WitnessResult {
    /// Recomputes the residual from scratch with an independent eigensolver.
    pub fn verify(&self, spectra: &[Vec<f64>], t: f64) -> f64 {
        let sum = frobenius(&sum_residual(&self.matrices, t));
        let mut spec = 0.0f64;
        for (x, lambda) in self.matrices.iter().zip(spectra) {
            let eig = nalgebra::SymmetricEigen::new(x.data.clone());
            let values = sorted_decreasing(eig.eigenvalues.as_slice());
            for (a, b) in values.iter().zip(sorted_decreasing(lambda)) {
                spec = spec.max((a - b).abs());
            }
        }
        sum.max(spec)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            status: WitnessStatus,
            converged: bool,
            residual: f64,
            sum_residual: f64,
            spectrum_residual: f64,
            iterations: usize,
            restart: usize,
            monotone: bool,
            matrices: Vec<Vec<Vec<[f64; 2]>>>,
            #[serde(skip_serializing_if = "<[_]>::is_empty")]
            history: &'a [IterationRecord],
        }
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                (0..m.order())
                    .map(|i| {
                        (0..m.order())
                            .map(|j| {
                                let z = m.entry(i, j);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string_pretty(&Out {
            status: self.status,
            converged: self.converged,
            residual: self.residual,
            sum_residual: self.sum_residual,
            spectrum_residual: self.spectrum_residual,
            iterations: self.iterations,
            restart: self.restart,
            monotone: self.monotone,
            matrices,
            history: &self.history,
        })
        .expect("witness results serialize")
    }

    /// Per-iteration residuals as CSV.
    pub fn history_csv(&self) -> String {
        let mut out = String::from("iteration,sum_residual,orbit_gap\n");
        for rec in &self.history {
            out.push_str(&format!(
                "{},{:e},{:e}\n",
                rec.iteration, rec.sum_residual, rec.orbit_gap
            ));
        }
        out
    }
}
