//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HornError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Lower and upper bounds of a variable; `None` is infinite.
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    pub lower: Option<BigRational>,
    pub upper: Option<BigRational>,
}

/// `maximize objective · x` subject to the constraints and variable bounds.
/// Variables are free unless bounded.
#[derive(Clone, Debug)]
pub struct RationalLp {
    objective: Vec<BigRational>,
    constraints: Vec<LinearConstraint>,
    bounds: Vec<Bounds>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl RationalLp {
    pub fn new(objective: Vec<BigRational>) -> Self {
        let n = objective.len();
        RationalLp {
            objective,
            constraints: Vec::new(),
            bounds: vec![Bounds::default(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[BigRational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<BigRational>,
        relation: Relation,
        rhs: BigRational,
    ) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(HornError::DimensionMismatch(format!(
                "constraint of length {} in an LP with {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(LinearConstraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn set_bounds(
        &mut self,
        var: usize,
        lower: Option<BigRational>,
        upper: Option<BigRational>,
    ) {
        self.bounds[var] = Bounds { lower, upper };
    }

    /// The box normalization `lo ≤ x_i ≤ hi` on every variable.
    pub fn set_box(&mut self, lo: &BigRational, hi: &BigRational) {
        for b in &mut self.bounds {
            *b = Bounds {
                lower: Some(lo.clone()),
                upper: Some(hi.clone()),
            };
        }
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.bounds[var] = Bounds {
            lower: Some(BigRational::zero()),
            upper: None,
        };
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        solve_lp(self)
    }
}

/// How an original variable maps onto nonnegative tableau columns.
enum Substitution {
    /// `x = offset + y`
    Shift { col: usize, offset: BigRational },
    /// `x = offset − y`
    Mirror { col: usize, offset: BigRational },
    /// `x = y⁺ − y⁻`
    Split { plus: usize, minus: usize },
}

pub fn solve_lp(lp: &RationalLp) -> Result<LpOutcome> {
    let zero = BigRational::zero();
    let n = lp.num_vars();

    let mut subs = Vec::with_capacity(n);
    let mut cols = 0usize;
    let mut rows: Vec<(Vec<(usize, BigRational)>, Relation, BigRational)> = Vec::new();
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(lo), hi) => {
                if let Some(hi) = hi {
                    if hi < lo {
                        return Ok(LpOutcome::Infeasible);
                    }
                    rows.push((vec![(cols, BigRational::one())], Relation::Le, hi - lo));
                }
                subs.push(Substitution::Shift {
                    col: cols,
                    offset: lo.clone(),
                });
                cols += 1;
            }
            (None, Some(hi)) => {
                subs.push(Substitution::Mirror {
                    col: cols,
                    offset: hi.clone(),
                });
                cols += 1;
            }
            (None, None) => {
                subs.push(Substitution::Split {
                    plus: cols,
                    minus: cols + 1,
                });
                cols += 2;
            }
        }
    }
    let structural = cols;

    let mut objective = vec![zero.clone(); structural];
    let mut objective_offset = zero.clone();
    for (c, sub) in lp.objective.iter().zip(&subs) {
        substitute(c, sub, &mut objective, &mut objective_offset);
    }
    for con in &lp.constraints {
        let mut dense = vec![zero.clone(); structural];
        let mut offset = zero.clone();
        for (c, sub) in con.coeffs.iter().zip(&subs) {
            substitute(c, sub, &mut dense, &mut offset);
        }
        let sparse = dense
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        rows.push((sparse, con.relation, &con.rhs - offset));
    }

    let outcome = Tableau::solve(structural, &objective, rows)?;
    Ok(match outcome {
        TableauOutcome::Optimal(y) => {
            let point: Vec<BigRational> = subs
                .iter()
                .map(|sub| match sub {
                    Substitution::Shift { col, offset } => offset + &y[*col],
                    Substitution::Mirror { col, offset } => offset - &y[*col],
                    Substitution::Split { plus, minus } => &y[*plus] - &y[*minus],
                })
                .collect();
            let value = lp
                .objective
                .iter()
                .zip(&point)
                .fold(BigRational::zero(), |acc, (c, x)| acc + c * x);
            LpOutcome::Optimal { value, point }
        }
        TableauOutcome::Unbounded => LpOutcome::Unbounded,
        TableauOutcome::Infeasible => LpOutcome::Infeasible,
    })
}

fn substitute(
    c: &BigRational,
    sub: &Substitution,
    dense: &mut [BigRational],
    offset: &mut BigRational,
) {
    if c.is_zero() {
        return;
    }
    match sub {
        Substitution::Shift { col, offset: o } => {
            dense[*col] += c;
            *offset += c * o;
        }
        Substitution::Mirror { col, offset: o } => {
            dense[*col] -= c;
            *offset += c * o;
        }
        Substitution::Split { plus, minus } => {
            dense[*plus] += c;
            dense[*minus] -= c;
        }
    }
}

enum TableauOutcome {
    Optimal(Vec<BigRational>),
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Reduced costs with the negated objective value in the last slot.
    cost: Vec<BigRational>,
    width: usize,
}

impl Tableau {
    fn solve(
        structural: usize,
        objective: &[BigRational],
        rows: Vec<(Vec<(usize, BigRational)>, Relation, BigRational)>,
    ) -> Result<TableauOutcome> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let m = rows.len();
        let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let mut art_needed = 0;
        for (_, rel, rhs) in &rows {
            let flipped = rhs.is_negative();
            let slack_basic = matches!(
                (rel, flipped),
                (Relation::Le, false) | (Relation::Ge, true)
            );
            if !slack_basic {
                art_needed += 1;
            }
        }
        let art_start = structural + slacks;
        let width = art_start + art_needed;

        let mut table = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_slack = structural;
        let mut next_art = art_start;
        for (sparse, rel, rhs) in rows {
            let mut row = vec![zero.clone(); width + 1];
            for (j, v) in sparse {
                row[j] = v;
            }
            let mut slack_col = None;
            match rel {
                Relation::Le => {
                    row[next_slack] = one.clone();
                    slack_col = Some(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -one.clone();
                    slack_col = Some(next_slack);
                    next_slack += 1;
                }
                Relation::Eq => {}
            }
            row[width] = rhs;
            if row[width].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            match slack_col {
                Some(c) if row[c].is_positive() => basis.push(c),
                _ => {
                    row[next_art] = one.clone();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            table.push(row);
        }

        let mut t = Tableau {
            rows: table,
            basis,
            cost: vec![zero.clone(); width + 1],
            width,
        };

        if art_needed > 0 {
            // Phase 1: maximize −Σ artificials.
            for i in 0..m {
                if t.basis[i] >= art_start {
                    for j in 0..=width {
                        if j < art_start || j == width {
                            let v = t.rows[i][j].clone();
                            t.cost[j] += v;
                        }
                    }
                }
            }
            if !t.run(width)? {
                unreachable!("phase 1 objective is bounded above by zero");
            }
            if t.cost[width].is_positive() {
                return Ok(TableauOutcome::Infeasible);
            }
            t.evict_artificials(art_start);
        }

        // Phase 2.
        let mut cost = vec![zero.clone(); width + 1];
        cost[..structural].clone_from_slice(objective);
        for (i, &b) in t.basis.iter().enumerate() {
            if b < structural && !objective[b].is_zero() {
                let cb = objective[b].clone();
                for j in 0..=width {
                    if !t.rows[i][j].is_zero() {
                        let delta = &cb * &t.rows[i][j];
                        cost[j] -= delta;
                    }
                }
            }
        }
        t.cost = cost;
        if !t.run(art_start)? {
            return Ok(TableauOutcome::Unbounded);
        }
        let mut y = vec![zero; structural];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < structural {
                y[b] = t.rows[i][width].clone();
            }
        }
        Ok(TableauOutcome::Optimal(y))
    }

    /// Runs simplex iterations over columns `< limit`. Returns `false` when
    /// the objective is unbounded.
    fn run(&mut self, limit: usize) -> Result<bool> {
        let width = self.width;
        loop {
            let Some(enter) = (0..limit).find(|&j| self.cost[j].is_positive()) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][width] / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Ok(false),
                Some((i, _)) => self.pivot(i, enter),
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let width = self.width;
        let inv = self.rows[pr][pc].recip();
        if !inv.is_one() {
            for v in self.rows[pr].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let prow = std::mem::take(&mut self.rows[pr]);
        let nz: Vec<usize> = (0..=width).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for &j in &nz {
                let delta = &f * &prow[j];
                row[j] -= delta;
            }
        }
        if !self.cost[pc].is_zero() {
            let f = self.cost[pc].clone();
            for &j in &nz {
                let delta = &f * &prow[j];
                self.cost[j] -= delta;
            }
        }
        self.rows[pr] = prow;
        self.basis[pr] = pc;
    }

    /// Pivots zero-level artificials out of the basis, dropping rows that
    /// are linear consequences of the others.
    fn evict_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
