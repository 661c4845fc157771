//! Inequality systems for the Kirwan cone `K(r, s)` and its `σ`-stable slice,
//! and exact membership of rational spectra.
//!
//! A system for cycle type `σ` lives in reduced coordinates: one spectrum per
//! cycle of the canonical permutation plus `t`, so `p·r + 1` variables for a
//! type with `p` cycles. Every constraint is homogeneous and written as
//! `row · x ≤ 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::{CycleType, Permutation, SubsetTuple};
use crate::engine::HornStore;
use crate::error::{HornError, Result};

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let value =
        BigRational::from_str(text).map_err(|_| HornError::InvalidRational(text.to_string()))?;
    Ok(value)
}

/// `"p/q"` in lowest terms with `q > 0`, or `"p"` when `q = 1`.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A candidate cone point `(Λ, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumFamily {
    spectra: Vec<Vec<BigRational>>,
    t: BigRational,
}

impl SpectrumFamily {
    pub fn new(spectra: Vec<Vec<BigRational>>, t: BigRational) -> Result<Self> {
        let Some(first) = spectra.first() else {
            return Err(HornError::DimensionMismatch("no spectra".into()));
        };
        let r = first.len();
        if r == 0 {
            return Err(HornError::DimensionMismatch("empty spectrum".into()));
        }
        if let Some(bad) = spectra.iter().find(|row| row.len() != r) {
            return Err(HornError::DimensionMismatch(format!(
                "spectra of lengths {r} and {}",
                bad.len()
            )));
        }
        Ok(SpectrumFamily { spectra, t })
    }

    pub fn from_integers(spectra: &[Vec<i64>], t: i64) -> Result<Self> {
        let rows = spectra
            .iter()
            .map(|row| row.iter().map(|&v| int(v)).collect())
            .collect();
        SpectrumFamily::new(rows, int(t))
    }

    pub fn spectra(&self) -> &[Vec<BigRational>] {
        &self.spectra
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn r(&self) -> usize {
        self.spectra[0].len()
    }

    pub fn s(&self) -> usize {
        self.spectra.len()
    }

    /// `T(Λ)`, the sum of all eigenvalues.
    pub fn trace(&self) -> BigRational {
        self.spectra
            .iter()
            .flatten()
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// First spectrum (0-based) that is not weakly decreasing.
    pub fn unsorted_spectrum(&self) -> Option<usize> {
        self.spectra
            .iter()
            .position(|row| row.windows(2).any(|w| w[0] < w[1]))
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.unsorted_spectrum().is_none()
    }

    /// Whether `Λ` is constant along every cycle of the canonical permutation.
    pub fn is_stable_under(&self, cycle_type: &CycleType) -> bool {
        cycle_type.arity() == self.s()
            && cycle_type.cycles().iter().all(|cycle| {
                cycle
                    .iter()
                    .all(|&l| self.spectra[l - 1] == self.spectra[cycle[0] - 1])
            })
    }

    /// `σ · (Λ, t)`.
    pub fn act(&self, sigma: &Permutation) -> Result<SpectrumFamily> {
        Ok(SpectrumFamily {
            spectra: sigma.act(&self.spectra)?,
            t: self.t.clone(),
        })
    }

    /// `(c(Λ_l + τ_l·1))_l` with `t' = c(t + Σ τ_l)`.
    pub fn shift_rescale(&self, tau: &[BigRational], c: &BigRational) -> Result<SpectrumFamily> {
        shift_rescale(self, tau, c)
    }

    pub fn to_f64(&self) -> (Vec<Vec<f64>>, f64) {
        use num_traits::ToPrimitive;
        let conv = |v: &BigRational| v.to_f64().unwrap_or(f64::NAN);
        (
            self.spectra
                .iter()
                .map(|row| row.iter().map(conv).collect())
                .collect(),
            conv(&self.t),
        )
    }
}

impl fmt::Display for SpectrumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (l, row) in self.spectra.iter().enumerate() {
            if l > 0 {
                write!(f, ", ")?;
            }
            let items: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "({})", items.join(","))?;
        }
        write!(f, "; t = {})", format_rational(&self.t))
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumFamilyJson {
    spectra: Vec<Vec<String>>,
    t: String,
}

impl Serialize for SpectrumFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpectrumFamilyJson {
            spectra: self
                .spectra
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            t: format_rational(&self.t),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectrumFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SpectrumFamilyJson::deserialize(deserializer)?;
        let spectra = raw
            .spectra
            .iter()
            .map(|row| row.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let t = parse_rational(&raw.t).map_err(D::Error::custom)?;
        SpectrumFamily::new(spectra, t).map_err(D::Error::custom)
    }
}

pub fn shift_rescale(
    family: &SpectrumFamily,
    tau: &[BigRational],
    c: &BigRational,
) -> Result<SpectrumFamily> {
    if !c.is_positive() {
        return Err(HornError::NonPositiveScale(format_rational(c)));
    }
    if tau.len() != family.s() {
        return Err(HornError::ArityMismatch {
            expected: family.s(),
            got: tau.len(),
        });
    }
    let spectra = family
        .spectra
        .iter()
        .zip(tau)
        .map(|(row, shift)| row.iter().map(|v| c * (v + shift)).collect())
        .collect();
    let total = tau.iter().fold(family.t.clone(), |acc, v| acc + v);
    Ok(SpectrumFamily {
        spectra,
        t: c * total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemLevel {
    /// Horn inequalities from every `JJ ∈ Intersecting⁰(d, r, s)`.
    Full0,
    /// Horn inequalities from `Intersecting⁰⁰` only.
    Min00,
    /// Horn inequalities from the whole of `Intersecting(d, r, s)`.
    Intersecting,
}

impl FromStr for SystemLevel {
    type Err = HornError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full0" | "0" => Ok(SystemLevel::Full0),
            "min00" | "00" => Ok(SystemLevel::Min00),
            "intersecting" | "full" => Ok(SystemLevel::Intersecting),
            other => Err(HornError::InvalidTuple(format!("unknown level {other:?}"))),
        }
    }
}

impl fmt::Display for SystemLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemLevel::Full0 => "full0",
            SystemLevel::Min00 => "min00",
            SystemLevel::Intersecting => "intersecting",
        })
    }
}

/// `T_JJ(Λ) ≤ d·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub d: u32,
    #[serde(rename = "JJ")]
    pub tuple: SubsetTuple,
    /// Stability of `JJ` under the system's permutation, or under the full
    /// `s`-cycle for systems without one.
    pub sigma_stable: bool,
    /// `None` when the table carried no `⁰⁰` flags.
    pub is00: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// `T(Λ) ≤ r·t`
    TraceUpper,
    /// `T(Λ) ≥ r·t`
    TraceLower,
    /// `Λ_l(i) ≥ Λ_l(i + 1)`, 1-based.
    Chamber { spectrum: usize, index: u32 },
    Horn(Inequality),
}

impl Constraint {
    pub fn horn(&self) -> Option<&Inequality> {
        match self {
            Constraint::Horn(ineq) => Some(ineq),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Constraint::TraceUpper => "trace_upper",
            Constraint::TraceLower => "trace_lower",
            Constraint::Chamber { .. } => "chamber",
            Constraint::Horn(_) => "horn",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SystemCounts {
    pub total: usize,
    pub equality: usize,
    pub chamber: usize,
    pub horn: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalitySystem {
    r: u32,
    s: usize,
    cycle_type: CycleType,
    level: SystemLevel,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NotMember {
        index: usize,
        constraint: Constraint,
        excess: BigRational,
    },
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }
}

/// Builds the tables the generator reads: `(d, r)` for every `d < r`.
pub fn prepare_store(store: &mut HornStore, r: u32, cycle_type: &CycleType) -> Result<()> {
    store.build_through(r, cycle_type, Default::default())
}

pub fn generate_system(
    store: &HornStore,
    r: u32,
    cycle_type: &CycleType,
    level: SystemLevel,
) -> Result<InequalitySystem> {
    if r == 0 {
        return Err(HornError::DimensionMismatch("r must be positive".into()));
    }
    let s = cycle_type.arity();
    let mut constraints = vec![Constraint::TraceUpper, Constraint::TraceLower];
    let drop_chamber = level == SystemLevel::Min00 && r == 2 && s == 3 && cycle_type.is_identity();
    if !drop_chamber {
        for cycle in cycle_type.cycles() {
            for index in 1..r {
                constraints.push(Constraint::Chamber {
                    spectrum: cycle[0],
                    index,
                });
            }
        }
    }
    let stability = if cycle_type.is_identity() {
        CycleType::new(vec![s]).expect("a single cycle is a valid type")
    } else {
        cycle_type.clone()
    };
    for d in 1..r {
        let table = store.require(d, r, cycle_type)?;
        if level == SystemLevel::Min00 && !table.has_00_flags() {
            return Err(HornError::MissingDependency {
                d: d as usize,
                r: r as usize,
            });
        }
        for entry in &table.entries {
            let keep = match level {
                SystemLevel::Intersecting => true,
                SystemLevel::Full0 => entry.in0,
                SystemLevel::Min00 => entry.in00 == Some(true),
            };
            if keep {
                constraints.push(Constraint::Horn(Inequality {
                    d,
                    tuple: entry.tuple.clone(),
                    sigma_stable: entry.tuple.is_stable_under(&stability),
                    is00: entry.in00,
                }));
            }
        }
    }
    Ok(InequalitySystem {
        r,
        s,
        cycle_type: cycle_type.clone(),
        level,
        constraints,
    })
}

impl InequalitySystem {
    /// A system from explicit constraints, e.g. a reduced subsystem.
    pub fn from_constraints(
        r: u32,
        cycle_type: CycleType,
        level: SystemLevel,
        constraints: Vec<Constraint>,
    ) -> Self {
        InequalitySystem {
            r,
            s: cycle_type.arity(),
            cycle_type,
            level,
            constraints,
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn cycle_type(&self) -> &CycleType {
        &self.cycle_type
    }

    pub fn level(&self) -> SystemLevel {
        self.level
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn horn(&self) -> impl Iterator<Item = &Inequality> {
        self.constraints.iter().filter_map(Constraint::horn)
    }

    pub fn counts(&self) -> SystemCounts {
        let mut c = SystemCounts {
            total: self.constraints.len(),
            ..Default::default()
        };
        for con in &self.constraints {
            match con {
                Constraint::TraceUpper | Constraint::TraceLower => c.equality += 1,
                Constraint::Chamber { .. } => c.chamber += 1,
                Constraint::Horn(_) => c.horn += 1,
            }
        }
        c
    }

    /// Number of reduced variables, `p·r + 1`.
    pub fn num_variables(&self) -> usize {
        self.cycle_type.lengths().len() * self.r as usize + 1
    }

    /// Coefficients of `con` in reduced variables, ordered by `(cycle, j)`
    /// and then `t`.
    pub fn row(&self, con: &Constraint) -> Vec<BigRational> {
        let r = self.r as usize;
        let cycles = self.cycle_type.cycles();
        let orbit = self.cycle_type.orbit_of_position();
        let tvar = cycles.len() * r;
        let mut row = vec![BigRational::zero(); tvar + 1];
        match con {
            Constraint::TraceUpper | Constraint::TraceLower => {
                let sign = if *con == Constraint::TraceUpper { 1 } else { -1 };
                for (c, cycle) in cycles.iter().enumerate() {
                    for j in 0..r {
                        row[c * r + j] = int(sign * cycle.len() as i64);
                    }
                }
                row[tvar] = int(-sign * r as i64);
            }
            Constraint::Chamber { spectrum, index } => {
                let c = orbit[spectrum - 1];
                let i = *index as usize;
                row[c * r + i - 1] = int(-1);
                row[c * r + i] = int(1);
            }
            Constraint::Horn(ineq) => {
                for (l, part) in ineq.tuple.parts().iter().enumerate() {
                    let c = orbit[l];
                    for j in part.iter() {
                        row[c * r + j as usize - 1] += int(1);
                    }
                }
                row[tvar] = int(-(ineq.d as i64));
            }
        }
        row
    }

    fn check_shape(&self, family: &SpectrumFamily) -> Result<()> {
        if family.s() != self.s {
            return Err(HornError::ArityMismatch {
                expected: self.s,
                got: family.s(),
            });
        }
        if family.r() != self.r as usize {
            return Err(HornError::DimensionMismatch(format!(
                "spectra of length {} for a system with r = {}",
                family.r(),
                self.r
            )));
        }
        Ok(())
    }

    /// Reduced coordinates of a `σ`-stable point.
    pub fn reduce(&self, family: &SpectrumFamily) -> Result<Vec<BigRational>> {
        self.check_shape(family)?;
        if !family.is_stable_under(&self.cycle_type) {
            return Err(HornError::NotSigmaStable(family.to_string()));
        }
        let mut x: Vec<BigRational> = self
            .cycle_type
            .cycles()
            .iter()
            .flat_map(|cycle| family.spectra[cycle[0] - 1].iter().cloned())
            .collect();
        x.push(family.t.clone());
        Ok(x)
    }

    /// Inverse of [`reduce`](Self::reduce).
    pub fn expand(&self, x: &[BigRational]) -> Result<SpectrumFamily> {
        if x.len() != self.num_variables() {
            return Err(HornError::DimensionMismatch(format!(
                "{} reduced coordinates for {} variables",
                x.len(),
                self.num_variables()
            )));
        }
        let r = self.r as usize;
        let orbit = self.cycle_type.orbit_of_position();
        let spectra = orbit
            .iter()
            .map(|&c| x[c * r..(c + 1) * r].to_vec())
            .collect();
        SpectrumFamily::new(spectra, x[x.len() - 1].clone())
    }

    /// `lhs − rhs` of `con` at the full point; positive means violated.
    pub fn excess(&self, con: &Constraint, family: &SpectrumFamily) -> BigRational {
        let rt = int(self.r as i64) * &family.t;
        match con {
            Constraint::TraceUpper => family.trace() - rt,
            Constraint::TraceLower => rt - family.trace(),
            Constraint::Chamber { spectrum, index } => {
                let row = &family.spectra[spectrum - 1];
                &row[*index as usize] - &row[*index as usize - 1]
            }
            Constraint::Horn(ineq) => {
                let mut total = -(int(ineq.d as i64) * &family.t);
                for (part, row) in ineq.tuple.parts().iter().zip(&family.spectra) {
                    for j in part.iter() {
                        total += &row[j as usize - 1];
                    }
                }
                total
            }
        }
    }

    /// Exact membership; reports the first violated constraint in canonical
    /// order. Systems with a nontrivial cycle type only accept `σ`-stable
    /// points.
    pub fn member(&self, family: &SpectrumFamily) -> Result<Verdict> {
        self.check_shape(family)?;
        if !self.cycle_type.is_identity() && !family.is_stable_under(&self.cycle_type) {
            return Err(HornError::NotSigmaStable(family.to_string()));
        }
        for (index, con) in self.constraints.iter().enumerate() {
            let excess = self.excess(con, family);
            if excess.is_positive() {
                return Ok(Verdict::NotMember {
                    index,
                    constraint: con.clone(),
                    excess,
                });
            }
        }
        Ok(Verdict::Member)
    }

    /// Human-readable form over the full variables `L1[j], …, Ls[j], t`.
    pub fn render(&self, con: &Constraint) -> String {
        let r = self.r;
        match con {
            Constraint::TraceUpper => format!("T(L) <= {r}t"),
            Constraint::TraceLower => format!("T(L) >= {r}t"),
            Constraint::Chamber { spectrum, index } => {
                format!("L{spectrum}[{index}] >= L{spectrum}[{}]", index + 1)
            }
            Constraint::Horn(ineq) => {
                let mut terms = Vec::new();
                for (l, part) in ineq.tuple.parts().iter().enumerate() {
                    for j in part.iter() {
                        terms.push(format!("L{}[{j}]", l + 1));
                    }
                }
                format!("{} <= {}t", terms.join(" + "), ineq.d)
            }
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            r: u32,
            s: usize,
            cycle_type: &'a CycleType,
            level: SystemLevel,
            variables: usize,
            counts: SystemCounts,
            constraints: &'a [Constraint],
        }
        serde_json::to_string_pretty(&Out {
            r: self.r,
            s: self.s,
            cycle_type: &self.cycle_type,
            level: self.level,
            variables: self.num_variables(),
            counts: self.counts(),
            constraints: &self.constraints,
        })
        .expect("systems serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,kind,d,JJ,sigma_stable,is00,inequality\n");
        for (i, con) in self.constraints.iter().enumerate() {
            let (d, tuple, stable, is00) = match con {
                Constraint::Horn(ineq) => (
                    ineq.d.to_string(),
                    ineq.tuple.to_string(),
                    ineq.sigma_stable.to_string(),
                    ineq.is00.map(|b| b.to_string()).unwrap_or_default(),
                ),
                _ => Default::default(),
            };
            out.push_str(&format!(
                "{i},{},{d},\"{tuple}\",{stable},{is00},{}\n",
                con.kind(),
                self.render(con)
            ));
        }
        out
    }
}

/// Decides `(λs, 0) ∈ K(r, s)` for integer spectra.
pub fn lr_membership(store: &HornStore, lambdas: &[Vec<i64>]) -> Result<bool> {
    let family = SpectrumFamily::from_integers(lambdas, 0)?;
    if !family.is_weakly_decreasing() {
        return Ok(false);
    }
    let ct = CycleType::identity(family.s());
    let system = generate_system(store, family.r() as u32, &ct, SystemLevel::Full0)?;
    Ok(system.member(&family)?.is_member())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::HornStore;

    fn store_for(r: u32, ct: &CycleType) -> HornStore {
        let mut store = HornStore::new();
        prepare_store(&mut store, r, ct).unwrap();
        store
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_round_trip() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(format_rational(&q(4, -6)), "-2/3");
        assert_eq!(format_rational(&q(5, 1)), "5");
        assert!(matches!(parse_rational("1/0x"), Err(HornError::InvalidRational(_))));
        let json = r#"{"spectra":[["1","0","-1"],["1/2","0","-1/2"]],"t":"0"}"#;
        let fam: SpectrumFamily = serde_json::from_str(json).unwrap();
        assert_eq!(fam.spectra()[1][0], q(1, 2));
        assert_eq!(serde_json::to_string(&fam).unwrap(), json);
        assert!(serde_json::from_str::<SpectrumFamily>(r#"{"spectra":[["1"],["1","2"]],"t":"0"}"#).is_err());
    }

    #[test]
    fn counts_small_systems() {
        let id = CycleType::identity(3);
        let sigma = CycleType::parse("3", 3).unwrap();
        let store = store_for(4, &id);
        let sstore = store_for(4, &sigma);
        let expected = [2, 8, 20, 52];
        for r in 1..=4 {
            let sys = generate_system(&store, r, &id, SystemLevel::Full0).unwrap();
            assert_eq!(sys.len(), expected[r as usize - 1], "r = {r}");
        }
        let min = generate_system(&store, 2, &id, SystemLevel::Min00).unwrap();
        assert_eq!(min.len(), 5);
        let expected = [2, 3, 4, 7];
        for r in 1..=4 {
            let sys = generate_system(&sstore, r, &sigma, SystemLevel::Full0).unwrap();
            assert_eq!(sys.len(), expected[r as usize - 1], "r = {r}");
            assert!(sys.horn().all(|i| i.sigma_stable));
        }
        assert!(matches!(
            generate_system(&HornStore::new(), 3, &id, SystemLevel::Full0),
            Err(HornError::MissingDependency { d: 1, r: 3 })
        ));
    }

    #[test]
    fn membership_examples() {
        let id = CycleType::identity(3);
        let store = store_for(3, &id);
        let sys2 = generate_system(&store, 2, &id, SystemLevel::Full0).unwrap();
        let fam = SpectrumFamily::from_integers(&[vec![1, -1], vec![1, -1], vec![1, -1]], 0).unwrap();
        assert_eq!(sys2.member(&fam).unwrap(), Verdict::Member);

        let sys3 = generate_system(&store, 3, &id, SystemLevel::Full0).unwrap();
        let fam =
            SpectrumFamily::from_integers(&[vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, -1]], 0).unwrap();
        let Verdict::NotMember {
            constraint, excess, ..
        } = sys3.member(&fam).unwrap()
        else {
            panic!("expected a violation")
        };
        let ineq = constraint.horn().unwrap();
        assert_eq!(ineq.d, 1);
        assert_eq!(
            ineq.tuple,
            SubsetTuple::from_elements(3, &[&[3], &[3], &[1]]).unwrap()
        );
        assert_eq!(excess, q(1, 1));

        let sigma = CycleType::parse("3", 3).unwrap();
        let sstore = store_for(5, &sigma);
        let sys5 = generate_system(&sstore, 5, &sigma, SystemLevel::Full0).unwrap();
        let lam = vec![1, 1, 0, -1, -1];
        let fam = SpectrumFamily::from_integers(&[lam.clone(), lam.clone(), lam], 0).unwrap();
        assert!(sys5.member(&fam).unwrap().is_member());
        let unstable =
            SpectrumFamily::from_integers(&[vec![1, 1, 0, -1, -1], vec![0; 5], vec![0; 5]], 0).unwrap();
        assert!(matches!(sys5.member(&unstable), Err(HornError::NotSigmaStable(_))));
        let short = SpectrumFamily::from_integers(&[vec![0; 4], vec![0; 4], vec![0; 4]], 0).unwrap();
        assert!(matches!(sys5.member(&short), Err(HornError::DimensionMismatch(_))));
    }

    #[test]
    fn unsorted_spectrum_is_reported_by_chamber() {
        let id = CycleType::identity(3);
        let store = store_for(2, &id);
        let sys = generate_system(&store, 2, &id, SystemLevel::Full0).unwrap();
        let fam = SpectrumFamily::from_integers(&[vec![1, -1], vec![-1, 1], vec![0, 0]], 0).unwrap();
        assert_eq!(fam.unsorted_spectrum(), Some(1));
        let Verdict::NotMember { constraint, .. } = sys.member(&fam).unwrap() else {
            panic!()
        };
        assert_eq!(
            constraint,
            Constraint::Chamber {
                spectrum: 2,
                index: 1
            }
        );
    }

    #[test]
    fn shift_rescale_examples() {
        let fam = SpectrumFamily::from_integers(&[vec![1, -1], vec![1, -1], vec![1, -1]], 0).unwrap();
        let zero = vec![BigRational::zero(); 3];
        assert_eq!(shift_rescale(&fam, &zero, &q(1, 1)).unwrap(), fam);
        let shifted = shift_rescale(&fam, &[q(1, 1), q(0, 1), q(0, 1)], &q(1, 1)).unwrap();
        assert_eq!(
            shifted,
            SpectrumFamily::from_integers(&[vec![2, 0], vec![1, -1], vec![1, -1]], 1).unwrap()
        );
        assert!(matches!(
            shift_rescale(&fam, &zero, &q(0, 1)),
            Err(HornError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn lr_membership_examples() {
        let store = store_for(3, &CycleType::identity(3));
        assert!(lr_membership(&store, &[vec![0; 3], vec![0; 3], vec![0; 3]]).unwrap());
        assert!(lr_membership(&store, &[vec![1, 0, -1], vec![1, 0, -1], vec![1, 0, -1]]).unwrap());
        assert!(!lr_membership(&store, &[vec![1, 0, 0], vec![1, 0, 0], vec![1, 0, 0]]).unwrap());
    }

    #[test]
    fn degenerate_rank_one() {
        let id = CycleType::identity(3);
        let store = HornStore::new();
        let sys = generate_system(&store, 1, &id, SystemLevel::Full0).unwrap();
        assert_eq!(sys.counts(), SystemCounts { total: 2, equality: 2, chamber: 0, horn: 0 });
        let fam = SpectrumFamily::from_integers(&[vec![2], vec![-1], vec![3]], 4).unwrap();
        assert!(sys.member(&fam).unwrap().is_member());
    }

    #[test]
    fn reduced_rows_agree_with_excess() {
        let sigma = CycleType::parse("3", 3).unwrap();
        let store = store_for(4, &sigma);
        let sys = generate_system(&store, 4, &sigma, SystemLevel::Full0).unwrap();
        let lam = vec![q(3, 2), q(1, 3), q(0, 1), q(-7, 4)];
        let fam = SpectrumFamily::new(vec![lam.clone(), lam.clone(), lam], q(1, 5)).unwrap();
        let x = sys.reduce(&fam).unwrap();
        assert_eq!(sys.expand(&x).unwrap(), fam);
        for con in sys.constraints() {
            let row = sys.row(con);
            let dot = row.iter().zip(&x).fold(BigRational::zero(), |a, (c, v)| a + c * v);
            assert_eq!(dot, sys.excess(con, &fam), "{}", sys.render(con));
        }
    }

    #[test]
    fn exports() {
        let id = CycleType::identity(3);
        let store = store_for(2, &id);
        let sys = generate_system(&store, 2, &id, SystemLevel::Full0).unwrap();
        let csv = sys.to_csv();
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.contains("horn,1,\"({1},{2},{2})\",false,true,L1[1] + L2[2] + L3[2] <= 1t"));
        let json: serde_json::Value = serde_json::from_str(&sys.to_json()).unwrap();
        assert_eq!(json["counts"]["total"], 8);
        assert_eq!(json["constraints"][0]["kind"], "trace_upper");
        assert_eq!(json["constraints"][7]["JJ"], serde_json::json!([[2], [2], [1]]));
    }
}
