use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use horn_core::engine::cross_check;
use horn_core::kirwan::format_rational;
use horn_core::redundancy::{check_all, minimize_system_with, RedundancyOptions, Route};
use horn_core::{
    generate_system, BuildOptions, CycleType, HornError, HornStore, InequalitySystem,
    RedundancyReport, SpectrumFamily, SubsetTuple, SystemLevel, TableCache, TableEntry, Verdict,
    VerdictKind, WitnessOptions,
};
use log::{info, warn};
use serde::Serialize;
use thiserror::Error;

use crate::render;
use crate::{
    Cli, Command, CrosscheckArgs, Format, MemberArgs, RedundancyArgs, RedundancyMode, RouteArg,
    SystemArgs, TablesArgs, TuplesArgs, TypeArgs, WitnessArgs,
};

/// Largest ambient accepted by the subset encoding.
const MAX_AMBIENT: u32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl From<HornError> for CliError {
    fn from(err: HornError) -> Self {
        match err {
            HornError::NumericalFailure(_)
            | HornError::Cache(_)
            | HornError::MissingDependency { .. } => CliError::Runtime(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Validation(msg.into()))
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

struct Context {
    format: Format,
    cache: Option<TableCache>,
}

impl Context {
    fn store_through(&self, n_max: u32, ct: &CycleType) -> CliResult<HornStore> {
        let mut store = HornStore::new();
        store.build_through_cached(n_max, ct, BuildOptions::default(), self.cache.as_ref())?;
        Ok(store)
    }

    /// Builds `(d, n)` and the tables its recursion reads.
    fn ensure_table(&self, store: &mut HornStore, d: u32, n: u32, ct: &CycleType) -> CliResult<()> {
        let cache = self.cache.as_ref();
        for level in 1..d {
            store.build_level_cached(level, d, ct, BuildOptions::default(), cache)?;
        }
        store.build_level_cached(d, n, ct, BuildOptions::default(), cache)?;
        Ok(())
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    validate(&cli.command)?;
    let ctx = Context {
        format: cli.format,
        cache: open_cache(cli)?,
    };
    match &cli.command {
        Command::Tuples(a) => tuples(&ctx, a),
        Command::System(a) => system(&ctx, a),
        Command::Member(a) => member(&ctx, a),
        Command::Tables(a) => tables(&ctx, a),
        Command::Redundancy(a) => redundancy(&ctx, a),
        Command::Witness(a) => witness(&ctx, a),
        Command::Crosscheck(a) => crosscheck(&ctx, a),
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let var = |name: &str| std::env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from);
    var("HORN_CACHE_DIR")
        .or_else(|| var("XDG_CACHE_HOME").map(|p| p.join("horn-tables")))
        .or_else(|| var("HOME").map(|p| p.join(".cache").join("horn-tables")))
}

fn open_cache(cli: &Cli) -> CliResult<Option<TableCache>> {
    if cli.no_cache {
        return Ok(None);
    }
    if let Some(dir) = &cli.cache_dir {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::Runtime(format!("cannot create cache directory {}: {e}", dir.display()))
        })?;
        return Ok(Some(TableCache::new(dir)));
    }
    let Some(dir) = default_cache_dir() else {
        return Ok(None);
    };
    match fs::create_dir_all(&dir) {
        Ok(()) => Ok(Some(TableCache::new(dir))),
        Err(e) => {
            warn!("cache disabled, cannot create {}: {e}", dir.display());
            Ok(None)
        }
    }
}

// ---------------------------------------------------------------- validation

fn validate(command: &Command) -> CliResult<()> {
    match command {
        Command::Tuples(a) => {
            cycle_type(&a.ty)?;
            TupleLevel::parse(&a.level)?;
            check_positive("--r", a.r)?;
            check_ambient(a.n.unwrap_or(a.r))?;
            match (a.n, a.d) {
                (Some(_), Some(_)) => return invalid("--d cannot be combined with --n"),
                (Some(n), None) if n < a.r => return invalid(format!("--n {n} is smaller than --r {}", a.r)),
                (None, Some(d)) if d == 0 || d > a.r => {
                    return invalid(format!("--d must lie in 1..={}, got {d}", a.r))
                }
                _ => {}
            }
        }
        Command::System(a) => {
            cycle_type(&a.ty)?;
            system_level(&a.level)?;
            check_positive("--r", a.r)?;
            check_ambient(a.r)?;
        }
        Command::Member(a) => {
            system_level(&a.level)?;
            check_input(&a.input)?;
            if let Some(sigma) = &a.sigma {
                let lengths: Option<Vec<usize>> =
                    sigma.split(',').map(|p| p.trim().parse().ok()).collect();
                if lengths.is_none_or(|l| l.contains(&0)) {
                    return invalid(format!("cannot parse cycle type {sigma:?}"));
                }
            }
        }
        Command::Tables(a) => {
            cycle_type(&a.ty)?;
            check_positive("--rmax", a.rmax)?;
            check_ambient(a.rmax)?;
        }
        Command::Redundancy(a) => {
            cycle_type(&a.ty)?;
            system_level(&a.level)?;
            check_positive("--r", a.r)?;
            check_ambient(a.r)?;
        }
        Command::Witness(a) => {
            check_input(&a.input)?;
            if !(a.tol.is_finite() && a.tol > 0.0) {
                return invalid(format!("--tol must be positive, got {}", a.tol));
            }
            if a.max_iters == 0 {
                return invalid("--max-iters must be positive");
            }
            if a.restarts == 0 {
                return invalid("--restarts must be positive");
            }
        }
        Command::Crosscheck(a) => {
            cycle_type(&a.ty)?;
            check_positive("--n", a.n)?;
            check_ambient(a.n)?;
            if let Some(r) = a.r {
                if r == 0 || r > a.n {
                    return invalid(format!("--r must lie in 1..={}, got {r}", a.n));
                }
            }
        }
    }
    Ok(())
}

fn check_positive(flag: &str, value: u32) -> CliResult<()> {
    if value == 0 {
        return invalid(format!("{flag} must be positive"));
    }
    Ok(())
}

fn check_ambient(n: u32) -> CliResult<()> {
    if n > MAX_AMBIENT {
        return invalid(format!("ambient {n} exceeds the supported maximum {MAX_AMBIENT}"));
    }
    Ok(())
}

fn check_input(path: &Path) -> CliResult<()> {
    if path != Path::new("-") && !path.is_file() {
        return invalid(format!("input file {} does not exist", path.display()));
    }
    Ok(())
}

fn cycle_type(ty: &TypeArgs) -> CliResult<CycleType> {
    if ty.s == 0 {
        return invalid("--s must be positive");
    }
    Ok(match &ty.sigma {
        Some(text) => CycleType::parse(text, ty.s)?,
        None => CycleType::identity(ty.s),
    })
}

fn system_level(text: &str) -> CliResult<SystemLevel> {
    text.parse::<SystemLevel>()
        .map_err(|_| CliError::Validation(format!("unknown level {text:?} (expected full0, min00 or intersecting)")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
enum TupleLevel {
    #[serde(rename = "intersecting")]
    All,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "00")]
    ZeroZero,
}

impl TupleLevel {
    fn parse(text: &str) -> CliResult<Self> {
        match text {
            "intersecting" | "all" => Ok(TupleLevel::All),
            "0" | "full0" => Ok(TupleLevel::Zero),
            "00" | "min00" => Ok(TupleLevel::ZeroZero),
            _ => invalid(format!("unknown level {text:?} (expected intersecting, 0 or 00)")),
        }
    }

    fn keeps(self, entry: &TableEntry) -> bool {
        match self {
            TupleLevel::All => true,
            TupleLevel::Zero => entry.in0,
            TupleLevel::ZeroZero => entry.in00 == Some(true),
        }
    }
}

fn read_family(path: &Path) -> CliResult<SpectrumFamily> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Runtime(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid spectrum family: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("outputs serialize");
    out.push('\n');
    out
}

fn yes_no(flag: bool, format: Format) -> String {
    match (flag, format) {
        (true, Format::Table) => "yes".into(),
        (false, Format::Table) => "no".into(),
        (flag, _) => flag.to_string(),
    }
}

fn emit(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Csv => render::csv(header, rows),
        _ => render::table(header, rows),
    }
}

fn part_headers(s: usize) -> Vec<String> {
    (1..=s).map(|l| format!("JJ_{l}")).collect()
}

// -------------------------------------------------------------------- tuples

#[derive(Serialize)]
struct TupleRow<'a> {
    d: u32,
    #[serde(rename = "JJ")]
    tuple: &'a SubsetTuple,
    edim: i64,
    in0: bool,
    in00: Option<bool>,
}

#[derive(Serialize)]
struct OrbitRow {
    d: u32,
    representative: SubsetTuple,
    size: usize,
    stable: bool,
}

fn tuples(ctx: &Context, a: &TuplesArgs) -> CliResult<Outcome> {
    let ct = cycle_type(&a.ty)?;
    let level = TupleLevel::parse(&a.level)?;
    let (sizes, ambient): (Vec<u32>, u32) = match (a.n, a.d) {
        (Some(n), _) => (vec![a.r], n),
        (None, Some(d)) => (vec![d], a.r),
        (None, None) => ((1..a.r).collect(), a.r),
    };
    let mut store = HornStore::new();
    let mut listed: Vec<TableEntry> = Vec::new();
    for &d in &sizes {
        ctx.ensure_table(&mut store, d, ambient, &ct)?;
        let table = store.require(d, ambient, &ct)?;
        let mut entries: Vec<TableEntry> =
            table.entries.iter().filter(|e| level.keeps(e)).cloned().collect();
        entries.sort_by(|x, y| x.tuple.cmp_lex(&y.tuple));
        listed.extend(entries);
    }
    let s = ct.arity();
    let stable_type = if ct.is_identity() {
        CycleType::new(vec![s])?
    } else {
        ct.clone()
    };

    if a.orbits {
        let mut groups: BTreeMap<SubsetTuple, (usize, bool)> = BTreeMap::new();
        for entry in &listed {
            let slot = groups.entry(entry.tuple.orbit_representative()).or_default();
            slot.0 += 1;
            slot.1 |= entry.tuple.is_stable_under(&stable_type);
        }
        let mut orbits: Vec<OrbitRow> = groups
            .into_iter()
            .map(|(rep, (size, stable))| OrbitRow {
                d: rep.size(),
                representative: rep,
                size,
                stable,
            })
            .collect();
        orbits.sort_by(|x, y| x.d.cmp(&y.d).then_with(|| x.representative.cmp_lex(&y.representative)));
        let stdout = match ctx.format {
            Format::Json => to_json(&serde_json::json!({
                "ambient": ambient,
                "s": s,
                "cycle_type": ct,
                "level": level,
                "count": listed.len(),
                "orbit_count": orbits.len(),
                "orbits": orbits,
            })),
            format => {
                let parts = part_headers(s);
                let mut header: Vec<&str> = vec!["d"];
                header.extend(parts.iter().map(String::as_str));
                header.extend(["size", "stable"]);
                let rows: Vec<Vec<String>> = orbits
                    .iter()
                    .map(|o| {
                        let mut row = vec![o.d.to_string()];
                        row.extend(o.representative.parts().iter().map(|p| p.to_string()));
                        row.push(o.size.to_string());
                        row.push(yes_no(o.stable, format));
                        row
                    })
                    .collect();
                emit(format, &header, &rows)
            }
        };
        return Ok(Outcome::ok(stdout));
    }

    let rows: Vec<TupleRow> = listed
        .iter()
        .map(|e| TupleRow {
            d: e.tuple.size(),
            tuple: &e.tuple,
            edim: e.tuple.edim(),
            in0: e.in0,
            in00: e.in00,
        })
        .collect();
    let stdout = match ctx.format {
        Format::Json => to_json(&serde_json::json!({
            "ambient": ambient,
            "s": s,
            "cycle_type": ct,
            "level": level,
            "count": rows.len(),
            "tuples": rows,
        })),
        format => {
            let parts = part_headers(s);
            let mut header: Vec<&str> = vec!["d"];
            header.extend(parts.iter().map(String::as_str));
            header.extend(["edim", "in0", "in00"]);
            let table_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|t| {
                    let mut row = vec![t.d.to_string()];
                    row.extend(t.tuple.parts().iter().map(|p| p.to_string()));
                    row.push(t.edim.to_string());
                    row.push(yes_no(t.in0, format));
                    row.push(t.in00.map(|f| yes_no(f, format)).unwrap_or_default());
                    row
                })
                .collect();
            emit(format, &header, &table_rows)
        }
    };
    Ok(Outcome::ok(stdout))
}

// -------------------------------------------------------------------- system

fn build_system(ctx: &Context, r: u32, ct: &CycleType, level: SystemLevel) -> CliResult<InequalitySystem> {
    let store = ctx.store_through(r, ct)?;
    Ok(generate_system(&store, r, ct, level)?)
}

fn system(ctx: &Context, a: &SystemArgs) -> CliResult<Outcome> {
    let ct = cycle_type(&a.ty)?;
    let level = system_level(&a.level)?;
    let sys = build_system(ctx, a.r, &ct, level)?;
    let stdout = match ctx.format {
        Format::Json => {
            let mut out = sys.to_json();
            out.push('\n');
            out
        }
        Format::Csv => sys.to_csv(),
        Format::Table => {
            let counts = sys.counts();
            let mut out = format!(
                "# K({},{}) type [{}] level {}: {} constraints ({} equality, {} chamber, {} horn), {} variables\n",
                sys.r(),
                sys.s(),
                ct,
                level,
                counts.total,
                counts.equality,
                counts.chamber,
                counts.horn,
                sys.num_variables()
            );
            let rows: Vec<Vec<String>> = sys
                .constraints()
                .iter()
                .enumerate()
                .map(|(i, con)| {
                    let (stable, is00) = match con.horn() {
                        Some(h) => (
                            yes_no(h.sigma_stable, Format::Table),
                            h.is00.map(|f| yes_no(f, Format::Table)).unwrap_or_default(),
                        ),
                        None => Default::default(),
                    };
                    vec![i.to_string(), con.kind().to_string(), sys.render(con), stable, is00]
                })
                .collect();
            out.push_str(&render::table(&["#", "kind", "inequality", "stable", "in00"], &rows));
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

// -------------------------------------------------------------------- member

fn member(ctx: &Context, a: &MemberArgs) -> CliResult<Outcome> {
    let family = read_family(&a.input)?;
    let level = system_level(&a.level)?;
    let ct = match &a.sigma {
        Some(text) => CycleType::parse(text, family.s())?,
        None => CycleType::identity(family.s()),
    };
    if !ct.is_identity() && !family.is_stable_under(&ct) {
        return invalid(format!("input is not stable under a permutation of type [{ct}]"));
    }
    if family.r() as u32 > MAX_AMBIENT {
        return invalid(format!("spectra longer than {MAX_AMBIENT} are not supported"));
    }
    let sys = build_system(ctx, family.r() as u32, &ct, level)?;
    let verdict = sys.member(&family)?;
    let stdout = match (&verdict, ctx.format) {
        (Verdict::Member, Format::Json) => to_json(&serde_json::json!({ "member": true })),
        (Verdict::Member, Format::Csv) => "member,index,kind,inequality,excess\ntrue,,,,\n".into(),
        (Verdict::Member, Format::Table) => "member\n".into(),
        (Verdict::NotMember { index, constraint, excess }, format) => {
            let inequality = sys.render(constraint);
            let excess = format_rational(excess);
            match format {
                Format::Json => to_json(&serde_json::json!({
                    "member": false,
                    "index": index,
                    "constraint": constraint,
                    "inequality": inequality,
                    "excess": excess,
                })),
                Format::Csv => render::csv(
                    &["member", "index", "kind", "inequality", "excess"],
                    &[vec![
                        "false".into(),
                        index.to_string(),
                        constraint.kind().into(),
                        inequality,
                        excess,
                    ]],
                ),
                Format::Table => format!(
                    "not a member\nviolated constraint #{index} ({}): {inequality}\nexcess: {excess}\n",
                    constraint.kind()
                ),
            }
        }
    };
    Ok(Outcome::ok(stdout))
}

// -------------------------------------------------------------------- tables

fn tables(ctx: &Context, a: &TablesArgs) -> CliResult<Outcome> {
    let ct = cycle_type(&a.ty)?;
    let store = ctx.store_through(a.rmax, &ct)?;
    let (label0, label00) = match (ct.is_identity(), ct.arity()) {
        (true, 3) => ("l0", "lmin"),
        (true, _) => ("l0", "l00"),
        (false, _) => ("l0_sigma", "l00_sigma"),
    };
    let mut full = Vec::new();
    let mut min = Vec::new();
    for r in 1..=a.rmax {
        full.push(generate_system(&store, r, &ct, SystemLevel::Full0)?.len());
        min.push(generate_system(&store, r, &ct, SystemLevel::Min00)?.len());
        info!("r = {r}: {} / {}", full.last().unwrap(), min.last().unwrap());
    }
    let stdout = match ctx.format {
        Format::Json => to_json(&serde_json::json!({
            "s": ct.arity(),
            "cycle_type": ct,
            "r": (1..=a.rmax).collect::<Vec<_>>(),
            (label0): full,
            (label00): min,
        })),
        format => {
            let mut header = vec!["r".to_string()];
            header.extend((1..=a.rmax).map(|r| r.to_string()));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let row = |label: &str, values: &[usize]| {
                let mut row = vec![label.to_string()];
                row.extend(values.iter().map(|v| v.to_string()));
                row
            };
            emit(format, &header, &[row(label0, &full), row(label00, &min)])
        }
    };
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- redundancy

fn redundancy(ctx: &Context, a: &RedundancyArgs) -> CliResult<Outcome> {
    let ct = cycle_type(&a.ty)?;
    let level = system_level(&a.level)?;
    let sys = build_system(ctx, a.r, &ct, level)?;
    let options = RedundancyOptions {
        route: match a.route {
            RouteArg::Dual => Route::Dual,
            RouteArg::Primal => Route::PrimalBox,
        },
        ..RedundancyOptions::default()
    };
    let report = match a.mode {
        RedundancyMode::Greedy => minimize_system_with(&sys, options)?,
        RedundancyMode::Each => RedundancyReport {
            r: sys.r(),
            cycle_type: ct.clone(),
            level,
            verdicts: check_all(&sys, options)?,
        },
    };
    let stdout = match ctx.format {
        Format::Json => {
            let mut out = report.to_json(&sys);
            out.push('\n');
            out
        }
        format => {
            let rows: Vec<Vec<String>> = report
                .verdicts
                .iter()
                .map(|v| {
                    let con = &sys.constraints()[v.index];
                    let verdict = match v.kind {
                        VerdictKind::Essential => "essential",
                        VerdictKind::Redundant => "redundant",
                    };
                    vec![
                        v.index.to_string(),
                        con.kind().to_string(),
                        sys.render(con),
                        verdict.to_string(),
                        format_rational(&v.optimum),
                    ]
                })
                .collect();
            let header = ["#", "kind", "inequality", "verdict", "optimum"];
            let mut out = emit(format, &header, &rows);
            if format == Format::Table {
                out.push_str(&format!(
                    "# {} of {} constraints retained\n",
                    report.retained_count(),
                    sys.len()
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

// ------------------------------------------------------------------- witness

fn witness(ctx: &Context, a: &WitnessArgs) -> CliResult<Outcome> {
    let family = read_family(&a.input)?;
    if family.r() > horn_core::witness::MAX_ORDER {
        return invalid(format!(
            "witness search supports r ≤ {}, got {}",
            horn_core::witness::MAX_ORDER,
            family.r()
        ));
    }
    let options = WitnessOptions {
        max_iters: a.max_iters,
        tol: a.tol,
        seed: a.seed,
        restarts: a.restarts,
        record_history: a.history.is_some(),
        ..WitnessOptions::default()
    };
    let result = horn_core::find_witness(&family, &options)?;
    if let Some(path) = &a.history {
        fs::write(path, result.history_csv())
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    let status = match result.status {
        horn_core::WitnessStatus::Converged => "converged",
        horn_core::WitnessStatus::Inconclusive => "inconclusive",
    };
    let stdout = match ctx.format {
        Format::Json => {
            let mut out = result.to_json();
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (l, m) in result.matrices.iter().enumerate() {
                for i in 0..m.order() {
                    for j in 0..m.order() {
                        let z = m.entry(i, j);
                        rows.push(vec![
                            (l + 1).to_string(),
                            (i + 1).to_string(),
                            (j + 1).to_string(),
                            format!("{:e}", z.re),
                            format!("{:e}", z.im),
                        ]);
                    }
                }
            }
            render::csv(&["matrix", "row", "col", "re", "im"], &rows)
        }
        Format::Table => {
            let mut out = format!(
                "status: {status}\nresidual: {:.3e}\nsum residual: {:.3e}\nspectrum residual: {:.3e}\niterations: {}\nrestart: {}\n",
                result.residual,
                result.sum_residual,
                result.spectrum_residual,
                result.iterations,
                result.restart
            );
            for (l, m) in result.matrices.iter().enumerate() {
                out.push_str(&format!("\nX{}\n", l + 1));
                for i in 0..m.order() {
                    let cells: Vec<String> = (0..m.order())
                        .map(|j| {
                            let z = m.entry(i, j);
                            format!("{:>10.6}{:+.6}i", z.re, z.im)
                        })
                        .collect();
                    out.push_str(&cells.join("  "));
                    out.push('\n');
                }
            }
            out
        }
    };
    if !result.converged {
        warn!("no run reached the tolerance; this does not decide membership");
    }
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- crosscheck

fn crosscheck(ctx: &Context, a: &CrosscheckArgs) -> CliResult<Outcome> {
    let ct = cycle_type(&a.ty)?;
    let mut store = HornStore::new();
    let keys: Vec<(u32, u32)> = match a.r {
        Some(r) => {
            ctx.ensure_table(&mut store, r, a.n, &ct)?;
            vec![(r, a.n)]
        }
        None => {
            store.build_through_cached(a.n, &ct, BuildOptions::default(), ctx.cache.as_ref())?;
            (1..=a.n).flat_map(|n| (1..=n).map(move |d| (d, n))).collect()
        }
    };
    let mut reports = Vec::new();
    for (d, n) in keys {
        reports.push(cross_check(&store, d, n, &ct)?);
    }
    let mismatches: usize = reports.iter().map(|r| r.mismatches.len()).sum();
    let stdout = match ctx.format {
        Format::Json => to_json(&serde_json::json!({
            "cycle_type": ct,
            "tables": reports,
            "mismatches": mismatches,
        })),
        format => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|rep| {
                    vec![
                        rep.key.d.to_string(),
                        rep.key.r.to_string(),
                        rep.checked.to_string(),
                        rep.members.to_string(),
                        rep.mismatches.len().to_string(),
                    ]
                })
                .collect();
            let mut out = emit(format, &["d", "n", "checked", "members", "mismatches"], &rows);
            if format == Format::Table {
                for rep in &reports {
                    for m in &rep.mismatches {
                        out.push_str(&format!("mismatch in {}: {} {}\n", rep.key, m.tuple, m.detail));
                    }
                }
            }
            out
        }
    };
    Ok(Outcome {
        stdout,
        code: if mismatches == 0 { 0 } else { 1 },
    })
}
