//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use horn_core::combinat::{slope, stable_tuples};
use horn_core::engine::cross_check;
use horn_core::kirwan::{prepare_store, shift_rescale};
use horn_core::redundancy::{check_all, is_redundant, RedundancyOptions};
use horn_core::{
    find_witness, generate_system, minimize_system, BigRational, BuildOptions, Constraint,
    CycleType, HornStore, InequalitySystem, Permutation, SchubertCalculator, SpectrumFamily,
    SubsetTuple, SystemLevel, Verdict, VerdictKind, WitnessOptions,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance on the witness residual for a converged member.
const WITNESS_TOL: f64 = 1e-8;
/// Iteration budget per witness run; members near a facet converge slowly.
const WITNESS_MAX_ITERS: usize = 200_000;
/// Minimal normalized violation of the sampled non-members.
const NON_MEMBER_MARGIN: (i64, i64) = (1, 10);
/// Denominator of the sampling grid for witness points.
const WITNESS_GRID: i64 = 1_000_000;
const WITNESS_SAMPLES: usize = 100;
const SHIFT_RESCALE_POINTS: usize = 10_000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn id3() -> CycleType {
    CycleType::identity(3)
}

fn cyc3() -> CycleType {
    CycleType::new(vec![3]).unwrap()
}

fn store_through(n: u32, ct: &CycleType) -> HornStore {
    let mut store = HornStore::new();
    store.build_through(n, ct, BuildOptions::default()).unwrap();
    store
}

fn counts(store: &HornStore, ct: &CycleType, level: SystemLevel, rmax: u32) -> Vec<usize> {
    (1..=rmax)
        .map(|r| generate_system(store, r, ct, level).unwrap().len())
        .collect()
}

fn tuple(n: u32, parts: [&[u32]; 3]) -> SubsetTuple {
    SubsetTuple::from_elements(n, &parts).unwrap()
}

fn criterion_1() -> Check {
    let id = store_through(7, &id3());
    let cyc = store_through(7, &cyc3());
    let l0 = counts(&id, &id3(), SystemLevel::Full0, 7);
    let ls0 = counts(&cyc, &cyc3(), SystemLevel::Full0, 7);
    ensure(l0[..6] == [2, 8, 20, 52, 156, 539], || format!("l0 = {l0:?}"))?;
    ensure(ls0[..6] == [2, 3, 4, 7, 10, 10], || format!("l0_sigma = {ls0:?}"))?;
    ensure(l0[6] == 2082 && ls0[6] == 18, || format!("r = 7: {} / {}", l0[6], ls0[6]))?;
    Ok(format!("l0 = {l0:?}, l0_sigma = {ls0:?}"))
}

fn criterion_2() -> Check {
    let id = id3();
    let store = store_through(6, &id);
    let lmin = counts(&store, &id, SystemLevel::Min00, 6);
    let l0 = counts(&store, &id, SystemLevel::Full0, 6);
    ensure(lmin[1] == 5, || format!("l_min(2) = {}", lmin[1]))?;
    for r in 3..=5 {
        ensure(lmin[r - 1] == l0[r - 1], || format!("l_min({r}) = {} vs l0 {}", lmin[r - 1], l0[r - 1]))?;
    }
    ensure(lmin[5] == 538, || format!("l_min(6) = {}", lmin[5]))?;

    let mut checked = 0;
    for r in 2..=4 {
        let sys = generate_system(&store, r, &id, SystemLevel::Min00).unwrap();
        let verdicts = check_all(&sys, RedundancyOptions::default()).unwrap();
        if let Some(v) = verdicts.iter().find(|v| v.kind != VerdictKind::Essential) {
            return Err(format!("r = {r}: {} is redundant", sys.render(&sys.constraints()[v.index])));
        }
        checked += verdicts.len();
    }
    let full2 = generate_system(&store, 2, &id, SystemLevel::Full0).unwrap();
    let greedy = minimize_system(&full2).unwrap().retained_count();
    ensure(greedy == 5, || format!("greedy minimum at r = 2 is {greedy}"))?;
    Ok(format!("l_min = {lmin:?}; {checked} Min00 constraints (r = 2..4) certified essential by exact LP"))
}

/// Orbit listings with the cyclically stable rows marked `true`.
fn published_listings() -> Vec<(u32, Vec<(u32, [&'static [u32]; 3], bool)>)> {
    vec![
        (2, vec![(1, [&[1], &[2], &[2]], false)]),
        (
            3,
            vec![
                (1, [&[1], &[3], &[3]], false),
                (1, [&[2], &[2], &[3]], false),
                (2, [&[1, 2], &[2, 3], &[2, 3]], false),
                (2, [&[1, 3], &[1, 3], &[2, 3]], false),
            ],
        ),
        (
            4,
            vec![
                (1, [&[1], &[4], &[4]], false),
                (1, [&[2], &[3], &[4]], false),
                (1, [&[3], &[3], &[3]], true),
                (2, [&[1, 2], &[3, 4], &[3, 4]], false),
                (2, [&[1, 3], &[2, 4], &[3, 4]], false),
                (2, [&[1, 4], &[1, 4], &[3, 4]], false),
                (2, [&[1, 4], &[2, 4], &[2, 4]], false),
                (2, [&[2, 3], &[2, 3], &[3, 4]], false),
                (2, [&[2, 3], &[2, 4], &[2, 4]], false),
                (3, [&[1, 2, 3], &[2, 3, 4], &[2, 3, 4]], false),
                (3, [&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], false),
                (3, [&[1, 3, 4], &[1, 3, 4], &[1, 3, 4]], true),
            ],
        ),
        (
            5,
            vec![
                (1, [&[1], &[5], &[5]], false),
                (1, [&[2], &[4], &[5]], false),
                (1, [&[3], &[3], &[5]], false),
                (1, [&[3], &[4], &[4]], false),
                (2, [&[1, 2], &[4, 5], &[4, 5]], false),
                (2, [&[1, 3], &[3, 5], &[4, 5]], false),
                (2, [&[1, 4], &[2, 5], &[4, 5]], false),
                (2, [&[1, 4], &[3, 5], &[3, 5]], false),
                (2, [&[1, 5], &[1, 5], &[4, 5]], false),
                (2, [&[1, 5], &[2, 5], &[3, 5]], false),
                (2, [&[2, 3], &[3, 4], &[4, 5]], false),
                (2, [&[2, 3], &[3, 5], &[3, 5]], false),
                (2, [&[2, 4], &[2, 4], &[4, 5]], false),
                (2, [&[2, 4], &[2, 5], &[3, 5]], false),
                (2, [&[2, 4], &[3, 4], &[3, 5]], false),
                (2, [&[2, 5], &[2, 5], &[2, 5]], true),
                (2, [&[2, 5], &[2, 5], &[3, 4]], false),
                (2, [&[3, 4], &[3, 4], &[3, 4]], true),
                (3, [&[1, 2, 3], &[3, 4, 5], &[3, 4, 5]], false),
                (3, [&[1, 2, 4], &[2, 4, 5], &[3, 4, 5]], false),
                (3, [&[1, 2, 5], &[1, 4, 5], &[3, 4, 5]], false),
                (3, [&[1, 2, 5], &[2, 4, 5], &[2, 4, 5]], false),
                (3, [&[1, 3, 4], &[2, 3, 5], &[3, 4, 5]], false),
                (3, [&[1, 3, 4], &[2, 4, 5], &[2, 4, 5]], false),
                (3, [&[1, 3, 5], &[1, 3, 5], &[3, 4, 5]], false),
                (3, [&[1, 3, 5], &[1, 4, 5], &[2, 4, 5]], false),
                (3, [&[1, 3, 5], &[2, 3, 5], &[2, 4, 5]], false),
                (3, [&[1, 4, 5], &[1, 4, 5], &[1, 4, 5]], true),
                (3, [&[1, 4, 5], &[2, 3, 5], &[2, 3, 5]], false),
                (3, [&[2, 3, 4], &[2, 3, 4], &[3, 4, 5]], false),
                (3, [&[2, 3, 4], &[2, 3, 5], &[2, 4, 5]], false),
                (3, [&[2, 3, 5], &[2, 3, 5], &[2, 3, 5]], true),
                (4, [&[1, 2, 3, 4], &[2, 3, 4, 5], &[2, 3, 4, 5]], false),
                (4, [&[1, 2, 3, 5], &[1, 3, 4, 5], &[2, 3, 4, 5]], false),
                (4, [&[1, 2, 4, 5], &[1, 2, 4, 5], &[2, 3, 4, 5]], false),
                (4, [&[1, 2, 4, 5], &[1, 3, 4, 5], &[1, 3, 4, 5]], false),
            ],
        ),
    ]
}

fn criterion_3() -> Check {
    let id_store = store_through(5, &id3());
    let cyc_store = store_through(5, &cyc3());
    let mut orbits = 0;
    let mut bold = 0;
    for (r, rows) in published_listings() {
        let expected: BTreeSet<(u32, SubsetTuple, bool)> = rows
            .iter()
            .map(|(d, parts, stable)| (*d, tuple(r, *parts).orbit_representative(), *stable))
            .collect();
        let mut computed = BTreeSet::new();
        for d in 1..r {
            let cyclic: HashSet<&SubsetTuple> = cyc_store
                .require(d, r, &cyc3())
                .unwrap()
                .intersecting00()
                .collect();
            let mut reps: Vec<(SubsetTuple, bool)> = Vec::new();
            for t in id_store.require(d, r, &id3()).unwrap().intersecting00() {
                let rep = t.orbit_representative();
                let stable = cyclic.contains(t);
                match reps.iter_mut().find(|(x, _)| *x == rep) {
                    Some(slot) => slot.1 |= stable,
                    None => reps.push((rep, stable)),
                }
            }
            computed.extend(reps.into_iter().map(|(rep, stable)| (d, rep, stable)));
        }
        if computed != expected {
            let missing: Vec<_> = expected.difference(&computed).collect();
            let extra: Vec<_> = computed.difference(&expected).collect();
            return Err(format!("r = {r}: missing {missing:?}, unexpected {extra:?}"));
        }
        orbits += expected.len();
        bold += expected.iter().filter(|e| e.2).count();
    }
    Ok(format!("{orbits} orbits for r = 2..5 match, {bold} stable orbits flagged"))
}

fn criterion_4() -> Check {
    let options = BuildOptions {
        flag_00: false,
        ..BuildOptions::default()
    };
    let mut full = 0;
    let mut stable = 0;
    let mut stable_edim0 = 0;
    for ct in [id3(), cyc3()] {
        let mut store = HornStore::new();
        for d in 1..5 {
            store.build_level(d, 5, &ct, options).unwrap();
        }
        store.build_level(5, 10, &ct, options).unwrap();
        let table = store.require(5, 10, &ct).unwrap();
        if ct.is_identity() {
            full = table.len();
        } else {
            stable = table.len();
            stable_edim0 = table.members().filter(|t| t.edim() == 0).count();
        }
    }
    ensure(full == 718_738, || format!("|Intersecting(5,10,3)| = {full}"))?;
    ensure(stable == 49, || format!("|Intersecting(5,10,3)^sigma| = {stable}"))?;
    ensure(stable_edim0 == 0, || format!("{stable_edim0} stable members of edim 0"))?;
    Ok(format!("{full} members, {stable} cyclically stable, {stable_edim0} of edim 0"))
}

fn criterion_5() -> Check {
    let ct = cyc3();
    let mut store = HornStore::new();
    prepare_store(&mut store, 6, &ct).unwrap();
    let sys = generate_system(&store, 6, &ct, SystemLevel::Full0).unwrap();
    let horn: BTreeSet<Vec<u32>> = sys
        .horn()
        .map(|h| {
            assert!(h.tuple.is_stable_under(&ct));
            h.tuple.parts()[0].elements()
        })
        .collect();
    let listed: BTreeSet<Vec<u32>> = [vec![1, 5, 6], vec![2, 4, 6], vec![3, 4, 5]].into();
    ensure(horn == listed, || format!("horn rows {horn:?}"))?;
    ensure(sys.horn().all(|h| h.d == 3), || "horn rows of size other than 3".into())?;
    let counts = sys.counts();
    ensure(counts.equality == 2 && counts.chamber == 5, || format!("{counts:?}"))?;

    let mut verdicts = Vec::new();
    for (i, con) in sys.constraints().iter().enumerate() {
        let listed_row = match con {
            Constraint::TraceUpper | Constraint::TraceLower => true,
            Constraint::Horn(_) => true,
            Constraint::Chamber { .. } => false,
        };
        if !listed_row {
            continue;
        }
        let v = is_redundant(&sys, i).unwrap();
        let star = con.horn().is_some_and(|h| h.tuple.parts()[0].elements() == [2, 4, 6]);
        let want = if star { VerdictKind::Redundant } else { VerdictKind::Essential };
        ensure(v.kind == want, || format!("{}: {:?}", sys.render(con), v.kind))?;
        verdicts.push(format!("{}: {:?}", sys.render(con), v.kind));
    }
    let min00 = generate_system(&store, 6, &ct, SystemLevel::Min00).unwrap();
    ensure(
        min00.len() == sys.len() - 1
            && min00.horn().all(|h| h.tuple.parts()[0].elements() != [2, 4, 6]),
        || "Min00 does not drop exactly the implied row".into(),
    )?;
    Ok(format!("({{2,4,6}}^3) redundant, equality and the other two rows essential; {} constraints", sys.len()))
}

fn criterion_6() -> Check {
    let id = id3();
    let store = store_through(6, &id);
    let mut checked = 0;
    for n in 1..=6 {
        for d in 1..=n {
            let report = cross_check(&store, d, n, &id).unwrap();
            if let Some(m) = report.mismatches.first() {
                return Err(format!("({d},{n}): {} {}", m.tuple, m.detail));
            }
            checked += report.checked;
        }
    }
    Ok(format!("{checked} tuples with ambient <= 6 agree with LR positivity, flags included"))
}

fn criterion_7() -> Check {
    let id = id3();
    let store = store_through(6, &id);
    let mut compared = 0;
    for r in 1..=5 {
        for d in 1..=r {
            for e in &store.require(d, r, &id).unwrap().entries {
                ensure(e.in00 == Some(e.in0), || format!("({d},{r}): {} in0 {} in00 {:?}", e.tuple, e.in0, e.in00))?;
                compared += e.in0 as usize;
            }
        }
    }
    let witness = tuple(6, [&[2, 4, 6], &[2, 4, 6], &[2, 4, 6]]);
    let entry = store.require(3, 6, &id).unwrap().find(&witness).cloned();
    ensure(
        entry.as_ref().is_some_and(|e| e.in0 && e.in00 == Some(false)),
        || format!("({{2,4,6}}^3) entry {entry:?}"),
    )?;
    let strict = store
        .require(3, 6, &id)
        .unwrap()
        .entries
        .iter()
        .filter(|e| e.in0 && e.in00 == Some(false))
        .count();
    Ok(format!("{compared} edim-0 members up to r = 5 all have point coefficient 1; strict members in (3,6): {strict}, incl. ({{2,4,6}}^3)"))
}

fn edim_chain() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5u32 {
        for r in 1..=n {
            let outer = stable_tuples(r, n, &id3());
            for d in 1..=r {
                let mid = stable_tuples(d, r, &id3());
                for m in 1..=d {
                    let inner = stable_tuples(m, d, &id3());
                    for ii in &outer {
                        for jj in &mid {
                            let q = ii.quotient(jj).unwrap();
                            let ij = ii.compose(jj).unwrap();
                            for kk in &inner {
                                let jk = jj.compose(kk).unwrap();
                                let lhs = q.compose(kk).unwrap().edim() - kk.edim();
                                let rhs = ij.compose(kk).unwrap().edim() - jk.edim();
                                ensure(lhs == rhs, || format!("edim chain fails at {ii}, {jj}, {kk}"))?;
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn slope_identity() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5u32 {
        for r in 1..=n {
            for ii in stable_tuples(r, n, &id3()) {
                let theta: Vec<Vec<BigRational>> = ii
                    .big_gamma_values()
                    .iter()
                    .map(|row| row.iter().map(|&g| q(-g, 1)).collect())
                    .collect();
                for d in 1..=r {
                    for jj in stable_tuples(d, r, &id3()) {
                        let lhs = ii.compose(&jj).unwrap().edim() - jj.edim();
                        let rhs = q(d as i64, 1) * slope(&theta, &jj).unwrap()
                            + q((d * (n - r)) as i64, 1);
                        ensure(q(lhs, 1) == rhs, || format!("slope identity fails at {ii}, {jj}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn closure_and_equivariance() -> Result<(usize, usize), String> {
    let calc = SchubertCalculator::new();
    let perms = Permutation::all(3);
    let mut intersecting: Vec<Vec<Vec<SubsetTuple>>> = vec![vec![Vec::new(); 7]; 7];
    let mut equivariance = 0;
    for n in 1..=6u32 {
        for r in 1..=n {
            for t in stable_tuples(r, n, &id3()) {
                let kind = calc.classify(&t).kind;
                for p in &perms {
                    let moved = t.act(p).unwrap();
                    ensure(moved.edim() == t.edim(), || format!("edim not invariant at {t}"))?;
                    ensure(calc.classify(&moved).kind == kind, || format!("status not invariant at {t} under {p}"))?;
                    equivariance += 1;
                }
                if calc.classify(&t).is_intersecting() {
                    intersecting[r as usize][n as usize].push(t);
                }
            }
        }
    }
    let members: Vec<Vec<HashSet<SubsetTuple>>> = intersecting
        .iter()
        .map(|row| row.iter().map(|v| v.iter().cloned().collect()).collect())
        .collect();
    let mut closure = 0;
    for n in 1..=6usize {
        for r in 1..=n {
            for d in 1..=r {
                for ii in &intersecting[r][n] {
                    for jj in &intersecting[d][r] {
                        let c = ii.compose(jj).unwrap();
                        ensure(members[d][n].contains(&c), || format!("{ii} o {jj} = {c} not intersecting"))?;
                        closure += 1;
                    }
                }
            }
        }
    }
    Ok((closure, equivariance))
}

fn shift_rescale_invariance() -> Result<(usize, usize), String> {
    let id = id3();
    let mut store = HornStore::new();
    prepare_store(&mut store, 3, &id).unwrap();
    let sys = generate_system(&store, 3, &id, SystemLevel::Full0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut members = 0;
    for _ in 0..SHIFT_RESCALE_POINTS {
        let spectra: Vec<Vec<BigRational>> = (0..3)
            .map(|_| {
                let mut v: Vec<i64> = (0..3).map(|_| rng.random_range(-12..=12)).collect();
                v.sort_by(|a, b| b.cmp(a));
                v.into_iter().map(|x| q(x, 4)).collect()
            })
            .collect();
        let trace: BigRational = spectra.iter().flatten().fold(BigRational::zero(), |a, v| a + v);
        let t = if rng.random_bool(0.9) {
            trace / q(3, 1)
        } else {
            q(rng.random_range(-12..=12), 5)
        };
        let family = SpectrumFamily::new(spectra, t).unwrap();
        let tau: Vec<BigRational> = (0..3).map(|_| q(rng.random_range(-50..=50), rng.random_range(1..=9))).collect();
        let c = q(rng.random_range(1..=40), rng.random_range(1..=7));
        let moved = shift_rescale(&family, &tau, &c).unwrap();
        let before = sys.member(&family).unwrap().is_member();
        let after = sys.member(&moved).unwrap().is_member();
        ensure(before == after, || format!("membership changes at {family} under shift/rescale"))?;
        members += before as usize;
    }
    ensure(members > 0 && members < SHIFT_RESCALE_POINTS, || format!("degenerate sample: {members} members"))?;
    Ok((SHIFT_RESCALE_POINTS, members))
}

fn criterion_8() -> Check {
    let chain = edim_chain()?;
    let slopes = slope_identity()?;
    let (closure, equivariance) = closure_and_equivariance()?;
    let (points, members) = shift_rescale_invariance()?;
    Ok(format!(
        "edim chain {chain}, slope identity {slopes}, closure {closure}, equivariance {equivariance} cases; shift/rescale on {points} points ({members} members)"
    ))
}

/// Largest violation over the Horn rows, divided by the largest reduced coordinate.
fn normalized_margin(sys: &InequalitySystem, family: &SpectrumFamily) -> BigRational {
    let scale = sys
        .reduce(family)
        .unwrap()
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap();
    if scale.is_zero() {
        return BigRational::zero();
    }
    sys.constraints()
        .iter()
        .map(|c| sys.excess(c, family))
        .max()
        .unwrap()
        / scale
}

fn criterion_9() -> Check {
    let id = id3();
    let mut store = HornStore::new();
    prepare_store(&mut store, 3, &id).unwrap();
    let sys = generate_system(&store, 3, &id, SystemLevel::Full0).unwrap();
    let margin = q(NON_MEMBER_MARGIN.0, NON_MEMBER_MARGIN.1);
    let options = WitnessOptions {
        max_iters: WITNESS_MAX_ITERS,
        tol: WITNESS_TOL,
        ..WitnessOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut members, mut non_members) = (Vec::new(), Vec::new());
    while members.len() < WITNESS_SAMPLES || non_members.len() < WITNESS_SAMPLES {
        let spectra: Vec<Vec<BigRational>> = (0..3)
            .map(|_| {
                let mut v: Vec<i64> = (0..3)
                    .map(|_| rng.random_range(-WITNESS_GRID..=WITNESS_GRID))
                    .collect();
                v.sort_by(|a, b| b.cmp(a));
                v.into_iter().map(|x| q(x, WITNESS_GRID)).collect()
            })
            .collect();
        let trace: BigRational = spectra.iter().flatten().fold(BigRational::zero(), |a, v| a + v);
        let family = SpectrumFamily::new(spectra, trace / q(3, 1)).unwrap();
        match sys.member(&family).unwrap() {
            Verdict::Member if members.len() < WITNESS_SAMPLES => members.push(family),
            Verdict::NotMember { .. }
                if non_members.len() < WITNESS_SAMPLES
                    && normalized_margin(&sys, &family) >= margin =>
            {
                non_members.push(family)
            }
            _ => {}
        }
    }
    let mut worst_residual: f64 = 0.0;
    let mut max_iters = 0;
    for family in &members {
        let w = find_witness(family, &options).unwrap();
        let (spectra, t) = family.to_f64();
        let check = w.verify(&spectra, t);
        ensure(w.converged && w.residual <= WITNESS_TOL, || {
            format!("member {family} did not converge (residual {:e})", w.residual)
        })?;
        ensure(check <= 10.0 * WITNESS_TOL, || format!("member {family}: independent residual {check:e}"))?;
        worst_residual = worst_residual.max(w.residual);
        max_iters = max_iters.max(w.iterations);
    }
    let mut min_gap = f64::INFINITY;
    for family in &non_members {
        let w = find_witness(family, &options).unwrap();
        ensure(!w.converged, || format!("non-member {family} converged"))?;
        min_gap = min_gap.min(w.residual);
    }
    Ok(format!(
        "{} members converged (worst residual {worst_residual:.1e}, at most {max_iters} iterations); {} non-members stayed above residual {min_gap:.3}",
        members.len(),
        non_members.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Check); 9] = [
        (1, "count table l0 and l0_sigma", criterion_1),
        (2, "minimal counts and LP essentiality", criterion_2),
        (3, "orbit listings with stable rows", criterion_3),
        (4, "Intersecting(5,10,3) sizes", criterion_4),
        (5, "symmetric rank-six system and its implied row", criterion_5),
        (6, "recursion agrees with LR positivity", criterion_6),
        (7, "edim-0 members have point coefficient 1", criterion_7),
        (8, "combinatorial and membership invariants", criterion_8),
        (9, "numeric witnesses agree with exact membership", criterion_9),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (number, title, run) in criteria {
        if filter.is_some_and(|f| f != number) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {number} PASS [{secs:.1}s] {title}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("criterion {number} FAIL [{secs:.1}s] {title}: {reason}");
            }
        }
    }
    panic::set_hook(default_hook);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
