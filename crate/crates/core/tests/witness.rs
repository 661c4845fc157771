use horn_core::kirwan::prepare_store;
use horn_core::{
    find_witness, generate_system, BigRational, CycleType, HornStore, InequalitySystem,
    SpectrumFamily, SystemLevel, Verdict, WitnessOptions, WitnessStatus,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: i64 = 1_000_000;
const TOL: f64 = 1e-8;
const MAX_ITERS: usize = 200_000;
const SAMPLES: usize = 8;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn margin(sys: &InequalitySystem, family: &SpectrumFamily) -> BigRational {
    let scale = sys.reduce(family).unwrap().iter().map(|v| v.abs()).max().unwrap();
    if scale.is_zero() {
        return BigRational::zero();
    }
    sys.constraints().iter().map(|c| sys.excess(c, family)).max().unwrap() / scale
}

fn options() -> WitnessOptions {
    WitnessOptions {
        max_iters: MAX_ITERS,
        tol: TOL,
        seed: 1,
        ..WitnessOptions::default()
    }
}

#[test]
fn symmetric_members_converge_and_far_points_do_not() {
    let ct = CycleType::new(vec![3]).unwrap();
    let mut store = HornStore::new();
    prepare_store(&mut store, 4, &ct).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for r in 2..=4usize {
        let sys = generate_system(&store, r as u32, &ct, SystemLevel::Min00).unwrap();
        let (mut members, mut far) = (0, 0);
        while members < SAMPLES || far < SAMPLES {
            let mut v: Vec<i64> = (0..r).map(|_| rng.random_range(-GRID..=GRID)).collect();
            v.sort_by(|a, b| b.cmp(a));
            let lambda: Vec<BigRational> = v.into_iter().map(|x| q(x, GRID)).collect();
            let trace: BigRational = lambda.iter().fold(BigRational::zero(), |a, x| a + x);
            let t = if rng.random_bool(0.5) {
                q(3, r as i64) * trace
            } else {
                q(rng.random_range(-GRID..=GRID), GRID)
            };
            let family = SpectrumFamily::new(vec![lambda.clone(), lambda.clone(), lambda], t).unwrap();
            let verdict = sys.member(&family).unwrap();
            let is_member = verdict.is_member();
            if is_member && members < SAMPLES {
                members += 1;
            } else if matches!(verdict, Verdict::NotMember { .. })
                && far < SAMPLES
                && margin(&sys, &family) >= q(1, 10)
            {
                far += 1;
            } else {
                continue;
            }
            let w = find_witness(&family, &options()).unwrap();
            if is_member {
                assert_eq!(w.status, WitnessStatus::Converged, "r = {r}: {family}, residual {:e}", w.residual);
                let (spectra, t) = family.to_f64();
                assert!(w.verify(&spectra, t) <= 10.0 * TOL);
            } else {
                assert_eq!(w.status, WitnessStatus::Inconclusive, "r = {r}: {family}");
            }
        }
    }
}

#[test]
fn witness_is_reproducible_and_hermitian() {
    let family = SpectrumFamily::from_integers(&[vec![2, 0, -2], vec![2, 0, -2], vec![2, 0, -2]], 0).unwrap();
    let opts = WitnessOptions { record_history: true, ..options() };
    let a = find_witness(&family, &opts).unwrap();
    let b = find_witness(&family, &opts).unwrap();
    assert!(a.converged);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.history.len(), a.iterations);
    for m in &a.matrices {
        let x = m.matrix();
        assert!((x - x.adjoint()).norm() < 1e-12);
    }
    let other = find_witness(&family, &WitnessOptions { seed: 9, ..opts }).unwrap();
    assert!(other.converged);
}
