//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DVector;
use prymlab::atiyah::{h0_sym3_twisted_split, tschirnhausen_degree, Atom, Bundle, ModuliCase, Twist};
use prymlab::braid::braid_orbits;
use prymlab::homology::HomologyData;
use prymlab::hurwitz::{enumerate_simple_classes, DEFAULT_GUARD};
use prymlab::period::{
    distance, dual_period, gamma_action, in_gamma, random_gamma, sample_siegel, CMatrix, PeriodMatrix, RawPeriod,
    C64, TOL_ACTION,
};
use prymlab::prym::analyze;
use prymlab::symplectic::{random_chain, random_unimodular, PolarizationType, SkewLattice};
use prymlab::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL_CASES: [(usize, usize); 6] = [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4), (3, 6)];

enum Status {
    Pass,
    Fail(String),
    /// The move set does not connect the classes.
    MoveSetIncomplete(String),
}

type Check = fn() -> Status;

fn kind(v: &[i64]) -> PolarizationType {
    PolarizationType::new(v.to_vec()).unwrap()
}

fn fail(msg: impl Into<String>) -> Status {
    Status::Fail(msg.into())
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Status> {
    if ok {
        Ok(())
    } else {
        Err(Status::Fail(msg()))
    }
}

fn prym_types() -> Status {
    let start = Instant::now();
    let mut count = 0;
    for (d, n) in SMALL_CASES {
        let classes = enumerate_simple_classes(d, n, DEFAULT_GUARD).unwrap();
        if classes.is_empty() {
            return fail(format!("no classes for d={d} n={n}"));
        }
        for c in classes {
            let r = analyze(&c.representative).unwrap();
            let mut expected = vec![1; n / 2];
            *expected.last_mut().unwrap() = d as i64;
            if r.prym_m != 1 || r.prym_type != kind(&expected) {
                return fail(format!("d={d} n={n}: m={} type={}", r.prym_m, r.prym_type));
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return fail(format!("took {elapsed:?}"));
    }
    println!("    {count} tuples in {elapsed:.2?}");
    Status::Pass
}

fn cokernel_factorisation() -> Status {
    let mut seen = std::collections::BTreeMap::new();
    for c in enumerate_simple_classes(4, 2, DEFAULT_GUARD).unwrap() {
        let r = analyze(&c.representative).unwrap();
        let d2 = r.coker_order;
        if ![1, 2, 4].contains(&d2) {
            return fail(format!("cokernel order {d2}"));
        }
        let d1 = 4 / d2;
        if r.prym_m != 1 || r.prym_type != kind(&[d1]) || d1 * d2 != 4 {
            return fail(format!("coker={d2} but m={} type={}", r.prym_m, r.prym_type));
        }
        *seen.entry(d2).or_insert(0) += 1;
    }
    println!("    cokernel orders {seen:?}");
    Status::Pass
}

fn homology_sanity() -> Status {
    let mut count = 0;
    for (d, n) in SMALL_CASES {
        for c in enumerate_simple_classes(d, n, DEFAULT_GUARD).unwrap() {
            let h = HomologyData::of_tuple(&c.representative).unwrap();
            if h.rank != 2 * (n / 2 + 1) {
                return fail(format!("d={d} n={n}: rank {}", h.rank));
            }
            if let Err(e) = h.check(d) {
                return fail(format!("d={d} n={n}: {e}"));
            }
            count += 1;
        }
    }
    println!("    {count} tuples");
    Status::Pass
}

fn dual_arithmetic() -> Status {
    let run = || -> Result<(), Status> {
        require(kind(&[1, 1, 2]).dual() == kind(&[1, 2, 2]), || "(1,1,2)".into())?;
        require(kind(&[1, 1, 3]).dual() == kind(&[1, 3, 3]), || "(1,1,3)".into())?;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let g = rng.random_range(1..=5);
            let k = random_chain(g, 1, &mut rng);
            require(k.dual().dual() == k, || format!("involution fails on {k}"))?;
        }
        for _ in 0..200 {
            let g = rng.random_range(1..=4);
            let k = random_chain(g, rng.random_range(1..=3), &mut rng);
            let u = random_unimodular(2 * g, 12, &mut rng);
            let lattice = SkewLattice::new(k.standard_form().congruence(&u)).unwrap();
            let dual = lattice.dual_form().unwrap();
            let e = k.exponent();
            let product = lattice.gram() * dual.gram();
            require(product == IntMatrix::identity(2 * g).scale(-e), || format!("composition fails for {k}"))?;
            let report = lattice.check_duality().unwrap();
            require(report.all(), || format!("duality report {report:?}"))?;
        }
        Ok(())
    };
    match run() {
        Ok(()) => Status::Pass,
        Err(s) => s,
    }
}

fn period_duality() -> Status {
    let start = Instant::now();
    let z = CMatrix::identity(3, 3) * C64::new(0.0, 1.0);
    let p = PeriodMatrix::new(z, kind(&[1, 1, 2])).unwrap();
    let d = dual_period(&p).unwrap();
    let expected = CMatrix::from_diagonal(&DVector::from_vec(vec![
        C64::new(0.0, 0.5),
        C64::new(0.0, 2.0),
        C64::new(0.0, 2.0),
    ]));
    if d.kind() != &kind(&[1, 2, 2]) || distance(d.z(), &expected) > 1e-9 {
        return fail(format!("worked example gave {} {:?}", d.kind(), d.z()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for s in 0..100 {
        let g = rng.random_range(1..=4);
        let k = random_chain(g, 1, &mut rng);
        let p = sample_siegel(g, s).with_type(k).unwrap();
        let twice = dual_period(&dual_period(&p).unwrap()).unwrap();
        if twice.kind() != p.kind() {
            return fail(format!("double dual changed the type to {}", twice.kind()));
        }
        worst = worst.max(distance(twice.z(), p.z()));
    }
    let elapsed = start.elapsed();
    if worst >= 1e-9 || elapsed > Duration::from_secs(5) {
        return fail(format!("residual {worst:e} in {elapsed:?}"));
    }
    println!("    worst double-dual residual {worst:e}");
    Status::Pass
}

fn to_complex(m: &IntMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |i, j| C64::new(m[(i, j)] as f64, 0.0))
}

fn gamma_action_law() -> Status {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for s in 0..100 {
        let g = rng.random_range(1..=3);
        let k = random_chain(g, 1, &mut rng);
        let p = sample_siegel(g, 1000 + s).with_type(k.clone()).unwrap();
        let m1 = random_gamma(&k, 4, &mut rng);
        let m2 = random_gamma(&k, 4, &mut rng);
        if !in_gamma(&k, &m1) || !in_gamma(&k, &m2) || !in_gamma(&k, &(&m1 * &m2)) {
            return fail(format!("sampled matrix outside Γ_D for {k}"));
        }
        let lhs = gamma_action(&p, &(&m1 * &m2)).unwrap();
        let rhs = gamma_action(&gamma_action(&p, &m2).unwrap(), &m1).unwrap();
        let raw = RawPeriod { pi: p.full() * to_complex(&m1.transpose()), kind: k.clone() };
        let via = raw.normalize().unwrap();
        let direct = gamma_action(&p, &m1).unwrap();
        worst = worst.max(distance(lhs.z(), rhs.z())).max(distance(via.z(), direct.z()));
    }
    if worst >= TOL_ACTION {
        return fail(format!("residual {worst:e}"));
    }
    println!("    worst residual {worst:e}");
    Status::Pass
}

fn moduli_counts() -> Status {
    let grid = ModuliCase::grid(10);
    for c in &grid {
        let m = c.count().unwrap();
        if !m.agrees() {
            return fail(format!("{c:?}: bound {} vs {} = {}", m.bound, m.closed_label, m.closed_form));
        }
    }
    let twisted = Bundle::atom(Atom::new(2, 4, Twist::symbol("L")).unwrap());
    if twisted.end().unwrap().h0() != 2 {
        return fail("h0(End(L⊗F₂)) ≠ 2");
    }
    let mut split = 0;
    for a in 1..=10 {
        for b in a..=2 * a {
            for eps in [0, 1] {
                let Ok(closed) = h0_sym3_twisted_split(a, b, eps) else { continue };
                let m = if eps == 1 {
                    Atom::new(1, b, Twist::symbol("L").power(2)).unwrap()
                } else {
                    Atom::line("M", b)
                };
                let e = Bundle::new(vec![Atom::line("L", a), m]);
                if e.sym3_twisted().unwrap().h0() != closed || closed != 2 * (a + b) + eps {
                    return fail(format!("sym3 sections at a={a} b={b} ε={eps}"));
                }
                split += 1;
            }
        }
    }
    println!("    {} configurations, {split} split bundles", grid.len());
    Status::Pass
}

fn orbit_connectivity() -> Status {
    let mut bad = Vec::new();
    for (d, n) in [(3, 2), (3, 4), (3, 6), (2, 4), (2, 6)] {
        let classes = enumerate_simple_classes(d, n, DEFAULT_GUARD).unwrap();
        let orbits = braid_orbits(&classes).unwrap();
        if orbits.count() != 1 {
            bad.push(format!("d={d} n={n}: {} orbits", orbits.count()));
        }
    }
    if bad.is_empty() {
        Status::Pass
    } else {
        Status::MoveSetIncomplete(bad.join("; "))
    }
}

fn tschirnhausen() -> Status {
    if tschirnhausen_degree(3, 4, 1).ok() != Some((3, 6)) {
        return fail("(3, 4, 1)");
    }
    for d in 2..=5 {
        for gy in 0..=2 {
            for gx in gy..=8 {
                let ramification = 2 * gx - 2 - d * (2 * gy - 2);
                match tschirnhausen_degree(d, gx, gy) {
                    Ok((e, r)) if r == ramification && r == 2 * e => {}
                    Err(_) if ramification < 0 => {}
                    other => return fail(format!("d={d} gX={gx} gY={gy}: {other:?}")),
                }
            }
        }
    }
    Status::Pass
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 9] = [
        ("prym-types", prym_types),
        ("cokernel-factorisation", cokernel_factorisation),
        ("homology-sanity", homology_sanity),
        ("dual-arithmetic", dual_arithmetic),
        ("period-duality", period_duality),
        ("gamma-action", gamma_action_law),
        ("moduli-counts", moduli_counts),
        ("orbit-connectivity", orbit_connectivity),
        ("tschirnhausen", tschirnhausen),
    ];
    let mut failures = 0;
    for (k, (name, check)) in checks.into_iter().enumerate() {
        match check() {
            Status::Pass => println!("criterion={} name={name} status=PASS", k + 1),
            Status::Fail(why) => {
                failures += 1;
                println!("criterion={} name={name} status=FAIL reason={why:?}", k + 1);
            }
            Status::MoveSetIncomplete(why) => {
                failures += 1;
                println!("criterion={} name={name} status=FAIL_MOVE_SET reason={why:?}", k + 1);
            }
        }
    }
    println!("acceptance passed={} failed={failures}", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
