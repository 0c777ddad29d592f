//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use rmtori::classify::{profile, AlphaFlag, Status};
use rmtori::construct::{ample_sequence, rm_pair, sup_norm_shell};
use rmtori::lattice::{chi, classify_eigen, EigenClass, KVector, SL2Matrix};
use rmtori::oracle::{
    dual_matrix_check, exhaustive_positivity, exhaustive_growth, koszul_samples, realize, run_suite,
    SuiteConfig,
};
use rmtori::quadfield::{fractional_linear, halfplane_test, ProjPoint, QuadNum, QuadOrder};
use rmtori::series::{twist_identity_holds, twist_series_f, twist_series_r};
use rmtori::twist::{s_cube_check, s_matrix, trajectory, twist_orbit, QuadMatrix};

type Outcome = Result<String, String>;

fn mat(a: i64, b: i64, c: i64, d: i64) -> SL2Matrix {
    SL2Matrix::new(a, b, c, d).expect("det 1")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn commutative_sanity() -> Outcome {
    for d in 1..=10i64 {
        let p = profile(&mat(1, d, 0, 1), &KVector::new(0, 1), AlphaFlag::Trivial).map_err(|e| e.to_string())?;
        let expected: Vec<BigInt> = (0..=20i64).map(|n| if n == 0 { BigInt::one() } else { BigInt::from(n * d) }).collect();
        ensure(p.hilbert_coefficients(20) == expected, format!("Hilbert coefficients wrong for d = {d}"))?;
        let v = p.verdicts().map_err(|e| e.to_string())?;
        ensure(v.quadratic.is_holds() == (d >= 4), format!("quadratic verdict wrong for d = {d}"))?;
        ensure(v.koszul.is_holds() == (d >= 4), format!("Koszul verdict wrong for d = {d}"))?;
    }
    Ok("d = 1..10, coefficients n*d to degree 20, quadratic/Koszul flip at d = 4".into())
}

fn twist_tables() -> Outcome {
    let mut realized = 0;
    for n in 2..=10i64 {
        for m in 1..=15i64 {
            let (nb, mb) = (BigInt::from(n), BigInt::from(m));
            ensure(twist_identity_holds(&nb, &mb), format!("rational identity fails at ({n}, {m})"))?;
            let Some((g, v)) = realize(&nb, &mb) else { continue };
            realized += 1;
            let p = profile(&g, &v, AlphaFlag::NontrivialOrUnknown).map_err(|e| e.to_string())?;
            let o = twist_orbit(&p, 10).map_err(|e| format!("({n}, {m}): {e}"))?;
            let f = twist_series_f(&nb, &mb).coefficients(9, 9);
            for ((i, j), c) in &o.chi {
                ensure(f[*i][j - i - 1] == BigRational::from_integer(c.clone()), format!("chi table differs at ({n}, {m})"))?;
            }
            let r = twist_series_r(&nb, &mb, &o.r).map_err(|e| e.to_string())?.coefficients(10);
            ensure(r == o.rk, format!("rank sequence differs at ({n}, {m})"))?;
        }
    }
    Ok(format!("{realized} realized (N, M) pairs, tables to horizon 10 exact; identity holds on all 135"))
}

fn koszul_duality() -> Outcome {
    let p = profile(&mat(3, -4, -2, 3), &KVector::new(3, 1), AlphaFlag::Trivial).map_err(|e| e.to_string())?;
    let d = p.koszul_dual().map_err(|e| e.to_string())?;
    ensure(d.g == mat(6, 11, 1, 2), format!("dual matrix is {}", d.g))?;
    ensure(d.n == BigInt::from(8) && d.m == BigInt::from(14), "dual N, M")?;
    let samples = koszul_samples(50, SuiteConfig::default().seed)?;
    ensure(samples.len() == 50, "fewer than 50 samples")?;
    ensure(samples.iter().all(|s| s.m >= &s.n + 2), "sample not Koszul-grade")?;
    dual_matrix_check(&samples, 20)?;
    Ok("worked dual [[6,11],[1,2]]; 50 sampled profiles: tr = M - N, chi = M, dims to 20".into())
}

fn ampleness_boundary() -> Outcome {
    let p = profile(&mat(2, -1, -3, 2), &KVector::new(1, 0), AlphaFlag::NontrivialOrUnknown).map_err(|e| e.to_string())?;
    ensure(p.n == BigInt::from(4) && p.m == BigInt::from(3), "boundary profile N, M")?;
    let s = s_matrix(&p).map_err(|e| e.to_string())?;
    ensure(s.trace() == QuadNum::one(), "tr S != 1")?;
    ensure(s.pow(3) == QuadMatrix::identity().neg(), "S^3 != -I")?;
    ensure(s_cube_check(&p) == Ok(true), "cube check")?;
    let theta = p.theta_attract.clone().ok_or("no attracting slope")?;
    let samples: Vec<KVector> = (1..)
        .flat_map(sup_norm_shell)
        .filter(|v| chi(&p.v0, v).is_positive() && halfplane_test(&theta, v))
        .take(50)
        .collect();
    for v in &samples {
        let t = trajectory(&p, v, 3).map_err(|e| e.to_string())?;
        ensure(t[0].in_halfplane, format!("{v} does not start in H"))?;
        ensure(t[1..].iter().any(|s| !s.in_halfplane), format!("trajectory of {v} stays in H"))?;
    }
    let q = profile(&mat(2, 1, 1, 1), &KVector::new(0, 1), AlphaFlag::NontrivialOrUnknown).map_err(|e| e.to_string())?;
    let t = trajectory(&q, &q.v0, 50).map_err(|e| e.to_string())?;
    ensure(t.iter().all(|s| s.in_halfplane), "trajectory from v0 leaves H")?;
    ensure(q.finitely_generated().map_err(|e| e.to_string())?.status == Status::Fails, "finitely generated")?;
    Ok("N=4, M=3: tr S = 1, S^3 = -I, 50 trajectories exit by step 3; N=3, M=1 stays 50 steps".into())
}

fn rm_construction() -> Outcome {
    let orders = [
        (1, 0, -2),
        (1, -1, -1),
        (1, 0, -3),
        (1, 0, -5),
        (2, -2, -1),
        (1, 0, -6),
        (1, 0, -7),
        (3, 1, -1),
        (1, -3, 1),
        (5, 0, -3),
    ];
    for (a, b, c) in orders {
        let o = QuadOrder::new(a, b, c).map_err(|e| e.to_string())?;
        let rm = rm_pair(&o, false).map_err(|e| format!("({a},{b},{c}): {e}"))?;
        let fixed = fractional_linear(&rm.g, &ProjPoint::Finite(rm.theta.clone()));
        ensure(fixed == ProjPoint::Finite(rm.theta.clone()), format!("({a},{b},{c}): theta not fixed"))?;
        ensure(classify_eigen(&rm.g) == EigenClass::HyperbolicPositive, "eigenvalues not positive and distinct")?;
        ensure(rm.profile.m >= rm.profile.n, "M < N")?;
        ensure(rm.profile.ample().map_err(|e| e.to_string())?.is_holds(), "ample fails")?;
        if (a, b, c) == (1, 0, -2) {
            ensure(rm.g == mat(3, -4, -2, 3), format!("sqrt 2 matrix is {}", rm.g))?;
        }
    }
    Ok("10 orders: theta fixed, hyperbolic, M >= N, ample; sqrt 2 gives [[3,-4],[-2,3]]".into())
}

fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    let mut k = two;
    while &k * &k <= *n {
        if (n % &k) == BigInt::from(0) {
            return false;
        }
        k += 1;
    }
    true
}

fn ample_sequences() -> Outcome {
    let sqrt2 = QuadNum::from_ints(2, 0, 1).map_err(|e| e.to_string())?;
    let items = ample_sequence(&sqrt2, 20).map_err(|e| e.to_string())?;
    ensure(items.len() == 20, "item count")?;
    for it in &items {
        ensure(is_prime(&it.r), format!("{} is not prime", it.r))?;
        ensure(it.d.gcd(&it.r).is_one(), "gcd(d, r) != 1")?;
        let gap = QuadNum::rational(it.mu.clone()) - sqrt2.clone();
        let lo = QuadNum::rational(BigRational::new(BigInt::one(), it.r.clone()));
        let hi = QuadNum::rational(BigRational::new(BigInt::from(3), it.r.clone()));
        ensure(!(&lo - &gap).is_positive() && !(&gap - &hi).is_positive(), "gap bounds")?;
    }
    let first: Vec<(BigInt, BigInt)> = items.iter().take(3).map(|it| (it.d.clone(), it.r.clone())).collect();
    let want: Vec<(BigInt, BigInt)> = [(9, 5), (11, 7), (17, 11)].iter().map(|&(d, r)| (d.into(), r.into())).collect();
    ensure(first == want, "first three items")?;
    Ok("20 items, prime r, coprime, 1/r <= mu - sqrt 2 <= 3/r, starts (9,5), (11,7), (17,11)".into())
}

fn descent_chains() -> Outcome {
    let sqrt2 = QuadNum::from_ints(2, 0, 1).map_err(|e| e.to_string())?;
    let start = KVector::new(1, 0);
    let chain = rmtori::twist::descent_chain(&sqrt2, &start, 10).map_err(|e| e.to_string())?;
    ensure(chain.len() == 10, "chain length")?;
    ensure(chain[0] == KVector::new(-1, -1) && chain[1] == KVector::new(-4, -3), "first two vectors")?;
    let value = |v: &KVector| QuadNum::integer(v.deg.clone()) - &sqrt2 * &QuadNum::integer(v.rk.clone());
    let mut prev = start;
    for w in &chain {
        ensure(chi(&prev, w) == BigInt::one(), "consecutive chi != 1")?;
        ensure(w.is_primitive() && halfplane_test(&sqrt2, w), "not primitive or not in H")?;
        ensure((value(&prev) - value(w)).is_positive(), "values do not decrease")?;
        prev = w.clone();
    }
    Ok("10 vectors from (1,0): (-1,-1), (-4,-3), ...; chi = 1, primitive, decreasing".into())
}

fn oracle_suites() -> Outcome {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    ensure(exhaustive_positivity(3, 3, 40, false).is_empty(), "positivity violations")?;
    let (checked, v) = exhaustive_growth(3, 3, 40, false);
    ensure(v.is_empty(), "growth disagreement")?;
    for name in ["series", "cube"] {
        let r = run_suite(name, &cfg).ok_or("unknown suite")?;
        ensure(r.passed(), format!("{name} suite failed:\n{r}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("positivity box 3/3/40 empty, series 336 pairs, 1000 cube words, growth {checked} cases; {secs:.1}s"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("commutative sanity", commutative_sanity),
        ("twist tables match generating series", twist_tables),
        ("Koszul duality", koszul_duality),
        ("ampleness boundary", ampleness_boundary),
        ("real multiplication construction", rm_construction),
        ("ample sequences", ample_sequences),
        ("descent chains", descent_chains),
        ("oracle suites", oracle_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} [{name}]: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({msg})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
