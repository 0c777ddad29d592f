//! Brute-force cross-checks of the closed forms. Matrix arithmetic, the Euler
//! form and power-series expansion are reimplemented here on plain arrays so
//! that agreement with the engines is meaningful.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{positivity_report, profile, growth_report, AlgebraProfile, AlphaFlag};
use crate::construct::rm_pair;
use crate::lattice::{cube_identity_check, KVector, SL2Matrix};
use crate::quadfield::{QuadNum, QuadOrder};
use crate::series::{orbit_chi_series, twist_series_f, twist_series_r, Coefficient};
use crate::twist::koszul_dual_dims;

/// Row-major `[a, b, c, d]`.
type M2 = [BigInt; 4];
/// `(deg, rk)`.
type V2 = [BigInt; 2];

fn m2(a: i64, b: i64, c: i64, d: i64) -> M2 {
    [a.into(), b.into(), c.into(), d.into()]
}

fn m2_of(g: &SL2Matrix) -> M2 {
    g.row_major()
}

fn m2_mul(x: &M2, y: &M2) -> M2 {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

fn m2_det(x: &M2) -> BigInt {
    &x[0] * &x[3] - &x[1] * &x[2]
}

fn m2_trace(x: &M2) -> BigInt {
    &x[0] + &x[3]
}

fn m2_act(x: &M2, v: &V2) -> V2 {
    [&x[0] * &v[0] + &x[1] * &v[1], &x[2] * &v[0] + &x[3] * &v[1]]
}

fn m2_identity() -> M2 {
    m2(1, 0, 0, 1)
}

/// `chi(v, w) = rk(v) deg(w) - deg(v) rk(w)`.
fn chi2(v: &V2, w: &V2) -> BigInt {
    &v[1] * &w[0] - &v[0] * &w[1]
}

fn v2(v: &KVector) -> V2 {
    [v.deg.clone(), v.rk.clone()]
}

/// Taylor coefficients `0..=n` of `num / den` by long division; `den[0]` must be invertible.
fn long_division<T: Coefficient>(num: &[T], den: &[T], n: usize) -> Vec<T> {
    let at = |s: &[T], k: usize| s.get(k).cloned().unwrap_or_else(T::zero);
    let mut rem: Vec<T> = (0..=n + den.len()).map(|k| at(num, k)).collect();
    let lead = den[0].clone();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let c = rem[k].clone() / lead.clone();
        for (j, dj) in den.iter().enumerate() {
            if k + j < rem.len() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dj.clone();
            }
        }
        out.push(c);
    }
    out
}

fn ps_mul<T: Coefficient>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    (0..=n)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| match (a.get(i), b.get(k - i)) {
                (Some(x), Some(y)) => acc + x.clone() * y.clone(),
                _ => acc,
            })
        })
        .collect()
}

fn ps_inv<T: Coefficient>(a: &[T], n: usize) -> Vec<T> {
    long_division(&[T::one()], a, n)
}

fn ints(xs: &[BigInt]) -> Vec<BigRational> {
    xs.iter().cloned().map(BigRational::from_integer).collect()
}

/// Some `(g, v)` with `tr g = N`, `chi(v, g v) = M`, `v = (0, 1)`:
/// `g = [[N - d, M], [c, d]]` with `d (N - d) - M c = 1`.
pub fn realize(n: &BigInt, m: &BigInt) -> Option<(SL2Matrix, KVector)> {
    let v = KVector::new(0, 1);
    if m.is_zero() {
        let d = n / 2;
        let g = SL2Matrix::new(n - &d, BigInt::zero(), BigInt::zero(), d).ok()?;
        return Some((g, v));
    }
    let modulus = m.abs();
    let mut d = BigInt::zero();
    while d < modulus {
        let num = (n - &d) * &d - BigInt::one();
        if (&num % m).is_zero() {
            let g = SL2Matrix::new(n - &d, m.clone(), &num / m, d).ok()?;
            return Some((g, v));
        }
        d += 1;
    }
    None
}

/// `Mt / (1 - Nt + t^2)` from the engine against the recurrence
/// `a_n = N a_{n-1} - a_{n-2}` and against `chi(v, g^n v)` for a realization.
pub fn series_vs_recurrence(n: &BigInt, m: &BigInt, horizon: usize) -> bool {
    let engine: Vec<BigRational> = orbit_chi_series(n, m).coefficients(horizon);
    let mut rec = vec![BigInt::zero(), m.clone()];
    while rec.len() <= horizon {
        let k = rec.len();
        rec.push(n * &rec[k - 1] - &rec[k - 2]);
    }
    rec.truncate(horizon + 1);
    if engine != ints(&rec) {
        return false;
    }
    if let Some((g, v)) = realize(n, m) {
        let (g, v) = (m2_of(&g), v2(&v));
        let mut pow = m2_identity();
        for expected in &rec {
            if chi2(&v, &m2_act(&pow, &v)) != *expected {
                return false;
            }
            pow = m2_mul(&pow, &g);
        }
    }
    true
}

/// Truncated bivariate series: `s[i][j]` is the `t^i u^j` coefficient.
type Bi = Vec<Vec<BigRational>>;

fn bi_zero(order: usize) -> Bi {
    vec![vec![BigRational::zero(); order + 1]; order + 1]
}

/// `(u + t) F(t, u) = H(u) (1 + t F0(t)) - 1` up to total degree `order`, with
/// `F0 = (H(-t)^-1 - 1) / t`; and `R(t) (1 + t) = H(-r t)^-1` in `Q(sqrt D)`
/// when `N >= 2`.
pub fn bivariate_identity_check(n: &BigInt, m: &BigInt, order: usize) -> bool {
    let h_num = ints(&[BigInt::one(), m - n, BigInt::one()]);
    let h_den = ints(&[BigInt::one(), -n, BigInt::one()]);
    let h = long_division(&h_num, &h_den, order + 1);
    let h_neg: Vec<BigRational> = h
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect();
    let h_neg_inv = ps_inv(&h_neg, order + 1);
    // 1 + t F0(t) = H(-t)^-1
    let mut rhs = bi_zero(order);
    for (i, a) in h_neg_inv.iter().enumerate().take(order + 1) {
        for (j, b) in h.iter().enumerate().take(order + 1) {
            rhs[i][j] = a * b;
        }
    }
    rhs[0][0] -= BigRational::one();

    let f = twist_series_f(n, m).coefficients(order, order);
    let mut lhs = bi_zero(order);
    for i in 0..=order {
        for j in 0..=order {
            let mut c = BigRational::zero();
            if j > 0 {
                c += &f[i][j - 1];
            }
            if i > 0 {
                c += &f[i - 1][j];
            }
            lhs[i][j] = c;
        }
    }
    for i in 0..=order {
        for j in 0..=order - i {
            if lhs[i][j] != rhs[i][j] {
                return false;
            }
        }
    }

    if *n < BigInt::from(2) {
        return true;
    }
    let r = if *n == BigInt::from(2) {
        QuadNum::one()
    } else {
        let s = QuadNum::sqrt_of(&(n * n - BigInt::from(4)));
        (QuadNum::integer(n.clone()) - s).scale(&BigRational::new(1.into(), 2.into()))
    };
    let Ok(r_series) = twist_series_r(n, m, &r) else {
        return false;
    };
    let lhs_r = ps_mul(&r_series.coefficients(order), &[QuadNum::one(), QuadNum::one()], order);
    let mut neg_r_pow = QuadNum::one();
    let h_neg_r: Vec<QuadNum> = h
        .iter()
        .take(order + 1)
        .map(|c| {
            let term = &QuadNum::rational(c.clone()) * &neg_r_pow;
            neg_r_pow = &neg_r_pow * &(-&r);
            term
        })
        .collect();
    lhs_r == ps_inv(&h_neg_r, order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub g: [i64; 4],
    pub v: (i64, i64),
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g = {:?}, v = {:?}: {}", self.g, self.v, self.detail)
    }
}

/// All integer matrices with entries in `[-bound, bound]` and determinant one.
pub fn sl2_box(bound: i64) -> Vec<[i64; 4]> {
    let r = -bound..=bound;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if a * d - b * c == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn vector_box(bound: i64) -> Vec<(i64, i64)> {
    let r = -bound..=bound;
    r.clone()
        .flat_map(|x| r.clone().map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
        .collect()
}

fn scan_box<F>(entry_bound: i64, vec_bound: i64, parallel: bool, check: F) -> Vec<Violation>
where
    F: Fn([i64; 4], (i64, i64)) -> Option<String> + Sync,
{
    let mats = sl2_box(entry_bound);
    let vecs = vector_box(vec_bound);
    let per_matrix = |g: &[i64; 4]| -> Vec<Violation> {
        vecs.iter()
            .filter_map(|&v| check(*g, v).map(|detail| Violation { g: *g, v, detail }))
            .collect()
    };
    if parallel {
        mats.par_iter().flat_map_iter(per_matrix).collect()
    } else {
        mats.iter().flat_map(per_matrix).collect()
    }
}

/// Condition (ii) decided exactly against the positivity scan of
/// `chi(v, g^n v)`, `1 <= n <= horizon`; engine reports are compared too.
pub fn exhaustive_positivity(entry_bound: i64, vec_bound: i64, horizon: usize, parallel: bool) -> Vec<Violation> {
    scan_box(entry_bound, vec_bound, parallel, |g, (x, y)| {
        let gm = m2(g[0], g[1], g[2], g[3]);
        let v: V2 = [x.into(), y.into()];
        let mut w = v.clone();
        let mut scan = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            w = m2_act(&gm, &w);
            scan.push(chi2(&v, &w));
        }
        let positive_eigen = m2_trace(&gm) >= BigInt::from(2);
        let cond_ii = positive_eigen && scan[0].is_positive();
        let cond_scan = scan.iter().all(|c| c.is_positive());
        if cond_ii != cond_scan {
            return Some(format!("condition (ii) = {cond_ii}, scan = {cond_scan}"));
        }
        let engine_g = SL2Matrix::new(g[0], g[1], g[2], g[3]).expect("det 1");
        let rep = positivity_report(&engine_g, &KVector::new(x, y), horizon);
        if rep.scan != scan
            || rep.condition_ii != cond_ii
            || rep.condition_i_prime != cond_scan
            || rep.condition_i != cond_scan
        {
            return Some("engine report disagrees".to_string());
        }
        None
    })
}

/// Four-way agreement of the growth conditions, with (ii) also recomputed by
/// integer iteration.
pub fn exhaustive_growth(entry_bound: i64, vec_bound: i64, horizon: usize, parallel: bool) -> (usize, Vec<Violation>) {
    let checked = std::sync::atomic::AtomicUsize::new(0);
    let violations = scan_box(entry_bound, vec_bound, parallel, |g, (x, y)| {
        let engine_g = SL2Matrix::new(g[0], g[1], g[2], g[3]).expect("det 1");
        let Ok(rep) = growth_report(&engine_g, &KVector::new(x, y)) else {
            return None;
        };
        checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        if !rep.agree() {
            return Some(format!("conditions disagree: {rep:?}"));
        }
        let gm = m2(g[0], g[1], g[2], g[3]);
        let v: V2 = [x.into(), y.into()];
        let mut pow = m2_identity();
        let mut ii = false;
        for _ in 0..horizon {
            pow = m2_mul(&pow, &gm);
            if chi2(&v, &m2_act(&pow, &v)) >= m2_trace(&pow) {
                ii = true;
                break;
            }
        }
        (ii != rep.ii).then(|| format!("integer scan gives (ii) = {ii}"))
    });
    (checked.into_inner(), violations)
}

/// Recomputes `R_{v0} g^-1` on arrays and checks the dual invariants and
/// dimensions against an independent expansion of `H(-t)^-1`.
pub fn dual_matrix_check(samples: &[AlgebraProfile], horizon: usize) -> Result<(), String> {
    for p in samples {
        let v0 = v2(&p.v0);
        // R(v) = chi(v, v0) v0 - v, columns are the images of the basis.
        let col = |e: V2| {
            let k = chi2(&e, &v0);
            [&k * &v0[0] - &e[0], &k * &v0[1] - &e[1]]
        };
        let (c1, c2) = (col([1.into(), 0.into()]), col([0.into(), 1.into()]));
        let rho: M2 = [c1[0].clone(), c2[0].clone(), c1[1].clone(), c2[1].clone()];
        let g = m2_of(&p.g);
        let g_inv: M2 = [g[3].clone(), -&g[1], -&g[2], g[0].clone()];
        let dual = m2_mul(&rho, &g_inv);
        let n = m2_trace(&g);
        let m = chi2(&v0, &m2_act(&g, &v0));
        let fail = |what: &str| Err(format!("profile g = {}, v0 = {}: {what}", p.g, p.v0));
        if !m2_det(&dual).is_one() {
            return fail("det of the dual matrix is not 1");
        }
        if m2_trace(&dual) != &m - &n {
            return fail("trace of the dual matrix is not M - N");
        }
        if chi2(&v0, &m2_act(&dual, &v0)) != m {
            return fail("chi(v0, g! v0) is not M");
        }
        let engine = p.koszul_dual().map_err(|e| e.to_string())?;
        if m2_of(&engine.g) != dual {
            return fail("engine dual matrix differs");
        }
        let h = long_division(
            &ints(&[BigInt::one(), &m - &n, BigInt::one()]),
            &ints(&[BigInt::one(), -&n, BigInt::one()]),
            horizon,
        );
        let h_neg: Vec<BigRational> = h
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        let expected = ps_inv(&h_neg, horizon);
        let dims = koszul_dual_dims(p, horizon).map_err(|e| e.to_string())?;
        if ints(&dims) != expected {
            return fail("dual dimensions differ from H(-t)^-1");
        }
    }
    Ok(())
}

/// Smallest `k > 0` with `disc k^2 + 4 = t^2` and `t = k beta mod 2`, found by
/// direct search; gives the stabilizer generator of trace `t`.
pub fn pell_trace(order: &QuadOrder, limit: u64) -> Option<(BigInt, BigInt)> {
    let disc = order.discriminant();
    let mut k = BigInt::one();
    for _ in 0..limit {
        let t2 = &disc * &k * &k + BigInt::from(4);
        let t = t2.sqrt();
        let kb: BigInt = &k * order.beta();
        if &t * &t == t2 && ((&t - kb) % 2u32).is_zero() {
            return Some((t, k));
        }
        k += 1;
    }
    None
}

/// The engine's real-multiplication matrix is one of the two stabilizer
/// generators `[[a, -k gamma], [k alpha, a + k beta]]` with `2a + k beta = t`.
pub fn pell_unit_check(order: &QuadOrder, limit: u64) -> Result<(), String> {
    let Some((t, k)) = pell_trace(order, limit) else {
        return Err(format!("no Pell solution below {limit}"));
    };
    let rm = rm_pair(order, false).map_err(|e| e.to_string())?;
    let g = m2_of(&rm.g);
    let matches = [k.clone(), -k].iter().any(|k| {
        let kb: BigInt = k * order.beta();
        let a: BigInt = (&t - kb) / 2u32;
        let cand: M2 = [
            a.clone(),
            -(k * order.gamma()),
            k * order.alpha(),
            a + k * order.beta(),
        ];
        cand == g
    });
    if matches && m2_det(&g).is_one() {
        Ok(())
    } else {
        Err(format!("order {:?}: engine matrix {} is not the stabilizer generator of trace {t}", order, rm.g))
    }
}

/// Random words in `S = [[0, -1], [1, 0]]`, `T = [[1, 1], [0, 1]]` and inverses.
pub fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<SL2Matrix> {
    let gens = [m2(0, -1, 1, 0), m2(0, 1, -1, 0), m2(1, 1, 0, 1), m2(1, -1, 0, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let w = (0..len).fold(m2_identity(), |acc, _| m2_mul(&acc, &gens[rng.gen_range(0..4)]));
            SL2Matrix::from_row_major(w).expect("words have det 1")
        })
        .collect()
}

/// The engine cube identity together with Cayley-Hamilton on arrays.
pub fn cube_suite(count: usize, seed: u64) -> Vec<String> {
    random_words(count, 16, seed)
        .into_iter()
        .filter_map(|g| {
            let gm = m2_of(&g);
            let n = m2_trace(&gm);
            let g2 = m2_mul(&gm, &gm);
            let ch: Vec<BigInt> = (0..4)
                .map(|i| &g2[i] - &n * &gm[i] + if i == 0 || i == 3 { BigInt::one() } else { BigInt::zero() })
                .collect();
            let ok = cube_identity_check(&g) && ch.iter().all(|c| c.is_zero());
            (!ok).then(|| format!("cube identity fails for {g}"))
        })
        .collect()
}

/// Orders `alpha t^2 + beta t + gamma` drawn from a small box.
pub fn random_orders(count: usize, seed: u64) -> Vec<QuadOrder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let (a, b, c) = (rng.gen_range(1..=3i64), rng.gen_range(-4..=4i64), rng.gen_range(-5..=-1i64));
        if let Ok(o) = QuadOrder::new(a, b, c) {
            if seen.insert((a, b, c)) {
                out.push(o);
            }
        }
    }
    out
}

/// Koszul-grade profiles from the real-multiplication construction.
pub fn koszul_samples(count: usize, seed: u64) -> Result<Vec<AlgebraProfile>, String> {
    random_orders(count, seed)
        .iter()
        .map(|o| rm_pair(o, true).map(|rm| rm.profile).map_err(|e| e.to_string()))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub entry_bound: i64,
    pub vec_bound: i64,
    pub horizon: usize,
    pub parallel: bool,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            entry_bound: 3,
            vec_bound: 3,
            horizon: 40,
            parallel: false,
            seed: 20_240_601,
        }
    }
}

pub const SUITES: [&str; 7] = ["series", "bivariate", "positivity", "growth", "cube", "dual", "pell"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub suites: Vec<SuiteResult>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(
                f,
                "{:<10} {:<4} checked={} time={}ms",
                s.name,
                if s.passed { "PASS" } else { "FAIL" },
                s.checked,
                s.millis
            )?;
            for msg in s.failures.iter().take(5) {
                writeln!(f, "    {msg}")?;
            }
        }
        Ok(())
    }
}

fn big_range(lo: i64, hi: i64) -> impl Iterator<Item = BigInt> + Clone {
    (lo..=hi).map(BigInt::from)
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Option<SuiteResult> {
    let start = Instant::now();
    let (checked, failures): (usize, Vec<String>) = match name {
        "series" => {
            let mut fails = Vec::new();
            let mut count = 0;
            for n in big_range(-5, 10) {
                for m in big_range(-5, 15) {
                    count += 1;
                    if !series_vs_recurrence(&n, &m, 20) {
                        fails.push(format!("N = {n}, M = {m}"));
                    }
                }
            }
            (count, fails)
        }
        "bivariate" => {
            let mut fails = Vec::new();
            let mut count = 0;
            for n in big_range(2, 10) {
                for m in big_range(1, 15) {
                    count += 1;
                    if !bivariate_identity_check(&n, &m, 10) {
                        fails.push(format!("N = {n}, M = {m}"));
                    }
                }
            }
            (count, fails)
        }
        "positivity" => {
            let v = exhaustive_positivity(cfg.entry_bound, cfg.vec_bound, cfg.horizon, cfg.parallel);
            let count = sl2_box(cfg.entry_bound).len() * vector_box(cfg.vec_bound).len();
            (count, v.iter().map(|x| x.to_string()).collect())
        }
        "growth" => {
            let (count, v) = exhaustive_growth(cfg.entry_bound, cfg.vec_bound, cfg.horizon, cfg.parallel);
            (count, v.iter().map(|x| x.to_string()).collect())
        }
        "cube" => (1000, cube_suite(1000, cfg.seed)),
        "dual" => {
            let mut samples = Vec::new();
            let mut fails = Vec::new();
            for (g, v) in [(m2(3, -4, -2, 3), (3, 1)), (m2(1, 4, 0, 1), (0, 1))] {
                let g = SL2Matrix::from_row_major(g).expect("det 1");
                samples.push(profile(&g, &KVector::new(v.0, v.1), AlphaFlag::Trivial).expect("valid"));
            }
            match koszul_samples(50, cfg.seed) {
                Ok(s) => samples.extend(s),
                Err(e) => fails.push(e),
            }
            let run = |p: &AlgebraProfile| dual_matrix_check(std::slice::from_ref(p), 20).err();
            let errs: Vec<String> = if cfg.parallel {
                samples.par_iter().filter_map(run).collect()
            } else {
                samples.iter().filter_map(run).collect()
            };
            fails.extend(errs);
            (samples.len(), fails)
        }
        "pell" => {
            let orders: Vec<QuadOrder> = (2..=30i64)
                .filter_map(|d| QuadOrder::new(1, 0, -d).ok())
                .chain(random_orders(30, cfg.seed))
                .collect();
            let fails = orders
                .iter()
                .filter_map(|o| pell_unit_check(o, 2_000_000).err())
                .collect();
            (orders.len(), fails)
        }
        _ => return None,
    };
    Some(SuiteResult {
        name: name.to_string(),
        passed: failures.is_empty(),
        checked,
        failures,
        millis: start.elapsed().as_millis(),
    })
}

/// Runs one named suite, or every suite for `"all"`; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<OracleReport> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let suites = names
        .iter()
        .map(|n| run_one(n, cfg))
        .collect::<Option<Vec<_>>>()?;
    Some(OracleReport { suites })
}
