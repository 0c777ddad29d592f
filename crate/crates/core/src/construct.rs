//! Constructions: profiles realizing real multiplication by a quadratic
//! irrationality, ample sequences of slopes converging to any irrational
//! `theta`, and the opposite-algebra matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::classify::{profile, AlgebraProfile, AlphaFlag};
use crate::lattice::{chi, EigenClass, KVector, SL2Matrix};
use crate::quadfield::{
    fractional_linear, halfplane_test, matrix_of_unit, theta_of, unit_below_one, ProjPoint,
    QuadError, QuadNum, QuadOrder,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("slope is rational; an irrational slope is required")]
    NotIrrational,
    #[error("no acceptable base vector with sup-norm at most {0}")]
    SearchExhausted(u64),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// Result of the real-multiplication construction for one order.
#[derive(Debug, Clone, PartialEq)]
pub struct RmPair {
    pub theta: QuadNum,
    /// The unit in `(0, 1)`; it is the contracting eigenvalue of `g`.
    pub r: QuadNum,
    pub g: SL2Matrix,
    pub v0: KVector,
    pub profile: AlgebraProfile,
    /// `M >= N + 2`.
    pub koszul_grade: bool,
}

pub const RM_SEARCH_LIMIT: u64 = 100_000;

/// Primitive vectors with `max(|deg|, |rk|) = s`, in lexicographic order.
pub fn sup_norm_shell(s: u64) -> Vec<KVector> {
    let s = s as i64;
    if s == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for deg in -s..=s {
        if deg.abs() == s {
            out.extend((-s..=s).map(|rk| KVector::new(deg, rk)));
        } else {
            out.push(KVector::new(deg, -s));
            out.push(KVector::new(deg, s));
        }
    }
    out.retain(|v| v.is_primitive());
    out
}

/// `g` is multiplication by the unit below one on `Z theta + Z`; `v0` is the
/// first primitive vector (sup-norm, then lexicographic) in the half-plane of
/// `theta` with `chi(v0, g v0) >= tr g` (`>= tr g + 2` when `koszul_grade`).
pub fn rm_pair(order: &QuadOrder, koszul_grade: bool) -> Result<RmPair, ConstructError> {
    let theta = theta_of(order);
    let r = unit_below_one(order)?;
    let g = matrix_of_unit(order, &r)?;
    let n = g.trace();
    let bound = if koszul_grade { &n + 2 } else { n.clone() };
    let v0 = (1..=RM_SEARCH_LIMIT)
        .find_map(|s| {
            sup_norm_shell(s)
                .into_iter()
                .find(|v| halfplane_test(&theta, v) && chi(v, &g.act(v)) >= bound)
        })
        .ok_or(ConstructError::SearchExhausted(RM_SEARCH_LIMIT))?;
    let p = profile(&g, &v0, AlphaFlag::NontrivialOrUnknown)
        .map_err(|e| ConstructError::Internal(e.to_string()))?;

    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(ConstructError::Internal(what.to_string()))
        }
    };
    check(
        fractional_linear(&g, &ProjPoint::Finite(theta.clone())) == ProjPoint::Finite(theta.clone()),
        "theta is not fixed by g",
    )?;
    check(p.class == EigenClass::HyperbolicPositive, "g is not hyperbolic")?;
    check(p.theta_attract.as_ref() == Some(&theta), "theta is not the attracting slope")?;
    check(p.frame.as_ref().map(|f| &f.r) == Some(&r), "unit is not the contracting eigenvalue")?;
    check(p.m >= p.n, "M < N")?;
    let ample = p.ample().map_err(|e| ConstructError::Internal(e.to_string()))?;
    check(ample.is_holds(), "ample verdict does not hold")?;
    let koszul_grade = p.m >= &p.n + 2;
    Ok(RmPair {
        theta,
        r,
        g,
        v0,
        profile: p,
        koszul_grade,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleSeqItem {
    /// Position in the sequence, counting down from `-1`.
    pub index: i64,
    pub d: BigInt,
    /// A prime.
    pub r: BigInt,
    /// `d / r`.
    pub mu: BigRational,
    /// `mu - theta >= 1 / r`.
    pub theta_gap_ok: bool,
}

impl AmpleSeqItem {
    pub fn vector(&self) -> KVector {
        KVector::new(self.d.clone(), self.r.clone())
    }
}

/// Primes `5, 7, 11, 13, ...`.
pub fn primes_from_five() -> impl Iterator<Item = u64> {
    let mut found: Vec<u64> = vec![2, 3];
    (5u64..).step_by(2).filter(move |&n| {
        let prime = found.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0);
        if prime {
            found.push(n);
        }
        prime
    })
}

/// Slopes `d / r` with `r` prime and `1/r <= d/r - theta <= 3/r`:
/// `d = ceil(r theta + 1)`, bumped by one when `r | d`.
pub fn ample_sequence(theta: &QuadNum, count: usize) -> Result<Vec<AmpleSeqItem>, ConstructError> {
    if theta.is_rational() {
        return Err(ConstructError::NotIrrational);
    }
    let mut items = Vec::with_capacity(count);
    for (k, p) in primes_from_five().take(count).enumerate() {
        let r = BigInt::from(p);
        let rq = QuadNum::integer(r.clone());
        let mut d = (&(theta * &rq) + &QuadNum::one()).ceil();
        if d.is_multiple_of(&r) {
            d += 1;
        }
        let mu = BigRational::new(d.clone(), r.clone());
        let gap = QuadNum::rational(mu.clone()) - theta.clone();
        let inv_r = BigRational::new(BigInt::one(), r.clone());
        let lower = (&gap - &QuadNum::rational(inv_r.clone())).sign().is_ge();
        let upper = (&QuadNum::rational(inv_r * BigInt::from(3)) - &gap).sign().is_ge();
        if !d.gcd(&r).is_one() || !upper {
            return Err(ConstructError::Internal(format!("ample item for r = {r} out of bounds")));
        }
        items.push(AmpleSeqItem {
            index: -(k as i64) - 1,
            d,
            r,
            mu,
            theta_gap_ok: lower,
        });
    }
    if items.iter().any(|it| !it.theta_gap_ok) {
        return Err(ConstructError::Internal("gap below 1/r".into()));
    }
    Ok(items)
}

/// `[[a, b], [c, d]] -> [[d, b], [c, a]]`.
pub fn opposite_matrix(g: &SL2Matrix) -> SL2Matrix {
    SL2Matrix::new(g.d().clone(), g.b().clone(), g.c().clone(), g.a().clone())
        .expect("swapping the diagonal keeps the determinant")
}

/// `dim A_{i,j} = chi(v_i, v_j)` for `i < j`; zero on and below the diagonal.
pub fn dimension_table(vectors: &[KVector]) -> Vec<Vec<BigInt>> {
    vectors
        .iter()
        .enumerate()
        .map(|(i, vi)| {
            vectors
                .iter()
                .enumerate()
                .map(|(j, vj)| if j > i { chi(vi, vj) } else { BigInt::from(0) })
                .collect()
        })
        .collect()
}

/// Whether `chi(v_i, v_j) > 0` for all `i < j`.
pub fn is_chi_positive(table: &[Vec<BigInt>]) -> bool {
    table
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().skip(i + 1).all(|x| x.is_positive()))
}
