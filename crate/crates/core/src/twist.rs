//! Twist orbits: the objects obtained by iterated right twists along the
//! orbit of `v0`, the twist matrices in eigen coordinates, half-plane
//! trajectories and descent chains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::AlgebraProfile;
use crate::lattice::{chi, left_twist_matrix, KVector, SL2Matrix};
use crate::quadfield::{halfplane_test, lift, EigenFrame, QuadNum, QuadVec};
use crate::series::{dual_series, twist_series_f, twist_series_r};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("profile is not admissible (N = {n}, M = {m})")]
    NotAdmissible { n: BigInt, m: BigInt },
    #[error("profile is not Koszul (N = {n}, M = {m})")]
    NotKoszul { n: BigInt, m: BigInt },
    #[error("profile has no eigen frame (needs a hyperbolic g and M > 0)")]
    NoFrame,
    #[error("the cube identity needs N - M = 1, got N - M = {0}")]
    WrongBoundary(BigInt),
    #[error("vector {0} is not in the half-plane deg - theta rk > 0")]
    NotInHalfplane(KVector),
    #[error("vector {0} is not primitive")]
    NotPrimitive(KVector),
    #[error("slope is rational; an irrational slope is required")]
    NotIrrational,
    #[error("internal check failed: {0}")]
    Internal(String),
}

fn not_admissible(p: &AlgebraProfile) -> TwistError {
    TwistError::NotAdmissible {
        n: p.n.clone(),
        m: p.m.clone(),
    }
}

/// A 2x2 matrix over `Q(sqrt D)`, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadMatrix {
    pub a: QuadNum,
    pub b: QuadNum,
    pub c: QuadNum,
    pub d: QuadNum,
}

impl QuadMatrix {
    pub fn new(a: QuadNum, b: QuadNum, c: QuadNum, d: QuadNum) -> Self {
        QuadMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::diag(QuadNum::one(), QuadNum::one())
    }

    pub fn diag(x: QuadNum, y: QuadNum) -> Self {
        QuadMatrix::new(x, QuadNum::zero(), QuadNum::zero(), y)
    }

    pub fn from_sl2(g: &SL2Matrix) -> Self {
        let q = |n: &BigInt| QuadNum::integer(n.clone());
        QuadMatrix::new(q(g.a()), q(g.b()), q(g.c()), q(g.d()))
    }

    /// The matrix with columns `x` and `y`.
    pub fn from_columns(x: &QuadVec, y: &QuadVec) -> Self {
        QuadMatrix::new(x[0].clone(), y[0].clone(), x[1].clone(), y[1].clone())
    }

    pub fn mul(&self, o: &QuadMatrix) -> QuadMatrix {
        QuadMatrix::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn apply(&self, v: &QuadVec) -> QuadVec {
        [
            &self.a * &v[0] + &self.b * &v[1],
            &self.c * &v[0] + &self.d * &v[1],
        ]
    }

    pub fn det(&self) -> QuadNum {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> QuadNum {
        &self.a + &self.d
    }

    pub fn neg(&self) -> QuadMatrix {
        QuadMatrix::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn inverse(&self) -> Option<QuadMatrix> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let k = det.inv().ok()?;
        Some(QuadMatrix::new(
            &self.d * &k,
            -(&self.b * &k),
            -(&self.c * &k),
            &self.a * &k,
        ))
    }

    pub fn pow(&self, n: u32) -> QuadMatrix {
        (0..n).fold(QuadMatrix::identity(), |acc, _| acc.mul(self))
    }
}

/// `chi(F'_n, F_m)` for `0 <= n < m <= horizon` and `rk(F'_n)` for
/// `0 <= n <= horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistOrbit {
    pub n: BigInt,
    pub m: BigInt,
    /// The eigenvalue used for ranks: the contracting one, or 1 if unipotent.
    pub r: QuadNum,
    pub chi: BTreeMap<(usize, usize), BigInt>,
    pub rk: Vec<QuadNum>,
}

impl TwistOrbit {
    pub fn chi_at(&self, n: usize, m: usize) -> Option<&BigInt> {
        self.chi.get(&(n, m))
    }
}

fn orbit_eigenvalue(p: &AlgebraProfile) -> Result<QuadNum, TwistError> {
    if p.is_unipotent() {
        Ok(QuadNum::one())
    } else {
        p.frame.as_ref().map(|f| f.r.clone()).ok_or(TwistError::NoFrame)
    }
}

pub fn twist_orbit(p: &AlgebraProfile, horizon: usize) -> Result<TwistOrbit, TwistError> {
    if !p.is_admissible() {
        return Err(not_admissible(p));
    }
    let r = orbit_eigenvalue(p)?;
    let horizon = horizon.max(1);
    let a = p.hilbert_coefficients(horizon);
    let mut table: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for m in 1..=horizon {
        table.insert((0, m), a[m].clone());
    }
    for n in 1..horizon {
        let lead = table[&(n - 1, n)].clone();
        for m in n + 1..=horizon {
            let val = &lead * &a[m - n] - &table[&(n - 1, m)];
            table.insert((n, m), val);
        }
    }
    let mut rk = vec![QuadNum::one()];
    let mut rn = QuadNum::one();
    for n in 1..=horizon {
        rn = &rn * &r;
        let next = &QuadNum::integer(table[&(n - 1, n)].clone()) * &rn - &rk[n - 1];
        rk.push(next);
    }

    let f = twist_series_f(&p.n, &p.m).coefficients(horizon - 1, horizon - 1);
    for ((n, m), val) in &table {
        let k = m - n - 1;
        if f[*n][k] != BigRational::from_integer(val.clone()) {
            return Err(TwistError::Internal(format!("chi({n},{m}) disagrees with F(t,u)")));
        }
    }
    let rs = twist_series_r(&p.n, &p.m, &r)
        .map_err(|e| TwistError::Internal(e.to_string()))?
        .coefficients(horizon);
    if rs != rk {
        return Err(TwistError::Internal("ranks disagree with R(t)".into()));
    }
    Ok(TwistOrbit {
        n: p.n.clone(),
        m: p.m.clone(),
        r,
        chi: table,
        rk,
    })
}

/// Dimensions of the quadratic dual algebra: `1, chi(F'_0, F_1), chi(F'_1, F_2), ...`.
pub fn koszul_dual_dims(p: &AlgebraProfile, horizon: usize) -> Result<Vec<BigInt>, TwistError> {
    let koszul = p.koszul().map_err(|_| not_admissible(p))?;
    if !koszul.is_holds() {
        return Err(TwistError::NotKoszul {
            n: p.n.clone(),
            m: p.m.clone(),
        });
    }
    let mut dims = vec![BigInt::one()];
    if horizon > 0 {
        let orbit = twist_orbit(p, horizon)?;
        dims.extend((1..=horizon).map(|n| orbit.chi[&(n - 1, n)].clone()));
    }
    let expected = dual_series(&p.hilbert())
        .map_err(|e| TwistError::Internal(e.to_string()))?
        .coefficients(horizon);
    if expected.iter().zip(&dims).any(|(e, d)| *e != BigRational::from_integer(d.clone())) {
        return Err(TwistError::Internal("dual dimensions disagree with H(-t)^-1".into()));
    }
    Ok(dims)
}

fn frame_of(p: &AlgebraProfile) -> Result<&EigenFrame, TwistError> {
    p.frame.as_ref().ok_or(TwistError::NoFrame)
}

/// `h_0 = [[1 + delta, -delta], [delta, 1 - delta]]` in the basis `(u, u')`.
fn h0_eigen(frame: &EigenFrame) -> QuadMatrix {
    let dl = &frame.delta;
    QuadMatrix::new(
        QuadNum::one() + dl.clone(),
        -dl,
        dl.clone(),
        QuadNum::one() - dl.clone(),
    )
}

/// `h_{-i} = diag(r^-i, r^i) h_0 diag(r^i, r^-i)` in the basis `(u, u')`.
fn h_eigen(frame: &EigenFrame, i: i64) -> QuadMatrix {
    let ri = frame.r.pow(i).expect("eigenvalue is nonzero");
    let ri_inv = ri.inv().expect("eigenvalue is nonzero");
    QuadMatrix::diag(ri_inv.clone(), ri.clone())
        .mul(&h0_eigen(frame))
        .mul(&QuadMatrix::diag(ri, ri_inv))
}

/// Matrix of `L_{F_{-i}}[1]` in the eigen basis `(u, u')`, checked against the
/// integer twist along `g^{-i} v0`.
pub fn h_matrix(p: &AlgebraProfile, i: i64) -> Result<QuadMatrix, TwistError> {
    let frame = frame_of(p)?;
    let h = h_eigen(frame, i);
    let v = p.g.pow(-i).act(&p.v0);
    let integer = left_twist_matrix(&v).map_err(|e| TwistError::Internal(e.to_string()))?;
    let basis = QuadMatrix::from_columns(&frame.u, &frame.uprime);
    let basis_inv = basis
        .inverse()
        .ok_or_else(|| TwistError::Internal("eigen basis is degenerate".into()))?;
    let conj = basis_inv.mul(&QuadMatrix::from_sl2(&integer)).mul(&basis);
    if conj != h {
        return Err(TwistError::Internal(format!("h_-{i} disagrees with the integer twist")));
    }
    if h.det() != QuadNum::one() {
        return Err(TwistError::Internal(format!("det h_-{i} is not 1")));
    }
    Ok(h)
}

/// `S = diag(r, r^-1) h_0`, with `det S = 1` and `tr S = N - M` checked.
pub fn s_matrix(p: &AlgebraProfile) -> Result<QuadMatrix, TwistError> {
    let frame = frame_of(p)?;
    let s = QuadMatrix::diag(frame.r.clone(), frame.r_inv()).mul(&h0_eigen(frame));
    if s.det() != QuadNum::one() {
        return Err(TwistError::Internal("det S is not 1".into()));
    }
    if s.trace() != QuadNum::integer(&p.n - &p.m) {
        return Err(TwistError::Internal("tr S is not N - M".into()));
    }
    Ok(s)
}

/// Whether `S^3 = -I`; defined only on the boundary `N - M = 1`.
pub fn s_cube_check(p: &AlgebraProfile) -> Result<bool, TwistError> {
    let gap = &p.n - &p.m;
    if !gap.is_one() {
        return Err(TwistError::WrongBoundary(gap));
    }
    let s = s_matrix(p)?;
    Ok(s.pow(3) == QuadMatrix::identity().neg())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStep {
    /// Coordinates `(alpha, beta)` with respect to `(u, u')`.
    pub coords: QuadVec,
    /// `chi(u, w) = beta delta > 0`.
    pub in_halfplane: bool,
}

/// `v, h_0 v, h_-1 h_0 v, ...` in eigen coordinates, `steps` applications.
pub fn trajectory(p: &AlgebraProfile, v: &KVector, steps: usize) -> Result<Vec<TrajectoryStep>, TwistError> {
    let frame = frame_of(p)?;
    let step = |coords: QuadVec| {
        let in_halfplane = (&coords[1] * &frame.delta).is_positive();
        TrajectoryStep { coords, in_halfplane }
    };
    let mut w = frame.coordinates(&lift(v));
    let mut out = vec![step(w.clone())];
    for k in 0..steps {
        w = h_eigen(frame, k as i64).apply(&w);
        out.push(step(w.clone()));
    }
    Ok(out)
}

/// Least `k >= 0` (below `limit`) with `chi(v0, g^k v) > 0`.
pub fn ample_reduction_power(p: &AlgebraProfile, v: &KVector, limit: usize) -> Option<usize> {
    let mut w = v.clone();
    for k in 0..limit {
        if chi(&p.v0, &w).is_positive() {
            return Some(k);
        }
        w = p.g.act(&w);
    }
    None
}

/// Iterates `v -> w` with `chi(v, w) = 1` and `0 < w.deg - theta w.rk < v.deg - theta v.rk`.
pub fn descent_chain(theta: &QuadNum, v: &KVector, steps: usize) -> Result<Vec<KVector>, TwistError> {
    if theta.is_rational() {
        return Err(TwistError::NotIrrational);
    }
    if !v.is_primitive() {
        return Err(TwistError::NotPrimitive(v.clone()));
    }
    if !halfplane_test(theta, v) {
        return Err(TwistError::NotInHalfplane(v.clone()));
    }
    let value = |w: &KVector| QuadNum::integer(w.deg.clone()) - theta * &QuadNum::integer(w.rk.clone());
    let mut chain = Vec::with_capacity(steps);
    let mut cur = v.clone();
    for _ in 0..steps {
        // m rk - n deg = 1
        let eg = cur.rk.extended_gcd(&-&cur.deg);
        let sign = if eg.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
        let base = KVector::new(&eg.x * &sign, &eg.y * &sign);
        let len = value(&cur);
        let k = (&value(&base) / &len).floor();
        let next = base.sub(&cur.scale(&k));
        let val = value(&next);
        if !val.is_positive() || !(&len - &val).is_positive() || chi(&cur, &next) != BigInt::one() {
            return Err(TwistError::Internal("descent step left the interval".into()));
        }
        chain.push(next.clone());
        cur = next;
    }
    Ok(chain)
}
