//! Exact audit of the explicit E(d, j) action on T² × SU(2): the matrices
//! T_τ, M and Q_{τ,θ}, their substitution relations, the piecewise region
//! table, and a floating-point spot check of the group relations.

mod numeric;
mod regions;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cert::{Certificate, Status};
use crate::error::{NawError, Result};
use crate::exact::{Cyclotomic, CyclotomicField, LaurentMat2, LaurentPoly};
use crate::groups::prime_factors;

pub use numeric::{numeric_action_check, NumericOptions, NumericRelation, NumericReport};
pub use regions::{emit_region_table, Region, RegionTable};

/// T_τ, M and Q_{τ,θ} over Q(μ_{d²}), with Q built from its two printed
/// factors and the prefactor 1/(4θ^{2d}).
#[derive(Debug, Clone, Serialize)]
pub struct GhysMatrices {
    pub d: u32,
    pub j: u32,
    pub conductor: u64,
    pub t: LaurentMat2,
    pub m: LaurentMat2,
    pub q: LaurentMat2,
    pub q_left: LaurentMat2,
    pub q_right: LaurentMat2,
    pub prefactor: LaurentPoly,
    #[serde(skip)]
    pub field: Arc<CyclotomicField>,
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GhysMatrices {
    pub fn root(&self, num: i64, den: u64) -> Result<Cyclotomic> {
        Cyclotomic::root_of_unity(&self.field, num, den)
    }

    pub fn constant(&self, c: Cyclotomic) -> LaurentPoly {
        LaurentPoly::constant(c)
    }

    pub fn var(&self, a: i64, b: i64) -> LaurentPoly {
        LaurentPoly::var(&self.field, a, b)
    }

    pub fn identity(&self) -> LaurentMat2 {
        LaurentMat2::identity(&self.field)
    }

    /// Q with its prefactor replaced by `c·θ^e`.
    pub fn q_with_prefactor(&self, c: &BigRational, e: i64) -> LaurentMat2 {
        let p = self.var(0, e).scale_rational(c);
        self.q_left.mul(&self.q_right).scale(&p)
    }
}

pub fn build_matrices(d: u32, j: u32) -> Result<GhysMatrices> {
    if d < 2 || j >= d {
        return Err(NawError::InvalidInput(format!("need d ≥ 2 and 0 ≤ j < d, got d={d}, j={j}")));
    }
    let conductor = d as u64 * d as u64;
    let field = CyclotomicField::new(conductor);
    let di = d as i64;
    let var = |a, b| LaurentPoly::var(&field, a, b);
    let one = LaurentPoly::one(&field);
    let t = LaurentMat2::diag(var(1, 0), var(-1, 0));
    let mu = Cyclotomic::root_of_unity(&field, 1, conductor)?;
    let mu_inv = Cyclotomic::root_of_unity(&field, -1, conductor)?;
    let m = LaurentMat2::diag(LaurentPoly::constant(mu), LaurentPoly::constant(mu_inv));
    let u = var(0, di);
    let (up, um) = (u.add(&one), u.sub(&one));
    let (td, tmd) = (var(di, 0), var(-di, 0));
    let q_left = LaurentMat2::new(td.mul(&up), um.clone(), td.mul(&um), up.clone());
    let q_right = LaurentMat2::new(up.clone(), tmd.mul(&um), um, tmd.mul(&up));
    let prefactor = var(0, -2 * di).scale_rational(&rational(1, 4));
    let q = q_left.mul(&q_right).scale(&prefactor);
    Ok(GhysMatrices { d, j, conductor, t, m, q, q_left, q_right, prefactor, field })
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationVerdict {
    pub name: String,
    pub pass: bool,
    /// Left side minus right side, when nonzero.
    pub difference: Option<LaurentMat2>,
}

fn compare(name: &str, lhs: LaurentMat2, rhs: LaurentMat2) -> RelationVerdict {
    let diff = lhs.sub(&rhs);
    let pass = diff.is_zero();
    RelationVerdict { name: name.to_string(), pass, difference: (!pass).then_some(diff) }
}

/// The five substitution identities, checked as exact matrix equalities.
pub fn verify_relations(g: &GhysMatrices) -> Result<Vec<RelationVerdict>> {
    let d = g.d as u64;
    let tau = g.var(1, 0);
    let theta = g.var(0, 1);
    let mu_d_tau = tau.scale(&g.root(1, d)?);
    let mu_d_theta = theta.scale(&g.root(1, d)?);
    let one = g.var(0, 0);
    let mu_2d = g.constant(g.root(1, 2 * d)?);
    let t_d = g.t.pow(d as i64).expect("T is invertible");
    let m_d = g.m.pow(d as i64).expect("M is invertible");
    Ok(vec![
        compare("Q(μ_d τ, θ) = Q(τ, θ)", g.q.substitute(&mu_d_tau, &theta)?, g.q.clone()),
        compare("Q(τ, μ_d θ) = Q(τ, θ)", g.q.substitute(&tau, &mu_d_theta)?, g.q.clone()),
        compare("Q(τ, 1) = T_τ^d", g.q.substitute(&tau, &one)?, t_d),
        compare("Q(τ, μ_2d) = 1", g.q.substitute(&tau, &mu_2d)?, g.identity()),
        compare("T(μ_d τ) = M^d T_τ", g.t.substitute(&mu_d_tau, &theta)?, m_d.mul(&g.t)),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitarityReport {
    pub det_t: LaurentPoly,
    pub det_m: LaurentPoly,
    pub det_q: LaurentPoly,
    pub det_t_is_one: bool,
    pub det_m_is_one: bool,
    pub det_q_is_one: bool,
    /// det Q = θ^{−2d}.
    pub det_q_is_theta_power: bool,
    pub t_unitary: bool,
    pub m_unitary: bool,
    /// Q*·Q = 1 on the unit torus.
    pub q_unitary: bool,
    pub m_order: u64,
    pub m_order_is_d_squared: bool,
    pub m_d_order_is_d: bool,
    /// With prefactor 1/(4θ^d) instead: det = 1, and Q(τ, μ_2d) = −1.
    pub alternative_det_is_one: bool,
    pub alternative_at_mu_2d_is_minus_one: bool,
    pub discrepancy: Option<String>,
}

fn mat_order(m: &LaurentMat2, bound: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

pub fn analyze_unitarity(g: &GhysMatrices) -> Result<UnitarityReport> {
    let d = g.d as u64;
    let det_t = g.t.det();
    let det_m = g.m.det();
    let det_q = g.q.det();
    let det_q_is_theta_power = det_q == g.var(0, -2 * g.d as i64);
    let unitary = |x: &LaurentMat2| x.star().mul(x).is_identity();
    let m_order = mat_order(&g.m, d * d).unwrap_or(0);
    let m_d = g.m.pow(d as i64).expect("M is invertible");
    let m_d_order_is_d = mat_order(&m_d, d) == Some(d);
    let m_order_is_d_squared =
        m_order == d * d && prime_factors(d * d).iter().all(|&p| !g.m.pow((d * d / p) as i64).unwrap().is_identity());
    let alt = g.q_with_prefactor(&rational(1, 4), -(g.d as i64));
    let alt_at = alt.substitute(&g.var(1, 0), &g.constant(g.root(1, 2 * d)?))?;
    let minus_one = g.identity().scale(&g.constant(Cyclotomic::from_int(&g.field, -1)));
    let det_q_is_one = det_q.is_one();
    let discrepancy = (!det_q_is_one).then(|| {
        format!("det Q = {det_q:?}, so Q is not special unitary; with prefactor 1/(4θ^d) the determinant is 1 but Q(τ, μ_2d) = −1")
    });
    Ok(UnitarityReport {
        det_t_is_one: det_t.is_one(),
        det_m_is_one: det_m.is_one(),
        det_q_is_one,
        det_q_is_theta_power,
        t_unitary: unitary(&g.t),
        m_unitary: unitary(&g.m),
        q_unitary: unitary(&g.q),
        m_order,
        m_order_is_d_squared,
        m_d_order_is_d,
        alternative_det_is_one: alt.det().is_one(),
        alternative_at_mu_2d_is_minus_one: alt_at == minus_one,
        discrepancy,
        det_t,
        det_m,
        det_q,
    })
}

/// Runs every exact and numeric check and packages the results.
pub fn emit_certificate(d: u32, j: u32, opts: &NumericOptions) -> Result<Certificate> {
    #[derive(Serialize)]
    struct Inputs {
        d: u32,
        j: u32,
        samples: usize,
        tol: f64,
    }
    let mut cert = Certificate::new("ghys", Inputs { d, j, samples: opts.samples, tol: opts.tol }, opts.seed);
    let g = build_matrices(d, j)?;
    let relations = verify_relations(&g)?;
    for r in &relations {
        cert.check(format!("relation {}", r.name), r.pass, &r.difference);
    }
    let u = analyze_unitarity(&g)?;
    cert.check("det T = det M = 1", u.det_t_is_one && u.det_m_is_one, (&u.det_t, &u.det_m));
    cert.check("M has order d²", u.m_order_is_d_squared, u.m_order);
    cert.check("M^d has order d", u.m_d_order_is_d, d);
    let status = if u.det_q_is_one && u.q_unitary { Status::Pass } else { Status::Inconclusive };
    cert.push("Q is special unitary", status, &u.discrepancy);
    let table = emit_region_table(&g)?;
    cert.check("regions partition [0, 2π)", table.partition_ok, table.bounds());
    let numeric = numeric_action_check(&g, &table, opts)?;
    for r in &numeric.relations {
        let status = if r.pass { Status::Pass } else { Status::Inconclusive };
        if r.name.ends_with("(diagnostic)") {
            cert.artifact("beta_power_diagnostic", r);
            continue;
        }
        cert.push(format!("numeric {}", r.name), status, r.max_deviation);
    }
    cert.artifact("matrices", &g);
    cert.artifact("unitarity", &u);
    cert.artifact("region_table", &table);
    cert.artifact("numeric", &numeric);
    Ok(cert)
}
