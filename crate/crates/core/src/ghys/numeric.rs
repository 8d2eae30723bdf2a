use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::{GhysMatrices, RegionTable};
use crate::error::{NawError, Result};

type Mat = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NumericOptions {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { samples: 100, tol: 1e-9, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericRelation {
    pub name: String,
    pub max_deviation: f64,
    /// Sample index attaining the maximum.
    pub worst_sample: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub d: u32,
    pub j: u32,
    pub samples: usize,
    pub boundary_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub relations: Vec<NumericRelation>,
    /// Largest |det − 1| of A, B, C over the visited points.
    pub max_det_defect: f64,
    /// Largest entry of X*X − 1 over the visited A, B, C.
    pub max_unitarity_defect: f64,
}

/// A point (τ, θ, S) with τ and θ stored as angles in turns, in [0, 1).
#[derive(Debug, Clone, Copy)]
struct Point {
    tau: f64,
    theta: f64,
    s: Mat,
}

fn turn(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if (1.0 - r).abs() < 1e-12 {
        0.0
    } else {
        r
    }
}

fn circle(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn turn_dist(a: f64, b: f64) -> f64 {
    let x = (a - b).rem_euclid(1.0);
    x.min(1.0 - x) * 2.0 * std::f64::consts::PI
}

fn deviation(p: &Point, q: &Point) -> f64 {
    let mut m = turn_dist(p.tau, q.tau).max(turn_dist(p.theta, q.theta));
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((p.s[i][j] - q.s[i][j]).norm());
        }
    }
    m
}

/// Haar-random element of SU(2) from a normalised Gaussian 4-vector.
fn random_su2(rng: &mut ChaCha8Rng) -> Mat {
    let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = Complex64::new(v[0] / n, v[1] / n);
    let b = Complex64::new(v[2] / n, v[3] / n);
    [[a, -b.conj()], [b, a.conj()]]
}

struct Action<'a> {
    g: &'a GhysMatrices,
    table: &'a RegionTable,
    max_det_defect: f64,
    max_unitarity_defect: f64,
}

#[derive(Clone, Copy)]
enum Gen {
    Alpha,
    Beta,
    Gamma,
}

impl Action<'_> {
    /// Region of arg(θ), snapping values within 1e−9 of a boundary onto it.
    fn region(&self, theta: f64) -> usize {
        let k = theta * 2.0 * self.g.d as f64;
        let r = k.round();
        self.table.region_of(if (k - r).abs() < 1e-9 { r } else { k })
    }

    fn apply(&mut self, gen: Gen, p: Point) -> Point {
        let reg = &self.table.regions[self.region(p.theta)];
        let (tau, theta) = (circle(p.tau), circle(p.theta));
        let (m, next) = match gen {
            Gen::Alpha => (reg.a.eval(tau, theta), Point { tau: turn(p.tau + 1.0 / self.g.d as f64), ..p }),
            Gen::Beta => (reg.b.eval(tau, theta), Point { theta: turn(p.theta + 1.0 / self.g.d as f64), ..p }),
            Gen::Gamma => (reg.c.eval(tau, theta), p),
        };
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        self.max_det_defect = self.max_det_defect.max((det - 1.0).norm());
        let mut mm = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                mm[i][j] = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            }
        }
        let defect = (mm[0][0] - 1.0).norm().max((mm[1][1] - 1.0).norm()).max(mm[0][1].norm()).max(mm[1][0].norm());
        self.max_unitarity_defect = self.max_unitarity_defect.max(defect);
        Point { s: mat_mul(&m, &p.s), ..next }
    }

    /// Applies a word right to left, as composition of maps.
    fn word(&mut self, w: &[Gen], p: Point) -> Point {
        w.iter().rev().fold(p, |acc, &g| self.apply(g, acc))
    }
}

/// Evaluates the three piecewise maps on random and boundary points and
/// measures how far each defining relation of E(d, j) is from holding.
pub fn numeric_action_check(g: &GhysMatrices, table: &RegionTable, opts: &NumericOptions) -> Result<NumericReport> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(NawError::InvalidInput("tolerance must be positive".into()));
    }
    let d = g.d as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = Vec::with_capacity(opts.samples + 4);
    for _ in 0..opts.samples {
        points.push(Point { tau: rng.gen(), theta: rng.gen(), s: random_su2(&mut rng) });
    }
    for b in 0..4 {
        points.push(Point { tau: rng.gen(), theta: b as f64 / (2 * d) as f64, s: random_su2(&mut rng) });
    }
    use Gen::*;
    let pow = |x: Gen, k: usize| vec![x; k];
    let relations: Vec<(&str, Vec<Gen>, Vec<Gen>)> = vec![
        ("α^d = γ^j", pow(Alpha, d), pow(Gamma, g.j as usize)),
        ("β^d = γ^j", pow(Beta, d), pow(Gamma, g.j as usize)),
        ("γ^d = 1", pow(Gamma, d), vec![]),
        ("αγ = γα", vec![Alpha, Gamma], vec![Gamma, Alpha]),
        ("βγ = γβ", vec![Beta, Gamma], vec![Gamma, Beta]),
        ("αβ = βαγ", vec![Alpha, Beta], vec![Beta, Alpha, Gamma]),
        // Not a defining relation: what the printed B column yields for every j.
        ("β^d = γ (diagnostic)", pow(Beta, d), vec![Gamma]),
    ];
    let mut act = Action { g, table, max_det_defect: 0.0, max_unitarity_defect: 0.0 };
    let mut out = Vec::new();
    for (name, lhs, rhs) in relations {
        let (mut worst, mut at) = (0.0f64, 0);
        for (i, &p) in points.iter().enumerate() {
            let dev = deviation(&act.word(&lhs, p), &act.word(&rhs, p));
            if dev > worst || dev.is_nan() {
                worst = dev;
                at = i;
            }
        }
        out.push(NumericRelation {
            name: name.to_string(),
            max_deviation: worst,
            worst_sample: at,
            pass: worst <= opts.tol,
        });
    }
    Ok(NumericReport {
        d: g.d,
        j: g.j,
        samples: opts.samples,
        boundary_samples: 4,
        seed: opts.seed,
        tol: opts.tol,
        relations: out,
        max_det_defect: act.max_det_defect,
        max_unitarity_defect: act.max_unitarity_defect,
    })
}
