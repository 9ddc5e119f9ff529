//! Grid certification of the analytic inequalities behind the push-off:
//! positivity of the contact condition for the pulled-back form, the framing
//! homotopy `F_h = (1−h)F₀ + hF₁` avoiding the tangent spaces of the
//! intermediate push-off, and non-tangency of `F₁` along `B⁺`.
//!
//! All profiles are closed-form functions built from the flat function
//! `ψ(x) = e^{−1/x}`. Certification is dense sampling with a tolerance, not
//! interval arithmetic. A grid whose step exceeds one sixteenth of the
//! smallest gap between `0, ε₁, ε₂, ε₃, c` is refused.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default tolerance for every check.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Grid steps may not exceed this fraction of the smallest profile gap.
pub const GRID_FRACTION: f64 = 1.0 / 16.0;

/// Real function of one variable with its derivative.
pub trait Profile1D: Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn deriv(&self, x: f64) -> f64;
}

struct FnProfile<F, G> {
    f: F,
    df: G,
}

impl<F, G> Profile1D for FnProfile<F, G>
where
    F: Fn(f64) -> f64 + Send + Sync,
    G: Fn(f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }
}

pub type Func = Arc<dyn Profile1D>;

/// Wraps a value/derivative pair of closures.
pub fn func<F, G>(f: F, df: G) -> Func
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    G: Fn(f64) -> f64 + Send + Sync + 'static,
{
    Arc::new(FnProfile { f, df })
}

fn psi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

fn dpsi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        psi(x) / (x * x)
    }
}

/// Smooth step: 0 for `x ≤ 0`, 1 for `x ≥ 1`, flat at both ends.
pub fn smooth_step(x: f64) -> f64 {
    let (a, b) = (psi(x), psi(1.0 - x));
    a / (a + b)
}

pub fn smooth_step_deriv(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let (a, b) = (psi(x), psi(1.0 - x));
    let (da, db) = (dpsi(x), -dpsi(1.0 - x));
    (da * b - a * db) / ((a + b) * (a + b))
}

/// Step rising from 0 at `lo` to 1 at `hi`.
fn ramp(lo: f64, hi: f64) -> Func {
    let w = hi - lo;
    func(move |x| smooth_step((x - lo) / w), move |x| smooth_step_deriv((x - lo) / w) / w)
}

/// Radial pair `(h₁, h₂)` defining `h₁α_B + h₂dθ` near a binding.
#[derive(Clone)]
pub struct LutzPair {
    pub h1: Func,
    pub h2: Func,
    pub r_max: f64,
}

impl std::fmt::Debug for LutzPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LutzPair {{ r_max: {} }}", self.r_max)
    }
}

/// `h₁ = 1 − κe^{−1/r²}` with `κ = ½` and `h₂ = r²`.
pub fn default_lutz_pair() -> LutzPair {
    const KAPPA: f64 = 0.5;
    let flat = |r: f64| if r <= 0.0 { 0.0 } else { (-1.0 / (r * r)).exp() };
    LutzPair {
        h1: func(
            move |r| 1.0 - KAPPA * flat(r),
            move |r| if r <= 0.0 { 0.0 } else { -KAPPA * flat(r) * 2.0 / (r * r * r) },
        ),
        h2: func(|r| r * r, |r| 2.0 * r),
        r_max: 1.5,
    }
}

impl LutzPair {
    /// `h₁h₂′ − h₁′h₂`.
    pub fn wronskian(&self, r: f64) -> f64 {
        self.h1.value(r) * self.h2.deriv(r) - self.h1.deriv(r) * self.h2.value(r)
    }

    /// Grid check of the defining conditions: `h₁(0) = 1`, `h₁ > 0`,
    /// `h₁′ ≤ 0` (and `< 0` where representable), derivatives of `h₁` decaying
    /// faster than `r⁴` at 0, `h₂ ≥ 0`, `h₂′ ≥ 0`, `h₂/r²` bounded away from 0
    /// and ∞ near 0, and a positive Wronskian on `(0, r_max]`.
    pub fn validate(&self, points: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidProfile(m));
        if (self.h1.value(0.0) - 1.0).abs() > 1e-12 {
            return bad(format!("h1(0) = {}", self.h1.value(0.0)));
        }
        let points = points.max(100);
        for k in 1..=points {
            let r = self.r_max * k as f64 / points as f64;
            if self.h1.value(r) <= 0.0 {
                return bad(format!("h1({r}) <= 0"));
            }
            if self.h1.deriv(r) > 0.0 || (r >= 0.1 * self.r_max && self.h1.deriv(r) >= 0.0) {
                return bad(format!("h1'({r}) = {} is not negative", self.h1.deriv(r)));
            }
            if self.h2.value(r) < 0.0 || self.h2.deriv(r) < 0.0 {
                return bad(format!("h2 decreases or is negative at {r}"));
            }
            if self.wronskian(r) <= 0.0 {
                return bad(format!("Wronskian {} at {r}", self.wronskian(r)));
            }
        }
        for r in [1e-3, 1e-2, 5e-2] {
            let q = self.h2.value(r) / (r * r);
            if !(0.1..10.0).contains(&q) {
                return bad(format!("h2(r)/r^2 = {q} at r = {r}"));
            }
            if self.h1.deriv(r).abs() > r.powi(4) {
                return bad(format!("h1 is not flat at 0: h1'({r}) = {}", self.h1.deriv(r)));
            }
        }
        Ok(())
    }
}

/// Profile functions of the push-off and the cutoffs of its framing.
#[derive(Clone)]
pub struct PushOffProfile {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub c: f64,
    pub r_max: f64,
    /// Width of the transition regions of `ũ` and of `u`.
    pub eps_u: f64,
    /// `f ≡ 0` on `[0, ε₁]`, increasing, `f(r′) = r′` from `ε₃` on.
    pub f: Func,
    /// `h(0) = 0`, strictly increasing on `[0, ε₂]`, `h ≡ c` from `ε₂` on.
    pub h: Func,
    /// Chinese-burn cutoff: 0 near 0, 1 at `c`, 0 from `c + ε_u` on.
    pub u: Func,
    /// Framing cutoff `ũ(r′, r)`.
    pub u_tilde: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for PushOffProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PushOffProfile {{ eps1: {}, eps2: {}, eps3: {}, c: {}, r_max: {} }}",
            self.eps1, self.eps2, self.eps3, self.c, self.r_max
        )
    }
}

impl Default for PushOffProfile {
    fn default() -> Self {
        PushOffProfile::new(0.2, 0.4, 0.6, 0.8, 1.2).expect("default constants are ordered")
    }
}

impl PushOffProfile {
    /// Profile for `0 < ε₁ < ε₂ < ε₃ < c < r_max`.
    ///
    /// `f` rises on `(ε₁, ε₃)`, so both `f` and `f′` are positive wherever
    /// `h ≡ c`; `h` rises on `[0, ε₂]` with `h′(0) = c/ε₂`.
    pub fn new(eps1: f64, eps2: f64, eps3: f64, c: f64, r_max: f64) -> Result<Self> {
        if !(0.0 < eps1 && eps1 < eps2 && eps2 < eps3 && eps3 < c && c < r_max) {
            return Err(Error::InvalidProfile(format!(
                "need 0 < eps1 < eps2 < eps3 < c < r_max, got {eps1}, {eps2}, {eps3}, {c}, {r_max}"
            )));
        }
        let gap = eps1.min(eps2 - eps1).min(eps3 - eps2).min(c - eps3);
        let eps_u = (gap / 2.0).min(0.1);
        let step = ramp(eps1, eps3);
        let step_d = step.clone();
        let f = func(move |r| r * step.value(r), move |r| step_d.value(r) + r * step_d.deriv(r));
        let h = func(
            move |r| {
                let y = 1.0 - r / eps2;
                if y <= 0.0 {
                    c
                } else {
                    c * (1.0 - y * smooth_step(y))
                }
            },
            move |r| {
                let y = 1.0 - r / eps2;
                if y <= 0.0 {
                    0.0
                } else {
                    c / eps2 * (smooth_step(y) + y * smooth_step_deriv(y))
                }
            },
        );
        let w = c / 2.0;
        let up = ramp(c - w, c);
        let down = ramp(c, c + eps_u);
        let (up_d, down_d) = (up.clone(), down.clone());
        let u = func(
            move |r| up.value(r) * (1.0 - down.value(r)),
            move |r| up_d.deriv(r) * (1.0 - down_d.value(r)) - up_d.value(r) * down_d.deriv(r),
        );
        let a = ramp(eps_u / 2.0, eps_u);
        let rc = ramp(c - eps_u, c);
        let rout = ramp(c, c + eps_u);
        let u_tilde = Arc::new(move |rp: f64, r: f64| {
            1.0 - (1.0 - a.value(rp) * rc.value(r)) * (1.0 - rout.value(r))
        });
        Ok(PushOffProfile { eps1, eps2, eps3, c, r_max, eps_u, f, h, u, u_tilde })
    }

    fn check_constants(&self) -> Result<()> {
        let (e1, e2, e3, c) = (self.eps1, self.eps2, self.eps3, self.c);
        if !(0.0 < e1 && e1 < e2 && e2 < e3 && e3 < c && c < self.r_max) {
            return Err(Error::InvalidProfile(format!(
                "need 0 < eps1 < eps2 < eps3 < c < r_max, got {e1}, {e2}, {e3}, {c}, {}",
                self.r_max
            )));
        }
        Ok(())
    }

    /// Smallest gap between consecutive profile constants.
    pub fn min_spacing(&self) -> f64 {
        self.eps1.min(self.eps2 - self.eps1).min(self.eps3 - self.eps2).min(self.c - self.eps3)
    }

    /// Largest admissible grid step.
    pub fn max_step(&self) -> f64 {
        self.min_spacing() * GRID_FRACTION
    }

    /// Grid check of the qualitative shape of `f`, `h`, `u` and `ũ`.
    pub fn validate(&self, points: usize) -> Result<()> {
        self.check_constants()?;
        let bad = |m: String| Err(Error::InvalidProfile(m));
        let points = points.max(100);
        let mut prev_f = 0.0;
        for k in 0..=points {
            let r = self.r_max * k as f64 / points as f64;
            let (f, h) = (self.f.value(r), self.h.value(r));
            if r <= self.eps1 && f != 0.0 {
                return bad(format!("f({r}) = {f} on [0, eps1]"));
            }
            if r >= self.eps3 && (f - r).abs() > 1e-12 {
                return bad(format!("f({r}) = {f} beyond eps3"));
            }
            if f < prev_f {
                return bad(format!("f decreases at {r}"));
            }
            prev_f = f;
            let dh = self.h.deriv(r);
            if r < self.eps2 && (dh < 0.0 || (r <= 0.9 * self.eps2 && dh <= 0.0)) {
                return bad(format!("h'({r}) = {dh} on [0, eps2)"));
            }
            if r >= self.eps2 && (h - self.c).abs() > 1e-12 {
                return bad(format!("h({r}) = {h} beyond eps2"));
            }
        }
        if self.h.value(0.0) != 0.0 {
            return bad("h(0) != 0".into());
        }
        if (self.u.value(self.c) - 1.0).abs() > 1e-12
            || self.u.value(0.1 * self.c) != 0.0
            || self.u.value(self.c + self.eps_u) != 0.0
        {
            return bad("u is not a bump around c".into());
        }
        let ut = &self.u_tilde;
        for k in 0..=points {
            let s = self.r_max * k as f64 / points as f64;
            if ut(s, 0.0) != 0.0 || ut(s.min(self.eps_u / 2.0), self.c - self.eps_u) != 0.0 {
                return bad(format!("u~ is not 0 near the binding at r' = {s}"));
            }
            if ut(s, self.c + self.eps_u) != 1.0 || (s >= self.eps_u && (ut(s, self.c) - 1.0).abs() > 1e-12) {
                return bad(format!("u~ is not 1 where required at r' = {s}"));
            }
        }
        Ok(())
    }
}

/// Named auxiliary check attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub location: Vec<(String, f64)>,
    pub pass: bool,
}

/// Minima of the three summands of `λμ′ − λ′μ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermMinima {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Outcome of a grid certification. `pass` is exactly `min > tolerance`;
/// the auxiliary checks are reported alongside and combined by
/// [`PositivityReport::all_pass`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub name: String,
    pub grid: String,
    pub points: usize,
    pub min: f64,
    pub argmin: Vec<(String, f64)>,
    pub terms: Option<TermMinima>,
    pub tolerance: f64,
    pub pass: bool,
    pub margin: f64,
    pub checks: Vec<Check>,
}

impl PositivityReport {
    pub fn all_pass(&self) -> bool {
        self.pass && self.checks.iter().all(|c| c.pass)
    }

    fn new(name: &str, grid: String, points: usize, min: f64, argmin: Vec<(String, f64)>, tol: f64) -> Self {
        PositivityReport {
            name: name.to_string(),
            grid,
            points,
            min,
            argmin,
            terms: None,
            tolerance: tol,
            pass: min > tol,
            margin: min - tol,
            checks: Vec::new(),
        }
    }
}

fn loc(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Value and derivative of `φ ∘ g` given `g`, `g′`.
fn compose(phi: &Func, g: f64, dg: f64) -> (f64, f64) {
    (phi.value(g), phi.deriv(g) * dg)
}

/// Terms of the contact condition at one `r′`.
struct ContactSample {
    value: f64,
    a: f64,
    b: f64,
    c: f64,
    reduction: f64,
}

fn contact_sample(amb: &LutzPair, bind: &LutzPair, p: &PushOffProfile, rp: f64) -> ContactSample {
    let (f, df) = (p.f.value(rp), p.f.deriv(rp));
    let (h, dh) = (p.h.value(rp), p.h.deriv(rp));
    let (h1, dh1) = compose(&amb.h1, h, dh);
    let (h2, dh2) = compose(&amb.h2, h, dh);
    let (g1, dg1) = compose(&bind.h1, f, df);
    let (g2, dg2) = compose(&bind.h2, f, df);
    let lambda = h1 * g1;
    let dlambda = dh1 * g1 + h1 * dg1;
    let mu = h1 * g2 + h2;
    let dmu = dh1 * g2 + h1 * dg2 + dh2;
    ContactSample {
        value: lambda * dmu - dlambda * mu,
        a: h1 * h1 * (g1 * dg2 - dg1 * g2),
        b: h1 * (dh2 * g1 - dg1 * h2),
        c: -dh1 * g1 * h2,
        reduction: dh * amb.wronskian(h),
    }
}

/// Certifies `λμ′ − λ′μ > 0` on `r′_k = k·r_max/grid`, `k = 1..grid`, for the
/// push-off of a binding with Lutz pair `binding` inside an ambient book
/// with Lutz pair `ambient`. At `r′ = 0` the quantity vanishes identically
/// (the volume form carries a factor `1/r′`), so the grid starts at the
/// first positive sample and the normalized value `(λμ′ − λ′μ)/r′` is
/// reported as well.
pub fn verify_pushoff_contact(
    ambient: &LutzPair,
    binding: &LutzPair,
    prof: &PushOffProfile,
    n: u32,
    grid: usize,
    tol: f64,
) -> Result<PositivityReport> {
    prof.check_constants()?;
    if grid == 0 {
        return Err(Error::GridTooCoarse { step: f64::INFINITY, allowed: prof.max_step() });
    }
    let step = prof.r_max / grid as f64;
    if step > prof.max_step() {
        return Err(Error::GridTooCoarse { step, allowed: prof.max_step() });
    }
    let samples: Vec<(f64, ContactSample)> = (1..=grid)
        .into_par_iter()
        .map(|k| {
            let rp = k as f64 * step;
            (rp, contact_sample(ambient, binding, prof, rp))
        })
        .collect();

    let mut min = f64::INFINITY;
    let mut arg = 0.0;
    let mut norm_min = f64::INFINITY;
    let mut norm_arg = 0.0;
    let mut terms = TermMinima { a: f64::INFINITY, b: f64::INFINITY, c: f64::INFINITY };
    let mut max_min = f64::INFINITY;
    let mut max_arg = 0.0;
    let mut all_nonneg = true;
    let mut red_err: f64 = 0.0;
    let mut red_arg = 0.0;
    for (rp, s) in &samples {
        if s.value < min {
            min = s.value;
            arg = *rp;
        }
        if s.value / rp < norm_min {
            norm_min = s.value / rp;
            norm_arg = *rp;
        }
        terms.a = terms.a.min(s.a);
        terms.b = terms.b.min(s.b);
        terms.c = terms.c.min(s.c);
        all_nonneg &= s.a.min(s.b).min(s.c) >= -tol;
        let largest = s.a.max(s.b).max(s.c);
        if largest < max_min {
            max_min = largest;
            max_arg = *rp;
        }
        if *rp <= prof.eps1 {
            let err = (s.value - s.reduction).abs() / s.value.abs().max(1.0);
            if err > red_err {
                red_err = err;
                red_arg = *rp;
            }
        }
    }
    let mut report = PositivityReport::new(
        "contact",
        format!("r' = k*{}/{grid}, k = 1..{grid}", prof.r_max),
        grid,
        min,
        loc(&[("r'", arg)]),
        tol,
    );
    report.terms = Some(terms);
    report.checks.push(Check {
        name: "normalized (lambda mu' - lambda' mu)/r'".into(),
        value: norm_min,
        location: loc(&[("r'", norm_arg)]),
        pass: norm_min > tol,
    });
    report.checks.push(Check {
        name: "A, B, C >= -tol everywhere; min over grid of max(A, B, C) > tol".into(),
        value: max_min,
        location: loc(&[("r'", max_arg)]),
        pass: all_nonneg && max_min > tol,
    });
    report.checks.push(Check {
        name: "r' <= eps1 reduction to h' (h1 h2' - h1' h2)(h)".into(),
        value: red_err,
        location: loc(&[("r'", red_arg)]),
        pass: red_err <= tol,
    });
    let h1c = ambient.h1.value(prof.c);
    let h2c = ambient.h2.value(prof.c);
    let away = h1c.powi(n as i32).min(h1c.powi(n as i32 - 1) * h2c);
    report.checks.push(Check {
        name: format!("away from binding: h1(c)^{n} > 0 and h1(c)^{} h2(c) > 0", n - 1),
        value: away,
        location: loc(&[("r", prof.c)]),
        pass: away > tol,
    });
    Ok(report)
}

/// Sample counts of the framing homotopy grid. `theta` must be a multiple of
/// 4 and `t` odd, so that `θ ∈ {0, π/2, π, 3π/2}` and `t = ½` are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FramingGrid {
    pub theta: usize,
    pub t: usize,
    pub h: usize,
    pub r: usize,
    pub rp: usize,
    pub r_min: f64,
}

impl Default for FramingGrid {
    fn default() -> Self {
        FramingGrid { theta: 32, t: 9, h: 9, r: 8, rp: 8, r_min: 0.05 }
    }
}

impl FramingGrid {
    pub fn points(&self) -> usize {
        self.theta * self.t * self.h * self.r * self.rp
    }

    /// Smallest default-shaped grid with at least `n` points.
    pub fn with_at_least(n: usize) -> Self {
        let mut g = FramingGrid::default();
        while g.points() < n {
            g.theta += 4;
            g.r += 1;
            g.rp += 1;
        }
        g
    }

    fn check(&self) -> Result<()> {
        let theta_step = 2.0 * PI / self.theta.max(1) as f64;
        let theta_allowed = 2.0 * PI / 16.0;
        if self.theta < 16 || self.theta % 4 != 0 {
            return Err(Error::GridTooCoarse { step: theta_step, allowed: theta_allowed });
        }
        if self.t < 3 || self.t % 2 == 0 {
            return Err(Error::GridTooCoarse { step: 1.0 / (self.t.max(2) - 1) as f64, allowed: 0.5 });
        }
        if self.h < 2 || self.r < 2 || self.rp < 2 || self.r_min <= 0.0 {
            return Err(Error::GridTooCoarse { step: 1.0, allowed: 0.5 });
        }
        Ok(())
    }
}

fn lin(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    lo + (hi - lo) * k as f64 / (n - 1) as f64
}

/// `F_h` on the intermediate push-off in the basis `∂_r, ∂_{r′}, ∂_θ, ∂_{θ′}`.
pub fn framing_vector(theta: f64, t: f64, h: f64, r: f64, rp: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    let k = 1.0 - t + t * s * s;
    [(1.0 - h + h * t) * c, -k * h * c, -(1.0 - h) * s / r, k * h * s / rp]
}

/// Distance from `v` to the tangent forms: `(0,a,b,b)` for `t ≥ ½` and
/// `(a,a,b,b)` for `t ≤ ½`; at `t = ½` the smaller of the two.
pub fn tangency_distance(v: [f64; 4], t: f64) -> f64 {
    let d34 = (v[2] - v[3]) * (v[2] - v[3]) / 2.0;
    let d1 = (v[0] * v[0] + d34).sqrt();
    let d2 = ((v[0] - v[1]) * (v[0] - v[1]) / 2.0 + d34).sqrt();
    if t > 0.5 {
        d1
    } else if t < 0.5 {
        d2
    } else {
        d1.min(d2)
    }
}

/// Certifies that `F_h` stays away from the tangent spaces of the
/// intermediate push-off over `θ ∈ [0, 2π)`, `t, h ∈ [0, 1]` and
/// `r, r′ ∈ [r_min, r_max]`.
pub fn verify_framing_homotopy(prof: &PushOffProfile, grid: &FramingGrid, tol: f64) -> Result<PositivityReport> {
    prof.check_constants()?;
    grid.check()?;
    let g = *grid;
    let r_max = prof.r_max;
    let theta_at = |k: usize| 2.0 * PI * k as f64 / g.theta as f64;
    let best = (0..g.theta)
        .into_par_iter()
        .map(|i| {
            let theta = theta_at(i);
            let mut best = (f64::INFINITY, [0.0; 5]);
            for it in 0..g.t {
                let t = lin(0.0, 1.0, g.t, it);
                for ih in 0..g.h {
                    let h = lin(0.0, 1.0, g.h, ih);
                    for ir in 0..g.r {
                        let r = lin(g.r_min, r_max, g.r, ir);
                        for irp in 0..g.rp {
                            let rp = lin(g.r_min, r_max, g.rp, irp);
                            let d = tangency_distance(framing_vector(theta, t, h, r, rp), t);
                            if d < best.0 {
                                best = (d, [theta, t, h, r, rp]);
                            }
                        }
                    }
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, [0.0; 5]), |a, b| if b.0 < a.0 { b } else { a });
    let names = ["theta", "t", "h", "r", "r'"];
    let argmin: Vec<(String, f64)> = names.iter().zip(best.1).map(|(n, v)| (n.to_string(), v)).collect();
    let mut report = PositivityReport::new(
        "framing",
        format!(
            "theta {} x t {} x h {} x r {} x r' {} on [{}, {}]",
            g.theta, g.t, g.h, g.r, g.rp, g.r_min, r_max
        ),
        g.points(),
        best.0,
        argmin,
        tol,
    );

    // θ = π/2, 3π/2 with t ≥ ½: obstruction (1/r)(1−h) + (1/r′)h
    let mut ob = (f64::INFINITY, vec![]);
    // sinθ = 0 with t ≤ ½: (1−h+ht) + h(1−t+t sin²θ) must equal 1
    let mut br = (f64::INFINITY, vec![]);
    let mut br_dev: f64 = 0.0;
    // cosθ ≠ 0 with t ≥ ½: 1 − h + ht > 0
    let mut lead = (f64::INFINITY, vec![]);
    // h = 0 reproduces F₀ = cosθ ∂_r − (1/r) sinθ ∂_θ
    let mut f0_err: f64 = 0.0;
    let mut f0_min = (f64::INFINITY, vec![]);
    for i in 0..g.theta {
        let theta = theta_at(i);
        let quarter = i * 4 / g.theta;
        let exact_quarter = (i * 4) % g.theta == 0;
        let (s, c) = theta.sin_cos();
        for it in 0..g.t {
            let t = lin(0.0, 1.0, g.t, it);
            for ih in 0..g.h {
                let h = lin(0.0, 1.0, g.h, ih);
                if t >= 0.5 && !(exact_quarter && quarter % 2 == 1) {
                    let v = 1.0 - h + h * t;
                    if v < lead.0 {
                        lead = (v, loc(&[("theta", theta), ("t", t), ("h", h)]));
                    }
                }
                for ir in 0..g.r {
                    let r = lin(g.r_min, r_max, g.r, ir);
                    for irp in 0..g.rp {
                        let rp = lin(g.r_min, r_max, g.rp, irp);
                        if exact_quarter && quarter % 2 == 1 && t >= 0.5 {
                            let v = (1.0 - h) / r + h / rp;
                            if v < ob.0 {
                                ob = (v, loc(&[("theta", theta), ("t", t), ("h", h), ("r", r), ("r'", rp)]));
                            }
                        }
                        if ih == 0 {
                            let v = framing_vector(theta, t, 0.0, r, rp);
                            let f0 = [c, 0.0, -s / r, 0.0];
                            let err = v.iter().zip(f0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                            f0_err = f0_err.max(err);
                            let d = tangency_distance(v, t);
                            if d < f0_min.0 {
                                f0_min = (d, loc(&[("theta", theta), ("t", t), ("r", r), ("r'", rp)]));
                            }
                        }
                    }
                }
                if exact_quarter && quarter % 2 == 0 && t <= 0.5 {
                    let v = (1.0 - h + h * t) + h * (1.0 - t + t * s * s);
                    br_dev = br_dev.max((v - 1.0).abs());
                    if v.abs() < br.0 {
                        br = (v.abs(), loc(&[("theta", theta), ("t", t), ("h", h)]));
                    }
                }
            }
        }
    }
    report.checks.push(Check {
        name: "theta = pi/2, t >= 1/2: (1/r)(1-h) + (1/r')h > 0".into(),
        value: ob.0,
        location: ob.1,
        pass: ob.0 > tol,
    });
    report.checks.push(Check {
        name: "sin(theta) = 0, t <= 1/2: (1-h+ht) + h(1-t+t sin^2) = 1, never 0".into(),
        value: br.0,
        location: br.1,
        pass: br.0 > tol && br_dev < 1e-12,
    });
    report.checks.push(Check {
        name: "cos(theta) != 0, t >= 1/2: 1 - h + ht > 0".into(),
        value: lead.0,
        location: lead.1,
        pass: lead.0 > tol,
    });
    report.checks.push(Check {
        name: "h = 0 gives F0 = cos(theta) d_r - (1/r) sin(theta) d_theta, never tangent".into(),
        value: f0_min.0,
        location: f0_min.1,
        pass: f0_min.0 > tol && f0_err < 1e-12,
    });
    Ok(report)
}

/// Distance from `v` to the span of `a` and `b` in ℝ⁴.
fn distance_to_span(v: [f64; 4], a: [f64; 4], b: [f64; 4]) -> f64 {
    let dot = |x: &[f64; 4], y: &[f64; 4]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let na = dot(&a, &a).sqrt();
    let mut w = v;
    let mut e1 = [0.0; 4];
    if na > 1e-300 {
        e1 = a.map(|x| x / na);
        let p = dot(&w, &e1);
        for i in 0..4 {
            w[i] -= p * e1[i];
        }
    }
    let mut bb = b;
    let p = dot(&bb, &e1);
    for i in 0..4 {
        bb[i] -= p * e1[i];
    }
    let nb = dot(&bb, &bb).sqrt();
    if nb > 1e-300 {
        let e2 = bb.map(|x| x / nb);
        let p = dot(&w, &e2);
        for i in 0..4 {
            w[i] -= p * e2[i];
        }
    }
    dot(&w, &w).sqrt()
}

/// `F₁` in Cartesian coordinates `(x′, y′, x, y)`.
pub fn f1_vector(u_tilde: f64, theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [-(1.0 - u_tilde) - u_tilde * s * s, 0.0, u_tilde * c * c, u_tilde * c * s]
}

/// Certifies that `F₁` is nowhere tangent to the collar part of `B⁺`,
/// parametrized by `s ∈ (0, r_max]` and `θ`, with tangent vectors
/// `∂_s g = (f′cosθ, f′sinθ, h′cosθ, h′sinθ)` and
/// `∂_θ g = (−f sinθ, f cosθ, −h sinθ, h cosθ)`.
pub fn verify_f1_nontangent(prof: &PushOffProfile, s_points: usize, theta_points: usize, tol: f64) -> Result<PositivityReport> {
    prof.check_constants()?;
    if s_points == 0 {
        return Err(Error::GridTooCoarse { step: f64::INFINITY, allowed: prof.max_step() });
    }
    let step = prof.r_max / s_points as f64;
    if step > prof.max_step() {
        return Err(Error::GridTooCoarse { step, allowed: prof.max_step() });
    }
    if theta_points < 16 || theta_points % 4 != 0 {
        return Err(Error::GridTooCoarse {
            step: 2.0 * PI / theta_points.max(1) as f64,
            allowed: 2.0 * PI / 16.0,
        });
    }
    let sample = |k: usize, j: usize| {
        let s = k as f64 * step;
        let theta = 2.0 * PI * j as f64 / theta_points as f64;
        let (f, df) = (prof.f.value(s), prof.f.deriv(s));
        let (h, dh) = (prof.h.value(s), prof.h.deriv(s));
        let (sn, cs) = theta.sin_cos();
        let ut = (prof.u_tilde)(f, h);
        let v = f1_vector(ut, theta);
        let d = distance_to_span(v, [df * cs, df * sn, dh * cs, dh * sn], [-f * sn, f * cs, -h * sn, h * cs]);
        (d, s, theta, ut)
    };
    let best = (1..=s_points)
        .into_par_iter()
        .map(|k| {
            (0..theta_points)
                .map(|j| sample(k, j))
                .fold((f64::INFINITY, 0.0, 0.0, 0.0), |a, b| if b.0 < a.0 { b } else { a })
        })
        .reduce(|| (f64::INFINITY, 0.0, 0.0, 0.0), |a, b| if b.0 < a.0 { b } else { a });
    let mut report = PositivityReport::new(
        "f1",
        format!("s = k*{}/{s_points}, k = 1..{s_points} x theta {theta_points}", prof.r_max),
        s_points * theta_points,
        best.0,
        loc(&[("s", best.1), ("theta", best.2), ("u~", best.3)]),
        tol,
    );
    // near the binding ũ vanishes and F₁ = −∂_{x'}
    let s0 = step;
    let ut0 = (prof.u_tilde)(prof.f.value(s0), prof.h.value(s0));
    report.checks.push(Check {
        name: "near r' = 0: u~ = 0 and F1 = -d_x'".into(),
        value: ut0,
        location: loc(&[("s", s0)]),
        pass: ut0 == 0.0,
    });
    // on the plateau h ≡ c, the angles θ = π/2, 3π/2 carry the margin through −∂_{x'}
    let mut plateau = (f64::INFINITY, 0.0, 0.0);
    for k in 1..=s_points {
        let s = k as f64 * step;
        if s < prof.eps3 {
            continue;
        }
        for j in [theta_points / 4, 3 * theta_points / 4] {
            let (d, s, theta, _) = sample(k, j);
            if d < plateau.0 {
                plateau = (d, s, theta);
            }
        }
    }
    report.checks.push(Check {
        name: "r' >= eps3, theta = pi/2, 3pi/2: distance of F1 to TB+".into(),
        value: plateau.0,
        location: loc(&[("s", plateau.1), ("theta", plateau.2)]),
        pass: plateau.0 > tol,
    });
    Ok(report)
}
