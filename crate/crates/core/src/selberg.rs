//! Both sides of the trace formula for a platycosm.
//!
//! The spectral side is `K(t) = Σ mult·e^{−π²·key·t}`. The geometric side
//! integrates the Gaussian `(4πt)^{−3/2} e^{−s²/4t}` against the counting
//! function
//!
//! ```text
//! N(s) = Vol·#{λ ∈ Λ : |λ| ≤ s} + 2 Σ_g V_{l(g),θ(g)}(s) / k(g)
//! V_{h,θ}(s) = hπ(s² − h²) / (2 sin(θ/2))²   for s ≥ h, else 0.
//! ```
//!
//! Each cylinder term integrates in closed form:
//!
//! ```text
//! ∫_h^U e^{−s²/4t} dV = (2πh / (2 sin(θ/2))²) · 2t · (e^{−h²/4t} − e^{−U²/4t}).
//! ```
//!
//! Truncations carry explicit tail bounds:
//!
//! * spectral: a shell of norm key `n ≥ 1` holds at most `2(2√n + 1)² ≤ 18n`
//!   dual vectors, so the tail past `K` is at most
//!   `18 Σ_{n>K} n qⁿ = 18 q^{K+1}((K+1)(1−q) + q)/(1−q)²` with `q = e^{−π²t}`;
//! * lattice: disjoint balls of radius `ρ/2` around lattice points give
//!   `#{|λ| ≤ r} ≤ ((r + ρ/2)/(ρ/2))³`, which is integrated against the
//!   Gaussian by parts;
//! * cylinders: the number of twisted geodesics of length `≤ r` grows at most
//!   linearly (see [`crate::geodesics`]) and each term has `1/sin² ≤ 4`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::euclid_group::{Lattice, PlatycosmPresentation};
use crate::exact::{self, Q};
use crate::geodesics::{self, GeodesicClass, GeodesicError};
use crate::spectrum::{self, SpectrumError, SpectrumTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelbergError {
    #[error("heat time must be positive and finite, got {0}")]
    InvalidTime(f64),
    #[error("accuracy target must be positive and finite, got {0}")]
    InvalidEps(f64),
    #[error("twist must lie in (0, π], got {0}")]
    InvalidTwist(f64),
    #[error("cylinder height must be positive, got {0}")]
    InvalidHeight(f64),
    #[error("{what} cutoff {needed} exceeds the budget {limit}; use a larger t or eps")]
    Budget {
        what: &'static str,
        needed: f64,
        limit: f64,
    },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

/// A truncated sum together with a bound on everything discarded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTrace {
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTraceConfig {
    pub t: f64,
    pub eps: f64,
    /// Largest norm key the spectral side may enumerate.
    pub max_key: u64,
    /// Largest expected number of lattice points on the geometric side.
    pub max_points: f64,
}

impl HeatTraceConfig {
    pub fn new(t: f64, eps: f64) -> Self {
        HeatTraceConfig {
            t,
            eps,
            max_key: 20_000,
            max_points: 2.0e7,
        }
    }

    fn validate(&self) -> Result<(), SelbergError> {
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(SelbergError::InvalidTime(self.t));
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(SelbergError::InvalidEps(self.eps));
        }
        Ok(())
    }

    /// Smallest `K` whose spectral tail bound is below `eps/2`.
    pub fn spectral_cutoff(&self) -> Result<u64, SelbergError> {
        self.validate()?;
        let q = (-PI * PI * self.t).exp();
        let mut k = 0u64;
        while spectral_tail(q, k) >= self.eps / 2.0 {
            k += 1;
            if k > self.max_key {
                return Err(SelbergError::Budget {
                    what: "spectral key",
                    needed: k as f64,
                    limit: self.max_key as f64,
                });
            }
        }
        Ok(k)
    }

    /// Radius `S` past which lattice and cylinder tails together stay
    /// below `eps/2`.
    pub fn geometric_cutoff(&self, p: &PlatycosmPresentation) -> Result<f64, SelbergError> {
        self.validate()?;
        let t = self.t;
        let lat = p.translation_lattice();
        let rho = lat.minimum();
        let vol = exact::to_f64(&p.volume());
        let covol = exact::to_f64(&lat.covolume());
        let (slope, offset) = class_growth(p)?;
        let mut s = (2.0 * t).sqrt().max(rho);
        loop {
            let tail = lattice_tail(vol, rho, t, s) + cylinder_tail(slope, offset, t, s);
            if tail < self.eps / 2.0 {
                break;
            }
            s *= 1.05;
        }
        let points = 4.0 / 3.0 * PI * (s + rho).powi(3) / covol;
        if points > self.max_points {
            return Err(SelbergError::Budget {
                what: "lattice point",
                needed: points,
                limit: self.max_points,
            });
        }
        Ok(s)
    }
}

fn spectral_tail(q: f64, k: u64) -> f64 {
    let k1 = (k + 1) as f64;
    18.0 * q.powf(k1) * (k1 * (1.0 - q) + q) / (1.0 - q).powi(2)
}

/// `∫_S^∞ r^{n+1}/(2t) e^{−r²/4t} dr` for `n = 0..=3`, with `erfc` replaced
/// by its Gaussian upper bound.
fn gaussian_moments(t: f64, s: f64) -> [f64; 4] {
    let e = (-s * s / (4.0 * t)).exp();
    let i0 = e;
    let i1 = s * e + 2.0 * t * e / s;
    let i2 = s * s * e + 4.0 * t * e;
    let i3 = s.powi(3) * e + 6.0 * t * i1;
    [i0, i1, i2, i3]
}

fn heat_prefactor(t: f64) -> f64 {
    (4.0 * PI * t).powf(-1.5)
}

fn lattice_tail(vol: f64, rho: f64, t: f64, s: f64) -> f64 {
    let a = rho / 2.0;
    let [i0, i1, i2, i3] = gaussian_moments(t, s);
    let poly = i3 + 3.0 * a * i2 + 3.0 * a * a * i1 + a.powi(3) * i0;
    vol * heat_prefactor(t) * poly / a.powi(3)
}

fn cylinder_tail(slope: f64, offset: f64, t: f64, s: f64) -> f64 {
    if slope == 0.0 && offset == 0.0 {
        return 0.0;
    }
    let [_, i1, i2, _] = gaussian_moments(t, s);
    // per class: (2/k)·(1/sin²)·π·l·t·e^{−l²/4t}, with 2/k · 1/sin² ≤ 8
    heat_prefactor(t) * 8.0 * PI * t * (slope * i2 + offset * i1)
}

/// `(α, β)` with `#{twisted geodesics of length ≤ r} ≤ αr + β`.
fn class_growth(p: &PlatycosmPresentation) -> Result<(f64, f64), SelbergError> {
    let at0 = geodesics::class_count_bound(p, 0.0)?;
    let at1 = geodesics::class_count_bound(p, 1.0)?;
    Ok((at1 - at0, at0))
}

/// Sum in a fixed binary tree, independent of how the terms were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

fn rounding_allowance(terms: &[f64]) -> f64 {
    let mass: f64 = terms.iter().map(|x| x.abs()).sum();
    (terms.len().max(1) as f64).log2().ceil().max(1.0) * 2.0 * f64::EPSILON * mass
}

fn check_twist(theta: f64) -> Result<(), SelbergError> {
    if theta.is_finite() && theta > 0.0 && theta <= PI {
        Ok(())
    } else {
        Err(SelbergError::InvalidTwist(theta))
    }
}

/// `V_{h,θ}(s)`: volume of a cylinder of height `h` whose top is turned by
/// `θ`, out to slant radius `s`.
pub fn twisted_cylinder_volume(h: f64, theta: f64, s: f64) -> Result<f64, SelbergError> {
    check_twist(theta)?;
    if !(h > 0.0) {
        return Err(SelbergError::InvalidHeight(h));
    }
    if s < h {
        return Ok(0.0);
    }
    let chord = 2.0 * (theta / 2.0).sin();
    Ok(h * PI * (s * s - h * h) / (chord * chord))
}

/// Integrand `(2/k)(4πt)^{−3/2} e^{−s²/4t} dV_{h,θ}/ds` of one cylinder term.
pub fn cylinder_density(h: f64, theta: f64, k: u32, t: f64, s: f64) -> Result<f64, SelbergError> {
    check_twist(theta)?;
    if s < h {
        return Ok(0.0);
    }
    let chord = 2.0 * (theta / 2.0).sin();
    let dv = 2.0 * PI * h * s / (chord * chord);
    Ok(2.0 / k as f64 * heat_prefactor(t) * (-s * s / (4.0 * t)).exp() * dv)
}

/// Closed form of the cylinder integral over `[h, upper]`, or `[h, ∞)`
/// when `upper` is `None`.
pub fn cylinder_term(h: f64, theta: f64, k: u32, t: f64, upper: Option<f64>) -> Result<f64, SelbergError> {
    check_twist(theta)?;
    if !(h > 0.0) {
        return Err(SelbergError::InvalidHeight(h));
    }
    let chord = 2.0 * (theta / 2.0).sin();
    let far = match upper {
        Some(u) if u <= h => return Ok(0.0),
        Some(u) => (-u * u / (4.0 * t)).exp(),
        None => 0.0,
    };
    let gauss = (-h * h / (4.0 * t)).exp() - far;
    Ok(2.0 / k as f64 * heat_prefactor(t) * (2.0 * PI * h / (chord * chord)) * 2.0 * t * gauss)
}

/// Number of lattice vectors of length at most `s`.
pub fn lattice_count(lattice: &Lattice, s: f64) -> u64 {
    if !(s >= 0.0) {
        return 0;
    }
    let margin = exact::qi((s * s).ceil() as i64 + 1);
    let s2 = s * s;
    lattice
        .points_within(margin)
        .iter()
        .filter(|v| exact::to_f64(&exact::norm_sq(v)) <= s2)
        .count() as u64
}

/// Number of lattice vectors with `|λ|² ≤ s_sq`, compared exactly.
pub fn lattice_count_exact(lattice: &Lattice, s_sq: Q) -> u64 {
    lattice.points_within(s_sq).len() as u64
}

fn spectral_sum(
    cfg: &HeatTraceConfig,
    table: impl FnOnce(u64) -> Result<SpectrumTable, SpectrumError>,
) -> Result<HeatTrace, SelbergError> {
    let cutoff = cfg.spectral_cutoff()?;
    let table = table(cutoff)?;
    let q = (-PI * PI * cfg.t).exp();
    // smallest terms first
    let terms: Vec<f64> = table
        .entries()
        .iter()
        .rev()
        .map(|(&key, &mult)| mult as f64 * (-PI * PI * key as f64 * cfg.t).exp())
        .collect();
    Ok(HeatTrace {
        value: pairwise_sum(&terms),
        bound: spectral_tail(q, cutoff) + rounding_allowance(&terms),
    })
}

pub fn spectral_heat_trace(p: &PlatycosmPresentation, cfg: &HeatTraceConfig) -> Result<HeatTrace, SelbergError> {
    spectral_sum(cfg, |k| spectrum::spectrum_table(p, k))
}

/// Heat trace of the circle `R / cZ`, `Σ_n e^{−(2πn/c)² t}`.
pub fn circle_heat_trace(circumference: Q, cfg: &HeatTraceConfig) -> Result<HeatTrace, SelbergError> {
    spectral_sum(cfg, |k| spectrum::circle_spectrum(circumference, k))
}

/// Rational `S'` with `S ≤ S'`, used to hand the cutoff to exact routines.
fn rational_ceiling(s: f64) -> Q {
    exact::q((s * 64.0).ceil() as i64, 64)
}

pub fn geometric_heat_trace(p: &PlatycosmPresentation, cfg: &HeatTraceConfig) -> Result<HeatTrace, SelbergError> {
    let s = cfg.geometric_cutoff(p)?;
    let t = cfg.t;
    let s_q = rational_ceiling(s);
    let lat = p.translation_lattice();
    let vol = exact::to_f64(&p.volume());
    let mut norms: Vec<f64> = lat
        .points_within(s_q * s_q)
        .par_iter()
        .map(|v| exact::to_f64(&exact::norm_sq(v)))
        .collect();
    norms.sort_by(|a, b| b.total_cmp(a));
    let pre = heat_prefactor(t);
    let mut terms: Vec<f64> = norms.iter().map(|n2| vol * pre * (-n2 / (4.0 * t)).exp()).collect();
    let classes = geodesics::twisted_classes(p, s_q)?;
    let mut cyl = classes
        .iter()
        .map(|c| {
            let term = cylinder_term(exact::to_f64(&c.length), c.twist.radians(), c.imprimitivity, t, None)?;
            Ok(c.count as f64 * term)
        })
        .collect::<Result<Vec<f64>, SelbergError>>()?;
    cyl.reverse();
    terms.extend(cyl);
    Ok(HeatTrace {
        value: pairwise_sum(&terms),
        bound: cfg.eps / 2.0 + rounding_allowance(&terms),
    })
}

/// `N(s)` split into its lattice jumps and its continuous cylinder part,
/// both kept exact up to the factor `π` in the latter.
#[derive(Debug, Clone)]
pub struct CountingFunction {
    volume: Q,
    /// `(|λ|², number of lattice vectors with that norm)`, increasing.
    jumps: Vec<(Q, u64)>,
    classes: Vec<GeodesicClass>,
    max_s: Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingValue {
    /// `Vol·#{|λ| ≤ s}`.
    pub jump: Q,
    /// Cylinder part divided by `π`.
    pub cylinder_over_pi: Q,
}

impl CountingValue {
    pub fn cylinder(&self) -> f64 {
        PI * exact::to_f64(&self.cylinder_over_pi)
    }

    pub fn total(&self) -> f64 {
        exact::to_f64(&self.jump) + self.cylinder()
    }
}

impl CountingFunction {
    pub fn new(p: &PlatycosmPresentation, max_s: Q) -> Result<Self, SelbergError> {
        let lat = p.translation_lattice();
        let mut norms: Vec<Q> = lat
            .points_within(max_s * max_s)
            .iter()
            .map(exact::norm_sq)
            .collect();
        norms.sort();
        let mut jumps: Vec<(Q, u64)> = Vec::new();
        for n in norms {
            match jumps.last_mut() {
                Some((m, c)) if *m == n => *c += 1,
                _ => jumps.push((n, 1)),
            }
        }
        Ok(CountingFunction {
            volume: p.volume(),
            jumps,
            classes: geodesics::twisted_classes(p, max_s)?,
            max_s,
        })
    }

    pub fn max_s(&self) -> Q {
        self.max_s
    }

    pub fn classes(&self) -> &[GeodesicClass] {
        &self.classes
    }

    /// Exact `N(s)` for `0 ≤ s ≤ max_s`.
    pub fn eval(&self, s: Q) -> Result<CountingValue, SelbergError> {
        let s = s.min(self.max_s);
        let s2 = s * s;
        let count: u64 = self.jumps.iter().take_while(|(n, _)| *n <= s2).map(|(_, c)| c).sum();
        let mut cyl = Q::from_integer(0);
        for c in self.classes.iter().filter(|c| c.length <= s) {
            // 2/k · count · l(s² − l²) · (1/sin²) / 4
            let f = c.twist.weight_factor()?;
            cyl += exact::qi(2 * c.count as i64) / exact::qi(c.imprimitivity as i64)
                * c.length
                * (s2 - c.length * c.length)
                * f
                / exact::qi(4);
        }
        Ok(CountingValue {
            jump: self.volume * exact::qi(count as i64),
            cylinder_over_pi: cyl,
        })
    }

    /// Samples at `s = i·step` for `i = 0, 1, …` up to `max_s`, as CSV.
    pub fn to_csv(&self, step: Q) -> Result<String, SelbergError> {
        let mut out = String::from("s,N_jump,N_cylinder,N_total\n");
        let n = (self.max_s / step).floor().to_integer();
        for i in 0..=n {
            let s = step * exact::qi(i);
            let v = self.eval(s)?;
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_real(exact::to_f64(&s)),
                format_real(exact::to_f64(&v.jump)),
                format_real(v.cylinder()),
                format_real(v.total())
            ));
        }
        Ok(out)
    }
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_real(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Both sides of `K_Tetra − ¼K_TwoTall = K_{R/½Z} − ¼K_{R/2Z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExerciseIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub bound: f64,
}

impl ExerciseIdentity {
    pub fn residual(&self) -> f64 {
        self.lhs - self.rhs
    }
}

pub fn exercise_identity(t: f64, eps: f64) -> Result<ExerciseIdentity, SelbergError> {
    let cfg = HeatTraceConfig::new(t, eps);
    let tetra = spectral_heat_trace(&crate::euclid_group::Preset::Tetra.presentation(), &cfg)?;
    let tall = spectral_heat_trace(&crate::euclid_group::Preset::TwoTall.presentation(), &cfg)?;
    let half = circle_heat_trace(exact::q(1, 2), &cfg)?;
    let two = circle_heat_trace(exact::qi(2), &cfg)?;
    Ok(ExerciseIdentity {
        lhs: tetra.value - 0.25 * tall.value,
        rhs: half.value - 0.25 * two.value,
        bound: tetra.bound + 0.25 * tall.bound + half.bound + 0.25 * two.bound,
    })
}

pub fn exercise_identity_residual(t: f64, eps: f64) -> Result<f64, SelbergError> {
    Ok(exercise_identity(t, eps)?.residual())
}

/// Lattice points as `f64` norms; exposed for the examples.
pub fn lattice_norms(lattice: &Lattice, s: f64) -> Vec<f64> {
    let s_q = rational_ceiling(s.max(0.0));
    lattice
        .points_within(s_q * s_q)
        .iter()
        .filter_map(|v| exact::norm_sq(v).to_f64().map(f64::sqrt))
        .filter(|r| *r <= s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid_group::presets::two_tall_lattice;
    use crate::euclid_group::Preset;
    use crate::exact::{q, qi};

    #[test]
    fn cylinder_volume_examples() {
        assert_eq!(twisted_cylinder_volume(1.0, PI, 0.5).unwrap(), 0.0);
        let v = twisted_cylinder_volume(0.5, PI, 1.0).unwrap();
        assert!((v - 3.0 * PI / 32.0).abs() < 1e-15);
        let quarter = twisted_cylinder_volume(0.7, PI / 2.0, 2.0).unwrap();
        let half = twisted_cylinder_volume(0.7, PI, 2.0).unwrap();
        assert!((quarter - 2.0 * half).abs() <= 1e-15 * quarter);
        assert!(matches!(twisted_cylinder_volume(1.0, 0.0, 2.0), Err(SelbergError::InvalidTwist(_))));
    }

    #[test]
    fn lattice_counts() {
        let tall = two_tall_lattice();
        assert_eq!(lattice_count(&tall, 0.0), 1);
        assert_eq!(lattice_count(&tall, 1.0), 5);
        assert_eq!(lattice_count(&Lattice::cubic(), 1.0), 7);
        assert_eq!(lattice_count_exact(&tall, qi(4)), 5 + 4 + 4 + 2);
    }

    #[test]
    fn long_time_limit() {
        let cfg = HeatTraceConfig::new(100.0, 1e-12);
        let k = spectral_heat_trace(&Preset::Tetra.presentation(), &cfg).unwrap();
        assert!((k.value - 1.0).abs() < 1e-30);
    }

    #[test]
    fn two_tall_sides_agree() {
        let p = Preset::TwoTall.presentation();
        for t in [0.05, 0.3, 1.0] {
            let cfg = HeatTraceConfig::new(t, 1e-10);
            let a = spectral_heat_trace(&p, &cfg).unwrap();
            let b = geometric_heat_trace(&p, &cfg).unwrap();
            assert!((a.value - b.value).abs() < a.bound + b.bound, "t={t}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let mut cfg = HeatTraceConfig::new(1e-4, 1e-10);
        cfg.max_key = 100;
        assert!(matches!(cfg.spectral_cutoff(), Err(SelbergError::Budget { .. })));
        assert!(matches!(
            HeatTraceConfig::new(-1.0, 1e-10).spectral_cutoff(),
            Err(SelbergError::InvalidTime(_))
        ));
    }

    #[test]
    fn counting_function_starts_at_volume() {
        let n = CountingFunction::new(&Preset::Didi.presentation(), qi(2)).unwrap();
        let v = n.eval(q(1, 100)).unwrap();
        assert_eq!(v.jump, q(1, 2));
        assert_eq!(v.cylinder_over_pi, qi(0));
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        assert_eq!(pairwise_sum(&xs), pairwise_sum(&xs.clone()));
        assert!((pairwise_sum(&xs) - xs.iter().sum::<f64>()).abs() < 1e-12);
    }
}
