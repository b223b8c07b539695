//! Closed-form Green and Poisson kernels for balls, plus the classical
//! constants consumed by the comparison-constant pipeline.
//!
//! Conventions. `g` is the Brownian occupation density: `(1/2) Lap g(x,.) =
//! -delta_x` with zero boundary values, so `G_D f(x) = E_x int_0^tau f(xi_t)
//! dt = int g(x,y) f(y) dy`. This makes `g` twice the standard Green function
//! of `-Lap`, with diagonal coefficient `c_d = 2/((d-2) omega_{d-1})` for
//! `d >= 3` and `c_2 = 1/pi` against `log(1/|x-y|)` for `d = 2`. `k` is the
//! harmonic-measure density (`int k(x,z) sigma(dz) = 1`), i.e. the exit
//! distribution of Brownian motion.

use crate::domain::{dist, dot, unit_sphere_area, BallDomain};
use crate::error::{Error, Result};
use crate::rng::substream;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Diagonal coefficient of the occupation-density Green function.
pub fn c_d(d: usize) -> f64 {
    if d == 2 {
        1.0 / std::f64::consts::PI
    } else {
        2.0 / ((d as f64 - 2.0) * unit_sphere_area(d))
    }
}

/// Classical constants attached to a domain and a concentric compact `C_0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KernelConstants {
    /// Coefficient of `|x-y|^{2-d}` (or of `log(1/|x-y|)` when `d=2`) in `g`.
    pub c_d: f64,
    /// Surface area of the unit sphere `S^{d-1}`.
    pub omega: f64,
    /// `dist(C_0, boundary) /\ 1`.
    pub beta: f64,
}

impl KernelConstants {
    pub fn new(domain: &BallDomain, c0_radius: f64) -> Result<Self> {
        if !(c0_radius > 0.0 && c0_radius < domain.radius()) {
            return Err(Error::invalid(format!(
                "compact radius {c0_radius} must lie in (0, {})",
                domain.radius()
            )));
        }
        Ok(Self {
            c_d: c_d(domain.dim()),
            omega: unit_sphere_area(domain.dim()),
            beta: (domain.radius() - c0_radius).min(1.0),
        })
    }
}

/// `q^{(2-d)/2}` given `q = (squared length)`, i.e. `len^{2-d}`.
#[inline]
fn pow_2_minus_d_sq(sq: f64, d: usize) -> f64 {
    match d {
        3 => 1.0 / sq.sqrt(),
        4 => 1.0 / sq,
        5 => 1.0 / (sq * sq.sqrt()),
        _ => sq.powf((2.0 - d as f64) / 2.0),
    }
}

/// Symmetric radical `|x| |x* - y|` of the unit-ball image point, as a
/// function of unit-scaled coordinates. Squared form `1 - 2 x.y + |x|^2|y|^2`
/// is symmetric term by term, which makes `g` symmetric to the last bit.
#[inline]
fn image_radical_sq(xs: &[f64], xn2: f64, ys: &[f64], yn2: f64) -> f64 {
    1.0 - 2.0 * dot(xs, ys) + xn2 * yn2
}

/// Green function from unit-scaled coordinates and cached squared norms.
/// Used on hot quadrature paths; `green` below is the checked public entry.
#[inline]
pub(crate) fn green_scaled(
    d: usize,
    radius: f64,
    xs: &[f64],
    xn2: f64,
    ys: &[f64],
    yn2: f64,
) -> f64 {
    let mut dist2 = 0.0;
    for i in 0..xs.len() {
        let t = xs[i] - ys[i];
        dist2 += t * t;
    }
    let s2 = image_radical_sq(xs, xn2, ys, yn2);
    if d == 2 {
        // c_2 log(s~ / |x~-y~|)
        0.5 * c_d(2) * (s2.ln() - dist2.ln())
    } else {
        c_d(d)
            * radius.powi(2 - d as i32)
            * (pow_2_minus_d_sq(dist2, d) - pow_2_minus_d_sq(s2, d))
    }
}

/// Regular (harmonic-in-`y`) part `H` with `g = c_d |x-y|^{2-d} - H` for
/// `d >= 3`, and `g = c_2 log(1/|x-y|) - H` for `d = 2`.
pub(crate) fn green_regular_part(domain: &BallDomain, x: &[f64], y: &[f64]) -> f64 {
    let d = domain.dim();
    let xs = domain.to_unit(x);
    let ys = domain.to_unit(y);
    let xn2 = dot(&xs, &xs);
    let yn2 = dot(&ys, &ys);
    let s2 = image_radical_sq(&xs, xn2, &ys, yn2);
    if d == 2 {
        // H = c_2 log(1/(R s~))
        -0.5 * c_d(2) * (domain.radius() * domain.radius() * s2).ln()
    } else {
        c_d(d) * domain.radius().powi(2 - d as i32) * pow_2_minus_d_sq(s2, d)
    }
}

/// Green function of the ball. Symmetric, vanishing at the boundary,
/// singular on the diagonal.
pub fn green(domain: &BallDomain, x: &[f64], y: &[f64]) -> Result<f64> {
    domain.require_interior(x, "green argument x")?;
    domain.require_interior(y, "green argument y")?;
    if dist(x, y) == 0.0 {
        return Err(Error::domain(format!(
            "green is singular on the diagonal: x = y = {x:?}"
        )));
    }
    let xs = domain.to_unit(x);
    let ys = domain.to_unit(y);
    let xn2 = dot(&xs, &xs);
    let yn2 = dot(&ys, &ys);
    Ok(green_scaled(domain.dim(), domain.radius(), &xs, xn2, &ys, yn2))
}

/// Poisson kernel (harmonic-measure density):
/// `k(x,z) = (R^2 - |x-c|^2) / (omega_{d-1} R |x-z|^d)`.
pub fn poisson(domain: &BallDomain, x: &[f64], z: &[f64]) -> Result<f64> {
    domain.require_interior(x, "poisson argument x")?;
    domain.require_boundary(z, "poisson argument z")?;
    Ok(poisson_unchecked(domain, x, z))
}

#[inline]
pub(crate) fn poisson_unchecked(domain: &BallDomain, x: &[f64], z: &[f64]) -> f64 {
    let d = domain.dim();
    let r = domain.radius();
    let rad = domain.radial(x);
    let dxz = dist(x, z);
    (r * r - rad * rad) / (unit_sphere_area(d) * r * dxz.powi(d as i32))
}

/// Poisson kernel on the axis through a boundary point: value of `k(x, z)`
/// at `x = c + t zhat`, `z = c + R zhat`, for signed `t` in `(-R, R)`.
fn poisson_axis(domain: &BallDomain, t: f64) -> f64 {
    let d = domain.dim() as i32;
    let r = domain.radius();
    (r + t) / (unit_sphere_area(domain.dim()) * r * (r - t).powi(d - 1))
}

/// Tight Harnack constant `phi` for a concentric compact ball of radius `a`:
/// the supremum of `k(x,z)/k(x0,z)` over `x, x0` in the compact and boundary
/// `z`. By rotational symmetry and the maximum principle the extremes sit on
/// the axis through `z`, so the search reduces to one dimension.
pub fn harnack_constant(domain: &BallDomain, a: f64) -> Result<f64> {
    if !(a >= 0.0) || a >= domain.radius() {
        return Err(Error::invalid(format!(
            "compact radius {a} must lie in [0, {})",
            domain.radius()
        )));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    // Coarse scan of k along the axis, then local ternary refinement of the
    // max and min.
    let coarse = 2001usize;
    let eval = |t: f64| poisson_axis(domain, t);
    let mut t_max = -a;
    let mut t_min = -a;
    let mut v_max = f64::MIN;
    let mut v_min = f64::MAX;
    for i in 0..coarse {
        let t = -a + 2.0 * a * i as f64 / (coarse - 1) as f64;
        let v = eval(t);
        if v > v_max {
            v_max = v;
            t_max = t;
        }
        if v < v_min {
            v_min = v;
            t_min = t;
        }
    }
    let step = 2.0 * a / (coarse - 1) as f64;
    let refine = |t0: f64, sign: f64| -> f64 {
        let mut lo = (t0 - step).max(-a);
        let mut hi = (t0 + step).min(a);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if sign * eval(m1) < sign * eval(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        eval(0.5 * (lo + hi))
    };
    let sup = refine(t_max, 1.0);
    let inf = refine(t_min, -1.0);
    Ok(sup / inf)
}

/// Result of the empirical 3-G sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ThreeGEstimate {
    /// Empirical lower bound for the 3-G constant `theta`.
    pub theta_hat: f64,
    /// The sampled triple `(x, x0, y)` attaining the maximum ratio.
    pub worst_triple: [Vec<f64>; 3],
    pub samples: u64,
    pub seed: u64,
}

/// Ratio functional of the 3-G inequality:
/// `d >= 3`: `[g(x,y)/g(x0,y)] / [(|x-y|^{2-d} + |x-x0|^{2-d}) / g(x,x0)]`,
/// `d = 2`:  `[g(x,y)/g(x0,y)] / [(g(x,y) + g(x,x0) + 1) / g(x,x0)]`.
pub fn three_g_ratio(domain: &BallDomain, x: &[f64], x0: &[f64], y: &[f64]) -> Result<f64> {
    let d = domain.dim();
    let gxy = green(domain, x, y)?;
    let gx0y = green(domain, x0, y)?;
    let gxx0 = green(domain, x, x0)?;
    let lhs = gxy / gx0y;
    let rhs = if d == 2 {
        (gxy + gxx0 + 1.0) / gxx0
    } else {
        (dist(x, y).powi(2 - d as i32) + dist(x, x0).powi(2 - d as i32)) / gxx0
    };
    Ok(lhs / rhs)
}

fn three_g_sample(domain: &BallDomain, seed: u64, index: u64) -> (f64, [Vec<f64>; 3]) {
    let mut rng = substream(seed, index);
    let min_sep = 1e-9 * domain.radius();
    loop {
        let x = domain.sample_interior(&mut rng);
        let x0 = domain.sample_interior(&mut rng);
        let y = domain.sample_interior(&mut rng);
        if dist(&x, &x0) < min_sep || dist(&x, &y) < min_sep || dist(&x0, &y) < min_sep {
            continue; // coincident points are resampled
        }
        let r = three_g_ratio(domain, &x, &x0, &y).expect("sampled points are interior");
        return (r, [x, x0, y]);
    }
}

/// Empirical lower bound for the 3-G constant over `sample_count` uniform
/// triples. Deterministic in `(seed, sample_count)` regardless of thread
/// count: each sample has its own substream and ties break to the lowest
/// sample index.
pub fn three_g_estimate(
    domain: &BallDomain,
    sample_count: u64,
    seed: u64,
) -> Result<ThreeGEstimate> {
    if sample_count < 1 {
        return Err(Error::invalid("sampleCount must be >= 1"));
    }
    let best = (0..sample_count)
        .into_par_iter()
        .map(|i| {
            let (r, _) = three_g_sample(domain, seed, i);
            (r, i)
        })
        .reduce(
            || (f64::MIN, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let (theta_hat, idx) = best;
    if !theta_hat.is_finite() {
        return Err(Error::CheckFailed(format!(
            "3-G sweep produced a non-finite ratio at sample {idx}"
        )));
    }
    let (_, worst_triple) = three_g_sample(domain, seed, idx);
    Ok(ThreeGEstimate {
        theta_hat,
        worst_triple,
        samples: sample_count,
        seed,
    })
}

/// The Green-ratio constants `K` and `B` on a concentric compact `C_0`:
/// `1/g <= B` and `c_d |x-x0|^{2-d} / g(x,x0) <= K` on `C_0 x C_0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GreenRatioConstants {
    pub k_const: f64,
    pub b_const: f64,
    pub beta: f64,
    /// Minimum of `g` over the off-diagonal region `|x-x0| >= beta/2`.
    pub off_diagonal_min: f64,
    /// Closed-form near-diagonal lower bound for `g` on `|x-x0| <= beta/2`.
    pub near_diagonal_floor: f64,
}

/// Computes `B` from the minimum of `g` over `C_0 x C_0` (grid search over
/// the rotation-reduced parameters, off a diagonal neighborhood of width
/// `beta/2`, floored by the near-diagonal bound), and `K` from the explicit
/// max formula.
pub fn green_ratio_constants(domain: &BallDomain, c0_radius: f64) -> Result<GreenRatioConstants> {
    let consts = KernelConstants::new(domain, c0_radius)?;
    let d = domain.dim();
    let beta = consts.beta;
    let cd = consts.c_d;

    // g depends on (|x-c|, |x0-c|, angle) only; search that reduced cube.
    let eval = |t1: f64, t2: f64, cosg: f64| -> f64 {
        let sing = (1.0 - cosg * cosg).max(0.0).sqrt();
        let mut x = vec![0.0; d];
        let mut x0 = vec![0.0; d];
        x[0] = t1;
        x0[0] = t2 * cosg;
        x0[1] = t2 * sing;
        let xc: Vec<f64> = x.iter().zip(domain.center()).map(|(a, c)| a + c).collect();
        let x0c: Vec<f64> = x0.iter().zip(domain.center()).map(|(a, c)| a + c).collect();
        let sep = dist(&xc, &x0c);
        if sep < 0.5 * beta {
            return f64::MAX; // near-diagonal region handled by the closed-form floor
        }
        green(domain, &xc, &x0c).unwrap_or(f64::MAX)
    };

    let mut best = (f64::MAX, 0.0, 0.0, 0.0);
    let n = 48usize;
    for i in 0..=n {
        let t1 = c0_radius * i as f64 / n as f64;
        for j in 0..=n {
            let t2 = c0_radius * j as f64 / n as f64;
            for l in 0..=n {
                let cosg = -1.0 + 2.0 * l as f64 / n as f64;
                let v = eval(t1, t2, cosg);
                if v < best.0 {
                    best = (v, t1, t2, cosg);
                }
            }
        }
    }
    // Local refinement around the coarse argmin.
    let (mut v_min, mut b1, mut b2, mut b3) = best;
    let mut h1 = c0_radius / n as f64;
    let mut h3 = 2.0 / n as f64;
    for _ in 0..6 {
        for i in -4i32..=4 {
            let t1 = (b1 + i as f64 * h1 / 4.0).clamp(0.0, c0_radius);
            for j in -4i32..=4 {
                let t2 = (b2 + j as f64 * h1 / 4.0).clamp(0.0, c0_radius);
                for l in -4i32..=4 {
                    let cosg = (b3 + l as f64 * h3 / 4.0).clamp(-1.0, 1.0);
                    let v = eval(t1, t2, cosg);
                    if v < v_min {
                        v_min = v;
                        b1 = t1;
                        b2 = t2;
                        b3 = cosg;
                    }
                }
            }
        }
        h1 /= 4.0;
        h3 /= 4.0;
    }

    let near_floor = if d == 2 {
        cd * std::f64::consts::LN_2
    } else {
        cd * beta.powi(2 - d as i32) * ((2.0f64).powi(d as i32 - 2) - 1.0)
    };
    let g_min = v_min.min(near_floor);
    if !(g_min > 0.0) {
        return Err(Error::CheckFailed(format!(
            "green minimum over C0 x C0 is not positive: {g_min}"
        )));
    }
    let b_const = 1.0 / g_min;
    let k_const = if d == 2 {
        (b_const * cd * (2.0 / beta).ln()).max(1.0 + b_const * cd * (1.0 / beta).ln())
    } else {
        (b_const * cd * (beta / 2.0).powi(2 - d as i32))
            .max(1.0 + b_const * cd * beta.powi(2 - d as i32))
    };
    Ok(GreenRatioConstants {
        k_const,
        b_const,
        beta,
        off_diagonal_min: v_min,
        near_diagonal_floor: near_floor,
    })
}

/// JSON-exportable summary of the kernel-level constants.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub d: usize,
    pub radius: f64,
    pub a: f64,
    pub beta: f64,
    pub c_d: f64,
    pub omega: f64,
    pub phi: f64,
    pub theta_hat: f64,
    #[serde(rename = "K")]
    pub k_const: f64,
    #[serde(rename = "B")]
    pub b_const: f64,
    pub seed: u64,
}

/// Assembles the full constants report for the compact of radius `a`.
pub fn kernel_report(
    domain: &BallDomain,
    a: f64,
    three_g_samples: u64,
    seed: u64,
) -> Result<KernelReport> {
    let consts = KernelConstants::new(domain, a)?;
    let phi = harnack_constant(domain, a)?;
    let tg = three_g_estimate(domain, three_g_samples, seed)?;
    let gr = green_ratio_constants(domain, a)?;
    Ok(KernelReport {
        d: domain.dim(),
        radius: domain.radius(),
        a,
        beta: consts.beta,
        c_d: consts.c_d,
        omega: consts.omega,
        phi,
        theta_hat: tg.theta_hat,
        k_const: gr.k_const,
        b_const: gr.b_const,
        seed,
    })
}

/// Uniform-density potential of a ball: `int_{B(0,r)} |x-y|^{2-d} dy`
/// (`d >= 3`) or `int log(1/|x-y|) dy` (`d = 2`) at distance `s` from the
/// ball center. Closed form used by the anchored near-field evaluation.
pub(crate) fn uniform_ball_potential(d: usize, r: f64, s: f64) -> f64 {
    let omega = unit_sphere_area(d);
    if d == 2 {
        let pi = std::f64::consts::PI;
        if s <= r {
            pi * r * r * ((1.0 / r).ln() + 0.5) - 0.5 * pi * s * s
        } else {
            pi * r * r * (1.0 / s).ln()
        }
    } else if s <= r {
        omega * (0.5 * r * r - (d as f64 - 2.0) / (2.0 * d as f64) * s * s)
    } else {
        omega * r.powi(d as i32) / d as f64 * s.powi(2 - d as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn green_center_closed_form_d3() {
        // g(0, y) = (1/2pi)(1/|y| - 1)
        let b = BallDomain::unit(3);
        let v = green(&b, &[0.0, 0.0, 0.0], &[0.5, 0.0, 0.0]).unwrap();
        assert_relative_eq!(v, 1.0 / (2.0 * PI), epsilon = 1e-14);
        let v2 = green(&b, &[0.0, 0.0, 0.0], &[0.25, 0.0, 0.0]).unwrap();
        assert_relative_eq!(v2, (4.0 - 1.0) / (2.0 * PI), epsilon = 1e-13);
    }

    #[test]
    fn green_center_closed_form_d2() {
        let b = BallDomain::unit(2);
        let v = green(&b, &[0.0, 0.0], &[0.5, 0.0]).unwrap();
        assert_relative_eq!(v, (1.0 / PI) * (2.0f64).ln(), epsilon = 1e-14);
    }

    #[test]
    fn green_is_symmetric_to_roundoff() {
        let b = BallDomain::unit(3);
        let mut rng = substream(11, 0);
        for _ in 0..2000 {
            let x = b.sample_interior(&mut rng);
            let y = b.sample_interior(&mut rng);
            if dist(&x, &y) < 1e-9 {
                continue;
            }
            let gxy = green(&b, &x, &y).unwrap();
            let gyx = green(&b, &y, &x).unwrap();
            assert!((gxy - gyx).abs() <= 1e-12 * gxy.abs().max(1e-300));
        }
    }

    #[test]
    fn green_rejects_bad_arguments() {
        let b = BallDomain::unit(3);
        assert!(green(&b, &[0.0; 3], &[0.0; 3]).is_err());
        assert!(green(&b, &[1.0, 0.0, 0.0], &[0.5, 0.0, 0.0]).is_err());
        assert!(green(&b, &[0.2, 0.0, 0.0], &[1.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn green_vanishes_at_the_boundary() {
        let b = BallDomain::unit(3);
        let x = [0.3, -0.1, 0.2];
        let mut prev = f64::MAX;
        for k in 1..6 {
            let r = 1.0 - 10f64.powi(-k);
            let y = [r, 0.0, 0.0];
            let g = green(&b, &x, &y).unwrap();
            assert!(g >= 0.0 && g < prev);
            prev = g;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn green_scales_with_radius() {
        // g_R(x,y) = R^{2-d} g_1(x/R, y/R)
        let unit = BallDomain::unit(3);
        let big = BallDomain::new(3, 2.0, vec![0.0; 3]).unwrap();
        let x = [0.4, 0.2, -0.6];
        let y = [-0.8, 0.6, 0.2];
        let xs = [0.2, 0.1, -0.3];
        let ys = [-0.4, 0.3, 0.1];
        let g_big = green(&big, &x, &y).unwrap();
        let g_unit = green(&unit, &xs, &ys).unwrap();
        assert_relative_eq!(g_big, g_unit / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn poisson_closed_values() {
        let b3 = BallDomain::unit(3);
        let any_z = [0.0, 0.0, 1.0];
        assert_relative_eq!(
            poisson(&b3, &[0.0; 3], &any_z).unwrap(),
            1.0 / (4.0 * PI),
            epsilon = 1e-14
        );
        assert_relative_eq!(
            poisson(&b3, &[0.5, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap(),
            0.75 / (4.0 * PI * 0.125),
            epsilon = 1e-14
        );
        let b2 = BallDomain::unit(2);
        assert_relative_eq!(
            poisson(&b2, &[0.0; 2], &[0.0, 1.0]).unwrap(),
            1.0 / (2.0 * PI),
            epsilon = 1e-14
        );
        assert!(poisson(&b3, &[1.0, 0.0, 0.0], &any_z).is_err());
        assert!(poisson(&b3, &[0.0; 3], &[0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn poisson_is_harmonic_in_x() {
        // Centered second differences at step 1e-3; the residual is measured
        // against the curvature scale being cancelled, sum_i |D2_i k|.
        let b = BallDomain::unit(3);
        let z = [0.0, 0.0, 1.0];
        let h = 1e-3;
        for x in [[0.2, 0.1, -0.3], [0.0, 0.0, 0.5], [-0.4, 0.3, 0.0]] {
            let k0 = poisson(&b, &x, &z).unwrap();
            let mut lap = 0.0;
            let mut scale = 0.0;
            for i in 0..3 {
                let mut xp = x;
                let mut xm = x;
                xp[i] += h;
                xm[i] -= h;
                let d2 = (poisson(&b, &xp, &z).unwrap() + poisson(&b, &xm, &z).unwrap()
                    - 2.0 * k0)
                    / (h * h);
                lap += d2;
                scale += d2.abs();
            }
            assert!(
                lap.abs() <= 1e-4 * scale,
                "laplacian residual {lap} exceeds 1e-4 of curvature scale {scale} (k = {k0})"
            );
        }
    }

    #[test]
    fn harnack_constant_matches_axis_reduction() {
        let b3 = BallDomain::unit(3);
        let phi = harnack_constant(&b3, 0.5).unwrap();
        assert_relative_eq!(phi, 27.0, epsilon = 1e-9);
        let b2 = BallDomain::unit(2);
        let phi2 = harnack_constant(&b2, 0.5).unwrap();
        assert!(phi2 >= 9.0 - 1e-9);
        assert_relative_eq!(phi2, 9.0, epsilon = 1e-9);
        // degenerate compact
        assert_relative_eq!(harnack_constant(&b3, 0.0).unwrap(), 1.0);
        assert!(harnack_constant(&b3, 1.0).is_err());
    }

    #[test]
    fn harnack_constant_closed_form_any_d() {
        // ((1+a)/(1-a))^d for the unit ball
        for d in [2usize, 3, 4] {
            let b = BallDomain::unit(d);
            for a in [0.2, 0.5, 0.7] {
                let phi = harnack_constant(&b, a).unwrap();
                let closed = ((1.0 + a) / (1.0 - a)).powi(d as i32);
                assert_relative_eq!(phi, closed, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn harnack_constant_monotone_in_a() {
        let b = BallDomain::unit(3);
        let mut prev = 0.0;
        for i in 1..10 {
            let a = i as f64 * 0.09;
            let phi = harnack_constant(&b, a).unwrap();
            assert!(phi >= prev);
            prev = phi;
        }
    }

    #[test]
    fn harnack_constant_by_brute_grid_search() {
        // independent oracle: direct search over compact x compact x boundary
        let b = BallDomain::unit(3);
        let a = 0.5;
        let z = [0.0, 0.0, 1.0];
        let mut sup: f64 = 0.0;
        let n = 24;
        for i in 0..=n {
            for j in 0..=n {
                for l in 0..=n {
                    for m in 0..=n {
                        let t1 = a * i as f64 / n as f64;
                        let c1 = -1.0 + 2.0 * j as f64 / n as f64;
                        let t2 = a * l as f64 / n as f64;
                        let c2 = -1.0 + 2.0 * m as f64 / n as f64;
                        let x = [t1 * (1.0 - c1 * c1).max(0.0).sqrt(), 0.0, t1 * c1];
                        let x0 = [t2 * (1.0 - c2 * c2).max(0.0).sqrt(), 0.0, t2 * c2];
                        let r = poisson(&b, &x, &z).unwrap() / poisson(&b, &x0, &z).unwrap();
                        sup = sup.max(r);
                    }
                }
            }
        }
        let phi = harnack_constant(&b, a).unwrap();
        assert!(sup <= phi * (1.0 + 1e-9), "grid sup {sup} exceeds phi {phi}");
        assert!(sup >= 0.9 * phi, "grid sup {sup} far below phi {phi}");
    }

    #[test]
    fn three_g_estimate_is_finite_and_deterministic() {
        let b = BallDomain::unit(3);
        let e1 = three_g_estimate(&b, 2000, 5).unwrap();
        let e2 = three_g_estimate(&b, 2000, 5).unwrap();
        assert!(e1.theta_hat.is_finite());
        assert_eq!(e1.theta_hat.to_bits(), e2.theta_hat.to_bits());
        let replay = three_g_ratio(&b, &e1.worst_triple[0], &e1.worst_triple[1], &e1.worst_triple[2])
            .unwrap();
        assert_relative_eq!(replay, e1.theta_hat, epsilon = 1e-12);
    }

    #[test]
    fn three_g_two_seed_stability() {
        // d=3 and d=2 sweeps are stable to +-5% across disjoint seeds
        for d in [3usize, 2] {
            let b = BallDomain::unit(d);
            let n = 100_000;
            let e1 = three_g_estimate(&b, n, 101).unwrap();
            let e2 = three_g_estimate(&b, n, 202).unwrap();
            let rel = (e1.theta_hat - e2.theta_hat).abs() / e1.theta_hat.max(e2.theta_hat);
            assert!(
                rel <= 0.05,
                "d={d}: theta_hat {:.5} vs {:.5} differ by {:.2}%",
                e1.theta_hat,
                e2.theta_hat,
                100.0 * rel
            );
        }
    }

    #[test]
    fn green_ratio_constants_bound_holds_on_samples() {
        let b = BallDomain::unit(3);
        let c0 = 0.6;
        let gr = green_ratio_constants(&b, c0).unwrap();
        assert_relative_eq!(gr.beta, 0.4, epsilon = 1e-14);
        assert!(gr.k_const >= 1.0);
        let cd = c_d(3);
        let mut rng = substream(77, 0);
        for _ in 0..100_000 {
            let x = b.sample_concentric(c0, &mut rng);
            let x0 = b.sample_concentric(c0, &mut rng);
            let sep = dist(&x, &x0);
            if sep < 1e-9 {
                continue;
            }
            let g = green(&b, &x, &x0).unwrap();
            assert!(1.0 / g <= gr.b_const * (1.0 + 1e-9), "B violated: g={g}");
            assert!(
                cd / sep / g <= gr.k_const * (1.0 + 1e-9),
                "K violated: sep={sep} g={g}"
            );
        }
    }

    #[test]
    fn green_ratio_constants_d2() {
        let b = BallDomain::unit(2);
        let c0 = 0.75;
        let gr = green_ratio_constants(&b, c0).unwrap();
        let cd = c_d(2);
        let mut rng = substream(78, 0);
        for _ in 0..50_000 {
            let x = b.sample_concentric(c0, &mut rng);
            let x0 = b.sample_concentric(c0, &mut rng);
            let sep = dist(&x, &x0);
            if sep < 1e-9 {
                continue;
            }
            let g = green(&b, &x, &x0).unwrap();
            assert!(1.0 / g <= gr.b_const * (1.0 + 1e-9));
            assert!(cd * (1.0 / sep).ln() / g <= gr.k_const * (1.0 + 1e-9));
        }
    }

    #[test]
    fn uniform_ball_potential_matches_quadrature() {
        // (1/2) Lap of the d=3 interior form must be -1 after multiplying c_d:
        // direct check of values by radial quadrature instead.
        let r = 0.3;
        for (d, s) in [(3usize, 0.1), (3, 0.5), (2, 0.15), (2, 0.6)] {
            let exact = uniform_ball_potential(d, r, s);
            // radial-shell quadrature around the ball center
            let n = 4000;
            let mut acc = 0.0;
            for i in 0..n {
                let rr = r * (i as f64 + 0.5) / n as f64;
                let shell = unit_sphere_area(d) * rr.powi(d as i32 - 1) * (r / n as f64);
                // spherical mean of |x-y|^{2-d} over |y|=rr at distance s:
                // for d=3 it is max(s,rr)^{-1}; for d=2 it is log(1/max(s,rr)).
                let mean = if d == 2 {
                    (1.0 / s.max(rr)).ln()
                } else {
                    1.0 / s.max(rr)
                };
                acc += shell * mean;
            }
            assert_relative_eq!(acc, exact, max_relative = 1e-5);
        }
    }
}
