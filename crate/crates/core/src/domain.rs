//! Ball domains and the measures living on them.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Surface area of the unit sphere `S^{d-1}`, `2 pi^{d/2} / Gamma(d/2)`.
///
/// `Gamma` at integer and half-integer arguments is evaluated exactly by
/// recurrence, so no special-function dependency is needed.
pub fn unit_sphere_area(d: usize) -> f64 {
    assert!(d >= 2, "dimension must be >= 2");
    let half = d as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma_half(d)
}

/// `Gamma(d/2)` for integer `d >= 1`.
fn gamma_half(d: usize) -> f64 {
    if d % 2 == 0 {
        // Gamma(k) = (k-1)!
        let k = d / 2;
        (1..k).map(|i| i as f64).product()
    } else {
        // Gamma(k + 1/2) = sqrt(pi) (2k)! / (4^k k!)
        let k = (d - 1) / 2;
        let mut v = std::f64::consts::PI.sqrt();
        for i in 0..k {
            v *= i as f64 + 0.5;
        }
        v
    }
}

/// The computational domain: an open ball in `R^d`, `d >= 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallDomain {
    d: usize,
    radius: f64,
    center: Vec<f64>,
}

impl BallDomain {
    pub fn new(d: usize, radius: f64, center: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("dimension {d} < 2")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("radius {radius} must be positive")));
        }
        if center.len() != d {
            return Err(Error::invalid(format!(
                "center has {} coordinates, expected {d}",
                center.len()
            )));
        }
        Ok(Self { d, radius, center })
    }

    /// Unit ball centered at the origin (the default instance).
    pub fn unit(d: usize) -> Self {
        Self::new(d, 1.0, vec![0.0; d]).expect("unit ball is always valid")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Surface area of the boundary sphere.
    pub fn surface_area(&self) -> f64 {
        unit_sphere_area(self.d) * self.radius.powi(self.d as i32 - 1)
    }

    pub fn volume(&self) -> f64 {
        unit_sphere_area(self.d) / self.d as f64 * self.radius.powi(self.d as i32)
    }

    /// Distance from the center, i.e. `|x - c|`.
    pub fn radial(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.d);
        x.iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn dist_to_boundary(&self, x: &[f64]) -> f64 {
        self.radius - self.radial(x)
    }

    pub fn is_interior(&self, x: &[f64]) -> bool {
        x.len() == self.d && self.radial(x) < self.radius
    }

    /// Boundary membership up to a relative tolerance.
    pub fn is_on_boundary(&self, z: &[f64]) -> bool {
        z.len() == self.d && (self.radial(z) - self.radius).abs() <= 1e-9 * self.radius
    }

    pub fn require_interior(&self, x: &[f64], what: &str) -> Result<()> {
        if !self.is_interior(x) {
            return Err(Error::domain(format!(
                "{what} {x:?} is not strictly interior to the ball (radius {}, center {:?})",
                self.radius, self.center
            )));
        }
        Ok(())
    }

    pub fn require_boundary(&self, z: &[f64], what: &str) -> Result<()> {
        if !self.is_on_boundary(z) {
            return Err(Error::domain(format!(
                "{what} {z:?} is not on the boundary sphere (radius {}, center {:?})",
                self.radius, self.center
            )));
        }
        Ok(())
    }

    /// Coordinates scaled to the unit ball, `(x - c)/R`.
    pub fn to_unit(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) / self.radius)
            .collect()
    }

    /// Uniform point in the open ball.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let dir = sample_unit_vector(self.d, rng);
        let u: f64 = rng.gen_range(0.0..1.0f64);
        let r = self.radius * u.powf(1.0 / self.d as f64);
        dir.iter()
            .zip(&self.center)
            .map(|(u, c)| c + r * u)
            .collect()
    }

    /// Uniform point in the concentric open ball of radius `a`.
    pub fn sample_concentric<R: Rng>(&self, a: f64, rng: &mut R) -> Vec<f64> {
        let dir = sample_unit_vector(self.d, rng);
        let u: f64 = rng.gen_range(0.0..1.0f64);
        let r = a * u.powf(1.0 / self.d as f64);
        dir.iter()
            .zip(&self.center)
            .map(|(u, c)| c + r * u)
            .collect()
    }

    /// Uniform point on the boundary sphere.
    pub fn sample_boundary<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let dir = sample_unit_vector(self.d, rng);
        dir.iter()
            .zip(&self.center)
            .map(|(u, c)| c + self.radius * u)
            .collect()
    }

    /// Exact projection of a point onto the boundary sphere.
    pub fn project_to_boundary(&self, x: &[f64]) -> Vec<f64> {
        let r = self.radial(x);
        if r == 0.0 {
            let mut z = self.center.clone();
            z[0] += self.radius;
            return z;
        }
        x.iter()
            .zip(&self.center)
            .map(|(a, c)| c + (a - c) * self.radius / r)
            .collect()
    }
}

/// Uniform direction on `S^{d-1}` via normalized Gaussians.
pub fn sample_unit_vector<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|a| a / n).collect();
        }
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite atomic measure supported strictly inside the domain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    atoms: Vec<(Vec<f64>, f64)>,
}

impl DiscreteMeasure {
    pub fn new(domain: &BallDomain, atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::invalid("measure needs at least one atom"));
        }
        for (x, m) in &atoms {
            domain.require_interior(x, "measure atom")?;
            if !(*m > 0.0) || !m.is_finite() {
                return Err(Error::invalid(format!("atom mass {m} must be positive")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn point_mass(domain: &BallDomain, x: Vec<f64>, mass: f64) -> Result<Self> {
        Self::new(domain, vec![(x, mass)])
    }

    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, m)| m).sum()
    }
}
