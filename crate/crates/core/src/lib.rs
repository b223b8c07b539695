//! Numerical toolkit for the moment densities of super-Brownian exit measures
//! on balls.
//!
//! The moment density `rho(x, z_1, ..., z_n)` of the exit measure from a ball
//! `D` is defined recursively: for a single boundary point it is the Poisson
//! kernel `k(x, z)`, and for larger configurations it is a sum of Green-kernel
//! integrals of products of lower-order densities over ordered subset splits.
//! This crate evaluates those densities with graded singular quadrature,
//! cross-checks them with an unbiased Monte Carlo estimator and a
//! branching-particle exit-measure simulator, and produces the explicit
//! constant pipeline (Harnack constant, 3-G constant, Green-ratio constants,
//! and the comparison constant `lambda`) that certifies the exponential
//! comparison inequality `rho(x, z_A) <= lambda^n rho(x0, z_A)` on compacts.
//!
//! Modules follow the pipeline:
//!
//! - [`domain`]: ball domains, points, discrete measures, seeded sampling
//! - [`kernels`]: closed-form Green and Poisson kernels plus classical
//!   constants (`phi`, `theta`, `K`, `B`)
//! - [`quadrature`]: graded volume/boundary grids and the singular Green
//!   operator application
//! - [`moments`]: the subset-recursion dynamic program, off-grid evaluation,
//!   Monte Carlo oracle, set partitions, and moment formulas
//! - [`simulator`]: branching Brownian particles, exit measures, moment
//!   estimation, branch-rate calibration
//! - [`harnack`]: compact nests, the constructive constant ledger, and the
//!   empirical ratio study
//! - [`cli`]: configuration-driven command entry points used by the
//!   `supermoment` binary

pub mod cli;
pub mod domain;
pub mod error;
pub mod harnack;
pub mod kernels;
pub mod moments;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod simulator;

pub use domain::{BallDomain, DiscreteMeasure};
pub use error::{Error, Result};
