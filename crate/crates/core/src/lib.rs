//! Spectral expansions and Riesz means on the unit sphere `S^N`.
//!
//! The Laplace–Beltrami operator on `S^N` has eigenvalues `λ_k = k(k+N-1)`.
//! Its eigenspaces are spanned by spherical harmonics of degree `k`. A
//! function or distribution `f` is expanded degree by degree, and its Riesz
//! means
//!
//! ```text
//! E_n^α f(x) = Σ_{k ≤ n} (1 - λ_k/λ_n)_+^α Σ_j Y_j^k(x) ⟨f, Y_j^k⟩
//! ```
//!
//! smooth the partial sums. When `f ∈ H_2^{-l}` vanishes on a domain `V` and
//! `α ≥ l + (N-1)/2`, these means go to zero uniformly on compacts inside
//! `V`. This crate computes every piece of that statement and measures the
//! rates.
//!
//! | Module | What it provides |
//! |--------|------------------|
//! | [`special_fn`] | Gegenbauer/Legendre polynomials, Gauss–Legendre rules, `ω_N` |
//! | [`sphere_geom`] | points, caps, band integrals, grids |
//! | [`spectrum`] | eigenvalues, multiplicities, zonal and Riesz kernels, kernel norms |
//! | [`harmonics_s2`] | explicit real harmonics and transforms on `S^2` |
//! | [`distributions`] | Dirac masses, `(I-Δ)^m` roughening, Sobolev norms |
//! | [`riesz`] | Riesz means, decay fits and experiment drivers |
//! | [`cli`] | configuration, report emission and the `sphere-riesz` front end |
//!
//! Runnable walkthroughs live in `examples/` of this crate.

pub mod cli;
pub mod distributions;
pub mod error;
pub mod harmonics_s2;
pub mod riesz;
pub mod special_fn;
pub mod spectrum;
pub mod sphere_geom;

pub use error::{Error, Result};
pub use sphere_geom::{Cap, Region, SpherePoint};
