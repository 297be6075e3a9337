//! Named initial data.

use std::fmt;
use std::str::FromStr;

use nsm_core::PhysParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fields::{curl, leray_project, random, FieldError, Grid, SpectralField};
use crate::ohm_closure::electric_field_closure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// `u = A (sin y, sin z, sin x)`, `B = A (sin z, sin x, sin y)`.
    Reference,
    /// `u = 0`, `B = A (0, sin x + cos 2x / 2, sin 3x / 3)`: the Hall and
    /// induction terms vanish and `B` decays by pure diffusion.
    MagneticOnly,
    /// Seeded random solenoidal fields on `max |xi_i| <= 3`, each of
    /// `L^2` norm `A`.
    Random,
    Zero,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Reference, Preset::MagneticOnly, Preset::Random, Preset::Zero];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Reference => "reference",
            Preset::MagneticOnly => "magnetic_only",
            Preset::Random => "random",
            Preset::Zero => "zero",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E0Policy {
    Zero,
    /// `E0 = P(-u x B + beta eta^2 j + eta j x B)` with `j = curl B`.
    WellPrepared,
}

impl E0Policy {
    pub fn name(&self) -> &'static str {
        match self {
            E0Policy::Zero => "zero",
            E0Policy::WellPrepared => "well_prepared",
        }
    }
}

impl FromStr for E0Policy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zero" => Ok(E0Policy::Zero),
            "well_prepared" => Ok(E0Policy::WellPrepared),
            _ => Err(format!("unknown E0 policy `{s}`")),
        }
    }
}

/// Divergence-free `(u0, B0)` for a preset.
pub fn initial_fields(
    grid: &Grid,
    preset: Preset,
    amplitude: f64,
    seed: u64,
) -> (SpectralField, SpectralField) {
    let a = amplitude;
    let (u, b) = match preset {
        Preset::Reference => (
            SpectralField::from_fn(grid, |x, y, z| [a * y.sin(), a * z.sin(), a * x.sin()]),
            SpectralField::from_fn(grid, |x, y, z| [a * z.sin(), a * x.sin(), a * y.sin()]),
        ),
        Preset::MagneticOnly => (
            SpectralField::zeros(grid),
            SpectralField::from_fn(grid, |x, _, _| {
                [0.0, a * (x.sin() + 0.5 * (2.0 * x).cos()), a * (3.0 * x).sin() / 3.0]
            }),
        ),
        Preset::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random::solenoidal(grid, 3, a, &mut rng);
            let b = random::solenoidal(grid, 3, a, &mut rng);
            (u, b)
        }
        Preset::Zero => (SpectralField::zeros(grid), SpectralField::zeros(grid)),
    };
    (leray_project(&u), leray_project(&b))
}

pub fn initial_electric_field(
    u: &SpectralField,
    b: &SpectralField,
    p: &PhysParams,
    policy: E0Policy,
) -> Result<SpectralField, FieldError> {
    match policy {
        E0Policy::Zero => Ok(SpectralField::zeros(&u.grid)),
        E0Policy::WellPrepared => electric_field_closure(u, b, &curl(b), p),
    }
}
