//! Five-way frequency split used for the Lorentz-force analysis.
//!
//! ```text
//! ll  = [0, R]
//! lt  = (R, 1/(2K beta eta^2 gamma)]
//! mid = (1/(2K beta eta^2 gamma), K/(2 beta eta^2 gamma)]
//! gt  = (K/(2 beta eta^2 gamma), Phi]
//! gg  = (Phi, inf),   Phi = phi(gamma/delta)
//! ```

use crate::params::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    Ll,
    Lt,
    Mid,
    Gt,
    Gg,
}

impl Band {
    pub const ALL: [Band; 5] = [Band::Ll, Band::Lt, Band::Mid, Band::Gt, Band::Gg];

    pub fn name(&self) -> &'static str {
        match self {
            Band::Ll => "ll",
            Band::Lt => "lt",
            Band::Mid => "mid",
            Band::Gt => "gt",
            Band::Gg => "gg",
        }
    }

    pub fn index(&self) -> usize {
        *self as usize
    }
}

/// The four right endpoints `[R, 1/(2K beta eta^2 gamma), K/(2 beta eta^2 gamma), Phi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandThresholds(pub [f64; 4]);

impl BandThresholds {
    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

/// Band thresholds derived from a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSpec {
    /// As computed from the parameters; may be out of order for large `gamma`.
    pub raw: BandThresholds,
}

impl BandSpec {
    pub fn from_params(p: &PhysParams) -> Self {
        let shell = p.shell_radius();
        BandSpec { raw: BandThresholds([p.band_r, shell / p.band_k, shell * p.band_k, p.high_cutoff()]) }
    }

    pub fn is_ordered(&self) -> bool {
        self.raw.is_strictly_increasing()
    }

    /// Thresholds made monotone by a running maximum, so that out-of-order
    /// bands collapse to empty sets and the partition stays exact.
    pub fn clamped(&self) -> BandThresholds {
        let mut t = self.raw.0;
        for i in 1..4 {
            if t[i] < t[i - 1] {
                t[i] = t[i - 1];
            }
        }
        BandThresholds(t)
    }

    /// Band of a wavevector of norm `k` under `thresholds` (closed right
    /// endpoints).
    #[inline]
    pub fn classify_with(thresholds: &BandThresholds, k: f64) -> Band {
        let t = &thresholds.0;
        if k <= t[0] {
            Band::Ll
        } else if k <= t[1] {
            Band::Lt
        } else if k <= t[2] {
            Band::Mid
        } else if k <= t[3] {
            Band::Gt
        } else {
            Band::Gg
        }
    }

    pub fn classify(&self, k: f64) -> Band {
        Self::classify_with(&self.clamped(), k)
    }
}
