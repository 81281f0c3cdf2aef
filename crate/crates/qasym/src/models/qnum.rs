//! q-numbers: [x]_q = (q^x − q^{−x})/(q − q^{−1}) = sinh(γx)/sinh γ,
//! γ = log q.

use serde::Serialize;

/// Below this |γ| the sinh ratio switches to its γ→0 limit to avoid 0/0;
/// the truncation error is O(γ²x³), far under double precision for the
/// arguments used here.
pub const GAMMA_TAYLOR_CUTOFF: f64 = 1e-8;

/// Deformation parameter γ = log q of a q-deformed algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationParam {
    pub gamma: f64,
}

impl DeformationParam {
    pub fn new(gamma: f64) -> Self {
        debug_assert!(gamma.is_finite(), "deformation parameter must be finite");
        Self { gamma }
    }

    /// q = e^γ (always positive).
    pub fn q(self) -> f64 {
        self.gamma.exp()
    }
}

/// [x]_q = sinh(γx)/sinh γ; equals x in the γ → 0 limit.
pub fn q_number(x: f64, gamma: f64) -> f64 {
    if gamma.abs() < GAMMA_TAYLOR_CUTOFF {
        x
    } else {
        (gamma * x).sinh() / gamma.sinh()
    }
}
