//! Numerical comparison policy shared by every module.

/// Two-sided comparison tolerance: a quantity of magnitude `scale` is treated
/// as zero when it is below `abs_eps + rel_eps * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-12, rel_eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    /// Threshold below which a value is indistinguishable from zero at the
    /// given scale.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps + self.rel_eps * scale.abs()
    }

    /// True when `value` is zero up to the tolerance at the given scale.
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.threshold(scale)
    }
}
