use crate::error::{GeometryError, Result};

/// Mixed absolute/relative comparison used for every "equals" claim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rtol: f64, atol: f64) -> Result<Self> {
        if !(rtol.is_finite() && atol.is_finite() && rtol >= 0.0 && atol >= 0.0) {
            return Err(GeometryError::InvalidTolerance { rtol, atol });
        }
        Ok(Self { rtol, atol })
    }

    /// `|x - y| <= atol + rtol * max(|x|, |y|)`.
    pub fn close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.atol + self.rtol * x.abs().max(y.abs())
    }

    /// Closeness with an explicit magnitude, for quantities that should vanish.
    pub fn close_scaled(&self, x: f64, y: f64, scale: f64) -> bool {
        (x - y).abs() <= self.atol + self.rtol * scale.abs()
    }

    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        self.close_scaled(x, 0.0, scale)
    }
}

/// Relative difference `|x - y| / max(|x|, |y|, floor)`.
pub fn relative_error(x: f64, y: f64, floor: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let t = Tolerance::default();
        assert_eq!(t.rtol, 1e-9);
        assert_eq!(t.atol, 1e-12);
    }

    #[test]
    fn predicate_is_symmetric_and_mixed() {
        let t = Tolerance::default();
        assert!(t.close(1.0, 1.0 + 5e-10));
        assert!(t.close(1.0 + 5e-10, 1.0));
        assert!(!t.close(1.0, 1.0 + 5e-9));
        assert!(t.close(0.0, 5e-13));
        assert!(!t.close(0.0, 5e-12));
    }

    #[test]
    fn rejects_negative() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
        assert!(Tolerance::new(0.0, 0.0).is_ok());
    }
}
