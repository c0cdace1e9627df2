use num_complex::Complex64;

/// Mixed relative/absolute float comparison used by every oracle check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-14,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    pub fn close(&self, lhs: f64, rhs: f64) -> bool {
        let scale = lhs.abs().max(rhs.abs());
        (lhs - rhs).abs() <= self.abs.max(self.rel * scale)
    }

    pub fn close_complex(&self, lhs: Complex64, rhs: Complex64) -> bool {
        let scale = lhs.norm().max(rhs.norm());
        (lhs - rhs).norm() <= self.abs.max(self.rel * scale)
    }
}
