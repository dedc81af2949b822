/// Numerical thresholds shared by every predicate and solver.
///
/// All values are relative; each predicate documents what it is relative to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Collinearity and incidence band, relative to the product of the input
    /// magnitudes.
    pub incidence: f64,
    /// Points whose `|w|` is below this fraction of their norm are at infinity.
    pub infinity: f64,
    /// Equality of `|β|` magnitudes, relative to the largest one.
    pub magnitude_equality: f64,
    /// Eigenvalues below this fraction of the spectral radius count as zero.
    pub rank: f64,
    /// Equality of pencil eigenvalues, relative to the larger of the pair.
    pub eigenvalue_equality: f64,
    /// Normalized incidence/tangency residual accepted by certification.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            incidence: 1e-10,
            infinity: 1e-12,
            magnitude_equality: 1e-8,
            rank: 1e-9,
            eigenvalue_equality: 1e-9,
            residual: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_incidence(mut self, incidence: f64) -> Self {
        self.incidence = incidence;
        self
    }
}
