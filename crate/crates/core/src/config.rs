/// Numerical settings shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    /// Tolerance for equalities of complex numbers, relative to the scale of the data.
    pub tol: f64,
    /// Scale used when searching for integer relations among real numbers.
    pub denom_bound: f64,
    /// Number of theta-series terms used for sigma functions.
    pub sigma_terms: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { tol: 1e-9, denom_bound: 1e6, sigma_terms: 20 }
    }
}

impl Config {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}
