use alloc::string::String;

/// One verified identity: a residual compared against a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// Passes iff `residual ≤ tol`. A NaN residual never passes.
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tol,
            pass: residual <= tol,
        }
    }

    /// A record for a check that could not be evaluated at all.
    pub fn failed(name: impl Into<String>, tol: f64) -> Self {
        Check {
            name: name.into(),
            residual: f64::INFINITY,
            tol,
            pass: false,
        }
    }
}
