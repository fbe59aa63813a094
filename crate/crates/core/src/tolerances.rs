/// Numerical thresholds shared by the kernel. Every field can be overridden.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Lightlike band, scaled by `1 + max component^2`.
    pub causal: f64,
    /// Curvature floor below which Frenet frames are withheld.
    pub curv: f64,
    /// Newton refinement target for isophote vertices.
    pub refine: f64,
    /// Base of the verification band `verify * (1 + |c|)`.
    pub verify: f64,
    /// Characterization constancy, relative to `1 + |mean|`.
    pub constancy: f64,
    pub axis: f64,
    /// Gradient norm below which a point counts as critical.
    pub grad: f64,
    /// Bound on `max |k_g|` for the geodesic verdict.
    pub geodesic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            causal: 1e-9,
            curv: 1e-8,
            refine: 1e-10,
            verify: 1e-8,
            constancy: 1e-6,
            axis: 1e-4,
            grad: 1e-12,
            geodesic: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn verify_band(&self, c: f64) -> f64 {
        self.verify * (1.0 + c.abs())
    }
}
