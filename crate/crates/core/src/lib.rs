//! Error-bounded sampling of the weight simplex for linearly scalarized
//! multi-objective optimization.
//!
//! For a problem with `n` objectives, the optimal cost `u(w) = min_s w · f(s)`
//! is concave in the weight `w`. [`sampler::mrps_sample`] exploits this to
//! choose a small set of weights Ω together with a certified upper bound on
//! the regret of answering any weight with the best solution in Ω.
//!
//! ```
//! use mrps::problems::TabularProblem;
//! use mrps::sampler::mrps_sample;
//!
//! let p = TabularProblem::new(vec![
//!     vec![1.0, 4.0].into(),
//!     vec![4.0, 1.0].into(),
//!     vec![2.0, 2.0].into(),
//! ])
//! .unwrap();
//! let report = mrps_sample(&p, 3).unwrap();
//! assert_eq!(report.omega.len(), 3);
//! assert!((report.certified_bound.unwrap() - 1.0 / 3.0).abs() < 1e-12);
//! ```

pub mod experiment;
pub mod learning;
mod linalg;
pub mod lp;
pub mod metrics;
pub mod neighborhood;
pub mod problems;
pub mod sample;
pub mod sampler;
pub mod tolerance;
pub mod weight;

pub use neighborhood::Neighborhood;
pub use problems::Solver;
pub use sample::{Sample, SampleSet, Solution};
pub use sampler::SamplerReport;
pub use weight::{FeatureVector, WeightVector};
