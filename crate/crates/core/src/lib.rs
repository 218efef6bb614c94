//! Engine for pre- and post-selected quantum systems and the counterfactual
//! claims made about them.
//!
//! The crate has three layers:
//!
//! - [`quantum`] and [`abl`]: finite-dimensional states, observables, Born
//!   probabilities, and the ABL conditional-probability rule with its derived
//!   quantities (post-selection odds, measurement disturbance,
//!   probability-1 "elements of reality" detection).
//! - [`ensemble`]: seeded, reproducibly parallel Monte Carlo simulation of
//!   pre- and post-selected ensembles, for checking the rule in its valid,
//!   non-counterfactual domain (the intermediate measurement actually
//!   performed).
//! - [`worlds`] and [`similarity`]: a finite sphere semantics for
//!   counterfactuals: world spaces generated from scenarios, cotenability,
//!   counterfactual evaluation, the similarity relations under which the
//!   counterfactual reading of the rule succeeds or fails, and the
//!   likelihood audit that disqualifies the stipulating relation.
//!
//! [`scenario`] loads declarative experiment descriptions and ships the
//! built-in presets; [`report`] composes the results into structured
//! reports.
//!
//! ```
//! use ablworlds_core::{abl_distribution, Observable, PureState, TwoStateVector};
//!
//! let pre = PureState::from_reals(&[1.0, 0.0]).unwrap();
//! let post = PureState::from_reals(&[1.0, 1.0]).unwrap();
//! let tsv = TwoStateVector::new(pre, post).unwrap();
//! let sigma_z = Observable::new(
//!     "sigma_z",
//!     vec![
//!         PureState::from_reals(&[1.0, 0.0]).unwrap(),
//!         PureState::from_reals(&[0.0, 1.0]).unwrap(),
//!     ],
//!     vec!["z+".into(), "z-".into()],
//! )
//! .unwrap();
//! let dist = abl_distribution(&tsv, &sigma_z).unwrap();
//! assert!((dist.probability("z+").unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod abl;
pub mod ensemble;
pub mod error;
pub mod quantum;
pub mod report;
pub mod scenario;
pub mod similarity;
pub mod worlds;

pub use abl::{
    abl_distribution, abl_probability, disturbance, elements_of_reality, postselection_prob,
    AblDistribution, TwoStateVector,
};
pub use ensemble::{compare_with_abl, run_trial, simulate_ensemble, EnsembleResult};
pub use error::{Error, Result};
pub use quantum::{
    born_probability, collapse, inner_product, random_basis, random_state, Observable, PureState,
};
pub use report::SimilarityKind;
pub use scenario::{parse_scenario, Scenario};
pub use similarity::{
    audit_spheres, likelihood_criterion, likelihood_spheres, natural_spheres, z_spheres,
    SimilarityAudit,
};
pub use worlds::{
    build_world_space, cotenable, eval_counterfactual, eval_via_auxiliary,
    eval_via_auxiliary_exhaustive, validate_spheres, CounterfactualVerdict, Proposition,
    SphereSystem, World,
};
