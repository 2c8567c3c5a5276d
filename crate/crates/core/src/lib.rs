//! Integrated information on small discrete networks.
//!
//! Computes the state-dependent and averaged φ (effective
//! information, minimum information partition) and closed-form lower and
//! upper bounds on ψ, an irreducibility measure built on partial information
//! decomposition, for deterministic threshold networks.
//!
//! ```
//! use irrlab::{corpus, net::uniform_joint, phi::{phi_of_state, EiMode}};
//!
//! let or_get = corpus::network("OR-GET").map;
//! let joint = uniform_joint(&or_get);
//! let phi = phi_of_state(&joint, 0b10, EiMode::Standard).unwrap();
//! assert!((phi - 6f64.log2()).abs() < 1e-12);
//! ```

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod dist;
pub mod error;
pub mod net;
pub mod parts;
pub mod phi;
pub mod psi;
pub mod report;
pub mod repro;

pub use dist::{Dist, JointDist, NodeSet, StateSpace};
pub use error::{Error, Result};
pub use net::{NetworkSpec, Threshold, TransitionMap};
pub use parts::Partition;
pub use phi::EiMode;
pub use psi::PsiBounds;
