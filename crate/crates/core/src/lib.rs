// SPDX-License-Identifier: Apache-2.0

pub mod error;
pub mod exactmath;
pub mod gk3;
pub mod lattice;
pub mod mirror;
pub mod mukai;
pub mod par;
pub mod rigidity;

pub use error::{Error, Result};
pub use par::Execution;
