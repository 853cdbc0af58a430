#![allow(clippy::needless_range_loop)]

pub mod caps;
pub mod cgroups;
pub mod checks;
pub mod error;
pub mod exec;
pub mod families;
pub mod fp;
pub mod geometry;
pub mod group;
pub mod input;
pub mod perm;
pub mod unionfind;

pub use caps::Caps;
pub use cgroups::{CGroup, CPlusGroup};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::{CosetGeometry, IncidenceSystem};
pub use group::{CosetAction, PermGroup};
pub use perm::Permutation;
