//! Exact verification toolkit for finite abelian subgroups of compact Lie groups.

pub mod clifford;
pub mod catalog;
pub mod codes;
pub mod cyclo;
pub mod fingrp;
pub mod linalg;
pub mod matgrp;
pub mod octonion;
pub mod perm;
pub mod rootdata;
pub mod snf;
pub mod verify;

pub use clifford::{CliffElt, CliffError, PinClass, Word};
pub use cyclo::{CycloElt, CycloError};
pub use fingrp::{Ambient, FinSubgroup, Fingerprint, GroupError, GrpElt, Projection, Verdict};
pub use linalg::Mat;
pub use perm::{Perm, PermGroup};
