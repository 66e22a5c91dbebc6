//! Exact computations with nilpotent orbits in `sl(m|n)` and `osp(m|2n)`:
//! pyramids, centralizers, centres and their reductive quotients.

pub mod exactlin;
pub mod partitions;
pub mod pyramids;
pub mod superalgebra;
pub mod nilpotent;
pub mod centralizer;
pub mod centre;
pub mod diagrams;
pub mod theorems;
