//! Exact computations around the stabilization of elliptic terms for the
//! metaplectic cover of Sp(2n): endoscopic data (n′, n″), semisimple class
//! parameters, the equi-singular correspondence and its (δ, κ) bijection,
//! B/C root-system identities, Tate motives, and local sign factors over ℚ.

pub mod classparam;
pub mod endoscopy;
pub mod exactnum;
pub mod localsym;
pub mod motive;
pub mod oracle;
pub mod rootsys;
pub mod verify;
