//! File formats, parallel drivers and the verification suite for braced
//! triangulations, on top of [`braced_core`].

pub use braced_core;

pub mod io;
pub mod oracle;
pub mod parallel;
pub mod verify;
