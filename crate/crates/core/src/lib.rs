//! Detection toolkit for replay-injected IEEE 1722 stream AVTPDUs on
//! automotive Ethernet.

pub mod avtp;
pub mod nn;
pub mod parallel;

pub use avtp::{FrameKind, Label, RawRecord, StreamAvtpdu};
