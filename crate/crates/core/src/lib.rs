#![no_std]
extern crate alloc;

pub mod asymptotics;
pub mod borromean;
pub mod corpus;
pub mod cyclotomic;
pub mod diagram;
pub mod error;
pub mod hypervol;
pub mod eval;
pub mod mpfix;
pub mod qholo;
pub mod qlaurent;
pub mod series;
pub mod statesum;

pub use error::{Error, ParseErrorKind, Result};
pub use eval::{ev_n, eval_complex, EvalPoint, Evaluation};
pub use qlaurent::{qbinom, qfact, qfalling, qint, QLaurent};
pub use series::{BiSeries, QSeries};
