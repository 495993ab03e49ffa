//! The algebra and corpus file formats and the reports printed by the command line.

mod algebra_file;
mod corpus;
mod report;

pub use algebra_file::{parse_algebra_file, parse_class, write_algebra_file, NamedAlgebra};
pub use corpus::{parse_corpus, write_corpus};
pub use report::{
    verify_verdict_report, ClassificationReport, FalsifyingReport, FreeCounterexampleReport, FreeReport,
    IdempotentReport, MinimalityReport, RefutationReport, VerdictReport,
};
