//! Verification campaigns for triangle packing and hitting on small binary
//! matroids and cographic matroids, with JSON reports.

pub mod campaign;
pub mod graphs;
pub mod ratio;
pub mod report;

pub use campaign::{cographic_campaign, enumerate_rank4_campaign, sample_rank5_campaign, GraphSource};
pub use ratio::{ratio_check, RatioRecord, HAXELL};
pub use report::CampaignReport;
