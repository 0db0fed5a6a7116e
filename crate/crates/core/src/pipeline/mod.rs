//! Batch processing: ingestion, enumeration, filtering, analysis, caching
//! and table rendering.

pub mod analyze;
pub mod batch;
pub mod cache;
pub mod enumerate;
pub mod filter;
pub mod ingest;
pub mod report;
