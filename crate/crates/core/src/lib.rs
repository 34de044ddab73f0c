pub mod analysis;
pub mod cli;
pub mod conversion;
pub mod numeric;
pub mod refinement;
pub mod scheme;
pub mod verify;
