pub mod cli;
pub mod config;
pub mod fields;
pub mod hall_solver;
pub mod ledger;
pub mod limit_harness;
pub mod nsm_solver;
pub mod ohm_closure;
pub mod presets;
pub mod verify;

pub use nsm_core;

// Field operations allocate multi-megabyte buffers at a high rate; a
// caching allocator avoids re-faulting those pages on every operation.
#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;
