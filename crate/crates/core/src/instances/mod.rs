//! Instance generators: random graphs with assumption guarantees, minimax
//! search problems and pursuit-evasion grids.

mod pursuit;
mod random;
mod search;

pub use pursuit::{gen_pursuit, Cell, PursuitInstance, PursuitSpec};
pub use random::{gen_random, has_zero_cycle, GenSpec};
pub use search::{gen_search, SearchSpec};
