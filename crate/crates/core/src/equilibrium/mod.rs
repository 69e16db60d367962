//! Classical mixed-strategy solutions and quantum saddle-point search.

mod classical;
mod quantum;

pub use classical::{solve_classical, MixedStrategyPair};
pub use quantum::{
    analyze, analyze_half, analyze_one, best_response_alice_half, best_response_alice_one, best_response_bob_half,
    best_response_bob_one, residual_half, residual_one, saddle_search_half, saddle_search_one, BornGame,
    EquilibriumResult, SaddleAnalysis, SearchOptions,
};
