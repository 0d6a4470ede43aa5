//! Exact solving, constructive adversaries and certified bounds for the hat
//! guessing game on graphs.
//!
//! Players sit on the vertices of a graph, see the hats of their neighbours
//! and each guess their own hat colour (once, or twice in the two-guess
//! variant). The hat guessing number `HG(G)` is the largest number of colours
//! for which the players can guarantee a correct guess.
//!
//! * [`graph`]: graphs and the structural algorithms the constructions use.
//! * [`game`]: budgets, assignments and guess tables.
//! * [`solver`]: exact players-win decision and `HG` / `HG_2` sweeps.
//! * [`constructions`]: adversary oracles that turn any strategy into a
//!   defeating hat assignment.
//! * [`bounds`]: exact and log-domain evaluation of the numeric bounds.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod game;
pub mod graph;
pub mod guards;
pub mod rng;
pub mod solver;

#[cfg(any(test, feature = "test-oracles"))]
pub mod reference;

pub use error::{BoundsError, ConstructionError, GameError, GraphError, ParseError};
pub use game::{Color, ColorBudget, GuessCount, GuessSet, HatAssignment, Strategy};
pub use graph::{Graph, RootedTree, Vertex};
pub use guards::Guards;
