//! Exact discrete fuzzy quantities and extension-principle arithmetic.

mod belief;
mod duration;
mod quantity;

pub use belief::{Belief, BeliefError, BELIEF_FRAC_DIGITS, BELIEF_ONE_RAW, DEFAULT_BELIEF_PRECISION};
pub use duration::{Duration, DurationError};
pub use quantity::{parse_quantity_literal, DiscreteFuzzyQuantity, QuantityError};
pub(crate) use quantity::is_zero_literal;
