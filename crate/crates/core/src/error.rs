use thiserror::Error;

/// Invalid input to one of the closed-form operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("parameter `{name}` has invalid value {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("phase-space point ({q}, {p}) is not finite")]
    NonFinitePoint { q: f64, p: f64 },
    #[error("time {0} is not finite")]
    NonFiniteTime(f64),
}
