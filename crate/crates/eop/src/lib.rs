pub mod error;
pub mod exact;
pub mod model;
pub mod orthopoly;
pub mod diffop;
pub mod hp;
