mod bits;
pub mod board;
pub mod catalog;
pub mod graph;
pub mod semitrans;
pub mod verify;
pub mod word;
