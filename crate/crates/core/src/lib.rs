pub mod diagrams;
pub mod hecke;
pub mod par;
pub mod paths;
pub mod qfunc;
pub mod render;
pub mod simple;
pub mod tile;
pub mod tree;
pub mod verify;
