//! Seven computational-geometry problems solved by reduction to classical
//! graph algorithms, each paired with a brute-force oracle.

pub mod art_gallery;
pub mod bend_min;
pub mod clustering;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod parametric;
pub mod rational;
pub mod rect_partition;
pub mod star;
pub mod strip;
pub mod svg;
pub mod tiling;
