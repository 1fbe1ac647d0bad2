//! Library surface of the command line tool: the expression language, its
//! elaboration into diagram morphisms, display names and SVG rendering.

pub mod describe;
pub mod elaborate;
pub mod parser;
pub mod render;
