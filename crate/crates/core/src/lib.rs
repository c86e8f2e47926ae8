#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod diagram;
pub mod earclip;
pub mod exact;
pub mod mesh;
pub mod otherdims;
pub mod par;
pub mod polygon;
pub mod report;
pub mod seifert;
