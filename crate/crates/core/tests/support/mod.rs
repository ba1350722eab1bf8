#![allow(dead_code)]

pub mod series;
