//! Batch command-line front end. Placeholder while the library grows.

pub fn run(_args: Vec<String>) -> i32 {
    0
}
