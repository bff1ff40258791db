//! Command-line front end (placeholder while the engine is built).

pub fn run() -> i32 {
    eprintln!("not yet wired");
    2
}
