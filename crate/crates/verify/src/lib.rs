//! Holds the `acceptance` test target, which prints one line per criterion
//! of the verification suites. Run it with `cargo test -p tiltstab-verify`.
