//! Holds the `acceptance` test target; run it with
//! `cargo test -p mimp-acceptance --test acceptance`.
