//! Regenerates the bundled fixtures file:
//! `cargo run --example emit_fixtures > fixtures/fixtures.cat`

use genus_core::catalog;

fn main() {
    print!("{}", catalog::render(&catalog::builtin_catalog()));
}
