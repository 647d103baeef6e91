//! The bundled catalog of the 139 Wernick problems: counts by status and the
//! rows of one status.
//!
//!     cargo run --example list_catalog -- U

use wernick::catalog::{parse_catalog, serialize_catalog, wernick_catalog};
use wernick::solver::Status;

fn main() {
    let catalog = wernick_catalog();
    for s in [Status::S, Status::U, Status::R, Status::L, Status::Unknown] {
        println!("{}: {}", s.symbol(), catalog.iter().filter(|e| e.status == s).count());
    }
    let text = serialize_catalog(&catalog);
    assert_eq!(parse_catalog(&text).unwrap(), catalog);

    let want = std::env::args().nth(1).map(|s| Status::from_symbol(&s).expect("status S, U, R, L or ?"));
    for e in catalog.iter().filter(|e| want == Some(e.status)) {
        let pts: Vec<String> = e.given.iter().map(|p| p.to_string()).collect();
        println!("{:>3}  {}", e.index, pts.join(", "));
    }
}
