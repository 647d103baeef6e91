//! Catalog text format.

use proptest::prelude::*;
use wernick::catalog::{parse_catalog, serialize_catalog, wernick_catalog, CatalogEntry};
use wernick::label::PointLabel;
use wernick::solver::Status;

fn entry() -> impl Strategy<Value = CatalogEntry> {
    let label = prop::sample::select(PointLabel::ALL.to_vec());
    let status = prop::sample::select(vec![Status::S, Status::U, Status::R, Status::L, Status::Unknown]);
    (1u32..1000, prop::collection::vec(label, 1..5), status, "[a-zA-Z0-9 ,.()]{0,20}")
        .prop_map(|(index, given, status, note)| CatalogEntry { index, given, status, note: note.trim().to_string() })
}

proptest! {
    #[test]
    fn round_trip(entries in prop::collection::vec(entry(), 0..20)) {
        prop_assert_eq!(parse_catalog(&serialize_catalog(&entries)).unwrap(), entries);
    }
}

#[test]
fn shipped_catalog() {
    let c = wernick_catalog();
    assert_eq!(c.len(), 139);
    assert!(c.iter().enumerate().all(|(i, e)| e.index as usize == i + 1 && e.given.len() == 3));
    assert!(c.iter().all(|e| e.given.iter().all(|p| p.is_wernick())));
    let blank: Vec<u32> = c.iter().filter(|e| e.status == Status::Unknown).map(|e| e.index).collect();
    assert_eq!(blank, [77, 78, 81, 113, 118, 119, 122, 123, 127, 128, 132, 134, 135, 136, 137]);
    assert_eq!(c[137].given, [PointLabel::Ta, PointLabel::Tb, PointLabel::Tc]);
    assert_eq!(c[137].status, Status::U);
}

#[test]
fn malformed_lines_report_their_number() {
    let e = parse_catalog("1|A,B,C|S|\n2|A,B,Q|S|\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(parse_catalog("1|A,B|X|\n").is_err());
    assert!(parse_catalog("x|A,B,C|S|\n").is_err());
}
