//! The 139-problem Wernick list: `idx|P1,P2,P3|status|note`, one problem per line.

use std::fmt::Write;

use crate::label::PointLabel;
use crate::solver::{ProblemSpec, Status};

pub const WERNICK_CATALOG: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub index: u32,
    pub given: Vec<PointLabel>,
    pub status: Status,
    pub note: String,
}

impl CatalogEntry {
    pub fn problem(&self) -> ProblemSpec {
        ProblemSpec::new(self.index.to_string(), &self.given).with_status(self.status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("catalog line {line}: {msg}")]
pub struct CatalogError {
    pub line: usize,
    pub msg: String,
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| CatalogError { line, msg };
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.splitn(4, '|').collect();
        if fields.len() < 3 {
            return Err(err("expected idx|points|status|note".into()));
        }
        let index = fields[0].trim().parse().map_err(|_| err(format!("bad index `{}`", fields[0])))?;
        let given = fields[1]
            .split(',')
            .map(|p| p.trim().parse::<PointLabel>().map_err(|_| err(format!("unknown point `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let status = Status::from_symbol(fields[2].trim()).ok_or_else(|| err(format!("bad status `{}`", fields[2])))?;
        let note = fields.get(3).map_or("", |s| s.trim()).to_string();
        out.push(CatalogEntry { index, given, status, note });
    }
    Ok(out)
}

pub fn serialize_catalog(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let pts: Vec<String> = e.given.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "{}|{}|{}|{}", e.index, pts.join(","), e.status.symbol(), e.note);
    }
    s
}

/// The shipped catalog.
pub fn wernick_catalog() -> Vec<CatalogEntry> {
    parse_catalog(WERNICK_CATALOG).expect("shipped catalog parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_round_trips() {
        let c = wernick_catalog();
        assert_eq!(c.len(), 139);
        assert_eq!(parse_catalog(&serialize_catalog(&c)).unwrap(), c);
        let count = |s| c.iter().filter(|e| e.status == s).count();
        assert_eq!(count(Status::S), 72);
        assert_eq!(count(Status::U), 26);
        assert_eq!(count(Status::R), 3);
        assert_eq!(count(Status::L), 23);
        assert_eq!(count(Status::Unknown), 15);
        assert_eq!(c[6].given, vec![PointLabel::A, PointLabel::B, PointLabel::H]);
    }

    #[test]
    fn bad_lines_are_located() {
        let e = parse_catalog("1|A,B,O|S|\n2|A,B,Zz|S|\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_catalog("x|A,B,O|S|").is_err());
    }
}
