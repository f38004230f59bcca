//! The `.lat` file format: a line-oriented description of a finite carrier.
//!
//! ```text
//! # comment
//! object diamond
//! kind: dlat
//! elements: 0 a b 1
//! covers: 0<a 0<b a<1 b<1
//! ```
//!
//! Keys are `object` (no colon), `kind:`, `elements:`, `covers:`; lines are
//! whitespace-insensitive internally, `#` starts a comment, unknown keys are
//! rejected. `covers:` may repeat and accumulates; the others may not.

use std::fmt;

use latmon_core::lattice::{BoundedLattice, Carrier, CarrierRc};
use latmon_core::poset::FinitePoset;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatKind {
    Poset,
    MLat,
    Lattice,
    DLat,
}

impl LatKind {
    pub fn name(&self) -> &'static str {
        match self {
            LatKind::Poset => "poset",
            LatKind::MLat => "mlat",
            LatKind::Lattice => "lattice",
            LatKind::DLat => "dlat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatFile {
    pub name: String,
    pub kind: LatKind,
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug)]
pub enum LatError {
    Parse { line: usize, reason: String },
    KindMismatch { declared: &'static str, reason: String },
}

impl fmt::Display for LatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatError::Parse { line, reason } => write!(f, "parse error at line {line}: {reason}"),
            LatError::KindMismatch { declared, reason } => {
                write!(f, "declared kind `{declared}` fails validation: {reason}")
            }
        }
    }
}

impl std::error::Error for LatError {}

fn parse_err(line: usize, reason: impl Into<String>) -> LatError {
    LatError::Parse { line, reason: reason.into() }
}

pub fn parse_lat(text: &str) -> Result<LatFile, LatError> {
    let mut name: Option<String> = None;
    let mut kind: Option<LatKind> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut covers: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("object") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(parse_err(line_no, "expected `object <name>`"));
            }
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 1 {
                return Err(parse_err(line_no, "object takes exactly one name"));
            }
            if name.replace(tokens[0].to_string()).is_some() {
                return Err(parse_err(line_no, "duplicate `object` line"));
            }
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "kind" => {
                let k = match value {
                    "poset" => LatKind::Poset,
                    "mlat" => LatKind::MLat,
                    "lattice" => LatKind::Lattice,
                    "dlat" => LatKind::DLat,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("unknown kind `{other}` (poset|mlat|lattice|dlat)"),
                        ))
                    }
                };
                if kind.replace(k).is_some() {
                    return Err(parse_err(line_no, "duplicate `kind` line"));
                }
            }
            "elements" => {
                let ls: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if ls.is_empty() {
                    return Err(parse_err(line_no, "elements list is empty"));
                }
                if labels.replace(ls).is_some() {
                    return Err(parse_err(line_no, "duplicate `elements` line"));
                }
            }
            "covers" => {
                for token in value.split_whitespace() {
                    let (a, b) = token
                        .split_once('<')
                        .ok_or_else(|| parse_err(line_no, format!("cover `{token}` needs `<`")))?;
                    if a.is_empty() || b.is_empty() {
                        return Err(parse_err(line_no, format!("malformed cover `{token}`")));
                    }
                    if a == b {
                        return Err(parse_err(line_no, format!("self-cover `{token}`")));
                    }
                    covers.push((a.to_string(), b.to_string()));
                }
            }
            other => return Err(parse_err(line_no, format!("unknown key `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| parse_err(0, "missing `object` line"))?;
    let kind = kind.ok_or_else(|| parse_err(0, "missing `kind` line"))?;
    let labels = labels.ok_or_else(|| parse_err(0, "missing `elements` line"))?;
    Ok(LatFile { name, kind, labels, covers })
}

/// Builds and validates the carrier the file declares.
pub fn to_carrier(file: &LatFile) -> Result<CarrierRc, LatError> {
    let poset = FinitePoset::from_covers(file.labels.clone(), &file.covers)
        .map_err(|e| parse_err(0, e.to_string()))?;
    match file.kind {
        LatKind::Poset => Ok(Carrier::Poset(poset).rc()),
        LatKind::MLat | LatKind::Lattice | LatKind::DLat => {
            let lat = BoundedLattice::from_poset(poset).map_err(|e| LatError::KindMismatch {
                declared: file.kind.name(),
                reason: e.to_string(),
            })?;
            if file.kind == LatKind::DLat && !lat.is_distributive() {
                return Err(LatError::KindMismatch {
                    declared: "dlat",
                    reason: "lattice is not distributive".to_string(),
                });
            }
            Ok(Carrier::Lattice(lat).rc())
        }
    }
}

/// Renders a carrier back to the format; covers come from the Hasse diagram.
pub fn emit_lat(name: &str, kind: LatKind, carrier: &Carrier) -> String {
    let poset = carrier.poset();
    let mut out = String::new();
    out.push_str(&format!("object {name}\n"));
    out.push_str(&format!("kind: {}\n", kind.name()));
    out.push_str(&format!("elements: {}\n", poset.labels().join(" ")));
    let covers = poset.covers();
    if !covers.is_empty() {
        let rendered: Vec<String> = covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", poset.label(a), poset.label(b)))
            .collect();
        out.push_str(&format!("covers: {}\n", rendered.join(" ")));
    }
    out
}

/// The kind a corpus carrier is best described as.
pub fn kind_of(carrier: &Carrier) -> LatKind {
    match carrier {
        Carrier::Poset(_) => LatKind::Poset,
        Carrier::Lattice(l) => {
            if l.is_distributive() {
                LatKind::DLat
            } else {
                LatKind::Lattice
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_singleton() {
        let f = parse_lat("object one\nkind: poset\nelements: x\n").unwrap();
        assert_eq!(f.name, "one");
        let c = to_carrier(&f).unwrap();
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn diamond_as_dlat() {
        let text = "# the diamond\nobject b2\nkind: dlat\nelements: 0 a b 1\ncovers: 0<a 0<b a<1 b<1\n";
        let f = parse_lat(text).unwrap();
        let c = to_carrier(&f).unwrap();
        assert_eq!(c.size(), 4);
        assert!(c.lattice().unwrap().is_distributive());
    }

    #[test]
    fn self_cover_is_a_parse_error() {
        let r = parse_lat("object x\nkind: poset\nelements: a\ncovers: a<a\n");
        assert!(matches!(r, Err(LatError::Parse { .. })));
    }

    #[test]
    fn unknown_keys_rejected() {
        let r = parse_lat("object x\nkind: poset\nelements: a\ncolor: red\n");
        assert!(matches!(r, Err(LatError::Parse { line: 4, .. })));
    }

    #[test]
    fn kind_mismatch_on_m3_as_dlat() {
        let text = "object m3\nkind: dlat\nelements: 0 a b c 1\ncovers: 0<a 0<b 0<c a<1 b<1 c<1\n";
        let f = parse_lat(text).unwrap();
        assert!(matches!(to_carrier(&f), Err(LatError::KindMismatch { .. })));
    }

    #[test]
    fn antichain_is_not_an_mlat() {
        let text = "object pair\nkind: mlat\nelements: a b\n";
        let f = parse_lat(text).unwrap();
        assert!(matches!(to_carrier(&f), Err(LatError::KindMismatch { .. })));
    }

    #[test]
    fn roundtrip_is_label_preserving() {
        let text = "object b2\nkind: dlat\nelements: 0 a b 1\ncovers: 0<a 0<b a<1 b<1\n";
        let f = parse_lat(text).unwrap();
        let c = to_carrier(&f).unwrap();
        let emitted = emit_lat(&f.name, f.kind, &c);
        let f2 = parse_lat(&emitted).unwrap();
        let c2 = to_carrier(&f2).unwrap();
        assert_eq!(c.poset().labels(), c2.poset().labels());
        for x in 0..c.size() {
            for y in 0..c.size() {
                assert_eq!(c.leq(x, y), c2.leq(x, y));
            }
        }
    }
}
