//! Session files: a ring with relations and a set of named ideals.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::error::Error;
use crate::ideal::{IdealHandle, QuotientPresentation};
use crate::poly::Polynomial;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    p: u64,
    vars: Vec<String>,
    relations: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SessionFile {
    ring: RingFile,
    ideals: IdealMap,
}

/// Ideals keep file order; a repeated name is a schema error rather than a
/// silent overwrite.
#[derive(Debug, Default, Serialize)]
#[serde(transparent)]
struct IdealMap(serde_json::Map<String, serde_json::Value>);

impl<'de> Deserialize<'de> for IdealMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IdealMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping ideal names to generator lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<IdealMap, A::Error> {
                let mut out = serde_json::Map::new();
                while let Some((k, v)) = map.next_entry::<String, Vec<String>>()? {
                    if out.contains_key(&k) {
                        return Err(de::Error::custom(format!("duplicate ideal name `{k}`")));
                    }
                    out.insert(k, v.into());
                }
                Ok(IdealMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug)]
pub struct Session {
    pub presentation: Arc<QuotientPresentation>,
    /// In file order.
    pub ideals: Vec<(String, IdealHandle)>,
}

fn parse_error(context: &str, src: &str, e: Error) -> CliError {
    CliError::Parse(format!("{context}: `{src}`: {e}"))
}

impl Session {
    pub fn from_json(text: &str) -> Result<Session, CliError> {
        let file: SessionFile = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        let ring = crate::ring::Ring::new(file.ring.p, &file.ring.vars).map_err(|e| match e {
            Error::BadVariableName(_) | Error::DuplicateVariable(_) => CliError::Schema(e.to_string()),
            other => CliError::Math(other),
        })?;
        let mut relations = Vec::with_capacity(file.ring.relations.len());
        for src in &file.ring.relations {
            relations.push(ring.parse(src).map_err(|e| parse_error("relation", src, e))?);
        }
        let presentation = QuotientPresentation::new(&ring, relations).map_err(CliError::Math)?;
        let mut ideals = Vec::new();
        for (name, gens) in &file.ideals.0 {
            if !is_identifier(name) {
                return Err(CliError::Schema(format!("ideal name `{name}` is not an identifier")));
            }
            let mut polys = Vec::new();
            for src in gens.as_array().into_iter().flatten().filter_map(|g| g.as_str()) {
                polys.push(ring.parse(src).map_err(|e| parse_error(&format!("ideal {name}"), src, e))?);
            }
            let ideal = IdealHandle::new(&presentation, polys).map_err(CliError::Math)?;
            ideals.push((name.clone(), ideal));
        }
        Ok(Session { presentation, ideals })
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle, CliError> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| CliError::Usage(format!("no ideal named `{name}` in the session")))
    }

    pub fn parse_element(&self, src: &str) -> Result<Polynomial, CliError> {
        self.presentation.ring().parse(src).map_err(|e| parse_error("element", src, e))
    }

    /// The session with every polynomial in canonical printed form.
    pub fn to_json(&self) -> String {
        let ring = self.presentation.ring();
        let file = SessionFile {
            ring: RingFile {
                p: ring.characteristic(),
                vars: ring.vars().to_vec(),
                relations: self.presentation.relations().iter().map(|r| r.to_string()).collect(),
            },
            ideals: IdealMap(
                self.ideals
                    .iter()
                    .map(|(n, i)| {
                        let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
                        (n.clone(), gens.into())
                    })
                    .collect(),
            ),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("session serializes");
        s.push('\n');
        s
    }
}

pub fn load_session(path: &Path) -> Result<Session, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Session::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str =
        r#"{"ring":{"p":2,"vars":["x","y","z"],"relations":["x^3+y^3+z^3"]},"ideals":{"I":["x","y"]}}"#;

    #[test]
    fn fermat_session() {
        let s = Session::from_json(FERMAT).unwrap();
        assert_eq!(s.presentation.ring().characteristic(), 2);
        assert_eq!(s.presentation.relations().len(), 1);
        assert_eq!(s.ideal("I").unwrap().generators().len(), 2);
        assert!(matches!(s.ideal("J"), Err(CliError::Usage(_))));
    }

    #[test]
    fn polynomial_ring_session() {
        let s = Session::from_json(r#"{"ring":{"p":3,"vars":["X","Y"],"relations":[]},"ideals":{}}"#).unwrap();
        assert!(s.presentation.relations().is_empty());
        assert!(s.ideals.is_empty());
    }

    #[test]
    fn rejections() {
        let code = |t: &str| Session::from_json(t).unwrap_err().exit_code();
        assert_eq!(code(r#"{"ring":{"p":4,"vars":["x"],"relations":[]},"ideals":{}}"#), 2);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x"],"relations":[],"order":"lex"},"ideals":{}}"#), 1);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x"]},"ideals":{}}"#), 1);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x"],"relations":[]},"ideals":{"I":["x"],"I":["x^2"]}}"#), 1);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x"],"relations":[]},"ideals":{"1I":["x"]}}"#), 1);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x"],"relations":[]},"ideals":{"I":["y"]}}"#), 3);
        assert_eq!(code(r#"{"ring":{"p":5,"vars":["x","x"],"relations":[]},"ideals":{}}"#), 1);
        assert_eq!(code("not json"), 1);
        let e = Session::from_json(r#"{"ring":{"p":5,"vars":["x"],"relations":[]},"ideals":{"K":["x+"]}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("ideal K") && e.contains("`x+`"), "{e}");
    }

    #[test]
    fn echo_round_trip() {
        let text = r#"{"ring":{"p":7,"vars":["x","y","z"],"relations":["z^2 - x*y"]},
            "ideals":{"P":["z","x"],"Q":["3*x^2 + y*x - x^2", "y^2"]}}"#;
        let s = Session::from_json(text).unwrap();
        let echo = s.to_json();
        let t = Session::from_json(&echo).unwrap();
        assert_eq!(t.to_json(), echo);
        assert_eq!(s.presentation.relations(), t.presentation.relations());
        for ((n1, i1), (n2, i2)) in s.ideals.iter().zip(&t.ideals) {
            assert_eq!(n1, n2);
            assert_eq!(i1.generators(), i2.generators());
        }
        assert_eq!(t.ideals[0].0, "P");
    }
}
