//! Knot specifications: `unknot`, `torus2:<n>`, `jn:<n>`, `file:<path>`.

use std::fmt;
use std::str::FromStr;

use knotrho::knot::KnotFamily;
use knotrho::SeifertMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    Family(KnotFamily),
    File(String),
}

/// A spec that could not be parsed, with the byte offset of the problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid knot spec {:?} at position {}: {}",
            self.input, self.position, self.message
        )
    }
}

impl std::error::Error for SpecError {}

impl FromStr for KnotSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let err = |position: usize, message: &str| SpecError {
            input: s.to_string(),
            position,
            message: message.to_string(),
        };
        if s == "unknot" {
            return Ok(KnotSpec::Family(KnotFamily::Unknot));
        }
        let Some((family, arg)) = s.split_once(':') else {
            return Err(err(0, "expected unknot, torus2:<n>, jn:<n> or file:<path>"));
        };
        let at = family.len() + 1;
        match family {
            "torus2" | "jn" => {
                if arg.is_empty() {
                    return Err(err(at, "missing parameter"));
                }
                if let Some(i) = arg.find(|c: char| !c.is_ascii_digit() && c != '-' && c != '+') {
                    return Err(err(at + i, "parameter must be an integer"));
                }
                let n: i64 = arg
                    .parse()
                    .map_err(|_| err(at, "parameter must be an integer"))?;
                if n < 1 {
                    return Err(err(at, "parameter must be at least 1"));
                }
                Ok(KnotSpec::Family(if family == "jn" {
                    KnotFamily::Jn(n)
                } else {
                    KnotFamily::Torus2(n)
                }))
            }
            "file" if !arg.is_empty() => Ok(KnotSpec::File(arg.to_string())),
            "file" => Err(err(at, "missing path")),
            _ => Err(err(0, &format!("unknown family {family:?}"))),
        }
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Family(k) => write!(f, "{k}"),
            KnotSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl KnotSpec {
    pub fn seifert(&self) -> Result<SeifertMatrix, String> {
        match self {
            KnotSpec::Family(k) => k
                .seifert()
                .expect("named families have Seifert matrices")
                .map_err(|e| e.to_string()),
            KnotSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {path}: {e}"))?;
                SeifertMatrix::from_json(&text).map_err(|e| format!("{path}: {e}"))
            }
        }
    }
}
