//! File and stdout plumbing, argument parsing helpers and error reporting.

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use serde::de::DeserializeOwned;
use serde::Serialize;
use zonotile::{Error, SubsetWord};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Lib(Error::ResourceGuard(_)) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }

    /// The machine-readable line written to stderr.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::Lib(Error::IllegalPath { rule, position }) = self {
            v["rule"] = (*rule).into();
            v["position"] = (*position).into();
        }
        v.to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Lib(Error::Json(format!("{}: {e}", path.display()))))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("library values serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout when no file is given.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses a set written as `1,3,4`, `[1,3,4]`, `{1,3,4}`, or `∅` / empty.
pub fn parse_set(s: &str) -> CliResult<SubsetWord> {
    let t = s.trim().trim_start_matches(['[', '{']).trim_end_matches([']', '}']).trim();
    if t.is_empty() || t == "∅" {
        return Ok(SubsetWord::EMPTY);
    }
    let elements = t
        .split(',')
        .map(|e| e.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad set element {e:?} in {s:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SubsetWord::from_elements(elements)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_syntax() {
        let want = SubsetWord::of(&[1, 3]);
        for s in ["1,3", "[1,3]", "{1, 3}", " 3,1 "] {
            assert_eq!(parse_set(s).unwrap(), want);
        }
        assert_eq!(parse_set("∅").unwrap(), SubsetWord::EMPTY);
        assert_eq!(parse_set("[]").unwrap(), SubsetWord::EMPTY);
        assert!(parse_set("1,x").is_err());
        assert!(parse_set("0").is_err());
    }

    #[test]
    fn error_json_carries_the_rule() {
        let e = CliError::Lib(Error::IllegalPath { rule: "P2", position: 4 });
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["error"], "illegal_path");
        assert_eq!(v["rule"], "P2");
        assert_eq!(CliError::Lib(Error::ResourceGuard("x".into())).exit_code(), ExitCode::from(2));
    }
}
