//! Map documents: the `polymap-v1` text and JSON formats.
//!
//! Text form:
//!
//! ```text
//! # format: polymap-v1
//! vars x y
//! F1 = x + y^2
//! F2 = y
//! ```
//!
//! JSON form lists each component as `{"coeff": "-3/2", "exp": [1, 0]}`
//! terms. Both are emitted with the leading format comment; the parser accepts
//! either and tells them apart by the first non-comment character.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::parse::{parse_poly_at, ParseError};
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::polymap::PolyMap;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

pub const FORMAT_TAG: &str = "polymap-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `vars` declaration")]
    MissingVars,
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("line {line}: duplicate component {name}")]
    DuplicateComponent { line: usize, name: String },
    #[error("component {0} not defined")]
    MissingComponent(String),
    #[error("line {line}: component {name} exceeds the {nvars} declared variables")]
    ComponentOutOfRange { line: usize, name: String, nvars: usize },
    #[error("line {line}: component label `{found}` does not match `{expected}`")]
    MixedLabels {
        line: usize,
        found: String,
        expected: String,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("json: {0}")]
    JsonSchema(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A parsed map together with its variable names and component label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDocument {
    pub vars: Vec<String>,
    /// Component prefix, `F` in `F1 = ...`.
    pub label: String,
    pub map: PolyMap,
    pub source: Option<String>,
    pub format: Format,
}

impl MapDocument {
    pub fn new(vars: Vec<String>, label: impl Into<String>, map: PolyMap) -> Result<Self, DocumentError> {
        validate_vars(&vars)?;
        if vars.len() != map.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: vars.len(),
                found: map.nvars(),
            }
            .into());
        }
        Ok(MapDocument {
            vars,
            label: label.into(),
            map,
            source: None,
            format: Format::Text,
        })
    }

    /// Inverse maps go out over fresh names `y1 ... yn` with label `G`.
    pub fn inverse_of(map: PolyMap) -> Self {
        let vars = (1..=map.nvars()).map(|i| format!("y{i}")).collect();
        MapDocument {
            vars,
            label: "G".into(),
            map,
            source: None,
            format: Format::Text,
        }
    }

    /// Default names: `x y z` up to three variables, `x1 ... xn` beyond.
    pub fn with_default_names(map: PolyMap) -> Self {
        let n = map.nvars();
        let vars = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        MapDocument {
            vars,
            label: "F".into(),
            map,
            source: None,
            format: Format::Text,
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn validate_vars(vars: &[String]) -> Result<(), DocumentError> {
    if vars.is_empty() {
        return Err(DocumentError::MissingVars);
    }
    for (i, v) in vars.iter().enumerate() {
        if !valid_identifier(v) {
            return Err(DocumentError::InvalidVariable(v.clone()));
        }
        if vars[..i].contains(v) {
            return Err(DocumentError::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Canonical text of a polynomial: terms in graded order, `-` folded into
/// the separators, unit coefficients omitted.
pub fn format_poly(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            let _ = write!(out, "{abs}");
        } else if abs.is_one() {
            out.push_str(&format_monomial(m, names));
        } else {
            let _ = write!(out, "{abs}*{}", format_monomial(m, names));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    #[serde(default)]
    format: Option<String>,
    vars: Vec<String>,
    #[serde(default = "default_label")]
    label: String,
    components: Vec<Vec<JsonTerm>>,
}

fn default_label() -> String {
    "F".into()
}

/// Bit-exact canonical serialization.
pub fn emit_map(doc: &MapDocument, format: Format) -> String {
    let mut out = format!("# format: {FORMAT_TAG}\n");
    match format {
        Format::Text => {
            let _ = writeln!(out, "vars {}", doc.vars.join(" "));
            for (i, p) in doc.map.components().iter().enumerate() {
                let _ = writeln!(out, "{}{} = {}", doc.label, i + 1, format_poly(p, &doc.vars));
            }
        }
        Format::Json => {
            let json = JsonDoc {
                format: Some(FORMAT_TAG.into()),
                vars: doc.vars.clone(),
                label: doc.label.clone(),
                components: doc
                    .map
                    .components()
                    .iter()
                    .map(|p| {
                        p.terms()
                            .iter()
                            .map(|(m, c)| JsonTerm {
                                coeff: c.to_string(),
                                exp: m.exponents().to_vec(),
                            })
                            .collect()
                    })
                    .collect(),
            };
            out.push_str(&serde_json::to_string_pretty(&json).expect("plain data serializes"));
            out.push('\n');
        }
    }
    out
}

/// Parses a document from a string, auto-detecting the format.
pub fn parse_map_str(text: &str) -> Result<MapDocument, DocumentError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('{') => parse_json(text),
        _ => parse_text(text),
    }
}

/// Reads and parses a document from disk.
pub fn parse_map_file(path: impl AsRef<Path>) -> Result<MapDocument, DocumentError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut doc = parse_map_str(&text)?;
    doc.source = Some(path.display().to_string());
    Ok(doc)
}

/// Reads a document from any reader.
pub fn parse_map_reader(mut reader: impl std::io::Read) -> Result<MapDocument, DocumentError> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|source| DocumentError::Io {
        path: "<stream>".into(),
        source,
    })?;
    parse_map_str(&text)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_label(name: &str) -> Option<(&str, usize)> {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == name.len() {
        return None;
    }
    let (label, idx) = name.split_at(name.len() - digits);
    if !label.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    idx.parse().ok().map(|i| (label, i))
}

fn parse_text(text: &str) -> Result<MapDocument, DocumentError> {
    let mut vars: Option<Vec<String>> = None;
    let mut label: Option<String> = None;
    let mut slots: Vec<Option<Polynomial>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some(vs) = &vars else {
            let mut words = line.split_whitespace();
            if words.next() != Some("vars") {
                return Err(DocumentError::MissingVars);
            }
            let names: Vec<String> = words.map(String::from).collect();
            validate_vars(&names)?;
            slots = vec![None; names.len()];
            vars = Some(names);
            continue;
        };
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(DocumentError::Syntax {
                line: line_no,
                message: "expected `<component> = <expression>`".into(),
            });
        };
        let name = lhs.trim();
        let Some((prefix, idx)) = split_label(name) else {
            return Err(DocumentError::Syntax {
                line: line_no,
                message: format!("invalid component name `{name}`"),
            });
        };
        match &label {
            Some(l) if l != prefix => {
                return Err(DocumentError::MixedLabels {
                    line: line_no,
                    found: prefix.into(),
                    expected: l.clone(),
                })
            }
            Some(_) => {}
            None => label = Some(prefix.to_string()),
        }
        if idx == 0 || idx > vs.len() {
            return Err(DocumentError::ComponentOutOfRange {
                line: line_no,
                name: name.into(),
                nvars: vs.len(),
            });
        }
        if slots[idx - 1].is_some() {
            return Err(DocumentError::DuplicateComponent {
                line: line_no,
                name: name.into(),
            });
        }
        let column = lhs.len() + 2;
        slots[idx - 1] = Some(parse_poly_at(rhs, vs, line_no, column)?);
    }
    let vars = vars.ok_or(DocumentError::MissingVars)?;
    let label = label.unwrap_or_else(default_label);
    let components = slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| DocumentError::MissingComponent(format!("{label}{}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MapDocument {
        map: PolyMap::new(components)?,
        vars,
        label,
        source: None,
        format: Format::Text,
    })
}

fn parse_json(text: &str) -> Result<MapDocument, DocumentError> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let doc: JsonDoc = serde_json::from_str(&body)?;
    if let Some(tag) = &doc.format {
        if tag != FORMAT_TAG {
            return Err(DocumentError::JsonSchema(format!("unsupported format `{tag}`")));
        }
    }
    validate_vars(&doc.vars)?;
    if !doc.label.chars().all(|c| c.is_ascii_alphabetic()) || doc.label.is_empty() {
        return Err(DocumentError::JsonSchema(format!("invalid label `{}`", doc.label)));
    }
    let n = doc.vars.len();
    if doc.components.len() != n {
        return Err(DocumentError::JsonSchema(format!(
            "{} components for {} variables",
            doc.components.len(),
            n
        )));
    }
    let mut components = Vec::with_capacity(n);
    for (i, terms) in doc.components.into_iter().enumerate() {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exp.len() != n {
                return Err(DocumentError::JsonSchema(format!(
                    "component {}: exponent vector of length {} for {} variables",
                    i + 1,
                    t.exp.len(),
                    n
                )));
            }
            let c: Rational = t
                .coeff
                .parse()
                .map_err(|e| DocumentError::JsonSchema(format!("component {}: {e}", i + 1)))?;
            parsed.push((Monomial::new(t.exp), c));
        }
        components.push(Polynomial::from_terms(n, parsed));
    }
    Ok(MapDocument {
        map: PolyMap::new(components)?,
        vars: doc.vars,
        label: doc.label,
        source: None,
        format: Format::Json,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const SHEAR: &str = "vars x y\nF1 = x + y^2\nF2 = y\n";

    #[test]
    fn parse_two_line_document() {
        let doc = parse_map_str(SHEAR).unwrap();
        assert_eq!(doc.nvars(), 2);
        assert_eq!(doc.map, catalog::shear());
        assert_eq!(doc.label, "F");
    }

    #[test]
    fn missing_component() {
        let err = parse_map_str("vars x y\nF1 = x + y^2\n").unwrap_err();
        assert_eq!(err.to_string(), "component F2 not defined");
    }

    #[test]
    fn document_errors() {
        assert!(matches!(
            parse_map_str("vars x y\nF1 = x\nF1 = y\n"),
            Err(DocumentError::DuplicateComponent { line: 3, .. })
        ));
        assert!(matches!(
            parse_map_str("vars x y\nF3 = x\n"),
            Err(DocumentError::ComponentOutOfRange { .. })
        ));
        assert!(matches!(parse_map_str("F1 = x\n"), Err(DocumentError::MissingVars)));
        assert!(matches!(
            parse_map_str("vars x x\n"),
            Err(DocumentError::DuplicateVariable(_))
        ));
        assert!(matches!(
            parse_map_str("vars 1x\n"),
            Err(DocumentError::InvalidVariable(_))
        ));
        assert!(matches!(
            parse_map_str("vars x y\nF1 = x\nG2 = y\n"),
            Err(DocumentError::MixedLabels { .. })
        ));
        match parse_map_str("vars x y\n\nF1 = x + + y\nF2 = y\n") {
            Err(DocumentError::Parse(e)) => assert_eq!((e.line, e.column), (3, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_map_str("vars x y\nF1 x\n"),
            Err(DocumentError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# format: polymap-v1\n\n# the shear\nvars x y  # two vars\nF2 = y\nF1 = x + y^2 # comment\n";
        assert_eq!(parse_map_str(text).unwrap().map, catalog::shear());
    }

    #[test]
    fn nagata_document() {
        let text = "vars x y z\nF1 = x - 2*y*(x*z + y^2) - z*(x*z + y^2)^2\nF2 = y + z*(x*z + y^2)\nF3 = z\n";
        let doc = parse_map_str(text).unwrap();
        assert_eq!(doc.nvars(), 3);
        assert_eq!(crate::polymap::map_degree(&doc.map).unwrap(), 5);
        assert_eq!(doc.map, catalog::nagata());
    }

    #[test]
    fn emit_inverse_text() {
        let doc = MapDocument::inverse_of(catalog::shear_inverse());
        assert_eq!(
            emit_map(&doc, Format::Text),
            "# format: polymap-v1\nvars y1 y2\nG1 = y1 - y2^2\nG2 = y2\n"
        );
        let affine = MapDocument::inverse_of(catalog::affine_inverse());
        assert_eq!(
            emit_map(&affine, Format::Text),
            "# format: polymap-v1\nvars y1 y2\nG1 = -3/2 + 1/2*y1\nG2 = 1/5*y2\n"
        );
    }

    #[test]
    fn emit_json_coefficients() {
        let doc = MapDocument::inverse_of(catalog::affine_inverse());
        let text = emit_map(&doc, Format::Json);
        assert!(text.starts_with("# format: polymap-v1\n{"));
        assert!(text.contains("\"coeff\": \"1/2\""));
        assert!(text.contains("\"coeff\": \"-3/2\""));
        let back = parse_map_str(&text).unwrap();
        assert_eq!(back.map, doc.map);
        assert_eq!(back.vars, doc.vars);
        assert_eq!(back.label, "G");
        assert_eq!(back.format, Format::Json);
    }

    #[test]
    fn json_schema_errors() {
        let bad = r#"{"vars": ["x"], "components": [[{"coeff": "1", "exp": [1, 0]}]]}"#;
        assert!(matches!(parse_map_str(bad), Err(DocumentError::JsonSchema(_))));
        let bad = r#"{"vars": ["x"], "components": []}"#;
        assert!(matches!(parse_map_str(bad), Err(DocumentError::JsonSchema(_))));
        let bad = r#"{"format": "other", "vars": ["x"], "components": [[]]}"#;
        assert!(matches!(parse_map_str(bad), Err(DocumentError::JsonSchema(_))));
        let bad = r#"{"vars": ["x"], "components": [[{"coeff": "1/0", "exp": [1]}]]}"#;
        assert!(matches!(parse_map_str(bad), Err(DocumentError::JsonSchema(_))));
        assert!(matches!(parse_map_str("{ nope"), Err(DocumentError::Json(_))));
    }

    #[test]
    fn format_zero_and_signs() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(format_poly(&Polynomial::zero(2), &names), "0");
        let p = crate::io::parse::parse_poly("-x - 1 + 3*x*y^2", &names).unwrap();
        assert_eq!(format_poly(&p, &names), "-1 - x + 3*x*y^2");
    }
}
