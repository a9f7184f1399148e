//! Line-oriented diagram files.
//!
//! ```text
//! [diagram]
//! G  = S3 x SO(3)
//! H  = I* x SO(2)
//! K- = I* x SO(3)
//! K+ = S3 x SO(2)
//!
//! [embeddings]          # optional; every key defaults to `standard`
//! H_in_K- = p1 -> e^2
//!
//! [quotients]
//! K-/H = S^2
//! K+/H = P3
//!
//! [options]             # optional
//! max_degree = 40
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::analysis::{Embedding, Embeddings, GroupDiagram, Quotient};
use crate::graded::{GradedError, RingMap};
use crate::groups::{GroupError, GroupExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Group { line: usize, source: GroupError },
    #[error("line {line}: embedding {key}: {source}")]
    Image {
        line: usize,
        key: String,
        source: GradedError,
    },
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("section [{section}] is missing key `{key}`")]
    MissingKey { section: &'static str, key: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        }
    }
}

/// Settings from the `[options]` section; command-line flags take
/// precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub max_degree: Option<u32>,
    pub hsop: Option<Vec<String>>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub diagram: GroupDiagram,
    pub options: FileOptions,
}

const SECTIONS: [&str; 4] = ["diagram", "embeddings", "quotients", "options"];
const EMBEDDING_KEYS: [&str; 4] = ["H_in_K-", "H_in_K+", "K-_in_G", "K+_in_G"];

struct Entry {
    line: usize,
    key: String,
    value: String,
}

fn syntax(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        line,
        message: message.into(),
    }
}

fn take<'a>(entries: &'a [Entry], key: &str) -> Option<&'a Entry> {
    entries.iter().find(|e| e.key == key)
}

fn group(entries: &[Entry], key: &'static str) -> Result<GroupExpr, DiagramError> {
    let e = take(entries, key).ok_or(DiagramError::MissingKey {
        section: "diagram",
        key,
    })?;
    e.value
        .parse()
        .map_err(|source| DiagramError::Group { line: e.line, source })
}

fn quotient(entries: &[Entry], key: &'static str) -> Result<Quotient, DiagramError> {
    let e = take(entries, key).ok_or(DiagramError::MissingKey {
        section: "quotients",
        key,
    })?;
    let v = e.value.replace(' ', "");
    if v == "P3" {
        return Ok(Quotient::PoincareSphere);
    }
    v.strip_prefix("S^")
        .and_then(|k| k.parse().ok())
        .map(Quotient::Sphere)
        .ok_or_else(|| syntax(e.line, format!("expected `S^k` or `P3`, got `{}`", e.value)))
}

fn explicit(e: &Entry, sub: &GroupExpr, sup: &GroupExpr) -> Result<Embedding, DiagramError> {
    let source = sup.invariant_ring();
    let target = sub.invariant_ring();
    let mut images: Vec<Option<_>> = vec![None; source.nvars()];
    let err = |source| DiagramError::Image {
        line: e.line,
        key: e.key.clone(),
        source,
    };
    for part in e.value.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, poly) = part
            .split_once("->")
            .ok_or_else(|| syntax(e.line, format!("expected `gen -> polynomial`, got `{part}`")))?;
        let name = name.trim();
        let i = source
            .generator_index(name)
            .ok_or_else(|| err(GradedError::UnknownGenerator(name.to_string())))?;
        if images[i].is_some() {
            return Err(syntax(e.line, format!("generator `{name}` assigned twice")));
        }
        images[i] = Some(target.parse(poly).map_err(err)?);
    }
    let images = images
        .into_iter()
        .zip(source.generators())
        .map(|(img, g)| img.ok_or_else(|| syntax(e.line, format!("no image given for generator `{}`", g.name))))
        .collect::<Result<Vec<_>, _>>()?;
    RingMap::new(source, target, images)
        .map(Embedding::Explicit)
        .map_err(err)
}

fn embedding(
    entries: &[Entry],
    key: &str,
    sub: &GroupExpr,
    sup: &GroupExpr,
) -> Result<Embedding, DiagramError> {
    match take(entries, key) {
        None => Ok(Embedding::Standard),
        Some(e) if e.value == "standard" => Ok(Embedding::Standard),
        Some(e) if e.value == "id" => Ok(Embedding::Identity),
        Some(e) => explicit(e, sub, sup),
    }
}

fn options(entries: &[Entry]) -> Result<FileOptions, DiagramError> {
    let mut o = FileOptions::default();
    for e in entries {
        match e.key.as_str() {
            "max_degree" => {
                o.max_degree = Some(
                    e.value
                        .parse()
                        .map_err(|_| syntax(e.line, format!("max_degree must be an integer, got `{}`", e.value)))?,
                )
            }
            "seed" => {
                o.seed = Some(
                    e.value
                        .parse()
                        .map_err(|_| syntax(e.line, format!("seed must be an integer, got `{}`", e.value)))?,
                )
            }
            "hsop" => {
                o.hsop = Some(
                    e.value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                )
            }
            "format" => {
                o.format = Some(match e.value.as_str() {
                    "text" => OutputFormat::Text,
                    "json" => OutputFormat::Json,
                    v => return Err(syntax(e.line, format!("format must be `text` or `json`, got `{v}`"))),
                })
            }
            k => return Err(syntax(e.line, format!("unknown option `{k}`"))),
        }
    }
    Ok(o)
}

pub fn parse_diagram(input: &str) -> Result<DiagramFile, DiagramError> {
    let mut sections: Vec<(&'static str, Vec<Entry>)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(name) = text.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, "unterminated section header"))?
                .trim();
            let known = SECTIONS
                .iter()
                .find(|s| **s == name)
                .ok_or_else(|| syntax(line, format!("unknown section [{name}]")))?;
            if sections.iter().any(|(s, _)| s == known) {
                return Err(syntax(line, format!("duplicate section [{name}]")));
            }
            sections.push((known, Vec::new()));
            continue;
        }
        let (key, value) = text
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key = value`, got `{text}`")))?;
        let (section, entries) = sections
            .last_mut()
            .ok_or_else(|| syntax(line, "entry before any section header"))?;
        let key = key.trim().to_string();
        if entries.iter().any(|e| e.key == key) {
            return Err(syntax(line, format!("duplicate key `{key}` in [{section}]")));
        }
        entries.push(Entry {
            line,
            key,
            value: value.trim().to_string(),
        });
    }
    let get = |name: &str| sections.iter().find(|(s, _)| *s == name).map(|(_, e)| e.as_slice());

    let dia = get("diagram").ok_or(DiagramError::MissingSection("diagram"))?;
    for e in dia {
        if !["G", "H", "K-", "K+"].contains(&e.key.as_str()) {
            return Err(syntax(e.line, format!("unknown key `{}` in [diagram]", e.key)));
        }
    }
    let g = group(dia, "G")?;
    let h = group(dia, "H")?;
    let k_minus = group(dia, "K-")?;
    let k_plus = group(dia, "K+")?;

    let quo = get("quotients").ok_or(DiagramError::MissingSection("quotients"))?;
    for e in quo {
        if e.key != "K-/H" && e.key != "K+/H" {
            return Err(syntax(e.line, format!("unknown key `{}` in [quotients]", e.key)));
        }
    }
    let quotient_minus = quotient(quo, "K-/H")?;
    let quotient_plus = quotient(quo, "K+/H")?;

    let emb = get("embeddings").unwrap_or(&[]);
    for e in emb {
        if !EMBEDDING_KEYS.contains(&e.key.as_str()) {
            return Err(syntax(e.line, format!("unknown key `{}` in [embeddings]", e.key)));
        }
    }
    let embeddings = Embeddings {
        h_in_k_minus: embedding(emb, "H_in_K-", &h, &k_minus)?,
        h_in_k_plus: embedding(emb, "H_in_K+", &h, &k_plus)?,
        k_minus_in_g: embedding(emb, "K-_in_G", &k_minus, &g)?,
        k_plus_in_g: embedding(emb, "K+_in_G", &k_plus, &g)?,
    };
    let options = options(get("options").unwrap_or(&[]))?;
    Ok(DiagramFile {
        diagram: GroupDiagram {
            g,
            h,
            k_minus,
            k_plus,
            embeddings,
            quotient_minus,
            quotient_plus,
        },
        options,
    })
}

fn render_embedding(e: &Embedding) -> String {
    match e {
        Embedding::Standard => "standard".to_string(),
        Embedding::Identity => "id".to_string(),
        Embedding::Explicit(m) => m
            .source()
            .generators()
            .iter()
            .zip(m.images())
            .map(|(g, p)| format!("{} -> {}", g.name, m.target().format(p)))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// Inverse of [`parse_diagram`].
pub fn render_diagram(file: &DiagramFile) -> String {
    let d = &file.diagram;
    let mut out = String::new();
    let _ = writeln!(out, "[diagram]");
    let _ = writeln!(out, "G = {}", d.g);
    let _ = writeln!(out, "H = {}", d.h);
    let _ = writeln!(out, "K- = {}", d.k_minus);
    let _ = writeln!(out, "K+ = {}", d.k_plus);
    let emb = [
        ("H_in_K-", &d.embeddings.h_in_k_minus),
        ("H_in_K+", &d.embeddings.h_in_k_plus),
        ("K-_in_G", &d.embeddings.k_minus_in_g),
        ("K+_in_G", &d.embeddings.k_plus_in_g),
    ];
    if emb.iter().any(|(_, e)| **e != Embedding::Standard) {
        let _ = writeln!(out, "\n[embeddings]");
        for (k, e) in emb {
            let _ = writeln!(out, "{k} = {}", render_embedding(e));
        }
    }
    let _ = writeln!(out, "\n[quotients]");
    let _ = writeln!(out, "K-/H = {}", d.quotient_minus);
    let _ = writeln!(out, "K+/H = {}", d.quotient_plus);
    let o = &file.options;
    if *o != FileOptions::default() {
        let _ = writeln!(out, "\n[options]");
        if let Some(m) = o.max_degree {
            let _ = writeln!(out, "max_degree = {m}");
        }
        if let Some(h) = &o.hsop {
            let _ = writeln!(out, "hsop = {}", h.join(", "));
        }
        if let Some(f) = o.format {
            let _ = writeln!(out, "format = {}", f.as_str());
        }
        if let Some(s) = o.seed {
            let _ = writeln!(out, "seed = {s}");
        }
    }
    out
}

/// Diagram files shipped with the crate, by file name.
pub const BUNDLED: [(&str, &str); 8] = [
    ("example_n1.diagram", include_str!("../diagrams/example_n1.diagram")),
    ("example_n2.diagram", include_str!("../diagrams/example_n2.diagram")),
    ("example_n3.diagram", include_str!("../diagrams/example_n3.diagram")),
    ("example_n4.diagram", include_str!("../diagrams/example_n4.diagram")),
    ("example_so3_n2.diagram", include_str!("../diagrams/example_so3_n2.diagram")),
    ("so3_circle.diagram", include_str!("../diagrams/so3_circle.diagram")),
    ("torus_sphere.diagram", include_str!("../diagrams/torus_sphere.diagram")),
    ("equal_rank.diagram", include_str!("../diagrams/equal_rank.diagram")),
];

/// Looks up a bundled diagram by file name, with or without the extension
/// or a leading directory.
pub fn bundled(name: &str) -> Option<&'static str> {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    BUNDLED
        .iter()
        .find(|(n, _)| *n == base || n.strip_suffix(".diagram") == Some(base))
        .map(|(_, text)| *text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N2: &str = "[diagram]\nG = S3 x SO(3)\nH = I* x SO(2)\nK- = I* x SO(3)\nK+ = S3 x SO(2)\n[quotients]\nK-/H = S^2\nK+/H = P3\n";

    #[test]
    fn parses_even_example() {
        let f = parse_diagram(N2).unwrap();
        assert_eq!(f.diagram, GroupDiagram::poincare_join(2));
        assert_eq!(f.options, FileOptions::default());
    }

    #[test]
    fn missing_quotients_section() {
        let text = N2.split("[quotients]").next().unwrap();
        let err = parse_diagram(text).unwrap_err();
        assert_eq!(err, DiagramError::MissingSection("quotients"));
        assert!(err.to_string().contains("[quotients]"));
    }

    #[test]
    fn explicit_image_matches_standard() {
        let text = format!("{N2}[embeddings]\nH_in_K- = p1 -> e^2  # SO(2) in SO(3)\n");
        let f = parse_diagram(&text).unwrap();
        let Embedding::Explicit(m) = &f.diagram.embeddings.h_in_k_minus else {
            panic!("expected explicit embedding");
        };
        let v = crate::analysis::validate(&f.diagram).unwrap();
        let std = crate::analysis::validate(&GroupDiagram::poincare_join(2)).unwrap();
        assert_eq!(*m, std.h_in_k_minus);
        assert_eq!(v.h_in_k_minus, std.h_in_k_minus);
    }

    #[test]
    fn degree_mismatched_image() {
        let text = format!("{N2}[embeddings]\nH_in_K- = p1 -> e\n");
        let err = parse_diagram(&text).unwrap_err();
        assert!(matches!(err, DiagramError::Image { line: 10, .. }), "{err}");
    }

    #[test]
    fn error_line_numbers() {
        let text = N2.replace("SO(2)\nK- ", "SO(2)\nK- = Spin(3)\nX ");
        let err = parse_diagram(&text).unwrap_err();
        assert!(err.to_string().starts_with("line "), "{err}");
        let err = parse_diagram(&N2.replace("H = I* x SO(2)", "H = I* x XY(2)")).unwrap_err();
        assert!(matches!(err, DiagramError::Group { line: 3, .. }));
        let err = parse_diagram(&N2.replace("K+/H = P3", "K+/H = RP3")).unwrap_err();
        assert_eq!(err.to_string(), "line 8: expected `S^k` or `P3`, got `RP3`");
    }

    #[test]
    fn options_section() {
        let text = format!("{N2}[options]\nmax_degree = 24\nhsop = p1, u\nformat = json\n");
        let f = parse_diagram(&text).unwrap();
        assert_eq!(f.options.max_degree, Some(24));
        assert_eq!(f.options.hsop, Some(vec!["p1".to_string(), "u".to_string()]));
        assert_eq!(f.options.format, Some(OutputFormat::Json));
        assert_eq!(parse_diagram(&render_diagram(&f)).unwrap(), f);
    }

    #[test]
    fn bundled_files_parse() {
        for (name, text) in BUNDLED {
            let f = parse_diagram(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            crate::analysis::validate(&f.diagram).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(parse_diagram(&render_diagram(&f)).unwrap(), f, "{name}");
        }
        for n in 1..=4 {
            let f = parse_diagram(bundled(&format!("example_n{n}")).unwrap()).unwrap();
            assert_eq!(f.diagram, GroupDiagram::poincare_join(n));
        }
        assert!(bundled("examples/example_n2.diagram").is_some());
        assert!(bundled("nope.diagram").is_none());
    }
}
