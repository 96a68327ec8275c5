//! Line-oriented `key: entries` documents used by ring and preset files.
//!
//! A line of the form `key: ...` opens a section when `key` is one of the
//! recognised section names. Lines that do not open a section continue the
//! previous one. Entries are separated by commas or line breaks; `#` starts
//! a comment that runs to the end of the line.

use crate::error::{ParseError, Position};

pub const PRESENTATION_KEYS: &[&str] = &[
    "params",
    "generators",
    "rules",
    "zeros",
    "fiber",
    "fiber_supported",
    "integrals",
    "top_degree",
];

pub const PRESET_KEYS: &[&str] = &[
    "preset",
    "subbundle_rank",
    "genus",
    "subbundle_degree",
    "rank_parameter",
    "universal_chern",
    "poincare_chern",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub text: String,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub key: String,
    pub position: Position,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub sections: Vec<Section>,
}

fn is_known_key(key: &str) -> bool {
    PRESENTATION_KEYS.contains(&key) || PRESET_KEYS.contains(&key)
}

/// Splits `content` (starting at `col` on `line`) into comma-separated entries.
fn push_entries(entries: &mut Vec<Entry>, content: &str, line: usize, col: usize) {
    let mut offset = 0;
    for piece in content.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let text = piece.trim();
        if !text.is_empty() {
            let chars_before = content[..offset + lead].chars().count();
            entries.push(Entry {
                text: text.to_string(),
                position: Position::new(line, col + chars_before),
            });
        }
        offset += piece.len() + 1;
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, ParseError> {
        let mut sections: Vec<Section> = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(i) => &raw_line[..i],
                None => raw_line,
            };
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.chars().take_while(|c| c.is_whitespace()).count();
            let trimmed = line.trim_start();
            let header = trimmed.find(':').and_then(|i| {
                let key = trimmed[..i].trim_end();
                let ok =
                    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                ok.then_some((key, i))
            });
            match header {
                Some((key, colon)) => {
                    let position = Position::new(line_no, indent + 1);
                    if !is_known_key(key) {
                        return Err(
                            ParseError::new(position, format!("unknown section `{key}`")).expected(
                                format!(
                                    "one of {}",
                                    PRESENTATION_KEYS
                                        .iter()
                                        .chain(PRESET_KEYS)
                                        .copied()
                                        .collect::<Vec<_>>()
                                        .join(", ")
                                ),
                            ),
                        );
                    }
                    if sections.iter().any(|s| s.key == key) {
                        return Err(ParseError::new(
                            position,
                            format!("duplicate section `{key}`"),
                        ));
                    }
                    let mut section = Section {
                        key: key.to_string(),
                        position,
                        entries: Vec::new(),
                    };
                    let rest = &trimmed[colon + 1..];
                    let col = indent + trimmed[..colon + 1].chars().count() + 1;
                    push_entries(&mut section.entries, rest, line_no, col);
                    sections.push(section);
                }
                None => match sections.last_mut() {
                    Some(section) => push_entries(&mut section.entries, line, line_no, 1),
                    None => {
                        return Err(ParseError::new(
                            Position::new(line_no, indent + 1),
                            "content before any section header",
                        )
                        .expected("`key: value`"))
                    }
                },
            }
        }
        Ok(Document { sections })
    }

    pub fn section(&self, key: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.key == key)
    }

    pub fn entries(&self, key: &str) -> &[Entry] {
        self.section(key)
            .map(|s| s.entries.as_slice())
            .unwrap_or(&[])
    }

    /// The single entry of a scalar-valued section.
    pub fn single(&self, key: &str) -> Result<Option<&Entry>, ParseError> {
        match self.section(key) {
            None => Ok(None),
            Some(s) => match s.entries.as_slice() {
                [e] => Ok(Some(e)),
                [] => Err(
                    ParseError::new(s.position, format!("section `{key}` is empty"))
                        .expected("a value"),
                ),
                [_, extra, ..] => Err(ParseError::new(
                    extra.position,
                    format!("section `{key}` takes a single value"),
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_continuations() {
        let doc = Document::parse(
            "params: n   # rank\n\
             generators: f=2, alpha=2\n\
             rules:\n\
             \x20 xi1^2 -> -2*theta*f\n\
             \x20 xi2^2 -> alpha^3*f\n",
        )
        .unwrap();
        assert_eq!(doc.entries("params")[0].text, "n");
        let gens = doc.entries("generators");
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].text, "alpha=2");
        assert_eq!(gens[1].position, Position::new(2, 18));
        let rules = doc.entries("rules");
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].position, Position::new(4, 3));
    }

    #[test]
    fn rejects_unknown_and_duplicate_sections() {
        let err = Document::parse("params: n\nbogus: 1\n").unwrap_err();
        assert_eq!(err.position, Position::new(2, 1));
        let err = Document::parse("top_degree: 2\ntop_degree: 4\n").unwrap_err();
        assert!(err.message.contains("duplicate"));
        let err = Document::parse("  f^2\n").unwrap_err();
        assert_eq!(err.position, Position::new(1, 3));
    }

    #[test]
    fn single_value_sections() {
        let doc = Document::parse("fiber: f, g\n").unwrap();
        assert!(doc.single("fiber").is_err());
        assert!(doc.single("genus").unwrap().is_none());
    }
}
