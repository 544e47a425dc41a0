use crate::error::{Error, Result, Side};

use super::{Document, Segment, Token};

fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })
}

/// Parses the plain format: one segment per line, whitespace-separated tokens.
/// Runs of whitespace are collapsed; a trailing newline does not add a segment.
pub fn parse_plain(bytes: &[u8]) -> Result<Document> {
    let text = decode(bytes)?;
    let segments = text
        .lines()
        .enumerate()
        .map(|(id, line)| Segment::from_plain(id, line))
        .collect();
    Ok(Document::unannotated(segments))
}

pub fn serialize_plain(doc: &Document) -> String {
    let mut out = String::new();
    for seg in doc.segments() {
        let mut first = true;
        for s in seg.surfaces() {
            if !first {
                out.push(' ');
            }
            out.push_str(s);
            first = false;
        }
        out.push('\n');
    }
    out
}

fn check_field(field: &str, name: &str, line: usize) -> Result<()> {
    if field.is_empty() {
        return Err(Error::Parse {
            line,
            message: format!("empty {name} field"),
        });
    }
    if field.chars().any(char::is_whitespace) {
        return Err(Error::Parse {
            line,
            message: format!("{name} field `{field}` contains whitespace"),
        });
    }
    Ok(())
}

/// Parses the annotated format: `surface<TAB>lemma<TAB>pos` per line, a blank
/// line after each segment. The blank line after the last segment is optional.
/// Two consecutive blank lines encode an empty segment.
pub fn parse_annotated(bytes: &[u8]) -> Result<Document> {
    let text = decode(bytes)?;
    let mut segments = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.is_empty() {
            let id = segments.len();
            segments.push(Segment::new(id, std::mem::take(&mut current)));
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        check_field(fields[0], "surface", line_no)?;
        check_field(fields[1], "lemma", line_no)?;
        check_field(fields[2], "pos", line_no)?;
        current.push(Token::annotated(fields[0], fields[1], fields[2]));
    }
    if !current.is_empty() {
        let id = segments.len();
        segments.push(Segment::new(id, current));
    }
    Ok(Document::from_segments(segments))
}

/// Inverse of [`parse_annotated`]. Every segment, including the last, is
/// followed by a blank line.
pub fn serialize_annotated(doc: &Document) -> Result<String> {
    let mut out = String::new();
    for seg in doc.segments() {
        seg.require_annotated(Side::Hypothesis)?;
        for tok in &seg.tokens {
            out.push_str(&tok.surface);
            out.push('\t');
            out.push_str(tok.lemma.as_deref().unwrap_or_default());
            out.push('\t');
            out.push_str(tok.pos.as_deref().unwrap_or_default());
            out.push('\n');
        }
        out.push('\n');
    }
    Ok(out)
}
