//! The element-set text format.
//!
//! ```text
//! # optional comments
//! 4
//! # label: alpha
//! 1 1 2 3
//! 2 3 2 3
//! ```
//!
//! The first non-comment line is the degree; every further non-empty line is
//! one transformation as space-separated 0-based images. A `# label: name`
//! comment names the element that follows it.

use std::fmt::Write as _;

use crate::closure::ClosureResult;
use crate::error::{Error, Result};
use crate::structures::GeneratorSet;
use crate::wreath::parse_images;

pub fn parse_element_set(text: &str) -> Result<GeneratorSet> {
    let mut set: Option<GeneratorSet> = None;
    let mut pending_label: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(label) = comment.trim().strip_prefix("label:") {
                pending_label = Some(label.trim().to_owned());
            }
            continue;
        }
        let Some(set) = set.as_mut() else {
            let degree: usize = line.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected degree, found `{line}`"),
            })?;
            set = Some(GeneratorSet::new(degree).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?);
            continue;
        };
        let f = parse_images(line, line_no)?;
        if f.degree() != set.degree() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} images, found {}", set.degree(), f.degree()),
            });
        }
        let label = pending_label
            .take()
            .unwrap_or_else(|| format!("g{}", set.len()));
        set.push(label, f).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    set.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing degree line".to_owned(),
    })
}

/// Serialises with a `# label:` line before each element.
pub fn write_generator_set(set: &GeneratorSet) -> String {
    let mut out = format!("{}\n", set.degree());
    for (label, f) in set.iter() {
        let _ = writeln!(out, "# label: {label}\n{f}");
    }
    out
}

/// All elements of a closure in enumeration order.
pub fn write_closure(result: &ClosureResult) -> String {
    let mut out = format!("# order {}\n{}\n", result.order(), result.degree());
    for f in result.elements() {
        let _ = writeln!(out, "{f}");
    }
    out
}

/// `<element-index>: g<i> g<j> ...`, one line per element. `None` when the
/// closure was computed without a word log.
pub fn write_word_log(result: &ClosureResult) -> Option<String> {
    if !result.has_word_log() {
        return None;
    }
    let mut out = String::new();
    for i in 0..result.order() {
        let word = result.word(i)?;
        let _ = write!(out, "{i}:");
        for g in word {
            let _ = write!(out, " g{g}");
        }
        out.push('\n');
    }
    Some(out)
}
