//! Shared tokenizer for the line-oriented text formats.
//!
//! `#` starts a comment; blank lines are skipped.  Line numbers are
//! 1-based and survive into parse errors.

/// Splits text into (line number, whitespace tokens) for non-empty lines.
pub(crate) fn tokenized_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((idx + 1, tokens))
            }
        })
        .collect()
}
