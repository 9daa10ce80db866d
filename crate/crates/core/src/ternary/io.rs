//! Plain-text code files: one word per line over `0`, `1`, `2`; lines
//! starting with `#` are comments and blank lines are ignored.

use super::{TernaryCode, TernaryWord};
use crate::error::{Error, Result};

pub fn parse_code(text: &str) -> Result<TernaryCode> {
    let mut code: Option<TernaryCode> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word: TernaryWord = line.parse().map_err(|e| Error::Parse { line: idx + 1, msg: format!("{e}") })?;
        let code = code.get_or_insert_with(|| TernaryCode::empty(word.len()));
        let len = word.len();
        if !code.insert(word).map_err(|e| Error::Parse { line: idx + 1, msg: format!("{e}") })? {
            return Err(Error::Parse { line: idx + 1, msg: format!("duplicate word of length {len}") });
        }
    }
    code.ok_or(Error::Parse { line: 0, msg: "no words".into() })
}

pub fn format_code(code: &TernaryCode) -> String {
    let mut out = format!("# n={} size={}\n", code.word_len(), code.size());
    for w in code.iter() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_blank_lines() {
        let c = parse_code("# comment\n000\n\n111\n  222  \n").unwrap();
        assert_eq!(c, TernaryCode::parse_words("000 111 222").unwrap());
        assert_eq!(parse_code(&format_code(&c)).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_code("000\n01a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_code("000\n01\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_code("000\n000\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_code("# only a comment\n").is_err());
        assert!(parse_code("0 1\n").is_err());
    }
}
