//! Plain-text generator files.
//!
//! ```text
//! # comment
//! 3 2
//! 0 2 1 6 8 7 3 5 4
//! ```
//!
//! The first non-comment line holds `p n`; every further nonempty line lists
//! the `p^n` images of one generator on the vector indices.

use thiserror::Error;

use super::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing `p n` header line")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFile {
    pub p: u32,
    pub n: u32,
    pub gens: Vec<Perm>,
}

pub fn parse(text: &str) -> Result<GeneratorFile, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let nums = parse_numbers(header, hline)?;
    let [p, n] = nums[..] else {
        return Err(ParseError::Malformed { line: hline, msg: "header must be `p n`".into() });
    };
    let degree = (p as u64)
        .checked_pow(n)
        .filter(|&d| d <= u32::MAX as u64)
        .ok_or_else(|| ParseError::Malformed { line: hline, msg: "p^n overflows".into() })?;
    let mut gens = Vec::new();
    for (line, text) in lines {
        let images = parse_numbers(text, line)?;
        if images.len() as u64 != degree {
            return Err(ParseError::Malformed {
                line,
                msg: format!("expected {degree} images, found {}", images.len()),
            });
        }
        let g = Perm::from_images(images).map_err(|e| ParseError::Malformed { line, msg: e.to_string() })?;
        gens.push(g);
    }
    Ok(GeneratorFile { p, n, gens })
}

fn parse_numbers(text: &str, line: usize) -> Result<Vec<u32>, ParseError> {
    text.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|e| ParseError::Malformed { line, msg: format!("`{t}`: {e}") }))
        .collect()
}

/// Serializes generators in the file format, one line per generator.
pub fn write(p: u32, n: u32, gens: &[Perm]) -> String {
    let mut out = format!("{p} {n}\n");
    for g in gens {
        out.push_str(&image_line(g));
        out.push('\n');
    }
    out
}

/// One generator as whitespace-separated images.
pub fn image_line(g: &Perm) -> String {
    g.images().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# gl swap\n3 1\n\n0 2 1\n# trailing\n";
        let f = parse(text).unwrap();
        assert_eq!((f.p, f.n), (3, 1));
        assert_eq!(f.gens, vec![Perm::from_cycles(3, &[&[1, 2]]).unwrap()]);
        assert_eq!(parse(&write(3, 1, &f.gens)).unwrap(), f);
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse("# only comments\n"), Err(ParseError::MissingHeader));
        assert!(matches!(parse("3 1\n0 1\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse("3 1\n0 1 1\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse("3\n"), Err(ParseError::Malformed { line: 1, .. })));
        assert!(matches!(parse("3 1\n0 x 2\n"), Err(ParseError::Malformed { .. })));
    }
}
