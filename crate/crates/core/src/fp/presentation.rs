//! Presentations and their text format.
//!
//! ```text
//! # comment
//! gens: r0 r1 r2
//! rel: r0^2
//! rel: (r0 r1)^3
//! sub: r0 r1
//! ```
//!
//! The `gens:` line must come first. Every later non-blank, non-comment line
//! is `rel: <word>` or `sub: <word>`. Words are products of generator names
//! with optional powers `^k`, `^-k` or `^{-k}`; parentheses group, `1` is the
//! empty word, and whitespace or `*` may separate factors.

use std::fmt;

use crate::error::{Error, Result};

use super::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let p = Presentation {
            names,
            relators,
            subgroup: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Convenience constructor from generator names and relator strings.
    pub fn from_strs(names: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names, relators)
    }

    fn validate(&self) -> Result<()> {
        for (i, n) in self.names.iter().enumerate() {
            if n.is_empty()
                || n.chars()
                    .any(|c| c.is_whitespace() || "()^{}*-".contains(c))
            {
                return Err(Error::Invalid(format!("bad generator name {n:?}")));
            }
            if self.names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate generator name {n:?}")));
            }
        }
        for w in self.relators.iter().chain(&self.subgroup) {
            if let Some(g) = w.max_generator() {
                if g >= self.names.len() {
                    return Err(Error::Invalid(format!(
                        "word refers to undeclared generator {g}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn with_relator(mut self, w: Word) -> Result<Self> {
        self.relators.push(w);
        self.validate()?;
        Ok(self)
    }

    pub fn with_subgroup(mut self, gens: Vec<Word>) -> Result<Self> {
        self.subgroup = gens;
        self.validate()?;
        Ok(self)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut subgroup = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected `key: value`, found {line:?}")))?;
            match (key.trim(), &names) {
                ("gens", None) => {
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(parse_err("no generators declared".into()));
                    }
                    names = Some(list);
                }
                ("gens", Some(_)) => return Err(parse_err("duplicate `gens:` line".into())),
                (_, None) => return Err(parse_err("the first line must be `gens:`".into())),
                ("rel", Some(n)) => relators
                    .push(Word::parse(rest, n).map_err(|e| parse_err(format!("{rest:?}: {e}")))?),
                ("sub", Some(n)) => subgroup
                    .push(Word::parse(rest, n).map_err(|e| parse_err(format!("{rest:?}: {e}")))?),
                (other, Some(_)) => return Err(parse_err(format!("unknown key {other:?}"))),
            }
        }
        let names = names.ok_or(Error::Parse {
            line: 1,
            message: "missing `gens:` line".into(),
        })?;
        let p = Presentation {
            names,
            relators,
            subgroup,
        };
        p.validate().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.format(&self.names))?;
        }
        for s in &self.subgroup {
            writeln!(f, "sub: {}", s.format(&self.names))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let text = "gens: r0 r1 r2\nrel: r0^2\n# note\nrel: (r0 r1)^3\nsub: r0\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.subgroup().len(), 1);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn errors_name_the_line() {
        let err = Presentation::parse("gens: x y\nrel: x^2\nrel: q\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Presentation::parse("rel: x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
