use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column index in a coset table: `2*gen` for the generator, `2*gen+1` for its inverse.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

/// A freely reduced word in the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter::new(gen, false)],
        }
    }

    /// Builds a word from `(generator, exponent)` pairs.
    pub fn from_powers(parts: &[(usize, i64)]) -> Self {
        Word::new(parts.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::new(letters)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Product of the generator images, acting on the right.
    pub fn evaluate(&self, images: &[Permutation]) -> Result<Permutation> {
        let degree = images.first().map(|p| p.degree()).unwrap_or(0);
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        if let Some(g) = self.max_generator() {
            if g >= images.len() {
                return Err(Error::Invalid(format!(
                    "word uses generator {g} but only {} images were given",
                    images.len()
                )));
            }
        }
        let inverses: Vec<Permutation> = images.iter().map(|p| p.inverse()).collect();
        let mut acc = Permutation::identity(degree);
        for l in &self.letters {
            let p = if l.inverse {
                &inverses[l.gen]
            } else {
                &images[l.gen]
            };
            acc = acc.then(p);
        }
        Ok(acc)
    }

    /// Parses words such as `x y^-1 x`, `(xy^{-1}x)^2(xy)^3` or `r0*r1`.
    /// Generator names are matched greedily, longest first.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut parser = Parser {
            chars: text.chars().collect(),
            pos: 0,
            names,
        };
        let w = parser.word()?;
        parser.skip_space();
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(w)
    }

    /// Renders the word with the given generator names, collapsing runs into
    /// powers and periodic words into `(u)^k`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let n = self.letters.len();
        let period = (1..=n)
            .find(|&p| {
                n.is_multiple_of(p) && (p..n).all(|i| self.letters[i] == self.letters[i - p])
            })
            .unwrap_or(n);
        if period == 1 || period == n {
            return self.format_runs(names);
        }
        let unit = Word {
            letters: self.letters[..period].to_vec(),
        };
        format!("({})^{}", unit.format_runs(names), n / period)
    }

    fn format_runs(&self, names: &[String]) -> String {
        let sep = if names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            if !out.is_empty() {
                out.push_str(sep);
            }
            let name = names
                .get(l.gen)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.gen));
            let e = if l.inverse { -run } else { run };
            if e == 1 {
                out.push_str(&name);
            } else {
                let _ = write!(out, "{name}^{e}");
            }
            i = j;
        }
        out
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .collect();
        Error::Invalid(format!("{msg} at column {} near {:?}", self.pos + 1, rest))
    }

    fn skip_space(&mut self) {
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = Word::empty();
        loop {
            self.skip_space();
            match self.peek() {
                None | Some(')') => return Ok(acc),
                _ => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_space();
                if self.peek() != Some(')') {
                    return Err(self.error("missing ')'"));
                }
                self.pos += 1;
                w
            }
            Some('1') => {
                self.pos += 1;
                Word::empty()
            }
            _ => self.name()?,
        };
        let mut w = atom;
        while self.peek() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            w = w.pow(e);
        }
        Ok(w)
    }

    fn name(&mut self) -> Result<Word> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_empty() && rest.starts_with(n.as_str()))
            .max_by_key(|(i, n)| (n.len(), usize::MAX - i));
        match best {
            Some((i, n)) => {
                self.pos += n.chars().count();
                Ok(Word::generator(i))
            }
            None => Err(self.error("unknown generator")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let mut sign = 1;
        if self.peek() == Some('-') {
            sign = -1;
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.error("missing '}'"));
            }
            self.pos += 1;
        }
        Ok(sign * value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn free_reduction() {
        let w = Word::new([
            Letter::new(0, false),
            Letter::new(1, false),
            Letter::new(1, true),
            Letter::new(0, true),
            Letter::new(2, false),
        ]);
        assert_eq!(w, Word::generator(2));
    }

    #[test]
    fn parses_bracketed_powers() {
        let n = names(&["x", "y", "z"]);
        let w = Word::parse("(xy^{-1}x)^2(xy)^3", &n).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(
            Word::parse("x^-1", &n).unwrap(),
            Word::generator(0).inverse()
        );
        assert!(Word::parse("xw", &n).is_err());
        assert!(Word::parse("(xy", &n).is_err());
    }

    #[test]
    fn longest_name_wins() {
        let n = names(&["r", "r1", "r10"]);
        let w = Word::parse("r10 r1 r", &n).unwrap();
        assert_eq!(w, Word::from_powers(&[(2, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn formats_periodic_words() {
        let n = names(&["x", "y"]);
        let w = Word::parse("(xy^-1)^3", &n).unwrap();
        assert_eq!(w.format(&n), "(xy^-1)^3");
        assert_eq!(Word::parse("x^3", &n).unwrap().format(&n), "x^3");
        assert_eq!(Word::empty().format(&n), "1");
    }

    #[test]
    fn evaluates_words() {
        let x = Permutation::parse_cycles("(1,2,3)", Some(3)).unwrap();
        assert!(Word::from_powers(&[(0, 3)])
            .evaluate(std::slice::from_ref(&x))
            .unwrap()
            .is_identity());
        assert!(Word::empty().evaluate(&[x]).unwrap().is_identity());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|v| Word::new(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(w.inverse().mul(&w).is_empty());
        }

        #[test]
        fn words_stay_reduced(w in arb_word()) {
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0], pair[1].inv());
            }
        }

        #[test]
        fn format_round_trips(w in arb_word()) {
            let n = names(&["x", "y", "z"]);
            prop_assert_eq!(Word::parse(&w.format(&n), &n).unwrap(), w);
        }
    }
}
