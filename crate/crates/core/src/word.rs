//! Operator words over the alphabet `{c, c+}` and the textual word grammar.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! word   := item*
//! item   := atom power?
//! atom   := letter | "(" word ")"
//! letter := ("c" | "a") ("+" | "†")?
//! power  := "^" positive-integer
//! ```
//!
//! Positions are 1-based in every external rendering.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: usize = 10_000;
/// Largest expanded word length accepted by the parser.
pub const MAX_WORD_LEN: usize = 1_000_000;
/// Deepest allowed nesting of parenthesized groups.
pub const MAX_NESTING: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterType {
    /// `c`
    Annihilator,
    /// `c+`, written `c†` in the literature.
    Creator,
}

impl LetterType {
    pub fn is_creator(self) -> bool {
        matches!(self, LetterType::Creator)
    }

    pub fn is_annihilator(self) -> bool {
        matches!(self, LetterType::Annihilator)
    }

    /// Canonical token used by [`Word::render_text`].
    pub fn token(self) -> &'static str {
        match self {
            LetterType::Annihilator => "c",
            LetterType::Creator => "c+",
        }
    }
}

/// A finite, linearly ordered sequence of typed letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<LetterType>,
}

impl Word {
    pub fn new(letters: Vec<LetterType>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[LetterType] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at a 1-based position.
    pub fn at(&self, position: usize) -> Option<LetterType> {
        position
            .checked_sub(1)
            .and_then(|i| self.letters.get(i).copied())
    }

    /// `(creators, annihilators)`.
    pub fn counts(&self) -> (usize, usize) {
        let creators = self.letters.iter().filter(|l| l.is_creator()).count();
        (creators, self.letters.len() - creators)
    }

    /// 1-based positions of the creators, ascending.
    pub fn creator_positions(&self) -> Vec<usize> {
        self.positions_of(LetterType::Creator)
    }

    /// 1-based positions of the annihilators, ascending.
    pub fn annihilator_positions(&self) -> Vec<usize> {
        self.positions_of(LetterType::Annihilator)
    }

    fn positions_of(&self, ty: LetterType) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == ty)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The word with `letter` placed in front.
    pub fn prepended(&self, letter: LetterType) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Word {
        Word {
            letters: self.letters.repeat(times),
        }
    }

    /// The word `(c+ c)^n`.
    pub fn number_power(n: usize) -> Word {
        Word::new(vec![LetterType::Creator, LetterType::Annihilator]).repeat(n)
    }

    /// Space-separated canonical tokens; parses back to the same word.
    pub fn render_text(&self) -> String {
        let tokens: Vec<&str> = self.letters.iter().map(|l| l.token()).collect();
        tokens.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl FromIterator<LetterType> for Word {
    fn from_iter<I: IntoIterator<Item = LetterType>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parse the textual grammar into a fully expanded word.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let letters = parser.sequence(0)?;
    parser.skip_ws();
    if parser.pos < text.len() {
        let found = parser.peek_char().unwrap_or(' ');
        return Err(ParseError::new(
            parser.pos,
            format!("unexpected '{found}' (unbalanced parenthesis?)"),
        ));
    }
    Ok(Word { letters })
}

/// `(creators, annihilators)` of a word.
pub fn word_counts(w: &Word) -> (usize, usize) {
    w.counts()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(ch) = self.peek_char() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    /// Parses items until end of input or a closing parenthesis (not consumed).
    fn sequence(&mut self, depth: usize) -> Result<Vec<LetterType>, ParseError> {
        let mut out: Vec<LetterType> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let atom = match self.peek_char() {
                None | Some(')') => return Ok(out),
                Some('c') | Some('a') => {
                    self.pos += 1;
                    let ty = match self.peek_char() {
                        Some('+') => {
                            self.pos += 1;
                            LetterType::Creator
                        }
                        Some('†') => {
                            self.pos += '†'.len_utf8();
                            LetterType::Creator
                        }
                        _ => LetterType::Annihilator,
                    };
                    vec![ty]
                }
                Some('(') => {
                    if depth >= MAX_NESTING {
                        return Err(ParseError::new(
                            start,
                            format!("groups nested deeper than {MAX_NESTING}"),
                        ));
                    }
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    self.skip_ws();
                    if self.peek_char() != Some(')') {
                        return Err(ParseError::new(
                            start,
                            "unbalanced parenthesis: missing ')'",
                        ));
                    }
                    self.pos += 1;
                    if inner.is_empty() {
                        return Err(ParseError::new(start, "empty group"));
                    }
                    inner
                }
                Some(ch) => {
                    return Err(ParseError::new(start, format!("unexpected '{ch}'")));
                }
            };

            self.skip_ws();
            let times = if self.peek_char() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                self.exponent()?
            } else {
                1
            };

            let added = atom.len().saturating_mul(times);
            if out.len().saturating_add(added) > MAX_WORD_LEN {
                return Err(ParseError::new(
                    start,
                    format!("expanded word exceeds {MAX_WORD_LEN} letters"),
                ));
            }
            for _ in 0..times {
                out.extend_from_slice(&atom);
            }
        }
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let digits = self.text[self.pos..]
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            let msg = match self.peek_char() {
                Some('-') => "exponent must be a positive integer".to_string(),
                Some(ch) => format!("expected exponent after '^', found '{ch}'"),
                None => "expected exponent after '^'".to_string(),
            };
            return Err(ParseError::new(start, msg));
        }
        self.pos += digits;
        let raw = &self.text[start..self.pos];
        let value: usize = match raw.parse() {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => {
                return Err(ParseError::new(
                    start,
                    format!("exponent {raw} exceeds the cap of {MAX_EXPONENT}"),
                ))
            }
        };
        if value == 0 {
            return Err(ParseError::new(
                start,
                "exponent must be a positive integer",
            ));
        }
        Ok(value)
    }
}
