//! Recursive-descent parser for words such as `[[x1,x2],[x3,x4]]` or `x1^-2 x2`.

use super::FreeWord;
use crate::error::{Error, Result};

/// Longest word a parse may expand to, guarding against `(...)^1000000`.
const MAX_SYLLABLES: usize = 1 << 20;
const MAX_EXPONENT: i128 = 1 << 40;

pub(super) fn parse(text: &str) -> Result<FreeWord> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty word"));
    }
    let w = p.word()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected character"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') | Some(b']') | Some(b',') => break,
                _ => {
                    let t = self.term()?;
                    w = w.mul(&t);
                    self.check_len(&w)?;
                }
            }
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<FreeWord> {
        let a = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(a);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.int()?;
        if e == 0 {
            self.pos = start;
            return Err(self.err("exponent 0"));
        }
        if (a.len() as u128) * (e.unsigned_abs() as u128) > MAX_SYLLABLES as u128 && a.len() > 1 {
            self.pos = start;
            return Err(self.err("word too long"));
        }
        let too_big = |x: i64| (x as i128).abs() > MAX_EXPONENT;
        if too_big(e) || a.syllables().iter().any(|&(_, x)| (x as i128 * e as i128).abs() > MAX_EXPONENT) {
            self.pos = start;
            return Err(self.err("exponent too large"));
        }
        Ok(a.pow(e))
    }

    fn atom(&mut self) -> Result<FreeWord> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let v = self.posint()?;
                if v == 0 {
                    self.pos = start;
                    return Err(self.err("variable index 0"));
                }
                let v = usize::try_from(v).map_err(|_| self.err("variable index too large"))?;
                Ok(FreeWord::var(v))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(FreeWord::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.nonempty_word()?;
                self.expect(b',')?;
                let second = self.nonempty_word()?;
                acc = acc.commutator(&second);
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            let next = self.nonempty_word()?;
                            acc = acc.commutator(&next);
                            self.check_len(&acc)?;
                        }
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(acc);
                        }
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
            }
            Some(_) => Err(self.err("expected a variable, `1`, `(` or `[`")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn nonempty_word(&mut self) -> Result<FreeWord> {
        self.skip_ws();
        if matches!(self.peek(), None | Some(b')') | Some(b']') | Some(b',')) {
            return Err(self.err("expected a word"));
        }
        self.word()
    }

    fn posint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse { offset: start, message: "integer too large".into() })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        let v = self.posint()?;
        let v = i64::try_from(v).map_err(|_| Error::Parse { offset: start, message: "exponent too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn check_len(&self, w: &FreeWord) -> Result<()> {
        if w.len() > MAX_SYLLABLES {
            return Err(self.err("word too long"));
        }
        Ok(())
    }
}
