use thiserror::Error;

use super::{is_prime, RingDescriptor};

/// Error from [`parse_ring_descriptor`]; `position` is a character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid ring descriptor at position {position}: {message}")]
pub struct RingParseError {
    pub position: usize,
    pub message: String,
}

/// Parse `Z | Q | GF(p) | Z/n | Laurent(<ring>) | Product(<ring>,...)`.
/// Whitespace is ignored everywhere.
pub fn parse_ring_descriptor(text: &str) -> Result<RingDescriptor, RingParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let ring = p.ring(0)?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ring)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> RingParseError {
        RingParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), RingParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<(u64, usize), RingParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<u64>()
            .map(|n| (n, start))
            .map_err(|_| RingParseError { position: start, message: "number too large".into() })
    }

    /// `laurent_depth` counts enclosing `Laurent(...)`.
    fn ring(&mut self, laurent_depth: usize) -> Result<RingDescriptor, RingParseError> {
        self.skip_ws();
        let start = self.pos;
        let word = self.word();
        match word.as_str() {
            "Q" => Ok(RingDescriptor::Rationals),
            "Z" => {
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let (n, at) = self.number()?;
                    if n < 2 {
                        return Err(RingParseError {
                            position: at,
                            message: format!("Z/{n} is not allowed: modulus must be at least 2"),
                        });
                    }
                    Ok(RingDescriptor::ModularIntegers(n))
                } else {
                    Ok(RingDescriptor::Integers)
                }
            }
            "GF" => {
                self.expect('(')?;
                let (p, at) = self.number()?;
                if !is_prime(p) {
                    return Err(RingParseError { position: at, message: format!("{p} is not prime") });
                }
                self.expect(')')?;
                Ok(RingDescriptor::GaloisField(p))
            }
            "Laurent" => {
                if laurent_depth >= 1 {
                    return Err(RingParseError { position: start, message: "Laurent rings may not be nested".into() });
                }
                self.expect('(')?;
                let base = self.ring(laurent_depth + 1)?;
                self.expect(')')?;
                Ok(RingDescriptor::Laurent(Box::new(base)))
            }
            "Product" => {
                self.expect('(')?;
                let mut factors = vec![self.ring(laurent_depth)?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    factors.push(self.ring(laurent_depth)?);
                }
                self.expect(')')?;
                Ok(RingDescriptor::Product(factors))
            }
            "" => Err(RingParseError { position: start, message: "expected a ring".into() }),
            other => Err(RingParseError { position: start, message: format!("unknown ring '{other}'") }),
        }
    }
}
