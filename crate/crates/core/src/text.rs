//! The expression grammar shared by the library and the command line.
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor+                      juxtaposition is the product
//! factor := n[/m] | g | P^k(g) | P(g) | R(expr) | (expr)
//! ```
//!
//! Whitespace is insignificant. `R` and `P` are reserved and cannot name
//! generators.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::{Alphabet, Letter, RBWord};

pub fn parse_element(src: &str, alphabet: &Alphabet) -> Result<Element> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        alphabet,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a single word; coefficients other than 1 are rejected.
pub fn parse_word(src: &str, alphabet: &Alphabet) -> Result<RBWord> {
    let e = parse_element(src, alphabet)?;
    let single = match e.iter().next() {
        Some((w, c)) if e.len() == 1 && c.is_one() => Some(w.clone()),
        _ => None,
    };
    single.ok_or_else(|| Error::Parse {
        offset: 0,
        message: "expected a single word".into(),
    })
}

pub fn render_element(e: &Element, alphabet: &Alphabet) -> String {
    e.render(alphabet)
}

pub fn render_word(w: &RBWord, alphabet: &Alphabet) -> String {
    w.render(alphabet)
}

/// Names usable as generators: identifiers other than the reserved `R`, `P`.
pub fn is_valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "R" && name != "P"
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Scalar::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Scalar::one()
            }
            _ => Scalar::one(),
        };
        let mut out = Element::zero();
        loop {
            let t = self.term()?;
            out.add_scaled(&t, &sign);
            sign = match self.peek() {
                Some(b'+') => Scalar::one(),
                Some(b'-') => -Scalar::one(),
                _ => return Ok(out),
            };
            self.pos += 1;
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(')
    }

    fn term(&mut self) -> Result<Element> {
        if !self.starts_factor() {
            return Err(self.error("expected a term"));
        }
        let mut acc: Option<Element> = None;
        let mut coeff = Scalar::one();
        while self.starts_factor() {
            match self.factor()? {
                Factor::Number(c) => coeff *= &c,
                Factor::Value(e) => {
                    acc = Some(match acc {
                        None => e,
                        Some(a) => a.multiply(&e),
                    })
                }
            }
        }
        Ok(match acc {
            None if coeff.is_zero() => Element::zero(),
            None => {
                return Err(self.error("a bare number is only allowed as 0 or as a coefficient"))
            }
            Some(a) => a.scale(&coeff),
        })
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            self.pos += 1;
            let d = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if d == self.pos {
                return Err(self.error("expected a denominator"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<Scalar>().map_err(|e| Error::Parse {
            offset: start,
            message: e.to_string(),
        })
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an identifier"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Factor::Value(e))
            }
            Some(c) if c.is_ascii_digit() => Ok(Factor::Number(self.number()?)),
            _ => {
                let start = self.pos;
                let name = self.ident()?.to_string();
                match name.as_str() {
                    "R" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(Factor::Value(e.apply_r()))
                    }
                    "P" => Ok(Factor::Value(Element::letter(self.operator_letter()?))),
                    _ => match self.alphabet.index_of(&name) {
                        Some(g) => Ok(Factor::Value(Element::letter(Letter::new(g, 0)))),
                        None => Err(Error::Parse {
                            offset: start,
                            message: format!("unknown generator '{name}'"),
                        }),
                    },
                }
            }
        }
    }

    /// After `P`: `^k(g)`, `(g)` or `(P...(g))`.
    fn operator_letter(&mut self) -> Result<Letter> {
        let mut k = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            k = std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii")
                .parse::<u32>()
                .map_err(|_| Error::Parse {
                    offset: start,
                    message: "expected an exponent".into(),
                })?;
        }
        self.expect(b'(')?;
        let start = self.pos;
        let name = self.ident()?.to_string();
        let inner = if name == "P" {
            self.operator_letter()?
        } else {
            match self.alphabet.index_of(&name) {
                Some(g) => Letter::new(g, 0),
                None => {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("P applies to generators only, found '{name}'"),
                    })
                }
            }
        };
        self.expect(b')')?;
        Ok(Letter::new(inner.gen, inner.level + k))
    }
}

enum Factor {
    Number(Scalar),
    Value(Element),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Alphabet {
        Alphabet::new(["y"])
    }

    #[test]
    fn parses_and_renders() {
        let ab = Alphabet::standard(2);
        let e = parse_element("R(a) + 2 R(b)", &ab).unwrap();
        assert_eq!(e.render(&ab), "2 R(b) + R(a)");
        let e = parse_element("1/2 P^1(y) P^1(y)", &y()).unwrap();
        assert_eq!(e.render(&y()), "1/2 P^1(y) P^1(y)");
        let e = parse_element("P(P(y)) - P^2(y)", &y()).unwrap();
        assert!(e.is_zero());
        assert_eq!(parse_element("0", &y()).unwrap(), Element::zero());
        let e = parse_element("-(a + b) a", &ab).unwrap();
        assert_eq!(e.render(&ab), "-b a - a a");
    }

    #[test]
    fn rejects_bad_input() {
        let ab = Alphabet::standard(2);
        assert!(matches!(
            parse_element("a +", &ab),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_element("c", &ab),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(parse_element("R(a", &ab).is_err());
        assert!(parse_element("P(R(a))", &ab).is_err());
        assert!(parse_element("3", &ab).is_err());
        assert!(!is_valid_generator_name("R"));
        assert!(is_valid_generator_name("y1"));
    }

    #[test]
    fn words() {
        let ab = Alphabet::standard(2);
        let w = parse_word("a R(b P^3(a))", &ab).unwrap();
        assert_eq!(w.deg_r(), 1);
        assert_eq!(w.render(&ab), "a R(b P^3(a))");
        assert!(parse_word("2 a", &ab).is_err());
    }
}
