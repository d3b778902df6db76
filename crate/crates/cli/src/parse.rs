//! Expression grammar: sums and products of generators `name[i,j]`,
//! integers, `q` and `q^k`, with parentheses.

use qgrass::coeff::Laurent;
use qgrass::superfree::{Element, GeneratorSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at position {pos}: unknown generator {name}")]
    UnknownGenerator { pos: usize, name: String },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: &'a GeneratorSet,
}

pub fn parse_element(text: &str, gens: &GeneratorSet) -> Result<Element, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, gens };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = if self.eat(b'-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(Element::scalar(Laurent::constant(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                if ident == "q" && self.peek() != Some(b'[') {
                    let k = if self.eat(b'^') {
                        if self.eat(b'(') {
                            let k = self.integer()?;
                            self.expect(b')')?;
                            k
                        } else {
                            self.integer()?
                        }
                    } else {
                        1
                    };
                    let k = i32::try_from(k).map_err(|_| self.error("exponent out of range"))?;
                    return Ok(Element::scalar(Laurent::q_pow(k)));
                }
                self.expect(b'[')?;
                let i = self.integer()?;
                self.expect(b',')?;
                let j = self.integer()?;
                self.expect(b']')?;
                let name = format!("{ident}[{i},{j}]");
                match self.gens.lookup(&name) {
                    Some(g) => Ok(Element::gen(g)),
                    None => Err(ParseError::UnknownGenerator { pos: start, name }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgrass::manin::build_manin;

    #[test]
    fn parses_sums_products_and_scalars() {
        let m = build_manin(1, 1).unwrap();
        let e = parse_element("q^-1 * a[1,2]*a[1,1] - (2 + q)*a[2,2]", m.gens()).unwrap();
        let want = &(&m.a(1, 2) * &m.a(1, 1)).scale(&Laurent::q_pow(-1)) - &m.a(2, 2).scale(&Laurent::from_terms([(0, 2), (1, 1)]));
        assert_eq!(e, want);
        assert_eq!(parse_element("1", m.gens()).unwrap(), Element::one());
        assert_eq!(parse_element("q^(2)", m.gens()).unwrap(), Element::scalar(Laurent::q_pow(2)));
    }

    #[test]
    fn reports_positions() {
        let m = build_manin(1, 1).unwrap();
        assert_eq!(
            parse_element("a[1,1] * a[3,1]", m.gens()),
            Err(ParseError::UnknownGenerator { pos: 9, name: "a[3,1]".into() })
        );
        match parse_element("a[1,1] +", m.gens()) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        match parse_element("a[1 1]", m.gens()) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
