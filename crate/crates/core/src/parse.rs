//! Text grammar for elements.
//!
//! ```text
//! element  := term (('+' | '-') term)*
//! term     := [sign] [rational ['*']] 'e' index | [sign] rational
//! rational := integer ['/' positive-integer]
//! ```
//!
//! Whitespace is ignored. The `*` between coefficient and basis symbol is
//! optional, so the canonical output `2e12` parses back.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::element::CdElement;
use crate::error::{CdError, Result};
use crate::rational::Rat;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(CdError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(format!("expected {what}"));
        }
        // ASCII digits only, so the slice is valid UTF-8
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((start, s))
    }

    fn rational(&mut self) -> Result<Rat> {
        let (_, num) = self.digits("integer")?;
        let num: BigInt = num.parse().expect("digit string");
        if self.eat(b'/') {
            let (start, den) = self.digits("denominator")?;
            let den: BigInt = den.parse().expect("digit string");
            if den.is_zero() {
                return Err(CdError::Parse {
                    pos: start,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn term(&mut self, level: u32) -> Result<(usize, Rat)> {
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.rational()?),
            _ => None,
        };
        let starred = coeff.is_some() && self.eat(b'*');
        let index = match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                let (start, digits) = self.digits("basis index after 'e'")?;
                let idx: usize = digits.parse().map_err(|_| CdError::Parse {
                    pos: start,
                    msg: "basis index too large".into(),
                })?;
                if idx >= 1usize << level {
                    return Err(CdError::IndexOutOfRange { index: idx, level });
                }
                idx
            }
            _ if coeff.is_some() && !starred => 0,
            None => return self.err("unexpected end of input"),
            Some(_) if starred => return self.err("expected 'e' after '*'"),
            Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
        };
        let mut c = coeff.unwrap_or_else(Rat::one);
        if negative {
            c = -c;
        }
        Ok((index, c))
    }
}

/// Parses an element of `A_level`. Errors carry the byte offset of the fault.
pub fn parse_element(text: &str, level: u32) -> Result<CdElement> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return cur.err("empty element");
    }
    let mut x = CdElement::zero(level);
    let mut terms = Vec::new();
    terms.push(cur.term(level)?);
    while let Some(b) = cur.peek() {
        match b {
            b'+' | b'-' => terms.push(cur.term(level)?),
            other => return cur.err(format!("unexpected character '{}'", other as char)),
        }
    }
    for (i, c) in terms {
        x = &x + &CdElement::from_terms(level, &[(i, c)])?;
    }
    Ok(x)
}

/// Canonical form: ascending index, lowest-terms coefficients, coefficient 1
/// omitted, a non-unit `e0` coefficient printed as a bare rational. Integer
/// coefficients are juxtaposed (`2e12`), fractional ones starred (`3/2*e4`).
pub fn format_element(x: &CdElement) -> String {
    let mut out = String::new();
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = String::new();
        if c.is_one() {
            term.push_str(&format!("e{i}"));
        } else if (-c).is_one() {
            term.push_str(&format!("-e{i}"));
        } else if i == 0 {
            term.push_str(&c.to_string());
        } else if c.is_integer() {
            term.push_str(&format!("{c}e{i}"));
        } else {
            term.push_str(&format!("{c}*e{i}"));
        }
        if !out.is_empty() && !c.is_negative() {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let x = parse_element("e1+e10", 4).unwrap();
        assert_eq!(x.coord(1), &int(1));
        assert_eq!(x.coord(10), &int(1));
        assert_eq!(x.support().count(), 2);

        let y = parse_element("-3/2*e4", 3).unwrap();
        assert_eq!(y.coord(4), &rat(-3, 2));
        assert_eq!(y.support().collect::<Vec<_>>(), vec![4]);

        assert!(parse_element("0", 4).unwrap().is_zero());
    }

    #[test]
    fn whitespace_and_repeats() {
        let x = parse_element(" 2 * e3 - e3 +\t1/2 ", 2).unwrap();
        assert_eq!(x.coord(3), &int(1));
        assert_eq!(x.coord(0), &rat(1, 2));
        assert!(parse_element("e1 - e1", 2).unwrap().is_zero());
    }

    #[test]
    fn errors_report_position() {
        match parse_element("e1+x2", 3) {
            Err(CdError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_element("1/0*e1", 3) {
            Err(CdError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_element("", 3),
            Err(CdError::Parse { pos: 0, .. })
        ));
        assert!(matches!(parse_element("2*", 3), Err(CdError::Parse { .. })));
        assert!(matches!(parse_element("e", 3), Err(CdError::Parse { .. })));
        assert!(matches!(
            parse_element("e1 e2", 3),
            Err(CdError::Parse { .. })
        ));
        assert!(matches!(
            parse_element("e8", 3),
            Err(CdError::IndexOutOfRange { index: 8, level: 3 })
        ));
    }

    #[test]
    fn canonical_format() {
        let cases = [
            ("e10+e1", 4, "e1+e10"),
            ("-e4+e15", 4, "-e4+e15"),
            ("2*e12", 4, "2e12"),
            ("e0+e5", 3, "e0+e5"),
            ("3/2-3/2*e4", 3, "3/2-3/2*e4"),
            ("6/4*e2", 2, "3/2*e2"),
            ("-e0", 1, "-e0"),
            ("0", 4, "0"),
        ];
        for (src, n, want) in cases {
            assert_eq!(
                format_element(&parse_element(src, n).unwrap()),
                want,
                "{src}"
            );
        }
    }

    fn element_strategy(level: u32) -> impl Strategy<Value = CdElement> {
        let d = 1usize << level;
        proptest::collection::vec((-20i64..20, 1i64..7), d).prop_map(move |v| {
            let coords = v.into_iter().map(|(n, den)| rat(n, den)).collect();
            CdElement::from_coords(level, coords).unwrap()
        })
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(x in (0u32..6).prop_flat_map(element_strategy)) {
            let text = format_element(&x);
            prop_assert_eq!(parse_element(&text, x.level()).unwrap(), x);
        }
    }
}
