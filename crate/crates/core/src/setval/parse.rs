use super::{Interval, SetValue};
use crate::error::{Error, ParseError, Result};

/// Parse the textual set grammar:
/// `7`, `[2,5]`, `(6,7)`, `(8.0,8.8]`, `{4,6}`, `{21}U(22,25]` (or `∪`),
/// and `d+i[lo,hi]` / `d-i[lo,hi]`, meaning `[d+lo, d+hi]` / `[d-hi, d-lo]`.
pub fn parse_setvalue(text: &str) -> Result<SetValue> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty input").into());
    }
    let mut parts = vec![p.part()?];
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        if p.eat('U') || p.eat('∪') {
            p.skip_ws();
            parts.push(p.part()?);
        } else {
            return Err(p.err("expected 'U' or end of input").into());
        }
    }
    if parts.len() == 1 {
        Ok(parts.pop().unwrap())
    } else {
        SetValue::union(parts)
    }
}

/// Scan a decimal number (optional sign, digits, fraction, exponent) at byte `start`.
pub(crate) fn scan_number(src: &str, start: usize) -> std::result::Result<(f64, usize), ParseError> {
    let bytes = src.as_bytes();
    let mut i = start;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        i += 1;
    }
    let digits_start = i;
    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
        i += 1;
    }
    if i == digits_start {
        return Err(ParseError::new(start, "expected a number"));
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    let text = &src[start..i];
    let x: f64 = text
        .parse()
        .map_err(|_| ParseError::new(start, format!("invalid number '{text}'")))?;
    if !x.is_finite() {
        return Err(ParseError::new(start, format!("number out of range '{text}'")));
    }
    Ok((x + 0.0, i))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> std::result::Result<f64, ParseError> {
        self.skip_ws();
        let (x, end) = scan_number(self.src, self.pos)?;
        self.pos = end;
        Ok(x)
    }

    fn part(&mut self) -> Result<SetValue> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('[') | Some('(') => {
                let (lo, hi, lo_open, hi_open) = self.bracket()?;
                self.interval_at(start, lo, hi, lo_open, hi_open)
            }
            Some('{') => {
                self.pos += 1;
                let mut xs = vec![self.number()?];
                loop {
                    self.skip_ws();
                    if self.eat(',') {
                        xs.push(self.number()?);
                    } else if self.eat('}') {
                        break;
                    } else {
                        return Err(self.err("expected ',' or '}'").into());
                    }
                }
                SetValue::finite(xs)
            }
            Some(_) => {
                let d = self.number()?;
                let save = self.pos;
                self.skip_ws();
                let sign = if self.eat('+') {
                    1.0
                } else if self.eat('-') {
                    -1.0
                } else {
                    self.pos = save;
                    return Ok(SetValue::crisp(d));
                };
                self.skip_ws();
                if !self.eat('i') {
                    return Err(self.err("expected 'i' in d+i form").into());
                }
                self.skip_ws();
                let bstart = self.pos;
                let (lo, hi, lo_open, hi_open) = self.bracket()?;
                if lo > hi {
                    return Err(ParseError::new(bstart, "lower endpoint exceeds upper").into());
                }
                if sign > 0.0 {
                    self.interval_at(start, d + lo, d + hi, lo_open, hi_open)
                } else {
                    self.interval_at(start, d - hi, d - lo, hi_open, lo_open)
                }
            }
            None => Err(self.err("unexpected end of input").into()),
        }
    }

    fn bracket(&mut self) -> std::result::Result<(f64, f64, bool, bool), ParseError> {
        let lo_open = match self.peek() {
            Some('[') => false,
            Some('(') => true,
            _ => return Err(self.err("expected '[' or '('")),
        };
        self.pos += 1;
        let lo = self.number()?;
        self.expect(',')?;
        let hi = self.number()?;
        self.skip_ws();
        let hi_open = match self.peek() {
            Some(']') => false,
            Some(')') => true,
            _ => return Err(self.err("expected ']' or ')'")),
        };
        self.pos += 1;
        Ok((lo, hi, lo_open, hi_open))
    }

    fn interval_at(&self, start: usize, lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Result<SetValue> {
        if lo > hi {
            return Err(ParseError::new(start, "lower endpoint exceeds upper").into());
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(Error::EmptySet(format!("degenerate open interval at byte {start}")));
        }
        let iv = Interval::new(lo, hi, lo_open, hi_open)?;
        Ok(SetValue::from_atoms(vec![super::Atom::Span(iv)]).expect("nonempty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_forms() {
        assert_eq!(parse_setvalue("7").unwrap(), SetValue::Crisp(7.0));
        assert_eq!(parse_setvalue("-2.5e1").unwrap(), SetValue::Crisp(-25.0));
        assert_eq!(parse_setvalue("[2,5]").unwrap().to_string(), "[2,5]");
        assert_eq!(parse_setvalue("(6,7)").unwrap().to_string(), "(6,7)");
        assert_eq!(parse_setvalue("(8.0,8.8]").unwrap().to_string(), "(8,8.8]");
        assert_eq!(parse_setvalue("{4,6}").unwrap().to_string(), "{4,6}");
        assert_eq!(parse_setvalue("{21}U(22,25]").unwrap().to_string(), "{21}U(22,25]");
        assert_eq!(parse_setvalue("{21} ∪ (22, 25]").unwrap().to_string(), "{21}U(22,25]");
    }

    #[test]
    fn indeterminate_offset_form() {
        assert_eq!(
            parse_setvalue("5+i[0,0.4]").unwrap(),
            SetValue::interval(5.0, 5.4).unwrap()
        );
        assert_eq!(
            parse_setvalue("5-i[0,0.4]").unwrap(),
            SetValue::interval(4.6, 5.0).unwrap()
        );
        assert_eq!(parse_setvalue("5+i[0,0]").unwrap(), SetValue::Crisp(5.0));
    }

    #[test]
    fn reversed_interval_reports_position() {
        match parse_setvalue("{1}U[3,2]") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_setvalue("[3,2]"), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "[1,2", "{1,}", "abc", "[1;2]", "1 2", "5+[0,1]", "(3,3)"] {
            assert!(parse_setvalue(bad).is_err(), "{bad}");
        }
        assert!(matches!(parse_setvalue("(3,3)"), Err(Error::EmptySet(_))));
    }
}
