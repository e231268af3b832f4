//! Element-expression parser.
//!
//! Grammar (whitespace-insensitive):
//!   element  := factor { "*"? factor }
//!   factor   := "pi^{" coweight "}" | "s" index
//!   coweight := "0" | signed-term { ("+"|"-") signed-term }
//!   term     := [int] basis-symbol
//!
//! `pi^{L0+4d}*s1*s0` and `s1*s0*pi^{L0+d}` both parse; factors multiply in
//! the order written, so the canonical form `pi^{...}*s...` round-trips.

use kmaha::weyl::weyl_from_word;
use kmaha::{wp_from_weyl, wp_identity, wp_mul, wp_translation, Coweight, RootDatum, WPElt};

/// A character with its position in the original input, whitespace removed.
struct Cursor {
    items: Vec<(usize, char)>,
    at: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            items: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            at: 0,
        }
    }

    fn done(&self) -> bool {
        self.at >= self.items.len()
    }

    fn peek(&self) -> Option<char> {
        self.items.get(self.at).map(|(_, c)| *c)
    }

    /// Byte position in the original text, for error messages; the text
    /// length when at the end.
    fn pos(&self) -> usize {
        self.items
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.items.last().map(|(p, c)| p + c.len_utf8()).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char, what: &str) -> Result<(), String> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(format!("syntax error at position {}: expected {}", self.pos(), what))
        }
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.at;
        let mut value: i64 = 0;
        while let Some(c) = self.peek() {
            if let Some(digit) = c.to_digit(10) {
                value = value.saturating_mul(10).saturating_add(digit as i64);
                self.at += 1;
            } else {
                break;
            }
        }
        if self.at > start {
            Some(value)
        } else {
            None
        }
    }
}

/// Parse one element expression against a datum. Errors carry the byte
/// position in the input.
pub fn parse_element(text: &str, datum: &RootDatum) -> Result<WPElt, String> {
    let mut cur = Cursor::new(text);
    if cur.done() {
        return Err("syntax error at position 0: empty element expression".to_string());
    }
    let mut acc = wp_identity(datum);
    let mut first = true;
    while !cur.done() {
        if !first {
            cur.eat('*');
            if cur.done() {
                return Err(format!(
                    "syntax error at position {}: trailing '*'",
                    cur.pos()
                ));
            }
        }
        first = false;
        match cur.peek() {
            Some('p') => {
                let factor_pos = cur.pos();
                cur.expect('p', "'pi^{'")?;
                cur.expect('i', "'pi^{'")?;
                cur.expect('^', "'^' after 'pi'")?;
                cur.expect('{', "'{' after 'pi^'")?;
                let mu = parse_coweight(&mut cur, datum, factor_pos)?;
                cur.expect('}', "'}' closing the coweight")?;
                acc = wp_mul(datum, &acc, &wp_translation(datum, mu));
            }
            Some('s') => {
                cur.bump();
                let pos = cur.pos();
                let label = cur.integer().ok_or_else(|| {
                    format!("syntax error at position {}: expected a reflection index after 's'", pos)
                })?;
                let w = weyl_from_word(datum, &[label]).map_err(|_| {
                    format!(
                        "unknown reflection index s{} at position {}: datum {} has labels {:?}",
                        label,
                        pos,
                        datum.name(),
                        datum.labels()
                    )
                })?;
                acc = wp_mul(datum, &acc, &wp_from_weyl(datum, w));
            }
            _ => {
                return Err(format!(
                    "syntax error at position {}: expected 'pi^{{' or 's<index>'",
                    cur.pos()
                ));
            }
        }
    }
    Ok(acc)
}

fn parse_coweight(cur: &mut Cursor, datum: &RootDatum, start_pos: usize) -> Result<Coweight, String> {
    let mut coords = vec![0i64; datum.rank()];
    if cur.eat('0') {
        if cur.peek() == Some('}') {
            return Ok(Coweight::new(coords));
        }
        return Err(format!(
            "syntax error at position {}: '0' must be the whole coweight",
            cur.pos()
        ));
    }
    if cur.peek() == Some('}') {
        return Err(format!(
            "syntax error at position {}: empty coweight in factor starting at position {}",
            cur.pos(),
            start_pos
        ));
    }
    loop {
        let sign = if cur.eat('-') {
            -1
        } else {
            cur.eat('+');
            1
        };
        let mag = cur.integer().unwrap_or(1);
        let pos = cur.pos();
        let idx = match_symbol(cur, datum).ok_or_else(|| {
            format!(
                "unknown basis symbol at position {}: datum {} uses {:?}",
                pos,
                datum.name(),
                datum.basis_symbols()
            )
        })?;
        coords[idx] += sign * mag;
        match cur.peek() {
            Some('+') | Some('-') => continue,
            Some('}') => return Ok(Coweight::new(coords)),
            _ => {
                return Err(format!(
                    "syntax error at position {}: expected '+', '-', or '}}' in coweight",
                    cur.pos()
                ));
            }
        }
    }
}

/// Longest basis symbol matching at the cursor.
fn match_symbol(cur: &mut Cursor, datum: &RootDatum) -> Option<usize> {
    let rest: String = cur.items[cur.at..].iter().map(|(_, c)| *c).collect();
    let mut best: Option<(usize, usize)> = None; // (symbol length, index)
    for (i, sym) in datum.basis_symbols().iter().enumerate() {
        if rest.starts_with(sym.as_str()) {
            let len = sym.chars().count();
            if best.map(|(l, _)| len > l).unwrap_or(true) {
                best = Some((len, i));
            }
        }
    }
    best.map(|(len, i)| {
        cur.at += len;
        i
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmaha::{build_datum, wp_canonical_string, wp_from};
    use kmaha::weyl::weyl_from_word as word;

    fn a1aff() -> RootDatum {
        build_datum("A1aff").unwrap()
    }

    #[test]
    fn parses_the_worked_elements() {
        let d = a1aff();
        let x = parse_element("pi^{L0+4d}", &d).unwrap();
        assert_eq!(x, wp_from(&d, Coweight::new(vec![1, 0, 4]), word(&d, &[]).unwrap()));
        let y = parse_element("s1*s0*pi^{L0+d}", &d).unwrap();
        assert_eq!(y, wp_from(&d, Coweight::new(vec![1, -1, 0]), word(&d, &[1, 0]).unwrap()));
        // Separators are optional and whitespace is ignored.
        assert_eq!(parse_element(" s1 s0 pi^{ L0 + d } ", &d).unwrap(), y);
        assert_eq!(parse_element("pi^{2L0-2d}s1s0", &d).unwrap(),
            wp_from(&d, Coweight::new(vec![2, 0, -2]), word(&d, &[1, 0]).unwrap()));
    }

    #[test]
    fn canonical_print_round_trips() {
        let d = a1aff();
        for (mu, w) in [
            (vec![0, 0, 0], vec![]),
            (vec![0, 0, 0], vec![0, 1]),
            (vec![1, 0, 4], vec![]),
            (vec![1, 1, -1], vec![0]),
            (vec![2, 5, -8], vec![0, 1, 0, 1, 0]),
            (vec![1, -2, 3], vec![1, 0, 1]),
        ] {
            let x = wp_from(&d, Coweight::new(mu), word(&d, &w).unwrap());
            let printed = wp_canonical_string(&d, &x);
            assert_eq!(parse_element(&printed, &d).unwrap(), x, "round trip of {}", printed);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        let d = a1aff();
        for bad in ["", "  ", "pi^{L0", "pi^{}", "pi^{L0+}", "pi^{q7}", "s", "sx", "t1", "s1**", "pi^{0+d}"] {
            assert!(parse_element(bad, &d).is_err(), "{:?} should not parse", bad);
        }
        // A valid expression with an index outside the label set.
        assert!(parse_element("s2", &d).is_err());
        assert!(parse_element("s2", &build_datum("A2").unwrap()).is_ok());
    }
}
