use std::fmt;
use std::str::FromStr;

use super::MonodromyError;

/// A loop ρ_pq with 0 ≤ p < q ≤ m+1 and (p, q) ≠ (0, m+1).
///
/// For p = 0 the loop moves x_q around x_0; otherwise x_p moves around x_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub p: usize,
    pub q: usize,
}

impl Generator {
    /// Accepts either order of the two indices.
    pub fn new(a: usize, b: usize, m: usize) -> Result<Self, MonodromyError> {
        let (p, q) = if a <= b { (a, b) } else { (b, a) };
        if p == q || q > m + 1 || (p == 0 && q == m + 1) {
            return Err(MonodromyError::BadGenerator { p: a, q: b, m });
        }
        Ok(Generator { p, q })
    }

    /// All C(m+2, 2) − 1 generators in lexicographic order.
    pub fn all(m: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for p in 0..=m + 1 {
            for q in p + 1..=m + 1 {
                if !(p == 0 && q == m + 1) {
                    out.push(Generator { p, q });
                }
            }
        }
        out
    }

    /// (moving point, centre) of the loop.
    pub fn moving_and_centre(&self) -> (usize, usize) {
        if self.p == 0 {
            (self.q, 0)
        } else {
            (self.p, self.q)
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q < 10 {
            write!(f, "{}{}", self.p, self.q)
        } else {
            write!(f, "{}.{}", self.p, self.q)
        }
    }
}

/// A product of generators and their inverses, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(Generator, i8)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(g: Generator) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word {
            letters: self.letters.iter().chain(&other.letters).copied().collect(),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Parses `"02,13^-1"`. A letter is `PQ` for single-digit indices or
    /// `P.Q`; the optional exponent is `^1`, `^-1` or `^(-1)`.
    pub fn parse(text: &str, m: usize) -> Result<Word, MonodromyError> {
        let bad = |msg: &str| MonodromyError::WordSyntax(format!("{msg} in `{text}`"));
        let mut letters = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (body, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    let e = match e {
                        "1" | "+1" => 1,
                        "-1" => -1,
                        _ => return Err(bad("exponent must be 1 or -1")),
                    };
                    (b.trim(), e)
                }
                None => (tok, 1),
            };
            let (a, b) = if let Some((a, b)) = body.split_once('.') {
                (a.to_string(), b.to_string())
            } else if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) {
                (body[..1].to_string(), body[1..].to_string())
            } else {
                return Err(bad("malformed letter"));
            };
            let a = usize::from_str(&a).map_err(|_| bad("malformed index"))?;
            let b = usize::from_str(&b).map_err(|_| bad("malformed index"))?;
            letters.push((Generator::new(a, b, m)?, exp));
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
            if *e < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(Generator::all(3).len(), 9);
        assert_eq!(Generator::all(2).len(), 5);
        assert!(!Generator::all(3).contains(&Generator { p: 0, q: 4 }));
        assert!(Generator::new(0, 4, 3).is_err());
        assert!(Generator::new(2, 5, 3).is_err());
        assert_eq!(Generator::new(3, 1, 3).unwrap(), Generator { p: 1, q: 3 });
    }

    #[test]
    fn word_syntax() {
        let w = Word::parse("02, 13^-1,24^(-1)", 3).unwrap();
        assert_eq!(w.letters.len(), 3);
        assert_eq!(w.to_string(), "02,13^-1,24^-1");
        assert_eq!(Word::parse(&w.to_string(), 3).unwrap(), w);
        assert!(Word::parse("", 3).unwrap().letters.is_empty());
        assert!(Word::parse("0x", 3).is_err());
        assert!(Word::parse("04", 3).is_err());
        assert!(Word::parse("12^2", 3).is_err());
        assert_eq!(w.concat(&w.inverse()).letters.len(), 6);
    }
}
