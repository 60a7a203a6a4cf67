//! Data words and their text form `sym:atom,sym:atom,...`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::atoms::{Atom, AtomPermutation, Permute};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: String,
    pub atom: Atom,
}

impl Letter {
    pub fn new(symbol: impl Into<String>, atom: u32) -> Self {
        Letter {
            symbol: symbol.into(),
            atom: Atom(atom),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.symbol, self.atom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DataWord(pub Vec<Letter>);

impl DataWord {
    pub fn empty() -> Self {
        DataWord(Vec::new())
    }

    /// Builds a word from `(symbol, atom)` pairs.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, u32)>>(pairs: I) -> Self {
        DataWord(pairs.into_iter().map(|(s, a)| Letter::new(s, a)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn pushed(&self, l: Letter) -> DataWord {
        let mut w = self.clone();
        w.0.push(l);
        w
    }

    pub fn concat(&self, other: &DataWord) -> DataWord {
        DataWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Distinct atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = Vec::new();
        for l in &self.0 {
            if !out.contains(&l.atom) {
                out.push(l.atom);
            }
        }
        out
    }
}

impl Permute for DataWord {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        DataWord(
            self.0
                .iter()
                .map(|l| Letter {
                    symbol: l.symbol.clone(),
                    atom: pi.apply(l.atom),
                })
                .collect(),
        )
    }
}

impl fmt::Display for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for DataWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().is_empty() {
            return Ok(DataWord::empty());
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (sym, atom) = tok
                    .rsplit_once(':')
                    .ok_or_else(|| Error::InvalidWord(format!("token `{tok}` is not of the form symbol:atom")))?;
                if sym.is_empty() {
                    return Err(Error::InvalidWord(format!("token `{tok}` has an empty symbol")));
                }
                let atom: u32 = atom
                    .parse()
                    .map_err(|_| Error::InvalidWord(format!("token `{tok}`: `{atom}` is not a nonnegative integer")))?;
                Ok(Letter {
                    symbol: sym.to_string(),
                    atom: Atom(atom),
                })
            })
            .collect::<Result<_, _>>()
            .map(DataWord)
    }
}

/// Renames atoms so that first occurrences get `0, 1, 2, ...`.
pub fn canonical_word(w: &DataWord) -> DataWord {
    let mut names: HashMap<Atom, Atom> = HashMap::new();
    DataWord(
        w.0.iter()
            .map(|l| {
                let next = Atom(names.len() as u32);
                let atom = *names.entry(l.atom).or_insert(next);
                Letter {
                    symbol: l.symbol.clone(),
                    atom,
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w: DataWord = "σ:1,σ:2,σ:1".parse().unwrap();
        assert_eq!(w, DataWord::from_pairs([("σ", 1), ("σ", 2), ("σ", 1)]));
        assert_eq!(w.to_string(), "σ:1,σ:2,σ:1");
        assert_eq!("".parse::<DataWord>().unwrap(), DataWord::empty());
        assert!("σ1".parse::<DataWord>().is_err());
        assert!("σ:-1".parse::<DataWord>().is_err());
    }

    #[test]
    fn canonical_examples() {
        let w = DataWord::from_pairs([("a", 7), ("a", 7), ("a", 3)]);
        assert_eq!(canonical_word(&w), DataWord::from_pairs([("a", 0), ("a", 0), ("a", 1)]));
        assert_eq!(canonical_word(&DataWord::empty()), DataWord::empty());
        let c = DataWord::from_pairs([("a", 0), ("a", 1)]);
        assert_eq!(canonical_word(&c), c);
    }

    #[test]
    fn permutation_acts_pointwise() {
        let w = DataWord::from_pairs([("a", 5), ("b", 7)]);
        let pi = AtomPermutation::swap(Atom(5), Atom(9));
        assert_eq!(w.permute(&pi), DataWord::from_pairs([("a", 9), ("b", 7)]));
        assert_eq!(w.permute(&AtomPermutation::identity()), w);
    }
}
