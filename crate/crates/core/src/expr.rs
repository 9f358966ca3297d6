//! Factored products over generators and named peripheral elements.
//!
//! A [`Term`] keeps the shape of a written expression such as
//! `mu^-1 (mu^6 lambda)^2`, so derivation steps can address its factors by
//! index. Its meaning is always the reduced [`Word`] returned by
//! [`Term::expand`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{parse_integer, Gen, Word};

/// Peripheral elements that exist only as named definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Named {
    Mu,
    Lambda,
    MuC,
    LambdaC,
}

impl Named {
    pub const ALL: [Named; 4] = [Named::Mu, Named::Lambda, Named::MuC, Named::LambdaC];

    pub fn name(self) -> &'static str {
        match self {
            Named::Mu => "mu",
            Named::Lambda => "lambda",
            Named::MuC => "muC",
            Named::LambdaC => "lambdaC",
        }
    }

    pub fn from_name(s: &str) -> Option<Named> {
        match s {
            "mu" | "μ" => Some(Named::Mu),
            "lambda" | "λ" => Some(Named::Lambda),
            "muC" | "μ_C" => Some(Named::MuC),
            "lambdaC" | "λ_C" => Some(Named::LambdaC),
            _ => None,
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An indivisible symbol: a generator or a named element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen(Gen),
    Named(Named),
}

impl Letter {
    pub fn from_name(s: &str) -> Option<Letter> {
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(g) = Gen::from_symbol(c) {
                return Some(Letter::Gen(g));
            }
        }
        Named::from_name(s).map(Letter::Named)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "{g}"),
            Letter::Named(n) => write!(f, "{n}"),
        }
    }
}

/// Lookup of the expanded word behind each named element.
pub trait Definitions {
    fn named_word(&self, name: Named) -> Option<&Word>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Letter(Letter),
    Group(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub atom: Atom,
    pub exp: BigInt,
}

impl Factor {
    pub fn letter(letter: Letter, exp: impl Into<BigInt>) -> Factor {
        Factor { atom: Atom::Letter(letter), exp: exp.into() }
    }

    pub fn group(term: Term, exp: impl Into<BigInt>) -> Factor {
        Factor { atom: Atom::Group(term), exp: exp.into() }
    }

    pub fn mentions(&self, name: Named) -> bool {
        match &self.atom {
            Atom::Letter(l) => *l == Letter::Named(name),
            Atom::Group(t) => t.mentions(name),
        }
    }

    fn inverse(&self) -> Factor {
        Factor { atom: self.atom.clone(), exp: -&self.exp }
    }
}

/// A product of factors; the empty product is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Term {
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn identity() -> Term {
        Term::default()
    }

    pub fn new(factors: Vec<Factor>) -> Term {
        Term { factors }
    }

    pub fn single(letter: Letter, exp: impl Into<BigInt>) -> Term {
        Term { factors: vec![Factor::letter(letter, exp)] }
    }

    /// The term whose factors are the syllables of `w`.
    pub fn from_word(w: &Word) -> Term {
        Term {
            factors: w
                .syllables()
                .iter()
                .map(|s| Factor::letter(Letter::Gen(s.gen), s.exp.clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mentions(&self, name: Named) -> bool {
        self.factors.iter().any(|f| f.mentions(name))
    }

    pub fn inverse(&self) -> Term {
        Term { factors: self.factors.iter().rev().map(Factor::inverse).collect() }
    }

    /// `(self)^n` as a single grouped factor.
    pub fn grouped_pow(&self, n: impl Into<BigInt>) -> Term {
        Term { factors: vec![Factor::group(self.clone(), n)] }
    }

    pub fn expand<D: Definitions + ?Sized>(&self, defs: &D) -> Result<Word, Error> {
        let mut out = Word::identity();
        for f in &self.factors {
            let base = match &f.atom {
                Atom::Letter(Letter::Gen(g)) => Word::letter(*g, 1),
                Atom::Letter(Letter::Named(n)) => defs
                    .named_word(*n)
                    .cloned()
                    .ok_or_else(|| Error::UnknownElement(n.name().to_string()))?,
                Atom::Group(t) => t.expand(defs)?,
            };
            out = out.concat(&base.pow(&f.exp));
        }
        Ok(out)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match &factor.atom {
                Atom::Letter(l) => write!(f, "{l}")?,
                Atom::Group(t) => write!(f, "({t})")?,
            }
            if !factor.exp.is_one() {
                write!(f, "^{}", factor.exp)?;
            }
        }
        Ok(())
    }
}

struct TermParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl TermParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("expression {:?}: {msg} at offset {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn product(&mut self, nested: bool) -> Result<Term, Error> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.chars.get(self.pos) else {
                if nested {
                    return Err(self.err("unclosed parenthesis"));
                }
                break;
            };
            if c == ')' {
                if !nested {
                    return Err(self.err("unbalanced ')'"));
                }
                break;
            }
            let atom = if c == '(' {
                self.pos += 1;
                let inner = self.product(true)?;
                self.pos += 1; // ')'
                Some(Atom::Group(inner))
            } else if c == '1' {
                self.pos += 1;
                None
            } else if c.is_alphabetic() || c == '_' {
                let start = self.pos;
                if Gen::from_symbol(c).is_some() {
                    // generators are single letters and may be juxtaposed
                    self.pos += 1;
                } else {
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                    {
                        self.pos += 1;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let letter = Letter::from_name(&name).ok_or_else(|| self.err(&format!("unknown symbol {name:?}")))?;
                Some(Atom::Letter(letter))
            } else {
                return Err(self.err(&format!("unexpected {c:?}")));
            };
            let exp = if self.chars.get(self.pos) == Some(&'^') {
                self.pos += 1;
                parse_integer(&self.chars, &mut self.pos).ok_or_else(|| self.err("expected exponent"))?
            } else {
                BigInt::one()
            };
            if let Some(atom) = atom {
                if !exp.is_zero() {
                    factors.push(Factor { atom, exp });
                }
            }
        }
        Ok(Term { factors })
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term, Error> {
        let mut p = TermParser { src: s, chars: s.chars().collect(), pos: 0 };
        p.product(false)
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Term, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    struct Defs(BTreeMap<Named, Word>);

    impl Definitions for Defs {
        fn named_word(&self, name: Named) -> Option<&Word> {
            self.0.get(&name)
        }
    }

    #[test]
    fn parse_and_print() {
        let t: Term = "mu^-1 (mu^6 lambda)^2".parse().unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.to_string(), "mu^-1 (mu^6 lambda)^2");
        let t: Term = "muC^21 lambdaC".parse().unwrap();
        assert_eq!(t.to_string(), "muC^21 lambdaC");
        assert_eq!("1".parse::<Term>().unwrap(), Term::identity());
        assert_eq!("ab^2".parse::<Term>().unwrap().to_string(), "a b^2");
        assert_eq!("μ^2 λ".parse::<Term>().unwrap().to_string(), "mu^2 lambda");
        assert!("(a b".parse::<Term>().is_err());
        assert!("a) b".parse::<Term>().is_err());
        assert!("nu".parse::<Term>().is_err());
    }

    #[test]
    fn expansion_follows_definitions() {
        let mu: Word = "b^-1 a".parse().unwrap();
        let defs = Defs([(Named::Mu, mu)].into_iter().collect());
        let t: Term = "mu^-1 (mu^2 a)^2".parse().unwrap();
        assert_eq!(t.expand(&defs).unwrap().to_string(), "b^-1 a^2 b^-1 a b^-1 a^2");
        let missing: Term = "lambda".parse().unwrap();
        assert!(matches!(missing.expand(&defs), Err(Error::UnknownElement(_))));
    }
}
