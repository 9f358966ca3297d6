//! Freely reduced words over the generators `a`, `b` and `t`.
//!
//! A [`Word`] is a list of syllables `g^e` with nonzero big-integer exponents
//! and no two adjacent syllables on the same generator. Every constructor and
//! operation returns a reduced value, so structural equality of two words is
//! equality in the free group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A letter of a concrete word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "t")]
    T,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::T];

    pub fn symbol(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::T => 't',
        }
    }

    pub fn from_symbol(c: char) -> Option<Gen> {
        match c {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            't' => Some(Gen::T),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A maximal run `gen^exp` inside a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: BigInt,
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Appends `gen^exp` to a reduced syllable list, merging and cancelling at the
/// boundary.
fn push_syllable(out: &mut Vec<Syllable>, gen: Gen, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.gen == gen {
            last.exp += exp;
            if last.exp.is_zero() {
                out.pop();
            }
            return;
        }
    }
    out.push(Syllable { gen, exp });
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    /// `gen^exp` as a one-syllable word (or the identity when `exp` is zero).
    pub fn letter(gen: Gen, exp: impl Into<BigInt>) -> Word {
        let mut syllables = Vec::with_capacity(1);
        push_syllable(&mut syllables, gen, exp.into());
        Word { syllables }
    }

    /// Builds a word from arbitrary syllables, freely reducing them.
    pub fn from_syllables<I, E>(iter: I) -> Word
    where
        I: IntoIterator<Item = (Gen, E)>,
        E: Into<BigInt>,
    {
        let mut syllables = Vec::new();
        for (gen, exp) in iter {
            push_syllable(&mut syllables, gen, exp.into());
        }
        Word { syllables }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// True when every syllable uses one of `gens`.
    pub fn uses_only(&self, gens: &[Gen]) -> bool {
        self.syllables.iter().all(|s| gens.contains(&s.gen))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.reserve(other.syllables.len());
        for s in &other.syllables {
            push_syllable(&mut syllables, s.gen, s.exp.clone());
        }
        Word { syllables }
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -&s.exp })
                .collect(),
        }
    }

    /// Splits `self` as `conj · core · conj⁻¹` with `core` cyclically reduced.
    fn cyclic_decomposition(&self) -> (Word, Word) {
        let mut prefix: Vec<Syllable> = Vec::new();
        let mut core: Vec<Syllable> = self.syllables.clone();
        // Peel matching ends until the first and last syllables differ in generator.
        loop {
            if core.len() < 2 || core[0].gen != core[core.len() - 1].gen {
                break;
            }
            let last = core.pop().expect("len >= 2");
            // w = g^{-e} · (g^{e} w' ) · g^{e} where w' is w without its last syllable.
            push_syllable(&mut prefix, last.gen, -&last.exp);
            let mut rotated = Vec::with_capacity(core.len());
            push_syllable(&mut rotated, last.gen, last.exp);
            for s in core.drain(..) {
                push_syllable(&mut rotated, s.gen, s.exp);
            }
            core = rotated;
        }
        (Word { syllables: prefix }, Word { syllables: core })
    }

    /// The `n`-fold product, with `power(w, -n) = invert(power(w, n))`.
    pub fn pow(&self, n: &BigInt) -> Word {
        if n.is_zero() || self.is_identity() {
            return Word::identity();
        }
        if n.is_negative() {
            return self.invert().pow(&-n);
        }
        if n.is_one() {
            return self.clone();
        }
        let (conj, core) = self.cyclic_decomposition();
        let body = if core.len() == 1 {
            let s = &core.syllables[0];
            Word::letter(s.gen, &s.exp * n)
        } else {
            let copies = n
                .to_usize()
                .expect("power of a cyclically reduced word is too long to materialize");
            let mut syllables = Vec::with_capacity(core.len() * copies);
            for _ in 0..copies {
                syllables.extend(core.syllables.iter().cloned());
            }
            Word { syllables }
        };
        conj.concat(&body).concat(&conj.invert())
    }

    pub fn powi(&self, n: i64) -> Word {
        self.pow(&BigInt::from(n))
    }

    /// Exponent sum per generator; all three generators are always present.
    pub fn abelianize(&self) -> BTreeMap<Gen, BigInt> {
        let mut sums: BTreeMap<Gen, BigInt> = Gen::ALL.iter().map(|g| (*g, BigInt::zero())).collect();
        for s in &self.syllables {
            *sums.get_mut(&s.gen).expect("all generators present") += &s.exp;
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if s.exp.is_one() {
                write!(f, "{}", s.gen)?;
            } else {
                write!(f, "{}^{}", s.gen, s.exp)?;
            }
        }
        Ok(())
    }
}

/// Reads an optionally signed decimal integer starting at `chars[*pos]`.
pub(crate) fn parse_integer(chars: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        *pos = start;
        return None;
    }
    let text: String = chars[start..*pos].iter().collect();
    text.parse().ok()
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word, Error> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut syllables = Vec::new();
        let err = |msg: &str, at: usize| Error::Parse(format!("word {s:?}: {msg} at offset {at}"));
        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() {
                pos += 1;
                continue;
            }
            if c == '1' && syllables.is_empty() {
                // identity marker, only valid as the whole word
                if chars[pos + 1..].iter().all(|c| c.is_whitespace()) {
                    return Ok(Word::identity());
                }
                return Err(err("identity marker must stand alone", pos));
            }
            let gen = Gen::from_symbol(c).ok_or_else(|| err("unknown generator", pos))?;
            pos += 1;
            let exp = if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                parse_integer(&chars, &mut pos).ok_or_else(|| err("expected exponent", pos))?
            } else {
                BigInt::one()
            };
            push_syllable(&mut syllables, gen, exp);
        }
        Ok(Word { syllables })
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn concat_cancels_at_the_boundary() {
        assert_eq!(w("a^2").concat(&w("a^-2")), Word::identity());
        assert_eq!(w("a^2 b").concat(&w("b^-1")), w("a^2"));
        assert_eq!(w("b^-1 a").concat(&w("b^-1 a")).to_string(), "b^-1 a b^-1 a");
    }

    #[test]
    fn invert_reverses_and_negates() {
        assert_eq!(Word::identity().invert(), Word::identity());
        assert_eq!(w("a^2 b^-1").invert().to_string(), "b a^-2");
        assert_eq!(w("b^-1 a").invert().to_string(), "a^-1 b");
    }

    #[test]
    fn powers() {
        assert_eq!(w("a").powi(3).to_string(), "a^3");
        assert_eq!(w("b^-1 a").powi(2).to_string(), "b^-1 a b^-1 a");
        assert_eq!(w("a b a^-1").powi(5).to_string(), "a b^5 a^-1");
        assert_eq!(w("a b a^-1").powi(0), Word::identity());
        assert_eq!(w("a^2 b a^3").powi(2).to_string(), "a^2 b a^5 b a^3");
        assert_eq!(w("a^2 b a^3").powi(-2), w("a^2 b a^3").powi(2).invert());
    }

    #[test]
    fn abelianization() {
        let zero = Word::identity().abelianize();
        assert!(zero.values().all(|v| v.is_zero()));
        let ab = w("b^-1 a").abelianize();
        assert_eq!(ab[&Gen::A], BigInt::from(1));
        assert_eq!(ab[&Gen::B], BigInt::from(-1));
        assert_eq!(ab[&Gen::T], BigInt::from(0));
    }

    #[test]
    fn text_syntax() {
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w(""), Word::identity());
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(w("a^3 b^-1 t^2").to_string(), "a^3 b^-1 t^2");
        assert_eq!(w("a^1 a^2").to_string(), "a^3");
        assert_eq!(w("ab").to_string(), "a b");
        assert!("a^".parse::<Word>().is_err());
        assert!("x".parse::<Word>().is_err());
        assert!("a 1".parse::<Word>().is_err());
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = Word::letter(Gen::T, big.clone());
        assert_eq!(x.pow(&big).syllables()[0].exp, &big * &big);
    }
}
