//! Word problem for the torus-knot group `⟨a, b | a^x = b^y⟩`.
//!
//! `c = a^x = b^y` is central and the quotient by `⟨c⟩` is `Z/x * Z/y`, so
//! every element is uniquely `c^k` times an alternating product of
//! `a^e` (`0 < e < x`) and `b^e` (`0 < e < y`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::word::{parse_integer, Gen, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusNormalForm {
    pub central_exponent: BigInt,
    /// Alternating `a`/`b` syllables with exponents in `[1, x-1]` / `[1, y-1]`.
    pub syllables: Vec<(Gen, BigInt)>,
}

fn period(g: Gen, x: i64, y: i64) -> Result<i64> {
    match g {
        Gen::A => Ok(x),
        Gen::B => Ok(y),
        Gen::T => Err(Error::InvalidParams("normal form: word contains t".into())),
    }
}

pub fn normal_form(w: &Word, x: i64, y: i64) -> Result<TorusNormalForm> {
    if x < 1 || y < 1 {
        return Err(Error::InvalidParams(format!("normal form: bad exponents ({x},{y})")));
    }
    let mut central = BigInt::zero();
    let mut stack: Vec<(Gen, BigInt)> = Vec::with_capacity(w.len());
    for s in w.syllables() {
        let per = BigInt::from(period(s.gen, x, y)?);
        let mut exp = s.exp.clone();
        // merge with the top before reducing so that a^1 a^1 (x = 2) becomes c
        if let Some((g, top)) = stack.last() {
            if *g == s.gen {
                exp += top;
                stack.pop();
            }
        }
        let (k, r) = exp.div_mod_floor(&per);
        central += k;
        if !r.is_zero() {
            stack.push((s.gen, r));
        }
    }
    Ok(TorusNormalForm { central_exponent: central, syllables: stack })
}

pub fn equal_in_torus_group(w1: &Word, w2: &Word, x: i64, y: i64) -> Result<bool> {
    Ok(normal_form(w1, x, y)? == normal_form(w2, x, y)?)
}

/// Replaces each `t^(kp)` by the expansion of `(mu^q lambda^p)^k`.
pub fn eliminate_t(w: &Word, pres: &GroupPresentation) -> Result<Word> {
    let Some(cable) = pres.cable() else {
        return Err(Error::InvalidParams("eliminate_t needs a cable presentation".into()));
    };
    let relation = pres.relation("cable").expect("cable presentations carry the cable relation");
    let tp_image = relation.lhs.expand(pres)?;
    let p = BigInt::from(cable.p);
    let mut out = Word::identity();
    for s in w.syllables() {
        if s.gen == Gen::T {
            let (k, r) = s.exp.div_mod_floor(&p);
            if !r.is_zero() {
                return Err(Error::NonEliminable { exponent: s.exp.to_string(), period: cable.p });
            }
            out = out.concat(&tp_image.pow(&k));
        } else {
            out = out.concat(&Word::letter(s.gen, s.exp.clone()));
        }
    }
    Ok(out)
}

impl TorusNormalForm {
    /// The canonical representative word `a^(xk) · syllables`.
    pub fn to_word(&self, x: i64) -> Word {
        Word::letter(Gen::A, &self.central_exponent * x)
            .concat(&Word::from_syllables(self.syllables.iter().cloned()))
    }
}

impl fmt::Display for TorusNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c^{}", self.central_exponent)?;
        if !self.syllables.is_empty() {
            write!(f, " ·")?;
            for (g, e) in &self.syllables {
                write!(f, " {g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for TorusNormalForm {
    type Err = Error;

    /// Parses the printed form. Exponent ranges are not checked because they
    /// depend on `(x, y)`; use [`TorusNormalForm::is_canonical`].
    fn from_str(s: &str) -> Result<TorusNormalForm> {
        let err = || Error::Parse(format!("normal form {s:?}: expected `c^k · a^e b^e ...`"));
        let (head, tail) = match s.split_once('·') {
            Some((h, t)) => (h.trim(), Some(t)),
            None => (s.trim(), None),
        };
        let central = head.strip_prefix("c^").ok_or_else(err)?.parse::<BigInt>().map_err(|_| err())?;
        let mut syllables = Vec::new();
        if let Some(tail) = tail {
            for tok in tail.split_whitespace() {
                let chars: Vec<char> = tok.chars().collect();
                let gen = chars.first().and_then(|c| Gen::from_symbol(*c)).ok_or_else(err)?;
                if chars.get(1) != Some(&'^') {
                    return Err(err());
                }
                let mut pos = 2;
                let e = parse_integer(&chars, &mut pos).ok_or_else(err)?;
                if pos != chars.len() {
                    return Err(err());
                }
                syllables.push((gen, e));
            }
            if syllables.is_empty() {
                return Err(err());
            }
        }
        Ok(TorusNormalForm { central_exponent: central, syllables })
    }
}

impl TorusNormalForm {
    pub fn is_canonical(&self, x: i64, y: i64) -> bool {
        let alternating = self.syllables.windows(2).all(|w| w[0].0 != w[1].0);
        let in_range = self.syllables.iter().all(|(g, e)| match period(*g, x, y) {
            Ok(per) => e.is_positive() && *e < BigInt::from(per),
            Err(_) => false,
        });
        alternating && in_range
    }
}

impl Serialize for TorusNormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TorusNormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<TorusNormalForm, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Definitions, Named};
    use crate::presentation::{cable_presentation, CableMode};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn nf(s: &str) -> TorusNormalForm {
        normal_form(&w(s), 2, 3).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(nf("a^2 b^-3").to_string(), "c^0");
        assert_eq!(nf("a^3").to_string(), "c^1 · a^1");
        assert_eq!(nf("a^-1").to_string(), "c^-1 · a^1");
        assert_eq!(nf("a b a").to_string(), "c^0 · a^1 b^1 a^1");
        assert_eq!(nf("a b^3 a").to_string(), "c^2");
        assert!(normal_form(&w("a t"), 2, 3).is_err());
    }

    #[test]
    fn lemma_instance() {
        let pres = cable_presentation(2, 3, 2, 11, CableMode::Theorem).unwrap();
        let mu = pres.named_word(Named::Mu).unwrap();
        let lambda = pres.named_word(Named::Lambda).unwrap();
        let word = mu.powi(11).concat(&lambda.powi(2));
        let form = normal_form(&word, 2, 3).unwrap();
        assert_eq!(form.to_string(), "c^1 · a^1 b^1");
        assert_eq!(form, nf("a^3 b"));
    }

    #[test]
    fn equality() {
        let eq = |u: &str, v: &str| equal_in_torus_group(&w(u), &w(v), 2, 3).unwrap();
        assert!(eq("a^2", "b^3"));
        assert!(!eq("a", "b"));
        assert!(eq("1", "a^2 b^-3"));
    }

    #[test]
    fn eliminate() {
        let pres = cable_presentation(2, 3, 2, 11, CableMode::Theorem).unwrap();
        let mu = pres.named_word(Named::Mu).unwrap();
        let lambda = pres.named_word(Named::Lambda).unwrap();
        assert_eq!(eliminate_t(&w("t^2"), &pres).unwrap(), mu.powi(11).concat(&lambda.powi(2)));
        assert_eq!(eliminate_t(&Word::identity(), &pres).unwrap(), Word::identity());
        assert!(matches!(eliminate_t(&w("t"), &pres), Err(Error::NonEliminable { .. })));
    }

    #[test]
    fn printed_form_round_trips() {
        for s in ["c^0", "c^-3 · b^2 a^1", "c^12 · a^1"] {
            let form: TorusNormalForm = s.parse().unwrap();
            assert_eq!(form.to_string(), s);
        }
        assert!("a^1".parse::<TorusNormalForm>().is_err());
        assert!("c^1 ·".parse::<TorusNormalForm>().is_err());
        assert!(nf("b^-1 a b^5").is_canonical(2, 3));
    }
}
