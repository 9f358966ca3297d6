//! Exact slope arithmetic: surgery slopes, the Cramer determinants used to
//! interpolate signs between two slopes, the slope sequence `pq - 1/β`, and
//! the genus / L-space window identity for cables of torus knots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced surgery slope `m/n` with `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    m: i64,
    n: i64,
}

impl Slope {
    pub fn new(m: i64, n: i64) -> Result<Slope> {
        if n < 1 {
            return Err(Error::InvalidParams(format!("slope {m}/{n}: denominator must be >= 1")));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::InvalidParams(format!("slope {m}/{n} is not in lowest terms")));
        }
        Ok(Slope { m, n })
    }

    pub fn integer(m: i64) -> Slope {
        Slope { m, n: 1 }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        // denominators are positive, so cross-multiplication preserves order
        (self.m as i128 * other.n as i128).cmp(&(other.m as i128 * self.n as i128))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let parse = |part: &str| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("slope {s:?}: expected M/N or M")))
        };
        match s.split_once('/') {
            Some((m, n)) => Slope::new(parse(m)?, parse(n)?),
            None => Ok(Slope::integer(parse(s)?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Determinants expressing `s` as a combination of `s0` and `s1`:
/// `n0·d0 + n1·d1 = n·d` and `m0·d0 + m1·d1 = m·d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CramerTriple {
    pub d0: i128,
    pub d1: i128,
    pub d: i128,
    pub slopes: [Slope; 3],
}

impl CramerTriple {
    pub fn identities_hold(&self) -> bool {
        let [s0, s1, s] = self.slopes;
        let (m0, n0, m1, n1, m, n) =
            (s0.m as i128, s0.n as i128, s1.m as i128, s1.n as i128, s.m as i128, s.n as i128);
        n0 * self.d0 + n1 * self.d1 == n * self.d && m0 * self.d0 + m1 * self.d1 == m * self.d
    }

    pub fn all_positive(&self) -> bool {
        self.d0 > 0 && self.d1 > 0 && self.d > 0
    }
}

pub fn cramer(s0: Slope, s1: Slope, s: Slope) -> Result<CramerTriple> {
    if s0 == s1 {
        return Err(Error::InvalidParams(format!("cramer: boundary slopes coincide ({s0})")));
    }
    let (m0, n0, m1, n1, m, n) =
        (s0.m as i128, s0.n as i128, s1.m as i128, s1.n as i128, s.m as i128, s.n as i128);
    let triple = CramerTriple {
        d0: n * m1 - n1 * m,
        d1: n0 * m - m0 * n,
        d: n0 * m1 - m0 * n1,
        slopes: [s0, s1, s],
    };
    debug_assert!(triple.identities_hold());
    Ok(triple)
}

/// The slope `pq - 1/β = (pqβ - 1)/β`.
pub fn beta_slope(p: i64, q: i64, beta: i64) -> Result<Slope> {
    if beta < 1 {
        return Err(Error::InvalidParams(format!("beta must be >= 1, got {beta}")));
    }
    let m = p
        .checked_mul(q)
        .and_then(|pq| pq.checked_mul(beta))
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| Error::InvalidParams("beta slope numerator overflows".into()))?;
    Slope::new(m, beta)
}

/// Genus of the `(p, q)`-cable of the `(x, y)`-torus knot.
pub fn genus(x: i64, y: i64, p: i64, q: i64) -> Ratio<i64> {
    Ratio::new((p - 1) * (q - 1) + p * (x - 1) * (y - 1), 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub x: i64,
    pub y: i64,
    pub p: i64,
    pub q: i64,
    pub genus: String,
    /// `2g - 1`, the smallest L-space surgery slope.
    pub threshold: String,
    /// `(pq - 1) - [p(x + y) - 2]`.
    pub rearranged: i64,
    /// `p(x + y) - 2`.
    pub margin: i64,
    pub identity_holds: bool,
    pub margin_positive: bool,
}

impl WindowReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.margin_positive
    }
}

pub fn lspace_window_check(x: i64, y: i64, p: i64) -> WindowReport {
    let q = p * x * y - 1;
    let g = genus(x, y, p, q);
    let threshold = g * 2 - 1;
    let margin = p * (x + y) - 2;
    let rearranged = (p * q - 1) - margin;
    WindowReport {
        x,
        y,
        p,
        q,
        genus: g.to_string(),
        threshold: threshold.to_string(),
        rearranged,
        margin,
        identity_holds: threshold == Ratio::from_integer(rearranged),
        margin_positive: margin > 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn slope_syntax() {
        assert_eq!(s("43/2"), Slope::new(43, 2).unwrap());
        assert_eq!(s("21"), Slope::integer(21));
        assert_eq!(s("21").to_string(), "21/1");
        assert!("42/4".parse::<Slope>().is_err());
        assert!("1/0".parse::<Slope>().is_err());
        assert!("1/-2".parse::<Slope>().is_err());
        assert!("x/2".parse::<Slope>().is_err());
        assert!(s("43/2") > s("21") && s("43/2") < s("22"));
    }

    #[test]
    fn cramer_examples() {
        let c = cramer(s("21"), s("22"), s("43/2")).unwrap();
        assert_eq!((c.d0, c.d1, c.d), (1, 1, 1));
        assert!(c.identities_hold());
        let c = cramer(s("21"), s("22"), s("21")).unwrap();
        assert_eq!(c.d1, 0);
        assert!(cramer(s("21"), s("21"), s("43/2")).is_err());
    }

    #[test]
    fn beta_slopes() {
        assert_eq!(beta_slope(2, 11, 1).unwrap(), s("21/1"));
        let b3 = beta_slope(2, 11, 3).unwrap();
        assert_eq!(b3, s("65/3"));
        // 65/3 = 22 - 1/3
        assert_eq!(b3.m(), 22 * b3.n() - 1);
        assert!(beta_slope(2, 11, 0).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(2, 3, 2, 11), Ratio::from_integer(7));
        assert_eq!(genus(2, 3, 3, 17), Ratio::from_integer(19));
        assert_eq!(genus(2, 3, 2, 11) * 2 - 1, Ratio::from_integer(13));
    }

    #[test]
    fn window_examples() {
        let r = lspace_window_check(2, 3, 2);
        assert_eq!((r.threshold.as_str(), r.rearranged, r.margin), ("13", 13, 8));
        assert!(r.passed());
        let r = lspace_window_check(3, 5, 2);
        assert_eq!((r.q, r.threshold.as_str(), r.rearranged), (29, "43", 43));
        assert_eq!(r.genus, "22");
    }
}
