//! Presentations of torus-knot groups and of their `(p, q)`-cables.
//!
//! The torus-knot group is `⟨a, b | a^x = b^y⟩` with meridian `mu = b^j a^i`
//! and longitude `lambda = mu^(-xy) a^x`, where `x·j + y·i = 1`. The cable
//! group adjoins `t` subject to `mu^q lambda^p = t^p` and carries the cable
//! meridian `muC = mu^u lambda^v t^(-v)` and longitude
//! `lambdaC = muC^(-pq) t^p`, where `p·u - q·v = 1`.
//!
//! Bézout coefficients are normalized to `0 < i < x` and, whenever
//! `q = p·x·y - 1`, to `(u, v) = (xy, 1)`. Other choices define the same
//! peripheral elements; [`peripheral_invariance_check`] verifies this rather
//! than assuming it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::derivation::{check_script, Axiom, DerivationScript, Direction, LemmaSet, RelationRef, Side, Step, StepKind};
use crate::error::{Error, Result};
use crate::expr::{Definitions, Factor, Letter, Named, Term};
use crate::normal_form::equal_in_torus_group;
use crate::slope::Slope;
use crate::word::{Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusParams {
    pub x: i64,
    pub y: i64,
}

impl TorusParams {
    pub fn new(x: i64, y: i64) -> Result<TorusParams> {
        if x < 2 || y < 2 {
            return Err(Error::InvalidParams(format!("torus knot ({x},{y}): need x >= 2 and y >= 2")));
        }
        if x.gcd(&y) != 1 {
            return Err(Error::InvalidParams(format!("torus knot ({x},{y}): x and y must be coprime")));
        }
        Ok(TorusParams { x, y })
    }

    pub fn xy(&self) -> i64 {
        self.x * self.y
    }
}

/// Whether cable parameters must satisfy `q = p·x·y - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CableMode {
    #[default]
    Theorem,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableParams {
    pub p: i64,
    pub q: i64,
}

impl CableParams {
    pub fn new(torus: TorusParams, p: i64, q: i64, mode: CableMode) -> Result<CableParams> {
        if p < 2 {
            return Err(Error::InvalidParams(format!("cable ({p},{q}): need p >= 2")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidParams(format!("cable ({p},{q}): p and q must be coprime")));
        }
        if mode == CableMode::Theorem {
            let expected = theorem_q(torus, p)?;
            if q != expected {
                return Err(Error::InvalidParams(format!(
                    "cable ({p},{q}): theorem mode requires q = p·x·y - 1 = {expected}"
                )));
            }
        }
        Ok(CableParams { p, q })
    }
}

/// `q = p·x·y - 1`.
pub fn theorem_q(torus: TorusParams, p: i64) -> Result<i64> {
    p.checked_mul(torus.xy())
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| Error::InvalidParams(format!("p = {p} is too large")))
}

/// Coefficients with `x·j + y·i = 1`, `0 < i < x`, `j < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusBezout {
    pub i: i64,
    pub j: i64,
}

/// Coefficients with `p·u - q·v = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableBezout {
    pub u: i64,
    pub v: i64,
}

pub fn bezout_torus(x: i64, y: i64) -> Result<TorusBezout> {
    TorusParams::new(x, y)?;
    // i = y⁻¹ mod x
    let e = y.extended_gcd(&x);
    let i = e.x.mod_floor(&x);
    let j = (1 - y * i) / x;
    debug_assert!(x * j + y * i == 1 && 0 < i && i < x && j < 0);
    Ok(TorusBezout { i, j })
}

/// Solves `p·u - q·v = 1`. When `q = p·hint - 1` the solution is `(hint, 1)`;
/// otherwise `v` is taken in `(0, p]`.
pub fn bezout_cable(p: i64, q: i64, xy_hint: Option<i64>) -> Result<CableBezout> {
    if p < 1 {
        return Err(Error::InvalidParams(format!("cable ({p},{q}): need p >= 1")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParams(format!("cable ({p},{q}): p and q must be coprime")));
    }
    if let Some(hint) = xy_hint {
        if p.checked_mul(hint).map(|v| v - 1) == Some(q) {
            return Ok(CableBezout { u: hint, v: 1 });
        }
    }
    // q·v ≡ -1 (mod p)
    let e = q.mod_floor(&p).extended_gcd(&p);
    let mut v = (-e.x).mod_floor(&p);
    if v == 0 {
        v = p;
    }
    let num = 1i128 + q as i128 * v as i128;
    let u = i64::try_from(num / p as i128).map_err(|_| Error::InvalidParams("cable Bézout overflow".into()))?;
    debug_assert_eq!(p as i128 * u as i128 - q as i128 * v as i128, 1);
    Ok(CableBezout { u, v })
}

/// `letter^period`, the basic unit of the commutation whitelist.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerOf {
    pub letter: Letter,
    pub period: BigInt,
}

impl PowerOf {
    pub fn new(letter: Letter, period: impl Into<BigInt>) -> PowerOf {
        PowerOf { letter, period: period.into() }
    }

    /// Reads `letter` or `letter^k` with `k != 0`.
    pub fn parse(text: &str) -> Result<PowerOf> {
        let term: Term = text.parse()?;
        match term.factors.as_slice() {
            [Factor { atom: crate::expr::Atom::Letter(l), exp }] if !exp.is_zero() => {
                Ok(PowerOf { letter: *l, period: exp.abs() })
            }
            _ => Err(Error::Parse(format!("{text:?} is not a power of a single letter"))),
        }
    }

    /// True when `letter^e` is a power of `self`.
    pub fn divides(&self, letter: Letter, e: &BigInt) -> bool {
        self.letter == letter && (e % &self.period).is_zero()
    }
}

impl fmt::Display for PowerOf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.period == BigInt::from(1) {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.period)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedElement {
    pub name: Named,
    pub definition: Term,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    torus: TorusParams,
    torus_bezout: TorusBezout,
    cable: Option<(CableParams, CableBezout, CableMode)>,
    alphabet: Vec<Gen>,
    relations: Vec<Relation>,
    named: Vec<NamedElement>,
    whitelist: Vec<(PowerOf, PowerOf)>,
}

impl Definitions for GroupPresentation {
    fn named_word(&self, name: Named) -> Option<&Word> {
        self.named.iter().find(|e| e.name == name).map(|e| &e.word)
    }
}

fn letter(g: Gen) -> Letter {
    Letter::Gen(g)
}

fn named(n: Named) -> Letter {
    Letter::Named(n)
}

impl GroupPresentation {
    fn define(&mut self, name: Named, definition: Term) -> Result<()> {
        let word = definition.expand(self)?;
        self.named.push(NamedElement { name, definition, word });
        Ok(())
    }

    pub fn torus(&self) -> TorusParams {
        self.torus
    }

    pub fn torus_bezout(&self) -> TorusBezout {
        self.torus_bezout
    }

    pub fn cable(&self) -> Option<CableParams> {
        self.cable.map(|(c, _, _)| c)
    }

    pub fn cable_bezout(&self) -> Option<CableBezout> {
        self.cable.map(|(_, b, _)| b)
    }

    pub fn alphabet(&self) -> &[Gen] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }

    /// Relator words `lhs · rhs⁻¹`.
    pub fn relators(&self) -> Vec<Word> {
        self.relations
            .iter()
            .map(|r| {
                let lhs = r.lhs.expand(self).expect("relations use defined elements");
                let rhs = r.rhs.expand(self).expect("relations use defined elements");
                lhs.concat(&rhs.invert())
            })
            .collect()
    }

    pub fn named_elements(&self) -> &[NamedElement] {
        &self.named
    }

    pub fn named_element(&self, name: Named) -> Option<&NamedElement> {
        self.named.iter().find(|e| e.name == name)
    }

    pub fn whitelist(&self) -> &[(PowerOf, PowerOf)] {
        &self.whitelist
    }

    /// Whether `u` and `w` commute by a whitelisted pair: the letters must
    /// match a base pair and each power must be a multiple of its base power.
    pub fn commutes(&self, u: &PowerOf, w: &PowerOf) -> bool {
        self.whitelist.iter().any(|(l, r)| {
            let fits = |base: &PowerOf, q: &PowerOf| base.letter == q.letter && (&q.period % &base.period).is_zero();
            (fits(l, u) && fits(r, w)) || (fits(l, w) && fits(r, u))
        })
    }

    /// Whether `(u, w)` is a whitelist entry as written, in either order.
    pub fn is_whitelisted(&self, u: &PowerOf, w: &PowerOf) -> bool {
        self.whitelist.iter().any(|(l, r)| (l == u && r == w) || (l == w && r == u))
    }

    /// `muC^m lambdaC^n = 1`.
    pub fn surgery_relation(&self, slope: Slope) -> Result<Relation> {
        if self.cable.is_none() {
            return Err(Error::InvalidParams("surgery relation needs a cable presentation".into()));
        }
        Ok(Relation {
            id: "surgery".into(),
            lhs: Term::new(vec![
                Factor::letter(named(Named::MuC), slope.m()),
                Factor::letter(named(Named::LambdaC), slope.n()),
            ]),
            rhs: Term::identity(),
        })
    }

    pub fn to_document(&self) -> PresentationDocument {
        PresentationDocument {
            version: "v1".into(),
            params: DocumentParams {
                x: self.torus.x,
                y: self.torus.y,
                p: self.cable().map(|c| c.p),
                q: self.cable().map(|c| c.q),
                mode: self.cable.map(|(_, _, m)| m),
            },
            bezout: DocumentBezout {
                i: self.torus_bezout.i,
                j: self.torus_bezout.j,
                u: self.cable_bezout().map(|b| b.u),
                v: self.cable_bezout().map(|b| b.v),
            },
            alphabet: self.alphabet.clone(),
            relators: self
                .relations
                .iter()
                .zip(self.relators())
                .map(|(r, word)| DocumentRelator {
                    id: r.id.clone(),
                    relation: format!("{} = {}", r.lhs, r.rhs),
                    word,
                })
                .collect(),
            named_elements: self
                .named
                .iter()
                .map(|e| DocumentNamed { name: e.name.name().into(), definition: e.definition.clone(), word: e.word.clone() })
                .collect(),
            whitelist: self.whitelist.iter().map(|(l, r)| [l.to_string(), r.to_string()]).collect(),
        }
    }
}

/// JSON form of a presentation (schema version `v1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub version: String,
    pub params: DocumentParams,
    pub bezout: DocumentBezout,
    pub alphabet: Vec<Gen>,
    pub relators: Vec<DocumentRelator>,
    pub named_elements: Vec<DocumentNamed>,
    pub whitelist: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentParams {
    pub x: i64,
    pub y: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<CableMode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentBezout {
    pub i: i64,
    pub j: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRelator {
    pub id: String,
    pub relation: String,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentNamed {
    pub name: String,
    pub definition: Term,
    pub word: Word,
}

fn torus_with_bezout(torus: TorusParams, bz: TorusBezout) -> Result<GroupPresentation> {
    let TorusParams { x, y } = torus;
    let mut pres = GroupPresentation {
        torus,
        torus_bezout: bz,
        cable: None,
        alphabet: vec![Gen::A, Gen::B],
        relations: vec![Relation {
            id: "torus".into(),
            lhs: Term::single(letter(Gen::A), x),
            rhs: Term::single(letter(Gen::B), y),
        }],
        named: Vec::new(),
        whitelist: vec![
            (PowerOf::new(letter(Gen::A), x), PowerOf::new(letter(Gen::B), 1)),
            (PowerOf::new(letter(Gen::A), 1), PowerOf::new(letter(Gen::B), y)),
            (PowerOf::new(named(Named::Mu), 1), PowerOf::new(named(Named::Lambda), 1)),
        ],
    };
    pres.define(
        Named::Mu,
        Term::new(vec![Factor::letter(letter(Gen::B), bz.j), Factor::letter(letter(Gen::A), bz.i)]),
    )?;
    pres.define(
        Named::Lambda,
        Term::new(vec![Factor::letter(named(Named::Mu), -torus.xy()), Factor::letter(letter(Gen::A), x)]),
    )?;
    Ok(pres)
}

pub fn torus_presentation(x: i64, y: i64) -> Result<GroupPresentation> {
    let torus = TorusParams::new(x, y)?;
    torus_with_bezout(torus, bezout_torus(x, y)?)
}

fn cable_with_bezout(torus: TorusParams, tb: TorusBezout, cable: CableParams, cb: CableBezout, mode: CableMode) -> Result<GroupPresentation> {
    let CableParams { p, q } = cable;
    let mut pres = torus_with_bezout(torus, tb)?;
    pres.cable = Some((cable, cb, mode));
    pres.alphabet.push(Gen::T);
    pres.relations.push(Relation {
        id: "cable".into(),
        lhs: Term::new(vec![Factor::letter(named(Named::Mu), q), Factor::letter(named(Named::Lambda), p)]),
        rhs: Term::single(letter(Gen::T), p),
    });
    pres.define(
        Named::MuC,
        Term::new(vec![
            Factor::letter(named(Named::Mu), cb.u),
            Factor::letter(named(Named::Lambda), cb.v),
            Factor::letter(letter(Gen::T), -cb.v),
        ]),
    )?;
    let pq = p.checked_mul(q).ok_or_else(|| Error::InvalidParams("p·q overflows".into()))?;
    pres.define(
        Named::LambdaC,
        Term::new(vec![Factor::letter(named(Named::MuC), -pq), Factor::letter(letter(Gen::T), p)]),
    )?;
    let tp = PowerOf::new(letter(Gen::T), p);
    pres.whitelist.extend([
        (PowerOf::new(named(Named::Mu), 1), tp.clone()),
        (PowerOf::new(named(Named::Lambda), 1), tp.clone()),
        (PowerOf::new(named(Named::MuC), 1), PowerOf::new(named(Named::LambdaC), 1)),
        (PowerOf::new(named(Named::MuC), 1), tp.clone()),
        (PowerOf::new(named(Named::LambdaC), 1), tp),
    ]);
    Ok(pres)
}

pub fn cable_presentation(x: i64, y: i64, p: i64, q: i64, mode: CableMode) -> Result<GroupPresentation> {
    let torus = TorusParams::new(x, y)?;
    let cable = CableParams::new(torus, p, q, mode)?;
    let tb = bezout_torus(x, y)?;
    let cb = bezout_cable(p, q, Some(torus.xy()))?;
    cable_with_bezout(torus, tb, cable, cb, mode)
}

/// Reduced expansion of `muC^m lambdaC^n`.
pub fn surgery_relator(pres: &GroupPresentation, slope: Slope) -> Result<Word> {
    pres.surgery_relation(slope)?.lhs.expand(pres)
}

/// Meridian `b^j a^i` for an arbitrary Bézout pair.
pub fn meridian_word(i: i64, j: i64) -> Word {
    Word::from_syllables([(Gen::B, j), (Gen::A, i)])
}

/// Result of comparing peripheral elements built from shifted Bézout pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub k: i64,
    pub torus_meridian: bool,
    pub cable_meridian: bool,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.torus_meridian && self.cable_meridian
    }
}

/// Derivation showing `mu^u lambda^v t^-v = mu^(u+kq) lambda^(v+kp) t^-(v+kp)`
/// in the cable group, using `mu^q lambda^p = t^p` and the commutation of
/// `mu` and `lambda`.
pub fn cable_meridian_invariance_script(cable: CableParams, cb: CableBezout, k: i64) -> DerivationScript {
    let CableParams { p, q } = cable;
    let CableBezout { u, v } = cb;
    let parse = |s: String| -> Term { s.parse().expect("generated expression parses") };
    let base = parse(format!("mu^{u} lambda^{v} t^{}", -v));
    let shifted = parse(format!("mu^{} lambda^{} t^{}", u + k * q, v + k * p, -(v + k * p)));
    DerivationScript {
        id: format!("cable_meridian_shift_{k}"),
        context: crate::derivation::Context::KnotGroup,
        axiom: Axiom::Reflexive(base.clone()),
        steps: if k == 0 { Vec::new() } else { vec![
            Step {
                kind: StepKind::FreeReduce { side: Side::Rhs, position: 2, len: 1, result: parse(format!("t^{} t^{}", k * p, -(v + k * p))) },
                by: "split the t-power".into(),
            },
            Step {
                kind: StepKind::SubstituteRelation {
                    side: Side::Rhs,
                    position: 2,
                    len: 1,
                    relation: RelationRef::Cable,
                    direction: Direction::Backward,
                    power: k,
                    result: parse(format!("(mu^{q} lambda^{p})^{k}")),
                },
                by: "mu^q lambda^p = t^p".into(),
            },
            Step {
                kind: StepKind::CommuteSwap {
                    side: Side::Rhs,
                    position: 0,
                    len: 3,
                    pair: ["mu".into(), "lambda".into()],
                    result: parse(format!("mu^{} lambda^{}", u + k * q, v + k * p)),
                },
                by: "mu and lambda commute".into(),
            },
        ] },
        claim: crate::derivation::Claim { lhs: base, rhs: shifted },
    }
}

/// Checks that shifting the Bézout coefficients by `k` leaves both meridians
/// unchanged: the torus meridian via the normal form, the cable meridian via
/// a checked derivation.
pub fn peripheral_invariance_check(x: i64, y: i64, p: i64, q: i64, k: i64) -> Result<InvarianceReport> {
    let torus = TorusParams::new(x, y)?;
    let tb = bezout_torus(x, y)?;
    let original = meridian_word(tb.i, tb.j);
    let shifted = meridian_word(tb.i + k * x, tb.j - k * y);
    let torus_meridian = equal_in_torus_group(&original, &shifted, x, y)?;

    let cable = CableParams::new(torus, p, q, CableMode::General)?;
    let cb = bezout_cable(p, q, Some(torus.xy()))?;
    let pres = cable_with_bezout(torus, tb, cable, cb, CableMode::General)?;
    let script = cable_meridian_invariance_script(cable, cb, k);
    let cable_meridian = check_script(&script, &pres, &LemmaSet::default()).is_ok();
    Ok(InvarianceReport { k, torus_meridian, cable_meridian })
}
