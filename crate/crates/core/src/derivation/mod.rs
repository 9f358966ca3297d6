//! A small proof checker for equalities in the cable group and its surgered
//! quotients.
//!
//! A [`DerivationScript`] starts from an axiom (a defining relation, the
//! surgery relation, an earlier proven lemma, or `X = X`) and edits one side
//! at a time. Each [`Step`] addresses a contiguous range of top-level factors
//! of that side and is accepted only if it replaces the range by an element
//! that is equal in the context group:
//!
//! * `free_reduce`, `substitute_definition`, `collect_powers`: the expansions
//!   agree as reduced words (definitions are unfolded during expansion);
//! * `substitute_relation`: the range expands to `L^k` and the result to
//!   `R^k` for a relation `L = R` available in the context;
//! * `commute_swap`: range and result are products of powers of a
//!   whitelisted commuting pair with the same exponent sums.
//!
//! Both-sides steps multiply, power, invert, or swap the whole equation.
//! The checker never searches; it only validates.

mod template;

pub use template::{ScriptLibrary, Vars};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, StepError};
use crate::expr::{Atom, Factor, Named, Term};
use crate::presentation::{GroupPresentation, PowerOf, Relation};
use crate::slope::Slope;
use crate::word::Word;

/// The group an equation holds in: the cable knot group `G`, or the quotient
/// `H(m/n)` of `G` by the surgery relator at slope `m/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    KnotGroup,
    Surgered(Slope),
}

impl Context {
    /// Equations proven in `other` also hold in `self`.
    pub fn imports(&self, other: &Context) -> bool {
        match other {
            Context::KnotGroup => true,
            Context::Surgered(_) => self == other,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::KnotGroup => f.write_str("G"),
            Context::Surgered(s) => write!(f, "H({s})"),
        }
    }
}

impl FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Context, Error> {
        let s = s.trim();
        if s == "G" {
            return Ok(Context::KnotGroup);
        }
        s.strip_prefix("H(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("context {s:?}: expected G or H(m/n)")))?
            .parse()
            .map(Context::Surgered)
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<$ty, D::Error> {
                let text = String::deserialize(deserializer)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Context);

/// A relation usable by a step: a presentation relation, the surgery
/// relation of the current context, or a previously proven lemma.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelationRef {
    Torus,
    Cable,
    Surgery,
    Lemma(String),
}

impl fmt::Display for RelationRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationRef::Torus => f.write_str("torus"),
            RelationRef::Cable => f.write_str("cable"),
            RelationRef::Surgery => f.write_str("surgery"),
            RelationRef::Lemma(id) => write!(f, "lemma:{id}"),
        }
    }
}

impl FromStr for RelationRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelationRef, Error> {
        match s {
            "torus" => Ok(RelationRef::Torus),
            "cable" => Ok(RelationRef::Cable),
            "surgery" => Ok(RelationRef::Surgery),
            _ => match s.strip_prefix("lemma:") {
                Some(id) if !id.is_empty() => Ok(RelationRef::Lemma(id.to_string())),
                _ => Err(Error::Parse(format!("unknown relation {s:?}"))),
            },
        }
    }
}

string_serde!(RelationRef);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Replace the relation's left side by its right side.
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Left,
    Right,
}

fn one() -> i64 {
    1
}

fn is_one(v: &i64) -> bool {
    *v == 1
}

fn is_false(v: &bool) -> bool {
    !*v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplier {
    /// The same term on both sides.
    Term(Term),
    /// `L^power` on the left side and `R^power` on the right side of the
    /// equation, for a relation `L = R`.
    Relation { id: RelationRef, power: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    SubstituteRelation {
        side: Side,
        position: usize,
        len: usize,
        relation: RelationRef,
        direction: Direction,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        power: i64,
        result: Term,
    },
    SubstituteDefinition {
        side: Side,
        position: usize,
        len: usize,
        name: String,
        direction: Direction,
        result: Term,
    },
    FreeReduce {
        side: Side,
        position: usize,
        len: usize,
        result: Term,
    },
    CollectPowers {
        side: Side,
        position: usize,
    },
    CommuteSwap {
        side: Side,
        position: usize,
        len: usize,
        pair: [String; 2],
        result: Term,
    },
    MultiplyBothSides {
        side: Hand,
        factor: Multiplier,
    },
    PowerBothSides {
        n: i64,
    },
    InvertBothSides,
    SwapSides,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub kind: StepKind,
    /// Human-readable justification; not interpreted by the checker.
    #[serde(default)]
    pub by: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Relation {
        id: RelationRef,
        #[serde(default, skip_serializing_if = "is_false")]
        flip: bool,
    },
    Reflexive(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub id: String,
    pub context: Context,
    pub axiom: Axiom,
    pub steps: Vec<Step>,
    pub claim: Claim,
}

/// An equation established by a checked script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenEquation {
    pub id: String,
    pub lhs: Word,
    pub rhs: Word,
    pub context: Context,
    pub script: DerivationScript,
}

/// Proven equations available as relations, in proof order.
#[derive(Clone, Debug, Default)]
pub struct LemmaSet {
    items: Vec<ProvenEquation>,
}

impl LemmaSet {
    pub fn new() -> LemmaSet {
        LemmaSet::default()
    }

    pub fn push(&mut self, eq: ProvenEquation) {
        self.items.push(eq);
    }

    pub fn get(&self, id: &str) -> Option<&ProvenEquation> {
        self.items.iter().find(|e| e.id == id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProvenEquation> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<ProvenEquation> {
        self.items
    }
}

/// The working state of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationState {
    pub lhs: Term,
    pub rhs: Term,
}

impl EquationState {
    fn side(&self, side: Side) -> &Term {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Term {
        match side {
            Side::Lhs => &mut self.lhs,
            Side::Rhs => &mut self.rhs,
        }
    }
}

impl fmt::Display for EquationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Everything a step may consult.
pub struct ProofEnv<'a> {
    pub pres: &'a GroupPresentation,
    pub context: Context,
    pub lemmas: &'a LemmaSet,
}

impl ProofEnv<'_> {
    fn relation(&self, r: &RelationRef) -> Result<(Term, Term), String> {
        let rel = |id: &str| -> Result<(Term, Term), String> {
            self.pres
                .relation(id)
                .map(|Relation { lhs, rhs, .. }| (lhs.clone(), rhs.clone()))
                .ok_or_else(|| format!("presentation has no {id} relation"))
        };
        match r {
            RelationRef::Torus => rel("torus"),
            RelationRef::Cable => rel("cable"),
            RelationRef::Surgery => match self.context {
                Context::Surgered(s) => {
                    let Relation { lhs, rhs, .. } = self.pres.surgery_relation(s).map_err(|e| e.to_string())?;
                    Ok((lhs, rhs))
                }
                Context::KnotGroup => Err("the surgery relation is not available in G".into()),
            },
            RelationRef::Lemma(id) => {
                let lemma = self.lemmas.get(id).ok_or_else(|| format!("unknown lemma {id:?}"))?;
                if !self.context.imports(&lemma.context) {
                    return Err(format!("lemma {id:?} holds in {} and cannot be used in {}", lemma.context, self.context));
                }
                Ok((lemma.script.claim.lhs.clone(), lemma.script.claim.rhs.clone()))
            }
        }
    }

    fn expand(&self, t: &Term) -> Result<Word, String> {
        t.expand(self.pres).map_err(|e| e.to_string())
    }

    fn expand_slice(&self, factors: &[Factor]) -> Result<Word, String> {
        self.expand(&Term::new(factors.to_vec()))
    }
}

fn range(term: &Term, position: usize, len: usize) -> Result<std::ops::Range<usize>, String> {
    if len == 0 {
        return Err("empty factor range".into());
    }
    let end = position.checked_add(len).ok_or("factor range overflows")?;
    if end > term.len() {
        return Err(format!("factor range {position}..{end} out of bounds for `{term}` ({} factors)", term.len()));
    }
    Ok(position..end)
}

fn splice(term: &Term, r: std::ops::Range<usize>, replacement: &Term) -> Term {
    let mut factors = term.factors[..r.start].to_vec();
    factors.extend(replacement.factors.iter().cloned());
    factors.extend(term.factors[r.end..].iter().cloned());
    Term::new(factors)
}

/// Adds the exponent sums of `factors` (scaled by `mult`) over the commuting
/// pair `(u, w)`; fails if some factor is not a power of `u` or of `w`.
fn pair_sums(factors: &[Factor], mult: &BigInt, u: &PowerOf, w: &PowerOf, sums: &mut [BigInt; 2]) -> Result<(), String> {
    for f in factors {
        match &f.atom {
            Atom::Letter(l) => {
                if u.divides(*l, &f.exp) {
                    sums[0] += &f.exp * mult;
                } else if w.divides(*l, &f.exp) {
                    sums[1] += &f.exp * mult;
                } else {
                    return Err(format!("factor {l}^{} is not a power of {u} or {w}", f.exp));
                }
            }
            Atom::Group(t) => pair_sums(&t.factors, &(mult * &f.exp), u, w, sums)?,
        }
    }
    Ok(())
}

fn grouped(t: &Term, n: i64) -> Term {
    if t.is_empty() || n == 0 {
        Term::identity()
    } else {
        t.grouped_pow(n)
    }
}

/// Applies one step, returning the new state or the reason it is invalid.
pub fn check_step(state: &EquationState, step: &StepKind, env: &ProofEnv<'_>) -> Result<EquationState, String> {
    let mut next = state.clone();
    match step {
        StepKind::SubstituteRelation { side, position, len, relation, direction, power, result } => {
            let term = state.side(*side);
            let r = range(term, *position, *len)?;
            let (l, rr) = env.relation(relation)?;
            let (src, dst) = match direction {
                Direction::Forward => (l, rr),
                Direction::Backward => (rr, l),
            };
            let have = env.expand_slice(&term.factors[r.clone()])?;
            let want = env.expand(&src)?.powi(*power);
            if have != want {
                return Err(format!("range expands to `{have}`, expected ({src})^{power} = `{want}`"));
            }
            let got = env.expand(result)?;
            let want = env.expand(&dst)?.powi(*power);
            if got != want {
                return Err(format!("result `{result}` expands to `{got}`, expected ({dst})^{power} = `{want}`"));
            }
            *next.side_mut(*side) = splice(term, r, result);
        }
        StepKind::SubstituteDefinition { side, position, len, name, direction, result } => {
            let term = state.side(*side);
            let r = range(term, *position, *len)?;
            let named = Named::from_name(name).ok_or_else(|| format!("unknown element {name:?}"))?;
            let definition = &env
                .pres
                .named_element(named)
                .ok_or_else(|| format!("{name} is not defined in this presentation"))?
                .definition;
            let slice = Term::new(term.factors[r.clone()].to_vec());
            let (from, to) = match direction {
                Direction::Forward => (&slice, result),
                Direction::Backward => (result, &slice),
            };
            if !from.mentions(named) {
                return Err(format!("{name} does not occur where it is {direction:?}-substituted"));
            }
            // only `name` and elements of its definition may appear or vanish
            for other in Named::ALL {
                let (before, after) = (from.mentions(other), to.mentions(other));
                if other == named && after {
                    return Err(format!("{name} still occurs after substituting it"));
                }
                if other != named && before != after && !definition.mentions(other) {
                    return Err(format!("{other} {} but does not occur in the definition of {name}", if before { "vanishes" } else { "appears" }));
                }
            }
            let (have, got) = (env.expand(&slice)?, env.expand(result)?);
            if have != got {
                return Err(format!("`{slice}` expands to `{have}` but `{result}` expands to `{got}`"));
            }
            *next.side_mut(*side) = splice(term, r, result);
        }
        StepKind::FreeReduce { side, position, len, result } => {
            let term = state.side(*side);
            let r = range(term, *position, *len)?;
            let slice = Term::new(term.factors[r.clone()].to_vec());
            let (have, got) = (env.expand(&slice)?, env.expand(result)?);
            if have != got {
                return Err(format!("`{slice}` expands to `{have}` but `{result}` expands to `{got}`"));
            }
            *next.side_mut(*side) = splice(term, r, result);
        }
        StepKind::CollectPowers { side, position } => {
            let term = state.side(*side);
            let r = range(term, *position, 2)?;
            let (f, g) = (&term.factors[r.start], &term.factors[r.start + 1]);
            if f.atom != g.atom {
                return Err(format!("factors {position} and {} have different bases", position + 1));
            }
            let exp = &f.exp + &g.exp;
            let merged = if exp == BigInt::from(0) {
                Term::identity()
            } else {
                Term::new(vec![Factor { atom: f.atom.clone(), exp }])
            };
            *next.side_mut(*side) = splice(term, r, &merged);
        }
        StepKind::CommuteSwap { side, position, len, pair, result } => {
            let term = state.side(*side);
            let r = range(term, *position, *len)?;
            let u = PowerOf::parse(&pair[0]).map_err(|e| e.to_string())?;
            let w = PowerOf::parse(&pair[1]).map_err(|e| e.to_string())?;
            if u.letter == w.letter {
                return Err("a commuting pair needs two distinct letters".into());
            }
            // cite the entry itself; its multiples are covered by the period check below
            if !env.pres.is_whitelisted(&u, &w) {
                return Err(format!("({u}, {w}) is not a whitelisted commuting pair"));
            }
            let one = BigInt::from(1);
            let mut have = [BigInt::from(0), BigInt::from(0)];
            pair_sums(&term.factors[r.clone()], &one, &u, &w, &mut have)?;
            let mut got = [BigInt::from(0), BigInt::from(0)];
            pair_sums(&result.factors, &one, &u, &w, &mut got)?;
            if have != got {
                return Err(format!(
                    "exponent sums differ: range has ({u})^{}·({w})^{}, result has ({u})^{}·({w})^{}",
                    have[0], have[1], got[0], got[1]
                ));
            }
            *next.side_mut(*side) = splice(term, r, result);
        }
        StepKind::MultiplyBothSides { side, factor } => {
            let (l, r) = match factor {
                Multiplier::Term(t) => {
                    env.expand(t)?;
                    (t.clone(), t.clone())
                }
                Multiplier::Relation { id, power } => {
                    let (l, r) = env.relation(id)?;
                    (grouped(&l, *power), grouped(&r, *power))
                }
            };
            let join = |a: &Term, b: &Term| {
                let mut f = a.factors.clone();
                f.extend(b.factors.iter().cloned());
                Term::new(f)
            };
            match side {
                Hand::Left => {
                    next.lhs = join(&l, &state.lhs);
                    next.rhs = join(&r, &state.rhs);
                }
                Hand::Right => {
                    next.lhs = join(&state.lhs, &l);
                    next.rhs = join(&state.rhs, &r);
                }
            }
        }
        StepKind::PowerBothSides { n } => {
            next.lhs = grouped(&state.lhs, *n);
            next.rhs = grouped(&state.rhs, *n);
        }
        StepKind::InvertBothSides => {
            next.lhs = state.lhs.inverse();
            next.rhs = state.rhs.inverse();
        }
        StepKind::SwapSides => {
            next.lhs = state.rhs.clone();
            next.rhs = state.lhs.clone();
        }
    }
    Ok(next)
}

fn initial_state(script: &DerivationScript, env: &ProofEnv<'_>) -> Result<EquationState, StepError> {
    let state = match &script.axiom {
        Axiom::Relation { id, flip } => {
            let (l, r) = env.relation(id).map_err(StepError::Axiom)?;
            if *flip {
                EquationState { lhs: r, rhs: l }
            } else {
                EquationState { lhs: l, rhs: r }
            }
        }
        Axiom::Reflexive(t) => {
            env.expand(t).map_err(StepError::Axiom)?;
            EquationState { lhs: t.clone(), rhs: t.clone() }
        }
    };
    Ok(state)
}

/// Replays `script`, returning every intermediate state (axiom first) and the
/// proven equation. The final state must equal the claim factor for factor.
pub fn check_script_traced(
    script: &DerivationScript,
    pres: &GroupPresentation,
    lemmas: &LemmaSet,
) -> Result<(ProvenEquation, Vec<EquationState>), Error> {
    let fail = |source: StepError| Error::Script { script: script.id.clone(), source };
    if let Context::Surgered(_) = script.context {
        if pres.cable().is_none() {
            return Err(fail(StepError::Axiom("surgered context needs a cable presentation".into())));
        }
    }
    let env = ProofEnv { pres, context: script.context, lemmas };
    let mut state = initial_state(script, &env).map_err(fail)?;
    let mut trace = vec![state.clone()];
    for (index, step) in script.steps.iter().enumerate() {
        state = check_step(&state, &step.kind, &env).map_err(|reason| fail(StepError::AtStep { index, reason }))?;
        trace.push(state.clone());
    }
    if state.lhs != script.claim.lhs || state.rhs != script.claim.rhs {
        return Err(fail(StepError::ClaimMismatch(format!(
            "derived `{state}` but the claim is `{} = {}`",
            script.claim.lhs, script.claim.rhs
        ))));
    }
    let expand = |t: &Term| env.expand(t).map_err(|e| fail(StepError::ClaimMismatch(e)));
    let (lhs, rhs) = (expand(&state.lhs)?, expand(&state.rhs)?);
    let eq = ProvenEquation { id: script.id.clone(), lhs, rhs, context: script.context, script: script.clone() };
    Ok((eq, trace))
}

pub fn check_script(script: &DerivationScript, pres: &GroupPresentation, lemmas: &LemmaSet) -> Result<ProvenEquation, Error> {
    check_script_traced(script, pres, lemmas).map(|(eq, _)| eq)
}

#[cfg(test)]
mod tests;
