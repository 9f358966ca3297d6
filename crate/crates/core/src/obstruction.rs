//! Sign calculus and non-left-orderability certificates.
//!
//! In a left-ordered group every element is positive, negative or trivial,
//! and products of positives are positive. Assigning one of those three
//! signs to each generator `a, b, t` gives 27 cases. An equation `L = R`
//! refutes a case when both sides have a determinate sign and the signs
//! differ. A certificate lists checked equations that refute every case, so
//! no left order exists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::derivation::{check_script, Context, LemmaSet, ProvenEquation, ScriptLibrary, Vars};
use crate::error::{Error, Result};
use crate::presentation::{bezout_cable, bezout_torus, cable_presentation, theorem_q, CableMode, GroupPresentation, TorusParams};
use crate::slope::{beta_slope, cramer, CramerTriple, Slope};
use crate::word::{Gen, Word};

pub const CERTIFICATE_VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Pos, Sign::Neg, Sign::Zero];

    fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
            Sign::Zero => "zero",
        })
    }
}

/// The sign of a word under an assignment, when it is forced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evaluated {
    Determinate(Sign),
    Unknown,
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Determinate(s) => write!(f, "{s}"),
            Evaluated::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignAssignment {
    pub a: Sign,
    pub b: Sign,
    pub t: Sign,
}

impl SignAssignment {
    pub fn new(a: Sign, b: Sign, t: Sign) -> SignAssignment {
        SignAssignment { a, b, t }
    }

    pub fn get(&self, g: Gen) -> Sign {
        match g {
            Gen::A => self.a,
            Gen::B => self.b,
            Gen::T => self.t,
        }
    }

    /// All 27 assignments, `a` outermost, each coordinate in the order
    /// pos, neg, zero.
    pub fn all() -> Vec<SignAssignment> {
        let mut out = Vec::with_capacity(27);
        for a in Sign::ALL {
            for b in Sign::ALL {
                for t in Sign::ALL {
                    out.push(SignAssignment { a, b, t });
                }
            }
        }
        out
    }

    pub fn is_all_zero(&self) -> bool {
        [self.a, self.b, self.t] == [Sign::Zero; 3]
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a:{} b:{} t:{}", self.a, self.b, self.t)
    }
}

pub fn evaluate_sign(w: &Word, sigma: &SignAssignment) -> Evaluated {
    let mut seen: Option<Sign> = None;
    for s in w.syllables() {
        let sign = match sigma.get(s.gen) {
            Sign::Zero => continue,
            g if s.exp < 0.into() => g.flip(),
            g => g,
        };
        match seen {
            None => seen = Some(sign),
            Some(prev) if prev != sign => return Evaluated::Unknown,
            Some(_) => {}
        }
    }
    Evaluated::Determinate(seen.unwrap_or(Sign::Zero))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefutationReason {
    Clash { equation: String, lhs: Sign, rhs: Sign },
    NontrivialityAxiom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub assignment: SignAssignment,
    pub reason: RefutationReason,
}

/// Refutes `sigma` with the first equation whose sides evaluate to distinct
/// determinate signs; the all-zero assignment is excluded because the trivial
/// group is not left-orderable by convention.
pub fn refute(equations: &[ProvenEquation], sigma: &SignAssignment) -> Option<RefutationReason> {
    if sigma.is_all_zero() {
        return Some(RefutationReason::NontrivialityAxiom);
    }
    equations.iter().find_map(|eq| match (evaluate_sign(&eq.lhs, sigma), evaluate_sign(&eq.rhs, sigma)) {
        (Evaluated::Determinate(l), Evaluated::Determinate(r)) if l != r => {
            Some(RefutationReason::Clash { equation: eq.id.clone(), lhs: l, rhs: r })
        }
        _ => None,
    })
}

/// The refutation table and any surviving assignments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignTable {
    pub refutations: Vec<Refutation>,
    pub survivors: Vec<SignAssignment>,
}

pub fn sign_table(equations: &[ProvenEquation]) -> SignTable {
    let mut table = SignTable { refutations: Vec::new(), survivors: Vec::new() };
    for sigma in SignAssignment::all() {
        match refute(equations, &sigma) {
            Some(reason) => table.refutations.push(Refutation { assignment: sigma, reason }),
            None => table.survivors.push(sigma),
        }
    }
    table
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateParams {
    pub x: i64,
    pub y: i64,
    pub p: i64,
    pub q: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<i64>,
    pub slope: Slope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub version: String,
    pub params: CertificateParams,
    pub equations: Vec<ProvenEquation>,
    pub cramer: Option<CramerTriple>,
    pub refutations: Vec<Refutation>,
}

impl ObstructionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<ObstructionCertificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }
}

/// A sign table with survivors: no certificate is produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconclusive {
    pub params: CertificateParams,
    pub equations: Vec<String>,
    pub survivors: Vec<SignAssignment>,
}

/// Packages `equations` into a certificate if they refute all 27 cases.
pub fn refute_all(
    equations: Vec<ProvenEquation>,
    params: CertificateParams,
    cramer: Option<CramerTriple>,
) -> std::result::Result<ObstructionCertificate, Inconclusive> {
    let table = sign_table(&equations);
    if !table.survivors.is_empty() {
        return Err(Inconclusive {
            params,
            equations: equations.iter().map(|e| e.id.clone()).collect(),
            survivors: table.survivors,
        });
    }
    Ok(ObstructionCertificate {
        version: CERTIFICATE_VERSION.into(),
        params,
        equations,
        cramer,
        refutations: table.refutations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified(ObstructionCertificate),
    Inconclusive(Inconclusive),
}

impl Certification {
    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Inconclusive(_) => None,
        }
    }

    pub fn into_certificate(self) -> Option<ObstructionCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Inconclusive(_) => None,
        }
    }
}

/// `(x, y, p)` with `q = pxy - 1`, validated for the theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub x: i64,
    pub y: i64,
    pub p: i64,
    pub q: i64,
}

impl TheoremParams {
    pub fn new(x: i64, y: i64, p: i64) -> Result<TheoremParams> {
        let torus = TorusParams::new(x, y)?;
        if p < 2 {
            return Err(Error::Unsupported(format!("p = {p}: the obstruction needs p >= 2")));
        }
        let q = theorem_q(torus, p)?;
        p.checked_mul(q).ok_or_else(|| Error::InvalidParams("p·q overflows".into()))?;
        Ok(TheoremParams { x, y, p, q })
    }

    pub fn pq(&self) -> i64 {
        self.p * self.q
    }

    /// The window `[pq - 1, pq]`.
    pub fn window(&self) -> (Slope, Slope) {
        (Slope::integer(self.pq() - 1), Slope::integer(self.pq()))
    }

    pub fn presentation(&self) -> Result<GroupPresentation> {
        cable_presentation(self.x, self.y, self.p, self.q, CableMode::Theorem)
    }

    /// Template variables `x, y, p, q, i, j, u, v`.
    pub fn vars(&self) -> Result<Vars> {
        let tb = bezout_torus(self.x, self.y)?;
        let cb = bezout_cable(self.p, self.q, Some(self.x * self.y))?;
        Ok(Vars::new()
            .with("x", self.x)
            .with("y", self.y)
            .with("p", self.p)
            .with("q", self.q)
            .with("i", tb.i)
            .with("j", tb.j)
            .with("u", cb.u)
            .with("v", cb.v))
    }
}

enum Plan {
    Beta(i64),
    Lower,
    Upper,
    Interior(CramerTriple),
    Experimental,
}

impl Plan {
    fn scripts(&self) -> &'static [&'static str] {
        match self {
            Plan::Beta(_) => &["relation_torus", "lemma_same_sign", "eq10", "eq11", "eq12"],
            Plan::Lower => &["relation_torus", "lemma_same_sign", "grand_total_product", "endpoint_lower"],
            Plan::Upper => &["relation_torus", "lemma_same_sign", "endpoint_upper"],
            Plan::Interior(_) => &["relation_torus", "lemma_same_sign", "grand_total_product", "cramer_interior"],
            Plan::Experimental => &["relation_torus", "lemma_same_sign", "surgery_axiom"],
        }
    }
}

/// Cramer data of an interior slope against the window endpoints.
pub fn interior_cramer(params: &TheoremParams, slope: Slope) -> Option<CramerTriple> {
    let (lo, hi) = params.window();
    if lo < slope && slope < hi {
        cramer(lo, hi, slope).ok()
    } else {
        None
    }
}

/// Builds certificates from a script library.
#[derive(Clone, Debug, Default)]
pub struct Certifier {
    library: ScriptLibrary,
}

impl Certifier {
    pub fn new(library: ScriptLibrary) -> Certifier {
        Certifier { library }
    }

    pub fn library(&self) -> &ScriptLibrary {
        &self.library
    }

    /// Certifies the slope `pq - 1/β`.
    pub fn beta(&self, x: i64, y: i64, p: i64, beta: i64) -> Result<Certification> {
        let params = TheoremParams::new(x, y, p)?;
        if beta < 1 {
            return Err(Error::Unsupported(format!("beta = {beta}: need beta >= 1")));
        }
        let slope = beta_slope(params.p, params.q, beta)?;
        self.run(&params, slope, Plan::Beta(beta))
    }

    /// Certifies a slope in `[pq - 1, pq]`. With `experimental`, slopes
    /// outside the window are attempted with the bare surgery relation; the
    /// sign table then has survivors and the result is inconclusive.
    pub fn slope(&self, x: i64, y: i64, p: i64, slope: Slope, experimental: bool) -> Result<Certification> {
        let params = TheoremParams::new(x, y, p)?;
        let (lo, hi) = params.window();
        let plan = if slope == lo {
            Plan::Lower
        } else if slope == hi {
            Plan::Upper
        } else if lo < slope && slope < hi {
            Plan::Interior(cramer(lo, hi, slope)?)
        } else if experimental {
            Plan::Experimental
        } else {
            return Err(Error::Unsupported(format!("slope {slope} lies outside [{lo}, {hi}]")));
        };
        self.run(&params, slope, plan)
    }

    fn run(&self, params: &TheoremParams, slope: Slope, plan: Plan) -> Result<Certification> {
        let pres = params.presentation()?;
        let mut vars = params.vars()?.with("m", slope.m()).with("n", slope.n());
        let mut beta = None;
        let mut cramer = None;
        match &plan {
            Plan::Beta(b) => {
                vars.set("beta", *b);
                beta = Some(*b);
            }
            Plan::Interior(c) => {
                vars.set("d0", c.d0).set("d1", c.d1).set("d", c.d);
                cramer = Some(c.clone());
            }
            _ => {}
        }
        let mut lemmas = LemmaSet::new();
        for id in plan.scripts() {
            let script = self.library.instantiate(id, &vars)?;
            if script.id != *id {
                return Err(Error::Template(format!("script {id} declares id {:?}", script.id)));
            }
            lemmas.push(check_script(&script, &pres, &lemmas)?);
        }
        let cert_params = CertificateParams { x: params.x, y: params.y, p: params.p, q: params.q, beta, slope };
        Ok(match refute_all(lemmas.into_vec(), cert_params, cramer) {
            Ok(cert) => Certification::Certified(cert),
            Err(inc) => Certification::Inconclusive(inc),
        })
    }
}

pub fn certify_non_lo_beta(x: i64, y: i64, p: i64, beta: i64) -> Result<Certification> {
    Certifier::default().beta(x, y, p, beta)
}

pub fn certify_non_lo_slope(x: i64, y: i64, p: i64, slope: Slope) -> Result<Certification> {
    Certifier::default().slope(x, y, p, slope, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub valid: bool,
    pub equations_checked: usize,
    pub diagnostics: Vec<String>,
}

/// Re-checks a certificate from scratch: every embedded script, the stored
/// equations, the Cramer data and the full sign table.
pub fn replay(cert: &ObstructionCertificate) -> ReplayReport {
    let mut diagnostics = Vec::new();
    let mut equations_checked = 0;
    let finish = |diagnostics: Vec<String>, equations_checked| ReplayReport {
        valid: diagnostics.is_empty(),
        equations_checked,
        diagnostics,
    };
    if cert.version != CERTIFICATE_VERSION {
        diagnostics.push(format!("unsupported version {:?}", cert.version));
    }
    let p = &cert.params;
    let params = match TheoremParams::new(p.x, p.y, p.p) {
        Ok(t) if t.q == p.q => t,
        Ok(t) => {
            diagnostics.push(format!("q = {} but q = pxy - 1 = {}", p.q, t.q));
            return finish(diagnostics, 0);
        }
        Err(e) => {
            diagnostics.push(format!("parameters: {e}"));
            return finish(diagnostics, 0);
        }
    };
    if let Some(beta) = p.beta {
        match beta_slope(params.p, params.q, beta) {
            Ok(s) if s == p.slope => {}
            Ok(s) => diagnostics.push(format!("beta = {beta} gives slope {s}, not {}", p.slope)),
            Err(e) => diagnostics.push(format!("beta: {e}")),
        }
    } else {
        let (lo, hi) = params.window();
        if p.slope < lo || p.slope > hi {
            diagnostics.push(format!("slope {} lies outside [{lo}, {hi}]", p.slope));
        }
    }
    let expected_cramer = if p.beta.is_none() { interior_cramer(&params, p.slope) } else { None };
    if cert.cramer != expected_cramer {
        diagnostics.push(format!("Cramer data {:?} does not match the recomputed {:?}", cert.cramer, expected_cramer));
    }
    if let Some(c) = &cert.cramer {
        if !(c.identities_hold() && c.all_positive()) {
            diagnostics.push("Cramer data fails its identities or positivity".into());
        }
    }

    let pres = match params.presentation() {
        Ok(pres) => pres,
        Err(e) => {
            diagnostics.push(format!("presentation: {e}"));
            return finish(diagnostics, 0);
        }
    };
    let mut lemmas = LemmaSet::new();
    for (k, eq) in cert.equations.iter().enumerate() {
        if eq.script.id != eq.id {
            diagnostics.push(format!("equation {k} ({}) carries script {:?}", eq.id, eq.script.id));
            continue;
        }
        if lemmas.get(&eq.id).is_some() {
            diagnostics.push(format!("equation id {} is repeated", eq.id));
            continue;
        }
        if eq.script.context != eq.context {
            diagnostics.push(format!("equation {}: context {} but script context {}", eq.id, eq.context, eq.script.context));
            continue;
        }
        if let Context::Surgered(s) = eq.context {
            if s != p.slope {
                diagnostics.push(format!("equation {} holds in H({s}), not H({})", eq.id, p.slope));
                continue;
            }
        }
        match check_script(&eq.script, &pres, &lemmas) {
            Ok(proven) => {
                if proven.lhs != eq.lhs || proven.rhs != eq.rhs {
                    diagnostics.push(format!("equation {}: stored sides differ from the replayed `{} = {}`", eq.id, proven.lhs, proven.rhs));
                } else {
                    equations_checked += 1;
                    lemmas.push(proven);
                }
            }
            Err(e) => diagnostics.push(format!("equation {}: {e}", eq.id)),
        }
    }

    let table = sign_table(&cert.equations);
    for s in &table.survivors {
        diagnostics.push(format!("assignment {s} is not refuted"));
    }
    if table.refutations != cert.refutations {
        let stored: std::collections::BTreeMap<_, _> =
            cert.refutations.iter().map(|r| (r.assignment, &r.reason)).collect();
        let mut mismatched = 0;
        for r in &table.refutations {
            if stored.get(&r.assignment) != Some(&&r.reason) {
                mismatched += 1;
                diagnostics.push(format!("row {}: recomputed {:?}", r.assignment, r.reason));
            }
        }
        if mismatched == 0 || cert.refutations.len() != table.refutations.len() {
            diagnostics.push(format!(
                "refutation table has {} rows in a different order or with extra rows; expected {}",
                cert.refutations.len(),
                table.refutations.len()
            ));
        }
    }
    finish(diagnostics, equations_checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sigma(a: Sign, b: Sign, t: Sign) -> SignAssignment {
        SignAssignment::new(a, b, t)
    }

    use Sign::{Neg, Pos, Zero};

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate_sign(&w("a^3 b"), &sigma(Pos, Pos, Neg)), Evaluated::Determinate(Pos));
        assert_eq!(evaluate_sign(&w("t^-1"), &sigma(Pos, Pos, Pos)), Evaluated::Determinate(Neg));
        assert_eq!(evaluate_sign(&w("a b^-1"), &sigma(Pos, Pos, Pos)), Evaluated::Unknown);
        assert_eq!(evaluate_sign(&w("a b^-1"), &sigma(Pos, Zero, Pos)), Evaluated::Determinate(Pos));
        assert_eq!(evaluate_sign(&Word::identity(), &sigma(Pos, Pos, Pos)), Evaluated::Determinate(Zero));
    }

    #[test]
    fn assignment_order() {
        let all = SignAssignment::all();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], sigma(Pos, Pos, Pos));
        assert_eq!(all[1], sigma(Pos, Pos, Neg));
        assert_eq!(all[26], sigma(Zero, Zero, Zero));
    }

    #[test]
    fn beta_certificate() {
        let cert = certify_non_lo_beta(2, 3, 2, 1).unwrap().into_certificate().unwrap();
        assert_eq!(cert.refutations.len(), 27);
        assert_eq!(cert.params.slope, Slope::integer(21));
        let all_pos = &cert.refutations[0];
        assert_eq!(
            all_pos.reason,
            RefutationReason::Clash { equation: "eq12".into(), lhs: Neg, rhs: Pos }
        );
        let eq12 = cert.equations.iter().find(|e| e.id == "eq12").unwrap();
        assert_eq!((eq12.lhs.to_string(), eq12.rhs.to_string()), ("t^-1".into(), "a b".into()));
        let mixed = cert.refutations.iter().find(|r| r.assignment == sigma(Pos, Neg, Pos)).unwrap();
        assert_eq!(mixed.reason, RefutationReason::Clash { equation: "relation_torus".into(), lhs: Pos, rhs: Neg });
        assert!(replay(&cert).valid);
    }

    #[test]
    fn beta_exponent_grows() {
        let cert = certify_non_lo_beta(2, 3, 2, 25).unwrap().into_certificate().unwrap();
        let eq11 = cert.equations.iter().find(|e| e.id == "eq11").unwrap();
        assert_eq!(eq11.lhs.to_string(), "t^51");
    }

    #[test]
    fn p_one_is_unsupported() {
        assert!(matches!(certify_non_lo_beta(2, 3, 1, 1), Err(Error::Unsupported(_))));
        assert!(matches!(certify_non_lo_beta(2, 3, 2, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn slope_certificates() {
        for s in ["21", "22", "43/2", "65/3", "64/3"] {
            let slope: Slope = s.parse().unwrap();
            let cert = certify_non_lo_slope(2, 3, 2, slope).unwrap().into_certificate().unwrap();
            assert!(replay(&cert).valid, "{s}");
        }
        let cert = certify_non_lo_slope(2, 3, 2, "43/2".parse().unwrap()).unwrap().into_certificate().unwrap();
        let c = cert.cramer.unwrap();
        assert_eq!((c.d0, c.d1, c.d), (1, 1, 1));
        assert!(matches!(certify_non_lo_slope(2, 3, 2, Slope::integer(1)), Err(Error::Unsupported(_))));
        assert!(matches!(certify_non_lo_slope(2, 3, 2, Slope::integer(23)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn upper_endpoint_uses_nontriviality() {
        let cert = certify_non_lo_slope(2, 3, 2, Slope::integer(22)).unwrap().into_certificate().unwrap();
        let ids: Vec<_> = cert.equations.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["relation_torus", "lemma_same_sign", "endpoint_upper"]);
        assert_eq!(cert.refutations[26].reason, RefutationReason::NontrivialityAxiom);
        assert!(cert.cramer.is_none());
    }

    #[test]
    fn experimental_below_window_is_inconclusive() {
        let res = Certifier::default().slope(2, 3, 2, Slope::integer(20), true).unwrap();
        match res {
            Certification::Inconclusive(inc) => assert!(inc.survivors.contains(&sigma(Pos, Pos, Pos))),
            Certification::Certified(_) => panic!("expected survivors"),
        }
    }

    #[test]
    fn knot_group_equations_leave_survivors() {
        let cert = certify_non_lo_beta(2, 3, 2, 1).unwrap().into_certificate().unwrap();
        let knot: Vec<_> = cert.equations.into_iter().filter(|e| e.context == Context::KnotGroup).collect();
        assert_eq!(knot.len(), 2);
        let res = refute_all(knot, cert.params, None);
        assert!(res.unwrap_err().survivors.contains(&sigma(Pos, Pos, Pos)));
    }

    #[test]
    fn corrupted_row_fails_replay() {
        let mut cert = certify_non_lo_beta(2, 3, 2, 1).unwrap().into_certificate().unwrap();
        cert.refutations[0].reason = RefutationReason::Clash { equation: "eq12".into(), lhs: Pos, rhs: Neg };
        let report = replay(&cert);
        assert!(!report.valid);
        assert!(report.diagnostics.iter().any(|d| d.contains("row a:pos b:pos t:pos")), "{:?}", report.diagnostics);
    }

    #[test]
    fn json_round_trip() {
        let cert = certify_non_lo_slope(2, 3, 2, "43/2".parse().unwrap()).unwrap().into_certificate().unwrap();
        let text = cert.to_json();
        let back = ObstructionCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        let at = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
        let order = ["version", "params", "equations", "cramer", "refutations"].map(at);
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }
}
