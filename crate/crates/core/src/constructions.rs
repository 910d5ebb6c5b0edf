//! Explicit families of strongly real Beauville structures.
//!
//! Each family instantiates the printed formulas and runs the verifier on
//! them. When the printed data fails, the failure is recorded as a
//! discrepancy and, where one is available, a derived replacement is
//! attached under a separate label. Nothing is repaired silently.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::bsgs::StabChain;
use crate::element::Element;
use crate::field::{FieldElement, FieldSpec, SuzukiMatrix};
use crate::group::{Family, Group, GroupError};
use crate::perm::{CycleType, Permutation};
use crate::search::{inverting_permutations, search_beauville};
use crate::structure::{
    verify_structure, verify_witness, Automorphism, BeauvilleStructure, StronglyRealReport, StronglyRealWitness,
    StructureReport,
};

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no admissible parameters: {0}")]
    NotFound(String),
    #[error("bad parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Where a candidate's data came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// The formulas as printed (with any reading noted in `notes`).
    Printed,
    /// Replacement data found by computation after the printed data failed.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Printed => "printed",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub provenance: Provenance,
    pub structure: BeauvilleStructure,
    pub witness: StronglyRealWitness,
    pub notes: Vec<String>,
    pub report: Option<StructureReport>,
    pub strong: Option<StronglyRealReport>,
}

impl Candidate {
    fn new(provenance: Provenance, structure: BeauvilleStructure, witness: StronglyRealWitness) -> Candidate {
        Candidate { provenance, structure, witness, notes: Vec::new(), report: None, strong: None }
    }

    fn note(mut self, text: impl Into<String>) -> Candidate {
        self.notes.push(text.into());
        self
    }

    /// Runs both verifiers and returns the reasons of everything that did not pass.
    fn adjudicate(&mut self) -> Vec<String> {
        let report = verify_structure(&self.structure);
        let strong =
            verify_witness(&self.structure.group, &self.structure.pairs, &self.witness, report.overall.is_pass());
        let mut problems = Vec::new();
        for (i, v) in report.generation.iter().enumerate() {
            if !v.is_pass() {
                problems.push(format!("generation of pair {}: {v}", i + 1));
            }
        }
        if !report.dagger.is_pass() {
            problems.push(format!("(†): {}", report.dagger));
        }
        if !strong.verdict.is_pass() {
            problems.push(format!("witness: {}", strong.verdict));
        }
        self.report = Some(report);
        self.strong = Some(strong);
        problems
    }

    /// True when the structure and the witness both verified.
    pub fn verified(&self) -> bool {
        matches!((&self.report, &self.strong), (Some(r), Some(s)) if r.overall.is_pass() && s.verdict.is_pass())
    }
}

/// Output of a family: the printed candidate, its verification problems,
/// and a derived candidate when the printed one failed.
#[derive(Debug, Clone)]
pub struct Construction {
    pub request: FamilyRequest,
    pub printed: Candidate,
    pub discrepancies: Vec<String>,
    pub derived: Option<Candidate>,
}

impl Construction {
    fn adjudicate(
        request: FamilyRequest,
        mut printed: Candidate,
        derive: Option<&dyn Fn() -> Result<Candidate, ConstructionError>>,
    ) -> Result<Construction, ConstructionError> {
        let discrepancies = printed.adjudicate();
        let mut derived = None;
        if !discrepancies.is_empty() {
            if let Some(derive) = derive {
                let mut d = derive()?;
                let problems = d.adjudicate();
                d.notes.extend(problems.into_iter().map(|p| format!("derived data also fails: {p}")));
                derived = Some(d);
            }
        }
        Ok(Construction { request, printed, discrepancies, derived })
    }

    /// The candidate to emit: the derived one if present, else the printed one.
    pub fn emitted(&self) -> &Candidate {
        self.derived.as_ref().unwrap_or(&self.printed)
    }

    pub fn printed_verified(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// A family name with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyRequest {
    Abelian(u64),
    Suzuki(u32),
    AltCoprime(usize),
    Alt4r(usize),
    AltPower(usize, usize),
    SymDouble(usize),
    MathieuDouble(MathieuGroup),
    ProductDouble(Box<FamilyRequest>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MathieuGroup {
    A5,
    M11,
    M23,
}

impl MathieuGroup {
    pub fn name(&self) -> &'static str {
        match self {
            MathieuGroup::A5 => "A5xA5",
            MathieuGroup::M11 => "M11xM11",
            MathieuGroup::M23 => "M23xM23",
        }
    }
}

pub const FAMILIES: [&str; 8] =
    ["abelian", "suzuki", "alt_coprime", "alt_4r", "alt_power", "sym_double", "mathieu_double", "product_double"];

impl FamilyRequest {
    /// `family` is one of [`FAMILIES`]; `params` is comma separated, e.g.
    /// `11,2` for `alt_power`, `M11xM11` for `mathieu_double`, and an inner
    /// request such as `alt_coprime:6` for `product_double`.
    pub fn parse(family: &str, params: &str) -> Result<FamilyRequest, ConstructionError> {
        let params = params.trim();
        let ints = |count: usize| -> Result<Vec<usize>, ConstructionError> {
            let v: Vec<usize> = params
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| ConstructionError::Params(format!("expected {count} integer(s), got '{params}'")))?;
            if v.len() != count {
                return Err(ConstructionError::Params(format!("expected {count} integer(s), got '{params}'")));
            }
            Ok(v)
        };
        Ok(match family {
            "abelian" => FamilyRequest::Abelian(ints(1)?[0] as u64),
            "suzuki" => FamilyRequest::Suzuki(ints(1)?[0] as u32),
            "alt_coprime" => FamilyRequest::AltCoprime(ints(1)?[0]),
            "alt_4r" => FamilyRequest::Alt4r(ints(1)?[0]),
            "alt_power" => {
                let v = ints(2)?;
                FamilyRequest::AltPower(v[0], v[1])
            }
            "sym_double" => FamilyRequest::SymDouble(ints(1)?[0]),
            "mathieu_double" => FamilyRequest::MathieuDouble(match params.to_ascii_uppercase().as_str() {
                "A5XA5" | "A5" => MathieuGroup::A5,
                "M11XM11" | "M11" => MathieuGroup::M11,
                "M23XM23" | "M23" => MathieuGroup::M23,
                other => return Err(ConstructionError::Params(format!("unknown group '{other}'"))),
            }),
            "product_double" => {
                let (f, p) = params
                    .split_once(':')
                    .ok_or_else(|| ConstructionError::Params("expected <family>:<params>".to_string()))?;
                FamilyRequest::ProductDouble(Box::new(FamilyRequest::parse(f.trim(), p)?))
            }
            other => return Err(ConstructionError::Params(format!("unknown family '{other}'"))),
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            FamilyRequest::Abelian(_) => "abelian",
            FamilyRequest::Suzuki(_) => "suzuki",
            FamilyRequest::AltCoprime(_) => "alt_coprime",
            FamilyRequest::Alt4r(_) => "alt_4r",
            FamilyRequest::AltPower(..) => "alt_power",
            FamilyRequest::SymDouble(_) => "sym_double",
            FamilyRequest::MathieuDouble(_) => "mathieu_double",
            FamilyRequest::ProductDouble(_) => "product_double",
        }
    }

    pub fn params(&self) -> String {
        match self {
            FamilyRequest::Abelian(n) => n.to_string(),
            FamilyRequest::Suzuki(m) => m.to_string(),
            FamilyRequest::AltCoprime(r) | FamilyRequest::Alt4r(r) => r.to_string(),
            FamilyRequest::AltPower(n, k) => format!("{n},{k}"),
            FamilyRequest::SymDouble(n) => n.to_string(),
            FamilyRequest::MathieuDouble(g) => g.name().to_string(),
            FamilyRequest::ProductDouble(inner) => format!("{}:{}", inner.family(), inner.params()),
        }
    }

    pub fn construct(&self) -> Result<Construction, ConstructionError> {
        match self {
            FamilyRequest::Abelian(n) => abelian_structure(*n),
            FamilyRequest::Suzuki(m) => suzuki_structure(*m),
            FamilyRequest::AltCoprime(r) => alt_coprime_structure(*r),
            FamilyRequest::Alt4r(r) => alt_4r_structure(*r),
            FamilyRequest::AltPower(n, k) => alt_power_structure(*n, *k),
            FamilyRequest::SymDouble(n) => sym_double_structure(*n),
            FamilyRequest::MathieuDouble(g) => mathieu_double(*g),
            FamilyRequest::ProductDouble(inner) => {
                let base = inner.construct()?;
                product_double(&base)
            }
        }
    }
}

impl fmt::Display for FamilyRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family(), self.params())
    }
}

// ---------------------------------------------------------------------------
// permutation helpers

fn up(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn down(a: usize, b: usize) -> Vec<usize> {
    (b..=a).rev().collect()
}

/// Transpositions `(a, b), (a+1, b-1), …` while the first point is below the second.
fn reflect(a: usize, b: usize) -> Vec<Vec<usize>> {
    let (mut a, mut b) = (a, b);
    let mut out = Vec::new();
    while a < b {
        out.push(vec![a, b]);
        a += 1;
        b -= 1;
    }
    out
}

fn perm(n: usize, cycles: Vec<Vec<usize>>) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.into_iter().filter(|c| c.len() > 1).collect();
    Permutation::from_cycles(n, &cycles).expect("family formulas give disjoint cycles")
}

fn parse(text: &str, n: usize) -> Permutation {
    Permutation::parse(text, n).expect("hard-coded permutation")
}

fn el(p: Permutation) -> Element {
    Element::Perm(p)
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    let long = if n % 2 == 1 { up(1, n) } else { up(2, n) };
    vec![perm(n, vec![vec![1, 2, 3]]), perm(n, vec![long])]
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    vec![perm(n, vec![vec![1, 2]]), perm(n, vec![up(1, n)])]
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Copies of the given factor generators on `k` consecutive blocks.
fn power_group(n: usize, k: usize, factor: &[Permutation], factor_order: BigUint) -> Result<Group, GroupError> {
    let id = Permutation::identity(n);
    let mut gens = Vec::new();
    for b in 0..k {
        for g in factor {
            let parts: Vec<&Permutation> = (0..k).map(|i| if i == b { g } else { &id }).collect();
            gens.push(el(Permutation::direct_sum(&parts)));
        }
    }
    let g = Group::new(gens)?;
    let g = if k > 1 { g.with_blocks(Group::consecutive_blocks(n, k))? } else { g };
    Ok(g.with_expected_order(factor_order.pow(k as u32)))
}

fn diag(parts: &[Permutation]) -> Element {
    let refs: Vec<&Permutation> = parts.iter().collect();
    el(Permutation::direct_sum(&refs))
}

/// `g` with `x^g = x⁻¹` for `x` inverted by `s` and φ = conjugation by `tau`:
/// `g φ(x) g⁻¹ = x⁻¹` holds for `g = s⁻¹ τ`.
fn conjugator(s: &Element, tau: &Element) -> Element {
    s.inverse().op(tau)
}

fn with_conjugators(tau: Element, g1: Option<Element>, g2: Option<Element>) -> StronglyRealWitness {
    let trivial = |g: Option<Element>| g.filter(|g| !g.is_identity());
    StronglyRealWitness {
        automorphism: Automorphism::OvergroupConjugation { tau, ambient: None },
        g1: trivial(g1),
        g2: trivial(g2),
    }
}

// ---------------------------------------------------------------------------
// abelian

/// Z_n × Z_n on n+n points, first structure in search order.
pub fn abelian_structure(n: u64) -> Result<Construction, ConstructionError> {
    if n < 2 || n.gcd(&6) != 1 {
        return Err(ConstructionError::Hypothesis(format!("Z_n×Z_n is Beauville only when gcd(n,6)=1; here n={n}")));
    }
    let g = cyclic_square(n as usize)?;
    let outcome = search_beauville(&g)?;
    let structure =
        outcome.structure.ok_or_else(|| ConstructionError::NotFound(format!("search on Z_{n}×Z_{n} found nothing")))?;
    let c = Candidate::new(Provenance::Printed, structure, StronglyRealWitness::inversion())
        .note("pairs found by exhaustive search; inversion is an automorphism of an abelian group");
    Construction::adjudicate(FamilyRequest::Abelian(n), c, None)
}

/// Z_n × Z_n generated by two disjoint n-cycles on blocks {1..n}, {n+1..2n}.
pub fn cyclic_square(n: usize) -> Result<Group, GroupError> {
    let a = perm(2 * n, vec![up(1, n)]);
    let b = perm(2 * n, vec![up(n + 1, 2 * n)]);
    let g = Group::new(vec![el(a), el(b)])?.with_name(format!("Z{n}xZ{n}"));
    if n < 2 {
        return Ok(g);
    }
    g.with_blocks(Group::consecutive_blocks(n, 2))
}

// ---------------------------------------------------------------------------
// Suzuki groups

/// Parameters of the Suzuki construction over GF(2^m).
#[derive(Debug, Clone)]
pub struct SuzukiParameters {
    pub spec: FieldSpec,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
    pub epsilon: FieldElement,
}

fn fadd(a: &FieldElement, b: &FieldElement) -> FieldElement {
    a.add(b).expect("same field")
}

fn fpow(a: &FieldElement, k: i64) -> FieldElement {
    a.pow(k).expect("nonzero base for negative powers")
}

/// First generator β in bit order whose γ has a square root α that is
/// also a generator.
pub fn suzuki_alpha_beta(spec: &FieldSpec) -> Option<(FieldElement, FieldElement, FieldElement)> {
    let e = 1i64 << (spec.suzuki_n() + 1);
    spec.elements().filter(FieldElement::is_generator).find_map(|beta| {
        let gamma = [fpow(&beta, 1), fpow(&beta, -1), fpow(&beta, e - 1), fpow(&beta, 1 - e)]
            .iter()
            .fold(spec.zero(), |acc, t| fadd(&acc, t));
        let alpha = gamma.sqrt();
        alpha.is_generator().then_some((alpha, beta, gamma))
    })
}

fn matrix(spec: FieldSpec, rows: [[u32; 4]; 4]) -> SuzukiMatrix {
    SuzukiMatrix::new(spec, rows).expect("invertible by construction")
}

pub struct SuzukiGenerators {
    pub t1: SuzukiMatrix,
    pub t2: SuzukiMatrix,
    pub t3: SuzukiMatrix,
}

pub fn suzuki_generators(spec: FieldSpec, alpha: &FieldElement, beta: &FieldElement) -> SuzukiGenerators {
    let e = 1i64 << (spec.suzuki_n() + 1);
    let b = |k: i64| fpow(beta, k).bits();
    let a = |k: i64| fpow(alpha, k).bits();
    let t1 = matrix(spec, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]);
    let t2 = matrix(spec, [[0, 0, 0, b(-1)], [0, 0, b(1 - e), 0], [0, b(e - 1), 0, 0], [b(1), 0, 0, 0]]);
    let t3 = matrix(spec, [[1, 0, 0, 0], [0, 1, 0, 0], [a(e), 0, 1, 0], [a(2), a(e), 0, 1]]);
    SuzukiGenerators { t1, t2, t3 }
}

/// x₂ and y₂ with the off-diagonal exponent `e`: 4 as printed, or
/// θ = 2^{n+1} in the form that lies in Sz(q) for every q (the two agree at q = 8).
pub fn suzuki_second_pair(
    spec: FieldSpec,
    delta: &FieldElement,
    epsilon: &FieldElement,
    e4: i64,
) -> (SuzukiMatrix, SuzukiMatrix) {
    let d = |k| fpow(delta, k).bits();
    let e = |k| fpow(epsilon, k).bits();
    let x2 = matrix(spec, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, d(e4)], [1, 0, d(e4), d(2)]]);
    let y2 = matrix(spec, [[e(2), e(e4), 0, 1], [e(e4), 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]);
    (x2, y2)
}

/// The Suzuki group ²B₂(2^m) as the handle generated by t₁, t₂, t₃.
pub fn suzuki_group(spec: FieldSpec, gens: &SuzukiGenerators) -> Result<Group, GroupError> {
    let q = BigUint::from(spec.size());
    let order = &q * &q * (&q * &q + 1u32) * (&q - 1u32);
    Ok(Group::new(vec![gens.t1.clone().into(), gens.t2.clone().into(), gens.t3.clone().into()])?
        .with_family(Family::Suzuki)
        .with_expected_order(order)
        .with_name(format!("Sz({})", spec.size())))
}

/// Exponent of δ and ε off the diagonal of x₂, y₂: `true` for the printed 4.
pub fn suzuki_exponent(spec: &FieldSpec, printed: bool) -> i64 {
    if printed {
        4
    } else {
        1 << (spec.suzuki_n() + 1)
    }
}

pub fn suzuki_parameters(m: u32, printed: bool) -> Result<SuzukiParameters, ConstructionError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(ConstructionError::Hypothesis(format!("m must be odd and at least 3; here m={m}")));
    }
    let spec = FieldSpec::default_for(m).map_err(|e| ConstructionError::Params(e.to_string()))?;
    let (alpha, beta, gamma) = suzuki_alpha_beta(&spec)
        .ok_or_else(|| ConstructionError::NotFound("no generator β with a generating square root of γ".into()))?;
    let q = spec.size();
    let generators: Vec<FieldElement> = spec.elements().filter(FieldElement::is_generator).collect();
    for delta in &generators {
        if spec.in_proper_subfield(fpow(delta, 2).bits()) {
            continue;
        }
        for epsilon in &generators {
            if delta == epsilon || spec.in_proper_subfield(fpow(epsilon, 2).bits()) {
                continue;
            }
            let (x2, y2) = suzuki_second_pair(spec, delta, epsilon, suzuki_exponent(&spec, printed));
            let bad = |o: u64| [1, 2, 4, q - 1].contains(&o);
            let (x, y) = (Element::from(x2), Element::from(y2));
            if bad(x.order()) || bad(y.order()) || x.op(&y).order() != 2 {
                continue;
            }
            return Ok(SuzukiParameters { spec, alpha, beta, gamma, delta: *delta, epsilon: *epsilon });
        }
    }
    Err(ConstructionError::NotFound(format!("no admissible (δ,ε) in GF(2^{m})")))
}

fn suzuki_candidate(m: u32, printed: bool) -> Result<Candidate, ConstructionError> {
    let p = suzuki_parameters(m, printed)?;
    let gens = suzuki_generators(p.spec, &p.alpha, &p.beta);
    let group = suzuki_group(p.spec, &gens)?;
    let x1 = gens.t1.mul(&gens.t2).expect("same field");
    let y1 = gens.t1.mul(&gens.t3).expect("same field");
    let e4 = suzuki_exponent(&p.spec, printed);
    let (x2, y2) = suzuki_second_pair(p.spec, &p.delta, &p.epsilon, e4);
    let s = BeauvilleStructure::new(group, (x1.into(), y1.into()), (x2.into(), y2.into()));
    let provenance = if printed { Provenance::Printed } else { Provenance::Derived };
    let mut c = Candidate::new(provenance, s, StronglyRealWitness::conjugation(gens.t1.clone().into())).note(format!(
        "β={}, γ={}, α={}, δ={}, ε={} (bit masks over modulus {:#x})",
        p.beta.bits(),
        p.gamma.bits(),
        p.alpha.bits(),
        p.delta.bits(),
        p.epsilon.bits(),
        p.spec.modulus()
    ));
    if !printed {
        c = c.note(format!("x₂, y₂ use δ^{e4}, ε^{e4} (exponent 2^(n+1)) in place of the printed fourth powers"));
    }
    Ok(c)
}

/// Suzuki structure of type ((q−1,q−1,q−1),(d₁,d₂,2)) with witness t₁.
pub fn suzuki_structure(m: u32) -> Result<Construction, ConstructionError> {
    let printed = suzuki_candidate(m, true)?;
    Construction::adjudicate(FamilyRequest::Suzuki(m), printed, Some(&|| suzuki_candidate(m, false)))
}

// ---------------------------------------------------------------------------
// alternating groups

/// A_{2r}, r a multiple of 6: type ((r²−1,r+1,r+1),(2r−1,2r−1,3)).
pub fn alt_coprime_structure(r: usize) -> Result<Construction, ConstructionError> {
    if r == 0 || !r.is_multiple_of(6) {
        return Err(ConstructionError::Hypothesis(format!("r must be a positive multiple of 6; here r={r}")));
    }
    let n = 2 * r;
    let group = power_group(n, 1, &alternating_generators(n), factorial(n) / 2u32)?.with_name(format!("A{n}"));
    let x1 = perm(n, vec![up(1, r + 1), up(r + 2, 2 * r)]);
    let y1 = perm(n, vec![down(2 * r, r)]);
    let mut a = vec![vec![r, r + 1]];
    a.extend((1..r / 2).map(|i| vec![r - i, i]));
    a.extend(reflect(r + 2, 2 * r));
    let a = perm(n, a);
    let x2 = perm(n, vec![up(1, 2 * r - 1)]);
    let y2 = perm(n, vec![down(2 * r, 2)]);
    let b = perm(n, reflect(2, 2 * r - 1));
    let (a, b) = (el(a), el(b));
    let s = BeauvilleStructure::new(group, (el(x1), el(y1)), (el(x2), el(y2)));
    let w = with_conjugators(a.clone(), None, Some(conjugator(&b, &a)));
    let c = Candidate::new(Provenance::Printed, s, w)
        .note(format!(
            "a: the run (r−1,1)(r−2,2)… is continued to ({},{}); its printed last factor ({},{}) does not fit the run",
            r / 2 + 1,
            r / 2 - 1,
            r / 2,
            r / 2 + 2
        ))
        .note("witness: conjugation by a; pair 2 uses g2 = b·a so that conjugation by b is realized");
    Construction::adjudicate(FamilyRequest::AltCoprime(r), c, None)
}

/// A_{4r}, 3 ∤ r, 4r > 12: type ((4r²−1,2r+1,2r+1),(4r²−9,2r−1,2r+3)).
pub fn alt_4r_structure(r: usize) -> Result<Construction, ConstructionError> {
    if 4 * r <= 12 || r.is_multiple_of(3) {
        return Err(ConstructionError::Hypothesis(format!("need 4r > 12 and 3 ∤ r; here r={r}")));
    }
    let n = 4 * r;
    let group = power_group(n, 1, &alternating_generators(n), factorial(n) / 2u32)?.with_name(format!("A{n}"));
    let x1 = perm(n, vec![up(1, 2 * r + 1), up(2 * r + 2, n)]);
    let y1 = perm(n, vec![down(n, 2 * r)]);
    let mut a = vec![vec![2 * r, 2 * r + 1]];
    a.extend((1..r).map(|i| vec![2 * r - i, i]));
    a.extend(reflect(2 * r + 2, n));
    let x2 = perm(n, vec![up(1, 2 * r + 3), up(2 * r + 4, 4 * r)]);
    let y2 = perm(n, vec![down(n, 2 * r + 2)]);
    let mut b = vec![vec![2 * r + 2, 2 * r + 3]];
    b.extend((1..=r).map(|i| vec![2 * r + 2 - i, i]));
    b.extend(reflect(2 * r + 4, 4 * r));
    let (a, b) = (el(perm(n, a)), el(perm(n, b)));
    let s = BeauvilleStructure::new(group, (el(x1), el(y1)), (el(x2), el(y2)));
    let w = with_conjugators(a.clone(), None, Some(conjugator(&b, &a)));
    let c = Candidate::new(Provenance::Printed, s, w)
        .note("the second triple's second element is printed as y_1 and read as y_2")
        .note(format!(
            "b: the run (2r+1,1)(2r,2)… is continued to ({},{}); the printed factor ({},{}) closing it repeats the end of the last run",
            r + 2,
            r,
            3 * r + 1,
            3 * r + 3
        ))
        .note("witness: conjugation by a; pair 2 uses g2 = b·a");
    Construction::adjudicate(FamilyRequest::Alt4r(r), c, None)
}

struct PowerCoordinates {
    x1: Permutation,
    y1: Permutation,
    t: Permutation,
    t_derived: Option<Permutation>,
    x2: Permutation,
    y2: Permutation,
    s: Permutation,
}

fn odd_power_coordinates(n: usize, j: usize) -> PowerCoordinates {
    let x1 = perm(n, vec![up(1, 2 * j + 3)]);
    let y1 = perm(n, vec![up(2 * j + 3, n)]);
    let mut t = reflect(1, 2 * j);
    t.extend(reflect(2 * j + 2, n));
    let mut t2 = reflect(1, 2 * j + 2);
    t2.extend(reflect(2 * j + 4, n));
    let x2 = perm(n, vec![up(1, n - 2)]);
    let y2 =
        perm(n, vec![vec![j + 1, j + 2], vec![n - j - 1, n - j - 2], vec![(n - 1) / 2, n - 1], vec![n.div_ceil(2), n]]);
    let mut s = reflect(2, n - 2);
    s.push(vec![n - 1, n]);
    PowerCoordinates { x1, y1, t: perm(n, t), t_derived: Some(perm(n, t2)), x2, y2, s: perm(n, s) }
}

fn even_power_coordinates(n: usize, j: usize) -> PowerCoordinates {
    let x1 = perm(n, vec![up(1, 2 * j + 5)]);
    let y1 = perm(n, vec![down(n, 2 * j + 4)]);
    let mut t = vec![vec![2 * j + 4, 2 * j + 5]];
    t.extend(reflect(1, 2 * j + 3));
    t.extend(reflect(2 * j + 6, n));
    let x2 = perm(n, vec![up(1, n - 2), vec![n - 1, n]]);
    let y2 = perm(n, vec![vec![n / 2, (n - 2) / 2, n - 1], vec![j + 1, j, n, n - j - 1, n - j - 2]]);
    let s = perm(n, reflect(1, n - 2));
    PowerCoordinates { x1, y1, t: perm(n, t), t_derived: None, x2, y2, s }
}

/// A_n^k on k blocks of n points, coordinate j on block j.
pub fn alt_power_structure(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::Hypothesis("k must be positive".into()));
    }
    let odd = n % 2 == 1;
    if odd && (n < 11 || 2 * k + 6 > n) {
        return Err(ConstructionError::Hypothesis(format!("odd n needs n ≥ 11 and k ≤ (n−6)/2; here ({n},{k})")));
    }
    if !odd && (n < 12 || 4 * k + 8 > n) {
        return Err(ConstructionError::Hypothesis(format!("even n needs n ≥ 12 and k ≤ (n−8)/4; here ({n},{k})")));
    }
    let coords: Vec<PowerCoordinates> =
        (1..=k).map(|j| if odd { odd_power_coordinates(n, j) } else { even_power_coordinates(n, j) }).collect();
    let name = if k == 1 { format!("A{n}") } else { format!("A{n}^{k}") };
    let group = power_group(n, k, &alternating_generators(n), factorial(n) / 2u32)?.with_name(name);
    let collect = |f: &dyn Fn(&PowerCoordinates) -> Permutation| diag(&coords.iter().map(f).collect::<Vec<_>>());
    let pair1 = (collect(&|c| c.x1.clone()), collect(&|c| c.y1.clone()));
    let pair2 = (collect(&|c| c.x2.clone()), collect(&|c| c.y2.clone()));
    let s = collect(&|c| c.s.clone());
    let build = |tau: Element, provenance: Provenance| {
        let w = with_conjugators(tau.clone(), None, Some(conjugator(&s, &tau)));
        let st = BeauvilleStructure::new(group.clone(), pair1.clone(), pair2.clone());
        Candidate::new(provenance, st, w)
    };
    let mut printed = build(collect(&|c| c.t.clone()), Provenance::Printed)
        .note("witness: τ assembled blockwise from t; pair 2 uses g2 = s·τ with s the printed inverter of pair 2");
    if odd {
        let strict = (1..=k).filter(|&j| 4 * j + 6 >= n).collect::<Vec<_>>();
        if !strict.is_empty() {
            printed = printed.note(format!(
                "first pairs use j = 1..{k}; j = {strict:?} lie outside the stated range 1 ≤ j < (n−6)/4"
            ));
        }
    } else {
        printed = printed.note(
            "t: the run (2j+6,n)(2j+7,n−1)… is continued until it closes; its printed end point does not fit the run",
        );
    }
    let derived_tau = odd.then(|| collect(&|c| c.t_derived.clone().unwrap()));
    let derive = |tau: &Element| -> Result<Candidate, ConstructionError> {
        Ok(build(tau.clone(), Provenance::Derived).note(
            "τ replaced blockwise by ∏(i,2j+3−i)·∏(q,n+2j+4−q), the reflection of both first-pair cycles fixing 2j+3",
        ))
    };
    let derive_fn = derived_tau.as_ref().map(|t| move || derive(t));
    Construction::adjudicate(
        FamilyRequest::AltPower(n, k),
        printed,
        derive_fn.as_ref().map(|f| f as &dyn Fn() -> Result<Candidate, ConstructionError>),
    )
}

// ---------------------------------------------------------------------------
// S_n × S_n

fn sym_square(n: usize) -> Result<Group, GroupError> {
    Ok(power_group(n, 2, &symmetric_generators(n), factorial(n))?.with_name(format!("S{n}xS{n}")))
}

/// Block-preserving involution on 2n points inverting every element given,
/// found by backtracking.
fn block_inverter(n: usize, elements: &[Permutation]) -> Option<Permutation> {
    let block = up(1, n);
    let found = inverting_permutations(elements, 1, &mut |k| k.preserves(&block) && k.order() <= 2);
    found.into_iter().next()
}

fn sym_printed(
    n: usize,
) -> (Permutation, Permutation, Permutation, Permutation, Option<Permutation>, Option<Permutation>, Vec<String>) {
    let d = 2 * n;
    let mut notes = Vec::new();
    if n == 5 {
        let x1 = parse("(1,4)(2,5)(6,10)(7,8,9)", d);
        let y1 = parse("(1,5)(2,3,4)(6,9)(7,10)", d);
        let x2 = parse("(1,2,3,4,5)(6,7,9,10)", d);
        let y2 = parse("(5,4,2,1)(10,9,8,7,6)", d);
        let t = parse("(1,5)(2,4)(6,10)(7,9)", d);
        notes.push("smallest odd case: explicit quadruple and inverter as printed".into());
        return (x1, y1, x2, y2, Some(t.clone()), Some(t), notes);
    }
    if n.is_multiple_of(2) {
        let x1 = perm(d, vec![up(1, n - 1), vec![2 * n - 1, 2 * n]]);
        let y1 = perm(d, vec![vec![n, n - 1], up(n + 1, 2 * n - 1)]);
        let mut t = reflect(1, n - 2);
        t.extend(reflect(n + 1, 2 * n - 2));
        let t = perm(d, t);
        if n == 6 {
            let x2 = parse("(1,2,3,4)(10,11,12)", d);
            let y2 = parse("(4,5,6)(7,8,9,10)", d);
            let s = parse("(1,3)(5,6)(7,9)(11,12)", d);
            notes.push("n = 6: second pair and its inverter replaced by the printed special case".into());
            return (x1, y1, x2, y2, Some(t), Some(s), notes);
        }
        let x2 = perm(d, vec![vec![1, 2, 3], up(4, n), down(n + 4, n + 1)]);
        let y2 = perm(d, vec![down(4, 1), vec![n + 1, n + 2, n + 3], up(n + 4, 2 * n)]);
        let mut s = vec![vec![1, 3]];
        s.extend(reflect(5, n));
        s.push(vec![n + 1, n + 3]);
        s.extend(reflect(n + 5, 2 * n));
        notes.push(format!(
            "s: the run (n+5,2n)… is continued to ({},{}); the printed closing factor (3n/2+2,n/2+3) does not fit the run",
            3 * n / 2 + 2,
            3 * n / 2 + 3
        ));
        return (x1, y1, x2, y2, Some(t), Some(perm(d, s)), notes);
    }
    // odd n ≥ 7: n-cycles in the first pair, a p-cycle in place of the 4-cycles
    let p = (5..).step_by(2).find(|&p: &usize| p.gcd(&(3 * (n - 3))) == 1).unwrap();
    let x1 = perm(d, vec![up(1, n), vec![2 * n - 1, 2 * n]]);
    let y1 = perm(d, vec![vec![n, n - 1], up(n + 1, 2 * n)]);
    let x2 = perm(d, vec![vec![1, 2, 3], up(4, n), down(n + p, n + 1)]);
    let y2 = perm(d, vec![down(p, 1), vec![n + 1, n + 2, n + 3], up(n + 4, 2 * n)]);
    notes.push(format!("odd n: p = {p}, the least odd p ≥ 5 coprime to 3(n−3)"));
    notes.push("odd n: the printed inverters are not well-formed permutations; both are found by backtracking".into());
    let t = block_inverter(n, &[x1.clone(), y1.clone()]);
    let s = block_inverter(n, &[x2.clone(), y2.clone()]);
    (x1, y1, x2, y2, t, s, notes)
}

/// S_n × S_n on 2n points with blocks {1..n}, {n+1..2n}.
pub fn sym_double_structure(n: usize) -> Result<Construction, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::Hypothesis(format!("n must be at least 5; here n={n}")));
    }
    let group = sym_square(n)?;
    let (x1, y1, x2, y2, t, s, notes) = sym_printed(n);
    let d = 2 * n;
    let tau = el(t.clone().unwrap_or_else(|| Permutation::identity(d)));
    let g2 = s.as_ref().map(|s| conjugator(&el(s.clone()), &tau));
    let st = BeauvilleStructure::new(group.clone(), (el(x1.clone()), el(y1.clone())), (el(x2), el(y2)));
    let mut printed = Candidate::new(Provenance::Printed, st, with_conjugators(tau.clone(), None, g2));
    printed.notes = notes;
    if t.is_none() || s.is_none() {
        printed = printed.note("no block-preserving inverting involution exists for one of the pairs");
    }
    let derive = || -> Result<Candidate, ConstructionError> {
        let t = t.clone().ok_or_else(|| ConstructionError::NotFound("first pair has no inverter".into()))?;
        let (x2, y2) = derive_second_pair(&group, n, (&x1, &y1), &t)?;
        let st = BeauvilleStructure::new(group.clone(), (el(x1.clone()), el(y1.clone())), (el(x2), el(y2)));
        Ok(Candidate::new(Provenance::Derived, st, StronglyRealWitness::conjugation(el(t))).note(
            "first pair and τ as in the printed candidate; second pair found by search among elements inverted by τ",
        ))
    };
    Construction::adjudicate(FamilyRequest::SymDouble(n), printed, Some(&derive))
}

/// Involutions (and the identity) of S_n as image lists, in lexicographic order of construction.
fn involutions(n: usize) -> Vec<Permutation> {
    fn rec(images: &mut Vec<usize>, i: usize, out: &mut Vec<Permutation>) {
        let n = images.len();
        if i == n {
            out.push(Permutation::from_images(&images.iter().map(|v| v + 1).collect::<Vec<_>>()).unwrap());
            return;
        }
        if images[i] != usize::MAX {
            return rec(images, i + 1, out);
        }
        images[i] = i;
        rec(images, i + 1, out);
        for j in i + 1..n {
            if images[j] == usize::MAX {
                images[i] = j;
                images[j] = i;
                rec(images, i + 1, out);
                images[j] = usize::MAX;
            }
        }
        images[i] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], 0, &mut out);
    out
}

struct Component {
    perm: Permutation,
    /// Cycle type of perm^k for k in 0..order.
    powers: Vec<CycleType>,
}

impl Component {
    fn new(perm: Permutation) -> Component {
        let o = perm.order() as usize;
        let mut powers = Vec::with_capacity(o);
        let mut p = Permutation::identity(perm.degree());
        for _ in 0..o {
            powers.push(p.cycle_type());
            p = p.then(&perm);
        }
        Component { perm, powers }
    }
}

type ClassPair = (CycleType, CycleType);

fn power_pairs<'a>(a: &'a Component, b: &'a Component) -> impl Iterator<Item = ClassPair> + 'a {
    let (oa, ob) = (a.powers.len(), b.powers.len());
    let l = oa.lcm(&ob);
    (1..l).map(move |k| (a.powers[k % oa].clone(), b.powers[k % ob].clone()))
}

fn avoids(a: &Component, b: &Component, forbidden: &HashSet<ClassPair>) -> bool {
    power_pairs(a, b).all(|c| !forbidden.contains(&c))
}

/// Round robin over cycle types, types by decreasing order, so that the
/// first few components cover many classes.
fn interleave_by_type(cs: Vec<Component>) -> Vec<Component> {
    let mut groups: Vec<(CycleType, Vec<Component>)> = Vec::new();
    for c in cs {
        let t = c.perm.cycle_type();
        match groups.iter_mut().find(|(k, _)| *k == t) {
            Some((_, v)) => v.push(c),
            None => groups.push((t, vec![c])),
        }
    }
    groups.sort_by_key(|(t, _)| std::cmp::Reverse(t.order()));
    let mut iters: Vec<_> = groups.into_iter().map(|(_, v)| v.into_iter()).collect();
    let mut out = Vec::new();
    loop {
        let before = out.len();
        for it in iters.iter_mut() {
            out.extend(it.next());
        }
        if out.len() == before {
            return out;
        }
    }
}

/// Second pair (x₂, y₂) for S_n × S_n, both inverted by `t`, generating the
/// group and with Σ disjoint from that of the first pair.
///
/// Elements inverted by `t` are exactly `t·i` with `i² = 1`, so candidates
/// are products of `t` with block-preserving involutions. Components are
/// tried by decreasing order.
fn derive_second_pair(
    group: &Group,
    n: usize,
    pair1: (&Permutation, &Permutation),
    t: &Permutation,
) -> Result<(Permutation, Permutation), ConstructionError> {
    let blocks = group.blocks().expect("two blocks").to_vec();
    let (x1, y1) = (el(pair1.0.clone()), el(pair1.1.clone()));
    let split = |e: &Element| -> ClassPair {
        let p = e.as_perm().unwrap();
        (p.cycle_type_on(&blocks[0]), p.cycle_type_on(&blocks[1]))
    };
    let mut forbidden: HashSet<ClassPair> = HashSet::new();
    for e in [x1.clone(), y1.clone(), x1.op(&y1)] {
        for k in 1..e.order() {
            forbidden.insert(split(&e.pow(k as i64)));
        }
    }
    let full = factorial(n);
    let inv = involutions(n);
    let comps: Vec<Vec<Component>> = blocks
        .iter()
        .map(|b| {
            let tb = t.restrict(b);
            let cs: Vec<Component> = inv.iter().map(|i| Component::new(tb.then(i))).collect();
            interleave_by_type(cs)
        })
        .collect();

    // pairs of components generating S_n on each block, most promising first
    const TOP: usize = 80;
    const CAP: usize = 400;
    let generates_factor =
        |p: &Permutation, q: &Permutation| StabChain::new(n, &[p.clone(), q.clone()]).order() == full;
    let factor_pairs: Vec<Vec<(usize, usize)>> = comps
        .iter()
        .map(|cs| {
            let top = cs.len().min(TOP);
            let mut v = Vec::new();
            for a in 0..top {
                for c in 0..top {
                    if v.len() < CAP && generates_factor(&cs[a].perm, &cs[c].perm) {
                        v.push((a, c));
                    }
                }
            }
            v
        })
        .collect();
    for &(a, c) in &factor_pairs[0] {
        let (pa, pc) = (&comps[0][a], &comps[0][c]);
        let prod0 = Component::new(pa.perm.then(&pc.perm));
        for &(b, d) in &factor_pairs[1] {
            let (pb, pd) = (&comps[1][b], &comps[1][d]);
            if !avoids(pa, pb, &forbidden) || !avoids(pc, pd, &forbidden) {
                continue;
            }
            if !avoids(&prod0, &Component::new(pb.perm.then(&pd.perm)), &forbidden) {
                continue;
            }
            let x2 = Permutation::direct_sum(&[&pa.perm, &pb.perm]);
            let y2 = Permutation::direct_sum(&[&pc.perm, &pd.perm]);
            if StabChain::new(2 * n, &[x2.clone(), y2.clone()]).order() == &full * &full {
                return Ok((x2, y2));
            }
        }
    }
    Err(ConstructionError::NotFound(format!("no second pair for S{n}×S{n} within the search limits")))
}

// ---------------------------------------------------------------------------
// Mathieu and A5 doubles

struct MathieuData {
    degree: usize,
    x1: &'static str,
    y1: &'static str,
    x2: &'static str,
    y2: &'static str,
    a: &'static str,
    factor_order: u64,
}

fn mathieu_data(g: MathieuGroup) -> MathieuData {
    match g {
        MathieuGroup::A5 => MathieuData {
            degree: 10,
            x1: "(1,2,3,4,5)(6,7,8,9,10)",
            y1: "(2,3,4)(7,10)(6,9)",
            x2: "(1,4,3,2,5)(7,8,9)",
            y2: "(1,2)(4,5)(6,9,8,7,10)",
            a: "(1,5)(2,4)(6,10)(7,9)",
            factor_order: 60,
        },
        MathieuGroup::M11 => MathieuData {
            degree: 22,
            x1: "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
            y1: "(1,6,10,5,2,7,4,9,11,8,3)(12,14,19,16,21,18,13,17,22,20,15)",
            x2: "(1,3,9,11,10,7,2,4)(5,8)(12,14,20,22,19,21,16,13)(15,18)",
            y2: "(2,6,9,4,8,3,7,5)(10,11)(12,13)(14,17,21,18,16,20,15,19)",
            a: "(1,22)(2,21)(3,20)(4,19)(5,18)(6,17)(7,16)(8,15)(9,14)(10,13)(11,12)",
            factor_order: 7920,
        },
        MathieuGroup::M23 => MathieuData {
            degree: 46,
            x1: "(1,22,5,17,6,10,18,16,19,8,9,15,13,14,21,4,3,7,23,20,2,12,11)\
                 (24,40,44,43,26,33,34,32,38,39,28,31,29,37,41,30,42,25,46,36,35,45,27)",
            y1: "(1,16,3,14,7,15,18,22,21,8,20,10,4,17,19,13,5,6,23,9,2,12,11)\
                 (24,41,42,34,28,30,43,37,27,39,26,25,29,32,40,33,44,31,46,36,35,45,38)",
            x2: "(1,3,19,7,18,4,11,21,16,14,6)(2,23,9,17,15,20,22,10,13,12,8)\
                 (24,45,39,35,34,37,25,27,32,30,38)(26,36,43,29,40,28,44,46,41,33,31)",
            y2: "(1,6,22,9,16,17,5,19,11,18,2)(3,14,13,23,4,12,15,10,7,21,8)\
                 (24,34,33,44,39,26,40,37,32,35,43)(25,41,46,45,29,36,28,42,30,31,38)",
            a: "(1,46)(2,45)(3,44)(4,43)(5,42)(6,41)(7,40)(8,39)(9,38)(10,37)(11,36)\
                (12,35)(13,34)(14,33)(15,32)(16,31)(17,30)(18,29)(19,28)(20,27)\
                (21,26)(22,25)(23,24)",
            factor_order: 10200960,
        },
    }
}

/// The hard-coded structures on A5×A5, M11×M11 and M23×M23. The group is
/// generated by the first pair.
pub fn mathieu_double(g: MathieuGroup) -> Result<Construction, ConstructionError> {
    let d = mathieu_data(g);
    let p = |s: &str| el(parse(s, d.degree));
    let (x1, y1) = (p(d.x1), p(d.y1));
    let order = BigUint::from(d.factor_order).pow(2);
    let group = Group::new(vec![x1.clone(), y1.clone()])?
        .with_blocks(Group::consecutive_blocks(d.degree / 2, 2))?
        .with_expected_order(order)
        .with_name(g.name());
    let s = BeauvilleStructure::new(group, (x1, y1), (p(d.x2), p(d.y2)));
    let c = Candidate::new(Provenance::Printed, s, StronglyRealWitness::conjugation(p(d.a)))
        .note("group handle generated by the first pair");
    Construction::adjudicate(FamilyRequest::MathieuDouble(g), c, None)
}

// ---------------------------------------------------------------------------
// G × G

/// Lifts a coprime structure to G × G with the diagonal automorphism. When
/// the base witness uses conjugators g₁, g₂, the lifted ones are (g₁,g₂)
/// and (g₂,g₁).
pub fn product_double(base: &Construction) -> Result<Construction, ConstructionError> {
    let c = base.emitted();
    let report = c.report.clone().unwrap_or_else(|| verify_structure(&c.structure));
    if !report.overall.is_pass() {
        return Err(ConstructionError::Hypothesis(format!("input structure does not verify: {}", report.overall)));
    }
    if !report.coprime {
        return Err(ConstructionError::Hypothesis(format!("input type {} is not coprime", report.structure_type)));
    }
    let g = &c.structure.group;
    let [(x1, y1), (x2, y2)] = c.structure.pairs.clone();
    let join = |a: &Element, b: &Element| -> Element {
        match (a, b) {
            (Element::Perm(p), Element::Perm(q)) => el(Permutation::direct_sum(&[p, q])),
            (Element::Matrix(p), Element::Matrix(q)) => Element::Matrix(SuzukiMatrix::direct_sum(&[p, q])),
            _ => unreachable!("elements of one group share a kind"),
        }
    };
    let id = g.identity();
    let mut gens = Vec::new();
    for h in g.generators() {
        gens.push(join(h, &id));
    }
    for h in g.generators() {
        gens.push(join(&id, h));
    }
    let mut group = Group::new(gens)?;
    if g.is_permutation() {
        let deg = match g.kind() {
            crate::element::ElementKind::Permutation { degree } => degree,
            _ => unreachable!(),
        };
        let base_blocks = g.blocks().map(<[Vec<usize>]>::to_vec).unwrap_or_else(|| vec![up(1, deg)]);
        let mut blocks = base_blocks.clone();
        blocks.extend(base_blocks.iter().map(|b| b.iter().map(|p| p + deg).collect()));
        group = group.with_blocks(blocks)?;
    }
    if let Some(f) = g.family() {
        group = group.with_family(f);
    }
    if let Some(o) = g.expected_order() {
        group = group.with_expected_order(o * o);
    }
    if let Some(name) = g.name() {
        group = group.with_name(format!("({name})^2"));
    }
    let mut witness = match &c.witness.automorphism {
        Automorphism::OvergroupConjugation { tau, .. } => StronglyRealWitness::conjugation(join(tau, tau)),
        Automorphism::AbelianInversion => StronglyRealWitness::inversion(),
    };
    // pair i of G×G mixes pair i and pair 3−i of G, so the conjugators lift crosswise
    let lifted = c.witness.g1.is_some() || c.witness.g2.is_some();
    if lifted {
        let g1 = c.witness.g1.clone().unwrap_or_else(|| id.clone());
        let g2 = c.witness.g2.clone().unwrap_or_else(|| id.clone());
        witness.g1 = Some(join(&g1, &g2));
        witness.g2 = Some(join(&g2, &g1));
    }
    let s = BeauvilleStructure::new(group, (join(&x1, &x2), join(&y1, &y2)), (join(&x2, &x1), join(&y2, &y1)));
    let mut cand = Candidate::new(Provenance::Printed, s, witness)
        .note(format!("built from {} ({} data)", base.request, c.provenance));
    if lifted {
        cand = cand.note("the base witness needs conjugators; they are lifted as (g₁,g₂) and (g₂,g₁)");
    }
    if c.provenance == Provenance::Derived {
        cand.provenance = Provenance::Derived;
    }
    Construction::adjudicate(FamilyRequest::ProductDouble(Box::new(base.request.clone())), cand, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(reflect(2, 7), vec![vec![2, 7], vec![3, 6], vec![4, 5]]);
        assert_eq!(reflect(3, 5), vec![vec![3, 5]]);
        assert!(reflect(4, 4).is_empty());
        assert_eq!(involutions(4).len(), 10);
        assert_eq!(involutions(5).len(), 26);
        assert!(involutions(6).iter().all(|p| p.order() <= 2));
    }

    #[test]
    fn requests_round_trip() {
        for (f, p) in [("alt_power", "11,2"), ("mathieu_double", "M11xM11"), ("product_double", "suzuki:3")] {
            let r = FamilyRequest::parse(f, p).unwrap();
            assert_eq!(r.family(), f);
            assert_eq!(FamilyRequest::parse(r.family(), &r.params()).unwrap(), r);
        }
        assert!(FamilyRequest::parse("alt_power", "11").is_err());
        assert!(FamilyRequest::parse("nope", "1").is_err());
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(matches!(abelian_structure(6), Err(ConstructionError::Hypothesis(_))));
        assert!(matches!(alt_coprime_structure(5), Err(ConstructionError::Hypothesis(_))));
        assert!(matches!(alt_4r_structure(3), Err(ConstructionError::Hypothesis(_))));
        assert!(matches!(alt_power_structure(9, 1), Err(ConstructionError::Hypothesis(_))));
        assert!(matches!(sym_double_structure(4), Err(ConstructionError::Hypothesis(_))));
        assert!(matches!(suzuki_structure(4), Err(ConstructionError::Hypothesis(_))));
    }

    #[test]
    fn suzuki_parameters_over_gf8() {
        let p = suzuki_parameters(3, true).unwrap();
        assert_eq!(p.beta.bits(), 0b010);
        assert_eq!(p.gamma.bits(), 0b010);
        assert_eq!(p.alpha.bits(), 0b110);
        assert_ne!(p.delta, p.epsilon);
    }

    #[test]
    fn a5_double_is_printed_and_verified() {
        let c = mathieu_double(MathieuGroup::A5).unwrap();
        assert!(c.printed_verified(), "{:?}", c.discrepancies);
        assert_eq!(c.emitted().structure.structure_type().to_string(), "((5,6,5),(15,10,15))");
        assert!(matches!(product_double(&c), Err(ConstructionError::Hypothesis(_))));
    }

    #[test]
    fn abelian_five() {
        let c = abelian_structure(5).unwrap();
        assert!(c.emitted().verified());
    }
}
