//! Finite groups given by generators: order, membership, enumeration,
//! conjugacy classes and a tiered conjugacy oracle.
//!
//! The oracle tiers, from cheapest to most general:
//!
//! * invariants: order and per-block cycle types (or characteristic
//!   polynomials). Different invariants certify non-conjugacy.
//! * symmetric/alternating: the group is `Sym(Ω)` or `Alt(Ω)` on its support;
//!   classes are cycle types, split classes carry a sign.
//! * componentwise: the group is a certified direct product over declared
//!   blocks, and conjugacy is decided factor by factor.
//! * enumeration: the group fits the budget and classes are computed as
//!   orbits under conjugation by the generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::bsgs::StabChain;
use crate::element::{Element, ElementKind, Invariant};
use crate::perm::{CycleType, Permutation};
use crate::verdict::Verdict;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("generator {0} has a different kind from the first generator")]
    KindMismatch(usize),
    #[error("orbit blocks must partition 1..{0} into nonempty disjoint sets")]
    BadBlocks(usize),
    #[error("block {block} is not invariant under generator {generator}")]
    BlockNotInvariant { block: usize, generator: usize },
    #[error("orbit blocks only apply to permutation groups")]
    BlocksOnMatrices,
    #[error("enumeration budget of {0} elements exceeded")]
    BudgetExceeded(usize),
    #[error("element kind does not match the group")]
    ForeignElement,
}

/// Exact class identifier inside one factor (or the whole group).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentId {
    /// Index into the enumerated class list.
    Class(u32),
    /// Cycle type in `Sym`/`Alt`, with the split sign when the class splits.
    Cycle(CycleType, Option<bool>),
}

/// Conjugation-invariant fingerprint of an element.
///
/// `exact` has one entry per factor of the oracle (one entry when the group
/// is not treated as a product) and is empty when only invariants are known.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub invariant: Invariant,
    pub exact: Vec<Option<ComponentId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyRelation {
    /// Certainly different classes.
    Distinct,
    /// Certainly the same class.
    Same,
    Unknown,
}

impl ClassKey {
    pub fn is_exact(&self) -> bool {
        !self.exact.is_empty() && self.exact.iter().all(Option::is_some)
    }

    pub fn relation(&self, other: &ClassKey) -> KeyRelation {
        if self.invariant != other.invariant {
            return KeyRelation::Distinct;
        }
        if self.exact.len() != other.exact.len() || self.exact.is_empty() {
            return KeyRelation::Unknown;
        }
        let mut all_known = true;
        for (a, b) in self.exact.iter().zip(&other.exact) {
            match (a, b) {
                (Some(a), Some(b)) if a != b => return KeyRelation::Distinct,
                (Some(_), Some(_)) => {}
                _ => all_known = false,
            }
        }
        if all_known {
            KeyRelation::Same
        } else {
            KeyRelation::Unknown
        }
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant)?;
        if !self.exact.is_empty() {
            let ids: Vec<String> = self
                .exact
                .iter()
                .map(|c| match c {
                    None => "?".to_string(),
                    Some(ComponentId::Class(i)) => format!("#{i}"),
                    Some(ComponentId::Cycle(t, None)) => t.to_string(),
                    Some(ComponentId::Cycle(t, Some(s))) => format!("{t}{}", if *s { "+" } else { "-" }),
                })
                .collect();
            write!(f, " <{}>", ids.join(","))?;
        }
        Ok(())
    }
}

/// All elements of a group in breadth-first order from the identity.
#[derive(Debug)]
pub struct Enumeration {
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
    classes: OnceLock<ClassData>,
}

#[derive(Debug, Clone)]
pub struct ClassData {
    /// Class index of each element, by element index.
    pub class_of: Vec<u32>,
    /// Element index of each class representative.
    pub representatives: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl Enumeration {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub id: u32,
    pub representative: Element,
    pub size: usize,
}

#[derive(Debug, Clone)]
enum Oracle {
    SymAlt { support: Vec<usize>, alternating: bool },
    Product,
    Enumerated,
    Invariants,
}

impl Oracle {
    fn tier(&self) -> &'static str {
        match self {
            Oracle::SymAlt { .. } => "symmetric/alternating",
            Oracle::Product => "componentwise",
            Oracle::Enumerated => "enumeration",
            Oracle::Invariants => "invariants",
        }
    }
}

/// Known isomorphism type of a handle, enabling structural generation criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `²B₂(q)` in its natural 4-dimensional representation.
    Suzuki,
}

/// A finite group given by generators.
#[derive(Debug, Clone)]
pub struct Group {
    kind: ElementKind,
    generators: Vec<Element>,
    blocks: Option<Vec<Vec<usize>>>,
    name: Option<String>,
    expected_order: Option<BigUint>,
    family: Option<Family>,
    budget: usize,
    chain: OnceLock<Option<Arc<StabChain>>>,
    enumeration: OnceLock<Option<Arc<Enumeration>>>,
    oracle: OnceLock<Oracle>,
    product: OnceLock<Option<Vec<Group>>>,
}

impl Group {
    pub fn new(generators: Vec<Element>) -> Result<Group, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let kind = first.kind();
        if let Some(i) = generators.iter().position(|g| g.kind() != kind) {
            return Err(GroupError::KindMismatch(i));
        }
        Ok(Group {
            kind,
            generators,
            blocks: None,
            name: None,
            expected_order: None,
            family: None,
            budget: DEFAULT_BUDGET,
            chain: OnceLock::new(),
            enumeration: OnceLock::new(),
            oracle: OnceLock::new(),
            product: OnceLock::new(),
        })
    }

    pub fn from_permutations(generators: &[Permutation]) -> Result<Group, GroupError> {
        Group::new(generators.iter().cloned().map(Element::Perm).collect())
    }

    /// Declares an orbit-block decomposition; blocks must partition all points.
    pub fn with_blocks(mut self, blocks: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let ElementKind::Permutation { degree } = self.kind else {
            return Err(GroupError::BlocksOnMatrices);
        };
        let mut seen = vec![false; degree];
        for b in &blocks {
            if b.is_empty() {
                return Err(GroupError::BadBlocks(degree));
            }
            for &p in b {
                if p == 0 || p > degree || seen[p - 1] {
                    return Err(GroupError::BadBlocks(degree));
                }
                seen[p - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GroupError::BadBlocks(degree));
        }
        for (gi, g) in self.generators.iter().enumerate() {
            let p = g.as_perm().unwrap();
            if let Some(bi) = blocks.iter().position(|b| !p.preserves(b)) {
                return Err(GroupError::BlockNotInvariant { block: bi, generator: gi });
            }
        }
        self.blocks = Some(blocks);
        Ok(self)
    }

    /// `k` consecutive blocks of `n` points each.
    pub fn consecutive_blocks(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|i| (i * n + 1..=(i + 1) * n).collect()).collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = Some(name.into());
        self
    }

    /// Known order, used to skip hopeless enumerations and as a cross-check.
    pub fn with_expected_order(mut self, order: BigUint) -> Group {
        self.expected_order = Some(order);
        self
    }

    pub fn with_family(mut self, family: Family) -> Group {
        self.family = Some(family);
        self
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn with_budget(mut self, budget: usize) -> Group {
        self.budget = budget;
        self
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn blocks(&self) -> Option<&[Vec<usize>]> {
        self.blocks.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn expected_order(&self) -> Option<&BigUint> {
        self.expected_order.as_ref()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.kind)
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, ElementKind::Permutation { .. })
    }

    /// Number of direct factors declared: permutation blocks or matrix blocks.
    pub fn factor_count(&self) -> usize {
        match self.kind {
            ElementKind::Permutation { .. } => self.blocks.as_ref().map_or(1, Vec::len),
            ElementKind::Matrix { blocks, .. } => blocks,
        }
    }

    /// Image of `x` in factor `i` (restriction to block `i`, or matrix block `i`).
    pub fn project(&self, x: &Element, i: usize) -> Element {
        match x {
            Element::Perm(p) => match &self.blocks {
                Some(bs) => Element::Perm(p.restrict(&bs[i])),
                None => x.clone(),
            },
            Element::Matrix(m) => Element::Matrix(m.block(i)),
        }
    }

    pub fn invariant(&self, x: &Element) -> Invariant {
        x.invariant(self.blocks.as_deref())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Stabilizer chain (permutation groups only).
    pub fn stab_chain(&self) -> Option<&StabChain> {
        self.chain
            .get_or_init(|| match self.kind {
                ElementKind::Permutation { degree } => {
                    let gens: Vec<Permutation> = self.generators.iter().map(|g| g.as_perm().unwrap().clone()).collect();
                    Some(Arc::new(StabChain::new(degree, &gens)))
                }
                ElementKind::Matrix { .. } => None,
            })
            .as_deref()
    }

    /// Exact order: stabilizer chain for permutations, closure for matrices.
    pub fn order(&self) -> Result<BigUint, GroupError> {
        if let Some(chain) = self.stab_chain() {
            return Ok(chain.order());
        }
        if let Some(product) = self.certified_factors() {
            let mut total = BigUint::one();
            for f in product {
                total *= f.order()?;
            }
            return Ok(total);
        }
        self.enumeration().map(|e| BigUint::from(e.len()))
    }

    /// Breadth-first closure of the generators within the group's budget.
    pub fn enumeration(&self) -> Result<Arc<Enumeration>, GroupError> {
        self.enumeration
            .get_or_init(|| {
                if let Some(exp) = &self.expected_order {
                    if *exp > BigUint::from(self.budget) {
                        return None;
                    }
                }
                if let Some(chain) = self.stab_chain() {
                    if chain.order() > BigUint::from(self.budget) {
                        return None;
                    }
                }
                enumerate_closure(&self.generators, self.kind, self.budget).map(Arc::new)
            })
            .clone()
            .ok_or(GroupError::BudgetExceeded(self.budget))
    }

    /// Closure with an explicit budget, bypassing the cache.
    pub fn enumerate(&self, budget: usize) -> Result<Vec<Element>, GroupError> {
        enumerate_closure(&self.generators, self.kind, budget)
            .map(|e| e.elements)
            .ok_or(GroupError::BudgetExceeded(budget))
    }

    /// Enumeration together with its conjugacy-class partition.
    pub fn class_data(&self) -> Result<(&Enumeration, &ClassData), GroupError> {
        self.enumeration()?;
        let e: &Enumeration = self.enumeration.get().and_then(|o| o.as_deref()).unwrap();
        Ok((e, e.classes.get_or_init(|| compute_classes(e, &self.generators))))
    }

    /// Conjugacy classes in enumeration order; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>, GroupError> {
        let (e, data) = self.class_data()?;
        Ok(data
            .representatives
            .iter()
            .enumerate()
            .map(|(id, &r)| ConjugacyClass {
                id: id as u32,
                representative: e.element(r).clone(),
                size: data.sizes[id],
            })
            .collect())
    }

    fn check_kind(&self, g: &Element) -> Result<(), GroupError> {
        if g.kind() != self.kind {
            return Err(GroupError::ForeignElement);
        }
        Ok(())
    }

    /// Membership: sifting for permutations, lookup or factorwise for matrices.
    pub fn contains(&self, g: &Element) -> Result<bool, GroupError> {
        self.check_kind(g)?;
        if let Some(chain) = self.stab_chain() {
            return Ok(chain.contains(g.as_perm().unwrap()));
        }
        if g.is_identity() || self.generators.contains(g) {
            return Ok(true);
        }
        if let Some(factors) = self.certified_factors() {
            for (i, f) in factors.iter().enumerate() {
                if !f.contains(&self.project(g, i))? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        Ok(self.enumeration()?.index_of(g).is_some())
    }

    /// Factor groups, when the group is certified to be their direct product.
    ///
    /// Certificate: every generator is trivial outside one factor, or (for
    /// permutations) the order equals the product of the factor orders.
    pub fn certified_factors(&self) -> Option<&[Group]> {
        self.product
            .get_or_init(|| {
                let k = self.factor_count();
                if k < 2 {
                    return None;
                }
                let factors: Vec<Group> = (0..k)
                    .map(|i| {
                        let gens = self.generators.iter().map(|g| self.project(g, i)).collect();
                        let f = Group::new(gens).unwrap().with_budget(self.budget);
                        match self.family {
                            Some(fam) if !self.is_permutation() => f.with_family(fam),
                            _ => f,
                        }
                    })
                    .collect();
                let supported_on_one =
                    self.generators.iter().all(|g| (0..k).filter(|&i| !self.project(g, i).is_identity()).count() <= 1);
                if supported_on_one {
                    return Some(factors);
                }
                if let Some(chain) = self.stab_chain() {
                    let product: BigUint = factors.iter().map(|f| f.order().unwrap()).product();
                    if chain.order() == product {
                        return Some(factors);
                    }
                }
                None
            })
            .as_deref()
    }

    /// Support of the group and whether it is the full symmetric or
    /// alternating group there.
    pub fn symmetric_or_alternating(&self) -> Option<(Vec<usize>, bool)> {
        let chain = self.stab_chain()?;
        let ElementKind::Permutation { degree } = self.kind else { return None };
        let support: Vec<usize> =
            (1..=degree).filter(|&p| self.generators.iter().any(|g| g.as_perm().unwrap().image(p) != p)).collect();
        let m = support.len();
        if m < 2 {
            return None;
        }
        let fact: BigUint = (1..=m as u64).map(BigUint::from).product();
        let order = chain.order();
        if order == fact {
            Some((support, false))
        } else if order * 2u32 == fact {
            Some((support, true))
        } else {
            None
        }
    }

    fn oracle(&self) -> &Oracle {
        self.oracle.get_or_init(|| {
            if let Some((support, alternating)) = self.symmetric_or_alternating() {
                return Oracle::SymAlt { support, alternating };
            }
            if self.certified_factors().is_some() {
                return Oracle::Product;
            }
            match self.enumeration() {
                Ok(_) => Oracle::Enumerated,
                Err(_) => Oracle::Invariants,
            }
        })
    }

    /// Name of the strongest conjugacy tier available for this group.
    pub fn oracle_tier(&self) -> String {
        match self.oracle() {
            Oracle::Product => {
                let fs = self.certified_factors().unwrap();
                let parts: Vec<String> = fs.iter().map(|f| f.oracle().tier().to_string()).collect();
                format!("componentwise[{}]", parts.join(","))
            }
            o => o.tier().to_string(),
        }
    }

    /// True when every class key carries an exact identifier.
    pub fn has_exact_classes(&self) -> bool {
        match self.oracle() {
            Oracle::Invariants => false,
            Oracle::Product => self
                .certified_factors()
                .unwrap()
                .iter()
                .all(|f| !matches!(f.oracle(), Oracle::Invariants | Oracle::Product)),
            _ => true,
        }
    }

    fn component_id(&self, x: &Element) -> Option<ComponentId> {
        match self.oracle() {
            Oracle::SymAlt { support, alternating } => {
                let p = x.as_perm()?.restrict(support);
                let sign = if *alternating { p.alternating_class_sign() } else { None };
                Some(ComponentId::Cycle(p.cycle_type(), sign))
            }
            Oracle::Enumerated => {
                let (e, data) = self.class_data().ok()?;
                let idx = e.index_of(x)?;
                Some(ComponentId::Class(data.class_of[idx as usize]))
            }
            Oracle::Product | Oracle::Invariants => None,
        }
    }

    pub fn class_key(&self, x: &Element) -> ClassKey {
        let invariant = self.invariant(x);
        let exact = match self.oracle() {
            Oracle::Invariants => Vec::new(),
            Oracle::Product => {
                let factors = self.certified_factors().unwrap();
                factors.iter().enumerate().map(|(i, f)| f.component_id(&self.project(x, i))).collect()
            }
            _ => vec![self.component_id(x)],
        };
        ClassKey { invariant, exact }
    }

    pub fn are_conjugate(&self, a: &Element, b: &Element) -> Verdict {
        if a == b {
            return Verdict::pass("identical elements");
        }
        let (ka, kb) = (self.class_key(a), self.class_key(b));
        if ka.invariant != kb.invariant {
            return Verdict::fail(format!("invariants differ: {} vs {}", ka.invariant, kb.invariant));
        }
        let tier = self.oracle_tier();
        match ka.relation(&kb) {
            KeyRelation::Same => Verdict::pass(format!("same class ({tier})")),
            KeyRelation::Distinct => Verdict::fail(format!("different classes ({tier})")),
            KeyRelation::Unknown => Verdict::undetermined(&tier, "invariants agree, no exact class oracle"),
        }
    }

    /// Class keys of all nontrivial powers of `x`.
    pub fn power_class_set(&self, x: &Element) -> Vec<ClassKey> {
        let order = x.order();
        let mut keys = Vec::new();
        let mut p = x.clone();
        for _ in 1..order {
            keys.push(self.class_key(&p));
            p = p.op(x);
        }
        keys.sort();
        keys.dedup();
        keys
    }

    /// Order of the subgroup generated by `elements`, on the same kind as `self`.
    pub fn subgroup(&self, elements: &[Element]) -> Result<Group, GroupError> {
        let mut g = Group::new(elements.to_vec())?;
        g.budget = self.budget;
        if let Some(bs) = &self.blocks {
            g = g.with_blocks(bs.clone())?;
        }
        Ok(g)
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().ok().and_then(|o| o.to_u64())
    }
}

fn enumerate_closure(generators: &[Element], kind: ElementKind, budget: usize) -> Option<Enumeration> {
    let id = Element::identity(kind);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut k = 0;
    while k < elements.len() {
        for g in generators {
            let next = elements[k].op(g);
            if !index.contains_key(&next) {
                if elements.len() >= budget {
                    return None;
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
            }
        }
        k += 1;
    }
    Some(Enumeration { elements, index, classes: OnceLock::new() })
}

fn compute_classes(e: &Enumeration, generators: &[Element]) -> ClassData {
    let n = e.len();
    let inverses: Vec<Element> = generators.iter().map(Element::inverse).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        representatives.push(start as u32);
        class_of[start] = id;
        let mut queue = vec![start as u32];
        let mut k = 0;
        while k < queue.len() {
            let x = e.element(queue[k]).clone();
            k += 1;
            for (g, gi) in generators.iter().zip(&inverses) {
                let y = gi.op(&x).op(g);
                let j = e.index_of(&y).expect("closure is conjugation-invariant");
                if class_of[j as usize] == u32::MAX {
                    class_of[j as usize] = id;
                    queue.push(j);
                }
            }
        }
        sizes.push(queue.len());
    }
    ClassData { class_of, representatives, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Outcome;

    fn perm(s: &str, n: usize) -> Element {
        Element::Perm(Permutation::parse(s, n).unwrap())
    }

    fn group(gens: &[&str], n: usize) -> Group {
        Group::new(gens.iter().map(|s| perm(s, n)).collect()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(&["(1,2)", "(1,2,3)"], 3).order().unwrap(), BigUint::from(6u32));
        let m11 = group(&["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"], 11);
        assert_eq!(m11.order().unwrap(), BigUint::from(7920u32));
        assert_eq!(m11.enumeration().unwrap().len(), 7920);
    }

    #[test]
    fn enumeration_budget_is_exact() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        assert_eq!(a5.enumerate(60).unwrap().len(), 60);
        assert_eq!(a5.enumerate(59), Err(GroupError::BudgetExceeded(59)));
        let c5 = group(&["(1,2,3,4,5)"], 5);
        assert_eq!(c5.enumerate(100).unwrap().len(), 5);
    }

    #[test]
    fn membership() {
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        assert!(!a4.contains(&perm("(1,2)", 4)).unwrap());
        assert!(a4.contains(&perm("(1,2)(3,4)", 4)).unwrap());
    }

    #[test]
    fn class_sizes() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let sizes: Vec<usize> = s3.conjugacy_classes().unwrap().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let mut sizes: Vec<usize> = a5.conjugacy_classes().unwrap().iter().map(|c| c.size).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn split_five_cycles() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let v = a5.are_conjugate(&perm("(1,2,3,4,5)", 5), &perm("(1,3,5,2,4)", 5));
        assert_eq!(v.outcome, Outcome::Fail);
        let s5 = group(&["(1,2,3,4,5)", "(1,2)"], 5);
        let v = s5.are_conjugate(&perm("(1,2,3,4,5)", 5), &perm("(1,3,5,2,4)", 5));
        assert_eq!(v.outcome, Outcome::Pass);
        assert_eq!(s5.oracle_tier(), "symmetric/alternating");
    }

    #[test]
    fn product_tier_for_declared_blocks() {
        let g = group(&["(1,2,3,4,5)(6,7,8,9,10)", "(1,2,3)(6,7,8)", "(6,7,8,9,10)"], 10)
            .with_blocks(Group::consecutive_blocks(5, 2))
            .unwrap();
        assert_eq!(g.order().unwrap(), BigUint::from(3600u32));
        assert!(g.certified_factors().is_some());
        assert_eq!(g.oracle_tier(), "componentwise[symmetric/alternating,symmetric/alternating]");
        let x = perm("(1,2,3,4,5)(6,7,8,9,10)", 10);
        let keys = g.power_class_set(&x);
        // x and x^4 pair the same split classes, x^2 and x^3 the other pairs
        assert!(keys.iter().all(|k| k.invariant.order() == 5));
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn power_class_set_of_six_cycle() {
        let s7 = group(&["(1,2)", "(1,2,3,4,5,6,7)"], 7);
        let keys = s7.power_class_set(&perm("(1,2,3,4,5,6)", 7));
        let orders: Vec<u64> = keys.iter().map(|k| k.invariant.order()).collect();
        assert_eq!(orders.len(), 3);
        assert!(orders.contains(&6) && orders.contains(&3) && orders.contains(&2));
        assert!(s7.power_class_set(&Element::identity(s7.kind())).is_empty());
    }

    #[test]
    fn rejects_bad_blocks() {
        let g = group(&["(1,2)(3,4)"], 4);
        assert!(g.clone().with_blocks(vec![vec![1, 3], vec![2, 4]]).is_err());
        assert!(g.clone().with_blocks(vec![vec![1, 2]]).is_err());
        assert!(g.with_blocks(vec![vec![1, 2], vec![3, 4]]).is_ok());
    }
}
