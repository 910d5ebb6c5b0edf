//! Exhaustive searches over enumerable groups.
//!
//! Pairs are scanned with `x` over class representatives and `y` over all
//! elements, both in enumeration order. Each pair gets a fingerprint: the
//! bitset of class ids meeting Σ(x,y). Generating pairs are deduplicated by
//! fingerprint and the first two with disjoint fingerprints are returned.

use std::collections::HashSet;

use crate::group::{Enumeration, Group, GroupError};
use crate::perm::Permutation;
use crate::structure::{Automorphism, BeauvilleStructure, StronglyRealWitness};

/// Multiplication by element indices, tabulated for small groups.
struct IndexedGroup<'a> {
    e: &'a Enumeration,
    class_of: &'a [u32],
    n: usize,
    table: Option<Vec<u16>>,
}

const TABLE_LIMIT: usize = 4096;

impl<'a> IndexedGroup<'a> {
    fn new(group: &'a Group) -> Result<IndexedGroup<'a>, GroupError> {
        let (e, data) = group.class_data()?;
        let n = e.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    let p = e.element(a as u32).op(e.element(b as u32));
                    t[a * n + b] = e.index_of(&p).unwrap() as u16;
                }
            }
            t
        });
        Ok(IndexedGroup { e, class_of: &data.class_of, n, table })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.n + b as usize] as u32,
            None => {
                let p = self.e.element(a).op(self.e.element(b));
                self.e.index_of(&p).unwrap()
            }
        }
    }

    fn inverse(&self, a: u32) -> u32 {
        self.e.index_of(&self.e.element(a).inverse()).unwrap()
    }

    /// True when ⟨a,b⟩ is the whole group. A subgroup of more than half
    /// the elements is the whole group, which lets the closure stop early.
    fn generates(&self, a: u32, b: u32) -> bool {
        if self.n == 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = vec![0u32];
        let mut k = 0;
        while k < queue.len() {
            let c = queue[k];
            k += 1;
            for g in [a, b] {
                let d = self.mul(c, g);
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    queue.push(d);
                    if 2 * queue.len() > self.n {
                        return true;
                    }
                }
            }
        }
        queue.len() == self.n
    }

    fn power_classes(&self, classes: usize) -> Vec<Vec<u64>> {
        let words = classes.div_ceil(64);
        (0..self.n as u32)
            .map(|x| {
                let mut bits = vec![0u64; words];
                let mut p = x;
                while p != 0 {
                    let c = self.class_of[p as usize] as usize;
                    bits[c / 64] |= 1 << (c % 64);
                    p = self.mul(p, x);
                }
                bits
            })
            .collect()
    }
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn union3(a: &[u64], b: &[u64], c: &[u64]) -> Vec<u64> {
    a.iter().zip(b).zip(c).map(|((x, y), z)| x | y | z).collect()
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub structure: Option<BeauvilleStructure>,
    pub witness: Option<StronglyRealWitness>,
    pub pairs_examined: usize,
    /// Distinct Σ fingerprints among generating pairs.
    pub generating_fingerprints: usize,
    pub group_order: usize,
    pub classes: usize,
}

impl SearchOutcome {
    /// One-line account of the result, including the exhaustiveness certificate.
    pub fn summary(&self) -> String {
        match &self.structure {
            Some(s) => format!("structure of type {} found", s.structure_type()),
            None => format!(
                "no Beauville structure (exhaustive: {} pairs over {} classes, {} generating Σ-fingerprints, none disjoint)",
                self.pairs_examined, self.classes, self.generating_fingerprints
            ),
        }
    }
}

/// Qualifies a pair for the search; returns the conjugators for a witness.
type Filter<'f> = dyn FnMut(&IndexedGroup, u32, u32) -> Option<u32> + 'f;

/// Two qualifying pairs `(x, y, conjugator)` as enumeration indices.
type Hit = [(u32, u32, u32); 2];

fn scan(group: &Group, filter: &mut Filter) -> Result<(SearchOutcome, Option<Hit>), GroupError> {
    let ig = IndexedGroup::new(group)?;
    let (_, data) = group.class_data()?;
    let classes = data.representatives.len();
    let mut outcome = SearchOutcome {
        structure: None,
        witness: None,
        pairs_examined: 0,
        generating_fingerprints: 0,
        group_order: ig.n,
        classes,
    };
    if ig.n == 1 {
        return Ok((outcome, None));
    }
    let powers = ig.power_classes(classes);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut found: Vec<(Vec<u64>, u32, u32, u32)> = Vec::new();
    for &x in &data.representatives {
        for y in 0..ig.n as u32 {
            outcome.pairs_examined += 1;
            let xy = ig.mul(x, y);
            let fp = union3(&powers[x as usize], &powers[y as usize], &powers[xy as usize]);
            if seen.contains(&fp) || !ig.generates(x, y) {
                continue;
            }
            let Some(h) = filter(&ig, x, y) else { continue };
            if let Some((_, x0, y0, h0)) = found.iter().find(|(f, ..)| disjoint(f, &fp)) {
                outcome.generating_fingerprints = found.len() + 1;
                return Ok((outcome, Some([(*x0, *y0, *h0), (x, y, h)])));
            }
            seen.insert(fp.clone());
            found.push((fp, x, y, h));
        }
    }
    outcome.generating_fingerprints = found.len();
    Ok((outcome, None))
}

fn build(group: &Group, e: &Enumeration, hit: Hit) -> BeauvilleStructure {
    let pair = |(x, y, _): (u32, u32, u32)| (e.element(x).clone(), e.element(y).clone());
    BeauvilleStructure::new(group.clone(), pair(hit[0]), pair(hit[1]))
}

/// First Beauville structure in scan order, or an exhaustive NONE.
pub fn search_beauville(group: &Group) -> Result<SearchOutcome, GroupError> {
    let (mut outcome, hit) = scan(group, &mut |_, _, _| Some(0))?;
    if let Some(hit) = hit {
        let e = group.enumeration()?;
        outcome.structure = Some(build(group, &e, hit));
    }
    Ok(outcome)
}

/// Strongly real search over the inner automorphisms and the supplied
/// candidates, in that order. NONE is certified only relative to them.
pub fn search_strongly_real(group: &Group, candidates: &[Automorphism]) -> Result<SearchOutcome, GroupError> {
    let e = group.enumeration()?;
    let mut all = vec![Automorphism::OvergroupConjugation { tau: group.identity(), ambient: None }];
    all.extend(candidates.iter().cloned());
    let mut last = None;
    for auto in all {
        let (mut outcome, hit) = match &auto {
            Automorphism::AbelianInversion => {
                if !group.is_abelian() {
                    continue;
                }
                scan(group, &mut |_, _, _| Some(0))?
            }
            Automorphism::OvergroupConjugation { tau, .. } => {
                let phi: Vec<u32> = e
                    .elements()
                    .iter()
                    .map(|x| e.index_of(&x.conjugate_by(tau)))
                    .collect::<Option<_>>()
                    .ok_or(GroupError::ForeignElement)?;
                scan(group, &mut |ig, x, y| inverting_conjugator(ig, &phi, x, y))?
            }
        };
        if let Some(hit) = hit {
            let s = build(group, &e, hit);
            let gi = |h: u32| Some(e.element(h).inverse());
            outcome.witness = Some(StronglyRealWitness { automorphism: auto, g1: gi(hit[0].2), g2: gi(hit[1].2) });
            outcome.structure = Some(s);
            return Ok(outcome);
        }
        last = Some(outcome);
    }
    Ok(last.expect("inner automorphisms are always scanned"))
}

/// Some h with φ(x)^h = x⁻¹ and φ(y)^h = y⁻¹, where φ is given on indices.
fn inverting_conjugator(ig: &IndexedGroup, phi: &[u32], x: u32, y: u32) -> Option<u32> {
    let (px, py) = (phi[x as usize], phi[y as usize]);
    let (xi, yi) = (ig.inverse(x), ig.inverse(y));
    if ig.class_of[px as usize] != ig.class_of[xi as usize] || ig.class_of[py as usize] != ig.class_of[yi as usize] {
        return None;
    }
    (0..ig.n as u32).find(|&h| {
        let hi = ig.inverse(h);
        ig.mul(ig.mul(hi, px), h) == xi && ig.mul(ig.mul(hi, py), h) == yi
    })
}

/// Permutations `k` of the same degree with `x^k = x⁻¹` for every given
/// `x`, in lexicographic order of their image lists, up to `limit` results.
///
/// The constraint `k(x(i)) = x⁻¹(k(i))` fixes `k` on a whole orbit of
/// ⟨elements⟩ once one image is chosen, so the search branches once per orbit.
pub fn inverting_permutations(
    elements: &[Permutation],
    limit: usize,
    accept: &mut dyn FnMut(&Permutation) -> bool,
) -> Vec<Permutation> {
    let n = elements[0].degree();
    let fwd: Vec<Vec<usize>> = elements.iter().map(|x| x.images().iter().map(|v| v - 1).collect()).collect();
    let inv: Vec<Vec<usize>> = elements.iter().map(|x| x.inverse().images().iter().map(|v| v - 1).collect()).collect();
    let mut k = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    backtrack(&fwd, &inv, &mut k, &mut used, limit, accept, &mut out);
    out
}

fn backtrack(
    fwd: &[Vec<usize>],
    inv: &[Vec<usize>],
    k: &mut Vec<usize>,
    used: &mut Vec<bool>,
    limit: usize,
    accept: &mut dyn FnMut(&Permutation) -> bool,
    out: &mut Vec<Permutation>,
) {
    if out.len() >= limit {
        return;
    }
    let Some(p) = k.iter().position(|&v| v == usize::MAX) else {
        let perm = Permutation::from_images(&k.iter().map(|v| v + 1).collect::<Vec<_>>()).unwrap();
        if accept(&perm) {
            out.push(perm);
        }
        return;
    };
    for img in 0..k.len() {
        if used[img] {
            continue;
        }
        let (saved_k, saved_used) = (k.clone(), used.clone());
        if propagate(fwd, inv, k, used, p, img) {
            backtrack(fwd, inv, k, used, limit, accept, out);
        }
        *k = saved_k;
        *used = saved_used;
        if out.len() >= limit {
            return;
        }
    }
}

fn propagate(fwd: &[Vec<usize>], inv: &[Vec<usize>], k: &mut [usize], used: &mut [bool], p: usize, img: usize) -> bool {
    let mut stack = vec![(p, img)];
    while let Some((a, b)) = stack.pop() {
        if k[a] != usize::MAX {
            if k[a] != b {
                return false;
            }
            continue;
        }
        if used[b] {
            return false;
        }
        k[a] = b;
        used[b] = true;
        for (f, g) in fwd.iter().zip(inv) {
            // k(x(a)) = x⁻¹(k(a)) and k(x⁻¹(a)) = x(k(a))
            stack.push((f[a], g[b]));
            stack.push((g[a], f[b]));
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::structure::{verify_strongly_real, verify_structure};

    fn perm(s: &str, n: usize) -> Element {
        Element::Perm(Permutation::parse(s, n).unwrap())
    }

    fn cyclic_square(n: usize) -> Group {
        let a: String = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        let b: String = format!("({})", (n + 1..=2 * n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        Group::new(vec![perm(&a, 2 * n), perm(&b, 2 * n)])
            .unwrap()
            .with_blocks(Group::consecutive_blocks(n, 2))
            .unwrap()
    }

    #[test]
    fn a5_is_not_beauville() {
        let a5 = Group::new(vec![perm("(1,2,3,4,5)", 5), perm("(1,2,3)", 5)]).unwrap();
        let r = search_beauville(&a5).unwrap();
        assert!(r.structure.is_none());
        assert_eq!(r.pairs_examined, 5 * 60);
        assert!(r.summary().starts_with("no Beauville structure"));
    }

    #[test]
    fn z5_squared_is_beauville() {
        let g = cyclic_square(5);
        let r = search_beauville(&g).unwrap();
        let s = r.structure.expect("structure on Z5 x Z5");
        assert!(verify_structure(&s).overall.is_pass());
        let sr = search_strongly_real(&g, &[Automorphism::AbelianInversion]).unwrap();
        let (s, w) = (sr.structure.unwrap(), sr.witness.unwrap());
        assert!(verify_strongly_real(&s, &w).verdict.is_pass());
    }

    #[test]
    fn small_non_examples() {
        assert!(search_beauville(&cyclic_square(2)).unwrap().structure.is_none());
        let s3 = Group::new(vec![perm("(1,2)", 3), perm("(1,2,3)", 3)]).unwrap();
        assert!(search_beauville(&s3).unwrap().structure.is_none());
        assert!(search_strongly_real(&s3, &[]).unwrap().structure.is_none());
        let trivial = Group::new(vec![Element::identity(s3.kind())]).unwrap();
        assert!(search_beauville(&trivial).unwrap().structure.is_none());
    }

    #[test]
    fn inverting_five_cycle() {
        let x = Permutation::parse("(1,2,3,4,5)", 5).unwrap();
        let all = inverting_permutations(std::slice::from_ref(&x), 100, &mut |_| true);
        // the inverting elements form a coset of the centralizer, of size 5
        assert_eq!(all.len(), 5);
        for k in &all {
            assert_eq!(x.conjugate(k), x.inverse());
        }
    }
}
