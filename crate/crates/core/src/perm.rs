//! Permutations of `{1..n}` with cycle-notation I/O.
//!
//! Products act left to right: `p.compose(&q)` sends `i` to `q(p(i))`, and
//! conjugation is `x^g = g⁻¹ x g`. Every other module (word evaluation,
//! stabilizer chains, conjugacy) relies on this single convention.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("point {point} is outside 1..={degree} (position {pos})")]
    OutOfRange { point: usize, degree: usize, pos: usize },
    #[error("point {point} appears twice (position {pos})")]
    Repeated { point: usize, pos: usize },
    #[error("malformed cycle notation at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list of length {0} is not a bijection")]
    NotBijection(usize),
    #[error("permutation degree must be positive")]
    ZeroDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Multiset of nontrivial cycle lengths, sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    pub lengths: Vec<usize>,
    pub degree: usize,
}

impl CycleType {
    pub fn order(&self) -> u64 {
        self.lengths.iter().fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }

    pub fn parity(&self) -> Parity {
        if self.lengths.iter().map(|l| l - 1).sum::<usize>() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// True when the `S_n`-class of this type splits into two `A_n`-classes.
    pub fn splits_in_alternating(&self) -> bool {
        let moved: usize = self.lengths.iter().sum();
        let fixed = self.degree - moved;
        let mut all: Vec<usize> = self.lengths.clone();
        all.extend(std::iter::repeat_n(1, fixed));
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        all.iter().all(|l| l % 2 == 1) && sorted.len() == all.len() && self.degree > 1
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermInvariants {
    pub order: u64,
    pub cycle_type: CycleType,
    pub parity: Parity,
    pub support: Vec<usize>,
}

/// A bijection of `{1..n}`. Stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Permutation, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(PermError::NotBijection(n));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    /// Product of disjoint cycles given with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::OutOfRange { point: p, degree, pos: i });
                }
                if used[p - 1] {
                    return Err(PermError::Repeated { point: p, pos: i });
                }
                used[p - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `(1,2,3)(4,5)`; whitespace is ignored, `""` and `"()"` give the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c != '(' {
                return Err(PermError::Syntax { pos, msg: format!("expected '(' but found '{c}'") });
            }
            i += 1;
            let mut cycle: Vec<usize> = Vec::new();
            if i < chars.len() && chars[i].1 == ')' {
                i += 1;
                continue;
            }
            loop {
                let start = i;
                let mut value: usize = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1.to_digit(10).unwrap() as usize))
                        .ok_or(PermError::Syntax { pos: chars[start].0, msg: "integer overflow".into() })?;
                    i += 1;
                }
                if i == start {
                    let pos = chars.get(i).map(|c| c.0).unwrap_or(text.len());
                    return Err(PermError::Syntax { pos, msg: "expected a point".into() });
                }
                let ppos = chars[start].0;
                if value == 0 || value > degree {
                    return Err(PermError::OutOfRange { point: value, degree, pos: ppos });
                }
                if used[value - 1] {
                    return Err(PermError::Repeated { point: value, pos: ppos });
                }
                used[value - 1] = true;
                cycle.push(value);
                match chars.get(i) {
                    Some((_, ',')) => i += 1,
                    Some((_, ')')) => {
                        i += 1;
                        break;
                    }
                    Some(&(pos, c)) => return Err(PermError::Syntax { pos, msg: format!("unexpected '{c}'") }),
                    None => return Err(PermError::Syntax { pos: text.len(), msg: "unterminated cycle".into() }),
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Whitespace-separated 1-based image list, e.g. `"2 1 3"`.
    pub fn parse_image_list(text: &str) -> Result<Permutation, PermError> {
        let mut images = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let v: usize =
                tok.parse().map_err(|_| PermError::Syntax { pos, msg: format!("'{tok}' is not an integer") })?;
            images.push(v);
        }
        Permutation::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; panics on degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let n = self.degree();
        let order = self.order() as i64;
        let e = k.rem_euclid(order.max(1)) as usize;
        if e == 0 {
            return Permutation::identity(n);
        }
        // Walk each cycle e steps.
        let mut images = vec![0u32; n];
        for cycle in self.raw_cycles(true) {
            let len = cycle.len();
            for (idx, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(idx + e) % len];
            }
        }
        Permutation { images }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ x g)(g(i)) = g(x(i))
        let mut images = vec![0u32; self.degree()];
        for (i, &xi) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[xi as usize];
        }
        Permutation { images }
    }

    fn raw_cycles(&self, include_fixed: bool) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            if include_fixed || cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Nontrivial cycles in canonical form (least point first, sorted by least point), 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.raw_cycles(false).into_iter().map(|c| c.into_iter().map(|p| p as usize + 1).collect()).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.raw_cycles(false).iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths, degree: self.degree() }
    }

    /// Cycle type of the restriction to `block` (1-based points; the block must be invariant).
    pub fn cycle_type_on(&self, block: &[usize]) -> CycleType {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for &b in block {
            let start = b - 1;
            if seen[start] {
                continue;
            }
            let mut len = 1;
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            if len > 1 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths, degree: block.len() }
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().order()
    }

    pub fn parity(&self) -> Parity {
        self.cycle_type().parity()
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| self.image(p) != p).collect()
    }

    pub fn invariants(&self) -> PermInvariants {
        let cycle_type = self.cycle_type();
        PermInvariants { order: cycle_type.order(), parity: cycle_type.parity(), support: self.support(), cycle_type }
    }

    /// Restriction to an invariant block, relabelled so that `block[i]` becomes `i+1`.
    pub fn restrict(&self, block: &[usize]) -> Permutation {
        let mut index = vec![u32::MAX; self.degree()];
        for (i, &b) in block.iter().enumerate() {
            index[b - 1] = i as u32;
        }
        let images = block
            .iter()
            .map(|&b| {
                let img = index[self.images[b - 1] as usize];
                assert!(img != u32::MAX, "block is not invariant under permutation");
                img
            })
            .collect();
        Permutation { images }
    }

    /// For a class that splits in the alternating group, the parity of an
    /// `S_n` conjugator from the canonical representative of the cycle type
    /// to `self`: `Some(true)` for even. `None` when the class does not split.
    ///
    /// The canonical representative lists cycles by decreasing length on
    /// consecutive points. Any two conjugators differ by a centralizing
    /// element, which is even exactly when the class splits.
    pub fn alternating_class_sign(&self) -> Option<bool> {
        if !self.cycle_type().splits_in_alternating() {
            return None;
        }
        let mut cycles = self.raw_cycles(true);
        // lengths are distinct, so this order is canonical
        cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut conj = vec![0u32; self.degree()];
        let mut next = 0usize;
        for c in &cycles {
            for &p in c {
                conj[next] = p;
                next += 1;
            }
        }
        Some(Permutation { images: conj }.parity() == Parity::Even)
    }

    /// True if every point of `block` is mapped into `block`.
    pub fn preserves(&self, block: &[usize]) -> bool {
        let mut inside = vec![false; self.degree()];
        for &b in block {
            if b == 0 || b > self.degree() {
                return false;
            }
            inside[b - 1] = true;
        }
        block.iter().all(|&b| inside[self.images[b - 1] as usize])
    }

    /// Places `parts[i]` on the points `offsets[i]+1 ..= offsets[i]+deg(parts[i])`.
    pub fn direct_sum(parts: &[&Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0u32;
        for p in parts {
            images.extend(p.images.iter().map(|&v| v + offset));
            offset += p.degree() as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// Parses `"<degree>:<cycles>"`, the compact form used in debug output.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (deg, cycles) =
            s.split_once(':').ok_or(PermError::Syntax { pos: 0, msg: "expected '<degree>:<cycles>'".into() })?;
        let degree = deg.trim().parse().map_err(|_| PermError::Syntax { pos: 0, msg: "bad degree".into() })?;
        Permutation::parse(cycles, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parse_three_cycle() {
        let x = p("(1,2,3)", 5);
        assert_eq!(x.images(), vec![2, 3, 1, 4, 5]);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
        assert!(p("  ( ) ", 4).is_identity());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(Permutation::parse("(1,2)(1,3)", 3), Err(PermError::Repeated { point: 1, pos: 6 }));
        assert_eq!(Permutation::parse("(1,7)", 5), Err(PermError::OutOfRange { point: 7, degree: 5, pos: 3 }));
        assert!(matches!(Permutation::parse("(1,2", 5), Err(PermError::Syntax { pos: 4, .. })));
        assert!(matches!(Permutation::parse("(1,,2)", 5), Err(PermError::Syntax { pos: 3, .. })));
        assert!(matches!(Permutation::parse("1,2)", 5), Err(PermError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn compose_left_to_right() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1,3,2)", 3));
        assert_eq!(p("(1,2,3)", 3).compose(&Permutation::identity(3)).unwrap(), p("(1,2,3)", 3));
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(a.compose(&Permutation::identity(4)), Err(PermError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn powers() {
        assert_eq!(p("(1,2,3,4,5)", 5).power(-1), p("(1,5,4,3,2)", 5));
        assert!(p("(1,2,3)", 3).power(3).is_identity());
        assert_eq!(p("(1,2,3,4,5)(6,7,8)", 8).power(5), p("(6,8,7)", 8));
        assert!(p("(1,2)", 2).power(0).is_identity());
    }

    #[test]
    fn invariants_examples() {
        let inv = p("(1,2,3,4,5)(6,7,8)", 8).invariants();
        assert_eq!(inv.order, 15);
        assert_eq!(inv.cycle_type.lengths, vec![5, 3]);
        assert_eq!(inv.parity, Parity::Even);

        let id = Permutation::identity(10).invariants();
        assert_eq!(id.order, 1);
        assert!(id.cycle_type.lengths.is_empty());
        assert_eq!(id.parity, Parity::Even);
        assert!(id.support.is_empty());

        let inv = p("(1,2)(3,4)(5,6)(7,8)", 8).invariants();
        assert_eq!(inv.order, 2);
        assert_eq!(inv.cycle_type.lengths, vec![2, 2, 2, 2]);
        assert_eq!(inv.parity, Parity::Even);
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("(5,3)(4,2,1)", 6).to_string(), "(1,4,2)(3,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = p("(1,2,3)(4,5)", 6);
        let g = p("(1,6,2)(3,4)", 6);
        assert_eq!(x.conjugate(&g), g.inverse().then(&x).then(&g));
    }

    #[test]
    fn split_rule() {
        let ct = p("(1,2,3,4,5)", 5).cycle_type();
        assert!(ct.splits_in_alternating());
        assert!(!p("(1,2,3)", 5).cycle_type().splits_in_alternating());
        assert!(p("(1,2,3)", 4).cycle_type().splits_in_alternating());
        assert!(!p("(1,2)(3,4)", 4).cycle_type().splits_in_alternating());
    }

    #[test]
    fn restrict_relabels() {
        let x = p("(1,2)(3,5,4)", 5);
        assert_eq!(x.restrict(&[3, 4, 5]), p("(1,3,2)", 3));
        assert!(x.preserves(&[1, 2]));
        assert!(!x.preserves(&[1, 3]));
    }

    fn arb_perm(n: usize) -> impl proptest::strategy::Strategy<Value = Permutation> {
        use proptest::prelude::*;
        Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest::proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            proptest::prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            proptest::prop_assert!(a.then(&a.inverse()).is_identity());
            proptest::prop_assert_eq!(a.power(-3), a.inverse().power(3));
            proptest::prop_assert!(a.power(a.order() as i64).is_identity());
        }

        #[test]
        fn printing_round_trips(a in arb_perm(12)) {
            proptest::prop_assert_eq!(Permutation::parse(&a.to_string(), 12).unwrap(), a.clone());
            let images: Vec<String> = a.images().iter().map(|i| i.to_string()).collect();
            proptest::prop_assert_eq!(Permutation::parse_image_list(&images.join(" ")).unwrap(), a);
        }

        #[test]
        fn conjugation_keeps_cycle_type(a in arb_perm(10), g in arb_perm(10)) {
            let b = a.conjugate(&g);
            proptest::prop_assert_eq!(b.cycle_type(), a.cycle_type());
            proptest::prop_assert_eq!(b, g.inverse().then(&a).then(&g));
        }
    }
}
