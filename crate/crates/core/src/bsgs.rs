//! Deterministic Schreier–Sims.
//!
//! Level `i` stores a base point `b`, the strong generators fixing all
//! earlier base points, and a transversal `u_β` with `b^{u_β} = β` for every
//! `β` in the orbit. New generators are added incrementally; every new
//! (orbit point, generator) pair yields a Schreier generator
//! `u_β · s · u_{β^s}⁻¹`, which is pushed one level down unless it already
//! sifts to the identity.

use num_bigint::BigUint;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            chain.extend(0, g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize + 1).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sift from `from`; returns the level where sifting stopped and the residue.
    fn sift(&self, from: usize, g: Permutation) -> (usize, Permutation) {
        let mut h = g;
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.raw()[level.base as usize] as usize;
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (i, h),
            }
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (stop, residue) = self.sift(0, g.clone());
        stop == self.levels.len() && residue.is_identity()
    }

    fn extend(&mut self, level: usize, g: Permutation) {
        let (stop, residue) = self.sift(level, g.clone());
        if stop == self.levels.len() && residue.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let base = (0..self.degree).find(|&p| g.raw()[p] as usize != p).expect("nonidentity") as u32;
            let mut transversal = vec![None; self.degree];
            transversal[base as usize] = Some(Permutation::identity(self.degree));
            self.levels.push(Level { base, gens: Vec::new(), transversal, orbit: vec![base] });
        }

        let lvl = &mut self.levels[level];
        lvl.gens.push(g);
        let newest = lvl.gens.len() - 1;
        let mut pairs: Vec<(u32, usize)> = lvl.orbit.iter().map(|&b| (b, newest)).collect();
        let mut k = 0;
        while k < pairs.len() {
            let (b, s) = pairs[k];
            k += 1;
            let img = lvl.gens[s].raw()[b as usize];
            if lvl.transversal[img as usize].is_none() {
                let u = lvl.transversal[b as usize].as_ref().unwrap().then(&lvl.gens[s]);
                lvl.transversal[img as usize] = Some(u);
                lvl.orbit.push(img);
                pairs.extend((0..lvl.gens.len()).map(|s2| (img, s2)));
            }
        }

        let schreier: Vec<Permutation> = pairs
            .iter()
            .map(|&(b, s)| {
                let lvl = &self.levels[level];
                let img = lvl.gens[s].raw()[b as usize] as usize;
                let ub = lvl.transversal[b as usize].as_ref().unwrap();
                let uimg = lvl.transversal[img].as_ref().unwrap();
                ub.then(&lvl.gens[s]).then(&uimg.inverse())
            })
            .filter(|h| !h.is_identity())
            .collect();
        for h in schreier {
            self.extend(level + 1, h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn small_orders() {
        let s3 = StabChain::new(3, &[p("(1,2)", 3), p("(1,2,3)", 3)]);
        assert_eq!(s3.order(), BigUint::from(6u32));
        let m11 = StabChain::new(11, &[p("(1,2,3,4,5,6,7,8,9,10,11)", 11), p("(3,7,11,8)(4,10,5,6)", 11)]);
        assert_eq!(m11.order(), BigUint::from(7920u32));
        let trivial = StabChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(trivial.order(), BigUint::from(1u32));
    }

    #[test]
    fn membership() {
        let a4 = StabChain::new(4, &[p("(1,2,3)", 4), p("(2,3,4)", 4)]);
        assert_eq!(a4.order(), BigUint::from(12u32));
        assert!(!a4.contains(&p("(1,2)", 4)));
        assert!(a4.contains(&p("(1,2)(3,4)", 4)));
        assert!(a4.contains(&Permutation::identity(4)));
    }

    #[test]
    fn symmetric_group_of_degree_ten() {
        let s10 = StabChain::new(10, &[p("(1,2)", 10), p("(1,2,3,4,5,6,7,8,9,10)", 10)]);
        assert_eq!(s10.order(), BigUint::from(3628800u32));
        assert_eq!(s10.base()[0], 1);
    }

    proptest::proptest! {
        #[test]
        fn words_in_generators_are_members(word in proptest::collection::vec(0usize..2, 0..40)) {
            let gens = [p("(1,2,3,4,5,6,7,8,9,10,11)", 11), p("(3,7,11,8)(4,10,5,6)", 11)];
            let chain = StabChain::new(11, &gens);
            let g = word.iter().fold(Permutation::identity(11), |acc, &i| acc.then(&gens[i]));
            proptest::prop_assert!(chain.contains(&g));
            proptest::prop_assert!(!chain.contains(&g.then(&p("(1,2)", 11))));
        }
    }
}
