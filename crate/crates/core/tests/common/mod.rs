//! Independent oracles shared by the integration tests. They use only
//! element arithmetic, never the library's class or orbit machinery.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use beauville_core::{Element, Group, Permutation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn perm(s: &str, n: usize) -> Element {
    Element::Perm(Permutation::parse(s, n).unwrap())
}

pub fn random_perm(n: usize, rng: &mut StdRng) -> Element {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Element::Perm(Permutation::from_images(&images).unwrap())
}

/// All elements of ⟨gens⟩ by breadth-first closure.
pub fn closure(gens: &[Element]) -> Vec<Element> {
    let id = gens[0].op(&gens[0].inverse());
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.op(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

/// Class index of every element, from explicit conjugation orbits.
pub fn brute_classes(elements: &[Element]) -> HashMap<Element, usize> {
    let mut class: HashMap<Element, usize> = HashMap::new();
    let mut next = 0;
    for x in elements {
        if class.contains_key(x) {
            continue;
        }
        for g in elements {
            class.insert(x.conjugate_by(g), next);
        }
        next += 1;
    }
    class
}

/// Brute-force Beauville test on an explicit element list: two generating
/// pairs whose Σ sets meet only in the identity.
pub fn naive_beauville(elements: &[Element]) -> bool {
    let n = elements.len();
    let classes = brute_classes(elements);
    let sigma = |x: &Element, y: &Element| -> Vec<usize> {
        let mut s: HashSet<usize> = HashSet::new();
        for z in [x.clone(), y.clone(), x.op(y)] {
            let o = z.order();
            for k in 1..o {
                s.insert(classes[&z.pow(k as i64)]);
            }
        }
        let mut v: Vec<usize> = s.into_iter().collect();
        v.sort_unstable();
        v
    };
    let mut sigmas: Vec<Vec<usize>> = Vec::new();
    for x in elements {
        for y in elements {
            if closure(&[x.clone(), y.clone()]).len() != n {
                continue;
            }
            let s = sigma(x, y);
            if sigmas.iter().any(|t| t.iter().all(|c| !s.contains(c))) {
                return true;
            }
            if !sigmas.contains(&s) {
                sigmas.push(s);
            }
        }
    }
    false
}

/// Groups of order at most 5000 used by the conjugacy oracle checks.
pub fn small_groups() -> Vec<(&'static str, Group)> {
    let g = |gens: Vec<Element>| Group::new(gens).unwrap();
    let a5 = || vec![perm("(1,2,3)", 5), perm("(1,2,3,4,5)", 5)];
    vec![
        ("S4", g(vec![perm("(1,2)", 4), perm("(1,2,3,4)", 4)])),
        ("A5", g(a5())),
        ("S5", g(vec![perm("(1,2)", 5), perm("(1,2,3,4,5)", 5)])),
        ("A6", g(vec![perm("(1,2,3)", 6), perm("(2,3,4,5,6)", 6)])),
        ("S6", g(vec![perm("(1,2)", 6), perm("(1,2,3,4,5,6)", 6)])),
        ("A7", g(vec![perm("(1,2,3)", 7), perm("(1,2,3,4,5,6,7)", 7)])),
        ("D10", g(vec![perm("(1,2,3,4,5)", 5), perm("(2,5)(3,4)", 5)])),
        ("PSL(2,7)", g(vec![perm("(1,2,3,4,5,6,7)", 7), perm("(2,3,5)(4,7,6)", 7), perm("(1,2)(3,6)", 7)])),
        ("Z5xZ5", g(vec![perm("(1,2,3,4,5)", 10), perm("(6,7,8,9,10)", 10)])),
        ("AGL(1,8)", g(vec![perm("(1,2,3,4,5,6,7)", 8), perm("(1,8)(2,4)(3,7)(5,6)", 8)])),
        (
            "A5xA5",
            g(vec![perm("(1,2,3)", 10), perm("(1,2,3,4,5)", 10), perm("(6,7,8)", 10), perm("(6,7,8,9,10)", 10)])
                .with_blocks(vec![(1..=5).collect(), (6..=10).collect()])
                .unwrap(),
        ),
    ]
}
