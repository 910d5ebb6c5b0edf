//! One line per acceptance criterion. Criteria that are known not to hold
//! for the printed data are listed in `KNOWN_FAILING`; the test fails if any
//! other criterion fails, or if a listed one starts passing.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use beauville_core::atlas::{load_generators, table_row, table_structure, BracketMode};
use beauville_core::constructions::{
    alt_coprime_structure, alt_power_structure, cyclic_square, mathieu_double, product_double, suzuki_structure,
    sym_double_structure, Construction, MathieuGroup,
};
use beauville_core::search::search_beauville;
use beauville_core::structure::{surface_invariants, verify_strongly_real, StronglyRealWitness, StructureType};
use beauville_core::{Element, Group, Outcome};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;

use common::*;

/// The printed special cases of the S_n×S_n family do not verify.
const KNOWN_FAILING: &[u32] = &[5];

enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Status;

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn status(r: Result<String, String>) -> Status {
    match r {
        Ok(s) => Status::Pass(s),
        Err(s) => Status::Fail(s),
    }
}

fn a5() -> Group {
    Group::new(vec![perm("(1,2,3)", 5), perm("(1,2,3,4,5)", 5)]).unwrap()
}

fn emitted_ok(c: &Construction) -> bool {
    c.emitted().verified()
}

fn criterion_1() -> Status {
    status((|| {
        let out = search_beauville(&a5()).map_err(|e| e.to_string())?;
        ensure(out.structure.is_none(), "search found a structure on A5")?;
        let s = out.summary();
        ensure(s.contains("exhaustive"), format!("no certificate: {s}"))?;
        Ok(s)
    })())
}

fn criterion_2() -> Status {
    status((|| {
        for n in [5usize, 7, 11, 13, 25] {
            let g = cyclic_square(n).map_err(|e| e.to_string())?;
            let out = search_beauville(&g).map_err(|e| e.to_string())?;
            let s = out.structure.ok_or(format!("n={n}: no structure found"))?;
            let r = verify_strongly_real(&s, &StronglyRealWitness::inversion());
            ensure(r.verdict.is_pass(), format!("n={n}: inversion witness {}", r.verdict))?;
        }
        for n in [2usize, 3, 4, 6, 8, 9, 12] {
            let g = cyclic_square(n).map_err(|e| e.to_string())?;
            let out = search_beauville(&g).map_err(|e| e.to_string())?;
            ensure(out.structure.is_none(), format!("n={n}: unexpected structure"))?;
        }
        Ok("found for 5,7,11,13,25; NONE for 2,3,4,6,8,9,12".into())
    })())
}

fn criterion_3() -> Status {
    status((|| {
        let m23 = BigUint::from(10_200_960u64);
        let cases = [
            (MathieuGroup::A5, "5,6,5,15,10,15", BigUint::from(3600u32)),
            (MathieuGroup::M11, "11,11,11,8,8,8", BigUint::from(7920u32) * 7920u32),
            (MathieuGroup::M23, "23,23,23,11,11,11", &m23 * &m23),
        ];
        ensure(cases[1].2 == BigUint::from(62_726_400u32), "M11 order cross-check")?;
        for (g, t, order) in cases {
            let c = mathieu_double(g).map_err(|e| e.to_string())?;
            ensure(c.printed_verified(), format!("{}: {:?}", g.name(), c.discrepancies))?;
            let s = &c.printed.structure;
            ensure(
                s.structure_type() == StructureType::parse(t)?,
                format!("{}: type {}", g.name(), s.structure_type()),
            )?;
            let chain = s.group.stab_chain().ok_or("no stabilizer chain")?;
            ensure(chain.order() == order, format!("{}: order {}", g.name(), chain.order()))?;
            let strong = c.printed.strong.as_ref().unwrap();
            ensure(strong.equations.iter().all(|&b| b), format!("{}: a does not invert all four", g.name()))?;
        }
        Ok("A5xA5, M11xM11, M23xM23 verify with the printed types and orders".into())
    })())
}

fn criterion_4() -> Status {
    status((|| {
        let c = suzuki_structure(3).map_err(|e| e.to_string())?;
        ensure(c.printed_verified(), format!("q=8: {:?}", c.discrepancies))?;
        let r = c.printed.report.as_ref().unwrap();
        ensure(r.order == Some(BigUint::from(29120u32)), format!("q=8: order {:?}", r.order))?;
        let [[a1, b1, c1], [a2, b2, c2]] = r.structure_type.0;
        ensure([a1, b1, c1] == [7, 7, 7] && c2 == 2, format!("q=8: type {}", r.structure_type))?;
        ensure([a2, b2].iter().all(|o| [5, 13].contains(o)), format!("q=8: type {}", r.structure_type))?;
        ensure(c.printed.strong.as_ref().unwrap().equations.iter().all(|&b| b), "q=8: t1 does not invert all four")?;
        let cp = |e: &Element| e.as_matrix().unwrap().char_poly();
        let (x1, y1) = &c.printed.structure.pairs[0];
        ensure(cp(x1) == cp(y1), "q=8: x1 and y1 have different characteristic polynomials")?;
        let small = r.structure_type;

        let c = suzuki_structure(5).map_err(|e| e.to_string())?;
        let e = c.emitted();
        ensure(e.verified(), format!("q=32: {:?}", e.notes))?;
        let r = e.report.as_ref().unwrap();
        let [[a1, b1, c1], [a2, b2, c2]] = r.structure_type.0;
        ensure([a1, b1, c1] == [31, 31, 31] && c2 == 2, format!("q=32: type {}", r.structure_type))?;
        ensure([a2, b2].iter().all(|o| 25 % o == 0 || 41 % o == 0), format!("q=32: type {}", r.structure_type))?;
        let (x1, y1) = &e.structure.pairs[0];
        ensure(cp(x1) == cp(y1), "q=32: characteristic polynomials differ")?;
        ensure(e.strong.as_ref().unwrap().equations.iter().all(|&b| b), "q=32: t1 does not invert all four")?;
        ensure(r.generation.iter().all(|v| v.reason.contains("closure skipped")), "q=32: generation not structural")?;
        let mut msg = format!("q=8 {small} order 29120; q=32 {} structural", r.structure_type);
        if !c.printed_verified() {
            msg.push_str(&format!(" (exponent-2^(n+1) form; printed form: {})", c.discrepancies.join("; ")));
        }
        Ok(msg)
    })())
}

fn criterion_5() -> Status {
    let mut failing = Vec::new();
    let mut derived_ok = true;
    for n in 5..=10 {
        match sym_double_structure(n) {
            Ok(c) if c.printed_verified() => {}
            Ok(c) => {
                derived_ok &= c.derived.as_ref().is_some_and(|d| d.verified());
                failing.push(format!("n={n}: {}", c.discrepancies.join("; ")));
            }
            Err(e) => failing.push(format!("n={n}: {e}")),
        }
    }
    if failing.is_empty() {
        Status::Pass("printed data verifies for n=5..10".into())
    } else {
        let d = if derived_ok { "derived replacements verify" } else { "derived replacements also fail" };
        Status::Fail(format!("{}; {d}", failing.join(" | ")))
    }
}

fn criterion_6() -> Status {
    status((|| {
        let mut report = Vec::new();
        for (n, k) in [(11, 1), (11, 2), (13, 2), (12, 1)] {
            let c = alt_power_structure(n, k).map_err(|e| format!("({n},{k}): {e}"))?;
            if c.printed_verified() {
                report.push(format!("({n},{k}) verifies"));
            } else {
                ensure(!c.discrepancies.is_empty(), "failure without a discrepancy report")?;
                let d = if c.derived.as_ref().is_some_and(|d| d.verified()) { ", derived verifies" } else { "" };
                report.push(format!("({n},{k}) discrepancy reported{d}"));
            }
        }
        for r in [6u64, 12] {
            let c = alt_coprime_structure(r as usize).map_err(|e| e.to_string())?;
            ensure(c.printed_verified(), format!("r={r}: {:?}", c.discrepancies))?;
            let rep = c.printed.report.as_ref().unwrap();
            let want = StructureType([[r * r - 1, r + 1, r + 1], [2 * r - 1, 2 * r - 1, 3]]);
            ensure(rep.coprime && rep.structure_type == want, format!("r={r}: type {}", rep.structure_type))?;
            report.push(format!("r={r} {}", rep.structure_type));
        }
        Ok(report.join(", "))
    })())
}

fn criterion_7() -> Status {
    status((|| {
        let bases =
            [alt_coprime_structure(6).map_err(|e| e.to_string())?, suzuki_structure(3).map_err(|e| e.to_string())?];
        let mut out = Vec::new();
        for b in &bases {
            let p = product_double(b).map_err(|e| e.to_string())?;
            ensure(emitted_ok(&p), format!("{}: {:?}", b.request, p.discrepancies))?;
            ensure(p.emitted().strong.as_ref().unwrap().verdict.is_pass(), "diagonal witness failed")?;
            out.push(format!("{} {}", b.request, p.emitted().structure.structure_type()));
        }
        Ok(out.join(", "))
    })())
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

fn criterion_8() -> Status {
    status((|| {
        let t = StructureType::parse("5,6,5,15,10,15")?;
        let inv = surface_invariants(&BigUint::from(3600u32), &t);
        let int = |n: i64| BigRational::from_integer(n.into());
        ensure(
            (inv.g1.clone(), inv.g2.clone(), inv.euler.clone(), inv.chi.clone())
                == (int(781), int(1381), int(1196), int(299)),
            format!("got g1={} g2={} e={} chi={}", inv.g1, inv.g2, inv.euler, inv.chi),
        )?;
        // χ = |G|/4 · (1 − Σ1/aᵢ)(1 − Σ1/bᵢ), evaluated independently of the genera
        let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
        let types = (prop::array::uniform3(2u64..40), prop::array::uniform3(2u64..40), 1u64..20);
        runner
            .run(&types, |(a, b, k)| {
                let n = a.iter().chain(&b).fold(1, |acc, &x| lcm(acc, x)) * k;
                let t = StructureType([a, b]);
                let inv = surface_invariants(&BigUint::from(n), &t);
                let bracket = |t: [u64; 3]| {
                    t.iter().fold(BigRational::one(), |acc, &o| acc - BigRational::new(1.into(), (o as i64).into()))
                };
                let chi = BigRational::new((n as i64).into(), 4.into()) * bracket(a) * bracket(b);
                prop_assert_eq!(&inv.euler, &(int(4) * &inv.chi));
                prop_assert_eq!(&inv.chi, &chi);
                Ok(())
            })
            .map_err(|e| e.to_string())?;
        Ok("(781,1381,1196,299); e=4χ on 1000 random types".into())
    })())
}

fn criterion_9() -> Status {
    status((|| {
        let mut rng = rng(9);
        for i in 0..30 {
            let k = rng.gen_range(1..=3);
            let gens: Vec<Element> = (0..k).map(|_| random_perm(8, &mut rng)).collect();
            let g = Group::new(gens.clone()).map_err(|e| e.to_string())?;
            let n = closure(&gens).len();
            let order = g.order().map_err(|e| e.to_string())?;
            ensure(order == BigUint::from(n), format!("sample {i}: chain {order}, enumeration {n}"))?;
        }
        let mut pairs = 0usize;
        for (name, g) in small_groups() {
            let elements = closure(g.generators());
            ensure(elements.len() <= 5000, format!("{name} is too large"))?;
            let classes = brute_classes(&elements);
            for _ in 0..10_000 {
                let a = &elements[rng.gen_range(0..elements.len())];
                let b = if rng.gen_bool(0.5) {
                    a.conjugate_by(&elements[rng.gen_range(0..elements.len())])
                } else {
                    elements[rng.gen_range(0..elements.len())].clone()
                };
                let v = g.are_conjugate(a, &b);
                ensure(v.outcome != Outcome::Undetermined, format!("{name}: UNDETERMINED {v}"))?;
                ensure(v.is_pass() == (classes[a] == classes[&b]), format!("{name}: {a:?} ~ {b:?} reported {v}"))?;
                pairs += 1;
            }
        }
        Ok(format!("30 S8 subgroups; {pairs} conjugacy pairs over {} groups agree", small_groups().len()))
    })())
}

fn atlas_dir() -> PathBuf {
    std::env::var_os("BEAUVILLE_ATLAS_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/atlas"))
}

fn find_gens(group: &str) -> Option<PathBuf> {
    let dir = atlas_dir();
    let stem = group.replace(':', ".");
    ["", ".txt", ".gens"].iter().map(|ext| dir.join(format!("{stem}{ext}"))).find(|p| p.is_file())
}

fn criterion_10() -> Status {
    let groups = ["M12:2", "M22:2", "J2:2", "HS:2"];
    let files: Vec<Option<PathBuf>> = groups.iter().map(|g| find_gens(g)).collect();
    if files.iter().any(Option::is_none) {
        let missing: Vec<&str> = groups.iter().zip(&files).filter(|(_, f)| f.is_none()).map(|(g, _)| *g).collect();
        return Status::Skip(format!(
            "standard generators not found for {} in {} (set BEAUVILLE_ATLAS_DIR)",
            missing.join(", "),
            atlas_dir().display()
        ));
    }
    status((|| {
        for (g, f) in groups.iter().zip(files) {
            let text = std::fs::read_to_string(f.unwrap()).map_err(|e| e.to_string())?;
            let (c, d) = load_generators(&text).map_err(|e| e.to_string())?;
            let row = table_row(g).map_err(|e| e.to_string())?;
            let out = table_structure(row, &c.into(), &d.into(), BracketMode::Commutator).map_err(|e| e.to_string())?;
            ensure(out.discrepancies().is_empty(), format!("{g}: {}", out.discrepancies().join("; ")))?;
            let r = verify_strongly_real(&out.structure, &out.witness);
            ensure(r.equations.iter().all(|&b| b), format!("{g}: t1 does not invert all four"))?;
            ensure(r.structure_verified, format!("{g}: structure does not verify"))?;
        }
        Ok("M12:2, M22:2, J2:2, HS:2 reproduce their tabulated types".into())
    })())
}

#[test]
fn acceptance() {
    let checks: [(u32, &str, Check, Duration); 10] = [
        (1, "A5 is not Beauville", criterion_1, Duration::from_secs(10)),
        (2, "abelian classification", criterion_2, Duration::from_secs(120)),
        (3, "Mathieu golden structures", criterion_3, Duration::from_secs(60)),
        (4, "Suzuki q=8 and q=32", criterion_4, Duration::from_secs(120)),
        (5, "S_n x S_n, n=5..10", criterion_5, Duration::from_secs(120)),
        (6, "alternating families", criterion_6, Duration::from_secs(180)),
        (7, "product lift", criterion_7, Duration::from_secs(180)),
        (8, "surface invariants", criterion_8, Duration::from_secs(60)),
        (9, "oracle equivalence", criterion_9, Duration::from_secs(600)),
        (10, "sporadic table reproduction", criterion_10, Duration::from_secs(600)),
    ];
    let mut failing = Vec::new();
    for (n, name, check, budget) in checks {
        let start = Instant::now();
        let s = check();
        let t = start.elapsed();
        let over = if t > budget { format!(" over budget of {budget:?}") } else { String::new() };
        let (tag, detail) = match &s {
            Status::Pass(d) => ("PASS", d),
            Status::Fail(d) => ("FAIL", d),
            Status::Skip(d) => ("SKIP", d),
        };
        println!("criterion {n:>2} {tag} [{t:.1?}{over}] {name}: {detail}");
        if matches!(s, Status::Fail(_)) {
            failing.push(n);
        }
    }
    assert_eq!(failing, KNOWN_FAILING, "failing criteria differ from the documented set");
}
