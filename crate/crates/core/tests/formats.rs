use beauville_core::constructions::{
    alt_coprime_structure, mathieu_double, product_double, suzuki_structure, MathieuGroup,
};
use beauville_core::format::{parse_group_file, parse_witness_file, StructureFile};
use beauville_core::structure::{verify_strongly_real, verify_structure};

fn round_trip(c: &beauville_core::constructions::Construction) {
    let e = c.emitted();
    let file = StructureFile::new(&e.structure, Some(&e.witness), e.notes.clone());
    let json = file.to_json();
    let back = StructureFile::parse(&json).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.to_json(), json);
    let (s, w) = back.to_structure().unwrap();
    assert_eq!(s.structure_type(), e.structure.structure_type());
    assert!(verify_structure(&s).overall.is_pass());
    assert!(verify_strongly_real(&s, &w.unwrap()).verdict.is_pass());
}

#[test]
fn permutation_structures_round_trip() {
    round_trip(&mathieu_double(MathieuGroup::A5).unwrap());
    round_trip(&alt_coprime_structure(6).unwrap());
}

#[test]
fn matrix_structures_round_trip() {
    let sz = suzuki_structure(3).unwrap();
    round_trip(&sz);
    round_trip(&product_double(&sz).unwrap());
}

#[test]
fn group_and_witness_files() {
    let g = parse_group_file(r#"{"kind":"permutation","degree":5,"generators":["(1,2,3)","(1,2,3,4,5)"]}"#).unwrap();
    assert_eq!(g.order().unwrap(), 60u32.into());
    // a structure file also serves as a group file
    let c = mathieu_double(MathieuGroup::A5).unwrap();
    let json = StructureFile::new(&c.printed.structure, None, vec![]).to_json();
    assert_eq!(parse_group_file(&json).unwrap().order().unwrap(), 3600u32.into());
    let ws = parse_witness_file(
        r#"[{"kind":"overgroup_conjugation","tau":"(1,2)"},{"kind":"abelian_inversion"}]"#,
        g.kind(),
    )
    .unwrap();
    assert_eq!(ws.len(), 2);
}

#[test]
fn malformed_files_are_rejected() {
    assert!(parse_group_file("{").is_err());
    assert!(parse_group_file(r#"{"kind":"cube","generators":[]}"#).is_err());
    assert!(parse_group_file(r#"{"kind":"permutation","degree":3,"generators":["(1,4)"]}"#).is_err());
    assert!(StructureFile::parse(r#"{"group":{"kind":"permutation","degree":3,"generators":["(1,2)"]},"pairs":[]}"#)
        .and_then(|f| f.to_structure())
        .is_err());
}
