use super::*;
use crate::parser::parse_str;
use proptest::prelude::*;

fn bw(blocks: &[&str], laws: &str) -> ActionDescription {
    parse_str(&format!(
        ":- sorts location >> block.
         :- objects table :: location; {} :: block.
         :- constants loc(block) :: simpleFluent(location); move(block) :: action.
         :- variables B, B1 :: block; L :: location.
         {laws}",
        blocks.join(", ")
    ))
    .unwrap()
}

fn texts(g: &GroundLawSet) -> Vec<String> {
    g.laws.iter().map(|l| g.law_text(l)).collect()
}

#[test]
fn nonexecutable_instances() {
    let d = bw(&["a", "b"], "nonexecutable move(B) if loc(B1)=B.");
    let g = ground_laws(&d).unwrap();
    assert_eq!(g.laws.len(), 4);
    assert!(g
        .laws
        .iter()
        .all(|l| l.shape == LawShape::FluentDynamic && l.head.is_none()));
    assert_eq!(
        texts(&g)[1],
        "fluent caused false if true after (move(a)=true & loc(b)=a)."
    );
}

#[test]
fn signature_instances() {
    let g = ground_laws(&bw(&["a", "b", "c"], "")).unwrap();
    assert_eq!(g.signature.len(), 6);
    let loc_a = g.constant_id("loc(a)").unwrap();
    assert_eq!(g.signature.constant(loc_a).domain.len(), 4);
    assert_eq!(g.kind(g.constant_id("move(c)").unwrap()), ConstKind::Action);
    assert!(g.atom("loc(a)", "table").is_some());
    assert!(g.atom("move(a)", "table").is_none());
}

#[test]
fn where_filters_bindings() {
    let d = bw(
        &["a", "b", "c"],
        "nonexecutable move(B) if loc(B1)=B where B \\= B1.",
    );
    assert_eq!(ground_laws(&d).unwrap().laws.len(), 6);
}

#[test]
fn where_errors() {
    let d = bw(&["a"], "nonexecutable move(B) where @check(B).");
    assert!(matches!(
        ground_laws(&d),
        Err(GroundError::WhereEvalError { .. })
    ));
    let d = bw(&["a"], "nonexecutable move(B) where B < 3.");
    assert!(matches!(
        ground_laws(&d),
        Err(GroundError::WhereEvalError { .. })
    ));
}

#[test]
fn integer_arithmetic() {
    let d = parse_str(
        ":- sorts n. :- objects 1..4 :: n.
         :- constants c(n) :: simpleFluent.
         :- variables N, M :: n.
         constraint c(N) ->> c(M) where M = N+1.",
    )
    .unwrap();
    let g = ground_laws(&d).unwrap();
    assert_eq!(g.laws.len(), 3);
    assert_eq!(
        texts(&g)[0],
        "static caused false if not (c(1)=true -> c(2)=true)."
    );
}

#[test]
fn constant_equality_expands_over_shared_values() {
    let d = bw(&["a", "b"], "constraint loc(a)=loc(b) ->> loc(a)=table.");
    let g = ground_laws(&d).unwrap();
    let text = &texts(&g)[0];
    for v in ["table", "a", "b"] {
        assert!(
            text.contains(&format!("(loc(a)={v} & loc(b)={v})")),
            "{text}"
        );
    }
}

#[test]
fn declared_kinds_add_laws() {
    let d = parse_str(
        ":- sorts s. :- objects x, y :: s.
         :- constants f :: inertialFluent(s); e :: exogenousAction; p :: sdFluent.",
    )
    .unwrap();
    let g = ground_laws(&d).unwrap();
    assert_eq!(g.of_shape(LawShape::FluentDynamic).count(), 2);
    assert_eq!(g.of_shape(LawShape::ActionDynamic).count(), 2);
    assert_eq!(texts(&g)[0], "fluent caused f=x if f=x after f=x.");
    assert_eq!(texts(&g)[2], "action caused e=true if e=true.");
}

#[test]
fn shorthand_shapes() {
    let d = parse_str(
        ":- constants p :: simpleFluent; q :: sdFluent; a :: action; b :: action.
         default q.
         default a.
         a causes p if q.
         a causes b.
         constraint a ->> p.
         always q.
         caused q if p.",
    )
    .unwrap();
    let g = ground_laws(&d).unwrap();
    assert_eq!(
        texts(&g),
        vec![
            "static caused q=true if q=true.",
            "action caused a=true if a=true.",
            "fluent caused p=true if true after (a=true & q=true).",
            "action caused b=true if a=true.",
            "action caused false if not (a=true -> p=true).",
            "fluent caused false if true after not q=true.",
            "static caused q=true if p=true.",
        ]
    );
}

#[test]
fn shape_errors() {
    let decls = ":- constants p :: simpleFluent; q :: sdFluent; a :: action.";
    for bad in [
        "caused p if a.",
        "caused q after a.",
        "caused p if a after a.",
        "caused p ++ q.",
    ] {
        let d = parse_str(&format!("{decls} {bad}")).unwrap();
        assert!(ground_laws(&d).is_err(), "{bad}");
    }
    let d = parse_str(&format!("{decls} caused p ++ q.")).unwrap();
    assert!(matches!(
        ground_laws(&d),
        Err(GroundError::NonDefiniteAfterExpansion { .. })
    ));
    assert_eq!(check_definite(&d).len(), 1);
}

#[test]
fn values_outside_the_domain() {
    let d = parse_str(
        ":- sorts s; t. :- objects x :: s; y :: t.
         :- constants f :: simpleFluent(s).
         caused f=y.",
    )
    .unwrap();
    let g = ground_laws(&d).unwrap();
    assert_eq!(g.laws[0].head, None);
    let d =
        parse_str(":- sorts s. :- objects x :: s. :- constants f :: simpleFluent(s). caused f=zz.");
    assert!(matches!(
        d.map(|d| ground_laws(&d)),
        Err(_) | Ok(Err(GroundError::UnknownObject { .. }))
    ));
}

#[test]
fn empty_sorts() {
    let d = parse_str(":- sorts s. :- constants f :: simpleFluent(s).").unwrap();
    assert_eq!(
        ground_laws(&d).unwrap_err(),
        GroundError::EmptySort("s".into())
    );
    let d = parse_str(
        ":- sorts s. :- variables X :: s. :- constants p :: simpleFluent. caused p where X = X.",
    )
    .unwrap();
    assert_eq!(
        ground_laws(&d).unwrap_err(),
        GroundError::EmptySort("s".into())
    );
}

#[test]
fn queries_are_ground() {
    let d = bw(
        &["a", "b"],
        ":- query label :: q; maxstep :: 2; 0: loc(a)=b; maxstep: loc(a)=table.",
    );
    let g = ground_laws(&d).unwrap();
    let q = g.query("q").unwrap();
    assert_eq!(q.constraints.len(), 2);
    assert_eq!(g.formula_text(&q.constraints[0].1), "loc(a)=b");
}

#[test]
fn law_order_does_not_matter() {
    let laws = [
        "nonexecutable move(B) if loc(B1)=B.",
        "move(B) causes loc(B)=table.",
        "constraint loc(B)\\=B.",
    ];
    let forward = ground_laws(&bw(&["a", "b"], &laws.join("\n"))).unwrap();
    let mut reversed = laws;
    reversed.reverse();
    let backward = ground_laws(&bw(&["a", "b"], &reversed.join("\n"))).unwrap();
    let mut x = texts(&forward);
    let mut y = texts(&backward);
    x.sort();
    y.sort();
    assert_eq!(x, y);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn instance_count_matches_nested_loops(sizes in prop::collection::vec(1usize..4, 1..4)) {
        let mut text = String::from(":- constants p :: simpleFluent.\n");
        let mut vars = Vec::new();
        for (i, n) in sizes.iter().enumerate() {
            let objs: Vec<String> = (0..*n).map(|j| format!("o{i}_{j}")).collect();
            text += &format!(":- sorts s{i}. :- objects {} :: s{i}. :- variables V{i} :: s{i}.\n", objs.join(", "));
            vars.push(format!("V{i} = V{i}"));
        }
        text += &format!("caused p where {}.\n", vars.join(" & "));
        let g = ground_laws(&parse_str(&text).unwrap()).unwrap();
        let mut expected = 0usize;
        let mut counter = vec![0usize; sizes.len()];
        'outer: loop {
            expected += 1;
            for k in (0..sizes.len()).rev() {
                counter[k] += 1;
                if counter[k] < sizes[k] {
                    continue 'outer;
                }
                counter[k] = 0;
            }
            break;
        }
        prop_assert_eq!(g.laws.len(), expected);
    }
}
