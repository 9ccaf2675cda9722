use super::*;
use proptest::prelude::*;

const BW_DECLS: &str = "
:- sorts location >> block.
:- objects table :: location.
:- constants
  loc(block) :: inertialFluent(location);
  move(block) :: exogenousAction;
  p :: inertialFluent;
  q :: sdFluent;
  r :: exogenousAction.
:- variables B,B1 :: block; L :: location.
";

fn with_decls(body: &str) -> ActionDescription {
    parse_str(&format!("{BW_DECLS}\n{body}")).unwrap()
}

fn loc(arg: Term) -> ConstTerm {
    ConstTerm::new("loc", vec![arg])
}

fn var(v: &str) -> Term {
    Term::Var(v.into())
}

#[test]
fn blocks_world_constraint() {
    let d = with_decls("constraint B\\=B1 & loc(B)=loc(B1) ->> loc(B)=table.");
    assert_eq!(d.laws.len(), 1);
    let expected = Formula::implies(
        Formula::and(
            Formula::Compare(CmpOp::Neq, var("B"), var("B1")),
            Formula::atom(loc(var("B")), Term::Const(loc(var("B1")))),
        ),
        Formula::atom(loc(var("B")), Term::obj("table")),
    );
    assert_eq!(
        d.laws[0].kind,
        LawKind::Constraint {
            body: expected,
            after: None
        }
    );
}

#[test]
fn object_list() {
    let d = with_decls(":- objects  a,b,c,d :: block.");
    assert_eq!(d.sort("block").unwrap().objects, vec!["a", "b", "c", "d"]);
    assert_eq!(d.members("location"), vec!["table", "a", "b", "c", "d"]);
}

#[test]
fn dynamic_law_surface_form() {
    let d = with_decls("caused p if q after r.");
    let atom = |n: &str| Formula::atom(ConstTerm::new(n, vec![]), Term::obj(TRUE));
    assert_eq!(
        d.laws[0].kind,
        LawKind::Caused {
            head: atom("p"),
            cond: Some(atom("q")),
            after: Some(atom("r"))
        }
    );
}

#[test]
fn boolean_sugar() {
    let d = with_decls("caused -p if -(q) & p.");
    let LawKind::Caused { head, cond, .. } = &d.laws[0].kind else {
        panic!()
    };
    assert_eq!(
        *head,
        Formula::atom(ConstTerm::new("p", vec![]), Term::obj(FALSE))
    );
    let q = Formula::atom(ConstTerm::new("q", vec![]), Term::obj(TRUE));
    let p = Formula::atom(ConstTerm::new("p", vec![]), Term::obj(TRUE));
    assert_eq!(*cond, Some(Formula::and(Formula::not(q), p)));
}

#[test]
fn precedence() {
    let d = with_decls("constraint p & q ++ r ->> p ->> q.");
    let LawKind::Constraint { body, .. } = &d.laws[0].kind else {
        panic!()
    };
    let a = |n: &str| Formula::atom(ConstTerm::new(n, vec![]), Term::obj(TRUE));
    let expected = Formula::implies(
        Formula::or(Formula::and(a("p"), a("q")), a("r")),
        Formula::implies(a("p"), a("q")),
    );
    assert_eq!(*body, expected);
}

#[test]
fn shorthand_forms() {
    let d = with_decls(
        "inertial loc(B).
         exogenous move(B).
         move(B) causes loc(B)=L if loc(B1)=L.
         nonexecutable move(B) if loc(B1)=B.
         default q.
         always p.
         constraint p after r.",
    );
    assert_eq!(d.laws.len(), 7);
    assert!(matches!(d.laws[0].kind, LawKind::Inertial(_)));
    assert!(matches!(d.laws[2].kind, LawKind::Causes { .. }));
    assert!(matches!(
        d.laws[6].kind,
        LawKind::Constraint { after: Some(_), .. }
    ));
}

#[test]
fn where_clause_and_external() {
    let d = with_decls("nonexecutable move(B) if loc(B1)=B where B\\=B1.");
    assert!(d.laws[0].where_clause.is_some());
    let d = with_decls("move(B) causes loc(B)=table where @roll(1,2).");
    assert!(matches!(
        d.laws[0].where_clause,
        Some(Formula::External(..))
    ));
    assert!(parse_str(&format!("{BW_DECLS} move(B) causes loc(B)=table where p.")).is_err());
}

#[test]
fn queries() {
    let d = with_decls(
        ":- objects a, b :: block.
         :- query label :: simple; maxstep :: 2;
            0: loc(a)=b, loc(b)=table;
            maxstep: loc(b)=a.
         :- query label :: ranged; maxstep :: 1..5; maxstep-1: p.
         :- query label :: open; maxstep :: 3..infinity; 0: p.",
    );
    assert_eq!(d.queries.len(), 3);
    assert_eq!(d.queries[0].maxstep, MaxStep::Fixed(2));
    assert_eq!(d.queries[0].constraints.len(), 2);
    assert_eq!(d.queries[1].maxstep, MaxStep::Range(1, 5));
    assert_eq!(d.queries[1].constraints[0].0, TimeExpr::MaxStep(-1));
    assert_eq!(d.queries[2].maxstep, MaxStep::Unbounded { min: 3 });
}

#[test]
fn errors() {
    assert!(matches!(
        parse_str(":- sorts a; a."),
        Err(ParseError::DuplicateDeclaration(_))
    ));
    assert!(matches!(
        parse_str(":- objects x :: nosuch."),
        Err(ParseError::UnknownSort(_))
    ));
    assert!(matches!(
        parse_str(":- constants c :: simpleFluent(nosuch)."),
        Err(ParseError::UnknownSort(_))
    ));
    assert!(matches!(
        parse_str(":- constants c :: action; c :: action."),
        Err(ParseError::DuplicateDeclaration(_))
    ));
    assert!(matches!(
        parse_str(":- sorts s. :- objects c :: s. :- constants c :: action."),
        Err(ParseError::DuplicateDeclaration(_))
    ));
    assert!(parse_str("caused p.").is_err());
    assert!(matches!(
        parse_str(":- constants p :: action. caused p if"),
        Err(ParseError::Syntax { .. })
    ));
    assert!(matches!(
        parse_str(":- constants p :: action. rigid p."),
        Err(ParseError::Invalid { .. })
    ));
    assert!(matches!(
        parse_str(":- macros x -> 1."),
        Err(ParseError::Invalid { .. })
    ));
    assert!(matches!(
        parse_str(":- sorts a >> b; b >> a."),
        Err(ParseError::Invalid { .. })
    ));
}

#[test]
fn spans_slice_back_to_the_law() {
    let d = with_decls(
        "constraint B\\=B1 & loc(B)=loc(B1) ->> loc(B)=table.
         % comment
         move(B) causes loc(B)=L
             if loc(B1)=L.",
    );
    for law in &d.laws {
        let text = d.law_text(law).unwrap();
        let again = parse_law(text, &d).unwrap();
        assert_eq!(again.kind, law.kind);
        assert_eq!(again.where_clause, law.where_clause);
    }
}

#[test]
fn includes_resolve_relative_and_once() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("base.cp"),
        ":- sorts thing. :- constants p :: inertialFluent.",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("mid.cp"),
        ":- include 'base'.\n:- objects x :: thing.",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("top.cp"),
        ":- include 'base.cp', 'mid'.\n:- query label :: q; maxstep :: 1; 0: p.",
    )
    .unwrap();
    let d = parse_files(&[dir.path().join("top.cp")]).unwrap();
    assert_eq!(d.sources.len(), 3);
    assert_eq!(d.constants.len(), 1);
    assert_eq!(d.members("thing"), vec!["x"]);
    assert!(matches!(
        parse_files(&[dir.path().join("missing.cp")]),
        Err(ParseError::Io { .. })
    ));
}

#[test]
fn bundled_domains_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/domains");
    for name in ["bw-test.cp", "bw2.cp", "hanoi.cp", "ferryman.cp", "lamp.cp"] {
        let d = parse_files(&[dir.join(name)]).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!d.queries.is_empty(), "{name}");
        let again = parse_str(&d.to_string()).unwrap();
        assert!(again.same_structure(&d), "{name} round trip");
    }
}

#[test]
fn parsing_is_deterministic() {
    let text = format!("{BW_DECLS} constraint loc(B)\\=B. inertial loc(B).");
    assert_eq!(parse_str(&text).unwrap(), parse_str(&text).unwrap());
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let objects = prop_oneof![Just("table"), Just("a"), Just("b")];
    let leaf = prop_oneof![
        (
            prop_oneof![Just("a"), Just("b"), Just("B")],
            objects.clone()
        )
            .prop_map(|(arg, v)| {
                let arg = if arg == "B" { var("B") } else { Term::obj(arg) };
                Formula::atom(loc(arg), Term::obj(v))
            }),
        prop_oneof![Just("p"), Just("q"), Just("r")]
            .prop_map(|n| Formula::atom(ConstTerm::new(n, vec![]), Term::obj(TRUE))),
        Just(Formula::True),
        Just(Formula::False),
        Just(Formula::Compare(CmpOp::Neq, var("B"), var("B1"))),
        Just(Formula::atom(loc(var("B")), Term::Const(loc(var("B1"))))),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_round_trips(head in arb_formula(), cond in arb_formula(), after in arb_formula()) {
        let mut d = with_decls(":- objects a, b :: block.");
        d.laws.push(Law {
            kind: LawKind::Caused { head, cond: Some(cond), after: Some(after) },
            where_clause: None,
            span: Span::default(),
        });
        d.queries.push(Query {
            label: "q".into(),
            maxstep: MaxStep::Range(0, 3),
            constraints: vec![(TimeExpr::At(0), Formula::atom(loc(Term::obj("a")), Term::obj("b")))],
        });
        let again = parse_str(&d.to_string()).unwrap();
        prop_assert!(again.same_structure(&d));
    }
}
