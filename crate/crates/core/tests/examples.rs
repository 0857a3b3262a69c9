use superclause::redundancy::{
    check_super_definition, check_super_first_step, check_super_last_step,
};
use superclause::resolution::{forget_variable, resolution_closure};
use superclause::splitting::{collateral_risk, make_superirredundant, split_clause, FreshNamer};
use superclause::{Clause, Error, Formula, Limits, Var};

fn fm(s: &str) -> Formula {
    s.parse().unwrap()
}

fn cl(s: &str) -> Clause {
    s.parse().unwrap()
}

fn verdicts(f: &Formula, c: &Clause) -> [bool; 3] {
    let l = Limits::default();
    [
        check_super_definition(f, c, &l).unwrap().superredundant,
        check_super_first_step(f, c, &l).unwrap().superredundant,
        check_super_last_step(f, c, &l).unwrap().superredundant,
    ]
}

fn split_by_hand(f: &Formula, c1: &Clause, c2: &Clause) -> Formula {
    let x = Var::new("x").unwrap();
    let mut g = f.without(&c1.union(c2).unwrap());
    g.insert(c1.with(x.pos()).unwrap());
    g.insert(c2.with(x.neg()).unwrap());
    g
}

#[test]
fn split_lemma_needs_its_preconditions() {
    let cases = [
        ("", "a b", "a", "a b x; a -x"),
        ("a b", "a b", "a", "a b x; a -x"),
        ("a b; x", "a", "b", "x; a x; b -x"),
    ];
    for (base, c1, c2, split) in cases {
        let (f, c1, c2) = (fm(base), cl(c1), cl(c2));
        let g = split_by_hand(&f, &c1, &c2);
        assert_eq!(g, fm(split), "{base}");
        assert_eq!(
            verdicts(&g, &c1.with(Var::new("x").unwrap().pos()).unwrap()),
            [true; 3]
        );
        assert_eq!(verdicts(&f.with(c1.clone()), &c1), [false; 3], "{base}");
    }
}

#[test]
fn blocked_split_keeps_a_cycle() {
    let f = fm("a b; -a c; a -c");
    assert_eq!(verdicts(&f, &cl("a b")), [true; 3]);
    assert_eq!(verdicts(&fm("a; -a c; a -c"), &cl("a")), [true; 3]);
    let err = make_superirredundant(
        &f,
        &fm("a b"),
        &mut FreshNamer::default(),
        &Limits::default(),
    )
    .unwrap_err();
    assert_eq!(
        err,
        Error::NoViablePartition {
            clause: "a b".into()
        }
    );
}

#[test]
fn collateral_clause_becomes_superredundant() {
    let f = fm("a b d e; -a b -d e; a e; -e -a -d");
    let (c, c12) = (cl("a b d e"), cl("-a b -d e"));
    // c contains a ∨ e, so it is superredundant even before the split
    assert_eq!(verdicts(&f, &c), [true; 3]);
    assert_eq!(verdicts(&f, &c12), [true; 3]);
    assert_eq!(
        collateral_risk(&f, (&cl("-a b"), &cl("-d e"))).unwrap(),
        fm("a b d e")
    );

    let (g, plan) = split_clause(
        &f,
        &c12,
        (&cl("-a b"), &cl("-d e")),
        &mut FreshNamer::new("x"),
    )
    .unwrap();
    assert_eq!(plan.collateral, fm("a b d e"));
    assert_eq!(verdicts(&g, &c), [true; 3]);
    assert_eq!(verdicts(&g, &plan.half_a), [false; 3]);
    assert_eq!(verdicts(&g, &plan.half_b), [true; 3]);
    assert_eq!(forget_variable(&g, &plan.fresh), f);
}

#[test]
fn second_split_gives_the_two_split_formula() {
    let f = fm("a b d e; -a b -d e; a e; -e -a -d");
    let (g, _) = split_clause(
        &f,
        &cl("-a b -d e"),
        (&cl("-a b"), &cl("-d e")),
        &mut FreshNamer::new("x"),
    )
    .unwrap();
    let (h, _) = split_clause(
        &g,
        &cl("a b d e"),
        (&cl("a b"), &cl("d e")),
        &mut FreshNamer::new("y"),
    )
    .unwrap();
    let expected = fm("a b y0; -y0 d e; -a b x0; -x0 -d e; a e; -e -a -d");
    assert!(h.is_subset(&expected) && expected.is_subset(&h));
    for (clause, superredundant) in [
        ("a b y0", false),
        ("-y0 d e", false),
        ("-a b x0", false),
        ("-x0 -d e", true),
        ("a e", false),
        ("-a -d -e", false),
    ] {
        assert_eq!(verdicts(&h, &cl(clause)), [superredundant; 3], "{clause}");
    }
    let err = make_superirredundant(
        &f,
        &fm("a b d e; -a b -d e"),
        &mut FreshNamer::default(),
        &Limits::default(),
    )
    .unwrap_err();
    assert_eq!(
        err,
        Error::NoViablePartition {
            clause: "-a b -d e".into()
        }
    );
}

#[test]
fn closure_budget_truncates() {
    let f = fm("a b c; -a d e; -b -d f; -c -e -f; a -f g; -g b d; -a -b -g; c e -g");
    let r = resolution_closure(&f, 10).unwrap();
    assert!(r.truncated);
    assert_eq!(r.clauses.len(), 10);
    assert!(matches!(r.complete(), Err(Error::TruncatedClosure { .. })));
    assert!(!resolution_closure(&f, 1000).unwrap().truncated);
}
