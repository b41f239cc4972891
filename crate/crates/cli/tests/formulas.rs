//! Rendered formulas parse back to formulas with the same values.

use problema::expr::Expression;
use problema_cli::parser::parse_condition;
use problema_cli::predicate::{BinOp, Expr};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::Var), (-20i64..20).prop_map(Expr::Int)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Bin(
                BinOp::Add,
                Box::new(a),
                Box::new(b)
            )),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Bin(
                BinOp::Sub,
                Box::new(a),
                Box::new(b)
            )),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Bin(
                BinOp::Mul,
                Box::new(a),
                Box::new(b)
            )),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Bin(
                BinOp::Mod,
                Box::new(a),
                Box::new(b)
            )),
        ]
    })
}

fn formula() -> impl Strategy<Value = Expr> {
    let cmp = prop_oneof![
        Just(BinOp::Eq),
        Just(BinOp::Ne),
        Just(BinOp::Lt),
        Just(BinOp::Le),
        Just(BinOp::Gt),
        Just(BinOp::Ge)
    ];
    let atom = prop_oneof![
        (cmp, term(), term()).prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
        (term(), prop::collection::vec(term(), 0..3), any::<bool>()).prop_map(
            |(item, set, negated)| Expr::In {
                item: Box::new(item),
                set,
                negated
            }
        ),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Not(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Bin(
                BinOp::And,
                Box::new(a),
                Box::new(b)
            )),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Bin(
                BinOp::Or,
                Box::new(a),
                Box::new(b)
            )),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_then_parsing_keeps_the_meaning(f in formula()) {
        let text = format!("n ? {}", f.render("n"));
        let (var, back) = parse_condition(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        prop_assert_eq!(var, "n");
        prop_assert_eq!(back.render("n"), f.render("n"));
        for x in -6i64..=6 {
            let x = Expression::from_integer(x);
            prop_assert_eq!(back.eval(&x), f.eval(&x), "{} at {}", text, x);
        }
    }
}
