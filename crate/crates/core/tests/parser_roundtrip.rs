//! The expression grammar against an AST oracle: random expression trees
//! are rendered to text, parsed, and compared with a direct evaluation of
//! the tree. Printed polynomials must also parse back unchanged.

use std::sync::Arc;

use lndcert_core::random::{random_poly, seeded_rng};
use lndcert_core::{parse_expression, Poly, VarTable};
use num_rational::BigRational;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["t", "x1", "x2", "x3"];

fn table() -> Arc<VarTable> {
    VarTable::new(["t"], ["x1", "x2", "x3"]).unwrap()
}

#[derive(Debug, Clone)]
enum Expr {
    Int(i64),
    Rat(i64, u64),
    Sym(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Every composite is parenthesized, so the rendering is valid at any
/// grammar position regardless of precedence.
fn render(e: &Expr, out: &mut String) {
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Rat(p, q) => {
            out.push_str(&p.to_string());
            out.push('/');
            out.push_str(&q.to_string());
        }
        Expr::Sym(i) => out.push_str(NAMES[*i]),
        Expr::Neg(a) => {
            out.push_str("(-");
            render(a, out);
            out.push(')');
        }
        Expr::Add(a, b) => {
            out.push('(');
            render(a, out);
            out.push_str(" + ");
            render(b, out);
            out.push(')');
        }
        Expr::Sub(a, b) => {
            out.push('(');
            render(a, out);
            out.push_str(" - ");
            render(b, out);
            out.push(')');
        }
        Expr::Mul(a, b) => {
            out.push('(');
            render(a, out);
            out.push('*');
            render(b, out);
            out.push(')');
        }
        Expr::Pow(a, k) => {
            // the grammar allows a single caret per factor, so a nested
            // power base must be grouped explicitly
            if let Expr::Pow(..) = a.as_ref() {
                out.push('(');
                render(a, out);
                out.push(')');
            } else {
                render(a, out);
            }
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

fn eval(e: &Expr, table: &Arc<VarTable>) -> Poly {
    match e {
        Expr::Int(n) => Poly::from_int(table, *n),
        Expr::Rat(p, q) => Poly::constant(
            table,
            BigRational::new((*p).into(), (*q as i64).into()),
        ),
        Expr::Sym(i) => Poly::sym(table, table.resolve(NAMES[*i]).unwrap()),
        Expr::Neg(a) => -&eval(a, table),
        Expr::Add(a, b) => &eval(a, table) + &eval(b, table),
        Expr::Sub(a, b) => &eval(a, table) - &eval(b, table),
        Expr::Mul(a, b) => &eval(a, table) * &eval(b, table),
        Expr::Pow(a, k) => eval(a, table).pow(u64::from(*k)),
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..100).prop_map(Expr::Int),
        (1i64..50, 1u64..20).prop_map(|(p, q)| Expr::Rat(p, q)),
        (0usize..NAMES.len()).prop_map(Expr::Sym),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..5).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
        ]
    })
}

proptest! {
    /// Parsing the rendered tree agrees with evaluating the tree, and the
    /// parsed polynomial survives a print-parse round trip.
    #[test]
    fn parse_agrees_with_ast_evaluation(e in expr_strategy()) {
        let table = table();
        let mut src = String::new();
        render(&e, &mut src);
        let parsed = parse_expression(&src, &table).expect("rendered expression parses");
        prop_assert_eq!(&parsed, &eval(&e, &table));
        let reparsed = parse_expression(&parsed.to_string(), &table).expect("printed form parses");
        prop_assert_eq!(&reparsed, &parsed);
    }

    /// Whitespace never changes the parse.
    #[test]
    fn whitespace_is_insignificant(e in expr_strategy()) {
        let table = table();
        let mut src = String::new();
        render(&e, &mut src);
        let parsed = parse_expression(&src, &table).expect("rendered expression parses");
        let squeezed: String = src.chars().filter(|c| *c != ' ').collect();
        let padded = src
            .replace('*', " * ")
            .replace('^', " ^ ")
            .replace('(', "( ")
            .replace(')', " )");
        prop_assert_eq!(&parse_expression(&squeezed, &table).unwrap(), &parsed);
        prop_assert_eq!(&parse_expression(&padded, &table).unwrap(), &parsed);
    }
}

/// Printed random polynomials, including rational coefficients, parse
/// back to the identical polynomial.
#[test]
fn print_parse_identity_on_random_polynomials() {
    let table = table();
    let mut rng = seeded_rng(0x7072_696e);
    for case in 0..2000i64 {
        let p = random_poly(&table, 5, 8, &mut rng);
        let p = p.scale(&BigRational::new(1.into(), (1 + case % 6).into()));
        let printed = p.to_string();
        let reparsed = parse_expression(&printed, &table)
            .unwrap_or_else(|e| panic!("case {case}: '{printed}' failed to parse: {e}"));
        assert_eq!(reparsed, p, "case {case}: '{printed}'");
    }
}
