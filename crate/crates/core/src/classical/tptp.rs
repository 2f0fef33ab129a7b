//! TPTP TFF output for verification conditions.
//!
//! Symbols are named as follows: the sorts are `gen`, `tuple` and `set`; a
//! predicate `p/n` is `p_n`; a numeral `5` is `n5` and `-5` is `nm5`; a
//! symbolic constant `a` is `c_a`; `#inf` and `#sup` are `infimum` and
//! `supremum`; the comparisons are `less`, `leq`, `greater`, `geq` together
//! with the built-in `=` and `!=`; membership is `member`; the tuple
//! constructor of arity `k` is `tuplek`; a set function `s^x_E` is
//! `s_x_E`. Hatted symbols carry the suffix `_hat`.

use std::{collections::BTreeMap, fmt::Write};

use num_traits::Signed;

use super::VerificationCondition;
use crate::{
    folog::{FoTerm, Formula, Predicate, SetFn, Sort, Var},
    syntax::{GroundTerm, Relation},
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TptpOptions {
    /// Include the best-effort standardness axioms.
    pub standardness: bool,
}

impl Default for TptpOptions {
    fn default() -> Self {
        TptpOptions { standardness: true }
    }
}

fn predicate_name(p: &Predicate) -> String {
    let hat = if p.hatted { "_hat" } else { "" };
    format!("{}_{}{hat}", p.name, p.arity)
}

fn set_fn_name(f: &SetFn) -> String {
    let hat = if f.hatted { "_hat" } else { "" };
    format!("s_{}_{}{hat}", f.semantics, f.name)
}

fn constant_name(g: &GroundTerm) -> String {
    match g {
        GroundTerm::Infimum => "infimum".into(),
        GroundTerm::Supremum => "supremum".into(),
        GroundTerm::Numeral(n) if n.is_negative() => format!("nm{}", n.abs()),
        GroundTerm::Numeral(n) => format!("n{n}"),
        GroundTerm::Symbol(s) => format!("c_{s}"),
    }
}

fn relation_name(rel: Relation) -> &'static str {
    match rel {
        Relation::Less => "less",
        Relation::LessEqual => "leq",
        Relation::Greater => "greater",
        Relation::GreaterEqual => "geq",
        Relation::Equal => "=",
        Relation::NotEqual => "!=",
    }
}

fn sort_name(s: Sort) -> &'static str {
    match s {
        Sort::General => "gen",
        Sort::Tuple => "tuple",
        Sort::Set => "set",
    }
}

/// Symbols to declare, as name and TFF type.
#[derive(Default)]
struct Symbols(BTreeMap<String, String>);

impl Symbols {
    fn declare(&mut self, name: String, args: &[&str], result: &str) {
        let ty = match args {
            [] => result.to_string(),
            [a] => format!("{a} > {result}"),
            _ => format!("({}) > {result}", args.join(" * ")),
        };
        self.0.insert(name, ty);
    }

    fn term(&mut self, t: &FoTerm) {
        match t {
            FoTerm::Ground(g) => self.declare(constant_name(g), &[], "gen"),
            FoTerm::Var(_) => {}
            FoTerm::Tuple(args) => {
                self.declare(
                    format!("tuple{}", args.len()),
                    &vec!["gen"; args.len()],
                    "tuple",
                );
                args.iter().for_each(|a| self.term(a));
            }
            FoTerm::SetApp { fun, args } => {
                self.declare(set_fn_name(fun), &vec!["gen"; args.len()], "set");
                args.iter().for_each(|a| self.term(a));
            }
            FoTerm::Agg { op, set } => {
                self.declare(op.name().to_string(), &["set"], "gen");
                self.term(set);
            }
        }
    }

    fn formula(&mut self, f: &Formula) {
        match f {
            Formula::Bottom => {}
            Formula::Atom { pred, args } => {
                self.declare(predicate_name(pred), &vec!["gen"; args.len()], "$o");
                args.iter().for_each(|a| self.term(a));
            }
            Formula::Eq(l, r) | Formula::Member(l, r) | Formula::Cmp(l, _, r) => {
                match f {
                    Formula::Member(..) => self.declare("member".into(), &["tuple", "set"], "$o"),
                    Formula::Cmp(_, rel, _) if !matches!(rel, Relation::NotEqual) => {
                        self.declare(relation_name(*rel).into(), &["gen", "gen"], "$o")
                    }
                    _ => {}
                }
                self.term(l);
                self.term(r);
            }
            Formula::StrongNeg(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
                self.formula(g)
            }
            Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) => {
                self.formula(g);
                self.formula(h);
            }
        }
    }
}

fn write_args(out: &mut String, args: &[FoTerm]) {
    if args.is_empty() {
        return;
    }
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, a);
    }
    out.push(')');
}

fn write_term(out: &mut String, t: &FoTerm) {
    match t {
        FoTerm::Ground(g) => out.push_str(&constant_name(g)),
        FoTerm::Var(v) => out.push_str(&v.name),
        FoTerm::Tuple(args) => {
            write!(out, "tuple{}", args.len()).unwrap();
            write_args(out, args);
        }
        FoTerm::SetApp { fun, args } => {
            out.push_str(&set_fn_name(fun));
            write_args(out, args);
        }
        FoTerm::Agg { op, set } => {
            write!(out, "{}(", op.name()).unwrap();
            write_term(out, set);
            out.push(')');
        }
    }
}

/// Writes `f` with every binary connective parenthesized.
fn write_formula(out: &mut String, f: &Formula) {
    if f.is_top() {
        out.push_str("$true");
        return;
    }
    if let Some((l, r)) = f.as_iff() {
        return write_binary(out, l, "<=>", r);
    }
    if let Some(g) = f.as_negation() {
        out.push_str("~ (");
        write_formula(out, g);
        out.push(')');
        return;
    }
    match f {
        Formula::Bottom => out.push_str("$false"),
        Formula::Atom { pred, args } => {
            out.push_str(&predicate_name(pred));
            write_args(out, args);
        }
        Formula::Eq(l, r) | Formula::Cmp(l, Relation::NotEqual, r) => {
            out.push('(');
            write_term(out, l);
            out.push_str(if matches!(f, Formula::Eq(..)) {
                " = "
            } else {
                " != "
            });
            write_term(out, r);
            out.push(')');
        }
        Formula::Cmp(l, rel, r) => {
            out.push_str(relation_name(*rel));
            write_args(out, &[l.clone(), r.clone()]);
        }
        Formula::Member(t, s) => {
            out.push_str("member");
            write_args(out, &[t.clone(), s.clone()]);
        }
        // `⌐` is classical negation within a single structure
        Formula::StrongNeg(g) => {
            out.push_str("~ (");
            write_formula(out, g);
            out.push(')');
        }
        Formula::And(l, r) => write_binary(out, l, "&", r),
        Formula::Or(l, r) => write_binary(out, l, "|", r),
        Formula::Implies(l, r) => write_binary(out, l, "=>", r),
        Formula::Forall(..) | Formula::Exists(..) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut vars: Vec<&Var> = Vec::new();
            let mut body = f;
            loop {
                match body {
                    Formula::Forall(v, g) | Formula::Exists(v, g)
                        if universal == matches!(body, Formula::Forall(..)) =>
                    {
                        vars.push(v);
                        body = g;
                    }
                    _ => break,
                }
            }
            let binders: Vec<String> = vars
                .iter()
                .map(|v| format!("{}: {}", v.name, sort_name(v.sort)))
                .collect();
            let q = if universal { '!' } else { '?' };
            write!(out, "({q} [{}] : ", binders.join(", ")).unwrap();
            write_formula(out, body);
            out.push(')');
        }
    }
}

fn write_binary(out: &mut String, l: &Formula, op: &str, r: &Formula) {
    out.push('(');
    write_formula(out, l);
    write!(out, " {op} ").unwrap();
    write_formula(out, r);
    out.push(')');
}

fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

/// The name of the predicate an HT axiom is about.
fn ht_axiom_name(f: &Formula, index: usize) -> String {
    let mut body = f;
    while let Formula::Forall(_, g) = body {
        body = g;
    }
    match body {
        Formula::Implies(l, _) => match &**l {
            Formula::Atom { pred, .. } => format!("ht_{}", predicate_name(pred)),
            _ => format!("ht_{index}"),
        },
        _ => format!("ht_{index}"),
    }
}

/// Renders `vc` as a TFF problem: the HT, AGG and (optionally) standardness
/// axioms, and the conjecture `F1 <=> F2`.
pub fn emit_tptp(vc: &VerificationCondition, options: &TptpOptions) -> String {
    let conjecture = Formula::iff(vc.left.clone(), vc.right.clone());
    let mut axioms: Vec<(String, &Formula)> = Vec::new();
    for (i, f) in vc.ht_axioms.sentences().iter().enumerate() {
        axioms.push((ht_axiom_name(f, i), f));
    }
    let names: Vec<&str> = vc.signature.set_symbols().map(|(_, n)| n).collect();
    for (i, f) in vc.agg_axioms.sentences().iter().enumerate() {
        let symbol = names.get(i / 3).copied().unwrap_or("extra");
        let kind = ["there", "cli_here", "dlv_here"][i % 3];
        axioms.push((format!("agg_{symbol}_{kind}"), f));
    }
    if options.standardness {
        for (i, f) in vc.standardness_axioms.sentences().iter().enumerate() {
            axioms.push((format!("std_{}", i + 1), f));
        }
    }

    let mut symbols = Symbols::default();
    for (_, f) in &axioms {
        symbols.formula(f);
    }
    symbols.formula(&conjecture);

    let mut out = String::new();
    writeln!(
        out,
        "% Strong equivalence of two programs under {} semantics.",
        vc.semantics
    )
    .unwrap();
    writeln!(
        out,
        "% The conjecture is valid in every model of the axioms whose"
    )
    .unwrap();
    writeln!(
        out,
        "% non-intensional symbols are interpreted in the standard way."
    )
    .unwrap();
    if options.standardness {
        writeln!(out, "% The std_ axioms approximate standardness and omit:").unwrap();
        writeln!(out, "%   arithmetic on numerals;").unwrap();
        writeln!(
            out,
            "%   the order and distinctness of terms not occurring in the problem;"
        )
        .unwrap();
        writeln!(out, "%   count and sum of nonempty sets;").unwrap();
        writeln!(out, "%   finiteness and well-foundedness of the domain.").unwrap();
        writeln!(
            out,
            "% A countermodel found by a prover may therefore be nonstandard."
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "% Standardness axioms are omitted; countermodels may be nonstandard."
        )
        .unwrap();
    }
    out.push('\n');
    for sort in ["gen", "tuple", "set"] {
        writeln!(out, "tff({sort}_type, type, {sort}: $tType).").unwrap();
    }
    for (name, ty) in &symbols.0 {
        writeln!(out, "tff(decl_{name}, type, {name}: {ty}).").unwrap();
    }
    out.push('\n');
    for (name, f) in &axioms {
        writeln!(out, "tff({name}, axiom, {}).", render(f)).unwrap();
    }
    out.push('\n');
    writeln!(
        out,
        "tff(equivalence, conjecture, {}).",
        render(&conjecture)
    )
    .unwrap();
    out
}
