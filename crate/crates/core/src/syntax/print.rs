use super::{Assoc, OPS, PREC_NOT};
use crate::term::{sym, Clause, Term};

fn infix(f: &str, arity: usize) -> Option<&'static super::OpInfo> {
    if arity != 2 {
        return None;
    }
    OPS.iter().find(|o| o.symbol == f)
}

/// Precedence of the outermost construct; applications and atoms bind tightest.
fn prec_of(t: &Term) -> u8 {
    match t {
        Term::App(f, args) => {
            if let Some(op) = infix(f, args.len()) {
                op.prec
            } else if &**f == sym::NOT && args.len() == 1 {
                PREC_NOT
            } else {
                u8::MAX
            }
        }
        Term::Var(_) => u8::MAX,
    }
}

fn write_term(t: &Term, out: &mut String, curried: bool) {
    match t {
        Term::Var(v) => out.push_str(&v.name),
        Term::App(f, args) => {
            if let Some(op) = infix(f, args.len()) {
                let (lmin, rmin) = match op.assoc {
                    Assoc::Left => (op.prec, op.prec + 1),
                    Assoc::Right => (op.prec + 1, op.prec),
                    Assoc::Non => (op.prec + 1, op.prec + 1),
                };
                write_child(&args[0], lmin, out, curried);
                out.push(' ');
                out.push_str(op.token);
                out.push(' ');
                write_child(&args[1], rmin, out, curried);
            } else if &**f == sym::NOT && args.len() == 1 {
                out.push('~');
                // Negated infix terms keep their parentheses for readability.
                if infix_head(&args[0]) || prec_of(&args[0]) < PREC_NOT {
                    out.push('(');
                    write_term(&args[0], out, curried);
                    out.push(')');
                } else {
                    write_term(&args[0], out, curried);
                }
            } else if args.is_empty() {
                out.push_str(f);
            } else if curried {
                out.push_str(f);
                for a in args {
                    out.push(' ');
                    if matches!(a, Term::App(_, xs) if !xs.is_empty()) {
                        out.push('(');
                        write_term(a, out, true);
                        out.push(')');
                    } else {
                        write_term(a, out, true);
                    }
                }
            } else {
                out.push_str(f);
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, out, curried);
                }
                out.push(')');
            }
        }
    }
}

fn infix_head(t: &Term) -> bool {
    matches!(t, Term::App(f, args) if infix(f, args.len()).is_some())
}

fn write_child(t: &Term, min: u8, out: &mut String, curried: bool) {
    if prec_of(t) < min {
        out.push('(');
        write_term(t, out, curried);
        out.push(')');
    } else {
        write_term(t, out, curried);
    }
}

/// Render with the minimal parentheses needed to parse back to the same term.
pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    write_term(t, &mut s, false);
    s
}

/// Juxtaposition style used in proof traces: `SUC (SUC n)` rather than
/// `SUC(SUC(n))`. Parses back to the same term.
pub fn print_term_curried(t: &Term) -> String {
    let mut s = String::new();
    write_term(t, &mut s, true);
    s
}

fn clause_text(c: &Clause, curried: bool) -> String {
    let or = OPS
        .iter()
        .find(|o| o.symbol == sym::OR)
        .expect("or is infix");
    let mut s = String::new();
    if c.lits.len() == 1 {
        write_term(&c.lits[0], &mut s, curried);
        return s;
    }
    for (i, l) in c.lits.iter().enumerate() {
        if i > 0 {
            s.push_str(" \\/ ");
        }
        write_child(l, or.prec + 1, &mut s, curried);
    }
    s
}

/// Render a clause as a disjunction of its literals.
pub fn print_clause(c: &Clause) -> String {
    clause_text(c, false)
}

pub fn print_clause_curried(c: &Clause) -> String {
    clause_text(c, true)
}
