//! Concrete syntax: terms with infix sugar, theory files and printing.
//!
//! ```text
//! file     := decl*
//! decl     := 'shell' NAME '{' (shellitem ';')* '}'
//!           | 'define' NAME '(' sorts ')' ':' SORT '{' (term ';')+ '}'
//!           | 'rewrite' term ';' | 'genlemma' term ';'
//!           | 'conjecture' STRING term ';'
//! shellitem:= 'bottom' NAME (',' NAME)*
//!           | 'con' NAME '(' sorts ')' ['accessors' '(' NAME, ... ')']
//! ```
//!
//! Terms use prefix application `F(a, b)`, curried juxtaposition `F a b`,
//! decimal numerals (sugar for `SUC` chains), list literals `[a, b]` and the
//! infix operators below, loosest first:
//!
//! | op            | symbol | assoc |
//! |---------------|--------|-------|
//! | `<=>`         | iff    | right |
//! | `==>`         | imp    | right |
//! | `\/`          | or     | right |
//! | `/\`          | and    | right |
//! | `~` (prefix)  | not    |       |
//! | `= < <= > >=` | eq LT LE GT GE | none |
//! | `+ -`         | PLUS SUB | left |
//! | `*`           | MULT   | left  |
//! | `EXP`         | EXP    | right |
//!
//! `=` between booleans elaborates to `iff`. Identifiers that are not
//! declared symbols are variables; their sorts are inferred, defaulting to
//! `num`.

mod elab;
mod lexer;
mod parser;
mod print;

use std::fmt;

use thiserror::Error;

use crate::term::Term;
use crate::theory::Theory;

pub use elab::{elaborate, Conjecture, Loaded};
pub use lexer::Pos;
pub use print::{print_clause, print_clause_curried, print_term, print_term_curried};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn at(pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: pos.line,
            col: pos.col,
            offset: pos.offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Assoc {
    Left,
    Right,
    Non,
}

pub(crate) struct OpInfo {
    pub token: &'static str,
    pub symbol: &'static str,
    pub prec: u8,
    pub assoc: Assoc,
}

pub(crate) const OPS: [OpInfo; 13] = [
    OpInfo {
        token: "<=>",
        symbol: "iff",
        prec: 1,
        assoc: Assoc::Right,
    },
    OpInfo {
        token: "==>",
        symbol: "imp",
        prec: 2,
        assoc: Assoc::Right,
    },
    OpInfo {
        token: "\\/",
        symbol: "or",
        prec: 3,
        assoc: Assoc::Right,
    },
    OpInfo {
        token: "/\\",
        symbol: "and",
        prec: 4,
        assoc: Assoc::Right,
    },
    OpInfo {
        token: "=",
        symbol: "eq",
        prec: 6,
        assoc: Assoc::Non,
    },
    OpInfo {
        token: "<",
        symbol: "LT",
        prec: 6,
        assoc: Assoc::Non,
    },
    OpInfo {
        token: "<=",
        symbol: "LE",
        prec: 6,
        assoc: Assoc::Non,
    },
    OpInfo {
        token: ">",
        symbol: "GT",
        prec: 6,
        assoc: Assoc::Non,
    },
    OpInfo {
        token: ">=",
        symbol: "GE",
        prec: 6,
        assoc: Assoc::Non,
    },
    OpInfo {
        token: "+",
        symbol: "PLUS",
        prec: 7,
        assoc: Assoc::Left,
    },
    OpInfo {
        token: "-",
        symbol: "SUB",
        prec: 7,
        assoc: Assoc::Left,
    },
    OpInfo {
        token: "*",
        symbol: "MULT",
        prec: 8,
        assoc: Assoc::Left,
    },
    OpInfo {
        token: "EXP",
        symbol: "EXP",
        prec: 9,
        assoc: Assoc::Right,
    },
];

pub(crate) const PREC_NOT: u8 = 5;

/// Unelaborated term with source position.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Ident(String),
    Num(u64),
    List(Vec<Expr>),
    Apply(String, Vec<Expr>),
    Binary(&'static str, Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConDecl {
    pub name: String,
    pub sorts: Vec<String>,
    pub accessors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeclKind {
    Shell {
        name: String,
        bottoms: Vec<String>,
        cons: Vec<ConDecl>,
    },
    Define {
        name: String,
        params: Vec<String>,
        result: String,
        equations: Vec<Expr>,
    },
    Rewrite(Expr),
    GenLemma(Expr),
    Conjecture {
        name: String,
        goal: Expr,
    },
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub kind: DeclKind,
    pub pos: Pos,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Decl) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct TheoryFile {
    pub decls: Vec<Decl>,
}

pub fn parse_theory(text: &str) -> Result<TheoryFile, SyntaxError> {
    parser::Parser::new(text)?.theory_file()
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = parser::Parser::new(text)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parse and elaborate a single term against `th`.
pub fn parse_term(th: &Theory, text: &str) -> Result<Term, SyntaxError> {
    elab::elaborate_term(th, &parse_expr(text)?)
}

/// Parse a theory file and extend `th` with its declarations; conjectures
/// are checked but dropped.
pub fn load_theory(th: &Theory, text: &str) -> Result<Theory, SyntaxError> {
    Ok(elaborate(th, &parse_theory(text)?)?.theory)
}

/// Parse a theory file and return the extended theory and its conjectures.
pub fn load(th: &Theory, text: &str) -> Result<Loaded, SyntaxError> {
    elaborate(th, &parse_theory(text)?)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Ident(s) => f.write_str(s),
            ExprKind::Num(n) => write!(f, "{n}"),
            ExprKind::List(items) => {
                f.write_str("[")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
            ExprKind::Apply(h, args) => {
                write!(f, "{h}(")?;
                for (i, e) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            ExprKind::Binary(op, l, r) => {
                let wrap = |e: &Expr| matches!(e.kind, ExprKind::Binary(..) | ExprKind::Not(_));
                if wrap(l) {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {op} ")?;
                if wrap(r) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            ExprKind::Not(e) => {
                if matches!(e.kind, ExprKind::Binary(..)) {
                    write!(f, "~({e})")
                } else {
                    write!(f, "~{e}")
                }
            }
        }
    }
}

/// Render a theory file back to source text.
pub fn print_theory(file: &TheoryFile) -> String {
    let mut out = String::new();
    for d in &file.decls {
        match &d.kind {
            DeclKind::Shell {
                name,
                bottoms,
                cons,
            } => {
                out.push_str(&format!("shell {name} {{\n"));
                if !bottoms.is_empty() {
                    out.push_str(&format!("  bottom {};\n", bottoms.join(", ")));
                }
                for c in cons {
                    out.push_str(&format!("  con {}({})", c.name, c.sorts.join(", ")));
                    if !c.accessors.is_empty() {
                        out.push_str(&format!(" accessors ({})", c.accessors.join(", ")));
                    }
                    out.push_str(";\n");
                }
                out.push_str("}\n");
            }
            DeclKind::Define {
                name,
                params,
                result,
                equations,
            } => {
                out.push_str(&format!(
                    "define {name}({}): {result} {{\n",
                    params.join(", ")
                ));
                for e in equations {
                    out.push_str(&format!("  {e};\n"));
                }
                out.push_str("}\n");
            }
            DeclKind::Rewrite(e) => out.push_str(&format!("rewrite {e};\n")),
            DeclKind::GenLemma(e) => out.push_str(&format!("genlemma {e};\n")),
            DeclKind::Conjecture { name, goal } => {
                out.push_str(&format!("conjecture \"{name}\" {goal};\n"))
            }
        }
    }
    out
}
