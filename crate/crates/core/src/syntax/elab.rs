//! Elaboration of parsed expressions into well-sorted terms.

use std::collections::HashMap;

use super::lexer::Pos;
use super::{DeclKind, Expr, ExprKind, SyntaxError, TheoryFile, OPS};
use crate::term::{sym, Name, Term};
use crate::theory::{FnSpec, ShellSpec, Theory, POLY};

/// Largest numeral expanded into a constructor chain.
pub const MAX_NUMERAL: u64 = 4096;

#[derive(Clone, Debug)]
pub struct Conjecture {
    pub name: String,
    pub goal: Term,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub theory: Theory,
    pub conjectures: Vec<Conjecture>,
}

enum Node {
    Var(String, usize, Pos),
    App(Name, Vec<Node>, Option<usize>),
    Numeral(u64),
}

struct Infer<'a> {
    th: &'a Theory,
    parent: Vec<usize>,
    sort: Vec<Option<Name>>,
    vars: HashMap<String, usize>,
}

impl<'a> Infer<'a> {
    fn new(th: &'a Theory) -> Self {
        Infer {
            th,
            parent: Vec::new(),
            sort: Vec::new(),
            vars: HashMap::new(),
        }
    }

    fn fresh(&mut self, s: Option<Name>) -> usize {
        self.parent.push(self.parent.len());
        self.sort.push(s);
        self.parent.len() - 1
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn unify(&mut self, a: usize, b: usize, pos: Pos, ctx: &str) -> Result<(), SyntaxError> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(());
        }
        match (self.sort[ra].clone(), self.sort[rb].clone()) {
            (Some(x), Some(y)) if x != y => Err(SyntaxError::at(
                pos,
                format!("sort mismatch in {ctx}: expected {x}, found {y}"),
            )),
            (sa, sb) => {
                self.parent[rb] = ra;
                self.sort[ra] = sa.or(sb);
                Ok(())
            }
        }
    }

    fn concrete(&mut self, s: &str) -> usize {
        self.fresh(Some(s.into()))
    }

    fn symbol_node(
        &mut self,
        name: &str,
        args: &[Expr],
        pos: Pos,
    ) -> Result<(Node, usize), SyntaxError> {
        let info = self
            .th
            .symbol(name)
            .ok_or_else(|| SyntaxError::at(pos, format!("unknown symbol `{name}`")))?
            .clone();
        if info.params.len() != args.len() {
            return Err(SyntaxError::at(
                pos,
                format!(
                    "`{name}` expects {} argument(s), got {}",
                    info.params.len(),
                    args.len()
                ),
            ));
        }
        let poly = info
            .params
            .iter()
            .chain(std::iter::once(&info.result))
            .any(|p| &**p == POLY)
            .then(|| self.fresh(None));
        let mut nodes = Vec::with_capacity(args.len());
        for (a, p) in args.iter().zip(&info.params) {
            let (n, ty) = self.infer(a)?;
            let want = if &**p == POLY {
                poly.expect("polymorphic slot")
            } else {
                self.concrete(p)
            };
            self.unify(want, ty, a.pos, &format!("argument of `{name}`"))?;
            nodes.push(n);
        }
        let result = if &*info.result == POLY {
            poly.expect("polymorphic result")
        } else {
            self.concrete(&info.result)
        };
        Ok((Node::App(name.into(), nodes, poly), result))
    }

    fn infer(&mut self, e: &Expr) -> Result<(Node, usize), SyntaxError> {
        match &e.kind {
            ExprKind::Ident(name) => {
                if self.th.symbol(name).is_some() {
                    return self.symbol_node(name, &[], e.pos);
                }
                let ty = match self.vars.get(name) {
                    Some(&t) => t,
                    None => {
                        let t = self.fresh(None);
                        self.vars.insert(name.clone(), t);
                        t
                    }
                };
                Ok((Node::Var(name.clone(), ty, e.pos), ty))
            }
            ExprKind::Num(n) => {
                if *n > MAX_NUMERAL {
                    return Err(SyntaxError::at(
                        e.pos,
                        format!("numeral {n} exceeds {MAX_NUMERAL}"),
                    ));
                }
                for s in ["0", "SUC"] {
                    if self.th.symbol(s).is_none() {
                        return Err(SyntaxError::at(
                            e.pos,
                            format!("numerals need the symbol `{s}`"),
                        ));
                    }
                }
                let sort = self.th.symbol("0").expect("checked").result.clone();
                Ok((Node::Numeral(*n), self.concrete(&sort)))
            }
            ExprKind::List(items) => {
                let nil = Expr {
                    kind: ExprKind::Ident("NIL".into()),
                    pos: e.pos,
                };
                let desugared = items.iter().rev().fold(nil, |acc, item| Expr {
                    kind: ExprKind::Apply("CONS".into(), vec![item.clone(), acc]),
                    pos: item.pos,
                });
                self.infer(&desugared)
            }
            ExprKind::Apply(name, args) => {
                if self.th.symbol(name).is_none() && !args.is_empty() {
                    return Err(SyntaxError::at(
                        e.pos,
                        format!("unknown symbol `{name}` applied to arguments"),
                    ));
                }
                self.symbol_node(name, args, e.pos)
            }
            ExprKind::Binary(op, l, r) => {
                let info = OPS.iter().find(|o| o.token == *op).expect("table operator");
                self.symbol_node(info.symbol, &[(**l).clone(), (**r).clone()], e.pos)
            }
            ExprKind::Not(x) => self.symbol_node(sym::NOT, &[(**x).clone()], e.pos),
        }
    }

    fn resolve(&mut self, ty: usize, pos: Pos, what: &str) -> Result<Name, SyntaxError> {
        let r = self.find(ty);
        if let Some(s) = &self.sort[r] {
            return Ok(s.clone());
        }
        if self.th.has_sort("num") {
            self.sort[r] = Some("num".into());
            return Ok("num".into());
        }
        Err(SyntaxError::at(
            pos,
            format!("cannot infer the sort of {what}"),
        ))
    }

    fn build(&mut self, n: &Node) -> Result<Term, SyntaxError> {
        match n {
            Node::Var(name, ty, pos) => {
                let s = self.resolve(*ty, *pos, &format!("`{name}`"))?;
                Ok(Term::var(name, &s))
            }
            Node::Numeral(n) => {
                let mut t = Term::constant("0");
                for _ in 0..*n {
                    t = Term::app("SUC", vec![t]);
                }
                Ok(t)
            }
            Node::App(f, args, poly) => {
                let built = args
                    .iter()
                    .map(|a| self.build(a))
                    .collect::<Result<Vec<_>, _>>()?;
                if &**f == sym::EQ {
                    let p = poly.expect("eq is polymorphic");
                    let r = self.find(p);
                    if self.sort[r].as_deref() == Some(sym::BOOL) {
                        return Ok(Term::App(sym::IFF.into(), built));
                    }
                }
                Ok(Term::App(f.clone(), built))
            }
        }
    }
}

fn elaborate_with_sort(th: &Theory, e: &Expr, want: Option<&str>) -> Result<Term, SyntaxError> {
    let mut inf = Infer::new(th);
    let (node, ty) = inf.infer(e)?;
    if let Some(w) = want {
        let c = inf.concrete(w);
        inf.unify(c, ty, e.pos, "term")?;
    }
    inf.build(&node)
}

pub(crate) fn elaborate_term(th: &Theory, e: &Expr) -> Result<Term, SyntaxError> {
    elaborate_with_sort(th, e, None)
}

fn elaborate_formula(th: &Theory, e: &Expr) -> Result<Term, SyntaxError> {
    elaborate_with_sort(th, e, Some(sym::BOOL))
}

fn theory_err(pos: Pos, e: crate::theory::TheoryError) -> SyntaxError {
    SyntaxError::at(pos, e.to_string())
}

/// Apply the declarations of `file` to `base` in order.
pub fn elaborate(base: &Theory, file: &TheoryFile) -> Result<Loaded, SyntaxError> {
    let mut th = base.clone();
    let mut conjectures: Vec<Conjecture> = Vec::new();
    for d in &file.decls {
        match &d.kind {
            DeclKind::Shell {
                name,
                bottoms,
                cons,
            } => {
                let spec = ShellSpec {
                    name: name.clone(),
                    bottoms: bottoms.clone(),
                    constructors: cons
                        .iter()
                        .map(|c| (c.name.clone(), c.sorts.clone(), c.accessors.clone()))
                        .collect(),
                };
                th = th.define_shell(&spec).map_err(|e| theory_err(d.pos, e))?;
            }
            DeclKind::Define {
                name,
                params,
                result,
                equations,
            } => {
                let scratch = th
                    .declare(name, params, result)
                    .map_err(|e| theory_err(d.pos, e))?;
                let eqs = equations
                    .iter()
                    .map(|e| elaborate_formula(&scratch, e))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = FnSpec {
                    name: name.clone(),
                    params: params.clone(),
                    result: result.clone(),
                    equations: eqs,
                };
                th = th
                    .define_function(&spec)
                    .map_err(|e| theory_err(d.pos, e))?;
            }
            DeclKind::Rewrite(e) => {
                let t = elaborate_formula(&th, e)?;
                th = th
                    .add_rewrite_rule(&t)
                    .map_err(|err| theory_err(e.pos, err))?;
            }
            DeclKind::GenLemma(e) => {
                let t = elaborate_formula(&th, e)?;
                th = th
                    .add_generalization_lemma(&t)
                    .map_err(|err| theory_err(e.pos, err))?;
            }
            DeclKind::Conjecture { name, goal } => {
                if conjectures.iter().any(|c| &c.name == name) {
                    return Err(SyntaxError::at(
                        d.pos,
                        format!("duplicate conjecture name `{name}`"),
                    ));
                }
                let t = elaborate_formula(&th, goal)?;
                conjectures.push(Conjecture {
                    name: name.clone(),
                    goal: t,
                });
            }
        }
    }
    Ok(Loaded {
        theory: th,
        conjectures,
    })
}
