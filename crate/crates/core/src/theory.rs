//! Shells, function definitions, rewrite rules and generalization lemmas.
//!
//! A [`Theory`] is a persistent value: every `define_*`/`add_*` method returns
//! a new theory and leaves the receiver untouched, so one theory can be shared
//! by any number of concurrent proof attempts.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::rewrite::ArithOps;
use crate::term::{free_vars, match_pattern, sym, Name, Term, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("name `{0}` is already declared")]
    DuplicateName(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("shell `{0}` has no bottom object")]
    ShellWithoutBottom(String),
    #[error(
        "constructor `{ctor}` takes {expected} argument(s) but {given} accessor(s) were given"
    )]
    AccessorArity {
        ctor: String,
        expected: usize,
        given: usize,
    },
    #[error("definition of `{0}` has no equations")]
    EmptyDefinition(String),
    #[error("equation for `{f}` does not define `{f}`: {eq}")]
    ForeignEquation { f: String, eq: String },
    #[error(
        "`{f}`: argument patterns must be variables or a constructor applied to distinct variables"
    )]
    BadPattern { f: String },
    #[error("`{f}` destructures more than one argument position")]
    MultipleRecursivePositions { f: String },
    #[error("`{f}`: no equation for constructor `{ctor}`")]
    MissingCase { f: String, ctor: String },
    #[error("`{f}`: constructor `{ctor}` is covered twice")]
    DuplicateCase { f: String, ctor: String },
    #[error("`{f}` is not primitive recursive: {detail}")]
    NonPrimitiveRecursion { f: String, detail: String },
    #[error("right-hand side or condition mentions variables absent from the left-hand side: {0}")]
    ExtraVariables(String),
    #[error("rewrite rule must have a non-variable left-hand side: {0}")]
    BadRule(String),
    #[error("expected a boolean term: {0}")]
    NotBoolean(String),
    #[error("`{f}` expects {expected} argument(s), got {given}")]
    Arity {
        f: String,
        expected: usize,
        given: usize,
    },
    #[error("sort mismatch in {context}: expected {expected}, found {found}")]
    SortMismatch {
        context: String,
        expected: String,
        found: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Builtin,
    Constructor {
        shell: Name,
    },
    Accessor {
        shell: Name,
        ctor: Name,
        index: usize,
    },
    Function,
}

#[derive(Clone, Debug)]
pub struct SymbolInfo {
    pub kind: SymbolKind,
    /// Parameter sorts; `*` marks the polymorphic slots of `eq` and `ite`.
    pub params: Vec<Name>,
    pub result: Name,
    /// Registration order, used by the term order.
    pub index: usize,
}

pub const POLY: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constructor {
    pub name: Name,
    pub arg_sorts: Vec<Name>,
    pub accessors: Vec<Name>,
}

impl Constructor {
    pub fn is_bottom(&self) -> bool {
        self.arg_sorts.is_empty()
    }
}

/// One case of a structural induction: the constructor and the argument
/// positions that receive an induction hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionCase {
    pub constructor: Name,
    pub arg_sorts: Vec<Name>,
    pub hypotheses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shell {
    pub name: Name,
    pub constructors: Vec<Constructor>,
    pub induction_scheme: Vec<InductionCase>,
    /// Variable base name used for fresh variables of this sort.
    pub var_base: String,
}

impl Shell {
    pub fn bottom_objects(&self) -> impl Iterator<Item = &Constructor> {
        self.constructors.iter().filter(|c| c.is_bottom())
    }

    pub fn non_bottom(&self) -> impl Iterator<Item = &Constructor> {
        self.constructors.iter().filter(|c| !c.is_bottom())
    }

    pub fn constructor(&self, name: &str) -> Option<&Constructor> {
        self.constructors.iter().find(|c| &*c.name == name)
    }

    fn arg_names(&self, th: &Theory, c: &Constructor, avoid: &[String]) -> Vec<String> {
        let mut taken: Vec<String> = avoid.to_vec();
        c.arg_sorts
            .iter()
            .map(|s| {
                let base = th.var_base(s);
                let name = crate::term::variant_name(&base, &|n| taken.iter().any(|t| t == n));
                taken.push(name.clone());
                name
            })
            .collect()
    }

    fn applied(&self, c: &Constructor, args: &[String]) -> String {
        if args.is_empty() {
            c.name.to_string()
        } else {
            format!("{} {}", c.name, args.join(" "))
        }
    }

    /// Induction theorem in the usual textbook notation.
    pub fn induction_theorem(&self, th: &Theory) -> String {
        let v = self.var_base.clone();
        let mut parts = Vec::new();
        for case in &self.induction_scheme {
            let c = self
                .constructor(&case.constructor)
                .expect("scheme names a constructor");
            let args = self.arg_names(th, c, &[]);
            if args.is_empty() {
                parts.push(format!("P {}", c.name));
                continue;
            }
            let hyps: Vec<String> = case
                .hypotheses
                .iter()
                .map(|&i| format!("P {}", args[i]))
                .collect();
            let concl = format!("P ({})", self.applied(c, &args));
            let body = if hyps.is_empty() {
                concl
            } else {
                format!("{} ⇒ {}", hyps.join(" ∧ "), concl)
            };
            parts.push(format!("(∀{}. {})", args.join(" "), body));
        }
        format!("{} ⇒ ∀{v}. P {v}", parts.join(" ∧ "))
    }

    /// Case-split theorem: every value is a bottom object or a constructor application.
    pub fn cases_theorem(&self, th: &Theory) -> String {
        let x = if self.var_base == "m" {
            "n".to_string()
        } else {
            "m".to_string()
        };
        let x = if self.var_base == "n" {
            "m".to_string()
        } else {
            x
        };
        let disjuncts: Vec<String> = self
            .constructors
            .iter()
            .map(|c| {
                let args = self.arg_names(th, c, std::slice::from_ref(&x));
                if args.is_empty() {
                    format!("{x} = {}", c.name)
                } else {
                    format!("(∃{}. {x} = {})", args.join(" "), self.applied(c, &args))
                }
            })
            .collect();
        format!("∀{x}. {}", disjuncts.join(" ∨ "))
    }

    pub fn distinctness_theorems(&self, th: &Theory) -> Vec<String> {
        let mut out = Vec::new();
        for (i, a) in self.constructors.iter().enumerate() {
            for b in self.constructors.iter().skip(i + 1) {
                let xa = self.arg_names(th, a, &[]);
                let xb = self.arg_names(th, b, &xa);
                let all: Vec<String> = xa.iter().chain(xb.iter()).cloned().collect();
                let quant = if all.is_empty() {
                    String::new()
                } else {
                    format!("∀{}. ", all.join(" "))
                };
                let (l, r) = if a.is_bottom() && !b.is_bottom() {
                    (self.applied(b, &xb), self.applied(a, &xa))
                } else {
                    (self.applied(a, &xa), self.applied(b, &xb))
                };
                out.push(format!("{quant}¬({l} = {r})"));
            }
        }
        out
    }

    pub fn injectivity_theorems(&self, th: &Theory) -> Vec<String> {
        self.non_bottom()
            .map(|c| {
                let base = th.var_base(&c.arg_sorts[0]);
                let first = if base == "n" { "m".to_string() } else { base };
                let xs = self.arg_names(th, c, std::slice::from_ref(&first));
                let xs: Vec<String> = if xs.len() == 1 {
                    vec![first.clone()]
                } else {
                    xs
                };
                let ys = self.arg_names(th, c, &xs);
                let eqs: Vec<String> = xs
                    .iter()
                    .zip(&ys)
                    .map(|(x, y)| format!("{x} = {y}"))
                    .collect();
                let all: Vec<String> = xs.iter().chain(ys.iter()).cloned().collect();
                format!(
                    "∀{}. {} = {} ⇔ {}",
                    all.join(" "),
                    self.applied(c, &xs),
                    self.applied(c, &ys),
                    eqs.join(" ∧ ")
                )
            })
            .collect()
    }

    pub fn accessor_theorems(&self, th: &Theory) -> Vec<String> {
        let mut out = Vec::new();
        for c in self.non_bottom() {
            let xs = self.arg_names(th, c, &[]);
            for (i, a) in c.accessors.iter().enumerate() {
                out.push(format!(
                    "∀{}. {} ({}) = {}",
                    xs.join(" "),
                    a,
                    self.applied(c, &xs),
                    xs[i]
                ));
            }
        }
        out
    }

    /// Multi-line summary in the layout of a classic shell table.
    pub fn describe(&self, th: &Theory) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Name: \"{}\"", self.name);
        let bottoms: Vec<&str> = self.bottom_objects().map(|c| &*c.name).collect();
        let _ = writeln!(s, "Bottom Object: {}", bottoms.join(", "));
        let cons: Vec<String> = self
            .non_bottom()
            .map(|c| {
                let sorts: Vec<&str> = c.arg_sorts.iter().map(|x| &**x).collect();
                format!("{} ({})", c.name, sorts.join(", "))
            })
            .collect();
        let _ = writeln!(s, "Constructors: {}", cons.join(", "));
        for a in self.accessor_theorems(th) {
            let _ = writeln!(s, "Accessors: ⊢ {a}");
        }
        let _ = writeln!(s, "Induction theorem: ⊢ ∀P. {}", self.induction_theorem(th));
        let _ = writeln!(s, "Cases theorem: ⊢ {}", self.cases_theorem(th));
        for d in self.distinctness_theorems(th) {
            let _ = writeln!(s, "Distinctness theorem(s): ⊢ {d}");
        }
        for i in self.injectivity_theorems(th) {
            let _ = writeln!(s, "One-one restriction(s): ⊢ {i}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Debug)]
pub struct FnDef {
    pub name: Name,
    pub params: Vec<Name>,
    pub result: Name,
    pub equations: Vec<Equation>,
    /// The destructured argument, if the definition is by cases.
    pub recursive_arg_position: Option<usize>,
    pub is_recursive: bool,
}

#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub condition: Option<Term>,
    pub lhs: Term,
    pub rhs: Term,
    pub permutative: bool,
}

#[derive(Clone, Debug)]
pub struct ShellSpec {
    pub name: String,
    pub bottoms: Vec<String>,
    pub constructors: Vec<(String, Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug)]
pub struct FnSpec {
    pub name: String,
    pub params: Vec<String>,
    pub result: String,
    pub equations: Vec<Term>,
}

#[derive(Clone, Debug, Default)]
pub struct Theory {
    symbols: HashMap<Name, SymbolInfo>,
    order: Vec<Name>,
    shells: Vec<Arc<Shell>>,
    defs: HashMap<Name, Arc<FnDef>>,
    rules: Vec<Arc<RewriteRule>>,
    lemmas: Vec<Term>,
    arith: OnceLock<Arc<ArithOps>>,
}

impl Theory {
    /// Empty theory holding the reserved symbols and the `bool` shell.
    pub fn new() -> Theory {
        let mut th = Theory::default();
        let b: Name = sym::BOOL.into();
        let poly: Name = POLY.into();
        let builtin = |params: Vec<Name>, result: Name| (params, result);
        let table: Vec<(&str, (Vec<Name>, Name))> = vec![
            (sym::TRUE, builtin(vec![], b.clone())),
            (sym::FALSE, builtin(vec![], b.clone())),
            (sym::NOT, builtin(vec![b.clone()], b.clone())),
            (sym::OR, builtin(vec![b.clone(), b.clone()], b.clone())),
            (sym::AND, builtin(vec![b.clone(), b.clone()], b.clone())),
            (sym::IMP, builtin(vec![b.clone(), b.clone()], b.clone())),
            (sym::IFF, builtin(vec![b.clone(), b.clone()], b.clone())),
            (
                sym::EQ,
                builtin(vec![poly.clone(), poly.clone()], b.clone()),
            ),
            (
                sym::ITE,
                builtin(vec![b.clone(), poly.clone(), poly.clone()], poly.clone()),
            ),
        ];
        for (name, (params, result)) in table {
            th.register(name, SymbolKind::Builtin, params, result);
        }
        th.shells.push(Arc::new(Shell {
            name: b.clone(),
            constructors: vec![
                Constructor {
                    name: sym::TRUE.into(),
                    arg_sorts: vec![],
                    accessors: vec![],
                },
                Constructor {
                    name: sym::FALSE.into(),
                    arg_sorts: vec![],
                    accessors: vec![],
                },
            ],
            induction_scheme: vec![
                InductionCase {
                    constructor: sym::TRUE.into(),
                    arg_sorts: vec![],
                    hypotheses: vec![],
                },
                InductionCase {
                    constructor: sym::FALSE.into(),
                    arg_sorts: vec![],
                    hypotheses: vec![],
                },
            ],
            var_base: "b".into(),
        }));
        th
    }

    fn register(&mut self, name: &str, kind: SymbolKind, params: Vec<Name>, result: Name) {
        let index = self.order.len();
        let n: Name = name.into();
        self.order.push(n.clone());
        self.symbols.insert(
            n,
            SymbolInfo {
                kind,
                params,
                result,
                index,
            },
        );
    }

    fn check_fresh(&self, name: &str) -> Result<(), TheoryError> {
        if self.symbols.contains_key(name) || self.shells.iter().any(|s| &*s.name == name) {
            Err(TheoryError::DuplicateName(name.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn symbol(&self, name: &str) -> Option<&SymbolInfo> {
        self.symbols.get(name)
    }

    pub fn symbol_index(&self, name: &str) -> usize {
        self.symbols
            .get(name)
            .map(|s| s.index)
            .unwrap_or(usize::MAX)
    }

    pub fn has_sort(&self, sort: &str) -> bool {
        self.shells.iter().any(|s| &*s.name == sort)
    }

    pub fn shells(&self) -> &[Arc<Shell>] {
        &self.shells
    }

    pub fn shell(&self, sort: &str) -> Option<&Shell> {
        self.shells.iter().find(|s| &*s.name == sort).map(|s| &**s)
    }

    pub fn shell_of_constructor(&self, ctor: &str) -> Option<&Shell> {
        match self.symbols.get(ctor).map(|s| &s.kind) {
            Some(SymbolKind::Constructor { shell }) => self.shell(shell),
            _ if ctor == sym::TRUE || ctor == sym::FALSE => self.shell(sym::BOOL),
            _ => None,
        }
    }

    pub fn is_constructor(&self, f: &str) -> bool {
        matches!(
            self.symbols.get(f).map(|s| &s.kind),
            Some(SymbolKind::Constructor { .. })
        ) || f == sym::TRUE
            || f == sym::FALSE
    }

    pub fn is_bottom(&self, f: &str) -> bool {
        self.is_constructor(f) && self.symbols.get(f).is_some_and(|s| s.params.is_empty())
    }

    pub fn is_accessor(&self, f: &str) -> bool {
        matches!(
            self.symbols.get(f).map(|s| &s.kind),
            Some(SymbolKind::Accessor { .. })
        )
    }

    /// Shell-level symbol: constructors, bottom objects and accessors.
    pub fn is_shell_symbol(&self, f: &str) -> bool {
        self.is_constructor(f) || self.is_accessor(f)
    }

    pub fn is_defined(&self, f: &str) -> bool {
        self.defs.contains_key(f)
    }

    pub fn fn_def(&self, f: &str) -> Option<&FnDef> {
        self.defs.get(f).map(|d| &**d)
    }

    pub fn fn_defs(&self) -> impl Iterator<Item = &FnDef> {
        self.order
            .iter()
            .filter_map(|n| self.defs.get(n))
            .map(|d| &**d)
    }

    /// Recursive argument position of a recursively defined function.
    pub fn recursive_position(&self, f: &str) -> Option<usize> {
        self.defs
            .get(f)
            .filter(|d| d.is_recursive)
            .and_then(|d| d.recursive_arg_position)
    }

    pub fn rules(&self) -> &[Arc<RewriteRule>] {
        &self.rules
    }

    pub fn generalization_lemmas(&self) -> &[Term] {
        &self.lemmas
    }

    pub fn var_base(&self, sort: &str) -> String {
        if let Some(s) = self.shell(sort) {
            return s.var_base.clone();
        }
        sort.chars()
            .next()
            .map(|c| c.to_lowercase().to_string())
            .unwrap_or_else(|| "x".into())
    }

    pub(crate) fn arith(&self) -> Arc<ArithOps> {
        self.arith
            .get_or_init(|| Arc::new(ArithOps::detect(self)))
            .clone()
    }

    fn invalidate(&mut self) {
        self.arith = OnceLock::new();
    }

    /// Sort of a term, if it is well formed enough to have one.
    pub fn sort_of(&self, t: &Term) -> Option<Name> {
        match t {
            Term::Var(v) => Some(v.sort.clone()),
            Term::App(f, args) => {
                if &**f == sym::ITE {
                    return args.get(1).and_then(|a| self.sort_of(a));
                }
                self.symbols.get(f).map(|s| s.result.clone())
            }
        }
    }

    pub fn is_bool(&self, t: &Term) -> bool {
        self.sort_of(t).as_deref() == Some(sym::BOOL)
    }

    /// Arity and sort check.
    pub fn check_term(&self, t: &Term) -> Result<Name, TheoryError> {
        match t {
            Term::Var(v) => {
                if self.has_sort(&v.sort) {
                    Ok(v.sort.clone())
                } else {
                    Err(TheoryError::UnknownSort(v.sort.to_string()))
                }
            }
            Term::App(f, args) => {
                let info = self
                    .symbols
                    .get(f)
                    .ok_or_else(|| TheoryError::UnknownSymbol(f.to_string()))?;
                if info.params.len() != args.len() {
                    return Err(TheoryError::Arity {
                        f: f.to_string(),
                        expected: info.params.len(),
                        given: args.len(),
                    });
                }
                let sorts = args
                    .iter()
                    .map(|a| self.check_term(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut poly: Option<Name> = None;
                for (p, s) in info.params.iter().zip(&sorts) {
                    if &**p == POLY {
                        match &poly {
                            None => poly = Some(s.clone()),
                            Some(q) if q == s => {}
                            Some(q) => {
                                return Err(TheoryError::SortMismatch {
                                    context: crate::syntax::print_term(t),
                                    expected: q.to_string(),
                                    found: s.to_string(),
                                })
                            }
                        }
                    } else if p != s {
                        return Err(TheoryError::SortMismatch {
                            context: crate::syntax::print_term(t),
                            expected: p.to_string(),
                            found: s.to_string(),
                        });
                    }
                }
                if &*info.result == POLY {
                    Ok(poly.expect("polymorphic result has a polymorphic argument"))
                } else {
                    Ok(info.result.clone())
                }
            }
        }
    }

    pub fn define_shell(&self, spec: &ShellSpec) -> Result<Theory, TheoryError> {
        let mut th = self.clone();
        th.check_fresh(&spec.name)?;
        if spec.bottoms.is_empty() {
            return Err(TheoryError::ShellWithoutBottom(spec.name.clone()));
        }
        let shell_name: Name = spec.name.as_str().into();
        let mut constructors = Vec::new();
        for b in &spec.bottoms {
            th.check_fresh(b)?;
            th.register(
                b,
                SymbolKind::Constructor {
                    shell: shell_name.clone(),
                },
                vec![],
                shell_name.clone(),
            );
            constructors.push(Constructor {
                name: b.as_str().into(),
                arg_sorts: vec![],
                accessors: vec![],
            });
        }
        for (c, sorts, accessors) in &spec.constructors {
            th.check_fresh(c)?;
            for s in sorts {
                if s != &spec.name && !th.has_sort(s) {
                    return Err(TheoryError::UnknownSort(s.clone()));
                }
            }
            if !accessors.is_empty() && accessors.len() != sorts.len() {
                return Err(TheoryError::AccessorArity {
                    ctor: c.clone(),
                    expected: sorts.len(),
                    given: accessors.len(),
                });
            }
            let arg_sorts: Vec<Name> = sorts.iter().map(|s| s.as_str().into()).collect();
            th.register(
                c,
                SymbolKind::Constructor {
                    shell: shell_name.clone(),
                },
                arg_sorts.clone(),
                shell_name.clone(),
            );
            let ctor_name: Name = c.as_str().into();
            for (i, a) in accessors.iter().enumerate() {
                th.check_fresh(a)?;
                th.register(
                    a,
                    SymbolKind::Accessor {
                        shell: shell_name.clone(),
                        ctor: ctor_name.clone(),
                        index: i,
                    },
                    vec![shell_name.clone()],
                    arg_sorts[i].clone(),
                );
            }
            constructors.push(Constructor {
                name: ctor_name,
                arg_sorts,
                accessors: accessors.iter().map(|a| a.as_str().into()).collect(),
            });
        }
        let induction_scheme = constructors
            .iter()
            .map(|c| InductionCase {
                constructor: c.name.clone(),
                arg_sorts: c.arg_sorts.clone(),
                hypotheses: c
                    .arg_sorts
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| ***s == *spec.name)
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect();
        let var_base = spec
            .name
            .chars()
            .next()
            .map(|c| c.to_lowercase().to_string())
            .unwrap_or_else(|| "x".into());
        th.shells.push(Arc::new(Shell {
            name: shell_name,
            constructors,
            induction_scheme,
            var_base,
        }));
        th.invalidate();
        Ok(th)
    }

    /// Theory with `name` registered as an undefined function, used to
    /// elaborate the equations of its own definition.
    pub(crate) fn declare(
        &self,
        name: &str,
        params: &[String],
        result: &str,
    ) -> Result<Theory, TheoryError> {
        let mut th = self.clone();
        th.check_fresh(name)?;
        for s in params
            .iter()
            .map(String::as_str)
            .chain(std::iter::once(result))
        {
            if !th.has_sort(s) {
                return Err(TheoryError::UnknownSort(s.to_string()));
            }
        }
        th.register(
            name,
            SymbolKind::Function,
            params.iter().map(|s| s.as_str().into()).collect(),
            result.into(),
        );
        Ok(th)
    }

    /// Validate and register a definition by primitive recursion on at most one
    /// argument position.
    pub fn define_function(&self, spec: &FnSpec) -> Result<Theory, TheoryError> {
        let mut th = self.clone();
        th.check_fresh(&spec.name)?;
        let f = spec.name.clone();
        for s in spec.params.iter().chain(std::iter::once(&spec.result)) {
            if !th.has_sort(s) {
                return Err(TheoryError::UnknownSort(s.clone()));
            }
        }
        if spec.equations.is_empty() {
            return Err(TheoryError::EmptyDefinition(f));
        }
        let params: Vec<Name> = spec.params.iter().map(|s| s.as_str().into()).collect();
        let result: Name = spec.result.as_str().into();
        // Register first so equations may mention `f`.
        th.register(&f, SymbolKind::Function, params.clone(), result.clone());

        let mut equations = Vec::new();
        for eq in &spec.equations {
            let (lhs, rhs) = match eq {
                Term::App(h, args) if (&**h == sym::EQ || &**h == sym::IFF) && args.len() == 2 => {
                    (args[0].clone(), args[1].clone())
                }
                _ => {
                    return Err(TheoryError::ForeignEquation {
                        f,
                        eq: crate::syntax::print_term(eq),
                    })
                }
            };
            if lhs.head() != Some(f.as_str()) {
                return Err(TheoryError::ForeignEquation {
                    f,
                    eq: crate::syntax::print_term(eq),
                });
            }
            th.check_term(&lhs)?;
            let rs = th.check_term(&rhs)?;
            if *rs != *result {
                return Err(TheoryError::SortMismatch {
                    context: format!("definition of {f}"),
                    expected: result.to_string(),
                    found: rs.to_string(),
                });
            }
            equations.push(Equation { lhs, rhs });
        }

        // Locate the destructured position.
        let mut pos: Option<usize> = None;
        for eq in &equations {
            let mut vars: Vec<Var> = Vec::new();
            for (i, a) in eq.lhs.args().iter().enumerate() {
                match a {
                    Term::Var(v) => vars.push(v.clone()),
                    Term::App(c, cargs) if th.is_constructor(c) => {
                        if cargs.iter().any(|x| !x.is_var()) {
                            return Err(TheoryError::BadPattern { f });
                        }
                        vars.extend(cargs.iter().filter_map(|x| x.as_var().cloned()));
                        match pos {
                            None => pos = Some(i),
                            Some(p) if p == i => {}
                            Some(_) => return Err(TheoryError::MultipleRecursivePositions { f }),
                        }
                    }
                    _ => return Err(TheoryError::BadPattern { f }),
                }
            }
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != vars.len() {
                return Err(TheoryError::BadPattern { f });
            }
            let extra: Vec<String> = free_vars(&eq.rhs)
                .into_iter()
                .filter(|v| !vars.contains(v))
                .map(|v| v.name.to_string())
                .collect();
            if !extra.is_empty() {
                return Err(TheoryError::ExtraVariables(extra.join(", ")));
            }
        }

        let calls_self = |t: &Term| t.any_symbol(&|s| s == f.as_str());
        let is_recursive = equations.iter().any(|e| calls_self(&e.rhs));
        match pos {
            None => {
                if equations.len() != 1 {
                    return Err(TheoryError::BadPattern { f });
                }
                if is_recursive {
                    return Err(TheoryError::NonPrimitiveRecursion {
                        f,
                        detail: "recursive call without a destructured argument".into(),
                    });
                }
            }
            Some(p) => {
                let sort = params[p].clone();
                let shell = th
                    .shell(&sort)
                    .ok_or_else(|| TheoryError::UnknownSort(sort.to_string()))?;
                let mut seen: Vec<Name> = Vec::new();
                for eq in &equations {
                    let c = match &eq.lhs.args()[p] {
                        Term::App(c, _) => c.clone(),
                        Term::Var(_) => {
                            return Err(TheoryError::BadPattern { f });
                        }
                    };
                    if seen.contains(&c) {
                        return Err(TheoryError::DuplicateCase {
                            f,
                            ctor: c.to_string(),
                        });
                    }
                    seen.push(c);
                }
                for c in &shell.constructors {
                    if !seen.contains(&c.name) {
                        return Err(TheoryError::MissingCase {
                            f,
                            ctor: c.name.to_string(),
                        });
                    }
                }
                for eq in &equations {
                    let allowed: Vec<Term> = eq.lhs.args()[p]
                        .args()
                        .iter()
                        .filter(|a| th.sort_of(a).as_deref() == Some(&*sort))
                        .cloned()
                        .collect();
                    check_primitive_calls(&f, p, &eq.rhs, &allowed)?;
                }
            }
        }

        th.defs.insert(
            f.as_str().into(),
            Arc::new(FnDef {
                name: f.as_str().into(),
                params,
                result,
                equations,
                recursive_arg_position: pos,
                is_recursive,
            }),
        );
        th.invalidate();
        Ok(th)
    }

    /// Append a rewrite rule given as `cond ==> lhs = rhs`, `lhs = rhs`,
    /// `lhs <=> rhs`, or a bare literal (`P` rewrites to `T`, `~P` to `F`).
    pub fn add_rewrite_rule(&self, rule: &Term) -> Result<Theory, TheoryError> {
        let rule = parse_rule(self, rule)?;
        let mut th = self.clone();
        th.rules.push(Arc::new(rule));
        th.invalidate();
        Ok(th)
    }

    pub fn add_generalization_lemma(&self, lemma: &Term) -> Result<Theory, TheoryError> {
        if !self.is_bool(lemma) {
            return Err(TheoryError::NotBoolean(crate::syntax::print_term(lemma)));
        }
        let mut th = self.clone();
        th.lemmas.push(lemma.clone());
        Ok(th)
    }
}

fn check_primitive_calls(
    f: &str,
    pos: usize,
    t: &Term,
    allowed: &[Term],
) -> Result<(), TheoryError> {
    if let Term::App(g, args) = t {
        if &**g == f && !allowed.contains(&args[pos]) {
            return Err(TheoryError::NonPrimitiveRecursion {
                f: f.to_string(),
                detail: format!(
                    "recursive call on `{}`, not an immediate constructor argument",
                    crate::syntax::print_term(&args[pos])
                ),
            });
        }
        for a in args {
            check_primitive_calls(f, pos, a, allowed)?;
        }
    }
    Ok(())
}

pub(crate) fn parse_rule(th: &Theory, rule: &Term) -> Result<RewriteRule, TheoryError> {
    if !th.is_bool(rule) {
        return Err(TheoryError::NotBoolean(crate::syntax::print_term(rule)));
    }
    let (condition, body) = match rule {
        Term::App(f, args) if &**f == sym::IMP => (Some(args[0].clone()), args[1].clone()),
        _ => (None, rule.clone()),
    };
    let (lhs, rhs) = match &body {
        Term::App(f, args) if &**f == sym::EQ || &**f == sym::IFF => {
            (args[0].clone(), args[1].clone())
        }
        Term::App(f, args) if &**f == sym::NOT => (args[0].clone(), Term::f()),
        _ => (body.clone(), Term::t()),
    };
    if lhs.is_var() || lhs.is_true() || lhs.is_false() {
        return Err(TheoryError::BadRule(crate::syntax::print_term(rule)));
    }
    let lv = free_vars(&lhs);
    let mut extra: Vec<String> = free_vars(&rhs)
        .into_iter()
        .chain(condition.iter().flat_map(free_vars))
        .filter(|v| !lv.contains(v))
        .map(|v| v.name.to_string())
        .collect();
    extra.dedup();
    if !extra.is_empty() {
        return Err(TheoryError::ExtraVariables(extra.join(", ")));
    }
    let permutative =
        match_pattern(&lhs, &rhs, th).is_some() && match_pattern(&rhs, &lhs, th).is_some();
    Ok(RewriteRule {
        condition,
        lhs,
        rhs,
        permutative,
    })
}

/// Theories shipped with the crate.
pub mod bundled {
    use super::Theory;
    use crate::syntax;

    pub const PEANO: &str = include_str!("../theories/peano.bmt");
    pub const LISTS: &str = include_str!("../theories/lists.bmt");
    pub const SUITE_HOL: &str = include_str!("../theories/suite_hol.bmt");
    pub const SUITE_RIPPLING: &str = include_str!("../theories/suite_rippling.bmt");

    /// Source text of a bundled file by name (`peano`, `lists.bmt`, ...).
    pub fn source(name: &str) -> Option<&'static str> {
        match name.trim_end_matches(".bmt") {
            "peano" => Some(PEANO),
            "lists" => Some(LISTS),
            "suite_hol" => Some(SUITE_HOL),
            "suite_rippling" => Some(SUITE_RIPPLING),
            _ => None,
        }
    }

    pub fn peano() -> Theory {
        syntax::load_theory(&Theory::new(), PEANO).expect("bundled peano theory is well formed")
    }

    /// Peano arithmetic extended with lists of numbers.
    pub fn lists() -> Theory {
        syntax::load_theory(&peano(), LISTS).expect("bundled list theory is well formed")
    }
}
