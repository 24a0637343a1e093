use super::lexer::{tokenize, Pos, Tok, Token};
use super::{ConDecl, Decl, DeclKind, Expr, ExprKind, SyntaxError, TheoryFile, OPS, PREC_NOT};

pub struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: tokenize(src)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Op(o) => format!("`{o}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", Self::punct(other)),
        }
    }

    fn punct(t: &Tok) -> &'static str {
        match t {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Tilde => "~",
            _ => "?",
        }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError::at(
            self.pos(),
            format!("expected {wanted}, found {}", Self::describe(self.peek())),
        )
    }

    fn expect(&mut self, t: Tok) -> Result<Pos, SyntaxError> {
        if *self.peek() == t {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&format!("`{}`", Self::punct(&t))))
        }
    }

    /// Symbol name: identifier or numeral (for bottom objects such as `0`).
    fn name(&mut self) -> Result<(String, Pos), SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().pos)),
            Tok::Num(n) => Ok((n.to_string(), self.bump().pos)),
            _ => Err(self.unexpected("a name")),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&self) -> Result<(), SyntaxError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub fn expr(&mut self) -> Result<Expr, SyntaxError> {
        self.binary(0)
    }

    fn binary(&mut self, min_prec: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, pos) = match self.peek() {
                Tok::Op(o) => (*o, self.pos()),
                Tok::Ident(s) if s == "EXP" => ("EXP", self.pos()),
                _ => break,
            };
            let info = OPS
                .iter()
                .find(|o| o.token == op)
                .expect("lexer only emits table operators");
            if info.prec < min_prec {
                break;
            }
            self.bump();
            let next = match info.assoc {
                super::Assoc::Left | super::Assoc::Non => info.prec + 1,
                super::Assoc::Right => info.prec,
            };
            let rhs = self.binary(next)?;
            if info.assoc == super::Assoc::Non {
                if let Tok::Op(o2) = self.peek() {
                    let i2 = OPS.iter().find(|o| o.token == *o2).expect("table operator");
                    if i2.prec == info.prec {
                        return Err(SyntaxError::at(
                            self.pos(),
                            format!("operator `{o2}` is non-associative; add parentheses"),
                        ));
                    }
                }
            }
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if *self.peek() == Tok::Tilde {
            let pos = self.bump().pos;
            let inner = self.binary(PREC_NOT)?;
            return Ok(Expr {
                kind: ExprKind::Not(Box::new(inner)),
                pos,
            });
        }
        self.application()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => s != "EXP",
            Tok::Num(_) | Tok::LParen | Tok::LBracket => true,
            _ => false,
        }
    }

    fn application(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) if name != "EXP" => {
                let pos = self.bump().pos;
                let mut args = Vec::new();
                let mut applied = false;
                while self.starts_atom() {
                    applied = true;
                    if *self.peek() == Tok::LParen {
                        args.extend(self.paren_group()?);
                    } else {
                        args.push(self.atom()?);
                    }
                }
                let kind = if applied {
                    ExprKind::Apply(name, args)
                } else {
                    ExprKind::Ident(name)
                };
                Ok(Expr { kind, pos })
            }
            _ => self.atom(),
        }
    }

    /// Parenthesized, comma-separated group. A single element is just grouping.
    fn paren_group(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.expect(Tok::LParen)?;
        let mut items = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            items.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(items)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) if name != "EXP" => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Ident(name),
                    pos,
                })
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Num(n),
                    pos,
                })
            }
            Tok::LParen => {
                let mut items = self.paren_group()?;
                if items.len() != 1 {
                    return Err(SyntaxError::at(
                        pos,
                        "tuple is only allowed as function arguments",
                    ));
                }
                Ok(items.pop().expect("one item"))
            }
            Tok::LBracket => {
                self.bump();
                let mut items = Vec::new();
                if *self.peek() != Tok::RBracket {
                    items.push(self.expr()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        items.push(self.expr()?);
                    }
                }
                self.expect(Tok::RBracket)?;
                Ok(Expr {
                    kind: ExprKind::List(items),
                    pos,
                })
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn sort_list(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RParen {
            out.push(self.name()?.0);
            while *self.peek() == Tok::Comma {
                self.bump();
                out.push(self.name()?.0);
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    pub fn theory_file(&mut self) -> Result<TheoryFile, SyntaxError> {
        let mut decls = Vec::new();
        while !self.at_eof() {
            decls.push(self.decl()?);
        }
        Ok(TheoryFile { decls })
    }

    fn decl(&mut self) -> Result<Decl, SyntaxError> {
        let pos = self.pos();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        let kind = match kw.as_str() {
            "shell" => {
                self.bump();
                let (name, _) = self.name()?;
                self.expect(Tok::LBrace)?;
                let mut bottoms = Vec::new();
                let mut cons = Vec::new();
                while *self.peek() != Tok::RBrace {
                    match self.peek() {
                        Tok::Ident(s) if s == "bottom" => {
                            self.bump();
                            bottoms.push(self.name()?.0);
                            while *self.peek() == Tok::Comma {
                                self.bump();
                                bottoms.push(self.name()?.0);
                            }
                        }
                        Tok::Ident(s) if s == "con" => {
                            self.bump();
                            let (cname, _) = self.name()?;
                            let sorts = self.sort_list()?;
                            let accessors = match self.peek() {
                                Tok::Ident(s) if s == "accessors" => {
                                    self.bump();
                                    self.sort_list()?
                                }
                                _ => Vec::new(),
                            };
                            cons.push(ConDecl {
                                name: cname,
                                sorts,
                                accessors,
                            });
                        }
                        _ => return Err(self.unexpected("`bottom`, `con` or `}`")),
                    }
                    self.expect(Tok::Semi)?;
                }
                self.expect(Tok::RBrace)?;
                DeclKind::Shell {
                    name,
                    bottoms,
                    cons,
                }
            }
            "define" => {
                self.bump();
                let (name, _) = self.name()?;
                let params = self.sort_list()?;
                self.expect(Tok::Colon)?;
                let (result, _) = self.name()?;
                self.expect(Tok::LBrace)?;
                let mut equations = Vec::new();
                while *self.peek() != Tok::RBrace {
                    equations.push(self.expr()?);
                    self.expect(Tok::Semi)?;
                }
                self.expect(Tok::RBrace)?;
                DeclKind::Define {
                    name,
                    params,
                    result,
                    equations,
                }
            }
            "rewrite" | "genlemma" => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::Semi)?;
                if kw == "rewrite" {
                    DeclKind::Rewrite(e)
                } else {
                    DeclKind::GenLemma(e)
                }
            }
            "conjecture" => {
                self.bump();
                let name = match self.peek().clone() {
                    Tok::Str(s) => {
                        self.bump();
                        s
                    }
                    _ => return Err(self.unexpected("a quoted conjecture name")),
                };
                let e = self.expr()?;
                self.expect(Tok::Semi)?;
                DeclKind::Conjecture { name, goal: e }
            }
            _ => {
                return Err(
                    self.unexpected("`shell`, `define`, `rewrite`, `genlemma` or `conjecture`")
                )
            }
        };
        Ok(Decl { kind, pos })
    }
}
