//! Parsing and elaboration of workspaces.
//!
//! Declarations are checked in order; a name must be declared before use.

use std::collections::HashMap;

use crate::base::{mor_comp, mor_id, mor_tensor, BaseMor, BaseRule, Name, ObjectWord, Signature};
use crate::protocol::ProtocolWord;
use crate::term::{Corner, Term};

use super::ast::{print_proto_expr, print_term_expr, ProtoExpr, TermExpr};
use super::diag::{DiagKind, Diagnostic, Span};
use super::lex::{lex, Tok};
use super::print_base;

const KEYWORDS: [&str; 5] = ["object", "mor", "rule", "proto", "term"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Object(Name),
    Mor(Name),
    Rule(Name),
    Proto(Name, ProtoExpr),
    Term(Name, TermExpr),
}

/// A signature with named protocols and terms.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub signature: Signature,
    pub decls: Vec<Decl>,
    protocols: HashMap<Name, ProtocolWord>,
    terms: HashMap<Name, Term>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Workspace) -> bool {
        let gens = |s: &Signature| s.gens.iter().map(|g| (g.name.clone(), g.dom.clone(), g.cod.clone())).collect::<Vec<_>>();
        self.decls == other.decls
            && self.signature.objects == other.signature.objects
            && gens(&self.signature) == gens(&other.signature)
            && self.signature.rules == other.signature.rules
            && self.protocols == other.protocols
            && self.terms == other.terms
    }
}

impl Workspace {
    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.get(name)
    }

    pub fn protocol(&self, name: &str) -> Option<&ProtocolWord> {
        self.protocols.get(name)
    }

    /// Names of the declared terms, in declaration order.
    pub fn term_names(&self) -> Vec<Name> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Term(n, _) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn add_object(&mut self, name: &str) {
        let n = self.signature.add_object(name);
        self.decls.push(Decl::Object(n));
    }

    pub fn add_gen(&mut self, name: &str, dom: ObjectWord, cod: ObjectWord) {
        self.signature.add_gen(name, dom, cod);
        self.decls.push(Decl::Mor(name.into()));
    }

    pub fn add_rule(&mut self, rule: BaseRule) {
        self.decls.push(Decl::Rule(rule.name.clone()));
        self.signature.rules.push(rule);
    }

    pub fn add_protocol(&mut self, name: &str, value: ProtocolWord, expr: ProtoExpr) {
        let n: Name = name.into();
        self.protocols.insert(n.clone(), value);
        self.decls.push(Decl::Proto(n, expr));
    }

    pub fn add_term(&mut self, name: &str, value: Term, expr: TermExpr) {
        let n: Name = name.into();
        self.terms.insert(n.clone(), value);
        self.decls.push(Decl::Term(n, expr));
    }

    /// The workspace in the surface syntax, one declaration per line.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for d in &self.decls {
            let line = match d {
                Decl::Object(n) => format!("object {n};"),
                Decl::Mor(n) => {
                    let g = self.signature.gen(n).expect("declared generator");
                    format!("mor {n} : {} -> {};", g.dom, g.cod)
                }
                Decl::Rule(n) => {
                    let r = self.signature.rules.iter().find(|r| r.name == *n).expect("declared rule");
                    format!("rule {n} : {} => {};", print_base(&r.lhs), print_base(&r.rhs))
                }
                Decl::Proto(n, e) => format!("proto {n} = {};", print_proto_expr(e)),
                Decl::Term(n, e) => format!("term {n} = {};", print_term_expr(e)),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parse a standalone term against this workspace.
    pub fn parse_term(&self, text: &str) -> Result<Term, Vec<Diagnostic>> {
        let toks = lex(text).map_err(|d| vec![d])?;
        let mut p = Parser { toks, pos: 0, ws: self.clone(), diags: Vec::new() };
        let r = p.term().and_then(|(t, _)| {
            p.expect_eof()?;
            Ok(t)
        });
        r.map_err(|d| vec![d])
    }
}

/// Parse and check a workspace. All declaration errors are reported.
pub fn parse_workspace(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let toks = lex(text).map_err(|d| vec![d])?;
    let mut p = Parser { toks, pos: 0, ws: Workspace::default(), diags: Vec::new() };
    while p.peek() != &Tok::Eof {
        if let Err(d) = p.decl() {
            p.diags.push(d);
            p.recover();
        }
    }
    if p.diags.is_empty() {
        Ok(p.ws)
    } else {
        Err(p.diags)
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    ws: Workspace,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        let mut d = Diagnostic::error(DiagKind::Syntax, self.span(), format!("expected {what}, found {}", self.peek()));
        d.expected = Some(what.to_string());
        d.found = Some(self.peek().to_string());
        d
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<Span> {
        if self.is_sym(s) {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn expect_eof(&self) -> PResult<()> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    /// A fresh name for a declaration.
    fn binder(&mut self) -> PResult<(String, Span)> {
        let (n, sp) = self.ident()?;
        if KEYWORDS.contains(&n.as_str()) || n == "I" || n == "id" {
            return Err(Diagnostic::error(DiagKind::Syntax, sp, format!("`{n}` is reserved")));
        }
        Ok((n, sp))
    }

    fn recover(&mut self) {
        while self.peek() != &Tok::Eof {
            let (t, _) = self.bump();
            if t == Tok::Sym(";") && self.at_decl_start() {
                break;
            }
        }
    }

    fn at_decl_start(&self) -> bool {
        match self.peek() {
            Tok::Eof => true,
            Tok::Ident(k) => KEYWORDS.contains(&k.as_str()),
            _ => false,
        }
    }

    fn duplicate(&self, sp: Span, what: &str, n: &str) -> Diagnostic {
        Diagnostic::error(DiagKind::Duplicate, sp, format!("{what} `{n}` is already declared"))
    }

    fn decl(&mut self) -> PResult<()> {
        let (kw, sp) = self.ident()?;
        match kw.as_str() {
            "object" => loop {
                let (n, sp) = self.binder()?;
                if self.ws.signature.object(&n).is_some() {
                    return Err(self.duplicate(sp, "object", &n));
                }
                self.ws.add_object(&n);
                if !self.eat_sym(",") {
                    self.expect_sym(";")?;
                    return Ok(());
                }
            },
            "mor" => {
                let (n, sp) = self.binder()?;
                if self.ws.signature.gen(&n).is_some() {
                    return Err(self.duplicate(sp, "generator", &n));
                }
                self.expect_sym(":")?;
                let dom = self.objword()?;
                self.expect_sym("->")?;
                let cod = self.objword()?;
                self.expect_sym(";")?;
                self.ws.add_gen(&n, dom, cod);
                Ok(())
            }
            "rule" => {
                let (n, sp) = self.binder()?;
                if self.ws.signature.rules.iter().any(|r| *r.name == *n) {
                    return Err(self.duplicate(sp, "rule", &n));
                }
                self.expect_sym(":")?;
                let lhs = self.base()?;
                let arrow = self.expect_sym("=>")?;
                let rhs = self.base()?;
                self.expect_sym(";")?;
                let rule = BaseRule::new(n.as_str(), lhs, rhs).map_err(|e| Diagnostic::error(DiagKind::Type, arrow, e.to_string()))?;
                self.ws.add_rule(rule);
                Ok(())
            }
            "proto" => {
                let (n, sp) = self.binder()?;
                if self.ws.protocol(&n).is_some() {
                    return Err(self.duplicate(sp, "protocol", &n));
                }
                self.expect_sym("=")?;
                let (u, e) = self.protocol()?;
                self.expect_sym(";")?;
                self.ws.add_protocol(&n, u, e);
                Ok(())
            }
            "term" => {
                let (n, sp) = self.binder()?;
                if self.ws.term(&n).is_some() {
                    return Err(self.duplicate(sp, "term", &n));
                }
                self.expect_sym("=")?;
                let (t, e) = self.term()?;
                self.expect_sym(";")?;
                self.ws.add_term(&n, t, e);
                Ok(())
            }
            _ => Err(Diagnostic::error(DiagKind::Syntax, sp, format!("expected a declaration, found `{kw}`"))),
        }
    }

    // Objects.

    fn object(&mut self) -> PResult<Name> {
        let (n, sp) = self.ident()?;
        self.ws.signature.object(&n).ok_or_else(|| Diagnostic::error(DiagKind::UnknownObject, sp, format!("unknown object `{n}`")))
    }

    /// `I` or `A * B * …`.
    fn objword(&mut self) -> PResult<ObjectWord> {
        if self.eat_sym("{") {
            let w = self.objword()?;
            self.expect_sym("}")?;
            return Ok(w);
        }
        if matches!(self.peek(), Tok::Ident(s) if s == "I") {
            self.bump();
            return Ok(ObjectWord::unit());
        }
        let mut names = vec![self.object()?];
        while self.eat_sym("*") {
            names.push(self.object()?);
        }
        Ok(ObjectWord(names))
    }

    /// `I`, `A`, or `{A * B}`.
    fn objspec(&mut self) -> PResult<ObjectWord> {
        if self.eat_sym("{") {
            let w = self.objword()?;
            self.expect_sym("}")?;
            return Ok(w);
        }
        if matches!(self.peek(), Tok::Ident(s) if s == "I") {
            self.bump();
            return Ok(ObjectWord::unit());
        }
        Ok(ObjectWord(vec![self.object()?]))
    }

    // Base morphisms.

    fn base(&mut self) -> PResult<BaseMor> {
        let mut f = self.base_tensor()?;
        while self.is_sym(";") && !self.decl_follows_semicolon() {
            let sp = self.bump().1;
            let g = self.base_tensor()?;
            f = mor_comp(&f, &g).map_err(|e| Diagnostic::error(DiagKind::Type, sp, e.to_string()))?;
        }
        Ok(f)
    }

    fn decl_follows_semicolon(&self) -> bool {
        match self.peek_at(1) {
            Tok::Eof => true,
            Tok::Ident(k) => KEYWORDS.contains(&k.as_str()),
            _ => false,
        }
    }

    fn base_tensor(&mut self) -> PResult<BaseMor> {
        let mut f = self.base_atom()?;
        while self.eat_sym("*") {
            f = mor_tensor(&f, &self.base_atom()?);
        }
        Ok(f)
    }

    fn base_atom(&mut self) -> PResult<BaseMor> {
        if self.eat_sym("(") {
            let f = self.base()?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        if matches!(self.peek(), Tok::Num(s) if s == "1") {
            self.bump();
            self.expect_sym("@")?;
            return Ok(mor_id(&self.objspec()?));
        }
        let (n, sp) = self.ident()?;
        match self.ws.signature.gen(&n) {
            Some(g) => Ok(BaseMor::generator(g)),
            None => Err(Diagnostic::error(DiagKind::UnknownGenerator, sp, format!("unknown generator `{n}`"))),
        }
    }

    // Protocols.

    fn protocol(&mut self) -> PResult<(ProtocolWord, ProtoExpr)> {
        let mut items = Vec::new();
        let mut u = ProtocolWord::unit();
        loop {
            let (w, e) = self.proto_choice()?;
            u = u.concat(&w);
            match e {
                ProtoExpr::Word(v) => items.extend(v),
                e => items.push(e),
            }
            if !self.eat_sym(".") {
                break;
            }
        }
        let e = if items.len() == 1 { items.pop().expect("one item") } else { ProtoExpr::Word(items) };
        Ok((u, e))
    }

    fn proto_choice(&mut self) -> PResult<(ProtocolWord, ProtoExpr)> {
        let (u, x) = self.proto_operand()?;
        let plus = if self.eat_sym("+") {
            true
        } else if self.eat_sym("&") {
            false
        } else {
            return Ok((u, x));
        };
        let (w, y) = self.proto_operand()?;
        if self.is_sym("+") || self.is_sym("&") {
            return Err(Diagnostic::error(DiagKind::Syntax, self.span(), "choices do not associate; add parentheses"));
        }
        let (x, y) = (Box::new(x), Box::new(y));
        Ok(if plus { (ProtocolWord::plus(u, w), ProtoExpr::Plus(x, y)) } else { (ProtocolWord::times(u, w), ProtoExpr::Times(x, y)) })
    }

    fn proto_operand(&mut self) -> PResult<(ProtocolWord, ProtoExpr)> {
        if self.eat_sym("(") {
            let r = self.protocol()?;
            self.expect_sym(")")?;
            return Ok(r);
        }
        if matches!(self.peek(), Tok::Num(s) if s == "1") {
            self.bump();
            return Ok((ProtocolWord::unit(), ProtoExpr::Word(Vec::new())));
        }
        let is_ref = matches!(self.peek(), Tok::Ident(_)) && !matches!(self.peek_at(1), Tok::Sym("!" | "?"));
        if is_ref {
            let (n, sp) = self.ident()?;
            return match self.ws.protocol(&n) {
                Some(u) => Ok((u.clone(), ProtoExpr::Ref(n.as_str().into()))),
                None => Err(Diagnostic::error(DiagKind::UnknownProtocol, sp, format!("unknown protocol `{n}`"))),
            };
        }
        let a = self.objspec()?;
        if self.eat_sym("!") {
            Ok((ProtocolWord::send(a.clone()), ProtoExpr::Send(a)))
        } else if self.eat_sym("?") {
            Ok((ProtocolWord::recv(a.clone()), ProtoExpr::Recv(a)))
        } else {
            Err(self.unexpected("`!` or `?`"))
        }
    }

    /// The argument of `id@`.
    fn proto_spec(&mut self) -> PResult<(ProtocolWord, ProtoExpr)> {
        if self.eat_sym("{") {
            let r = self.protocol()?;
            self.expect_sym("}")?;
            return Ok(r);
        }
        self.proto_operand()
    }

    // Terms.

    fn choice_op(&self) -> Option<bool> {
        if !self.is_sym("(") || self.peek_at(2) != &Tok::Sym(")") {
            return None;
        }
        match self.peek_at(1) {
            Tok::Sym("+") => Some(true),
            Tok::Ident(x) if x == "x" => Some(false),
            _ => None,
        }
    }

    fn term(&mut self) -> PResult<(Term, TermExpr)> {
        let (a, x) = self.seq()?;
        let Some(sum) = self.choice_op() else { return Ok((a, x)) };
        let sp = self.span();
        self.pos += 3;
        let (b, y) = self.seq()?;
        if self.choice_op().is_some() {
            return Err(Diagnostic::error(DiagKind::Syntax, self.span(), "`(+)` and `(x)` do not associate; add parentheses"));
        }
        let (x, y) = (Box::new(x), Box::new(y));
        if sum {
            Ok((Term::sum(a, b).map_err(|e| Diagnostic::type_error(sp, e))?, TermExpr::Sum(x, y)))
        } else {
            Ok((Term::prod(a, b).map_err(|e| Diagnostic::type_error(sp, e))?, TermExpr::Prod(x, y)))
        }
    }

    fn seq(&mut self) -> PResult<(Term, TermExpr)> {
        let (mut a, mut x) = self.par()?;
        while self.is_sym(".") {
            let sp = self.bump().1;
            let (b, y) = self.par()?;
            a = Term::vcomp(a, b).map_err(|e| Diagnostic::type_error(sp, e))?;
            x = TermExpr::VComp(Box::new(x), Box::new(y));
        }
        Ok((a, x))
    }

    fn par(&mut self) -> PResult<(Term, TermExpr)> {
        let (mut a, mut x) = self.atom()?;
        while self.is_sym("|") {
            let sp = self.bump().1;
            let (b, y) = self.atom()?;
            a = Term::hcomp(a, b).map_err(|e| Diagnostic::type_error(sp, e))?;
            x = TermExpr::HComp(Box::new(x), Box::new(y));
        }
        Ok((a, x))
    }

    fn corner(&mut self) -> Option<Corner> {
        let k = match self.peek() {
            Tok::Sym("^>") => Corner::UR,
            Tok::Sym("_>") => Corner::LL,
            Tok::Sym("^<") => Corner::UL,
            Tok::Sym("_<") => Corner::LR,
            _ => return None,
        };
        self.bump();
        Some(k)
    }

    fn atom(&mut self) -> PResult<(Term, TermExpr)> {
        let sp = self.span();
        if self.eat_sym("(") {
            let r = self.term()?;
            self.expect_sym(")")?;
            return Ok(r);
        }
        if self.eat_sym("[") {
            let f = self.base()?;
            self.expect_sym("]")?;
            return Ok((Term::base(f.clone()), TermExpr::Base(f)));
        }
        if matches!(self.peek(), Tok::Num(s) if s == "1") {
            self.bump();
            self.expect_sym("@")?;
            let a = self.objspec()?;
            return Ok((Term::vid(a.clone()), TermExpr::VId(a)));
        }
        if self.is_sym("{") {
            let a = self.objspec()?;
            let k = self.corner().ok_or_else(|| self.unexpected("a corner"))?;
            return Ok((Term::corner(k, a.clone()), TermExpr::Corner(k, a)));
        }
        let Tok::Ident(n) = self.peek().clone() else { return Err(self.unexpected("a term")) };
        if self.peek_at(1) == &Tok::Sym("@") {
            let inj = match n.as_str() {
                "id" => {
                    self.pos += 2;
                    let (u, e) = self.proto_spec()?;
                    return Ok((Term::hid(u), TermExpr::HId(e)));
                }
                "inj0" | "inj1" => true,
                "proj0" | "proj1" => false,
                _ => return Err(Diagnostic::error(DiagKind::Syntax, sp, format!("`{n}@` is not a constructor"))),
            };
            let i = if n.ends_with('0') { 0 } else { 1 };
            self.pos += 2;
            self.expect_sym("{")?;
            let (u, x) = self.protocol()?;
            self.expect_sym(",")?;
            let (w, y) = self.protocol()?;
            self.expect_sym("}")?;
            return Ok(if inj {
                (Term::inj(i, u, w).map_err(|e| Diagnostic::type_error(sp, e))?, TermExpr::Inj(i, x, y))
            } else {
                (Term::proj(i, u, w).map_err(|e| Diagnostic::type_error(sp, e))?, TermExpr::Proj(i, x, y))
            });
        }
        if matches!(self.peek_at(1), Tok::Sym("^>" | "_>" | "^<" | "_<")) {
            let a = self.objspec()?;
            let k = self.corner().expect("corner follows");
            return Ok((Term::corner(k, a.clone()), TermExpr::Corner(k, a)));
        }
        self.bump();
        match self.ws.term(&n) {
            Some(t) => Ok((t.clone(), TermExpr::Ref(n.as_str().into()))),
            None => Err(Diagnostic::error(DiagKind::UnknownTerm, sp, format!("unknown term `{n}`"))),
        }
    }
}
