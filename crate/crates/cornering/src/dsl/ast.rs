//! Surface expressions. They mirror protocols and terms, with references to
//! named declarations kept so that a workspace prints back as written.

use crate::base::{BaseMor, Name, ObjectWord};
use crate::protocol::{ProtocolAtom, ProtocolWord};
use crate::term::{Corner, Node, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProtoExpr {
    Send(ObjectWord),
    Recv(ObjectWord),
    Plus(Box<ProtoExpr>, Box<ProtoExpr>),
    Times(Box<ProtoExpr>, Box<ProtoExpr>),
    /// A word; the empty word is the unit.
    Word(Vec<ProtoExpr>),
    Ref(Name),
}

impl ProtoExpr {
    pub fn of_word(u: &ProtocolWord) -> ProtoExpr {
        if u.len() == 1 {
            return ProtoExpr::of_atom(&u.0[0]);
        }
        ProtoExpr::Word(u.0.iter().map(ProtoExpr::of_atom).collect())
    }

    fn of_atom(a: &ProtocolAtom) -> ProtoExpr {
        match a {
            ProtocolAtom::Send(w) => ProtoExpr::Send(w.clone()),
            ProtocolAtom::Recv(w) => ProtoExpr::Recv(w.clone()),
            ProtocolAtom::Plus(u, w) => ProtoExpr::Plus(Box::new(ProtoExpr::of_word(u)), Box::new(ProtoExpr::of_word(w))),
            ProtocolAtom::Times(u, w) => ProtoExpr::Times(Box::new(ProtoExpr::of_word(u)), Box::new(ProtoExpr::of_word(w))),
        }
    }

    fn is_choice(&self) -> bool {
        matches!(self, ProtoExpr::Plus(..) | ProtoExpr::Times(..))
    }

    /// A single send, receive or reference.
    fn is_simple(&self) -> bool {
        match self {
            ProtoExpr::Send(_) | ProtoExpr::Recv(_) | ProtoExpr::Ref(_) => true,
            ProtoExpr::Word(v) => v.is_empty(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermExpr {
    Base(BaseMor),
    VId(ObjectWord),
    HId(ProtoExpr),
    Corner(Corner, ObjectWord),
    Inj(u8, ProtoExpr, ProtoExpr),
    Proj(u8, ProtoExpr, ProtoExpr),
    VComp(Box<TermExpr>, Box<TermExpr>),
    HComp(Box<TermExpr>, Box<TermExpr>),
    Sum(Box<TermExpr>, Box<TermExpr>),
    Prod(Box<TermExpr>, Box<TermExpr>),
    Ref(Name),
}

impl TermExpr {
    pub fn of_term(t: &Term) -> TermExpr {
        let b = |x: &Term| Box::new(TermExpr::of_term(x));
        match t.node() {
            Node::Base(f) => TermExpr::Base(f.clone()),
            Node::VId(a) => TermExpr::VId(a.clone()),
            Node::HId(u) => TermExpr::HId(ProtoExpr::of_word(u)),
            Node::Corner(k, a) => TermExpr::Corner(*k, a.clone()),
            Node::Inj(i, u, w) => TermExpr::Inj(*i, ProtoExpr::of_word(u), ProtoExpr::of_word(w)),
            Node::Proj(i, u, w) => TermExpr::Proj(*i, ProtoExpr::of_word(u), ProtoExpr::of_word(w)),
            Node::VComp(x, y) => TermExpr::VComp(b(x), b(y)),
            Node::HComp(x, y) => TermExpr::HComp(b(x), b(y)),
            Node::Sum(x, y) => TermExpr::Sum(b(x), b(y)),
            Node::Prod(x, y) => TermExpr::Prod(b(x), b(y)),
        }
    }
}

/// `A`, `I`, or `{A * B}`.
pub fn print_objspec(w: &ObjectWord) -> String {
    match w.len() {
        0 => "I".to_string(),
        1 => w.0[0].to_string(),
        _ => format!("{{{w}}}"),
    }
}

fn print_operand(u: &ProtoExpr) -> String {
    if u.is_simple() {
        print_proto_expr(u)
    } else {
        format!("({})", print_proto_expr(u))
    }
}

fn print_word_item(u: &ProtoExpr) -> String {
    if u.is_choice() {
        format!("({})", print_proto_expr(u))
    } else {
        print_proto_expr(u)
    }
}

/// A protocol expression; `1` for the unit.
pub fn print_proto_expr(u: &ProtoExpr) -> String {
    match u {
        ProtoExpr::Send(w) => format!("{}!", print_objspec(w)),
        ProtoExpr::Recv(w) => format!("{}?", print_objspec(w)),
        ProtoExpr::Plus(x, y) => format!("{} + {}", print_operand(x), print_operand(y)),
        ProtoExpr::Times(x, y) => format!("{} & {}", print_operand(x), print_operand(y)),
        ProtoExpr::Word(v) if v.is_empty() => "1".to_string(),
        ProtoExpr::Word(v) if v.len() == 1 => print_proto_expr(&v[0]),
        ProtoExpr::Word(v) => v.iter().map(print_word_item).collect::<Vec<_>>().join(" . "),
        ProtoExpr::Ref(n) => n.to_string(),
    }
}

/// The argument of `id@`: `1`, a single send, receive or reference, or a
/// braced protocol.
pub fn print_proto_spec(u: &ProtoExpr) -> String {
    if u.is_simple() {
        print_proto_expr(u)
    } else {
        format!("{{{}}}", print_proto_expr(u))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Choice,
    Seq,
    Par,
    Atom,
}

fn prec(t: &TermExpr) -> Prec {
    match t {
        TermExpr::Sum(..) | TermExpr::Prod(..) => Prec::Choice,
        TermExpr::VComp(..) => Prec::Seq,
        TermExpr::HComp(..) => Prec::Par,
        _ => Prec::Atom,
    }
}

fn wrap(t: &TermExpr, min: Prec) -> String {
    let s = print_term_expr(t);
    if prec(t) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn print_term_expr(t: &TermExpr) -> String {
    match t {
        TermExpr::Base(f) => format!("[{}]", super::print_base(f)),
        TermExpr::VId(a) => format!("1@{}", print_objspec(a)),
        TermExpr::HId(u) => format!("id@{}", print_proto_spec(u)),
        TermExpr::Corner(k, a) => {
            let g = match k {
                Corner::UR => "^>",
                Corner::LL => "_>",
                Corner::UL => "^<",
                Corner::LR => "_<",
            };
            format!("{}{}", print_objspec(a), g)
        }
        TermExpr::Inj(i, u, w) => format!("inj{i}@{{{}, {}}}", print_proto_expr(u), print_proto_expr(w)),
        TermExpr::Proj(i, u, w) => format!("proj{i}@{{{}, {}}}", print_proto_expr(u), print_proto_expr(w)),
        // Left-associative: the right operand needs parentheses at equal precedence.
        TermExpr::VComp(a, b) => format!("{} . {}", wrap(a, Prec::Seq), wrap(b, Prec::Par)),
        TermExpr::HComp(a, b) => format!("{} | {}", wrap(a, Prec::Par), wrap(b, Prec::Atom)),
        TermExpr::Sum(a, b) => format!("{} (+) {}", wrap(a, Prec::Seq), wrap(b, Prec::Seq)),
        TermExpr::Prod(a, b) => format!("{} (x) {}", wrap(a, Prec::Seq), wrap(b, Prec::Seq)),
        TermExpr::Ref(n) => n.to_string(),
    }
}
