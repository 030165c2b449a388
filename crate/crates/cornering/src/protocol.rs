//! The exchange monoid: protocol words over send, receive, sum and product
//! atoms. Words are flat lists, so associativity and the unit laws hold by
//! construction and equality is structural.

use std::fmt;

use crate::base::ObjectWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolAtom {
    /// `A∘`: the left participant sends `A`.
    Send(ObjectWord),
    /// `A•`: the right participant sends `A`.
    Recv(ObjectWord),
    /// `U + W`: the left participant chooses.
    Plus(ProtocolWord, ProtocolWord),
    /// `U × W`: the right participant chooses.
    Times(ProtocolWord, ProtocolWord),
}

impl ProtocolAtom {
    /// The same atom seen from the other side of a cell.
    pub fn mirror(&self) -> ProtocolAtom {
        match self {
            ProtocolAtom::Send(a) => ProtocolAtom::Recv(a.clone()),
            ProtocolAtom::Recv(a) => ProtocolAtom::Send(a.clone()),
            ProtocolAtom::Plus(u, w) => ProtocolAtom::Times(u.mirror(), w.mirror()),
            ProtocolAtom::Times(u, w) => ProtocolAtom::Plus(u.mirror(), w.mirror()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProtocolWord(pub Vec<ProtocolAtom>);

impl ProtocolWord {
    pub fn unit() -> Self {
        ProtocolWord(Vec::new())
    }

    pub fn atom(a: ProtocolAtom) -> Self {
        ProtocolWord(vec![a])
    }

    pub fn send(a: ObjectWord) -> Self {
        Self::atom(ProtocolAtom::Send(a))
    }

    pub fn recv(a: ObjectWord) -> Self {
        Self::atom(ProtocolAtom::Recv(a))
    }

    pub fn plus(u: ProtocolWord, w: ProtocolWord) -> Self {
        Self::atom(ProtocolAtom::Plus(u, w))
    }

    pub fn times(u: ProtocolWord, w: ProtocolWord) -> Self {
        Self::atom(ProtocolAtom::Times(u, w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> Option<&ProtocolAtom> {
        self.0.first()
    }

    pub fn concat(&self, other: &ProtocolWord) -> ProtocolWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ProtocolWord(v)
    }

    pub fn split_at(&self, k: usize) -> (ProtocolWord, ProtocolWord) {
        let (u, v) = self.0.split_at(k);
        (ProtocolWord(u.to_vec()), ProtocolWord(v.to_vec()))
    }

    pub fn prefix(&self, k: usize) -> ProtocolWord {
        ProtocolWord(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> ProtocolWord {
        ProtocolWord(self.0[k..].to_vec())
    }

    pub fn mirror(&self) -> ProtocolWord {
        ProtocolWord(self.0.iter().map(ProtocolAtom::mirror).collect())
    }
}

pub fn proto_concat(u: &ProtocolWord, w: &ProtocolWord) -> ProtocolWord {
    u.concat(w)
}

pub fn proto_eq(u: &ProtocolWord, w: &ProtocolWord) -> bool {
    u == w
}

impl fmt::Display for ProtocolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_protocol(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ob(s: &str) -> ObjectWord {
        ObjectWord::atom(s)
    }

    #[test]
    fn concat_matches_example() {
        let u = ProtocolWord::send(ob("A"));
        let w = ProtocolWord::recv(ob("B")).concat(&ProtocolWord::recv(ob("A")));
        let v = proto_concat(&u, &w);
        assert_eq!(v.len(), 3);
        assert_eq!(v.0[0], ProtocolAtom::Send(ob("A")));
        assert_eq!(v.0[2], ProtocolAtom::Recv(ob("A")));
        assert_eq!(proto_concat(&ProtocolWord::unit(), &v), v);
        assert_eq!(proto_concat(&v, &ProtocolWord::unit()), v);
    }

    #[test]
    fn atomicity() {
        let t = ProtocolWord::times(ProtocolWord::send(ob("A")), ProtocolWord::unit());
        assert!(t.is_atomic());
        let two = ProtocolWord::send(ob("A")).concat(&ProtocolWord::recv(ob("B")));
        assert!(!two.is_atomic());
        assert!(ProtocolWord::unit().is_unit());
        assert!(!ProtocolWord::unit().is_atomic());
    }

    #[test]
    fn mirror_is_involutive() {
        let u = ProtocolWord::plus(ProtocolWord::send(ob("A")), ProtocolWord::times(ProtocolWord::recv(ob("B")), ProtocolWord::unit()));
        assert_eq!(u.mirror().mirror(), u);
        assert_ne!(u.mirror(), u);
    }
}
