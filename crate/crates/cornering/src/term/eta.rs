//! Instances of the η-equations. These are never used as rewrites.

use crate::base::ObjectWord;
use crate::protocol::{ProtocolAtom, ProtocolWord};

use super::{Corner, EquationInstance, Orientation, Term, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaLaw {
    /// `A⌝·A⌞ = id_{A∘}`
    CornerSend,
    /// `A⌜·A⌟ = id_{A•}`
    CornerRecv,
    /// `(h|π₀)×(h|π₁) = h`
    Pair,
    /// `(ᴨ₀|h)+(ᴨ₁|h) = h`
    Copair,
}

impl EtaLaw {
    pub fn name(self) -> &'static str {
        match self {
            EtaLaw::CornerSend => "eta-send",
            EtaLaw::CornerRecv => "eta-recv",
            EtaLaw::Pair => "eta-pair",
            EtaLaw::Copair => "eta-copair",
        }
    }
}

fn instance(law: EtaLaw, lhs: Term, rhs: Term) -> EquationInstance {
    debug_assert_eq!(lhs.ty(), rhs.ty());
    EquationInstance { law: law.name().to_string(), lhs, rhs, orientation: Orientation::Forward }
}

/// The two corner schemas at object `a`.
pub fn eta_corner_instances(a: &ObjectWord) -> Vec<EquationInstance> {
    let send = Term::vcomp(Term::corner(Corner::UR, a.clone()), Term::corner(Corner::LL, a.clone())).expect("corners compose");
    let recv = Term::vcomp(Term::corner(Corner::UL, a.clone()), Term::corner(Corner::LR, a.clone())).expect("corners compose");
    vec![
        instance(EtaLaw::CornerSend, send, Term::hid(ProtocolWord::send(a.clone()))),
        instance(EtaLaw::CornerRecv, recv, Term::hid(ProtocolWord::recv(a.clone()))),
    ]
}

/// The pairing and copairing schemas that apply to `h`: pairing when the
/// right boundary of `h` is a single product, copairing when its left
/// boundary is a single sum.
pub fn eta_instances(h: &Term) -> Result<Vec<EquationInstance>, TypeError> {
    let mut out = Vec::new();
    let ty = h.ty();
    if let [ProtocolAtom::Times(u, w)] = ty.right.0.as_slice() {
        let l = Term::hcomp(h.clone(), Term::proj(0, u.clone(), w.clone())?)?;
        let r = Term::hcomp(h.clone(), Term::proj(1, u.clone(), w.clone())?)?;
        out.push(instance(EtaLaw::Pair, Term::prod(l, r)?, h.clone()));
    }
    if let [ProtocolAtom::Plus(u, w)] = ty.left.0.as_slice() {
        let l = Term::hcomp(Term::inj(0, u.clone(), w.clone())?, h.clone())?;
        let r = Term::hcomp(Term::inj(1, u.clone(), w.clone())?, h.clone())?;
        out.push(instance(EtaLaw::Copair, Term::sum(l, r)?, h.clone()));
    }
    if out.is_empty() {
        return Err(TypeError::Mismatch {
            rule: "eta",
            expected: "a product on the right or a sum on the left".to_string(),
            found: ty.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_instances_typecheck() {
        let a = ObjectWord::atom("A");
        let is = eta_corner_instances(&a);
        assert_eq!(is.len(), 2);
        for i in is {
            assert_eq!(i.lhs.ty(), i.rhs.ty());
        }
    }

    #[test]
    fn identity_copair_instance() {
        let u = ProtocolWord::send(ObjectWord::atom("A"));
        let w = ProtocolWord::unit();
        let h = Term::hid(ProtocolWord::plus(u, w));
        let is = eta_instances(&h).unwrap();
        assert_eq!(is.len(), 1);
        assert_eq!(is[0].law, "eta-copair");
        assert_eq!(is[0].lhs.ty(), h.ty());
    }

    #[test]
    fn no_instance_for_plain_cell() {
        assert!(eta_instances(&Term::vid(ObjectWord::atom("A"))).is_err());
    }
}
