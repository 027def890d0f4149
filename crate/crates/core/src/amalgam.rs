//! V-formations, amalgams and a brute-force amalgam search over a supplied
//! list of candidate algebras.

use crate::algebra::morphism::{is_embedding, search, MapKind, Morphism};
use crate::algebra::FiniteRL;
use crate::error::{Error, Result};
use crate::set::ElemSet;
use serde::Serialize;

/// Two embeddings `i: A → B` and `j: A → C`.
#[derive(Debug, Clone)]
pub struct VFormation {
    pub a: FiniteRL,
    pub b: FiniteRL,
    pub c: FiniteRL,
    pub i: Morphism,
    pub j: Morphism,
}

impl VFormation {
    pub fn new(a: FiniteRL, b: FiniteRL, c: FiniteRL, i: Morphism, j: Morphism) -> Result<Self> {
        if !is_embedding(&a, &b, &i.map) {
            return Err(Error::Precondition(
                "i is not an embedding of A into B".into(),
            ));
        }
        if !is_embedding(&a, &c, &j.map) {
            return Err(Error::Precondition(
                "j is not an embedding of A into C".into(),
            ));
        }
        Ok(VFormation { a, b, c, i, j })
    }

    /// Uses the lexicographically first embeddings of `a` into `b` and `c`.
    pub fn with_first_embeddings(a: FiniteRL, b: FiniteRL, c: FiniteRL) -> Result<Self> {
        let first = |dst: &FiniteRL, name: &str| {
            search(&a, dst, MapKind::Embedding, &[], 1)
                .pop()
                .ok_or_else(|| Error::Precondition(format!("A does not embed into {name}")))
        };
        let i = first(&b, "B")?;
        let j = first(&c, "C")?;
        Ok(VFormation { a, b, c, i, j })
    }

    /// The same V-formation with `B` and `C` exchanged.
    pub fn swapped(&self) -> VFormation {
        VFormation {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            i: self.j.clone(),
            j: self.i.clone(),
        }
    }
}

/// An algebra `D` with maps `h: B → D` and `k: C → D`.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub d: FiniteRL,
    pub h: Morphism,
    pub k: Morphism,
}

/// Outcome of [`check_amalgam`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmalgamCheck {
    pub h_embeds: bool,
    pub k_embeds: bool,
    pub commutes: bool,
    /// `h[B] ∩ k[C]` is exactly the image of `A`.
    pub strong: bool,
}

impl AmalgamCheck {
    pub fn is_amalgam(&self) -> bool {
        self.h_embeds && self.k_embeds && self.commutes
    }
}

pub fn check_amalgam(v: &VFormation, m: &Amalgam) -> AmalgamCheck {
    let h_embeds = is_embedding(&v.b, &m.d, &m.h.map);
    let k_embeds = is_embedding(&v.c, &m.d, &m.k.map);
    let commutes = h_embeds
        && k_embeds
        && v.a
            .elements()
            .all(|x| m.h.apply(v.i.apply(x)) == m.k.apply(v.j.apply(x)));
    let strong = commutes && {
        let hb: ElemSet = v.b.elements().map(|x| m.h.apply(x)).collect();
        let kc: ElemSet = v.c.elements().map(|x| m.k.apply(x)).collect();
        let ha: ElemSet = v.a.elements().map(|x| m.h.apply(v.i.apply(x))).collect();
        hb.intersection(&kc) == ha
    };
    AmalgamCheck {
        h_embeds,
        k_embeds,
        commutes,
        strong,
    }
}

/// Pins forcing `k(j(x)) = h(i(x))`.
fn pins(v: &VFormation, h: &Morphism) -> Vec<Option<usize>> {
    let mut fixed = vec![None; v.c.n()];
    for x in v.a.elements() {
        fixed[v.j.apply(x)] = Some(h.apply(v.i.apply(x)));
    }
    fixed
}

/// First amalgam into `d`, trying embeddings `h` in lexicographic order.
pub fn amalgam_into(v: &VFormation, d: &FiniteRL) -> Option<(Morphism, Morphism)> {
    if v.b.n() > d.n() || v.c.n() > d.n() {
        return None;
    }
    for h in search(&v.b, d, MapKind::Embedding, &[], usize::MAX) {
        if let Some(k) = search(&v.c, d, MapKind::Embedding, &pins(v, &h), 1).pop() {
            return Some((h, k));
        }
    }
    None
}

/// First amalgam found among `candidates`, in the order given.
pub fn brute_force_amalgam<'a>(
    v: &VFormation,
    candidates: impl IntoIterator<Item = &'a FiniteRL>,
) -> Option<Amalgam> {
    candidates
        .into_iter()
        .find_map(|d| amalgam_into(v, d).map(|(h, k)| Amalgam { d: d.clone(), h, k }))
}

/// Census of 1-amalgams (`h` a homomorphism, `k` an embedding).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OneAmalgamCensus {
    pub candidates: usize,
    /// Homomorphisms `h: B → D` whose restriction to `A` is injective.
    pub homs_injective_on_a: usize,
    /// Those among them that collapse some pair of `B`.
    pub non_injective: usize,
    pub one_amalgams: usize,
    pub one_amalgams_with_injective_h: usize,
}

impl OneAmalgamCensus {
    /// Every homomorphism that is injective on `A` is injective on `B`;
    /// in particular every 1-amalgam is an amalgam.
    pub fn kernel_argument_holds(&self) -> bool {
        self.non_injective == 0 && self.one_amalgams == self.one_amalgams_with_injective_h
    }
}

pub fn one_amalgam_census<'a>(
    v: &VFormation,
    candidates: impl IntoIterator<Item = &'a FiniteRL>,
) -> OneAmalgamCensus {
    let mut out = OneAmalgamCensus::default();
    for d in candidates {
        out.candidates += 1;
        for h in search(&v.b, d, MapKind::Homomorphism, &[], usize::MAX) {
            let on_a: ElemSet = v.a.elements().map(|x| h.apply(v.i.apply(x))).collect();
            if on_a.len() != v.a.n() {
                continue;
            }
            out.homs_injective_on_a += 1;
            let injective = h.is_injective();
            if !injective {
                out.non_injective += 1;
            }
            if !search(&v.c, d, MapKind::Embedding, &pins(v, &h), 1).is_empty() {
                out.one_amalgams += 1;
                if injective {
                    out.one_amalgams_with_injective_h += 1;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn degenerate_formation_amalgamates_into_itself() {
        let a = catalog::lukasiewicz(3);
        let id = Morphism::identity(a.n());
        let v = VFormation::new(a.clone(), a.clone(), a.clone(), id.clone(), id).unwrap();
        let m = brute_force_amalgam(&v, [&a]).unwrap();
        let check = check_amalgam(&v, &m);
        assert!(check.is_amalgam() && check.strong);
    }

    #[test]
    fn rejects_non_embeddings() {
        let a = catalog::lukasiewicz(3);
        let b = catalog::boolean();
        let err = VFormation::new(
            a.clone(),
            b.clone(),
            b,
            Morphism::new(vec![0, 0, 1]),
            Morphism::new(vec![0, 0, 1]),
        );
        assert!(err.is_err());
    }
}
