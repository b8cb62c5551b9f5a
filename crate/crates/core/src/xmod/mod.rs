//! Crossed modules of groups with action.
//!
//! A crossed module here is a GwA morphism `∂: S -> R` together with a
//! derived action pair `(·, ⋆)` of `R` on `S`, subject to
//!
//! * CM1: `∂(r·s) = -r + ∂s + r`
//! * CM2: `∂(s)·s1 = -s + s1 + s`
//! * CM3: `∂(r⋆s) = (∂s)^r`
//! * CM4: `∂(s)⋆s1 = s1^s`
//!
//! Structures satisfying CM1 and CM3 only are pre-crossed modules.

mod action;
mod enumerate;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub(crate) use action::action_pair_tables;
pub use action::{
    all_xmod_gwa_actions, check_action_pair, is_gwa_action, ActionViolation, DerivedActionPair,
};
pub use enumerate::{all_xmods, all_xmods_by_id, count_xmods, XModCounts, XModEnumeration};

use crate::error::{Error, Result};
use crate::gwa::{self, satisfies_condition1, GroupWithAction, GwAMorphism};
use crate::hom::GroupHom;
use crate::ideal::Ideal;
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XModLevel {
    /// Valid boundary and action pair, but CM1 or CM3 fails.
    Candidate,
    /// CM1 and CM3 hold.
    Pre,
    /// All of CM1-CM4 hold.
    Full,
}

impl XModLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            XModLevel::Candidate => "candidate",
            XModLevel::Pre => "pre",
            XModLevel::Full => "full",
        }
    }
}

/// A failed CM condition with the two elements that witness it, rendered
/// with the groups' element names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmFailure {
    pub condition: u8,
    pub labels: (&'static str, &'static str),
    pub witness: (String, String),
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for CmFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Condition {} is fail", self.condition)?;
        write!(
            f,
            "For {} = {} and {} = {} => {} <> {}",
            self.labels.0, self.witness.0, self.labels.1, self.witness.1, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModGwA {
    pub boundary: GwAMorphism,
    pub action: DerivedActionPair,
    pub level: XModLevel,
}

/// Raw CM check on tables. Returns the first witness `(x, y)` with the two
/// sides of the failing equation, as `(x, y, lhs, rhs)`.
pub(crate) fn cm_witness(
    k: u8,
    s: &GroupWithAction,
    r: &GroupWithAction,
    b: &[usize],
    t: &[usize],
) -> Option<(usize, usize, usize, usize)> {
    let (sg, rg) = (s.group(), r.group());
    let ns = sg.order();
    match k {
        1 => {
            for x in rg.elements() {
                for y in sg.elements() {
                    let (l, rr) = (b[t[x * ns + y]], rg.conj(b[y], x));
                    if l != rr {
                        return Some((x, y, l, rr));
                    }
                }
            }
        }
        2 => {
            for x in sg.elements() {
                for y in sg.elements() {
                    let (l, rr) = (t[b[x] * ns + y], sg.conj(y, x));
                    if l != rr {
                        return Some((x, y, l, rr));
                    }
                }
            }
        }
        3 => {
            for x in rg.elements() {
                for y in sg.elements() {
                    let (l, rr) = (b[t[x * ns + y]], r.action(b[y], x));
                    if l != rr {
                        return Some((x, y, l, rr));
                    }
                }
            }
        }
        _ => {
            for x in sg.elements() {
                for y in sg.elements() {
                    let (l, rr) = (t[b[x] * ns + y], s.action(y, x));
                    if l != rr {
                        return Some((x, y, l, rr));
                    }
                }
            }
        }
    }
    None
}

pub(crate) fn level_of(
    s: &GroupWithAction,
    r: &GroupWithAction,
    b: &[usize],
    dot: &[usize],
    star: &[usize],
) -> XModLevel {
    if cm_witness(1, s, r, b, dot).is_some() || cm_witness(3, s, r, b, star).is_some() {
        XModLevel::Candidate
    } else if cm_witness(2, s, r, b, dot).is_some() || cm_witness(4, s, r, b, star).is_some() {
        XModLevel::Pre
    } else {
        XModLevel::Full
    }
}

impl XModGwA {
    pub fn source(&self) -> &GroupWithAction {
        &self.action.swa
    }

    pub fn range(&self) -> &GroupWithAction {
        &self.action.rwa
    }

    /// `∂s`.
    #[inline]
    pub fn bdy(&self, s: usize) -> usize {
        self.boundary.apply(s)
    }

    #[inline]
    pub fn dot(&self, r: usize, s: usize) -> usize {
        self.action.dot(r, s)
    }

    #[inline]
    pub fn star(&self, r: usize, s: usize) -> usize {
        self.action.star(r, s)
    }

    /// Checks condition `k` (1 to 4).
    #[allow(clippy::result_large_err)]
    pub fn check_cm(&self, k: u8) -> core::result::Result<(), CmFailure> {
        let (s, r) = (self.source(), self.range());
        let t = if k <= 2 {
            self.action.dot_flat()
        } else {
            self.action.star_flat()
        };
        match cm_witness(k, s, r, self.boundary.image(), t) {
            None => Ok(()),
            Some((x, y, l, rr)) => {
                let (labels, xname, lhs, rhs) = match k {
                    1 | 3 => (
                        ("r", "s"),
                        r.group().name(x),
                        r.group().name(l),
                        r.group().name(rr),
                    ),
                    _ => (
                        ("s", "s1"),
                        s.group().name(x),
                        s.group().name(l),
                        s.group().name(rr),
                    ),
                };
                Err(CmFailure {
                    condition: k,
                    labels,
                    witness: (xname, s.group().name(y)),
                    lhs,
                    rhs,
                })
            }
        }
    }

    fn compute_level(&self) -> XModLevel {
        level_of(
            self.source(),
            self.range(),
            self.boundary.image(),
            self.action.dot_flat(),
            self.action.star_flat(),
        )
    }

    /// The identity boundary of `g` with conjugation and the self-action.
    pub fn identity(g: &GroupWithAction) -> XModGwA {
        xmod_by_ideal(g, &Ideal::whole(g)).expect("the whole group is an ideal")
    }

    /// Zero boundary `m -> g` with both actions trivial. It is a full
    /// crossed module exactly when `m` is abelian with trivial action.
    pub fn zero(m: &GroupWithAction, g: &GroupWithAction) -> Result<XModGwA> {
        pre_xmod_obj(GwAMorphism::zero(m, g), DerivedActionPair::trivial(m, g))
    }

    /// The crossed module on the trivial group.
    pub fn trivial() -> XModGwA {
        let t = GroupWithAction::trivial(Arc::new(crate::group::Group::trivial()));
        XModGwA::identity(&t)
    }
}

/// Assembles a candidate crossed module and records its level.
pub fn pre_xmod_obj(boundary: GwAMorphism, action: DerivedActionPair) -> Result<XModGwA> {
    if boundary.src != action.swa || boundary.dst != action.rwa {
        return Err(Error::Mismatch(
            "boundary and action pair are over different groups with action".into(),
        ));
    }
    action.verify()?;
    let mut x = XModGwA {
        boundary,
        action,
        level: XModLevel::Candidate,
    };
    x.level = x.compute_level();
    Ok(x)
}

pub fn is_pre_xmod(x: &XModGwA) -> bool {
    x.check_cm(1).is_ok() && x.check_cm(3).is_ok()
}

/// Checks CM1-CM4 in order and reports the first failure.
#[allow(clippy::result_large_err)]
pub fn is_xmod(x: &XModGwA) -> core::result::Result<(), CmFailure> {
    (1..=4).try_for_each(|k| x.check_cm(k))
}

/// The inclusion of an ideal, with `r·s = -r + s + r` and `r⋆s = s^r`.
pub fn xmod_by_ideal(rwa: &GroupWithAction, ideal: &Ideal) -> Result<XModGwA> {
    if !crate::ideal::is_ideal(&ideal.elements, rwa) {
        return Err(Error::NotAnIdeal {
            condition: 0,
            element: 0,
            other: 0,
        });
    }
    let (swa, embed) = rwa.restrict(&ideal.elements)?;
    let mut pos = alloc::vec![usize::MAX; rwa.order()];
    for (i, &e) in embed.iter().enumerate() {
        pos[e] = i;
    }
    let rg = rwa.group();
    let mut dot = Vec::with_capacity(rwa.order() * embed.len());
    let mut star = Vec::with_capacity(rwa.order() * embed.len());
    for r in rg.elements() {
        for &e in &embed {
            dot.push(pos[rg.conj(e, r)]);
            star.push(pos[rwa.action(e, r)]);
        }
    }
    let boundary = GwAMorphism {
        src: swa.clone(),
        dst: rwa.clone(),
        hom: GroupHom {
            src: swa.group_arc().clone(),
            dst: rwa.group_arc().clone(),
            image: embed,
        },
    };
    let pair = DerivedActionPair::new(swa, rwa.clone(), dot, star)?;
    let x = pre_xmod_obj(boundary, pair)?;
    is_xmod(&x)?;
    Ok(x)
}

/// Componentwise product; each range acts trivially on the other source.
pub fn xmod_direct_product(x1: &XModGwA, x2: &XModGwA) -> Result<XModGwA> {
    is_xmod(x1)?;
    is_xmod(x2)?;
    let s = GroupWithAction::direct_product(x1.source(), x2.source());
    let r = GroupWithAction::direct_product(x1.range(), x2.range());
    let (ms, mr) = (x2.source().order(), x2.range().order());
    let image = s
        .group()
        .elements()
        .map(|a| x1.bdy(a / ms) * mr + x2.bdy(a % ms))
        .collect();
    let boundary = GwAMorphism::new(s.clone(), r.clone(), image)?;
    let mut dot = Vec::with_capacity(r.order() * s.order());
    let mut star = Vec::with_capacity(r.order() * s.order());
    for a in r.group().elements() {
        let (a1, a2) = (a / mr, a % mr);
        for b in s.group().elements() {
            let (b1, b2) = (b / ms, b % ms);
            dot.push(x1.dot(a1, b1) * ms + x2.dot(a2, b2));
            star.push(x1.star(a1, b1) * ms + x2.star(a2, b2));
        }
    }
    let pair = DerivedActionPair::new(s, r, dot, star)?;
    let x = pre_xmod_obj(boundary, pair)?;
    is_xmod(&x)?;
    Ok(x)
}

/// Both source and range satisfy Condition 1.
pub fn is_xmod_c1(x: &XModGwA) -> bool {
    satisfies_condition1(x.source()) && satisfies_condition1(x.range())
}

/// A morphism of crossed modules: `alpha` on sources, `beta` on ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModGwAMorphism {
    pub src: XModGwA,
    pub dst: XModGwA,
    pub alpha: GwAMorphism,
    pub beta: GwAMorphism,
}

/// First failing morphism condition: 1 for `β∂ = ∂'α`, 2 for the dot
/// action, 3 for the star action.
fn xmod_morphism_failure(
    alpha: &[usize],
    beta: &[usize],
    x1: &XModGwA,
    x2: &XModGwA,
) -> Option<u8> {
    let (s, r) = (x1.source().group(), x1.range().group());
    if s.elements().any(|a| beta[x1.bdy(a)] != x2.bdy(alpha[a])) {
        return Some(1);
    }
    for b in r.elements() {
        for a in s.elements() {
            if alpha[x1.dot(b, a)] != x2.dot(beta[b], alpha[a]) {
                return Some(2);
            }
        }
    }
    for b in r.elements() {
        for a in s.elements() {
            if alpha[x1.star(b, a)] != x2.star(beta[b], alpha[a]) {
                return Some(3);
            }
        }
    }
    None
}

pub fn is_xmod_morphism(alpha: &[usize], beta: &[usize], x1: &XModGwA, x2: &XModGwA) -> bool {
    gwa::is_gwa_morphism(alpha, x1.source(), x2.source())
        && gwa::is_gwa_morphism(beta, x1.range(), x2.range())
        && xmod_morphism_failure(alpha, beta, x1, x2).is_none()
}

impl XModGwAMorphism {
    pub fn new(x1: &XModGwA, x2: &XModGwA, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        let alpha = GwAMorphism::new(x1.source().clone(), x2.source().clone(), alpha)?;
        let beta = GwAMorphism::new(x1.range().clone(), x2.range().clone(), beta)?;
        if let Some(k) = xmod_morphism_failure(alpha.image(), beta.image(), x1, x2) {
            return Err(Error::Mismatch(alloc::format!(
                "crossed module morphism condition {k} fails"
            )));
        }
        Ok(XModGwAMorphism {
            src: x1.clone(),
            dst: x2.clone(),
            alpha,
            beta,
        })
    }

    pub fn identity(x: &XModGwA) -> Self {
        XModGwAMorphism {
            src: x.clone(),
            dst: x.clone(),
            alpha: GwAMorphism::identity(x.source()),
            beta: GwAMorphism::identity(x.range()),
        }
    }
}

/// `∂: ker α -> ker β` with the restricted actions.
pub fn kernel_xmod(m: &XModGwAMorphism) -> Result<XModGwA> {
    let x = &m.src;
    let ka = m.alpha.hom.kernel();
    let kb = m.beta.hom.kernel();
    let (s, s_embed) = x.source().restrict(&ka)?;
    let (r, r_embed) = x.range().restrict(&kb)?;
    let pos = |set: &ElementSet, embed: &[usize], v: usize| -> Option<usize> {
        if set.contains(v) {
            embed.binary_search(&v).ok()
        } else {
            None
        }
    };
    let landing = |what: &str, a: usize, b: usize| {
        Error::NotClosed(alloc::format!("{what} of r={a}, s={b} leaves ker alpha"))
    };
    let mut image = Vec::with_capacity(s_embed.len());
    for &a in &s_embed {
        image.push(
            pos(&kb, &r_embed, x.bdy(a)).ok_or_else(|| {
                Error::NotClosed(alloc::format!("boundary of {a} leaves ker beta"))
            })?,
        );
    }
    let mut dot = Vec::with_capacity(r_embed.len() * s_embed.len());
    let mut star = Vec::with_capacity(r_embed.len() * s_embed.len());
    for &b in &r_embed {
        for &a in &s_embed {
            dot.push(pos(&ka, &s_embed, x.dot(b, a)).ok_or_else(|| landing("dot", b, a))?);
            star.push(pos(&ka, &s_embed, x.star(b, a)).ok_or_else(|| landing("star", b, a))?);
        }
    }
    let boundary = GwAMorphism::new(s.clone(), r.clone(), image)?;
    let pair = DerivedActionPair::new(s, r, dot, star)?;
    pre_xmod_obj(boundary, pair)
}

/// A pair of GwA isomorphisms `(alpha, beta)` making `x1` and `x2`
/// isomorphic, if one exists. Candidates are tried in lexicographic order.
pub fn find_xmod_isomorphism(x1: &XModGwA, x2: &XModGwA) -> Option<(Vec<usize>, Vec<usize>)> {
    let alphas: Vec<Vec<usize>> = gwa::group_isomorphisms(x1.source().group(), x2.source().group())
        .into_iter()
        .filter(|a| gwa::is_gwa_morphism(a, x1.source(), x2.source()))
        .collect();
    if alphas.is_empty() {
        return None;
    }
    let betas: Vec<Vec<usize>> = gwa::group_isomorphisms(x1.range().group(), x2.range().group())
        .into_iter()
        .filter(|b| gwa::is_gwa_morphism(b, x1.range(), x2.range()))
        .collect();
    for b in &betas {
        for a in &alphas {
            if xmod_morphism_failure(a, b, x1, x2).is_none() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::gwa::all_gwa_on_group;
    use crate::ideal::all_ideals;

    #[test]
    fn ideal_inclusions_are_crossed_modules() {
        let a4 = GroupWithAction::conjugation(Arc::new(Group::alternating_4()));
        for i in all_ideals(&a4) {
            let x = xmod_by_ideal(&a4, &i).unwrap();
            assert_eq!(x.level, XModLevel::Full);
            assert!(x.action.verify().is_ok());
        }
    }

    #[test]
    fn zero_boundary_on_c2() {
        let c2 = GroupWithAction::trivial(Arc::new(Group::cyclic(2)));
        let x = XModGwA::zero(&c2, &c2).unwrap();
        assert!(is_xmod(&x).is_ok());
        let s3 = GroupWithAction::trivial(Arc::new(Group::symmetric_3()));
        let y = XModGwA::zero(&s3, &c2).unwrap();
        assert_eq!(y.level, XModLevel::Pre);
        let err = is_xmod(&y).unwrap_err();
        assert_eq!(err.condition, 2);
        assert!(alloc::format!("{err}").starts_with("Condition 2 is fail\nFor s = "));
    }

    #[test]
    fn identity_morphism_kernel_is_zero() {
        let g = &all_gwa_on_group(&Group::klein_four(), 12).unwrap()[5];
        let x = XModGwA::identity(g);
        let id = XModGwAMorphism::identity(&x);
        assert!(is_xmod_morphism(id.alpha.image(), id.beta.image(), &x, &x));
        let k = kernel_xmod(&id).unwrap();
        assert_eq!(k.source().order(), 1);
        assert_eq!(k.range().order(), 1);
        assert!(is_xmod(&k).is_ok());
    }

    #[test]
    fn zero_morphism_kernel_is_original() {
        let g = &all_gwa_on_group(&Group::klein_four(), 12).unwrap()[5];
        let x = XModGwA::identity(g);
        let t = XModGwA::trivial();
        let m = XModGwAMorphism::new(&x, &t, alloc::vec![0; 4], alloc::vec![0; 4]).unwrap();
        let k = kernel_xmod(&m).unwrap();
        assert_eq!(k, x);
    }

    #[test]
    fn product_with_trivial_is_isomorphic() {
        let g = &all_gwa_on_group(&Group::klein_four(), 12).unwrap()[3];
        let x = xmod_by_ideal(g, all_ideals(g).last().unwrap()).unwrap();
        let p = xmod_direct_product(&x, &XModGwA::trivial()).unwrap();
        assert!(find_xmod_isomorphism(&p, &x).is_some());
    }
}
