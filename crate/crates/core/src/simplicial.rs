//! The 1-truncated simplicial group with action of a crossed module, its
//! Moore complex, and the way back.
//!
//! Level 1 is the semidirect product `R ⋊ S` on pairs `(r, s)` with
//!
//! ```text
//! (r, s) + (r1, s1) = (r + r1, r1·s + s1)
//! d0(r, s) = r        d1(r, s) = r + ∂s        s0(r) = (r, 0)
//! ```
//!
//! and element `(r, s)` stored at index `r * |S| + s`. Its self-action is
//!
//! ```text
//! (r, s)^(r1, s1) = (r^r1, λ(r^r1, s1) + (r1⋆s)^s1)
//! ```
//!
//! where the correction term `λ: R x S -> S` must satisfy
//! `∂λ(r, s1) = -r + r^(∂s1)` and `λ(∂t, s1) = -t + t^s1`. When `∂` is
//! injective these two force `λ` completely. Otherwise `λ` is searched for
//! among maps that are crossed homomorphisms in each argument, and the
//! resulting table is checked against the GwA axioms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::gwa::{is_gwa_morphism, GroupWithAction};
use crate::hom::GroupHom;
use crate::set::ElementSet;
use crate::xmod::{find_xmod_isomorphism, is_xmod, pre_xmod_obj, DerivedActionPair, XModGwA};

const NONE: usize = usize::MAX;

/// Underlying group of `R ⋊ S`.
pub fn semidirect_group(x: &XModGwA) -> Group {
    let (sg, rg) = (x.source().group(), x.range().group());
    let (ns, nr) = (sg.order(), rg.order());
    let n = ns * nr;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (r, s) = (a / ns, a % ns);
        for b in 0..n {
            let (r1, s1) = (b / ns, b % ns);
            table.push(rg.op(r, r1) * ns + sg.op(x.dot(r1, s), s1));
        }
    }
    let names = (0..n)
        .map(|a| format!("({},{})", rg.name(a / ns), sg.name(a % ns)))
        .collect();
    Group::from_flat(n, table)
        .expect("semidirect table")
        .with_names(names)
}

struct LiftSearch<'a> {
    x: &'a XModGwA,
    ns: usize,
    nr: usize,
    r_gens: Vec<usize>,
    s_gens: Vec<usize>,
    /// Admissible values of `λ(r, s1)` at index `r * ns + s1`.
    domain: Vec<Vec<usize>>,
}

impl<'a> LiftSearch<'a> {
    fn new(x: &'a XModGwA) -> Option<Self> {
        let (s, r) = (x.source(), x.range());
        let (sg, rg) = (s.group(), r.group());
        let (ns, nr) = (sg.order(), rg.order());
        let mut fibres = alloc::vec![Vec::new(); nr];
        for v in sg.elements() {
            fibres[x.bdy(v)].push(v);
        }
        let mut forced = alloc::vec![NONE; nr * ns];
        for t in sg.elements() {
            for s1 in sg.elements() {
                let v = sg.neg_add(t, s.action(t, s1));
                let slot = &mut forced[x.bdy(t) * ns + s1];
                if *slot == NONE {
                    *slot = v;
                } else if *slot != v {
                    return None;
                }
            }
        }
        let mut domain = Vec::with_capacity(nr * ns);
        for a in rg.elements() {
            for s1 in sg.elements() {
                let target = rg.neg_add(a, r.action(a, x.bdy(s1)));
                let f = forced[a * ns + s1];
                let d: Vec<usize> = fibres[target]
                    .iter()
                    .copied()
                    .filter(|&v| f == NONE || v == f)
                    .collect();
                domain.push(d);
            }
        }
        Some(LiftSearch {
            x,
            ns,
            nr,
            r_gens: rg.generators(),
            s_gens: sg.generators(),
            domain,
        })
    }

    fn admissible(&self, a: usize, s1: usize, v: usize) -> bool {
        self.domain[a * self.ns + s1].contains(&v)
    }

    /// Extends generator values to a column `λ(-, h)` using
    /// `λ(r + g, h) = g·λ(r, h) + λ(g, h)`.
    fn column(&self, vals: &[usize], h: usize) -> Option<Vec<usize>> {
        let (sg, rg) = (self.x.source().group(), self.x.range().group());
        let mut col = alloc::vec![NONE; self.nr];
        col[0] = 0;
        let mut stack = alloc::vec![0usize];
        while let Some(a) = stack.pop() {
            for (&g, &vg) in self.r_gens.iter().zip(vals) {
                let b = rg.op(a, g);
                let v = sg.op(self.x.dot(g, col[a]), vg);
                if col[b] == NONE {
                    col[b] = v;
                    stack.push(b);
                } else if col[b] != v {
                    return None;
                }
            }
        }
        rg.elements()
            .all(|a| self.admissible(a, h, col[a]))
            .then_some(col)
    }

    fn columns_for(&self, h: usize) -> Vec<Vec<usize>> {
        let choices: Vec<&Vec<usize>> = self
            .r_gens
            .iter()
            .map(|&g| &self.domain[g * self.ns + h])
            .collect();
        let mut out = Vec::new();
        for_each_choice(&choices, |vals| {
            if let Some(c) = self.column(vals, h) {
                out.push(c);
            }
        });
        out
    }

    /// Extends chosen columns over `S` using
    /// `λ(r, s + h) = λ(r, h) + λ(r, s)^h`, giving a full `|R| x |S|` table.
    fn extend(&self, cols: &[&Vec<usize>]) -> Option<Vec<usize>> {
        let s = self.x.source();
        let sg = s.group();
        let mut table = alloc::vec![NONE; self.nr * self.ns];
        for a in 0..self.nr {
            let row = &mut table[a * self.ns..(a + 1) * self.ns];
            row[0] = 0;
            let mut stack = alloc::vec![0usize];
            while let Some(t) = stack.pop() {
                for (&h, col) in self.s_gens.iter().zip(cols) {
                    let t2 = sg.op(t, h);
                    let v = sg.op(col[a], s.action(row[t], h));
                    if row[t2] == NONE {
                        row[t2] = v;
                        stack.push(t2);
                    } else if row[t2] != v {
                        return None;
                    }
                }
            }
            if !(0..self.ns).all(|t| self.admissible(a, t, row[t])) {
                return None;
            }
        }
        Some(table)
    }

    fn run(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let per_gen: Vec<Vec<Vec<usize>>> =
            self.s_gens.iter().map(|&h| self.columns_for(h)).collect();
        let choices: Vec<Vec<usize>> = per_gen.iter().map(|c| (0..c.len()).collect()).collect();
        let choice_refs: Vec<&Vec<usize>> = choices.iter().collect();
        let mut found = None;
        for_each_choice_until(&choice_refs, |idx| {
            let cols: Vec<&Vec<usize>> = idx.iter().zip(&per_gen).map(|(&i, c)| &c[i]).collect();
            if let Some(lift) = self.extend(&cols) {
                let act = semidirect_action(self.x, &lift);
                if crate::gwa::check_axioms(&semidirect_group(self.x), &act).is_ok() {
                    found = Some((lift, act));
                    return true;
                }
            }
            false
        });
        found
    }
}

fn for_each_choice<F: FnMut(&[usize])>(choices: &[&Vec<usize>], mut f: F) {
    for_each_choice_until(choices, |v| {
        f(v);
        false
    });
}

/// Odometer over the cartesian product; stops when `f` returns `true`.
fn for_each_choice_until<F: FnMut(&[usize]) -> bool>(choices: &[&Vec<usize>], mut f: F) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = alloc::vec![0usize; choices.len()];
    let mut vals: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        if f(&vals) {
            return;
        }
        let mut k = 0;
        loop {
            if k == choices.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                vals[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            vals[k] = choices[k][0];
            k += 1;
        }
    }
}

fn semidirect_action(x: &XModGwA, lift: &[usize]) -> Vec<usize> {
    let (s, r) = (x.source(), x.range());
    let (sg, ns) = (s.group(), s.order());
    let n = ns * r.order();
    let mut act = Vec::with_capacity(n * n);
    for h in 0..n {
        let (r1, s1) = (h / ns, h % ns);
        for g in 0..n {
            let (a, b) = (g / ns, g % ns);
            let ar = r.action(a, r1);
            act.push(ar * ns + sg.op(lift[ar * ns + s1], s.action(x.star(r1, b), s1)));
        }
    }
    act
}

/// `R ⋊ S` with its self-action, together with the correction term `λ`
/// as an `|R| x |S|` table.
pub fn semidirect_gwa_with_lift(x: &XModGwA) -> Result<(GroupWithAction, Vec<usize>)> {
    is_xmod(x)?;
    let search = LiftSearch::new(x).ok_or_else(|| {
        Error::Construction("the boundary identifies elements whose twists disagree".into())
    })?;
    let (lift, act) = search.run().ok_or_else(|| {
        Error::Construction(
            "no correction term makes the semidirect product a group with action".into(),
        )
    })?;
    let g = Arc::new(semidirect_group(x));
    let gwa = GroupWithAction::from_flat(g, act)
        .map_err(|e| Error::Construction(format!("semidirect action: {e}")))?;
    check_golden(x, &gwa)?;
    Ok((gwa, lift))
}

pub fn semidirect_gwa(x: &XModGwA) -> Result<GroupWithAction> {
    semidirect_gwa_with_lift(x).map(|(g, _)| g)
}

/// `(0, s1)^(-∂s, s) = (0, s1)` and `(-∂s, s)^(0, s1) = (-∂s, s)`.
fn check_golden(x: &XModGwA, k: &GroupWithAction) -> Result<()> {
    let (sg, rg) = (x.source().group(), x.range().group());
    let ns = sg.order();
    for s in sg.elements() {
        let twisted = rg.neg(x.bdy(s)) * ns + s;
        for s1 in sg.elements() {
            if k.action(s1, twisted) != s1 || k.action(twisted, s1) != twisted {
                return Err(Error::Construction(format!(
                    "semidirect action moves a fixed pair at s={s}, s1={s1}"
                )));
            }
        }
    }
    Ok(())
}

/// Levels 0 and 1 of a simplicial group with action, with both face maps
/// and the degeneracy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialGwA {
    pub g0: GroupWithAction,
    pub g1: GroupWithAction,
    pub d0: GroupHom,
    pub d1: GroupHom,
    pub s0: GroupHom,
}

impl TruncatedSimplicialGwA {
    /// Checks `d0 s0 = d1 s0 = id` and that all three maps are GwA morphisms.
    pub fn verify(&self) -> Result<()> {
        for r in self.g0.group().elements() {
            let up = self.s0.apply(r);
            if self.d0.apply(up) != r || self.d1.apply(up) != r {
                return Err(Error::Construction(format!(
                    "simplicial identity fails at r={r}"
                )));
            }
        }
        for (name, m, src, dst) in [
            ("d0", &self.d0, &self.g1, &self.g0),
            ("d1", &self.d1, &self.g1, &self.g0),
            ("s0", &self.s0, &self.g0, &self.g1),
        ] {
            if !is_gwa_morphism(&m.image, src, dst) {
                return Err(Error::Construction(format!("{name} is not a GwA morphism")));
            }
        }
        Ok(())
    }

    /// Generators of `[ker d0, ker d1]`: group commutators and the twists
    /// `-x + x^y`, `-y + y^x`. Returns the first nonzero one, if any.
    pub fn kernel_bracket_witness(&self) -> Option<(usize, usize)> {
        let (g, k) = (self.g1.group(), &self.g1);
        let k0 = self.d0.kernel();
        let k1 = self.d1.kernel();
        for a in k0.iter() {
            for b in k1.iter() {
                if g.commutator(a, b) != 0
                    || g.neg_add(a, k.action(a, b)) != 0
                    || g.neg_add(b, k.action(b, a)) != 0
                {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn kernel_bracket_is_zero(&self) -> bool {
        self.kernel_bracket_witness().is_none()
    }
}

/// The truncated simplicial GwA of a crossed module.
pub fn simplicial_from_xmod(x: &XModGwA) -> Result<TruncatedSimplicialGwA> {
    let g1 = semidirect_gwa(x)?;
    let g0 = x.range().clone();
    let (ns, nr) = (x.source().order(), x.range().order());
    let rg = g0.group();
    let d0 = (0..ns * nr).map(|a| a / ns).collect();
    let d1 = (0..ns * nr).map(|a| rg.op(a / ns, x.bdy(a % ns))).collect();
    let s0 = (0..nr).map(|r| r * ns).collect();
    let (a0, a1) = (g0.group_arc().clone(), g1.group_arc().clone());
    let t = TruncatedSimplicialGwA {
        d0: GroupHom::new(a1.clone(), a0.clone(), d0)?,
        d1: GroupHom::new(a1.clone(), a0.clone(), d1)?,
        s0: GroupHom::new(a0, a1, s0)?,
        g0,
        g1,
    };
    t.verify()?;
    Ok(t)
}

/// `NG0 = G0`, `NG1 = ker d0`, with `∂` the restriction of `d1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreComplex {
    pub ng0: GroupWithAction,
    pub ng1: GroupWithAction,
    pub partial1: GroupHom,
    /// `ng1` element `i` is element `embedding[i]` of `g1`.
    pub embedding: Vec<usize>,
    /// 0 when `ng1` is trivial, otherwise 1.
    pub length: usize,
}

pub fn moore_complex(t: &TruncatedSimplicialGwA) -> Result<MooreComplex> {
    let ker: ElementSet = t.d0.kernel();
    let (ng1, embedding) = t.g1.restrict(&ker)?;
    let image = embedding.iter().map(|&a| t.d1.apply(a)).collect();
    let partial1 = GroupHom::new(ng1.group_arc().clone(), t.g0.group_arc().clone(), image)?;
    if !is_gwa_morphism(&partial1.image, &ng1, &t.g0) {
        return Err(Error::Construction(
            "restricted d1 does not preserve the action".into(),
        ));
    }
    let length = usize::from(ng1.order() > 1);
    Ok(MooreComplex {
        ng0: t.g0.clone(),
        ng1,
        partial1,
        embedding,
        length,
    })
}

/// Reads a crossed module off a truncated simplicial GwA: `r·s` is
/// conjugation by `s0(r)` and `r⋆s = s^(s0 r)`, both computed in `G1`.
pub fn xmod_from_simplicial(t: &TruncatedSimplicialGwA) -> Result<XModGwA> {
    let m = moore_complex(t)?;
    if t.kernel_bracket_witness().is_some() {
        return Err(Error::Construction(
            "[ker d0, ker d1] is not trivial".into(),
        ));
    }
    let g = t.g1.group();
    let mut pos = alloc::vec![NONE; g.order()];
    for (i, &e) in m.embedding.iter().enumerate() {
        pos[e] = i;
    }
    let land = |v: usize| -> Result<usize> {
        match pos[v] {
            NONE => Err(Error::Construction(format!(
                "{} is outside ker d0",
                g.name(v)
            ))),
            i => Ok(i),
        }
    };
    let mut dot = Vec::with_capacity(m.ng0.order() * m.ng1.order());
    let mut star = Vec::with_capacity(m.ng0.order() * m.ng1.order());
    for r in m.ng0.group().elements() {
        let up = t.s0.apply(r);
        for &e in &m.embedding {
            dot.push(land(g.conj(e, up))?);
            star.push(land(t.g1.action(e, up))?);
        }
    }
    let boundary = crate::gwa::GwAMorphism {
        src: m.ng1.clone(),
        dst: m.ng0.clone(),
        hom: m.partial1.clone(),
    };
    let pair = DerivedActionPair::new(m.ng1, m.ng0, dot, star)?;
    let x = pre_xmod_obj(boundary, pair)?;
    is_xmod(&x)?;
    Ok(x)
}

/// Outcome of sending a crossed module to simplicial form and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    /// Semidirect construction, face/degeneracy maps and simplicial
    /// identities all succeeded.
    pub simplicial_ok: bool,
    pub bracket_zero: bool,
    pub moore_length: Option<usize>,
    /// The recovered crossed module is isomorphic to the input.
    pub roundtrip_ok: bool,
    pub error: Option<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.simplicial_ok && self.bracket_zero && self.roundtrip_ok
    }
}

pub fn roundtrip(x: &XModGwA) -> RoundTripReport {
    let mut report = RoundTripReport {
        simplicial_ok: false,
        bracket_zero: false,
        moore_length: None,
        roundtrip_ok: false,
        error: None,
    };
    let t = match simplicial_from_xmod(x) {
        Ok(t) => t,
        Err(e) => {
            report.error = Some(format!("{e}"));
            return report;
        }
    };
    report.simplicial_ok = true;
    report.bracket_zero = t.kernel_bracket_is_zero();
    match moore_complex(&t) {
        Ok(m) => report.moore_length = Some(m.length),
        Err(e) => {
            report.error = Some(format!("{e}"));
            return report;
        }
    }
    match xmod_from_simplicial(&t) {
        Ok(back) => {
            report.roundtrip_ok = find_xmod_isomorphism(&back, x).is_some();
            if !report.roundtrip_ok {
                report.error = Some("recovered crossed module is not isomorphic".into());
            }
        }
        Err(e) => report.error = Some(format!("{e}")),
    }
    report
}
