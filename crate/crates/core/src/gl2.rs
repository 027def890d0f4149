//! GL2 chains: 2-potent bounded commutative chains satisfying
//! `x = 1 or x(x ∧ y) ≤ (x ∧ y)²`.
//!
//! A GL2 chain splits into blocks `A(a) = {x : x² = a²}`, which are
//! intervals. Every product of two elements below 1 is the minimum of the
//! block of the smaller factor, and every implication `b → a` with
//! `a < b < 1` is either the coatom (same block) or the maximum of the block
//! of `a`. So a GL2 chain is determined up to isomorphism by its sequence of
//! block sizes, and it is the iterated partial gluing of its blocks, each
//! completed with a top to a simple 2-potent chain.
//!
//! Amalgamation of GL2 chains can fail only when the shared algebra is a
//! Gödel chain, and then only at its top block `a`. Write `B(a)`, `C(a)` for
//! the blocks containing it. `B(a)` is *pinned* when an embedding of `B`
//! forces the image of `max B(a)` to be the maximum of its block, which
//! happens when `B` has blocks above `B(a)` or when `B` has a coatom in a
//! non-singleton block structure (the coatom must go to the coatom). There
//! is no amalgam exactly when one of the following holds (or with `B` and
//! `C` exchanged):
//!
//! 1. `C(a) = {a}` is pinned and `B(a)` is not a singleton;
//! 2. `B` is not Gödel, `B(a)` is its top block, and `C` has blocks above
//!    `C(a)`;
//! 3. neither is Gödel, both have blocks above the shared one, and exactly
//!    one of the two top blocks is a singleton.
//!
//! Otherwise blocks are merged along the shared blocks, and the merged chain
//! is returned together with both embeddings, checked operation by
//! operation.

use crate::algebra::morphism::{are_isomorphic, Morphism};
use crate::algebra::sub::closure;
use crate::algebra::{FiniteRL, Op};
use crate::amalgam::{brute_force_amalgam, check_amalgam, Amalgam, VFormation};
use crate::enumerate::{gl2_chain_from_blocks, gl2_chains};
use crate::error::{Error, Result};
use crate::filters::all_congruence_filters;
use crate::gluing::partial_gluing_tau;
use crate::partial::{Entry, LowerTriple, PartialRL, UpperTriple};
use crate::set::ElemSet;
use rayon::prelude::*;
use serde::Serialize;

/// A recognized GL2 chain with its block decomposition.
#[derive(Debug, Clone)]
pub struct Gl2Chain {
    pub algebra: FiniteRL,
    /// Blocks below 1, bottom block first, each in increasing order.
    pub blocks: Vec<Vec<usize>>,
    /// Block index of every element; `None` for the unit.
    pub block_of: Vec<Option<usize>>,
    unit_block: [usize; 1],
}

impl Gl2Chain {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Every element is idempotent.
    pub fn is_godel(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn coatom(&self) -> Option<usize> {
        self.blocks.last().map(|b| *b.last().unwrap())
    }

    pub fn block(&self, x: usize) -> &[usize] {
        match self.block_of[x] {
            Some(i) => &self.blocks[i],
            None => &self.unit_block,
        }
    }

    pub fn block_min(&self, x: usize) -> usize {
        self.block(x)[0]
    }

    pub fn block_max(&self, x: usize) -> usize {
        *self.block(x).last().unwrap()
    }

    pub fn top_block(&self) -> Option<&[usize]> {
        self.blocks.last().map(Vec::as_slice)
    }

    pub fn idempotents(&self) -> ElemSet {
        self.algebra
            .elements()
            .filter(|&x| self.algebra.is_idempotent(x))
            .collect()
    }

    /// Each block completed with a new top: a simple 2-potent chain in
    /// which every product below the top is the bottom.
    pub fn block_algebras(&self) -> Vec<FiniteRL> {
        self.blocks
            .iter()
            .map(|b| gl2_chain_from_blocks(&[b.len()]).expect("nonempty block"))
            .collect()
    }
}

/// Elements of a chain in increasing order.
fn chain_order(a: &FiniteRL) -> Vec<usize> {
    let mut v: Vec<usize> = a.elements().collect();
    v.sort_by_key(|&x| a.elements().filter(|&y| a.leq(y, x)).count());
    v
}

/// Checks the defining conditions and computes the blocks, without the
/// gluing round trip.
pub fn gl2_structure(a: &FiniteRL) -> Result<Gl2Chain> {
    let not = |m: String| Err(Error::NotGl2(m));
    if a.zero() != Some(a.bottom()) {
        return not("no zero at the bottom".into());
    }
    if !a.is_chain() {
        return not("not a chain".into());
    }
    if !a.is_commutative() {
        return not("not commutative".into());
    }
    for x in a.elements() {
        if a.pow(x, 2) != a.pow(x, 3) {
            return not(format!("{} is not 2-potent", a.label(x)));
        }
    }
    let u = a.unit();
    for x in a.elements().filter(|&x| x != u) {
        for y in a.elements() {
            let m = a.meet(x, y);
            if !a.leq(a.mul(x, m), a.mul(m, m)) {
                return not(format!(
                    "x(x∧y) ≰ (x∧y)² at x = {}, y = {}",
                    a.label(x),
                    a.label(y)
                ));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![None; a.n()];
    let mut last_square = None;
    for x in chain_order(a).into_iter().filter(|&x| x != u) {
        let sq = a.mul(x, x);
        if last_square != Some(sq) {
            blocks.push(Vec::new());
            last_square = Some(sq);
        }
        block_of[x] = Some(blocks.len() - 1);
        blocks.last_mut().unwrap().push(x);
    }
    Ok(Gl2Chain {
        algebra: a.clone(),
        blocks,
        block_of,
        unit_block: [u],
    })
}

/// Recognizes a GL2 chain and confirms that it is isomorphic to the
/// iterated partial gluing of its blocks.
pub fn recognize_gl2(a: &FiniteRL) -> Result<Gl2Chain> {
    let g = gl2_structure(a)?;
    if a.n() > 1 {
        let rebuilt = iterated_partial_gluing(&g.block_algebras())?;
        if are_isomorphic(a, &rebuilt).is_none() {
            return Err(Error::Internal(
                "GL2 chain differs from the gluing of its blocks".into(),
            ));
        }
    }
    Ok(g)
}

/// Checks that `part` is a simple, bounded, commutative, 2-potent chain with
/// a coatom, and returns its elements below 1 in increasing order.
fn simple_block(part: &FiniteRL) -> Result<Vec<usize>> {
    let bad = |m: &str| Err(Error::Precondition(format!("gluing part: {m}")));
    if part.n() < 2 {
        return bad("trivial algebra");
    }
    if part.zero() != Some(part.bottom()) || !part.is_chain() || !part.is_commutative() {
        return bad("not a bounded commutative chain");
    }
    if part.elements().any(|x| part.pow(x, 2) != part.pow(x, 3)) {
        return bad("not 2-potent");
    }
    if all_congruence_filters(part).filters.len() != 2 {
        return bad("not simple");
    }
    Ok(chain_order(part)
        .into_iter()
        .filter(|&x| x != part.unit())
        .collect())
}

/// The iterated partial gluing of simple 2-potent chains, indexed bottom
/// first: products across blocks go to the bottom of the lower block.
pub fn iterated_partial_gluing(parts: &[FiniteRL]) -> Result<FiniteRL> {
    let mut slots: Vec<(usize, usize)> = Vec::new();
    let mut labels = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for x in simple_block(p)? {
            slots.push((i, x));
            labels.push(format!("{}.{}", i, p.label(x)));
        }
    }
    if slots.is_empty() {
        return Err(Error::Precondition("no parts to glue".into()));
    }
    labels.push("1".into());
    let top = slots.len();
    let bottoms: Vec<usize> = parts.iter().map(|p| p.bottom()).collect();
    let lookup = |x: usize, y: usize| -> usize {
        if x == top {
            return y;
        }
        if y == top {
            return x;
        }
        let (i, xe) = slots[x];
        let (j, ye) = slots[y];
        let (block, value) = if i == j {
            (i, parts[i].mul(xe, ye))
        } else {
            let lower = i.min(j);
            (lower, bottoms[lower])
        };
        if value == parts[block].unit() {
            top
        } else {
            slots.iter().position(|&s| s == (block, value)).unwrap()
        }
    };
    Ok(
        FiniteRL::from_order_mul(top + 1, |x, y| x <= y, lookup, top, Some(0))?
            .with_labels(Some(labels)),
    )
}

/// The same algebra built by folding the binary partial gluing: the chain
/// glued so far, with implications inside a block left undefined unless
/// they equal 1, is the lower triple (blockwise bottom and coatom as conucleus and closure), the
/// next part is the upper triple with nothing undefined, and the ideal is
/// the bottom element.
pub fn fold_partial_gluings(parts: &[FiniteRL]) -> Result<FiniteRL> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Precondition("no parts to glue".into()))?;
    simple_block(first)?;
    let mut acc = first.clone();
    let mut block_of: Vec<usize> = vec![0; acc.n()];
    for (idx, part) in rest.iter().enumerate() {
        simple_block(part)?;
        let n = acc.n();
        let u = acc.unit();
        let members =
            |b: usize| -> ElemSet { (0..n).filter(|&x| x != u && block_of[x] == b).collect() };
        let mut sigma = vec![u; n];
        let mut gamma = vec![u; n];
        for x in (0..n).filter(|&x| x != u) {
            let blk = members(block_of[x]);
            sigma[x] = acc.min_of(blk).unwrap();
            gamma[x] = acc.max_of(blk).unwrap();
        }
        let k = PartialRL::from_fn(
            n,
            |x, y| acc.leq(x, y),
            |op, x, y| match op {
                Op::Ldiv if !acc.leq(x, y) && acc.leq(sigma[x], y) => Entry::Undef,
                Op::Rdiv if !acc.leq(y, x) && acc.leq(sigma[y], x) => Entry::Undef,
                _ => Entry::Val(acc.op(op, x, y)),
            },
            acc.zero(),
            acc.labels().map(|l| l.to_vec()),
        )?;
        let lower = LowerTriple { k, sigma, gamma };
        let upper = UpperTriple {
            l: PartialRL::from_total(part),
            ell: vec![None; part.n()],
            r: vec![None; part.n()],
        };
        let glued = partial_gluing_tau(&lower, Some(ElemSet::singleton(acc.bottom())), &upper)?;
        let total = glued.to_total()?;
        let mut next = vec![0; total.n()];
        for x in (0..n).filter(|&x| x != u) {
            next[glued.lower_map[x]] = block_of[x];
        }
        for y in (0..part.n()).filter(|&y| y != part.unit()) {
            next[glued.upper_map[y]] = idx + 1;
        }
        block_of = next;
        acc = total;
    }
    Ok(acc)
}

/// Which case of the generation lemma applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenerationCase {
    /// Idempotent seeds with singleton blocks below the largest one:
    /// `⟨X⟩ = X ∪ {1}`.
    Idempotent,
    /// `⟨X⟩ = X ∪ {min A(x), max A(x) : x ∈ X} ∪ {1, c, min A(c)}`.
    General,
}

/// `⟨X⟩` computed both by fixpoint closure and by the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generation {
    pub seed: ElemSet,
    pub case: GenerationCase,
    pub fixpoint: ElemSet,
    pub closed_form: ElemSet,
}

impl Generation {
    pub fn agrees(&self) -> bool {
        self.fixpoint == self.closed_form
    }

    /// `|⟨X⟩| ≤ 3|X| + 3`.
    pub fn within_bound(&self) -> bool {
        self.fixpoint.len() <= 3 * self.seed.len() + 3
    }
}

/// The closed form of `⟨X⟩` in a GL2 chain.
pub fn generated_closed_form(g: &Gl2Chain, seed: ElemSet) -> Result<(GenerationCase, ElemSet)> {
    let a = &g.algebra;
    let u = a.unit();
    let below: Vec<usize> = seed.iter().filter(|&x| x != u).collect();
    let top = below.iter().copied().max_by(|&x, &y| {
        if a.leq(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let idempotent_case = below
        .iter()
        .all(|&x| a.is_idempotent(x) && (Some(x) == top || g.block(x).len() == 1));
    let mut out = seed;
    out.insert(u);
    if idempotent_case {
        return Ok((GenerationCase::Idempotent, out));
    }
    let c = g
        .coatom()
        .ok_or_else(|| Error::Internal("non-idempotent generation without a coatom".into()))?;
    for &x in &below {
        out.insert(g.block_min(x));
        out.insert(g.block_max(x));
    }
    out.insert(c);
    out.insert(g.block_min(c));
    Ok((GenerationCase::General, out))
}

/// `⟨X⟩` by fixpoint closure, compared with the closed form.
pub fn gl2_generate(g: &Gl2Chain, seed: ElemSet) -> Result<Generation> {
    let (case, closed_form) = generated_closed_form(g, seed)?;
    Ok(Generation {
        seed,
        case,
        fixpoint: closure(&g.algebra, seed, false),
        closed_form,
    })
}

/// Closes an already closed set `s` after adding `x`.
fn extend_closed(a: &FiniteRL, mut s: ElemSet, x: usize) -> ElemSet {
    if !s.insert(x) {
        return s;
    }
    let mut frontier = vec![x];
    while let Some(y) = frontier.pop() {
        for z in s.to_vec() {
            for op in Op::ALL {
                for r in [a.op(op, y, z), a.op(op, z, y)] {
                    if s.insert(r) {
                        frontier.push(r);
                    }
                }
            }
        }
    }
    s
}

/// Totals of [`generation_sweep`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GenerationSweep {
    pub chains: usize,
    pub seeds: usize,
    pub idempotent_case: usize,
    pub general_case: usize,
    /// `(block sizes, seed)` where the closed form differs from the closure.
    pub mismatches: Vec<(Vec<usize>, u128)>,
    pub bound_violations: Vec<(Vec<usize>, u128)>,
    pub largest: usize,
}

impl GenerationSweep {
    fn merge(mut self, other: GenerationSweep) -> GenerationSweep {
        self.chains += other.chains;
        self.seeds += other.seeds;
        self.idempotent_case += other.idempotent_case;
        self.general_case += other.general_case;
        self.mismatches.extend(other.mismatches);
        self.bound_violations.extend(other.bound_violations);
        self.largest = self.largest.max(other.largest);
        self
    }
}

/// Every seed of every GL2 chain with `2..=max_size` elements. Closures are
/// built incrementally over seeds ordered by bitmask.
pub fn generation_sweep(max_size: usize) -> Result<GenerationSweep> {
    let chains: Vec<FiniteRL> = (2..=max_size).flat_map(gl2_chains).collect();
    chains
        .par_iter()
        .map(sweep_chain_seeds)
        .try_reduce(GenerationSweep::default, |x, y| Ok(x.merge(y)))
}

fn sweep_chain_seeds(a: &FiniteRL) -> Result<GenerationSweep> {
    let n = a.n();
    let g = gl2_structure(a)?;
    let mut out = GenerationSweep {
        chains: 1,
        ..Default::default()
    };
    let mut closed = vec![ElemSet::new(); 1 << n];
    closed[0] = ElemSet::singleton(a.unit());
    for mask in 0usize..1 << n {
        if mask > 0 {
            let low = mask.trailing_zeros() as usize;
            closed[mask] = extend_closed(a, closed[mask & (mask - 1)], low);
        }
        let seed = ElemSet::from_bits(mask as u128);
        let (case, form) = generated_closed_form(&g, seed)?;
        out.seeds += 1;
        match case {
            GenerationCase::Idempotent => out.idempotent_case += 1,
            GenerationCase::General => out.general_case += 1,
        }
        let got = closed[mask];
        out.largest = out.largest.max(got.len());
        if got != form {
            out.mismatches.push((g.block_sizes(), mask as u128));
        }
        if got.len() > 3 * seed.len() + 3 {
            out.bound_violations.push((g.block_sizes(), mask as u128));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    B,
    C,
}

/// Why a V-formation of GL2 chains has no GL2-chain amalgam. `side` names
/// the algebra whose constraint is violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// The block of `a` on `side` is `{a}` and pinned, while the block of
    /// `a` on the other side has elements above `a`.
    PinnedSingleton { side: Side },
    /// The block of `a` on `side` is that algebra's top block and holds its
    /// coatom, so it must be the top block of any amalgam, but the other
    /// side has blocks above it.
    CappedTop { side: Side },
    /// Both coatoms lie above the shared blocks and must be identified, but
    /// exactly one of their blocks is a singleton.
    CoatomBlocks,
}

#[derive(Debug, Clone)]
pub enum AmalgamDecision {
    Amalgam {
        amalgam: Amalgam,
        strong: bool,
    },
    /// `witness` is the largest element of `A` below 1.
    Impossible {
        witness: usize,
        obstruction: Obstruction,
    },
}

impl AmalgamDecision {
    pub fn exists(&self) -> bool {
        matches!(self, AmalgamDecision::Amalgam { .. })
    }
}

/// One side of a V-formation seen from the shared top block.
struct SideView<'a> {
    g: &'a Gl2Chain,
    /// Index of the block containing the image of `a`.
    anchor: usize,
}

impl SideView<'_> {
    fn anchor_block(&self) -> &[usize] {
        &self.g.blocks[self.anchor]
    }
    fn has_blocks_above(&self) -> bool {
        self.anchor + 1 < self.g.blocks.len()
    }
    fn pinned(&self) -> bool {
        self.has_blocks_above() || !self.g.is_godel()
    }
}

fn top_anchor_views<'a>(
    v: &VFormation,
    ga: &Gl2Chain,
    gb: &'a Gl2Chain,
    gc: &'a Gl2Chain,
) -> Option<(usize, SideView<'a>, SideView<'a>)> {
    let a = *ga.blocks.last()?.first()?;
    let sb = SideView {
        g: gb,
        anchor: gb.block_of[v.i.apply(a)]?,
    };
    let sc = SideView {
        g: gc,
        anchor: gc.block_of[v.j.apply(a)]?,
    };
    Some((a, sb, sc))
}

fn find_obstruction(
    v: &VFormation,
    ga: &Gl2Chain,
    gb: &Gl2Chain,
    gc: &Gl2Chain,
) -> Option<(usize, Obstruction)> {
    if !ga.is_godel() {
        return None;
    }
    let (a, sb, sc) = top_anchor_views(v, ga, gb, gc)?;
    for (side, this, other) in [(Side::B, &sb, &sc), (Side::C, &sc, &sb)] {
        if this.anchor_block().len() == 1 && this.pinned() && other.anchor_block().len() > 1 {
            return Some((a, Obstruction::PinnedSingleton { side }));
        }
    }
    for (side, this, other) in [(Side::B, &sb, &sc), (Side::C, &sc, &sb)] {
        if !this.g.is_godel() && !this.has_blocks_above() && other.has_blocks_above() {
            return Some((a, Obstruction::CappedTop { side }));
        }
    }
    if !gb.is_godel() && !gc.is_godel() && sb.has_blocks_above() && sc.has_blocks_above() {
        let single = |g: &Gl2Chain| g.top_block().map_or(0, <[usize]>::len) == 1;
        if single(gb) != single(gc) {
            return Some((a, Obstruction::CoatomBlocks));
        }
    }
    None
}

/// The naive failure condition: `A` is Gödel and some
/// `a ∈ A` has `B(a)` larger than a singleton while `C(a)` is a singleton
/// other than the top block of `C` (or the same with `B` and `C`
/// exchanged). It misses some failures; kept for comparison.
pub fn literal_failure_condition(v: &VFormation) -> Result<Option<usize>> {
    let ga = gl2_structure(&v.a)?;
    let gb = gl2_structure(&v.b)?;
    let gc = gl2_structure(&v.c)?;
    if !ga.is_godel() {
        return Ok(None);
    }
    let u = v.a.unit();
    for x in v.a.elements().filter(|&x| x != u) {
        for (p, q, ep, eq) in [(&gb, &gc, &v.i, &v.j), (&gc, &gb, &v.j, &v.i)] {
            let px = ep.apply(x);
            let qx = eq.apply(x);
            let q_top = q.block_of[qx] == Some(q.blocks.len() - 1);
            if p.block(px).len() > 1 && q.block(qx).len() == 1 && !q_top {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    B(usize),
    C(usize),
    Both(usize, usize),
}

/// Interleaves a `B`-block and a `C`-block that share the listed pairs:
/// between shared elements `B`-elements come first. When exactly one side
/// is pinned its elements above the last shared one come last, and when
/// both are pinned their maxima are identified.
fn merge_blocks(
    bb: &[usize],
    cb: &[usize],
    shared: &[(usize, usize)],
    pin_b: bool,
    pin_c: bool,
) -> Result<Vec<Slot>> {
    let mut shared = shared.to_vec();
    let maxes = (*bb.last().unwrap(), *cb.last().unwrap());
    if pin_b && pin_c && shared.last() != Some(&maxes) {
        shared.push(maxes);
    }
    let mut out = Vec::new();
    let (mut pb, mut pc) = (0, 0);
    let broken = || Error::Internal("shared element outside its block".into());
    for &(x, y) in &shared {
        let qb = pb + bb[pb..].iter().position(|&e| e == x).ok_or_else(broken)?;
        let qc = pc + cb[pc..].iter().position(|&e| e == y).ok_or_else(broken)?;
        out.extend(bb[pb..qb].iter().map(|&e| Slot::B(e)));
        out.extend(cb[pc..qc].iter().map(|&e| Slot::C(e)));
        out.push(Slot::Both(x, y));
        pb = qb + 1;
        pc = qc + 1;
    }
    let rest_b = bb[pb..].iter().map(|&e| Slot::B(e));
    let rest_c = cb[pc..].iter().map(|&e| Slot::C(e));
    if pin_b && !pin_c {
        out.extend(rest_c);
        out.extend(rest_b);
    } else {
        out.extend(rest_b);
        out.extend(rest_c);
    }
    Ok(out)
}

fn separate(blocks: &[Vec<usize>], side: Side) -> impl Iterator<Item = Vec<Slot>> + '_ {
    blocks.iter().map(move |b| {
        b.iter()
            .map(|&e| match side {
                Side::B => Slot::B(e),
                Side::C => Slot::C(e),
            })
            .collect()
    })
}

/// Merges the block sequences of `B` and `C` along the blocks of `A`.
fn canonical_amalgam(
    v: &VFormation,
    ga: &Gl2Chain,
    gb: &Gl2Chain,
    gc: &Gl2Chain,
) -> Result<Amalgam> {
    if v.a.n() == 1 {
        let id = Morphism::identity(1);
        return Ok(Amalgam {
            d: v.a.clone(),
            h: id.clone(),
            k: id,
        });
    }
    let mut d_blocks: Vec<Vec<Slot>> = Vec::new();
    let (mut next_b, mut next_c) = (0, 0);
    let last = ga.blocks.len() - 1;
    let top_pins = top_anchor_views(v, ga, gb, gc).map(|(_, sb, sc)| (sb.pinned(), sc.pinned()));
    for (s, alpha) in ga.blocks.iter().enumerate() {
        let bi = gb.block_of[v.i.apply(alpha[0])]
            .ok_or_else(|| Error::Internal("anchor at the unit".into()))?;
        let ci = gc.block_of[v.j.apply(alpha[0])]
            .ok_or_else(|| Error::Internal("anchor at the unit".into()))?;
        d_blocks.extend(separate(&gb.blocks[next_b..bi], Side::B));
        d_blocks.extend(separate(&gc.blocks[next_c..ci], Side::C));
        let shared: Vec<(usize, usize)> = alpha
            .iter()
            .map(|&x| (v.i.apply(x), v.j.apply(x)))
            .collect();
        let (pin_b, pin_c) = match top_pins {
            Some(p) if s == last && ga.is_godel() => p,
            _ => (false, false),
        };
        d_blocks.push(merge_blocks(
            &gb.blocks[bi],
            &gc.blocks[ci],
            &shared,
            pin_b,
            pin_c,
        )?);
        next_b = bi + 1;
        next_c = ci + 1;
    }
    let rest_b = &gb.blocks[next_b..];
    let rest_c = &gc.blocks[next_c..];
    match (rest_b.split_last(), rest_c.split_last()) {
        (Some((tb, lb)), Some((tc, lc))) if !gb.is_godel() && !gc.is_godel() => {
            d_blocks.extend(separate(lb, Side::B));
            d_blocks.extend(separate(lc, Side::C));
            d_blocks.push(merge_blocks(tb, tc, &[(tb[0], tc[0])], true, true)?);
        }
        _ if !gb.is_godel() => {
            d_blocks.extend(separate(rest_c, Side::C));
            d_blocks.extend(separate(rest_b, Side::B));
        }
        _ => {
            d_blocks.extend(separate(rest_b, Side::B));
            d_blocks.extend(separate(rest_c, Side::C));
        }
    }
    let sizes: Vec<usize> = d_blocks.iter().map(Vec::len).collect();
    let mut h = vec![usize::MAX; v.b.n()];
    let mut k = vec![usize::MAX; v.c.n()];
    let mut labels = Vec::new();
    for (pos, slot) in d_blocks.iter().flatten().enumerate() {
        match *slot {
            Slot::B(x) => {
                h[x] = pos;
                labels.push(v.b.label(x));
            }
            Slot::C(y) => {
                k[y] = pos;
                labels.push(format!("{}'", v.c.label(y)));
            }
            Slot::Both(x, y) => {
                h[x] = pos;
                k[y] = pos;
                labels.push(v.b.label(x));
            }
        }
    }
    let d = gl2_chain_from_blocks(&sizes)?;
    labels.push("1".into());
    h[v.b.unit()] = d.unit();
    k[v.c.unit()] = d.unit();
    if h.contains(&usize::MAX) || k.contains(&usize::MAX) {
        return Err(Error::Internal("merged chain misses an element".into()));
    }
    Ok(Amalgam {
        d: d.with_labels(Some(labels)),
        h: Morphism::new(h),
        k: Morphism::new(k),
    })
}

/// Decides whether a V-formation of GL2 chains has a GL2-chain amalgam and
/// builds one when it does.
pub fn gl2_amalgam_decide(v: &VFormation) -> Result<AmalgamDecision> {
    let ga = recognize_gl2(&v.a)?;
    let gb = recognize_gl2(&v.b)?;
    let gc = recognize_gl2(&v.c)?;
    if let Some((witness, obstruction)) = find_obstruction(v, &ga, &gb, &gc) {
        return Ok(AmalgamDecision::Impossible {
            witness,
            obstruction,
        });
    }
    let amalgam = canonical_amalgam(v, &ga, &gb, &gc)?;
    let check = check_amalgam(v, &amalgam);
    if !check.is_amalgam() {
        return Err(Error::Internal(format!(
            "merged chain is not an amalgam: {check:?}"
        )));
    }
    Ok(AmalgamDecision::Amalgam {
        amalgam,
        strong: check.strong,
    })
}

/// Default size bound for the brute-force search.
pub fn default_search_bound(v: &VFormation) -> usize {
    v.b.n() + v.c.n() - v.a.n() + 2
}

/// GL2 chains by size, built once and reused across searches.
#[derive(Debug, Clone)]
pub struct Gl2Catalog {
    by_size: Vec<Vec<FiniteRL>>,
}

impl Gl2Catalog {
    pub fn new(max_size: usize) -> Self {
        let by_size = (0..=max_size)
            .map(|n| if n < 2 { Vec::new() } else { gl2_chains(n) })
            .collect();
        Gl2Catalog { by_size }
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    /// Chains with `min..=max` elements, smallest first.
    pub fn range(&self, min: usize, max: usize) -> impl Iterator<Item = &FiniteRL> {
        let max = max.min(self.max_size());
        self.by_size.get(min..=max).into_iter().flatten().flatten()
    }
}

/// First GL2-chain amalgam with at most `max_size` elements, searching
/// chains by increasing size.
pub fn brute_force_gl2_amalgam(v: &VFormation, max_size: usize) -> Option<Amalgam> {
    let catalog = Gl2Catalog::new(max_size);
    brute_force_in(v, &catalog, max_size)
}

pub fn brute_force_in(v: &VFormation, catalog: &Gl2Catalog, max_size: usize) -> Option<Amalgam> {
    brute_force_amalgam(v, catalog.range(v.b.n().max(v.c.n()), max_size))
}

/// A V-formation of GL2 chains with no amalgam: `A` the 3-element Gödel chain,
/// `B` with blocks `{0} < {a < b}`, `C` with blocks `{0} < {a} < {c}`.
pub fn failing_triple() -> VFormation {
    let a = gl2_chain_from_blocks(&[1, 1])
        .unwrap()
        .with_labels(Some(vec!["0".into(), "a".into(), "1".into()]));
    let b = gl2_chain_from_blocks(&[1, 2])
        .unwrap()
        .with_labels(Some(vec!["0".into(), "a".into(), "b".into(), "1".into()]));
    let c = gl2_chain_from_blocks(&[1, 1, 1])
        .unwrap()
        .with_labels(Some(vec!["0".into(), "a".into(), "c".into(), "1".into()]));
    VFormation::new(
        a,
        b,
        c,
        Morphism::new(vec![0, 1, 3]),
        Morphism::new(vec![0, 1, 3]),
    )
    .expect("inclusions embed")
}

/// Every V-formation of GL2 chains with `|B|, |C| ≤ max_size`, one per
/// unordered pair of `(B, i)`, `(C, j)`.
pub fn gl2_v_formations(max_size: usize) -> Vec<VFormation> {
    let chains: Vec<FiniteRL> = (2..=max_size).flat_map(gl2_chains).collect();
    let mut out = Vec::new();
    for a in &chains {
        let targets: Vec<(usize, Morphism)> = chains
            .iter()
            .enumerate()
            .flat_map(|(t, b)| {
                crate::algebra::morphism::find_embeddings(a, b)
                    .into_iter()
                    .map(move |m| (t, m))
            })
            .collect();
        for (p, (bi, i)) in targets.iter().enumerate() {
            for (cj, j) in &targets[p..] {
                out.push(VFormation {
                    a: a.clone(),
                    b: chains[*bi].clone(),
                    c: chains[*cj].clone(),
                    i: i.clone(),
                    j: j.clone(),
                });
            }
        }
    }
    out
}

/// One disagreement between the decision procedure and the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub decided: bool,
    pub found: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecisionSweep {
    pub formations: usize,
    pub amalgamable: usize,
    pub impossible: usize,
    pub strong: usize,
    pub disagreements: Vec<Disagreement>,
    /// Formations where [`literal_failure_condition`] gives the wrong answer.
    pub literal_misses: usize,
}

impl DecisionSweep {
    fn merge(mut self, other: DecisionSweep) -> DecisionSweep {
        self.formations += other.formations;
        self.amalgamable += other.amalgamable;
        self.impossible += other.impossible;
        self.strong += other.strong;
        self.disagreements.extend(other.disagreements);
        self.literal_misses += other.literal_misses;
        self
    }
}

/// Compares [`gl2_amalgam_decide`] with the brute-force search (bound
/// [`default_search_bound`]) on every V-formation with `|B|, |C| ≤ max_size`.
pub fn decision_sweep(max_size: usize) -> Result<DecisionSweep> {
    let formations = gl2_v_formations(max_size);
    let catalog = Gl2Catalog::new(2 * max_size);
    formations
        .par_iter()
        .map(|v| decide_and_search(v, &catalog))
        .try_reduce(DecisionSweep::default, |x, y| Ok(x.merge(y)))
}

fn decide_and_search(v: &VFormation, catalog: &Gl2Catalog) -> Result<DecisionSweep> {
    let mut out = DecisionSweep {
        formations: 1,
        ..Default::default()
    };
    let decision = gl2_amalgam_decide(v)?;
    let decided = decision.exists();
    match &decision {
        AmalgamDecision::Amalgam { strong, .. } => {
            out.amalgamable += 1;
            out.strong += usize::from(*strong);
        }
        AmalgamDecision::Impossible { .. } => out.impossible += 1,
    }
    let found = brute_force_in(v, catalog, default_search_bound(v)).is_some();
    if decided != found {
        let sizes = |a: &FiniteRL| {
            gl2_structure(a)
                .map(|g| g.block_sizes())
                .unwrap_or_default()
        };
        out.disagreements.push(Disagreement {
            a: sizes(&v.a),
            b: sizes(&v.b),
            c: sizes(&v.c),
            i: v.i.map.clone(),
            j: v.j.map.clone(),
            decided,
            found,
        });
    }
    if literal_failure_condition(v)?.is_none() != found {
        out.literal_misses += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::algebra::is_valid;

    #[test]
    fn recognizes_blocks() {
        let b = failing_triple().b;
        let g = recognize_gl2(&b).unwrap();
        assert_eq!(g.block_sizes(), vec![1, 2]);
        assert_eq!(g.blocks.len() + 1, 3);
        assert_eq!(g.coatom(), Some(2));
        let godel = recognize_gl2(&catalog::godel(5)).unwrap();
        assert!(godel.is_godel());
        assert_eq!(godel.blocks.len(), 4);
    }

    #[test]
    fn rejects_lukasiewicz_four() {
        let err = recognize_gl2(&catalog::lukasiewicz(4)).unwrap_err();
        assert!(matches!(err, Error::NotGl2(_)));
        assert!(recognize_gl2(&catalog::lukasiewicz(3)).is_ok());
        assert!(recognize_gl2(&catalog::boolean_square()).is_err());
    }

    #[test]
    fn gluing_matches_displayed_implication() {
        for sizes in [vec![1, 2, 1], vec![3], vec![2, 2], vec![1, 1, 3]] {
            let parts: Vec<FiniteRL> = sizes
                .iter()
                .map(|&s| gl2_chain_from_blocks(&[s]).unwrap())
                .collect();
            let glued = iterated_partial_gluing(&parts).unwrap();
            assert!(is_valid(&glued));
            let g = recognize_gl2(&glued).unwrap();
            assert_eq!(g.block_sizes(), sizes);
            let c = g.coatom().unwrap();
            for x in glued.elements() {
                for y in glued.elements() {
                    let expected = if glued.leq(x, y) {
                        glued.unit()
                    } else if x == glued.unit() {
                        y
                    } else if g.block_of[x] == g.block_of[y] {
                        c
                    } else {
                        g.block_max(y)
                    };
                    assert_eq!(glued.ldiv(x, y), expected);
                }
            }
            let folded = fold_partial_gluings(&parts).unwrap();
            assert!(are_isomorphic(&glued, &folded).is_some());
        }
    }

    #[test]
    fn two_simple_chains_give_five_elements() {
        let s = catalog::lukasiewicz(3);
        let glued = fold_partial_gluings(&[s.clone(), s]).unwrap();
        assert_eq!(glued.n(), 5);
        assert!(glued.is_chain());
        assert_eq!(recognize_gl2(&glued).unwrap().block_sizes(), vec![2, 2]);
    }

    #[test]
    fn generation_cases() {
        let g = recognize_gl2(&catalog::godel(4)).unwrap();
        let x = ElemSet::from_iter([1, 2]);
        let gen = gl2_generate(&g, x).unwrap();
        assert_eq!(gen.case, GenerationCase::Idempotent);
        assert_eq!(gen.fixpoint, ElemSet::from_iter([1, 2, 3]));
        let b = recognize_gl2(&failing_triple().b).unwrap();
        let gen = gl2_generate(&b, ElemSet::singleton(2)).unwrap();
        assert_eq!(gen.case, GenerationCase::General);
        assert!(gen.agrees() && gen.within_bound());
        assert_eq!(gen.fixpoint, ElemSet::from_iter([1, 2, 3]));
    }

    #[test]
    fn generation_sweep_small() {
        let s = generation_sweep(7).unwrap();
        assert!(s.mismatches.is_empty(), "{:?}", s.mismatches);
        assert!(s.bound_violations.is_empty());
        assert_eq!(s.chains, 63);
    }

    #[test]
    fn failing_triple_is_impossible() {
        let v = failing_triple();
        match gl2_amalgam_decide(&v).unwrap() {
            AmalgamDecision::Impossible {
                witness,
                obstruction,
            } => {
                assert_eq!(v.a.label(witness), "a");
                assert_eq!(obstruction, Obstruction::PinnedSingleton { side: Side::C });
            }
            AmalgamDecision::Amalgam { .. } => panic!("expected failure"),
        }
        assert_eq!(literal_failure_condition(&v).unwrap(), Some(1));
        assert!(brute_force_gl2_amalgam(&v, 7).is_none());
    }

    #[test]
    fn capped_top_is_missed_by_the_literal_condition() {
        let a = gl2_chain_from_blocks(&[1, 1]).unwrap();
        let b = gl2_chain_from_blocks(&[1, 2]).unwrap();
        let c = gl2_chain_from_blocks(&[1, 2, 1]).unwrap();
        let v = VFormation::new(
            a,
            b,
            c,
            Morphism::new(vec![0, 1, 3]),
            Morphism::new(vec![0, 1, 4]),
        )
        .unwrap();
        assert!(literal_failure_condition(&v).unwrap().is_none());
        let d = gl2_amalgam_decide(&v).unwrap();
        assert!(matches!(
            d,
            AmalgamDecision::Impossible {
                obstruction: Obstruction::CappedTop { side: Side::B },
                ..
            }
        ));
        assert!(brute_force_gl2_amalgam(&v, default_search_bound(&v)).is_none());
    }

    #[test]
    fn equal_sides_amalgamate_into_themselves() {
        let b = gl2_chain_from_blocks(&[1, 2, 3]).unwrap();
        let a = gl2_chain_from_blocks(&[1, 2, 3]).unwrap();
        let id = Morphism::identity(b.n());
        let v = VFormation::new(a, b.clone(), b.clone(), id.clone(), id).unwrap();
        match gl2_amalgam_decide(&v).unwrap() {
            AmalgamDecision::Amalgam { amalgam, strong } => {
                assert!(strong);
                assert!(are_isomorphic(&amalgam.d, &b).is_some());
            }
            _ => panic!("expected an amalgam"),
        }
    }

    #[test]
    fn decision_agrees_with_search_small() {
        let s = decision_sweep(4).unwrap();
        assert!(s.disagreements.is_empty(), "{:#?}", s.disagreements);
        assert!(s.impossible > 0 && s.amalgamable > 0);
    }
}
