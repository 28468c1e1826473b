//! Parabolic-induction descriptors of simple integrable weight modules.
//!
//! A module is presented by a Dynkin order together with a decomposition of
//! its index set into consecutive finite blocks. Each block carries a
//! dominant multiplicity-free highest weight `lam` for sl(block size) and
//! optionally a support weight `mu` picking the one-dimensional weight
//! space the induction is anchored at. Infinitely many blocks are presented
//! finitely: a finite prefix plus one periodic group per infinite end of
//! the order, where each repetition of the periodic pattern adds a fixed
//! integer offset to all coordinates.
//!
//! The second descriptor variant is the symmetric-power direct limit along
//! a strictly increasing integer sequence, presented as a finite prefix
//! plus an arithmetic tail.

use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finrep;
use crate::orders::{OrderKind, OrderSpec};
use crate::weights::{FiniteWeight, Run, Tail, WeightProfile};

/// Hard bound on positions examined while decomposing one side.
const DECOMPOSE_POSITION_CAP: i64 = 100_000;

/// Hard bound on a single block's size.
const BLOCK_SIZE_CAP: usize = 4096;

/// One finite block: a multiplicity-free highest weight and optionally the
/// chosen support weight, both in ε-coordinates listed ascending along the
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    lam: FiniteWeight,
    mu: Option<FiniteWeight>,
}

impl Block {
    pub fn new(lam: FiniteWeight, mu: Option<FiniteWeight>) -> Result<Self> {
        if let Some(m) = &mu {
            if m.len() != lam.len() {
                return Err(Error::Domain(format!(
                    "mu length {} does not match block size {}",
                    m.len(),
                    lam.len()
                )));
            }
        }
        Ok(Block { lam, mu })
    }

    pub fn lam(&self) -> &FiniteWeight {
        &self.lam
    }

    pub fn mu(&self) -> Option<&FiniteWeight> {
        self.mu.as_ref()
    }

    pub fn size(&self) -> usize {
        self.lam.len()
    }

    pub fn shifted(&self, c: i64) -> Block {
        Block {
            lam: self.lam.shifted(c),
            mu: self.mu.as_ref().map(|m| m.shifted(c)),
        }
    }
}

/// A block pattern repeated forever toward one end of the order; every
/// repetition after the first adds `offset` to all coordinates. For a left
/// group `pattern[0]` is the innermost block and repetitions move outward
/// (leftward); for a right group repetitions move rightward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicBlocks {
    pattern: Vec<Block>,
    offset: i64,
}

impl PeriodicBlocks {
    pub fn new(pattern: Vec<Block>, offset: i64) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Domain("empty periodic block pattern".into()));
        }
        Ok(PeriodicBlocks { pattern, offset })
    }

    pub fn pattern(&self) -> &[Block] {
        &self.pattern
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// The `i`-th block counted outward, offsets applied.
    pub fn block_at(&self, i: usize) -> Block {
        let m = self.pattern.len();
        let rep = (i / m) as i64;
        self.pattern[i % m].shifted(rep * self.offset)
    }
}

/// The full block decomposition: a finite prefix (blocks listed ascending
/// along the order) framed by one periodic group per infinite end.
/// `prefix_start` is the order coordinate of the first prefix position; it
/// is 1 for right-infinite orders, minus the prefix length for
/// left-infinite orders, and at most 1 for two-sided orders (the left
/// periodic group then covers every coordinate below it).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSequence {
    left: Option<PeriodicBlocks>,
    prefix: Vec<Block>,
    prefix_start: i64,
    right: Option<PeriodicBlocks>,
}

impl BlockSequence {
    pub fn right_infinite(prefix: Vec<Block>, period: PeriodicBlocks) -> Self {
        BlockSequence {
            left: None,
            prefix,
            prefix_start: 1,
            right: Some(period),
        }
    }

    pub fn left_infinite(period: PeriodicBlocks, prefix: Vec<Block>) -> Self {
        let len: i64 = prefix.iter().map(|b| b.size() as i64).sum();
        BlockSequence {
            left: Some(period),
            prefix,
            prefix_start: -len,
            right: None,
        }
    }

    pub fn two_sided(
        left: PeriodicBlocks,
        prefix: Vec<Block>,
        prefix_start: i64,
        right: PeriodicBlocks,
    ) -> Result<Self> {
        if prefix_start > 1 {
            return Err(Error::Domain(format!(
                "two-sided prefix must start at coordinate <= 1, got {prefix_start}"
            )));
        }
        Ok(BlockSequence {
            left: Some(left),
            prefix,
            prefix_start,
            right: Some(right),
        })
    }

    pub fn left_group(&self) -> Option<&PeriodicBlocks> {
        self.left.as_ref()
    }

    pub fn prefix(&self) -> &[Block] {
        &self.prefix
    }

    pub fn prefix_start(&self) -> i64 {
        self.prefix_start
    }

    pub fn right_group(&self) -> Option<&PeriodicBlocks> {
        self.right.as_ref()
    }

    fn prefix_len(&self) -> i64 {
        self.prefix.iter().map(|b| b.size() as i64).sum()
    }
}

/// Which coordinate list of a block an operation reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Select {
    Lam,
    Mu,
}

impl Select {
    fn pick<'a>(self, b: &'a Block, label: &str) -> Result<&'a FiniteWeight> {
        match self {
            Select::Lam => Ok(&b.lam),
            Select::Mu => b
                .mu
                .as_ref()
                .ok_or_else(|| Error::Validation(format!("mu unset in block {label}"))),
        }
    }
}

/// Side a block is attached on during the exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AttachSide {
    Left,
    Right,
}

/// A module descriptor: either the parabolic-induction datum over a Dynkin
/// order, or the symmetric-power limit along a strictly increasing integer
/// sequence `prefix, tail_start, tail_start + tail_step, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ModuleDescriptor {
    Vp {
        order: OrderSpec,
        blocks: BlockSequence,
    },
    SymLimit {
        prefix: Vec<i64>,
        tail_start: i64,
        tail_step: i64,
    },
}

/// Everything `validate` found wrong, with block labels.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Decomposition strategies: grow each block until adding one more position
/// would break multiplicity-freeness, or cut at a fixed size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeStrategy {
    GreedyMin,
    FixedSize(usize),
}

impl ModuleDescriptor {
    /// Builds the parabolic-induction variant, checking that the periodic
    /// groups match the infinite ends of the order.
    pub fn vp(order: OrderSpec, blocks: BlockSequence) -> Result<Self> {
        let kind = order.kind();
        if kind.has_left_end() != blocks.left.is_some()
            || kind.has_right_end() != blocks.right.is_some()
        {
            return Err(Error::Domain(format!(
                "periodic block groups do not match order kind {kind:?}"
            )));
        }
        let expected_start = match kind {
            OrderKind::RightInfinite => 1,
            OrderKind::LeftInfinite => -blocks.prefix_len(),
            OrderKind::TwoSided => blocks.prefix_start,
        };
        if blocks.prefix_start != expected_start {
            return Err(Error::Domain(format!(
                "prefix start {} inconsistent with order kind {kind:?}",
                blocks.prefix_start
            )));
        }
        Ok(ModuleDescriptor::Vp { order, blocks })
    }

    /// Builds the symmetric-power limit variant; the sequence must be
    /// strictly increasing.
    pub fn sym_limit(prefix: Vec<i64>, tail_start: i64, tail_step: i64) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("sequence prefix not strictly increasing".into()));
        }
        if let Some(&last) = prefix.last() {
            if last >= tail_start {
                return Err(Error::Domain(
                    "sequence tail must continue strictly above the prefix".into(),
                ));
            }
        }
        if tail_step < 1 {
            return Err(Error::Domain("sequence tail step must be positive".into()));
        }
        Ok(ModuleDescriptor::SymLimit {
            prefix,
            tail_start,
            tail_step,
        })
    }

    /// Checks every block invariant on the prefix plus one full period per
    /// side: dominance and multiplicity-freeness of each `lam`, each `mu`
    /// in the support of its block, dominance of the flattened ambient
    /// weight. All findings are collected into the report.
    pub fn validate(&self, dim_cap: u64) -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        let ModuleDescriptor::Vp { order, blocks } = self else {
            // the strictly-increasing invariant is enforced at construction
            return Ok(report);
        };
        let mut check_block = |label: String, b: &Block| -> Result<()> {
            if !b.lam.is_dominant() {
                report
                    .violations
                    .push(format!("{label}: lam {} not dominant", b.lam));
                return Ok(());
            }
            if !finrep::is_multiplicity_free(&b.lam, dim_cap)? {
                report
                    .violations
                    .push(format!("{label}: lam {} not multiplicity-free", b.lam));
            }
            if let Some(mu) = &b.mu {
                let in_support = if b.size() == 1 {
                    mu == &b.lam
                } else {
                    finrep::freudenthal_character(&b.lam, dim_cap)?.multiplicity(mu.coords()) == 1
                };
                if !in_support {
                    report.violations.push(format!(
                        "{label}: mu {mu} not a multiplicity-one support weight of lam {}",
                        b.lam
                    ));
                }
            }
            Ok(())
        };
        for (i, b) in blocks.prefix.iter().enumerate() {
            check_block(format!("prefix[{i}]"), b)?;
        }
        if let Some(g) = &blocks.left {
            for (i, b) in g.pattern.iter().enumerate() {
                check_block(format!("left period[{i}]"), b)?;
            }
        }
        if let Some(g) = &blocks.right {
            for (i, b) in g.pattern.iter().enumerate() {
                check_block(format!("right period[{i}]"), b)?;
            }
        }
        if order.kind() == OrderKind::TwoSided {
            // exhaustion alternates sides; a prefix block across the origin
            // has no well-defined side
            let mut c = blocks.prefix_start;
            for (i, b) in blocks.prefix.iter().enumerate() {
                let end = c + b.size() as i64 - 1;
                if c <= 0 && end >= 1 {
                    report
                        .violations
                        .push(format!("prefix[{i}]: block straddles the order origin"));
                }
                c = end + 1;
            }
        }
        match self.limit_weight() {
            Ok(profile) => {
                if !profile.is_dominant() {
                    report
                        .violations
                        .push("flattened lam profile is not dominant".into());
                }
            }
            Err(e) => report
                .violations
                .push(format!("lam profile does not flatten: {e}")),
        }
        Ok(report)
    }

    /// Flattens the block `lam`s into the ambient weight profile.
    pub fn limit_weight(&self) -> Result<WeightProfile> {
        self.flatten(Select::Lam, true)
    }

    /// Flattens the block `mu`s into the ambient profile. For two-sided
    /// orders the left tail is read off the periodic group alone, so the
    /// result is exact away from the finitely many prefix positions left of
    /// the origin (which is all the tail-equivalence classification needs).
    pub fn limit_mu(&self) -> Result<WeightProfile> {
        self.flatten(Select::Mu, false)
    }

    fn flatten(&self, select: Select, verify_left_transient: bool) -> Result<WeightProfile> {
        let ModuleDescriptor::Vp { order, blocks } = self else {
            return Err(Error::Unsupported(
                "symmetric-power limits have no block profile".into(),
            ));
        };
        let mut prefix_vals = Vec::new();
        for (i, b) in blocks.prefix.iter().enumerate() {
            prefix_vals.extend_from_slice(select.pick(b, &format!("prefix[{i}]"))?.coords());
        }
        let right = match &blocks.right {
            Some(g) => {
                let mut flat = Vec::new();
                for (i, b) in g.pattern.iter().enumerate() {
                    flat.extend_from_slice(
                        select.pick(b, &format!("right period[{i}]"))?.coords(),
                    );
                }
                Some(Tail::periodic(
                    flat.into_iter().map(|v| Run::new(v, 1)).collect(),
                    g.offset,
                )?)
            }
            None => None,
        };
        let left = match &blocks.left {
            Some(g) => {
                // outward flattening: innermost block first, each block's
                // coordinates reversed
                let mut flat = Vec::new();
                for (i, b) in g.pattern.iter().enumerate() {
                    let coords = select.pick(b, &format!("left period[{i}]"))?.coords();
                    flat.extend(coords.iter().rev().copied());
                }
                let t0 = Tail::periodic(
                    flat.into_iter().map(|v| Run::new(v, 1)).collect(),
                    g.offset,
                )?;
                match order.kind() {
                    OrderKind::LeftInfinite => Some(t0),
                    OrderKind::TwoSided => {
                        // the group starts at coordinate prefix_start - 1 but
                        // the profile's left tail is anchored at 0; rephase by
                        // extrapolating the periodic law inward
                        let d = blocks.prefix_start - 1;
                        let len = t0.period_len() as i64;
                        let pattern = (0..len).map(|t| Run::new(t0.value_at(d + t), 1)).collect();
                        Some(Tail::periodic(pattern, t0.offset())?)
                    }
                    OrderKind::RightInfinite => unreachable!("checked at construction"),
                }
            }
            None => None,
        };
        let mid: Vec<Run> = match order.kind() {
            OrderKind::TwoSided => {
                // prefix positions at coordinates >= 1 form the middle; the
                // rest must agree with the rephased left tail
                let split = (1 - blocks.prefix_start).clamp(0, prefix_vals.len() as i64) as usize;
                if verify_left_transient {
                    let tail = left.as_ref().unwrap();
                    for (k, &v) in prefix_vals[..split].iter().enumerate() {
                        let c = blocks.prefix_start + k as i64;
                        if tail.value_at(-c) != v {
                            return Err(Error::Domain(format!(
                                "prefix value {v} at coordinate {c} breaks the left periodic law"
                            )));
                        }
                    }
                }
                prefix_vals[split..]
                    .iter()
                    .map(|&v| Run::new(v, 1))
                    .collect()
            }
            _ => prefix_vals.iter().map(|&v| Run::new(v, 1)).collect(),
        };
        WeightProfile::build(order.clone(), left, mid, right)
    }

    /// The infinite block list in exhaustion order: ascending for
    /// right-infinite orders, outward from the inner end for left-infinite
    /// ones, alternating right-left for two-sided ones. Returns the block
    /// and the side it attaches on.
    pub fn exhaustion_block(&self, k: usize) -> Result<(Block, AttachSide)> {
        let ModuleDescriptor::Vp { order, blocks } = self else {
            return Err(Error::Unsupported(
                "the symmetric-power limit has its own exhaustion; see the classifier".into(),
            ));
        };
        match order.kind() {
            OrderKind::RightInfinite => {
                let b = if k < blocks.prefix.len() {
                    blocks.prefix[k].clone()
                } else {
                    blocks
                        .right
                        .as_ref()
                        .unwrap()
                        .block_at(k - blocks.prefix.len())
                };
                Ok((b, AttachSide::Right))
            }
            OrderKind::LeftInfinite => {
                let b = if k < blocks.prefix.len() {
                    blocks.prefix[blocks.prefix.len() - 1 - k].clone()
                } else {
                    blocks
                        .left
                        .as_ref()
                        .unwrap()
                        .block_at(k - blocks.prefix.len())
                };
                Ok((b, AttachSide::Left))
            }
            OrderKind::TwoSided => {
                // split the prefix at the origin
                let mut right_side = Vec::new();
                let mut left_side = Vec::new();
                let mut c = blocks.prefix_start;
                for (i, b) in blocks.prefix.iter().enumerate() {
                    let end = c + b.size() as i64 - 1;
                    if c >= 1 {
                        right_side.push(b.clone());
                    } else if end <= 0 {
                        left_side.push(b.clone());
                    } else {
                        return Err(Error::Unsupported(format!(
                            "prefix[{i}] straddles the origin; no attach side"
                        )));
                    }
                    c = end + 1;
                }
                left_side.reverse(); // outward order
                let pick_right = |i: usize| -> Block {
                    if i < right_side.len() {
                        right_side[i].clone()
                    } else {
                        blocks.right.as_ref().unwrap().block_at(i - right_side.len())
                    }
                };
                let pick_left = |i: usize| -> Block {
                    if i < left_side.len() {
                        left_side[i].clone()
                    } else {
                        blocks.left.as_ref().unwrap().block_at(i - left_side.len())
                    }
                };
                if k % 2 == 0 {
                    Ok((pick_right(k / 2), AttachSide::Right))
                } else {
                    Ok((pick_left(k / 2), AttachSide::Left))
                }
            }
        }
    }

    /// The exhaustion chain: step `k` carries the concatenated weight
    /// λ^(k) over sl(N_k) together with the support weight and attach side
    /// of block k+1, so the step embedding sends a weight ν to (ν, μ^{k+1})
    /// on the recorded side.
    pub fn exhaustion(&self, k_max: usize) -> Result<Vec<ExhaustionStep>> {
        if k_max == 0 {
            return Err(Error::Domain("exhaustion depth must be positive".into()));
        }
        let mut steps = Vec::with_capacity(k_max);
        let mut lam: Vec<i64> = Vec::new();
        for k in 1..=k_max {
            let (b, side) = self.exhaustion_block(k - 1)?;
            match side {
                AttachSide::Right => lam.extend_from_slice(b.lam.coords()),
                AttachSide::Left => {
                    let mut v = b.lam.coords().to_vec();
                    v.extend_from_slice(&lam);
                    lam = v;
                }
            }
            let (next, next_side) = self.exhaustion_block(k)?;
            steps.push(ExhaustionStep {
                k,
                total: lam.len() as u64,
                lam: FiniteWeight::new(lam.clone())?,
                next_mu: next.mu,
                next_attach: next_side,
            });
        }
        Ok(steps)
    }
}

/// One step of the exhaustion chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustionStep {
    /// Step index, starting at 1.
    pub k: usize,
    /// N_k, the number of coordinates covered so far.
    pub total: u64,
    /// λ^(k), listed ascending along the order.
    pub lam: FiniteWeight,
    /// The support weight of block k+1, when set.
    pub next_mu: Option<FiniteWeight>,
    /// Where block k+1 attaches.
    pub next_attach: AttachSide,
}

impl ExhaustionStep {
    /// Image of a weight of step k under the embedding into step k+1.
    pub fn embed_weight(&self, nu: &FiniteWeight) -> Result<FiniteWeight> {
        let mu = self
            .next_mu
            .as_ref()
            .ok_or_else(|| Error::Validation("mu unset in the next block".into()))?;
        let mut v;
        match self.next_attach {
            AttachSide::Right => {
                v = nu.coords().to_vec();
                v.extend_from_slice(mu.coords());
            }
            AttachSide::Left => {
                v = mu.coords().to_vec();
                v.extend_from_slice(nu.coords());
            }
        }
        FiniteWeight::new(v)
    }
}

/// Exact multiplicity-freeness of a consecutive block, by the shape
/// classification (no character table needed).
fn block_multiplicity_free(vals_desc: &[i64]) -> bool {
    let last = *vals_desc.last().unwrap();
    let p: Vec<i64> = vals_desc.iter().map(|v| v - last).collect();
    finrep::multiplicity_free_shape(&p)
}

/// One side of a decomposition in processing order: finite transient blocks
/// followed by a periodic pattern with a per-repetition offset.
struct SideBlocks {
    transient: Vec<Vec<i64>>,
    pattern: Vec<Vec<i64>>,
    offset: i64,
}

/// Decomposes the value stream `mid_vals` then `tail` (both in processing
/// order, values sorted descending within blocks before testing) into
/// multiplicity-free blocks. `descending` tells whether the stream runs
/// along the order (right side) or against it (left side).
fn decompose_side(
    mid_vals: &[i64],
    tail: &Tail,
    descending: bool,
    strategy: DecomposeStrategy,
) -> Result<SideBlocks> {
    let m = mid_vals.len() as i64;
    let value = |i: i64| -> i64 {
        if i < m {
            mid_vals[i as usize]
        } else {
            tail.value_at(i - m)
        }
    };
    let mf = |vals: &[i64]| -> bool {
        let mut v = vals.to_vec();
        if !descending {
            v.reverse();
        }
        block_multiplicity_free(&v)
    };
    let period_len = tail.period_len() as i64;
    let cut_at_boundary = tail.is_constant() && strategy == DecomposeStrategy::GreedyMin;

    let mut blocks: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashMap<i64, (usize, i64)> = HashMap::new();
    let mut i = 0i64;
    loop {
        if i > DECOMPOSE_POSITION_CAP {
            return Err(Error::Resource(
                "block decomposition did not become periodic within the position cap".into(),
            ));
        }
        if cut_at_boundary && i >= m {
            // constant tail: everything outward is size-1 constant blocks
            return Ok(SideBlocks {
                transient: blocks,
                pattern: vec![vec![tail.value_at(0)]],
                offset: 0,
            });
        }
        if i >= m {
            let phase = (i - m).rem_euclid(period_len);
            if let Some(&(block_count, pos)) = seen.get(&phase) {
                let reps = (i - pos) / period_len;
                return Ok(SideBlocks {
                    transient: blocks[..block_count].to_vec(),
                    pattern: blocks[block_count..].to_vec(),
                    offset: tail.offset() * reps,
                });
            }
            seen.insert(phase, (blocks.len(), i));
        }
        let mut cur = vec![value(i)];
        i += 1;
        match strategy {
            DecomposeStrategy::GreedyMin => loop {
                if cur.len() >= BLOCK_SIZE_CAP {
                    return Err(Error::Resource("block size cap exceeded".into()));
                }
                if cut_at_boundary && i >= m {
                    break;
                }
                let mut cand = cur.clone();
                cand.push(value(i));
                if mf(&cand) {
                    cur = cand;
                    i += 1;
                } else {
                    break;
                }
            },
            DecomposeStrategy::FixedSize(n) => {
                if n == 0 {
                    return Err(Error::Domain("block size must be positive".into()));
                }
                while cur.len() < n {
                    cur.push(value(i));
                    i += 1;
                }
                if !mf(&cur) {
                    let shown: Vec<i64> = if descending {
                        cur.clone()
                    } else {
                        cur.iter().rev().copied().collect()
                    };
                    return Err(Error::Decomposition(format!(
                        "fixed-size block {shown:?} is not multiplicity-free"
                    )));
                }
            }
        }
        blocks.push(cur);
    }
}

fn to_block(vals: &[i64], descending: bool) -> Result<Block> {
    let v: Vec<i64> = if descending {
        vals.to_vec()
    } else {
        vals.iter().rev().copied().collect()
    };
    Block::new(FiniteWeight::new(v)?, None)
}

/// Cuts a dominant profile into consecutive multiplicity-free blocks
/// (support weights left unset). Greedy growth extends each block while the
/// extension stays multiplicity-free; periodic tails yield a periodic block
/// pattern, detected by phase recurrence.
pub fn decompose_blocks(
    profile: &WeightProfile,
    strategy: DecomposeStrategy,
) -> Result<ModuleDescriptor> {
    if !profile.is_dominant() {
        return Err(Error::Domain(
            "block decomposition requires a dominant profile".into(),
        ));
    }
    let order = profile.order().clone();
    let mid_flat: Vec<i64> = {
        let mut v = Vec::new();
        for r in profile.mid() {
            for _ in 0..r.mult {
                v.push(r.value);
            }
        }
        v
    };
    match order.kind() {
        OrderKind::RightInfinite => {
            let side = decompose_side(&mid_flat, profile.right_tail().unwrap(), true, strategy)?;
            let prefix: Vec<Block> = side
                .transient
                .iter()
                .map(|v| to_block(v, true))
                .collect::<Result<_>>()?;
            let pattern: Vec<Block> = side
                .pattern
                .iter()
                .map(|v| to_block(v, true))
                .collect::<Result<_>>()?;
            ModuleDescriptor::vp(
                order,
                BlockSequence::right_infinite(prefix, PeriodicBlocks::new(pattern, side.offset)?),
            )
        }
        OrderKind::LeftInfinite => {
            let rev_mid: Vec<i64> = mid_flat.iter().rev().copied().collect();
            let side = decompose_side(&rev_mid, profile.left_tail().unwrap(), false, strategy)?;
            // transient blocks were produced innermost-first; the prefix
            // lists them ascending along the order
            let prefix: Vec<Block> = side
                .transient
                .iter()
                .rev()
                .map(|v| to_block(v, false))
                .collect::<Result<_>>()?;
            let pattern: Vec<Block> = side
                .pattern
                .iter()
                .map(|v| to_block(v, false))
                .collect::<Result<_>>()?;
            ModuleDescriptor::vp(
                order,
                BlockSequence::left_infinite(PeriodicBlocks::new(pattern, side.offset)?, prefix),
            )
        }
        OrderKind::TwoSided => {
            let right = decompose_side(&mid_flat, profile.right_tail().unwrap(), true, strategy)?;
            let left = decompose_side(&[], profile.left_tail().unwrap(), false, strategy)?;
            let left_transient_len: i64 = left.transient.iter().map(|b| b.len() as i64).sum();
            let mut prefix: Vec<Block> = left
                .transient
                .iter()
                .rev()
                .map(|v| to_block(v, false))
                .collect::<Result<_>>()?;
            for v in &right.transient {
                prefix.push(to_block(v, true)?);
            }
            let seq = BlockSequence::two_sided(
                PeriodicBlocks::new(
                    left.pattern
                        .iter()
                        .map(|v| to_block(v, false))
                        .collect::<Result<_>>()?,
                    left.offset,
                )?,
                prefix,
                1 - left_transient_len,
                PeriodicBlocks::new(
                    right
                        .pattern
                        .iter()
                        .map(|v| to_block(v, true))
                        .collect::<Result<_>>()?,
                    right.offset,
                )?,
            )?;
            ModuleDescriptor::vp(order, seq)
        }
    }
}
