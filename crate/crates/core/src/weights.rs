//! Finitely presented weights.
//!
//! An element of h* supported on a Dynkin order is an integer sequence
//! indexed by the order. We present such sequences by a finite run-length
//! middle part together with one infinite tail per infinite end of the
//! order. A tail is either constant or periodic-with-drift: a finite run
//! pattern repeated outward forever with a fixed integer offset added per
//! repetition. The drifting form covers arithmetic sequences such as
//! `0, -2, -4, ...` (pattern `[0]`, offset `-2`) as well as block-periodic
//! sequences such as `-1, -1, -5, -5, ...` (pattern `[-1, -1]`, offset `-4`).
//!
//! Profiles are canonicalized on construction: adjacent equal runs are
//! merged, middle runs that continue a tail are absorbed into it, and tail
//! patterns are reduced to their minimal period. Equality of canonical
//! profiles is therefore equality of the underlying sequences.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::orders::{OrderKind, OrderSpec, Position};

/// A maximal constant segment of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Run {
    pub value: i64,
    pub mult: u64,
}

impl Run {
    pub fn new(value: i64, mult: u64) -> Self {
        Run { value, mult }
    }
}

/// Upper bound on the flattened pattern length for which tails are fully
/// canonicalized. Larger patterns are kept as given.
const CANON_PATTERN_CAP: u64 = 4096;

/// An infinite tail: `pattern` repeated outward with `offset` added per
/// repetition. `offset == 0` with a single run is the constant tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tail {
    pattern: Vec<Run>,
    offset: i64,
}

impl Tail {
    pub fn constant(value: i64) -> Self {
        Tail {
            pattern: vec![Run::new(value, 1)],
            offset: 0,
        }
    }

    pub fn periodic(pattern: Vec<Run>, offset: i64) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Domain("empty tail pattern".into()));
        }
        if pattern.iter().any(|r| r.mult == 0) {
            return Err(Error::Domain("zero-multiplicity run in tail".into()));
        }
        let mut t = Tail { pattern, offset };
        t.canonicalize();
        Ok(t)
    }

    pub fn pattern(&self) -> &[Run] {
        &self.pattern
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_constant(&self) -> bool {
        self.pattern.len() == 1 && self.offset == 0
    }

    /// Number of positions covered by one repetition of the pattern.
    pub fn period_len(&self) -> u64 {
        self.pattern.iter().map(|r| r.mult).sum()
    }

    fn flat(&self) -> Vec<i64> {
        let mut v = Vec::new();
        for r in &self.pattern {
            for _ in 0..r.mult {
                v.push(r.value);
            }
        }
        v
    }

    /// Value at outward index `t >= 0` from the start of the tail. Negative
    /// `t` extrapolates inward by the same law.
    pub fn value_at(&self, t: i64) -> i64 {
        let len = self.period_len() as i64;
        let rep = t.div_euclid(len);
        let idx = t.rem_euclid(len);
        let mut acc = 0i64;
        for r in &self.pattern {
            acc += r.mult as i64;
            if idx < acc {
                return r.value + rep * self.offset;
            }
        }
        unreachable!()
    }

    fn canonicalize(&mut self) {
        // merge adjacent equal values
        let mut merged: Vec<Run> = Vec::with_capacity(self.pattern.len());
        for r in self.pattern.drain(..) {
            match merged.last_mut() {
                Some(last) if last.value == r.value => last.mult += r.mult,
                _ => merged.push(r),
            }
        }
        self.pattern = merged;
        if self.offset == 0 && self.pattern.iter().all(|r| r.value == self.pattern[0].value) {
            self.pattern = vec![Run::new(self.pattern[0].value, 1)];
            return;
        }
        let len = self.period_len();
        if len > CANON_PATTERN_CAP {
            return;
        }
        // minimal-period reduction on the flattened values
        let flat = self.flat();
        let len = len as usize;
        'div: for m in 1..len {
            if len % m != 0 {
                continue;
            }
            let k = (len / m) as i64;
            if self.offset % k != 0 {
                continue;
            }
            let step = self.offset / k;
            for t in 0..len - m {
                if flat[t + m] != flat[t] + step {
                    continue 'div;
                }
            }
            let mut pattern: Vec<Run> = Vec::new();
            for &v in &flat[..m] {
                match pattern.last_mut() {
                    Some(last) if last.value == v => last.mult += 1,
                    _ => pattern.push(Run::new(v, 1)),
                }
            }
            self.pattern = pattern;
            self.offset = step;
            break;
        }
    }

    fn negate_reverse(&self) -> Tail {
        let pattern = self
            .pattern
            .iter()
            .rev()
            .map(|r| Run::new(-r.value, r.mult))
            .collect();
        Tail {
            pattern,
            offset: -self.offset,
        }
        .canonical()
    }

    fn canonical(mut self) -> Tail {
        self.canonicalize();
        self
    }

    fn shifted(&self, c: i64) -> Tail {
        Tail {
            pattern: self
                .pattern
                .iter()
                .map(|r| Run::new(r.value + c, r.mult))
                .collect(),
            offset: self.offset,
        }
    }

    /// The tail that starts one position earlier (inward) and generates the
    /// same values thereafter.
    fn extended_inward(&self) -> Tail {
        let flat = self.flat();
        let len = flat.len();
        let mut vals = Vec::with_capacity(len);
        vals.push(flat[len - 1] - self.offset);
        vals.extend_from_slice(&flat[..len - 1]);
        Tail {
            pattern: vals.into_iter().map(|v| Run::new(v, 1)).collect(),
            offset: self.offset,
        }
        .canonical()
    }
}

impl std::fmt::Display for Tail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rep[")?;
        for (i, r) in self.pattern.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if r.mult == 1 {
                write!(f, "{}", r.value)?;
            } else {
                write!(f, "{}x{}", r.value, r.mult)?;
            }
        }
        if self.offset != 0 {
            write!(f, "; {:+}", self.offset)?;
        }
        write!(f, "]")
    }
}

/// Decides whether two tails produce identical values from some point on,
/// where tail `i` starts at outward coordinate `start_i` of a common
/// indexing.
fn tails_eventually_equal(a: &Tail, start_a: u64, b: &Tail, start_b: u64) -> bool {
    let la = a.period_len();
    let lb = b.period_len();
    let l = num::integer::lcm(la, lb) as i64;
    let drift_a = a.offset * (l / la as i64);
    let drift_b = b.offset * (l / lb as i64);
    if drift_a != drift_b {
        return false;
    }
    let p0 = start_a.max(start_b) as i64;
    (p0..p0 + l).all(|p| a.value_at(p - start_a as i64) == b.value_at(p - start_b as i64))
}

/// A weakly decreasing list of nonnegative integers with trailing zeros
/// stripped; doubles as a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Default)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("not weakly decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts an arbitrary multiset of nonnegative entries into a partition.
    pub fn from_multiset(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable_by(|x, y| y.cmp(x));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A weight of sl(n) in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteWeight(Vec<i64>);

impl FiniteWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("empty finite weight".into()));
        }
        Ok(FiniteWeight(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Subtracts the last coordinate; for a dominant weight the result is a
    /// partition padded with zeros.
    pub fn shift_normalized(&self) -> FiniteWeight {
        let c = *self.0.last().unwrap();
        FiniteWeight(self.0.iter().map(|x| x - c).collect())
    }

    pub fn shifted(&self, c: i64) -> FiniteWeight {
        FiniteWeight(self.0.iter().map(|x| x + c).collect())
    }
}

impl std::fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An integer sequence over a Dynkin order: finite middle runs plus one
/// infinite tail per infinite end. The middle occupies order coordinates
/// directly after the left tail (two-sided middles start at coordinate 1,
/// left-infinite middles end at coordinate -1, right-infinite middles start
/// at coordinate 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightProfile {
    order: OrderSpec,
    left: Option<Tail>,
    mid: Vec<Run>,
    right: Option<Tail>,
}

impl WeightProfile {
    pub fn right_infinite(mid: Vec<Run>, tail: Tail) -> Result<Self> {
        Self::build(OrderSpec::new(OrderKind::RightInfinite), None, mid, Some(tail))
    }

    pub fn left_infinite(tail: Tail, mid: Vec<Run>) -> Result<Self> {
        Self::build(OrderSpec::new(OrderKind::LeftInfinite), Some(tail), mid, None)
    }

    pub fn two_sided(left: Tail, mid: Vec<Run>, right: Tail) -> Result<Self> {
        Self::build(OrderSpec::new(OrderKind::TwoSided), Some(left), mid, Some(right))
    }

    pub fn build(
        order: OrderSpec,
        left: Option<Tail>,
        mid: Vec<Run>,
        right: Option<Tail>,
    ) -> Result<Self> {
        if order.kind().has_left_end() != left.is_some()
            || order.kind().has_right_end() != right.is_some()
        {
            return Err(Error::Domain(format!(
                "tail ends do not match order kind {:?}",
                order.kind()
            )));
        }
        if mid.iter().any(|r| r.mult == 0) {
            return Err(Error::Domain("zero-multiplicity run".into()));
        }
        let mut p = WeightProfile {
            order,
            left,
            mid,
            right,
        };
        p.canonicalize();
        Ok(p)
    }

    pub fn with_order(mut self, order: OrderSpec) -> Result<Self> {
        if order.kind() != self.order.kind() {
            return Err(Error::Domain("order kind mismatch".into()));
        }
        self.order = order;
        Ok(self)
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn left_tail(&self) -> Option<&Tail> {
        self.left.as_ref()
    }

    pub fn mid(&self) -> &[Run] {
        &self.mid
    }

    pub fn right_tail(&self) -> Option<&Tail> {
        self.right.as_ref()
    }

    pub fn mid_len(&self) -> u64 {
        self.mid.iter().map(|r| r.mult).sum()
    }

    fn canonicalize(&mut self) {
        let mut merged: Vec<Run> = Vec::with_capacity(self.mid.len());
        for r in self.mid.drain(..) {
            match merged.last_mut() {
                Some(last) if last.value == r.value => last.mult += r.mult,
                _ => merged.push(r),
            }
        }
        self.mid = merged;
        // absorb middle runs that continue the right tail
        if let Some(tail) = &mut self.right {
            let mut guard = 0u32;
            while let Some(last) = self.mid.last_mut() {
                if tail.is_constant() {
                    if last.value == tail.pattern[0].value {
                        self.mid.pop();
                        continue;
                    }
                    break;
                }
                if guard >= 1024 {
                    break;
                }
                guard += 1;
                if last.value == tail.value_at(-1) {
                    *tail = tail.extended_inward();
                    if last.mult == 1 {
                        self.mid.pop();
                    } else {
                        last.mult -= 1;
                    }
                } else {
                    break;
                }
            }
        }
        // absorb middle runs that continue the left tail
        if let Some(tail) = &mut self.left {
            let mut guard = 0u32;
            while let Some(first) = self.mid.first_mut() {
                if tail.is_constant() {
                    if first.value == tail.pattern[0].value {
                        self.mid.remove(0);
                        continue;
                    }
                    break;
                }
                if guard >= 1024 {
                    break;
                }
                guard += 1;
                if first.value == tail.value_at(-1) {
                    *tail = tail.extended_inward();
                    if first.mult == 1 {
                        self.mid.remove(0);
                    } else {
                        first.mult -= 1;
                    }
                } else {
                    break;
                }
            }
        }
    }

    /// Value at order coordinate `c` (see the struct docs for the anchoring
    /// convention).
    pub fn value_at_coord(&self, c: i64) -> i64 {
        match self.order.kind() {
            OrderKind::RightInfinite => {
                debug_assert!(c >= 1);
                self.value_from_left(c - 1)
            }
            OrderKind::LeftInfinite => {
                debug_assert!(c <= -1);
                self.value_from_right(-c - 1)
            }
            OrderKind::TwoSided => {
                if c <= 0 {
                    self.left.as_ref().unwrap().value_at(-c)
                } else {
                    self.value_from_left(c - 1)
                }
            }
        }
    }

    /// Value at position `p` of the underlying order (relabeling applied).
    pub fn value_at(&self, p: Position) -> Result<i64> {
        self.order.check_position(p)?;
        Ok(self.value_at_coord(self.order.coordinate(p)))
    }

    // 0-based index from the start of mid going right (right-open side)
    fn value_from_left(&self, mut idx: i64) -> i64 {
        debug_assert!(idx >= 0);
        for r in &self.mid {
            if (idx as u64) < r.mult {
                return r.value;
            }
            idx -= r.mult as i64;
        }
        self.right.as_ref().unwrap().value_at(idx)
    }

    // 0-based index from the end of mid going left (left-open side)
    fn value_from_right(&self, mut idx: i64) -> i64 {
        debug_assert!(idx >= 0);
        for r in self.mid.iter().rev() {
            if (idx as u64) < r.mult {
                return r.value;
            }
            idx -= r.mult as i64;
        }
        // left tail: outward index counted from its inner edge
        self.left.as_ref().unwrap().value_at(idx)
    }

    /// Restriction to the first `n` window positions, listed ascending in
    /// the order.
    pub fn restrict_window(&self, n: usize) -> Vec<i64> {
        self.order
            .finite_window(n)
            .into_iter()
            .map(|p| self.value_at(p).expect("window positions are valid"))
            .collect()
    }

    /// Dominance: weakly decreasing along the order.
    pub fn is_dominant(&self) -> bool {
        if let Some(t) = &self.left {
            let flat = t.flat();
            // the pattern runs outward, so weakly decreasing along the
            // order means weakly increasing here
            if flat.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            // innermost value of the next repetition outward must dominate
            // the outermost value of the current one
            let len = t.period_len() as i64;
            if t.value_at(len) < t.value_at(len - 1) {
                return false;
            }
            // inner edge vs whatever sits to the right of the tail
            if let Some(first) = self.first_inner_value_right_of_left_tail() {
                if t.value_at(0) < first {
                    return false;
                }
            }
        }
        if self.mid.windows(2).any(|w| w[0].value < w[1].value) {
            return false;
        }
        if let Some(t) = &self.right {
            if t.offset > 0 {
                return false;
            }
            let flat = t.flat();
            if flat.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            let len = t.period_len() as i64;
            // last value of one repetition >= first value of the next
            if flat[flat.len() - 1] < t.value_at(len) {
                return false;
            }
            if let Some(last) = self.last_inner_value_left_of_right_tail() {
                if last < t.value_at(0) {
                    return false;
                }
            }
        }
        // left tail vs right tail when the middle is empty
        if self.mid.is_empty() {
            if let (Some(l), Some(r)) = (&self.left, &self.right) {
                if l.value_at(0) < r.value_at(0) {
                    return false;
                }
            }
        }
        true
    }

    fn first_inner_value_right_of_left_tail(&self) -> Option<i64> {
        if let Some(r) = self.mid.first() {
            return Some(r.value);
        }
        self.right.as_ref().map(|t| t.value_at(0))
    }

    fn last_inner_value_left_of_right_tail(&self) -> Option<i64> {
        if let Some(r) = self.mid.last() {
            return Some(r.value);
        }
        self.left.as_ref().map(|t| t.value_at(0))
    }

    /// `Some(count)` when the sequence takes finitely many values.
    pub fn image_cardinality(&self) -> Option<u64> {
        let mut values = std::collections::BTreeSet::new();
        for t in [&self.left, &self.right].into_iter().flatten() {
            if t.offset != 0 {
                return None;
            }
            for r in &t.pattern {
                values.insert(r.value);
            }
        }
        for r in &self.mid {
            values.insert(r.value);
        }
        Some(values.len() as u64)
    }

    pub fn image_is_finite(&self) -> bool {
        self.image_cardinality().is_some()
    }

    /// Whether the two sequences agree at all but finitely many positions.
    pub fn tail_equivalent(&self, other: &WeightProfile) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::Domain(
                "tail equivalence requires identical orders".into(),
            ));
        }
        if let (Some(a), Some(b)) = (&self.right, &other.right) {
            if !tails_eventually_equal(a, self.mid_len(), b, other.mid_len()) {
                return Ok(false);
            }
        }
        if let (Some(a), Some(b)) = (&self.left, &other.left) {
            let (sa, sb) = match self.order.kind() {
                // two-sided left tails share the anchor at coordinate 0
                OrderKind::TwoSided => (0, 0),
                _ => (self.mid_len(), other.mid_len()),
            };
            if !tails_eventually_equal(a, sa, b, sb) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The reflected profile `λ* = (..., -λ_3, -λ_2, -λ_1)` of a
    /// right-infinite profile, living on the left-infinite order.
    pub fn star(&self) -> Result<WeightProfile> {
        if self.order.kind() != OrderKind::RightInfinite {
            return Err(Error::Domain(
                "star is defined for right-infinite profiles".into(),
            ));
        }
        let mid = self
            .mid
            .iter()
            .rev()
            .map(|r| Run::new(-r.value, r.mult))
            .collect();
        WeightProfile::left_infinite(self.right.as_ref().unwrap().negate_reverse(), mid)
    }

    fn anchor(&self) -> i64 {
        match self.order.kind() {
            OrderKind::RightInfinite | OrderKind::TwoSided => {
                self.right.as_ref().unwrap().value_at(0)
            }
            OrderKind::LeftInfinite => self.left.as_ref().unwrap().value_at(0),
        }
    }

    /// Subtracts a global constant so the tail anchor value becomes 0: the
    /// right tail for right-infinite and two-sided profiles, the left tail
    /// for left-infinite ones. Two profiles defining the same functional on
    /// the traceless Cartan normalize identically.
    pub fn normalize_shift(&self) -> WeightProfile {
        self.global_shift(-self.anchor())
    }

    pub fn global_shift(&self, c: i64) -> WeightProfile {
        WeightProfile {
            order: self.order.clone(),
            left: self.left.as_ref().map(|t| t.shifted(c)),
            mid: self
                .mid
                .iter()
                .map(|r| Run::new(r.value + c, r.mult))
                .collect(),
            right: self.right.as_ref().map(|t| t.shifted(c)),
        }
    }

    /// The finite multiset of deviations from the tail, read as a partition.
    /// Defined for dominant finite-image profiles on one-sided orders.
    pub fn discrepancy_partition(&self) -> Result<Partition> {
        if !self.is_dominant() {
            return Err(Error::Domain(
                "discrepancy partition requires a dominant profile".into(),
            ));
        }
        if !self.image_is_finite() {
            return Err(Error::Domain(
                "infinite image: the annihilator is zero and carries no diagram".into(),
            ));
        }
        let normalized = self.normalize_shift();
        let mut entries = Vec::new();
        match self.order.kind() {
            OrderKind::RightInfinite => {
                for r in &normalized.mid {
                    for _ in 0..r.mult {
                        entries.push(r.value as u64);
                    }
                }
            }
            OrderKind::LeftInfinite => {
                for r in &normalized.mid {
                    for _ in 0..r.mult {
                        entries.push((-r.value) as u64);
                    }
                }
            }
            OrderKind::TwoSided => {
                return Err(Error::Domain(
                    "discrepancy partition is defined on one-sided orders".into(),
                ));
            }
        }
        Ok(Partition::from_multiset(entries))
    }

    /// Canonical representative of the class of sequences agreeing with this
    /// one at all but finitely many positions: the middle is dropped and the
    /// tails are re-anchored at the order origin.
    pub fn tail_class(&self) -> WeightProfile {
        let rephase = |t: &Tail, start: u64| -> Tail {
            let l = t.period_len() as i64;
            let pattern = (0..l)
                .map(|i| Run::new(t.value_at(i - start as i64), 1))
                .collect();
            Tail {
                pattern,
                offset: t.offset,
            }
            .canonical()
        };
        let (left, right) = match self.order.kind() {
            OrderKind::RightInfinite => (
                None,
                Some(rephase(self.right.as_ref().unwrap(), self.mid_len())),
            ),
            OrderKind::LeftInfinite => (
                Some(rephase(self.left.as_ref().unwrap(), self.mid_len())),
                None,
            ),
            OrderKind::TwoSided => (
                self.left.clone(),
                Some(rephase(self.right.as_ref().unwrap(), self.mid_len())),
            ),
        };
        WeightProfile {
            order: self.order.clone(),
            left,
            mid: Vec::new(),
            right,
        }
    }

    /// Multiplicities of each value over the finite middle part, for tag
    /// extraction. Only meaningful for finite-image profiles, where tails
    /// contribute infinite multiplicity and are excluded.
    pub fn finite_value_counts(&self) -> BTreeMap<i64, u64> {
        let mut m = BTreeMap::new();
        for r in &self.mid {
            *m.entry(r.value).or_insert(0) += r.mult;
        }
        m
    }
}

impl std::fmt::Display for WeightProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.order.kind() {
            OrderKind::RightInfinite => write!(f, "right-infinite")?,
            OrderKind::LeftInfinite => write!(f, "left-infinite")?,
            OrderKind::TwoSided => write!(f, "two-sided")?,
        }
        if !self.order.relabeling().is_empty() {
            write!(f, " relabeled{:?}", self.order.relabeling())?;
        }
        write!(f, ":")?;
        if let Some(t) = &self.left {
            write!(f, " left {t}")?;
        }
        write!(f, " mid [")?;
        for (i, r) in self.mid.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if r.mult == 1 {
                write!(f, "{}", r.value)?;
            } else {
                write!(f, "{}x{}", r.value, r.mult)?;
            }
        }
        write!(f, "]")?;
        if let Some(t) = &self.right {
            write!(f, " right {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(mid: Vec<(i64, u64)>, tail: Tail) -> WeightProfile {
        WeightProfile::right_infinite(
            mid.into_iter().map(|(v, m)| Run::new(v, m)).collect(),
            tail,
        )
        .unwrap()
    }

    fn li(tail: Tail, mid: Vec<(i64, u64)>) -> WeightProfile {
        WeightProfile::left_infinite(
            tail,
            mid.into_iter().map(|(v, m)| Run::new(v, m)).collect(),
        )
        .unwrap()
    }

    fn arith(start: i64, step: i64) -> Tail {
        Tail::periodic(vec![Run::new(start, 1)], step).unwrap()
    }

    #[test]
    fn dominance() {
        assert!(ri(vec![(1, 1)], Tail::constant(0)).is_dominant());
        assert!(!ri(vec![(0, 1)], Tail::periodic(vec![Run::new(1, 1)], 0).unwrap()).is_dominant());
        // increases from mid into tail
        assert!(!ri(vec![(0, 1)], Tail::constant(1)).is_dominant());
        // the arithmetic example 0, -2, -4, ...
        assert!(ri(vec![], arith(0, -2)).is_dominant());
        // left tails run outward: ..., 6, 5, 3, 2, | 2
        let t = Tail::periodic(vec![Run::new(2, 1), Run::new(3, 1)], 3).unwrap();
        assert!(li(t, vec![(2, 1)]).is_dominant());
        // ..., 2, 3, | 1 decreases leftward
        let t = Tail::periodic(vec![Run::new(3, 1), Run::new(2, 1)], -3).unwrap();
        assert!(!li(t, vec![(1, 1)]).is_dominant());
    }

    #[test]
    fn values_of_arithmetic_tail() {
        let p = ri(vec![], arith(0, -2));
        let vals: Vec<i64> = (1..=5).map(|c| p.value_at(c).unwrap()).collect();
        assert_eq!(vals, vec![0, -2, -4, -6, -8]);
    }

    #[test]
    fn values_of_block_periodic_tail() {
        let mu = ri(vec![], Tail::periodic(vec![Run::new(-1, 2)], -4).unwrap());
        let vals: Vec<i64> = (1..=6).map(|c| mu.value_at(c).unwrap()).collect();
        assert_eq!(vals, vec![-1, -1, -5, -5, -9, -9]);
    }

    #[test]
    fn image_cardinality_cases() {
        assert_eq!(ri(vec![], Tail::constant(1)).image_cardinality(), Some(1));
        assert_eq!(
            ri(vec![(5, 2), (3, 3)], Tail::constant(1)).image_cardinality(),
            Some(3)
        );
        assert_eq!(ri(vec![], arith(0, -2)).image_cardinality(), None);
    }

    #[test]
    fn tail_equivalence() {
        let a = ri(vec![(7, 3)], Tail::constant(0));
        let b = ri(vec![(2, 1)], Tail::constant(0));
        assert!(a.tail_equivalent(&b).unwrap());
        let c = ri(vec![], Tail::constant(1));
        assert!(!a.tail_equivalent(&c).unwrap());
        // same arithmetic law, different finite prefix
        let d = ri(vec![(9, 2)], arith(-4, -2));
        let e = ri(vec![], arith(0, -2));
        // d: 9 9 -4 -6 ...; e: 0 -2 -4 -6...; beyond index 2 both follow the
        // same values
        assert!(d.tail_equivalent(&e).unwrap());
        let f = ri(vec![], arith(1, -2));
        assert!(!e.tail_equivalent(&f).unwrap());
    }

    #[test]
    fn star_reverses_and_negates() {
        let p = ri(vec![(2, 1), (1, 2)], Tail::constant(0));
        let s = p.star().unwrap();
        assert_eq!(s.order().kind(), OrderKind::LeftInfinite);
        let vals: Vec<i64> = (-4..=-1).map(|c| s.value_at(c).unwrap()).collect();
        assert_eq!(vals, vec![0, -1, -1, -2]);
        // star is an involution up to the kind round-trip: reflect back by hand
        let back_mid: Vec<Run> = s
            .mid()
            .iter()
            .rev()
            .map(|r| Run::new(-r.value, r.mult))
            .collect();
        let back = WeightProfile::right_infinite(
            back_mid,
            Tail::periodic(
                s.left_tail()
                    .unwrap()
                    .pattern()
                    .iter()
                    .rev()
                    .map(|r| Run::new(-r.value, r.mult))
                    .collect(),
                -s.left_tail().unwrap().offset(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn star_fixed_point() {
        let p = ri(vec![], Tail::constant(0));
        let s = p.star().unwrap();
        assert_eq!(s.left_tail().unwrap(), &Tail::constant(0));
        assert!(s.mid().is_empty());
    }

    #[test]
    fn star_arithmetic() {
        let p = ri(vec![], arith(0, -2));
        let s = p.star().unwrap();
        let vals: Vec<i64> = (-4..=-1).map(|c| s.value_at(c).unwrap()).collect();
        assert_eq!(vals, vec![6, 4, 2, 0]);
    }

    #[test]
    fn normalize_examples() {
        let p = ri(vec![(5, 2)], Tail::constant(3)).normalize_shift();
        assert_eq!(p, ri(vec![(2, 2)], Tail::constant(0)));
        let q = ri(vec![], Tail::constant(0));
        assert_eq!(q.normalize_shift(), q);
        let ts = WeightProfile::two_sided(Tail::constant(1), vec![], Tail::constant(0)).unwrap();
        assert_eq!(ts.normalize_shift(), ts);
    }

    #[test]
    fn discrepancy_examples() {
        let p = ri(vec![(2, 1), (1, 2)], Tail::constant(0));
        assert_eq!(
            p.discrepancy_partition().unwrap(),
            Partition::new(vec![2, 1, 1]).unwrap()
        );
        let q = ri(vec![], Tail::constant(0));
        assert!(q.discrepancy_partition().unwrap().is_empty());
        let l = li(Tail::constant(0), vec![(-1, 2)]);
        assert_eq!(
            l.discrepancy_partition().unwrap(),
            Partition::new(vec![1, 1]).unwrap()
        );
        assert!(ri(vec![], arith(0, -2)).discrepancy_partition().is_err());
    }

    #[test]
    fn canonical_absorption() {
        // mid continuing a constant tail is absorbed
        let a = ri(vec![(0, 3)], Tail::constant(0));
        let b = ri(vec![], Tail::constant(0));
        assert_eq!(a, b);
        // mid continuing an arithmetic tail is absorbed too
        let c = ri(vec![(0, 1)], arith(-2, -2));
        let d = ri(vec![], arith(0, -2));
        assert_eq!(c, d);
        // pattern [0,-2] with offset -4 reduces to pattern [0] offset -2
        let e = ri(
            vec![],
            Tail::periodic(vec![Run::new(0, 1), Run::new(-2, 1)], -4).unwrap(),
        );
        assert_eq!(e, d);
    }

    #[test]
    fn normalize_preserves_discrepancy_and_dominance() {
        let p = ri(vec![(7, 1), (6, 2)], Tail::constant(4));
        let n = p.normalize_shift();
        assert!(n.is_dominant() && p.is_dominant());
        assert_eq!(n.normalize_shift(), n, "idempotent");
        assert_eq!(p.image_cardinality(), n.image_cardinality());
        assert_eq!(
            p.discrepancy_partition().unwrap(),
            n.discrepancy_partition().unwrap()
        );
    }

    #[test]
    fn window_restrictions_of_dominant_profiles_decrease() {
        let p = ri(vec![(3, 1), (1, 1)], arith(0, -1));
        assert!(p.is_dominant());
        for n in 1..8 {
            let w = p.restrict_window(n);
            assert!(w.windows(2).all(|x| x[0] >= x[1]), "{w:?}");
        }
        let ts = WeightProfile::two_sided(Tail::constant(2), vec![Run::new(1, 2)], Tail::constant(0))
            .unwrap();
        assert!(ts.is_dominant());
        for n in 1..9 {
            let w = ts.restrict_window(n);
            assert!(w.windows(2).all(|x| x[0] >= x[1]), "{w:?}");
        }
    }

    #[test]
    fn tail_class_normal_form() {
        let a = ri(vec![(9, 2)], arith(-4, -2));
        let b = ri(vec![], arith(0, -2));
        assert_eq!(a.tail_class(), b.tail_class());
        let c = ri(vec![], arith(1, -2));
        assert_ne!(b.tail_class(), c.tail_class());
    }

    #[test]
    fn tail_equivalence_is_equivalence() {
        let profiles = [
            ri(vec![(3, 1)], Tail::constant(0)),
            ri(vec![], Tail::constant(0)),
            ri(vec![], Tail::constant(1)),
            ri(vec![(1, 4)], arith(0, -2)),
            ri(vec![], arith(0, -2)),
        ];
        for a in &profiles {
            assert!(a.tail_equivalent(a).unwrap());
            for b in &profiles {
                assert_eq!(
                    a.tail_equivalent(b).unwrap(),
                    b.tail_equivalent(a).unwrap()
                );
                for c in &profiles {
                    if a.tail_equivalent(b).unwrap() && b.tail_equivalent(c).unwrap() {
                        assert!(a.tail_equivalent(c).unwrap());
                    }
                }
            }
        }
    }
}
