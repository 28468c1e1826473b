//! Linear orders on the index set of Dynkin type.
//!
//! A Borel subalgebra of sl(∞) containing the Cartan corresponds to a linear
//! order on the index set. Only the three Dynkin order types are
//! representable here: right-infinite (order-isomorphic to the positive
//! integers), left-infinite (negative integers) and two-sided (all
//! integers). A finite relabeling, given as a set of disjoint
//! transpositions, models conjugation by a finitary automorphism.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a basis line; the valid coordinate range depends on the order
/// kind (positive for right-infinite, negative for left-infinite, any
/// integer for two-sided).
pub type Position = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    RightInfinite,
    LeftInfinite,
    TwoSided,
}

impl OrderKind {
    pub fn contains(self, p: Position) -> bool {
        match self {
            OrderKind::RightInfinite => p >= 1,
            OrderKind::LeftInfinite => p <= -1,
            OrderKind::TwoSided => true,
        }
    }

    /// True when the order has an infinite ascending end.
    pub fn has_right_end(self) -> bool {
        matches!(self, OrderKind::RightInfinite | OrderKind::TwoSided)
    }

    /// True when the order has an infinite descending end.
    pub fn has_left_end(self) -> bool {
        matches!(self, OrderKind::LeftInfinite | OrderKind::TwoSided)
    }
}

/// A Dynkin-type linear order on positions, with an optional finite
/// relabeling given by disjoint transpositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrderSpec", into = "RawOrderSpec")]
pub struct OrderSpec {
    kind: OrderKind,
    relabeling: Vec<(Position, Position)>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrderSpec {
    kind: OrderKind,
    #[serde(default)]
    relabeling: Vec<(Position, Position)>,
}

impl TryFrom<RawOrderSpec> for OrderSpec {
    type Error = Error;
    fn try_from(raw: RawOrderSpec) -> Result<Self> {
        OrderSpec::with_relabeling(raw.kind, raw.relabeling)
    }
}

impl From<OrderSpec> for RawOrderSpec {
    fn from(o: OrderSpec) -> Self {
        RawOrderSpec {
            kind: o.kind,
            relabeling: o.relabeling,
        }
    }
}

impl OrderSpec {
    pub fn new(kind: OrderKind) -> Self {
        OrderSpec {
            kind,
            relabeling: Vec::new(),
        }
    }

    /// Builds an order with a finite relabeling. The transpositions must be
    /// pairwise disjoint, non-trivial and within the coordinate range of the
    /// kind.
    pub fn with_relabeling(
        kind: OrderKind,
        mut relabeling: Vec<(Position, Position)>,
    ) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &relabeling {
            if a == b {
                return Err(Error::Domain(format!("trivial transposition ({a} {b})")));
            }
            if !kind.contains(a) || !kind.contains(b) {
                return Err(Error::Domain(format!(
                    "transposition ({a} {b}) outside the coordinate range"
                )));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(Error::Domain(format!(
                    "position repeated across transpositions near ({a} {b})"
                )));
            }
        }
        for pair in &mut relabeling {
            if pair.0 > pair.1 {
                std::mem::swap(&mut pair.0, &mut pair.1);
            }
        }
        relabeling.sort_unstable();
        Ok(OrderSpec { kind, relabeling })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn relabeling(&self) -> &[(Position, Position)] {
        &self.relabeling
    }

    pub fn check_position(&self, p: Position) -> Result<()> {
        if self.kind.contains(p) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "position {p} invalid for {:?}",
                self.kind
            )))
        }
    }

    /// The coordinate of a position after applying the relabeling. The
    /// relabeling is an involution, so this is its own inverse.
    pub fn coordinate(&self, p: Position) -> Position {
        for &(a, b) in &self.relabeling {
            if p == a {
                return b;
            }
            if p == b {
                return a;
            }
        }
        p
    }

    /// The strict order `a ≺ b`.
    pub fn precedes(&self, a: Position, b: Position) -> Result<bool> {
        self.check_position(a)?;
        self.check_position(b)?;
        Ok(self.coordinate(a) < self.coordinate(b))
    }

    /// Whether the root attached to the pair `(i, j)` is positive, i.e.
    /// `i ≺ j`.
    pub fn is_positive_root(&self, i: Position, j: Position) -> Result<bool> {
        if i == j {
            return Err(Error::Domain(format!("({i}, {j}) is not a root")));
        }
        self.precedes(i, j)
    }

    /// The first `n` positions in window order: the least `n` for a
    /// right-infinite order, the greatest `n` for a left-infinite order, and
    /// for a two-sided order a balanced window around the cut between
    /// coordinates 0 and 1, grown in the sequence 0, 1, -1, 2, -2, ...
    ///
    /// Positions are returned ascending in the order.
    pub fn finite_window(&self, n: usize) -> Vec<Position> {
        let mut coords: Vec<Position> = match self.kind {
            OrderKind::RightInfinite => (1..=n as i64).collect(),
            OrderKind::LeftInfinite => (-(n as i64)..=-1).collect(),
            OrderKind::TwoSided => {
                let mut cs = Vec::with_capacity(n);
                for k in 0..n as i64 {
                    let c = if k == 0 {
                        0
                    } else if k % 2 == 1 {
                        (k + 1) / 2
                    } else {
                        -k / 2
                    };
                    cs.push(c);
                }
                cs.sort_unstable();
                cs
            }
        };
        for c in &mut coords {
            *c = self.coordinate(*c);
        }
        coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn precedes_standard_orders() {
        let ri = OrderSpec::new(OrderKind::RightInfinite);
        assert!(ri.precedes(1, 2).unwrap());
        let li = OrderSpec::new(OrderKind::LeftInfinite);
        assert!(!li.precedes(-1, -2).unwrap());
        let ts = OrderSpec::new(OrderKind::TwoSided);
        assert!(ts.precedes(-3, 5).unwrap());
    }

    #[test]
    fn precedes_rejects_bad_positions() {
        let ri = OrderSpec::new(OrderKind::RightInfinite);
        assert!(ri.precedes(0, 2).is_err());
        assert!(ri.precedes(1, -4).is_err());
    }

    #[test]
    fn positive_roots() {
        let ri = OrderSpec::new(OrderKind::RightInfinite);
        assert!(ri.is_positive_root(1, 3).unwrap());
        assert!(!ri.is_positive_root(3, 1).unwrap());
        assert!(ri.is_positive_root(2, 2).is_err());
        let ts = OrderSpec::new(OrderKind::TwoSided);
        assert!(!ts.is_positive_root(0, -1).unwrap());
    }

    #[test]
    fn windows() {
        let ri = OrderSpec::new(OrderKind::RightInfinite);
        assert_eq!(ri.finite_window(3), vec![1, 2, 3]);
        let li = OrderSpec::new(OrderKind::LeftInfinite);
        assert_eq!(li.finite_window(3), vec![-3, -2, -1]);
        let ts = OrderSpec::new(OrderKind::TwoSided);
        assert_eq!(ts.finite_window(3), vec![-1, 0, 1]);
        assert_eq!(ts.finite_window(4), vec![-1, 0, 1, 2]);
    }

    #[test]
    fn relabeling_validation() {
        assert!(OrderSpec::with_relabeling(OrderKind::RightInfinite, vec![(1, 1)]).is_err());
        assert!(OrderSpec::with_relabeling(OrderKind::RightInfinite, vec![(0, 2)]).is_err());
        assert!(
            OrderSpec::with_relabeling(OrderKind::RightInfinite, vec![(1, 2), (2, 3)]).is_err()
        );
        let o = OrderSpec::with_relabeling(OrderKind::RightInfinite, vec![(1, 4)]).unwrap();
        // 4 now plays the role of the least position
        assert!(o.precedes(4, 2).unwrap());
        assert_eq!(o.finite_window(3), vec![4, 2, 3]);
    }

    fn arb_order() -> impl Strategy<Value = OrderSpec> {
        prop_oneof![
            Just(OrderSpec::new(OrderKind::RightInfinite)),
            Just(OrderSpec::new(OrderKind::LeftInfinite)),
            Just(OrderSpec::new(OrderKind::TwoSided)),
            Just(OrderSpec::with_relabeling(OrderKind::RightInfinite, vec![(2, 7)]).unwrap()),
            Just(OrderSpec::with_relabeling(OrderKind::TwoSided, vec![(-1, 3), (0, 5)]).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn strict_total_order(o in arb_order(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let sample = |r: &mut rand_chacha::ChaCha8Rng| match o.kind() {
                OrderKind::RightInfinite => r.gen_range(1..40i64),
                OrderKind::LeftInfinite => r.gen_range(-40..0i64),
                OrderKind::TwoSided => r.gen_range(-20..20i64),
            };
            for _ in 0..32 {
                let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
                prop_assert!(!o.precedes(a, a).unwrap());
                if a != b {
                    prop_assert!(o.precedes(a, b).unwrap() ^ o.precedes(b, a).unwrap());
                    prop_assert!(o.is_positive_root(a, b).unwrap() ^ o.is_positive_root(b, a).unwrap());
                }
                if o.precedes(a, b).unwrap() && o.precedes(b, c).unwrap() {
                    prop_assert!(o.precedes(a, c).unwrap());
                }
            }
        }

        #[test]
        fn windows_nest_and_are_convex(o in arb_order(), n in 1usize..12) {
            let small: std::collections::HashSet<_> = o.finite_window(n).iter().copied().collect();
            let big: std::collections::HashSet<_> = o.finite_window(n + 1).into_iter().collect();
            prop_assert!(small.is_subset(&big));
            // convexity: anything strictly between the window ends is in the window
            let win = o.finite_window(n);
            let (first, last) = (win[0], win[n - 1]);
            let probe = match o.kind() {
                OrderKind::RightInfinite => (1i64..60).collect::<Vec<_>>(),
                OrderKind::LeftInfinite => (-60i64..0).collect(),
                OrderKind::TwoSided => (-30i64..30).collect(),
            };
            for p in probe {
                if o.precedes(first, p).unwrap() && o.precedes(p, last).unwrap() {
                    prop_assert!(small.contains(&p));
                }
            }
        }
    }
}
