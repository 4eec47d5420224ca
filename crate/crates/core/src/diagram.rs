//! Slarc diagrams and the combinatorics of concatenation.
//!
//! A diagram in `_mB_n` has `m` endpoints on the left line and `n` on the
//! right line, numbered `1..` from bottom to top. `k` of the left points are
//! joined to `k` of the right points by long arcs (larcs); the remaining points
//! carry short arcs (sarcs). Because the arcs are planar and have no critical
//! points under projection to the x-axis, the `i`-th left larc endpoint is
//! always joined to the `i`-th right larc endpoint, so the two endpoint sets
//! determine the diagram.
//!
//! Endpoint sets are stored as bitmasks; at most [`MAX_POINTS`] points fit on
//! each side.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{full_mask, mask_of, positions_of, subsets, Bits};

pub const MAX_POINTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{count} endpoints exceed the supported maximum of {MAX_POINTS}")]
    TooManyPoints { count: usize },
    #[error("{side} larc position {position} is outside 1..={count}")]
    PositionOutOfRange {
        side: Side,
        position: usize,
        count: usize,
    },
    #[error("{side} larc positions are not strictly increasing")]
    NotIncreasing { side: Side },
    #[error("larc lists have different lengths ({left} left, {right} right)")]
    WidthMismatch { left: usize, right: usize },
    #[error("cannot concatenate: left diagram has {left_inner} right points, right diagram has {right_inner} left points")]
    InnerMismatch {
        left_inner: usize,
        right_inner: usize,
    },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cabling factor must be positive")]
    ZeroCable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// One basis element of `_mB_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct Diagram {
    left: u8,
    right: u8,
    larc_left: u128,
    larc_right: u128,
}

/// Result of concatenating two diagrams before the floating-arc rule is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Composite {
    pub diagram: Diagram,
    pub floating: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DiagramJson {
    left: usize,
    right: usize,
    larc_left: Vec<usize>,
    larc_right: Vec<usize>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = DiagramError;

    fn try_from(raw: DiagramJson) -> Result<Self, Self::Error> {
        Diagram::validate(raw.left, raw.right, &raw.larc_left, &raw.larc_right)
    }
}

impl From<Diagram> for DiagramJson {
    fn from(d: Diagram) -> Self {
        DiagramJson {
            left: d.left_count(),
            right: d.right_count(),
            larc_left: d.larc_left(),
            larc_right: d.larc_right(),
        }
    }
}

fn check_side(side: Side, count: usize, positions: &[usize]) -> Result<(), DiagramError> {
    if count > MAX_POINTS {
        return Err(DiagramError::TooManyPoints { count });
    }
    for (i, &p) in positions.iter().enumerate() {
        if p == 0 || p > count {
            return Err(DiagramError::PositionOutOfRange {
                side,
                position: p,
                count,
            });
        }
        if i > 0 && positions[i - 1] >= p {
            return Err(DiagramError::NotIncreasing { side });
        }
    }
    Ok(())
}

impl Diagram {
    /// Builds a diagram from endpoint counts and larc endpoint lists, rejecting
    /// anything that is not a canonical slarc diagram.
    pub fn validate(
        left: usize,
        right: usize,
        larc_left: &[usize],
        larc_right: &[usize],
    ) -> Result<Diagram, DiagramError> {
        check_side(Side::Left, left, larc_left)?;
        check_side(Side::Right, right, larc_right)?;
        if larc_left.len() != larc_right.len() {
            return Err(DiagramError::WidthMismatch {
                left: larc_left.len(),
                right: larc_right.len(),
            });
        }
        Ok(Diagram {
            left: left as u8,
            right: right as u8,
            larc_left: mask_of(larc_left),
            larc_right: mask_of(larc_right),
        })
    }

    /// Internal constructor from masks; callers guarantee the invariants.
    pub(crate) fn from_masks(left: usize, right: usize, larc_left: u128, larc_right: u128) -> Diagram {
        debug_assert!(left <= MAX_POINTS && right <= MAX_POINTS);
        debug_assert_eq!(larc_left.count_ones(), larc_right.count_ones());
        debug_assert_eq!(larc_left & !full_mask(left), 0);
        debug_assert_eq!(larc_right & !full_mask(right), 0);
        Diagram {
            left: left as u8,
            right: right as u8,
            larc_left,
            larc_right,
        }
    }

    /// The idempotent `1_n`: `n` larcs and no sarcs.
    pub fn identity(n: usize) -> Diagram {
        Diagram::from_masks(n, n, full_mask(n), full_mask(n))
    }

    pub fn left_count(&self) -> usize {
        self.left as usize
    }

    pub fn right_count(&self) -> usize {
        self.right as usize
    }

    pub fn width(&self) -> usize {
        self.larc_left.count_ones() as usize
    }

    pub fn larc_left(&self) -> Vec<usize> {
        positions_of(self.larc_left)
    }

    pub fn larc_right(&self) -> Vec<usize> {
        positions_of(self.larc_right)
    }

    pub fn left_mask(&self) -> u128 {
        self.larc_left
    }

    pub fn right_mask(&self) -> u128 {
        self.larc_right
    }

    /// Positions carrying left sarcs.
    pub fn left_sarcs(&self) -> Vec<usize> {
        positions_of(full_mask(self.left_count()) & !self.larc_left)
    }

    /// Positions carrying right sarcs.
    pub fn right_sarcs(&self) -> Vec<usize> {
        positions_of(full_mask(self.right_count()) & !self.larc_right)
    }

    /// Larcs as `(left, right)` endpoint pairs, bottom to top.
    pub fn larcs(&self) -> impl Iterator<Item = (usize, usize)> {
        Bits(self.larc_left).zip(Bits(self.larc_right))
    }

    pub fn is_identity(&self) -> bool {
        self.left == self.right && self.larc_left == full_mask(self.left_count()) && self.larc_right == self.larc_left
    }

    /// Total number of sarcs, the grading degree of the diagram.
    pub fn sarc_degree(&self) -> usize {
        self.left_count() + self.right_count() - 2 * self.width()
    }

    /// Mirror image about a vertical axis.
    pub fn reflect(&self) -> Diagram {
        Diagram {
            left: self.right,
            right: self.left,
            larc_left: self.larc_right,
            larc_right: self.larc_left,
        }
    }

    /// Adds a through line above every other point.
    pub fn iota(&self) -> Diagram {
        let m = self.left_count();
        let n = self.right_count();
        assert!(m < MAX_POINTS && n < MAX_POINTS, "iota exceeds MAX_POINTS");
        Diagram::from_masks(
            m + 1,
            n + 1,
            self.larc_left | (1u128 << m),
            self.larc_right | (1u128 << n),
        )
    }

    /// Concatenates `self` (on the left) with `other` (on the right).
    ///
    /// The returned diagram ignores floating arcs; their number is reported
    /// separately so each algebra flavor can apply its own rule.
    pub fn compose(&self, other: &Diagram) -> Result<Composite, DiagramError> {
        if self.right != other.left {
            return Err(DiagramError::InnerMismatch {
                left_inner: self.right_count(),
                right_inner: other.left_count(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> Composite {
        debug_assert_eq!(self.right, other.left);
        let inner = self.right_count();
        let floating = inner - (self.larc_right | other.larc_left).count_ones() as usize;
        let mut ll = 0u128;
        let mut lr = 0u128;
        // Merge-join the two larc lists on the shared middle coordinate.
        let mut xs = Bits(self.larc_left).zip(Bits(self.larc_right)).peekable();
        let mut ys = Bits(other.larc_left).zip(Bits(other.larc_right)).peekable();
        while let (Some(&(s, t)), Some(&(t2, r))) = (xs.peek(), ys.peek()) {
            match t.cmp(&t2) {
                Ordering::Less => {
                    xs.next();
                }
                Ordering::Greater => {
                    ys.next();
                }
                Ordering::Equal => {
                    ll |= 1u128 << (s - 1);
                    lr |= 1u128 << (r - 1);
                    xs.next();
                    ys.next();
                }
            }
        }
        Composite {
            diagram: Diagram::from_masks(self.left_count(), other.right_count(), ll, lr),
            floating,
        }
    }

    /// `side = Left` gives the diagram in `_nB_{n-1}` with a single left sarc at
    /// position `i`; `side = Right` gives its mirror in `_{n-1}B_n`.
    pub fn elementary(n: usize, i: usize, side: Side) -> Result<Diagram, DiagramError> {
        if i == 0 || i > n {
            return Err(DiagramError::IndexOutOfRange { index: i, n });
        }
        if n > MAX_POINTS {
            return Err(DiagramError::TooManyPoints { count: n });
        }
        let all = full_mask(n);
        let punctured = all & !(1u128 << (i - 1));
        let short = full_mask(n - 1);
        Ok(match side {
            Side::Left => Diagram::from_masks(n, n - 1, punctured, short),
            Side::Right => Diagram::from_masks(n - 1, n, short, punctured),
        })
    }

    /// Replaces every arc by `k` parallel copies.
    pub fn cable(&self, k: usize) -> Result<Diagram, DiagramError> {
        if k == 0 {
            return Err(DiagramError::ZeroCable);
        }
        let m = self.left_count() * k;
        let n = self.right_count() * k;
        if m > MAX_POINTS || n > MAX_POINTS {
            return Err(DiagramError::TooManyPoints { count: m.max(n) });
        }
        let expand = |mask: u128| {
            Bits(mask).fold(0u128, |acc, s| acc | (full_mask(k) << (k * (s - 1))))
        };
        Ok(Diagram::from_masks(m, n, expand(self.larc_left), expand(self.larc_right)))
    }

    /// Places `top` above `bottom`.
    pub fn stack(top: &Diagram, bottom: &Diagram) -> Result<Diagram, DiagramError> {
        let m = top.left_count() + bottom.left_count();
        let n = top.right_count() + bottom.right_count();
        if m > MAX_POINTS || n > MAX_POINTS {
            return Err(DiagramError::TooManyPoints { count: m.max(n) });
        }
        Ok(Diagram::from_masks(
            m,
            n,
            bottom.larc_left | shift_up(top.larc_left, bottom.left_count()),
            bottom.larc_right | shift_up(top.larc_right, bottom.right_count()),
        ))
    }

    /// True for `1_n` and for the single-sarc diagrams of [`Diagram::elementary`].
    pub fn is_generator(&self) -> bool {
        let m = self.left_count();
        let n = self.right_count();
        if self.is_identity() {
            return true;
        }
        (m == n + 1 && self.larc_right == full_mask(n) && self.width() == n)
            || (n == m + 1 && self.larc_left == full_mask(m) && self.width() == m)
    }

    /// Writes the diagram as a product of generators
    /// `(left-sarc adders) · 1_k · (right-sarc adders)`.
    ///
    /// Concatenating the returned factors in order reproduces `self` with no
    /// floating arcs.
    pub fn factor(&self) -> Vec<Diagram> {
        let k = self.width();
        let mut left_factors = Vec::new();
        let mut left_set = self.larc_left();
        let mut m = self.left_count();
        while m > k {
            // topmost left sarc
            let s = (1..=m).rev().find(|p| !left_set.contains(p)).expect("sarc exists");
            left_factors.push(Diagram::elementary(m, s, Side::Left).expect("valid index"));
            left_set = left_set.iter().map(|&q| if q > s { q - 1 } else { q }).collect();
            m -= 1;
        }
        let mut right_factors = Vec::new();
        let mut right_set = self.larc_right();
        let mut n = self.right_count();
        while n > k {
            let t = (1..=n).rev().find(|p| !right_set.contains(p)).expect("sarc exists");
            right_factors.push(Diagram::elementary(n, t, Side::Right).expect("valid index"));
            right_set = right_set.iter().map(|&q| if q > t { q - 1 } else { q }).collect();
            n -= 1;
        }
        right_factors.reverse();
        let mut out = left_factors;
        out.push(Diagram::identity(k));
        out.extend(right_factors);
        out
    }

    fn lex_cmp(a: u128, b: u128) -> Ordering {
        Bits(a).cmp(Bits(b))
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.left
            .cmp(&other.left)
            .then(self.right.cmp(&other.right))
            .then(self.width().cmp(&other.width()))
            .then_with(|| Diagram::lex_cmp(self.larc_left, other.larc_left))
            .then_with(|| Diagram::lex_cmp(self.larc_right, other.larc_right))
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{:?},{:?})",
            self.left,
            self.right,
            self.larc_left(),
            self.larc_right()
        )
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn shift_up(mask: u128, by: usize) -> u128 {
    u32::try_from(by)
        .ok()
        .and_then(|b| mask.checked_shl(b))
        .unwrap_or(0)
}

/// Every diagram of `_mB_n` whose width lies in `widths`, ordered by width,
/// then lexicographically by left larc endpoints, then by right ones.
pub fn enumerate_widths(m: usize, n: usize, widths: std::ops::RangeInclusive<usize>) -> Vec<Diagram> {
    let mut out = Vec::new();
    let top = m.min(n);
    for k in widths {
        if k > top {
            break;
        }
        let lefts = subsets(m, k);
        let rights = subsets(n, k);
        for l in &lefts {
            let lm = mask_of(l);
            for r in &rights {
                out.push(Diagram::from_masks(m, n, lm, mask_of(r)));
            }
        }
    }
    out
}

/// The full basis `_mB_n`.
pub fn enumerate_basis(m: usize, n: usize) -> Vec<Diagram> {
    enumerate_widths(m, n, 0..=m.min(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;

    fn d(m: usize, n: usize, l: &[usize], r: &[usize]) -> Diagram {
        Diagram::validate(m, n, l, r).unwrap()
    }

    #[test]
    fn validate_examples() {
        let one2 = d(2, 2, &[1, 2], &[1, 2]);
        assert_eq!(one2, Diagram::identity(2));
        assert_eq!(one2.width(), 2);
        let c = d(1, 1, &[], &[]);
        assert_eq!(c.left_sarcs(), vec![1]);
        assert_eq!(c.right_sarcs(), vec![1]);
        assert_eq!(
            Diagram::validate(2, 1, &[1, 2], &[1]),
            Err(DiagramError::WidthMismatch { left: 2, right: 1 })
        );
        assert!(matches!(
            Diagram::validate(2, 2, &[2, 1], &[1, 2]),
            Err(DiagramError::NotIncreasing { side: Side::Left })
        ));
        assert!(matches!(
            Diagram::validate(2, 2, &[1], &[3]),
            Err(DiagramError::PositionOutOfRange { side: Side::Right, .. })
        ));
        assert!(matches!(
            Diagram::validate(129, 0, &[], &[]),
            Err(DiagramError::TooManyPoints { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_basis(2, 1).len(), 3);
        assert_eq!(enumerate_basis(3, 2).len(), 10);
        let w2 = enumerate_widths(3, 2, 2..=2);
        // brute force: width-2 diagrams pick 2 of 3 left points and both right points
        let mut brute = 0;
        for l in subsets(3, 2) {
            for r in subsets(2, 2) {
                assert!(w2.contains(&d(3, 2, &l, &r)));
                brute += 1;
            }
        }
        assert_eq!(w2.len(), brute);
        assert_eq!(brute, 3);
    }

    #[test]
    fn enumeration_order_is_sorted() {
        let all = enumerate_basis(3, 3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for m in 0..=6 {
            for n in 0..=6 {
                assert_eq!(enumerate_basis(m, n).len() as u64, binomial(m + n, n));
            }
        }
    }

    #[test]
    fn compose_examples() {
        let c = d(1, 1, &[], &[]);
        let r = c.compose(&c).unwrap();
        assert_eq!(r.diagram, c);
        assert_eq!(r.floating, 1);

        let x = d(2, 1, &[2], &[1]);
        let y = d(1, 2, &[1], &[2]);
        let r = x.compose(&y).unwrap();
        assert_eq!(r.diagram, d(2, 2, &[2], &[2]));
        assert_eq!(r.floating, 0);

        for dd in enumerate_basis(2, 3) {
            let r = Diagram::identity(2).compose(&dd).unwrap();
            assert_eq!(r.diagram, dd);
            assert_eq!(r.floating, 0);
        }
        assert!(matches!(
            x.compose(&x),
            Err(DiagramError::InnerMismatch { .. })
        ));
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(Diagram::elementary(1, 1, Side::Left).unwrap(), d(1, 0, &[], &[]));
        let b = Diagram::elementary(3, 2, Side::Right).unwrap();
        assert_eq!(b, d(2, 3, &[1, 2], &[1, 3]));
        let lb = Diagram::elementary(3, 2, Side::Left).unwrap();
        assert_eq!(lb, d(3, 2, &[1, 3], &[1, 2]));
        assert_eq!(lb.reflect(), b);
        assert!(Diagram::elementary(3, 4, Side::Left).is_err());
        assert!(Diagram::elementary(3, 0, Side::Right).is_err());
    }

    #[test]
    fn cable_examples() {
        assert_eq!(Diagram::identity(2).cable(2).unwrap(), Diagram::identity(4));
        assert_eq!(d(1, 1, &[], &[]).cable(3).unwrap(), d(3, 3, &[], &[]));
        assert_eq!(d(2, 1, &[2], &[1]).cable(2).unwrap(), d(4, 2, &[3, 4], &[1, 2]));
        assert_eq!(Diagram::identity(1).cable(0), Err(DiagramError::ZeroCable));
    }

    #[test]
    fn stack_examples() {
        let one = Diagram::identity(1);
        assert_eq!(Diagram::stack(&one, &one).unwrap(), Diagram::identity(2));
        assert_eq!(
            Diagram::stack(&d(1, 0, &[], &[]), &one).unwrap(),
            d(2, 1, &[1], &[1])
        );
        let c = d(1, 1, &[], &[]);
        assert_eq!(Diagram::stack(&c, &c).unwrap(), d(2, 2, &[], &[]));
    }

    #[test]
    fn reflect_iota_degree() {
        let b32 = Diagram::elementary(3, 2, Side::Right).unwrap();
        assert_eq!(b32.reflect(), Diagram::elementary(3, 2, Side::Left).unwrap());
        for n in 0..5 {
            assert_eq!(Diagram::identity(n).iota(), Diagram::identity(n + 1));
            assert_eq!(Diagram::identity(n).sarc_degree(), 0);
        }
        assert_eq!(d(1, 1, &[], &[]).sarc_degree(), 2);
    }

    #[test]
    fn factorization_reproduces_diagram() {
        for m in 0..=4 {
            for n in 0..=4 {
                for dd in enumerate_basis(m, n) {
                    let factors = dd.factor();
                    assert!(factors.iter().all(Diagram::is_generator));
                    let mut acc = factors[0];
                    for f in &factors[1..] {
                        let c = acc.compose(f).unwrap();
                        assert_eq!(c.floating, 0);
                        acc = c.diagram;
                    }
                    assert_eq!(acc, dd);
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let x = d(3, 2, &[1, 3], &[1, 2]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"left":3,"right":2,"larc_left":[1,3],"larc_right":[1,2]}"#);
        let back: Diagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let bad: Result<Diagram, _> =
            serde_json::from_str(r#"{"left":2,"right":1,"larc_left":[1,2],"larc_right":[1]}"#);
        assert!(bad.is_err());
    }
}
