//! Extended-rational intervals with open/closed endpoint flags.

use crate::num::{Ext, Q};
use std::cmp::Ordering;
use std::fmt;

/// One end of an interval. Infinite endpoints are never closed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endpoint {
    pub value: Ext,
    pub closed: bool,
}

impl Endpoint {
    pub fn closed(q: Q) -> Self {
        Endpoint {
            value: Ext::Fin(q),
            closed: true,
        }
    }

    pub fn open(q: Q) -> Self {
        Endpoint {
            value: Ext::Fin(q),
            closed: false,
        }
    }

    pub fn neg_inf() -> Self {
        Endpoint {
            value: Ext::NegInf,
            closed: false,
        }
    }

    pub fn pos_inf() -> Self {
        Endpoint {
            value: Ext::PosInf,
            closed: false,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !self.value.is_finite() && self.closed {
            return Err("infinite endpoint flagged closed".into());
        }
        Ok(())
    }
}

/// A nonempty interval of the real line with rational (or infinite) ends.
///
/// Invariant: `left < right`, or `left == right` with both ends closed
/// (a singleton).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Endpoint,
    pub right: Endpoint,
}

impl Interval {
    pub fn new(left: Endpoint, right: Endpoint) -> Result<Self, String> {
        left.validate()?;
        right.validate()?;
        match left.value.cmp(&right.value) {
            Ordering::Less => Ok(Interval { left, right }),
            Ordering::Equal => {
                if left.closed && right.closed {
                    Ok(Interval { left, right })
                } else {
                    Err("degenerate interval must be closed on both sides".into())
                }
            }
            Ordering::Greater => Err("interval with left > right".into()),
        }
    }

    /// [a, b)
    pub fn half_open(a: Q, b: Q) -> Self {
        Interval::new(Endpoint::closed(a), Endpoint::open(b)).unwrap()
    }

    /// [a, b]
    pub fn closed(a: Q, b: Q) -> Self {
        Interval::new(Endpoint::closed(a), Endpoint::closed(b)).unwrap()
    }

    /// (a, b)
    pub fn open(a: Q, b: Q) -> Self {
        Interval::new(Endpoint::open(a), Endpoint::open(b)).unwrap()
    }

    /// (a, b]
    pub fn open_closed(a: Q, b: Q) -> Self {
        Interval::new(Endpoint::open(a), Endpoint::closed(b)).unwrap()
    }

    /// [a, +inf)
    pub fn closed_ray(a: Q) -> Self {
        Interval::new(Endpoint::closed(a), Endpoint::pos_inf()).unwrap()
    }

    /// (a, +inf)
    pub fn open_ray(a: Q) -> Self {
        Interval::new(Endpoint::open(a), Endpoint::pos_inf()).unwrap()
    }

    /// (-inf, b]
    pub fn ray_closed(b: Q) -> Self {
        Interval::new(Endpoint::neg_inf(), Endpoint::closed(b)).unwrap()
    }

    /// (-inf, b)
    pub fn ray_open(b: Q) -> Self {
        Interval::new(Endpoint::neg_inf(), Endpoint::open(b)).unwrap()
    }

    /// The whole line.
    pub fn full_line() -> Self {
        Interval::new(Endpoint::neg_inf(), Endpoint::pos_inf()).unwrap()
    }

    /// {a}
    pub fn singleton(a: Q) -> Self {
        Interval::closed(a.clone(), a)
    }

    pub fn is_singleton(&self) -> bool {
        self.left.value == self.right.value
    }

    pub fn is_bounded(&self) -> bool {
        self.left.value.is_finite() && self.right.value.is_finite()
    }

    pub fn bounded_below(&self) -> bool {
        self.left.value.is_finite()
    }

    /// Length as a rational; None when unbounded.
    pub fn length(&self) -> Option<Q> {
        match (&self.left.value, &self.right.value) {
            (Ext::Fin(a), Ext::Fin(b)) => Some(b - a),
            _ => None,
        }
    }

    /// Does the interval contain the point x?
    pub fn contains(&self, x: &Q) -> bool {
        let xe = Ext::Fin(x.clone());
        let left_ok = match self.left.value.cmp(&xe) {
            Ordering::Less => true,
            Ordering::Equal => self.left.closed,
            Ordering::Greater => false,
        };
        let right_ok = match xe.cmp(&self.right.value) {
            Ordering::Less => true,
            Ordering::Equal => self.right.closed,
            Ordering::Greater => false,
        };
        left_ok && right_ok
    }

    /// Intersection, None when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let left = match self.left.value.cmp(&other.left.value) {
            Ordering::Greater => self.left.clone(),
            Ordering::Less => other.left.clone(),
            Ordering::Equal => Endpoint {
                value: self.left.value.clone(),
                closed: self.left.closed && other.left.closed,
            },
        };
        let right = match self.right.value.cmp(&other.right.value) {
            Ordering::Less => self.right.clone(),
            Ordering::Greater => other.right.clone(),
            Ordering::Equal => Endpoint {
                value: self.right.value.clone(),
                closed: self.right.closed && other.right.closed,
            },
        };
        Interval::new(left, right).ok()
    }

    /// Translate by a rational.
    pub fn translate(&self, c: &Q) -> Interval {
        Interval {
            left: Endpoint {
                value: self.left.value.shift(c),
                closed: self.left.closed,
            },
            right: Endpoint {
                value: self.right.value.shift(c),
                closed: self.right.closed,
            },
        }
    }

    /// Reflect through the origin: -I.
    pub fn negate(&self) -> Interval {
        Interval {
            left: Endpoint {
                value: self.right.value.neg(),
                closed: self.right.closed,
            },
            right: Endpoint {
                value: self.left.value.neg(),
                closed: self.left.closed,
            },
        }
    }

    /// Swap the open/closed flag on each finite end (the duality rule).
    pub fn flip_flags(&self) -> Interval {
        let flip = |e: &Endpoint| Endpoint {
            value: e.value.clone(),
            closed: e.value.is_finite() && !e.closed,
        };
        Interval {
            left: flip(&self.left),
            right: flip(&self.right),
        }
    }

    /// Is `self ∩ other` (as a subspace of `self`) closed in `self`?
    /// Empty intersections count as closed.
    pub fn intersection_closed_in_self(&self, other: &Interval) -> bool {
        let Some(k) = self.intersect(other) else {
            return true;
        };
        // K fails to be closed in self iff an open finite end of K is a
        // point of self.
        let bad = |end: &Endpoint| match &end.value {
            Ext::Fin(x) => !end.closed && self.contains(x),
            _ => false,
        };
        !bad(&k.left) && !bad(&k.right)
    }

    /// Is `self ∩ other` open in `other`?
    pub fn intersection_open_in(&self, other: &Interval) -> bool {
        let Some(k) = self.intersect(other) else {
            return true;
        };
        // K fails to be open in `other` iff a closed finite end of K has
        // points of `other` strictly beyond it.
        let bad_left = match &k.left.value {
            Ext::Fin(x) => k.left.closed && other.left.value < Ext::Fin(x.clone()),
            _ => false,
        };
        let bad_right = match &k.right.value {
            Ext::Fin(x) => k.right.closed && Ext::Fin(x.clone()) < other.right.value,
            _ => false,
        };
        !bad_left && !bad_right
    }

    /// Closure in the line (flags finite ends closed).
    pub fn closure(&self) -> Interval {
        let close = |e: &Endpoint| Endpoint {
            value: e.value.clone(),
            closed: e.value.is_finite(),
        };
        Interval {
            left: close(&self.left),
            right: close(&self.right),
        }
    }

    /// The finite endpoint values, for stratification building.
    pub fn finite_ends(&self) -> Vec<Q> {
        let mut v = Vec::new();
        if let Ext::Fin(a) = &self.left.value {
            v.push(a.clone());
        }
        if let Ext::Fin(b) = &self.right.value {
            v.push(b.clone());
        }
        v
    }

    /// Canonical total order: (left value, left closure, right value,
    /// right closure); closed-left sorts before open-left at equal value
    /// (the interval starting "earlier" first).
    fn sort_key(&self) -> (Ext, bool, Ext, bool) {
        (
            self.left.value.clone(),
            !self.left.closed,
            self.right.value.clone(),
            self.right.closed,
        )
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lb = if self.left.closed { '[' } else { '(' };
        let rb = if self.right.closed { ']' } else { ')' };
        write!(f, "{}{},{}{}", lb, self.left.value, self.right.value, rb)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
