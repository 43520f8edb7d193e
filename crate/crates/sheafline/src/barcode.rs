//! Graded barcodes: the normal form of a constructible complex on the line.
//!
//! A barcode is a finite multiset of (interval, degree, multiplicity)
//! entries over a fixed coefficient field. Complexes are always stored
//! split, so this is a complete invariant.

use crate::field::FieldSpec;
use crate::gvs::GradedVectorSpace;
use crate::interval::Interval;
use crate::num::Q;
use std::collections::BTreeMap;
use std::fmt;

/// One bar: an interval placed in a cohomological degree.
pub type Bar = (Interval, i64);

#[derive(Clone, PartialEq, Eq)]
pub struct GradedBarcode {
    pub field: FieldSpec,
    bars: BTreeMap<Bar, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BarcodeError {
    FieldMismatch,
    ZeroMultiplicity,
}

impl fmt::Display for BarcodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarcodeError::FieldMismatch => write!(f, "coefficient fields differ"),
            BarcodeError::ZeroMultiplicity => write!(f, "zero multiplicity entry"),
        }
    }
}

impl std::error::Error for BarcodeError {}

impl GradedBarcode {
    pub fn empty(field: FieldSpec) -> Self {
        GradedBarcode {
            field,
            bars: BTreeMap::new(),
        }
    }

    pub fn single(field: FieldSpec, interval: Interval, degree: i64, mult: usize) -> Self {
        let mut b = GradedBarcode::empty(field);
        b.add(interval, degree, mult);
        b
    }

    pub fn add(&mut self, interval: Interval, degree: i64, mult: usize) {
        if mult == 0 {
            return;
        }
        *self.bars.entry((interval, degree)).or_insert(0) += mult;
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Interval, i64, usize)> + '_ {
        self.bars.iter().map(|((i, d), &m)| (i, *d, m))
    }

    pub fn multiplicity(&self, interval: &Interval, degree: i64) -> usize {
        self.bars
            .get(&(interval.clone(), degree))
            .copied()
            .unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.bars.values().sum()
    }

    /// Degrees present.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.bars.keys().map(|(_, d)| *d).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    /// The sub-barcode in one degree.
    pub fn in_degree(&self, degree: i64) -> GradedBarcode {
        let mut out = GradedBarcode::empty(self.field.clone());
        for (i, d, m) in self.iter() {
            if d == degree {
                out.add(i.clone(), d, m);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &GradedBarcode) -> Result<GradedBarcode, BarcodeError> {
        if self.field != other.field {
            return Err(BarcodeError::FieldMismatch);
        }
        let mut out = self.clone();
        for (i, d, m) in other.iter() {
            out.add(i.clone(), d, m);
        }
        Ok(out)
    }

    /// Shift all degrees by s (placing degree d at d + s).
    pub fn shifted(&self, s: i64) -> GradedBarcode {
        let mut out = GradedBarcode::empty(self.field.clone());
        for (i, d, m) in self.iter() {
            out.add(i.clone(), d + s, m);
        }
        out
    }

    /// Translate all intervals by c.
    pub fn translated(&self, c: &Q) -> GradedBarcode {
        let mut out = GradedBarcode::empty(self.field.clone());
        for (i, d, m) in self.iter() {
            out.add(i.translate(c), d, m);
        }
        out
    }

    /// Bar-level tensor product: pairwise intersections, degrees added,
    /// multiplicities multiplied, empty intersections dropped.
    pub fn tensor(&self, other: &GradedBarcode) -> Result<GradedBarcode, BarcodeError> {
        if self.field != other.field {
            return Err(BarcodeError::FieldMismatch);
        }
        let mut out = GradedBarcode::empty(self.field.clone());
        for (i, di, mi) in self.iter() {
            for (j, dj, mj) in other.iter() {
                if let Some(k) = i.intersect(j) {
                    out.add(k, di + dj, mi * mj);
                }
            }
        }
        Ok(out)
    }

    /// The duality D' at barcode level: swap open/closed on each finite
    /// end and negate degrees. An involution.
    pub fn dual_prime(&self) -> GradedBarcode {
        let mut out = GradedBarcode::empty(self.field.clone());
        for (i, d, m) in self.iter() {
            out.add(i.flip_flags(), -d, m);
        }
        out
    }

    /// Global sections (ordinary or compactly supported), additive over
    /// bars; each bar contributes the table value shifted by its degree.
    pub fn sections(&self, compact_support: bool) -> GradedVectorSpace {
        let mut out = GradedVectorSpace::zero();
        for (i, d, m) in self.iter() {
            let per_bar = interval_sections(i, compact_support);
            out = out + per_bar.shifted(d).scaled(m);
        }
        out
    }

    /// All finite endpoints appearing, sorted and deduplicated.
    pub fn finite_endpoints(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self
            .iter()
            .flat_map(|(i, _, _)| i.finite_ends())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Stalk dimensions at a rational point, as a graded vector space.
    pub fn stalk(&self, x: &Q) -> GradedVectorSpace {
        let mut out = GradedVectorSpace::zero();
        for (i, d, m) in self.iter() {
            if i.contains(x) {
                out.add_dim(d, m);
            }
        }
        out
    }
}

/// RGamma or RGamma_c of the line with coefficients in a single interval
/// sheaf, in degree 0 terms (the caller shifts by the bar's own degree).
///
/// For ordinary sections an infinite end behaves like a closed one; for
/// compact supports it behaves like an open one. Both ends closed-like
/// gives k in degree 0, both open-like k in degree 1, mixed gives 0.
pub fn interval_sections(i: &Interval, compact_support: bool) -> GradedVectorSpace {
    let closed_like = |closed: bool, finite: bool| {
        if finite {
            closed
        } else {
            !compact_support
        }
    };
    let l = closed_like(i.left.closed, i.left.value.is_finite());
    let r = closed_like(i.right.closed, i.right.value.is_finite());
    match (l, r) {
        (true, true) => GradedVectorSpace::single(0, 1),
        (false, false) => GradedVectorSpace::single(1, 1),
        _ => GradedVectorSpace::zero(),
    }
}

impl fmt::Debug for GradedBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bars.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, d, m)| {
                if m == 1 {
                    format!("{i}[{d}]")
                } else {
                    format!("{i}[{d}]^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
