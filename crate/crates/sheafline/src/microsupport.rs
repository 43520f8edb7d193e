//! Exact microsupport of barcodes on the line, microlocal germs, and
//! simplicity/purity tests.
//!
//! In dimension one a conic subset of the punctured cotangent bundle is a
//! set of signed rays (base point, sign of the covector). The microsupport
//! of a bar is read off its endpoint types; the microlocal germ is the
//! vanishing-cycle space computed by the zigzag oracle, so the two routes
//! validate each other.

use crate::barcode::GradedBarcode;
use crate::field::{FieldOps, Fp};
use crate::gvs::GradedVectorSpace;
use crate::interval::Interval;
use crate::num::{Ext, Q};
use crate::zigzag::{microgerm_at_vertex, realize_rep};
use std::collections::BTreeSet;
use std::fmt;

/// Sign of a covector ray over a base point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// A ray {(x; xi) : sign(xi) fixed} in the punctured cotangent bundle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CovectorPoint {
    pub base: Q,
    pub sign: Sign,
}

impl fmt::Display for CovectorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        write!(f, "({}; {})", crate::num::q_str(&self.base), s)
    }
}

/// Microsupport of a constructible complex on the line: the zero-section
/// part (union of bar closures) and the rays.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MicroSupport1D {
    pub zero_section_support: Vec<Interval>,
    pub rays: BTreeSet<CovectorPoint>,
}

impl MicroSupport1D {
    /// Flip the sign of every ray (the antipodal map).
    pub fn antipode(&self) -> MicroSupport1D {
        MicroSupport1D {
            zero_section_support: self.zero_section_support.clone(),
            rays: self
                .rays
                .iter()
                .map(|r| CovectorPoint {
                    base: r.base.clone(),
                    sign: r.sign.flip(),
                })
                .collect(),
        }
    }

    pub fn has_ray(&self, p: &CovectorPoint) -> bool {
        self.rays.contains(p)
    }
}

/// Union of closed intervals, merged into disjoint canonical form.
fn merge_closures(mut parts: Vec<Interval>) -> Vec<Interval> {
    parts.sort();
    let mut out: Vec<Interval> = Vec::new();
    for p in parts {
        if let Some(last) = out.last_mut() {
            // Overlapping or touching closed intervals merge.
            let overlap = last.intersect(&p).is_some()
                || (last.right.value == p.left.value);
            if overlap {
                if p.right.value > last.right.value {
                    last.right = p.right.clone();
                }
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// The microsupport of a barcode. Degrees and multiplicities do not
/// affect the answer.
pub fn ss(f: &GradedBarcode) -> MicroSupport1D {
    let mut rays = BTreeSet::new();
    let mut support = Vec::new();
    for (i, _d, _m) in f.iter() {
        support.push(i.closure());
        if let Ext::Fin(a) = &i.left.value {
            rays.insert(CovectorPoint {
                base: a.clone(),
                sign: if i.left.closed { Sign::Pos } else { Sign::Neg },
            });
        }
        if let Ext::Fin(b) = &i.right.value {
            rays.insert(CovectorPoint {
                base: b.clone(),
                sign: if i.right.closed { Sign::Neg } else { Sign::Pos },
            });
        }
    }
    MicroSupport1D {
        zero_section_support: merge_closures(support),
        rays,
    }
}

/// Microlocal germ of the barcode at a covector ray: the stalk of the
/// half-support sections, (RGamma_{+/-(t - x) >= 0} F)_x, computed by the
/// zigzag oracle bar by bar.
pub fn microgerm(f: &GradedBarcode, p: &CovectorPoint) -> GradedVectorSpace {
    let fld = Fp::new(2);
    let mut out = GradedVectorSpace::zero();
    for (i, d, m) in f.iter() {
        // Refine the stratification by the query point.
        let mut pts = i.finite_ends();
        pts.push(p.base.clone());
        pts.sort();
        pts.dedup();
        let single =
            GradedBarcode::single(fld.spec(), i.clone(), 0, 1);
        let rep = realize_rep(&fld, &single, &pts).expect("refined points contain endpoints");
        let j = pts.iter().position(|x| *x == p.base).unwrap() + 1;
        let (h0, h1) = microgerm_at_vertex(&fld, &rep, j, p.sign == Sign::Pos);
        out.add_dim(d, h0 * m);
        out.add_dim(d + 1, h1 * m);
    }
    out
}

/// Classification of a barcode at a covector ray.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GermClass {
    /// The ray is not in the microsupport (zero germ).
    NotInSS,
    /// Germ of total dimension one (hence also pure).
    Simple,
    /// Germ concentrated in a single degree, dimension > 1.
    Pure,
    /// Germ spread over several degrees.
    Mixed,
}

pub fn classify_at(f: &GradedBarcode, p: &CovectorPoint) -> GermClass {
    let g = microgerm(f, p);
    if g.is_zero() {
        GermClass::NotInSS
    } else if g.total_dim() == 1 {
        GermClass::Simple
    } else if g.concentrated_degree().is_some() {
        GermClass::Pure
    } else {
        GermClass::Mixed
    }
}

/// Is the germ at p one-dimensional (in one degree)?
pub fn is_simple_at(f: &GradedBarcode, p: &CovectorPoint) -> bool {
    classify_at(f, p) == GermClass::Simple
}

/// Is the germ at p concentrated in a single degree (and nonzero)?
pub fn is_pure_at(f: &GradedBarcode, p: &CovectorPoint) -> bool {
    matches!(classify_at(f, p), GermClass::Simple | GermClass::Pure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::num::qi;

    fn spec() -> FieldSpec {
        FieldSpec::prime(2)
    }

    fn ray(x: i64, sign: Sign) -> CovectorPoint {
        CovectorPoint { base: qi(x), sign }
    }

    #[test]
    fn ss_examples() {
        // Constant sheaf: no rays.
        let line = GradedBarcode::single(spec(), Interval::full_line(), -3, 2);
        assert!(ss(&line).rays.is_empty());
        // k_[0,inf): one positive ray at 0.
        let half = GradedBarcode::single(spec(), Interval::closed_ray(qi(0)), 0, 1);
        let s = ss(&half);
        assert_eq!(s.rays.len(), 1);
        assert!(s.has_ray(&ray(0, Sign::Pos)));
        // open (0,1): rays (0,-) and (1,+).
        let open = GradedBarcode::single(spec(), Interval::open(qi(0), qi(1)), 0, 1);
        let s = ss(&open);
        assert!(s.has_ray(&ray(0, Sign::Neg)) && s.has_ray(&ray(1, Sign::Pos)));
        assert_eq!(s.rays.len(), 2);
    }

    #[test]
    fn microgerm_examples() {
        let line = GradedBarcode::single(spec(), Interval::full_line(), 0, 1);
        assert!(microgerm(&line, &ray(0, Sign::Pos)).is_zero());
        let bar = GradedBarcode::single(spec(), Interval::half_open(qi(0), qi(1)), 0, 1);
        assert_eq!(
            microgerm(&bar, &ray(0, Sign::Pos)),
            GradedVectorSpace::single(0, 1)
        );
        assert_eq!(
            microgerm(&bar, &ray(1, Sign::Pos)),
            GradedVectorSpace::single(1, 1)
        );
        assert!(microgerm(&bar, &ray(0, Sign::Neg)).is_zero());
    }

    #[test]
    fn germ_vanishes_iff_ray_absent() {
        let mut bc = GradedBarcode::empty(spec());
        bc.add(Interval::half_open(qi(0), qi(1)), 0, 1);
        bc.add(Interval::open(qi(0), qi(2)), 1, 1);
        let s = ss(&bc);
        for x in 0..=2 {
            for sign in [Sign::Pos, Sign::Neg] {
                let p = ray(x, sign);
                assert_eq!(
                    !microgerm(&bc, &p).is_zero(),
                    s.has_ray(&p),
                    "at {p}"
                );
            }
        }
    }

    #[test]
    fn simple_and_pure() {
        let bar = GradedBarcode::single(spec(), Interval::half_open(qi(0), qi(1)), 0, 1);
        assert!(is_simple_at(&bar, &ray(0, Sign::Pos)));
        let mut two = GradedBarcode::empty(spec());
        two.add(Interval::half_open(qi(0), qi(1)), 0, 1);
        two.add(Interval::half_open(qi(0), qi(2)), 0, 1);
        let p = ray(0, Sign::Pos);
        assert!(is_pure_at(&two, &p) && !is_simple_at(&two, &p));
        let line = GradedBarcode::single(spec(), Interval::full_line(), 0, 1);
        assert_eq!(classify_at(&line, &p), GermClass::NotInSS);
    }

    #[test]
    fn dual_antipode() {
        let mut bc = GradedBarcode::empty(spec());
        bc.add(Interval::half_open(qi(0), qi(1)), 0, 1);
        bc.add(Interval::open(qi(-1), qi(3)), 2, 1);
        bc.add(Interval::closed_ray(qi(5)), -1, 2);
        assert_eq!(ss(&bc.dual_prime()), ss(&bc).antipode());
    }
}
