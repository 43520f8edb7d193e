//! Convolution along the line, the half-line cut-off projector, slices of
//! the cone functor, the translation morphism tau_c, and displacement
//! energy.
//!
//! The bar-by-bar convolution table is the closed form of the germ
//! computation RGamma_c(I cap (y - K)); `convolve_germ` is the germ oracle
//! it is regression-tested against.

use crate::barcode::{interval_sections, GradedBarcode};
use crate::field::{FieldOps, Fp};
use crate::gvs::GradedVectorSpace;
use crate::interval::{Endpoint, Interval};
use crate::num::{q_str, Ext, Q};
use crate::zigzag::{
    cokernel_rep, gabriel_decompose, kernel_rep, realize_rep, RepMorphism, ZigzagRep,
};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TamarkinError {
    /// Both the barcode support and the kernel are unbounded; the proper
    /// pushforward is not defined barwise.
    Properness,
    /// An operation required a tau>=0 barcode.
    NotTauNonneg(String),
}

impl fmt::Display for TamarkinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TamarkinError::Properness => {
                write!(f, "properness error: unbounded support against an unbounded kernel")
            }
            TamarkinError::NotTauNonneg(m) => write!(f, "not a tau>=0 barcode: {m}"),
        }
    }
}

impl std::error::Error for TamarkinError {}

/// Is every ray of ss(bar) nonnegative? Equivalently: left end closed or
/// -inf, right end open or +inf.
pub fn is_tau_nonneg_interval(i: &Interval) -> bool {
    let left_ok = match &i.left.value {
        Ext::Fin(_) => i.left.closed,
        Ext::NegInf => true,
        Ext::PosInf => unreachable!(),
    };
    let right_ok = match &i.right.value {
        Ext::Fin(_) => !i.right.closed,
        Ext::PosInf => true,
        Ext::NegInf => unreachable!(),
    };
    left_ok && right_ok
}

/// A barcode all of whose bars are tau>=0 ([a,b), [a,inf), (-inf,b), R).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauNonnegBarcode(GradedBarcode);

impl TauNonnegBarcode {
    pub fn new(bc: GradedBarcode) -> Result<Self, TamarkinError> {
        for (i, _, _) in bc.iter() {
            if !is_tau_nonneg_interval(i) {
                return Err(TamarkinError::NotTauNonneg(format!("bar {i}")));
            }
        }
        Ok(TauNonnegBarcode(bc))
    }

    pub fn barcode(&self) -> &GradedBarcode {
        &self.0
    }

    pub fn into_barcode(self) -> GradedBarcode {
        self.0
    }
}

/// A nonnegative rational or +infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnergyValue {
    Finite(Q),
    Infinite,
}

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyValue::Finite(q) => write!(f, "{}", q_str(q)),
            EnergyValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Support of the convolution: the sumset I + K with the induced endpoint
/// types (an endpoint sum is attained iff both summand ends are attained).
fn sum_interval(i: &Interval, k: &Interval) -> Interval {
    let left = match (&i.left.value, &k.left.value) {
        (Ext::Fin(a), Ext::Fin(c)) => Endpoint {
            value: Ext::Fin(a + c),
            closed: i.left.closed && k.left.closed,
        },
        _ => Endpoint::neg_inf(),
    };
    let right = match (&i.right.value, &k.right.value) {
        (Ext::Fin(b), Ext::Fin(d)) => Endpoint {
            value: Ext::Fin(b + d),
            closed: i.right.closed && k.right.closed,
        },
        _ => Endpoint::pos_inf(),
    };
    Interval::new(left, right).expect("sum of nonempty intervals is nonempty")
}

/// Regions of y where the fiber's left end is closed / open. The fiber at
/// y is I cap (y - K), with left end max(a, y - d).
fn left_regions(i: &Interval, k: &Interval) -> (Option<Interval>, Option<Interval>) {
    let alpha = i.left.closed;
    let delta = k.right.closed;
    match (&i.left.value, &k.right.value) {
        (Ext::NegInf, Ext::PosInf) => (None, Some(Interval::full_line())),
        (Ext::NegInf, Ext::Fin(_)) => ray_pair(delta),
        (Ext::Fin(_), Ext::PosInf) => ray_pair(alpha),
        (Ext::Fin(a), Ext::Fin(d)) => {
            let t = a + d;
            threshold_regions(alpha, delta, t)
        }
        _ => unreachable!(),
    }
}

/// Same for the right end min(b, y - c).
fn right_regions(i: &Interval, k: &Interval) -> (Option<Interval>, Option<Interval>) {
    let beta = i.right.closed;
    let gamma = k.left.closed;
    match (&i.right.value, &k.left.value) {
        (Ext::PosInf, Ext::NegInf) => (None, Some(Interval::full_line())),
        (Ext::PosInf, Ext::Fin(_)) => ray_pair(gamma),
        (Ext::Fin(_), Ext::NegInf) => ray_pair(beta),
        (Ext::Fin(b), Ext::Fin(c)) => {
            let t = b + c;
            threshold_regions(gamma, beta, t)
        }
        _ => unreachable!(),
    }
}

/// (closed-region, open-region) when the end type is constant in y.
fn ray_pair(closed: bool) -> (Option<Interval>, Option<Interval>) {
    if closed {
        (Some(Interval::full_line()), None)
    } else {
        (None, Some(Interval::full_line()))
    }
}

/// (closed-region, open-region) when the end type is `before` for y < t,
/// `after` for y > t, and closed at t iff both are closed.
fn threshold_regions(
    before: bool,
    after: bool,
    t: Q,
) -> (Option<Interval>, Option<Interval>) {
    match (before, after) {
        (true, true) => (Some(Interval::full_line()), None),
        (false, false) => (None, Some(Interval::full_line())),
        (true, false) => (
            Some(Interval::ray_open(t.clone())),
            Some(Interval::closed_ray(t)),
        ),
        (false, true) => (
            Some(Interval::open_ray(t.clone())),
            Some(Interval::ray_closed(t)),
        ),
    }
}

/// Closed-form convolution of one bar with an interval kernel: the
/// degree-0 part (fiber a compact interval) and the degree-1 part (fiber
/// an open interval). Half-open fibers contribute nothing.
pub fn convolve_bar(i: &Interval, k: &Interval) -> (Option<Interval>, Option<Interval>) {
    let s = sum_interval(i, k);
    let (lc, lo) = left_regions(i, k);
    let (rc, ro) = right_regions(i, k);
    let isect3 = |a: &Option<Interval>, b: &Option<Interval>| -> Option<Interval> {
        let a = a.as_ref()?;
        let b = b.as_ref()?;
        s.intersect(a)?.intersect(b)
    };
    (isect3(&lc, &rc), isect3(&lo, &ro))
}

/// Germ oracle: dimensions of (k_I * k_K)_y = RGamma_c(I cap (y - K)).
pub fn convolve_germ(i: &Interval, k: &Interval, y: &Q) -> GradedVectorSpace {
    let reflected = k.negate().translate(y);
    match i.intersect(&reflected) {
        None => GradedVectorSpace::zero(),
        Some(fiber) => interval_sections(&fiber, true),
    }
}

/// Convolution of a barcode with an interval kernel, bar by bar.
pub fn convolve(f: &GradedBarcode, k: &Interval) -> Result<GradedBarcode, TamarkinError> {
    let unbounded_f = f.iter().any(|(i, _, _)| !i.bounded_below());
    if unbounded_f && !k.is_bounded() {
        return Err(TamarkinError::Properness);
    }
    let mut out = GradedBarcode::empty(f.field.clone());
    for (i, d, m) in f.iter() {
        let (deg0, deg1) = convolve_bar(i, k);
        if let Some(c) = deg0 {
            out.add(c, d, m);
        }
        if let Some(o) = deg1 {
            out.add(o, d + 1, m);
        }
    }
    Ok(out)
}

/// Slice of the cone functor at height u > 0: convolution with k_[0,u).
pub fn psi_slice(f: &TauNonnegBarcode, u: &Q) -> Result<GradedBarcode, TamarkinError> {
    assert!(u > &Q::zero(), "slice height must be positive");
    if f.barcode().iter().any(|(i, _, _)| !i.bounded_below()) {
        return Err(TamarkinError::Properness);
    }
    convolve(
        f.barcode(),
        &Interval::half_open(Q::zero(), u.clone()),
    )
}

/// Is the canonical morphism k_bar -> k_{bar + c} nonzero? For [a,b) this
/// holds iff c < b - a; unbounded tau>=0 bars always translate nontrivially.
pub fn tau_component_nonzero(bar: &Interval, c: &Q) -> Result<bool, TamarkinError> {
    if !is_tau_nonneg_interval(bar) {
        return Err(TamarkinError::NotTauNonneg(format!("bar {bar}")));
    }
    assert!(c >= &Q::zero(), "tau_c needs c >= 0");
    Ok(match bar.length() {
        Some(len) => *c < len,
        None => true,
    })
}

/// Report of the displacement energy computation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnergyReport {
    pub value: EnergyValue,
    /// Whether tau_{e(F)}(F) itself vanishes (None when e = inf, where the
    /// question does not arise). For barcodes of finite bars the sup is
    /// not attained: closed-vs-open boundary.
    pub tau_at_value_vanishes: Option<bool>,
}

/// Displacement energy e(F) = sup{ c >= 0 : tau_c(F) != 0 }, computed as
/// the sup of per-bar thresholds; tau_c acts diagonally on any direct-sum
/// decomposition, so the sup over summands is exact.
pub fn displacement_energy(f: &TauNonnegBarcode) -> EnergyReport {
    let mut best: Option<Q> = Some(Q::zero());
    for (i, _, _) in f.barcode().iter() {
        match i.length() {
            None => {
                best = None;
                break;
            }
            Some(len) => {
                if best.as_ref().map_or(false, |b| len > *b) {
                    best = Some(len);
                }
            }
        }
    }
    match best {
        None => EnergyReport {
            value: EnergyValue::Infinite,
            tau_at_value_vanishes: None,
        },
        Some(e) => EnergyReport {
            // tau_{e} kills every bar of length <= e, and e is the max.
            value: EnergyValue::Finite(e),
            tau_at_value_vanishes: Some(true),
        },
    }
}

/// The canonical morphism tau_c: F -> T_c F realized on zigzag reps (for a
/// degree-0 tau>=0 barcode): identity on the overlap window of each bar.
pub fn tau_morphism<F: FieldOps>(
    fld: &F,
    bc: &GradedBarcode,
    c: &Q,
) -> Result<(ZigzagRep<F>, ZigzagRep<F>, RepMorphism<F::Elem>), TamarkinError> {
    use crate::matrix::{block_diag, zeros, Matrix};
    let translated = bc.translated(c);
    let mut points: Vec<Q> = bc.finite_endpoints();
    points.extend(translated.finite_endpoints());
    points.sort();
    points.dedup();
    let src = realize_rep(fld, bc, &points).map_err(|_| TamarkinError::Properness)?;
    let tgt = realize_rep(fld, &translated, &points).map_err(|_| TamarkinError::Properness)?;
    let nv = src.n_vertices();
    // Per-vertex block matrices: bars iterate in canonical order on both
    // sides (translation preserves the order), each with its multiplicity.
    let mut blocks_per_vertex: Vec<Vec<Matrix<F::Elem>>> = vec![Vec::new(); nv];
    for (i, _d, m) in bc.iter() {
        let j = i.translate(c);
        let (ilo, ihi) = crate::zigzag::interval_window(i, &points).unwrap();
        let (jlo, jhi) = crate::zigzag::interval_window(&j, &points).unwrap();
        let nonzero = tau_component_nonzero(i, c)?;
        for v in 0..nv {
            let sdim = usize::from(v >= ilo && v <= ihi);
            let tdim = usize::from(v >= jlo && v <= jhi);
            let mut cell = zeros(fld, tdim, sdim);
            if nonzero && sdim == 1 && tdim == 1 {
                cell.set(0, 0, fld.one());
            }
            for _ in 0..m {
                blocks_per_vertex[v].push(cell.clone());
            }
        }
    }
    let phi: RepMorphism<F::Elem> = (0..nv)
        .map(|v| {
            let refs: Vec<&Matrix<F::Elem>> = blocks_per_vertex[v].iter().collect();
            block_diag(fld, &refs)
        })
        .collect();
    Ok((src, tgt, phi))
}

/// Check the slice triangle: for each degree d, the sequence
/// 0 -> X^0 -> F_d -> T_u F_d -> X^1 -> 0 is exact as zigzag reps, where
/// X = F_d * k_[0,u) has degree-0 part X^0 and degree-1 part X^1, and the
/// middle map is tau_u. The rep computation runs over F_2; the dimensions
/// are field-independent.
pub fn slice_triangle_check(f: &TauNonnegBarcode, u: &Q) -> Result<bool, TamarkinError> {
    let fld = Fp::new(2);
    for d in f.barcode().degrees() {
        let fd = f.barcode().in_degree(d).shifted(-d);
        let x = convolve(&fd, &Interval::half_open(Q::zero(), u.clone()))?;
        let (src, tgt, phi) = tau_morphism(&fld, &fd, u)?;
        let ker = kernel_rep(&fld, &src, &phi);
        let coker = cokernel_rep(&fld, &tgt, &phi);
        let ker_bc = gabriel_decompose(&fld, &ker).map_err(|_| TamarkinError::Properness)?;
        let coker_bc = gabriel_decompose(&fld, &coker).map_err(|_| TamarkinError::Properness)?;
        if !same_bars(&ker_bc, &x.in_degree(0))
            || !same_bars(&coker_bc, &x.in_degree(1).shifted(-1))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiset equality of bars, ignoring the field tag.
fn same_bars(a: &GradedBarcode, b: &GradedBarcode) -> bool {
    let to_vec = |bc: &GradedBarcode| -> Vec<(Interval, i64, usize)> {
        bc.iter().map(|(i, d, m)| (i.clone(), d, m)).collect()
    };
    to_vec(a) == to_vec(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::num::qi;

    fn spec() -> FieldSpec {
        FieldSpec::prime(2)
    }

    fn bc1(i: Interval) -> GradedBarcode {
        GradedBarcode::single(spec(), i, 0, 1)
    }

    #[test]
    fn convolve_half_open_kernel() {
        // [a,b) * [0,u): degree-0 part [a, min(b, a+u)), degree-1 part
        // [max(b, a+u), b+u).
        let i = Interval::half_open(qi(0), qi(10));
        let k = Interval::half_open(qi(0), qi(1));
        let (c, o) = convolve_bar(&i, &k);
        assert_eq!(c.unwrap(), Interval::half_open(qi(0), qi(1)));
        assert_eq!(o.unwrap(), Interval::half_open(qi(10), qi(11)));
        // u beyond the bar length: fixed bar plus translated degree-1 bar.
        let k = Interval::half_open(qi(0), qi(20));
        let (c, o) = convolve_bar(&i, &k);
        assert_eq!(c.unwrap(), i);
        assert_eq!(o.unwrap(), Interval::half_open(qi(20), qi(30)));
    }

    #[test]
    fn projector_fixes_tau_bars() {
        let ray = Interval::closed_ray(qi(0));
        for i in [
            Interval::half_open(qi(-3), qi(5)),
            Interval::closed_ray(qi(2)),
        ] {
            let out = convolve(&bc1(i.clone()), &ray).unwrap();
            assert_eq!(out, bc1(i));
        }
        // Non tau>=0 bars move.
        let closed = Interval::closed(qi(0), qi(1));
        assert_eq!(
            convolve(&bc1(closed), &ray).unwrap(),
            bc1(Interval::closed_ray(qi(0)))
        );
        let open = Interval::open(qi(0), qi(1));
        let out = convolve(&bc1(open), &ray).unwrap();
        assert_eq!(
            out,
            GradedBarcode::single(spec(), Interval::closed_ray(qi(1)), 1, 1)
        );
        let oc = Interval::open_closed(qi(0), qi(1));
        assert!(convolve(&bc1(oc), &ray).unwrap().is_empty());
    }

    #[test]
    fn projector_idempotent() {
        let ray = Interval::closed_ray(qi(0));
        for i in [
            Interval::closed(qi(0), qi(2)),
            Interval::open(qi(0), qi(2)),
            Interval::half_open(qi(0), qi(2)),
            Interval::singleton(qi(1)),
        ] {
            let once = convolve(&bc1(i), &ray).unwrap();
            let twice = convolve(&once, &ray).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn open_closed_kernel_annihilates() {
        let k = Interval::open_closed(qi(0), qi(2));
        for i in [
            Interval::half_open(qi(0), qi(5)),
            Interval::closed_ray(qi(1)),
        ] {
            assert!(convolve(&bc1(i), &k).unwrap().is_empty());
        }
    }

    #[test]
    fn properness_guard() {
        let f = bc1(Interval::full_line());
        assert_eq!(
            convolve(&f, &Interval::closed_ray(qi(0))),
            Err(TamarkinError::Properness)
        );
        // bounded kernel is fine
        assert!(convolve(&f, &Interval::half_open(qi(0), qi(1))).is_ok());
    }

    #[test]
    fn germ_oracle_agrees_on_grid() {
        use crate::num::q;
        let kernel_shapes = [
            Interval::half_open(qi(0), qi(2)),
            Interval::open_closed(qi(0), qi(2)),
            Interval::closed(qi(0), qi(2)),
            Interval::open(qi(0), qi(2)),
            Interval::closed_ray(qi(0)),
            Interval::open_ray(qi(0)),
            Interval::singleton(qi(1)),
        ];
        let bar_shapes = [
            Interval::half_open(qi(0), qi(3)),
            Interval::closed(qi(0), qi(3)),
            Interval::open(qi(0), qi(3)),
            Interval::open_closed(qi(0), qi(3)),
            Interval::singleton(qi(2)),
            Interval::closed_ray(qi(0)),
        ];
        for i in &bar_shapes {
            for k in &kernel_shapes {
                let (c, o) = convolve_bar(i, k);
                // sample germ at quarter-integer grid points
                for t in -8..40 {
                    let y = q(t, 4);
                    let mut expect = GradedVectorSpace::zero();
                    if c.as_ref().map_or(false, |c| c.contains(&y)) {
                        expect.add_dim(0, 1);
                    }
                    if o.as_ref().map_or(false, |o| o.contains(&y)) {
                        expect.add_dim(1, 1);
                    }
                    assert_eq!(
                        convolve_germ(i, k, &y),
                        expect,
                        "germ of {i} * {k} at {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn psi_slice_examples() {
        let f = TauNonnegBarcode::new(bc1(Interval::closed_ray(qi(0)))).unwrap();
        let out = psi_slice(&f, &qi(1)).unwrap();
        assert_eq!(out, bc1(Interval::half_open(qi(0), qi(1))));
        // [0,b) with u >= b keeps the bar and adds the translated part in
        // degree 1 (the triangle's cone).
        let f = TauNonnegBarcode::new(bc1(Interval::half_open(qi(0), qi(2)))).unwrap();
        let out = psi_slice(&f, &qi(5)).unwrap();
        let mut expect = bc1(Interval::half_open(qi(0), qi(2)));
        expect.add(Interval::half_open(qi(5), qi(7)), 1, 1);
        assert_eq!(out, expect);
        let empty = TauNonnegBarcode::new(GradedBarcode::empty(spec())).unwrap();
        assert!(psi_slice(&empty, &qi(1)).unwrap().is_empty());
    }

    #[test]
    fn tau_thresholds() {
        let bar = Interval::half_open(qi(0), qi(3));
        assert!(tau_component_nonzero(&bar, &qi(2)).unwrap());
        assert!(!tau_component_nonzero(&bar, &qi(3)).unwrap());
        assert!(tau_component_nonzero(&Interval::closed_ray(qi(0)), &qi(100)).unwrap());
        assert!(tau_component_nonzero(&Interval::full_line(), &qi(7)).unwrap());
        assert!(tau_component_nonzero(&Interval::ray_open(qi(0)), &qi(7)).unwrap());
        assert!(tau_component_nonzero(&Interval::closed(qi(0), qi(1)), &qi(0)).is_err());
    }

    #[test]
    fn energy_examples() {
        let f = TauNonnegBarcode::new(GradedBarcode::single(
            spec(),
            Interval::half_open(qi(1), qi(4)),
            -2,
            3,
        ))
        .unwrap();
        let rep = displacement_energy(&f);
        assert_eq!(rep.value, EnergyValue::Finite(qi(3)));
        assert_eq!(rep.tau_at_value_vanishes, Some(true));
        let empty = TauNonnegBarcode::new(GradedBarcode::empty(spec())).unwrap();
        assert_eq!(displacement_energy(&empty).value, EnergyValue::Finite(qi(0)));
        let ray = TauNonnegBarcode::new(bc1(Interval::closed_ray(qi(0)))).unwrap();
        assert_eq!(displacement_energy(&ray).value, EnergyValue::Infinite);
    }

    #[test]
    fn flying_saucer_energy() {
        // sum over k of [kQ, (k+1)Q) in degree -2k, Q = 7/5 standing in
        // for pi/2: the energy is Q.
        use crate::num::q;
        let qq = q(7, 5);
        let mut bc = GradedBarcode::empty(spec());
        for k in 0..6i64 {
            let a = &qq * qi(k);
            let b = &qq * qi(k + 1);
            bc.add(Interval::half_open(a, b), -2 * k, 1);
        }
        let f = TauNonnegBarcode::new(bc).unwrap();
        assert_eq!(displacement_energy(&f).value, EnergyValue::Finite(qq));
    }

    #[test]
    fn slice_triangle_on_examples() {
        for (i, u) in [
            (Interval::half_open(qi(0), qi(10)), qi(3)),
            (Interval::half_open(qi(0), qi(2)), qi(5)),
            (Interval::closed_ray(qi(1)), qi(2)),
        ] {
            let f = TauNonnegBarcode::new(bc1(i.clone())).unwrap();
            assert!(
                slice_triangle_check(&f, &u).unwrap(),
                "slice triangle for {i} at u={u}"
            );
        }
    }
}
