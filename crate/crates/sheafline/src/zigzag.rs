//! Zigzag quiver representations: the oracle category for constructible
//! sheaves on the stratified line.
//!
//! A stratification x_1 < ... < x_n cuts the line into 2n+1 cells. Vertex
//! 2i is the open stratum (x_i, x_{i+1}) (with x_0 = -inf, x_{n+1} = +inf)
//! and vertex 2i+1 is the point x_{i+1}. The two structure maps out of an
//! odd vertex are the restriction maps from sections near the point to
//! sections on the neighbouring strata. All arrows run odd -> even, so the
//! path algebra is hereditary with radical square zero.

use crate::barcode::GradedBarcode;
use crate::field::FieldOps;
use crate::gvs::GradedVectorSpace;
use crate::interval::{Endpoint, Interval};
use crate::matrix::{
    self, block_diag, identity, kernel_basis, mat_mul, mat_scale, rank, solve, zeros,
    Matrix,
};
use crate::num::Q;
use std::fmt;

#[derive(Clone)]
pub struct ZigzagRep<F: FieldOps> {
    pub field: F,
    /// Strictly increasing stratification points; may be empty.
    pub points: Vec<Q>,
    /// 2n+1 dimensions, indexed by vertex.
    pub dims: Vec<usize>,
    /// maps_left[i]: V_{2i+1} -> V_{2i}, for i = 0..n-1.
    pub maps_left: Vec<Matrix<F::Elem>>,
    /// maps_right[i]: V_{2i+1} -> V_{2i+2}, for i = 0..n-1.
    pub maps_right: Vec<Matrix<F::Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    Malformed(String),
    Refinement(String),
    Field(String),
}

impl fmt::Display for ZigzagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagError::Malformed(m) => write!(f, "malformed representation: {m}"),
            ZigzagError::Refinement(m) => write!(f, "refinement error: {m}"),
            ZigzagError::Field(m) => write!(f, "field error: {m}"),
        }
    }
}

impl std::error::Error for ZigzagError {}

/// A morphism of zigzag representations: one matrix per vertex.
pub type RepMorphism<E> = Vec<Matrix<E>>;

impl<F: FieldOps> ZigzagRep<F> {
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_vertices(&self) -> usize {
        2 * self.points.len() + 1
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Zero representation on the given stratification.
    pub fn zero(field: F, points: Vec<Q>) -> Self {
        let n = points.len();
        ZigzagRep {
            field: field.clone(),
            dims: vec![0; 2 * n + 1],
            maps_left: (0..n).map(|_| zeros(&field, 0, 0)).collect(),
            maps_right: (0..n).map(|_| zeros(&field, 0, 0)).collect(),
            points,
        }
    }

    pub fn validate(&self) -> Result<(), ZigzagError> {
        let n = self.points.len();
        if self.dims.len() != 2 * n + 1 {
            return Err(ZigzagError::Malformed(format!(
                "expected {} dims, got {}",
                2 * n + 1,
                self.dims.len()
            )));
        }
        if self.maps_left.len() != n || self.maps_right.len() != n {
            return Err(ZigzagError::Malformed("wrong number of maps".into()));
        }
        for w in self.points.windows(2) {
            if w[0] >= w[1] {
                return Err(ZigzagError::Malformed(
                    "stratification points not strictly increasing".into(),
                ));
            }
        }
        for i in 0..n {
            let src = self.dims[2 * i + 1];
            let (l, r) = (&self.maps_left[i], &self.maps_right[i]);
            if l.rows != self.dims[2 * i] || l.cols != src {
                return Err(ZigzagError::Malformed(format!(
                    "left map {i} has shape {}x{}, expected {}x{}",
                    l.rows,
                    l.cols,
                    self.dims[2 * i],
                    src
                )));
            }
            if r.rows != self.dims[2 * i + 2] || r.cols != src {
                return Err(ZigzagError::Malformed(format!(
                    "right map {i} has shape {}x{}, expected {}x{}",
                    r.rows,
                    r.cols,
                    self.dims[2 * i + 2],
                    src
                )));
            }
        }
        Ok(())
    }

    /// Arrows as (source vertex, target vertex, map).
    pub fn arrows(&self) -> Vec<(usize, usize, &Matrix<F::Elem>)> {
        let mut v = Vec::new();
        for i in 0..self.points.len() {
            v.push((2 * i + 1, 2 * i, &self.maps_left[i]));
            v.push((2 * i + 1, 2 * i + 2, &self.maps_right[i]));
        }
        v
    }

    /// Direct sum (same stratification).
    pub fn direct_sum(&self, other: &ZigzagRep<F>) -> ZigzagRep<F> {
        assert_eq!(self.points, other.points);
        let f = &self.field;
        let n = self.points.len();
        ZigzagRep {
            field: f.clone(),
            points: self.points.clone(),
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps_left: (0..n)
                .map(|i| block_diag(f, &[&self.maps_left[i], &other.maps_left[i]]))
                .collect(),
            maps_right: (0..n)
                .map(|i| block_diag(f, &[&self.maps_right[i], &other.maps_right[i]]))
                .collect(),
        }
    }

    /// Change of basis by invertible matrices per vertex: maps become
    /// P_t f P_s^{-1}.
    pub fn conjugate(&self, basis: &[Matrix<F::Elem>]) -> ZigzagRep<F> {
        let f = &self.field;
        assert_eq!(basis.len(), self.n_vertices());
        let inv: Vec<Matrix<F::Elem>> = basis
            .iter()
            .map(|p| matrix::inverse(f, p).expect("basis change must be invertible"))
            .collect();
        let n = self.points.len();
        ZigzagRep {
            field: f.clone(),
            points: self.points.clone(),
            dims: self.dims.clone(),
            maps_left: (0..n)
                .map(|i| {
                    let t = 2 * i;
                    let s = 2 * i + 1;
                    mat_mul(f, &basis[t], &mat_mul(f, &self.maps_left[i], &inv[s]))
                })
                .collect(),
            maps_right: (0..n)
                .map(|i| {
                    let t = 2 * i + 2;
                    let s = 2 * i + 1;
                    mat_mul(f, &basis[t], &mat_mul(f, &self.maps_right[i], &inv[s]))
                })
                .collect(),
        }
    }
}

/// Map an interval with ends on the stratification to its vertex window.
pub fn interval_window(interval: &Interval, points: &[Q]) -> Result<(usize, usize), ZigzagError> {
    let n = points.len();
    let point_index = |q: &Q| -> Result<usize, ZigzagError> {
        points
            .iter()
            .position(|p| p == q)
            .map(|j| j + 1) // 1-based like x_1..x_n
            .ok_or_else(|| {
                ZigzagError::Refinement(format!(
                    "interval endpoint {} not a stratification point",
                    crate::num::q_str(q)
                ))
            })
    };
    let lo = match &interval.left.value {
        crate::num::Ext::NegInf => 0,
        crate::num::Ext::Fin(a) => {
            let j = point_index(a)?;
            if interval.left.closed {
                2 * j - 1
            } else {
                2 * j
            }
        }
        crate::num::Ext::PosInf => unreachable!("left end +inf"),
    };
    let hi = match &interval.right.value {
        crate::num::Ext::PosInf => 2 * n,
        crate::num::Ext::Fin(b) => {
            let j = point_index(b)?;
            if interval.right.closed {
                2 * j - 1
            } else {
                2 * j - 2
            }
        }
        crate::num::Ext::NegInf => unreachable!("right end -inf"),
    };
    if lo > hi {
        return Err(ZigzagError::Malformed(format!(
            "interval {interval} produces empty window"
        )));
    }
    Ok((lo, hi))
}

/// Inverse of `interval_window`.
pub fn window_to_interval(lo: usize, hi: usize, points: &[Q]) -> Interval {
    let n = points.len();
    let left = if lo == 0 {
        Endpoint::neg_inf()
    } else if lo % 2 == 1 {
        Endpoint::closed(points[(lo - 1) / 2].clone())
    } else {
        Endpoint::open(points[lo / 2 - 1].clone())
    };
    let right = if hi == 2 * n {
        Endpoint::pos_inf()
    } else if hi % 2 == 1 {
        Endpoint::closed(points[(hi - 1) / 2].clone())
    } else {
        Endpoint::open(points[hi / 2].clone())
    };
    Interval::new(left, right).expect("window produces a valid interval")
}

/// The interval module supported on the vertex window [lo, hi].
pub fn realize_bar<F: FieldOps>(
    field: &F,
    points: &[Q],
    lo: usize,
    hi: usize,
) -> ZigzagRep<F> {
    let n = points.len();
    let dims: Vec<usize> = (0..2 * n + 1)
        .map(|v| usize::from(v >= lo && v <= hi))
        .collect();
    let mk = |s: usize, t: usize| -> Matrix<F::Elem> {
        let (ds, dt) = (dims[s], dims[t]);
        if ds == 1 && dt == 1 {
            identity(field, 1)
        } else {
            zeros(field, dt, ds)
        }
    };
    ZigzagRep {
        field: field.clone(),
        points: points.to_vec(),
        dims: dims.clone(),
        maps_left: (0..n).map(|i| mk(2 * i + 1, 2 * i)).collect(),
        maps_right: (0..n).map(|i| mk(2 * i + 1, 2 * i + 2)).collect(),
    }
}

/// Realize a degree-0 barcode as a zigzag representation on the given
/// stratification. Every finite bar endpoint must lie in `points`.
pub fn realize_rep<F: FieldOps>(
    field: &F,
    bc: &GradedBarcode,
    points: &[Q],
) -> Result<ZigzagRep<F>, ZigzagError> {
    if bc.degrees().iter().any(|&d| d != 0) {
        return Err(ZigzagError::Malformed(
            "realize_rep needs a barcode concentrated in degree 0".into(),
        ));
    }
    let mut acc = ZigzagRep::zero(field.clone(), points.to_vec());
    for (interval, _d, mult) in bc.iter() {
        let (lo, hi) = interval_window(interval, points)?;
        let bar = realize_bar(field, points, lo, hi);
        for _ in 0..mult {
            acc = acc.direct_sum(&bar);
        }
    }
    Ok(acc)
}

fn vertex_offsets(md: &[usize], nd: &[usize]) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(md.len());
    let mut acc = 0;
    for v in 0..md.len() {
        offs.push(acc);
        acc += md[v] * nd[v];
    }
    (offs, acc)
}

/// Delta matrix of the Hom complex
/// 0 -> Hom(M,N) -> prod_v Hom(M_v,N_v) -> prod_a Hom(M_{s(a)}, N_{t(a)}),
/// delta(phi)_a = phi_t f^M_a - f^N_a phi_s. Returns (delta, dom, cod);
/// Hom is its kernel and Ext^1 its cokernel (hereditary category).
fn hom_delta<F: FieldOps>(
    f: &F,
    m: &ZigzagRep<F>,
    n: &ZigzagRep<F>,
) -> (Matrix<F::Elem>, usize, usize) {
    assert_eq!(m.points, n.points);
    let (voffs, dom) = vertex_offsets(&m.dims, &n.dims);
    let arrows_m = m.arrows();
    let arrows_n = n.arrows();
    let mut aoffs = Vec::new();
    let mut cod = 0;
    for &(s, t, _) in arrows_m.iter() {
        aoffs.push(cod);
        cod += m.dims[s] * n.dims[t];
    }
    let mut delta = zeros(f, cod, dom);
    // phi_v is an (n.dims[v] x m.dims[v]) matrix, stored row-major in the
    // domain block at voffs[v]: entry (r, c) at voffs[v] + r*m.dims[v] + c.
    for (k, &(s, t, fm)) in arrows_m.iter().enumerate() {
        let fn_ = arrows_n[k].2;
        let base = aoffs[k];
        let (dms, dmt) = (m.dims[s], m.dims[t]);
        let (dns, dnt) = (n.dims[s], n.dims[t]);
        for r in 0..dnt {
            for c in 0..dms {
                let out_idx = base + r * dms + c;
                // + sum_j phi_t[r, j] * fm[j, c]
                for j in 0..dmt {
                    let coef = fm.at(j, c).clone();
                    if f.is_zero(&coef) {
                        continue;
                    }
                    let dom_idx = voffs[t] + r * dmt + j;
                    let v = f.add(delta.at(out_idx, dom_idx), &coef);
                    delta.set(out_idx, dom_idx, v);
                }
                // - sum_j fn[r, j] * phi_s[j, c]
                for j in 0..dns {
                    let coef = f.neg(fn_.at(r, j));
                    if f.is_zero(&coef) {
                        continue;
                    }
                    let dom_idx = voffs[s] + j * dms + c;
                    let v = f.add(delta.at(out_idx, dom_idx), &coef);
                    delta.set(out_idx, dom_idx, v);
                }
            }
        }
    }
    (delta, dom, cod)
}

/// dim Hom(M, N) in the zigzag category.
pub fn hom_dim_oracle<F: FieldOps>(f: &F, m: &ZigzagRep<F>, n: &ZigzagRep<F>) -> usize {
    let (delta, dom, _) = hom_delta(f, m, n);
    dom - rank(f, &delta)
}

/// dim Ext^1(M, N) in the zigzag category (hereditary: higher Ext vanish).
pub fn ext1_dim_oracle<F: FieldOps>(f: &F, m: &ZigzagRep<F>, n: &ZigzagRep<F>) -> usize {
    let (delta, _, cod) = hom_delta(f, m, n);
    cod - rank(f, &delta)
}

/// Basis of Hom(M, N) as representation morphisms.
pub fn hom_basis<F: FieldOps>(
    f: &F,
    m: &ZigzagRep<F>,
    n: &ZigzagRep<F>,
) -> Vec<RepMorphism<F::Elem>> {
    let (delta, _, _) = hom_delta(f, m, n);
    let ker = kernel_basis(f, &delta);
    let (voffs, _) = vertex_offsets(&m.dims, &n.dims);
    let mut out = Vec::new();
    for col in 0..ker.cols {
        let mut mor = Vec::with_capacity(m.n_vertices());
        for v in 0..m.n_vertices() {
            let (dm, dn) = (m.dims[v], n.dims[v]);
            let mut mat = zeros(f, dn, dm);
            for r in 0..dn {
                for c in 0..dm {
                    mat.set(r, c, ker.at(voffs[v] + r * dm + c, col).clone());
                }
            }
            mor.push(mat);
        }
        out.push(mor);
    }
    out
}

/// Compose morphisms of representations (psi after phi).
pub fn compose_morphisms<F: FieldOps>(
    f: &F,
    psi: &RepMorphism<F::Elem>,
    phi: &RepMorphism<F::Elem>,
) -> RepMorphism<F::Elem> {
    psi.iter()
        .zip(phi.iter())
        .map(|(b, a)| mat_mul(f, b, a))
        .collect()
}

/// Generalized rank of the window [lo, hi]: the rank of the canonical map
/// from the limit to the colimit of the restricted diagram. Counts the
/// interval summands whose window contains [lo, hi].
pub fn window_rank<F: FieldOps>(f: &F, rep: &ZigzagRep<F>, lo: usize, hi: usize) -> usize {
    let vdim: Vec<usize> = (lo..=hi).map(|v| rep.dims[v]).collect();
    let total: usize = vdim.iter().sum();
    if total == 0 {
        return 0;
    }
    let off = |v: usize| -> usize { vdim[..v - lo].iter().sum() };
    let arrows: Vec<(usize, usize, &Matrix<F::Elem>)> = rep
        .arrows()
        .into_iter()
        .filter(|&(s, t, _)| s >= lo && s <= hi && t >= lo && t <= hi)
        .collect();
    // Limit: kernel of (x_v) -> (f_a(x_s) - x_t).
    let lim_rows: usize = arrows.iter().map(|&(_, t, _)| rep.dims[t]).sum();
    let mut lim_mat = zeros(f, lim_rows, total);
    let mut row0 = 0;
    for &(s, t, fa) in &arrows {
        for r in 0..rep.dims[t] {
            for c in 0..rep.dims[s] {
                lim_mat.set(row0 + r, off(s) + c, fa.at(r, c).clone());
            }
            let v = f.sub(lim_mat.at(row0 + r, off(t) + r), &f.one());
            lim_mat.set(row0 + r, off(t) + r, v);
        }
        row0 += rep.dims[t];
    }
    let lim_basis = kernel_basis(f, &lim_mat);
    // Colimit relations: columns span { i_s(y) - i_t(f_a(y)) }.
    let rel_cols: usize = arrows.iter().map(|&(s, _, _)| rep.dims[s]).sum();
    let mut rel = zeros(f, total, rel_cols);
    let mut col0 = 0;
    for &(s, t, fa) in &arrows {
        for c in 0..rep.dims[s] {
            let v = f.add(rel.at(off(s) + c, col0 + c), &f.one());
            rel.set(off(s) + c, col0 + c, v);
            for r in 0..rep.dims[t] {
                let v = f.sub(rel.at(off(t) + r, col0 + c), fa.at(r, c));
                rel.set(off(t) + r, col0 + c, v);
            }
        }
        col0 += rep.dims[s];
    }
    // The canonical map lim -> colim sends a compatible family to the
    // class of any single component (the window is connected, so the
    // choice does not matter); we use the component at `lo`.
    let mut lim_at_lo = zeros(f, total, lim_basis.cols);
    for c in 0..lim_basis.cols {
        for r in 0..vdim[0] {
            lim_at_lo.set(off(lo) + r, c, lim_basis.at(off(lo) + r, c).clone());
        }
    }
    // rank of (lim -> colim) = rank [lim_at_lo | rel] - rank rel.
    let combined = combine_cols(f, &lim_at_lo, &rel);
    rank(f, &combined) - rank(f, &rel)
}

fn combine_cols<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    assert_eq!(a.rows, b.rows);
    let mut out = zeros(f, a.rows, a.cols + b.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.set(r, c, a.at(r, c).clone());
        }
        for c in 0..b.cols {
            out.set(r, a.cols + c, b.at(r, c).clone());
        }
    }
    out
}

/// Multiplicity of each window by Mobius inversion of generalized ranks.
/// This is the formula route, independent of the extraction algorithm.
pub fn decompose_by_ranks<F: FieldOps>(f: &F, rep: &ZigzagRep<F>) -> GradedBarcode {
    let nv = rep.n_vertices();
    let rk = |lo: i64, hi: i64| -> i64 {
        if lo < 0 || hi as usize >= nv || lo > hi {
            return 0;
        }
        window_rank(f, rep, lo as usize, hi as usize) as i64
    };
    let mut bc = GradedBarcode::empty(f.spec());
    for lo in 0..nv as i64 {
        for hi in lo..nv as i64 {
            let m = rk(lo, hi) - rk(lo - 1, hi) - rk(lo, hi + 1) + rk(lo - 1, hi + 1);
            debug_assert!(m >= 0, "negative multiplicity from rank formula");
            if m > 0 {
                bc.add(
                    window_to_interval(lo as usize, hi as usize, &rep.points),
                    0,
                    m as usize,
                );
            }
        }
    }
    bc
}

/// Gabriel decomposition by repeated extraction of interval summands.
///
/// For each window we look for a pair of morphisms bar -> rep -> bar whose
/// composite is a nonzero scalar; when found the corresponding idempotent
/// splits off one copy of the bar and we recurse on the complement. By
/// Krull-Schmidt the resulting multiset does not depend on the order.
pub fn gabriel_decompose<F: FieldOps>(
    f: &F,
    rep: &ZigzagRep<F>,
) -> Result<GradedBarcode, ZigzagError> {
    rep.validate()?;
    let mut cur = rep.clone();
    let nv = rep.n_vertices();
    let mut bc = GradedBarcode::empty(f.spec());
    for lo in 0..nv {
        for hi in lo..nv {
            loop {
                if cur.total_dim() == 0 {
                    break;
                }
                if (lo..=hi).any(|v| cur.dims[v] == 0) {
                    break;
                }
                let bar = realize_bar(f, &cur.points, lo, hi);
                let into = hom_basis(f, &bar, &cur);
                if into.is_empty() {
                    break;
                }
                let from = hom_basis(f, &cur, &bar);
                if from.is_empty() {
                    break;
                }
                // Pairing: scalar of (psi . phi) read at vertex lo.
                let mut found = None;
                'search: for phi in &into {
                    for psi in &from {
                        let comp = compose_morphisms(f, psi, phi);
                        let scalar = comp[lo].at(0, 0).clone();
                        if !f.is_zero(&scalar) {
                            found = Some((phi.clone(), psi.clone(), scalar));
                            break 'search;
                        }
                    }
                }
                let Some((phi, psi, scalar)) = found else {
                    break;
                };
                cur = split_off(f, &cur, &phi, &psi, &scalar);
                bc.add(window_to_interval(lo, hi, &rep.points), 0, 1);
            }
        }
    }
    if cur.total_dim() != 0 {
        return Err(ZigzagError::Malformed(
            "decomposition terminated with a nonzero remainder".into(),
        ));
    }
    Ok(bc)
}

/// Given phi: B -> M, psi: M -> B with psi.phi = scalar != 0, return the
/// complement of the summand im(phi) in M.
fn split_off<F: FieldOps>(
    f: &F,
    m: &ZigzagRep<F>,
    phi: &RepMorphism<F::Elem>,
    psi: &RepMorphism<F::Elem>,
    scalar: &F::Elem,
) -> ZigzagRep<F> {
    let inv = f.inv(scalar).expect("nonzero pairing scalar");
    // Idempotent p = phi . (1/c) . psi, vertexwise.
    let proj: Vec<Matrix<F::Elem>> = (0..m.n_vertices())
        .map(|v| mat_scale(f, &inv, &mat_mul(f, &phi[v], &psi[v])))
        .collect();
    // Complement basis: kernel of p at each vertex.
    let kbases: Vec<Matrix<F::Elem>> = proj.iter().map(|p| kernel_basis(f, p)).collect();
    let n = m.points.len();
    let restrict = |fa: &Matrix<F::Elem>, s: usize, t: usize| -> Matrix<F::Elem> {
        // Solve K_t * X = fa * K_s; fa maps ker(p_s) into ker(p_t).
        let rhs = mat_mul(f, fa, &kbases[s]);
        solve(f, &kbases[t], &rhs).expect("complement is preserved by structure maps")
    };
    let dims: Vec<usize> = kbases.iter().map(|k| k.cols).collect();
    // Consistency: the extracted summand is one-dimensional on its window.
    debug_assert!({
        let before: usize = m.dims.iter().sum();
        let after: usize = dims.iter().sum();
        before > after
    });
    ZigzagRep {
        field: f.clone(),
        points: m.points.clone(),
        dims,
        maps_left: (0..n)
            .map(|i| restrict(&m.maps_left[i], 2 * i + 1, 2 * i))
            .collect(),
        maps_right: (0..n)
            .map(|i| restrict(&m.maps_right[i], 2 * i + 1, 2 * i + 2))
            .collect(),
    }
}

/// Kernel of a representation morphism phi: M -> N, as a representation
/// (the subrepresentation ker(phi_v) of M with restricted maps).
pub fn kernel_rep<F: FieldOps>(
    f: &F,
    m: &ZigzagRep<F>,
    phi: &RepMorphism<F::Elem>,
) -> ZigzagRep<F> {
    let kbases: Vec<Matrix<F::Elem>> = phi.iter().map(|p| kernel_basis(f, p)).collect();
    let n = m.points.len();
    let restrict = |fa: &Matrix<F::Elem>, s: usize, t: usize| -> Matrix<F::Elem> {
        let rhs = mat_mul(f, fa, &kbases[s]);
        solve(f, &kbases[t], &rhs).expect("kernel is preserved by structure maps")
    };
    ZigzagRep {
        field: f.clone(),
        points: m.points.clone(),
        dims: kbases.iter().map(|k| k.cols).collect(),
        maps_left: (0..n)
            .map(|i| restrict(&m.maps_left[i], 2 * i + 1, 2 * i))
            .collect(),
        maps_right: (0..n)
            .map(|i| restrict(&m.maps_right[i], 2 * i + 1, 2 * i + 2))
            .collect(),
    }
}

/// Cokernel of a representation morphism phi: M -> N, as a representation
/// (the quotient N_v / im(phi_v) with induced maps).
pub fn cokernel_rep<F: FieldOps>(
    f: &F,
    n: &ZigzagRep<F>,
    phi: &RepMorphism<F::Elem>,
) -> ZigzagRep<F> {
    let images: Vec<Matrix<F::Elem>> = phi.iter().map(|p| matrix::image_basis(f, p)).collect();
    let comps: Vec<Matrix<F::Elem>> = images
        .iter()
        .zip(&n.dims)
        .map(|(im, &d)| matrix::cokernel_reps(f, im, d))
        .collect();
    // Full basis per vertex: [im | comp]; the quotient coordinates are the
    // comp-components of a vector expressed in this basis.
    let npts = n.points.len();
    let induced = |fa: &Matrix<F::Elem>, s: usize, t: usize| -> Matrix<F::Elem> {
        let full = combine_cols(f, &images[t], &comps[t]);
        let rhs = mat_mul(f, fa, &comps[s]);
        let coords = solve(f, &full, &rhs).expect("basis spans the target");
        // Keep only the comp-part rows.
        let mut out = zeros(f, comps[t].cols, comps[s].cols);
        for r in 0..comps[t].cols {
            for c in 0..comps[s].cols {
                out.set(r, c, coords.at(images[t].cols + r, c).clone());
            }
        }
        out
    };
    ZigzagRep {
        field: f.clone(),
        points: n.points.clone(),
        dims: comps.iter().map(|c| c.cols).collect(),
        maps_left: (0..npts)
            .map(|i| induced(&n.maps_left[i], 2 * i + 1, 2 * i))
            .collect(),
        maps_right: (0..npts)
            .map(|i| induced(&n.maps_right[i], 2 * i + 1, 2 * i + 2))
            .collect(),
    }
}

/// Global sections of a degree-0 representation: RGamma (ordinary) or
/// RGamma_c, via the two-term cell complex of the (compactified) line.
pub fn sections_gvs<F: FieldOps>(f: &F, rep: &ZigzagRep<F>, compact_support: bool) -> GradedVectorSpace {
    let n = rep.points.len();
    // C0: stalks at the n points, plus (for ordinary sections) the stalks
    // at the two ends of the compactified line, which are the values on
    // the unbounded strata.
    // C1: the n+1 open strata.
    let pt_dims: Vec<usize> = (0..n).map(|j| rep.dims[2 * j + 1]).collect();
    let mut c0_blocks: Vec<usize> = pt_dims.clone();
    if !compact_support {
        c0_blocks.push(rep.dims[0]);
        c0_blocks.push(rep.dims[2 * n]);
    }
    let c0: usize = c0_blocks.iter().sum();
    let strata_dims: Vec<usize> = (0..=n).map(|j| rep.dims[2 * j]).collect();
    let c1: usize = strata_dims.iter().sum();
    let pt_off = |j: usize| -> usize { pt_dims[..j].iter().sum() };
    let st_off = |j: usize| -> usize { strata_dims[..j].iter().sum() };
    let mut d = zeros(f, c1, c0);
    // Stratum j = (x_j, x_{j+1}) receives +rho from its right point x_{j+1}
    // (vertex 2j+1, map maps_left[j]) and -rho from its left point x_j
    // (vertex 2j-1, map maps_right[j-1]).
    for j in 0..=n {
        if j < n {
            let fa = &rep.maps_left[j];
            for r in 0..fa.rows {
                for c in 0..fa.cols {
                    let v = f.add(d.at(st_off(j) + r, pt_off(j) + c), fa.at(r, c));
                    d.set(st_off(j) + r, pt_off(j) + c, v);
                }
            }
        }
        if j > 0 {
            let fa = &rep.maps_right[j - 1];
            for r in 0..fa.rows {
                for c in 0..fa.cols {
                    let v = f.sub(d.at(st_off(j) + r, pt_off(j - 1) + c), fa.at(r, c));
                    d.set(st_off(j) + r, pt_off(j - 1) + c, v);
                }
            }
        }
    }
    if !compact_support {
        // The end stalks map identically onto the unbounded strata; the
        // left end is the left endpoint of stratum 0, the right end the
        // right endpoint of stratum n.
        let left_base: usize = pt_dims.iter().sum();
        let right_base = left_base + rep.dims[0];
        for r in 0..rep.dims[0] {
            let v = f.sub(d.at(st_off(0) + r, left_base + r), &f.one());
            d.set(st_off(0) + r, left_base + r, v);
        }
        for r in 0..rep.dims[2 * n] {
            let v = f.add(d.at(st_off(n) + r, right_base + r), &f.one());
            d.set(st_off(n) + r, right_base + r, v);
        }
    }
    let rk = rank(f, &d);
    let mut g = GradedVectorSpace::zero();
    g.add_dim(0, c0 - rk);
    g.add_dim(1, c1 - rk);
    g
}

/// Microlocal germ of a degree-0 representation at the stratification
/// point x_j (1-based) with the given sign: the fiber of the generization
/// map from the stalk to the stratum on the side the covector points away
/// from. Returns (H^0, H^1) = (ker, coker).
pub fn microgerm_at_vertex<F: FieldOps>(
    f: &F,
    rep: &ZigzagRep<F>,
    j: usize,
    positive: bool,
) -> (usize, usize) {
    assert!(j >= 1 && j <= rep.points.len());
    let fa = if positive {
        &rep.maps_left[j - 1]
    } else {
        &rep.maps_right[j - 1]
    };
    let rk = rank(f, fa);
    (fa.cols - rk, fa.rows - rk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Fp};
    use crate::num::qi;

    fn f2() -> Fp {
        Fp::new(2)
    }

    #[test]
    fn zero_rep_decomposes_empty() {
        let f = f2();
        let rep = ZigzagRep::zero(f.clone(), vec![qi(0)]);
        let bc = gabriel_decompose(&f, &rep).unwrap();
        assert!(bc.is_empty());
    }

    #[test]
    fn spec_examples_n1() {
        let f = f2();
        // dims (1,1,0), maps ([1],[0]) -> one bar (-inf, 0]
        let rep = ZigzagRep {
            field: f.clone(),
            points: vec![qi(0)],
            dims: vec![1, 1, 0],
            maps_left: vec![Matrix::from_rows(vec![vec![1u64]])],
            maps_right: vec![zeros(&f, 0, 1)],
        };
        let bc = gabriel_decompose(&f, &rep).unwrap();
        let expect = GradedBarcode::single(
            FieldSpec::prime(2),
            Interval::ray_closed(qi(0)),
            0,
            1,
        );
        assert_eq!(bc, expect);
        // dims (1,1,1), maps ([1],[1]) -> the full line
        let rep = ZigzagRep {
            field: f.clone(),
            points: vec![qi(0)],
            dims: vec![1, 1, 1],
            maps_left: vec![identity(&f, 1)],
            maps_right: vec![identity(&f, 1)],
        };
        let bc = gabriel_decompose(&f, &rep).unwrap();
        assert_eq!(
            bc,
            GradedBarcode::single(FieldSpec::prime(2), Interval::full_line(), 0, 1)
        );
    }

    #[test]
    fn realize_spec_examples() {
        let f = f2();
        // bar [0, inf) on points [0] -> dims (0,1,1), maps ([0],[1])
        let bc = GradedBarcode::single(FieldSpec::prime(2), Interval::closed_ray(qi(0)), 0, 1);
        let rep = realize_rep(&f, &bc, &[qi(0)]).unwrap();
        assert_eq!(rep.dims, vec![0, 1, 1]);
        assert_eq!(rep.maps_right[0], identity(&f, 1));
        // bar (0, inf) -> dims (0,0,1)
        let bc = GradedBarcode::single(FieldSpec::prime(2), Interval::open_ray(qi(0)), 0, 1);
        let rep = realize_rep(&f, &bc, &[qi(0)]).unwrap();
        assert_eq!(rep.dims, vec![0, 0, 1]);
        // missing endpoint -> refinement error
        let bc = GradedBarcode::single(FieldSpec::prime(2), Interval::closed_ray(qi(5)), 0, 1);
        assert!(matches!(
            realize_rep(&f, &bc, &[qi(0)]),
            Err(ZigzagError::Refinement(_))
        ));
    }

    #[test]
    fn roundtrip_simple() {
        let f = f2();
        let mut bc = GradedBarcode::empty(FieldSpec::prime(2));
        bc.add(Interval::half_open(qi(0), qi(1)), 0, 2);
        bc.add(Interval::open(qi(0), qi(2)), 0, 1);
        bc.add(Interval::full_line(), 0, 1);
        let pts = vec![qi(0), qi(1), qi(2)];
        let rep = realize_rep(&f, &bc, &pts).unwrap();
        assert_eq!(gabriel_decompose(&f, &rep).unwrap(), bc);
        assert_eq!(decompose_by_ranks(&f, &rep), bc);
    }

    #[test]
    fn extension_is_indecomposable() {
        // The representation of k_[0,2) on points {0,1,2} must come out as
        // one long bar, not two short ones.
        let f = f2();
        let bc = GradedBarcode::single(FieldSpec::prime(2), Interval::half_open(qi(0), qi(2)), 0, 1);
        let pts = vec![qi(0), qi(1), qi(2)];
        let rep = realize_rep(&f, &bc, &pts).unwrap();
        assert_eq!(gabriel_decompose(&f, &rep).unwrap(), bc);
    }

    #[test]
    fn hom_ext_directions() {
        // Hom(k_[0,1), k_[1,2)) = 0 = Ext^1; the nonsplit extension goes
        // the other way: Ext^1(k_[1,2), k_[0,1)) = 1 via k_[0,2).
        let f = f2();
        let pts = vec![qi(0), qi(1), qi(2)];
        let spec = FieldSpec::prime(2);
        let m = realize_rep(
            &f,
            &GradedBarcode::single(spec.clone(), Interval::half_open(qi(0), qi(1)), 0, 1),
            &pts,
        )
        .unwrap();
        let n = realize_rep(
            &f,
            &GradedBarcode::single(spec, Interval::half_open(qi(1), qi(2)), 0, 1),
            &pts,
        )
        .unwrap();
        assert_eq!(hom_dim_oracle(&f, &m, &n), 0);
        assert_eq!(ext1_dim_oracle(&f, &m, &n), 0);
        assert_eq!(hom_dim_oracle(&f, &n, &m), 0);
        assert_eq!(ext1_dim_oracle(&f, &n, &m), 1);
    }

    #[test]
    fn sections_of_bars() {
        let f = f2();
        let spec = FieldSpec::prime(2);
        let pts = vec![qi(0), qi(1)];
        let cases: Vec<(Interval, bool, (usize, usize))> = vec![
            (Interval::closed(qi(0), qi(1)), true, (1, 0)),
            (Interval::open(qi(0), qi(1)), true, (0, 1)),
            (Interval::half_open(qi(0), qi(1)), true, (0, 0)),
            (Interval::closed(qi(0), qi(1)), false, (1, 0)),
            (Interval::open(qi(0), qi(1)), false, (0, 1)),
            (Interval::full_line(), false, (1, 0)),
            (Interval::full_line(), true, (0, 1)),
            (Interval::closed_ray(qi(0)), false, (1, 0)),
            (Interval::closed_ray(qi(0)), true, (0, 0)),
            (Interval::open_ray(qi(0)), false, (0, 0)),
            (Interval::open_ray(qi(0)), true, (0, 1)),
        ];
        for (i, compact, (h0, h1)) in cases {
            let bc = GradedBarcode::single(spec.clone(), i.clone(), 0, 1);
            let rep = realize_rep(&f, &bc, &pts).unwrap();
            let g = sections_gvs(&f, &rep, compact);
            assert_eq!(
                (g.dim(0), g.dim(1)),
                (h0, h1),
                "sections of {i} compact={compact}"
            );
            // Closed-form table must agree with the oracle.
            let table = crate::barcode::interval_sections(&i, compact);
            assert_eq!((table.dim(0), table.dim(1)), (h0, h1), "table for {i}");
        }
    }

    #[test]
    fn microgerm_oracle_basics() {
        let f = f2();
        let spec = FieldSpec::prime(2);
        let pts = vec![qi(0), qi(1)];
        let bc = GradedBarcode::single(spec, Interval::half_open(qi(0), qi(1)), 0, 1);
        let rep = realize_rep(&f, &bc, &pts).unwrap();
        // (0,+): stalk -> left stratum is k -> 0: germ k in degree 0.
        assert_eq!(microgerm_at_vertex(&f, &rep, 1, true), (1, 0));
        // (1,+): stalk 0 -> left stratum k: germ k in degree 1.
        assert_eq!(microgerm_at_vertex(&f, &rep, 2, true), (0, 1));
        // (0,-): stalk -> right stratum iso: zero germ.
        assert_eq!(microgerm_at_vertex(&f, &rep, 1, false), (0, 0));
    }
}
