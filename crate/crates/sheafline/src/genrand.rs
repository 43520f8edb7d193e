//! Seeded random generators for representations and barcodes.
//!
//! Used by the property-test suites and by the `verify` command; every
//! consumer passes an explicit ChaCha RNG so runs are reproducible.

use crate::barcode::GradedBarcode;
use crate::field::{FieldOps, FieldSpec};
use crate::interval::{Endpoint, Interval};
use crate::matrix::{inverse, zeros, Matrix};
use crate::num::{qi, Q};
use crate::zigzag::ZigzagRep;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random matrix with entries drawn from the first `span` field elements.
pub fn random_matrix<F: FieldOps>(
    f: &F,
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    span: i64,
) -> Matrix<F::Elem> {
    let mut m = zeros(f, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, f.from_i64(rng.gen_range(0..span)));
        }
    }
    m
}

/// Random invertible matrix (rejection sampling).
pub fn random_invertible<F: FieldOps>(
    f: &F,
    rng: &mut ChaCha8Rng,
    n: usize,
    span: i64,
) -> Matrix<F::Elem> {
    if n == 0 {
        return zeros(f, 0, 0);
    }
    loop {
        let m = random_matrix(f, rng, n, n, span);
        if inverse(f, &m).is_some() {
            return m;
        }
    }
}

/// Random zigzag representation with at most `max_points` points and total
/// dimension roughly bounded by `max_total_dim`.
pub fn random_rep<F: FieldOps>(
    f: &F,
    rng: &mut ChaCha8Rng,
    max_points: usize,
    max_total_dim: usize,
    span: i64,
) -> ZigzagRep<F> {
    let n = rng.gen_range(0..=max_points);
    let points: Vec<Q> = (0..n).map(|i| qi(i as i64)).collect();
    let nv = 2 * n + 1;
    let per = (max_total_dim / nv).max(1);
    let dims: Vec<usize> = (0..nv).map(|_| rng.gen_range(0..=per)).collect();
    let maps_left: Vec<_> = (0..n)
        .map(|i| random_matrix(f, rng, dims[2 * i], dims[2 * i + 1], span))
        .collect();
    let maps_right: Vec<_> = (0..n)
        .map(|i| random_matrix(f, rng, dims[2 * i + 2], dims[2 * i + 1], span))
        .collect();
    ZigzagRep {
        field: f.clone(),
        points,
        dims,
        maps_left,
        maps_right,
    }
}

/// Conjugate every vertex by a random invertible matrix.
pub fn random_conjugate<F: FieldOps>(
    f: &F,
    rng: &mut ChaCha8Rng,
    rep: &ZigzagRep<F>,
    span: i64,
) -> ZigzagRep<F> {
    let basis: Vec<Matrix<F::Elem>> = rep
        .dims
        .iter()
        .map(|&d| random_invertible(f, rng, d, span))
        .collect();
    rep.conjugate(&basis)
}

/// Random interval with endpoints among 0..=range (various end types,
/// occasionally unbounded or a singleton).
pub fn random_interval(rng: &mut ChaCha8Rng, range: i64) -> Interval {
    loop {
        if rng.gen_ratio(1, 10) {
            return Interval::singleton(qi(rng.gen_range(0..=range)));
        }
        let unb_left = rng.gen_ratio(1, 8);
        let unb_right = rng.gen_ratio(1, 8);
        let a = rng.gen_range(0..=range);
        let b = rng.gen_range(0..=range);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let left = if unb_left {
            Endpoint::neg_inf()
        } else if rng.gen_bool(0.5) {
            Endpoint::closed(qi(a))
        } else {
            Endpoint::open(qi(a))
        };
        let right = if unb_right {
            Endpoint::pos_inf()
        } else if rng.gen_bool(0.5) {
            Endpoint::closed(qi(b))
        } else {
            Endpoint::open(qi(b))
        };
        if let Ok(i) = Interval::new(left, right) {
            return i;
        }
    }
}

/// Random bounded-below tau>=0 interval ([a,b), [a,+inf)).
pub fn random_tau_interval(rng: &mut ChaCha8Rng, range: i64) -> Interval {
    let a = rng.gen_range(0..=range);
    if rng.gen_ratio(1, 6) {
        Interval::closed_ray(qi(a))
    } else {
        let len = rng.gen_range(1..=range.max(1));
        Interval::half_open(qi(a), qi(a + len))
    }
}

/// Random graded barcode.
pub fn random_barcode(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    max_bars: usize,
    range: i64,
    degree_span: i64,
) -> GradedBarcode {
    let mut bc = GradedBarcode::empty(field);
    let n = rng.gen_range(0..=max_bars);
    for _ in 0..n {
        let i = random_interval(rng, range);
        let d = rng.gen_range(-degree_span..=degree_span);
        let m = rng.gen_range(1..=2);
        bc.add(i, d, m);
    }
    bc
}

/// Random tau>=0 barcode with bounded-below bars in degree span.
pub fn random_tau_barcode(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    max_bars: usize,
    range: i64,
    degree_span: i64,
) -> GradedBarcode {
    let mut bc = GradedBarcode::empty(field);
    let n = rng.gen_range(0..=max_bars);
    for _ in 0..n {
        let i = random_tau_interval(rng, range);
        let d = rng.gen_range(-degree_span..=degree_span);
        bc.add(i, d, rng.gen_range(1..=2));
    }
    bc
}
