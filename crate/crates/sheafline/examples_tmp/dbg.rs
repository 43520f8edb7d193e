// debug: print window ranks for the roundtrip_simple rep
use sheafline::barcode::GradedBarcode;
use sheafline::field::{FieldSpec, Fp};
use sheafline::interval::Interval;
use sheafline::num::qi;
use sheafline::zigzag::*;

fn main() {
    let f = Fp::new(2);
    let mut bc = GradedBarcode::empty(FieldSpec::prime(2));
    bc.add(Interval::half_open(qi(0), qi(1)), 0, 2);
    bc.add(Interval::open(qi(0), qi(2)), 0, 1);
    bc.add(Interval::full_line(), 0, 1);
    let pts = vec![qi(0), qi(1), qi(2)];
    let rep = realize_rep(&f, &bc, &pts).unwrap();
    println!("dims {:?}", rep.dims);
    let nv = rep.n_vertices();
    for lo in 0..nv {
        for hi in lo..nv {
            println!("N({lo},{hi}) = {}", window_rank(&f, &rep, lo, hi));
        }
    }
}
