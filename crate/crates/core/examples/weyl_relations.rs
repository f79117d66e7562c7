//! Check the Weyl-operator algebra for small dimensions and print the worst
//! deviation of each relation.

use qutrit_distill::weyl::{weyl, Dimension, WeylIndex};

fn main() {
    for d in 2..=5 {
        let dim = Dimension::new(d).unwrap();
        let (mut prod, mut conj, mut tr) = (0.0f64, 0.0f64, 0.0f64);
        for a in WeylIndex::all(&dim) {
            let (i, j) = (a.k as i64, a.l as i64);
            let wa = weyl(&dim, a);
            conj = conj.max(wa.conj().max_abs_diff(&weyl(&dim, WeylIndex::new(&dim, -i, j))));
            let rhs = weyl(&dim, WeylIndex::new(&dim, i, -j)).scale(dim.omega_pow(-i * j));
            tr = tr.max(wa.transpose().max_abs_diff(&rhs));
            for b in WeylIndex::all(&dim) {
                let (k, l) = (b.k as i64, b.l as i64);
                let rhs = weyl(&dim, WeylIndex::new(&dim, i + k, j + l)).scale(dim.omega_pow(j * k));
                prod = prod.max(wa.matmul(&weyl(&dim, b)).unwrap().max_abs_diff(&rhs));
            }
        }
        println!("d = {d}: product {prod:.1e}  conjugate {conj:.1e}  transpose {tr:.1e}");
    }
}
