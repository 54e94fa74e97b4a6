//! Locates the spheres on which a slice polynomial attains a value, via the
//! zeros of the entire function Q_c(z) = ⟨F(z) − c, F(z) − c⟩.

use quaternionic_picard::zeros::{find_roots_detailed, SearchRect};
use quaternionic_picard::{Quaternion, SliceFunction};

fn main() {
    // f(q) = q² + q·J − 1
    let f = SliceFunction::polynomial(vec![-Quaternion::ONE, Quaternion::J, Quaternion::ONE]);
    let c = Quaternion::new(0.5, 0.0, 0.0, 1.0);
    let rect = SearchRect::new(-4.0, 4.0, 0.0, 4.0).unwrap();
    let search = find_roots_detailed(&f, c, rect, 1e-14).unwrap();
    println!("total winding {}", search.total_winding);
    for r in &search.roots {
        println!("x = {:.12}, y = {:.12}, winding {}, fiber {:?}", r.x, r.y, r.winding, r.fiber);
        if let Some(q) = r.point() {
            println!("  f(q) − c = {:.2e}", (f.eval(q) - c).norm());
        }
    }
    println!("{:?}", search.stats);
}
