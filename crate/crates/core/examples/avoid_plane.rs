//! An entire slice regular function whose image is ℍ minus an affine plane.

use quaternionic_picard::constructions::plane_avoider;
use quaternionic_picard::Quaternion;

fn main() {
    let p0 = Quaternion::new(1.0, 1.0, 1.0, 1.0);
    let u = Quaternion::new(0.0, 1.0, 1.0, 0.0);
    let v = Quaternion::new(1.0, 0.0, 0.0, -2.0);
    let report = plane_avoider(p0, u, v).unwrap();
    for s in [0.0, 0.5, -2.0] {
        for t in [0.0, 1.0, 3.0] {
            let c = p0 + u * s + v * t;
            println!("p0 + {s}u + {t}v: distance {:.1e}, preimage {:?}", report.distance_to_avoided_plane(c), report.preimage(c).is_ok());
        }
    }
    let off = p0 + Quaternion::K;
    let q = report.preimage(off).unwrap();
    println!("g({q}) − c = {:.2e}", (report.g.eval(q) - off).norm());
}
