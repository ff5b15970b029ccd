//! The Fermat cubic over F_19: automorphisms, the criterion, the quartic
//! image and the three outer points of the cubic.

use galois_points::elliptic::{build_quartic_model, outer_delta_check, scan_admissible, FermatCubic};
use galois_points::Result;

fn main() -> Result<()> {
    let curve = FermatCubic::new(19)?;
    println!("{} points, omega = {}", curve.len(), curve.omega());

    let scan = scan_admissible(&curve)?;
    let cert = &scan.certificate;
    println!("skipped {} points before finding Q = {}", scan.skipped.len(), cert.q);
    println!("P1 = {}, P2 = {}, tau has order {}", cert.p1, cert.p2, cert.tau_order);
    println!("D = {} (criterion holds: {})", cert.report.cond_c.lhs, cert.holds());

    let model = build_quartic_model(cert)?;
    println!("image quartic: {} = 0", model.quartic.render());
    println!("vanishes on all {} image points: {}", model.image.len(), model.vanishes_on_image());

    for c in outer_delta_check(&curve)? {
        println!("projection from {}: Galois = {}, {} fibers", c.center, c.holds(), c.fibers);
    }
    Ok(())
}
