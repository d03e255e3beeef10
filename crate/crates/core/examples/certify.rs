//! Build the Robertson witness, pair it with a PPT entangled state, and run
//! the full atomicity certificate.

use atomap::choi::{choi, pair};
use atomap::detect::atomicity_certificate;
use atomap::maps::robertson;
use atomap::states::{ha_schmidt_certificates, rho_ha, HaVariant};

fn main() -> atomap::Result<()> {
    let map = robertson();
    let rho = rho_ha(HaVariant::Dim4);

    // witness spectrum and pairing
    let w = choi(&map)?;
    assert!(w.is_candidate());
    println!("Tr(W rho) = {}", pair(&rho.op, &map)?); // -1/14

    // full certificate: PPT state + Schmidt-rank-2 decompositions
    let (cert, cert_pt) = ha_schmidt_certificates();
    let res = atomicity_certificate(&map, &rho, &cert, &cert_pt, 1e-12)?;
    println!("conclusion: {}", res.conclusion.label()); // atomic
    Ok(())
}
