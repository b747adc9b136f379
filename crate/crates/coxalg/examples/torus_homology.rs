//! Twisted first homology of the torus group and the K-vanishing solver.

use coxalg::fibhom::{
    homology1, k_vanishing_solver, verify_certificate, KVanishingCertificate, LocalSystem,
    MonodromyData, Presentation,
};
use coxalg::z2::BitMatrix;
use coxalg::HomologyClass;

fn main() -> coxalg::Result<()> {
    let p = Presentation::from_json(r#"{"generators": ["xi", "eta"], "relators": ["[xi,eta]"]}"#)?;
    let f_eta = BitMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
    let ls = LocalSystem::new(2, vec![BitMatrix::identity(2), f_eta.clone()])?;
    println!(
        "dim H1 with twisted coefficients: {}",
        homology1(&p, &ls)?.dim
    );
    println!(
        "dim H1 with trivial coefficients: {}",
        homology1(&p, &LocalSystem::trivial(2, 2))?.dim
    );

    for mu in HomologyClass::all_nonzero(1) {
        let data = MonodromyData::new(
            1,
            vec![BitMatrix::identity(2)],
            vec![f_eta.clone()],
            vec![],
            None,
            mu,
        );
        match k_vanishing_solver(&data)? {
            Some(cert) => {
                let ok = verify_certificate(&data, &cert)?;
                if let KVanishingCertificate::NonSeparating { nu, .. } = cert {
                    println!("mu = {mu}: nu = {nu}, replay verified: {ok}");
                }
            }
            None => println!("mu = {mu}: no decomposition"),
        }
    }
    Ok(())
}
