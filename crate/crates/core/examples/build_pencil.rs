//! Build DL(P, v) for the row polynomial `P(z) = [1, z^2]` and check its identities.

use dlpencil::exactalg::rat;
use dlpencil::pencil::{build_dl, transpose_law_holds, Ansatz};
use dlpencil::polymat::PolyMat;

fn main() -> dlpencil::Result<()> {
    let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]])?;
    let v = Ansatz::new(vec![rat(1), rat(-1)])?;
    let dl = build_dl(&p, &v)?;
    println!("P(z) =\n{p}");
    println!("v(z) = {}", v.poly());
    println!("L(z) =\n{}", dl.pencil);

    dl.check_contractions(&p)?;
    println!(
        "contractions hold, transpose law: {}",
        transpose_law_holds(&p, &v)?
    );
    println!("recovered P =\n{}", dl.recover_polynomial()?);
    Ok(())
}
