//! Recover minimal bases and eigenvectors of P from those of the pencil.

use dlpencil::eigenstructure::minimal_basis;
use dlpencil::exactalg::rat;
use dlpencil::pencil::{build_dl, structured_minimal_basis, Ansatz};
use dlpencil::polymat::PolyMat;
use dlpencil::recovery::{kernel_of_omega, quotient_dimensions, recover_minimal_basis, OmegaMap};

fn main() -> dlpencil::Result<()> {
    let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]])?;
    let dl = build_dl(&p, &Ansatz::new(vec![rat(1), rat(-1)])?)?;

    let ml = minimal_basis(&dl.pencil)?;
    println!(
        "minimal basis of ker L, indices {:?}:\n{}",
        ml.indices, ml.basis
    );
    let rec = recover_minimal_basis(&ml, &OmegaMap::of(&dl), &p)?;
    println!("recovered minimal basis of ker P:\n{}", rec.basis);

    let mp = minimal_basis(&p)?;
    let f = structured_minimal_basis(&dl, &p, &mp)?;
    println!("F(z) =\n{}", f.f);
    println!(
        "ker Omega ∩ ker L spanned by\n{}",
        kernel_of_omega(&dl, &p, &mp)?
    );

    let dims = quotient_dimensions(&p, &mp, &dl, &ml, &rat(2));
    println!("at z = 2: {dims:?}");
    Ok(())
}
