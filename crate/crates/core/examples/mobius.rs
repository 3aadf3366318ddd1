//! Möbius maps: transport of the spectrum, the commuting diagram and the
//! reduction that moves infinity to a finite point.

use dlpencil::eigenstructure::full_eigenstructure;
use dlpencil::exactalg::rat;
use dlpencil::genstruct::{eigenvalue_pool, generate, KroneckerSpec};
use dlpencil::mobius::{
    commuting_diagram_check, mobius_transform, reduce_infinity, transport_eigenstructure, Mobius,
};
use dlpencil::pencil::Ansatz;

fn main() -> dlpencil::Result<()> {
    let spec: KroneckerSpec = serde_json::from_str(
        r#"{"m":2,"n":2,"grade":2,"rank":2,"finite":{"2":[1,1]},"inf":[1,1]}"#,
    )
    .expect("valid spec");
    let p = generate(&spec)?;
    let pool = eigenvalue_pool();

    let r = Mobius::from_ints(1, 2, 1, -1)?;
    let q = mobius_transform(&p, 2, &r)?;
    let moved = transport_eigenstructure(&full_eigenstructure(&p, &pool)?, &r);
    println!(
        "M(P) has eigenvalues {:?}",
        moved
            .finite
            .keys()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
    );
    assert!(moved.same_structure(&full_eigenstructure(
        &q,
        &moved.finite.keys().cloned().collect::<Vec<_>>()
    )?));

    let v = Ansatz::new(vec![rat(1), rat(3)])?;
    println!(
        "commuting diagram: {:?}",
        commuting_diagram_check(&p, &v, &Mobius::reciprocal())?
    );

    let red = reduce_infinity(&p, Some(&v))?;
    println!("mu* = {}, reduced Q(z) =\n{}", red.mu_star, red.q);
    println!("u(z) = {}", red.u.expect("ansatz given").poly());
    Ok(())
}
