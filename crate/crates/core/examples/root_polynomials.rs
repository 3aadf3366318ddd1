//! Maximal sets of root polynomials, lifted to the pencil and recovered.

use dlpencil::exactalg::rat;
use dlpencil::genstruct::{generate, KroneckerSpec};
use dlpencil::pencil::{build_dl, Ansatz};
use dlpencil::recovery::recover_root_polys;
use dlpencil::rootpoly::{lift_root_polys, maximal_set};

fn main() -> dlpencil::Result<()> {
    let spec: KroneckerSpec = serde_json::from_str(
        r#"{"m":2,"n":3,"grade":2,"rank":2,"finite":{"0":[1,2]},"right":[1]}"#,
    )
    .expect("valid spec");
    let p = generate(&spec)?;
    let v = Ansatz::new(vec![rat(1), rat(-3)])?;
    let dl = build_dl(&p, &v)?;

    let set = maximal_set(&p, &rat(0))?;
    for r in &set.members {
        println!("order {}: r(z) =\n{}", r.order, r.vec);
    }
    let up = lift_root_polys(&set, &dl, &p)?;
    println!("lifted orders {:?}, maximal: {}", up.orders(), up.maximal);
    let down = recover_root_polys(&up, &dl, &p)?;
    println!(
        "recovered orders {:?}, maximal: {}",
        down.orders(),
        down.maximal
    );
    Ok(())
}
