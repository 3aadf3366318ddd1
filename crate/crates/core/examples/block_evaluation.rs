//! Block-diagonal evaluation of a pencil and the arrowhead form for distinct roots.

use dlpencil::exactalg::{rat, SPoly};
use dlpencil::genstruct::{generate, KroneckerSpec};
use dlpencil::pencil::{
    arrowhead_matches_dl, arrowhead_pencil, block_evaluation, build_dl, Ansatz,
};

fn main() -> dlpencil::Result<()> {
    let spec: KroneckerSpec = serde_json::from_str(
        r#"{"m":2,"n":2,"grade":3,"rank":2,"finite":{"2":[2,1]},"inf":[1,2],"right":[],"left":[]}"#,
    )
    .expect("valid spec");
    let p = generate(&spec)?;

    // v has a double root at 1
    let v = Ansatz::from_poly(&SPoly::from_roots(&[rat(1), rat(1)]), 3)?;
    let be = block_evaluation(&build_dl(&p, &v)?, &p, &rat(0))?;
    for ((mu, l), (c, q)) in be.nodes.iter().zip(be.scalars.iter().zip(&be.blocks)) {
        println!("node {mu} (x{l}), c = {c}\n{q}");
    }
    println!("rank L(0) >= {}", be.rank_lower_bound(&p));

    let roots = [rat(1), rat(-1)];
    println!(
        "arrowhead A(z) =\n{}",
        arrowhead_pencil(&p, &roots, &rat(0))?
    );
    println!(
        "congruent to DL(P, z^2 - 1): {}",
        arrowhead_matches_dl(&p, &roots, &rat(0))?
    );
    Ok(())
}
