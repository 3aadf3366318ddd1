//! Generate a polynomial with a prescribed structure and read it back.

use dlpencil::eigenstructure::{full_eigenstructure, smith_form};
use dlpencil::genstruct::{eigenvalue_pool, generate, KroneckerSpec};

fn main() -> dlpencil::Result<()> {
    let spec: KroneckerSpec = serde_json::from_str(
        r#"{"m":2,"n":3,"grade":2,"rank":2,"finite":{"1":[1],"-1/2":[1]},"inf":[1],"right":[1],"left":[]}"#,
    )
    .expect("valid spec");
    let p = generate(&spec)?;
    println!("P(z) =\n{p}");

    let sf = smith_form(&p)?;
    for (i, d) in sf.invariant_factors.iter().enumerate() {
        println!("d_{} = {d}", i + 1);
    }
    let e = full_eigenstructure(&p, &eigenvalue_pool())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&e).expect("serializable")
    );
    assert_eq!(e.index_sum(), e.grade * e.rank);
    Ok(())
}
