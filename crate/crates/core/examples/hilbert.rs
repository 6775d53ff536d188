//! The sphere identity on rational unit vectors.

use mslab::banach::{hilbert_check, stereographic};
use mslab::rat;

fn main() -> mslab::Result<()> {
    let u = stereographic(&[rat(1, 2), rat(1, 3)]);
    let v = stereographic(&[rat(-2, 1), rat(0, 1)]);
    let z = stereographic(&[rat(3, 4), rat(-1, 5)]);
    println!(
        "u = {:?}",
        u.0.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    let r = hilbert_check(&u, &v, &z, 1e-9)?;
    println!("{}", r.to_json_pretty());
    Ok(())
}
