//! Chains between two distances and the non-proper witness point.

use mslab::rational::fmt_vec;
use mslab::urysohn::{injectivity_chain, nonproper_witness};
use mslab::{int, rat, MetricSpace};

fn main() -> mslab::Result<()> {
    let c = injectivity_chain(&rat(1, 3), &rat(5, 6), &int(1))?;
    println!("steps of 1/3 from x0 to x{} at distance 5/6:", c.len() - 1);
    for i in 0..c.len() {
        println!("  {:?}", fmt_vec(c.row(i)));
    }

    let s = MetricSpace::from_matrix(
        vec![
            vec![int(0), rat(1, 4), rat(3, 4)],
            vec![rat(1, 4), int(0), rat(1, 2)],
            vec![rat(3, 4), rat(1, 2), int(0)],
        ],
        int(1),
    )?;
    let out = nonproper_witness(&s, 0, &[1, 2], &rat(1, 2))?;
    println!(
        "y at 1/2 from x, max(1/2, d(x,z)) from each z: {:?}",
        fmt_vec(out.space.row(out.point))
    );
    Ok(())
}
