//! Free amalgam of two spaces over a shared point.

use mslab::metric::amalgamate;
use mslab::rational::fmt_vec;
use mslab::{int, rat, MetricSpace, PartialIsometry};

fn main() -> mslab::Result<()> {
    let left = MetricSpace::from_matrix(
        vec![vec![int(0), rat(1, 3)], vec![rat(1, 3), int(0)]],
        int(1),
    )?;
    let right = MetricSpace::from_matrix(
        vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]],
        int(1),
    )?;
    // left point 1 is right point 0
    let glue = PartialIsometry::new(vec![1], vec![0])?;
    let a = amalgamate(&left, &right, &glue, None)?;
    for i in 0..a.space.len() {
        println!("{:>3} {:?}", a.space.labels()[i], fmt_vec(a.space.row(i)));
    }
    println!("right factor landed at {:?}", a.right);
    Ok(())
}
