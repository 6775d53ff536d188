//! The p-th power identity for pieces with disjoint supports.

use mslab::banach::{disjoint_support_identity, StepFn2D};
use mslab::{int, rat};

fn main() -> mslab::Result<()> {
    let xb = vec![int(0), int(1), int(2)];
    let yb = vec![int(0), rat(1, 2), int(1)];
    let x = StepFn2D::new(
        xb.clone(),
        yb.clone(),
        vec![vec![int(1), int(0)], vec![rat(1, 2), int(-1)]],
    )?;
    let a = StepFn2D::new(
        xb.clone(),
        yb.clone(),
        vec![vec![int(2), int(0)], vec![int(0), int(0)]],
    )?;
    let b = StepFn2D::new(xb, yb, vec![vec![int(0), int(0)], vec![int(0), int(3)]])?;
    for p in [int(1), int(2), int(3), rat(3, 2)] {
        let r = disjoint_support_identity(&x, &[a.clone(), b.clone()], &p, 1e-12)?;
        println!("p = {p}: {:?} {}", r.verdict, r.witness.unwrap());
    }
    Ok(())
}
