//! Landmark seminorms, proximity at a scale, nets and restriction.

use std::sync::Arc;

use mslab::katetov::{kuratowski_embed, sup_distance};
use mslab::random::{random_space, sub_rng};
use mslab::rat;
use mslab::rational::fmt_vec;
use mslab::weak::{
    gromov_approximant, proximity_test, restrict_katetov, weak_seminorm, LandmarkSet,
};

fn main() -> mslab::Result<()> {
    let s = Arc::new(random_space(&mut sub_rng(3, 0), 6, 8));
    let l = LandmarkSet::new(Arc::clone(&s), vec![0, 1])?;
    let w = weak_seminorm(&l);
    for row in &w.matrix {
        println!("{:?}", fmt_vec(row));
    }

    let r = proximity_test(&[2, 3], &[4, 5], &l, &rat(1, 4))?;
    println!("proximity at 1/4: {:?}", r.verdict);
    println!("  {}", r.caveat.unwrap_or_default());

    let net = gromov_approximant(&l, &rat(1, 4))?;
    println!(
        "net representatives {:?}, verified {}",
        net.representatives,
        net.verify(&l, &rat(1, 4))
    );

    let f = kuratowski_embed(&s);
    let (a, b) = (
        restrict_katetov(&f[2], &[0, 1])?,
        restrict_katetov(&f[3], &[0, 1])?,
    );
    println!(
        "sup distance {} shrinks to {} on the landmarks",
        sup_distance(&f[2], &f[3])?,
        sup_distance(&a, &b)?
    );
    Ok(())
}
