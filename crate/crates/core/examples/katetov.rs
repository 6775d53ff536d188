//! Katetov functions: checking, realizing, enumerating, embedding, truncating.

use std::sync::Arc;

use mslab::katetov::{
    enumerate_katetov, extend_by_katetov, is_katetov, kuratowski_embed, sup_distance,
    truncate_katetov,
};
use mslab::rational::fmt_vec;
use mslab::{int, rat, KatetovFn, MetricSpace, Truncation};

fn main() -> mslab::Result<()> {
    let d = vec![
        vec![int(0), rat(1, 2), int(1)],
        vec![rat(1, 2), int(0), rat(1, 2)],
        vec![int(1), rat(1, 2), int(0)],
    ];
    let x = Arc::new(MetricSpace::from_matrix(d, int(1))?);

    // the midpoint profile is realized by a point at distance 1/2 from all three
    let xi = KatetovFn::new(Arc::clone(&x), vec![rat(1, 2); 3])?;
    let (ext, p) = extend_by_katetov(&xi)?;
    println!("new point {p} row: {:?}", fmt_vec(ext.row(p)));

    // too close to both ends
    let bad = is_katetov(&[rat(1, 4), int(1), rat(1, 4)], &x)?;
    println!("(1/4, 1, 1/4) is katetov: {}", bad.is_pass());

    let all = enumerate_katetov(&x, 2)?.count();
    println!("katetov functions on the 1/2 grid: {all}");

    let f = kuratowski_embed(&x);
    println!("sup distance f_0, f_2 = {}", sup_distance(&f[0], &f[2])?);

    let cut = truncate_katetov(&f[0], &rat(3, 4), Truncation::Max)?;
    println!(
        "max(3/4, f_0) = {:?}, katetov: {}",
        fmt_vec(&cut),
        is_katetov(&cut, &x)?.is_pass()
    );
    let low = truncate_katetov(&f[0], &rat(1, 4), Truncation::Min)?;
    println!(
        "min(1/4, f_0) = {:?}, katetov: {}",
        fmt_vec(&low),
        is_katetov(&low, &x)?.is_pass()
    );
    Ok(())
}
