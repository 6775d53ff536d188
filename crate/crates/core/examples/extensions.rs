//! The three one-point constructions, including a case where the shifted copy
//! formula does not give a metric.

use mslab::rational::fmt_vec;
use mslab::urysohn::{ma_extension, prop53_extension, uwmt_extension, BfState, MaRequest};
use mslab::{int, rat, Error, MetricSpace};

fn show(s: &MetricSpace) {
    for i in 0..s.len() {
        println!("  {:>4} {:?}", s.labels()[i], fmt_vec(s.row(i)));
    }
}

fn main() -> mslab::Result<()> {
    // z, x, y with d(x,z) = 1/2, d(y,z) = 3/5, d(x,y) = 1/5
    let s = MetricSpace::new(
        vec!["z".into(), "x".into(), "y".into()],
        vec![
            vec![int(0), rat(1, 2), rat(3, 5)],
            vec![rat(1, 2), int(0), rat(1, 5)],
            vec![rat(3, 5), rat(1, 5), int(0)],
        ],
        int(1),
    )?;

    let req = MaRequest {
        space: s.clone(),
        f: vec![0],
        x: 1,
        y: 2,
        delta: rat(1, 4),
    };
    let out = ma_extension(&req)?;
    println!("y' at distance 1/4 from x, same distances to F:");
    show(&out.space);

    let out = uwmt_extension(&s, 1, 2, &[0])?;
    println!("copy of z shifted along x -> y:");
    show(&out.space);

    // collinear b, x, y, a at 1/10 spacing: the copies violate a triangle
    let pos = [rat(-1, 10), int(0), rat(1, 10), rat(2, 10)];
    let d = pos
        .iter()
        .map(|p| pos.iter().map(|q| (p - q).max(q - p)).collect())
        .collect();
    let line = MetricSpace::from_matrix(d, int(1))?;
    match uwmt_extension(&line, 1, 2, &[3, 0]) {
        Err(Error::MetricFailure(v)) => println!("collinear input: {v}"),
        other => println!("collinear input: {other:?}"),
    }

    let st = BfState::new(vec![(1, 1)], rat(1, 4));
    let out = prop53_extension(&s, &st, 2)?;
    println!("z' for the identity on x, eps = 1/4:");
    show(&out.space);
    Ok(())
}
