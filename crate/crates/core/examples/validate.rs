//! Validate distance matrices and read off the first broken axiom.

use mslab::metric::{validate_metric, validate_pseudometric};
use mslab::{int, rat, Check};

fn main() -> mslab::Result<()> {
    let good = vec![
        vec![int(0), rat(1, 2), int(1)],
        vec![rat(1, 2), int(0), rat(1, 2)],
        vec![int(1), rat(1, 2), int(0)],
    ];
    println!(
        "path of length 1: {:?}",
        validate_metric(&good, &int(1))?.is_pass()
    );

    let mut bad = good.clone();
    bad[0][2] = rat(6, 5);
    bad[2][0] = rat(6, 5);
    match validate_metric(&bad, &rat(3, 2))? {
        Check::Pass => println!("unexpected pass"),
        Check::Fail(v) => println!("stretched: {v}"),
    }

    let glued = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
    println!(
        "two points at distance 0: metric {}, pseudometric {}",
        validate_metric(&glued, &int(1))?.is_pass(),
        validate_pseudometric(&glued, &int(1))?.is_pass()
    );
    Ok(())
}
