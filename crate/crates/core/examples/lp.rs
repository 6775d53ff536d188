//! Norms of the separating step functions as exact powers of two.

use mslab::banach::lp_counterexample;
use mslab::random::sub_rng;
use mslab::{int, rat};

fn main() -> mslab::Result<()> {
    let mut rng = sub_rng(42, 0);
    for p in [int(1), rat(3, 2), int(2), int(3), int(5)] {
        let r = lp_counterexample(&p, 20, &mut rng)?;
        let w = r.witness.unwrap();
        println!(
            "p = {p}: |w - v| = 2^{}, |w' - v| = 2^{}, separated {}",
            w["norm_w_minus_v"]["exponent"].as_str().unwrap(),
            w["norm_w_prime_minus_v"]["exponent"].as_str().unwrap(),
            w["separated"]
        );
    }
    Ok(())
}
