//! Two Fraisse rounds from a two-point seed, then back-and-forth inside the result.

use mslab::urysohn::{
    back_and_forth_extend, finite_injectivity_check, fraisse_step, Approximant, BfState,
};
use mslab::{int, rat, MetricSpace};

fn main() -> mslab::Result<()> {
    let seed = MetricSpace::from_matrix(
        vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]],
        int(1),
    )?;
    let mut a = Approximant::seed(&seed, 4, 2)?;
    for _ in 0..2 {
        a = fraisse_step(&a)?;
        println!("round {}: {} points", a.rounds(), a.len());
    }
    a.to_metric_space()?;
    println!("full triangle scan passed");

    let over = a.snapshot(1)?;
    let r = finite_injectivity_check(&a, &over, 2, 4)?;
    println!(
        "every grid katetov profile over pairs of round 1 is realized: {:?} {:?}",
        r.verdict, r.counts
    );

    let mut st = BfState::identity(&[over[0]], rat(1, 4));
    st = back_and_forth_extend(&a, &st, over[5])?;
    println!("pairs after one step: {:?}", st.pairs);
    Ok(())
}
