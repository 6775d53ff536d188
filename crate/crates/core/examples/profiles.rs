//! Radial profiles: flags, agreement and the midpoint scan.

use mslab::banach::profile::{
    ball_profile_1_convex, ball_profile_2, ball_profile_2_convex, gurarij_sphere_profile,
    gurarij_sphere_profile_alt,
};
use mslab::banach::{profile_flags, profiles_agree_on};
use mslab::{int, rat};

fn main() -> mslab::Result<()> {
    let horizon = int(4);
    let named = [
        ("max(1, r)", gurarij_sphere_profile()),
        ("1 - r, then r", gurarij_sphere_profile_alt()),
        ("ball h2", ball_profile_2()),
        ("max(1 + r/2, r + 1/2)", ball_profile_1_convex()),
        ("max(1 + r/2, r)", ball_profile_2_convex()),
    ];
    for (name, h) in &named {
        println!("{name:<24} {}", profile_flags(h, &horizon)?.to_json());
    }
    let (a, b) = (&named[3].1, &named[4].1);
    println!(
        "agree on [0,1]: {:?}",
        profiles_agree_on(a, b, &int(0), &int(1))?
    );
    println!("at 3/2: {} vs {}", a.eval(&rat(3, 2)), b.eval(&rat(3, 2)));
    Ok(())
}
