//! Seeded generators for the randomized batteries.
//!
//! Random metrics are shortest-path metrics of complete graphs with random
//! integer weights, capped at the bound, so every distance is a multiple of
//! the chosen `1/q`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::katetov::KatetovFn;
use crate::metric::MetricSpace;
use crate::rational::{from_units, Rational};
use crate::urysohn::{BfState, MaRequest};

/// An independent generator for battery `stream` under `seed`.
pub fn sub_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// All-pairs shortest paths on a unit-weight matrix (Floyd-Warshall), capped at `cap`.
pub fn shortest_paths(w: &mut [Vec<u64>], cap: u64) {
    let n = w.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = w[i][k] + w[k][j];
                if via < w[i][j] {
                    w[i][j] = via;
                }
            }
        }
    }
    for (i, row) in w.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { 0 } else { (*x).min(cap) };
        }
    }
}

fn to_space(units: &[Vec<u64>], q: u64, diam_units: u64) -> MetricSpace {
    let d = units
        .iter()
        .map(|r| r.iter().map(|&u| from_units(u, q)).collect())
        .collect();
    MetricSpace::from_matrix(d, from_units(diam_units, q)).expect("shortest-path metrics are valid")
}

/// Random metric in units of `1/q` with bound `diam_units / q`, as a unit matrix.
pub fn random_metric_units(rng: &mut impl Rng, n: usize, diam_units: u64) -> Vec<Vec<u64>> {
    let mut w = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(1..=diam_units);
            w[i][j] = x;
            w[j][i] = x;
        }
    }
    shortest_paths(&mut w, diam_units);
    w
}

/// A random metric space on `n` points with distances in `(0, 1]` on the `1/q` grid.
pub fn random_space(rng: &mut impl Rng, n: usize, q: u64) -> MetricSpace {
    to_space(&random_metric_units(rng, n, q), q, q)
}

/// Random subset of `pool` (each element kept with probability 1/2), in pool order.
fn random_subset(rng: &mut impl Rng, pool: &[usize]) -> Vec<usize> {
    pool.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A request satisfying both preconditions: `n <= max_points`, `q <= max_denom`,
/// bound 1, `delta` on the `1/q` grid with `delta < 1`.
pub fn random_ma_request(rng: &mut impl Rng, max_points: usize, max_denom: u64) -> MaRequest {
    loop {
        let n = rng.gen_range(2..=max_points);
        let q = rng.gen_range(2..=max_denom);
        let units = random_metric_units(rng, n, q);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let (x, y) = (idx[0], idx[1]);
        let f = random_subset(rng, &idx[2..]);
        // (a) strict lower bound, (b) upper bound, and delta < 1
        let lo = f
            .iter()
            .map(|&z| units[x][z].abs_diff(units[y][z]))
            .max()
            .unwrap_or(0);
        let hi = f
            .iter()
            .map(|&z| units[x][z] + units[y][z])
            .min()
            .unwrap_or(q)
            .min(q - 1);
        if lo + 1 > hi {
            continue;
        }
        let delta = rng.gen_range(lo + 1..=hi);
        return MaRequest {
            space: to_space(&units, q, q),
            f,
            x,
            y,
            delta: from_units(delta, q),
        };
    }
}

/// `(space, x, y, Z)` with distinct indices.
pub fn random_uwmt_input(
    rng: &mut impl Rng,
    max_points: usize,
    max_denom: u64,
) -> (MetricSpace, usize, usize, Vec<usize>) {
    let n = rng.gen_range(2..=max_points);
    let q = rng.gen_range(2..=max_denom);
    let space = random_space(rng, n, q);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let zs = random_subset(rng, &idx[2..]);
    (space, idx[0], idx[1], zs)
}

/// A space holding a valid state and a probe point `z` outside its domain.
///
/// A random base metric on points `A` (containing `z` and the domain) is
/// extended by copies `x_i'` of some domain points; the remaining domain
/// points are fixed (`y_i = x_i`). The graph on `A` plus the copies has an
/// edge of length `d(x_i, x_j)` between the images of any two domain points
/// and matching edges `x_i - x_i'` of length `e_i <= eps`, with independent
/// shifts `e_i`. Mapping each copy back to its original sends any path to a
/// path in `A` that is no longer, so the shortest-path metric keeps
/// `d(y_i, y_j) = d(x_i, x_j)` exactly.
pub fn random_bf_instance(
    rng: &mut impl Rng,
    max_points: usize,
    max_denom: u64,
) -> (MetricSpace, BfState, usize) {
    let q = rng.gen_range(2..=max_denom);
    let m = rng.gen_range(2..=(max_points - 1).max(2));
    let base = random_metric_units(rng, m, q);
    let z = rng.gen_range(0..m);
    let others: Vec<usize> = (0..m).filter(|&i| i != z).collect();
    let mut domain = random_subset(rng, &others);
    if domain.is_empty() {
        domain.push(*others.choose(rng).expect("m >= 2"));
    }
    let room = max_points - m;
    let max_eps = rng.gen_range(1..=q);
    let mut moved: Vec<(usize, u64)> = Vec::new();
    for &x in &domain {
        if moved.len() < room && rng.gen_bool(0.7) {
            moved.push((x, rng.gen_range(1..=max_eps)));
        }
    }
    let n = m + moved.len();
    let inf = u64::MAX / 4;
    let mut w = vec![vec![inf; n]; n];
    for i in 0..m {
        for j in 0..m {
            w[i][j] = base[i][j];
        }
    }
    for (a, &(xa, e)) in moved.iter().enumerate() {
        let ca = m + a;
        w[ca][ca] = 0;
        w[ca][xa] = e;
        w[xa][ca] = e;
        for (b, &(xb, _)) in moved.iter().enumerate() {
            if a != b {
                w[ca][m + b] = base[xa][xb];
            }
        }
        for &xf in domain
            .iter()
            .filter(|x| !moved.iter().any(|(y, _)| y == *x))
        {
            w[ca][xf] = base[xa][xf];
            w[xf][ca] = base[xa][xf];
        }
    }
    shortest_paths(&mut w, q);
    let space = to_space(&w, q, q);
    let pairs = domain
        .iter()
        .map(|&x| match moved.iter().position(|&(y, _)| y == x) {
            Some(a) => (x, m + a),
            None => (x, x),
        })
        .collect();
    let shift = moved.iter().map(|&(_, e)| e).max().unwrap_or(1);
    let eps_units = rng.gen_range(shift..=max_eps.max(shift));
    let st = BfState::new(pairs, from_units(eps_units, q));
    (space, st, z)
}

/// A random space on `n` points and a Katetov function over it, read off the
/// distances to one extra point of a random metric on `n + 1` points.
pub fn random_katetov(rng: &mut impl Rng, n: usize, q: u64) -> KatetovFn {
    random_katetov_family(rng, n, q, 1)
        .pop()
        .expect("one function")
}

/// `count` Katetov functions over one shared random space on `n` points.
pub fn random_katetov_family(rng: &mut impl Rng, n: usize, q: u64, count: usize) -> Vec<KatetovFn> {
    let units = random_metric_units(rng, n + count, q);
    let full = to_space(&units, q, q);
    let space = Arc::new(
        full.subspace(&(0..n).collect::<Vec<_>>())
            .expect("in range"),
    );
    (0..count)
        .map(|k| {
            let values = (0..n).map(|i| full.dist(n + k, i).clone()).collect();
            KatetovFn::new(Arc::clone(&space), values).expect("distance rows are Katetov")
        })
        .collect()
}

/// A grid value in `(0, 1)` on the `1/q` grid (`q >= 2`).
pub fn random_open_unit(rng: &mut impl Rng, q: u64) -> Rational {
    from_units(rng.gen_range(1..q), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_produce_valid_inputs() {
        let mut rng = sub_rng(42, 0);
        for _ in 0..200 {
            let req = random_ma_request(&mut rng, 8, 24);
            req.check_preconditions().unwrap();
            let (s, st, z) = random_bf_instance(&mut rng, 8, 24);
            assert!(s.len() <= 8);
            st.validate(&s).unwrap();
            assert!(!st.domain().any(|x| x == z));
            let xi = random_katetov(&mut rng, 4, 12);
            assert_eq!(xi.values().len(), 4);
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| sub_rng(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| sub_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(sub_rng(7, 3).gen::<u64>(), sub_rng(7, 4).gen::<u64>());
    }
}
