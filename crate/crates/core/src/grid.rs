//! Integer-unit enumeration of Katetov functions.
//!
//! Distances are scaled to a common unit so the inner loop never touches
//! big rationals. Candidate values for coordinate `k` given the earlier
//! coordinates `a_j` form an interval:
//! `max_j |a_j - d(j,k)| <= v <= min(bound, min_j a_j + d(j,k))`,
//! which is exactly the pairwise Katetov condition solved for `v`.

/// Depth-first lexicographic walk over all Katetov vectors whose entries are
/// multiples of `step` in `[0, bound]`.
#[derive(Debug, Clone)]
pub struct KatetovUnits {
    n: usize,
    dist: Vec<u64>,
    bound: u64,
    step: u64,
    vals: Vec<u64>,
    his: Vec<u64>,
    started: bool,
    done: bool,
}

impl KatetovUnits {
    /// `dist` is the row-major `n x n` distance matrix in units.
    pub fn new(n: usize, dist: Vec<u64>, bound: u64, step: u64) -> Self {
        assert!(step > 0, "step must be positive");
        assert_eq!(dist.len(), n * n);
        KatetovUnits {
            n,
            dist,
            bound,
            step,
            vals: Vec::with_capacity(n),
            his: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    fn interval(&self, k: usize) -> Option<(u64, u64)> {
        let mut lo = 0u64;
        let mut hi = self.bound;
        for (j, &a) in self.vals.iter().enumerate() {
            let d = self.dist[j * self.n + k];
            lo = lo.max(a.abs_diff(d));
            hi = hi.min(a + d);
        }
        let lo = lo.div_ceil(self.step) * self.step;
        (lo <= hi).then_some((lo, hi))
    }

    fn descend(&mut self) -> bool {
        while self.vals.len() < self.n {
            match self.interval(self.vals.len()) {
                Some((lo, hi)) => {
                    self.vals.push(lo);
                    self.his.push(hi);
                }
                None => return false,
            }
        }
        true
    }

    fn increment(&mut self) -> bool {
        while let (Some(v), Some(h)) = (self.vals.pop(), self.his.pop()) {
            if v + self.step <= h {
                self.vals.push(v + self.step);
                self.his.push(h);
                return true;
            }
        }
        false
    }

    fn settle(&mut self) -> bool {
        loop {
            if self.descend() {
                return true;
            }
            if !self.increment() {
                return false;
            }
        }
    }
}

impl Iterator for KatetovUnits {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.settle()
        } else {
            self.increment() && self.settle()
        };
        if ok {
            Some(self.vals.clone())
        } else {
            self.done = true;
            None
        }
    }
}
