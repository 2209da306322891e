//! Systems of difference constraints `x_a - x_b <= c` and `x_a - x_b < c`.
//!
//! Strict constraints are handled symbolically: every weight is a pair
//! `(value, eps)` compared lexicographically, where a strict constraint
//! contributes `eps = -1`. Bellman-Ford over these pairs decides feasibility
//! exactly; a real solution is then read off as `value + eps * delta` for a
//! small enough rational `delta`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Constraint {
    a: usize,
    b: usize,
    c: BigRational,
    strict: bool,
}

/// A conjunction of difference constraints over `n` rational variables.
#[derive(Clone, Debug, Default)]
pub struct DiffConstraints {
    n: usize,
    cons: Vec<Constraint>,
}

impl DiffConstraints {
    pub fn new(n: usize) -> Self {
        DiffConstraints {
            n,
            cons: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cons.is_empty()
    }

    /// `x_a - x_b <= c`
    pub fn le(&mut self, a: usize, b: usize, c: BigRational) -> &mut Self {
        self.push(a, b, c, false)
    }

    /// `x_a - x_b < c`
    pub fn lt(&mut self, a: usize, b: usize, c: BigRational) -> &mut Self {
        self.push(a, b, c, true)
    }

    /// `x_a - x_b = c`
    pub fn eq(&mut self, a: usize, b: usize, c: BigRational) -> &mut Self {
        self.push(b, a, -c.clone(), false);
        self.push(a, b, c, false)
    }

    fn push(&mut self, a: usize, b: usize, c: BigRational, strict: bool) -> &mut Self {
        assert!(a < self.n && b < self.n, "variable index out of range");
        self.cons.push(Constraint { a, b, c, strict });
        self
    }

    /// A solution, or `None` if the system is infeasible.
    ///
    /// The solution is the shortest-path potential from a virtual source,
    /// perturbed along the strictness counts; it is deterministic.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let mut dist: Vec<(BigRational, i64)> = vec![(BigRational::zero(), 0); self.n];
        let weight = |con: &Constraint| (con.c.clone(), if con.strict { -1 } else { 0 });
        // edge b -> a with weight w: dist[a] <= dist[b] + w
        let mut rounds = 0;
        loop {
            let mut changed = false;
            for con in &self.cons {
                let (wc, we) = weight(con);
                let cand = (&dist[con.b].0 + wc, dist[con.b].1 + we);
                if cand < dist[con.a] {
                    dist[con.a] = cand;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            rounds += 1;
            if rounds > self.n {
                return None;
            }
        }
        let mut delta: Option<BigRational> = None;
        for con in &self.cons {
            let g = &dist[con.b].0 + &con.c - &dist[con.a].0;
            let h = dist[con.a].1 - dist[con.b].1;
            if g.is_positive() && h > 0 {
                let q = g / BigRational::from_integer(h.into());
                if delta.as_ref().is_none_or(|d| &q < d) {
                    delta = Some(q);
                }
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        let delta = delta.map(|d| d * half).unwrap_or_else(BigRational::one);
        let x: Vec<BigRational> = dist
            .into_iter()
            .map(|(v, e)| v + &delta * BigRational::from_integer(e.into()))
            .collect();
        debug_assert!(self.satisfied_by(&x));
        Some(x)
    }

    /// Whether `x` satisfies every constraint.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.cons.iter().all(|con| {
            let lhs = &x[con.a] - &x[con.b];
            if con.strict {
                lhs < con.c
            } else {
                lhs <= con.c
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn strict_cycle_of_zero_weight_is_infeasible() {
        let mut s = DiffConstraints::new(2);
        s.le(0, 1, q(0)).lt(1, 0, q(0));
        assert!(s.solve().is_none());
    }

    #[test]
    fn strict_with_room_is_feasible() {
        let mut s = DiffConstraints::new(3);
        s.lt(0, 1, q(0)).lt(1, 2, q(0)).le(2, 0, q(1));
        let x = s.solve().unwrap();
        assert!(s.satisfied_by(&x));
        assert!(x[0] < x[1] && x[1] < x[2]);
    }

    #[test]
    fn equalities_pin_differences() {
        let mut s = DiffConstraints::new(3);
        s.eq(1, 0, q(3))
            .eq(2, 1, BigRational::new((-1).into(), 2.into()));
        let x = s.solve().unwrap();
        assert_eq!(&x[2] - &x[0], BigRational::new(5.into(), 2.into()));
    }

    #[test]
    fn negative_cycle_is_infeasible() {
        let mut s = DiffConstraints::new(2);
        s.le(0, 1, q(1)).le(1, 0, q(-2));
        assert!(s.solve().is_none());
    }
}
