//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls into the library's solvers.

#![allow(dead_code)]

use std::sync::Arc;

use contextuality::scenario::{Context, Scenario};
use contextuality::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Every bit string of length `n`, first event as the most significant bit.
pub fn all_bitstrings(n: usize) -> Vec<Vec<bool>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect())
        .collect()
}

pub fn brute_exclusive(s: &Scenario) -> Vec<Vec<bool>> {
    all_bitstrings(s.event_count())
        .into_iter()
        .filter(|a| s.contexts().iter().all(|c| c.members.iter().filter(|&&i| a[i]).count() <= 1))
        .collect()
}

pub fn brute_ks(s: &Scenario) -> Vec<Vec<bool>> {
    brute_exclusive(s)
        .into_iter()
        .filter(|a| {
            s.contexts()
                .iter()
                .filter(|c| c.complete)
                .all(|c| c.members.iter().filter(|&&i| a[i]).count() == 1)
        })
        .collect()
}

/// Random valid scenario with `n` events: distinct contexts of size 2..=4,
/// each complete with probability `complete_rate`.
pub fn random_scenario<R: Rng>(rng: &mut R, n: usize, max_contexts: usize, complete_rate: f64) -> Scenario {
    assert!(n >= 2);
    let mut contexts: Vec<Context> = Vec::new();
    let target = rng.gen_range(0..=max_contexts);
    let mut attempts = 0;
    while contexts.len() < target && attempts < 100 {
        attempts += 1;
        let size = rng.gen_range(2..=n.min(4));
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let mut members = idx[..size].to_vec();
        members.sort_unstable();
        if contexts.iter().any(|c| c.members == members) {
            continue;
        }
        contexts.push(Context {
            members,
            complete: rng.gen_bool(complete_rate),
        });
    }
    Scenario::with_numbered_events("random", n, contexts).expect("generated scenario is valid")
}

/// Random rational in `[0, 1]` with denominator up to `den`.
pub fn random_probability<R: Rng>(rng: &mut R, den: i64) -> BigRational {
    let d = rng.gen_range(1..=den);
    q(rng.gen_range(0..=d), d)
}

/// Gaussian elimination over the rationals. Returns the unique solution of
/// `a x = b` if `a` has full column rank and the system is consistent.
pub fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= f.clone() * p.clone();
                }
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[r][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= f.clone() * p.clone();
                }
            }
        }
        r += 1;
    }
    r
}

/// Rows: one per (context, outcome) plus normalization, over `support`.
pub fn marginal_matrix(s: &Scenario, support: &[Vec<bool>]) -> Vec<Vec<BigRational>> {
    let mut rows = Vec::new();
    for c in s.contexts() {
        for outcome in all_bitstrings(c.len()) {
            rows.push(
                support
                    .iter()
                    .map(|a| {
                        let hit = c.members.iter().zip(&outcome).all(|(&i, &o)| a[i] == o);
                        if hit { BigRational::one() } else { BigRational::zero() }
                    })
                    .collect(),
            );
        }
    }
    rows.push(vec![BigRational::one(); support.len()]);
    rows
}

pub fn apply(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|r| r.iter().zip(x).fold(BigRational::zero(), |acc, (c, v)| acc + c.clone() * v.clone()))
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Minimum of `Σ max(0, -xⱼ)` over `a x = b`, by enumerating the vertices of
/// the arrangement `{xⱼ = 0}` restricted to the solution space. `None` if
/// the system has no solution.
pub fn min_negativity_oracle(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<BigRational> {
    let m = a[0].len();
    let r = rank(a);
    let mut best: Option<BigRational> = None;
    for free in subsets(m, r) {
        let sub: Vec<Vec<BigRational>> = a
            .iter()
            .map(|row| free.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let Some(x) = solve_unique(&sub, b) else { continue };
        let neg = x
            .iter()
            .filter(|v| v.is_negative())
            .fold(BigRational::zero(), |acc, v| acc - v.clone());
        if best.as_ref().is_none_or(|cur| neg < *cur) {
            best = Some(neg);
        }
    }
    best
}

/// Whether `{x ≥ 0, a x = b}` is nonempty, via its basic solutions.
pub fn nonnegative_oracle(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a[0].len();
    let r = rank(a);
    subsets(m, r).into_iter().any(|free| {
        let sub: Vec<Vec<BigRational>> = a
            .iter()
            .map(|row| free.iter().map(|&j| row[j].clone()).collect())
            .collect();
        solve_unique(&sub, b).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
    })
}

pub fn arc(s: Scenario) -> Arc<Scenario> {
    Arc::new(s)
}
