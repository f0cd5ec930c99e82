//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gnq_core::premetric::{make_premetric, PreMetricGroup};
use gnq_core::ring::group::AbelianGroup;
use gnq_core::ring::FusionRing;
use gnq_core::scalars::RationalAngle;
use rand::Rng;

/// Direct transcription of the axioms on the dense tensor, cheapest checks first.
pub fn naive_axioms(rank: usize, dual: &[usize], n: &[Vec<Vec<u32>>]) -> bool {
    if dual[0] != 0 {
        return false;
    }
    for i in 0..rank {
        if dual[dual[i]] != i {
            return false;
        }
        for k in 0..rank {
            let delta = (i == k) as u32;
            if n[0][i][k] != delta || n[i][0][k] != delta {
                return false;
            }
        }
        for j in 0..rank {
            if n[i][j][0] != (j == dual[i]) as u32 {
                return false;
            }
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                if n[i][j][k] != n[dual[j]][dual[i]][dual[k]] {
                    return false;
                }
            }
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                for l in 0..rank {
                    let left: u64 = (0..rank).map(|m| n[i][j][m] as u64 * n[m][k][l] as u64).sum();
                    let right: u64 = (0..rank).map(|m| n[j][k][m] as u64 * n[i][m][l] as u64).sum();
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn ring_ok(ring: &FusionRing) -> bool {
    naive_axioms(ring.rank(), ring.duals(), &ring.tensor())
}

/// Largest eigenvalue of a nonnegative matrix with a positive Perron vector.
pub fn perron(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        // iterate on M + I to break periodicity
        let w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| m[i][j] * v[j]).sum::<f64>()).collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        let diff = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        lambda = norm - 1.0;
        if diff < 1e-15 {
            break;
        }
    }
    lambda
}

/// Left multiplication by `x` as a float matrix, acting on column vectors.
pub fn left_matrix(ring: &FusionRing, x: usize) -> Vec<Vec<f64>> {
    let r = ring.rank();
    (0..r).map(|k| (0..r).map(|j| ring.n(x, j, k) as f64).collect()).collect()
}

/// Dihedral group of order `2n` as a Cayley table; elements `r^a s^b` at index `2a + b`.
pub fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    let idx = |a: usize, b: usize| 2 * (a % n) + b;
    let mut t = vec![vec![0; 2 * n]; 2 * n];
    for a1 in 0..n {
        for b1 in 0..2 {
            for a2 in 0..n {
                for b2 in 0..2 {
                    // r^a1 s^b1 r^a2 s^b2 = r^(a1 ± a2) s^(b1+b2)
                    let a = if b1 == 0 { a1 + a2 } else { a1 + n - a2 };
                    t[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                }
            }
        }
    }
    t
}

/// Every tensor reachable with `G` acting freely through `G/H`, an arbitrary invertible
/// part `alpha ⊆ G`, an arbitrary duality on the noninvertibles and `β ∈ [0, bound]^{G/H}`,
/// keyed by `r`. Nothing is pruned before the axiom check.
pub fn naive_gnq(group: &AbelianGroup, subgroup: &[usize], bound: u32) -> BTreeMap<u32, BTreeSet<(Vec<usize>, Vec<u32>)>> {
    let n = group.order();
    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    for g in 0..n {
        let c: BTreeSet<usize> = subgroup.iter().map(|&h| group.add(g, h)).collect();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    cosets.sort_by_key(|c| *c.iter().next().unwrap());
    let m = cosets.len();
    let coset_of = |g: usize| cosets.iter().position(|c| c.contains(&g)).unwrap();
    let rep = |c: usize| *cosets[c].iter().next().unwrap();
    let rank = n + m;

    let mut involutions = Vec::new();
    fn involutions_of(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        let m = p.len();
        if i == m {
            out.push(p.clone());
            return;
        }
        if p[i] != usize::MAX {
            return involutions_of(p, i + 1, out);
        }
        for j in i..m {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                involutions_of(p, i + 1, out);
                p[i] = usize::MAX;
                p[j] = usize::MAX;
            }
        }
    }
    involutions_of(&mut vec![usize::MAX; m], 0, &mut involutions);

    let mut out: BTreeMap<u32, BTreeSet<(Vec<usize>, Vec<u32>)>> = BTreeMap::new();
    for tau in &involutions {
        for alpha_mask in 0u32..(1 << n) {
            let mut beta = vec![0u32; m];
            loop {
                let mut t = vec![vec![vec![0u32; rank]; rank]; rank];
                for a in 0..n {
                    for b in 0..n {
                        t[a][b][group.add(a, b)] = 1;
                    }
                    for c in 0..m {
                        let s = n + coset_of(group.add(a, rep(c)));
                        t[a][n + c][s] = 1;
                        t[n + c][a][s] = 1;
                    }
                }
                for a in 0..m {
                    for b in 0..m {
                        let base = group.add(rep(a), rep(b));
                        for x in (0..n).filter(|x| alpha_mask >> x & 1 == 1) {
                            t[n + a][n + b][group.add(base, x)] += 1;
                        }
                        for (u, &mult) in beta.iter().enumerate() {
                            t[n + a][n + b][n + coset_of(group.add(base, rep(u)))] += mult;
                        }
                    }
                }
                let mut dual: Vec<usize> = (0..n).map(|x| group.neg(x)).collect();
                dual.extend(tau.iter().map(|&c| n + c));
                if naive_axioms(rank, &dual, &t) {
                    let x0 = n;
                    let xs = dual[x0];
                    let inv: u32 = (0..n).map(|g| t[x0][xs][g]).sum();
                    let r: u32 = (n..rank).map(|z| t[x0][xs][z]).sum();
                    // X_0 must be noninvertible and fixed exactly by H
                    let fixed: Vec<usize> = (0..n).filter(|&g| t[g][x0][x0] == 1).collect();
                    if inv + r > 1 && fixed == subgroup {
                        let flat: Vec<u32> = t.iter().flatten().flatten().copied().collect();
                        out.entry(r).or_default().insert((dual, flat));
                    }
                }
                // next β
                let mut i = 0;
                while i < m && beta[i] == bound {
                    beta[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
                beta[i] += 1;
            }
        }
    }
    out
}

/// A random quadratic form `Σ a_i x_i²/(2n_i or n_i) + Σ c_ij x_i x_j / gcd(n_i, n_j)`.
pub fn random_premetric<R: Rng>(rng: &mut R, max_order: usize) -> PreMetricGroup {
    let order = rng.random_range(1..=max_order);
    let shapes = gnq_core::ring::group::abelian_groups_of_order(order);
    let factors = shapes[rng.random_range(0..shapes.len())].clone();
    let k = factors.len();
    let diag: Vec<i64> = factors
        .iter()
        .map(|&f| if rng.random_bool(0.5) { 0 } else { rng.random_range(0..2 * f as i64) })
        .collect();
    let mut cross = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(0.4) {
                cross[i][j] = rng.random_range(0..8);
            }
        }
    }
    let g = AbelianGroup::new(if factors.is_empty() { vec![1] } else { factors.clone() });
    let q: Vec<RationalAngle> = (0..g.order())
        .map(|idx| {
            let x = if factors.is_empty() { vec![] } else { g.to_tuple(idx) };
            let mut total = RationalAngle::zero();
            for i in 0..k {
                let n = factors[i] as i64;
                let den = if n % 2 == 0 { 2 * n } else { n };
                total = total + RationalAngle::new(diag[i] * (x[i] * x[i]) as i64, den);
                for j in i + 1..k {
                    let gcd = gcd(factors[i], factors[j]) as i64;
                    total = total + RationalAngle::new(cross[i][j] * (x[i] * x[j]) as i64, gcd);
                }
            }
            total
        })
        .collect();
    make_premetric(&factors, q).expect("constructed forms are quadratic")
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Subgroups `H` with `q|_H = 0` and `b(H, G) = 0`.
pub fn admissible_subgroups(pm: &PreMetricGroup) -> Vec<Vec<usize>> {
    let factors = if pm.factors().is_empty() { vec![1] } else { pm.factors().to_vec() };
    let g = AbelianGroup::new(factors);
    let order = pm.order();
    let radical: Vec<usize> = (0..order)
        .filter(|&x| (0..order).all(|y| (pm.q(pm.add(x, y)) - pm.q(x) - pm.q(y)).is_zero()))
        .collect();
    g.subgroups()
        .into_iter()
        .filter(|h| h.iter().all(|&x| pm.q(x).is_zero() && radical.contains(&x)))
        .collect()
}
