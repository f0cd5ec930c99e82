use super::group::{describe_invariants, FiniteGroup};
use super::subring::subring_generated;
use super::FusionRing;

fn group_labels(g: &FiniteGroup) -> Vec<String> {
    g.labels()
        .iter()
        .enumerate()
        .map(|(i, l)| if i == 0 { "1".to_string() } else { l.clone() })
        .collect()
}

fn group_name(g: &FiniteGroup) -> String {
    match g.invariants() {
        Some(f) => describe_invariants(&f),
        None => format!("G{}", g.order()),
    }
}

/// The integral group ring `ZG`.
pub fn construct_group_ring(g: &FiniteGroup) -> FusionRing {
    let n = g.order();
    let mut tensor = vec![0u32; n * n * n];
    for a in 0..n {
        for b in 0..n {
            tensor[(a * n + b) * n + g.mul(a, b)] = 1;
        }
    }
    let dual = (0..n).map(|a| g.inverse(a)).collect();
    FusionRing::from_flat(format!("Z[{}]", group_name(g)), group_labels(g), dual, tensor)
}

/// The near-group ring `R(G, ℓ)`: `G ∪ {ρ}` with `gρ = ρg = ρ` and `ρ² = ℓρ + Σ g`.
pub fn construct_near_group(g: &FiniteGroup, ell: u32) -> FusionRing {
    let n = g.order();
    let r = n + 1;
    let rho = n;
    let mut tensor = vec![0u32; r * r * r];
    let idx = |i: usize, j: usize, k: usize| (i * r + j) * r + k;
    for a in 0..n {
        for b in 0..n {
            tensor[idx(a, b, g.mul(a, b))] = 1;
        }
        tensor[idx(a, rho, rho)] = 1;
        tensor[idx(rho, a, rho)] = 1;
        tensor[idx(rho, rho, a)] = 1;
    }
    tensor[idx(rho, rho, rho)] = ell;
    let mut labels = group_labels(g);
    labels.push("ρ".into());
    let mut dual: Vec<usize> = (0..n).map(|a| g.inverse(a)).collect();
    dual.push(rho);
    FusionRing::from_flat(format!("R({},{ell})", group_name(g)), labels, dual, tensor)
}

/// Tensor product of based rings; basis pairs `(i, j)` sit at `i·rank(b) + j`.
pub fn direct_product(a: &FusionRing, b: &FusionRing) -> FusionRing {
    let (ra, rb) = (a.rank(), b.rank());
    let r = ra * rb;
    let mut tensor = vec![0u32; r * r * r];
    let pa: Vec<Vec<(usize, u32)>> = (0..ra * ra).map(|ij| a.product(ij / ra, ij % ra)).collect();
    let pb: Vec<Vec<(usize, u32)>> = (0..rb * rb).map(|ij| b.product(ij / rb, ij % rb)).collect();
    for i1 in 0..ra {
        for i2 in 0..rb {
            for j1 in 0..ra {
                for j2 in 0..rb {
                    let x = i1 * rb + i2;
                    let y = j1 * rb + j2;
                    for &(k1, c1) in &pa[i1 * ra + j1] {
                        for &(k2, c2) in &pb[i2 * rb + j2] {
                            tensor[(x * r + y) * r + k1 * rb + k2] = c1 * c2;
                        }
                    }
                }
            }
        }
    }
    let labels = (0..r)
        .map(|x| {
            let (la, lb) = (a.label(x / rb), b.label(x % rb));
            if x == 0 {
                "1".to_string()
            } else {
                format!("({la},{lb})")
            }
        })
        .collect();
    let dual = (0..r).map(|x| a.dual(x / rb) * rb + b.dual(x % rb)).collect();
    FusionRing::from_flat(format!("{}×{}", a.name(), b.name()), labels, dual, tensor)
}

/// `R(m, n)`: the subring of `ZC_{2^m} × R(C_2^n, 0)` generated by `g × ρ`.
pub fn construct_rmn(m: u32, n: u32) -> FusionRing {
    assert!(m >= 1 && n >= 1, "R(m,n) needs m, n >= 1");
    let cyc = construct_group_ring(&FiniteGroup::cyclic(1 << m));
    let factors = vec![2usize; n as usize];
    let near = construct_near_group(&FiniteGroup::abelian(&factors), 0);
    let big = direct_product(&cyc, &near);
    let rho = 1usize << n;
    let seed = near.rank() + rho; // (g, ρ) with g the generator of C_{2^m}
    subring_generated(&big, &[seed]).ring.with_name(format!("R({m},{n})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::invertibles;

    #[test]
    fn constructions_satisfy_axioms() {
        for ell in 0..4 {
            for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(3), FiniteGroup::abelian(&[2, 2]), FiniteGroup::quaternion()] {
                let r = construct_near_group(&g, ell);
                assert!(r.verify_axioms().is_pass(), "{}", r.name());
                assert_eq!(r.rank(), g.order() + 1);
            }
        }
        assert!(construct_group_ring(&FiniteGroup::quaternion()).verify_axioms().is_pass());
    }

    #[test]
    fn group_ring_shapes() {
        let r = construct_group_ring(&FiniteGroup::abelian(&[2, 2]));
        assert_eq!(r.rank(), 4);
        assert_eq!(r.name(), "Z[C2^2]");
        assert_eq!(construct_group_ring(&FiniteGroup::quaternion()).rank(), 8);
    }

    #[test]
    fn rmn_counts() {
        // closure oracle counts
        for (m, n, rank) in [(1, 1, 3), (2, 2, 10), (1, 2, 5)] {
            let r = construct_rmn(m, n);
            assert_eq!(r.rank(), rank, "R({m},{n})");
            assert!(r.verify_axioms().is_pass());
        }
        let r12 = construct_rmn(1, 2);
        assert_eq!(invertibles(&r12).order(), 4);
        let rho = (0..5).find(|&x| !invertibles(&r12).contains(x)).unwrap();
        let sq = r12.product(rho, rho);
        assert_eq!(sq.len(), 4);
        assert!(sq.iter().all(|&(k, c)| c == 1 && invertibles(&r12).contains(k)));
    }

    #[test]
    fn products() {
        let c2 = construct_group_ring(&FiniteGroup::cyclic(2));
        let c3 = construct_group_ring(&FiniteGroup::cyclic(3));
        let ising = construct_near_group(&FiniteGroup::cyclic(2), 0);
        let p = direct_product(&ising, &c3);
        assert_eq!(p.rank(), 9);
        assert_eq!(invertibles(&p).order(), 6);
        assert!(p.verify_axioms().is_pass());
        let cc = direct_product(&c2, &c2);
        assert_eq!(invertibles(&cc).invariants, Some(vec![2, 2]));
    }
}
