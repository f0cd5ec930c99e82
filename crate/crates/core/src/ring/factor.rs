use serde::Serialize;

use super::action::{invertibles, left_action, right_action};
use super::construct::{construct_group_ring, direct_product};
use super::group::{abelian_invariants, all_subgroups, describe_invariants, FiniteGroup};
use super::subring::{adjoint_subring, closure_set};
use super::FusionRing;

/// `ring ≅ core × ZL`, with the witness bijection from the product basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedFactorization {
    #[serde(skip)]
    pub core: FusionRing,
    pub core_embedding: Vec<usize>,
    /// Ring indices of `L`, identity first.
    pub l_elements: Vec<usize>,
    pub l_invariants: Vec<usize>,
    pub l_name: String,
    /// `product_to_ring[i·|L| + j]` is the ring index of `core_i · l_j`.
    pub product_to_ring: Vec<usize>,
}

impl PointedFactorization {
    pub fn l_order(&self) -> usize {
        self.l_elements.len()
    }

    /// `ZL` as a fusion ring.
    pub fn l_ring(&self, ring: &FusionRing) -> FusionRing {
        l_group_ring(ring, &self.l_elements)
    }
}

fn l_group_ring(ring: &FusionRing, l: &[usize]) -> FusionRing {
    let pos = |x: usize| l.iter().position(|&y| y == x).expect("L closed");
    let table: Vec<Vec<usize>> = l.iter().map(|&a| l.iter().map(|&b| pos(left_action(ring, a, b))).collect()).collect();
    let labels = l.iter().map(|&x| ring.label(x).to_string()).collect();
    let g = FiniteGroup::from_table(table).expect("subgroup table").with_labels(labels);
    construct_group_ring(&g)
}

/// Complements `S ⊇ adjoint` meeting every `L`-orbit exactly once.
fn find_complement(ring: &FusionRing, start: Vec<usize>, orbit_of: &[usize], n_orbits: usize) -> Option<Vec<usize>> {
    let mut hit = vec![false; n_orbits];
    for &s in &start {
        if std::mem::replace(&mut hit[orbit_of[s]], true) {
            return None;
        }
    }
    let Some(missing) = hit.iter().position(|h| !h) else {
        return Some(start);
    };
    for y in (0..ring.rank()).filter(|&y| orbit_of[y] == missing) {
        let mut seeds = start.clone();
        seeds.push(y);
        let next = closure_set(ring, &seeds);
        if let Some(found) = find_complement(ring, next, orbit_of, n_orbits) {
            return Some(found);
        }
    }
    None
}

fn try_subgroup(ring: &FusionRing, l: &[usize], adjoint: &[usize]) -> Option<PointedFactorization> {
    let r = ring.rank();
    for &g in l {
        for x in 0..r {
            if left_action(ring, g, x) != right_action(ring, x, g) || (g != 0 && left_action(ring, g, x) == x) {
                return None;
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; r];
    let mut n_orbits = 0;
    for x in 0..r {
        if orbit_of[x] == usize::MAX {
            for &g in l {
                orbit_of[left_action(ring, g, x)] = n_orbits;
            }
            n_orbits += 1;
        }
    }
    let core_idx = find_complement(ring, adjoint.to_vec(), &orbit_of, n_orbits)?;
    let core = ring.restrict(&format!("{}_core", ring.name()), &core_idx);
    let zl = l_group_ring(ring, l);
    let product = direct_product(&core, &zl);
    let nl = l.len();
    let map: Vec<usize> = (0..core_idx.len() * nl)
        .map(|p| left_action(ring, l[p % nl], core_idx[p / nl]))
        .collect();
    for i in 0..map.len() {
        for j in 0..map.len() {
            for k in 0..map.len() {
                if product.n(i, j, k) != ring.n(map[i], map[j], map[k]) {
                    return None;
                }
            }
        }
    }
    let pos_table: Vec<Vec<usize>> = l
        .iter()
        .map(|&a| l.iter().map(|&b| l.iter().position(|&c| c == left_action(ring, a, b)).unwrap()).collect())
        .collect();
    let inv = abelian_invariants(&pos_table);
    Some(PointedFactorization {
        core,
        core_embedding: core_idx,
        l_elements: l.to_vec(),
        l_name: describe_invariants(&inv),
        l_invariants: inv,
        product_to_ring: map,
    })
}

/// Splits off the largest central, freely acting subgroup `L ⊆ G_R` with a complementary
/// based subring containing the adjoint subring. Always succeeds (possibly with `L` trivial).
pub fn factor_pointed(ring: &FusionRing) -> PointedFactorization {
    let group = invertibles(ring);
    let adjoint = adjoint_subring(ring).embedding;
    let mut subgroups = all_subgroups(&group.table);
    subgroups.sort_by_key(|s| std::cmp::Reverse(s.len()));
    for s in subgroups {
        let l: Vec<usize> = s.iter().map(|&p| group.elements[p]).collect();
        if let Some(f) = try_subgroup(ring, &l, &adjoint) {
            return f;
        }
    }
    unreachable!("the trivial subgroup always factors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{catalog::catalog_get, grothendieck_iso};

    #[test]
    fn fib_times_c3() {
        let fib = catalog_get("fib").unwrap();
        let p = direct_product(&fib, &construct_group_ring(&FiniteGroup::cyclic(3)));
        let f = factor_pointed(&p);
        assert_eq!(f.l_invariants, vec![3]);
        assert!(grothendieck_iso(&f.core, &fib).is_isomorphic());
    }

    #[test]
    fn gnq8_does_not_split() {
        let f = factor_pointed(&catalog_get("gnq8").unwrap());
        assert_eq!(f.l_order(), 1);
        assert_eq!(f.core.rank(), 4);
    }

    #[test]
    fn pointed_ring_is_all_l() {
        let f = factor_pointed(&construct_group_ring(&FiniteGroup::cyclic(6)));
        assert!(f.core.is_trivial());
        assert_eq!(f.l_invariants, vec![6]);
    }

    #[test]
    fn reconstruction() {
        let gnq8 = catalog_get("gnq8").unwrap();
        let p = direct_product(&gnq8, &construct_group_ring(&FiniteGroup::abelian(&[2, 2])));
        let f = factor_pointed(&p);
        assert_eq!(f.l_invariants, vec![2, 2]);
        let rebuilt = direct_product(&f.core, &f.l_ring(&p));
        assert!(grothendieck_iso(&rebuilt, &p).is_isomorphic());
    }
}
