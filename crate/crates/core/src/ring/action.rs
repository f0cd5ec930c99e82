use serde::Serialize;

use super::group::{abelian_invariants, closure, describe_invariants, element_order, table_is_abelian};
use super::{FusionRing, RingError};

/// The group `G_R` of invertible basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertibleGroup {
    /// Ring indices, ascending; `elements[0] = 0`.
    pub elements: Vec<usize>,
    /// Cayley table in positions of `elements`.
    pub table: Vec<Vec<usize>>,
    /// Invariant factors when abelian.
    pub invariants: Option<Vec<usize>>,
    pub name: String,
}

impl InvertibleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, ring_index: usize) -> Option<usize> {
        self.elements.iter().position(|&x| x == ring_index)
    }

    pub fn contains(&self, ring_index: usize) -> bool {
        self.elements.contains(&ring_index)
    }

    pub fn is_abelian(&self) -> bool {
        self.invariants.is_some()
    }

    /// Subgroup generated by the given ring indices (which must be invertible).
    pub fn closure_of(&self, ring_indices: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = ring_indices.iter().filter_map(|&x| self.position(x)).collect();
        closure(&self.table, &gens).into_iter().map(|p| self.elements[p]).collect()
    }

    pub(crate) fn from_parts(elements: Vec<usize>, table: Vec<Vec<usize>>) -> Self {
        let invariants = table_is_abelian(&table).then(|| abelian_invariants(&table));
        let name = match &invariants {
            Some(f) => describe_invariants(f),
            None => {
                let orders: Vec<String> =
                    (0..table.len()).map(|a| element_order(&table, a).to_string()).collect();
                format!("nonabelian order {} (element orders {})", table.len(), orders.join(","))
            }
        };
        InvertibleGroup {
            elements,
            table,
            invariants,
            name,
        }
    }
}

/// Basis elements `x` with `x·x* = 1`.
pub fn invertibles(ring: &FusionRing) -> InvertibleGroup {
    let r = ring.rank();
    let elements: Vec<usize> = (0..r)
        .filter(|&x| {
            let xd = ring.dual(x);
            ring.n(x, xd, 0) == 1 && (1..r).all(|k| ring.n(x, xd, k) == 0)
        })
        .collect();
    let table = elements
        .iter()
        .map(|&a| {
            elements
                .iter()
                .map(|&b| {
                    let k = ring.support(a, b).next().expect("invertible product is a basis element");
                    elements.iter().position(|&e| e == k).expect("invertibles closed")
                })
                .collect()
        })
        .collect();
    InvertibleGroup::from_parts(elements, table)
}

/// Orbits of `G_R` acting on the basis by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbits {
    pub orbits: Vec<Vec<usize>>,
    pub generalized_near_group: bool,
}

pub(crate) fn left_action(ring: &FusionRing, g: usize, x: usize) -> usize {
    ring.support(g, x).next().expect("invertible acts by permutation")
}

pub(crate) fn right_action(ring: &FusionRing, x: usize, g: usize) -> usize {
    ring.support(x, g).next().expect("invertible acts by permutation")
}

pub fn orbit_decomposition(ring: &FusionRing) -> Orbits {
    orbits_with(ring, &invertibles(ring))
}

pub(crate) fn orbits_with(ring: &FusionRing, group: &InvertibleGroup) -> Orbits {
    let r = ring.rank();
    let mut seen = vec![false; r];
    let mut orbits = Vec::new();
    for x in 0..r {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = group.elements.iter().map(|&g| left_action(ring, g, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        orbits.push(orbit);
    }
    let generalized_near_group = orbits.len() == 2;
    Orbits {
        orbits,
        generalized_near_group,
    }
}

/// The stabilizer `H_R` of a noninvertible basis element, checked to be the
/// same for every noninvertible element and normal in `G_R`.
pub fn fixed_point_subgroup(ring: &FusionRing) -> Result<Vec<usize>, RingError> {
    let group = invertibles(ring);
    let orbits = orbits_with(ring, &group);
    if !orbits.generalized_near_group {
        return Err(RingError::NotGeneralizedNearGroup(format!(
            "{} orbit(s) under the invertible group",
            orbits.orbits.len()
        )));
    }
    let nonin: Vec<usize> = (0..ring.rank()).filter(|x| !group.contains(*x)).collect();
    let stab = |x: usize| -> Vec<usize> {
        group.elements.iter().copied().filter(|&g| left_action(ring, g, x) == x).collect()
    };
    let h = stab(nonin[0]);
    for &x in &nonin[1..] {
        if stab(x) != h {
            return Err(RingError::NotGeneralizedNearGroup(format!(
                "stabilizers of {} and {} differ",
                ring.label(nonin[0]),
                ring.label(x)
            )));
        }
    }
    // normality: g h g^-1 ∈ H
    for &g in &group.elements {
        let gp = group.position(g).unwrap();
        let ginv = (0..group.order()).find(|&b| group.table[gp][b] == 0).unwrap();
        for &hh in &h {
            let hp = group.position(hh).unwrap();
            let conj = group.table[group.table[gp][hp]][ginv];
            if !h.contains(&group.elements[conj]) {
                return Err(RingError::NotGeneralizedNearGroup(
                    "fixed-point subgroup is not normal".into(),
                ));
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{catalog::catalog_get, construct_group_ring, construct_near_group, construct_rmn, direct_product, FiniteGroup};

    #[test]
    fn invertible_groups() {
        let r22 = construct_rmn(2, 2);
        let g = invertibles(&r22);
        assert_eq!(g.order(), 8);
        assert_eq!(g.invariants, Some(vec![2, 2, 2]));
        assert_eq!(invertibles(&catalog_get("fib").unwrap()).order(), 1);
        let c4 = invertibles(&construct_group_ring(&FiniteGroup::cyclic(4)));
        assert_eq!(c4.invariants, Some(vec![4]));
        assert_eq!(c4.name, "C4");
        let q8 = invertibles(&construct_group_ring(&FiniteGroup::quaternion()));
        assert!(q8.invariants.is_none());
    }

    #[test]
    fn orbits() {
        let rep_q8 = construct_near_group(&FiniteGroup::abelian(&[2, 2]), 0);
        let o = orbit_decomposition(&rep_q8);
        assert!(o.generalized_near_group);
        assert_eq!(o.orbits.iter().map(|v| v.len()).collect::<Vec<_>>(), vec![4, 1]);

        let zg = construct_group_ring(&FiniteGroup::abelian(&[3]));
        assert_eq!(orbit_decomposition(&zg).orbits.len(), 1);

        // direct action oracle: fib × ZC2 has orbits {1, g} and {ρ, ρg}
        let p = direct_product(&catalog_get("fib").unwrap(), &construct_group_ring(&FiniteGroup::cyclic(2)));
        let o = orbit_decomposition(&p);
        assert_eq!(o.orbits, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn fixed_points() {
        let g = FiniteGroup::abelian(&[3]);
        let near = construct_near_group(&g, 2);
        assert_eq!(fixed_point_subgroup(&near).unwrap(), vec![0, 1, 2]);

        let r23 = construct_rmn(2, 3);
        assert_eq!(fixed_point_subgroup(&r23).unwrap().len(), 8);

        let ising = catalog_get("ising").unwrap();
        assert_eq!(fixed_point_subgroup(&ising).unwrap(), vec![0, 1]);

        let zg = construct_group_ring(&FiniteGroup::cyclic(2));
        assert!(matches!(fixed_point_subgroup(&zg), Err(RingError::NotGeneralizedNearGroup(_))));
    }
}
