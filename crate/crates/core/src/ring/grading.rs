use serde::Serialize;

use super::dims::fpdim_basis;
use super::group::{abelian_invariants, describe_invariants, table_is_abelian};
use super::subring::adjoint_subring;
use super::{FusionRing, RingError};

/// A group grading of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingStructure {
    /// Components, each sorted, ordered by least element (so component 0 holds the unit).
    pub components: Vec<Vec<usize>>,
    pub group_table: Vec<Vec<usize>>,
    pub trivial_component: usize,
    pub invariants: Option<Vec<usize>>,
    pub group_name: String,
}

impl GradingStructure {
    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.components.iter().position(|c| c.contains(&x)).expect("x lies in some component")
    }

    /// True when every component of `self` lies inside one component of `coarser`.
    pub fn refines(&self, coarser: &GradingStructure) -> bool {
        self.components.iter().all(|c| {
            let target = coarser.component_of(c[0]);
            c.iter().all(|&x| coarser.component_of(x) == target)
        })
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.invariants.as_ref().is_some_and(|f| f.iter().all(|&n| n == 2))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

/// Builds the structure from a partition, checking products of components stay in one component.
fn from_partition(ring: &FusionRing, components: Vec<Vec<usize>>) -> Result<GradingStructure, RingError> {
    let mut comp = vec![0usize; ring.rank()];
    for (c, members) in components.iter().enumerate() {
        for &x in members {
            comp[x] = c;
        }
    }
    let n = components.len();
    let mut table = vec![vec![usize::MAX; n]; n];
    for x in 0..ring.rank() {
        for y in 0..ring.rank() {
            for k in ring.support(x, y) {
                let (g, h) = (comp[x], comp[y]);
                if table[g][h] == usize::MAX {
                    table[g][h] = comp[k];
                } else if table[g][h] != comp[k] {
                    return Err(RingError::GradingInconsistent { left: g, right: h });
                }
            }
        }
    }
    let invariants = table_is_abelian(&table).then(|| abelian_invariants(&table));
    let group_name = match &invariants {
        Some(f) => describe_invariants(f),
        None => format!("nonabelian order {n}"),
    };
    Ok(GradingStructure {
        components,
        group_table: table,
        trivial_component: comp[0],
        invariants,
        group_name,
    })
}

/// Universal grading: `x ~ y` when `y` occurs in `a·x` for an adjoint basis element `a`.
pub fn universal_grading(ring: &FusionRing) -> Result<GradingStructure, RingError> {
    let ad = adjoint_subring(ring);
    let mut uf = UnionFind::new(ring.rank());
    for &a in &ad.embedding {
        for x in 0..ring.rank() {
            let ys: Vec<usize> = ring.support(a, x).collect();
            for y in ys {
                uf.union(x, y);
            }
        }
    }
    let g = from_partition(ring, uf.classes())?;
    debug_assert_eq!(g.components[g.trivial_component], ad.embedding);
    Ok(g)
}

/// Finest coarsening of the rational-ratio classes of FPdims that is a grading.
pub fn dimensional_grading(ring: &FusionRing) -> Result<GradingStructure, RingError> {
    let dims = fpdim_basis(ring);
    let exact = dims.exact()?;
    let r = ring.rank();
    let mut uf = UnionFind::new(r);
    for x in 0..r {
        for y in 0..x {
            if exact[x].rational_ratio(&exact[y]) {
                uf.union(x, y);
            }
        }
    }
    loop {
        let mut changed = false;
        let mut image: Vec<Vec<Option<usize>>> = vec![vec![None; r]; r];
        for x in 0..r {
            for y in 0..r {
                let (cx, cy) = (uf.find(x), uf.find(y));
                let ks: Vec<usize> = ring.support(x, y).collect();
                for k in ks {
                    let ck = uf.find(k);
                    match image[cx][cy] {
                        None => image[cx][cy] = Some(ck),
                        Some(prev) => {
                            if uf.union(prev, ck) {
                                changed = true;
                            }
                            image[cx][cy] = Some(uf.find(prev));
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    from_partition(ring, uf.classes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{catalog::catalog_get, construct_group_ring, construct_near_group, construct_rmn, FiniteGroup};

    #[test]
    fn universal_examples() {
        let zg = construct_group_ring(&FiniteGroup::abelian(&[2, 3]));
        let u = universal_grading(&zg).unwrap();
        assert_eq!(u.order(), 6);
        assert_eq!(u.invariants, Some(vec![6]));
        assert_eq!(universal_grading(&catalog_get("fib").unwrap()).unwrap().order(), 1);
        for (m, n) in [(1, 1), (2, 1), (3, 2)] {
            let u = universal_grading(&construct_rmn(m, n)).unwrap();
            assert_eq!(u.invariants, Some(vec![1 << m]), "R({m},{n})");
        }
    }

    #[test]
    fn dimensional_examples() {
        let ising = construct_near_group(&FiniteGroup::cyclic(2), 0);
        let d = dimensional_grading(&ising).unwrap();
        assert_eq!(d.components, vec![vec![0, 1], vec![2]]);
        assert!(d.is_elementary_abelian_2());
        let fib = dimensional_grading(&catalog_get("fib").unwrap()).unwrap();
        assert_eq!(fib.order(), 1);
        let zg = dimensional_grading(&construct_group_ring(&FiniteGroup::cyclic(4))).unwrap();
        assert_eq!(zg.order(), 1);
    }

    #[test]
    fn dimensional_is_quotient_of_universal() {
        for name in ["fib", "gnq8", "ising", "rep_q8", "rep_s3"] {
            let r = catalog_get(name).unwrap();
            let u = universal_grading(&r).unwrap();
            let d = dimensional_grading(&r).unwrap();
            assert!(u.refines(&d), "{name}");
            assert!(d.order() == 1 || d.is_elementary_abelian_2());
        }
    }
}
