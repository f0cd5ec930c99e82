use serde::Serialize;

use super::dims::fpdim_basis;
use super::FusionRing;

/// Outcome of a Grothendieck-isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IsoSearch {
    /// `bijection[i]` is the image in `b` of basis element `i` of `a`.
    Isomorphic { bijection: Vec<usize> },
    NotIsomorphic { reason: String },
}

impl IsoSearch {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoSearch::Isomorphic { .. })
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            IsoSearch::Isomorphic { bijection } => Some(bijection),
            IsoSearch::NotIsomorphic { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    dim_key: i64,
    self_dual: bool,
    row_entries: Vec<u32>,
    square: Vec<u32>,
    conj_support: usize,
    power_order: usize,
}

/// Smallest `n ≤ rank` with `x^n ∋ 1` along the chain of first supports; a cheap
/// invariant that equals the element order on invertibles.
fn power_order(ring: &FusionRing, x: usize) -> usize {
    let mut cur = x;
    for n in 1..=ring.rank() {
        if cur == 0 {
            return n;
        }
        if ring.product(cur, x).len() != 1 {
            return 0;
        }
        cur = ring.product(cur, x)[0].0;
    }
    0
}

fn signatures(ring: &FusionRing) -> Vec<Signature> {
    let dims = fpdim_basis(ring);
    let r = ring.rank();
    (0..r)
        .map(|x| {
            let mut row_entries: Vec<u32> = (0..r).flat_map(|j| (0..r).map(move |k| (j, k))).map(|(j, k)| ring.n(x, j, k)).filter(|&c| c > 0).collect();
            row_entries.sort_unstable();
            let mut square: Vec<u32> = (0..r).map(|k| ring.n(x, x, k)).filter(|&c| c > 0).collect();
            square.sort_unstable();
            Signature {
                dim_key: (dims.numeric[x] * 1e6).round() as i64,
                self_dual: ring.dual(x) == x,
                row_entries,
                square,
                conj_support: ring.support(x, ring.dual(x)).count(),
                power_order: power_order(ring, x),
            }
        })
        .collect()
}

struct Search<'a> {
    a: &'a FusionRing,
    b: &'a FusionRing,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    f: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn consistent(&self, x: usize) -> bool {
        let fx = self.f[x].unwrap();
        for &i in &self.assigned {
            let fi = self.f[i].unwrap();
            for &j in &self.assigned {
                let fj = self.f[j].unwrap();
                if i != x && j != x {
                    // only triples touching x are new
                    if self.a.n(i, j, x) != self.b.n(fi, fj, fx) {
                        return false;
                    }
                    continue;
                }
                for &k in &self.assigned {
                    let fk = self.f[k].unwrap();
                    if self.a.n(i, j, k) != self.b.n(fi, fj, fk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: usize, y: usize) -> Option<usize> {
        self.f[x] = Some(y);
        self.used[y] = true;
        self.assigned.push(x);
        if !self.consistent(x) {
            self.unassign(x);
            return None;
        }
        Some(x)
    }

    fn unassign(&mut self, x: usize) {
        let y = self.f[x].take().unwrap();
        self.used[y] = false;
        let pos = self.assigned.iter().rposition(|&v| v == x).unwrap();
        self.assigned.remove(pos);
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        if self.f[x].is_some() {
            return self.run(depth + 1);
        }
        let xd = self.a.dual(x);
        for c in self.candidates[x].clone() {
            if self.used[c] {
                continue;
            }
            let cd = self.b.dual(c);
            if self.assign(x, c).is_none() {
                continue;
            }
            let mut paired = None;
            if xd != x {
                if self.f[xd].is_some() || self.used[cd] {
                    self.unassign(x);
                    continue;
                }
                match self.assign(xd, cd) {
                    Some(v) => paired = Some(v),
                    None => {
                        self.unassign(x);
                        continue;
                    }
                }
            }
            if self.run(depth + 1) {
                return true;
            }
            if let Some(v) = paired {
                self.unassign(v);
            }
            self.unassign(x);
        }
        false
    }
}

/// Searches for a unit- and duality-preserving bijection of bases matching the tensors.
pub fn grothendieck_iso(a: &FusionRing, b: &FusionRing) -> IsoSearch {
    let no = |reason: &str| IsoSearch::NotIsomorphic { reason: reason.into() };
    if a.rank() != b.rank() {
        return no("ranks differ");
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut da: Vec<i64> = sa.iter().map(|s| s.dim_key).collect();
    let mut db: Vec<i64> = sb.iter().map(|s| s.dim_key).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return no("FPdim multisets differ");
    }
    let (mut ssa, mut ssb) = (sa.clone(), sb.clone());
    ssa.sort();
    ssb.sort();
    if ssa != ssb {
        return no("basis signatures differ");
    }
    let r = a.rank();
    let candidates: Vec<Vec<usize>> = (0..r).map(|x| (0..r).filter(|&y| sb[y] == sa[x]).collect()).collect();
    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));
    let mut search = Search {
        a,
        b,
        order,
        candidates,
        f: vec![None; r],
        used: vec![false; r],
        assigned: Vec::new(),
    };
    search.f[0] = Some(0);
    search.used[0] = true;
    search.assigned.push(0);
    if !search.consistent(0) {
        return no("units disagree");
    }
    if search.run(0) {
        IsoSearch::Isomorphic {
            bijection: search.f.into_iter().map(|v| v.unwrap()).collect(),
        }
    } else {
        no("exhaustive search found no bijection")
    }
}
