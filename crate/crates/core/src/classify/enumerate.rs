use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::ring::group::AbelianGroup;
use crate::ring::FusionRing;

pub const MAX_ENUM_ORDER: usize = 16;
pub const MAX_MULT_BOUND: u32 = 4;

/// How `d` is pinned down: directly by `r`, or by `(k, |H|)` with `r = k|H|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DSpec {
    Multiplicity(u32),
    KH { k: u32, h: u32 },
}

/// `G/H` with cosets numbered by their least element.
#[derive(Clone, Debug)]
pub struct CosetData {
    pub group: AbelianGroup,
    pub subgroup: Vec<usize>,
    pub coset_of: Vec<usize>,
    pub reps: Vec<usize>,
}

impl CosetData {
    pub fn new(group: &AbelianGroup, subgroup: &[usize]) -> Result<Self, ClassifyError> {
        let mut h = subgroup.to_vec();
        h.sort_unstable();
        h.dedup();
        let n = group.order();
        if h.iter().any(|&x| x >= n) || group.subgroup_closure(&h) != h {
            return Err(ClassifyError::Precondition(format!("{h:?} is not a subgroup")));
        }
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in &h {
                coset_of[group.add(g, x)] = reps.len();
            }
            reps.push(g);
        }
        Ok(CosetData {
            group: group.clone(),
            subgroup: h,
            coset_of,
            reps,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.group.add(self.reps[a], self.reps[b])]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.coset_of[self.group.neg(self.reps[a])]
    }
}

/// The ring on `G ⊔ {X_c : c ∈ G/H}` with `g X_c = X_c g = X_{c+[g]}`, `X_c* = X_{s−c}`,
/// and `X_a X_b = g_a g_b (Σ_g alpha_g g + Σ_t beta_t X_t)` on coset representatives.
pub fn equivariant_ring(cosets: &CosetData, s: usize, alpha: &[u32], beta: &[u32], name: &str) -> FusionRing {
    let g = &cosets.group;
    let n = g.order();
    let m = cosets.index();
    let rank = n + m;
    let mut t = vec![0u32; rank * rank * rank];
    let at = |i: usize, j: usize, k: usize| (i * rank + j) * rank + k;
    for a in 0..n {
        for b in 0..n {
            t[at(a, b, g.add(a, b))] = 1;
        }
        for c in 0..m {
            let shifted = n + cosets.coset_of[g.add(a, cosets.reps[c])];
            t[at(a, n + c, shifted)] = 1;
            t[at(n + c, a, shifted)] = 1;
        }
    }
    for a in 0..m {
        for b in 0..m {
            let base = g.add(cosets.reps[a], cosets.reps[b]);
            for (x, &mult) in alpha.iter().enumerate() {
                t[at(n + a, n + b, g.add(base, x))] += mult;
            }
            let ab = cosets.coset_of[base];
            for (u, &mult) in beta.iter().enumerate() {
                t[at(n + a, n + b, n + cosets.add(ab, u))] += mult;
            }
        }
    }
    let mut labels: Vec<String> = (0..n).map(|x| if x == 0 { "1".into() } else { g.label(x) }).collect();
    labels.extend((0..m).map(|c| format!("X{c}")));
    let mut dual: Vec<usize> = (0..n).map(|x| g.neg(x)).collect();
    dual.extend((0..m).map(|c| n + cosets.add(s, cosets.neg(c))));
    FusionRing::from_flat(name, labels, dual, t)
}

/// Every assignment `(s, β)` whose ring passes the axioms, for abelian `G` acting
/// on the noninvertibles through `G/H` with `X_0 X_0* ∋ h` for exactly `h ∈ H`.
pub fn enumerate_gnq(group: &AbelianGroup, subgroup: &[usize], spec: DSpec, mult_bound: u32) -> Result<Vec<FusionRing>, ClassifyError> {
    if group.order() > MAX_ENUM_ORDER {
        return Err(ClassifyError::Precondition(format!("|G| = {} exceeds {MAX_ENUM_ORDER}", group.order())));
    }
    if mult_bound > MAX_MULT_BOUND {
        return Err(ClassifyError::Precondition(format!("mult_bound {mult_bound} exceeds {MAX_MULT_BOUND}")));
    }
    let cosets = CosetData::new(group, subgroup)?;
    let h_order = cosets.subgroup.len() as u32;
    let r = match spec {
        DSpec::Multiplicity(r) => r,
        DSpec::KH { k, h } => {
            if h != h_order {
                return Err(ClassifyError::Precondition(format!("|H| = {h_order}, but d was specified with |H| = {h}")));
            }
            k * h
        }
    };
    if r == 0 && h_order == 1 {
        return Ok(Vec::new());
    }
    let m = cosets.index();
    let g_name = crate::ring::group::describe_invariants(group.factors());
    let mut found = Vec::new();
    for s in 0..m {
        let minus_s = cosets.neg(s);
        let alpha: Vec<u32> = (0..group.order()).map(|x| (cosets.coset_of[x] == minus_s) as u32).collect();
        // orbits of t ↦ −t−s
        let mut orbit_id = vec![usize::MAX; m];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for t in 0..m {
            if orbit_id[t] == usize::MAX {
                let partner = cosets.add(cosets.neg(t), minus_s);
                orbit_id[t] = orbits.len();
                orbit_id[partner] = orbits.len();
                orbits.push(if partner == t { vec![t] } else { vec![t, partner] });
            }
        }
        let mut values = vec![0u32; orbits.len()];
        let mut assignments = Vec::new();
        fill(&orbits, 0, r, mult_bound, &mut values, &mut assignments);
        for values in assignments {
            let mut beta = vec![0u32; m];
            for (o, v) in orbits.iter().zip(&values) {
                for &t in o {
                    beta[t] = *v;
                }
            }
            let name = format!("gnq[{g_name};|H|={h_order};s={s};β={beta:?}]");
            let ring = equivariant_ring(&cosets, s, &alpha, &beta, &name);
            if ring.verify_axioms().is_pass() {
                found.push(ring);
            }
        }
    }
    Ok(found)
}

fn fill(orbits: &[Vec<usize>], i: usize, remaining: u32, bound: u32, values: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == orbits.len() {
        if remaining == 0 {
            out.push(values.clone());
        }
        return;
    }
    let size = orbits[i].len() as u32;
    for v in 0..=bound {
        if v * size > remaining {
            break;
        }
        values[i] = v;
        fill(orbits, i + 1, remaining - v * size, bound, values, out);
    }
    values[i] = 0;
}
