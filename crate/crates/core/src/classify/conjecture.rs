use serde::Serialize;

use super::{enumerate_gnq, nilpotency_class, DSpec};
use crate::ring::group::{abelian_groups_of_order, describe_invariants, AbelianGroup, FiniteGroup};
use crate::ring::{construct_group_ring, construct_rmn, direct_product, grothendieck_iso, FusionRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureEntry {
    pub ring: String,
    pub group: String,
    pub h_order: usize,
    pub rank: usize,
    pub nilpotency_class: Option<usize>,
    pub h_elementary_2: bool,
    pub matched: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub gmax: usize,
    pub noninv_max: usize,
    pub entries: Vec<ConjectureEntry>,
    pub matched: usize,
    pub unmatched: usize,
}

/// Templates `R(m,n) × ZK` with the given numbers of invertibles and noninvertibles.
fn templates(invertible: usize, noninv: usize) -> Vec<(String, FusionRing)> {
    let mut out = Vec::new();
    if !invertible.is_multiple_of(noninv) {
        return out;
    }
    let ratio = invertible / noninv;
    if !ratio.is_power_of_two() || ratio < 2 {
        return out;
    }
    let n = ratio.trailing_zeros();
    for m in 1..=4u32 {
        let half = 1usize << (m - 1);
        if !noninv.is_multiple_of(half) || n > 4 {
            continue;
        }
        let rmn = construct_rmn(m, n);
        for k in abelian_groups_of_order(noninv / half) {
            let zk = construct_group_ring(&if k.is_empty() { FiniteGroup::trivial() } else { FiniteGroup::abelian(&k) });
            let name = format!("R({m},{n})×Z[{}]", describe_invariants(&k));
            out.push((name, direct_product(&rmn, &zk)));
        }
    }
    out
}

/// All nilpotent generalized near-group rings with abelian `G`, `|G| ≤ gmax`,
/// at most `noninv_max` noninvertibles, matched against `R(m,n) × ZK` up to isomorphism.
pub fn conjecture_report(gmax: usize, noninv_max: usize) -> ConjectureReport {
    let mut reps: Vec<(FusionRing, String, usize, bool)> = Vec::new();
    for order in 1..=gmax.min(super::MAX_ENUM_ORDER) {
        for factors in abelian_groups_of_order(order) {
            let group = AbelianGroup::new(if factors.is_empty() { vec![1] } else { factors.clone() });
            for h in group.subgroups() {
                if order / h.len() > noninv_max {
                    continue;
                }
                let h_el2 = h.iter().all(|&x| group.add(x, x) == 0);
                let Ok(found) = enumerate_gnq(&group, &h, DSpec::Multiplicity(0), 0) else { continue };
                for ring in found {
                    if reps.iter().any(|(r, ..)| grothendieck_iso(r, &ring).is_isomorphic()) {
                        continue;
                    }
                    reps.push((ring, describe_invariants(&factors), h.len(), h_el2));
                }
            }
        }
    }
    let mut entries = Vec::new();
    for (ring, group, h_order, h_el2) in reps {
        let order = ring.rank() * h_order / (h_order + 1);
        let noninv = ring.rank() - order;
        let matched = templates(order, noninv)
            .into_iter()
            .find(|(_, t)| grothendieck_iso(t, &ring).is_isomorphic())
            .map(|(name, _)| name);
        entries.push(ConjectureEntry {
            ring: ring.name().to_string(),
            group,
            h_order,
            rank: ring.rank(),
            nilpotency_class: nilpotency_class(&ring).ok(),
            h_elementary_2: h_el2,
            matched,
        });
    }
    let matched = entries.iter().filter(|e| e.matched.is_some()).count();
    ConjectureReport {
        gmax,
        noninv_max,
        unmatched: entries.len() - matched,
        matched,
        entries,
    }
}
