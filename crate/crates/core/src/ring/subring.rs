use super::FusionRing;

/// A based subring with its embedding into the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subring {
    pub ring: FusionRing,
    /// `embedding[i]` is the ambient index of the subring's basis element `i` (ascending).
    pub embedding: Vec<usize>,
}

impl Subring {
    pub fn contains(&self, ambient: usize) -> bool {
        self.embedding.binary_search(&ambient).is_ok()
    }
}

pub(crate) fn closure_set(ring: &FusionRing, seeds: &[usize]) -> Vec<usize> {
    let r = ring.rank();
    let mut inside = vec![false; r];
    let mut members = Vec::new();
    let mut queue = Vec::new();
    let add = |x: usize, inside: &mut Vec<bool>, queue: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            queue.push(x);
        }
    };
    add(0, &mut inside, &mut queue);
    for &s in seeds {
        add(s, &mut inside, &mut queue);
    }
    while let Some(a) = queue.pop() {
        add(ring.dual(a), &mut inside, &mut queue);
        members.push(a);
        for b in members.clone() {
            let found: Vec<usize> = ring.support(a, b).chain(ring.support(b, a)).collect();
            for k in found {
                add(k, &mut inside, &mut queue);
            }
        }
    }
    (0..r).filter(|&x| inside[x]).collect()
}

/// Smallest based subring containing the seeds.
pub fn subring_generated(ring: &FusionRing, seeds: &[usize]) -> Subring {
    let embedding = closure_set(ring, seeds);
    let names: Vec<&str> = seeds.iter().map(|&s| ring.label(s)).collect();
    let name = format!("<{}> in {}", names.join(","), ring.name());
    Subring {
        ring: ring.restrict(&name, &embedding),
        embedding,
    }
}

/// Subring generated by all `x·x*`.
pub fn adjoint_subring(ring: &FusionRing) -> Subring {
    let mut seeds: Vec<usize> = (0..ring.rank()).flat_map(|x| ring.support(x, ring.dual(x)).collect::<Vec<_>>()).collect();
    seeds.sort_unstable();
    seeds.dedup();
    let embedding = closure_set(ring, &seeds);
    Subring {
        ring: ring.restrict(&format!("{}_ad", ring.name()), &embedding),
        embedding,
    }
}
