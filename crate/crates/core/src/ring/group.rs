//! Finite groups given by Cayley tables, plus abelian-group bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::RingError;

/// A finite group with identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table. The identity is moved to index 0 if needed.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, RingError> {
        let n = table.len();
        if n == 0 {
            return Err(RingError::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(RingError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(RingError::NotAGroup(format!("entry {x} out of range")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| RingError::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(RingError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return Err(RingError::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        // perm maps new index -> old index (a transposition, so self-inverse).
        let table = (0..n)
            .map(|i| (0..n).map(|j| perm[table[perm[i]][perm[j]]]).collect())
            .collect();
        let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        Ok(FiniteGroup { table, labels })
    }

    pub fn trivial() -> Self {
        Self::abelian(&[])
    }

    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n])
    }

    /// Product of cyclic groups; elements are mixed-radix tuples in lexicographic order.
    pub fn abelian(factors: &[usize]) -> Self {
        let ag = AbelianGroup::new(factors.to_vec());
        let n = ag.order();
        let table = (0..n).map(|a| (0..n).map(|b| ag.add(a, b)).collect()).collect();
        let labels = (0..n).map(|i| ag.label(i)).collect();
        FiniteGroup { table, labels }
    }

    /// The quaternion group `Q_8`: elements ±1, ±i, ±j, ±k.
    pub fn quaternion() -> Self {
        // index = 2*unit + sign, unit in {1,i,j,k}, sign bit 1 = negative.
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, neg) = unit_mul(a / 2, b / 2);
                        let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "i", "j", "k"];
        let labels = (0..8)
            .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
            .collect();
        FiniteGroup { table, labels }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("validated group")
    }

    pub fn is_abelian(&self) -> bool {
        table_is_abelian(&self.table)
    }

    pub fn element_order(&self, a: usize) -> usize {
        element_order(&self.table, a)
    }

    /// Invariant factors `n_1 | n_2 | ...` when abelian.
    pub fn invariants(&self) -> Option<Vec<usize>> {
        self.is_abelian().then(|| abelian_invariants(&self.table))
    }
}

pub(crate) fn table_is_abelian(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]))
}

pub(crate) fn element_order(table: &[Vec<usize>], a: usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != 0 {
        x = table[x][a];
        k += 1;
    }
    k
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group from its element-order statistics.
pub fn abelian_invariants(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    let orders: Vec<usize> = (0..n).map(|a| element_order(table, a)).collect();
    invariants_from_orders(&orders)
}

pub(crate) fn invariants_from_orders(orders: &[usize]) -> Vec<usize> {
    let n = orders.len();
    // For each prime p, |G[p^k]| = p^(sum_i min(k, e_i)) recovers the exponents e_i.
    let mut per_prime: Vec<Vec<usize>> = Vec::new();
    for p in prime_factors(n) {
        let mut exps = Vec::new();
        let mut prev_log = 0;
        let mut k = 1;
        loop {
            let pk = p.pow(k as u32);
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            let mut log = 0;
            let mut c = count;
            while c % p == 0 && c > 1 {
                c /= p;
                log += 1;
            }
            let at_least_k = log - prev_log;
            if at_least_k == 0 {
                break;
            }
            exps.push(at_least_k);
            prev_log = log;
            k += 1;
        }
        // exps[k-1] = number of cyclic p-factors of exponent >= k.
        let count = exps.first().copied().unwrap_or(0);
        let mut powers = vec![1usize; count];
        for &m in &exps {
            for pw in powers.iter_mut().take(m) {
                *pw *= p;
            }
        }
        per_prime.push(powers);
    }
    // Combine the largest prime powers across primes into the largest invariant factor.
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; len];
    for powers in per_prime {
        // powers is sorted descending by construction
        for (slot, pw) in powers.into_iter().enumerate() {
            factors[len - 1 - slot] *= pw;
        }
    }
    factors.retain(|&f| f > 1);
    factors
}

/// Smallest subgroup containing `gens` (as a sorted index list).
pub(crate) fn closure(table: &[Vec<usize>], gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    set.extend(gens.iter().copied());
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                if set.insert(table[a][b]) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set.into_iter().collect();
        }
    }
}

/// Every subgroup of a group given by its Cayley table, sorted by (order, elements).
pub(crate) fn all_subgroups(table: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![vec![0usize]];
    seen.insert(vec![0]);
    while let Some(h) = frontier.pop() {
        for g in 0..n {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let k = closure(table, &gens);
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every finite abelian group of order `n`, as invariant-factor lists.
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    fn partitions(e: usize, max: usize) -> Vec<Vec<usize>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut m = n;
    let mut prime_parts: Vec<Vec<Vec<usize>>> = Vec::new();
    for p in prime_factors(n) {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        prime_parts.push(
            partitions(e, e)
                .into_iter()
                .map(|part| part.into_iter().map(|k| p.pow(k as u32)).collect())
                .collect(),
        );
    }
    let mut results: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for choices in prime_parts {
        let mut next = Vec::new();
        for acc in &results {
            for c in &choices {
                let mut v = acc.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        results = next;
    }
    let mut out: Vec<Vec<usize>> = results
        .into_iter()
        .map(|parts| {
            let len = parts.iter().map(|v| v.len()).max().unwrap_or(0);
            let mut f = vec![1usize; len];
            for powers in parts {
                for (slot, pw) in powers.into_iter().enumerate() {
                    f[len - 1 - slot] *= pw;
                }
            }
            f
        })
        .collect();
    out.sort();
    out
}

/// `Z_{n_1} × ... × Z_{n_k}` with elements indexed in mixed radix (last factor fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Self {
        assert!(factors.iter().all(|&f| f >= 1));
        AbelianGroup { factors }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn to_tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.factors.len()];
        for (slot, &f) in self.factors.iter().enumerate().rev() {
            t[slot] = idx % f;
            idx /= f;
        }
        t
    }

    pub fn from_tuple(&self, t: &[usize]) -> usize {
        t.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &f)| acc * f + x % f)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.to_tuple(a), self.to_tuple(b));
        let sum: Vec<usize> = ta.iter().zip(&tb).zip(&self.factors).map(|((x, y), f)| (x + y) % f).collect();
        self.from_tuple(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<usize> = self.to_tuple(a).iter().zip(&self.factors).map(|(x, f)| (f - x) % f).collect();
        self.from_tuple(&t)
    }

    pub fn scale(&self, a: usize, c: i64) -> usize {
        let t: Vec<usize> = self
            .to_tuple(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (x as i64 * c).rem_euclid(f as i64) as usize)
            .collect();
        self.from_tuple(&t)
    }

    /// Unit vector on the `i`-th factor.
    pub fn generator(&self, i: usize) -> usize {
        let mut t = vec![0; self.rank()];
        t[i] = 1 % self.factors[i];
        self.from_tuple(&t)
    }

    pub fn exponent(&self) -> usize {
        self.factors.iter().fold(1, |acc, &f| acc.lcm(&f))
    }

    pub fn label(&self, idx: usize) -> String {
        let t = self.to_tuple(idx);
        let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.add(a, b)).collect()).collect()
    }

    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        closure(&self.table(), gens)
    }

    /// Every subgroup, smallest first.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        all_subgroups(&self.table())
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.factors.iter().all(|&f| f == 2)
    }
}

/// Descriptor like `C2xC4`, or `1` for the trivial group.
pub fn describe_invariants(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &f in factors {
        *counts.entry(f).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(f, c)| if c == 1 { format!("C{f}") } else { format!("C{f}^{c}") })
        .collect::<Vec<_>>()
        .join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_small_groups() {
        assert_eq!(FiniteGroup::abelian(&[2, 2]).invariants(), Some(vec![2, 2]));
        assert_eq!(FiniteGroup::abelian(&[2, 3]).invariants(), Some(vec![6]));
        assert_eq!(FiniteGroup::abelian(&[4, 2]).invariants(), Some(vec![2, 4]));
        assert_eq!(FiniteGroup::abelian(&[2, 6, 4]).invariants(), Some(vec![2, 2, 12]));
        assert_eq!(FiniteGroup::trivial().invariants(), Some(vec![]));
        assert_eq!(FiniteGroup::quaternion().invariants(), None);
    }

    #[test]
    fn quaternion_is_a_group() {
        let q = FiniteGroup::quaternion();
        let again = FiniteGroup::from_table(q.table().to_vec()).unwrap();
        assert_eq!(again.order(), 8);
        assert_eq!((0..8).filter(|&a| q.element_order(a) == 4).count(), 6);
    }

    #[test]
    fn malformed_tables_rejected() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(t), Err(RingError::NotAGroup(_))));
        let t = vec![vec![0, 1, 2], vec![1, 0]];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn identity_is_moved_to_front() {
        // Z_2 with identity stored at index 1.
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.table(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(AbelianGroup::new(vec![2, 2]).subgroups().len(), 5);
        assert_eq!(AbelianGroup::new(vec![4]).subgroups().len(), 3);
        assert_eq!(AbelianGroup::new(vec![2, 2, 2]).subgroups().len(), 16);
    }

    #[test]
    fn groups_of_order() {
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<usize>::new()]);
        let total: usize = (1..=32).map(|n| abelian_groups_of_order(n).len()).sum();
        assert_eq!(total, 55);
    }

    #[test]
    fn descriptors() {
        assert_eq!(describe_invariants(&[2, 2, 4]), "C2^2xC4");
        assert_eq!(describe_invariants(&[]), "1");
    }
}
