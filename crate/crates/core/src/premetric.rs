//! Pre-metric groups: finite abelian groups with a `Q/Z`-valued quadratic form.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::group::describe_invariants;
use crate::scalars::RationalAngle;

pub const MAX_ORDER: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PremetricError {
    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("subgroup is not isotropic: q{h} = {value}")]
    NotIsotropic { h: String, value: RationalAngle },
    #[error("quotient form ill-defined on the coset of {coset}")]
    IllDefined { coset: String },
    #[error("malformed pre-metric data: {0}")]
    Malformed(String),
}

/// Mixed-radix arithmetic on `Z_{n_1} × ... × Z_{n_k}` (last coordinate fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Radix {
    factors: Vec<usize>,
    order: usize,
}

impl Radix {
    fn new(factors: Vec<usize>) -> Self {
        let order = factors.iter().product();
        Radix { factors, order }
    }

    fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.factors.len()];
        for (slot, &f) in self.factors.iter().enumerate().rev() {
            t[slot] = idx % f;
            idx /= f;
        }
        t
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().zip(&self.factors).fold(0, |acc, (&x, &f)| acc * f + x % f)
    }

    fn combine(&self, a: usize, b: usize, sign: i64) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut stride = 1;
        for &f in self.factors.iter().rev() {
            let (x, y) = ((a % f) as i64, (b % f) as i64);
            out += ((x + sign * y).rem_euclid(f as i64) as usize) * stride;
            stride *= f;
            a /= f;
            b /= f;
        }
        out
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, 1)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, -1)
    }

    fn scale(&self, a: usize, c: i64) -> usize {
        let t: Vec<usize> = self
            .tuple(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (x as i64 * c).rem_euclid(f as i64) as usize)
            .collect();
        self.index(&t)
    }

    fn generator(&self, i: usize) -> usize {
        let mut t = vec![0; self.factors.len()];
        t[i] = 1;
        self.index(&t)
    }

    fn label(&self, idx: usize) -> String {
        let parts: Vec<String> = self.tuple(idx).iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0];
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g % self.order);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

/// A finite abelian group with a quadratic form `q`, `exp(2πi q(g))` being the root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMetricGroup {
    radix: Radix,
    q: Vec<RationalAngle>,
    /// `q` as integers modulo `den`.
    qi: Vec<i64>,
    den: i64,
}

/// `b` on generator pairs, and its radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearForm {
    pub matrix: Vec<Vec<RationalAngle>>,
    pub radical: Vec<usize>,
    pub nondegenerate: bool,
}

/// Result of `deequivariantize`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deequivariantization {
    pub quotient: PreMetricGroup,
    /// `H ⊆ radical(b)`.
    pub braided: bool,
    /// Image in the quotient of each element of `G`.
    pub projection: Vec<usize>,
    pub subgroup: Vec<usize>,
}

pub fn make_premetric(invariant_factors: &[usize], q: Vec<RationalAngle>) -> Result<PreMetricGroup, PremetricError> {
    if invariant_factors.iter().any(|&f| f < 2) {
        return Err(PremetricError::Malformed("factors must be at least 2".into()));
    }
    let radix = Radix::new(invariant_factors.to_vec());
    if radix.order > MAX_ORDER {
        return Err(PremetricError::Malformed(format!("order {} exceeds {MAX_ORDER}", radix.order)));
    }
    if q.len() != radix.order {
        return Err(PremetricError::Malformed(format!("q has {} values for a group of order {}", q.len(), radix.order)));
    }
    let den = RationalAngle::lcm_denominators(&q);
    let qi = q.iter().map(|a| a.numer() * (den / a.denom())).collect();
    let pm = PreMetricGroup { radix, q, qi, den };
    pm.check()?;
    Ok(pm)
}

impl PreMetricGroup {
    /// The form `q ≡ 0`.
    pub fn trivial_form(invariant_factors: &[usize]) -> Result<Self, PremetricError> {
        let n = invariant_factors.iter().product();
        make_premetric(invariant_factors, vec![RationalAngle::zero(); n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.radix.factors
    }

    pub fn order(&self) -> usize {
        self.radix.order
    }

    pub fn q(&self, g: usize) -> RationalAngle {
        self.q[g]
    }

    pub fn q_values(&self) -> &[RationalAngle] {
        &self.q
    }

    pub fn element(&self, tuple: &[usize]) -> usize {
        self.radix.index(tuple)
    }

    pub fn tuple(&self, g: usize) -> Vec<usize> {
        self.radix.tuple(g)
    }

    pub fn label(&self, g: usize) -> String {
        self.radix.label(g)
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        self.radix.add(g, h)
    }

    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        self.radix.closure(gens)
    }

    fn bi(&self, g: usize, h: usize) -> i64 {
        (self.qi[self.radix.add(g, h)] - self.qi[g] - self.qi[h]).rem_euclid(self.den)
    }

    /// `b(g, h) = q(g+h) − q(g) − q(h)`.
    pub fn b(&self, g: usize, h: usize) -> RationalAngle {
        RationalAngle::new(self.bi(g, h), self.den)
    }

    fn check(&self) -> Result<(), PremetricError> {
        let bad = |msg: String| Err(PremetricError::NotQuadratic(msg));
        if !self.q[0].is_zero() {
            return bad(format!("q(0) = {} ≠ 0", self.q[0]));
        }
        let n = self.order();
        let m = self.den;
        let exponent = self.radix.factors.iter().fold(1usize, |a, &f| a.lcm(&f));
        for g in 0..n {
            let ng = self.radix.sub(0, g);
            if self.qi[ng] != self.qi[g] {
                return bad(format!("q(-g) ≠ q(g) at g = {}", self.label(g)));
            }
            for c in 2..=exponent as i64 {
                let cg = self.radix.scale(g, c);
                if self.qi[cg] != (c * c % m * self.qi[g]).rem_euclid(m) {
                    return bad(format!(
                        "q({c}·g) = {} ≠ {c}²·q(g) = {} at g = {}",
                        self.q[cg],
                        self.q[g].times(c * c),
                        self.label(g)
                    ));
                }
            }
        }
        for i in 0..self.radix.factors.len() {
            let e = self.radix.generator(i);
            for g in 0..n {
                let eg = self.radix.add(e, g);
                for h in 0..n {
                    if self.bi(eg, h) != (self.bi(e, h) + self.bi(g, h)).rem_euclid(m) {
                        return bad(format!(
                            "b is not additive at ({}, {}, {})",
                            self.label(e),
                            self.label(g),
                            self.label(h)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn radical(&self) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.radix.factors.len()).map(|i| self.radix.generator(i)).collect();
        (0..self.order()).filter(|&g| gens.iter().all(|&e| self.bi(g, e) == 0)).collect()
    }

    pub fn bilinear_form(&self) -> BilinearForm {
        let k = self.radix.factors.len();
        let gens: Vec<usize> = (0..k).map(|i| self.radix.generator(i)).collect();
        let matrix = gens.iter().map(|&g| gens.iter().map(|&h| self.b(g, h)).collect()).collect();
        let radical = self.radical();
        let nondegenerate = radical.len() == 1;
        BilinearForm {
            matrix,
            radical,
            nondegenerate,
        }
    }

    /// Quotient by an isotropic subgroup (given by generators), with `q̃(gH) = q(g)`.
    pub fn deequivariantize(&self, generators: &[usize]) -> Result<Deequivariantization, PremetricError> {
        if let Some(&g) = generators.iter().find(|&&g| g >= self.order()) {
            return Err(PremetricError::Malformed(format!("element index {g} out of range")));
        }
        let h = self.closure(generators);
        if let Some(&x) = h.iter().find(|&&x| self.qi[x] != 0) {
            return Err(PremetricError::NotIsotropic {
                h: self.label(x),
                value: self.q[x],
            });
        }
        // cosets, numbered by least representative
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] == usize::MAX {
                for &x in &h {
                    let y = self.radix.add(g, x);
                    coset[y] = reps.len();
                    if self.qi[y] != self.qi[g] {
                        return Err(PremetricError::IllDefined { coset: self.label(g) });
                    }
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let qadd = |a: usize, b: usize| coset[self.radix.add(reps[a], reps[b])];
        let (factors, basis) = decompose(m, &qadd);
        let radix = Radix::new(factors);
        // element of the new group -> coset
        let mut to_coset = vec![0usize; radix.order];
        for (idx, slot) in to_coset.iter_mut().enumerate() {
            let t = radix.tuple(idx);
            let mut acc = 0usize;
            for (c, &b) in t.iter().zip(&basis) {
                for _ in 0..*c {
                    acc = qadd(acc, b);
                }
            }
            *slot = acc;
        }
        let mut from_coset = vec![usize::MAX; m];
        for (idx, &c) in to_coset.iter().enumerate() {
            from_coset[c] = idx;
        }
        debug_assert!(from_coset.iter().all(|&x| x != usize::MAX));
        let q: Vec<RationalAngle> = to_coset.iter().map(|&c| self.q[reps[c]]).collect();
        let quotient = make_premetric(radix.factors.as_slice(), q)?;
        let projection = (0..n).map(|g| from_coset[coset[g]]).collect();
        let radical = self.radical();
        let braided = h.iter().all(|x| radical.binary_search(x).is_ok());
        Ok(Deequivariantization {
            quotient,
            braided,
            projection,
            subgroup: h,
        })
    }

    pub fn describe(&self) -> String {
        describe_invariants(&self.radix.factors)
    }
}

/// Invariant-factor decomposition of an abelian group on `0..m` (identity 0) given by `add`.
/// Returns ascending factors (each dividing the next) and matching generators.
fn decompose(m: usize, add: &dyn Fn(usize, usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let mul = |g: usize, c: usize| (0..c).fold(0, |acc, _| add(acc, g));
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    // coordinates of members of the span of chosen generators
    let mut span: BTreeMap<usize, Vec<usize>> = BTreeMap::from([(0, vec![])]);
    while span.len() < m {
        // element of maximal order modulo the span
        let mut best = (0, 0);
        for y in 0..m {
            let mut acc = y;
            let mut ord = 1;
            while !span.contains_key(&acc) {
                acc = add(acc, y);
                ord += 1;
            }
            if ord > best.1 {
                best = (y, ord);
            }
        }
        let (y, ord) = best;
        let mut coords = span[&mul(y, ord)].clone();
        coords.resize(chosen.len(), 0);
        let mut adjusted = y;
        for (i, &a) in coords.iter().enumerate() {
            assert!(a % ord == 0, "greedy decomposition failed to split");
            let (g, n) = chosen[i];
            let shift = (n - (a / ord) % n) % n;
            adjusted = add(adjusted, mul(g, shift));
        }
        chosen.push((adjusted, ord));
        let mut next = BTreeMap::new();
        for (x, c) in &span {
            let mut acc = *x;
            for k in 0..ord {
                let mut cc = c.clone();
                cc.resize(chosen.len() - 1, 0);
                cc.push(k);
                next.insert(acc, cc);
                acc = add(acc, adjusted);
            }
        }
        span = next;
    }
    chosen.reverse();
    (chosen.iter().map(|c| c.1).collect(), chosen.iter().map(|c| c.0).collect())
}

/// Outcome of the search for a nondegenerate symmetric `{±1}`-valued bicharacter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignFormSearch {
    pub exists: bool,
    /// Generator matrix with entries in `{0, 1/2}` when found.
    pub witness: Option<Vec<Vec<RationalAngle>>>,
    pub certificate: String,
}

fn sign_form_nondegenerate(radix: &Radix, m: &[Vec<u8>]) -> bool {
    let k = radix.factors.len();
    (1..radix.order).all(|x| {
        let t = radix.tuple(x);
        (0..k).any(|j| (0..k).map(|i| t[i] * m[i][j] as usize).sum::<usize>() % 2 == 1)
    })
}

const EXHAUSTIVE_LIMIT: u32 = 20;

/// Does `G` carry a nondegenerate symmetric bi-additive form with values in `{0, 1/2}`?
pub fn sign_form_exists(invariant_factors: &[usize]) -> SignFormSearch {
    let factors: Vec<usize> = invariant_factors.iter().copied().filter(|&f| f > 1).collect();
    let radix = Radix::new(factors.clone());
    let k = factors.len();
    if k == 0 {
        return SignFormSearch {
            exists: true,
            witness: Some(vec![]),
            certificate: "trivial group".into(),
        };
    }
    let free: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .filter(|&(i, j)| factors[i].is_multiple_of(2) && factors[j].is_multiple_of(2))
        .collect();
    if free.len() as u32 > EXHAUSTIVE_LIMIT {
        // x with every coordinate even pairs trivially with everything
        if let Some(i) = factors.iter().position(|&f| f != 2) {
            return SignFormSearch {
                exists: false,
                witness: None,
                certificate: format!("{} lies in the radical of every sign-valued form", radix.label(radix.scale(radix.generator(i), 2))),
            };
        }
    }
    let mut m = vec![vec![0u8; k]; k];
    let mut visited = 0u64;
    fn dfs(radix: &Radix, free: &[(usize, usize)], pos: usize, m: &mut Vec<Vec<u8>>, visited: &mut u64) -> bool {
        if pos == free.len() {
            *visited += 1;
            return sign_form_nondegenerate(radix, m);
        }
        let (i, j) = free[pos];
        let order: [u8; 2] = if i == j { [1, 0] } else { [0, 1] };
        for v in order {
            m[i][j] = v;
            m[j][i] = v;
            if dfs(radix, free, pos + 1, m, visited) {
                return true;
            }
        }
        m[i][j] = 0;
        m[j][i] = 0;
        false
    }
    if dfs(&radix, &free, 0, &mut m, &mut visited) {
        let witness = m
            .iter()
            .map(|row| row.iter().map(|&v| RationalAngle::new(v as i64, 2)).collect())
            .collect();
        SignFormSearch {
            exists: true,
            witness: Some(witness),
            certificate: format!("found after {visited} candidate matrices"),
        }
    } else {
        SignFormSearch {
            exists: false,
            witness: None,
            certificate: format!("exhausted all {visited} symmetric sign matrices"),
        }
    }
}

/// JSON form: `{"group": [n1, ...], "q": {"(a1,...)": "p/q", ...}}`; missing elements are an error.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreMetricFile {
    pub group: Vec<usize>,
    pub q: BTreeMap<String, RationalAngle>,
}

impl PreMetricFile {
    pub fn from_premetric(pm: &PreMetricGroup) -> Self {
        PreMetricFile {
            group: pm.factors().to_vec(),
            q: (0..pm.order()).map(|g| (pm.label(g), pm.q(g))).collect(),
        }
    }

    pub fn into_premetric(self) -> Result<PreMetricGroup, PremetricError> {
        let radix = Radix::new(self.group.clone());
        if radix.order > MAX_ORDER {
            return Err(PremetricError::Malformed(format!("order {} exceeds {MAX_ORDER}", radix.order)));
        }
        let mut q = vec![None; radix.order];
        for (key, value) in &self.q {
            let t = parse_tuple(key, &self.group)
                .ok_or_else(|| PremetricError::Malformed(format!("bad element key {key:?}")))?;
            q[radix.index(&t)] = Some(*value);
        }
        let q = q
            .into_iter()
            .enumerate()
            .map(|(g, v)| v.ok_or_else(|| PremetricError::Malformed(format!("q missing at {}", radix.label(g)))))
            .collect::<Result<Vec<_>, _>>()?;
        make_premetric(&self.group, q)
    }
}

/// Parses `"(a1,...,ak)"` against the given factors.
pub fn parse_tuple(key: &str, factors: &[usize]) -> Option<Vec<usize>> {
    let inner = key.trim().strip_prefix('(')?.strip_suffix(')')?;
    let t: Vec<usize> = if inner.trim().is_empty() {
        vec![]
    } else {
        inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?
    };
    (t.len() == factors.len() && t.iter().zip(factors).all(|(x, f)| x < f)).then_some(t)
}
