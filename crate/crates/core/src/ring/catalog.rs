//! Built-in rings, by name or by descriptor (`Z[C2xC4]`, `R(C2^2,4)`, `R(2,2)`).

use super::construct::{construct_group_ring, construct_near_group, construct_rmn};
use super::group::FiniteGroup;
use super::{FusionRing, RingError};

const NAMED: &[(&str, &str)] = &[
    ("fib", "Fibonacci rules: ρ² = 1 + ρ"),
    ("gnq8", "rank 4 {1,δ,Y,Z}: δ² = 1, δY = Z, Y² = Z² = 1+Y+Z, YZ = δ+Y+Z"),
    ("ising", "Ising rules R(C2,0): σ² = 1 + ψ"),
    ("rep_q8", "R(C2^2,0): Grothendieck ring of Rep(Q8)"),
    ("rep_s3", "R(C2,1): Grothendieck ring of Rep(S3)"),
];

const DESCRIPTORS: &[(&str, &str)] = &[
    ("Z[<group>]", "group ring; group as 1, Q8, or factors like C2xC4, C2^3"),
    ("R(<group>,<l>)", "near-group ring ρ² = lρ + Σg"),
    ("R(<m>,<n>)", "the subring of ZC_{2^m} × R(C_2^n,0) generated by g×ρ"),
];

/// `(name, description)` for every named entry, followed by the descriptor forms.
pub fn catalog_list() -> Vec<(String, String)> {
    NAMED
        .iter()
        .chain(DESCRIPTORS)
        .map(|(n, d)| (n.to_string(), d.to_string()))
        .collect()
}

pub fn catalog_names() -> Vec<&'static str> {
    NAMED.iter().map(|(n, _)| *n).collect()
}

fn from_products(name: &str, labels: &[&str], dual: Vec<usize>, rules: &[(usize, usize, &[(usize, u32)])]) -> FusionRing {
    let r = labels.len();
    let mut t = vec![0u32; r * r * r];
    for i in 0..r {
        t[(i * r) * r + i] = 1;
        t[i * r + i] = 1;
    }
    for &(i, j, terms) in rules {
        for &(k, c) in terms {
            t[(i * r + j) * r + k] = c;
        }
    }
    FusionRing::from_flat(name, labels.iter().map(|s| s.to_string()).collect(), dual, t)
}

fn fib() -> FusionRing {
    from_products("fib", &["1", "ρ"], vec![0, 1], &[(1, 1, &[(0, 1), (1, 1)])])
}

fn gnq8() -> FusionRing {
    let (d, y, z) = (1, 2, 3);
    from_products(
        "gnq8",
        &["1", "δ", "Y", "Z"],
        vec![0, 1, 2, 3],
        &[
            (d, d, &[(0, 1)]),
            (d, y, &[(z, 1)]),
            (y, d, &[(z, 1)]),
            (d, z, &[(y, 1)]),
            (z, d, &[(y, 1)]),
            (y, y, &[(0, 1), (y, 1), (z, 1)]),
            (z, z, &[(0, 1), (y, 1), (z, 1)]),
            (y, z, &[(d, 1), (y, 1), (z, 1)]),
            (z, y, &[(d, 1), (y, 1), (z, 1)]),
        ],
    )
}

fn relabel(ring: FusionRing, name: &str, labels: &[&str]) -> FusionRing {
    FusionRing::from_flat(
        name,
        labels.iter().map(|s| s.to_string()).collect(),
        ring.duals().to_vec(),
        ring.flat_tensor().to_vec(),
    )
}

/// Parses `1`, `Q8`, `C4`, `C2xC4`, `C2^3`, `C2×C2`.
pub fn parse_group(desc: &str) -> Option<FiniteGroup> {
    let desc = desc.trim();
    if desc == "1" || desc.is_empty() {
        return Some(FiniteGroup::trivial());
    }
    if desc == "Q8" {
        return Some(FiniteGroup::quaternion());
    }
    let mut factors = Vec::new();
    for part in desc.split(['x', '×']) {
        let part = part.trim().strip_prefix('C')?;
        let (n, e) = match part.split_once('^') {
            Some((n, e)) => (n.parse::<usize>().ok()?, e.parse::<usize>().ok()?),
            None => (part.parse::<usize>().ok()?, 1),
        };
        if n < 1 || e > 16 {
            return None;
        }
        factors.extend(std::iter::repeat_n(n, e));
    }
    let order: usize = factors.iter().product();
    if order == 0 || order > 4096 {
        return None;
    }
    factors.retain(|&n| n > 1);
    Some(if factors.is_empty() { FiniteGroup::trivial() } else { FiniteGroup::abelian(&factors) })
}

fn parse_descriptor(name: &str) -> Option<FusionRing> {
    if let Some(inner) = name.strip_prefix("Z[").and_then(|s| s.strip_suffix(']')) {
        let g = parse_group(inner)?;
        if g.order() > 64 {
            return None;
        }
        return Some(construct_group_ring(&g).with_name(name));
    }
    let inner = name.strip_prefix("R(")?.strip_suffix(')')?;
    let (left, right) = inner.rsplit_once(',')?;
    let right: u32 = right.trim().parse().ok()?;
    if let Ok(m) = left.trim().parse::<u32>() {
        if (1..=4).contains(&m) && (1..=4).contains(&right) {
            return Some(construct_rmn(m, right));
        }
        return None;
    }
    let g = parse_group(left)?;
    if g.order() > 64 {
        return None;
    }
    Some(construct_near_group(&g, right).with_name(name))
}

pub fn catalog_get(name: &str) -> Result<FusionRing, RingError> {
    let unknown = || RingError::UnknownName(name.to_string());
    match name {
        "fib" => Ok(fib()),
        "gnq8" => Ok(gnq8()),
        "ising" => Ok(relabel(construct_near_group(&FiniteGroup::cyclic(2), 0), "ising", &["1", "ψ", "σ"])),
        "rep_q8" => Ok(construct_near_group(&FiniteGroup::abelian(&[2, 2]), 0).with_name("rep_q8")),
        "rep_s3" => Ok(relabel(construct_near_group(&FiniteGroup::cyclic(2), 1), "rep_s3", &["1", "sgn", "V"])),
        _ => parse_descriptor(name).ok_or_else(unknown),
    }
}
