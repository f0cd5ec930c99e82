mod common;

use std::time::{Duration, Instant};

use gnq_core::classify::{
    adjoint_dichotomy, classify_irrational, enumerate_gnq, supertannakian_branch_filter, tannakian_branch_filter, Branch, DSpec,
    R_C2_2_4_TAG,
};
use gnq_core::premetric::sign_form_exists;
use gnq_core::premodular::make_datum;
use gnq_core::ring::catalog::{catalog_get, catalog_names};
use gnq_core::ring::group::{abelian_groups_of_order, AbelianGroup, FiniteGroup};
use gnq_core::ring::{
    construct_group_ring, construct_near_group, construct_rmn, direct_product, fpdim_basis, grothendieck_iso, invertibles,
    subring_generated, universal_grading,
};
use gnq_core::scalars::{embed_quadratic, CycloValue, QuadraticValue, RationalAngle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn phi() -> QuadraticValue {
    QuadraticValue::from_parts((1, 2), (1, 2), 5)
}

fn theorem_reproduction() -> Outcome {
    let rep = classify_irrational(8, 8, 16).map_err(|e| e.to_string())?;
    let got: Vec<(Branch, u32, u32, QuadraticValue, String)> =
        rep.survivors.iter().map(|s| (s.branch, s.k, s.h_order, s.d.clone(), s.catalog.clone())).collect();
    let want = vec![
        (Branch::Tannakian, 1, 1, phi(), "fib".to_string()),
        (Branch::SuperTannakian, 2, 1, QuadraticValue::from_parts((1, 1), (1, 1), 2), "gnq8".to_string()),
    ];
    check(got == want, || format!("survivors {got:?}"))?;
    Ok(format!("{} profiles, survivors fib and gnq8", rep.profiles_examined))
}

fn branch_truth_tables() -> Outcome {
    for k in 1..=8 {
        for h in 1..=8 {
            let t = tannakian_branch_filter(k, h);
            check(t.accepted == ((k, h) == (1, 1)), || format!("Tannakian ({k},{h}) accepted = {}", t.accepted))?;
            let s = supertannakian_branch_filter(k, h);
            check(s.accepted == ((k, h) == (2, 1)), || format!("super-Tannakian ({k},{h}) accepted = {}", s.accepted))?;
        }
    }
    let v = supertannakian_branch_filter(1, 4);
    check(v.first_failure().is_none() && v.exclusion_tag.as_deref() == Some(R_C2_2_4_TAG), || {
        format!("(1,4) trace {:?}", v.rejected_at())
    })?;
    Ok("64 pairs per branch; (1,4) rejected only by its tag".into())
}

fn exact_root(ell: i64, g: i64) -> QuadraticValue {
    let disc = ell * ell + 4 * g;
    let mut s = 1;
    let mut i = 1;
    while i * i <= disc {
        if disc % (i * i) == 0 {
            s = i;
        }
        i += 1;
    }
    let rest = disc / (s * s);
    if rest == 1 {
        QuadraticValue::from_ratio(ell + s, 2)
    } else {
        QuadraticValue::from_parts((ell, 2), (s, 2), rest as u64)
    }
}

fn near_group_dimensions() -> Outcome {
    let mut groups: Vec<FiniteGroup> = Vec::new();
    for n in 1..=8 {
        for f in abelian_groups_of_order(n) {
            groups.push(if f.is_empty() { FiniteGroup::trivial() } else { FiniteGroup::abelian(&f) });
        }
    }
    groups.push(FiniteGroup::from_table(common::dihedral_table(3)).map_err(|e| e.to_string())?);
    groups.push(FiniteGroup::from_table(common::dihedral_table(4)).map_err(|e| e.to_string())?);
    groups.push(FiniteGroup::quaternion());
    let mut count = 0;
    for g in &groups {
        for ell in 0..=4u32 {
            let ring = construct_near_group(g, ell);
            let rho = g.order();
            let d = exact_root(ell as i64, g.order() as i64);
            let dims = fpdim_basis(&ring);
            let exact = dims.exact().map_err(|e| format!("{}: {e}", ring.name()))?;
            check(exact[rho] == d, || format!("{}: d = {} vs {d}", ring.name(), exact[rho]))?;
            let numeric = common::perron(&common::left_matrix(&ring, rho));
            check((numeric - d.to_f64()).abs() < 1e-9, || format!("{}: Perron {numeric} vs {d}", ring.name()))?;
            let total = &QuadraticValue::integer(g.order() as i64) + &d.pow(2);
            check(dims.total_exact() == Some(total.clone()), || format!("{}: total {:?} vs {total}", ring.name(), dims.total_exact()))?;
            count += 1;
        }
    }
    Ok(format!("{count} near-group rings"))
}

fn rmn_structure() -> Outcome {
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            let ring = construct_rmn(m, n);
            let g = invertibles(&ring);
            let noninv = ring.rank() - g.order();
            check(noninv == 1 << (m - 1), || format!("R({m},{n}): {noninv} noninvertibles"))?;
            check(g.order() == 1 << (m + n - 1), || format!("R({m},{n}): {} invertibles", g.order()))?;
            let mut factors = vec![1usize << (m - 1)];
            factors.extend(std::iter::repeat_n(2, n as usize));
            factors.retain(|&f| f > 1);
            let expected = FiniteGroup::abelian(&factors).invariants();
            check(g.invariants == expected, || format!("R({m},{n}): G_R invariants {:?} vs {expected:?}", g.invariants))?;
            let u = universal_grading(&ring).map_err(|e| e.to_string())?;
            check(u.invariants == Some(vec![1 << m]), || format!("R({m},{n}): U = {:?}", u.invariants))?;
            check(adjoint_dichotomy(&ring), || format!("R({m},{n}): adjoint dichotomy fails"))?;
        }
    }
    Ok("m, n ≤ 3".into())
}

fn worked_example() -> Outcome {
    let near = construct_near_group(&FiniteGroup::abelian(&[2, 2]), 0);
    let c4 = construct_group_ring(&FiniteGroup::cyclic(4));
    let big = direct_product(&near, &c4);
    // ρ ⊗ g with g a generator of C4
    let rho_g = (near.rank() - 1) * c4.rank() + 1;
    let sub = subring_generated(&big, &[rho_g]);
    let g = invertibles(&sub.ring);
    check(g.order() == 8 && sub.ring.rank() == 10, || format!("{} invertibles, rank {}", g.order(), sub.ring.rank()))?;
    let iso = grothendieck_iso(&sub.ring, &construct_rmn(2, 2));
    check(iso.is_isomorphic(), || "not isomorphic to R(2,2)".into())?;
    Ok("8 + 2 basis elements, ≅ R(2,2)".into())
}

fn fibonacci_s_matrix() -> Outcome {
    let datum = make_datum(
        catalog_get("fib").map_err(|e| e.to_string())?,
        vec![QuadraticValue::one(), phi()],
        vec![RationalAngle::zero(), RationalAngle::new(2, 5)],
    )
    .map_err(|e| e.to_string())?;
    let s = datum.s_matrix();
    let exact = s.exact.ok_or("no exact S-matrix")?;
    let n = datum.conductor() as u32;
    let f = embed_quadratic(&phi(), n).map_err(|e| e.to_string())?;
    let one = CycloValue::one(n);
    let want = [[one.clone(), f.clone()], [f, one.neg()]];
    for x in 0..2 {
        for y in 0..2 {
            check(exact[x][y].exact_eq(&want[x][y]), || format!("s[{x}][{y}] = {}", exact[x][y]))?;
        }
    }
    check(datum.symmetric_center() == vec![0], || format!("symmetric center {:?}", datum.symmetric_center()))?;
    Ok(format!("exact in Q(ζ_{n})"))
}

fn deequivariantization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for trial in 0..50 {
        let pm = common::random_premetric(&mut rng, 16);
        let admissible = common::admissible_subgroups(&pm);
        let h2 = admissible[rng.random_range(0..admissible.len())].clone();
        let inner: Vec<&Vec<usize>> = admissible.iter().filter(|h| h.iter().all(|x| h2.contains(x))).collect();
        let h1 = inner[rng.random_range(0..inner.len())].clone();
        if h2.len() > 1 {
            nontrivial += 1;
        }
        let d2 = pm.deequivariantize(&h2).map_err(|e| format!("trial {trial}: {e}"))?;
        let d1 = pm.deequivariantize(&h1).map_err(|e| format!("trial {trial}: {e}"))?;
        check(d2.quotient.order() * h2.len() == pm.order(), || format!("trial {trial}: |G/H|·|H| ≠ |G|"))?;
        check(d1.quotient.order() * h1.len() == pm.order(), || format!("trial {trial}: |G/H|·|H| ≠ |G|"))?;
        let image: Vec<usize> = h2.iter().map(|&h| d1.projection[h]).collect();
        let d12 = d1.quotient.deequivariantize(&image).map_err(|e| format!("trial {trial}: iterated {e}"))?;
        check(d12.quotient.order() == d2.quotient.order(), || format!("trial {trial}: iterated order"))?;
        for g in 0..pm.order() {
            let direct = d2.quotient.q(d2.projection[g]);
            let composed = d12.quotient.q(d12.projection[d1.projection[g]]);
            check(direct == pm.q(g) && composed == pm.q(g), || format!("trial {trial}: q̃ differs at {}", pm.label(g)))?;
            let in_kernel = d12.projection[d1.projection[g]] == 0;
            check(in_kernel == h2.contains(&g) && (d2.projection[g] == 0) == h2.contains(&g), || {
                format!("trial {trial}: kernel mismatch at {}", pm.label(g))
            })?;
        }
    }
    Ok(format!("50 trials, {nontrivial} with nontrivial H"))
}

fn sign_forms() -> Outcome {
    let mut count = 0;
    for n in 1..=32 {
        for f in abelian_groups_of_order(n) {
            let elementary = f.iter().all(|&x| x == 2);
            let got = sign_form_exists(&f).exists;
            check(got == elementary, || format!("{f:?}: exists = {got}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} groups"))
}

fn enumerator_oracle() -> Outcome {
    let mut configs = 0;
    for order in 1..=4 {
        for f in abelian_groups_of_order(order) {
            let g = AbelianGroup::new(if f.is_empty() { vec![1] } else { f.clone() });
            for h in g.subgroups() {
                for bound in 1..=2u32 {
                    let naive = common::naive_gnq(&g, &h, bound);
                    let max_r = bound * (order / h.len()) as u32;
                    for r in 0..=max_r {
                        let fast: std::collections::BTreeSet<(Vec<usize>, Vec<u32>)> = enumerate_gnq(&g, &h, DSpec::Multiplicity(r), bound)
                            .map_err(|e| e.to_string())?
                            .iter()
                            .map(|ring| (ring.duals().to_vec(), ring.flat_tensor().to_vec()))
                            .collect();
                        let slow = naive.get(&r).cloned().unwrap_or_default();
                        check(fast == slow, || {
                            format!("G={f:?} |H|={} r={r} bound={bound}: {} pruned vs {} naive", h.len(), fast.len(), slow.len())
                        })?;
                        configs += 1;
                    }
                }
            }
        }
    }
    let trivial = AbelianGroup::new(vec![1]);
    let fib = enumerate_gnq(&trivial, &[0], DSpec::KH { k: 1, h: 1 }, 1).map_err(|e| e.to_string())?;
    check(fib.len() == 1 && grothendieck_iso(&fib[0], &catalog_get("fib").unwrap()).is_isomorphic(), || {
        format!("fib spec gave {} rings", fib.len())
    })?;
    let c2 = AbelianGroup::new(vec![2]);
    let ising = enumerate_gnq(&c2, &[0, 1], DSpec::KH { k: 0, h: 2 }, 1).map_err(|e| e.to_string())?;
    check(ising.len() == 1 && grothendieck_iso(&ising[0], &catalog_get("ising").unwrap()).is_isomorphic(), || {
        format!("R(C2,0) spec gave {} rings", ising.len())
    })?;
    Ok(format!("{configs} configurations agree; fib and R(C2,0) recovered uniquely"))
}

fn axiom_fuzzing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    let mut lines = Vec::new();
    let mut worst = 100;
    for name in catalog_names() {
        let ring = catalog_get(name).unwrap();
        let r = ring.rank();
        let mut failing = 0;
        let mut restored = Vec::new();
        for _ in 0..100 {
            let (i, j, k) = (rng.random_range(0..r), rng.random_range(0..r), rng.random_range(0..r));
            let old = ring.n(i, j, k);
            let mut value = rng.random_range(0..=3u32);
            while value == old {
                value = rng.random_range(0..=3u32);
            }
            let mutant = ring.with_entry(i, j, k, value);
            let verdict = mutant.verify_axioms().is_pass();
            if verdict != common::ring_ok(&mutant) {
                return Err(format!("{name}: verify_axioms disagrees with the oracle at N[{i}][{j}][{k}] = {value}"));
            }
            if verdict {
                restored.push(format!("N[{i}][{j}][{k}]: {old}→{value}"));
            } else {
                failing += 1;
            }
        }
        worst = worst.min(failing);
        let mut uniq = restored.clone();
        uniq.sort();
        uniq.dedup();
        println!("    {name}: {failing}/100 mutations rejected; valid mutants: {uniq:?}");
        lines.push(format!("{name} {failing}/100"));
    }
    let summary = lines.join(", ");
    if worst >= 95 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 theorem reproduction", theorem_reproduction, Duration::from_secs(5)),
        ("2 branch-filter truth tables", branch_truth_tables, Duration::from_secs(1)),
        ("3 near-group dimensions", near_group_dimensions, Duration::from_secs(5)),
        ("4 R(m,n) structure", rmn_structure, Duration::from_secs(10)),
        ("5 worked example", worked_example, Duration::from_secs(5)),
        ("6 Fibonacci S-matrix", fibonacci_s_matrix, Duration::from_secs(1)),
        ("7 de-equivariantization", deequivariantization, Duration::from_secs(5)),
        ("8 sign forms", sign_forms, Duration::from_secs(30)),
        ("9 enumerator vs naive search", enumerator_oracle, Duration::from_secs(60)),
        ("10 axiom fuzzing", axiom_fuzzing, Duration::from_secs(10)),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match (&result, elapsed <= limit) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit:?} limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("{status} criterion {name} ({elapsed:.2?}): {detail}");
        if status == "FAIL" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
