use super::io::{read_json, resolve_ring, save_ring_file, RingFile};
use super::{CatalogKind, CliError, Command, ConstructKind, Outcome, Report};
use crate::classify::{
    classify_irrational, classify_ring, conjecture_report, enumerate_gnq, gnq_profile, nilpotency_class, ClassifyError, DSpec,
    Outcome as Placement,
};
use crate::premetric::{parse_tuple, PreMetricFile, PremetricError};
use crate::premodular::DatumFile;
use crate::ring::catalog::{catalog_get, catalog_list, parse_group};
use crate::ring::group::AbelianGroup;
use crate::ring::{
    adjoint_subring, construct_group_ring, construct_near_group, construct_rmn, dimensional_grading, direct_product,
    fixed_point_subgroup, fpdim_basis, grothendieck_iso, invertibles, orbit_decomposition, universal_grading, FusionRing,
};

pub(super) fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Verify { ring } => verify(&ring),
        Command::Analyze { ring } => analyze(&ring),
        Command::Construct { what, out } => construct(what, out),
        Command::Iso { a, b } => iso(&a, &b),
        Command::ClassifyIrrational { kmax, hmax, gmax } => irrational(kmax, hmax, gmax),
        Command::Classify { ring } => classify(&ring),
        Command::Enumerate {
            group,
            subgroup,
            k,
            h,
            r,
            mult_bound,
        } => enumerate(&group, &subgroup, k, h, r, mult_bound),
        Command::Deq { premetric, subgroup, out } => deq(&premetric, &subgroup, out),
        Command::PremodularCheck { ring, datum } => premodular(&ring, &datum),
        Command::ConjectureReport { gmax, nmax } => conjecture(gmax, nmax),
        Command::Catalog { what } => catalog(what.unwrap_or(CatalogKind::List)),
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn labels(ring: &FusionRing, idx: &[usize]) -> String {
    let l: Vec<&str> = idx.iter().map(|&i| ring.label(i)).collect();
    format!("{{{}}}", l.join(", "))
}

fn verify(arg: &str) -> Result<Report, CliError> {
    let ring = resolve_ring(arg, false)?;
    let axioms = ring.verify_axioms();
    let mut rep = Report::new(format!("verify {}", ring.name()));
    rep.text("axioms", axioms.to_string());
    if !axioms.is_pass() {
        rep.detail("violations", &axioms);
        rep.outcome = Outcome::Negative;
    }
    Ok(rep)
}

fn analyze(arg: &str) -> Result<Report, CliError> {
    let ring = resolve_ring(arg, true)?;
    let mut rep = Report::new(format!("analyze {}", ring.name()));
    let dims = fpdim_basis(&ring);
    let rows: Vec<Vec<String>> = (0..ring.rank())
        .map(|i| {
            let exact = dims.exact.as_ref().map(|e| e[i].to_string()).unwrap_or_else(|| "-".into());
            vec![
                i.to_string(),
                ring.label(i).to_string(),
                ring.label(ring.dual(i)).to_string(),
                exact,
                format!("{:.12}", dims.numeric[i]),
            ]
        })
        .collect();
    rep.table("basis", &["index", "label", "dual", "FPdim", "numeric"], rows);
    let total = match dims.total_exact() {
        Some(t) => format!("{t} ≈ {:.12}", dims.total_numeric()),
        None => format!("{:.12} ({})", dims.total_numeric(), dims.note.clone().unwrap_or_default()),
    };
    rep.text("FPdim(R)", total);

    let group = invertibles(&ring);
    rep.text("invertibles", format!("G_R ≅ {} = {}", group.name, labels(&ring, &group.elements)));
    let orbits = orbit_decomposition(&ring);
    let orbit_text: Vec<String> = orbits.orbits.iter().map(|o| labels(&ring, o)).collect();
    rep.text(
        "orbits",
        format!(
            "{}{}",
            orbit_text.join(" "),
            if orbits.generalized_near_group { " (generalized near-group)" } else { "" }
        ),
    );
    if let Ok(h) = fixed_point_subgroup(&ring) {
        rep.text("fixed-point subgroup", format!("H = {} of order {}", labels(&ring, &h), h.len()));
    }
    for (title, grading) in [("universal grading", universal_grading(&ring)), ("dimensional grading", dimensional_grading(&ring))] {
        match grading {
            Ok(g) => {
                let comps: Vec<String> = g.components.iter().map(|c| labels(&ring, c)).collect();
                rep.text(title, format!("{}: {}", g.group_name, comps.join(" ")));
            }
            Err(e) => {
                rep.text(title, e.to_string());
            }
        }
    }
    let ad = adjoint_subring(&ring);
    rep.text("adjoint subring", labels(&ring, &ad.embedding));
    rep.text(
        "nilpotency",
        match nilpotency_class(&ring) {
            Ok(n) => format!("class {n}"),
            Err(_) => "NotNilpotent".into(),
        },
    );
    match gnq_profile(&ring) {
        Ok(p) => {
            let k = p.k.map(|k| k.to_string()).unwrap_or_else(|| "- (|H| ∤ r)".into());
            rep.text(
                "profile",
                format!(
                    "|G| = {}, |H| = {}, r = {}, k = {k}, d = {}, FPdim = {}",
                    p.g_order, p.h_order, p.r, p.d, p.total_fpdim
                ),
            );
            rep.detail("profile data", &p);
        }
        Err(e) => {
            rep.text("profile", e.to_string());
        }
    }
    Ok(rep)
}

fn construct(what: ConstructKind, out: Option<std::path::PathBuf>) -> Result<Report, CliError> {
    let group = |desc: &str| parse_group(desc).ok_or_else(|| CliError::Usage(format!("cannot parse group {desc:?}")));
    let ring = match what {
        ConstructKind::Group { group: g } => construct_group_ring(&group(&g)?),
        ConstructKind::NearGroup { group: g, ell } => construct_near_group(&group(&g)?, ell),
        ConstructKind::Rmn { m, n } => {
            if !(1..=4).contains(&m) || !(1..=4).contains(&n) {
                return Err(CliError::Usage("R(m,n) needs 1 ≤ m,n ≤ 4".into()));
            }
            construct_rmn(m, n)
        }
        ConstructKind::Product { a, b } => direct_product(&resolve_ring(&a, true)?, &resolve_ring(&b, true)?),
    };
    let mut rep = Report::new(format!("construct {}", ring.name()));
    rep.text("summary", format!("rank {}, axioms {}", ring.rank(), ring.verify_axioms()));
    if let Some(path) = out {
        save_ring_file(&ring, &path)?;
        rep.text("written", path.display().to_string());
    }
    rep.json("ring", RingFile::from_ring(&ring));
    Ok(rep)
}

fn iso(a: &str, b: &str) -> Result<Report, CliError> {
    let (ra, rb) = (resolve_ring(a, true)?, resolve_ring(b, true)?);
    let result = grothendieck_iso(&ra, &rb);
    let mut rep = Report::new(format!("iso {} {}", ra.name(), rb.name()));
    match result.witness() {
        Some(w) => {
            let rows = w.iter().enumerate().map(|(i, &j)| vec![ra.label(i).to_string(), rb.label(j).to_string()]).collect();
            rep.text("result", "isomorphic");
            rep.table("bijection", &[ra.name(), rb.name()], rows);
        }
        None => {
            rep.text("result", "not isomorphic");
            rep.outcome = Outcome::Negative;
        }
    }
    rep.detail("search", &result);
    Ok(rep)
}

fn irrational(kmax: u32, hmax: u32, gmax: u32) -> Result<Report, CliError> {
    let res = classify_irrational(kmax, hmax, gmax).map_err(domain)?;
    let mut rep = Report::new(format!("classify-irrational k≤{kmax} |H|≤{hmax} |G|≤{gmax}"));
    rep.text(
        "counts",
        format!(
            "{} profiles, {} with rational d, {} failing |H| | r, {} survivor classes",
            res.profiles_examined,
            res.rational_d,
            res.noncategorifiable,
            res.survivors.len()
        ),
    );
    let rows = res
        .survivors
        .iter()
        .map(|s| {
            vec![
                format!("{:?}", s.branch),
                s.k.to_string(),
                s.h_order.to_string(),
                s.d.to_string(),
                s.catalog.clone(),
                format!("{:?}", s.g_orders),
            ]
        })
        .collect();
    rep.table("survivors", &["branch", "k", "|H|", "d", "ring", "|G|"], rows);
    let tagged: Vec<String> = res
        .rejected
        .iter()
        .filter(|r| r.rejected_at == crate::classify::R_C2_2_4_TAG)
        .map(|r| format!("{:?} (k={}, |H|={})", r.branch, r.k, r.h_order))
        .collect();
    if !tagged.is_empty() {
        rep.text("tagged exclusions", tagged.join(", "));
    }
    rep.detail("classification", &res);
    Ok(rep)
}

fn classify(arg: &str) -> Result<Report, CliError> {
    let ring = resolve_ring(arg, true)?;
    let res = classify_ring(&ring).map_err(domain)?;
    let mut rep = Report::new(format!("classify {}", ring.name()));
    let p = &res.profile;
    rep.text(
        "profile",
        format!("|G| = {}, |H| = {}, r = {}, d = {}", p.g_order, p.h_order, p.r, p.d),
    );
    for v in &res.verdicts {
        let rows = v
            .trace
            .iter()
            .map(|s| vec![s.constraint.clone(), s.values.clone(), if s.pass { "pass" } else { "fail" }.to_string()])
            .collect();
        rep.table(&format!("{:?} branch", v.branch), &["step", "values", "verdict"], rows);
        if let Some(tag) = &v.exclusion_tag {
            rep.text(&format!("{:?} exclusion", v.branch), tag.clone());
        }
    }
    match &res.outcome {
        Placement::Survivor { branch, core, l_name, .. } => {
            rep.text("result", format!("{core} × Z[{l_name}] ({branch:?})"));
        }
        Placement::Rejected { reason } => {
            rep.text("result", format!("rejected: {reason}"));
            rep.outcome = Outcome::Negative;
        }
    }
    rep.detail("classification", &res);
    Ok(rep)
}

fn parse_generators(spec: &str, factors: &[usize]) -> Result<Vec<Vec<usize>>, CliError> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_tuple(s, factors).ok_or_else(|| CliError::Usage(format!("bad element {s:?} for group {factors:?}"))))
        .collect()
}

fn enumerate(group: &str, subgroup: &str, k: Option<u32>, h: Option<u32>, r: Option<u32>, mult_bound: u32) -> Result<Report, CliError> {
    let g = parse_group(group)
        .and_then(|g| g.invariants())
        .ok_or_else(|| CliError::Usage(format!("{group:?} is not an abelian group descriptor")))?;
    let ag = AbelianGroup::new(if g.is_empty() { vec![1] } else { g });
    let h_elems = match subgroup {
        "all" => (0..ag.order()).collect(),
        "trivial" => vec![0],
        spec => {
            let gens = parse_generators(spec, ag.factors())?;
            let idx: Vec<usize> = gens.iter().map(|t| ag.from_tuple(t)).collect();
            ag.subgroup_closure(&idx)
        }
    };
    let spec = match (k, h, r) {
        (_, _, Some(r)) if k.is_none() && h.is_none() => DSpec::Multiplicity(r),
        (Some(k), Some(h), None) => DSpec::KH { k, h },
        _ => return Err(CliError::Usage("give either --r, or both --k and --h".into())),
    };
    let found = enumerate_gnq(&ag, &h_elems, spec, mult_bound).map_err(|e| match e {
        ClassifyError::Precondition(m) => CliError::Usage(m),
        other => domain(other),
    })?;
    let mut rep = Report::new(format!("enumerate {group} |H|={}", h_elems.len()));
    rep.text("count", format!("{} ring(s) pass the axioms", found.len()));
    let rows = found.iter().map(|f| vec![f.name().to_string(), f.rank().to_string()]).collect();
    rep.table("rings", &["name", "rank"], rows);
    rep.detail("ring files", found.iter().map(RingFile::from_ring).collect::<Vec<_>>());
    if found.is_empty() {
        rep.outcome = Outcome::Negative;
    }
    Ok(rep)
}

fn deq(path: &std::path::Path, subgroup: &str, out: Option<std::path::PathBuf>) -> Result<Report, CliError> {
    let file: PreMetricFile = read_json(path)?;
    let pm = file.into_premetric().map_err(domain)?;
    let gens: Vec<usize> = parse_generators(subgroup, pm.factors())?.iter().map(|t| pm.element(t)).collect();
    let mut rep = Report::new(format!("deq {}", pm.describe()));
    match pm.deequivariantize(&gens) {
        Ok(d) => {
            let q = &d.quotient;
            rep.text(
                "quotient",
                format!(
                    "|G/H| = {} = {} / {}; {}",
                    q.order(),
                    pm.order(),
                    d.subgroup.len(),
                    if d.braided { "braided" } else { "not braided (H ⊄ radical)" }
                ),
            );
            let rows = (0..q.order()).map(|g| vec![q.label(g), q.q(g).to_string()]).collect();
            rep.table("quotient form", &["element", "q"], rows);
            let file = PreMetricFile::from_premetric(q);
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(&file).expect("serializable");
                std::fs::write(&out, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
                rep.text("written", out.display().to_string());
            }
            rep.detail("premetric", &file);
        }
        Err(e @ (PremetricError::NotIsotropic { .. } | PremetricError::IllDefined { .. })) => {
            rep.text("result", e.to_string());
            rep.outcome = Outcome::Negative;
        }
        Err(e) => return Err(domain(e)),
    }
    Ok(rep)
}

fn premodular(ring_arg: &str, path: &std::path::Path) -> Result<Report, CliError> {
    let ring = resolve_ring(ring_arg, true)?;
    let file: DatumFile = read_json(path)?;
    let datum = file.into_datum(ring.clone()).map_err(domain)?;
    let mut rep = Report::new(format!("premodular-check {}", ring.name()));
    rep.text(
        "field",
        if datum.is_exact() {
            format!("exact in Q(ζ_{})", datum.conductor())
        } else {
            format!("numeric (conductor {} too large)", datum.conductor())
        },
    );
    let s = datum.s_matrix();
    let r = ring.rank();
    let rows: Vec<Vec<String>> = (0..r)
        .map(|x| {
            let mut row = vec![ring.label(x).to_string()];
            row.extend((0..r).map(|y| match &s.exact {
                Some(m) => m[x][y].to_string(),
                None => format!("{:.9}{:+.9}i", s.numeric[x][y].re, s.numeric[x][y].im),
            }));
            row
        })
        .collect();
    let mut headers = vec!["s"];
    headers.extend(ring.labels().iter().map(String::as_str));
    rep.table("S-matrix", &headers, rows);
    let cent: Vec<Vec<String>> = (0..r)
        .map(|x| {
            let c: Vec<usize> = (0..r).filter(|&y| datum.centralizes(x, y)).collect();
            vec![ring.label(x).to_string(), labels(&ring, &c)]
        })
        .collect();
    rep.table("centralizers", &["X", "centralized by"], cent);
    rep.text("symmetric center", labels(&ring, &datum.symmetric_center()));
    match datum.twist_constraint_on_h() {
        Ok(v) if v.is_empty() => {
            rep.text("fixed-point twists", "every h ∈ H has θ_h = 1");
        }
        Ok(v) => {
            let rows = v
                .iter()
                .map(|t| vec![t.element.clone(), t.twist.to_string(), t.against.clone(), t.s_value.clone(), format!("{:?}", t.kind)])
                .collect();
            rep.table("fixed-point twists", &["h", "θ_h", "X", "s_{h,X}", "kind"], rows);
            rep.outcome = Outcome::Negative;
        }
        Err(e) => {
            rep.text("fixed-point twists", e.to_string());
        }
    }
    Ok(rep)
}

fn conjecture(gmax: usize, nmax: usize) -> Result<Report, CliError> {
    if gmax > 16 || nmax > 16 {
        return Err(CliError::Usage("conjecture-report bounds are limited to 16".into()));
    }
    let res = conjecture_report(gmax, nmax);
    let mut rep = Report::new(format!("conjecture-report |G|≤{gmax} noninvertibles≤{nmax}"));
    rep.text("counts", format!("{} matched, {} unmatched", res.matched, res.unmatched));
    let rows = res
        .entries
        .iter()
        .map(|e| {
            vec![
                e.ring.clone(),
                e.group.clone(),
                e.h_order.to_string(),
                if e.h_elementary_2 { "yes" } else { "no" }.to_string(),
                e.nilpotency_class.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                e.matched.clone().unwrap_or_else(|| "unmatched".into()),
            ]
        })
        .collect();
    rep.table("rings", &["ring", "G", "|H|", "H elem. 2", "class", "template"], rows);
    rep.detail("report", &res);
    Ok(rep)
}

fn catalog(what: CatalogKind) -> Result<Report, CliError> {
    match what {
        CatalogKind::List => {
            let mut rep = Report::new("catalog");
            let rows = catalog_list().into_iter().map(|(n, d)| vec![n, d]).collect();
            rep.table("entries", &["name", "description"], rows);
            Ok(rep)
        }
        CatalogKind::Show { name } => {
            let ring = catalog_get(&name).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut rep = Report::new(format!("catalog {name}"));
            let rows = (0..ring.rank())
                .flat_map(|i| (0..ring.rank()).map(move |j| (i, j)))
                .filter(|&(i, j)| i <= j && i > 0)
                .map(|(i, j)| {
                    let terms: Vec<String> = ring
                        .product(i, j)
                        .into_iter()
                        .map(|(k, c)| if c == 1 { ring.label(k).to_string() } else { format!("{c}{}", ring.label(k)) })
                        .collect();
                    vec![format!("{}·{}", ring.label(i), ring.label(j)), terms.join(" + ")]
                })
                .collect();
            rep.table("products", &["product", "value"], rows);
            rep.json("ring", RingFile::from_ring(&ring));
            Ok(rep)
        }
    }
}
