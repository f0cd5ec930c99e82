use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use super::{ClassifyError, GnqProfile};
use crate::scalars::{largest_root_quadratic, QuadraticValue};

pub const R_C2_2_4_TAG: &str = "R(C_2^2,4)-no-braided";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Tannakian,
    SuperTannakian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub constraint: String,
    pub values: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchVerdict {
    pub branch: Branch,
    pub k: u32,
    pub h_order: u32,
    pub d: QuadraticValue,
    pub accepted: bool,
    pub trace: Vec<TraceStep>,
    pub exclusion_tag: Option<String>,
}

impl BranchVerdict {
    fn new(branch: Branch, k: u32, h: u32, d: QuadraticValue) -> Self {
        BranchVerdict {
            branch,
            k,
            h_order: h,
            d,
            accepted: false,
            trace: Vec::new(),
            exclusion_tag: None,
        }
    }

    fn step(&mut self, constraint: &str, values: String, pass: bool) {
        self.trace.push(TraceStep {
            constraint: constraint.into(),
            values,
            pass,
        });
    }

    fn finish(mut self) -> Self {
        self.accepted = self.trace.iter().all(|s| s.pass) && self.exclusion_tag.is_none();
        self
    }

    pub fn first_failure(&self) -> Option<&TraceStep> {
        self.trace.iter().find(|s| !s.pass)
    }

    /// Name of the step that rejects, or the exclusion tag.
    pub fn rejected_at(&self) -> Option<String> {
        if self.accepted {
            return None;
        }
        self.first_failure()
            .map(|s| s.constraint.clone())
            .or_else(|| self.exclusion_tag.clone())
    }
}

/// `|H|` divides `r`.
pub fn categorifiability_filter(p: &GnqProfile) -> Result<bool, ClassifyError> {
    if p.d.is_rational() {
        return Err(ClassifyError::RationalDimension(p.d.to_string()));
    }
    Ok((p.r as usize).is_multiple_of(p.h_order))
}

fn q(n: i64) -> QuadraticValue {
    QuadraticValue::integer(n)
}

/// The Tannakian case: the fixed points give `Rep(H)` and `d σ(d) = −|H|`.
pub fn tannakian_branch_filter(k: u32, h: u32) -> BranchVerdict {
    assert!(k >= 1 && h >= 1);
    let d = largest_root_quadratic((k * h) as i64, h as i64);
    let sigma = d.galois_conjugate();
    let mut v = BranchVerdict::new(Branch::Tannakian, k, h, d.clone());
    v.step("d irrational", format!("d = {d}"), !d.is_rational());
    let prod = &d * &sigma;
    v.step("conjugate-product", format!("dσ(d) = {prod}"), prod == q(-(h as i64)));
    let sum = &d + &sigma;
    v.step("conjugate-sum", format!("d+σ(d) = {sum}"), sum == q((k * h) as i64));
    let ratio = (-&sigma).checked_div(&d).expect("d ≠ 0");
    let third = QuadraticValue::from_ratio(1, 3);
    let kd = d.scale_int(k as i64);
    v.step(
        "kd<2",
        format!("−σ(d)/d = {ratio}, kd = {kd}"),
        ratio.cmp_exact(&third).ok() == Some(Ordering::Greater) && kd.cmp_exact(&q(2)).ok() == Some(Ordering::Less),
    );
    v.step("k=1", format!("k = {k}"), k == 1);
    v.step("d<2", format!("d = {d}"), d.cmp_exact(&q(2)).ok() == Some(Ordering::Less));
    v.finish()
}

/// The super-Tannakian case, with the low-rank inputs for `dim(C_K)` fixed.
pub fn supertannakian_branch_filter(k: u32, h: u32) -> BranchVerdict {
    assert!(k >= 1 && h >= 1);
    let d = largest_root_quadratic((k * h) as i64, h as i64);
    let mut v = BranchVerdict::new(Branch::SuperTannakian, k, h, d.clone());
    v.step("d irrational", format!("d = {d}"), !d.is_rational());

    let square = |num: u32| -> bool {
        let ratio = QuadraticValue::from_ratio(num as i64, h as i64);
        let r = ratio.rational_part();
        let (n, m) = (r.numer().clone(), r.denom().clone());
        crate::scalars::exact_isqrt(&n).is_some() && crate::scalars::exact_isqrt(&m).is_some()
    };
    let r_x: Vec<u32> = [1u32, 2].into_iter().filter(|&rx| square(rx)).collect();
    v.step("(i) r_X/|H| square", format!("r_X ∈ {r_x:?}"), !r_x.is_empty());
    let q_x: Vec<u32> = r_x.iter().map(|rx| k * rx).collect();
    v.step("(ii) q_X = k·r_X", format!("q_X ∈ {q_x:?}"), !q_x.is_empty());

    let kd = d.scale_int(k as i64);
    let dim_ck = (&q(2) + &kd).scale_int(2);
    let golden = QuadraticValue::from_parts((5, 2), (1, 2), 5);
    let silver = QuadraticValue::from_parts((8, 1), (4, 1), 2);
    v.step(
        "(iii) dim(C_K) admissible",
        format!("2(2+kd) = {dim_ck}"),
        dim_ck == golden || dim_ck == silver,
    );
    let half = dim_ck.scale(&num_rational::BigRational::new(1.into(), 2.into()));
    let parity_ok = !(dim_ck == golden && !half.is_algebraic_integer());
    v.step("(iv) parity", format!("dim(C_K)/2 = {half}"), parity_ok);

    let target = QuadraticValue::from_parts((2, 1), (2, 1), 2);
    let norm = kd.abs_norm();
    let divides = norm.is_integer() && !norm.numer().is_zero() && (norm.numer() % (k as i64)) == 0.into();
    v.step(
        "(v) norm divisibility",
        format!("kd = {kd}, |N(kd)| = {norm}"),
        kd == target && divides,
    );
    if k == 1 {
        v.exclusion_tag = Some(R_C2_2_4_TAG.into());
        v.step("(vi) k=1 forces |H|=4", format!("|H| = {h}"), h == 4);
    } else {
        v.step("(vi) k=1 forces |H|=4", format!("k = {k}"), true);
    }
    v.finish()
}
