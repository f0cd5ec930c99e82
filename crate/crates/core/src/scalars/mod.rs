//! Exact scalars: real quadratic fields, cyclotomic fields and rational angles.

mod angle;
mod cyclotomic;
mod quadratic;

pub use angle::RationalAngle;
pub use cyclotomic::{cyclotomic_polynomial, embed_quadratic, euler_phi, CycloValue};
pub use quadratic::{
    exact_isqrt, largest_root_quadratic, quadratic_conductor, recognize_quadratic_integer,
    squarefree_decompose, QuadraticValue,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("arithmetic mixes Q(√{left}) and Q(√{right})")]
    MixedField { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value needs conductor {needed}, which does not divide {given}")]
    ConductorMismatch { needed: u64, given: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(format!("invalid rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..9).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
    }

    fn quad(d: u64) -> impl Strategy<Value = QuadraticValue> {
        (small_rat(), small_rat()).prop_map(move |(a, b)| QuadraticValue::new(a, b, d))
    }

    fn field() -> impl Strategy<Value = u64> {
        prop_oneof![Just(2u64), Just(3), Just(5), Just(6), Just(7)]
    }

    proptest! {
        #[test]
        fn quadratic_field_axioms((x, y, z) in field().prop_flat_map(|d| (quad(d), quad(d), quad(d)))) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), QuadraticValue::one());
            }
        }

        #[test]
        fn conjugation_is_an_involutive_homomorphism((x, y) in field().prop_flat_map(|d| (quad(d), quad(d)))) {
            prop_assert_eq!(x.galois_conjugate().galois_conjugate(), x.clone());
            prop_assert_eq!((&x * &y).galois_conjugate(), &x.galois_conjugate() * &y.galois_conjugate());
            prop_assert_eq!((&x + &y).galois_conjugate(), &x.galois_conjugate() + &y.galois_conjugate());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn largest_root_solves_its_quadratic(b in 0i64..40, c in 1i64..40) {
            let z = largest_root_quadratic(b, c);
            let lhs = &(&z * &z) - &z.scale_int(b);
            prop_assert_eq!(lhs, QuadraticValue::integer(c));
            let expected = if z.is_rational() { std::cmp::Ordering::Equal } else { std::cmp::Ordering::Greater };
            prop_assert_eq!(z.cmp_exact(&z.galois_conjugate()).unwrap(), expected);
        }

        #[test]
        fn embedding_commutes_with_arithmetic(
            (d, x, y) in prop_oneof![Just((2u64, 8u32)), Just((5, 5)), Just((3, 12)), Just((5, 20))]
                .prop_flat_map(|(d, n)| (Just((d, n)), quad(d), quad(d)))
        ) {
            let (_, n) = d;
            let ex = embed_quadratic(&x, n).unwrap();
            let ey = embed_quadratic(&y, n).unwrap();
            prop_assert_eq!(embed_quadratic(&(&x * &y), n).unwrap(), ex.mul(&ey));
            prop_assert_eq!(embed_quadratic(&(&x + &y), n).unwrap(), ex.add(&ey));
            prop_assert!((ex.to_complex().re - x.to_f64()).abs() < 1e-12);
        }

        #[test]
        fn cyclotomic_ring_axioms(
            n in prop_oneof![Just(5u32), Just(8), Just(12), Just(15)],
            a in proptest::collection::vec(-5i64..5, 16),
            b in proptest::collection::vec(-5i64..5, 16),
            c in proptest::collection::vec(-5i64..5, 16),
        ) {
            let mk = |v: &Vec<i64>| CycloValue::from_poly(n, v.iter().map(|&x| BigRational::from_integer(x.into())).collect());
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            let num = x.mul(&y).to_complex();
            let expect = x.to_complex() * y.to_complex();
            prop_assert!((num - expect).norm() < 1e-6);
        }
    }
}
