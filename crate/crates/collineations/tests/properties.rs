//! Property-based invariants for the algebraic core: canonical rendering
//! round-trips, evaluation is a ring homomorphism, the bracket is bilinear
//! and antisymmetric, Jacobi holds at sampled parameters, and the nullspace
//! computation is sound on arbitrary 6x3 systems.

use std::collections::BTreeMap;

use proptest::prelude::*;

use collineations::lie::{bracket, jacobi_residual, make_family, Family, FamilySpec, FrameVector, Mode};
use collineations::scalar::{Rational, Scalar, Var};
use collineations::solver::{nullspace, rref};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(num, den)| Rational::new(num, den).unwrap())
}

/// Random polynomial as an arithmetic combination of variables and
/// constants, exercising the same ops the engine uses.
fn arb_scalar() -> impl Strategy<Value = Scalar> {
    let leaf = prop_oneof![
        arb_rational().prop_map(Scalar::rational),
        any::<u8>().prop_map(|i| Scalar::var(Var::ALL[(i % 4) as usize])),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        (inner.clone(), inner, 0u8..3).prop_map(|(a, b, op)| match op {
            0 => a.add(&b),
            1 => a.sub(&b),
            _ => a.mul(&b),
        })
    })
}

fn arb_assignment() -> impl Strategy<Value = BTreeMap<Var, Rational>> {
    proptest::collection::vec(arb_rational(), 4).prop_map(|values| {
        Var::ALL.into_iter().zip(values).collect()
    })
}

fn arb_frame_vector() -> impl Strategy<Value = FrameVector> {
    proptest::collection::vec(arb_rational(), 3).prop_map(|values| {
        FrameVector([
            Scalar::rational(values[0].clone()),
            Scalar::rational(values[1].clone()),
            Scalar::rational(values[2].clone()),
        ])
    })
}

proptest! {
    #[test]
    fn canonical_rendering_round_trips(scalar in arb_scalar()) {
        let rendered = scalar.to_string();
        let reparsed: Scalar = rendered.parse().unwrap();
        prop_assert_eq!(&reparsed, &scalar);
        prop_assert_eq!(reparsed.to_string(), rendered);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(
        a in arb_scalar(),
        b in arb_scalar(),
        assignment in arb_assignment(),
    ) {
        let ea = a.eval(&assignment).unwrap();
        let eb = b.eval(&assignment).unwrap();
        prop_assert_eq!(a.add(&b).eval(&assignment).unwrap(), &ea + &eb);
        prop_assert_eq!(a.mul(&b).eval(&assignment).unwrap(), &ea * &eb);
        prop_assert_eq!(a.sub(&b).eval(&assignment).unwrap(), &ea - &eb);
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        x in arb_frame_vector(),
        y in arb_frame_vector(),
        z in arb_frame_vector(),
        c in arb_rational(),
    ) {
        let table = Family::G7.symbolic_table();
        // [x + c z, y] = [x,y] + c [z,y]
        let left = bracket(&x.add(&z.scale(&Scalar::rational(c.clone()))), &y, &table);
        let right = bracket(&x, &y, &table)
            .add(&bracket(&z, &y, &table).scale(&Scalar::rational(c)));
        for k in 0..3 {
            prop_assert_eq!(&left.0[k], &right.0[k]);
        }
        // antisymmetry
        let xy = bracket(&x, &y, &table);
        let yx = bracket(&y, &x, &table);
        for k in 0..3 {
            prop_assert!(xy.0[k].add(&yx.0[k]).is_zero());
        }
    }

    #[test]
    fn jacobi_holds_at_sampled_parameters(assignment in arb_assignment()) {
        for &family in &Family::ALL {
            let numeric = make_family(&FamilySpec {
                family,
                params: assignment.clone(),
                mode: Mode::Numeric,
            });
            // samples violating a family's constraints are rejected by the
            // gate; every accepted table must satisfy Jacobi exactly
            if let Ok(table) = numeric {
                prop_assert!(jacobi_residual(&table).is_zero());
            }
        }
    }

    #[test]
    fn nullspace_is_sound_and_maximal(
        entries in proptest::collection::vec(arb_rational(), 18),
    ) {
        let matrix: [[Rational; 3]; 6] =
            std::array::from_fn(|r| std::array::from_fn(|c| entries[3 * r + c].clone()));
        let basis = nullspace(&matrix);
        for vec in &basis {
            for row in &matrix {
                let mut acc = Rational::zero();
                for k in 0..3 {
                    acc = &acc + &(&row[k] * &vec[k]);
                }
                prop_assert!(acc.is_zero());
            }
        }
        let mut m: Vec<Vec<Rational>> = matrix.iter().map(|r| r.to_vec()).collect();
        let rank = rref(&mut m).len();
        prop_assert_eq!(rank + basis.len(), 3);
    }
}
