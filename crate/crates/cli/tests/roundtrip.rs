//! parse ∘ print = identity on printed values: polynomials, one-forms,
//! and the lettered size-two rendering.

use proptest::prelude::*;
use qflag::letters_n2;
use qflag::parse::{parse_form, parse_poly};
use qflag_core::calculus::OneForm;
use qflag_core::ncalg::{AlgebraSpec, NcPoly};
use qflag_core::QScalar;

fn scalar_strat(root: u32) -> impl Strategy<Value = QScalar> {
    // sums of rational multiples of q-powers; exponents use denominator 1 or
    // the session root, which are exactly the shapes the printer emits
    prop::collection::vec((-5i64..=5, any::<bool>(), -9i64..=9, 1i64..=4), 1..=2).prop_map(
        move |parts| {
            let mut acc = QScalar::zero(root);
            for (k, fractional, a, b) in parts {
                let den = if fractional { i64::from(root) } else { 1 };
                let power = QScalar::q_power(k, den, root).expect("denominator divides");
                let rational = QScalar::from_int(a, root)
                    .div(&QScalar::from_int(b, root))
                    .expect("denominator is nonzero");
                acc = acc.add(&power.mul(&rational));
            }
            acc
        },
    )
}

fn poly_strat(n: u8) -> impl Strategy<Value = NcPoly> {
    let spec = AlgebraSpec::special_unitary(n, u32::from(n));
    let root = u32::from(n);
    prop::collection::vec(
        (scalar_strat(root), prop::collection::vec((1..=n, 1..=n), 0..=2)),
        1..=3,
    )
    .prop_map(move |terms| {
        let mut acc = NcPoly::zero(spec);
        for (c, word) in terms {
            let mut t = NcPoly::scalar(spec, c);
            for (i, j) in word {
                t = t.mul(&NcPoly::gen(spec, i, j).unwrap());
            }
            acc = acc.add(&t);
        }
        acc
    })
}

proptest! {
    #[test]
    fn printed_polynomials_reparse_identically_at_size_two(p in poly_strat(2)) {
        let spec = AlgebraSpec::special_unitary(2, 2);
        let text = p.to_string();
        let back = parse_poly(&text, spec).expect("printed output parses");
        prop_assert_eq!(back, p);
    }

    #[test]
    fn lettered_output_reparses_identically(p in poly_strat(2)) {
        let spec = AlgebraSpec::special_unitary(2, 2);
        let text = letters_n2(&p.to_string());
        let back = parse_poly(&text, spec).expect("lettered output parses");
        prop_assert_eq!(back, p);
    }

    #[test]
    fn printed_forms_reparse_identically(coeffs in prop::collection::vec(poly_strat(2), 3)) {
        let spec = AlgebraSpec::special_unitary(2, 2);
        let mut f = OneForm::zero(spec);
        for (t, c) in coeffs.iter().enumerate() {
            f = f.add(&OneForm::frame(spec, t).left_mul(c));
        }
        let text = f.to_string();
        let back = parse_form(&text, spec).expect("printed output parses");
        prop_assert_eq!(back, f);
    }
}

mod size_three {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn printed_polynomials_reparse_identically(p in poly_strat(3)) {
            let spec = AlgebraSpec::special_unitary(3, 3);
            let text = p.to_string();
            let back = parse_poly(&text, spec).expect("printed output parses");
            prop_assert_eq!(back, p);
        }

        #[test]
        fn printed_forms_reparse_identically(coeffs in prop::collection::vec(poly_strat(3), 5)) {
            let spec = AlgebraSpec::special_unitary(3, 3);
            let mut f = OneForm::zero(spec);
            for (t, c) in coeffs.iter().enumerate() {
                f = f.add(&OneForm::frame(spec, t).left_mul(c));
            }
            let text = f.to_string();
            let back = parse_form(&text, spec).expect("printed output parses");
            prop_assert_eq!(back, f);
        }
    }
}
