//! Cross-module identity checks: alternating Verma sums against the theta
//! closed forms, composition-series sum rules, and decompositions at a
//! third level.

use affchar_core::characters::{irr_char, kac_char, kac_decompose, verma_char};
use affchar_core::rat::{rint, Rat};
use affchar_core::series::BiSeries;
use affchar_core::structure::verma_loewy;
use affchar_core::weights::{KacLabel, Level};
use num_traits::Zero;

/// The admissible character as the alternating sum of Verma characters over
/// its braid diagram, `sum_i (chi_{alpha_i} - chi_{beta_i})`.
#[test]
fn admissible_character_from_alternating_verma_sum() {
    for (lv, r0, s0) in [
        (Level::new(2, 3), 1i64, 1i64),
        (Level::new(2, 3), 1, 2),
        (Level::new(3, 2), 1, 1),
        (Level::new(3, 2), 2, 0),
    ] {
        let order = 10;
        let window = 8;
        let theta_form = affchar_core::characters::admissible_char(&lv, r0, s0).expand(
            order,
            &rint(-window),
            &rint(window),
        );
        let p = lv.p();
        let mut sum: Option<BiSeries> = None;
        // alpha_i = j + ip, beta_i = j - r0 + ip; terms beyond the order
        // cannot reach the window
        for i in -8..=8i64 {
            let alpha = lv.j(r0 + 2 * i * p, s0);
            let beta = lv.j(-r0 + 2 * i * p, s0);
            let a = verma_char(&lv, &alpha).expand(order, &rint(-window), &rint(window));
            let b = verma_char(&lv, &beta).expand(order, &rint(-window), &rint(window));
            let term = a.sub(&b);
            sum = Some(match sum {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        let sum = sum.unwrap();
        assert!(
            theta_form
                .first_discrepancy_in(&sum, Some((&rint(-5), &rint(5))))
                .is_none(),
            "(p,p')=({},{}) (r0,s0)=({r0},{s0}): {:?}",
            lv.p(),
            lv.pp(),
            theta_form.first_discrepancy_in(&sum, Some((&rint(-5), &rint(5))))
        );
    }
}

/// The Verma character equals the sum of the irreducible characters of its
/// composition factors (each Loewy node once).
#[test]
fn verma_character_is_the_sum_of_its_factors() {
    for (lv, label) in [
        (Level::new(3, 2), KacLabel::new(1, 0)),
        (Level::new(2, 3), KacLabel::new(1, 2)),
        (Level::new(2, 3), KacLabel::new(1, 1)),
    ] {
        let order = 10;
        let window = 8;
        let j = lv.j(label.r, label.s);
        let verma = verma_char(&lv, &j).expand(order, &rint(-window), &rint(window));
        // nodes deep enough that anything further starts beyond the order
        let diagram = verma_loewy(&lv, label, 12).unwrap();
        let mut sum: Option<BiSeries> = None;
        for node in &diagram.nodes {
            let t = irr_char(&lv, node.label)
                .unwrap()
                .expand(order, &rint(-window), &rint(window));
            sum = Some(match sum {
                Some(s) => s.add(&t),
                None => t,
            });
        }
        let sum = sum.unwrap();
        assert!(
            verma
                .first_discrepancy_in(&sum, Some((&rint(-5), &rint(5))))
                .is_none(),
            "({},{}) label ({},{}): {:?}",
            lv.p(),
            lv.pp(),
            label.r,
            label.s,
            verma.first_discrepancy_in(&sum, Some((&rint(-5), &rint(5))))
        );
    }
}

/// The Kac decomposition at a third level, exercising windows and shifts
/// away from the two standard test levels.
#[test]
fn kac_decomposition_at_level_five_thirds() {
    let lv = Level::new(5, 3);
    for (r, s) in [(1i64, 1i64), (2, 1), (4, 2), (6, 1), (5, 2), (7, 4), (-5, -1), (-2, -4)] {
        let label = KacLabel::new(r, s);
        if !label.is_valid() {
            continue;
        }
        let kac = kac_char(&lv, label).unwrap().expand(12, &rint(-6), &rint(6));
        let mut sum: Option<BiSeries> = None;
        for lab in kac_decompose(&lv, label).unwrap() {
            let t = irr_char(&lv, lab).unwrap().expand(12, &rint(-6), &rint(6));
            sum = Some(match sum {
                Some(s) => s.add(&t),
                None => t,
            });
        }
        let sum = sum.unwrap();
        assert!(
            kac.first_discrepancy(&sum).is_none(),
            "({r},{s}): {:?}",
            kac.first_discrepancy(&sum)
        );
    }
}

/// Positivity and integrality of Verma weight-space dimensions per fixed
/// charge: the q-column of the expansion is a power series with
/// non-negative integer coefficients.
#[test]
fn verma_columns_are_integral_power_series() {
    let lv = Level::new(5, 3);
    let j = lv.j(2, 1);
    let ch = verma_char(&lv, &j).expand(10, &(-&j - rint(6)), &(-&j + rint(6)));
    for q in -5..=5i64 {
        let col = ch.z_column(&(-&j + rint(q))).expect("column in window");
        for c in col.coeffs() {
            assert!(c.denom() == &num_bigint::BigInt::from(1));
            assert!(c >= &Rat::zero());
        }
    }
}
