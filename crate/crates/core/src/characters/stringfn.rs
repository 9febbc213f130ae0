//! String functions of the integer-level algebra and the infinite products
//! feeding the low-level closed forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::rat::{rat, rint, Rat};
use crate::series::QSeries;
use crate::theta::varphi_pow;

/// Canonical representative of `(ell, m)` in the fundamental domain
/// `0 <= m <= ell <= n` under the string-function symmetries
/// `c_m = c_{-m} = c_{2n-m}` and `c_m^ell = c_{n-m}^{n-ell}`.
pub fn canonical_key(n: i64, ell: i64, m: i64) -> (i64, i64) {
    assert!(n >= 1, "string functions need a positive integer level");
    assert!((0..=n).contains(&ell), "ell outside 0..=n");
    assert_eq!((ell - m).rem_euclid(2), 0, "ell - m must be even");
    let mut m = m.rem_euclid(2 * n);
    if m > n {
        m = 2 * n - m;
    }
    if m > ell {
        (n - ell, n - m)
    } else {
        (ell, m)
    }
}

/// The string function `c_m^ell(q)` at level `n`, exact to relative order
/// `q_max` above its leading exponent.
pub fn string_function(n: i64, ell: i64, m: i64, q_max: i64) -> QSeries {
    let (ell, m) = canonical_key(n, ell, m);
    // prefactor exponent, with the 1/8 from 1/eta^3 folded in
    let pref = rat((ell + 1) * (ell + 1), 4 * (n + 2)) - rat(m * m, 4 * n) - rat(1, 8);
    // Double sum. Both bracket exponents are bounded below by the separable
    // g(i) + g(l) - n with g(x) = x(x+1)/2 - xn (minimum -n(n-1)/2), so the
    // index ranges where terms can still reach q_max are finite.
    let g = |x: i64| x * (x + 1) / 2 - x * n;
    let bound = q_max + n + n * (n - 1) / 2;
    let mut idx_max = 0i64;
    while idx_max <= 2 * n || g(idx_max) <= bound {
        idx_max += 1;
    }
    let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
    for i in 0..=idx_max {
        for l in 0..=idx_max {
            debug_assert_eq!((i * (i + 1 + ell + m)) % 2, 0);
            debug_assert_eq!((l * (l + 1 + ell - m)) % 2, 0);
            let e = i * l * (n + 1)
                + (i * (i + 1 + ell + m)) / 2
                + (l * (l + 1 + ell - m)) / 2;
            let sign = if (i + l) % 2 == 0 { Rat::one() } else { rint(-1) };
            if (0..=q_max).contains(&e) {
                *acc.entry(e).or_insert_with(Rat::zero) += &sign;
            }
            let e2 = e + (i + l + 1) * (n + 1 - ell) - (i - l) * m;
            if e2 <= q_max {
                *acc.entry(e2).or_insert_with(Rat::zero) -= &sign;
            }
        }
    }
    // negative exponents must cancel identically
    for (e, c) in acc.range(..0) {
        assert!(c.is_zero(), "uncancelled negative exponent {e} in string function");
    }
    let numer = QSeries::from_terms(
        Rat::zero(),
        q_max,
        acc.into_iter().filter(|(e, _)| *e >= 0),
    );
    let inv_phi3 = varphi_pow(3, q_max).invert_unit().expect("varphi^3 is a unit");
    numer.mul(&inv_phi3).mul_monomial(&pref)
}

/// `prod_{i>=1} (1 + q^i)`, exact to `q_max`.
pub fn prod_one_plus_q(q_max: i64) -> QSeries {
    let mut acc = QSeries::one(q_max);
    let mut i = 1i64;
    while i <= q_max {
        let factor = QSeries::from_terms(Rat::zero(), q_max, [(0, Rat::one()), (i, Rat::one())]);
        acc = acc.mul(&factor);
        i += 1;
    }
    acc
}

/// Splits `prod_{i>=1} (1 + q^(i - 1/2))` into its integer-exponent and
/// half-odd-exponent parts `(E, O)`; the signed product
/// `prod (1 - q^(i-1/2))` is then `E - O`.
pub fn ns_product_split(q_max: i64) -> (QSeries, QSeries) {
    // expand in u = q^(1/2) up to u-order 2 q_max + 1
    let u_max = 2 * q_max + 1;
    let mut acc = QSeries::one(u_max);
    let mut i = 1i64;
    while 2 * i - 1 <= u_max {
        let f =
            QSeries::from_terms(Rat::zero(), u_max, [(0, Rat::one()), (2 * i - 1, Rat::one())]);
        acc = acc.mul(&f);
        i += 1;
    }
    let mut even: Vec<(i64, Rat)> = Vec::new();
    let mut odd: Vec<(i64, Rat)> = Vec::new();
    for (d, c) in acc.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = d as i64;
        if d % 2 == 0 {
            even.push((d / 2, c.clone()));
        } else {
            odd.push(((d - 1) / 2, c.clone()));
        }
    }
    (
        QSeries::from_terms(Rat::zero(), q_max, even),
        QSeries::from_terms(rat(1, 2), q_max, odd),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{eta_inv, varphi};

    #[test]
    fn canonicalization_respects_symmetries() {
        for n in 1..=4 {
            for ell in 0..=n {
                for m in (-2 * n..=3 * n).filter(|m| (ell - m) % 2 == 0) {
                    let (ce, cm) = canonical_key(n, ell, m);
                    assert!(0 <= cm && cm <= ce && ce <= n, "({ell},{m}) -> ({ce},{cm})");
                    let a = string_function(n, ell, m, 15);
                    let b = string_function(n, ce, cm, 15);
                    assert!(a.first_discrepancy(&b).is_none());
                }
            }
        }
    }

    #[test]
    fn level_one_is_inverse_eta() {
        let c = string_function(1, 0, 0, 40);
        let want = eta_inv(40);
        assert!(c.first_discrepancy(&want).is_none());
        // c00 * eta = 1
        let prod = c.mul(&crate::theta::eta(40));
        assert!(prod.first_discrepancy(&QSeries::one(40)).is_none());
    }

    #[test]
    fn level_two_closed_forms() {
        let q_max = 20;
        let inv_phi = varphi(q_max).invert_unit().unwrap();
        let (even, odd) = ns_product_split(q_max);
        // c^0_0 = q^(-1/16) E / varphi, c^0_2 = q^(-1/16) O / varphi,
        // c^1_1 = prod(1+q^i) / varphi
        let c00 = string_function(2, 0, 0, q_max);
        let c02 = string_function(2, 0, 2, q_max);
        let c11 = string_function(2, 1, 1, q_max);
        let want00 = even.mul(&inv_phi).mul_monomial(&rat(-1, 16));
        let want02 = odd.mul(&inv_phi).mul_monomial(&rat(-1, 16));
        let want11 = prod_one_plus_q(q_max).mul(&inv_phi);
        assert!(c00.first_discrepancy(&want00).is_none(), "c00");
        assert!(c02.first_discrepancy(&want02).is_none(), "c02");
        assert!(c11.first_discrepancy(&want11).is_none(), "c11");
        // equalities inside the fundamental set
        assert!(string_function(2, 2, 2, q_max).first_discrepancy(&c00).is_none());
        assert!(string_function(2, 2, 0, q_max).first_discrepancy(&c02).is_none());
    }
}
