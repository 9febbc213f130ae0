//! Coset branching: branching functions of Kac characters through string
//! functions, the independent reciprocal-based route, exact verification of
//! the branching rule, and the specializations to Virasoro and
//! superconformal characters including staggered branching.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::characters::{
    integer_level_char, kac_char, staggered_char_closed, string_function, superconformal_kac_char,
    virasoro_kac_char,
};
use crate::rat::{rat, rint, to_i64, Rat};
use crate::series::{BiSeries, QSeries};
use crate::structure::StaggeredDescriptor;
use crate::theta::{biseries_from_q, fm};
use crate::weights::{KacLabel, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchingError {
    /// `sigma` violates `sigma = r + ns + rho - 1 (mod 2)`.
    Parity,
    /// Sign or range constraints on `(r, s, rho, sigma)` violated.
    BadKey,
}

fn check_key(n: i64, r: i64, s: i64, rho: i64, sigma: i64) -> Result<(), BranchingError> {
    if n < 1 || !(1..=n + 1).contains(&rho) {
        return Err(BranchingError::BadKey);
    }
    let valid_sector = (r > 0 && s >= 0 && sigma > 0) || (r < 0 && s < 0 && sigma < 0);
    if !valid_sector {
        return Err(BranchingError::BadKey);
    }
    if (sigma - (r + n * s + rho - 1)).rem_euclid(2) != 0 {
        return Err(BranchingError::Parity);
    }
    Ok(())
}

/// The string-function selector: `ell = rho - 1` for even `s`, else
/// `n + 1 - rho`.
fn ell_for(n: i64, s: i64, rho: i64) -> i64 {
    if s.rem_euclid(2) == 0 {
        rho - 1
    } else {
        n + 1 - rho
    }
}

/// Branching function of the Kac character `chi_{r,s}^{p,p'}` against
/// `ch_{rho,0}^{n+2,1}`, at the coset label `sigma`:
/// a stretched-lattice q-series `q^pow [c_{r-sigma} - q^{r sigma/n} c_{r+sigma}]`.
/// The negative sector is resolved through the sign-flip relation first.
pub fn branching_function(
    level: &Level,
    n: i64,
    r: i64,
    s: i64,
    rho: i64,
    sigma: i64,
    q_max: i64,
) -> Result<QSeries, BranchingError> {
    check_key(n, r, s, rho, sigma)?;
    if r < 0 {
        return branching_function(level, n, -r, -s, rho, -sigma, q_max);
    }
    let (p, pp) = (level.p(), level.pp());
    let ell = ell_for(n, s, rho);
    let x = r * (p + n * pp) - sigma * p;
    let pow = rat(x * x, 4 * n * p * (p + n * pp));
    let c1 = string_function(n, ell, r - sigma, q_max);
    let c2 = string_function(n, ell, r + sigma, q_max).mul_monomial(&rat(r * sigma, n));
    Ok(c1.sub(&c2).mul_monomial(&pow))
}

/// Verification report for an exact identity check.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub equal: bool,
    /// First `(q_exp, z_exp, lhs, rhs)` discrepancy, if any.
    pub discrepancy: Option<(Rat, Rat, Rat, Rat)>,
}

/// Verifies the branching rule through the equivalent numerator identity
/// `(1 - q^{rs} z^r) ch_{rho,0}^{n+2,1}(q,z) = sum_sigma q^... z^...
/// (1 - q^{sigma s} z^sigma)[c_{r-sigma} - q^{r sigma/n} c_{r+sigma}]`.
/// The left side is expanded through the theta and reciprocal route, the
/// right side through string functions; the two routes are independent.
pub fn verify_branching(
    _level: &Level,
    n: i64,
    r: i64,
    s: i64,
    rho: i64,
    q_max: i64,
) -> Result<VerifyReport, BranchingError> {
    if n < 1 || !(1..=n + 1).contains(&rho) || r < 1 || s < 0 {
        return Err(BranchingError::BadKey);
    }
    // columns needed: the integer-level character has support z^{-l} with
    // l^2/n <= q_max-ish; add the (1 - z^r) cut margin
    let mut z_bound = 1;
    while z_bound * z_bound <= n * (q_max + 2) {
        z_bound += 1;
    }
    let z_bound = z_bound + r + n * s + 2;
    let lhs_char = integer_level_char(n, rho).expand(
        q_max,
        &rint(-z_bound - r),
        &rint(z_bound + r),
    );
    let mut cut = BiSeries::new(Rat::zero(), Rat::zero(), q_max, 0, r, true, true);
    cut.add_term(0, 0, Rat::one());
    if r * s <= q_max {
        cut.add_term(r * s, r, rint(-1));
    }
    let lhs = lhs_char.mul(&cut).expect("polynomial cut");
    // assemble the right side; sigma contributes the two z-columns
    // (r + ns - sigma)/2 and (r + ns + sigma)/2
    let mut rhs: Option<BiSeries> = None;
    let mut sigma = if (r + n * s + rho - 1).rem_euclid(2) == 0 { 2 } else { 1 };
    while r + n * s - sigma >= -2 * z_bound {
        let x = r + n * s - sigma;
        let ell = ell_for(n, s, rho);
        let bracket = string_function(n, ell, r - sigma, q_max)
            .sub(&string_function(n, ell, r + sigma, q_max).mul_monomial(&rat(r * sigma, n)));
        let mut term = biseries_from_q(&bracket)
            .mul_monomial(&rat(x * x, 4 * n), &rat(x, 2));
        // (1 - q^{sigma s} z^sigma) factor
        let mut poly = BiSeries::new(Rat::zero(), Rat::zero(), q_max, 0, sigma, true, true);
        poly.add_term(0, 0, Rat::one());
        if sigma * s <= q_max {
            poly.add_term(sigma * s, sigma, rint(-1));
        }
        term = term.mul(&poly).expect("polynomial cut");
        rhs = Some(match rhs {
            Some(acc) => acc.add(&term),
            None => term,
        });
        sigma += 2;
    }
    let rhs = rhs.expect("sigma range nonempty");
    // compare on the shared exact window, restricted to |z| <= z_bound
    let discrepancy =
        lhs.first_discrepancy_in(&rhs, Some((&rint(-z_bound), &rint(z_bound))));
    Ok(VerifyReport { equal: discrepancy.is_none(), discrepancy })
}

/// `H_i(q)` of the alternative branching route, from the reciprocal
/// coefficients `f_m`. The index `i` lives on the integer or half-integer
/// lattice depending on `kappa`, so it is passed doubled.
pub fn h_function(n: i64, r: i64, s: i64, rho: i64, two_i: i64, q_max: i64) -> QSeries {
    // four f-terms per lattice site l, with signs -sign_rho * sign_rs and
    // exponents (n+2)l^2 + sign_rho l rho + sign_rs rs/2
    let f_order = 2 * q_max + r.abs() * s.abs() + 4;
    let mut acc: Option<QSeries> = None;
    let mut l = 0i64;
    loop {
        let mut hit = false;
        for ll in [l, -l] {
            let quad = (n + 2) * ll * ll;
            // lead >= quad - |l| rho - |rs|/2; beyond the target everything
            // clips away harmlessly, so the bound only needs to be safe
            if quad - ll.abs() * rho - (r * s).abs() / 2 > 2 * q_max + 4 {
                if ll == 0 {
                    break;
                }
                continue;
            }
            hit = true;
            for (sign_rho, sign_rs) in [(1i64, -1i64), (-1, -1), (1, 1), (-1, 1)] {
                let idx2 = two_i + 2 * (n + 2) * ll + n * s - 1 - sign_rs * r + sign_rho * rho;
                debug_assert_eq!(idx2.rem_euclid(2), 0, "f-index must be integral");
                let e = rint(quad + sign_rho * ll * rho) + rat(sign_rs * r * s, 2);
                let coeff = rint(-sign_rho * sign_rs);
                let term = fm(idx2 / 2, f_order).mul_monomial(&e).scale(&coeff);
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            if ll == 0 {
                break;
            }
        }
        if !hit && l > 0 {
            break;
        }
        l += 1;
    }
    acc.expect("nonempty lattice scan")
}

/// The alternative branching expression built from `H_i`:
/// `-q^E / eta^3 sum_{i=1-kappa}^{sigma/2} (1 + q^s - delta_{i,kappa})/(1+q^s) H_i`.
/// Must equal `branching_function` exactly.
pub fn branching_alt(
    level: &Level,
    n: i64,
    r: i64,
    s: i64,
    rho: i64,
    sigma: i64,
    q_max: i64,
) -> Result<QSeries, BranchingError> {
    check_key(n, r, s, rho, sigma)?;
    if r < 0 {
        return branching_alt(level, n, -r, -s, rho, -sigma, q_max);
    }
    let (p, pp) = (level.p(), level.pp());
    // kappa = 0 for r + ns + rho odd, else 1/2 (doubled: 0 or 1)
    let two_kappa = if (r + n * s + rho).rem_euclid(2) == 1 { 0 } else { 1 };
    let one_plus_qs = QSeries::from_terms(
        Rat::zero(),
        q_max,
        [(0, Rat::one())].into_iter().chain((s <= q_max && s > 0).then_some((s, Rat::one()))),
    );
    let one_plus_qs = if s == 0 {
        QSeries::from_terms(Rat::zero(), q_max, [(0, rint(2))])
    } else {
        one_plus_qs
    };
    let inv_one_plus_qs = one_plus_qs.invert_unit().expect("unit");
    let mut sum: Option<QSeries> = None;
    // i from 1 - kappa to sigma/2 in integer steps (doubled: 2 - two_kappa
    // to sigma by twos)
    let mut two_i = 2 - two_kappa;
    while two_i <= sigma {
        let h = h_function(n, r, s, rho, two_i, q_max);
        let weight = if two_i == two_kappa {
            // (1 + q^s - 1)/(1 + q^s) = q^s/(1 + q^s)
            inv_one_plus_qs.clone().mul_monomial(&rint(s))
        } else {
            QSeries::one(q_max)
        };
        let term = h.mul(&weight);
        sum = Some(match sum {
            Some(acc) => acc.add(&term),
            None => term,
        });
        two_i += 2;
    }
    let sum = sum.ok_or(BranchingError::BadKey)?;
    let e = rat(-sigma * sigma * pp, 4 * (p + n * pp)) + rat(r * r * pp, 4 * p)
        - rat(s * s * n, 4)
        + rat(rho * rho, 4 * (n + 2))
        - rat(sigma * s, 2)
        - rat(1, 8);
    let inv_phi3 = crate::theta::varphi_pow(3, q_max).invert_unit().expect("unit");
    Ok(sum.mul(&inv_phi3).scale(&rint(-1)).mul_monomial(&e))
}

/// The three series of the superconformal comparison at `n = 2`, all on the
/// stretched (`q^(1/2)`) lattice.
#[derive(Clone, Debug)]
pub struct SuperconformalBranch {
    /// The branching function `chi_{r,s;rho;sigma}`.
    pub projected: QSeries,
    /// The superconformal Kac character at the shifted level.
    pub full: QSeries,
    /// The super-character combination `chi_{;1} - chi_{;3}`.
    pub super_character: QSeries,
}

/// Computes the Neveu-Schwarz/Ramond data for one key at `n = 2`.
pub fn superconformal_branch(
    level: &Level,
    r: i64,
    s: i64,
    rho: i64,
    sigma: i64,
    q_max: i64,
) -> Result<SuperconformalBranch, BranchingError> {
    let n = 2;
    check_key(n, r, s, rho, sigma)?;
    let t_shift = rat(level.p(), level.p() + 2 * level.pp());
    let projected = branching_function(level, n, r, s, rho, sigma, 2 * q_max)?.stretch(2);
    let full = superconformal_kac_char(&t_shift, r, sigma, q_max);
    let super_character = if (r + sigma).rem_euclid(2) == 0 {
        let a = branching_function(level, n, r, s, 1, sigma, 2 * q_max)?.stretch(2);
        let b = branching_function(level, n, r, s, 3, sigma, 2 * q_max)?.stretch(2);
        a.sub(&b)
    } else {
        QSeries::zero(2 * q_max)
    };
    Ok(SuperconformalBranch { projected, full, super_character })
}

/// Parity projector on a stretched series: keeps exponent offsets that are
/// even (`delta = 0`) or odd (`delta = 1`) relative to the given leading
/// exponent (also doubled).
pub fn parity_project(series: &QSeries, lead_doubled: &Rat, delta: u8) -> QSeries {
    let off = series.shift() - lead_doubled;
    let off = to_i64(&off).expect("stretched lattice offset");
    let coeffs: Vec<(i64, Rat)> = series
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(d, c)| ((*d as i64 + off).rem_euclid(2) == delta as i64) && !c.is_zero())
        .map(|(d, c)| (d as i64, c.clone()))
        .collect();
    QSeries::from_terms(series.shift().clone(), series.q_max(), coeffs)
}

/// Staggered branching at `n = 1`: verifies
/// `chi[S] ch_{rho,0}^{3,1} = sum'_sigma (R- or Kac-character) chi_kac(...)`
/// exactly on a window.
pub fn staggered_branch(
    level: &Level,
    desc: &StaggeredDescriptor,
    rho: i64,
    q_max: i64,
    z_bound: i64,
) -> Result<VerifyReport, BranchingError> {
    if !(1..=2).contains(&rho) {
        return Err(BranchingError::BadKey);
    }
    let (p, pp) = (level.p(), level.pp());
    let t_shift = rat(p, p + pp);
    let shifted = Level::new(p + pp, pp);
    let span = rint(z_bound + 2 * p + 2 * pp + 2);
    let lhs_s = staggered_char_closed(level, desc).expand(q_max, &(-span.clone()), &span);
    let lhs_i = integer_level_char(1, rho).expand(q_max, &(-span.clone()), &span);
    let lhs = lhs_s.mul(&lhs_i).expect("window product");
    // parity of the sigma sum and the R/Kac structure per conjecture
    let (parity_anchor, is_conj1) = match desc.conjecture {
        1 => {
            // sigma = lp - a + s0 + rho - 1 (+) or + p' more (-)
            let lp_r = (desc.left.r.abs() + desc.right.r.abs()) / 2;
            let a = (desc.right.r.abs() - desc.left.r.abs()).abs() / 2;
            let s0 = desc.left.s.rem_euclid(pp);
            let extra = if desc.sign > 0 { 0 } else { pp };
            (lp_r - a + s0 + extra + rho - 1, true)
        }
        _ => {
            let r0 = desc.left.r.abs();
            let lppb = desc.left.s.abs(); // l p' - b
            (r0 + lppb + rho - 1, false)
        }
    };
    let end = lhs.known_end();
    let mut rhs: Option<BiSeries> = None;
    let mut sigma = if parity_anchor.rem_euclid(2) == 0 { 2 } else { 1 };
    let sigma_floor = 2 * (z_bound + q_max + p + pp);
    loop {
        // exact leading exponents of the two factors decide termination
        let (vir_lead, kac_lead) = if is_conj1 {
            let lp_r = (desc.left.r.abs() + desc.right.r.abs()) / 2;
            let a = (desc.right.r.abs() - desc.left.r.abs()).abs() / 2;
            let s0 = desc.left.s.rem_euclid(pp);
            let v = crate::weights::hbar_t(&t_shift, lp_r - a, sigma)
                .min(crate::weights::hbar_t(&t_shift, lp_r + a, sigma))
                - crate::weights::cbar_t(&t_shift) / rint(24);
            let (kr, ks) =
                if desc.sign > 0 { (sigma, s0) } else { (-sigma, s0 - pp) };
            let x = kr * pp - ks * (p + pp);
            (v, rat(x * x, 4 * (p + pp) * pp) - rat(1, 8))
        } else {
            let r0 = desc.left.r.abs();
            let b = (desc.right.s.abs() - desc.left.s.abs()).abs() / 2;
            let lpp = (desc.left.s.abs() + desc.right.s.abs()) / 2;
            let v = crate::weights::hbar_t(&t_shift, r0, sigma)
                - crate::weights::cbar_t(&t_shift) / rint(24);
            let sign = i64::from(desc.sign);
            let x1 = sigma * sign * pp - sign * (lpp - b) * (p + pp);
            let x2 = -sigma * sign * pp + sign * (lpp + b) * (p + pp);
            let k = rat(x1 * x1, 4 * (p + pp) * pp).min(rat(x2 * x2, 4 * (p + pp) * pp));
            (v, k - rat(1, 8))
        };
        if vir_lead + kac_lead > end && sigma > sigma_floor {
            break;
        }
        let qs = if is_conj1 {
            let lp_r = (desc.left.r.abs() + desc.right.r.abs()) / 2;
            let a = (desc.right.r.abs() - desc.left.r.abs()).abs() / 2;
            virasoro_kac_char(&t_shift, lp_r - a, sigma, q_max)
                .add(&virasoro_kac_char(&t_shift, lp_r + a, sigma, q_max))
        } else {
            let r0 = desc.left.r.abs();
            virasoro_kac_char(&t_shift, r0, sigma, q_max)
        };
        let bis = if is_conj1 {
            let s0 = desc.left.s.rem_euclid(pp);
            let label = if desc.sign > 0 {
                KacLabel::new(sigma, s0)
            } else {
                KacLabel::new(-sigma, s0 - pp)
            };
            kac_char(&shifted, label).expect("valid").expand(q_max, &(-span.clone()), &span)
        } else {
            let b = (desc.right.s.abs() - desc.left.s.abs()).abs() / 2;
            let lpp = (desc.left.s.abs() + desc.right.s.abs()) / 2;
            let sign = i64::from(desc.sign);
            // the sigma-side staggered pair, sign-matched to the input
            let a = kac_char(&shifted, KacLabel::new(sigma * sign, sign * (lpp - b)))
                .expect("valid")
                .expand(q_max, &(-span.clone()), &span);
            let c = kac_char(&shifted, KacLabel::new(-sigma * sign, -sign * (lpp + b)))
                .expect("valid")
                .expand(q_max, &(-span.clone()), &span);
            a.add(&c)
        };
        let term = bis.mul(&biseries_from_q(&qs)).expect("window product");
        rhs = Some(match rhs {
            Some(acc) => acc.add(&term),
            None => term,
        });
        sigma += 2;
    }
    let rhs = rhs.ok_or(BranchingError::BadKey)?;
    let discrepancy =
        lhs.first_discrepancy_in(&rhs, Some((&rint(-z_bound), &rint(z_bound))));
    Ok(VerifyReport { equal: discrepancy.is_none(), discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::staggered_pair;

    fn lv23() -> Level {
        Level::new(2, 3)
    }

    fn lv32() -> Level {
        Level::new(3, 2)
    }

    #[test]
    fn n1_branching_functions_are_virasoro_kac_characters() {
        // chi_{r,s;rho;sigma}^{p,p';1} = chi_{r,sigma}^{p,p+p'}
        for lv in [lv23(), lv32()] {
            let t_shift = rat(lv.p(), lv.p() + lv.pp());
            for r in 1..=3i64 {
                for s in 0..=2i64 {
                    for rho in 1..=2i64 {
                        for sigma in 1..=4i64 {
                            if (sigma - (r + s + rho - 1)).rem_euclid(2) != 0 {
                                continue;
                            }
                            let bf =
                                branching_function(&lv, 1, r, s, rho, sigma, 12).unwrap();
                            let vk = virasoro_kac_char(&t_shift, r, sigma, 12);
                            assert!(
                                bf.first_discrepancy(&vk).is_none(),
                                "(r,s,rho,sigma)=({r},{s},{rho},{sigma}): {:?}",
                                bf.first_discrepancy(&vk)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parity_violation_is_rejected() {
        let lv = lv23();
        assert_eq!(
            branching_function(&lv, 1, 1, 1, 1, 3, 8).unwrap_err(),
            BranchingError::Parity
        );
        assert!(branching_function(&lv, 1, 1, 1, 1, 2, 8).is_ok());
        assert_eq!(
            branching_function(&lv, 1, 1, 1, 1, -1, 8).unwrap_err(),
            BranchingError::BadKey
        );
    }

    #[test]
    fn negative_sector_resolves_through_sign_flip() {
        let lv = lv23();
        let a = branching_function(&lv, 2, -2, -1, 1, -4, 10).unwrap();
        let b = branching_function(&lv, 2, 2, 1, 1, 4, 10).unwrap();
        assert!(a.first_discrepancy(&b).is_none());
    }

    #[test]
    fn branching_rule_verifies_on_samples() {
        let lv = lv23();
        let rep = verify_branching(&lv, 1, 1, 1, 1, 12).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
        let lv = lv32();
        let rep = verify_branching(&lv, 2, 2, 0, 2, 10).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
        // s = 0 degenerate cancellation at sigma = 0 is built into the
        // sigma > 0 summation
        let rep = verify_branching(&lv, 1, 1, 0, 1, 10).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
    }

    #[test]
    fn alt_route_equals_string_route() {
        let lv = lv23();
        for n in [1i64, 2] {
            for r in 1..=2i64 {
                for s in 0..=2i64 {
                    for rho in 1..=n + 1 {
                        for sigma in 1..=4i64 {
                            if (sigma - (r + n * s + rho - 1)).rem_euclid(2) != 0 {
                                continue;
                            }
                            let a = branching_alt(&lv, n, r, s, rho, sigma, 10).unwrap();
                            let b =
                                branching_function(&lv, n, r, s, rho, sigma, 10).unwrap();
                            assert!(
                                a.first_discrepancy(&b).is_none(),
                                "n={n} (r,s,rho,sigma)=({r},{s},{rho},{sigma}): {:?}",
                                a.first_discrepancy(&b)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_relations() {
        // H_i^{-r,-s} = -H_{1-i}^{r,s}; need a key with integer i (kappa=0),
        // i.e. r + ns + rho odd
        let (n, r, s, rho) = (1i64, 2i64, 1i64, 2i64);
        for two_i in [0i64, 2, 4] {
            let a = h_function(n, -r, -s, rho, two_i, 12);
            let b = h_function(n, r, s, rho, 2 - two_i, 12).neg();
            assert!(a.first_discrepancy(&b).is_none(), "two_i={two_i}");
        }
        // sum_{i=1}^{l} H_i = q^{2ls} sum_{i=1}^{l} H_{1-i} (kappa = 0 keys)
        for l in 1..=3i64 {
            let mut lhs = QSeries::zero(12);
            let mut rhs = QSeries::zero(12);
            for i in 1..=l {
                lhs = lhs.add(&h_function(n, r, s, rho, 2 * i, 12));
                rhs = rhs.add(&h_function(n, r, s, rho, 2 * (1 - i), 12));
            }
            let rhs = rhs.mul_monomial(&rint(2 * l * s));
            assert!(lhs.first_discrepancy(&rhs).is_none(), "l={l}");
        }
        // the half-integer relation
        // sum (1 + q^s - delta_{i,1}) H_{i-1/2} = q^{2ls} sum (1 + q^{-s} - delta_{i,1}) H_{3/2-i}
        // on a kappa = 1/2 key (r + ns + rho even)
        let (n, r, s, rho) = (1i64, 2i64, 1i64, 1i64);
        let one = QSeries::one(14);
        for l in 1..=3i64 {
            let mut lhs = QSeries::zero(14);
            let mut rhs = QSeries::zero(14);
            for i in 1..=l {
                let wl = if i == 1 {
                    QSeries::from_terms(Rat::zero(), 14, [(s, Rat::one())])
                } else {
                    one.add(&QSeries::from_terms(Rat::zero(), 14, [(s, Rat::one())]))
                };
                let wr = if i == 1 {
                    QSeries::one(14).mul_monomial(&rat(-s, 1))
                } else {
                    one.add(&QSeries::one(14).mul_monomial(&rat(-s, 1)))
                };
                lhs = lhs.add(&h_function(n, r, s, rho, 2 * i - 1, 14).mul(&wl));
                rhs = rhs.add(&h_function(n, r, s, rho, 3 - 2 * i, 14).mul(&wr));
            }
            let rhs = rhs.mul_monomial(&rint(2 * l * s));
            assert!(lhs.first_discrepancy(&rhs).is_none(), "half-step l={l}");
        }
    }

    #[test]
    fn superconformal_sum_rule_and_ramond_halving() {
        let lv = lv32();
        for r in 1..=3i64 {
            for s in 0..=1i64 {
                for sigma in 1..=3i64 {
                    for rho in 1..=3i64 {
                        if (sigma - (r + 2 * s + rho - 1)).rem_euclid(2) != 0 {
                            continue;
                        }
                        let data = superconformal_branch(&lv, r, s, rho, sigma, 8).unwrap();
                        let partner =
                            branching_function(&lv, 2, r, s, 4 - rho, sigma, 16)
                                .unwrap()
                                .stretch(2);
                        let sum = data.projected.add(&partner);
                        assert!(
                            sum.first_discrepancy(&data.full).is_none(),
                            "sum rule (r,s,rho,sigma)=({r},{s},{rho},{sigma}): {:?}",
                            sum.first_discrepancy(&data.full)
                        );
                        if rho == 2 {
                            // Ramond: the projection is half the character
                            let half = data.full.clone().scale(&rat(1, 2));
                            assert!(
                                data.projected.first_discrepancy(&half).is_none(),
                                "Ramond halving at ({r},{s},{sigma})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ns_projection_matches_parity_split() {
        let lv = lv32();
        // NS keys: rho in {1,3}, r + sigma even
        for (r, s, rho, sigma) in [(1i64, 0i64, 1i64, 1i64), (1, 1, 3, 1), (2, 0, 1, 2)] {
            if (sigma - (r + 2 * s + rho - 1)).rem_euclid(2) != 0 {
                continue;
            }
            let data = superconformal_branch(&lv, r, s, rho, sigma, 8).unwrap();
            let t_shift = rat(lv.p(), lv.p() + 2 * lv.pp());
            let lead = (crate::weights::hhat_t(&t_shift, r, sigma)
                - crate::weights::chat_t(&t_shift) / rint(24))
                * rint(2);
            let delta = u8::from((r + 2 * s + rho - sigma - 1) / 2 % 2 != 0);
            let proj = parity_project(&data.full, &lead, delta);
            assert!(
                data.projected.first_discrepancy(&proj).is_none(),
                "NS projection at ({r},{s},{rho},{sigma}): {:?}",
                data.projected.first_discrepancy(&proj)
            );
        }
    }

    #[test]
    fn super_character_formula() {
        let lv = lv32();
        let (p, pp) = (lv.p(), lv.pp());
        for (r, s, sigma) in [(1i64, 0i64, 1i64), (2, 0, 2), (1, 1, 3), (2, 1, 4)] {
            if (sigma - (r + 2 * s)).rem_euclid(2) != 0 {
                continue; // rho = 1 parity
            }
            if (r + sigma).rem_euclid(2) != 0 {
                continue; // NS sector only
            }
            let data = superconformal_branch(&lv, r, s, 1, sigma, 8).unwrap();
            // (super): (-1)^{(r+2s-sigma)/2} q^{...} (c00 - c02)(1 - (-1)^sigma q^{r sigma/2})
            let sign = if ((r + 2 * s - sigma) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            let x = r * (p + 2 * pp) - sigma * p;
            let e = rat(x * x, 8 * p * (p + 2 * pp)) * rint(2); // doubled lattice
            let c00 = string_function(2, 0, 0, 16).stretch(2);
            let c02 = string_function(2, 0, 2, 16).stretch(2);
            let mut tail = QSeries::one(16);
            let cut_sign = if sigma % 2 == 0 { -1 } else { 1 };
            if r * sigma <= 16 {
                tail = QSeries::from_terms(
                    Rat::zero(),
                    16,
                    [(0, Rat::one()), (r * sigma, rint(cut_sign))],
                );
            }
            let want = c00
                .sub(&c02)
                .mul(&tail)
                .scale(&rint(sign))
                .mul_monomial(&e);
            assert!(
                data.super_character.first_discrepancy(&want).is_none(),
                "super at ({r},{s},{sigma}): {:?}",
                data.super_character.first_discrepancy(&want)
            );
        }
    }

    #[test]
    fn staggered_branching_conjecture_one() {
        let lv = lv23();
        let (plus, _) = staggered_pair(&lv, 1, (1, 0, 1)).unwrap();
        let rep = staggered_branch(&lv, &plus, 1, 8, 6).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
    }

    #[test]
    fn staggered_branching_conjecture_two_and_three() {
        let lv = lv23();
        let (plus, _) = staggered_pair(&lv, 2, (1, 1, 1)).unwrap();
        let rep = staggered_branch(&lv, &plus, 1, 7, 6).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
        let (p3, _) = staggered_pair(&lv, 3, (lv.p(), 2, 1)).unwrap();
        let rep = staggered_branch(&lv, &p3, 2, 7, 6).unwrap();
        assert!(rep.equal, "{:?}", rep.discrepancy);
    }
}
