//! Theta functions, Dedekind eta, Euler products, and the reciprocal of the
//! Jacobi triple product.
//!
//! Everything here expands to an exact truncated series. Builders taking a
//! `q_max` produce series known to `leading exponent + q_max`; the few sums
//! with massive cancellation (`r_ell`) take an absolute end order instead.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::rat::{rat, rint, Rat};
use crate::series::{BiSeries, QSeries};

/// The reduced theta function `Theta_{n,m;nu}(q, z^(1/d))`.
///
/// The rescale `d` is kept symbolic so the z-exponents `-(m l + n/2)/d`
/// stay on an exact lattice of spacing `m/d`; it must divide `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaSpec {
    pub n: i64,
    pub m: i64,
    pub nu: i64,
    pub z_rescale: i64,
}

impl ThetaSpec {
    pub fn new(n: i64, m: i64) -> Self {
        ThetaSpec { n, m, nu: 0, z_rescale: 1 }
    }

    pub fn reduced(n: i64, m: i64, nu: i64) -> Self {
        ThetaSpec { n, m, nu, z_rescale: 1 }
    }

    pub fn rescaled(n: i64, m: i64, nu: i64, d: i64) -> Self {
        ThetaSpec { n, m, nu, z_rescale: d }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaError {
    /// `m` must be a positive integer for the sum to truncate.
    BadIndex,
    /// `z_rescale` must divide `m` to keep the z-lattice integral.
    BadRescale,
}

/// Whether the reduced theta sum excludes the lattice point `l`.
fn nu_excluded(nu: i64, l: i64) -> bool {
    (nu > 0 && (1..=nu).contains(&l)) || (nu < 0 && (nu..=-1).contains(&l))
}

/// Lattice data of one theta term: exponent of `q` and of `z`.
fn theta_term(n: i64, m: i64, d: i64, l: i64) -> (Rat, Rat) {
    // q-exponent m(l + n/2m)^2 = m l^2 + n l + n^2/4m, z-exponent -(m l + n/2)/d
    let qe = rint(m * l * l + n * l) + rat(n * n, 4 * m);
    let ze = rat(-(2 * m * l + n), 2 * d);
    (qe, ze)
}

/// Lattice points of the (reduced) theta sum whose q-exponents reach at most
/// `q_max` above the smallest included exponent. The scan radius doubles
/// until the boundary exponents provably exceed the needed end.
fn theta_lattice(n: i64, m: i64, nu: i64, q_max: i64) -> Vec<i64> {
    let center = -n.div_euclid(2 * m);
    let mut radius = nu.abs() + 4;
    loop {
        let ls: Vec<i64> = ((center - radius)..=(center + radius))
            .filter(|&l| !nu_excluded(nu, l))
            .collect();
        let lead = ls.iter().map(|&l| theta_term(n, m, 1, l).0).min().expect("nonempty scan");
        let end = &lead + rint(q_max);
        let lo_edge = theta_term(n, m, 1, center - radius).0;
        let hi_edge = theta_term(n, m, 1, center + radius).0;
        if lo_edge > end && hi_edge > end {
            return ls.into_iter().filter(|&l| theta_term(n, m, 1, l).0 <= end).collect();
        }
        radius *= 2;
    }
}

/// Expands `Theta_{n,m;nu}(q, z^(1/d))` exactly, with a window covering every
/// term up to the requested relative q-order.
pub fn theta(spec: &ThetaSpec, q_max: i64) -> Result<BiSeries, ThetaError> {
    let ThetaSpec { n, m, nu, z_rescale: d } = *spec;
    if m <= 0 {
        return Err(ThetaError::BadIndex);
    }
    if d <= 0 || m % d != 0 {
        return Err(ThetaError::BadRescale);
    }
    let kept: Vec<(Rat, Rat)> =
        theta_lattice(n, m, nu, q_max).into_iter().map(|l| theta_term(n, m, d, l)).collect();
    let lead = kept.iter().map(|(q, _)| q.clone()).min().unwrap();
    let z_shift = kept.iter().map(|(_, z)| z.clone()).min().unwrap();
    let z_span = kept
        .iter()
        .map(|(_, z)| crate::rat::to_i64(&(z - &z_shift)).expect("z-lattice"))
        .max()
        .unwrap();
    let mut out = BiSeries::new(lead.clone(), z_shift.clone(), q_max, 0, z_span, true, true);
    for (qe, ze) in kept {
        let dq = crate::rat::to_i64(&(&qe - &lead)).expect("q-lattice");
        let dz = crate::rat::to_i64(&(&ze - &z_shift)).expect("z-lattice");
        out.add_term(dq, dz, Rat::one());
    }
    Ok(out)
}

/// The specialised theta function `Theta_{n,m;nu}(q)` (`z = 1`).
pub fn theta_specialized(spec: &ThetaSpec, q_max: i64) -> Result<QSeries, ThetaError> {
    let ThetaSpec { n, m, nu, .. } = *spec;
    if m <= 0 {
        return Err(ThetaError::BadIndex);
    }
    let exps: Vec<Rat> =
        theta_lattice(n, m, nu, q_max).into_iter().map(|l| theta_term(n, m, 1, l).0).collect();
    let lead = exps.iter().min().unwrap().clone();
    let terms: Vec<(i64, Rat)> = exps
        .iter()
        .map(|qe| (crate::rat::to_i64(&(qe - &lead)).expect("q-lattice"), Rat::one()))
        .collect();
    Ok(QSeries::from_terms(lead, q_max, terms))
}

/// Euler product `varphi(q) = prod (1 - q^i)` by the pentagonal number sum.
pub fn varphi(q_max: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut l = 0i64;
    loop {
        for s in [l, -l] {
            let e = (3 * s * s - s) / 2;
            if e <= q_max {
                terms.push((e, if s.rem_euclid(2) == 0 { Rat::one() } else { rint(-1) }));
            }
            if s == 0 {
                break;
            }
        }
        if (3 * l * l - l) / 2 > q_max && (3 * l * l + l) / 2 > q_max {
            break;
        }
        l += 1;
    }
    QSeries::from_terms(Rat::zero(), q_max, terms)
}

/// `varphi(q)^2` from the double sum with the `(1 - q^(2(1+i+j)))` factor.
fn varphi_sq(q_max: i64) -> QSeries {
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for i in 0..=q_max {
        let base_i = i * (i + 1) / 2;
        if base_i > q_max {
            break;
        }
        for j in 0..=q_max {
            let e = 2 * i * j + base_i + j * (j + 1) / 2;
            if e > q_max {
                break;
            }
            let sign = if (i + j).rem_euclid(2) == 0 { Rat::one() } else { rint(-1) };
            terms.push((e, sign.clone()));
            let e2 = e + 2 * (1 + i + j);
            if e2 <= q_max {
                terms.push((e2, -sign));
            }
        }
    }
    QSeries::from_terms(Rat::zero(), q_max, terms)
}

/// `varphi(q)^3 = sum_{l >= 0} (-1)^l (2l+1) q^(l(l+1)/2)`.
fn varphi_cube(q_max: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut l = 0i64;
    while l * (l + 1) / 2 <= q_max {
        let c = rint(if l % 2 == 0 { 2 * l + 1 } else { -(2 * l + 1) });
        terms.push((l * (l + 1) / 2, c));
        l += 1;
    }
    QSeries::from_terms(Rat::zero(), q_max, terms)
}

/// The other closed form of `varphi^3`: `sum_{l in Z} (4l+1) q^(l(2l+1))`.
pub fn varphi_cube_alt(q_max: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut l = 0i64;
    loop {
        let mut any = false;
        for s in [l, -l] {
            let e = s * (2 * s + 1);
            if (0..=q_max).contains(&e) {
                terms.push((e, rint(4 * s + 1)));
                any = true;
            }
            if s == 0 {
                break;
            }
        }
        if !any && l > 1 {
            break;
        }
        l += 1;
    }
    QSeries::from_terms(Rat::zero(), q_max, terms)
}

/// `varphi(q)^k` for `k = 1, 2, 3`, each from its own closed-form sum.
pub fn varphi_pow(k: u32, q_max: i64) -> QSeries {
    match k {
        1 => varphi(q_max),
        2 => varphi_sq(q_max),
        3 => varphi_cube(q_max),
        _ => panic!("closed forms cover k = 1, 2, 3 only"),
    }
}

/// Dedekind eta `eta(q) = q^(1/24) varphi(q)`.
pub fn eta(q_max: i64) -> QSeries {
    varphi(q_max).mul_monomial(&rat(1, 24))
}

/// `1/eta(q)` to relative order `q_max`.
pub fn eta_inv(q_max: i64) -> QSeries {
    varphi(q_max).invert_unit().expect("varphi is a unit").mul_monomial(&rat(-1, 24))
}

/// Jacobi triple product `varphi(q, z) = sum_l (-1)^l q^(l(l-1)/2) z^l`.
pub fn varphi_qz(q_max: i64) -> BiSeries {
    let mut entries = Vec::new();
    let mut l = 0i64;
    loop {
        let mut any = false;
        for s in [l, -l] {
            let e = s * (s - 1) / 2;
            if (0..=q_max).contains(&e) {
                entries.push((e, s, if s.rem_euclid(2) == 0 { Rat::one() } else { rint(-1) }));
                any = true;
            }
            if s == 0 {
                break;
            }
        }
        if !any && l > 1 {
            break;
        }
        l += 1;
    }
    let z_lo = entries.iter().map(|&(_, z, _)| z).min().unwrap();
    let z_hi = entries.iter().map(|&(_, z, _)| z).max().unwrap();
    let mut out = BiSeries::new(Rat::zero(), rint(z_lo), q_max, 0, z_hi - z_lo, true, true);
    for (e, z, c) in entries {
        out.add_term(e, z - z_lo, c);
    }
    out
}

/// Affine Dedekind eta `eta(q, z) = q^(1/8) z^(-1/2) varphi(q, z)`.
pub fn eta_qz(q_max: i64) -> BiSeries {
    varphi_qz(q_max).mul_monomial(&rat(1, 8), &rat(-1, 2))
}

/// `f_m(q)`, the coefficient functions of the triple-product reciprocal;
/// `f_(-m) = f_m` holds structurally through the `|m|` in the exponents.
pub fn fm(m: i64, q_max: i64) -> QSeries {
    let am = m.abs();
    let shift = rint(am);
    let mut terms = Vec::new();
    let mut l = 1i64;
    loop {
        let e_low = l * (l - 1 + 2 * am) / 2 - am; // relative to shift
        if e_low > q_max {
            break;
        }
        let sign = if l % 2 == 0 { Rat::one() } else { rint(-1) };
        let e_high = l * (l + 1 + 2 * am) / 2 - am;
        if e_high <= q_max {
            terms.push((e_high, sign.clone()));
        }
        terms.push((e_low, -sign));
        l += 1;
    }
    QSeries::from_terms(shift, q_max, terms)
}

/// Partial alternating sum `F_n(q) = sum_{l=0}^n (-1)^l q^(l(l+1)/2)`.
pub fn f_partial(n: i64, q_max: i64) -> QSeries {
    let mut terms = Vec::new();
    for l in 0..=n {
        let e = l * (l + 1) / 2;
        if e <= q_max {
            terms.push((e, if l % 2 == 0 { Rat::one() } else { rint(-1) }));
        }
    }
    QSeries::from_terms(Rat::zero(), q_max, terms)
}

/// `R_ell(q)` from the rearranged single sum (finite per q-order); the
/// doubly infinite definition does not truncate. Known up to the absolute
/// order `end`.
pub fn r_ell(ell: i64, end: i64) -> QSeries {
    assert!(ell >= 1);
    // terms (exponent, coeff), exponents can be negative before cancellation
    let mut raw: Vec<(i64, Rat)> = Vec::new();
    let pref_sign = if ell % 2 == 0 { 1 } else { -1 };
    let pref_e = ell * (ell - 1) / 2;
    let mut n = 1i64;
    loop {
        // minimal exponent of block n: pref_e + n(n-1)/2 + n - ell(n-1) (from q^n term at m = n-1)
        let block_min = pref_e + n * (n - 1) / 2 + 1.min(n) - ell * (n - 1);
        if block_min > end && n > 2 * ell + 2 {
            break;
        }
        let s = if n % 2 == 0 { 1 } else { -1 };
        let base = pref_e + n * (n - 1) / 2;
        for m in 0..n {
            // (q^n - q^(ell n)) q^(-ell m)
            for (e, sgn) in [(base + n - ell * m, 1), (base + ell * n - ell * m, -1)] {
                if e <= end {
                    raw.push((e, rint(pref_sign * s * sgn)));
                }
            }
            // (q^(ell n) - 1) q^(-(ell-1) m)
            for (e, sgn) in [(base + ell * n - (ell - 1) * m, 1), (base - (ell - 1) * m, -1)] {
                if e <= end {
                    raw.push((e, rint(pref_sign * s * sgn)));
                }
            }
        }
        n += 1;
    }
    let lead = raw.iter().map(|&(e, _)| e).min().unwrap_or(0).min(0);
    let rel: Vec<(i64, Rat)> = raw.into_iter().map(|(e, c)| (e - lead, c)).collect();
    QSeries::from_terms(rint(lead), end - lead, rel).normalize()
}

/// `1/varphi(q, z)` on the window `[z_lo, z_hi]`, via the closed-form
/// reciprocal `(1/varphi^3(q)) (1/(1-z)) sum_m f_m(q) z^m`. This is the
/// production path for expanding anything with an `eta(q, z)` denominator.
pub fn reciprocal_varphi_qz(q_max: i64, z_lo: i64, z_hi: i64) -> BiSeries {
    assert!(z_lo <= z_hi);
    // sum_{m <= w} f_m(q) per output column w (the 1/(1-z) cumulative sum),
    // with f_m supported at q >= |m|: columns below -q_max vanish in the
    // band, so the window is support-complete below exactly when it reaches
    // that far down.
    let below_complete = z_lo <= -q_max;
    let inv_phi3 = varphi_pow(3, q_max).invert_unit().expect("varphi^3 is a unit");
    let mut out =
        BiSeries::new(Rat::zero(), rint(z_lo), q_max, 0, z_hi - z_lo, below_complete, false);
    // cumulative sum of f_m up to w, evaluated once per column
    let mut cum = QSeries::zero(q_max);
    let mut m = -(q_max.max(0)) - 1;
    // advance cumulative sum to m <= z_lo - 1 first
    while m < z_lo {
        if m >= -(q_max.max(0)) {
            cum = cum.add(&fm(m, q_max));
        }
        m += 1;
    }
    for w in z_lo..=z_hi {
        if w >= -(q_max.max(0)) {
            cum = cum.add(&fm(w, q_max));
        }
        let col = cum.mul(&inv_phi3);
        for (d, c) in col.coeffs().iter().enumerate() {
            let dq = crate::rat::to_i64(&(col.shift() + rint(d as i64))).unwrap_or(-1);
            if (0..=q_max).contains(&dq) && !c.is_zero() {
                out.add_term(dq, w - z_lo, c.clone());
            }
        }
    }
    out
}

/// `1/eta(q, z)` on the window `[z_lo, z_hi]` (z-exponents are offset by the
/// +1/2 from the eta prefactor).
pub fn reciprocal_eta_qz(q_max: i64, z_lo: i64, z_hi: i64) -> BiSeries {
    reciprocal_varphi_qz(q_max, z_lo, z_hi).mul_monomial(&rat(-1, 8), &rat(1, 2))
}

/// `(1 - z)/varphi(q, z) = (1/varphi^3(q)) sum_m f_m(q) z^m`. Unlike the
/// reciprocal itself, this has finite z-support per q-order (`f_m` starts at
/// `q^|m|`), so the result is z-complete on both sides.
pub fn cut_reciprocal_varphi_qz(q_max: i64) -> BiSeries {
    let inv_phi3 = varphi_pow(3, q_max).invert_unit().expect("varphi^3 is a unit");
    let bound = q_max.max(0);
    let mut out = BiSeries::new(Rat::zero(), rint(-bound), q_max, 0, 2 * bound, true, true);
    for m in -bound..=bound {
        let col = fm(m, q_max).mul(&inv_phi3);
        for (d, c) in col.coeffs().iter().enumerate() {
            let dq = crate::rat::to_i64(&(col.shift() + rint(d as i64))).unwrap_or(-1);
            if (0..=q_max).contains(&dq) && !c.is_zero() {
                out.add_term(dq, m + bound, c.clone());
            }
        }
    }
    out
}

/// Report from comparing the two sides of the theta multiplication formula.
#[derive(Clone, Debug)]
pub struct KacPetersonReport {
    pub equal: bool,
    pub discrepancy: Option<(Rat, Rat, Rat, Rat)>,
}

/// Expands both sides of the theta multiplication identity
/// `Theta_{n,m} Theta_{n',m'} = sum_l Theta_{...}(q) Theta_{...}(q,z)`
/// and compares them exactly on the shared window.
pub fn kac_peterson_check(
    n: i64,
    m: i64,
    np: i64,
    mp: i64,
    q_max: i64,
) -> Result<KacPetersonReport, ThetaError> {
    if m <= 0 || mp <= 0 {
        return Err(ThetaError::BadIndex);
    }
    let lhs_a = theta(&ThetaSpec::new(n, m), q_max)?;
    let lhs_b = theta(&ThetaSpec::new(np, mp), q_max)?;
    let lhs = lhs_a.mul(&lhs_b).expect("complete windows cannot underflow");
    let mut rhs: Option<BiSeries> = None;
    for l in 0..(m + mp) {
        let scalar = theta_specialized(
            &ThetaSpec::new(n * mp - np * m + 2 * l * m * mp, m * mp * (m + mp)),
            q_max,
        )?;
        let affine = theta(&ThetaSpec::new(n + np + 2 * l * m, m + mp), q_max)?;
        let term = affine.mul(&biseries_from_q(&scalar)).expect("complete windows");
        rhs = Some(match rhs {
            Some(acc) => acc.add(&term),
            None => term,
        });
    }
    let rhs = rhs.expect("m + m' >= 1 terms");
    let discrepancy = lhs.first_discrepancy(&rhs);
    Ok(KacPetersonReport { equal: discrepancy.is_none(), discrepancy })
}

/// Embeds a q-series as a bivariate series constant in `z`.
pub fn biseries_from_q(s: &QSeries) -> BiSeries {
    let mut out = BiSeries::new(s.shift().clone(), Rat::zero(), s.q_max(), 0, 0, true, true);
    for (d, c) in s.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.add_term(d as i64, 0, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::to_frac_string;

    #[test]
    fn euler_product_pentagonal() {
        let p = varphi(12);
        // 1 - q - q^2 + q^5 + q^7 - q^12 - ...
        let expect = [1i64, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
        for (d, &e) in expect.iter().enumerate() {
            assert_eq!(p.coeff(&rint(d as i64)), Some(rint(e)), "degree {d}");
        }
    }

    #[test]
    fn varphi_powers_match_products() {
        let p = varphi(40);
        assert!(p.mul(&p).first_discrepancy(&varphi_pow(2, 40)).is_none());
        assert!(p.mul(&p).mul(&p).first_discrepancy(&varphi_pow(3, 40)).is_none());
        assert!(varphi_pow(3, 40).first_discrepancy(&varphi_cube_alt(40)).is_none());
        // 1 - 3q + 5q^3 - ...
        let cube = varphi_pow(3, 6);
        assert_eq!(cube.coeff(&rint(1)), Some(rint(-3)));
        assert_eq!(cube.coeff(&rint(3)), Some(rint(5)));
    }

    #[test]
    fn specialized_theta_difference_vanishes() {
        // Theta_{1,2}(q) = Theta_{-1,2}(q), so the specialization of the
        // triple-product numerator is exactly zero (phi(q, 1) = 0)
        let t1 = theta(&ThetaSpec::new(1, 2), 12).unwrap();
        let t2 = theta(&ThetaSpec::new(-1, 2), 12).unwrap();
        assert!(t1.sub(&t2).specialize_z1().is_zero());
    }

    #[test]
    fn partition_numbers_from_inverse() {
        let inv = varphi(10).invert_unit().unwrap();
        // p(0..10) = 1,1,2,3,5,7,11,15,22,30,42
        let expect = [1i64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (d, &e) in expect.iter().enumerate() {
            assert_eq!(inv.coeff(&rint(d as i64)), Some(rint(e)));
        }
    }

    #[test]
    fn theta_01_specialized() {
        // Theta_{0,1}(q) = 1 + 2q + 2q^4 + 2q^9 + ...
        let t = theta_specialized(&ThetaSpec::new(0, 1), 10).unwrap();
        assert_eq!(t.coeff(&rint(0)), Some(rint(1)));
        assert_eq!(t.coeff(&rint(1)), Some(rint(2)));
        assert_eq!(t.coeff(&rint(2)), Some(rint(0)));
        assert_eq!(t.coeff(&rint(4)), Some(rint(2)));
        assert_eq!(t.coeff(&rint(9)), Some(rint(2)));
    }

    #[test]
    fn theta_01_bivariate_corner_values() {
        let t = theta(&ThetaSpec::new(0, 1), 6).unwrap();
        assert_eq!(t.coeff(&rint(0), &rint(0)), Some(rint(1)));
        assert_eq!(t.coeff(&rint(1), &rint(1)), Some(rint(1)));
        assert_eq!(t.coeff(&rint(1), &rint(-1)), Some(rint(1)));
        assert_eq!(t.coeff(&rint(1), &rint(0)), Some(rint(0)));
        assert_eq!(t.coeff(&rint(4), &rint(-2)), Some(rint(1)));
    }

    #[test]
    fn theta_m_m_leading_exponent() {
        for m in 1..=4 {
            let t = theta_specialized(&ThetaSpec::new(m, m), 8).unwrap();
            let lead = t.clone().normalize();
            assert_eq!(to_frac_string(lead.shift()), to_frac_string(&rat(m, 4)), "m = {m}");
        }
    }

    #[test]
    fn triple_product_equals_theta_difference() {
        // varphi(q,z) = q^(-1/8) z^(1/2) [Theta_{1,2} - Theta_{-1,2}]
        let phi = varphi_qz(12);
        let t1 = theta(&ThetaSpec::new(1, 2), 12).unwrap();
        let t2 = theta(&ThetaSpec::new(-1, 2), 12).unwrap();
        let diff = t1.sub(&t2).mul_monomial(&rat(-1, 8), &rat(1, 2));
        assert!(phi.first_discrepancy(&diff).is_none());
    }

    #[test]
    fn eta_qz_is_odd_under_z_inversion() {
        let e = eta_qz(10);
        let flipped = e.flip_z();
        assert!(e.neg().first_discrepancy(&flipped).is_none());
    }

    #[test]
    fn partial_sum_steps() {
        // F_m - F_{m-1} = (-1)^m q^(m(m+1)/2)
        for m in 1..=6i64 {
            let d = f_partial(m, 30).sub(&f_partial(m - 1, 30));
            let want = QSeries::from_terms(
                Rat::zero(),
                30,
                [(m * (m + 1) / 2, if m % 2 == 0 { Rat::one() } else { rint(-1) })],
            );
            assert!(d.first_discrepancy(&want).is_none(), "m={m}");
        }
    }

    #[test]
    fn fm_is_even_in_m_and_sums_to_one() {
        for m in 0..=6 {
            assert!(fm(m, 25).first_discrepancy(&fm(-m, 25)).is_none());
        }
        let mut sum = QSeries::zero(30);
        for m in -31..=31 {
            sum = sum.add(&fm(m, 30));
        }
        assert!(sum.first_discrepancy(&QSeries::one(30)).is_none());
    }

    #[test]
    fn r_ell_vanishes_except_ell_one() {
        let end = 30;
        let want = varphi_pow(3, end).neg();
        assert!(r_ell(1, end).first_discrepancy(&want).is_none());
        for ell in 2..=6 {
            assert!(r_ell(ell, end).is_zero(), "R_{ell} should vanish");
        }
    }

    #[test]
    fn reciprocal_inverts_triple_product() {
        let phi = varphi_qz(10);
        let rec = reciprocal_varphi_qz(10, -12, 12);
        let prod = phi.mul(&rec).unwrap();
        let one = BiSeries::monomial(Rat::one(), Rat::zero(), Rat::zero(), 10);
        assert!(prod.first_discrepancy(&one).is_none());
        // grade-0 row of 1/varphi: 1 for z^j, j >= 0; 0 for j < 0
        for j in -5..=5 {
            let want = if j >= 0 { rint(1) } else { rint(0) };
            assert_eq!(rec.coeff(&rint(0), &rint(j)), Some(want), "z^{j}");
        }
    }

    #[test]
    fn reciprocal_matches_direct_inversion() {
        let phi = varphi_qz(8);
        let direct = phi.invert_unit_windowed(10).unwrap();
        let rec = reciprocal_varphi_qz(8, -10, 10);
        assert!(direct.first_discrepancy(&rec).is_none());
    }

    #[test]
    fn theta_symmetries() {
        // Theta_{n,m;-nu}(q,z) = Theta_{-n,m;nu}(q,1/z) = Theta_{n-2(nu+1)m,m;nu}(q,z)
        for m in 1..=6 {
            for n in -2 * m..=2 * m {
                for nu in -2..=2 {
                    let a = theta(&ThetaSpec::reduced(n, m, -nu), 20).unwrap();
                    let b = theta(&ThetaSpec::reduced(-n, m, nu), 20).unwrap().flip_z();
                    assert!(
                        a.first_discrepancy(&b).is_none(),
                        "mnu failed at n={n} m={m} nu={nu}"
                    );
                    // the index-shift form pairs -nu on the left with nu >= 0
                    if nu >= 0 {
                        let c =
                            theta(&ThetaSpec::reduced(n - 2 * (nu + 1) * m, m, nu), 20).unwrap();
                        assert!(
                            a.first_discrepancy(&c).is_none(),
                            "index shift failed at n={n} m={m} nu={nu}"
                        );
                    }
                }
                // Theta periodicity n -> n + 2m
                let a = theta(&ThetaSpec::new(n, m), 12).unwrap();
                let b = theta(&ThetaSpec::new(n + 2 * m, m), 12).unwrap();
                assert!(a.first_discrepancy(&b).is_none(), "period failed n={n} m={m}");
            }
        }
    }

    #[test]
    fn kac_peterson_small_cases() {
        for (n, m, np, mp) in [(0, 1, 0, 1), (1, 2, 1, 2), (1, 2, 0, 1), (2, 3, 1, 2)] {
            let rep = kac_peterson_check(n, m, np, mp, 12).unwrap();
            assert!(rep.equal, "KP failed at ({n},{m},{np},{mp}): {:?}", rep.discrepancy);
            let swapped = kac_peterson_check(np, mp, n, m, 12).unwrap();
            assert!(swapped.equal);
        }
    }
}
