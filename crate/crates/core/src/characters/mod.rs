//! Builders for every character in the theory, in two representations: a
//! symbolic closed form (theta / monomial numerator over an eta denominator)
//! and an exact expanded series. Residues need the closed forms; identity
//! checks need the expansions.

mod stringfn;

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

pub use stringfn::{canonical_key, ns_product_split, prod_one_plus_q, string_function};

use crate::rat::{rat, rint, to_i64, Rat};
use crate::series::{BiSeries, QSeries};
use crate::structure::StaggeredDescriptor;
use crate::theta::{
    biseries_from_q, eta_inv, reciprocal_eta_qz, theta, theta_specialized, varphi, ThetaSpec,
};
use crate::weights::{label_parts, KacLabel, LabelError, Level};

/// Denominator of a closed-form character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denominator {
    /// The affine eta function `eta(q, z)`.
    EtaQz,
    /// The ordinary eta function `eta(q)` (z-free characters).
    EtaQ,
}

/// One numerator term: `coeff * q^q_exp z^z_exp * Theta? * extra`, where
/// `extra` is a finite polynomial in `(q, z)` given as monomials.
#[derive(Clone, Debug)]
pub struct CfTerm {
    pub coeff: Rat,
    pub q_exp: Rat,
    pub z_exp: Rat,
    pub theta: Option<ThetaSpec>,
    pub extra: Vec<(Rat, Rat, Rat)>,
}

impl CfTerm {
    fn monomial(coeff: Rat, q_exp: Rat, z_exp: Rat) -> Self {
        CfTerm { coeff, q_exp, z_exp, theta: None, extra: Vec::new() }
    }

    fn theta(coeff: Rat, spec: ThetaSpec) -> Self {
        CfTerm { coeff, q_exp: Rat::zero(), z_exp: Rat::zero(), theta: Some(spec), extra: Vec::new() }
    }
}

/// A character as a symbolic numerator over an eta denominator.
#[derive(Clone, Debug)]
pub struct ClosedFormCharacter {
    pub terms: Vec<CfTerm>,
    pub denominator: Denominator,
}

impl ClosedFormCharacter {
    /// Exact expansion of the numerator alone (fully z-complete).
    pub fn numerator(&self, q_max: i64) -> BiSeries {
        let mut acc: Option<BiSeries> = None;
        for t in &self.terms {
            let mut part = match &t.theta {
                Some(spec) => theta(spec, q_max).expect("valid theta spec"),
                None => BiSeries::monomial(Rat::one(), Rat::zero(), Rat::zero(), q_max),
            };
            part = part.mul_monomial(&t.q_exp, &t.z_exp).scale(&t.coeff);
            if !t.extra.is_empty() {
                part = part.mul(&extra_poly(&t.extra, q_max)).expect("polynomial factor");
            }
            acc = Some(match acc {
                Some(s) => s.add(&part),
                None => part,
            });
        }
        acc.expect("closed form has at least one term")
    }

    /// Expands the full character on the absolute z-window `[z_lo, z_hi]`
    /// (bounds snapped to the character's z-lattice), exact to relative
    /// q-order `q_max` above the leading exponent of each numerator term.
    pub fn expand(&self, q_max: i64, z_lo: &Rat, z_hi: &Rat) -> BiSeries {
        let numer = self.numerator(q_max);
        match self.denominator {
            Denominator::EtaQ => {
                let inv = biseries_from_q(&eta_inv(q_max));
                numer.mul(&inv).expect("z-free denominator")
            }
            Denominator::EtaQz => {
                // z-support hull of the numerator
                let (nlo, nhi) = numer_z_hull(&numer);
                // reciprocal-eta lattice is 1/2 + Z; pick the integer window
                // whose exponents cover [z_lo - nhi, z_hi - nlo], extended
                // down to the full reciprocal support so the result stays
                // support-complete below
                let lo = to_i64(&(z_lo - &nhi - rat(1, 2)).floor()).expect("window");
                let lo = lo.min(-q_max);
                let hi = to_i64(&(z_hi - &nlo - rat(1, 2)).ceil()).expect("window").max(lo);
                let rec = reciprocal_eta_qz(q_max, lo, hi);
                numer.mul(&rec).expect("reciprocal window covers the request")
            }
        }
    }

    /// The residue-map image: specialize the numerator at `z = 1` and divide
    /// by `eta(q)`. Defined for `eta(q, z)`-denominated forms; `EtaQ` forms
    /// are already q-series and are returned as such.
    pub fn phi(&self, q_max: i64) -> QSeries {
        let num = self.numerator(q_max).specialize_z1();
        num.mul(&eta_inv(q_max))
    }

    /// For z-free characters: the expansion as a plain q-series.
    pub fn expand_q(&self, q_max: i64) -> QSeries {
        assert!(matches!(self.denominator, Denominator::EtaQ));
        let mut acc: Option<QSeries> = None;
        for t in &self.terms {
            let mut part = match &t.theta {
                Some(spec) => theta_specialized(spec, q_max).expect("valid theta spec"),
                None => QSeries::one(q_max),
            };
            part = part.mul_monomial(&t.q_exp).scale(&t.coeff);
            if !t.extra.is_empty() {
                let base = t.extra.iter().map(|(_, qe, _)| qe.clone()).min().unwrap();
                let mut poly = QSeries::zero(q_max).mul_monomial(&base);
                for (c, qe, ze) in &t.extra {
                    assert!(ze.is_zero(), "z-free character with z-dependent factor");
                    let d = to_i64(&(qe - &base)).expect("lattice");
                    if d <= q_max {
                        poly = poly.add(&QSeries::from_terms(base.clone(), q_max, [(d, c.clone())]));
                    }
                }
                part = part.mul(&poly);
            }
            acc = Some(match acc {
                Some(s) => s.add(&part),
                None => part,
            });
        }
        acc.expect("nonempty").mul(&eta_inv(q_max))
    }
}

fn extra_poly(terms: &[(Rat, Rat, Rat)], q_max: i64) -> BiSeries {
    let q0 = terms.iter().map(|(_, qe, _)| qe.clone()).min().unwrap();
    let z0 = terms.iter().map(|(_, _, ze)| ze.clone()).min().unwrap();
    let z1 = terms.iter().map(|(_, _, ze)| ze.clone()).max().unwrap();
    let span = to_i64(&(&z1 - &z0)).expect("z-lattice");
    let mut out = BiSeries::new(q0.clone(), z0.clone(), q_max, 0, span, true, true);
    for (c, qe, ze) in terms {
        let dq = to_i64(&(qe - &q0)).expect("q-lattice");
        let dz = to_i64(&(ze - &z0)).expect("z-lattice");
        if dq <= q_max {
            out.add_term(dq, dz, c.clone());
        }
    }
    out
}

fn numer_z_hull(numer: &BiSeries) -> (Rat, Rat) {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for (_, dz, _) in numer.terms() {
        lo = Some(lo.map_or(dz, |x| x.min(dz)));
        hi = Some(hi.map_or(dz, |x| x.max(dz)));
    }
    let lo = lo.unwrap_or(0);
    let hi = hi.unwrap_or(0);
    (numer.z_shift() + rint(lo), numer.z_shift() + rint(hi))
}

/// Verma character `q^{(j+1/2)^2/t} z^{-j-1/2} / eta(q,z)`.
pub fn verma_char(level: &Level, j: &Rat) -> ClosedFormCharacter {
    let half = rat(1, 2);
    let x = j + &half;
    let q_exp = &x * &x / level.t();
    ClosedFormCharacter {
        terms: vec![CfTerm::monomial(Rat::one(), q_exp, -x)],
        denominator: Denominator::EtaQz,
    }
}

/// Kac character `q^{(rp'-sp)^2/4pp'} z^{-(rp'-sp)/2p'} (1 - q^{rs} z^r) / eta(q,z)`.
pub fn kac_char(level: &Level, label: KacLabel) -> Result<ClosedFormCharacter, LabelError> {
    if !label.is_valid() {
        return Err(LabelError::Invalid);
    }
    let (p, pp) = (level.p(), level.pp());
    let (r, s) = (label.r, label.s);
    let a = r * pp - s * p;
    let q_exp = rat(a * a, 4 * p * pp);
    let z_exp = rat(-a, 2 * pp);
    Ok(ClosedFormCharacter {
        terms: vec![CfTerm {
            coeff: Rat::one(),
            q_exp,
            z_exp,
            theta: None,
            extra: vec![
                (Rat::one(), Rat::zero(), Rat::zero()),
                (rint(-1), rint(r * s), rint(r)),
            ],
        }],
        denominator: Denominator::EtaQz,
    })
}

/// Irreducible character of the highest-weight module of weight `j_{r,s}`.
/// Any integer label names a weight; it is canonicalized first. Branches on
/// whether the canonical `r` is a multiple of `p`: theta differences with
/// reduced thetas, or a monomial numerator.
pub fn irr_char(level: &Level, label: KacLabel) -> Result<ClosedFormCharacter, LabelError> {
    let label = crate::weights::canonical_label(level, label);
    let (p, pp) = (level.p(), level.pp());
    let parts = label_parts(level, label);
    let (r0, s0, l, lp) = (parts.r0, parts.s0, parts.l, parts.lp);
    if r0 != 0 {
        // lambda^{+-} = +- r0 p' - p s0, reduction indices from l' - l
        let lam_p = r0 * pp - p * s0;
        let lam_m = -r0 * pp - p * s0;
        let nu = lp - l;
        let t1 = ThetaSpec::rescaled(lam_p - nu * p * pp, p * pp, nu, pp);
        let t2 = ThetaSpec::rescaled(lam_m - nu.abs() * p * pp, p * pp, nu.abs(), pp);
        Ok(ClosedFormCharacter {
            terms: vec![CfTerm::theta(Rat::one(), t1), CfTerm::theta(rint(-1), t2)],
            denominator: Denominator::EtaQz,
        })
    } else {
        // r = l p, with l > l' for the positive band and l <= l' below
        let d = l - lp;
        let x = d * pp - s0;
        let q_exp = rat(p * x * x, 4 * pp);
        let z_exp = rat(-p * x, 2 * pp);
        let (e_q, e_z) = if d > 0 {
            (d * p * s0, d * p)
        } else {
            ((d - 1) * p * (s0 - pp), (d - 1) * p)
        };
        Ok(ClosedFormCharacter {
            terms: vec![CfTerm {
                coeff: Rat::one(),
                q_exp,
                z_exp,
                theta: None,
                extra: vec![
                    (Rat::one(), Rat::zero(), Rat::zero()),
                    (rint(-1), rint(e_q), rint(e_z)),
                ],
            }],
            denominator: Denominator::EtaQz,
        })
    }
}

/// Admissible character from the plain theta difference
/// `[Theta_{lambda^+, pp'} - Theta_{lambda^-, pp'}](q, z^{1/p'}) / eta(q,z)`.
pub fn admissible_char(level: &Level, r0: i64, s0: i64) -> ClosedFormCharacter {
    let (p, pp) = (level.p(), level.pp());
    assert!((1..p).contains(&r0) && (0..pp).contains(&s0), "label not admissible");
    let lam_p = r0 * pp - p * s0;
    let lam_m = -r0 * pp - p * s0;
    ClosedFormCharacter {
        terms: vec![
            CfTerm::theta(Rat::one(), ThetaSpec::rescaled(lam_p, p * pp, 0, pp)),
            CfTerm::theta(rint(-1), ThetaSpec::rescaled(lam_m, p * pp, 0, pp)),
        ],
        denominator: Denominator::EtaQz,
    }
}

/// The decomposition of the Kac character into irreducible characters
/// (every multiplicity is one). Labels are returned un-canonicalized.
pub fn kac_decompose(level: &Level, label: KacLabel) -> Result<Vec<KacLabel>, LabelError> {
    if !label.is_valid() {
        return Err(LabelError::Invalid);
    }
    let (p, pp) = (level.p(), level.pp());
    let parts = label_parts(level, label);
    let (r0, s0, l, lp) = (parts.r0, parts.s0, parts.l, parts.lp);
    let (r, s) = (label.r, label.s);
    let mut out = Vec::new();
    if r0 != 0 {
        out.push(label);
        for i in ((l - lp).abs() + 1)..=((l + lp + 1).abs() - 1) {
            let sign = if (i + l + lp) % 2 == 0 { 1 } else { -1 };
            let s_i = s0 - ((1 - sign) / 2) * pp;
            out.push(KacLabel::new(sign * r0 + i * p, s_i));
            out.push(KacLabel::new(sign * r0 - i * p, s_i));
        }
        out.push(KacLabel::new(-r + 2 * (l + lp + 1) * p, s));
    } else if l > 0 {
        debug_assert!(lp >= 0);
        for i in 0..=(2 * l - 1).min(2 * lp) {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let s_i = s0 - ((1 - sign) / 2) * pp;
            out.push(KacLabel::new(sign * (l + lp - i) * p, s_i));
        }
    } else {
        debug_assert!(l < 0 && lp < 0);
        for i in 0..=(-2 * l - 1).min(-2 * lp - 2) {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let s_i = s0 - ((1 - sign) / 2) * pp;
            out.push(KacLabel::new(sign * (l + lp + 2 + i) * p, s_i));
        }
    }
    Ok(out)
}

/// Integer-level admissible character `ch_{rho,0}^{n+2,1}` as a closed form.
pub fn integer_level_char(n: i64, rho: i64) -> ClosedFormCharacter {
    assert!(n >= 1 && (1..=n + 1).contains(&rho), "rho outside 1..=n+1");
    ClosedFormCharacter {
        terms: vec![
            CfTerm::theta(Rat::one(), ThetaSpec::new(rho, n + 2)),
            CfTerm::theta(rint(-1), ThetaSpec::new(-rho, n + 2)),
        ],
        denominator: Denominator::EtaQz,
    }
}

/// Independent expansion of `ch_{rho,0}^{n+2,1}` through its string-function
/// z-expansion `sum_l c^{rho-1}_{2l}(q) q^{l^2/n} z^{-l}`.
pub fn integer_level_char_from_strings(n: i64, rho: i64, q_max: i64, z_bound: i64) -> BiSeries {
    assert!(n >= 1 && (1..=n + 1).contains(&rho));
    // l runs over Z + (rho - 1)/2; represent 2l as an integer
    let mut acc: Option<BiSeries> = None;
    let mut two_l = -(2 * z_bound) - ((rho - 1) % 2);
    while two_l <= 2 * z_bound {
        if (two_l - (rho - 1)) % 2 == 0 {
            let c = string_function(n, rho - 1, two_l, q_max);
            let term = biseries_from_q(&c)
                .mul_monomial(&rat(two_l * two_l, 4 * n), &rat(-two_l, 2));
            acc = Some(match acc {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        two_l += 1;
    }
    acc.expect("nonempty z-range")
}

/// Virasoro Kac character `q^{hbar - cbar/24} (1 - q^{rs}) / varphi(q)` at
/// shifted level `t = p/p'` (the pair need not be coprime).
pub fn virasoro_kac_char(t: &Rat, r: i64, s: i64, q_max: i64) -> QSeries {
    assert!(r >= 1 && s >= 1);
    let e = crate::weights::hbar_t(t, r, s) - crate::weights::cbar_t(t) / rint(24);
    let inv_phi = varphi(q_max).invert_unit().expect("unit");
    let kac = if r * s <= q_max {
        QSeries::from_terms(Rat::zero(), q_max, [(0, Rat::one()), (r * s, rint(-1))])
    } else {
        QSeries::one(q_max)
    };
    kac.mul(&inv_phi).mul_monomial(&e)
}

/// Virasoro Verma character `q^{hbar - cbar/24} / varphi(q)`.
pub fn virasoro_verma_char(t: &Rat, hbar: &Rat, q_max: i64) -> QSeries {
    let e = hbar - crate::weights::cbar_t(t) / rint(24);
    varphi(q_max).invert_unit().expect("unit").mul_monomial(&e)
}

/// Superconformal Kac character, expanded in `q^(1/2)`: the returned series
/// carries doubled exponents (`stretch` convention), since Neveu-Schwarz
/// characters live on the half-integer lattice.
pub fn superconformal_kac_char(t: &Rat, r: i64, s: i64, q_max: i64) -> QSeries {
    assert!(r >= 1 && s >= 1);
    let u_max = 2 * q_max;
    let shift = (crate::weights::hhat_t(t, r, s) - crate::weights::chat_t(t) / rint(24)) * rint(2);
    let inv_phi_u = varphi(q_max).stretch(2).truncate(u_max).invert_unit().expect("unit");
    let kappa_half = (r + s) % 2 == 0;
    let numer = if kappa_half {
        // prod (1 + q^(i-1/2)) in u
        let mut acc = QSeries::one(u_max);
        let mut i = 1i64;
        while 2 * i - 1 <= u_max {
            acc = acc.mul(&QSeries::from_terms(
                Rat::zero(),
                u_max,
                [(0, Rat::one()), (2 * i - 1, Rat::one())],
            ));
            i += 1;
        }
        acc
    } else {
        prod_one_plus_q(q_max).stretch(2).truncate(u_max)
    };
    // the (1 - q^(rs/2)) factor, i.e. 1 - u^(rs); beyond the window it is 1
    let kac = if r * s <= u_max {
        QSeries::from_terms(Rat::zero(), u_max, [(0, Rat::one()), (r * s, rint(-1))])
    } else {
        QSeries::one(u_max)
    };
    let two = if kappa_half { Rat::one() } else { rint(2) };
    numer.mul(&inv_phi_u).mul(&kac).scale(&two).mul_monomial(&shift)
}

/// Sum of irreducible characters of a staggered module, with the
/// multiplicities `(1, 2, 1)` (quadrangular) or `(1, 2)` (triangular).
pub fn staggered_char(
    level: &Level,
    desc: &StaggeredDescriptor,
    q_max: i64,
    z_lo: &Rat,
    z_hi: &Rat,
) -> BiSeries {
    let mut acc: Option<BiSeries> = None;
    for (label, mult) in &desc.character_terms {
        let cf = irr_char(level, *label).expect("descriptor labels are valid");
        let term = cf.expand(q_max, z_lo, z_hi).scale(&rint(*mult as i64));
        acc = Some(match acc {
            Some(s) => s.add(&term),
            None => term,
        });
    }
    acc.expect("descriptor has character terms")
}

/// Closed-form sum of the staggered character (for residue computations).
pub fn staggered_char_closed(level: &Level, desc: &StaggeredDescriptor) -> ClosedFormCharacter {
    let mut terms = Vec::new();
    for (label, mult) in &desc.character_terms {
        let cf = irr_char(level, *label).expect("descriptor labels are valid");
        for mut t in cf.terms {
            t.coeff *= rint(*mult as i64);
            terms.push(t);
        }
    }
    ClosedFormCharacter { terms, denominator: Denominator::EtaQz }
}

/// Dimension of the Verma weight space at charge `Q`, grade `N`, read off the
/// reciprocal triple product (independent of the highest weight).
pub fn verma_weight_space_dim(charge: i64, grade: i64) -> i64 {
    assert!(grade >= 0);
    let rec = crate::theta::reciprocal_varphi_qz(grade, -charge - 1, -charge + 1);
    let c = rec.coeff(&rint(grade), &rint(-charge)).expect("window covers");
    to_i64(&c).expect("dimension is an integer")
}
