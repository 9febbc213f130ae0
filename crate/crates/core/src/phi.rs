//! The residue map from affine characters to Virasoro characters and its
//! lift to a functor on Loewy diagrams: quasi-integrable subquotients are
//! deleted and the remaining labels are read as Virasoro data.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::characters::{virasoro_kac_char, ClosedFormCharacter, Denominator};
use crate::rat::{is_half_nonneg_integer, rat, rint, Rat};
use crate::series::QSeries;
use crate::structure::{staggered_nodes, LoewyDiagram, Shade, StaggeredDescriptor, StaggeredShape};
use crate::theta::{eta_inv, theta_specialized, ThetaSpec};
use crate::weights::{canonical_label, label_parts, KacLabel, Level};

/// `phi = -eta(q)^2 Res_{z=1}` on a closed-form character: specialize the
/// numerator at `z = 1` and divide by `eta(q)`. For a z-free character the
/// map is the identity on the q-series.
pub fn phi_char(cf: &ClosedFormCharacter, q_max: i64) -> QSeries {
    match cf.denominator {
        Denominator::EtaQz => cf.phi(q_max),
        Denominator::EtaQ => cf.expand_q(q_max),
    }
}

/// Series-level cross-check of the residue: multiply the numerator by the
/// cut reciprocal `(1-z)/varphi(q,z)` (finite z-support per q-order),
/// specialize at `z = 1`, and divide out `eta^3/eta^2`. Exact; no finite
/// differences anywhere.
pub fn phi_series_check(cf: &ClosedFormCharacter, q_max: i64) -> QSeries {
    let numer = cf.numerator(q_max);
    let cut = crate::theta::cut_reciprocal_varphi_qz(q_max)
        .mul_monomial(&rat(-1, 8), &rat(1, 2));
    let product = numer.mul(&cut).expect("complete windows");
    // product = (1 - z) * chi; at z = 1 it equals N(q,1)/eta^3(q), so phi
    // is recovered by multiplying with eta^2(q)
    let specialized = product.specialize_z1();
    let eta2 = crate::theta::eta(q_max).mul(&crate::theta::eta(q_max));
    specialized.mul(&eta2)
}

/// The tabulated residue of an irreducible affine character, by the branch
/// of the canonical label; the `s0 = 0` rows vanish.
pub fn phi_irr_table(level: &Level, label: KacLabel, q_max: i64) -> QSeries {
    let (p, pp) = (level.p(), level.pp());
    let label = canonical_label(level, label);
    let parts = label_parts(level, label);
    let inv_eta = eta_inv(q_max);
    if parts.r0 != 0 {
        if label.r >= 1 {
            // ch_{r0 + l p, s0}
            let (r0, s0, l) = (parts.r0, parts.s0, parts.l);
            let a = theta_specialized(
                &ThetaSpec::reduced(-r0 * pp + p * s0 - l * p * pp, p * pp, l),
                q_max,
            )
            .expect("valid spec");
            let b = theta_specialized(
                &ThetaSpec::reduced(-r0 * pp - p * s0 - l * p * pp, p * pp, l),
                q_max,
            )
            .expect("valid spec");
            a.sub(&b).mul(&inv_eta)
        } else {
            // ch_{r0 - (l+2)p, s0 - p'}
            let (r0, s0) = (parts.r0, parts.s0);
            let l = -parts.l - 2;
            let a = theta_specialized(
                &ThetaSpec::reduced(r0 * pp - p * s0 - (l + 1) * p * pp, p * pp, l + 1),
                q_max,
            )
            .expect("valid spec");
            let b = theta_specialized(
                &ThetaSpec::reduced(-r0 * pp - p * s0 - (l + 1) * p * pp, p * pp, l + 1),
                q_max,
            )
            .expect("valid spec");
            a.sub(&b).mul(&inv_eta)
        }
    } else if label.r >= 1 {
        // ch_{(l+1)p, s0}: vanishes for s0 = 0
        let (s0, l) = (parts.s0, parts.l - 1);
        if s0 == 0 {
            return QSeries::zero(q_max);
        }
        let x = (l + 1) * pp - s0;
        let e = rat(p * x * x, 4 * pp);
        let cut = (l + 1) * p * s0;
        let kac = QSeries::from_terms(
            Rat::zero(),
            q_max,
            [(0, Rat::one())].into_iter().chain((cut <= q_max).then_some((cut, rint(-1)))),
        );
        kac.mul(&inv_eta).mul_monomial(&e)
    } else {
        // ch_{-(l+1)p, s0 - p'}
        let s0 = parts.s0;
        let l = -parts.l - 1;
        let x = l * pp + s0;
        let e = rat(p * x * x, 4 * pp);
        let cut = (l + 1) * p * (pp - s0);
        let kac = QSeries::from_terms(
            Rat::zero(),
            q_max,
            [(0, Rat::one())].into_iter().chain((cut <= q_max).then_some((cut, rint(-1)))),
        );
        kac.mul(&inv_eta).mul_monomial(&e)
    }
}

/// Virasoro module labels produced by the functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirKind {
    Zero,
    /// Irreducible Virasoro module of weight `hbar_{r,s}`.
    Irreducible(KacLabel),
    /// Virasoro Kac module `K_{r,s}`.
    Kac(KacLabel),
    /// Staggered Virasoro module `R^{a,b}_{r,s}`.
    StaggeredR { a: i64, b: i64, r: i64, s: i64, shape: StaggeredShape },
}

/// Image of the functor: the kind plus the surviving relabeled nodes.
#[derive(Clone, Debug)]
pub struct VirasoroModuleDescriptor {
    pub kind: VirKind,
    /// Surviving nodes as `(label, shade)` after deletion and re-shading.
    pub nodes: Vec<(KacLabel, Shade)>,
    /// Number of deleted (quasi-integrable) nodes.
    pub deleted: usize,
}

fn quasi_integrable(level: &Level, label: KacLabel) -> bool {
    is_half_nonneg_integer(&level.j(label.r, label.s))
}

/// The functor on an irreducible module: deletion when quasi-integrable.
pub fn phi_irreducible(level: &Level, label: KacLabel) -> VirasoroModuleDescriptor {
    if quasi_integrable(level, label) {
        VirasoroModuleDescriptor { kind: VirKind::Zero, nodes: Vec::new(), deleted: 1 }
    } else {
        let c = canonical_label(level, label);
        VirasoroModuleDescriptor {
            kind: VirKind::Irreducible(c),
            nodes: alloc::vec![(c, Shade::Black)],
            deleted: 0,
        }
    }
}

/// The functor on a Kac module via its Loewy diagram: quasi-integrable
/// nodes are deleted with their incident edges and the survivors re-shaded
/// by the new socle depth. The image is the Virasoro Kac module
/// `K_{|r|,|s|}` for `rs > 0` and the zero module for `s = 0`.
pub fn phi_kac(level: &Level, label: KacLabel, diagram: &LoewyDiagram) -> VirasoroModuleDescriptor {
    let mut survivors: Vec<(KacLabel, Shade)> = Vec::new();
    let mut deleted = 0usize;
    for n in &diagram.nodes {
        if quasi_integrable(level, n.label) {
            deleted += 1;
        } else {
            survivors.push((n.label, n.shade));
        }
    }
    if survivors.is_empty() {
        return VirasoroModuleDescriptor { kind: VirKind::Zero, nodes: Vec::new(), deleted };
    }
    if deleted > 0 {
        // a whole strand disappeared; the survivors shift one socle level down
        for (_, shade) in survivors.iter_mut() {
            *shade = match *shade {
                Shade::White => Shade::Grey,
                Shade::Grey | Shade::Black => Shade::Black,
            };
        }
    }
    let kind = if label.s == 0 {
        VirKind::Zero
    } else {
        VirKind::Kac(KacLabel::new(label.r.abs(), label.s.abs()))
    };
    VirasoroModuleDescriptor { kind, nodes: survivors, deleted }
}

/// The functor on a staggered descriptor, per the case tables: the
/// `S^{a,0;+}` family with `s0 = 0` dies; `S^{a,0;-}_{p,0}` degrades from
/// quadrangular to triangular; everything else keeps its shape.
pub fn phi_staggered(level: &Level, desc: &StaggeredDescriptor) -> VirasoroModuleDescriptor {
    let pp = level.pp();
    let nodes_in = staggered_nodes(level, desc);
    let mut survivors: Vec<(KacLabel, Shade)> = Vec::new();
    let mut deleted = 0usize;
    for (label, shade) in &nodes_in {
        if quasi_integrable(level, *label) {
            deleted += 1;
        } else {
            survivors.push((*label, *shade));
        }
    }
    if survivors.is_empty() {
        return VirasoroModuleDescriptor { kind: VirKind::Zero, nodes: Vec::new(), deleted };
    }
    let shape = if survivors.len() == 3 { StaggeredShape::Triangular } else { desc.shape };
    let (a, b, r, s) = match desc.conjecture {
        1 => {
            // left = (lp -+ a, .), right = (lp +- a, .) up to overall sign
            let (rl, rr) = (desc.left.r.abs(), desc.right.r.abs());
            let a = (rr - rl).abs() / 2;
            let lp_r = (rl + rr) / 2;
            let s0 = desc.left.s.rem_euclid(pp);
            let s_img = if desc.sign > 0 { s0 } else { pp - s0 };
            (a, 0, lp_r, s_img)
        }
        _ => {
            let r0 = desc.left.r.abs();
            let (sl, sr) = (desc.left.s.abs(), desc.right.s.abs());
            let b = (sr - sl).abs() / 2;
            let lpp = (sl + sr) / 2;
            (0, b, r0, lpp)
        }
    };
    VirasoroModuleDescriptor {
        kind: VirKind::StaggeredR { a, b, r, s, shape },
        nodes: survivors,
        deleted,
    }
}

/// The Virasoro character of a functor image, for the commutativity check
/// `chi(Phi(M)) = phi(chi(M))`.
pub fn vir_character(level: &Level, desc: &VirasoroModuleDescriptor, q_max: i64) -> QSeries {
    let t = level.t();
    match &desc.kind {
        VirKind::Zero => QSeries::zero(q_max),
        VirKind::Irreducible(label) => phi_irr_table(level, *label, q_max),
        VirKind::Kac(label) => virasoro_kac_char(&t, label.r, label.s, q_max),
        VirKind::StaggeredR { a, b, r, s, .. } => {
            if *b == 0 {
                virasoro_kac_char(&t, r - a, *s, q_max)
                    .add(&virasoro_kac_char(&t, r + a, *s, q_max))
            } else {
                virasoro_kac_char(&t, *r, s - b, q_max)
                    .add(&virasoro_kac_char(&t, *r, s + b, q_max))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{admissible_char, irr_char, kac_char};
    use crate::structure::{kac_loewy, staggered_pair};

    fn lv23() -> Level {
        Level::new(2, 3)
    }

    fn lv32() -> Level {
        Level::new(3, 2)
    }

    #[test]
    fn admissible_residues_are_minimal_model_characters() {
        for lv in [lv23(), lv32()] {
            let (p, pp) = (lv.p(), lv.pp());
            for r0 in 1..p {
                for s0 in 1..pp {
                    let cf = admissible_char(&lv, r0, s0);
                    let got = phi_char(&cf, 20);
                    let lam_p = r0 * pp - p * s0;
                    let lam_m = -r0 * pp - p * s0;
                    let want = theta_specialized(&ThetaSpec::new(lam_p, p * pp), 20)
                        .unwrap()
                        .sub(&theta_specialized(&ThetaSpec::new(lam_m, p * pp), 20).unwrap())
                        .mul(&eta_inv(20));
                    assert!(got.first_discrepancy(&want).is_none(), "({r0},{s0})");
                }
            }
        }
    }

    #[test]
    fn s0_zero_residues_vanish() {
        for lv in [lv23(), lv32()] {
            for r0 in 1..lv.p() {
                let cf = admissible_char(&lv, r0, 0);
                assert!(phi_char(&cf, 20).is_zero());
            }
        }
    }

    #[test]
    fn kac_residues_are_virasoro_kac_characters() {
        let lv = lv23();
        for (r, s) in [(1i64, 1i64), (2, 1), (1, 2), (3, 2), (2, 3), (-1, -1), (-2, -3)] {
            let cf = kac_char(&lv, KacLabel::new(r, s)).unwrap();
            let got = phi_char(&cf, 16);
            let want = virasoro_kac_char(&lv.t(), r.abs(), s.abs(), 16);
            assert!(got.first_discrepancy(&want).is_none(), "({r},{s})");
        }
        let cf = kac_char(&lv, KacLabel::new(3, 0)).unwrap();
        assert!(phi_char(&cf, 16).is_zero());
    }

    #[test]
    fn residue_series_cross_check() {
        let lv = lv32();
        for (r, s) in [(1i64, 1i64), (2, 1)] {
            let cf = kac_char(&lv, KacLabel::new(r, s)).unwrap();
            let direct = phi_char(&cf, 8);
            let series = phi_series_check(&cf, 8);
            assert!(direct.first_discrepancy(&series).is_none(), "({r},{s})");
        }
    }

    #[test]
    fn irreducible_table_matches_closed_form_residue() {
        for lv in [lv23(), lv32()] {
            for r in (-3 * lv.p())..=(3 * lv.p()) {
                for s in (-3 * lv.pp())..=(3 * lv.pp()) {
                    let label = KacLabel::new(r, s);
                    if !label.is_valid() {
                        continue;
                    }
                    let table = phi_irr_table(&lv, label, 12);
                    let direct = phi_char(&irr_char(&lv, label).unwrap(), 12);
                    assert!(
                        table.first_discrepancy(&direct).is_none(),
                        "mismatch at ({r},{s}): {:?}",
                        table.first_discrepancy(&direct)
                    );
                }
            }
        }
    }

    #[test]
    fn surjective_doubling_of_images() {
        // the negative-band family repeats the positive one under the
        // relabeling (r0, s0, l) -> (p - r0, p' - s0, l - 1): the images of
        // ch_{r0+p, s0} and ch_{-r0-p, -s0} coincide
        let lv = lv23();
        let a = phi_irr_table(&lv, KacLabel::new(1 + lv.p(), 1), 16);
        let b = phi_irr_table(&lv, KacLabel::new(-1 - lv.p(), -1), 16);
        assert!(a.first_discrepancy(&b).is_none());
        // while the weights differ, so phi is not injective
        assert_ne!(lv.j(1 + lv.p(), 1), lv.j(-1 - lv.p(), -1));
    }

    #[test]
    fn functor_on_kac_modules() {
        let lv = lv23();
        let label = KacLabel::new(1, 1);
        let d = kac_loewy(&lv, label).unwrap();
        let img = phi_kac(&lv, label, &d);
        assert_eq!(img.kind, VirKind::Kac(KacLabel::new(1, 1)));
        let label = KacLabel::new(1, 0);
        let d = kac_loewy(&lv, label).unwrap();
        let img = phi_kac(&lv, label, &d);
        assert_eq!(img.kind, VirKind::Zero);
        assert_eq!(img.deleted, 2);
    }

    #[test]
    fn islands_keep_the_kac_character() {
        // r and s both multiples: completely reducible image, same character
        let lv = lv23();
        let label = KacLabel::new(2, 3);
        let d = kac_loewy(&lv, label).unwrap();
        let img = phi_kac(&lv, label, &d);
        assert_eq!(img.kind, VirKind::Kac(KacLabel::new(2, 3)));
        assert!(img.deleted > 0);
        let lhs = vir_character(&lv, &img, 12);
        let rhs = phi_char(&kac_char(&lv, label).unwrap(), 12);
        assert!(lhs.first_discrepancy(&rhs).is_none());
    }

    #[test]
    fn functor_commutes_with_characters_on_kac_modules() {
        for lv in [lv23(), lv32()] {
            for r in (-3 * lv.p())..=(3 * lv.p()) {
                for s in (-3 * lv.pp())..=(3 * lv.pp()) {
                    let label = KacLabel::new(r, s);
                    if !label.is_valid() {
                        continue;
                    }
                    let d = kac_loewy(&lv, label).unwrap();
                    let img = phi_kac(&lv, label, &d);
                    let lhs = vir_character(&lv, &img, 12);
                    let rhs = phi_char(&kac_char(&lv, label).unwrap(), 12);
                    assert!(
                        lhs.first_discrepancy(&rhs).is_none(),
                        "square fails at ({r},{s}): {:?}",
                        lhs.first_discrepancy(&rhs)
                    );
                }
            }
        }
    }

    #[test]
    fn functor_on_staggered_modules() {
        let lv = lv23();
        let (plus, minus) = staggered_pair(&lv, 1, (1, 0, 1)).unwrap();
        let img = phi_staggered(&lv, &plus);
        assert_eq!(img.kind, VirKind::Zero);
        // S^{a,0;-}_{p,0} degrades to triangular
        let img = phi_staggered(&lv, &minus);
        match img.kind {
            VirKind::StaggeredR { a, b, r, s, shape } => {
                assert_eq!((a, b, r, s), (1, 0, 2, 3));
                assert_eq!(shape, StaggeredShape::Triangular);
            }
            ref k => panic!("unexpected image {k:?}"),
        }
        let (plus, _) = staggered_pair(&lv, 2, (1, 1, 1)).unwrap();
        let img = phi_staggered(&lv, &plus);
        match img.kind {
            VirKind::StaggeredR { a, b, r, s, shape } => {
                assert_eq!((a, b, r, s), (0, 1, 1, 3));
                assert_eq!(shape, StaggeredShape::Quadrangular);
            }
            ref k => panic!("unexpected image {k:?}"),
        }
    }

    #[test]
    fn functor_commutes_on_staggered_descriptors() {
        for lv in [lv23(), lv32()] {
            let mut descs = Vec::new();
            for ell in 1..=2 {
                for a in 1..lv.p() {
                    for s0 in 0..lv.pp() {
                        let (p, m) = staggered_pair(&lv, 1, (a, s0, ell)).unwrap();
                        descs.push(p);
                        descs.push(m);
                    }
                }
                for b in 1..lv.pp() {
                    for r0 in 1..lv.p() {
                        let (p, m) = staggered_pair(&lv, 2, (r0, b, ell)).unwrap();
                        descs.push(p);
                        descs.push(m);
                    }
                    let (p, m) = staggered_pair(&lv, 3, (lv.p(), b, ell)).unwrap();
                    descs.push(p);
                    descs.push(m);
                }
            }
            for desc in descs {
                let img = phi_staggered(&lv, &desc);
                let lhs = vir_character(&lv, &img, 12);
                let cf = crate::characters::staggered_char_closed(&lv, &desc);
                let rhs = phi_char(&cf, 12);
                assert!(
                    lhs.first_discrepancy(&rhs).is_none(),
                    "square fails for {} at (p,p')=({},{}): {:?}",
                    desc.name,
                    lv.p(),
                    lv.pp(),
                    lhs.first_discrepancy(&rhs)
                );
            }
        }
    }

    #[test]
    fn exactness_witness_on_quotient_modules() {
        // the image characters of the SES pieces of an S_quo module add up
        let lv = lv23();
        for (r, s) in [(1i64, 1i64), (1, 2), (2, 1), (1, 4)] {
            let label = KacLabel::new(r, s);
            let dec = crate::characters::kac_decompose(&lv, label).unwrap();
            let total = phi_char(&kac_char(&lv, label).unwrap(), 10);
            let mut sum = QSeries::zero(10);
            for lab in dec {
                sum = sum.add(&phi_char(&irr_char(&lv, lab).unwrap(), 10));
            }
            assert!(total.first_discrepancy(&sum).is_none(), "({r},{s})");
        }
    }
}
