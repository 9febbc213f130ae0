//! Scalar bookkeeping for fractional level: levels, Kac labels, weights,
//! central charges, orbits, admissibility and module classification, and
//! Kac-table generation.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::rat::{is_half_nonneg_integer, is_integer, rat, rint, to_i64, Rat};

/// The fractional level `t = p/p'` with `gcd(p, p') = 1`; `k = t - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    p: i64,
    pp: i64,
}

impl Level {
    pub fn new(p: i64, pp: i64) -> Self {
        assert!(p >= 1 && pp >= 1, "level requires positive coprime p, p'");
        assert_eq!(num_integer::gcd(p, pp), 1, "p and p' must be coprime");
        Level { p, pp }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn pp(&self) -> i64 {
        self.pp
    }

    /// Shifted level `t = p/p'`.
    pub fn t(&self) -> Rat {
        rat(self.p, self.pp)
    }

    /// Level `k = t - 2`.
    pub fn k(&self) -> Rat {
        self.t() - rint(2)
    }

    /// Admissible levels require `p >= 2`.
    pub fn is_admissible(&self) -> bool {
        self.p >= 2
    }

    /// Sugawara central charge `c = 3k/(k+2)`.
    pub fn central_charge(&self) -> Rat {
        rint(3) * self.k() / self.t()
    }

    /// Affine weight `j_{r,s}` defined by `2j + 1 = r - s t`.
    pub fn j(&self, r: i64, s: i64) -> Rat {
        (rint(r) - rint(s) * self.t() - rint(1)) / rint(2)
    }

    /// Conformal weight of the highest-weight vector of weight `j`.
    pub fn h_of_j(&self, j: &Rat) -> Rat {
        j * (j + rint(1)) / self.t()
    }

    /// Conformal weight `h_{r,s} = ((r - st)^2 - 1)/(4t)`.
    pub fn h(&self, r: i64, s: i64) -> Rat {
        let x = rint(r) - rint(s) * self.t();
        (&x * &x - rint(1)) / (rint(4) * self.t())
    }

    /// Virasoro weight `hbar_{r,s}` at the coset central charge `cbar`.
    pub fn hbar(&self, r: i64, s: i64) -> Rat {
        hbar_t(&self.t(), r, s)
    }

    /// Virasoro central charge `cbar = 1 - 6(1-t)^2/t`.
    pub fn cbar(&self) -> Rat {
        cbar_t(&self.t())
    }

    /// Superconformal weight `hhat_{r,s}`, with the Ramond 1/16 shift for
    /// `r + s` odd.
    pub fn hhat(&self, r: i64, s: i64) -> Rat {
        hhat_t(&self.t(), r, s)
    }

    /// Superconformal central charge `chat = 3/2 - 3(1-t)^2/t`.
    pub fn chat(&self) -> Rat {
        chat_t(&self.t())
    }
}

/// `hbar_{r,s}` as a function of the shifted level `t` (no coprimality
/// assumption; the coset-shifted levels `p/(p+np')` need this generality).
pub fn hbar_t(t: &Rat, r: i64, s: i64) -> Rat {
    let x = rint(r) - rint(s) * t;
    let y = rint(1) - t;
    (&x * &x - &y * &y) / (rint(4) * t)
}

pub fn cbar_t(t: &Rat) -> Rat {
    let y = rint(1) - t;
    rint(1) - rint(6) * &y * &y / t
}

pub fn hhat_t(t: &Rat, r: i64, s: i64) -> Rat {
    let x = rint(r) - rint(s) * t;
    let y = rint(1) - t;
    let parity = if (r + s).rem_euclid(2) == 1 { rat(1, 16) } else { Rat::zero() };
    (&x * &x - &y * &y) / (rint(8) * t) + parity
}

pub fn chat_t(t: &Rat) -> Rat {
    let y = rint(1) - t;
    rat(3, 2) - rint(3) * &y * &y / t
}

/// Coset central charge `c^{k;n} = 3n/(n+2) - 6n/(t(t+n))`.
pub fn coset_central_charge(level: &Level, n: i64) -> Rat {
    let t = level.t();
    rat(3 * n, n + 2) - rint(6 * n) / (&t * (&t + rint(n)))
}

/// The family `c^(n)(t) = 3n/(n+2) - 6(1-t)^2/(nt)`, which reproduces the
/// coset central charge under `t -> t/(t+n)`.
pub fn c_n_of_t(n: i64, t: &Rat) -> Rat {
    let y = rint(1) - t;
    rat(3 * n, n + 2) - rint(6) * &y * &y / (rint(n) * t)
}

/// A Kac label `(r, s)`. Labels with `rs > 0`, or `r > 0, s = 0`, index the
/// reducible Verma modules and the Kac modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KacLabel {
    pub r: i64,
    pub s: i64,
}

impl KacLabel {
    pub fn new(r: i64, s: i64) -> Self {
        KacLabel { r, s }
    }

    pub fn is_valid(&self) -> bool {
        self.r * self.s > 0 || (self.r > 0 && self.s == 0)
    }
}

/// All derived weights of one label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub j: Rat,
    pub h: Rat,
    pub hbar: Rat,
    pub hhat: Rat,
}

/// Exact weights for `(r, s)`; defined for all integer labels.
pub fn weight(level: &Level, r: i64, s: i64) -> WeightData {
    WeightData {
        j: level.j(r, s),
        h: level.h(r, s),
        hbar: level.hbar(r, s),
        hhat: level.hhat(r, s),
    }
}

/// Decomposition `r = r0 + l p`, `s = s0 + l' p'` with `1 <= r0 <= p`
/// (`r0 = p` when `p | r`) and `0 <= s0 <= p' - 1`, via the floor formulas
/// `l = floor(r/p)`, `l' = floor(s/p')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelParts {
    pub r0: i64,
    pub s0: i64,
    pub l: i64,
    pub lp: i64,
}

pub fn label_parts(level: &Level, label: KacLabel) -> LabelParts {
    let (p, pp) = (level.p(), level.pp());
    let l = label.r.div_euclid(p);
    let lp = label.s.div_euclid(pp);
    LabelParts { r0: label.r - l * p, s0: label.s - lp * pp, l, lp }
}

/// Canonical label for the weight `j_{r,s}`: the representative in
/// `{r >= 1, 0 <= s <= p'-1}` or `{r <= -p, -p' <= s <= -1}` under the
/// periodicity `j_{r,s} = j_{r + lp, s + lp'}`.
pub fn canonical_label(level: &Level, label: KacLabel) -> KacLabel {
    let (p, pp) = (level.p(), level.pp());
    let shift = label.s.div_euclid(pp);
    let (r, s) = (label.r - shift * p, label.s - shift * pp);
    debug_assert!((0..pp).contains(&s));
    if r >= 1 {
        KacLabel::new(r, s)
    } else {
        KacLabel::new(r - p, s - pp)
    }
}

/// Finds the label for a weight `j` if it lies on the Kac lattice: the unique
/// `(r, s)` with `2j + 1 = r - st`, `0 <= s <= p' - 1` (then canonicalized).
pub fn label_of_weight(level: &Level, j: &Rat) -> Option<KacLabel> {
    let two_j1 = j * rint(2) + rint(1);
    for s in 0..level.pp() {
        let r = &two_j1 + rint(s) * level.t();
        if is_integer(&r) {
            let r = to_i64(&r)?;
            return Some(canonical_label(level, KacLabel::new(r, s)));
        }
    }
    None
}

/// The full weight orbit `{j + nt, nt - j - 1}` restricted to `|n| <= bound`,
/// together with the integer-spaced sub-orbit.
pub fn orbit(level: &Level, j: &Rat, bound: i64) -> (Vec<Rat>, Vec<Rat>) {
    let t = level.t();
    let mut full = Vec::new();
    for n in -bound..=bound {
        full.push(j + rint(n) * &t);
        full.push(rint(n) * &t - j - rint(1));
    }
    full.sort();
    full.dedup();
    (full, suborbit(level, j, bound))
}

/// The sub-orbit `{j + np, j - r + np}` of weights linked to `j = j_{r,s}`
/// by singular-vector operators, restricted to `|n| <= bound`.
pub fn suborbit(level: &Level, j: &Rat, bound: i64) -> Vec<Rat> {
    let label = label_of_weight(level, j).expect("weight not on the Kac lattice");
    let two_j1 = j * rint(2) + rint(1);
    let r = &two_j1 + rint(label.s) * level.t();
    let r = to_i64(&r).expect("lattice r");
    let mut out = Vec::new();
    for n in -bound..=bound {
        out.push(j + rint(n * level.p()));
        out.push(j - rint(r) + rint(n * level.p()));
    }
    out.sort();
    out.dedup();
    out
}

/// Necessary and sufficient test for the Verma embedding `V_{j'} ⊆ V_j`:
/// `j'` in the sub-orbit of `j`, the grade and charge gaps non-negative, and
/// `j + j'` avoiding the doubled admissible weights.
pub fn embedding_condition(level: &Level, j: &Rat, jp: &Rat) -> Result<bool, OrbitError> {
    let orbit = suborbit(level, j, orbit_bound(level, j, jp));
    if !orbit.contains(jp) {
        return Err(OrbitError::NotInOrbit);
    }
    let h = level.h_of_j(j);
    let hp = level.h_of_j(jp);
    let gap = &hp - &h;
    let charge = jp - j;
    if gap < charge.clone().max(Rat::zero()) {
        return Ok(false);
    }
    let sum = j + jp;
    for r0 in 1..level.p() {
        for s0 in 0..level.pp() {
            if sum == level.j(r0, s0) * rint(2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn orbit_bound(level: &Level, j: &Rat, jp: &Rat) -> i64 {
    let diff = (jp - j).abs().ceil();
    to_i64(&diff).unwrap_or(0) / level.p() + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitError {
    /// `j'` is not in the sub-orbit of `j`; the embedding test is undefined.
    NotInOrbit,
}

/// Classification of a Kac module per the irreducible / quotient criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// The Kac module is irreducible.
    pub in_s_irr: bool,
    /// The Kac module is isomorphic to the highest-weight quotient `Q_{r,s}`.
    pub in_s_quo: bool,
    /// `j_{r,s}` is a non-negative half-integer (finite-dimensional
    /// grade spaces).
    pub quasi_integrable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelError {
    Invalid,
}

pub fn classify(level: &Level, label: KacLabel) -> Result<Classification, LabelError> {
    if !label.is_valid() {
        return Err(LabelError::Invalid);
    }
    let (p, pp) = (level.p(), level.pp());
    let (r, s) = (label.r, label.s);
    let in_s_irr = (r > 0 && r % p == 0 && (0..pp).contains(&s))
        || (r < 0 && r % p == 0 && (-pp..=-1).contains(&s));
    let in_s_quo = (-p..=p).contains(&r) || (-pp..pp).contains(&s);
    let quasi_integrable = is_half_nonneg_integer(&level.j(r, s));
    Ok(Classification { in_s_irr, in_s_quo, quasi_integrable })
}

/// One cell of an extended Kac table.
#[derive(Clone, Debug)]
pub struct KacCell {
    pub label: KacLabel,
    pub weights: WeightData,
    pub irreducible: bool,
    pub admissible: bool,
}

/// The extended Kac table over a label rectangle. Cells whose labels are not
/// valid module labels (mixed-sign quadrants) are omitted, matching the
/// two-quadrant layout of the tables.
pub fn kac_table(level: &Level, r_range: (i64, i64), s_range: (i64, i64)) -> Vec<KacCell> {
    let mut cells = Vec::new();
    for s in s_range.0..=s_range.1 {
        for r in r_range.0..=r_range.1 {
            let label = KacLabel::new(r, s);
            if !label.is_valid() {
                continue;
            }
            let class = classify(level, label).expect("validated");
            let admissible =
                (1..=level.p() - 1).contains(&r) && (0..level.pp()).contains(&s);
            cells.push(KacCell {
                label,
                weights: weight(level, r, s),
                irreducible: class.in_s_irr,
                admissible,
            });
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv23() -> Level {
        Level::new(2, 3)
    }

    fn lv32() -> Level {
        Level::new(3, 2)
    }

    #[test]
    fn figure_weights() {
        assert_eq!(lv23().j(1, 1), rat(-1, 3));
        assert_eq!(lv32().j(2, 1), rat(-1, 4));
        assert_eq!(lv23().j(1, 2), rat(-2, 3));
        assert_eq!(lv23().h(1, 2), rat(-1, 3));
    }

    #[test]
    fn weight_symmetries() {
        for lv in [lv23(), lv32()] {
            for r in -5..=5 {
                for s in -5..=5 {
                    assert_eq!(lv.j(-r, -s), -lv.j(r, s) - rint(1));
                    assert_eq!(lv.h(-r, -s), lv.h(r, s));
                    // periodicity
                    for l in -3..=3 {
                        assert_eq!(lv.j(r + l * lv.p(), s + l * lv.pp()), lv.j(r, s));
                    }
                }
            }
        }
    }

    #[test]
    fn hbar_duality_under_t_inversion() {
        let a = lv23();
        let b = lv32();
        assert_eq!(a.cbar(), b.cbar());
        for r in 1..=4 {
            for s in 1..=4 {
                assert_eq!(a.hbar(r, s), b.hbar(s, r));
            }
        }
    }

    #[test]
    fn coset_charge_reparameterization() {
        for lv in [lv23(), lv32(), Level::new(5, 3)] {
            for n in 1..=3 {
                let t = lv.t();
                let shifted = &t / (&t + rint(n));
                assert_eq!(coset_central_charge(&lv, n), c_n_of_t(n, &shifted));
            }
        }
    }

    #[test]
    fn hhat_parity_term() {
        let lv = lv32();
        for r in 1..=4 {
            for s in 1..=4 {
                let base = lv.hhat(r, s)
                    - if (r + s) % 2 == 1 { rat(1, 16) } else { Rat::zero() };
                // the parity-free part is the hbar-like quadratic over 8t
                let t = lv.t();
                let x = rint(r) - rint(s) * &t;
                let y = rint(1) - &t;
                assert_eq!(base, (&x * &x - &y * &y) / (rint(8) * t));
            }
        }
    }

    #[test]
    fn suborbit_contains_partner_and_is_symmetric() {
        let lv = lv23();
        let j = lv.j(1, 2); // -2/3
        let orbit = suborbit(&lv, &j, 2);
        for v in [rat(-2, 3), rat(-5, 3), rat(1, 3), rat(4, 3), rat(-8, 3)] {
            assert!(orbit.contains(&v), "missing {v}");
        }
        // membership symmetry and set equality of sub-orbits; the bounded
        // windows are offset by the canonical label of each base point, so
        // the partner is scanned with a generous bound
        for jp in &orbit {
            assert!(suborbit(&lv, jp, 12).contains(&j));
            let a = suborbit(&lv, &j, 12);
            let b = suborbit(&lv, jp, 12);
            for v in suborbit(&lv, &j, 2) {
                assert!(b.contains(&v), "{v} not in the partner sub-orbit");
            }
            for v in suborbit(&lv, jp, 2) {
                assert!(a.contains(&v), "{v} not in the base sub-orbit");
            }
        }
        // the sub-orbit sits inside the full orbit (steps of p = p' t need
        // a p'-times larger bound there)
        let (full, _) = super::orbit(&lv, &j, 3 * lv.pp() + 3);
        for v in &suborbit(&lv, &j, 3) {
            assert!(full.contains(v), "{v} missing from the full orbit");
        }
    }

    #[test]
    fn embedding_condition_examples() {
        let lv = lv32();
        // V_2 is not a submodule of V_{-1} even though the weight gap allows it
        assert_eq!(embedding_condition(&lv, &rint(-1), &rint(2)), Ok(false));
        // trivially, j' = j embeds
        assert_eq!(embedding_condition(&lv, &rint(-1), &rint(-1)), Ok(true));
        let lv = lv23();
        assert_eq!(embedding_condition(&lv, &rat(-2, 3), &rat(1, 3)), Ok(true));
        assert_eq!(
            embedding_condition(&lv, &rat(-2, 3), &rat(17, 3)),
            Err(OrbitError::NotInOrbit)
        );
    }

    #[test]
    fn classification_matches_ranges() {
        let lv = lv23();
        let c = classify(&lv, KacLabel::new(2, 0)).unwrap();
        assert!(c.in_s_irr && c.in_s_quo && c.quasi_integrable);
        let c = classify(&lv, KacLabel::new(1, 1)).unwrap();
        assert!(!c.in_s_irr && c.in_s_quo);
        // (4,1) at (3,2): inside the s-band, hence a quotient module
        let c = classify(&lv32(), KacLabel::new(4, 1)).unwrap();
        assert!(c.in_s_quo && !c.in_s_irr);
        // far outside both bands
        let c = classify(&lv32(), KacLabel::new(4, 3)).unwrap();
        assert!(!c.in_s_quo);
        assert_eq!(classify(&lv, KacLabel::new(-1, 2)), Err(LabelError::Invalid));
    }

    #[test]
    fn canonical_labels() {
        let lv = lv23();
        // j_{1,3} = j_{-1,0}? (-1,0) invalid; canonical form keeps r >= 1 band
        assert_eq!(canonical_label(&lv, KacLabel::new(3, 4)), KacLabel::new(1, 1));
        assert_eq!(canonical_label(&lv, KacLabel::new(-1, 1)), KacLabel::new(-3, -2));
        let c = canonical_label(&lv, KacLabel::new(-4, -1));
        assert_eq!(c, KacLabel::new(-4, -1));
        for r in -6..=6i64 {
            for s in -6..=6i64 {
                let c = canonical_label(&lv, KacLabel::new(r, s));
                assert_eq!(lv.j(c.r, c.s), lv.j(r, s));
                assert!((c.r >= 1 && (0..3).contains(&c.s)) || (c.r <= -2 && (-3..0).contains(&c.s)));
            }
        }
    }

    #[test]
    fn label_of_weight_round_trip() {
        let lv = lv32();
        for r in 1..=6 {
            for s in 0..=1 {
                let j = lv.j(r, s);
                assert_eq!(label_of_weight(&lv, &j), Some(KacLabel::new(r, s)));
            }
        }
        assert_eq!(label_of_weight(&lv, &rat(1, 7)), None);
    }
}
