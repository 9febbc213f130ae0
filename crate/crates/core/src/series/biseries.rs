//! Bivariate truncated series `q^qs z^zs * sum c_{d,w} q^d z^w` on a
//! rectangular window, with completeness flags for the two z-directions.
//!
//! The q-direction behaves like [`super::QSeries`]: no support below the
//! shift, exact coefficients up to `q_shift + q_max`. The z-direction is
//! two-sided: within the known q-band, coefficients are exact on the window
//! `[z_min, z_max]`; the flags `z_exact_below` / `z_exact_above` assert that
//! the function has no z-support beyond the window on that side, so those
//! coefficients are known to be zero rather than merely unstored.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::{NotAUnit, QSeries, WindowUnderflow};
use crate::rat::{is_integer, rint, to_i64, Rat};

/// Window-bound arithmetic on the extended integers. Values at or beyond the
/// sentinels behave as the two infinities; windows are small, so no honest
/// bound ever comes near them.
type Bnd = i128;
const NEG_INF: Bnd = i128::MIN / 4;
const POS_INF: Bnd = i128::MAX / 4;

fn badd(a: Bnd, b: Bnd) -> Bnd {
    debug_assert!(!(a <= NEG_INF && b >= POS_INF) && !(a >= POS_INF && b <= NEG_INF));
    if a <= NEG_INF || b <= NEG_INF {
        NEG_INF
    } else if a >= POS_INF || b >= POS_INF {
        POS_INF
    } else {
        a + b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    q_shift: Rat,
    z_shift: Rat,
    q_max: i64,
    z_min: i64,
    z_max: i64,
    /// Row `dq` holds the dense coefficients of `z^(z_shift + dz)` for
    /// `dz` in `z_min..=z_max`; absent rows are zero.
    rows: BTreeMap<i64, Vec<Rat>>,
    z_exact_below: bool,
    z_exact_above: bool,
}

impl BiSeries {
    pub fn new(
        q_shift: Rat,
        z_shift: Rat,
        q_max: i64,
        z_min: i64,
        z_max: i64,
        z_exact_below: bool,
        z_exact_above: bool,
    ) -> Self {
        assert!(q_max >= 0 && z_min <= z_max, "degenerate window");
        BiSeries {
            q_shift,
            z_shift,
            q_max,
            z_min,
            z_max,
            rows: BTreeMap::new(),
            z_exact_below,
            z_exact_above,
        }
    }

    /// The zero function on a trivial window, fully exact.
    pub fn zero(q_max: i64) -> Self {
        Self::new(Rat::zero(), Rat::zero(), q_max.max(0), 0, 0, true, true)
    }

    /// `c * q^qe z^ze`, fully exact, known to `qe + q_max`.
    pub fn monomial(c: Rat, qe: Rat, ze: Rat, q_max: i64) -> Self {
        let mut s = Self::new(qe, ze, q_max, 0, 0, true, true);
        s.add_term(0, 0, c);
        s
    }

    pub fn q_shift(&self) -> &Rat {
        &self.q_shift
    }

    pub fn z_shift(&self) -> &Rat {
        &self.z_shift
    }

    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    pub fn z_min(&self) -> i64 {
        self.z_min
    }

    pub fn z_max(&self) -> i64 {
        self.z_max
    }

    pub fn z_exact_below(&self) -> bool {
        self.z_exact_below
    }

    pub fn z_exact_above(&self) -> bool {
        self.z_exact_above
    }

    /// Absolute q-exponent up to which the series is known.
    pub fn known_end(&self) -> Rat {
        &self.q_shift + rint(self.q_max)
    }

    /// Iterates `(dq, dz, coeff)` over stored nonzero entries.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rat)> {
        let z_min = self.z_min;
        self.rows.iter().flat_map(move |(&dq, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (dq, z_min + i as i64, c))
        })
    }

    /// Adds `c` at relative position `(dq, dz)`; must lie inside the window.
    pub fn add_term(&mut self, dq: i64, dz: i64, c: Rat) {
        assert!((0..=self.q_max).contains(&dq), "q-degree outside window");
        assert!((self.z_min..=self.z_max).contains(&dz), "z-degree outside window");
        let width = (self.z_max - self.z_min + 1) as usize;
        let row = self.rows.entry(dq).or_insert_with(|| vec![Rat::zero(); width]);
        row[(dz - self.z_min) as usize] += c;
    }

    fn get(&self, dq: i64, dz: i64) -> Rat {
        if dz < self.z_min || dz > self.z_max {
            return Rat::zero();
        }
        match self.rows.get(&dq) {
            Some(row) => row[(dz - self.z_min) as usize].clone(),
            None => Rat::zero(),
        }
    }

    /// Exact coefficient of `q^qe z^ze`, or `None` when the point lies outside
    /// the provably known region.
    pub fn coeff(&self, qe: &Rat, ze: &Rat) -> Option<Rat> {
        let dq = qe - &self.q_shift;
        if !is_integer(&dq) {
            return if *qe <= self.known_end() { Some(Rat::zero()) } else { None };
        }
        let dq = to_i64(&dq)?;
        if dq < 0 {
            return Some(Rat::zero());
        }
        if dq > self.q_max {
            return None;
        }
        let dz = ze - &self.z_shift;
        if !is_integer(&dz) {
            return Some(Rat::zero());
        }
        let dz = to_i64(&dz)?;
        if dz < self.z_min {
            return self.z_exact_below.then(Rat::zero);
        }
        if dz > self.z_max {
            return self.z_exact_above.then(Rat::zero);
        }
        Some(self.get(dq, dz))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.values().all(|r| r.iter().all(Rat::is_zero))
    }

    fn fully_z_exact(&self) -> bool {
        self.z_exact_below && self.z_exact_above
    }

    /// Strips empty leading rows, moving the shift up; the known end is kept.
    pub fn normalize_q(mut self) -> Self {
        let lead = (0..=self.q_max).find(|dq| self.rows.get(dq).is_some_and(|r| !r.iter().all(Rat::is_zero)));
        match lead {
            Some(0) | None => self,
            Some(d) => {
                self.rows = self
                    .rows
                    .into_iter()
                    .filter(|(dq, _)| *dq >= d)
                    .map(|(dq, row)| (dq - d, row))
                    .collect();
                self.q_shift += rint(d);
                self.q_max -= d;
                self
            }
        }
    }

    /// Lowest q-exponent that could carry support (as in `QSeries`).
    fn q_support_min(&self) -> Rat {
        match (0..=self.q_max)
            .find(|dq| self.rows.get(dq).is_some_and(|r| !r.iter().all(Rat::is_zero)))
        {
            Some(d) => &self.q_shift + rint(d),
            None => self.known_end() + rint(1),
        }
    }

    /// Relative z-support bounds over the whole band; a side without a
    /// completeness flag is unbounded in that direction.
    fn z_support_bounds(&self) -> (Bnd, Bnd) {
        let mut lo: Option<i64> = None;
        let mut hi: Option<i64> = None;
        for (_, dz, _) in self.terms() {
            lo = Some(lo.map_or(dz, |x| x.min(dz)));
            hi = Some(hi.map_or(dz, |x| x.max(dz)));
        }
        let lo_bound = if self.z_exact_below {
            Bnd::from(lo.unwrap_or(self.z_max + 1))
        } else {
            NEG_INF
        };
        let hi_bound = if self.z_exact_above {
            Bnd::from(hi.unwrap_or(self.z_min - 1))
        } else {
            POS_INF
        };
        (lo_bound, hi_bound)
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        for row in self.rows.values_mut() {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x *= c;
                }
            }
        }
        self
    }

    pub fn neg(self) -> Self {
        self.scale(&rint(-1))
    }

    /// Multiplies by `q^qe z^ze`.
    pub fn mul_monomial(mut self, qe: &Rat, ze: &Rat) -> Self {
        self.q_shift += qe;
        self.z_shift += ze;
        self
    }

    /// Represents `a(q, 1/z)`: the z-shift negates and the window reflects.
    pub fn flip_z(&self) -> Self {
        let mut out = BiSeries::new(
            self.q_shift.clone(),
            -self.z_shift.clone(),
            self.q_max,
            -self.z_max,
            -self.z_min,
            self.z_exact_above,
            self.z_exact_below,
        );
        for (dq, dz, c) in self.terms() {
            out.add_term(dq, -dz, c.clone());
        }
        out
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        if self.is_zero() && self.fully_z_exact() {
            return other.clone().clip_q_end(&self.known_end().min(other.known_end()));
        }
        if other.is_zero() && other.fully_z_exact() {
            return self.clone().clip_q_end(&self.known_end().min(other.known_end()));
        }
        let qd = &other.q_shift - &self.q_shift;
        let zd = &other.z_shift - &self.z_shift;
        assert!(
            is_integer(&qd) && is_integer(&zd),
            "adding bivariate series on incompatible lattices"
        );
        let qd = to_i64(&qd).expect("lattice offset overflow");
        let zd = to_i64(&zd).expect("lattice offset overflow");
        let q_shift = if qd >= 0 { self.q_shift.clone() } else { other.q_shift.clone() };
        let end = self.known_end().min(other.known_end());
        let q_max = to_i64(&(&end - &q_shift)).expect("window overflow");
        // z geometry: `other` lives at offset zd on self's lattice.
        let eb = self.z_exact_below && other.z_exact_below;
        let ea = self.z_exact_above && other.z_exact_above;
        // Below z_min both summands must be known (zero by flag or in-window):
        // a side lacking the flag caps the trustworthy range at its window.
        let z_min = [
            (!self.z_exact_below).then_some(self.z_min),
            (!other.z_exact_below).then_some(other.z_min + zd),
        ]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or_else(|| self.z_min.min(other.z_min + zd));
        let z_max = [
            (!self.z_exact_above).then_some(self.z_max),
            (!other.z_exact_above).then_some(other.z_max + zd),
        ]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or_else(|| self.z_max.max(other.z_max + zd));
        assert!(q_max >= 0, "summands share no known q-range");
        assert!(z_min <= z_max, "summands share no known z-range");
        let mut out = BiSeries::new(q_shift, self.z_shift.clone(), q_max, z_min, z_max, eb, ea);
        // Offsets of each summand's relative origin on the common lattice.
        for (v, qoff, zoff) in [(self, (-qd).max(0), 0), (other, qd.max(0), zd)] {
            for (dq, dz, c) in v.terms() {
                let tq = dq + qoff;
                let tz = dz + zoff;
                if (0..=q_max).contains(&tq) && (z_min..=z_max).contains(&tz) {
                    out.add_term(tq, tz, c.clone());
                }
            }
        }
        out
    }

    /// Restricts the known q-range to `q_shift + new_max`.
    pub fn truncate_q(self, new_max: i64) -> BiSeries {
        assert!(new_max >= 0);
        let end = &self.q_shift + rint(new_max);
        self.clip_q_end(&end)
    }

    /// The q-series sitting at the fixed z-exponent `ze`, if that column lies
    /// in the provably known z-range.
    pub fn z_column(&self, ze: &Rat) -> Option<QSeries> {
        let dz = ze - &self.z_shift;
        if !is_integer(&dz) {
            return Some(QSeries::zero(self.q_max).mul_monomial(&self.q_shift));
        }
        let dz = to_i64(&dz)?;
        if dz < self.z_min && !self.z_exact_below {
            return None;
        }
        if dz > self.z_max && !self.z_exact_above {
            return None;
        }
        let mut coeffs = vec![Rat::zero(); self.q_max as usize + 1];
        if (self.z_min..=self.z_max).contains(&dz) {
            for (&dq, row) in &self.rows {
                coeffs[dq as usize] = row[(dz - self.z_min) as usize].clone();
            }
        }
        Some(QSeries::new(self.q_shift.clone(), coeffs))
    }

    fn clip_q_end(self, end: &Rat) -> BiSeries {
        let rel = end - &self.q_shift;
        if rel >= rint(self.q_max) {
            return self;
        }
        let q_max = to_i64(&rel.floor()).expect("window overflow").max(0);
        let mut s = self;
        s.rows.retain(|dq, _| *dq <= q_max);
        s.q_max = q_max;
        s
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.clone().neg())
    }

    /// Exact product. The q-window follows the univariate rule; the z-window
    /// is the largest interval on which every contributing split is either
    /// known on both factors or provably zero, given the completeness flags
    /// and the observed support bounds.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries, WindowUnderflow> {
        let a = self.clone().normalize_q();
        let b = other.clone().normalize_q();
        if (a.is_zero() && a.fully_z_exact()) || (b.is_zero() && b.fully_z_exact()) {
            let (z, n) = if a.is_zero() && a.fully_z_exact() { (&a, &b) } else { (&b, &a) };
            let end = z.known_end() + n.q_support_min();
            let mut out = BiSeries::zero(0);
            out.q_shift = end;
            out.z_shift = &a.z_shift + &b.z_shift;
            return Ok(out);
        }
        let (sa_lo, sa_hi) = a.z_support_bounds();
        let (sb_lo, sb_hi) = b.z_support_bounds();
        // Upper edge of the provably exact z-range: a split using an unknown
        // region of one factor must hit a provable zero of the other.
        let mut w_hi: Bnd = POS_INF;
        if !a.z_exact_above {
            w_hi = w_hi.min(badd(Bnd::from(a.z_max), sb_lo));
        }
        if !b.z_exact_above {
            w_hi = w_hi.min(badd(Bnd::from(b.z_max), sa_lo));
        }
        let mut w_lo: Bnd = NEG_INF;
        if !a.z_exact_below {
            w_lo = w_lo.max(badd(Bnd::from(a.z_min), sb_hi));
        }
        if !b.z_exact_below {
            w_lo = w_lo.max(badd(Bnd::from(b.z_min), sa_hi));
        }
        if w_lo > w_hi {
            return Err(WindowUnderflow);
        }
        let hull_lo = badd(sa_lo, sb_lo);
        let hull_hi = badd(sa_hi, sb_hi);
        // A support hull disjoint from the exact range means the product is
        // provably zero there; represent it on a one-column window.
        if hull_lo > w_hi {
            let mut out = BiSeries::zero(a.q_max.min(b.q_max));
            out.q_shift = &a.q_shift + &b.q_shift;
            out.z_shift = &a.z_shift + &b.z_shift + rint(w_hi as i64);
            out.z_exact_above = false;
            return Ok(out);
        }
        if hull_hi < w_lo {
            let mut out = BiSeries::zero(a.q_max.min(b.q_max));
            out.q_shift = &a.q_shift + &b.q_shift;
            out.z_shift = &a.z_shift + &b.z_shift + rint(w_lo as i64);
            out.z_exact_below = false;
            return Ok(out);
        }
        // Storage window: clip the exact range by the support hull.
        let z_min = w_lo.max(hull_lo);
        let z_max = w_hi.min(hull_hi);
        if z_min > z_max || z_min <= NEG_INF || z_max >= POS_INF {
            return Err(WindowUnderflow);
        }
        let (z_min, z_max) = (z_min as i64, z_max as i64);
        let q_max = a.q_max.min(b.q_max);
        let eb = a.z_exact_below && b.z_exact_below;
        let ea = a.z_exact_above && b.z_exact_above;
        let mut out = BiSeries::new(
            &a.q_shift + &b.q_shift,
            &a.z_shift + &b.z_shift,
            q_max,
            z_min,
            z_max,
            eb,
            ea,
        );
        for (da, wa, ca) in a.terms() {
            if da > q_max {
                continue;
            }
            for (db, wb, cb) in b.terms() {
                let dq = da + db;
                if dq > q_max {
                    continue;
                }
                let dz = wa + wb;
                if (z_min..=z_max).contains(&dz) {
                    out.add_term(dq, dz, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse on a requested z-width above the corner.
    ///
    /// The minimal monomial (lexicographic in `(q, z)`) must be visible and
    /// nonzero, which needs `z_exact_below`. When the input is not
    /// `z_exact_above`, deeper q-rows lose z-width proportionally to the
    /// below-corner support depth, and the window shrinks accordingly.
    pub fn invert_unit_windowed(&self, width: i64) -> Result<BiSeries, NotAUnit> {
        assert!(width >= 0);
        let a = self.clone().normalize_q();
        if !a.z_exact_below || a.is_zero() {
            return Err(NotAUnit);
        }
        let row0 = a.rows.get(&0).ok_or(NotAUnit)?;
        let w0 = (0..row0.len())
            .find(|&i| !row0[i].is_zero())
            .map(|i| a.z_min + i as i64)
            .ok_or(NotAUnit)?;
        let lead = a.get(0, w0);
        let (sa_lo, _) = a.z_support_bounds();
        // Support below the corner makes coefficients of deep q-rows depend
        // on shallow rows at higher z-offsets.
        let below_depth = w0 - sa_lo as i64;
        debug_assert!(below_depth >= 0);
        // Exact z-width available on row dq of the inverse: z-incomplete
        // inputs lose `below_depth` per q-row.
        let budget = |dq: i64| -> i64 {
            if a.z_exact_above {
                i64::MAX / 2
            } else {
                (a.z_max - w0) - dq * below_depth
            }
        };
        let q_max = (0..=a.q_max).take_while(|&dq| budget(dq) >= 0).count() as i64 - 1;
        if q_max < 0 {
            return Err(NotAUnit);
        }
        let z_max_out = width.min(budget(q_max));
        // Support of the inverse extends below the corner: row dq reaches
        // down to -dq * below_depth (each q-unit of a support term can lower
        // z by at most below_depth). Rows are also computed wider than
        // stored, to supply the below-corner demands of deeper rows.
        let row_lo = |dq: i64| -> i64 { -dq * below_depth };
        let row_hi = |dq: i64| -> i64 { z_max_out + (q_max - dq) * below_depth };
        let mut inv: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
        for dq in 0..=q_max {
            let (lo, hi) = (row_lo(dq), row_hi(dq));
            let mut row = vec![Rat::zero(); (hi - lo) as usize + 1];
            for w in lo..=hi {
                let mut acc = if dq == 0 && w == 0 { Rat::one() } else { Rat::zero() };
                // delta minus every a-term other than the corner monomial
                for (qa, wa, ca) in a.terms() {
                    if qa > dq || (qa == 0 && wa <= w0) {
                        continue;
                    }
                    let bq = dq - qa;
                    let bw = w - (wa - w0);
                    if bw < row_lo(bq) {
                        continue; // provably zero by the support bound
                    }
                    let bv = if bq == dq {
                        debug_assert!(bw < w);
                        &row[(bw - lo) as usize]
                    } else {
                        debug_assert!(bw <= row_hi(bq));
                        &inv[&bq][(bw - row_lo(bq)) as usize]
                    };
                    if !bv.is_zero() {
                        acc -= ca * bv;
                    }
                }
                row[(w - lo) as usize] = acc / &lead;
            }
            inv.insert(dq, row);
        }
        let z_min_out = row_lo(q_max);
        let mut out = BiSeries::new(
            -a.q_shift.clone(),
            -(&a.z_shift + rint(w0)),
            q_max,
            z_min_out,
            z_max_out,
            true,
            false,
        );
        for (dq, row) in inv {
            let lo = row_lo(dq);
            for (i, c) in row.into_iter().enumerate() {
                let w = lo + i as i64;
                if w <= z_max_out && !c.is_zero() {
                    out.add_term(dq, w, c);
                }
            }
        }
        Ok(out)
    }

    /// Inverse on the mirrored window of the input.
    pub fn invert_unit(&self) -> Result<BiSeries, NotAUnit> {
        self.invert_unit_windowed(self.z_max - self.z_min)
    }

    /// Sets `z = 1` by summing each q-row. The caller must guarantee finite
    /// z-support per q-order; both completeness flags are therefore required.
    pub fn specialize_z1(&self) -> QSeries {
        assert!(
            self.fully_z_exact(),
            "specializing z=1 requires a z-complete window (finite z-support)"
        );
        let mut coeffs = vec![Rat::zero(); self.q_max as usize + 1];
        for (dq, _, c) in self.terms() {
            coeffs[dq as usize] += c;
        }
        QSeries::new(self.q_shift.clone(), coeffs)
    }

    /// First point of the shared provably-known region where the two series
    /// differ, as `(q_exp, z_exp, lhs, rhs)`.
    pub fn first_discrepancy(&self, other: &BiSeries) -> Option<(Rat, Rat, Rat, Rat)> {
        self.first_discrepancy_in(other, None)
    }

    /// As `first_discrepancy`, but ignoring columns outside the absolute
    /// z-range when one is given.
    pub fn first_discrepancy_in(
        &self,
        other: &BiSeries,
        z_range: Option<(&Rat, &Rat)>,
    ) -> Option<(Rat, Rat, Rat, Rat)> {
        let d = self.sub(other);
        let mut first: Option<(i64, i64)> = None;
        for (dq, dz, _) in d.terms() {
            if let Some((lo, hi)) = z_range {
                let ze = &d.z_shift + rint(dz);
                if ze < *lo || ze > *hi {
                    continue;
                }
            }
            if first.is_none_or(|(fq, fz)| (dq, dz) < (fq, fz)) {
                first = Some((dq, dz));
            }
        }
        let (dq, dz) = first?;
        let qe = &d.q_shift + rint(dq);
        let ze = &d.z_shift + rint(dz);
        let l = self.coeff(&qe, &ze).unwrap_or_else(Rat::zero);
        let r = other.coeff(&qe, &ze).unwrap_or_else(Rat::zero);
        Some((qe, ze, l, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    /// 1 - z on a generous window, fully exact.
    fn one_minus_z(q_max: i64, z_hi: i64) -> BiSeries {
        let mut s = BiSeries::new(Rat::zero(), Rat::zero(), q_max, 0, z_hi, true, true);
        s.add_term(0, 0, Rat::one());
        s.add_term(0, 1, rint(-1));
        s
    }

    #[test]
    fn identity_multiplication() {
        let one = BiSeries::monomial(Rat::one(), Rat::zero(), Rat::zero(), 6);
        let mut s = BiSeries::new(rat(1, 8), rat(-1, 2), 6, -2, 3, true, false);
        s.add_term(0, -2, rint(5));
        s.add_term(3, 1, rat(2, 7));
        let p = one.mul(&s).unwrap();
        assert!(p.first_discrepancy(&s).is_none());
    }

    #[test]
    fn telescoping_geometric() {
        // (1 - z) * sum z^i = 1 on the provable window
        let a = one_minus_z(4, 12);
        let mut geo = BiSeries::new(Rat::zero(), Rat::zero(), 4, 0, 10, true, false);
        for w in 0..=10 {
            geo.add_term(0, w, Rat::one());
        }
        let p = a.mul(&geo).unwrap();
        let one = BiSeries::monomial(Rat::one(), Rat::zero(), Rat::zero(), 4);
        assert!(p.first_discrepancy(&one).is_none());
        // beyond z^9 the product is not claimed: window must stop there
        assert!(p.z_max() <= 10);
    }

    #[test]
    fn flip_is_involutive() {
        let mut s = BiSeries::new(rat(1, 3), rat(-3, 2), 5, -1, 4, true, false);
        s.add_term(0, -1, rint(2));
        s.add_term(2, 3, rat(-7, 3));
        let back = s.flip_z().flip_z();
        assert_eq!(back, s);
    }

    #[test]
    fn specialize_sums_rows() {
        // 1 - z specializes to 0; z^(3/2) to 1
        let s = one_minus_z(3, 5);
        let q = s.specialize_z1();
        assert!(q.is_zero());
        let m = BiSeries::monomial(Rat::one(), Rat::zero(), rat(3, 2), 3);
        assert_eq!(m.specialize_z1().coeff(&Rat::zero()), Some(Rat::one()));
    }

    #[test]
    fn invert_geometric_recovers_polynomial() {
        let a = one_minus_z(5, 9);
        let inv = a.invert_unit_windowed(8).unwrap();
        // inverse of 1 - z is sum z^i
        for w in 0..=8 {
            assert_eq!(inv.coeff(&Rat::zero(), &rint(w)), Some(Rat::one()));
        }
        // inverting back enters the triangular-width regime but must agree
        let back = inv.invert_unit_windowed(4).unwrap();
        assert!(back.first_discrepancy(&a).is_none());
        assert_eq!(back.coeff(&Rat::zero(), &Rat::zero()), Some(Rat::one()));
        assert_eq!(back.coeff(&Rat::zero(), &Rat::one()), Some(rint(-1)));
    }

    #[test]
    fn window_underflow_is_reported() {
        // both factors incomplete on opposite sides with unbounded support
        let mut a = BiSeries::new(Rat::zero(), Rat::zero(), 3, 0, 2, false, false);
        a.add_term(0, 0, Rat::one());
        let b = a.clone();
        assert_eq!(a.mul(&b), Err(WindowUnderflow));
    }
}
