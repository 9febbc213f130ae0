//! Univariate truncated series `q^shift * (c_0 + c_1 q + ... + c_max q^max)`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::NotAUnit;
use crate::rat::{is_integer, rint, to_i64, Rat};

/// A truncated formal series in `q` with a rational exponent shift.
///
/// The represented function has no support below `shift`, and the stored
/// coefficients are its exact coefficients at `q^(shift + d)` for
/// `0 <= d <= q_max`. Nothing is claimed beyond `shift + q_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    shift: Rat,
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Builds a series from its shift and coefficient list (`q_max` is
    /// `coeffs.len() - 1`).
    pub fn new(shift: Rat, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        QSeries { shift, coeffs }
    }

    /// The zero function, known exactly up to `q^q_max`.
    pub fn zero(q_max: i64) -> Self {
        QSeries { shift: Rat::zero(), coeffs: vec![Rat::zero(); (q_max + 1).max(1) as usize] }
    }

    pub fn one(q_max: i64) -> Self {
        Self::monomial(Rat::zero(), q_max)
    }

    /// `q^exp`, exact to relative order `q_max`.
    pub fn monomial(exp: Rat, q_max: i64) -> Self {
        let mut coeffs = vec![Rat::zero(); (q_max + 1).max(1) as usize];
        coeffs[0] = Rat::one();
        QSeries { shift: exp, coeffs }
    }

    /// Accumulates `coeff * q^(shift + deg)` terms, exact to `shift + q_max`.
    /// All degrees must lie in `0..=q_max`; higher terms must be excluded by
    /// the caller (they are not representable exactly).
    pub fn from_terms(shift: Rat, q_max: i64, terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut coeffs = vec![Rat::zero(); (q_max + 1).max(1) as usize];
        for (d, c) in terms {
            assert!((0..=q_max).contains(&d), "term degree outside window");
            coeffs[d as usize] += c;
        }
        QSeries { shift, coeffs }
    }

    pub fn shift(&self) -> &Rat {
        &self.shift
    }

    /// Highest relative degree with an exact coefficient.
    pub fn q_max(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Absolute exponent up to which the series is known: `shift + q_max`.
    pub fn known_end(&self) -> Rat {
        &self.shift + rint(self.q_max())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact coefficient of `q^exp`; `None` when `exp` is beyond the known
    /// range. Exponents below the shift or off the lattice give zero.
    pub fn coeff(&self, exp: &Rat) -> Option<Rat> {
        let rel = exp - &self.shift;
        if !is_integer(&rel) {
            return if *exp <= self.known_end() { Some(Rat::zero()) } else { None };
        }
        let d = to_i64(&rel)?;
        if d < 0 {
            Some(Rat::zero())
        } else if d <= self.q_max() {
            Some(self.coeffs[d as usize].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Lowest absolute exponent carrying a nonzero coefficient; for an
    /// all-zero window this is `known_end() + 1`, the first exponent at which
    /// support could possibly start.
    pub fn support_min(&self) -> Rat {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(d) => &self.shift + rint(d as i64),
            None => self.known_end() + rint(1),
        }
    }

    /// Moves the shift up past leading zero coefficients. The known range is
    /// unchanged, so `q_max` shrinks accordingly. An all-zero series is
    /// collapsed to a single zero coefficient at its known end.
    pub fn normalize(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => self,
            Some(d) => {
                self.coeffs.drain(..d);
                self.shift += rint(d as i64);
                self
            }
            None => {
                let end = self.known_end();
                QSeries { shift: end, coeffs: vec![Rat::zero()] }
            }
        }
    }

    /// Restricts the known range to `shift + new_max`.
    pub fn truncate(mut self, new_max: i64) -> Self {
        assert!(new_max >= 0);
        self.coeffs.truncate(new_max as usize + 1);
        self
    }

    /// Multiplies by the monomial `q^e`.
    pub fn mul_monomial(mut self, e: &Rat) -> Self {
        self.shift += e;
        self
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        for x in &mut self.coeffs {
            if !x.is_zero() {
                *x *= c;
            }
        }
        self
    }

    pub fn neg(self) -> Self {
        self.scale(&rint(-1))
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        if self.is_zero() && !is_integer(&(&self.shift - &other.shift)) {
            let end = self.known_end().min(other.known_end());
            return other.clone().clip_to_end(&end);
        }
        if other.is_zero() && !is_integer(&(&self.shift - &other.shift)) {
            let end = self.known_end().min(other.known_end());
            return self.clone().clip_to_end(&end);
        }
        let rel = &other.shift - &self.shift;
        assert!(is_integer(&rel), "adding series on incompatible exponent lattices");
        let off = to_i64(&rel).expect("lattice offset overflow");
        let shift = if off >= 0 { self.shift.clone() } else { other.shift.clone() };
        let end = self.known_end().min(other.known_end());
        let q_max = to_i64(&(&end - &shift)).expect("window overflow");
        if q_max < 0 {
            // Known ranges do not overlap on a common lattice point.
            return QSeries { shift: end, coeffs: vec![Rat::zero()] };
        }
        let mut coeffs = vec![Rat::zero(); q_max as usize + 1];
        // Offset of each summand's degree 0 relative to the common shift.
        for (v, base) in [(self, (-off).max(0)), (other, off.max(0))] {
            for (d, c) in v.coeffs.iter().enumerate() {
                let t = base + d as i64;
                if (0..=q_max).contains(&t) && !c.is_zero() {
                    coeffs[t as usize] += c;
                }
            }
        }
        QSeries { shift, coeffs }
    }

    fn clip_to_end(self, end: &Rat) -> QSeries {
        let rel = end - &self.shift;
        if rel >= rint(self.q_max()) {
            return self;
        }
        if rel < Rat::zero() {
            return QSeries { shift: end.clone(), coeffs: vec![Rat::zero()] };
        }
        let q_max = to_i64(&rel.floor()).expect("window overflow");
        self.truncate(q_max)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.clone().neg())
    }

    /// Exact product on the largest provably exact window: the result is
    /// valid at relative degree `D` iff
    /// `D <= min(a.q_max + b.support_low, b.q_max + a.support_low)`
    /// (relative support offsets), which for series with no support below
    /// their shifts never underflows.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let a = self.clone().normalize();
        let b = other.clone().normalize();
        if a.is_zero() || b.is_zero() {
            let (z, n) = if a.is_zero() { (&a, &b) } else { (&b, &a) };
            // zero known to z.known_end, factor supported from n.support_min
            let end = z.known_end() + n.support_min();
            return QSeries { shift: end, coeffs: vec![Rat::zero()] };
        }
        let q_max = a.q_max().min(b.q_max());
        let shift = &a.shift + &b.shift;
        let mut coeffs = vec![Rat::zero(); q_max as usize + 1];
        for (da, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() || da as i64 > q_max {
                continue;
            }
            for (db, cb) in b.coeffs.iter().enumerate() {
                let d = da + db;
                if d as i64 > q_max {
                    break;
                }
                if !cb.is_zero() {
                    coeffs[d] += ca * cb;
                }
            }
        }
        QSeries { shift, coeffs }
    }

    /// Multiplicative inverse. The input is normalized first; its leading
    /// coefficient must be nonzero.
    pub fn invert_unit(&self) -> Result<QSeries, NotAUnit> {
        let a = self.clone().normalize();
        if a.coeffs[0].is_zero() {
            return Err(NotAUnit);
        }
        let lead = a.coeffs[0].clone();
        let n = a.coeffs.len();
        let mut inv = vec![Rat::zero(); n];
        inv[0] = Rat::one() / &lead;
        for d in 1..n {
            let mut acc = Rat::zero();
            for i in 1..=d {
                if !a.coeffs[i].is_zero() && !inv[d - i].is_zero() {
                    acc += &a.coeffs[i] * &inv[d - i];
                }
            }
            inv[d] = -acc / &lead;
        }
        Ok(QSeries { shift: -a.shift, coeffs: inv })
    }

    /// Integer power, with inversion for negative exponents.
    pub fn pow(&self, n: i64) -> Result<QSeries, NotAUnit> {
        if n == 0 {
            return Ok(QSeries::one(self.q_max()));
        }
        let base = if n < 0 { self.invert_unit()? } else { self.clone() };
        let mut result = QSeries::one(base.q_max());
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    /// Re-expands the series in `q^(1/k)`: every exponent is multiplied by
    /// `k`, turning half-integer lattices into integer ones.
    pub fn stretch(&self, k: i64) -> QSeries {
        assert!(k >= 1);
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() * k as usize];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d * k as usize] = c.clone();
        }
        // Known through (shift + q_max) * k; trailing slots are within that.
        coeffs.truncate(self.coeffs.len() * k as usize - (k as usize - 1));
        QSeries { shift: &self.shift * rint(k), coeffs }
    }

    /// First exponent (if any) where the two series provably differ on the
    /// shared known range. `None` means they agree everywhere both are known.
    pub fn first_discrepancy(&self, other: &QSeries) -> Option<(Rat, Rat, Rat)> {
        let d = self.sub(other).normalize();
        if d.is_zero() {
            return None;
        }
        let e = d.support_min();
        Some((e.clone(), self.coeff(&e).unwrap_or_else(Rat::zero), other.coeff(&e).unwrap_or_else(Rat::zero)))
    }

    /// True when both series agree on everything both windows cover, and that
    /// shared range reaches at least `min_order` (absolute exponent).
    pub fn agrees_to(&self, other: &QSeries, min_order: &Rat) -> bool {
        self.known_end() >= *min_order
            && other.known_end() >= *min_order
            && self.first_discrepancy(other).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn geom(q_max: i64) -> QSeries {
        // 1/(1-q)
        QSeries::new(Rat::zero(), vec![Rat::one(); q_max as usize + 1])
    }

    #[test]
    fn invert_one_minus_q() {
        let one_minus_q =
            QSeries::from_terms(Rat::zero(), 10, [(0, Rat::one()), (1, rint(-1))]);
        assert_eq!(one_minus_q.invert_unit().unwrap(), geom(10));
        // involution
        let s = QSeries::from_terms(rat(1, 3), 8, [(0, rint(2)), (3, rat(5, 7))]);
        let back = s.invert_unit().unwrap().invert_unit().unwrap();
        assert!(s.first_discrepancy(&back).is_none());
    }

    #[test]
    fn mul_window_narrows_to_provable_range() {
        // a = q^2 * (1 + ... ) known to q^7, b known to q^4 with support from q^0:
        // product exact to min(7+0, 4+2) relative ... checked via known_end.
        let a = QSeries::monomial(rint(2), 5); // q^2, known to q^7
        let b = geom(4); // known to q^4
        let p = a.mul(&b);
        assert_eq!(p.known_end(), rint(6)); // q^2..q^6
        assert_eq!(p.coeff(&rint(6)), Some(Rat::one()));
        assert_eq!(p.coeff(&rint(7)), None);
    }

    #[test]
    fn zero_times_anything_is_zero_with_sane_window() {
        let z = QSeries::zero(5);
        let b = geom(9);
        let p = z.mul(&b);
        assert!(p.is_zero());
        assert!(p.known_end() >= rint(5));
    }

    #[test]
    fn add_aligns_lattices() {
        let a = QSeries::monomial(rat(1, 2), 6); // q^(1/2)
        let b = QSeries::monomial(rat(5, 2), 6); // q^(5/2)
        let s = a.add(&b);
        assert_eq!(s.coeff(&rat(1, 2)), Some(Rat::one()));
        assert_eq!(s.coeff(&rat(5, 2)), Some(Rat::one()));
        assert_eq!(s.coeff(&rat(3, 2)), Some(Rat::zero()));
    }

    #[test]
    fn stretch_doubles_exponents() {
        let a = QSeries::from_terms(rat(1, 2), 3, [(0, rint(1)), (2, rint(7))]);
        let s = a.stretch(2);
        assert_eq!(s.shift, rint(1));
        assert_eq!(s.coeff(&rint(5)), Some(rint(7)));
        assert_eq!(s.known_end(), rint(7));
    }
}
