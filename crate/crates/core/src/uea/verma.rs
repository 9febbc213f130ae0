//! Verma modules and their highest-weight quotients as concrete weight-space
//! linear algebra: PBW bases, exact generator action, Sugawara `L_0`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::element::{
    commutator, j3, jm, jp, straighten, word_charge, word_grade, Generator, UeaElement, Word,
};
use crate::linalg::RowSpan;
use crate::rat::{rint, Rat};
use crate::weights::Level;

/// All canonical lowering words of the given charge and grade, in a fixed
/// deterministic order. Spanning set of `[V_j]_{Q,N}` for every `j`.
pub fn weight_space_basis(charge: i64, grade: i64) -> Vec<Word> {
    if grade < 0 {
        return Vec::new();
    }
    // canonical order: J3 block (modes -grade..-1), J+ block (same), then
    // J- block (modes -grade..0); within a block modes ascend
    let mut gens: Vec<Generator> = Vec::new();
    for m in (1..=grade).rev() {
        gens.push(j3(-m));
    }
    for m in (1..=grade).rev() {
        gens.push(jp(-m));
    }
    for m in (0..=grade).rev() {
        gens.push(jm(-m));
    }
    let mut out = Vec::new();
    let mut word: Word = Vec::new();
    enumerate(&gens, 0, charge, grade, &mut word, &mut out);
    out
}

fn enumerate(
    gens: &[Generator],
    idx: usize,
    charge: i64,
    grade: i64,
    word: &mut Word,
    out: &mut Vec<Word>,
) {
    if idx == gens.len() {
        if charge == 0 && grade == 0 {
            out.push(word.clone());
        }
        return;
    }
    let g = gens[idx];
    // remaining generators can only lower the charge via J_0^-; prune on
    // grade, which is non-negative for every lowering generator
    let max_count = if g.grade() == 0 {
        // J_0^-: consumes charge only
        if charge <= 0 {
            -charge
        } else {
            0
        }
    } else {
        grade / g.grade()
    };
    for count in 0..=max_count {
        let used_grade = count * g.grade();
        let used_charge = count * g.charge();
        if used_grade > grade {
            break;
        }
        for _ in 0..count {
            word.push(g);
        }
        // last generator is J_0^-; charge must be exactly consumable
        enumerate(gens, idx + 1, charge - used_charge, grade - used_grade, word, out);
        for _ in 0..count {
            word.pop();
        }
    }
}

/// A vector in a weight space, as coordinates over `weight_space_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub charge: i64,
    pub grade: i64,
    pub coords: Vec<Rat>,
}

impl WeightVector {
    pub fn zero(charge: i64, grade: i64) -> Self {
        let dim = weight_space_basis(charge, grade).len();
        WeightVector { charge, grade, coords: vec![Rat::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        for x in &mut self.coords {
            if !x.is_zero() {
                *x *= c;
            }
        }
        self
    }

    pub fn add_assign(&mut self, other: &WeightVector) {
        assert_eq!((self.charge, self.grade), (other.charge, other.grade));
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

/// A highest-weight module: the Verma module of weight `j`, or its quotient
/// by the submodule generated by the given singular vectors.
///
/// Killed-span row reductions are cached per weight space; the cache is a
/// plain cell, so a module instance is not shareable across threads (clone
/// it instead).
#[derive(Clone, Debug)]
pub struct HwModule {
    pub level: Level,
    pub j: Rat,
    /// Generators of the quotiented submodule, as weight vectors.
    killed: Vec<WeightVector>,
    span_cache: core::cell::RefCell<alloc::collections::BTreeMap<(i64, i64), RowSpan>>,
    action_cache:
        core::cell::RefCell<alloc::collections::BTreeMap<(Generator, Word), alloc::rc::Rc<Vec<(Word, Rat)>>>>,
    space_cache: core::cell::RefCell<alloc::collections::BTreeMap<(i64, i64), alloc::rc::Rc<SpaceData>>>,
    matrix_cache: core::cell::RefCell<
        alloc::collections::BTreeMap<(Generator, i64, i64), alloc::rc::Rc<Vec<Vec<(usize, Rat)>>>>,
    >,
}

/// Basis and monomial index of one weight space.
#[derive(Debug)]
pub struct SpaceData {
    pub basis: Vec<Word>,
    pub index: alloc::collections::BTreeMap<Word, usize>,
}

impl HwModule {
    pub fn verma(level: Level, j: Rat) -> Self {
        Self::quotient(level, j, Vec::new())
    }

    pub fn quotient(level: Level, j: Rat, killed: Vec<WeightVector>) -> Self {
        HwModule {
            level,
            j,
            killed,
            span_cache: Default::default(),
            action_cache: Default::default(),
            space_cache: Default::default(),
            matrix_cache: Default::default(),
        }
    }

    /// The reduced action of one generator on a weight space, as sparse
    /// columns: `matrix[i]` lists `(row, coeff)` of the image of the i-th
    /// basis monomial.
    pub fn gen_matrix(
        &self,
        g: Generator,
        charge: i64,
        grade: i64,
    ) -> alloc::rc::Rc<Vec<Vec<(usize, Rat)>>> {
        let key = (g, charge, grade);
        if let Some(hit) = self.matrix_cache.borrow().get(&key) {
            return hit.clone();
        }
        let dim = self.space(charge, grade).basis.len();
        let mut cols = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut unit = WeightVector::zero(charge, grade);
            unit.coords[i] = Rat::one();
            let image = self.apply_gen(g, &self.reduce(unit));
            cols.push(
                image
                    .coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect::<Vec<_>>(),
            );
        }
        let out = alloc::rc::Rc::new(cols);
        self.matrix_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Cached basis and index of the weight space at `(charge, grade)`.
    pub fn space(&self, charge: i64, grade: i64) -> alloc::rc::Rc<SpaceData> {
        if let Some(hit) = self.space_cache.borrow().get(&(charge, grade)) {
            return hit.clone();
        }
        let basis = weight_space_basis(charge, grade);
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let data = alloc::rc::Rc::new(SpaceData { basis, index });
        self.space_cache.borrow_mut().insert((charge, grade), data.clone());
        data
    }

    pub fn k(&self) -> Rat {
        self.level.k()
    }

    fn t(&self) -> Rat {
        self.level.t()
    }

    /// The span of the quotiented submodule inside `[V_j]_{Q,N}`.
    pub fn killed_span(&self, charge: i64, grade: i64) -> RowSpan {
        if let Some(span) = self.span_cache.borrow().get(&(charge, grade)) {
            return span.clone();
        }
        let span = self.killed_span_uncached(charge, grade);
        self.span_cache.borrow_mut().insert((charge, grade), span.clone());
        span
    }

    fn killed_span_uncached(&self, charge: i64, grade: i64) -> RowSpan {
        let space = self.space(charge, grade);
        let mut span = RowSpan::new(space.basis.len());
        for w in &self.killed {
            let dq = charge - w.charge;
            let dn = grade - w.grade;
            if dn < 0 {
                continue;
            }
            for mono in weight_space_basis(dq, dn) {
                // left-multiply the singular vector by the monomial
                let mut acc = vec![Rat::zero(); space.basis.len()];
                let w_basis = weight_space_basis(w.charge, w.grade);
                for (c, base_word) in w.coords.iter().zip(&w_basis) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut word = mono.clone();
                    word.extend_from_slice(base_word);
                    for (sw, sc) in straighten(&word, c, &self.k()) {
                        if let Some(&i) = space.index.get(&sw) {
                            acc[i] += sc;
                        } else {
                            debug_assert!(
                                sw.iter().all(Generator::is_lowering),
                                "straightened lowering word left the basis"
                            );
                        }
                    }
                }
                span.insert(acc);
            }
        }
        span
    }

    /// Dimension of the weight space in this module.
    pub fn dim(&self, charge: i64, grade: i64) -> usize {
        weight_space_basis(charge, grade).len() - self.killed_span(charge, grade).dim()
    }

    /// Canonical representative: eliminates the killed-span pivot
    /// coordinates.
    pub fn reduce(&self, v: WeightVector) -> WeightVector {
        if self.killed.is_empty() {
            return v;
        }
        let span = self.killed_span(v.charge, v.grade);
        WeightVector { charge: v.charge, grade: v.grade, coords: span.reduce(v.coords) }
    }

    /// Applies a single generator to a basis monomial of the module (acting
    /// on the highest-weight vector), exactly. Results are cached; the same
    /// words recur across unit vectors and constraint assemblies.
    fn apply_gen_to_word(&self, g: Generator, word: &[Generator]) -> alloc::rc::Rc<Vec<(Word, Rat)>> {
        let key = (g, word.to_vec());
        if let Some(hit) = self.action_cache.borrow().get(&key) {
            return hit.clone();
        }
        let out = alloc::rc::Rc::new(self.apply_gen_to_word_uncached(g, word));
        self.action_cache.borrow_mut().insert(key, out.clone());
        out
    }

    fn apply_gen_to_word_uncached(&self, g: Generator, word: &[Generator]) -> Vec<(Word, Rat)> {
        if g.is_lowering() {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(g);
            w.extend_from_slice(word);
            return straighten(&w, &Rat::one(), &self.k());
        }
        // push g through to the highest-weight vector
        match word.split_first() {
            None => match g.kind {
                super::element::GenKind::J3 if g.mode == 0 => {
                    vec![(Vec::new(), self.j.clone())]
                }
                // positive modes and J_0^+ annihilate the highest weight
                _ => Vec::new(),
            },
            Some((b, rest)) => {
                let mut out: Vec<(Word, Rat)> = Vec::new();
                // b * (g rest) term
                for (w, c) in self.apply_gen_to_word(g, rest).iter() {
                    let mut full = Vec::with_capacity(w.len() + 1);
                    full.push(*b);
                    full.extend_from_slice(w);
                    for (sw, sc) in straighten(&full, c, &self.k()) {
                        out.push((sw, sc));
                    }
                }
                // [g, b] rest term
                let (gen_term, scalar) = commutator(g, *b, &self.k());
                if let Some((g2, c2)) = gen_term {
                    for (w, c) in self.apply_gen_to_word(g2, rest).iter() {
                        out.push((w.clone(), c * &c2));
                    }
                }
                if !scalar.is_zero() {
                    out.push((rest.to_vec(), scalar));
                }
                out
            }
        }
    }

    /// Exact action of a generator on a weight vector, reduced modulo the
    /// quotient.
    pub fn apply_gen(&self, g: Generator, v: &WeightVector) -> WeightVector {
        let target = (v.charge + g.charge(), v.grade + g.grade());
        if target.1 < 0 {
            return WeightVector { charge: target.0, grade: target.1, coords: Vec::new() };
        }
        let source = self.space(v.charge, v.grade);
        let target_space = self.space(target.0, target.1);
        let mut out = WeightVector {
            charge: target.0,
            grade: target.1,
            coords: vec![Rat::zero(); target_space.basis.len()],
        };
        for (c, word) in v.coords.iter().zip(&source.basis) {
            if c.is_zero() {
                continue;
            }
            for (w, wc) in self.apply_gen_to_word(g, word).iter() {
                let i = target_space.index.get(w).expect("action left the weight-space basis");
                out.coords[*i] += c * wc;
            }
        }
        self.reduce(out)
    }

    /// Applies a right-to-left generator sequence.
    pub fn apply_word(&self, word: &[Generator], v: &WeightVector) -> WeightVector {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.apply_gen(*g, &cur);
        }
        cur
    }

    /// Applies a normal-ordered element.
    pub fn apply(&self, x: &UeaElement, v: &WeightVector) -> WeightVector {
        assert_eq!(*x.level(), self.k(), "element at the wrong level");
        let mut acc: Option<WeightVector> = None;
        for (w, c) in x.terms() {
            let dq = word_charge(w);
            let dn = word_grade(w);
            let target = (v.charge + dq, v.grade + dn);
            let term = self.apply_word(w, v).scale(c);
            match &mut acc {
                None => acc = Some(term),
                Some(a) => {
                    assert_eq!((a.charge, a.grade), target, "inhomogeneous element");
                    a.add_assign(&term);
                }
            }
        }
        acc.unwrap_or_else(|| WeightVector::zero(v.charge, v.grade))
    }

    /// The highest-weight vector.
    pub fn highest_weight(&self) -> WeightVector {
        WeightVector { charge: 0, grade: 0, coords: vec![Rat::one()] }
    }

    /// Builds the vector `x |j>` for a lowering element.
    pub fn vector_of(&self, x: &UeaElement) -> WeightVector {
        self.apply(x, &self.highest_weight())
    }

    /// Sugawara `L_0` from its finite normal-ordered form. Acts as
    /// `(h_j + N) id` on grade `N`.
    pub fn sugawara_l0(&self, v: &WeightVector) -> WeightVector {
        let t = self.t();
        let mut acc = WeightVector::zero(v.charge, v.grade);
        // J_0^3 (J_0^3 + 1)
        let a = self.apply_gen(j3(0), v);
        let b = self.apply_gen(j3(0), &a);
        acc.add_assign(&b);
        acc.add_assign(&a);
        // sum_{m >= 0} J^-_{-m} J^+_m, sum_{m >= 1} (J^+_{-m} J^-_m + 2 J^3_{-m} J^3_m)
        for m in 0..=v.grade {
            let up = self.apply_gen(jp(m), v);
            if !up.is_zero() {
                acc.add_assign(&self.apply_gen(jm(-m), &up));
            }
            if m >= 1 {
                let down = self.apply_gen(jm(m), v);
                if !down.is_zero() {
                    acc.add_assign(&self.apply_gen(jp(-m), &down));
                }
                let mid = self.apply_gen(j3(m), v);
                if !mid.is_zero() {
                    acc.add_assign(&self.apply_gen(j3(-m), &mid).scale(&rint(2)));
                }
            }
        }
        acc.scale(&(Rat::one() / t))
    }

    /// Conformal weight of the highest-weight vector.
    pub fn h(&self) -> Rat {
        self.level.h_of_j(&self.j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::verma_weight_space_dim;
    use crate::rat::rat;

    #[test]
    fn basis_counts_match_character_coefficients() {
        for q in -4..=4i64 {
            for n in 0..=4i64 {
                let dim = weight_space_basis(q, n).len() as i64;
                assert_eq!(dim, verma_weight_space_dim(q, n), "(Q,N)=({q},{n})");
            }
        }
    }

    #[test]
    fn small_bases() {
        assert_eq!(weight_space_basis(0, 0), vec![Vec::new()]);
        assert_eq!(weight_space_basis(-1, 0), vec![vec![jm(0)]]);
        assert_eq!(weight_space_basis(2, 0).len(), 0);
        // (Q,N) = (-1,2): eight monomials, matching the reciprocal
        // triple-product coefficient
        assert_eq!(weight_space_basis(-1, 2).len(), 8);
    }

    #[test]
    fn cartan_and_l0_are_diagonal() {
        let lv = Level::new(2, 3);
        let m = HwModule::verma(lv.clone(), rat(-2, 3));
        for (q, n) in [(0i64, 1i64), (-1, 2), (1, 1), (2, 3), (-2, 4)] {
            let basis = weight_space_basis(q, n);
            for i in 0..basis.len() {
                let mut v = WeightVector::zero(q, n);
                v.coords[i] = Rat::one();
                // J_0^3 acts as j + Q
                let jv = m.apply_gen(j3(0), &v);
                assert_eq!(jv, v.clone().scale(&(&m.j + rint(q))));
                // L_0 acts as h_j + N
                let lv0 = m.sugawara_l0(&v);
                assert_eq!(lv0, v.clone().scale(&(m.h() + rint(n))), "(Q,N)=({q},{n}) #{i}");
            }
        }
    }

    #[test]
    fn l0_minus_cartan_square_annihilates_highest_weight() {
        let lv = Level::new(3, 2);
        let m = HwModule::verma(lv, rat(1, 2));
        let hw = m.highest_weight();
        let l0 = m.sugawara_l0(&hw);
        let j0 = m.apply_gen(j3(0), &hw);
        let jj1 = m.apply_gen(j3(0), &j0);
        let want = jj1.clone().add_assign_owned(&j0).scale(&(Rat::one() / m.t()));
        assert_eq!(l0, want);
    }

    impl WeightVector {
        fn add_assign_owned(mut self, other: &WeightVector) -> WeightVector {
            self.add_assign(other);
            self
        }
    }

    #[test]
    fn quotient_reduces_dimensions() {
        // Q_{1,1} at (2,3): kill the singular vector J^+_{-1} |j_{1,1}>
        let lv = Level::new(2, 3);
        let j = lv.j(1, 1);
        let verma = HwModule::verma(lv.clone(), j.clone());
        let sing = verma.vector_of(&UeaElement::from_word(lv.k(), &[jp(-1)], Rat::one()));
        let q = HwModule::quotient(lv, j, vec![sing]);
        assert_eq!(q.dim(1, 1), weight_space_basis(1, 1).len() - 1);
        // in the quotient, the singular vector reduces to zero
        let v = q.reduce(q.vector_of(&UeaElement::from_word(q.k(), &[jp(-1)], Rat::one())));
        assert!(v.is_zero());
    }
}
