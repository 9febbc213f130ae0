//! Normal-ordered elements of the enveloping algebra at a fixed level.
//!
//! Words are straightened into the PBW order (J3 block, J+ block, J- block,
//! modes ascending, i.e. deepest first) by repeated adjacent swaps; each
//! swap trades an inversion for a commutator term of shorter length, so the
//! rewriting terminates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::rat::{rat, rint, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    J3,
    JPlus,
    JMinus,
}

/// A mode generator `J^a_n`. The derived order is the PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub mode: i64,
}

pub fn j3(mode: i64) -> Generator {
    Generator { kind: GenKind::J3, mode }
}

pub fn jp(mode: i64) -> Generator {
    Generator { kind: GenKind::JPlus, mode }
}

pub fn jm(mode: i64) -> Generator {
    Generator { kind: GenKind::JMinus, mode }
}

impl Generator {
    /// `J_0^3`-eigenvalue shift.
    pub fn charge(&self) -> i64 {
        match self.kind {
            GenKind::J3 => 0,
            GenKind::JPlus => 1,
            GenKind::JMinus => -1,
        }
    }

    /// `L_0`-eigenvalue shift (positive for creation modes).
    pub fn grade(&self) -> i64 {
        -self.mode
    }

    /// Member of the lowering set that spans Verma weight spaces:
    /// `J^-_{-n} (n >= 0)`, `J^3_{-n}`, `J^+_{-n} (n >= 1)`.
    pub fn is_lowering(&self) -> bool {
        match self.kind {
            GenKind::JMinus => self.mode <= 0,
            _ => self.mode <= -1,
        }
    }

    pub fn dagger(&self) -> Generator {
        let kind = match self.kind {
            GenKind::J3 => GenKind::J3,
            GenKind::JPlus => GenKind::JMinus,
            GenKind::JMinus => GenKind::JPlus,
        };
        Generator { kind, mode: -self.mode }
    }
}

/// `[a, b]` as `(optional generator term, scalar term)`, with `K` already
/// evaluated at the level `k`.
pub fn commutator(a: Generator, b: Generator, k: &Rat) -> (Option<(Generator, Rat)>, Rat) {
    use GenKind::*;
    match (a.kind, b.kind) {
        (J3, J3) => {
            let scalar = if a.mode + b.mode == 0 { rat(a.mode, 2) * k } else { Rat::zero() };
            (None, scalar)
        }
        (J3, JPlus) => (Some((jp(a.mode + b.mode), Rat::one())), Rat::zero()),
        (JPlus, J3) => (Some((jp(a.mode + b.mode), rint(-1))), Rat::zero()),
        (J3, JMinus) => (Some((jm(a.mode + b.mode), rint(-1))), Rat::zero()),
        (JMinus, J3) => (Some((jm(a.mode + b.mode), Rat::one())), Rat::zero()),
        (JPlus, JMinus) => {
            let scalar = if a.mode + b.mode == 0 { rint(a.mode) * k } else { Rat::zero() };
            (Some((j3(a.mode + b.mode), rint(2))), scalar)
        }
        (JMinus, JPlus) => {
            let scalar = if a.mode + b.mode == 0 { rint(-b.mode) * k } else { Rat::zero() };
            (Some((j3(a.mode + b.mode), rint(-2))), scalar)
        }
        (JPlus, JPlus) | (JMinus, JMinus) => (None, Rat::zero()),
    }
}

/// A PBW word: generators in non-decreasing order.
pub type Word = Vec<Generator>;

pub fn word_charge(w: &[Generator]) -> i64 {
    w.iter().map(Generator::charge).sum()
}

pub fn word_grade(w: &[Generator]) -> i64 {
    w.iter().map(Generator::grade).sum()
}

/// An element of the enveloping algebra at level `k`, kept in canonical
/// normal-ordered form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    k: Rat,
    terms: BTreeMap<Word, Rat>,
}

impl UeaElement {
    pub fn zero(k: Rat) -> Self {
        UeaElement { k, terms: BTreeMap::new() }
    }

    pub fn identity(k: Rat) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Rat::one());
        UeaElement { k, terms }
    }

    /// Builds `coeff * g_1 g_2 ... g_n` (in the given operator order) and
    /// normal-orders it.
    pub fn from_word(k: Rat, word: &[Generator], coeff: Rat) -> Self {
        let mut out = UeaElement::zero(k.clone());
        for (w, c) in straighten(word, &coeff, &k) {
            out.insert(w, c);
        }
        out
    }

    pub fn level(&self) -> &Rat {
        &self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[Generator]) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, word: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        assert_eq!(self.k, other.k, "mixing levels");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> UeaElement {
        let mut out = UeaElement::zero(self.k.clone());
        for (w, v) in &self.terms {
            out.insert(w.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &UeaElement) -> UeaElement {
        self.add(&other.scale(&rint(-1)))
    }

    pub fn mul(&self, other: &UeaElement) -> UeaElement {
        assert_eq!(self.k, other.k, "mixing levels");
        let mut out = UeaElement::zero(self.k.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut word = wa.clone();
                word.extend_from_slice(wb);
                for (w, c) in straighten(&word, &(ca * cb), &self.k) {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    pub fn mul_gen(&self, g: Generator) -> UeaElement {
        let mut out = UeaElement::zero(self.k.clone());
        for (wa, ca) in &self.terms {
            let mut word = wa.clone();
            word.push(g);
            for (w, c) in straighten(&word, ca, &self.k) {
                out.insert(w, c);
            }
        }
        out
    }

    pub fn pow_gen(k: Rat, g: Generator, e: u32) -> UeaElement {
        let mut out = UeaElement::identity(k);
        for _ in 0..e {
            out = out.mul_gen(g);
        }
        out
    }

    /// The anti-automorphism: reverse each word and dagger each generator.
    pub fn dagger(&self) -> UeaElement {
        let mut out = UeaElement::zero(self.k.clone());
        for (w, c) in &self.terms {
            let word: Word = w.iter().rev().map(Generator::dagger).collect();
            for (cw, cc) in straighten(&word, c, &self.k) {
                out.insert(cw, cc);
            }
        }
        out
    }
}

/// Straightens a word into canonical terms. Each out-of-order adjacent pair
/// is swapped, adding the commutator remainder; `(length, inversions)`
/// strictly decreases lexicographically.
pub fn straighten(word: &[Generator], coeff: &Rat, k: &Rat) -> Vec<(Word, Rat)> {
    let mut done: Vec<(Word, Rat)> = Vec::new();
    let mut work: Vec<(Word, Rat)> = alloc::vec![(word.to_vec(), coeff.clone())];
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => done.push((w, c)),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let (gen_term, scalar) = commutator(w[i], w[i + 1], k);
                work.push((swapped, c.clone()));
                if let Some((g, gc)) = gen_term {
                    let mut shorter: Word = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..i]);
                    shorter.push(g);
                    shorter.extend_from_slice(&w[i + 2..]);
                    work.push((shorter, &c * gc));
                }
                if !scalar.is_zero() {
                    let mut shorter: Word = Vec::with_capacity(w.len() - 2);
                    shorter.extend_from_slice(&w[..i]);
                    shorter.extend_from_slice(&w[i + 2..]);
                    work.push((shorter, &c * scalar));
                }
            }
        }
    }
    done
}
