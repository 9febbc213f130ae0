//! Singular vector search by kernel computation, the explicit product
//! formulas for singular vectors, and the leading-term data of the
//! generalized embedding operators.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::element::{jm, jp, Generator, UeaElement, Word};
use super::verma::{weight_space_basis, HwModule, WeightVector};
use crate::linalg::MatQ;
use crate::rat::{is_integer, rat, rint, to_i64, Rat};
use crate::weights::{Level, OrbitError};

/// Basis of the singular vectors of the module at `(charge, grade)`: the
/// joint kernel of `J_1^-` and `J_0^+`, computed modulo the quotient.
pub fn find_singular(module: &HwModule, charge: i64, grade: i64) -> Vec<WeightVector> {
    let basis = weight_space_basis(charge, grade);
    let dim = basis.len();
    if dim == 0 {
        return Vec::new();
    }
    // rows: images under J_1^- and J_0^+ stacked
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut cols_minus: Option<usize> = None;
    let mut cols_plus: Option<usize> = None;
    let mut images_minus = Vec::with_capacity(dim);
    let mut images_plus = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut v = WeightVector::zero(charge, grade);
        v.coords[i] = Rat::one();
        let v = module.reduce(v);
        let a = module.apply_gen(jm(1), &v);
        let b = module.apply_gen(jp(0), &v);
        cols_minus.get_or_insert(a.coords.len());
        cols_plus.get_or_insert(b.coords.len());
        images_minus.push(a.coords);
        images_plus.push(b.coords);
    }
    let cm = cols_minus.unwrap_or(0);
    let cp = cols_plus.unwrap_or(0);
    for r in 0..cm {
        rows.push(images_minus.iter().map(|im| im[r].clone()).collect());
    }
    for r in 0..cp {
        rows.push(images_plus.iter().map(|im| im[r].clone()).collect());
    }
    // restrict to reduced representatives: pivot coordinates of the killed
    // span must vanish, so kernel vectors inside the span are excluded
    let span = module.killed_span(charge, grade);
    for &p in span.pivots() {
        let mut row = vec![Rat::zero(); dim];
        row[p] = Rat::one();
        rows.push(row);
    }
    if rows.is_empty() {
        rows.push(vec![Rat::zero(); dim]);
    }
    let mat = MatQ::from_rows(rows);
    mat.nullspace()
        .into_iter()
        .map(|coords| module.reduce(WeightVector { charge, grade, coords }))
        .filter(|v| !v.is_zero())
        .map(normalize_leading)
        .collect()
}

/// Scales so the coefficient of the last (PBW-largest) supported monomial
/// is one.
fn normalize_leading(mut v: WeightVector) -> WeightVector {
    if let Some(lead) = v.coords.iter().rev().find(|c| !c.is_zero()).cloned() {
        for c in &mut v.coords {
            if !c.is_zero() {
                *c /= &lead;
            }
        }
    }
    v
}

/// The explicit singular-vector product for the label `(r, s)`:
/// alternating powers of `J_0^-` and `J_{-1}^+` with exponents
/// `r + (s-i)t` (variant 0) or `p-r + (p'-s-1-i)t` (variant 1).
#[derive(Clone, Debug)]
pub enum MffVector {
    /// All exponents are non-negative integers: the normal-ordered element.
    Explicit(UeaElement),
    /// Fractional exponents: the factor list `(generator, exponent)`, kept
    /// symbolic, with the target `(charge, grade)` of the singular vector.
    Formal { factors: Vec<(Generator, Rat)>, target: (i64, i64) },
}

/// Builds the product formula for the singular vector of `V_{j_{r,s}}` at
/// `(-r, rs)` (variant 0) or `(p - r, (p-r)(p'-s))` (variant 1).
pub fn mff_vector(level: &Level, r: i64, s: i64, variant: u8) -> MffVector {
    let t = level.t();
    let (p, pp) = (level.p(), level.pp());
    let (factors, target): (Vec<(Generator, Rat)>, (i64, i64)) = match variant {
        0 => {
            // (J_0^-)^{r+st} (J_{-1}^+)^{r+(s-1)t} ... (J_0^-)^{r-st}
            let mut f = Vec::new();
            for i in 0..=2 * s {
                let e = rint(r) + rint(s - i) * &t;
                let g = if i % 2 == 0 { jm(0) } else { jp(-1) };
                f.push((g, e));
            }
            (f, (-r, r * s))
        }
        1 => {
            // (J_{-1}^+)^{p-r+(p'-s-1)t} ... (J_{-1}^+)^{p-r-(p'-s-1)t}
            let mut f = Vec::new();
            let width = pp - s - 1;
            for i in 0..=2 * width {
                let e = rint(p - r) + rint(width - i) * &t;
                let g = if i % 2 == 0 { jp(-1) } else { jm(0) };
                f.push((g, e));
            }
            (f, (p - r, (p - r) * (pp - s)))
        }
        _ => panic!("variant is 0 or 1"),
    };
    let all_integer = factors.iter().all(|(_, e)| is_integer(e) && *e >= Rat::zero());
    if all_integer {
        let mut out = UeaElement::identity(level.k());
        for (g, e) in factors {
            let e = to_i64(&e).expect("checked integer") as u32;
            out = out.mul(&UeaElement::pow_gen(level.k(), g, e));
        }
        // the expanded product must be an honest singular vector
        let module = HwModule::verma(level.clone(), level.j(r, s));
        let v = module.vector_of(&out);
        assert!(
            !v.is_zero()
                && module.apply_gen(jm(1), &v).is_zero()
                && module.apply_gen(jp(0), &v).is_zero(),
            "expanded product is not singular"
        );
        MffVector::Explicit(out)
    } else {
        MffVector::Formal { factors, target }
    }
}

/// Leading-term data of the embedding operator from `V_{j'}` into `V_j`:
/// the exponents `(a, b)` of `(J_0^-)^a (J_{-1}^+)^b` with
/// `a = (h' - h) - (j' - j)` and `b = h' - h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaLeading {
    pub exp_jminus: Rat,
    pub exp_jplus: Rat,
    /// When the embedding exists with integral exponents: the coefficient of
    /// the leading monomial in the normalized singular vector (nonzero).
    pub leading_coeff: Option<Rat>,
}

pub fn fuchs_astashkevich_leading(
    level: &Level,
    j: &Rat,
    jp_weight: &Rat,
) -> Result<FaLeading, OrbitError> {
    let embeds = crate::weights::embedding_condition(level, j, jp_weight)?;
    let h = level.h_of_j(j);
    let hp = level.h_of_j(jp_weight);
    let a = (&hp - &h) - (jp_weight - j);
    let b = &hp - &h;
    let mut leading = None;
    if embeds && is_integer(&a) && is_integer(&b) && a >= Rat::zero() && b >= Rat::zero() {
        let charge = to_i64(&(jp_weight - j)).expect("integral charge");
        let grade = to_i64(&b).expect("integral grade");
        let module = HwModule::verma(level.clone(), j.clone());
        let kernel = find_singular(&module, charge, grade);
        assert_eq!(kernel.len(), 1, "embedding without a unique singular vector");
        // the monomial (J_{-1}^+)^b (J_0^-)^a in canonical order
        let mut word: Word = Vec::new();
        for _ in 0..to_i64(&b).unwrap() {
            word.push(jp(-1));
        }
        for _ in 0..to_i64(&a).unwrap() {
            word.push(jm(0));
        }
        let basis = weight_space_basis(charge, grade);
        let idx = basis.iter().position(|w| *w == word).expect("monomial in basis");
        let c = kernel[0].coords[idx].clone();
        assert!(!c.is_zero(), "vanishing leading coefficient");
        leading = Some(c);
    }
    Ok(FaLeading { exp_jminus: a, exp_jplus: b, leading_coeff: leading })
}

/// Writes a raising-side generator as `G1 J_1^- + G2 J_0^+`, the key
/// decomposition for evaluating operators on logarithmic vectors. Defined
/// for `J_0^+` and every positive-mode generator.
pub fn decompose_raising(k: &Rat, g: Generator) -> (UeaElement, UeaElement) {
    use super::element::GenKind::*;
    let zero = UeaElement::zero(k.clone());
    let id = UeaElement::identity(k.clone());
    match (g.kind, g.mode) {
        (JMinus, 1) => (id, zero),
        (JPlus, 0) => (zero, id),
        (J3, 1) => {
            // J_1^3 = [1/2 J_0^+] J_1^- + [-1/2 J_1^-] J_0^+
            let g1 = UeaElement::from_word(k.clone(), &[jp(0)], rat(1, 2));
            let g2 = UeaElement::from_word(k.clone(), &[jm(1)], rat(-1, 2));
            (g1, g2)
        }
        (J3, n) if n >= 2 => {
            // 2 J_n^3 = J^+_{n-1} J_1^- - J_1^- J^+_{n-1}
            let (a, b) = decompose_raising(k, jp(n - 1));
            let jm1 = UeaElement::from_word(k.clone(), &[jm(1)], Rat::one());
            let g1 = UeaElement::from_word(k.clone(), &[jp(n - 1)], rat(1, 2))
                .sub(&jm1.mul(&a).scale(&rat(1, 2)));
            let g2 = jm1.mul(&b).scale(&rat(-1, 2));
            (g1, g2)
        }
        (JPlus, n) if n >= 1 => {
            // J_n^+ = J_n^3 J_0^+ - J_0^+ J_n^3
            let (a, b) = decompose_raising(k, j3_gen(n));
            let jp0 = UeaElement::from_word(k.clone(), &[jp(0)], Rat::one());
            let g1 = jp0.mul(&a).scale(&rint(-1));
            let g2 = UeaElement::from_word(k.clone(), &[super::element::j3(n)], Rat::one())
                .sub(&jp0.mul(&b));
            (g1, g2)
        }
        (JMinus, n) if n >= 2 => {
            // J_n^- = J_1^- J^3_{n-1} - J^3_{n-1} J_1^-
            let (a, b) = decompose_raising(k, j3_gen(n - 1));
            let jm1 = UeaElement::from_word(k.clone(), &[jm(1)], Rat::one());
            let g1 = jm1
                .mul(&a)
                .sub(&UeaElement::from_word(k.clone(), &[super::element::j3(n - 1)], Rat::one()));
            let g2 = jm1.mul(&b);
            (g1, g2)
        }
        _ => panic!("not a raising-side generator: {g:?}"),
    }
}

fn j3_gen(n: i64) -> Generator {
    super::element::j3(n)
}
