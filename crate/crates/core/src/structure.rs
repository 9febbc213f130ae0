//! Loewy diagrams: submodule diagrams of Verma modules, location of a Verma
//! module inside its ambient diagram, the finite diagrams of Kac modules,
//! and descriptors of the conjectured staggered modules.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rat::{to_i64, Rat};
use crate::weights::{label_parts, KacLabel, LabelError, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shade {
    White,
    Grey,
    Black,
}

impl Shade {
    fn rank(self) -> u8 {
        match self {
            Shade::White => 0,
            Shade::Grey => 1,
            Shade::Black => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    /// Two-strand Verma diagram (`r` not a multiple of `p`).
    Braid,
    /// Single-strand Verma diagram (`r` a nonzero multiple of `p`).
    Chain,
    /// Finite braid of a Kac module.
    KacBraid,
    /// Finite chains of a Kac module (two types).
    KacChainI,
    KacChainII,
    /// Wakimoto display diagrams (no algebraic claims).
    WakimotoBraid,
    WakimotoStrings,
}

/// A subsingular vector in a Loewy diagram. Identity is `(label, charge,
/// grade)`, not the weight alone; chain diagrams repeat weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: KacLabel,
    pub j: Rat,
    pub h: Rat,
    /// `J_0^3`-offset from the diagram root.
    pub charge: i64,
    /// `L_0`-offset from the diagram root.
    pub grade: i64,
    pub shade: Shade,
}

#[derive(Clone, Debug)]
pub struct LoewyDiagram {
    pub kind: DiagramKind,
    pub nodes: Vec<Node>,
    /// Directed edges as node indices; the source generates the target.
    pub edges: Vec<(usize, usize)>,
    pub truncated: bool,
}

impl LoewyDiagram {
    pub fn node_weights(&self) -> Vec<(Rat, Rat)> {
        self.nodes.iter().map(|n| (n.j.clone(), n.h.clone())).collect()
    }
}

fn make_node(level: &Level, root_j: &Rat, root_h: &Rat, label: KacLabel, shade: Shade) -> Node {
    let j = level.j(label.r, label.s);
    let h = level.h(label.r, label.s);
    let charge = to_i64(&(&j - root_j)).expect("integral charge offset");
    let grade = to_i64(&(&h - root_h)).expect("integral grade offset");
    Node { label, j, h, charge, grade, shade }
}

/// Strand position inside an ambient Verma Loewy diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientLocation {
    pub ambient: KacLabel,
    pub strand: Strand,
    pub index: i64,
}

/// Locates `V_{j_{r,s}}` inside the Loewy diagram of its ambient Verma
/// module: an alpha/beta position selected by the parity of `l - l'`, or a
/// gamma position when `r` is a multiple of `p`.
pub fn locate_in_ambient(level: &Level, label: KacLabel) -> Result<AmbientLocation, LabelError> {
    if !label.is_valid() {
        return Err(LabelError::Invalid);
    }
    let p = level.p();
    let parts = label_parts(level, label);
    let (r0, s0, l, lp) = (parts.r0, parts.s0, parts.l, parts.lp);
    let d = l - lp;
    if r0 != 0 {
        if d.rem_euclid(2) == 0 {
            Ok(AmbientLocation {
                ambient: KacLabel::new(r0, s0),
                strand: Strand::Alpha,
                index: d / 2,
            })
        } else {
            Ok(AmbientLocation {
                ambient: KacLabel::new(p - r0, s0),
                strand: Strand::Beta,
                index: (d + 1) / 2,
            })
        }
    } else {
        // index |l - l' - 1/2| + 1/2
        let index = if d >= 1 { d } else { 1 - d };
        let ambient = if d.rem_euclid(2) == 0 {
            // ambient head j_{0,s0} = j_{-p, s0 - p'}
            KacLabel::new(-p, s0 - level.pp())
        } else {
            KacLabel::new(p, s0)
        };
        Ok(AmbientLocation { ambient, strand: Strand::Gamma, index })
    }
}

/// Labels on the two braid strands of the ambient diagram with head
/// `(a0, s0)`: `alpha_i = (a0 + 2ip, s0)`, `beta_i = (-a0 + 2ip, s0)`.
fn braid_label(level: &Level, a0: i64, s0: i64, strand: Strand, i: i64) -> KacLabel {
    let p = level.p();
    match strand {
        Strand::Alpha => KacLabel::new(a0 + 2 * i * p, s0),
        Strand::Beta => KacLabel::new(-a0 + 2 * i * p, s0),
        Strand::Gamma => unreachable!("gamma has no braid label"),
    }
}

/// The two strand positions in column `col >= 0` of the braid; the head
/// `alpha_0` sits alone in the virtual column `-1`. Upper strand:
/// `beta_0, alpha_{-1}, beta_{-1}, alpha_{-2}, ...`; lower strand:
/// `beta_1, alpha_1, beta_2, alpha_2, ...`.
fn braid_column(col: i64) -> [(Strand, i64); 2] {
    let k = col / 2;
    if col % 2 == 0 {
        [(Strand::Beta, -k), (Strand::Beta, k + 1)]
    } else {
        [(Strand::Alpha, -k - 1), (Strand::Alpha, k + 1)]
    }
}

fn braid_column_of(strand: Strand, index: i64) -> i64 {
    match strand {
        Strand::Alpha if index > 0 => 2 * index - 1,
        Strand::Alpha => 2 * (-index) - 1,
        Strand::Beta if index >= 1 => 2 * (index - 1),
        Strand::Beta => 2 * (-index),
        Strand::Gamma => unreachable!(),
    }
}

/// Chain weights `gamma_i(dp, s0) = j_{dp,s0} + (-1)^(i+d) floor(i/2) p`,
/// as labels on the same `s`-row.
fn gamma_label(level: &Level, delta: i64, s0: i64, i: i64) -> KacLabel {
    let p = level.p();
    let sign = if (i + delta) % 2 == 0 { 1 } else { -1 };
    let (base_r, base_s) =
        if delta == 0 { (-p, s0 - level.pp()) } else { (p, s0) };
    KacLabel::new(base_r + sign * 2 * (i / 2) * p, base_s)
}

/// The Loewy diagram of the Verma module `V_{j_{r,s}}`, truncated to `depth`
/// generations of submodules (the full diagram is infinite). Built by
/// locating the module inside its ambient diagram and taking the reachable
/// sub-diagram.
pub fn verma_loewy(level: &Level, label: KacLabel, depth: i64) -> Result<LoewyDiagram, LabelError> {
    assert!(depth >= 1);
    let loc = locate_in_ambient(level, label)?;
    let root_j = level.j(label.r, label.s);
    let root_h = level.h(label.r, label.s);
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    match loc.strand {
        Strand::Gamma => {
            let parts = label_parts(level, loc.ambient);
            let delta = if loc.ambient.r < 0 { 0 } else { 1 };
            for (offset, i) in ((loc.index)..=(loc.index + depth)).enumerate() {
                let lab = gamma_label(level, delta, parts.s0, i);
                nodes.push(make_node(level, &root_j, &root_h, lab, Shade::Grey));
                if offset > 0 {
                    edges.push((offset - 1, offset));
                }
            }
            Ok(LoewyDiagram { kind: DiagramKind::Chain, nodes, edges, truncated: true })
        }
        Strand::Alpha | Strand::Beta => {
            let (a0, s0) = (loc.ambient.r, loc.ambient.s);
            let root_col = if loc.strand == Strand::Alpha && loc.index == 0 {
                -1
            } else {
                braid_column_of(loc.strand, loc.index)
            };
            nodes.push(make_node(level, &root_j, &root_h, label, Shade::Grey));
            let mut prev: Vec<usize> = vec![0];
            for col in (root_col + 1)..=(root_col + depth) {
                let mut cur = Vec::new();
                for (strand, i) in braid_column(col) {
                    let lab = braid_label(level, a0, s0, strand, i);
                    cur.push(nodes.len());
                    nodes.push(make_node(level, &root_j, &root_h, lab, Shade::Grey));
                }
                for &a in &prev {
                    for &b in &cur {
                        edges.push((a, b));
                    }
                }
                prev = cur;
            }
            Ok(LoewyDiagram { kind: DiagramKind::Braid, nodes, edges, truncated: true })
        }
    }
}

/// `|x + 1/2| - 1/2` over the integers.
fn half_floor(x: i64) -> i64 {
    if x >= 0 {
        x
    } else {
        -x - 1
    }
}

/// The finite Loewy diagram of the Kac module `A_{r,s}`.
pub fn kac_loewy(level: &Level, label: KacLabel) -> Result<LoewyDiagram, LabelError> {
    if !label.is_valid() {
        return Err(LabelError::Invalid);
    }
    let p = level.p();
    let parts = label_parts(level, label);
    let (s0, l, lp) = (parts.s0, parts.l, parts.lp);
    let _ = s0;
    let (r, s) = (label.r, label.s);
    let root_j = level.j(r, s);
    let root_h = level.h(r, s);
    if parts.r0 != 0 {
        let m = half_floor(l).min(half_floor(lp));
        let u = |i: i64| -> KacLabel {
            if l >= 0 {
                if i % 2 == 0 {
                    KacLabel::new(-r + i * p, s)
                } else {
                    KacLabel::new(r - (2 * l + 1 - i) * p, s)
                }
            } else if i % 2 == 0 {
                KacLabel::new(-r - i * p, s)
            } else {
                KacLabel::new(r - (2 * l + i + 1) * p, s)
            }
        };
        let v = |i: i64| -> KacLabel {
            if l >= 0 {
                if i % 2 == 0 {
                    KacLabel::new(-r + (2 * (l + lp + 1) - i) * p, s)
                } else {
                    KacLabel::new(r + (2 * lp + 1 - i) * p, s)
                }
            } else if i % 2 == 0 {
                KacLabel::new(-r + (2 * (l + lp + 1) + i) * p, s)
            } else {
                KacLabel::new(r + (2 * lp + i + 1) * p, s)
            }
        };
        let mut nodes = Vec::new();
        nodes.push(make_node(level, &root_j, &root_h, label, Shade::Grey));
        // top strand u_{2m} .. u_1, bottom strand v_{2m} .. v_0
        let mut top = Vec::new();
        for i in (1..=2 * m).rev() {
            let shade = if i % 2 == 0 { Shade::White } else { Shade::Grey };
            top.push(nodes.len());
            nodes.push(make_node(level, &root_j, &root_h, u(i), shade));
        }
        let mut bottom = Vec::new();
        for i in (0..=2 * m).rev() {
            let shade = if i % 2 == 0 { Shade::Black } else { Shade::Grey };
            bottom.push(nodes.len());
            nodes.push(make_node(level, &root_j, &root_h, v(i), shade));
        }
        let mut adj: Vec<(usize, usize)> = Vec::new();
        if let Some(&u_first) = top.first() {
            adj.push((0, u_first));
        }
        adj.push((0, bottom[0]));
        for w in top.windows(2) {
            adj.push((w[0], w[1]));
        }
        for w in bottom.windows(2) {
            adj.push((w[0], w[1]));
        }
        // diagonals: u_k with v_{k-1} and with v_{k+1}
        for (jt, &ut) in top.iter().enumerate() {
            if jt + 1 < bottom.len() {
                adj.push((ut, bottom[jt + 1]));
            }
            if jt >= 1 {
                adj.push((ut, bottom[jt - 1]));
            }
        }
        let edges = orient_by_shade(&nodes, adj);
        Ok(LoewyDiagram { kind: DiagramKind::KacBraid, nodes, edges, truncated: false })
    } else {
        let type_one = (lp >= l && l > 0) || (lp < l && l < 0);
        let m = (l.abs() - 1).min(half_floor(lp));
        let w = |i: i64| -> KacLabel {
            if lp >= l && l > 0 {
                if i % 2 == 0 {
                    KacLabel::new(r + 2 * (lp - i / 2) * p, s)
                } else {
                    KacLabel::new(-r + (i + 1) * p, s)
                }
            } else if l > lp && lp >= 0 {
                if i % 2 == 0 {
                    KacLabel::new(-r + i * p, s)
                } else {
                    KacLabel::new(r + 2 * (lp + 1 - (i + 1) / 2) * p, s)
                }
            } else if lp < l && l < 0 {
                if i % 2 == 0 {
                    KacLabel::new(r + 2 * (lp + 1 + i / 2) * p, s)
                } else {
                    KacLabel::new(-r - (i + 1) * p, s)
                }
            } else {
                // l <= l' < 0
                if i % 2 == 0 {
                    KacLabel::new(-r - i * p, s)
                } else {
                    KacLabel::new(r + 2 * (lp + (i + 1) / 2) * p, s)
                }
            }
        };
        let mut nodes = Vec::new();
        let head_shade = if type_one { Shade::Grey } else { Shade::Black };
        nodes.push(make_node(level, &root_j, &root_h, label, head_shade));
        let last = if type_one { 0 } else { 1 };
        for i in (last..=2 * m).rev() {
            let shade = match (type_one, i % 2 == 0) {
                (true, true) => Shade::Black,
                (true, false) => Shade::Grey,
                (false, true) => Shade::Grey,
                (false, false) => Shade::Black,
            };
            nodes.push(make_node(level, &root_j, &root_h, w(i), shade));
        }
        let adj: Vec<(usize, usize)> = (1..nodes.len()).map(|i| (i - 1, i)).collect();
        let edges = orient_by_shade(&nodes, adj);
        let kind = if type_one { DiagramKind::KacChainI } else { DiagramKind::KacChainII };
        Ok(LoewyDiagram { kind, nodes, edges, truncated: false })
    }
}

/// Orients adjacency pairs towards the socle: white generates grey, grey
/// generates black.
fn orient_by_shade(nodes: &[Node], adj: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    adj.into_iter()
        .map(|(a, b)| if nodes[a].shade.rank() <= nodes[b].shade.rank() { (a, b) } else { (b, a) })
        .collect()
}

/// Display-only Wakimoto diagrams: the node weights of the corresponding
/// Verma diagram with the subsingular shading of the Wakimoto pictures. For
/// `r` a multiple of `p` both string types are returned, since the type
/// selection is left open.
pub fn wakimoto_display(
    level: &Level,
    label: KacLabel,
    depth: i64,
) -> Result<Vec<LoewyDiagram>, LabelError> {
    let base = verma_loewy(level, label, depth)?;
    match base.kind {
        DiagramKind::Braid => {
            let mut d = base;
            d.kind = DiagramKind::WakimotoBraid;
            // generations: head grey; upper strand white/grey, lower
            // black/grey, alternating along each strand
            for (idx, node) in d.nodes.iter_mut().enumerate().skip(1) {
                let gen = (idx - 1) / 2 + 1;
                let upper = (idx - 1) % 2 == 0;
                node.shade = match (upper, gen % 2 == 1) {
                    (true, true) => Shade::White,
                    (true, false) => Shade::Grey,
                    (false, true) => Shade::Black,
                    (false, false) => Shade::Grey,
                };
            }
            let adj = core::mem::take(&mut d.edges);
            d.edges = orient_by_shade(&d.nodes, adj);
            Ok(vec![d])
        }
        _ => {
            let mut out = Vec::new();
            for head_black in [true, false] {
                let mut d = base.clone();
                d.kind = DiagramKind::WakimotoStrings;
                for (idx, node) in d.nodes.iter_mut().enumerate() {
                    node.shade = if (idx % 2 == 0) == head_black { Shade::Black } else { Shade::Grey };
                }
                let adj = core::mem::take(&mut d.edges);
                d.edges = orient_by_shade(&d.nodes, adj);
                out.push(d);
            }
            Ok(out)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaggeredShape {
    Quadrangular,
    Triangular,
}

/// One conjectured staggered module: the non-split short exact sequence
/// labels and the irreducible character content.
#[derive(Clone, Debug)]
pub struct StaggeredDescriptor {
    pub name: String,
    pub conjecture: u8,
    pub sign: i8,
    /// Label of the submodule `M^L` (a quotient module `Q`).
    pub left: KacLabel,
    /// Label of the quotient `M^R`.
    pub right: KacLabel,
    pub shape: StaggeredShape,
    /// Irreducible labels with multiplicities, summing to the character:
    /// `(1, 2, 1)` for quadrangular, `(2, 1)` for triangular.
    pub character_terms: Vec<(KacLabel, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaggeredError {
    ParamsOutOfRange,
}

/// Builds the `+`/`-` pair of staggered descriptors for one conjecture
/// instance. Conjecture 1 takes `(a, s0, ell)`; conjecture 2 takes
/// `(r0, b, ell)`; conjecture 3 takes `(p, b, ell)`.
pub fn staggered_pair(
    level: &Level,
    conjecture: u8,
    params: (i64, i64, i64),
) -> Result<(StaggeredDescriptor, StaggeredDescriptor), StaggeredError> {
    let (p, pp) = (level.p(), level.pp());
    match conjecture {
        1 => {
            let (a, s0, ell) = params;
            if !(1..p).contains(&a) || !(0..pp).contains(&s0) || ell < 1 {
                return Err(StaggeredError::ParamsOutOfRange);
            }
            let plus = StaggeredDescriptor {
                name: format!("S^{{{a},0;+}}_{{{},{s0}}}", ell * p),
                conjecture: 1,
                sign: 1,
                left: KacLabel::new(ell * p - a, s0),
                right: KacLabel::new(ell * p + a, s0),
                shape: StaggeredShape::Quadrangular,
                character_terms: vec![
                    (KacLabel::new(ell * p - a, s0), 1),
                    (KacLabel::new(ell * p + a, s0), 2),
                    (KacLabel::new((ell + 2) * p - a, s0), 1),
                ],
            };
            let minus = StaggeredDescriptor {
                name: format!("S^{{{a},0;-}}_{{{},{s0}}}", ell * p),
                conjecture: 1,
                sign: -1,
                left: KacLabel::new(-ell * p + a, s0 - pp),
                right: KacLabel::new(-ell * p - a, s0 - pp),
                shape: StaggeredShape::Quadrangular,
                character_terms: vec![
                    (KacLabel::new(-ell * p + a, s0 - pp), 1),
                    (KacLabel::new(-ell * p - a, s0 - pp), 2),
                    (KacLabel::new(-(ell + 2) * p + a, s0 - pp), 1),
                ],
            };
            Ok((plus, minus))
        }
        2 | 3 => {
            let (r0, b, ell) = params;
            let r_ok = if conjecture == 2 { (1..p).contains(&r0) } else { r0 == p };
            if !r_ok || !(1..pp).contains(&b) || ell < 1 {
                return Err(StaggeredError::ParamsOutOfRange);
            }
            let shape = if conjecture == 3 && ell == 1 {
                StaggeredShape::Triangular
            } else {
                StaggeredShape::Quadrangular
            };
            let make = |sign: i64| -> StaggeredDescriptor {
                let mut terms = Vec::new();
                if !(conjecture == 3 && ell == 1) {
                    terms.push((KacLabel::new(sign * r0, sign * (ell * pp - b)), 1));
                }
                terms.push((KacLabel::new(-sign * r0, -sign * (ell * pp + b)), 2));
                terms.push((KacLabel::new(sign * r0, sign * ((ell + 2) * pp - b)), 1));
                StaggeredDescriptor {
                    name: format!(
                        "S^{{0,{b};{}}}_{{{r0},{}}}",
                        if sign > 0 { "+" } else { "-" },
                        ell * pp
                    ),
                    conjecture,
                    sign: sign as i8,
                    left: KacLabel::new(sign * r0, sign * (ell * pp - b)),
                    right: KacLabel::new(-sign * r0, -sign * (ell * pp + b)),
                    shape,
                    character_terms: terms,
                }
            };
            Ok((make(1), make(-1)))
        }
        _ => Err(StaggeredError::ParamsOutOfRange),
    }
}

/// The irreducible subquotient nodes of a staggered module, head-to-socle:
/// quadrangular gives `(I_quo, I, I, I_sub)`, triangular `(I, I, I_sub)`.
pub fn staggered_nodes(level: &Level, desc: &StaggeredDescriptor) -> Vec<(KacLabel, Shade)> {
    let left_factors = crate::characters::kac_decompose(level, desc.left).expect("valid label");
    let right_factors = crate::characters::kac_decompose(level, desc.right).expect("valid label");
    let mut out = Vec::new();
    match desc.shape {
        StaggeredShape::Quadrangular => {
            out.push((left_factors[0], Shade::Grey));
            out.push((*left_factors.last().expect("two factors"), Shade::Black));
            out.push((right_factors[0], Shade::White));
            out.push((*right_factors.last().expect("two factors"), Shade::Grey));
        }
        StaggeredShape::Triangular => {
            debug_assert_eq!(left_factors.len(), 1);
            out.push((left_factors[0], Shade::Black));
            out.push((right_factors[0], Shade::White));
            out.push((*right_factors.last().expect("two factors"), Shade::Grey));
        }
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn lv23() -> Level {
        Level::new(2, 3)
    }

    fn lv32() -> Level {
        Level::new(3, 2)
    }

    #[test]
    fn verma_diagram_of_vacuum_at_half_level() {
        // V_0 at (3,2): nodes [0,0],[-1,0],[2,4],[-3,4],[3,8],[-4,8],...
        let lv = lv32();
        let d = verma_loewy(&lv, KacLabel::new(1, 0), 3).unwrap();
        let w = d.node_weights();
        for e in [
            (rint(0), rint(0)),
            (rint(-1), rint(0)),
            (rint(2), rint(4)),
            (rint(-3), rint(4)),
            (rint(3), rint(8)),
            (rint(-4), rint(8)),
        ] {
            assert!(w.contains(&e), "missing node {e:?}");
        }
        assert!(d.truncated);
        assert_eq!(d.nodes.len(), 1 + 2 * 3);
    }

    #[test]
    fn verma_diagram_of_minus_two_thirds() {
        let lv = lv23();
        let d = verma_loewy(&lv, KacLabel::new(1, 2), 2).unwrap();
        let w = d.node_weights();
        for e in [
            (rat(-2, 3), rat(-1, 3)),
            (rat(-5, 3), rat(5, 3)),
            (rat(1, 3), rat(2, 3)),
            (rat(4, 3), rat(14, 3)),
            (rat(-8, 3), rat(20, 3)),
        ] {
            assert!(w.contains(&e), "missing node {e:?}");
        }
        // singular vector positions: beta_0 at (-r, rs), beta_1 at
        // (p - r, (p - r)(p' - s))
        let b0 = d.nodes.iter().find(|n| n.j == rat(-5, 3)).unwrap();
        assert_eq!((b0.charge, b0.grade), (-1, 2));
        let b1 = d.nodes.iter().find(|n| n.j == rat(1, 3)).unwrap();
        assert_eq!((b1.charge, b1.grade), (1, 1));
    }

    #[test]
    fn locate_examples() {
        let lv = lv23();
        let loc = locate_in_ambient(&lv, KacLabel::new(1, 1)).unwrap();
        assert_eq!(
            loc,
            AmbientLocation { ambient: KacLabel::new(1, 1), strand: Strand::Alpha, index: 0 }
        );
        // (3,1): l=1, l'=0 odd -> beta_1 of (p-1, 1)
        let loc = locate_in_ambient(&lv, KacLabel::new(3, 1)).unwrap();
        assert_eq!(
            loc,
            AmbientLocation { ambient: KacLabel::new(1, 1), strand: Strand::Beta, index: 1 }
        );
        let loc = locate_in_ambient(&lv, KacLabel::new(2, 1)).unwrap();
        assert_eq!(loc.strand, Strand::Gamma);
    }

    #[test]
    fn located_submodule_weights_lie_in_ambient_diagram() {
        let lv = lv23();
        let inner = verma_loewy(&lv, KacLabel::new(3, 1), 2).unwrap();
        let ambient = verma_loewy(&lv, KacLabel::new(1, 1), 4).unwrap();
        for n in &inner.nodes {
            assert!(
                ambient.nodes.iter().any(|m| m.j == n.j && m.h == n.h),
                "node ({}, {}) not in ambient",
                n.j,
                n.h
            );
        }
    }

    #[test]
    fn every_verma_label_has_unique_ambient() {
        // each label appears in exactly one of the (p+1)p' ambient diagrams
        let lv = lv23();
        for r in -8..=8i64 {
            for s in -8..=8i64 {
                let label = KacLabel::new(r, s);
                if !label.is_valid() {
                    continue;
                }
                let loc = locate_in_ambient(&lv, label).unwrap();
                let parts = label_parts(&lv, loc.ambient);
                // ambient heads are exactly (rho, s0), 0 <= rho <= p
                assert!((0..lv.pp()).contains(&parts.s0) || loc.ambient.s < 0);
            }
        }
    }

    #[test]
    fn kac_diagram_matches_decomposition_factors() {
        for lv in [lv23(), lv32()] {
            for r in (-3 * lv.p())..=(3 * lv.p()) {
                for s in (-3 * lv.pp())..=(3 * lv.pp()) {
                    let label = KacLabel::new(r, s);
                    if !label.is_valid() {
                        continue;
                    }
                    let diag = kac_loewy(&lv, label).unwrap();
                    let dec = crate::characters::kac_decompose(&lv, label).unwrap();
                    let mut a: Vec<Rat> = diag.nodes.iter().map(|n| n.j.clone()).collect();
                    let mut b: Vec<Rat> = dec.iter().map(|l| lv.j(l.r, l.s)).collect();
                    a.sort();
                    b.sort();
                    assert_eq!(
                        a,
                        b,
                        "factor mismatch at (p,p')=({},{}) ({r},{s})",
                        lv.p(),
                        lv.pp()
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_labels_have_at_most_two_nodes() {
        let lv = lv23();
        for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 0), (-1, -1), (2, 4), (1, 5)] {
            let label = KacLabel::new(r, s);
            let c = crate::weights::classify(&lv, label).unwrap();
            if c.in_s_quo && !c.in_s_irr {
                let d = kac_loewy(&lv, label).unwrap();
                assert_eq!(d.nodes.len(), 2, "({r},{s})");
                assert_eq!(d.edges.len(), 1);
                let (a, b) = d.edges[0];
                assert!(d.nodes[a].shade.rank() < d.nodes[b].shade.rank());
            }
        }
    }

    #[test]
    fn irreducible_labels_have_single_nodes() {
        let lv = lv23();
        assert_eq!(kac_loewy(&lv, KacLabel::new(2, 0)).unwrap().nodes.len(), 1);
        assert_eq!(kac_loewy(&lv, KacLabel::new(4, 1)).unwrap().nodes.len(), 1);
        assert_eq!(kac_loewy(&lv, KacLabel::new(-2, -1)).unwrap().nodes.len(), 1);
    }

    #[test]
    fn kac_chain_type_selection() {
        let lv = lv23();
        // l' >= l > 0 -> type I
        assert_eq!(kac_loewy(&lv, KacLabel::new(2, 4)).unwrap().kind, DiagramKind::KacChainI);
        // l > l' >= 0 -> type II
        assert_eq!(kac_loewy(&lv, KacLabel::new(4, 1)).unwrap().kind, DiagramKind::KacChainII);
        assert_eq!(kac_loewy(&lv, KacLabel::new(-4, -4)).unwrap().kind, DiagramKind::KacChainII);
    }

    #[test]
    fn staggered_descriptor_examples() {
        let lv = lv23();
        let (_, minus) = staggered_pair(&lv, 1, (1, 2, 1)).unwrap();
        assert_eq!(minus.left, KacLabel::new(-1, -1));
        assert_eq!(minus.right, KacLabel::new(-3, -1));
        assert_eq!(minus.shape, StaggeredShape::Quadrangular);
        let (plus, _) = staggered_pair(&lv, 2, (1, 1, 1)).unwrap();
        assert_eq!(plus.left, KacLabel::new(1, 2));
        assert_eq!(plus.right, KacLabel::new(-1, -4));
        let (p1, _) = staggered_pair(&lv, 3, (lv.p(), 1, 1)).unwrap();
        assert_eq!(p1.shape, StaggeredShape::Triangular);
        assert_eq!(p1.character_terms.len(), 2);
        let (p2, _) = staggered_pair(&lv, 3, (lv.p(), 1, 2)).unwrap();
        assert_eq!(p2.shape, StaggeredShape::Quadrangular);
        assert!(staggered_pair(&lv, 1, (2, 0, 1)).is_err());
    }

    #[test]
    fn staggered_nodes_match_example_one() {
        let lv = lv23();
        let (_, minus) = staggered_pair(&lv, 1, (1, 2, 1)).unwrap();
        let nodes = staggered_nodes(&lv, &minus);
        let js: Vec<Rat> = nodes.iter().map(|(l, _)| lv.j(l.r, l.s)).collect();
        assert_eq!(js, vec![rat(-2, 3), rat(-5, 3), rat(-5, 3), rat(-8, 3)]);
    }

    #[test]
    fn wakimoto_display_variants() {
        let lv = lv23();
        assert_eq!(wakimoto_display(&lv, KacLabel::new(1, 1), 3).unwrap().len(), 1);
        assert_eq!(wakimoto_display(&lv, KacLabel::new(2, 1), 3).unwrap().len(), 2);
    }
}
