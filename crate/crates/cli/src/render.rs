//! Aligned-text renderings: Kac tables, leading terms of series, and Loewy
//! diagrams as arrow pictures.

use affchar_core::rat::{to_frac_string, Rat};
use affchar_core::series::{BiSeries, QSeries};
use affchar_core::structure::{DiagramKind, LoewyDiagram, Shade};
use affchar_core::weights::{KacCell, Level};
use num_traits::{One, Zero};
use std::fmt::Write;

fn pretty_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The extended Kac table as an aligned grid, one row per `s`, with
/// irreducibility (`*`) and admissibility (`#`) markers.
pub fn kac_table(level: &Level, cells: &[KacCell]) -> String {
    let mut rs: Vec<i64> = cells.iter().map(|c| c.label.r).collect();
    let mut ss: Vec<i64> = cells.iter().map(|c| c.label.s).collect();
    rs.sort();
    rs.dedup();
    ss.sort();
    ss.dedup();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "k = {}, t = {}  (p, p') = ({}, {})   [* irreducible, # admissible]",
        pretty_rat(&level.k()),
        pretty_rat(&level.t()),
        level.p(),
        level.pp()
    );
    let width = cells
        .iter()
        .map(|c| pretty_rat(&c.weights.j).len() + 2)
        .max()
        .unwrap_or(6)
        .max(6);
    let mut header = String::from("  s\\r |");
    for r in &rs {
        let _ = write!(header, "{r:>width$}");
    }
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "{}", "-".repeat(header.len()));
    for s in ss.iter().rev() {
        let mut line = format!("{s:>5} |");
        for r in &rs {
            match cells.iter().find(|c| c.label.r == *r && c.label.s == *s) {
                Some(c) => {
                    let mut cell = pretty_rat(&c.weights.j);
                    if c.irreducible {
                        cell.push('*');
                    }
                    if c.admissible {
                        cell.push('#');
                    }
                    let _ = write!(line, "{cell:>width$}");
                }
                None => {
                    let _ = write!(line, "{:>width$}", ".");
                }
            }
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

/// The first few nonzero terms of a bivariate series.
pub fn leading_terms(s: &BiSeries, count: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "exact through q^({}) on z-window [{}, {}]",
        to_frac_string(&s.known_end()),
        s.z_min(),
        s.z_max()
    );
    let mut shown = 0usize;
    for (dq, dz, c) in s.terms() {
        if shown == count {
            let _ = writeln!(out, "  ...");
            break;
        }
        let qe = s.q_shift() + Rat::from_integer(dq.into());
        let ze = s.z_shift() + Rat::from_integer(dz.into());
        let _ = writeln!(out, "  {:>10}  q^({}) z^({})", pretty_rat(c), pretty_rat(&qe), pretty_rat(&ze));
        shown += 1;
    }
    if shown == 0 {
        let _ = writeln!(out, "  0");
    }
    out
}

/// The first few nonzero terms of a q-series.
pub fn leading_terms_q(s: &QSeries, count: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "exact through q^({})", to_frac_string(&s.known_end()));
    let mut shown = 0usize;
    for (d, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if shown == count {
            let _ = writeln!(out, "  ...");
            break;
        }
        let qe = s.shift() + Rat::from_integer((d as i64).into());
        let _ = writeln!(out, "  {:>10}  q^({})", pretty_rat(c), pretty_rat(&qe));
        shown += 1;
    }
    if shown == 0 {
        let _ = writeln!(out, "  0");
    }
    out
}

fn node_mark(shade: Shade, deleted: bool) -> &'static str {
    if deleted {
        return "x";
    }
    match shade {
        Shade::White => "o",
        Shade::Grey => "*",
        Shade::Black => "@",
    }
}

/// Arrow rendering of a Loewy diagram: one line per node with its outgoing
/// edges, weights attached as [j, h].
pub fn loewy(d: &LoewyDiagram) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:?}{} ({} nodes)  [o head / * middle / @ socle]",
        d.kind,
        if d.truncated { ", truncated" } else { "" },
        d.nodes.len()
    );
    for (i, n) in d.nodes.iter().enumerate() {
        let targets: Vec<String> = d
            .edges
            .iter()
            .filter(|(a, _)| *a == i)
            .map(|(_, b)| format!("#{b}"))
            .collect();
        let arrows =
            if targets.is_empty() { String::new() } else { format!("  ->  {}", targets.join(", ")) };
        let _ = writeln!(
            out,
            "  #{i} {} ({},{})  [{}, {}]  charge {:+}, grade {}{arrows}",
            node_mark(n.shade, false),
            n.label.r,
            n.label.s,
            pretty_rat(&n.j),
            pretty_rat(&n.h),
            n.charge,
            n.grade
        );
    }
    if matches!(d.kind, DiagramKind::WakimotoBraid | DiagramKind::WakimotoStrings) {
        let _ = writeln!(out, "  (display only; no structural claims)");
    }
    out
}

/// Rendering of a functor image with deleted nodes marked.
pub fn phi_image(
    original: &[(affchar_core::weights::KacLabel, Shade)],
    image: &affchar_core::phi::VirasoroModuleDescriptor,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "image: {:?}  ({} node(s) deleted)", image.kind, image.deleted);
    for (label, shade) in original {
        let survives = image.nodes.iter().any(|(l, _)| l == label);
        let _ = writeln!(
            out,
            "  {} ({},{})",
            node_mark(*shade, !survives),
            label.r,
            label.s
        );
    }
    out
}
