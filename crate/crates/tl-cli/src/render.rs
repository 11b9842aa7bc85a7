//! Deterministic ASCII and TikZ rendering of diagrams and morphisms.
//!
//! ASCII: fixed-width grid, sources on the bottom and targets on top.
//! Point `i` sits in column `2i - 2`. Cups hang from the top line as
//! `\_/` arcs (one row per nesting depth), caps rise from the bottom as
//! `_` over `/ \`, and through strands are `|` columns with at most one
//! horizontal `_` jog.
//!
//! TikZ: one scope per diagram with bottom points at y = 0 and top at
//! y = 1; morphism terms are joined by their signed coefficients.

use tlzero::diagram::Diagram;
use tlzero::json::{diagram_to_json, morphism_to_json};
use tlzero::morphism::Morphism;
use tlzero::Scalar;

pub fn diagram_ascii(d: &Diagram) -> String {
    let m = d.dom();
    let n = d.cod();
    let width = 2 * m.max(n).max(1) - 1;
    let col = |i: usize| 2 * (i - 1);

    let cups = d.cups();
    let caps = d.caps();
    let throughs = d.throughs();

    let depth_of = |pairs: &[(usize, usize)], (a, b): (usize, usize)| {
        pairs
            .iter()
            .filter(|&&(c, e)| c < a && b < e)
            .count()
    };
    let cup_rows = cups
        .iter()
        .map(|&p| depth_of(&cups, p))
        .max()
        .map_or(0, |d| d + 1);
    let cap_rows = caps
        .iter()
        .map(|&p| depth_of(&caps, p))
        .max()
        .map_or(0, |d| d + 1);
    let jogs: Vec<&(usize, usize)> = throughs.iter().filter(|&&(s, t)| s != t).collect();
    let jog_rows = jogs.len();
    let height = (cup_rows + jog_rows + 2 * cap_rows).max(1);
    let mut grid = vec![vec![' '; width]; height];

    // cups: row = nesting depth; verticals above
    for &(a, b) in &cups {
        let row = depth_of(&cups, (a, b));
        grid[row][col(a)] = '\\';
        grid[row][col(b)] = '/';
        for c in col(a) + 1..col(b) {
            grid[row][c] = '_';
        }
        for r in 0..row {
            grid[r][col(a)] = '|';
            grid[r][col(b)] = '|';
        }
    }
    // caps: two rows each, counted from the bottom; verticals below
    for &(a, b) in &caps {
        let depth = depth_of(&caps, (a, b));
        let arc_top = height - 2 * (depth + 1);
        for c in col(a) + 1..col(b) {
            grid[arc_top][c] = '_';
        }
        grid[arc_top + 1][col(a)] = '/';
        grid[arc_top + 1][col(b)] = '\\';
        for r in arc_top + 2..height {
            grid[r][col(a)] = '|';
            grid[r][col(b)] = '|';
        }
    }
    // through strands: vertical at the target column down to the jog row,
    // a `_` run, then vertical at the source column
    for (jog_index, &(s, t)) in throughs.iter().enumerate().map(|(i, p)| {
        let jog_pos = jogs.iter().position(|q| **q == *p).map(|k| k);
        ((jog_pos, i), p)
    }) {
        let (jog_pos, _) = jog_index;
        if s == t {
            for r in 0..height {
                grid[r][col(s)] = '|';
            }
        } else {
            let jr = cup_rows + jog_pos.unwrap();
            for r in 0..jr {
                grid[r][col(t)] = '|';
            }
            let (lo, hi) = (col(s).min(col(t)), col(s).max(col(t)));
            for c in lo..=hi {
                if grid[jr][c] == ' ' {
                    grid[jr][c] = '_';
                }
            }
            grid[jr][col(t)] = '|';
            for r in jr + 1..height {
                grid[r][col(s)] = '|';
            }
        }
    }
    grid.into_iter()
        .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn coeff_prefix(c: &Scalar) -> String {
    if c.is_one() {
        "(+1) *".to_string()
    } else if c.neg().is_one() {
        "(-1) *".to_string()
    } else {
        format!("({c}) *")
    }
}

/// Terms in display order: through-count descending, then diagram order,
/// so projectors lead with their identity term.
fn display_terms(f: &Morphism) -> Vec<(&Diagram, &Scalar)> {
    let mut terms: Vec<(&Diagram, &Scalar)> = f.terms().collect();
    terms.sort_by_key(|(d, _)| (std::cmp::Reverse(d.th()), (*d).clone()));
    terms
}

pub fn morphism_ascii(f: &Morphism) -> String {
    if f.is_zero() {
        return format!("0  [{} -> {}, {}]", f.dom(), f.cod(), f.context());
    }
    let mut out = format!(
        "morphism {} -> {}  [{}], {} term(s)\n",
        f.dom(),
        f.cod(),
        f.context(),
        f.num_terms()
    );
    for (d, c) in display_terms(f) {
        out.push_str(&coeff_prefix(c));
        out.push('\n');
        out.push_str(&diagram_ascii(d));
        out.push('\n');
    }
    out.trim_end().to_string()
}

pub fn diagram_tikz_scope(d: &Diagram, xshift: usize) -> String {
    let mut body = String::new();
    for &(s, t) in &d.throughs() {
        body.push_str(&format!(
            "  \\draw ({},0) -- ({},1);\n",
            s - 1,
            t - 1
        ));
    }
    for &(a, b) in &d.caps() {
        body.push_str(&format!(
            "  \\draw ({},0) .. controls ({},0.6) and ({},0.6) .. ({},0);\n",
            a - 1,
            a - 1,
            b - 1,
            b - 1
        ));
    }
    for &(a, b) in &d.cups() {
        body.push_str(&format!(
            "  \\draw ({},1) .. controls ({},0.4) and ({},0.4) .. ({},1);\n",
            a - 1,
            a - 1,
            b - 1,
            b - 1
        ));
    }
    if body.is_empty() {
        body.push_str("  % empty diagram\n");
    }
    format!(
        "\\begin{{scope}}[xshift={}cm]\n{}\\end{{scope}}",
        xshift, body
    )
}

pub fn morphism_tikz(f: &Morphism) -> String {
    if f.is_zero() {
        return "% zero morphism".to_string();
    }
    let step = f.dom().max(f.cod()) + 1;
    let mut parts = Vec::new();
    for (i, (d, c)) in display_terms(f).into_iter().enumerate() {
        let mut piece = String::new();
        if i == 0 {
            if c.neg().is_one() {
                piece.push_str("-\n");
            } else if !c.is_one() {
                piece.push_str(&format!("({c})\n"));
            }
        } else if c.neg().is_one() {
            piece.push_str("-\n");
        } else if c.is_one() {
            piece.push_str("+\n");
        } else {
            piece.push_str(&format!("+ ({c})\n"));
        }
        piece.push_str(&diagram_tikz_scope(d, i * step));
        parts.push(piece);
    }
    parts.join("\n")
}

pub fn diagram_render(d: &Diagram, format: &str) -> String {
    match format {
        "ascii" => diagram_ascii(d),
        "tikz" => diagram_tikz_scope(d, 0),
        _ => serde_json::to_string_pretty(&diagram_to_json(d)).unwrap(),
    }
}

pub fn morphism_render(f: &Morphism, format: &str) -> String {
    match format {
        "ascii" => morphism_ascii(f),
        "tikz" => morphism_tikz(f),
        _ => serde_json::to_string_pretty(&morphism_to_json(f)).unwrap(),
    }
}
