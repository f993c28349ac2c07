//! Brute-force counterparts of the grid counts. These share no code with the
//! segment enumeration in the parent module beyond point membership.

use std::collections::BTreeSet;

use super::{build_grids, cross, distinguished_sets, in_grid, segment_through, GridPoint};
use crate::error::Result;
use crate::poly::ExponentTriple;

fn sub(a: GridPoint, b: GridPoint) -> [i64; 3] {
    let (a, b) = (a.as_i64(), b.as_i64());
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn collinear(p: GridPoint, q: GridPoint, r: GridPoint) -> bool {
    cross(sub(q, p), sub(r, p)) == [0, 0, 0]
}

/// Distinct maximal point sets obtained by closing every pair under collinearity.
/// Cubic in `|T'|`; meant for small `n`.
pub fn closure_segments(n: u32) -> Result<BTreeSet<Vec<GridPoint>>> {
    let pts = build_grids(n)?.punctured;
    let mut out = BTreeSet::new();
    for (a, &p) in pts.iter().enumerate() {
        for &q in &pts[a + 1..] {
            let line: Vec<GridPoint> = pts.iter().copied().filter(|&r| collinear(p, q, r)).collect();
            out.insert(line);
        }
    }
    Ok(out)
}

/// Lines through at least two points of `T_{m−1}` (grid with `m` points per side).
pub fn alpha_brute(m: u32) -> usize {
    if m < 2 {
        return 0;
    }
    let pts = ExponentTriple::all_of_degree(m - 1);
    let mut lines = BTreeSet::new();
    for (a, &p) in pts.iter().enumerate() {
        for &q in &pts[a + 1..] {
            let line: Vec<GridPoint> = pts.iter().copied().filter(|&r| collinear(p, q, r)).collect();
            lines.insert(line);
        }
    }
    lines.len()
}

/// `1 + |T'| + #(segments not collinear with (n,0,0))`, segments by closure.
pub fn component_count(n: u32) -> Result<u64> {
    let pts = build_grids(n)?.punctured;
    let vertex = ExponentTriple::new(n, 0, 0);
    let segs = closure_segments(n)?;
    let kept = segs
        .iter()
        .filter(|s| !collinear(s[0], s[1], vertex))
        .count();
    Ok(1 + pts.len() as u64 + kept as u64)
}

fn boundary(seg: &[GridPoint], n: u32) -> bool {
    (0..3).any(|axis| seg.iter().all(|p| p.0[axis] == 0)) && seg.len() == n as usize - 1
}

/// Size of `ℋ_red` by direct membership tests over closure segments.
pub fn hred_count(n: u32) -> Result<u64> {
    let ds = distinguished_sets(n)?;
    let segs = closure_segments(n)?;
    let count = segs
        .iter()
        .filter(|s| !boundary(s, n))
        .filter(|s| {
            (0..3).any(|l| {
                ds.gamma[l].iter().any(|p| s.contains(p)) && ds.delta[l].iter().any(|p| s.contains(p))
            })
        })
        .count();
    Ok(count as u64)
}

/// Number of distinct non-boundary segments `H(P, Q)` with `P ∈ Γ_ℓ`, `Q ∈ Δ_ℓ`,
/// for `ℓ` in `0..3`; built from pairs, as in the counting argument.
pub fn per_l_pair_count(n: u32, l: usize) -> Result<u64> {
    let ds = distinguished_sets(n)?;
    let mut segs = BTreeSet::new();
    for &p in &ds.gamma[l] {
        for &q in &ds.delta[l] {
            if p == q {
                continue;
            }
            let s = segment_through(p, q, n)?;
            if !ds.is_boundary(&s) {
                segs.insert(s);
            }
        }
    }
    Ok(segs.len() as u64)
}

/// Segments whose supporting line passes through `(n, 0, 0)`, counted directly.
pub fn segments_through_first_vertex(n: u32) -> Result<u64> {
    let vertex = ExponentTriple::new(n, 0, 0);
    Ok(closure_segments(n)?
        .iter()
        .filter(|s| collinear(s[0], s[1], vertex))
        .count() as u64)
}

/// Points of `T_n` lying on a line given by a point and a direction; used to
/// cross-check maximality without the enumeration's walking logic.
pub fn line_points(p: GridPoint, dir: [i64; 3], n: u32) -> Vec<GridPoint> {
    let grid = build_grids(n).map(|g| g.points).unwrap_or_default();
    grid.into_iter()
        .filter(|&r| cross(sub(r, p), dir) == [0, 0, 0])
        .filter(|r| in_grid(r.as_i64(), n))
        .collect()
}
