//! The triangle grid `T_n`, its punctured version `T'`, maximal segments and
//! the combinatorial counts built on them.
//!
//! A grid point is an exponent triple `(i, j, k)` with `i + j + k = n`; the same
//! value indexes a degree-`n` monomial.

pub mod oracle;

use std::collections::BTreeSet;
use std::sync::Mutex;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExponentTriple;
use crate::syzygy::{tied_set, Coeff};

pub type GridPoint = ExponentTriple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleGrid {
    pub n: u32,
    /// All of `T_n`, in ascending lexicographic order.
    pub points: Vec<GridPoint>,
    /// `T'`: `T_n` without the three vertices.
    pub punctured: Vec<GridPoint>,
}

pub fn is_vertex(p: GridPoint, n: u32) -> bool {
    p.0.contains(&n)
}

pub fn in_grid(p: [i64; 3], n: u32) -> bool {
    p.iter().all(|&c| c >= 0) && p.iter().sum::<i64>() == n as i64
}

pub fn in_punctured(p: [i64; 3], n: u32) -> bool {
    in_grid(p, n) && !p.contains(&(n as i64))
}

fn to_point(p: [i64; 3]) -> GridPoint {
    ExponentTriple(p.map(|c| c as u32))
}

pub fn build_grids(n: u32) -> Result<TriangleGrid> {
    if n < 3 {
        return Err(Error::GridTooSmall { n, min: 3 });
    }
    let points = ExponentTriple::all_of_degree(n);
    let punctured = points.iter().copied().filter(|p| !is_vertex(*p, n)).collect();
    Ok(TriangleGrid {
        n,
        points,
        punctured,
    })
}

/// A maximal collinear subset of `T'` with at least two points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalSegment {
    n: u32,
    points: Vec<GridPoint>,
    direction: [i64; 3],
    d: u32,
}

impl MaximalSegment {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Points sorted by first coordinate, ties by second.
    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    /// Primitive direction, lexicographically positive.
    pub fn direction(&self) -> [i64; 3] {
        self.direction
    }

    /// `gcd` of the entries of `Q − P` for the extremes `P`, `Q`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn extremes(&self) -> (GridPoint, GridPoint) {
        (self.points[0], *self.points.last().expect("segments have two points"))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Whether `(n, 0, 0)` lies on the supporting line.
    pub fn collinear_with_first_vertex(&self) -> bool {
        let p = self.points[0].as_i64();
        let v = [p[0] - self.n as i64, p[1], p[2]];
        cross(v, self.direction) == [0, 0, 0]
    }

    /// Componentwise minimum over the points: the monomial gcd of the support.
    pub fn min_exponent(&self) -> ExponentTriple {
        let mut m = self.points[0].0;
        for p in &self.points {
            for v in 0..3 {
                m[v] = m[v].min(p.0[v]);
            }
        }
        ExponentTriple(m)
    }
}

pub fn cross(u: [i64; 3], v: [i64; 3]) -> [i64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn primitive_direction(p: GridPoint, q: GridPoint) -> ([i64; 3], u32) {
    let (a, b) = (p.as_i64(), q.as_i64());
    let mut v = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    for c in v.iter_mut() {
        *c /= g;
    }
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        v = v.map(|c| -c);
    }
    (v, g as u32)
}

fn walk(start: GridPoint, dir: [i64; 3], n: u32) -> Vec<GridPoint> {
    let mut out = Vec::new();
    let mut p = start.as_i64();
    while in_punctured(p, n) {
        out.push(to_point(p));
        p = [p[0] + dir[0], p[1] + dir[1], p[2] + dir[2]];
    }
    out
}

fn from_min_point(min: GridPoint, dir: [i64; 3], n: u32) -> MaximalSegment {
    let points = walk(min, dir, n);
    let d = (points.len() - 1) as u32;
    MaximalSegment {
        n,
        points,
        direction: dir,
        d,
    }
}

/// Every maximal segment of `T'`, sorted by point list.
pub fn enumerate_maximal_segments(n: u32) -> Result<Vec<MaximalSegment>> {
    let grid = build_grids(n)?;
    let mut seen: BTreeSet<(GridPoint, [i64; 3])> = BTreeSet::new();
    let mut out = Vec::new();
    for (a, &p) in grid.punctured.iter().enumerate() {
        for &q in &grid.punctured[a + 1..] {
            let (dir, _) = primitive_direction(p, q);
            let pi = p.as_i64();
            if in_punctured([pi[0] - dir[0], pi[1] - dir[1], pi[2] - dir[2]], n) {
                continue;
            }
            if seen.insert((p, dir)) {
                out.push(from_min_point(p, dir, n));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The maximal segment `H(P, Q)` containing both points.
pub fn segment_through(p: GridPoint, q: GridPoint, n: u32) -> Result<MaximalSegment> {
    for pt in [p, q] {
        if !in_punctured(pt.as_i64(), n) {
            return Err(Error::NotInPuncturedGrid(pt.0));
        }
    }
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    let (dir, _) = primitive_direction(p, q);
    let mut m = p.as_i64();
    loop {
        let prev = [m[0] - dir[0], m[1] - dir[1], m[2] - dir[2]];
        if !in_punctured(prev, n) {
            break;
        }
        m = prev;
    }
    Ok(from_min_point(to_point(m), dir, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedSets {
    pub gamma: [Vec<GridPoint>; 3],
    pub delta: [Vec<GridPoint>; 3],
    /// Segments one step in from each edge: `L_ℓ` has `ℓ`-th coordinate 1.
    pub l: [MaximalSegment; 3],
    /// Boundary segments: `H_ℓ` has `ℓ`-th coordinate 0.
    pub h: [MaximalSegment; 3],
}

fn coordinate_segment(n: u32, axis: usize, value: u32) -> MaximalSegment {
    let grid = build_grids(n).expect("n >= 3");
    let pts: Vec<GridPoint> = grid
        .punctured
        .iter()
        .copied()
        .filter(|p| p.0[axis] == value)
        .collect();
    segment_through(pts[0], pts[1], n).expect("edge-parallel line has two points")
}

pub fn distinguished_sets(n: u32) -> Result<DistinguishedSets> {
    if n < 4 {
        return Err(Error::GridTooSmall { n, min: 4 });
    }
    let grid = build_grids(n)?;
    let e = ExponentTriple::new;
    let gamma = [
        vec![e(n - 1, 1, 0), e(n - 1, 0, 1), e(n - 2, 1, 1)],
        vec![e(0, n - 1, 1), e(1, n - 1, 0), e(1, n - 2, 1)],
        vec![e(0, 1, n - 1), e(1, 0, n - 1), e(1, 1, n - 2)],
    ];
    let delta = [0, 1, 2].map(|axis| {
        grid.punctured
            .iter()
            .copied()
            .filter(|p| p.0[axis] <= 1)
            .collect::<Vec<_>>()
    });
    Ok(DistinguishedSets {
        gamma,
        delta,
        l: [0, 1, 2].map(|axis| coordinate_segment(n, axis, 1)),
        h: [0, 1, 2].map(|axis| coordinate_segment(n, axis, 0)),
    })
}

impl DistinguishedSets {
    /// Indices `ℓ` (0-based) with `H ∩ Γ_ℓ ≠ ∅` and `H ∩ Δ_ℓ ≠ ∅`.
    pub fn matching_indices(&self, seg: &MaximalSegment) -> Vec<usize> {
        (0..3)
            .filter(|&l| {
                self.gamma[l].iter().any(|p| seg.contains(*p))
                    && self.delta[l].iter().any(|p| seg.contains(*p))
            })
            .collect()
    }

    pub fn is_boundary(&self, seg: &MaximalSegment) -> bool {
        self.h.contains(seg)
    }
}

/// Segments not equal to a boundary segment that meet some `Γ_ℓ` and the matching `Δ_ℓ`.
///
/// This follows the defining condition literally. Exactly one selected
/// segment per `n` is collinear with `(n, 0, 0)`: the one through
/// `(n−2, 1, 1)` in direction `(−2, 1, 1)`.
pub fn hred_filter(segments: &[MaximalSegment], n: u32) -> Result<Vec<MaximalSegment>> {
    let ds = distinguished_sets(n)?;
    Ok(segments
        .iter()
        .filter(|s| s.n == n && !ds.is_boundary(s) && !ds.matching_indices(s).is_empty())
        .cloned()
        .collect())
}

/// The reduced segments of a given grid size.
pub fn hred(n: u32) -> Result<Vec<MaximalSegment>> {
    hred_filter(&enumerate_maximal_segments(n)?, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    Trivial,
    Singleton { point: GridPoint },
    Segment { segment: MaximalSegment },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDescriptor {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub tied: Vec<Coeff>,
    pub linear_forms: Vec<[i64; 3]>,
}

pub fn enumerate_components(n: u32) -> Result<Vec<ComponentDescriptor>> {
    let grid = build_grids(n)?;
    let mut out = vec![ComponentDescriptor {
        kind: ComponentKind::Trivial,
        tied: Coeff::all(n),
        linear_forms: Vec::new(),
    }];
    for &p in &grid.punctured {
        out.push(ComponentDescriptor {
            kind: ComponentKind::Singleton { point: p },
            tied: tied_set(&[p], n),
            linear_forms: vec![p.as_i64()],
        });
    }
    for seg in enumerate_maximal_segments(n)? {
        if seg.collinear_with_first_vertex() {
            continue;
        }
        out.push(ComponentDescriptor {
            tied: tied_set(seg.points(), n),
            linear_forms: seg.points().iter().map(|p| p.as_i64()).collect(),
            kind: ComponentKind::Segment { segment: seg },
        });
    }
    Ok(out)
}

static TOTIENTS: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn totient_trial_division(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Euler's totient, memoized.
pub fn totient(m: u64) -> u64 {
    let mut memo = TOTIENTS.lock().unwrap_or_else(|e| e.into_inner());
    while memo.len() as u64 <= m {
        let next = memo.len() as u64;
        memo.push(totient_trial_division(next));
    }
    memo[m as usize]
}

fn choose2(i: i64) -> i64 {
    if i <= 0 {
        0
    } else {
        i * (i - 1) / 2
    }
}

/// Number of lines through at least two points of the triangular grid with `m` points per side.
pub fn alpha(m: u64) -> u64 {
    let m = m as i64;
    let s: i64 = (1..m)
        .map(|j| totient(j as u64) as i64 * (choose2(m - j + 1) - choose2(m - 2 * j + 1)))
        .sum();
    (3 * s) as u64
}

/// Closed-form count of components of the decomposition.
pub fn count_components(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::GridTooSmall { n, min: 3 });
    }
    let n = n as u64;
    let p1 = (n - 1) * (n + 4) / 2;
    let p2: u64 = (2..=n).map(totient).sum();
    let p3: u64 = (n / 2 + 1..=n).map(totient).sum();
    Ok(p1 + alpha(n + 1) - p2 - 2 * p3 - 1)
}

/// `(per ℓ, total)` counts of reduced segments.
pub fn count_hred(n: u32) -> Result<(u64, u64)> {
    if n < 4 {
        return Err(Error::GridTooSmall { n, min: 4 });
    }
    let n = n as u64;
    Ok((6 * n - 11, 6 * (3 * n - 8)))
}

// JSON shape: {"n": n, "points": [[i,j,k],...], "extremes": [[..],[..]], "d": d}

#[derive(Serialize, Deserialize)]
struct SegmentJson {
    n: u32,
    points: Vec<[u32; 3]>,
    extremes: [[u32; 3]; 2],
    d: u32,
}

impl Serialize for MaximalSegment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (p, q) = self.extremes();
        SegmentJson {
            n: self.n,
            points: self.points.iter().map(|p| p.0).collect(),
            extremes: [p.0, q.0],
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MaximalSegment {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SegmentJson::deserialize(de)?;
        let [p, q] = j.extremes.map(ExponentTriple);
        let seg = segment_through(p, q, j.n).map_err(D::Error::custom)?;
        let pts: Vec<[u32; 3]> = seg.points.iter().map(|p| p.0).collect();
        if pts != j.points || seg.d != j.d || seg.extremes() != (p, q) {
            return Err(D::Error::custom("segment data is not a maximal segment"));
        }
        Ok(seg)
    }
}
