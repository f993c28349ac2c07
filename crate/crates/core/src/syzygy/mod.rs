//! Hilbert-Burch matrices with a diagonal linear column `(ax, by, cz)`, their
//! minors and curl, the coefficient bookkeeping on the triangle grid, and the
//! two independent routes from a component to the polynomial `g`.

pub mod system;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{in_punctured, GridPoint, MaximalSegment};
use crate::poly::{int, ExponentTriple, HomogeneousPolynomial, Scalar, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    D,
    E,
    F,
}

/// A coefficient `d_{0jk}`, `e_{ijk}` or `f_{ijk}` of the degree-`(n−2)` column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    pub family: Family,
    pub exp: ExponentTriple,
}

impl Coeff {
    pub fn d(j: u32, k: u32) -> Self {
        Coeff {
            family: Family::D,
            exp: ExponentTriple::new(0, j, k),
        }
    }

    pub fn e(i: u32, j: u32, k: u32) -> Self {
        Coeff {
            family: Family::E,
            exp: ExponentTriple::new(i, j, k),
        }
    }

    pub fn f(i: u32, j: u32, k: u32) -> Self {
        Coeff {
            family: Family::F,
            exp: ExponentTriple::new(i, j, k),
        }
    }

    /// Every coefficient of `D`, `E`, `F` for grid size `n`.
    pub fn all(n: u32) -> Vec<Coeff> {
        let m = n - 2;
        let mut out: Vec<Coeff> = (0..=m).map(|j| Coeff::d(j, m - j)).collect();
        for e in ExponentTriple::all_of_degree(m) {
            out.push(Coeff {
                family: Family::E,
                exp: e,
            });
        }
        for e in ExponentTriple::all_of_degree(m) {
            out.push(Coeff {
                family: Family::F,
                exp: e,
            });
        }
        out.sort();
        out
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            Family::D => 'd',
            Family::E => 'e',
            Family::F => 'f',
        };
        let [i, j, k] = self.exp.0;
        if i < 10 && j < 10 && k < 10 {
            write!(f, "{letter}_{i}{j}{k}")
        } else {
            write!(f, "{letter}_{i},{j},{k}")
        }
    }
}

impl FromStr for Coeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad coefficient name '{s}'"));
        let (head, idx) = s.split_once('_').ok_or_else(bad)?;
        let family = match head {
            "d" => Family::D,
            "e" => Family::E,
            "f" => Family::F,
            _ => return Err(bad()),
        };
        let parts: Vec<u32> = if idx.contains(',') {
            idx.split(',').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            idx.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        };
        let [i, j, k]: [u32; 3] = parts.try_into().map_err(|_| bad())?;
        if family == Family::D && i != 0 {
            return Err(bad());
        }
        Ok(Coeff {
            family,
            exp: ExponentTriple::new(i, j, k),
        })
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Images of a grid point under `φ_D`, `φ_E`, `φ_F` and `φ_E*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImages {
    pub d: Option<Coeff>,
    pub e: Option<Coeff>,
    pub f: Option<Coeff>,
    /// `(coefficient, factor)`: `e_{i−1,j,k−1}` with factor 1 when `j = 0`,
    /// `f_{i−1,j−1,k}` with factor `−k/j` at interior points.
    pub e_star: Option<(Coeff, Scalar)>,
}

pub fn phi_maps(pt: GridPoint, n: u32) -> Result<PhiImages> {
    if !in_punctured(pt.as_i64(), n) {
        return Err(Error::NotInPuncturedGrid(pt.0));
    }
    let [i, j, k] = pt.0;
    let d = (i == 0 && j > 0 && k > 0).then(|| Coeff::d(j - 1, k - 1));
    let e = (i > 0 && k > 0).then(|| Coeff::e(i - 1, j, k - 1));
    let f = (i > 0 && j > 0).then(|| Coeff::f(i - 1, j - 1, k));
    let e_star = if i > 0 && k > 0 && j == 0 {
        Some((Coeff::e(i - 1, 0, k - 1), Scalar::one()))
    } else if i > 0 && j > 0 && k > 0 {
        Some((Coeff::f(i - 1, j - 1, k), -Scalar::new(k.into(), j.into())))
    } else {
        None
    };
    Ok(PhiImages { d, e, f, e_star })
}

/// `m(H)`: coefficients hit by none of `φ_D`, `φ_E`, `φ_F` on `points`.
pub fn tied_set(points: &[GridPoint], n: u32) -> Vec<Coeff> {
    let mut hit = std::collections::BTreeSet::new();
    for &p in points {
        if let Ok(img) = phi_maps(p, n) {
            hit.extend(img.d);
            hit.extend(img.e);
            hit.extend(img.f);
        }
    }
    Coeff::all(n).into_iter().filter(|c| !hit.contains(c)).collect()
}

/// Three forms of one common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyColumn {
    entries: [HomogeneousPolynomial; 3],
}

impl SyzygyColumn {
    pub fn new(entries: [HomogeneousPolynomial; 3]) -> Result<Self> {
        let d = entries[0].degree();
        for e in &entries[1..] {
            if e.degree() != d {
                return Err(Error::DegreeMismatch(d, e.degree()));
            }
        }
        Ok(SyzygyColumn { entries })
    }

    pub fn zero(degree: u32) -> Self {
        SyzygyColumn {
            entries: [(); 3].map(|_| HomogeneousPolynomial::zero(degree)),
        }
    }

    /// `(ax, by, cz)`.
    pub fn diagonal(abc: &[Scalar; 3]) -> Self {
        SyzygyColumn {
            entries: [0, 1, 2].map(|v| HomogeneousPolynomial::var(Var::ALL[v]).scale(&abc[v])),
        }
    }

    pub fn entries(&self) -> &[HomogeneousPolynomial; 3] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries[0].degree()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn zero_entries(&self) -> usize {
        self.entries.iter().filter(|e| e.is_zero()).count()
    }

    /// `Σ entries[s] · ∂_s g`.
    pub fn apply_to_gradient(&self, g: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let grad = g.gradient();
        let terms: Vec<HomogeneousPolynomial> =
            (0..3).map(|s| &self.entries[s] * &grad[s]).collect();
        &(&terms[0] + &terms[1]) + &terms[2]
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.entries.clone().map(|e| e.to_string())
    }
}

/// The 3×2 matrix `(A D; B E; C F)` with a linear first column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBurchMatrix {
    pub linear: SyzygyColumn,
    pub high: SyzygyColumn,
    pub n: u32,
}

impl HilbertBurchMatrix {
    pub fn new(linear: SyzygyColumn, high: SyzygyColumn, n: u32) -> Result<Self> {
        if linear.degree() != 1 {
            return Err(Error::DegreeMismatch(1, linear.degree()));
        }
        if n < 2 || high.degree() != n - 2 {
            return Err(Error::DegreeMismatch(n.saturating_sub(2), high.degree()));
        }
        Ok(HilbertBurchMatrix { linear, high, n })
    }

    /// At most one zero entry in each column.
    pub fn is_nondegenerate(&self) -> bool {
        self.linear.zero_entries() <= 1 && self.high.zero_entries() <= 1
    }

    /// The matrix evaluated at a point, as rows `[lin, high]`.
    pub fn evaluate(&self, p: &[Scalar; 3]) -> [[Scalar; 2]; 3] {
        [0, 1, 2].map(|r| {
            [
                self.linear.entries[r].evaluate(p),
                self.high.entries[r].evaluate(p),
            ]
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: u32,
    linear: [String; 3],
    high: [String; 3],
}

impl Serialize for HilbertBurchMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.n,
            linear: self.linear.to_strings(),
            high: self.high.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertBurchMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        if j.n < 2 {
            return Err(D::Error::custom("matrix degree below 2"));
        }
        let col = |v: &[String; 3], deg: u32| -> Result<SyzygyColumn> {
            let mut out = [(); 3].map(|_| HomogeneousPolynomial::zero(deg));
            for (o, s) in out.iter_mut().zip(v) {
                *o = HomogeneousPolynomial::parse_with_degree(s, deg)?;
            }
            SyzygyColumn::new(out)
        };
        let linear = col(&j.linear, 1).map_err(D::Error::custom)?;
        let high = col(&j.high, j.n - 2).map_err(D::Error::custom)?;
        HilbertBurchMatrix::new(linear, high, j.n).map_err(D::Error::custom)
    }
}

/// `(G_1, G_2, G_3) = (BF − CE, CD − AF, AE − BD)`.
pub fn minors(m: &HilbertBurchMatrix) -> SyzygyColumn {
    let [a, b, c] = &m.linear.entries;
    let [d, e, f] = &m.high.entries;
    SyzygyColumn {
        entries: [&(b * f) - &(c * e), &(c * d) - &(a * f), &(a * e) - &(b * d)],
    }
}

/// `(∂_x G_2 − ∂_y G_1, ∂_x G_3 − ∂_z G_1, ∂_y G_3 − ∂_z G_2)`.
pub fn curl(g: &SyzygyColumn) -> SyzygyColumn {
    let [g1, g2, g3] = &g.entries;
    use Var::*;
    SyzygyColumn {
        entries: [
            &g2.partial(X) - &g1.partial(Y),
            &g3.partial(X) - &g1.partial(Z),
            &g3.partial(Y) - &g2.partial(Z),
        ],
    }
}

fn det3(m: [[&HomogeneousPolynomial; 3]; 3]) -> HomogeneousPolynomial {
    // Leibniz expansion over the six permutations
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    let mut acc: Option<HomogeneousPolynomial> = None;
    for (p, even) in PERMS {
        let t = &(m[0][p[0]] * m[1][p[1]]) * m[2][p[2]];
        let t = if even { t } else { -t };
        acc = Some(match acc {
            None => t,
            Some(a) => &a + &t,
        });
    }
    acc.expect("six terms")
}

/// `g = (1/n) det [ (x,y,z) | linear | high ]`.
pub fn g_from_matrix(m: &HilbertBurchMatrix) -> HomogeneousPolynomial {
    let v = [Var::X, Var::Y, Var::Z].map(HomogeneousPolynomial::var);
    let l = &m.linear.entries;
    let h = &m.high.entries;
    let det = det3([[&v[0], &l[0], &h[0]], [&v[1], &l[1], &h[1]], [&v[2], &l[2], &h[2]]]);
    det.scale(&Scalar::new(1.into(), m.n.into()))
}

/// Normalizes an integer triple to content 1 with first nonzero entry positive.
pub fn normalize_triple(v: [i64; 3]) -> [i64; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g == 0 {
        return v;
    }
    let s = if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        -g
    } else {
        g
    };
    v.map(|c| c / s)
}

/// The projective solution `(a : b : c)` of `r(H)`.
pub fn solve_abc(h: &MaximalSegment) -> Result<[i64; 3]> {
    if h.collinear_with_first_vertex() {
        return Err(Error::CollinearWithFirstVertex);
    }
    let (p, q) = h.extremes();
    let abc = normalize_triple(crate::grid::cross(p.as_i64(), q.as_i64()));
    debug_assert!(h
        .points()
        .iter()
        .all(|r| (0..3).map(|v| r.as_i64()[v] * abc[v]).sum::<i64>() == 0));
    Ok(abc)
}

pub fn abc_scalars(abc: [i64; 3]) -> [Scalar; 3] {
    abc.map(int)
}

/// Values for the surviving coefficients of one component; absent names are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoefficientAssignment {
    pub abc: [Scalar; 3],
    pub values: BTreeMap<Coeff, Scalar>,
}

impl CoefficientAssignment {
    pub fn new(abc: [Scalar; 3]) -> Self {
        CoefficientAssignment {
            abc,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, c: Coeff) -> Scalar {
        self.values.get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, c: Coeff, v: Scalar) {
        if v.is_zero() {
            self.values.remove(&c);
        } else {
            self.values.insert(c, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// A nonzero rational with numerator and denominator in `[1, 20]` and random sign.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let num: i64 = rng.gen_range(1..=20);
    let den: i64 = rng.gen_range(1..=20);
    let s = if rng.gen_bool(0.5) { -1 } else { 1 };
    Scalar::new((s * num).into(), den.into())
}

/// Random values for the free coefficients on `points`, with the interior
/// `e` values set to `−(k/j)·f` so that the assignment satisfies every family.
pub fn random_assignment<R: Rng + ?Sized>(
    points: &[GridPoint],
    n: u32,
    abc: [Scalar; 3],
    rng: &mut R,
) -> Result<CoefficientAssignment> {
    let mut asg = CoefficientAssignment::new(abc);
    for &p in points {
        let img = phi_maps(p, n)?;
        for c in [img.d, img.f].into_iter().flatten() {
            asg.set(c, random_rational(rng));
        }
        if p.j() == 0 {
            if let Some(c) = img.e {
                asg.set(c, random_rational(rng));
            }
        }
    }
    complete_interior_e(points, n, &mut asg)?;
    Ok(asg)
}

/// Fills `e_{i−1,j,k−1} = −(k/j) f_{i−1,j−1,k}` at interior points.
pub fn complete_interior_e(points: &[GridPoint], n: u32, asg: &mut CoefficientAssignment) -> Result<()> {
    for &p in points {
        let img = phi_maps(p, n)?;
        if let (Some(e), Some(f)) = (img.e, img.f) {
            let v = -asg.get(f) * Scalar::new(p.k().into(), p.j().into());
            asg.set(e, v);
        }
    }
    Ok(())
}

/// Which version of the `E` column to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EForm {
    /// `φ_E` read straight from the assignment.
    Plain,
    /// `φ_E*`: interior `e` values replaced by `−(k/j)·f`.
    Starred,
}

fn def_columns(
    points: &[GridPoint],
    n: u32,
    asg: &CoefficientAssignment,
    form: EForm,
) -> Result<[HomogeneousPolynomial; 3]> {
    let m = n - 2;
    let mut d = HomogeneousPolynomial::zero(m);
    let mut e = HomogeneousPolynomial::zero(m);
    let mut f = HomogeneousPolynomial::zero(m);
    for &p in points {
        let img = phi_maps(p, n)?;
        let [i, j, k] = p.0;
        if let Some(c) = img.d {
            d = &d + &HomogeneousPolynomial::monomial(ExponentTriple::new(i, j - 1, k - 1), asg.get(c));
        }
        let e_val = match form {
            EForm::Plain => img.e.map(|c| asg.get(c)),
            EForm::Starred => img.e_star.map(|(c, s)| asg.get(c) * s),
        };
        if let Some(v) = e_val {
            e = &e + &HomogeneousPolynomial::monomial(ExponentTriple::new(i - 1, j, k - 1), v);
        }
        if let Some(c) = img.f {
            f = &f + &HomogeneousPolynomial::monomial(ExponentTriple::new(i - 1, j - 1, k), asg.get(c));
        }
    }
    if d.is_zero() && e.is_zero() && f.is_zero() {
        return Err(Error::Degenerate("all assigned coefficients vanish".into()));
    }
    Ok([d, e, f])
}

/// `(D_H, E*_H, F_H)` for a component given by its point set.
pub fn build_def_points(
    points: &[GridPoint],
    n: u32,
    asg: &CoefficientAssignment,
) -> Result<[HomogeneousPolynomial; 3]> {
    def_columns(points, n, asg, EForm::Starred)
}

/// `(D_H, E*_H, F_H)`; boundary segments and segments through `(n, 0, 0)` are rejected.
pub fn build_def(h: &MaximalSegment, asg: &CoefficientAssignment) -> Result<[HomogeneousPolynomial; 3]> {
    check_h2(h)?;
    def_columns(h.points(), h.n(), asg, EForm::Starred)
}

/// `(D_H, E_H, F_H)` with the unstarred `E`.
pub fn build_def_plain(h: &MaximalSegment, asg: &CoefficientAssignment) -> Result<[HomogeneousPolynomial; 3]> {
    check_h2(h)?;
    def_columns(h.points(), h.n(), asg, EForm::Plain)
}

fn check_h2(h: &MaximalSegment) -> Result<()> {
    if (0..3).any(|axis| h.points().iter().all(|p| p.0[axis] == 0)) {
        return Err(Error::BoundarySegment);
    }
    if h.collinear_with_first_vertex() {
        return Err(Error::CollinearWithFirstVertex);
    }
    Ok(())
}

/// The matrix `((ax, by, cz) | (D, E*, F))` of a component.
pub fn assemble_matrix(h: &MaximalSegment, asg: &CoefficientAssignment) -> Result<HilbertBurchMatrix> {
    let high = SyzygyColumn::new(build_def(h, asg)?)?;
    HilbertBurchMatrix::new(SyzygyColumn::diagonal(&asg.abc), high, h.n())
}

/// `g_H` computed pointwise from `(c−b)φ_D + (a−c)φ_E + (b−a)φ_F`, divided by `n`.
pub fn g_h_formula_with(
    points: &[GridPoint],
    n: u32,
    asg: &CoefficientAssignment,
    form: EForm,
) -> Result<HomogeneousPolynomial> {
    let [a, b, c] = &asg.abc;
    let mut terms = Vec::new();
    for &p in points {
        let img = phi_maps(p, n)?;
        let mut v = Scalar::zero();
        if let Some(d) = img.d {
            v += (c - b) * asg.get(d);
        }
        let e_val = match form {
            EForm::Plain => img.e.map(|e| asg.get(e)),
            EForm::Starred => img.e_star.map(|(e, s)| asg.get(e) * s),
        };
        if let Some(e) = e_val {
            v += (a - c) * e;
        }
        if let Some(f) = img.f {
            v += (b - a) * asg.get(f);
        }
        terms.push((p, v / int(n as i64)));
    }
    HomogeneousPolynomial::from_terms(n, terms)
}

/// `g_H` with the starred `E`, the form that satisfies every equation family.
pub fn g_h_formula(h: &MaximalSegment, asg: &CoefficientAssignment) -> Result<HomogeneousPolynomial> {
    check_h2(h)?;
    g_h_formula_with(h.points(), h.n(), asg, EForm::Starred)
}

/// The single-monomial curve of an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonCurve {
    pub g: HomogeneousPolynomial,
    /// Only the triangle `xyz` (the `n = 3` case) is squarefree.
    pub squarefree: bool,
}

/// `g**` for an interior point: `[(b−a) − (k/j)(a−c)] f / n`, which reduces to
/// `−(a/j)·f·x^i y^j z^k` once `ia + jb + kc = 0`.
pub fn gstar_singleton(pt: GridPoint, n: u32, asg: &CoefficientAssignment) -> Result<SingletonCurve> {
    let [i, j, k] = pt.0;
    if !in_punctured(pt.as_i64(), n) {
        return Err(Error::NotInPuncturedGrid(pt.0));
    }
    if i == 0 || j == 0 || k == 0 {
        return Err(Error::NotInterior(pt.0));
    }
    let [a, b, c] = &asg.abc;
    let form = a * int(i as i64) + b * int(j as i64) + c * int(k as i64);
    if !form.is_zero() {
        return Err(Error::Precondition(format!(
            "(a, b, c) does not satisfy the linear form of {pt:?}"
        )));
    }
    let f = asg.get(Coeff::f(i - 1, j - 1, k));
    let factor = (b - a) - Scalar::new(k.into(), j.into()) * (a - c);
    let coeff = factor * f / int(n as i64);
    Ok(SingletonCurve {
        g: HomogeneousPolynomial::monomial(pt, coeff),
        squarefree: i == 1 && j == 1 && k == 1,
    })
}

/// Checks `a·x·∂_x g + b·y·∂_y g + c·z·∂_z g = 0`.
pub fn is_diagonal_syzygy(g: &HomogeneousPolynomial, abc: &[Scalar; 3]) -> bool {
    SyzygyColumn::diagonal(abc).apply_to_gradient(g).is_zero()
}

/// `true` if `u = λ·v` for a nonzero scalar `λ`, entrywise over the column.
pub fn columns_proportional(u: &SyzygyColumn, v: &SyzygyColumn) -> bool {
    let Some(idx) = (0..3).find(|&s| !v.entries[s].is_zero()) else {
        return u.is_zero();
    };
    let (e, c) = v.entries[idx].terms().next().expect("nonzero");
    let lambda = u.entries[idx].coeff(*e) / c;
    if lambda.is_zero() {
        return false;
    }
    (0..3).all(|s| v.entries[s].scale(&lambda) == u.entries[s])
}
