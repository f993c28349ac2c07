//! Constructors for the curve families with a linear Jacobian syzygy.

pub mod linear;
pub mod ploski;
pub mod table1;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::MaximalSegment;
use crate::linalg::solve;
use crate::poly::{ExponentTriple, HomogeneousPolynomial, Scalar};
use crate::syzygy::{minors, HilbertBurchMatrix, SyzygyColumn};
use crate::verify::Verdicts;

pub use linear::{conjugate_syzygy_check, linear_syzygy_solution_space};
pub use ploski::{ploski_coefficient_solve, ploski_curve};
pub use table1::{table1_curve, table1_curve_from_form, FactorSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveFamily {
    NearPencil,
    BitangentConics,
    UnicuspidalPencil,
    BicuspidalPencil,
    PloskiEven,
    PloskiOdd,
}

impl CurveFamily {
    pub fn is_ploski(self) -> bool {
        matches!(self, CurveFamily::PloskiEven | CurveFamily::PloskiOdd)
    }
}

/// Marker for curves not attached to a maximal segment; serializes as `"ploski"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PloskiTag;

impl Serialize for PloskiTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("ploski")
    }
}

impl<'de> Deserialize<'de> for PloskiTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "ploski" {
            Ok(PloskiTag)
        } else {
            Err(serde::de::Error::custom(format!("unknown tag '{s}'")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SegmentTag {
    Segment(MaximalSegment),
    Ploski(PloskiTag),
}

/// Requested table row and parameter, before sub-case resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableCase {
    pub row: u8,
    pub i: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCertificate {
    pub n: u32,
    pub g: HomogeneousPolynomial,
    pub family: CurveFamily,
    pub abc: Option<[i64; 3]>,
    pub segment: SegmentTag,
    pub matrix: HilbertBurchMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<TableCase>,
    /// Known factors of `g`, used to locate rational singular points.
    #[serde(default)]
    pub factors: Vec<HomogeneousPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
}

impl CurveCertificate {
    /// Checks the structural invariants: nonzero `g` of degree `n`, and `abc`
    /// orthogonal to every point of the segment.
    pub fn check_invariants(&self) -> Result<()> {
        if self.g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.g.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, self.g.degree()));
        }
        if let (Some(abc), SegmentTag::Segment(h)) = (self.abc, &self.segment) {
            for p in h.points() {
                let v: i64 = (0..3).map(|s| p.as_i64()[s] * abc[s]).sum();
                if v != 0 {
                    return Err(Error::Precondition(format!("abc is not orthogonal to {p}")));
                }
            }
        }
        Ok(())
    }

    /// Stable ordering key for reports.
    pub fn sort_key(&self) -> (u32, CurveFamily, Option<TableCase>, String) {
        (self.n, self.family, self.case, self.g.to_string())
    }
}

/// A column of degree `n − 2` whose minors with `linear` are exactly `∇g`.
pub fn complete_high_column(g: &HomogeneousPolynomial, linear: &SyzygyColumn) -> Result<SyzygyColumn> {
    let n = g.degree();
    if n < 2 {
        return Err(Error::GridTooSmall { n, min: 2 });
    }
    let monos = ExponentTriple::all_of_degree(n - 2);
    let targets = ExponentTriple::all_of_degree(n - 1);
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for slot in 0..3 {
        for &m in &monos {
            let mut entries = [(); 3].map(|_| HomogeneousPolynomial::zero(n - 2));
            entries[slot] = HomogeneousPolynomial::monomial(m, crate::poly::int(1));
            let high = SyzygyColumn::new(entries)?;
            let mat = HilbertBurchMatrix::new(linear.clone(), high, n)?;
            let mi = minors(&mat);
            let mut col = Vec::new();
            for s in 0..3 {
                col.extend(targets.iter().map(|&t| mi.entries()[s].coeff(t)));
            }
            columns.push(col);
        }
    }
    let nrows = 3 * targets.len();
    let rows: Vec<Vec<Scalar>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let grad = g.gradient();
    let rhs: Vec<Scalar> = (0..3)
        .flat_map(|s| targets.iter().map(move |&t| (s, t)))
        .map(|(s, t)| grad[s].coeff(t))
        .collect();
    let x = solve(&rows, &rhs, columns.len())?;
    let per = monos.len();
    let mut entries = [(); 3].map(|_| HomogeneousPolynomial::zero(n - 2));
    for (slot, e) in entries.iter_mut().enumerate() {
        *e = HomogeneousPolynomial::from_terms(
            n - 2,
            monos.iter().copied().zip(x[slot * per..(slot + 1) * per].iter().cloned()),
        )?;
    }
    SyzygyColumn::new(entries)
}
