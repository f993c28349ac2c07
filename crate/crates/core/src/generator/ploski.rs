//! Curves with the linear syzygy `(y, z, 0)`: unions of conics from the pencil
//! spanned by `q = y² − 2xz` and `z²`, with the line `z` added in odd degree.
//!
//! The closing sum is written here as `Σ λ_ℓ q^ℓ z^{n−2ℓ}`; this is the only
//! exponent that makes every term have degree `n` and matches the worked
//! rows `h_1 = z^{n−2} q`, `h_3 = z^{n−4} q²`, and so on.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{complete_high_column, CurveCertificate, CurveFamily, SegmentTag};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::poly::{int, ExponentTriple, HomogeneousPolynomial, Scalar};
use crate::syzygy::{HilbertBurchMatrix, SyzygyColumn};

/// `y² − 2xz`.
pub fn ploski_conic() -> HomogeneousPolynomial {
    "y^2 - 2*x*z".parse().expect("literal")
}

/// Number of free parameters for degree `n`: `⌊n/2⌋`.
pub fn ploski_parameter_count(n: u32) -> usize {
    (n / 2) as usize
}

/// Even `n`: `Σ_{ℓ=1}^{n/2} λ_ℓ q^ℓ z^{n−2ℓ}`. Odd `n`: `z · Σ_{ℓ=1}^{(n−1)/2} λ_ℓ q^ℓ z^{n−1−2ℓ}`.
pub fn ploski_polynomial(n: u32, lambdas: &[Scalar]) -> Result<HomogeneousPolynomial> {
    if n < 4 {
        return Err(Error::GridTooSmall { n, min: 4 });
    }
    let m = ploski_parameter_count(n);
    if lambdas.len() != m {
        return Err(Error::OutOfRange(format!("degree {n} takes {m} parameters, got {}", lambdas.len())));
    }
    if lambdas.iter().all(|l| l.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let even = n.is_multiple_of(2);
    let inner = if even { n } else { n - 1 };
    let q = ploski_conic();
    let z = HomogeneousPolynomial::z();
    let mut g = HomogeneousPolynomial::zero(inner);
    for (idx, l) in lambdas.iter().enumerate() {
        let ell = idx as u32 + 1;
        let term = (&q.pow(ell) * &z.pow(inner - 2 * ell)).scale(l);
        g = &g + &term;
    }
    Ok(if even { g } else { &z * &g })
}

/// `(y, z, 0)`.
pub fn ploski_linear_column() -> SyzygyColumn {
    SyzygyColumn::new([
        HomogeneousPolynomial::y(),
        HomogeneousPolynomial::z(),
        HomogeneousPolynomial::zero(1),
    ])
    .expect("degree 1")
}

pub fn ploski_curve(n: u32, lambdas: &[Scalar]) -> Result<CurveCertificate> {
    let g = ploski_polynomial(n, lambdas)?;
    let linear = ploski_linear_column();
    let high = complete_high_column(&g, &linear)?;
    let matrix = HilbertBurchMatrix::new(linear, high, n)?;
    Ok(CurveCertificate {
        n,
        g,
        family: if n.is_multiple_of(2) {
            CurveFamily::PloskiEven
        } else {
            CurveFamily::PloskiOdd
        },
        abc: None,
        segment: SegmentTag::Ploski(super::PloskiTag),
        matrix,
        case: None,
        factors: Vec::new(),
        notice: None,
        verdicts: None,
    })
}

/// The two families of lines of slope `(1, −2)` in `(i, j)` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PloskiSegment {
    /// Starts at `(0, j)`, `0 ≤ j ≤ n−1`.
    A(u32),
    /// Starts at `(n−j, j)`, `0 ≤ j ≤ n`.
    B(u32),
}

impl PloskiSegment {
    pub fn all(n: u32) -> Vec<PloskiSegment> {
        (0..n)
            .map(PloskiSegment::A)
            .chain((0..=n).map(PloskiSegment::B))
            .collect()
    }

    /// Points `(i, j)` of the segment.
    pub fn points(self, n: u32) -> Vec<(u32, u32)> {
        let (i0, j) = match self {
            PloskiSegment::A(j) => (0, j),
            PloskiSegment::B(j) => (n - j, j),
        };
        (0..=j / 2).map(|t| (i0 + t, j - 2 * t)).collect()
    }
}

/// `c(i, j)` as a sparse combination of the coefficients `g_{hl}`.
fn coefficient_of_v(i: u32, j: u32, n: u32) -> Vec<((u32, u32), Scalar)> {
    let k = n - i - j;
    let mut out = Vec::new();
    if k >= 1 {
        out.push(((i, j + 1), int(j as i64 + 1)));
    }
    if j >= 1 {
        out.push(((i + 1, j - 1), int(i as i64 + 1)));
    }
    out
}

/// The equations of one segment with the coefficients they involve.
pub struct SegmentSystem {
    pub variables: Vec<(u32, u32)>,
    pub rows: Vec<Vec<Scalar>>,
}

pub fn segment_system(n: u32, seg: PloskiSegment) -> SegmentSystem {
    let eqs: Vec<_> = seg.points(n).into_iter().map(|(i, j)| coefficient_of_v(i, j, n)).collect();
    let vars: BTreeSet<(u32, u32)> = eqs.iter().flatten().map(|(v, _)| *v).collect();
    // order by increasing i so the first variable is g_{0, j+1}
    let variables: Vec<(u32, u32)> = vars.into_iter().collect();
    let index: BTreeMap<(u32, u32), usize> = variables.iter().enumerate().map(|(a, v)| (*v, a)).collect();
    let rows = eqs
        .into_iter()
        .filter(|e| !e.is_empty())
        .map(|e| {
            let mut row = vec![Scalar::zero(); variables.len()];
            for (v, c) in e {
                row[index[&v]] += c;
            }
            row
        })
        .collect();
    SegmentSystem { variables, rows }
}

/// Kernel of one segment system, each vector scaled so its first nonzero entry is 1.
pub fn segment_solution(n: u32, seg: PloskiSegment) -> (Vec<(u32, u32)>, Vec<Vec<Scalar>>) {
    let sys = segment_system(n, seg);
    let basis = kernel(&sys.rows, sys.variables.len())
        .into_iter()
        .map(|v| {
            let first = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Scalar::one);
            v.iter().map(|c| c / &first).collect()
        })
        .collect();
    (sys.variables, basis)
}

fn to_poly(n: u32, vars: &[(u32, u32)], values: &[Scalar]) -> HomogeneousPolynomial {
    HomogeneousPolynomial::from_terms(
        n,
        vars.iter()
            .zip(values)
            .map(|(&(i, j), c)| (ExponentTriple::new(i, j, n - i - j), c.clone())),
    )
    .expect("points of the grid")
}

/// Basis of the solutions of `y ∂_x g + z ∂_y g = 0`, assembled segment by
/// segment. Coefficients that occur in no equation are free and contribute
/// their monomial; for every `n` this is exactly `z^n`.
pub fn ploski_coefficient_solve(n: u32) -> Vec<HomogeneousPolynomial> {
    let mut basis = Vec::new();
    let mut seen = BTreeSet::new();
    for seg in PloskiSegment::all(n) {
        let (vars, sols) = segment_solution(n, seg);
        seen.extend(vars.iter().copied());
        for s in sols {
            basis.push(to_poly(n, &vars, &s));
        }
    }
    for e in ExponentTriple::all_of_degree(n) {
        if !seen.contains(&(e.i(), e.j())) {
            basis.push(HomogeneousPolynomial::monomial(e, int(1)));
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomogeneousPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn ploski_quartic() {
        let g = ploski_polynomial(4, &[int(0), int(1)]).unwrap();
        assert_eq!(g, p("y^4 - 4*x*y^2*z + 4*x^2*z^2"));
        let v = &(&HomogeneousPolynomial::y() * &g.partial(crate::Var::X))
            + &(&HomogeneousPolynomial::z() * &g.partial(crate::Var::Y));
        assert!(v.is_zero());
    }

    #[test]
    fn odd_variant_has_tangent_line() {
        let g = ploski_polynomial(5, &[int(1), int(1)]).unwrap();
        assert!(g.monomial_gcd().is_some_and(|e| e.k() == 1));
        assert_eq!(g.degree(), 5);
    }

    #[test]
    fn parameter_errors() {
        assert!(ploski_polynomial(4, &[int(1)]).is_err());
        assert!(ploski_polynomial(6, &[int(0), int(0), int(0)]).is_err());
        assert!(ploski_polynomial(3, &[int(1)]).is_err());
    }

    #[test]
    fn segment_six_system() {
        let sys = segment_system(10, PloskiSegment::A(6));
        assert_eq!(sys.variables, vec![(0, 7), (1, 5), (2, 3), (3, 1)]);
        let want: Vec<Vec<Scalar>> = [[7, 1, 0, 0], [0, 5, 2, 0], [0, 0, 3, 3], [0, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&c| int(c)).collect())
            .collect();
        assert_eq!(sys.rows, want);
        assert!(segment_solution(10, PloskiSegment::A(6)).1.is_empty());
    }

    #[test]
    fn odd_rows() {
        let rows: [&[i64]; 4] = [&[1, -2], &[1, -4, 4], &[1, -6, 12, -8], &[1, -8, 24, -32, 16]];
        for (idx, want) in rows.iter().enumerate() {
            let j = 2 * idx as u32 + 1;
            let (_, sol) = segment_solution(8, PloskiSegment::A(j));
            assert_eq!(sol.len(), 1);
            let want: Vec<Scalar> = want.iter().map(|&c| int(c)).collect();
            assert_eq!(sol[0], want, "j = {j}");
        }
    }

    #[test]
    fn certificate_matrix() {
        let c = ploski_curve(4, &[int(1), int(1)]).unwrap();
        assert_eq!(crate::syzygy::g_from_matrix(&c.matrix), c.g);
        assert_eq!(c.family, CurveFamily::PloskiEven);
    }
}
