//! Curves supported on a segment joining `Γ_2` and `Δ_2`: six row shapes,
//! each parametrized by `i` and a factorization of a binary form.

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CurveCertificate, CurveFamily, SegmentTag, TableCase};
use crate::error::{Error, Result};
use crate::grid::{segment_through, GridPoint, MaximalSegment};
use crate::poly::{int, scalar_text, ExponentTriple, HomogeneousPolynomial, Scalar, Var};
use crate::syzygy::{
    abc_scalars, assemble_matrix, complete_interior_e, g_from_matrix, normalize_triple, phi_maps,
    random_rational, CoefficientAssignment,
};

/// Row, row parameter `i`, and the `d` factor pairs `(λ_s, μ_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub case_id: u8,
    pub i: u32,
    pub d: u32,
    #[serde(with = "scalar_text::pairs")]
    pub factors: Vec<(Scalar, Scalar)>,
}

/// `(P_2, Q_2)` of a row.
pub fn row_points(row: u8, i: u32, n: u32) -> Result<(GridPoint, GridPoint)> {
    let e = ExponentTriple::new;
    check_range(row, i, n)?;
    Ok(match row {
        1 => (e(0, n - 1, 1), e(i, 0, n - i)),
        2 => (e(0, n - 1, 1), e(i, 1, n - i - 1)),
        3 => (e(1, n - 1, 0), e(i, 0, n - i)),
        4 => (e(1, n - 1, 0), e(i, 1, n - i - 1)),
        5 => (e(1, n - 2, 1), e(i, 0, n - i)),
        6 => (e(1, n - 2, 1), e(i, 1, n - i - 1)),
        _ => unreachable!(),
    })
}

fn check_range(row: u8, i: u32, n: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::GridTooSmall { n, min: 4 });
    }
    let (lo, hi) = match row {
        1 | 2 | 3 | 5 => (1, n - 1),
        4 => (0, n - 2),
        6 => (0, n - 1),
        _ => return Err(Error::OutOfRange(format!("row {row} is not in 1..=6"))),
    };
    if i < lo || i > hi {
        return Err(Error::OutOfRange(format!("row {row} needs {lo} <= i <= {hi}, got {i}")));
    }
    Ok(())
}

/// The `(a : b : c)` column of a row. Row (2) uses `+i` in the middle entry,
/// the value forced by the cross product of its two points.
pub fn row_abc(row: u8, i: u32, n: u32) -> Result<[i64; 3]> {
    check_range(row, i, n)?;
    let (n, i) = (n as i64, i as i64);
    Ok(match row {
        1 => [(n - i) * (n - 1), i, -i * (n - 1)],
        2 => [(n - i - 1) * (n - 1) - 1, i, -i * (n - 1)],
        3 => [(n - i) * (n - 1), -(n - i), -i * (n - 1)],
        4 => [(n - i - 1) * (n - 1), -(n - i - 1), 1 - i * (n - 1)],
        5 => [(n - i) * (n - 2), 2 * i - n, -i * (n - 2)],
        6 => [(n - i - 1) * (n - 2) - 1, 2 * i + 1 - n, 1 - i * (n - 2)],
        _ => unreachable!(),
    })
}

/// Maps the sub-cases left out of the table to the row that already covers them.
pub fn resolve_omitted(row: u8, i: u32, n: u32) -> Option<(u8, u32)> {
    match (row, i) {
        (2, i) if i == n - 2 => Some((1, n - 1)),
        (5, i) if i == n - 1 => Some((1, n - 1)),
        (6, i) if i == n - 2 => Some((1, n - 1)),
        (4..=6, 1) => Some((3, 1)),
        _ => None,
    }
}

/// Every `(row, i)` listed in the table for grid size `n`, omitted sub-cases excluded.
pub fn admissible_cases(n: u32) -> Vec<(u8, u32)> {
    let mut out = Vec::new();
    for row in 1..=6u8 {
        let (lo, hi) = match row {
            4 | 6 => (0, if row == 4 { n - 2 } else { n - 1 }),
            _ => (1, n - 1),
        };
        for i in lo..=hi {
            if resolve_omitted(row, i, n).is_none() {
                out.push((row, i));
            }
        }
    }
    out
}

/// `d = gcd(Q_2 − P_2)` and `(α, −β, γ) = (Q_2 − P_2)/d`.
pub fn row_shape(row: u8, i: u32, n: u32) -> Result<(u32, [i64; 3])> {
    let (p, q) = row_points(row, i, n)?;
    let v = [0, 1, 2].map(|s| q.as_i64()[s] - p.as_i64()[s]);
    let d = v[0].gcd(&v[1]).gcd(&v[2]);
    Ok((d as u32, v.map(|c| c / d)))
}

/// Multiplicity of `λU + μW` at each coordinate point, for coprime monomials `U`, `W`.
fn coordinate_multiplicities(u: ExponentTriple, w: ExponentTriple) -> [u32; 3] {
    [0, 1, 2].map(|v| {
        let du = u.degree() - u.0[v];
        let dw = w.degree() - w.0[v];
        du.min(dw)
    })
}

/// Family from the factor shape `λU + μW`: its degree, and for degree at
/// least 3 the number of coordinate points where it is singular.
pub fn family_of_pair(u: ExponentTriple, w: ExponentTriple) -> CurveFamily {
    match u.degree() {
        1 => CurveFamily::NearPencil,
        2 => CurveFamily::BitangentConics,
        _ => {
            let cusps = coordinate_multiplicities(u, w).iter().filter(|&&m| m >= 2).count();
            if cusps >= 2 {
                CurveFamily::BicuspidalPencil
            } else {
                CurveFamily::UnicuspidalPencil
            }
        }
    }
}

fn monomial(e: [u32; 3]) -> HomogeneousPolynomial {
    HomogeneousPolynomial::monomial(ExponentTriple(e), int(1))
}

/// Assignment whose component polynomial is exactly `g`, for `g` supported on `h`.
pub fn back_solve(h: &MaximalSegment, g: &HomogeneousPolynomial, abc: [Scalar; 3]) -> Result<CoefficientAssignment> {
    let n = h.n();
    let nn = int(n as i64);
    let [a, b, c] = abc.clone();
    let mut asg = CoefficientAssignment::new(abc);
    for (e, v) in g.terms() {
        if !h.contains(*e) {
            return Err(Error::Precondition(format!("monomial {e} is not on the segment")));
        }
        let img = phi_maps(*e, n)?;
        let [i, j, k] = e.0;
        let (name, denom, num) = if i == 0 {
            (img.d, &c - &b, v * &nn)
        } else if j == 0 {
            (img.e, &a - &c, v * &nn)
        } else if k == 0 {
            (img.f, &b - &a, v * &nn)
        } else {
            (img.f, a.clone(), -v * int(j as i64))
        };
        if denom.is_zero() {
            return Err(Error::Degenerate(format!("no free coefficient reaches {e}")));
        }
        asg.set(name.expect("point of T'"), num / denom);
    }
    complete_interior_e(h.points(), n, &mut asg)?;
    Ok(asg)
}

fn proportional(p: &(Scalar, Scalar), q: &(Scalar, Scalar)) -> bool {
    &p.0 * &q.1 == &p.1 * &q.0
}

struct Resolved {
    row: u8,
    i: u32,
    notice: Option<String>,
    p: GridPoint,
    q: GridPoint,
    d: u32,
}

fn resolve(row: u8, i: u32, n: u32) -> Result<Resolved> {
    check_range(row, i, n)?;
    let (r, ri, notice) = match resolve_omitted(row, i, n) {
        Some((r, ri)) => (
            r,
            ri,
            Some(format!("row ({row}) with i = {i} is a sub-case of row ({r}) with i = {ri}")),
        ),
        None => (row, i, None),
    };
    let (p, q) = row_points(r, ri, n)?;
    let (d, _) = row_shape(r, ri, n)?;
    Ok(Resolved {
        row: r,
        i: ri,
        notice,
        p,
        q,
        d,
    })
}

/// Exponents of `(x^G, U, W)` with `x^G` the common monomial factor of the segment.
fn prefix_and_pair(r: &Resolved) -> ([u32; 3], [u32; 3], [u32; 3]) {
    let g0 = [0, 1, 2].map(|v| r.p.0[v].min(r.q.0[v]));
    let du = [0, 1, 2].map(|v| (r.p.0[v] - g0[v]) / r.d);
    let dw = [0, 1, 2].map(|v| (r.q.0[v] - g0[v]) / r.d);
    (g0, du, dw)
}

fn finish(
    r: Resolved,
    family: CurveFamily,
    case: TableCase,
    n: u32,
    g: HomogeneousPolynomial,
    factors: Vec<HomogeneousPolynomial>,
) -> Result<CurveCertificate> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let h = segment_through(r.p, r.q, n)?;
    let abc = row_abc(r.row, r.i, n)?;
    let asg = back_solve(&h, &g, abc_scalars(abc))?;
    let matrix = assemble_matrix(&h, &asg)?;
    if g_from_matrix(&matrix) != g {
        return Err(Error::Inconsistent);
    }
    Ok(CurveCertificate {
        n,
        g,
        family,
        abc: Some(abc),
        segment: SegmentTag::Segment(h),
        matrix,
        case: Some(case),
        factors,
        notice: r.notice,
        verdicts: None,
    })
}

fn prefix_factors(g0: [u32; 3]) -> Vec<HomogeneousPolynomial> {
    let mut out = Vec::new();
    for v in Var::ALL {
        for _ in 0..g0[v.index()] {
            out.push(HomogeneousPolynomial::var(v));
        }
    }
    out
}

/// The curve of a table row: `x^G · Π (λ_s U + μ_s W)` where `U`, `W` are the
/// monomials with `U^d = x^{P−G}` and `W^d = x^{Q−G}`.
pub fn table1_curve(spec: &FactorSpec, n: u32, squarefree: bool) -> Result<CurveCertificate> {
    let r = resolve(spec.case_id, spec.i, n)?;
    if spec.factors.len() != r.d as usize || spec.d != r.d {
        return Err(Error::OutOfRange(format!(
            "row ({}) with i = {} needs {} factor pairs, got {}",
            r.row,
            r.i,
            r.d,
            spec.factors.len()
        )));
    }
    for (s, f) in spec.factors.iter().enumerate() {
        if f.0.is_zero() && f.1.is_zero() {
            return Err(Error::Degenerate(format!("factor {s} is (0, 0)")));
        }
        if squarefree && spec.factors[..s].iter().any(|g| proportional(f, g)) {
            return Err(Error::Degenerate(format!("factor {s} repeats an earlier factor")));
        }
    }
    let (g0, eu, ew) = prefix_and_pair(&r);
    let family = family_of_pair(ExponentTriple(eu), ExponentTriple(ew));
    let (u, w) = (monomial(eu), monomial(ew));
    let mut g = monomial(g0);
    let mut factors = prefix_factors(g0);
    for (l, m) in &spec.factors {
        let f = &u.scale(l) + &w.scale(m);
        g = &g * &f;
        factors.push(f);
    }
    let case = TableCase {
        row: spec.case_id,
        i: spec.i,
    };
    finish(r, family, case, n, g, factors)
}

/// Same curve from the coefficients `t_0, …, t_d` of `T(U, W) = Σ t_s U^{d−s} W^s`,
/// for binary forms that do not split over the rationals.
pub fn table1_curve_from_form(row: u8, i: u32, n: u32, t: &[Scalar]) -> Result<CurveCertificate> {
    let r = resolve(row, i, n)?;
    if t.len() != r.d as usize + 1 {
        return Err(Error::OutOfRange(format!("expected {} coefficients, got {}", r.d + 1, t.len())));
    }
    let (g0, eu, ew) = prefix_and_pair(&r);
    let family = family_of_pair(ExponentTriple(eu), ExponentTriple(ew));
    let (u, w) = (monomial(eu), monomial(ew));
    let deg = u.degree() * r.d;
    let mut form = HomogeneousPolynomial::zero(deg);
    for (s, c) in t.iter().enumerate() {
        let term = (&u.pow(r.d - s as u32) * &w.pow(s as u32)).scale(c);
        form = &form + &term;
    }
    let g = &monomial(g0) * &form;
    let mut factors = prefix_factors(g0);
    factors.push(form);
    finish(r, family, TableCase { row, i }, n, g, factors)
}

/// `d` pairs `(λ_s, 1)` with distinct random nonzero `λ_s`.
pub fn random_factor_spec<R: Rng + ?Sized>(row: u8, i: u32, n: u32, rng: &mut R) -> Result<FactorSpec> {
    let (d, _) = row_shape(row, i, n)?;
    let mut lambdas: Vec<Scalar> = Vec::new();
    while lambdas.len() < d as usize {
        let l = random_rational(rng);
        if !lambdas.contains(&l) {
            lambdas.push(l);
        }
    }
    Ok(FactorSpec {
        case_id: row,
        i,
        d,
        factors: lambdas.into_iter().map(|l| (l, int(1))).collect(),
    })
}

/// Checks that a row's column is proportional to the cross-product solution.
pub fn row_abc_matches_segment(row: u8, i: u32, n: u32) -> Result<bool> {
    let (p, q) = row_points(row, i, n)?;
    let h = segment_through(p, q, n)?;
    let solved = crate::syzygy::solve_abc(&h)?;
    Ok(normalize_triple(row_abc(row, i, n)?) == solved)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomogeneousPolynomial {
        s.parse().unwrap()
    }

    fn spec(row: u8, i: u32, pairs: &[(i64, i64)]) -> FactorSpec {
        FactorSpec {
            case_id: row,
            i,
            d: pairs.len() as u32,
            factors: pairs.iter().map(|&(a, b)| (int(a), int(b))).collect(),
        }
    }

    #[test]
    fn admissible_count_at_four() {
        assert_eq!(admissible_cases(4).len(), 13);
        assert_eq!(admissible_cases(5).len(), 19);
    }

    #[test]
    fn row_one_last_from_binary_form() {
        let t = [int(-1), int(0), int(0), int(1)];
        let cert = table1_curve_from_form(1, 3, 4, &t).unwrap();
        assert_eq!(cert.g, p("x^3*z - y^3*z"));
        assert_eq!(cert.abc.unwrap(), [3, 3, -9]);
    }

    #[test]
    fn row_one_last_split() {
        let (d, shape) = row_shape(1, 3, 4).unwrap();
        assert_eq!((d, shape), (3, [1, -1, 0]));
        let cert = table1_curve(&spec(1, 3, &[(-1, 1), (-2, 1), (-3, 1)]), 4, true).unwrap();
        assert_eq!(cert.g, p("z") * p("-y + x") * p("-2*y + x") * p("-3*y + x"));
        assert_eq!(normalize_triple(cert.abc.unwrap()), [1, 1, -3]);
        assert_eq!(cert.abc.unwrap(), [3, 3, -9]);
        assert_eq!(cert.family, CurveFamily::NearPencil);
    }

    #[test]
    fn row_one_first() {
        let cert = table1_curve(&spec(1, 1, &[(2, 5)]), 4, true).unwrap();
        assert_eq!(cert.g, p("2*y^3*z + 5*x*z^3"));
    }

    #[test]
    fn row_six_zero() {
        let cert = table1_curve(&spec(6, 0, &[(2, 3)]), 5, true).unwrap();
        assert_eq!(cert.g, p("2*x*y^3*z + 3*y*z^4"));
        assert_eq!(cert.abc.unwrap(), [11, -4, 1]);
    }

    #[test]
    fn every_column_matches_its_segment() {
        for n in 4..12 {
            for (row, i) in admissible_cases(n) {
                assert!(row_abc_matches_segment(row, i, n).unwrap(), "row {row} i {i} n {n}");
            }
        }
    }

    #[test]
    fn omitted_cases_resolve_to_parent() {
        let c = table1_curve(&spec(2, 2, &[(1, 1), (2, 1), (3, 1)]), 4, true).unwrap();
        assert!(c.notice.is_some());
        let parent = table1_curve(&spec(1, 3, &[(1, 1), (2, 1), (3, 1)]), 4, true).unwrap();
        assert_eq!(c.g, parent.g);
        assert!(table1_curve(&spec(2, 2, &[(1, 1)]), 4, true).is_err());
    }

    #[test]
    fn repeated_factors_rejected_only_when_asked() {
        let s = spec(1, 3, &[(1, 1), (2, 2), (3, 1)]);
        assert!(table1_curve(&s, 4, true).is_err());
        assert!(table1_curve(&s, 4, false).is_ok());
    }

    #[test]
    fn range_errors() {
        assert!(table1_curve(&spec(1, 0, &[(1, 1)]), 4, true).is_err());
        assert!(table1_curve(&spec(7, 1, &[(1, 1)]), 4, true).is_err());
        assert!(row_points(1, 1, 3).is_err());
    }

    #[test]
    fn families() {
        let e = ExponentTriple::new;
        assert_eq!(family_of_pair(e(0, 2, 0), e(1, 0, 1)), CurveFamily::BitangentConics);
        assert_eq!(family_of_pair(e(0, 3, 0), e(1, 0, 2)), CurveFamily::UnicuspidalPencil);
        assert_eq!(family_of_pair(e(0, 5, 0), e(2, 0, 3)), CurveFamily::BicuspidalPencil);
        assert_eq!(family_of_pair(e(1, 2, 0), e(0, 0, 3)), CurveFamily::UnicuspidalPencil);
        let c = table1_curve(&spec(6, 0, &[(2, 3)]), 5, true).unwrap();
        assert_eq!(c.family, CurveFamily::UnicuspidalPencil);
    }
}
