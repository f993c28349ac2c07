//! Checks computed from `g` alone by linear algebra on Macaulay matrices,
//! without reusing the constructions that produced the curve.

pub mod checks;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, rank};
use crate::poly::{int, monomial_count, scalar_text, ExponentTriple, HomogeneousPolynomial, Scalar, Var};
use crate::syzygy::{g_from_matrix, HilbertBurchMatrix, SyzygyColumn};
use crate::univariate::squarefree_test;

pub use checks::{run_checks, Check, CheckOutcome, CheckStatus, Verdicts};

/// Trials used by the squarefree guard in front of the Hilbert-function checks.
pub const SQUAREFREE_TRIALS: usize = 16;

/// Column `(s, m)` holds the coefficients of `m · ∂_s g` on the degree-`(k+n−1)` monomials.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub k: u32,
    pub row_monomials: Vec<ExponentTriple>,
    pub columns: Vec<(Var, ExponentTriple)>,
    pub rows: Vec<Vec<Scalar>>,
}

impl MacaulayMatrix {
    pub fn new(g: &HomogeneousPolynomial, k: u32) -> Self {
        let n = g.degree();
        let row_monomials = ExponentTriple::all_of_degree(k + n - 1);
        let index: std::collections::HashMap<ExponentTriple, usize> =
            row_monomials.iter().enumerate().map(|(a, e)| (*e, a)).collect();
        let mut columns = Vec::new();
        for v in Var::ALL {
            for m in ExponentTriple::all_of_degree(k) {
                columns.push((v, m));
            }
        }
        let mut rows = vec![vec![Scalar::zero(); columns.len()]; row_monomials.len()];
        let grad = g.gradient();
        for (c, (v, m)) in columns.iter().enumerate() {
            for (e, coeff) in grad[v.index()].terms() {
                rows[index[&(*e + *m)]][c] = coeff.clone();
            }
        }
        MacaulayMatrix {
            k,
            row_monomials,
            columns,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows, self.columns.len())
    }
}

fn check_input(g: &HomogeneousPolynomial) -> Result<()> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.degree() < 3 {
        return Err(Error::GridTooSmall { n: g.degree(), min: 3 });
    }
    Ok(())
}

/// Basis of `Syz(J_g)_k`, each element expanded and checked before return.
pub fn syzygy_space(g: &HomogeneousPolynomial, k: u32) -> Result<Vec<SyzygyColumn>> {
    check_input(g)?;
    let m = MacaulayMatrix::new(g, k);
    let per = monomial_count(k as i64);
    let mut out = Vec::new();
    for v in kernel(&m.rows, m.columns.len()) {
        let mut entries = [(); 3].map(|_| HomogeneousPolynomial::zero(k));
        for (slot, e) in entries.iter_mut().enumerate() {
            *e = HomogeneousPolynomial::from_terms(
                k,
                m.columns[slot * per..(slot + 1) * per]
                    .iter()
                    .map(|(_, mono)| *mono)
                    .zip(v[slot * per..(slot + 1) * per].iter().cloned()),
            )?;
        }
        let col = SyzygyColumn::new(entries)?;
        if !col.apply_to_gradient(g).is_zero() {
            return Err(Error::Inconsistent);
        }
        out.push(col);
    }
    Ok(out)
}

/// `dim Syz(J_g)_k`.
pub fn syzygy_dimension(g: &HomogeneousPolynomial, k: u32) -> usize {
    let m = MacaulayMatrix::new(g, k);
    m.columns.len() - m.rank()
}

/// `dim (J_g)_d`.
pub fn jacobian_dimension(g: &HomogeneousPolynomial, d: u32) -> usize {
    let n = g.degree();
    if d + 1 < n {
        return 0;
    }
    MacaulayMatrix::new(g, d + 1 - n).rank()
}

/// Rejects non-reduced input and curves whose partials are dependent.
pub fn check_reduced_and_independent(g: &HomogeneousPolynomial) -> Result<()> {
    check_input(g)?;
    if !squarefree_test(g, SQUAREFREE_TRIALS)? {
        return Err(Error::NotReduced);
    }
    let monos = ExponentTriple::all_of_degree(g.degree() - 1);
    let rows: Vec<Vec<Scalar>> = g
        .gradient()
        .iter()
        .map(|p| monos.iter().map(|&e| p.coeff(e)).collect())
        .collect();
    if rank(&rows, monos.len()) < 3 {
        return Err(Error::ConcurrentLines);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhPoint {
    #[serde(with = "scalar_text::triple")]
    pub point: [Scalar; 3],
    pub rank: usize,
    pub qh: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessVerdict {
    pub is_free: bool,
    pub exponents: Option<[u32; 2]>,
    pub tjurina: Option<u64>,
    /// `[k, observed, predicted]`.
    pub profile: Vec<[u64; 3]>,
    pub qh: Vec<QhPoint>,
}

/// `dim R_{k−1} + dim R_{k−n+2}`: the syzygy dimensions of a free curve with exponents `(1, n−2)`.
pub fn predicted_syzygy_dimension(n: u32, k: u32) -> usize {
    let k = k as i64;
    let n = n as i64;
    monomial_count(k - 1) + monomial_count(k - n + 2)
}

/// Compares `dim Syz(J_g)_k` against the `(1, n−2)` prediction for `k = 0..=kmax`.
pub fn freeness_profile(g: &HomogeneousPolynomial, kmax: u32) -> Result<FreenessVerdict> {
    check_reduced_and_independent(g)?;
    let n = g.degree();
    let profile: Vec<[u64; 3]> = (0..=kmax)
        .map(|k| {
            [
                k as u64,
                syzygy_dimension(g, k) as u64,
                predicted_syzygy_dimension(n, k) as u64,
            ]
        })
        .collect();
    let is_free = kmax > n && profile.iter().all(|r| r[1] == r[2]);
    Ok(FreenessVerdict {
        is_free,
        exponents: is_free.then_some([1, n - 2]),
        tjurina: None,
        profile,
        qh: Vec::new(),
    })
}

/// `dim (R/J_g)_k` at `k = 3(n−2)` and `k + 1`; both must agree.
pub fn tjurina_number(g: &HomogeneousPolynomial) -> Result<u64> {
    check_input(g)?;
    if !squarefree_test(g, SQUAREFREE_TRIALS)? {
        return Err(Error::NotReduced);
    }
    let n = g.degree();
    let k = 3 * (n - 2);
    let at = |d: u32| (monomial_count(d as i64) - jacobian_dimension(g, d)) as u64;
    let (t0, t1) = (at(k), at(k + 1));
    if t0 != t1 {
        return Err(Error::PlateauMismatch(t0, t1, k, k + 1));
    }
    Ok(t0)
}

/// Rank of the matrix evaluated at a singular point `p`.
pub fn qh_rank_at_point(m: &HilbertBurchMatrix, p: &[Scalar; 3]) -> Result<(usize, bool)> {
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("the point (0, 0, 0) is not projective".into()));
    }
    let g = g_from_matrix(m);
    if g.is_zero() || g.gradient().iter().any(|d| !d.evaluate(p).is_zero()) {
        return Err(Error::NotSingular);
    }
    let ev = m.evaluate(p);
    let rows: Vec<Vec<Scalar>> = ev.iter().map(|r| r.to_vec()).collect();
    let r = rank(&rows, 2);
    Ok((r, r >= 1))
}

fn normalize_point(p: [Scalar; 3]) -> Option<[Scalar; 3]> {
    let lead = p.iter().find(|c| !c.is_zero())?.clone();
    Some(p.map(|c| c / &lead))
}

/// Coordinate points and pairwise intersections of the linear factors that are
/// singular points of `g`.
pub fn rational_singular_points(g: &HomogeneousPolynomial, factors: &[HomogeneousPolynomial]) -> Vec<[Scalar; 3]> {
    let mut cand: Vec<[Scalar; 3]> = (0..3)
        .map(|v| [0, 1, 2].map(|s| if s == v { Scalar::one() } else { Scalar::zero() }))
        .collect();
    let lines: Vec<[Scalar; 3]> = factors
        .iter()
        .filter(|f| f.degree() == 1)
        .map(|f| [Var::X, Var::Y, Var::Z].map(|v| f.coeff(unit(v))))
        .collect();
    for (a, l) in lines.iter().enumerate() {
        for m in &lines[a + 1..] {
            let c = [
                &l[1] * &m[2] - &l[2] * &m[1],
                &l[2] * &m[0] - &l[0] * &m[2],
                &l[0] * &m[1] - &l[1] * &m[0],
            ];
            if let Some(p) = normalize_point(c) {
                cand.push(p);
            }
        }
    }
    let grad = g.gradient();
    let mut out: Vec<[Scalar; 3]> = Vec::new();
    for p in cand {
        let p = normalize_point(p).expect("nonzero");
        if out.contains(&p) {
            continue;
        }
        if grad.iter().all(|d| d.evaluate(&p).is_zero()) {
            out.push(p);
        }
    }
    out
}

fn unit(v: Var) -> ExponentTriple {
    let mut e = [0; 3];
    e[v.index()] = 1;
    ExponentTriple(e)
}

/// The mixed-partials column of a curve with syzygy `(ax, by, cz)`, `abc ≠ 0`.
pub fn buchweitz_conca_column(g: &HomogeneousPolynomial, abc: &[Scalar; 3]) -> Result<SyzygyColumn> {
    if abc.iter().any(|c| c.is_zero()) {
        return Err(Error::Precondition("a, b and c must all be nonzero".into()));
    }
    if !SyzygyColumn::diagonal(abc).apply_to_gradient(g).is_zero() {
        return Err(Error::Precondition("(ax, by, cz) is not a syzygy of g".into()));
    }
    let n = g.degree();
    let [a, b, c] = abc;
    let one = Scalar::one();
    let s = Scalar::new(1.into(), (n + 2).into());
    let d = |u: Var, v: Var| g.partial(u).partial(v);
    use Var::*;
    SyzygyColumn::new([
        d(Y, Z).scale(&((&one / c - &one / b) * &s)),
        d(X, Z).scale(&((&one / a - &one / c) * &s)),
        d(X, Y).scale(&((&one / b - &one / a) * &s)),
    ])
}

/// True when the mixed-partials column is a syzygy and, with the multiples of
/// `(ax, by, cz)`, spans `Syz(J_g)_{n−2}`.
pub fn buchweitz_conca_check(g: &HomogeneousPolynomial, abc: &[Scalar; 3]) -> Result<bool> {
    let col = buchweitz_conca_column(g, abc)?;
    if col.is_zero() || !col.apply_to_gradient(g).is_zero() {
        return Ok(false);
    }
    let n = g.degree();
    let k = n - 2;
    let lin = SyzygyColumn::diagonal(abc);
    let flat = |c: &SyzygyColumn| -> Vec<Scalar> {
        let monos = ExponentTriple::all_of_degree(k);
        (0..3)
            .flat_map(|s| monos.iter().map(move |&m| (s, m)))
            .map(|(s, m)| c.entries()[s].coeff(m))
            .collect()
    };
    let mut rows: Vec<Vec<Scalar>> = ExponentTriple::all_of_degree(k - 1)
        .into_iter()
        .map(|m| {
            let mono = HomogeneousPolynomial::monomial(m, int(1));
            let shifted = SyzygyColumn::new(lin.entries().clone().map(|e| &e * &mono)).expect("same degree");
            flat(&shifted)
        })
        .collect();
    let ncols = 3 * monomial_count(k as i64);
    let base = rank(&rows, ncols);
    rows.push(flat(&col));
    let with = rank(&rows, ncols);
    Ok(with == base + 1 && with == syzygy_dimension(g, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(s: &str) -> HomogeneousPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn linear_syzygy_found() {
        let g = p("x^3*z - y^3*z");
        let basis = syzygy_space(&g, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let want = SyzygyColumn::diagonal(&[int(1), int(1), int(-3)]);
        assert!(crate::syzygy::columns_proportional(&basis[0], &want));
    }

    #[test]
    fn profile_and_tjurina_of_running_example() {
        let g = p("x^3*z - y^3*z");
        let v = freeness_profile(&g, 5).unwrap();
        let obs: Vec<u64> = v.profile.iter().map(|r| r[1]).collect();
        assert_eq!(obs, vec![0, 1, 4, 9, 16, 25]);
        assert!(v.is_free);
        assert_eq!(v.exponents, Some([1, 2]));
        assert_eq!(tjurina_number(&g).unwrap(), 7);
    }

    #[test]
    fn triangle_and_nearly_free() {
        assert_eq!(tjurina_number(&p("x*y*z")).unwrap(), 3);
        let nf = &p("y^2 - x*z") * &p("y^2 - 2*x*z");
        assert_eq!(tjurina_number(&nf).unwrap(), 6);
        assert!(!freeness_profile(&nf, 5).unwrap().is_free);
    }

    #[test]
    fn guards() {
        let fermat = p("x^4 + y^4 + z^4");
        let v = freeness_profile(&fermat, 5).unwrap();
        assert!(!v.is_free);
        assert_eq!(v.profile[1][1], 0);
        assert_eq!(v.profile[1][2], 1);
        assert_eq!(freeness_profile(&p("x^2*y*z"), 5), Err(Error::NotReduced));
        let pencil = p("x^3 - x*y^2");
        assert_eq!(freeness_profile(&pencil, 4), Err(Error::ConcurrentLines));
        assert_eq!(tjurina_number(&p("x^2*y*z")), Err(Error::NotReduced));
    }

    #[test]
    fn qh_examples() {
        let lin = SyzygyColumn::diagonal(&[int(1), int(1), int(-3)]);
        let g = p("x^3*z - y^3*z");
        let high = crate::generator::complete_high_column(&g, &lin).unwrap();
        let m = HilbertBurchMatrix::new(lin, high, 4).unwrap();
        let (r, qh) = qh_rank_at_point(&m, &[int(0), int(0), int(1)]).unwrap();
        assert!(r >= 1 && qh);
        assert_eq!(qh_rank_at_point(&m, &[int(1), int(0), int(0)]), Err(Error::NotSingular));
    }

    #[test]
    fn singular_candidates() {
        let g = p("x^3*z - y^3*z");
        let pts = rational_singular_points(&g, &[p("z")]);
        assert_eq!(pts, vec![[int(0), int(0), int(1)]]);
        let lines = [p("x"), p("y"), p("z")];
        let t = rational_singular_points(&p("x*y*z"), &lines);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn buchweitz_conca_guards() {
        let g = p("x^3*z - y^3*z");
        assert!(buchweitz_conca_check(&g, &[int(1), int(1), int(-3)]).is_ok());
        assert!(buchweitz_conca_check(&g, &[int(1), int(2), int(3)]).is_err());
        assert!(buchweitz_conca_check(&g, &[int(1), int(0), int(3)]).is_err());
    }
}
