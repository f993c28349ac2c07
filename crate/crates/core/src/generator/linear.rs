//! Forms annihilated by a fixed linear vector field, and the conjugation check
//! for linear syzygies under a change of coordinates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{det, kernel, rref};
use crate::poly::{int, ExponentTriple, HomogeneousPolynomial, Scalar, Var};

/// Kernel of `g ↦ A ∂_x g + B ∂_y g + C ∂_z g` on degree-`n` forms.
pub fn linear_syzygy_solution_space(
    a: &HomogeneousPolynomial,
    b: &HomogeneousPolynomial,
    c: &HomogeneousPolynomial,
    n: u32,
) -> Result<Vec<HomogeneousPolynomial>> {
    for f in [a, b, c] {
        if f.degree() != 1 {
            return Err(Error::DegreeMismatch(1, f.degree()));
        }
    }
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Precondition("the vector field is zero".into()));
    }
    let monos = ExponentTriple::all_of_degree(n);
    let cols: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|&e| {
            let m = HomogeneousPolynomial::monomial(e, int(1));
            let image = &(&(a * &m.partial(Var::X)) + &(b * &m.partial(Var::Y))) + &(c * &m.partial(Var::Z));
            monos.iter().map(|&r| image.coeff(r)).collect()
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = (0..monos.len())
        .map(|r| cols.iter().map(|col| col[r].clone()).collect())
        .collect();
    Ok(kernel(&rows, monos.len())
        .into_iter()
        .map(|v| {
            HomogeneousPolynomial::from_terms(n, monos.iter().copied().zip(v)).expect("degree n")
        })
        .collect())
}

/// Reduced row echelon form of a list of forms of degree `n`, one row per form.
pub fn span_echelon(basis: &[HomogeneousPolynomial], n: u32) -> Vec<Vec<Scalar>> {
    let monos = ExponentTriple::all_of_degree(n);
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|g| monos.iter().map(|&e| g.coeff(e)).collect())
        .collect();
    rref(&rows, monos.len())
}

/// `(ax + y, ay + z, az)`.
pub fn jordan_block_field(a: &Scalar) -> [HomogeneousPolynomial; 3] {
    let l = |c: [Scalar; 3]| HomogeneousPolynomial::linear(c);
    [
        l([a.clone(), int(1), int(0)]),
        l([int(0), a.clone(), int(1)]),
        l([int(0), int(0), a.clone()]),
    ]
}

/// `(ax + y, ay, cz)`.
pub fn split_block_field(a: &Scalar, c: &Scalar) -> [HomogeneousPolynomial; 3] {
    let l = |v: [Scalar; 3]| HomogeneousPolynomial::linear(v);
    [
        l([a.clone(), int(1), int(0)]),
        l([int(0), a.clone(), int(0)]),
        l([int(0), int(0), c.clone()]),
    ]
}

/// Values `k` in `0..=n` with `a(n−k) + ck = 0`.
pub fn split_block_resonances(a: &Scalar, c: &Scalar, n: u32) -> Vec<u32> {
    (0..=n)
        .filter(|&k| (a * int((n - k) as i64) + c * int(k as i64)).is_zero())
        .collect()
}

fn inverse3(m: &[[Scalar; 3]; 3]) -> Result<[[Scalar; 3]; 3]> {
    let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
    let d = det(&rows);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let cof = |r: usize, c: usize| {
        let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        &m[rs[0]][cs[0]] * &m[rs[1]][cs[1]] - &m[rs[0]][cs[1]] * &m[rs[1]][cs[0]]
    };
    let mut out: [[Scalar; 3]; 3] = Default::default();
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            let sign = if (r + c) % 2 == 0 { int(1) } else { int(-1) };
            // adjugate is the transposed cofactor matrix
            *v = sign * cof(c, r) / &d;
        }
    }
    Ok(out)
}

fn matmul(a: &[[Scalar; 3]; 3], b: &[[Scalar; 3]; 3]) -> [[Scalar; 3]; 3] {
    let mut out: [[Scalar; 3]; 3] = Default::default();
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = (0..3).map(|t| &a[r][t] * &b[t][c]).sum();
        }
    }
    out
}

/// Substitutes `v ↦ N v` in `g` and conjugates the syzygy `H v` to
/// `N⁻¹ H N v`; true when the result annihilates the new gradient.
pub fn conjugate_syzygy_check(
    h: &[[Scalar; 3]; 3],
    nmat: &[[Scalar; 3]; 3],
    g: &HomogeneousPolynomial,
) -> Result<bool> {
    let inv = inverse3(nmat)?;
    let conj = matmul(&inv, &matmul(h, nmat));
    let gp = g.substitute_linear(nmat);
    let grad = gp.gradient();
    let mut acc = HomogeneousPolynomial::zero(gp.degree());
    for s in 0..3 {
        let entry = HomogeneousPolynomial::linear(conj[s].clone());
        acc = &acc + &(&entry * &grad[s]);
    }
    Ok(acc.is_zero())
}
