//! Dense univariate polynomials and the line-restriction squarefree test.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{int, HomogeneousPolynomial, Scalar};

/// Coefficients lowest degree first; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Scalar>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                let shift = top - dd;
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let t = c * &q;
                    r[shift + i] -= t;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => Self::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    pub fn evaluate(&self, t: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * t + c)
    }
}

/// `t ↦ g(p0 + t·p1)`.
pub fn restrict_to_line(g: &HomogeneousPolynomial, p0: &[Scalar; 3], p1: &[Scalar; 3]) -> UnivariatePolynomial {
    let n = g.degree() as usize;
    let powers: Vec<Vec<UnivariatePolynomial>> = (0..3)
        .map(|v| {
            let lin = UnivariatePolynomial::new(vec![p0[v].clone(), p1[v].clone()]);
            let mut p = vec![UnivariatePolynomial::new(vec![Scalar::one()])];
            for e in 1..=n {
                let next = p[e - 1].mul(&lin);
                p.push(next);
            }
            p
        })
        .collect();
    let mut out = UnivariatePolynomial::zero();
    for (e, c) in g.terms() {
        let t = powers[0][e.i() as usize]
            .mul(&powers[1][e.j() as usize])
            .mul(&powers[2][e.k() as usize]);
        let scaled = UnivariatePolynomial::new(t.coeffs.iter().map(|x| x * c).collect());
        out = out.add(&scaled);
    }
    out
}

const LINE_BOUND: i64 = 97;
const DEFAULT_SEED: u64 = 0x5eed_f4ee;

/// Squarefree test with the crate's fixed default seed.
pub fn squarefree_test(g: &HomogeneousPolynomial, trials: usize) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    squarefree_test_with_rng(g, trials, &mut rng)
}

/// Restricts `g` to `trials` random lines `P0 + t·P1` and looks for a clean one:
/// full degree `n` and `gcd(h, h')` constant. A clean restriction proves `g`
/// squarefree. A repeated factor makes every restriction unclean, so when no
/// trial is clean the answer is `false`.
pub fn squarefree_test_with_rng<R: Rng + ?Sized>(
    g: &HomogeneousPolynomial,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = g.degree() as usize;
    if n <= 1 {
        return Ok(true);
    }
    let draw = |rng: &mut R| -> [Scalar; 3] {
        [(); 3].map(|_| int(rng.gen_range(-LINE_BOUND..=LINE_BOUND)))
    };
    for _ in 0..trials {
        let p0 = draw(rng);
        let p1 = draw(rng);
        let h = restrict_to_line(g, &p0, &p1);
        if h.degree() != Some(n) {
            continue;
        }
        if h.gcd(&h.derivative()).degree() == Some(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn gcd_finds_common_root() {
        // (t-1)(t-2) and (t-1)(t+3)
        let g = u(&[2, -3, 1]).gcd(&u(&[-3, 2, 1]));
        assert_eq!(g, u(&[-1, 1]));
    }

    #[test]
    fn derivative_and_trim() {
        assert_eq!(u(&[5, 0, 3, 0, 0]).derivative(), u(&[0, 6]));
        assert_eq!(u(&[0, 0]).degree(), None);
    }

    #[test]
    fn restriction_matches_evaluation() {
        let g: HomogeneousPolynomial = "x^2*y - 3*y*z^2 + z^3".parse().unwrap();
        let p0 = [int(1), int(-2), int(3)];
        let p1 = [int(4), int(0), int(-1)];
        let h = restrict_to_line(&g, &p0, &p1);
        for t in -3..4 {
            let t = int(t);
            let pt = [0, 1, 2].map(|v| &p0[v] + &t * &p1[v]);
            assert_eq!(h.evaluate(&t), g.evaluate(&pt));
        }
    }

    #[test]
    fn squarefree_examples() {
        let sq: HomogeneousPolynomial = "x^2*y*z".parse().unwrap();
        assert!(!squarefree_test(&sq, 5).unwrap());
        let ok: HomogeneousPolynomial = "x^3*z - y^3*z".parse().unwrap();
        assert!(squarefree_test(&ok, 5).unwrap());
        assert_eq!(
            squarefree_test(&HomogeneousPolynomial::zero(3), 5),
            Err(Error::ZeroPolynomial)
        );
    }
}
