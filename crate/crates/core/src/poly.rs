//! Dense complex polynomials and Laurent polynomials.
//!
//! Coefficients are stored by ascending power. Degrees in this crate stay in
//! the low hundreds, so everything is dense and evaluated with Horner.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial `sum_j coeffs[j] z^j`.
///
/// The degree is structural: `coeffs.len() - 1`, even if the top coefficient
/// happens to be zero. Reversal relative to a declared degree depends on
/// this, so coefficients are never trimmed implicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Self { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul_linear(r);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the highest coefficient with modulus above `tol`.
    pub fn effective_degree(&self, tol: f64) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > tol)
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    /// `z^d conj(p)(1/z)`: conjugate the coefficients and reverse them with
    /// respect to `declared_degree`, padding with zeros as needed.
    ///
    /// Panics if a nonzero coefficient sits above `declared_degree`.
    pub fn reverse(&self, declared_degree: usize) -> Self {
        assert!(
            declared_degree >= self.effective_degree(0.0),
            "declared degree {declared_degree} is below the polynomial degree {}",
            self.degree()
        );
        let coeffs = (0..=declared_degree)
            .map(|j| self.coeff(declared_degree - j).conj())
            .collect();
        Self { coeffs }
    }

    /// Reversal with respect to the structural degree.
    pub fn star(&self) -> Self {
        self.reverse(self.degree())
    }

    /// `z^k p(z)`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// `(z - root) p(z)`.
    pub fn mul_linear(&self, root: Complex64) -> Self {
        let mut coeffs = vec![ZERO; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] += c;
            coeffs[j] -= root * c;
        }
        Self { coeffs }
    }

    /// Synthetic division by `(z - root)`; returns quotient and remainder.
    pub fn divide_linear(&self, root: Complex64) -> (Self, Complex64) {
        let d = self.degree();
        if d == 0 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![ZERO; d];
        let mut carry = ZERO;
        for j in (0..=d).rev() {
            let next = self.coeffs[j] + carry * root;
            if j == 0 {
                return (Self::new(q), next);
            }
            q[j - 1] = next;
            carry = next;
        }
        unreachable!()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient moduli; bounds `|p(z)|` on the unit circle.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Largest coefficient difference, treating missing entries as zero.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|j| (self.coeff(j) - other.coeff(j)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Mul<Complex64> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: Complex64) -> Poly {
        self.scale(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

/// Laurent polynomial `sum_j coeffs[j] z^(low + j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Complex64>,
}

impl Laurent {
    pub fn new(low: i64, coeffs: Vec<Complex64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![ZERO] } else { coeffs };
        Self { low, coeffs }
    }

    /// `z^k`.
    pub fn monomial(k: i64) -> Self {
        Self::new(k, vec![ONE])
    }

    /// `p(z) z^(-shift)`.
    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        Self::new(-shift, p.coeffs().to_vec())
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(j, &c)| (self.low + j as i64, c))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let body = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        body * z.powi(self.low as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reverse_real_linear() {
        let p = Poly::from_real(&[0.5, 1.0]);
        assert_eq!(p.reverse(1), Poly::from_real(&[1.0, 0.5]));
    }

    #[test]
    fn reverse_monomial_is_one() {
        for n in 0..6 {
            let r = Poly::monomial(n).reverse(n);
            assert_eq!(r.coeff(0), ONE);
            assert_eq!(r.effective_degree(0.0), 0);
            assert_eq!(r.degree(), n);
        }
    }

    #[test]
    fn reverse_pads_and_conjugates() {
        let p = Poly::constant(c(0.0, 1.0));
        let r = p.reverse(2);
        assert_eq!(r.coeffs(), &[ZERO, ZERO, c(0.0, -1.0)]);
    }

    #[test]
    #[should_panic]
    fn reverse_below_degree_panics() {
        Poly::from_real(&[1.0, 2.0, 3.0]).reverse(1);
    }

    #[test]
    fn synthetic_division() {
        // z^2 - (1 + z)/2 = (z - 1)(z + 1/2)
        let p = Poly::from_real(&[-0.5, -0.5, 1.0]);
        let (q, r) = p.divide_linear(ONE);
        assert!(r.norm() < 1e-15);
        assert!(q.max_coeff_diff(&Poly::from_real(&[0.5, 1.0])) < 1e-15);
    }

    #[test]
    fn derivative_and_horner_agree() {
        let p = Poly::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(2.0, 0.0)]);
        let z = c(0.3, -0.7);
        let (v, dv) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-14);
        assert!((dv - p.derivative().eval(z)).norm() < 1e-14);
    }

    #[test]
    fn laurent_eval() {
        let f = Laurent::new(-1, vec![ONE, ZERO, ONE]);
        let z = crate::cis(0.4);
        assert!((f.eval(z) - c(2.0 * 0.4f64.cos(), 0.0)).norm() < 1e-15);
        assert_eq!((f.low(), f.high()), (-1, 1));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12)
            .prop_map(|v| Poly::new(v.into_iter().map(|(a, b)| c(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(p in arb_poly(), pad in 0usize..4) {
            let d = p.degree() + pad;
            let back = p.reverse(d).reverse(d);
            prop_assert!(back.max_coeff_diff(&p) == 0.0);
        }

        #[test]
        fn star_matches_definition_on_circle(p in arb_poly(), theta in 0.0f64..6.28) {
            let z = crate::cis(theta);
            let n = p.degree() as i32;
            let lhs = p.star().eval(z);
            let rhs = z.powi(n) * p.eval(z).conj();
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + p.l1_norm()));
        }

        #[test]
        fn divide_then_multiply(p in arb_poly(), theta in 0.0f64..6.28) {
            let root = crate::cis(theta);
            let (q, r) = p.divide_linear(root);
            let back = &q.mul_linear(root) + &Poly::constant(r);
            prop_assert!(back.max_coeff_diff(&p) < 1e-12 * (1.0 + p.l1_norm()));
        }
    }
}
