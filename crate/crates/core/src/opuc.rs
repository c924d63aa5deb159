//! Monic Szegő polynomials, reversals, norms and kernels built from a
//! sequence of Schur (Verblunsky) parameters.

use num_complex::Complex64;

use crate::poly::Poly;
use crate::{Error, Result};

/// Margin below the unit circle every Schur parameter must respect.
pub const SCHUR_GUARD: f64 = 1e-12;

/// Threshold on `|1 - conj(y) z|` below which the Christoffel–Darboux
/// quotient is refused.
pub const NEAR_DIAGONAL: f64 = 1e-8;

/// Schur parameters `a_1, a_2, ...` with `a_n = Phi_n(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurSequence {
    coeffs: Vec<Complex64>,
}

impl SchurSequence {
    /// Checks `|a_n| <= 1 - 1e-12` for every entry.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some((i, a)) = coeffs
            .iter()
            .enumerate()
            .find(|(_, a)| a.norm() > 1.0 - SCHUR_GUARD)
        {
            return Err(Error::SchurOutOfDisk {
                index: i + 1,
                modulus: a.norm(),
            });
        }
        Ok(Self { coeffs })
    }

    /// All-zero parameters: normalized Lebesgue measure.
    pub fn lebesgue(max_order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); max_order],
        }
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for `1 <= n <= max_order`.
    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The first `n` parameters.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            coeffs: self.coeffs[..n.min(self.coeffs.len())].to_vec(),
        }
    }
}

/// `Phi_0..Phi_N`, their reversals and the squared norms `e_0..e_N`.
#[derive(Clone, Debug)]
pub struct OpucTable {
    phi: Vec<Poly>,
    phi_star: Vec<Poly>,
    e: Vec<f64>,
}

/// Runs the Szegő recurrence
/// `Phi_{n+1} = z Phi_n + a_{n+1} Phi_n^*`, `Phi_{n+1}^* = Phi_n^* + conj(a_{n+1}) z Phi_n`
/// up to `n_max`.
pub fn build_opuc(schur: &SchurSequence, n_max: usize) -> Result<OpucTable> {
    if n_max > schur.max_order() {
        return Err(Error::OrderOutOfRange {
            requested: n_max,
            available: schur.max_order(),
        });
    }
    let mut phi = Vec::with_capacity(n_max + 1);
    let mut phi_star = Vec::with_capacity(n_max + 1);
    let mut e = Vec::with_capacity(n_max + 1);
    phi.push(Poly::one());
    phi_star.push(Poly::one());
    e.push(1.0);
    for n in 0..n_max {
        let a = schur.get(n + 1);
        if a.norm() > 1.0 - SCHUR_GUARD {
            return Err(Error::SchurOutOfDisk {
                index: n + 1,
                modulus: a.norm(),
            });
        }
        let z_phi = phi[n].shift(1);
        let next = &z_phi + &(&phi_star[n] * a);
        let next_star = &phi_star[n].shift(0) + &(&z_phi * a.conj());
        // keep the exact monic leading coefficient
        let mut coeffs = next.coeffs().to_vec();
        coeffs[n + 1] = Complex64::new(1.0, 0.0);
        phi.push(Poly::new(coeffs));
        phi_star.push(next_star);
        e.push(e[n] * (1.0 - a.norm_sqr()));
    }
    Ok(OpucTable { phi, phi_star, e })
}

impl OpucTable {
    /// Largest `n` with `Phi_n` available.
    pub fn order(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, n: usize) -> &Poly {
        &self.phi[n]
    }

    pub fn phi_star(&self, n: usize) -> &Poly {
        &self.phi_star[n]
    }

    /// `e_n = <Phi_n, Phi_n>`.
    pub fn e(&self, n: usize) -> f64 {
        self.e[n]
    }

    /// Schur parameter `a_n = Phi_n(0)` for `n >= 1`.
    pub fn schur(&self, n: usize) -> Complex64 {
        self.phi[n].coeff(0)
    }

    pub fn schur_sequence(&self) -> SchurSequence {
        SchurSequence {
            coeffs: (1..=self.order()).map(|n| self.schur(n)).collect(),
        }
    }

    /// Orthonormal `phi_n = Phi_n / sqrt(e_n)`.
    pub fn orthonormal(&self, n: usize) -> Poly {
        self.phi[n].scale(Complex64::new(1.0 / self.e[n].sqrt(), 0.0))
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.order() {
            Err(Error::OrderOutOfRange {
                requested: n,
                available: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// `K_n(z, y)` through the Christoffel–Darboux formula
    /// `e_{n+1} (1 - conj(y) z) K_n(z, y) = Phi*_{n+1}(z) conj(Phi*_{n+1}(y)) - Phi_{n+1}(z) conj(Phi_{n+1}(y))`.
    ///
    /// Needs `n < order()`. Points with `|1 - conj(y) z| <= 1e-8` are refused;
    /// use [`kernel_diag`](Self::kernel_diag) or [`kernel_sum`](Self::kernel_sum) there.
    pub fn kernel_eval(&self, n: usize, z: Complex64, y: Complex64) -> Result<Complex64> {
        self.check_order(n + 1)?;
        let gap = (Complex64::new(1.0, 0.0) - y.conj() * z).norm();
        if gap <= NEAR_DIAGONAL {
            return Err(Error::NearDiagonal { gap });
        }
        let m = n + 1;
        let num = self.phi_star[m].eval(z) * self.phi_star[m].eval(y).conj()
            - self.phi[m].eval(z) * self.phi[m].eval(y).conj();
        Ok(num / (self.e[m] * (Complex64::new(1.0, 0.0) - y.conj() * z)))
    }

    /// Definitional sum `sum_{k <= n} Phi_k(z) conj(Phi_k(y)) / e_k`.
    pub fn kernel_sum(&self, n: usize, z: Complex64, y: Complex64) -> Result<Complex64> {
        self.check_order(n)?;
        Ok((0..=n)
            .map(|k| self.phi[k].eval(z) * self.phi[k].eval(y).conj() / self.e[k])
            .sum())
    }

    /// `K_n(z, z) = sum_{k <= n} |Phi_k(z)|^2 / e_k` for `z` on the circle.
    pub fn kernel_diag(&self, n: usize, z: Complex64) -> Result<f64> {
        self.check_order(n)?;
        let modulus = z.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::OffCircle { modulus });
        }
        Ok((0..=n)
            .map(|k| self.phi[k].eval(z).norm_sqr() / self.e[k])
            .sum())
    }

    /// `z -> K_n(z, y)` as a polynomial of degree `n`.
    pub fn kernel_poly(&self, n: usize, y: Complex64) -> Result<Poly> {
        self.check_order(n)?;
        let mut acc = Poly::zero();
        for k in 0..=n {
            let c = self.phi[k].eval(y).conj() / self.e[k];
            acc = &acc + &self.phi[k].scale(c);
        }
        Ok(acc)
    }
}

/// Second-kind polynomials `Omega_0..Omega_{n_max}` from
/// `Omega_{n+1} = z Omega_n - a_{n+1} Omega_n^*`, `Omega_0 = 1`.
///
/// They satisfy `Omega_n^* Phi_n + Omega_n Phi_n^* = 2 e_n z^n`.
pub fn second_kind(schur: &SchurSequence, n_max: usize) -> Result<Vec<Poly>> {
    if n_max > schur.max_order() {
        return Err(Error::OrderOutOfRange {
            requested: n_max,
            available: schur.max_order(),
        });
    }
    let mut omega = vec![Poly::one()];
    let mut omega_star = Poly::one();
    for n in 0..n_max {
        let a = schur.get(n + 1);
        if a.norm() > 1.0 - SCHUR_GUARD {
            return Err(Error::SchurOutOfDisk {
                index: n + 1,
                modulus: a.norm(),
            });
        }
        let z_omega = omega[n].shift(1);
        let next = &z_omega - &(&omega_star * a);
        omega_star = &omega_star.shift(0) - &(&z_omega * a.conj());
        omega.push(next);
    }
    Ok(omega)
}

/// Largest coefficient of `Omega_n^* Phi_n + Omega_n Phi_n^* - 2 e_n z^n`.
pub fn second_kind_residual(table: &OpucTable, omega: &[Poly], n: usize) -> f64 {
    let lhs = &(&omega[n].reverse(n) * table.phi(n)) + &(&omega[n] * table.phi_star(n));
    let rhs = Poly::monomial(n).scale(Complex64::new(2.0 * table.e(n), 0.0));
    lhs.max_coeff_diff(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cis;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example() -> SchurSequence {
        SchurSequence::new(vec![c(0.5, 0.0), c(-1.0 / 3.0, 0.0)]).unwrap()
    }

    #[test]
    fn lebesgue_is_monomials() {
        let t = build_opuc(&SchurSequence::lebesgue(3), 3).unwrap();
        assert_eq!(t.phi(3), &Poly::monomial(3));
        assert_eq!(t.e(3), 1.0);
        assert_eq!(t.phi_star(3).coeffs(), Poly::monomial(3).reverse(3).coeffs());
    }

    #[test]
    fn first_order_example() {
        let s = SchurSequence::new(vec![c(0.5, 0.0)]).unwrap();
        let t = build_opuc(&s, 1).unwrap();
        assert_eq!(t.phi(1), &Poly::from_real(&[0.5, 1.0]));
        assert!((t.e(1) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn second_order_example() {
        let t = build_opuc(&example(), 2).unwrap();
        let expected = Poly::from_real(&[-1.0 / 3.0, 1.0 / 3.0, 1.0]);
        assert!(t.phi(2).max_coeff_diff(&expected) < 1e-15);
        assert!((t.e(2) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.phi(2).leading(), c(1.0, 0.0));
    }

    #[test]
    fn out_of_disk_rejected() {
        let err = SchurSequence::new(vec![c(0.2, 0.0), c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::SchurOutOfDisk { index: 2, .. }));
        assert!(SchurSequence::new(vec![c(1.0 - 1e-13, 0.0)]).is_err());
        assert!(SchurSequence::new(vec![c(1.0 - 1e-11, 0.0)]).is_ok());
    }

    #[test]
    fn order_beyond_schur_rejected() {
        let err = build_opuc(&example(), 3).unwrap_err();
        assert_eq!(err, Error::OrderOutOfRange { requested: 3, available: 2 });
    }

    #[test]
    fn e_is_non_increasing() {
        let s = SchurSequence::new(vec![c(0.3, 0.1), c(0.0, 0.0), c(-0.5, 0.2)]).unwrap();
        let t = build_opuc(&s, 3).unwrap();
        assert!(t.e(1) < t.e(0));
        assert_eq!(t.e(2), t.e(1));
        assert!(t.e(3) < t.e(2));
    }

    #[test]
    fn second_kind_examples() {
        let om = second_kind(&SchurSequence::lebesgue(4), 4).unwrap();
        for (n, p) in om.iter().enumerate() {
            assert_eq!(p, &Poly::monomial(n));
        }
        let s = SchurSequence::new(vec![c(0.5, 0.0)]).unwrap();
        let om = second_kind(&s, 1).unwrap();
        assert_eq!(om[1], Poly::from_real(&[-0.5, 1.0]));
        let t = build_opuc(&s, 1).unwrap();
        assert!(second_kind_residual(&t, &om, 1) < 1e-15);
    }

    #[test]
    fn lebesgue_kernel_closed_forms() {
        let t = build_opuc(&SchurSequence::lebesgue(4), 4).unwrap();
        let z = c(0.3, 0.8);
        let y = cis(1.1);
        assert!((t.kernel_eval(2, z, c(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let expected = 1.0 + z * y.conj() + (z * y.conj()).powi(2);
        assert!((t.kernel_eval(2, z, y).unwrap() - expected).norm() < 1e-14);
        assert!((t.kernel_diag(3, cis(0.7)).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_diagonal_example() {
        let t = build_opuc(&example(), 2).unwrap();
        let one = c(1.0, 0.0);
        assert!((t.kernel_diag(1, one).unwrap() - 4.0).abs() < 1e-14);
        assert!((t.kernel_sum(1, one, one).unwrap() - 4.0).norm() < 1e-14);
        assert!(matches!(t.kernel_eval(1, one, one), Err(Error::NearDiagonal { .. })));
        // the CD quotient approaches the diagonal value
        let near = t.kernel_eval(1, one, cis(1e-5)).unwrap();
        assert!((near - 4.0).norm() < 1e-4);
        assert_eq!(t.kernel_diag(0, cis(2.0)).unwrap(), 1.0);
    }

    #[test]
    fn kernel_diag_rejects_off_circle() {
        let t = build_opuc(&example(), 2).unwrap();
        assert!(matches!(t.kernel_diag(1, c(0.5, 0.0)), Err(Error::OffCircle { .. })));
    }

    #[test]
    fn kernel_poly_matches_sum() {
        let t = build_opuc(&example(), 2).unwrap();
        let y = cis(0.4);
        let k = t.kernel_poly(2, y).unwrap();
        let z = c(0.2, -0.9);
        assert!((k.eval(z) - t.kernel_sum(2, z, y).unwrap()).norm() < 1e-14);
    }

    fn arb_schur(max_len: usize) -> impl Strategy<Value = SchurSequence> {
        prop::collection::vec((0.0f64..0.85, 0.0f64..std::f64::consts::TAU), 1..max_len)
            .prop_map(|v| {
                SchurSequence::new(v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect())
                    .unwrap()
            })
    }

    proptest! {
        #[test]
        fn second_kind_identity(s in arb_schur(30)) {
            let n = s.max_order();
            let t = build_opuc(&s, n).unwrap();
            let om = second_kind(&s, n).unwrap();
            for k in 0..=n {
                prop_assert!(second_kind_residual(&t, &om, k) < 1e-10);
            }
        }

        #[test]
        fn christoffel_darboux_matches_sum(
            s in arb_schur(20),
            a in 0.0f64..6.28,
            b in 0.0f64..6.28,
        ) {
            let t = build_opuc(&s, s.max_order()).unwrap();
            let n = s.max_order() - 1;
            let (z, y) = (cis(a), cis(b));
            prop_assume!((c(1.0, 0.0) - y.conj() * z).norm() > 1e-3);
            let cd = t.kernel_eval(n, z, y).unwrap();
            let sum = t.kernel_sum(n, z, y).unwrap();
            prop_assert!((cd - sum).norm() <= 1e-9 * sum.norm().max(1.0));
        }

        #[test]
        fn recurrence_keeps_monic_and_reversal(s in arb_schur(25)) {
            let t = build_opuc(&s, s.max_order()).unwrap();
            for n in 0..=t.order() {
                prop_assert_eq!(t.phi(n).degree(), n);
                prop_assert_eq!(t.phi(n).leading(), c(1.0, 0.0));
                prop_assert!(t.phi(n).reverse(n).max_coeff_diff(t.phi_star(n)) < 1e-12);
            }
        }
    }
}
