//! Semi-orthogonal functions (SOF) and their interlacing zeros.
//!
//! Every function here has the form
//! `f_n(z) = (conj(alpha_n) Phi_n(z) - alpha_n Phi_n^*(z)) / (i z^{n/2})`
//! and is stored as a [`RealCircleFunction`] with numerator
//! `-i (conj(alpha_n) Phi_n - alpha_n Phi_n^*)`, which is 1-invariant.
//!
//! Half-integer powers `w^{m/2}` are `e^{i m beta / 2}` with
//! `beta = arg w` taken in `[omega0, omega0 + 2 pi)`.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circle::RealCircleFunction;
use crate::format;
use crate::measures::christoffel_modify;
use crate::opuc::{second_kind, OpucTable, SchurSequence};
use crate::poly::Poly;
use crate::{cis, circular_distance, wrap_angle, Error, Result};

/// Tolerance on the `*_k` symmetries of the polynomials `A`, `B`.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Angles closer than this to an excluded anchor are dropped.
pub const ANCHOR_TOL: f64 = 1e-9;

/// Zeros of the two sets closer than this count as shared. A few ulps of an
/// angle in `[-pi, 3pi)`: zeros of neighbouring functions can sit 1e-13 apart
/// where the measure carries almost no mass, and are still resolved there.
pub const TIE_TOL: f64 = 1e-14;

/// Allowed relative imaginary part of the Sturm products.
pub const STURM_PHASE_TOL: f64 = 1e-7;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub enum SofMode {
    /// `f_n^{(1)}(z; w)`.
    F1,
    /// `f_n^{(2)}(z; w)`.
    F2,
    /// `a1 f_n^{(1)} + a2 f_n^{(2)}` with constant real coefficients.
    Combo { a1: f64, a2: f64 },
    /// `alpha_n = w^{-(n+k)/2} p_n(w)` with `p_n = A Phi_n + B Omega_n`.
    PolySeq { a: Poly, b: Poly, k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SofFamilySpec {
    pub omega0: f64,
    pub anchor: Complex64,
    pub mode: SofMode,
}

impl SofFamilySpec {
    /// Family anchored at `w = e^{i omega0}`.
    pub fn anchored(omega0: f64, mode: SofMode) -> Self {
        Self {
            omega0,
            anchor: cis(omega0),
            mode,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega0.is_finite() {
            return Err(Error::InvalidFamily("omega0 must be finite".into()));
        }
        let modulus = self.anchor.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::OffCircle { modulus });
        }
        match &self.mode {
            SofMode::F1 | SofMode::F2 => Ok(()),
            SofMode::Combo { a1, a2 } => {
                if !a1.is_finite() || !a2.is_finite() {
                    Err(Error::InvalidFamily("combination coefficients must be finite".into()))
                } else if *a1 == 0.0 && *a2 == 0.0 {
                    Err(Error::InvalidFamily("(a1, a2) must not both vanish".into()))
                } else {
                    Ok(())
                }
            }
            SofMode::PolySeq { a, b, k } => {
                let k = *k;
                if a.effective_degree(0.0) > k || b.effective_degree(0.0) > k {
                    return Err(Error::InvalidFamily(format!("deg A and deg B must not exceed k = {k}")));
                }
                let scale = a.max_abs_coeff().max(b.max_abs_coeff());
                if scale == 0.0 {
                    return Err(Error::InvalidFamily("A and B must not both vanish".into()));
                }
                let ra = a.reverse(k).max_coeff_diff(a) / scale;
                let rb = (&b.reverse(k) + b).max_abs_coeff() / scale;
                if ra > SYMMETRY_TOL {
                    return Err(Error::InvalidFamily(format!("A is not k-self-reciprocal (residual {ra:e})")));
                }
                if rb > SYMMETRY_TOL {
                    return Err(Error::InvalidFamily(format!("B is not k-anti-reciprocal (residual {rb:e})")));
                }
                Ok(())
            }
        }
    }

    /// Constant coefficients `(A1, A2)` of the family in the basis
    /// `f^{(1)}, f^{(2)}`.
    pub fn combo_coefficients(&self) -> (f64, f64) {
        match &self.mode {
            SofMode::F1 => (1.0, 0.0),
            SofMode::F2 => (0.0, 1.0),
            SofMode::Combo { a1, a2 } => (*a1, *a2),
            SofMode::PolySeq { a, b, k } => {
                let wk = half_power(self.anchor, *k as i64, self.omega0);
                let w = self.anchor;
                ((a.eval(w) / wk).re, (I * b.eval(w) / wk).re)
            }
        }
    }
}

/// `w^{m/2}` with `arg w` in `[omega0, omega0 + 2 pi)`.
pub fn half_power(w: Complex64, m: i64, omega0: f64) -> Complex64 {
    let beta = wrap_angle(w.arg(), omega0);
    cis(m as f64 * beta / 2.0)
}

#[derive(Clone, Debug)]
pub struct SofInstance {
    pub order: usize,
    pub function: RealCircleFunction,
    /// Coefficient in the `conj(alpha) Phi_n - alpha Phi_n^*` form; `None` for
    /// the odd members of the F-sequence.
    pub alpha: Option<Complex64>,
    pub zeros: Vec<f64>,
    pub anchor: f64,
    pub omega0: f64,
}

impl SofInstance {
    pub fn numerator(&self) -> &Poly {
        self.function.numerator()
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.function.eval(theta)
    }
}

/// Orthogonal and second-kind polynomials needed by every family.
#[derive(Clone, Debug)]
pub struct SofContext {
    table: OpucTable,
    omega: Vec<Poly>,
}

impl SofContext {
    pub fn new(schur: &SchurSequence, n_max: usize) -> Result<Self> {
        let table = crate::opuc::build_opuc(schur, n_max)?;
        Self::from_table(table)
    }

    pub fn from_table(table: OpucTable) -> Result<Self> {
        let omega = second_kind(&table.schur_sequence(), table.order())?;
        Ok(Self { table, omega })
    }

    pub fn table(&self) -> &OpucTable {
        &self.table
    }

    pub fn omega(&self) -> &[Poly] {
        &self.omega
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }
}

fn check_order(table: &OpucTable, n: usize) -> Result<()> {
    if n == 0 || n > table.order() {
        return Err(Error::OrderOutOfRange {
            requested: n,
            available: table.order(),
        });
    }
    Ok(())
}

/// Instance of `(conj(alpha) Phi_n - alpha Phi_n^*) / (i z^{n/2})`.
pub fn sof_from_alpha(table: &OpucTable, n: usize, alpha: Complex64, anchor: Complex64, omega0: f64) -> Result<SofInstance> {
    check_order(table, n)?;
    if alpha == Complex64::new(0.0, 0.0) || !alpha.is_finite() {
        return Err(Error::ZeroCoefficient { n });
    }
    let numerator = (&table.phi(n).scale(alpha.conj()) - &table.phi_star(n).scale(alpha)).scale(-I);
    build_instance(n, numerator, n, Some(alpha), anchor, omega0)
}

fn build_instance(
    order: usize,
    numerator: Poly,
    half_order: usize,
    alpha: Option<Complex64>,
    anchor: Complex64,
    omega0: f64,
) -> Result<SofInstance> {
    let function = RealCircleFunction::new(numerator, half_order, Complex64::new(1.0, 0.0), omega0);
    let zeros = function.zeros()?;
    Ok(SofInstance {
        order,
        function,
        alpha,
        zeros,
        anchor: wrap_angle(anchor.arg(), omega0),
        omega0,
    })
}

/// `alpha_n` of `f_n^{(1)}(.; w)`: `w^{-n/2} Phi_n(w)`.
pub fn alpha_f1(table: &OpucTable, n: usize, w: Complex64, omega0: f64) -> Complex64 {
    table.phi(n).eval(w) / half_power(w, n as i64, omega0)
}

/// `alpha_n` of `f_n^{(2)}(.; w)`: `-i w^{-n/2} Omega_n(w)`.
pub fn alpha_f2(omega: &[Poly], n: usize, w: Complex64, omega0: f64) -> Complex64 {
    -I * omega[n].eval(w) / half_power(w, n as i64, omega0)
}

/// `f_n^{(1)}(z; w) = (Phi_n^*(w) Phi_n(z) - Phi_n(w) Phi_n^*(z)) / (i (zw)^{n/2})`.
pub fn sof_f1(table: &OpucTable, n: usize, w: Complex64, omega0: f64) -> Result<SofInstance> {
    check_order(table, n)?;
    let alpha = alpha_f1(table, n, w, omega0);
    if alpha.norm() == 0.0 {
        return Err(Error::DegenerateAnchor { n });
    }
    sof_from_alpha(table, n, alpha, w, omega0)
}

/// `f_n^{(2)}(z; w) = (Omega_n^*(w) Phi_n(z) + Omega_n(w) Phi_n^*(z)) / (zw)^{n/2}`.
pub fn sof_f2(table: &OpucTable, omega: &[Poly], n: usize, w: Complex64, omega0: f64) -> Result<SofInstance> {
    check_order(table, n)?;
    if n >= omega.len() {
        return Err(Error::OrderOutOfRange {
            requested: n,
            available: omega.len().saturating_sub(1),
        });
    }
    let alpha = alpha_f2(omega, n, w, omega0);
    if alpha.norm() == 0.0 {
        return Err(Error::DegenerateAnchor { n });
    }
    sof_from_alpha(table, n, alpha, w, omega0)
}

/// The `n`-th member of a family.
pub fn sof_combo(ctx: &SofContext, spec: &SofFamilySpec, n: usize) -> Result<SofInstance> {
    spec.validate()?;
    check_order(&ctx.table, n)?;
    let (w, w0) = (spec.anchor, spec.omega0);
    let alpha = match &spec.mode {
        SofMode::F1 => return sof_f1(&ctx.table, n, w, w0),
        SofMode::F2 => return sof_f2(&ctx.table, &ctx.omega, n, w, w0),
        SofMode::Combo { a1, a2 } => {
            let (t1, t2) = (alpha_f1(&ctx.table, n, w, w0) * *a1, alpha_f2(&ctx.omega, n, w, w0) * *a2);
            let alpha = t1 + t2;
            if alpha.norm() <= 1e-14 * (t1.norm() + t2.norm()) {
                return Err(Error::ZeroCoefficient { n });
            }
            alpha
        }
        SofMode::PolySeq { a, b, k } => {
            let p = a.eval(w) * ctx.table.phi(n).eval(w) + b.eval(w) * ctx.omega[n].eval(w);
            let alpha = p / half_power(w, (n + k) as i64, w0);
            let scale = a.eval(w).norm() * ctx.table.phi(n).eval(w).norm() + b.eval(w).norm() * ctx.omega[n].eval(w).norm();
            if alpha.norm() <= 1e-14 * scale || scale == 0.0 {
                return Err(Error::ZeroCoefficient { n });
            }
            alpha
        }
    };
    sof_from_alpha(&ctx.table, n, alpha, w, w0)
}

/// Members `n` in `orders` of a family, computed in parallel.
pub fn sof_family(ctx: &SofContext, spec: &SofFamilySpec, orders: std::ops::RangeInclusive<usize>) -> Result<Vec<SofInstance>> {
    spec.validate()?;
    orders
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| sof_combo(ctx, spec, n))
        .collect()
}

/// `beta_n = (e_{n-1} / e_n) (alpha_n - Phi_n(0) conj(alpha_n))`.
pub fn beta_from_alpha(table: &OpucTable, n: usize, alpha: Complex64) -> Complex64 {
    (alpha - table.schur(n) * alpha.conj()) * (table.e(n - 1) / table.e(n))
}

/// `alpha_n = beta_n + Phi_n(0) conj(beta_n)`.
pub fn alpha_from_beta(table: &OpucTable, n: usize, beta: Complex64) -> Complex64 {
    beta + table.schur(n) * beta.conj()
}

/// Numerator of `f_n` written through `Phi_{n-1}`:
/// `-i (e_n / e_{n-1}) (conj(beta_n) z Phi_{n-1} - beta_n Phi_{n-1}^*)`.
pub fn numerator_from_beta(table: &OpucTable, n: usize, beta: Complex64) -> Poly {
    let lower = &table.phi(n - 1).shift(1).scale(beta.conj()) - &table.phi_star(n - 1).scale(beta);
    lower.scale(-I * (table.e(n) / table.e(n - 1)))
}

/// `F_1, ..., F_count` with anchors `w_seq[n - 1]`.
///
/// Even members are `f_{2m}^{(1)}(.; w_{2m})`. Odd members use the monic
/// orthogonal polynomials `psi` of `|z - w_{2m+1}|^2 dμ`:
/// `F_{2m+1} = (Phi_{2m}^*(w) z psi_{2m-1} + Phi_{2m}(w) psi_{2m-1}^*) / (zw)^m`,
/// and `F_1 = 1`.
pub fn f_sequence(table: &OpucTable, w_seq: &[Complex64], count: usize, omega0: f64) -> Result<Vec<SofInstance>> {
    if w_seq.len() < count {
        return Err(Error::InvalidFamily(format!(
            "{count} anchors needed, {} given",
            w_seq.len()
        )));
    }
    if count > table.order() + 1 || (count > table.order() && count.is_multiple_of(2)) {
        return Err(Error::OrderOutOfRange {
            requested: count,
            available: table.order(),
        });
    }
    (1..=count)
        .into_par_iter()
        .map(|n| {
            let w = w_seq[n - 1];
            if n % 2 == 0 {
                sof_f1(table, n, w, omega0)
            } else {
                f_odd(table, n / 2, w, omega0)
            }
        })
        .collect()
}

/// `F_{2m+1}(.; w)`.
pub fn f_odd(table: &OpucTable, m: usize, w: Complex64, omega0: f64) -> Result<SofInstance> {
    if m == 0 {
        return build_instance(1, Poly::one(), 0, None, w, omega0);
    }
    let psi = christoffel_modify(table, w, 2 * m - 1)?;
    let p = &psi[2 * m - 1];
    let (a, b) = (table.phi_star(2 * m).eval(w), table.phi(2 * m).eval(w));
    let numerator = (&p.shift(1).scale(a) + &p.reverse(2 * m - 1).scale(b)).scale(cis(-(m as f64) * wrap_angle(w.arg(), omega0)));
    build_instance(2 * m + 1, numerator, 2 * m, None, w, omega0)
}

/// Zeros of an F-sequence member together with its anchor, sorted in
/// `[omega0, omega0 + 2 pi)`; these are the quadrature nodes of order `n`.
pub fn augmented_zeros(inst: &SofInstance) -> Vec<f64> {
    let mut z = inst.zeros.clone();
    if inst.order % 2 == 1 {
        z.push(inst.anchor);
        z.sort_by(f64::total_cmp);
    }
    z
}

/// Outcome of [`interlace_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct InterlaceReport {
    pub ok: bool,
    /// First violation, if any.
    pub witness: Option<String>,
}

impl InterlaceReport {
    fn pass() -> Self {
        Self { ok: true, witness: None }
    }

    fn fail(w: String) -> Self {
        Self {
            ok: false,
            witness: Some(w),
        }
    }
}

/// Whether the angle sets `a` and `b` strictly alternate on
/// `[omega0, omega0 + 2 pi)`.
///
/// Accepted patterns: `b a b ... a b` (`|b| = |a| + 1`), the mirror
/// image, and equal counts with either set first. Angles within
/// `ANCHOR_TOL` of `exclude_anchor` are dropped from both sets first.
pub fn interlace_check(a: &[f64], b: &[f64], omega0: f64, exclude_anchor: Option<f64>) -> InterlaceReport {
    let keep = |t: &f64| exclude_anchor.is_none_or(|x| circular_distance(*t, x) >= ANCHOR_TOL);
    let mut merged: Vec<(f64, char)> = a
        .iter()
        .filter(|t| keep(t))
        .map(|&t| (wrap_angle(t, omega0), 'a'))
        .chain(b.iter().filter(|t| keep(t)).map(|&t| (wrap_angle(t, omega0), 'b')))
        .collect();
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let na = merged.iter().filter(|x| x.1 == 'a').count();
    let nb = merged.len() - na;
    if na.abs_diff(nb) > 1 {
        return InterlaceReport::fail(format!("counts differ by more than one: |a| = {na}, |b| = {nb}"));
    }
    for pair in merged.windows(2) {
        let ((t0, s0), (t1, s1)) = (pair[0], pair[1]);
        if s0 == s1 {
            return InterlaceReport::fail(format!(
                "consecutive zeros {} and {} of {s0} with no zero of the other set between",
                format::num(t0),
                format::num(t1)
            ));
        }
        if t1 - t0 < TIE_TOL {
            return InterlaceReport::fail(format!("shared zero at {}", format::num(t0)));
        }
    }
    InterlaceReport::pass()
}

/// `i zeta f_next'(zeta) f_cur(zeta)` at the zeros `zeta != e^{i omega0}` of `f_next`.
///
/// Constant sign is equivalent to interlacing.
pub fn sturm_sign_probe(f_next: &SofInstance, f_cur: &SofInstance) -> Result<Vec<f64>> {
    let omega0 = f_next.omega0;
    f_next
        .zeros
        .iter()
        .filter(|&&t| circular_distance(t, omega0) >= ANCHOR_TOL)
        .map(|&t| {
            let v = f_next.function.derivative_complex(t) * f_cur.function.eval_complex(t);
            if v.im.abs() > STURM_PHASE_TOL * v.norm().max(1.0) {
                return Err(Error::PhaseLeak { imag: v.im });
            }
            Ok(v.re)
        })
        .collect()
}

/// CSV `n,k,theta` of the zeros of each instance, `k` starting at 1.
pub fn trajectory_csv(instances: &[SofInstance]) -> String {
    let mut out = String::from("n,k,theta\n");
    for inst in instances {
        for (k, t) in inst.zeros.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", inst.order, k + 1, format::num(*t));
        }
    }
    out
}
