//! Linear-algebraic list decoding.
//!
//! The decoder interpolates `Q(X, Y_1..Y_m) = A_0(X) + sum_k A_k(X) Y_k` with
//! `deg A_0 <= D + d` and `deg A_k <= D` through the received data, then
//! solves the functional equation
//!
//! * FRS:  `A_0(X) + sum_k A_k(X) f(alpha^(k-1) X) = 0`
//! * MULT: `A_0(X) + sum_k A_k(X) f^(k-1)(X) = 0`
//!
//! for the coefficients of `f`. Any message whose codeword agrees with the
//! input on more than `(D + d)/(s - m + 1)` columns solves it, so the solution
//! set (an affine space) contains the whole list.

use crate::algebra::{Fe, Field, Matrix, Poly};
use crate::codes::{CodeParams, Codeword, FrsParams, MultParams, RecoverySets};
use crate::error::{Error, Result};

/// Affine set `offset + span(basis)` of message polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub offset: Poly,
    pub basis: Vec<Poly>,
}

/// Decoder output. `space` is `None` when the extraction system has no
/// solution, i.e. no codeword lies within the decoding radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSpace {
    pub m: usize,
    pub interpolation_degree: usize,
    pub max_degree: usize,
    pub space: Option<AffineSpace>,
}

impl CandidateSpace {
    pub fn is_empty(&self) -> bool {
        self.space.is_none()
    }

    /// Dimension `r`; `None` for the empty space.
    pub fn dim(&self) -> Option<usize> {
        self.space.as_ref().map(|s| s.basis.len())
    }

    pub fn offset(&self) -> Option<&Poly> {
        self.space.as_ref().map(|s| &s.offset)
    }

    pub fn basis(&self) -> &[Poly] {
        self.space.as_ref().map_or(&[], |s| &s.basis)
    }

    /// `offset + sum_k coeffs[k] * basis[k]`.
    pub fn member(&self, field: &Field, coeffs: &[Fe]) -> Option<Poly> {
        let space = self.space.as_ref()?;
        assert_eq!(coeffs.len(), space.basis.len());
        Some(
            space
                .basis
                .iter()
                .zip(coeffs)
                .fold(space.offset.clone(), |acc, (b, &c)| acc.add(field, &b.scale(field, c))),
        )
    }

    /// Exact membership test via the coefficient system.
    pub fn contains(&self, field: &Field, f: &Poly) -> bool {
        let Some(space) = &self.space else {
            return false;
        };
        let len = self.max_degree + 1;
        if f.coeffs().len() > len {
            return false;
        }
        let target = f.sub(field, &space.offset).padded(len);
        if space.basis.is_empty() {
            return target.iter().all(|c| c.is_zero());
        }
        let mut a = Matrix::zeros(len, space.basis.len());
        for (k, b) in space.basis.iter().enumerate() {
            for (t, c) in b.padded(len).into_iter().enumerate() {
                a[(t, k)] = c;
            }
        }
        matches!(a.solve_affine(field, &target), Ok(Some(_)))
    }
}

/// `A_0, ..., A_m` of the interpolation polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpolation {
    pub components: Vec<Poly>,
    pub degree: usize,
}

impl Interpolation {
    /// `A_0 + sum_k A_k f(alpha^(k-1) X)`.
    pub fn frs_residual(&self, field: &Field, f: &Poly) -> Poly {
        let alpha = field.alpha();
        let mut acc = self.components[0].clone();
        let mut shift = Fe::ONE;
        for a_k in &self.components[1..] {
            acc = acc.add(field, &a_k.mul(field, &f.dilate(field, shift)));
            shift = field.mul(shift, alpha);
        }
        acc
    }

    /// `A_0 + sum_k A_k f^(k-1)`.
    pub fn mult_residual(&self, field: &Field, f: &Poly) -> Poly {
        let mut acc = self.components[0].clone();
        for (k, a_k) in self.components[1..].iter().enumerate() {
            acc = acc.add(field, &a_k.mul(field, &f.hasse_derivative(field, k)));
        }
        acc
    }
}

/// Where the containment guarantee ends for a parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub interpolation_degree: usize,
    /// Smallest agreement (in columns) that forces containment.
    pub min_agreement: usize,
    pub max_errors: usize,
}

fn check_m(s: usize, m: usize) -> Result<()> {
    if m == 0 || m > s {
        return Err(Error::param(format!("decoding parameter m = {m} must lie in 1..={s}")));
    }
    Ok(())
}

/// Smallest `D` with `(m + 1)(D + 1) + d >= N + 1`.
fn interpolation_degree(constraints: usize, m: usize, d: usize) -> usize {
    let need = (constraints + 1).saturating_sub(d);
    need.div_ceil(m + 1).saturating_sub(1)
}

fn min_agreement(degree: usize, d: usize, windows: usize) -> usize {
    (degree + d) / windows + 1
}

pub fn radius_threshold(params: &CodeParams, m: usize, ell: usize) -> Result<Threshold> {
    let (s, n, d) = (params.s(), params.n(), params.d());
    check_m(s, m)?;
    if ell == 0 {
        return Err(Error::param("ell must be positive"));
    }
    let windows = s - m + 1;
    let degree = interpolation_degree(n * ell * windows, m, d);
    let t_min = min_agreement(degree, d, windows);
    let max_errors = n.saturating_sub(t_min);
    if ell == 1 {
        let rho = crate::bounds::frs_radius(m as u64, s as u64, &crate::bounds::to_big(params.rate()))?;
        let floor_rho_n = (rho * num_rational::BigRational::from_integer((n as i64).into()))
            .floor()
            .to_integer();
        let floor_rho_n: i64 = floor_rho_n.try_into().unwrap_or(i64::MAX);
        if (max_errors as i64) < floor_rho_n - 1 {
            return Err(Error::invariant(format!(
                "threshold {max_errors} errors falls below the radius floor {floor_rho_n} - 1"
            )));
        }
    }
    Ok(Threshold { interpolation_degree: degree, min_agreement: t_min, max_errors })
}

fn powers(field: &Field, x: Fe, count: usize) -> Vec<Fe> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Fe::ONE;
    for _ in 0..count {
        out.push(acc);
        acc = field.mul(acc, x);
    }
    out
}

/// Picks the first kernel vector of the constraint matrix and splits it into
/// `A_0 (D + d + 1 coefficients), A_1..A_m (D + 1 each)`.
fn solve_interpolation(field: &Field, system: Matrix, m: usize, degree: usize, d: usize) -> Result<Interpolation> {
    let kernel = system.kernel(field);
    let Some(q) = kernel.into_iter().next() else {
        return Err(Error::invariant(format!(
            "interpolation system {}x{} has a trivial kernel",
            system.rows(),
            system.cols()
        )));
    };
    let mut components = Vec::with_capacity(m + 1);
    components.push(Poly::new(q[..=degree + d].to_vec()));
    for k in 0..m {
        let start = degree + d + 1 + k * (degree + 1);
        components.push(Poly::new(q[start..start + degree + 1].to_vec()));
    }
    Ok(Interpolation { components, degree })
}

/// Interpolation step for FRS list recovery.
pub fn interpolate_frs(params: &FrsParams, sets: &RecoverySets, m: usize) -> Result<Interpolation> {
    let (s, n, d) = (params.s(), params.n(), params.d());
    check_m(s, m)?;
    if sets.n() != n || sets.s() != s {
        return Err(Error::param("recovery sets do not match the code shape"));
    }
    let field = params.field();
    let windows = s - m + 1;
    let total: usize = sets.sets().iter().map(Vec::len).sum::<usize>() * windows;
    let degree = interpolation_degree(total, m, d);
    let cols = (m + 1) * (degree + 1) + d;
    let mut system = Matrix::zeros(total, cols);
    let mut row = 0;
    for i in 0..n {
        for j in 0..windows {
            let xs = powers(field, params.point(i, j), degree + d + 1);
            for v in sets.set(i) {
                let out = system.row_mut(row);
                out[..=degree + d].copy_from_slice(&xs);
                for k in 0..m {
                    let y = v[j + k];
                    let start = degree + d + 1 + k * (degree + 1);
                    for t in 0..=degree {
                        out[start + t] = field.mul(xs[t], y);
                    }
                }
                row += 1;
            }
        }
    }
    solve_interpolation(field, system, m, degree, d)
}

/// Solves `A_0 + sum_k A_k(X) f(alpha^(k-1) X) = 0` for `f` of degree `<= d`.
pub fn extract_frs(params: &FrsParams, interp: &Interpolation, m: usize) -> Result<CandidateSpace> {
    let field = params.field();
    let d = params.d();
    let rows = interp.degree + d + 1;
    let alpha = field.alpha();
    let mut system = Matrix::zeros(rows, d + 1);
    let mut shift = Fe::ONE;
    for a_k in &interp.components[1..] {
        // Coefficient of f_a in A_k(X) f(shift X) at X^t is A_k[t - a] shift^a.
        let shift_powers = powers(field, shift, d + 1);
        for (u, &c) in a_k.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..=d {
                let cell = &mut system[(u + a, a)];
                *cell = field.mul_add(*cell, c, shift_powers[a]);
            }
        }
        shift = field.mul(shift, alpha);
    }
    let rhs = rhs_from(field, &interp.components[0], rows);
    finish_extraction(field, system, &rhs, m, interp.degree, d, true)
}

fn rhs_from(field: &Field, a0: &Poly, rows: usize) -> Vec<Fe> {
    (0..rows).map(|t| field.neg(a0.coeff(t))).collect()
}

fn finish_extraction(
    field: &Field,
    system: Matrix,
    rhs: &[Fe],
    m: usize,
    degree: usize,
    d: usize,
    enforce_dim: bool,
) -> Result<CandidateSpace> {
    let space = system.solve_affine(field, rhs)?.map(|sol| AffineSpace {
        offset: Poly::new(sol.particular),
        basis: sol.kernel.into_iter().map(Poly::new).collect(),
    });
    if let Some(s) = &space {
        if enforce_dim && s.basis.len() + 1 > m {
            return Err(Error::invariant(format!(
                "candidate space has dimension {} > m - 1 = {}",
                s.basis.len(),
                m - 1
            )));
        }
    }
    Ok(CandidateSpace { m, interpolation_degree: degree, max_degree: d, space })
}

/// FRS list recovery: the returned space contains every message whose
/// codeword agrees with `sets` on more than `(D + d)/(s - m + 1)` columns.
pub fn frs_list_recover(params: &FrsParams, sets: &RecoverySets, m: usize) -> Result<CandidateSpace> {
    let interp = interpolate_frs(params, sets, m)?;
    extract_frs(params, &interp, m)
}

pub fn frs_list_decode(params: &FrsParams, y: &Codeword, m: usize) -> Result<CandidateSpace> {
    frs_list_recover(params, &RecoverySets::from_word(y), m)
}

fn check_mult(params: &MultParams, y: &Codeword, m: usize) -> Result<()> {
    check_m(params.s(), m)?;
    let q = params.field().modulus() as usize;
    if q <= params.d() {
        return Err(Error::Unsupported(format!(
            "multiplicity decoding needs char q = {q} > d = {}",
            params.d()
        )));
    }
    if y.n() != params.n() || y.s() != params.s() {
        return Err(Error::param("received word does not match the code shape"));
    }
    Ok(())
}

/// Interpolation step for multiplicity codes: `R^(j)(a_i) = 0` for
/// `j < s - m + 1`, expanded with the Hasse product and composition rules.
pub fn interpolate_mult(params: &MultParams, y: &Codeword, m: usize) -> Result<Interpolation> {
    check_mult(params, y, m)?;
    let (s, n, d) = (params.s(), params.n(), params.d());
    let field = params.field();
    let windows = s - m + 1;
    let degree = interpolation_degree(n * windows, m, d);
    let top = degree + d;
    let binom = BinomialTable::new(field, top.max(s), s);
    let cols = (m + 1) * (degree + 1) + d;
    let mut system = Matrix::zeros(n * windows, cols);
    for (i, &a) in params.points().iter().enumerate() {
        let xs = powers(field, a, top + 1);
        let col = y.column(i);
        for j in 0..windows {
            let out = system.row_mut(i * windows + j);
            // (X^t)^(u) at a is C(t, u) a^(t - u).
            for t in j..=top {
                out[t] = field.mul(binom.get(t, j), xs[t - j]);
            }
            for k in 1..=m {
                let start = top + 1 + (k - 1) * (degree + 1);
                for t in 0..=degree {
                    let mut acc = Fe::ZERO;
                    for u in 0..=j.min(t) {
                        let v = j - u;
                        let w = field.mul(binom.get(k - 1 + v, v), col[k - 1 + v]);
                        acc = field.mul_add(acc, field.mul(binom.get(t, u), xs[t - u]), w);
                    }
                    out[start + t] = acc;
                }
            }
        }
    }
    solve_interpolation(field, system, m, degree, d)
}

/// Solves `A_0 + sum_k A_k f^(k-1) = 0` for `f` of degree `<= d`.
pub fn extract_mult(params: &MultParams, interp: &Interpolation, m: usize) -> Result<CandidateSpace> {
    let field = params.field();
    let d = params.d();
    let rows = interp.degree + d + 1;
    let binom = BinomialTable::new(field, d.max(m), m);
    let mut system = Matrix::zeros(rows, d + 1);
    for (k1, a_k) in interp.components[1..].iter().enumerate() {
        // f^(k1) has coefficient C(a, k1) f_a at X^(a - k1).
        for (u, &c) in a_k.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in k1..=d {
                let cell = &mut system[(u + a - k1, a)];
                *cell = field.mul_add(*cell, c, binom.get(a, k1));
            }
        }
    }
    let rhs = rhs_from(field, &interp.components[0], rows);
    finish_extraction(field, system, &rhs, m, interp.degree, d, true)
}

pub fn mult_list_decode(params: &MultParams, y: &Codeword, m: usize) -> Result<CandidateSpace> {
    let interp = interpolate_mult(params, y, m)?;
    extract_mult(params, &interp, m)
}

/// Dispatches plain list decoding on either family.
pub fn list_decode(params: &CodeParams, y: &Codeword, m: usize) -> Result<CandidateSpace> {
    match params {
        CodeParams::Frs(p) => frs_list_decode(p, y, m),
        CodeParams::Mult(p) => mult_list_decode(p, y, m),
    }
}

/// List recovery; multiplicity codes accept singleton sets only.
pub fn list_recover(params: &CodeParams, sets: &RecoverySets, m: usize) -> Result<CandidateSpace> {
    match params {
        CodeParams::Frs(p) => frs_list_recover(p, sets, m),
        CodeParams::Mult(p) => {
            if sets.sets().iter().any(|s| s.len() != 1) {
                return Err(Error::Unsupported("list recovery of multiplicity codes".into()));
            }
            let columns = sets.sets().iter().map(|s| s[0].clone()).collect();
            mult_list_decode(p, &Codeword::new(columns)?, m)
        }
    }
}

/// `C(n, k) mod p` for `n <= max_n`, `k <= max_k`.
struct BinomialTable {
    width: usize,
    data: Vec<Fe>,
}

impl BinomialTable {
    fn new(field: &Field, max_n: usize, max_k: usize) -> BinomialTable {
        let width = max_k + 1;
        let mut data = vec![Fe::ZERO; (max_n + 1) * width];
        for n in 0..=max_n {
            data[n * width] = Fe::ONE;
            for k in 1..=max_k.min(n) {
                data[n * width + k] = field.add(data[(n - 1) * width + k - 1], data[(n - 1) * width + k]);
            }
        }
        BinomialTable { width, data }
    }

    #[inline]
    fn get(&self, n: usize, k: usize) -> Fe {
        if k >= self.width {
            return Fe::ZERO;
        }
        self.data[n * self.width + k]
    }
}
