//! Turning a candidate space into the actual list.
//!
//! [`prune`] is the randomized procedure: pick `r` coordinates, try every
//! combination of set elements there, and keep the member of the space that
//! the choice pins down uniquely. [`enumerate_list`] is its exact
//! counterpart, feasible whenever `q^r` is small.

use std::collections::BTreeSet;

use num_rational::Rational64;
use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{Fe, Field, Matrix, Poly};
use crate::bounds::prune_iterations;
use crate::codes::{max_misses, CodeParams, Codeword, RecoverySets};
use crate::decoder::CandidateSpace;
use crate::error::{Error, Result};
use crate::rng::trial_rng;

#[derive(Clone, Debug, PartialEq)]
pub struct PruneConfig {
    pub epsilon: f64,
    pub eta: f64,
    /// Overrides the iteration count derived from `epsilon` and `eta`.
    pub iterations: Option<u64>,
    pub seed: u64,
}

impl PruneConfig {
    pub fn new(epsilon: f64, eta: f64, seed: u64) -> Result<PruneConfig> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::param(format!("epsilon = {epsilon} must lie in (0, 1)")));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::param(format!("eta = {eta} must lie in (0, 1)")));
        }
        Ok(PruneConfig { epsilon, eta, iterations: None, seed })
    }

    pub fn with_iterations(mut self, iterations: u64) -> Result<PruneConfig> {
        if iterations == 0 {
            return Err(Error::param("iterations must be at least 1"));
        }
        self.iterations = Some(iterations);
        Ok(self)
    }

    pub fn iteration_count(&self, r: usize, ell: usize) -> Result<u64> {
        match self.iterations {
            Some(n) => Ok(n),
            None => prune_iterations(self.epsilon, r, ell, self.eta),
        }
    }
}

/// Candidate space pushed through the (linear) encoder.
#[derive(Clone, Debug)]
pub struct EncodedSpace {
    pub offset: Codeword,
    pub basis: Vec<Codeword>,
}

impl EncodedSpace {
    pub fn new(params: &CodeParams, space: &CandidateSpace) -> Result<Option<EncodedSpace>> {
        let Some(affine) = &space.space else {
            return Ok(None);
        };
        let offset = params.encode(&affine.offset)?;
        let basis = affine.basis.iter().map(|b| params.encode(b)).collect::<Result<_>>()?;
        Ok(Some(EncodedSpace { offset, basis }))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn member(&self, field: &Field, lambda: &[Fe]) -> Codeword {
        self.basis
            .iter()
            .zip(lambda)
            .fold(self.offset.clone(), |acc, (b, &c)| acc.add_scaled(field, c, b))
    }

    /// Solves `offset + sum_k lambda_k basis_k = target` on the given columns.
    fn pin(&self, field: &Field, columns: &[usize], targets: &[&[Fe]]) -> Option<crate::algebra::AffineSolution> {
        let s = self.offset.s();
        let r = self.dim();
        let mut a = Matrix::zeros(columns.len() * s, r);
        let mut rhs = Vec::with_capacity(columns.len() * s);
        for (row_block, (&i, target)) in columns.iter().zip(targets).enumerate() {
            for t in 0..s {
                for (k, b) in self.basis.iter().enumerate() {
                    a[(row_block * s + t, k)] = b.column(i)[t];
                }
                rhs.push(field.sub(target[t], self.offset.column(i)[t]));
            }
        }
        a.solve_affine(field, &rhs).expect("shapes agree")
    }
}

fn check_rho(rho: Rational64) -> Result<()> {
    if rho >= Rational64::from_integer(1) || rho < Rational64::from_integer(0) {
        return Err(Error::param(format!("radius {rho} must lie in [0, 1)")));
    }
    Ok(())
}

fn check_shape(params: &CodeParams, sets: &RecoverySets) -> Result<()> {
    if sets.n() != params.n() || sets.s() != params.s() {
        return Err(Error::param("recovery sets do not match the code shape"));
    }
    Ok(())
}

fn message(space: &CandidateSpace, field: &Field, lambda: &[Fe]) -> Poly {
    space.member(field, lambda).expect("space is nonempty")
}

/// Randomized pruning of `space` to the codewords within `rho` of `sets`.
///
/// Iteration `t` draws its coordinates from stream `t` of the configured
/// seed, so the output does not depend on how iterations are scheduled.
pub fn prune(
    params: &CodeParams,
    space: &CandidateSpace,
    sets: &RecoverySets,
    rho: Rational64,
    cfg: &PruneConfig,
) -> Result<Vec<Poly>> {
    check_rho(rho)?;
    check_shape(params, sets)?;
    let field = *params.field();
    let Some(encoded) = EncodedSpace::new(params, space)? else {
        return Ok(Vec::new());
    };
    let n = params.n();
    let limit = max_misses(rho, n);
    let r = encoded.dim();
    let within = |lambda: &[Fe]| {
        let c = encoded.member(&field, lambda);
        (0..n).filter(|&i| !sets.contains(i, c.column(i))).count() <= limit
    };
    if r == 0 {
        return Ok(if within(&[]) { vec![message(space, &field, &[])] } else { Vec::new() });
    }
    let iterations = cfg.iteration_count(r, sets.ell())?;
    let found: BTreeSet<Vec<Fe>> = (0..iterations)
        .into_par_iter()
        .map(|it| {
            let mut rng = trial_rng(cfg.seed, it);
            let coords: Vec<usize> = (0..r).map(|_| rng.gen_range(0..n)).collect();
            prune_iteration(&field, &encoded, sets, &coords)
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<Poly> = found
        .into_iter()
        .filter(|lambda| within(lambda))
        .map(|lambda| message(space, &field, &lambda))
        .collect();
    out.sort();
    Ok(out)
}

/// One pass: every choice of set elements at `coords` that pins down exactly
/// one member of the space contributes that member.
fn prune_iteration(field: &Field, encoded: &EncodedSpace, sets: &RecoverySets, coords: &[usize]) -> BTreeSet<Vec<Fe>> {
    let mut out = BTreeSet::new();
    let sizes: Vec<usize> = coords.iter().map(|&i| sets.set(i).len()).collect();
    let mut choice = vec![0usize; coords.len()];
    loop {
        let targets: Vec<&[Fe]> = coords.iter().zip(&choice).map(|(&i, &c)| sets.set(i)[c].as_slice()).collect();
        if let Some(sol) = encoded.pin(field, coords, &targets) {
            if sol.is_unique() {
                out.insert(sol.particular);
            }
        }
        // Next combination in mixed radix.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < sizes[k] {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Every member of `space` within `rho` of `sets`, sorted by coefficients.
///
/// Rather than encoding all `q^r` members, each column's agreement set is
/// solved as an affine system in the coordinates `lambda` and agreements are
/// tallied per member.
pub fn enumerate_list(
    params: &CodeParams,
    space: &CandidateSpace,
    sets: &RecoverySets,
    rho: Rational64,
    budget: u128,
) -> Result<Vec<Poly>> {
    check_shape(params, sets)?;
    let field = *params.field();
    let Some(encoded) = EncodedSpace::new(params, space)? else {
        return Ok(Vec::new());
    };
    let q = field.modulus() as u128;
    let r = encoded.dim();
    let size = q.checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { required: size, budget });
    }
    let size = size as usize;
    let n = params.n();
    let mut agreements = vec![0u32; size];
    let mut everywhere = 0u32;
    for i in 0..n {
        for v in sets.set(i) {
            let Some(sol) = encoded.pin(&field, &[i], &[v.as_slice()]) else {
                continue;
            };
            if sol.kernel.len() == r {
                everywhere += 1;
                continue;
            }
            for_each_point(&field, &sol, |lambda| agreements[index_of(lambda, q as usize)] += 1);
        }
    }
    let need = n - max_misses(rho, n).min(n);
    let mut out: Vec<Poly> = agreements
        .iter()
        .enumerate()
        .filter(|&(_, &a)| (a + everywhere) as usize >= need)
        .map(|(idx, _)| message(space, &field, &lambda_of(idx, r, &field)))
        .collect();
    out.sort();
    Ok(out)
}

fn index_of(lambda: &[Fe], q: usize) -> usize {
    lambda.iter().rev().fold(0, |acc, c| acc * q + c.value() as usize)
}

fn lambda_of(mut idx: usize, r: usize, field: &Field) -> Vec<Fe> {
    let q = field.modulus() as usize;
    (0..r)
        .map(|_| {
            let c = idx % q;
            idx /= q;
            field.elem(c as u64)
        })
        .collect()
}

/// Visits `particular + sum mu_j kernel_j` for every `mu`.
fn for_each_point(field: &Field, sol: &crate::algebra::AffineSolution, mut visit: impl FnMut(&[Fe])) {
    let q = field.modulus();
    let dim = sol.kernel.len();
    let mut mu = vec![0u64; dim];
    let mut point = sol.particular.clone();
    loop {
        visit(&point);
        let mut k = 0;
        loop {
            if k == dim {
                return;
            }
            mu[k] += 1;
            for (p, &b) in point.iter_mut().zip(&sol.kernel[k]) {
                *p = field.add(*p, b);
            }
            // q additions return the coordinate to where it started.
            if mu[k] < q {
                break;
            }
            mu[k] = 0;
            k += 1;
        }
    }
}
