//! Seeded Monte Carlo experiments over decoder outputs.
//!
//! Every trial draws from its own stream of the experiment seed, so reports
//! are identical however trials are scheduled. A nonzero `violations` count
//! means a property that must always hold was observed to fail.

use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Fe, Poly};
use crate::analysis::{candidate_space_stats, apply_fine_bound, encode_basis, iterative_fraction_check, valid_vector_stats};
use crate::bounds::{fixed_m_bound, format_rational, frs_radius, m2_bound, to_big, to_f64};
use crate::codes::{corrupt, set_misses, CodeParams, Codeword, RecoverySets};
use crate::decoder::{list_decode, radius_threshold, AffineSpace, CandidateSpace};
use crate::error::{Error, Result};
use crate::oracle::{brute_force_list, OracleBudget};
use crate::prune::{enumerate_list, prune, PruneConfig};
use crate::rng::{sub_rng, trial_rng};

/// Largest `q^r` that list enumeration may visit.
pub const ENUMERATION_BUDGET: u128 = 1 << 26;

fn small(x: &BigRational) -> Result<Rational64> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::param("rational does not fit in 64 bits")),
    }
}

fn rational_string(x: Rational64) -> String {
    format_rational(&to_big(x))
}

/// Nonzero message whose codeword vanishes on `columns`, of the form
/// `h * prod_i v_i` where `v_i` vanishes exactly on column `i`.
pub fn vanishing_message<R: Rng + ?Sized>(params: &CodeParams, columns: &[usize], rng: &mut R) -> Result<Poly> {
    let field = *params.field();
    let s = params.s();
    let roots = columns.len() * s;
    if roots > params.d() {
        return Err(Error::param(format!("{roots} forced roots exceed the degree bound {}", params.d())));
    }
    let mut v = Poly::constant(Fe::ONE);
    for &i in columns {
        for j in 0..s {
            let root = match params {
                CodeParams::Frs(p) => p.point(i, j),
                CodeParams::Mult(p) => p.points()[i],
            };
            v = v.mul(&field, &Poly::new(vec![field.neg(root), Fe::ONE]));
        }
    }
    let q = field.modulus();
    loop {
        let h = Poly::new((0..=params.d() - roots).map(|_| field.elem(rng.gen_range(0..q))).collect());
        if !h.is_zero() {
            return Ok(v.mul(&field, &h));
        }
    }
}

/// A received word assembled from two codewords that coincide on `shared`
/// columns. The remaining columns are split as evenly as possible.
#[derive(Clone, Debug)]
pub struct PairInstance {
    pub first: Poly,
    pub second: Poly,
    pub word: Codeword,
    pub shared: Vec<usize>,
}

pub fn plant_pair<R: Rng + ?Sized>(params: &CodeParams, shared: usize, rng: &mut R) -> Result<PairInstance> {
    let n = params.n();
    if shared > n {
        return Err(Error::param("more shared columns than columns"));
    }
    let field = *params.field();
    let mut order: Vec<usize> = index::sample(rng, n, n).into_vec();
    let rest = order.split_off(shared);
    let mut shared_cols = order;
    shared_cols.sort_unstable();
    let first = params.random_message(rng);
    let second = first.add(&field, &vanishing_message(params, &shared_cols, rng)?);
    let c1 = params.encode(&first)?;
    let c2 = params.encode(&second)?;
    let mut columns = c1.columns().to_vec();
    let half = rest.len().div_ceil(2);
    for &i in &rest[half..] {
        columns[i] = c2.column(i).to_vec();
    }
    Ok(PairInstance { first, second, word: Codeword::new(columns)?, shared: shared_cols })
}

/// Fewest shared columns that keep both planted codewords within `errors`.
pub fn shared_needed(n: usize, errors: usize) -> usize {
    (0..=n).find(|&z| z + (n - z) / 2 >= n - errors.min(n)).unwrap_or(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Singleton2Report {
    pub trials: u64,
    pub errors: usize,
    /// `(2/3)(1 - sR/(s - 1))`.
    pub radius: String,
    pub within_radius: bool,
    pub recovered: u64,
    pub max_list: usize,
    pub lists_over_two: u64,
    pub violations: u64,
}

/// Plant a codeword, apply `errors` column errors, decode with `m = 2`, and
/// list everything in the candidate space within the radius.
///
/// Inside the radius the planted message must be listed and the list must
/// have at most two entries; outside it the counts are only reported.
pub fn singleton2(params: &CodeParams, trials: u64, seed: u64, errors: usize) -> Result<Singleton2Report> {
    let radius = frs_radius(2, params.s() as u64, &to_big(params.rate()))?;
    let limit = crate::codes::max_misses(small(&radius)?, params.n());
    let rho = Rational64::new(limit as i64, params.n() as i64);
    let field = *params.field();
    let outcomes: Vec<(bool, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let f = params.random_message(&mut rng);
            let y = corrupt(&field, &params.encode(&f)?, errors, &mut rng)?;
            let space = list_decode(params, &y, 2)?;
            let list = enumerate_list(params, &space, &RecoverySets::from_word(&y), rho, ENUMERATION_BUDGET)?;
            Ok((list.contains(&f), list.len()))
        })
        .collect::<Result<_>>()?;
    let within_radius = errors <= limit;
    let recovered = outcomes.iter().filter(|o| o.0).count() as u64;
    let lists_over_two = outcomes.iter().filter(|o| o.1 > 2).count() as u64;
    let violations = if within_radius { (trials - recovered) + lists_over_two } else { 0 };
    Ok(Singleton2Report {
        trials,
        errors,
        radius: format_rational(&radius),
        within_radius,
        recovered,
        max_list: outcomes.iter().map(|o| o.1).max().unwrap_or(0),
        lists_over_two,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ListSizeReport {
    pub m: usize,
    pub trials: u64,
    pub errors: usize,
    /// Fixed-`m` list-size bound at the code's `s` and rate.
    pub bound: String,
    pub max_list: usize,
    /// Largest list among trials on two-codeword words.
    pub max_list_paired: usize,
    pub missed_planted: u64,
    pub violations: u64,
}

/// Largest list at the decoding radius for parameter `m`.
///
/// Even trials corrupt a random codeword in the maximum number of columns
/// the decoder tolerates; odd trials use a word assembled from two codewords
/// that both lie within that distance.
pub fn list_size(params: &CodeParams, m: usize, trials: u64, seed: u64) -> Result<ListSizeReport> {
    let threshold = radius_threshold(params, m, 1)?;
    let errors = threshold.max_errors;
    let n = params.n();
    let rho = Rational64::new(errors as i64, n as i64);
    let rate = to_big(params.rate());
    let bound = match m {
        0 | 1 => BigRational::from_integer(1.into()),
        2 => m2_bound(params.s() as u64, &rate)?,
        _ => fixed_m_bound(m as u64, params.s() as u64, &rate)?.list_size,
    };
    let cap = bound.floor().to_integer().to_usize().unwrap_or(usize::MAX);
    let shared = shared_needed(n, errors);
    let pairs_fit = shared * params.s() <= params.d();
    let field = *params.field();
    let outcomes: Vec<(bool, usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (planted, y, paired) = if t % 2 == 1 && pairs_fit {
                let pair = plant_pair(params, shared, &mut rng)?;
                (vec![pair.first, pair.second], pair.word, true)
            } else {
                let f = params.random_message(&mut rng);
                let y = corrupt(&field, &params.encode(&f)?, errors, &mut rng)?;
                (vec![f], y, false)
            };
            let space = list_decode(params, &y, m)?;
            let list = enumerate_list(params, &space, &RecoverySets::from_word(&y), rho, ENUMERATION_BUDGET)?;
            let missed = planted.iter().filter(|f| !list.contains(f)).count();
            Ok((paired, list.len(), missed))
        })
        .collect::<Result<_>>()?;
    let missed_planted = outcomes.iter().map(|o| o.2 as u64).sum();
    let over = outcomes.iter().filter(|o| o.1 > cap).count() as u64;
    Ok(ListSizeReport {
        m,
        trials,
        errors,
        bound: format_rational(&bound),
        max_list: outcomes.iter().map(|o| o.1).max().unwrap_or(0),
        max_list_paired: outcomes.iter().filter(|o| o.0).map(|o| o.1).max().unwrap_or(0),
        missed_planted,
        violations: missed_planted + over,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneReport {
    pub trials: u64,
    pub dim: usize,
    pub radius: String,
    pub epsilon: f64,
    pub eta: f64,
    pub iterations: u64,
    /// Codewords in the exact lists, summed over trials.
    pub listed: u64,
    pub missed: u64,
    pub miss_rate: f64,
    /// Whether the miss rate stays within twice `eta`.
    pub miss_rate_ok: bool,
    /// Outputs that are not in the exact list.
    pub violations: u64,
}

/// Random affine space of dimension `dim` through `f`, with independent
/// encoded directions.
pub fn random_space_through<R: Rng + ?Sized>(params: &CodeParams, f: &Poly, dim: usize, rng: &mut R) -> Result<CandidateSpace> {
    if dim > params.d() + 1 {
        return Err(Error::param("dimension exceeds the message space"));
    }
    let field = *params.field();
    let all: Vec<usize> = (0..params.n()).collect();
    loop {
        let basis: Vec<Poly> = (0..dim).map(|_| params.random_message(rng)).collect();
        let encoded = encode_basis(params, &basis)?;
        if crate::analysis::projection_rank(&field, &encoded, &all) == dim {
            return Ok(CandidateSpace {
                m: dim + 1,
                interpolation_degree: 0,
                max_degree: params.d(),
                space: Some(AffineSpace { offset: f.clone(), basis }),
            });
        }
    }
}

/// Prune against exact enumeration on random spaces of dimension `dim`
/// through a planted codeword with `floor(rho n)` errors.
///
/// `epsilon = delta - rho`, and the iteration count follows from `eta`.
pub fn prune_completeness(params: &CodeParams, dim: usize, rho: Rational64, eta: f64, trials: u64, seed: u64) -> Result<PruneReport> {
    let epsilon = (params.delta() - rho).to_f64().unwrap_or(0.0);
    let base = PruneConfig::new(epsilon, eta, 0)?;
    let iterations = base.iteration_count(dim, 1)?;
    let errors = crate::codes::max_misses(rho, params.n());
    let field = *params.field();
    let outcomes: Vec<(u64, u64, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let f = params.random_message(&mut rng);
            let space = random_space_through(params, &f, dim, &mut rng)?;
            let y = corrupt(&field, &params.encode(&f)?, errors, &mut rng)?;
            let sets = RecoverySets::from_word(&y);
            let exact = enumerate_list(params, &space, &sets, rho, ENUMERATION_BUDGET)?;
            let cfg = PruneConfig { seed: sub_rng(seed, t, 1).gen(), ..base.clone() };
            let pruned = prune(params, &space, &sets, rho, &cfg)?;
            let missed = exact.iter().filter(|g| !pruned.contains(g)).count() as u64;
            let unsound = pruned.iter().filter(|g| !exact.contains(g)).count() as u64;
            Ok((exact.len() as u64, missed, unsound))
        })
        .collect::<Result<_>>()?;
    let listed: u64 = outcomes.iter().map(|o| o.0).sum();
    let missed: u64 = outcomes.iter().map(|o| o.1).sum();
    let miss_rate = if listed == 0 { 0.0 } else { missed as f64 / listed as f64 };
    Ok(PruneReport {
        trials,
        dim,
        radius: rational_string(rho),
        epsilon,
        eta,
        iterations,
        listed,
        missed,
        miss_rate,
        miss_rate_ok: miss_rate <= 2.0 * eta,
        violations: outcomes.iter().map(|o| o.2).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubspaceReport {
    pub trials: u64,
    /// Spaces with `1 <= r < s` that were checked against the bound.
    pub checked: u64,
    /// Count of spaces per direction dimension `r`.
    pub dims_by_r: Vec<u64>,
    /// Largest `mean / bound` seen.
    pub max_ratio: f64,
    pub max_r0: usize,
    pub max_r0_with_offset: usize,
    /// Largest fine bound with the first planted codeword's agreement as `e`.
    pub max_fine_bound: Option<f64>,
    /// `R_(r-1)` above `(1 - delta) n` for the unrestricted definition; the
    /// projection is already full-dimensional there, so this is informative.
    pub full_rank_prefix_excess: u64,
    pub violations: u64,
}

/// Per-trial summary for the subspace experiment.
struct SubspaceTrial {
    r: usize,
    ratio: Option<f64>,
    r0: usize,
    r0_with_offset: usize,
    fine: Option<f64>,
    excess: bool,
    violations: u64,
}

/// Column-kernel and valid-vector statistics of decoder spaces on words
/// assembled from two codewords, so that the spaces are not just points.
pub fn subspace(params: &CodeParams, m: usize, trials: u64, seed: u64) -> Result<SubspaceReport> {
    let threshold = radius_threshold(params, m, 1)?;
    let n = params.n();
    let shared = shared_needed(n, threshold.max_errors);
    let delta = params.delta();
    let field = *params.field();
    let cap = (Rational64::from_integer(1) - delta) * Rational64::from_integer(n as i64);
    let outcomes: Vec<SubspaceTrial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let pair = plant_pair(params, shared, &mut rng)?;
            let space = list_decode(params, &pair.word, m)?;
            let mut violations = 0;
            if !space.contains(&field, &pair.first) || !space.contains(&field, &pair.second) {
                violations += 1;
            }
            let Some(stats) = candidate_space_stats(params, &space)? else {
                return Ok(SubspaceTrial { r: 0, ratio: None, r0: 0, r0_with_offset: 0, fine: None, excess: false, violations: violations + 1 });
            };
            let dir = &stats.direction;
            let ratio = match (dir.r, dir.bound) {
                (1.., Some(b)) => {
                    if dir.mean > b {
                        violations += 1;
                    }
                    Some((dir.mean / b).to_f64().unwrap_or(f64::NAN))
                }
                _ => None,
            };
            let agreement = n - set_misses(&params.encode(&pair.first)?, &RecoverySets::from_word(&pair.word))?;
            let fine = if dir.r >= 1 { apply_fine_bound(dir, agreement, 1, delta).ok().map(|b| to_f64(&b)) } else { None };
            let mut excess = false;
            if dir.r >= 1 {
                let basis = encode_basis(params, space.basis())?;
                let vv = valid_vector_stats(&field, &basis, dir.r - 1, u128::MAX)?;
                for i in 0..dir.r {
                    let ordered = i <= vv.r_seq[i] && vv.r_seq[i] <= vv.big_r_seq[i];
                    let monotone = i == 0 || (vv.r_seq[i - 1] <= vv.r_seq[i] && vv.big_r_seq[i - 1] <= vv.big_r_seq[i]);
                    if !ordered || !monotone {
                        violations += 1;
                    }
                }
                if vv.r_seq[0] != dir.r0 {
                    violations += 1;
                }
                let last = dir.r - 1;
                if let Some(p) = vv.partial_r_seq[last] {
                    if Rational64::from_integer(p as i64) > cap {
                        violations += 1;
                    }
                }
                excess = Rational64::from_integer(vv.big_r_seq[last] as i64) > cap;
            }
            Ok(SubspaceTrial { r: dir.r, ratio, r0: dir.r0, r0_with_offset: stats.r0_with_offset, fine, excess, violations })
        })
        .collect::<Result<_>>()?;
    let max_r = outcomes.iter().map(|o| o.r).max().unwrap_or(0);
    let mut dims_by_r = vec![0u64; max_r + 1];
    for o in &outcomes {
        dims_by_r[o.r] += 1;
    }
    Ok(SubspaceReport {
        trials,
        checked: outcomes.iter().filter(|o| o.ratio.is_some()).count() as u64,
        dims_by_r,
        max_ratio: outcomes.iter().filter_map(|o| o.ratio).fold(0.0, f64::max),
        max_r0: outcomes.iter().map(|o| o.r0).max().unwrap_or(0),
        max_r0_with_offset: outcomes.iter().map(|o| o.r0_with_offset).max().unwrap_or(0),
        max_fine_bound: outcomes.iter().filter_map(|o| o.fine).reduce(f64::max),
        full_rank_prefix_excess: outcomes.iter().filter(|o| o.excess).count() as u64,
        violations: outcomes.iter().map(|o| o.violations).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionReport {
    pub trials: u64,
    pub checked: u64,
    pub epsilon: String,
    pub min_fraction: Option<String>,
    pub violations: u64,
}

/// Share of agreement columns where little of the decoder space vanishes,
/// measured on two-codeword words with the first codeword's agreement set.
pub fn fraction_sweep(params: &CodeParams, m: usize, eps: Rational64, trials: u64, seed: u64) -> Result<FractionReport> {
    let threshold = radius_threshold(params, m, 1)?;
    let n = params.n();
    let shared = shared_needed(n, threshold.max_errors);
    let field = *params.field();
    let outcomes: Vec<Option<Rational64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let pair = plant_pair(params, shared, &mut rng)?;
            let space = list_decode(params, &pair.word, m)?;
            if space.dim().unwrap_or(0) == 0 {
                return Ok(None);
            }
            let c = params.encode(&pair.first)?;
            let agreement: Vec<usize> = (0..n).filter(|&i| c.column(i) == pair.word.column(i)).collect();
            let basis = encode_basis(params, space.basis())?;
            match iterative_fraction_check(&field, &basis, &agreement, eps, params.delta()) {
                Ok(check) => Ok(Some(check.fraction)),
                Err(Error::Invariant(_)) => Ok(Some(Rational64::from_integer(-1))),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let seen: Vec<Rational64> = outcomes.iter().flatten().copied().collect();
    let violations = seen.iter().filter(|f| **f < Rational64::from_integer(0)).count() as u64;
    Ok(FractionReport {
        trials,
        checked: seen.len() as u64,
        epsilon: rational_string(eps),
        min_fraction: seen.iter().filter(|f| **f >= Rational64::from_integer(0)).min().map(|f| rational_string(*f)),
        violations,
    })
}

/// Brute-force list versus decoder space and pruning on tiny parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub trials: u64,
    pub radius: String,
    pub max_list: usize,
    pub outside_space: u64,
    pub prune_mismatches: u64,
    pub enumerate_mismatches: u64,
}

/// For random received words at distance up to `floor(rho n)` from a
/// codeword: the brute-force list must lie in the decoder space, and prune
/// and enumeration must agree with each other and with the brute force.
pub fn oracle_agreement(params: &CodeParams, m: usize, rho: Rational64, eps: f64, trials: u64, seed: u64) -> Result<OracleReport> {
    let field = *params.field();
    let errors = crate::codes::max_misses(rho, params.n());
    let outcomes: Vec<(usize, bool, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let f = params.random_message(&mut rng);
            let e = rng.gen_range(0..=errors);
            let y = corrupt(&field, &params.encode(&f)?, e, &mut rng)?;
            let sets = RecoverySets::from_word(&y);
            let truth = brute_force_list(params, &sets, rho, OracleBudget::default())?;
            let space = list_decode(params, &y, m)?;
            let outside = truth.iter().any(|g| !space.contains(&field, g));
            let listed = enumerate_list(params, &space, &sets, rho, ENUMERATION_BUDGET)?;
            let cfg = PruneConfig::new(eps, 0.01, sub_rng(seed, t, 1).gen())?;
            let pruned = prune(params, &space, &sets, rho, &cfg)?;
            Ok((truth.len(), outside, pruned != listed, listed != truth))
        })
        .collect::<Result<_>>()?;
    Ok(OracleReport {
        trials,
        radius: rational_string(rho),
        max_list: outcomes.iter().map(|o| o.0).max().unwrap_or(0),
        outside_space: outcomes.iter().filter(|o| o.1).count() as u64,
        prune_mismatches: outcomes.iter().filter(|o| o.2).count() as u64,
        enumerate_mismatches: outcomes.iter().filter(|o| o.3).count() as u64,
    })
}
