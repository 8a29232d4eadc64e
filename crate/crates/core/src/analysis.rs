//! Statistics of candidate spaces viewed as subspaces of the code: how much
//! of the space vanishes at each column, and how fast coordinate projections
//! gain dimension.

use num_rational::{BigRational, Rational64};
use serde::{Serialize, Serializer};

use crate::algebra::{Fe, Field, Matrix, Poly};
use crate::bounds::{fine_bound, format_rational, to_big};
use crate::codes::{CodeParams, Codeword};
use crate::decoder::CandidateSpace;
use crate::error::{Error, Result};

fn serialize_rational<S: Serializer>(x: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(&to_big(*x)))
}

fn serialize_opt_rational<S: Serializer>(x: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => serialize_rational(x, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceStats {
    /// `dim(V ∩ H_i)`: dimension of the part of `V` vanishing at column `i`.
    pub dims: Vec<usize>,
    #[serde(serialize_with = "serialize_rational")]
    pub mean: Rational64,
    /// `(1 - delta)/(1 - r/s) * r`; absent when `r >= s`.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub bound: Option<Rational64>,
    /// Columns where every vector of `V` is zero.
    pub r0: usize,
    pub r: usize,
}

impl SubspaceStats {
    /// `None` when the bound does not apply.
    pub fn within_bound(&self) -> Option<bool> {
        self.bound.map(|b| self.mean <= b)
    }
}

/// Codewords of the basis polynomials.
pub fn encode_basis(params: &CodeParams, basis: &[Poly]) -> Result<Vec<Codeword>> {
    basis.iter().map(|f| params.encode(f)).collect()
}

/// Rank of the projection of `basis` onto the given columns.
pub fn projection_rank(field: &Field, basis: &[Codeword], columns: &[usize]) -> usize {
    if basis.is_empty() || columns.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Fe>> = basis
        .iter()
        .map(|c| columns.iter().flat_map(|&i| c.column(i).iter().copied()).collect())
        .collect();
    Matrix::from_rows(rows).expect("codewords share a shape").rank(field)
}

fn check_basis(field: &Field, basis: &[Codeword], n: usize, s: usize) -> Result<()> {
    if basis.iter().any(|c| c.n() != n || c.s() != s) {
        return Err(Error::param(format!("basis vectors must have shape {n}x{s}")));
    }
    let all: Vec<usize> = (0..n).collect();
    if projection_rank(field, basis, &all) != basis.len() {
        return Err(Error::param("basis vectors are linearly dependent"));
    }
    Ok(())
}

/// Per-column `dim(V ∩ H_i)` for the span `V` of an independent basis, with
/// the expectation bound for a code of relative distance `delta`.
pub fn column_kernel_dims(field: &Field, basis: &[Codeword], n: usize, s: usize, delta: Rational64) -> Result<SubspaceStats> {
    check_basis(field, basis, n, s)?;
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let r = basis.len();
    let dims: Vec<usize> = (0..n).map(|i| r - projection_rank(field, basis, &[i])).collect();
    let r0 = if r == 0 { n } else { dims.iter().filter(|&&k| k == r).count() };
    let mean = Rational64::new(dims.iter().sum::<usize>() as i64, n as i64);
    let bound = (r < s).then(|| {
        let one = Rational64::from_integer(1);
        (one - delta) / (one - Rational64::new(r as i64, s as i64)) * Rational64::from_integer(r as i64)
    });
    Ok(SubspaceStats { dims, mean, bound, r0, r })
}

/// Statistics of a candidate space under both readings of "the subspace":
/// its direction space, and the span of the offset together with the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceStats {
    pub direction: SubspaceStats,
    /// `r0` of `span({offset} ∪ basis)`.
    pub r0_with_offset: usize,
}

/// `None` for an empty candidate space.
pub fn candidate_space_stats(params: &CodeParams, space: &CandidateSpace) -> Result<Option<SpaceStats>> {
    let Some(offset) = space.offset() else { return Ok(None) };
    let basis = encode_basis(params, space.basis())?;
    let direction = column_kernel_dims(params.field(), &basis, params.n(), params.s(), params.delta())?;
    let offset = params.encode(offset)?;
    let r0_with_offset = (0..params.n())
        .filter(|&i| direction.dims[i] == direction.r && offset.column(i).iter().all(|x| x.is_zero()))
        .count();
    Ok(Some(SpaceStats { direction, r0_with_offset }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionCheck {
    #[serde(serialize_with = "serialize_rational")]
    pub beta: Rational64,
    /// `floor(beta * dim(U))`.
    pub threshold: usize,
    /// Share of `A` with `dim(U ∩ H_i) <= threshold`.
    #[serde(serialize_with = "serialize_rational")]
    pub fraction: Rational64,
}

/// Measures the share of agreement columns where little of `U` vanishes and
/// checks it is at least `eps/4`.
///
/// `beta = (1 - delta)(1 + eps/2) / ((1 - delta + eps)(1 - r/s))` with
/// `r = dim(U)`. A share below `eps/4` is reported as an invariant failure.
pub fn iterative_fraction_check(
    field: &Field,
    basis: &[Codeword],
    agreement: &[usize],
    eps: Rational64,
    delta: Rational64,
) -> Result<FractionCheck> {
    let Some(first) = basis.first() else {
        return Err(Error::param("U must have dimension at least 1"));
    };
    let (n, s) = (first.n(), first.s());
    check_basis(field, basis, n, s)?;
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    if eps <= zero || delta <= zero || delta > one {
        return Err(Error::param("need eps > 0 and 0 < delta <= 1"));
    }
    let mut columns = agreement.to_vec();
    columns.sort_unstable();
    columns.dedup();
    if columns.len() != agreement.len() || columns.iter().any(|&i| i >= n) {
        return Err(Error::param("agreement set must hold distinct columns below n"));
    }
    let needed = (one - delta + eps) * Rational64::from_integer(n as i64);
    if Rational64::from_integer(columns.len() as i64) < needed {
        return Err(Error::param(format!(
            "agreement set of size {} is smaller than (1 - delta + eps) n = {needed}",
            columns.len()
        )));
    }
    let r = basis.len();
    let load = Rational64::new(r as i64, s as i64);
    if load * 4 > eps {
        return Err(Error::param(format!("dim(U)/s = {load} exceeds eps/4")));
    }
    let two = Rational64::from_integer(2);
    let beta = (one - delta) * (one + eps / two) / ((one - delta + eps) * (one - load));
    let threshold = (beta * Rational64::from_integer(r as i64)).floor().to_integer() as usize;
    let good = columns
        .iter()
        .filter(|&&i| r - projection_rank(field, basis, &[i]) <= threshold)
        .count();
    let fraction = Rational64::new(good as i64, columns.len() as i64);
    if fraction * 4 < eps {
        return Err(Error::invariant(format!(
            "only {fraction} of the agreement set meets the threshold {threshold}, below eps/4"
        )));
    }
    Ok(FractionCheck { beta, threshold, fraction })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidVectorStats {
    /// `r_i`: least closure size over valid vectors of length `i`.
    pub r_seq: Vec<usize>,
    /// `R_i`: largest closure size over valid vectors of length `i`.
    #[serde(rename = "R_seq")]
    pub big_r_seq: Vec<usize>,
    /// `R_i` restricted to valid vectors whose projection is not yet
    /// full-dimensional; `None` when every such vector is.
    #[serde(rename = "R_seq_partial")]
    pub partial_r_seq: Vec<Option<usize>>,
    /// Number of valid vectors of each length.
    pub counts: Vec<u64>,
}

/// Closure of a coordinate set: every column whose addition keeps the
/// projection dimension.
///
/// One greedy pass suffices because projection rank is a matroid rank
/// function.
pub fn closure(field: &Field, basis: &[Codeword], coords: &[usize], n: usize) -> Vec<usize> {
    let mut set: Vec<usize> = coords.to_vec();
    set.sort_unstable();
    set.dedup();
    let rank = projection_rank(field, basis, &set);
    let mut extra = Vec::new();
    for j in 0..n {
        if set.binary_search(&j).is_err() {
            let mut with = set.clone();
            with.push(j);
            if projection_rank(field, basis, &with) == rank {
                extra.push(j);
            }
        }
    }
    set.extend(extra);
    set.sort_unstable();
    set
}

/// Enumerates valid coordinate vectors of length up to `t_max` and reports
/// the closure-size sequences.
///
/// A vector is valid when every entry raises the projection dimension by at
/// least one, or the dimension is already full.
pub fn valid_vector_stats(field: &Field, basis: &[Codeword], t_max: usize, budget: u128) -> Result<ValidVectorStats> {
    let Some(first) = basis.first() else {
        return Err(Error::param("V must have dimension at least 1"));
    };
    let (n, s) = (first.n(), first.s());
    check_basis(field, basis, n, s)?;
    let required = (n as u128).checked_pow(t_max as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let r = basis.len();
    let mut stats = ValidVectorStats { r_seq: Vec::new(), big_r_seq: Vec::new(), partial_r_seq: Vec::new(), counts: Vec::new() };
    // Each level holds (prefix, projection rank, closure size).
    let base = closure(field, basis, &[], n).len();
    let mut level: Vec<(Vec<usize>, usize, usize)> = vec![(Vec::new(), 0, base)];
    for t in 0..=t_max {
        stats.r_seq.push(level.iter().map(|e| e.2).min().expect("valid vectors exist"));
        stats.big_r_seq.push(level.iter().map(|e| e.2).max().expect("valid vectors exist"));
        stats.partial_r_seq.push(level.iter().filter(|e| e.1 < r).map(|e| e.2).max());
        stats.counts.push(level.len() as u64);
        if t == t_max {
            break;
        }
        let mut next = Vec::new();
        for (prefix, rank, _) in &level {
            for j in 0..n {
                let mut u = prefix.clone();
                u.push(j);
                let new_rank = projection_rank(field, basis, &u);
                if new_rank >= r.min(rank + 1) {
                    let size = closure(field, basis, &u, n).len();
                    next.push((u, new_rank, size));
                }
            }
        }
        level = next;
    }
    Ok(stats)
}

/// The fine list-size bound with `r` and `r0` taken from measured statistics.
pub fn apply_fine_bound(stats: &SubspaceStats, e: usize, ell: usize, delta: Rational64) -> Result<BigRational> {
    fine_bound(stats.dims.len() as u64, e as u64, stats.r as u64, ell as u64, &to_big(delta), stats.r0 as u64)
}
