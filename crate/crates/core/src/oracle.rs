//! Exhaustive ground truth over all `q^(d+1)` messages.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::algebra::{Fe, Field, Poly};
use crate::codes::{corrupt, max_misses, CodeParams, RecoverySets};
use crate::error::{Error, Result};
use crate::rng::sub_rng;

/// Random error patterns tried per sweep trial; the largest list counts.
pub const PATTERNS_PER_TRIAL: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_messages: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_messages: 1 << 25 }
    }
}

impl OracleBudget {
    pub fn new(max_messages: u128) -> Result<OracleBudget> {
        if max_messages == 0 {
            return Err(Error::param("budget must be positive"));
        }
        Ok(OracleBudget { max_messages })
    }

    fn admit(&self, params: &CodeParams) -> Result<u64> {
        let q = params.field().modulus() as u128;
        let required = q.checked_pow(params.d() as u32 + 1).unwrap_or(u128::MAX);
        if required > self.max_messages {
            return Err(Error::BudgetExceeded { required, budget: self.max_messages });
        }
        Ok(required as u64)
    }
}

/// Every message whose codeword is within `rho` of `sets`, sorted by
/// coefficients.
///
/// Messages are visited in mixed-radix order while the codeword is updated
/// incrementally by adding encoded monomials; the range is split on the
/// leading coefficient across workers.
pub fn brute_force_list(params: &CodeParams, sets: &RecoverySets, rho: Rational64, budget: OracleBudget) -> Result<Vec<Poly>> {
    budget.admit(params)?;
    if sets.n() != params.n() || sets.s() != params.s() {
        return Err(Error::param("recovery sets do not match the code shape"));
    }
    let field = *params.field();
    let q = field.modulus();
    let d = params.d();
    let (n, s) = (params.n(), params.s());
    let limit = max_misses(rho, n);
    let monomials: Vec<Vec<Fe>> = (0..=d)
        .map(|k| params.encode(&Poly::monomial(k)).map(|c| c.columns().concat()))
        .collect::<Result<_>>()?;

    let mut out: Vec<Poly> = (0..q)
        .into_par_iter()
        .flat_map_iter(|lead| {
            let mut found = Vec::new();
            let mut digits = vec![0u64; d + 1];
            digits[d] = lead;
            let mut word: Vec<Fe> = monomials[d].iter().map(|&x| field.mul(x, field.elem(lead))).collect();
            loop {
                let misses = (0..n)
                    .filter(|&i| !sets.contains(i, &word[i * s..(i + 1) * s]))
                    .take(limit + 1)
                    .count();
                if misses <= limit {
                    found.push(Poly::from_values(&field, &digits));
                }
                if !advance(&field, &mut digits[..d], &mut word, &monomials, q) {
                    break;
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Steps the low digits; returns false after the last combination.
fn advance(field: &Field, digits: &mut [u64], word: &mut [Fe], monomials: &[Vec<Fe>], q: u64) -> bool {
    for (k, digit) in digits.iter_mut().enumerate() {
        *digit += 1;
        for (w, &m) in word.iter_mut().zip(&monomials[k]) {
            *w = field.add(*w, m);
        }
        // The q-th addition of a monomial restores the word.
        if *digit < q {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Largest brute-force list seen over `trials` random received words, each
/// the worst of several random patterns of `floor(rho n)` errors.
pub fn max_list_size_sweep(
    params: &CodeParams,
    rho: Rational64,
    trials: u64,
    seed: u64,
    budget: OracleBudget,
) -> Result<usize> {
    budget.admit(params)?;
    let errors = max_misses(rho, params.n()).min(params.n());
    let field = *params.field();
    let mut best = 0;
    for trial in 0..trials {
        let mut rng = sub_rng(seed, trial, 0);
        let c = params.encode(&params.random_message(&mut rng))?;
        for pattern in 0..PATTERNS_PER_TRIAL {
            let mut rng = sub_rng(seed, trial, pattern + 1);
            let y = corrupt(&field, &c, errors, &mut rng)?;
            let list = brute_force_list(params, &RecoverySets::from_word(&y), rho, budget)?;
            best = best.max(list.len());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{FrsParams, MultParams};
    use crate::rng::trial_rng;

    fn tiny() -> CodeParams {
        CodeParams::from(FrsParams::new(Field::new(13).unwrap(), 3, 4, 3).unwrap())
    }

    #[test]
    fn exact_word_at_radius_zero() {
        let code = tiny();
        let mut rng = trial_rng(1, 0);
        let f = code.random_message(&mut rng);
        let sets = RecoverySets::from_word(&code.encode(&f).unwrap());
        assert_eq!(brute_force_list(&code, &sets, Rational64::from_integer(0), OracleBudget::default()).unwrap(), vec![f]);
    }

    #[test]
    fn full_radius_lists_every_message() {
        let code = CodeParams::from(FrsParams::new(Field::new(7).unwrap(), 2, 3, 2).unwrap());
        let sets = RecoverySets::from_word(&crate::codes::Codeword::zero(3, 2));
        let all = brute_force_list(&code, &sets, Rational64::from_integer(1), OracleBudget::default()).unwrap();
        assert_eq!(all.len(), 343);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let code = tiny();
        let sets = RecoverySets::from_word(&crate::codes::Codeword::zero(4, 3));
        let err = brute_force_list(&code, &sets, Rational64::new(1, 4), OracleBudget::new(1000).unwrap());
        assert_eq!(err, Err(Error::BudgetExceeded { required: 28561, budget: 1000 }));
    }

    #[test]
    fn monotone_in_radius() {
        let code = tiny();
        let field = *code.field();
        for trial in 0..5 {
            let mut rng = trial_rng(2, trial);
            let c = code.encode(&code.random_message(&mut rng)).unwrap();
            let y = corrupt(&field, &c, 2, &mut rng).unwrap();
            let sets = RecoverySets::from_word(&y);
            let mut prev: Vec<Poly> = Vec::new();
            for k in 0..=4 {
                let list = brute_force_list(&code, &sets, Rational64::new(k, 4), OracleBudget::default()).unwrap();
                assert!(prev.iter().all(|f| list.contains(f)));
                prev = list;
            }
        }
    }

    #[test]
    fn multiplicity_codes_are_supported() {
        let code = CodeParams::from(MultParams::new(Field::new(11).unwrap(), 2, 4, 3, None).unwrap());
        let mut rng = trial_rng(3, 0);
        let f = code.random_message(&mut rng);
        let sets = RecoverySets::from_word(&code.encode(&f).unwrap());
        assert_eq!(brute_force_list(&code, &sets, Rational64::new(1, 4), OracleBudget::default()).unwrap(), vec![f]);
    }

    #[test]
    fn sweeps() {
        let code = tiny();
        // Below half the distance (delta = 3/4) the list is the planted word.
        assert_eq!(max_list_size_sweep(&code, Rational64::new(1, 4), 5, 4, OracleBudget::default()).unwrap(), 1);
        assert_eq!(max_list_size_sweep(&code, Rational64::from_integer(0), 3, 4, OracleBudget::default()).unwrap(), 1);
        // At the m = 2 decoding radius 1/3 the list has at most two entries.
        let at_radius = max_list_size_sweep(&code, Rational64::new(1, 3), 10, 4, OracleBudget::default()).unwrap();
        assert!((1..=2).contains(&at_radius));
    }
}
