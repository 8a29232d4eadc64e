//! Closed-form decoding radii and list-size bounds.
//!
//! Radii, the fixed-`m` bounds and the fine bound are exact rationals. The
//! capacity-regime bounds have real exponents in general and are reported as
//! floating point, together with an exact value whenever the exponent is an
//! integer.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest integer exponent for which exact powers are materialized.
const EXACT_EXPONENT_LIMIT: u64 = 4096;

pub fn to_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"0.05"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Format(format!("cannot parse {text:?} as a rational"));
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{}{frac}", if whole.is_empty() { "0" } else { whole })
        .parse()
        .map_err(|_| bad())?;
    let value = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

fn open_unit(name: &str, x: &BigRational) -> Result<()> {
    if !x.is_positive() || *x >= BigRational::one() {
        return Err(Error::param(format!("{name} = {} must lie in (0, 1)", format_rational(x))));
    }
    Ok(())
}

fn half_open_unit(name: &str, x: &BigRational) -> Result<()> {
    if !x.is_positive() || *x > BigRational::one() {
        return Err(Error::param(format!("{name} = {} must lie in (0, 1]", format_rational(x))));
    }
    Ok(())
}

/// Fraction of errors the degree-1 interpolation decoder with parameter `m`
/// handles: `(m/(m+1)) (1 - sR/(s - m + 1))`. May be nonpositive.
pub fn frs_radius(m: u64, s: u64, rate: &BigRational) -> Result<BigRational> {
    if m == 0 || m > s {
        return Err(Error::param(format!("m = {m} must lie in 1..={s}")));
    }
    open_unit("R", rate)?;
    let window = int((s - m + 1) as i64);
    Ok(ratio(m as i64, (m + 1) as i64) * (BigRational::one() - int(s as i64) * rate / window))
}

/// `(L/(L+1)) (1 - R)`.
pub fn generalized_singleton(list: u64, rate: &BigRational) -> Result<BigRational> {
    if list == 0 {
        return Err(Error::param("list size must be at least 1"));
    }
    Ok(ratio(list as i64, list as i64 + 1) * (BigRational::one() - rate))
}

/// A bound that may be astronomically large.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Magnitude {
    pub value: f64,
    pub log10: f64,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub exact: Option<BigRational>,
}

impl Magnitude {
    /// `base^exponent`, exact when the exponent is a small integer.
    fn power(base: &BigRational, exponent: &BigRational) -> Magnitude {
        let log10 = to_f64(exponent) * to_f64(base).log10();
        let exact = (exponent.is_integer() && !exponent.is_negative())
            .then(|| exponent.to_integer().to_u64())
            .flatten()
            .filter(|&k| k <= EXACT_EXPONENT_LIMIT)
            .map(|k| num_traits::pow(base.clone(), k as usize));
        let value = exact.as_ref().map_or_else(|| 10f64.powf(log10), to_f64);
        Magnitude { value, log10, exact }
    }
}

/// `(1/eps)^(4/eps)`.
pub fn list_bound_decoding(eps: &BigRational) -> Result<Magnitude> {
    list_bound_recovery(1, eps)
}

/// `(ell/eps)^(4 ell/eps)`.
pub fn list_bound_recovery(ell: u64, eps: &BigRational) -> Result<Magnitude> {
    if ell == 0 {
        return Err(Error::param("ell must be at least 1"));
    }
    half_open_unit("eps", eps)?;
    let base = int(ell as i64) / eps;
    let exponent = int(4 * ell as i64) / eps;
    Ok(Magnitude::power(&base, &exponent))
}

/// `(ell/eps)^((4 ell/eps)(1 + d/p))`, valid when `4 ell/eps <= p`.
pub fn list_bound_mult(ell: u64, eps: &BigRational, d: u64, p: u64) -> Result<Magnitude> {
    if ell == 0 {
        return Err(Error::param("ell must be at least 1"));
    }
    half_open_unit("eps", eps)?;
    if !crate::algebra::is_prime(p) {
        return Err(Error::param(format!("characteristic {p} is not prime")));
    }
    let dim = int(4 * ell as i64) / eps;
    if dim > int(p as i64) {
        return Err(Error::param(format!(
            "4 ell/eps = {} exceeds the characteristic {p}",
            format_rational(&dim)
        )));
    }
    let base = int(ell as i64) / eps;
    let exponent = dim * (BigRational::one() + ratio(d as i64, p as i64));
    Ok(Magnitude::power(&base, &exponent))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImprovedBound {
    pub beta: f64,
    pub exponent: f64,
    pub list_size: f64,
    pub log10_list_size: f64,
    /// Output-space dimension `4 ell/eps` the bound is built on.
    #[serde(serialize_with = "serialize_rational")]
    pub dimension: BigRational,
}

/// The subspace-design refinement for FRS list recovery:
/// `beta = (1-delta)(1+eps/2)/((1-delta+eps)(1-r/s))` with `r = 4 ell/eps`,
/// exponent `1/eps + log_{1/beta}(4 ell)` and
/// `L = (4 ell/(eps (1 - delta + eps)))^exponent`.
pub fn list_bound_recovery_improved(ell: u64, eps: &BigRational, delta: &BigRational, s: u64) -> Result<ImprovedBound> {
    if ell == 0 || s == 0 {
        return Err(Error::param("ell and s must be positive"));
    }
    open_unit("delta", delta)?;
    if !eps.is_positive() || eps >= delta {
        return Err(Error::param("eps must lie in (0, delta)"));
    }
    let r = int(4 * ell as i64) / eps;
    let load = &r / int(s as i64);
    if load > eps / int(4) {
        return Err(Error::param(format!(
            "r/s = {} exceeds eps/4 = {}",
            format_rational(&load),
            format_rational(&(eps / int(4)))
        )));
    }
    let one = BigRational::one();
    let slack = &one - delta + eps;
    let beta = (&one - delta) * (&one + eps / int(2)) / (&slack * (&one - &load));
    if beta >= one {
        return Err(Error::invariant(format!("beta = {} is not below 1", format_rational(&beta))));
    }
    let beta_f = to_f64(&beta);
    let exponent = 1.0 / to_f64(eps) + (4.0 * ell as f64).ln() / (1.0 / beta_f).ln();
    let base = to_f64(&(int(4 * ell as i64) / (eps * &slack)));
    let log10 = exponent * base.log10();
    Ok(ImprovedBound {
        beta: beta_f,
        exponent,
        list_size: 10f64.powf(log10),
        log10_list_size: log10,
        dimension: r,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedMBound {
    pub cond2_holds: bool,
    /// The theorem's bound for the active branch.
    #[serde(serialize_with = "serialize_rational")]
    pub list_size: BigRational,
    /// The active branch before its large-`s` simplification, when defined.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub finite_s: Option<BigRational>,
}

fn cond2(m: u64, s: u64, rate: &BigRational) -> bool {
    let m_i = m as i64;
    let load = int(s as i64) * rate / int((s - m + 1) as i64);
    ratio(m_i - 1, m_i + 1) + ratio((m_i - 1) * m_i, m_i + 1) * load <= BigRational::one()
}

/// `(m-1)^(m-1) (m/(m-2))^(m-2)`: the fixed-`m` bound when the condition
/// holds.
pub fn fixed_m_small_load(m: u64) -> Result<BigRational> {
    if m < 3 {
        return Err(Error::param("fixed-m bound needs m >= 3"));
    }
    let mi = m as i64;
    Ok(num_traits::pow(int(mi - 1), (m - 1) as usize) * num_traits::pow(ratio(mi, mi - 2), (m - 2) as usize))
}

/// `(m+1)^(m-1) / ((1 + mR)(1 - R)^(m-2))`: the fixed-`m` bound otherwise.
pub fn fixed_m_general(m: u64, rate: &BigRational) -> Result<BigRational> {
    if m < 3 {
        return Err(Error::param("fixed-m bound needs m >= 3"));
    }
    open_unit("R", rate)?;
    let one = BigRational::one();
    let mi = m as i64;
    Ok(num_traits::pow(int(mi + 1), (m - 1) as usize)
        / ((&one + int(mi) * rate) * num_traits::pow(&one - rate, (m - 2) as usize)))
}

/// List-size bound for decoding parameter `m >= 3`, branching on
/// `(m-1)/(m+1) + ((m-1)m/(m+1)) sR/(s-m+1) <= 1`.
pub fn fixed_m_bound(m: u64, s: u64, rate: &BigRational) -> Result<FixedMBound> {
    if m < 3 {
        return Err(Error::param("fixed-m bound needs m >= 3; use m2_bound for m = 2"));
    }
    if s < m {
        return Err(Error::param(format!("s = {s} must be at least m = {m}")));
    }
    open_unit("R", rate)?;
    let one = BigRational::one();
    let mi = m as i64;
    let holds = cond2(m, s, rate);
    let rho = frs_radius(m, s, rate)?;
    if holds {
        let list_size = fixed_m_small_load(m)?;
        // (m-1)^(m-1) ((n-e)/((m-2)(e-Rn)))^(m-2) with (n-e)/n = rho.
        let gap = &one - &rho - rate;
        let finite_s = gap.is_positive().then(|| {
            num_traits::pow(int(mi - 1), (m - 1) as usize)
                * num_traits::pow(&rho / (int(mi - 2) * &gap), (m - 2) as usize)
        });
        Ok(FixedMBound { cond2_holds: true, list_size, finite_s })
    } else {
        let list_size = fixed_m_general(m, rate)?;
        let si = s as i64;
        let window = int(si - mi + 1);
        let head = &one + int(si * mi) * rate / &window;
        let tail = &one - int(si - mi * mi + 1) * rate / &window;
        let finite_s = (tail.is_positive()).then(|| {
            num_traits::pow(int(mi + 1), (m - 1) as usize) / (head * num_traits::pow(tail, (m - 2) as usize))
        });
        Ok(FixedMBound { cond2_holds: false, list_size, finite_s })
    }
}

/// `3(1-R)/(1-R+2R/(s-1))`, always below 3.
pub fn m2_bound(s: u64, rate: &BigRational) -> Result<BigRational> {
    if s < 2 {
        return Err(Error::param("m = 2 needs s >= 2"));
    }
    open_unit("R", rate)?;
    let one = BigRational::one();
    let value = int(3) * (&one - rate) / (&one - rate + int(2) * rate / int(s as i64 - 1));
    if value >= int(3) {
        return Err(Error::invariant("m = 2 list bound reached 3"));
    }
    Ok(value)
}

/// `ell^r (n - r0)^r / ((e - r0) (e - (1 - delta) n)^(r - 1))`.
pub fn fine_bound(n: u64, e: u64, r: u64, ell: u64, delta: &BigRational, r0: u64) -> Result<BigRational> {
    if r == 0 || ell == 0 {
        return Err(Error::param("r and ell must be positive"));
    }
    if r0 > n || e > n {
        return Err(Error::param("r0 and e must not exceed n"));
    }
    let n_q = int(n as i64);
    let covered = (BigRational::one() - delta) * &n_q;
    let e_q = int(e as i64);
    if e_q <= covered {
        return Err(Error::param(format!(
            "agreement e = {e} must exceed (1 - delta) n = {}",
            format_rational(&covered)
        )));
    }
    if e <= r0 {
        return Err(Error::param(format!("agreement e = {e} must exceed r0 = {r0}")));
    }
    let r = r as usize;
    let numer = num_traits::pow(int(ell as i64), r) * num_traits::pow(int((n - r0) as i64), r);
    let denom = int((e - r0) as i64) * num_traits::pow(&e_q - covered, r - 1);
    Ok(numer / denom)
}

/// `ceil(eps^-r (r ln(ell/eps) + ln(1/eta)))`, at least 1.
pub fn prune_iterations(eps: f64, r: usize, ell: usize, eta: f64) -> Result<u64> {
    if !(eps > 0.0 && eps <= 1.0) || !(eta > 0.0 && eta < 1.0) || ell == 0 {
        return Err(Error::param("need 0 < eps <= 1, 0 < eta < 1, ell >= 1"));
    }
    if r == 0 {
        return Ok(1);
    }
    let count = eps.powi(-(r as i32)) * (r as f64 * (ell as f64 / eps).ln() + (1.0 / eta).ln());
    if !count.is_finite() || count > u64::MAX as f64 {
        return Err(Error::param("iteration count overflows"));
    }
    Ok((count.ceil() as u64).max(1))
}

fn serialize_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn serialize_opt_rational<S: serde::Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&format_rational(x)),
        None => s.serialize_none(),
    }
}

/// Inputs for a combined report; every field is optional and each bound is
/// evaluated only when its inputs are present.
#[derive(Clone, Debug, Default)]
pub struct BoundQuery {
    pub m: Option<u64>,
    pub s: Option<u64>,
    pub rate: Option<BigRational>,
    pub eps: Option<BigRational>,
    pub ell: Option<u64>,
    pub delta: Option<BigRational>,
    pub d: Option<u64>,
    pub p: Option<u64>,
    pub list: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Omitted {
    pub bound: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub radius: Option<BigRational>,
    #[serde(serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub singleton: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(rename = "L_main", skip_serializing_if = "Option::is_none")]
    pub l_main: Option<Magnitude>,
    #[serde(rename = "L_mult", skip_serializing_if = "Option::is_none")]
    pub l_mult: Option<Magnitude>,
    #[serde(rename = "L_improved", skip_serializing_if = "Option::is_none")]
    pub l_improved: Option<f64>,
    #[serde(rename = "L_fixed_m", serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub l_fixed_m: Option<BigRational>,
    #[serde(rename = "L_fixed_m_finite_s", serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub l_fixed_m_finite_s: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cond2_holds: Option<bool>,
    #[serde(rename = "L_m2", serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub l_m2: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prune_iterations: Option<u64>,
    pub omitted: Vec<Omitted>,
}

impl BoundReport {
    /// Evaluates every bound whose inputs are present; failures are recorded
    /// in `omitted` with the reason.
    pub fn evaluate(q: &BoundQuery) -> BoundReport {
        let mut report = BoundReport::default();
        let ell = q.ell.unwrap_or(1);
        let note = |bound: &'static str, reason: String| Omitted { bound, reason };
        let mut omitted = Vec::new();

        match (q.m, q.s, &q.rate) {
            (Some(m), Some(s), Some(rate)) => match frs_radius(m, s, rate) {
                Ok(r) => report.radius = Some(r),
                Err(e) => omitted.push(note("radius", e.to_string())),
            },
            _ => omitted.push(note("radius", "needs m, s, R".into())),
        }
        // Defaults to the list-of-two comparison point.
        match &q.rate {
            Some(rate) => match generalized_singleton(q.list.unwrap_or(2), rate) {
                Ok(v) => report.singleton = Some(v),
                Err(e) => omitted.push(note("singleton", e.to_string())),
            },
            None => omitted.push(note("singleton", "needs R".into())),
        }
        match &q.eps {
            Some(eps) => match list_bound_recovery(ell, eps) {
                Ok(v) => report.l_main = Some(v),
                Err(e) => omitted.push(note("L_main", e.to_string())),
            },
            None => omitted.push(note("L_main", "needs eps".into())),
        }
        match (&q.eps, q.d, q.p) {
            (Some(eps), Some(d), Some(p)) => match list_bound_mult(ell, eps, d, p) {
                Ok(v) => report.l_mult = Some(v),
                Err(e) => omitted.push(note("L_mult", e.to_string())),
            },
            _ => omitted.push(note("L_mult", "needs eps, d, p".into())),
        }
        match (&q.eps, &q.delta, q.s) {
            (Some(eps), Some(delta), Some(s)) => match list_bound_recovery_improved(ell, eps, delta, s) {
                Ok(v) => {
                    report.beta = Some(v.beta);
                    report.exponent = Some(v.exponent);
                    report.l_improved = Some(v.list_size);
                }
                Err(e) => omitted.push(note("L_improved", e.to_string())),
            },
            _ => omitted.push(note("L_improved", "needs eps, delta, s".into())),
        }
        match (q.m, q.s, &q.rate) {
            (Some(2), Some(s), Some(rate)) => match m2_bound(s, rate) {
                Ok(v) => report.l_m2 = Some(v),
                Err(e) => omitted.push(note("L_m2", e.to_string())),
            },
            (Some(m), Some(s), Some(rate)) if m >= 3 => match fixed_m_bound(m, s, rate) {
                Ok(v) => {
                    report.cond2_holds = Some(v.cond2_holds);
                    report.l_fixed_m = Some(v.list_size);
                    report.l_fixed_m_finite_s = v.finite_s;
                }
                Err(e) => omitted.push(note("L_fixed_m", e.to_string())),
            },
            _ => omitted.push(note("L_fixed_m", "needs m >= 2, s, R".into())),
        }
        report.omitted = omitted;
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let r = ratio(1, 3);
        assert_eq!(frs_radius(1, 7, &r).unwrap(), (int(1) - &r) / int(2));
        assert_eq!(frs_radius(2, 5, &r).unwrap(), ratio(7, 18));
        let limit = frs_radius(2, 1_000_000, &ratio(1, 4)).unwrap();
        assert!((to_f64(&limit) - 0.5).abs() < 1e-5);
        assert_eq!(frs_radius(3, 8, &ratio(1, 4)).unwrap(), ratio(1, 2));
        assert!(frs_radius(4, 3, &r).is_err());
        // Extreme rates give nonpositive radii, returned as-is.
        assert!(!frs_radius(3, 3, &ratio(9, 10)).unwrap().is_positive());
    }

    #[test]
    fn singleton_examples() {
        let r = ratio(1, 4);
        assert_eq!(generalized_singleton(1, &r).unwrap(), ratio(3, 8));
        assert_eq!(generalized_singleton(2, &r).unwrap(), ratio(1, 2));
        let far = generalized_singleton(100_000, &r).unwrap();
        assert!((to_f64(&far) - 0.75).abs() < 1e-4);
        assert!(generalized_singleton(0, &r).is_err());
    }

    #[test]
    fn capacity_bounds() {
        assert_eq!(list_bound_decoding(&int(1)).unwrap().exact, Some(int(1)));
        assert_eq!(list_bound_decoding(&ratio(1, 2)).unwrap().exact, Some(int(256)));
        assert_eq!(list_bound_decoding(&ratio(1, 4)).unwrap().exact, Some(int(1i64 << 32)));
        assert!(list_bound_decoding(&int(0)).is_err());
        assert!(list_bound_decoding(&ratio(3, 2)).is_err());

        assert_eq!(list_bound_recovery(1, &ratio(1, 3)).unwrap(), list_bound_decoding(&ratio(1, 3)).unwrap());
        assert_eq!(list_bound_recovery(2, &int(1)).unwrap().exact, Some(int(256)));
        assert_eq!(list_bound_recovery(2, &ratio(1, 2)).unwrap().exact, Some(int(1i64 << 32)));
        // Non-integer exponent: float only.
        let m = list_bound_decoding(&ratio(3, 10)).unwrap();
        assert!(m.exact.is_none());
        assert!((m.log10 - (40.0 / 3.0) * (10.0f64 / 3.0).log10()).abs() < 1e-9);
    }

    #[test]
    fn mult_bound() {
        let eps = ratio(1, 2);
        assert_eq!(list_bound_mult(1, &eps, 0, 409).unwrap().exact, list_bound_recovery(1, &eps).unwrap().exact);
        assert_eq!(list_bound_mult(1, &eps, 409, 409).unwrap().exact, Some(int(1 << 16)));
        let near = list_bound_mult(1, &eps, 1, 1_000_003).unwrap().value;
        assert!((near / 256.0 - 1.0).abs() < 0.01);
        assert!(list_bound_mult(1, &ratio(1, 100), 0, 7).is_err());
        assert!(list_bound_mult(1, &eps, 0, 8).is_err());
    }

    #[test]
    fn improved_bound_example() {
        let b = list_bound_recovery_improved(1, &ratio(1, 5), &ratio(9, 10), 400).unwrap();
        assert!((b.beta - 0.11 / 0.285).abs() < 1e-12);
        assert!((b.beta - 0.386).abs() < 1e-3);
        assert!((b.exponent - 6.46).abs() < 0.01);
        assert!((b.list_size / 6.0e11 - 1.0).abs() < 0.05);
        assert!(b.exponent > 1.0 / 0.2);
        // r/s > eps/4 is refused, not clamped.
        assert!(list_bound_recovery_improved(1, &ratio(1, 5), &ratio(9, 10), 399).is_err());
        assert!(list_bound_recovery_improved(1, &ratio(19, 20), &ratio(9, 10), 10_000).is_err());
    }

    #[test]
    fn fixed_m_examples() {
        let third = ratio(1, 3);
        let fails = fixed_m_bound(3, 1_000_000, &third).unwrap();
        assert!(!fails.cond2_holds);
        assert_eq!(fails.list_size, int(12));

        let holds = fixed_m_bound(3, 1_000_000, &ratio(1, 5)).unwrap();
        assert!(holds.cond2_holds);
        assert_eq!(holds.list_size, int(12));
        let finite = to_f64(holds.finite_s.as_ref().unwrap());
        assert!((finite - 12.0).abs() < 1e-3);

        let four = fixed_m_bound(4, 1_000_000, &ratio(1, 100)).unwrap();
        assert!(four.cond2_holds);
        assert_eq!(four.list_size, int(108));

        assert!(fixed_m_bound(2, 10, &third).is_err());
        assert!(fixed_m_bound(5, 4, &third).is_err());
    }

    #[test]
    fn fixed_m_continuity_at_cond2_boundary() {
        // For m = 3, cond2 reads sR/(s-2) <= 1/3; at R = 1/3 it fails for every
        // finite s and both branch formulas give 12.
        let third = ratio(1, 3);
        let case1 = int(2) * int(2) * ratio(3, 1);
        let case2 = int(16) / ((int(1) + int(3) * &third) * (int(1) - &third));
        assert_eq!(case1, int(12));
        assert_eq!(case2, int(12));
        assert!(fixed_m_bound(3, 3, &ratio(1, 9)).unwrap().cond2_holds);
    }

    #[test]
    fn m2_examples() {
        assert_eq!(m2_bound(5, &ratio(1, 3)).unwrap(), ratio(12, 5));
        let tiny_rate = to_f64(&m2_bound(5, &ratio(1, 1_000_000)).unwrap());
        assert!(tiny_rate < 3.0 && tiny_rate > 2.999);
        assert!(m2_bound(1, &ratio(1, 3)).is_err());
    }

    #[test]
    fn fine_bound_examples() {
        let delta = ratio(2, 3);
        assert_eq!(fine_bound(21, 14, 2, 1, &delta, 0).unwrap(), ratio(9, 2));
        assert_eq!(fine_bound(21, 14, 1, 1, &delta, 0).unwrap(), ratio(21, 14));
        assert_eq!(fine_bound(21, 14, 1, 1, &delta, 3).unwrap(), ratio(18, 11));
        assert_eq!(fine_bound(21, 14, 2, 2, &delta, 0).unwrap(), ratio(18, 1));
        assert!(fine_bound(21, 7, 2, 1, &delta, 0).is_err());
        assert!(fine_bound(21, 14, 2, 1, &delta, 14).is_err());
        assert!(fine_bound(21, 14, 0, 1, &delta, 0).is_err());
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(prune_iterations(0.3, 0, 1, 0.01).unwrap(), 1);
        assert_eq!(prune_iterations(0.5, 1, 1, (-2.0f64).exp()).unwrap(), 6);
        let a = prune_iterations(0.1, 2, 1, 0.01).unwrap() as f64;
        let b = prune_iterations(0.05, 2, 1, 0.01).unwrap() as f64;
        // eps^-r quadruples; the log factor grows slightly.
        assert!(b / a > 4.0 && b / a < 5.0);
        assert!(prune_iterations(0.0, 1, 1, 0.01).is_err());
        assert!(prune_iterations(0.5, 1, 1, 1.0).is_err());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("0.05").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn report_collects_applicable_bounds() {
        let q = BoundQuery {
            m: Some(3),
            s: Some(1_000_000),
            rate: Some(ratio(1, 3)),
            ..Default::default()
        };
        let r = BoundReport::evaluate(&q);
        assert_eq!(r.l_fixed_m, Some(int(12)));
        assert!(r.omitted.iter().any(|o| o.bound == "L_main"));

        let q = BoundQuery { m: Some(2), s: Some(5), rate: Some(ratio(1, 3)), ..Default::default() };
        let r = BoundReport::evaluate(&q);
        assert_eq!(r.l_m2, Some(ratio(12, 5)));
        assert_eq!(r.radius, Some(ratio(7, 18)));
    }
}
