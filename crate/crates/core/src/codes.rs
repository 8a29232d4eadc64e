//! Code parameters, encoders, distances and the random error channel.

use num_rational::Rational64;
use rand::seq::index;
use rand::Rng;

use crate::algebra::{Fe, Field, Poly};
use crate::error::{Error, Result};

/// `FRS_{q,s}(n, d)`: column `i`, row `j` holds `P(alpha^(i*s + j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrsParams {
    field: Field,
    s: usize,
    n: usize,
    d: usize,
}

impl FrsParams {
    pub fn new(field: Field, s: usize, n: usize, d: usize) -> Result<FrsParams> {
        let q = field.modulus() as usize;
        if s == 0 || n == 0 {
            return Err(Error::param("s and n must be positive"));
        }
        if n * s > q - 1 {
            return Err(Error::param(format!("n = {n} exceeds (q - 1)/s = {}", (q - 1) / s)));
        }
        if d >= s * n {
            return Err(Error::param(format!("d = {d} must be below s*n = {}", s * n)));
        }
        Ok(FrsParams { field, s, n, d })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Evaluation point of column `i`, row `j`.
    pub fn point(&self, i: usize, j: usize) -> Fe {
        self.field.alpha_pow((i * self.s + j) as u64)
    }
}

/// `MULT_{q,s}(n, d)`: column `i`, row `j` holds `P^(j)(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultParams {
    field: Field,
    s: usize,
    n: usize,
    d: usize,
    points: Vec<Fe>,
}

impl MultParams {
    /// `points` defaults to `alpha^0, ..., alpha^(n-1)`.
    pub fn new(field: Field, s: usize, n: usize, d: usize, points: Option<Vec<Fe>>) -> Result<MultParams> {
        let q = field.modulus() as usize;
        if s == 0 || n == 0 {
            return Err(Error::param("s and n must be positive"));
        }
        if n > q {
            return Err(Error::param(format!("n = {n} exceeds q = {q}")));
        }
        if d >= s * n {
            return Err(Error::param(format!("d = {d} must be below s*n = {}", s * n)));
        }
        let points = match points {
            Some(p) => p,
            None if n < q => (0..n).map(|i| field.alpha_pow(i as u64)).collect(),
            None => return Err(Error::param("default points need n <= q - 1; supply points")),
        };
        if points.len() != n {
            return Err(Error::param(format!("{} points for block length {n}", points.len())));
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::param("evaluation points must be distinct"));
        }
        Ok(MultParams { field, s, n, d, points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }
}

/// Either code family; shared accessors and encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeParams {
    Frs(FrsParams),
    Mult(MultParams),
}

impl CodeParams {
    pub fn field(&self) -> &Field {
        match self {
            CodeParams::Frs(p) => &p.field,
            CodeParams::Mult(p) => &p.field,
        }
    }

    pub fn s(&self) -> usize {
        match self {
            CodeParams::Frs(p) => p.s,
            CodeParams::Mult(p) => p.s,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            CodeParams::Frs(p) => p.n,
            CodeParams::Mult(p) => p.n,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            CodeParams::Frs(p) => p.d,
            CodeParams::Mult(p) => p.d,
        }
    }

    /// `R = (d + 1)/(s n)`.
    pub fn rate(&self) -> Rational64 {
        Rational64::new((self.d() + 1) as i64, (self.s() * self.n()) as i64)
    }

    /// Distance lower bound `delta = 1 - d/(s n)`.
    pub fn delta(&self) -> Rational64 {
        Rational64::from_integer(1) - Rational64::new(self.d() as i64, (self.s() * self.n()) as i64)
    }

    pub fn encode(&self, message: &Poly) -> Result<Codeword> {
        match self {
            CodeParams::Frs(p) => encode_frs(p, message),
            CodeParams::Mult(p) => encode_mult(p, message),
        }
    }

    /// Uniformly random message of degree at most `d`.
    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Poly {
        let q = self.field().modulus();
        let field = *self.field();
        Poly::new((0..=self.d()).map(|_| field.elem(rng.gen_range(0..q))).collect())
    }
}

impl From<FrsParams> for CodeParams {
    fn from(p: FrsParams) -> Self {
        CodeParams::Frs(p)
    }
}

impl From<MultParams> for CodeParams {
    fn from(p: MultParams) -> Self {
        CodeParams::Mult(p)
    }
}

/// `n` columns of `s` symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    columns: Vec<Vec<Fe>>,
}

impl Codeword {
    pub fn new(columns: Vec<Vec<Fe>>) -> Result<Codeword> {
        let s = columns.first().map_or(0, Vec::len);
        if columns.is_empty() || s == 0 || columns.iter().any(|c| c.len() != s) {
            return Err(Error::param("codeword columns must be nonempty and of equal length"));
        }
        Ok(Codeword { columns })
    }

    pub fn zero(n: usize, s: usize) -> Codeword {
        Codeword { columns: vec![vec![Fe::ZERO; s]; n] }
    }

    pub fn columns(&self) -> &[Vec<Fe>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[Fe] {
        &self.columns[i]
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn s(&self) -> usize {
        self.columns[0].len()
    }

    /// `self + c * other`, entrywise.
    pub fn add_scaled(&self, field: &Field, c: Fe, other: &Codeword) -> Codeword {
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| field.mul_add(x, c, y)).collect())
            .collect();
        Codeword { columns }
    }
}

/// Per-column candidate sets for list recovery. `ell = 1` is list decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverySets {
    ell: usize,
    sets: Vec<Vec<Vec<Fe>>>,
}

impl RecoverySets {
    pub fn new(ell: usize, sets: Vec<Vec<Vec<Fe>>>) -> Result<RecoverySets> {
        if ell == 0 || sets.is_empty() {
            return Err(Error::param("need ell >= 1 and at least one position"));
        }
        let s = sets[0].first().map_or(0, Vec::len);
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() || set.len() > ell {
                return Err(Error::param(format!("set {i} has {} elements, allowed 1..={ell}", set.len())));
            }
            if set.iter().any(|c| c.len() != s || s == 0) {
                return Err(Error::param(format!("set {i} has a column of the wrong length")));
            }
            for (a, x) in set.iter().enumerate() {
                if set[a + 1..].contains(x) {
                    return Err(Error::param(format!("set {i} contains a duplicate")));
                }
            }
        }
        Ok(RecoverySets { ell, sets })
    }

    /// Singleton sets `{y_i}`.
    pub fn from_word(y: &Codeword) -> RecoverySets {
        RecoverySets { ell: 1, sets: y.columns.iter().map(|c| vec![c.clone()]).collect() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn s(&self) -> usize {
        self.sets[0][0].len()
    }

    pub fn sets(&self) -> &[Vec<Vec<Fe>>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[Vec<Fe>] {
        &self.sets[i]
    }

    pub fn contains(&self, i: usize, column: &[Fe]) -> bool {
        self.sets[i].iter().any(|c| c == column)
    }
}

pub fn encode_frs(params: &FrsParams, message: &Poly) -> Result<Codeword> {
    check_degree(message, params.d)?;
    let field = &params.field;
    let columns = (0..params.n)
        .map(|i| (0..params.s).map(|j| message.eval(field, params.point(i, j))).collect())
        .collect();
    Ok(Codeword { columns })
}

pub fn encode_mult(params: &MultParams, message: &Poly) -> Result<Codeword> {
    check_degree(message, params.d)?;
    let field = &params.field;
    let derivatives: Vec<Poly> = (0..params.s).map(|j| message.hasse_derivative(field, j)).collect();
    let columns = params
        .points
        .iter()
        .map(|&a| derivatives.iter().map(|h| h.eval(field, a)).collect())
        .collect();
    Ok(Codeword { columns })
}

fn check_degree(message: &Poly, d: usize) -> Result<()> {
    match message.degree() {
        Some(deg) if deg > d => Err(Error::param(format!("message degree {deg} exceeds d = {d}"))),
        _ => Ok(()),
    }
}

/// Number of columns in which `x` and `y` differ.
pub fn column_disagreements(x: &Codeword, y: &Codeword) -> Result<usize> {
    if x.n() != y.n() || x.s() != y.s() {
        return Err(Error::param("codeword shapes differ"));
    }
    Ok(x.columns.iter().zip(&y.columns).filter(|(a, b)| a != b).count())
}

/// Fraction of columns in which `x` and `y` differ.
pub fn dist_words(x: &Codeword, y: &Codeword) -> Result<Rational64> {
    Ok(Rational64::new(column_disagreements(x, y)? as i64, x.n() as i64))
}

/// Number of columns `i` with `x_i` not in `S_i`.
pub fn set_misses(x: &Codeword, sets: &RecoverySets) -> Result<usize> {
    if x.n() != sets.n() || x.s() != sets.s() {
        return Err(Error::param("codeword and recovery sets have different shapes"));
    }
    Ok((0..x.n()).filter(|&i| !sets.contains(i, x.column(i))).count())
}

pub fn dist_sets(x: &Codeword, sets: &RecoverySets) -> Result<Rational64> {
    Ok(Rational64::new(set_misses(x, sets)? as i64, x.n() as i64))
}

/// Largest miss count `k` with `k/n <= rho`.
pub fn max_misses(rho: Rational64, n: usize) -> usize {
    if rho < Rational64::from_integer(0) {
        return 0;
    }
    (rho * Rational64::from_integer(n as i64)).floor().to_integer() as usize
}

/// Replaces `errors` distinct, uniformly chosen columns with uniformly random
/// different columns.
pub fn corrupt<R: Rng + ?Sized>(field: &Field, c: &Codeword, errors: usize, rng: &mut R) -> Result<Codeword> {
    if errors > c.n() {
        return Err(Error::param(format!("{errors} errors requested for {} columns", c.n())));
    }
    let q = field.modulus();
    let mut out = c.clone();
    for i in index::sample(rng, c.n(), errors).into_vec() {
        // q^s >= 2, so the rejection loop terminates.
        loop {
            let col: Vec<Fe> = (0..c.s()).map(|_| field.elem(rng.gen_range(0..q))).collect();
            if col != c.columns[i] {
                out.columns[i] = col;
                break;
            }
        }
    }
    Ok(out)
}
