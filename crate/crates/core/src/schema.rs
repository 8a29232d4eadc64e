//! JSON file formats: code parameters, received words, recovery sets,
//! candidate spaces, message lists.
//!
//! Field elements are plain integers in `[0, q)`; polynomials are coefficient
//! arrays, lowest degree first.

use serde::{Deserialize, Serialize};

use crate::algebra::{Fe, Field, Poly};
use crate::codes::{CodeParams, Codeword, FrsParams, MultParams, RecoverySets};
use crate::decoder::{AffineSpace, CandidateSpace};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Frs,
    Mult,
}

/// `{"code":"frs"|"mult","q","s","n","d","alpha"?,"points"?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub code: CodeKind,
    pub q: u64,
    pub s: usize,
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<u64>>,
}

impl ParamsFile {
    pub fn to_params(&self) -> Result<CodeParams> {
        let field = match self.alpha {
            Some(a) => Field::with_alpha(self.q, a)?,
            None => Field::new(self.q)?,
        };
        match self.code {
            CodeKind::Frs => {
                if self.points.is_some() {
                    return Err(Error::Format("evaluation points apply to multiplicity codes only".into()));
                }
                Ok(FrsParams::new(field, self.s, self.n, self.d)?.into())
            }
            CodeKind::Mult => {
                let points = self.points.as_deref().map(|p| elems(&field, p)).transpose()?;
                Ok(MultParams::new(field, self.s, self.n, self.d, points)?.into())
            }
        }
    }

    pub fn from_params(params: &CodeParams) -> ParamsFile {
        let field = params.field();
        let (code, points) = match params {
            CodeParams::Frs(_) => (CodeKind::Frs, None),
            CodeParams::Mult(p) => (CodeKind::Mult, Some(values(p.points()))),
        };
        ParamsFile {
            code,
            q: field.modulus(),
            s: params.s(),
            n: params.n(),
            d: params.d(),
            alpha: Some(field.alpha().value()),
            points,
        }
    }
}

fn elems(field: &Field, xs: &[u64]) -> Result<Vec<Fe>> {
    xs.iter()
        .map(|&x| field.checked_elem(x).map_err(|_| Error::Format(format!("{x} is not reduced mod {}", field.modulus()))))
        .collect()
}

fn values(xs: &[Fe]) -> Vec<u64> {
    xs.iter().map(|x| x.value()).collect()
}

fn poly(field: &Field, coeffs: &[u64]) -> Result<Poly> {
    Ok(Poly::new(elems(field, coeffs)?))
}

/// `{"message":[coeffs]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageFile {
    pub message: Vec<u64>,
}

impl MessageFile {
    pub fn to_poly(&self, params: &CodeParams) -> Result<Poly> {
        if self.message.len() > params.d() + 1 {
            return Err(Error::param(format!("message has {} coefficients, at most d + 1 = {} allowed", self.message.len(), params.d() + 1)));
        }
        poly(params.field(), &self.message)
    }

    pub fn from_poly(f: &Poly) -> MessageFile {
        MessageFile { message: values(f.coeffs()) }
    }
}

/// `{"columns":[[symbols]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub columns: Vec<Vec<u64>>,
}

impl WordFile {
    pub fn to_word(&self, params: &CodeParams) -> Result<Codeword> {
        let columns = self.columns.iter().map(|c| elems(params.field(), c)).collect::<Result<_>>()?;
        let word = Codeword::new(columns)?;
        if word.n() != params.n() || word.s() != params.s() {
            return Err(Error::param(format!(
                "word is {}x{}, code expects {}x{}",
                word.n(),
                word.s(),
                params.n(),
                params.s()
            )));
        }
        Ok(word)
    }

    pub fn from_word(w: &Codeword) -> WordFile {
        WordFile { columns: w.columns().iter().map(|c| values(c)).collect() }
    }
}

/// `{"ell":k,"sets":[[[symbols]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsFile {
    pub ell: usize,
    pub sets: Vec<Vec<Vec<u64>>>,
}

impl SetsFile {
    pub fn to_sets(&self, params: &CodeParams) -> Result<RecoverySets> {
        let sets = self
            .sets
            .iter()
            .map(|set| set.iter().map(|c| elems(params.field(), c)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let sets = RecoverySets::new(self.ell, sets)?;
        if sets.n() != params.n() || sets.s() != params.s() {
            return Err(Error::param("recovery sets do not match the code shape"));
        }
        Ok(sets)
    }

    pub fn from_sets(sets: &RecoverySets) -> SetsFile {
        SetsFile {
            ell: sets.ell(),
            sets: sets.sets().iter().map(|set| set.iter().map(|c| values(c)).collect()).collect(),
        }
    }
}

/// `{"m","D","offset":[coeffs]|null,"basis":[[coeffs]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub m: usize,
    #[serde(rename = "D")]
    pub interpolation_degree: usize,
    pub offset: Option<Vec<u64>>,
    pub basis: Vec<Vec<u64>>,
}

impl SpaceFile {
    pub fn to_space(&self, params: &CodeParams) -> Result<CandidateSpace> {
        let field = params.field();
        let space = match &self.offset {
            Some(offset) => Some(AffineSpace {
                offset: poly(field, offset)?,
                basis: self.basis.iter().map(|b| poly(field, b)).collect::<Result<_>>()?,
            }),
            None if self.basis.is_empty() => None,
            None => return Err(Error::Format("an empty space has no basis".into())),
        };
        Ok(CandidateSpace { m: self.m, interpolation_degree: self.interpolation_degree, max_degree: params.d(), space })
    }

    pub fn from_space(space: &CandidateSpace) -> SpaceFile {
        SpaceFile {
            m: space.m,
            interpolation_degree: space.interpolation_degree,
            offset: space.offset().map(|o| values(o.coeffs())),
            basis: space.basis().iter().map(|b| values(b.coeffs())).collect(),
        }
    }
}

/// `{"messages":[[coeffs]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListFile {
    pub messages: Vec<Vec<u64>>,
}

impl ListFile {
    pub fn from_list(list: &[Poly]) -> ListFile {
        ListFile { messages: list.iter().map(|f| values(f.coeffs())).collect() }
    }

    pub fn to_list(&self, params: &CodeParams) -> Result<Vec<Poly>> {
        self.messages.iter().map(|m| poly(params.field(), m)).collect()
    }
}

/// Parses JSON, mapping syntax errors to [`Error::Format`].
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("schema types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::list_decode;

    #[test]
    fn params_round_trip() {
        let file: ParamsFile = from_json(r#"{"code":"frs","q":13,"s":3,"n":4,"d":3}"#).unwrap();
        let params = file.to_params().unwrap();
        assert_eq!(params.field().alpha().value(), 2);
        let again = ParamsFile::from_params(&params);
        assert_eq!(again.to_params().unwrap(), params);
        assert_eq!(to_json(&again), r#"{"code":"frs","q":13,"s":3,"n":4,"d":3,"alpha":2}"#);

        let mult: ParamsFile = from_json(r#"{"code":"mult","q":11,"s":2,"n":3,"d":4,"points":[5,6,7]}"#).unwrap();
        let params = mult.to_params().unwrap();
        assert_eq!(ParamsFile::from_params(&params).to_params().unwrap(), params);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(from_json::<ParamsFile>(r#"{"code":"rs","q":13,"s":3,"n":4,"d":3}"#), Err(Error::Format(_))));
        assert!(matches!(from_json::<ParamsFile>(r#"{"code":"frs","q":13,"s":3,"n":4,"d":3,"x":1}"#), Err(Error::Format(_))));
        let bad_alpha: ParamsFile = from_json(r#"{"code":"frs","q":13,"s":3,"n":4,"d":3,"alpha":3}"#).unwrap();
        assert!(bad_alpha.to_params().is_err());
        let params = CodeParams::from(FrsParams::new(Field::new(13).unwrap(), 3, 4, 3).unwrap());
        let unreduced = WordFile { columns: vec![vec![13, 0, 0]; 4] };
        assert!(matches!(unreduced.to_word(&params), Err(Error::Format(_))));
        let short = WordFile { columns: vec![vec![1, 0, 0]; 3] };
        assert!(matches!(short.to_word(&params), Err(Error::Parameter(_))));
        let long = MessageFile { message: vec![1; 5] };
        assert!(long.to_poly(&params).is_err());
    }

    #[test]
    fn word_space_and_list_round_trip() {
        let params = CodeParams::from(FrsParams::new(Field::new(13).unwrap(), 3, 4, 3).unwrap());
        let f = MessageFile { message: vec![1, 2, 0, 5] }.to_poly(&params).unwrap();
        let c = params.encode(&f).unwrap();
        let wf = WordFile::from_word(&c);
        assert_eq!(wf.to_word(&params).unwrap(), c);
        let space = list_decode(&params, &c, 2).unwrap();
        let sf = SpaceFile::from_space(&space);
        assert_eq!(sf.offset.as_deref(), Some(&[1, 2, 0, 5][..]));
        assert_eq!(from_json::<SpaceFile>(&to_json(&sf)).unwrap().to_space(&params).unwrap(), space);
        let sets = RecoverySets::from_word(&c);
        assert_eq!(SetsFile::from_sets(&sets).to_sets(&params).unwrap(), sets);
        let list = ListFile::from_list(std::slice::from_ref(&f));
        assert_eq!(to_json(&list), r#"{"messages":[[1,2,0,5]]}"#);
        assert_eq!(list.to_list(&params).unwrap(), vec![f]);
    }

    #[test]
    fn empty_space_serializes_with_null_offset() {
        let space = CandidateSpace { m: 2, interpolation_degree: 1, max_degree: 3, space: None };
        assert_eq!(to_json(&SpaceFile::from_space(&space)), r#"{"m":2,"D":1,"offset":null,"basis":[]}"#);
    }
}
