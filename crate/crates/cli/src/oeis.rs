//! Offline comparison of computed sequences with embedded OEIS prefixes or
//! a local b-file.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use airpocket::series::{gf, gf_closed, graded_by_updegree, Grading};
use airpocket::{count_family, FamilyId, GfId};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::config::Config;
use crate::error::CliError;
use crate::fixtures::{self, OeisFixture};

/// Where the computed side of a comparison comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Count(FamilyId),
    Series(GfId),
    Grading(Grading),
}

impl FromStr for Source {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::Usage(format!("bad sequence source {s:?}"));
        let (kind, arg) = s.trim().split_once(' ').ok_or_else(bad)?;
        Ok(match kind {
            "count" => Source::Count(arg.parse()?),
            "series" => Source::Series(arg.parse()?),
            "grading" => Source::Grading(arg.parse()?),
            _ => return Err(bad()),
        })
    }
}

impl Source {
    /// Replaces the pyramid size of a parameterized series; the index shift
    /// grows with it.
    fn with_k(self, k: u32) -> Result<(Source, i64), CliError> {
        let Source::Series(id) = self else {
            return Err(CliError::Usage("--k applies only to pyramid sequences".into()));
        };
        if id.param().is_none() {
            return Err(CliError::Usage(format!("{id} takes no parameter")));
        }
        let name = id.to_string();
        let base = &name[..name.find('(').expect("parameterized ids print a parameter")];
        let id: GfId = format!("{base}({k})").parse()?;
        Ok((Source::Series(id), k as i64 - 1))
    }

    fn values(self, ns: &[i64], cfg: &Config) -> Result<Vec<BigInt>, CliError> {
        if let Some(&n) = ns.iter().find(|&&n| n < 0) {
            return Err(CliError::Usage(format!("index maps to negative size {n}")));
        }
        let top = ns.iter().copied().max().unwrap_or(0) as usize;
        let coeffs = |s: airpocket::TruncatedSeries| -> Vec<BigInt> {
            ns.iter()
                .map(|&n| {
                    let c = s.coeff(n as usize);
                    assert!(c.is_integer(), "counting series are integral");
                    c.to_integer()
                })
                .collect()
        };
        Ok(match self {
            Source::Count(f) => ns
                .iter()
                .map(|&n| BigInt::from(count_family(f, n as usize)))
                .collect(),
            Source::Series(id) => {
                let order = top.max(4);
                // Past the configured order only the closed form is built.
                let value = if order <= cfg.series_order {
                    gf(id, order)?
                } else {
                    gf_closed(id, order)?
                };
                coeffs(value.erased())
            }
            Source::Grading(g) => coeffs(graded_by_updegree(g, top.max(1))?),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub index: i64,
    pub n: i64,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OeisReport {
    pub id: String,
    pub name: String,
    pub source: String,
    pub shift: i64,
    pub reference: String,
    /// Provenance of the embedded values that were compared.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    pub checked: usize,
    pub first_index: Option<i64>,
    pub last_index: Option<i64>,
    pub mismatch: Option<Mismatch>,
    pub pass: bool,
}

/// Reads `index value` lines; blank lines and `#` comments are skipped.
pub fn parse_bfile(path: &Path) -> Result<Vec<(i64, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out: Vec<(i64, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CliError::BFile {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let mut parts = line.split_whitespace();
        let (Some(index), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected \"index value\", got {line:?}")));
        };
        let index: i64 = index.parse().map_err(|_| err(format!("bad index {index:?}")))?;
        let value: BigInt = value.parse().map_err(|_| err(format!("bad value {value:?}")))?;
        if let Some((prev, _)) = out.last() {
            if index != prev + 1 {
                return Err(err(format!("index {index} does not follow {prev}")));
            }
        }
        out.push((index, value.to_string()));
    }
    if out.is_empty() {
        return Err(CliError::BFile {
            path: path.to_path_buf(),
            line: 0,
            message: "no data lines".into(),
        });
    }
    Ok(out)
}

pub fn find(id: &str) -> Result<OeisFixture, CliError> {
    let all = fixtures::oeis();
    let known: Vec<String> = all.iter().map(|f| f.id.clone()).collect();
    all.into_iter()
        .find(|f| f.id.eq_ignore_ascii_case(id.trim()))
        .ok_or_else(|| {
            CliError::Usage(format!("no fixture for {id:?}; known: {}", known.join(", ")))
        })
}

pub struct Request<'a> {
    pub id: &'a str,
    pub bfile: Option<&'a Path>,
    pub k: Option<u32>,
    pub shift: Option<i64>,
}

pub fn compare(req: &Request, cfg: &Config) -> Result<OeisReport, CliError> {
    let fixture = find(req.id)?;
    let mut source: Source = fixture.source.parse()?;
    let mut shift = req.shift.unwrap_or(fixture.shift);
    if let Some(k) = req.k {
        let (s, extra) = source.with_k(k)?;
        source = s;
        shift += extra;
    }
    let (reference, expected) = match req.bfile {
        Some(p) => (p.display().to_string(), parse_bfile(p)?),
        None => ("embedded".to_string(), fixture.prefix()),
    };
    let provenance = match req.bfile {
        Some(_) => Vec::new(),
        None => fixture
            .segments
            .iter()
            .map(|s| format!("{}..{}: {}", s.start, s.start + s.values.len() as i64 - 1, s.provenance))
            .collect(),
    };
    let ns: Vec<i64> = expected.iter().map(|(i, _)| i + shift).collect();
    let computed = source.values(&ns, cfg)?;
    let mismatch = expected
        .iter()
        .zip(&computed)
        .find(|((_, want), got)| **want != got.to_string())
        .map(|((index, want), got)| Mismatch {
            index: *index,
            n: index + shift,
            expected: want.clone(),
            computed: got.to_string(),
        });
    let source_text = match source {
        Source::Count(f) => format!("count {f}"),
        Source::Series(id) => format!("series {id}"),
        Source::Grading(g) => format!("grading {}", format!("{g:?}").to_uppercase()),
    };
    Ok(OeisReport {
        id: fixture.id,
        name: fixture.name,
        source: source_text,
        shift,
        reference,
        provenance,
        checked: expected.len(),
        first_index: expected.first().map(|e| e.0),
        last_index: expected.last().map(|e| e.0),
        pass: mismatch.is_none(),
        mismatch,
    })
}

/// Values computed for a fixture over an index range, for b-file output.
pub fn computed_range(id: &str, first: i64, last: i64, cfg: &Config) -> Result<Vec<(i64, BigUint)>, CliError> {
    let fixture = find(id)?;
    let source: Source = fixture.source.parse()?;
    let ns: Vec<i64> = (first..=last).map(|i| i + fixture.shift).collect();
    let values = source.values(&ns, cfg)?;
    Ok((first..=last)
        .zip(values)
        .map(|(i, v)| (i, v.to_biguint().expect("counts are nonnegative")))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedded_prefix_matches() {
        let cfg = Config::default();
        for f in fixtures::oeis() {
            let req = Request {
                id: &f.id,
                bfile: None,
                k: None,
                shift: None,
            };
            let report = compare(&req, &cfg).unwrap();
            assert!(report.pass, "{}: {:?}", f.id, report.mismatch);
        }
    }

    #[test]
    fn pyramid_sequences_shift_with_k() {
        let req = Request {
            id: "A201631",
            bfile: None,
            k: Some(3),
            shift: None,
        };
        let report = compare(&req, &Config::default()).unwrap();
        assert_eq!(report.shift, 2);
        assert!(report.pass, "{:?}", report.mismatch);
    }

    #[test]
    fn sources_parse() {
        assert_eq!(
            "count AIR".parse::<Source>().unwrap(),
            Source::Count(FamilyId::Air)
        );
        assert!("series NOPE".parse::<Source>().is_err());
        assert!("bogus AIR".parse::<Source>().is_err());
    }
}
