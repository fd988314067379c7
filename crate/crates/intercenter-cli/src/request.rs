use std::str::FromStr;

use intercenter::{Face, Tolerance};

use crate::error::{input, CliError};

/// Sections requested on the command line, shared by `tri` and `tet`.
#[derive(Debug, Clone)]
pub struct Request {
    pub centers: Option<String>,
    pub distances: Option<String>,
    pub metrics: bool,
    pub inequalities: bool,
    pub areas: bool,
    pub project: Option<Face>,
    pub point_dists: Option<[f64; 4]>,
    pub tol: Tolerance,
}

/// Comma-separated centers, where `all` expands to every named center;
/// duplicates are dropped, order kept.
pub fn parse_list<K>(list: &str, all: &[K]) -> Result<Vec<K>, CliError>
where
    K: FromStr<Err = String> + Copy + PartialEq,
{
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let kinds = if item.eq_ignore_ascii_case("all") {
            all.to_vec()
        } else {
            vec![K::from_str(item).map_err(input)?]
        };
        for k in kinds {
            if !out.contains(&k) {
                out.push(k);
            }
        }
    }
    if out.is_empty() {
        return Err(input("empty center list"));
    }
    Ok(out)
}

/// Comma-separated `P:Q` pairs.
pub fn parse_pairs<K>(list: &str) -> Result<Vec<(K, K)>, CliError>
where
    K: FromStr<Err = String> + Copy + PartialEq,
{
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (l, r) = item
            .split_once(':')
            .ok_or_else(|| input(format!("distance pair '{item}' must look like G:I")))?;
        let pair = (K::from_str(l).map_err(input)?, K::from_str(r).map_err(input)?);
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    if out.is_empty() {
        return Err(input("empty distance list"));
    }
    Ok(out)
}

pub fn pair_key(a: impl AsRef<str>, b: impl AsRef<str>) -> String {
    format!("{}:{}", a.as_ref(), b.as_ref())
}
