//! Flag parsing shared by the subcommands.

use rdqm::casoratian::{build_index_sets, IndexSets};
use rdqm::error::{Error, Result};
use rdqm::exact::{format_rational, parse_rational, Rational};
use rdqm::families::{FamilyId, ParamSet};
use rdqm::twists::{descriptor, TwistId};
use std::collections::BTreeMap;

/// `name=p/q,name=p/q`. An empty string gives no values.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in s.split(',').filter(|i| !i.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected name=value, got {item:?}")))?;
        if out.insert(k.to_string(), parse_rational(v)?).is_some() {
            return Err(Error::InvalidInput(format!("parameter {k} given twice")));
        }
    }
    Ok(out)
}

/// Comma-separated non-negative integers.
pub fn parse_dset(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad degree {t:?} in D"))))
        .collect()
}

pub fn parse_family(s: &str) -> Result<FamilyId> {
    FamilyId::from_token(s)
}

/// A twist registered for `family`.
pub fn parse_twist(family: FamilyId, s: &str) -> Result<TwistId> {
    let id = TwistId::from_token(s)?;
    descriptor(family, id)?;
    Ok(id)
}

/// Parameter point from `--params` and `--n`; falls back to the family's
/// safe point when no values are given.
pub fn parse_point(family: FamilyId, params: Option<&str>, n: Option<i64>) -> Result<ParamSet> {
    match params {
        None if n.is_none() => Ok(ParamSet::safe(family)),
        None => {
            let named = ParamSet::safe(family).named().into_iter().filter(|(k, _)| k != "N").collect();
            ParamSet::from_named(family, &named, n)
        }
        Some(p) => ParamSet::from_named(family, &parse_params(p)?, n),
    }
}

pub fn parse_index_sets(dset: &str, caln: Option<usize>) -> Result<IndexSets> {
    let d = parse_dset(dset)?;
    let caln = caln.unwrap_or_else(|| d.iter().copied().max().unwrap_or(0));
    build_index_sets(&d, caln)
}

/// The non-lattice values of `ps` in `--params` syntax.
pub fn params_string(ps: &ParamSet) -> String {
    ps.named()
        .iter()
        .filter(|(k, _)| k != "N")
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(",")
}

/// `--only key=value` filter.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub family: Option<FamilyId>,
    pub kind: Option<String>,
}

impl Filter {
    pub fn parse(items: &[String]) -> Result<Filter> {
        let mut f = Filter::default();
        for item in items {
            match item.split_once('=') {
                Some(("family", v)) => f.family = Some(parse_family(v)?),
                Some(("kind", v)) => f.kind = Some(v.to_string()),
                _ => return Err(Error::InvalidInput(format!("unsupported filter {item:?}; use family=.. or kind=.."))),
            }
        }
        Ok(f)
    }

    pub fn accepts(&self, family: FamilyId, kind: &str) -> bool {
        self.family.is_none_or(|f| f == family) && self.kind.as_deref().is_none_or(|k| k == kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rdqm::exact::rat;

    #[test]
    fn params_round_trip() {
        let m = parse_params("q=1/2,a=-3/4,b=5").unwrap();
        assert_eq!(m["a"], rat(-3, 4).unwrap());
        assert_eq!(m["b"], rat(5, 1).unwrap());
        assert!(parse_params("a=1/0").is_err());
        assert!(parse_params("a").is_err());
        assert!(parse_params("a=1,a=2").is_err());
    }

    #[test]
    fn point_echo() {
        let ps = parse_point(FamilyId::QRacah, Some("q=1/2,a=1/5000,b=1/3,d=2/9"), Some(5)).unwrap();
        assert_eq!(params_string(&ps), "q=1/2,a=1/5000,b=1/3,d=2/9");
        assert_eq!(ps, ParamSet::safe(FamilyId::QRacah));
    }

    #[test]
    fn filters() {
        let f = Filter::parse(&["family=qb".into()]).unwrap();
        assert!(f.accepts(FamilyId::QBessel, "identity"));
        assert!(!f.accepts(FamilyId::QRacah, "identity"));
        assert!(Filter::parse(&["colour=red".into()]).is_err());
    }

    #[test]
    fn default_caln_is_max_d() {
        assert_eq!(parse_index_sets("2,0", None).unwrap().caln, 2);
        assert!(parse_twist(FamilyId::Meixner, "ii").is_err());
    }
}
