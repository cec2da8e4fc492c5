//! Algebra and theta specifications: builtin names and JSON config files.

use std::fmt;
use std::fs;
use std::path::Path;

use branchfoam_core::{
    BranchContext, FrobeniusAlgebra, Generators, GroupRingAlgebra, MultiPoly, ThetaTable,
};
use serde::Deserialize;

/// Input/spec error; maps to exit code 2.
#[derive(Debug)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

macro_rules! spec_err {
    ($($arg:tt)*) => { SpecError(format!($($arg)*)) };
}

/// A coefficient written either as an integer or in polynomial syntax.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn to_poly(&self, gens: &Generators, what: &str) -> Result<MultiPoly, SpecError> {
        match self {
            Coeff::Int(n) => Ok(MultiPoly::constant(gens, *n)),
            Coeff::Text(s) => {
                MultiPoly::parse(gens, s).map_err(|e| spec_err!("{}: {:?}: {}", what, s, e))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaEntry {
    indices: [usize; 3],
    value: Coeff,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    generators: Vec<String>,
    /// Coefficients of the monic modulus, constant term first.
    modulus: Vec<Coeff>,
    counit: Vec<Coeff>,
    theta: Option<Vec<ThetaEntry>>,
}

pub enum AlgebraKind {
    Mv,
    Truncated(usize),
    Group(Box<GroupRingAlgebra>),
    Config(Option<ThetaTable>),
}

pub struct AlgebraSpec {
    pub name: String,
    pub algebra: FrobeniusAlgebra,
    pub kind: AlgebraKind,
}

impl AlgebraSpec {
    pub fn group(&self) -> Option<&GroupRingAlgebra> {
        match &self.kind {
            AlgebraKind::Group(g) => Some(g),
            _ => None,
        }
    }

    /// Theta used when `--theta` is not given.
    pub fn default_theta(&self) -> &'static str {
        match &self.kind {
            AlgebraKind::Mv => "mv",
            AlgebraKind::Truncated(n) if n % 2 == 1 && *n > 1 => "lie",
            AlgebraKind::Truncated(_) => "zero",
            AlgebraKind::Group(_) => "group",
            AlgebraKind::Config(Some(_)) => "custom",
            AlgebraKind::Config(None) => "zero",
        }
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize, SpecError> {
    s.trim()
        .parse()
        .map_err(|_| spec_err!("{}: expected a positive integer, got {:?}", what, s))
}

pub fn parse_algebra(spec: &str) -> Result<AlgebraSpec, SpecError> {
    let (algebra, kind) = if spec == "mv" {
        (FrobeniusAlgebra::mv(), AlgebraKind::Mv)
    } else if let Some(n) = spec.strip_prefix("aN:") {
        let n = parse_usize(n, "aN")?;
        if n < 2 {
            return Err(spec_err!("aN:<n> needs n >= 2, got {}", n));
        }
        let alg = FrobeniusAlgebra::truncated(n).map_err(|e| spec_err!("{}", e))?;
        (alg, AlgebraKind::Truncated(n))
    } else if let Some(list) = spec.strip_prefix("group:") {
        let orders = list
            .split(',')
            .map(|s| parse_usize(s, "group order"))
            .collect::<Result<Vec<_>, _>>()?;
        let g = GroupRingAlgebra::new(&orders).map_err(|e| spec_err!("{}", e))?;
        (g.algebra().clone(), AlgebraKind::Group(Box::new(g)))
    } else if Path::new(spec).is_file() {
        load_config(spec)?
    } else {
        return Err(spec_err!(
            "unknown algebra {:?}: expected mv, aN:<n>, group:<o1,o2,...> or a JSON config file",
            spec
        ));
    };
    Ok(AlgebraSpec {
        name: spec.to_string(),
        algebra,
        kind,
    })
}

fn load_config(path: &str) -> Result<(FrobeniusAlgebra, AlgebraKind), SpecError> {
    let text = fs::read_to_string(path).map_err(|e| spec_err!("cannot read {}: {}", path, e))?;
    let cfg: Config = serde_json::from_str(&text).map_err(|e| spec_err!("{}: {}", path, e))?;
    let gens = Generators::new(&cfg.generators).map_err(|e| spec_err!("{}: {}", path, e))?;
    let modulus = cfg
        .modulus
        .iter()
        .map(|c| c.to_poly(&gens, "modulus"))
        .collect::<Result<Vec<_>, _>>()?;
    let counit = cfg
        .counit
        .iter()
        .map(|c| c.to_poly(&gens, "counit"))
        .collect::<Result<Vec<_>, _>>()?;
    let alg = FrobeniusAlgebra::from_modulus(&gens, &modulus, counit)
        .map_err(|e| spec_err!("{}: {}", path, e))?;
    let theta = match cfg.theta {
        None => None,
        Some(entries) => {
            let entries = entries
                .iter()
                .map(|e| {
                    let [i, j, k] = e.indices;
                    Ok(((i, j, k), e.value.to_poly(&gens, "theta value")?))
                })
                .collect::<Result<Vec<_>, SpecError>>()?;
            let t = ThetaTable::from_entries(&gens, alg.rank(), entries)
                .map_err(|e| spec_err!("{}: {}", path, e))?;
            Some(t)
        }
    };
    Ok((alg, AlgebraKind::Config(theta)))
}

pub fn parse_theta(spec: &str, alg: &AlgebraSpec) -> Result<ThetaTable, SpecError> {
    let rank = alg.algebra.rank();
    let table = match spec {
        "mv" => ThetaTable::mv(),
        "zero" => ThetaTable::zero(alg.algebra.generators(), rank),
        "lie" => ThetaTable::lie(rank).map_err(|e| spec_err!("theta lie: {}", e))?,
        "group" => match alg.group() {
            Some(g) => g.derive_bialgebra_theta().map_err(|e| spec_err!("{}", e))?,
            None => return Err(spec_err!("theta group needs a group:<orders> algebra")),
        },
        "custom" => match &alg.kind {
            AlgebraKind::Config(Some(t)) => t.clone(),
            _ => {
                return Err(spec_err!(
                    "theta custom needs a config file with theta entries"
                ))
            }
        },
        other => {
            return Err(spec_err!(
                "unknown theta {:?}: expected mv, lie, group, zero or custom",
                other
            ))
        }
    };
    if table.rank() != rank {
        return Err(spec_err!(
            "rank mismatch: theta {} has rank {} but algebra {} has rank {}",
            spec,
            table.rank(),
            alg.name,
            rank
        ));
    }
    Ok(table)
}

pub struct Setup {
    pub algebra: AlgebraSpec,
    pub theta_name: String,
    pub ctx: BranchContext,
}

pub fn setup(algebra: &str, theta: Option<&str>) -> Result<Setup, SpecError> {
    let algebra = parse_algebra(algebra)?;
    let theta_name = theta.unwrap_or(algebra.default_theta()).to_string();
    let table = parse_theta(&theta_name, &algebra)?;
    let ctx =
        BranchContext::new(algebra.algebra.clone(), &table).map_err(|e| spec_err!("{}", e))?;
    Ok(Setup {
        algebra,
        theta_name,
        ctx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(algebra: &str, theta: Option<&str>) -> String {
        match setup(algebra, theta) {
            Ok(_) => panic!("{} / {:?} accepted", algebra, theta),
            Err(e) => e.0,
        }
    }

    #[test]
    fn builtin_specs() {
        assert_eq!(setup("mv", None).unwrap().theta_name, "mv");
        assert_eq!(setup("aN:5", None).unwrap().theta_name, "lie");
        assert_eq!(setup("aN:4", None).unwrap().theta_name, "zero");
        assert_eq!(setup("group:2,2", None).unwrap().ctx.rank(), 4);
        assert!(err("group:3", Some("group")).contains("group has an element of order > 2"));
        assert!(err("aN:5", Some("mv")).contains("rank mismatch"));
        assert!(err("aN:4", Some("lie")).contains("odd N > 1 only"));
        assert!(err("aN:1", None).contains("n >= 2"));
        assert!(err("group:1", None).contains("below 2"));
        assert!(err("group:2,x", None).contains("positive integer"));
        assert!(err("nope", None).contains("unknown algebra"));
        assert!(err("mv", Some("what")).contains("unknown theta"));
        assert!(err("mv", Some("group")).contains("needs a group"));
        assert!(err("mv", Some("custom")).contains("config file"));
    }

    #[test]
    fn config_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mv.json");
        fs::write(
            &path,
            r#"{"generators": ["a", "b", "c"], "modulus": ["-c", "-b", "-a", 1], "counit": [0, 0, -1],
                "theta": [{"indices": [0, 1, 2], "value": 1}, {"indices": [0, 2, 1], "value": "-1"}]}"#,
        )
        .unwrap();
        let s = setup(path.to_str().unwrap(), None).unwrap();
        assert_eq!(s.theta_name, "custom");
        let mv = setup("mv", None).unwrap();
        assert_eq!(s.ctx.algebra().delta_one(), mv.ctx.algebra().delta_one());
        assert_eq!(s.ctx.basis_bracket(1, 2), mv.ctx.basis_bracket(1, 2));

        let bad = dir.path().join("bad.json");
        fs::write(&bad, r#"{"modulus": [0, 1], "counit": [0]}"#).unwrap();
        assert!(err(bad.to_str().unwrap(), None).contains("degenerate"));
        fs::write(&bad, r#"{"modulus": [0, 1], "counit": [1], "extra": 1}"#).unwrap();
        assert!(err(bad.to_str().unwrap(), None).contains("unknown field"));
        fs::write(&bad, r#"{"modulus": [0, 1, 1], "counit": [0, 1], "theta": [{"indices": [0, 0, 5], "value": 1}]}"#)
            .unwrap();
        assert!(err(bad.to_str().unwrap(), None).contains("out of range"));
    }
}
