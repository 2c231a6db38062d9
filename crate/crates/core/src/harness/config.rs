//! Flat `key = value` sweep configuration.
//!
//! ```text
//! # comment
//! families = diamond_chain, random
//! diamond_chain.k = 2..4
//! random.n = 4..60
//! random.flips = 100
//! seed = 7
//! seeds_per_point = 4
//! iota_limit = 35
//! gamma_limit = 24
//! checks = oracles, structure, accounting, odd
//! output = reports/sweep
//! timing = false
//! ```
//!
//! Parameter values are a comma-separated mix of integers and inclusive
//! ranges `a..b`. Every combination of a family's parameters is one point.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ThreeTree,
    Eulerian,
    DiamondChain,
    K4Chain,
    Random,
    Near,
    MinDegree5,
    AllOdd,
    Connected,
    Icosahedron,
    Octahedron,
    K4,
}

/// A family parameter; `default` is `None` for required ones.
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Option<ParamDefault>,
}

#[derive(Clone, Copy)]
pub enum ParamDefault {
    Fixed(u64),
    TimesN(u64),
}

const fn req(name: &'static str) -> ParamSpec {
    ParamSpec { name, default: None }
}

const fn opt(name: &'static str, default: ParamDefault) -> ParamSpec {
    ParamSpec { name, default: Some(default) }
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::ThreeTree,
        Family::Eulerian,
        Family::DiamondChain,
        Family::K4Chain,
        Family::Random,
        Family::Near,
        Family::MinDegree5,
        Family::AllOdd,
        Family::Connected,
        Family::Icosahedron,
        Family::Octahedron,
        Family::K4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThreeTree => "three_tree",
            Family::Eulerian => "eulerian",
            Family::DiamondChain => "diamond_chain",
            Family::K4Chain => "k4_chain",
            Family::Random => "random",
            Family::Near => "near",
            Family::MinDegree5 => "min_degree5",
            Family::AllOdd => "all_odd",
            Family::Connected => "connected",
            Family::Icosahedron => "icosahedron",
            Family::Octahedron => "octahedron",
            Family::K4 => "k4",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        const THREE_TREE: [ParamSpec; 1] = [req("n")];
        const EULERIAN: [ParamSpec; 1] = [req("t")];
        const CHAIN: [ParamSpec; 1] = [req("k")];
        const FLIPPED: [ParamSpec; 2] = [req("n"), opt("flips", ParamDefault::TimesN(3))];
        const SAMPLED: [ParamSpec; 2] = [req("n"), opt("budget", ParamDefault::Fixed(30))];
        const CONNECTED: [ParamSpec; 2] = [req("n"), opt("removals", ParamDefault::TimesN(1))];
        match self {
            Family::ThreeTree => &THREE_TREE,
            Family::Eulerian => &EULERIAN,
            Family::DiamondChain | Family::K4Chain => &CHAIN,
            Family::Random | Family::Near => &FLIPPED,
            Family::MinDegree5 | Family::AllOdd => &SAMPLED,
            Family::Connected => &CONNECTED,
            Family::Icosahedron | Family::Octahedron | Family::K4 => &[],
        }
    }

    /// Deterministic families ignore seeds and yield one graph per point.
    pub fn is_seeded(self) -> bool {
        !matches!(self, Family::DiamondChain | Family::K4Chain | Family::Icosahedron | Family::Octahedron | Family::K4)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    /// Values per parameter, in the family's declared parameter order.
    pub params: Vec<(String, Vec<u64>)>,
}

impl FamilySpec {
    /// Every parameter combination, first parameter varying slowest.
    pub fn points(&self) -> Vec<Vec<(String, u64)>> {
        self.params.iter().fold(vec![Vec::new()], |acc, (name, values)| {
            acc.into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push((name.clone(), v));
                        p
                    })
                })
                .collect()
        })
    }
}

/// Which groups of checks a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckToggles {
    pub oracles: bool,
    pub structure: bool,
    pub accounting: bool,
    pub odd: bool,
}

impl CheckToggles {
    pub const ALL: CheckToggles = CheckToggles { oracles: true, structure: true, accounting: true, odd: true };
    const NAMES: [&'static str; 4] = ["oracles", "structure", "accounting", "odd"];

    fn names(&self) -> Vec<&'static str> {
        let on = [self.oracles, self.structure, self.accounting, self.odd];
        Self::NAMES.iter().zip(on).filter(|(_, on)| *on).map(|(n, _)| *n).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub families: Vec<FamilySpec>,
    pub seed: u64,
    pub seeds_per_point: u64,
    pub iota_limit: usize,
    pub gamma_limit: usize,
    pub checks: CheckToggles,
    /// Output path stem; `.json` and `.tsv` are appended.
    pub output: Option<PathBuf>,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            families: Vec::new(),
            seed: 0,
            seeds_per_point: 1,
            iota_limit: 35,
            gamma_limit: 24,
            checks: CheckToggles::ALL,
            output: None,
            timing: false,
        }
    }
}

fn parse_values(text: &str) -> Result<Vec<u64>, String> {
    let mut values = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad value {t:?}: {e}"));
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {item:?}"));
                }
                values.extend(a..=b);
            }
            None => values.push(num(item)?),
        }
    }
    if values.is_empty() {
        return Err("no values given".into());
    }
    Ok(values)
}

fn parse_bool(text: &str) -> Result<bool, String> {
    match text {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, got {text:?}")),
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut cfg = SweepConfig::default();
        let mut families: Option<Vec<Family>> = None;
        let mut raw_params: Vec<(usize, Family, String, Vec<u64>)> = Vec::new();

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| HarnessError::Config { line: line_no, msg };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "families" => {
                    let list = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect::<Result<Vec<Family>, _>>()
                        .map_err(err)?;
                    families = Some(list);
                }
                "seed" => cfg.seed = value.parse().map_err(|e| err(format!("bad seed: {e}")))?,
                "seeds_per_point" => {
                    cfg.seeds_per_point = value.parse().map_err(|e| err(format!("bad seeds_per_point: {e}")))?
                }
                "iota_limit" => cfg.iota_limit = value.parse().map_err(|e| err(format!("bad iota_limit: {e}")))?,
                "gamma_limit" => cfg.gamma_limit = value.parse().map_err(|e| err(format!("bad gamma_limit: {e}")))?,
                "output" => cfg.output = (!value.is_empty()).then(|| PathBuf::from(value)),
                "timing" => cfg.timing = parse_bool(value).map_err(err)?,
                "checks" => {
                    let mut toggles = CheckToggles { oracles: false, structure: false, accounting: false, odd: false };
                    for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        match name {
                            "all" => toggles = CheckToggles::ALL,
                            "none" => {}
                            "oracles" => toggles.oracles = true,
                            "structure" => toggles.structure = true,
                            "accounting" => toggles.accounting = true,
                            "odd" => toggles.odd = true,
                            other => return Err(err(format!("unknown check group {other:?}"))),
                        }
                    }
                    cfg.checks = toggles;
                }
                _ => {
                    let (fam, param) = key.split_once('.').ok_or_else(|| err(format!("unknown key {key:?}")))?;
                    let family: Family = fam.parse().map_err(err)?;
                    if !family.params().iter().any(|p| p.name == param) {
                        return Err(err(format!("family {family} has no parameter {param:?}")));
                    }
                    raw_params.push((line_no, family, param.to_string(), parse_values(value).map_err(err)?));
                }
            }
        }

        let families = families.unwrap_or_default();
        for (line, family, _, _) in &raw_params {
            if !families.contains(family) {
                return Err(HarnessError::Config { line: *line, msg: format!("family {family} is not listed") });
            }
        }
        for family in families {
            let mut params = Vec::new();
            for spec in family.params() {
                let given = raw_params.iter().rev().find(|(_, f, p, _)| *f == family && p == spec.name);
                match (given, spec.default) {
                    (Some((_, _, _, values)), _) => params.push((spec.name.to_string(), values.clone())),
                    (None, Some(_)) => {}
                    (None, None) => {
                        return Err(HarnessError::Config {
                            line: 0,
                            msg: format!("family {family} needs `{family}.{}`", spec.name),
                        })
                    }
                }
            }
            cfg.families.push(FamilySpec { family, params });
        }
        Ok(cfg)
    }

    /// The config in the same flat format; parsing it yields `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.families.iter().map(|f| f.family.name()).collect();
        out.push_str(&format!("families = {}\n", names.join(", ")));
        for spec in &self.families {
            for (param, values) in &spec.params {
                let values: Vec<String> = values.iter().map(u64::to_string).collect();
                out.push_str(&format!("{}.{param} = {}\n", spec.family, values.join(", ")));
            }
        }
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("seeds_per_point = {}\n", self.seeds_per_point));
        out.push_str(&format!("iota_limit = {}\n", self.iota_limit));
        out.push_str(&format!("gamma_limit = {}\n", self.gamma_limit));
        let checks = self.checks.names();
        out.push_str(&format!("checks = {}\n", if checks.is_empty() { "none".into() } else { checks.join(", ") }));
        if let Some(path) = &self.output {
            out.push_str(&format!("output = {}\n", path.display()));
        }
        out.push_str(&format!("timing = {}\n", self.timing));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# diamond chains and small random triangulations
families = diamond_chain, random
diamond_chain.k = 2..4
random.n = 5, 8..9
random.flips = 10
seed = 3
seeds_per_point = 2
checks = oracles, odd
";

    #[test]
    fn parses_sample() {
        let cfg = SweepConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.families.len(), 2);
        assert_eq!(cfg.families[0].points().len(), 3);
        let random = &cfg.families[1];
        assert_eq!(random.params, vec![("n".into(), vec![5, 8, 9]), ("flips".into(), vec![10])]);
        assert_eq!(random.points()[1], vec![("n".into(), 8), ("flips".into(), 10)]);
        assert_eq!(cfg.seed, 3);
        assert!(cfg.checks.oracles && cfg.checks.odd && !cfg.checks.structure);
        assert_eq!(SweepConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn empty_config_has_no_families() {
        let cfg = SweepConfig::parse("# nothing\n").unwrap();
        assert!(cfg.families.is_empty());
        assert_eq!(cfg.iota_limit, 35);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "families = hexagon",
            "families = random",
            "families = random\nrandom.m = 4",
            "families = random\nrandom.n = 9..4",
            "random.n = 4",
            "seed = -1",
            "timing = maybe",
            "nonsense",
        ] {
            assert!(SweepConfig::parse(bad).is_err(), "{bad:?} accepted");
        }
    }
}
