use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domination::{Breach, Relation};
use crate::plane_graph::GraphClass;

/// Exact rational, always reduced with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Ratio {
    num: i64,
    den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let sign = den.signum();
        Self { num: sign * num / g, den: sign * den / g }
    }

    pub fn integer(v: i64) -> Self {
        Self { num: v, den: 1 }
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    /// Compares the integer `lhs` against `self` under `rel`.
    pub fn admits(self, lhs: i64, rel: Relation) -> bool {
        let scaled = lhs as i128 * self.den as i128;
        let num = self.num as i128;
        match rel {
            Relation::Le => scaled <= num,
            Relation::Lt => scaled < num,
            Relation::Eq => scaled == num,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl From<Ratio> for String {
    fn from(r: Ratio) -> String {
        r.to_string()
    }
}

impl FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad ratio {s:?}: {e}"));
        match s.split_once('/') {
            Some((a, b)) => {
                let den = parse(b)?;
                if den == 0 {
                    return Err(format!("bad ratio {s:?}: zero denominator"));
                }
                Ok(Ratio::new(parse(a)?, den))
            }
            None => Ok(Ratio::integer(parse(s)?)),
        }
    }
}

impl TryFrom<String> for Ratio {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

/// Hard records must hold; findings record statements given without proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Hard,
    Finding,
}

/// Every quantity checked per graph. Rows whose label ends in
/// `violations` count failed instances of a structural property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "iota = 2n/7")]
    IotaTwoSevenths,
    #[serde(rename = "iota <= n/4")]
    IotaQuarter,
    #[serde(rename = "min stacked class <= n/4")]
    StackedMinClass,
    #[serde(rename = "non-dominating stacked classes")]
    StackedNonDominating,
    #[serde(rename = "witness violations")]
    DiamondWitness,
    #[serde(rename = "comb <= 5n/12")]
    CombinatorFiveTwelfths,
    #[serde(rename = "comb < 3n/8")]
    CombinatorThreeEighths,
    #[serde(rename = "comb <= n/3")]
    CombinatorThird,
    #[serde(rename = "iota - comb <= 0")]
    IotaAtMostCombinator,
    #[serde(rename = "gamma - iota <= 0")]
    GammaAtMostIota,
    #[serde(rename = "gamma = n/4")]
    GammaQuarter,
    #[serde(rename = "gamma <= n/3")]
    GammaThird,
    #[serde(rename = "6 comb6 - |V4| <= n")]
    EulerianSixfold,
    #[serde(rename = "comb6 <= (13n-12)/42")]
    EulerianThirteen,
    #[serde(rename = "7|V4| <= 6n-12")]
    EulerianDegreeFourCount,
    #[serde(rename = "odd-degree vertices")]
    EvenDegrees,
    #[serde(rename = "degree-4 triangle violations")]
    DegreeFourTriangles,
    #[serde(rename = "degree-4 component violations")]
    DegreeFourCliques,
    #[serde(rename = "six-coloring violations")]
    SixColoring,
    #[serde(rename = "neighborhood violations")]
    Neighborhoods,
    #[serde(rename = "disconnected H violations")]
    RemainderConnected,
    #[serde(rename = "face inequality violations")]
    FaceInequality,
    #[serde(rename = "separation violations")]
    Separation,
    #[serde(rename = "accounting violations")]
    Accounting,
    #[serde(rename = "odd-degree domination violations")]
    OddDomination,
    #[serde(rename = "4 comb + odd <= 2n")]
    AlphaCombinator,
    #[serde(rename = "4 iota + odd <= 2n")]
    AlphaIota,
}

impl BoundKind {
    pub fn label(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string)).expect("unit variant")
    }

    pub fn relation(self) -> Relation {
        use BoundKind::*;
        match self {
            IotaTwoSevenths | GammaQuarter => Relation::Eq,
            StackedNonDominating | DiamondWitness | EvenDegrees | DegreeFourTriangles | DegreeFourCliques
            | SixColoring | Neighborhoods | RemainderConnected | FaceInequality | Separation | Accounting
            | OddDomination => Relation::Eq,
            CombinatorThreeEighths => Relation::Lt,
            _ => Relation::Le,
        }
    }

    pub fn level(self) -> Level {
        match self {
            BoundKind::AlphaCombinator | BoundKind::AlphaIota | BoundKind::DegreeFourTriangles => Level::Finding,
            _ => Level::Hard,
        }
    }

    /// The right-hand side at `n`.
    pub fn rhs(self, n: usize) -> Ratio {
        use BoundKind::*;
        let n = n as i64;
        match self {
            IotaTwoSevenths => Ratio::new(2 * n, 7),
            IotaQuarter | StackedMinClass | GammaQuarter => Ratio::new(n, 4),
            CombinatorFiveTwelfths => Ratio::new(5 * n, 12),
            CombinatorThreeEighths => Ratio::new(3 * n, 8),
            CombinatorThird | GammaThird => Ratio::new(n, 3),
            EulerianSixfold => Ratio::integer(n),
            EulerianThirteen => Ratio::new(13 * n - 12, 42),
            EulerianDegreeFourCount => Ratio::integer(6 * n - 12),
            AlphaCombinator | AlphaIota => Ratio::integer(2 * n),
            IotaAtMostCombinator | GammaAtMostIota | StackedNonDominating | DiamondWitness | EvenDegrees
            | DegreeFourTriangles | DegreeFourCliques | SixColoring | Neighborhoods | RemainderConnected
            | FaceInequality | Separation | Accounting | OddDomination => Ratio::integer(0),
        }
    }

    pub fn record(self, n: usize, lhs: i64) -> BoundRecord {
        let rhs = self.rhs(n);
        BoundRecord { bound: self, lhs, rhs, holds: rhs.admits(lhs, self.relation()), level: self.level() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub bound: BoundKind,
    pub lhs: i64,
    pub rhs: Ratio,
    pub holds: bool,
    pub level: Level,
}

/// Values computed on one graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Values {
    pub combinator: Option<usize>,
    /// Combinator size on the Eulerian 6-coloring.
    pub combinator6: Option<usize>,
    pub iota: Option<usize>,
    pub gamma: Option<usize>,
    pub odd_vertices: usize,
    pub degree4_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph_id: String,
    pub family: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub class: Option<GraphClass>,
    pub values: Values,
    pub records: Vec<BoundRecord>,
    pub breaches: Vec<Breach>,
    pub notes: Vec<String>,
    /// PGR text, kept when something failed or a conjecture is tight or
    /// violated.
    pub graph: Option<String>,
    pub runtime_ms: Option<u64>,
}

impl BoundReport {
    pub fn hard_failures(&self) -> usize {
        self.records.iter().filter(|r| !r.holds && r.level == Level::Hard).count() + self.breaches.len()
    }

    pub fn findings(&self) -> usize {
        self.records.iter().filter(|r| !r.holds && r.level == Level::Finding).count()
    }

    pub fn record(&self, bound: BoundKind) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.bound == bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_reduce_and_compare() {
        assert_eq!(Ratio::new(6, 8).to_string(), "3/4");
        assert_eq!(Ratio::new(8, 4).to_string(), "2");
        assert_eq!(Ratio::new(3, -6), Ratio::new(-1, 2));
        assert!(Ratio::new(35, 12).admits(2, Relation::Le));
        assert!(!Ratio::new(35, 12).admits(3, Relation::Le));
        assert!(Ratio::new(21, 8).admits(2, Relation::Lt));
        assert!(!Ratio::new(24, 8).admits(3, Relation::Lt));
        assert_eq!("14/3".parse::<Ratio>().unwrap(), Ratio::new(14, 3));
        assert!("1/0".parse::<Ratio>().is_err());
    }

    #[test]
    fn rhs_depends_on_n_only() {
        assert_eq!(BoundKind::IotaTwoSevenths.rhs(21), Ratio::integer(6));
        assert_eq!(BoundKind::CombinatorFiveTwelfths.rhs(14), Ratio::new(35, 6));
        assert_eq!(BoundKind::EulerianThirteen.rhs(9), Ratio::new(105, 42));
        let r = BoundKind::IotaTwoSevenths.record(14, 4);
        assert!(r.holds);
        assert!(!BoundKind::CombinatorThreeEighths.record(8, 3).holds);
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(BoundKind::CombinatorThreeEighths.label(), "comb < 3n/8");
        let json = serde_json::to_string(&BoundKind::AlphaIota).unwrap();
        assert_eq!(serde_json::from_str::<BoundKind>(&json).unwrap(), BoundKind::AlphaIota);
    }
}
