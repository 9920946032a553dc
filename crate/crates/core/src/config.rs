//! Run configuration, read from TOML. Every field has a default, so an empty
//! file (plus a `suites` list) is a valid configuration.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rat, Rat};
use crate::error::{Error, Result};
use crate::relations::Point;

/// Environment variable that overrides `threads`.
pub const THREADS_ENV: &str = "DWA_THREADS";

/// Upper bounds on declared windows and orders; larger requests are refused
/// instead of running for days.
pub const MAX_WINDOW: i64 = 6;
pub const MAX_LEVEL: i64 = 6;
pub const MAX_ORDER: usize = 48;
pub const MAX_CUTOFF: i64 = 400;
pub const MAX_POINTS: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub q: String,
    pub t: String,
    /// Free highest-weight parameters `a_1, a_2, ..`; missing ones are 1.
    #[serde(default)]
    pub weights: Vec<String>,
}

impl PointConfig {
    pub fn parse(&self) -> Result<Point> {
        let r = |s: &str| parse_rat(s).map_err(|e| Error::Config(format!("bad rational {s:?}: {e}")));
        Ok(Point {
            q: r(&self.q)?,
            t: r(&self.t)?,
            weights: self.weights.iter().map(|w| r(w)).collect::<Result<_>>()?,
        })
    }
}

fn default_points() -> Vec<PointConfig> {
    let p = |q: &str, t: &str, w: [&str; 3]| PointConfig {
        q: q.into(),
        t: t.into(),
        weights: w.iter().map(|s| s.to_string()).collect(),
    };
    vec![p("3/2", "5/3", ["2/3", "5/7", "3/4"]), p("2/7", "3/5", ["3/5", "4/7", "5/4"])]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelationsConfig {
    pub ranks: Vec<usize>,
    /// `|n|, |m|` bound for the `i = 1` relation.
    pub window_w1: i64,
    pub level_w1: i64,
    /// Window and level for every other relation.
    pub window: i64,
    pub level: i64,
}

impl Default for RelationsConfig {
    fn default() -> Self {
        RelationsConfig {
            ranks: vec![2, 3, 4],
            window_w1: 3,
            level_w1: 3,
            window: 2,
            level: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FIdentitiesConfig {
    pub ranks: Vec<usize>,
    pub order: usize,
}

impl Default for FIdentitiesConfig {
    fn default() -> Self {
        FIdentitiesConfig {
            ranks: vec![2, 3, 4],
            order: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolesConfig {
    pub ranks: Vec<usize>,
    /// Series order handed to rational reconstruction.
    pub order: usize,
}

impl Default for PolesConfig {
    fn default() -> Self {
        PolesConfig {
            ranks: vec![2, 3],
            order: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FusionConfig {
    pub ranks: Vec<usize>,
    pub window: i64,
    pub level: i64,
}

impl Default for FusionConfig {
    fn default() -> Self {
        FusionConfig {
            ranks: vec![2, 3],
            window: 2,
            level: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitOneConfig {
    pub ranks: Vec<usize>,
    /// Explicit `beta` values; empty means `(N+1)/N` and `N/(N+1)` for each rank.
    pub betas: Vec<String>,
    pub hbar_order: usize,
    /// Largest mode in the two-point checks.
    pub window: i64,
}

impl Default for LimitOneConfig {
    fn default() -> Self {
        LimitOneConfig {
            ranks: vec![2, 3, 4, 5],
            betas: Vec::new(),
            hbar_order: 6,
            window: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitTwoConfig {
    /// `[N, k]` pairs for the Z-algebra reduction.
    pub relation_cases: Vec<[i64; 2]>,
    pub x_order: usize,
    /// `[N, k]` pairs for the correlator order check.
    pub correlator_cases: Vec<[i64; 2]>,
    pub max_points: usize,
    pub correlator_x_order: i64,
}

impl Default for LimitTwoConfig {
    fn default() -> Self {
        LimitTwoConfig {
            relation_cases: vec![[2, 2], [2, 3], [3, 1], [3, 2]],
            x_order: 12,
            correlator_cases: vec![[2, 2], [3, 2]],
            max_points: 4,
            correlator_x_order: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZAlgebraConfig {
    pub ranks: Vec<usize>,
    /// Mode window; `0` means `2N + 1`.
    pub window: i64,
    /// `[N, k]` pairs for the exchange-factor check.
    pub splitting_cases: Vec<[i64; 2]>,
    pub order: usize,
}

impl Default for ZAlgebraConfig {
    fn default() -> Self {
        ZAlgebraConfig {
            ranks: vec![2, 3, 4],
            window: 0,
            splitting_cases: vec![[2, 1], [2, 2], [3, 1], [3, 2]],
            order: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CharactersConfig {
    pub levels: Vec<i64>,
    /// Largest `y` exponent compared.
    pub cutoff: i64,
    pub partitions: usize,
}

impl Default for CharactersConfig {
    fn default() -> Self {
        CharactersConfig {
            levels: vec![2, 3, 4],
            cutoff: 20,
            partitions: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZetaConfig {
    pub ranks: Vec<usize>,
    /// Number of `zeta(1-2m)` terms, i.e. the identity is checked to `hbar^{2M}`.
    pub m: usize,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            ranks: vec![2, 3, 4, 5],
            m: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suites: Vec<String>,
    pub points: Vec<PointConfig>,
    /// Report path; stdout gets the summary either way.
    #[serde(skip_serializing)]
    pub output: Option<String>,
    /// Not echoed into reports, so the thread count cannot change report bytes.
    #[serde(skip_serializing)]
    pub threads: Option<usize>,
    pub relations: RelationsConfig,
    pub f_identities: FIdentitiesConfig,
    pub poles: PolesConfig,
    pub fusion: FusionConfig,
    pub limit1: LimitOneConfig,
    pub limit2: LimitTwoConfig,
    pub zalgebra: ZAlgebraConfig,
    pub characters: CharactersConfig,
    pub zeta: ZetaConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Vec::new(),
            points: default_points(),
            output: None,
            threads: None,
            relations: Default::default(),
            f_identities: Default::default(),
            poles: Default::default(),
            fusion: Default::default(),
            limit1: Default::default(),
            limit2: Default::default(),
            zalgebra: Default::default(),
            characters: Default::default(),
            zeta: Default::default(),
        }
    }
}

fn positive(what: &str, v: i64, max: i64) -> Result<()> {
    if v < 1 {
        return Err(Error::Config(format!("{what} must be positive, got {v}")));
    }
    if v > max {
        return Err(Error::Config(format!("{what} = {v} exceeds the limit {max}")));
    }
    Ok(())
}

fn ranks(what: &str, v: &[usize], min: usize) -> Result<()> {
    if let Some(n) = v.iter().find(|&&n| n < min || n > 8) {
        return Err(Error::Config(format!("{what}: rank {n} outside {min}..=8")));
    }
    Ok(())
}

fn pairs(what: &str, v: &[[i64; 2]]) -> Result<()> {
    if let Some(p) = v.iter().find(|p| p[0] < 2 || p[0] > 8 || p[1] < 1) {
        return Err(Error::Config(format!("{what}: bad [N, k] pair {p:?}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default grids for the given suites.
    pub fn with_suites(suites: &[&str]) -> RunConfig {
        RunConfig {
            suites: suites.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        if self.points.is_empty() {
            return Err(Error::Config("at least one generic point is needed".into()));
        }
        for p in &self.points {
            p.parse()?;
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        let r = &self.relations;
        ranks("relations.ranks", &r.ranks, 2)?;
        positive("relations.window_w1", r.window_w1, MAX_WINDOW)?;
        positive("relations.level_w1", r.level_w1, MAX_LEVEL)?;
        positive("relations.window", r.window, MAX_WINDOW)?;
        positive("relations.level", r.level, MAX_LEVEL)?;
        ranks("f_identities.ranks", &self.f_identities.ranks, 2)?;
        positive("f_identities.order", self.f_identities.order as i64, MAX_ORDER as i64)?;
        ranks("poles.ranks", &self.poles.ranks, 2)?;
        positive("poles.order", self.poles.order as i64, MAX_ORDER as i64)?;
        ranks("fusion.ranks", &self.fusion.ranks, 2)?;
        positive("fusion.window", self.fusion.window, MAX_WINDOW)?;
        positive("fusion.level", self.fusion.level, MAX_LEVEL)?;
        let l1 = &self.limit1;
        ranks("limit1.ranks", &l1.ranks, 2)?;
        for b in &l1.betas {
            parse_rat(b).map_err(|e| Error::Config(format!("limit1.betas: {e}")))?;
        }
        positive("limit1.hbar_order", l1.hbar_order as i64, MAX_ORDER as i64)?;
        positive("limit1.window", l1.window, MAX_WINDOW)?;
        let l2 = &self.limit2;
        pairs("limit2.relation_cases", &l2.relation_cases)?;
        pairs("limit2.correlator_cases", &l2.correlator_cases)?;
        positive("limit2.x_order", l2.x_order as i64, MAX_ORDER as i64)?;
        positive("limit2.max_points", l2.max_points as i64, MAX_POINTS as i64)?;
        positive("limit2.correlator_x_order", l2.correlator_x_order, MAX_ORDER as i64)?;
        let z = &self.zalgebra;
        ranks("zalgebra.ranks", &z.ranks, 2)?;
        if z.window < 0 || z.window > 4 * MAX_WINDOW {
            return Err(Error::Config(format!("zalgebra.window = {} out of range", z.window)));
        }
        pairs("zalgebra.splitting_cases", &z.splitting_cases)?;
        positive("zalgebra.order", z.order as i64, MAX_ORDER as i64)?;
        let c = &self.characters;
        if let Some(k) = c.levels.iter().find(|&&k| !(2..=12).contains(&k)) {
            return Err(Error::Config(format!("characters.levels: level {k} outside 2..=12")));
        }
        positive("characters.cutoff", c.cutoff, MAX_CUTOFF)?;
        positive("characters.partitions", c.partitions as i64, MAX_CUTOFF)?;
        ranks("zeta.ranks", &self.zeta.ranks, 2)?;
        if self.zeta.m < 2 || self.zeta.m > MAX_ORDER / 2 {
            return Err(Error::Config(format!("zeta.m = {} outside 2..={}", self.zeta.m, MAX_ORDER / 2)));
        }
        Ok(())
    }

    pub fn parsed_points(&self) -> Result<Vec<Point>> {
        self.points.iter().map(PointConfig::parse).collect()
    }

    /// `threads`, overridden by the environment.
    pub fn thread_count(&self) -> Result<usize> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::Config(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
            },
            Err(_) => Ok(self.threads.unwrap_or(1)),
        }
    }

    pub fn limit1_betas(&self, n: usize) -> Result<Vec<Rat>> {
        if self.limit1.betas.is_empty() {
            let n = n as i64;
            return Ok(vec![crate::algebra::rat(n + 1, n), crate::algebra::rat(n, n + 1)]);
        }
        self.limit1
            .betas
            .iter()
            .map(|b| parse_rat(b).map_err(|e| Error::Config(e.to_string())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_list_is_rejected() {
        let e = RunConfig::from_toml("").unwrap_err();
        assert_eq!(e, Error::Config("no suites selected".into()));
    }

    #[test]
    fn sections_override_defaults() {
        let cfg = RunConfig::from_toml("suites = [\"zeta\"]\n[zeta]\nranks = [2, 3]\n").unwrap();
        assert_eq!(cfg.zeta.ranks, vec![2, 3]);
        assert_eq!(cfg.zeta.m, 6);
        assert_eq!(cfg.characters.cutoff, 20);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(RunConfig::from_toml("suites = [\"relations\"]\n[relations]\nwindow = 60\n").is_err());
        assert!(RunConfig::from_toml("suites = [\"relations\"]\n[relations]\nlevel = 0\n").is_err());
        assert!(RunConfig::from_toml("suites = [\"zeta\"]\nbogus = 1\n").is_err());
    }
}
