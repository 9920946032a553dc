//! Named verification suites and the runner that turns a [`RunConfig`] into a [`Report`].

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{int, ScalarCtx};
use crate::characters;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::fock::HighestWeight;
use crate::limits::{self, LimitCtx};
use crate::relations::{self, fusion, poles, Point, RelationCase};
use crate::report::{CheckRecord, Checker, Report, Status};
use crate::structfn;
use crate::zalg;
use crate::zeta;

/// One independent unit of work.
pub struct Job {
    pub label: String,
    run: Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync>,
}

impl Job {
    pub fn new(label: impl Into<String>, run: impl Fn() -> CheckRecord + Send + Sync + 'static) -> Job {
        Job::many(label, move || vec![run()])
    }

    /// A job that produces several records.
    pub fn many(label: impl Into<String>, run: impl Fn() -> Vec<CheckRecord> + Send + Sync + 'static) -> Job {
        Job {
            label: label.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> Vec<CheckRecord> {
        (self.run)()
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>>;
}

fn relation_case(n: usize, point: &Point, window: i64, level: i64) -> RelationCase {
    RelationCase {
        n,
        point: point.clone(),
        window,
        level,
    }
}

struct Relations;

impl Suite for Relations {
    fn name(&self) -> &'static str {
        relations::SUITE
    }

    fn description(&self) -> &'static str {
        "quadratic relations of W^i W^j as mode matrix elements, with tail and reversal checks"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let r = &cfg.relations;
        let mut jobs = Vec::new();
        for point in cfg.parsed_points()? {
            for &n in &r.ranks {
                let nn = n as i64;
                let wide = relation_case(n, &point, r.window_w1, r.level_w1);
                let narrow = relation_case(n, &point, r.window, r.level);
                for j in 1..=nn {
                    let c = wide.clone();
                    jobs.push(Job::new(format!("w1wj N={n} j={j}"), move || relations::verify_w1wj(&c, j)));
                }
                for j in 2..=nn {
                    let c = narrow.clone();
                    jobs.push(Job::new(format!("w2wj N={n} j={j}"), move || relations::verify_w2wj(&c, j)));
                    let c = narrow.clone();
                    jobs.push(Job::new(format!("cross N={n} j={j}"), move || {
                        relations::verify_cross_engine(&c, j)
                    }));
                }
                for i in 0..=nn {
                    for j in i..=nn {
                        let c = narrow.clone();
                        jobs.push(Job::new(format!("wiwj N={n} {i},{j}"), move || relations::verify_wiwj(&c, i, j)));
                    }
                }
                for i in 1..nn {
                    for j in i..nn {
                        // an even shift beyond every pole of f^{i,j} W^i W^j
                        let r_shift = 2 * nn + 2;
                        let c = narrow.clone();
                        jobs.push(Job::new(format!("noww N={n} {i},{j}"), move || {
                            relations::verify_nowwj(&c, i, j, r_shift)
                        }));
                        let c = narrow.clone();
                        jobs.push(Job::new(format!("reversal N={n} {i},{j}"), move || {
                            relations::verify_reversal(&c, i, j)
                        }));
                    }
                }
            }
        }
        Ok(jobs)
    }
}

struct FIdentities;

impl Suite for FIdentities {
    fn name(&self) -> &'static str {
        structfn::SUITE
    }

    fn description(&self) -> &'static str {
        "identities among the structure functions f^{i,j} and gamma"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let f = &cfg.f_identities;
        let mut jobs = Vec::new();
        for point in cfg.parsed_points()? {
            for &n in &f.ranks {
                let order = f.order;
                let p = point.clone();
                jobs.push(Job::many(format!("f-identities N={n}"), move || match p.ctx(n) {
                    Ok(ctx) => structfn::check_f_identities(&ctx, order),
                    Err(e) => vec![context_failure(&p, n, structfn::SUITE, "f-identities", &e)],
                }));
                let p = point.clone();
                jobs.push(Job::new(format!("f-reflection N={n}"), move || {
                    with_ctx(&p, n, structfn::SUITE, "f-reflection", |ctx| structfn::check_f_reflection(ctx, order))
                }));
            }
        }
        Ok(jobs)
    }
}

/// Runs `f` at a generic point, turning a degenerate point into a failed record.
fn with_ctx(
    point: &Point,
    n: usize,
    suite: &str,
    check: &str,
    f: impl FnOnce(&ScalarCtx<crate::algebra::Quad>) -> CheckRecord,
) -> CheckRecord {
    match point.ctx(n) {
        Ok(ctx) => f(&ctx),
        Err(e) => context_failure(point, n, suite, check, &e),
    }
}

fn context_failure(point: &Point, n: usize, suite: &str, check: &str, e: &Error) -> CheckRecord {
    let mut ck = Checker::new(suite, check).case("N", n).case("point", point.label());
    ck.error("scalar context", e);
    ck.finish()
}

struct Poles;

impl Suite for Poles {
    fn name(&self) -> &'static str {
        poles::SUITE
    }

    fn description(&self) -> &'static str {
        "pole set of f^{i,j} W^i W^j by rational reconstruction on the vacuum"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let mut jobs = Vec::new();
        for point in cfg.parsed_points()? {
            for &n in &cfg.poles.ranks {
                for i in 1..=n as i64 {
                    for j in i..=n as i64 {
                        let p = point.clone();
                        let order = cfg.poles.order;
                        jobs.push(Job::new(format!("poles N={n} {i},{j}"), move || {
                            with_ctx(&p, n, poles::SUITE, "poles", |ctx| {
                                let vac = HighestWeight::vacuum(ctx);
                                poles::verify_poles(ctx, &vac, &p.label(), i, j, order)
                            })
                        }));
                    }
                }
            }
        }
        Ok(jobs)
    }
}

struct Fusion;

impl Suite for Fusion {
    fn name(&self) -> &'static str {
        fusion::SUITE
    }

    fn description(&self) -> &'static str {
        "fusion of W^i W^j into W^{i+j} at the poles of the structure function"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let fc = &cfg.fusion;
        let mut jobs = Vec::new();
        for point in cfg.parsed_points()? {
            for &n in &fc.ranks {
                let nn = n as i64;
                let case = relation_case(n, &point, fc.window, fc.level);
                for sign in [1i64, -1] {
                    for j in 1..=nn {
                        let c = case.clone();
                        jobs.push(Job::new(format!("fusion-w1wj N={n} j={j} {sign}"), move || {
                            fusion::verify_fusion_w1wj(&c, j, sign)
                        }));
                    }
                    for i in 0..=nn {
                        for j in i..=nn {
                            let c = case.clone();
                            jobs.push(Job::new(format!("fusion-wiwj N={n} {i},{j} {sign}"), move || {
                                fusion::verify_fusion_wiwj(&c, i, j, sign)
                            }));
                        }
                    }
                }
            }
        }
        Ok(jobs)
    }
}

struct LimitOne;

impl Suite for LimitOne {
    fn name(&self) -> &'static str {
        limits::SUITE_ONE
    }

    fn description(&self) -> &'static str {
        "q = e^hbar, t = q^beta: p-binomials and vacuum expectation values near hbar = 0"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let l1 = &cfg.limit1;
        let mut jobs = Vec::new();
        for &n in &l1.ranks {
            for beta in cfg.limit1_betas(n)? {
                let (order, window) = (l1.hbar_order, l1.window);
                jobs.push(Job::new(format!("limit1 N={n} beta={beta}"), move || {
                    limits::verify_limit_i_appendix(&LimitCtx::one(n, beta.clone(), order), window)
                }));
            }
        }
        Ok(jobs)
    }
}

struct LimitTwo;

impl Suite for LimitTwo {
    fn name(&self) -> &'static str {
        limits::SUITE_TWO
    }

    fn description(&self) -> &'static str {
        "t near a root of unity: reduction to the Z-algebra and the order of correlators in hbar"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let l2 = &cfg.limit2;
        let mut jobs = Vec::new();
        for &[n, k] in &l2.relation_cases {
            for i in 1..n {
                for j in 1..n {
                    let order = l2.x_order;
                    let lim = LimitCtx::two(n as usize, int(k), 2);
                    jobs.push(Job::new(format!("limit2 N={n} k={k} {i},{j}"), move || {
                        limits::verify_limit_ii_relation(&lim, i, j, order)
                    }));
                    let lim = LimitCtx::two(n as usize, int(k), 2);
                    jobs.push(Job::new(format!("limit2-f N={n} k={k} {i},{j}"), move || {
                        limits::verify_limit_ii_structure(&lim, i, j, order)
                    }));
                }
            }
        }
        for &[n, k] in &l2.correlator_cases {
            for pts in 1..=l2.max_points {
                let order = l2.correlator_x_order;
                let lim = LimitCtx::two(n as usize, int(k), pts);
                jobs.push(Job::new(format!("correlator N={n} k={k} n={pts}"), move || {
                    limits::verify_correlator_order(&lim, pts, order)
                }));
            }
        }
        Ok(jobs)
    }
}

struct ZAlgebra;

impl Suite for ZAlgebra {
    fn name(&self) -> &'static str {
        zalg::SUITE
    }

    fn description(&self) -> &'static str {
        "principal realization of affine sl_N and the Z-algebra exchange factor"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let z = &cfg.zalgebra;
        let mut jobs = Vec::new();
        for &n in &z.ranks {
            let window = if z.window == 0 { 2 * n as i64 + 1 } else { z.window };
            jobs.push(Job::new(format!("principal N={n}"), move || zalg::verify_principal_relations(n, window)));
            jobs.push(Job::new(format!("jacobi N={n}"), move || zalg::verify_jacobi(n, 1)));
        }
        for &[n, k] in &z.splitting_cases {
            for mu in 1..n {
                for nu in mu..n {
                    let order = z.order;
                    jobs.push(Job::new(format!("splitting N={n} k={k} {mu},{nu}"), move || {
                        zalg::verify_splitting_consistency(n as usize, &int(k), mu, nu, order)
                    }));
                }
            }
        }
        Ok(jobs)
    }
}

struct Characters;

impl Suite for Characters {
    fn name(&self) -> &'static str {
        characters::SUITE
    }

    fn description(&self) -> &'static str {
        "Z-algebra characters against the Rocha-Caridi formula as exact q-series"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let c = &cfg.characters;
        let mut jobs = Vec::new();
        for &k in &c.levels {
            for j in characters::spins(k) {
                let cutoff = int(c.cutoff);
                jobs.push(Job::new(format!("character k={k} j={j}"), move || {
                    characters::verify_char_identity(k, &j, &cutoff)
                }));
            }
        }
        let n = c.partitions;
        jobs.push(Job::new("partitions", move || characters::verify_partition_oracle(n)));
        Ok(jobs)
    }
}

struct Zeta;

impl Suite for Zeta {
    fn name(&self) -> &'static str {
        zeta::SUITE
    }

    fn description(&self) -> &'static str {
        "Bernoulli numbers, zeta(1-2m) and the regularized self-contraction against p-binomials"
    }

    fn jobs(&self, cfg: &RunConfig) -> Result<Vec<Job>> {
        let z = &cfg.zeta;
        let m = z.m;
        let mut jobs = vec![Job::new("bernoulli", move || zeta::verify_bernoulli(m))];
        let point = cfg.parsed_points()?.remove(0);
        for &n in &z.ranks {
            let nn = n as i64;
            for i in 1..nn {
                for beta in [crate::algebra::rat(nn + 1, nn), crate::algebra::rat(nn, nn + 1)] {
                    jobs.push(Job::new(format!("zeta N={n} i={i} beta={beta}"), move || {
                        zeta::verify_zeta_identity(nn, i, &beta, m)
                    }));
                }
            }
            for i in 0..=n {
                let p = point.clone();
                jobs.push(Job::new(format!("vacuum N={n} i={i}"), move || {
                    with_ctx(&p, n, zeta::SUITE, "vacuum-eigenvalue", |ctx| zeta::verify_vacuum_eigenvalue(ctx, i))
                }));
            }
        }
        Ok(jobs)
    }
}

/// Every suite, in a fixed order.
pub fn registry() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(Relations),
        Box::new(FIdentities),
        Box::new(Poles),
        Box::new(Fusion),
        Box::new(LimitOne),
        Box::new(LimitTwo),
        Box::new(ZAlgebra),
        Box::new(Characters),
        Box::new(Zeta),
    ]
}

pub fn find(name: &str) -> Option<Box<dyn Suite>> {
    registry().into_iter().find(|s| s.name() == name)
}

/// Suites whose cases run at several generic points; pass/fail must not
/// depend on the point.
const POINT_SUITES: [&str; 4] = [relations::SUITE, structfn::SUITE, poles::SUITE, fusion::SUITE];

/// One record per suite comparing statuses across generic points.
pub fn point_independence(records: &[CheckRecord]) -> Vec<CheckRecord> {
    let mut groups: BTreeMap<&str, BTreeMap<String, Vec<(String, Status)>>> = BTreeMap::new();
    for r in records {
        if !POINT_SUITES.contains(&r.suite.as_str()) {
            continue;
        }
        let is_point = |k: &str| matches!(k, "point" | "q" | "t");
        let point: Vec<String> = r
            .case
            .iter()
            .filter(|(k, _)| is_point(k))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if point.is_empty() {
            continue;
        }
        let point = point.join(",");
        let rest: Vec<String> = r
            .case
            .iter()
            .filter(|(k, _)| !is_point(k))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let key = format!("{}/{}", r.check, rest.join(","));
        groups
            .entry(r.suite.as_str())
            .or_default()
            .entry(key)
            .or_default()
            .push((point, r.status));
    }
    groups
        .into_iter()
        .map(|(suite, cases)| {
            let mut ck = Checker::new(suite, "point-independence");
            for (key, statuses) in cases {
                if statuses.len() < 2 {
                    continue;
                }
                let same = statuses.iter().all(|(_, s)| *s == statuses[0].1);
                if !same {
                    let all: BTreeMap<String, Status> = statuses.into_iter().collect();
                    ck.fail(key, json!("same status at every point"), json!(all));
                } else {
                    ck.holds(|| key, true);
                }
            }
            ck.finish()
        })
        .collect()
}

/// Runs the selected suites. The report depends only on `cfg`.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    let mut seen = Vec::new();
    for name in &cfg.suites {
        if seen.contains(name) {
            continue;
        }
        let suite = find(name).ok_or_else(|| Error::Config(format!("unknown suite {name:?}")))?;
        jobs.extend(suite.jobs(cfg)?);
        seen.push(name.clone());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.thread_count()?)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut records: Vec<CheckRecord> = pool.install(|| jobs.par_iter().flat_map(Job::run).collect());
    // point-free records (e.g. rhs-regularity) come out once per point
    records.sort_by_cached_key(CheckRecord::key);
    records.dedup();
    if cfg.points.len() > 1 {
        let extra = point_independence(&records);
        records.extend(extra);
    }
    let config = serde_json::to_value(cfg).map_err(|e| Error::Config(e.to_string()))?;
    Ok(Report::new(config, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_complete() {
        let names: Vec<&str> = registry().iter().map(|s| s.name()).collect();
        assert_eq!(
            names,
            ["relations", "f-identities", "poles", "fusion", "limit1", "limit2", "zalgebra", "characters", "zeta"]
        );
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        let cfg = RunConfig::with_suites(&["nope"]);
        assert!(matches!(run(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn point_mismatch_is_reported() {
        let rec = |p: &str, ok: bool| {
            let mut ck = Checker::new("relations", "w1wj").case("point", p).case("j", 1);
            ck.holds(|| "x".into(), ok);
            ck.finish()
        };
        let out = point_independence(&[rec("a", true), rec("b", false)]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].status, Status::Fail);
        let out = point_independence(&[rec("a", true), rec("b", true)]);
        assert!(out[0].passed());
    }
}
