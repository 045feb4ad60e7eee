//! Instance families, ratio reports, exhaustive sweeps and the tightness
//! table.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{lower_bound, predicted_time, BoundsError};
use crate::broadcast::{validate, BroadcastScheme, Violation};
use crate::exact::{exact_structured, exact_subset, ExactError, ExactMethod, StructuredConfig, SubsetConfig};
use crate::schedulers::{palindrome_schedule, simple_k_cycle, ScheduleError, Scheduler};
use crate::topology::{KCycleGraph, Originator, TopologyError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("illegal family parameters: {0}")]
    IllegalFamilyParams(String),
    #[error("cannot parse family `{0}` (expected equal:K,L | step2:K,P | mixed:K,P | random:K,LMAX,SEED | explicit:L1,L2,...)")]
    BadFamily(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("{scheduler} produced an invalid scheme on {instance}: {violations:?}")]
    InvalidScheme {
        scheduler: String,
        instance: String,
        violations: Vec<Violation>,
    },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("exact solver failed on {instance}: {source}")]
    Exact { instance: String, source: ExactError },
    #[error("l = {l}, k = {k} is outside the t_A >= 2k regime (t_A = {t_a})")]
    RegimeViolation { l: usize, k: usize, t_a: u64 },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Families

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Equal { k: usize, l: usize },
    Step2 { k: usize, p: usize },
    Mixed { k: usize, p: usize },
    Random { k: usize, l_max: usize, seed: u64 },
    Explicit(Vec<usize>),
}

fn illegal(msg: impl Into<String>) -> BenchError {
    BenchError::IllegalFamilyParams(msg.into())
}

impl FamilySpec {
    /// Cycle lengths in non-increasing order.
    pub fn lengths(&self) -> Result<Vec<usize>, BenchError> {
        let lengths = match *self {
            FamilySpec::Equal { k, l } => {
                if k == 0 || l < 2 {
                    return Err(illegal(format!("equal needs k >= 1 and l >= 2, got k = {k}, l = {l}")));
                }
                vec![l; k]
            }
            FamilySpec::Step2 { k, p } => {
                if k == 0 || p < k {
                    return Err(illegal(format!("step2 needs 1 <= k <= p, got k = {k}, p = {p}")));
                }
                let v: Vec<usize> = (1..=k).map(|i| k + 2 * p + 2 - 2 * i).collect();
                if v[k - 1] < 2 {
                    return Err(illegal(format!("step2 gives l_k = {} < 2", v[k - 1])));
                }
                v
            }
            FamilySpec::Mixed { k, p } => {
                if k == 0 || p == 0 {
                    return Err(illegal(format!("mixed needs k >= 1 and p >= 1, got k = {k}, p = {p}")));
                }
                (1..=k)
                    .map(|i| if i <= p { k + 2 * p + 2 - 2 * i } else { p + k + 1 - i })
                    .collect()
            }
            FamilySpec::Random { k, l_max, seed } => {
                if k == 0 || l_max < 2 {
                    return Err(illegal(format!(
                        "random needs k >= 1 and l_max >= 2, got k = {k}, l_max = {l_max}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut v: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=l_max)).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            }
            FamilySpec::Explicit(ref v) => {
                if v.is_empty() {
                    return Err(illegal("explicit list is empty"));
                }
                if let Some(&l) = v.iter().find(|&&l| l < 2) {
                    return Err(illegal(format!("explicit length {l} < 2")));
                }
                let mut v = v.clone();
                v.sort_by(|a, b| b.cmp(a));
                v
            }
        };
        Ok(lengths)
    }

    pub fn graph(&self) -> Result<KCycleGraph, BenchError> {
        Ok(KCycleGraph::new(&self.lengths()?)?)
    }
}

impl FromStr for FamilySpec {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BenchError::BadFamily(s.to_string());
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        let u = |i: usize| nums[i] as usize;
        match (name, nums.len()) {
            ("equal", 2) => Ok(FamilySpec::Equal { k: u(0), l: u(1) }),
            ("step2", 2) => Ok(FamilySpec::Step2 { k: u(0), p: u(1) }),
            ("mixed", 2) => Ok(FamilySpec::Mixed { k: u(0), p: u(1) }),
            ("random", 3) => Ok(FamilySpec::Random {
                k: u(0),
                l_max: u(1),
                seed: nums[2],
            }),
            ("explicit", n) if n > 0 => Ok(FamilySpec::Explicit(nums.iter().map(|&x| x as usize).collect())),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Equal { k, l } => write!(f, "equal:{k},{l}"),
            FamilySpec::Step2 { k, p } => write!(f, "step2:{k},{p}"),
            FamilySpec::Mixed { k, p } => write!(f, "mixed:{k},{p}"),
            FamilySpec::Random { k, l_max, seed } => write!(f, "random:{k},{l_max},{seed}"),
            FamilySpec::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|l| l.to_string()).collect();
                write!(f, "explicit:{}", parts.join(","))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reports

/// Runs one scheduler and validates what it produced.
pub fn run_scheduler(g: &KCycleGraph, o: Originator, s: Scheduler) -> Result<(BroadcastScheme, u32), BenchError> {
    let scheme = s.schedule(g, o)?;
    let t = validate(g, o, &scheme).map_err(|violations| BenchError::InvalidScheme {
        scheduler: s.name().to_string(),
        instance: format!("{g} from {o}"),
        violations,
    })?;
    Ok((scheme, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub lengths: Vec<usize>,
    pub originator: Originator,
    pub d: usize,
    pub t_simple: u32,
    pub t_scycle: u32,
    pub t_acycle: u32,
    pub t_palindrome: Option<u32>,
    pub lb: u32,
    /// Closed-form prediction of `t_simple`, kept to cross-check the scheduler.
    pub predicted: u32,
    pub t_exact: Option<u32>,
    pub exact_method: Option<ExactMethod>,
    pub nodes_expanded: Option<u64>,
    /// Optimum from the subset search when it was run as a second opinion.
    pub t_subset: Option<u32>,
}

impl RatioReport {
    pub fn ratio_exact(&self) -> Option<Ratio<u32>> {
        self.t_exact.map(|t| Ratio::new(self.t_simple, t))
    }

    pub fn ratio_lb(&self) -> Ratio<u32> {
        Ratio::new(self.t_simple, self.lb)
    }

    /// Every broken invariant on this row, as human-readable lines.
    pub fn breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        let who = self.describe();
        if self.predicted != self.t_simple {
            out.push(format!(
                "{who}: predicted {} but simulated {}",
                self.predicted, self.t_simple
            ));
        }
        if self.lb > self.t_simple {
            out.push(format!(
                "{who}: lower bound {} above t_simple {}",
                self.lb, self.t_simple
            ));
        }
        if let Some(t) = self.t_exact {
            if self.lb > t {
                out.push(format!("{who}: lower bound {} above optimum {t}", self.lb));
            }
            if t > self.t_simple {
                out.push(format!("{who}: optimum {t} above t_simple {}", self.t_simple));
            }
            let ratio = Ratio::new(self.t_simple, t);
            if ratio >= Ratio::new(3, 2) {
                out.push(format!("{who}: ratio {ratio} is not below 3/2"));
            }
            if self.ratio_lb() < ratio {
                out.push(format!("{who}: ratio_lb {} below ratio_exact {ratio}", self.ratio_lb()));
            }
        }
        if let (Some(a), Some(b)) = (self.t_exact, self.t_subset) {
            if a != b {
                out.push(format!("{who}: structured optimum {a} but subset optimum {b}"));
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        format!("[{}] from {}", parts.join(","), self.originator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub structured: StructuredConfig,
    pub subset: SubsetConfig,
    /// Also run the subset search whenever it fits and compare.
    pub cross_check: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            structured: StructuredConfig::default(),
            subset: SubsetConfig::default(),
            cross_check: true,
        }
    }
}

/// Runs every scheduler on one instance. With `exact`, also solves it
/// optimally with whichever solver fits (structured preferred).
pub fn run(g: &KCycleGraph, o: Originator, exact: Option<ExactOptions>) -> Result<RatioReport, BenchError> {
    g.check_originator(o)?;
    let (_, t_simple) = run_scheduler(g, o, Scheduler::Simple)?;
    let (_, t_scycle) = run_scheduler(g, o, Scheduler::SCycle)?;
    let (_, t_acycle) = run_scheduler(g, o, Scheduler::ACycle)?;
    let t_palindrome = if o.is_center() {
        Some(run_scheduler(g, o, Scheduler::Palindrome)?.1)
    } else {
        None
    };
    let mut report = RatioReport {
        lengths: g.lengths().to_vec(),
        originator: o,
        d: g.originator_distance(o)?,
        t_simple,
        t_scycle,
        t_acycle,
        t_palindrome,
        lb: lower_bound(g, o)?.combined,
        predicted: predicted_time(g, o)?,
        t_exact: None,
        exact_method: None,
        nodes_expanded: None,
        t_subset: None,
    };
    let Some(opts) = exact else {
        return Ok(report);
    };
    let wrap = |source| BenchError::Exact {
        instance: format!("{g} from {o}"),
        source,
    };
    let fits_subset = g.n() <= opts.subset.max_vertices;
    let primary = if g.k() <= opts.structured.max_cycles {
        Some(exact_structured(g, o, opts.structured).map_err(wrap)?)
    } else if fits_subset {
        Some(exact_subset(g, o, opts.subset).map_err(wrap)?)
    } else {
        None
    };
    if let Some(r) = primary {
        report.t_exact = Some(r.time);
        report.exact_method = Some(r.method);
        report.nodes_expanded = Some(r.nodes_expanded);
        if opts.cross_check && fits_subset && r.method != ExactMethod::SubsetDp {
            report.t_subset = Some(exact_subset(g, o, opts.subset).map_err(wrap)?.time);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Sweeps

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginatorSet {
    Center,
    Cycles,
    All,
}

impl FromStr for OriginatorSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "center" => Ok(OriginatorSet::Center),
            "cycles" => Ok(OriginatorSet::Cycles),
            "all" => Ok(OriginatorSet::All),
            _ => Err(format!("unknown originator set `{s}` (center, cycles or all)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub l_min: usize,
    pub l_max: usize,
    pub originators: OriginatorSet,
    pub exact: Option<ExactOptions>,
}

/// All non-increasing length vectors with `k` entries in `[l_min, l_max]`, in
/// lexicographically decreasing order.
pub fn length_vectors(k: usize, l_min: usize, l_max: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, l_min: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for l in (l_min..=cap).rev() {
            cur.push(l);
            go(k, l_min, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 && l_min <= l_max {
        go(k, l_min.max(2), l_max, &mut Vec::new(), &mut out);
    }
    out
}

/// Instances of a sweep in emission order.
pub fn sweep_instances(cfg: &SweepConfig) -> Vec<(KCycleGraph, Originator)> {
    let mut out = Vec::new();
    for k in cfg.k_min.max(1)..=cfg.k_max {
        for lengths in length_vectors(k, cfg.l_min, cfg.l_max) {
            let g = KCycleGraph::new(&lengths).expect("generated lengths are legal");
            if cfg.originators != OriginatorSet::Cycles {
                out.push((g.clone(), Originator::Center));
            }
            if cfg.originators != OriginatorSet::Center {
                for o in g.originator_classes() {
                    out.push((g.clone(), o));
                }
            }
        }
    }
    out
}

pub const CSV_HEADER: [&str; 13] = [
    "k",
    "lengths",
    "originator",
    "d",
    "t_simple",
    "t_scycle",
    "t_acycle",
    "lb",
    "t_exact",
    "ratio_exact",
    "ratio_lb",
    "exact_method",
    "nodes_expanded",
];

fn decimal(r: Ratio<u32>) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

fn csv_record(r: &RatioReport) -> Vec<String> {
    let opt = |x: Option<String>| x.unwrap_or_default();
    let method = r.exact_method.map(|m| {
        if r.t_subset.is_some() {
            format!("{}+subset", m.name())
        } else {
            m.name().to_string()
        }
    });
    vec![
        r.lengths.len().to_string(),
        r.lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(";"),
        r.originator.to_string(),
        r.d.to_string(),
        r.t_simple.to_string(),
        r.t_scycle.to_string(),
        r.t_acycle.to_string(),
        r.lb.to_string(),
        opt(r.t_exact.map(|t| t.to_string())),
        opt(r.ratio_exact().map(decimal)),
        decimal(r.ratio_lb()),
        opt(method),
        opt(r.nodes_expanded.map(|n| n.to_string())),
    ]
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: usize,
    pub solved: usize,
    /// Largest `t_simple / t_exact` with the row that achieves it.
    pub max_ratio: Option<(Ratio<u32>, String)>,
    pub max_ratio_lb: Option<(Ratio<u32>, String)>,
    pub breaches: Vec<String>,
    /// Rows whose optimum beats the optimum from the center of the same graph.
    pub center_dominance_violations: Vec<String>,
}

impl SweepSummary {
    pub fn from_rows(rows: &[RatioReport]) -> Self {
        let mut s = SweepSummary {
            rows: rows.len(),
            ..Default::default()
        };
        let mut center_opt: HashMap<&[usize], u32> = HashMap::new();
        for r in rows {
            if let (Originator::Center, Some(t)) = (r.originator, r.t_exact) {
                center_opt.insert(&r.lengths, t);
            }
        }
        for r in rows {
            s.breaches.extend(r.breaches());
            if let Some(ratio) = r.ratio_exact() {
                s.solved += 1;
                if s.max_ratio.as_ref().is_none_or(|(m, _)| ratio > *m) {
                    s.max_ratio = Some((ratio, r.describe()));
                }
            }
            let lb = r.ratio_lb();
            if s.max_ratio_lb.as_ref().is_none_or(|(m, _)| lb > *m) {
                s.max_ratio_lb = Some((lb, r.describe()));
            }
            if let (Some(t), Some(&tc)) = (r.t_exact, center_opt.get(r.lengths.as_slice())) {
                if t < tc {
                    s.center_dominance_violations
                        .push(format!("{}: optimum {t} below center optimum {tc}", r.describe()));
                }
            }
        }
        s
    }

    pub fn footer_lines(&self) -> Vec<String> {
        let mut out = vec![format!("# rows: {}, solved exactly: {}", self.rows, self.solved)];
        if let Some((r, who)) = &self.max_ratio {
            out.push(format!("# max ratio_exact: {} = {} at {who}", r, decimal(*r)));
        }
        if let Some((r, who)) = &self.max_ratio_lb {
            out.push(format!("# max ratio_lb: {} = {} at {who}", r, decimal(*r)));
        }
        out.push(format!("# breaches: {}", self.breaches.len()));
        out.extend(self.breaches.iter().map(|b| format!("# BREACH {b}")));
        out.push(format!(
            "# center dominance violations: {}",
            self.center_dominance_violations.len()
        ));
        out.extend(
            self.center_dominance_violations
                .iter()
                .map(|b| format!("# DOMINANCE {b}")),
        );
        out
    }

    pub fn is_clean(&self) -> bool {
        self.breaches.is_empty()
    }
}

/// Runs the sweep in parallel and writes the CSV in instance order, followed
/// by a `#`-prefixed summary footer. Rows computed before a failing instance
/// are written before the error is returned.
pub fn sweep<W: Write>(cfg: &SweepConfig, out: W) -> Result<SweepSummary, BenchError> {
    let instances = sweep_instances(cfg);
    let results: Vec<Result<RatioReport, BenchError>> =
        instances.par_iter().map(|(g, o)| run(g, *o, cfg.exact)).collect();

    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(CSV_HEADER)?;
    let mut rows = Vec::with_capacity(results.len());
    let mut failure = None;
    for r in results {
        match r {
            Ok(row) => {
                w.write_record(csv_record(&row))?;
                rows.push(row);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    w.flush()?;
    let mut inner = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    if let Some(e) = failure {
        inner.flush()?;
        return Err(e);
    }
    let summary = SweepSummary::from_rows(&rows);
    for line in summary.footer_lines() {
        writeln!(inner, "{line}")?;
    }
    inner.flush()?;
    Ok(summary)
}

// ---------------------------------------------------------------------------
// Tightness

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub k: usize,
    pub l: usize,
    /// `ceil((l + 3k - 2) / 2)`.
    pub t_a: u64,
    /// `ceil((2k + l - 1) / 2)`.
    pub t_opt: u64,
    pub lo: Ratio<u64>,
    pub hi: Ratio<u64>,
    /// Whether `t_a >= 2k`, the regime the formulas describe.
    pub in_regime: bool,
    pub sim_simple: Option<u32>,
    pub sim_palindrome: Option<u32>,
}

impl TightnessRow {
    pub fn new(l: usize, k: usize) -> Self {
        let (l64, k64) = (l as u64, k as u64);
        let t_a = (l64 + 3 * k64 - 2).div_ceil(2);
        TightnessRow {
            k,
            l,
            t_a,
            t_opt: (2 * k64 + l64 - 1).div_ceil(2),
            lo: Ratio::new(l64 + 3 * k64 - 2, l64 + 2 * k64),
            hi: Ratio::new(l64 + 3 * k64 - 1, l64 + 2 * k64 - 1),
            in_regime: t_a >= 2 * k64,
            sim_simple: None,
            sim_palindrome: None,
        }
    }

    /// Formula values that simulation contradicts inside the regime.
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.in_regime {
            return out;
        }
        if let Some(t) = self.sim_simple {
            if t as u64 != self.t_a {
                out.push(format!(
                    "l = {}, k = {}: simple takes {t}, formula {}",
                    self.l, self.k, self.t_a
                ));
            }
        }
        if let Some(t) = self.sim_palindrome {
            if t as u64 != self.t_opt {
                out.push(format!(
                    "l = {}, k = {}: palindrome takes {t}, formula {}",
                    self.l, self.k, self.t_opt
                ));
            }
        }
        out
    }
}

/// Formula table for equal-length instances, cross-checked by simulation for
/// every graph with at most `sim_limit` vertices. With `strict`, any `k`
/// outside the `t_A >= 2k` regime is an error.
pub fn tightness(l: usize, ks: &[usize], strict: bool, sim_limit: usize) -> Result<Vec<TightnessRow>, BenchError> {
    if l < 2 {
        return Err(illegal(format!("tightness needs l >= 2, got {l}")));
    }
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        if k == 0 {
            return Err(illegal("tightness needs k >= 1"));
        }
        let mut row = TightnessRow::new(l, k);
        if strict && !row.in_regime {
            return Err(BenchError::RegimeViolation { l, k, t_a: row.t_a });
        }
        if k * l < sim_limit {
            let g = KCycleGraph::new(&vec![l; k])?;
            let simple = simple_k_cycle(&g, Originator::Center)?;
            let pal = palindrome_schedule(&g)?;
            let check = |name: &str, s: &BroadcastScheme| {
                validate(&g, Originator::Center, s).map_err(|violations| BenchError::InvalidScheme {
                    scheduler: name.to_string(),
                    instance: g.to_string(),
                    violations,
                })
            };
            row.sim_simple = Some(check("simple", &simple)?);
            row.sim_palindrome = Some(check("palindrome", &pal)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        assert_eq!(FamilySpec::Equal { k: 3, l: 4 }.lengths().unwrap(), vec![4, 4, 4]);
        assert_eq!(FamilySpec::Step2 { k: 3, p: 3 }.lengths().unwrap(), vec![9, 7, 5]);
        assert_eq!(FamilySpec::Mixed { k: 4, p: 2 }.lengths().unwrap(), vec![8, 6, 4, 3]);
        assert!(matches!(
            FamilySpec::Step2 { k: 4, p: 2 }.lengths(),
            Err(BenchError::IllegalFamilyParams(_))
        ));
        assert!(FamilySpec::Equal { k: 2, l: 1 }.lengths().is_err());
        let r = FamilySpec::Random {
            k: 6,
            l_max: 9,
            seed: 7,
        };
        let v = r.lengths().unwrap();
        assert_eq!(v, r.lengths().unwrap());
        assert!(v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&l| (2..=9).contains(&l)));
    }

    #[test]
    fn family_parsing() {
        for s in ["equal:3,4", "step2:3,3", "mixed:4,2", "random:5,8,42", "explicit:6,5,2"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
        assert!("equal:3".parse::<FamilySpec>().is_err());
        assert!("cube:3,3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn run_examples() {
        let g = KCycleGraph::new(&[6, 5, 2]).unwrap();
        let r = run(&g, Originator::Center, None).unwrap();
        assert_eq!((r.t_simple, r.lb), (5, 4));
        assert_eq!(r.ratio_lb(), Ratio::new(5, 4));
        let g = KCycleGraph::new(&[9, 8, 4, 2]).unwrap();
        let r = run(&g, Originator::OnCycle { cycle: 2, pos: 2 }, None).unwrap();
        assert_eq!((r.t_simple, r.lb), (8, 7));
        let g = KCycleGraph::new(&[2]).unwrap();
        let r = run(&g, Originator::Center, None).unwrap();
        assert_eq!((r.t_simple, r.lb, r.ratio_lb()), (2, 2, Ratio::from_integer(1)));
    }

    #[test]
    fn length_vector_counts() {
        assert_eq!(length_vectors(2, 2, 2), vec![vec![2, 2]]);
        assert_eq!(length_vectors(2, 2, 4).len(), 6);
        assert!(length_vectors(3, 5, 4).is_empty());
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let cfg = SweepConfig {
            k_min: 3,
            k_max: 2,
            l_min: 2,
            l_max: 5,
            originators: OriginatorSet::Center,
            exact: None,
        };
        let mut buf = Vec::new();
        let s = sweep(&cfg, &mut buf).unwrap();
        assert_eq!(s.rows, 0);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
        assert!(text.lines().skip(1).all(|l| l.starts_with('#')));
    }

    #[test]
    fn single_instance_sweep() {
        let cfg = SweepConfig {
            k_min: 2,
            k_max: 2,
            l_min: 2,
            l_max: 2,
            originators: OriginatorSet::Center,
            exact: Some(ExactOptions::default()),
        };
        let mut buf = Vec::new();
        let s = sweep(&cfg, &mut buf).unwrap();
        assert_eq!(s.rows, 1);
        let text = String::from_utf8(buf).unwrap();
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[1], "2;2");
        assert_eq!((row[4], row[8]), ("3", "3"));
    }

    #[test]
    fn tightness_examples() {
        // (l + 3k - 2) / (l + 2k) with l = 2, k = 200 is 600/402
        let r = TightnessRow::new(2, 200);
        assert_eq!((r.lo, r.hi), (Ratio::new(600, 402), Ratio::new(601, 401)));
        assert!(r.hi < Ratio::new(3, 2) && !r.in_regime);
        let r = TightnessRow::new(4, 3);
        assert_eq!((r.t_a, r.t_opt, r.in_regime), (6, 5, true));
        let r = TightnessRow::new(2, 2);
        assert_eq!((r.t_a, r.t_opt), (3, 3));
        assert!(matches!(
            tightness(2, &[10], true, 1000),
            Err(BenchError::RegimeViolation { .. })
        ));
        let rows = tightness(4, &[3], true, 1000).unwrap();
        assert_eq!((rows[0].sim_simple, rows[0].sim_palindrome), (Some(6), Some(5)));
    }
}
