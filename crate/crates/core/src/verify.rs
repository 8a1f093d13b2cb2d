//! Verification sweeps: every check compares an implementation route with
//! an independent one (oracle vs closed form, Buchberger series vs closed
//! series, primes vs Hilbert dimension, ...). Used by `bei verify` and by
//! the acceptance test target.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use crate::bounds::reg_bounds;
use crate::closedforms::{betti_g3, betti_t3, closed_betti, recursion_step};
use crate::corpus::{default_corpus, induced_pairs, InducedPair, PAIR_COUNT};
use crate::error::{Error, Result};
use crate::graphs::{FamilySpec, Graph};
use crate::hilbert::{closed_hilbert, hilbert_from_gb, upoly, HilbertSeries};
use crate::koszul::{betti_table, OracleOptions, DEFAULT_BUDGET};
use crate::polyring::{edge_ideal_basis, ALT_PRIME, DEFAULT_PRIME};
use crate::primes::{krull_dim, minimal_primes};
use crate::table::BettiTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Skipped,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Skipped => "SKIPPED",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub criterion: u8,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(criterion: u8, subject: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            criterion,
            subject: subject.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    /// Turns an oracle error into a skipped (budget) or failed check.
    fn from_error(criterion: u8, subject: impl Into<String>, e: &Error) -> Self {
        let status = match e {
            Error::OutOfBudget { .. } => Status::Skipped,
            _ => Status::Fail,
        };
        Check {
            criterion,
            subject: subject.into(),
            status,
            detail: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "known tables and series: T3(2,1,1) and the triangle"),
    (2, "cycles: oracle table, series, reg and dim"),
    (3, "T3/G3 sweep: oracle table, series, reg, pd and dim"),
    (4, "Euler characteristic identity"),
    (5, "beta_{2,1} = 2 x #triangles"),
    (6, "pendant-edge recursion of T3/G3 tables"),
    (7, "pendant-edge transform of Hilbert series"),
    (8, "Krull dimension and free vertices"),
    (9, "induced-subgraph monotonicity and regularity bounds"),
    (10, "agreement over two primes"),
];

impl Report {
    /// Worst status among the checks of `criterion`, `None` if it has none.
    pub fn criterion_status(&self, criterion: u8) -> Option<Status> {
        self.checks.iter().filter(|c| c.criterion == criterion).map(|c| c.status).max()
    }

    pub fn count(&self, criterion: u8, status: Status) -> usize {
        self.checks.iter().filter(|c| c.criterion == criterion && c.status == status).count()
    }

    pub fn worst(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 all passed, 1 some check failed, 3 some check ran out of budget.
    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skipped => 3,
        }
    }

    /// One line per criterion that has checks.
    pub fn summary(&self) -> Vec<String> {
        CRITERIA
            .iter()
            .filter_map(|&(c, name)| {
                let status = self.criterion_status(c)?;
                let total = self.checks.iter().filter(|k| k.criterion == c).count();
                Some(format!(
                    "{status} criterion {c}: {name} ({} of {total} checks passed)",
                    self.count(c, Status::Pass)
                ))
            })
            .collect()
    }

    pub fn ledger(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<7} [{}] {}: {}\n", c.status.to_string(), c.criterion, c.subject, c.detail));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "checks": self.checks.iter().map(|c| json!({
                "criterion": c.criterion,
                "subject": c.subject,
                "status": c.status.to_string(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "criteria": CRITERIA.iter().filter_map(|&(c, _)| {
                self.criterion_status(c).map(|s| json!({"criterion": c, "status": s.to_string()}))
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Family members swept by criteria 2 and 3.
    pub members: Vec<FamilySpec>,
    /// The two characteristics compared by criterion 10; the first is
    /// used everywhere else.
    pub primes: [u32; 2],
    pub budget: u128,
    pub seed: u64,
    /// Check the known T3(2,1,1) and triangle results (criterion 1).
    pub examples: bool,
    /// Run the random-corpus criteria (4 on the corpus, 5, 7, 8, 9).
    pub corpus: bool,
    /// Run the recursion identities (criterion 6).
    pub recursion: bool,
}

impl VerifyOptions {
    /// Cycles on 3 to 5 vertices and every T3/G3 member on at most 6.
    pub fn acceptance(seed: u64) -> Self {
        let mut members = sweep_members(&["cycle"], 3, 5).expect("cycle is a sweep family");
        members.extend(sweep_members(&["t3", "g3"], 3, 6).expect("t3 and g3 are sweep families"));
        VerifyOptions {
            members,
            primes: [DEFAULT_PRIME, ALT_PRIME],
            budget: DEFAULT_BUDGET,
            seed,
            examples: true,
            corpus: true,
            recursion: true,
        }
    }
}

/// Members of the named families with `lo <= n <= hi`, in family order
/// then by `n`.
pub fn sweep_members(families: &[&str], lo: usize, hi: usize) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for &kind in families {
        match kind {
            "cycle" => out.extend((lo.max(3)..=hi).map(|n| FamilySpec::Cycle { n })),
            "t3" | "g3" => {
                for n in lo..=hi {
                    out.extend(crate::graphs::family_members(kind, n));
                }
            }
            other => {
                return Err(Error::Invalid(format!(
                    "verify sweeps cycle, t3 and g3; got {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(5);

/// Everything computed once per graph.
struct Computed {
    tables: Vec<Result<BettiTable>>,
    series: HilbertSeries,
    elapsed: Duration,
}

fn compute(g: &Graph, primes: &[u32], budget: u128) -> Result<Computed> {
    let start = Instant::now();
    let opts = OracleOptions {
        budget,
        ..OracleOptions::default()
    };
    let series = hilbert_from_gb(&edge_ideal_basis(g, primes[0])?);
    let tables = primes.iter().map(|&p| betti_table(g, p, &opts)).collect();
    Ok(Computed {
        tables,
        series,
        elapsed: start.elapsed(),
    })
}

fn euler_check(criterion: u8, subject: &str, table: &BettiTable, series: &HilbertSeries) -> Check {
    let lhs = table.euler_polynomial();
    let rhs = upoly::trim(series.numerator_over(table.n_vars() as u32));
    Check::new(
        criterion,
        subject,
        lhs == rhs,
        if lhs == rhs {
            "sum of (-1)^i b_ij t^(i+j) equals the Hilbert numerator".to_string()
        } else {
            format!("table gives {lhs:?}, series gives {rhs:?}")
        },
    )
}

fn diff_text(a: &BettiTable, b: &BettiTable) -> String {
    a.diff(b)
        .iter()
        .map(|(i, j, x, y)| format!("({i},{j}): {x} vs {y}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn table_check(criterion: u8, subject: &str, what: &str, got: &BettiTable, want: &BettiTable) -> Check {
    let ok = got == want;
    Check::new(
        criterion,
        subject,
        ok,
        if ok { format!("oracle table equals {what}") } else { format!("oracle vs {what}: {}", diff_text(got, want)) },
    )
}

fn two_prime_check(subject: &str, primes: &[u32; 2], tables: &[Result<BettiTable>]) -> Check {
    match (&tables[0], &tables[1]) {
        (Ok(a), Ok(b)) => Check::new(
            10,
            subject,
            a == b,
            if a == b {
                format!("identical over GF({}) and GF({})", primes[0], primes[1])
            } else {
                diff_text(a, b)
            },
        ),
        (Err(e), _) | (_, Err(e)) => Check::from_error(10, subject, e),
    }
}

fn examples(opts: &VerifyOptions) -> Result<Vec<Check>> {
    // T3(2,1,1) and the triangle (= G3(1,1,1)), tables and series known by hand
    let cases = [
        (
            FamilySpec::T3 { r: 2, s: 1, t: 1 },
            BettiTable::from_entries(8, [(0, 0, 1), (1, 1, 3), (2, 2, 4), (3, 2, 2)]),
            HilbertSeries::from_coefficients(&[1, 2, 0, -2], 6),
        ),
        (
            FamilySpec::G3 { r: 1, s: 1, t: 1 },
            BettiTable::from_entries(6, [(0, 0, 1), (1, 1, 3), (2, 1, 2)]),
            HilbertSeries::from_coefficients(&[1, 2], 4),
        ),
    ];
    let mut out = Vec::new();
    for (spec, table, series) in cases {
        let subject = spec.to_string();
        let c = compute(&spec.build()?, &opts.primes, opts.budget)?;
        match &c.tables[0] {
            Ok(t) => {
                out.push(table_check(1, &subject, "the known table", t, &table));
                out.push(euler_check(4, &subject, t, &c.series));
            }
            Err(e) => out.push(Check::from_error(1, &subject, e)),
        }
        let reduced = c.series.reduce();
        out.push(Check::new(1, &subject, reduced == series, format!("reduced series {reduced}, expected {series}")));
        out.push(Check::new(
            1,
            &subject,
            c.elapsed < EXAMPLE_TIME_LIMIT,
            if c.elapsed < EXAMPLE_TIME_LIMIT { "ran within 5 s" } else { "took longer than 5 s" },
        ));
        out.push(two_prime_check(&subject, &opts.primes, &c.tables));
    }
    Ok(out)
}

fn member_checks(spec: FamilySpec, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let g = spec.build()?;
    let n = g.n();
    let subject = spec.to_string();
    let criterion = if matches!(spec, FamilySpec::Cycle { .. }) { 2 } else { 3 };
    let c = compute(&g, &opts.primes, opts.budget)?;
    let mut out = Vec::new();
    match &c.tables[0] {
        Ok(t) => {
            out.push(table_check(criterion, &subject, "the closed form", t, &closed_betti(&spec)?));
            let reg = t.regularity();
            out.push(Check::new(criterion, &subject, reg == n - 2, format!("reg = {reg}, expected {}", n - 2)));
            if criterion == 3 {
                let pd = t.projective_dimension();
                out.push(Check::new(criterion, &subject, pd == n - 1, format!("pd = {pd}, expected {}", n - 1)));
            }
            out.push(euler_check(4, &subject, t, &c.series));
        }
        Err(e) => out.push(Check::from_error(criterion, &subject, e)),
    }
    let reduced = c.series.reduce();
    let closed = closed_hilbert(&spec)?.reduce();
    out.push(Check::new(
        criterion,
        &subject,
        reduced == closed,
        format!("Buchberger series {reduced}, closed series {closed}"),
    ));
    let expected_dim = match spec {
        FamilySpec::T3 { .. } => n + 2,
        _ => n + 1,
    };
    let dim = krull_dim(&g)?;
    let ok = dim == expected_dim && reduced.denom_power as usize == expected_dim;
    out.push(Check::new(
        criterion,
        &subject,
        ok,
        format!("dim = {dim} from primes, {} from the series, expected {expected_dim}", reduced.denom_power),
    ));
    out.push(two_prime_check(&subject, &opts.primes, &c.tables));
    Ok(out)
}

fn recursion_checks() -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut out = Vec::new();
    for (name, base, closed, n0) in [
        ("T3", betti_t3(4)?, betti_t3 as fn(usize) -> Result<BettiTable>, 4),
        ("G3", betti_g3(3)?, betti_g3, 3),
    ] {
        let mut t = base;
        let mut bad = Vec::new();
        for k in 1..=8 {
            t = recursion_step(&t)?;
            if t != closed(n0 + k)? {
                bad.push(k);
            }
        }
        out.push(Check::new(
            6,
            format!("{name} from n = {n0}"),
            bad.is_empty(),
            if bad.is_empty() { "k = 1..8 all match".to_string() } else { format!("mismatch at k = {bad:?}") },
        ));
    }
    let fast = start.elapsed() < Duration::from_secs(1);
    out.push(Check::new(6, "timing", fast, if fast { "under 1 s" } else { "took 1 s or more" }));
    Ok(out)
}

fn corpus_checks(index: usize, g: &Graph, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let subject = format!("corpus #{index} (n = {}, edges {:?})", g.n(), g.edges());
    let c = compute(g, &opts.primes[..1], opts.budget)?;
    let mut out = Vec::new();
    match &c.tables[0] {
        Ok(t) => {
            out.push(euler_check(4, &subject, t, &c.series));
            let b21 = t.get(2, 1);
            let tri = g.triangle_count() as u128;
            out.push(Check::new(5, &subject, b21 == 2 * tri, format!("b_2,1 = {b21}, triangles = {tri}")));
        }
        Err(e) => {
            out.push(Check::from_error(4, &subject, e));
            out.push(Check::from_error(5, &subject, e));
        }
    }
    for v in g.free_vertices().iter() {
        let bigger = g.attach_pendant(v)?;
        let direct = hilbert_from_gb(&edge_ideal_basis(&bigger, opts.primes[0])?);
        let ok = direct.same_series(&c.series.attach_edge_transform());
        out.push(Check::new(
            7,
            format!("{subject}, pendant at {v}"),
            ok,
            format!("Buchberger series {}", direct.reduce()),
        ));
    }
    let dim = krull_dim(g)?;
    let hdim = c.series.reduce().denom_power as usize;
    out.push(Check::new(8, &subject, dim == hdim, format!("dim = {dim} from primes, {hdim} from the series")));
    let free = g.free_vertices();
    let clash = minimal_primes(g)?.iter().find(|p| !p.cut_set.intersection(free).is_empty()).map(|p| p.cut_set);
    out.push(Check::new(
        8,
        &subject,
        clash.is_none(),
        match clash {
            None => format!("free vertices {free} avoid every cut-set"),
            Some(t) => format!("cut-set {t} meets free vertices {free}"),
        },
    ));
    Ok(out)
}

fn pair_checks(index: usize, pair: &InducedPair, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let g = &pair.graph;
    let h = pair.induced();
    let subject = format!("pair #{index} (n = {}, edges {:?}, W = {})", g.n(), g.edges(), pair.subset);
    let oracle = OracleOptions {
        budget: opts.budget,
        ..OracleOptions::default()
    };
    let (tg, th) = match (betti_table(g, opts.primes[0], &oracle), betti_table(&h, opts.primes[0], &oracle)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(vec![Check::from_error(9, &subject, &e)]),
    };
    let mut out = vec![Check::new(
        9,
        &subject,
        tg.dominates(&th),
        if tg.dominates(&th) { "b(G) >= b(G_W) entrywise".to_string() } else { diff_text(&tg, &th) },
    )];
    for (name, graph, table) in [("G", g, &tg), ("G_W", &h, &th)] {
        let b = reg_bounds(graph);
        let reg = table.regularity();
        out.push(Check::new(
            9,
            format!("{subject}, {name}"),
            b.lower <= reg && reg <= b.upper,
            format!("{} <= reg = {reg} <= {}", b.lower, b.upper),
        ));
    }
    Ok(out)
}

/// Runs the selected criteria. Work is spread over the global rayon pool;
/// the order of checks does not depend on the pool size.
pub fn run(opts: &VerifyOptions) -> Result<Report> {
    let mut checks = Vec::new();
    if opts.examples {
        checks.extend(examples(opts)?);
    }
    let members: Vec<Result<Vec<Check>>> = opts.members.par_iter().map(|&s| member_checks(s, opts)).collect();
    for m in members {
        checks.extend(m?);
    }
    if opts.recursion {
        checks.extend(recursion_checks()?);
    }
    if opts.corpus {
        let corpus = default_corpus(opts.seed);
        let per_graph: Vec<Result<Vec<Check>>> =
            corpus.par_iter().enumerate().map(|(k, g)| corpus_checks(k, g, opts)).collect();
        for m in per_graph {
            checks.extend(m?);
        }
        let pairs = induced_pairs(opts.seed, PAIR_COUNT);
        let per_pair: Vec<Result<Vec<Check>>> =
            pairs.par_iter().enumerate().map(|(k, p)| pair_checks(k, p, opts)).collect();
        for m in per_pair {
            checks.extend(m?);
        }
    }
    checks.sort_by_key(|c| c.criterion);
    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(members: Vec<FamilySpec>) -> VerifyOptions {
        VerifyOptions {
            members,
            examples: false,
            corpus: false,
            recursion: false,
            ..VerifyOptions::acceptance(0)
        }
    }

    #[test]
    fn members_of_sweeps() {
        let m = sweep_members(&["cycle", "g3"], 3, 4).unwrap();
        let names: Vec<String> = m.iter().map(ToString::to_string).collect();
        assert_eq!(names[..2], ["cycle(3)", "cycle(4)"]);
        assert_eq!(names.len(), 2 + 1 + 3);
        assert!(sweep_members(&["line"], 3, 4).is_err());
    }

    #[test]
    fn small_sweep_passes() {
        let report = run(&quick(vec![FamilySpec::Cycle { n: 4 }, FamilySpec::G3 { r: 2, s: 1, t: 1 }])).unwrap();
        assert_eq!(report.worst(), Status::Pass, "{}", report.ledger());
        assert_eq!(report.criterion_status(2), Some(Status::Pass));
        assert_eq!(report.criterion_status(3), Some(Status::Pass));
        assert_eq!(report.criterion_status(1), None);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn budget_overrun_is_skipped_not_failed() {
        let opts = VerifyOptions {
            budget: 10,
            ..quick(vec![FamilySpec::Cycle { n: 4 }])
        };
        let report = run(&opts).unwrap();
        assert_eq!(report.criterion_status(2), Some(Status::Skipped));
        assert_eq!(report.exit_code(), 3);
    }

    #[test]
    fn recursion_identities() {
        let checks = recursion_checks().unwrap();
        assert!(checks.iter().all(|c| c.status == Status::Pass));
    }
}
