use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use piradical::catalog::{alternating, catalog_up_to, pgammal2_9, symmetric};
use piradical::factored::{is_prime, primes_up_to};
use piradical::genwidth::{alpha, baer_suzuki_check, beta, bs_membership, bs_width, AlmostSimpleContext};
use piradical::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use piradical::perm::Permutation;
use piradical::primeset::PrimeSet;
use piradical::search::{SearchBudget, WidthResult, WidthValue};
use piradical::structure::{is_pi_group, normal_subgroups, pi_radical};

use crate::error::{CliError, Status};
use crate::report::{ExperimentReport, Record};
use crate::resolve::Resolved;

/// Largest order for which `radical` runs the normal-subgroup cross-check.
pub const ORACLE_CAP: u128 = 10_000;

/// Largest `r` for which `prop1` enumerates every subset.
pub const EXHAUSTIVE_R: u64 = 7;

/// Direct-generation cross-checks per width in `prop1`.
const CROSS_CHECKS_PER_M: usize = 400;

/// Subsets drawn per width in sampled `prop1` runs.
const SAMPLES_PER_M: usize = 2000;

fn join(perms: &[Permutation]) -> String {
    perms.iter().map(Permutation::to_string).join(";")
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

fn width_status(res: &WidthResult) -> Status {
    match res.value {
        WidthValue::Unknown { .. } => Status::Budget,
        _ if !res.exhaustive => Status::Budget,
        _ => Status::Ok,
    }
}

fn width_fields(mut record: Record, res: &WidthResult) -> Record {
    let (status, bound) = match res.value {
        WidthValue::Exact(_) => ("exact", None),
        WidthValue::Unknown { no_success_up_to } => ("unknown", Some(no_success_up_to)),
        WidthValue::Unreachable => ("unreachable", None),
    };
    record = record
        .with("value", opt(res.value.exact()))
        .with("status", status)
        .with("no_success_up_to", opt(bound))
        .with("witness", join(&res.witness))
        .with("tuple", join(&res.tuple()))
        .with("certificate_order", opt(res.certificate.as_ref().map(ToString::to_string)))
        .with("exhaustive", res.exhaustive)
        .with("states_visited", res.states_visited);
    record
}

pub fn radical(target: &Resolved, pi: &PrimeSet, report: &mut ExperimentReport) -> Result<Status, CliError> {
    let g = &target.group;
    let radical = pi_radical(g, pi)?;
    let oracle = if g.order().at_most(ORACLE_CAP) {
        let best = normal_subgroups(g, DEFAULT_ENUMERATION_CAP)?
            .into_iter()
            .filter(|n| is_pi_group(n, pi))
            .max_by_key(|n| n.order().to_u128())
            .expect("the trivial subgroup is a π-group");
        if best.same_as(&radical) {
            "agree"
        } else {
            "disagree"
        }
    } else {
        "skipped"
    };
    report.results.push(
        Record::new()
            .with("group", target.label.as_str())
            .with("pi", pi.to_string())
            .with("order", radical.order().to_string())
            .with("generators", join(radical.generators()))
            .with("oracle", oracle)
            .with("exhaustive", true),
    );
    Ok(if oracle == "disagree" { Status::Violation } else { Status::Ok })
}

pub fn beta_cmd(
    target: &Resolved,
    ctx: &AlmostSimpleContext,
    r: u64,
    budget: &SearchBudget,
    report: &mut ExperimentReport,
) -> Result<Status, CliError> {
    let res = beta(ctx, r, budget)?;
    let record = Record::new()
        .with("group", target.label.as_str())
        .with("x", ctx.x().to_string())
        .with("r", r);
    report.results.push(width_fields(record, &res));
    Ok(width_status(&res))
}

pub fn alpha_cmd(
    target: &Resolved,
    ctx: &AlmostSimpleContext,
    budget: &SearchBudget,
    report: &mut ExperimentReport,
) -> Result<Status, CliError> {
    let res = alpha(ctx, budget)?;
    let record = Record::new()
        .with("group", target.label.as_str())
        .with("x", ctx.x().to_string())
        .with("ambient_order", ctx.ambient().order().to_string());
    report.results.push(width_fields(record, &res));
    Ok(width_status(&res))
}

pub fn bs_check(
    target: &Resolved,
    pi: &PrimeSet,
    m: usize,
    minimal: bool,
    budget: &SearchBudget,
    report: &mut ExperimentReport,
) -> Result<Status, CliError> {
    let verdict = bs_membership(&target.group, pi, m, budget)?;
    report.summary = Record::new()
        .with("holds", verdict.holds)
        .with("radical_order", verdict.radical_order.to_string())
        .with("violating_element", opt(verdict.violating_element.as_ref().map(ToString::to_string)))
        .with("violation_tuple", opt(verdict.witness_tuple.as_deref().map(join)));
    if minimal {
        let width = bs_width(&target.group, pi, budget)?;
        report.summary = std::mem::take(&mut report.summary)
            .with("minimal_m", width.min_m)
            .with("minimal_m_exhaustive", width.exhaustive);
    }
    for c in &verdict.classes {
        report.results.push(
            Record::new()
                .with("group", target.label.as_str())
                .with("pi", pi.to_string())
                .with("m", m)
                .with("representative", c.representative.to_string())
                .with("class_size", c.class_size)
                .with("in_radical", c.in_radical)
                .with("non_pi_width", opt(c.non_pi_width))
                .with("witness", join(&c.witness_tuple))
                .with("exhaustive", c.exhaustive),
        );
    }
    let exhaustive = verdict.classes.iter().all(|c| c.exhaustive);
    Ok(if exhaustive { Status::Ok } else { Status::Budget })
}

/// Components of the graph on `0..r` with the transpositions as edges,
/// through union-find.
fn largest_component(pairs: &[(usize, usize)], r: usize) -> usize {
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &(a, b) in pairs {
        let (x, y) = (find(&mut parent, a), find(&mut parent, b));
        parent[x] = y;
    }
    let mut sizes = vec![0usize; r];
    for p in 0..r {
        let root = find(&mut parent, p);
        sizes[root] += 1;
    }
    sizes.into_iter().max().unwrap_or(0)
}

fn transposition(r: usize, (a, b): (usize, usize)) -> Permutation {
    Permutation::from_cycles(r, &[&[a, b]]).expect("distinct points")
}

/// Sweeps subsets of transpositions of `S_r` for `π` the primes below `r`.
pub fn prop1(r: u64, seed: u64, report: &mut ExperimentReport) -> Result<Status, CliError> {
    if r < 3 || !is_prime(r) {
        return Err(CliError::Input(format!("r = {r} must be an odd prime")));
    }
    let pi = PrimeSet::finite(primes_up_to(r - 1))?;
    let n = r as usize;
    let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let exhaustive = r <= EXHAUSTIVE_R;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut largest_all_pi = 0;
    let mut violation = false;

    for m in 1..n {
        let subsets: Vec<Vec<(usize, usize)>> = if exhaustive {
            edges.iter().copied().combinations(m).collect()
        } else {
            (0..SAMPLES_PER_M)
                .map(|_| sample(&mut rng, edges.len(), m).into_iter().map(|i| edges[i]).collect())
                .collect()
        };
        let mut non_pi_example: Option<&Vec<(usize, usize)>> = None;
        let mut non_pi_count = 0usize;
        for s in &subsets {
            // the generated group is the product of the symmetric groups on
            // the components, a π-group iff no component has r points
            if largest_component(s, n) >= n {
                non_pi_count += 1;
                non_pi_example.get_or_insert(s);
            }
        }
        let stride = subsets.len().div_ceil(CROSS_CHECKS_PER_M).max(1);
        let mut checked = 0usize;
        let mut mismatches = 0usize;
        let picks = subsets.iter().step_by(stride).chain(non_pi_example);
        for s in picks {
            let gens: Vec<Permutation> = s.iter().map(|&e| transposition(n, e)).collect();
            let h = PermGroup::generated_by(n, &gens)?;
            let graph_says_pi = largest_component(s, n) < n;
            if is_pi_group(&h, &pi) != graph_says_pi {
                mismatches += 1;
            }
            checked += 1;
        }
        let all_pi = non_pi_count == 0;
        if all_pi && largest_all_pi == m - 1 {
            largest_all_pi = m;
        }
        if mismatches > 0 || (m + 2 <= n && !all_pi) || (m == n - 1 && all_pi && exhaustive) {
            violation = true;
        }
        report.results.push(
            Record::new()
                .with("r", r)
                .with("pi", pi.to_string())
                .with("m", m)
                .with("subsets", subsets.len())
                .with("non_pi_subsets", non_pi_count)
                .with("all_pi", all_pi)
                .with(
                    "non_pi_example",
                    opt(non_pi_example.map(|s| s.iter().map(|&e| transposition(n, e).to_string()).join(";"))),
                )
                .with("cross_checked", checked)
                .with("cross_check_mismatches", mismatches)
                .with("exhaustive", exhaustive),
        );
    }

    let radical_order = if symmetric(n).order().at_most(DEFAULT_ENUMERATION_CAP as u128) {
        Some(pi_radical(&symmetric(n), &pi)?.order().to_string())
    } else {
        None
    };
    if radical_order.as_deref().is_some_and(|o| o != "1") {
        violation = true;
    }
    report.summary = Record::new()
        .with("pi", pi.to_string())
        .with("largest_m_all_pi", largest_all_pi)
        .with("radical_order", opt(radical_order))
        .with("bs_lower_bound", largest_all_pi + 1)
        .with("exhaustive", exhaustive);
    Ok(if violation {
        Status::Violation
    } else if !exhaustive {
        Status::Budget
    } else {
        Status::Ok
    })
}

/// One representative per class of elements of prime order in `S_n`:
/// `k` disjoint `p`-cycles on the first `kp` points.
pub fn prime_order_representatives(n: usize) -> Vec<Permutation> {
    let mut reps = Vec::new();
    for p in primes_up_to(n as u64) {
        let p = p as usize;
        for k in 1..=n / p {
            let cycles: Vec<Vec<usize>> = (0..k).map(|i| (i * p..(i + 1) * p).collect()).collect();
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            reps.push(Permutation::from_cycles(n, &refs).expect("disjoint cycles"));
        }
    }
    reps
}

pub fn prop4_table(
    n_min: usize,
    n_max: usize,
    r_list: Option<&[u64]>,
    budget: &SearchBudget,
    report: &mut ExperimentReport,
) -> Result<Status, CliError> {
    if n_min < 5 || n_max < n_min {
        return Err(CliError::Input("need 5 ≤ n-min ≤ n-max".into()));
    }
    if let Some(bad) = r_list.and_then(|rs| rs.iter().find(|&&r| !is_prime(r))) {
        return Err(CliError::Input(format!("{bad} is not prime")));
    }
    let mut status = Status::Ok;
    let pg = if n_min <= 6 && n_max >= 6 { Some(pgammal2_9()?) } else { None };
    for n in n_min..=n_max {
        let rs: Vec<u64> = primes_up_to(n as u64)
            .into_iter()
            .filter(|r| r_list.is_none_or(|l| l.contains(r)))
            .collect();
        let mut cells: Vec<(AlmostSimpleContext, &str)> = prime_order_representatives(n)
            .into_iter()
            .map(|x| {
                let kind = if x.is_transposition() { "transposition" } else { "other" };
                AlmostSimpleContext::new(alternating(n), x).map(|c| (c, kind))
            })
            .collect::<Result<_, _>>()?;
        if n == 6 {
            let pg = pg.as_ref().expect("built for n = 6");
            cells.push((
                AlmostSimpleContext::new(pg.socle.clone(), pg.outer_involution().clone())?,
                "outer-involution",
            ));
        }
        for (ctx, kind) in &cells {
            for &r in &rs {
                let res = beta(ctx, r, budget)?;
                let bound = r as usize - 1;
                let (claim, holds) = match (*kind, r) {
                    ("transposition", _) => ("= r-1", res.value.exact().map(|v| v == bound)),
                    ("outer-involution", 3) => ("= 3", res.value.exact().map(|v| v == 3)),
                    _ => ("<= r-1", res.value.exact().map(|v| v <= bound)),
                };
                let check = match (holds, res.exhaustive) {
                    (Some(true), true) => "pass",
                    (Some(false), true) => "fail",
                    _ => "unknown",
                };
                status = status.max(match check {
                    "pass" => Status::Ok,
                    "fail" => Status::Violation,
                    _ => Status::Budget,
                });
                let record = Record::new()
                    .with("n", n)
                    .with("x", ctx.x().to_string())
                    .with("kind", *kind)
                    .with("r", r)
                    .with("claim", claim)
                    .with("check", check);
                report.results.push(width_fields(record, &res));
            }
        }
    }
    Ok(status)
}

fn verify_rows(label: &str, group: &PermGroup, p: u64, report: &mut ExperimentReport) -> Result<bool, CliError> {
    let outcome = baer_suzuki_check(group, p)?;
    for c in &outcome.classes {
        report.results.push(
            Record::new()
                .with("group", label)
                .with("p", p)
                .with("radical_order", outcome.radical_order.to_string())
                .with("representative", c.representative.to_string())
                .with("in_radical", c.in_radical)
                .with("all_pairs_p_groups", c.all_pairs_p_groups)
                .with("agree", c.in_radical == c.all_pairs_p_groups),
        );
    }
    Ok(outcome.holds)
}

pub fn verify_bs(target: &Resolved, p: u64, report: &mut ExperimentReport) -> Result<Status, CliError> {
    let holds = verify_rows(&target.label, &target.group, p, report)?;
    report.summary = Record::new().with("holds", holds);
    Ok(if holds { Status::Ok } else { Status::Violation })
}

pub fn verify_bs_sweep(order_cap: u128, report: &mut ExperimentReport) -> Result<Status, CliError> {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for entry in catalog_up_to(order_cap) {
        for p in entry.group.order().primes() {
            checks += 1;
            if !verify_rows(&entry.name, &entry.group, p, report)? {
                failures += 1;
            }
        }
    }
    report.summary = Record::new()
        .with("group_prime_pairs", checks)
        .with("failures", failures)
        .with("holds", failures == 0);
    Ok(if failures == 0 { Status::Ok } else { Status::Violation })
}
