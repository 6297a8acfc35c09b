//! Breadth-first search for the fewest conjugates of an element that
//! generate a subgroup with a given (monotone) property.
//!
//! States are subgroups `⟨x^{l_1}, …, x^{l_k}⟩`. Every state is generated by
//! members of the class `x^A` of the acting group `A`, so a subgroup is
//! determined by which class members it contains; that bitset is the dedup
//! key. Levels are explored completely before the next width is tried, so a
//! reported width is minimal whenever the result is marked exhaustive.
//!
//! With `pinned` search the first tuple entry is `x` itself. Every predicate
//! used here is invariant under simultaneous conjugation by `A`, so any
//! successful tuple can be moved to one starting with `x`.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation};
use crate::structure::conjugation_orbit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest tuple width tried.
    pub max_width: usize,
    /// Cap on distinct subgroups recorded by the dedup table.
    pub max_subgroup_states: usize,
    /// Classes larger than this are sampled instead of enumerated.
    pub max_class_size: usize,
    /// Seed for class sampling.
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_width: 12,
            max_subgroup_states: 100_000,
            max_class_size: 100_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_max_width(self, max_width: usize) -> Self {
        Self { max_width, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_width == 0 || self.max_subgroup_states == 0 || self.max_class_size == 0 {
            return Err(Error::InvariantViolation("search budgets must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthKind {
    Alpha,
    Beta,
    BsMembership,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthValue {
    Exact(usize),
    /// The budget ran out; no tuple of width `≤ no_success_up_to` succeeded.
    Unknown { no_success_up_to: usize },
    /// Every reachable subgroup was visited and none succeeded.
    Unreachable,
}

impl WidthValue {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Self::Exact(k) => Some(*k),
            _ => None,
        }
    }
}

/// Outcome of a width search. `witness[i]` is the conjugating element
/// `l_i`, so the successful tuple is `x^{l_1}, …, x^{l_k}`.
#[derive(Clone, Debug)]
pub struct WidthResult {
    pub kind: WidthKind,
    pub value: WidthValue,
    pub element: Permutation,
    pub witness: Vec<Permutation>,
    pub certificate: Option<FactoredInteger>,
    /// False when the class was sampled; then minimality is not proven.
    pub exhaustive: bool,
    pub states_visited: usize,
    /// Largest subgroup reached without success (conjugators, order).
    pub largest_failure: Option<(Vec<Permutation>, FactoredInteger)>,
}

impl WidthResult {
    pub fn tuple(&self) -> Vec<Permutation> {
        self.witness.iter().map(|l| self.element.conjugate_by(l)).collect()
    }

    /// Re-derives the certificate from the witness alone: every conjugator
    /// lies in `acting`, the regenerated subgroup has the certified order,
    /// and it satisfies `predicate`.
    pub fn revalidate(&self, acting: &PermGroup, predicate: &dyn Fn(&PermGroup) -> bool) -> bool {
        self.certificate().check(&self.element, acting, predicate).unwrap_or(false)
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            kind: self.kind,
            value: self.value.exact(),
            witness: self.witness.iter().map(Permutation::to_string).collect(),
            certificate_order: self.certificate.clone(),
            exhaustive: self.exhaustive,
        }
    }
}

/// Serialized, independently checkable form of a [`WidthResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: WidthKind,
    pub value: Option<usize>,
    pub witness: Vec<String>,
    pub certificate_order: Option<FactoredInteger>,
    pub exhaustive: bool,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            reason: e.to_string(),
        })
    }

    pub fn check(
        &self,
        x: &Permutation,
        acting: &PermGroup,
        predicate: &dyn Fn(&PermGroup) -> bool,
    ) -> Result<bool> {
        let (Some(k), Some(order)) = (self.value, &self.certificate_order) else {
            return Ok(self.witness.is_empty());
        };
        if self.witness.len() != k {
            return Ok(false);
        }
        let mut tuple = Vec::with_capacity(k);
        for text in &self.witness {
            let l = parse_cycles(text, x.degree())?;
            if !acting.contains(&l)? {
                return Ok(false);
            }
            tuple.push(x.conjugate_by(&l));
        }
        let generated = PermGroup::from_generators(&tuple)?;
        Ok(generated.order() == order && predicate(&generated))
    }
}

struct Candidates {
    members: Vec<Permutation>,
    conjugators: Vec<Permutation>,
    exhaustive: bool,
}

fn candidates(x: &Permutation, acting: &PermGroup, budget: &SearchBudget) -> Result<Candidates> {
    match conjugation_orbit(acting, x, budget.max_class_size) {
        Ok(class) => Ok(Candidates {
            members: class.members().to_vec(),
            conjugators: class.conjugators().to_vec(),
            exhaustive: true,
        }),
        Err(Error::ClassTooLarge { .. }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            let mut members = vec![x.clone()];
            let mut conjugators = vec![Permutation::identity(x.degree())];
            let mut seen: HashSet<Permutation> = members.iter().cloned().collect();
            for _ in 1..budget.max_class_size {
                let g = acting.random_element_with(&mut rng);
                let m = x.conjugate_by(&g);
                if seen.insert(m.clone()) {
                    members.push(m);
                    conjugators.push(g);
                }
            }
            Ok(Candidates {
                members,
                conjugators,
                exhaustive: false,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct StateKey {
    order: FactoredInteger,
    members: Vec<u64>,
}

fn key_of(group: &PermGroup, members: &[Permutation]) -> StateKey {
    let mut bits = vec![0u64; members.len().div_ceil(64)];
    for (i, m) in members.iter().enumerate() {
        if group.has(m) {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    StateKey {
        order: group.order().clone(),
        members: bits,
    }
}

struct Child {
    tuple: Vec<usize>,
    key: StateKey,
}

#[derive(Default)]
struct Expansion {
    visited: usize,
    success: Option<(usize, FactoredInteger)>,
    children: Vec<Child>,
}

fn expand<P>(
    tuple: &[usize],
    cands: &Candidates,
    seen: &HashSet<StateKey>,
    predicate: &P,
) -> Expansion
where
    P: Fn(&PermGroup) -> bool + Sync + ?Sized,
{
    let gens: Vec<Permutation> = tuple.iter().map(|&i| cands.members[i].clone()).collect();
    let group = PermGroup::from_generators(&gens).expect("non-empty tuple of equal degree");
    let mut out = Expansion::default();
    let mut local: HashSet<StateKey> = HashSet::new();
    for (c, member) in cands.members.iter().enumerate() {
        if group.has(member) {
            continue;
        }
        let extended = group.extended_by(member);
        out.visited += 1;
        if predicate(&extended) {
            out.success = Some((c, extended.order().clone()));
            return out;
        }
        let key = key_of(&extended, &cands.members);
        if !seen.contains(&key) && local.insert(key.clone()) {
            let mut next = tuple.to_vec();
            next.push(c);
            out.children.push(Child { tuple: next, key });
        }
    }
    out
}

/// Minimal number of `acting`-conjugates of `x` generating a subgroup that
/// satisfies `predicate`, which must be monotone under enlarging the
/// subgroup and invariant under conjugation by `acting`.
pub fn search_conjugates<P>(
    kind: WidthKind,
    x: &Permutation,
    acting: &PermGroup,
    predicate: &P,
    budget: &SearchBudget,
    pinned: bool,
) -> Result<WidthResult>
where
    P: Fn(&PermGroup) -> bool + Sync + ?Sized,
{
    budget.validate()?;
    let cands = candidates(x, acting, budget)?;
    let mut visited = 0usize;
    let mut seen: HashSet<StateKey> = HashSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    let mut largest: Option<(Vec<usize>, FactoredInteger, u128)> = None;

    let conjugators_of = |tuple: &[usize]| -> Vec<Permutation> {
        tuple.iter().map(|&i| cands.conjugators[i].clone()).collect()
    };
    let finish = |value: WidthValue,
                  witness: Vec<Permutation>,
                  certificate: Option<FactoredInteger>,
                  visited: usize,
                  largest: &Option<(Vec<usize>, FactoredInteger, u128)>| WidthResult {
        kind,
        value,
        element: x.clone(),
        witness,
        certificate,
        exhaustive: cands.exhaustive,
        states_visited: visited,
        largest_failure: largest
            .as_ref()
            .map(|(t, o, _)| (conjugators_of(t), o.clone())),
    };
    let track = |largest: &mut Option<(Vec<usize>, FactoredInteger, u128)>,
                     tuple: &[usize],
                     order: &FactoredInteger| {
        let size = order.to_u128().unwrap_or(u128::MAX);
        if largest.as_ref().is_none_or(|(_, _, s)| size > *s) {
            *largest = Some((tuple.to_vec(), order.clone(), size));
        }
    };

    let starts: Vec<usize> = if pinned {
        vec![0]
    } else {
        (0..cands.members.len()).collect()
    };
    for s in starts {
        let group = PermGroup::from_generators(std::slice::from_ref(&cands.members[s]))?;
        visited += 1;
        if predicate(&group) {
            return Ok(finish(
                WidthValue::Exact(1),
                conjugators_of(&[s]),
                Some(group.order().clone()),
                visited,
                &largest,
            ));
        }
        let key = key_of(&group, &cands.members);
        if seen.insert(key) {
            track(&mut largest, &[s], group.order());
            frontier.push(vec![s]);
        }
    }

    for width in 2..=budget.max_width {
        if frontier.is_empty() {
            let value = if cands.exhaustive {
                WidthValue::Unreachable
            } else {
                WidthValue::Unknown {
                    no_success_up_to: width - 1,
                }
            };
            return Ok(finish(value, Vec::new(), None, visited, &largest));
        }
        let expansions: Vec<Expansion> = frontier
            .par_iter()
            .map(|tuple| expand(tuple, &cands, &seen, predicate))
            .collect();
        let mut next = Vec::new();
        for (tuple, exp) in frontier.iter().zip(expansions) {
            visited += exp.visited;
            if let Some((c, order)) = exp.success {
                let mut full = tuple.clone();
                full.push(c);
                return Ok(finish(
                    WidthValue::Exact(width),
                    conjugators_of(&full),
                    Some(order),
                    visited,
                    &largest,
                ));
            }
            for child in exp.children {
                let order = child.key.order.clone();
                if seen.insert(child.key) {
                    track(&mut largest, &child.tuple, &order);
                    next.push(child.tuple);
                }
            }
            if seen.len() > budget.max_subgroup_states {
                return Ok(finish(
                    WidthValue::Unknown {
                        no_success_up_to: width - 1,
                    },
                    Vec::new(),
                    None,
                    visited,
                    &largest,
                ));
            }
        }
        frontier = next;
    }
    let value = if frontier.is_empty() && cands.exhaustive {
        WidthValue::Unreachable
    } else {
        WidthValue::Unknown {
            no_success_up_to: budget.max_width,
        }
    };
    Ok(finish(value, Vec::new(), None, visited, &largest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|g| parse_cycles(g, n).unwrap()).collect();
        PermGroup::from_generators(&gens).unwrap()
    }

    #[test]
    fn trivial_predicate_succeeds_at_width_one() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let res = search_conjugates(
            WidthKind::Beta,
            &x,
            &a5,
            &|h: &PermGroup| h.order().divides(h.order()),
            &SearchBudget::default(),
            true,
        )
        .unwrap();
        assert_eq!(res.value, WidthValue::Exact(1));
        assert_eq!(res.witness, vec![Permutation::identity(5)]);
    }

    #[test]
    fn unsatisfiable_predicate_is_not_a_value() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let never = |_: &PermGroup| false;
        let small = SearchBudget::default().with_max_width(2);
        let res = search_conjugates(WidthKind::Beta, &x, &a5, &never, &small, true).unwrap();
        assert_eq!(res.value, WidthValue::Unknown { no_success_up_to: 2 });
        assert!(res.certificate.is_none());

        let res = search_conjugates(WidthKind::Beta, &x, &a5, &never, &SearchBudget::default(), true)
            .unwrap();
        assert_eq!(res.value, WidthValue::Unreachable);
        // the whole class generates S_5
        assert_eq!(res.largest_failure.unwrap().1.to_u128(), Some(120));
    }

    #[test]
    fn transposition_reaches_order_three_quickly() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let pred = |h: &PermGroup| h.order().divisible_by_prime(3);
        let res = search_conjugates(WidthKind::Beta, &x, &a5, &pred, &SearchBudget::default(), true)
            .unwrap();
        assert_eq!(res.value, WidthValue::Exact(2));
        assert!(res.states_visited <= 10);
        assert!(res.revalidate(&a5, &pred));
        assert_eq!(res.tuple()[0], x);
    }

    #[test]
    fn state_cap_yields_unknown_with_lower_bound() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let pred = |h: &PermGroup| h.order().divisible_by_prime(5);
        let budget = SearchBudget {
            max_subgroup_states: 2,
            ..SearchBudget::default()
        };
        let res = search_conjugates(WidthKind::Beta, &x, &a5, &pred, &budget, true).unwrap();
        assert!(matches!(res.value, WidthValue::Unknown { no_success_up_to: 1 }));
    }

    #[test]
    fn sampled_class_is_flagged_heuristic() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let pred = |h: &PermGroup| h.order().divisible_by_prime(3);
        let budget = SearchBudget {
            max_class_size: 4,
            ..SearchBudget::default()
        };
        let res = search_conjugates(WidthKind::Beta, &x, &a5, &pred, &budget, true).unwrap();
        assert!(!res.exhaustive);
        assert_eq!(res.value.exact(), Some(2));
        assert!(res.revalidate(&a5, &pred));
    }

    #[test]
    fn tampered_certificate_fails() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let pred = |h: &PermGroup| h.order().divisible_by_prime(5);
        let res = search_conjugates(WidthKind::Beta, &x, &a5, &pred, &SearchBudget::default(), true)
            .unwrap();
        let mut cert = res.certificate();
        assert!(cert.check(&x, &a5, &pred).unwrap());
        cert.certificate_order = Some(FactoredInteger::from_u64(60));
        assert!(!cert.check(&x, &a5, &pred).unwrap());
        let mut cert = res.certificate();
        cert.witness[1] = "(1 2)".into();
        assert!(!cert.check(&x, &a5, &pred).unwrap());
    }

    #[test]
    fn certificate_json_round_trip() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let pred = |h: &PermGroup| h.order().divisible_by_prime(5);
        let cert = search_conjugates(WidthKind::Beta, &x, &a5, &pred, &SearchBudget::default(), true)
            .unwrap()
            .certificate();
        let text = cert.to_json();
        assert!(text.contains("\"kind\":\"beta\""));
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert!(back.check(&x, &a5, &pred).unwrap());
        assert!(matches!(Certificate::from_json("{\"kind\":"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn zero_budget_is_rejected() {
        let a5 = group(&["(1 2 3)", "(3 4 5)"], 5);
        let x = parse_cycles("(1 2)", 5).unwrap();
        let budget = SearchBudget {
            max_width: 0,
            ..SearchBudget::default()
        };
        assert!(search_conjugates(WidthKind::Alpha, &x, &a5, &|_: &PermGroup| true, &budget, true).is_err());
    }
}
