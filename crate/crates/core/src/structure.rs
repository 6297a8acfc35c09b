//! Conjugacy classes, normal closures, normal subgroups and π-radicals.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::primeset::PrimeSet;

/// Default cap on materialized conjugacy-class size.
pub const DEFAULT_CLASS_CAP: usize = 100_000;

/// Seed used when class representatives are found by random sampling.
const CLASS_SAMPLING_SEED: u64 = 0x5eed_c1a5;

pub fn is_pi_number(n: &FactoredInteger, pi: &PrimeSet) -> bool {
    n.primes().all(|p| pi.contains(p))
}

pub fn is_pi_group(group: &PermGroup, pi: &PrimeSet) -> bool {
    is_pi_number(group.order(), pi)
}

fn require_member(group: &PermGroup, x: &Permutation) -> Result<()> {
    if !group.contains(x)? {
        return Err(Error::NotAMember(x.to_string()));
    }
    Ok(())
}

/// The smallest normal subgroup of `group` containing `xs`.
pub fn normal_closure(group: &PermGroup, xs: &[Permutation]) -> Result<PermGroup> {
    for x in xs {
        require_member(group, x)?;
    }
    let mut closure = PermGroup::trivial(group.degree());
    let mut queue: Vec<Permutation> = xs.iter().filter(|x| !x.is_identity()).cloned().collect();
    while let Some(h) = queue.pop() {
        if closure.has(&h) {
            continue;
        }
        closure = closure.extended_by(&h);
        for g in group.generators() {
            queue.push(h.conjugate_by(g));
        }
    }
    debug_assert!(closure.is_normalized_by(group.generators()));
    Ok(closure)
}

/// The class `x^G`, with a conjugating witness for every member.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    representative: Permutation,
    members: Vec<Permutation>,
    conjugators: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> &Permutation {
        &self.representative
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    /// `conjugators()[i]` conjugates the representative onto `members()[i]`.
    pub fn conjugators(&self) -> &[Permutation] {
        &self.conjugators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn conjugator_of(&self, p: &Permutation) -> Option<&Permutation> {
        self.index.get(p).map(|&i| &self.conjugators[i])
    }
}

/// Orbit of `x` under conjugation by `acting`, by breadth-first expansion
/// over the generators of `acting`. `x` need not lie in `acting`.
pub fn conjugation_orbit(acting: &PermGroup, x: &Permutation, cap: usize) -> Result<ConjugacyClass> {
    if x.degree() != acting.degree() {
        return Err(Error::DegreeMismatch {
            left: acting.degree(),
            right: x.degree(),
        });
    }
    let mut members = vec![x.clone()];
    let mut conjugators = vec![Permutation::identity(x.degree())];
    let mut index = HashMap::new();
    index.insert(x.clone(), 0);
    let mut head = 0;
    while head < members.len() {
        let current = members[head].clone();
        let via = conjugators[head].clone();
        head += 1;
        for g in acting.generators() {
            let next = current.conjugate_by(g);
            if index.contains_key(&next) {
                continue;
            }
            if members.len() == cap {
                return Err(Error::ClassTooLarge { cap });
            }
            index.insert(next.clone(), members.len());
            members.push(next);
            conjugators.push(via.then(g));
        }
    }
    Ok(ConjugacyClass {
        representative: x.clone(),
        members,
        conjugators,
        index,
    })
}

pub fn conjugacy_class(group: &PermGroup, x: &Permutation, cap: usize) -> Result<ConjugacyClass> {
    require_member(group, x)?;
    conjugation_orbit(group, x, cap)
}

pub fn centralizer_order(group: &PermGroup, x: &Permutation) -> Result<FactoredInteger> {
    let class = conjugacy_class(group, x, DEFAULT_CLASS_CAP)?;
    Ok(group
        .order()
        .checked_div(&FactoredInteger::from_u64(class.size() as u64))
        .expect("class size divides the group order"))
}

/// All conjugacy classes. Uses full enumeration when `|G| ≤ enumeration_cap`
/// and seeded random sampling otherwise (stopping once the class sizes sum
/// to `|G|`). The identity class comes first.
pub fn conjugacy_classes(
    group: &PermGroup,
    enumeration_cap: usize,
    class_cap: usize,
) -> Result<Vec<ConjugacyClass>> {
    let mut classes: Vec<ConjugacyClass> = Vec::new();
    if let Ok(elements) = group.elements(enumeration_cap) {
        let mut seen: HashSet<Permutation> = HashSet::new();
        for g in elements {
            if seen.contains(&g) {
                continue;
            }
            let class = conjugation_orbit(group, &g, class_cap)?;
            seen.extend(class.members.iter().cloned());
            classes.push(class);
        }
        return Ok(classes);
    }

    let total = group.order().to_u128().ok_or_else(|| Error::TooLarge {
        order: group.order().to_string(),
        cap: enumeration_cap,
    })?;
    let mut covered: u128 = 1;
    classes.push(conjugation_orbit(group, &Permutation::identity(group.degree()), 1)?);
    let mut rng = ChaCha8Rng::seed_from_u64(CLASS_SAMPLING_SEED);
    let mut misses = 0usize;
    while covered < total {
        let g = group.random_element_with(&mut rng);
        if classes.iter().any(|c| c.contains(&g)) {
            misses += 1;
            if misses > 1_000_000 {
                return Err(Error::BudgetExhausted(
                    "class sampling did not cover the group".into(),
                ));
            }
            continue;
        }
        let class = conjugation_orbit(group, &g, class_cap)?;
        covered += class.size() as u128;
        classes.push(class);
    }
    Ok(classes)
}

/// Every normal subgroup, as joins of normal closures of class
/// representatives. Sorted by order (ties keep discovery order).
pub fn normal_subgroups(group: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    if !group.order().at_most(cap as u128) {
        return Err(Error::TooLarge {
            order: group.order().to_string(),
            cap,
        });
    }
    let classes = conjugacy_classes(group, cap, DEFAULT_CLASS_CAP)?;
    let mut found: Vec<PermGroup> = vec![PermGroup::trivial(group.degree())];
    let push_new = |found: &mut Vec<PermGroup>, n: PermGroup| -> bool {
        if found.iter().any(|m| m.same_as(&n)) {
            false
        } else {
            found.push(n);
            true
        }
    };
    for class in &classes {
        if class.representative().is_identity() {
            continue;
        }
        let closure = normal_closure(group, std::slice::from_ref(class.representative()))?;
        push_new(&mut found, closure);
    }
    let mut start = 1;
    loop {
        let before = found.len();
        let mut fresh = Vec::new();
        for i in 0..found.len() {
            for j in start.max(i + 1)..found.len() {
                let joined = found[i].join(&found[j])?;
                if !found.iter().chain(fresh.iter()).any(|m: &PermGroup| m.same_as(&joined)) {
                    fresh.push(joined);
                }
            }
        }
        for n in fresh {
            push_new(&mut found, n);
        }
        if found.len() == before {
            break;
        }
        start = before;
    }
    found.sort_by_key(|n| n.order().to_u128().unwrap_or(u128::MAX));
    Ok(found)
}

/// `O_π(G)`: the join of the normal closures `⟨x^G⟩` that are π-groups,
/// over class representatives `x`.
pub fn pi_radical(group: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    if is_pi_group(group, pi) {
        return Ok(group.clone());
    }
    let classes = conjugacy_classes(group, DEFAULT_ENUMERATION_CAP, DEFAULT_CLASS_CAP)?;
    let mut radical = PermGroup::trivial(group.degree());
    for class in &classes {
        let x = class.representative();
        if x.is_identity() || radical.has(x) {
            continue;
        }
        if !is_pi_number(&FactoredInteger::from_u64(x.order()), pi) {
            continue;
        }
        let closure = normal_closure(group, std::slice::from_ref(x))?;
        if is_pi_group(&closure, pi) {
            radical = radical.join(&closure)?;
        }
    }
    Ok(radical)
}
