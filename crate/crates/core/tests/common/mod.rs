//! Brute-force oracles shared by the integration tests. Nothing here uses
//! stabilizer chains: groups are enumerated by breadth-first closure over
//! raw image vectors.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use piradical::factored::FactoredInteger;
use piradical::perm::Permutation;
use piradical::primeset::PrimeSet;

pub type Images = Vec<u32>;

pub fn images(p: &Permutation) -> Images {
    p.images().map(|i| i as u32).collect()
}

/// `a` then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Images {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn invert(a: &[u32]) -> Images {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

/// `g⁻¹ a g`.
pub fn conjugate(a: &[u32], g: &[u32]) -> Images {
    compose(&compose(&invert(g), a), g)
}

/// Every element of `⟨gens⟩`.
pub fn closure(degree: usize, gens: &[Images]) -> HashSet<Images> {
    let id: Images = (0..degree as u32).collect();
    let mut seen: HashSet<Images> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

pub fn closure_of(degree: usize, gens: &[Permutation]) -> HashSet<Images> {
    closure(degree, &gens.iter().map(images).collect::<Vec<_>>())
}

pub fn order_of(a: &[u32]) -> u64 {
    let id: Images = (0..a.len() as u32).collect();
    let mut acc = a.to_vec();
    let mut n = 1;
    while acc != id {
        acc = compose(&acc, a);
        n += 1;
    }
    n
}

/// `n` factored by trial division.
pub fn factor(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_pi_number(n: u64, pi: &PrimeSet) -> bool {
    factor(n).into_iter().all(|p| pi.contains(p))
}

/// The conjugacy class of `x` under `group`.
pub fn class_of(group: &HashSet<Images>, x: &[u32]) -> HashSet<Images> {
    group.iter().map(|g| conjugate(x, g)).collect()
}

/// Normal closure of `x` in `group`, by closing its class.
pub fn normal_closure(group: &HashSet<Images>, x: &[u32]) -> HashSet<Images> {
    let class: Vec<Images> = class_of(group, x).into_iter().collect();
    closure(x.len(), &class)
}

/// `O_π(G)` as the set of elements whose normal closure is a π-group.
pub fn radical_by_elements(group: &HashSet<Images>, pi: &PrimeSet) -> HashSet<Images> {
    group
        .iter()
        .filter(|x| is_pi_number(order_of(x), pi) && is_pi_number(normal_closure(group, x).len() as u64, pi))
        .cloned()
        .collect()
}

pub fn factored(n: usize) -> FactoredInteger {
    FactoredInteger::from_u64(n as u64)
}

/// Smallest `k` such that some `k`-subset of `class` containing `x`
/// generates a group whose order satisfies `pred`, trying every subset.
pub fn brute_width(x: &[u32], class: &[Images], max_k: usize, pred: &dyn Fn(usize) -> bool) -> Option<usize> {
    let others: Vec<&Images> = class.iter().filter(|c| c.as_slice() != x).collect();
    (1..=max_k.min(others.len() + 1)).find(|&k| any_subset(&others, k - 1, 0, &mut vec![x.to_vec()], pred))
}

fn any_subset(others: &[&Images], need: usize, start: usize, chosen: &mut Vec<Images>, pred: &dyn Fn(usize) -> bool) -> bool {
    if need == 0 {
        return pred(closure(chosen[0].len(), chosen).len());
    }
    for i in start..=others.len() - need {
        chosen.push(others[i].clone());
        let found = any_subset(others, need - 1, i + 1, chosen, pred);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}
