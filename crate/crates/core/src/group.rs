//! Permutation groups backed by a base and strong generating set.
//!
//! Construction runs the deterministic Schreier–Sims algorithm: every
//! Schreier generator of every level is sifted, so the resulting order is
//! exact without a separate verification pass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::perm::{check_degrees, Permutation};

/// Default cap on full element enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into `strong` of the generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Self {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
        }
    }

    fn rebuild(&mut self, strong: &[Permutation], earlier_base: &[usize]) {
        let degree = self.transversal.len();
        self.gens = strong
            .iter()
            .enumerate()
            .filter(|(_, s)| earlier_base.iter().all(|&b| s.apply(b) == b))
            .map(|(k, _)| k)
            .collect();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.inverse.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.inverse[self.base] = Some(Permutation::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for &k in &self.gens {
                let q = strong[k].apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(&strong[k]);
                    self.inverse[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Sifts `g` through `levels[from..]`. Returns the residue and the index of
/// the level where sifting stopped (`levels.len()` when it got through).
fn strip(levels: &[Level], from: usize, mut g: Permutation) -> (Permutation, usize) {
    for (j, level) in levels.iter().enumerate().skip(from) {
        let image = g.apply(level.base);
        match &level.inverse[image] {
            Some(inv) => g = g.then(inv),
            None => return (g, j),
        }
    }
    (g, levels.len())
}

/// An immutable permutation group with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    order: FactoredInteger,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: FactoredInteger::one(),
        }
    }

    /// Builds the group generated by `gens` (deterministic Schreier–Sims).
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        for g in gens {
            check_degrees(first, g)?;
        }
        Ok(Self::build(first.degree(), gens.to_vec()))
    }

    /// Like [`from_generators`](Self::from_generators) but allows an empty
    /// list, producing the trivial group of the given degree.
    pub fn generated_by(degree: usize, gens: &[Permutation]) -> Result<Self> {
        if gens.is_empty() {
            return Ok(Self::trivial(degree));
        }
        let group = Self::from_generators(gens)?;
        if group.degree != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: group.degree,
            });
        }
        Ok(group)
    }

    fn build(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in &generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for s in &strong {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(s.first_moved_point().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let earlier: Vec<usize> = levels[..li].iter().map(|l| l.base).collect();
            levels[li].rebuild(&strong, &earlier);

            let mut jump = None;
            'scan: for oi in 0..levels[li].orbit.len() {
                let p = levels[li].orbit[oi];
                for gi in 0..levels[li].gens.len() {
                    let s = &strong[levels[li].gens[gi]];
                    let q = s.apply(p);
                    let h = levels[li].transversal[p]
                        .as_ref()
                        .unwrap()
                        .then(s)
                        .then(levels[li].inverse[q].as_ref().unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = strip(&levels, li + 1, h);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == levels.len() {
                        let b = residue.first_moved_point().expect("non-identity");
                        levels.push(Level::new(b, degree));
                    }
                    strong.push(residue);
                    jump = Some(j);
                    break 'scan;
                }
            }
            match jump {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }

        let order = levels
            .iter()
            .map(|l| FactoredInteger::from_u64(l.orbit.len() as u64))
            .product();
        Self {
            degree,
            generators,
            strong,
            levels,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Lengths of the fundamental orbits, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> &FactoredInteger {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting. Errors on a degree mismatch.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.has(p))
    }

    /// Membership for a permutation already known to have the right degree.
    pub fn has(&self, p: &Permutation) -> bool {
        strip(&self.levels, 0, p.clone()).0.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// True when every generator of `self` conjugated by every generator of
    /// `over` stays in `self`.
    pub fn is_normalized_by(&self, over: &[Permutation]) -> bool {
        over.iter()
            .all(|g| self.generators.iter().all(|h| self.has(&h.conjugate_by(g))))
    }

    /// Orbits on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Orbit label per point (the smallest point of its orbit).
    pub fn orbit_labels(&self) -> Vec<u32> {
        let mut labels = vec![0u32; self.degree];
        for orbit in self.orbits() {
            for &p in &orbit {
                labels[p] = orbit[0] as u32;
            }
        }
        labels
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// All elements, each exactly once, as products of coset
    /// representatives. Fails with `TooLarge` when the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<Elements<'_>> {
        if !self.order.at_most(cap as u128) {
            return Err(Error::TooLarge {
                order: self.order.to_string(),
                cap,
            });
        }
        Ok(Elements {
            group: self,
            digits: vec![0; self.levels.len()],
            done: false,
        })
    }

    /// Uniformly random element, deterministic in `seed`.
    pub fn random_element(&self, seed: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_element_with(&mut rng)
    }

    /// Uniform sample: one independent uniform coset representative per level.
    pub fn random_element_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.transversal[p].as_ref().unwrap());
        }
        g
    }

    /// Join with another subgroup of the same symmetric group.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        if self.is_subgroup_of(other) {
            return Ok(other.clone());
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Self::build(self.degree, gens))
    }

    /// The group generated by `self` and one more element.
    pub fn extended_by(&self, g: &Permutation) -> PermGroup {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        if self.has(g) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        Self::build(self.degree, gens)
    }
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Iterator returned by [`PermGroup::elements`].
pub struct Elements<'a> {
    group: &'a PermGroup,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.group.levels;
        let mut g = Permutation::identity(self.group.degree);
        for (level, &d) in levels.iter().zip(&self.digits).rev() {
            g = g.then(level.transversal[level.orbit[d]].as_ref().unwrap());
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == levels.len() {
                self.done = true;
                break;
            }
            self.digits[k] += 1;
            if self.digits[k] < levels[k].orbit.len() {
                break;
            }
            self.digits[k] = 0;
            k += 1;
        }
        Some(g)
    }
}
