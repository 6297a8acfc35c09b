//! Named groups and almost simple contexts: symmetric, alternating, cyclic
//! and dihedral groups, and `PSL(2,q)`, `PGL(2,q)`, `PΓL(2,9)` acting on the
//! projective line `GF(q) ∪ {∞}`.

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::genwidth::AlmostSimpleContext;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure::{conjugacy_classes, DEFAULT_CLASS_CAP};

/// Field orders with built-in tables.
pub const SUPPORTED_Q: [u64; 7] = [4, 5, 7, 8, 9, 11, 13];

fn cycle_on(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("distinct in-range points")
}

fn build(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::generated_by(degree, &gens).expect("generators share the degree")
}

/// `S_n` on `n` points, generated by `(1 2)` and `(1 2 … n)`.
pub fn symmetric(n: usize) -> PermGroup {
    assert!(n >= 1, "degree must be positive");
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_on(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle_on(n, 0..n));
    }
    build(n, gens)
}

/// `A_n` on `n` points, generated by the 3-cycles `(1 2 i)`.
pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 1, "degree must be positive");
    build(n, (2..n).map(|i| cycle_on(n, [0, 1, i])).collect())
}

/// The cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1, "degree must be positive");
    let gens = if n >= 2 { vec![cycle_on(n, 0..n)] } else { vec![] };
    build(n, gens)
}

/// The dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    assert!(n >= 3, "dihedral groups need n ≥ 3");
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    build(n, vec![cycle_on(n, 0..n), reflection])
}

/// Arithmetic of `GF(q)` as lookup tables. Elements are encoded as integers
/// `0..q` whose base-`p` digits are polynomial coefficients.
#[derive(Clone, Debug)]
pub struct FieldTable {
    q: usize,
    p: usize,
    k: u32,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    primitive: usize,
}

impl FieldTable {
    pub fn new(q: u64) -> Result<Self> {
        // monic irreducible modulus, low-degree coefficients first
        let (p, k, modulus): (usize, u32, Vec<usize>) = match q {
            5 | 7 | 11 | 13 => (q as usize, 1, vec![0]),
            4 => (2, 2, vec![1, 1]),
            8 => (2, 3, vec![1, 1, 0]),
            9 => (3, 2, vec![1, 0]),
            _ => return Err(Error::UnsupportedQ(q)),
        };
        let q = q as usize;
        let digits = |mut e: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = e % p;
                    e /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![vec![0; q]; q];
        let mut mul = vec![vec![0; q]; q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a][b] = encode(&sum);
                if k == 1 {
                    mul[a][b] = a * b % p;
                    continue;
                }
                let mut prod = vec![0usize; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce with t^k = -(modulus)
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = deg - k as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * m % p) % p;
                    }
                }
                mul[a][b] = encode(&prod[..k as usize]);
            }
        }
        let mut table = Self {
            q,
            p,
            k,
            add,
            mul,
            primitive: 0,
        };
        table.primitive = (2..q)
            .chain([1])
            .find(|&g| table.multiplicative_order(g) == q - 1)
            .ok_or_else(|| Error::InvariantViolation(format!("GF({q}) has no primitive element")))?;
        if table.frobenius_order() != k as usize {
            return Err(Error::InvariantViolation(format!("Frobenius of GF({q}) has wrong order")));
        }
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul[a][b] == 1)
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul[acc][a])
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> usize {
        self.primitive
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut acc = a;
        let mut n = 1;
        while acc != 1 {
            acc = self.mul[acc][a];
            n += 1;
        }
        n
    }

    fn frobenius_order(&self) -> usize {
        let mut n = 1;
        let moved = |n: usize| (0..self.q).any(|a| (0..n).fold(a, |x, _| self.frobenius(x)) != a);
        while moved(n) {
            n += 1;
        }
        n
    }

    /// The Möbius map `z ↦ (a z + b)/(c z + d)` on `q + 1` points, where
    /// point `q` is `∞`. Panics when the matrix is singular.
    pub fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Permutation {
        let q = self.q;
        assert_ne!(
            self.add(self.mul(a, d), self.neg(self.mul(b, c))),
            0,
            "singular matrix"
        );
        let div = |num: usize, den: usize| -> usize {
            match self.inv(den) {
                Some(i) => self.mul(num, i),
                None => q,
            }
        };
        let images: Vec<usize> = (0..=q)
            .map(|z| {
                if z == q {
                    if c == 0 {
                        q
                    } else {
                        div(a, c)
                    }
                } else {
                    div(self.add(self.mul(a, z), b), self.add(self.mul(c, z), d))
                }
            })
            .collect();
        Permutation::from_images(images).expect("Möbius maps are bijective")
    }

    /// `z ↦ z^p` on the projective line.
    pub fn frobenius_map(&self) -> Permutation {
        let images: Vec<usize> = (0..=self.q)
            .map(|z| if z == self.q { z } else { self.frobenius(z) })
            .collect();
        Permutation::from_images(images).expect("Frobenius is bijective")
    }

    fn translation(&self) -> Permutation {
        self.mobius(1, 1, 0, 1)
    }

    fn scaling(&self, lambda: usize) -> Permutation {
        self.mobius(lambda, 0, 0, 1)
    }

    fn negative_inverse(&self) -> Permutation {
        self.mobius(0, self.neg(1), 1, 0)
    }
}

fn psl2_generators(field: &FieldTable) -> Vec<Permutation> {
    let lambda = field.primitive();
    let scale = if field.characteristic() == 2 {
        lambda
    } else {
        field.mul(lambda, lambda)
    };
    vec![field.translation(), field.scaling(scale), field.negative_inverse()]
}

fn pgl2_generators(field: &FieldTable) -> Vec<Permutation> {
    vec![
        field.translation(),
        field.scaling(field.primitive()),
        field.negative_inverse(),
    ]
}

/// `PSL(2,q)` on the projective line.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let field = FieldTable::new(q)?;
    PermGroup::from_generators(&psl2_generators(&field))
}

/// `PGL(2,q)` on the projective line.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let field = FieldTable::new(q)?;
    PermGroup::from_generators(&pgl2_generators(&field))
}

/// `q(q²−1)/gcd(2, q−1)`.
pub fn psl2_order(q: u64) -> FactoredInteger {
    let d = if q % 2 == 1 { 2 } else { 1 };
    FactoredInteger::from_u64(q * (q * q - 1) / d)
}

pub fn pgl2_order(q: u64) -> FactoredInteger {
    FactoredInteger::from_u64(q * (q * q - 1))
}

/// One of the three subgroups of index 2 in `PΓL(2,9)` that contain the
/// socle, with data about its outer coset.
#[derive(Clone, Debug)]
pub struct OuterCoset {
    pub label: &'static str,
    /// Any element of the coset outside the socle.
    pub generator: Permutation,
    /// `⟨socle, generator⟩`, of order 720.
    pub subgroup: PermGroup,
    /// First involution of the coset, if the coset has any.
    pub involution: Option<Permutation>,
    /// Whether the coset contains an element of order 6. Among the three
    /// index-2 overgroups of `A_6` only `S_6` has such elements.
    pub is_symmetric_six: bool,
}

/// `PΓL(2,9)` on the 10 points of the projective line over `GF(9)`.
#[derive(Clone, Debug)]
pub struct ProjectiveNine {
    pub field: FieldTable,
    pub full: PermGroup,
    pub socle: PermGroup,
    pub frobenius: Permutation,
    pub diagonal: Permutation,
    pub cosets: Vec<OuterCoset>,
}

impl ProjectiveNine {
    /// An involution outside the copy of `S_6`: a diagonal automorphism of
    /// `L_2(9)`, from the `PGL(2,9)` coset.
    pub fn outer_involution(&self) -> &Permutation {
        self.cosets
            .iter()
            .find(|c| !c.is_symmetric_six && c.involution.is_some())
            .and_then(|c| c.involution.as_ref())
            .expect("PGL(2,9) has outer involutions")
    }

    /// An involution in `S_6 \ A_6` (the field automorphism `z ↦ z³`).
    pub fn field_involution(&self) -> &Permutation {
        &self.frobenius
    }

    pub fn coset(&self, label: &str) -> Option<&OuterCoset> {
        self.cosets.iter().find(|c| c.label == label)
    }
}

/// Builds `PΓL(2,9)`, its socle `PSL(2,9) ≅ A_6`, and the three index-2
/// overgroups `PGL(2,9)`, `PΣL(2,9) ≅ S_6` and `M_10`.
pub fn pgammal2_9() -> Result<ProjectiveNine> {
    let field = FieldTable::new(9)?;
    let socle = PermGroup::from_generators(&psl2_generators(&field))?;
    let frobenius = field.frobenius_map();
    let diagonal = field.scaling(field.primitive());
    let mut gens = pgl2_generators(&field);
    gens.push(frobenius.clone());
    let full = PermGroup::from_generators(&gens)?;

    let socle_elements: Vec<Permutation> = socle.elements(1000)?.collect();
    let mut cosets = Vec::new();
    for (label, generator) in [
        ("PGL(2,9)", diagonal.clone()),
        ("PΣL(2,9)", frobenius.clone()),
        ("M10", diagonal.then(&frobenius)),
    ] {
        let subgroup = socle.extended_by(&generator);
        let mut involution = None;
        let mut has_six = false;
        for l in &socle_elements {
            let t = generator.then(l);
            match t.order() {
                2 if involution.is_none() => involution = Some(t),
                6 => has_six = true,
                _ => {}
            }
        }
        cosets.push(OuterCoset {
            label,
            generator,
            subgroup,
            involution,
            is_symmetric_six: has_six,
        });
    }
    Ok(ProjectiveNine {
        field,
        full,
        socle,
        frobenius,
        diagonal,
        cosets,
    })
}

/// Whether `x` swaps the two `L`-classes of elements of order 3 (for `L`
/// with exactly two such classes). Errors if `L` has a different number.
pub fn swaps_order_three_classes(socle: &PermGroup, x: &Permutation) -> Result<bool> {
    let classes = conjugacy_classes(socle, 100_000, DEFAULT_CLASS_CAP)?;
    let threes: Vec<_> = classes
        .iter()
        .filter(|c| c.representative().order() == 3)
        .collect();
    if threes.len() != 2 {
        return Err(Error::InvariantViolation(format!(
            "expected two classes of elements of order 3, found {}",
            threes.len()
        )));
    }
    let image = threes[0].representative().conjugate_by(x);
    Ok(threes[1].contains(&image))
}

/// `⟨L, x⟩` with all context invariants validated.
pub fn context(socle: &PermGroup, x: &Permutation) -> Result<AlmostSimpleContext> {
    AlmostSimpleContext::new(socle.clone(), x.clone())
}

/// A catalog group with its closed-form order.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
    pub closed_form_order: FactoredInteger,
}

/// Looks up a group by name: `S5`, `A6`, `C6`, `D5`, `psl2(7)`, `pgl2(9)`,
/// `pgammal2(9)`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    Ok(named_entry(name)?.group)
}

fn parse_q(rest: &str) -> Option<u64> {
    rest.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

pub fn named_entry(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let trimmed = name.trim();
    let lower = trimmed.to_ascii_lowercase();
    let entry = |group: PermGroup, order: FactoredInteger| CatalogEntry {
        name: trimmed.to_string(),
        group,
        closed_form_order: order,
    };
    if let Some(rest) = lower.strip_prefix("psl2") {
        let q = parse_q(rest).ok_or_else(unknown)?;
        return Ok(entry(psl2(q)?, psl2_order(q)));
    }
    if let Some(rest) = lower.strip_prefix("pgl2") {
        let q = parse_q(rest).ok_or_else(unknown)?;
        return Ok(entry(pgl2(q)?, pgl2_order(q)));
    }
    if let Some(rest) = lower.strip_prefix("pgammal2") {
        if parse_q(rest) != Some(9) {
            return Err(Error::UnsupportedQ(parse_q(rest).unwrap_or(0)));
        }
        return Ok(entry(pgammal2_9()?.full, pgl2_order(9) * FactoredInteger::from_u64(2)));
    }
    let (kind, digits) = trimmed.split_at(trimmed.chars().next().map_or(0, char::len_utf8));
    let n: usize = digits.parse().map_err(|_| unknown())?;
    if n == 0 || n > 64 {
        return Err(unknown());
    }
    let n64 = n as u64;
    match kind {
        "S" => Ok(entry(symmetric(n), FactoredInteger::factorial(n64))),
        "A" => {
            let order = if n < 2 {
                FactoredInteger::one()
            } else {
                FactoredInteger::factorial(n64)
                    .checked_div(&FactoredInteger::from_u64(2))
                    .unwrap()
            };
            Ok(entry(alternating(n), order))
        }
        "C" => Ok(entry(cyclic(n), FactoredInteger::from_u64(n64))),
        "D" if n >= 3 => Ok(entry(dihedral(n), FactoredInteger::from_u64(2 * n64))),
        _ => Err(unknown()),
    }
}

/// The built-in catalog: `S_2…S_9`, `A_3…A_9`, `C_1…C_12`, `D_3…D_12`,
/// `PSL(2,q)` and `PGL(2,q)` for the supported `q`, and `PΓL(2,9)`.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut names: Vec<String> = Vec::new();
    names.extend((2..=9).map(|n| format!("S{n}")));
    names.extend((3..=9).map(|n| format!("A{n}")));
    names.extend((1..=12).map(|n| format!("C{n}")));
    names.extend((3..=12).map(|n| format!("D{n}")));
    names.extend(SUPPORTED_Q.iter().map(|q| format!("psl2({q})")));
    names.extend(SUPPORTED_Q.iter().map(|q| format!("pgl2({q})")));
    names.push("pgammal2(9)".into());
    names
        .iter()
        .map(|n| named_entry(n).expect("catalog names resolve"))
        .collect()
}

/// Catalog entries with `|G| ≤ cap`.
pub fn catalog_up_to(cap: u128) -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| e.group.order().at_most(cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::normal_subgroups;

    #[test]
    fn small_family_orders() {
        assert_eq!(symmetric(5).order().to_u128(), Some(120));
        assert_eq!(alternating(6).order().to_u128(), Some(360));
        assert_eq!(alternating(3).order().to_u128(), Some(3));
        assert_eq!(cyclic(6).order().to_u128(), Some(6));
        assert_eq!(dihedral(5).order().to_u128(), Some(10));
        assert_eq!(dihedral(3).order(), symmetric(3).order());
        assert!(dihedral(3).same_as(&symmetric(3)));
        assert!(symmetric(1).is_trivial());
        assert!(cyclic(1).is_trivial());
    }

    #[test]
    fn field_tables() {
        for q in SUPPORTED_Q {
            let f = FieldTable::new(q).unwrap();
            assert_eq!(f.multiplicative_order(f.primitive()), q as usize - 1);
            for a in 1..q as usize {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                for b in 0..q as usize {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // Frobenius is additive
            for a in 0..q as usize {
                for b in 0..q as usize {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
        assert_eq!(FieldTable::new(6).unwrap_err(), Error::UnsupportedQ(6));
        assert_eq!(FieldTable::new(9).unwrap().frobenius_map().order(), 2);
    }

    #[test]
    fn projective_orders() {
        assert_eq!(psl2(5).unwrap().order().to_u128(), Some(60));
        assert_eq!(psl2(9).unwrap().order().to_u128(), Some(360));
        assert_eq!(pgl2(7).unwrap().order().to_u128(), Some(336));
        for q in SUPPORTED_Q {
            assert_eq!(*psl2(q).unwrap().order(), psl2_order(q), "q = {q}");
            assert_eq!(*pgl2(q).unwrap().order(), pgl2_order(q), "q = {q}");
        }
        assert!(matches!(psl2(3), Err(Error::UnsupportedQ(3))));
    }

    #[test]
    fn psl2_nine_is_simple_like_a6() {
        let l = psl2(9).unwrap();
        assert_eq!(l.order(), alternating(6).order());
        assert_eq!(normal_subgroups(&l, 1000).unwrap().len(), 2);
        assert_eq!(normal_subgroups(&alternating(6), 1000).unwrap().len(), 2);
    }

    #[test]
    fn pgammal_structure() {
        let pg = pgammal2_9().unwrap();
        assert_eq!(pg.full.order().to_u128(), Some(1440));
        assert_eq!(pg.socle.order().to_u128(), Some(360));
        let labels: Vec<_> = pg.cosets.iter().map(|c| (c.label, c.is_symmetric_six, c.involution.is_some())).collect();
        assert_eq!(
            labels,
            vec![("PGL(2,9)", false, true), ("PΣL(2,9)", true, true), ("M10", false, false)]
        );
        for c in &pg.cosets {
            assert_eq!(c.subgroup.order().to_u128(), Some(720));
            assert!(pg.socle.is_normalized_by(c.subgroup.generators()));
        }
        let x = pg.outer_involution();
        assert_eq!(x.order(), 2);
        assert!(!pg.socle.has(x));
        assert!(pg.coset("PGL(2,9)").unwrap().subgroup.has(x));
        assert!(!pg.coset("PΣL(2,9)").unwrap().subgroup.has(x));
    }

    #[test]
    fn outer_involution_swaps_three_classes() {
        let pg = pgammal2_9().unwrap();
        assert!(swaps_order_three_classes(&pg.socle, pg.outer_involution()).unwrap());
        assert!(!swaps_order_three_classes(&pg.socle, pg.field_involution()).unwrap());
    }

    #[test]
    fn contexts() {
        let x = crate::perm::parse_cycles("(1 2)", 5).unwrap();
        assert_eq!(context(&alternating(5), &x).unwrap().ambient().order().to_u128(), Some(120));
        let pg = pgammal2_9().unwrap();
        let c = context(&pg.socle, pg.field_involution()).unwrap();
        assert_eq!(c.ambient().order().to_u128(), Some(720));
        let y = crate::perm::parse_cycles("(1 2 3)", 5).unwrap();
        assert_eq!(context(&alternating(5), &y).unwrap().ambient().order().to_u128(), Some(60));
    }

    #[test]
    fn names() {
        assert_eq!(named_group("S4").unwrap().order().to_u128(), Some(24));
        assert_eq!(named_group("psl2(7)").unwrap().order().to_u128(), Some(168));
        assert_eq!(named_group("PGL2(9)").unwrap().order().to_u128(), Some(720));
        assert_eq!(named_group("pgammal2(9)").unwrap().order().to_u128(), Some(1440));
        for bad in ["X5", "S", "psl2(6)", "D2", "S0", ""] {
            assert!(named_group(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn catalog_closed_forms() {
        for e in catalog() {
            assert_eq!(*e.group.order(), e.closed_form_order, "{}", e.name);
        }
    }
}
