//! Generation widths of conjugates: `α(x, L)`, `β_r(x, L)`, membership in
//! the Baer–Suzuki class `BS_π^m`, and the classical Baer–Suzuki check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factored::{is_prime, FactoredInteger};
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::primeset::PrimeSet;
use crate::search::{search_conjugates, SearchBudget, WidthKind, WidthResult, WidthValue};
use crate::structure::{
    conjugacy_classes, is_pi_group, is_pi_number, pi_radical, DEFAULT_CLASS_CAP,
};

/// An almost simple group `A = ⟨L, x⟩` inside a common permutation action,
/// with the socle `L` and the automorphism representative `x`.
#[derive(Clone, Debug)]
pub struct AlmostSimpleContext {
    ambient: PermGroup,
    socle: PermGroup,
    x: Permutation,
    degenerate: bool,
}

impl AlmostSimpleContext {
    /// Validates that `x` normalizes `socle`, does not centralize it, and
    /// that the centralizer of the socle in `⟨socle, x⟩` is trivial.
    pub fn new(socle: PermGroup, x: Permutation) -> Result<Self> {
        let ctx = Self::build(socle, x)?;
        if ctx.degenerate {
            return Err(Error::CentralizesSocle(ctx.x.to_string()));
        }
        Ok(ctx)
    }

    /// Like [`new`](Self::new) but accepts an `x` centralizing the socle;
    /// width computations on such a context fail with
    /// `DegenerateAutomorphism`.
    pub fn new_degenerate(socle: PermGroup, x: Permutation) -> Result<Self> {
        Self::build(socle, x)
    }

    fn build(socle: PermGroup, x: Permutation) -> Result<Self> {
        if x.degree() != socle.degree() {
            return Err(Error::DegreeMismatch {
                left: socle.degree(),
                right: x.degree(),
            });
        }
        if socle.is_trivial() {
            return Err(Error::InvariantViolation("socle is trivial".into()));
        }
        if !socle.is_normalized_by(std::slice::from_ref(&x)) {
            return Err(Error::NotNormalizing(x.to_string()));
        }
        let degenerate = socle
            .generators()
            .iter()
            .all(|s| s.then(&x) == x.then(s));
        let mut gens = socle.generators().to_vec();
        gens.push(x.clone());
        let ambient = PermGroup::from_generators(&gens)?;
        if !degenerate && !centralizer_is_trivial(&ambient, &socle)? {
            return Err(Error::InvariantViolation(
                "the socle has a nontrivial centralizer in the ambient group".into(),
            ));
        }
        Ok(Self {
            ambient,
            socle,
            x,
            degenerate,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn socle(&self) -> &PermGroup {
        &self.socle
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Same socle, different automorphism representative.
    pub fn with_x(&self, x: Permutation) -> Result<Self> {
        Self::new(self.socle.clone(), x)
    }
}

/// Whether `C_ambient(socle) = 1`. For a transitive socle the centralizer
/// in the full symmetric group is computed directly (an element commuting
/// with a transitive group is fixed by the image of one point); otherwise
/// the ambient group is enumerated.
fn centralizer_is_trivial(ambient: &PermGroup, socle: &PermGroup) -> Result<bool> {
    let n = socle.degree();
    let commutes = |c: &Permutation| socle.generators().iter().all(|s| s.then(c) == c.then(s));
    if socle.is_transitive() {
        // route[p] maps 0 to p
        let mut route: Vec<Option<Permutation>> = vec![None; n];
        route[0] = Some(Permutation::identity(n));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for s in socle.generators() {
                let q = s.apply(p);
                if route[q].is_none() {
                    route[q] = Some(route[p].as_ref().unwrap().then(s));
                    queue.push(q);
                }
            }
        }
        for delta in 1..n {
            let images: Vec<usize> = (0..n).map(|p| route[p].as_ref().unwrap().apply(delta)).collect();
            let Ok(c) = Permutation::from_images(images) else {
                continue;
            };
            if commutes(&c) && ambient.has(&c) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for g in ambient.elements(DEFAULT_ENUMERATION_CAP)? {
        if !g.is_identity() && commutes(&g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generic width search inside a context: conjugates of `ctx.x()` under the
/// socle.
pub fn min_width_search<P>(
    ctx: &AlmostSimpleContext,
    kind: WidthKind,
    predicate: &P,
    budget: &SearchBudget,
) -> Result<WidthResult>
where
    P: Fn(&PermGroup) -> bool + Sync + ?Sized,
{
    search_conjugates(kind, ctx.x(), ctx.socle(), predicate, budget, true)
}

/// The same search without fixing the first tuple entry. Used to cross-check
/// the pinned reduction.
pub fn min_width_search_unpinned<P>(
    ctx: &AlmostSimpleContext,
    kind: WidthKind,
    predicate: &P,
    budget: &SearchBudget,
) -> Result<WidthResult>
where
    P: Fn(&PermGroup) -> bool + Sync + ?Sized,
{
    search_conjugates(kind, ctx.x(), ctx.socle(), predicate, budget, false)
}

/// Predicate for `α`: the subgroup is all of `⟨x, L⟩`.
pub fn generates_ambient(ctx: &AlmostSimpleContext) -> impl Fn(&PermGroup) -> bool + Sync + '_ {
    move |h: &PermGroup| h.order() == ctx.ambient().order()
}

/// Predicate for `β_r`: the subgroup order is divisible by `r`.
pub fn order_divisible_by(r: u64) -> impl Fn(&PermGroup) -> bool + Sync {
    move |h: &PermGroup| h.order().divisible_by_prime(r)
}

/// Predicate for `BS_π^m` searches: the subgroup is not a π-group.
pub fn not_pi_group(pi: &PrimeSet) -> impl Fn(&PermGroup) -> bool + Sync + '_ {
    move |h: &PermGroup| !is_pi_group(h, pi)
}

/// `α(x, L)`: fewest `L`-conjugates of `x` generating `⟨x, L⟩`.
pub fn alpha(ctx: &AlmostSimpleContext, budget: &SearchBudget) -> Result<WidthResult> {
    if ctx.is_degenerate() {
        return Err(Error::DegenerateAutomorphism);
    }
    min_width_search(ctx, WidthKind::Alpha, &generates_ambient(ctx), budget)
}

/// `β_r(x, L)`: fewest `L`-conjugates of `x` generating a subgroup of order
/// divisible by `r`.
pub fn beta(ctx: &AlmostSimpleContext, r: u64, budget: &SearchBudget) -> Result<WidthResult> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if !ctx.socle().order().divisible_by_prime(r) {
        return Err(Error::RNotDividingOrder { r });
    }
    if ctx.is_degenerate() {
        return Err(Error::DegenerateAutomorphism);
    }
    min_width_search(ctx, WidthKind::Beta, &order_divisible_by(r), budget)
}

/// Per-class data of a `BS_π^m` computation.
#[derive(Clone, Debug, Serialize)]
pub struct ClassVerdict {
    #[serde(serialize_with = "ser_display")]
    pub representative: Permutation,
    pub class_size: usize,
    pub in_radical: bool,
    /// Fewest conjugates generating a non-π-group, when found within the
    /// width cap. `None` for radical elements and for elements all of whose
    /// capped tuples generate π-groups.
    pub non_pi_width: Option<usize>,
    /// Conjugates of the representative realizing `non_pi_width`.
    #[serde(serialize_with = "ser_display_vec")]
    pub witness_tuple: Vec<Permutation>,
    pub states_visited: usize,
    pub exhaustive: bool,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<S: serde::Serializer, T: std::fmt::Display>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct BsVerdict {
    pub m: usize,
    pub holds: bool,
    /// A class representative outside `O_π(G)` all of whose `m`-tuples of
    /// conjugates generate π-groups.
    #[serde(serialize_with = "ser_opt_display")]
    pub violating_element: Option<Permutation>,
    /// For a violation: the conjugates generating the largest π-subgroup the
    /// exhaustive search reached.
    #[serde(serialize_with = "ser_opt_display_vec")]
    pub witness_tuple: Option<Vec<Permutation>>,
    pub radical_order: FactoredInteger,
    pub classes: Vec<ClassVerdict>,
}

fn ser_opt_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(t) => s.collect_str(t),
        None => s.serialize_none(),
    }
}

fn ser_opt_display_vec<S: serde::Serializer, T: std::fmt::Display>(
    v: &Option<Vec<T>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(t) => s.collect_seq(t.iter().map(|x| x.to_string())),
        None => s.serialize_none(),
    }
}

/// Classifies every class representative of `group` by the fewest
/// conjugates generating a non-π-group, searching up to width `cap`.
fn classify_classes(
    group: &PermGroup,
    pi: &PrimeSet,
    cap: usize,
    budget: &SearchBudget,
) -> Result<(PermGroup, Vec<ClassVerdict>, Vec<WidthResult>)> {
    let radical = pi_radical(group, pi)?;
    let classes = conjugacy_classes(group, DEFAULT_ENUMERATION_CAP, DEFAULT_CLASS_CAP)?;
    let predicate = not_pi_group(pi);
    let search_budget = budget.with_max_width(cap);
    let mut verdicts = Vec::with_capacity(classes.len());
    let mut results = Vec::new();
    for class in &classes {
        let x = class.representative();
        if radical.has(x) {
            verdicts.push(ClassVerdict {
                representative: x.clone(),
                class_size: class.size(),
                in_radical: true,
                non_pi_width: None,
                witness_tuple: Vec::new(),
                states_visited: 0,
                exhaustive: true,
            });
            continue;
        }
        let res = search_conjugates(WidthKind::BsMembership, x, group, &predicate, &search_budget, true)?;
        let exhaustive = res.exhaustive;
        let (non_pi_width, witness_tuple) = match res.value {
            WidthValue::Exact(k) => (Some(k), res.tuple()),
            WidthValue::Unreachable => (None, Vec::new()),
            WidthValue::Unknown { no_success_up_to } if no_success_up_to >= cap && exhaustive => {
                (None, Vec::new())
            }
            WidthValue::Unknown { no_success_up_to } => {
                return Err(Error::BudgetExhausted(format!(
                    "class of {x}: no verdict beyond width {no_success_up_to}"
                )))
            }
        };
        if non_pi_width.is_none() && !exhaustive {
            return Err(Error::BudgetExhausted(format!(
                "class of {x} was sampled; cannot certify that all tuples are π"
            )));
        }
        verdicts.push(ClassVerdict {
            representative: x.clone(),
            class_size: class.size(),
            in_radical: false,
            non_pi_width,
            witness_tuple,
            states_visited: res.states_visited,
            exhaustive,
        });
        results.push(res);
    }
    Ok((radical, verdicts, results))
}

/// Decides whether `group ∈ BS_π^m`: the elements all of whose `m`
/// conjugates generate π-groups are exactly `O_π(G)`.
pub fn bs_membership(group: &PermGroup, pi: &PrimeSet, m: usize, budget: &SearchBudget) -> Result<BsVerdict> {
    if m == 0 {
        return Err(Error::InvariantViolation("m must be at least 1".into()));
    }
    let (radical, classes, results) = classify_classes(group, pi, m, budget)?;
    let violation = classes
        .iter()
        .position(|c| !c.in_radical && c.non_pi_width.is_none());
    let (violating_element, witness_tuple) = match violation {
        Some(i) => {
            let x = classes[i].representative.clone();
            let res = results.iter().find(|r| r.element == x).expect("searched");
            let tuple = res.largest_failure.as_ref().map(|(ls, _)| {
                ls.iter().map(|l| x.conjugate_by(l)).collect::<Vec<_>>()
            });
            (Some(x), tuple)
        }
        None => (None, None),
    };
    Ok(BsVerdict {
        m,
        holds: violating_element.is_none(),
        violating_element,
        witness_tuple,
        radical_order: radical.order().clone(),
        classes,
    })
}

/// The least `m` with `group ∈ BS_π^m`, computed as the largest non-π
/// width over class representatives outside `O_π(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct BsWidth {
    pub min_m: usize,
    pub radical_order: FactoredInteger,
    pub classes: Vec<ClassVerdict>,
    pub exhaustive: bool,
}

pub fn bs_width(group: &PermGroup, pi: &PrimeSet, budget: &SearchBudget) -> Result<BsWidth> {
    let (radical, classes, _) = classify_classes(group, pi, budget.max_width, budget)?;
    let mut min_m = 1;
    for c in classes.iter().filter(|c| !c.in_radical) {
        match c.non_pi_width {
            Some(k) => min_m = min_m.max(k),
            None => {
                return Err(Error::BudgetExhausted(format!(
                    "class of {} needs more than {} conjugates",
                    c.representative, budget.max_width
                )))
            }
        }
    }
    let exhaustive = classes.iter().all(|c| c.exhaustive);
    Ok(BsWidth {
        min_m,
        radical_order: radical.order().clone(),
        classes,
        exhaustive,
    })
}

/// Per-class data of a classical Baer–Suzuki check.
#[derive(Clone, Debug, Serialize)]
pub struct BaerSuzukiClass {
    #[serde(serialize_with = "ser_display")]
    pub representative: Permutation,
    pub in_radical: bool,
    pub all_pairs_p_groups: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaerSuzukiOutcome {
    pub p: u64,
    pub holds: bool,
    pub radical_order: FactoredInteger,
    pub classes: Vec<BaerSuzukiClass>,
}

/// Checks, for every class representative `x`, that `x ∈ O_p(G)` exactly
/// when `⟨x, y⟩` is a `p`-group for every conjugate `y` of `x`.
pub fn baer_suzuki_check(group: &PermGroup, p: u64) -> Result<BaerSuzukiOutcome> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pi = PrimeSet::finite([p])?;
    let radical = pi_radical(group, &pi)?;
    let classes = conjugacy_classes(group, DEFAULT_ENUMERATION_CAP, DEFAULT_CLASS_CAP)?;
    let mut out = Vec::with_capacity(classes.len());
    for class in &classes {
        let x = class.representative();
        let all_pairs = is_pi_number(&FactoredInteger::from_u64(x.order()), &pi)
            && class.members().iter().all(|y| {
                PermGroup::from_generators(&[x.clone(), y.clone()])
                    .map(|h| is_pi_group(&h, &pi))
                    .unwrap_or(false)
            });
        out.push(BaerSuzukiClass {
            representative: x.clone(),
            in_radical: radical.has(x),
            all_pairs_p_groups: all_pairs,
        });
    }
    Ok(BaerSuzukiOutcome {
        p,
        holds: out.iter().all(|c| c.in_radical == c.all_pairs_p_groups),
        radical_order: radical.order().clone(),
        classes: out,
    })
}

/// For `2 ∉ π`, every group lies in `BS_π^2`.
pub fn odd_pi_two_conjugates_check(group: &PermGroup, pi: &PrimeSet, budget: &SearchBudget) -> Result<bool> {
    if pi.contains(2) {
        return Err(Error::PiContainsTwo);
    }
    Ok(bs_membership(group, pi, 2, budget)?.holds)
}

/// Connected components of the graph on points whose edges are the given
/// transpositions. The generated group lies in the product of the symmetric
/// groups on the components; this is checked against its orbits.
pub fn transposition_graph(transpositions: &[Permutation], degree: usize) -> Result<Vec<Vec<usize>>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for t in transpositions {
        if t.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: t.degree(),
            });
        }
        if !t.is_transposition() {
            return Err(Error::NotATransposition(t.to_string()));
        }
        let pts = t.support();
        let (a, b) = (find(&mut parent, pts[0]), find(&mut parent, pts[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; degree];
    for p in 0..degree {
        let root = find(&mut parent, p);
        match slot[root] {
            Some(i) => components[i].push(p),
            None => {
                slot[root] = Some(components.len());
                components.push(vec![p]);
            }
        }
    }
    let generated = PermGroup::generated_by(degree, transpositions)?;
    for orbit in generated.orbits() {
        if !components.iter().any(|c| orbit.iter().all(|p| c.contains(p))) {
            return Err(Error::InvariantViolation(
                "generated orbits do not refine the graph components".into(),
            ));
        }
    }
    Ok(components)
}

/// Checks `β_r(x, L) ≤ β_r(x^e, L)`.
pub fn power_monotonicity_check(
    ctx: &AlmostSimpleContext,
    r: u64,
    e: i64,
    budget: &SearchBudget,
) -> Result<bool> {
    let y = ctx.x().pow(e);
    if y.is_identity() {
        return Err(Error::PowerIsIdentity(e));
    }
    let ctx_y = AlmostSimpleContext::new_degenerate(ctx.socle().clone(), y)?;
    let bx = beta(ctx, r, budget)?;
    let by = beta(&ctx_y, r, budget)?;
    match (bx.value, by.value) {
        (WidthValue::Exact(a), WidthValue::Exact(b)) if bx.exhaustive && by.exhaustive => Ok(a <= b),
        _ => Err(Error::BudgetExhausted("β not certified for both powers".into())),
    }
}
