//! Conjugacy classes, centralizers and the normal-subgroup machinery: the
//! π-core, the Fitting subgroup, components and the generalized Fitting
//! subgroup, plus Hall-subgroup detection.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::primes::PrimeSet;

/// Default cap on the number of distinct normal subgroups enumerated.
pub const NORMAL_LATTICE_CAP: usize = 10_000;

/// Default number of generators tried by [`find_hall_subgroup`].
pub const DEFAULT_HALL_MAX_GENS: usize = 3;

/// Upper bound on subgroup constructions in one Hall search.
const HALL_SEARCH_BUDGET: usize = 50_000;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    /// Index of the representative in the parent's element table.
    pub rep_index: usize,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug)]
pub struct ClassDecomposition {
    pub classes: Vec<ConjugacyClass>,
    pub parent_order: u64,
    class_of: Vec<u32>,
}

impl ClassDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of the element with the given table index.
    pub fn class_of(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Element-table indices of the members of class `c`.
    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k as usize == c)
            .map(|(i, _)| i)
    }
}

/// A subgroup together with cached structural flags.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: PermGroup,
    parent_order: u64,
    is_normal: bool,
    is_abelian: bool,
    prime_support: PrimeSet,
}

impl Subgroup {
    /// Wraps `group`, testing normality by conjugating its generators with the
    /// parent's generators.
    pub fn new(parent: &PermGroup, group: PermGroup) -> Result<Self> {
        if !group.is_subgroup_of(parent) {
            return Err(Error::InvalidArgument(
                "subgroup generator outside parent".into(),
            ));
        }
        let is_normal = is_normalized_by(&group, parent.nontrivial_generators());
        Ok(Self::with_normality(parent, group, is_normal))
    }

    fn with_normality(parent: &PermGroup, group: PermGroup, is_normal: bool) -> Self {
        Subgroup {
            is_abelian: group.is_abelian(),
            prime_support: group.prime_support(),
            parent_order: parent.order(),
            is_normal,
            group,
        }
    }

    fn normal(parent: &PermGroup, group: PermGroup) -> Self {
        debug_assert!(is_normalized_by(&group, parent.nontrivial_generators()));
        Self::with_normality(parent, group, true)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn parent_order(&self) -> u64 {
        self.parent_order
    }

    pub fn index(&self) -> u64 {
        self.parent_order / self.order()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn prime_support(&self) -> &PrimeSet {
        &self.prime_support
    }

    /// Whether the order is a π-number.
    pub fn is_pi_group(&self, pi: &PrimeSet) -> bool {
        pi.is_pi_number(self.order())
    }

    /// Whether the order is coprime to every prime of π.
    pub fn is_pi_prime_group(&self, pi: &PrimeSet) -> bool {
        pi.is_pi_prime_number(self.order())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.group.contains(g)
    }
}

fn is_normalized_by<'a>(
    group: &PermGroup,
    conjugators: impl Iterator<Item = &'a Permutation>,
) -> bool {
    let gens: Vec<&Permutation> = group.nontrivial_generators().collect();
    conjugators.into_iter().all(|s| {
        gens.iter()
            .all(|h| group.contains_unchecked(&h.conjugate_by(s)))
    })
}

/// Lazily computed structure attached to each group.
#[derive(Default)]
pub(crate) struct StructureCache {
    classes: OnceLock<ClassDecomposition>,
    centralizers: OnceLock<Vec<Vec<u32>>>,
    class_closures: OnceLock<Vec<PermGroup>>,
    normal_lattice: OnceLock<Result<Vec<Subgroup>>>,
    fitting: OnceLock<Result<Subgroup>>,
    components: OnceLock<Result<Vec<Subgroup>>>,
    generalized_fitting: OnceLock<Result<Subgroup>>,
}

pub fn conjugacy_classes(g: &PermGroup) -> Result<&ClassDecomposition> {
    let table = g.element_table()?;
    Ok(g.cache().classes.get_or_init(|| {
        let gens: Vec<&Permutation> = g.nontrivial_generators().collect();
        let n = table.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            stack.push(start);
            let mut size = 0u64;
            while let Some(j) = stack.pop() {
                size += 1;
                for s in &gens {
                    let k = table
                        .index_of(&table.get(j).conjugate_by(s))
                        .expect("conjugate stays in the group");
                    if class_of[k] == u32::MAX {
                        class_of[k] = id;
                        stack.push(k);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: table.get(start).clone(),
                rep_index: start,
                size,
                element_order: table.order_of(start),
            });
        }
        ClassDecomposition {
            classes,
            parent_order: g.order(),
            class_of,
        }
    }))
}

/// For each class, the table indices of the centralizer of its representative.
pub(crate) fn class_centralizers(g: &PermGroup) -> Result<&Vec<Vec<u32>>> {
    let classes = conjugacy_classes(g)?;
    let table = g.element_table()?;
    Ok(g.cache().centralizers.get_or_init(|| {
        if g.is_abelian() {
            let all: Vec<u32> = (0..table.len() as u32).collect();
            return vec![all; classes.len()];
        }
        classes
            .classes
            .iter()
            .map(|c| {
                let x = &c.representative;
                table
                    .elements()
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| x.commutes_with(y))
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect()
    }))
}

pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<Subgroup> {
    g.require_member(x)?;
    let table = g.element_table()?;
    let h = g.subgroup_from_elements(table.elements().iter().filter(|y| x.commutes_with(y)));
    Subgroup::new(g, h)
}

pub fn center(g: &PermGroup) -> Result<Subgroup> {
    let table = g.element_table()?;
    let gens: Vec<&Permutation> = g.nontrivial_generators().collect();
    let z = g.subgroup_from_elements(
        table
            .elements()
            .iter()
            .filter(|y| gens.iter().all(|s| s.commutes_with(y))),
    );
    Ok(Subgroup::normal(g, z))
}

pub fn normal_closure(g: &PermGroup, elems: &[Permutation]) -> Result<Subgroup> {
    for e in elems {
        g.require_member(e)?;
    }
    Ok(Subgroup::normal(g, normal_closure_unchecked(g, elems)))
}

fn normal_closure_unchecked(g: &PermGroup, elems: &[Permutation]) -> PermGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut h = g.subgroup(Vec::new());
    for e in elems {
        if !h.contains_unchecked(e) {
            gens.push(e.clone());
            h = g.subgroup(gens.clone());
        }
    }
    let conjugators: Vec<Permutation> = g.nontrivial_generators().cloned().collect();
    let mut i = 0;
    while i < gens.len() {
        for s in &conjugators {
            let c = gens[i].conjugate_by(s);
            if !h.contains_unchecked(&c) {
                gens.push(c);
                h = g.subgroup(gens.clone());
            }
        }
        i += 1;
    }
    h
}

/// Normal closure of each class representative, in class order.
pub(crate) fn class_closures(g: &PermGroup) -> Result<&Vec<PermGroup>> {
    let classes = conjugacy_classes(g)?;
    Ok(g.cache().class_closures.get_or_init(|| {
        classes
            .classes
            .iter()
            .map(|c| normal_closure_unchecked(g, std::slice::from_ref(&c.representative)))
            .collect()
    }))
}

/// The natural map from a group onto its quotient by a normal subgroup,
/// realised as the action on cosets.
pub struct QuotientMap {
    source: PermGroup,
    target: PermGroup,
    /// `None` when the kernel is trivial and the map is the identity.
    cosets: Option<CosetData>,
}

struct CosetData {
    coset_of: Vec<u32>,
    reps: Vec<usize>,
}

impl QuotientMap {
    pub fn new(g: &PermGroup, n: &PermGroup) -> Result<Self> {
        if !n.is_subgroup_of(g) || !is_normalized_by(n, g.nontrivial_generators()) {
            return Err(Error::NotNormal);
        }
        if n.is_trivial() {
            return Ok(QuotientMap {
                source: g.clone(),
                target: g.clone(),
                cosets: None,
            });
        }
        let table = g.element_table()?;
        let kernel: Vec<Permutation> = n.elements()?.cloned().collect();
        let mut coset_of = vec![u32::MAX; table.len()];
        let mut reps = Vec::new();
        for i in 0..table.len() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            let gi = table.get(i);
            for k in &kernel {
                let j = table.index_of(&gi.mul(k)).expect("coset element in group");
                coset_of[j] = c;
            }
        }
        let cosets = CosetData { coset_of, reps };
        let images: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|s| coset_image(table, &cosets, s))
            .collect();
        let target = PermGroup::build(cosets.reps.len(), images, g.enumeration_limit());
        Ok(QuotientMap {
            source: g.clone(),
            target,
            cosets: Some(cosets),
        })
    }

    pub fn quotient(&self) -> &PermGroup {
        &self.target
    }

    /// Image of an element of the source group.
    pub fn image(&self, x: &Permutation) -> Result<Permutation> {
        self.source.require_member(x)?;
        Ok(match &self.cosets {
            None => x.clone(),
            Some(c) => coset_image(self.source.element_table()?, c, x),
        })
    }
}

fn coset_image(
    table: &crate::group::ElementTable,
    cosets: &CosetData,
    x: &Permutation,
) -> Permutation {
    let images = cosets
        .reps
        .iter()
        .map(|&r| {
            let j = table
                .index_of(&table.get(r).mul(x))
                .expect("product in group");
            cosets.coset_of[j]
        })
        .collect();
    Permutation::from_images(images).expect("coset action is a permutation")
}

pub fn quotient(g: &PermGroup, n: &Subgroup) -> Result<PermGroup> {
    Ok(QuotientMap::new(g, n.group())?.target)
}

pub fn derived_subgroup(g: &PermGroup) -> Result<Subgroup> {
    let gens: Vec<&Permutation> = g.nontrivial_generators().collect();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    Ok(Subgroup::normal(
        g,
        normal_closure_unchecked(g, &commutators),
    ))
}

/// Last term of the derived series.
pub fn perfect_core(g: &PermGroup) -> Result<PermGroup> {
    let mut current = g.clone();
    loop {
        let d = derived_subgroup(&current)?.into_group();
        if d.order() == current.order() {
            return Ok(current);
        }
        current = d;
    }
}

pub fn is_simple(g: &PermGroup) -> Result<bool> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    if crate::primes::is_prime(g.order()) {
        return Ok(true);
    }
    let classes = conjugacy_classes(g)?;
    let closures = class_closures(g)?;
    Ok(classes
        .classes
        .iter()
        .zip(closures)
        .filter(|(c, _)| !c.representative.is_identity())
        .all(|(_, n)| n.order() == g.order()))
}

/// Perfect with simple central quotient.
pub fn is_quasisimple(g: &PermGroup) -> Result<bool> {
    if g.is_trivial() || derived_subgroup(g)?.order() != g.order() {
        return Ok(false);
    }
    let z = center(g)?;
    let q = quotient(g, &z)?;
    if q.is_trivial() {
        return Ok(false);
    }
    is_simple(&q)
}

/// Which classes a normal subgroup contains.
fn class_mask(classes: &ClassDecomposition, n: &PermGroup) -> Vec<bool> {
    classes
        .classes
        .iter()
        .map(|c| n.contains_unchecked(&c.representative))
        .collect()
}

/// All normal subgroups, ordered by order and then by class membership.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    g.cache()
        .normal_lattice
        .get_or_init(|| normal_subgroups_with_cap(g, NORMAL_LATTICE_CAP))
        .clone()
}

/// Normal subgroups as joins of class normal closures, found breadth-first.
pub fn normal_subgroups_with_cap(g: &PermGroup, cap: usize) -> Result<Vec<Subgroup>> {
    let classes = conjugacy_classes(g)?;
    let closures = class_closures(g)?;
    let mut found: HashMap<Vec<bool>, PermGroup> = HashMap::new();
    let mut queue: Vec<Vec<bool>> = Vec::new();
    let mut atoms: Vec<(Vec<bool>, PermGroup)> = Vec::new();

    let trivial = g.subgroup(Vec::new());
    let mask = class_mask(classes, &trivial);
    found.insert(mask.clone(), trivial);
    queue.push(mask);
    for n in closures {
        let mask = class_mask(classes, n);
        if !found.contains_key(&mask) {
            found.insert(mask.clone(), n.clone());
            queue.push(mask.clone());
            atoms.push((mask, n.clone()));
        }
    }
    if found.len() > cap {
        return Err(Error::NormalLatticeTooLarge { cap });
    }

    let mut head = 0;
    while head < queue.len() {
        let mask = queue[head].clone();
        head += 1;
        let base = found[&mask].clone();
        for (atom_mask, atom) in &atoms {
            if atom_mask.iter().zip(&mask).all(|(a, m)| !a || *m) {
                continue;
            }
            let join = g.subgroup_from_elements(
                base.nontrivial_generators()
                    .chain(atom.nontrivial_generators()),
            );
            let join_mask = class_mask(classes, &join);
            if !found.contains_key(&join_mask) {
                found.insert(join_mask.clone(), join);
                queue.push(join_mask);
                if found.len() > cap {
                    return Err(Error::NormalLatticeTooLarge { cap });
                }
            }
        }
    }

    let mut out: Vec<(Vec<bool>, PermGroup)> = found.into_iter().collect();
    out.sort_by(|(ma, a), (mb, b)| a.order().cmp(&b.order()).then_with(|| mb.cmp(ma)));
    Ok(out
        .into_iter()
        .map(|(_, n)| Subgroup::normal(g, n))
        .collect())
}

/// Largest normal π-subgroup, as the join of the normal closures of class
/// representatives whose closure is a π-group.
pub fn o_pi_core(g: &PermGroup, pi: &PrimeSet) -> Result<Subgroup> {
    let classes = conjugacy_classes(g)?;
    let closures = class_closures(g)?;
    let gens: Vec<&Permutation> = classes
        .classes
        .iter()
        .zip(closures)
        .filter(|(c, n)| !c.representative.is_identity() && pi.is_pi_number(n.order()))
        .flat_map(|(_, n)| n.nontrivial_generators())
        .collect();
    Ok(Subgroup::normal(g, g.subgroup_from_elements(gens)))
}

/// Join of the p-cores over the primes dividing the order.
pub fn fitting(g: &PermGroup) -> Result<Subgroup> {
    g.cache()
        .fitting
        .get_or_init(|| {
            let mut gens = Vec::new();
            let mut product = 1u64;
            for p in g.prime_support().primes() {
                let core = o_pi_core(g, &PrimeSet::new([*p]).expect("prime"))?;
                product *= core.order();
                gens.extend(core.group().nontrivial_generators().cloned());
            }
            let f = g.subgroup_from_elements(&gens);
            if f.order() != product {
                return Err(Error::Internal(format!(
                    "Fitting subgroup order {} is not the product {product} of its p-cores",
                    f.order()
                )));
            }
            Ok(Subgroup::normal(g, f))
        })
        .clone()
}

/// Subnormal quasisimple subgroups.
pub fn components(g: &PermGroup) -> Result<Vec<Subgroup>> {
    g.cache()
        .components
        .get_or_init(|| {
            let mut out: Vec<PermGroup> = Vec::new();
            collect_components(g, &mut out)?;
            out.into_iter()
                .map(|c| Subgroup::new(g, c))
                .collect::<Result<Vec<_>>>()
        })
        .clone()
}

fn collect_components(g: &PermGroup, out: &mut Vec<PermGroup>) -> Result<()> {
    // Components are perfect, so they lie in the perfect core, and are exactly
    // the components of the perfect core.
    let core = perfect_core(g)?;
    if core.is_trivial() {
        return Ok(());
    }
    if is_quasisimple(&core)? {
        if !out.iter().any(|c| c.same_elements(&core)) {
            out.push(core);
        }
        return Ok(());
    }
    let lattice = normal_subgroups(&core)?;
    let proper: Vec<&Subgroup> = lattice
        .iter()
        .filter(|n| !n.is_trivial() && n.order() != core.order())
        .collect();
    // Every proper normal subgroup sits inside a maximal one.
    for n in &proper {
        let maximal = !proper
            .iter()
            .any(|m| m.order() > n.order() && n.group().is_subgroup_of(m.group()));
        if maximal {
            collect_components(n.group(), out)?;
        }
    }
    Ok(())
}

/// The join of the Fitting subgroup and all components. Fails if the result
/// does not contain its own centralizer.
pub fn generalized_fitting(g: &PermGroup) -> Result<Subgroup> {
    g.cache()
        .generalized_fitting
        .get_or_init(|| {
            let f = fitting(g)?;
            let comps = components(g)?;
            let gens: Vec<&Permutation> = f
                .group()
                .nontrivial_generators()
                .chain(comps.iter().flat_map(|c| c.group().nontrivial_generators()))
                .collect();
            let fstar = g.subgroup_from_elements(gens);
            let fgens: Vec<&Permutation> = fstar.nontrivial_generators().collect();
            let table = g.element_table()?;
            let escaped = table
                .elements()
                .iter()
                .find(|y| fgens.iter().all(|s| s.commutes_with(y)) && !fstar.contains_unchecked(y));
            if let Some(y) = escaped {
                return Err(Error::Internal(format!(
                    "{y} centralizes the generalized Fitting subgroup but lies outside it"
                )));
            }
            Ok(Subgroup::normal(g, fstar))
        })
        .clone()
}

pub fn has_normal_hall(g: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    Ok(o_pi_core(g, pi)?.order() == pi.part_of(g.order()))
}

/// Searches for a Hall π-subgroup generated by at most `max_gens` π-elements.
/// `None` does not prove that no Hall π-subgroup exists.
pub fn find_hall_subgroup(
    g: &PermGroup,
    pi: &PrimeSet,
    max_gens: usize,
) -> Result<Option<Subgroup>> {
    if max_gens == 0 {
        return Err(Error::InvalidArgument("max_gens must be at least 1".into()));
    }
    let target = pi.part_of(g.order());
    if target == 1 {
        return Ok(Some(Subgroup::new(g, g.subgroup(Vec::new()))?));
    }
    let table = g.element_table()?;
    let classes = conjugacy_classes(g)?;
    let reps: Vec<usize> = classes
        .classes
        .iter()
        .filter(|c| c.element_order > 1 && pi.is_pi_number(c.element_order))
        .map(|c| c.rep_index)
        .collect();
    let all: Vec<usize> = (0..table.len())
        .filter(|&i| table.order_of(i) > 1 && table.is_pi_element(i, pi))
        .collect();

    struct Search<'a> {
        g: &'a PermGroup,
        table: &'a crate::group::ElementTable,
        target: u64,
        max_gens: usize,
        budget: usize,
    }

    impl Search<'_> {
        fn run(
            &mut self,
            gens: &mut Vec<Permutation>,
            current: &PermGroup,
            candidates: &[usize],
            rest: &[usize],
        ) -> Option<PermGroup> {
            if current.order() == self.target {
                return Some(current.clone());
            }
            if gens.len() == self.max_gens {
                return None;
            }
            for &c in candidates {
                if self.budget == 0 {
                    return None;
                }
                let e = self.table.get(c);
                if current.contains_unchecked(e) {
                    continue;
                }
                gens.push(e.clone());
                let h = self.g.subgroup(gens.clone());
                self.budget -= 1;
                if self.target.is_multiple_of(h.order()) {
                    if let Some(found) = self.run(gens, &h, rest, rest) {
                        return Some(found);
                    }
                }
                gens.pop();
            }
            None
        }
    }

    let mut search = Search {
        g,
        table,
        target,
        max_gens,
        budget: HALL_SEARCH_BUDGET,
    };
    let start = g.subgroup(Vec::new());
    search
        .run(&mut Vec::new(), &start, &reps, &all)
        .map(|h| Subgroup::new(g, h))
        .transpose()
}
