//! Permutation groups given by generators, backed by a stabilizer chain.

mod chain;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use chain::StabChain;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::primes::{prime_factors, PrimeSet};
use crate::structure::{ClassDecomposition, StructureCache};

/// Default bound on the number of elements a group may be enumerated with.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

/// All elements of an enumerated group with an index lookup and element
/// orders.
pub struct ElementTable {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    orders: Vec<u64>,
}

impl ElementTable {
    fn new(elems: Vec<Permutation>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let orders = elems.iter().map(Permutation::element_order).collect();
        ElementTable {
            elems,
            index,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn is_pi_element(&self, i: usize, pi: &PrimeSet) -> bool {
        pi.is_pi_number(self.orders[i])
    }
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    limit: u64,
    table: OnceLock<ElementTable>,
    pub(crate) structure: StructureCache,
}

/// A finite permutation group. Cloning is cheap and shares lazily computed
/// data (element table, classes, normal lattice).
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        for g in gens {
            first.check_degree(g)?;
        }
        Ok(Self::build(
            first.degree(),
            gens.to_vec(),
            DEFAULT_ENUMERATION_LIMIT,
        ))
    }

    /// Group generated by `gens` on `degree` points; the trivial group when
    /// `gens` is empty.
    pub(crate) fn build(degree: usize, gens: Vec<Permutation>, limit: u64) -> Self {
        let generators = if gens.is_empty() {
            vec![Permutation::identity_unchecked(degree)]
        } else {
            gens
        };
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators,
                chain,
                order,
                limit,
                table: OnceLock::new(),
                structure: StructureCache::default(),
            }),
        }
    }

    /// A subgroup on the same points with the same enumeration limit.
    pub(crate) fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup::build(self.degree(), gens, self.enumeration_limit())
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::from_generators(&[Permutation::identity(degree)?])
    }

    /// Same group with a different enumeration limit (fresh caches).
    pub fn with_enumeration_limit(&self, limit: u64) -> PermGroup {
        PermGroup::build(self.degree(), self.inner.generators.clone(), limit)
    }

    pub fn enumeration_limit(&self) -> u64 {
        self.inner.limit
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    /// Generators with identities removed.
    pub(crate) fn nontrivial_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.inner.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.chain.base()
    }

    /// Fundamental orbit lengths of the stabilizer chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.inner
            .chain
            .levels
            .iter()
            .map(|l| l.orbit.len())
            .collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity_unchecked(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn prime_support(&self) -> PrimeSet {
        PrimeSet::new(prime_factors(self.order())).expect("prime factors are prime")
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: g.degree(),
            });
        }
        Ok(self.contains_unchecked(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        if let Some(t) = self.inner.table.get() {
            return t.index_of(g).is_some();
        }
        self.inner.chain.contains(g)
    }

    pub(crate) fn require_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g)? {
            Ok(())
        } else {
            Err(Error::NotInGroup(g.to_string()))
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<&Permutation> = self.nontrivial_generators().collect();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && self.order() <= other.order()
            && self
                .nontrivial_generators()
                .all(|g| other.contains_unchecked(g))
    }

    /// Equality as element sets.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether the group is small enough to enumerate under its limit.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.order() > self.inner.limit {
            Err(Error::TooLargeToEnumerate {
                order: self.order(),
                limit: self.inner.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn element_table(&self) -> Result<&ElementTable> {
        self.check_enumerable()?;
        Ok(self
            .inner
            .table
            .get_or_init(|| ElementTable::new(self.inner.chain.enumerate())))
    }

    /// All elements, each exactly once, in a deterministic order.
    pub fn elements(&self) -> Result<impl Iterator<Item = &Permutation>> {
        Ok(self.element_table()?.elements().iter())
    }

    pub fn conjugacy_classes(&self) -> Result<&ClassDecomposition> {
        crate::structure::conjugacy_classes(self)
    }

    pub(crate) fn cache(&self) -> &StructureCache {
        &self.inner.structure
    }

    /// Smallest subgroup containing `elems`, built by adding only elements not
    /// already generated.
    pub(crate) fn subgroup_from_elements<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a Permutation>,
    ) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = self.subgroup(Vec::new());
        for e in elems {
            if !current.contains_unchecked(e) {
                gens.push(e.clone());
                current = self.subgroup(gens.clone());
            }
        }
        current
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}
