//! Exact π-indexed invariants: π-element sets, commuting probabilities,
//! d_π, centralizer fractions, fixed point ratios and the threshold
//! `(p² + p − 1)/p³`.
//!
//! Conventions for the empty prime set: `G_∅ = {1}`, `Pr_∅ = 1`, `d_∅ = 1`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::primes::{is_prime, PrimeSet};
use crate::ratio::ExactRatio;
use crate::structure::{class_centralizers, conjugacy_classes, Subgroup};

pub use crate::primes::{euler_phi, pi_part};

/// A set of π-elements drawn from a group, in the group's iteration order.
#[derive(Clone, Debug)]
pub struct PiElementSet {
    pub pi: PrimeSet,
    pub members: Vec<Permutation>,
}

impl PiElementSet {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }
}

pub fn pi_elements(g: &PermGroup, pi: &PrimeSet) -> Result<PiElementSet> {
    let table = g.element_table()?;
    let members = (0..table.len())
        .filter(|&i| table.is_pi_element(i, pi))
        .map(|i| table.get(i).clone())
        .collect();
    Ok(PiElementSet {
        pi: pi.clone(),
        members,
    })
}

/// π-elements of the coset `Ky`.
pub fn coset_pi_elements(
    g: &PermGroup,
    k: &Subgroup,
    y: &Permutation,
    pi: &PrimeSet,
) -> Result<PiElementSet> {
    g.require_member(y)?;
    if !k.group().is_subgroup_of(g) {
        return Err(Error::InvalidArgument("K is not a subgroup of G".into()));
    }
    let members = k
        .group()
        .elements()?
        .map(|c| c.mul(y))
        .filter(|z| pi.is_pi_number(z.element_order()))
        .collect();
    Ok(PiElementSet {
        pi: pi.clone(),
        members,
    })
}

/// Per-class counts needed by the π-invariants of one group.
pub(crate) struct PiProfile {
    /// `|G_π|`.
    pub pi_count: u64,
    /// For each class: whether it consists of π-elements.
    pub is_pi_class: Vec<bool>,
    /// For each class: `|C_G(rep)_π|`.
    pub centralizer_pi: Vec<u64>,
}

pub(crate) fn pi_profile(g: &PermGroup, pi: &PrimeSet) -> Result<PiProfile> {
    let table = g.element_table()?;
    let classes = conjugacy_classes(g)?;
    let cents = class_centralizers(g)?;
    let is_pi_class: Vec<bool> = classes
        .classes
        .iter()
        .map(|c| pi.is_pi_number(c.element_order))
        .collect();
    let pi_count = classes
        .classes
        .iter()
        .zip(&is_pi_class)
        .filter(|(_, &b)| b)
        .map(|(c, _)| c.size)
        .sum();
    let centralizer_pi = cents
        .iter()
        .map(|idx| {
            idx.iter()
                .filter(|&&i| table.is_pi_element(i as usize, pi))
                .count() as u64
        })
        .collect();
    Ok(PiProfile {
        pi_count,
        is_pi_class,
        centralizer_pi,
    })
}

/// `Pr(G)`, computed as commuting pairs over `|G|²` (pairs counted per class
/// from explicit centralizers) and as `k(G)/|G|`; the two must agree.
pub fn commuting_probability(g: &PermGroup) -> Result<ExactRatio> {
    let classes = conjugacy_classes(g)?;
    let cents = class_centralizers(g)?;
    let pairs: u128 = classes
        .classes
        .iter()
        .zip(cents)
        .map(|(c, cent)| c.size as u128 * cent.len() as u128)
        .sum();
    let n = g.order() as u128;
    let by_pairs = ExactRatio::new(pairs, n * n);
    let by_classes = ExactRatio::new(classes.len() as u128, n);
    if by_pairs != by_classes {
        return Err(Error::Internal(format!(
            "pair count gives {by_pairs}, class count gives {by_classes}"
        )));
    }
    Ok(by_pairs)
}

/// Ordered pairs of commuting π-elements, summed class by class.
pub fn commuting_pi_pairs(g: &PermGroup, pi: &PrimeSet) -> Result<u128> {
    let classes = conjugacy_classes(g)?;
    let prof = pi_profile(g, pi)?;
    Ok(classes
        .classes
        .iter()
        .enumerate()
        .filter(|(i, _)| prof.is_pi_class[*i])
        .map(|(i, c)| c.size as u128 * prof.centralizer_pi[i] as u128)
        .sum())
}

pub fn pr_pi(g: &PermGroup, pi: &PrimeSet) -> Result<ExactRatio> {
    if pi.is_empty() {
        return Ok(ExactRatio::one());
    }
    let pairs = commuting_pi_pairs(g, pi)?;
    let n = pi_profile(g, pi)?.pi_count as u128;
    Ok(ExactRatio::new(pairs, n * n))
}

/// Reference double loop over `G_π × G_π`.
pub fn pr_pi_naive(g: &PermGroup, pi: &PrimeSet) -> Result<ExactRatio> {
    let elems: Vec<&Permutation> = g
        .elements()?
        .filter(|x| pi.is_pi_number(x.element_order()))
        .collect();
    let mut pairs = 0u128;
    for x in &elems {
        pairs += elems.iter().filter(|y| x.commutes_with(y)).count() as u128;
    }
    let n = elems.len() as u128;
    Ok(ExactRatio::new(pairs, n * n))
}

/// Number of classes of π-elements.
pub fn k_pi(g: &PermGroup, pi: &PrimeSet) -> Result<u64> {
    Ok(conjugacy_classes(g)?
        .classes
        .iter()
        .filter(|c| pi.is_pi_number(c.element_order))
        .count() as u64)
}

pub fn d_pi(g: &PermGroup, pi: &PrimeSet) -> Result<ExactRatio> {
    Ok(ExactRatio::new(
        k_pi(g, pi)? as u128,
        pi.part_of(g.order()) as u128,
    ))
}

/// `|C_G(x)_π| / |G_π|`, read from the class of `x`.
pub fn centralizer_pi_fraction(
    g: &PermGroup,
    x: &Permutation,
    pi: &PrimeSet,
) -> Result<ExactRatio> {
    g.require_member(x)?;
    if !pi.is_pi_number(x.element_order()) {
        return Err(Error::NotAPiElement(x.to_string()));
    }
    let table = g.element_table()?;
    let idx = table.index_of(x).expect("member has an index");
    let class = conjugacy_classes(g)?.class_of(idx);
    let prof = pi_profile(g, pi)?;
    Ok(ExactRatio::new(
        prof.centralizer_pi[class] as u128,
        prof.pi_count as u128,
    ))
}

/// Reference computation by scanning all elements.
pub fn centralizer_pi_fraction_naive(
    g: &PermGroup,
    x: &Permutation,
    pi: &PrimeSet,
) -> Result<ExactRatio> {
    let mut total = 0u128;
    let mut commuting = 0u128;
    for y in g.elements()? {
        if pi.is_pi_number(y.element_order()) {
            total += 1;
            if x.compose(y)? == y.compose(x)? {
                commuting += 1;
            }
        }
    }
    Ok(ExactRatio::new(commuting, total))
}

/// A finite set acted on by group elements.
pub enum ActionDomain<'a> {
    /// Conjugation `ω ↦ z⁻¹ ω z` on a set closed under it, such as `G_π`.
    Conjugation(&'a PiElementSet),
    /// Right multiplication on the right cosets `Hg` of `subgroup` in `group`.
    Cosets {
        group: &'a PermGroup,
        subgroup: &'a PermGroup,
    },
}

pub fn fixed_point_ratio(z: &Permutation, domain: &ActionDomain<'_>) -> Result<ExactRatio> {
    match domain {
        ActionDomain::Conjugation(set) => {
            if set.members.is_empty() {
                return Err(Error::EmptyDomain);
            }
            let fixed = set.members.iter().filter(|w| w.commutes_with(z)).count();
            Ok(ExactRatio::new(fixed as u128, set.members.len() as u128))
        }
        ActionDomain::Cosets { group, subgroup } => {
            group.require_member(z)?;
            if !subgroup.is_subgroup_of(group) {
                return Err(Error::InvalidArgument("H is not a subgroup of G".into()));
            }
            let table = group.element_table()?;
            // Hg is fixed by z iff g z g⁻¹ ∈ H.
            let mut seen = vec![false; table.len()];
            let h_elems: Vec<Permutation> = subgroup.elements()?.cloned().collect();
            let (mut cosets, mut fixed) = (0u128, 0u128);
            for i in 0..table.len() {
                if seen[i] {
                    continue;
                }
                let gi = table.get(i);
                for h in &h_elems {
                    seen[table.index_of(&h.mul(gi)).expect("coset in group")] = true;
                }
                cosets += 1;
                if subgroup.contains_unchecked(&gi.mul(z).mul(&gi.inverse())) {
                    fixed += 1;
                }
            }
            Ok(ExactRatio::new(fixed, cosets))
        }
    }
}

/// `(p² + p − 1) / p³`.
pub fn threshold(p: u64) -> Result<ExactRatio> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as u128;
    Ok(ExactRatio::new(p * p + p - 1, p * p * p))
}

/// Elements generating a conjugate of `⟨x⟩`: the union of the classes of the
/// generators `x^k`, `gcd(k, o(x)) = 1`. Tagged with the primes of `o(x)`.
pub fn d_set(g: &PermGroup, x: &Permutation) -> Result<PiElementSet> {
    g.require_member(x)?;
    if x.is_identity() {
        return Err(Error::IdentityElement);
    }
    let table = g.element_table()?;
    let classes = conjugacy_classes(g)?;
    let order = x.element_order();
    let mut wanted = vec![false; classes.len()];
    for k in (1..order).filter(|k| k.gcd(&order) == 1) {
        let idx = table.index_of(&x.pow(k)).expect("power in group");
        wanted[classes.class_of(idx)] = true;
    }
    let members = (0..table.len())
        .filter(|&i| wanted[classes.class_of(i)])
        .map(|i| table.get(i).clone())
        .collect();
    Ok(PiElementSet {
        pi: PrimeSet::of(order),
        members,
    })
}
