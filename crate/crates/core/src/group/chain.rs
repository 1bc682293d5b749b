//! Deterministic Schreier–Sims stabilizer chains.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: u32,
    /// Orbit of the base point in discovery order; `orbit[0]` is the base point.
    pub orbit: Vec<u32>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
}

impl Level {
    pub fn coset_rep(&self, point: u32) -> Option<&Permutation> {
        self.transversal[point as usize].as_ref()
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
    strong: Vec<Permutation>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        for g in generators {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.strong.push(g.clone());
            }
        }
        chain.build();
        chain
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    pub fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(level.base_point);
            match &level.inverse_transversal[b as usize] {
                Some(inv) => h = h.mul(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, level) = self.strip(g, 0);
        level == self.levels.len() && residue.is_identity()
    }

    fn fixes_base_prefix(&self, g: &Permutation, len: usize) -> bool {
        self.levels[..len]
            .iter()
            .all(|l| g.image(l.base_point) == l.base_point)
    }

    fn level_generators(&self, i: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|s| self.fixes_base_prefix(s, i))
            .collect()
    }

    fn push_level(&mut self, base_point: u32) {
        self.levels.push(Level {
            base_point,
            orbit: Vec::new(),
            transversal: Vec::new(),
            inverse_transversal: Vec::new(),
        });
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Permutation> = self.level_generators(i).into_iter().cloned().collect();
        let degree = self.degree;
        let level = &mut self.levels[i];
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        let beta = level.base_point;
        transversal[beta as usize] = Some(Permutation::identity_unchecked(degree));
        let mut orbit = vec![beta];
        let mut head = 0;
        while head < orbit.len() {
            let b = orbit[head];
            head += 1;
            for s in &gens {
                let c = s.image(b);
                if transversal[c as usize].is_none() {
                    let rep = transversal[b as usize].as_ref().unwrap().mul(s);
                    transversal[c as usize] = Some(rep);
                    orbit.push(c);
                }
            }
        }
        level.inverse_transversal = transversal
            .iter()
            .map(|t| t.as_ref().map(Permutation::inverse))
            .collect();
        level.transversal = transversal;
        level.orbit = orbit;
    }

    fn build(&mut self) {
        if self.strong.is_empty() {
            return;
        }
        let strong = self.strong.clone();
        for s in &strong {
            if self.fixes_base_prefix(s, self.levels.len()) {
                let pt = s.smallest_moved_point().expect("non-identity generator");
                self.push_level(pt);
            }
        }
        for i in 0..self.levels.len() {
            self.rebuild_orbit(i);
        }

        let mut i = self.levels.len() as isize - 1;
        'levels: while i >= 0 {
            let lvl = i as usize;
            let gens: Vec<Permutation> = self.level_generators(lvl).into_iter().cloned().collect();
            let orbit = self.levels[lvl].orbit.clone();
            for &b in &orbit {
                for s in &gens {
                    let ub = self.levels[lvl].transversal[b as usize].as_ref().unwrap();
                    let bs = s.image(b);
                    let ubs_inv = self.levels[lvl].inverse_transversal[bs as usize]
                        .as_ref()
                        .unwrap();
                    let schreier = ub.mul(s).mul(ubs_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stop) = self.strip(&schreier, lvl + 1);
                    if stop == self.levels.len() && residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        let pt = residue.smallest_moved_point().unwrap();
                        self.push_level(pt);
                    }
                    self.strong.push(residue);
                    for l in (lvl + 1)..=stop {
                        self.rebuild_orbit(l);
                    }
                    i = stop as isize;
                    continue 'levels;
                }
            }
            i -= 1;
        }
    }

    /// Every group element exactly once, as products `u_{k-1} ⋯ u_0` of coset
    /// representatives, in a fixed order.
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity_unchecked(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for e in &elems {
                for &b in &level.orbit {
                    next.push(e.mul(level.coset_rep(b).unwrap()));
                }
            }
            elems = next;
        }
        elems
    }
}
