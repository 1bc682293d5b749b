//! Permutations of `{0, .., degree - 1}` and their cycle notation.
//!
//! Products read left to right: `g.compose(&h)` applies `g` first, then `h`,
//! so `(g * h)(i) = h(g(i))`. Conjugation follows the same convention,
//! `x^g = g⁻¹ x g`. Cycle notation is 1-based on input and output.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self::identity_unchecked(degree))
    }

    pub(crate) fn identity_unchecked(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; images.len()];
        for &im in &images {
            let slot = seen
                .get_mut(im as usize)
                .ok_or_else(|| Error::NotAPermutation(format!("image {im} out of range")))?;
            if *slot {
                return Err(Error::NotAPermutation(format!("image {im} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `degree` points from 0-based cycles, multiplied
    /// left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut acc = Self::identity(degree)?;
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &pt) in cycle.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "point {} exceeds degree {degree}",
                        pt + 1
                    )));
                }
                if cycle[..i].contains(&pt) {
                    return Err(Error::NotAPermutation(format!(
                        "point {} repeated in a cycle",
                        pt + 1
                    )));
                }
                images[pt as usize] = cycle[(i + 1) % cycle.len()];
            }
            acc = acc.mul(&Permutation { images });
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| im == i as u32)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    pub(crate) fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    /// Unchecked product, `self` first. Degrees must agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i -> g⁻¹(i) -> self -> g
        let mut images = vec![0u32; self.images.len()];
        for (i, &gi) in g.images.iter().enumerate() {
            images[gi as usize] = g.images[self.images[i] as usize];
        }
        Permutation { images }
    }

    #[inline]
    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Self::identity_unchecked(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut next = self.images[start];
            while next as usize != start {
                seen[next as usize] = true;
                cycle.push(next);
                next = self.images[next as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Order as the lcm of the cycle lengths.
    pub fn element_order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }

    pub fn is_transposition(&self) -> bool {
        self.cycle_type() == [2]
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &im)| im != *i as u32)
            .map(|(i, _)| i as u32)
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4,5)`; `()` is the
    /// identity. Cycles are multiplied left to right.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let cycles = parse_cycle_list(text)?;
        let mut zero_based = Vec::with_capacity(cycles.len());
        for (col, cycle) in cycles {
            let mut c = Vec::with_capacity(cycle.len());
            for (pcol, pt) in cycle {
                if pt == 0 || pt as usize > degree {
                    return Err(Error::parse_at(
                        pcol,
                        format!("point {pt} outside 1..={degree}"),
                    ));
                }
                if c.contains(&(pt - 1)) {
                    return Err(Error::parse_at(
                        pcol,
                        format!("point {pt} repeated in cycle"),
                    ));
                }
                c.push(pt - 1);
            }
            if c.len() == 1 {
                return Err(Error::parse_at(col, "cycle of length one"));
            }
            zero_based.push(c);
        }
        Permutation::from_cycles(degree, &zero_based)
    }
}

type ParsedCycle = (usize, Vec<(usize, u32)>);

/// Tokenizes cycle notation. Columns are 1-based character positions.
fn parse_cycle_list(text: &str) -> Result<Vec<ParsedCycle>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(Error::parse_at(
            1,
            "empty permutation; use () for the identity",
        ));
    }
    while i < chars.len() {
        if chars[i] != '(' {
            return Err(Error::parse_at(
                i + 1,
                format!("expected '(', found '{}'", chars[i]),
            ));
        }
        let open = i + 1;
        i += 1;
        skip_ws(&mut i);
        let mut points = Vec::new();
        if i < chars.len() && chars[i] == ')' {
            i += 1;
        } else {
            loop {
                skip_ws(&mut i);
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(match chars.get(i) {
                        Some(c) => Error::parse_at(i + 1, format!("expected a point, found '{c}'")),
                        None => Error::parse_at(i + 1, "unterminated cycle"),
                    });
                }
                let digits: String = chars[start..i].iter().collect();
                let pt: u32 = digits
                    .parse()
                    .map_err(|_| Error::parse_at(start + 1, format!("point {digits} too large")))?;
                points.push((start + 1, pt));
                skip_ws(&mut i);
                match chars.get(i) {
                    Some(',') => i += 1,
                    Some(')') => {
                        i += 1;
                        break;
                    }
                    Some(c) => {
                        return Err(Error::parse_at(
                            i + 1,
                            format!("expected ',' or ')', found '{c}'"),
                        ))
                    }
                    None => return Err(Error::parse_at(i + 1, "unterminated cycle")),
                }
            }
        }
        if !points.is_empty() {
            cycles.push((open, points));
        }
        skip_ws(&mut i);
    }
    Ok(cycles)
}

/// Canonical 1-based cycle notation; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn identity_basics() {
        assert_eq!(Permutation::identity(3).unwrap().images(), &[0, 1, 2]);
        assert_eq!(Permutation::identity(0), Err(Error::ZeroDegree));
        assert_eq!(Permutation::identity(4).unwrap().element_order(), 1);
        let g = p("(1,3,5)(2,4)", 5);
        assert_eq!(Permutation::identity(5).unwrap().compose(&g).unwrap(), g);
    }

    #[test]
    fn compose_applies_left_first() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        let ab = a.compose(&b).unwrap();
        // 0 -> 1 -> 2, 2 -> 2 -> 1, 1 -> 0 -> 0
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(ab.to_string(), "(1,3,2)");
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4).unwrap()),
            Err(Error::DegreeMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn inverse_and_order() {
        let c = p("(1,2,3)", 3);
        assert_eq!(c.inverse(), p("(1,3,2)", 3));
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
        assert_eq!(p("(1,2,3)(4,5)", 5).element_order(), 6);
        assert_eq!(Permutation::identity(7).unwrap().element_order(), 1);
        assert_eq!(p("(1,2,3,4,5)", 5).element_order(), 5);
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = p("(1,2,3)(4,5)", 6);
        let g = p("(1,4,6)(2,3)", 6);
        let direct = g.inverse().mul(&x).mul(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }

    #[test]
    fn parse_errors_report_columns() {
        match Permutation::parse_cycles("(1,2)(3,x)", 4) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Permutation::parse_cycles("(1,5)", 4),
            Err(Error::Parse { column: 4, .. })
        ));
        assert!(Permutation::parse_cycles("(1,2,1)", 4).is_err());
        assert!(Permutation::parse_cycles("(1,2", 4).is_err());
        assert!(Permutation::parse_cycles("", 4).is_err());
        assert!(p("()", 4).is_identity());
        assert_eq!(p(" ( 1 , 2 ) ( 3,4 )", 4).to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn non_disjoint_cycles_multiply() {
        assert_eq!(p("(1,2)(2,3)", 3), p("(1,2)", 3).mul(&p("(2,3)", 3)));
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }
}
