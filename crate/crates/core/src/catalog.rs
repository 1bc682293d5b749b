//! Group constructors, the group selector language and the JSON-lines catalog
//! format.
//!
//! A catalog file holds one JSON object per line:
//! `{"id": "sym:3", "degree": 3, "gens": ["(1,2)", "(1,2,3)"], "order": 6}`.
//! Points are 1-based; `order` is optional and checked when present.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::primes::is_prime;

/// Selector for a constructed or file-backed group: `sym:n`, `alt:n`,
/// `psl2:p`, `dih:n`, `cyc:n`, `frob:q,r`, `q8`, `prod:a*b`, `file:path#id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Psl2(u64),
    Dihedral(usize),
    Cyclic(usize),
    Frobenius(u64, u64),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File { path: String, id: String },
}

impl GroupSpec {
    pub fn entry(&self) -> Result<CatalogEntry> {
        match self {
            GroupSpec::Symmetric(n) => make_symmetric(*n),
            GroupSpec::Alternating(n) => make_alternating(*n),
            GroupSpec::Psl2(p) => make_psl2(*p),
            GroupSpec::Dihedral(n) => make_dihedral(*n),
            GroupSpec::Cyclic(n) => make_cyclic(*n),
            GroupSpec::Frobenius(q, r) => make_frobenius(*q, *r),
            GroupSpec::Quaternion => Ok(make_quaternion()),
            GroupSpec::Product(a, b) => Ok(direct_product(&a.entry()?, &b.entry()?)),
            GroupSpec::File { path, id } => parse_catalog(path)?
                .into_iter()
                .find(|e| &e.id == id)
                .ok_or_else(|| Error::UnknownId(id.clone())),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Psl2(p) => write!(f, "psl2:{p}"),
            GroupSpec::Dihedral(n) => write!(f, "dih:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyc:{n}"),
            GroupSpec::Frobenius(q, r) => write!(f, "frob:{q},{r}"),
            GroupSpec::Quaternion => write!(f, "q8"),
            GroupSpec::Product(a, b) => write!(f, "prod:{a}*{b}"),
            GroupSpec::File { path, id } => write!(f, "file:{path}#{id}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidArgument(format!("group selector '{s}': {msg}"));
        if s == "q8" {
            return Ok(GroupSpec::Quaternion);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| bad("expected kind:argument"))?;
        let int = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("'{t}' is not a non-negative integer")))
        };
        Ok(match kind {
            "sym" => GroupSpec::Symmetric(int(arg)? as usize),
            "alt" => GroupSpec::Alternating(int(arg)? as usize),
            "psl2" => GroupSpec::Psl2(int(arg)?),
            "dih" => GroupSpec::Dihedral(int(arg)? as usize),
            "cyc" => GroupSpec::Cyclic(int(arg)? as usize),
            "frob" => {
                let (q, r) = arg
                    .split_once(',')
                    .ok_or_else(|| bad("expected frob:q,r"))?;
                GroupSpec::Frobenius(int(q)?, int(r)?)
            }
            "prod" => {
                let (a, b) = arg
                    .split_once('*')
                    .ok_or_else(|| bad("expected prod:a*b"))?;
                GroupSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?))
            }
            "file" => {
                let (path, id) = arg
                    .rsplit_once('#')
                    .ok_or_else(|| bad("expected file:path#id"))?;
                GroupSpec::File {
                    path: path.to_string(),
                    id: id.to_string(),
                }
            }
            _ => return Err(bad("unknown kind")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Constructor(GroupSpec),
    File { path: String, line: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub degree: usize,
    /// Generators in 1-based cycle notation.
    pub generators: Vec<String>,
    pub provenance: Provenance,
    pub expected_order: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogLine {
    id: String,
    degree: usize,
    gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
}

impl CatalogEntry {
    fn constructed(spec: GroupSpec, degree: usize, gens: Vec<Permutation>, order: u64) -> Self {
        let mut generators: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        if generators.is_empty() {
            generators.push("()".to_string());
        }
        CatalogEntry {
            id: spec.to_string(),
            degree,
            generators,
            provenance: Provenance::Constructor(spec),
            expected_order: Some(order),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree))
            .collect()
    }

    /// Builds the group, checking the expected order when present.
    pub fn build(&self) -> Result<PermGroup> {
        let group = PermGroup::from_generators(&self.permutations()?)?;
        if let Some(expected) = self.expected_order {
            if expected != group.order() {
                return Err(Error::OrderMismatch {
                    id: self.id.clone(),
                    expected,
                    actual: group.order(),
                });
            }
        }
        Ok(group)
    }

    /// `n` when the entry was constructed as the symmetric group `S_n`.
    pub fn symmetric_degree(&self) -> Option<usize> {
        match &self.provenance {
            Provenance::Constructor(GroupSpec::Symmetric(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&CatalogLine {
            id: self.id.clone(),
            degree: self.degree,
            gens: self.generators.clone(),
            order: self.expected_order,
        })
        .expect("catalog line serializes")
    }
}

fn perm(degree: usize, cycles: &[Vec<u32>]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("constructor cycles are valid")
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what} needs n >= 1")))
    } else {
        Ok(())
    }
}

pub fn make_symmetric(n: usize) -> Result<CatalogEntry> {
    positive(n, "sym")?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm(n, &[vec![0, 1]]));
    }
    if n >= 3 {
        gens.push(perm(n, &[(0..n as u32).collect()]));
    }
    Ok(CatalogEntry::constructed(
        GroupSpec::Symmetric(n),
        n,
        gens,
        factorial(n),
    ))
}

pub fn make_alternating(n: usize) -> Result<CatalogEntry> {
    positive(n, "alt")?;
    let gens = (2..n as u32).map(|k| perm(n, &[vec![0, 1, k]])).collect();
    let order = if n >= 2 { factorial(n) / 2 } else { 1 };
    Ok(CatalogEntry::constructed(
        GroupSpec::Alternating(n),
        n,
        gens,
        order,
    ))
}

pub fn make_cyclic(n: usize) -> Result<CatalogEntry> {
    positive(n, "cyc")?;
    let gens = if n >= 2 {
        vec![perm(n, &[(0..n as u32).collect()])]
    } else {
        vec![]
    };
    Ok(CatalogEntry::constructed(
        GroupSpec::Cyclic(n),
        n,
        gens,
        n as u64,
    ))
}

/// Dihedral group of order `2n`: the symmetries of an `n`-gon for `n >= 3`,
/// `C2` on two points for `n = 1` and the Klein four-group for `n = 2`.
pub fn make_dihedral(n: usize) -> Result<CatalogEntry> {
    positive(n, "dih")?;
    let (degree, gens) = match n {
        1 => (2, vec![perm(2, &[vec![0, 1]])]),
        2 => (4, vec![perm(4, &[vec![0, 1]]), perm(4, &[vec![2, 3]])]),
        _ => {
            let rotation = perm(n, &[(0..n as u32).collect()]);
            let reflection: Vec<Vec<u32>> = (1..n as u32)
                .map(|i| (i, n as u32 - i))
                .filter(|(i, j)| i < j)
                .map(|(i, j)| vec![i, j])
                .collect();
            (n, vec![rotation, perm(n, &reflection)])
        }
    };
    Ok(CatalogEntry::constructed(
        GroupSpec::Dihedral(n),
        degree,
        gens,
        2 * n as u64,
    ))
}

/// `PSL(2, p)` on the projective line, generated by `z ↦ z + 1` and
/// `z ↦ −1/z`. Points `1..=p` are the field elements `0..p`, point `p + 1` is
/// infinity.
pub fn make_psl2(p: u64) -> Result<CatalogEntry> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p as usize + 1;
    let inf = p as u32;
    let translate: Vec<u32> = (0..p as u32)
        .map(|z| (z + 1) % p as u32)
        .chain([inf])
        .collect();
    let inv_mod = |z: u64| -> u64 { (1..p).find(|w| z * w % p == 1).expect("field inverse") };
    let invert: Vec<u32> = (0..=p)
        .map(|z| match z {
            0 => inf,
            z if z == p => 0,
            z => ((p - inv_mod(z)) % p) as u32,
        })
        .collect();
    let gens = vec![
        Permutation::from_images(translate)?,
        Permutation::from_images(invert)?,
    ];
    let order = if p == 2 { 6 } else { p * (p * p - 1) / 2 };
    Ok(CatalogEntry::constructed(
        GroupSpec::Psl2(p),
        n,
        gens,
        order,
    ))
}

/// Affine maps `x ↦ ax + b` over `Z/q` with `a` of multiplicative order `r`.
/// `r = 1` gives the cyclic group of order `q`.
pub fn make_frobenius(q: u64, r: u64) -> Result<CatalogEntry> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if r != 1 && !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if !(q - 1).is_multiple_of(r) {
        return Err(Error::InvalidArgument(format!(
            "{r} does not divide {q} - 1"
        )));
    }
    let n = q as usize;
    let translate: Vec<u32> = (0..q).map(|x| ((x + 1) % q) as u32).collect();
    let mult_order = |a: u64| -> u64 {
        let (mut k, mut v) = (1, a % q);
        while v != 1 {
            v = v * a % q;
            k += 1;
        }
        k
    };
    let mut gens = vec![Permutation::from_images(translate)?];
    if r > 1 {
        let a = (2..q)
            .find(|&a| mult_order(a) == r)
            .expect("unit of order r exists");
        gens.push(Permutation::from_images(
            (0..q).map(|x| (a * x % q) as u32).collect(),
        )?);
    }
    Ok(CatalogEntry::constructed(
        GroupSpec::Frobenius(q, r),
        n,
        gens,
        q * r,
    ))
}

/// Quaternion group in its regular representation on `±1, ±i, ±j, ±k`.
pub fn make_quaternion() -> CatalogEntry {
    // points 1..8 = 1, i, j, k, -1, -i, -j, -k; right multiplication by i and j
    let right_i = perm(8, &[vec![0, 1, 4, 5], vec![2, 7, 6, 3]]);
    let right_j = perm(8, &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
    CatalogEntry::constructed(GroupSpec::Quaternion, 8, vec![right_i, right_j], 8)
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &CatalogEntry, b: &CatalogEntry) -> CatalogEntry {
    let degree = a.degree + b.degree;
    let shift = a.degree as u32;
    let mut gens = Vec::new();
    for g in a.permutations().expect("valid entry") {
        if g.is_identity() {
            continue;
        }
        let images = g
            .images()
            .iter()
            .copied()
            .chain(shift..degree as u32)
            .collect();
        gens.push(Permutation::from_images(images).expect("embedding"));
    }
    for g in b.permutations().expect("valid entry") {
        if g.is_identity() {
            continue;
        }
        let images = (0..shift)
            .chain(g.images().iter().map(|&i| i + shift))
            .collect();
        gens.push(Permutation::from_images(images).expect("embedding"));
    }
    let spec = match (&a.provenance, &b.provenance) {
        (Provenance::Constructor(x), Provenance::Constructor(y)) => {
            GroupSpec::Product(Box::new(x.clone()), Box::new(y.clone()))
        }
        _ => GroupSpec::Product(
            Box::new(GroupSpec::File {
                path: String::new(),
                id: a.id.clone(),
            }),
            Box::new(GroupSpec::File {
                path: String::new(),
                id: b.id.clone(),
            }),
        ),
    };
    let order = a.expected_order.zip(b.expected_order).map(|(x, y)| x * y);
    let mut entry = CatalogEntry::constructed(spec, degree, gens, order.unwrap_or(0));
    entry.id = format!("prod:{}*{}", a.id, b.id);
    entry.expected_order = order;
    entry
}

/// Parses a catalog from JSON-lines text. Blank lines are skipped.
pub fn parse_catalog_str(text: &str, path: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut ids = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let line: CatalogLine = serde_json::from_str(raw).map_err(|e| Error::Parse {
            line: line_no,
            column: e.column(),
            message: e.to_string(),
        })?;
        if line.degree == 0 {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: "degree must be at least 1".into(),
            });
        }
        if line.gens.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: "gens must not be empty".into(),
            });
        }
        for (k, g) in line.gens.iter().enumerate() {
            Permutation::parse_cycles(g, line.degree).map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::Parse {
                    line: line_no,
                    column,
                    message: format!("generator {}: {message}", k + 1),
                },
                other => other.on_line(line_no),
            })?;
        }
        if !ids.insert(line.id.clone()) {
            return Err(Error::DuplicateId(line.id));
        }
        let entry = CatalogEntry {
            id: line.id,
            degree: line.degree,
            generators: line.gens,
            provenance: Provenance::File {
                path: path.to_string(),
                line: line_no,
            },
            expected_order: line.order,
        };
        entry.build()?;
        out.push(entry);
    }
    Ok(out)
}

pub fn parse_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_catalog_str(&text, &path.display().to_string())
}

pub fn write_catalog(entries: &[CatalogEntry], mut out: impl std::io::Write) -> Result<()> {
    for e in entries {
        writeln!(out, "{}", e.to_json_line())?;
    }
    Ok(())
}

/// The shipped catalog: `S_n` and `A_n` for `n ≤ 8`, cyclic and dihedral
/// groups of order at most 64, `Q8`, `PSL(2, p)` for `p ∈ {5, 7, 11, 13}`,
/// Frobenius groups `C_q ⋊ C_r` of order at most 200 and a few direct
/// products.
pub fn seed_catalog() -> Vec<CatalogEntry> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    specs.extend((2..=8).map(GroupSpec::Symmetric));
    specs.extend((3..=8).map(GroupSpec::Alternating));
    specs.extend((1..=64).map(GroupSpec::Cyclic));
    specs.extend((2..=32).map(GroupSpec::Dihedral));
    specs.push(GroupSpec::Quaternion);
    specs.extend([5, 7, 11, 13].map(GroupSpec::Psl2));
    for q in (3..=100u64).filter(|&q| is_prime(q)) {
        for r in (2..q).filter(|&r| is_prime(r) && (q - 1) % r == 0 && q * r <= 200) {
            specs.push(GroupSpec::Frobenius(q, r));
        }
    }
    let products = [
        "prod:cyc:2*cyc:2",
        "prod:cyc:2*cyc:4",
        "prod:sym:3*cyc:2",
        "prod:sym:3*cyc:3",
        "prod:sym:3*sym:3",
        "prod:dih:4*cyc:2",
        "prod:q8*cyc:3",
        "prod:alt:4*cyc:2",
        "prod:sym:4*cyc:2",
        "prod:frob:7,3*cyc:2",
        "prod:alt:5*cyc:2",
        "prod:alt:5*alt:5",
    ];
    specs.extend(products.iter().map(|s| s.parse().expect("valid selector")));
    specs
        .iter()
        .map(|s| s.entry().expect("seed constructors are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_orders() {
        let order = |e: Result<CatalogEntry>| e.unwrap().build().unwrap().order();
        assert_eq!(order(make_symmetric(5)), 120);
        assert_eq!(order(make_alternating(5)), 60);
        assert_eq!(order(make_alternating(3)), 3);
        assert_eq!(order(make_alternating(1)), 1);
        assert_eq!(order(make_symmetric(1)), 1);
        assert_eq!(order(make_psl2(5)), 60);
        assert_eq!(make_psl2(5).unwrap().degree, 6);
        assert_eq!(order(make_psl2(7)), 168);
        assert_eq!(order(make_psl2(11)), 660);
        assert_eq!(order(make_psl2(2)), 6);
        assert_eq!(order(make_psl2(3)), 12);
        assert_eq!(make_psl2(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(order(make_frobenius(7, 3)), 21);
        assert_eq!(order(make_frobenius(5, 2)), 10);
        assert_eq!(order(make_frobenius(7, 1)), 7);
        assert!(make_frobenius(7, 5).is_err());
        assert_eq!(order(make_dihedral(4)), 8);
        assert_eq!(order(make_dihedral(1)), 2);
        assert_eq!(order(make_dihedral(2)), 4);
        assert_eq!(order(make_cyclic(6)), 6);
        assert_eq!(order(make_cyclic(1)), 1);
        assert_eq!(order(Ok(make_quaternion())), 8);
        let a5 = make_alternating(5).unwrap();
        assert_eq!(order(Ok(direct_product(&a5, &a5))), 3600);
    }

    #[test]
    fn psl2_labels_infinity_last() {
        let e = make_psl2(5).unwrap();
        assert_eq!(e.generators, vec!["(1,2,3,4,5)", "(1,6)(2,5)"]);
    }

    #[test]
    fn selectors_round_trip() {
        for s in [
            "sym:5",
            "alt:4",
            "psl2:7",
            "dih:6",
            "cyc:9",
            "frob:7,3",
            "q8",
            "prod:sym:3*cyc:2",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.entry().unwrap().id, s);
        }
        assert!("foo:3".parse::<GroupSpec>().is_err());
        assert!("sym:x".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn catalog_parsing() {
        let text = r#"{"id":"s3","degree":3,"gens":["(1,2)","(1,2,3)"]}"#;
        let cat = parse_catalog_str(text, "mem").unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].build().unwrap().order(), 6);
        assert_eq!(
            cat[0].provenance,
            Provenance::File {
                path: "mem".into(),
                line: 1
            }
        );
        assert!(parse_catalog_str("", "mem").unwrap().is_empty());

        let bad_order = r#"{"id":"s3","degree":3,"gens":["(1,2)","(1,2,3)"],"order":12}"#;
        assert_eq!(
            parse_catalog_str(bad_order, "mem").unwrap_err(),
            Error::OrderMismatch {
                id: "s3".into(),
                expected: 12,
                actual: 6
            }
        );

        let bad_gen = "\n{\"id\":\"x\",\"degree\":3,\"gens\":[\"(1,2,4)\"]}";
        match parse_catalog_str(bad_gen, "mem").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 6)),
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            parse_catalog_str("{not json", "mem").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        let dup = format!("{text}\n{text}");
        assert_eq!(
            parse_catalog_str(&dup, "mem").unwrap_err(),
            Error::DuplicateId("s3".into())
        );
    }

    #[test]
    fn seed_ids_unique_and_orders_valid() {
        let cat = seed_catalog();
        let ids: HashSet<&str> = cat.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len());
        for e in cat.iter().filter(|e| e.expected_order.unwrap() <= 5000) {
            e.build().unwrap();
        }
        assert!(ids.contains("psl2:13"));
        assert!(ids.contains("frob:61,3"));
        assert!(!ids.contains("frob:67,3"));
    }
}
