//! Constructors for the group families used throughout the crate, the
//! group-expression grammar, and the `.grp` data-file loader.
//!
//! Expression grammar:
//!
//! ```text
//! expr := "A" n | "S" n | "C" n | "D" n | "PSL2_" q
//!       | NAME "@" path
//!       | "prod(" expr "," expr ")"
//!       | "frob(" p "," k ")"
//! ```
//!
//! `Dn` is the dihedral group of order `n`.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::group::{is_prime, PermGroup};
use crate::perm::{gcd, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    Symmetric(u32),
    Alternating(u32),
    Psl2(u32),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    MetacyclicFrobenius(u32, u32),
    FromFile { name: String, path: String },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2_{q}"),
            GroupSpec::DirectProduct(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::MetacyclicFrobenius(p, k) => write!(f, "frob({p},{k})"),
            GroupSpec::FromFile { name, path } => write!(f, "{name}@{path}"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = ExprParser { text: s, pos: 0 };
        let spec = parser.expr()?;
        if parser.pos != s.len() {
            return Err(Error::parse(parser.pos, "trailing input"));
        }
        Ok(spec)
    }
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{lit}'")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(Error::parse(start, "expected a number"));
        }
        self.pos += len;
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        if self.eat("prod(") {
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok(GroupSpec::DirectProduct(Box::new(a), Box::new(b)));
        }
        if self.eat("frob(") {
            let p = self.number()?;
            self.expect(",")?;
            let k = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::MetacyclicFrobenius(p, k));
        }
        if let Some(at) = self.rest().find('@') {
            let name = &self.rest()[..at];
            if !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
                let name = name.to_string();
                self.pos += at + 1;
                let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
                if len == 0 {
                    return Err(Error::parse(self.pos, "expected a file path"));
                }
                let path = self.rest()[..len].to_string();
                self.pos += len;
                return Ok(GroupSpec::FromFile { name, path });
            }
        }
        if self.eat("PSL2_") {
            return Ok(GroupSpec::Psl2(self.number()?));
        }
        let start = self.pos;
        let family = self.rest().chars().next();
        self.pos += family.map_or(0, char::len_utf8);
        let ctor: fn(u32) -> GroupSpec = match family {
            Some('A') => GroupSpec::Alternating,
            Some('S') => GroupSpec::Symmetric,
            Some('C') => GroupSpec::Cyclic,
            Some('D') => GroupSpec::Dihedral,
            _ => return Err(Error::parse(start, "expected a group expression")),
        };
        Ok(ctor(self.number()?))
    }
}

impl GroupSpec {
    /// Order predicted by the family's closed form, when it has one.
    pub fn expected_order(&self) -> Option<u64> {
        Some(match *self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => n as u64,
            GroupSpec::Symmetric(n) => (1..=n as u64).product(),
            GroupSpec::Alternating(n) => ((1..=n as u64).product::<u64>() / 2).max(1),
            GroupSpec::Psl2(q) => psl2_order(q as u64),
            GroupSpec::DirectProduct(ref a, ref b) => a.expected_order()? * b.expected_order()?,
            GroupSpec::MetacyclicFrobenius(p, k) => p as u64 * k as u64,
            GroupSpec::FromFile { .. } => return None,
        })
    }
}

/// `q(q^2 - 1) / gcd(2, q - 1)`.
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / gcd(2, q - 1)
}

/// Builds the group named by `spec` and checks its order against the family's
/// closed form (or the declared order, for data files).
pub fn make(spec: &GroupSpec) -> Result<PermGroup> {
    let group = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::Dihedral(n) => dihedral(*n)?,
        GroupSpec::Symmetric(n) => symmetric(*n)?,
        GroupSpec::Alternating(n) => alternating(*n)?,
        GroupSpec::Psl2(q) => psl2(*q)?,
        GroupSpec::DirectProduct(a, b) => direct_product(&make(a)?, &make(b)?)?,
        GroupSpec::MetacyclicFrobenius(p, k) => metacyclic_frobenius(*p, *k)?,
        GroupSpec::FromFile { name, path } => {
            let g = load_group(path)?;
            if g.label() != Some(name.as_str()) {
                return Err(Error::CorruptData(format!(
                    "{path} declares group {:?}, expected {name}",
                    g.label().unwrap_or("")
                )));
            }
            g
        }
    };
    if let Some(expected) = spec.expected_order() {
        let got = group.order();
        if got != expected {
            return Err(Error::CorruptData(format!(
                "{spec} has order {got}, expected {expected}"
            )));
        }
    }
    Ok(group.with_label(spec.to_string()))
}

pub fn parse_and_make(expr: &str) -> Result<PermGroup> {
    make(&expr.parse()?)
}

fn cycle_on(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let pts: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("distinct points below degree")
}

pub fn cyclic(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic order must be >= 1".into()));
    }
    let d = n as usize;
    let gens = if n > 1 {
        vec![cycle_on(d, 0..n)]
    } else {
        vec![]
    };
    PermGroup::new(d, gens)
}

/// Dihedral group of order `n` (even, >= 2), acting on `n/2` points when
/// `n >= 6`; `D4` is the Klein four-group on 4 points and `D2` is `C2`.
pub fn dihedral(n: u32) -> Result<PermGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dihedral order must be even and >= 2, got {n}"
        )));
    }
    let m = n / 2;
    match m {
        1 => cyclic(2),
        2 => PermGroup::new(
            4,
            vec![
                Permutation::parse_cycles("(0,1)(2,3)", 4)?,
                Permutation::parse_cycles("(0,2)(1,3)", 4)?,
            ],
        ),
        _ => {
            let d = m as usize;
            let reflection =
                Permutation::from_images_unchecked((0..m).map(|i| (m - i) % m).collect());
            PermGroup::new(d, vec![cycle_on(d, 0..m), reflection])
        }
    }
}

pub fn symmetric(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "symmetric degree must be >= 1".into(),
        ));
    }
    let d = n as usize;
    let gens = match n {
        1 => vec![],
        2 => vec![cycle_on(2, [0, 1])],
        _ => vec![cycle_on(d, 0..n), cycle_on(d, [0, 1])],
    };
    PermGroup::new(d, gens)
}

pub fn alternating(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alternating degree must be >= 1".into(),
        ));
    }
    let d = n as usize;
    let gens = match n {
        1 | 2 => vec![],
        3 => vec![cycle_on(3, [0, 1, 2])],
        _ if n % 2 == 1 => vec![cycle_on(d, 0..n), cycle_on(d, [0, 1, 2])],
        _ => vec![cycle_on(d, 1..n), cycle_on(d, [0, 1, 2])],
    };
    PermGroup::new(d, gens)
}

/// Points of the projective line over GF(q): index 0 is infinity, index
/// `1 + a` is the field element with canonical code `a`.
fn line_point(x: Option<FieldElement>) -> u32 {
    x.map_or(0, |a| a.0 + 1)
}

/// `PSL(2, q)` acting on the `q + 1` points of the projective line, generated
/// by `x -> x + 1`, `x -> a x` (`a` a primitive element squared for odd `q`,
/// primitive for even `q`) and `x -> -1/x`.
pub fn psl2(q: u32) -> Result<PermGroup> {
    let f = GaloisField::new(q)?;
    let degree = q as usize + 1;
    let prim = f.primitive_element();
    let scale = if q % 2 == 1 { f.mul(prim, prim) } else { prim };
    let map = |h: &dyn Fn(FieldElement) -> Option<FieldElement>,
               at_infinity: Option<FieldElement>| {
        let mut images = vec![0u32; degree];
        images[0] = line_point(at_infinity);
        for a in f.elements() {
            images[line_point(Some(a)) as usize] = line_point(h(a));
        }
        Permutation::from_images(images)
    };
    let translate = map(&|x| Some(f.add(x, FieldElement::ONE)), None)?;
    let dilate = map(&|x| Some(f.mul(scale, x)), None)?;
    let invert = map(&|x| f.inv(x).map(|y| f.neg(y)), Some(FieldElement::ZERO))?;
    let g = PermGroup::new(degree, vec![translate, dilate, invert])?;
    let expected = psl2_order(q as u64);
    if g.order() != expected {
        return Err(Error::CorruptData(format!(
            "PSL(2,{q}) construction has order {}, expected {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// `C_p ⋊ C_k` as the affine maps `x -> a x + b` on `GF(p)` with `a` of order `k`.
pub fn metacyclic_frobenius(p: u32, k: u32) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if k <= 1 || !(p - 1).is_multiple_of(k) {
        return Err(Error::InvalidParameter(format!(
            "complement order k must satisfy k > 1 and k | p - 1 (p = {p}, k = {k})"
        )));
    }
    let a = (2..p)
        .find(|&a| {
            let mut x = 1u64;
            let mut ord = 0;
            loop {
                x = x * a as u64 % p as u64;
                ord += 1;
                if x == 1 {
                    break ord == k;
                }
            }
        })
        .expect("GF(p)* is cyclic, so an element of each order dividing p - 1 exists");
    let d = p as usize;
    let translate = cycle_on(d, 0..p);
    let scale = Permutation::from_images_unchecked(
        (0..p)
            .map(|x| (x as u64 * a as u64 % p as u64) as u32)
            .collect(),
    );
    PermGroup::new(d, vec![translate, scale])
}

/// Kernel `C_p` of `frob(p, k)`: the translations.
pub fn frobenius_kernel(g: &PermGroup) -> PermGroup {
    let d = g.degree();
    g.subgroup(vec![cycle_on(d, 0..d as u32)])
}

/// Complement `C_k` of `frob(p, k)`: the stabilizer of the point 0.
pub fn frobenius_complement(g: &PermGroup) -> PermGroup {
    g.subgroup(vec![g.generators()[1].clone()])
}

fn shift(p: &Permutation, offset: usize, total: usize, first: bool) -> Permutation {
    let mut images: Vec<u32> = (0..total as u32).collect();
    let base = if first { 0 } else { offset };
    for (i, &x) in p.images().iter().enumerate() {
        images[base + i] = (base as u32) + x;
    }
    Permutation::from_images_unchecked(images)
}

/// `A × B` acting on `deg(A) + deg(B)` points; `A` moves the first block.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let total = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| shift(g, 0, total, true))
        .collect();
    gens.extend(
        b.generators()
            .iter()
            .map(|g| shift(g, a.degree(), total, false)),
    );
    PermGroup::new(total, gens)
}

/// Embeds `x ∈ A` into `A × B` (first block).
pub fn embed_left(x: &Permutation, b_degree: usize) -> Permutation {
    shift(x, 0, x.degree() + b_degree, true)
}

/// Embeds `y ∈ B` into `A × B` (second block).
pub fn embed_right(y: &Permutation, a_degree: usize) -> Permutation {
    shift(y, a_degree, a_degree + y.degree(), false)
}

/// Projects an element of `A × B` onto its `A` and `B` components.
pub fn project(x: &Permutation, a_degree: usize) -> Result<(Permutation, Permutation)> {
    let img = x.images();
    let left: Vec<u32> = img[..a_degree].to_vec();
    let right: Vec<u32> = img[a_degree..]
        .iter()
        .map(|&v| v.wrapping_sub(a_degree as u32))
        .collect();
    Ok((
        Permutation::from_images(left)?,
        Permutation::from_images(right)?,
    ))
}

/// `{(a, φ(a))}` inside `A × B`, given generator images of an isomorphism
/// `φ: A -> B` (pairs `(a_i, φ(a_i))`).
pub fn diagonal(
    a_degree: usize,
    b_degree: usize,
    pairs: &[(Permutation, Permutation)],
) -> Result<PermGroup> {
    let total = a_degree + b_degree;
    let gens = pairs
        .iter()
        .map(|(x, y)| embed_left(x, b_degree).mul(&embed_right(y, a_degree)))
        .collect();
    PermGroup::new(total, gens)
}

/// Reads a group data file:
///
/// ```text
/// name <string>
/// degree <n>
/// order <N>
/// gen <cycle-notation>
/// ...
/// ```
pub fn load_group(path: impl AsRef<Path>) -> Result<PermGroup> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_group_data(&text)
}

pub fn parse_group_data(text: &str) -> Result<PermGroup> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut field = |key: &str| -> Result<(usize, String)> {
        let (no, line) = lines.next().ok_or(Error::DataParse {
            line: 0,
            msg: format!("missing '{key}' line"),
        })?;
        let value = line
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| Error::DataParse {
                line: no,
                msg: format!("expected '{key} <value>'"),
            })?;
        Ok((no, value.to_string()))
    };
    let (_, name) = field("name")?;
    let (dno, degree) = field("degree")?;
    let degree: usize = degree.parse().map_err(|_| Error::DataParse {
        line: dno,
        msg: "degree is not an integer".into(),
    })?;
    let (ono, order) = field("order")?;
    let declared: u64 = order.parse().map_err(|_| Error::DataParse {
        line: ono,
        msg: "order is not an integer".into(),
    })?;
    let mut gens = Vec::new();
    for (no, line) in text.lines().enumerate().skip(3) {
        let no = no + 1;
        if line.is_empty() {
            continue;
        }
        let cycles = line.strip_prefix("gen ").ok_or_else(|| Error::DataParse {
            line: no,
            msg: "expected 'gen <cycles>'".into(),
        })?;
        let g = Permutation::parse_cycles(cycles, degree).map_err(|e| Error::DataParse {
            line: no,
            msg: e.to_string(),
        })?;
        gens.push(g);
    }
    let g = PermGroup::new(degree, gens)
        .map_err(|e| Error::DataParse {
            line: dno,
            msg: e.to_string(),
        })?
        .with_label(name.clone());
    if g.order() != declared {
        return Err(Error::CorruptData(format!(
            "{name}: declared order {declared}, generators give {}",
            g.order()
        )));
    }
    Ok(g)
}

pub fn write_group_data(g: &PermGroup, name: &str) -> String {
    let mut s = format!("name {name}\ndegree {}\norder {}\n", g.degree(), g.order());
    for x in g.generators() {
        s.push_str(&format!("gen {x}\n"));
    }
    s
}

/// The named groups the verification suite and `catalog list` range over.
/// Data-file entries use paths relative to `data_dir`.
pub fn standard_catalog(data_dir: &str) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = [
        "C1",
        "C2",
        "C4",
        "C6",
        "C12",
        "C60",
        "prod(C2,C2)",
        "prod(C2,C30)",
        "D6",
        "D8",
        "D10",
        "D12",
        "D16",
        "D20",
        "D32",
        "D60",
        "D64",
        "S3",
        "S4",
        "S5",
        "S6",
        "A4",
        "A5",
        "A6",
        "frob(7,3)",
        "frob(5,4)",
        "frob(11,5)",
        "frob(13,4)",
        "prod(A5,C7)",
        "prod(D8,C3)",
        "prod(S3,C5)",
        "prod(A4,C5)",
        "prod(S3,D10)",
        "prod(D8,D8)",
        "PSL2_4",
        "PSL2_5",
        "PSL2_7",
        "PSL2_8",
        "PSL2_9",
        "PSL2_11",
        "PSL2_13",
        "PSL2_16",
        "PSL2_17",
        "PSL2_25",
        "PSL2_27",
        "PSL2_41",
    ]
    .iter()
    .map(|s| s.parse().expect("catalog entries parse"))
    .collect();
    for (name, file) in [
        ("PSL3_3", "psl3_3.grp"),
        ("U3_3", "u3_3.grp"),
        ("U4_2", "u4_2.grp"),
        ("SZ8", "sz8.grp"),
    ] {
        out.push(GroupSpec::FromFile {
            name: name.into(),
            path: format!("{data_dir}/{file}"),
        });
    }
    out
}
