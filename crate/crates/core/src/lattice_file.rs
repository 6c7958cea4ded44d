//! Text serialization of subgroup lattices, used as an on-disk cache.
//!
//! ```text
//! lattice A5
//! engine 0.1.0
//! key 3f0c...
//! degree 5
//! order 60
//! count 59
//! sub 1 cbf29ce484222325 0
//! sub 2 1c9b1b2e8a3b4c11 1 (0,1)(2,3)
//! ```
//!
//! One `sub` line per subgroup: order, element fingerprint (hex), conjugacy
//! class id, then the generators in cycle notation.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroups::Lattice;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEntry {
    pub order: u64,
    pub fingerprint: u64,
    pub class_id: usize,
    pub generators: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub expr: String,
    pub engine: String,
    pub key: u64,
    pub degree: usize,
    pub order: u64,
    pub entries: Vec<LatticeEntry>,
}

/// FNV-1a over `expr`, a NUL byte, and the engine version.
pub fn cache_key(expr: &str, engine: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in expr.bytes().chain([0]).chain(engine.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl LatticeFile {
    pub fn from_lattice(expr: &str, lattice: &Lattice) -> Self {
        let entries = lattice
            .all_subgroups()
            .into_iter()
            .map(|r| LatticeEntry {
                order: r.order,
                fingerprint: r.element_fingerprint,
                class_id: r.class_id.unwrap_or(0),
                generators: r.generators,
            })
            .collect();
        LatticeFile {
            expr: expr.to_string(),
            engine: ENGINE_VERSION.to_string(),
            key: cache_key(expr, ENGINE_VERSION),
            degree: lattice.parent().degree(),
            order: lattice.parent().order(),
            entries,
        }
    }

    /// Does this file belong to `expr` under the running engine?
    pub fn matches(&self, expr: &str) -> bool {
        self.expr == expr
            && self.engine == ENGINE_VERSION
            && self.key == cache_key(expr, ENGINE_VERSION)
    }

    pub fn class_count(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.class_id + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "lattice {}\nengine {}\nkey {:016x}\ndegree {}\norder {}\ncount {}\n",
            self.expr,
            self.engine,
            self.key,
            self.degree,
            self.order,
            self.entries.len()
        );
        for e in &self.entries {
            s.push_str(&format!(
                "sub {} {:016x} {}",
                e.order, e.fingerprint, e.class_id
            ));
            for g in &e.generators {
                s.push(' ');
                s.push_str(&g.to_cycle_string());
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let mut header = |key: &str| -> Result<String> {
            let (i, line) = lines
                .next()
                .ok_or_else(|| Error::CorruptData(format!("missing `{key}` line")))?;
            line.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| Error::DataParse {
                    line: i + 1,
                    msg: format!("expected `{key} <value>`"),
                })
        };
        let expr = header("lattice")?;
        let engine = header("engine")?;
        let key = u64::from_str_radix(&header("key")?, 16)
            .map_err(|e| Error::CorruptData(format!("bad key: {e}")))?;
        let degree: usize = parse_num(&header("degree")?, 4)?;
        let order: u64 = parse_num(&header("order")?, 5)?;
        let count: usize = parse_num(&header("count")?, 6)?;
        let mut entries = Vec::with_capacity(count);
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::DataParse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut parts = line.split(' ');
            if parts.next() != Some("sub") {
                return Err(bad("expected `sub` record"));
            }
            let order: u64 = parse_num(parts.next().unwrap_or(""), i + 1)?;
            let fingerprint = u64::from_str_radix(parts.next().unwrap_or(""), 16)
                .map_err(|_| bad("bad fingerprint"))?;
            let class_id: usize = parse_num(parts.next().unwrap_or(""), i + 1)?;
            let generators = parts
                .map(|g| Permutation::parse_cycles(g, degree))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad(&e.to_string()))?;
            entries.push(LatticeEntry {
                order,
                fingerprint,
                class_id,
                generators,
            });
        }
        if entries.len() != count {
            return Err(Error::CorruptData(format!(
                "count says {count} subgroups, found {}",
                entries.len()
            )));
        }
        Ok(LatticeFile {
            expr,
            engine,
            key,
            degree,
            order,
            entries,
        })
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::DataParse {
        line,
        msg: format!("expected a number, got `{s}`"),
    })
}
