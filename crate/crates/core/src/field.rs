//! Small Galois fields GF(p^k) from a fixed table of irreducible polynomials.
//!
//! An element is stored as the integer `c0 + c1*p + ... + c(k-1)*p^(k-1)` of
//! its coefficient vector, which is also the element's position in the
//! canonical ordering used for projective-line points.

use serde::Serialize;

use crate::error::{Error, Result};

/// `(q, p, low-to-high coefficients of a monic irreducible of degree k)`.
pub const FIELD_TABLE: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1, 1]),
    (5, 5, &[0, 1]),
    (7, 7, &[0, 1]),
    (8, 2, &[1, 1, 0, 1]),
    (9, 3, &[1, 0, 1]),
    (11, 11, &[0, 1]),
    (13, 13, &[0, 1]),
    (16, 2, &[1, 1, 0, 0, 1]),
    (17, 17, &[0, 1]),
    (25, 5, &[2, 1, 1]),
    (27, 3, &[1, 2, 0, 1]),
    (41, 41, &[0, 1]),
];

pub fn supported_orders() -> Vec<u32> {
    FIELD_TABLE.iter().map(|e| e.0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    q: u32,
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
}

impl GaloisField {
    pub fn new(q: u32) -> Result<Self> {
        let &(_, p, modulus) =
            FIELD_TABLE
                .iter()
                .find(|e| e.0 == q)
                .ok_or_else(|| Error::UnsupportedField {
                    q,
                    supported: supported_orders()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                })?;
        let degree = modulus.len() as u32 - 1;
        let qs = q as usize;
        let mut field = GaloisField {
            q,
            p,
            degree,
            modulus: modulus.to_vec(),
            add: vec![0; qs * qs],
            mul: vec![0; qs * qs],
            inv: vec![0; qs],
            neg: vec![0; qs],
        };
        for a in 0..q {
            for b in 0..q {
                let i = (a * q + b) as usize;
                field.add[i] = field.slow_add(a, b);
                field.mul[i] = field.slow_mul(a, b);
            }
        }
        for a in 0..q {
            field.neg[a as usize] = (0..q)
                .find(|&b| field.add[(a * q + b) as usize] == 0)
                .unwrap();
            if a != 0 {
                field.inv[a as usize] = (1..q)
                    .find(|&b| field.mul[(a * q + b) as usize] == 1)
                    .ok_or_else(|| {
                        Error::CorruptData(format!("modulus for GF({q}) is not irreducible"))
                    })?;
            }
        }
        Ok(field)
    }

    fn coeffs(&self, mut a: u32) -> Vec<u32> {
        (0..self.degree)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let k = self.degree as usize;
        let p = self.p;
        let mut r = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                r[i + j] = (r[i + j] + x[i] * y[j]) % p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = r[d];
            if c != 0 {
                for i in 0..=k {
                    let t = (c * self.modulus[i]) % p;
                    r[d - k + i] = (r[d - k + i] + p - t) % p;
                }
            }
        }
        self.pack(&r[..k])
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.degree
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Coefficients over the prime field, lowest degree first.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        self.coeffs(a.0)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[(a.0 * self.q + b.0) as usize])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[(a.0 * self.q + b.0) as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a.0 != 0).then(|| FieldElement(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Smallest element (in canonical order) of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_q_names_the_table() {
        match GaloisField::new(6) {
            Err(Error::UnsupportedField { q: 6, supported }) => {
                assert!(supported.starts_with("4, 5, 7"))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_table_entry_is_a_field() {
        for q in supported_orders() {
            let f = GaloisField::new(q).unwrap();
            assert_eq!(f.characteristic().pow(f.extension_degree()), q);
            let n = q as usize;
            // sampled triples, stepping coprime strides through all of GF(q)
            for i in 0..n.min(40) {
                let a = FieldElement(i as u32);
                let b = FieldElement(((i * 7 + 3) % n) as u32);
                let c = FieldElement(((i * 13 + 5) % n) as u32);
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), FieldElement::ONE);
                }
                assert_eq!(
                    f.frobenius(f.mul(a, b)),
                    f.mul(f.frobenius(a), f.frobenius(b))
                );
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
            }
            let g = f.primitive_element();
            assert_eq!(f.multiplicative_order(g), Some(q - 1));
            let mut fixed: Vec<u32> = f.elements().map(|a| f.frobenius(a).0).collect();
            fixed.sort();
            fixed.dedup();
            assert_eq!(fixed.len(), n, "Frobenius is a bijection on GF({q})");
        }
    }
}
