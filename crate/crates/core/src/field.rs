//! Table-driven arithmetic in the small finite fields GF(q), q in {2,3,4,5,7}.
//!
//! Elements are dense indices `0..q` with `0` the zero and `1` the one.
//! Prime fields use residues mod p; GF(4) uses the basis {1, x} with
//! x² = x + 1, encoding `a + b·x` as `a + 2b`.

use crate::error::{Error, Result};

pub const SUPPORTED_ORDERS: [u32; 5] = [2, 3, 4, 5, 7];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    q: u8,
    p: u8,
    e: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<FieldSpec> {
        let (p, e) = match q {
            2 | 3 | 5 | 7 => (q as u8, 1),
            4 => (2, 2),
            _ => return Err(Error::UnsupportedOrder(q)),
        };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let (s, m) = if e == 1 {
                    ((a + b) % qs, (a * b) % qs)
                } else {
                    (a ^ b, gf4_mul(a as u8, b as u8) as usize)
                };
                add[a * qs + b] = s as u8;
                mul[a * qs + b] = m as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap_or(0) as u8;
            if a != 0 {
                inv[a] = (0..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8;
            }
        }
        let f = FieldSpec {
            q: q as u8,
            p,
            e,
            add,
            mul,
            neg,
            inv,
        };
        f.verify()?;
        Ok(f)
    }

    /// Exhaustive check of the field axioms over all triples.
    pub fn verify(&self) -> Result<()> {
        let q = self.q as u32;
        let fail = |axiom| Err(Error::AxiomViolation { q, axiom });
        let n = self.q;
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverse");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut k: u32) -> u8 {
        let mut r = 1;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p as u32)
    }

    /// Smallest element generating the multiplicative group.
    pub fn primitive(&self) -> u8 {
        let m = self.q as u32 - 1;
        (1..self.q)
            .find(|&a| (1..m).all(|k| self.pow(a, k) != 1))
            .expect("finite field has a primitive element")
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // (a0 + a1 x)(b0 + b1 x) with x² = x + 1
    let (a0, a1) = (a & 1, a >> 1);
    let (b0, b1) = (b & 1, b >> 1);
    let hi = a1 & b1;
    let c0 = (a0 & b0) ^ hi;
    let c1 = (a0 & b1) ^ (a1 & b0) ^ hi;
    c0 | (c1 << 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_identities() {
        let f = FieldSpec::new(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = FieldSpec::new(3).unwrap();
        assert_eq!(f.inv(2), 2);
    }

    #[test]
    fn gf4_generator_squares_to_successor() {
        let f = FieldSpec::new(4).unwrap();
        // x = 2, x + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
        assert_eq!(f.frobenius(2), 3);
        assert_eq!(f.frobenius(f.frobenius(2)), 2);
    }

    #[test]
    fn all_supported_orders_pass_axioms() {
        for q in SUPPORTED_ORDERS {
            let f = FieldSpec::new(q).unwrap();
            assert!(f.verify().is_ok());
            let g = f.primitive();
            let mut seen = std::collections::HashSet::new();
            for k in 0..q - 1 {
                seen.insert(f.pow(g, k));
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        for q in [0, 1, 6, 8, 9, 11] {
            assert_eq!(FieldSpec::new(q), Err(Error::UnsupportedOrder(q)));
        }
    }
}
