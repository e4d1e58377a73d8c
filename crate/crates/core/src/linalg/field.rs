use crate::error::{Error, Result};

/// Arithmetic in GF(q) for a prime `q <= 251`. Elements are stored as `u8`
/// residues in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u8,
}

impl PrimeField {
    pub const MAX_ORDER: u32 = 251;

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=Self::MAX_ORDER).contains(&q) || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q: q as u8 })
    }

    /// GF(2), the field every worked example lives in.
    pub const fn binary() -> Self {
        PrimeField { q: 2 }
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.q
    }

    #[inline]
    pub fn contains(self, value: u32) -> bool {
        value < self.q as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i32, a as i32);
        let (mut t0, mut t1) = (0i32, 1i32);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Some(t0.rem_euclid(self.q as i32) as u8)
    }

    /// `a * b + c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(self, a: u8, b: u8, c: u8) -> u8 {
        ((a as u16 * b as u16 + c as u16) % self.q as u16) as u8
    }

    /// Iterator over the nonzero elements `1..q`.
    pub fn nonzero(self) -> impl Iterator<Item = u8> + Clone {
        1..self.q
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        for q in [0, 1, 4, 6, 9, 15, 249, 256, 257] {
            assert_eq!(PrimeField::new(q), Err(Error::NotPrime(q)));
        }
        for q in [2, 3, 5, 7, 251] {
            assert!(PrimeField::new(q).is_ok());
        }
    }

    #[test]
    fn every_nonzero_element_has_an_inverse() {
        for q in [2u32, 3, 5, 7, 11, 13, 251] {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(f.inv(0), None);
            for a in f.nonzero() {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn add_sub_neg_agree() {
        let f = PrimeField::new(7).unwrap();
        for a in 0..7 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..7 {
                assert_eq!(f.sub(f.add(a, b), b), a);
                assert_eq!(f.mul_add(a, b, 3), f.add(f.mul(a, b), 3));
            }
        }
    }
}
