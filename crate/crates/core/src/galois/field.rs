use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 64;

/// Monic irreducible polynomials, coefficients low degree first, for every
/// non-prime prime power up to 64.
const IRREDUCIBLE: &[(u64, &[u8])] = &[
    (4, &[1, 1, 1]),             // x^2 + x + 1
    (8, &[1, 1, 0, 1]),          // x^3 + x + 1
    (9, &[1, 0, 1]),             // x^2 + 1
    (16, &[1, 1, 0, 0, 1]),      // x^4 + x + 1
    (25, &[2, 1, 1]),            // x^2 + x + 2
    (27, &[1, 2, 0, 1]),         // x^3 + 2x + 1
    (32, &[1, 0, 1, 0, 0, 1]),   // x^5 + x^2 + 1
    (49, &[1, 0, 1]),            // x^2 + 1
    (64, &[1, 1, 0, 0, 0, 0, 1]), // x^6 + x + 1
];

/// `Some((p, n))` with `v = p^n`, `p` prime, `n ≥ 1`.
pub fn prime_power(v: u64) -> Option<(u64, u32)> {
    if v < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= v && !v.is_multiple_of(p) {
        p += 1;
    }
    if !v.is_multiple_of(p) {
        p = v;
    }
    let (mut rest, mut n) = (v, 0u32);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

pub fn is_prime_power(v: u64) -> bool {
    prime_power(v).is_some()
}

/// GF(v) for a prime power `v ≤ 64`. Element `e` stands for the polynomial
/// whose coefficients are the base-`p` digits of `e`; 0 and 1 are the
/// additive and multiplicative identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    order: u64,
    characteristic: u64,
    degree: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

pub fn field_make(v: u64) -> Result<Field> {
    let (p, n) = prime_power(v).ok_or(Error::NotPrimePower(v))?;
    if v > MAX_ORDER {
        return Err(Error::OrderTooLarge(v));
    }
    let modulus: Vec<u8> = if n == 1 {
        vec![0, 1]
    } else {
        IRREDUCIBLE
            .iter()
            .find(|(q, _)| *q == v)
            .map(|(_, c)| c.to_vec())
            .expect("table covers every prime power up to 64")
    };
    let size = v as usize;
    let digits = |e: usize| -> Vec<u64> {
        let mut e = e as u64;
        (0..n)
            .map(|_| {
                let d = e % p;
                e /= p;
                d
            })
            .collect()
    };
    let pack = |ds: &[u64]| -> u8 { ds.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u8 };

    let mut add = vec![0u8; size * size];
    let mut mul = vec![0u8; size * size];
    for a in 0..size {
        let da = digits(a);
        for b in 0..size {
            let db = digits(b);
            let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * size + b] = pack(&sum);

            let mut prod = vec![0u64; 2 * n as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // reduce by the monic modulus from the top degree down
            for deg in (n as usize..prod.len()).rev() {
                let lead = prod[deg];
                if lead == 0 {
                    continue;
                }
                let shift = deg - n as usize;
                for (i, &c) in modulus.iter().enumerate() {
                    let sub = lead * u64::from(c) % p;
                    prod[shift + i] = (prod[shift + i] + p - sub) % p;
                }
            }
            mul[a * size + b] = pack(&prod[..n as usize]);
        }
    }
    Ok(Field {
        order: v,
        characteristic: p,
        degree: n,
        add,
        mul,
    })
}

impl Field {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.order + b) as usize].into()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.order + b) as usize].into()
    }

    pub fn neg(&self, a: u64) -> u64 {
        (0..self.order).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (1..self.order).find(|&b| self.mul(a, b) == 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        for n in 1..self.order {
            if x == 1 {
                return Some(n);
            }
            x = self.mul(x, a);
        }
        None
    }
}
