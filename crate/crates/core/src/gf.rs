//! Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q²}.
//!
//! Every element of F_{q²} is stored as the integer whose little-endian
//! base-p digits are its coefficients in the polynomial basis of one monic
//! irreducible of degree 2k over F_p. The subfield F_q is not represented
//! separately: it is the set of elements fixed by `x ↦ x^q`.
//!
//! Multiplication goes through log/antilog tables with respect to the
//! primitive element ω, so all operations are table lookups once the field
//! has been built.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported q² (all tables are indexed by `u16`).
pub const MAX_ORDER: u32 = 1 << 16;

/// Full addition tables are only built for fields up to this size.
const ADD_TABLE_MAX_ORDER: u32 = 1024;

/// An element of F_{q²}, stored as its base-p digit encoding.
///
/// `0` is the zero element and `1` the multiplicative identity. The value
/// is only meaningful together with the [`Field`] that produced it.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parameters and lookup tables of F_{q²} with q = p^k.
#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    order: u32,
    irreducible: Vec<u32>,
    omega: FieldElement,
    // exp[i] = ω^i for 0 <= i < 2(q²-1), so exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
    neg: Vec<u16>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("irreducible", &self.irreducible)
            .field("omega", &self.omega)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut enc: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = enc % p;
        enc /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (low-to-high).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - lead) * c % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds F_{q²} for q = p^k.
    ///
    /// The defining polynomial is the smallest monic irreducible of degree 2k
    /// (lower coefficients read as a little-endian base-p integer) and ω is
    /// the smallest encoding of multiplicative order q² - 1.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let out_of_range = Error::FieldSizeOutOfRange { p, k };
        if k == 0 {
            return Err(out_of_range);
        }
        let q = p.checked_pow(k).ok_or(out_of_range.clone())?;
        let order = q.checked_mul(q).ok_or(out_of_range.clone())?;
        if q < 3 || order > MAX_ORDER {
            return Err(out_of_range);
        }
        let deg = 2 * k as usize;

        let irreducible = (0..order)
            .map(|low| {
                let mut poly = digits(low, p, deg);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial of every degree exists");

        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, deg), digits(b, p, deg));
            let mut prod = vec![0u32; 2 * deg - 1];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            undigits(&poly_rem(&prod, &irreducible, p), p)
        };

        let group = order - 1;
        let mut exp = Vec::with_capacity(group as usize);
        let mut omega = None;
        for cand in 2..order {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x as u16);
                x = slow_mul(x, cand);
                if x == 1 {
                    break;
                }
            }
            if exp.len() as u32 == group {
                omega = Some(cand);
                break;
            }
        }
        let omega = omega.expect("the multiplicative group of a finite field is cyclic");

        let mut log = vec![0u32; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u16> = exp.iter().chain(exp.iter()).copied().collect();

        let neg = (0..order)
            .map(|a| {
                let ds: Vec<u32> = digits(a, p, deg).iter().map(|&d| (p - d) % p).collect();
                undigits(&ds, p) as u16
            })
            .collect();

        let mut field = Field {
            p,
            k,
            q,
            order,
            irreducible,
            omega: FieldElement(omega as u16),
            exp: doubled,
            log,
            neg,
            add: None,
        };
        if p != 2 && order <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add = Some(table);
        }
        Ok(field)
    }

    /// Builds F_{q²} from q alone.
    pub fn with_q(q: u32) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Field::new(p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// q², the number of field elements.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial, low to high, leading 1 included.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    /// Validates an encoding.
    pub fn element(&self, enc: u32) -> Option<FieldElement> {
        (enc < self.order).then_some(FieldElement(enc as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(|e| FieldElement(e as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order).map(|e| FieldElement(e as u16))
    }

    /// The elements of F_q in encoding order.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.in_subfield(x)).collect()
    }

    /// Embeds an element of the prime field.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        FieldElement((c % self.p) as u16)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let (mut out, mut scale) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => FieldElement(t[a.index() * self.order as usize + b.index()]),
            None => FieldElement(self.add_digits(a.enc(), b.enc()) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.index()] + self.log[b.index()]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let group = self.order - 1;
        Ok(FieldElement(
            self.exp[((group - self.log[a.index()]) % group) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; for nonzero `a` the exponent is reduced mod q² - 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = (self.log[a.index()] as u64 * (e % group)) % group;
        FieldElement(self.exp[l as usize])
    }

    /// ω^i for any integer i.
    pub fn omega_pow(&self, i: i64) -> FieldElement {
        let group = (self.order - 1) as i64;
        FieldElement(self.exp[i.rem_euclid(group) as usize])
    }

    /// Discrete logarithm to base ω, `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<u32> {
        let l = self.log(a)?;
        let group = self.order - 1;
        Some(group / gcd(group, l))
    }

    /// x ↦ x^q.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q as u64)
    }

    /// N(x) = x^{q+1}.
    pub fn norm(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q as u64 + 1)
    }

    /// Tr(x) = x^q + x.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        self.add(self.frobenius(a), a)
    }

    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.frobenius(a) == a
    }

    pub(crate) fn add_table(&self) -> Option<&[u16]> {
        self.add.as_deref()
    }

    pub(crate) fn exp_table(&self) -> &[u16] {
        &self.exp
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter()
            .fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
