//! Weight enumerators of [`LinearCode`]s.
//!
//! Two independent routes produce the same table:
//!
//! * [`weight_enumerator_exhaustive`] encodes every message and scans every
//!   symbol. It is the ground truth.
//! * [`weight_enumerator_reduced`] visits one message per orbit of the group
//!   generated by nonzero scalars and the k×k matrix realizing the cyclic
//!   shift, and weights each representative by its exact orbit size.
//!
//! Both split their message space into fixed contiguous chunks processed on
//! a rayon pool; per-chunk tables are summed, so the output does not depend
//! on the number of workers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agcode::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, Matrix};
use crate::rrspace::{monomials, RrFunction};

/// Largest message space the exhaustive route accepts.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 26;

/// Largest number of scalar-normalized messages the reduced route scans.
pub const REDUCED_LIMIT: u128 = 1 << 30;

/// `auto` picks the exhaustive route up to this many messages.
pub const AUTO_EXHAUSTIVE_LIMIT: u128 = 1 << 22;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Reduced,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Reduced => "reduced",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "reduced" => Ok(Method::Reduced),
            "auto" => Ok(Method::Auto),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Exact number of codewords of each weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightEnumerator {
    fn from_table(table: &[u64]) -> WeightEnumerator {
        WeightEnumerator {
            n: table.len() - 1,
            counts: table
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c))
                .collect(),
        }
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// Distinct nonzero weights in increasing order.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.nonzero_weights().first().copied()
    }

    /// The i-th smallest nonzero weight with its count (0-based).
    pub fn nth_weight(&self, i: usize) -> Option<(usize, u64)> {
        self.nonzero_weights()
            .get(i)
            .map(|&w| (w, self.count(w)))
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

fn add_table(rows: Vec<u64>, acc: &mut [u64]) {
    for (a, r) in acc.iter_mut().zip(rows) {
        *a += r;
    }
}

/// Precomputed multiples of each generator row, as raw encodings.
struct Kernel<'a> {
    field: &'a Field,
    n: usize,
    k: usize,
    q2: usize,
    multiples: Vec<u16>,
}

impl<'a> Kernel<'a> {
    fn new(code: &'a LinearCode) -> Kernel<'a> {
        let field = &**code.field();
        let (n, k, q2) = (code.n(), code.k(), field.order() as usize);
        let mut multiples = Vec::with_capacity(k * q2 * n);
        for row in code.generator() {
            for v in field.elements() {
                multiples.extend(row.iter().map(|&g| field.mul(v, g).0));
            }
        }
        Kernel {
            field,
            n,
            k,
            q2,
            multiples,
        }
    }

    #[inline]
    fn row(&self, r: usize, v: u16) -> &[u16] {
        let start = (r * self.q2 + v as usize) * self.n;
        &self.multiples[start..start + self.n]
    }

    #[inline]
    fn add_assign(&self, acc: &mut [u16], other: &[u16]) {
        if self.field.p() == 2 {
            for (a, &b) in acc.iter_mut().zip(other) {
                *a ^= b;
            }
        } else if let Some(t) = self.field.add_table() {
            let q2 = self.q2;
            for (a, &b) in acc.iter_mut().zip(other) {
                *a = t[*a as usize * q2 + b as usize];
            }
        } else {
            for (a, &b) in acc.iter_mut().zip(other) {
                *a = self.field.add(FieldElement(*a), FieldElement(b)).0;
            }
        }
    }

    /// Nonzero symbols of `base + other`.
    #[inline]
    fn weight_of_sum(&self, base: &[u16], other: &[u16]) -> usize {
        if self.field.p() == 2 {
            base.iter().zip(other).filter(|(&a, &b)| a != b).count()
        } else {
            let neg = |b: u16| self.field.neg(FieldElement(b)).0;
            base.iter().zip(other).filter(|(&a, &b)| a != neg(b)).count()
        }
    }

    fn weight(&self, msg: &[u16], scratch: &mut [u16]) -> usize {
        scratch.fill(0);
        for (r, &a) in msg.iter().enumerate().take(self.k - 1) {
            if a != 0 {
                let row = self.row(r, a);
                self.add_assign(scratch, row);
            }
        }
        self.weight_of_sum(scratch, self.row(self.k - 1, msg[self.k - 1]))
    }
}

fn message_space(code: &LinearCode) -> u128 {
    (code.field().order() as u128).saturating_pow(code.k() as u32)
}

/// Ground-truth enumerator: every message is encoded and scanned.
pub fn weight_enumerator_exhaustive(code: &LinearCode, jobs: usize) -> Result<WeightEnumerator> {
    let size = message_space(code);
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeGuard {
            size,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let kernel = Kernel::new(code);
    let (n, k, q2) = (kernel.n, kernel.k, kernel.q2 as u64);
    let total = size as u64;
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();

    let table = pool(jobs).install(|| {
        chunks
            .par_iter()
            .map(|&c| {
                let (start, end) = (c * CHUNK, ((c + 1) * CHUNK).min(total));
                let mut table = vec![0u64; n + 1];
                // digits[0] is the most significant coordinate.
                let mut digits = vec![0u16; k];
                let mut rest = start;
                for d in digits.iter_mut().rev() {
                    *d = (rest % q2) as u16;
                    rest /= q2;
                }
                // partial[r] = sum of the first r rows, scaled by their digits.
                let mut partial = vec![vec![0u16; n]; k];
                let mut dirty = 0;
                for _ in start..end {
                    for r in dirty..k - 1 {
                        let (done, todo) = partial.split_at_mut(r + 1);
                        todo[0].copy_from_slice(&done[r]);
                        if digits[r] != 0 {
                            kernel.add_assign(&mut todo[0], kernel.row(r, digits[r]));
                        }
                    }
                    let w = kernel.weight_of_sum(&partial[k - 1], kernel.row(k - 1, digits[k - 1]));
                    table[w] += 1;

                    dirty = k - 1;
                    let mut pos = k;
                    while pos > 0 {
                        pos -= 1;
                        digits[pos] += 1;
                        if digits[pos] as u64 == q2 {
                            digits[pos] = 0;
                        } else {
                            break;
                        }
                    }
                    dirty = dirty.min(pos);
                }
                table
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    add_table(b, &mut a);
                    a
                },
            )
    });
    Ok(WeightEnumerator::from_table(&table))
}

/// Action of the shift on messages: a ↦ a·S.
#[derive(Clone, Debug)]
enum ShiftAction {
    /// S = diag(ω^{e_r}); stores the exponents e_r.
    Diagonal(Vec<u32>),
    Dense(Matrix),
}

impl ShiftAction {
    fn of(code: &LinearCode) -> ShiftAction {
        let field = code.field();
        let k = code.k();
        let Some(s) = code.shift_matrix() else {
            // Not cyclic: scalars only.
            return ShiftAction::Diagonal(vec![0; k]);
        };
        let diagonal = (0..k).all(|i| (0..k).all(|j| i == j || s[i][j].is_zero()));
        if diagonal {
            ShiftAction::Diagonal((0..k).map(|i| field.log(s[i][i]).expect("S is invertible")).collect())
        } else {
            ShiftAction::Dense(s)
        }
    }
}

/// Scans the scalar-normalized messages (first nonzero coordinate 1); a
/// message is kept iff it is the smallest normalized element of its shift
/// orbit, and then counts for (q² − 1) · |orbit|.
struct Reducer<'a> {
    kernel: Kernel<'a>,
    action: ShiftAction,
    group: u64,
    /// For the diagonal action: relative[lead][r] = e_r − e_lead mod (q² − 1).
    relative: Vec<Vec<u64>>,
}

impl<'a> Reducer<'a> {
    fn new(code: &'a LinearCode, action: ShiftAction) -> Reducer<'a> {
        let group = code.field().order() as u64 - 1;
        let relative = match &action {
            ShiftAction::Diagonal(e) => e
                .iter()
                .map(|&el| e.iter().map(|&er| (er as u64 + group - el as u64) % group).collect())
                .collect(),
            ShiftAction::Dense(_) => Vec::new(),
        };
        Reducer {
            kernel: Kernel::new(code),
            action,
            group,
            relative,
        }
    }

    /// Orbit length of `msg` under the normalized shift action, or `None`
    /// if some image is lexicographically smaller.
    fn canonical_orbit_len(&self, msg: &[u16], lead: usize, buf: &mut Vec<u16>) -> Option<u64> {
        let field = self.kernel.field;
        let n = self.kernel.n as u64;
        buf.clear();
        match &self.action {
            ShiftAction::Diagonal(_) => {
                let exp = field.exp_table();
                let rel = &self.relative[lead];
                buf.extend(msg.iter().map(|&a| field.log(FieldElement(a)).unwrap_or(0) as u16));
                for t in 1..=n {
                    let mut ord = Ordering::Equal;
                    for r in lead + 1..msg.len() {
                        if msg[r] == 0 {
                            continue;
                        }
                        let l = (buf[r] as u64 + t * rel[r]) % self.group;
                        ord = exp[l as usize].cmp(&msg[r]);
                        if ord.is_ne() {
                            break;
                        }
                    }
                    match ord {
                        Ordering::Less => return None,
                        Ordering::Equal => return Some(t),
                        Ordering::Greater => {}
                    }
                }
                unreachable!("S^n is the identity")
            }
            ShiftAction::Dense(s) => {
                buf.extend_from_slice(msg);
                for t in 1..=n {
                    let cur: Vec<FieldElement> = buf.iter().map(|&a| FieldElement(a)).collect();
                    let next = linalg::vec_mul(field, &cur, s);
                    let lead_val = *next.iter().find(|x| !x.is_zero()).expect("S is invertible");
                    let inv = field.inv(lead_val).expect("nonzero");
                    buf.clear();
                    buf.extend(next.iter().map(|&x| field.mul(x, inv).0));
                    match buf.as_slice().cmp(msg) {
                        Ordering::Less => return None,
                        Ordering::Equal => return Some(t),
                        Ordering::Greater => {}
                    }
                }
                unreachable!("S^n is the identity")
            }
        }
    }
}

/// Orbit-reduced enumerator; agrees exactly with the exhaustive route.
pub fn weight_enumerator_reduced(code: &LinearCode, jobs: usize) -> Result<WeightEnumerator> {
    reduced_with_action(code, ShiftAction::of(code), jobs)
}

fn reduced_with_action(code: &LinearCode, action: ShiftAction, jobs: usize) -> Result<WeightEnumerator> {
    let q2 = code.field().order() as u64;
    let k = code.k();
    let normalized = (message_space(code) - 1) / (q2 as u128 - 1);
    if normalized > REDUCED_LIMIT {
        return Err(Error::SizeGuard {
            size: message_space(code),
            limit: REDUCED_LIMIT * (q2 as u128 - 1),
        });
    }
    let reducer = Reducer::new(code, action);
    let n = reducer.kernel.n;

    // (leading position, first tail index, end tail index)
    let mut chunks = Vec::new();
    for lead in 0..k {
        let tails = q2.pow((k - 1 - lead) as u32);
        let mut s = 0;
        while s < tails {
            chunks.push((lead, s, (s + CHUNK).min(tails)));
            s += CHUNK;
        }
    }

    let mut table = pool(jobs).install(|| {
        chunks
            .par_iter()
            .map(|&(lead, start, end)| {
                let mut table = vec![0u64; n + 1];
                let mut msg = vec![0u16; k];
                let mut scratch = vec![0u16; n];
                let mut buf = Vec::with_capacity(k);
                msg[lead] = 1;
                for tail in start..end {
                    let mut rest = tail;
                    for d in msg[lead + 1..].iter_mut().rev() {
                        *d = (rest % q2) as u16;
                        rest /= q2;
                    }
                    if let Some(len) = reducer.canonical_orbit_len(&msg, lead, &mut buf) {
                        let w = reducer.kernel.weight(&msg, &mut scratch);
                        table[w] += (q2 - 1) * len;
                    }
                }
                table
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    add_table(b, &mut a);
                    a
                },
            )
    });
    table[0] += 1;
    Ok(WeightEnumerator::from_table(&table))
}

/// Resolves `auto` to a concrete method for this code.
pub fn resolve_method(code: &LinearCode, method: Method) -> Method {
    match method {
        Method::Auto if message_space(code) <= AUTO_EXHAUSTIVE_LIMIT => Method::Exhaustive,
        Method::Auto => Method::Reduced,
        m => m,
    }
}

pub fn weight_enumerator(code: &LinearCode, method: Method, jobs: usize) -> Result<WeightEnumerator> {
    match resolve_method(code, method) {
        Method::Exhaustive => weight_enumerator_exhaustive(code, jobs),
        _ => weight_enumerator_reduced(code, jobs),
    }
}

pub fn min_distance(code: &LinearCode, jobs: usize) -> Result<usize> {
    let we = weight_enumerator(code, Method::Auto, jobs)?;
    Ok(we.min_distance().expect("code has nonzero codewords"))
}

/// Distance bounds `(lower, upper)`:
/// q² − q(m − 1) ≤ d ≤ q² − 1 − (m − 2)(q + 1).
pub fn distance_bounds(q: u32, m: usize) -> (usize, usize) {
    let (q, m) = (q as usize, m);
    (q * q - q * (m - 1), q * q - 1 - (m - 2) * (q + 1))
}

/// The function y·∏(y − τc_i)/x^m for the m − 2 smallest c_i ∈ F_q^*, whose
/// zeros on the orbit are the (m − 2)(q + 1) points on the lines y = τc_i.
pub fn upper_bound_witness(code: &LinearCode) -> Result<(RrFunction, Codeword)> {
    let m = code.m();
    if m < 3 {
        return Err(Error::WitnessNeedsM3(m));
    }
    let field = &**code.field();
    let tau = code.spec().tau;
    let cs: Vec<FieldElement> = field
        .subfield_elements()
        .into_iter()
        .filter(|c| !c.is_zero())
        .take(m - 2)
        .collect();
    // poly[j] is the coefficient of Y^j.
    let mut poly = vec![FieldElement::ONE];
    for c in cs {
        let root = field.mul(tau, c);
        let mut next = vec![FieldElement::ZERO; poly.len() + 1];
        for (j, &a) in poly.iter().enumerate() {
            next[j + 1] = field.add(next[j + 1], a);
            next[j] = field.sub(next[j], field.mul(root, a));
        }
        poly = next;
    }
    let mons = monomials(m);
    let mut f = RrFunction::zero(m);
    for (j, &a) in poly.iter().enumerate() {
        let slot = mons
            .iter()
            .position(|&mon| mon == (0, j as u32))
            .expect("deg g <= m - 2");
        f.gcoeffs[slot] = a;
    }
    let cw = code.evaluate(&f)?;
    Ok((f, cw))
}

/// Zeros of f on the orbit, counted as the nonzero roots of
/// p(X) = τX^{q+1−m}·g(X, τX^{q+1}) + ε. Every nonzero x is the abscissa of
/// exactly one orbit point, so this is n − weight(ev(f)).
pub fn zeros_via_polynomial(code: &LinearCode, f: &RrFunction) -> usize {
    let field = &**code.field();
    let q = field.q() as u64;
    let tau = code.spec().tau;
    field
        .nonzero_elements()
        .filter(|&x| {
            let y = field.mul(tau, field.pow(x, q + 1));
            let lead = field.mul(tau, field.pow(x, q + 1 - f.m as u64));
            let val = field.add(field.mul(lead, f.g_at(field, x, y)), f.eps);
            val.is_zero()
        })
        .count()
}

/// The sparse polynomials whose root counts control the m = 3 weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lacunary {
    /// X^{q+1} + aX + b.
    General { a: FieldElement, b: FieldElement },
    /// τb₂X^{q+1} + b₁X + b₀.
    Scaled {
        tau: FieldElement,
        b0: FieldElement,
        b1: FieldElement,
        b2: FieldElement,
    },
    /// b₁τX^{q−1} + 1.
    Shifted { b1: FieldElement, tau: FieldElement },
}

/// All roots in F_{q²}, by direct scan.
pub fn lacunary_roots(field: &Field, poly: &Lacunary) -> Result<Vec<FieldElement>> {
    let q = field.q() as u64;
    let eval: Box<dyn Fn(FieldElement) -> FieldElement> = match *poly {
        Lacunary::General { a, b } => Box::new(move |x| {
            field.add(field.add(field.pow(x, q + 1), field.mul(a, x)), b)
        }),
        Lacunary::Scaled { tau, b0, b1, b2 } => {
            let lead = field.mul(tau, b2);
            if lead.is_zero() {
                return Err(Error::DegenerateLeading("scaled"));
            }
            Box::new(move |x| {
                field.add(
                    field.add(field.mul(lead, field.pow(x, q + 1)), field.mul(b1, x)),
                    b0,
                )
            })
        }
        Lacunary::Shifted { b1, tau } => {
            let lead = field.mul(b1, tau);
            if lead.is_zero() {
                return Err(Error::DegenerateLeading("shifted"));
            }
            Box::new(move |x| field.add(field.mul(lead, field.pow(x, q - 1)), FieldElement::ONE))
        }
    };
    Ok(field.elements().filter(|&x| eval(x).is_zero()).collect())
}

/// The functions y(b₀ + b₂y)/x³ with b₂ ≠ 0 and b₀/(τb₂) ∈ F_q^*.
pub fn characterized_min_weight_functions(code: &LinearCode) -> Vec<RrFunction> {
    assert_eq!(code.m(), 3);
    let field = &**code.field();
    let tau = code.spec().tau;
    let mons = monomials(3);
    let slot_b0 = mons.iter().position(|&m| m == (0, 0)).unwrap();
    let slot_b2 = mons.iter().position(|&m| m == (0, 1)).unwrap();
    let mut out = Vec::new();
    for b2 in field.nonzero_elements() {
        for c in field.subfield_elements().into_iter().filter(|c| !c.is_zero()) {
            let mut f = RrFunction::zero(3);
            f.gcoeffs[slot_b0] = field.mul(c, field.mul(tau, b2));
            f.gcoeffs[slot_b2] = b2;
            out.push(f);
        }
    }
    out
}
