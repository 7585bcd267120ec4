//! Finite fields F_q with q = p^k and characteristic p > 3.
//!
//! A field is described by a [`FieldSpec`]: the prime p, the extension
//! degree k, and a monic irreducible modulus of degree k over F_p. Elements
//! are canonical residues, stored as coefficient vectors of length k with
//! entries in [0, p), low degree first.
//!
//! Two conventions hold everywhere:
//!
//! * the integer encoding of an element is `sum(c_i * p^i)`, an integer in
//!   [0, q) — this is the only boundary format;
//! * the canonical order on elements is ascending in that encoding, so
//!   enumeration, sorting, and root selection are deterministic.
//!
//! All values are immutable once built and safe to share across threads.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::Error;

/// Largest supported field order. Residues fit in u64 and every product is
/// taken through a 128-bit intermediate, so orders up to 2^32 are exact.
pub const MAX_ORDER: u64 = 1 << 32;

/// Deterministic trial-division primality test; fine for the sizes here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Writes q as p^k with p prime and k >= 1, or returns None.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    if n % 3 == 0 {
        return 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        if n % (d + 2) == 0 {
            return d + 2;
        }
        d += 6;
    }
    n
}

// ---------------------------------------------------------------------------
// Polynomial scratch arithmetic over F_p, used only to find and test the
// modulus. Polynomials are coefficient vectors, low degree first, trimmed.
// ---------------------------------------------------------------------------

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        exp >>= 1;
        base = (base as u128 * base as u128 % m as u128) as u64;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of a by the monic polynomial f.
fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    poly_trim(&mut a);
    while a.len() > df {
        let c = *a.last().unwrap();
        if c != 0 {
            let shift = a.len() - 1 - df;
            for (j, &fj) in f.iter().take(df).enumerate() {
                let sub = c as u128 * fj as u128 % p as u128;
                a[shift + j] = ((a[shift + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        a.pop();
        poly_trim(&mut a);
    }
    a
}

fn poly_mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    poly_rem(out, f, p)
}

fn poly_pow_rem(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_rem(&acc, &b, f, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = poly_mul_rem(&b, &b, f, p);
        }
    }
    acc
}

fn poly_monic(mut v: Vec<u64>, p: u64) -> Vec<u64> {
    if let Some(&lead) = v.last() {
        if lead != 1 {
            let inv = mod_inv(lead, p);
            for c in &mut v {
                *c = (*c as u128 * inv as u128 % p as u128) as u64;
            }
        }
    }
    v
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        b = poly_monic(b, p);
        let r = poly_rem(a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    poly_monic(a, p)
}

/// A monic f of degree k >= 2 is irreducible over F_p iff it shares no
/// factor with x^(p^d) - x for any d <= k/2 (every reducible f has an
/// irreducible factor of degree at most k/2).
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = poly_rem(vec![0, 1], f, p);
    let mut y = x.clone();
    for _ in 0..k / 2 {
        y = poly_pow_rem(&y, p, f, p);
        let mut diff = y.clone();
        if diff.len() < x.len() {
            diff.resize(x.len(), 0);
        }
        for (i, &xi) in x.iter().enumerate() {
            diff[i] = (diff[i] + p - xi) % p;
        }
        poly_trim(&mut diff);
        if poly_gcd(f.to_vec(), diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree k in lexicographic order, coefficients
/// compared low degree first.
fn smallest_irreducible(p: u64, k: u32, q: u64) -> Vec<u64> {
    if k == 1 {
        // Degree one: x itself, so arithmetic degenerates to integers mod p.
        return vec![0, 1];
    }
    let deg = k as usize;
    for t in 0..q {
        let mut coeffs = vec![0u64; deg + 1];
        coeffs[deg] = 1;
        let mut rest = t;
        for i in (0..deg).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        // Zero constant term means x divides the candidate.
        if coeffs[0] == 0 {
            continue;
        }
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct SpecInner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic, degree k, low degree first; length k + 1.
    modulus: Vec<u64>,
}

/// Description of F_q = F_p[x]/(m(x)). Cheap to clone and share.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<SpecInner>,
}

impl FieldSpec {
    /// Builds F_{p^k}, choosing the lexicographically smallest monic
    /// irreducible modulus of degree k (coefficients compared low degree
    /// first). Deterministic: equal (p, k) always give equal moduli.
    pub fn new(p: u64, k: u32) -> Result<FieldSpec, Error> {
        if k < 1 {
            return Err(Error::ZeroDegree);
        }
        if p <= 3 {
            return Err(Error::SmallCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= MAX_ORDER)
                .ok_or(Error::OrderTooLarge { p, k })?;
        }
        let modulus = smallest_irreducible(p, k, q);
        Ok(FieldSpec {
            inner: Arc::new(SpecInner { p, k, q, modulus }),
        })
    }

    /// Builds the field of order q, factoring q as p^k first.
    pub fn for_order(q: u64) -> Result<FieldSpec, Error> {
        let (p, k) = prime_power(q).ok_or(Error::InadmissibleOrder(q))?;
        FieldSpec::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// The modulus polynomial, low degree first, length k + 1, leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    fn wrap(&self, full: Vec<u64>) -> FieldElement {
        debug_assert_eq!(full.len(), self.inner.k as usize);
        let coeffs = if self.inner.k == 1 {
            Coeffs::Prime([full[0]])
        } else {
            Coeffs::Ext(full)
        };
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(vec![0; self.inner.k as usize])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under the canonical map Z -> F_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.inner.p;
        let mut coeffs = vec![0; self.inner.k as usize];
        coeffs[0] = n.rem_euclid(p as i64) as u64;
        self.wrap(coeffs)
    }

    /// Decodes the integer encoding sum(c_i * p^i), the boundary format.
    pub fn element_from_index(&self, index: u64) -> Result<FieldElement, Error> {
        if index >= self.inner.q {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.inner.q,
            });
        }
        if self.inner.k == 1 {
            return Ok(FieldElement {
                field: self.clone(),
                coeffs: Coeffs::Prime([index]),
            });
        }
        let p = self.inner.p;
        let mut coeffs = vec![0; self.inner.k as usize];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % p;
            rest /= p;
        }
        Ok(self.wrap(coeffs))
    }

    /// Builds an element from explicit coefficients, low degree first.
    /// Shorter lists are zero-padded; entries are reduced mod p.
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, Error> {
        let k = self.inner.k as usize;
        if coeffs.len() > k {
            return Err(Error::TooManyCoefficients {
                given: coeffs.len(),
                degree: self.inner.k,
            });
        }
        let mut full = vec![0; k];
        for (slot, &c) in full.iter_mut().zip(coeffs) {
            *slot = c % self.inner.p;
        }
        Ok(self.wrap(full))
    }

    /// All q elements in canonical (ascending encoding) order, starting at 0.
    pub fn elements(&self) -> Elements {
        Elements {
            field: self.clone(),
            next: 0,
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(q = {}^{}, modulus = {:?})",
            self.inner.p, self.inner.k, self.inner.modulus
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

/// Iterator over all elements of a field in canonical order.
pub struct Elements {
    field: FieldSpec,
    next: u64,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.field.order() {
            return None;
        }
        let el = self.field.element_from_index(self.next).unwrap();
        self.next += 1;
        Some(el)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.field.order() - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Elements {}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// Coefficient storage. Prime fields keep their single residue inline;
/// the exhaustive sweeps live and die by not allocating there.
#[derive(Clone)]
enum Coeffs {
    Prime([u64; 1]),
    Ext(Vec<u64>),
}

impl Coeffs {
    fn as_slice(&self) -> &[u64] {
        match self {
            Coeffs::Prime(a) => a,
            Coeffs::Ext(v) => v,
        }
    }
}

/// A canonical residue in F_q. Always fully reduced: every coefficient lies
/// in [0, p) and there are exactly k of them, low degree first.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Coefficients, low degree first, length k.
    pub fn coeffs(&self) -> &[u64] {
        self.coeffs.as_slice()
    }

    /// The integer encoding sum(c_i * p^i) in [0, q).
    pub fn index(&self) -> u64 {
        match &self.coeffs {
            Coeffs::Prime([a]) => *a,
            Coeffs::Ext(v) => {
                let p = self.field.characteristic();
                v.iter().rev().fold(0, |acc, &c| acc * p + c)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.as_slice().iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        let s = self.coeffs.as_slice();
        s[0] == 1 && s[1..].iter().all(|&c| c == 0)
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "operands belong to different fields"
        );
    }

    fn add_core(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.characteristic();
        let coeffs = match (&self.coeffs, &rhs.coeffs) {
            (Coeffs::Prime([a]), Coeffs::Prime([b])) => Coeffs::Prime([(a + b) % p]),
            (a, b) => Coeffs::Ext(
                a.as_slice()
                    .iter()
                    .zip(b.as_slice())
                    .map(|(&x, &y)| (x + y) % p)
                    .collect(),
            ),
        };
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_core(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.characteristic();
        let coeffs = match (&self.coeffs, &rhs.coeffs) {
            (Coeffs::Prime([a]), Coeffs::Prime([b])) => Coeffs::Prime([(a + p - b) % p]),
            (a, b) => Coeffs::Ext(
                a.as_slice()
                    .iter()
                    .zip(b.as_slice())
                    .map(|(&x, &y)| (x + p - y) % p)
                    .collect(),
            ),
        };
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn neg_core(&self) -> FieldElement {
        let p = self.field.characteristic();
        let coeffs = match &self.coeffs {
            Coeffs::Prime([a]) => Coeffs::Prime([(p - a) % p]),
            Coeffs::Ext(v) => Coeffs::Ext(v.iter().map(|&a| (p - a) % p).collect()),
        };
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_core(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.characteristic();
        let coeffs = match (&self.coeffs, &rhs.coeffs) {
            (Coeffs::Prime([a]), Coeffs::Prime([b])) => {
                Coeffs::Prime([(*a as u128 * *b as u128 % p as u128) as u64])
            }
            (a, b) => {
                let (a, b) = (a.as_slice(), b.as_slice());
                let k = a.len();
                let mut out = vec![0u64; 2 * k - 1];
                for (i, &ai) in a.iter().enumerate() {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        out[i + j] =
                            ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
                    }
                }
                let mut reduced = poly_rem(out, self.field.modulus(), p);
                reduced.resize(k, 0);
                Coeffs::Ext(reduced)
            }
        };
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul_core(self)
    }

    /// Exponentiation by a nonnegative integer; pow(0) is 1.
    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_core(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse, computed as a^(q-2).
    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        Ok(self.mul_core(&rhs.inv()?))
    }

    /// The Jacobi symbol of this element: 0 for zero, 1 for nonzero squares,
    /// -1 for nonsquares. Euler criterion a^((q-1)/2).
    pub fn jacobi(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let t = self.pow((self.field.order() - 1) / 2);
        if t.is_one() {
            1
        } else {
            debug_assert!((&t + &self.field.one()).is_zero());
            -1
        }
    }

    /// Canonical square root: the smaller of the two roots in canonical
    /// order when one exists, None for nonsquares.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.jacobi() == -1 {
            return None;
        }
        let q = self.field.order();
        let root = if q % 4 == 3 {
            self.pow((q + 1) / 4)
        } else {
            self.tonelli_shanks()
        };
        debug_assert!(root.square() == *self);
        let other = root.neg_core();
        Some(if root <= other { root } else { other })
    }

    /// Tonelli-Shanks for q = 1 (mod 4); self is a nonzero square.
    fn tonelli_shanks(&self) -> FieldElement {
        let q = self.field.order();
        let e = (q - 1).trailing_zeros();
        let m = (q - 1) >> e;
        let nonresidue = self
            .field
            .elements()
            .find(|x| x.jacobi() == -1)
            .expect("odd field has nonsquares");
        let mut c = nonresidue.pow(m);
        let mut t = self.pow(m);
        let mut x = self.pow((m + 1) / 2);
        let mut r = e;
        while !t.is_one() {
            let mut i = 0u32;
            let mut s = t.clone();
            while !s.is_one() {
                s = s.square();
                i += 1;
            }
            let b = c.pow(1u64 << (r - i - 1));
            x = x.mul_core(&b);
            c = b.square();
            t = t.mul_core(&c);
            r = i;
        }
        x
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs.as_slice() == other.coeffs.as_slice()
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Canonical order: ascending integer encoding.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert!(self.field == other.field);
        let a = self.coeffs.as_slice();
        let b = other.coeffs.as_slice();
        a.iter().rev().cmp(b.iter().rev())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.index(), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $core:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$core(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$core(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$core(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$core(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_core);
impl_binop!(Sub, sub, sub_core);
impl_binop!(Mul, mul, mul_core);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_core()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_core()
    }
}
