//! Finite fields GF(p^m) with a canonical primitive modulus.
//!
//! Elements are plain `u32` representatives: the polynomial-basis
//! coordinates read as base-`p` digits, lowest degree first. The class of
//! `x` (or the smallest primitive root when `m = 1`) is the generator `α`.
//!
//! Two fields with the same `(p, m)` are identical, so [`FieldId`] doubles
//! as the identity used for mismatch checks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest field that gets full log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;
/// Largest field that can be constructed at all.
pub const FIELD_LIMIT: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldId {
    pub p: u32,
    pub m: u32,
}

impl FieldId {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

enum MulRule {
    Log { log: Vec<u32>, exp: Vec<u32> },
    PrimeMod,
    Poly,
}

enum AddRule {
    Xor,
    PrimeMod,
    Table(Vec<u32>),
    Zech(Vec<u32>),
    Digits,
}

pub struct Field {
    id: FieldId,
    q: u32,
    modulus: Vec<u32>,
    /// `pw[i] = p^i` for `i <= m`.
    pw: Vec<u32>,
    /// Rep of the generator (the class of `x`, or the primitive root when `m = 1`).
    alpha: u32,
    mul_rule: MulRule,
    add_rule: AddRule,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.id.p)
            .field("m", &self.id.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

static CACHE: OnceLock<Mutex<HashMap<FieldId, Arc<Field>>>> = OnceLock::new();

/// Shared, cached instance of GF(p^m).
pub fn field(p: u32, m: u32) -> Result<Arc<Field>> {
    let id = FieldId { p, m };
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&id) {
        return Ok(f.clone());
    }
    let built = Arc::new(Field::new(p, m)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(id).or_insert(built).clone())
}

/// Shared instance of the field with `q` elements.
pub fn field_of_order(q: u64) -> Result<Arc<Field>> {
    let (p, m) = crate::arith::prime_power(q)
        .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
    field(p as u32, m)
}

impl Field {
    /// Builds GF(p^m) from scratch; prefer [`field`], which caches.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be >= 1".into()));
        }
        let q = match checked_pow(p as u64, m) {
            Some(q) if q <= FIELD_LIMIT => q,
            other => {
                return Err(Error::BudgetExceeded {
                    needed: other.map_or(u128::MAX, |q| q as u128),
                    budget: FIELD_LIMIT as u128,
                })
            }
        };
        let pw: Vec<u32> = (0..=m).map(|i| (p as u64).pow(i) as u32).collect();
        let (modulus, alpha) = if m == 1 {
            let g = smallest_primitive_root(p as u64) as u32;
            (vec![(p - g) % p, 1], g)
        } else {
            (lex_smallest_primitive(p, m), p)
        };
        let id = FieldId { p, m };
        let mut f = Field {
            id,
            q: q as u32,
            modulus,
            pw,
            alpha,
            mul_rule: MulRule::Poly,
            add_rule: AddRule::Digits,
        };
        f.add_rule = if p == 2 {
            AddRule::Xor
        } else if m == 1 {
            AddRule::PrimeMod
        } else {
            AddRule::Digits
        };
        if q <= TABLE_LIMIT {
            let qm1 = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * qm1.max(1)];
            let mut log = vec![NONE; q as usize];
            let mut x = 1u32;
            for i in 0..qm1 {
                assert!(log[x as usize] == NONE, "generator is not primitive");
                exp[i] = x;
                log[x as usize] = i as u32;
                x = f.times_alpha_slow(x);
            }
            assert_eq!(x, 1, "generator order is not q - 1");
            for i in qm1..exp.len() {
                exp[i] = exp[i - qm1];
            }
            if p != 2 && m > 1 {
                if q <= 256 {
                    let mut t = vec![0u32; (q * q) as usize];
                    for a in 0..q as u32 {
                        for b in 0..q as u32 {
                            t[(a * q as u32 + b) as usize] = f.digit_add(a, b);
                        }
                    }
                    f.add_rule = AddRule::Table(t);
                } else {
                    let mut zech = vec![NONE; qm1];
                    for (l, z) in zech.iter_mut().enumerate() {
                        let s = f.digit_add(exp[l], 1);
                        if s != 0 {
                            *z = log[s as usize];
                        }
                    }
                    f.add_rule = AddRule::Zech(zech);
                }
            }
            f.mul_rule = MulRule::Log { log, exp };
        } else if m == 1 {
            f.mul_rule = MulRule::PrimeMod;
        }
        Ok(f)
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.id.p
    }

    pub fn m(&self) -> u32 {
        self.id.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.id.p,
            m: self.id.m,
            modulus: self.modulus.clone(),
        }
    }

    /// The generator α.
    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    fn digits(&self, mut rep: u32) -> Vec<u32> {
        let p = self.id.p;
        (0..self.id.m)
            .map(|_| {
                let d = rep % p;
                rep /= p;
                d
            })
            .collect()
    }

    fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.id.p + d)
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.id.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for i in 0..self.id.m as usize {
            let s = (a % p + b % p) % p;
            out += s * self.pw[i];
            a /= p;
            b /= p;
        }
        out
    }

    fn digit_neg(&self, a: u32) -> u32 {
        let p = self.id.p;
        let mut a = a;
        let mut out = 0;
        for i in 0..self.id.m as usize {
            let d = a % p;
            out += ((p - d) % p) * self.pw[i];
            a /= p;
        }
        out
    }

    /// Multiplies by the generator without tables.
    fn times_alpha_slow(&self, rep: u32) -> u32 {
        let p = self.id.p as u64;
        if self.id.m == 1 {
            return ((rep as u64 * self.alpha as u64) % p) as u32;
        }
        let m = self.id.m as usize;
        let top = rep / self.pw[m - 1];
        let rest = (rep % self.pw[m - 1]) * self.id.p;
        if top == 0 {
            return rest;
        }
        let mut d = self.digits(rest);
        for i in 0..m {
            let sub = (top as u64 * self.modulus[i] as u64) % p;
            d[i] = ((d[i] as u64 + p - sub) % p) as u32;
        }
        self.from_digits(&d)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        if self.id.p == 2 {
            let m = self.id.m;
            let mut prod: u64 = 0;
            for i in 0..m {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let red: u64 = self.from_digits(&self.modulus[..m as usize]) as u64;
            for d in (m..2 * m).rev() {
                if (prod >> d) & 1 == 1 {
                    prod ^= 1 << d;
                    prod ^= red << (d - m);
                }
            }
            return prod as u32;
        }
        let p = self.id.p as u64;
        let m = self.id.m as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..m {
                    let sub = c * self.modulus[i] as u64 % p;
                    prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
                }
            }
        }
        let low: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        self.from_digits(&low)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_rule {
            AddRule::Xor => a ^ b,
            AddRule::PrimeMod => {
                let s = a + b;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            }
            AddRule::Table(t) => t[(a * self.q + b) as usize],
            AddRule::Zech(z) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let MulRule::Log { log, exp } = &self.mul_rule else {
                    unreachable!()
                };
                let qm1 = self.q - 1;
                let la = log[a as usize];
                let lb = log[b as usize];
                let d = if lb >= la { lb - la } else { lb + qm1 - la };
                let zd = z[d as usize];
                if zd == NONE {
                    0
                } else {
                    exp[(la + zd) as usize]
                }
            }
            AddRule::Digits => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.add_rule {
            AddRule::Xor => a,
            AddRule::PrimeMod => {
                if a == 0 {
                    0
                } else {
                    self.q - a
                }
            }
            _ => match &self.mul_rule {
                MulRule::Log { log, exp } if a != 0 => {
                    exp[(log[a as usize] + (self.q - 1) / 2) as usize]
                }
                _ => self.digit_neg(a),
            },
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.mul_rule {
            MulRule::Log { log, exp } => exp[(log[a as usize] + log[b as usize]) as usize],
            MulRule::PrimeMod => ((a as u64 * b as u64) % self.q as u64) as u32,
            MulRule::Poly => self.poly_mul(a, b),
        }
    }

    /// `α^k` for any integer `k`.
    pub fn alpha_pow(&self, k: i64) -> u32 {
        let qm1 = (self.q - 1) as i64;
        let e = k.rem_euclid(qm1) as u64;
        match &self.mul_rule {
            MulRule::Log { exp, .. } => exp[e as usize],
            _ => self.pow_u64(self.alpha, e),
        }
    }

    fn pow_u64(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e`; negative exponents go through the inverse.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let qm1 = (self.q - 1) as i64;
        let e = e.rem_euclid(qm1) as u64;
        Ok(match &self.mul_rule {
            MulRule::Log { log, exp } => {
                exp[((log[a as usize] as u64 * e) % qm1 as u64) as usize]
            }
            _ => self.pow_u64(a, e),
        })
    }

    /// `a^e` for a non-negative exponent; never fails.
    pub fn pow_nn(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let qm1 = (self.q - 1) as u64;
        match &self.mul_rule {
            MulRule::Log { log, exp } => exp[((log[a as usize] as u64 * (e % qm1)) % qm1) as usize],
            _ => self.pow_u64(a, e % qm1),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.mul_rule {
            MulRule::Log { log, exp } => {
                let l = log[a as usize];
                if l == 0 {
                    1
                } else {
                    exp[(self.q - 1 - l) as usize]
                }
            }
            _ => self.pow_u64(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete logarithm to base α; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u64> {
        if a == 0 || a >= self.q {
            return None;
        }
        match &self.mul_rule {
            MulRule::Log { log, .. } => Some(log[a as usize] as u64),
            _ => Some(self.bsgs_log(a)),
        }
    }

    fn bsgs_log(&self, a: u32) -> u64 {
        let n = (self.q - 1) as u64;
        let step = (n as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = 1u32;
        for j in 0..step {
            baby.entry(x).or_insert(j);
            x = self.mul(x, self.alpha);
        }
        let giant = self.inv(self.pow_u64(self.alpha, step)).unwrap();
        let mut y = a;
        for i in 0..=step {
            if let Some(&j) = baby.get(&y) {
                return (i * step + j) % n;
            }
            y = self.mul(y, giant);
        }
        unreachable!("α is primitive")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> Option<u64> {
        let l = self.log(a)?;
        let n = (self.q - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// `x^(p^j)`.
    pub fn frobenius(&self, x: u32, j: u32) -> u32 {
        let mut y = x;
        for _ in 0..j {
            y = self.pow_nn(y, self.id.p as u64);
        }
        y
    }

    /// Trace onto the subfield GF(p^t): the sum of `x^(p^(t j))` for `j < m/t`.
    pub fn trace_to(&self, x: u32, t: u32) -> Result<u32> {
        if t == 0 || self.id.m % t != 0 {
            return Err(Error::InvalidParameters(format!(
                "{t} does not divide extension degree {}",
                self.id.m
            )));
        }
        let step = (self.id.p as u64).pow(t);
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.id.m / t {
            acc = self.add(acc, y);
            y = self.pow_nn(y, step);
        }
        Ok(acc)
    }

    /// `Tr_{q^2/q}(x) = x + x^q` where this field has `q^2` elements.
    pub fn rel_trace(&self, x: u32, q: u64) -> Result<u32> {
        if q * q != self.q as u64 {
            return Err(Error::SpecMismatch);
        }
        Ok(self.add(x, self.pow_nn(x, q)))
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement> {
        if rep >= self.q {
            return Err(Error::InvalidParameters(format!(
                "{rep} is not an element of GF({})",
                self.q
            )));
        }
        Ok(FieldElement { field: self.id, rep })
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&r| crate::arith::pow_mod(g, (p - 1) / r, p) != 1)
        })
        .expect("every prime has a primitive root")
}

/// Multiplication of residues modulo a monic `f` over GF(p); residues are
/// digit vectors of length `deg f`.
fn mulmod_digits(a: &[u32], b: &[u32], f: &[u32], p: u64) -> Vec<u32> {
    let m = f.len() - 1;
    let mut prod = vec![0u64; 2 * m - 1];
    for i in 0..m {
        if a[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
        }
    }
    for d in (m..2 * m - 1).rev() {
        let c = prod[d];
        if c != 0 {
            for i in 0..m {
                let sub = c * f[i] as u64 % p;
                prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
            }
        }
    }
    prod[..m].iter().map(|&x| x as u32).collect()
}

fn x_pow_mod(e: u64, f: &[u32], p: u64) -> Vec<u32> {
    let m = f.len() - 1;
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut base = vec![0u32; m];
    base[1 % m] = 1;
    if m == 1 {
        base[0] = ((p - f[0] as u64) % p) as u32;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_digits(&acc, &base, f, p);
        }
        base = mulmod_digits(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Is `x` of multiplicative order `p^m - 1` modulo the monic `f`?
pub(crate) fn is_primitive_poly(f: &[u32], p: u32) -> bool {
    let m = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false;
    }
    let p64 = p as u64;
    let n = p64.pow(m) - 1;
    let mut one = vec![0u32; m as usize];
    one[0] = 1;
    if x_pow_mod(n, f, p64) != one {
        return false;
    }
    prime_factors(n)
        .into_iter()
        .all(|r| x_pow_mod(n / r, f, p64) != one)
}

/// Lowest-to-highest coefficients of the primitive monic polynomial of degree
/// `m` whose lower coefficients, read as a base-`p` number, are smallest.
fn lex_smallest_primitive(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for c in 1..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut r = c;
        for _ in 0..m {
            f.push((r % p as u64) as u32);
            r /= p as u64;
        }
        f.push(1);
        if is_primitive_poly(&f, p) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// An element tagged with the field it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub field: FieldId,
    pub rep: u32,
}

impl FieldElement {
    fn check(&self, other: &FieldElement, f: &Field) -> Result<()> {
        if self.field != f.id || other.field != f.id {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    fn wrap(&self, rep: u32) -> FieldElement {
        FieldElement { field: self.field, rep }
    }

    pub fn add(self, rhs: FieldElement, f: &Field) -> Result<FieldElement> {
        self.check(&rhs, f)?;
        Ok(self.wrap(f.add(self.rep, rhs.rep)))
    }

    pub fn sub(self, rhs: FieldElement, f: &Field) -> Result<FieldElement> {
        self.check(&rhs, f)?;
        Ok(self.wrap(f.sub(self.rep, rhs.rep)))
    }

    pub fn mul(self, rhs: FieldElement, f: &Field) -> Result<FieldElement> {
        self.check(&rhs, f)?;
        Ok(self.wrap(f.mul(self.rep, rhs.rep)))
    }

    pub fn neg(self, f: &Field) -> Result<FieldElement> {
        self.check(&self, f)?;
        Ok(self.wrap(f.neg(self.rep)))
    }

    pub fn inv(self, f: &Field) -> Result<FieldElement> {
        self.check(&self, f)?;
        Ok(self.wrap(f.inv(self.rep)?))
    }

    pub fn pow(self, e: i64, f: &Field) -> Result<FieldElement> {
        self.check(&self, f)?;
        Ok(self.wrap(f.pow(self.rep, e)?))
    }
}

/// The `q + 1` roots of unity of order dividing `q + 1` inside GF(q^2),
/// listed as successive powers of `β = α^(q-1)`.
#[derive(Clone, Debug)]
pub struct UnitCircle {
    pub field: FieldId,
    pub q: u64,
    pub beta: u32,
    pub elements: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl UnitCircle {
    pub fn new(f: &Field) -> Result<Self> {
        if f.m() % 2 != 0 {
            return Err(Error::NotSquareField(f.order() as u64));
        }
        let q = (f.p() as u64).pow(f.m() / 2);
        let beta = f.alpha_pow(q as i64 - 1);
        let mut elements = Vec::with_capacity(q as usize + 1);
        let mut u = 1;
        for _ in 0..=q {
            elements.push(u);
            u = f.mul(u, beta);
        }
        let index = elements.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        Ok(UnitCircle {
            field: f.id(),
            q,
            beta,
            elements,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position `i` with `u = β^i`.
    pub fn index_of(&self, u: u32) -> Option<usize> {
        self.index.get(&u).copied()
    }
}

/// A field embedding GF(p^a) → GF(p^b) given as lookup tables both ways.
#[derive(Clone)]
pub struct Embedding {
    small: Arc<Field>,
    big: Arc<Field>,
    up: Vec<u32>,
    down: Vec<u32>,
}

impl std::fmt::Debug for Embedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.small.id(), self.big.id())
    }
}

impl Embedding {
    /// Sends `α_small` to `α_big^(N j)`, `N = (|big| - 1)/(|small| - 1)`, with
    /// the smallest `j` for which that power is a root of the small modulus.
    pub fn canonical(small: Arc<Field>, big: Arc<Field>) -> Result<Self> {
        if small.p() != big.p() || big.m() % small.m() != 0 {
            return Err(Error::SpecMismatch);
        }
        let qs = small.order() as u64;
        let qb = big.order() as u64;
        let n = (qb - 1) / (qs - 1);
        let modulus = small.modulus().to_vec();
        let is_root = |g: u32| {
            let v = modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| big.add(big.mul(acc, g), c));
            v == 0
        };
        let gamma = (1..qs.max(2))
            .map(|j| big.alpha_pow((n * j) as i64))
            .find(|&g| is_root(g))
            .expect("the subfield contains the roots of its modulus");
        Ok(Self::from_image_of_alpha(small, big, gamma))
    }

    fn from_image_of_alpha(small: Arc<Field>, big: Arc<Field>, gamma: u32) -> Self {
        let mut up = vec![0u32; small.order() as usize];
        let mut down = vec![NONE; big.order() as usize];
        down[0] = 0;
        let mut x = 1u32;
        for k in 0..small.order() as i64 - 1 {
            let s = small.alpha_pow(k);
            up[s as usize] = x;
            down[x as usize] = s;
            x = big.mul(x, gamma);
        }
        Embedding {
            small,
            big,
            up,
            down,
        }
    }

    /// Identity embedding of a field into itself.
    pub fn identity(f: Arc<Field>) -> Self {
        let alpha = f.alpha();
        Self::from_image_of_alpha(f.clone(), f, alpha)
    }

    /// Given `small → ambient` and `mid → ambient`, the induced `small → mid`.
    /// Embeddings built this way commute with the two inputs.
    pub fn relative(small_in: &Embedding, mid_in: &Embedding) -> Result<Self> {
        if small_in.big.id() != mid_in.big.id() || mid_in.small.m() % small_in.small.m() != 0 {
            return Err(Error::SpecMismatch);
        }
        let gamma = mid_in.down(small_in.up(small_in.small.alpha()))?;
        Ok(Self::from_image_of_alpha(
            small_in.small.clone(),
            mid_in.small.clone(),
            gamma,
        ))
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    #[inline]
    pub fn up(&self, x: u32) -> u32 {
        self.up[x as usize]
    }

    #[inline]
    pub fn down(&self, y: u32) -> Result<u32> {
        match self.down.get(y as usize) {
            Some(&s) if s != NONE => Ok(s),
            _ => Err(Error::NotInSubfield(y)),
        }
    }

    pub fn contains(&self, y: u32) -> bool {
        self.down.get(y as usize).is_some_and(|&s| s != NONE)
    }
}

/// The map from the copy of GF(q) inside GF(q^2) onto the canonical GF(q).
pub fn subfield_embedding(big: Arc<Field>, q: u64) -> Result<Embedding> {
    if q * q != big.order() as u64 {
        return Err(Error::NotSquareField(big.order() as u64));
    }
    let small = field(big.p(), big.m() / 2)?;
    Embedding::canonical(small, big)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Arc<Field> {
        field(p, m).unwrap()
    }

    /// Brute-force primitivity: iterate multiplication by `x` until it returns to 1.
    fn order_of_x(f: &[u32], p: u32) -> u64 {
        let m = f.len() - 1;
        let mut r = vec![0u32; m];
        r[0] = 1;
        let mut x = vec![0u32; m];
        if m == 1 {
            x[0] = (p - f[0]) % p;
        } else {
            x[1] = 1;
        }
        for k in 1..=(p as u64).pow(m as u32) {
            r = mulmod_digits(&r, &x, f, p as u64);
            if r.iter().enumerate().all(|(i, &d)| d == (i == 0) as u32) {
                return k;
            }
        }
        0
    }

    #[test]
    fn gf9_modulus_is_smallest_primitive_candidate() {
        // candidates ordered by c0 + 3 c1
        let mut found = None;
        for c in 1..9u32 {
            let f = vec![c % 3, c / 3, 1];
            if f[0] != 0 && order_of_x(&f, 3) == 8 {
                found = Some(f);
                break;
            }
        }
        assert_eq!(found, Some(vec![2, 1, 1]));
        assert_eq!(gf(3, 2).modulus(), &[2, 1, 1]);
    }

    #[test]
    fn gf16_uses_x4_x_1() {
        let f = gf(2, 4);
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
        let a = f.alpha();
        let mut x = 1;
        for k in 1..=15 {
            x = f.mul(x, a);
            assert_eq!(x == 1, k == 15);
        }
    }

    #[test]
    fn prime_field_uses_smallest_primitive_root() {
        let f = gf(7, 1);
        assert_eq!(f.alpha(), 3);
        assert_eq!(f.modulus(), &[4, 1]);
        let f2 = gf(2, 1);
        assert_eq!(f2.alpha(), 1);
        assert_eq!(f2.mul(1, 1), 1);
        assert_eq!(f2.add(1, 1), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(9, 1).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(Field::new(2, 25), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(Field::new(2, 0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn gf9_inverses() {
        let f = gf(3, 2);
        for x in f.elements() {
            assert_eq!(f.add(x, f.neg(x)), 0);
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
        }
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f.pow(0, -1), Err(Error::DivisionByZero));
    }

    fn check_axioms_exhaustive(f: &Field) {
        let q = f.order();
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                let ap = f.pow_nn(a, f.p() as u64);
                let bp = f.pow_nn(b, f.p() as u64);
                assert_eq!(f.pow_nn(f.add(a, b), f.p() as u64), f.add(ap, bp));
            }
        }
        // associativity and distributivity on a strided sample of triples
        let stride = (q / 9).max(1);
        for a in (0..q).step_by(stride as usize) {
            for b in 0..q {
                for c in (0..q).step_by(3) {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_in_small_fields() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 1)] {
            check_axioms_exhaustive(&gf(p, m));
        }
    }

    #[test]
    fn random_axioms_in_larger_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0);
        for (p, m) in [(3, 10), (2, 21), (5, 8), (3, 15)] {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            let samples = if q > TABLE_LIMIT as u32 { 2_000 } else { 100_000 };
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.sub(f.add(a, b), b), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn large_field_generator_is_primitive() {
        let f = Field::new(2, 21).unwrap();
        let n = (1u64 << 21) - 1;
        assert_eq!(f.pow_nn(f.alpha(), n), 1);
        for r in prime_factors(n) {
            assert_ne!(f.pow_nn(f.alpha(), n / r), 1);
        }
        let x = f.alpha_pow(12345);
        assert_eq!(f.log(x), Some(12345));
    }

    #[test]
    fn table_and_polynomial_backends_agree() {
        let f = gf(3, 5);
        for a in (0..f.order()).step_by(7) {
            for b in (0..f.order()).step_by(5) {
                assert_eq!(f.mul(a, b), f.poly_mul(a, b));
            }
        }
        let g = gf(2, 8);
        for a in 0..256 {
            for b in 0..256 {
                assert_eq!(g.mul(a, b), g.poly_mul(a, b));
            }
        }
    }

    #[test]
    fn relative_trace_properties() {
        let f = gf(3, 4);
        assert_eq!(f.rel_trace(0, 9).unwrap(), 0);
        for x in f.elements() {
            let t = f.rel_trace(x, 9).unwrap();
            assert_eq!(f.pow_nn(t, 9), t);
            if f.pow_nn(x, 9) == x {
                assert_eq!(t, f.add(x, x));
            }
        }
        for x in f.elements() {
            for y in f.elements() {
                let lhs = f.rel_trace(f.add(x, y), 9).unwrap();
                let rhs = f.add(f.rel_trace(x, 9).unwrap(), f.rel_trace(y, 9).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(f.rel_trace(1, 3), Err(Error::SpecMismatch));
        let g = gf(2, 4);
        for x in g.elements() {
            if g.pow_nn(x, 4) == x {
                assert_eq!(g.rel_trace(x, 4).unwrap(), 0);
            }
        }
    }

    #[test]
    fn unit_circles() {
        let u3 = UnitCircle::new(&gf(2, 2)).unwrap();
        assert_eq!(u3.len(), 3);
        let f = gf(3, 4);
        let u = UnitCircle::new(&f).unwrap();
        assert_eq!(u.len(), 10);
        let mut sorted = u.elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
        for &x in &u.elements {
            assert_eq!(f.pow_nn(x, 10), 1);
            assert_eq!(f.mul(f.pow_nn(x, 9), x), 1);
        }
        let roots = f.elements().filter(|&x| f.pow_nn(x, 10) == 1).count();
        assert_eq!(roots, 10);
        assert_eq!(UnitCircle::new(&gf(3, 3)).unwrap_err(), Error::NotSquareField(27));
    }

    #[test]
    fn subfield_copy_has_q_elements() {
        for (p, s) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)] {
            let f = gf(p, 2 * s);
            let q = (p as u64).pow(s);
            assert_eq!(f.elements().filter(|&x| f.pow_nn(x, q) == x).count() as u64, q);
        }
    }

    #[test]
    fn subfield_embedding_is_a_field_isomorphism() {
        let big = gf(3, 4);
        let e = subfield_embedding(big.clone(), 9).unwrap();
        let small = e.small().clone();
        assert_eq!(e.down(0).unwrap(), 0);
        assert_eq!(e.down(1).unwrap(), 1);
        let fixed: Vec<u32> = big.elements().filter(|&x| big.pow_nn(x, 9) == x).collect();
        for &x in &fixed {
            for &y in &fixed {
                let (a, b) = (e.down(x).unwrap(), e.down(y).unwrap());
                assert_eq!(e.down(big.add(x, y)).unwrap(), small.add(a, b));
                assert_eq!(e.down(big.mul(x, y)).unwrap(), small.mul(a, b));
            }
        }
        // α^(10 j) ↦ α_9 for the chosen j, and powers follow
        let g = e.up(small.alpha());
        let j = big.log(g).unwrap();
        assert_eq!(j % 10, 0);
        for k in 0..8 {
            assert_eq!(e.down(big.alpha_pow(j as i64 * k)).unwrap(), small.alpha_pow(k));
        }
        let non_fixed = big.elements().find(|&x| big.pow_nn(x, 9) != x).unwrap();
        assert_eq!(e.down(non_fixed), Err(Error::NotInSubfield(non_fixed)));
    }

    #[test]
    fn trace_then_embed_is_linear_over_subfield() {
        let big = gf(3, 4);
        let e = subfield_embedding(big.clone(), 9).unwrap();
        let small = e.small().clone();
        let tr = |x: u32| e.down(big.rel_trace(x, 9).unwrap()).unwrap();
        for x in big.elements() {
            for c in small.elements() {
                let cx = big.mul(e.up(c), x);
                assert_eq!(tr(cx), small.mul(c, tr(x)));
            }
            for y in big.elements().step_by(7) {
                assert_eq!(tr(big.add(x, y)), small.add(tr(x), tr(y)));
            }
        }
    }

    #[test]
    fn relative_embeddings_commute() {
        let amb = gf(2, 8);
        let e4 = Embedding::canonical(gf(2, 2), amb.clone()).unwrap();
        let e16 = Embedding::canonical(gf(2, 4), amb.clone()).unwrap();
        let rel = Embedding::relative(&e4, &e16).unwrap();
        for x in 0..4 {
            assert_eq!(e16.up(rel.up(x)), e4.up(x));
        }
    }

    #[test]
    fn checked_elements_detect_mismatch() {
        let f9 = gf(3, 2);
        let f4 = gf(2, 2);
        let a = f9.element(4).unwrap();
        let b = f4.element(1).unwrap();
        assert_eq!(a.add(b, &f9), Err(Error::SpecMismatch));
        assert_eq!(a.mul(a, &f4), Err(Error::SpecMismatch));
        let z = f9.element(0).unwrap();
        assert_eq!(z.inv(&f9), Err(Error::DivisionByZero));
        assert_eq!(a.pow(-1, &f9).unwrap().mul(a, &f9).unwrap().rep, 1);
        assert!(f9.element(9).is_err());
    }

    #[test]
    fn spec_serializes() {
        let s = serde_json::to_string(&gf(2, 4).spec()).unwrap();
        assert_eq!(s, r#"{"p":2,"m":4,"modulus":[1,1,0,0,1]}"#);
    }
}
