//! Cyclotomic cosets, minimal polynomials and the factorization of `x^n - 1`.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, mult_order};
use crate::error::{Error, Result};
use crate::galois::{field, field_of_order, Embedding, Field};
use crate::poly::Poly;

/// The orbit of `leader` under multiplication by `q` modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicCoset {
    pub n: u64,
    pub q: u64,
    pub leader: u64,
    pub members: Vec<u64>,
    #[serde(skip)]
    pub size: usize,
}

impl CyclotomicCoset {
    pub fn contains(&self, s: u64) -> bool {
        self.members.binary_search(&(s % self.n)).is_ok()
    }
}

fn check_coprime(n: u64, q: u64) -> Result<()> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(())
}

pub fn coset(n: u64, q: u64, s: u64) -> Result<CyclotomicCoset> {
    check_coprime(n, q)?;
    let s = s % n;
    let mut members = vec![s];
    let mut x = (s as u128 * q as u128 % n as u128) as u64;
    while x != s {
        members.push(x);
        x = (x as u128 * q as u128 % n as u128) as u64;
    }
    members.sort_unstable();
    Ok(CyclotomicCoset {
        n,
        q,
        leader: members[0],
        size: members.len(),
        members,
    })
}

/// All cosets, ordered by leader.
pub fn coset_leaders(n: u64, q: u64) -> Result<Vec<CyclotomicCoset>> {
    check_coprime(n, q)?;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let c = coset(n, q, s)?;
        for &x in &c.members {
            seen[x as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// GF(q), the extension GF(q^m) with `m = ord_n(q)` holding the `n`-th roots of
/// unity, and the chosen primitive `n`-th root `β = α^((q^m - 1)/n)`.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub n: u64,
    pub embedding: Embedding,
    pub beta: u32,
}

impl SplittingField {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        check_coprime(n, q)?;
        let base = field_of_order(q)?;
        let m = mult_order(q, n).expect("coprime");
        let big = field(base.p(), base.m() * m as u32)?;
        let beta = big.alpha_pow(((big.order() as u64 - 1) / n) as i64);
        let embedding = Embedding::canonical(base, big)?;
        Ok(SplittingField { n, embedding, beta })
    }

    pub fn base(&self) -> &Arc<Field> {
        self.embedding.small()
    }

    pub fn ext(&self) -> &Arc<Field> {
        self.embedding.big()
    }

    pub fn q(&self) -> u64 {
        self.base().order() as u64
    }

    pub fn minimal_poly(&self, c: &CyclotomicCoset) -> Result<Poly> {
        minimal_poly(&self.embedding, self.beta, c)
    }

    /// Product of the minimal polynomials of `β^s` over the distinct cosets
    /// meeting `exponents`.
    pub fn generator(&self, exponents: &[u64]) -> Result<Poly> {
        let mut seen: Vec<CyclotomicCoset> = Vec::new();
        let base = self.base().clone();
        let mut g = Poly::one(base.id());
        for &e in exponents {
            if seen.iter().any(|c| c.contains(e)) {
                continue;
            }
            let c = coset(self.n, self.q(), e)?;
            g = g.mul(&self.minimal_poly(&c)?, &base)?;
            seen.push(c);
        }
        Ok(g)
    }
}

/// `∏_{i ∈ C} (x - β^i)`, computed in the extension and mapped back to GF(q).
pub fn minimal_poly(ext: &Embedding, beta: u32, c: &CyclotomicCoset) -> Result<Poly> {
    let big = ext.big();
    if big.order_of(beta) != Some(c.n) {
        return Err(Error::NotPrimitiveRoot(c.n));
    }
    let mut coeffs = vec![1u32];
    for &i in &c.members {
        let root = big.neg(big.pow_nn(beta, i));
        let mut next = vec![0u32; coeffs.len() + 1];
        for (j, &a) in coeffs.iter().enumerate() {
            next[j + 1] = big.add(next[j + 1], a);
            next[j] = big.add(next[j], big.mul(a, root));
        }
        coeffs = next;
    }
    let down = coeffs
        .into_iter()
        .map(|y| ext.down(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(ext.small().id(), down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cosets() {
        let c = coset(33, 2, 1).unwrap();
        assert_eq!(c.members, vec![1, 2, 4, 8, 16, 17, 25, 29, 31, 32]);
        assert_eq!(c.size, 10);
        assert_eq!(coset(10, 9, 3).unwrap().members, vec![3, 7]);
        assert_eq!(coset(33, 2, 0).unwrap().members, vec![0]);
        assert_eq!(coset(10, 5, 1), Err(Error::NotCoprime { n: 10, q: 5 }));
        let l = coset_leaders(3, 2).unwrap();
        assert_eq!(
            l.iter().map(|c| (c.leader, c.size)).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn coset_json() {
        let s = serde_json::to_string(&coset(10, 9, 3).unwrap()).unwrap();
        assert_eq!(s, r#"{"n":10,"q":9,"leader":3,"members":[3,7]}"#);
    }

    #[test]
    fn minimal_polynomials() {
        let sf = SplittingField::new(2, 3).unwrap();
        let m1 = sf.minimal_poly(&coset(3, 2, 1).unwrap()).unwrap();
        assert_eq!(m1.coeffs, vec![1, 1, 1]);
        let sf = SplittingField::new(2, 33).unwrap();
        let m0 = sf.minimal_poly(&coset(33, 2, 0).unwrap()).unwrap();
        assert_eq!(m0.coeffs, vec![1, 1]);
        let bad = sf.ext().alpha();
        assert_eq!(
            minimal_poly(&sf.embedding, bad, &coset(33, 2, 1).unwrap()),
            Err(Error::NotPrimitiveRoot(33))
        );
    }

    #[test]
    fn factorization_of_x_n_minus_one() {
        for (q, n) in [(2, 33), (9, 10), (4, 17), (3, 28), (16, 17), (5, 26)] {
            let sf = SplittingField::new(q, n).unwrap();
            let base = sf.base().clone();
            let xn = Poly::x_n_minus_one(&base, n as usize);
            let mut prod = Poly::one(base.id());
            let polys: Vec<Poly> = coset_leaders(n, q)
                .unwrap()
                .iter()
                .map(|c| sf.minimal_poly(c).unwrap())
                .collect();
            for (a, p) in polys.iter().enumerate() {
                prod = prod.mul(p, &base).unwrap();
                assert!(xn.divmod(p, &base).unwrap().1.is_zero());
                if p.degree().unwrap() >= 2 {
                    assert!(base.elements().all(|x| p.eval(x, &base) != 0));
                }
                for other in &polys[a + 1..] {
                    assert_eq!(p.gcd(other, &base).unwrap(), Poly::one(base.id()));
                }
            }
            assert_eq!(prod, xn, "q={q} n={n}");
        }
    }

    #[test]
    fn lcm_degree_four_for_q9() {
        let sf = SplittingField::new(9, 10).unwrap();
        let base = sf.base().clone();
        let a = sf.minimal_poly(&coset(10, 9, 3).unwrap()).unwrap();
        let b = sf.minimal_poly(&coset(10, 9, 4).unwrap()).unwrap();
        assert_eq!(a.lcm(&b, &base).unwrap().degree(), Some(4));
        assert_eq!(sf.generator(&[3, 4]).unwrap(), a.lcm(&b, &base).unwrap());
    }

    proptest! {
        #[test]
        fn cosets_partition_and_divide(n in 1u64..10_000, q in 2u64..50) {
            prop_assume!(gcd(n, q) == 1);
            let cs = coset_leaders(n, q).unwrap();
            let c1 = coset(n, q, 1).unwrap().size;
            let mut total = 0;
            let mut prev = None;
            for c in &cs {
                prop_assert_eq!(c1 % c.size, 0);
                prop_assert!(prev.map_or(true, |p| p < c.leader));
                prev = Some(c.leader);
                total += c.size;
            }
            prop_assert_eq!(total as u64, n);
        }
    }
}
