//! Number-theoretic counting: linear congruences, gcd closed forms, zeros of
//! `P_a(X) = X^(p^k+1) + X + a`, and solutions on the unit circle that give
//! the weights of the trace duals.

use serde::Serialize;

use crate::arith::gcd;
use crate::codes::Family;
use crate::error::{Error, Result};
use crate::galois::{field, Field, UnitCircle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub value: u64,
    pub method: Method,
}

impl SolutionCount {
    fn brute(value: u64) -> Self {
        SolutionCount {
            value,
            method: Method::BruteForce,
        }
    }

    fn closed(value: u64) -> Self {
        SolutionCount {
            value,
            method: Method::ClosedForm,
        }
    }
}

/// All `x` in `0..m` with `a x ≡ b (mod m)`.
pub fn congruence_solutions(a: u64, b: u64, m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let (a, b) = (a % m, b % m);
    let e = gcd(a, m);
    if b % e != 0 {
        return Vec::new();
    }
    let (a1, b1, m1) = (a / e, b / e, m / e);
    // a1 is a unit mod m1
    let x0 = if m1 == 1 {
        0
    } else {
        (b1 as u128 * mod_inverse(a1, m1) as u128 % m1 as u128) as u64
    };
    (0..e).map(|j| x0 + j * m1).collect()
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(m as i128) as u64
}

fn small_gcd(p: u64) -> u64 {
    if p % 2 == 0 {
        1
    } else {
        2
    }
}

/// `gcd(p^i + 1, p^s + 1)` in closed form.
pub fn gcd_plus_plus(p: u64, i: u64, s: u64) -> u64 {
    let m = gcd(i, s);
    if (i / m) % 2 == 1 && (s / m) % 2 == 1 {
        p.pow(m as u32) + 1
    } else {
        small_gcd(p)
    }
}

/// `gcd(p^i - 1, p^s + 1)` in closed form.
pub fn gcd_minus_plus(p: u64, i: u64, s: u64) -> u64 {
    let m = gcd(i, s);
    if (i / m) % 2 == 0 {
        p.pow(m as u32) + 1
    } else {
        small_gcd(p)
    }
}

fn pa_values(f: &Field, k: u32) -> Vec<u32> {
    let e = (f.p() as u64).pow(k) + 1;
    f.elements().map(|x| f.add(f.pow_nn(x, e), x)).collect()
}

fn check_value_set(value: u64, allowed: Vec<u64>) -> Result<()> {
    if allowed.contains(&value) {
        Ok(())
    } else {
        Err(Error::ValueSetViolation { value, allowed })
    }
}

fn pa_allowed(p: u32, n: u32, k: u32) -> Vec<u64> {
    let e = gcd(n as u64, k as u64) as u32;
    vec![0, 1, 2, (p as u64).pow(e) + 1]
}

/// Number of zeros of `X^(p^k+1) + X + a` in GF(p^n), by evaluation.
pub fn count_zeros_pa(p: u32, n: u32, k: u32, a: u32) -> Result<SolutionCount> {
    let f = field(p, n)?;
    if a == 0 || a >= f.order() {
        return Err(Error::InvalidParameters("a must be a nonzero element".into()));
    }
    let target = f.neg(a);
    let value = pa_values(&f, k).iter().filter(|&&v| v == target).count() as u64;
    check_value_set(value, pa_allowed(p, n, k))?;
    Ok(SolutionCount::brute(value))
}

/// `N_a` for every `a`, indexed by rep (entry 0 is unused).
pub fn zero_count_table(p: u32, n: u32, k: u32) -> Result<Vec<u64>> {
    let f = field(p, n)?;
    let mut counts = vec![0u64; f.order() as usize];
    for v in pa_values(&f, k) {
        counts[f.neg(v) as usize] += 1;
    }
    counts[0] = 0;
    let allowed = pa_allowed(p, n, k);
    for &c in &counts[1..] {
        check_value_set(c, allowed.clone())?;
    }
    Ok(counts)
}

/// All zeros of `P_a` built from one known zero `x0` when there are
/// `p^e + 1` of them: pick `δ` with `δ^(p^k-1) = x0^2/a`, a root `w0` of
/// `w^(p^k) - w + 1/(δ x0)`, and return `x0` together with
/// `(w0 + γ)^(p^k-1) x0` for `γ ∈ GF(p^e)`.
pub fn all_zeros_pa(p: u32, n: u32, k: u32, a: u32, x0: u32) -> Result<Vec<u32>> {
    let f = field(p, n)?;
    let pk = (p as u64).pow(k);
    if a == 0 || f.add(f.add(f.pow_nn(x0, pk + 1), x0), a) != 0 {
        return Err(Error::InvalidParameters("x0 is not a zero of P_a".into()));
    }
    let e = gcd(n as u64, k as u64) as u32;
    let full = (p as u64).pow(e) + 1;
    let count = count_zeros_pa(p, n, k, a)?.value;
    if count != full {
        return Err(Error::NotFullCase(count));
    }
    let target = f.div(f.mul(x0, x0), a)?;
    let delta = f
        .elements()
        .skip(1)
        .find(|&d| f.pow_nn(d, pk - 1) == target)
        .ok_or(Error::NoDelta)?;
    let c = f.inv(f.mul(delta, x0))?;
    let w0 = f
        .elements()
        .find(|&w| f.add(f.sub(f.pow_nn(w, pk), w), c) == 0)
        .ok_or(Error::NoAuxiliaryRoot)?;
    let pe = (p as u64).pow(e);
    let mut zeros: Vec<u32> = f
        .elements()
        .filter(|&g| f.pow_nn(g, pe) == g)
        .map(|g| f.mul(f.pow_nn(f.add(w0, g), pk - 1), x0))
        .collect();
    zeros.push(x0);
    zeros.sort_unstable();
    zeros.dedup();
    Ok(zeros)
}

/// Roots of `P_a` by evaluation, sorted.
pub fn brute_zeros_pa(p: u32, n: u32, k: u32, a: u32) -> Result<Vec<u32>> {
    let f = field(p, n)?;
    let target = f.neg(a);
    Ok(pa_values(&f, k)
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == target)
        .map(|(x, _)| x as u32)
        .collect())
}

/// Shared context for counting on the unit circle of GF(q^2).
#[derive(Clone, Debug)]
pub struct UnitEquation {
    pub q: u64,
    pub h: u64,
    pub p: u64,
    pub s: u64,
    pub i: u64,
    pub m: u64,
    pub family: Family,
    pub ext: std::sync::Arc<Field>,
    pub circle: UnitCircle,
    pow_pi: Vec<u32>,
}

impl UnitEquation {
    pub fn new(q: u64, h: u64) -> Result<Self> {
        let family = Family::detect(q, h);
        let Some(i) = family.i() else {
            return Err(Error::InvalidParameters(format!(
                "h={h} is in neither family for q={q}"
            )));
        };
        let base = crate::galois::field_of_order(q)?;
        let ext = field(base.p(), 2 * base.m())?;
        let circle = UnitCircle::new(&ext)?;
        let (p, s) = (base.p() as u64, base.m() as u64);
        let pi = p.pow(i);
        let pow_pi = circle.elements.iter().map(|&u| ext.pow_nn(u, pi)).collect();
        Ok(UnitEquation {
            q,
            h,
            p,
            s,
            i: i as u64,
            m: gcd(i as u64, s),
            family,
            ext,
            circle,
            pow_pi,
        })
    }

    pub fn allowed(&self) -> Vec<u64> {
        vec![0, 1, 2, self.p.pow(self.m as u32) + 1]
    }

    /// Number of `u ∈ U_(q+1)` solving the family's equation, by evaluation:
    /// `a + b u + b^q u^(p^i) + a^q u^(p^i+1)` for `h = (q-p^i)/2`, and
    /// `b^q + a^q u + a u^(p^i) + b u^(p^i+1)` for `h = (p^i-1)/2`.
    pub fn count(&self, a: u32, b: u32) -> Result<SolutionCount> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidParameters("(a, b) must be nonzero".into()));
        }
        let f = &self.ext;
        let (aq, bq) = (f.pow_nn(a, self.q), f.pow_nn(b, self.q));
        let coeffs = match self.family {
            Family::PiMinus1 { .. } => [bq, aq, a, b],
            _ => [a, b, bq, aq],
        };
        let value = self
            .circle
            .elements
            .iter()
            .zip(&self.pow_pi)
            .filter(|&(&u, &up)| {
                let v = f.add(
                    f.add(coeffs[0], f.mul(coeffs[1], u)),
                    f.add(f.mul(coeffs[2], up), f.mul(coeffs[3], f.mul(up, u))),
                );
                v == 0
            })
            .count() as u64;
        check_value_set(value, self.allowed())?;
        Ok(SolutionCount::brute(value))
    }

    /// Closed-form count when exactly one of `a`, `b` is zero. The equation
    /// collapses to `u^e = -c^(±(q-1))` with `e = p^i ± 1`; writing
    /// `u = β^t` and `c = α^r` this is `e t ≡ target (mod q+1)`, solved with
    /// the gcd closed forms and the congruence lemma.
    pub fn predict(&self, a: u32, b: u32) -> Result<SolutionCount> {
        if (a == 0) == (b == 0) {
            return Err(Error::NotApplicable);
        }
        let nonzero = if a != 0 { a } else { b };
        let r = self.ext.log(nonzero).expect("nonzero") % (self.q + 1);
        let plus = match self.family {
            // a u^h-free terms: b = 0 leaves u^(p^i+1), a = 0 leaves u^(p^i-1)
            Family::QMinusPi { .. } => b == 0,
            // b = 0 leaves u^(p^i-1), a = 0 leaves u^(p^i+1)
            _ => a == 0,
        };
        let g = if plus {
            gcd_plus_plus(self.p, self.i, self.s)
        } else {
            gcd_minus_plus(self.p, self.i, self.s)
        };
        let n = self.q + 1;
        // -1 = α^((q^2-1)/2) contributes (q+1)/2 when p is odd
        let shift = if self.p % 2 == 0 { 0 } else { n / 2 };
        let signed_r = match self.family {
            Family::PiMinus1 { .. } => r,
            _ => n - r,
        };
        let target = (shift + signed_r) % n;
        Ok(SolutionCount::closed(if target % g == 0 { g } else { 0 }))
    }

    /// CSV rows `a_rep,b_rep,N,predicted` over all nonzero pairs; the
    /// prediction is blank when both are nonzero.
    pub fn sweep_csv(&self) -> Result<String> {
        let mut out = String::from("a_rep,b_rep,N,predicted_N\n");
        let q2 = self.ext.order();
        for a in 0..q2 {
            for b in 0..q2 {
                if a == 0 && b == 0 {
                    continue;
                }
                let n = self.count(a, b)?.value;
                let pred = match self.predict(a, b) {
                    Ok(c) => c.value.to_string(),
                    Err(_) => String::new(),
                };
                out.push_str(&format!("{a},{b},{n},{pred}\n"));
            }
        }
        Ok(out)
    }
}

pub fn count_unit_solutions(q: u64, h: u64, a: u32, b: u32) -> Result<SolutionCount> {
    UnitEquation::new(q, h)?.count(a, b)
}

pub fn predict_case12(q: u64, h: u64, a: u32, b: u32) -> Result<SolutionCount> {
    UnitEquation::new(q, h)?.predict(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences() {
        assert!(congruence_solutions(4, 5, 10).is_empty());
        assert_eq!(congruence_solutions(2, 4, 10), vec![2, 7]);
        assert_eq!(congruence_solutions(1, 13, 10), vec![3]);
        for m in 1..40u64 {
            for a in 0..m {
                for b in 0..m {
                    let brute: Vec<u64> = (0..m).filter(|x| (a * x) % m == b).collect();
                    assert_eq!(congruence_solutions(a, b, m), brute);
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_plus_plus(3, 1, 3), 4);
        assert_eq!(gcd_plus_plus(3, 2, 3), 2);
        assert_eq!(gcd_plus_plus(2, 2, 4), 1);
        assert_eq!(gcd_minus_plus(3, 2, 1), 4);
        assert_eq!(gcd_minus_plus(2, 3, 3), 1);
        assert_eq!(gcd_minus_plus(5, 1, 2), 2);
    }

    #[test]
    fn pa_counts() {
        assert_eq!(count_zeros_pa(2, 2, 1, 1).unwrap().value, 0);
        // every x with x^4 + x != 0 is a root of exactly one P_a
        let t = zero_count_table(3, 2, 1).unwrap();
        let f = field(3, 2).unwrap();
        let vanishing = pa_values(&f, 1).iter().filter(|&&v| v == 0).count() as u64;
        assert_eq!(t.iter().sum::<u64>(), 9 - vanishing);
    }

    #[test]
    fn full_case_zeros_match_brute_force() {
        let mut checked = 0;
        let mut cases = Vec::new();
        for p in [2u32, 3, 5, 7] {
            for n in 1..=9u32 {
                if (p as u64).pow(n) <= 729 {
                    cases.extend((1..=n).map(|k| (p, n, k)));
                }
            }
        }
        for (p, n, k) in cases {
            let t = zero_count_table(p, n, k).unwrap();
            let full = (p as u64).pow(gcd(n as u64, k as u64) as u32) + 1;
            for a in 1..t.len() as u32 {
                if t[a as usize] != full {
                    continue;
                }
                let roots = brute_zeros_pa(p, n, k, a).unwrap();
                assert_eq!(all_zeros_pa(p, n, k, a, roots[0]).unwrap(), roots);
                checked += 1;
            }
        }
        assert!(checked >= 20, "{checked}");
    }

    #[test]
    fn unit_examples() {
        let eq = UnitEquation::new(9, 3).unwrap();
        assert_eq!(eq.count(1, 0).unwrap().value, 0);
        let alpha = eq.ext.alpha();
        assert_eq!(eq.count(0, alpha).unwrap().value, 2);
        assert_eq!(eq.predict(1, 0).unwrap().value, 0);
        assert_eq!(eq.predict(0, alpha).unwrap().value, 2);
        assert_eq!(eq.predict(1, 1), Err(Error::NotApplicable));
    }

    #[test]
    fn predictions_agree_with_counts() {
        for (q, h) in [(9, 3), (9, 1), (16, 6), (8, 3), (27, 12), (27, 4), (25, 10), (25, 2), (16, 7)] {
            let eq = UnitEquation::new(q, h).unwrap();
            for c in 1..eq.ext.order() {
                for (a, b) in [(c, 0), (0, c)] {
                    assert_eq!(
                        eq.predict(a, b).unwrap().value,
                        eq.count(a, b).unwrap().value,
                        "q={q} h={h} a={a} b={b}"
                    );
                }
            }
        }
    }
}
