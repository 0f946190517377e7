//! Weight distributions, the MacWilliams transform and Singleton-defect labels.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binomial, gcd, prime_power};
use crate::codes::{Family, LinearCode, TraceDual};
use crate::enumerate::{check_budget, weight_histogram};
use crate::error::{Error, Result};

/// Counts `A_0..A_n` of an `[n, k]` code over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub q: u64,
    pub k: usize,
    pub counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn from_counts(n: usize, q: u64, k: usize, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), n + 1);
        WeightDistribution {
            n,
            q,
            k,
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `A_0 = 1` and the counts add up to `q^k`.
    pub fn is_consistent(&self) -> bool {
        self.counts.len() == self.n + 1
            && self.counts[0] == BigUint::from(1u32)
            && self.total() == BigUint::from(self.q).pow(self.k as u32)
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts
            .get(i)
            .and_then(|c| c.to_u64())
            .expect("count fits in u64")
    }

    /// Smallest `i ≥ 1` with `A_i ≠ 0`.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.counts[i].is_zero())
    }

    /// Nonzero weights other than 0.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.counts[i].is_zero()).collect()
    }

    /// Header `i,A_i`, then one row per weight `0..=n`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,A_i\n");
        for (i, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{i},{c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let counts: Vec<serde_json::Value> = self
            .counts
            .iter()
            .map(|c| match c.to_u64() {
                Some(v) => v.into(),
                None => c.to_string().into(),
            })
            .collect();
        serde_json::json!({"n": self.n, "q": self.q, "k": self.k, "counts": counts})
    }

    /// Checks every equation of the MacWilliams system against `dual`.
    pub fn satisfies_macwilliams(&self, dual: &WeightDistribution) -> bool {
        let n = self.n;
        if dual.n != n || dual.q != self.q || self.k + dual.k != n {
            return false;
        }
        let q = BigUint::from(self.q);
        (0..=n).all(|j| {
            let lhs: BigUint = (0..=n - j)
                .map(|i| binomial((n - i) as u64, j as u64) * &self.counts[i])
                .sum();
            let rhs: BigUint = (0..=j)
                .map(|i| binomial((n - i) as u64, (n - j) as u64) * &dual.counts[i])
                .sum();
            // lhs = q^(k-j) rhs, scaled to stay integral
            if j <= self.k {
                lhs == q.pow((self.k - j) as u32) * rhs
            } else {
                lhs * q.pow((j - self.k) as u32) == rhs
            }
        })
    }
}

/// Solves the MacWilliams system for the dual distribution, one `j` at a time.
pub fn macwilliams(a: &WeightDistribution) -> Result<WeightDistribution> {
    let n = a.n;
    let k = a.k;
    let q = BigInt::from(a.q);
    let counts: Vec<BigInt> = a.counts.iter().map(|c| BigInt::from(c.clone())).collect();
    let mut dual: Vec<BigInt> = Vec::with_capacity(n + 1);
    let qk = q.pow(k as u32);
    for j in 0..=n {
        let lhs: BigInt = (0..=n - j)
            .map(|i| BigInt::from(binomial((n - i) as u64, j as u64)) * &counts[i])
            .sum();
        // A⊥_j = lhs q^j / q^k - Σ_{i<j} C(n-i, n-j) A⊥_i
        let scaled = lhs * q.pow(j as u32);
        if !(&scaled % &qk).is_zero() {
            return Err(Error::NonIntegerResult(j));
        }
        let mut v = scaled / &qk;
        for (i, d) in dual.iter().enumerate() {
            v -= BigInt::from(binomial((n - i) as u64, (n - j) as u64)) * d;
        }
        if v.sign() == Sign::Minus {
            return Err(Error::NegativeCount(j));
        }
        dual.push(v);
    }
    Ok(WeightDistribution {
        n,
        q: a.q,
        k: n - k,
        counts: dual
            .into_iter()
            .map(|v| v.to_biguint().expect("checked non-negative"))
            .collect(),
    })
}

/// Exact distribution, enumerating whichever of the code and its dual is
/// smaller and transforming when it was the dual.
pub fn weight_distribution(code: &LinearCode, budget: u128) -> Result<WeightDistribution> {
    let (n, k, q) = (code.n, code.k, code.q());
    let side = k.min(n - k);
    check_budget(q, side, budget)?;
    if k <= n - k {
        let hist = weight_histogram(&code.field, &code.gen_matrix, budget)?;
        Ok(WeightDistribution::from_counts(n, q, k, &hist))
    } else {
        let hist = weight_histogram(&code.field, &code.check_matrix, budget)?;
        macwilliams(&WeightDistribution::from_counts(n, q, n - k, &hist))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "NMDS")]
    Nmds,
    #[serde(rename = "AMDS-not-NMDS")]
    AmdsNotNmds,
    #[serde(rename = "ordinary")]
    Ordinary,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Mds => "MDS",
            Label::Nmds => "NMDS",
            Label::AmdsNotNmds => "AMDS-not-NMDS",
            Label::Ordinary => "ordinary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub label: Label,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_dual: usize,
    pub singleton_defect: i64,
    pub dual_defect: i64,
}

pub fn classify_from_distributions(
    a: &WeightDistribution,
    dual: &WeightDistribution,
) -> Result<Classification> {
    let nonzero = || Error::InvalidParameters("both the code and its dual must be nonzero".into());
    let d = a.min_distance().ok_or_else(nonzero)?;
    let d_dual = dual.min_distance().ok_or_else(nonzero)?;
    let n = a.n as i64;
    let defect = n - a.k as i64 + 1 - d as i64;
    let dual_defect = a.k as i64 + 1 - d_dual as i64;
    let label = match (defect, dual_defect) {
        (0, _) => Label::Mds,
        (1, 1) => Label::Nmds,
        (1, _) => Label::AmdsNotNmds,
        _ => Label::Ordinary,
    };
    Ok(Classification {
        label,
        n: a.n,
        k: a.k,
        d,
        d_dual,
        singleton_defect: defect,
        dual_defect,
    })
}

pub fn classify(code: &LinearCode, budget: u128) -> Result<Classification> {
    let a = weight_distribution(code, budget)?;
    let dual = macwilliams(&a)?;
    classify_from_distributions(&a, &dual)
}

/// `p^m` with `m = gcd(i, s)` for a family offset of GF(q).
pub fn family_pm(q: u64, family: Family) -> Result<u64> {
    let (p, s) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
    let i = family
        .i()
        .ok_or_else(|| Error::InvalidParameters("offset is in neither family".into()))?;
    Ok(p.pow(gcd(i as u64, s as u64) as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourWeightReport {
    pub q: u64,
    pub h: u64,
    pub family: &'static str,
    pub i: u32,
    pub p_m: u64,
    pub weights: Vec<usize>,
    pub counts: Vec<u64>,
    pub min_distance: usize,
    pub exhaustive: bool,
}

/// Enumerates the trace dual and checks that its nonzero weights are exactly
/// `q - p^m, q - 1, q, q + 1`. Uses all `q^4` pairs when the budget allows and
/// the orbit reduction otherwise.
pub fn verify_four_weight(q: u64, h: u64, budget: u128) -> Result<FourWeightReport> {
    let family = Family::detect(q, h);
    let td = TraceDual::new(q, h)?;
    let p_m = family_pm(q, family)?;
    let exhaustive = check_budget(q, 4, budget).is_ok();
    let hist = if exhaustive {
        td.distribution_exhaustive(budget)?
    } else {
        td.distribution_by_orbits()
    };
    let dist = WeightDistribution::from_counts(q as usize + 1, q, 4, &hist);
    let expected: Vec<usize> = [q - p_m, q - 1, q, q + 1].iter().map(|&w| w as usize).collect();
    let weights = dist.support();
    if weights != expected {
        return Err(Error::FourWeightViolation(format!(
            "q={q} h={h}: weights {weights:?}, expected {expected:?}"
        )));
    }
    Ok(FourWeightReport {
        q,
        h,
        family: family.label(),
        i: family.i().expect("family detected"),
        p_m,
        counts: weights.iter().map(|&w| hist[w]).collect(),
        min_distance: weights[0],
        weights,
        exhaustive,
    })
}

/// Closed-form distribution of the four-weight dual `[q+1, 4, q-p^m]`.
pub fn enumerator_formula(q: u64, p_m: u64) -> Result<WeightDistribution> {
    if p_m < 3 || p_m >= q {
        return Err(Error::InvalidParameters(format!("need 3 <= p^m < q, got p^m={p_m}, q={q}")));
    }
    let big = |x: u64| BigInt::from(x);
    let (qq, pm) = (big(q), big(p_m));
    let one = big(1);
    let exact = |num: BigInt, den: BigInt| -> Result<BigUint> {
        if !(&num % &den).is_zero() {
            return Err(Error::InvalidParameters(format!(
                "enumerator term is not integral for q={q}, p^m={p_m}"
            )));
        }
        Ok((num / den).to_biguint().expect("positive"))
    };
    let q1 = &qq - &one;
    let a_min = exact(
        &q1 * &q1 * &qq * (&qq + &one),
        (&pm * &pm - &one) * &pm,
    )?;
    let a_qm1 = exact(
        (&qq * &qq - &one) * &qq * ((&qq + &one) * (&pm - &one) - &q1),
        big(2) * (&pm - &one),
    )?;
    let a_q = exact((&qq * &qq - &one) * (&qq * &qq - &qq + &pm), pm.clone())?;
    let a_qp1 = exact(
        &pm * &q1 * &q1 * &qq * (&qq + &one),
        big(2) * (&pm + &one),
    )?;
    let n = q as usize + 1;
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::from(1u32);
    counts[(q - p_m) as usize] = a_min;
    counts[q as usize - 1] = a_qm1;
    counts[q as usize] = a_q;
    counts[n] = a_qp1;
    Ok(WeightDistribution { n, q, k: 4, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bch_build, dual, CodeSpec};
    use crate::enumerate::DEFAULT_BUDGET;
    use crate::galois::field;
    use crate::linalg::Matrix;
    use rand::{Rng, SeedableRng};

    #[test]
    fn full_space_transform() {
        let a = WeightDistribution::from_counts(3, 2, 3, &[1, 3, 3, 1]);
        let d = macwilliams(&a).unwrap();
        assert_eq!(d, WeightDistribution::from_counts(3, 2, 0, &[1, 0, 0, 0]));
        assert!(a.satisfies_macwilliams(&d));
    }

    #[test]
    fn inconsistent_input_is_rejected() {
        let a = WeightDistribution::from_counts(3, 2, 2, &[1, 0, 0, 3]);
        assert!(matches!(
            macwilliams(&a),
            Err(Error::NonIntegerResult(_)) | Err(Error::NegativeCount(_))
        ));
    }

    #[test]
    fn formula_values() {
        let a = enumerator_formula(9, 3).unwrap();
        assert_eq!(
            [6, 8, 9, 10].map(|i| a.count(i)),
            [240, 2160, 2000, 2160]
        );
        let b = enumerator_formula(16, 4).unwrap();
        assert_eq!(
            [12, 15, 16, 17].map(|i| b.count(i)),
            [1020, 24480, 15555, 24480]
        );
        for (q, pm) in [(27, 3), (25, 5), (81, 3), (81, 9), (64, 4), (243, 3), (125, 5)] {
            assert!(enumerator_formula(q, pm).unwrap().is_consistent(), "q={q}");
        }
        assert!(enumerator_formula(8, 2).is_err());
    }

    #[test]
    fn both_sides_of_q9() {
        let c = bch_build(CodeSpec::antiprimitive(9, 3)).unwrap();
        let d = weight_distribution(&dual(&c), DEFAULT_BUDGET).unwrap();
        assert_eq!(d, enumerator_formula(9, 3).unwrap());
        let primal = macwilliams(&d).unwrap();
        assert_eq!(primal.counts[..5].iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>(), [1, 0, 0, 0, 240]);
        assert_eq!(weight_distribution(&c, DEFAULT_BUDGET).unwrap(), primal);
    }

    #[test]
    fn classifications() {
        let cases = [((8, 3), Label::Mds, 5, 6), ((9, 3), Label::Nmds, 4, 6), ((16, 6), Label::AmdsNotNmds, 4, 12)];
        for ((q, h), label, d, dd) in cases {
            let c = classify(&bch_build(CodeSpec::antiprimitive(q, h)).unwrap(), DEFAULT_BUDGET).unwrap();
            assert_eq!((c.label, c.d, c.d_dual), (label, d, dd), "q={q}");
        }
    }

    #[test]
    fn four_weight_checks() {
        let r = verify_four_weight(27, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.weights, vec![24, 26, 27, 28]);
        let r = verify_four_weight(27, 9, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.weights, vec![24, 26, 27, 28]);
        assert_eq!(verify_four_weight(9, 4, DEFAULT_BUDGET).unwrap_err(), Error::DegenerateDimension(3));
    }

    #[test]
    fn involution_on_random_codes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for t in 0..50 {
            let (p, m) = [(2, 1), (3, 1), (2, 2), (5, 1)][t % 4];
            let f = field(p, m).unwrap();
            let n = rng.gen_range(3..9);
            let k = rng.gen_range(1..n);
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect())
                .collect();
            let code = LinearCode::from_generator(f.clone(), &Matrix::from_rows(&rows, n));
            let hist = weight_histogram(&f, &code.gen_matrix, DEFAULT_BUDGET).unwrap();
            let a = WeightDistribution::from_counts(n, f.order() as u64, code.k, &hist);
            let b = macwilliams(&a).unwrap();
            let direct = weight_histogram(&f, &code.check_matrix, DEFAULT_BUDGET).unwrap();
            assert_eq!(b, WeightDistribution::from_counts(n, f.order() as u64, n - code.k, &direct));
            assert!(a.satisfies_macwilliams(&b));
            assert_eq!(macwilliams(&b).unwrap(), a);
        }
    }
}
