//! Support designs of codewords, direct `t`-design verification, and the
//! determinant and rank constructions of low-weight blocks.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::arith::{binomial, binomial_u64, for_each_subset, subset_rank};
use crate::codes::{parity_check_rows, Family, LinearCode, TraceDual};
use crate::enumerate::{check_budget, for_each_word};
use crate::error::{Error, Result};
use crate::galois::field_of_order;
use crate::linalg::Matrix;

pub type Block = Vec<usize>;

/// A verified simple `t-(n, k, λ)` design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub n_points: usize,
    pub k: usize,
    pub blocks: Vec<Block>,
    pub t: usize,
    pub lambda: u64,
    pub b: usize,
}

#[derive(Serialize)]
struct Certificate {
    n: usize,
    k: usize,
    t: usize,
    lambda: u64,
    b: usize,
    steiner: bool,
}

impl Design {
    pub fn certificate(&self) -> serde_json::Value {
        serde_json::to_value(Certificate {
            n: self.n_points,
            k: self.k,
            t: self.t,
            lambda: self.lambda,
            b: self.b,
            steiner: steiner_check(self),
        })
        .expect("plain data serializes")
    }
}

/// Where the codewords of a given weight come from.
#[derive(Clone, Copy)]
pub enum Source<'a> {
    /// Enumerate every codeword.
    Code(&'a LinearCode),
    /// Enumerate `c_(a,b)` over all pairs.
    TraceDual(&'a TraceDual),
    /// For each `k`-subset of coordinates, solve the parity checks restricted
    /// to it and count the solutions with full support.
    CheckSubsets(&'a LinearCode),
}

/// Supports of weight-`k` codewords with multiplicities, plus the block list
/// obtained after checking that every multiplicity is `q - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supports {
    pub k: usize,
    pub q: u64,
    pub multiset: BTreeMap<Block, u64>,
}

impl Supports {
    pub fn word_count(&self) -> u64 {
        self.multiset.values().sum()
    }

    /// Sorted blocks; fails on the first support not carried by exactly
    /// `q - 1` codewords.
    pub fn blocks(&self) -> Result<Vec<Block>> {
        let expected = self.q - 1;
        for (block, &multiplicity) in &self.multiset {
            if multiplicity != expected {
                return Err(Error::MultiplicityNotQMinus1 {
                    block: block.clone(),
                    multiplicity,
                    expected,
                });
            }
        }
        Ok(self.multiset.keys().cloned().collect())
    }
}

fn support(word: &[u32]) -> Block {
    word.iter()
        .enumerate()
        .filter(|&(_, &x)| x != 0)
        .map(|(i, _)| i)
        .collect()
}

pub fn supports_of_weight(source: Source<'_>, k: usize, budget: u128) -> Result<Supports> {
    let mut multiset = BTreeMap::new();
    let q = match source {
        Source::Code(code) => {
            for_each_word(&code.field, &code.gen_matrix, budget, |w| {
                if w.iter().filter(|&&x| x != 0).count() == k {
                    *multiset.entry(support(w)).or_insert(0) += 1;
                }
            })?;
            code.q()
        }
        Source::TraceDual(td) => {
            let q2 = td.ext.order();
            check_budget(q2 as u64, 2, budget)?;
            for a in 0..q2 {
                for b in 0..q2 {
                    if td.weight(a, b) == k {
                        *multiset.entry(support(&td.codeword(a, b))).or_insert(0) += 1;
                    }
                }
            }
            td.q
        }
        Source::CheckSubsets(code) => {
            let needed = binomial(code.n as u64, k as u64);
            let as_u128 = u128::try_from(needed).unwrap_or(u128::MAX);
            if as_u128 > budget {
                return Err(Error::BudgetExceeded {
                    needed: as_u128,
                    budget,
                });
            }
            let f = &code.field;
            let mut err = None;
            for_each_subset(code.n, k, |s| {
                if err.is_some() {
                    return;
                }
                let sub = code.check_matrix.select_columns(s);
                let null = sub.nullspace(f);
                if null.rows == 0 {
                    return;
                }
                let mut full = 0u64;
                let res = for_each_word(f, &null, budget, |w| {
                    if w.iter().all(|&x| x != 0) {
                        full += 1;
                    }
                });
                match res {
                    Ok(()) if full > 0 => {
                        multiset.insert(s.to_vec(), full);
                    }
                    Ok(()) => {}
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            code.q()
        }
    };
    Ok(Supports { k, q, multiset })
}

/// Counts, for every `t`-subset of points, the blocks containing it.
pub fn verify_design(blocks: &[Block], n_points: usize, t: usize) -> Result<Design> {
    let Some(first) = blocks.first() else {
        return Err(Error::InvalidParameters("no blocks".into()));
    };
    let k = first.len();
    if !(t < k && k < n_points) {
        return Err(Error::InvalidParameters(format!(
            "need t < k < n, got t={t}, k={k}, n={n_points}"
        )));
    }
    let mut sorted: Vec<Block> = blocks.to_vec();
    for b in sorted.iter_mut() {
        b.sort_unstable();
        let distinct = b.windows(2).all(|w| w[0] < w[1]);
        if b.len() != k || !distinct || b.last().is_some_and(|&x| x >= n_points) {
            return Err(Error::InvalidParameters(format!("malformed block {b:?}")));
        }
    }
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameters("repeated block".into()));
    }
    let mut counts = vec![0u32; binomial_u64(n_points as u64, t as u64) as usize];
    let mut sub = vec![0usize; t];
    for b in &sorted {
        for_each_subset(k, t, |idx| {
            for (j, &i) in idx.iter().enumerate() {
                sub[j] = b[i];
            }
            counts[subset_rank(&sub) as usize] += 1;
        });
    }
    let lambda = counts[0] as u64;
    let mut witness = None;
    for_each_subset(n_points, t, |s| {
        if witness.is_none() && counts[subset_rank(s) as usize] as u64 != lambda {
            witness = Some(s.to_vec());
        }
    });
    if let Some(w) = witness {
        let count = counts[subset_rank(&w) as usize] as u64;
        return Err(Error::NotRegular {
            witness: w,
            count,
            expected: lambda,
        });
    }
    let b = sorted.len();
    assert_eq!(
        binomial(n_points as u64, t as u64) * lambda,
        binomial(k as u64, t as u64) * b as u64,
        "block count identity"
    );
    Ok(Design {
        n_points,
        k,
        blocks: sorted,
        t,
        lambda,
        b,
    })
}

pub fn steiner_check(design: &Design) -> bool {
    design.lambda == 1 && design.t >= 2
}

fn family_i(q: u64, h: u64) -> Result<u32> {
    Family::detect(q, h)
        .i()
        .ok_or_else(|| Error::InvalidParameters(format!("h={h} is in neither family for q={q}")))
}

/// 4-subsets `{x, y, z, w}` of the unit circle where the matrix with rows
/// `1, u, u^(p^i), u^(p^i+1)` is singular, as index sets with `u = β^index`.
pub fn weight4_blocks_det(q: u64, h: u64, budget: u128) -> Result<Vec<Block>> {
    let i = family_i(q, h)?;
    let (_, circle) = parity_check_rows(q, h)?;
    let ext = field_of_order(q * q)?;
    let n = q as usize + 1;
    let needed = binomial_u64(n as u64, 4) as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let pi = (ext.p() as u64).pow(i);
    let cols: Vec<[u32; 4]> = circle
        .elements
        .iter()
        .map(|&u| {
            let up = ext.pow_nn(u, pi);
            [1, u, up, ext.mul(up, u)]
        })
        .collect();
    let mut blocks = Vec::new();
    let mut m = Matrix::zeros(4, 4);
    for_each_subset(n, 4, |s| {
        for (c, &idx) in s.iter().enumerate() {
            for r in 0..4 {
                m.set(r, c, cols[idx][r]);
            }
        }
        if m.determinant(&ext) == 0 {
            blocks.push(s.to_vec());
        }
    });
    Ok(blocks)
}

/// 5-subsets whose `4 × 5` parity submatrix over GF(q^2) has a null vector
/// with five nonzero entries. The null space must be one-dimensional.
pub fn weight5_blocks_rank(q: u64, h: u64, budget: u128) -> Result<Vec<Block>> {
    let (hm, _) = parity_check_rows(q, h)?;
    let ext = field_of_order(q * q)?;
    let n = q as usize + 1;
    let needed = binomial_u64(n as u64, 5) as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut blocks = Vec::new();
    let mut err = None;
    for_each_subset(n, 5, |s| {
        if err.is_some() {
            return;
        }
        let null = hm.select_columns(s).nullspace(&ext);
        if null.rows != 1 {
            err = Some(Error::UnexpectedNullity(null.rows));
            return;
        }
        if null.row(0).iter().all(|&x| x != 0) {
            blocks.push(s.to_vec());
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(blocks),
    }
}

/// Header `n k b`, then one block per line.
pub fn write_blocks(n: usize, k: usize, blocks: &[Block], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{n} {k} {}", blocks.len())?;
    for b in blocks {
        let line: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_blocks(input: impl BufRead) -> Result<(usize, usize, Vec<Block>)> {
    let bad = |what: &str| Error::InvalidParameters(format!("block file: {what}"));
    let mut lines = input.lines().map_while(|l| l.ok());
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| bad("bad header")))
        .collect::<Result<_>>()?;
    let [n, k, b] = nums[..] else {
        return Err(bad("header must be `n k b`"));
    };
    let blocks: Vec<Block> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse().map_err(|_| bad("bad index")))
                .collect()
        })
        .collect::<Result<_>>()?;
    if blocks.len() != b {
        return Err(bad("block count does not match header"));
    }
    Ok((n, k, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bch_build, dual, CodeSpec};
    use crate::enumerate::DEFAULT_BUDGET;

    #[test]
    fn complete_design() {
        let mut blocks = Vec::new();
        for_each_subset(5, 4, |s| blocks.push(s.to_vec()));
        let d = verify_design(&blocks, 5, 3).unwrap();
        assert_eq!((d.lambda, d.b), (2, 5));
        assert!(!steiner_check(&d));
    }

    #[test]
    fn irregular_design_is_reported() {
        let blocks = vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]];
        match verify_design(&blocks, 5, 3) {
            Err(Error::NotRegular { witness, count, expected }) => {
                assert_eq!(witness, vec![0, 1, 3]);
                assert_eq!((count, expected), (1, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn q9_supports() {
        let c = bch_build(CodeSpec::antiprimitive(9, 3)).unwrap();
        let d = dual(&c);
        assert!(supports_of_weight(Source::Code(&d), 5, DEFAULT_BUDGET).unwrap().multiset.is_empty());
        let s6 = supports_of_weight(Source::Code(&d), 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(s6.word_count(), 240);
        assert_eq!(s6.blocks().unwrap().len(), 30);
        let s4 = supports_of_weight(Source::CheckSubsets(&c), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(s4.word_count(), 240);
        let blocks = s4.blocks().unwrap();
        let sqs = verify_design(&blocks, 10, 3).unwrap();
        assert!(steiner_check(&sqs));
        assert_eq!(weight4_blocks_det(9, 3, DEFAULT_BUDGET).unwrap(), blocks);
        let w5 = weight5_blocks_rank(9, 3, DEFAULT_BUDGET).unwrap();
        let s5 = supports_of_weight(Source::CheckSubsets(&c), 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(s5.word_count(), 576);
        assert_eq!(s5.blocks().unwrap(), w5);
        assert_eq!(verify_design(&w5, 10, 3).unwrap().lambda, 6);
    }

    #[test]
    fn mds_case_has_no_weight4_blocks() {
        assert!(weight4_blocks_det(8, 3, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn non_simple_multiplicity_is_surfaced() {
        let f = field_of_order(3).unwrap();
        // rows (1,1,0) and (1,2,0): the support {0,1} carries 4 words
        let code = LinearCode::from_generator(f, &Matrix::from_rows(&[vec![1, 1, 0], vec![1, 2, 0]], 3));
        let s = supports_of_weight(Source::Code(&code), 2, DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            s.blocks(),
            Err(Error::MultiplicityNotQMinus1 { multiplicity: 4, expected: 2, .. })
        ));
    }

    #[test]
    fn block_file_round_trip() {
        let blocks = vec![vec![0, 1, 2], vec![1, 2, 3]];
        let mut buf = Vec::new();
        write_blocks(4, 3, &blocks, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "4 3 2\n0 1 2\n1 2 3\n");
        assert_eq!(read_blocks(&buf[..]).unwrap(), (4, 3, blocks));
    }
}
