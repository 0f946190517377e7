//! Exhaustive enumeration of the row space of a generator matrix.
//!
//! Messages are walked with an odometer over element reps, so consecutive
//! codewords differ by one scaled row (amortized about one row update per
//! word). Characteristic-two fields and GF(3) use packed bit-plane kernels;
//! everything else goes through the generic table kernel. Work is split by the
//! most significant message digits and merged by addition, so results do not
//! depend on how rayon schedules the chunks.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::Field;
use crate::linalg::Matrix;

pub const DEFAULT_BUDGET: u128 = 1 << 26;

/// `q^k`, or `BudgetExceeded` when it is larger than `budget`.
pub fn check_budget(q: u64, k: usize, budget: u128) -> Result<u128> {
    let mut needed: u128 = 1;
    for _ in 0..k {
        needed = needed.saturating_mul(q as u128);
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

trait Kernel: Sync {
    type State: Clone + Send;
    fn zero(&self) -> Self::State;
    /// `state += (to - from) * row`.
    fn step(&self, st: &mut Self::State, row: usize, from: u32, to: u32);
    fn weight(&self, st: &Self::State) -> usize;
}

struct Generic<'a> {
    f: &'a Field,
    n: usize,
    rows: Vec<Vec<u32>>,
    // scaled[row][λ] = λ·row when small enough to keep
    scaled: Option<Vec<Vec<Vec<u32>>>>,
}

impl<'a> Generic<'a> {
    fn new(f: &'a Field, gen: &Matrix) -> Self {
        let rows = gen.row_vecs();
        let q = f.order() as usize;
        let scaled = (gen.rows * q * gen.cols <= 1 << 22).then(|| {
            rows.iter()
                .map(|r| {
                    (0..q as u32)
                        .map(|l| r.iter().map(|&x| f.mul(l, x)).collect())
                        .collect()
                })
                .collect()
        });
        Generic {
            f,
            n: gen.cols,
            rows,
            scaled,
        }
    }
}

impl Kernel for Generic<'_> {
    type State = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    fn step(&self, st: &mut Vec<u32>, row: usize, from: u32, to: u32) {
        let f = self.f;
        let d = f.sub(to, from);
        match &self.scaled {
            Some(s) => {
                for (x, &y) in st.iter_mut().zip(&s[row][d as usize]) {
                    *x = f.add(*x, y);
                }
            }
            None => {
                for (x, &y) in st.iter_mut().zip(&self.rows[row]) {
                    *x = f.add(*x, f.mul(d, y));
                }
            }
        }
    }

    fn weight(&self, st: &Vec<u32>) -> usize {
        st.iter().filter(|&&x| x != 0).count()
    }
}

/// GF(2^a): `a` bit-planes of the reps, addition is XOR.
struct CharTwo {
    planes: usize,
    words: usize,
    scaled: Vec<Vec<Vec<u64>>>,
}

impl CharTwo {
    fn new(f: &Field, gen: &Matrix) -> Self {
        let planes = f.m() as usize;
        let words = gen.cols.div_ceil(64);
        let pack = |v: &[u32]| {
            let mut out = vec![0u64; planes * words];
            for (i, &x) in v.iter().enumerate() {
                for b in 0..planes {
                    if (x >> b) & 1 == 1 {
                        out[b * words + i / 64] |= 1 << (i % 64);
                    }
                }
            }
            out
        };
        let scaled = gen
            .row_vecs()
            .iter()
            .map(|r| {
                (0..f.order())
                    .map(|l| pack(&r.iter().map(|&x| f.mul(l, x)).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        CharTwo {
            planes,
            words,
            scaled,
        }
    }
}

impl Kernel for CharTwo {
    type State = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.planes * self.words]
    }

    fn step(&self, st: &mut Vec<u64>, row: usize, from: u32, to: u32) {
        for (x, &y) in st.iter_mut().zip(&self.scaled[row][(from ^ to) as usize]) {
            *x ^= y;
        }
    }

    fn weight(&self, st: &Vec<u64>) -> usize {
        (0..self.words)
            .map(|w| {
                (0..self.planes)
                    .fold(0u64, |acc, b| acc | st[b * self.words + w])
                    .count_ones() as usize
            })
            .sum()
    }
}

/// GF(3) with one plane marking the ones and one marking the twos.
struct Ternary {
    words: usize,
    scaled: Vec<[Vec<u64>; 3]>,
}

impl Ternary {
    fn new(gen: &Matrix) -> Self {
        let words = gen.cols.div_ceil(64);
        let pack = |v: &[u32], l: u32| {
            let mut out = vec![0u64; 2 * words];
            for (i, &x) in v.iter().enumerate() {
                match x * l % 3 {
                    1 => out[i / 64] |= 1 << (i % 64),
                    2 => out[words + i / 64] |= 1 << (i % 64),
                    _ => {}
                }
            }
            out
        };
        let scaled = gen
            .row_vecs()
            .iter()
            .map(|r| [pack(r, 0), pack(r, 1), pack(r, 2)])
            .collect();
        Ternary { words, scaled }
    }
}

impl Kernel for Ternary {
    type State = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; 2 * self.words]
    }

    fn step(&self, st: &mut Vec<u64>, row: usize, from: u32, to: u32) {
        let d = (to + 3 - from) % 3;
        let b = &self.scaled[row][d as usize];
        let w = self.words;
        for i in 0..w {
            let (a1, a2) = (st[i], st[w + i]);
            let (b1, b2) = (b[i], b[w + i]);
            let a0 = !(a1 | a2);
            let b0 = !(b1 | b2);
            st[i] = (a0 & b1) | (a1 & b0) | (a2 & b2);
            st[w + i] = (a0 & b2) | (a2 & b0) | (a1 & b1);
        }
    }

    fn weight(&self, st: &Vec<u64>) -> usize {
        (0..self.words)
            .map(|i| (st[i] | st[self.words + i]).count_ones() as usize)
            .sum()
    }
}

/// Visits all `q^lo` combinations of rows `0..lo` added to `st`.
fn odometer<K: Kernel>(
    kern: &K,
    q: u32,
    lo: usize,
    mut st: K::State,
    visit: &mut impl FnMut(&K::State),
) {
    let mut digits = vec![0u32; lo];
    loop {
        visit(&st);
        let mut j = 0;
        loop {
            if j == lo {
                return;
            }
            let from = digits[j];
            let to = if from + 1 == q { 0 } else { from + 1 };
            kern.step(&mut st, j, from, to);
            digits[j] = to;
            if to != 0 {
                break;
            }
            j += 1;
        }
    }
}

fn histogram_with<K: Kernel>(kern: &K, q: u32, k: usize, n: usize) -> Vec<u64> {
    // split on the top digits so there are a few hundred independent chunks
    let mut top = 0;
    let mut chunks: u64 = 1;
    while top < k && chunks < 256 {
        top += 1;
        chunks *= q as u64;
    }
    let lo = k - top;
    (0..chunks)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, c| {
                let mut st = kern.zero();
                let mut r = c;
                for j in lo..k {
                    let v = (r % q as u64) as u32;
                    r /= q as u64;
                    if v != 0 {
                        kern.step(&mut st, j, 0, v);
                    }
                }
                odometer(kern, q, lo, st, &mut |s| hist[kern.weight(s)] += 1);
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Number of words of each weight among all `q^k` combinations of the rows.
pub fn weight_histogram(f: &Field, gen: &Matrix, budget: u128) -> Result<Vec<u64>> {
    let q = f.order();
    check_budget(q as u64, gen.rows, budget)?;
    let (k, n) = (gen.rows, gen.cols);
    Ok(if f.p() == 2 {
        histogram_with(&CharTwo::new(f, gen), q, k, n)
    } else if q == 3 {
        histogram_with(&Ternary::new(gen), q, k, n)
    } else {
        histogram_with(&Generic::new(f, gen), q, k, n)
    })
}

/// Generic-kernel histogram, kept separate so tests can compare kernels.
pub fn weight_histogram_generic(f: &Field, gen: &Matrix, budget: u128) -> Result<Vec<u64>> {
    check_budget(f.order() as u64, gen.rows, budget)?;
    Ok(histogram_with(
        &Generic::new(f, gen),
        f.order(),
        gen.rows,
        gen.cols,
    ))
}

/// Calls `visit` once per combination of the rows, sequentially.
pub fn for_each_word(
    f: &Field,
    gen: &Matrix,
    budget: u128,
    mut visit: impl FnMut(&[u32]),
) -> Result<()> {
    check_budget(f.order() as u64, gen.rows, budget)?;
    let kern = Generic::new(f, gen);
    let st = kern.zero();
    odometer(&kern, f.order(), gen.rows, st, &mut |s| visit(s));
    Ok(())
}

/// Iterator over all combinations of the rows of a generator matrix.
pub struct Codewords<'a> {
    f: &'a Field,
    rows: Vec<Vec<u32>>,
    digits: Vec<u32>,
    current: Vec<u32>,
    done: bool,
}

impl<'a> Codewords<'a> {
    pub fn new(f: &'a Field, gen: &Matrix, budget: u128) -> Result<Self> {
        check_budget(f.order() as u64, gen.rows, budget)?;
        Ok(Codewords {
            f,
            rows: gen.row_vecs(),
            digits: vec![0; gen.rows],
            current: vec![0; gen.cols],
            done: false,
        })
    }
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let q = self.f.order();
        let mut j = 0;
        loop {
            if j == self.digits.len() {
                self.done = true;
                break;
            }
            let from = self.digits[j];
            let to = if from + 1 == q { 0 } else { from + 1 };
            let d = self.f.sub(to, from);
            for (x, &y) in self.current.iter_mut().zip(&self.rows[j]) {
                *x = self.f.add(*x, self.f.mul(d, y));
            }
            self.digits[j] = to;
            if to != 0 {
                break;
            }
            j += 1;
        }
        Some(out)
    }
}
