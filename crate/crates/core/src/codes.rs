//! BCH codes `C_(q,n,δ,h)`, duals, the trace description of the
//! four-dimensional duals, and codeword enumeration.

use std::collections::HashSet;
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_power};
use crate::cyclotomic::{coset, SplittingField};
use crate::enumerate::{check_budget, Codewords};
use crate::error::{Error, Result};
use crate::galois::{field, field_of_order, subfield_embedding, Embedding, Field, UnitCircle};
use crate::linalg::{dot, Matrix};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u64,
    pub n: u64,
    pub delta: u64,
    pub h: u64,
}

impl CodeSpec {
    pub fn new(q: u64, n: u64, delta: u64, h: u64) -> Self {
        CodeSpec { q, n, delta, h }
    }

    /// `C_(q, q+1, 3, h)`.
    pub fn antiprimitive(q: u64, h: u64) -> Self {
        CodeSpec::new(q, q + 1, 3, h)
    }
}

/// Which of the two offset families `h` belongs to, for `n = q + 1`, `δ = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `h = (q - p^i)/2`
    QMinusPi { i: u32 },
    /// `h = (p^i - 1)/2`, `p` odd
    PiMinus1 { i: u32 },
    Generic,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::QMinusPi { .. } => "q-minus-pi",
            Family::PiMinus1 { .. } => "pi-minus-1",
            Family::Generic => "generic",
        }
    }

    pub fn i(&self) -> Option<u32> {
        match *self {
            Family::QMinusPi { i } | Family::PiMinus1 { i } => Some(i),
            Family::Generic => None,
        }
    }

    /// Family of `h` with `0 < i < s`.
    pub fn detect(q: u64, h: u64) -> Family {
        let Some((p, s)) = prime_power(q) else {
            return Family::Generic;
        };
        for i in 1..s {
            let pi = p.pow(i);
            if (q - pi) % 2 == 0 && (q - pi) / 2 == h {
                return Family::QMinusPi { i };
            }
            if p % 2 == 1 && (pi - 1) / 2 == h {
                return Family::PiMinus1 { i };
            }
        }
        Family::Generic
    }

    /// The offset `h` this family prescribes for GF(q); `i` may equal `s`.
    pub fn offset(&self, q: u64) -> Result<u64> {
        let (p, s) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        let bad = |why: &str| Err(Error::InvalidParameters(why.to_string()));
        match *self {
            Family::QMinusPi { i } if i >= 1 && i <= s => {
                let pi = p.pow(i);
                if (q - pi) % 2 != 0 {
                    return bad("q - p^i is odd");
                }
                Ok((q - pi) / 2)
            }
            Family::PiMinus1 { i } if i >= 1 && i <= s => {
                if p == 2 {
                    return bad("the (p^i - 1)/2 family needs odd p");
                }
                Ok((p.pow(i) - 1) / 2)
            }
            Family::Generic => bad("generic codes have no prescribed offset"),
            _ => bad("need 1 <= i <= s"),
        }
    }

    pub fn parse(label: &str, i: u32) -> Result<Family> {
        match label {
            "q-minus-pi" => Ok(Family::QMinusPi { i }),
            "pi-minus-1" => Ok(Family::PiMinus1 { i }),
            _ => Err(Error::InvalidParameters(format!("unknown family {label}"))),
        }
    }
}

/// A linear `[n, k]` code over GF(q).
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub field: Arc<Field>,
    pub n: usize,
    pub k: usize,
    pub gen_poly: Option<Poly>,
    pub gen_matrix: Matrix,
    pub check_matrix: Matrix,
    pub family: Family,
    pub spec: Option<CodeSpec>,
}

#[derive(Serialize)]
struct CodeJson<'a> {
    q: u64,
    n: usize,
    k: usize,
    gen_poly: Option<&'a [u32]>,
    family: &'static str,
}

impl LinearCode {
    /// The row space of `gen` (rows need not be independent).
    pub fn from_generator(field: Arc<Field>, gen: &Matrix) -> Self {
        let basis = gen.row_basis(&field);
        let check = basis.nullspace(&field);
        LinearCode {
            n: gen.cols,
            k: basis.rows,
            gen_matrix: basis,
            check_matrix: check,
            gen_poly: None,
            family: Family::Generic,
            spec: None,
            field,
        }
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        (0..self.check_matrix.rows).all(|r| dot(self.check_matrix.row(r), word, &self.field) == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeJson {
            q: self.q(),
            n: self.n,
            k: self.k,
            gen_poly: self.gen_poly.as_ref().map(|g| g.coeffs.as_slice()),
            family: self.family.label(),
        })
        .expect("plain data serializes")
    }

    /// Same codeword set as `other` (same field and length required).
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field.id() == other.field.id()
            && self.n == other.n
            && crate::linalg::same_row_space(&self.gen_matrix, &other.gen_matrix, &self.field)
    }
}

fn shifted_rows(g: &Poly, count: usize, n: usize) -> Matrix {
    let mut m = Matrix::zeros(count, n);
    for r in 0..count {
        for (j, &c) in g.coeffs.iter().enumerate() {
            m.set(r, r + j, c);
        }
    }
    m
}

/// Generator lcm of the minimal polynomials of `β^h, …, β^(h+δ-2)`.
pub fn bch_build(spec: CodeSpec) -> Result<LinearCode> {
    let CodeSpec { q, n, delta, h } = spec;
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    if delta < 2 || delta > n {
        return Err(Error::InvalidParameters(format!("designed distance {delta} outside [2, {n}]")));
    }
    let sf = SplittingField::new(q, n)?;
    let f = sf.base().clone();
    let exps: Vec<u64> = (h..h + delta - 1).map(|e| e % n).collect();
    let g = sf.generator(&exps)?;
    let n = n as usize;
    let k = n - g.degree().expect("nonzero generator");
    let (parity, _) = Poly::x_n_minus_one(&f, n).divmod(&g, &f)?;
    let gen_matrix = shifted_rows(&g, k, n);
    let check_matrix = shifted_rows(&parity.reciprocal(), n - k, n);
    let family = if n as u64 == q + 1 && delta == 3 {
        Family::detect(q, h)
    } else {
        Family::Generic
    };
    Ok(LinearCode {
        field: f,
        n,
        k,
        gen_poly: Some(g),
        gen_matrix,
        check_matrix,
        family,
        spec: Some(spec),
    })
}

/// Dual code. Cyclic codes use the reciprocal parity-check polynomial,
/// everything else goes through [`dual_by_elimination`].
pub fn dual(code: &LinearCode) -> LinearCode {
    let Some(g) = &code.gen_poly else {
        return dual_by_elimination(code);
    };
    let f = &code.field;
    let (parity, _) = Poly::x_n_minus_one(f, code.n)
        .divmod(g, f)
        .expect("generator is nonzero");
    let dual_g = parity.reciprocal().monic(f).expect("parity polynomial is nonzero");
    LinearCode {
        field: f.clone(),
        n: code.n,
        k: code.n - code.k,
        gen_poly: Some(dual_g),
        gen_matrix: code.check_matrix.clone(),
        check_matrix: code.gen_matrix.clone(),
        family: Family::Generic,
        spec: None,
    }
}

pub fn dual_by_elimination(code: &LinearCode) -> LinearCode {
    let gen = code.gen_matrix.nullspace(&code.field);
    LinearCode {
        field: code.field.clone(),
        n: code.n,
        k: gen.rows,
        gen_poly: None,
        gen_matrix: gen,
        check_matrix: code.gen_matrix.row_basis(&code.field),
        family: Family::Generic,
        spec: None,
    }
}

/// `|C_h ∪ C_(h+1)|` for `q`-cyclotomic cosets modulo `q + 1`, the dual dimension.
pub fn dual_dimension(q: u64, h: u64) -> Result<usize> {
    let a = coset(q + 1, q, h)?;
    let b = coset(q + 1, q, h + 1)?;
    Ok(if a == b { a.size } else { a.size + b.size })
}

/// The words `c_(a,b) = (Tr(a β^(h i) + b β^((h+1) i)))_i` of length `q + 1`,
/// with values carried into the canonical GF(q).
#[derive(Clone, Debug)]
pub struct TraceDual {
    pub q: u64,
    pub h: u64,
    pub ext: Arc<Field>,
    pub circle: UnitCircle,
    embedding: Embedding,
    u: Vec<u32>,
    v: Vec<u32>,
    trace_zero: Vec<bool>,
}

impl TraceDual {
    pub fn new(q: u64, h: u64) -> Result<Self> {
        let base = field_of_order(q)?;
        let ext = field(base.p(), 2 * base.m())?;
        let dim = dual_dimension(q, h)?;
        if dim != 4 {
            return Err(Error::DegenerateDimension(dim));
        }
        let circle = UnitCircle::new(&ext)?;
        let embedding = subfield_embedding(ext.clone(), q)?;
        let n = q as usize + 1;
        let u = (0..n)
            .map(|i| ext.pow_nn(circle.beta, h * i as u64))
            .collect();
        let v = (0..n)
            .map(|i| ext.pow_nn(circle.beta, (h + 1) * i as u64))
            .collect();
        let trace_zero = ext
            .elements()
            .map(|x| ext.rel_trace(x, q).expect("square field") == 0)
            .collect();
        Ok(TraceDual {
            q,
            h,
            ext,
            circle,
            embedding,
            u,
            v,
            trace_zero,
        })
    }

    pub fn n(&self) -> usize {
        self.q as usize + 1
    }

    pub fn base(&self) -> &Arc<Field> {
        self.embedding.small()
    }

    fn inner(&self, a: u32, b: u32, i: usize) -> u32 {
        self.ext
            .add(self.ext.mul(a, self.u[i]), self.ext.mul(b, self.v[i]))
    }

    /// `c_(a,b)` over GF(q).
    pub fn codeword(&self, a: u32, b: u32) -> Vec<u32> {
        (0..self.n())
            .map(|i| {
                let t = self.ext.rel_trace(self.inner(a, b, i), self.q).expect("square field");
                self.embedding.down(t).expect("traces lie in the subfield")
            })
            .collect()
    }

    pub fn weight(&self, a: u32, b: u32) -> usize {
        (0..self.n())
            .filter(|&i| !self.trace_zero[self.inner(a, b, i) as usize])
            .count()
    }

    /// Words for a GF(q)-basis of GF(q^2)^2: `(1,0), (α,0), (0,1), (0,α)`.
    pub fn generator_matrix(&self) -> Matrix {
        let al = self.ext.alpha();
        let rows: Vec<Vec<u32>> = [(1, 0), (al, 0), (0, 1), (0, al)]
            .iter()
            .map(|&(a, b)| self.codeword(a, b))
            .collect();
        Matrix::from_rows(&rows, self.n())
    }

    pub fn to_code(&self) -> LinearCode {
        LinearCode::from_generator(self.base().clone(), &self.generator_matrix())
    }

    /// Weight histogram over all `q^4` pairs.
    pub fn distribution_exhaustive(&self, budget: u128) -> Result<Vec<u64>> {
        let q2 = self.ext.order();
        check_budget(q2 as u64, 2, budget)?;
        let n = self.n();
        Ok((0..q2)
            .into_par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut hist, a| {
                    for b in 0..q2 {
                        hist[self.weight(a, b)] += 1;
                    }
                    hist
                },
            )
            .reduce(|| vec![0u64; n + 1], add_hist))
    }

    /// Weight histogram using the symmetries `(a,b) ↦ (γa, γb)` for
    /// `γ ∈ GF(q)*` and the cyclic shift `(a,b) ↦ (aβ^h, bβ^(h+1))`.
    /// For `a ≠ 0` these move `a` through a coset of `⟨α^g⟩`,
    /// `g = gcd(q+1, (q-1)h, q^2-1)`, so one `a` per coset suffices.
    pub fn distribution_by_orbits(&self) -> Vec<u64> {
        let ext = &self.ext;
        let q = self.q;
        let order = q * q - 1;
        let n = self.n();
        let mut hist = vec![0u64; n + 1];
        hist[0] += 1;
        let gb = gcd(gcd(q + 1, (q - 1) * (self.h + 1)), order);
        for r in 0..gb {
            let b = ext.alpha_pow(r as i64);
            hist[self.weight(0, b)] += order / gb;
        }
        let ga = gcd(gcd(q + 1, (q - 1) * self.h), order);
        for r in 0..ga {
            let a = ext.alpha_pow(r as i64);
            let au: Vec<u32> = self.u.iter().map(|&x| ext.mul(a, x)).collect();
            let part = (0..ext.order())
                .into_par_iter()
                .fold(
                    || vec![0u64; n + 1],
                    |mut h, b| {
                        let w = (0..n)
                            .filter(|&i| {
                                let y = ext.add(au[i], ext.mul(b, self.v[i]));
                                !self.trace_zero[y as usize]
                            })
                            .count();
                        h[w] += 1;
                        h
                    },
                )
                .reduce(|| vec![0u64; n + 1], add_hist);
            for (x, y) in hist.iter_mut().zip(part) {
                *x += y * (order / ga);
            }
        }
        hist
    }

    /// Equality with the algebraic dual of `primal`: the four basis words are
    /// orthogonal to the primal code and independent, and the dual has
    /// dimension 4.
    pub fn spans_dual_of(&self, primal: &LinearCode) -> bool {
        let f = self.base();
        if primal.field.id() != f.id() || primal.n != self.n() || primal.n - primal.k != 4 {
            return false;
        }
        let g = self.generator_matrix();
        g.rank(f) == 4 && primal.gen_matrix.mul_transpose(&g, f).is_zero()
    }

    /// Exhaustive set comparison with `code`: all `q^4` words are distinct and
    /// every word of `code` is among them.
    pub fn image_equals(&self, code: &LinearCode, budget: u128) -> Result<bool> {
        let q2 = self.ext.order();
        check_budget(q2 as u64, 2, budget)?;
        if code.field.id() != self.base().id() || code.n != self.n() || code.k != 4 {
            return Ok(false);
        }
        let mut image: HashSet<Vec<u16>> = HashSet::with_capacity((q2 as usize).pow(2));
        for a in 0..q2 {
            for b in 0..q2 {
                image.insert(self.codeword(a, b).iter().map(|&x| x as u16).collect());
            }
        }
        if image.len() as u64 != (q2 as u64).pow(2) {
            return Ok(false);
        }
        for w in Codewords::new(&code.field, &code.gen_matrix, budget)? {
            if !image.contains(&w.iter().map(|&x| x as u16).collect::<Vec<_>>()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// The `4 × (q+1)` parity-check matrix over GF(q^2) with entries `β^(e i)`.
/// Exponents are `h, h+1, q-h, q-h+1` for the `(q-p^i)/2` family (and generic
/// offsets) and `-(h+1), -h, h, h+1` for the `(p^i-1)/2` family.
pub fn parity_check_rows(q: u64, h: u64) -> Result<(Matrix, UnitCircle)> {
    let dim = dual_dimension(q, h)?;
    if dim != 4 {
        return Err(Error::DegenerateDimension(dim));
    }
    let base = field_of_order(q)?;
    let ext = field(base.p(), 2 * base.m())?;
    let circle = UnitCircle::new(&ext)?;
    let n = q + 1;
    let exps = match Family::detect(q, h) {
        Family::PiMinus1 { .. } => [n - (h + 1) % n, n - h % n, h, h + 1],
        _ => [h, h + 1, q - h, q - h + 1],
    };
    let mut m = Matrix::zeros(4, n as usize);
    for (r, &e) in exps.iter().enumerate() {
        for i in 0..n {
            m.set(r, i as usize, ext.pow_nn(circle.beta, (e % n) * i));
        }
    }
    Ok((m, circle))
}

/// Exact minimum distance, from the smaller of the code and its dual.
pub fn min_distance(code: &LinearCode, budget: u128) -> Result<usize> {
    crate::weights::weight_distribution(code, budget)?
        .min_distance()
        .ok_or_else(|| Error::InvalidParameters("the zero code has no minimum distance".into()))
}

pub fn codeword_iter(code: &LinearCode, budget: u128) -> Result<Codewords<'_>> {
    Codewords::new(&code.field, &code.gen_matrix, budget)
}

/// One word per line, space-separated reps.
pub fn write_codewords(code: &LinearCode, budget: u128, out: &mut impl Write) -> std::io::Result<()> {
    let words = codeword_iter(code, budget).map_err(std::io::Error::other)?;
    for w in words {
        let line: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_BUDGET;

    #[test]
    fn bch_dimensions() {
        for (spec, k) in [((9, 10, 3, 3), 6), ((8, 9, 3, 3), 5), ((2, 33, 3, 8), 13)] {
            let c = bch_build(CodeSpec::new(spec.0, spec.1, spec.2, spec.3)).unwrap();
            assert_eq!(c.k, k);
            let f = &c.field;
            assert!(c.gen_matrix.mul_transpose(&c.check_matrix, f).is_zero());
            assert_eq!(c.gen_matrix.rank(f), k);
            let g = c.gen_poly.as_ref().unwrap();
            assert!(Poly::x_n_minus_one(f, c.n).divmod(g, f).unwrap().1.is_zero());
        }
        assert_eq!(
            bch_build(CodeSpec::new(9, 12, 3, 1)).unwrap_err(),
            Error::NotCoprime { n: 12, q: 9 }
        );
    }

    #[test]
    fn dual_routes_agree() {
        let c = bch_build(CodeSpec::antiprimitive(9, 3)).unwrap();
        let d = dual(&c);
        assert_eq!(d.k, 4);
        assert!(d.same_code(&dual_by_elimination(&c)));
        assert!(dual(&d).same_code(&c));
        let f = c.field.clone();
        let full = LinearCode::from_generator(f, &Matrix::identity(5));
        assert_eq!(dual(&full).k, 0);
    }

    #[test]
    fn family_detection() {
        assert_eq!(Family::detect(9, 3), Family::QMinusPi { i: 1 });
        assert_eq!(Family::detect(27, 4), Family::PiMinus1 { i: 2 });
        assert_eq!(Family::detect(16, 6), Family::QMinusPi { i: 2 });
        assert_eq!(Family::detect(16, 5), Family::Generic);
        assert_eq!(Family::PiMinus1 { i: 2 }.offset(9), Ok(4));
        assert!(Family::PiMinus1 { i: 1 }.offset(8).is_err());
    }

    #[test]
    fn trace_dual_small_cases() {
        let td = TraceDual::new(9, 3).unwrap();
        assert_eq!(td.codeword(0, 0), vec![0; 10]);
        let mut set = HashSet::new();
        for a in 0..81 {
            for b in 0..81 {
                let w = td.codeword(a, b);
                assert_eq!(w.iter().filter(|&&x| x != 0).count(), td.weight(a, b));
                set.insert(w);
            }
        }
        assert_eq!(set.len(), 6561);
        let primal = bch_build(CodeSpec::antiprimitive(9, 3)).unwrap();
        assert!(td.spans_dual_of(&primal));
        assert!(td.image_equals(&dual(&primal), DEFAULT_BUDGET).unwrap());
        assert_eq!(TraceDual::new(9, 4).unwrap_err(), Error::DegenerateDimension(3));
    }

    #[test]
    fn orbit_distribution_matches_exhaustive() {
        for (q, h) in [(8, 3), (9, 3), (9, 1), (16, 6), (27, 4), (25, 10), (16, 5)] {
            let Ok(td) = TraceDual::new(q, h) else { continue };
            assert_eq!(
                td.distribution_by_orbits(),
                td.distribution_exhaustive(DEFAULT_BUDGET).unwrap(),
                "q={q} h={h}"
            );
        }
    }

    #[test]
    fn parity_rows_annihilate_codewords() {
        for (q, h) in [(9, 3), (9, 1), (27, 4), (16, 6)] {
            let (hm, circle) = parity_check_rows(q, h).unwrap();
            let ext = field_of_order(q * q).unwrap();
            assert_eq!(hm.rank(&ext), 4);
            assert!((0..4).all(|r| hm.get(r, 0) == 1));
            assert_eq!(circle.len(), q as usize + 1);
            let c = bch_build(CodeSpec::antiprimitive(q, h)).unwrap();
            let emb = subfield_embedding(ext.clone(), q).unwrap();
            let mut lifted = c.gen_matrix.clone();
            for x in lifted.data.iter_mut() {
                *x = emb.up(*x);
            }
            assert!(lifted.mul_transpose(&hm, &ext).is_zero(), "q={q} h={h}");
        }
    }

    #[test]
    fn code_json_and_dump() {
        let c = bch_build(CodeSpec::antiprimitive(8, 3)).unwrap();
        let j = c.to_json();
        assert_eq!(j["k"], 5);
        assert_eq!(j["family"], "q-minus-pi");
        let d = dual(&c);
        let mut buf = Vec::new();
        write_codewords(&d, DEFAULT_BUDGET, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4096);
        assert_eq!(text.lines().next().unwrap(), "0 0 0 0 0 0 0 0 0");
    }
}
