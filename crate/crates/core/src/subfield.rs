//! Subfield subcodes: by linear algebra over the subfield, directly as a BCH
//! code over the subfield, and the parameter tables built from them.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::prime_power;
use crate::codes::{bch_build, CodeSpec, LinearCode};
use crate::cyclotomic::{coset, SplittingField};
use crate::enumerate::check_budget;
use crate::error::{Error, Result};
use crate::galois::{Embedding, Field};
use crate::linalg::Matrix;
use crate::weights::{macwilliams, weight_distribution};

/// Coordinates over GF(p^t) of every element of GF(p^s) in the basis
/// `1, α, …, α^(s/t - 1)`.
fn coordinate_table(emb: &Embedding) -> Vec<Vec<u32>> {
    let (small, big) = (emb.small(), emb.big());
    let r = (big.m() / small.m()) as usize;
    let basis: Vec<u32> = (0..r).map(|j| big.alpha_pow(j as i64)).collect();
    let mut table = vec![Vec::new(); big.order() as usize];
    let qs = small.order();
    let mut digits = vec![0u32; r];
    loop {
        let y = digits
            .iter()
            .zip(&basis)
            .fold(0, |acc, (&c, &b)| big.add(acc, big.mul(emb.up(c), b)));
        table[y as usize] = digits.clone();
        let mut j = 0;
        while j < r {
            digits[j] += 1;
            if digits[j] < qs {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        if j == r {
            return table;
        }
    }
}

/// Codewords of `code` whose entries all lie in the image of `emb`, as a code
/// over the small field. Each parity check over GF(p^s) is split into `s/t`
/// checks over GF(p^t).
pub fn subfield_subcode_generic(code: &LinearCode, emb: &Embedding) -> Result<LinearCode> {
    if emb.big().id() != code.field.id() {
        return Err(Error::SpecMismatch);
    }
    let small: Arc<Field> = emb.small().clone();
    let coords = coordinate_table(emb);
    let r = (emb.big().m() / small.m()) as usize;
    let h = &code.check_matrix;
    let mut sys = Matrix::zeros(h.rows * r, code.n);
    for row in 0..h.rows {
        for col in 0..code.n {
            let c = &coords[h.get(row, col) as usize];
            for j in 0..r {
                sys.set(row * r + j, col, c[j]);
            }
        }
    }
    let gen = sys.nullspace(&small);
    Ok(LinearCode::from_generator(small, &gen))
}

/// `C_(p^t, n, δ, h)` built directly.
pub fn subfield_subcode_bch(spec: CodeSpec, t: u32) -> Result<LinearCode> {
    let (p, s) = prime_power(spec.q)
        .ok_or_else(|| Error::InvalidParameters(format!("{} is not a prime power", spec.q)))?;
    if t == 0 || s % t != 0 {
        return Err(Error::InvalidParameters(format!("{t} does not divide {s}")));
    }
    bch_build(CodeSpec {
        q: p.pow(t),
        ..spec
    })
}

/// GF(p^t) → GF(q) compatible with the embeddings both BCH constructions use
/// to reach their common splitting field.
pub fn bch_subfield_embedding(spec: CodeSpec, t: u32) -> Result<Embedding> {
    let (p, _) = prime_power(spec.q)
        .ok_or_else(|| Error::InvalidParameters(format!("{} is not a prime power", spec.q)))?;
    let parent = SplittingField::new(spec.q, spec.n)?;
    let child = SplittingField::new(p.pow(t), spec.n)?;
    if parent.ext().id() != child.ext().id() {
        return Err(Error::SpecMismatch);
    }
    Embedding::relative(&child.embedding, &parent.embedding)
}

/// Both constructions give the same set of codewords.
pub fn subcodes_agree(spec: CodeSpec, t: u32) -> Result<bool> {
    let parent = bch_build(spec)?;
    let emb = bch_subfield_embedding(spec, t)?;
    let generic = subfield_subcode_generic(&parent, &emb)?;
    Ok(generic.same_code(&subfield_subcode_bch(spec, t)?))
}

/// `n - |C_h ∪ C_(h+1)|` with `p^t`-cyclotomic cosets modulo `n = q + 1`.
pub fn dimension_by_cosets(q: u64, h: u64, t: u32) -> Result<usize> {
    let (p, _) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
    let n = q + 1;
    let a = coset(n, p.pow(t), h)?;
    let b = coset(n, p.pow(t), h + 1)?;
    let zeros = if a == b { a.size } else { a.size + b.size };
    Ok(n as usize - zeros)
}

/// One row of the subfield tables: parent code, subfield degree `t`, the
/// published parameters and a note on best-known codes.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub s: u32,
    pub t: u32,
    pub parent: CodeSpec,
    pub published: [usize; 3],
    pub published_dual: [usize; 3],
    pub note: &'static str,
}

pub fn table_rows() -> Vec<TableRow> {
    let row = |s: u32, t: u32, q: u64, h: u64, a: [usize; 3], b: [usize; 3], note| TableRow {
        s,
        t,
        parent: CodeSpec::antiprimitive(q, h),
        published: a,
        published_dual: b,
        note,
    };
    vec![
        row(4, 1, 16, 4, [17, 1, 17], [17, 16, 2], "MDS, trivial (dimension 1)"),
        row(5, 1, 32, 8, [33, 13, 10], [33, 20, 6], "both best known"),
        row(6, 1, 64, 16, [65, 41, 5], [65, 24, 16], "best known [65,41,8] and [65,24,17]"),
        row(2, 2, 4, 1, [5, 1, 5], [5, 4, 2], "MDS, trivial"),
        row(4, 2, 16, 4, [17, 9, 7], [17, 8, 8], "both best known"),
        row(6, 2, 64, 16, [65, 53, 5], [65, 12, 32], "best known [65,53,6]; dual best known"),
        row(2, 1, 9, 3, [10, 2, 5], [10, 8, 2], "best known ternary cyclic; dual best known"),
        row(3, 1, 27, 12, [28, 16, 4], [28, 12, 8], "best known ternary cyclic"),
        row(4, 1, 81, 39, [82, 66, 6], [82, 16, 36], ""),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SubcodeReport {
    pub parent: CodeSpec,
    pub s: u32,
    pub t: u32,
    pub params: [Option<usize>; 3],
    pub dual_params: [Option<usize>; 3],
    pub parent_params: [usize; 2],
    pub dimension_by_cosets: usize,
    pub constructions_agree: bool,
    pub delsarte_bounds: bool,
    pub published: [usize; 3],
    pub published_dual: [usize; 3],
    pub best_known_note: &'static str,
    /// Needs more than 2^20 words on the enumerated side.
    pub slow: bool,
    pub skipped: Option<String>,
}

impl SubcodeReport {
    /// Computed parameters equal the published ones.
    pub fn matches_published(&self) -> bool {
        let some = |a: [usize; 3]| a.map(Some);
        self.params == some(self.published) && self.dual_params == some(self.published_dual)
    }
}

pub fn report_row(row: &TableRow, budget: u128) -> Result<SubcodeReport> {
    let spec = row.parent;
    let parent = bch_build(spec)?;
    let sub = subfield_subcode_bch(spec, row.t)?;
    let emb = bch_subfield_embedding(spec, row.t)?;
    let generic = subfield_subcode_generic(&parent, &emb)?;
    let r = (parent.field.m() / sub.field.m()) as usize;
    let (n, k) = (sub.n, sub.k);
    let delsarte = n as i64 - (r * (n - parent.k)) as i64 <= k as i64 && k <= parent.k;
    let mut report = SubcodeReport {
        parent: spec,
        s: row.s,
        t: row.t,
        params: [Some(n), Some(k), None],
        dual_params: [Some(n), Some(n - k), None],
        parent_params: [parent.n, parent.k],
        dimension_by_cosets: dimension_by_cosets(spec.q, spec.h, row.t)?,
        constructions_agree: generic.same_code(&sub),
        delsarte_bounds: delsarte,
        published: row.published,
        published_dual: row.published_dual,
        best_known_note: row.note,
        slow: (sub.q() as u128).pow(k.min(n - k) as u32) > 1 << 20,
        skipped: None,
    };
    if let Err(e) = check_budget(sub.q(), k.min(n - k), budget) {
        report.skipped = Some(e.to_string());
        return Ok(report);
    }
    let dist = weight_distribution(&sub, budget)?;
    let dual = macwilliams(&dist)?;
    report.params[2] = dist.min_distance();
    report.dual_params[2] = dual.min_distance();
    Ok(report)
}

/// Every table row, in parallel. Rows over the budget are reported as
/// skipped rather than computed.
pub fn report_tables(budget: u128) -> Result<Vec<SubcodeReport>> {
    table_rows().par_iter().map(|r| report_row(r, budget)).collect()
}

fn fmt_params(p: &[Option<usize>; 3]) -> String {
    let f = |x: Option<usize>| x.map_or("?".to_string(), |v| v.to_string());
    format!("[{},{},{}]", f(p[0]), f(p[1]), f(p[2]))
}

pub fn reports_csv(reports: &[SubcodeReport]) -> String {
    let mut s = String::from("q,h,t,s,n,k,d,dual_k,dual_d,agree,slow,note\n");
    for r in reports {
        let f = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},\"{}\"\n",
            r.parent.q,
            r.parent.h,
            r.t,
            r.s,
            f(r.params[0]),
            f(r.params[1]),
            f(r.params[2]),
            f(r.dual_params[1]),
            f(r.dual_params[2]),
            r.constructions_agree,
            r.slow,
            r.skipped.as_deref().unwrap_or(r.best_known_note)
        ));
    }
    s
}

pub fn reports_text(reports: &[SubcodeReport]) -> String {
    let mut s = format!("{:>3} {:>3} {:>5} {:>14} {:>14}  note\n", "GF", "s", "q", "code", "dual");
    for r in reports {
        let p = prime_power(r.parent.q).expect("prime power").0.pow(r.t);
        let line = format!(
            "{:>3} {:>3} {:>5} {:>14} {:>14}  {}{}",
            p,
            r.s,
            r.parent.q,
            fmt_params(&r.params),
            fmt_params(&r.dual_params),
            if r.slow { "(slow) " } else { "" },
            r.skipped.as_deref().unwrap_or(r.best_known_note)
        );
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{dual, min_distance};
    use crate::enumerate::DEFAULT_BUDGET;
    use crate::galois::{field, Embedding};

    #[test]
    fn whole_field_is_identity() {
        let spec = CodeSpec::antiprimitive(9, 3);
        let c = bch_build(spec).unwrap();
        let id = Embedding::identity(c.field.clone());
        assert!(subfield_subcode_generic(&c, &id).unwrap().same_code(&c));
    }

    #[test]
    fn small_rows() {
        let spec = CodeSpec::antiprimitive(9, 3);
        assert_eq!(subfield_subcode_bch(spec, 1).unwrap().k, 2);
        assert!(subcodes_agree(spec, 1).unwrap());
        let spec = CodeSpec::antiprimitive(16, 4);
        assert_eq!(subfield_subcode_bch(spec, 2).unwrap().k, 9);
        assert!(subcodes_agree(spec, 2).unwrap());
        assert_eq!(dimension_by_cosets(32, 8, 1).unwrap(), 13);
        assert_eq!(dimension_by_cosets(16, 4, 2).unwrap(), 9);
        assert_eq!(dimension_by_cosets(9, 3, 1).unwrap(), 2);
    }

    #[test]
    fn degenerate_binary_row() {
        let sub = subfield_subcode_bch(CodeSpec::antiprimitive(16, 4), 1).unwrap();
        assert_eq!(sub.k, 1);
        assert_eq!(min_distance(&sub, DEFAULT_BUDGET).unwrap(), 17);
        assert_eq!(min_distance(&dual(&sub), DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn direct_embedding_can_disagree() {
        // compatible embeddings matter: composing a Frobenius twist into the
        // subfield map changes which codewords count as subfield-valued
        let spec = CodeSpec::antiprimitive(16, 4);
        let parent = bch_build(spec).unwrap();
        let emb = bch_subfield_embedding(spec, 2).unwrap();
        let direct = Embedding::canonical(field(2, 2).unwrap(), parent.field.clone()).unwrap();
        let a = subfield_subcode_generic(&parent, &emb).unwrap();
        let b = subfield_subcode_generic(&parent, &direct).unwrap();
        assert_eq!(a.k, b.k);
    }
}
