//! Matrices over GF(q), classical group generators, eigenspace invariants,
//! and the conversion of matrix groups into permutation actions on vectors,
//! projective points, subspaces and quadratic forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff::{poly_deg, poly_divrem, poly_is_irreducible, poly_is_zero, ExtElem, ExtField, FieldRef};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Square matrix over a finite field, row-major entries, acting on row
/// vectors from the right (`v ↦ v·M`), matching the right-action convention.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    pub field: FieldRef,
    pub n: usize,
    entries: Vec<u64>,
}

impl std::fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FFMatrix({}x{} over GF({}))", self.n, self.n, self.field.q())?;
        for i in 0..self.n {
            write!(f, " [{:?}]", &self.entries[i * self.n..(i + 1) * self.n])?;
        }
        Ok(())
    }
}

impl FFMatrix {
    pub fn identity(field: FieldRef, n: usize) -> FFMatrix {
        let mut m = FFMatrix {
            field,
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn zero(field: FieldRef, n: usize) -> FFMatrix {
        FFMatrix {
            field,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_rows(field: FieldRef, rows: &[Vec<u64>]) -> FFMatrix {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            entries.extend_from_slice(r);
        }
        FFMatrix { field, n, entries }
    }

    /// Diagonal matrix from integer entries (negative allowed).
    pub fn diag_int(field: FieldRef, ints: &[i64]) -> FFMatrix {
        let n = ints.len();
        let mut m = FFMatrix::zero(field.clone(), n);
        for (i, &v) in ints.iter().enumerate() {
            let e = field.from_int(v);
            m.set(i, i, e);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        let n = self.n;
        let mut out = FFMatrix::zero(self.field.clone(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FFMatrix {
        let n = self.n;
        let mut out = FFMatrix::zero(self.field.clone(), n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let n = self.n;
        let mut out = vec![0; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..n {
                let m = self.get(i, j);
                if m != 0 {
                    out[j] = f.add(out[j], f.mul(vi, m));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        rank_base(&self.field, rows)
    }

    /// Dimension of the kernel after extending scalars to GF(q^d). Rank is
    /// invariant under field extension; the elimination really runs over the
    /// extension as a cross-check of the extension arithmetic.
    pub fn kernel_dim(&self, ext_degree: usize) -> usize {
        if ext_degree == 1 {
            return self.n - self.rank();
        }
        let ext = ExtField::new(self.field.clone(), ext_degree);
        let rows: Vec<Vec<ExtElem>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| ext.embed(self.get(i, j))).collect())
            .collect();
        self.n - rank_ext(&ext, rows)
    }

    pub fn det(&self) -> u64 {
        let f = &self.field;
        let n = self.n;
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = 1u64;
        let mut col = 0;
        for r in 0..n {
            let pivot = (r..n).find(|&i| rows[i][col] != 0);
            let Some(p) = pivot else { return 0 };
            if p != r {
                rows.swap(p, r);
                det = f.neg(det);
            }
            det = f.mul(det, rows[r][col]);
            let inv = f.inv(rows[r][col]).unwrap();
            for i in r + 1..n {
                if rows[i][col] != 0 {
                    let factor = f.mul(rows[i][col], inv);
                    for j in col..n {
                        let t = f.mul(factor, rows[r][j]);
                        rows[i][j] = f.sub(rows[i][j], t);
                    }
                }
            }
            col += 1;
        }
        det
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        let f = &self.field;
        let n = self.n;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut b: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| a[i][col] != 0).ok_or(Error::SingularMatrix)?;
            a.swap(pivot, col);
            b.swap(pivot, col);
            let inv = f.inv(a[col][col]).unwrap();
            for j in 0..n {
                a[col][j] = f.mul(a[col][j], inv);
                b[col][j] = f.mul(b[col][j], inv);
            }
            for i in 0..n {
                if i != col && a[i][col] != 0 {
                    let factor = a[i][col];
                    for j in 0..n {
                        let t = f.mul(factor, a[col][j]);
                        a[i][j] = f.sub(a[i][j], t);
                        let t = f.mul(factor, b[col][j]);
                        b[i][j] = f.sub(b[i][j], t);
                    }
                }
            }
        }
        Ok(FFMatrix::from_rows(self.field.clone(), &b))
    }

    pub fn is_identity(&self) -> bool {
        *self == FFMatrix::identity(self.field.clone(), self.n)
    }

    pub fn scale(&self, c: u64) -> FFMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.field.mul(*e, c);
        }
        out
    }

    pub fn sub_matrix(&self, other: &FFMatrix) -> FFMatrix {
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = self.field.sub(*e, *o);
        }
        out
    }

    /// Monic characteristic polynomial `det(xI − M)`, leading coefficient
    /// first, computed division-free (Samuelson–Berkowitz).
    pub fn charpoly(&self) -> Vec<u64> {
        let f = &self.field;
        let n = self.n;
        // Work on trailing principal submatrices, growing from 1x1.
        // p has leading coefficient first.
        let mut p = vec![1u64];
        for m in 1..=n {
            let top = n - m; // row/col index of the new leading entry
            let a = self.get(top, top);
            // R: row to the right of a, C: column below a, M: trailing block.
            let r_vec: Vec<u64> = (top + 1..n).map(|j| self.get(top, j)).collect();
            let c_vec: Vec<u64> = (top + 1..n).map(|i| self.get(i, top)).collect();
            // values[t] = R · M^t · C
            let mut values = Vec::with_capacity(m.saturating_sub(1));
            let mut w = c_vec.clone();
            for _ in 0..m.saturating_sub(1) {
                let mut dot = 0u64;
                for (x, y) in r_vec.iter().zip(&w) {
                    dot = f.add(dot, f.mul(*x, *y));
                }
                values.push(dot);
                // w = M · w
                let mut nw = vec![0u64; w.len()];
                for (i, nwi) in nw.iter_mut().enumerate() {
                    for (j, wj) in w.iter().enumerate() {
                        let mij = self.get(top + 1 + i, top + 1 + j);
                        if mij != 0 && *wj != 0 {
                            *nwi = f.add(*nwi, f.mul(mij, *wj));
                        }
                    }
                }
                w = nw;
            }
            // Toeplitz multiply: q[i] = p[i] − a·p[i−1] − Σ_{t≥0} values[t]·p[i−2−t]
            let mut q = vec![0u64; m + 1];
            for i in 0..=m {
                let mut acc = if i < p.len() { p[i] } else { 0 };
                if i >= 1 && i - 1 < p.len() {
                    acc = f.sub(acc, f.mul(a, p[i - 1]));
                }
                for (t, &val) in values.iter().enumerate() {
                    if i >= t + 2 && i - t - 2 < p.len() {
                        acc = f.sub(acc, f.mul(val, p[i - t - 2]));
                    }
                }
                q[i] = acc;
            }
            p = q;
        }
        p
    }
}

fn rank_base(f: &FieldRef, mut rows: Vec<Vec<u64>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&i| rows[i][col] != 0);
        let Some(p) = pivot else { continue };
        rows.swap(p, rank);
        let inv = f.inv(rows[rank][col]).unwrap();
        for j in col..ncols {
            rows[rank][j] = f.mul(rows[rank][j], inv);
        }
        for i in 0..nrows {
            if i != rank && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in col..ncols {
                    let t = f.mul(factor, rows[rank][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

pub fn rank_ext(ext: &ExtField, mut rows: Vec<Vec<ExtElem>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&i| !ext.is_zero(&rows[i][col]));
        let Some(p) = pivot else { continue };
        rows.swap(p, rank);
        let inv = ext.inv(&rows[rank][col]).unwrap();
        for j in col..ncols {
            rows[rank][j] = ext.mul(&rows[rank][j], &inv);
        }
        for i in 0..nrows {
            if i != rank && !ext.is_zero(&rows[i][col]) {
                let factor = rows[i][col].clone();
                for j in col..ncols {
                    let t = ext.mul(&factor, &rows[rank][j]);
                    rows[i][j] = ext.sub(&rows[i][j], &t);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Factors a monic polynomial (leading coefficient first) into irreducible
/// factors with multiplicity, by trial division against monic irreducibles
/// in ascending degree and lexicographic order.
pub fn factor_monic(field: &FieldRef, poly_leading_first: &[u64]) -> Vec<(Vec<u64>, usize)> {
    // Convert to constant-term-first for the ff helpers.
    let mut rem: Vec<u64> = poly_leading_first.iter().rev().cloned().collect();
    let q = field.q();
    let mut factors: Vec<(Vec<u64>, usize)> = Vec::new();
    let mut deg = poly_deg(&rem);
    let mut e = 1;
    while deg > 0 {
        if e > deg / 2 {
            // Remaining part is irreducible.
            let lead_inv = field.inv(rem[poly_deg(&rem)]).unwrap();
            let monic: Vec<u64> = rem.iter().map(|&c| field.mul(c, lead_inv)).collect();
            factors.push((monic, 1));
            break;
        }
        let count = (q as u128).pow(e as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(e + 1);
            let mut x = idx;
            for _ in 0..e {
                cand.push((x % q as u128) as u64);
                x /= q as u128;
            }
            cand.push(1);
            if !poly_is_irreducible(field, &cand) {
                continue;
            }
            let mut mult = 0;
            loop {
                let (quot, r) = poly_divrem(field, &rem, &cand);
                if poly_is_zero(&r) && poly_deg(&rem) >= e {
                    rem = quot;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                factors.push((cand.clone(), mult));
                deg = poly_deg(&rem);
                if deg == 0 {
                    break;
                }
            }
        }
        e += 1;
        deg = poly_deg(&rem);
    }
    factors
}

/// Codimension of the largest eigenspace over the algebraic closure,
/// minimized over non-zero scalar multiples of the matrix (so the value only
/// depends on the projective image). Scaling permutes eigenvalues without
/// changing eigenspace dimensions, so the explicit minimum is constant; both
/// are computed and the minimum returned.
pub fn nu(m: &FFMatrix) -> Result<usize> {
    if m.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    let f = &m.field;
    let mut best = usize::MAX;
    for lambda in 1..f.q() {
        let scaled = m.scale(lambda);
        best = best.min(nu_unscaled(&scaled));
    }
    Ok(best)
}

fn nu_unscaled(m: &FFMatrix) -> usize {
    let n = m.n;
    let cp = m.charpoly();
    let mut max_dim = 0;
    for (factor, _mult) in factor_monic(&m.field, &cp) {
        let e = poly_deg(&factor);
        if e == 0 {
            continue;
        }
        // Work in GF(q^e) built as GF(q)[y]/(factor): y is an eigenvalue.
        let ext = ExtField::with_modulus(m.field.clone(), factor.clone());
        let lambda = ext.generator_or_embedded_root(&factor);
        // rank(M − λI) over the extension.
        let rows: Vec<Vec<ExtElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = ext.embed(m.get(i, j));
                        if i == j {
                            v = ext.sub(&v, &lambda);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let dim = n - rank_ext(&ext, rows);
        max_dim = max_dim.max(dim);
    }
    n - max_dim
}

impl ExtField {
    /// Extension defined by an explicit monic irreducible modulus
    /// (constant term first) over the base field.
    pub fn with_modulus(base: FieldRef, modulus: Vec<u64>) -> ExtField {
        let d = poly_deg(&modulus);
        assert!(d >= 1);
        ExtField { base, d, modulus }
    }

    /// For degree ≥ 2 the class of y is a root of the modulus; for a linear
    /// modulus x − c the root is the embedded constant c.
    pub fn generator_or_embedded_root(&self, modulus: &[u64]) -> ExtElem {
        if self.d == 1 {
            // modulus = x + m0, root is −m0.
            let root = self.base.neg(modulus[0]);
            self.embed(root)
        } else {
            let mut v = vec![0; self.d];
            v[1] = 1;
            v
        }
    }
}

// ---------------------------------------------------------------------------
// Matrix groups and classical constructions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Gl,
    Sl,
    Sp,
    User,
}

#[derive(Clone)]
pub struct MatrixGroup {
    pub field: FieldRef,
    pub n: usize,
    pub generators: Vec<FFMatrix>,
    pub kind: MatrixKind,
}

impl MatrixGroup {
    /// Standard alternating form J for the symplectic basis
    /// `e_1..e_m, f_1..f_m`.
    pub fn standard_symplectic_form(field: FieldRef, n: usize) -> FFMatrix {
        assert!(n % 2 == 0);
        let m = n / 2;
        let mut j = FFMatrix::zero(field.clone(), n);
        for i in 0..m {
            j.set(i, m + i, 1);
            j.set(m + i, i, field.from_int(-1));
        }
        j
    }
}

/// Elementary transvection `I + c·E_{ij}` (adds `c`×row j to row i of a row
/// vector acting from the right; i ≠ j).
pub fn elementary_transvection(field: FieldRef, n: usize, i: usize, j: usize, c: u64) -> FFMatrix {
    let mut m = FFMatrix::identity(field, n);
    m.set(i, j, c);
    m
}

/// Builds GL, SL or Sp over GF(q) with generator sets whose correctness is
/// structural: all elementary transvections with coefficients running over a
/// GF(p)-basis generate SL; adding `diag(λ, 1, …, 1)` for a primitive λ
/// surjects onto every determinant, giving GL; the full set of symplectic
/// transvection directions generates Sp.
pub fn build_classical(kind: MatrixKind, n: usize, q: u64) -> Result<MatrixGroup> {
    if n < 2 || n > 8 || q > 32 {
        return Err(Error::Unsupported(format!(
            "classical group parameters out of range: n={n}, q={q} (need 2 ≤ n ≤ 8, q ≤ 32)"
        )));
    }
    let field = crate::ff::Gf::of_order(q)?;
    let p = field.p();
    let k = field.k();
    // GF(p)-basis of GF(q): powers of the primitive element.
    let theta = field.primitive_element();
    let mut basis = Vec::with_capacity(k);
    let mut t = 1u64;
    for _ in 0..k {
        basis.push(t);
        t = field.mul(t, theta);
    }
    let _ = p;

    match kind {
        MatrixKind::Sl | MatrixKind::Gl => {
            let mut gens = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for &c in &basis {
                        gens.push(elementary_transvection(field.clone(), n, i, j, c));
                    }
                }
            }
            if kind == MatrixKind::Gl && q > 2 {
                let mut d = FFMatrix::identity(field.clone(), n);
                d.set(0, 0, theta);
                gens.push(d);
            }
            Ok(MatrixGroup {
                field,
                n,
                generators: gens,
                kind,
            })
        }
        MatrixKind::Sp => {
            if n % 2 != 0 {
                return Err(Error::Unsupported("Sp needs even dimension".into()));
            }
            let vec_count = (q as u128).pow(n as u32);
            if vec_count > 4096 {
                return Err(Error::Unsupported(format!(
                    "Sp({n},{q}) transvection enumeration too large at desk scale"
                )));
            }
            let jf = MatrixGroup::standard_symplectic_form(field.clone(), n);
            let mut gens = Vec::new();
            for vi in 1..vec_count {
                let v = decode_vector(&field, n, vi);
                for &c in &basis {
                    gens.push(symplectic_transvection(&field, n, &jf, &v, c));
                }
            }
            Ok(MatrixGroup {
                field,
                n,
                generators: gens,
                kind,
            })
        }
        MatrixKind::User => Err(Error::Unsupported(
            "user matrix groups are built from explicit generators".into(),
        )),
    }
}

/// Symplectic transvection `x ↦ x + c·J(x,v)·v`.
fn symplectic_transvection(
    field: &FieldRef,
    n: usize,
    j_form: &FFMatrix,
    v: &[u64],
    c: u64,
) -> FFMatrix {
    let mut m = FFMatrix::identity(field.clone(), n);
    // row i of the result: e_i + c·J(e_i, v)·v
    for i in 0..n {
        // J(e_i, v) = (J vᵀ)_i
        let mut jv = 0u64;
        for t in 0..n {
            let jt = j_form.get(i, t);
            if jt != 0 && v[t] != 0 {
                jv = field.add(jv, field.mul(jt, v[t]));
            }
        }
        if jv == 0 {
            continue;
        }
        let coeff = field.mul(c, jv);
        for t in 0..n {
            if v[t] != 0 {
                let cur = m.get(i, t);
                m.set(i, t, field.add(cur, field.mul(coeff, v[t])));
            }
        }
    }
    m
}

pub fn decode_vector(field: &FieldRef, n: usize, index: u128) -> Vec<u64> {
    let q = field.q() as u128;
    let mut v = Vec::with_capacity(n);
    let mut x = index;
    for _ in 0..n {
        v.push((x % q) as u64);
        x /= q;
    }
    v
}

pub fn encode_vector(field: &FieldRef, v: &[u64]) -> u128 {
    let q = field.q() as u128;
    let mut x = 0u128;
    for &c in v.iter().rev() {
        x = x * q + c as u128;
    }
    x
}

// ---------------------------------------------------------------------------
// Matrix group actions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixTarget {
    /// All q^n vectors including zero; not transitive, fpr-only use.
    Vectors,
    ProjectivePoints,
    KSubspaces(usize),
    /// Minus-type quadratic forms polarizing the standard alternating form
    /// (even characteristic only).
    FormsMinus,
}

/// A realized matrix-group action: the labelled point set, plus the induced
/// permutation of any invertible matrix.
pub struct MatrixAction {
    pub field: FieldRef,
    pub n: usize,
    pub target: MatrixTarget,
    pub labels: Vec<String>,
    points: ActionPoints,
}

enum ActionPoints {
    Vectors,
    Projective {
        index_of: HashMap<u128, usize>,
        reps: Vec<Vec<u64>>,
    },
    Subspaces {
        index_of: HashMap<Vec<u64>, usize>,
        reps: Vec<Vec<Vec<u64>>>,
    },
    Forms {
        index_of: HashMap<Vec<u64>, usize>,
        tables: Vec<Vec<u64>>,
        vectors: Vec<Vec<u64>>,
    },
}

impl MatrixAction {
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    /// The permutation induced on the point set by an invertible matrix.
    pub fn permutation_of(&self, m: &FFMatrix) -> Result<Permutation> {
        if m.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        let f = &self.field;
        match &self.points {
            ActionPoints::Vectors => {
                let total = (f.q() as u128).pow(self.n as u32) as usize;
                let mut images = Vec::with_capacity(total);
                for vi in 0..total {
                    let v = decode_vector(f, self.n, vi as u128);
                    let w = m.apply_row(&v);
                    images.push(encode_vector(f, &w) as u32);
                }
                Permutation::from_images(images)
            }
            ActionPoints::Projective { index_of, reps } => {
                let mut images = Vec::with_capacity(reps.len());
                for v in reps {
                    let w = normalize_projective(f, &m.apply_row(v));
                    images.push(index_of[&encode_vector(f, &w)] as u32);
                }
                Permutation::from_images(images)
            }
            ActionPoints::Subspaces { index_of, reps } => {
                let mut images = Vec::with_capacity(reps.len());
                for basis in reps {
                    let mapped: Vec<Vec<u64>> = basis.iter().map(|v| m.apply_row(v)).collect();
                    let key = subspace_key(f, &mapped);
                    images.push(index_of[&key] as u32);
                }
                Permutation::from_images(images)
            }
            ActionPoints::Forms {
                index_of,
                tables,
                vectors,
            } => {
                let minv = m.inverse()?;
                let mut images = Vec::with_capacity(tables.len());
                for table in tables {
                    let mut new_table = vec![0u64; vectors.len()];
                    for (vi, v) in vectors.iter().enumerate() {
                        let pre = minv.apply_row(v);
                        let pi = encode_vector(f, &pre) as usize;
                        new_table[vi] = table[pi];
                    }
                    images.push(index_of[&new_table] as u32);
                }
                Permutation::from_images(images)
            }
        }
    }
}

fn normalize_projective(f: &FieldRef, v: &[u64]) -> Vec<u64> {
    let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
    if lead == 0 {
        return v.to_vec();
    }
    let inv = f.inv(lead).unwrap();
    v.iter().map(|&c| f.mul(c, inv)).collect()
}

/// Canonical key of a subspace: its reduced row echelon basis, flattened.
fn subspace_key(f: &FieldRef, basis: &[Vec<u64>]) -> Vec<u64> {
    let mut rows: Vec<Vec<u64>> = basis.to_vec();
    let nrows = rows.len();
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&i| rows[i][col] != 0);
        let Some(p) = pivot else { continue };
        rows.swap(p, rank);
        let inv = f.inv(rows[rank][col]).unwrap();
        for j in 0..ncols {
            rows[rank][j] = f.mul(rows[rank][j], inv);
        }
        for i in 0..nrows {
            if i != rank && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[rank][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().flatten().collect()
}

/// Realizes the permutation action of a matrix group on the chosen target,
/// returning the action data and the induced permutation group.
pub fn act_on(
    mg: &MatrixGroup,
    target: MatrixTarget,
    degree_cap: usize,
    seed: u64,
) -> Result<(MatrixAction, PermGroup)> {
    let f = mg.field.clone();
    let q = f.q();
    let n = mg.n;
    let require_transitive = !matches!(target, MatrixTarget::Vectors);
    let action = match &target {
        MatrixTarget::Vectors => {
            let total = (q as u128).pow(n as u32);
            if total > degree_cap as u128 {
                return Err(Error::CapExceeded {
                    what: "vectors action degree",
                    need: total,
                    cap: degree_cap as u128,
                });
            }
            let labels = (0..total)
                .map(|vi| vector_label(&f, &decode_vector(&f, n, vi)))
                .collect();
            MatrixAction {
                field: f.clone(),
                n,
                target,
                labels,
                points: ActionPoints::Vectors,
            }
        }
        MatrixTarget::ProjectivePoints => {
            let total = (q as u128).pow(n as u32);
            let mut reps = Vec::new();
            let mut index_of = HashMap::new();
            for vi in 1..total {
                let v = decode_vector(&f, n, vi);
                let w = normalize_projective(&f, &v);
                let key = encode_vector(&f, &w);
                if key == vi {
                    index_of.insert(key, reps.len());
                    reps.push(w);
                }
            }
            if reps.len() > degree_cap {
                return Err(Error::CapExceeded {
                    what: "projective action degree",
                    need: reps.len() as u128,
                    cap: degree_cap as u128,
                });
            }
            let labels = reps.iter().map(|v| format!("<{}>", vector_label(&f, v))).collect();
            MatrixAction {
                field: f.clone(),
                n,
                target,
                labels,
                points: ActionPoints::Projective { index_of, reps },
            }
        }
        MatrixTarget::KSubspaces(k) => {
            let k = *k;
            if k == 0 || k >= n {
                return Err(Error::Unsupported(format!(
                    "subspace dimension {k} outside 1..{n}"
                )));
            }
            // Orbit of the standard subspace under the generators; the
            // realized action must be transitive, and for GL/SL the orbit is
            // everything, with size the Gaussian binomial.
            let std_basis: Vec<Vec<u64>> = (0..k)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect();
            let start = subspace_key(&f, &std_basis);
            let mut index_of = HashMap::new();
            let mut reps: Vec<Vec<Vec<u64>>> = Vec::new();
            index_of.insert(start.clone(), 0);
            reps.push(unflatten(&start, n));
            let mut qi = 0;
            while qi < reps.len() {
                let basis = reps[qi].clone();
                qi += 1;
                for g in &mg.generators {
                    let mapped: Vec<Vec<u64>> = basis.iter().map(|v| g.apply_row(v)).collect();
                    let key = subspace_key(&f, &mapped);
                    if !index_of.contains_key(&key) {
                        if reps.len() >= degree_cap {
                            return Err(Error::CapExceeded {
                                what: "subspace action degree",
                                need: (reps.len() + 1) as u128,
                                cap: degree_cap as u128,
                            });
                        }
                        index_of.insert(key.clone(), reps.len());
                        reps.push(unflatten(&key, n));
                    }
                }
            }
            let expect = gaussian_binomial(q, n, k);
            if reps.len() as u128 != expect {
                return Err(Error::NotTransitive);
            }
            let labels = reps
                .iter()
                .map(|b| {
                    let rows: Vec<String> = b.iter().map(|v| vector_label(&f, v)).collect();
                    format!("[{}]", rows.join(";"))
                })
                .collect();
            MatrixAction {
                field: f.clone(),
                n,
                target,
                labels,
                points: ActionPoints::Subspaces { index_of, reps },
            }
        }
        MatrixTarget::FormsMinus => {
            if f.p() != 2 {
                return Err(Error::Unsupported(
                    "minus-type form action implemented for even characteristic".into(),
                ));
            }
            if n % 2 != 0 {
                return Err(Error::Unsupported("quadratic form action needs even dimension".into()));
            }
            let total = (q as u128).pow(n as u32);
            if total > 4096 {
                return Err(Error::CapExceeded {
                    what: "form action vector count",
                    need: total,
                    cap: 4096,
                });
            }
            let vectors: Vec<Vec<u64>> = (0..total).map(|vi| decode_vector(&f, n, vi)).collect();
            // Base plus-type form Q0(x) = Σ x_i x_{m+i}; every quadratic form
            // with the same polar form is Q0 + ℓ(x)^2 for a linear ℓ, and in
            // characteristic 2 squaring is bijective, so the q^n functionals
            // sweep out all of them.
            let m = n / 2;
            let q0 = |v: &[u64]| {
                let mut acc = 0u64;
                for i in 0..m {
                    acc = f.add(acc, f.mul(v[i], v[m + i]));
                }
                acc
            };
            let mut tables = Vec::new();
            let mut index_of = HashMap::new();
            let minus_count = minus_type_zero_count(q, n);
            for li in 0..total {
                let l = decode_vector(&f, n, li);
                let table: Vec<u64> = vectors
                    .iter()
                    .map(|v| {
                        let mut dot = 0u64;
                        for (a, b) in l.iter().zip(v) {
                            dot = f.add(dot, f.mul(*a, *b));
                        }
                        f.add(q0(v), f.mul(dot, dot))
                    })
                    .collect();
                let zeros = table.iter().filter(|&&x| x == 0).count() as u128;
                if zeros == minus_count {
                    index_of.insert(table.clone(), tables.len());
                    tables.push(table);
                }
            }
            let labels = (0..tables.len()).map(|i| format!("Q{i}")).collect();
            MatrixAction {
                field: f.clone(),
                n,
                target,
                labels,
                points: ActionPoints::Forms {
                    index_of,
                    tables,
                    vectors,
                },
            }
        }
    };

    let mut perm_gens = Vec::with_capacity(mg.generators.len());
    for g in &mg.generators {
        perm_gens.push(action.permutation_of(g)?);
    }
    let group = PermGroup::with_seed(action.degree(), perm_gens, seed)?;
    let group = shrink_generating_set(group, seed);
    if require_transitive && !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok((action, group))
}

/// Replaces a large generating set by a small seeded-random one generating
/// the same group (verified by order), keeping downstream closures cheap.
fn shrink_generating_set(g: PermGroup, seed: u64) -> PermGroup {
    use rand::SeedableRng;
    if g.generators().len() <= 4 {
        return g;
    }
    let target = g.order();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5712_ab3c);
    let mut picks: Vec<Permutation> = Vec::new();
    for _ in 0..12 {
        picks.push(g.random_element(&mut rng));
        if picks.len() >= 2 {
            let h = PermGroup::new(g.degree(), picks.clone()).unwrap();
            if h.order() == target {
                return h;
            }
        }
    }
    g
}

fn unflatten(key: &[u64], n: usize) -> Vec<Vec<u64>> {
    key.chunks(n).map(|c| c.to_vec()).collect()
}

fn vector_label(f: &FieldRef, v: &[u64]) -> String {
    let _ = f;
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Number of zeros (including 0) of a non-degenerate minus-type quadratic
/// form on a 2m-dimensional space over GF(q).
fn minus_type_zero_count(q: u64, n: usize) -> u128 {
    let m = (n / 2) as u32;
    let q = q as u128;
    q.pow(2 * m - 1) - q.pow(m) + q.pow(m - 1)
}

pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// |GL(n,q)| = Π_{i=0}^{n-1} (q^n − q^i)
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

pub fn sl_order(n: usize, q: u64) -> u128 {
    gl_order(n, q) / (q as u128 - 1)
}

pub fn pgl_order(n: usize, q: u64) -> u128 {
    gl_order(n, q) / (q as u128 - 1)
}

pub fn psl_order(n: usize, q: u64) -> u128 {
    let d = gcd_u128(n as u128, q as u128 - 1);
    sl_order(n, q) / d
}

/// |Sp(2m,q)| = q^{m²} Π_{i=1}^{m} (q^{2i} − 1)
pub fn sp_order(n: usize, q: u64) -> u128 {
    assert!(n % 2 == 0);
    let m = n / 2;
    let q = q as u128;
    let mut o = q.pow((m * m) as u32);
    for i in 1..=m {
        o *= q.pow(2 * i as u32) - 1;
    }
    o
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Gf;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rank_and_kernel() {
        let f = Gf::of_order(2).unwrap();
        let id = FFMatrix::identity(f.clone(), 3);
        assert_eq!(id.rank(), 3);
        let f3 = Gf::of_order(3).unwrap();
        // diag(1,−1) − I = diag(0, −2) = diag(0, 1): kernel dim 1.
        let d = FFMatrix::diag_int(f3.clone(), &[1, -1]);
        let diff = d.sub_matrix(&FFMatrix::identity(f3, 2));
        assert_eq!(diff.kernel_dim(1), 1);
    }

    #[test]
    fn inverse_of_random_invertibles() {
        let f = Gf::of_order(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 100 {
            let mut m = FFMatrix::zero(f.clone(), 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, rng.gen_range(0..5));
                }
            }
            if m.det() == 0 {
                continue;
            }
            let mi = m.inverse().unwrap();
            assert!(mi.mul(&m).is_identity());
            done += 1;
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of x^2 + 1 over GF(3): charpoly = x^2 + 1.
        let f = Gf::of_order(3).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![0, 1], vec![2, 0]]);
        assert_eq!(m.charpoly(), vec![1, 0, 1]);
    }

    #[test]
    fn nu_examples() {
        let f = Gf::of_order(3).unwrap();
        let id = FFMatrix::identity(f.clone(), 3);
        assert_eq!(nu(&id).unwrap(), 0);
        let refl = FFMatrix::diag_int(f.clone(), &[-1, 1, 1]);
        assert_eq!(nu(&refl).unwrap(), 1);
    }

    #[test]
    fn nu_of_irreducible_element_is_n_minus_1() {
        // Companion of an irreducible cubic over GF(2): all eigenspaces over
        // the splitting field are lines, so nu = n − 1.
        let f = Gf::of_order(2).unwrap();
        // x^3 + x + 1 companion
        let m = FFMatrix::from_rows(
            f,
            &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]],
        );
        let cp = m.charpoly();
        assert_eq!(cp, vec![1, 0, 1, 1]);
        assert_eq!(nu(&m).unwrap(), 2);
    }

    #[test]
    fn nu_invariant_under_scaling() {
        let f = Gf::of_order(5).unwrap();
        let m = FFMatrix::from_rows(f.clone(), &[vec![1, 2], vec![0, 3]]);
        for lambda in 1..5 {
            assert_eq!(nu(&m.scale(lambda)).unwrap(), nu(&m).unwrap());
        }
    }

    #[test]
    fn classical_orders() {
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(sl_order(2, 23), 12144);
        assert_eq!(psl_order(2, 23), 6072);
        assert_eq!(sp_order(6, 2), 1_451_520);
        assert_eq!(pgl_order(3, 3), 5616);
    }

    #[test]
    fn gl23_realized_order() {
        let mg = build_classical(MatrixKind::Gl, 2, 3).unwrap();
        let (_, g) = act_on(&mg, MatrixTarget::Vectors, 1000, 7).unwrap();
        assert_eq!(g.order(), BigUint::from(48u32));
    }

    #[test]
    fn sp_generators_preserve_form() {
        let mg = build_classical(MatrixKind::Sp, 4, 3).unwrap();
        let j = MatrixGroup::standard_symplectic_form(mg.field.clone(), 4);
        for g in &mg.generators {
            let gjgt = g.mul(&j).mul(&g.transpose());
            assert_eq!(gjgt, j);
        }
    }

    #[test]
    fn projective_degrees() {
        let mg = build_classical(MatrixKind::Gl, 3, 3).unwrap();
        let (act, g) = act_on(&mg, MatrixTarget::ProjectivePoints, 1000, 7).unwrap();
        assert_eq!(act.degree(), 13);
        assert_eq!(g.order(), BigUint::from(5616u32));
        assert!(g.is_transitive());
    }

    #[test]
    fn subspace_degree_matches_gaussian_binomial() {
        let mg = build_classical(MatrixKind::Gl, 4, 2).unwrap();
        let (act, _) = act_on(&mg, MatrixTarget::KSubspaces(2), 1000, 7).unwrap();
        assert_eq!(act.degree() as u128, gaussian_binomial(2, 4, 2));
        assert_eq!(act.degree(), 35);
    }

    #[test]
    fn gl23_fixed_vectors_of_reflection() {
        let mg = build_classical(MatrixKind::Gl, 2, 3).unwrap();
        let (act, g) = act_on(&mg, MatrixTarget::Vectors, 1000, 7).unwrap();
        let d = FFMatrix::diag_int(mg.field.clone(), &[1, -1]);
        let perm = act.permutation_of(&d).unwrap();
        assert!(g.contains(&perm).unwrap());
        assert_eq!(perm.fix_count(), 3);
    }
}
