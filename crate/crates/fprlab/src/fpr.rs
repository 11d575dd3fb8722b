//! Exact fixed point ratios and the classical invariants built from them:
//! minimal degree, fixity, involution fixity, derangement detection, and the
//! 4/(3q) bound check for actions of Lie-type groups.
//!
//! Every ratio is an exact `BigRational`. Fix counts are taken on class
//! representatives only; constancy across each class is a separate property
//! check, not an assumption baked into tests.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classes::{fusion_count, ClassTable};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::matrix::FFMatrix;
use crate::perm::Permutation;

pub fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// |fixed points| / |Ω| for a permutation acting on its own domain.
pub fn fpr_direct(x: &Permutation) -> BigRational {
    ratio(x.fix_count() as u128, x.degree() as u128)
}

/// Fixed point ratio through class fusion: |x^G ∩ H| / |x^G|, equal to the
/// direct ratio on the (always transitive) action of `g` on cosets of `h`.
pub fn fpr_fusion(
    g: &PermGroup,
    h: &PermGroup,
    class_elements: &[Permutation],
    enumeration_cap: usize,
) -> Result<BigRational> {
    let fused = fusion_count(g, h, class_elements, enumeration_cap)?;
    Ok(ratio(fused, class_elements.len() as u128))
}

/// Fixed point ratio of an invertible matrix on the full vector space:
/// q^(d−n) where d is the fixed-space dimension.
pub fn fpr_vectors(x: &FFMatrix) -> Result<BigRational> {
    if x.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    let n = x.n;
    let id = FFMatrix::identity(x.field.clone(), n);
    let d = x.sub_matrix(&id).kernel_dim(1);
    let q = BigInt::from(x.field.q());
    Ok(BigRational::new(BigInt::one(), q.pow((n - d) as u32)))
}

#[derive(Debug, Clone)]
pub struct FprRow {
    pub rep: Permutation,
    pub order: u64,
    pub size: u128,
    pub fix: usize,
    pub fpr: BigRational,
}

#[derive(Debug, Clone)]
pub struct FprReport {
    pub action: String,
    pub degree: usize,
    pub group_order: u128,
    /// One row per class, in class-table order (identity first).
    pub rows: Vec<FprRow>,
    /// Maximum fpr over non-identity classes.
    pub max_fpr: BigRational,
    /// Minimum fpr over non-identity classes.
    pub min_fpr: BigRational,
    /// Minimal degree: least number of moved points of a non-identity element.
    pub mu: usize,
    /// Largest number of fixed points of a non-identity element, `n − mu`.
    pub fixity: usize,
    /// Involution fixity; `None` when the group has no involutions.
    pub involution_fixity: Option<usize>,
    /// Index of a derangement class, if any.
    pub derangement_witness: Option<usize>,
}

/// Builds the per-class fpr table for a transitive (or vectors-mode) action
/// whose class table is already known. The group must be non-trivial.
pub fn fpr_report(action: &str, degree: usize, table: &ClassTable) -> Result<FprReport> {
    let rows: Vec<FprRow> = table
        .classes
        .iter()
        .map(|c| FprRow {
            rep: c.rep.clone(),
            order: c.order,
            size: c.size,
            fix: c.rep.fix_count(),
            fpr: ratio(c.rep.fix_count() as u128, degree as u128),
        })
        .collect();
    let non_id: Vec<&FprRow> = rows.iter().filter(|r| r.order > 1).collect();
    if non_id.is_empty() {
        return Err(Error::Unsupported(
            "fpr report needs a non-trivial group".into(),
        ));
    }
    let max_fpr = non_id.iter().map(|r| r.fpr.clone()).max().unwrap();
    let min_fpr = non_id.iter().map(|r| r.fpr.clone()).min().unwrap();
    let max_fix = non_id.iter().map(|r| r.fix).max().unwrap();
    let mu = degree - max_fix;
    let involution_fixity = non_id
        .iter()
        .filter(|r| r.order == 2)
        .map(|r| r.fix)
        .max();
    let derangement_witness = rows
        .iter()
        .position(|r| r.order > 1 && r.fix == 0);
    Ok(FprReport {
        action: action.to_string(),
        degree,
        group_order: table.group_order,
        rows,
        max_fpr,
        min_fpr,
        mu,
        fixity: max_fix,
        involution_fixity,
        derangement_witness,
    })
}

impl FprReport {
    pub fn has_derangement(&self) -> bool {
        self.derangement_witness.is_some()
    }

    /// fpr of the (unique here) class with the given element order.
    pub fn fpr_of_order(&self, order: u64) -> Option<BigRational> {
        self.rows
            .iter()
            .find(|r| r.order == order)
            .map(|r| r.fpr.clone())
    }
}

#[derive(Debug, Clone)]
pub struct Bound43q {
    pub q: u64,
    pub bound: BigRational,
    pub max_fpr: BigRational,
    pub pass: bool,
    /// Rows (class indices) exceeding the bound.
    pub witnesses: Vec<usize>,
}

/// Checks `max fpr ≤ 4/(3q)` over non-identity classes, reporting violating
/// classes; callers list the known exceptional actions themselves.
pub fn check_43q(report: &FprReport, q: u64) -> Bound43q {
    let bound = ratio(4, 3 * q as u128);
    let witnesses: Vec<usize> = report
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.order > 1 && r.fpr > bound)
        .map(|(i, _)| i)
        .collect();
    Bound43q {
        q,
        bound: bound.clone(),
        max_fpr: report.max_fpr.clone(),
        pass: witnesses.is_empty(),
        witnesses,
    }
}

/// Exact Burnside average: number of orbits of `⟨g⟩` equals
/// `(n/d)·Σ_{x∈⟨g⟩} fpr(x)`, i.e. `Σ fix(g^j) / d`.
pub fn orbit_count_identity_holds(g_elem: &Permutation) -> bool {
    let d = match g_elem.element_order() {
        Ok(d) => d,
        Err(_) => return false,
    };
    let mut fix_sum: u128 = 0;
    let mut p = Permutation::identity(g_elem.degree());
    for _ in 0..d {
        fix_sum += p.fix_count() as u128;
        p = p.compose_unchecked(g_elem);
    }
    fix_sum % d as u128 == 0 && (fix_sum / d as u128) == g_elem.cycle_count() as u128
}

pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// 15-digit decimal rendering for optional floating output.
pub fn rational_approx(r: &BigRational) -> String {
    let num = r.numer().clone();
    let den = r.denom().clone();
    let scale = BigInt::from(10u64).pow(15);
    let scaled = num * scale / den;
    let s = scaled.to_string();
    let neg = s.starts_with('-');
    let digits = if neg { &s[1..] } else { &s[..] };
    let padded = format!("{digits:0>16}");
    let (int_part, frac_part) = padded.split_at(padded.len() - 15);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

pub fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(
        BigInt::from_biguint(num_bigint::Sign::Plus, num),
        BigInt::from_biguint(num_bigint::Sign::Plus, den),
    )
}

pub fn zero_ratio() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{realize_perm, PermTarget};
    use crate::classes::{class_of, class_table};
    use crate::group::{alt, sym};
    use crate::matrix::{build_classical, MatrixKind};

    #[test]
    fn sym5_on_2sets_three_cycle() {
        let s5 = sym(5);
        let (act, _) = realize_perm(&s5, &PermTarget::KSets(2), 10_000, 1).unwrap();
        let x = Permutation::from_cycles_str("(1,2,3)", 5).unwrap();
        let ix = act.induce(&x).unwrap();
        assert_eq!(fpr_direct(&ix), ratio(1, 10));
    }

    #[test]
    fn identity_has_fpr_one() {
        let id = Permutation::identity(17);
        assert_eq!(fpr_direct(&id), ratio(1, 1));
    }

    #[test]
    fn fusion_route_matches_direct_route() {
        // Sym(5) on 2-sets: 3-cycle class, fpr = 1/10 both ways.
        let s5 = sym(5);
        let x = Permutation::from_cycles_str("(1,2,3)", 5).unwrap();
        let (_, elems) = class_of(&s5, &x, 10_000).unwrap();
        let h_gens = vec![
            Permutation::from_cycles_str("(4,5)", 5).unwrap(),
            Permutation::from_cycles_str("(1,2)", 5).unwrap(),
            Permutation::from_cycles_str("(1,2,3)", 5).unwrap(),
        ];
        let h = PermGroup::new(5, h_gens).unwrap();
        let f = fpr_fusion(&s5, &h, &elems, 100_000).unwrap();
        assert_eq!(f, ratio(1, 10));
    }

    #[test]
    fn vectors_formula() {
        let mg = build_classical(MatrixKind::Gl, 2, 3).unwrap();
        let d = FFMatrix::diag_int(mg.field.clone(), &[1, -1]);
        assert_eq!(fpr_vectors(&d).unwrap(), ratio(1, 3));
        let id = FFMatrix::identity(mg.field.clone(), 2);
        assert_eq!(fpr_vectors(&id).unwrap(), ratio(1, 1));
    }

    #[test]
    fn minimal_degree_of_sym_and_alt() {
        for n in 4..=7usize {
            let table = class_table(&sym(n), 100_000).unwrap();
            let rep = fpr_report("sym natural", n, &table).unwrap();
            assert_eq!(rep.mu, 2, "mu(Sym({n}))");
            let table = class_table(&alt(n), 100_000).unwrap();
            let rep = fpr_report("alt natural", n, &table).unwrap();
            assert_eq!(rep.mu, 3, "mu(Alt({n}))");
        }
    }

    #[test]
    fn derangements_in_natural_sym() {
        let table = class_table(&sym(5), 10_000).unwrap();
        let rep = fpr_report("sym:5", 5, &table).unwrap();
        assert!(rep.has_derangement());
    }

    #[test]
    fn burnside_identity_samples() {
        for s in ["(1,2,3,4,5)", "(1,2)(3,4)", "(1,2,3)"] {
            let p = Permutation::from_cycles_str(s, 5).unwrap();
            assert!(orbit_count_identity_holds(&p));
        }
        assert!(orbit_count_identity_holds(&Permutation::identity(5)));
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_str(&ratio(4, 7)), "4/7");
        assert_eq!(rational_str(&ratio(3, 1)), "3");
        assert_eq!(rational_approx(&ratio(1, 3)), "0.333333333333333");
    }
}
