//! Permutation index, the genus of product-one generating tuples, minimal
//! index tables, and the genus screen that refutes or realizes candidate
//! branching signatures for a transitive action.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::classes::{class_of, ClassTable};
use crate::error::{Error, Result};
use crate::group::{generated_order, PermGroup};
use crate::perm::Permutation;

/// Index of a permutation: degree minus number of cycles (fixed points count
/// as cycles); the least number of transpositions with product the element.
pub fn ind(p: &Permutation) -> usize {
    p.degree() - p.cycle_count()
}

/// Genus of a product-one generating tuple for a transitive group, from
/// `Σ ind(g_i) = 2(n + genus − 1)`.
pub fn genus_of(tuple: &[Permutation], g: &PermGroup) -> Result<i64> {
    if tuple.is_empty() {
        return Err(Error::ProductNotOne);
    }
    let n = g.degree();
    let mut prod = Permutation::identity(n);
    for t in tuple {
        if t.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: t.degree(),
            });
        }
        prod = prod.compose_unchecked(t);
    }
    if !prod.is_identity() {
        return Err(Error::ProductNotOne);
    }
    if !g.is_transitive() {
        return Err(Error::IntransitiveTuple);
    }
    if generated_order(n, tuple, 1) != g.order() {
        return Err(Error::NotGenerating);
    }
    let sum: usize = tuple.iter().map(ind).sum();
    debug_assert!(sum % 2 == 0, "index sum of a product-one tuple is even");
    let genus = sum as i64 / 2 - n as i64 + 1;
    if genus < 0 {
        return Err(Error::NegativeGenus);
    }
    Ok(genus)
}

/// Smallest and largest index per element order present in the group.
pub fn index_tables(table: &ClassTable, degree: usize) -> (BTreeMap<u64, usize>, BTreeMap<u64, usize>) {
    let _ = degree;
    let mut min_ind: BTreeMap<u64, usize> = BTreeMap::new();
    let mut max_ind: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &table.classes {
        if c.order == 1 {
            continue;
        }
        let i = ind(&c.rep);
        min_ind
            .entry(c.order)
            .and_modify(|m| *m = (*m).min(i))
            .or_insert(i);
        max_ind
            .entry(c.order)
            .and_modify(|m| *m = (*m).max(i))
            .or_insert(i);
    }
    (min_ind, max_ind)
}

pub fn min_index_table(table: &ClassTable, degree: usize) -> BTreeMap<u64, usize> {
    index_tables(table, degree).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigStatus {
    /// Index minima alone cannot reach the target sum.
    RefutedByIndex,
    /// Fails Σ (d_i − 1)/d_i ≥ 85/42 (applied only under the caller's
    /// insolubility assertion).
    RefutedByRatio,
    /// Witness tuple found (orders match the signature, product one,
    /// generates, exact index sum).
    Realized(Vec<Permutation>),
    /// Exhaustive witness search completed without a witness.
    Unrealized,
    /// Witness search hit the node budget.
    Undecided,
}

#[derive(Debug, Clone)]
pub struct GenusScreen {
    pub degree: usize,
    pub genus: i64,
    pub target_sum: usize,
    pub min_ind: BTreeMap<u64, usize>,
    pub max_ind: BTreeMap<u64, usize>,
    /// Signature (non-decreasing order multiset) and its status.
    pub signatures: Vec<(Vec<u64>, SigStatus)>,
}

impl GenusScreen {
    /// Signatures not refuted: realized or undecided.
    pub fn survivors(&self) -> Vec<&(Vec<u64>, SigStatus)> {
        self.signatures
            .iter()
            .filter(|(_, st)| matches!(st, SigStatus::Realized(_) | SigStatus::Undecided))
            .collect()
    }
}

/// Enumerates candidate signatures within the index budget and classifies
/// each: refuted by the index table, refuted by the 85/42 inequality (only
/// when `insoluble_filter` is set, per its hypothesis), realized with a
/// verified witness, or exhausted/undecided.
#[allow(clippy::too_many_arguments)]
pub fn genus_screen(
    g: &PermGroup,
    table: &ClassTable,
    genus: i64,
    insoluble_filter: bool,
    k_max: usize,
    class_size_cap: usize,
    budget: u64,
) -> Result<GenusScreen> {
    let n = g.degree();
    let target = 2 * (n as i64 + genus - 1);
    if target < 0 {
        return Err(Error::NegativeGenus);
    }
    let target = target as usize;
    let (min_ind, max_ind) = index_tables(table, n);
    let orders: Vec<u64> = min_ind.keys().cloned().collect();

    // Enumerate non-decreasing signatures with Σ min_ind ≤ target, k ≥ 2.
    let mut sigs: Vec<Vec<u64>> = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    enumerate_sigs(&orders, &min_ind, target, k_max, 0, 0, &mut cur, &mut sigs);

    let ratio_8542 = BigRational::new(BigInt::from(85), BigInt::from(42));
    let mut out = Vec::new();
    for sig in sigs {
        let min_sum: usize = sig.iter().map(|d| min_ind[d]).sum();
        debug_assert!(min_sum <= target);
        let max_sum: usize = sig.iter().map(|d| max_ind[d]).sum();
        if max_sum < target {
            out.push((sig, SigStatus::RefutedByIndex));
            continue;
        }
        if insoluble_filter {
            let mut s = BigRational::new(BigInt::from(0), BigInt::from(1));
            for &d in &sig {
                s += BigRational::new(BigInt::from(d as i64 - 1), BigInt::from(d as i64));
            }
            if s < ratio_8542 {
                out.push((sig, SigStatus::RefutedByRatio));
                continue;
            }
        }
        let status = search_witness(g, table, &sig, target, class_size_cap, budget)?;
        out.push((sig, status));
    }

    Ok(GenusScreen {
        degree: n,
        genus,
        target_sum: target,
        min_ind,
        max_ind,
        signatures: out,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_sigs(
    orders: &[u64],
    min_ind: &BTreeMap<u64, usize>,
    target: usize,
    k_max: usize,
    start: usize,
    sum: usize,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if cur.len() >= 2 {
        out.push(cur.clone());
    }
    if cur.len() == k_max {
        return;
    }
    for (i, &d) in orders.iter().enumerate().skip(start) {
        let s = sum + min_ind[&d];
        if s > target {
            continue;
        }
        cur.push(d);
        enumerate_sigs(orders, min_ind, target, k_max, i, s, cur, out);
        cur.pop();
    }
}

/// Backtracking witness search: position 1 ranges over class representatives
/// of the right order (the whole tuple may be conjugated), later positions
/// over full classes, the last element forced as the inverse of the running
/// product and checked for order, exact index sum, generation, transitivity.
fn search_witness(
    g: &PermGroup,
    table: &ClassTable,
    sig: &[u64],
    target: usize,
    class_size_cap: usize,
    budget: u64,
) -> Result<SigStatus> {
    let k = sig.len();
    let n = g.degree();
    // Remaining index bounds per position for pruning.
    let mut classes_by_order: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, c) in table.classes.iter().enumerate() {
        classes_by_order.entry(c.order).or_default().push(i);
    }
    for &d in sig {
        if !classes_by_order.contains_key(&d) {
            return Ok(SigStatus::Unrealized);
        }
    }

    // Element lists: reps for position 0; full classes for positions 1..k−1.
    let mut full_classes: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for &d in &sig[1..k.saturating_sub(1)] {
        for &ci in &classes_by_order[&d] {
            if !full_classes.contains_key(&ci) {
                let (_, elems) = class_of(g, &table.classes[ci].rep, class_size_cap)?;
                full_classes.insert(ci, elems);
            }
        }
    }

    let min_tail: Vec<usize> = {
        // min_tail[i] = Σ_{j ≥ i} min ind achievable for order sig[j]
        let (min_ind, _) = index_tables(table, n);
        let mut v = vec![0usize; k + 1];
        for i in (0..k).rev() {
            v[i] = v[i + 1] + min_ind[&sig[i]];
        }
        v
    };
    let max_tail: Vec<usize> = {
        let (_, max_ind) = index_tables(table, n);
        let mut v = vec![0usize; k + 1];
        for i in (0..k).rev() {
            v[i] = v[i + 1] + max_ind[&sig[i]];
        }
        v
    };

    let mut nodes = 0u64;
    let mut tuple: Vec<Permutation> = Vec::with_capacity(k);
    let found = witness_dfs(
        g,
        table,
        sig,
        target,
        &classes_by_order,
        &full_classes,
        &min_tail,
        &max_tail,
        &mut tuple,
        &Permutation::identity(n),
        0,
        0,
        &mut nodes,
        budget,
    )?;
    match found {
        Some(t) => Ok(SigStatus::Realized(t)),
        None if nodes > budget => Ok(SigStatus::Undecided),
        None => Ok(SigStatus::Unrealized),
    }
}

#[allow(clippy::too_many_arguments)]
fn witness_dfs(
    g: &PermGroup,
    table: &ClassTable,
    sig: &[u64],
    target: usize,
    classes_by_order: &BTreeMap<u64, Vec<usize>>,
    full_classes: &BTreeMap<usize, Vec<Permutation>>,
    min_tail: &[usize],
    max_tail: &[usize],
    tuple: &mut Vec<Permutation>,
    prod: &Permutation,
    pos: usize,
    ind_sum: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<Permutation>>> {
    let k = sig.len();
    if pos == k - 1 {
        // Last element forced.
        *nodes += 1;
        if *nodes > budget {
            return Ok(None);
        }
        let last = prod.inverse();
        if last.element_order()? != sig[pos] {
            return Ok(None);
        }
        let total = ind_sum + ind(&last);
        if total != target {
            return Ok(None);
        }
        tuple.push(last);
        let ok = genus_of(tuple, g).is_ok_and(|ge| 2 * (g.degree() as i64 + ge - 1) == target as i64);
        if ok {
            let t = tuple.clone();
            tuple.pop();
            return Ok(Some(t));
        }
        tuple.pop();
        return Ok(None);
    }

    let candidates: Vec<&Permutation> = if pos == 0 {
        classes_by_order[&sig[0]]
            .iter()
            .map(|&ci| &table.classes[ci].rep)
            .collect()
    } else {
        classes_by_order[&sig[pos]]
            .iter()
            .flat_map(|ci| full_classes[ci].iter())
            .collect()
    };
    for cand in candidates {
        *nodes += 1;
        if *nodes > budget {
            return Ok(None);
        }
        let s = ind_sum + ind(cand);
        // Prune by reachable index range.
        if s + min_tail[pos + 1] > target || s + max_tail[pos + 1] < target {
            continue;
        }
        tuple.push(cand.clone());
        let next_prod = prod.compose_unchecked(cand);
        let found = witness_dfs(
            g,
            table,
            sig,
            target,
            classes_by_order,
            full_classes,
            min_tail,
            max_tail,
            tuple,
            &next_prod,
            pos + 1,
            s,
            nodes,
            budget,
        )?;
        tuple.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_table;
    use crate::group::{cyclic, sym};

    #[test]
    fn ind_examples() {
        let t = Permutation::from_cycles_str("(1,2)", 5).unwrap();
        assert_eq!(ind(&t), 1);
        let c = Permutation::from_cycles_str("(1,2,3,4,5,6,7)", 7).unwrap();
        assert_eq!(ind(&c), 6);
    }

    #[test]
    fn cyclic_regular_tuple_has_genus_zero() {
        let c6 = cyclic(6);
        let gen = c6.generators()[0].clone();
        let tuple = vec![gen.clone(), gen.inverse()];
        assert_eq!(genus_of(&tuple, &c6).unwrap(), 0);
    }

    #[test]
    fn sym_natural_tuple_has_genus_zero() {
        for n in 4..=7usize {
            let sn = sym(n);
            let t = Permutation::from_cycles_str("(1,2)", n).unwrap();
            let cyc: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let c = Permutation::from_cycles_str(&format!("({})", cyc.join(",")), n).unwrap();
            let third = t.compose(&c).unwrap().inverse();
            let tuple = vec![t, c, third.clone()];
            assert_eq!(genus_of(&tuple, &sn).unwrap(), 0, "Sym({n})");
            assert_eq!(ind(&third), n - 2);
        }
    }

    #[test]
    fn product_one_enforced() {
        let s5 = sym(5);
        let t = Permutation::from_cycles_str("(1,2)", 5).unwrap();
        let c = Permutation::from_cycles_str("(1,2,3,4,5)", 5).unwrap();
        assert!(matches!(
            genus_of(&[t, c], &s5),
            Err(Error::ProductNotOne)
        ));
    }

    #[test]
    fn intransitive_tuple_rejected() {
        let g = PermGroup::new(
            4,
            vec![Permutation::from_cycles_str("(1,2)(3,4)", 4).unwrap()],
        )
        .unwrap();
        let x = g.generators()[0].clone();
        assert!(matches!(
            genus_of(&[x.clone(), x], &g),
            Err(Error::IntransitiveTuple)
        ));
    }

    #[test]
    fn min_index_of_sym_natural() {
        let s5 = sym(5);
        let table = class_table(&s5, 10_000).unwrap();
        let mt = min_index_table(&table, 5);
        assert_eq!(mt[&2], 1);
        assert_eq!(mt[&3], 2);
        assert_eq!(mt[&5], 4);
        assert_eq!(mt[&6], 3);
    }

    #[test]
    fn regular_action_index() {
        // In the regular action of C_6, an order-d element has all cycles of
        // length d: ind = |G|(1 − 1/d).
        let c6 = cyclic(6);
        let (_, reg) = crate::action::realize_perm(
            &c6,
            &crate::action::PermTarget::Regular,
            100,
            1,
        )
        .unwrap();
        let table = class_table(&reg, 100).unwrap();
        let mt = min_index_table(&table, 6);
        assert_eq!(mt[&2], 3);
        assert_eq!(mt[&3], 4);
        assert_eq!(mt[&6], 5);
    }

    #[test]
    fn screen_realizes_sym5_signature() {
        let s5 = sym(5);
        let table = class_table(&s5, 10_000).unwrap();
        let screen = genus_screen(&s5, &table, 0, false, 8, 100_000, 2_000_000).unwrap();
        let realized: Vec<&Vec<u64>> = screen
            .signatures
            .iter()
            .filter(|(_, st)| matches!(st, SigStatus::Realized(_)))
            .map(|(sig, _)| sig)
            .collect();
        assert!(realized.contains(&&vec![2, 4, 5]), "realized: {realized:?}");
        // Verify every realized witness.
        for (sig, st) in &screen.signatures {
            if let SigStatus::Realized(t) = st {
                assert_eq!(genus_of(t, &s5).unwrap(), 0);
                let mut orders: Vec<u64> =
                    t.iter().map(|p| p.element_order().unwrap()).collect();
                orders.sort_unstable();
                assert_eq!(&orders, sig);
            }
        }
    }

    #[test]
    fn screen_realizes_cyclic_signature() {
        let c6 = cyclic(6);
        let (_, reg) = crate::action::realize_perm(
            &c6,
            &crate::action::PermTarget::Regular,
            100,
            1,
        )
        .unwrap();
        let table = class_table(&reg, 100).unwrap();
        let screen = genus_screen(&reg, &table, 0, false, 8, 1000, 1_000_000).unwrap();
        let realized: Vec<&Vec<u64>> = screen
            .signatures
            .iter()
            .filter(|(_, st)| matches!(st, SigStatus::Realized(_)))
            .map(|(sig, _)| sig)
            .collect();
        assert!(realized.contains(&&vec![6, 6]));
    }
}
