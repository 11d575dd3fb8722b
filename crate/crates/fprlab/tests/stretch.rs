//! Regression values beyond the acceptance gate: the full four-row index
//! table of the 24-point projective group over GF(23), and the spread gap of
//! the degree-6 symmetric group.
//!
//! The order-22 dihedral row is frozen from this crate's exact computation,
//! cross-checked by hand: an involution lies in 12 conjugates of the
//! subgroup (11·276/253), and since the subgroup has no elements of order 4
//! or 6, the cycle structures of those elements are forced, giving indices
//! 204 and 228.

use std::collections::BTreeMap;

use fprlab::action::{realize_perm, PermTarget};
use fprlab::classes::class_table;
use fprlab::config::RunConfig;
use fprlab::genspread::spread_exact;
use fprlab::genus::min_index_table;
use fprlab::group::{maximal_overgroups, sym, PermGroup};
use fprlab::parse::realize_spec_text;

fn ind_row(g: &PermGroup, h: &PermGroup) -> (usize, BTreeMap<u64, usize>) {
    let (_, induced) = realize_perm(
        g,
        &PermTarget::CosetsOf(h.generators().to_vec()),
        10_000,
        1,
    )
    .unwrap();
    let table = class_table(&induced, 10_000).unwrap();
    (induced.degree(), min_index_table(&table, induced.degree()))
}

fn row(pairs: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    pairs.iter().cloned().collect()
}

#[test]
fn psl_2_23_all_maximal_index_rows() {
    let cfg = RunConfig::default();
    let r = realize_spec_text("psl:2:23@projective", &cfg).unwrap();
    let g = &r.group;
    let table = class_table(g, 10_000).unwrap();

    // Borel row: the natural 24-point action itself.
    let natural = min_index_table(&table, 24);
    assert_eq!(
        natural,
        row(&[(2, 12), (3, 16), (4, 18), (6, 20), (11, 20), (12, 22), (23, 22)])
    );

    // Dihedral of order 24: the unique maximal overgroup of an order-12
    // element.
    let y12 = table.class_of_order(12).unwrap().rep.clone();
    let maxes = maximal_overgroups(g, &y12, 10_000).unwrap();
    assert_eq!(maxes.len(), 1);
    let (n, d24_row) = ind_row(g, &maxes[0]);
    assert_eq!(n, 253);
    assert_eq!(
        d24_row,
        row(&[(2, 120), (3, 168), (4, 186), (6, 208), (11, 230), (12, 230), (23, 242)])
    );

    // Dihedral of order 22 via an order-11 element, which also lies in two
    // Borel subgroups.
    let y11 = table.class_of_order(11).unwrap().rep.clone();
    let maxes = maximal_overgroups(g, &y11, 10_000).unwrap();
    let mut orders: Vec<u128> = maxes.iter().map(|m| m.order_u128().unwrap()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![22, 253, 253]);
    let d22 = maxes
        .iter()
        .find(|m| m.order_u128().unwrap() == 22)
        .unwrap();
    let (n, d22_row) = ind_row(g, d22);
    assert_eq!(n, 276);
    assert_eq!(
        d22_row,
        row(&[(2, 132), (3, 184), (4, 204), (6, 228), (11, 250), (12, 252), (23, 264)])
    );

    // The two order-24 subgroups without order-12 elements through an
    // order-4 element share the same index row.
    let y4 = table.class_of_order(4).unwrap().rep.clone();
    let maxes = maximal_overgroups(g, &y4, 10_000).unwrap();
    assert!(maxes.iter().all(|m| m.order_u128().unwrap() == 24));
    let mut seen_symmetric_type = false;
    for m in &maxes {
        let mtab = class_table(m, 10_000).unwrap();
        let max_order = mtab.classes.iter().map(|c| c.order).max().unwrap();
        if max_order == 4 {
            seen_symmetric_type = true;
            let (n, s4_row) = ind_row(g, m);
            assert_eq!(n, 253);
            assert_eq!(
                s4_row,
                row(&[(2, 122), (3, 166), (4, 186), (6, 208), (11, 230), (12, 230), (23, 242)])
            );
        }
    }
    assert!(seen_symmetric_type);
}

#[test]
fn sym6_spread_exceeds_uniform_spread() {
    let cert = spread_exact(&sym(6), 800, 50_000_000).unwrap();
    assert_eq!(cert.s, 2);
    assert_eq!(cert.u, 0);
}
