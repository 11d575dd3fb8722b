//! Conjugacy classes, centralizer orders, fusion counts and the class table.
//!
//! Everything here is CAS-free: classes are conjugation orbits, the table is
//! an exhaustive partition of the enumerated group, and fusion is counted by
//! direct membership. Class representatives are canonicalized as the
//! lexicographically least image sequence of the fully enumerated class.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct ConjClass {
    /// Lex-least element of the class.
    pub rep: Permutation,
    /// Element order.
    pub order: u64,
    pub size: u128,
    pub centralizer_order: u128,
}

#[derive(Debug, Clone)]
pub struct ClassTable {
    /// Sorted by (element order, size, representative).
    pub classes: Vec<ConjClass>,
    /// Indices of classes of prime element order.
    pub prime_order_indices: Vec<usize>,
    pub group_order: u128,
}

impl ClassTable {
    pub fn identity_index(&self) -> usize {
        self.classes
            .iter()
            .position(|c| c.order == 1)
            .expect("identity class present")
    }

    pub fn class_of_order(&self, order: u64) -> Option<&ConjClass> {
        self.classes.iter().find(|c| c.order == order)
    }
}

/// The conjugation orbit of `x` in `g`, as a sorted element list plus class
/// data. Errors if `x` is outside `g` or the orbit exceeds `cap`.
pub fn class_of(
    g: &PermGroup,
    x: &Permutation,
    cap: usize,
) -> Result<(ConjClass, Vec<Permutation>)> {
    if !g.contains(x)? {
        return Err(Error::NotMember);
    }
    let mut seen: HashMap<Box<[u8]>, ()> = HashMap::new();
    seen.insert(x.packed(), ());
    let mut orbit = vec![x.clone()];
    let mut qi = 0;
    while qi < orbit.len() {
        let e = orbit[qi].clone();
        qi += 1;
        for gen in g.generators() {
            let c = e.conjugate_by(gen);
            let key = c.packed();
            if !seen.contains_key(&key) {
                if orbit.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "conjugacy class size",
                        need: (orbit.len() + 1) as u128,
                        cap: cap as u128,
                    });
                }
                seen.insert(key, ());
                orbit.push(c);
            }
        }
    }
    orbit.sort_unstable();
    let size = orbit.len() as u128;
    let group_order = g.order_u128()?;
    let class = ConjClass {
        rep: orbit[0].clone(),
        order: orbit[0].element_order()?,
        size,
        centralizer_order: group_order / size,
    };
    Ok((class, orbit))
}

/// Group elements together with their class partition.
pub struct ClassifiedGroup {
    /// All elements, sorted by image sequence.
    pub elements: Vec<Permutation>,
    /// Class index of each element, parallel to `elements`.
    pub class_of_element: Vec<u32>,
    /// For each element, a conjugator `c` with `rep^c = element`, where `rep`
    /// is its class representative. Only populated on request.
    pub conjugators: Option<Vec<Permutation>>,
    pub table: ClassTable,
}

impl ClassifiedGroup {
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }
}

/// Enumerates the whole group and partitions it into conjugacy classes.
pub fn classify_group(
    g: &PermGroup,
    cap: u128,
    with_conjugators: bool,
) -> Result<ClassifiedGroup> {
    let order = g.order_u128()?;
    if order > cap {
        return Err(Error::CapExceeded {
            what: "class enumeration order",
            need: order,
            cap,
        });
    }
    let elements = g.elements(order as usize)?;
    let n = elements.len();
    let identity_conj = Permutation::identity(g.degree());
    let mut class_of_element = vec![u32::MAX; n];
    let mut conjugators: Option<Vec<Permutation>> = if with_conjugators {
        Some(vec![identity_conj.clone(); n])
    } else {
        None
    };

    // BFS each unassigned element's conjugation orbit; the global assignment
    // vector doubles as the visited set since classes are disjoint.
    let mut raw_classes: Vec<(usize, Vec<u32>)> = Vec::new(); // (rep index, members)
    for start in 0..n {
        if class_of_element[start] != u32::MAX {
            continue;
        }
        let class_id = raw_classes.len() as u32;
        class_of_element[start] = class_id;
        let mut members = vec![start as u32];
        let mut qi = 0;
        while qi < members.len() {
            let e_idx = members[qi] as usize;
            qi += 1;
            for gen in g.generators() {
                let c = elements[e_idx].conjugate_by(gen);
                let c_idx = elements.binary_search(&c).expect("closed under conjugation");
                if class_of_element[c_idx] == u32::MAX {
                    class_of_element[c_idx] = class_id;
                    if let Some(conj) = conjugators.as_mut() {
                        conj[c_idx] = conj[e_idx].compose_unchecked(gen);
                    }
                    members.push(c_idx as u32);
                }
            }
        }
        // `start` is the least unassigned index and elements are sorted, so
        // it is the lex-least member: the canonical representative.
        raw_classes.push((start, members));
    }

    let mut classes = Vec::with_capacity(raw_classes.len());
    for (rep_idx, members) in &raw_classes {
        let rep = elements[*rep_idx].clone();
        let size = members.len() as u128;
        classes.push(ConjClass {
            order: rep.element_order()?,
            rep,
            size,
            centralizer_order: order / size,
        });
    }

    // Sort classes by (order, size, rep) and remap indices.
    let mut perm_order: Vec<usize> = (0..classes.len()).collect();
    perm_order.sort_by(|&a, &b| {
        (classes[a].order, classes[a].size, &classes[a].rep).cmp(&(
            classes[b].order,
            classes[b].size,
            &classes[b].rep,
        ))
    });
    let mut remap = vec![0u32; classes.len()];
    for (new_id, &old_id) in perm_order.iter().enumerate() {
        remap[old_id] = new_id as u32;
    }
    let classes: Vec<ConjClass> = perm_order.iter().map(|&i| classes[i].clone()).collect();
    for c in class_of_element.iter_mut() {
        *c = remap[*c as usize];
    }

    let prime_order_indices = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| is_prime_u64(c.order))
        .map(|(i, _)| i)
        .collect();

    let total: u128 = classes.iter().map(|c| c.size).sum();
    debug_assert_eq!(total, order);

    Ok(ClassifiedGroup {
        elements,
        class_of_element,
        conjugators,
        table: ClassTable {
            classes,
            prime_order_indices,
            group_order: order,
        },
    })
}

/// Class table only.
pub fn class_table(g: &PermGroup, cap: u128) -> Result<ClassTable> {
    Ok(classify_group(g, cap, false)?.table)
}

/// `|x^G ∩ H|` for a class `x^G` given by its sorted element list: the number
/// of elements of the subgroup lying in the class, counted by enumerating `H`
/// and testing membership directly.
pub fn fusion_count(
    g: &PermGroup,
    h: &PermGroup,
    class_elements: &[Permutation],
    enumeration_cap: usize,
) -> Result<u128> {
    for gen in h.generators() {
        if !g.contains(gen)? {
            return Err(Error::NotSubgroup);
        }
    }
    let h_order = h.order_u128()?;
    if h_order > enumeration_cap as u128 {
        return Err(Error::CapExceeded {
            what: "fusion subgroup enumeration",
            need: h_order,
            cap: enumeration_cap as u128,
        });
    }
    let h_elems = h.elements(h_order as usize)?;
    let count = h_elems
        .iter()
        .filter(|e| class_elements.binary_search(e).is_ok())
        .count();
    Ok(count as u128)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn big_to_u128(b: &BigUint) -> Option<u128> {
    let digits = b.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0] as u128),
        2 => Some(digits[0] as u128 | (digits[1] as u128) << 64),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alt, sym};

    #[test]
    fn transpositions_in_sym5() {
        let s5 = sym(5);
        let t = Permutation::from_cycles_str("(1,2)", 5).unwrap();
        let (class, elems) = class_of(&s5, &t, 10_000).unwrap();
        assert_eq!(class.size, 10);
        assert_eq!(elems.len(), 10);
        assert_eq!(class.centralizer_order, 12);
    }

    #[test]
    fn three_cycles_in_sym_n() {
        for n in 5..=8usize {
            let sn = sym(n);
            let x = Permutation::from_cycles_str("(1,2,3)", n).unwrap();
            let (class, _) = class_of(&sn, &x, 100_000).unwrap();
            let expect = 2 * binom(n, 3);
            assert_eq!(class.size, expect as u128, "3-cycles in Sym({n})");
        }
    }

    #[test]
    fn alt5_class_table() {
        let table = class_table(&alt(5), 10_000).unwrap();
        let sizes: Vec<u128> = table.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
        let orders: Vec<u64> = table.classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
        assert_eq!(table.prime_order_indices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn sym3_has_three_classes() {
        let table = class_table(&sym(3), 1000).unwrap();
        assert_eq!(table.classes.len(), 3);
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for g in [sym(4), alt(5), sym(5), alt(6)] {
            let table = class_table(&g, 10_000).unwrap();
            let total: u128 = table.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, g.order_u128().unwrap());
        }
    }

    #[test]
    fn brute_force_partition_agreement() {
        // Conjugacy in Sym(n) is determined by cycle type; check the table
        // against an exhaustive cycle-type partition for small n.
        let s5 = sym(5);
        let cg = classify_group(&s5, 10_000, true).unwrap();
        for (i, e) in cg.elements.iter().enumerate() {
            let cid = cg.class_of_element[i] as usize;
            let rep = &cg.table.classes[cid].rep;
            assert_eq!(e.cycle_type(), rep.cycle_type());
            // Conjugator check: rep^c = e.
            let c = &cg.conjugators.as_ref().unwrap()[i];
            assert_eq!(&rep.conjugate_by(c), e);
        }
        assert_eq!(cg.table.classes.len(), 7);
    }

    #[test]
    fn fusion_of_three_cycles() {
        // 3-cycles of Sym(n) meeting the stabilizer of {n−1, n}:
        // 2·C(n−2, 3) of them.
        for n in 5..=7usize {
            let sn = sym(n);
            let x = Permutation::from_cycles_str("(1,2,3)", n).unwrap();
            let (_, elems) = class_of(&sn, &x, 100_000).unwrap();
            // H = Sym(n−2) × Sym(2) on the last two points.
            let mut gens = vec![
                Permutation::from_cycles_str(&format!("({},{})", n - 1, n), n).unwrap(),
                Permutation::from_cycles_str("(1,2)", n).unwrap(),
            ];
            if n - 2 >= 3 {
                let cyc: Vec<String> = (1..=n - 2).map(|i| i.to_string()).collect();
                gens.push(
                    Permutation::from_cycles_str(&format!("({})", cyc.join(",")), n).unwrap(),
                );
            }
            let h = PermGroup::new(n, gens).unwrap();
            assert_eq!(h.order_u128().unwrap() as usize, 2 * factorial(n - 2));
            let fus = fusion_count(&sn, &h, &elems, 100_000).unwrap();
            assert_eq!(fus, 2 * binom(n - 2, 3) as u128);
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }
}
