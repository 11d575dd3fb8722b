//! Realizing induced permutation actions: k-sets, ordered tuples, coset
//! spaces, the regular action, and wreath products with their imprimitive
//! and product actions.
//!
//! Every realized action carries a point labelling and can push any source
//! element through to its induced permutation. Actions are required to be
//! transitive at construction, with one exception: the matrix "vectors"
//! action (see `matrix::act_on`), which keeps the zero vector.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub enum PermTarget {
    Natural,
    KSets(usize),
    KTuples(usize),
    /// Right cosets of the subgroup, acted on by right multiplication.
    CosetsOf(Vec<Permutation>),
    Regular,
}

/// A realized action of a permutation group: the induced group together with
/// labels and an element mapper.
pub struct PermAction {
    pub source_degree: usize,
    pub labels: Vec<String>,
    points: Points,
}

enum Points {
    Natural,
    KSets {
        index_of: HashMap<Vec<u32>, u32>,
        sets: Vec<Vec<u32>>,
    },
    KTuples {
        index_of: HashMap<Vec<u32>, u32>,
        tuples: Vec<Vec<u32>>,
    },
    Cosets {
        /// Coset representatives in discovery order; membership via the
        /// subgroup group.
        reps: Vec<Permutation>,
        subgroup: PermGroup,
    },
    Regular {
        elements: Vec<Permutation>,
    },
}

impl PermAction {
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    /// The permutation induced on the realized points by a source element.
    pub fn induce(&self, p: &Permutation) -> Result<Permutation> {
        if p.degree() != self.source_degree && !matches!(self.points, Points::Natural) {
            return Err(Error::DegreeMismatch {
                left: self.source_degree,
                right: p.degree(),
            });
        }
        match &self.points {
            Points::Natural => Ok(p.clone()),
            Points::KSets { index_of, sets } => {
                let mut images = Vec::with_capacity(sets.len());
                for s in sets {
                    let mut img: Vec<u32> = s.iter().map(|&x| p.apply(x as usize) as u32).collect();
                    img.sort_unstable();
                    images.push(index_of[&img]);
                }
                Permutation::from_images(images)
            }
            Points::KTuples { index_of, tuples } => {
                let mut images = Vec::with_capacity(tuples.len());
                for t in tuples {
                    let img: Vec<u32> = t.iter().map(|&x| p.apply(x as usize) as u32).collect();
                    images.push(index_of[&img]);
                }
                Permutation::from_images(images)
            }
            Points::Cosets { reps, subgroup } => {
                let mut images = Vec::with_capacity(reps.len());
                for r in reps {
                    let moved = r.compose_unchecked(p);
                    let idx = find_coset(reps, subgroup, &moved)?;
                    images.push(idx as u32);
                }
                Permutation::from_images(images)
            }
            Points::Regular { elements } => {
                let mut images = Vec::with_capacity(elements.len());
                for e in elements {
                    let moved = e.compose_unchecked(p);
                    let idx = elements
                        .binary_search(&moved)
                        .map_err(|_| Error::NotMember)?;
                    images.push(idx as u32);
                }
                Permutation::from_images(images)
            }
        }
    }
}

/// Index of the coset `H·x` among the representatives.
fn find_coset(reps: &[Permutation], subgroup: &PermGroup, x: &Permutation) -> Result<usize> {
    for (i, r) in reps.iter().enumerate() {
        // H·x = H·r  ⟺  x·r⁻¹ ∈ H
        let q = x.compose_unchecked(&r.inverse());
        if subgroup.contains(&q)? {
            return Ok(i);
        }
    }
    Err(Error::NotMember)
}

/// Realizes the action, checking transitivity and the degree cap.
pub fn realize_perm(
    g: &PermGroup,
    target: &PermTarget,
    degree_cap: usize,
    seed: u64,
) -> Result<(PermAction, PermGroup)> {
    let n = g.degree();
    let action = match target {
        PermTarget::Natural => PermAction {
            source_degree: n,
            labels: (1..=n).map(|i| i.to_string()).collect(),
            points: Points::Natural,
        },
        PermTarget::KSets(k) => {
            let k = *k;
            if k == 0 || k >= n {
                return Err(Error::Unsupported(format!(
                    "k-sets needs 0 < k < degree, got k={k}, degree={n}"
                )));
            }
            let sets = combinations(n, k);
            if sets.len() > degree_cap {
                return Err(Error::CapExceeded {
                    what: "k-sets degree",
                    need: sets.len() as u128,
                    cap: degree_cap as u128,
                });
            }
            let index_of = sets
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            let labels = sets
                .iter()
                .map(|s| {
                    let parts: Vec<String> = s.iter().map(|&x| (x + 1).to_string()).collect();
                    format!("{{{}}}", parts.join(","))
                })
                .collect();
            PermAction {
                source_degree: n,
                labels,
                points: Points::KSets { index_of, sets },
            }
        }
        PermTarget::KTuples(k) => {
            let k = *k;
            if k == 0 || k > n {
                return Err(Error::Unsupported(format!(
                    "k-tuples needs 0 < k ≤ degree, got k={k}, degree={n}"
                )));
            }
            let mut tuples = Vec::new();
            let mut cur = Vec::new();
            distinct_tuples(n, k, &mut cur, &mut tuples, degree_cap)?;
            let index_of = tuples
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), i as u32))
                .collect();
            let labels = tuples
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|&x| (x + 1).to_string()).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            PermAction {
                source_degree: n,
                labels,
                points: Points::KTuples { index_of, tuples },
            }
        }
        PermTarget::CosetsOf(h_gens) => {
            let subgroup = PermGroup::with_seed(n, h_gens.clone(), seed)?;
            for gen in subgroup.generators() {
                if !g.contains(gen)? {
                    return Err(Error::NotSubgroup);
                }
            }
            let mut reps = vec![Permutation::identity(n)];
            let mut qi = 0;
            while qi < reps.len() {
                let r = reps[qi].clone();
                qi += 1;
                for gen in g.generators() {
                    let cand = r.compose_unchecked(gen);
                    if find_coset(&reps, &subgroup, &cand).is_err() {
                        if reps.len() >= degree_cap {
                            return Err(Error::CapExceeded {
                                what: "coset action degree",
                                need: (reps.len() + 1) as u128,
                                cap: degree_cap as u128,
                            });
                        }
                        reps.push(cand);
                    }
                }
            }
            let labels = (0..reps.len()).map(|i| format!("H.{}", i + 1)).collect();
            PermAction {
                source_degree: n,
                labels,
                points: Points::Cosets { reps, subgroup },
            }
        }
        PermTarget::Regular => {
            let order = g.order_u128()?;
            if order > degree_cap as u128 {
                return Err(Error::CapExceeded {
                    what: "regular action degree",
                    need: order,
                    cap: degree_cap as u128,
                });
            }
            let elements = g.elements(order as usize)?;
            let labels = elements.iter().map(|e| e.to_cycles_str()).collect();
            PermAction {
                source_degree: n,
                labels,
                points: Points::Regular { elements },
            }
        }
    };

    let induced_gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|gen| action.induce(gen))
        .collect::<Result<_>>()?;
    let induced = PermGroup::with_seed(action.degree(), induced_gens, seed)?;
    if !induced.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok((action, induced))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u32);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn distinct_tuples(
    n: usize,
    k: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    cap: usize,
) -> Result<()> {
    if cur.len() == k {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                what: "k-tuples degree",
                need: (out.len() + 1) as u128,
                cap: cap as u128,
            });
        }
        out.push(cur.clone());
        return Ok(());
    }
    for i in 0..n {
        if cur.contains(&(i as u32)) {
            continue;
        }
        cur.push(i as u32);
        distinct_tuples(n, k, cur, out, cap)?;
        cur.pop();
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Wreath products
// ---------------------------------------------------------------------------

/// Wreath product of `inner ≤ Sym(m)` by `outer ≤ Sym(t)` in its natural
/// imprimitive action on `m·t` points: `t` blocks of size `m`, with a copy of
/// the inner group on each block and the outer group permuting blocks.
pub fn wreath_imprimitive(inner: &PermGroup, outer: &PermGroup) -> Result<PermGroup> {
    let m = inner.degree();
    let t = outer.degree();
    let degree = m * t;
    let mut gens = Vec::new();
    for block in 0..t {
        for gen in inner.generators() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for x in 0..m {
                images[block * m + x] = (block * m + gen.apply(x)) as u32;
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    for gen in outer.generators() {
        let mut images: Vec<u32> = vec![0; degree];
        for b in 0..t {
            for x in 0..m {
                images[b * m + x] = (gen.apply(b) * m + x) as u32;
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(degree, gens)
}

/// Wreath product in its product action on `m^t` points (tuples over the
/// inner domain, coordinates permuted by the outer group).
pub fn wreath_product_action(
    inner: &PermGroup,
    outer: &PermGroup,
    degree_cap: usize,
) -> Result<PermGroup> {
    let m = inner.degree();
    let t = outer.degree();
    let degree = (m as u128).checked_pow(t as u32).ok_or(Error::Overflow("product action degree"))?;
    if degree > degree_cap as u128 {
        return Err(Error::CapExceeded {
            what: "product action degree",
            need: degree,
            cap: degree_cap as u128,
        });
    }
    let degree = degree as usize;
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = Vec::with_capacity(t);
        for _ in 0..t {
            v.push(idx % m);
            idx /= m;
        }
        v
    };
    let encode = |v: &[usize]| -> usize {
        let mut idx = 0;
        for &c in v.iter().rev() {
            idx = idx * m + c;
        }
        idx
    };
    let mut gens = Vec::new();
    for coord in 0..t {
        for gen in inner.generators() {
            let mut images = Vec::with_capacity(degree);
            for idx in 0..degree {
                let mut v = decode(idx);
                v[coord] = gen.apply(v[coord]);
                images.push(encode(&v) as u32);
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    for gen in outer.generators() {
        let mut images = Vec::with_capacity(degree);
        for idx in 0..degree {
            let v = decode(idx);
            // coordinate j of the image reads the source coordinate that the
            // outer element sends to j
            let inv = gen.inverse();
            let w: Vec<usize> = (0..t).map(|j| v[inv.apply(j)]).collect();
            images.push(encode(&w) as u32);
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alt, sym};
    use num_bigint::BigUint;

    #[test]
    fn sym5_on_2sets() {
        let s5 = sym(5);
        let (act, g) = realize_perm(&s5, &PermTarget::KSets(2), 10_000, 1).unwrap();
        assert_eq!(act.degree(), 10);
        assert!(g.is_transitive());
        assert_eq!(g.order(), BigUint::from(120u32));
    }

    #[test]
    fn primitivity_of_ksets() {
        // Sym(4) on 2-sets is imprimitive (k = n/2); Sym(5) on 2-sets is not.
        let (_, g4) = realize_perm(&sym(4), &PermTarget::KSets(2), 10_000, 1).unwrap();
        assert!(!g4.is_primitive().unwrap());
        let (_, g5) = realize_perm(&sym(5), &PermTarget::KSets(2), 10_000, 1).unwrap();
        assert!(g5.is_primitive().unwrap());
    }

    #[test]
    fn alt5_on_cosets_of_d10() {
        let a5 = alt(5);
        let k = vec![
            Permutation::from_cycles_str("(1,2,3,4,5)", 5).unwrap(),
            Permutation::from_cycles_str("(1,2)(3,5)", 5).unwrap(),
        ];
        let (act, g) = realize_perm(&a5, &PermTarget::CosetsOf(k), 10_000, 1).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(g.order(), BigUint::from(60u32));
        // Degree equals index.
        assert_eq!(g.point_stabilizer(0).order(), BigUint::from(10u32));
    }

    #[test]
    fn coset_degree_is_index() {
        let s5 = sym(5);
        let h = vec![
            Permutation::from_cycles_str("(1,2)", 5).unwrap(),
            Permutation::from_cycles_str("(1,2,3,4)", 5).unwrap(),
        ];
        let (act, _) = realize_perm(&s5, &PermTarget::CosetsOf(h), 10_000, 1).unwrap();
        assert_eq!(act.degree(), 5); // |Sym(5)| / |Sym(4)| = 5
    }

    #[test]
    fn wreath_product_action_degree_and_order() {
        let g = wreath_product_action(&sym(3), &sym(2), 10_000).unwrap();
        assert_eq!(g.degree(), 9);
        assert_eq!(g.order(), BigUint::from(72u32));
        assert!(g.is_transitive());
        assert!(g.is_primitive().unwrap());
    }

    #[test]
    fn wreath_imprimitive_blocks() {
        let g = wreath_imprimitive(&sym(3), &sym(2)).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), BigUint::from(72u32));
        assert!(g.is_transitive());
        assert!(!g.is_primitive().unwrap());
    }

    #[test]
    fn regular_action() {
        let c6 = crate::group::cyclic(6);
        let (act, g) = realize_perm(&c6, &PermTarget::Regular, 10_000, 1).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(g.order(), BigUint::from(6u32));
    }

    #[test]
    fn intransitive_realization_rejected() {
        let g = PermGroup::new(
            4,
            vec![Permutation::from_cycles_str("(1,2)(3,4)", 4).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            realize_perm(&g, &PermTarget::Natural, 10_000, 1),
            Err(Error::NotTransitive)
        ));
    }

    #[test]
    fn induced_element_mapping() {
        let s5 = sym(5);
        let (act, g) = realize_perm(&s5, &PermTarget::KSets(2), 10_000, 1).unwrap();
        let x = Permutation::from_cycles_str("(1,2,3)", 5).unwrap();
        let ix = act.induce(&x).unwrap();
        assert!(g.contains(&ix).unwrap());
        // A 3-cycle fixes exactly the C(2,2) = 1 pair {4,5}.
        assert_eq!(ix.fix_count(), 1);
    }
}
