//! Exact base sizes by iterative-deepening backtracking, the Q̂(G,c)
//! fixed-point-ratio certificate, Monte-Carlo base probability estimation,
//! and the classical sandwich and coupling inequalities.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::is_prime_u64;
use crate::error::Result;
use crate::fpr::{ratio, FprReport};
use crate::group::PermGroup;

#[derive(Debug, Clone)]
pub struct BaseOutcome {
    /// Exact base size when the search completed.
    pub exact: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    /// A base of size `upper` (of size `exact` when exact).
    pub witness: Vec<usize>,
    pub nodes: u64,
}

/// Exact minimal base size via iterative deepening over point sequences.
/// Points in one orbit of the current stabilizer head isomorphic subtrees,
/// so only one representative per orbit is branched on, ordered by largest
/// immediate stabilizer-order drop; fixed points are never chosen.
pub fn base_size_exact(g: &PermGroup, budget: u64) -> BaseOutcome {
    let order = g.order();
    let n = g.degree();
    if order.is_one() {
        return BaseOutcome {
            exact: Some(0),
            lower: 0,
            upper: 0,
            witness: Vec::new(),
            nodes: 0,
        };
    }

    // Greedy upper bound: repeatedly stabilize a point in a largest orbit.
    let mut witness = Vec::new();
    let mut cur = g.clone();
    while !cur.order().is_one() {
        let orbits = cur.orbits();
        let largest = orbits.iter().max_by_key(|o| o.len()).unwrap();
        witness.push(largest[0]);
        cur = cur.pointwise_stabilizer(&witness);
    }
    let upper = witness.len();

    // Exact lower bound from |G| ≤ n^b.
    let mut lower = 0usize;
    let mut pw = BigUint::one();
    let n_big = BigUint::from(n);
    while pw < order {
        pw *= &n_big;
        lower += 1;
    }

    let mut nodes: u64 = 0;
    for depth in lower..upper {
        let mut found: Option<Vec<usize>> = None;
        let exhausted = base_dfs(g, &mut Vec::new(), depth, &mut found, &mut nodes, budget);
        if let Some(w) = found {
            return BaseOutcome {
                exact: Some(depth),
                lower: depth,
                upper: depth,
                witness: w,
                nodes,
            };
        }
        if !exhausted {
            // Budget ran out before refuting this depth.
            return BaseOutcome {
                exact: None,
                lower: depth,
                upper,
                witness,
                nodes,
            };
        }
    }
    BaseOutcome {
        exact: Some(upper),
        lower: upper,
        upper,
        witness,
        nodes,
    }
}

/// Depth-limited search; returns true when the subtree was fully explored.
fn base_dfs(
    current: &PermGroup,
    prefix: &mut Vec<usize>,
    depth_left: usize,
    found: &mut Option<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    *nodes += 1;
    if *nodes > budget {
        return false;
    }
    let order = current.order();
    if order.is_one() {
        *found = Some(prefix.clone());
        return true;
    }
    if depth_left == 0 {
        return true;
    }
    // Prune: each chosen point divides the order by at most its orbit length.
    let orbits = current.orbits();
    let mut sizes: Vec<(usize, usize)> = orbits
        .iter()
        .filter(|o| o.len() > 1)
        .map(|o| (o.len(), o[0]))
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if sizes.is_empty() {
        return true;
    }
    let max_orbit = BigUint::from(sizes[0].0);
    if max_orbit.pow(depth_left as u32) < order {
        return true;
    }
    let mut complete = true;
    for (_, rep) in sizes {
        prefix.push(rep);
        let stab = current.pointwise_stabilizer(&[rep]);
        let sub_complete = base_dfs(&stab, prefix, depth_left - 1, found, nodes, budget);
        prefix.pop();
        if found.is_some() {
            return true;
        }
        if !sub_complete {
            complete = false;
            break;
        }
    }
    complete
}

/// Checks that the pointwise stabilizer of the witness is trivial and that no
/// single point can be dropped.
pub fn verify_base_witness(g: &PermGroup, witness: &[usize]) -> bool {
    if !g.pointwise_stabilizer(witness).order().is_one() {
        return false;
    }
    for skip in 0..witness.len() {
        let sub: Vec<usize> = witness
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &p)| p)
            .collect();
        if g.pointwise_stabilizer(&sub).order().is_one() {
            return false;
        }
    }
    true
}

/// Q̂(G,c) = Σ over prime-order classes of size·fpr^c, an upper bound on the
/// probability that a uniform c-tuple of points fails to be a base; below 1
/// it certifies b(G) ≤ c.
pub fn qhat(report: &FprReport, c: u32) -> BigRational {
    let mut total = BigRational::zero();
    for row in &report.rows {
        if !is_prime_u64(row.order) {
            continue;
        }
        let mut term = BigRational::from_integer(row.size.into());
        for _ in 0..c {
            term *= row.fpr.clone();
        }
        total += term;
    }
    total
}

#[derive(Debug, Clone)]
pub struct BaseProbEstimate {
    pub c: usize,
    pub trials: u64,
    pub bases_found: u64,
    pub seed: u64,
    /// Estimated probability that a random c-tuple IS a base.
    pub estimate: BigRational,
}

/// Monte-Carlo estimate of the probability that a uniform c-tuple of points
/// (sampled with repetition) is a base. Deterministic given the seed.
pub fn random_base_prob(g: &PermGroup, c: usize, trials: u64, seed: u64) -> BaseProbEstimate {
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut tuple = vec![0usize; c];
    for _ in 0..trials {
        for t in tuple.iter_mut() {
            *t = rng.gen_range(0..n);
        }
        if g.pointwise_stabilizer(&tuple).order().is_one() {
            hits += 1;
        }
    }
    BaseProbEstimate {
        c,
        trials,
        bases_found: hits,
        seed,
        estimate: ratio(hits as u128, trials as u128),
    }
}

/// Exhaustive probability that a c-tuple is a base, for small n^c: the
/// independent oracle for the Monte-Carlo estimate.
pub fn exhaustive_base_prob(g: &PermGroup, c: usize) -> Result<BigRational> {
    let n = g.degree();
    let total = (n as u128).pow(c as u32);
    let mut tuple = vec![0usize; c];
    let mut hits: u128 = 0;
    loop {
        if g.pointwise_stabilizer(&tuple).order().is_one() {
            hits += 1;
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == c {
                return Ok(ratio(hits, total));
            }
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundsRecord {
    pub degree: usize,
    pub order: BigUint,
    pub b: usize,
    pub mu: usize,
    /// log|G|/log n ≤ b, checked exactly as |G| ≤ n^b.
    pub lower_log_ok: bool,
    /// b ≤ log₂|G|, checked exactly as 2^b ≤ |G|.
    pub upper_log_ok: bool,
    /// b·μ ≥ n.
    pub coupling_ok: bool,
}

/// The sandwich `log|G|/log n ≤ b ≤ log₂|G|` and the coupling `b·μ ≥ n`,
/// all checked in exact integer arithmetic.
pub fn bounds_check(degree: usize, order: &BigUint, b: usize, mu: usize) -> BoundsRecord {
    let n_big = BigUint::from(degree);
    let lower_log_ok = order <= &n_big.pow(b as u32);
    let upper_log_ok = BigUint::from(2u32).pow(b as u32) <= *order;
    let coupling_ok = b * mu >= degree;
    BoundsRecord {
        degree,
        order: order.clone(),
        b,
        mu,
        lower_log_ok,
        upper_log_ok,
        coupling_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{realize_perm, PermTarget};
    use crate::classes::class_table;
    use crate::fpr::fpr_report;
    use crate::group::{alt, cyclic, sym};
    use crate::perm::Permutation;

    #[test]
    fn base_of_sym_and_alt_natural() {
        for n in 3..=6usize {
            let out = base_size_exact(&sym(n), 1_000_000);
            assert_eq!(out.exact, Some(n - 1), "b(Sym({n}))");
            assert!(verify_base_witness(&sym(n), &out.witness));
        }
        for n in 4..=6usize {
            let out = base_size_exact(&alt(n), 1_000_000);
            assert_eq!(out.exact, Some(n - 2), "b(Alt({n}))");
        }
    }

    #[test]
    fn base_of_regular_action_is_one() {
        let c6 = cyclic(6);
        let (_, reg) = realize_perm(&c6, &PermTarget::Regular, 100, 1).unwrap();
        let out = base_size_exact(&reg, 100_000);
        assert_eq!(out.exact, Some(1));
    }

    #[test]
    fn qhat_for_alt5_on_cosets_of_d10() {
        let a5 = alt(5);
        let k = vec![
            Permutation::from_cycles_str("(1,2,3,4,5)", 5).unwrap(),
            Permutation::from_cycles_str("(1,2)(3,5)", 5).unwrap(),
        ];
        let (_, action_group) = realize_perm(&a5, &PermTarget::CosetsOf(k), 100, 1).unwrap();
        let table = class_table(&action_group, 10_000).unwrap();
        let report = fpr_report("alt5/d10", 6, &table).unwrap();
        assert_eq!(qhat(&report, 2), ratio(7, 3));
        assert_eq!(qhat(&report, 3), ratio(2, 3));
        // The c = 3 certificate is sound: the base size really is ≤ 3.
        let out = base_size_exact(&action_group, 1_000_000);
        assert_eq!(out.exact, Some(3));
    }

    #[test]
    fn random_base_prob_is_deterministic_and_converges() {
        use num_traits::Signed;
        let s5 = sym(5);
        let exact = exhaustive_base_prob(&s5, 4).unwrap();
        assert_eq!(exact, ratio(120, 625));
        let est1 = random_base_prob(&s5, 4, 4000, 99);
        let est2 = random_base_prob(&s5, 4, 4000, 99);
        assert_eq!(est1.bases_found, est2.bases_found);
        let diff = (est1.estimate - exact).abs();
        assert!(diff < ratio(1, 20), "difference {diff}");
    }

    #[test]
    fn below_minimum_no_tuple_is_base() {
        let s5 = sym(5);
        let out = base_size_exact(&s5, 1_000_000);
        let b = out.exact.unwrap();
        let est = random_base_prob(&s5, b - 1, 2000, 7);
        assert_eq!(est.bases_found, 0);
    }

    #[test]
    fn bounds_hold_for_sym5() {
        let s5 = sym(5);
        let rec = bounds_check(5, &s5.order(), 4, 2);
        assert!(rec.lower_log_ok && rec.upper_log_ok && rec.coupling_ok);
    }

    #[test]
    fn regular_action_coupling_is_equality() {
        let c6 = cyclic(6);
        let (_, reg) = realize_perm(&c6, &PermTarget::Regular, 100, 1).unwrap();
        let table = class_table(&reg, 100).unwrap();
        let report = fpr_report("c6 regular", 6, &table).unwrap();
        // Every non-identity element of a regular action is a derangement.
        assert_eq!(report.mu, 6);
        let rec = bounds_check(6, &reg.order(), 1, report.mu);
        assert!(rec.coupling_ok);
        assert_eq!(rec.b * rec.mu, rec.degree);
    }
}
