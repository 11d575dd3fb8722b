//! Generation testing, the generating graph and its statistics, exact spread
//! and uniform spread via set cover, and the fpr-sum uniform-spread
//! certificate.
//!
//! Spread computations use the cover reformulation: writing N'(x) for the set
//! of vertices that fail to generate with x, the spread s(G) is one less than
//! the least number of such sets covering all vertices (repeated tuple
//! entries never help, so sets suffice), and the uniform spread u(G) is the
//! best analogous value with universes restricted to a single class.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::classes::{classify_group, ClassTable};
use crate::error::{Error, Result};
use crate::fpr::ratio;
use crate::group::{generated_order, maximal_overgroups, PermGroup};
use crate::perm::Permutation;
use crate::util::BitSet;

/// Whether `⟨x, y⟩` is the whole group, decided by a stabilizer chain of the
/// pair subgroup.
pub fn generates(g: &PermGroup, x: &Permutation, y: &Permutation) -> Result<bool> {
    if !g.contains(x)? || !g.contains(y)? {
        return Err(Error::NotMember);
    }
    let sub = generated_order(g.degree(), &[x.clone(), y.clone()], 1);
    Ok(sub == g.order())
}

// ---------------------------------------------------------------------------
// Generating graph
// ---------------------------------------------------------------------------

pub struct GeneratingGraph {
    /// Non-identity elements, sorted by image sequence.
    pub vertices: Vec<Permutation>,
    pub adjacency: Vec<BitSet>,
    pub group_order: u128,
    /// Class index of each vertex in `table`.
    pub class_of_vertex: Vec<u32>,
    pub table: ClassTable,
    /// Per class: the number of y in the whole group (identity and repeats
    /// included) generating with a class representative. Feeds `prob_gen2`.
    pub full_neighbor_counts: Vec<u128>,
}

/// Builds the generating graph. Neighborhoods are computed once per class on
/// a representative and transported along conjugators, since generation is
/// conjugation-invariant.
pub fn build_graph(g: &PermGroup, graph_cap: u128) -> Result<GeneratingGraph> {
    let order = g.order_u128()?;
    if order > graph_cap {
        return Err(Error::CapExceeded {
            what: "generating graph order",
            need: order,
            cap: graph_cap,
        });
    }
    let cg = classify_group(g, graph_cap, true)?;
    let conjugators = cg.conjugators.as_ref().unwrap();
    let elements = &cg.elements;
    let n_elems = elements.len();
    let id_pos = elements
        .binary_search(&Permutation::identity(g.degree()))
        .expect("identity present");

    // Vertex indexing: elements minus the identity, order preserved.
    let vert_of_elem = |e_idx: usize| -> Option<usize> {
        match e_idx.cmp(&id_pos) {
            std::cmp::Ordering::Less => Some(e_idx),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(e_idx - 1),
        }
    };
    let elem_of_vert = |v: usize| -> usize {
        if v < id_pos {
            v
        } else {
            v + 1
        }
    };
    let n_verts = n_elems - 1;

    // Representative neighborhoods per class, over element indices.
    let n_classes = cg.table.classes.len();
    let mut rep_neighbors: Vec<Vec<u32>> = vec![Vec::new(); n_classes];
    let mut full_counts: Vec<u128> = vec![0; n_classes];
    let target_order = g.order();
    for (cid, class) in cg.table.classes.iter().enumerate() {
        let mut nb = Vec::new();
        let mut count = 0u128;
        for (e_idx, e) in elements.iter().enumerate() {
            let gen_ord = generated_order(g.degree(), &[class.rep.clone(), e.clone()], 1);
            if gen_ord == target_order {
                count += 1;
                nb.push(e_idx as u32);
            }
        }
        rep_neighbors[cid] = nb;
        full_counts[cid] = count;
    }

    // Transport to every vertex: N(rep^c) = N(rep)^c.
    let elem_index: HashMap<Box<[u8]>, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.packed(), i as u32))
        .collect();
    let mut adjacency = vec![BitSet::new(n_verts); n_verts];
    for e_idx in 0..n_elems {
        let Some(v) = vert_of_elem(e_idx) else { continue };
        let cid = cg.class_of_element[e_idx] as usize;
        let conj = &conjugators[e_idx];
        for &nb_idx in &rep_neighbors[cid] {
            let moved = elements[nb_idx as usize].conjugate_by(conj);
            let m_idx = elem_index[&moved.packed()] as usize;
            if let Some(w) = vert_of_elem(m_idx) {
                adjacency[v].insert(w);
            }
        }
    }

    // Sanity: symmetric, no loops (loops cannot occur: ⟨x,x⟩ = ⟨x⟩ cyclic).
    for v in 0..n_verts {
        debug_assert!(!adjacency[v].contains(v) || order == 1);
    }

    let class_of_vertex = (0..n_verts)
        .map(|v| cg.class_of_element[elem_of_vert(v)])
        .collect();
    let vertices = (0..n_verts)
        .map(|v| elements[elem_of_vert(v)].clone())
        .collect();
    Ok(GeneratingGraph {
        vertices,
        adjacency,
        group_order: order,
        class_of_vertex,
        table: cg.table,
        full_neighbor_counts: full_counts,
    })
}

/// Exact probability that two uniform random elements generate the group,
/// via class invariance: Σ_classes size·|{y : ⟨rep, y⟩ = G}| / |G|².
pub fn prob_gen2(g: &PermGroup, cap: u128) -> Result<BigRational> {
    let order = g.order_u128()?;
    if order > cap {
        return Err(Error::CapExceeded {
            what: "pair generation enumeration",
            need: order,
            cap,
        });
    }
    let cg = classify_group(g, cap, false)?;
    let target_order = g.order();
    let mut favourable: u128 = 0;
    for class in &cg.table.classes {
        let mut count = 0u128;
        for e in &cg.elements {
            if generated_order(g.degree(), &[class.rep.clone(), e.clone()], 1) == target_order {
                count += 1;
            }
        }
        favourable += class.size * count;
    }
    Ok(ratio(favourable, order * order))
}

// ---------------------------------------------------------------------------
// Graph statistics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedValue {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl BoundedValue {
    fn exact(v: usize) -> Self {
        BoundedValue {
            lower: v,
            upper: v,
            exact: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: u128,
    pub degree_sequence: Vec<usize>,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub clique: BoundedValue,
    pub coclique: BoundedValue,
}

pub fn graph_stats(graph: &GeneratingGraph, budget: u64) -> GraphStats {
    let n = graph.vertices.len();
    let degs: Vec<usize> = graph.adjacency.iter().map(|b| b.count()).collect();
    let edges: u128 = degs.iter().map(|&d| d as u128).sum::<u128>() / 2;
    let mut degree_sequence = degs.clone();
    degree_sequence.sort_unstable();

    let (connected, diameter) = diameter_of(&graph.adjacency);
    let clique = max_clique(&graph.adjacency, budget);
    let complement: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut b = BitSet::full(n);
            b.difference_with(&graph.adjacency[v]);
            b.remove(v);
            b
        })
        .collect();
    let coclique = max_clique(&complement, budget);
    GraphStats {
        vertices: n,
        edges,
        degree_sequence,
        connected,
        diameter,
        clique,
        coclique,
    }
}

fn diameter_of(adj: &[BitSet]) -> (bool, Option<usize>) {
    let n = adj.len();
    if n == 0 {
        return (true, Some(0));
    }
    let mut max_ecc = 0;
    for start in 0..n {
        let mut visited = BitSet::new(n);
        visited.insert(start);
        let mut frontier = BitSet::new(n);
        frontier.insert(start);
        let mut dist = 0;
        let mut reached = 1;
        loop {
            let mut next = BitSet::new(n);
            for v in frontier.iter() {
                next.union_with(&adj[v]);
            }
            next.difference_with(&visited);
            if next.is_empty() {
                break;
            }
            dist += 1;
            reached += next.count();
            visited.union_with(&next);
            frontier = next;
        }
        if reached < n {
            return (false, None);
        }
        max_ecc = max_ecc.max(dist);
    }
    (true, Some(max_ecc))
}

/// Branch-and-bound maximum clique with a greedy colouring bound; reports
/// [lower, upper] bounds when the node budget is exhausted.
pub fn max_clique(adj: &[BitSet], budget: u64) -> BoundedValue {
    let n = adj.len();
    if n == 0 {
        return BoundedValue::exact(0);
    }
    let mut best: Vec<usize> = Vec::new();
    let mut nodes: u64 = 0;
    let mut exhausted = false;

    // Order vertices by degeneracy-ish (degree ascending) for the root.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count());

    fn colour_bound(adj: &[BitSet], cand: &BitSet) -> usize {
        // Greedy colouring of the candidate set; the colour count bounds the
        // clique size within it.
        let mut colours: Vec<BitSet> = Vec::new();
        for v in cand.iter() {
            let mut placed = false;
            for class in colours.iter_mut() {
                if !class.intersects(&adj[v]) {
                    class.insert(v);
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut b = BitSet::new(adj.len());
                b.insert(v);
                colours.push(b);
            }
        }
        colours.len()
    }

    #[allow(clippy::too_many_arguments)]
    fn expand(
        adj: &[BitSet],
        cur: &mut Vec<usize>,
        cand: BitSet,
        best: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        exhausted: &mut bool,
    ) {
        *nodes += 1;
        if *nodes > budget {
            *exhausted = true;
            return;
        }
        if cand.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        if cur.len() + colour_bound(adj, &cand) <= best.len() {
            return;
        }
        let vs: Vec<usize> = cand.iter().collect();
        let mut cand = cand;
        for v in vs {
            if cur.len() + cand.count() <= best.len() {
                return;
            }
            if *exhausted {
                return;
            }
            cand.remove(v);
            let mut next = cand.clone();
            next.intersect_with(&adj[v]);
            cur.push(v);
            expand(adj, cur, next, best, nodes, budget, exhausted);
            cur.pop();
        }
    }

    let cand = BitSet::full(n);
    let mut cur = Vec::new();
    expand(adj, &mut cur, cand, &mut best, &mut nodes, budget, &mut exhausted);
    if exhausted {
        // Upper bound from one colouring of the full vertex set.
        let full = BitSet::full(n);
        let ub = colour_bound(adj, &full);
        BoundedValue {
            lower: best.len(),
            upper: ub.max(best.len()),
            exact: false,
        }
    } else {
        BoundedValue::exact(best.len())
    }
}

/// Exact chromatic number by iterating k-colorability with a
/// most-saturated-first branching order. Long-running; only offered behind
/// an explicit command or test, never in the default pipeline.
pub fn chromatic_number(adj: &[BitSet], budget: u64) -> BoundedValue {
    let n = adj.len();
    if n == 0 {
        return BoundedValue::exact(0);
    }
    // Lower bound: clique; upper bound: greedy colouring.
    let clique = max_clique(adj, budget / 4);
    let mut lb = clique.lower;
    let ub = greedy_colouring(adj);
    let mut nodes = 0u64;
    while lb < ub {
        match k_colorable(adj, lb, &mut nodes, budget) {
            Some(true) => return BoundedValue::exact(lb),
            Some(false) => lb += 1,
            None => {
                return BoundedValue {
                    lower: lb,
                    upper: ub,
                    exact: false,
                }
            }
        }
    }
    BoundedValue::exact(ub)
}

fn greedy_colouring(adj: &[BitSet]) -> usize {
    let n = adj.len();
    let mut colour = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count()));
    let mut used = 0;
    for v in order {
        let mut taken = vec![false; used + 1];
        for w in adj[v].iter() {
            if colour[w] != usize::MAX && colour[w] < taken.len() {
                taken[colour[w]] = true;
            }
        }
        let c = (0..=used).find(|&c| !taken[c]).unwrap();
        colour[v] = c;
        if c == used {
            used += 1;
        }
    }
    used
}

/// Some(true)/Some(false) when decided within the budget, None otherwise.
fn k_colorable(adj: &[BitSet], k: usize, nodes: &mut u64, budget: u64) -> Option<bool> {
    let n = adj.len();
    let mut colour = vec![usize::MAX; n];

    fn dfs(
        adj: &[BitSet],
        colour: &mut Vec<usize>,
        k: usize,
        coloured: usize,
        max_used: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if coloured == adj.len() {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        // Most saturated uncoloured vertex, ties by degree.
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..adj.len() {
            if colour[v] != usize::MAX {
                continue;
            }
            let mut seen = vec![false; k];
            let mut sat = 0;
            for w in adj[v].iter() {
                let c = colour[w];
                if c != usize::MAX && !seen[c] {
                    seen[c] = true;
                    sat += 1;
                }
            }
            let key = (sat, adj[v].count());
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        let v = best;
        let mut taken = vec![false; k];
        for w in adj[v].iter() {
            if colour[w] != usize::MAX {
                taken[colour[w]] = true;
            }
        }
        // Symmetry breaking: allow at most one previously unused colour.
        let limit = (max_used + 1).min(k);
        let mut undecided = false;
        for c in 0..limit {
            if taken[c] {
                continue;
            }
            colour[v] = c;
            match dfs(
                adj,
                colour,
                k,
                coloured + 1,
                max_used.max(c + 1),
                nodes,
                budget,
            ) {
                Some(true) => {
                    colour[v] = usize::MAX;
                    return Some(true);
                }
                Some(false) => {}
                None => undecided = true,
            }
            colour[v] = usize::MAX;
            if undecided {
                return None;
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }

    dfs(adj, &mut colour, k, 0, 0, nodes, budget)
}

/// Degree-sequence criterion sufficient for a Hamiltonian cycle:
/// `d_k ≥ k+1` for all `1 ≤ k < m/2` (degrees sorted ascending, 1-indexed).
pub fn posa_check(degree_sequence_sorted: &[usize]) -> bool {
    let m = degree_sequence_sorted.len();
    for k in 1..m {
        if 2 * k < m && degree_sequence_sorted[k - 1] < k + 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Spread and uniform spread (exact, via set cover)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpreadMethod {
    SetCoverExact,
    CertifiedLowerBound,
}

#[derive(Debug, Clone)]
pub struct SpreadCert {
    pub s: usize,
    pub u: usize,
    /// Representative of the best class for uniform spread.
    pub witness_class: Permutation,
    /// A tuple of s+1 elements admitting no common mate.
    pub s_failing_tuple: Vec<Permutation>,
    /// A tuple of u+1 elements no single class covers.
    pub u_failing_tuple: Vec<Permutation>,
    pub method: SpreadMethod,
}

/// Exact spread and uniform spread by branch-and-bound set cover with
/// first-set symmetry reduction over conjugacy classes.
pub fn spread_exact(g: &PermGroup, spread_cap: u128, budget: u64) -> Result<SpreadCert> {
    let order = g.order_u128()?;
    if order > spread_cap {
        return Err(Error::CapExceeded {
            what: "exact spread order",
            need: order,
            cap: spread_cap,
        });
    }
    let graph = build_graph(g, spread_cap)?;
    let n = graph.vertices.len();
    // Non-neighbourhoods within the vertex set (x is always in N'(x)).
    let non_neighborhoods: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut b = BitSet::full(n);
            b.difference_with(&graph.adjacency[v]);
            b
        })
        .collect();

    // Class representative vertex indices (non-identity classes).
    let mut rep_vertices: Vec<usize> = Vec::new();
    for (cid, class) in graph.table.classes.iter().enumerate() {
        if class.order == 1 {
            continue;
        }
        let v = graph
            .vertices
            .binary_search(&class.rep)
            .expect("class rep is a vertex");
        debug_assert_eq!(graph.class_of_vertex[v] as usize, cid);
        rep_vertices.push(v);
    }

    // s(G) + 1 = min cover of all vertices; root set fixed per class rep.
    let universe = BitSet::full(n);
    let mut best_cover: Option<Vec<usize>> = None;
    for &rv in &rep_vertices {
        let cover = min_cover_with_first(&universe, &non_neighborhoods, rv, budget, &best_cover);
        if let Some(c) = cover {
            best_cover = Some(c);
        }
    }
    let s_cover = best_cover.expect("a cover always exists");
    let s = s_cover.len() - 1;

    // u(G) = max over classes of (min cover of the class) − 1.
    let mut u = 0usize;
    let mut u_class_rep = graph.table.classes[graph.class_of_vertex[0] as usize]
        .rep
        .clone();
    let mut u_cover: Vec<usize> = s_cover.clone();
    for (cid, class) in graph.table.classes.iter().enumerate() {
        if class.order == 1 {
            continue;
        }
        let mut class_universe = BitSet::new(n);
        for v in 0..n {
            if graph.class_of_vertex[v] as usize == cid {
                class_universe.insert(v);
            }
        }
        let mut best: Option<Vec<usize>> = None;
        for &rv in &rep_vertices {
            let cover =
                min_cover_with_first(&class_universe, &non_neighborhoods, rv, budget, &best);
            if let Some(c) = cover {
                best = Some(c);
            }
        }
        let cover = best.expect("class covers exist");
        if cover.len() - 1 > u {
            u = cover.len() - 1;
            u_class_rep = class.rep.clone();
            u_cover = cover;
        }
    }

    Ok(SpreadCert {
        s,
        u,
        witness_class: u_class_rep,
        s_failing_tuple: s_cover.iter().map(|&v| graph.vertices[v].clone()).collect(),
        u_failing_tuple: u_cover.iter().map(|&v| graph.vertices[v].clone()).collect(),
        method: SpreadMethod::SetCoverExact,
    })
}

/// Minimum cover of `universe` by the given sets, forced to contain
/// `first_set`; prunes against the incumbent. Returns a strictly better
/// cover if one exists.
fn min_cover_with_first(
    universe: &BitSet,
    sets: &[BitSet],
    first_set: usize,
    budget: u64,
    incumbent: &Option<Vec<usize>>,
) -> Option<Vec<usize>> {
    let mut remaining = universe.clone();
    remaining.difference_with(&sets[first_set]);
    let mut chosen = vec![first_set];
    let mut best: Option<Vec<usize>> = incumbent.clone();
    let mut nodes = 0u64;
    cover_dfs(&mut remaining, sets, &mut chosen, &mut best, &mut nodes, budget);
    match (&best, incumbent) {
        (Some(b), Some(i)) if b.len() < i.len() => best,
        (Some(_), None) => best,
        _ => None,
    }
}

fn cover_dfs(
    remaining: &mut BitSet,
    sets: &[BitSet],
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) {
    *nodes += 1;
    if *nodes > budget {
        return;
    }
    if remaining.is_empty() {
        if best.as_ref().map_or(true, |b| chosen.len() < b.len()) {
            *best = Some(chosen.clone());
        }
        return;
    }
    if let Some(b) = best {
        // Lower bound: at least ⌈remaining / max set size⌉ more sets.
        let rem = remaining.count();
        let max_cover = sets
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.intersect_with(remaining);
                t.count()
            })
            .max()
            .unwrap_or(0);
        if max_cover == 0 {
            return;
        }
        let lb = chosen.len() + rem.div_ceil(max_cover);
        if lb >= b.len() {
            return;
        }
    }
    // Branch on the uncovered vertex with the fewest covering sets.
    let mut branch_vertex = usize::MAX;
    let mut branch_count = usize::MAX;
    for v in remaining.iter() {
        let c = sets.iter().filter(|s| s.contains(v)).count();
        if c < branch_count {
            branch_count = c;
            branch_vertex = v;
        }
    }
    let mut covering: Vec<usize> = (0..sets.len())
        .filter(|&i| sets[i].contains(branch_vertex))
        .collect();
    covering.sort_by_key(|&i| {
        let mut t = sets[i].clone();
        t.intersect_with(remaining);
        std::cmp::Reverse(t.count())
    });
    for i in covering {
        let saved = remaining.clone();
        remaining.difference_with(&sets[i]);
        chosen.push(i);
        cover_dfs(remaining, sets, chosen, best, nodes, budget);
        chosen.pop();
        *remaining = saved;
    }
}

// ---------------------------------------------------------------------------
// Uniform spread certification via fpr sums over maximal overgroups
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct OvergroupSummary {
    pub order: u128,
    pub index: u128,
    pub generators: Vec<Permutation>,
}

#[derive(Debug, Clone)]
pub struct CertRow {
    pub class_rep: Permutation,
    pub order: u64,
    /// fpr of the class in each coset action G/H, H running over the
    /// overgroups in order.
    pub summands: Vec<BigRational>,
    pub total: BigRational,
}

#[derive(Debug, Clone)]
pub struct UniformSpreadCertificate {
    pub y: Permutation,
    pub k: usize,
    pub overgroups: Vec<OvergroupSummary>,
    pub rows: Vec<CertRow>,
    pub max_total: BigRational,
    /// The claim `u(G) ≥ k` is certified iff `max_total < 1/k`.
    pub granted: bool,
    /// True when the overgroup list was supplied by the caller instead of
    /// computed; the certificate is then conditional on that list.
    pub conditional: bool,
}

/// Computes Σ_{H ∈ M(y)} fpr(x, G/H) for every prime-order class rep x and
/// issues a `u(G) ≥ k` certificate when the maximum is below 1/k.
pub fn uspread_certify(
    g: &PermGroup,
    y: &Permutation,
    k: usize,
    table: &ClassTable,
    supplied_overgroups: Option<Vec<PermGroup>>,
    overgroup_cap: u128,
    degree_cap: usize,
    seed: u64,
) -> Result<UniformSpreadCertificate> {
    let conditional = supplied_overgroups.is_some();
    let overgroups = match supplied_overgroups {
        Some(h) => h,
        None => maximal_overgroups(g, y, overgroup_cap)?,
    };
    let g_order = g.order_u128()?;

    // Realize each coset action once; induce class reps through it.
    let mut actions = Vec::new();
    let mut summaries = Vec::new();
    for h in &overgroups {
        let h_order = h.order_u128()?;
        let (act, _) = crate::action::realize_perm(
            g,
            &crate::action::PermTarget::CosetsOf(h.generators().to_vec()),
            degree_cap,
            seed,
        )?;
        summaries.push(OvergroupSummary {
            order: h_order,
            index: g_order / h_order,
            generators: h.generators().to_vec(),
        });
        actions.push(act);
    }

    let mut rows = Vec::new();
    let mut max_total = ratio(0, 1);
    for &ci in &table.prime_order_indices {
        let class = &table.classes[ci];
        let mut summands = Vec::new();
        let mut total = ratio(0, 1);
        for act in &actions {
            let induced = act.induce(&class.rep)?;
            let f = ratio(induced.fix_count() as u128, act.degree() as u128);
            total += f.clone();
            summands.push(f);
        }
        if total > max_total {
            max_total = total.clone();
        }
        rows.push(CertRow {
            class_rep: class.rep.clone(),
            order: class.order,
            summands,
            total,
        });
    }
    let threshold = BigRational::new(BigInt::from(1), BigInt::from(k as i64));
    // With no overgroups at all the sums are vacuously zero and the
    // certificate holds for every k.
    let granted = max_total < threshold;
    Ok(UniformSpreadCertificate {
        y: y.clone(),
        k,
        overgroups: summaries,
        rows,
        max_total,
        granted,
        conditional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alt, cyclic, sym};

    #[test]
    fn classic_generating_pairs() {
        let s6 = sym(6);
        let t = Permutation::from_cycles_str("(1,2)", 6).unwrap();
        let c = Permutation::from_cycles_str("(1,2,3,4,5,6)", 6).unwrap();
        assert!(generates(&s6, &t, &c).unwrap());
        let a7 = alt(7);
        let x = Permutation::from_cycles_str("(1,2,3)", 7).unwrap();
        let y = Permutation::from_cycles_str("(1,2,3,4,5,6,7)", 7).unwrap();
        assert!(generates(&a7, &x, &y).unwrap());
        // An element never generates a nonabelian simple group with itself.
        assert!(!generates(&a7, &y, &y).unwrap());
    }

    #[test]
    fn alt5_graph_counts() {
        let graph = build_graph(&alt(5), 2000).unwrap();
        let stats = graph_stats(&graph, 1_000_000);
        assert_eq!(stats.vertices, 59);
        assert_eq!(stats.edges, 1140);
        assert!(stats.connected);
        assert_eq!(stats.diameter, Some(2));
        assert_eq!(stats.clique, BoundedValue::exact(8));
        assert_eq!(stats.coclique, BoundedValue::exact(15));
    }

    #[test]
    fn prob_gen2_values() {
        assert_eq!(prob_gen2(&alt(5), 2000).unwrap(), ratio(19, 30));
        // Brute-force value for C_5: all pairs except (1,1).
        assert_eq!(prob_gen2(&cyclic(5), 2000).unwrap(), ratio(24, 25));
    }

    #[test]
    fn posa_examples() {
        // K5: degrees all 4, m = 5: need d_k ≥ k+1 for k = 1, 2.
        assert!(posa_check(&[4, 4, 4, 4, 4]));
        // Star K_{1,4}: degrees 1,1,1,1,4.
        assert!(!posa_check(&[1, 1, 1, 1, 4]));
    }

    #[test]
    fn spread_of_alt5() {
        let cert = spread_exact(&alt(5), 600, 10_000_000).unwrap();
        assert_eq!(cert.s, 2);
        assert_eq!(cert.u, 2);
        assert_eq!(cert.method, SpreadMethod::SetCoverExact);
        assert_eq!(cert.s_failing_tuple.len(), 3);
    }

    #[test]
    fn uspread_certificate_for_alt5() {
        let a5 = alt(5);
        let y = Permutation::from_cycles_str("(1,2,3,4,5)", 5).unwrap();
        let table = crate::classes::class_table(&a5, 10_000).unwrap();
        let cert =
            uspread_certify(&a5, &y, 2, &table, None, 10_000, 10_000, 1).unwrap();
        assert!(cert.granted);
        assert!(!cert.conditional);
        assert_eq!(cert.overgroups.len(), 1);
        assert_eq!(cert.overgroups[0].order, 10);
        // Sums are 1/3 (order 2), 0 (order 3), 1/6, 1/6 (order 5).
        let totals: Vec<String> = cert
            .rows
            .iter()
            .map(|r| crate::fpr::rational_str(&r.total))
            .collect();
        assert_eq!(totals, vec!["1/3", "0", "1/6", "1/6"]);
    }

    #[test]
    fn cyclic_groups_have_vacuous_certificates() {
        let c7 = cyclic(7);
        let y = c7.generators()[0].clone();
        let table = crate::classes::class_table(&c7, 10_000).unwrap();
        let cert = uspread_certify(&c7, &y, 5, &table, None, 10_000, 10_000, 1).unwrap();
        assert!(cert.overgroups.is_empty());
        assert!(cert.granted);
    }

    #[test]
    fn neighbor_count_is_class_invariant() {
        let graph = build_graph(&alt(5), 2000).unwrap();
        for cid in 0..graph.table.classes.len() {
            let counts: Vec<usize> = (0..graph.vertices.len())
                .filter(|&v| graph.class_of_vertex[v] as usize == cid)
                .map(|v| graph.adjacency[v].count())
                .collect();
            if let Some(first) = counts.first() {
                assert!(counts.iter().all(|c| c == first));
            }
        }
    }

    #[test]
    fn edge_probability_coupling() {
        // P(G,2)·|G|² = 2·edges for a noncyclic simple group.
        let graph = build_graph(&alt(5), 2000).unwrap();
        let p = prob_gen2(&alt(5), 2000).unwrap();
        let expect = ratio(2 * 1140, 3600);
        assert_eq!(p, expect);
        let _ = graph;
    }
}
