//! Permutation groups given by generators: stabilizer chains, orbits,
//! transitivity and primitivity tests, stabilizers, element enumeration and
//! overgroup search.
//!
//! Groups and chains are immutable once built and safe to share across
//! threads; the chain is constructed lazily behind a `OnceLock`.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::util::{fnv1a, BitSet};

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain_seed: u64,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        // The chain is a cache; a clone rebuilds it on demand.
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain_seed: self.chain_seed,
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, {} gens)", self.degree, self.generators.len())
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_seed(degree, generators, DEFAULT_SEED)
    }

    pub fn with_seed(degree: usize, generators: Vec<Permutation>, seed: u64) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut gens = generators;
        gens.retain(|g| !g.is_identity());
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain_seed: seed,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, vec![Permutation::identity(degree)]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, self.chain_seed, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as u128 for cap checks; errors if it does not fit.
    pub fn order_u128(&self) -> Result<u128> {
        let o = self.order();
        let digits = o.to_u64_digits();
        match digits.len() {
            0 => Ok(0),
            1 => Ok(digits[0] as u128),
            2 => Ok(digits[0] as u128 | (digits[1] as u128) << 64),
            _ => Err(Error::Overflow("group order exceeds u128")),
        }
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().sift(p).is_identity())
    }

    pub fn is_identity_group(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            i += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    /// All orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orb = self.orbit(p);
            for &q in &orb {
                seen[q] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// Block-system test via minimal blocks containing `{0, β}`.
    /// Errors if the group is not transitive.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        for beta in 1..self.degree {
            let block = self.min_block(0, beta);
            if block < self.degree {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Size of the minimal block containing `{a, b}` (union-find closure).
    fn min_block(&self, a: usize, b: usize) -> usize {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = vec![(a, b)];
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        parent[rb] = ra;
        while let Some((p, q)) = queue.pop() {
            for g in &self.generators {
                let (pg, qg) = (g.apply(p), g.apply(q));
                let rp = find(&mut parent, pg);
                let rq = find(&mut parent, qg);
                if rp != rq {
                    parent[rq] = rp;
                    queue.push((pg, qg));
                }
            }
        }
        let ra = find(&mut parent, a);
        (0..n).filter(|&x| find(&mut parent, x) == ra).count()
    }

    /// Stabilizer of a point, with generators read off a chain rebased at it.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let chain =
            StabilizerChain::build(self.degree, &self.generators, self.chain_seed, &[point]);
        let gens: Vec<Permutation> = chain
            .strong_generators()
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        PermGroup::with_seed(self.degree, gens, self.chain_seed).unwrap()
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain =
            StabilizerChain::build(self.degree, &self.generators, self.chain_seed, points);
        let gens: Vec<Permutation> = chain
            .strong_generators()
            .iter()
            .filter(|g| points.iter().all(|&p| g.apply(p) == p))
            .cloned()
            .collect();
        PermGroup::with_seed(self.degree, gens, self.chain_seed).unwrap()
    }

    /// Uniformly random element, as a product of random transversal
    /// representatives down the chain.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let chain = self.chain();
        let mut acc = Permutation::identity(self.degree);
        for level in &chain.levels {
            let pick = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.compose_unchecked(&level.rep(pick, self.degree));
        }
        acc
    }

    /// Full element list, sorted by image sequence. Errors past `cap` elements.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let mut elems = closure_elements(self.degree, &self.generators, cap)?;
        elems.sort_unstable();
        Ok(elems)
    }
}

/// Breadth-first closure of the generated subgroup, unsorted.
pub fn closure_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut set: HashSet<Box<[u8]>> = HashSet::new();
    let id = Permutation::identity(degree);
    set.insert(id.packed());
    let mut frontier = vec![id];
    let mut all = vec![Permutation::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose_unchecked(g);
            if set.insert(y.packed()) {
                if all.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "subgroup closure",
                        need: (all.len() + 1) as u128,
                        cap: cap as u128,
                    });
                }
                all.push(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(all)
}

/// Order of `⟨gens⟩` by stabilizer chain; cheaper than closure for big groups.
pub fn generated_order(degree: usize, gens: &[Permutation], seed: u64) -> BigUint {
    StabilizerChain::build(degree, gens, seed, &[]).order()
}

// ---------------------------------------------------------------------------
// Stabilizer chain (base and strong generating set)
// ---------------------------------------------------------------------------

/// One level of a stabilizer chain: the orbit of `base_point` under the
/// strong generators fixing all earlier base points, plus a Schreier vector
/// from which transversal representatives are rebuilt on demand.
struct ChainLevel {
    base_point: usize,
    orbit: Vec<usize>,
    /// `schreier[p] = Some((prev, gen))` with `prev^gen = p`; `None` off-orbit,
    /// `Some((p, usize::MAX))` at the base point.
    schreier: Vec<Option<(u32, u32)>>,
    gens_snapshot: Vec<Permutation>,
}

impl ChainLevel {
    /// Transversal representative `u` with `base_point^u = point`.
    fn rep(&self, point: usize, degree: usize) -> Permutation {
        let mut path: Vec<u32> = Vec::new();
        let mut p = point;
        loop {
            let (prev, gi) = self.schreier[p].expect("point not in orbit");
            if gi == u32::MAX {
                break;
            }
            path.push(gi);
            p = prev as usize;
        }
        let mut acc = Permutation::identity(degree);
        for &gi in path.iter().rev() {
            acc = acc.compose_unchecked(&self.gens_snapshot[gi as usize]);
        }
        acc
    }

    fn in_orbit(&self, point: usize) -> bool {
        self.schreier[point].is_some()
    }
}

pub struct StabilizerChain {
    degree: usize,
    base: Vec<usize>,
    strong_gens: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: BigUint,
}

impl StabilizerChain {
    /// Deterministic build: a seeded random-subproduct warm-up fills the
    /// levels quickly, then a full Schreier-generator verification pass
    /// certifies (and where needed repairs) the chain, so the result is exact
    /// regardless of the warm-up.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        seed: u64,
        base_hint: &[usize],
    ) -> StabilizerChain {
        let mut b = ChainBuilder {
            degree,
            base: base_hint.to_vec(),
            strong: Vec::new(),
        };
        let real_gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        for g in &real_gens {
            b.ensure_base_covers(g);
        }
        for g in real_gens {
            b.strong.push(g.clone());
        }

        // Warm-up: random subproducts of the generators, sifted in.
        if b.strong.len() > 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut levels = b.make_levels();
            for _ in 0..24 {
                let mut w = Permutation::identity(degree);
                for _ in 0..(2 * b.strong.len()).max(4) {
                    let gi = rng.gen_range(0..b.strong.len());
                    w = w.compose_unchecked(&b.strong[gi]);
                }
                let (r, _) = sift_levels(&levels, &w, 0, degree);
                if !r.is_identity() {
                    b.ensure_base_covers(&r);
                    b.strong.push(r);
                    levels = b.make_levels();
                }
            }
        }

        b.verify();
        let levels = b.make_levels();
        let mut order = BigUint::one();
        for l in &levels {
            order *= BigUint::from(l.orbit.len());
        }
        StabilizerChain {
            degree,
            base: b.base,
            strong_gens: b.strong,
            levels,
            order,
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn order(&self) -> BigUint {
        self.order.clone()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sifts `p` through the chain; members strip to the identity and
    /// non-members leave a non-identity residue.
    pub fn sift(&self, p: &Permutation) -> Permutation {
        sift_levels(&self.levels, p, 0, self.degree).0
    }
}

/// Returns the residue and the number of levels stripped.
fn sift_levels(
    levels: &[ChainLevel],
    p: &Permutation,
    from: usize,
    degree: usize,
) -> (Permutation, usize) {
    let mut r = p.clone();
    for (k, level) in levels.iter().enumerate().skip(from) {
        let image = r.apply(level.base_point);
        if image == level.base_point {
            continue;
        }
        if !level.in_orbit(image) {
            return (r, k);
        }
        r = r.compose_unchecked(&level.rep(image, degree).inverse());
    }
    (r, levels.len())
}

struct ChainBuilder {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
}

impl ChainBuilder {
    /// Appends base points until `g` moves one of them.
    fn ensure_base_covers(&mut self, g: &Permutation) {
        if self.base.iter().any(|&b| g.apply(b) != b) {
            return;
        }
        for p in 0..self.degree {
            if g.apply(p) != p {
                self.base.push(p);
                return;
            }
        }
    }

    fn make_level(&self, i: usize) -> ChainLevel {
        let gens_snapshot: Vec<Permutation> = self
            .strong
            .iter()
            .filter(|g| self.base[..i].iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect();
        let bp = self.base[i];
        let mut schreier: Vec<Option<(u32, u32)>> = vec![None; self.degree];
        schreier[bp] = Some((bp as u32, u32::MAX));
        let mut orbit = vec![bp];
        let mut qi = 0;
        while qi < orbit.len() {
            let p = orbit[qi];
            qi += 1;
            for (local, g) in gens_snapshot.iter().enumerate() {
                let q = g.apply(p);
                if schreier[q].is_none() {
                    schreier[q] = Some((p as u32, local as u32));
                    orbit.push(q);
                }
            }
        }
        ChainLevel {
            base_point: bp,
            orbit,
            schreier,
            gens_snapshot,
        }
    }

    fn make_levels(&self) -> Vec<ChainLevel> {
        (0..self.base.len()).map(|i| self.make_level(i)).collect()
    }

    /// Full Schreier-generator verification from the deepest level up.
    fn verify(&mut self) {
        let mut i = self.base.len();
        while i > 0 {
            i -= 1;
            self.verify_level(i);
        }
    }

    /// Re-checks level `i` until every one of its Schreier generators sifts
    /// to the identity through the deeper levels. Each failure contributes a
    /// new strong generator that strictly grows a deeper orbit (or extends
    /// the base), so this terminates.
    fn verify_level(&mut self, i: usize) {
        loop {
            let level = self.make_level(i);
            let deeper: Vec<ChainLevel> = (i + 1..self.base.len())
                .map(|j| self.make_level(j))
                .collect();
            let mut dirty = false;
            'outer: for &beta in &level.orbit {
                let u_beta = level.rep(beta, self.degree);
                for g in &level.gens_snapshot {
                    let target = g.apply(beta);
                    let u_target_inv = level.rep(target, self.degree).inverse();
                    let schreier_gen = u_beta
                        .compose_unchecked(g)
                        .compose_unchecked(&u_target_inv);
                    if schreier_gen.is_identity() {
                        continue;
                    }
                    let (residue, _) = sift_levels(&deeper, &schreier_gen, 0, self.degree);
                    if !residue.is_identity() {
                        self.ensure_base_covers(&residue);
                        self.strong.push(residue);
                        dirty = true;
                        break 'outer;
                    }
                }
            }
            if !dirty {
                return;
            }
            // Fix the deeper levels first, then re-scan this one.
            for j in (i + 1..self.base.len()).rev() {
                self.verify_level(j);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Standard group constructors
// ---------------------------------------------------------------------------

pub fn sym(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let mut gens = vec![transposition(n, 0, 1)];
    if n >= 3 {
        gens.push(full_cycle(n));
    }
    PermGroup::new(n, gens).unwrap()
}

pub fn alt(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let three_cycle =
        Permutation::from_cycles_str("(1,2,3)", n).unwrap();
    let mut gens = vec![three_cycle];
    if n > 3 {
        if n % 2 == 1 {
            gens.push(full_cycle(n));
        } else {
            // (2,3,…,n)
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 1..n {
                images[i] = if i + 1 < n { (i + 1) as u32 } else { 1 };
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    PermGroup::new(n, gens).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    PermGroup::new(n, vec![full_cycle(n)]).unwrap()
}

/// Dihedral group of order `2n` acting on the `n` vertices of a polygon.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order % 2 != 0 || order < 6 {
        return Err(Error::Unsupported(format!(
            "dihedral order must be an even number ≥ 6, got {order}"
        )));
    }
    let n = order / 2;
    let mut refl: Vec<u32> = (0..n as u32).collect();
    for i in 0..n {
        refl[i] = (n - 1 - i) as u32;
    }
    PermGroup::new(
        n,
        vec![full_cycle(n), Permutation::from_images(refl).unwrap()],
    )
}

fn full_cycle(n: usize) -> Permutation {
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    Permutation::from_images(images).unwrap()
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.swap(a, b);
    Permutation::from_images(images).unwrap()
}

// ---------------------------------------------------------------------------
// Overgroup search
// ---------------------------------------------------------------------------

/// A subgroup found by the interval search: generators plus its full element
/// set as sorted indices into the parent's element list.
pub struct FoundSubgroup {
    pub gens: Vec<Permutation>,
    pub element_indices: Vec<u32>,
    pub order: u128,
}

pub struct OvergroupScan {
    /// Parent group elements, sorted by image sequence.
    pub elements: Vec<Permutation>,
    /// Every proper subgroup visited in the interval `[⟨y⟩, G]`.
    pub interval: Vec<FoundSubgroup>,
    /// Indices into `interval` of the maximal ones.
    pub maximal: Vec<usize>,
}

/// Explores the interval between `⟨y⟩` and `G` by single-element joins and
/// certifies maximality directly: a subgroup is maximal exactly when every
/// join with a coset representative outside it is the whole group.
pub fn overgroup_scan(g: &PermGroup, y: &Permutation, order_cap: u128) -> Result<OvergroupScan> {
    if !g.contains(y)? {
        return Err(Error::NotMember);
    }
    let n_order = g.order_u128()?;
    if n_order > order_cap {
        return Err(Error::CapExceeded {
            what: "overgroup search order",
            need: n_order,
            cap: order_cap,
        });
    }
    let elements = g.elements(n_order as usize)?;
    let n = elements.len();
    let index_of: HashMap<Box<[u8]>, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.packed(), i as u32))
        .collect();
    let idx = |p: &Permutation| -> u32 { index_of[&p.packed()] };

    let close = |gens: &[Permutation]| -> Option<(Vec<u32>, BitSet)> {
        // Closure in index space; None means the join is the whole group
        // (detected as soon as the size passes n/2, by Lagrange).
        let mut bits = BitSet::new(n);
        let id_idx = idx(&Permutation::identity(g.degree()));
        bits.insert(id_idx as usize);
        let mut list = vec![id_idx];
        let mut qi = 0;
        while qi < list.len() {
            let x = &elements[list[qi] as usize];
            qi += 1;
            for gen in gens {
                let y = x.compose_unchecked(gen);
                let yi = idx(&y) as usize;
                if !bits.contains(yi) {
                    bits.insert(yi);
                    list.push(yi as u32);
                    if list.len() > n / 2 {
                        return None;
                    }
                }
            }
        }
        list.sort_unstable();
        Some((list, bits))
    };

    let fingerprint = |list: &[u32]| -> u64 {
        let mut bytes = Vec::with_capacity(list.len() * 4);
        for &i in list {
            bytes.extend_from_slice(&i.to_le_bytes());
        }
        fnv1a(&bytes)
    };

    let mut interval: Vec<FoundSubgroup> = Vec::new();
    let mut member_bits: Vec<BitSet> = Vec::new();
    let mut seen: HashMap<(usize, u64), usize> = HashMap::new();
    let mut maximal = Vec::new();

    let start = close(&[y.clone()]);
    let mut queue: Vec<usize> = Vec::new();
    if let Some((list, bits)) = start {
        let fp = (list.len(), fingerprint(&list));
        seen.insert(fp, 0);
        interval.push(FoundSubgroup {
            gens: vec![y.clone()],
            element_indices: list,
            order: 0,
        });
        member_bits.push(bits);
        queue.push(0);
    } else {
        // ⟨y⟩ is already more than half of G, impossible for cyclic ⟨y⟩ unless
        // y generates G; either way there is no proper overgroup.
        return Ok(OvergroupScan {
            elements,
            interval: Vec::new(),
            maximal: Vec::new(),
        });
    }
    if interval[0].element_indices.len() == n {
        // ⟨y⟩ = G: no proper overgroups.
        return Ok(OvergroupScan {
            elements,
            interval: Vec::new(),
            maximal: Vec::new(),
        });
    }

    let mut qpos = 0;
    while qpos < queue.len() {
        let h_id = queue[qpos];
        qpos += 1;
        let h_bits = member_bits[h_id].clone();
        let h_gens = interval[h_id].gens.clone();
        let h_list = interval[h_id].element_indices.clone();
        let mut overgroups_of_h: Vec<usize> = Vec::new();
        let mut coset_done = h_bits.clone();
        let mut is_max = true;
        for cand in 0..n {
            if coset_done.contains(cand) {
                continue;
            }
            // Mark the whole coset H·cand as handled.
            for &hi in &h_list {
                let prod = elements[hi as usize].compose_unchecked(&elements[cand]);
                coset_done.insert(idx(&prod) as usize);
            }
            // If cand already lies in a known proper overgroup of H the join
            // stays proper; H is not maximal but nothing new is learned.
            if overgroups_of_h
                .iter()
                .any(|&k| member_bits[k].contains(cand))
            {
                is_max = false;
                continue;
            }
            let mut join_gens = h_gens.clone();
            join_gens.push(elements[cand].clone());
            match close(&join_gens) {
                None => {}
                Some((list, bits)) if list.len() == n => {
                    let _ = bits;
                }
                Some((list, bits)) => {
                    is_max = false;
                    let fp = (list.len(), fingerprint(&list));
                    let id = match seen.get(&fp) {
                        Some(&id) => id,
                        None => {
                            let id = interval.len();
                            seen.insert(fp, id);
                            interval.push(FoundSubgroup {
                                gens: join_gens,
                                element_indices: list,
                                order: 0,
                            });
                            member_bits.push(bits);
                            queue.push(id);
                            id
                        }
                    };
                    overgroups_of_h.push(id);
                }
            }
        }
        if is_max {
            maximal.push(h_id);
        }
    }

    for sg in interval.iter_mut() {
        sg.order = sg.element_indices.len() as u128;
    }
    // Deterministic output order: by (order, element list).
    let mut order_key: Vec<usize> = (0..interval.len()).collect();
    order_key.sort_by(|&a, &b| {
        (interval[a].order, &interval[a].element_indices)
            .cmp(&(interval[b].order, &interval[b].element_indices))
    });
    let rank: HashMap<usize, usize> = order_key.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    maximal.sort_by_key(|i| rank[i]);
    Ok(OvergroupScan {
        elements,
        interval,
        maximal,
    })
}

/// Maximal subgroups of `g` containing `y`, as permutation groups.
pub fn maximal_overgroups(
    g: &PermGroup,
    y: &Permutation,
    order_cap: u128,
) -> Result<Vec<PermGroup>> {
    let scan = overgroup_scan(g, y, order_cap)?;
    scan.maximal
        .iter()
        .map(|&i| {
            PermGroup::new(g.degree(), scan.interval[i].gens.clone())
        })
        .collect()
}

/// Every proper subgroup of `g` containing `y` (the full interval above
/// `⟨y⟩`), sorted by (order, element set).
pub fn subgroups_containing(
    g: &PermGroup,
    y: &Permutation,
    order_cap: u128,
) -> Result<Vec<PermGroup>> {
    let scan = overgroup_scan(g, y, order_cap)?;
    let mut order_key: Vec<usize> = (0..scan.interval.len()).collect();
    order_key.sort_by(|&a, &b| {
        (scan.interval[a].order, &scan.interval[a].element_indices)
            .cmp(&(scan.interval[b].order, &scan.interval[b].element_indices))
    });
    order_key
        .iter()
        .map(|&i| PermGroup::new(g.degree(), scan.interval[i].gens.clone()))
        .collect()
}
