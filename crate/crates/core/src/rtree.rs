//! Labeled r-trees: counting, inductive generation, recognition by reverse
//! elimination, partial-r-tree recognition via bounded-width elimination
//! orderings, and the constructive embedding of MCC 1-skeletons.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::budget::Budget;
use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::mcc;

/// Simple labeled graph on vertices 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    pub fn new<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Domain(format!("loop at vertex {a}")));
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn complete(n: u32) -> Self {
        let edges = (1..=n)
            .tuple_combinations()
            .map(|(a, b)| (a, b))
            .collect();
        Self { n, edges }
    }

    pub fn from_skeleton(y: &PureComplex) -> Self {
        Self {
            n: y.n(),
            edges: y.complex().skeleton_edges(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        debug_assert!(a != b);
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_clique(&self, verts: &[u32]) -> bool {
        verts
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| self.has_edge(a, b))
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }
}

/// Number of labeled r-trees on n vertices: C(n,r) [r(n-r)+1]^(n-r-2), with
/// the degenerate exponents at n = r and n = r+1 both resolving to 1.
pub fn count_r_trees(n: u32, r: u32) -> Result<BigUint> {
    if n < r {
        return Err(Error::Domain(format!("need n >= r; got n={n}, r={r}")));
    }
    if n <= r + 1 {
        return Ok(BigUint::one());
    }
    let base = BigUint::from(r as u64 * (n - r) as u64 + 1);
    let choose = crate::util::binom(n as i64, r as i64)
        .to_biguint()
        .expect("binomial is nonnegative");
    Ok(choose * base.pow(n - r - 2))
}

/// All labeled r-trees on 1..=n, generated inductively over every base
/// r-subset, insertion order, and attachment clique, deduplicated by
/// canonical edge set. Desk scale only.
pub fn enumerate_r_trees(n: u32, r: u32, budget: &Budget) -> Result<Vec<Graph>> {
    if n < r {
        return Err(Error::Domain(format!("need n >= r; got n={n}, r={r}")));
    }
    let estimate = BigInt::from(count_r_trees(n, r)?) * BigInt::from(32u32);
    if !budget.admits(&estimate) {
        return Err(Error::BudgetExceeded {
            task: format!("enumerate_r_trees({n},{r})"),
            estimate: estimate.to_string(),
            budget: budget.max_work,
        });
    }
    type State = (Vec<u32>, Vec<(u32, u32)>);
    let mut level: HashSet<State> = (1..=n)
        .combinations(r as usize)
        .map(|verts| {
            let edges: Vec<(u32, u32)> = verts
                .iter()
                .tuple_combinations()
                .map(|(&a, &b)| (a, b))
                .collect();
            (verts, edges)
        })
        .collect();
    for _size in r..n {
        let mut next: HashSet<State> = HashSet::new();
        for (verts, edges) in &level {
            let g = Graph::new(n, edges.iter().copied()).expect("valid state");
            let cliques: Vec<Vec<u32>> = verts
                .iter()
                .copied()
                .combinations(r as usize)
                .filter(|c| g.is_clique(c))
                .collect();
            for v in 1..=n {
                if verts.binary_search(&v).is_ok() {
                    continue;
                }
                for clique in &cliques {
                    let mut nverts = verts.clone();
                    let pos = nverts.binary_search(&v).unwrap_err();
                    nverts.insert(pos, v);
                    let mut nedges = edges.clone();
                    for &c in clique {
                        nedges.push((c.min(v), c.max(v)));
                    }
                    nedges.sort_unstable();
                    next.insert((nverts, nedges));
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Graph> = level
        .into_iter()
        .map(|(_, edges)| Graph::new(n, edges).expect("valid r-tree"))
        .collect();
    out.sort();
    Ok(out)
}

/// Reverse elimination decision: repeatedly delete a degree-r vertex whose
/// neighborhood is a clique; G is an r-tree iff this reduces it to K_r.
pub fn is_r_tree(g: &Graph, r: u32) -> bool {
    if g.n() < r {
        return false;
    }
    let mut alive: BTreeSet<u32> = (1..=g.n()).collect();
    let mut edges = g.edges().clone();
    while alive.len() as u32 > r {
        let mut removed = None;
        for &v in &alive {
            let nbrs: Vec<u32> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            if nbrs.len() == r as usize && clique_in(&edges, &nbrs) {
                removed = Some(v);
                break;
            }
        }
        match removed {
            Some(v) => {
                alive.remove(&v);
                edges.retain(|&(a, b)| a != v && b != v);
            }
            None => return false,
        }
    }
    // K_r remains?
    edges.len() == (r as usize * (r as usize - 1)) / 2
        && alive
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| edges.contains(&(a.min(b), a.max(b))))
}

fn clique_in(edges: &BTreeSet<(u32, u32)>, verts: &[u32]) -> bool {
    verts
        .iter()
        .tuple_combinations()
        .all(|(&a, &b)| edges.contains(&(a.min(b), a.max(b))))
}

/// Builds an r-tree on the vertex set of Y containing Y's 1-skeleton,
/// peeling external-leaf branches and reattaching the k leaves of each branch
/// to nested cliques. Free choices resolve lexicographically smallest; if the
/// peeling schedule dead-ends, an elimination-ordering completion of the
/// skeleton finishes the job.
pub fn embed_in_r_tree(y: &PureComplex) -> Result<Graph> {
    if !mcc::is_mcc(y) {
        return Err(Error::Domain(
            "embedding is defined for minimal connected covers".into(),
        ));
    }
    let r = y.r();
    let edges = peel(&y.facets().to_vec(), r).or_else(|| {
        complete_to_r_tree(&Graph::from_skeleton(y), r)
            .map(|g| g.edges().clone())
    });
    let edges = edges.ok_or_else(|| {
        Error::Domain("no r-tree extension found for a verified cover".into())
    })?;
    let g = Graph::new(y.n(), edges)?;
    debug_assert!(is_r_tree(&g, r));
    debug_assert!(Graph::from_skeleton(y).is_subgraph_of(&g));
    Ok(g)
}

/// Recursive peeling on the facet list; returns the edge set of an r-tree on
/// the covered vertices containing the skeleton, or None if every branch
/// choice fails.
fn peel(facets: &[Vec<u32>], r: u32) -> Option<BTreeSet<(u32, u32)>> {
    if facets.len() == 1 {
        let mut edges = BTreeSet::new();
        for pair in facets[0].iter().tuple_combinations() {
            let (&a, &b) = pair;
            edges.insert((a, b));
        }
        return Some(edges);
    }
    for sigma in facets {
        let leaves: Vec<u32> = sigma
            .iter()
            .copied()
            .filter(|&v| facets.iter().filter(|f| f.contains(&v)).count() == 1)
            .collect();
        if leaves.is_empty() {
            continue;
        }
        let rest: Vec<Vec<u32>> = facets.iter().filter(|f| *f != sigma).cloned().collect();
        if !facet_list_is_mcc(&rest) {
            continue;
        }
        let Some(sub) = peel(&rest, r) else {
            continue;
        };
        let tau: Vec<u32> = sigma
            .iter()
            .copied()
            .filter(|v| !leaves.contains(v))
            .collect();
        let rest_vertices: BTreeSet<u32> = rest.iter().flatten().copied().collect();
        // Lexicographically smallest r-clique of the embedded subtree
        // containing tau; tau itself need not be a face of the remainder.
        let Some(tau_prime) = smallest_clique_containing(&sub, &rest_vertices, &tau, r as usize)
        else {
            continue;
        };
        let mut ordered = tau.clone();
        for &v in &tau_prime {
            if !tau.contains(&v) {
                ordered.push(v);
            }
        }
        let mut edges = sub;
        for (j, &leaf) in leaves.iter().enumerate() {
            for &prev in &leaves[..j] {
                edges.insert((prev.min(leaf), prev.max(leaf)));
            }
            let take = r as usize - j;
            for &t in &ordered[..take] {
                edges.insert((t.min(leaf), t.max(leaf)));
            }
        }
        return Some(edges);
    }
    None
}

/// MCC test on a bare facet list over its covered vertex set.
fn facet_list_is_mcc(facets: &[Vec<u32>]) -> bool {
    if facets.is_empty() {
        return false;
    }
    if !facet_list_connected(facets) {
        return false;
    }
    (0..facets.len()).all(|skip| {
        let rest: Vec<&Vec<u32>> = facets
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, f)| f)
            .collect();
        if rest.is_empty() {
            return true; // single facet: removal isolates everything
        }
        // Disconnected if a previously covered vertex is lost or the
        // remaining facets split.
        let covered: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        let still: BTreeSet<u32> = rest.iter().flat_map(|f| f.iter()).copied().collect();
        if still.len() < covered.len() {
            return true;
        }
        !facet_refs_connected(&rest)
    })
}

fn facet_list_connected(facets: &[Vec<u32>]) -> bool {
    let refs: Vec<&Vec<u32>> = facets.iter().collect();
    facet_refs_connected(&refs)
}

fn facet_refs_connected(facets: &[&Vec<u32>]) -> bool {
    if facets.is_empty() {
        return true;
    }
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if facets[i].iter().any(|v| facets[j].contains(v)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..facets.len()).all(|i| find(&mut parent, i) == root)
}

fn smallest_clique_containing(
    edges: &BTreeSet<(u32, u32)>,
    vertices: &BTreeSet<u32>,
    must: &[u32],
    size: usize,
) -> Option<Vec<u32>> {
    if must.len() > size {
        return None;
    }
    if !clique_in(edges, must) {
        return None;
    }
    let pool: Vec<u32> = vertices
        .iter()
        .copied()
        .filter(|v| !must.contains(v))
        .collect();
    let extra = size - must.len();
    for candidate in pool.into_iter().combinations(extra) {
        let mut all = must.to_vec();
        all.extend(&candidate);
        if clique_in(edges, &all) {
            all.sort_unstable();
            return Some(all);
        }
    }
    None
}

/// Completes a graph of treewidth <= r into an r-tree on the same vertices:
/// find a bounded-degree elimination ordering (with fill), then rebuild,
/// padding each elimination bag to an r-clique.
pub fn complete_to_r_tree(g: &Graph, r: u32) -> Option<Graph> {
    if g.n() < r + 1 {
        return None;
    }
    let schedule = eliminate(g, r, usize::MAX)?;
    let (order, bags, last) = schedule;
    let mut tree = Graph::complete_on(g.n(), &last);
    let mut present: BTreeSet<u32> = last.iter().copied().collect();
    for (v, bag) in order.into_iter().zip(bags).rev() {
        let pool: BTreeSet<u32> = present.clone();
        let clique = smallest_clique_containing(tree.edges(), &pool, &bag, r as usize)
            .expect("every small clique of an r-tree extends to an r-clique");
        for &c in &clique {
            tree.add_edge(v, c);
        }
        present.insert(v);
    }
    Some(tree)
}

impl Graph {
    fn complete_on(n: u32, verts: &[u32]) -> Graph {
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
        };
        for pair in verts.iter().tuple_combinations() {
            let (&a, &b) = pair;
            g.add_edge(a, b);
        }
        g
    }
}

/// Elimination search: returns (order, bags, final r+1 vertices) where every
/// eliminated vertex had at most r neighbors at its turn (fill-in applied).
/// Memoizes failed eliminated-sets; the filled graph depends only on the set.
fn eliminate(g: &Graph, r: u32, memo_cap: usize) -> Option<(Vec<u32>, Vec<Vec<u32>>, Vec<u32>)> {
    let n = g.n() as usize;
    if n > 63 {
        return None;
    }
    let mut adj: Vec<u64> = vec![0; n + 1];
    for &(a, b) in g.edges() {
        adj[a as usize] |= 1 << (b - 1);
        adj[b as usize] |= 1 << (a - 1);
    }
    let mut failed: HashSet<u64> = HashSet::new();
    let mut order = Vec::new();
    let mut bags = Vec::new();
    let alive: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    if search_elim(
        &mut adj,
        alive,
        r as usize,
        &mut order,
        &mut bags,
        &mut failed,
        memo_cap,
    ) {
        let last: Vec<u32> = (1..=n as u32)
            .filter(|v| !order.contains(v))
            .collect();
        Some((order, bags, last))
    } else {
        None
    }
}

fn search_elim(
    adj: &mut Vec<u64>,
    alive: u64,
    r: usize,
    order: &mut Vec<u32>,
    bags: &mut Vec<Vec<u32>>,
    failed: &mut HashSet<u64>,
    memo_cap: usize,
) -> bool {
    if alive.count_ones() as usize <= r + 1 {
        return true;
    }
    if failed.contains(&alive) {
        return false;
    }
    for v in 1..=adj.len() - 1 {
        if alive & (1 << (v - 1)) == 0 {
            continue;
        }
        let nbrs = adj[v] & alive;
        if nbrs.count_ones() as usize > r {
            continue;
        }
        let bag: Vec<u32> = (1..=adj.len() as u32 - 1)
            .filter(|&u| nbrs & (1 << (u - 1)) != 0)
            .collect();
        // Fill the bag into a clique, remember what we added.
        let mut added: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in bag.iter().enumerate() {
            for &b in &bag[i + 1..] {
                let (a, b) = (a as usize, b as usize);
                if adj[a] & (1 << (b - 1)) == 0 {
                    adj[a] |= 1 << (b - 1);
                    adj[b] |= 1 << (a - 1);
                    added.push((a, b));
                }
            }
        }
        order.push(v as u32);
        bags.push(bag);
        if search_elim(
            adj,
            alive & !(1 << (v - 1)),
            r,
            order,
            bags,
            failed,
            memo_cap,
        ) {
            return true;
        }
        order.pop();
        bags.pop();
        for (a, b) in added {
            adj[a] &= !(1 << (b - 1));
            adj[b] &= !(1 << (a - 1));
        }
    }
    if failed.len() < memo_cap {
        failed.insert(alive);
    }
    false
}

/// True iff G is a subgraph of some r-tree, equivalently treewidth(G) <= r.
/// Exact search over elimination orderings with memoization; desk scale.
pub fn is_partial_r_tree(g: &Graph, r: u32, budget: &Budget) -> Result<bool> {
    let n = g.n();
    if n as u64 > 63 || (1u128 << n) > budget.max_work as u128 {
        return Err(Error::BudgetExceeded {
            task: format!("is_partial_r_tree on {n} vertices"),
            estimate: format!("2^{n}"),
            budget: budget.max_work,
        });
    }
    if n <= r + 1 {
        return Ok(true);
    }
    Ok(eliminate(g, r, budget.max_work as usize).is_some())
}
