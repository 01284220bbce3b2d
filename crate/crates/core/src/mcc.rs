//! Recognition, exhaustive enumeration, and structural checks for minimal
//! connected covers: pure r-dimensional connected complexes in which removing
//! any single facet (keeping all vertices) disconnects the complex.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::util::{binom, factorial};

/// A leaf (vertex in exactly one facet), its branch, and whether removing the
/// branch leaves at most one non-singleton component plus isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafReport {
    pub vertex: u32,
    pub branch: Vec<u32>,
    pub external: bool,
}

/// Exact count (when affordable) sandwiched between the treelike lower chain
/// and the partial-r-tree upper chain, plus the asymptotic envelope constants
/// for display.
#[derive(Clone, Debug)]
pub struct CountLedger {
    pub n: u32,
    pub r: u32,
    pub exact: Option<BigUint>,
    pub lower_chain: BigUint,
    pub upper_chain: BigUint,
    pub envelope_a: f64,
    pub envelope_b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumOrder {
    Lex,
    ReverseLex,
}

/// True iff the complex is connected and every single facet removal
/// disconnects it (isolated vertices included).
pub fn is_mcc(y: &PureComplex) -> bool {
    if y.n() < 2 || !y.is_connected() {
        return false;
    }
    y.facets().iter().all(|f| {
        !y.remove_facet(f)
            .expect("facet comes from the complex")
            .is_connected()
    })
}

/// Facet-count window ceil((n-1)/r) <= f_r(Y) <= n-r for members of M_r(n).
pub fn facet_count_bounds(n: u32, r: u32) -> Result<(u64, u64)> {
    if n < r + 1 {
        return Err(Error::Domain(format!(
            "no pure {r}-dimensional complex fits on {n} vertices"
        )));
    }
    let lo = ((n - 1) as u64).div_ceil(r as u64);
    let hi = (n - r) as u64;
    Ok((lo, hi))
}

/// Exhaustively enumerates M_r(n) in canonical order. The search ranges over
/// facet subsets of each admissible size, pruning selections that can no
/// longer cover every vertex; the final definitional check keeps exactly the
/// minimal connected covers.
pub fn enumerate_mcc(
    n: u32,
    r: u32,
    order: EnumOrder,
    budget: &Budget,
) -> Result<Vec<PureComplex>> {
    if r < 1 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    if n <= r {
        return Ok(Vec::new());
    }
    let (lo, hi) = facet_count_bounds(n, r)?;
    let mut candidates: Vec<Vec<u32>> = combinations_of(n, r as usize + 1);
    if order == EnumOrder::ReverseLex {
        candidates.reverse();
    }
    let mut work = BigInt::zero();
    for f in lo..=hi {
        work += binom(candidates.len() as i64, f as i64);
    }
    if !budget.admits(&work) {
        return Err(Error::BudgetExceeded {
            task: format!("enumerate_mcc({n},{r})"),
            estimate: work.to_string(),
            budget: budget.max_work,
        });
    }
    let masks: Vec<u64> = candidates.iter().map(|f| vertex_mask(f)).collect();
    let full: u64 = ((1u128 << n) - 1) as u64;
    let found: Vec<PureComplex> = (0..candidates.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            for f in lo..=hi {
                let mut chosen = vec![first];
                search_subsets(
                    &candidates,
                    &masks,
                    full,
                    n,
                    r,
                    f as usize,
                    masks[first],
                    &mut chosen,
                    &mut out,
                );
            }
            out
        })
        .collect();
    let mut found = found;
    found.sort();
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search_subsets(
    candidates: &[Vec<u32>],
    masks: &[u64],
    full: u64,
    n: u32,
    r: u32,
    want: usize,
    covered: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<PureComplex>,
) {
    let have = chosen.len();
    if have == want {
        if covered == full {
            let facets: Vec<Vec<u32>> =
                chosen.iter().map(|&i| candidates[i].clone()).collect();
            let y = PureComplex::new(n, r, facets).expect("distinct equal-size facets");
            if is_mcc(&y) {
                out.push(y);
            }
        }
        return;
    }
    let missing = (full & !covered).count_ones() as usize;
    let slots = want - have;
    if missing > slots * (r as usize + 1) {
        return;
    }
    let start = chosen.last().map(|&i| i + 1).unwrap_or(0);
    for i in start..candidates.len() {
        if candidates.len() - i < slots {
            break;
        }
        chosen.push(i);
        search_subsets(
            candidates,
            masks,
            full,
            n,
            r,
            want,
            covered | masks[i],
            chosen,
            out,
        );
        chosen.pop();
    }
}

fn vertex_mask(f: &[u32]) -> u64 {
    f.iter().fold(0u64, |m, &v| m | 1 << (v - 1))
}

fn combinations_of(n: u32, size: usize) -> Vec<Vec<u32>> {
    use itertools::Itertools;
    (1..=n).combinations(size).collect()
}

/// All leaves of the complex with branch and externality flags.
pub fn find_leaves(y: &PureComplex) -> Vec<LeafReport> {
    let mut out = Vec::new();
    for v in 1..=y.n() {
        let touching: Vec<&Vec<u32>> =
            y.facets().iter().filter(|f| f.contains(&v)).collect();
        if touching.len() != 1 {
            continue;
        }
        let branch = touching[0].clone();
        let after = y.remove_facet(&branch).expect("branch is a facet");
        let external = after.connected_components().non_singleton_count() <= 1;
        out.push(LeafReport {
            vertex: v,
            branch,
            external,
        });
    }
    out
}

/// The injective step M_r(n) -> M_r(n+1): take the smallest-labeled leaf v
/// with branch {v, v1..vr} and append the facet {v1..vr, n+1} on a fresh
/// vertex.
pub fn extend_to_next(y: &PureComplex) -> Result<PureComplex> {
    let leaves = find_leaves(y);
    let leaf = leaves.first().ok_or(Error::NoLeaf)?;
    let mut new_facet: Vec<u32> = leaf
        .branch
        .iter()
        .copied()
        .filter(|&w| w != leaf.vertex)
        .collect();
    new_facet.push(y.n() + 1);
    new_facet.sort_unstable();
    let mut facets = y.facets().to_vec();
    facets.push(new_facet);
    PureComplex::new(y.n() + 1, y.r(), facets)
}

/// Treelike: pairwise facet intersections of at most one vertex and
/// contractible. Contractibility is decided by acyclicity of the
/// facet/shared-vertex incidence graph and confirmed by greedy collapse to a
/// single vertex; the two must agree.
pub fn is_treelike(y: &PureComplex) -> bool {
    let facets = y.facets();
    for (i, a) in facets.iter().enumerate() {
        for b in &facets[i + 1..] {
            if intersection_size(a, b) > 1 {
                return false;
            }
        }
    }
    let incidence_acyclic = incidence_forest(y);
    let collapsed = y.complex().collapse();
    let collapses_to_point = collapsed.n() == 1 && collapsed.facet_count() == 0;
    assert_eq!(
        incidence_acyclic, collapses_to_point,
        "incidence test and collapse oracle disagree on {y:?}"
    );
    incidence_acyclic
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Acyclicity of the bipartite graph on facets and shared vertices. For a
/// connected complex with pairwise facet intersections <= 1 this decides
/// contractibility.
fn incidence_forest(y: &PureComplex) -> bool {
    let facets = y.facets();
    let shared: Vec<u32> = (1..=y.n())
        .filter(|&v| facets.iter().filter(|f| f.contains(&v)).count() >= 2)
        .collect();
    let nodes = facets.len() + shared.len();
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = 0usize;
    for (fi, f) in facets.iter().enumerate() {
        for (si, &v) in shared.iter().enumerate() {
            if f.contains(&v) {
                edges += 1;
                let (a, b) = (find(&mut parent, fi), find(&mut parent, facets.len() + si));
                if a == b {
                    return false; // cycle
                }
                parent[a] = b;
            }
        }
    }
    let _ = edges;
    true
}

/// Number of treelike members of M_r(n) when n = kr + 1:
/// (n-1)! n^{k-1} / (k! r!^k).
pub fn count_treelike_formula(n: u32, r: u32) -> Result<BigUint> {
    if n < r + 1 || (n - 1) % r != 0 {
        return Err(Error::Domain(format!(
            "need n = kr + 1 for integer k; got n={n}, r={r}"
        )));
    }
    let k = ((n - 1) / r) as u64;
    let numerator = factorial(n as u64 - 1) * BigInt::from(n).pow(k as u32 - 1);
    let denominator = factorial(k) * factorial(r as u64).pow(k as u32);
    let (q, rem) = num_integer::Integer::div_rem(&numerator, &denominator);
    debug_assert!(rem.is_zero());
    Ok(q.to_biguint().expect("count is nonnegative"))
}

/// Lower and upper counting chains for M_r(n), with the exact count when the
/// enumeration fits the budget. The lower chain is the treelike count at the
/// largest n' <= n with n' = 1 (mod r); the upper chain multiplies the
/// labeled r-tree count by 2^(edges of an r-tree).
pub fn bound_chain(n: u32, r: u32, budget: &Budget) -> Result<CountLedger> {
    if n < r + 1 {
        return Err(Error::Domain(format!("need n >= r+1; got n={n}, r={r}")));
    }
    let n_prime = n - ((n - 1) % r);
    let lower_chain = count_treelike_formula(n_prime, r)?;
    let edges = binom(r as i64, 2) + BigInt::from(r as u64 * (n - r) as u64);
    let edges = edges.to_u32().ok_or_else(|| {
        Error::Domain("edge count exceeds u32".into())
    })?;
    let upper_chain = BigUint::from(2u32).pow(edges)
        * crate::rtree::count_r_trees(n, r)?;
    let exact = match enumerate_mcc(n, r, EnumOrder::Lex, budget) {
        Ok(list) => Some(BigUint::from(list.len() as u64)),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let r_fact = factorial(r as u64).to_f64().unwrap_or(f64::INFINITY);
    let envelope_a = 1.0 / (2.0 * std::f64::consts::E * r_fact);
    let envelope_b = 2f64.powi((r * (r + 1) / 2) as i32) * r as f64;
    Ok(CountLedger {
        n,
        r,
        exact,
        lower_chain,
        upper_chain,
        envelope_a,
        envelope_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn pure(n: u32, r: u32, facets: &[&[u32]]) -> PureComplex {
        PureComplex::new(n, r, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn single_simplex_is_mcc() {
        for r in 1..=4 {
            let y = pure(r + 1, r, &[&(1..=r + 1).collect::<Vec<u32>>()]);
            assert!(is_mcc(&y), "r={r}");
        }
    }

    #[test]
    fn tetrahedron_boundary_is_not_mcc() {
        let y = pure(4, 2, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert!(!is_mcc(&y));
    }

    #[test]
    fn shared_edge_pair_is_mcc() {
        let y = pure(4, 2, &[&[1, 2, 3], &[1, 2, 4]]);
        assert!(is_mcc(&y));
    }

    #[test]
    fn facet_count_bounds_examples() {
        assert_eq!(facet_count_bounds(4, 2).unwrap(), (2, 2));
        assert_eq!(facet_count_bounds(7, 3).unwrap(), (2, 4));
        assert_eq!(facet_count_bounds(3, 2).unwrap(), (1, 1));
        assert!(facet_count_bounds(2, 2).is_err());
    }

    #[test]
    fn enumerate_trees_on_three_vertices() {
        let trees = enumerate_mcc(3, 1, EnumOrder::Lex, &Budget::default()).unwrap();
        assert_eq!(trees.len(), 3);
    }

    #[test]
    fn enumerate_m2_4() {
        let list = enumerate_mcc(4, 2, EnumOrder::Lex, &Budget::default()).unwrap();
        assert_eq!(list.len(), 6);
        for y in &list {
            assert_eq!(y.facet_count(), 2);
            assert!(is_mcc(y));
        }
    }

    #[test]
    fn enumerate_single_simplex_cases() {
        for r in 2..=4 {
            let list = enumerate_mcc(r + 1, r, EnumOrder::Lex, &Budget::default()).unwrap();
            assert_eq!(list.len(), 1, "r={r}");
        }
        assert!(enumerate_mcc(2, 2, EnumOrder::Lex, &Budget::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumeration_respects_budget() {
        let tiny = Budget { max_work: 5 };
        assert!(matches!(
            enumerate_mcc(6, 2, EnumOrder::Lex, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn leaves_of_single_triangle_all_external() {
        let y = pure(3, 2, &[&[1, 2, 3]]);
        let leaves = find_leaves(&y);
        assert_eq!(leaves.len(), 3);
        assert!(leaves.iter().all(|l| l.external));
    }

    #[test]
    fn leaves_of_vertex_wedge() {
        let y = pure(5, 2, &[&[1, 2, 3], &[1, 4, 5]]);
        let leaves = find_leaves(&y);
        assert_eq!(leaves.len(), 4);
        assert!(leaves.iter().all(|l| l.external));
    }

    #[test]
    fn leaves_of_two_tetrahedra_wedge() {
        // Member of M_3(7): branches {1,2,3,4} and {4,5,6,7} joined at 4.
        let y = pure(7, 3, &[&[1, 2, 3, 4], &[4, 5, 6, 7]]);
        let leaves = find_leaves(&y);
        assert_eq!(leaves.len(), 6);
        let with_branch: Vec<u32> = leaves
            .iter()
            .filter(|l| l.branch == vec![4, 5, 6, 7])
            .map(|l| l.vertex)
            .collect();
        assert_eq!(with_branch, vec![5, 6, 7]);
        assert!(leaves.iter().all(|l| l.external));
    }

    #[test]
    fn extend_single_triangle() {
        let y = pure(3, 2, &[&[1, 2, 3]]);
        let z = extend_to_next(&y).unwrap();
        assert_eq!(z.n(), 4);
        assert_eq!(z.facets(), &[vec![1, 2, 3], vec![2, 3, 4]]);
        assert!(is_mcc(&z));
    }

    #[test]
    fn extend_is_injective_on_m2_4() {
        let list = enumerate_mcc(4, 2, EnumOrder::Lex, &Budget::default()).unwrap();
        let mut images = std::collections::BTreeSet::new();
        for y in &list {
            let z = extend_to_next(y).unwrap();
            assert!(is_mcc(&z));
            assert!(images.insert(z));
        }
        assert_eq!(images.len(), list.len());
    }

    #[test]
    fn treelike_examples() {
        let wedge = pure(5, 2, &[&[1, 2, 3], &[1, 4, 5]]);
        assert!(is_treelike(&wedge));

        let shared_edge = pure(4, 2, &[&[1, 2, 3], &[1, 2, 4]]);
        assert!(!is_treelike(&shared_edge));

        // Cycle of three triangles glued pairwise at single vertices: an MCC
        // with H_1 = Z, hence not contractible.
        let cycle = pure(6, 2, &[&[1, 2, 3], &[3, 4, 5], &[2, 5, 6]]);
        assert!(is_mcc(&cycle));
        assert!(!is_treelike(&cycle));
        assert_eq!(crate::homology::homology(cycle.complex(), 1).0, 1);
    }

    #[test]
    fn treelike_formula_values() {
        assert_eq!(count_treelike_formula(5, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(count_treelike_formula(7, 2).unwrap(), BigUint::from(735u32));
        assert_eq!(count_treelike_formula(3, 2).unwrap(), BigUint::one());
        assert_eq!(count_treelike_formula(4, 3).unwrap(), BigUint::one());
        assert!(count_treelike_formula(6, 2).is_err());
    }

    #[test]
    fn treelike_formula_matches_filter_on_5_2() {
        let list = enumerate_mcc(5, 2, EnumOrder::Lex, &Budget::default()).unwrap();
        let treelike = list.iter().filter(|y| is_treelike(y)).count() as u64;
        assert_eq!(
            BigUint::from(treelike),
            count_treelike_formula(5, 2).unwrap()
        );
    }

    #[test]
    fn m2_5_has_25_members() {
        // Hand count: 15 one-point wedges of two triangles plus 10 books of
        // three triangles over a shared edge.
        let list = enumerate_mcc(5, 2, EnumOrder::Lex, &Budget::default()).unwrap();
        assert_eq!(list.len(), 25);
    }

    #[test]
    fn enumeration_orders_agree() {
        let a = enumerate_mcc(5, 2, EnumOrder::Lex, &Budget::default()).unwrap();
        let b = enumerate_mcc(5, 2, EnumOrder::ReverseLex, &Budget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bound_chain_examples() {
        let budget = Budget::default();
        let ledger = bound_chain(4, 2, &budget).unwrap();
        assert_eq!(ledger.lower_chain, BigUint::one());
        assert_eq!(ledger.exact, Some(BigUint::from(6u32)));
        assert_eq!(ledger.upper_chain, BigUint::from(192u32));

        let ledger = bound_chain(3, 1, &budget).unwrap();
        assert_eq!(ledger.lower_chain, BigUint::from(3u32));
        assert_eq!(ledger.exact, Some(BigUint::from(3u32)));
        assert_eq!(ledger.upper_chain, BigUint::from(12u32));

        let ledger = bound_chain(5, 2, &budget).unwrap();
        assert_eq!(ledger.lower_chain, BigUint::from(15u32));
        assert!(ledger.lower_chain <= ledger.exact.clone().unwrap());
        assert!(ledger.exact.unwrap() <= ledger.upper_chain);
    }
}
