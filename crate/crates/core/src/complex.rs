//! Finite labeled simplicial complexes represented by their facets.
//!
//! Vertices are the integers `1..=n`; a complex stores only its maximal
//! simplexes (facets) as strictly ascending vertex tuples forming an
//! antichain. Faces below facet level are derived on demand, never stored.
//! Isolated vertices exist implicitly: the vertex count is part of the value,
//! so removing a facet never shrinks the vertex set.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};

/// Immutable labeled simplicial complex. Equality is canonical facet-set
/// equality on the same vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from explicit facets. Each facet is sorted and
    /// deduplicated; a facet strictly contained in another is rejected.
    pub fn new<I>(n: u32, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        if n == 0 {
            return Err(Error::Domain("vertex count must be at least 1".into()));
        }
        let mut cleaned: Vec<Vec<u32>> = Vec::new();
        for mut f in facets {
            if f.is_empty() {
                return Err(Error::EmptyFacet);
            }
            f.sort_unstable();
            f.dedup();
            for &v in &f {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            cleaned.push(f);
        }
        cleaned.sort();
        cleaned.dedup();
        for a in &cleaned {
            for b in &cleaned {
                if a != b && is_subset(a, b) {
                    return Err(Error::FacetContained {
                        inner: a.clone(),
                        outer: b.clone(),
                    });
                }
            }
        }
        Ok(Self { n, facets: cleaned })
    }

    /// Builds the complex spanned by arbitrary faces, silently keeping only
    /// the maximal ones. Used where domination is expected (collapse, wedge).
    pub fn from_faces<I>(n: u32, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        if n == 0 {
            return Err(Error::Domain("vertex count must be at least 1".into()));
        }
        let mut cleaned: Vec<Vec<u32>> = Vec::new();
        for mut f in faces {
            if f.is_empty() {
                continue;
            }
            f.sort_unstable();
            f.dedup();
            for &v in &f {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            cleaned.push(f);
        }
        cleaned.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for f in cleaned {
            if !maximal.iter().any(|m| is_subset(&f, m)) {
                maximal.push(f);
            }
        }
        maximal.sort();
        Ok(Self { n, facets: maximal })
    }

    pub fn empty(n: u32) -> Self {
        Self {
            n,
            facets: Vec::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Dimension of the complex: largest facet dimension, 0 if facet-free.
    pub fn dim(&self) -> u32 {
        self.facets
            .iter()
            .map(|f| f.len() as u32 - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn contains_facet(&self, f: &[u32]) -> bool {
        self.facets.iter().any(|g| g.as_slice() == f)
    }

    /// Number of facets containing vertex `v`.
    pub fn facet_degree(&self, v: u32) -> usize {
        self.facets.iter().filter(|f| f.contains(&v)).count()
    }

    pub fn isolated_vertices(&self) -> Vec<u32> {
        let mut covered = vec![false; self.n as usize + 1];
        for f in &self.facets {
            for &v in f {
                covered[v as usize] = true;
            }
        }
        (1..=self.n).filter(|&v| !covered[v as usize]).collect()
    }

    /// All k-dimensional faces. The 0-faces are all `n` vertices, covered or
    /// not, matching the convention that the vertex set is part of the value.
    pub fn faces_of_dim(&self, k: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return (1..=self.n).map(|v| vec![v]).collect();
        }
        let size = k as usize + 1;
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                for c in f.iter().copied().combinations(size) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Edges of the 1-skeleton as ascending pairs.
    pub fn skeleton_edges(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for pair in f.iter().copied().combinations(2) {
                out.insert((pair[0], pair[1]));
            }
        }
        out
    }

    /// Removes a maximal simplex: the facet set becomes `M(X) - {f}` while the
    /// vertex set stays `1..=n`. Proper faces of `f` survive only where they
    /// are faces of other facets; a facet whose vertices touch nothing else
    /// leaves isolated vertices behind.
    pub fn remove_facet(&self, f: &[u32]) -> Result<Self> {
        if !self.contains_facet(f) {
            return Err(Error::NotAFacet(f.to_vec()));
        }
        let remaining: Vec<Vec<u32>> = self
            .facets
            .iter()
            .filter(|g| g.as_slice() != f)
            .cloned()
            .collect();
        Ok(Self {
            n: self.n,
            facets: remaining,
        })
    }

    /// Facet-path connected components; isolated vertices are singleton blocks.
    pub fn connected_components(&self) -> ComponentPartition {
        let mut dsu = Dsu::new(self.n as usize);
        for f in &self.facets {
            for w in f.windows(2) {
                dsu.union(w[0] as usize - 1, w[1] as usize - 1);
            }
        }
        let mut blocks: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for v in 1..=self.n {
            blocks
                .entry(dsu.find(v as usize - 1))
                .or_default()
                .push(v);
        }
        let mut blocks: Vec<Vec<u32>> = blocks.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        ComponentPartition { blocks }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().block_count() == 1
    }

    /// Greedily performs elementary collapses (remove a free proper face and
    /// its unique cofacet) until none remain, always choosing the
    /// lexicographically smallest free face. Vertices swallowed by a collapse
    /// disappear; the survivors are relabeled 1..m preserving order, so the
    /// result has the same homology as the input.
    pub fn collapse(&self) -> Self {
        let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
        for v in 1..=self.n {
            faces.insert(vec![v]);
        }
        for f in &self.facets {
            for size in 2..=f.len() {
                for c in f.iter().copied().combinations(size) {
                    faces.insert(c);
                }
            }
        }
        loop {
            let mut pair: Option<(Vec<u32>, Vec<u32>)> = None;
            'outer: for tau in &faces {
                let mut cofaces = faces
                    .iter()
                    .filter(|s| s.len() > tau.len() && is_subset(tau, s));
                if let Some(first) = cofaces.next() {
                    if cofaces.next().is_none() {
                        pair = Some((tau.clone(), first.clone()));
                        break 'outer;
                    }
                }
            }
            match pair {
                Some((tau, sigma)) => {
                    faces.remove(&tau);
                    faces.remove(&sigma);
                }
                None => break,
            }
        }
        let survivors: Vec<u32> = faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f[0])
            .collect();
        let relabel: BTreeMap<u32, u32> = survivors
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32 + 1))
            .collect();
        let maximal: Vec<Vec<u32>> = faces
            .iter()
            .filter(|f| f.len() > 1)
            .filter(|f| !faces.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .map(|f| f.iter().map(|v| relabel[v]).collect())
            .collect();
        Self::from_faces(survivors.len() as u32, maximal)
            .expect("collapse output is always well formed")
    }

    /// Applies a vertex relabeling; `perm[i]` is the new label of vertex i+1.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.n as usize {
            return Err(Error::Domain(format!(
                "permutation of length {} on {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n as usize + 1];
        for &v in perm {
            if v == 0 || v > self.n || seen[v as usize] {
                return Err(Error::Domain("not a permutation of 1..=n".into()));
            }
            seen[v as usize] = true;
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| perm[v as usize - 1]).collect())
            .collect::<Vec<Vec<u32>>>();
        Self::new(self.n, facets)
    }
}

/// One-point union: `v2` of `y2` is identified with `v1` of `y1` and the
/// remaining vertices of `y2` are relabeled above `y1.n()` preserving order.
pub fn wedge(
    y1: &SimplicialComplex,
    v1: u32,
    y2: &SimplicialComplex,
    v2: u32,
) -> Result<SimplicialComplex> {
    if v1 == 0 || v1 > y1.n() {
        return Err(Error::VertexOutOfRange { vertex: v1, n: y1.n() });
    }
    if v2 == 0 || v2 > y2.n() {
        return Err(Error::VertexOutOfRange { vertex: v2, n: y2.n() });
    }
    let n = y1.n() + y2.n() - 1;
    let mut map = vec![0u32; y2.n() as usize + 1];
    map[v2 as usize] = v1;
    let mut next = y1.n() + 1;
    for v in 1..=y2.n() {
        if v != v2 {
            map[v as usize] = next;
            next += 1;
        }
    }
    let mut facets: Vec<Vec<u32>> = y1.facets().to_vec();
    for f in y2.facets() {
        facets.push(f.iter().map(|&v| map[v as usize]).collect());
    }
    SimplicialComplex::from_faces(n, facets)
}

/// Pure complex: every facet has exactly r+1 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureComplex {
    complex: SimplicialComplex,
    r: u32,
}

impl PureComplex {
    pub fn new<I>(n: u32, r: u32, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        Self::from_complex(SimplicialComplex::new(n, facets)?, r)
    }

    pub fn from_complex(complex: SimplicialComplex, r: u32) -> Result<Self> {
        if r < 1 {
            return Err(Error::Domain("pure dimension r must be at least 1".into()));
        }
        for f in complex.facets() {
            if f.len() != r as usize + 1 {
                return Err(Error::NotPure { r, facet: f.clone() });
            }
        }
        Ok(Self { complex, r })
    }

    /// Infers r from the (uniform) facet size.
    pub fn infer(complex: SimplicialComplex) -> Result<Self> {
        let Some(first) = complex.facets().first() else {
            return Err(Error::Domain(
                "cannot infer dimension of a facet-free complex".into(),
            ));
        };
        if first.len() < 2 {
            return Err(Error::Domain("pure dimension r must be at least 1".into()));
        }
        let r = first.len() as u32 - 1;
        Self::from_complex(complex, r)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.complex.n()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        self.complex.facets()
    }

    pub fn facet_count(&self) -> usize {
        self.complex.facet_count()
    }

    pub fn remove_facet(&self, f: &[u32]) -> Result<SimplicialComplex> {
        self.complex.remove_facet(f)
    }

    pub fn is_connected(&self) -> bool {
        self.complex.is_connected()
    }
}

/// Partition of `1..=n` into facet-path components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    blocks: Vec<Vec<u32>>,
}

impl ComponentPartition {
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn non_singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() > 1).count()
    }
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // Both sorted ascending.
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'next: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'next,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: u32, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn constructor_canonicalizes() {
        let a = SimplicialComplex::new(4, vec![vec![3, 1, 2], vec![4, 2, 1]]).unwrap();
        let b = cx(4, &[&[1, 2, 4], &[1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.facets(), &[vec![1, 2, 3], vec![1, 2, 4]]);
    }

    #[test]
    fn constructor_rejects_containment_and_bad_vertices() {
        let err = SimplicialComplex::new(4, vec![vec![1, 2, 3], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::FacetContained { .. }));
        let err = SimplicialComplex::new(3, vec![vec![1, 4]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 4, n: 3 }));
        let err = SimplicialComplex::new(3, vec![vec![]]).unwrap_err();
        assert!(matches!(err, Error::EmptyFacet));
    }

    #[test]
    fn single_simplex() {
        let x = cx(3, &[&[1, 2, 3]]);
        assert_eq!(x.facet_count(), 1);
        assert_eq!(x.dim(), 2);
        assert!(x.is_connected());
    }

    #[test]
    fn remove_facet_keeps_vertices() {
        let x = cx(3, &[&[1, 2, 3]]);
        let y = x.remove_facet(&[1, 2, 3]).unwrap();
        assert_eq!(y.n(), 3);
        assert_eq!(y.facet_count(), 0);
        assert_eq!(y.connected_components().block_count(), 3);

        let x = cx(4, &[&[1, 2, 3], &[1, 2, 4]]);
        let y = x.remove_facet(&[1, 2, 4]).unwrap();
        assert_eq!(y.n(), 4);
        assert_eq!(y.facets(), &[vec![1, 2, 3]]);
        assert_eq!(y.isolated_vertices(), vec![4]);
        assert_eq!(y.connected_components().block_count(), 2);

        assert!(matches!(
            x.remove_facet(&[1, 3, 4]),
            Err(Error::NotAFacet(_))
        ));
    }

    #[test]
    fn remove_facet_keeps_shared_faces_implicit() {
        // Two triangles share edge {1,2}; removing one keeps the edge implicit
        // in the other, and the removed triangle's private faces are gone.
        let x = cx(4, &[&[1, 2, 3], &[1, 2, 4]]);
        let y = x.remove_facet(&[1, 2, 3]).unwrap();
        assert_eq!(y.facets(), &[vec![1, 2, 4]]);
        assert!(y.skeleton_edges().contains(&(1, 2)));
        assert!(!y.skeleton_edges().contains(&(1, 3)));
    }

    #[test]
    fn components_examples() {
        let x = cx(4, &[&[1, 2, 3]]);
        let p = x.connected_components();
        assert_eq!(p.blocks(), &[vec![1, 2, 3], vec![4]]);

        let x = cx(5, &[&[1, 2, 3], &[3, 4, 5]]);
        assert!(x.is_connected());

        let x = SimplicialComplex::empty(5);
        assert_eq!(x.connected_components().block_count(), 5);
        assert_eq!(x.connected_components().singleton_count(), 5);
    }

    #[test]
    fn connected_convention_for_tiny_complexes() {
        assert!(SimplicialComplex::empty(1).is_connected());
        assert!(!SimplicialComplex::empty(2).is_connected());
    }

    #[test]
    fn collapse_cone_to_point() {
        let x = cx(3, &[&[1, 2, 3]]);
        let c = x.collapse();
        assert_eq!(c.n(), 1);
        assert_eq!(c.facet_count(), 0);
    }

    #[test]
    fn collapse_circle_unchanged() {
        let x = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(x.collapse(), x);
    }

    #[test]
    fn collapse_preserves_isolated_vertices() {
        let x = cx(4, &[&[1, 2, 3]]);
        let c = x.collapse();
        // Triangle collapses to a point, vertex 4 stays isolated.
        assert_eq!(c.n(), 2);
        assert_eq!(c.facet_count(), 0);
    }

    #[test]
    fn wedge_of_triangles() {
        let t = cx(3, &[&[1, 2, 3]]);
        let w = wedge(&t, 1, &t, 1).unwrap();
        assert_eq!(w.n(), 5);
        assert_eq!(w.facets(), &[vec![1, 2, 3], vec![1, 4, 5]]);
        assert!(w.is_connected());

        assert!(matches!(
            wedge(&t, 4, &t, 1),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn pure_complex_validation() {
        let y = PureComplex::new(4, 2, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(y.r(), 2);
        let err = PureComplex::new(4, 2, vec![vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotPure { .. }));
        let inferred = PureComplex::infer(cx(4, &[&[1, 2, 3], &[1, 2, 4]])).unwrap();
        assert_eq!(inferred.r(), 2);
    }

    #[test]
    fn faces_and_skeleton() {
        let x = cx(4, &[&[1, 2, 3]]);
        assert_eq!(x.faces_of_dim(0).len(), 4);
        assert_eq!(
            x.faces_of_dim(1),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(x.skeleton_edges().len(), 3);
    }

    #[test]
    fn subset_helper() {
        assert!(is_subset(&[1, 3], &[1, 2, 3]));
        assert!(!is_subset(&[1, 4], &[1, 2, 3]));
        assert!(is_subset(&[], &[1]));
    }
}
