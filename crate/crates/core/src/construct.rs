//! Constructive sources of minimal connected covers: cone-augmentation of
//! triangulations, sphere boundaries, suspensions, Moore spaces, and wedges
//! realizing a prescribed finitely generated abelian homology group.

use itertools::Itertools;

use crate::complex::{wedge, PureComplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Z^free_rank + Z_{m1} + ... + Z_{mb}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn new(free_rank: u32, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&m| m < 2) {
            return Err(Error::Domain("torsion orders must be at least 2".into()));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free(rank: u32) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(0, vec![m])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariant factors d1 | d2 | ... of the torsion part, the canonical form
    /// Smith reduction produces (e.g. Z_2 + Z_3 reports as [6]).
    pub fn canonical_invariant_factors(&self) -> Vec<u64> {
        use std::collections::BTreeMap;
        // prime -> exponents, descending
        let mut powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in &self.torsion {
            let mut m = m;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    powers.entry(p).or_default().push(e);
                }
                p += 1;
            }
            if m > 1 {
                powers.entry(m).or_default().push(1);
            }
        }
        for exps in powers.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let chain_len = powers.values().map(|e| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; chain_len];
        for (p, exps) in &powers {
            for (slot, &e) in exps.iter().enumerate() {
                factors[slot] *= p.pow(e);
            }
        }
        // Largest factor first in `factors`; canonical order is ascending.
        factors.reverse();
        factors
    }
}

/// Joins every maximal simplex of dimension l with a fresh (r-l-1)-simplex of
/// new vertices, turning a triangulation of dimension < r into a pure
/// r-dimensional minimal connected cover of the same homotopy type. Fresh
/// vertices are labeled n+1, n+2, ... following the facet-canonical order;
/// isolated vertices count as maximal 0-simplexes so a single point works.
pub fn cone_augment(t: &SimplicialComplex, r: u32) -> Result<PureComplex> {
    if t.dim() >= r && t.facet_count() > 0 {
        return Err(Error::Domain(format!(
            "cone target dimension {r} must exceed input dimension {}",
            t.dim()
        )));
    }
    if !t.is_connected() {
        return Err(Error::Domain("input must be connected".into()));
    }
    let mut units: Vec<Vec<u32>> = t.facets().to_vec();
    for v in t.isolated_vertices() {
        units.push(vec![v]);
    }
    units.sort();
    let mut next = t.n() + 1;
    let mut facets = Vec::with_capacity(units.len());
    for u in units {
        let fresh = r as usize + 1 - u.len();
        let mut f = u;
        for _ in 0..fresh {
            f.push(next);
            next += 1;
        }
        facets.push(f);
    }
    PureComplex::new(next - 1, r, facets)
}

/// Boundary complex of the (i+1)-simplex: the standard triangulation of S^i.
pub fn sphere_triangulation(i: u32) -> SimplicialComplex {
    let n = i + 2;
    let facets: Vec<Vec<u32>> = (1..=n).combinations(i as usize + 1).collect();
    SimplicialComplex::new(n, facets).expect("boundary complex is valid")
}

/// Join with two fresh apex vertices; shifts homology up one degree.
pub fn suspension(x: &SimplicialComplex) -> SimplicialComplex {
    let a = x.n() + 1;
    let b = x.n() + 2;
    let mut units: Vec<Vec<u32>> = x.facets().to_vec();
    for v in x.isolated_vertices() {
        units.push(vec![v]);
    }
    let mut facets = Vec::with_capacity(units.len() * 2);
    for u in units {
        let mut fa = u.clone();
        fa.push(a);
        let mut fb = u;
        fb.push(b);
        facets.push(fa);
        facets.push(fb);
    }
    SimplicialComplex::new(x.n() + 2, facets).expect("suspension is valid")
}

/// The 6-vertex triangulation of the real projective plane (antipodal
/// quotient of the icosahedron): H_1 = Z_2, everything else trivial.
pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::new(
        6,
        vec![
            vec![1, 2, 4],
            vec![1, 2, 6],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![1, 5, 6],
            vec![2, 3, 5],
            vec![2, 3, 6],
            vec![2, 4, 5],
            vec![3, 4, 6],
            vec![4, 5, 6],
        ],
    )
    .expect("fixed triangulation is valid")
}

/// Moore space M(Z_m, k): homology Z_m in degree k, trivial reduced homology
/// elsewhere. For k = 1 this is a triangulated mapping cone of a simplicial
/// degree-m circle map; higher k comes from (k-1)-fold suspension.
pub fn moore_space(m: u64, k: u32) -> Result<SimplicialComplex> {
    if m < 2 {
        return Err(Error::Domain("torsion order m must be at least 2".into()));
    }
    if k < 1 {
        return Err(Error::Domain("degree k must be at least 1".into()));
    }
    let mut x = moore_dim_one(m);
    for _ in 1..k {
        x = suspension(&x);
    }
    Ok(x)
}

/// Mapping cone of the simplicial degree-m map from a 3m-gon circle onto a
/// triangle circle: prism triangles over each source edge plus a cone over
/// the source circle.
fn moore_dim_one(m: u64) -> SimplicialComplex {
    let m = m as u32;
    let ring = 3 * m; // source circle vertices 1..=3m
    let b = |j: u32| ring + 1 + (j % 3); // target triangle vertices
    let apex = ring + 4;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for i in 0..ring {
        let a0 = i + 1;
        let a1 = (i + 1) % ring + 1;
        let u = b(i);
        let v = b(i + 1);
        facets.push(vec![a0, a1, v]);
        facets.push(vec![a0, u, v]);
        facets.push(vec![apex, a0, a1]);
    }
    SimplicialComplex::new(ring + 4, facets).expect("mapping cone is valid")
}

/// Builds a member of M_r(n) whose degree-k homology is exactly the requested
/// group: a wedge of cone-augmented spheres (free part) and cone-augmented
/// Moore spaces (torsion part).
pub fn realize_group(spec: &GroupSpec, k: u32, r: u32) -> Result<PureComplex> {
    if r < 2 {
        return Err(Error::Domain("need r >= 2".into()));
    }
    if k < 1 {
        return Err(Error::Domain("need k >= 1".into()));
    }
    if spec.torsion.is_empty() {
        if k > r - 1 {
            return Err(Error::Domain(format!(
                "free homology in degree {k} needs k <= r-1 = {}",
                r - 1
            )));
        }
    } else if k > r.saturating_sub(2) {
        // Torsion in degree r-1 is impossible for a minimal connected cover.
        return Err(Error::Domain(format!(
            "torsion in degree {k} needs k <= r-2 = {}",
            r.saturating_sub(2)
        )));
    }
    let mut blocks: Vec<PureComplex> = Vec::new();
    for _ in 0..spec.free_rank {
        blocks.push(cone_augment(&sphere_triangulation(k), r)?);
    }
    for &m in &spec.torsion {
        blocks.push(cone_augment(&moore_space(m, k)?, r)?);
    }
    if blocks.is_empty() {
        // Trivial group: a single r-simplex.
        return PureComplex::new(r + 1, r, vec![(1..=r + 1).collect::<Vec<u32>>()]);
    }
    let mut acc = blocks[0].complex().clone();
    for b in &blocks[1..] {
        acc = wedge(&acc, 1, b.complex(), 1)?;
    }
    PureComplex::from_complex(acc, r)
}
