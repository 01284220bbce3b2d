//! Exact integer simplicial homology via Smith normal form.
//!
//! Boundary matrices carry the alternating-sign convention on ascending
//! vertex order. Smith reduction runs over arbitrary-precision integers with
//! minimal-magnitude pivot selection; correctness over speed at desk scale.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::complex::{PureComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::util::binom;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Boundary operator from k-chains to (k-1)-chains. Rows are indexed by the
/// (k-1)-faces, columns by the k-faces, both in ascending order; entries lie
/// in {-1, 0, +1}.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub k: u32,
    pub rows: Vec<Vec<u32>>,
    pub cols: Vec<Vec<u32>>,
    pub entries: Vec<Vec<i8>>,
}

impl BoundaryMatrix {
    pub fn to_int_matrix(&self) -> IntMatrix {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }
}

pub fn boundary_matrix(x: &SimplicialComplex, k: u32) -> Result<BoundaryMatrix> {
    let dim = x.dim();
    if k > dim {
        return Err(Error::DimensionOutOfRange { k, dim });
    }
    let cols = x.faces_of_dim(k);
    let rows = if k == 0 {
        Vec::new()
    } else {
        x.faces_of_dim(k - 1)
    };
    let row_index: std::collections::BTreeMap<&[u32], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let mut entries = vec![vec![0i8; cols.len()]; rows.len()];
    if k > 0 {
        for (j, col) in cols.iter().enumerate() {
            for (i, _) in col.iter().enumerate() {
                let mut face = col.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let r = row_index[face.as_slice()];
                entries[r][j] = sign;
            }
        }
    }
    Ok(BoundaryMatrix {
        k,
        rows,
        cols,
        entries,
    })
}

/// Diagonal of the Smith normal form: the nonzero invariant factors
/// `d1 | d2 | ...`. The rank of the matrix is the number of factors returned;
/// a zero matrix yields an empty list.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigUint> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut t = 0usize;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            // Clear column t with remainder steps, re-pivoting on any leftover.
            let mut dirty = false;
            for i in 0..rows {
                if i != t && !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    if !q.is_zero() {
                        for j in t..cols {
                            let sub = &q * &a[t][j];
                            a[i][j] -= sub;
                        }
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in 0..cols {
                if j != t && !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    if !q.is_zero() {
                        for i in t..rows {
                            let sub = &q * &a[i][t];
                            a[i][j] -= sub;
                        }
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = min_abs_nonzero(&a, t).expect("pivot persists");
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                continue;
            }
            // Enforce the divisibility chain before moving on.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for jj in t..cols {
                            let add = a[i][jj].clone();
                            a[t][jj] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for j in t..cols {
                a[t][j] = -a[t][j].clone();
            }
        }
        t += 1;
    }
    (0..t)
        .map(|i| a[i][i].magnitude().clone())
        .collect()
}

fn min_abs_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(from) {
        for (j, v) in row.iter().enumerate().skip(from) {
            if !v.is_zero() {
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).len()
}

/// Betti number and torsion coefficients of H_k(X; Z). Degree 0 is not
/// reduced: betti_0 counts connected components.
pub fn homology(x: &SimplicialComplex, k: u32) -> (u64, Vec<BigUint>) {
    let dim = x.dim();
    if k > dim {
        return (0, Vec::new());
    }
    let faces_k = x.faces_of_dim(k).len() as i64;
    let rank_k = if k == 0 {
        0
    } else {
        let bk = boundary_matrix(x, k).expect("k <= dim");
        rank(&bk.to_int_matrix()) as i64
    };
    let (rank_k1, torsion) = if k == dim {
        (0, Vec::new())
    } else {
        let bk1 = boundary_matrix(x, k + 1).expect("k+1 <= dim");
        let factors = smith_normal_form(&bk1.to_int_matrix());
        let torsion: Vec<BigUint> = factors
            .iter()
            .filter(|d| **d > BigUint::one())
            .cloned()
            .collect();
        (factors.len() as i64, torsion)
    };
    let betti = faces_k - rank_k - rank_k1;
    debug_assert!(betti >= 0);
    (betti as u64, torsion)
}

/// Betti numbers and torsion per dimension 0..=dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    betti: Vec<u64>,
    torsion: Vec<Vec<BigUint>>,
}

impl HomologyProfile {
    pub fn of(x: &SimplicialComplex) -> Self {
        let dim = x.dim() as usize;
        // One Smith form per boundary operator, shared between degrees.
        let mut ranks = vec![0usize; dim + 2];
        let mut torsion_below = vec![Vec::new(); dim + 2];
        for k in 1..=dim {
            let b = boundary_matrix(x, k as u32).expect("in range");
            let factors = smith_normal_form(&b.to_int_matrix());
            ranks[k] = factors.len();
            torsion_below[k] = factors
                .into_iter()
                .filter(|d| *d > BigUint::one())
                .collect();
        }
        let mut betti = Vec::with_capacity(dim + 1);
        let mut torsion = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let faces = x.faces_of_dim(k as u32).len();
            betti.push((faces - ranks[k] - ranks[k + 1]) as u64);
            torsion.push(torsion_below[k + 1].clone());
        }
        // Trim trivial top degrees so profiles of homology-equal complexes of
        // different dimensions compare equal.
        while betti.len() > 1
            && *betti.last().unwrap() == 0
            && torsion.last().unwrap().is_empty()
        {
            betti.pop();
            torsion.pop();
        }
        Self { betti, torsion }
    }

    pub fn dim(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn betti(&self, k: usize) -> u64 {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn torsion(&self, k: usize) -> &[BigUint] {
        self.torsion.get(k).map(|t| t.as_slice()).unwrap_or(&[])
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }
}

/// Checks the homological signature every minimal connected cover must have:
/// H_{r-1} torsion-free and H_r trivial.
pub fn verify_mcc_homology(y: &PureComplex) -> bool {
    let r = y.r();
    let (_, torsion_below_top) = homology(y.complex(), r - 1);
    let (betti_top, torsion_top) = homology(y.complex(), r);
    torsion_below_top.is_empty() && betti_top == 0 && torsion_top.is_empty()
}

/// Sums |H_{r-1}(T; Z)|^2 over all complexes with full (r-1)-skeleton,
/// exactly C(n-1, r) r-facets, and vanishing rational homology in the top two
/// degrees. Feasible only at desk scale; guarded by a work estimate.
pub fn kalai_sum(n: u32, r: u32, budget: &Budget) -> Result<BigUint> {
    if r >= n {
        return Err(Error::Domain(format!("need r < n, got r={r}, n={n}")));
    }
    let top_faces: Vec<Vec<u32>> = (1..=n).combinations(r as usize + 1).collect();
    let target = binom(n as i64 - 1, r as i64);
    let target: usize = target
        .try_into()
        .map_err(|_| Error::Domain("facet target too large".into()))?;
    let work = binom(top_faces.len() as i64, target as i64);
    if !budget.admits(&work) {
        return Err(Error::BudgetExceeded {
            task: format!("kalai_sum({n},{r})"),
            estimate: work.to_string(),
            budget: budget.max_work,
        });
    }
    let rows: Vec<Vec<u32>> = (1..=n).combinations(r as usize).collect();
    let row_index: std::collections::BTreeMap<&[u32], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let subsets: Vec<Vec<usize>> = (0..top_faces.len()).combinations(target).collect();
    let total = subsets
        .par_iter()
        .map(|subset| {
            let mut m: IntMatrix = vec![vec![BigInt::zero(); subset.len()]; rows.len()];
            for (j, &fi) in subset.iter().enumerate() {
                let facet = &top_faces[fi];
                for (i, _) in facet.iter().enumerate() {
                    let mut face = facet.clone();
                    face.remove(i);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m[row_index[face.as_slice()]][j] = BigInt::from(sign);
                }
            }
            let factors = smith_normal_form(&m);
            if factors.len() == target {
                // Q-acyclic: the torsion order is the product of the factors.
                let order: BigUint = factors.iter().product();
                &order * &order
            } else {
                BigUint::zero()
            }
        })
        .reduce(BigUint::zero, |a, b| a + b);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn cx(n: u32, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn big(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn mat_mul(a: &[Vec<i8>], b: &[Vec<i8>]) -> Vec<Vec<i64>> {
        let rows = a.len();
        let inner = b.len();
        let cols = if inner == 0 { 0 } else { b[0].len() };
        let mut out = vec![vec![0i64; cols]; rows];
        for i in 0..rows {
            for k in 0..inner {
                if a[i][k] != 0 {
                    for j in 0..cols {
                        out[i][j] += a[i][k] as i64 * b[k][j] as i64;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn boundary_of_single_edge() {
        let x = cx(2, &[&[1, 2]]);
        let b = boundary_matrix(&x, 1).unwrap();
        assert_eq!(b.rows, vec![vec![1], vec![2]]);
        assert_eq!(b.entries, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn boundary_of_hollow_triangle() {
        let x = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let b = boundary_matrix(&x, 1).unwrap();
        assert_eq!(b.entries.len(), 3);
        assert_eq!(b.entries[0].len(), 3);
        for j in 0..3 {
            let nonzero: Vec<i8> = (0..3).map(|i| b.entries[i][j]).filter(|&e| e != 0).collect();
            assert_eq!(nonzero.len(), 2);
            assert_eq!(nonzero.iter().map(|&e| e as i64).sum::<i64>(), 0);
        }
        assert!(matches!(
            boundary_matrix(&x, 2),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn boundary_composition_vanishes() {
        let x = cx(5, &[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        for k in 1..=2u32 {
            let low = boundary_matrix(&x, k).unwrap();
            let high = boundary_matrix(&x, k + 1).unwrap();
            let prod = mat_mul(&low.entries, &high.entries);
            assert!(prod.iter().flatten().all(|&v| v == 0), "k={k}");
        }
    }

    #[test]
    fn snf_examples() {
        let id3 = big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            smith_normal_form(&id3),
            vec![1u32, 1, 1].into_iter().map(BigUint::from).collect::<Vec<_>>()
        );
        // Oracle for [[2,0],[0,3]]: d1 = gcd of entries = 1, d1*d2 = gcd of
        // 2x2 minors = 6, so factors are (1, 6).
        let m = big(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            smith_normal_form(&m),
            vec![BigUint::from(1u32), BigUint::from(6u32)]
        );
        let zero = big(&[&[0, 0], &[0, 0]]);
        assert!(smith_normal_form(&zero).is_empty());
    }

    #[test]
    fn snf_known_matrix() {
        let m = big(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let f = smith_normal_form(&m);
        assert_eq!(
            f,
            vec![BigUint::from(1u32), BigUint::from(3u32), BigUint::from(21u32)]
        );
    }

    #[test]
    fn homology_of_circle_and_spheres() {
        let circle = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(homology(&circle, 0), (1, vec![]));
        assert_eq!(homology(&circle, 1), (1, vec![]));

        let sphere = cx(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(homology(&sphere, 0), (1, vec![]));
        assert_eq!(homology(&sphere, 1), (0, vec![]));
        assert_eq!(homology(&sphere, 2), (1, vec![]));
    }

    #[test]
    fn homology_counts_components_unreduced() {
        let x = cx(4, &[&[1, 2]]);
        assert_eq!(homology(&x, 0).0, 3);
    }

    #[test]
    fn homology_of_projective_plane() {
        let rp2 = crate::construct::projective_plane();
        assert_eq!(homology(&rp2, 0), (1, vec![]));
        assert_eq!(homology(&rp2, 1), (0, vec![BigUint::from(2u32)]));
        assert_eq!(homology(&rp2, 2), (0, vec![]));
    }

    #[test]
    fn homology_invariant_under_relabeling() {
        let rp2 = crate::construct::projective_plane();
        let perm = vec![3, 1, 6, 2, 5, 4];
        let relabeled = rp2.relabel(&perm).unwrap();
        assert_eq!(
            HomologyProfile::of(&rp2),
            HomologyProfile::of(&relabeled)
        );
    }

    #[test]
    fn collapse_preserves_homology_profile() {
        let corpus = [
            cx(4, &[&[1, 2, 3], &[1, 2, 4]]),
            cx(5, &[&[1, 2, 3], &[3, 4], &[4, 5]]),
            cx(6, &[&[1, 2, 3], &[3, 4, 5], &[2, 5, 6]]),
            cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
        ];
        for x in &corpus {
            assert_eq!(
                HomologyProfile::of(x),
                HomologyProfile::of(&x.collapse()),
                "complex {x:?}"
            );
        }
    }

    #[test]
    fn kalai_sum_small_cases() {
        let budget = Budget::default();
        assert_eq!(kalai_sum(4, 2, &budget).unwrap(), BigUint::from(4u32));
        // Cayley base case: trees on n vertices.
        assert_eq!(kalai_sum(4, 1, &budget).unwrap(), BigUint::from(16u32));
        assert_eq!(kalai_sum(5, 1, &budget).unwrap(), BigUint::from(125u32));
        assert_eq!(kalai_sum(5, 3, &budget).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn kalai_sum_guard() {
        let tiny = Budget { max_work: 10 };
        assert!(matches!(
            kalai_sum(6, 2, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(kalai_sum(3, 3, &Budget::default()).is_err());
    }

    #[test]
    fn verify_mcc_homology_on_wedge_of_simplexes() {
        let y = PureComplex::new(5, 2, vec![vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        assert!(verify_mcc_homology(&y));
    }

    #[test]
    fn profile_accessors() {
        let circle = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let p = HomologyProfile::of(&circle);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.betti(0), 1);
        assert_eq!(p.betti(1), 1);
        assert_eq!(p.betti(7), 0);
        assert!(p.torsion(1).is_empty());
        assert!(!p.has_torsion());
        let total: u64 = (0..=p.dim()).map(|k| p.betti(k)).sum();
        assert_eq!(total.to_u64().unwrap(), 2);
    }
}
