//! Rational polyhedral cones: facets, faces and lineality of a cone given by
//! generators, extreme rays of a cone given by inequalities, and lattice
//! points of zonotopes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::intmat::{combinations, primitive, rank_small, right_kernel_small};
use crate::lattice::{dot, is_zero, neg, Vector};

/// Facet description of `cone(gens)` inside its linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGeometry {
    ambient: usize,
    gens: Vec<Vector>,
    dim: usize,
    perp: Vec<Vector>,
    facets: Vec<Vector>,
}

/// Primitive normals of the hyperplanes (inside the span of `gens`) spanned
/// by linearly independent `(dim - 1)`-subsets of `gens`.
fn hyperplane_normals(ambient: usize, gens: &[Vector], dim: usize, perp: &[Vector]) -> Vec<Vector> {
    let mut out = BTreeSet::new();
    if dim == 0 {
        return Vec::new();
    }
    let nonzero: Vec<&Vector> = gens.iter().filter(|g| !is_zero(g)).collect();
    for subset in combinations(nonzero.len(), dim - 1) {
        let mut rows: Vec<Vector> = subset.iter().map(|&i| nonzero[i].clone()).collect();
        rows.extend(perp.iter().cloned());
        if rank_small(&rows, ambient) != ambient - 1 {
            continue;
        }
        let k = right_kernel_small(&rows, ambient);
        let mut l = primitive(&k[0]);
        if l.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
            l = neg(&l);
        }
        out.insert(l);
    }
    out.into_iter().collect()
}

impl ConeGeometry {
    pub fn new(ambient: usize, gens: &[Vector]) -> ConeGeometry {
        let perp = if gens.is_empty() {
            (0..ambient).map(|i| crate::lattice::unit(ambient, i)).collect()
        } else {
            right_kernel_small(gens, ambient)
        };
        let dim = ambient - perp.len();
        let mut facets = Vec::new();
        for l in hyperplane_normals(ambient, gens, dim, &perp) {
            let vals: Vec<i64> = gens.iter().map(|g| dot(&l, g)).collect();
            if vals.iter().all(|&v| v >= 0) {
                facets.push(l);
            } else if vals.iter().all(|&v| v <= 0) {
                facets.push(neg(&l));
            }
        }
        facets.sort();
        ConeGeometry { ambient, gens: gens.to_vec(), dim, perp, facets }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Inward facet normals (primitive, inside the span).
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the span.
    pub fn perp(&self) -> &[Vector] {
        &self.perp
    }

    pub fn in_span(&self, v: &[i64]) -> bool {
        self.perp.iter().all(|p| dot(p, v) == 0)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.in_span(v) && self.facets.iter().all(|f| dot(f, v) >= 0)
    }

    /// Generator indices of the smallest face containing `v` (which must lie
    /// in the cone).
    pub fn face_of_point(&self, v: &[i64]) -> Vec<usize> {
        let tight: Vec<&Vector> = self.facets.iter().filter(|f| dot(f, v) == 0).collect();
        (0..self.gens.len())
            .filter(|&i| tight.iter().all(|f| dot(f, &self.gens[i]) == 0))
            .collect()
    }

    /// Facets containing every generator of `face`.
    pub fn facets_of_face(&self, face: &[usize]) -> Vec<Vector> {
        self.facets
            .iter()
            .filter(|f| face.iter().all(|&i| dot(f, &self.gens[i]) == 0))
            .cloned()
            .collect()
    }

    /// Is `v` in the relative interior of the face with generator set `face`?
    pub fn in_relative_interior(&self, face: &[usize], v: &[i64]) -> bool {
        self.contains(v) && self.face_of_point(v) == face
    }

    /// All faces as sorted generator-index sets, sorted by size then
    /// lexicographically. The whole cone and the minimal face are included.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.gens.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = alloc::vec![all];
        while let Some(face) = stack.pop() {
            if !seen.insert(face.clone()) {
                continue;
            }
            for f in &self.facets {
                if face.iter().all(|&i| dot(f, &self.gens[i]) == 0) {
                    continue;
                }
                let smaller: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| dot(f, &self.gens[i]) == 0)
                    .collect();
                if !seen.contains(&smaller) {
                    stack.push(smaller);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Generators of the lineality space (the minimal face).
    pub fn lineality_generators(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.facets.iter().all(|f| dot(f, &self.gens[i]) == 0))
            .collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_generators().iter().all(|&i| is_zero(&self.gens[i]))
    }

    /// Dimension of the face spanned by the given generators.
    pub fn face_dim(&self, face: &[usize]) -> usize {
        let rows: Vec<Vector> = face.iter().map(|&i| self.gens[i].clone()).collect();
        if rows.is_empty() {
            0
        } else {
            rank_small(&rows, self.ambient)
        }
    }

    /// Sum of the facet normals: zero on the lineality space and strictly
    /// positive on every other point of the cone.
    pub fn interior_functional(&self) -> Vector {
        let mut p = crate::lattice::zero(self.ambient);
        for f in &self.facets {
            for (a, b) in p.iter_mut().zip(f) {
                *a += b;
            }
        }
        primitive(&p)
    }
}

/// Visit every integer point of the box `lo ≤ x ≤ hi`.
pub fn for_each_box_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&Vector)) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Lattice points `x ∈ ℤⁿ` of the zonotope `Σ [0,1]·g` accepted by `keep`.
pub fn zonotope_points(ambient: usize, gens: &[Vector], mut keep: impl FnMut(&Vector) -> bool) -> Vec<Vector> {
    let perp = if gens.is_empty() {
        (0..ambient).map(|i| crate::lattice::unit(ambient, i)).collect()
    } else {
        right_kernel_small(gens, ambient)
    };
    let dim = ambient - perp.len();
    let normals = hyperplane_normals(ambient, gens, dim, &perp);
    let bounds: Vec<(i64, i64)> = normals
        .iter()
        .map(|l| {
            let mut lo = 0;
            let mut hi = 0;
            for g in gens {
                let v = dot(l, g);
                if v < 0 {
                    lo += v;
                } else {
                    hi += v;
                }
            }
            (lo, hi)
        })
        .collect();
    let mut lo = crate::lattice::zero(ambient);
    let mut hi = crate::lattice::zero(ambient);
    for g in gens {
        for i in 0..ambient {
            if g[i] < 0 {
                lo[i] += g[i];
            } else {
                hi[i] += g[i];
            }
        }
    }
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, |x| {
        if perp.iter().any(|p| dot(p, x) != 0) {
            return;
        }
        for (l, &(a, b)) in normals.iter().zip(&bounds) {
            let v = dot(l, x);
            if v < a || v > b {
                return;
            }
        }
        if keep(x) {
            out.push(x.clone());
        }
    });
    out
}

/// Generators of `{x : a·x ≥ 0 for all a in ineqs}`: primitive extreme rays
/// of the pointed part followed by `±` a lattice basis of the lineality space.
pub fn cone_from_inequalities(ambient: usize, ineqs: &[Vector]) -> Vec<Vector> {
    let ineqs: Vec<Vector> = ineqs.iter().filter(|a| !is_zero(a)).cloned().collect();
    let lineality: Vec<Vector> = if ineqs.is_empty() {
        (0..ambient).map(|i| crate::lattice::unit(ambient, i)).collect()
    } else {
        right_kernel_small(&ineqs, ambient)
            .into_iter()
            .map(|l| if l.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 { neg(&l) } else { l })
            .collect()
    };
    let r = ambient - lineality.len();
    let mut rays = BTreeSet::new();
    if r > 0 {
        for subset in combinations(ineqs.len(), r - 1) {
            let mut rows: Vec<Vector> = subset.iter().map(|&i| ineqs[i].clone()).collect();
            rows.extend(lineality.iter().cloned());
            if rank_small(&rows, ambient) != ambient - 1 {
                continue;
            }
            let k = right_kernel_small(&rows, ambient);
            let d = primitive(&k[0]);
            let vals: Vec<i64> = ineqs.iter().map(|a| dot(a, &d)).collect();
            if vals.iter().all(|&v| v >= 0) {
                rays.insert(d);
            } else if vals.iter().all(|&v| v <= 0) {
                rays.insert(neg(&d));
            }
        }
    }
    let mut out: Vec<Vector> = rays.into_iter().collect();
    for l in &lineality {
        out.push(l.clone());
        out.push(neg(l));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn quadrant() {
        let c = ConeGeometry::new(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.faces().len(), 4);
        assert_eq!(c.interior_functional(), vec![1, 1]);
        assert!(c.is_pointed());
    }

    #[test]
    fn half_line_in_rank_one() {
        let c = ConeGeometry::new(1, &[vec![2], vec![3]]);
        assert_eq!(c.facets(), &[vec![1]]);
        assert_eq!(c.faces(), vec![vec![], vec![0, 1]]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let c = ConeGeometry::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(c.facets(), &[vec![0, 1]]);
        assert_eq!(c.lineality_generators(), vec![0, 1]);
        assert!(!c.is_pointed());
        assert_eq!(c.faces().len(), 2);
    }

    #[test]
    fn whole_line() {
        let c = ConeGeometry::new(1, &[vec![2], vec![-3]]);
        assert!(c.facets().is_empty());
        assert_eq!(c.faces(), vec![vec![0, 1]]);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = ConeGeometry::new(3, &[vec![1, 0, 0], vec![1, 1, 0]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.facets().len(), 2);
        assert!(c.contains(&[3, 1, 0]));
        assert!(!c.contains(&[3, 1, 1]));
        assert!(!c.contains(&[0, 1, 0]));
        assert_eq!(c.face_of_point(&[2, 0, 0]), vec![0]);
    }

    #[test]
    fn dual_of_a1_cone() {
        // σ = cone(e2, 2e1 - e2): σ^∨ = {m2 ≥ 0, 2m1 - m2 ≥ 0}
        let g = cone_from_inequalities(2, &[vec![0, 1], vec![2, -1]]);
        assert_eq!(g, vec![vec![1, 0], vec![1, 2]]);
        let h = cone_from_inequalities(2, &[vec![1, 0]]);
        assert_eq!(h, vec![vec![1, 0], vec![0, 1], vec![0, -1]]);
    }

    #[test]
    fn zonotope_of_square() {
        let pts = zonotope_points(2, &[vec![1, 0], vec![0, 1]], |_| true);
        assert_eq!(pts.len(), 4);
        let pts = zonotope_points(2, &[vec![2, 0], vec![1, 1]], |_| true);
        // parallelogram with vertices 0, (2,0), (1,1), (3,1)
        assert_eq!(pts.len(), 6);
    }
}
