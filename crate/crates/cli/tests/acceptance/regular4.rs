//! Coordinate-driven geometry of the 600-cell and its polar dual, the
//! 120-cell. Everything is derived from the 120 explicit vertices of the
//! unit-circumradius 600-cell: cells are 4-cliques of the edge graph, cell
//! volumes come from Gram determinants, and dual-cell (dodecahedron)
//! volumes from face-fan triangulation. No volume or inradius formula is
//! assumed, so this is an independent oracle for the closed-form constants
//! used in the insphere-ratio table.

const PHI: f64 = 1.618_033_988_749_895;

type V4 = [f64; 4];

fn dot(a: &V4, b: &V4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &V4, b: &V4) -> V4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn scale(a: &V4, s: f64) -> V4 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

/// 3-volume of the tetrahedron (a, b, c, d) embedded in R^4, via the Gram
/// determinant of its edge matrix.
fn tetra_volume(a: &V4, b: &V4, c: &V4, d: &V4) -> f64 {
    let e = [sub(b, a), sub(c, a), sub(d, a)];
    let mut gram = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = dot(&e[i], &e[j]);
        }
    }
    let det = gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1])
        - gram[0][1] * (gram[1][0] * gram[2][2] - gram[1][2] * gram[2][0])
        + gram[0][2] * (gram[1][0] * gram[2][1] - gram[1][1] * gram[2][0]);
    det.max(0.0).sqrt() / 6.0
}

/// The 120 vertices of the 600-cell with circumradius 1: 8 permutations of
/// (±1,0,0,0), 16 of (±1/2)^4, and 96 even permutations of
/// (±φ/2, ±1/2, ±1/(2φ), 0).
pub fn vertices_600cell() -> Vec<V4> {
    let mut v = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut p = [0.0; 4];
            p[i] = s;
            v.push(p);
        }
    }
    for mask in 0..16u32 {
        let mut p = [0.5; 4];
        for (i, q) in p.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *q = -0.5;
            }
        }
        v.push(p);
    }
    let base = [PHI / 2.0, 0.5, 1.0 / (2.0 * PHI), 0.0];
    for perm in even_permutations() {
        for mask in 0..8u32 {
            let mut p = [0.0; 4];
            let mut sign_index = 0;
            for (slot, &src) in perm.iter().enumerate() {
                let mut value = base[src];
                if src < 3 {
                    if mask & (1 << sign_index) != 0 {
                        value = -value;
                    }
                    sign_index += 1;
                }
                p[slot] = value;
            }
            v.push(p);
        }
    }
    assert_eq!(v.len(), 120);
    v
}

/// The 12 even permutations of (0, 1, 2, 3).
fn even_permutations() -> Vec<[usize; 4]> {
    let mut perms = Vec::new();
    let mut items = [0usize, 1, 2, 3];
    permute(&mut items, 0, &mut perms);
    perms.into_iter().filter(|p| parity(p) == 0).collect()
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn parity(p: &[usize; 4]) -> usize {
    let mut inversions = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

pub struct Polytope4 {
    /// Hypervolume.
    pub volume: f64,
    /// Distance from the center to the cells (all cells tangent).
    pub inradius: f64,
}

impl Polytope4 {
    /// The scale-invariant insphere volume ratio vol / (r^4 κ_4).
    pub fn insphere_ratio(&self) -> f64 {
        let kappa4 = std::f64::consts::PI * std::f64::consts::PI / 2.0;
        self.volume / (self.inradius.powi(4) * kappa4)
    }
}

/// Both polytopes measured from coordinates: the 600-cell itself and its
/// polar dual (a 120-cell with inradius exactly 1).
pub fn measure_from_coordinates() -> (Polytope4, Polytope4) {
    let verts = vertices_600cell();
    let n = verts.len();

    // edge graph: the 600-cell edge length at circumradius 1 is 1/φ
    let edge2 = 1.0 / (PHI * PHI);
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = sub(&verts[i], &verts[j]);
            if (dot(&d, &d) - edge2).abs() < 1e-9 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for (i, neighbors) in adj.iter().enumerate() {
        assert_eq!(neighbors.len(), 12, "vertex {i} degree");
    }

    // tetrahedral cells = 4-cliques
    let mut cells: Vec<[usize; 4]> = Vec::new();
    for a in 0..n {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            for &c in adj[b].iter().filter(|&&c| c > b && adj[a].contains(&c)) {
                for &d in adj[c]
                    .iter()
                    .filter(|&&d| d > c && adj[a].contains(&d) && adj[b].contains(&d))
                {
                    cells.push([a, b, c, d]);
                }
            }
        }
    }
    assert_eq!(cells.len(), 600, "cell count");

    // 600-cell: pyramid decomposition over the cells
    let mut surface = 0.0;
    let mut inradius_600 = f64::NAN;
    let mut centroids = Vec::with_capacity(cells.len());
    for cell in &cells {
        let [a, b, c, d] = *cell;
        let centroid = scale(
            &[
                verts[a][0] + verts[b][0] + verts[c][0] + verts[d][0],
                verts[a][1] + verts[b][1] + verts[c][1] + verts[d][1],
                verts[a][2] + verts[b][2] + verts[c][2] + verts[d][2],
                verts[a][3] + verts[b][3] + verts[c][3] + verts[d][3],
            ],
            0.25,
        );
        let r = dot(&centroid, &centroid).sqrt();
        // all four vertices must be equidistant from the hyperplane normal,
        // confirming the centroid is the tangency point
        for &idx in cell {
            assert!((dot(&verts[idx], &centroid) - r * r).abs() < 1e-9);
        }
        if inradius_600.is_nan() {
            inradius_600 = r;
        } else {
            assert!((r - inradius_600).abs() < 1e-9, "cells not equidistant");
        }
        surface += tetra_volume(&verts[a], &verts[b], &verts[c], &verts[d]);
        centroids.push(centroid);
    }
    let cell_600 = Polytope4 {
        volume: surface * inradius_600 / 4.0,
        inradius: inradius_600,
    };

    // Polar dual: cells of {x : <x, v> <= 1} are dodecahedra tangent at the
    // 600-cell vertices v; the dual vertex for cell C is centroid(C)/|c|².
    let dual_vertex: Vec<V4> = centroids
        .iter()
        .map(|c| scale(c, 1.0 / dot(c, c)))
        .collect();
    let mut cells_at_vertex = vec![Vec::new(); n];
    for (ci, cell) in cells.iter().enumerate() {
        for &v in cell {
            cells_at_vertex[v].push(ci);
        }
    }

    let mut dual_surface = 0.0;
    for v in 0..n {
        assert_eq!(cells_at_vertex[v].len(), 20, "icosahedral vertex figure");
        let apex = verts[v]; // tangency point of the dodecahedral cell
        for &dv in &cells_at_vertex[v] {
            assert!((dot(&dual_vertex[dv], &verts[v]) - 1.0).abs() < 1e-9);
        }
        // one pentagonal face per neighbor u: the five cells containing
        // both v and u
        for &u in &adj[v] {
            let face: Vec<usize> = cells_at_vertex[v]
                .iter()
                .copied()
                .filter(|&ci| cells[ci].contains(&u))
                .collect();
            assert_eq!(face.len(), 5, "pentagon around edge");
            let mut center = [0.0; 4];
            for &ci in &face {
                for k in 0..4 {
                    center[k] += dual_vertex[ci][k] / 5.0;
                }
            }
            // order the pentagon by angle around its center
            let axis_a = sub(&dual_vertex[face[0]], &center);
            let norm_a = dot(&axis_a, &axis_a).sqrt();
            let axis_a = scale(&axis_a, 1.0 / norm_a);
            // second in-plane axis by Gram-Schmidt against axis_a
            let mut axis_b = [0.0; 4];
            for &ci in &face[1..] {
                let d = sub(&dual_vertex[ci], &center);
                let proj = dot(&d, &axis_a);
                let rest = sub(&d, &scale(&axis_a, proj));
                let len = dot(&rest, &rest).sqrt();
                if len > 1e-9 {
                    axis_b = scale(&rest, 1.0 / len);
                    break;
                }
            }
            let mut ordered: Vec<(f64, usize)> = face
                .iter()
                .map(|&ci| {
                    let d = sub(&dual_vertex[ci], &center);
                    (dot(&d, &axis_b).atan2(dot(&d, &axis_a)), ci)
                })
                .collect();
            ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
            // fan the pentagon from its center; each face is shared by the
            // apex tetrahedra exactly once
            for i in 0..5 {
                let p1 = dual_vertex[ordered[i].1];
                let p2 = dual_vertex[ordered[(i + 1) % 5].1];
                dual_surface += tetra_volume(&apex, &center, &p1, &p2);
            }
        }
    }
    // The (v, ·) pass assembles the full boundary of the dodecahedral cell
    // at v, so dual_surface sums every cell exactly once.
    let cell_120 = Polytope4 {
        volume: dual_surface / 4.0,
        inradius: 1.0,
    };

    (cell_600, cell_120)
}
