//! Sampled surfaces of the deformed-sphere family
//!
//! ```text
//!   x² + y² + sinh²(γz)/(γ sinh γ) = r²
//! ```
//!
//! the level sets of the q-deformed Casimir read with its three generator
//! components as real coordinates. At γ = 0 this is the round sphere; with
//! growing |γ| the surface flattens through ellipsoid-, drum- and
//! cylinder-like shapes (the z-extent shrinks while the flanks stay wide).
//!
//! The z-term is taken verbatim from the Casimir expression even though the
//! asymmetry computations use the explicit 4×4 matrix instead (the two
//! disagree; see `models::qcasimir_matrix`): only the sinh²(γz) reading
//! produces the drum/cylinder flattening this family is about. Reading it as
//! sinh²γ·z² would give plain ellipsoids.
//!
//! Meshes are axisymmetric triangulations: rings of `n_phi` vertices at
//! cosine-spaced heights (clustered toward the poles, where dρ/dz diverges),
//! closed by two pole fans. Faces are counter-clockwise seen from outside.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("resolutions must be at least 3, got n_z={0}, n_phi={1}")]
    InvalidResolution(usize, usize),
}

/// Below this |γ| the surface is evaluated as the round sphere (the
/// sinh²(γz)/(γ sinh γ) term tends to z²).
pub const GAMMA_SPHERE_CUTOFF: f64 = 1e-6;

/// A deformed-sphere level set with sampling resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSpec {
    pub gamma: f64,
    /// Level radius r > 0; the surface is the r² level set.
    pub radius: f64,
    /// Number of height samples including both poles (≥ 3).
    pub n_z: usize,
    /// Number of azimuthal samples per ring (≥ 3).
    pub n_phi: usize,
}

impl SurfaceSpec {
    pub fn new(gamma: f64, radius: f64, n_z: usize, n_phi: usize) -> Result<Self, MeshError> {
        if radius <= 0.0 || radius.is_nan() {
            return Err(MeshError::InvalidRadius(radius));
        }
        if n_z < 3 || n_phi < 3 {
            return Err(MeshError::InvalidResolution(n_z, n_phi));
        }
        Ok(Self {
            gamma,
            radius,
            n_z,
            n_phi,
        })
    }

    fn is_spherical(&self) -> bool {
        self.gamma.abs() < GAMMA_SPHERE_CUTOFF
    }

    /// Height of the poles: sinh(γ·z_max)² / (γ sinh γ) = r². Even in γ, so
    /// it is evaluated at |γ|.
    pub fn z_max(&self) -> f64 {
        if self.is_spherical() {
            self.radius
        } else {
            let g = self.gamma.abs();
            (self.radius * (g * g.sinh()).sqrt()).asinh() / g
        }
    }

    /// Ring radius ρ(z) = √(r² − sinh²(γz)/(γ sinh γ)); zero at the poles,
    /// non-increasing in |z|.
    pub fn ring_radius(&self, z: f64) -> f64 {
        let rsq = self.radius * self.radius;
        let val = if self.is_spherical() {
            rsq - z * z
        } else {
            let g = self.gamma;
            rsq - (g * z).sinh().powi(2) / (g * g.sinh())
        };
        val.max(0.0).sqrt()
    }
}

/// Signed residual of the implicit surface equation at a point:
/// x² + y² + sinh²(γz)/(γ sinh γ) − r².
pub fn implicit_residual(p: [f64; 3], spec: &SurfaceSpec) -> f64 {
    let [x, y, z] = p;
    let zterm = if spec.is_spherical() {
        z * z
    } else {
        let g = spec.gamma;
        (g * z).sinh().powi(2) / (g * g.sinh())
    };
    x * x + y * y + zterm - spec.radius * spec.radius
}

/// A triangulated closed surface.
#[derive(Debug, Clone, Serialize)]
pub struct Mesh {
    /// (x, y, z) positions. Index 0 is the south pole, the last index the
    /// north pole; between them lie (n_z − 2) rings of n_phi vertices each,
    /// ordered by increasing z then increasing φ.
    pub vertices: Vec<[f64; 3]>,
    /// Vertex-index triples, counter-clockwise viewed from outside.
    pub faces: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Every edge of a closed manifold triangulation is shared by exactly
    /// two faces; returns the count of edges violating that.
    pub fn boundary_edge_violations(&self) -> usize {
        use std::collections::HashMap;
        let mut edge_uses: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                let key = (a.min(b), a.max(b));
                *edge_uses.entry(key).or_insert(0) += 1;
            }
        }
        edge_uses.values().filter(|&&c| c != 2).count()
    }

    /// Signed volume via the divergence theorem; positive iff faces are
    /// consistently outward counter-clockwise.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let a = self.vertices[f[0]];
                let b = self.vertices[f[1]];
                let c = self.vertices[f[2]];
                let cross = [
                    b[1] * c[2] - b[2] * c[1],
                    b[2] * c[0] - b[0] * c[2],
                    b[0] * c[1] - b[1] * c[0],
                ];
                (a[0] * cross[0] + a[1] * cross[1] + a[2] * cross[2]) / 6.0
            })
            .sum()
    }
}

/// Triangulate the surface of revolution.
///
/// Heights are cosine-spaced, z_k = −z_max·cos(πk/(n_z−1)), mirrored about
/// z = 0 so the sampling is exactly symmetric under z → −z. Vertex count is
/// (n_z − 2)·n_phi + 2 and face count 2·(n_z − 3)·n_phi + 2·n_phi.
pub fn deformed_sphere_mesh(spec: &SurfaceSpec) -> Mesh {
    let n_z = spec.n_z;
    let n_phi = spec.n_phi;
    let z_max = spec.z_max();

    // Exactly mirror-symmetric height samples, poles included.
    let mut heights = vec![0.0f64; n_z];
    for k in 0..n_z {
        let mirror = n_z - 1 - k;
        if k < mirror {
            let z = -z_max * (std::f64::consts::PI * k as f64 / (n_z - 1) as f64).cos();
            heights[k] = z;
            heights[mirror] = -z;
        } else if k == mirror {
            heights[k] = 0.0;
        }
    }

    let mut vertices = Vec::with_capacity((n_z - 2) * n_phi + 2);
    vertices.push([0.0, 0.0, heights[0]]); // south pole
    for &z in &heights[1..n_z - 1] {
        let rho = spec.ring_radius(z);
        for i in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / n_phi as f64;
            vertices.push([rho * phi.cos(), rho * phi.sin(), z]);
        }
    }
    vertices.push([0.0, 0.0, heights[n_z - 1]]); // north pole

    let ring_start = |ring: usize| 1 + ring * n_phi; // ring 0 = lowest interior
    let n_rings = n_z - 2;
    let south = 0;
    let north = vertices.len() - 1;

    let mut faces = Vec::with_capacity(2 * (n_z - 3) * n_phi + 2 * n_phi);
    // South fan: apex below ring 0.
    for i in 0..n_phi {
        let a = ring_start(0) + i;
        let b = ring_start(0) + (i + 1) % n_phi;
        faces.push([south, b, a]);
    }
    // Belts between consecutive rings.
    for ring in 0..n_rings.saturating_sub(1) {
        for i in 0..n_phi {
            let a0 = ring_start(ring) + i;
            let a1 = ring_start(ring) + (i + 1) % n_phi;
            let b0 = ring_start(ring + 1) + i;
            let b1 = ring_start(ring + 1) + (i + 1) % n_phi;
            faces.push([a0, a1, b1]);
            faces.push([a0, b1, b0]);
        }
    }
    // North fan: apex above the last ring.
    for i in 0..n_phi {
        let a = ring_start(n_rings - 1) + i;
        let b = ring_start(n_rings - 1) + (i + 1) % n_phi;
        faces.push([north, a, b]);
    }

    Mesh { vertices, faces }
}
