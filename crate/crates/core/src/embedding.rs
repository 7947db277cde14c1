//! Rotation systems, face tracing, and canonical codes for embedded bipartite graphs.
//!
//! A dart is an edge with a direction: dart `2e` runs from the A end of edge `e` to its B
//! end and dart `2e + 1` runs back. Rotations list incident edges counter-clockwise, and
//! a face walk continues from the head of a dart along the counter-clockwise successor, so
//! the face lies to the right of every dart of its walk.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::arrangement::{planarize, ArrangementError};
use crate::drawing::{Drawing, Part, VertexId};
use crate::faces::face_set;
use crate::surface::SurfaceKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("not-embedded: the drawing has {0} crossing(s)")]
    NotEmbedded(usize),
    #[error("wrong-surface: canonicalization needs a torus drawing")]
    WrongSurface,
    #[error("disconnected graph")]
    Disconnected,
    #[error("malformed rotation: {0}")]
    Malformed(String),
    #[error("the designated cycle a1 b2 a2 b1 is missing")]
    MissingCycle,
    #[error("face grouping does not match the walks: {0}")]
    BadGrouping(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub vertices: Vec<VertexId>,
    /// Vertex indices `(A end, B end)` of each edge.
    pub edges: Vec<(usize, usize)>,
    /// Counter-clockwise cyclic order of incident edge indices at each vertex.
    pub rotation: Vec<Vec<usize>>,
    /// Position of each edge in the rotation at its A end and at its B end.
    pos: Vec<[usize; 2]>,
}

impl RotationSystem {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, EmbeddingError> {
        if rotation.len() != vertices.len() {
            return Err(EmbeddingError::Malformed("one rotation per vertex".into()));
        }
        let mut pos = vec![[usize::MAX; 2]; edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let Some(&(a, b)) = edges.get(e) else {
                    return Err(EmbeddingError::Malformed(format!("unknown edge {e}")));
                };
                let side = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return Err(EmbeddingError::Malformed(format!("edge {e} is not incident to {}", vertices[v])));
                };
                if pos[e][side] != usize::MAX {
                    return Err(EmbeddingError::Malformed(format!("edge {e} repeated at {}", vertices[v])));
                }
                pos[e][side] = i;
            }
        }
        for (e, &(a, b)) in edges.iter().enumerate() {
            if vertices[a].part != Part::A || vertices[b].part != Part::B {
                return Err(EmbeddingError::Malformed(format!("edge {e} is not A-B")));
            }
            if pos[e].contains(&usize::MAX) {
                return Err(EmbeddingError::Malformed(format!("edge {e} missing from a rotation")));
            }
        }
        Ok(RotationSystem { vertices, edges, rotation, pos })
    }

    /// Complete bipartite graph with the given rotations, written as lists of opposite vertices.
    pub fn complete_bipartite(a_rot: &[Vec<usize>], n: usize) -> Result<Self, EmbeddingError> {
        let m = a_rot.len();
        let mut vertices: Vec<VertexId> = (1..=m as u32).map(VertexId::a).collect();
        vertices.extend((1..=n as u32).map(VertexId::b));
        let edges: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).collect();
        let mut rotation: Vec<Vec<usize>> = a_rot
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&j| i * n + j).collect())
            .collect();
        for j in 0..n {
            rotation.push((0..m).map(|i| i * n + j).collect());
        }
        RotationSystem::new(vertices, edges, rotation)
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn tail(&self, d: usize) -> usize {
        let (a, b) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Position of the dart's edge in the rotation at the dart's tail.
    pub fn position(&self, d: usize) -> usize {
        self.pos[d / 2][d % 2]
    }

    /// The dart leaving vertex `v` along edge `e`.
    pub fn dart_from(&self, v: usize, e: usize) -> usize {
        if self.edges[e].0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    pub fn next(&self, d: usize) -> usize {
        let v = self.head(d);
        let rot = &self.rotation[v];
        let p = self.position(d ^ 1);
        self.dart_from(v, rot[(p + 1) % rot.len()])
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<usize> {
        let (ia, ib) = (self.vertex_index(a)?, self.vertex_index(b)?);
        self.edges.iter().position(|&e| e == (ia, ib))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.rotation[v] {
                let (a, b) = self.edges[e];
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rotation
            .iter()
            .enumerate()
            .filter(|(_, r)| r.len() > 2)
            .map(|(v, r)| {
                let names: Vec<String> = r
                    .iter()
                    .map(|&e| {
                        let (a, b) = self.edges[e];
                        self.vertices[if a == v { b } else { a }].to_string()
                    })
                    .collect();
                format!("{}({})", self.vertices[v], names.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Boundary walks of the faces of a rotation system, each starting at its smallest dart.
pub fn faces_of_rotation(rs: &RotationSystem) -> Vec<Vec<usize>> {
    let mut seen = vec![false; rs.dart_count()];
    let mut walks = Vec::new();
    for d in 0..rs.dart_count() {
        if seen[d] {
            continue;
        }
        let mut w = Vec::new();
        let mut x = d;
        while !seen[x] {
            seen[x] = true;
            w.push(x);
            x = rs.next(x);
        }
        walks.push(w);
    }
    walks
}

pub fn genus_of(rs: &RotationSystem) -> Result<usize, EmbeddingError> {
    if !rs.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let chi = rs.vertices.len() as i64 - rs.edges.len() as i64 + faces_of_rotation(rs).len() as i64;
    Ok(((2 - chi) / 2) as usize)
}

pub fn reflect(rs: &RotationSystem) -> RotationSystem {
    let rotation = rs
        .rotation
        .iter()
        .map(|r| {
            let mut r = r.clone();
            if !r.is_empty() {
                r[1..].reverse();
            }
            r
        })
        .collect();
    RotationSystem::new(rs.vertices.clone(), rs.edges.clone(), rotation).expect("reflection keeps a valid rotation")
}

/// A rotation system together with the surface faces its walks belong to.
///
/// Several walks grouped into one face, or a face whose Euler characteristic is below 1,
/// describe a non-cellular embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub rs: RotationSystem,
    pub walks: Vec<Vec<usize>>,
    pub face_of_walk: Vec<usize>,
    pub face_euler: Vec<i64>,
}

impl Embedding {
    pub fn cellular(rs: RotationSystem) -> Self {
        let walks = faces_of_rotation(&rs);
        let n = walks.len();
        Embedding { rs, walks, face_of_walk: (0..n).collect(), face_euler: vec![1; n] }
    }

    /// Groups walks into faces; `group[i]` is an arbitrary face key for walk `i`.
    pub fn with_faces(rs: RotationSystem, group: &[usize], euler_by_key: &BTreeMap<usize, i64>) -> Result<Self, EmbeddingError> {
        let walks = faces_of_rotation(&rs);
        if group.len() != walks.len() {
            return Err(EmbeddingError::BadGrouping(format!("{} keys for {} walks", group.len(), walks.len())));
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut face_euler = Vec::new();
        let mut face_of_walk = Vec::new();
        for &k in group {
            let next = renumber.len();
            let id = *renumber.entry(k).or_insert(next);
            if id == face_euler.len() {
                let chi = *euler_by_key
                    .get(&k)
                    .ok_or_else(|| EmbeddingError::BadGrouping(format!("no Euler characteristic for face {k}")))?;
                face_euler.push(chi);
            }
            face_of_walk.push(id);
        }
        Ok(Embedding { rs, walks, face_of_walk, face_euler })
    }

    /// A planar rotation system with a handle joining faces `f` and `g` (possibly equal).
    pub fn with_handle(rs: RotationSystem, f: usize, g: usize) -> Self {
        let mut e = Embedding::cellular(rs);
        let n = e.walks.len();
        let mut group: Vec<usize> = (0..n).collect();
        group[g] = f;
        let mut euler: BTreeMap<usize, i64> = (0..n).map(|i| (i, 1)).collect();
        euler.insert(f, if f == g { -1 } else { 0 });
        e = Embedding::with_faces(e.rs, &group, &euler).expect("grouping of own walks");
        e
    }

    pub fn face_count(&self) -> usize {
        self.face_euler.len()
    }

    pub fn walks_of_face(&self, f: usize) -> Vec<usize> {
        (0..self.walks.len()).filter(|&w| self.face_of_walk[w] == f).collect()
    }

    pub fn face_of_dart(&self) -> Vec<usize> {
        let mut out = vec![0; self.rs.dart_count()];
        for (w, walk) in self.walks.iter().enumerate() {
            for &d in walk {
                out[d] = self.face_of_walk[w];
            }
        }
        out
    }

    pub fn is_cellular(&self) -> bool {
        (0..self.face_count()).all(|f| self.face_euler[f] == 1 && self.walks_of_face(f).len() == 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.rs.vertices.len() as i64 - self.rs.edges.len() as i64 + self.face_euler.iter().sum::<i64>()
    }

    /// Vertices on the closure of face `f`.
    pub fn face_vertices(&self, f: usize) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .walks_of_face(f)
            .into_iter()
            .flat_map(|w| self.walks[w].iter().map(|&d| self.rs.vertices[self.rs.tail(d)]))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn all_b_faces(&self) -> Vec<usize> {
        let bs: Vec<VertexId> = self.rs.vertices.iter().copied().filter(|v| v.part == Part::B).collect();
        (0..self.face_count())
            .filter(|&f| {
                let vs = self.face_vertices(f);
                bs.iter().all(|b| vs.contains(b))
            })
            .collect()
    }

    pub fn reflect(&self) -> Embedding {
        let rs = reflect(&self.rs);
        let walks = faces_of_rotation(&rs);
        let old = self.face_of_dart();
        let face_of_walk = walks.iter().map(|w| old[w[0] ^ 1]).collect();
        Embedding { rs, walks, face_of_walk, face_euler: self.face_euler.clone() }
    }

    /// Darts of the designated cycle a1 -> b2 -> a2 -> b1 -> a1.
    pub fn designated_cycle(&self) -> Result<[usize; 4], EmbeddingError> {
        let (a1, a2, b1, b2) = (VertexId::a(1), VertexId::a(2), VertexId::b(1), VertexId::b(2));
        let rs = &self.rs;
        let e = |a, b| rs.edge_between(a, b).ok_or(EmbeddingError::MissingCycle);
        Ok([2 * e(a1, b2)?, 2 * e(a2, b2)? + 1, 2 * e(a2, b1)?, 2 * e(a1, b1)? + 1])
    }

    /// Whether the designated cycle leaves its complement connected.
    pub fn cycle_is_essential(&self) -> Result<bool, EmbeddingError> {
        let cycle: Vec<usize> = self.designated_cycle()?.iter().map(|d| d / 2).collect();
        let fod = self.face_of_dart();
        let mut parent: Vec<usize> = (0..self.face_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            r
        }
        for e in 0..self.rs.edges.len() {
            if cycle.contains(&e) {
                continue;
            }
            let (x, y) = (find(&mut parent, fod[2 * e]), find(&mut parent, fod[2 * e + 1]));
            parent[x.max(y)] = x.min(y);
        }
        Ok((0..self.face_count()).all(|f| find(&mut parent, f) == 0))
    }

    pub fn describe(&self) -> String {
        let mut faces: Vec<String> = Vec::new();
        for f in 0..self.face_count() {
            let ws = self.walks_of_face(f);
            if ws.len() > 1 || self.face_euler[f] != 1 {
                faces.push(format!(
                    "{{{} chi {}}}",
                    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","),
                    self.face_euler[f]
                ));
            }
        }
        if faces.is_empty() {
            self.rs.to_string()
        } else {
            format!("{} faces {}", self.rs, faces.join(" "))
        }
    }
}

/// The rotation system of a crossing-free torus drawing.
pub fn rotation_system_of(d: &Drawing) -> Result<RotationSystem, EmbeddingError> {
    if d.surface.kind != SurfaceKind::Torus {
        return Err(EmbeddingError::WrongSurface);
    }
    let arr = planarize(d)?;
    if arr.crossing_count() > 0 {
        return Err(EmbeddingError::NotEmbedded(arr.crossing_count()));
    }
    let vertices: Vec<VertexId> = d.vertices.keys().copied().collect();
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edges = d.edges.iter().map(|c| (index[&c.a], index[&c.b])).collect();
    let rotation = vertices
        .iter()
        .map(|v| {
            let n = arr.node_of_vertex(*v).expect("vertex node");
            arr.rotations[n].iter().map(|end| arr.segments[end.segment].edge).collect()
        })
        .collect();
    RotationSystem::new(vertices, edges, rotation)
}

/// The embedding of a crossing-free torus drawing, with faces taken from the surface.
pub fn embedding_of(d: &Drawing) -> Result<Embedding, EmbeddingError> {
    let rs = rotation_system_of(d)?;
    let fs = face_set(d)?;
    let mut geo_face: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for (i, f) in fs.faces.iter().enumerate() {
        for w in &f.walks {
            for &dart in &w.darts {
                geo_face.insert(dart, i);
            }
        }
    }
    let walks = faces_of_rotation(&rs);
    let mut group = Vec::new();
    for w in &walks {
        // The right side of an A-to-B dart is the left side of the same segment run backwards.
        let keys: Vec<usize> = w.iter().map(|&x| geo_face[&(x / 2, x % 2 == 1)]).collect();
        if keys.iter().any(|&k| k != keys[0]) {
            return Err(EmbeddingError::BadGrouping("walk spans several surface faces".into()));
        }
        group.push(keys[0]);
    }
    let euler: BTreeMap<usize, i64> = fs.faces.iter().enumerate().map(|(i, f)| (i, f.euler)).collect();
    Embedding::with_faces(rs, &group, &euler)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Oriented,
    Reflective,
}

/// Which vertex relabelings count as isomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelGroup {
    /// No relabeling.
    Fixed,
    /// Any relabeling within each part.
    Parts,
    /// Relabelings keeping the roles a, b on the cycle a1 b2 a2 b1, and other b, and keeping
    /// the direction of that cycle (reversed together with the orientation).
    Sided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Convention {
    pub orientation: Orientation,
    pub labels: LabelGroup,
}

impl Convention {
    pub fn new(orientation: Orientation, labels: LabelGroup) -> Self {
        Convention { orientation, labels }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Oriented => "oriented",
            Orientation::Reflective => "reflective",
        };
        let l = match self.labels {
            LabelGroup::Fixed => "fixed",
            LabelGroup::Parts => "parts",
            LabelGroup::Sided => "sided",
        };
        write!(f, "{o}/{l}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub code: String,
    pub chiral: bool,
}

impl ClassId {
    /// Short stable digest of the code (64-bit FNV-1a).
    pub fn hash(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.code.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

/// Breadth-first encoding of an embedding from a root dart.
fn bfs_code(emb: &Embedding, colors: &[i64], root: usize) -> Vec<i64> {
    let rs = &emb.rs;
    let n = rs.vertices.len();
    let mut num = vec![usize::MAX; n];
    let mut start = vec![0usize; n];
    let v0 = rs.tail(root);
    num[v0] = 0;
    start[v0] = rs.position(root);
    let mut order = vec![v0];
    let mut queue = VecDeque::from([v0]);
    let mut code = Vec::new();
    while let Some(v) = queue.pop_front() {
        let rot = &rs.rotation[v];
        let deg = rot.len();
        code.push(colors[v]);
        code.push(deg as i64);
        for k in 0..deg {
            let d = rs.dart_from(v, rot[(start[v] + k) % deg]);
            let w = rs.head(d);
            let back = rs.position(d ^ 1);
            if num[w] == usize::MAX {
                num[w] = order.len();
                start[w] = back;
                order.push(w);
                queue.push_back(w);
            }
            let dw = rs.rotation[w].len();
            code.push(num[w] as i64);
            code.push(((back + dw - start[w]) % dw) as i64);
        }
    }
    let width = rs.rotation.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let label = |d: usize| -> i64 {
        let v = rs.tail(d);
        let deg = rs.rotation[v].len();
        (num[v] * width + (rs.position(d) + deg - start[v]) % deg) as i64
    };
    let mut faces: Vec<Vec<i64>> = (0..emb.face_count())
        .map(|f| {
            let mut walks: Vec<i64> = emb
                .walks_of_face(f)
                .into_iter()
                .map(|w| emb.walks[w].iter().map(|&d| label(d)).min().expect("walks are nonempty"))
                .collect();
            walks.sort();
            let mut key = vec![emb.face_euler[f], walks.len() as i64];
            key.extend(walks);
            key
        })
        .collect();
    faces.sort();
    code.push(faces.len() as i64);
    for f in faces {
        code.extend(f);
    }
    code
}

fn min_code(emb: &Embedding, colors: &[i64], roots: &[usize]) -> Vec<i64> {
    roots
        .iter()
        .map(|&r| bfs_code(emb, colors, r))
        .min()
        .unwrap_or_default()
}

/// Vertex colours, roots of the direct code and roots of the mirror code.
type Coloring = (Vec<i64>, Vec<usize>, Vec<usize>);

fn colors_and_roots(emb: &Embedding, labels: LabelGroup) -> Result<Coloring, EmbeddingError> {
    let vs = &emb.rs.vertices;
    let all: Vec<usize> = (0..emb.rs.dart_count()).collect();
    Ok(match labels {
        LabelGroup::Fixed => ((0..vs.len() as i64).collect(), all.clone(), all),
        LabelGroup::Parts => (vs.iter().map(|v| (v.part == Part::B) as i64).collect(), all.clone(), all),
        LabelGroup::Sided => {
            let cycle = emb.designated_cycle()?;
            let colors = vs
                .iter()
                .map(|v| match (v.part, v.index) {
                    (Part::A, _) => 0,
                    (Part::B, 1 | 2) => 1,
                    (Part::B, _) => 2,
                })
                .collect();
            (colors, cycle.to_vec(), cycle.iter().map(|d| d ^ 1).collect())
        }
    })
}

/// Canonical class of an embedding under a convention.
pub fn canonical_code(emb: &Embedding, conv: Convention) -> Result<ClassId, EmbeddingError> {
    if !emb.rs.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let (colors, roots, mirror_roots) = colors_and_roots(emb, conv.labels)?;
    let direct = min_code(emb, &colors, &roots);
    let mirror = min_code(&emb.reflect(), &colors, &mirror_roots);
    let chiral = direct != mirror;
    let code = match conv.orientation {
        Orientation::Oriented => direct,
        Orientation::Reflective => direct.min(mirror),
    };
    let code = code.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".");
    Ok(ClassId { code, chiral })
}
