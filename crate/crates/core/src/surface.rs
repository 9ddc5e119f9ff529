//! Combinatorial oriented surfaces with boundary.
//!
//! A page is stored as a ribbon graph: half-edges with a cyclic (counter-
//! clockwise) rotation at every vertex. Its thickening is the surface, and
//! the boundary circles are the faces of the rotation system. Homology is
//! the cycle space of the graph, with a basis of fundamental cycles of a
//! spanning forest that is only ever extended, never rebuilt. Old classes
//! therefore stay valid, padded with zeros, after every handle attachment.
//!
//! Twist words act through transvections `τ_c^k(x) = x + k⟨c,x⟩c`, applied
//! right to left. With `⟨a_i,b_i⟩ = +1` this gives `τ_{a1}(b1) = b1 + a1`.
//! Separating curves are nullhomologous and act as the identity; this is a
//! homology-level model.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::zmodule::{cokernel, smith_normal_form, unimodular_inverse, AbelianGroup, IntMatrix};
use crate::{Error, Result};

/// Homology class in the coordinates of a surface's basis.
pub type Class = Vec<BigInt>;

pub fn zero_class(n: usize) -> Class {
    vec![BigInt::zero(); n]
}

pub fn unit_class(n: usize, i: usize) -> Class {
    let mut v = zero_class(n);
    v[i] = BigInt::one();
    v
}

pub fn class_from(v: &[i64]) -> Class {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn axpy(y: &mut [BigInt], k: &BigInt, x: &[BigInt]) {
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += k * b;
        }
    }
}

/// Zero-pads a class to a larger basis.
pub fn pad(x: &[BigInt], n: usize) -> Class {
    let mut v = x.to_vec();
    v.resize(n, BigInt::zero());
    v
}

/// gcd of the entries; zero for the zero vector.
pub fn content(x: &[BigInt]) -> BigInt {
    x.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// A corner of the rotation system: the sector between half-edge `k` and its
/// counterclockwise successor, or the lone corner of an isolated vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    Isolated(usize),
    After(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Before,
    After,
}

/// Where a handle foot is attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Foot {
    /// The marked point of a boundary label.
    Marked(String),
    /// The corner just before or just after an existing half-edge.
    Flank { half_edge: usize, side: Side },
}

/// Bookkeeping returned by [`CombSurface::attach_one_handle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleRecord {
    /// Half-edge of the handle core at the first foot.
    pub tail: usize,
    /// Half-edge of the handle core at the second foot.
    pub head: usize,
    /// Label absorbed by a merge.
    pub removed_label: Option<String>,
    /// Label created by a split.
    pub new_label: Option<String>,
    /// Index of the new basis element, if the core closes a cycle.
    pub new_basis: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Boundary {
    label: String,
    corner: Corner,
}

/// Fundamental cycle: a closed walk starting along the tail of its key edge.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct BasisElem {
    key: usize,
    walk: Vec<usize>,
}

/// Connected component summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub genus: usize,
    pub labels: Vec<String>,
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn boundary_count(&self) -> usize {
        self.labels.len()
    }
}

struct Faces {
    walks: Vec<Vec<usize>>,
    of_half: Vec<usize>,
    of_isolated: HashMap<usize, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CombSurface {
    vert: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    n_vertices: usize,
    tree: Vec<bool>,
    boundaries: Vec<Boundary>,
    basis: Vec<BasisElem>,
    glue: Vec<(String, Class)>,
    standard_genus: Option<usize>,
    gram: Vec<Vec<i64>>,
}

impl CombSurface {
    /// Standard page of genus `g` with `b` boundary circles labelled `1..=b`.
    pub fn standard(g: usize, b: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=b).map(|i| i.to_string()).collect();
        Self::standard_with_labels(g, &labels)
    }

    /// Standard page with the given boundary labels.
    ///
    /// One vertex with rotation `x_i⁺ y_i⁺ x_i⁻ y_i⁻` per handle followed by
    /// `z_j⁺ z_j⁻` for `j < b`. The basis is `a1, b1, …, a_g, b_g, ∂_1, …,
    /// ∂_{b-1}` where `∂_j` is the boundary labelled `labels[j-1]`; the last
    /// label bounds the big face. A disc is a single isolated vertex.
    pub fn standard_with_labels<S: AsRef<str>>(g: usize, labels: &[S]) -> Result<Self> {
        let b = labels.len();
        if b == 0 {
            return Err(Error::InvalidPage("a page needs at least one boundary circle".into()));
        }
        let mut seen = HashSet::new();
        for l in labels {
            if !seen.insert(l.as_ref()) {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let n_edges = 2 * g + b - 1;
        let mut rotation = Vec::with_capacity(2 * n_edges);
        for i in 0..g {
            let (x, y) = (2 * i, 2 * i + 1);
            rotation.extend([2 * x, 2 * y, 2 * x + 1, 2 * y + 1]);
        }
        for j in 0..b - 1 {
            let z = 2 * g + j;
            rotation.extend([2 * z, 2 * z + 1]);
        }
        let mut s = CombSurface {
            vert: vec![0; 2 * n_edges],
            next: vec![0; 2 * n_edges],
            prev: vec![0; 2 * n_edges],
            n_vertices: 1,
            tree: vec![false; n_edges],
            boundaries: Vec::new(),
            basis: (0..n_edges).map(|e| BasisElem { key: e, walk: vec![2 * e] }).collect(),
            glue: Vec::new(),
            standard_genus: Some(g),
            gram: Vec::new(),
        };
        for (i, &h) in rotation.iter().enumerate() {
            let n = rotation[(i + 1) % rotation.len()];
            s.next[h] = n;
            s.prev[n] = h;
        }
        for j in 0..b - 1 {
            let z = 2 * g + j;
            s.boundaries.push(Boundary {
                label: labels[j].as_ref().to_string(),
                corner: Corner::After(2 * z),
            });
        }
        let last = match rotation.last() {
            Some(&h) => Corner::After(h),
            None => Corner::Isolated(0),
        };
        s.boundaries.push(Boundary { label: labels[b - 1].as_ref().to_string(), corner: last });
        s.refresh();
        s.validate()?;
        Ok(s)
    }

    pub fn disc() -> Self {
        Self::standard(0, 1).expect("disc")
    }

    pub fn annulus() -> Self {
        Self::standard(0, 2).expect("annulus")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.vert.len() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges() as i64
    }

    /// Rank of H₁, the length of every class vector.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.boundaries.iter().map(|b| b.label.clone()).collect()
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.boundaries.iter().any(|b| b.label == label)
    }

    pub fn marked_corner(&self, label: &str) -> Result<Corner> {
        self.boundaries
            .iter()
            .find(|b| b.label == label)
            .map(|b| b.corner)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Genus when this is an unmodified standard page.
    pub fn standard_genus(&self) -> Option<usize> {
        self.standard_genus
    }

    /// Intersection matrix of the basis, `gram[i][j] = ⟨e_i, e_j⟩`.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn glue_labels(&self) -> Vec<String> {
        self.glue.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn glue_class(&self, label: &str) -> Option<&Class> {
        self.glue.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    pub(crate) fn add_glue_circle(&mut self, label: String, class: Class) {
        self.glue.push((label, class));
    }

    /// Half-edges at the vertex of `h` in counterclockwise order starting at `h`.
    pub fn rotation_from(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut k = self.next[h];
        while k != h {
            out.push(k);
            k = self.next[k];
        }
        out
    }

    pub fn rotation_next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn rotation_prev(&self, h: usize) -> usize {
        self.prev[h]
    }

    fn faces(&self) -> Faces {
        let nh = self.vert.len();
        let mut of_half = vec![usize::MAX; nh];
        let mut walks = Vec::new();
        for start in 0..nh {
            if of_half[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                of_half[h] = id;
                walk.push(h);
                // arrive at the twin, then turn clockwise to keep the face on the left
                h = self.prev[h ^ 1];
                if h == start {
                    break;
                }
            }
            walks.push(walk);
        }
        let mut has_half = vec![false; self.n_vertices];
        for &v in &self.vert {
            has_half[v] = true;
        }
        let mut of_isolated = HashMap::new();
        for v in 0..self.n_vertices {
            if !has_half[v] {
                of_isolated.insert(v, walks.len());
                walks.push(Vec::new());
            }
        }
        Faces { walks, of_half, of_isolated }
    }

    fn face_of_corner(faces: &Faces, c: Corner) -> usize {
        match c {
            Corner::Isolated(v) => faces.of_isolated[&v],
            Corner::After(k) => faces.of_half[k],
        }
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    fn vertex_components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n_vertices];
        let mut adj = vec![Vec::new(); self.n_vertices];
        for e in 0..self.n_edges() {
            let (u, w) = (self.vert[2 * e], self.vert[2 * e + 1]);
            adj[u].push(w);
            adj[w].push(u);
        }
        let mut count = 0;
        for s in 0..self.n_vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Connected components with their genus and boundary labels, ordered by
    /// first vertex.
    pub fn components(&self) -> Vec<Component> {
        let (comp, count) = self.vertex_components();
        let mut out: Vec<Component> = (0..count)
            .map(|_| Component { genus: 0, labels: Vec::new(), vertices: Vec::new() })
            .collect();
        let mut edges = vec![0i64; count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].vertices.push(v);
        }
        for e in 0..self.n_edges() {
            edges[comp[self.vert[2 * e]]] += 1;
        }
        for b in &self.boundaries {
            let v = match b.corner {
                Corner::Isolated(v) => v,
                Corner::After(k) => self.vert[k],
            };
            out[comp[v]].labels.push(b.label.clone());
        }
        for (c, item) in out.iter_mut().enumerate() {
            let chi = item.vertices.len() as i64 - edges[c];
            let b = item.labels.len() as i64;
            item.genus = ((2 - chi - b) / 2) as usize;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().1 == 1
    }

    /// Component index of each label.
    pub fn label_component(&self, label: &str) -> Result<usize> {
        let (comp, _) = self.vertex_components();
        let v = match self.marked_corner(label)? {
            Corner::Isolated(v) => v,
            Corner::After(k) => self.vert[k],
        };
        Ok(comp[v])
    }

    fn walk_vector(&self, walk: &[usize]) -> Vec<i64> {
        let mut v = vec![0i64; self.n_edges()];
        for &h in walk {
            v[h / 2] += if h % 2 == 0 { 1 } else { -1 };
        }
        v
    }

    /// Signed crossings of the left push-off of a closed walk with each edge.
    fn push_off(&self, walk: &[usize]) -> Vec<i64> {
        let mut p = vec![0i64; self.n_edges()];
        let len = walk.len();
        for i in 0..len {
            let h_in = walk[i] ^ 1;
            let h_out = walk[(i + 1) % len];
            let mut k = self.next[h_out];
            while k != h_in {
                p[k / 2] += if k % 2 == 0 { -1 } else { 1 };
                k = self.next[k];
            }
        }
        p
    }

    fn refresh(&mut self) {
        let vecs: Vec<Vec<i64>> = self.basis.iter().map(|b| self.walk_vector(&b.walk)).collect();
        let pushes: Vec<Vec<i64>> = self.basis.iter().map(|b| self.push_off(&b.walk)).collect();
        self.gram = vecs
            .iter()
            .map(|x| pushes.iter().map(|p| x.iter().zip(p).map(|(a, b)| a * b).sum()).collect())
            .collect();
    }

    fn validate(&self) -> Result<()> {
        let faces = self.faces();
        if faces.walks.len() != self.boundaries.len() {
            return Err(Error::InvalidPage(format!(
                "{} faces but {} boundary labels",
                faces.walks.len(),
                self.boundaries.len()
            )));
        }
        let mut seen_faces = HashSet::new();
        let mut seen_labels = HashSet::new();
        for b in &self.boundaries {
            if !seen_labels.insert(b.label.as_str()) {
                return Err(Error::DuplicateLabel(b.label.clone()));
            }
            if !seen_faces.insert(Self::face_of_corner(&faces, b.corner)) {
                return Err(Error::InvalidPage(format!("label {} shares a face", b.label)));
            }
        }
        let (_, comps) = self.vertex_components();
        let expected = self.n_edges() + comps - self.n_vertices;
        if self.basis.len() != expected {
            return Err(Error::InvalidPage(format!(
                "basis has {} elements, cycle space has rank {}",
                self.basis.len(),
                expected
            )));
        }
        for (i, row) in self.gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != -self.gram[j][i] {
                    return Err(Error::InvalidPage("intersection form is not antisymmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// Coordinates of an edge-space cycle in the basis.
    fn cycle_coords(&self, z: &[i64]) -> Class {
        self.basis.iter().map(|b| BigInt::from(z[b.key])).collect()
    }

    /// Class of the boundary circle `label`, oriented with the boundary on its
    /// left.
    pub fn boundary_class(&self, label: &str) -> Result<Class> {
        let corner = self.marked_corner(label)?;
        let faces = self.faces();
        let walk = &faces.walks[Self::face_of_corner(&faces, corner)];
        Ok(self.cycle_coords(&self.walk_vector(walk)))
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: x.len() });
        }
        Ok(())
    }

    /// Algebraic intersection number `⟨x, y⟩`.
    pub fn intersection(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !yj.is_zero() {
                    acc += xi * yj * g;
                }
            }
        }
        acc
    }

    /// `τ_c^k(x) = x + k⟨c,x⟩c`.
    pub fn twist(&self, c: &[BigInt], k: i64, x: &[BigInt]) -> Class {
        let mut out = x.to_vec();
        let coef = self.pair(c, x) * k;
        axpy(&mut out, &coef, c);
        out
    }

    /// Arc between the marked points of two boundary labels, as a path in the
    /// dual graph.
    pub fn arc(&self, from: &str, to: &str) -> Result<ArcClass> {
        let faces = self.faces();
        let fa = Self::face_of_corner(&faces, self.marked_corner(from)?);
        let fb = Self::face_of_corner(&faces, self.marked_corner(to)?);
        let nf = faces.walks.len();
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nf];
        for e in 0..self.n_edges() {
            let left = faces.of_half[2 * e];
            let right = faces.of_half[2 * e + 1];
            if left != right {
                adj[right].push((left, e, 1));
                adj[left].push((right, e, -1));
            }
        }
        let mut via: Vec<Option<(usize, usize, i64)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[fa] = true;
        let mut queue = VecDeque::from([fa]);
        while let Some(f) = queue.pop_front() {
            for &(g, e, s) in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    via[g] = Some((f, e, s));
                    queue.push_back(g);
                }
            }
        }
        if !seen[fb] {
            return Err(Error::Disconnected);
        }
        let mut w = vec![0i64; self.n_edges()];
        let mut f = fb;
        while f != fa {
            let (p, e, s) = via[f].expect("bfs parent");
            w[e] += s;
            f = p;
        }
        let base = self
            .basis
            .iter()
            .map(|b| {
                let v = self.walk_vector(&b.walk);
                BigInt::from(v.iter().zip(&w).map(|(a, c)| a * c).sum::<i64>())
            })
            .collect();
        Ok(ArcClass {
            from: from.to_string(),
            to: to.to_string(),
            base,
            offset: zero_class(self.rank()),
        })
    }

    /// Resolves a curve name to its class.
    pub fn resolve(&self, name: &CurveName) -> Result<Class> {
        let n = self.rank();
        match name {
            CurveName::A(i) | CurveName::B(i) => {
                let g = self.standard_genus.unwrap_or(0);
                if *i == 0 || *i > g {
                    return Err(Error::UnknownCurve(name.to_string()));
                }
                let off = if matches!(name, CurveName::A(_)) { 0 } else { 1 };
                Ok(unit_class(n, 2 * (i - 1) + off))
            }
            CurveName::D(l) => self.boundary_class(l),
            CurveName::Glue(l) => self
                .glue_class(l)
                .cloned()
                .ok_or_else(|| Error::UnknownCurve(name.to_string())),
            CurveName::Core => {
                if self.standard_genus == Some(0) && self.boundary_count() == 2 {
                    self.boundary_class(&self.boundaries[0].label)
                } else {
                    Err(Error::UnknownCurve("core (only defined on an annulus)".into()))
                }
            }
            CurveName::Vec(v) => {
                self.check_len(v)?;
                let c = content(v);
                if !(c.is_zero() || c.is_one()) {
                    return Err(Error::NotPrimitive(name.to_string()));
                }
                Ok(v.clone())
            }
        }
    }

    /// Name of a class on a standard page: a basis curve, a boundary curve,
    /// `core` on an annulus, or an explicit vector.
    pub fn name_class(&self, x: &[BigInt]) -> CurveName {
        let n = self.rank();
        let neg: Class = x.iter().map(|v| -v).collect();
        let matches = |c: &Class| !c.iter().all(Zero::is_zero) && (c == x || *c == neg);
        if let Some(g) = self.standard_genus {
            for i in 0..g {
                if matches(&unit_class(n, 2 * i)) {
                    return CurveName::A(i + 1);
                }
                if matches(&unit_class(n, 2 * i + 1)) {
                    return CurveName::B(i + 1);
                }
            }
            if g == 0 && self.boundary_count() == 2 {
                if let Ok(c) = self.resolve(&CurveName::Core) {
                    if matches(&c) {
                        return CurveName::Core;
                    }
                }
            }
        }
        for b in &self.boundaries {
            if let Ok(c) = self.boundary_class(&b.label) {
                if matches(&c) {
                    return CurveName::D(b.label.clone());
                }
            }
        }
        CurveName::Vec(x.to_vec())
    }

    fn resolve_foot(&self, foot: &Foot, faces: &Faces) -> Result<(String, Corner)> {
        match foot {
            Foot::Marked(l) => Ok((l.clone(), self.marked_corner(l)?)),
            Foot::Flank { half_edge, side } => {
                if *half_edge >= self.vert.len() {
                    return Err(Error::InvalidSite(format!("no half-edge {half_edge}")));
                }
                let corner = match side {
                    Side::Before => Corner::After(self.prev[*half_edge]),
                    Side::After => Corner::After(*half_edge),
                };
                let f = Self::face_of_corner(faces, corner);
                let label = self
                    .boundaries
                    .iter()
                    .find(|b| Self::face_of_corner(faces, b.corner) == f)
                    .map(|b| b.label.clone())
                    .ok_or_else(|| Error::InvalidPage("unlabelled face".into()))?;
                Ok((label, corner))
            }
        }
    }

    fn insert_half(&mut self, half: usize, corner: Corner) -> usize {
        match corner {
            Corner::Isolated(v) => {
                self.vert[half] = v;
                self.next[half] = half;
                self.prev[half] = half;
                v
            }
            Corner::After(k) => {
                let v = self.vert[k];
                let n = self.next[k];
                self.vert[half] = v;
                self.next[k] = half;
                self.prev[half] = k;
                self.next[half] = n;
                self.prev[n] = half;
                v
            }
        }
    }

    /// Departing half-edges of the tree path from `from` to `to`.
    fn tree_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut via: Vec<Option<usize>> = vec![None; self.n_vertices];
        let mut seen = vec![false; self.n_vertices];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for e in 0..self.n_edges() {
            if self.tree[e] {
                adj[self.vert[2 * e]].push(2 * e);
                adj[self.vert[2 * e + 1]].push(2 * e + 1);
            }
        }
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &h in &adj[u] {
                let w = self.vert[h ^ 1];
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some(h);
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = to;
        while v != from {
            let h = via[v].expect("tree parent");
            path.push(h);
            v = self.vert[h];
        }
        path.reverse();
        Some(path)
    }

    fn fresh_label(&self) -> String {
        (1..)
            .map(|i| format!("s{i}"))
            .find(|l| !self.has_label(l))
            .expect("unbounded supply")
    }

    /// Attaches an untwisted, orientation-preserving 1-handle with feet at
    /// `a` and `b`. Distinct boundary circles merge (the first label
    /// survives); two feet on one circle split it and the new circle receives
    /// a fresh label. Euler characteristic drops by one. Existing classes stay
    /// valid after zero-padding.
    pub fn attach_one_handle(&self, a: &Foot, b: &Foot) -> Result<(CombSurface, HandleRecord)> {
        let faces = self.faces();
        let (la, ca) = self.resolve_foot(a, &faces)?;
        let (lb, cb) = self.resolve_foot(b, &faces)?;
        let mut s = self.clone();
        s.standard_genus = None;
        let e = self.n_edges();
        let (t, h) = (2 * e, 2 * e + 1);
        s.vert.extend([0, 0]);
        s.next.extend([t, h]);
        s.prev.extend([t, h]);
        let va = s.insert_half(t, ca);
        // Two feet in one corner: a foot flanking the near side of a half-edge
        // puts the core around that half-edge, otherwise the core is a
        // trivial loop inside the corner.
        let around = matches!(a, Foot::Flank { side: Side::Before, .. });
        let vb = if ca == cb && !around { s.insert_half(h, Corner::After(t)) } else { s.insert_half(h, cb) };

        let closing = self.tree_path(vb, va);
        let new_basis = match closing {
            Some(path) => {
                s.tree.push(false);
                let mut walk = vec![t];
                walk.extend(path);
                s.basis.push(BasisElem { key: e, walk });
                Some(s.basis.len() - 1)
            }
            None => {
                s.tree.push(true);
                None
            }
        };
        let n = s.basis.len();
        for (_, c) in &mut s.glue {
            c.resize(n, BigInt::zero());
        }

        for bd in &mut s.boundaries {
            if let Corner::Isolated(v) = bd.corner {
                if v == va {
                    bd.corner = Corner::After(t);
                } else if v == vb {
                    bd.corner = Corner::After(h);
                }
            }
        }
        let faces = s.faces();
        let mut record = HandleRecord {
            tail: t,
            head: h,
            removed_label: None,
            new_label: None,
            new_basis,
        };
        if la != lb {
            s.boundaries.retain(|x| x.label != lb);
            record.removed_label = Some(lb);
        } else {
            let fa = Self::face_of_corner(&faces, s.marked_corner(&la)?);
            let corner = if faces.of_half[t] != fa { Corner::After(t) } else { Corner::After(h) };
            let fresh = s.fresh_label();
            s.boundaries.push(Boundary { label: fresh.clone(), corner });
            record.new_label = Some(fresh);
        }
        s.refresh();
        s.validate()?;
        debug_assert_eq!(s.euler_characteristic(), self.euler_characteristic() - 1);
        Ok((s, record))
    }

    /// Moves the marked point of `label` to `corner`.
    pub(crate) fn set_marked_corner(&mut self, label: &str, corner: Corner) -> Result<()> {
        let b = self
            .boundaries
            .iter_mut()
            .find(|b| b.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        b.corner = corner;
        Ok(())
    }

    /// Renames a label.
    pub(crate) fn rename_label(&mut self, from: &str, to: &str) -> Result<()> {
        if from != to && self.has_label(to) {
            return Err(Error::DuplicateLabel(to.to_string()));
        }
        let b = self
            .boundaries
            .iter_mut()
            .find(|b| b.label == from)
            .ok_or_else(|| Error::UnknownLabel(from.to_string()))?;
        b.label = to.to_string();
        for (l, _) in &mut self.glue {
            if l == from {
                *l = to.to_string();
            }
        }
        Ok(())
    }

    /// Reorders labels to `order`, which must be a permutation of the current
    /// labels.
    pub(crate) fn reorder_labels(&mut self, order: &[String]) -> Result<()> {
        if order.len() != self.boundaries.len() {
            return Err(Error::BadMatching);
        }
        let mut out = Vec::with_capacity(order.len());
        for l in order {
            let b = self
                .boundaries
                .iter()
                .find(|b| &b.label == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            out.push(b.clone());
        }
        self.boundaries = out;
        self.validate()
    }

    /// Re-checks structural invariants after an in-crate edit.
    pub(crate) fn check(&self) -> Result<()> {
        self.validate()
    }

    /// Disjoint union. Labels become `prefix.label` unless the prefix is empty.
    /// Classes of `self` embed as the leading block, those of `other` follow.
    pub fn disjoint_union(&self, prefix_a: &str, other: &CombSurface, prefix_b: &str) -> Result<CombSurface> {
        let rename = |p: &str, l: &str| if p.is_empty() { l.to_string() } else { format!("{p}.{l}") };
        let (nv, nh) = (self.n_vertices, self.vert.len());
        let shift_corner = |c: Corner| match c {
            Corner::Isolated(v) => Corner::Isolated(v + nv),
            Corner::After(k) => Corner::After(k + nh),
        };
        let mut s = self.clone();
        s.standard_genus = None;
        s.vert.extend(other.vert.iter().map(|v| v + nv));
        s.next.extend(other.next.iter().map(|h| h + nh));
        s.prev.extend(other.prev.iter().map(|h| h + nh));
        s.n_vertices += other.n_vertices;
        s.tree.extend(other.tree.iter().copied());
        for b in &mut s.boundaries {
            b.label = rename(prefix_a, &b.label);
        }
        s.boundaries.extend(other.boundaries.iter().map(|b| Boundary {
            label: rename(prefix_b, &b.label),
            corner: shift_corner(b.corner),
        }));
        let ne = self.n_edges();
        s.basis.extend(other.basis.iter().map(|b| BasisElem {
            key: b.key + ne,
            walk: b.walk.iter().map(|h| h + nh).collect(),
        }));
        let (na, nb) = (self.rank(), other.rank());
        s.glue = self
            .glue
            .iter()
            .map(|(l, c)| (rename(prefix_a, l), pad(c, na + nb)))
            .chain(other.glue.iter().map(|(l, c)| {
                let mut v = zero_class(na);
                v.extend(c.iter().cloned());
                (rename(prefix_b, l), v)
            }))
            .collect();
        s.refresh();
        s.validate()?;
        Ok(s)
    }

    /// Embeds a class of the second summand of [`Self::disjoint_union`].
    pub fn embed_second(first_rank: usize, x: &[BigInt]) -> Class {
        let mut v = zero_class(first_rank);
        v.extend(x.iter().cloned());
        v
    }

    /// Doubles two connected pages along a bijective boundary matching.
    pub fn glue_double(s0: &CombSurface, s1: &CombSurface, matching: &[(String, String)]) -> Result<ClosedDouble> {
        if s0.boundary_count() != s1.boundary_count() {
            return Err(Error::BoundaryMismatch(s0.boundary_count(), s1.boundary_count()));
        }
        if !s0.is_connected() || !s1.is_connected() {
            return Err(Error::Disconnected);
        }
        let b = s0.boundary_count();
        let l0: HashSet<&str> = matching.iter().map(|(a, _)| a.as_str()).collect();
        let l1: HashSet<&str> = matching.iter().map(|(_, c)| c.as_str()).collect();
        if matching.len() != b
            || l0.len() != b
            || l1.len() != b
            || !l0.iter().all(|l| s0.has_label(l))
            || !l1.iter().all(|l| s1.has_label(l))
        {
            return Err(Error::BadMatching);
        }
        let (n0, n1) = (s0.rank(), s1.rank());
        let n = n0 + n1 + b - 1;
        let mut columns = Vec::with_capacity(b);
        for (a, c) in matching {
            let mut col = pad(&s0.boundary_class(a)?, n0);
            col.extend(s1.boundary_class(c)?.iter().map(|v| -v));
            col.resize(n, BigInt::zero());
            columns.push(col);
        }
        let relations = IntMatrix::from_columns(n, &columns);
        let chi = s0.euler_characteristic() + s1.euler_characteristic();
        let genus = ((2 - chi) / 2) as usize;
        let double = ClosedDouble { genus, n0, n1, pairs: matching.to_vec(), relations };
        let h1 = double.h1();
        if h1 != AbelianGroup::free((2 - chi) as usize) {
            return Err(Error::InvalidPage(format!("double has H1 = {h1}, expected rank {}", 2 - chi)));
        }
        Ok(double)
    }

    /// Symplectic normalization of a connected page: a matrix taking classes
    /// of `self` to classes of the standard page with the same genus and
    /// labels, preserving the intersection form and every boundary class.
    pub fn standard_form(&self) -> Result<StandardForm> {
        let comps = self.components();
        if comps.len() != 1 {
            return Err(Error::Disconnected);
        }
        let genus = comps[0].genus;
        let labels = self.labels();
        let b = labels.len();
        let n = self.rank();
        let radical: Vec<Class> =
            labels[..b - 1].iter().map(|l| self.boundary_class(l)).collect::<Result<_>>()?;
        let m = IntMatrix::from_columns(n, &radical);
        let snf = smith_normal_form(&m);
        if snf.invariant_factors().len() != b - 1 || snf.invariant_factors().iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidPage("boundary classes do not span a direct summand".into()));
        }
        let complement: Vec<Class> = (b - 1..n).map(|j| snf.u_inv.column(j)).collect();
        let symplectic = self.symplectic_basis(complement)?;
        let mut cols = symplectic;
        cols.extend(radical);
        let basis = IntMatrix::from_columns(n, &cols);
        let to_standard = unimodular_inverse(&basis)
            .ok_or_else(|| Error::InvalidPage("normalization basis is not unimodular".into()))?;
        let target = CombSurface::standard_with_labels(genus, &labels)?;
        let form = StandardForm { genus, labels, to_standard, target };
        form.verify(self)?;
        Ok(form)
    }

    fn symplectic_basis(&self, mut c: Vec<Class>) -> Result<Vec<Class>> {
        let degenerate = || Error::InvalidPage("degenerate intersection form".into());
        let mut out = Vec::with_capacity(c.len());
        while !c.is_empty() {
            if c.len() == 1 {
                return Err(degenerate());
            }
            loop {
                let vals: Vec<BigInt> = c[1..].iter().map(|v| self.pair(&c[0], v)).collect();
                let nz: Vec<usize> = (0..vals.len()).filter(|&i| !vals[i].is_zero()).collect();
                match nz.len() {
                    0 => return Err(degenerate()),
                    1 => {
                        let p = nz[0] + 1;
                        c.swap(1, p);
                        let v = &vals[nz[0]];
                        if !v.abs().is_one() {
                            return Err(degenerate());
                        }
                        if v.is_negative() {
                            for x in &mut c[1] {
                                *x = -&*x;
                            }
                        }
                        break;
                    }
                    _ => {
                        let p = *nz.iter().min_by_key(|&&i| vals[i].abs()).expect("nonempty");
                        let pivot = c[p + 1].clone();
                        for &i in &nz {
                            if i != p {
                                let q = -vals[i].div_floor(&vals[p]);
                                axpy(&mut c[i + 1], &q, &pivot);
                            }
                        }
                    }
                }
            }
            let x = c[0].clone();
            let y = c[1].clone();
            for z in &mut c[2..] {
                let k = self.pair(&y, z);
                axpy(z, &k, &x);
            }
            out.push(x);
            out.push(y);
            c.drain(..2);
        }
        Ok(out)
    }
}

/// Named or explicit curve on a page.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveName {
    A(usize),
    B(usize),
    /// Parallel copy of a boundary circle.
    D(String),
    /// Glue circle created by a binding sum.
    Glue(String),
    /// Core of an annulus.
    Core,
    Vec(Vec<BigInt>),
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveName::A(i) => write!(f, "a{i}"),
            CurveName::B(i) => write!(f, "b{i}"),
            CurveName::D(l) => write!(f, "d({l})"),
            CurveName::Glue(l) => write!(f, "glue({l})"),
            CurveName::Core => write!(f, "core"),
            CurveName::Vec(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "vec[{}]", parts.join(","))
            }
        }
    }
}

/// One factor `τ_c^power` of a twist word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub curve: CurveName,
    pub class: Class,
    pub power: i64,
}

/// Product of twists, applied right to left: the last factor acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWord {
    pub twists: Vec<Twist>,
}

impl TwistWord {
    pub fn identity() -> Self {
        TwistWord::default()
    }

    /// Resolves `(curve, power)` factors against a page, left to right as
    /// written.
    pub fn resolve(s: &CombSurface, factors: &[(CurveName, i64)]) -> Result<Self> {
        let twists = factors
            .iter()
            .map(|(c, k)| Ok(Twist { curve: c.clone(), class: s.resolve(c)?, power: *k }))
            .collect::<Result<_>>()?;
        Ok(TwistWord { twists })
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn apply(&self, s: &CombSurface, x: &[BigInt]) -> Result<Class> {
        s.check_len(x)?;
        let mut v = x.to_vec();
        for t in self.twists.iter().rev() {
            s.check_len(&t.class)?;
            v = s.twist(&t.class, t.power, &v);
        }
        Ok(v)
    }

    pub fn apply_arc(&self, s: &CombSurface, arc: &ArcClass) -> Result<ArcClass> {
        let mut a = arc.clone();
        for t in self.twists.iter().rev() {
            s.check_len(&t.class)?;
            let coef = a.pair_with(s, &t.class) * t.power;
            axpy(&mut a.offset, &coef, &t.class);
        }
        Ok(a)
    }

    /// Formal inverse: reversed order, negated powers.
    pub fn inverse(&self) -> Self {
        TwistWord {
            twists: self
                .twists
                .iter()
                .rev()
                .map(|t| Twist { curve: t.curve.clone(), class: t.class.clone(), power: -t.power })
                .collect(),
        }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &TwistWord) -> Self {
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().cloned());
        TwistWord { twists }
    }

    /// Re-expresses every factor by its explicit class, padded to `n`.
    pub fn as_vectors(&self, n: usize) -> Self {
        self.map_classes(|c| pad(c, n))
    }

    /// Applies `f` to every class, naming the results as vectors.
    pub fn map_classes(&self, f: impl Fn(&Class) -> Class) -> Self {
        TwistWord {
            twists: self
                .twists
                .iter()
                .map(|t| {
                    let c = f(&t.class);
                    Twist { curve: CurveName::Vec(c.clone()), class: c, power: t.power }
                })
                .collect(),
        }
    }

    /// Matrix whose columns are the images of the basis vectors.
    pub fn matrix(&self, s: &CombSurface) -> Result<IntMatrix> {
        let n = s.rank();
        let cols = (0..n).map(|i| self.apply(s, &unit_class(n, i))).collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(n, &cols))
    }
}

/// Relative class of an arc between two marked points: its pairings with the
/// basis, plus an absolute offset accumulated by twisting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcClass {
    pub from: String,
    pub to: String,
    pub base: Vec<BigInt>,
    pub offset: Class,
}

impl ArcClass {
    /// `⟨c, arc⟩`.
    pub fn pair_with(&self, s: &CombSurface, c: &[BigInt]) -> BigInt {
        let mut acc: BigInt = c.iter().zip(&self.base).map(|(a, b)| a * b).sum();
        acc += s.pair(c, &self.offset);
        acc
    }

    /// The arc changed by the closed class `y`.
    pub fn perturbed(&self, y: &[BigInt]) -> ArcClass {
        let mut a = self.clone();
        axpy(&mut a.offset, &BigInt::one(), y);
        a
    }
}

/// H₁ presentation of a closed double `(−Σ₀) ∪ Σ₁`: generators are the basis
/// of Σ₀, then the basis of Σ₁, then one loop `ℓ_j` per matched pair after
/// the first (an arc out in Σ₀ and back in Σ₁); relations identify the
/// matched boundary classes.
#[derive(Clone, Debug)]
pub struct ClosedDouble {
    pub genus: usize,
    pub n0: usize,
    pub n1: usize,
    pub pairs: Vec<(String, String)>,
    pub relations: IntMatrix,
}

impl ClosedDouble {
    pub fn n_generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn embed0(&self, x: &[BigInt]) -> Class {
        pad(x, self.n_generators())
    }

    pub fn embed1(&self, x: &[BigInt]) -> Class {
        let mut v = zero_class(self.n0);
        v.extend(x.iter().cloned());
        v.resize(self.n_generators(), BigInt::zero());
        v
    }

    /// Generator `ℓ_j` for pair index `j ≥ 1`.
    pub fn ell(&self, j: usize) -> Class {
        unit_class(self.n_generators(), self.n0 + self.n1 + j - 1)
    }

    pub fn h1(&self) -> AbelianGroup {
        cokernel(&self.relations)
    }
}

/// Output of [`CombSurface::standard_form`].
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub genus: usize,
    pub labels: Vec<String>,
    pub to_standard: IntMatrix,
    pub target: CombSurface,
}

impl StandardForm {
    pub fn map(&self, x: &[BigInt]) -> Class {
        let n = x.len();
        (0..n)
            .map(|i| (0..n).map(|j| &self.to_standard[(i, j)] * &x[j]).sum())
            .collect()
    }

    fn verify(&self, s: &CombSurface) -> Result<()> {
        let n = s.rank();
        let images: Vec<Class> = (0..n).map(|i| self.map(&unit_class(n, i))).collect();
        for i in 0..n {
            for j in 0..n {
                if self.target.pair(&images[i], &images[j]) != BigInt::from(s.gram[i][j]) {
                    return Err(Error::InvalidPage("normalization does not preserve the form".into()));
                }
            }
        }
        for l in &self.labels {
            if self.map(&s.boundary_class(l)?) != self.target.boundary_class(l)? {
                return Err(Error::InvalidPage(format!("normalization moves boundary {l}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> Class {
        class_from(v)
    }

    #[test]
    fn standard_pages_have_expected_shape() {
        for (g, b) in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 3), (0, 4)] {
            let s = CombSurface::standard(g, b).unwrap();
            assert_eq!(s.euler_characteristic(), 2 - 2 * g as i64 - b as i64);
            assert_eq!(s.rank(), 2 * g + b - 1);
            assert_eq!(s.boundary_count(), b);
            assert_eq!(s.components()[0].genus, g);
        }
    }

    #[test]
    fn symplectic_normalization_on_genus_one() {
        let s = CombSurface::standard(1, 1).unwrap();
        assert_eq!(s.intersection(&c(&[1, 0]), &c(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(s.intersection(&c(&[1, 0]), &c(&[1, 0])).unwrap(), BigInt::from(0));
        assert_eq!(s.intersection(&c(&[1, 1]), &c(&[0, 1])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn boundary_classes_are_radical() {
        let s = CombSurface::standard(2, 3).unwrap();
        let n = s.rank();
        let total: Class = s.labels().iter().fold(zero_class(n), |mut acc, l| {
            axpy(&mut acc, &BigInt::one(), &s.boundary_class(l).unwrap());
            acc
        });
        assert!(total.iter().all(Zero::is_zero));
        for l in s.labels() {
            let d = s.boundary_class(&l).unwrap();
            for i in 0..n {
                assert!(s.pair(&d, &unit_class(n, i)).is_zero());
            }
        }
        assert_eq!(s.boundary_class("1").unwrap(), unit_class(n, 4));
    }

    #[test]
    fn transvection_examples() {
        let s = CombSurface::standard(1, 1).unwrap();
        let a = c(&[1, 0]);
        let b = c(&[0, 1]);
        assert_eq!(s.twist(&a, 1, &b), c(&[1, 1]));
        assert_eq!(s.twist(&a, 1, &a), a);
        assert_eq!(s.twist(&a, -1, &s.twist(&a, 1, &b)), b);
        let t = CombSurface::standard(1, 2).unwrap();
        let d = t.resolve(&CurveName::D("1".into())).unwrap();
        assert_eq!(t.twist(&d, 3, &c(&[1, 0, 0])), c(&[1, 0, 0]));
    }

    #[test]
    fn arc_leaving_a_boundary_pairs_minus_one() {
        for (g, b) in [(0, 2), (1, 2), (0, 4), (2, 3)] {
            let s = CombSurface::standard(g, b).unwrap();
            let labels = s.labels();
            for from in &labels {
                for to in &labels {
                    if from == to {
                        continue;
                    }
                    let arc = s.arc(from, to).unwrap();
                    assert_eq!(arc.pair_with(&s, &s.boundary_class(from).unwrap()), BigInt::from(-1));
                    assert_eq!(arc.pair_with(&s, &s.boundary_class(to).unwrap()), BigInt::from(1));
                }
            }
        }
    }

    #[test]
    fn core_twist_moves_annulus_arc() {
        let s = CombSurface::annulus();
        let core = s.resolve(&CurveName::Core).unwrap();
        let arc = s.arc("1", "2").unwrap();
        let w = TwistWord::resolve(&s, &[(CurveName::Core, 3)]).unwrap();
        let moved = w.apply_arc(&s, &arc).unwrap();
        assert_eq!(moved.offset, c(&[-3]));
        assert_eq!(core, c(&[1]));
        assert_eq!(TwistWord::identity().apply_arc(&s, &arc).unwrap(), arc);
    }

    #[test]
    fn handle_examples_from_euler_count() {
        let two = CombSurface::disc().disjoint_union("x", &CombSurface::disc(), "y").unwrap();
        let (merged, rec) = two
            .attach_one_handle(&Foot::Marked("x.1".into()), &Foot::Marked("y.1".into()))
            .unwrap();
        assert_eq!(merged.boundary_count(), 1);
        assert_eq!(merged.euler_characteristic(), 1);
        assert_eq!(rec.removed_label.as_deref(), Some("y.1"));
        assert!(merged.is_connected());

        let (ann, rec) = CombSurface::disc()
            .attach_one_handle(&Foot::Marked("1".into()), &Foot::Marked("1".into()))
            .unwrap();
        assert_eq!((ann.boundary_count(), ann.euler_characteristic()), (2, 0));
        assert_eq!(ann.rank(), 1);
        assert!(rec.new_label.is_some());

        let pair = CombSurface::annulus().disjoint_union("x", &CombSurface::annulus(), "y").unwrap();
        let (pants, _) = pair
            .attach_one_handle(&Foot::Marked("x.2".into()), &Foot::Marked("y.1".into()))
            .unwrap();
        assert_eq!((pants.boundary_count(), pants.euler_characteristic()), (3, -1));
        assert_eq!(pants.components()[0].genus, 0);
    }

    #[test]
    fn glue_double_examples() {
        let m = |b: usize| (1..=b).map(|i| (i.to_string(), i.to_string())).collect::<Vec<_>>();
        let d = CombSurface::glue_double(&CombSurface::disc(), &CombSurface::disc(), &m(1)).unwrap();
        assert_eq!(d.genus, 0);
        let t = CombSurface::glue_double(&CombSurface::annulus(), &CombSurface::annulus(), &m(2)).unwrap();
        assert_eq!(t.genus, 1);
        let g1 = CombSurface::standard(1, 1).unwrap();
        let g2 = CombSurface::glue_double(&g1, &g1, &m(1)).unwrap();
        assert_eq!(g2.genus, 2);
        assert_eq!(g2.h1(), AbelianGroup::free(4));
        assert!(matches!(
            CombSurface::glue_double(&CombSurface::disc(), &CombSurface::annulus(), &m(1)),
            Err(Error::BoundaryMismatch(1, 2))
        ));
    }

    #[test]
    fn standard_form_of_standard_page_is_identity_on_form() {
        let s = CombSurface::standard(2, 3).unwrap();
        let f = s.standard_form().unwrap();
        assert_eq!(f.genus, 2);
    }

    #[test]
    fn resolve_rejects_bad_curves() {
        let s = CombSurface::standard(1, 2).unwrap();
        assert!(s.resolve(&CurveName::A(2)).is_err());
        assert!(s.resolve(&CurveName::Core).is_err());
        assert!(matches!(s.resolve(&CurveName::Vec(c(&[2, 0, 0]))), Err(Error::NotPrimitive(_))));
        assert!(s.resolve(&CurveName::Vec(c(&[0, 0, 0]))).is_ok());
        assert!(s.resolve(&CurveName::D("zz".into())).is_err());
    }
}
