use super::{Dart, Diagram, Face};
use crate::words::GroupLetter;

/// Grows a disc diagram by surgery on its single contour.
///
/// Positions index the contour read from its base vertex; position `len`
/// is the base vertex again.
#[derive(Debug, Clone)]
pub struct DiagramBuilder {
    vertices: usize,
    darts: Vec<Dart>,
    faces: Vec<Vec<usize>>,
    contour: Vec<usize>,
    base: usize,
}

impl DiagramBuilder {
    /// A single vertex with an empty contour.
    pub fn point() -> Self {
        Self { vertices: 1, darts: Vec::new(), faces: Vec::new(), contour: Vec::new(), base: 0 }
    }

    pub fn contour(&self) -> &[usize] {
        &self.contour
    }

    pub fn contour_codes(&self) -> Vec<i32> {
        self.contour.iter().map(|&d| self.darts[d].label.code()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_cycle(&self, face: usize) -> &[usize] {
        &self.faces[face]
    }

    pub fn dart(&self, d: usize) -> &Dart {
        &self.darts[d]
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        if self.contour.is_empty() {
            self.base
        } else if pos < self.contour.len() {
            self.darts[self.contour[pos]].from
        } else {
            self.darts[*self.contour.last().unwrap()].to
        }
    }

    fn new_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn new_edge(&mut self, from: usize, to: usize, code: i32) -> usize {
        let d = self.darts.len();
        let label = GroupLetter::from_code(code);
        self.darts.push(Dart { id: d, inv: d + 1, from, to, label });
        self.darts.push(Dart { id: d + 1, inv: d, from: to, to: from, label: label.inverse() });
        d
    }

    /// `new[i] = old[(i + by) % len]`.
    pub fn rotate_left(&mut self, by: usize) {
        if !self.contour.is_empty() {
            let k = by % self.contour.len();
            self.contour.rotate_left(k);
            self.base = self.vertex_at(0);
        }
    }

    pub fn rotate_right(&mut self, by: usize) {
        if !self.contour.is_empty() {
            let k = by % self.contour.len();
            self.contour.rotate_right(k);
            self.base = self.vertex_at(0);
        }
    }

    /// Insert a spur reading `code code^-1` before contour position `at`.
    pub fn insert_spur(&mut self, at: usize, code: i32) {
        let a = self.vertex_at(at);
        let b = self.new_vertex();
        let e = self.new_edge(a, b, code);
        self.contour.splice(at..at, [e, e + 1]);
    }

    /// Glue a face along the contour segment `[pos, pos + k)`. The face reads
    /// `segment · rest`; the segment is replaced on the contour by a new path
    /// reading `rest^-1`. Returns the face index.
    ///
    /// Panics if the segment leaves the contour or `rest` is empty while the
    /// segment is not closed.
    pub fn attach_face(&mut self, pos: usize, k: usize, rest: &[i32]) -> usize {
        assert!(pos + k <= self.contour.len().max(pos), "segment leaves the contour");
        let a = self.vertex_at(pos);
        let b = self.vertex_at(pos + k);
        let segment: Vec<usize> = self.contour[pos..pos + k].to_vec();
        let mut path = Vec::with_capacity(rest.len());
        let mut at = b;
        for (j, &code) in rest.iter().enumerate() {
            let to = if j + 1 == rest.len() { a } else { self.new_vertex() };
            path.push(self.new_edge(at, to, code));
            at = to;
        }
        assert!(!rest.is_empty() || a == b, "face boundary is not closed");
        let mut cycle = segment;
        cycle.extend_from_slice(&path);
        self.faces.push(cycle);
        let replacement: Vec<usize> = path.iter().rev().map(|&d| self.darts[d].inv).collect();
        self.contour.splice(pos..pos + k, replacement);
        self.base = if self.contour.is_empty() { a } else { self.vertex_at(0) };
        self.faces.len() - 1
    }

    pub fn finish(self) -> Diagram {
        Diagram {
            vertices: (0..self.vertices).collect(),
            darts: self.darts,
            faces: self.faces.into_iter().enumerate().map(|(id, cycle)| Face { id, cycle }).collect(),
            contours: vec![self.contour],
        }
    }
}
