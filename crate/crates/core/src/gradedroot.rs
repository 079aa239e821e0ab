//! Graded roots glued from a finite sequence whose tail is nondecreasing.
//!
//! The vertices at grading `h` are the connected components of
//! `{n : τ(n) ≤ h}` inside the window. They are built by a union-find sweep
//! that activates indices in order of their `τ` value. Above the stabilization
//! grading `max τ` there is one vertex per grading; those are left implicit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::deltaseq::AbstractDeltaSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedRootError {
    #[error("cannot build a graded root from an empty sequence")]
    EmptySequence,
    #[error("unknown render format {0:?} (expected ascii, dot or svg)")]
    UnknownFormat(String),
    #[error("grading window of size {0} is too large")]
    WindowTooLarge(i64),
}

pub type Result<T> = std::result::Result<T, GradedRootError>;

const MAX_WINDOW: i64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub grading: i64,
    /// Smallest ray index in the component.
    pub ray: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRoot {
    /// Sorted by `(grading, ray)`; the index is the vertex id.
    vertices: Vec<Vertex>,
    parent: Vec<Option<usize>>,
    children: Vec<u32>,
    /// First vertex id at each grading, plus a sentinel.
    level_start: Vec<usize>,
    min_grading: i64,
    stabilization: i64,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Roots are always the smallest index of their class.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl GradedRoot {
    pub fn from_tau(tau: &[i64]) -> Result<Self> {
        if tau.is_empty() {
            return Err(GradedRootError::EmptySequence);
        }
        let min_grading = *tau.iter().min().unwrap();
        let stabilization = *tau.iter().max().unwrap();
        let span = stabilization - min_grading;
        if span > MAX_WINDOW {
            return Err(GradedRootError::WindowTooLarge(span));
        }

        let n = tau.len();
        // counting sort by grading, ties by index
        let mut start = vec![0usize; span as usize + 2];
        for &h in tau {
            start[(h - min_grading) as usize + 1] += 1;
        }
        for k in 1..start.len() {
            start[k] += start[k - 1];
        }
        let mut order = vec![0usize; n];
        for (i, &h) in tau.iter().enumerate() {
            let slot = &mut start[(h - min_grading) as usize];
            order[*slot] = i;
            *slot += 1;
        }

        let mut dsu = Dsu { parent: (0..n).collect() };
        let mut active = vec![false; n];
        let mut vertex_of_root = vec![usize::MAX; n];
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut parent: Vec<Option<usize>> = Vec::new();
        let mut level_start = Vec::with_capacity(span as usize + 2);
        let mut live: Vec<usize> = Vec::new();
        let mut previous: Vec<(usize, usize)> = Vec::new();
        let mut next = 0usize;

        for h in min_grading..=stabilization {
            while next < n && tau[order[next]] == h {
                let i = order[next];
                active[i] = true;
                if i > 0 && active[i - 1] {
                    dsu.union(i, i - 1);
                }
                if i + 1 < n && active[i + 1] {
                    dsu.union(i, i + 1);
                }
                live.push(i);
                next += 1;
            }
            previous.clear();
            if let Some(&first) = level_start.last() {
                previous.extend((first..vertices.len()).map(|v| (v, vertices[v].ray)));
            }
            for r in live.iter_mut() {
                *r = dsu.find(*r);
            }
            live.sort_unstable();
            live.dedup();

            level_start.push(vertices.len());
            for &r in &live {
                vertex_of_root[r] = vertices.len();
                vertices.push(Vertex { grading: h, ray: r });
                parent.push(None);
            }
            for &(v, ray) in &previous {
                parent[v] = Some(vertex_of_root[dsu.find(ray)]);
            }
        }
        level_start.push(vertices.len());

        let mut children = vec![0u32; vertices.len()];
        for p in parent.iter().flatten() {
            children[*p] += 1;
        }
        Ok(Self {
            vertices,
            parent,
            children,
            level_start,
            min_grading,
            stabilization,
        })
    }

    /// The root of `τ_Δ` over `X⁺`.
    pub fn from_delta_sequence(ads: &AbstractDeltaSequence) -> Result<Self> {
        Self::from_tau(&ads.tau_of())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `(child, parent)` pairs inside the stored window.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (c, p)))
            .collect()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn min_grading(&self) -> i64 {
        self.min_grading
    }

    pub fn stabilization_grading(&self) -> i64 {
        self.stabilization
    }

    fn level(&self, h: i64) -> std::ops::Range<usize> {
        if h < self.min_grading || h > self.stabilization {
            return 0..0;
        }
        let k = (h - self.min_grading) as usize;
        self.level_start[k]..self.level_start[k + 1]
    }

    /// Vertices per grading from the bottom up to stabilization; 1 above.
    pub fn vertex_counts(&self) -> BTreeMap<i64, usize> {
        (self.min_grading..=self.stabilization)
            .map(|h| (h, self.level(h).len()))
            .collect()
    }

    pub fn count_at(&self, h: i64) -> usize {
        if h > self.stabilization {
            1
        } else {
            self.level(h).len()
        }
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v] == 0
    }

    pub fn leaves(&self) -> usize {
        self.children.iter().filter(|&&c| c == 0).count()
    }

    fn parents_at(&self, h: i64) -> usize {
        if h > self.stabilization {
            return 1;
        }
        self.level(h).filter(|&v| !self.is_leaf(v)).count()
    }

    /// `count(h) - 1` wherever positive.
    pub fn red_ranks_by_degree(&self) -> BTreeMap<i64, usize> {
        (self.min_grading..=self.stabilization)
            .map(|h| (h, self.level(h).len().saturating_sub(1)))
            .filter(|&(_, r)| r > 0)
            .collect()
    }

    pub fn red_rank(&self) -> usize {
        self.red_ranks_by_degree().values().sum()
    }

    /// Leaves at `h` plus the cokernel of `U` landing at `h`, labelled by root grading.
    pub fn hat_ranks_by_degree(&self) -> BTreeMap<i64, usize> {
        (self.min_grading..=self.stabilization)
            .map(|h| {
                let leaves = self.level(h).filter(|&v| self.is_leaf(v)).count();
                let coker = self.count_at(h) - self.parents_at(h + 1);
                (h, leaves + coker)
            })
            .filter(|&(_, r)| r > 0)
            .collect()
    }

    pub fn hat_rank(&self) -> usize {
        self.hat_ranks_by_degree().values().sum()
    }

    pub fn render(&self, format: &str) -> Result<String> {
        match format {
            "ascii" => Ok(self.render_ascii()),
            "dot" => Ok(self.render_dot()),
            "svg" => Ok(self.render_svg()),
            other => Err(GradedRootError::UnknownFormat(other.to_string())),
        }
    }

    /// Leaf columns left to right, and each vertex's column (that of its leftmost leaf).
    fn layout(&self) -> (usize, Vec<usize>) {
        let mut column = vec![usize::MAX; self.vertices.len()];
        let mut leaves: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.is_leaf(v)).collect();
        leaves.sort_by_key(|&v| self.vertices[v].ray);
        for (col, &leaf) in leaves.iter().enumerate() {
            let mut v = Some(leaf);
            while let Some(cur) = v {
                if column[cur] != usize::MAX {
                    break;
                }
                column[cur] = col;
                v = self.parent[cur];
            }
        }
        (leaves.len(), column)
    }

    fn render_ascii(&self) -> String {
        const STEP: usize = 4;
        let (leaf_count, column) = self.layout();
        let top = self.stabilization + 1;
        let label_width = (self.min_grading..=top)
            .map(|h| h.to_string().len())
            .max()
            .unwrap();
        let width = (leaf_count.max(1) - 1) * STEP + 1;
        let mut out = String::new();
        let mut line = |label: &str, art: &[u8]| {
            let art = String::from_utf8_lossy(art);
            let text = format!("{label:>label_width$} | {art}");
            out.push_str(text.trim_end());
            out.push('\n');
        };

        let mut art = vec![b' '; width];
        art[0] = b':';
        line("", &art);
        art[0] = b'o';
        line(&top.to_string(), &art);
        let mut above: Vec<usize> = vec![usize::MAX];
        for h in (self.min_grading..=self.stabilization).rev() {
            let mut connector = vec![b' '; width];
            for &p in &above {
                let kids: Vec<usize> = self
                    .level(h)
                    .filter(|&v| p == usize::MAX || self.parent[v] == Some(p))
                    .map(|v| column[v] * STEP)
                    .collect();
                match kids.as_slice() {
                    [] => {}
                    [single] => connector[*single] = b'|',
                    many => {
                        let (lo, hi) = (many[0], *many.last().unwrap());
                        for c in connector.iter_mut().take(hi + 1).skip(lo) {
                            *c = b'-';
                        }
                        for &k in many {
                            connector[k] = b'+';
                        }
                    }
                }
            }
            line("", &connector);
            let mut row = vec![b' '; width];
            for v in self.level(h) {
                row[column[v] * STEP] = b'o';
            }
            line(&h.to_string(), &row);
            above = self.level(h).collect();
        }
        out
    }

    fn render_dot(&self) -> String {
        let top = self.vertices.len();
        let mut out = String::new();
        out.push_str("digraph graded_root {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{id} [label=\"{}\"];", v.grading);
        }
        let _ = writeln!(out, "  v{top} [label=\"{}\"];", self.stabilization + 1);
        for (c, p) in self.edges() {
            let _ = writeln!(out, "  v{c} -> v{p};");
        }
        let stem = self.level(self.stabilization).start;
        let _ = writeln!(out, "  v{stem} -> v{top};");
        let _ = writeln!(
            out,
            "  stabilization [shape=plaintext, label=\"one vertex per grading above {}\"];",
            self.stabilization
        );
        let _ = writeln!(out, "  v{top} -> stabilization [style=dotted, arrowhead=none];");
        out.push_str("}\n");
        out
    }

    fn render_svg(&self) -> String {
        const STEP: i64 = 40;
        const MARGIN: i64 = 50;
        let (leaf_count, column) = self.layout();
        let top = self.stabilization + 1;
        let rows = top - self.min_grading + 1;
        let width = 2 * MARGIN + STEP * (leaf_count.max(1) as i64 - 1) + STEP;
        let height = 2 * MARGIN + STEP * (rows - 1);
        let x = |col: usize| MARGIN + STEP / 2 + STEP * col as i64;
        let y = |h: i64| MARGIN + STEP * (top - h);

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        for h in self.min_grading..=top {
            let _ = writeln!(
                out,
                "  <text x=\"10\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{h}</text>",
                y(h) + 4
            );
        }
        let stem = self.level(self.stabilization).start;
        let mut segments: Vec<(i64, i64, i64, i64)> = self
            .edges()
            .into_iter()
            .map(|(c, p)| {
                let (vc, vp) = (&self.vertices[c], &self.vertices[p]);
                (x(column[c]), y(vc.grading), x(column[p]), y(vp.grading))
            })
            .collect();
        segments.push((x(column[stem]), y(self.stabilization), x(column[stem]), y(top)));
        segments.push((x(column[stem]), y(top), x(column[stem]), y(top) - STEP / 2));
        for (x1, y1, x2, y2) in segments {
            let _ = writeln!(
                out,
                "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\"/>"
            );
        }
        for (id, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
                x(column[id]),
                y(v.grading)
            );
        }
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
            x(column[stem]),
            y(top)
        );
        out.push_str("</svg>\n");
        out
    }
}
