//! Stage-by-stage construction of a regular planar map.
//!
//! Nodes are grown outward from a base node in breadth-first layers. In stage
//! `k` every node of distance `k` that still lacks edges receives new leaf
//! neighbours; afterwards the open faces along the outer boundary are
//! inspected and closed either by identifying two leaves (when the open face
//! already has `face` edges) or by joining them with a new edge (when it has
//! `face - 1`).
//!
//! The map is stored as a rotation system: each node keeps its neighbours in
//! counter-clockwise order. Faces are traced with the rule
//! `next(u -> v) = v -> pred_v(u)`, which walks interior faces
//! counter-clockwise and the outer face clockwise.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Slot {
    Old(u32),
    Leaf(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gap {
    Open,
    Merge,
    Join,
}

/// Incremental builder for the `(face, degree)` regular map around a base node.
#[derive(Clone, Debug)]
pub struct Construction {
    face: u32,
    degree: u32,
    rot: Vec<Vec<u32>>,
    dist: Vec<u32>,
    faces: Vec<Vec<u32>>,
    walk: Vec<u32>,
    layer_start: Vec<usize>,
    stage_valence: Vec<u32>,
    stages: u32,
}

impl Construction {
    /// Stage 0: the base node alone.
    pub fn new(face: u32, degree: u32) -> Self {
        Construction {
            face,
            degree,
            rot: vec![Vec::new()],
            dist: vec![0],
            faces: Vec::new(),
            walk: vec![0],
            layer_start: vec![0, 1],
            stage_valence: vec![0],
            stages: 0,
        }
    }

    /// Runs `stages` expansion stages from scratch.
    pub fn run(face: u32, degree: u32, stages: u32) -> Result<Self> {
        let mut c = Construction::new(face, degree);
        for _ in 0..stages {
            c.stage()?;
        }
        Ok(c)
    }

    pub fn face_size(&self) -> u32 {
        self.face
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of completed stages; nodes of distance `<= stages()` exist.
    pub fn stages(&self) -> u32 {
        self.stages
    }

    pub fn node_count(&self) -> usize {
        self.rot.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn rotation(&self, node: u32) -> &[u32] {
        &self.rot[node as usize]
    }

    pub fn distance(&self, node: u32) -> u32 {
        self.dist[node as usize]
    }

    /// Closed faces as counter-clockwise node cycles.
    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    /// Degree of a node at the end of the stage that created it.
    pub fn stage_valence(&self, node: u32) -> u32 {
        self.stage_valence[node as usize]
    }

    /// Node ids of distance `n` form a contiguous range.
    pub fn layer(&self, n: u32) -> std::ops::Range<u32> {
        let n = n as usize;
        if n + 1 >= self.layer_start.len() {
            return 0..0;
        }
        self.layer_start[n] as u32..self.layer_start[n + 1] as u32
    }

    /// Number of nodes at each distance `0..=stages()`.
    pub fn layer_sizes(&self) -> Vec<u64> {
        self.layer_start
            .windows(2)
            .map(|w| (w[1] - w[0]) as u64)
            .collect()
    }

    /// Maps each directed edge `(u, v)` of a closed face to that face; the
    /// face lies to the left of `u -> v`.
    pub fn half_edge_faces(&self) -> HashMap<(u32, u32), u32> {
        let mut map = HashMap::with_capacity(self.faces.len() * self.face as usize);
        for (fi, cyc) in self.faces.iter().enumerate() {
            for i in 0..cyc.len() {
                let a = cyc[i];
                let b = cyc[(i + 1) % cyc.len()];
                map.insert((a, b), fi as u32);
            }
        }
        map
    }

    /// Performs one stage: expands every node at distance `stages()`.
    pub fn stage(&mut self) -> Result<()> {
        let k = self.stages;
        let d = self.degree as usize;
        let f = self.face as usize;

        // Expanded outer walk with the leaves inserted, plus per-parent records.
        let mut exp: Vec<Slot> = Vec::new();
        let mut leaf_parent: Vec<u32> = Vec::new();
        // (parent, previous walk node, leaves in ccw order)
        let mut expansions: Vec<(u32, Option<u32>, Vec<usize>)> = Vec::new();

        if k == 0 {
            let mut leaves = Vec::with_capacity(d);
            for _ in 0..d {
                leaves.push(leaf_parent.len());
                leaf_parent.push(0);
            }
            for j in (0..d).rev() {
                exp.push(Slot::Old(0));
                exp.push(Slot::Leaf(leaves[j]));
            }
            expansions.push((0, None, leaves));
        } else {
            let n = self.walk.len();
            let mut seen = HashMap::new();
            for i in 0..n {
                let u = self.walk[i];
                exp.push(Slot::Old(u));
                let ui = u as usize;
                if self.dist[ui] == k && self.rot[ui].len() < d {
                    if seen.insert(u, ()).is_some() {
                        return Err(Error::Inconsistent(format!(
                            "frontier node {u} appears twice on the outer boundary"
                        )));
                    }
                    let m = d - self.rot[ui].len();
                    let mut leaves = Vec::with_capacity(m);
                    for _ in 0..m {
                        leaves.push(leaf_parent.len());
                        leaf_parent.push(u);
                    }
                    for j in (0..m).rev() {
                        exp.push(Slot::Leaf(leaves[j]));
                        exp.push(Slot::Old(u));
                    }
                    let prev = self.walk[(i + n - 1) % n];
                    expansions.push((u, Some(prev), leaves));
                }
            }
            let frontier = self
                .layer(k)
                .filter(|&u| self.rot[u as usize].len() < d)
                .count();
            if frontier != seen.len() {
                return Err(Error::Inconsistent(format!(
                    "stage {k}: {frontier} incomplete nodes but {} on the boundary",
                    seen.len()
                )));
            }
        }

        let nleaves = leaf_parent.len();
        if nleaves < 2 {
            return Err(Error::Inconsistent(format!(
                "stage {k}: fewer than two new leaves"
            )));
        }
        let len = exp.len();
        let mut order = Vec::with_capacity(nleaves);
        let mut pos = vec![0usize; nleaves];
        for (i, s) in exp.iter().enumerate() {
            if let Slot::Leaf(l) = s {
                pos[*l] = i;
                order.push(*l);
            }
        }

        let gaps: Vec<Gap> = (0..nleaves)
            .map(|g| {
                let a = pos[order[g]];
                let b = pos[order[(g + 1) % nleaves]];
                let count = (b + len - a) % len;
                if count == f {
                    Gap::Merge
                } else if count + 1 == f {
                    Gap::Join
                } else {
                    Gap::Open
                }
            })
            .collect();

        let start = (0..nleaves)
            .find(|&g| gaps[(g + nleaves - 1) % nleaves] != Gap::Merge)
            .ok_or_else(|| Error::Inconsistent(format!("stage {k}: boundary closed up")))?;

        // Chains of merged leaves, in boundary order beginning at `start`.
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut g = start;
        let mut visited = 0;
        while visited < nleaves {
            let mut chain = vec![g];
            visited += 1;
            while gaps[g] == Gap::Merge {
                g = (g + 1) % nleaves;
                chain.push(g);
                visited += 1;
            }
            chains.push(chain);
            g = (g + 1) % nleaves;
        }

        let first_new = self.rot.len() as u32;
        let mut class_of = vec![0u32; nleaves];
        for (ci, chain) in chains.iter().enumerate() {
            for &g in chain {
                class_of[order[g]] = first_new + ci as u32;
            }
        }

        let nch = chains.len();
        let mut new_rot: Vec<Vec<u32>> = Vec::with_capacity(nch);
        for (ci, chain) in chains.iter().enumerate() {
            let mut r = Vec::with_capacity(d);
            let g0 = chain[0];
            let g_end = *chain.last().unwrap();
            let g_prev = (g0 + nleaves - 1) % nleaves;
            if gaps[g_prev] == Gap::Join {
                r.push(first_new + ((ci + nch - 1) % nch) as u32);
            }
            for &g in chain {
                r.push(leaf_parent[order[g]]);
            }
            if gaps[g_end] == Gap::Join {
                r.push(first_new + ((ci + 1) % nch) as u32);
            }
            new_rot.push(r);
        }

        // Faces closed in this stage.
        let olds_between = |g: usize| -> Vec<u32> {
            let a = pos[order[g]];
            let b = pos[order[(g + 1) % nleaves]];
            let mut v = Vec::new();
            let mut i = (a + 1) % len;
            while i != b {
                if let Slot::Old(u) = exp[i] {
                    v.push(u);
                }
                i = (i + 1) % len;
            }
            v
        };
        for g in 0..nleaves {
            match gaps[g] {
                Gap::Merge => {
                    let mut cyc = vec![class_of[order[g]]];
                    cyc.extend(olds_between(g));
                    self.faces.push(cyc);
                }
                Gap::Join => {
                    let mut cyc = vec![class_of[order[g]]];
                    cyc.extend(olds_between(g));
                    cyc.push(class_of[order[(g + 1) % nleaves]]);
                    self.faces.push(cyc);
                }
                Gap::Open => {}
            }
        }

        // New outer walk.
        let mut walk = Vec::new();
        for (ci, chain) in chains.iter().enumerate() {
            walk.push(first_new + ci as u32);
            let g_end = *chain.last().unwrap();
            if gaps[g_end] == Gap::Open {
                walk.extend(olds_between(g_end));
            }
        }

        // Attach the new nodes to their parents.
        for (u, prev, leaves) in &expansions {
            let ids: Vec<u32> = leaves.iter().map(|&l| class_of[l]).collect();
            let r = &mut self.rot[*u as usize];
            match prev {
                None => *r = ids,
                Some(a) => {
                    let at = r.iter().position(|x| x == a).ok_or_else(|| {
                        Error::Inconsistent(format!("node {u} is not adjacent to {a}"))
                    })?;
                    r.splice(at..at, ids);
                }
            }
        }
        for r in new_rot {
            self.stage_valence.push(r.len() as u32);
            self.rot.push(r);
            self.dist.push(k + 1);
        }
        self.layer_start.push(self.rot.len());
        self.walk = walk;
        self.stages += 1;

        for u in self.layer(k) {
            if self.rot[u as usize].len() != d {
                return Err(Error::Inconsistent(format!(
                    "stage {k}: node {u} ended with degree {}",
                    self.rot[u as usize].len()
                )));
            }
        }
        Ok(())
    }
}
