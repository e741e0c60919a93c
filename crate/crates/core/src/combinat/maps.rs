use std::fmt;

use num_traits::One;

use super::partitions::partitions_of;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{advance_odometer, CoefficientKey, Color, KernelFamily};

/// Structural type of an enriched map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureClass {
    VertexRootedTree,
    CycleRootedTree,
    Crown,
    GeneralMap,
}

/// An enriched partial endofunction: a map `f: V -> V ∪ S` together with a
/// set partition of every non-empty fiber.
///
/// Nodes are numbered `0..|V|` for vertices followed by `|V|..|V|+|S|` for
/// sinks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedMap {
    vertices: usize,
    sinks: usize,
    f: Vec<usize>,
    fibers: Vec<Vec<Vec<usize>>>,
}

impl EnrichedMap {
    /// Validates and builds a map from its function table and one fiber
    /// partition per node (empty for nodes with empty fiber).
    pub fn new(vertices: usize, sinks: usize, f: Vec<usize>, fibers: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let nodes = vertices + sinks;
        if f.len() != vertices || fibers.len() != nodes {
            return Err(Error::InvalidStructure("table sizes do not match the label sets".into()));
        }
        if f.iter().any(|&t| t >= nodes) {
            return Err(Error::InvalidStructure("map target out of range".into()));
        }
        for (u, partition) in fibers.iter().enumerate() {
            let mut members: Vec<usize> = partition.iter().flatten().copied().collect();
            members.sort_unstable();
            if partition.iter().any(Vec::is_empty) || members != fiber_of(&f, u) {
                return Err(Error::InvalidStructure(format!(
                    "fiber partition of node {u} does not partition its preimage"
                )));
            }
        }
        Ok(EnrichedMap { vertices, sinks, f, fibers })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn sinks(&self) -> usize {
        self.sinks
    }

    pub fn function(&self) -> &[usize] {
        &self.f
    }

    pub fn fiber_partition(&self, node: usize) -> &[Vec<usize>] {
        &self.fibers[node]
    }

    pub fn classify(&self) -> StructureClass {
        classify_function(&self.f, self.vertices, self.sinks, |u| self.fibers[u].len())
    }

    /// The weight `prod_v prod_{W in P_v} A_{#W}(x_v; x_W)` for a coloring of
    /// all nodes (vertices first, then sinks).
    pub fn weight(&self, coloring: &[Color], a: &KernelFamily) -> Result<Rational> {
        if coloring.len() != self.vertices + self.sinks {
            return Err(Error::InvalidStructure("coloring must cover every node".into()));
        }
        let mut w = Rational::one();
        for (u, partition) in self.fibers.iter().enumerate() {
            for block in partition {
                if block.len() > a.order() {
                    return Err(Error::BlockTooLarge { size: block.len(), order: a.order() });
                }
                let key = CoefficientKey::new(block.iter().map(|&v| coloring[v]));
                match a.get(coloring[u], &key) {
                    Some(v) => w *= v,
                    None => return Ok(Rational::from_integer(0.into())),
                }
            }
        }
        Ok(w)
    }

    fn label(&self, node: usize) -> String {
        if node < self.vertices {
            (node + 1).to_string()
        } else if self.sinks == 1 {
            "∘".to_string()
        } else {
            format!("∘{}", node - self.vertices + 1)
        }
    }
}

/// Canonical rendering, e.g. `1->∘ 2->1 | 1:{2} ∘:{1}`.
impl fmt::Display for EnrichedMap {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> =
            self.f.iter().enumerate().map(|(v, &t)| format!("{}->{}", self.label(v), self.label(t))).collect();
        write!(out, "{}", arrows.join(" "))?;
        let mut first = true;
        for (u, partition) in self.fibers.iter().enumerate() {
            if partition.is_empty() {
                continue;
            }
            write!(out, "{}", if first { " | " } else { " " })?;
            first = false;
            let blocks: Vec<String> = partition
                .iter()
                .map(|b| {
                    let items: Vec<String> = b.iter().map(|&v| self.label(v)).collect();
                    format!("{{{}}}", items.join(","))
                })
                .collect();
            write!(out, "{}:{}", self.label(u), blocks.join(""))?;
        }
        Ok(())
    }
}

/// Sorted preimage of `node`.
pub(crate) fn fiber_of(f: &[usize], node: usize) -> Vec<usize> {
    f.iter().enumerate().filter(|(_, &t)| t == node).map(|(v, _)| v).collect()
}

/// Number of cycles of `f` restricted to the vertices (sinks end paths).
pub(crate) fn count_cycles(f: &[usize]) -> usize {
    let n = f.len();
    // 0 = unvisited, 1 = on current path, 2 = done
    let mut state = vec![0u8; n];
    let mut cycles = 0;
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while v < n && state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = f[v];
        }
        if v < n && state[v] == 1 {
            cycles += 1;
        }
        for p in path {
            state[p] = 2;
        }
    }
    cycles
}

/// Number of weakly connected components of the graph on all nodes.
pub(crate) fn count_components(f: &[usize], nodes: usize) -> usize {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = nodes;
    for (v, &t) in f.iter().enumerate() {
        let (a, b) = (find(&mut parent, v), find(&mut parent, t));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components
}

pub(crate) fn is_vertex_rooted_tree(f: &[usize], sinks: usize) -> bool {
    sinks == 1 && !f.is_empty() && count_cycles(f) == 0
}

fn classify_function(f: &[usize], vertices: usize, sinks: usize, blocks: impl Fn(usize) -> usize) -> StructureClass {
    if vertices == 0 {
        return StructureClass::GeneralMap;
    }
    if is_vertex_rooted_tree(f, sinks) {
        return StructureClass::VertexRootedTree;
    }
    let maps_to_sink = f.iter().any(|&t| t >= vertices);
    if maps_to_sink || count_cycles(f) != 1 || count_components(f, vertices) != 1 {
        return StructureClass::GeneralMap;
    }
    // a connected map with one cycle: a crown when its image is the cycle and
    // every base fiber is a single block
    let mut on_cycle = vec![false; vertices];
    let mut v = 0;
    for _ in 0..vertices {
        v = f[v];
    }
    let start = v;
    loop {
        on_cycle[v] = true;
        v = f[v];
        if v == start {
            break;
        }
    }
    let image_is_cycle = f.iter().all(|&t| on_cycle[t]);
    let single_blocks = (0..vertices).filter(|&u| on_cycle[u]).all(|u| blocks(u) == 1);
    if image_is_cycle && single_blocks {
        StructureClass::Crown
    } else {
        StructureClass::CycleRootedTree
    }
}

/// Every enriched map `V -> V ∪ S` whose function passes `keep`, in canonical
/// order: function tables lexicographically (first vertex slowest), then
/// fiber partitions node by node.
pub(crate) fn enumerate_filtered(
    vertices: usize,
    sinks: usize,
    keep: impl Fn(&[usize]) -> bool,
) -> Vec<EnrichedMap> {
    let mut out = Vec::new();
    if vertices == 0 {
        return out;
    }
    let nodes = vertices + sinks;
    let mut f = vec![0usize; vertices];
    loop {
        if keep(&f) {
            expand_fibers(vertices, sinks, &f, &mut out);
        }
        if !advance_odometer(&mut f, nodes) {
            break;
        }
    }
    out
}

fn expand_fibers(vertices: usize, sinks: usize, f: &[usize], out: &mut Vec<EnrichedMap>) {
    let nodes = vertices + sinks;
    let options: Vec<Vec<Vec<Vec<usize>>>> = (0..nodes)
        .map(|u| {
            let fiber = fiber_of(f, u);
            if fiber.is_empty() {
                vec![Vec::new()]
            } else {
                partitions_of(&fiber)
            }
        })
        .collect();
    let mut choice = vec![0usize; nodes];
    loop {
        out.push(EnrichedMap {
            vertices,
            sinks,
            f: f.to_vec(),
            fibers: options.iter().zip(&choice).map(|(o, &c)| o[c].clone()).collect(),
        });
        // mixed-radix odometer, first node slowest
        let mut i = nodes;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// All enriched maps `V -> V ∪ S` with `|V| = vertices`, `|S| = sinks`.
/// Empty for `V = ∅`.
pub fn enumerate_enriched_maps(vertices: usize, sinks: usize) -> Vec<EnrichedMap> {
    enumerate_filtered(vertices, sinks, |_| true)
}

/// Enriched maps `V -> V ∪ {∘}` that are vertex-rooted trees.
pub fn enumerate_rooted_trees(vertices: usize) -> Vec<EnrichedMap> {
    enumerate_filtered(vertices, 1, |f| is_vertex_rooted_tree(f, 1))
}
