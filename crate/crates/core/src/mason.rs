//! Linear signal-flow graphs and Mason's gain formula.
//!
//! Loops are enumerated as simple cycles rooted at their smallest node index,
//! so every cycle appears exactly once per distinct sequence of branches.
//! Parallel branches are kept as separate records and produce separate
//! loops/paths.

use num_complex::Complex64;

use crate::error::{FopaError, Result};

/// Determinants at or below this magnitude are treated as zero.
pub const DETERMINANT_TOLERANCE: f64 = 1e-9;

/// Maximum node count; node sets are stored as `u64` bitmasks.
pub const MAX_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub from: NodeId,
    pub to: NodeId,
    pub gain: Complex64,
}

/// A closed or open walk through the graph together with its total gain.
#[derive(Debug, Clone, PartialEq)]
pub struct GainPath {
    pub nodes: Vec<NodeId>,
    pub gain: Complex64,
    mask: u64,
}

impl GainPath {
    pub fn touches(&self, other: &GainPath) -> bool {
        self.mask & other.mask != 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct SignalFlowGraph {
    names: Vec<String>,
    branches: Vec<Branch>,
}

impl SignalFlowGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> Result<NodeId> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(FopaError::InvalidParameter(format!("duplicate node {name}")));
        }
        if self.names.len() == MAX_NODES {
            return Err(FopaError::InvalidParameter(format!("signal-flow graphs are limited to {MAX_NODES} nodes")));
        }
        self.names.push(name);
        Ok(NodeId(self.names.len() - 1))
    }

    pub fn add_branch(&mut self, from: NodeId, to: NodeId, gain: Complex64) -> Result<()> {
        for id in [from, to] {
            if id.0 >= self.names.len() {
                return Err(FopaError::InvalidParameter(format!("unknown node #{}", id.0)));
            }
        }
        if !(gain.re.is_finite() && gain.im.is_finite()) {
            return Err(FopaError::InvalidParameter("non-finite branch gain".into()));
        }
        self.branches.push(Branch { from, to, gain });
        Ok(())
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    fn outgoing(&self, from: NodeId) -> impl Iterator<Item = &Branch> {
        self.branches.iter().filter(move |b| b.from == from)
    }

    /// All simple cycles (loops) of the graph.
    pub fn loops(&self) -> Vec<GainPath> {
        let mut found = Vec::new();
        for root in 0..self.names.len() {
            let root = NodeId(root);
            let mut stack = vec![root];
            self.extend_cycles(root, root, Complex64::new(1.0, 0.0), 1 << root.0, &mut stack, &mut found);
        }
        found
    }

    fn extend_cycles(
        &self,
        root: NodeId,
        at: NodeId,
        gain: Complex64,
        mask: u64,
        stack: &mut Vec<NodeId>,
        found: &mut Vec<GainPath>,
    ) {
        for b in self.outgoing(at) {
            if b.to == root {
                found.push(GainPath { nodes: stack.clone(), gain: gain * b.gain, mask });
            } else if b.to > root && mask & (1 << b.to.0) == 0 {
                stack.push(b.to);
                self.extend_cycles(root, b.to, gain * b.gain, mask | (1 << b.to.0), stack, found);
                stack.pop();
            }
        }
    }

    /// All simple forward paths from `source` to `sink`.
    pub fn forward_paths(&self, source: NodeId, sink: NodeId) -> Vec<GainPath> {
        let mut found = Vec::new();
        let mut stack = vec![source];
        self.extend_paths(sink, source, Complex64::new(1.0, 0.0), 1 << source.0, &mut stack, &mut found);
        found
    }

    fn extend_paths(
        &self,
        sink: NodeId,
        at: NodeId,
        gain: Complex64,
        mask: u64,
        stack: &mut Vec<NodeId>,
        found: &mut Vec<GainPath>,
    ) {
        if at == sink {
            found.push(GainPath { nodes: stack.clone(), gain, mask });
            return;
        }
        for b in self.outgoing(at) {
            if mask & (1 << b.to.0) == 0 {
                stack.push(b.to);
                self.extend_paths(sink, b.to, gain * b.gain, mask | (1 << b.to.0), stack, found);
                stack.pop();
            }
        }
    }

    /// Graph determinant `1 - ΣL + ΣL·L - ...` over the loops not touching
    /// `excluded` (a node bitmask).
    fn determinant(loops: &[GainPath], excluded: u64) -> Complex64 {
        let usable: Vec<&GainPath> = loops.iter().filter(|l| l.mask & excluded == 0).collect();
        // sum over every set of pairwise non-touching loops of (-1)^k Π gains
        fn walk(usable: &[&GainPath], start: usize, used: u64, sign_gain: Complex64) -> Complex64 {
            let mut total = Complex64::new(0.0, 0.0);
            for (i, l) in usable.iter().enumerate().skip(start) {
                if l.mask & used == 0 {
                    let term = -sign_gain * l.gain;
                    total += term + walk(usable, i + 1, used | l.mask, term);
                }
            }
            total
        }
        Complex64::new(1.0, 0.0) + walk(&usable, 0, 0, Complex64::new(1.0, 0.0))
    }

    /// Determinant of the whole graph.
    pub fn graph_determinant(&self) -> Complex64 {
        Self::determinant(&self.loops(), 0)
    }

    /// Transfer gain from `source` to `sink` by Mason's gain formula.
    pub fn transfer(&self, source: NodeId, sink: NodeId) -> Result<Complex64> {
        let paths = self.forward_paths(source, sink);
        if paths.is_empty() {
            return Err(FopaError::NoForwardPath {
                source_node: self.name(source).to_string(),
                sink_node: self.name(sink).to_string(),
            });
        }
        let loops = self.loops();
        let delta = Self::determinant(&loops, 0);
        if delta.norm() <= DETERMINANT_TOLERANCE {
            return Err(FopaError::ZeroDeterminant { delta_abs: delta.norm() });
        }
        let numerator: Complex64 = paths.iter().map(|p| p.gain * Self::determinant(&loops, p.mask)).sum();
        Ok(numerator / delta)
    }

    /// Cofactor Δ_i of a forward path: the determinant of the loops it does
    /// not touch.
    pub fn cofactor(&self, path: &GainPath) -> Complex64 {
        Self::determinant(&self.loops(), path.mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn acyclic_chain_multiplies_gains() {
        let mut g = SignalFlowGraph::new();
        let x = g.add_node("x").unwrap();
        let y = g.add_node("y").unwrap();
        let z = g.add_node("z").unwrap();
        let (p, q) = (Complex64::new(0.3, -1.2), Complex64::new(2.0, 0.5));
        g.add_branch(x, y, p).unwrap();
        g.add_branch(y, z, q).unwrap();
        assert!(g.loops().is_empty());
        assert_eq!(g.graph_determinant(), c(1.0));
        assert_eq!(g.transfer(x, z).unwrap(), p * q);
    }

    #[test]
    fn single_feedback_loop() {
        // x -a-> y, y -b-> y' , y' -f-> y : H = a b / (1 - b f)
        let mut g = SignalFlowGraph::new();
        let x = g.add_node("x").unwrap();
        let y = g.add_node("y").unwrap();
        let w = g.add_node("w").unwrap();
        g.add_branch(x, y, c(2.0)).unwrap();
        g.add_branch(y, w, c(3.0)).unwrap();
        g.add_branch(w, y, c(0.1)).unwrap();
        assert_eq!(g.loops().len(), 1);
        assert_relative_eq!(g.transfer(x, w).unwrap().re, 6.0 / (1.0 - 0.3), epsilon = 1e-14);
    }

    #[test]
    fn non_touching_loops_enter_determinant_as_products() {
        // two disjoint self-feedback pairs in series
        let mut g = SignalFlowGraph::new();
        let n: Vec<_> = (0..4).map(|i| g.add_node(format!("n{i}")).unwrap()).collect();
        g.add_branch(n[0], n[1], c(1.0)).unwrap();
        g.add_branch(n[1], n[0], c(0.2)).unwrap();
        g.add_branch(n[1], n[2], c(1.0)).unwrap();
        g.add_branch(n[2], n[3], c(1.0)).unwrap();
        g.add_branch(n[3], n[2], c(0.5)).unwrap();
        let d = g.graph_determinant();
        assert_relative_eq!(d.re, 1.0 - 0.2 - 0.5 + 0.1, epsilon = 1e-15);
        assert_relative_eq!(g.transfer(n[0], n[3]).unwrap().re, 1.0 / ((1.0 - 0.2) * (1.0 - 0.5)), epsilon = 1e-14);
    }

    #[test]
    fn parallel_branches_are_distinct_paths() {
        let mut g = SignalFlowGraph::new();
        let x = g.add_node("x").unwrap();
        let y = g.add_node("y").unwrap();
        g.add_branch(x, y, c(1.5)).unwrap();
        g.add_branch(x, y, c(-0.25)).unwrap();
        assert_eq!(g.forward_paths(x, y).len(), 2);
        assert_eq!(g.transfer(x, y).unwrap(), c(1.25));
    }

    #[test]
    fn unit_loop_gain_is_a_zero_determinant() {
        let mut g = SignalFlowGraph::new();
        let x = g.add_node("x").unwrap();
        let y = g.add_node("y").unwrap();
        g.add_branch(x, y, c(1.0)).unwrap();
        g.add_branch(y, y, c(1.0)).unwrap();
        assert!(matches!(g.transfer(x, y), Err(FopaError::ZeroDeterminant { .. })));
    }

    #[test]
    fn missing_path_and_unknown_nodes_are_rejected() {
        let mut g = SignalFlowGraph::new();
        let x = g.add_node("x").unwrap();
        let y = g.add_node("y").unwrap();
        g.add_branch(y, x, c(1.0)).unwrap();
        assert!(matches!(g.transfer(x, y), Err(FopaError::NoForwardPath { .. })));
        assert!(g.add_branch(x, NodeId(7), c(1.0)).is_err());
        assert!(g.add_node("x").is_err());
    }
}
