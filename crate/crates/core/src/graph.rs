//! Modified species–reaction graph and the edge-rewriting binomiality test.
//!
//! The graph is bipartite: one vertex per species, one per non-degenerate
//! reaction, and an undirected edge `(s, r)` labelled with the net
//! consumption of `s` by `r` whenever that is nonzero. [`transform`] visits
//! the reaction vertices in order; each one marks an unmarked species
//! neighbour and eliminates the reaction's other incidences, adding,
//! relabelling or deleting edges around the marked species. This is
//! Gauss–Jordan elimination on the sparse structure: the graph read as a
//! matrix (species rows, reaction columns) after each visit equals the
//! matrix after the corresponding (unnormalised) pivot step.
//!
//! A transformed graph is binomial iff every component with a species vertex
//! is either a lone species vertex or one species vertex joined to one
//! reaction vertex.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomposition::species_coefficient;
use crate::matrix::{reaction_label, BinomialCoefficientMatrix, Rational, RationalMatrix};
use crate::network::ReactionNetwork;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRGraph {
    species_names: Vec<String>,
    reaction_names: Vec<String>,
    marked: Vec<bool>,
    /// species -> reaction -> label
    species_adj: Vec<HashMap<usize, Rational>>,
    /// reaction -> species
    reaction_adj: Vec<HashSet<usize>>,
}

impl SRGraph {
    /// Graph with the given vertices and no edges.
    pub fn empty(species_names: Vec<String>, reaction_names: Vec<String>) -> Self {
        let (n, r) = (species_names.len(), reaction_names.len());
        Self {
            species_names,
            reaction_names,
            marked: vec![false; n],
            species_adj: vec![HashMap::new(); n],
            reaction_adj: vec![HashSet::new(); r],
        }
    }

    /// Reverse of [`graph_to_matrix`]: one edge per nonzero entry.
    pub fn from_matrix(m: &BinomialCoefficientMatrix) -> Self {
        let mut g = Self::empty(m.row_labels.clone(), m.col_labels.clone());
        for (s, row) in m.entries.iter().enumerate() {
            for (r, &v) in row.iter().enumerate() {
                g.set_label(s, r, Rational::from_int(v));
            }
        }
        g
    }

    pub fn num_species(&self) -> usize {
        self.species_names.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reaction_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.species_adj.iter().map(HashMap::len).sum()
    }

    pub fn species_names(&self) -> &[String] {
        &self.species_names
    }

    pub fn reaction_names(&self) -> &[String] {
        &self.reaction_names
    }

    pub fn is_marked(&self, s: usize) -> bool {
        self.marked[s]
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    pub fn label(&self, s: usize, r: usize) -> Option<&Rational> {
        self.species_adj[s].get(&r)
    }

    /// Species neighbours of a reaction vertex, ascending.
    pub fn species_of(&self, r: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.reaction_adj[r].iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Reaction neighbours of a species vertex with their labels, ascending.
    pub fn reactions_of(&self, s: usize) -> Vec<(usize, Rational)> {
        let mut v: Vec<(usize, Rational)> =
            self.species_adj[s].iter().map(|(&r, l)| (r, l.clone())).collect();
        v.sort_unstable_by_key(|&(r, _)| r);
        v
    }

    /// Sets the label of `(s, r)`, creating the edge if needed. A zero label
    /// removes the edge.
    pub fn set_label(&mut self, s: usize, r: usize, label: Rational) {
        if label.is_zero() {
            self.remove_edge(s, r);
        } else {
            self.species_adj[s].insert(r, label);
            self.reaction_adj[r].insert(s);
        }
    }

    pub fn remove_edge(&mut self, s: usize, r: usize) {
        self.species_adj[s].remove(&r);
        self.reaction_adj[r].remove(&s);
    }

    /// All edges `(species, reaction, label)` sorted by species then reaction.
    pub fn edges(&self) -> Vec<(usize, usize, Rational)> {
        let mut e: Vec<_> = self
            .species_adj
            .iter()
            .enumerate()
            .flat_map(|(s, adj)| adj.iter().map(move |(&r, l)| (s, r, l.clone())))
            .collect();
        e.sort_unstable_by_key(|&(s, r, _)| (s, r));
        e
    }

    /// Checks the structural invariants: no zero labels and consistent
    /// adjacency in both directions.
    pub fn check_invariants(&self) -> bool {
        let forward_ok = self.species_adj.iter().enumerate().all(|(s, adj)| {
            adj.iter().all(|(&r, l)| !l.is_zero() && self.reaction_adj[r].contains(&s))
        });
        let backward_ok = self
            .reaction_adj
            .iter()
            .enumerate()
            .all(|(r, adj)| adj.iter().all(|&s| self.species_adj[s].contains_key(&r)));
        forward_ok && backward_ok
    }

    /// DOT rendering: species as circles (marked ones filled), reactions as
    /// boxes, edge labels as exact rationals.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", dot_id(name));
        for (s, sname) in self.species_names.iter().enumerate() {
            let style = if self.marked[s] { ", style=filled, fillcolor=lightgray" } else { "" };
            let _ = writeln!(out, "  s{s} [label={}, shape=circle{style}];", dot_id(sname));
        }
        for (r, rname) in self.reaction_names.iter().enumerate() {
            let _ = writeln!(out, "  r{r} [label={}, shape=box];", dot_id(rname));
        }
        for (s, r, l) in self.edges() {
            let _ = writeln!(out, "  s{s} -- r{r} [label=\"{l}\"];");
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One vertex per species and per non-degenerate reaction, an edge wherever
/// the species coefficient is nonzero, all species unmarked.
pub fn create_graph(net: &ReactionNetwork) -> SRGraph {
    let reactions: Vec<_> = net.nondegenerate_reactions().collect();
    let mut g = SRGraph::empty(
        net.species_names().to_vec(),
        reactions.iter().map(|rx| reaction_label(rx.index)).collect(),
    );
    for (r, rx) in reactions.iter().enumerate() {
        for s in rx.reactant.species().chain(rx.product.species()) {
            let c = species_coefficient(rx, s);
            if c != 0 {
                g.set_label(s.0, r, Rational::from_int(c));
            }
        }
    }
    g
}

/// What happened when one reaction vertex was visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub reaction: usize,
    /// Species vertex marked at this step; `None` if the reaction was
    /// skipped because all its species were already marked (or it had none).
    pub pivot: Option<usize>,
}

/// Rewrites `g` in place, visiting reaction vertices in ascending order and
/// calling `observe` after each visit.
pub fn transform_observed<F>(g: &mut SRGraph, mut observe: F) -> Vec<StepRecord>
where
    F: FnMut(&SRGraph, &StepRecord),
{
    let mut trace = Vec::with_capacity(g.num_reactions());
    for r in 0..g.num_reactions() {
        let r_species = g.species_of(r);
        let pivot = r_species.iter().copied().find(|&s| !g.marked[s]);
        if let Some(cs) = pivot {
            g.marked[cs] = true;
            let pivot_label = g.species_adj[cs][&r].clone();
            // the marked species' row is not modified during this visit
            let cs_reactions: Vec<(usize, Rational)> = g.species_adj[cs]
                .iter()
                .filter(|&(&r2, _)| r2 != r)
                .map(|(&r2, l)| (r2, l.clone()))
                .collect();
            for &other in r_species.iter().filter(|&&s| s != cs) {
                let mult = -(&g.species_adj[other][&r] / &pivot_label);
                g.remove_edge(other, r);
                for (r2, cs_label) in &cs_reactions {
                    let shift = cs_label * &mult;
                    match g.species_adj[other].get_mut(r2) {
                        Some(existing) => {
                            *existing += shift;
                            if existing.is_zero() {
                                g.remove_edge(other, *r2);
                            }
                        }
                        None => g.set_label(other, *r2, shift),
                    }
                }
            }
        }
        let step = StepRecord { reaction: r, pivot };
        observe(g, &step);
        trace.push(step);
    }
    trace
}

/// Returns the fully rewritten graph.
pub fn transform(g: &SRGraph) -> SRGraph {
    let mut out = g.clone();
    transform_observed(&mut out, |_, _| {});
    out
}

/// Connected component of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub species: Vec<usize>,
    pub reactions: Vec<usize>,
}

impl Component {
    /// A lone species, or one species with one reaction.
    pub fn is_binomial(&self) -> bool {
        match self.species.len() {
            0 => true,
            1 => self.reactions.len() <= 1,
            _ => false,
        }
    }
}

/// Components ordered by their smallest species (components without species
/// come last, by reaction).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub components: Vec<Component>,
}

pub fn components(g: &SRGraph) -> ComponentSummary {
    let mut seen_s = vec![false; g.num_species()];
    let mut seen_r = vec![false; g.num_reactions()];
    let mut out = Vec::new();
    let explore = |start: Vertex, seen_s: &mut Vec<bool>, seen_r: &mut Vec<bool>| {
        let mut comp = Component { species: vec![], reactions: vec![] };
        let mut stack = vec![start];
        match start {
            Vertex::Species(s) => seen_s[s] = true,
            Vertex::Reaction(r) => seen_r[r] = true,
        }
        while let Some(v) = stack.pop() {
            match v {
                Vertex::Species(s) => {
                    comp.species.push(s);
                    for &r in g.species_adj[s].keys() {
                        if !seen_r[r] {
                            seen_r[r] = true;
                            stack.push(Vertex::Reaction(r));
                        }
                    }
                }
                Vertex::Reaction(r) => {
                    comp.reactions.push(r);
                    for &s in &g.reaction_adj[r] {
                        if !seen_s[s] {
                            seen_s[s] = true;
                            stack.push(Vertex::Species(s));
                        }
                    }
                }
            }
        }
        comp.species.sort_unstable();
        comp.reactions.sort_unstable();
        comp
    };
    for s in 0..g.num_species() {
        if !seen_s[s] {
            out.push(explore(Vertex::Species(s), &mut seen_s, &mut seen_r));
        }
    }
    for r in 0..g.num_reactions() {
        if !seen_r[r] {
            out.push(explore(Vertex::Reaction(r), &mut seen_s, &mut seen_r));
        }
    }
    ComponentSummary { components: out }
}

#[derive(Clone, Copy)]
enum Vertex {
    Species(usize),
    Reaction(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVerdict {
    pub verdict: Verdict,
    pub summary: ComponentSummary,
    /// Indices into `summary.components` that break the criterion.
    pub violating_components: Vec<usize>,
    /// Reaction vertices left without any edge; they do not affect the verdict.
    pub isolated_reactions: Vec<usize>,
}

/// Component criterion on a transformed graph.
pub fn is_unconditionally_binomial_graph(g: &SRGraph) -> GraphVerdict {
    let summary = components(g);
    let violating_components: Vec<usize> = summary
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_binomial())
        .map(|(i, _)| i)
        .collect();
    let isolated_reactions = summary
        .components
        .iter()
        .filter(|c| c.species.is_empty())
        .flat_map(|c| c.reactions.iter().copied())
        .collect();
    let verdict = if violating_components.is_empty() {
        Verdict::UnconditionallyBinomial
    } else {
        Verdict::NotUnconditionallyBinomial
    };
    GraphVerdict { verdict, summary, violating_components, isolated_reactions }
}

/// Species rows, reaction columns, edge labels as entries.
pub fn graph_to_matrix(g: &SRGraph) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(g.num_species(), g.num_reactions());
    for (s, adj) in g.species_adj.iter().enumerate() {
        for (&r, l) in adj {
            m.set(s, r, l.clone());
        }
    }
    m
}

/// Runs the whole graph route on a network.
pub fn graph_method(net: &ReactionNetwork) -> (SRGraph, Vec<StepRecord>, GraphVerdict) {
    let mut g = create_graph(net);
    let trace = transform_observed(&mut g, |_, _| {});
    let verdict = is_unconditionally_binomial_graph(&g);
    (g, trace, verdict)
}

/// Human-readable description of a component, e.g. `{B, C | r1, r2, r3}`.
pub fn describe_component(g: &SRGraph, c: &Component) -> String {
    let s: Vec<&str> = c.species.iter().map(|&i| g.species_names[i].as_str()).collect();
    let r: Vec<&str> = c.reactions.iter().map(|&i| g.reaction_names[i].as_str()).collect();
    format!("{{{} | {}}}", s.join(", "), r.join(", "))
}

/// Largest absolute edge label; useful when inspecting coefficient growth.
pub fn max_label_magnitude(g: &SRGraph) -> Option<Rational> {
    g.species_adj.iter().flat_map(|adj| adj.values()).map(|l| l.abs()).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::build_matrix;
    use crate::parser::parse_network;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn example2_graph_shape() {
        let net = parse_network("2A + B <=> C <=> A <=> 2B").unwrap();
        let g = create_graph(&net);
        // r1 touches A, B, C; r2 touches C, A; r3 touches A, B
        assert_eq!((g.num_species(), g.num_reactions(), g.num_edges()), (3, 3, 7));
        assert_eq!(g.label(0, 0), Some(&q(2)));
        assert_eq!(g.label(2, 0), Some(&q(-1)));
        assert_eq!(g.label(1, 1), None);
        assert!(g.check_invariants());
    }

    #[test]
    fn create_graph_matches_matrix() {
        let net = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        let g = create_graph(&net);
        assert_eq!(graph_to_matrix(&g), build_matrix(&net).to_rational());
        assert_eq!(SRGraph::from_matrix(&build_matrix(&net)), g);
    }

    #[test]
    fn degenerate_network_has_no_reaction_vertices() {
        let net = parse_network("A <=> A").unwrap();
        let g = create_graph(&net);
        assert_eq!((g.num_species(), g.num_reactions(), g.num_edges()), (1, 0, 0));
        let m = graph_to_matrix(&g);
        assert_eq!((m.rows(), m.cols()), (1, 0));
        let v = is_unconditionally_binomial_graph(&transform(&g));
        assert_eq!(v.verdict, Verdict::UnconditionallyBinomial);
    }

    #[test]
    fn intro_final_components() {
        let net = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        let (g, trace, v) = graph_method(&net);
        assert_eq!(trace.iter().map(|s| s.pivot).collect::<Vec<_>>(), [Some(0), Some(1)]);
        assert_eq!(v.verdict, Verdict::UnconditionallyBinomial);
        let comps = &v.summary.components;
        assert_eq!(comps.len(), 4);
        assert_eq!(comps[0], Component { species: vec![0], reactions: vec![0] });
        assert_eq!(comps[1], Component { species: vec![1], reactions: vec![1] });
        assert_eq!(comps[2], Component { species: vec![2], reactions: vec![] });
        assert_eq!(comps[3], Component { species: vec![3], reactions: vec![] });
        assert_eq!(g.label(0, 0), Some(&q(1)));
        assert_eq!(g.label(1, 1), Some(&q(1)));
    }

    #[test]
    fn single_reaction() {
        let net = parse_network("A <=> B").unwrap();
        let (g, _, v) = graph_method(&net);
        assert!(g.is_marked(0) && !g.is_marked(1));
        assert_eq!(g.num_edges(), 1);
        assert_eq!(
            v.summary.components,
            vec![
                Component { species: vec![0], reactions: vec![0] },
                Component { species: vec![1], reactions: vec![] }
            ]
        );
    }

    #[test]
    fn example3_final_component() {
        let net = parse_network("3 B <=> 2 C + A <=> 2 D + 2 B <=> 3 B").unwrap();
        let (g, trace, v) = graph_method(&net);
        assert_eq!(v.verdict, Verdict::NotUnconditionallyBinomial);
        assert_eq!(v.violating_components.len(), 1);
        let bad = &v.summary.components[v.violating_components[0]];
        assert_eq!((bad.species.len(), bad.reactions.len()), (2, 3));
        assert_eq!(describe_component(&g, bad), "{B, C | r1, r2, r3}");
        // third reaction vertex only touches marked species
        assert_eq!(trace[2].pivot, None);
        assert!(v.isolated_reactions.is_empty());
    }

    #[test]
    fn edgeless_graph_is_binomial() {
        let g = SRGraph::empty(vec!["A".into(), "B".into()], vec![]);
        assert_eq!(is_unconditionally_binomial_graph(&g).verdict, Verdict::UnconditionallyBinomial);
    }

    #[test]
    fn isolated_reaction_vertex_is_neutral() {
        let g = SRGraph::empty(vec!["A".into()], vec!["r1".into()]);
        let v = is_unconditionally_binomial_graph(&g);
        assert_eq!(v.verdict, Verdict::UnconditionallyBinomial);
        assert_eq!(v.isolated_reactions, vec![0]);
    }

    #[test]
    fn duplicate_reactions_collapse_onto_one_species() {
        // two parallel copies of A <=> B: second column becomes dependent
        let net = parse_network("A <=> B\nA <=> B").unwrap();
        let (g, trace, v) = graph_method(&net);
        assert_eq!(trace[1].pivot, None);
        assert_eq!(g.reactions_of(0), vec![(0, q(1)), (1, q(1))]);
        assert_eq!(v.verdict, Verdict::NotUnconditionallyBinomial);
    }

    #[test]
    fn dot_output() {
        let net = parse_network("A <=> 2 B").unwrap();
        let (g, _, _) = graph_method(&net);
        assert_eq!(
            g.to_dot("m"),
            "graph \"m\" {\n  s0 [label=\"A\", shape=circle, style=filled, fillcolor=lightgray];\n  s1 [label=\"B\", shape=circle];\n  r0 [label=\"r1\", shape=box];\n  s0 -- r0 [label=\"1\"];\n}\n"
        );
    }
}
