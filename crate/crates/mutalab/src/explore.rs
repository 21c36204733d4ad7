//! Breadth-first enumeration of mutation classes as exchange graphs,
//! class statistics, and the finite-mutation-type verdict.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::quiver::ValuedQuiver;
use crate::symmetry::{symmetry_witness, Sign};

/// Enumeration budget: node cap and the edge-weight bound beyond which a
/// rank >= 3 class is declared infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of distinct quivers to store.
    pub max_nodes: usize,
    /// Largest admissible edge weight at rank >= 3. Exceeding it is an
    /// infinite-type witness: the finite mutation classes in scope only
    /// realize edge weights 1, 2, 3, and 4, and unbounded weight growth
    /// characterizes infinite type.
    pub max_weight: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_nodes: 100_000,
            max_weight: 4,
        }
    }
}

/// Outcome of a class enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The class closed under mutation within the budget.
    Finite,
    /// An edge weight exceeded `max_weight` at rank >= 3; `path` is the
    /// mutation word (from the seed, applied left to right) producing the
    /// offending quiver, empty when the seed itself offends.
    InfiniteWeightWitness {
        /// Mutation word from the seed to the offending quiver.
        path: Vec<usize>,
        /// The offending edge weight.
        weight: i64,
    },
    /// The node budget was exhausted before closure.
    Inconclusive {
        /// What gave out.
        reason: String,
    },
}

/// The enumerated mutation class: distinct quivers, mutation-labeled
/// arcs, and the finiteness verdict. Node 0 is the seed; numbering is
/// breadth-first with children explored by ascending direction.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    nodes: Vec<ValuedQuiver>,
    arcs: BTreeSet<(usize, usize, usize)>,
    verdict: Verdict,
    limits: Limits,
    /// `discovery[v] = (parent, direction)` for every non-seed node.
    discovery: Vec<Option<(usize, usize)>>,
}

impl ExchangeGraph {
    /// The stored quivers; node 0 is the seed.
    pub fn nodes(&self) -> &[ValuedQuiver] {
        &self.nodes
    }

    /// Arcs `(from, direction, to)` with `mutate(nodes[from], direction)
    /// = nodes[to]`; closed under the mutation involution.
    pub fn arcs(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.arcs
    }

    /// The finiteness verdict.
    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    /// The limits the enumeration ran under.
    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// A shortest mutation word from the seed to `node`, in application
    /// order (left to right).
    pub fn word_to(&self, node: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = node;
        while let Some((parent, k)) = self.discovery[cur] {
            word.push(k);
            cur = parent;
        }
        word.reverse();
        word
    }

    /// Index of `q` among the nodes, by exact `(B, d)` equality.
    pub fn position(&self, q: &ValuedQuiver) -> Option<usize> {
        self.nodes.iter().position(|p| p == q)
    }

    /// Re-derives every stored fact: seed placement, arc equations,
    /// involution closure, node distinctness, and (for a `Finite`
    /// verdict) mutation closure with exactly one arc per node and
    /// mutable direction.
    pub fn audit(&self, seed: &ValuedQuiver) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidCertificate(msg));
        if self.nodes.first() != Some(seed) {
            return fail("node 0 is not the seed".into());
        }
        for (i, p) in self.nodes.iter().enumerate() {
            for q in &self.nodes[i + 1..] {
                if p == q {
                    return fail(format!("duplicate node {i}"));
                }
            }
        }
        for &(a, k, b) in &self.arcs {
            if a >= self.nodes.len() || b >= self.nodes.len() {
                return fail(format!("arc ({a},{k},{b}) out of range"));
            }
            if self.nodes[a].mutate(k)? != self.nodes[b] {
                return fail(format!("arc ({a},{k},{b}) fails the mutation equation"));
            }
            if !self.arcs.contains(&(b, k, a)) {
                return fail(format!("arc ({a},{k},{b}) missing its involution partner"));
            }
        }
        // reachability from the seed
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &(from, _, to) in self.arcs.range((a, 0, 0)..(a + 1, 0, 0)) {
                debug_assert_eq!(from, a);
                if !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return fail("some node is unreachable from the seed".into());
        }
        if matches!(self.verdict, Verdict::Finite) {
            let directions = seed.mutable_vertices();
            for (a, node) in self.nodes.iter().enumerate() {
                for &k in &directions {
                    let image = node.mutate(k)?;
                    let b = self
                        .position(&image)
                        .ok_or_else(|| Error::InvalidCertificate(format!(
                            "class not mutation-closed at node {a}, direction {k}"
                        )))?;
                    if !self.arcs.contains(&(a, k, b)) {
                        return fail(format!("missing arc ({a},{k},{b})"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn key(q: &ValuedQuiver) -> (Vec<i64>, Vec<i64>) {
    (
        q.matrix().into_iter().flatten().collect(),
        q.symmetrizer().to_vec(),
    )
}

/// Enumerates the mutation class of `q` breadth-first, deduplicating by
/// exact `(B, d)` equality and respecting frozen vertices. Deterministic:
/// nodes are numbered in discovery order with directions tried ascending.
pub fn enumerate_class(q: &ValuedQuiver, limits: Limits) -> Result<ExchangeGraph> {
    if limits.max_nodes == 0 {
        return Err(Error::InvalidLimits("max_nodes must be positive".into()));
    }
    if limits.max_weight <= 0 {
        return Err(Error::InvalidLimits("max_weight must be positive".into()));
    }
    let directions = q.mutable_vertices();
    let guard_active = q.rank() >= 3;
    let mut graph = ExchangeGraph {
        nodes: vec![q.clone()],
        arcs: BTreeSet::new(),
        verdict: Verdict::Finite,
        limits,
        discovery: vec![None],
    };
    if guard_active && q.weight() > limits.max_weight {
        graph.verdict = Verdict::InfiniteWeightWitness {
            path: Vec::new(),
            weight: q.weight(),
        };
        return Ok(graph);
    }
    let mut index: HashMap<(Vec<i64>, Vec<i64>), usize> = HashMap::new();
    index.insert(key(q), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &k in &directions {
            let image = graph.nodes[a].mutate(k)?;
            if guard_active && image.weight() > limits.max_weight {
                let mut path = graph.word_to(a);
                path.push(k);
                graph.verdict = Verdict::InfiniteWeightWitness {
                    path,
                    weight: image.weight(),
                };
                return Ok(graph);
            }
            let entry = index.entry(key(&image));
            match entry {
                std::collections::hash_map::Entry::Occupied(e) => {
                    let b = *e.get();
                    graph.arcs.insert((a, k, b));
                    graph.arcs.insert((b, k, a));
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if graph.nodes.len() >= limits.max_nodes {
                        graph.verdict = Verdict::Inconclusive {
                            reason: format!("node budget {} exhausted", limits.max_nodes),
                        };
                        return Ok(graph);
                    }
                    let b = graph.nodes.len();
                    e.insert(b);
                    graph.nodes.push(image);
                    graph.discovery.push(Some((a, k)));
                    graph.arcs.insert((a, k, b));
                    graph.arcs.insert((b, k, a));
                    queue.push_back(b);
                }
            }
        }
    }
    Ok(graph)
}

/// Thin wrapper returning only the enumeration verdict.
pub fn is_finite_mutation_type(q: &ValuedQuiver, limits: Limits) -> Result<Verdict> {
    Ok(enumerate_class(q, limits)?.verdict().clone())
}

/// Class-level statistics of a finite exchange graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    /// Number of distinct labeled quivers.
    pub size: usize,
    /// Maximum edge weight over the class.
    pub class_weight: i64,
    /// `(every member leaf-free, every vertex of every member on a
    /// cycle)` — the two readings of "fully cyclic".
    pub fully_cyclic_class: (bool, bool),
    /// Orbit count under witnesses allowing the global sign.
    pub distinct_up_to_symmetry: usize,
    /// Orbit count under sign-free relabeling witnesses only.
    pub distinct_up_to_permutation: usize,
}

/// Computes the [`ClassReport`] of a finite graph.
pub fn class_report(graph: &ExchangeGraph) -> Result<ClassReport> {
    if !matches!(graph.verdict(), Verdict::Finite) {
        return Err(Error::ClassNotFinite(format!("{:?}", graph.verdict())));
    }
    let nodes = graph.nodes();
    let class_weight = nodes.iter().map(ValuedQuiver::weight).max().unwrap_or(0);
    let mut leaf_free = true;
    let mut on_cycle = true;
    for q in nodes {
        let (lf, oc) = q.is_fully_cyclic();
        leaf_free &= lf;
        on_cycle &= oc;
    }
    let with_sign = orbit_count(nodes, true)?;
    let permutation_only = orbit_count(nodes, false)?;
    Ok(ClassReport {
        size: nodes.len(),
        class_weight,
        fully_cyclic_class: (leaf_free, on_cycle),
        distinct_up_to_symmetry: with_sign,
        distinct_up_to_permutation: permutation_only,
    })
}

fn orbit_count(nodes: &[ValuedQuiver], allow_sign: bool) -> Result<usize> {
    let mut reps: Vec<&ValuedQuiver> = Vec::new();
    'outer: for q in nodes {
        for r in &reps {
            // symmetry_witness prefers +1, so a returned minus witness
            // means no plus witness exists
            if let Some(w) = symmetry_witness(r, q)? {
                if allow_sign || w.epsilon == Sign::Plus {
                    continue 'outer;
                }
            }
        }
        reps.push(q);
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{Permutation, ValuedQuiver};

    #[test]
    fn rank_two_class_is_plus_minus() {
        let q = ValuedQuiver::new(&[vec![0, 1], vec![-1, 0]], None).unwrap();
        let g = enumerate_class(&q, Limits::default()).unwrap();
        assert_eq!(g.verdict(), &Verdict::Finite);
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.nodes()[1], q.negate());
        g.audit(&q).unwrap();
    }

    #[test]
    fn markov_class_has_two_members() {
        let q = fixtures::markov4();
        let g = enumerate_class(&q, Limits::default()).unwrap();
        assert_eq!(g.verdict(), &Verdict::Finite);
        assert_eq!(g.nodes().len(), 2);
        let report = class_report(&g).unwrap();
        assert_eq!(report.class_weight, 4);
        assert_eq!(report.fully_cyclic_class, (true, true));
        assert_eq!(report.distinct_up_to_symmetry, 1);
        g.audit(&q).unwrap();
    }

    #[test]
    fn tripled_markov_is_infinite_at_the_seed() {
        let q = ValuedQuiver::new(
            &[vec![0, 3, -3], vec![-3, 0, 3], vec![3, -3, 0]],
            None,
        )
        .unwrap();
        let g = enumerate_class(&q, Limits::default()).unwrap();
        assert_eq!(
            g.verdict(),
            &Verdict::InfiniteWeightWitness {
                path: vec![],
                weight: 9
            }
        );
    }

    #[test]
    fn witness_path_replays_to_the_offending_weight() {
        // the worked 7-vertex example restricted to {1,2,3} blows past
        // weight 4 (the seed already carries weight 12)
        let sub = fixtures::sample7().restrict(&[1, 2, 3]).unwrap();
        let g = enumerate_class(&sub, Limits::default()).unwrap();
        match g.verdict() {
            Verdict::InfiniteWeightWitness { path, weight } => {
                let mut q = sub.clone();
                for &k in path {
                    q = q.mutate(k).unwrap();
                }
                assert_eq!(q.weight(), *weight);
                assert!(*weight > 4);
            }
            other => panic!("expected an infinite-weight witness, got {other:?}"),
        }
    }

    #[test]
    fn a3_path_closes_with_fourteen_members() {
        let q = fixtures::a_n(3);
        let g = enumerate_class(&q, Limits::default()).unwrap();
        assert_eq!(g.verdict(), &Verdict::Finite);
        assert_eq!(g.nodes().len(), 14);
        assert_eq!(class_report(&g).unwrap().class_weight, 1);
        g.audit(&q).unwrap();
    }

    #[test]
    fn node_budget_reports_inconclusive() {
        let q = fixtures::a_n(4);
        let g = enumerate_class(
            &q,
            Limits {
                max_nodes: 5,
                max_weight: 4,
            },
        )
        .unwrap();
        assert!(matches!(g.verdict(), Verdict::Inconclusive { .. }));
        assert_eq!(g.nodes().len(), 5);
    }

    #[test]
    fn enumeration_is_permutation_equivariant() {
        let q = fixtures::kite4a();
        let sigma = Permutation::from_images(vec![2, 3, 4, 1]).unwrap();
        let g = enumerate_class(&q, Limits::default()).unwrap();
        let gp = enumerate_class(&q.permute(&sigma).unwrap(), Limits::default()).unwrap();
        assert_eq!(g.nodes().len(), gp.nodes().len());
        for node in g.nodes() {
            let image = node.permute(&sigma).unwrap();
            assert!(gp.position(&image).is_some());
        }
    }

    #[test]
    fn seed_choice_does_not_change_a_finite_class() {
        let q = fixtures::qd();
        let g = enumerate_class(&q, Limits::default()).unwrap();
        let other_seed = &g.nodes()[g.nodes().len() - 1];
        let g2 = enumerate_class(other_seed, Limits::default()).unwrap();
        assert_eq!(g.nodes().len(), g2.nodes().len());
        for node in g.nodes() {
            assert!(g2.position(node).is_some());
        }
    }

    #[test]
    fn invalid_limits_are_rejected() {
        let q = fixtures::markov4();
        assert!(enumerate_class(&q, Limits { max_nodes: 0, max_weight: 4 }).is_err());
        assert!(enumerate_class(&q, Limits { max_nodes: 10, max_weight: 0 }).is_err());
    }

    #[test]
    fn restricted_enumeration_only_uses_mutable_directions() {
        let sub = fixtures::a_n(4).restrict(&[1, 2]).unwrap();
        let g = enumerate_class(&sub, Limits::default()).unwrap();
        assert_eq!(g.verdict(), &Verdict::Finite);
        for &(_, k, _) in g.arcs() {
            assert!(k <= 2);
        }
        g.audit(&sub).unwrap();
    }
}
