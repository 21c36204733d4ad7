//! Symmetric and global mutation loops: detection, bounded search,
//! certification, and permutation realization.

use crate::error::{Error, Result};
use crate::explore::{enumerate_class, ExchangeGraph, Limits, Verdict};
use crate::quiver::{Permutation, ValuedQuiver};
use crate::symmetry::{symmetry_witness, SymmetryWitness};
use crate::word::{reduced_words, MutationWord};

/// Applies a word to a quiver, first-listed letter first.
pub fn apply(q: &ValuedQuiver, word: &MutationWord) -> Result<ValuedQuiver> {
    let mut cur = q.clone();
    for &k in word.letters() {
        cur = cur.mutate(k)?;
    }
    Ok(cur)
}

/// Outcome of testing one word on one quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopOutcome {
    /// The reduced word is empty or single-direction; such words act as
    /// involutions and are not counted as loops.
    Trivial,
    /// `apply(Q, w) = epsilon * sigma(Q)`.
    Loop(SymmetryWitness),
    /// The image is not a signed relabeling of `Q`.
    NotALoop,
}

/// Tests whether `word` is a symmetric mutation loop of `q`: its action
/// lands on a signed relabeling of `q`. Words whose reduction has
/// support smaller than 2 report [`LoopOutcome::Trivial`].
pub fn symmetric_loop_witness(q: &ValuedQuiver, word: &MutationWord) -> Result<LoopOutcome> {
    let reduced = word.reduce();
    if reduced.support().len() < 2 {
        return Ok(LoopOutcome::Trivial);
    }
    let image = apply(q, word)?;
    Ok(match symmetry_witness(q, &image)? {
        Some(w) => LoopOutcome::Loop(w),
        None => LoopOutcome::NotALoop,
    })
}

/// A machine-checkable proof that a word is a global loop: one symmetry
/// witness per node of the exchange graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCertificate {
    /// The certified word.
    pub word: MutationWord,
    /// `witnesses[v]` certifies the word on graph node `v`.
    pub witnesses: Vec<SymmetryWitness>,
    /// No contiguous split of the word has disjoint supports.
    pub homogeneous: bool,
    /// The support covers every vertex.
    pub full: bool,
}

/// Outcome of testing one word against a whole class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalLoopOutcome {
    /// The word is a symmetric loop of every class member.
    Certified(LoopCertificate),
    /// First node (in graph order) where the word fails.
    FailedAt(usize),
    /// The word reduces below support 2.
    Trivial,
}

/// Tests `word` on every node of a finite exchange graph.
pub fn global_loop_certificate(
    graph: &ExchangeGraph,
    word: &MutationWord,
) -> Result<GlobalLoopOutcome> {
    if !matches!(graph.verdict(), Verdict::Finite) {
        return Err(Error::ClassNotFinite(format!("{:?}", graph.verdict())));
    }
    let reduced = word.reduce();
    if reduced.support().len() < 2 {
        return Ok(GlobalLoopOutcome::Trivial);
    }
    let mut witnesses = Vec::with_capacity(graph.nodes().len());
    for (v, node) in graph.nodes().iter().enumerate() {
        match symmetric_loop_witness(node, word)? {
            LoopOutcome::Loop(w) => witnesses.push(w),
            LoopOutcome::NotALoop => return Ok(GlobalLoopOutcome::FailedAt(v)),
            LoopOutcome::Trivial => unreachable!("support checked above"),
        }
    }
    let rank = graph.nodes()[0].rank();
    Ok(GlobalLoopOutcome::Certified(LoopCertificate {
        word: word.clone(),
        homogeneous: word.is_homogeneous(),
        full: word.is_full(rank),
        witnesses,
    }))
}

/// Enumerates the class of `q` and certifies every reduced word of
/// length `<= max_len` with support `>= 2`, in shortlex order.
pub fn search_global_loops(
    q: &ValuedQuiver,
    max_len: usize,
    limits: Limits,
) -> Result<Vec<LoopCertificate>> {
    let graph = enumerate_class(q, limits)?;
    if !matches!(graph.verdict(), Verdict::Finite) {
        return Err(Error::ClassNotFinite(format!("{:?}", graph.verdict())));
    }
    search_global_loops_in(&graph, max_len)
}

/// As [`search_global_loops`], on an already-enumerated finite graph.
pub fn search_global_loops_in(
    graph: &ExchangeGraph,
    max_len: usize,
) -> Result<Vec<LoopCertificate>> {
    let alphabet = graph.nodes()[0].mutable_vertices();
    let mut out = Vec::new();
    for word in reduced_words(&alphabet, max_len) {
        if word.support().len() < 2 {
            continue;
        }
        // cheap rejection on the seed before scanning the whole class
        if matches!(
            symmetric_loop_witness(&graph.nodes()[0], &word)?,
            LoopOutcome::NotALoop
        ) {
            continue;
        }
        if let GlobalLoopOutcome::Certified(cert) = global_loop_certificate(graph, &word)? {
            out.push(cert);
        }
    }
    Ok(out)
}

/// Re-derives every claim of a certificate against the graph it refers
/// to: witness count, the non-triviality conditions, the classification
/// flags, and the witness equation on every node.
pub fn verify_certificate(graph: &ExchangeGraph, cert: &LoopCertificate) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidCertificate(msg));
    if !matches!(graph.verdict(), Verdict::Finite) {
        return Err(Error::ClassNotFinite(format!("{:?}", graph.verdict())));
    }
    let reduced = cert.word.reduce();
    if reduced.is_empty() || reduced.support().len() < 2 {
        return fail("word is trivial after reduction".into());
    }
    if cert.witnesses.len() != graph.nodes().len() {
        return fail(format!(
            "certificate has {} witnesses for {} nodes",
            cert.witnesses.len(),
            graph.nodes().len()
        ));
    }
    let rank = graph.nodes()[0].rank();
    if cert.homogeneous != cert.word.is_homogeneous() || cert.full != cert.word.is_full(rank) {
        return fail("classification flags disagree with the word".into());
    }
    for (v, (node, witness)) in graph.nodes().iter().zip(&cert.witnesses).enumerate() {
        let image = apply(node, &cert.word)?;
        if !witness.verifies(node, &image) {
            return fail(format!("witness equation fails at node {v}"));
        }
    }
    Ok(())
}

/// Searches for a shortest word realizing `sigma(q)` from `q`, i.e.
/// `apply(q, w) = permute(q, sigma)`, using the breadth-first exchange
/// graph (shortest in the number of mutations). Returns `None` when the
/// target is not reached within `max_len`.
pub fn realize_permutation(
    q: &ValuedQuiver,
    sigma: &Permutation,
    max_len: usize,
    limits: Limits,
) -> Result<Option<MutationWord>> {
    let target = q.permute(sigma)?;
    let graph = enumerate_class(q, limits)?;
    if !matches!(graph.verdict(), Verdict::Finite) {
        return Err(Error::ClassNotFinite(format!("{:?}", graph.verdict())));
    }
    match graph.position(&target) {
        Some(v) => {
            let letters = graph.word_to(v);
            if letters.len() > max_len {
                return Ok(None);
            }
            Ok(Some(MutationWord::new(letters, q.rank())?))
        }
        None => Ok(None),
    }
}
