//! Named quivers, shape recognition, and the global-loop decision
//! procedure.
//!
//! Every builder documents its vertex numbering. Valuations of
//! weight-2 edges in the `q_l_a` / `q_l_a2` families follow the
//! corresponding rank-3 triangle patterns (`q_a`, `q_a_x(2)`), which is
//! the unique way to keep the matrices skew-symmetrizable with the
//! drawn weights.

use crate::error::{Error, Result};
use crate::explore::{class_report, enumerate_class, Limits, Verdict};
use crate::loops::{search_global_loops_in, LoopCertificate};
use crate::quiver::ValuedQuiver;
use crate::symmetry::{symmetry_witness, Sign, SymmetryWitness};

/// Identifier of a catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogName {
    /// Triangle with valuations `(2,2)` on every edge; vertices
    /// `1 -> 2 -> 3 -> 1`.
    Markov4,
    /// The four rank-3 mutation classes of weight 4, `r` in `1..=4`
    /// (`r = 1` is [`CatalogName::Markov4`]).
    W4Rank3(u32),
    /// Triangle `v -> k (x,1)`, `j -> v (1,x)`, `k -> j (2,2)` with
    /// `(v, j, k) = (1, 2, 3)` and `x` in `1..=4`.
    QAx(u32),
    /// Triangle `v -> k (1,2)`, `j -> v (1,2)`, `k -> j (4,1)` with
    /// `(v, j, k) = (1, 2, 3)`.
    QA,
    /// Rank-4 kite `k -> j (t,1)`, `v -> k (1,t)`, `v -> l (1,2)`,
    /// `j -> v (2,2)`, `l -> j (2,1)` with `(k, v, j, l) = (1, 2, 3, 4)`
    /// and `t` in `1..=2`.
    QCt(u32),
    /// Rank-4 kite `v -> j`, `i -> v`, `i -> l (1,3)`, `j -> i (2,2)`,
    /// `l -> j (3,1)` with `(v, i, j, l) = (1, 2, 3, 4)`.
    QD,
    /// Rank-4 kite `v -> k (1,2)`, `k -> j (2,1)`, `j -> v (2,2)`,
    /// `v -> i (2,1)`, `i -> j (1,2)` with `(k, v, j, i) = (1, 2, 3, 4)`.
    Kite4A,
    /// Rank-4 kite `k -> j`, `v -> k`, `v -> i (3,1)`, `j -> v (2,2)`,
    /// `i -> j (1,3)` with `(k, v, j, i) = (1, 2, 3, 4)`.
    Kite4B,
    /// Rank-5 bowtie: triangles `l -> i (2,2)`, `i -> t (2,1)`,
    /// `t -> l (1,2)` and `k -> j (2,2)`, `j -> t (2,1)`, `t -> k (1,2)`
    /// sharing `t`, with `(i, l, t, j, k) = (1, 2, 3, 4, 5)`.
    Bowtie5,
    /// Two triangles with one `(2,2)` edge each, joined at a hub, plus a
    /// pendant vertex at the hub; rank 6.
    X6,
    /// Three triangles with one `(2,2)` edge each sharing a central
    /// vertex; rank 7.
    X7,
    /// Rank-8 tree-with-cycles shape: a central `(2,2)` pair inside
    /// three oriented triangles, with one pendant path on each arm.
    E6Double,
    /// Rank-9 variant of [`CatalogName::E6Double`] with arm lengths 2, 0, 2.
    E7Double,
    /// Rank-10 variant with arm lengths 1, 0, 4.
    E8Double,
    /// Two `(2,2)` triangles joined by a simply laced path through `l`
    /// intermediate vertices, `l >= 1`; rank `6 + l`.
    QlA1(u32),
    /// As [`CatalogName::QlA1`] with `(4,1)` triangles (pattern of
    /// [`CatalogName::QA`]).
    QlA(u32),
    /// As [`CatalogName::QlA1`] with mixed-weight triangles (pattern of
    /// `q_a_x(2)`).
    QlA2(u32),
    /// Simply laced path `1 -> 2 -> ... -> n`.
    AN(u32),
    /// Path whose first edge is `1 -> 2 (2,1)` and the rest simply laced.
    PathB(u32),
    /// Star: center 1 with `n - 1` simply laced out-arrows.
    Star(u32),
    /// The 7-vertex worked example with mixed valuations up to `(6,2)`.
    Sample7,
}

impl CatalogName {
    /// Parses `name` or `name(param)`.
    pub fn parse(text: &str) -> Result<Self> {
        let unknown = || Error::UnknownCatalogName(text.to_string());
        let (base, param) = match text.find('(') {
            Some(open) => {
                let close = text.rfind(')').ok_or_else(unknown)?;
                let p: u32 = text[open + 1..close].parse().map_err(|_| unknown())?;
                (&text[..open], Some(p))
            }
            None => (text, None),
        };
        let need = |p: Option<u32>| p.ok_or_else(|| Error::BadCatalogParam(format!("{base} needs a parameter")));
        Ok(match base {
            "markov4" => Self::Markov4,
            "w4_rank3" => Self::W4Rank3(need(param)?),
            "q_a_x" => Self::QAx(need(param)?),
            "q_a" => Self::QA,
            "q_c_t" => Self::QCt(need(param)?),
            "q_d" => Self::QD,
            "kite4a" => Self::Kite4A,
            "kite4b" => Self::Kite4B,
            "bowtie5" => Self::Bowtie5,
            "x6" => Self::X6,
            "x7" => Self::X7,
            "e6_double" => Self::E6Double,
            "e7_double" => Self::E7Double,
            "e8_double" => Self::E8Double,
            "q_l_a1" => Self::QlA1(need(param)?),
            "q_l_a" => Self::QlA(need(param)?),
            "q_l_a2" => Self::QlA2(need(param)?),
            "a_n" => Self::AN(need(param)?),
            "path_b" => Self::PathB(need(param)?),
            "star" => Self::Star(need(param)?),
            "sample7" => Self::Sample7,
            _ => return Err(unknown()),
        })
    }
}

impl std::fmt::Display for CatalogName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Markov4 => write!(f, "markov4"),
            Self::W4Rank3(r) => write!(f, "w4_rank3({r})"),
            Self::QAx(x) => write!(f, "q_a_x({x})"),
            Self::QA => write!(f, "q_a"),
            Self::QCt(t) => write!(f, "q_c_t({t})"),
            Self::QD => write!(f, "q_d"),
            Self::Kite4A => write!(f, "kite4a"),
            Self::Kite4B => write!(f, "kite4b"),
            Self::Bowtie5 => write!(f, "bowtie5"),
            Self::X6 => write!(f, "x6"),
            Self::X7 => write!(f, "x7"),
            Self::E6Double => write!(f, "e6_double"),
            Self::E7Double => write!(f, "e7_double"),
            Self::E8Double => write!(f, "e8_double"),
            Self::QlA1(l) => write!(f, "q_l_a1({l})"),
            Self::QlA(l) => write!(f, "q_l_a({l})"),
            Self::QlA2(l) => write!(f, "q_l_a2({l})"),
            Self::AN(n) => write!(f, "a_n({n})"),
            Self::PathB(n) => write!(f, "path_b({n})"),
            Self::Star(n) => write!(f, "star({n})"),
            Self::Sample7 => write!(f, "sample7"),
        }
    }
}

/// Builds the quiver of an edge list `(source, target, d_st, d_ts)` with
/// the minimal symmetrizer.
fn from_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> Result<ValuedQuiver> {
    let mut rows = vec![vec![0i64; n]; n];
    for &(i, j, a, b) in edges {
        rows[i - 1][j - 1] = a;
        rows[j - 1][i - 1] = -b;
    }
    ValuedQuiver::new(&rows, None)
}

fn check_param(name: &str, value: u32, lo: u32, hi: u32) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::BadCatalogParam(format!(
            "{name} parameter {value} outside {lo}..={hi}"
        )));
    }
    Ok(())
}

/// Builds a catalog quiver.
pub fn build(name: &CatalogName) -> Result<ValuedQuiver> {
    match *name {
        CatalogName::Markov4 => from_edges(3, &[(1, 2, 2, 2), (2, 3, 2, 2), (3, 1, 2, 2)]),
        CatalogName::W4Rank3(r) => {
            check_param("w4_rank3", r, 1, 4)?;
            // (i, j, k) = (1, 2, 3)
            match r {
                1 => build(&CatalogName::Markov4),
                2 => from_edges(3, &[(3, 2, 1, 4), (1, 3, 2, 1), (2, 1, 2, 1)]),
                3 => from_edges(3, &[(3, 1, 2, 1), (2, 3, 2, 2), (1, 2, 1, 2)]),
                _ => from_edges(3, &[(3, 2, 2, 2), (1, 3, 4, 1), (2, 1, 1, 4)]),
            }
        }
        CatalogName::QAx(x) => {
            check_param("q_a_x", x, 1, 4)?;
            let x = i64::from(x);
            from_edges(3, &[(1, 3, x, 1), (2, 1, 1, x), (3, 2, 2, 2)])
        }
        CatalogName::QA => from_edges(3, &[(1, 3, 1, 2), (2, 1, 1, 2), (3, 2, 4, 1)]),
        CatalogName::QCt(t) => {
            check_param("q_c_t", t, 1, 2)?;
            let t = i64::from(t);
            from_edges(
                4,
                &[(1, 3, t, 1), (2, 1, 1, t), (2, 4, 1, 2), (3, 2, 2, 2), (4, 3, 2, 1)],
            )
        }
        CatalogName::QD => from_edges(
            4,
            &[(1, 3, 1, 1), (2, 1, 1, 1), (2, 4, 1, 3), (3, 2, 2, 2), (4, 3, 3, 1)],
        ),
        CatalogName::Kite4A => from_edges(
            4,
            &[(2, 1, 1, 2), (1, 3, 2, 1), (3, 2, 2, 2), (2, 4, 2, 1), (4, 3, 1, 2)],
        ),
        CatalogName::Kite4B => from_edges(
            4,
            &[(1, 3, 1, 1), (2, 1, 1, 1), (2, 4, 3, 1), (3, 2, 2, 2), (4, 3, 1, 3)],
        ),
        CatalogName::Bowtie5 => from_edges(
            5,
            &[
                (2, 1, 2, 2),
                (5, 4, 2, 2),
                (1, 3, 2, 1),
                (3, 2, 1, 2),
                (4, 3, 2, 1),
                (3, 5, 1, 2),
            ],
        ),
        CatalogName::X6 => from_edges(
            6,
            &[
                (1, 2, 1, 1),
                (2, 4, 1, 1),
                (4, 1, 2, 2),
                (3, 2, 1, 1),
                (2, 6, 1, 1),
                (6, 3, 2, 2),
                (2, 5, 1, 1),
            ],
        ),
        CatalogName::X7 => from_edges(
            7,
            &[
                (1, 4, 1, 1),
                (4, 2, 1, 1),
                (2, 1, 2, 2),
                (3, 4, 1, 1),
                (4, 6, 1, 1),
                (6, 3, 2, 2),
                (5, 4, 1, 1),
                (4, 7, 1, 1),
                (7, 5, 2, 2),
            ],
        ),
        CatalogName::E6Double => e_double(&[1, 0, 1]),
        CatalogName::E7Double => e_double(&[2, 0, 2]),
        CatalogName::E8Double => e_double(&[1, 0, 4]),
        CatalogName::QlA1(l) => ql_family(l, Triangle::Val22),
        CatalogName::QlA(l) => ql_family(l, Triangle::Val41),
        CatalogName::QlA2(l) => ql_family(l, Triangle::Mixed),
        CatalogName::AN(n) => {
            check_param("a_n", n, 2, u32::MAX)?;
            let n = n as usize;
            let edges: Vec<_> = (1..n).map(|i| (i, i + 1, 1, 1)).collect();
            from_edges(n, &edges)
        }
        CatalogName::PathB(n) => {
            check_param("path_b", n, 2, u32::MAX)?;
            let n = n as usize;
            let mut edges = vec![(1, 2, 2, 1)];
            edges.extend((2..n).map(|i| (i, i + 1, 1, 1)));
            from_edges(n, &edges)
        }
        CatalogName::Star(n) => {
            check_param("star", n, 3, u32::MAX)?;
            let n = n as usize;
            let edges: Vec<_> = (2..=n).map(|i| (1, i, 1, 1)).collect();
            from_edges(n, &edges)
        }
        CatalogName::Sample7 => from_edges(
            7,
            &[
                (3, 4, 2, 3),
                (3, 2, 2, 3),
                (2, 1, 1, 2),
                (7, 2, 2, 1),
                (6, 1, 1, 1),
                (1, 3, 6, 2),
                (1, 5, 2, 3),
            ],
        ),
    }
}

/// Triangle valuation pattern for the two-triangle families.
enum Triangle {
    /// `j -> v (1,1)`, `v -> k (1,1)`, `k -> j (2,2)`.
    Val22,
    /// `j -> v (1,2)`, `v -> k (1,2)`, `k -> j (4,1)`.
    Val41,
    /// `j -> v (1,2)`, `v -> k (2,1)`, `k -> j (2,2)`.
    Mixed,
}

/// Two triangles joined by a simply laced path of `l` intermediate
/// vertices. Numbering: `j' = 1`, `v' = 2`, `k' = 3`, bridge
/// `4 ..= 3 + l`, `v = 4 + l`, `j = 5 + l`, `k = 6 + l`.
fn ql_family(l: u32, pattern: Triangle) -> Result<ValuedQuiver> {
    check_param("bridge length", l, 1, u32::MAX)?;
    let l = l as usize;
    let (v, j, k) = (4 + l, 5 + l, 6 + l);
    let (jv, vk, kj): ((i64, i64), (i64, i64), (i64, i64)) = match pattern {
        Triangle::Val22 => ((1, 1), (1, 1), (2, 2)),
        Triangle::Val41 => ((1, 2), (1, 2), (4, 1)),
        Triangle::Mixed => ((1, 2), (2, 1), (2, 2)),
    };
    let mut edges = vec![
        // left triangle on (j', v', k') mirrors the right one
        (1, 2, jv.0, jv.1),
        (2, 3, vk.0, vk.1),
        (3, 1, kj.0, kj.1),
        (j, v, jv.0, jv.1),
        (v, k, vk.0, vk.1),
        (k, j, kj.0, kj.1),
    ];
    // bridge v' -> x_1 -> ... -> x_l -> v
    edges.push((2, 4, 1, 1));
    for x in 4..3 + l {
        edges.push((x, x + 1, 1, 1));
    }
    edges.push((3 + l, v, 1, 1));
    from_edges(6 + l, &edges)
}

/// Central `(2,2)` pair inside three oriented triangles, one pendant
/// simply laced path per arm. `arms[m]` is the path length hanging off
/// mid vertex `m`. Numbering: center 1, opposite hub 2, mids 3, 4, 5,
/// then arm vertices in arm order.
fn e_double(arms: &[usize; 3]) -> Result<ValuedQuiver> {
    let n = 5 + arms.iter().sum::<usize>();
    let mut edges = vec![
        (2, 1, 2, 2),
        (1, 3, 1, 1),
        (3, 2, 1, 1),
        (1, 4, 1, 1),
        (4, 2, 1, 1),
        (1, 5, 1, 1),
        (5, 2, 1, 1),
    ];
    let mut next = 6;
    for (m, &len) in arms.iter().enumerate() {
        let mut prev = 3 + m;
        for _ in 0..len {
            edges.push((prev, next, 1, 1));
            prev = next;
            next += 1;
        }
    }
    from_edges(n, &edges)
}

/// A catalog entry description for listings.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Parseable name, e.g. `q_a_x(2)`.
    pub name: String,
    /// Vertex count.
    pub rank: usize,
    /// One-line description.
    pub summary: String,
}

/// All catalog entries, with parametrized families instantiated over
/// their documented parameter ranges (open-ended families at small
/// sample parameters).
pub fn entries() -> Vec<(CatalogName, String)> {
    let mut names = vec![
        (CatalogName::Markov4, "weight-4 triangle, all valuations (2,2)"),
        (CatalogName::QA, "triangle with a (4,1) edge"),
        (CatalogName::QD, "kite with (2,2) and weight-3 edges"),
        (CatalogName::Kite4A, "rank-4 kite, classes of four shapes"),
        (CatalogName::Kite4B, "rank-4 kite with weight-3 edges"),
        (CatalogName::Bowtie5, "two triangles sharing a vertex, singleton class"),
        (CatalogName::X6, "two heavy triangles plus a pendant vertex"),
        (CatalogName::X7, "three heavy triangles around one center"),
        (CatalogName::E6Double, "heavy core with arms 1/0/1"),
        (CatalogName::E7Double, "heavy core with arms 2/0/2"),
        (CatalogName::E8Double, "heavy core with arms 1/0/4"),
        (CatalogName::Sample7, "mixed-valuation worked example"),
    ];
    let mut out: Vec<(CatalogName, String)> =
        names.drain(..).map(|(n, s)| (n, s.to_string())).collect();
    for r in 1..=4 {
        out.push((CatalogName::W4Rank3(r), format!("rank-3 weight-4 class {r} of 4")));
    }
    for x in 1..=4 {
        out.push((CatalogName::QAx(x), format!("triangle with ({x},1)/(1,{x}) and (2,2) edges")));
    }
    for t in 1..=2 {
        out.push((CatalogName::QCt(t), format!("kite with a weight-{} apex", t * t)));
    }
    for l in 1..=2 {
        out.push((CatalogName::QlA1(l), "joined (2,2) triangles, simply laced bridge".to_string()));
        out.push((CatalogName::QlA(l), "joined (4,1) triangles, weighted bridge ends".to_string()));
        out.push((CatalogName::QlA2(l), "joined mixed triangles, weighted bridge ends".to_string()));
    }
    for n in [2u32, 3, 4, 5] {
        out.push((CatalogName::AN(n), format!("simply laced path on {n} vertices")));
    }
    for n in [3u32, 4, 5] {
        out.push((CatalogName::PathB(n), format!("path on {n} vertices with one (2,1) edge")));
    }
    for n in [4u32, 5] {
        out.push((CatalogName::Star(n), format!("star on {n} vertices")));
    }
    out
}

/// All catalog entries whose built quiver is a relabeling (sign `+1`)
/// of `q`, with witnesses.
pub fn match_catalog(q: &ValuedQuiver) -> Result<Vec<(CatalogName, SymmetryWitness)>> {
    let mut out = Vec::new();
    let n = q.rank() as u32;
    let mut candidates: Vec<CatalogName> = entries().into_iter().map(|(name, _)| name).collect();
    // open-ended families at exactly this rank
    if n >= 2 {
        candidates.push(CatalogName::AN(n));
        candidates.push(CatalogName::PathB(n));
    }
    if n >= 3 {
        candidates.push(CatalogName::Star(n));
    }
    if n >= 7 {
        candidates.push(CatalogName::QlA1(n - 6));
        candidates.push(CatalogName::QlA(n - 6));
        candidates.push(CatalogName::QlA2(n - 6));
    }
    candidates.dedup_by(|a, b| a == b);
    let mut seen: Vec<CatalogName> = Vec::new();
    for name in candidates {
        if seen.contains(&name) {
            continue;
        }
        seen.push(name.clone());
        let built = build(&name)?;
        if built.rank() != q.rank() {
            continue;
        }
        if let Some(w) = symmetry_witness(&built, q)? {
            if w.epsilon == Sign::Plus {
                out.push((name, w));
            }
        }
    }
    Ok(out)
}

/// The four possible answers of [`decide_global_loops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    /// At least one nontrivial global loop exists.
    HasNontrivialGlobalLoops,
    /// No nontrivial global loop exists.
    NoGlobalLoops,
    /// Every reduced word acts as a signed relabeling on the whole class.
    EveryWordIsGlobalLoop,
    /// The procedure could not classify the input within its budget.
    Inconclusive,
}

/// A decision together with the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopVerdict {
    /// The decision.
    pub kind: LoopKind,
    /// Self-contained statement of the rule that fired.
    pub rule: String,
}

fn verdict(kind: LoopKind, rule: impl Into<String>) -> LoopVerdict {
    LoopVerdict {
        kind,
        rule: rule.into(),
    }
}

/// The rank-3 cycle excluded from the weight-4 rule: valuations
/// `(1,3)`, `(2,2)`, `(3,1)` around an oriented triangle.
pub fn exceptional_cycle() -> ValuedQuiver {
    // (i, j, k) = (1, 2, 3): k -> i (1,3), j -> k (2,2), i -> j (3,1)
    from_edges(3, &[(3, 1, 1, 3), (2, 3, 2, 2), (1, 2, 3, 1)])
        .expect("fixed valid construction")
}

/// Decides whether the mutation class of `q` admits nontrivial global
/// loops, using class shape rather than word search.
///
/// Decision tree:
/// - rank 1: no word has support 2, so no loops;
/// - rank 2: both mutations negate the matrix, so every reduced word
///   acts as a signed identity;
/// - infinite type: weights grow without bound, so no loops;
/// - rank 3, finite: weight `<= 2` has none; weight 4 has loops unless
///   the class contains the exceptional `(1,3)/(2,2)/(3,1)` cycle;
/// - rank >= 4, finite: a star in the class rules loops out, weight
///   `<= 2` rules them out, and at weight 4 loops exist exactly when the
///   class is fully cyclic; a class member with a leaf settles that
///   negatively even on a partial enumeration.
pub fn decide_global_loops(q: &ValuedQuiver, limits: Limits) -> Result<LoopVerdict> {
    let n = q.rank();
    if n == 1 {
        return Ok(verdict(
            LoopKind::NoGlobalLoops,
            "rank 1: no word has support of size 2",
        ));
    }
    if n == 2 {
        return Ok(verdict(
            LoopKind::EveryWordIsGlobalLoop,
            "rank 2: every mutation negates the exchange matrix, so every reduced word acts as a signed identity on the two-member class",
        ));
    }
    let graph = enumerate_class(q, limits)?;
    match graph.verdict() {
        Verdict::InfiniteWeightWitness { weight, .. } => {
            return Ok(verdict(
                LoopKind::NoGlobalLoops,
                format!(
                    "infinite mutation type (edge weight {weight} exceeds {}): weights grow beyond reach of any fixed word",
                    limits.max_weight
                ),
            ));
        }
        Verdict::Inconclusive { reason } => {
            if n >= 4 {
                if let Some(v) = graph.nodes().iter().position(|p| !p.leaves().is_empty()) {
                    return Ok(verdict(
                        LoopKind::NoGlobalLoops,
                        format!(
                            "class member {v} has a leaf at rank >= 4: the class is not fully cyclic"
                        ),
                    ));
                }
            }
            return Ok(verdict(
                LoopKind::Inconclusive,
                format!("enumeration stopped early: {reason}"),
            ));
        }
        Verdict::Finite => {}
    }
    let report = class_report(&graph)?;
    let w = report.class_weight;
    if n == 3 {
        if w <= 2 {
            return Ok(verdict(
                LoopKind::NoGlobalLoops,
                format!("rank 3 with class weight {w} <= 2 admits no global loops"),
            ));
        }
        if w == 4 {
            let exceptional = exceptional_cycle();
            for (v, node) in graph.nodes().iter().enumerate() {
                if let Some(wit) = symmetry_witness(&exceptional, node)? {
                    if wit.epsilon == Sign::Plus {
                        return Ok(verdict(
                            LoopKind::NoGlobalLoops,
                            format!(
                                "class member {v} is a relabeling of the exceptional (1,3)/(2,2)/(3,1) cycle"
                            ),
                        ));
                    }
                }
            }
            return Ok(verdict(
                LoopKind::HasNontrivialGlobalLoops,
                "rank-3 class of weight 4 without the exceptional (1,3)/(2,2)/(3,1) cycle",
            ));
        }
        return Ok(verdict(
            LoopKind::Inconclusive,
            format!("rank-3 class of weight {w} outside the classification"),
        ));
    }
    // rank >= 4
    if let Some(v) = graph.nodes().iter().position(ValuedQuiver::is_star) {
        return Ok(verdict(
            LoopKind::NoGlobalLoops,
            format!("class member {v} is a star quiver"),
        ));
    }
    if w <= 2 {
        return Ok(verdict(
            LoopKind::NoGlobalLoops,
            format!("rank >= 4 with class weight {w} <= 2 admits no global loops"),
        ));
    }
    if w == 4 {
        return Ok(match report.fully_cyclic_class {
            (true, true) => verdict(
                LoopKind::HasNontrivialGlobalLoops,
                "weight-4 class at rank >= 4 with every member fully cyclic",
            ),
            (false, _) => verdict(
                LoopKind::NoGlobalLoops,
                "weight-4 class at rank >= 4 with a leaf somewhere in the class",
            ),
            (true, false) => verdict(
                LoopKind::Inconclusive,
                "the leaf-free and every-vertex-on-a-cycle readings of fully cyclic disagree on this class",
            ),
        });
    }
    Ok(verdict(
        LoopKind::Inconclusive,
        format!("rank >= 4 class of weight {w} outside the classification"),
    ))
}

/// Consistency report between the decision procedure and bounded search.
#[derive(Debug, Clone)]
pub struct CrossReport {
    /// The decision.
    pub verdict: LoopVerdict,
    /// All certificates found within `max_len` (empty when the class is
    /// not finite within the limits).
    pub certificates: Vec<LoopCertificate>,
    /// Whether the bounded evidence is consistent with the decision.
    pub agree: bool,
    /// Human-readable interpretation. Bounded searches only ever give
    /// evidence "up to max_len", never proofs of absence.
    pub note: String,
}

/// Runs [`decide_global_loops`] and a bounded certificate search and
/// reports whether they agree.
pub fn cross_validate(q: &ValuedQuiver, max_len: usize, limits: Limits) -> Result<CrossReport> {
    let decided = decide_global_loops(q, limits)?;
    let graph = enumerate_class(q, limits)?;
    let certificates = if matches!(graph.verdict(), Verdict::Finite) {
        search_global_loops_in(&graph, max_len)?
    } else {
        Vec::new()
    };
    let (agree, note) = match decided.kind {
        LoopKind::HasNontrivialGlobalLoops => (
            !certificates.is_empty(),
            format!("expected at least one certificate within length {max_len}"),
        ),
        LoopKind::NoGlobalLoops => (
            certificates.is_empty(),
            format!("consistent up to length {max_len} (bounded evidence only)"),
        ),
        LoopKind::EveryWordIsGlobalLoop => {
            let candidates = crate::word::reduced_words(&q.mutable_vertices(), max_len)
                .into_iter()
                .filter(|w| w.support().len() >= 2)
                .count();
            (
                certificates.len() == candidates,
                format!("expected all {candidates} nontrivial words within length {max_len} to certify"),
            )
        }
        LoopKind::Inconclusive => (true, "no bounded evidence can contradict an inconclusive verdict".to_string()),
    };
    Ok(CrossReport {
        verdict: decided,
        certificates,
        agree,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Permutation;

    #[test]
    fn builders_validate_and_match_expected_symmetrizers() {
        let cases: Vec<(CatalogName, Vec<i64>)> = vec![
            (CatalogName::Markov4, vec![1, 1, 1]),
            (CatalogName::W4Rank3(2), vec![2, 1, 4]),
            (CatalogName::W4Rank3(3), vec![2, 1, 1]),
            (CatalogName::W4Rank3(4), vec![1, 4, 4]),
            (CatalogName::QAx(1), vec![1, 1, 1]),
            (CatalogName::QAx(2), vec![1, 2, 2]),
            (CatalogName::QAx(3), vec![1, 3, 3]),
            (CatalogName::QAx(4), vec![1, 4, 4]),
            (CatalogName::QA, vec![2, 4, 1]),
            (CatalogName::QCt(1), vec![2, 2, 2, 1]),
            (CatalogName::QCt(2), vec![1, 2, 2, 1]),
            (CatalogName::QD, vec![3, 3, 3, 1]),
            (CatalogName::Kite4A, vec![1, 2, 2, 4]),
            (CatalogName::Kite4B, vec![1, 1, 1, 3]),
            (CatalogName::Bowtie5, vec![1, 1, 2, 1, 1]),
            (CatalogName::Sample7, vec![3, 6, 9, 6, 2, 3, 3]),
        ];
        for (name, d) in cases {
            let q = build(&name).unwrap();
            assert_eq!(q.symmetrizer(), d.as_slice(), "symmetrizer of {name}");
        }
        for name in [
            CatalogName::X6,
            CatalogName::X7,
            CatalogName::E6Double,
            CatalogName::E7Double,
            CatalogName::E8Double,
            CatalogName::QlA1(1),
            CatalogName::QlA(2),
            CatalogName::QlA2(2),
        ] {
            let q = build(&name).unwrap();
            // builders must validate; heavy shapes carry weight 4
            assert_eq!(q.weight(), 4, "weight of {name}");
        }
    }

    #[test]
    fn symmetrizer_recheck_edge_by_edge() {
        for (name, _) in entries() {
            let q = build(&name).unwrap();
            for e in q.edges() {
                assert_eq!(
                    q.d(e.source) * e.valuation.0,
                    e.valuation.1 * q.d(e.target),
                    "valuation balance on {name} edge {}->{}",
                    e.source,
                    e.target
                );
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for (name, _) in entries() {
            let text = name.to_string();
            assert_eq!(CatalogName::parse(&text).unwrap(), name);
        }
        assert!(CatalogName::parse("nonsense").is_err());
        assert!(CatalogName::parse("q_a_x(9)").is_ok()); // parse ok...
        assert!(build(&CatalogName::QAx(9)).is_err()); // ...build rejects
        assert!(CatalogName::parse("q_a_x").is_err());
    }

    #[test]
    fn match_catalog_finds_relabelings() {
        let q = build(&CatalogName::QD).unwrap();
        let hits = match_catalog(&q).unwrap();
        assert!(hits.iter().any(|(n, w)| *n == CatalogName::QD && w.sigma.is_identity()));
        let sigma = Permutation::from_images(vec![3, 1, 4, 2]).unwrap();
        let hits = match_catalog(&q.permute(&sigma).unwrap()).unwrap();
        assert!(hits.iter().any(|(n, _)| *n == CatalogName::QD));
        let path = build(&CatalogName::AN(3)).unwrap();
        let hits = match_catalog(&path).unwrap();
        assert!(hits.iter().any(|(n, _)| *n == CatalogName::AN(3)));
        assert!(!hits.iter().any(|(n, _)| *n == CatalogName::X6));
    }

    #[test]
    fn decide_on_the_named_shapes() {
        let limits = Limits::default();
        let has = [
            CatalogName::Markov4,
            CatalogName::QAx(4),
            CatalogName::QCt(2),
            CatalogName::QD,
            CatalogName::Bowtie5,
        ];
        for name in has {
            let v = decide_global_loops(&build(&name).unwrap(), limits).unwrap();
            assert_eq!(v.kind, LoopKind::HasNontrivialGlobalLoops, "{name}: {}", v.rule);
        }
        let none = [
            CatalogName::AN(3),
            CatalogName::AN(4),
            CatalogName::Star(4),
            CatalogName::PathB(4),
            CatalogName::QCt(1),
            CatalogName::E6Double,
            CatalogName::E7Double,
            CatalogName::E8Double,
            CatalogName::X6,
        ];
        for name in none {
            let v = decide_global_loops(&build(&name).unwrap(), limits).unwrap();
            assert_eq!(v.kind, LoopKind::NoGlobalLoops, "{name}: {}", v.rule);
        }
        let v = decide_global_loops(&exceptional_cycle(), limits).unwrap();
        assert_eq!(v.kind, LoopKind::NoGlobalLoops, "exceptional: {}", v.rule);
    }

    #[test]
    fn decide_is_permutation_invariant() {
        let limits = Limits::default();
        for name in [CatalogName::QD, CatalogName::Kite4A, CatalogName::Star(4)] {
            let q = build(&name).unwrap();
            let base = decide_global_loops(&q, limits).unwrap();
            for images in [vec![2, 3, 4, 1], vec![4, 3, 2, 1], vec![2, 1, 4, 3]] {
                let sigma = Permutation::from_images(images).unwrap();
                let v = decide_global_loops(&q.permute(&sigma).unwrap(), limits).unwrap();
                assert_eq!(v.kind, base.kind, "{name} under {:?}", sigma.images());
            }
        }
    }

    #[test]
    fn fully_cyclic_shapes_have_fully_cyclic_classes() {
        // the named generating shapes: a class is fully cyclic exactly
        // when it contains one of these
        let limits = Limits::default();
        for name in [
            CatalogName::QAx(4),
            CatalogName::QCt(2),
            CatalogName::QD,
            CatalogName::Markov4,
            CatalogName::Bowtie5,
        ] {
            let graph = enumerate_class(&build(&name).unwrap(), limits).unwrap();
            let report = class_report(&graph).unwrap();
            assert!(report.fully_cyclic_class.0, "{name} leaf-free");
            assert!(report.fully_cyclic_class.1, "{name} on-cycle");
        }
    }

    #[test]
    fn cross_validate_agreement_on_small_shapes() {
        let limits = Limits::default();
        for name in [
            CatalogName::Markov4,
            CatalogName::QD,
            CatalogName::AN(3),
            CatalogName::Kite4A,
        ] {
            let report = cross_validate(&build(&name).unwrap(), 4, limits).unwrap();
            assert!(report.agree, "{name}: {}", report.note);
        }
        let rank2 = ValuedQuiver::new(&[vec![0, 1], vec![-1, 0]], None).unwrap();
        let report = cross_validate(&rank2, 6, limits).unwrap();
        assert_eq!(report.verdict.kind, LoopKind::EveryWordIsGlobalLoop);
        assert!(report.agree, "{}", report.note);
        assert_eq!(report.certificates.len(), 10);
    }
}
