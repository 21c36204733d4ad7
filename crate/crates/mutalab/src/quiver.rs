//! Valued quivers as skew-symmetrizable exchange matrices.
//!
//! A valued quiver on vertices `1..=n` is stored as its exchange matrix
//! `B` together with a positive integer symmetrizer `d` satisfying
//! `d[i]*B[i][j] = -d[j]*B[j][i]`. There is an edge `i -> j` exactly when
//! `B[i][j] > 0`, carrying the ordered valuation `(B[i][j], -B[j][i])`.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;

/// A directed valued edge, read off the exchange matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuedEdge {
    /// Source vertex (1-based).
    pub source: usize,
    /// Target vertex (1-based).
    pub target: usize,
    /// Ordered valuation `(d_ij, d_ji)`, both positive.
    pub valuation: (i64, i64),
}

impl ValuedEdge {
    /// Edge weight `d_ij * d_ji`.
    pub fn weight(&self) -> i64 {
        self.valuation.0 * self.valuation.1
    }
}

/// An immutable valued quiver: exchange matrix, symmetrizer, and an
/// optional set of frozen (non-mutable) vertices.
///
/// All public vertex indices are 1-based, matching the usual labeling of
/// quiver vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuedQuiver {
    n: usize,
    /// Row-major `n x n` exchange matrix.
    b: Vec<i64>,
    /// Positive symmetrizer, `d[i-1]` for vertex `i`.
    d: Vec<i64>,
    /// `frozen[i-1]` is true when vertex `i` may not be mutated.
    frozen: Vec<bool>,
}

impl ValuedQuiver {
    /// Builds a quiver from a row-major matrix, validating
    /// skew-symmetrizability. When `d` is omitted the componentwise
    /// minimal positive symmetrizer is computed (1 on isolated vertices).
    pub fn new(rows: &[Vec<i64>], d: Option<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut b = Vec::with_capacity(n * n);
        for row in rows {
            b.extend_from_slice(row);
        }
        for i in 0..n {
            if b[i * n + i] != 0 {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "nonzero diagonal entry at vertex {}",
                    i + 1
                )));
            }
            for j in 0..n {
                let (x, y) = (b[i * n + j], b[j * n + i]);
                if (x == 0) != (y == 0) || x.checked_mul(y).ok_or(Error::Overflow)? > 0 {
                    return Err(Error::NotSkewSymmetrizable(format!(
                        "entries ({},{}) and ({},{}) violate the sign condition",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let d = match d {
            Some(d) => {
                if d.len() != n {
                    return Err(Error::NotSkewSymmetrizable(
                        "symmetrizer length differs from rank".into(),
                    ));
                }
                if d.iter().any(|&x| x <= 0) {
                    return Err(Error::NotSkewSymmetrizable(
                        "symmetrizer entries must be positive".into(),
                    ));
                }
                for i in 0..n {
                    for j in 0..n {
                        let lhs = d[i].checked_mul(b[i * n + j]).ok_or(Error::Overflow)?;
                        let rhs = d[j].checked_mul(b[j * n + i]).ok_or(Error::Overflow)?;
                        if lhs != rhs.checked_neg().ok_or(Error::Overflow)? {
                            return Err(Error::NotSkewSymmetrizable(format!(
                                "d fails d[{i1}]*B[{i1}][{j1}] = -d[{j1}]*B[{j1}][{i1}]",
                                i1 = i + 1,
                                j1 = j + 1
                            )));
                        }
                    }
                }
                d
            }
            None => minimal_symmetrizer(n, &b)?,
        };
        Ok(Self {
            n,
            b,
            d,
            frozen: vec![false; n],
        })
    }

    /// Vertex count.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Exchange matrix entry `B[i][j]` (1-based indices).
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[(i - 1) * self.n + (j - 1)]
    }

    /// Symmetrizer entry for vertex `i` (1-based).
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    /// The symmetrizer as a slice indexed by `vertex - 1`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// The exchange matrix as row vectors.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.b[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// True when vertex `i` is frozen.
    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i - 1]
    }

    /// The mutable vertices in ascending order.
    pub fn mutable_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.frozen[i - 1]).collect()
    }

    /// True when some vertex is frozen.
    pub fn has_frozen_vertices(&self) -> bool {
        self.frozen.iter().any(|&f| f)
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: k,
                rank: self.n,
            });
        }
        Ok(())
    }

    /// All edges, ordered by source then target.
    pub fn edges(&self) -> Vec<ValuedEdge> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.b(i, j) > 0 {
                    out.push(ValuedEdge {
                        source: i,
                        target: j,
                        valuation: (self.b(i, j), -self.b(j, i)),
                    });
                }
            }
        }
        out
    }

    /// Maximum edge weight, 0 for an edgeless quiver.
    pub fn weight(&self) -> i64 {
        self.edges().iter().map(ValuedEdge::weight).max().unwrap_or(0)
    }

    /// Mutation at vertex `k`, computed on the exchange matrix:
    /// `B'[i][j] = -B[i][j]` when `k` is `i` or `j`, otherwise
    /// `B[i][j] + sign(B[i][k]) * max(0, B[i][k]*B[k][j])`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_vertex(k)?;
        if self.frozen[k - 1] {
            return Err(Error::FrozenVertex(k));
        }
        let n = self.n;
        let k0 = k - 1;
        let mut b = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = self.b[i * n + j];
                b[i * n + j] = if i == k0 || j == k0 {
                    v.checked_neg().ok_or(Error::Overflow)?
                } else {
                    let bik = self.b[i * n + k0];
                    let bkj = self.b[k0 * n + j];
                    let prod = bik.checked_mul(bkj).ok_or(Error::Overflow)?;
                    v.checked_add(bik.signum().checked_mul(prod.max(0)).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?
                };
            }
        }
        Ok(Self {
            n,
            b,
            d: self.d.clone(),
            frozen: self.frozen.clone(),
        })
    }

    /// Mutation at vertex `k`, computed directly on edges and valuations
    /// without touching the exchange matrix. Agrees with [`mutate`] on
    /// every input (covered by property tests).
    ///
    /// The procedure: for every directed path `i -> k -> j` through `k`,
    /// compose its valuations with whatever edge currently joins `i` and
    /// `j` (add a new edge, merge into a parallel edge, or shrink /
    /// flip / cancel an antiparallel edge); finally reverse every edge
    /// incident to `k`, swapping its valuation components.
    ///
    /// [`mutate`]: ValuedQuiver::mutate
    pub fn mutate_by_rules(&self, k: usize) -> Result<Self> {
        self.check_vertex(k)?;
        if self.frozen[k - 1] {
            return Err(Error::FrozenVertex(k));
        }
        let n = self.n;
        // edge map keyed by ordered pair: val[(i,j)] = (v_ij, v_ji) for edge i->j
        let mut edges: std::collections::BTreeMap<(usize, usize), (i64, i64)> = self
            .edges()
            .into_iter()
            .map(|e| ((e.source, e.target), e.valuation))
            .collect();
        let into_k: Vec<usize> = (1..=n).filter(|&i| edges.contains_key(&(i, k))).collect();
        let out_of_k: Vec<usize> = (1..=n).filter(|&j| edges.contains_key(&(k, j))).collect();
        for &i in &into_k {
            let (v_ik, v_ki) = edges[&(i, k)];
            for &j in &out_of_k {
                if i == j {
                    continue;
                }
                let (v_kj, v_jk) = edges[&(k, j)];
                let fwd = (
                    v_ik.checked_mul(v_kj).ok_or(Error::Overflow)?,
                    v_ki.checked_mul(v_jk).ok_or(Error::Overflow)?,
                );
                if let Some(&(v_ij, v_ji)) = edges.get(&(i, j)) {
                    // parallel edge: valuations accumulate
                    edges.insert(
                        (i, j),
                        (
                            v_ij.checked_add(fwd.0).ok_or(Error::Overflow)?,
                            v_ji.checked_add(fwd.1).ok_or(Error::Overflow)?,
                        ),
                    );
                } else if let Some(&(v_ji, v_ij)) = edges.get(&(j, i)) {
                    // antiparallel edge: compare the composed valuation
                    match fwd.0.cmp(&v_ij) {
                        std::cmp::Ordering::Less => {
                            edges.insert((j, i), (v_ji - fwd.1, v_ij - fwd.0));
                        }
                        std::cmp::Ordering::Greater => {
                            edges.remove(&(j, i));
                            edges.insert((i, j), (fwd.0 - v_ij, (v_ji - fwd.1).abs()));
                        }
                        std::cmp::Ordering::Equal => {
                            edges.remove(&(j, i));
                        }
                    }
                } else {
                    edges.insert((i, j), fwd);
                }
            }
        }
        // reverse the arrows at k, swapping valuation components
        for i in into_k {
            let (v_ik, v_ki) = edges.remove(&(i, k)).expect("edge recorded above");
            edges.insert((k, i), (v_ki, v_ik));
        }
        for j in out_of_k {
            let (v_kj, v_jk) = edges.remove(&(k, j)).expect("edge recorded above");
            edges.insert((j, k), (v_jk, v_kj));
        }
        let mut b = vec![0i64; n * n];
        for ((i, j), (v_ij, v_ji)) in edges {
            b[(i - 1) * n + (j - 1)] = v_ij;
            b[(j - 1) * n + (i - 1)] = v_ji.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Self {
            n,
            b,
            d: self.d.clone(),
            frozen: self.frozen.clone(),
        })
    }

    /// Relabels vertices by `sigma`: `B'[sigma(i)][sigma(j)] = B[i][j]`
    /// and `d'[sigma(i)] = d[i]`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::RankMismatch(sigma.len(), self.n));
        }
        let n = self.n;
        let mut b = vec![0i64; n * n];
        let mut d = vec![0i64; n];
        let mut frozen = vec![false; n];
        for i in 1..=n {
            let si = sigma.apply(i);
            d[si - 1] = self.d[i - 1];
            frozen[si - 1] = self.frozen[i - 1];
            for j in 1..=n {
                b[(si - 1) * n + (sigma.apply(j) - 1)] = self.b(i, j);
            }
        }
        Ok(Self { n, b, d, frozen })
    }

    /// The quiver with every arrow reversed (`B' = -B`), same symmetrizer.
    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            b: self.b.iter().map(|&x| -x).collect(),
            d: self.d.clone(),
            frozen: self.frozen.clone(),
        }
    }

    /// Number of neighbors of vertex `i` in the underlying graph.
    pub fn degree(&self, i: usize) -> usize {
        (1..=self.n).filter(|&j| self.b(i, j) != 0).count()
    }

    /// True when vertex `i` has exactly one neighbor.
    pub fn is_leaf(&self, i: usize) -> bool {
        self.degree(i) == 1
    }

    /// The leaves, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.is_leaf(i)).collect()
    }

    /// True when the rank exceeds 2 and every vertex but one is a leaf of
    /// the single hub.
    pub fn is_star(&self) -> bool {
        if self.n <= 2 {
            return false;
        }
        (1..=self.n).any(|c| {
            self.degree(c) == self.n - 1
                && (1..=self.n).all(|i| i == c || (self.is_leaf(i) && self.b(i, c) != 0))
        })
    }

    /// Two readings of "fully cyclic": `(no vertex is a leaf, every
    /// vertex lies on an undirected cycle)`. The readings can differ on
    /// general graphs (a leaf-free graph may still have a cut vertex of
    /// degree 2 joining two cycles), so both are reported.
    pub fn is_fully_cyclic(&self) -> (bool, bool) {
        let leaf_free = (1..=self.n).all(|i| !self.is_leaf(i));
        let on_cycle = (1..=self.n).all(|i| self.vertex_on_cycle(i));
        (leaf_free, on_cycle)
    }

    /// True when `i` has an incident edge that is not a bridge, i.e. `i`
    /// lies on some undirected cycle.
    fn vertex_on_cycle(&self, i: usize) -> bool {
        (1..=self.n)
            .filter(|&j| self.b(i, j) != 0)
            .any(|j| self.connected_avoiding(i, j))
    }

    /// Is there a path from `u` to `v` that does not use the edge `{u,v}`?
    fn connected_avoiding(&self, u: usize, v: usize) -> bool {
        let mut seen = vec![false; self.n + 1];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for y in 1..=self.n {
                if self.b(x, y) == 0 || (x == u && y == v) {
                    continue;
                }
                if y == v {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Marks every vertex outside `mutable` as frozen. Frozen vertices
    /// keep their edges and still interact under mutation at mutable
    /// vertices, but may not themselves be mutated.
    pub fn restrict(&self, mutable: &[usize]) -> Result<Self> {
        if mutable.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &i in mutable {
            self.check_vertex(i)?;
        }
        let mut frozen = vec![true; self.n];
        for &i in mutable {
            frozen[i - 1] = false;
        }
        Ok(Self {
            frozen,
            ..self.clone()
        })
    }

    /// Drops all frozen marks.
    pub fn unfreeze(&self) -> Self {
        Self {
            frozen: vec![false; self.n],
            ..self.clone()
        }
    }

    /// The full subquiver on `keep`, reindexed by the order of `keep`.
    pub fn subquiver(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &i in keep {
            self.check_vertex(i)?;
        }
        let m = keep.len();
        let mut b = vec![0i64; m * m];
        let mut d = vec![0i64; m];
        for (a, &i) in keep.iter().enumerate() {
            d[a] = self.d[i - 1];
            for (c, &j) in keep.iter().enumerate() {
                b[a * m + c] = self.b(i, j);
            }
        }
        Ok(Self {
            n: m,
            b,
            d,
            frozen: vec![false; m],
        })
    }
}

/// Componentwise-minimal positive symmetrizer: solve the proportionality
/// constraints `d[j]/d[i] = B[i][j] / -B[j][i]` per connected component,
/// clear denominators, and divide by the gcd. Isolated vertices get 1.
fn minimal_symmetrizer(n: usize, b: &[i64]) -> Result<Vec<i64>> {
    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Ratio::from_integer(1));
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let ri = ratio[i].expect("set before enqueue");
            for j in 0..n {
                let bij = b[i * n + j];
                if bij == 0 {
                    continue;
                }
                let r = ri * Ratio::new(bij, -b[j * n + i]);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(r);
                        queue.push_back(j);
                    }
                    Some(prev) if prev != r => {
                        return Err(Error::NotSkewSymmetrizable(
                            "inconsistent valuation ratios around a cycle".into(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut lcm: i64 = 1;
    for r in ratio.iter().flatten() {
        lcm = lcm.checked_mul(r.denom() / lcm.gcd(r.denom())).ok_or(Error::Overflow)?;
    }
    let mut scaled = Vec::with_capacity(n);
    for r in &ratio {
        let r = r.expect("all components visited");
        scaled.push(r.numer().checked_mul(lcm / r.denom()).ok_or(Error::Overflow)?);
    }
    let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(scaled.iter().map(|&x| x / g).collect())
}

/// A permutation of `1..=n`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `1..=n`.
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// Builds from the image list `images[i-1] = sigma(i)` (1-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    /// Degree `n`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// True for the degree-0 permutation (never produced by the library).
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The image of vertex `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The image list.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let n = self.images.len();
        let mut images = vec![0; n];
        for i in 1..=n {
            images[self.apply(i) - 1] = i;
        }
        Self { images }
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}
