//! Symmetry witnesses: relabelings (with an optional global sign) that
//! carry one quiver onto another.

use crate::error::{Error, Result};
use crate::quiver::{Permutation, ValuedQuiver};

/// A global sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `+1`.
    Plus,
    /// `-1`.
    Minus,
}

impl Sign {
    /// The sign as an integer factor.
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Parses `+1` / `-1`.
    pub fn from_factor(x: i64) -> Result<Self> {
        match x {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::MalformedDocument(format!(
                "epsilon must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A certificate that `Q2 = epsilon * sigma(Q)`: for all vertices,
/// `B2[sigma(i)][sigma(j)] = epsilon * B[i][j]` and `d2[sigma(i)] = d[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryWitness {
    /// The relabeling.
    pub sigma: Permutation,
    /// The global sign.
    pub epsilon: Sign,
}

impl SymmetryWitness {
    /// Checks the witness equations against concrete quivers.
    pub fn verifies(&self, q: &ValuedQuiver, q2: &ValuedQuiver) -> bool {
        let n = q.rank();
        if q2.rank() != n || self.sigma.len() != n {
            return false;
        }
        let e = self.epsilon.factor();
        (1..=n).all(|i| {
            q2.d(self.sigma.apply(i)) == q.d(i)
                && q2.is_frozen(self.sigma.apply(i)) == q.is_frozen(i)
                && (1..=n).all(|j| q2.b(self.sigma.apply(i), self.sigma.apply(j)) == e * q.b(i, j))
        })
    }
}

/// Per-vertex invariant used to prune the witness search: symmetrizer
/// entry, frozen flag, and the sorted multiset of incident absolute
/// valuation pairs (unchanged by relabeling and by global sign).
fn vertex_profile(q: &ValuedQuiver, i: usize) -> (i64, bool, Vec<(i64, i64)>) {
    let mut pairs: Vec<(i64, i64)> = (1..=q.rank())
        .filter(|&j| q.b(i, j) != 0)
        .map(|j| (q.b(i, j).abs(), q.b(j, i).abs()))
        .collect();
    pairs.sort_unstable();
    (q.d(i), q.is_frozen(i), pairs)
}

/// Finds a witness with `Q2 = epsilon * sigma(Q)` if one exists.
///
/// Deterministic tie-break: `epsilon = +1` is preferred over `-1`, and
/// within a sign the lexicographically least image list is returned. The
/// search assigns `sigma(1), sigma(2), ...` in order, trying candidate
/// images ascending, and prunes with [`vertex_profile`] plus exact
/// consistency against all previously assigned vertices.
pub fn symmetry_witness(q: &ValuedQuiver, q2: &ValuedQuiver) -> Result<Option<SymmetryWitness>> {
    let n = q.rank();
    if q2.rank() != n {
        return Err(Error::RankMismatch(n, q2.rank()));
    }
    for epsilon in [Sign::Plus, Sign::Minus] {
        if let Some(sigma) = search_sigma(q, q2, epsilon) {
            return Ok(Some(SymmetryWitness { sigma, epsilon }));
        }
    }
    Ok(None)
}

fn search_sigma(q: &ValuedQuiver, q2: &ValuedQuiver, epsilon: Sign) -> Option<Permutation> {
    let n = q.rank();
    let profiles: Vec<_> = (1..=n).map(|i| vertex_profile(q, i)).collect();
    let profiles2: Vec<_> = (1..=n).map(|i| vertex_profile(q2, i)).collect();
    let candidates: Vec<Vec<usize>> = (1..=n)
        .map(|i| {
            (1..=n)
                .filter(|&v| profiles2[v - 1] == profiles[i - 1])
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let e = epsilon.factor();
    let mut images: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn extend(
        q: &ValuedQuiver,
        q2: &ValuedQuiver,
        e: i64,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = q.rank();
        let i = images.len() + 1;
        if i > n {
            return true;
        }
        'next: for &v in &candidates[i - 1] {
            if used[v] {
                continue;
            }
            for j in 1..=images.len() {
                let w = images[j - 1];
                if q2.b(v, w) != e * q.b(i, j) || q2.b(w, v) != e * q.b(j, i) {
                    continue 'next;
                }
            }
            images.push(v);
            used[v] = true;
            if extend(q, q2, e, candidates, images, used) {
                return true;
            }
            used[v] = false;
            images.pop();
        }
        false
    }
    if extend(q, q2, e, &candidates, &mut images, &mut used) {
        Some(Permutation::from_images(images).expect("bijection by construction"))
    } else {
        None
    }
}

/// Brute-force reference: scans all `n! * 2` candidate `(sigma, epsilon)`
/// pairs in the same deterministic order as [`symmetry_witness`]. Used by
/// the test suite to cross-check the pruned search; practical for
/// `n <= 10`.
pub fn symmetry_witness_exhaustive(
    q: &ValuedQuiver,
    q2: &ValuedQuiver,
) -> Result<Option<SymmetryWitness>> {
    let n = q.rank();
    if q2.rank() != n {
        return Err(Error::RankMismatch(n, q2.rank()));
    }
    for epsilon in [Sign::Plus, Sign::Minus] {
        let mut images = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        if let Some(sigma) = scan(q, q2, epsilon.factor(), &mut images, &mut used) {
            return Ok(Some(SymmetryWitness { sigma, epsilon }));
        }
    }
    return Ok(None);

    fn scan(
        q: &ValuedQuiver,
        q2: &ValuedQuiver,
        e: i64,
        images: &mut Vec<usize>,
        used: &mut [bool],
    ) -> Option<Permutation> {
        let n = q.rank();
        if images.len() == n {
            let sigma = Permutation::from_images(images.clone()).expect("bijection");
            let w = SymmetryWitness {
                sigma,
                epsilon: Sign::from_factor(e).expect("known sign"),
            };
            return w.verifies(q, q2).then_some(w.sigma);
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            images.push(v);
            used[v] = true;
            if let Some(s) = scan(q, q2, e, images, used) {
                return Some(s);
            }
            used[v] = false;
            images.pop();
        }
        None
    }
}
