use std::collections::BTreeSet;

use serde::Serialize;

use crate::closure::Closure;
use crate::descent::{induced_pair_coloring, LassoMultipath};
use crate::graph::{GraphSet, ScgError};

use super::PrinciplesError;

/// An eventually periodic coloring `c: ℕ -> k`: `prefix` once, then `period`
/// forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpColoring {
    k: usize,
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl EpColoring {
    pub fn new(k: usize, prefix: Vec<usize>, period: Vec<usize>) -> Result<Self, PrinciplesError> {
        if period.is_empty() {
            return Err(PrinciplesError::EmptyPeriod);
        }
        if let Some(&c) = prefix.iter().chain(&period).find(|&&c| c >= k) {
            return Err(PrinciplesError::ColorOutOfRange { color: c, k });
        }
        Ok(EpColoring { k, prefix, period })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    pub fn color_at(&self, x: usize) -> usize {
        if x < self.prefix.len() {
            self.prefix[x]
        } else {
            self.period[(x - self.prefix.len()) % self.period.len()]
        }
    }
}

/// Colors occurring infinitely often, i.e. those in the period.
pub fn spp_witness(c: &EpColoring) -> BTreeSet<usize> {
    c.period.iter().copied().collect()
}

/// A coloring of the pairs `i < j < n` with `k` colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    k: usize,
    n: usize,
    // row i holds c(i, i+1), …, c(i, n-1)
    values: Vec<usize>,
}

impl PairColoring {
    pub fn new(
        k: usize,
        n: usize,
        mut color: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, PrinciplesError> {
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let c = color(i, j);
                if c >= k {
                    return Err(PrinciplesError::ColorOutOfRange { color: c, k });
                }
                values.push(c);
            }
        }
        Ok(PairColoring { k, n, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(
            i < j && j < self.n,
            "pair ({i}, {j}) outside [0, {})",
            self.n
        );
        // rows before i hold (n-1) + (n-2) + … + (n-i) entries
        let row = i * (2 * self.n - i - 1) / 2;
        self.values[row + (j - i - 1)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub t: usize,
    pub color: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Smallest apex `t`, then smallest color `i`, with at least `min_triangles`
/// pairs `t < m < l` such that `c(t,m) = c(t,l) = c(m,l) = i`. All such pairs
/// are returned.
pub fn star_search(c: &PairColoring, min_triangles: usize) -> Option<StarWitness> {
    for t in 0..c.n {
        for color in 0..c.k {
            let pairs: Vec<(usize, usize)> = (t + 1..c.n)
                .filter(|&m| c.get(t, m) == color)
                .flat_map(|m| {
                    (m + 1..c.n)
                        .filter(move |&l| c.get(t, l) == color && c.get(m, l) == color)
                        .map(move |l| (m, l))
                })
                .collect();
            if pairs.len() >= min_triangles {
                return Some(StarWitness { t, color, pairs });
            }
        }
    }
    None
}

/// The pair coloring `c(i, j) = G_i ; … ; G_{j-1}` on the first `n` positions
/// of `lasso`, with each graph encoded by its position in `cl`.
pub fn induced_coloring(
    lasso: &LassoMultipath,
    gs: &GraphSet,
    cl: &Closure,
    n: usize,
) -> Result<PairColoring, ScgError> {
    let mut failure = None;
    let coloring = PairColoring::new(cl.len(), n, |i, j| {
        match induced_pair_coloring(lasso, gs, i, j).map(|g| cl.position(&g)) {
            Ok(Some(pos)) => pos,
            Ok(None) => {
                failure.get_or_insert(ScgError::Domain(
                    "composition left the closure; closure and graph set disagree".into(),
                ));
                0
            }
            Err(e) => {
                failure.get_or_insert(e);
                0
            }
        }
    });
    match (failure, coloring) {
        (Some(e), _) => Err(e),
        (None, Ok(c)) => Ok(c),
        (None, Err(e)) => Err(ScgError::Domain(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spp_witness_examples() {
        let c = EpColoring::new(3, vec![0, 0, 1], vec![2]).unwrap();
        assert_eq!(spp_witness(&c), BTreeSet::from([2]));
        let c = EpColoring::new(2, vec![], vec![0, 1]).unwrap();
        assert_eq!(spp_witness(&c), BTreeSet::from([0, 1]));
        let c = EpColoring::new(2, vec![], vec![1, 1, 1]).unwrap();
        assert_eq!(spp_witness(&c), BTreeSet::from([1]));
        assert_eq!(c.color_at(7), 1);
    }

    #[test]
    fn coloring_validation() {
        assert_eq!(
            EpColoring::new(2, vec![], vec![]),
            Err(PrinciplesError::EmptyPeriod)
        );
        assert_eq!(
            EpColoring::new(2, vec![2], vec![0]),
            Err(PrinciplesError::ColorOutOfRange { color: 2, k: 2 })
        );
        assert!(PairColoring::new(2, 4, |_, _| 2).is_err());
    }

    #[test]
    fn pair_indexing() {
        let c = PairColoring::new(100, 7, |i, j| i * 10 + j).unwrap();
        for i in 0..7 {
            for j in i + 1..7 {
                assert_eq!(c.get(i, j), i * 10 + j);
            }
        }
    }

    #[test]
    fn parity_coloring() {
        let c = PairColoring::new(2, 20, |i, j| (j - i) % 2).unwrap();
        let w = star_search(&c, 5).unwrap();
        assert_eq!((w.t, w.color), (0, 0));
        let evens: Vec<usize> = (2..20).step_by(2).collect();
        let expected: Vec<(usize, usize)> = evens
            .iter()
            .flat_map(|&m| evens.iter().filter(move |&&l| l > m).map(move |&l| (m, l)))
            .collect();
        assert_eq!(w.pairs, expected);
        assert_eq!(w.pairs.len(), 36);
    }

    #[test]
    fn constant_and_tiny() {
        let c = PairColoring::new(1, 6, |_, _| 0).unwrap();
        let w = star_search(&c, 3).unwrap();
        assert_eq!((w.t, w.color), (0, 0));
        let c = PairColoring::new(2, 3, |_, _| 0).unwrap();
        assert_eq!(star_search(&c, 5), None);
    }
}
