use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A strictly increasing subset of `{0, …, n-1}`.
///
/// Indices are zero-based in Rust; [`MultiIndex::one_based`] and the
/// `Display` impl give the conventional `1..=n` labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<usize>,
    ambient_dim: usize,
}

impl MultiIndex {
    pub fn new(indices: Vec<usize>, ambient_dim: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Index(format!(
                "multi-index {indices:?} is not strictly increasing"
            )));
        }
        if let Some(&last) = indices.last() {
            if last >= ambient_dim {
                return Err(Error::Index(format!(
                    "multi-index entry {last} outside 0..{ambient_dim}"
                )));
            }
        }
        Ok(MultiIndex {
            indices,
            ambient_dim,
        })
    }

    /// Builds from 1-based labels.
    pub fn from_one_based(labels: &[usize], ambient_dim: usize) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::Index("1-based multi-index contains 0".into()));
        }
        Self::new(labels.iter().map(|i| i - 1).collect(), ambient_dim)
    }

    /// `{0, …, n-1}` itself.
    pub fn full(n: usize) -> Self {
        MultiIndex {
            indices: (0..n).collect(),
            ambient_dim: n,
        }
    }

    /// Every increasing `k`-subset of `{0, …, n-1}` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = MultiIndex> {
        (0..n).combinations(k).map(move |indices| MultiIndex {
            indices,
            ambient_dim: n,
        })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    /// The increasing complement, so that `e_i ∧ e_ī` is a multiple of the volume form.
    pub fn complement(&self) -> MultiIndex {
        let mut taken = vec![false; self.ambient_dim];
        for &i in &self.indices {
            taken[i] = true;
        }
        MultiIndex {
            indices: (0..self.ambient_dim).filter(|&i| !taken[i]).collect(),
            ambient_dim: self.ambient_dim,
        }
    }

    /// `∏_{i ∈ self} values[i]`.
    pub fn product(&self, values: &[f64]) -> f64 {
        self.indices.iter().map(|&i| values[i]).product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, i) in self.indices.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        let i = MultiIndex::from_one_based(&[1, 2], 4).unwrap();
        assert_eq!(i.complement().one_based(), vec![3, 4]);
        assert_eq!(i.complement().complement(), i);
        assert_eq!(i.to_string(), "(1,2)");
        assert!(MultiIndex::full(3).complement().is_empty());
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(MultiIndex::new(vec![2, 1], 4).is_err());
        assert!(MultiIndex::new(vec![1, 1], 4).is_err());
        assert!(MultiIndex::new(vec![0, 4], 4).is_err());
        assert!(MultiIndex::from_one_based(&[0, 1], 4).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=8 {
            for k in 0..=n {
                let all: Vec<_> = MultiIndex::all(n, k).collect();
                assert_eq!(all.len() as f64, crate::geom::binomial(n, k));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn complement_is_involutive(n in 1usize..16, mask in any::<u16>()) {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let i = MultiIndex::new(idx, n).unwrap();
                let c = i.complement();
                prop_assert_eq!(i.len() + c.len(), n);
                prop_assert!(c.iter().all(|j| !i.indices().contains(&j)));
                prop_assert_eq!(c.complement(), i);
            }
        }
    }
}
