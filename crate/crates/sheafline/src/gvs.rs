//! Graded vector spaces: maps degree -> dimension with finite support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    pub fn zero() -> Self {
        GradedVectorSpace::default()
    }

    pub fn single(degree: i64, dim: usize) -> Self {
        let mut g = GradedVectorSpace::zero();
        g.add_dim(degree, dim);
        g
    }

    pub fn add_dim(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.dims.entry(degree).or_insert(0) += dim;
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    /// Degrees carrying a nonzero dimension.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    /// Shift: `self.shifted(s)` places what was in degree d at degree d+s.
    pub fn shifted(&self, s: i64) -> Self {
        GradedVectorSpace {
            dims: self.dims.iter().map(|(&d, &n)| (d + s, n)).collect(),
        }
    }

    /// Multiply all dimensions by a scalar (direct sum of copies).
    pub fn scaled(&self, m: usize) -> Self {
        if m == 0 {
            return GradedVectorSpace::zero();
        }
        GradedVectorSpace {
            dims: self.dims.iter().map(|(&d, &n)| (d, n * m)).collect(),
        }
    }

    /// Concentrated in a single degree?
    pub fn concentrated_degree(&self) -> Option<i64> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }
}

impl Add for GradedVectorSpace {
    type Output = GradedVectorSpace;

    fn add(self, rhs: GradedVectorSpace) -> GradedVectorSpace {
        let mut out = self;
        for (d, n) in rhs.dims {
            out.add_dim(d, n);
        }
        out
    }
}

impl fmt::Debug for GradedVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(d, n)| format!("{d}:{n}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let mut g = GradedVectorSpace::zero();
        g.add_dim(0, 1);
        g.add_dim(1, 2);
        g.add_dim(3, 0);
        assert_eq!(g.dim(0), 1);
        assert_eq!(g.dim(1), 2);
        assert_eq!(g.dim(3), 0);
        assert_eq!(g.total_dim(), 3);
        assert_eq!(g.shifted(2).dim(2), 1);
        let h = g.clone() + GradedVectorSpace::single(0, 4);
        assert_eq!(h.dim(0), 5);
    }
}
