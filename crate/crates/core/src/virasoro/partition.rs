//! Integer partitions indexing PBW words `L_{-j1} ... L_{-jl}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A nonincreasing list of positive parts `j1 >= ... >= jl >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The mode sequence `[-j1, ..., -jl]` in application order
    /// (leftmost = most negative acts last).
    pub fn modes(&self) -> Vec<i64> {
        self.0.iter().map(|&j| -(j as i64)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let j = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == j {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "L_{{-{j}}}")?;
            } else {
                write!(f, "L_{{-{j}}}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// All partitions of `n` with parts in `[min_part, n]`, first part
/// descending (so `[n]` comes first and `[1,1,...,1]` last when
/// `min_part == 1`).
pub fn partitions_of(n: u32, min_part: u32) -> Vec<Partition> {
    fn gen(n: u32, max_part: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        let hi = n.min(max_part);
        if hi < min_part {
            return;
        }
        for first in (min_part..=hi).rev() {
            prefix.push(first);
            gen(n - first, first, min_part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    gen(n, n, min_part, &mut vec![], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_of(5, 1).len(), 7);
        assert_eq!(partitions_of(6, 1).len(), 11);
        // parts >= 2 (vacuum sector): 6 = 6, 4+2, 3+3, 2+2+2
        assert_eq!(partitions_of(6, 2).len(), 4);
        assert_eq!(partitions_of(0, 1).len(), 1);
    }

    #[test]
    fn ordering_and_display() {
        let ps = partitions_of(4, 1);
        assert_eq!(ps[0], Partition::new(vec![4]));
        assert_eq!(*ps.last().unwrap(), Partition::new(vec![1, 1, 1, 1]));
        assert_eq!(format!("{}", Partition::new(vec![2, 1, 1])), "L_{-2} L_{-1}^2");
    }
}
