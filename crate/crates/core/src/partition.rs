//! Jordan block partitions and their `e`-sequences.

use std::fmt;

/// Jordan block lengths of one unipotent part, stored weakly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Returns `None` for an empty list or a zero-length block.
    pub fn new(mut blocks: Vec<u32>) -> Option<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return None;
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition(blocks))
    }

    /// A single Jordan block of length `n`.
    pub fn block(n: u32) -> Self {
        assert!(n > 0);
        Partition(vec![n])
    }

    /// `n` blocks of length one.
    pub fn semisimple(n: u32) -> Self {
        assert!(n > 0);
        Partition(vec![1; n as usize])
    }

    pub fn blocks(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    /// Number of blocks of length at least `i` (`i >= 1`).
    pub fn e(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&b| b >= i).count() as u32
    }

    /// `[e_1, e_2, ..., e_max]`; this is the conjugate partition.
    pub fn e_sequence(&self) -> Vec<u32> {
        (1..=self.largest()).map(|i| self.e(i)).collect()
    }

    /// Rebuilds a partition from `e_1, e_2, ...`, reading missing entries as
    /// zero. The multiplicity of length `m` is `e_m - e_(m+1)`; a negative
    /// multiplicity is reported as an error. All-zero input gives `Ok(None)`.
    pub fn from_e_sequence(e: &[i64]) -> Result<Option<Self>, String> {
        let mut blocks = Vec::new();
        for (idx, &em) in e.iter().enumerate() {
            let next = e.get(idx + 1).copied().unwrap_or(0);
            let mult = em - next;
            if em < 0 || mult < 0 {
                return Err(format!(
                    "e-sequence {e:?} is not weakly decreasing and nonnegative"
                ));
            }
            blocks.extend(std::iter::repeat_n(idx as u32 + 1, mult as usize));
        }
        Ok(Partition::new(blocks))
    }

    pub fn conjugate(&self) -> Self {
        Partition(self.e_sequence())
    }

    /// `Σ_i e_i²`, the centralizer dimension of this unipotent part.
    pub fn centralizer_dim(&self) -> u32 {
        self.e_sequence().iter().map(|e| e * e).sum()
    }

    /// Concatenation of two block lists.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v).expect("merge of nonempty partitions")
    }

    /// `(length, multiplicity)` pairs in decreasing length.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &b in &self.0 {
            match out.last_mut() {
                Some((len, m)) if *len == b => *m += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
