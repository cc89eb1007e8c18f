//! Set-partition diagrams on `{1..n} ∪ {1'..n'}`.
//!
//! Nodes are stored 0-based: top node `i` is `i - 1`, bottom node `i'` is
//! `n_top + i - 1`. Text I/O uses the primed 1-based notation.

use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n_top: usize,
    n_bot: usize,
    blocks: Vec<Vec<usize>>,
}

/// Result of stacking two partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stacked {
    pub diagram: SetPartition,
    /// One representative middle node (0-based) per removed component.
    pub removed: Vec<usize>,
}

impl SetPartition {
    pub fn new(n_top: usize, n_bot: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let total = n_top + n_bot;
        let mut seen = vec![false; total];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in b {
                if x >= total {
                    return Err(Error::InvalidPartition(format!("node index {x} out of range")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("node {} repeated", node_label(n_top, x))));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("node {} not covered", node_label(n_top, x))));
        }
        Ok(Self::canonical(n_top, n_bot, blocks))
    }

    fn canonical(n_top: usize, n_bot: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { n_top, n_bot, blocks }
    }

    /// Partition from a block label per node.
    pub fn from_labels(n_top: usize, n_bot: usize, labels: &[usize]) -> Result<Self> {
        if labels.len() != n_top + n_bot {
            return Err(Error::InvalidPartition(format!("{} labels for {} nodes", labels.len(), n_top + n_bot)));
        }
        let mut slot = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let k = *slot.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(x);
        }
        Ok(Self::canonical(n_top, n_bot, blocks))
    }

    pub fn identity(n: usize) -> Self {
        Self::canonical(n, n, (0..n).map(|i| vec![i, n + i]).collect())
    }

    pub fn n_top(&self) -> usize {
        self.n_top
    }

    pub fn n_bot(&self) -> usize {
        self.n_bot
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_top(&self, x: usize) -> bool {
        x < self.n_top
    }

    /// Block label of every node, blocks numbered in canonical order.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_top + self.n_bot];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = k;
            }
        }
        out
    }

    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.n_top, self.n_bot, self.blocks.clone())
    }

    pub fn is_pair_partition(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// Blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        self.blocks.iter().filter(|b| self.is_propagating(b)).count()
    }

    pub fn is_propagating(&self, block: &[usize]) -> bool {
        block.iter().any(|&x| x < self.n_top) && block.iter().any(|&x| x >= self.n_top)
    }

    /// Position on the boundary cycle `1, .., n, n', .., 1'`.
    pub fn boundary_position(&self, x: usize) -> usize {
        if x < self.n_top {
            x
        } else {
            self.n_top + self.n_bot - 1 - (x - self.n_top)
        }
    }

    /// Whether two 2-node blocks interleave on the boundary cycle.
    pub fn pairs_cross(&self, a: &[usize], b: &[usize]) -> bool {
        let span = |p: &[usize]| {
            let (x, y) = (self.boundary_position(p[0]), self.boundary_position(p[1]));
            (x.min(y), x.max(y))
        };
        let (a0, a1) = span(a);
        let (b0, b1) = span(b);
        (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
    }

    pub fn is_noncrossing(&self) -> Result<bool> {
        if let Some(b) = self.blocks.iter().find(|b| b.len() != 2) {
            return Err(Error::NotPairPartition(b.len()));
        }
        Ok(self.blocks.iter().enumerate().all(|(i, a)| self.blocks[..i].iter().all(|b| !self.pairs_cross(a, b))))
    }

    /// Vertical mirror image: top and bottom rows exchanged.
    pub fn reflect(&self) -> Self {
        let (t, b) = (self.n_top, self.n_bot);
        let flip = |x: usize| if x < t { b + x } else { x - t };
        Self::canonical(b, t, self.blocks.iter().map(|blk| blk.iter().map(|&x| flip(x)).collect()).collect())
    }

    /// `alpha` placed above `beta`, with the middle row identified.
    pub fn stack_detailed(alpha: &Self, beta: &Self) -> Result<Stacked> {
        if alpha.n_bot != beta.n_top {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack: {} bottom nodes over {} top nodes",
                alpha.n_bot, beta.n_top
            )));
        }
        let (t, k, b) = (alpha.n_top, alpha.n_bot, beta.n_bot);
        let total = t + k + b;
        let mut uf = UnionFind::<usize>::new(total);
        for blk in &alpha.blocks {
            for w in blk.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        // beta's top nodes are the middle row, already at t..t+k.
        for blk in &beta.blocks {
            for w in blk.windows(2) {
                uf.union(t + w[0], t + w[1]);
            }
        }
        let labels = uf.into_labeling();
        let mut outer: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; total];
        for x in (0..t).chain(t + k..total) {
            let r = labels[x];
            if slot[r] == usize::MAX {
                slot[r] = outer.len();
                outer.push(Vec::new());
            }
            let node = if x < t { x } else { x - k };
            outer[slot[r]].push(node);
        }
        let mut removed = Vec::new();
        for x in t..t + k {
            let r = labels[x];
            if slot[r] == usize::MAX {
                slot[r] = usize::MAX - 1;
                removed.push(x - t);
            }
        }
        Ok(Stacked { diagram: Self::canonical(t, b, outer), removed })
    }

    /// Composite with the number of components confined to the middle row.
    pub fn stack(alpha: &Self, beta: &Self) -> Result<(Self, usize)> {
        let s = Self::stack_detailed(alpha, beta)?;
        Ok((s.diagram, s.removed.len()))
    }

    pub fn parse_sized(n_top: usize, n_bot: usize, s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            blocks.push(parse_block(n_top, n_bot, part)?);
        }
        Self::new(n_top, n_bot, blocks)
    }
}

fn node_label(n_top: usize, x: usize) -> String {
    if x < n_top {
        format!("{}", x + 1)
    } else {
        format!("{}'", x - n_top + 1)
    }
}

/// Parses one node token (`3` or `3'`) into `(index, primed)`, 1-based.
fn parse_node(tok: &str) -> Result<(usize, bool)> {
    let tok = tok.trim();
    let (digits, primed) = match tok.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (tok, false),
    };
    let i: usize = digits.trim().parse().map_err(|_| Error::Parse(format!("bad node {tok:?}")))?;
    if i == 0 {
        return Err(Error::Parse("nodes are numbered from 1".into()));
    }
    Ok((i, primed))
}

fn block_tokens(s: &str) -> Result<Vec<(usize, bool)>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("block must look like {{1,2'}}, got {s:?}")))?;
    inner.split(',').map(parse_node).collect()
}

pub(crate) fn parse_block(n_top: usize, n_bot: usize, s: &str) -> Result<Vec<usize>> {
    block_tokens(s)?
        .into_iter()
        .map(|(i, primed)| {
            let limit = if primed { n_bot } else { n_top };
            if i > limit {
                return Err(Error::Parse(format!("node {i} out of range 1..={limit}")));
            }
            Ok(if primed { n_top + i - 1 } else { i - 1 })
        })
        .collect()
}

pub(crate) fn fmt_block(n_top: usize, block: &[usize]) -> String {
    let nodes: Vec<String> = block.iter().map(|&x| node_label(n_top, x)).collect();
    format!("{{{}}}", nodes.join(","))
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| fmt_block(self.n_top, b)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Row sizes are inferred from the largest node on each row.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').map(str::trim).filter(|p| !p.is_empty()).collect();
        let mut n_top = 0;
        let mut n_bot = 0;
        for p in &parts {
            for (i, primed) in block_tokens(p)? {
                if primed {
                    n_bot = n_bot.max(i);
                } else {
                    n_top = n_top.max(i);
                }
            }
        }
        Self::parse_sized(n_top, n_bot, s)
    }
}

/// Every pair partition of `n_top + n_bot` nodes (empty if the count is odd).
pub fn all_pair_partitions(n_top: usize, n_bot: usize) -> Vec<SetPartition> {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some(&a) = free.first() else {
            out.push(acc.clone());
            return;
        };
        for k in 1..free.len() {
            let b = free[k];
            let rest: Vec<usize> = free.iter().copied().filter(|&x| x != a && x != b).collect();
            let saved = std::mem::replace(free, rest);
            acc.push(vec![a, b]);
            rec(free, acc, out);
            acc.pop();
            *free = saved;
        }
    }
    let total = n_top + n_bot;
    if total % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut (0..total).collect(), &mut Vec::new(), &mut out);
    out.into_iter().map(|b| SetPartition::canonical(n_top, n_bot, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let d = p("{2',1}; {2}; {1'}");
        assert_eq!((d.n_top(), d.n_bot()), (2, 2));
        assert_eq!(d.to_string(), "{1,2'}; {2}; {1'}");
        assert!("{1,1}".parse::<SetPartition>().is_err());
        assert!("{1}; {3}".parse::<SetPartition>().is_err());
        assert!("1,2".parse::<SetPartition>().is_err());
    }

    #[test]
    fn stack_identity() {
        let d = p("{1,2}; {1',2'}");
        assert_eq!(SetPartition::stack(&SetPartition::identity(2), &d).unwrap(), (d.clone(), 0));
        assert_eq!(SetPartition::stack(&d, &SetPartition::identity(2)).unwrap(), (d, 0));
    }

    #[test]
    fn cap_cup_squared() {
        let d = p("{1,2}; {1',2'}");
        assert_eq!(SetPartition::stack(&d, &d).unwrap(), (d, 1));
    }

    #[test]
    fn stack_general_sizes() {
        // (3,2) over (2,1).
        let a = SetPartition::parse_sized(3, 2, "{1,1'}; {2,3}; {2'}").unwrap();
        let b = SetPartition::parse_sized(2, 1, "{1,2}; {1'}").unwrap();
        let (c, r) = SetPartition::stack(&a, &b).unwrap();
        assert_eq!(c.to_string(), "{1}; {2,3}; {1'}");
        assert_eq!(r, 0);
        assert!(SetPartition::stack(&b, &b).is_err());
    }

    #[test]
    fn mixed_size_composition() {
        let top = SetPartition::parse_sized(3, 2, "{1,2,1'}; {3,2'}").unwrap();
        let bottom = SetPartition::parse_sized(2, 4, "{1,4'}; {2,1'}; {2',3'}").unwrap();
        let (c, r) = SetPartition::stack(&top, &bottom).unwrap();
        assert_eq!(c.to_string(), "{1,2,4'}; {3,1'}; {2',3'}");
        assert_eq!(r, 0);
    }

    #[test]
    fn propagating() {
        assert_eq!(SetPartition::identity(4).propagating_number(), 4);
        assert_eq!(p("{1,2}; {1',2'}").propagating_number(), 0);
        assert_eq!(p("{1,1',2'}; {2}").propagating_number(), 1);
    }

    #[test]
    fn noncrossing() {
        assert!(p("{1,1'}; {2,2'}").is_noncrossing().unwrap());
        assert!(!p("{1,2'}; {2,1'}").is_noncrossing().unwrap());
        assert!(p("{1,2}; {3,3'}; {1',2'}").is_noncrossing().unwrap());
        assert_eq!(p("{1,2,1'}; {2'}").is_noncrossing(), Err(Error::NotPairPartition(3)));
    }

    #[test]
    fn reflect_swaps_rows() {
        let d = p("{1,1',2'}; {2}");
        assert_eq!(d.reflect().to_string(), "{1,2,1'}; {2'}");
        assert_eq!(d.reflect().reflect(), d);
    }
}
