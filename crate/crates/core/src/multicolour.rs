//! Coloured partition diagrams, their product, and the bubble subalgebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{fmt_block, parse_block, SetPartition};
use crate::scalar::LaurentScalar;

/// Colour of each top node followed by each bottom node, or of each node
/// of a link state.
pub type ColourWord = Vec<u8>;

/// Partition of the `2n` nodes whose blocks each carry one of `m` colours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredDiagram {
    m: usize,
    partition: SetPartition,
    colour: Vec<u8>,
}

impl ColouredDiagram {
    /// Blocks as `(colour, nodes)` with nodes 0-based (`n + i` for `i'`).
    pub fn new(n: usize, m: usize, blocks: Vec<(u8, Vec<usize>)>) -> Result<Self> {
        let mut colour = vec![0u8; 2 * n];
        for (c, b) in &blocks {
            if *c as usize >= m {
                return Err(Error::InvalidDiagram(format!("colour {c} out of range for m = {m}")));
            }
            for &x in b {
                if x < 2 * n {
                    colour[x] = *c;
                }
            }
        }
        let partition = SetPartition::new(n, n, blocks.into_iter().map(|(_, b)| b).collect())?;
        Ok(Self { m, partition, colour })
    }

    pub fn from_parts(m: usize, partition: SetPartition, colour: Vec<u8>) -> Result<Self> {
        let n = partition.n_top();
        if partition.n_bot() != n || colour.len() != 2 * n {
            return Err(Error::InvalidDiagram("rows must have equal length".into()));
        }
        if colour.iter().any(|&c| c as usize >= m) {
            return Err(Error::InvalidDiagram(format!("colour out of range for m = {m}")));
        }
        for b in partition.blocks() {
            if b.iter().any(|&x| colour[x] != colour[b[0]]) {
                return Err(Error::InvalidDiagram("block with two colours".into()));
            }
        }
        Ok(Self { m, partition, colour })
    }

    pub fn n(&self) -> usize {
        self.partition.n_top()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn node_colours(&self) -> &[u8] {
        &self.colour
    }

    pub fn top_word(&self) -> &[u8] {
        &self.colour[..self.n()]
    }

    pub fn bottom_word(&self) -> &[u8] {
        &self.colour[self.n()..]
    }

    /// Blocks with their colours, in canonical block order.
    pub fn coloured_blocks(&self) -> impl Iterator<Item = (u8, &[usize])> {
        self.partition.blocks().iter().map(|b| (self.colour[b[0]], b.as_slice()))
    }

    /// Fragment of colour `c` as a list of blocks.
    pub fn fragment(&self, c: u8) -> Vec<&[usize]> {
        self.coloured_blocks().filter(|(k, _)| *k == c).map(|(_, b)| b).collect()
    }

    /// Node sets of each colour on the top and bottom rows (1-based nodes).
    pub fn colour_profile(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.n();
        let mut top = vec![Vec::new(); self.m];
        let mut bot = vec![Vec::new(); self.m];
        for i in 0..n {
            top[self.colour[i] as usize].push(i + 1);
            bot[self.colour[n + i] as usize].push(i + 1);
        }
        (top, bot)
    }

    /// The idempotent `1_w`: straight strands coloured by `word`.
    pub fn identity_for(m: usize, word: &[u8]) -> Result<Self> {
        let n = word.len();
        let mut colour = word.to_vec();
        colour.extend_from_slice(word);
        Self::from_parts(m, SetPartition::identity(n), colour)
    }

    pub fn is_pair_diagram(&self) -> bool {
        self.partition.is_pair_partition()
    }

    /// Every block has two nodes and no two blocks of one colour cross.
    pub fn is_bubble(&self) -> bool {
        if !self.is_pair_diagram() {
            return false;
        }
        let blocks = self.partition.blocks();
        blocks.iter().enumerate().all(|(i, a)| {
            blocks[..i].iter().all(|b| self.colour[a[0]] != self.colour[b[0]] || !self.partition.pairs_cross(a, b))
        })
    }

    /// Total and per-colour propagating numbers.
    pub fn propagating_profile(&self) -> (usize, Vec<usize>) {
        let mut per = vec![0; self.m];
        for (c, b) in self.coloured_blocks() {
            if self.partition.is_propagating(b) {
                per[c as usize] += 1;
            }
        }
        (per.iter().sum(), per)
    }

    /// Horizontal mirror image (the cellular anti-involution).
    pub fn reflect(&self) -> Self {
        let n = self.n();
        let mut colour = self.colour[n..].to_vec();
        colour.extend_from_slice(&self.colour[..n]);
        Self { m: self.m, partition: self.partition.reflect(), colour }
    }

    pub fn parity(&self) -> Result<Parity> {
        if self.m != 2 {
            return Err(Error::NotTwoColours(self.m));
        }
        let blue = self.top_word().iter().filter(|&&c| c == 1).count();
        Ok(if blue % 2 == 0 { Parity::Even } else { Parity::Odd })
    }
}

impl Ord for ColouredDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n(), self.m)
            .cmp(&(other.n(), other.m))
            .then_with(|| self.top_word().cmp(other.top_word()))
            .then_with(|| self.bottom_word().cmp(other.bottom_word()))
            .then_with(|| self.partition.cmp(&other.partition))
    }
}

impl PartialOrd for ColouredDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColouredDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={}", self.n(), self.m)?;
        for (c, b) in self.coloured_blocks() {
            write!(f, "; {c}:{}", fmt_block(self.n(), b))?;
        }
        Ok(())
    }
}

impl FromStr for ColouredDiagram {
    type Err = Error;

    /// `n=<n> m=<m>; <c>:{nodes}; ...`
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';').map(str::trim).filter(|p| !p.is_empty());
        let header = parts.next().ok_or_else(|| Error::Parse("empty diagram".into()))?;
        let mut n = None;
        let mut m = None;
        for tok in header.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("bad header token {tok:?}")))?;
            let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad value in {tok:?}")))?;
            match k {
                "n" => n = Some(v),
                "m" => m = Some(v),
                _ => return Err(Error::Parse(format!("unknown header key {k:?}"))),
            }
        }
        let (n, m) = match (n, m) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(Error::Parse("header must give n=<n> m=<m>".into())),
        };
        let mut blocks = Vec::new();
        for p in parts {
            let (c, b) = p.split_once(':').ok_or_else(|| Error::Parse(format!("block {p:?} lacks a colour prefix")))?;
            let c: u8 = c.trim().parse().map_err(|_| Error::Parse(format!("bad colour in {p:?}")))?;
            blocks.push((c, parse_block(n, n, b)?));
        }
        Self::new(n, m, blocks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Product of two basis diagrams: a loop monomial times a diagram, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaledDiagram {
    Zero,
    Term(LaurentScalar, ColouredDiagram),
}

impl ScaledDiagram {
    pub fn is_zero(&self) -> bool {
        matches!(self, ScaledDiagram::Zero)
    }

    /// Right-multiplies by a basis diagram.
    pub fn then(&self, beta: &ColouredDiagram) -> Result<Self> {
        match self {
            ScaledDiagram::Zero => Ok(ScaledDiagram::Zero),
            ScaledDiagram::Term(c, d) => Ok(match multiply(d, beta)? {
                ScaledDiagram::Zero => ScaledDiagram::Zero,
                ScaledDiagram::Term(c2, d2) => ScaledDiagram::Term(c * &c2, d2),
            }),
        }
    }

    /// Left-multiplies by a basis diagram.
    pub fn after(&self, alpha: &ColouredDiagram) -> Result<Self> {
        match self {
            ScaledDiagram::Zero => Ok(ScaledDiagram::Zero),
            ScaledDiagram::Term(c, d) => Ok(match multiply(alpha, d)? {
                ScaledDiagram::Zero => ScaledDiagram::Zero,
                ScaledDiagram::Term(c2, d2) => ScaledDiagram::Term(c * &c2, d2),
            }),
        }
    }
}

impl fmt::Display for ScaledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaledDiagram::Zero => write!(f, "0"),
            ScaledDiagram::Term(c, d) => write!(f, "({c}) * [{d}]"),
        }
    }
}

/// `alpha` on top of `beta`. Zero unless the bottom colours of `alpha`
/// match the top colours of `beta`; each closed middle component of
/// colour `i` contributes a factor `d{i}`.
pub fn multiply(alpha: &ColouredDiagram, beta: &ColouredDiagram) -> Result<ScaledDiagram> {
    if alpha.n() != beta.n() || alpha.m != beta.m {
        return Err(Error::DimensionMismatch(format!(
            "diagrams in P({},{}) and P({},{})",
            alpha.n(),
            alpha.m,
            beta.n(),
            beta.m
        )));
    }
    if alpha.bottom_word() != beta.top_word() {
        return Ok(ScaledDiagram::Zero);
    }
    let s = SetPartition::stack_detailed(&alpha.partition, &beta.partition)?;
    let mut loops = vec![0u32; alpha.m];
    for &x in &s.removed {
        loops[alpha.bottom_word()[x] as usize] += 1;
    }
    let mut colour = alpha.top_word().to_vec();
    colour.extend_from_slice(beta.bottom_word());
    Ok(ScaledDiagram::Term(
        LaurentScalar::loop_monomial(&loops),
        ColouredDiagram { m: alpha.m, partition: s.diagram, colour },
    ))
}

/// All `m^n` colour words of length `n`, in lexicographic order.
pub fn colour_words(n: usize, m: usize) -> Vec<ColourWord> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m as u8).map(move |c| {
                    let mut w2 = w.clone();
                    w2.push(c);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Colour words with exactly `counts[j]` letters `j`, in lexicographic order.
pub fn words_with_counts(counts: &[usize]) -> Vec<ColourWord> {
    fn rec(left: &mut [usize], acc: &mut ColourWord, out: &mut Vec<ColourWord>) {
        if left.iter().all(|&c| c == 0) {
            out.push(acc.clone());
            return;
        }
        for c in 0..left.len() {
            if left[c] > 0 {
                left[c] -= 1;
                acc.push(c as u8);
                rec(left, acc, out);
                acc.pop();
                left[c] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// The `m^n` idempotents whose sum is the identity.
pub fn identity(n: usize, m: usize) -> Vec<ColouredDiagram> {
    colour_words(n, m).iter().map(|w| ColouredDiagram::identity_for(m, w).expect("valid colour word")).collect()
}

/// Depth-first search over perfect matchings of the boundary cycle, pairing
/// the first free position each time, with per-colour planarity pruning.
struct BubbleSearch {
    n: usize,
    m: usize,
    /// Node at each boundary-cycle position.
    node_at: Vec<usize>,
}

impl BubbleSearch {
    fn new(n: usize, m: usize) -> Self {
        let node_at = (0..n).chain((0..n).rev().map(|i| n + i)).collect();
        Self { n, m, node_at }
    }

    /// Calls `f` on every bubble diagram as a list of `(colour, pos, pos)`.
    fn run(&self, prefix: Option<(usize, usize, u8)>, f: &mut dyn FnMut(&[(u8, usize, usize)])) {
        let mut used = vec![false; 2 * self.n];
        let mut arcs: Vec<(u8, usize, usize)> = Vec::with_capacity(self.n);
        if let Some((a, b, c)) = prefix {
            used[a] = true;
            used[b] = true;
            arcs.push((c, a, b));
        }
        self.rec(&mut used, &mut arcs, f);
    }

    fn rec(&self, used: &mut [bool], arcs: &mut Vec<(u8, usize, usize)>, f: &mut dyn FnMut(&[(u8, usize, usize)])) {
        let Some(a) = used.iter().position(|u| !u) else {
            f(arcs);
            return;
        };
        used[a] = true;
        for b in a + 1..2 * self.n {
            if used[b] {
                continue;
            }
            for c in 0..self.m as u8 {
                if self.admissible(arcs, c, a, b) {
                    used[b] = true;
                    arcs.push((c, a, b));
                    self.rec(used, arcs, f);
                    arcs.pop();
                    used[b] = false;
                }
            }
        }
        used[a] = false;
    }

    /// `(a,b)` in colour `c` interleaves with no arc of colour `c`.
    fn admissible(&self, arcs: &[(u8, usize, usize)], c: u8, a: usize, b: usize) -> bool {
        arcs.iter().all(|&(k, x, y)| k != c || !((x < a && a < y && y < b) || (a < x && x < b && b < y)))
    }

    fn build(&self, arcs: &[(u8, usize, usize)]) -> ColouredDiagram {
        let mut colour = vec![0u8; 2 * self.n];
        let mut blocks = Vec::with_capacity(arcs.len());
        for &(c, a, b) in arcs {
            let (x, y) = (self.node_at[a], self.node_at[b]);
            colour[x] = c;
            colour[y] = c;
            blocks.push(vec![x, y]);
        }
        let partition = SetPartition::new(self.n, self.n, blocks).expect("perfect matching");
        ColouredDiagram { m: self.m, partition, colour }
    }

    /// First arcs from position 0, used to split work across threads.
    fn seeds(&self) -> Vec<(usize, usize, u8)> {
        (1..2 * self.n).flat_map(|b| (0..self.m as u8).map(move |c| (0, b, c))).collect()
    }
}

/// Every bubble diagram of `T(n,m)` in basis order.
pub fn enumerate_bubble_basis(n: usize, m: usize) -> Vec<ColouredDiagram> {
    enumerate_bubble_filtered(n, m, |_| true)
}

fn enumerate_bubble_filtered(
    n: usize,
    m: usize,
    keep: impl Fn(&ColouredDiagram) -> bool + Sync,
) -> Vec<ColouredDiagram> {
    let search = BubbleSearch::new(n, m);
    if n == 0 {
        let empty = search.build(&[]);
        return if keep(&empty) { vec![empty] } else { Vec::new() };
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out: Vec<ColouredDiagram> = search
        .seeds()
        .into_par_iter()
        .flat_map_iter(|seed| {
            let mut local = Vec::new();
            search.run(Some(seed), &mut |arcs| {
                let d = search.build(arcs);
                if keep(&d) {
                    local.push(d);
                }
            });
            local
        })
        .collect();
    out.par_sort_unstable();
    out
}

/// Number of bubble diagrams, counted without materialising them.
pub fn count_bubble_basis(n: usize, m: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let search = BubbleSearch::new(n, m);
    search
        .seeds()
        .into_par_iter()
        .map(|seed| {
            let mut k = 0usize;
            search.run(Some(seed), &mut |_| k += 1);
            k
        })
        .sum()
}

/// Bubble diagrams with per-colour propagating numbers exactly `lambda`.
pub fn enumerate_bubble_basis_lambda(n: usize, lambda: &[usize]) -> Result<Vec<ColouredDiagram>> {
    let total: usize = lambda.iter().sum();
    if total > n || (n - total) % 2 == 1 {
        return Err(Error::InvalidWeight(format!(
            "{lambda:?} is not a weight for n = {n}: need sum <= n with n - sum even"
        )));
    }
    Ok(enumerate_bubble_filtered(n, lambda.len(), |d| d.propagating_profile().1 == lambda))
}

/// Sub-bases of even and odd diagrams (two colours only).
pub fn parity_split(basis: &[ColouredDiagram]) -> Result<(Vec<ColouredDiagram>, Vec<ColouredDiagram>)> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for d in basis {
        match d.parity()? {
            Parity::Even => even.push(d.clone()),
            Parity::Odd => odd.push(d.clone()),
        }
    }
    Ok((even, odd))
}

/// Formal linear combination of coloured diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    nvars: usize,
    terms: BTreeMap<ColouredDiagram, LaurentScalar>,
}

impl Element {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn basis(d: ColouredDiagram) -> Self {
        let nvars = d.m();
        let mut terms = BTreeMap::new();
        terms.insert(d, LaurentScalar::one(nvars));
        Self { nvars, terms }
    }

    pub fn sum_of(nvars: usize, ds: impl IntoIterator<Item = ColouredDiagram>) -> Self {
        let mut e = Self::zero(nvars);
        for d in ds {
            e.add_term(d, LaurentScalar::one(nvars));
        }
        e
    }

    pub fn add_term(&mut self, d: ColouredDiagram, c: LaurentScalar) {
        let sum = match self.terms.remove(&d) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ColouredDiagram, LaurentScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let ScaledDiagram::Term(c, d) = multiply(a, b)? {
                    out.add_term(d, &(ca * cb) * &c);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("({c}) * [{d}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Colour word with the colours sorted into contiguous runs.
pub fn sorted_word(word: &[u8]) -> ColourWord {
    let mut w = word.to_vec();
    w.sort_unstable();
    w
}

/// The bubble diagram carrying top colour word `word` to its sorted word,
/// keeping the relative order of strands of each colour.
pub fn sorting_diagram(m: usize, word: &[u8]) -> Result<ColouredDiagram> {
    let n = word.len();
    if let Some(&c) = word.iter().find(|&&c| c as usize >= m) {
        return Err(Error::InvalidDiagram(format!("colour {c} out of range for m = {m}")));
    }
    let mut before = vec![0usize; m + 1];
    for &c in word {
        before[c as usize + 1] += 1;
    }
    for j in 0..m {
        before[j + 1] += before[j];
    }
    let mut seen = vec![0usize; m];
    let mut blocks = Vec::with_capacity(n);
    for (i, &c) in word.iter().enumerate() {
        let target = before[c as usize] + seen[c as usize];
        seen[c as usize] += 1;
        blocks.push((c, vec![i, n + target]));
    }
    ColouredDiagram::new(n, m, blocks)
}

/// An involutive element `D` of the bubble algebra with `D 1_A D = 1_s`,
/// where `s` is the sorted form of `word`. Returns `(D, D^-1)`.
pub fn conjugator(m: usize, word: &[u8]) -> Result<(Element, Element)> {
    let n = word.len();
    let theta = sorting_diagram(m, word)?;
    let sorted = sorted_word(word);
    let mut d = Element::zero(m);
    if sorted == word {
        for w in colour_words(n, m) {
            d.add_term(ColouredDiagram::identity_for(m, &w)?, LaurentScalar::one(m));
        }
    } else {
        d.add_term(theta.reflect(), LaurentScalar::one(m));
        d.add_term(theta, LaurentScalar::one(m));
        for w in colour_words(n, m) {
            if w != word && w != sorted {
                d.add_term(ColouredDiagram::identity_for(m, &w)?, LaurentScalar::one(m));
            }
        }
    }
    Ok((d.clone(), d))
}

/// Uniformly random set partition of the `2n` nodes with random colours.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> ColouredDiagram {
    let labels: Vec<usize> = (0..2 * n).map(|_| rng.random_range(0..2 * n)).collect();
    let partition = SetPartition::from_labels(n, n, &labels).expect("label count matches");
    let mut colour = vec![0u8; 2 * n];
    for b in partition.blocks() {
        let c = rng.random_range(0..m) as u8;
        for &x in b {
            colour[x] = c;
        }
    }
    ColouredDiagram { m, partition, colour }
}

/// Uniformly random bubble diagram.
pub fn random_bubble<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> ColouredDiagram {
    // Rejection sampling keeps the distribution uniform over the basis.
    loop {
        let mut nodes: Vec<usize> = (0..2 * n).collect();
        for i in (1..nodes.len()).rev() {
            let j = rng.random_range(0..=i);
            nodes.swap(i, j);
        }
        let mut colour = vec![0u8; 2 * n];
        let mut blocks = Vec::with_capacity(n);
        for pair in nodes.chunks(2) {
            let c = rng.random_range(0..m) as u8;
            colour[pair[0]] = c;
            colour[pair[1]] = c;
            blocks.push(pair.to_vec());
        }
        let partition = SetPartition::new(n, n, blocks).expect("perfect matching");
        let d = ColouredDiagram { m, partition, colour };
        if d.is_bubble() {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> ColouredDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_print_round_trip() {
        let d = cd("n=2 m=2; 1:{2,2'}; 0:{1',1}");
        assert_eq!(d.to_string(), "n=2 m=2; 0:{1,1'}; 1:{2,2'}");
        assert!("n=2 m=2; 2:{1,1'}; 0:{2,2'}".parse::<ColouredDiagram>().is_err());
        assert!("n=2; 0:{1,1'}".parse::<ColouredDiagram>().is_err());
    }

    #[test]
    fn mismatched_colours_vanish() {
        let a = cd("n=1 m=2; 0:{1,1'}");
        let b = cd("n=1 m=2; 1:{1,1'}");
        assert_eq!(multiply(&a, &b).unwrap(), ScaledDiagram::Zero);
    }

    #[test]
    fn red_loop() {
        let d = cd("n=2 m=2; 0:{1,2}; 0:{1',2'}");
        assert_eq!(multiply(&d, &d).unwrap(), ScaledDiagram::Term(LaurentScalar::var(2, 0), d));
    }

    #[test]
    fn identity_summand_acts_trivially() {
        let d = cd("n=2 m=2; 1:{1,2}; 0:{1',2'}");
        let e = ColouredDiagram::identity_for(2, d.top_word()).unwrap();
        assert_eq!(multiply(&e, &d).unwrap(), ScaledDiagram::Term(LaurentScalar::one(2), d));
    }

    #[test]
    fn identity_counts() {
        assert_eq!(identity(2, 2).len(), 4);
        assert_eq!(identity(1, 3).len(), 3);
        assert_eq!(identity(1, 1), vec![cd("n=1 m=1; 0:{1,1'}")]);
    }

    #[test]
    fn bubble_predicate() {
        assert!(!cd("n=2 m=2; 0:{1,2'}; 0:{2,1'}").is_bubble());
        assert!(cd("n=2 m=2; 0:{1,2'}; 1:{2,1'}").is_bubble());
        assert!(!cd("n=2 m=1; 0:{1,2,1'}; 0:{2'}").is_bubble());
    }

    #[test]
    fn bubble_counts() {
        assert_eq!(enumerate_bubble_basis(2, 2).len(), 10);
        assert_eq!(enumerate_bubble_basis(2, 1).len(), 2);
        assert_eq!(count_bubble_basis(2, 2), 10);
        let l = enumerate_bubble_basis_lambda(2, &[2, 0]).unwrap();
        assert_eq!(l, vec![cd("n=2 m=2; 0:{1,1'}; 0:{2,2'}")]);
        assert!(enumerate_bubble_basis_lambda(2, &[1, 0]).is_err());
    }

    #[test]
    fn basis_is_sorted_and_closed() {
        let b = enumerate_bubble_basis(3, 2);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        for x in &b {
            for y in &b {
                if let ScaledDiagram::Term(_, d) = multiply(x, y).unwrap() {
                    assert!(d.is_bubble());
                }
            }
        }
    }

    #[test]
    fn profiles() {
        let (t, per) = ColouredDiagram::identity_for(2, &[0, 1, 1]).unwrap().propagating_profile();
        assert_eq!((t, per), (3, vec![1, 2]));
        assert_eq!(cd("n=2 m=2; 0:{1,2}; 0:{1',2'}").propagating_profile(), (0, vec![0, 0]));
        let d = cd("n=3 m=2; 0:{1,1'}; 1:{2,3}; 1:{2',3'}");
        assert_eq!(d.propagating_profile(), (1, vec![1, 0]));
    }

    #[test]
    fn parities() {
        assert_eq!(cd("n=2 m=2; 0:{1,2}; 0:{1',2'}").parity().unwrap(), Parity::Even);
        assert_eq!(cd("n=2 m=2; 1:{1,1'}; 0:{2,2'}").parity().unwrap(), Parity::Odd);
        assert_eq!(cd("n=4 m=2; 1:{1,2}; 1:{3,4}; 0:{1',2'}; 0:{3',4'}").parity().unwrap(), Parity::Even);
        assert_eq!(cd("n=1 m=1; 0:{1,1'}").parity(), Err(Error::NotTwoColours(1)));
    }

    #[test]
    fn sorting_diagram_transposition() {
        let t = sorting_diagram(2, &[1, 0]).unwrap();
        assert_eq!(t.to_string(), "n=2 m=2; 1:{1,2'}; 0:{2,1'}");
        assert!(t.is_bubble());
        let s = sorting_diagram(2, &[0, 0, 1]).unwrap();
        assert_eq!(s, ColouredDiagram::identity_for(2, &[0, 0, 1]).unwrap());
    }

    #[test]
    fn conjugation_small() {
        for n in 1..=4 {
            let one = Element::sum_of(2, identity(n, 2));
            for w in colour_words(n, 2) {
                let (d, d_inv) = conjugator(2, &w).unwrap();
                assert_eq!(d.mul(&d_inv).unwrap(), one);
                let e = Element::basis(ColouredDiagram::identity_for(2, &w).unwrap());
                let target = Element::basis(ColouredDiagram::identity_for(2, &sorted_word(&w)).unwrap());
                assert_eq!(d.mul(&e).unwrap().mul(&d_inv).unwrap(), target);
            }
        }
    }
}
