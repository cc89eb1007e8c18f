//! Cell modules of the bubble algebra: weights, multi-coloured link-state
//! bases, the module action, Gram matrices and dimension formulas.

use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{determinant, ExactMatrix};
use crate::multicolour::{words_with_counts, ColourWord, ColouredDiagram};
use crate::scalar::{LaurentScalar, RootOrder};
use crate::tl::{dim_cell, dim_head_tl, dim_radical_tl, enumerate_link_states, gram_tl_in, LinkState};

/// Per-colour root-of-unity order, `None` for generic colours.
pub type Orders = [Option<RootOrder>];

/// Cell index: `lambda[j]` defects of colour `j`, with `n - sum` even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightLambda {
    n: usize,
    lambda: Vec<usize>,
}

impl WeightLambda {
    pub fn new(n: usize, lambda: Vec<usize>) -> Result<Self> {
        let s: usize = lambda.iter().sum();
        if lambda.is_empty() || s > n || (n - s) % 2 == 1 {
            return Err(Error::InvalidWeight(format!(
                "{} is not a weight for n = {n}: need sum <= n with n - sum even",
                fmt_tuple(&lambda)
            )));
        }
        Ok(Self { n, lambda })
    }

    /// Parses `0,2` or `(0,2)`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let lambda = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad weight entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, lambda)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn total(&self) -> usize {
        self.lambda.iter().sum()
    }

    /// Number of arcs in each basis state.
    pub fn v(&self) -> usize {
        (self.n - self.total()) / 2
    }

    /// Is every entry zero?
    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(|&x| x == 0)
    }

    /// Entry `j` replaced by `lambda[j] + 2 * t[j]`; `None` if it leaves the
    /// weight set.
    pub fn shifted(&self, t: &[usize]) -> Option<Self> {
        let lambda: Vec<usize> = self.lambda.iter().zip(t).map(|(l, t)| l + 2 * t).collect();
        Self::new(self.n, lambda).ok()
    }
}

pub(crate) fn fmt_tuple(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for WeightLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(&self.lambda))
    }
}

/// Compositions of `total` into `m` parts, in descending lexicographic order.
pub fn gamma(total: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            acc.push(left);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for x in (0..=left).rev() {
            acc.push(x);
            rec(left - x, slots - 1, acc, out);
            acc.pop();
        }
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(total, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// All weights, by number of arcs ascending and then descending
/// lexicographic order.
pub fn enumerate_lambda(n: usize, m: usize) -> Vec<WeightLambda> {
    (0..=n / 2).flat_map(|v| gamma(n - 2 * v, m)).map(|lambda| WeightLambda { n, lambda }).collect()
}

/// `(sum counts)! / prod(counts[j]!)`.
pub fn multinomial(counts: &[usize]) -> usize {
    let mut acc = 1usize;
    let mut seen = 0usize;
    for &c in counts {
        for i in 1..=c {
            seen += 1;
            acc = acc * seen / i;
        }
    }
    acc
}

/// Basis element of a cell module: a colour per node and, per colour, a
/// link state on the nodes of that colour. Arcs use global 0-based nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiLinkState {
    colours: ColourWord,
    arcs: Vec<Vec<(usize, usize)>>,
}

impl MultiLinkState {
    pub fn new(m: usize, colours: ColourWord, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&c) = colours.iter().find(|&&c| c as usize >= m) {
            return Err(Error::InvalidLinkState(format!("colour {c} out of range for m = {m}")));
        }
        let n = colours.len();
        let mut per = vec![Vec::new(); m];
        for (a, b) in arcs {
            let (a, b) = (a.min(b), a.max(b));
            if b >= n {
                return Err(Error::InvalidLinkState(format!("arc ({},{}) out of range", a + 1, b + 1)));
            }
            if colours[a] != colours[b] {
                return Err(Error::InvalidLinkState(format!("arc ({},{}) joins two colours", a + 1, b + 1)));
            }
            per[colours[a] as usize].push((a, b));
        }
        for p in &mut per {
            p.sort_unstable();
        }
        let s = Self { colours, arcs: per };
        for j in 0..m {
            s.local(j)?;
        }
        Ok(s)
    }

    /// Parses `colours=rrbrb; 0:arcs=(1,2); 1:arcs=(3,5)`. Colours may be
    /// digits or the letters `r`, `b` for colours 0 and 1.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let mut parts = s.split(';').map(str::trim).filter(|p| !p.is_empty());
        let head = parts
            .next()
            .and_then(|h| h.strip_prefix("colours="))
            .ok_or_else(|| Error::Parse(format!("expected colours=<word> in {s:?}")))?;
        let colours = head
            .trim()
            .chars()
            .map(|ch| match ch {
                'r' => Ok(0),
                'b' => Ok(1),
                d if d.is_ascii_digit() => Ok(d as u8 - b'0'),
                _ => Err(Error::Parse(format!("bad colour letter {ch:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        let mut arcs = Vec::new();
        for p in parts {
            let (c, rest) = p.split_once(':').ok_or_else(|| Error::Parse(format!("expected <c>:arcs=... in {p:?}")))?;
            let c: usize = c.trim().parse().map_err(|_| Error::Parse(format!("bad colour in {p:?}")))?;
            let list =
                rest.trim().strip_prefix("arcs=").ok_or_else(|| Error::Parse(format!("expected arcs= in {p:?}")))?;
            for (a, b) in crate::tl::parse_arcs(list)? {
                if a >= colours.len() || b >= colours.len() || colours[a] as usize != c || colours[b] as usize != c {
                    return Err(Error::InvalidLinkState(format!(
                        "arc ({},{}) is not on colour-{c} nodes",
                        a + 1,
                        b + 1
                    )));
                }
                arcs.push((a, b));
            }
        }
        Self::new(m, colours, arcs)
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn arcs(&self, colour: usize) -> &[(usize, usize)] {
        &self.arcs[colour]
    }

    /// Nodes of colour `j` in order.
    pub fn nodes_of(&self, j: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.colours[x] as usize == j).collect()
    }

    /// Colour counts of the node word.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.m()];
        for &x in &self.colours {
            c[x as usize] += 1;
        }
        c
    }

    /// Defects per colour.
    pub fn weight(&self) -> Vec<usize> {
        self.counts().iter().zip(&self.arcs).map(|(c, a)| c - 2 * a.len()).collect()
    }

    /// Link state of colour `j` on its own nodes, renumbered from 0.
    pub fn local(&self, j: usize) -> Result<LinkState> {
        let nodes = self.nodes_of(j);
        let mut index = vec![usize::MAX; self.n()];
        for (k, &x) in nodes.iter().enumerate() {
            index[x] = k;
        }
        LinkState::new(nodes.len(), self.arcs[j].iter().map(|&(a, b)| (index[a], index[b])).collect())
    }

    fn is_defect_mask(&self) -> Vec<bool> {
        let mut d = vec![true; self.n()];
        for arcs in &self.arcs {
            for &(a, b) in arcs {
                d[a] = false;
                d[b] = false;
            }
        }
        d
    }
}

impl fmt::Display for MultiLinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: String = self
            .colours
            .iter()
            .map(|&c| match (self.m() <= 2, c) {
                (true, 0) => 'r',
                (true, _) => 'b',
                (false, c) => (b'0' + c) as char,
            })
            .collect();
        write!(f, "colours={word}")?;
        for (j, arcs) in self.arcs.iter().enumerate() {
            if arcs.is_empty() {
                continue;
            }
            write!(f, "; {j}:arcs=")?;
            for &(a, b) in arcs {
                write!(f, "({},{})", a + 1, b + 1)?;
            }
        }
        Ok(())
    }
}

/// Splits the basis of `Δ(λ)` by colour word; each entry carries the arc
/// counts `u` and the states for that word in basis order.
fn word_blocks(lw: &WeightLambda) -> Result<Vec<(ColourWord, Vec<usize>, Vec<MultiLinkState>)>> {
    let m = lw.m();
    let mut out = Vec::new();
    for u in gamma(lw.v(), m) {
        let mu: Vec<usize> = lw.lambda.iter().zip(&u).map(|(l, u)| l + 2 * u).collect();
        let factors: Vec<Vec<LinkState>> = (0..m).map(|j| enumerate_link_states(mu[j], u[j])).collect::<Result<_>>()?;
        for word in words_with_counts(&mu) {
            let mut nodes: Vec<Vec<usize>> = vec![Vec::new(); m];
            for (x, &c) in word.iter().enumerate() {
                nodes[c as usize].push(x);
            }
            let mut states = Vec::new();
            let mut idx = vec![0usize; m];
            loop {
                let arcs: Vec<Vec<(usize, usize)>> = (0..m)
                    .map(|j| factors[j][idx[j]].arcs().iter().map(|&(a, b)| (nodes[j][a], nodes[j][b])).collect())
                    .collect();
                states.push(MultiLinkState { colours: word.clone(), arcs });
                // Odometer with colour 0 most significant.
                let mut j = m;
                let done = loop {
                    if j == 0 {
                        break true;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < factors[j].len() {
                        break false;
                    }
                    idx[j] = 0;
                };
                if done {
                    break;
                }
            }
            out.push((word, u.clone(), states));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Basis of `Δ(λ)`, ordered by colour word and then by the per-colour
/// link states with colour 0 most significant.
pub fn enumerate_delta_basis(lw: &WeightLambda) -> Result<Vec<MultiLinkState>> {
    Ok(word_blocks(lw)?.into_iter().flat_map(|(_, _, s)| s).collect())
}

pub fn dim_delta(lw: &WeightLambda) -> usize {
    sum_over_u(lw, |mu, u| (0..mu.len()).map(|j| dim_cell(mu[j], u[j])).product())
}

fn sum_over_u(lw: &WeightLambda, f: impl Fn(&[usize], &[usize]) -> usize) -> usize {
    gamma(lw.v(), lw.m())
        .iter()
        .map(|u| {
            let mu: Vec<usize> = lw.lambda.iter().zip(u).map(|(l, u)| l + 2 * u).collect();
            multinomial(&mu) * f(&mu, u)
        })
        .sum()
}

fn check_orders(lw: &WeightLambda, orders: &Orders) -> Result<()> {
    if orders.len() != lw.m() {
        return Err(Error::ColourCountMismatch { left: orders.len(), right: lw.m() });
    }
    Ok(())
}

/// Dimension of the simple head.
pub fn dim_head(lw: &WeightLambda, orders: &Orders) -> Result<usize> {
    check_orders(lw, orders)?;
    Ok(sum_over_u(lw, |mu, u| (0..mu.len()).map(|j| dim_head_tl(mu[j], u[j], orders[j])).product()))
}

pub fn dim_radical(lw: &WeightLambda, orders: &Orders) -> Result<usize> {
    Ok(dim_delta(lw) - dim_head(lw, orders)?)
}

/// Two-colour radical dimension by inclusion-exclusion over the factors.
pub fn dim_radical_two_colour(lw: &WeightLambda, orders: &Orders) -> Result<usize> {
    if lw.m() != 2 {
        return Err(Error::NotTwoColours(lw.m()));
    }
    check_orders(lw, orders)?;
    Ok(sum_over_u(lw, |mu, u| {
        let (v0, v1) = (dim_cell(mu[0], u[0]), dim_cell(mu[1], u[1]));
        let (r0, r1) = (dim_radical_tl(mu[0], u[0], orders[0]), dim_radical_tl(mu[1], u[1], orders[1]));
        r0 * v1 + v0 * r1 - r0 * r1
    }))
}

/// `d` placed above `a`. `None` when the colours disagree or two defects
/// are joined; otherwise the loop monomial and the new state.
pub fn act(d: &ColouredDiagram, a: &MultiLinkState) -> Result<Option<(LaurentScalar, MultiLinkState)>> {
    let n = a.n();
    if d.n() != n || d.m() != a.m() {
        return Err(Error::DimensionMismatch(format!(
            "diagram in P({},{}) acting on a state with n = {n}, m = {}",
            d.n(),
            d.m(),
            a.m()
        )));
    }
    if !d.is_pair_diagram() {
        return Err(Error::InvalidDiagram("module action needs blocks of size 2".into()));
    }
    if d.bottom_word() != a.colours() {
        return Ok(None);
    }
    let mut uf = UnionFind::<usize>::new(2 * n);
    for b in d.partition().blocks() {
        uf.union(b[0], b[1]);
    }
    for arcs in &a.arcs {
        for &(x, y) in arcs {
            uf.union(n + x, n + y);
        }
    }
    let defect = a.is_defect_mask();
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut defects = vec![0u8; 2 * n];
    for x in 0..n {
        tops[uf.find(x)].push(x);
        if defect[x] {
            defects[uf.find(n + x)] += 1;
        }
    }
    let mut loops = vec![0u32; a.m()];
    let mut arcs = Vec::new();
    for r in 0..2 * n {
        if uf.find(r) != r {
            continue;
        }
        match (tops[r].len(), defects[r]) {
            (0, 0) => loops[d.node_colours()[r] as usize] += 1,
            (0, 2) => return Ok(None),
            (2, 0) => arcs.push((tops[r][0], tops[r][1])),
            _ => {}
        }
    }
    let state = MultiLinkState::new(a.m(), d.top_word().to_vec(), arcs)?;
    Ok(Some((LaurentScalar::loop_monomial(&loops), state)))
}

/// Bilinear form: zero unless the colour words agree, then the loop
/// monomial of the glued pair, or zero if defects are joined.
pub fn inner_product(a: &MultiLinkState, b: &MultiLinkState) -> Result<LaurentScalar> {
    let m = a.m();
    if a.n() != b.n() || m != b.m() || a.weight() != b.weight() {
        return Err(Error::DimensionMismatch(format!(
            "states from different cell modules: weights {} and {}",
            fmt_tuple(&a.weight()),
            fmt_tuple(&b.weight())
        )));
    }
    if a.colours != b.colours {
        return Ok(LaurentScalar::zero(m));
    }
    let n = a.n();
    let mut uf = UnionFind::<usize>::new(n);
    for s in [a, b] {
        for arcs in &s.arcs {
            for &(x, y) in arcs {
                uf.union(x, y);
            }
        }
    }
    let mut count = vec![[0u8; 2]; n];
    for (k, s) in [a, b].into_iter().enumerate() {
        for (x, d) in s.is_defect_mask().into_iter().enumerate() {
            if d {
                count[uf.find(x)][k] += 1;
            }
        }
    }
    let mut loops = vec![0u32; m];
    for x in 0..n {
        if uf.find(x) != x {
            continue;
        }
        match count[x] {
            [0, 0] => loops[a.colours[x] as usize] += 1,
            [1, 1] => {}
            _ => return Ok(LaurentScalar::zero(m)),
        }
    }
    Ok(LaurentScalar::loop_monomial(&loops))
}

/// Gram matrix of `Δ(λ)` in the basis order, computed entry by entry.
pub fn gram_direct(lw: &WeightLambda) -> Result<ExactMatrix<LaurentScalar>> {
    let basis = enumerate_delta_basis(lw)?;
    let k = basis.len();
    let rows: Vec<Vec<LaurentScalar>> = (0..k)
        .into_par_iter()
        .map(|i| (0..k).map(|j| inner_product(&basis[i], &basis[j])).collect())
        .collect::<Result<_>>()?;
    ExactMatrix::from_rows(LaurentScalar::zero(lw.m()), rows)
}

/// One summand of the block decomposition: `multiplicity` copies of the
/// tensor product of the TL Gram matrices `factors`.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub u: Vec<usize>,
    pub mu: Vec<usize>,
    pub multiplicity: usize,
    pub factors: Vec<ExactMatrix<LaurentScalar>>,
}

impl GramBlock {
    pub fn tensor(&self) -> ExactMatrix<LaurentScalar> {
        let m = self.factors.len();
        let mut acc = ExactMatrix::identity(1, LaurentScalar::zero(m));
        for f in &self.factors {
            acc = acc.kronecker(f);
        }
        acc
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(ExactMatrix::rows).collect()
    }
}

#[derive(Clone, Debug)]
pub struct GramBlockReport {
    pub weight: WeightLambda,
    pub blocks: Vec<GramBlock>,
    /// Block index for each colour word, in basis order.
    pub word_order: Vec<(ColourWord, usize)>,
}

impl GramBlockReport {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity * b.factor_dims().iter().product::<usize>()).sum()
    }

    /// Block-diagonal matrix in the same basis order as `gram_direct`.
    pub fn assemble(&self) -> ExactMatrix<LaurentScalar> {
        let tensors: Vec<ExactMatrix<LaurentScalar>> = self.blocks.iter().map(GramBlock::tensor).collect();
        let pieces: Vec<ExactMatrix<LaurentScalar>> =
            self.word_order.iter().map(|(_, k)| tensors[*k].clone()).collect();
        ExactMatrix::direct_sum(LaurentScalar::zero(self.weight.m()), &pieces)
    }
}

pub fn gram_factorized(lw: &WeightLambda) -> Result<GramBlockReport> {
    let m = lw.m();
    let mut blocks = Vec::new();
    for u in gamma(lw.v(), m) {
        let mu: Vec<usize> = lw.lambda.iter().zip(&u).map(|(l, u)| l + 2 * u).collect();
        let factors = (0..m).map(|j| gram_tl_in(mu[j], u[j], m, j)).collect::<Result<Vec<_>>>()?;
        blocks.push(GramBlock { multiplicity: multinomial(&mu), u, mu, factors });
    }
    let mut word_order = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        for w in words_with_counts(&b.mu) {
            word_order.push((w, k));
        }
    }
    word_order.sort();
    Ok(GramBlockReport { weight: lw.clone(), blocks, word_order })
}

/// Determinant from the product formula over the TL factors.
pub fn gram_det(lw: &WeightLambda) -> Result<LaurentScalar> {
    let report = gram_factorized(lw)?;
    let m = lw.m();
    let mut acc = LaurentScalar::one(m);
    for b in &report.blocks {
        let dims = b.factor_dims();
        for (j, f) in b.factors.iter().enumerate() {
            let others: usize = dims.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, d)| d).product();
            let e = (b.multiplicity * others) as i64;
            acc = &acc * &determinant(f)?.pow(e)?;
        }
    }
    Ok(acc)
}

/// `t_j` with `λ_j + t_j + 1 ≡ 0 (mod l_j)` and `0 <= t_j < l_j`; zero for
/// generic or critical colours.
pub fn t_values(lw: &WeightLambda, orders: &Orders) -> Result<Vec<usize>> {
    check_orders(lw, orders)?;
    Ok(lw
        .lambda
        .iter()
        .zip(orders)
        .map(|(&l, o)| match o {
            None => 0,
            Some(o) => {
                let o = o.get() as usize;
                (o - (l + 1) % o) % o
            }
        })
        .collect())
}

/// Weights in each Loewy layer; layer 0 is the head.
pub fn radical_series(lw: &WeightLambda, orders: &Orders) -> Result<Vec<Vec<WeightLambda>>> {
    let t = t_values(lw, orders)?;
    let active: Vec<usize> = (0..lw.m()).filter(|&j| t[j] > 0).collect();
    let mut layers = Vec::new();
    for k in 0..=active.len() {
        let mut layer = Vec::new();
        for subset in combinations(&active, k) {
            let mut shift = vec![0; lw.m()];
            for &j in &subset {
                shift[j] = t[j];
            }
            if let Some(w) = lw.shifted(&shift) {
                layer.push(w);
            }
        }
        if layer.is_empty() {
            break;
        }
        layers.push(layer);
    }
    Ok(layers)
}

/// `k`-subsets of `items` in lexicographic order of positions.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..items.len() {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// TL cell indices `(μ_j, t_j)` of the piece of `Δ(λ)` with colour counts
/// `mu`, or `None` when that piece is zero.
pub fn localize(lw: &WeightLambda, mu: &[usize]) -> Result<Option<Vec<(usize, usize)>>> {
    if mu.len() != lw.m() {
        return Err(Error::ColourCountMismatch { left: mu.len(), right: lw.m() });
    }
    if mu.iter().sum::<usize>() != lw.n {
        return Err(Error::InvalidWeight(format!("colour counts {} must sum to n = {}", fmt_tuple(mu), lw.n)));
    }
    Ok(mu.iter().zip(&lw.lambda).map(|(&m, &l)| (m >= l && (m - l) % 2 == 0).then(|| (m, (m - l) / 2))).collect())
}
