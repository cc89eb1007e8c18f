//! Temperley-Lieb link states, cell-module Gram matrices and the
//! root-of-unity dimension formulas.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{LaurentScalar, RootOrder};

/// `p` non-crossing arcs on `n` nodes with no defect nested under an arc.
/// Nodes are 0-based; arcs are `(opener, closer)` sorted by opener.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkState {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl LinkState {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        for a in &mut arcs {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
        }
        arcs.sort_unstable();
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in &arcs {
            if b >= n || a == b {
                return Err(Error::InvalidLinkState(format!("arc ({},{}) out of range", a + 1, b + 1)));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidLinkState("arcs share a node".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        // Scan left to right: arcs must nest and defects must sit at depth 0.
        let mut stack: Vec<usize> = Vec::new();
        for x in 0..n {
            match partner[x] {
                usize::MAX if !stack.is_empty() => {
                    return Err(Error::InvalidLinkState(format!("defect {} lies under an arc", x + 1)));
                }
                usize::MAX => {}
                y if y > x => stack.push(x),
                y => {
                    if stack.pop() != Some(y) {
                        return Err(Error::InvalidLinkState("arcs cross".into()));
                    }
                }
            }
        }
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn defects(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for &(a, b) in &self.arcs {
            used[a] = true;
            used[b] = true;
        }
        (0..self.n).filter(|&x| !used[x]).collect()
    }
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; arcs=", self.n)?;
        for &(a, b) in &self.arcs {
            write!(f, "({},{})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Parses `(1,2)(4,5)` into 0-based pairs.
pub(crate) fn parse_arcs(s: &str) -> Result<Vec<(usize, usize)>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in arcs {s:?}")))?;
        let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed arc in {s:?}")))?;
        let (a, b) =
            body[..close].split_once(',').ok_or_else(|| Error::Parse(format!("arc needs two nodes in {s:?}")))?;
        let node = |t: &str| -> Result<usize> {
            match t.trim().parse::<usize>() {
                Ok(0) | Err(_) => Err(Error::Parse(format!("bad node {t:?}"))),
                Ok(x) => Ok(x - 1),
            }
        };
        out.push((node(a)?, node(b)?));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

impl FromStr for LinkState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arcs) =
            s.split_once(';').ok_or_else(|| Error::Parse(format!("expected `n=<n>; arcs=...`, got {s:?}")))?;
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad size in {s:?}")))?;
        let arcs = arcs.trim().strip_prefix("arcs=").ok_or_else(|| Error::Parse(format!("expected arcs= in {s:?}")))?;
        Self::new(n, parse_arcs(arcs)?)
    }
}

fn check_weight(n: usize, p: usize) -> Result<()> {
    if 2 * p > n {
        return Err(Error::InvalidWeight(format!("p = {p} exceeds n/2 for n = {n}")));
    }
    Ok(())
}

/// All `(n,p)`-link states, ordered lexicographically by arc list.
pub fn enumerate_link_states(n: usize, p: usize) -> Result<Vec<LinkState>> {
    check_weight(n, p)?;
    // Positions are opener, closer or defect; defects only at depth 0.
    fn rec(
        x: usize,
        n: usize,
        opens_left: usize,
        stack: &mut Vec<usize>,
        arcs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if x == n {
            if stack.is_empty() && opens_left == 0 {
                out.push(arcs.clone());
            }
            return;
        }
        let remaining = n - x;
        if stack.len() + 2 * opens_left > remaining {
            return;
        }
        if opens_left > 0 {
            stack.push(x);
            rec(x + 1, n, opens_left - 1, stack, arcs, out);
            stack.pop();
        }
        if let Some(o) = stack.pop() {
            arcs.push((o, x));
            rec(x + 1, n, opens_left, stack, arcs, out);
            arcs.pop();
            stack.push(o);
        } else {
            rec(x + 1, n, opens_left, stack, arcs, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut Vec::new(), &mut out);
    for a in &mut out {
        a.sort_unstable();
    }
    out.sort();
    Ok(out.into_iter().map(|arcs| LinkState { n, arcs }).collect())
}

/// `C(n,p) - C(n,p-1)`.
pub fn dim_cell(n: usize, p: usize) -> usize {
    if 2 * p > n {
        return 0;
    }
    let lower = if p == 0 { 0 } else { binomial(n, p - 1) };
    binomial(n, p) - lower
}

/// Number of closed loops when `x` is reflected onto `y`, or `None` when
/// the pairing vanishes because two defects of one side are joined.
pub fn tl_pairing(x: &LinkState, y: &LinkState) -> Result<Option<u32>> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch(format!("link states on {} and {} nodes", x.n, y.n)));
    }
    if x.p() != y.p() {
        return Err(Error::DimensionMismatch(format!("link states with {} and {} arcs", x.p(), y.p())));
    }
    Ok(glue(x.n, &[(&x.arcs, &x.defects()), (&y.arcs, &y.defects())]))
}

/// Glues two arc systems on shared nodes; each side contributes its arcs
/// and its defects. Every component must contain no defects (a loop) or
/// exactly one defect from each side.
fn glue(n: usize, sides: &[(&[(usize, usize)], &[usize]); 2]) -> Option<u32> {
    let mut uf = UnionFind::<usize>::new(n);
    for (arcs, _) in sides {
        for &(a, b) in arcs.iter() {
            uf.union(a, b);
        }
    }
    let mut count = vec![[0u8; 2]; n];
    for (s, (_, defects)) in sides.iter().enumerate() {
        for &d in defects.iter() {
            let r = uf.find(d);
            count[r][s] += 1;
        }
    }
    let mut loops = 0;
    for x in 0..n {
        if uf.find(x) != x {
            continue;
        }
        match count[x] {
            [0, 0] => loops += 1,
            [1, 1] => {}
            _ => return None,
        }
    }
    Some(loops)
}

/// Bilinear form value as a Laurent scalar in variable `var` of `nvars`.
pub fn tl_form_in(x: &LinkState, y: &LinkState, nvars: usize, var: usize) -> Result<LaurentScalar> {
    Ok(match tl_pairing(x, y)? {
        None => LaurentScalar::zero(nvars),
        Some(k) => {
            let mut e = vec![0; nvars];
            e[var] = k as i32;
            LaurentScalar::monomial(nvars, e, 1)
        }
    })
}

/// Bilinear form value in the single variable `d0`.
pub fn tl_form(x: &LinkState, y: &LinkState) -> Result<LaurentScalar> {
    tl_form_in(x, y, 1, 0)
}

pub fn gram_tl_in(n: usize, p: usize, nvars: usize, var: usize) -> Result<ExactMatrix<LaurentScalar>> {
    let basis = enumerate_link_states(n, p)?;
    let k = basis.len();
    let mut m = ExactMatrix::zeros(k, k, LaurentScalar::zero(nvars));
    for i in 0..k {
        for j in 0..=i {
            let v = tl_form_in(&basis[i], &basis[j], nvars, var)?;
            m.set(j, i, v.clone());
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Gram matrix of the `(n,p)` cell module over `Z[d0, d0^-1]`.
pub fn gram_tl(n: usize, p: usize) -> Result<ExactMatrix<LaurentScalar>> {
    gram_tl_in(n, p, 1, 0)
}

/// `r` in `1..=l` with `n - 2p + 1 ≡ r (mod l)`.
pub fn r_value(n: usize, p: usize, l: RootOrder) -> usize {
    let l = l.get() as usize;
    let k = (n + 1 - 2 * p) % l;
    if k == 0 {
        l
    } else {
        k
    }
}

pub fn is_critical(n: usize, p: usize, l: RootOrder) -> bool {
    r_value(n, p, l) == l.get() as usize
}

pub fn dim_radical_tl(n: usize, p: usize, l: Option<RootOrder>) -> usize {
    let Some(l) = l else { return 0 };
    let r = r_value(n, p, l);
    let lv = l.get() as usize;
    if r == lv || p + r < lv {
        return 0;
    }
    dim_head_tl(n, p + r - lv, Some(l))
}

pub fn dim_head_tl(n: usize, p: usize, l: Option<RootOrder>) -> usize {
    dim_cell(n, p) - dim_radical_tl(n, p, l)
}

/// Existence of a non-trivial map from the `(n,p2)` to the `(n,p1)` cell
/// module: `0 <= p1 - p2 < l` and `l | n - p1 - p2 + 1`.
pub fn hom_exists_tl(n: usize, p2: usize, p1: usize, l: RootOrder) -> bool {
    if 2 * p1 > n || 2 * p2 > n || p1 < p2 {
        return false;
    }
    let lv = l.get() as usize;
    p1 - p2 < lv && (n + 1 - p1 - p2) % lv == 0
}
