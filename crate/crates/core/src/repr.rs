//! Decomposition and Cartan matrices, linkage blocks and structural
//! predicates of the bubble algebra at a parameter point.

use std::collections::HashMap;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::cell::{dim_radical, enumerate_lambda, gamma, radical_series, Orders, WeightLambda};
use crate::error::{Error, Result};
use crate::scalar::{ParameterSpec, RootOrder};
use crate::tl::hom_exists_tl;

/// Weights whose cell module has a nonzero form: everything except the
/// zero weight when `n` is even and every parameter is 0.
pub fn lambda_zero(n: usize, m: usize, params: &ParameterSpec) -> Result<Vec<WeightLambda>> {
    params.check_colours(m)?;
    let drop_zero = n % 2 == 0 && params.all_zero();
    Ok(enumerate_lambda(n, m).into_iter().filter(|w| !(drop_zero && w.is_zero())).collect())
}

/// Row and column order for decomposition matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightOrder {
    /// Weight enumeration order.
    Default,
    /// Linkage blocks in order of first appearance, each in default order.
    BlockGrouped,
    /// A given permutation of the weights.
    Explicit(Vec<WeightLambda>),
}

/// Multiplicities `[λ : L(μ)]`, rows and columns indexed by the same weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    weights: Vec<WeightLambda>,
    entries: Vec<Vec<u32>>,
}

impl DecompositionMatrix {
    pub fn weights(&self) -> &[WeightLambda] {
        &self.weights
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row][col]
    }

    pub fn index_of(&self, w: &WeightLambda) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }

    /// Same matrix with rows and columns listed in `order`.
    pub fn reordered(&self, order: &[WeightLambda]) -> Result<Self> {
        let pos: HashMap<&WeightLambda, usize> = self.weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut seen = vec![false; self.len()];
        let mut idx = Vec::with_capacity(order.len());
        for w in order {
            let &i = pos.get(w).ok_or_else(|| Error::InvalidWeight(format!("{w} is not a cell index here")))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidWeight(format!("{w} listed twice in the ordering")));
            }
            idx.push(i);
        }
        if idx.len() != self.len() {
            return Err(Error::InvalidWeight(format!("ordering lists {} of {} weights", idx.len(), self.len())));
        }
        Ok(Self {
            weights: order.to_vec(),
            entries: idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect()).collect(),
        })
    }

    /// Linkage classes as index lists: connected components of the graph
    /// joining `λ` and `μ` whenever `[λ : L(μ)] != 0`. Listed by first
    /// appearance in the current order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut uf = UnionFind::<usize>::new(k);
        for i in 0..k {
            for j in 0..k {
                if i != j && self.entries[i][j] != 0 {
                    uf.union(i, j);
                }
            }
        }
        let labels = uf.into_labeling();
        let mut slot = vec![usize::MAX; k];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let r = labels[i];
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    /// Square submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Vec<Vec<u32>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect()).collect()
    }

    /// `C = D^T D`.
    pub fn cartan(&self) -> Vec<Vec<u32>> {
        cartan_matrix(&self.entries)
    }

    /// Rows then columns in block-grouped order.
    pub fn block_grouped(&self) -> Self {
        let order: Vec<WeightLambda> = self.blocks().into_iter().flatten().map(|i| self.weights[i].clone()).collect();
        self.reordered(&order).expect("permutation of own weights")
    }

    /// Nonzero `(λ, μ)` entries only with `μ_j >= λ_j` for all `j`, and
    /// ones on the diagonal.
    pub fn is_unitriangular(&self) -> bool {
        (0..self.len()).all(|i| {
            self.entries[i][i] == 1
                && (0..self.len()).all(|j| {
                    self.entries[i][j] == 0
                        || self.weights[i].lambda().iter().zip(self.weights[j].lambda()).all(|(a, b)| a <= b)
                })
        })
    }
}

pub fn cartan_matrix(d: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let k = d.len();
    (0..k).map(|i| (0..k).map(|j| (0..k).map(|r| d[r][i] * d[r][j]).sum()).collect()).collect()
}

fn orders_for(m: usize, params: &ParameterSpec) -> Result<Vec<Option<RootOrder>>> {
    params.check_colours(m)?;
    params.orders()
}

/// Row `λ` has a 1 at each weight in any Loewy layer of `Δ(λ)`.
pub fn decomposition_matrix(
    n: usize,
    m: usize,
    params: &ParameterSpec,
    order: &WeightOrder,
) -> Result<DecompositionMatrix> {
    let orders = orders_for(m, params)?;
    let weights = lambda_zero(n, m, params)?;
    let pos: HashMap<&WeightLambda, usize> = weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let entries = weights
        .par_iter()
        .map(|w| {
            let mut row = vec![0u32; weights.len()];
            for layer in radical_series(w, &orders)? {
                for x in layer {
                    if let Some(&j) = pos.get(&x) {
                        row[j] = 1;
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let d = DecompositionMatrix { weights, entries };
    match order {
        WeightOrder::Default => Ok(d),
        WeightOrder::BlockGrouped => Ok(d.block_grouped()),
        WeightOrder::Explicit(list) => d.reordered(list),
    }
}

/// Linkage classes of the cell modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub blocks: Vec<Vec<WeightLambda>>,
    /// `(from, to)`: a nonzero map from the cell module `from` to `to`.
    pub arrows: Vec<(WeightLambda, WeightLambda)>,
    orders: Vec<Option<RootOrder>>,
}

impl BlockPartition {
    /// Graphviz rendering; weights on a critical line carry the colours
    /// for which `λ_j + 1 ≡ 0 (mod l_j)`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph blocks {\n  node [shape=box];\n");
        for (j, o) in self.orders.iter().enumerate() {
            if let Some(l) = o {
                let _ = writeln!(s, "  // colour {j}: critical when lambda_{j} + 1 = 0 mod {l}");
            }
        }
        for (k, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(s, "  subgraph cluster_{k} {{\n    label=\"block {k}\";");
            for w in b {
                let crit: Vec<String> = w
                    .lambda()
                    .iter()
                    .zip(&self.orders)
                    .enumerate()
                    .filter(|(_, (x, o))| o.is_some_and(|l| (*x + 1) % l.get() as usize == 0))
                    .map(|(j, _)| j.to_string())
                    .collect();
                if crit.is_empty() {
                    let _ = writeln!(s, "    \"{w}\";");
                } else {
                    let _ = writeln!(s, "    \"{w}\" [critical=\"{}\", style=dashed];", crit.join(","));
                }
            }
            s.push_str("  }\n");
        }
        for (a, b) in &self.arrows {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
        }
        s.push_str("}\n");
        s
    }
}

pub fn blocks(n: usize, m: usize, params: &ParameterSpec) -> Result<BlockPartition> {
    let orders = orders_for(m, params)?;
    let d = decomposition_matrix(n, m, params, &WeightOrder::Default)?;
    let w = d.weights();
    let groups = d.blocks().into_iter().map(|b| b.into_iter().map(|i| w[i].clone()).collect()).collect();
    let mut arrows = Vec::new();
    for i in 0..d.len() {
        for j in 0..d.len() {
            if i != j && d.get(i, j) != 0 {
                arrows.push((w[j].clone(), w[i].clone()));
            }
        }
    }
    Ok(BlockPartition { blocks: groups, arrows, orders })
}

/// Whether some `p` makes every colour factor admit a TL map from the
/// `(λ_j + 2p_j, p_j)` to the `(λ_j + 2p_j, p_j + t_j)` cell module, with
/// `λ' = λ - 2t`. Colours with `t_j = 0` contribute the identity.
pub fn cell_hom_exists_combinatorial(from: &WeightLambda, to: &WeightLambda, orders: &Orders) -> Result<bool> {
    if from.n() != to.n() || from.m() != to.m() {
        return Err(Error::DimensionMismatch(format!("weights {from} and {to} index different algebras")));
    }
    if orders.len() != from.m() {
        return Err(Error::ColourCountMismatch { left: orders.len(), right: from.m() });
    }
    let mut t = Vec::with_capacity(from.m());
    for (&a, &b) in from.lambda().iter().zip(to.lambda()) {
        if a < b || (a - b) % 2 == 1 {
            return Ok(false);
        }
        t.push((a - b) / 2);
    }
    for (j, &tj) in t.iter().enumerate() {
        if tj > 0 && orders[j].is_none() {
            return Ok(false);
        }
    }
    let lambda = from.lambda();
    Ok(gamma(from.v(), from.m()).iter().any(|p| {
        (0..lambda.len()).all(|j| {
            t[j] == 0 || hom_exists_tl(lambda[j] + 2 * p[j], p[j], p[j] + t[j], orders[j].expect("checked above"))
        })
    }))
}

/// As [`cell_hom_exists_combinatorial`], for invertible parameters only.
pub fn cell_hom_exists(from: &WeightLambda, to: &WeightLambda, params: &ParameterSpec) -> Result<bool> {
    params.check_colours(from.m())?;
    if let Some(j) = params.first_zero() {
        return Err(Error::ZeroParameter { colour: j });
    }
    cell_hom_exists_combinatorial(from, to, &params.orders()?)
}

/// Simplicity test for `Δ(λ)`: `λ_j + 1 ≡ 0 (mod l_j)` for every colour
/// with a root-of-unity order.
pub fn simple_by_criterion(w: &WeightLambda, orders: &Orders) -> bool {
    w.lambda().iter().zip(orders).all(|(&x, o)| o.map_or(true, |l| (x + 1) % l.get() as usize == 0))
}

/// Every cell module is simple with a nonzero form.
pub fn is_semisimple(n: usize, m: usize, params: &ParameterSpec) -> Result<bool> {
    let orders = orders_for(m, params)?;
    if !is_quasi_hereditary(n, m, params)? {
        return Ok(false);
    }
    for w in enumerate_lambda(n, m) {
        if dim_radical(&w, &orders)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasi_hereditary(n: usize, m: usize, params: &ParameterSpec) -> Result<bool> {
    params.check_colours(m)?;
    Ok(n % 2 == 1 || !params.all_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(items: &[&str]) -> ParameterSpec {
        ParameterSpec::parse_list(items).unwrap()
    }

    fn w(n: usize, l: &[usize]) -> WeightLambda {
        WeightLambda::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn lambda_zero_cases() {
        assert_eq!(lambda_zero(6, 2, &spec(&["0", "root:4"])).unwrap().len(), 16);
        let l = lambda_zero(4, 2, &spec(&["0", "0"])).unwrap();
        assert_eq!(l.len(), enumerate_lambda(4, 2).len() - 1);
        assert!(!l.contains(&w(4, &[0, 0])));
        assert_eq!(lambda_zero(3, 2, &spec(&["0", "0"])).unwrap().len(), enumerate_lambda(3, 2).len());
    }

    #[test]
    fn generic_is_identity() {
        let d = decomposition_matrix(4, 2, &spec(&["3", "5/2"]), &WeightOrder::Default).unwrap();
        for i in 0..d.len() {
            for j in 0..d.len() {
                assert_eq!(d.get(i, j), u32::from(i == j));
            }
        }
        assert!(blocks(4, 2, &spec(&["3", "3"])).unwrap().blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn cartan_of_identity() {
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(cartan_matrix(&id), id);
    }

    #[test]
    fn predicates() {
        assert!(is_semisimple(5, 2, &spec(&["3", "3"])).unwrap());
        assert!(!is_semisimple(6, 2, &spec(&["0", "root:4"])).unwrap());
        assert!(!is_quasi_hereditary(4, 2, &spec(&["0", "0"])).unwrap());
        assert!(is_quasi_hereditary(5, 2, &spec(&["0", "0"])).unwrap());
    }

    #[test]
    fn hom_cases() {
        let p = spec(&["root:3", "root:4"]);
        let a = w(6, &[1, 1]);
        assert!(cell_hom_exists(&a, &a, &p).unwrap());
        assert!(!cell_hom_exists(&w(6, &[2, 0]), &w(6, &[1, 1]), &p).unwrap());
        assert!(matches!(cell_hom_exists(&a, &a, &spec(&["0", "root:4"])), Err(Error::ZeroParameter { colour: 0 })));
        // (1,1) + 2t with λ_0 + t_0 + 1 ≡ 0 mod 3 gives t_0 = 1.
        assert!(cell_hom_exists(&w(6, &[3, 1]), &w(6, &[1, 1]), &p).unwrap());
    }

    #[test]
    fn tl_blocks() {
        let b = blocks(4, 1, &spec(&["0"])).unwrap();
        // TL_4 at delta = 0: Λ⁰ = {(4),(2)}, linked by the map into V_{4,1}.
        assert_eq!(b.blocks, vec![vec![w(4, &[4]), w(4, &[2])]]);
    }
}
