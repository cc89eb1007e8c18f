//! Fixed values for T(6,2) at delta = (0, sqrt 2).

use bubble_core::repr::{blocks, decomposition_matrix};
use bubble_core::{ParameterSpec, WeightLambda, WeightOrder};

fn params() -> ParameterSpec {
    ParameterSpec::parse_list(&["root:2", "root:4"]).unwrap()
}

fn w(l: [usize; 2]) -> WeightLambda {
    WeightLambda::new(6, l.to_vec()).unwrap()
}

#[rustfmt::skip]
const ORDER: [[usize; 2]; 16] = [
    [0, 0], [2, 0], [0, 6], [4, 0], [6, 0],
    [1, 1], [1, 5],
    [0, 2], [2, 2], [0, 4], [4, 2], [2, 4],
    [3, 1], [1, 3], [5, 1], [3, 3],
];

fn golden_order() -> WeightOrder {
    WeightOrder::Explicit(ORDER.iter().map(|&l| w(l)).collect())
}

#[rustfmt::skip]
const D1: [[u32; 5]; 5] = [[1, 1, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]];
#[rustfmt::skip]
const D2: [[u32; 2]; 2] = [[1, 1], [0, 1]];
#[rustfmt::skip]
const D3: [[u32; 5]; 5] = [[1, 1, 1, 0, 1], [0, 1, 0, 1, 1], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]];
#[rustfmt::skip]
const C1: [[u32; 5]; 5] = [[1, 1, 1, 0, 0], [1, 2, 1, 1, 0], [1, 1, 2, 0, 0], [0, 1, 0, 2, 1], [0, 0, 0, 1, 2]];
#[rustfmt::skip]
const C2: [[u32; 2]; 2] = [[1, 1], [1, 2]];
#[rustfmt::skip]
const C3: [[u32; 5]; 5] = [[1, 1, 1, 0, 1], [1, 2, 1, 1, 2], [1, 1, 2, 0, 2], [0, 1, 0, 2, 1], [1, 2, 2, 1, 4]];

fn rows<const N: usize>(m: &[[u32; N]]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.to_vec()).collect()
}

#[test]
fn decomposition_blocks() {
    let d = decomposition_matrix(6, 2, &params(), &golden_order()).unwrap();
    let b = d.blocks();
    let sizes: Vec<usize> = b.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![5, 2, 5, 1, 1, 1, 1]);
    assert_eq!(d.submatrix(&b[0]), rows(&D1));
    assert_eq!(d.submatrix(&b[1]), rows(&D2));
    assert_eq!(d.submatrix(&b[2]), rows(&D3));
    for s in &b[3..] {
        assert_eq!(d.submatrix(s), vec![vec![1]]);
    }
    // The ordering is already block-grouped, so the full matrix is block diagonal.
    let flat: Vec<usize> = b.concat();
    assert_eq!(flat, (0..16).collect::<Vec<_>>());
}

#[test]
fn cartan_blocks() {
    let d = decomposition_matrix(6, 2, &params(), &golden_order()).unwrap();
    let c = d.cartan();
    let b = d.blocks();
    let sub =
        |idx: &[usize]| -> Vec<Vec<u32>> { idx.iter().map(|&i| idx.iter().map(|&j| c[i][j]).collect()).collect() };
    assert_eq!(sub(&b[0]), rows(&C1));
    assert_eq!(sub(&b[1]), rows(&C2));
    assert_eq!(sub(&b[2]), rows(&C3));
    assert_eq!(c[11][11], 4);
}

#[test]
fn linkage_classes() {
    let bp = blocks(6, 2, &params()).unwrap();
    let mut got: Vec<Vec<WeightLambda>> = bp
        .blocks
        .into_iter()
        .map(|mut b| {
            b.sort();
            b
        })
        .collect();
    got.sort();
    let mut want: Vec<Vec<WeightLambda>> = [&ORDER[0..5], &ORDER[5..7], &ORDER[7..12]]
        .iter()
        .map(|s| {
            let mut v: Vec<WeightLambda> = s.iter().map(|&l| w(l)).collect();
            v.sort();
            v
        })
        .chain(ORDER[12..].iter().map(|&l| vec![w(l)]))
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn default_order_is_a_relabelling() {
    let a = decomposition_matrix(6, 2, &params(), &WeightOrder::Default).unwrap();
    let b = decomposition_matrix(6, 2, &params(), &golden_order()).unwrap();
    assert_eq!(a.reordered(b.weights()).unwrap(), b);
    assert_eq!(a.block_grouped().blocks().len(), 7);
}
