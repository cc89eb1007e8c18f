//! Fixtures shared by the benchmarks.

use bubble_core::multicolour::enumerate_bubble_basis;
use bubble_core::ColouredDiagram;

/// Deterministic composable pairs: each basis element with the element
/// `stride` places later whose top word matches its bottom word.
pub fn composable_pairs(n: usize, m: usize, count: usize) -> Vec<(ColouredDiagram, ColouredDiagram)> {
    let basis = enumerate_bubble_basis(n, m);
    let mut out = Vec::with_capacity(count);
    let stride = (basis.len() / count.max(1)).max(1);
    for (i, a) in basis.iter().enumerate().step_by(stride) {
        if let Some(b) = basis[i..].iter().chain(&basis[..i]).skip(stride / 2).find(|b| b.top_word() == a.bottom_word())
        {
            out.push((a.clone(), b.clone()));
        }
        if out.len() == count {
            break;
        }
    }
    out
}
