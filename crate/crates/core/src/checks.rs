//! Invariant checks shared by the command-line `check` command and the
//! acceptance harness. Each check returns `Err(detail)` on the first
//! violation it finds.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cell::{
    act, dim_delta, dim_head, dim_radical, dim_radical_two_colour, enumerate_delta_basis, enumerate_lambda, gram_det,
    gram_direct, gram_factorized, inner_product, radical_series, t_values, Orders, WeightLambda,
};
use crate::linalg::{determinant, rank, specialize, ExactMatrix};
use crate::multicolour::{
    count_bubble_basis, enumerate_bubble_basis, identity, multiply, parity_split, random_bubble, random_diagram,
    ColouredDiagram, Element, ScaledDiagram,
};
use crate::repr::{decomposition_matrix, WeightOrder};
use crate::scalar::{LaurentScalar, Param, ParameterSpec, RootOrder};
use crate::tl::{dim_head_tl, dim_radical_tl, gram_tl};

pub type CheckResult = std::result::Result<(), String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `sum over λ of (dim Δ(λ))^2` equals the number of bubble diagrams.
pub fn cellular_dimension(n: usize, m: usize) -> CheckResult {
    let formula: usize = enumerate_lambda(n, m).iter().map(|w| dim_delta(w).pow(2)).sum();
    let counted = count_bubble_basis(n, m);
    if formula != counted {
        return Err(format!("n={n} m={m}: sum of squares {formula} but {counted} diagrams"));
    }
    Ok(())
}

/// Enumerated basis size of every `Δ(λ)` equals the dimension formula.
pub fn delta_basis_counts(n: usize, m: usize) -> CheckResult {
    for w in enumerate_lambda(n, m) {
        let b = enumerate_delta_basis(&w).map_err(fail)?;
        if b.len() != dim_delta(&w) {
            return Err(format!("{w}: {} states but formula gives {}", b.len(), dim_delta(&w)));
        }
    }
    Ok(())
}

/// Direct Gram matrix equals the assembled block factorisation.
pub fn gram_factorization(w: &WeightLambda) -> CheckResult {
    let direct = gram_direct(w).map_err(fail)?;
    let blocks = gram_factorized(w).map_err(fail)?;
    if blocks.dim() != direct.rows() {
        return Err(format!("{w}: block dims sum to {} but basis has {}", blocks.dim(), direct.rows()));
    }
    if blocks.assemble() != direct {
        return Err(format!("{w}: assembled blocks differ from the direct Gram matrix"));
    }
    if !direct.is_symmetric() {
        return Err(format!("{w}: Gram matrix is not symmetric"));
    }
    Ok(())
}

/// Rational points used when a symbolic determinant is too large.
fn evaluation_points(m: usize) -> Vec<ParameterSpec> {
    let values = [3i64, 5, 7];
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|p| ParameterSpec::new(p.into_iter().map(Param::rational).collect())).collect()
}

/// Determinant of the direct Gram matrix equals the product formula;
/// symbolically up to `limit`, otherwise at three rational values per
/// variable.
pub fn gram_determinant(w: &WeightLambda, limit: usize) -> CheckResult {
    let direct = gram_direct(w).map_err(fail)?;
    let formula = gram_det(w).map_err(fail)?;
    if direct.rows() <= limit {
        let d = determinant(&direct).map_err(fail)?;
        if d != formula {
            return Err(format!("{w}: det = {d} but formula gives {formula}"));
        }
        return Ok(());
    }
    for point in evaluation_points(w.m()) {
        let m = specialize(&direct, &point).map_err(fail)?;
        let d = determinant(&m).map_err(fail)?;
        let f = crate::scalar::evaluate(&formula, &point).map_err(fail)?;
        if d != f {
            return Err(format!("{w}: at {point} det = {d} but formula gives {f}"));
        }
    }
    Ok(())
}

/// Rank of the specialised Gram matrix equals the head dimension.
pub fn rank_matches_head(w: &WeightLambda, point: &ParameterSpec) -> CheckResult {
    let orders = point.orders().map_err(fail)?;
    let g = specialize(&gram_direct(w).map_err(fail)?, point).map_err(fail)?;
    let r = rank(&g).map_err(fail)?;
    let h = dim_head(w, &orders).map_err(fail)?;
    if r != h {
        return Err(format!("{w} at {point}: rank {r} but head formula {h}"));
    }
    Ok(())
}

/// Two-colour closed form for the radical agrees with `dim Δ - dim L`.
pub fn radical_closed_form(w: &WeightLambda, orders: &Orders) -> CheckResult {
    let a = dim_radical_two_colour(w, orders).map_err(fail)?;
    let b = dim_radical(w, orders).map_err(fail)?;
    if a != b {
        return Err(format!("{w}: closed form {a} but dim Δ - dim L = {b}"));
    }
    Ok(())
}

/// Layer head dimensions add up to `dim Δ(λ)` and the Loewy length is at
/// most one more than the number of non-critical root-of-unity colours.
pub fn radical_layers(w: &WeightLambda, orders: &Orders) -> CheckResult {
    let layers = radical_series(w, orders).map_err(fail)?;
    let mut total = 0;
    for layer in &layers {
        for x in layer {
            total += dim_head(x, orders).map_err(fail)?;
        }
    }
    if total != dim_delta(w) {
        return Err(format!("{w}: layer heads sum to {total} but dim Δ = {}", dim_delta(w)));
    }
    let s = t_values(w, orders).map_err(fail)?.iter().filter(|&&t| t > 0).count();
    if layers.len() > s + 1 {
        return Err(format!("{w}: Loewy length {} exceeds {}", layers.len(), s + 1));
    }
    Ok(())
}

/// Unitriangularity and `dim Δ(λ) = sum_μ D[λ][μ] dim L(μ)`.
pub fn decomposition_consistency(n: usize, m: usize, params: &ParameterSpec) -> CheckResult {
    let orders = params.orders().map_err(fail)?;
    let d = decomposition_matrix(n, m, params, &WeightOrder::Default).map_err(fail)?;
    if !d.is_unitriangular() {
        return Err("decomposition matrix is not unitriangular".into());
    }
    if d.entries().iter().flatten().any(|&x| x > 1) {
        return Err("decomposition matrix has an entry above 1".into());
    }
    let heads: Vec<usize> =
        d.weights().iter().map(|w| dim_head(w, &orders)).collect::<crate::Result<_>>().map_err(fail)?;
    for (i, w) in d.weights().iter().enumerate() {
        let s: usize = (0..d.len()).map(|j| d.get(i, j) as usize * heads[j]).sum();
        if s != dim_delta(w) {
            return Err(format!("{w}: composition factors give {s} but dim Δ = {}", dim_delta(w)));
        }
    }
    let c = d.cartan();
    for i in 0..c.len() {
        if c[i][i] == 0 || (0..c.len()).any(|j| c[i][j] != c[j][i]) {
            return Err("Cartan matrix is not symmetric with positive diagonal".into());
        }
    }
    Ok(())
}

fn times(a: &ScaledDiagram, b: &ColouredDiagram) -> CheckResult {
    a.then(b).map(|_| ()).map_err(fail)
}

/// `(ab)c = a(bc)` with scalars, on random diagrams of the full coloured
/// partition algebra and of the bubble subalgebra.
pub fn associativity(n: usize, m: usize, trials: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..trials {
        let bubble = k % 2 == 0;
        let mut draw = || {
            if bubble {
                random_bubble(&mut rng, n, m)
            } else {
                random_diagram(&mut rng, n, m)
            }
        };
        let (a, b, c) = (draw(), draw(), draw());
        let ab = multiply(&a, &b).map_err(fail)?;
        times(&ab, &c)?;
        let left = ab.then(&c).map_err(fail)?;
        let right = multiply(&b, &c).map_err(fail)?.after(&a).map_err(fail)?;
        if left != right {
            return Err(format!("(ab)c != a(bc) for\n  a = {a}\n  b = {b}\n  c = {c}"));
        }
        if bubble {
            if let ScaledDiagram::Term(_, d) = &left {
                if !d.is_bubble() {
                    return Err(format!("product of bubble diagrams left the subalgebra: {d}"));
                }
            }
        }
    }
    Ok(())
}

/// The sum of the `m^n` idempotents is a two-sided unit on the basis.
pub fn identity_is_unit(n: usize, m: usize) -> CheckResult {
    identity_on(n, m, &enumerate_bubble_basis(n, m))
}

/// The unit property on the given diagrams only.
pub fn identity_on(n: usize, m: usize, diagrams: &[ColouredDiagram]) -> CheckResult {
    let one = Element::sum_of(m, identity(n, m));
    for d in diagrams {
        let e = Element::basis(d.clone());
        if one.mul(&e).map_err(fail)? != e || e.mul(&one).map_err(fail)? != e {
            return Err(format!("identity fails on {d}"));
        }
    }
    Ok(())
}

/// The unit property on `trials` random bubble diagrams.
pub fn identity_sampled(n: usize, m: usize, trials: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<ColouredDiagram> = (0..trials).map(|_| random_bubble(&mut rng, n, m)).collect();
    identity_on(n, m, &sample)
}

/// Even and odd halves partition the basis, multiply to zero across, and
/// each has its own unit.
pub fn parity_splitting(n: usize) -> CheckResult {
    let basis = enumerate_bubble_basis(n, 2);
    let (even, odd) = parity_split(&basis).map_err(fail)?;
    if even.len() + odd.len() != basis.len() {
        return Err("halves do not partition the basis".into());
    }
    for x in &even {
        for y in &odd {
            if !multiply(x, y).map_err(fail)?.is_zero() || !multiply(y, x).map_err(fail)?.is_zero() {
                return Err(format!("even-odd product is nonzero: {x} and {y}"));
            }
        }
    }
    let ids = identity(n, 2);
    let (id_even, id_odd) = parity_split(&ids).map_err(fail)?;
    for (half, ids) in [(&even, id_even), (&odd, id_odd)] {
        let one = Element::sum_of(2, ids);
        for d in half {
            let e = Element::basis(d.clone());
            if one.mul(&e).map_err(fail)? != e || e.mul(&one).map_err(fail)? != e {
                return Err(format!("half identity fails on {d}"));
            }
        }
    }
    Ok(())
}

fn scaled_form(
    x: Option<(LaurentScalar, crate::cell::MultiLinkState)>,
    b: &crate::cell::MultiLinkState,
) -> crate::Result<LaurentScalar> {
    match x {
        None => Ok(LaurentScalar::zero(b.m())),
        Some((c, a)) => Ok(&c * &inner_product(&a, b)?),
    }
}

/// `<d a, b> = <a, d* b>` with `d*` the reflected diagram.
pub fn contravariance(w: &WeightLambda, trials: usize, seed: u64) -> CheckResult {
    let basis = enumerate_delta_basis(w).map_err(fail)?;
    if basis.is_empty() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    for _ in 0..trials {
        let d = random_bubble(&mut rng, w.n(), w.m());
        let a = &basis[rng.random_range(0..basis.len())];
        let b = &basis[rng.random_range(0..basis.len())];
        let left = scaled_form(act(&d, a).map_err(fail)?, b).map_err(fail)?;
        let right = scaled_form(act(&d.reflect(), b).map_err(fail)?, a).map_err(fail)?;
        if left != right {
            return Err(format!("{w}: <d a, b> = {left} but <a, d* b> = {right} for d = {d}"));
        }
    }
    Ok(())
}

/// TL radical dimension equals the rank deficiency of the Gram matrix at
/// `2 cos(pi/l)`.
pub fn tl_radical(n: usize, l: RootOrder) -> CheckResult {
    let point = ParameterSpec::new(vec![Param::RootOfUnity(l)]);
    for p in 0..=n / 2 {
        let g = specialize(&gram_tl(n, p).map_err(fail)?, &point).map_err(fail)?;
        let r = rank(&g).map_err(fail)?;
        let expect = g.rows() - dim_radical_tl(n, p, Some(l));
        if r != expect || r != dim_head_tl(n, p, Some(l)) {
            return Err(format!("(n,p)=({n},{p}) l={l}: rank {r}, formula head {expect}"));
        }
    }
    Ok(())
}

/// Generic-parameter Gram matrices have full rank.
pub fn full_rank_at(w: &WeightLambda, point: &ParameterSpec) -> CheckResult {
    let g: ExactMatrix<_> = specialize(&gram_direct(w).map_err(fail)?, point).map_err(fail)?;
    let r = rank(&g).map_err(fail)?;
    if r != g.rows() {
        return Err(format!("{w} at {point}: rank {r} of {}", g.rows()));
    }
    Ok(())
}

/// Exact rational value, for callers building evaluation points.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Named result of one check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub outcome: CheckResult,
}

/// Every applicable check for `T(n,m)` at `params`.
pub fn run_suite(n: usize, m: usize, params: &ParameterSpec, seed: u64, symbolic_limit: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut push = |name: &str, outcome: CheckResult| out.push(CheckReport { name: name.to_string(), outcome });
    let weights = enumerate_lambda(n, m);
    let all = |f: &dyn Fn(&WeightLambda) -> CheckResult| weights.iter().try_for_each(f);
    push("cellular dimension", cellular_dimension(n, m));
    push("cell basis counts", delta_basis_counts(n, m));
    push("gram factorisation", all(&gram_factorization));
    push("gram determinant", all(&|w| gram_determinant(w, symbolic_limit)));
    push("associativity", associativity(n, m, 200, seed));
    if count_bubble_basis(n, m) <= 5000 {
        push("identity", identity_is_unit(n, m));
    } else {
        push("identity (sampled)", identity_sampled(n, m, 200, seed));
    }
    push("contravariance", all(&|w| contravariance(w, 50, seed)));
    if m == 2 {
        push("parity splitting", parity_splitting(n));
    }
    let orders = match params.check_colours(m).and_then(|_| params.orders()) {
        Ok(o) => o,
        Err(e) => {
            push("parameters", Err(e.to_string()));
            return out;
        }
    };
    if !params.is_generic() {
        push("rank equals head", all(&|w| rank_matches_head(w, params)));
    }
    if m == 2 {
        push("two-colour radical", all(&|w| radical_closed_form(w, &orders)));
    }
    push("radical layers", all(&|w| radical_layers(w, &orders)));
    push("decomposition matrix", decomposition_consistency(n, m, params));
    for l in orders.iter().flatten() {
        push(&format!("TL radical l={l}"), (0..=n).try_for_each(|k| tl_radical(k, *l)));
    }
    out
}
