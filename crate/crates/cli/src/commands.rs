use std::io::Read;
use std::path::PathBuf;

use bubble_core::cell::{
    dim_delta, dim_head, dim_radical, enumerate_delta_basis, enumerate_lambda, gram_det, gram_direct, gram_factorized,
    radical_series,
};
use bubble_core::checks::{run_suite, CheckReport};
use bubble_core::linalg::{determinant_symbolic, specialize, DEFAULT_MAX_SYMBOLIC_DIM};
use bubble_core::multicolour::{enumerate_bubble_basis, multiply};
use bubble_core::repr::{blocks, decomposition_matrix};
use bubble_core::{
    determinant, rank, ColouredDiagram, DecompositionMatrix, Error, ExactMatrix, LaurentScalar, ParameterSpec,
    ScaledDiagram, Specialization, WeightLambda, WeightOrder,
};
use serde_json::{json, Value};

use crate::render::{Grid, Report, Table};
use crate::{Command, Common, DetMethod, Format, GramMethod, Order};

/// Exit status plus a one-line diagnostic, and any output to print first.
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub stdout: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into(), stdout: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DivisionByZero
            | Error::FieldMismatch
            | Error::InexactDivision
            | Error::NotSquare { .. }
            | Error::DimensionMismatch(_)
            | Error::NotPairPartition(_) => 1,
            _ => 2,
        };
        Self { code, message: e.to_string(), stdout: None }
    }
}

type Outcome<T> = Result<T, Failure>;

/// Order of T(6,2) weights grouped by linkage class at orders (2, 4).
#[rustfmt::skip]
const ORDER_6_2: [[usize; 2]; 16] = [
    [0, 0], [2, 0], [0, 6], [4, 0], [6, 0],
    [1, 1], [1, 5],
    [0, 2], [2, 2], [0, 4], [4, 2], [2, 4],
    [3, 1], [1, 3], [5, 1], [3, 3],
];

struct Setup {
    n: usize,
    m: usize,
    params: ParameterSpec,
}

impl Setup {
    fn from(common: &Common) -> Outcome<Self> {
        let n = common.n.ok_or_else(|| Failure::input("missing -n <nodes>"))?;
        let m = common.m;
        if m == 0 {
            return Err(Failure::input("need at least one colour (-m)"));
        }
        if m > 10 {
            return Err(Failure::input("at most 10 colours are supported"));
        }
        let params = if common.delta.is_empty() {
            ParameterSpec::generic(m)
        } else {
            let p = ParameterSpec::parse_list(&common.delta)?;
            if p.len() != m {
                return Err(Failure::input(format!(
                    "--delta given {} times but m = {m}; repeat it once per colour",
                    p.len()
                )));
            }
            p
        };
        Ok(Self { n, m, params })
    }

    fn weight(&self, common: &Common) -> Outcome<Option<WeightLambda>> {
        let Some(s) = &common.lambda else { return Ok(None) };
        let w = WeightLambda::parse(self.n, s)?;
        if w.m() != self.m {
            return Err(Failure::input(format!("--lambda {s} has {} entries but m = {}", w.m(), self.m)));
        }
        Ok(Some(w))
    }

    fn require_weight(&self, common: &Common) -> Outcome<WeightLambda> {
        self.weight(common)?.ok_or_else(|| Failure::input("missing --lambda <weight>, e.g. --lambda 0,2"))
    }

    /// The given weight, or every weight of T(n,m).
    fn weights(&self, common: &Common) -> Outcome<Vec<WeightLambda>> {
        Ok(match self.weight(common)? {
            Some(w) => vec![w],
            None => enumerate_lambda(self.n, self.m),
        })
    }

    fn specialised(&self) -> Option<Specialization> {
        if self.params.is_generic() {
            None
        } else {
            Specialization::new(&self.params).ok()
        }
    }
}

pub fn run(command: &Command, common: &Common) -> Outcome<String> {
    let report = match command {
        Command::Multiply { inputs } => cmd_multiply(inputs, common)?,
        Command::Check { seed } => return cmd_check(common, *seed),
        other => {
            let setup = Setup::from(common)?;
            match other {
                Command::Basis => cmd_basis(&setup, common)?,
                Command::Gram { method } => cmd_gram(&setup, common, *method)?,
                Command::Det { method } => cmd_det(&setup, common, *method)?,
                Command::Rank => cmd_rank(&setup, common)?,
                Command::Dims => cmd_dims(&setup, common)?,
                Command::RadicalSeries => cmd_series(&setup, common)?,
                Command::Decomp => cmd_matrix(&setup, common, false)?,
                Command::Cartan => cmd_matrix(&setup, common, true)?,
                Command::Blocks { dot } => {
                    let r = cmd_blocks(&setup)?;
                    if *dot {
                        return Ok(r.dot.unwrap_or_default());
                    }
                    r
                }
                Command::Multiply { .. } | Command::Check { .. } => unreachable!(),
            }
        }
    };
    emit(report, common.format)
}

fn emit(report: Report, format: Format) -> Outcome<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&report.json).expect("serialisable") + "\n"),
        Format::Text => Ok(report.text),
        Format::Csv => report.csv.ok_or_else(|| Failure::input("csv output is not available for this command")),
        Format::Dot => report.dot.ok_or_else(|| Failure::input("dot output is only available for `blocks`")),
    }
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

fn cmd_basis(setup: &Setup, common: &Common) -> Outcome<Report> {
    let (kind, items): (&str, Vec<String>) = match setup.weight(common)? {
        Some(w) => ("cell", enumerate_delta_basis(&w)?.iter().map(ToString::to_string).collect()),
        None => ("algebra", enumerate_bubble_basis(setup.n, setup.m).iter().map(ToString::to_string).collect()),
    };
    let mut json = json!({ "n": setup.n, "m": setup.m, "kind": kind, "count": items.len(), "elements": items });
    if let Some(w) = setup.weight(common)? {
        json["lambda"] = json!(w.to_string());
    }
    let table = Table {
        columns: vec!["index", "element"],
        rows: items.iter().enumerate().map(|(i, s)| vec![i.to_string(), s.clone()]).collect(),
    };
    Ok(Report::new(json, lines(&items)).with_csv(table.csv()))
}

fn read_diagrams(inputs: &[PathBuf]) -> Outcome<(ColouredDiagram, ColouredDiagram)> {
    let read = |p: &PathBuf| -> Outcome<String> {
        if p.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(p).map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display())))
        }
    };
    let texts: Vec<String> = match inputs.len() {
        0 => vec![read(&PathBuf::from("-"))?],
        1 | 2 => inputs.iter().map(read).collect::<Outcome<_>>()?,
        k => return Err(Failure::input(format!("multiply takes at most two files, got {k}"))),
    };
    let diagrams: Vec<ColouredDiagram> = texts
        .iter()
        .flat_map(|t| t.lines())
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect::<Result<_, Error>>()?;
    match <[ColouredDiagram; 2]>::try_from(diagrams) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(Failure::input(format!("expected exactly two diagrams, found {}", v.len()))),
    }
}

fn cmd_multiply(inputs: &[PathBuf], common: &Common) -> Outcome<Report> {
    let (a, b) = read_diagrams(inputs)?;
    if a.n() != b.n() || a.m() != b.m() {
        return Err(Failure::input(format!(
            "diagrams belong to different algebras: n={} m={} and n={} m={}",
            a.n(),
            a.m(),
            b.n(),
            b.m()
        )));
    }
    let product = multiply(&a, &b)?;
    let (coefficient, diagram) = match &product {
        ScaledDiagram::Zero => ("0".to_string(), None),
        ScaledDiagram::Term(c, d) => (c.to_string(), Some(d.to_string())),
    };
    let mut json = json!({ "coefficient": coefficient, "diagram": diagram });
    let mut text = match &diagram {
        Some(d) => format!("{coefficient} * [{d}]\n"),
        None => "0\n".to_string(),
    };
    if !common.delta.is_empty() {
        let params = ParameterSpec::parse_list(&common.delta)?;
        params.check_colours(a.m())?;
        if let (ScaledDiagram::Term(c, _), Ok(s)) = (&product, Specialization::new(&params)) {
            let v = s.evaluate(c)?;
            json["value"] = json!(v.to_string());
            json["field"] = json!(s.field().to_string());
            text.push_str(&format!("value {v}\n"));
        }
    }
    Ok(Report::new(json, text))
}

/// Labels for Gram rows: the basis states.
fn state_labels(w: &WeightLambda) -> Outcome<Vec<String>> {
    Ok(enumerate_delta_basis(w)?.iter().map(ToString::to_string).collect())
}

fn laurent_grid(
    m: &ExactMatrix<LaurentScalar>,
    spec: Option<&Specialization>,
    labels: Option<Vec<String>>,
) -> Outcome<Grid> {
    let rows: Vec<Vec<String>> = match spec {
        None => m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        Some(s) => m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| s.evaluate(x).map(|v| v.to_string())).collect())
            .collect::<Result<_, Error>>()?,
    };
    Ok(match labels {
        Some(l) => Grid::new(l.clone(), l, &rows),
        None => Grid::indexed(&rows),
    })
}

fn field_note(spec: Option<&Specialization>) -> Value {
    spec.map_or(Value::Null, |s| json!(s.field().to_string()))
}

fn cmd_gram(setup: &Setup, common: &Common, method: GramMethod) -> Outcome<Report> {
    let w = setup.require_weight(common)?;
    let spec = setup.specialised();
    match method {
        GramMethod::Direct => {
            let g = gram_direct(&w)?;
            let grid = laurent_grid(&g, spec.as_ref(), Some(state_labels(&w)?))?;
            let mut json = grid.json();
            json["lambda"] = json!(w.to_string());
            json["field"] = field_note(spec.as_ref());
            Ok(Report::new(json, grid.text()).with_csv(grid.csv()))
        }
        GramMethod::Factorized => {
            let r = gram_factorized(&w)?;
            let mut text = format!("lambda {w}, dim {}\n", r.dim());
            let mut blocks = Vec::new();
            for (k, b) in r.blocks.iter().enumerate() {
                let factors =
                    b.factors.iter().map(|f| laurent_grid(f, spec.as_ref(), None)).collect::<Outcome<Vec<_>>>()?;
                text.push_str(&format!(
                    "block {k}: u={:?} mu={:?} multiplicity {} factor dims {:?}\n",
                    b.u,
                    b.mu,
                    b.multiplicity,
                    b.factor_dims()
                ));
                for (j, f) in factors.iter().enumerate() {
                    text.push_str(&format!("  colour {j}:\n"));
                    for line in f.text().lines() {
                        text.push_str(&format!("    {line}\n"));
                    }
                }
                blocks.push(json!({
                    "u": b.u,
                    "mu": b.mu,
                    "multiplicity": b.multiplicity,
                    "factor_dims": b.factor_dims(),
                    "factors": factors.iter().map(Grid::json).collect::<Vec<_>>(),
                }));
            }
            let word_order: Vec<Value> =
                r.word_order.iter().map(|(word, k)| json!({ "word": word, "block": k })).collect();
            let json = json!({
                "lambda": w.to_string(),
                "dim": r.dim(),
                "field": field_note(spec.as_ref()),
                "blocks": blocks,
                "word_order": word_order,
            });
            Ok(Report::new(json, text))
        }
    }
}

fn symbolic_limit() -> Outcome<usize> {
    match std::env::var("BUBBLE_MAX_SYMBOLIC_DIM") {
        Err(_) => Ok(DEFAULT_MAX_SYMBOLIC_DIM),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("BUBBLE_MAX_SYMBOLIC_DIM must be a non-negative integer, got {s:?}"))),
    }
}

fn cmd_det(setup: &Setup, common: &Common, method: DetMethod) -> Outcome<Report> {
    let w = setup.require_weight(common)?;
    let dim = dim_delta(&w);
    let spec = setup.specialised();
    let symbolic = match method {
        DetMethod::Formula => gram_det(&w)?,
        DetMethod::Direct if spec.is_some() => LaurentScalar::zero(setup.m),
        DetMethod::Direct => determinant_symbolic(&gram_direct(&w)?, symbolic_limit()?)?,
    };
    let value = match (&spec, method) {
        (None, _) => None,
        (Some(_), DetMethod::Direct) => Some(determinant(&specialize(&gram_direct(&w)?, &setup.params)?)?),
        (Some(s), DetMethod::Formula) => Some(s.evaluate(&symbolic)?),
    };
    let shown = match (&value, method) {
        (Some(_), DetMethod::Direct) => Value::Null,
        _ => json!(symbolic.to_string()),
    };
    let json = json!({
        "lambda": w.to_string(),
        "dim": dim,
        "determinant": shown,
        "value": value.as_ref().map(ToString::to_string),
        "field": field_note(spec.as_ref()),
    });
    let text = match &value {
        Some(v) => format!("{v}\n"),
        None => format!("{symbolic}\n"),
    };
    Ok(Report::new(json, text))
}

fn cmd_rank(setup: &Setup, common: &Common) -> Outcome<Report> {
    if let Some(j) = setup.params.params().iter().position(|p| matches!(p, bubble_core::Param::Generic)) {
        return Err(Error::GenericParameter { colour: j }.into());
    }
    let orders = setup.params.orders()?;
    let mut rows = Vec::new();
    for w in setup.weights(common)? {
        let g = specialize(&gram_direct(&w)?, &setup.params)?;
        let r = rank(&g)?;
        let h = dim_head(&w, &orders)?;
        rows.push(vec![w.to_string(), g.rows().to_string(), r.to_string(), h.to_string()]);
    }
    let t = Table { columns: vec!["lambda", "dim", "rank", "head"], rows };
    Ok(Report::new(t.json(), t.text()).with_csv(t.csv()))
}

fn cmd_dims(setup: &Setup, common: &Common) -> Outcome<Report> {
    let orders = setup.params.orders()?;
    let mut rows = Vec::new();
    for w in setup.weights(common)? {
        rows.push(vec![
            w.to_string(),
            dim_delta(&w).to_string(),
            dim_head(&w, &orders)?.to_string(),
            dim_radical(&w, &orders)?.to_string(),
        ]);
    }
    let t = Table { columns: vec!["lambda", "cell", "head", "radical"], rows };
    Ok(Report::new(t.json(), t.text()).with_csv(t.csv()))
}

fn cmd_series(setup: &Setup, common: &Common) -> Outcome<Report> {
    let orders = setup.params.orders()?;
    let mut out = Vec::new();
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    for w in setup.weights(common)? {
        let layers = radical_series(&w, &orders)?;
        let named: Vec<Vec<String>> = layers.iter().map(|l| l.iter().map(ToString::to_string).collect()).collect();
        let parts: Vec<String> = named.iter().map(|l| format!("[{}]", l.join(", "))).collect();
        text.push_str(&format!("{w}: {}\n", parts.join(" ")));
        for (k, l) in named.iter().enumerate() {
            for x in l {
                csv_rows.push(vec![w.to_string(), k.to_string(), x.clone()]);
            }
        }
        out.push(json!({ "lambda": w.to_string(), "layers": named }));
    }
    let t = Table { columns: vec!["lambda", "layer", "factor"], rows: csv_rows };
    Ok(Report::new(Value::Array(out), text).with_csv(t.csv()))
}

fn weight_order(setup: &Setup, order: Order) -> Outcome<WeightOrder> {
    Ok(match order {
        Order::Default => WeightOrder::Default,
        Order::Blocks => WeightOrder::BlockGrouped,
        Order::Paper62 => {
            if setup.n != 6 || setup.m != 2 {
                return Err(Failure::input("--order paper-6-2 needs -n 6 -m 2"));
            }
            WeightOrder::Explicit(
                ORDER_6_2.iter().map(|l| WeightLambda::new(6, l.to_vec())).collect::<Result<_, Error>>()?,
            )
        }
    })
}

fn cmd_matrix(setup: &Setup, common: &Common, cartan: bool) -> Outcome<Report> {
    let d: DecompositionMatrix =
        decomposition_matrix(setup.n, setup.m, &setup.params, &weight_order(setup, common.order)?)?;
    let labels: Vec<String> = d.weights().iter().map(ToString::to_string).collect();
    let full = if cartan { d.cartan() } else { d.entries().to_vec() };
    let grid = Grid::new(labels.clone(), labels.clone(), &full).numeric();
    let block_json: Vec<Value> = d
        .blocks()
        .iter()
        .map(|idx| {
            let names: Vec<String> = idx.iter().map(|&i| labels[i].clone()).collect();
            let sub: Vec<Vec<u32>> = idx.iter().map(|&i| idx.iter().map(|&j| full[i][j]).collect()).collect();
            Grid::new(names.clone(), names, &sub).numeric().json()
        })
        .collect();
    let mut json = grid.json();
    json["blocks"] = Value::Array(block_json);
    Ok(Report::new(json, grid.text()).with_csv(grid.csv()))
}

fn cmd_blocks(setup: &Setup) -> Outcome<Report> {
    let b = blocks(setup.n, setup.m, &setup.params)?;
    let names = |v: &[WeightLambda]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let arrows: Vec<Value> =
        b.arrows.iter().map(|(x, y)| json!({ "from": x.to_string(), "to": y.to_string() })).collect();
    let json = json!({
        "blocks": b.blocks.iter().map(|x| names(x)).collect::<Vec<_>>(),
        "arrows": arrows,
    });
    let text: String = b.blocks.iter().map(|x| format!("{{{}}}\n", names(x).join(", "))).collect();
    let t = Table {
        columns: vec!["block", "lambda"],
        rows: b
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(k, x)| x.iter().map(move |w| vec![k.to_string(), w.to_string()]))
            .collect(),
    };
    Ok(Report::new(json, text).with_csv(t.csv()).with_dot(b.to_dot()))
}

fn cmd_check(common: &Common, seed: u64) -> Outcome<String> {
    let setup = Setup::from(common)?;
    let reports: Vec<CheckReport> = run_suite(setup.n, setup.m, &setup.params, seed, symbolic_limit()?);
    let failed = reports.iter().filter(|r| r.outcome.is_err()).count();
    let json: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "check": r.name, "passed": r.outcome.is_ok(), "detail": r.outcome.as_ref().err() }))
        .collect();
    let text: String = reports
        .iter()
        .map(|r| match &r.outcome {
            Ok(()) => format!("PASS {}\n", r.name),
            Err(e) => format!("FAIL {}: {e}\n", r.name),
        })
        .collect();
    let t = Table {
        columns: vec!["check", "passed"],
        rows: reports.iter().map(|r| vec![r.name.clone(), r.outcome.is_ok().to_string()]).collect(),
    };
    let report = Report::new(
        json!({ "n": setup.n, "m": setup.m, "params": setup.params.to_string(), "results": json, "failed": failed }),
        text,
    )
    .with_csv(t.csv());
    let out = emit(report, common.format)?;
    if failed > 0 {
        return Err(Failure { code: 1, message: format!("{failed} invariant check(s) failed"), stdout: Some(out) });
    }
    Ok(out)
}
