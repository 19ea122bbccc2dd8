mod table;

use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;

use blowup_betti::betti::{gen_fun_enumeration, gen_fun_product};
use blowup_betti::laurent::series_to_hodge;
use blowup_betti::{
    enumerate_partitions, fixed_point_exponent, merge, morse_index, poincare_polynomial_with, split,
    tangent_character, verify_identity, DiagramPair, Error, Execution, FamilyParams, FixedPoint, Grading,
    LaurentPoly, MarkedDiagram, ModuliParams, Partition, PoincareMethod, QExp, Suite, VerifyRequest,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use table::Table;

const DEFAULT_MAX_BOXES: usize = 16;
const DEFAULT_MAX_ORDER: i64 = 12;

#[derive(Parser)]
#[command(name = "blowup-betti", version, about = "Betti numbers of framed moduli on the blown-up plane")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Raise the box-count and truncation-order safety bound to K.
    #[arg(long, value_name = "K", global = true)]
    max_size: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Partitions of n in lexicographic order of column heights.
    Partitions {
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long)]
        max_columns: Option<usize>,
    },
    /// Torus fixed points of one moduli space.
    FixedPoints(ModuliArgs),
    /// Poincaré polynomial of one moduli space.
    Betti {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long, default_value = "closed")]
        method: PoincareMethod,
        /// Compute with all three methods and fail unless they agree.
        #[arg(long)]
        check_all: bool,
    },
    /// Tangent character at a fixed point given slot by slot.
    Character {
        /// Column heights of one slot; repeat for higher rank.
        #[arg(long, required = true, allow_hyphen_values = true)]
        diagram: Vec<String>,
        /// 1-based marked columns of the matching slot.
        #[arg(long)]
        marks: Vec<String>,
    },
    /// Marked diagram to diagram pair, or back with --inverse.
    Bijection {
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        marks: Option<String>,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        y1: Option<String>,
        #[arg(long)]
        y2: Option<String>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Truncated generating series of a family.
    Series {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_rational)]
        order: QExp,
        #[arg(long, value_enum, default_value_t = Side::Enumeration)]
        side: Side,
        #[arg(long, default_value = "closed")]
        method: PoincareMethod,
        /// Rewrite t^(2j) as u^j.
        #[arg(long)]
        hodge: bool,
        /// Also compute the enumeration side with every method and the
        /// product side, and fail unless all agree.
        #[arg(long)]
        check_all: bool,
    },
    /// Check a generating-function identity to a truncation order.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value = "0", value_parser = parse_range::<usize>)]
        m: RangeInclusive<usize>,
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_range::<i64>)]
        c1c: RangeInclusive<i64>,
        #[arg(long, value_parser = parse_rational)]
        order: QExp,
        #[arg(long, default_value = "closed")]
        method: PoincareMethod,
        /// Repeat the check with every enumeration method.
        #[arg(long)]
        check_all: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    c1c: i64,
    #[arg(long, default_value_t = 0)]
    m: usize,
}

#[derive(Args, Clone, Copy)]
struct ModuliArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Rank 1 point count, c = 1 - N pt.
    #[arg(long = "N", value_name = "N", conflicts_with = "delta")]
    n: Option<usize>,
    /// Discriminant, e.g. 3/4.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    delta: Option<QExp>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Enumeration,
    Product,
}

fn parse_rational(s: &str) -> Result<QExp, String> {
    QExp::from_str(s.trim()).map_err(|_| format!("{s:?} is not an integer or p/q"))
}

fn parse_range<T: FromStr + PartialOrd + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let bad = || format!("{s:?} is not a value or an inclusive range a..b");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v: T = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("range {s:?} is empty"));
    }
    Ok(lo..=hi)
}

/// Failure that is not a usage error: a verification that did not pass.
struct Failed(Value, String);

enum Outcome {
    Done(Value, String),
    Fail(Failed),
}

struct Limits {
    boxes: usize,
    order: QExp,
}

impl Limits {
    fn new(max_size: Option<usize>) -> Self {
        match max_size {
            Some(k) => Limits { boxes: k, order: QExp::from_integer(k as i64) },
            None => Limits { boxes: DEFAULT_MAX_BOXES, order: QExp::from_integer(DEFAULT_MAX_ORDER) },
        }
    }

    fn check_boxes(&self, boxes: usize) -> Result<(), String> {
        if boxes > self.boxes {
            return Err(format!(
                "request needs {boxes} boxes per fixed point, above the bound {}; pass --max-size to raise it",
                self.boxes
            ));
        }
        Ok(())
    }

    fn check_order(&self, order: QExp) -> Result<(), String> {
        if order > self.order {
            return Err(format!(
                "order {order} is above the bound {}; pass --max-size to raise it",
                self.order
            ));
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match cli.jobs {
        Some(0) => return usage("--jobs must be at least 1"),
        Some(1) => Execution::Sequential,
        Some(n) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                return usage(&e.to_string());
            }
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let limits = Limits::new(cli.max_size);
    match run(cli.command, exec, &limits) {
        Ok(Outcome::Done(v, text)) => {
            emit(cli.format, &v, &text);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(Failed(v, text))) => {
            emit(cli.format, &v, &text);
            ExitCode::from(1)
        }
        Err(msg) => usage(&msg),
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(format: Format, v: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => print!("{text}"),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(command: Command, exec: Execution, limits: &Limits) -> Result<Outcome, String> {
    match command {
        Command::Partitions { n, max_columns } => {
            limits.check_boxes(n)?;
            partitions(n, max_columns)
        }
        Command::FixedPoints(args) => fixed_points(args, limits),
        Command::Betti { moduli, method, check_all } => betti(moduli, method, check_all, exec, limits),
        Command::Character { diagram, marks } => character(&diagram, &marks),
        Command::Bijection { diagram, marks, inverse, y1, y2, m } => {
            if inverse {
                bijection_inverse(y1, y2, m)
            } else {
                let d = diagram.ok_or("--diagram is required (or use --inverse)")?;
                bijection(&d, marks.as_deref().unwrap_or(""))
            }
        }
        Command::Series { family, order, side, method, hodge, check_all } => {
            limits.check_order(order)?;
            series(family, order, side, method, hodge, check_all, exec)
        }
        Command::Verify { suite, rank, m, c1c, order, method, check_all } => {
            limits.check_order(order)?;
            let mut req = VerifyRequest::new(suite, m, order);
            if suite == Suite::HigherRank {
                req.rank = rank;
            }
            req.c1c = c1c;
            req.method = method;
            req.exec = exec;
            verify(req, check_all)
        }
    }
}

fn partitions(n: usize, max_columns: Option<usize>) -> Result<Outcome, String> {
    let parts: Vec<String> = enumerate_partitions(n, max_columns).iter().map(|p| p.to_string()).collect();
    let mut t = Table::new(&["#", "columns"]);
    for (i, p) in parts.iter().enumerate() {
        t.row(vec![(i + 1).to_string(), p.clone()]);
    }
    let v = json!({ "N": n, "maxColumns": max_columns, "count": parts.len(), "partitions": parts });
    Ok(Outcome::Done(v, t.render()))
}

fn moduli_params(args: ModuliArgs) -> Result<ModuliParams, String> {
    let FamilyArgs { rank, c1c, m } = args.family;
    let grading = match (args.n, args.delta) {
        (Some(n), None) => Grading::PointCount(n),
        (None, Some(d)) => Grading::Discriminant(d),
        _ => return Err("exactly one of --N or --delta is required".into()),
    };
    ModuliParams::new(rank, c1c, m, grading).map_err(err)
}

fn params_json(p: &ModuliParams) -> Value {
    json!({
        "rank": p.family.rank,
        "c1c": p.family.c1c,
        "m": p.family.m,
        "delta": p.discriminant().to_string(),
        "boxBudget": p.box_budget(),
    })
}

fn fixed_point_json(fp: &FixedPoint) -> Value {
    let parts: Vec<Value> = fp
        .parts()
        .iter()
        .map(|d| json!({ "diagram": d.diagram().to_string(), "marks": d.marks_string() }))
        .collect();
    json!({ "parts": parts, "exponent": fixed_point_exponent(fp) })
}

fn fixed_points(args: ModuliArgs, limits: &Limits) -> Result<Outcome, String> {
    let params = moduli_params(args)?;
    if let Some(b) = params.box_budget() {
        limits.check_boxes(b)?;
    }
    let points = params.fixed_points();
    let mut t = Table::new(&["#", "fixed point", "exponent"]);
    for (i, fp) in points.iter().enumerate() {
        t.row(vec![(i + 1).to_string(), fp.to_string(), fixed_point_exponent(fp).to_string()]);
    }
    let v = json!({
        "params": params_json(&params),
        "count": points.len(),
        "fixedPoints": points.iter().map(fixed_point_json).collect::<Vec<_>>(),
    });
    Ok(Outcome::Done(v, t.render()))
}

/// `b_0, b_1, ...` read off a polynomial in `t`.
fn betti_numbers(p: &LaurentPoly) -> Vec<String> {
    let top = p.terms().map(|(e, _)| e[0]).max().unwrap_or(-1);
    (0..=top).map(|k| p.coeff(&[k]).to_string()).collect()
}

fn betti(args: ModuliArgs, method: PoincareMethod, check_all: bool, exec: Execution, limits: &Limits) -> Result<Outcome, String> {
    let params = moduli_params(args)?;
    if let Some(b) = params.box_budget() {
        limits.check_boxes(b)?;
    }
    let poly = poincare_polynomial_with(&params, method, exec).map_err(err)?;
    let mut v = json!({
        "params": params_json(&params),
        "method": method.to_string(),
        "poincare": poly.to_json_value(),
        "pretty": poly.to_string(),
        "bettiNumbers": betti_numbers(&poly),
        "eulerNumber": poly.eval_at_ones().to_string(),
    });
    let mut text = format!("P_t = {poly}\n");
    let mut t = Table::new(&["degree", "betti"]);
    for (k, b) in betti_numbers(&poly).into_iter().enumerate() {
        t.row(vec![k.to_string(), b]);
    }
    text.push_str(&t.render());
    if check_all {
        let mut agree = true;
        let mut all = serde_json::Map::new();
        for other in PoincareMethod::ALL {
            let p = poincare_polynomial_with(&params, other, exec).map_err(err)?;
            agree &= p == poly;
            text.push_str(&format!("{other}: {p}\n"));
            all.insert(other.to_string(), Value::String(p.to_string()));
        }
        v["checkAll"] = json!({ "status": if agree { "PASS" } else { "FAIL" }, "methods": all });
        if !agree {
            return Ok(Outcome::Fail(Failed(v, text)));
        }
    }
    Ok(Outcome::Done(v, text))
}

fn character(diagrams: &[String], marks: &[String]) -> Result<Outcome, String> {
    if !marks.is_empty() && marks.len() != diagrams.len() {
        return Err(format!("{} --diagram values but {} --marks values", diagrams.len(), marks.len()));
    }
    let parts = diagrams
        .iter()
        .enumerate()
        .map(|(i, d)| MarkedDiagram::parse(d, marks.get(i).map(String::as_str).unwrap_or("")))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let fp = FixedPoint::new(parts).map_err(err)?;
    let c = tangent_character(&fp).map_err(err)?;
    let (dim, index) = (c.dimension(), morse_index(&c));
    let v = json!({
        "fixedPoint": fixed_point_json(&fp),
        "character": c.poly().to_json_value(),
        "pretty": c.poly().to_string(),
        "dimension": dim,
        "morseIndex": index,
    });
    let text = format!("character  {}\ndimension  {dim}\nmorseIndex {index}\n", c.poly());
    Ok(Outcome::Done(v, text))
}

fn bijection(diagram: &str, marks: &str) -> Result<Outcome, String> {
    let d = MarkedDiagram::parse(diagram, marks).map_err(err)?;
    let p = split(&d);
    let v = json!({ "Y1": p.first.to_string(), "Y2": p.second.to_string(), "m": p.m });
    let text = format!("Y1 {}\nY2 {}\nm  {}\n", p.first, p.second, p.m);
    Ok(Outcome::Done(v, text))
}

fn bijection_inverse(y1: Option<String>, y2: Option<String>, m: Option<usize>) -> Result<Outcome, String> {
    let parse = |s: Option<String>| Partition::from_str(s.as_deref().unwrap_or("")).map_err(err);
    let m = m.ok_or("--m is required with --inverse")?;
    let p = DiagramPair::new(parse(y1)?, parse(y2)?, m).map_err(err)?;
    let d = merge(&p);
    let v = json!({ "diagram": d.diagram().to_string(), "marks": d.marks_string() });
    let text = format!("diagram {}\nmarks   {}\n", d.diagram(), d.marks_string());
    Ok(Outcome::Done(v, text))
}

fn series(
    args: FamilyArgs,
    order: QExp,
    side: Side,
    method: PoincareMethod,
    hodge: bool,
    check_all: bool,
    exec: Execution,
) -> Result<Outcome, String> {
    let family = FamilyParams::new(args.rank, args.c1c, args.m).map_err(err)?;
    let product = || gen_fun_product(&family, order).map_err(err);
    let s = match side {
        Side::Enumeration => gen_fun_enumeration(&family, order, method, exec).map_err(err)?,
        Side::Product => product()?,
    };
    let shown = if hodge { series_to_hodge(&s).map_err(err)? } else { s.clone() };
    let mut v = json!({
        "params": { "rank": family.rank, "c1c": family.c1c, "m": family.m },
        "side": match side { Side::Enumeration => "enumeration", Side::Product => "product" },
        "series": shown.to_json_value(),
        "pretty": shown.to_string(),
    });
    let mut t = Table::new(&["q", "coefficient"]);
    for (q, p) in shown.iter() {
        t.row(vec![q.to_string(), p.to_string()]);
    }
    let mut text = t.render();
    if check_all {
        let mut agree = product()? == s;
        for other in PoincareMethod::ALL {
            agree &= gen_fun_enumeration(&family, order, other, exec).map_err(err)? == s;
        }
        let status = if agree { "PASS" } else { "FAIL" };
        v["checkAll"] = Value::String(status.into());
        text.push_str(&format!("check-all {status}\n"));
        if !agree {
            return Ok(Outcome::Fail(Failed(v, text)));
        }
    }
    Ok(Outcome::Done(v, text))
}

fn verify(req: VerifyRequest, check_all: bool) -> Result<Outcome, String> {
    let methods: Vec<PoincareMethod> = if check_all { PoincareMethod::ALL.to_vec() } else { vec![req.method] };
    let mut reports = Vec::new();
    for method in methods {
        let mut r = req.clone();
        r.method = method;
        reports.push(verify_identity(&r).map_err(err)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let mut t = Table::new(&["suite", "method", "cases", "status", "first mismatch", "ms"]);
    for r in &reports {
        t.row(vec![
            r.request.suite.to_string(),
            r.request.method.to_string(),
            r.cases_checked.to_string(),
            if r.passed() { "PASS" } else { "FAIL" }.into(),
            r.first_mismatch
                .as_ref()
                .map(|c| format!("m={} c1c={} q^{} ({})", c.family.m, c.family.c1c, c.mismatch.q, c.check))
                .unwrap_or_else(|| "-".into()),
            r.elapsed_ms.to_string(),
        ]);
    }
    let v = if reports.len() == 1 {
        reports[0].to_json_value()
    } else {
        json!({
            "status": if passed { "PASS" } else { "FAIL" },
            "reports": reports.iter().map(|r| r.to_json_value()).collect::<Vec<_>>(),
        })
    };
    if passed {
        Ok(Outcome::Done(v, t.render()))
    } else {
        Ok(Outcome::Fail(Failed(v, t.render())))
    }
}
