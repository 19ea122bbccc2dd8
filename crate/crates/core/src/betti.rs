//! Poincaré polynomials of the moduli spaces and their generating functions.
//!
//! Three independent routes produce the Poincaré polynomial of one moduli
//! space:
//!
//! * [`PoincareMethod::Closed`] sums the closed exponent of each fixed point,
//!   read off from its image under [`split`];
//! * [`PoincareMethod::Morse`] counts negative weights of the tangent
//!   character at each fixed point;
//! * [`PoincareMethod::Pairs`] enumerates tuples of diagram pairs directly,
//!   never constructing a marked diagram.
//!
//! Generating functions are graded by the discriminant `Δ`, whose values lie
//! in `(1/2r)Z`. For a fixed rank `r`, total mark count `M = r*m + (c1,[C])`
//! and box count `B`, the discriminant is `B - M/2 - M^2/(2r)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::character::{morse_index, tangent_character};
use crate::diagram::enumerate_partitions;
use crate::error::Error;
use crate::exec::Execution;
use crate::laurent::{
    capped_product, FactorRange, GeometricFactor, LaurentPoly, Mismatch, QExp, QSeries, SeriesContext,
};
use crate::marked::{enumerate_fixed_points, split, FixedPoint};

/// Grading of a single moduli space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Rank 1 only: `c = 1 - N pt`, so `Δ = N`.
    PointCount(usize),
    /// The discriminant `Δ(c)`.
    Discriminant(QExp),
}

/// Rank, `(c1,[C])` and stability index, without a grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub rank: usize,
    pub c1c: i64,
    pub m: usize,
}

impl FamilyParams {
    pub fn new(rank: usize, c1c: i64, m: usize) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidParams("rank must be at least 1".into()));
        }
        Ok(FamilyParams { rank, c1c, m })
    }

    /// `M = sum_a m_a = r*m + (c1,[C])`, the number of marked boxes at every
    /// fixed point.
    pub fn total_marks(&self) -> i64 {
        self.rank as i64 * self.m as i64 + self.c1c
    }

    /// Denominator of all discriminants in this family.
    pub fn denom(&self) -> i64 {
        if self.rank == 1 {
            1
        } else {
            2 * self.rank as i64
        }
    }

    /// Discriminant of the moduli space whose fixed points have `boxes` boxes.
    pub fn discriminant_of_boxes(&self, boxes: usize) -> QExp {
        let marks = self.total_marks();
        let r = self.rank as i64;
        QExp::from_integer(boxes as i64) - QExp::new(marks, 2) - QExp::new(marks * marks, 2 * r)
    }

    /// Box count for a discriminant, if it is a nonnegative integer.
    pub fn boxes_of_discriminant(&self, delta: QExp) -> Option<usize> {
        let marks = self.total_marks();
        if marks < 0 {
            return None;
        }
        let r = self.rank as i64;
        let boxes = delta + QExp::new(marks, 2) + QExp::new(marks * marks, 2 * r);
        (boxes.is_integer() && boxes >= QExp::zero()).then(|| boxes.to_integer() as usize)
    }

    pub fn with_grading(self, grading: Grading) -> Result<ModuliParams, Error> {
        ModuliParams::new(self.rank, self.c1c, self.m, grading)
    }
}

/// Parameters of one moduli space `M^m(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuliParams {
    pub family: FamilyParams,
    pub grading: Grading,
}

impl ModuliParams {
    pub fn new(rank: usize, c1c: i64, m: usize, grading: Grading) -> Result<Self, Error> {
        let family = FamilyParams::new(rank, c1c, m)?;
        if matches!(grading, Grading::PointCount(_)) && rank != 1 {
            return Err(Error::InvalidParams(
                "a point count N grades rank 1 only; use a discriminant".into(),
            ));
        }
        if let Grading::Discriminant(d) = grading {
            if !(d * family.denom()).is_integer() {
                return Err(Error::InvalidParams(format!(
                    "discriminant {d} is not a multiple of 1/{}",
                    family.denom()
                )));
            }
        }
        Ok(ModuliParams { family, grading })
    }

    /// Rank 1, `c1 = 0`, `c = 1 - N pt`.
    pub fn rank1(m: usize, n: usize) -> Self {
        ModuliParams {
            family: FamilyParams { rank: 1, c1c: 0, m },
            grading: Grading::PointCount(n),
        }
    }

    pub fn discriminant(&self) -> QExp {
        match self.grading {
            Grading::PointCount(n) => QExp::from_integer(n as i64),
            Grading::Discriminant(d) => d,
        }
    }

    /// Total number of boxes at each fixed point, or `None` if the moduli
    /// space has no fixed points.
    pub fn box_budget(&self) -> Option<usize> {
        self.family.boxes_of_discriminant(self.discriminant())
    }

    pub fn fixed_points(&self) -> Vec<FixedPoint> {
        match self.box_budget() {
            Some(b) => enumerate_fixed_points(self.family.rank, self.family.total_marks(), b, &[]),
            None => Vec::new(),
        }
    }
}

/// Half the t-degree contributed by a fixed point:
/// `sum_a (r(|Y1_a| + |Y2_a|) - a l(Y1_a)) + sum_{a<b} (m_a - m_b)(m_a - m_b - 1)/2`
/// with slots numbered from 1.
pub fn fixed_point_exponent(fp: &FixedPoint) -> u64 {
    let r = fp.rank() as i64;
    let pairs: Vec<_> = fp.parts().iter().map(split).collect();
    let marks: Vec<i64> = pairs.iter().map(|p| p.m as i64).collect();
    pair_exponent(
        r,
        pairs.iter().map(|p| (p.size() as i64, p.first.num_columns() as i64)),
        &marks,
    )
}

/// The same exponent from per-slot `(|Y1|+|Y2|, l(Y1))` and mark counts.
fn pair_exponent(r: i64, slots: impl Iterator<Item = (i64, i64)>, marks: &[i64]) -> u64 {
    let mut total: i64 = slots
        .enumerate()
        .map(|(i, (size, cols))| r * size - (i as i64 + 1) * cols)
        .sum();
    for a in 0..marks.len() {
        for b in a + 1..marks.len() {
            let d = marks[a] - marks[b];
            total += d * (d - 1) / 2;
        }
    }
    debug_assert!(total >= 0);
    total as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoincareMethod {
    Closed,
    Morse,
    Pairs,
}

impl PoincareMethod {
    pub const ALL: [PoincareMethod; 3] = [PoincareMethod::Closed, PoincareMethod::Morse, PoincareMethod::Pairs];
}

impl FromStr for PoincareMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "closed" => Ok(PoincareMethod::Closed),
            "morse" => Ok(PoincareMethod::Morse),
            "pairs" => Ok(PoincareMethod::Pairs),
            _ => Err(Error::Parse(format!("unknown method {s:?} (closed|morse|pairs)"))),
        }
    }
}

impl fmt::Display for PoincareMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoincareMethod::Closed => "closed",
            PoincareMethod::Morse => "morse",
            PoincareMethod::Pairs => "pairs",
        })
    }
}

fn t_power_sum(exponents: impl IntoIterator<Item = u64>) -> LaurentPoly {
    let mut p = LaurentPoly::zero(&["t"]);
    for e in exponents {
        p.add_term(vec![2 * e as i64], BigInt::one());
    }
    p
}

/// Poincaré polynomial in `t` (default execution).
pub fn poincare_polynomial(params: &ModuliParams, method: PoincareMethod) -> Result<LaurentPoly, Error> {
    poincare_polynomial_with(params, method, Execution::default())
}

pub fn poincare_polynomial_with(
    params: &ModuliParams,
    method: PoincareMethod,
    exec: Execution,
) -> Result<LaurentPoly, Error> {
    match method {
        PoincareMethod::Closed => {
            let points = params.fixed_points();
            Ok(t_power_sum(exec.map(&points, fixed_point_exponent)))
        }
        PoincareMethod::Morse => {
            let points = params.fixed_points();
            let indices = exec.try_map(&points, |fp| tangent_character(fp).map(|c| morse_index(&c)))?;
            Ok(t_power_sum(indices))
        }
        PoincareMethod::Pairs => Ok(t_power_sum(pair_tuple_exponents(params))),
    }
}

/// Compositions of `total` into `parts` nonnegative integers, lexicographic.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            go(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// `(k,k)/2 = sum_{a<b} (k_a - k_b)^2 / (2r)`; differences of `k` equal those
/// of the mark vector.
fn mark_offset(marks: &[usize]) -> QExp {
    let r = marks.len() as i64;
    let mut sq = 0i64;
    for a in 0..marks.len() {
        for b in a + 1..marks.len() {
            let d = marks[a] as i64 - marks[b] as i64;
            sq += d * d;
        }
    }
    QExp::new(sq, 2 * r)
}

/// Exponents over all tuples `(m_a, Y1_a, Y2_a)` with `Y2_a` having at most
/// `m_a` columns, built without marked diagrams.
fn pair_tuple_exponents(params: &ModuliParams) -> Vec<u64> {
    let family = params.family;
    let r = family.rank;
    let marks_total = family.total_marks();
    let mut out = Vec::new();
    if marks_total < 0 {
        return out;
    }
    for marks in compositions(marks_total as usize, r) {
        let n = params.discriminant() - mark_offset(&marks);
        if !n.is_integer() || n < QExp::zero() {
            continue;
        }
        let n = n.to_integer() as usize;
        let marks_i: Vec<i64> = marks.iter().map(|&x| x as i64).collect();
        let mut slots: Vec<(i64, i64)> = Vec::with_capacity(r);
        collect_pair_tuples(0, n, &marks, &mut slots, &mut |slots| {
            out.push(pair_exponent(r as i64, slots.iter().copied(), &marks_i));
        });
    }
    out
}

fn collect_pair_tuples(
    slot: usize,
    left: usize,
    marks: &[usize],
    slots: &mut Vec<(i64, i64)>,
    emit: &mut dyn FnMut(&[(i64, i64)]),
) {
    if slot == marks.len() {
        if left == 0 {
            emit(slots);
        }
        return;
    }
    for first_size in 0..=left {
        let firsts = enumerate_partitions(first_size, None);
        for second_size in 0..=left - first_size {
            let seconds = enumerate_partitions(second_size, Some(marks[slot])).len();
            for y1 in &firsts {
                for _ in 0..seconds {
                    slots.push(((first_size + second_size) as i64, y1.num_columns() as i64));
                    collect_pair_tuples(slot + 1, left - first_size - second_size, marks, slots, emit);
                    slots.pop();
                }
            }
        }
    }
}

/// Series context for a family: variable `t`, denominator `2r` (1 for rank 1).
pub fn family_context(family: &FamilyParams, order: QExp) -> SeriesContext {
    SeriesContext::new(&["t"], family.denom(), order)
}

/// `sum_Δ P_t(M^m(c)) q^Δ` over all discriminants below `order`, by
/// enumerating fixed points.
pub fn gen_fun_enumeration(
    family: &FamilyParams,
    order: QExp,
    method: PoincareMethod,
    exec: Execution,
) -> Result<QSeries, Error> {
    let ctx = family_context(family, order);
    let mut series = QSeries::zero(&ctx);
    let marks = family.total_marks();
    if marks < 0 {
        return Ok(series);
    }
    let min_boxes = (QExp::new(marks, 2) + QExp::new(marks * marks, 2 * family.rank as i64))
        .ceil()
        .to_integer() as usize;
    for boxes in min_boxes.. {
        let delta = family.discriminant_of_boxes(boxes);
        if delta >= order {
            break;
        }
        let params = family.with_grading(Grading::Discriminant(delta))?;
        let p = poincare_polynomial_with(&params, method, exec)?;
        series.add_to_coeff(delta, &p)?;
    }
    Ok(series)
}

fn t_monomial(exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(&["t"], &[exp], 1)
}

fn geometric(t_exp: i64, q_exp: usize) -> GeometricFactor {
    GeometricFactor {
        coef: t_monomial(t_exp),
        q_exp: QExp::from_integer(q_exp as i64),
    }
}

/// `prod_{d=1}^{upto} 1 / (1 - t^(2rd) q^d)`: the factors gained by one slot
/// when its mark count grows.
pub fn wall_factors(ctx: &SeriesContext, rank: usize, upto: usize) -> Result<QSeries, Error> {
    let r = rank as i64;
    capped_product(ctx, FactorRange::UpTo(upto), |d| geometric(2 * r * d as i64, d))
}

/// The closed product formula for `sum_Δ P_t q^Δ`, summed over
/// `k_a >= -m` with `sum k_a = (c1,[C])`.
pub fn gen_fun_product(family: &FamilyParams, order: QExp) -> Result<QSeries, Error> {
    let ctx = family_context(family, order);
    let r = family.rank as i64;
    let marks_total = family.total_marks();
    let mut total = QSeries::zero(&ctx);
    if marks_total < 0 {
        return Ok(total);
    }
    let mut base = QSeries::one(&ctx);
    for alpha in 1..=r {
        let slot = capped_product(&ctx, FactorRange::Unbounded, |d| geometric(2 * (r * d as i64 - alpha), d))?;
        base = base.mul(&slot)?;
    }
    for marks in compositions(marks_total as usize, family.rank) {
        let offset = mark_offset(&marks);
        if offset >= order {
            continue;
        }
        let k: Vec<i64> = marks.iter().map(|&x| x as i64 - family.m as i64).collect();
        let mut t_exp = 0i64;
        for a in 0..k.len() {
            for b in a + 1..k.len() {
                let d = k[a] - k[b];
                t_exp += d * d - d;
            }
        }
        let mut term = QSeries::monomial(&ctx, offset, t_monomial(t_exp))?.mul(&base)?;
        for &ma in &marks {
            term = term.mul(&wall_factors(&ctx, family.rank, ma)?)?;
        }
        total = total.add(&term)?;
    }
    Ok(total)
}

/// `prod_{d>=1} 1/(1 - t^(2d-2) q^d) * prod_{d=1}^{upto} 1/(1 - t^(2d) q^d)`.
pub fn gottsche_blowup_series(order: QExp, upto: FactorRange) -> Result<QSeries, Error> {
    let ctx = SeriesContext::new(&["t"], 1, order);
    let plane = capped_product(&ctx, FactorRange::Unbounded, |d| geometric(2 * d as i64 - 2, d))?;
    let exceptional = capped_product(&ctx, upto, |d| geometric(2 * d as i64, d))?;
    plane.mul(&exceptional)
}

/// Which identity [`verify_identity`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Rank 1: enumeration against the product formula.
    Rank1,
    /// Any rank: enumeration against the `k`-sum product formula.
    HigherRank,
    /// Rank 1: enumeration against the two-factor infinite product.
    Gottsche,
    /// Rank 1: crossing one wall multiplies by `1/(1 - t^(2(m+1)) q^(m+1))`.
    WallRatio,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rank1" => Ok(Suite::Rank1),
            "higherrank" => Ok(Suite::HigherRank),
            "gottsche" => Ok(Suite::Gottsche),
            "wallRatio" | "wallratio" | "wall-ratio" => Ok(Suite::WallRatio),
            _ => Err(Error::Parse(format!(
                "unknown suite {s:?} (rank1|higherrank|gottsche|wallRatio)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Rank1 => "rank1",
            Suite::HigherRank => "higherrank",
            Suite::Gottsche => "gottsche",
            Suite::WallRatio => "wallRatio",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyRequest {
    pub suite: Suite,
    pub rank: usize,
    pub m: RangeInclusive<usize>,
    pub c1c: RangeInclusive<i64>,
    pub order: QExp,
    pub method: PoincareMethod,
    pub exec: Execution,
}

impl VerifyRequest {
    pub fn new(suite: Suite, m: RangeInclusive<usize>, order: QExp) -> Self {
        VerifyRequest {
            suite,
            rank: if suite == Suite::HigherRank { 2 } else { 1 },
            m,
            c1c: 0..=0,
            order,
            method: PoincareMethod::Closed,
            exec: Execution::default(),
        }
    }
}

/// One failed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMismatch {
    pub family: FamilyParams,
    pub check: &'static str,
    pub mismatch: Mismatch,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub request: VerifyRequest,
    pub cases_checked: usize,
    pub first_mismatch: Option<CaseMismatch>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let req = &self.request;
        json!({
            "suite": req.suite.to_string(),
            "params": {
                "rank": req.rank,
                "m": format!("{}..{}", req.m.start(), req.m.end()),
                "c1c": format!("{}..{}", req.c1c.start(), req.c1c.end()),
                "method": req.method.to_string(),
                "cases": self.cases_checked,
            },
            "order": req.order.to_string(),
            "status": if self.passed() { "PASS" } else { "FAIL" },
            "firstMismatch": self.first_mismatch.as_ref().map(|c| json!({
                "rank": c.family.rank,
                "c1c": c.family.c1c,
                "m": c.family.m,
                "check": c.check,
                "q": c.mismatch.q.to_string(),
                "lhs": c.mismatch.lhs.to_json_value(),
                "rhs": c.mismatch.rhs.to_json_value(),
            })),
            "elapsedMs": self.elapsed_ms as u64,
        })
    }
}

/// Compares the two sides of a generating-function identity coefficient by
/// coefficient for every parameter set in the request.
pub fn verify_identity(req: &VerifyRequest) -> Result<VerifyReport, Error> {
    let start = Instant::now();
    let rank = match req.suite {
        Suite::HigherRank => req.rank,
        _ => 1,
    };
    let mut cases = 0;
    let mut first_mismatch = None;
    'outer: for c1c in req.c1c.clone() {
        for m in req.m.clone() {
            let family = FamilyParams::new(rank, c1c, m)?;
            let enumerated = gen_fun_enumeration(&family, req.order, req.method, req.exec)?;
            let checks: Vec<(&'static str, QSeries, QSeries)> = match req.suite {
                Suite::Rank1 | Suite::HigherRank => {
                    vec![("enumeration=product", enumerated, gen_fun_product(&family, req.order)?)]
                }
                Suite::Gottsche => vec![(
                    "enumeration=gottsche",
                    enumerated,
                    gottsche_blowup_series(req.order, FactorRange::Unbounded)?,
                )],
                Suite::WallRatio => {
                    let next = FamilyParams::new(rank, c1c, m + 1)?;
                    let ctx = family_context(&family, req.order);
                    let wall = capped_product(&ctx, FactorRange::UpTo(1), |_| geometric(2 * (m as i64 + 1), m + 1))?;
                    vec![
                        (
                            "enumeration(m+1)=enumeration(m)*wall",
                            gen_fun_enumeration(&next, req.order, req.method, req.exec)?,
                            enumerated.mul(&wall)?,
                        ),
                        (
                            "product(m+1)=product(m)*wall",
                            gen_fun_product(&next, req.order)?,
                            gen_fun_product(&family, req.order)?.mul(&wall)?,
                        ),
                    ]
                }
            };
            cases += 1;
            for (check, lhs, rhs) in checks {
                if let Some(mismatch) = lhs.first_difference(&rhs)? {
                    first_mismatch = Some(CaseMismatch { family, check, mismatch });
                    break 'outer;
                }
            }
        }
    }
    Ok(VerifyReport {
        request: req.clone(),
        cases_checked: cases,
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
