//! Exact Laurent polynomials with big-integer coefficients, and truncated
//! series in a grading variable `q` with rational exponents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type QExp = Ratio<i64>;

/// A Laurent polynomial over the integers in an ordered list of named
/// variables. Terms are kept sorted by exponent vector; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

fn owned_vars(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(owned_vars(vars))
    }

    pub fn zero_in(vars: Vec<String>) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant_in(owned_vars(vars), BigInt::one())
    }

    pub fn constant_in(vars: Vec<String>, c: BigInt) -> Self {
        let n = vars.len();
        let mut p = Self::zero_in(vars);
        p.add_term(vec![0; n], c);
        p
    }

    /// `coef * prod vars[i]^exps[i]`.
    pub fn monomial(vars: &[&str], exps: &[i64], coef: impl Into<BigInt>) -> Self {
        Self::monomial_in(owned_vars(vars), exps.to_vec(), coef.into())
    }

    pub fn monomial_in(vars: Vec<String>, exps: Vec<i64>, coef: BigInt) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let mut p = Self::zero_in(vars);
        p.add_term(exps, coef);
        p
    }

    /// A univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate(var: &str, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(&[var]);
        for &(e, c) in terms {
            p.add_term(vec![e], BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `coef * x^exps` in place.
    pub fn add_term(&mut self, exps: Vec<i64>, coef: BigInt) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero_in(self.vars.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero_in(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant_in(self.vars.clone(), BigInt::one());
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Re-expresses the polynomial in a larger variable list.
    pub fn embed(&self, vars: &[String]) -> Result<Self, Error> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter().position(|w| w == v).ok_or_else(|| Error::VariableMismatch {
                    left: self.vars.clone(),
                    right: vars.to_vec(),
                })
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero_in(vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Exact value at nonzero integer points, as a rational.
    pub fn eval(&self, assignment: &HashMap<&str, i64>) -> Result<BigRational, Error> {
        let values: Vec<i64> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v.as_str())
                    .copied()
                    .ok_or_else(|| Error::MissingAssignment(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        if let Some(i) = values.iter().position(|&x| x == 0) {
            if self.terms.keys().any(|e| e[i] < 0) {
                return Err(Error::NonIntegralValue(format!(
                    "negative power of {} at 0",
                    self.vars[i]
                )));
            }
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (&x, &k) in values.iter().zip(e) {
                let base = BigRational::from_integer(BigInt::from(x));
                term *= num_traits::pow::Pow::pow(&base, k as i32);
            }
            total += term;
        }
        Ok(total)
    }

    pub fn eval_int(&self, assignment: &HashMap<&str, i64>) -> Result<BigInt, Error> {
        let v = self.eval(assignment)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegralValue(v.to_string()))
        }
    }

    /// Value with every variable set to 1 (sum of coefficients).
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serializes")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, Error> {
        let raw: PolyJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let factors: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: BTreeMap<String, i64>,
    coef: String,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            vars: p.vars.clone(),
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: p
                        .vars
                        .iter()
                        .zip(e)
                        .filter(|(_, &k)| k != 0)
                        .map(|(v, &k)| (v.clone(), k))
                        .collect(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<Self, Error> {
        let mut p = LaurentPoly::zero_in(raw.vars);
        for t in raw.terms {
            let mut e = vec![0; p.vars.len()];
            for (v, k) in t.exp {
                let i = p
                    .var_index(&v)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {v:?} in term")))?;
                e[i] = k;
            }
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coef)))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Variables, exponent denominator and truncation order shared by the series
/// of one computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesContext {
    pub vars: Vec<String>,
    pub denom: i64,
    pub order: QExp,
}

impl SeriesContext {
    pub fn new(vars: &[&str], denom: i64, order: QExp) -> Self {
        assert!(denom > 0, "denominator must be positive");
        SeriesContext {
            vars: owned_vars(vars),
            denom,
            order,
        }
    }
}

/// The factor `1 / (1 - coef * q^q_exp)`.
#[derive(Clone, Debug)]
pub struct GeometricFactor {
    pub coef: LaurentPoly,
    pub q_exp: QExp,
}

/// Upper end of a product over `d >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRange {
    UpTo(usize),
    /// Runs until the factor's q-exponent reaches the truncation order.
    Unbounded,
}

/// First q-exponent where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q: QExp,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl Mismatch {
    pub fn difference(&self) -> LaurentPoly {
        let mut d = self.lhs.clone();
        d.add_assign_unchecked(&self.rhs.neg());
        d
    }
}

/// A series `sum_k c_k q^(k / denom)` truncated below `order`: only exponents
/// strictly less than `order` are stored.
#[derive(Clone, Debug)]
pub struct QSeries {
    vars: Vec<String>,
    denom: i64,
    order: QExp,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl QSeries {
    pub fn zero(ctx: &SeriesContext) -> Self {
        QSeries {
            vars: ctx.vars.clone(),
            denom: ctx.denom,
            order: ctx.order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &SeriesContext) -> Self {
        let mut s = Self::zero(ctx);
        if QExp::zero() < ctx.order {
            s.coeffs.insert(0, LaurentPoly::constant_in(ctx.vars.clone(), BigInt::one()));
        }
        s
    }

    /// `poly * q^q_exp`, or zero if `q_exp` is at or past the order.
    pub fn monomial(ctx: &SeriesContext, q_exp: QExp, poly: LaurentPoly) -> Result<Self, Error> {
        let mut s = Self::zero(ctx);
        s.add_to_coeff(q_exp, &poly)?;
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> QExp {
        self.order
    }

    pub fn context(&self) -> SeriesContext {
        SeriesContext {
            vars: self.vars.clone(),
            denom: self.denom,
            order: self.order,
        }
    }

    /// Exclusive upper bound on stored numerators.
    fn bound(&self) -> i64 {
        (self.order * self.denom).ceil().to_integer()
    }

    fn numerator_of(&self, q: QExp) -> Result<i64, Error> {
        let scaled = q * self.denom;
        if !scaled.is_integer() {
            return Err(Error::InvalidParams(format!(
                "q-exponent {q} is not a multiple of 1/{}",
                self.denom
            )));
        }
        Ok(scaled.to_integer())
    }

    /// Adds `poly * q^q_exp`; terms at or past the order are dropped.
    pub fn add_to_coeff(&mut self, q_exp: QExp, poly: &LaurentPoly) -> Result<(), Error> {
        if poly.vars() != self.vars.as_slice() {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: poly.vars().to_vec(),
            });
        }
        let k = self.numerator_of(q_exp)?;
        if k >= self.bound() || poly.is_zero() {
            return Ok(());
        }
        let slot = self
            .coeffs
            .entry(k)
            .or_insert_with(|| LaurentPoly::zero_in(self.vars.clone()));
        slot.add_assign_unchecked(poly);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
        Ok(())
    }

    pub fn coeff(&self, q_exp: QExp) -> LaurentPoly {
        let scaled = q_exp * self.denom;
        if !scaled.is_integer() {
            return LaurentPoly::zero_in(self.vars.clone());
        }
        self.coeffs
            .get(&scaled.to_integer())
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero_in(self.vars.clone()))
    }

    /// Nonzero coefficients in ascending q-exponent.
    pub fn iter(&self) -> impl Iterator<Item = (QExp, &LaurentPoly)> {
        self.coeffs.iter().map(move |(&k, p)| (QExp::new(k, self.denom), p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn rescaled(&self, denom: i64, order: QExp) -> QSeries {
        let factor = denom / self.denom;
        let mut out = QSeries {
            vars: self.vars.clone(),
            denom,
            order,
            coeffs: BTreeMap::new(),
        };
        let bound = out.bound();
        for (&k, p) in &self.coeffs {
            if k * factor < bound {
                out.coeffs.insert(k * factor, p.clone());
            }
        }
        out
    }

    /// Brings two series to a common denominator and the smaller order.
    fn aligned(&self, other: &QSeries) -> Result<(QSeries, QSeries), Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        let denom = self.denom.lcm(&other.denom);
        let order = self.order.min(other.order);
        Ok((self.rescaled(denom, order), other.rescaled(denom, order)))
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, Error> {
        let (mut a, b) = self.aligned(other)?;
        for (k, p) in b.coeffs {
            let slot = a
                .coeffs
                .entry(k)
                .or_insert_with(|| LaurentPoly::zero_in(b.vars.clone()));
            slot.add_assign_unchecked(&p);
            if slot.is_zero() {
                a.coeffs.remove(&k);
            }
        }
        Ok(a)
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries, Error> {
        let (a, b) = self.aligned(other)?;
        let bound = a.bound();
        let mut out = QSeries::zero(&a.context());
        for (&ka, pa) in &a.coeffs {
            for (&kb, pb) in &b.coeffs {
                if ka + kb >= bound {
                    break;
                }
                let slot = out
                    .coeffs
                    .entry(ka + kb)
                    .or_insert_with(|| LaurentPoly::zero_in(a.vars.clone()));
                slot.add_assign_unchecked(&pa.mul_unchecked(pb));
            }
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Multiplies every coefficient by `poly`.
    pub fn scale_poly(&self, poly: &LaurentPoly) -> Result<QSeries, Error> {
        if poly.vars() != self.vars.as_slice() {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: poly.vars().to_vec(),
            });
        }
        let mut out = QSeries::zero(&self.context());
        for (&k, p) in &self.coeffs {
            let c = p.mul_unchecked(poly);
            if !c.is_zero() {
                out.coeffs.insert(k, c);
            }
        }
        Ok(out)
    }

    /// Multiplies by `1 / (1 - coef * q^q_exp)` using the recurrence
    /// `out[k] = self[k] + coef * out[k - step]`.
    pub fn div_one_minus(&self, factor: &GeometricFactor) -> Result<QSeries, Error> {
        if factor.q_exp <= QExp::zero() {
            return Err(Error::NonpositiveGrading(factor.q_exp.to_string()));
        }
        if factor.coef.vars() != self.vars.as_slice() {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: factor.coef.vars().to_vec(),
            });
        }
        let denom = self.denom.lcm(factor.q_exp.denom());
        let base = self.rescaled(denom, self.order);
        let step = (factor.q_exp * denom).to_integer();
        let bound = base.bound();
        let Some((&lo, _)) = base.coeffs.first_key_value() else {
            return Ok(base);
        };
        let mut out = QSeries::zero(&base.context());
        for k in lo..bound {
            let mut c = base
                .coeffs
                .get(&k)
                .cloned()
                .unwrap_or_else(|| LaurentPoly::zero_in(base.vars.clone()));
            if let Some(prev) = out.coeffs.get(&(k - step)) {
                c.add_assign_unchecked(&prev.mul_unchecked(&factor.coef));
            }
            if !c.is_zero() {
                out.coeffs.insert(k, c);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient; the results must share one variable
    /// list.
    pub fn try_map_coeffs(
        &self,
        vars: Vec<String>,
        f: impl Fn(&LaurentPoly) -> Result<LaurentPoly, Error>,
    ) -> Result<QSeries, Error> {
        let mut out = QSeries {
            vars,
            denom: self.denom,
            order: self.order,
            coeffs: BTreeMap::new(),
        };
        for (&k, p) in &self.coeffs {
            let c = f(p)?;
            if c.vars() != out.vars.as_slice() {
                return Err(Error::VariableMismatch {
                    left: out.vars.clone(),
                    right: c.vars().to_vec(),
                });
            }
            if !c.is_zero() {
                out.coeffs.insert(k, c);
            }
        }
        Ok(out)
    }

    /// The series cut down to a smaller order.
    pub fn truncated(&self, order: QExp) -> QSeries {
        self.rescaled(self.denom, order.min(self.order))
    }

    /// First q-exponent below the common order where the series differ.
    pub fn first_difference(&self, other: &QSeries) -> Result<Option<Mismatch>, Error> {
        let (a, b) = self.aligned(other)?;
        let keys: std::collections::BTreeSet<i64> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
        for k in keys {
            let zero = LaurentPoly::zero_in(a.vars.clone());
            let lhs = a.coeffs.get(&k).unwrap_or(&zero);
            let rhs = b.coeffs.get(&k).unwrap_or(&zero);
            if lhs != rhs {
                return Ok(Some(Mismatch {
                    q: QExp::new(k, a.denom),
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                }));
            }
        }
        Ok(None)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "denom": self.denom,
            "order": self.order.to_string(),
            "vars": self.vars,
            "coeffs": self
                .iter()
                .map(|(q, p)| serde_json::json!({"q": q.to_string(), "poly": p.to_json_value()}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<QSeries, Error> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        let denom = value["denom"].as_i64().filter(|&d| d > 0).ok_or_else(|| bad("denom"))?;
        let order: QExp = value["order"]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("order"))?;
        let vars: Vec<String> =
            serde_json::from_value(value["vars"].clone()).map_err(|_| bad("vars"))?;
        let mut s = QSeries {
            vars,
            denom,
            order,
            coeffs: BTreeMap::new(),
        };
        for entry in value["coeffs"].as_array().ok_or_else(|| bad("coeffs"))? {
            let q: QExp = entry["q"]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("q"))?;
            let poly = LaurentPoly::from_json_value(&entry["poly"])?;
            s.add_to_coeff(q, &poly)?;
        }
        Ok(s)
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &QSeries) -> bool {
        self.order == other.order && matches!(self.first_difference(other), Ok(None))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, p) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let body = if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
            let power = if q.is_one() { "q".to_string() } else { format!("q^{q}") };
            if q.is_zero() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{power}")?;
            } else {
                write!(f, "{body}*{power}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

/// Truncated expansion of `1 / (1 - coef * q^q_exp)`.
pub fn expand_geometric(factor: &GeometricFactor, ctx: &SeriesContext) -> Result<QSeries, Error> {
    QSeries::one(ctx).div_one_minus(factor)
}

/// Truncated product of geometric factors indexed by `d = 1, 2, ...`.
///
/// The q-exponent of `factor(d)` must increase with `d`; the product stops at
/// the first factor that cannot contribute below the order.
pub fn capped_product(
    ctx: &SeriesContext,
    range: FactorRange,
    mut factor: impl FnMut(usize) -> GeometricFactor,
) -> Result<QSeries, Error> {
    let mut acc = QSeries::one(ctx);
    let mut d = 1;
    loop {
        if let FactorRange::UpTo(max) = range {
            if d > max {
                break;
            }
        }
        let f = factor(d);
        if f.q_exp >= ctx.order {
            break;
        }
        acc = acc.div_one_minus(&f)?;
        d += 1;
    }
    Ok(acc)
}

/// Replaces `t^(2j)` by `u^j`.
pub fn to_hodge(p: &LaurentPoly) -> Result<LaurentPoly, Error> {
    let vars: Vec<String> = p
        .vars()
        .iter()
        .map(|v| if v == "t" { "u".to_string() } else { v.clone() })
        .collect();
    let Some(ti) = p.var_index("t") else {
        return Ok(LaurentPoly {
            vars,
            terms: p.terms.clone(),
        });
    };
    let mut out = LaurentPoly::zero_in(vars);
    for (e, c) in p.terms() {
        if e[ti] % 2 != 0 {
            return Err(Error::OddExponent {
                var: "t".into(),
                exponent: e[ti],
            });
        }
        let mut ne = e.to_vec();
        ne[ti] /= 2;
        out.add_term(ne, c.clone());
    }
    Ok(out)
}

/// [`to_hodge`] applied coefficientwise.
pub fn series_to_hodge(s: &QSeries) -> Result<QSeries, Error> {
    let vars = s
        .vars()
        .iter()
        .map(|v| if v == "t" { "u".to_string() } else { v.clone() })
        .collect();
    s.try_map_coeffs(vars, to_hodge)
}
