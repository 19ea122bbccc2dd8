//! Torus characters of tangent spaces at fixed points, and Morse indices
//! under the one-parameter subgroup `N2 >> n1 > ... > nr >> N1 > 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::diagram::{Cell, Partition};
use crate::error::Error;
use crate::marked::{relevant_pair, FixedPoint, MarkedDiagram};
use crate::laurent::LaurentPoly;

pub const T1: usize = 0;
pub const T2: usize = 1;

/// Variable names `t1, t2, e_1, ..., e_r`.
pub fn character_vars(rank: usize) -> Vec<String> {
    let mut vars = vec!["t1".to_string(), "t2".to_string()];
    vars.extend((1..=rank).map(|a| format!("e_{a}")));
    vars
}

fn torus_vars() -> Vec<String> {
    character_vars(0)
}

/// How to evaluate `ch Ext^1(E_A, E_B(-l_inf))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ext1Method {
    /// Sum over relevant boxes only.
    Relevant,
    /// Full box sums minus `ch Hom(S_A, S_B)`.
    Subtraction,
}

/// A character of a torus representation in `t1, t2, e_1..e_r`; all
/// multiplicities are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    poly: LaurentPoly,
    rank: usize,
}

impl Character {
    pub fn new(poly: LaurentPoly, rank: usize) -> Result<Self, Error> {
        if poly.vars() != character_vars(rank).as_slice() {
            return Err(Error::VariableMismatch {
                left: poly.vars().to_vec(),
                right: character_vars(rank),
            });
        }
        if !poly.has_nonnegative_coefficients() {
            return Err(Error::InternalInconsistency(format!(
                "character has a negative multiplicity: {poly}"
            )));
        }
        Ok(Character { poly, rank })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Total multiplicity, i.e. the dimension of the representation.
    pub fn dimension(&self) -> u64 {
        self.poly.eval_at_ones().to_u64().expect("dimension fits in u64")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn push(p: &mut LaurentPoly, t1: i64, t2: i64, coef: i64) {
    p.add_term(vec![t1, t2], BigInt::from(coef));
}

/// `sum_{s in SA, s' in SB} t1^(col s - col s') t2^(row s - row s')`.
pub fn hom_marked_character(sa: &[Cell], sb: &[Cell]) -> LaurentPoly {
    let mut p = LaurentPoly::zero_in(torus_vars());
    for s in sa {
        for s2 in sb {
            push(
                &mut p,
                s.col as i64 - s2.col as i64,
                s.row as i64 - s2.row as i64,
                1,
            );
        }
    }
    p
}

fn first_sum_term(s: Cell, yb: &Partition, a_unmarked: &Partition) -> (i64, i64) {
    (-yb.leg(s), a_unmarked.arm(s) + 1)
}

fn second_sum_term(t: Cell, yb: &Partition, a_unmarked: &Partition) -> (i64, i64) {
    (a_unmarked.leg(t) + 1, -yb.arm(t))
}

/// `ch Ext^1(E_A, E_B(-l_inf))` in `t1, t2`.
pub fn ext1_character(a: &MarkedDiagram, b: &MarkedDiagram, method: Ext1Method) -> Result<LaurentPoly, Error> {
    let a_unmarked = a.without_marks();
    let yb = b.diagram();
    let mut p = LaurentPoly::zero_in(torus_vars());
    match method {
        Ext1Method::Relevant => {
            let (rel_a, rel_b) = relevant_pair(a, b)?;
            for s in rel_a {
                let (x, y) = first_sum_term(s, yb, &a_unmarked);
                push(&mut p, x, y, 1);
            }
            for t in rel_b {
                let (x, y) = second_sum_term(t, yb, &a_unmarked);
                push(&mut p, x, y, 1);
            }
        }
        Ext1Method::Subtraction => {
            for s in a_unmarked.cells() {
                let (x, y) = first_sum_term(s, yb, &a_unmarked);
                push(&mut p, x, y, 1);
            }
            for t in yb.cells() {
                let (x, y) = second_sum_term(t, yb, &a_unmarked);
                push(&mut p, x, y, 1);
            }
            p = p.sub(&hom_marked_character(&a.marked_cells(), &b.marked_cells()))?;
            if !p.has_nonnegative_coefficients() {
                return Err(Error::InternalInconsistency(format!(
                    "Ext^1({a}, {b}) minus Hom(S_A, S_B) is not a character: {p}"
                )));
            }
        }
    }
    Ok(p)
}

/// Full tangent character `sum_{a,b} e_b e_a^-1 ch Ext^1(E_a, E_b(-l_inf))`.
pub fn tangent_character(fp: &FixedPoint) -> Result<Character, Error> {
    let r = fp.rank();
    let vars = character_vars(r);
    let mut total = LaurentPoly::zero_in(vars.clone());
    for (alpha, a) in fp.parts().iter().enumerate() {
        for (beta, b) in fp.parts().iter().enumerate() {
            let ext = ext1_character(a, b, Ext1Method::Relevant)?;
            for (e, c) in ext.terms() {
                let mut exps = vec![0i64; vars.len()];
                exps[T1] = e[T1];
                exps[T2] = e[T2];
                exps[2 + beta] += 1;
                exps[2 + alpha] -= 1;
                total.add_term(exps, c.clone());
            }
        }
    }
    Character::new(total, r)
}

/// Whether a monomial of a character has negative weight: compared
/// lexicographically by the `t2` exponent, then the `e_1, ..., e_r`
/// exponents in order, then the `t1` exponent.
pub fn is_negative_weight(exps: &[i64]) -> bool {
    let key = std::iter::once(exps[T2])
        .chain(exps[2..].iter().copied())
        .chain(std::iter::once(exps[T1]));
    key.into_iter().find(|&x| x != 0).is_some_and(|x| x < 0)
}

/// Total multiplicity of negative-weight monomials.
pub fn morse_index(c: &Character) -> u64 {
    c.poly
        .terms()
        .filter(|(e, _)| is_negative_weight(e))
        .map(|(_, k)| k.to_u64().expect("multiplicity fits in u64"))
        .sum()
}

/// Morse contribution of the `(alpha, beta)` summand alone, using the same
/// ordering as [`morse_index`].
pub fn summand_morse_count(a: &MarkedDiagram, b: &MarkedDiagram, alpha: usize, beta: usize) -> Result<u64, Error> {
    let ext = ext1_character(a, b, Ext1Method::Relevant)?;
    let e_weight_negative = alpha < beta;
    Ok(ext
        .terms()
        .filter(|(e, _)| {
            let t2 = e[T2];
            t2 < 0 || (t2 == 0 && (e_weight_negative || (alpha == beta && e[T1] < 0)))
        })
        .map(|(_, k)| k.to_u64().unwrap_or_default())
        .sum())
}

/// `t1^a t2^b` as a two-variable polynomial.
pub fn torus_monomial(t1: i64, t2: i64) -> LaurentPoly {
    LaurentPoly::monomial_in(torus_vars(), vec![t1, t2], BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::{enumerate_marked, staircase};

    fn md(d: &str, m: &str) -> MarkedDiagram {
        MarkedDiagram::parse(d, m).unwrap()
    }

    fn t1_plus_t2() -> LaurentPoly {
        torus_monomial(1, 0).add(&torus_monomial(0, 1)).unwrap()
    }

    #[test]
    fn hom_examples() {
        let c = |col, row| Cell::new(col, row);
        assert_eq!(hom_marked_character(&[c(0, 0)], &[c(0, 0)]), torus_monomial(0, 0));
        assert!(hom_marked_character(&[], &[c(0, 0)]).is_zero());
        assert_eq!(hom_marked_character(&[c(0, 2)], &[c(1, 0)]), torus_monomial(-1, 2));
    }

    #[test]
    fn ext1_examples() {
        for method in [Ext1Method::Relevant, Ext1Method::Subtraction] {
            let one = md("1", "");
            assert_eq!(ext1_character(&one, &one, method).unwrap(), t1_plus_t2());
            let marked = md("1", "1");
            assert!(ext1_character(&marked, &marked, method).unwrap().is_zero());
            let fig = md("5,5,4,3,3,1", "2,3,5");
            let ch = ext1_character(&fig, &fig, method).unwrap();
            assert_eq!(ch.eval_at_ones(), BigInt::from(30));
        }
    }

    #[test]
    fn tangent_examples() {
        let fp = FixedPoint::new(vec![md("1", "")]).unwrap();
        let ch = tangent_character(&fp).unwrap();
        let expected = LaurentPoly::monomial_in(character_vars(1), vec![1, 0, 0], BigInt::one())
            .add(&LaurentPoly::monomial_in(character_vars(1), vec![0, 1, 0], BigInt::one()))
            .unwrap();
        assert_eq!(ch.poly(), &expected);
        assert_eq!(morse_index(&ch), 0);

        let empty = FixedPoint::new(vec![md("", ""), md("", "")]).unwrap();
        assert_eq!(tangent_character(&empty).unwrap().dimension(), 0);
    }

    #[test]
    fn rank2_single_box_indices() {
        let slot1 = FixedPoint::new(vec![md("1", ""), md("", "")]).unwrap();
        let slot2 = FixedPoint::new(vec![md("", ""), md("1", "")]).unwrap();
        let c1 = tangent_character(&slot1).unwrap();
        let c2 = tangent_character(&slot2).unwrap();
        assert_eq!((c1.dimension(), c2.dimension()), (4, 4));
        assert_eq!(morse_index(&c1), 0);
        assert_eq!(morse_index(&c2), 1);
    }

    #[test]
    fn rank1_dimension_and_index() {
        for size in 0..=12 {
            for m in 0..=3 {
                let Ok(all) = enumerate_marked(size, m) else { continue };
                for d in all {
                    let fp = FixedPoint::new(vec![d.clone()]).unwrap();
                    let ch = tangent_character(&fp).unwrap();
                    let n = size - staircase(m);
                    assert_eq!(ch.dimension() as usize, 2 * n, "{d}");
                    let index = morse_index(&ch) as usize;
                    assert_eq!(index, n + m - d.diagram().num_columns(), "{d}");
                    // t2 weight zero never pairs with a nonpositive t1 weight
                    assert!(ch.poly().terms().all(|(e, _)| !(e[T2] == 0 && e[T1] <= 0)), "{d}");
                }
            }
        }
    }

    #[test]
    fn unmarked_reduces_to_hilbert_scheme() {
        for size in 0..=8 {
            for d in enumerate_marked(size, 0).unwrap() {
                let y = d.diagram();
                let mut expected = LaurentPoly::zero_in(torus_vars());
                for s in y.cells() {
                    let (arm, leg) = y.arm_leg(s);
                    push(&mut expected, -leg, arm + 1, 1);
                    push(&mut expected, leg + 1, -arm, 1);
                }
                assert_eq!(ext1_character(&d, &d, Ext1Method::Relevant).unwrap(), expected);
                let fp = FixedPoint::new(vec![d.clone()]).unwrap();
                let index = morse_index(&tangent_character(&fp).unwrap()) as usize;
                assert_eq!(index, y.size() - y.num_columns());
            }
        }
    }

    #[test]
    fn per_summand_counts_match_closed_forms() {
        let mut diagrams = Vec::new();
        for size in 0..=6 {
            for m in 0..=2 {
                if let Ok(v) = enumerate_marked(size, m) {
                    diagrams.extend(v);
                }
            }
        }
        for a in &diagrams {
            for b in &diagrams {
                let sa = a.marked_cells();
                let sb = b.marked_cells();
                let le = sa.iter().flat_map(|s| sb.iter().map(move |t| (s, t))).filter(|(s, t)| s.row <= t.row).count();
                let lt = sa.iter().flat_map(|s| sb.iter().map(move |t| (s, t))).filter(|(s, t)| s.row < t.row).count();
                let yb = b.diagram();
                assert_eq!(summand_morse_count(a, b, 0, 1).unwrap() as usize, yb.size() - le, "{a} {b}");
                assert_eq!(
                    summand_morse_count(a, b, 1, 0).unwrap() as usize,
                    yb.size() - yb.num_columns() - lt,
                    "{a} {b}"
                );
            }
        }
    }
}
