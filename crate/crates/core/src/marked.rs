//! Marked diagrams `(Y, S)`, their relevant boxes, the bijection with pairs of
//! diagrams, and enumeration of torus fixed points.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::diagram::{enumerate_partitions, enumerate_with_distinct_heights, Cell, Partition};
use crate::error::Error;

/// Minimal number of boxes of a diagram with `m` removable boxes.
pub fn staircase(m: usize) -> usize {
    m * (m + 1) / 2
}

/// A Young diagram together with a set of marked removable boxes.
///
/// Marks are stored as sorted 0-based column indices; the marked box of a
/// column is its top box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedDiagram {
    diagram: Partition,
    marked: Vec<usize>,
}

impl MarkedDiagram {
    pub fn new(diagram: Partition, marked_columns: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let marked: Vec<usize> = marked_columns.into_iter().sorted().collect();
        if marked.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMarks(format!("repeated column in {marked:?}")));
        }
        if let Some(&bad) = marked.iter().find(|&&c| !diagram.is_removable_column(c)) {
            return Err(Error::InvalidMarks(format!(
                "top of column {} is not removable in ({diagram})",
                bad + 1
            )));
        }
        Ok(MarkedDiagram { diagram, marked })
    }

    /// A diagram with no marks.
    pub fn unmarked(diagram: Partition) -> Self {
        MarkedDiagram {
            diagram,
            marked: Vec::new(),
        }
    }

    pub fn from_cells(diagram: Partition, cells: &[Cell]) -> Result<Self, Error> {
        for c in cells {
            if !(diagram.contains(*c) && c.row + 1 == diagram.column_height(c.col)) {
                return Err(Error::InvalidMarks(format!("{c} is not a column top of ({diagram})")));
            }
        }
        MarkedDiagram::new(diagram, cells.iter().map(|c| c.col))
    }

    /// Parses the textual form: comma-separated column heights and 1-based
    /// marked column indices.
    pub fn parse(diagram: &str, marks: &str) -> Result<Self, Error> {
        let diagram: Partition = diagram.parse()?;
        let marks = marks.trim();
        let cols = if marks.is_empty() {
            Vec::new()
        } else {
            marks
                .split(',')
                .map(|tok| match tok.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Error::Parse(format!("bad marked column {tok:?} (1-based)"))),
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        MarkedDiagram::new(diagram, cols)
    }

    pub fn diagram(&self) -> &Partition {
        &self.diagram
    }

    pub fn marked_columns(&self) -> &[usize] {
        &self.marked
    }

    /// `#S`.
    pub fn marks(&self) -> usize {
        self.marked.len()
    }

    pub fn marked_cells(&self) -> Vec<Cell> {
        self.marked
            .iter()
            .map(|&c| Cell::new(c, self.diagram.column_height(c) - 1))
            .collect()
    }

    pub fn is_marked(&self, cell: Cell) -> bool {
        cell.row + 1 == self.diagram.column_height(cell.col) && self.marked.binary_search(&cell.col).is_ok()
    }

    /// `Y \ S`, the diagram with every marked box removed.
    pub fn without_marks(&self) -> Partition {
        let mut heights = self.diagram.columns().to_vec();
        for &c in &self.marked {
            heights[c] -= 1;
        }
        // removing removable boxes keeps the sequence weakly decreasing
        Partition::from_heights_trimmed(heights).expect("marked boxes are removable")
    }

    /// 1-based marked column list, comma separated.
    pub fn marks_string(&self) -> String {
        self.marked.iter().map(|c| (c + 1).to_string()).join(",")
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})[{}]", self.diagram, self.marks_string())
    }
}

/// A pair of diagrams `(Y1, Y2)` where `Y2` has at most `m` columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramPair {
    pub first: Partition,
    pub second: Partition,
    pub m: usize,
}

impl DiagramPair {
    pub fn new(first: Partition, second: Partition, m: usize) -> Result<Self, Error> {
        if second.num_columns() > m {
            return Err(Error::InvalidPartition(format!(
                "second diagram ({second}) has more than {m} columns"
            )));
        }
        Ok(DiagramPair { first, second, m })
    }

    /// `|Y1| + |Y2|`.
    pub fn size(&self) -> usize {
        self.first.size() + self.second.size()
    }
}

/// Boxes whose column top and row end are both marked (marked boxes included).
pub fn irrelevant_boxes_rank1(d: &MarkedDiagram) -> BTreeSet<Cell> {
    let y = d.diagram();
    y.cells()
        .filter(|&u| {
            let top = Cell::new(u.col, y.column_height(u.col) - 1);
            let row_end = Cell::new(y.row_length(u.row) - 1, u.row);
            d.is_marked(top) && d.is_marked(row_end)
        })
        .collect()
}

/// Relevant boxes for the pair `(A, B)`: `Y_A \ S_A` and `Y_B` with one box
/// removed for every pair of marks `(s, s')`.
///
/// When `s'` sits at least as high as `s`, the box in the row of `s` and the
/// column of `s'` is removed from `Y_B`; otherwise the box in the row of `s'`
/// and the column of `s` is removed from `Y_A \ S_A`.
pub fn relevant_pair(a: &MarkedDiagram, b: &MarkedDiagram) -> Result<(Vec<Cell>, Vec<Cell>), Error> {
    let a_unmarked = a.without_marks();
    let mut rel_a: BTreeSet<Cell> = a_unmarked.cells().collect();
    let mut rel_b: BTreeSet<Cell> = b.diagram().cells().collect();
    for s in a.marked_cells() {
        for s2 in b.marked_cells() {
            if s.row <= s2.row {
                let u = Cell::new(s2.col, s.row);
                if !rel_b.remove(&u) {
                    return Err(Error::InternalInconsistency(format!(
                        "box {u} for marks {s},{s2} is not available in Y_B = ({})",
                        b.diagram()
                    )));
                }
            } else {
                let u = Cell::new(s.col, s2.row);
                if !rel_a.remove(&u) {
                    return Err(Error::InternalInconsistency(format!(
                        "box {u} for marks {s},{s2} is not available in Y_A\\S_A = ({a_unmarked})"
                    )));
                }
            }
        }
    }
    Ok((rel_a.into_iter().collect(), rel_b.into_iter().collect()))
}

/// Removes the marked columns to get `Y1`; the marked columns minus their
/// irrelevant boxes give `Y2`.
pub fn split(d: &MarkedDiagram) -> DiagramPair {
    let y = d.diagram();
    let m = d.marks();
    // ascending column index gives strictly descending marked heights
    let marked_heights: Vec<usize> = d.marked.iter().map(|&c| y.column_height(c)).collect();
    let rest: Vec<usize> = y
        .columns()
        .iter()
        .enumerate()
        .filter(|(i, _)| d.marked.binary_search(i).is_err())
        .map(|(_, &h)| h)
        .collect();
    let second: Vec<usize> = marked_heights
        .iter()
        .enumerate()
        .map(|(k, &h)| h - (m - k))
        .collect();
    DiagramPair {
        first: Partition::new(rest).expect("subsequence of a partition"),
        second: Partition::from_heights_trimmed(second).expect("marked heights drop strictly"),
        m,
    }
}

/// Inverse of [`split`]. Marked columns are placed to the right of unmarked
/// columns of equal height so that their tops stay removable.
pub fn merge(p: &DiagramPair) -> MarkedDiagram {
    let m = p.m;
    let marked_heights: Vec<usize> = (0..m).map(|k| p.second.column_height(k) + (m - k)).collect();
    let unmarked = p.first.columns();
    let mut columns = Vec::with_capacity(unmarked.len() + m);
    let mut marked = Vec::with_capacity(m);
    let (mut i, mut j) = (0, 0);
    while i < unmarked.len() || j < m {
        let take_unmarked = j == m || (i < unmarked.len() && unmarked[i] >= marked_heights[j]);
        if take_unmarked {
            columns.push(unmarked[i]);
            i += 1;
        } else {
            marked.push(columns.len());
            columns.push(marked_heights[j]);
            j += 1;
        }
    }
    let diagram = Partition::new(columns).expect("merge of two decreasing sequences");
    debug_assert!(marked.iter().all(|&c| diagram.is_removable_column(c)));
    MarkedDiagram { diagram, marked }
}

/// All marked diagrams with `total_boxes` boxes and exactly `m` marks, ordered
/// by diagram and then by marked column set.
pub fn enumerate_marked(total_boxes: usize, m: usize) -> Result<Vec<MarkedDiagram>, Error> {
    if total_boxes < staircase(m) {
        return Err(Error::EmptyRange(format!(
            "{total_boxes} boxes cannot carry {m} removable boxes (need {})",
            staircase(m)
        )));
    }
    let mut out = Vec::new();
    for y in enumerate_with_distinct_heights(total_boxes, m) {
        let removable: Vec<usize> = y.removable_columns().collect();
        for cols in removable.into_iter().combinations(m) {
            out.push(MarkedDiagram {
                diagram: y.clone(),
                marked: cols,
            });
        }
    }
    Ok(out)
}

/// All diagram pairs with `|Y1| + |Y2| = n` and at most `m` columns in `Y2`.
pub fn enumerate_pairs(n: usize, m: usize) -> Vec<DiagramPair> {
    let mut out = Vec::new();
    for a in 0..=n {
        let seconds = enumerate_partitions(n - a, Some(m));
        for first in enumerate_partitions(a, None) {
            for second in &seconds {
                out.push(DiagramPair {
                    first: first.clone(),
                    second: second.clone(),
                    m,
                });
            }
        }
    }
    out
}

/// An `r`-tuple of marked diagrams: one torus fixed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedPoint {
    parts: Vec<MarkedDiagram>,
}

impl FixedPoint {
    pub fn new(parts: Vec<MarkedDiagram>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidParams("a fixed point needs rank >= 1".into()));
        }
        Ok(FixedPoint { parts })
    }

    pub fn parts(&self) -> &[MarkedDiagram] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn total_marks(&self) -> usize {
        self.parts.iter().map(MarkedDiagram::marks).sum()
    }

    pub fn total_boxes(&self) -> usize {
        self.parts.iter().map(|p| p.diagram().size()).sum()
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(" "))
    }
}

/// All `r`-tuples of marked diagrams with `total_marks` marks and
/// `box_budget` boxes in total, slot `α` carrying at least `min_marks[α]`
/// marks (missing entries mean 0). Sorted lexicographically slot by slot.
pub fn enumerate_fixed_points(
    r: usize,
    total_marks: i64,
    box_budget: usize,
    min_marks: &[usize],
) -> Vec<FixedPoint> {
    if r == 0 || total_marks < 0 {
        return Vec::new();
    }
    let total_marks = total_marks as usize;
    let lower = |slot: usize| min_marks.get(slot).copied().unwrap_or(0);
    let mut cache: HashMap<(usize, usize), Vec<MarkedDiagram>> = HashMap::new();
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::with_capacity(r);
    // choose (size, marks) per slot, then take the Cartesian product
    fn shapes(
        slot: usize,
        r: usize,
        boxes_left: usize,
        marks_left: usize,
        lower: &dyn Fn(usize) -> usize,
        current: &mut Vec<(usize, usize)>,
        emit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if slot + 1 == r {
            if marks_left >= lower(slot) && boxes_left >= staircase(marks_left) {
                current.push((boxes_left, marks_left));
                emit(current);
                current.pop();
            }
            return;
        }
        for marks in lower(slot)..=marks_left {
            for size in staircase(marks)..=boxes_left {
                current.push((size, marks));
                shapes(slot + 1, r, boxes_left - size, marks_left - marks, lower, current, emit);
                current.pop();
            }
        }
    }
    let mut slot_shapes: Vec<Vec<(usize, usize)>> = Vec::new();
    shapes(0, r, box_budget, total_marks, &lower, &mut current, &mut |s| {
        slot_shapes.push(s.to_vec())
    });
    for shape in slot_shapes {
        for &(size, marks) in &shape {
            cache
                .entry((size, marks))
                .or_insert_with(|| enumerate_marked(size, marks).expect("size >= staircase"));
        }
        let lists: Vec<&Vec<MarkedDiagram>> = shape.iter().map(|key| &cache[key]).collect();
        for combo in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
            out.push(FixedPoint {
                parts: combo.into_iter().cloned().collect(),
            });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn six_column() -> MarkedDiagram {
        MarkedDiagram::parse("5,5,4,3,3,1", "2,3,5").unwrap()
    }

    #[test]
    fn six_column_irrelevant_boxes() {
        let irr = irrelevant_boxes_rank1(&six_column());
        let expected: BTreeSet<Cell> = [
            Cell::new(1, 4),
            Cell::new(2, 3),
            Cell::new(4, 2),
            Cell::new(1, 3),
            Cell::new(1, 2),
            Cell::new(2, 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(irr, expected);
    }

    #[test]
    fn irrelevant_trivial_cases() {
        let d = MarkedDiagram::unmarked(p("3,1"));
        assert!(irrelevant_boxes_rank1(&d).is_empty());
        let d = MarkedDiagram::parse("1", "1").unwrap();
        assert_eq!(irrelevant_boxes_rank1(&d).into_iter().collect::<Vec<_>>(), vec![Cell::new(0, 0)]);
    }

    #[test]
    fn relevant_pair_examples() {
        let a = MarkedDiagram::parse("3,1", "").unwrap();
        let b = MarkedDiagram::parse("2", "1").unwrap();
        let (ra, rb) = relevant_pair(&a, &b).unwrap();
        assert_eq!(ra.len(), 4);
        assert_eq!(rb.len(), 2);

        let single = MarkedDiagram::parse("1", "1").unwrap();
        let (ra, rb) = relevant_pair(&single, &single).unwrap();
        assert!(ra.is_empty() && rb.is_empty());

        let f = six_column();
        let (ra, rb) = relevant_pair(&f, &f).unwrap();
        assert_eq!(ra.len() + rb.len(), 18 + 21 - 9);
    }

    #[test]
    fn marking_validation() {
        assert!(MarkedDiagram::parse("2,2", "1").is_err());
        assert!(MarkedDiagram::parse("2,2", "2").is_ok());
        assert!(MarkedDiagram::parse("2,2", "3").is_err());
        assert!(MarkedDiagram::parse("2,2", "0").is_err());
        assert!(MarkedDiagram::from_cells(p("2,1"), &[Cell::new(0, 0)]).is_err());
        assert!(MarkedDiagram::from_cells(p("2,1"), &[Cell::new(0, 1)]).is_ok());
    }

    #[test]
    fn split_examples() {
        assert_eq!(
            split(&six_column()),
            DiagramPair::new(p("5,3,1"), p("2,2,2"), 3).unwrap()
        );
        let stair = MarkedDiagram::parse("3,2,1", "1,2,3").unwrap();
        assert_eq!(split(&stair), DiagramPair::new(p(""), p(""), 3).unwrap());
        let one = MarkedDiagram::parse("1", "").unwrap();
        assert_eq!(split(&one), DiagramPair::new(p("1"), p(""), 0).unwrap());
    }

    #[test]
    fn merge_examples() {
        let pair = DiagramPair::new(p("5,3,1"), p("2,2,2"), 3).unwrap();
        assert_eq!(merge(&pair), six_column());
        let pair = DiagramPair::new(p(""), p(""), 1).unwrap();
        assert_eq!(merge(&pair), MarkedDiagram::parse("1", "1").unwrap());
        let pair = DiagramPair::new(p("2"), p("1"), 1).unwrap();
        let d = merge(&pair);
        assert_eq!(d, MarkedDiagram::parse("2,2", "2").unwrap());
        assert_eq!(d.marked_cells(), vec![Cell::new(1, 1)]);
    }

    #[test]
    fn pair_validation() {
        assert!(DiagramPair::new(p(""), p("1,1"), 1).is_err());
    }

    #[test]
    fn enumerate_marked_examples() {
        let one = enumerate_marked(1, 1).unwrap();
        assert_eq!(one, vec![MarkedDiagram::parse("1", "1").unwrap()]);
        let two = enumerate_marked(2, 1).unwrap();
        assert_eq!(
            two,
            vec![
                MarkedDiagram::parse("1,1", "2").unwrap(),
                MarkedDiagram::parse("2", "1").unwrap()
            ]
        );
        assert!(matches!(enumerate_marked(2, 2), Err(Error::EmptyRange(_))));
    }

    #[test]
    fn enumerate_marked_matches_pair_count() {
        for m in 0..=4 {
            for n in 0..=8 {
                let a = enumerate_marked(n + staircase(m), m).unwrap().len();
                // independent double count: sum over |Y1| of p(|Y1|) * p_{<=m cols}(rest)
                let b: usize = (0..=n)
                    .map(|k| enumerate_partitions(k, None).len() * enumerate_partitions(n - k, Some(m)).len())
                    .sum();
                assert_eq!(a, b, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn enumerate_fixed_point_examples() {
        let pts = enumerate_fixed_points(1, 1, 2, &[]);
        let expected: Vec<FixedPoint> = enumerate_marked(2, 1)
            .unwrap()
            .into_iter()
            .map(|d| FixedPoint::new(vec![d]).unwrap())
            .collect();
        assert_eq!(pts, expected);

        let pts = enumerate_fixed_points(2, 0, 1, &[0, 0]);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].parts()[0].diagram(), &p(""));
        assert_eq!(pts[1].parts()[0].diagram(), &p("1"));

        assert!(enumerate_fixed_points(1, 2, 2, &[]).is_empty());
        assert!(enumerate_fixed_points(2, -1, 4, &[]).is_empty());
    }

    #[test]
    fn fixed_points_respect_lower_bounds() {
        let pts = enumerate_fixed_points(2, 2, 6, &[1, 0]);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|f| f.parts()[0].marks() >= 1));
        assert!(pts.iter().all(|f| f.total_marks() == 2 && f.total_boxes() == 6));
        let all = enumerate_fixed_points(2, 2, 6, &[]);
        assert!(all.len() > pts.len());
    }

    #[test]
    fn fixed_points_match_brute_force() {
        // brute force: all pairs of marked diagrams by nested loops over sizes
        for budget in 0..=6 {
            for marks in 0..=3i64 {
                let mut brute = Vec::new();
                for s0 in 0..=budget {
                    for m0 in 0..=marks as usize {
                        let m1 = marks as usize - m0;
                        let (Ok(a), Ok(b)) = (enumerate_marked(s0, m0), enumerate_marked(budget - s0, m1)) else {
                            continue;
                        };
                        for x in &a {
                            for y in &b {
                                brute.push(FixedPoint::new(vec![x.clone(), y.clone()]).unwrap());
                            }
                        }
                    }
                }
                brute.sort();
                assert_eq!(enumerate_fixed_points(2, marks, budget, &[]), brute);
            }
        }
    }
}
