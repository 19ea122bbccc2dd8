//! Young diagrams stored by column heights.
//!
//! A box `(col, row)` of a diagram carries the torus weight `t1^-col t2^-row`.
//! The *arm* of a box is measured vertically (boxes strictly above it in its
//! column) and the *leg* horizontally (boxes strictly to its right in its row).
//! Both are signed when measured in a diagram that does not contain the box.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A single box of a Young diagram, addressed by column and row (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Cell { col, row }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// A partition drawn as a Young diagram, given by weakly decreasing positive
/// column heights read from left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    columns: Vec<usize>,
}

impl Partition {
    pub fn new(columns: Vec<usize>) -> Result<Self, Error> {
        if columns.iter().any(|&h| h == 0) {
            return Err(Error::InvalidPartition(format!(
                "column heights must be positive: {columns:?}"
            )));
        }
        if columns.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "column heights must be weakly decreasing: {columns:?}"
            )));
        }
        Ok(Partition { columns })
    }

    /// Builds a partition from heights that may contain trailing zeros.
    pub fn from_heights_trimmed(mut heights: Vec<usize>) -> Result<Self, Error> {
        while heights.last() == Some(&0) {
            heights.pop();
        }
        Partition::new(heights)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.columns.iter().sum()
    }

    /// Number of columns, `l(Y)`.
    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Height of column `col`, zero past the last column.
    pub fn column_height(&self, col: usize) -> usize {
        self.columns.get(col).copied().unwrap_or(0)
    }

    /// Number of boxes in row `row`.
    pub fn row_length(&self, row: usize) -> usize {
        // columns are sorted, so the boxes of a row form a prefix
        self.columns.partition_point(|&h| h > row)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.column_height(cell.col)
    }

    /// All boxes, column by column, bottom to top.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(col, &h)| (0..h).map(move |row| Cell::new(col, row)))
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let height = self.columns.first().copied().unwrap_or(0);
        let columns = (0..height).map(|row| self.row_length(row)).collect();
        Partition { columns }
    }

    /// Top boxes of columns strictly taller than their right neighbour,
    /// ordered left to right.
    pub fn removable_boxes(&self) -> Vec<Cell> {
        self.removable_columns()
            .map(|col| Cell::new(col, self.columns[col] - 1))
            .collect()
    }

    pub(crate) fn removable_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.columns.len()).filter(|&i| self.column_height(i + 1) < self.columns[i])
    }

    pub fn is_removable_column(&self, col: usize) -> bool {
        col < self.columns.len() && self.column_height(col + 1) < self.columns[col]
    }

    /// Signed `(arm, leg)` of `cell` measured in `self`; `cell` need not lie
    /// in the diagram.
    pub fn arm_leg(&self, cell: Cell) -> (i64, i64) {
        (self.arm(cell), self.leg(cell))
    }

    /// Boxes strictly above `cell` in its column (signed).
    pub fn arm(&self, cell: Cell) -> i64 {
        self.column_height(cell.col) as i64 - cell.row as i64 - 1
    }

    /// Boxes strictly right of `cell` in its row (signed).
    pub fn leg(&self, cell: Cell) -> i64 {
        self.row_length(cell.row) as i64 - cell.col as i64 - 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let columns = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad column height {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(columns)
    }
}

/// All partitions of `n`, optionally with at most `max_columns` columns, in
/// ascending lexicographic order of their column sequences.
pub fn enumerate_partitions(n: usize, max_columns: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let cap = max_columns.unwrap_or(usize::MAX);
    fill_partitions(n, n, cap, &mut current, &mut |cols| {
        out.push(Partition {
            columns: cols.to_vec(),
        })
    });
    out
}

fn fill_partitions(
    remaining: usize,
    max_height: usize,
    columns_left: usize,
    current: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    if columns_left == 0 {
        return;
    }
    for h in 1..=max_height.min(remaining) {
        current.push(h);
        fill_partitions(remaining - h, h, columns_left - 1, current, emit);
        current.pop();
    }
}

/// Partitions of `n` having at least `min_distinct` distinct column heights,
/// in the same order as [`enumerate_partitions`].
pub(crate) fn enumerate_with_distinct_heights(n: usize, min_distinct: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_distinct(n, n, min_distinct, &mut current, &mut out);
    out
}

fn fill_distinct(
    remaining: usize,
    max_height: usize,
    need: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if need == 0 {
            out.push(Partition {
                columns: current.clone(),
            });
        }
        return;
    }
    for h in 1..=max_height.min(remaining) {
        let fresh = current.last() != Some(&h);
        let still_needed = if fresh { need.saturating_sub(1) } else { need };
        // the remaining distinct heights are all < h and cost at least 1+2+..+k boxes
        if still_needed > h.saturating_sub(1)
            || still_needed * (still_needed + 1) / 2 > remaining - h
        {
            continue;
        }
        current.push(h);
        fill_distinct(remaining - h, h, still_needed, current, out);
        current.pop();
    }
}
