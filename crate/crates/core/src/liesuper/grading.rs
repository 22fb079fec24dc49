use std::collections::BTreeMap;
use std::fmt;

use super::{normalize_degree, AlgebraModel, WeightVec};

/// A (degree, weight) bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub degree: i64,
    pub weight: WeightVec,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.weight)
    }
}

/// Bidegree shift of a homogeneous linear map: it sends cell `c` into
/// `c + shift`.
pub type Shift = Cell;

/// Partition of a basis into bidegree cells.
#[derive(Clone, Debug)]
pub struct Grading {
    modulus: Option<i64>,
    cell_of: Vec<Cell>,
    cells: BTreeMap<Cell, Vec<usize>>,
}

impl Grading {
    pub fn new(a: &AlgebraModel) -> Self {
        let cell_of: Vec<Cell> =
            (0..a.dim()).map(|i| Cell { degree: a.degree(i), weight: a.weight(i).clone() }).collect();
        Self::from_cells(a.grading_modulus(), cell_of)
    }

    pub fn from_cells(modulus: Option<i64>, cell_of: Vec<Cell>) -> Self {
        let mut cells: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for (i, c) in cell_of.iter().enumerate() {
            cells.entry(c.clone()).or_default().push(i);
        }
        Self { modulus, cell_of, cells }
    }

    pub fn len(&self) -> usize {
        self.cell_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_of.is_empty()
    }

    pub fn cell_of(&self, i: usize) -> &Cell {
        &self.cell_of[i]
    }

    /// Cells in (degree, weight) order with their basis indices ascending.
    pub fn cells(&self) -> &BTreeMap<Cell, Vec<usize>> {
        &self.cells
    }

    pub fn members(&self, c: &Cell) -> &[usize] {
        self.cells.get(c).map_or(&[], Vec::as_slice)
    }

    pub fn add(&self, c: &Cell, s: &Shift) -> Cell {
        Cell { degree: normalize_degree(c.degree + s.degree, self.modulus), weight: &c.weight + &s.weight }
    }

    /// Shift taking cell `from` to cell `to`.
    pub fn shift(&self, from: &Cell, to: &Cell) -> Shift {
        Cell { degree: normalize_degree(to.degree - from.degree, self.modulus), weight: &to.weight - &from.weight }
    }

    /// Shift of the matrix entry `(i, j)`, i.e. of the map `e_j ↦ e_i`.
    pub fn entry_shift(&self, i: usize, j: usize) -> Shift {
        self.shift(&self.cell_of[j], &self.cell_of[i])
    }

    /// Every shift realized by some pair of cells, with the entries `(i, j)`
    /// of an endomorphism it governs, in row-major order.
    pub fn shift_blocks(&self) -> BTreeMap<Shift, Vec<(usize, usize)>> {
        let mut out: BTreeMap<Shift, Vec<(usize, usize)>> = BTreeMap::new();
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                out.entry(self.entry_shift(i, j)).or_default().push((i, j));
            }
        }
        out
    }
}
