//! Grid bijections: the ways the `r·s` products `a_i + b_j` can be matched,
//! in order, to the sorted terms `c_1 ≤ ... ≤ c_t` of a product polynomial.
//!
//! Each bijection is a linear extension of the componentwise dominance order
//! on the grid, enumerated by Kahn's algorithm with backtracking over every
//! zero-in-degree choice.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

/// Term counts `(r, s)` of the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "grid shape needs positive sides");
        GridShape { rows, cols }
    }

    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    pub fn transpose(&self) -> Self {
        GridShape::new(self.cols, self.rows)
    }

    /// Row-major node index of a cell in the dominance dag.
    pub fn node(&self, cell: Cell) -> usize {
        cell.row * self.cols + cell.col
    }

    pub fn cell(&self, node: usize) -> Cell {
        Cell {
            row: node / self.cols,
            col: node % self.cols,
        }
    }

    /// All shapes `(r, s)` with `r·s = t`, `1 < r ≤ s`.
    pub fn splits_of(t: usize) -> Vec<GridShape> {
        (2..=t)
            .take_while(|r| r * r <= t)
            .filter(|r| t % r == 0)
            .map(|r| GridShape::new(r, t / r))
            .collect()
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A grid cell, stored 0-based and displayed 1-based as `(i,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn dominated_by(&self, other: &Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// The bijection `ρ`, stored as the cell sequence in term order:
/// `cells[k]` is the cell whose product is the `k`-th term (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridBijection {
    shape: GridShape,
    cells: Vec<Cell>,
    #[serde(skip)]
    labels: Vec<usize>,
}

impl GridBijection {
    /// Builds a bijection from its cell sequence, validating that it is a
    /// permutation of the grid that respects dominance.
    pub fn new(shape: GridShape, cells: Vec<Cell>) -> Option<Self> {
        if cells.len() != shape.size() {
            return None;
        }
        let mut labels = vec![usize::MAX; shape.size()];
        for (k, cell) in cells.iter().enumerate() {
            if cell.row >= shape.rows || cell.col >= shape.cols {
                return None;
            }
            let slot = &mut labels[shape.node(*cell)];
            if *slot != usize::MAX {
                return None;
            }
            *slot = k;
        }
        let bij = GridBijection {
            shape,
            cells,
            labels,
        };
        let respects = (0..shape.rows).all(|i| {
            (0..shape.cols).all(|j| {
                (i + 1 >= shape.rows || bij.label(i, j) < bij.label(i + 1, j))
                    && (j + 1 >= shape.cols || bij.label(i, j) < bij.label(i, j + 1))
            })
        });
        respects.then_some(bij)
    }

    fn from_nodes(shape: GridShape, nodes: &[usize]) -> Self {
        let cells = nodes.iter().map(|&n| shape.cell(n)).collect();
        let mut labels = vec![0; nodes.len()];
        for (k, &n) in nodes.iter().enumerate() {
            labels[n] = k;
        }
        GridBijection {
            shape,
            cells,
            labels,
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `ρ(i, j)`: the 0-based term index assigned to cell `(i, j)` (0-based).
    pub fn label(&self, row: usize, col: usize) -> usize {
        self.labels[row * self.shape.cols + col]
    }

    /// The same matching seen with the two factors exchanged.
    pub fn transpose(&self) -> GridBijection {
        let shape = self.shape.transpose();
        let cells = self.cells.iter().map(|c| Cell::new(c.col, c.row)).collect();
        GridBijection::new(shape, cells).expect("transpose preserves dominance")
    }

    /// Table row `k & (i,j) & ...` with a 1-based case number.
    pub fn table_row(&self, case: usize) -> String {
        let mut row = case.to_string();
        for c in &self.cells {
            row.push_str(" & ");
            row.push_str(&c.to_string());
        }
        row
    }
}

impl<'de> Deserialize<'de> for GridBijection {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            shape: GridShape,
            cells: Vec<Cell>,
        }
        let raw = Raw::deserialize(de)?;
        GridBijection::new(raw.shape, raw.cells)
            .ok_or_else(|| serde::de::Error::custom("cells do not form a dominance-compatible bijection"))
    }
}

/// A directed acyclic graph on nodes `0..n` with successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    succ: Vec<Vec<usize>>,
}

impl Dag {
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Self {
        let mut succ = vec![Vec::new(); nodes];
        for &(u, v) in edges {
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Dag { succ }
    }

    pub fn nodes(&self) -> usize {
        self.succ.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Visits every topological order. Zero-in-degree candidates are tried in
    /// ascending node order, so orders arrive lexicographically.
    pub fn for_each_topological_order<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.for_each_order_filtered(|_, _| true, &mut visit);
    }

    /// Like [`Dag::for_each_topological_order`], but a partial order is only
    /// extended by `node` when `accept(prefix, node)` holds. Rejected branches
    /// are pruned.
    pub fn for_each_order_filtered<A, F>(&self, mut accept: A, mut visit: F)
    where
        A: FnMut(&[usize], usize) -> bool,
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.nodes();
        let mut indegree = vec![0usize; n];
        for s in &self.succ {
            for &v in s {
                indegree[v] += 1;
            }
        }
        let mut placed = vec![false; n];
        let mut prefix = Vec::with_capacity(n);
        let _ = self.kahn(&mut indegree, &mut placed, &mut prefix, &mut accept, &mut visit);
    }

    fn kahn<A, F>(
        &self,
        indegree: &mut [usize],
        placed: &mut [bool],
        prefix: &mut Vec<usize>,
        accept: &mut A,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        A: FnMut(&[usize], usize) -> bool,
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if prefix.len() == self.nodes() {
            return visit(prefix);
        }
        for node in 0..self.nodes() {
            if placed[node] || indegree[node] != 0 || !accept(prefix, node) {
                continue;
            }
            placed[node] = true;
            prefix.push(node);
            for &v in &self.succ[node] {
                indegree[v] -= 1;
            }
            let flow = self.kahn(indegree, placed, prefix, accept, visit);
            for &v in &self.succ[node] {
                indegree[v] += 1;
            }
            prefix.pop();
            placed[node] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn topological_orders(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_topological_order(|order| {
            out.push(order.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    /// Number of ordered pairs `(u, v)`, `u ≠ v`, with a path from `u` to `v`.
    pub fn comparable_pairs(&self) -> u64 {
        let n = self.nodes();
        let mut count = 0;
        for start in 0..n {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.succ[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }
}

/// Covering relations of the dominance order on the grid, plus the edge
/// `(1,2) → (2,1)` when `symmetric` is set on a square grid. That extra edge
/// removes the factor exchange `a ↔ b` by requiring `b_2 ≤ a_2`.
pub fn dominance_dag(shape: GridShape, symmetric: bool) -> Dag {
    let mut edges = Vec::new();
    for i in 0..shape.rows {
        for j in 0..shape.cols {
            let here = shape.node(Cell::new(i, j));
            if i + 1 < shape.rows {
                edges.push((here, shape.node(Cell::new(i + 1, j))));
            }
            if j + 1 < shape.cols {
                edges.push((here, shape.node(Cell::new(i, j + 1))));
            }
        }
    }
    if symmetric && shape.rows == shape.cols && shape.rows >= 2 {
        edges.push((shape.node(Cell::new(0, 1)), shape.node(Cell::new(1, 0))));
    }
    Dag::new(shape.size(), &edges)
}

/// Streams every bijection for `shape` to `visit`, in lexicographic order.
pub fn for_each_bijection<F>(shape: GridShape, symmetric: bool, mut visit: F)
where
    F: FnMut(GridBijection) -> ControlFlow<()>,
{
    dominance_dag(shape, symmetric)
        .for_each_topological_order(|order| visit(GridBijection::from_nodes(shape, order)));
}

/// Pruned variant used by the factor search. `accept(prefix, node)` decides
/// whether the grid node `node` (see [`GridShape::node`]) may take the next
/// term position after the nodes already placed in `prefix`.
pub fn for_each_bijection_filtered<A, F>(shape: GridShape, symmetric: bool, accept: A, mut visit: F)
where
    A: FnMut(&[usize], usize) -> bool,
    F: FnMut(GridBijection) -> ControlFlow<()>,
{
    dominance_dag(shape, symmetric)
        .for_each_order_filtered(accept, |order| visit(GridBijection::from_nodes(shape, order)));
}

pub fn enumerate_bijections(shape: GridShape, symmetric: bool) -> Vec<GridBijection> {
    let mut out = Vec::new();
    for_each_bijection(shape, symmetric, |b| {
        out.push(b);
        ControlFlow::Continue(())
    });
    out
}

/// Closed form `(r²s² + rs² + r²s − 3rs) / 4` for the number of term pairs
/// whose order is fixed by dominance.
pub fn count_forced_pairs(shape: GridShape) -> u64 {
    let (r, s) = (shape.rows as u64, shape.cols as u64);
    (r * r * s * s + r * s * s + r * r * s - 3 * r * s) / 4
}

/// Comparable pairs of the dominance order counted directly.
pub fn comparable_pairs(shape: GridShape) -> u64 {
    dominance_dag(shape, false).comparable_pairs()
}
