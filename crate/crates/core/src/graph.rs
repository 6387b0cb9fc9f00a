//! Cell graphs of MOLS and MOSLS families.
//!
//! Vertices are the `n^2` cells in row-major order, so cell `(row, col)`
//! (0-based) is vertex `row * n + col`. Two cells are adjacent in the MOLS
//! graph when their coordinate tuples `(row, col, L_k(row, col) for k in F)`
//! agree in exactly one place. The MOSLS graph adds the block edges `B`:
//! pairs in the same block with different row and different column.

use serde::Serialize;
use thiserror::Error;

use crate::designs::{MoslsFamily, SudokuShape};
use crate::matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("square index {index} is out of range for a family of {len}")]
    SubsetOutOfRange { index: usize, len: usize },
    #[error("square index {0} appears twice in the subset")]
    SubsetRepeated(usize),
    #[error("cells {a:?} and {b:?} agree in both {first} and {second}")]
    NonOrthogonal {
        a: (usize, usize),
        b: (usize, usize),
        first: Coordinate,
        second: Coordinate,
    },
    #[error("square {0} is not a Sudoku Latin square of the family type")]
    NotSudoku(usize),
    #[error("block partition is not equitable: vertex {vertex} has {count} neighbours in part {part}, expected {expected}")]
    NotEquitable {
        vertex: usize,
        part: usize,
        count: i64,
        expected: i64,
    },
}

/// One coordinate of a cell tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Row,
    Col,
    /// Symbol in the family square with this (0-based) index.
    Square(usize),
}

impl std::fmt::Display for Coordinate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coordinate::Row => write!(f, "row"),
            Coordinate::Col => write!(f, "column"),
            Coordinate::Square(k) => write!(f, "the symbol of square {}", k + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Mols,
    Mosls,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGraph {
    shape: SudokuShape,
    subset: Vec<usize>,
    flavor: Flavor,
    adjacency: IntMatrix,
}

impl CellGraph {
    pub fn shape(&self) -> SudokuShape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// Number of squares used, `|F|`.
    pub fn family_size(&self) -> usize {
        self.subset.len()
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn vertex(&self, row: usize, col: usize) -> usize {
        row * self.order() + col
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.row(v).iter().filter(|&&a| a != 0).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.vertex_count()).all(|v| self.degree(v) == k).then_some(k)
    }

    /// One `u v` pair per line, 1-based, `u < v`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        let n = self.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacency.get(u, v) != 0 {
                    out.push_str(&format!("{} {}\n", u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Dense 0/1 matrix, one row per line.
    pub fn matrix_dump(&self) -> String {
        self.adjacency.to_string()
    }
}

fn check_subset(family: &MoslsFamily, subset: &[usize]) -> Result<(), GraphError> {
    for (i, &k) in subset.iter().enumerate() {
        if k >= family.len() {
            return Err(GraphError::SubsetOutOfRange {
                index: k,
                len: family.len(),
            });
        }
        if subset[..i].contains(&k) {
            return Err(GraphError::SubsetRepeated(k));
        }
    }
    Ok(())
}

/// Adjacency of the MOLS graph on the selected squares (0-based indices).
pub fn build_mols_graph(family: &MoslsFamily, subset: &[usize]) -> Result<CellGraph, GraphError> {
    check_subset(family, subset)?;
    let n = family.order();
    let squares: Vec<_> = subset.iter().map(|&k| &family.squares()[k]).collect();
    let mut adjacency = IntMatrix::zeros(n * n);
    for u in 0..n * n {
        let (ur, uc) = (u / n, u % n);
        for v in u + 1..n * n {
            let (vr, vc) = (v / n, v % n);
            let mut agree = Vec::with_capacity(2);
            if ur == vr {
                agree.push(Coordinate::Row);
            }
            if uc == vc {
                agree.push(Coordinate::Col);
            }
            for (pos, sq) in squares.iter().enumerate() {
                if agree.len() >= 2 {
                    break;
                }
                if sq.get(ur, uc) == sq.get(vr, vc) {
                    agree.push(Coordinate::Square(subset[pos]));
                }
            }
            match agree.len() {
                0 => {}
                1 => {
                    adjacency.set(u, v, 1);
                    adjacency.set(v, u, 1);
                }
                _ => {
                    return Err(GraphError::NonOrthogonal {
                        a: (ur, uc),
                        b: (vr, vc),
                        first: agree[0],
                        second: agree[1],
                    })
                }
            }
        }
    }
    Ok(CellGraph {
        shape: family.shape(),
        subset: subset.to_vec(),
        flavor: Flavor::Mols,
        adjacency,
    })
}

/// Block-edge matrix `B`: cells in the same block with different row and
/// different column. Built from block membership.
pub fn block_matrix(shape: SudokuShape) -> IntMatrix {
    let n = shape.order();
    let mut b = IntMatrix::zeros(n * n);
    for u in 0..n * n {
        let (ur, uc) = (u / n, u % n);
        for v in 0..n * n {
            let (vr, vc) = (v / n, v % n);
            if ur != vr && uc != vc && shape.block_of(ur, uc) == shape.block_of(vr, vc) {
                b.set(u, v, 1);
            }
        }
    }
    b
}

/// MOLS graph plus block edges.
pub fn build_mosls_graph(family: &MoslsFamily, subset: &[usize]) -> Result<CellGraph, GraphError> {
    check_subset(family, subset)?;
    for &k in subset {
        if !family.squares()[k].is_sudoku().unwrap_or(false) {
            return Err(GraphError::NotSudoku(k));
        }
    }
    let mols = build_mols_graph(family, subset)?;
    let adjacency = mols.adjacency.add(&block_matrix(family.shape()));
    debug_assert!(adjacency.max_abs() <= 1);
    Ok(CellGraph {
        flavor: Flavor::Mosls,
        adjacency,
        ..mols
    })
}

/// Strongly regular parameters `(v, k, lambda, mu)` by exhaustive common
/// neighbour counting; `None` if the graph is not strongly regular (complete
/// and edgeless graphs are excluded).
pub fn srg_check(graph: &CellGraph) -> Option<(usize, usize, usize, usize)> {
    let v = graph.vertex_count();
    let k = graph.regular_degree()?;
    if k == 0 || k == v - 1 {
        return None;
    }
    let words = v.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..v)
        .map(|x| {
            let mut bits = vec![0u64; words];
            for (y, &a) in graph.adjacency.row(x).iter().enumerate() {
                if a != 0 {
                    bits[y / 64] |= 1 << (y % 64);
                }
            }
            bits
        })
        .collect();
    let mut lambda = None;
    let mut mu = None;
    for x in 0..v {
        for y in x + 1..v {
            let common: u32 = rows[x].iter().zip(&rows[y]).map(|(a, b)| (a & b).count_ones()).sum();
            let slot = if graph.adjacency.get(x, y) != 0 {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(common as usize),
                Some(c) if c != common as usize => return None,
                _ => {}
            }
        }
    }
    Some((v, k, lambda?, mu?))
}

/// Quotient matrix of an equitable partition, with the partition itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub parts: Vec<Vec<usize>>,
    pub entries: IntMatrix,
}

/// The `qr` blocks ordered `B(0,0), .., B(0,q-1), .., B(r-1,q-1)`, as vertex lists.
pub fn block_partition(shape: SudokuShape) -> Vec<Vec<usize>> {
    let (q, r, n) = (shape.q(), shape.r(), shape.order());
    let mut parts = vec![Vec::with_capacity(q * r); q * r];
    for row in 0..n {
        for col in 0..n {
            let (bi, bj) = shape.block_of(row, col);
            parts[bi * q + bj].push(row * n + col);
        }
    }
    parts
}

/// Counts neighbours of every vertex in every part of the block partition
/// and returns the quotient if the counts are constant on each part.
pub fn quotient_matrix(graph: &CellGraph) -> Result<QuotientMatrix, GraphError> {
    let parts = block_partition(graph.shape);
    let t = parts.len();
    let mut part_of = vec![0usize; graph.vertex_count()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let mut entries = IntMatrix::zeros(t);
    for (i, part) in parts.iter().enumerate() {
        for (pos, &x) in part.iter().enumerate() {
            let mut counts = vec![0i64; t];
            for (y, &a) in graph.adjacency.row(x).iter().enumerate() {
                counts[part_of[y]] += a;
            }
            for (j, &c) in counts.iter().enumerate() {
                if pos == 0 {
                    entries.set(i, j, c);
                } else if entries.get(i, j) != c {
                    return Err(GraphError::NotEquitable {
                        vertex: x,
                        part: j,
                        count: c,
                        expected: entries.get(i, j),
                    });
                }
            }
        }
    }
    Ok(QuotientMatrix { parts, entries })
}

/// `A_MOLS * B == B * A_MOLS` for the selected squares.
pub fn commute_check(family: &MoslsFamily, subset: &[usize]) -> Result<bool, GraphError> {
    let a = build_mols_graph(family, subset)?;
    let b = block_matrix(family.shape());
    Ok(a.adjacency.mul(&b) == b.mul(&a.adjacency))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{field_mosls, FieldConstructionSpec};
    use crate::designs::LatinSquare;

    fn field_family(p: u32, m: u32, n: u32) -> MoslsFamily {
        field_mosls(&FieldConstructionSpec::new(p, m, n).unwrap(), 16).unwrap()
    }

    /// `(qr-q-r-1-f) I + r (I_r x J_q) + q (J_r x I_q) + f J`.
    fn quotient_formula(q: usize, r: usize, f: usize) -> IntMatrix {
        let (qi, ri, fi) = (q as i64, r as i64, f as i64);
        let ir = IntMatrix::identity(r);
        let iq = IntMatrix::identity(q);
        let jr = IntMatrix::ones(r);
        let jq = IntMatrix::ones(q);
        IntMatrix::identity(q * r)
            .scale(qi * ri - qi - ri - 1 - fi)
            .add(&ir.kron(&jq).scale(ri))
            .add(&jr.kron(&iq).scale(qi))
            .add(&IntMatrix::ones(q * r).scale(fi))
    }

    #[test]
    fn mols_graph_degrees() {
        let fam = field_family(2, 1, 1);
        let g = build_mols_graph(&fam, &[0, 1]).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.regular_degree(), Some(12));
        assert!(g.adjacency().is_symmetric());
        assert_eq!(g.adjacency().trace(), 0);

        let rook = build_mols_graph(&fam, &[]).unwrap();
        assert_eq!(rook.regular_degree(), Some(6));
    }

    #[test]
    fn order_two_cyclic_square_is_complete() {
        let shape = SudokuShape::new(1, 2).unwrap();
        let fam = MoslsFamily::new(shape, vec![LatinSquare::cyclic(shape)]).unwrap();
        let g = build_mols_graph(&fam, &[0]).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(srg_check(&g), None);
    }

    #[test]
    fn subset_and_orthogonality_errors() {
        let fam = field_family(2, 1, 1);
        assert!(matches!(build_mols_graph(&fam, &[2]), Err(GraphError::SubsetOutOfRange { .. })));
        assert_eq!(build_mols_graph(&fam, &[0, 0]), Err(GraphError::SubsetRepeated(0)));
        let sq = fam.squares()[0].clone();
        let twice = MoslsFamily::new(fam.shape(), vec![sq.clone(), sq]).unwrap();
        let err = build_mols_graph(&twice, &[0, 1]).unwrap_err();
        assert!(matches!(
            err,
            GraphError::NonOrthogonal {
                first: Coordinate::Square(0),
                second: Coordinate::Square(1),
                ..
            }
        ));
    }

    #[test]
    fn mosls_degree_identity() {
        for (p, m, n) in [(2, 1, 1), (3, 1, 1), (2, 1, 2)] {
            let fam = field_family(p, m, n);
            let (q, r) = (fam.shape().q(), fam.shape().r());
            let order = q * r;
            for f in 0..=fam.len() {
                let subset: Vec<usize> = (0..f).collect();
                let g = build_mosls_graph(&fam, &subset).unwrap();
                assert_eq!(g.regular_degree(), Some((f + 2) * (order - 1) + (q - 1) * (r - 1)));
                assert!(g.adjacency().is_symmetric());
                assert_eq!(g.adjacency().trace(), 0);
            }
        }
    }

    #[test]
    fn row_shaped_families_have_no_block_edges() {
        let fam = crate::construct::plain_mols(5, 1, 16).unwrap();
        let mols = build_mols_graph(&fam, &[0, 1]).unwrap();
        let mosls = build_mosls_graph(&fam, &[0, 1]).unwrap();
        assert_eq!(mols.adjacency(), mosls.adjacency());
    }

    #[test]
    fn srg_parameters_by_pair_counting() {
        let fam = field_family(2, 1, 1);
        let g2 = build_mols_graph(&fam, &[0, 1]).unwrap();
        assert_eq!(srg_check(&g2), Some((16, 12, 8, 12)));
        let g1 = build_mols_graph(&fam, &[0]).unwrap();
        assert_eq!(srg_check(&g1), Some((16, 9, 4, 6)));
        let mosls = build_mosls_graph(&fam, &[0]).unwrap();
        assert_eq!(srg_check(&mosls), None);
        let mosls2 = build_mosls_graph(&fam, &[0, 1]).unwrap();
        assert_eq!(srg_check(&mosls2), None);

        let fam9 = field_family(3, 1, 1);
        for f in 1..=fam9.len() {
            let subset: Vec<usize> = (0..f).collect();
            let g = build_mols_graph(&fam9, &subset).unwrap();
            let n = 9;
            assert_eq!(
                srg_check(&g),
                Some((n * n, (f + 2) * (n - 1), n - 2 + f * (f + 1), (f + 1) * (f + 2)))
            );
        }
    }

    #[test]
    fn block_quotients_match_the_formula() {
        for (p, m, n) in [(2, 1, 1), (3, 1, 1), (2, 1, 2)] {
            let fam = field_family(p, m, n);
            let (q, r) = (fam.shape().q(), fam.shape().r());
            for f in 0..=fam.len() {
                let subset: Vec<usize> = (0..f).collect();
                let g = build_mosls_graph(&fam, &subset).unwrap();
                let quotient = quotient_matrix(&g).unwrap();
                assert_eq!(quotient.entries, quotient_formula(q, r, f), "({p},{m},{n}) f={f}");
            }
        }
    }

    #[test]
    fn row_shaped_quotient_has_degree_row_sums() {
        let fam = crate::construct::plain_mols(3, 1, 16).unwrap();
        let g = build_mosls_graph(&fam, &[0]).unwrap();
        let quotient = quotient_matrix(&g).unwrap();
        let k = g.regular_degree().unwrap() as i64;
        assert_eq!(quotient.entries.dim(), 3);
        for i in 0..3 {
            assert_eq!(quotient.entries.row(i).iter().sum::<i64>(), k);
        }
        assert_eq!(quotient.entries, quotient_formula(1, 3, 1));
    }

    #[test]
    fn non_equitable_partition_is_reported() {
        // The order-4 Latin, non-Sudoku square: its MOLS graph is regular but
        // symbol edges leave the blocks unevenly.
        let shape = SudokuShape::new(2, 2).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![3, 1, 4, 2], vec![2, 4, 1, 3], vec![4, 3, 2, 1]];
        let fam = MoslsFamily::new(shape, vec![LatinSquare::from_rows(shape, &rows).unwrap()]).unwrap();
        assert_eq!(build_mosls_graph(&fam, &[0]), Err(GraphError::NotSudoku(0)));
        let mols = build_mols_graph(&fam, &[0]).unwrap();
        assert!(matches!(quotient_matrix(&mols), Err(GraphError::NotEquitable { .. })));
    }

    #[test]
    fn field_families_commute_with_block_edges() {
        let fam = field_family(2, 1, 1);
        assert!(commute_check(&fam, &[0, 1]).unwrap());
        let fam9 = field_family(3, 1, 1);
        assert!(commute_check(&fam9, &[0]).unwrap());
    }

    #[test]
    fn block_matrix_is_a_kronecker_product_in_block_order() {
        // Ordering vertices block by block (block row, block col, row in block,
        // col in block) turns B into I_{rq} x (J_q - I_q) x (J_r - I_r).
        for (q, r) in [(2, 2), (2, 3), (3, 2), (1, 4)] {
            let shape = SudokuShape::new(q, r).unwrap();
            let order: Vec<usize> = block_partition(shape).concat();
            let b = block_matrix(shape).permuted(&order);
            let jq = IntMatrix::ones(q).sub(&IntMatrix::identity(q));
            let jr = IntMatrix::ones(r).sub(&IntMatrix::identity(r));
            let expected = IntMatrix::identity(q * r).kron(&jq).kron(&jr);
            assert_eq!(b, expected);
        }
    }

    #[test]
    fn exports() {
        let shape = SudokuShape::new(1, 2).unwrap();
        let fam = MoslsFamily::new(shape, vec![LatinSquare::cyclic(shape)]).unwrap();
        let g = build_mols_graph(&fam, &[0]).unwrap();
        assert_eq!(g.edge_list(), "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
        assert_eq!(g.matrix_dump(), "0 1 1 1\n1 0 1 1\n1 1 0 1\n1 1 1 0\n");
        assert_eq!(g.edge_count(), 6);
    }
}
