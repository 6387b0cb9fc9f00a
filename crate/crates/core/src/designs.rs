//! Latin squares with a Sudoku shape, orthogonality, blocks, and the
//! block-permutational property, plus the `mosls v1` text format.
//!
//! Symbols are 1-based (`1..=n`). Row, column and block indices in this API
//! are 0-based. For a square of type `(q, r)` the `(i, j)` block covers rows
//! `i*q .. (i+1)*q` and columns `j*r .. (j+1)*r`, with `i < r` and `j < q`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("shape ({q}, {r}) needs q >= 1 and r >= 1")]
    BadShape { q: usize, r: usize },
    #[error("expected {expected} entries for order {n}, got {got}")]
    WrongSize { n: usize, expected: usize, got: usize },
    #[error("symbol {symbol} at ({row}, {col}) is outside 1..={n}")]
    SymbolOutOfRange { row: usize, col: usize, symbol: u32, n: usize },
    #[error("squares have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("squares have different shapes")]
    ShapeMismatch,
    #[error("square is not Latin")]
    NotLatin,
    #[error("square is not a Sudoku Latin square of its type")]
    NotSudoku,
    #[error("block ({i}, {j}) is out of range for type ({q}, {r})")]
    BlockOutOfRange { i: usize, j: usize, q: usize, r: usize },
    #[error("blocks have different dimensions")]
    BlockDimensions,
    #[error("block has a repeated entry {0}")]
    RepeatedEntry(u32),
    #[error("blocks are over different symbol sets")]
    DifferentSymbols,
    #[error("family is empty")]
    EmptyFamily,
}

/// Sudoku type `(q, r)`: blocks are `q` rows by `r` columns, order `q*r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SudokuShape {
    q: usize,
    r: usize,
}

impl SudokuShape {
    pub fn new(q: usize, r: usize) -> Result<Self, DesignError> {
        if q == 0 || r == 0 {
            return Err(DesignError::BadShape { q, r });
        }
        Ok(Self { q, r })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.q * self.r
    }

    pub fn transposed(&self) -> Self {
        Self { q: self.r, r: self.q }
    }

    /// `(block_row, block_col)` of a cell.
    pub fn block_of(&self, row: usize, col: usize) -> (usize, usize) {
        (row / self.q, col / self.r)
    }
}

impl fmt::Display for SudokuShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    shape: SudokuShape,
    entries: Vec<u32>,
}

/// A `q x r` block of a square, entries row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub block_row: usize,
    pub block_col: usize,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<u32>,
}

impl Block {
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, DesignError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(DesignError::BlockDimensions);
        }
        Ok(Self {
            block_row: 0,
            block_col: 0,
            rows: rows.len(),
            cols,
            cells: rows.concat(),
        })
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.cells[a * self.cols + b]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.cols).map(<[u32]>::to_vec).collect()
    }
}

impl LatinSquare {
    /// Checks dimensions and the symbol range only; the Latin and Sudoku
    /// properties are checked separately so invalid squares can be diagnosed.
    pub fn new(shape: SudokuShape, entries: Vec<u32>) -> Result<Self, DesignError> {
        let n = shape.order();
        if entries.len() != n * n {
            return Err(DesignError::WrongSize {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&s| s == 0 || s as usize > n) {
            return Err(DesignError::SymbolOutOfRange {
                row: pos / n,
                col: pos % n,
                symbol: entries[pos],
                n,
            });
        }
        Ok(Self { shape, entries })
    }

    pub fn from_rows(shape: SudokuShape, rows: &[Vec<u32>]) -> Result<Self, DesignError> {
        let n = shape.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            let got = rows.iter().map(Vec::len).sum();
            return Err(DesignError::WrongSize {
                n,
                expected: n * n,
                got,
            });
        }
        Self::new(shape, rows.concat())
    }

    /// `L(i, j) = ((i + j) mod n) + 1`.
    pub fn cyclic(shape: SudokuShape) -> Self {
        let n = shape.order();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32 + 1))
            .collect();
        Self { shape, entries }
    }

    pub fn shape(&self) -> SudokuShape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.order() + col]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.order()).map(<[u32]>::to_vec).collect()
    }

    /// Same entries under a different type annotation of equal order.
    pub fn with_shape(&self, shape: SudokuShape) -> Result<Self, DesignError> {
        Self::new(shape, self.entries.clone())
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, symbol: u32) {
        let n = self.order();
        self.entries[row * n + col] = symbol;
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n + 1];
        let mut line_ok = |cell: &dyn Fn(usize) -> u32| {
            seen.fill(false);
            (0..n).all(|k| !std::mem::replace(&mut seen[cell(k) as usize], true))
        };
        (0..n).all(|i| line_ok(&|j| self.get(i, j))) && (0..n).all(|j| line_ok(&|i| self.get(i, j)))
    }

    pub fn is_sudoku(&self) -> Result<bool, DesignError> {
        if !self.is_latin() {
            return Err(DesignError::NotLatin);
        }
        let (q, r) = (self.shape.q, self.shape.r);
        let n = self.order();
        let mut seen = vec![false; n + 1];
        for bi in 0..r {
            for bj in 0..q {
                seen.fill(false);
                for a in 0..q {
                    for b in 0..r {
                        let s = self.get(bi * q + a, bj * r + b) as usize;
                        if std::mem::replace(&mut seen[s], true) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn block(&self, i: usize, j: usize) -> Result<Block, DesignError> {
        let (q, r) = (self.shape.q, self.shape.r);
        if i >= r || j >= q {
            return Err(DesignError::BlockOutOfRange { i, j, q, r });
        }
        let cells = (0..q)
            .flat_map(|a| (0..r).map(move |b| (a, b)))
            .map(|(a, b)| self.get(i * q + a, j * r + b))
            .collect();
        Ok(Block {
            block_row: i,
            block_col: j,
            rows: q,
            cols: r,
            cells,
        })
    }

    pub fn is_block_permutational(&self) -> Result<bool, DesignError> {
        if !self.is_sudoku()? {
            return Err(DesignError::NotSudoku);
        }
        let first = self.block(0, 0)?;
        for i in 0..self.shape.r {
            for j in 0..self.shape.q {
                if block_map_factorization(&first, &self.block(i, j)?)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(j, i))
            .collect();
        Self {
            shape: self.shape.transposed(),
            entries,
        }
    }

    /// Applies `symbol -> perm[symbol - 1]`; `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let entries = self.entries.iter().map(|&s| perm[s as usize - 1]).collect();
        Self {
            shape: self.shape,
            entries,
        }
    }

    /// New square with row `i` taken from row `rows[i]` and column `j` from
    /// column `cols[j]` of this one.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        let n = self.order();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(rows[i], cols[j]))
            .collect();
        Self {
            shape: self.shape,
            entries,
        }
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.order()) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, DesignError> {
    let n = a.order();
    if b.order() != n {
        return Err(DesignError::OrderMismatch(n, b.order()));
    }
    let mut seen = vec![false; n * n];
    Ok(a.entries.iter().zip(&b.entries).all(|(&x, &y)| {
        let idx = (x as usize - 1) * n + (y as usize - 1);
        !std::mem::replace(&mut seen[idx], true)
    }))
}

/// Row and column permutations `(sigma, tau)`.
pub type LineMaps = (Vec<usize>, Vec<usize>);

/// Finds permutations `(sigma, tau)` with `m(a, b) = m2(sigma[a], tau[b])`
/// using the unique symbol-matching bijection between the two blocks.
/// Returns `None` when that bijection does not split into a row part and a
/// column part.
pub fn block_map_factorization(
    m: &Block,
    m2: &Block,
) -> Result<Option<LineMaps>, DesignError> {
    if m.rows != m2.rows || m.cols != m2.cols {
        return Err(DesignError::BlockDimensions);
    }
    let max = m.cells.iter().chain(&m2.cells).copied().max().unwrap_or(0) as usize;
    let mut pos2 = vec![None; max + 1];
    for (idx, &s) in m2.cells.iter().enumerate() {
        if pos2[s as usize].replace(idx).is_some() {
            return Err(DesignError::RepeatedEntry(s));
        }
    }
    let mut seen = vec![false; max + 1];
    for &s in &m.cells {
        if std::mem::replace(&mut seen[s as usize], true) {
            return Err(DesignError::RepeatedEntry(s));
        }
        if pos2[s as usize].is_none() {
            return Err(DesignError::DifferentSymbols);
        }
    }

    let mut sigma = vec![usize::MAX; m.rows];
    let mut tau = vec![usize::MAX; m.cols];
    for a in 0..m.rows {
        for b in 0..m.cols {
            let idx = pos2[m.get(a, b) as usize].unwrap();
            let (a2, b2) = (idx / m.cols, idx % m.cols);
            if sigma[a] == usize::MAX {
                sigma[a] = a2;
            } else if sigma[a] != a2 {
                return Ok(None);
            }
            if tau[b] == usize::MAX {
                tau[b] = b2;
            } else if tau[b] != b2 {
                return Ok(None);
            }
        }
    }
    Ok(Some((sigma, tau)))
}

/// An ordered list of squares sharing one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoslsFamily {
    shape: SudokuShape,
    squares: Vec<LatinSquare>,
}

/// Outcome of validating every square and every pair of a family.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FamilyReport {
    pub latin: Vec<bool>,
    pub sudoku: Vec<bool>,
    pub block_permutational: Vec<bool>,
    /// `orthogonal[a][b]` for `a != b`; the diagonal is reported `true`.
    pub orthogonal: Vec<Vec<bool>>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.latin.iter().all(|&x| x)
            && self.sudoku.iter().all(|&x| x)
            && self.block_permutational.iter().all(|&x| x)
            && self.orthogonal.iter().flatten().all(|&x| x)
    }
}

impl MoslsFamily {
    pub fn new(shape: SudokuShape, squares: Vec<LatinSquare>) -> Result<Self, DesignError> {
        if squares.iter().any(|s| s.shape != shape) {
            return Err(DesignError::ShapeMismatch);
        }
        Ok(Self { shape, squares })
    }

    pub fn shape(&self) -> SudokuShape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn into_squares(self) -> Vec<LatinSquare> {
        self.squares
    }

    /// First `count` squares.
    pub fn truncated(&self, count: usize) -> Self {
        Self {
            shape: self.shape,
            squares: self.squares.iter().take(count).cloned().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            shape: self.shape.transposed(),
            squares: self.squares.iter().map(LatinSquare::transpose).collect(),
        }
    }

    pub fn validate(&self) -> FamilyReport {
        let latin: Vec<bool> = self.squares.iter().map(LatinSquare::is_latin).collect();
        let sudoku: Vec<bool> = self
            .squares
            .iter()
            .map(|s| s.is_sudoku().unwrap_or(false))
            .collect();
        let block_permutational = self
            .squares
            .iter()
            .zip(&sudoku)
            .map(|(s, &ok)| ok && s.is_block_permutational().unwrap_or(false))
            .collect();
        let f = self.squares.len();
        let orthogonal = (0..f)
            .map(|a| {
                (0..f)
                    .map(|b| {
                        a == b
                            || are_orthogonal(&self.squares[a], &self.squares[b]).unwrap_or(false)
                    })
                    .collect()
            })
            .collect();
        FamilyReport {
            latin,
            sudoku,
            block_permutational,
            orthogonal,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "mosls v1\norder {} type {} {} count {}\n",
            self.order(),
            self.shape.q,
            self.shape.r,
            self.squares.len()
        );
        for (k, sq) in self.squares.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            out.push_str(&sq.to_string());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_family(text)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn parse_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_family(text: &str) -> Result<MoslsFamily, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));

    match lines.next() {
        Some((_, "mosls v1")) => {}
        Some((ln, other)) => return Err(parse_err(ln, format!("expected `mosls v1`, found `{other}`"))),
        None => return Err(parse_err(1, "empty input")),
    }

    let (ln, header) = lines.next().ok_or_else(|| parse_err(2, "missing header line"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || parse_err(ln, "expected `order <n> type <q> <r> count <f>`");
    if words.len() != 7 || words[0] != "order" || words[2] != "type" || words[5] != "count" {
        return Err(bad_header());
    }
    let num = |w: &str| w.parse::<usize>().map_err(|_| bad_header());
    let (n, q, r, f) = (num(words[1])?, num(words[3])?, num(words[4])?, num(words[6])?);
    let shape = SudokuShape::new(q, r).map_err(|e| parse_err(ln, e.to_string()))?;
    if q * r != n {
        return Err(parse_err(ln, format!("q*r = {} does not equal order {n}", q * r)));
    }

    let mut squares = Vec::with_capacity(f);
    for k in 0..f {
        if k > 0 {
            match lines.next() {
                Some((_, "")) => {}
                Some((ln, _)) => return Err(parse_err(ln, "expected a blank line between squares")),
                None => return Err(parse_err(ln + 1, format!("expected {f} squares, found {k}"))),
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("square {} ends after {row} rows", k + 1)))?;
            let vals: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse::<u32>).collect();
            let vals = vals.map_err(|_| parse_err(ln, "non-integer entry"))?;
            if vals.len() != n {
                return Err(parse_err(ln, format!("expected {n} entries, found {}", vals.len())));
            }
            if let Some(&s) = vals.iter().find(|&&s| s == 0 || s as usize > n) {
                return Err(parse_err(ln, format!("symbol {s} outside 1..={n}")));
            }
            entries.extend(vals);
        }
        squares.push(LatinSquare::new(shape, entries).expect("dimensions checked"));
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(ln, "unexpected content after the last square"));
    }
    Ok(MoslsFamily { shape, squares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(q: usize, r: usize, rows: &[&[u32]]) -> LatinSquare {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        LatinSquare::from_rows(SudokuShape::new(q, r).unwrap(), &rows).unwrap()
    }

    fn mols_pair_order4() -> (LatinSquare, LatinSquare) {
        (
            sq(2, 2, &[&[1, 2, 4, 3], &[3, 4, 2, 1], &[4, 3, 1, 2], &[2, 1, 3, 4]]),
            sq(2, 2, &[&[1, 4, 3, 2], &[3, 2, 1, 4], &[4, 1, 2, 3], &[2, 3, 4, 1]]),
        )
    }

    fn sudoku9() -> LatinSquare {
        sq(
            3,
            3,
            &[
                &[5, 6, 4, 8, 9, 7, 2, 3, 1],
                &[9, 7, 8, 3, 1, 2, 6, 4, 5],
                &[1, 2, 3, 4, 5, 6, 7, 8, 9],
                &[3, 1, 2, 6, 4, 5, 9, 7, 8],
                &[4, 5, 6, 7, 8, 9, 1, 2, 3],
                &[8, 9, 7, 2, 3, 1, 5, 6, 4],
                &[7, 8, 9, 1, 2, 3, 4, 5, 6],
                &[2, 3, 1, 5, 6, 4, 8, 9, 7],
                &[6, 4, 5, 9, 7, 8, 3, 1, 2],
            ],
        )
    }

    fn sudoku6() -> LatinSquare {
        sq(
            2,
            3,
            &[
                &[1, 2, 3, 4, 5, 6],
                &[4, 5, 6, 1, 2, 3],
                &[2, 3, 1, 5, 6, 4],
                &[5, 6, 4, 2, 3, 1],
                &[3, 1, 2, 6, 4, 5],
                &[6, 4, 5, 3, 1, 2],
            ],
        )
    }

    #[test]
    fn latin_checks() {
        let (l1, _) = mols_pair_order4();
        assert!(l1.is_latin());
        assert!(LatinSquare::cyclic(SudokuShape::new(1, 7).unwrap()).is_latin());
        assert!(!sq(1, 2, &[&[1, 2], &[1, 2]]).is_latin());
        let err = LatinSquare::from_rows(SudokuShape::new(1, 2).unwrap(), &[vec![1, 3], vec![2, 1]]);
        assert!(matches!(err, Err(DesignError::SymbolOutOfRange { symbol: 3, .. })));
    }

    #[test]
    fn sudoku_checks() {
        assert!(sudoku9().is_sudoku().unwrap());
        let remark_l2 = sq(2, 2, &[&[1, 2, 3, 4], &[3, 1, 4, 2], &[2, 4, 1, 3], &[4, 3, 2, 1]]);
        assert!(remark_l2.is_latin());
        assert!(!remark_l2.is_sudoku().unwrap());
        let row_shape = LatinSquare::cyclic(SudokuShape::new(1, 5).unwrap());
        assert!(row_shape.is_sudoku().unwrap());
        assert_eq!(sq(1, 2, &[&[1, 2], &[1, 2]]).is_sudoku(), Err(DesignError::NotLatin));
    }

    #[test]
    fn orthogonality() {
        let (l1, l2) = mols_pair_order4();
        assert!(are_orthogonal(&l1, &l2).unwrap());
        assert!(are_orthogonal(&l2, &l1).unwrap());
        assert!(!are_orthogonal(&l1, &l1).unwrap());
        assert!(l1.is_sudoku().unwrap() && l2.is_sudoku().unwrap());
        let small = LatinSquare::cyclic(SudokuShape::new(1, 3).unwrap());
        assert_eq!(are_orthogonal(&l1, &small), Err(DesignError::OrderMismatch(4, 3)));
    }

    #[test]
    fn blocks() {
        let l = sudoku9();
        assert_eq!(l.block(0, 0).unwrap().to_rows(), vec![vec![5, 6, 4], vec![9, 7, 8], vec![1, 2, 3]]);
        let rowish = LatinSquare::cyclic(SudokuShape::new(1, 4).unwrap());
        assert_eq!(rowish.block(0, 0).unwrap().cells, rowish.rows()[0]);
        let colish = LatinSquare::cyclic(SudokuShape::new(4, 1).unwrap());
        let first_col: Vec<u32> = (0..4).map(|i| colish.get(i, 0)).collect();
        assert_eq!(colish.block(0, 0).unwrap().cells, first_col);
        assert!(matches!(l.block(3, 0), Err(DesignError::BlockOutOfRange { .. })));
    }

    #[test]
    fn factorization_examples() {
        let m = Block::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(block_map_factorization(&m, &m).unwrap(), Some((vec![0, 1], vec![0, 1])));
        let swapped = Block::from_rows(&[vec![2, 1], vec![4, 3]]).unwrap();
        assert_eq!(block_map_factorization(&m, &swapped).unwrap(), Some((vec![0, 1], vec![1, 0])));
        let twisted = Block::from_rows(&[vec![1, 4], vec![3, 2]]).unwrap();
        assert_eq!(block_map_factorization(&m, &twisted).unwrap(), None);
        // Oracle: no pair of 2x2 permutations maps m onto twisted.
        let perms = [[0usize, 1], [1, 0]];
        let any = perms.iter().any(|s| {
            perms.iter().any(|t| {
                (0..2).all(|a| (0..2).all(|b| m.get(a, b) == twisted.get(s[a], t[b])))
            })
        });
        assert!(!any);

        let other = Block::from_rows(&[vec![1, 2], vec![3, 5]]).unwrap();
        assert_eq!(block_map_factorization(&m, &other), Err(DesignError::DifferentSymbols));
        let repeated = Block::from_rows(&[vec![1, 1], vec![3, 4]]).unwrap();
        assert!(matches!(block_map_factorization(&repeated, &m), Err(DesignError::RepeatedEntry(1))));
    }

    #[test]
    fn block_permutational_examples() {
        assert!(sudoku9().is_block_permutational().unwrap());
        assert!(sudoku6().is_block_permutational().unwrap());
        let rowish = sq(1, 3, &[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]);
        assert!(rowish.is_block_permutational().unwrap());
        let remark_l2 = sq(2, 2, &[&[1, 2, 3, 4], &[3, 1, 4, 2], &[2, 4, 1, 3], &[4, 3, 2, 1]]);
        assert_eq!(remark_l2.is_block_permutational(), Err(DesignError::NotSudoku));
    }

    #[test]
    fn transposition() {
        let l = sudoku6();
        let t = l.transpose();
        assert_eq!(t.shape(), SudokuShape::new(3, 2).unwrap());
        assert!(t.is_sudoku().unwrap());
        assert_eq!(t.transpose(), l);
    }

    /// Brute force over all permutations of `0..k`.
    fn all_perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(k - 1) {
            for pos in 0..=p.len() {
                let mut v = p.clone();
                v.insert(pos, k - 1);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn factorization_finds_every_permuted_block() {
        for q in 1..=3 {
            for r in 1..=3 {
                let m = Block {
                    block_row: 0,
                    block_col: 0,
                    rows: q,
                    cols: r,
                    cells: (1..=(q * r) as u32).collect(),
                };
                for sigma in all_perms(q) {
                    for tau in all_perms(r) {
                        let cells = (0..q)
                            .flat_map(|a| (0..r).map(move |b| (a, b)))
                            .map(|(a, b)| m.get(sigma[a], tau[b]))
                            .collect();
                        let permuted = Block { cells, ..m.clone() };
                        let (s, t) = block_map_factorization(&permuted, &m).unwrap().unwrap();
                        assert_eq!((s, t), (sigma.clone(), tau.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn text_format_round_trip() {
        let (l1, l2) = mols_pair_order4();
        let fam = MoslsFamily::new(l1.shape(), vec![l1, l2]).unwrap();
        let text = fam.to_text();
        assert!(text.starts_with("mosls v1\norder 4 type 2 2 count 2\n1 2 4 3\n"));
        assert_eq!(MoslsFamily::parse(&text).unwrap(), fam);
    }

    #[test]
    fn parser_diagnostics() {
        let bad_order = "mosls v1\norder 4 type 2 3 count 1\n";
        assert_eq!(MoslsFamily::parse(bad_order).unwrap_err().line, 2);
        let short_row = "mosls v1\norder 2 type 1 2 count 1\n1 2\n2\n";
        assert_eq!(MoslsFamily::parse(short_row).unwrap_err().line, 4);
        let range = "mosls v1\norder 2 type 1 2 count 1\n1 2\n2 3\n";
        assert_eq!(MoslsFamily::parse(range).unwrap_err().line, 4);
        assert_eq!(MoslsFamily::parse("mosls v2\n").unwrap_err().line, 1);
        let missing = "mosls v1\norder 2 type 1 2 count 2\n1 2\n2 1\n";
        assert!(MoslsFamily::parse(missing).is_err());
    }

    proptest! {
        #[test]
        fn orthogonality_is_symmetric(seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let base = LatinSquare::cyclic(SudokuShape::new(1, 5).unwrap());
            let mut rows: Vec<usize> = (0..5).collect();
            let mut cols: Vec<usize> = (0..5).collect();
            let mut syms: Vec<u32> = (1..=5).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            syms.shuffle(&mut rng);
            let other = base.permute(&rows, &cols).relabel(&syms);
            prop_assert_eq!(are_orthogonal(&base, &other).unwrap(), are_orthogonal(&other, &base).unwrap());
        }
    }
}
