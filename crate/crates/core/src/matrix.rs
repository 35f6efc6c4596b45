//! Binomial coefficient matrix and its reduced row echelon form.
//!
//! Rows are species, columns are the non-degenerate reactions, and entry
//! `(s, j)` is the net consumption of species `s` by reaction `j`. The
//! network is unconditionally binomial iff every row of the RREF has at most
//! one nonzero entry.
//!
//! Elimination is plain Gauss–Jordan over exact rationals, cubic in the
//! matrix dimension.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomposition::species_coefficient;
use crate::network::{ReactionNetwork, SpeciesId};
pub use crate::rational::Rational;
use crate::Verdict;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_nonzeros(&self, r: usize) -> usize {
        self.row(r).iter().filter(|v| !v.is_zero()).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries as exact rational strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|v| v.to_string()).collect()).collect()
    }
}

/// Integer matrix of species coefficients, one column per non-degenerate
/// reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialCoefficientMatrix {
    pub entries: Vec<Vec<i64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// Network reaction index behind each column.
    pub col_reactions: Vec<usize>,
}

impl BinomialCoefficientMatrix {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_i64(&self.entries, self.cols())
    }
}

/// Label of the reaction vertex / matrix column for reaction `index`.
pub fn reaction_label(index: usize) -> String {
    format!("r{}", index + 1)
}

pub fn build_matrix(net: &ReactionNetwork) -> BinomialCoefficientMatrix {
    let reactions: Vec<_> = net.nondegenerate_reactions().collect();
    let entries = net
        .species_ids()
        .map(|s| reactions.iter().map(|rx| species_coefficient(rx, s)).collect())
        .collect();
    BinomialCoefficientMatrix {
        entries,
        row_labels: net.species_names().to_vec(),
        col_labels: reactions.iter().map(|rx| reaction_label(rx.index)).collect(),
        col_reactions: reactions.iter().map(|rx| rx.index).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub matrix: RationalMatrix,
    /// `(row, col)` of every pivot, in the reduced matrix.
    pub pivots: Vec<(usize, usize)>,
    pub rank: usize,
    /// Input row that ended up at each row of the reduced matrix.
    pub row_origin: Vec<usize>,
}

/// Gauss–Jordan elimination to reduced row echelon form.
///
/// Columns are scanned left to right; the pivot of a column is the
/// lowest-index input row that has not pivoted yet and is nonzero there.
/// Pivot rows are placed in pivot order, followed by the zero rows in input
/// order.
pub fn rref(m: &RationalMatrix) -> RrefResult {
    let (n, cols) = (m.rows(), m.cols());
    let mut rows = m.to_rows();
    let mut used = vec![false; n];
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new();

    for c in 0..cols {
        let Some(p) = (0..n).find(|&i| !used[i] && !rows[i][c].is_zero()) else {
            continue;
        };
        used[p] = true;
        pivot_rows.push((p, c));

        let inv = rows[p][c].recip();
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[p][j].is_zero()).collect();
        for &j in &support {
            rows[p][j] = &rows[p][j] * &inv;
        }
        let pivot_row = std::mem::take(&mut rows[p]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == p || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
        rows[p] = pivot_row;
    }

    let mut row_origin: Vec<usize> = pivot_rows.iter().map(|&(r, _)| r).collect();
    row_origin.extend((0..n).filter(|&i| !used[i]));
    let pivots = pivot_rows.iter().enumerate().map(|(k, &(_, c))| (k, c)).collect();
    let ordered: Vec<Vec<Rational>> = row_origin.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
    RrefResult {
        matrix: RationalMatrix::from_rows(ordered, cols),
        pivots,
        rank: pivot_rows.len(),
        row_origin,
    }
}

impl RrefResult {
    /// True if the matrix is in reduced row echelon form with the recorded
    /// pivots.
    pub fn is_reduced(&self) -> bool {
        let m = &self.matrix;
        let mut last_col: Option<usize> = None;
        for r in 0..m.rows() {
            let lead = (0..m.cols()).find(|&c| !m.get(r, c).is_zero());
            match lead {
                None => {
                    if r < self.rank {
                        return false;
                    }
                }
                Some(c) => {
                    if r >= self.rank || self.pivots[r] != (r, c) || !m.get(r, c).is_one() {
                        return false;
                    }
                    if last_col.is_some_and(|l| l >= c) {
                        return false;
                    }
                    last_col = Some(c);
                    if (0..m.rows()).any(|i| i != r && !m.get(i, c).is_zero()) {
                        return false;
                    }
                }
            }
        }
        self.pivots.len() == self.rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixVerdict {
    pub verdict: Verdict,
    /// Input rows (species) whose reduced row has more than one nonzero.
    pub violating_rows: Vec<usize>,
}

/// At most one nonzero entry per row of the reduced matrix.
pub fn is_unconditionally_binomial_matrix(r: &RrefResult) -> MatrixVerdict {
    let violating_rows: Vec<usize> = (0..r.matrix.rows())
        .filter(|&i| r.matrix.row_nonzeros(i) > 1)
        .map(|i| r.row_origin[i])
        .collect();
    let verdict = if violating_rows.is_empty() {
        Verdict::UnconditionallyBinomial
    } else {
        Verdict::NotUnconditionallyBinomial
    };
    MatrixVerdict { verdict, violating_rows }
}

/// Runs the whole matrix route on a network.
pub fn matrix_method(net: &ReactionNetwork) -> (BinomialCoefficientMatrix, RrefResult, MatrixVerdict) {
    let bcm = build_matrix(net);
    let reduced = rref(&bcm.to_rational());
    let verdict = is_unconditionally_binomial_matrix(&reduced);
    (bcm, reduced, verdict)
}

/// Machine-readable matrix dump; entries are exact rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDump {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, m: &RationalMatrix) -> Self {
        Self { rows: row_labels, cols: col_labels, entries: m.to_strings() }
    }

    pub fn of_matrix(bcm: &BinomialCoefficientMatrix) -> Self {
        Self::new(bcm.row_labels.clone(), bcm.col_labels.clone(), &bcm.to_rational())
    }

    /// The reduced matrix with each row labelled by the species it came from.
    pub fn of_rref(bcm: &BinomialCoefficientMatrix, r: &RrefResult) -> Self {
        let rows = r.row_origin.iter().map(|&i| bcm.row_labels[i].clone()).collect();
        Self::new(rows, bcm.col_labels.clone(), &r.matrix)
    }
}

/// Right-aligned text table with row and column labels.
impl fmt::Display for MatrixDump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_w = self.rows.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols.len())
            .map(|c| {
                self.entries
                    .iter()
                    .map(|row| row[c].len())
                    .chain(std::iter::once(self.cols[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        write!(f, "{:label_w$}", "")?;
        for (c, w) in widths.iter().enumerate() {
            write!(f, "  {:>w$}", self.cols[c])?;
        }
        writeln!(f)?;
        for (r, row) in self.entries.iter().enumerate() {
            write!(f, "{:<label_w$}", self.rows[r])?;
            for (c, w) in widths.iter().enumerate() {
                write!(f, "  {:>w$}", row[c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Species names of the violating rows.
pub fn violating_species(net: &ReactionNetwork, v: &MatrixVerdict) -> Vec<String> {
    v.violating_rows.iter().map(|&i| net.species_name(SpeciesId(i)).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Complex, ReversibleReaction};
    use crate::parser::parse_network;

    fn ints(m: &RationalMatrix) -> Vec<Vec<String>> {
        m.to_strings()
    }

    fn strs(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    /// Example 3 with species listed as A, B, C, D.
    fn example3_abcd() -> ReactionNetwork {
        let [a, b, c, d] = [0, 1, 2, 3].map(SpeciesId);
        let cx = |t: &[(SpeciesId, u32)]| Complex::from_terms(t.iter().copied()).unwrap();
        let rx = |i: usize, l: Complex, r: Complex| ReversibleReaction {
            index: i,
            reactant: l,
            product: r,
            forward_label: format!("kf{i}"),
            backward_label: format!("kb{i}"),
        };
        ReactionNetwork::new(
            ["A", "B", "C", "D"].map(String::from).to_vec(),
            vec![
                rx(0, cx(&[(b, 3)]), cx(&[(c, 2), (a, 1)])),
                rx(1, cx(&[(c, 2), (a, 1)]), cx(&[(d, 2), (b, 2)])),
                rx(2, cx(&[(d, 2), (b, 2)]), cx(&[(b, 3)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn intro_matrix() {
        let net = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        let m = build_matrix(&net);
        assert_eq!(m.entries, vec![vec![1, -1], vec![1, 0], vec![-1, 1], vec![0, -2]]);
        assert_eq!(m.col_labels, ["r1", "r2"]);
        let r = rref(&m.to_rational());
        assert_eq!(ints(&r.matrix), strs(&[&["1", "0"], &["0", "1"], &["0", "0"], &["0", "0"]]));
        assert_eq!(r.rank, 2);
        assert!(r.is_reduced());
        assert_eq!(is_unconditionally_binomial_matrix(&r).verdict, Verdict::UnconditionallyBinomial);
    }

    #[test]
    fn example3_matrix_and_verdict() {
        let net = example3_abcd();
        let m = build_matrix(&net);
        assert_eq!(
            m.entries,
            vec![vec![-1, 1, 0], vec![3, -2, -1], vec![-2, 2, 0], vec![0, -2, 2]]
        );
        let r = rref(&m.to_rational());
        assert_eq!(
            ints(&r.matrix),
            strs(&[&["1", "0", "-1"], &["0", "1", "-1"], &["0", "0", "0"], &["0", "0", "0"]])
        );
        let v = is_unconditionally_binomial_matrix(&r);
        assert_eq!(v.verdict, Verdict::NotUnconditionallyBinomial);
        assert_eq!(violating_species(&net, &v), ["A", "B"]);
    }

    #[test]
    fn example3_in_parse_order() {
        let net = parse_network("3 B <=> 2 C + A <=> 2 D + 2 B <=> 3 B").unwrap();
        let (_, r, v) = matrix_method(&net);
        assert_eq!(
            ints(&r.matrix),
            strs(&[&["1", "0", "-1"], &["0", "1", "-1"], &["0", "0", "0"], &["0", "0", "0"]])
        );
        assert_eq!(v.verdict, Verdict::NotUnconditionallyBinomial);
        assert_eq!(violating_species(&net, &v), ["B", "C"]);
    }

    #[test]
    fn example2_reduces_to_identity() {
        let net = parse_network("2A + B <=> C <=> A <=> 2B").unwrap();
        let m = build_matrix(&net);
        assert_eq!(m.entries, vec![vec![2, -1, 1], vec![1, 0, -2], vec![-1, 1, 0]]);
        let r = rref(&m.to_rational());
        assert_eq!(ints(&r.matrix), strs(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]));
        assert_eq!(is_unconditionally_binomial_matrix(&r).verdict, Verdict::UnconditionallyBinomial);
    }

    #[test]
    fn single_reaction_and_degenerate() {
        let net = parse_network("A <=> B").unwrap();
        assert_eq!(build_matrix(&net).entries, vec![vec![1], vec![-1]]);
        let net = parse_network("A <=> A\nA <=> B").unwrap();
        let m = build_matrix(&net);
        assert_eq!(m.entries, vec![vec![1], vec![-1]]);
        assert_eq!(m.col_labels, ["r2"]);
        let net = parse_network("A <=> A").unwrap();
        let m = build_matrix(&net);
        assert_eq!(m.cols(), 0);
        let r = rref(&m.to_rational());
        assert_eq!(r.rank, 0);
        assert_eq!(is_unconditionally_binomial_matrix(&r).verdict, Verdict::UnconditionallyBinomial);
    }

    #[test]
    fn zero_matrix() {
        let z = RationalMatrix::zeros(3, 2);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn fractions_appear() {
        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![0, 0]], 2);
        let r = rref(&m);
        assert_eq!(ints(&r.matrix), strs(&[&["1", "1/2"], &["0", "0"]]));
    }

    #[test]
    fn dump_table_is_aligned() {
        let net = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        let m = build_matrix(&net);
        let text = MatrixDump::of_matrix(&m).to_string();
        assert_eq!(text, "   r1  r2\nA   1  -1\nB   1   0\nC  -1   1\nD   0  -2\n");
        let json = serde_json::to_string(&MatrixDump::of_matrix(&m)).unwrap();
        assert!(json.starts_with(r#"{"rows":["A","B","C","D"],"cols":["r1","r2"],"entries":[["1","-1"]"#));
    }
}
