use crate::error::{Error, Result};
use crate::matrix::SignMatrix;

/// True iff every listed row of `m` sums to zero. Rows are 1-based; row 1
/// is rejected because a normalized first row is all +1 and can never sum
/// to zero.
pub fn row_sum_test(m: &SignMatrix, rows: &[usize]) -> Result<bool> {
    let n = m.n();
    for &r in rows {
        if r < 2 || r > n {
            return Err(Error::invalid(
                "row index",
                format!("rows must lie in 2..{}, got {}", n, r),
            ));
        }
    }
    Ok(rows.iter().all(|&r| m.row_sum(r - 1) == 0))
}

/// Full Hadamard test: all distinct row pairs orthogonal.
pub fn is_hadamard(m: &SignMatrix) -> bool {
    let n = m.n();
    for i in 0..n {
        for j in i + 1..n {
            if m.row_dot(i, j) != 0 {
                return false;
            }
        }
    }
    true
}

/// The 4 x t incidence pattern of a coboundary support set: cell (j,k) is
/// set exactly when index 4(k-1)+j belongs to the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    t: usize,
    cells: Vec<bool>,
}

impl Diagram {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Cell at row j (1..4), column k (1..t).
    pub fn cell(&self, j: usize, k: usize) -> bool {
        debug_assert!((1..=4).contains(&j) && (1..=self.t).contains(&k));
        self.cells[(k - 1) * 4 + (j - 1)]
    }

    /// Column sums c_1, ..., c_t.
    pub fn col_sums(&self) -> Vec<usize> {
        (1..=self.t)
            .map(|k| (1..=4).filter(|&j| self.cell(j, k)).count())
            .collect()
    }

    /// The column profile reported alongside solutions: c_2 through
    /// c_ceil((t+1)/2), i.e. one sum per mirror pair of columns.
    pub fn col(&self) -> Vec<usize> {
        let sums = self.col_sums();
        let hi = (self.t + 1).div_ceil(2);
        (2..=hi).map(|k| sums[k - 1]).collect()
    }

    /// Row distribution (r_1, ..., r_4) of the symmetry-completed diagram:
    /// each column k in 2..t is first OR-ed with its mirror column t+2-k,
    /// then rows are summed over those columns. Column 1 never counts.
    pub fn dist(&self) -> [usize; 4] {
        let mut r = [0usize; 4];
        for j in 1..=4 {
            for k in 2..=self.t {
                let mirror = self.t + 2 - k;
                if self.cell(j, k) || self.cell(j, mirror) {
                    r[j - 1] += 1;
                }
            }
        }
        r
    }

    /// Parity relation between column 1 and every later column:
    /// c_1 - c_k must be odd for all k >= 2.
    pub fn parity_ok(&self) -> bool {
        let sums = self.col_sums();
        let c1 = sums[0];
        sums.iter().skip(1).all(|&ck| (c1 + ck) % 2 == 1)
    }

    /// Render as 4 lines of t characters, '1' for a set cell.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(4 * (self.t + 1));
        for j in 1..=4 {
            for k in 1..=self.t {
                s.push(if self.cell(j, k) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

/// Build the diagram of a coboundary support set. Every index must lie in
/// {2, ..., 4t-2}: index 1 is the identity coboundary and the last two
/// indices are outside the reduced basis.
pub fn diagram_of(t: usize, support: &[usize]) -> Result<Diagram> {
    if t == 0 {
        return Err(Error::invalid("t", "must be a positive integer"));
    }
    let mut cells = vec![false; 4 * t];
    for &i in support {
        if i < 2 || i > 4 * t - 2 {
            return Err(Error::invalid(
                "support index",
                format!("indices must lie in 2..{}, got {}", 4 * t - 2, i),
            ));
        }
        cells[i - 1] = true;
    }
    Ok(Diagram { t, cells })
}

/// Complete a support set under the mirror symmetry of the 4 x t diagram:
/// every member 4(k-1)+j with k >= 2 is joined by its partner in column
/// t+2-k. Indices may range over the whole coboundary list {2, ..., 4t}.
/// The bundled abelian solution rows print only the partners with
/// subscript <= 4t-2 (the reduced basis); this closure restores the full
/// sets they abbreviate, and is the identity on sets that are already
/// complete.
pub fn symmetric_closure(t: usize, support: &[usize]) -> Result<Vec<usize>> {
    if t == 0 {
        return Err(Error::invalid("t", "must be a positive integer"));
    }
    let n = 4 * t;
    let mut member = vec![false; n + 1];
    for &i in support {
        if i < 2 || i > n {
            return Err(Error::invalid(
                "support index",
                format!("indices must lie in 2..{}, got {}", n, i),
            ));
        }
        member[i] = true;
    }
    for i in 5..=n {
        if member[i] {
            let j = (i - 1) % 4 + 1;
            member[n - i + 2 * j] = true;
        }
    }
    Ok((2..=n).filter(|&i| member[i]).collect())
}

/// Mirror-pair symmetry of a support set, restricted to indices the
/// reduced basis actually contains: 4k+j and 4(t-k)+j must be members
/// together whenever both lie in {2, ..., 4t-2}.
pub fn restricted_symmetric(t: usize, support: &[usize]) -> bool {
    let max = 4 * t - 2;
    let in_support = |x: usize| support.contains(&x);
    for i in 2..=max {
        let j = (i - 1) % 4 + 1;
        let k = (i - j) / 4;
        let mirror = 4 * (t - k) + j;
        if mirror >= 2 && mirror <= max && in_support(i) != in_support(mirror) {
            return false;
        }
    }
    true
}
