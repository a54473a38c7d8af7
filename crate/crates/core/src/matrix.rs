use crate::error::{Error, Result};
use std::fmt;

/// Square matrix with entries in {+1, -1}, stored as packed bit rows.
///
/// A set bit means the entry is -1, so the entrywise product of two
/// matrices is the XOR of their bit rows. Rows and columns are 0-based
/// here; functions elsewhere that speak about group elements use the
/// 1-based element indexing and convert at the boundary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl SignMatrix {
    /// The all +1 matrix of side `n`.
    pub fn all_plus(n: usize) -> Self {
        assert!(n > 0, "matrix side must be positive");
        let words_per_row = n.div_ceil(64);
        SignMatrix {
            n,
            words_per_row,
            bits: vec![0u64; n * words_per_row],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn word_of(&self, i: usize, j: usize) -> (usize, u64) {
        debug_assert!(i < self.n && j < self.n);
        (i * self.words_per_row + j / 64, 1u64 << (j % 64))
    }

    /// Entry at row `i`, column `j` (0-based), as +1 or -1.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        let (w, m) = self.word_of(i, j);
        if self.bits[w] & m != 0 {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn is_neg(&self, i: usize, j: usize) -> bool {
        let (w, m) = self.word_of(i, j);
        self.bits[w] & m != 0
    }

    #[inline]
    pub fn set_neg(&mut self, i: usize, j: usize, neg: bool) {
        let (w, m) = self.word_of(i, j);
        if neg {
            self.bits[w] |= m;
        } else {
            self.bits[w] &= !m;
        }
    }

    /// Flip the sign of every entry in row `i` (0-based).
    pub fn negate_row(&mut self, i: usize) {
        let start = i * self.words_per_row;
        for w in 0..self.words_per_row {
            self.bits[start + w] = !self.bits[start + w];
        }
        self.clear_tail(i);
    }

    /// Flip the sign of every entry in column `j` (0-based).
    pub fn negate_col(&mut self, j: usize) {
        let word = j / 64;
        let mask = 1u64 << (j % 64);
        for i in 0..self.n {
            self.bits[i * self.words_per_row + word] ^= mask;
        }
    }

    /// Zero the unused high bits of the last word of row `i` so that
    /// popcounts and equality see only real entries.
    fn clear_tail(&mut self, i: usize) {
        let rem = self.n % 64;
        if rem != 0 {
            let last = i * self.words_per_row + self.words_per_row - 1;
            self.bits[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        let start = i * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    /// Number of -1 entries in row `i`.
    pub fn row_neg_count(&self, i: usize) -> u32 {
        self.row_words(i).iter().map(|w| w.count_ones()).sum()
    }

    /// Sum of the entries of row `i`.
    pub fn row_sum(&self, i: usize) -> i64 {
        self.n as i64 - 2 * self.row_neg_count(i) as i64
    }

    /// Entrywise product, defined for equal sides.
    pub fn entrywise_mul(&self, other: &SignMatrix) -> Result<SignMatrix> {
        if self.n != other.n {
            return Err(Error::invalid(
                "matrix side",
                format!("entrywise product needs equal sides, got {} and {}", self.n, other.n),
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a ^= *b;
        }
        Ok(out)
    }

    /// Entrywise product with `other`, written into `self`. Sides must match;
    /// callers in hot loops check that once up front.
    #[inline]
    pub fn xor_in_place(&mut self, other: &SignMatrix) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(other.bits.iter()) {
            *a ^= *b;
        }
    }

    /// Dot product of rows `i` and `j`: sum over columns of the entry products.
    pub fn row_dot(&self, i: usize, j: usize) -> i64 {
        let a = self.row_words(i);
        let b = self.row_words(j);
        let disagree: u32 = a.iter().zip(b.iter()).map(|(x, y)| (x ^ y).count_ones()).sum();
        self.n as i64 - 2 * disagree as i64
    }

    /// Render as `n` lines of '+'/'-' characters.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.is_neg(i, j) { '-' } else { '+' });
            }
            s.push('\n');
        }
        s
    }

    /// Parse the `to_text` format: one line per row, characters '+' or '-',
    /// every row as long as the number of rows.
    pub fn from_text(text: &str) -> Result<SignMatrix> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse {
                line: 1,
                details: "empty matrix text".into(),
            });
        }
        let mut m = SignMatrix::all_plus(n);
        for (i, row) in rows.iter().enumerate() {
            let chars: Vec<char> = row.trim().chars().collect();
            if chars.len() != n {
                return Err(Error::Parse {
                    line: i + 1,
                    details: format!("expected {} entries, found {}", n, chars.len()),
                });
            }
            for (j, c) in chars.iter().enumerate() {
                match c {
                    '+' => {}
                    '-' => m.set_neg(i, j, true),
                    other => {
                        return Err(Error::Parse {
                            line: i + 1,
                            details: format!("unexpected character '{}'", other),
                        })
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix {}x{}", self.n, self.n)?;
        f.write_str(&self.to_text())
    }
}
