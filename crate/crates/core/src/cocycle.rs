use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::hadamard::is_hadamard;
use crate::matrix::SignMatrix;
use rayon::prelude::*;

/// A normalized binary cocycle on a group of order n, kept as its n x n
/// sign matrix (entry -1 at (i,j) means the cocycle takes -1 on (g_i,g_j)).
/// The first row and column are always +1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CocycleVector {
    mat: SignMatrix,
}

impl CocycleVector {
    /// Wrap a matrix after checking normalization and the cocycle identity.
    pub fn from_matrix(g: &GroupTable, mat: SignMatrix) -> Result<CocycleVector> {
        let n = g.order();
        if mat.n() != n {
            return Err(Error::invalid(
                "matrix side",
                format!("expected {}, got {}", n, mat.n()),
            ));
        }
        for j in 0..n {
            if mat.is_neg(0, j) || mat.is_neg(j, 0) {
                return Err(Error::invalid("cocycle", "not normalized: first row/column must be +1"));
            }
        }
        if !is_cocycle(g, &mat)? {
            return Err(Error::invalid("cocycle", "matrix violates the cocycle identity"));
        }
        Ok(CocycleVector { mat })
    }

    /// Internal constructor for matrices that are cocycles by construction
    /// (sums of verified basis elements).
    pub(crate) fn from_matrix_unchecked(mat: SignMatrix) -> CocycleVector {
        CocycleVector { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    /// F2 coordinate at the 1-based index pair: true means the cocycle is -1 there.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.mat.is_neg(i - 1, j - 1)
    }

    pub fn matrix(&self) -> &SignMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> SignMatrix {
        self.mat
    }
}

/// Sign matrix of the elementary coboundary of g_d: entry (i,j) is
/// d(g_i) d(g_j) d(g_i g_j) where d(x) = -1 exactly at x = g_d.
pub fn elementary_coboundary(g: &GroupTable, d: usize) -> Result<SignMatrix> {
    let n = g.order();
    if d < 1 || d > n {
        return Err(Error::invalid(
            "coboundary index",
            format!("d must lie in 1..{}, got {}", n, d),
        ));
    }
    let mut m = SignMatrix::all_plus(n);
    for i in 1..=n {
        for j in 1..=n {
            let mut neg = false;
            if i == d {
                neg = !neg;
            }
            if j == d {
                neg = !neg;
            }
            if g.mul(i, j) == d {
                neg = !neg;
            }
            m.set_neg(i - 1, j - 1, neg);
        }
    }
    Ok(m)
}

/// The generalized coboundary matrix of g_d: the elementary coboundary with
/// row d negated. Defined for d >= 2 only, since the coboundary of the
/// identity element is not normalized.
pub fn generalized_coboundary(g: &GroupTable, d: usize) -> Result<SignMatrix> {
    if d == 1 {
        return Err(Error::invalid(
            "coboundary index",
            "d=1 names the identity element, whose coboundary is not normalized",
        ));
    }
    let mut m = elementary_coboundary(g, d)?;
    m.negate_row(d - 1);
    Ok(m)
}

/// Test the cocycle identity M(i,j) M(ij,k) = M(j,k) M(i,jk) over all triples.
pub fn is_cocycle(g: &GroupTable, m: &SignMatrix) -> Result<bool> {
    let n = g.order();
    if m.n() != n {
        return Err(Error::invalid(
            "matrix side",
            format!("expected {}, got {}", n, m.n()),
        ));
    }
    for i in 1..=n {
        for j in 1..=n {
            let ij = g.mul(i, j);
            for k in 1..=n {
                let lhs = m.is_neg(i - 1, j - 1) ^ m.is_neg(ij - 1, k - 1);
                let rhs = m.is_neg(j - 1, k - 1) ^ m.is_neg(i - 1, g.mul(j, k) - 1);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A basis of the F2 vector space of all normalized cocycles on a group.
#[derive(Clone, Debug)]
pub struct CocycleSpaceBasis {
    pub dim: usize,
    pub basis: Vec<CocycleVector>,
}

/// Bit-packed GF(2) row reducer with deterministic lowest-set-bit pivoting.
struct F2Solver {
    words: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
    pivot_row_of_col: Vec<Option<usize>>,
}

impl F2Solver {
    fn new(nv: usize) -> F2Solver {
        F2Solver {
            words: nv.div_ceil(64),
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_row_of_col: vec![None; nv],
        }
    }

    fn lowest_bit(row: &[u64]) -> Option<usize> {
        for (w, &word) in row.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    fn xor_rows(dst: &mut [u64], src: &[u64]) {
        for (a, b) in dst.iter_mut().zip(src.iter()) {
            *a ^= *b;
        }
    }

    /// Reduce an equation against the current pivots and install it as a new
    /// pivot row if anything is left.
    fn add_equation(&mut self, mut eq: Vec<u64>) {
        while let Some(col) = Self::lowest_bit(&eq) {
            match self.pivot_row_of_col[col] {
                Some(r) => Self::xor_rows(&mut eq, &self.rows[r]),
                None => {
                    self.pivot_row_of_col[col] = Some(self.rows.len());
                    self.rows.push(eq);
                    self.pivot_cols.push(col);
                    return;
                }
            }
        }
    }

    /// Finish reduction and return the nullspace basis, one vector per free
    /// column in ascending column order.
    fn nullspace(mut self) -> Vec<Vec<u64>> {
        let nv = self.pivot_row_of_col.len();
        // Back-substitute to reduced row echelon form.
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_cols[r]);
        for &r in &order {
            let row = self.rows[r].clone();
            let pcol = self.pivot_cols[r];
            for other in 0..self.rows.len() {
                if other != r && self.rows[other][pcol / 64] & (1u64 << (pcol % 64)) != 0 {
                    Self::xor_rows(&mut self.rows[other], &row);
                }
            }
        }
        let mut basis = Vec::new();
        for free in 0..nv {
            if self.pivot_row_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.words];
            v[free / 64] |= 1u64 << (free % 64);
            for (r, &pcol) in self.pivot_cols.iter().enumerate() {
                if self.rows[r][free / 64] & (1u64 << (free % 64)) != 0 {
                    v[pcol / 64] |= 1u64 << (pcol % 64);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Compute a basis of the space of normalized cocycles as the nullspace of
/// the cocycle identity read additively over F2, with one variable per
/// matrix position (i,j), i,j >= 2.
pub fn cocycle_space_basis(g: &GroupTable) -> CocycleSpaceBasis {
    let n = g.order();
    let nv = (n - 1) * (n - 1);
    let var = |i: usize, j: usize| -> Option<usize> {
        if i >= 2 && j >= 2 {
            Some((i - 2) * (n - 1) + (j - 2))
        } else {
            None
        }
    };
    let mut solver = F2Solver::new(nv);
    let words = nv.div_ceil(64);
    for i in 1..=n {
        for j in 1..=n {
            let ij = g.mul(i, j);
            for k in 1..=n {
                let jk = g.mul(j, k);
                let mut eq = vec![0u64; words];
                for v in [var(i, j), var(ij, k), var(j, k), var(i, jk)].into_iter().flatten() {
                    eq[v / 64] ^= 1u64 << (v % 64);
                }
                if eq.iter().any(|&w| w != 0) {
                    solver.add_equation(eq);
                }
            }
        }
    }
    let raw = solver.nullspace();
    let basis: Vec<CocycleVector> = raw
        .into_iter()
        .map(|bits| {
            let mut m = SignMatrix::all_plus(n);
            for i in 2..=n {
                for j in 2..=n {
                    let v = (i - 2) * (n - 1) + (j - 2);
                    if bits[v / 64] & (1u64 << (v % 64)) != 0 {
                        m.set_neg(i - 1, j - 1, true);
                    }
                }
            }
            CocycleVector::from_matrix_unchecked(m)
        })
        .collect();
    CocycleSpaceBasis {
        dim: basis.len(),
        basis,
    }
}

/// Options for the brute-force cocycle enumeration.
#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Count matches without materializing them.
    pub count_only: bool,
    /// Refuse enumerations larger than 2^budget_bits candidates.
    pub budget_bits: u32,
    /// Worker threads; 1 means fully sequential.
    pub threads: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            count_only: false,
            budget_bits: 30,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    /// Number of normalized cocycles whose matrix is Hadamard.
    pub count: u64,
    /// The matching cocycles in lexicographic order of their coefficient
    /// vectors over the space basis; absent when counting only.
    pub cocycles: Option<Vec<CocycleVector>>,
}

/// Walk the whole span of the cocycle space of `g` and report every cocycle
/// whose matrix is Hadamard. The walk is a Gray-code traversal, so each
/// candidate costs one basis XOR plus the row-sum screen; survivors are
/// confirmed against the full orthogonality test.
pub fn enumerate_hadamard_cocycles(g: &GroupTable, opts: &EnumerateOptions) -> Result<EnumerationResult> {
    let space = cocycle_space_basis(g);
    let dim = space.dim;
    let cap = opts.budget_bits.min(62);
    if dim as u32 > cap {
        return Err(Error::ResourceLimit {
            details: format!(
                "cocycle space has dimension {}; enumeration would visit 2^{} candidates — raise the budget, or use the family search path",
                dim, dim
            ),
            budget_bits: cap,
        });
    }
    let n = g.order();
    let total: u64 = 1u64 << dim;
    // Coefficient c_1 is the most significant bit, so numeric order on the
    // coefficient word equals lexicographic order on (c_1, ..., c_dim).
    let basis_mats: Vec<&SignMatrix> = space.basis.iter().map(|c| c.matrix()).collect();
    let bit_of_basis = |b: usize| -> u64 { 1u64 << (dim - 1 - b) };

    let scan_chunk = |start: u64, end: u64| -> (u64, Vec<u64>) {
        let mut current = SignMatrix::all_plus(n);
        let g0 = start ^ (start >> 1);
        for (b, mat) in basis_mats.iter().enumerate() {
            if g0 & bit_of_basis(b) != 0 {
                current.xor_in_place(mat);
            }
        }
        let mut count = 0u64;
        let mut hits: Vec<u64> = Vec::new();
        let mut code = g0;
        let mut m = start;
        loop {
            // Row-sum screen: a cocyclic matrix is Hadamard exactly when
            // every row after the first sums to zero.
            let mut ok = true;
            for i in 1..n {
                if current.row_neg_count(i) as usize * 2 != n {
                    ok = false;
                    break;
                }
            }
            if ok && is_hadamard(&current) {
                count += 1;
                if !opts.count_only {
                    hits.push(code);
                }
            }
            m += 1;
            if m == end {
                break;
            }
            let next_code = m ^ (m >> 1);
            let flipped = (code ^ next_code).trailing_zeros() as usize;
            // flipped counts from bit 0; convert to a basis position.
            current.xor_in_place(basis_mats[dim - 1 - flipped]);
            code = next_code;
        }
        (count, hits)
    };

    let chunks: Vec<(u64, u64)> = if opts.threads <= 1 || total < 1024 {
        vec![(0, total)]
    } else {
        let pieces = (opts.threads * 8).next_power_of_two() as u64;
        let pieces = pieces.min(total);
        let step = total / pieces;
        (0..pieces).map(|c| (c * step, (c + 1) * step)).collect()
    };

    let results: Vec<(u64, Vec<u64>)> = if opts.threads <= 1 {
        chunks.iter().map(|&(a, b)| scan_chunk(a, b)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Inconsistency(format!("thread pool: {}", e)))?;
        pool.install(|| chunks.par_iter().map(|&(a, b)| scan_chunk(a, b)).collect())
    };

    let count: u64 = results.iter().map(|(c, _)| *c).sum();
    let cocycles = if opts.count_only {
        None
    } else {
        let mut codes: Vec<u64> = results.into_iter().flat_map(|(_, h)| h).collect();
        codes.sort_unstable();
        let list = codes
            .into_iter()
            .map(|code| {
                let mut m = SignMatrix::all_plus(n);
                for (b, mat) in basis_mats.iter().enumerate() {
                    if code & bit_of_basis(b) != 0 {
                        m.xor_in_place(mat);
                    }
                }
                CocycleVector::from_matrix_unchecked(m)
            })
            .collect();
        Some(list)
    };
    Ok(EnumerationResult { count, cocycles })
}
