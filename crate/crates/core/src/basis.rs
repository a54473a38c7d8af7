use crate::error::{Error, Result};
use crate::group::{make_group, Family, GroupKind, GroupTable};
use crate::matrix::SignMatrix;

/// Everything the reduced search needs about one family instance: the group,
/// the ordered coboundary list, the fixed representative-product matrix, and
/// the rows whose sums carry the whole Hadamard condition.
#[derive(Clone, Debug)]
pub struct BasisDescriptor {
    pub group: GroupTable,
    /// Coboundary subscripts, always (2, 3, ..., 4t-2). Variable position p
    /// (1-based) stands for the coboundary with subscript p+1.
    pub cob_indices: Vec<usize>,
    /// Product of the three representative cocycles; a normalized cocycle.
    pub m_rho: SignMatrix,
    /// Matrix rows whose zero sums are equivalent to the full row-sum system.
    pub required_rows: Vec<usize>,
    /// Total basis size, 4t.
    pub k: usize,
    /// Number of representative cocycles folded into m_rho, always 3.
    pub m: usize,
}

impl BasisDescriptor {
    pub fn family(&self) -> Family {
        match self.group.kind() {
            GroupKind::Z { .. } => Family::Z,
            GroupKind::D { .. } => Family::D,
            GroupKind::Custom => unreachable!("family bases are built from family groups"),
        }
    }

    pub fn t(&self) -> usize {
        self.group.t().expect("family bases carry t")
    }

    /// Number of coordinate variables, k - m = 4t - 3.
    pub fn num_vars(&self) -> usize {
        self.k - self.m
    }
}

fn k4() -> SignMatrix {
    SignMatrix::from_text("++++\n+-+-\n+--+\n++--\n").unwrap()
}

/// Build the basis context for one family.
///
/// For the Z family (odd t) the representative product is the Kronecker
/// product of the t x t all-ones matrix with a fixed Hadamard block of
/// order 4. For the dihedral family (t >= 3) it is the block matrix
/// (A A; B -B) with A upper-left triangular against the anti-diagonal and
/// B lower triangular.
pub fn family_basis(family: Family, t: usize) -> Result<BasisDescriptor> {
    match family {
        Family::Z => {
            if t == 0 || t.is_multiple_of(2) {
                return Err(Error::invalid(
                    "t",
                    format!("the Z-family reduction needs odd t >= 1, got {}", t),
                ));
            }
        }
        Family::D => {
            if t < 3 {
                return Err(Error::invalid(
                    "t",
                    format!(
                        "the dihedral reduction needs t >= 3, got {}; enumerate the cocycle space instead for small orders",
                        t
                    ),
                ));
            }
        }
    }
    let group = make_group(family, t)?;
    let n = 4 * t;
    let m_rho = match family {
        Family::Z => {
            let block = k4();
            let mut m = SignMatrix::all_plus(n);
            for i in 0..n {
                for j in 0..n {
                    m.set_neg(i, j, block.is_neg(i % 4, j % 4));
                }
            }
            m
        }
        Family::D => {
            let two_t = 2 * t;
            let mut m = SignMatrix::all_plus(n);
            let a = |i: usize, j: usize| i + j <= two_t + 1; // +1 region, 1-based
            let b = |i: usize, j: usize| j <= i;
            for i in 1..=two_t {
                for j in 1..=two_t {
                    m.set_neg(i - 1, j - 1, !a(i, j));
                    m.set_neg(i - 1, two_t + j - 1, !a(i, j));
                    m.set_neg(two_t + i - 1, j - 1, !b(i, j));
                    m.set_neg(two_t + i - 1, two_t + j - 1, b(i, j));
                }
            }
            m
        }
    };
    let required_rows: Vec<usize> = match family {
        Family::Z => (5..=2 * t + 2).collect(),
        Family::D => (2..=t).collect(),
    };
    Ok(BasisDescriptor {
        group,
        cob_indices: (2..=n - 2).collect(),
        m_rho,
        required_rows,
        k: n,
        m: 3,
    })
}

/// Closed form for the partner coboundary of position (s,c): the unique
/// d != c such that the generalized coboundaries of c and d are both -1 at
/// (s,c). Always equals the group-table product index of g_s * g_c on its
/// stated domain.
pub fn j_index(family: Family, t: usize, s: usize, c: usize) -> Result<usize> {
    let n = 4 * t;
    if c < 1 || c > n {
        return Err(Error::invalid(
            "column index",
            format!("c must lie in 1..{}, got {}", n, c),
        ));
    }
    match family {
        Family::Z => {
            if s < 5 || s > 2 * t + 2 {
                return Err(Error::invalid(
                    "row index",
                    format!("s must lie in 5..{} for the Z family, got {}", 2 * t + 2, s),
                ));
            }
            let quad = ((s - 1) / 4 + (c - 1) / 4) % t;
            let pair = ((s - 1) % 4 / 2 + (c - 1) % 4 / 2) % 2;
            Ok(1 + 4 * quad + 2 * pair + (s + c) % 2)
        }
        Family::D => {
            if s < 2 || s > t {
                return Err(Error::invalid(
                    "row index",
                    format!("s must lie in 2..{} for the dihedral family, got {}", t, s),
                ));
            }
            let two_t = 2 * t;
            if c <= two_t {
                Ok((c + s - 2) % two_t + 1)
            } else if c + s - 1 <= n {
                Ok(c + s - 1)
            } else {
                Ok(two_t + (c + s - 1) % two_t)
            }
        }
    }
}

/// Membership indicator of an element index in the coboundary part of the
/// basis: 1 exactly for 2 <= i <= 4t-2.
pub fn chi(basis: &BasisDescriptor, i: usize) -> u8 {
    debug_assert!(i >= 1 && i <= basis.k);
    u8::from(i >= 2 && i <= basis.k - 2)
}
