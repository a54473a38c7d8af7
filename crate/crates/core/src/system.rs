use crate::basis::{chi, j_index, BasisDescriptor};
use crate::cocycle::{elementary_coboundary, generalized_coboundary};
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;

/// One summand of a row-sum equation: a sign times up to two factors of the
/// form (1 - 2x_p). Variable positions are 1-based; an absent position means
/// that factor is the constant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub var_a: Option<usize>,
    pub var_b: Option<usize>,
}

/// A 0/1 assignment to the coordinate variables x_1, ..., x_{k-m}.
/// Position p corresponds to the coboundary with subscript p+1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoordinateVector {
    bits: Vec<u8>,
}

impl CoordinateVector {
    pub fn zeros(len: usize) -> CoordinateVector {
        CoordinateVector { bits: vec![0; len] }
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<CoordinateVector> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::invalid("coordinate", format!("bits must be 0 or 1, got {}", bad)));
        }
        Ok(CoordinateVector { bits })
    }

    /// Build from a set of coboundary subscripts: subscript i sets position i-1.
    pub fn from_support(num_vars: usize, support: &[usize]) -> Result<CoordinateVector> {
        let mut v = CoordinateVector::zeros(num_vars);
        for &i in support {
            if i < 2 || i > num_vars + 1 {
                return Err(Error::invalid(
                    "coboundary subscript",
                    format!("must lie in 2..{}, got {}", num_vars + 1, i),
                ));
            }
            v.bits[i - 2] = 1;
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value at 1-based position p.
    #[inline]
    pub fn get(&self, p: usize) -> u8 {
        self.bits[p - 1]
    }

    pub fn set(&mut self, p: usize, v: u8) {
        debug_assert!(v <= 1);
        self.bits[p - 1] = v;
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The coboundary subscripts of the set positions, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(p, _)| p + 2)
            .collect()
    }
}

/// The reduced row-sum system: one equation per required matrix row, each a
/// sum of exactly 4t terms.
#[derive(Clone, Debug)]
pub struct MonomialSystem {
    pub num_vars: usize,
    /// Matrix row behind each equation, parallel to `equations`.
    pub rows: Vec<usize>,
    pub equations: Vec<Vec<Term>>,
}

/// Expand the row-sum equations of the required rows over the coordinate
/// variables. The term for column h of row s carries the fixed sign
/// rho(s,h); its variables are position h-1 (when coboundary h is in the
/// basis) and position j-1 for the partner index j of (s,h).
pub fn build_system(basis: &BasisDescriptor) -> MonomialSystem {
    let family = basis.family();
    let t = basis.t();
    let n = basis.k;
    let mut equations = Vec::with_capacity(basis.required_rows.len());
    for &s in &basis.required_rows {
        let mut eq = Vec::with_capacity(n);
        for h in 1..=n {
            let sign = basis.m_rho.get(s - 1, h - 1) as i8;
            let j = j_index(family, t, s, h).expect("required rows lie in the closed form domain");
            debug_assert_ne!(h, j, "a required row would pair a column with itself");
            let var_a = (chi(basis, h) == 1).then(|| h - 1);
            let var_b = (chi(basis, j) == 1).then(|| j - 1);
            if let (Some(a), Some(b)) = (var_a, var_b) {
                debug_assert_ne!(a, b);
            }
            eq.push(Term { sign, var_a, var_b });
        }
        equations.push(eq);
    }
    MonomialSystem {
        num_vars: basis.num_vars(),
        rows: basis.required_rows.clone(),
        equations,
    }
}

/// Evaluate every equation at a 0/1 point. The vector solves the system
/// exactly when all residuals vanish.
pub fn eval_system(ms: &MonomialSystem, x: &CoordinateVector) -> Result<Vec<i64>> {
    if x.len() != ms.num_vars {
        return Err(Error::invalid(
            "coordinate length",
            format!("expected {}, got {}", ms.num_vars, x.len()),
        ));
    }
    let factor = |v: Option<usize>| -> i64 {
        match v {
            Some(p) => 1 - 2 * x.get(p) as i64,
            None => 1,
        }
    };
    Ok(ms
        .equations
        .iter()
        .map(|eq| {
            eq.iter()
                .map(|term| term.sign as i64 * factor(term.var_a) * factor(term.var_b))
                .sum()
        })
        .collect())
}

/// Which coboundary matrices to multiply into the candidate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AssembleMode {
    /// Generalized coboundaries: two -1 entries per row, the form the
    /// row-sum system speaks about.
    Generalized,
    /// Plain coboundaries: the product is itself a cocycle.
    Classical,
}

/// Pointwise product of rho with the coboundaries selected by `x`.
pub fn assemble_matrix(basis: &BasisDescriptor, x: &CoordinateVector, mode: AssembleMode) -> Result<SignMatrix> {
    if x.len() != basis.num_vars() {
        return Err(Error::invalid(
            "coordinate length",
            format!("expected {}, got {}", basis.num_vars(), x.len()),
        ));
    }
    let mut m = basis.m_rho.clone();
    for p in 1..=x.len() {
        if x.get(p) == 1 {
            let d = p + 1;
            let cob = match mode {
                AssembleMode::Generalized => generalized_coboundary(&basis.group, d)?,
                AssembleMode::Classical => elementary_coboundary(&basis.group, d)?,
            };
            m.xor_in_place(&cob);
        }
    }
    Ok(m)
}
