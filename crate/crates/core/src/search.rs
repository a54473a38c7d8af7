use crate::basis::{family_basis, BasisDescriptor};
use crate::cocycle::generalized_coboundary;
use crate::error::{Error, Result};
use crate::group::Family;
use crate::hadamard::{diagram_of, is_hadamard, restricted_symmetric};
use crate::matrix::SignMatrix;
use crate::system::{assemble_matrix, build_system, AssembleMode, CoordinateVector, Term};
use rayon::prelude::*;
use std::time::Instant;

/// Per-variable search state: pinned to a value or left for the search.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FixState {
    Fixed0,
    Fixed1,
    Free,
}

/// A pinning pattern over the coordinate variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixMask {
    states: Vec<FixState>,
}

impl FixMask {
    pub fn all_free(len: usize) -> FixMask {
        FixMask {
            states: vec![FixState::Free; len],
        }
    }

    pub fn from_states(states: Vec<FixState>) -> FixMask {
        FixMask { states }
    }

    /// Parse comma-separated `subscript=bit` tokens, e.g. "2=1,5=0".
    /// Subscripts name coboundaries (2 <= i <= num_vars+1); unlisted
    /// variables stay free.
    pub fn parse(spec: &str, num_vars: usize) -> Result<FixMask> {
        let mut mask = FixMask::all_free(num_vars);
        if spec.trim().is_empty() {
            return Ok(mask);
        }
        for tok in spec.split(',') {
            let tok = tok.trim();
            let (lhs, rhs) = tok.split_once('=').ok_or_else(|| {
                Error::invalid("fix spec", format!("expected 'index=bit', got '{}'", tok))
            })?;
            let i: usize = lhs.trim().parse().map_err(|_| {
                Error::invalid("fix spec", format!("bad coboundary subscript '{}'", lhs.trim()))
            })?;
            if i < 2 || i > num_vars + 1 {
                return Err(Error::invalid(
                    "fix spec",
                    format!("subscript {} outside 2..{}", i, num_vars + 1),
                ));
            }
            let state = match rhs.trim() {
                "0" => FixState::Fixed0,
                "1" => FixState::Fixed1,
                other => {
                    return Err(Error::invalid(
                        "fix spec",
                        format!("bit for subscript {} must be 0 or 1, got '{}'", i, other),
                    ))
                }
            };
            let p = i - 1;
            if mask.states[p - 1] != FixState::Free {
                return Err(Error::invalid("fix spec", format!("subscript {} listed twice", i)));
            }
            mask.states[p - 1] = state;
        }
        Ok(mask)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// State at 1-based position p.
    pub fn get(&self, p: usize) -> FixState {
        self.states[p - 1]
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.get(p) == FixState::Free).collect()
    }
}

/// Opt-in structural screens applied to candidate supports. None of them is
/// needed for correctness; the unfiltered search is the reference semantics.
#[derive(Clone, Debug, Default)]
pub struct SearchFilters {
    /// Mirror-pair symmetry of the support (Z family only).
    pub symmetry: bool,
    /// Odd difference between diagram column 1 and every later column
    /// (Z family only).
    pub parity: bool,
    /// Exact diagram row distribution for Z (length 4), or the experimental
    /// linear-form distribution for D (length t, see `d_dist_convention`).
    pub dist_target: Option<Vec<usize>>,
    /// Exact diagram column profile (Z family only).
    pub col_target: Option<Vec<usize>>,
    /// Opt into the D-family dist reading. Experimental: the published
    /// per-row distributions are not reproduced by any convention tried, so
    /// this filter is useful only for explicitly chosen targets.
    pub d_dist_convention: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Count solutions without materializing coordinate vectors. A sample of
    /// at least one in 1024 is still assembled and verified.
    pub count_only: bool,
    pub threads: usize,
    /// Refuse searches with more than this many free variables.
    pub budget_bits: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            count_only: false,
            threads: 1,
            budget_bits: 30,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Assignments applied during the walk.
    pub nodes: u64,
    pub wall_ms: u64,
    /// Solutions confirmed against the full orthogonality test.
    pub verified: u64,
    /// Residual-zero leaves that failed verification (0 in sound setups).
    pub rejected: u64,
}

#[derive(Clone, Debug)]
pub struct SolutionSet {
    /// Verified solutions in lexicographic coordinate order; empty when
    /// counting only.
    pub solutions: Vec<CoordinateVector>,
    pub count: u64,
    pub stats: SearchStats,
}

/// The experimental D-family distribution vector of a support: a fixed list
/// of linear forms in the coboundary indicators (the identity slot reads 0).
pub fn d_dist_vector(t: usize, x: &CoordinateVector) -> Vec<usize> {
    let xi = |i: usize| -> usize {
        if (2..=4 * t - 2).contains(&i) {
            x.get(i - 1) as usize
        } else {
            0
        }
    };
    let mut d = Vec::with_capacity(t);
    d.push(xi(1) + xi(2 * t - 2) + xi(2 * t + 1));
    for i in 2..=t - 1 {
        d.push(xi(i) + xi(2 * t - i + 1) + xi(2 * t + i) + xi(4 * t - i - 1));
    }
    d.push(xi(2 * t - 1) + xi(2 * t));
    d
}

fn validate_filters(basis: &BasisDescriptor, filters: &SearchFilters) -> Result<()> {
    let t = basis.t();
    match basis.family() {
        Family::Z => {
            if filters.d_dist_convention {
                return Err(Error::invalid(
                    "filters",
                    "the dihedral dist convention applies to the D family only",
                ));
            }
            if let Some(d) = &filters.dist_target {
                if d.len() != 4 {
                    return Err(Error::invalid(
                        "filters",
                        format!("Z-family dist target must have 4 entries, got {}", d.len()),
                    ));
                }
            }
            if let Some(c) = &filters.col_target {
                let want = (t + 1).div_ceil(2) - 1;
                if c.len() != want {
                    return Err(Error::invalid(
                        "filters",
                        format!("col target for t={} must have {} entries, got {}", t, want, c.len()),
                    ));
                }
            }
        }
        Family::D => {
            if filters.symmetry || filters.parity || filters.col_target.is_some() {
                return Err(Error::invalid(
                    "filters",
                    "symmetry, parity and col filters are defined for the Z family only",
                ));
            }
            if filters.dist_target.is_some() && !filters.d_dist_convention {
                return Err(Error::invalid(
                    "filters",
                    "a D-family dist target requires opting into the experimental dist convention",
                ));
            }
            if let Some(d) = &filters.dist_target {
                if d.len() != t {
                    return Err(Error::invalid(
                        "filters",
                        format!("D-family dist target for t={} must have {} entries, got {}", t, t, d.len()),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Mirror partner positions for the symmetry prune: partner[p] = q < p such
/// that subscripts p+1 and q+1 form a mirror pair.
fn mirror_partners(t: usize, num_vars: usize) -> Vec<Option<usize>> {
    let mut partner = vec![None; num_vars + 1];
    for (p, slot) in partner.iter_mut().enumerate().skip(1) {
        let i = p + 1;
        let j = (i - 1) % 4 + 1;
        let k = (i - j) / 4;
        let m = 4 * (t - k) + j;
        if m >= 2 && m <= 4 * t - 2 {
            let q = m - 1;
            if q < p {
                *slot = Some(q);
            }
        }
    }
    partner
}

struct Walker<'a> {
    basis: &'a BasisDescriptor,
    filters: &'a SearchFilters,
    decide_at: &'a [Vec<(usize, Term)>],
    mask: &'a FixMask,
    partner: Option<&'a [Option<usize>]>,
    count_only: bool,
    num_vars: usize,
    x: Vec<u8>,
    res: Vec<i64>,
    und: Vec<i64>,
    nodes: u64,
    count: u64,
    verified: u64,
    rejected: u64,
    solutions: Vec<CoordinateVector>,
}

impl<'a> Walker<'a> {
    fn factor(&self, v: Option<usize>) -> i64 {
        match v {
            Some(p) => 1 - 2 * self.x[p - 1] as i64,
            None => 1,
        }
    }

    /// Assign position p and fold every term that becomes decided into the
    /// residuals. Returns false when the subtree below cannot contain a
    /// solution; the caller must always `unapply` afterwards.
    fn apply(&mut self, p: usize, v: u8) -> bool {
        self.nodes += 1;
        self.x[p - 1] = v;
        for &(l, term) in &self.decide_at[p] {
            let val = term.sign as i64 * self.factor(term.var_a) * self.factor(term.var_b);
            self.res[l] += val;
            self.und[l] -= 1;
        }
        if let Some(partner) = self.partner {
            if let Some(q) = partner[p] {
                if self.x[q - 1] != v {
                    return false;
                }
            }
        }
        for &(l, _) in &self.decide_at[p] {
            // A row with u undecided terms can still move by any even-step
            // amount within [-u, u]; zero stays reachable only under both
            // the magnitude and parity conditions.
            if self.res[l].abs() > self.und[l] || (self.res[l] + self.und[l]) % 2 != 0 {
                return false;
            }
        }
        true
    }

    fn unapply(&mut self, p: usize) {
        for &(l, term) in &self.decide_at[p] {
            let val = term.sign as i64 * self.factor(term.var_a) * self.factor(term.var_b);
            self.res[l] -= val;
            self.und[l] += 1;
        }
        self.x[p - 1] = 0;
    }

    fn leaf_filters_pass(&self, x: &CoordinateVector) -> Result<bool> {
        let t = self.basis.t();
        match self.basis.family() {
            Family::Z => {
                let support = x.support();
                if self.filters.symmetry && !restricted_symmetric(t, &support) {
                    return Ok(false);
                }
                if self.filters.parity || self.filters.dist_target.is_some() || self.filters.col_target.is_some() {
                    let diag = diagram_of(t, &support)?;
                    if self.filters.parity && !diag.parity_ok() {
                        return Ok(false);
                    }
                    if let Some(want) = &self.filters.dist_target {
                        if diag.dist().as_slice() != want.as_slice() {
                            return Ok(false);
                        }
                    }
                    if let Some(want) = &self.filters.col_target {
                        if &diag.col() != want {
                            return Ok(false);
                        }
                    }
                }
            }
            Family::D => {
                if let Some(want) = &self.filters.dist_target {
                    if &d_dist_vector(t, x) != want {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn leaf(&mut self) -> Result<()> {
        let x = CoordinateVector::from_bits(self.x.clone()).expect("walker bits are 0/1");
        if !self.leaf_filters_pass(&x)? {
            return Ok(());
        }
        if self.count_only {
            if self.count.is_multiple_of(1024) {
                let m = assemble_matrix(self.basis, &x, AssembleMode::Generalized)?;
                if !is_hadamard(&m) {
                    return Err(Error::Inconsistency(format!(
                        "count-only sample with support {:?} zeroes the system but fails the orthogonality test",
                        x.support()
                    )));
                }
                self.verified += 1;
            }
            self.count += 1;
        } else {
            let m = assemble_matrix(self.basis, &x, AssembleMode::Generalized)?;
            if is_hadamard(&m) {
                self.verified += 1;
                self.count += 1;
                self.solutions.push(x);
            } else {
                self.rejected += 1;
            }
        }
        Ok(())
    }

    fn descend(&mut self, p: usize) -> Result<()> {
        if p > self.num_vars {
            return self.leaf();
        }
        let values: &[u8] = match self.mask.get(p) {
            FixState::Fixed0 => &[0],
            FixState::Fixed1 => &[1],
            FixState::Free => &[0, 1],
        };
        for &v in values {
            if self.apply(p, v) {
                self.descend(p + 1)?;
            }
            self.unapply(p);
        }
        Ok(())
    }
}

struct SubResult {
    count: u64,
    verified: u64,
    rejected: u64,
    nodes: u64,
    solutions: Vec<CoordinateVector>,
}

/// Exhaustive masked search for coordinate vectors that zero every required
/// row sum. Free variables are explored in ascending position with exact
/// residual-interval pruning, so the walk never discards a completable
/// assignment; every reported solution is confirmed Hadamard.
pub fn search(
    basis: &BasisDescriptor,
    mask: &FixMask,
    filters: &SearchFilters,
    opts: &SearchOptions,
) -> Result<SolutionSet> {
    let start = Instant::now();
    let num_vars = basis.num_vars();
    if mask.len() != num_vars {
        return Err(Error::invalid(
            "fix mask",
            format!("mask length {} does not match {} variables", mask.len(), num_vars),
        ));
    }
    validate_filters(basis, filters)?;
    let free = mask.free_positions();
    let cap = opts.budget_bits.min(62);
    if free.len() as u32 > cap {
        return Err(Error::ResourceLimit {
            details: format!(
                "{} free variables would take 2^{} assignments; pin more variables or raise the budget",
                free.len(),
                free.len()
            ),
            budget_bits: cap,
        });
    }
    let ms = build_system(basis);
    let mut decide_at: Vec<Vec<(usize, Term)>> = vec![Vec::new(); num_vars + 1];
    for (l, eq) in ms.equations.iter().enumerate() {
        for &term in eq {
            let maxp = term.var_a.unwrap_or(0).max(term.var_b.unwrap_or(0));
            decide_at[maxp].push((l, term));
        }
    }
    let rows = ms.equations.len();
    let mut base_res = vec![0i64; rows];
    let mut base_und = vec![0i64; rows];
    for &(l, term) in &decide_at[0] {
        base_res[l] += term.sign as i64;
    }
    for bucket in decide_at.iter().skip(1) {
        for &(l, _) in bucket {
            base_und[l] += 1;
        }
    }
    let partner_store;
    let partner: Option<&[Option<usize>]> = if filters.symmetry && basis.family() == Family::Z {
        partner_store = mirror_partners(basis.t(), num_vars);
        Some(&partner_store)
    } else {
        None
    };

    let root_feasible = (0..rows)
        .all(|l| base_res[l].abs() <= base_und[l] && (base_res[l] + base_und[l]) % 2 == 0);

    let make_walker = || Walker {
        basis,
        filters,
        decide_at: &decide_at,
        mask,
        partner,
        count_only: opts.count_only,
        num_vars,
        x: vec![0u8; num_vars],
        res: base_res.clone(),
        und: base_und.clone(),
        nodes: 0,
        count: 0,
        verified: 0,
        rejected: 0,
        solutions: Vec::new(),
    };

    let split_bits = if opts.threads <= 1 || free.is_empty() {
        0
    } else {
        let target = (usize::BITS - (opts.threads - 1).leading_zeros()) as usize + 3;
        target.min(free.len()).min(14)
    };

    let run_subtree = |prefix: u64| -> Result<SubResult> {
        let mut w = make_walker();
        let mut alive = true;
        if split_bits == 0 {
            if root_feasible {
                w.descend(1)?;
            }
        } else {
            let last_split = free[split_bits - 1];
            if root_feasible {
                for p in 1..=last_split {
                    let v = match mask.get(p) {
                        FixState::Fixed0 => 0,
                        FixState::Fixed1 => 1,
                        FixState::Free => {
                            let slot = free.iter().position(|&fp| fp == p).expect("p is free");
                            ((prefix >> (split_bits - 1 - slot)) & 1) as u8
                        }
                    };
                    if !w.apply(p, v) {
                        alive = false;
                        break;
                    }
                }
                if alive {
                    w.descend(last_split + 1)?;
                }
            }
        }
        Ok(SubResult {
            count: w.count,
            verified: w.verified,
            rejected: w.rejected,
            nodes: w.nodes,
            solutions: std::mem::take(&mut w.solutions),
        })
    };

    let subresults: Vec<Result<SubResult>> = if split_bits == 0 {
        vec![run_subtree(0)]
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Inconsistency(format!("thread pool: {}", e)))?;
        pool.install(|| (0..1u64 << split_bits).into_par_iter().map(run_subtree).collect())
    };

    let mut out = SolutionSet {
        solutions: Vec::new(),
        count: 0,
        stats: SearchStats::default(),
    };
    for sub in subresults {
        let sub = sub?;
        out.count += sub.count;
        out.stats.verified += sub.verified;
        out.stats.rejected += sub.rejected;
        out.stats.nodes += sub.nodes;
        out.solutions.extend(sub.solutions);
    }
    debug_assert!(out.solutions.windows(2).all(|w| w[0] < w[1]));
    out.stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(out)
}

/// Assemble the generalized product for a coboundary support set and test it.
/// Subscripts may range over the whole coboundary list {2, ..., 4t}, not just
/// the reduced basis, so symmetry-completed supports verify directly.
/// Returns the verdict together with the matrix for display.
pub fn verify_support(family: Family, t: usize, support: &[usize]) -> Result<(bool, SignMatrix)> {
    let basis = family_basis(family, t)?;
    let n = basis.k;
    let mut seen = vec![false; n + 1];
    let mut m = basis.m_rho.clone();
    for &d in support {
        if d < 2 || d > n {
            return Err(Error::invalid(
                "coboundary subscript",
                format!("must lie in 2..{}, got {}", n, d),
            ));
        }
        if seen[d] {
            return Err(Error::invalid(
                "coboundary subscript",
                format!("{} listed twice", d),
            ));
        }
        seen[d] = true;
        m.xor_in_place(&generalized_coboundary(&basis.group, d)?);
    }
    Ok((is_hadamard(&m), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::symmetric_closure;
    use crate::system::eval_system;

    fn brute_force_solutions(basis: &BasisDescriptor) -> Vec<CoordinateVector> {
        let nv = basis.num_vars();
        let mut out = Vec::new();
        for mask in 0u64..1 << nv {
            let bits: Vec<u8> = (0..nv).map(|p| ((mask >> p) & 1) as u8).collect();
            let x = CoordinateVector::from_bits(bits).unwrap();
            let m = assemble_matrix(basis, &x, AssembleMode::Generalized).unwrap();
            if is_hadamard(&m) {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn fix_mask_parse_round_trip() {
        let m = FixMask::parse("2=1, 5=0,10=1", 9).unwrap();
        assert_eq!(m.get(1), FixState::Fixed1);
        assert_eq!(m.get(4), FixState::Fixed0);
        assert_eq!(m.get(9), FixState::Fixed1);
        assert_eq!(m.get(2), FixState::Free);
        assert_eq!(m.free_positions().len(), 6);
        assert!(FixMask::parse("", 9).unwrap().free_positions().len() == 9);
        assert!(FixMask::parse("1=0", 9).is_err());
        assert!(FixMask::parse("11=0", 9).is_err());
        assert!(FixMask::parse("2=2", 9).is_err());
        assert!(FixMask::parse("2=1,2=1", 9).is_err());
        assert!(FixMask::parse("nonsense", 9).is_err());
    }

    #[test]
    fn unfiltered_search_matches_brute_force_for_t3() {
        for fam in [Family::Z, Family::D] {
            let basis = family_basis(fam, 3).unwrap();
            let expect = brute_force_solutions(&basis);
            let got = search(
                &basis,
                &FixMask::all_free(9),
                &SearchFilters::default(),
                &SearchOptions::default(),
            )
            .unwrap();
            assert_eq!(got.count as usize, expect.len(), "{:?}", fam);
            assert_eq!(got.solutions, expect, "{:?}", fam);
            assert_eq!(got.stats.rejected, 0);
            assert_eq!(got.stats.verified, got.count);
        }
    }

    #[test]
    fn known_supports_are_found() {
        let basis = family_basis(Family::Z, 3).unwrap();
        let got = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        for support in [vec![2, 3, 4], vec![2, 5, 6, 7, 8, 10]] {
            let want = CoordinateVector::from_support(9, &support).unwrap();
            assert!(got.solutions.contains(&want), "missing {:?}", support);
        }

        let basis = family_basis(Family::D, 3).unwrap();
        let got = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        let want = CoordinateVector::from_support(9, &[2, 5, 6, 7, 9]).unwrap();
        assert!(got.solutions.contains(&want));
    }

    #[test]
    fn count_only_matches_full_search() {
        let basis = family_basis(Family::D, 3).unwrap();
        let full = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        let counted = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions {
                count_only: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(full.count, counted.count);
        assert!(counted.solutions.is_empty());
        assert!(counted.stats.verified >= 1);
    }

    #[test]
    fn fixing_a_solution_keeps_it() {
        let basis = family_basis(Family::Z, 3).unwrap();
        let solution = CoordinateVector::from_support(9, &[2, 5, 6, 7, 8, 10]).unwrap();
        let states: Vec<FixState> = (1..=9)
            .map(|p| {
                if solution.get(p) == 1 {
                    FixState::Fixed1
                } else {
                    FixState::Fixed0
                }
            })
            .collect();
        let got = search(
            &basis,
            &FixMask::from_states(states),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(got.count, 1);
        assert_eq!(got.solutions, vec![solution]);
    }

    #[test]
    fn partial_mask_recovers_published_dihedral_solution() {
        let basis = family_basis(Family::D, 5).unwrap();
        let nv = basis.num_vars();
        let full = CoordinateVector::from_support(nv, &[2, 3, 5, 7, 10, 11, 12, 17]).unwrap();
        let states: Vec<FixState> = (1..=nv)
            .map(|p| {
                let subscript = p + 1;
                if (10..=12).contains(&subscript) {
                    FixState::Free
                } else if full.get(p) == 1 {
                    FixState::Fixed1
                } else {
                    FixState::Fixed0
                }
            })
            .collect();
        let got = search(
            &basis,
            &FixMask::from_states(states),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(got.solutions.contains(&full));
    }

    #[test]
    fn symmetry_and_parity_filters_match_a_manual_screen() {
        let basis = family_basis(Family::Z, 3).unwrap();
        let unfiltered = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        let filters = SearchFilters {
            symmetry: true,
            parity: true,
            ..Default::default()
        };
        let filtered = search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).unwrap();
        let want = CoordinateVector::from_support(9, &[2, 3, 4, 5, 6, 9, 10]).unwrap();
        assert!(filtered.solutions.contains(&want));
        assert!(filtered.count < unfiltered.count);
        // Filtered output must be exactly the unfiltered solutions passing the screens.
        let manual: Vec<CoordinateVector> = unfiltered
            .solutions
            .iter()
            .filter(|x| {
                let s = x.support();
                restricted_symmetric(3, &s) && diagram_of(3, &s).unwrap().parity_ok()
            })
            .cloned()
            .collect();
        assert_eq!(filtered.solutions, manual);
    }

    #[test]
    fn dist_and_col_targets_screen_exact_profiles() {
        let basis = family_basis(Family::Z, 3).unwrap();
        // An empty profile pins the support inside diagram column 1.
        let filters = SearchFilters {
            dist_target: Some(vec![0, 0, 0, 0]),
            col_target: Some(vec![0]),
            ..Default::default()
        };
        let got = search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).unwrap();
        let want = CoordinateVector::from_support(9, &[2, 3, 4]).unwrap();
        assert_eq!(got.solutions, vec![want]);

        let filters = SearchFilters {
            dist_target: Some(vec![2, 0, 0, 0]),
            col_target: Some(vec![1]),
            ..Default::default()
        };
        let got = search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).unwrap();
        let mut expect: Vec<CoordinateVector> = [
            vec![2, 3, 5, 9],
            vec![2, 4, 5, 9],
            vec![3, 4, 5, 9],
        ]
        .iter()
        .map(|s| CoordinateVector::from_support(9, s).unwrap())
        .collect();
        expect.sort();
        assert_eq!(got.solutions, expect);
        for x in &got.solutions {
            let d = diagram_of(3, &x.support()).unwrap();
            assert_eq!(d.dist(), [2, 0, 0, 0]);
            assert_eq!(d.col(), vec![1]);
        }
    }

    #[test]
    fn d_family_dist_needs_opt_in() {
        let basis = family_basis(Family::D, 3).unwrap();
        let want = CoordinateVector::from_support(9, &[2, 5, 6, 7, 9]).unwrap();
        let target = d_dist_vector(3, &want);
        let mut filters = SearchFilters {
            dist_target: Some(target.clone()),
            ..Default::default()
        };
        assert!(search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).is_err());
        filters.d_dist_convention = true;
        let got = search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).unwrap();
        assert!(got.solutions.contains(&want));
        for x in &got.solutions {
            assert_eq!(d_dist_vector(3, x), target);
        }
    }

    #[test]
    fn z_only_filters_are_rejected_for_d() {
        let basis = family_basis(Family::D, 3).unwrap();
        for filters in [
            SearchFilters {
                symmetry: true,
                ..Default::default()
            },
            SearchFilters {
                parity: true,
                ..Default::default()
            },
            SearchFilters {
                col_target: Some(vec![1]),
                ..Default::default()
            },
        ] {
            assert!(search(&basis, &FixMask::all_free(9), &filters, &SearchOptions::default()).is_err());
        }
        let basis_z = family_basis(Family::Z, 3).unwrap();
        let filters = SearchFilters {
            d_dist_convention: true,
            ..Default::default()
        };
        assert!(search(&basis_z, &FixMask::all_free(9), &filters, &SearchOptions::default()).is_err());
    }

    #[test]
    fn search_budget_is_enforced() {
        let basis = family_basis(Family::Z, 3).unwrap();
        let opts = SearchOptions {
            budget_bits: 8,
            ..Default::default()
        };
        match search(&basis, &FixMask::all_free(9), &SearchFilters::default(), &opts) {
            Err(Error::ResourceLimit { budget_bits, .. }) => assert_eq!(budget_bits, 8),
            other => panic!("expected resource limit, got {:?}", other.map(|s| s.count)),
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let basis = family_basis(Family::D, 3).unwrap();
        let seq = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        let par = search(
            &basis,
            &FixMask::all_free(9),
            &SearchFilters::default(),
            &SearchOptions {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq.count, par.count);
        assert_eq!(seq.solutions, par.solutions);
    }

    #[test]
    fn pruning_never_loses_solutions_against_plain_evaluation() {
        // Randomly pinned masks: the masked walk must agree with filtering a
        // plain sweep by mask consistency.
        let basis = family_basis(Family::D, 3).unwrap();
        let ms = build_system(&basis);
        let mut state = 0x2545f4914f6cdd1du64;
        for _ in 0..20 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let pins = state;
            let states: Vec<FixState> = (0..9)
                .map(|p| match (pins >> (2 * p)) & 3 {
                    0 => FixState::Fixed0,
                    1 => FixState::Fixed1,
                    _ => FixState::Free,
                })
                .collect();
            let mask = FixMask::from_states(states.clone());
            let got = search(&basis, &mask, &SearchFilters::default(), &SearchOptions::default()).unwrap();
            let mut expect = Vec::new();
            for m in 0u64..1 << 9 {
                let bits: Vec<u8> = (0..9).map(|p| ((m >> p) & 1) as u8).collect();
                let consistent = bits.iter().enumerate().all(|(p, &b)| match states[p] {
                    FixState::Fixed0 => b == 0,
                    FixState::Fixed1 => b == 1,
                    FixState::Free => true,
                });
                if !consistent {
                    continue;
                }
                let x = CoordinateVector::from_bits(bits).unwrap();
                if eval_system(&ms, &x).unwrap().iter().all(|&r| r == 0) {
                    expect.push(x);
                }
            }
            expect.sort();
            assert_eq!(got.solutions, expect);
        }
    }

    #[test]
    fn verify_support_accepts_published_rows_and_rejects_junk() {
        let (ok, m) = verify_support(
            Family::Z,
            11,
            &[3, 5, 6, 10, 11, 14, 16, 17, 20, 29, 32, 34, 36, 38, 39, 41, 42],
        )
        .unwrap();
        assert!(ok);
        assert_eq!(m.n(), 44);
        let (ok, _) = verify_support(Family::D, 7, &[2, 7, 11, 13, 14, 15, 17, 20, 23, 24, 25]).unwrap();
        assert!(ok);
        let (ok, _) = verify_support(Family::Z, 3, &[2]).unwrap();
        assert!(!ok);
        assert!(verify_support(Family::Z, 3, &[1]).is_err());
        assert!(verify_support(Family::Z, 3, &[13]).is_err());
        assert!(verify_support(Family::Z, 3, &[2, 2]).is_err());
    }

    /// The order-12 abelian row of the bundled tables abbreviates a
    /// mirror-symmetric support: its two partners above the reduced basis
    /// are required for the product to be Hadamard.
    #[test]
    fn out_of_basis_subscripts_complete_a_truncated_support() {
        let printed = [2, 5, 6, 7, 8, 9, 10];
        let (ok, _) = verify_support(Family::Z, 3, &printed).unwrap();
        assert!(!ok);
        let completed = symmetric_closure(3, &printed).unwrap();
        assert_eq!(completed, vec![2, 5, 6, 7, 8, 9, 10, 11, 12]);
        let (ok, m) = verify_support(Family::Z, 3, &completed).unwrap();
        assert!(ok);
        assert_eq!(m.n(), 12);
    }
}
