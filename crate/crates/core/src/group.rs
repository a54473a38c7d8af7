use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// The two built-in group families.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Central extensions of Z_t x Z_2 x Z_2 under componentwise addition.
    Z,
    /// Dihedral groups D_4t of order 4t.
    D,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Z => "z",
            Family::D => "d",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Family::Z),
            "d" => Ok(Family::D),
            other => Err(Error::invalid("family", format!("expected 'z' or 'd', got '{}'", other))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a `GroupTable` was built.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Z { t: usize },
    D { t: usize },
    Custom,
}

/// A finite group given by its full multiplication table.
///
/// Element indices are 1-based everywhere in the public API; index 1 is
/// the identity. The table is immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    kind: GroupKind,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// The family parameter t when the table came from a built-in family.
    pub fn t(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Z { t } | GroupKind::D { t } => Some(t),
            GroupKind::Custom => None,
        }
    }

    /// Product g_i * g_j, 1-based in and out.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.order).contains(&i) && (1..=self.order).contains(&j));
        self.mul[(i - 1) * self.order + (j - 1)] as usize
    }

    /// Inverse of g_i, 1-based in and out.
    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        debug_assert!((1..=self.order).contains(&i));
        self.inv[i - 1] as usize
    }

    pub fn is_abelian(&self) -> bool {
        for i in 1..=self.order {
            for j in i + 1..=self.order {
                if self.mul(i, j) != self.mul(j, i) {
                    return false;
                }
            }
        }
        true
    }

    fn from_raw(order: usize, mul: Vec<u32>, kind: GroupKind) -> Result<GroupTable> {
        let mut g = GroupTable {
            order,
            mul,
            inv: vec![0; order],
            kind,
        };
        g.check_laws()?;
        Ok(g)
    }

    /// Verify the group laws and fill the inverse table. Associativity is
    /// checked exhaustively up to order 256 and on a fixed pseudo-random
    /// sample of a million triples above that.
    fn check_laws(&mut self) -> Result<()> {
        let n = self.order;
        for j in 1..=n {
            if self.mul(1, j) != j {
                return Err(Error::InvalidGroup {
                    law: "identity",
                    details: format!("mul(1,{}) = {}, expected {}", j, self.mul(1, j), j),
                });
            }
            if self.mul(j, 1) != j {
                return Err(Error::InvalidGroup {
                    law: "identity",
                    details: format!("mul({},1) = {}, expected {}", j, self.mul(j, 1), j),
                });
            }
        }
        let mut seen = vec![false; n];
        for i in 1..=n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 1..=n {
                let p = self.mul(i, j);
                if p < 1 || p > n || seen[p - 1] {
                    return Err(Error::InvalidGroup {
                        law: "latin-square",
                        details: format!("row {} is not a permutation (at column {})", i, j),
                    });
                }
                seen[p - 1] = true;
            }
        }
        for j in 1..=n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 1..=n {
                let p = self.mul(i, j);
                if seen[p - 1] {
                    return Err(Error::InvalidGroup {
                        law: "latin-square",
                        details: format!("column {} is not a permutation (at row {})", j, i),
                    });
                }
                seen[p - 1] = true;
            }
        }
        let check_triple = |i: usize, j: usize, k: usize| -> Result<()> {
            if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                return Err(Error::InvalidGroup {
                    law: "associativity",
                    details: format!("(g{}*g{})*g{} != g{}*(g{}*g{})", i, j, k, i, j, k),
                });
            }
            Ok(())
        };
        if n <= 256 {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        check_triple(i, j, k)?;
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            for _ in 0..1_000_000 {
                let i = next() % n + 1;
                let j = next() % n + 1;
                let k = next() % n + 1;
                check_triple(i, j, k)?;
            }
        }
        for i in 1..=n {
            let vi = (1..=n)
                .find(|&j| self.mul(i, j) == 1)
                .expect("latin square guarantees a right inverse");
            if self.mul(vi, i) != 1 {
                return Err(Error::InvalidGroup {
                    law: "inverse",
                    details: format!("right inverse {} of {} is not a left inverse", vi, i),
                });
            }
            self.inv[i - 1] = vi as u32;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order={}, kind={:?})", self.order, self.kind)
    }
}

/// Build one of the two families.
///
/// For the Z family the elements are triples (a,b,c) with a mod t and
/// b,c mod 2, listed with index 4a+2b+c+1, so the identity (0,0,0) is
/// element 1. For the D family the elements are
/// 1, a, ..., a^(2t-1), b, ab, ..., a^(2t-1)b with a^(2t)=b^2=1 and
/// bab=a^(-1).
pub fn make_group(family: Family, t: usize) -> Result<GroupTable> {
    if t == 0 {
        return Err(Error::invalid("t", "must be a positive integer"));
    }
    if family == Family::Z && t.is_multiple_of(2) {
        return Err(Error::invalid(
            "t",
            format!("the Z family is defined for odd t only, got {}", t),
        ));
    }
    let n = 4 * t;
    let mut mul = vec![0u32; n * n];
    match family {
        Family::Z => {
            let comps = |idx: usize| ((idx - 1) / 4, ((idx - 1) % 4) / 2, (idx - 1) % 2);
            for i in 1..=n {
                let (a1, b1, c1) = comps(i);
                for j in 1..=n {
                    let (a2, b2, c2) = comps(j);
                    let p = 4 * ((a1 + a2) % t) + 2 * ((b1 + b2) % 2) + (c1 + c2) % 2 + 1;
                    mul[(i - 1) * n + (j - 1)] = p as u32;
                }
            }
        }
        Family::D => {
            // Index 1..=2t is a^(i-1); index 2t+1..=4t is a^(i-2t-1) b.
            let two_t = 2 * t;
            let rot = |i: usize| -> (usize, bool) {
                if i <= two_t {
                    (i - 1, false)
                } else {
                    (i - two_t - 1, true)
                }
            };
            let idx = |e: usize, rfl: bool| -> usize {
                if rfl {
                    two_t + e + 1
                } else {
                    e + 1
                }
            };
            for i in 1..=n {
                let (e1, r1) = rot(i);
                for j in 1..=n {
                    let (e2, r2) = rot(j);
                    // (a^e1 b^r1)(a^e2 b^r2) = a^(e1 +/- e2) b^(r1 xor r2)
                    let e = if r1 {
                        (e1 + two_t - e2) % two_t
                    } else {
                        (e1 + e2) % two_t
                    };
                    mul[(i - 1) * n + (j - 1)] = idx(e, r1 ^ r2) as u32;
                }
            }
        }
    }
    let kind = match family {
        Family::Z => GroupKind::Z { t },
        Family::D => GroupKind::D { t },
    };
    GroupTable::from_raw(n, mul, kind)
}

/// Parse the group-table file format: a line `order n` followed by n rows
/// of n space-separated 1-based indices. The table is validated in full
/// and the order must be a multiple of 4.
pub fn parse_group_table(text: &str) -> Result<GroupTable> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        details: "empty group table".into(),
    })?;
    let n: usize = header
        .trim()
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Parse {
            line: ln + 1,
            details: format!("expected 'order n' header, got '{}'", header.trim()),
        })?;
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::Parse {
            line: ln + 1,
            details: format!("order must be a positive multiple of 4, got {}", n),
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    let mut rows = 0usize;
    for (ln, line) in lines {
        let mut entries = 0usize;
        for tok in line.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                details: format!("bad index '{}'", tok),
            })?;
            if v == 0 || v as usize > n {
                return Err(Error::Parse {
                    line: ln + 1,
                    details: format!("index {} out of range 1..{}", v, n),
                });
            }
            mul.push(v);
            entries += 1;
        }
        if entries != n {
            return Err(Error::Parse {
                line: ln + 1,
                details: format!("expected {} entries in row, found {}", n, entries),
            });
        }
        rows += 1;
        if rows == n {
            break;
        }
    }
    if rows != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            details: format!("expected {} table rows, found {}", n, rows),
        });
    }
    GroupTable::from_raw(n, mul, GroupKind::Custom)
}

/// Render a group table in the `parse_group_table` format.
pub fn render_group_table(g: &GroupTable) -> String {
    let n = g.order();
    let mut s = format!("order {}\n", n);
    for i in 1..=n {
        for j in 1..=n {
            if j > 1 {
                s.push(' ');
            }
            s.push_str(&g.mul(i, j).to_string());
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_family_indexing_and_products() {
        let g = make_group(Family::Z, 3).unwrap();
        assert_eq!(g.order(), 12);
        // (1,0,1) sits at index 4*1+2*0+1+1 = 6; its square is (2,0,0) = index 9.
        assert_eq!(g.mul(6, 6), 9);
        // (2,1,1) at index 12 plus (1,1,1) at index 8 is (0,0,0).
        assert_eq!(g.mul(12, 8), 1);
        assert_eq!(g.inv(12), 8);
        assert!(g.is_abelian());
        assert_eq!(g.t(), Some(3));
    }

    #[test]
    fn d_family_presentation_products() {
        let g = make_group(Family::D, 3).unwrap();
        assert_eq!(g.order(), 12);
        // a * b = ab and b * a = a^5 b.
        assert_eq!(g.mul(2, 7), 8);
        assert_eq!(g.mul(7, 2), 12);
        // Reflections square to the identity.
        for i in 7..=12 {
            assert_eq!(g.mul(i, i), 1);
            assert_eq!(g.inv(i), i);
        }
        // a^k has inverse a^(2t-k).
        assert_eq!(g.inv(2), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn constructor_domain_errors() {
        assert!(make_group(Family::Z, 0).is_err());
        assert!(make_group(Family::D, 0).is_err());
        assert!(make_group(Family::Z, 2).is_err());
        assert!(make_group(Family::Z, 4).is_err());
        assert!(make_group(Family::D, 2).is_ok());
    }

    #[test]
    fn laws_hold_for_all_small_parameters() {
        for t in 1..=16 {
            if t % 2 == 1 {
                let g = make_group(Family::Z, t).unwrap();
                assert!(g.is_abelian(), "Z t={} should be abelian", t);
                for i in 1..=g.order() {
                    assert_eq!(g.inv(g.inv(i)), i);
                }
            }
            let g = make_group(Family::D, t).unwrap();
            for i in 1..=g.order() {
                assert_eq!(g.inv(g.inv(i)), i);
                assert_eq!(g.mul(i, g.inv(i)), 1);
                assert_eq!(g.mul(g.inv(i), i), 1);
            }
            if t >= 2 {
                assert!(!g.is_abelian(), "D t={} should not be abelian", t);
            }
        }
    }

    #[test]
    fn klein_table_parses() {
        let text = "order 4\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n";
        let g = parse_group_table(text).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.kind(), GroupKind::Custom);
        assert_eq!(g.mul(3, 4), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn parse_rejects_identity_violation() {
        // mul(1,2)=3 breaks the identity law.
        let text = "order 4\n1 3 2 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n";
        match parse_group_table(text) {
            Err(Error::InvalidGroup { law, .. }) => assert_eq!(law, "identity"),
            other => panic!("expected identity-law failure, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn parse_rejects_non_latin_rows() {
        let text = "order 4\n1 2 3 4\n2 1 4 4\n3 4 1 2\n4 3 2 1\n";
        match parse_group_table(text) {
            Err(Error::InvalidGroup { law, .. }) => assert_eq!(law, "latin-square"),
            other => panic!("expected latin-square failure, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn parse_rejects_orders_not_multiple_of_four() {
        let text = "order 5\n1 2 3 4 5\n2 3 4 5 1\n3 4 5 1 2\n4 5 1 2 3\n5 1 2 3 4\n";
        assert!(parse_group_table(text).is_err());
    }

    #[test]
    fn render_parse_round_trip_matches_builtin() {
        let g = make_group(Family::D, 3).unwrap();
        let text = render_group_table(&g);
        let back = parse_group_table(&text).unwrap();
        assert_eq!(back.kind(), GroupKind::Custom);
        for i in 1..=12 {
            for j in 1..=12 {
                assert_eq!(back.mul(i, j), g.mul(i, j));
            }
        }
    }
}
