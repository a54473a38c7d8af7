use crate::basis::BasisDescriptor;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::system::MonomialSystem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt::Write as _;
use std::str::FromStr;

/// A product of variable powers, kept sparse and sorted by variable index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: usize) -> Monomial {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        factors.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        factors.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        factors.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&f), None) => {
                    factors.push(f);
                    a.next();
                }
                (None, Some(&&f)) => {
                    factors.push(f);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { factors }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Total degree first, then dictionary order on the factor list, so
    /// within a degree x1 sorts before x2 and x1*x3 before x1^2.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

/// An integer-coefficient polynomial in canonical expanded form: terms
/// sorted by monomial order, like monomials combined, zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(i64, Monomial)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: i64) -> Poly {
        Poly::from_terms(vec![(c, Monomial::one())])
    }

    pub fn var(v: usize) -> Poly {
        Poly {
            terms: vec![(1, Monomial::var(v))],
        }
    }

    pub fn from_terms(terms: Vec<(i64, Monomial)>) -> Poly {
        let mut terms = terms;
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(i64, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc += c,
                _ => out.push((c, m)),
            }
            if out.last().is_some_and(|(lc, _)| *lc == 0) {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, Monomial)] {
        &self.terms
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly::from_terms(terms)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, m)| (-c, m.clone())));
        Poly::from_terms(terms)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                terms.push((ca * cb, ma.mul(mb)));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (c, m) in &self.terms {
            let mut term = BigRational::from(BigInt::from(*c));
            for &(v, e) in &m.factors {
                for _ in 0..e {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }
}

/// A variable list plus generator list, ready to render for an external
/// computer-algebra system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialText {
    pub var_names: Vec<String>,
    pub generators: Vec<Poly>,
}

/// Output dialects.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Syntax {
    Plain,
    Singular,
}

impl FromStr for Syntax {
    type Err = Error;
    fn from_str(s: &str) -> Result<Syntax> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Syntax::Plain),
            "singular" => Ok(Syntax::Singular),
            other => Err(Error::invalid(
                "syntax",
                format!("expected 'plain' or 'singular', got '{}'", other),
            )),
        }
    }
}

/// The full-cocycle ideal of a group: one variable per matrix position,
/// with generator blocks in a fixed order — square relations, first-row
/// and first-column normalizations, the cocycle-identity cubics over all
/// index triples, and one row-sum form per non-identity row.
pub fn emit_ig(g: &GroupTable) -> PolynomialText {
    let n = g.order();
    let var = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let var_names: Vec<String> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("x_{}_{}", i, j)))
        .collect();
    let mut generators = Vec::new();
    for i in 2..=n {
        for j in 2..=n {
            generators.push(Poly::var(var(i, j)).mul(&Poly::var(var(i, j))).sub(&Poly::constant(1)));
        }
    }
    for j in 2..=n {
        generators.push(Poly::var(var(1, j)).sub(&Poly::constant(1)));
    }
    for i in 2..=n {
        generators.push(Poly::var(var(i, 1)).sub(&Poly::constant(1)));
    }
    for i in 1..=n {
        for j in 1..=n {
            let ij = g.mul(i, j);
            for k in 1..=n {
                let jk = g.mul(j, k);
                let prod = Poly::var(var(ij, k))
                    .mul(&Poly::var(var(j, k)))
                    .mul(&Poly::var(var(i, jk)));
                generators.push(Poly::var(var(i, j)).sub(&prod));
            }
        }
    }
    for i in 2..=n {
        let mut sum = Poly::zero();
        for j in 1..=n {
            sum = sum.add(&Poly::var(var(i, j)));
        }
        generators.push(sum);
    }
    PolynomialText { var_names, generators }
}

/// The reduced ideal of a family basis: idempotency relations x_i^2 - x_i
/// for every coordinate, then each required row sum expanded into a
/// polynomial in the coordinates.
pub fn emit_jg(basis: &BasisDescriptor, ms: &MonomialSystem) -> Result<PolynomialText> {
    let nv = ms.num_vars;
    if nv != basis.num_vars() {
        return Err(Error::invalid(
            "monomial system",
            "system was not built from the given basis",
        ));
    }
    let var_names: Vec<String> = (1..=nv).map(|i| format!("x{}", i)).collect();
    let mut generators = Vec::new();
    for v in 0..nv {
        generators.push(Poly::var(v).mul(&Poly::var(v)).sub(&Poly::var(v)));
    }
    for (idx, eq) in ms.equations.iter().enumerate() {
        let mut sum = Poly::zero();
        for term in eq {
            let mut p = Poly::constant(term.sign as i64);
            for v in [term.var_a, term.var_b].into_iter().flatten() {
                let lin = Poly::constant(1).sub(&Poly::var(v - 1).mul(&Poly::constant(2)));
                p = p.mul(&lin);
            }
            sum = sum.add(&p);
        }
        if sum.is_zero() {
            return Err(Error::Inconsistency(format!(
                "row {} expanded to the zero polynomial",
                ms.rows[idx]
            )));
        }
        generators.push(sum);
    }
    Ok(PolynomialText { var_names, generators })
}

fn render_term(coeff: i64, m: &Monomial, names: &[String]) -> String {
    let mut s = String::new();
    s.push(if coeff < 0 { '-' } else { '+' });
    let _ = write!(s, "{}", coeff.abs());
    for &(v, e) in m.factors() {
        let _ = write!(s, "*{}", names[v]);
        if e > 1 {
            let _ = write!(s, "^{}", e);
        }
    }
    s
}

/// Render with a one-line ring header and one `gen` line per generator.
fn render_plain(p: &PolynomialText) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring QQ vars {}", p.var_names.join(","));
    for g in &p.generators {
        let terms: Vec<String> = g
            .terms()
            .iter()
            .map(|(c, m)| render_term(*c, m, &p.var_names))
            .collect();
        let _ = writeln!(out, "gen {}", terms.join(" "));
    }
    out
}

/// Wrap the numeric suffixes of a doubly indexed name in parentheses:
/// x_1_2 becomes x_(1)_(2). Names without underscores pass through.
fn singular_name(name: &str) -> String {
    let parts: Vec<&str> = name.split('_').collect();
    if parts.len() < 2 || !parts[1..].iter().all(|p| p.chars().all(|c| c.is_ascii_digit()) && !p.is_empty()) {
        return name.to_string();
    }
    let mut s = parts[0].to_string();
    for p in &parts[1..] {
        let _ = write!(s, "_({})", p);
    }
    s
}

fn render_singular(p: &PolynomialText) -> String {
    let names: Vec<String> = p.var_names.iter().map(|n| singular_name(n)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "ring R = 0, ({}), dp;", names.join(","));
    let _ = writeln!(out, "ideal I =");
    let last = p.generators.len().saturating_sub(1);
    for (i, g) in p.generators.iter().enumerate() {
        let mut line: String = g
            .terms()
            .iter()
            .map(|(c, m)| render_term(*c, m, &names))
            .collect::<Vec<_>>()
            .concat();
        if let Some(rest) = line.strip_prefix('+') {
            line = rest.to_string();
        }
        let _ = writeln!(out, "{}{}", line, if i == last { ";" } else { "," });
    }
    out
}

pub fn render(p: &PolynomialText, syntax: Syntax) -> String {
    match syntax {
        Syntax::Plain => render_plain(p),
        Syntax::Singular => render_singular(p),
    }
}

/// Parse the `Plain` dialect back into canonical form.
pub fn parse_plain(text: &str) -> Result<PolynomialText> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        details: "empty ideal text".into(),
    })?;
    let names_part = header.strip_prefix("ring QQ vars ").ok_or(Error::Parse {
        line: 1,
        details: "expected header 'ring QQ vars ...'".into(),
    })?;
    let var_names: Vec<String> = names_part.trim().split(',').map(|s| s.trim().to_string()).collect();
    if var_names.iter().any(|n| n.is_empty()) {
        return Err(Error::Parse {
            line: 1,
            details: "empty variable name in header".into(),
        });
    }
    let index_of = |name: &str, line: usize| -> Result<usize> {
        var_names
            .iter()
            .position(|n| n == name)
            .ok_or(Error::Parse {
                line,
                details: format!("undeclared variable '{}'", name),
            })
    };
    let mut generators = Vec::new();
    for (ln, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let body = line.strip_prefix("gen ").ok_or(Error::Parse {
            line: ln + 1,
            details: "expected 'gen <polynomial>'".into(),
        })?;
        let mut terms = Vec::new();
        for tok in body.split_whitespace() {
            let (sign, rest) = match tok.as_bytes().first() {
                Some(b'+') => (1i64, &tok[1..]),
                Some(b'-') => (-1i64, &tok[1..]),
                _ => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        details: format!("term '{}' must start with an explicit sign", tok),
                    })
                }
            };
            let mut pieces = rest.split('*');
            let coeff_txt = pieces.next().unwrap_or("");
            let coeff: i64 = coeff_txt.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                details: format!("bad coefficient '{}'", coeff_txt),
            })?;
            let mut mono = Monomial::one();
            for piece in pieces {
                let (name, exp) = match piece.split_once('^') {
                    Some((n, e)) => {
                        let exp: u32 = e.parse().map_err(|_| Error::Parse {
                            line: ln + 1,
                            details: format!("bad exponent '{}'", e),
                        })?;
                        (n, exp)
                    }
                    None => (piece, 1),
                };
                if exp == 0 {
                    return Err(Error::Parse {
                        line: ln + 1,
                        details: "zero exponents are not written".into(),
                    });
                }
                let v = index_of(name, ln + 1)?;
                let mut pow = Monomial::var(v);
                for _ in 1..exp {
                    pow = pow.mul(&Monomial::var(v));
                }
                mono = mono.mul(&pow);
            }
            terms.push((sign * coeff, mono));
        }
        generators.push(Poly::from_terms(terms));
    }
    Ok(PolynomialText { var_names, generators })
}

/// Evaluate every generator at an exact rational point.
pub fn eval_generators(p: &PolynomialText, point: &[BigRational]) -> Result<Vec<BigRational>> {
    if point.len() != p.var_names.len() {
        return Err(Error::invalid(
            "point length",
            format!("expected {}, got {}", p.var_names.len(), point.len()),
        ));
    }
    Ok(p.generators.iter().map(|g| g.eval(point)).collect())
}

/// Convenience: an exact rational from an integer.
pub fn rat(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}
