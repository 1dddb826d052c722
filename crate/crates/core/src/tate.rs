//! Formal sums of Tate objects and their classes as polynomials in `L`.
//!
//! A [`TateSum`] is a finitely supported map `(twist p, shift q) -> m`
//! standing for `⊕ m·Z(p)[q]`. Multiplicities are signed so that virtual
//! classes (open complements, boundary subtractions) can be represented; the
//! [`TateSum::is_effective`] flag tells genuine objects apart.
//!
//! An [`LPolynomial`] is an integer polynomial in the Lefschetz class. The
//! map `Z(p)[q] ↦ (−1)^q L^p` ([`TateSum::euler_class`]) is a ring
//! homomorphism from `(TateSum, ⊕, ⊗)` to `Z[L]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn add_i64(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(ctx))
}

fn mul_i64(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}

/// Formal direct sum `⊕ m·Z(p)[q]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "TateSumRepr", try_from = "TateSumRepr")]
pub struct TateSum {
    terms: BTreeMap<(i64, i64), i64>,
}

impl TateSum {
    /// The zero object.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit object `Z = Z(0)[0]`, the motive of a point.
    pub fn unit() -> Self {
        Self::tate(0, 0)
    }

    /// A single `Z(p)[q]`.
    pub fn tate(twist: i64, shift: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((twist, shift), 1);
        Self { terms }
    }

    /// Builds a sum from `(twist, shift, multiplicity)` triples, merging like terms.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        let mut out = Self::zero();
        for (p, q, m) in terms {
            out.add_term(p, q, m)?;
        }
        Ok(out)
    }

    /// The pure sum `⊕_p ranks[p]·Z(p)[2p]`.
    pub fn pure_from_ranks(ranks: &[u64]) -> Result<Self> {
        let mut out = Self::zero();
        for (p, &c) in ranks.iter().enumerate() {
            let c = i64::try_from(c).map_err(|_| Error::Overflow("pure sum from ranks"))?;
            let p = p as i64;
            out.add_term(p, 2 * p, c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, p: i64, q: i64, m: i64) -> Result<()> {
        if m == 0 {
            return Ok(());
        }
        let slot = self.terms.entry((p, q)).or_insert(0);
        *slot = add_i64(*slot, m, "Tate sum multiplicity")?;
        if *slot == 0 {
            self.terms.remove(&(p, q));
        }
        Ok(())
    }

    /// Terms as `(twist, shift, multiplicity)`, ordered by `(twist, shift)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(p, q), &m)| (p, q, m))
    }

    pub fn multiplicity(&self, twist: i64, shift: i64) -> i64 {
        self.terms.get(&(twist, shift)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff every multiplicity is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// True iff every stored term is some `Z(p)[2p]` with positive multiplicity.
    /// The empty sum (zero object) is pure.
    pub fn is_pure_tate(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(p, q), &m)| Some(q) == p.checked_mul(2) && m > 0)
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> Result<i64> {
        self.terms
            .values()
            .try_fold(0i64, |acc, &m| add_i64(acc, m, "total multiplicity"))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (p, q, m) in other.terms() {
            out.add_term(p, q, m)?;
        }
        Ok(out)
    }

    /// `Z(p)[q] ⊗ Z(p')[q'] = Z(p+p')[q+q']`, extended bilinearly.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (p, q, m) in self.terms() {
            for (p2, q2, m2) in other.terms() {
                out.add_term(
                    add_i64(p, p2, "tensor twist")?,
                    add_i64(q, q2, "tensor shift")?,
                    mul_i64(m, m2, "tensor multiplicity")?,
                )?;
            }
        }
        Ok(out)
    }

    /// `(p', q') ↦ (p' + p, q' + q)` on every term, i.e. `a(p)[q]`.
    pub fn twist_shift(&self, twist: i64, shift: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (p, q, m) in self.terms() {
            terms.insert(
                (add_i64(p, twist, "twist")?, add_i64(q, shift, "shift")?),
                m,
            );
        }
        Ok(Self { terms })
    }

    /// `k·a`.
    pub fn scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (p, q, m) in self.terms() {
            terms.insert((p, q), mul_i64(m, k, "scaled multiplicity")?);
        }
        Ok(Self { terms })
    }

    /// Class in `K₀`: `Σ m·(−1)^q·L^p`.
    pub fn euler_class(&self) -> Result<LPolynomial> {
        let mut out = LPolynomial::zero();
        for (p, q, m) in self.terms() {
            if p < 0 {
                return Err(Error::NegativeTwist(p));
            }
            let e = u32::try_from(p).map_err(|_| Error::Overflow("Lefschetz exponent"))?;
            let c = if q.rem_euclid(2) == 0 {
                m
            } else {
                m.checked_neg().ok_or(Error::Overflow("euler class"))?
            };
            out.add_monomial(e, c)?;
        }
        Ok(out)
    }

    /// Chow ranks of a pure sum: `c[p]` is the multiplicity of `Z(p)[2p]`.
    pub fn pure_coefficients(&self) -> Result<Vec<u64>> {
        self.require_pure()?;
        if let Some((p, _, _)) = self.terms().find(|&(p, _, _)| p < 0) {
            return Err(Error::NegativeTwist(p));
        }
        let top = self.terms().map(|(p, _, _)| p as usize).max();
        let mut out = vec![0u64; top.map_or(0, |t| t + 1)];
        for (p, _, m) in self.terms() {
            out[p as usize] = m as u64;
        }
        Ok(out)
    }

    /// Poincaré duality of a pure sum of dimension `n`: `c[p] = c[n−p]` for
    /// all `p`, and `c[0] = 1`.
    pub fn self_duality_check(&self, n: i64) -> Result<bool> {
        let c = self.pure_coefficients()?;
        if c.first() != Some(&1) || n < 0 || c.len() as i64 > n + 1 {
            return Ok(false);
        }
        let at = |p: i64| c.get(p as usize).copied().unwrap_or(0);
        Ok((0..=n).all(|p| at(p) == at(n - p)))
    }

    fn require_pure(&self) -> Result<()> {
        match self
            .terms()
            .find(|&(p, q, m)| Some(q) != p.checked_mul(2) || m <= 0)
        {
            Some((twist, shift, mult)) => Err(Error::NotPure { twist, shift, mult }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for TateSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, q, m)) in self.terms().enumerate() {
            let sep = match (i, m < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " ⊕ ",
                (_, true) => " ⊖ ",
            };
            f.write_str(sep)?;
            if m.unsigned_abs() != 1 {
                write!(f, "{}·", m.unsigned_abs())?;
            }
            if (p, q) == (0, 0) {
                f.write_str("Z")?;
            } else {
                write!(f, "Z({p})[{q}]")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TateSumRepr {
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    twist: i64,
    shift: i64,
    mult: i64,
}

impl From<TateSum> for TateSumRepr {
    fn from(s: TateSum) -> Self {
        TateSumRepr {
            terms: s
                .terms()
                .map(|(twist, shift, mult)| TermRepr { twist, shift, mult })
                .collect(),
        }
    }
}

impl TryFrom<TateSumRepr> for TateSum {
    type Error = Error;

    fn try_from(r: TateSumRepr) -> Result<Self> {
        TateSum::from_terms(r.terms.into_iter().map(|t| (t.twist, t.shift, t.mult)))
    }
}

/// Integer polynomial in the Lefschetz class `L`, stored sparsely.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LPolyRepr", try_from = "LPolyRepr")]
pub struct LPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// The Lefschetz class itself.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(exponent: u32, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exponent, coeff);
        }
        Self { coeffs }
    }

    /// From dense ascending coefficients `[c0, c1, ...]`.
    pub fn from_dense(dense: &[i64]) -> Self {
        Self {
            coeffs: dense
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as u32, c))
                .collect(),
        }
    }

    /// From `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_pairs<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_monomial(e, c)?;
        }
        Ok(out)
    }

    /// `1 + L + … + L^n`.
    pub fn geometric(n: u32) -> Self {
        Self {
            coeffs: (0..=n).map(|e| (e, 1)).collect(),
        }
    }

    fn add_monomial(&mut self, e: u32, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = add_i64(*slot, c, "polynomial coefficient")?;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn coeff(&self, exponent: u32) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dense ascending coefficients up to the degree (empty for zero).
    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.degree().map_or(0, |d| d as usize + 1)];
        for (e, c) in self.terms() {
            out[e as usize] = c;
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_monomial(e, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.terms() {
            coeffs.insert(e, mul_i64(c, k, "polynomial scaling")?);
        }
        Ok(Self { coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e
                    .checked_add(e2)
                    .ok_or(Error::Overflow("polynomial exponent"))?;
                out.add_monomial(e, mul_i64(c, c2, "polynomial product")?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self> {
        (0..n).try_fold(Self::one(), |acc, _| acc.checked_mul(self))
    }

    /// Value at `L = x`.
    pub fn eval(&self, x: i64) -> Result<i64> {
        let mut acc = 0i64;
        let mut prev = self.degree().unwrap_or(0);
        // Horner over the sparse terms, highest first.
        for (e, c) in self.coeffs.iter().rev() {
            for _ in *e..prev {
                acc = mul_i64(acc, x, "polynomial evaluation")?;
            }
            acc = add_i64(acc, *c, "polynomial evaluation")?;
            prev = *e;
        }
        for _ in 0..prev {
            acc = mul_i64(acc, x, "polynomial evaluation")?;
        }
        Ok(acc)
    }

    /// True iff `coeff(k) = coeff(d − k)` for the degree `d`.
    pub fn is_palindromic(&self) -> bool {
        let Some(d) = self.degree() else {
            return true;
        };
        self.terms().all(|(e, c)| self.coeff(d - e) == c)
    }

    /// Display with a different variable name (e.g. `t` for length
    /// generating functions).
    pub fn display_with(&self, var: char) -> impl fmt::Display + '_ {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a LPolynomial,
    var: char,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.poly.terms().enumerate() {
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "{}", self.var)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with('L').fmt(f)
    }
}

/// Parses the text form produced by `Display`, e.g. `1 + 2L - L^3`.
/// A bare integer is a constant.
impl FromStr for LPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("cannot parse polynomial `{s}`: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Self::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, exp) = match term.find('L') {
                None => (term, 0u32),
                Some(i) => {
                    let exp = match &term[i + 1..] {
                        "" => 1,
                        tail => tail
                            .strip_prefix('^')
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    (&term[..i], exp)
                }
            };
            let c: i64 = match coef.trim_end_matches('*') {
                "" if exp > 0 => 1,
                digits => digits.parse().map_err(|_| bad("bad coefficient"))?,
            };
            out.add_monomial(exp, sign * c)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LPolyRepr {
    coeffs: Vec<(u32, i64)>,
}

impl From<LPolynomial> for LPolyRepr {
    fn from(p: LPolynomial) -> Self {
        LPolyRepr {
            coeffs: p.terms().collect(),
        }
    }
}

impl TryFrom<LPolyRepr> for LPolynomial {
    type Error = Error;

    fn try_from(r: LPolyRepr) -> Result<Self> {
        LPolynomial::from_pairs(r.coeffs)
    }
}

// Operator sugar. These panic on overflow; library code uses the checked
// methods and propagates `Error::Overflow`.

impl Add for &LPolynomial {
    type Output = LPolynomial;
    fn add(self, rhs: Self) -> LPolynomial {
        self.checked_add(rhs).expect("LPolynomial addition overflowed")
    }
}

impl Sub for &LPolynomial {
    type Output = LPolynomial;
    fn sub(self, rhs: Self) -> LPolynomial {
        self.checked_sub(rhs).expect("LPolynomial subtraction overflowed")
    }
}

impl Mul for &LPolynomial {
    type Output = LPolynomial;
    fn mul(self, rhs: Self) -> LPolynomial {
        self.checked_mul(rhs).expect("LPolynomial product overflowed")
    }
}

impl Neg for &LPolynomial {
    type Output = LPolynomial;
    fn neg(self) -> LPolynomial {
        self.checked_neg().expect("LPolynomial negation overflowed")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for LPolynomial {
            type Output = LPolynomial;
            fn $m(self, rhs: Self) -> LPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LPolynomial {
    type Output = LPolynomial;
    fn neg(self) -> LPolynomial {
        -(&self)
    }
}
