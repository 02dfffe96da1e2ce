//! Exact Laurent polynomial arithmetic in two commuting variables `x` and `y`
//! with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from Laurent polynomial operations and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The x-degree of the zero polynomial is undefined.
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// The division is not exact.
    #[error("polynomial division leaves a remainder")]
    Remainder,
    /// Malformed polynomial text; `pos` is a byte offset into the input.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// A Laurent polynomial in `x` and `y` over the integers.
///
/// Terms map an exponent pair `(dx, dy)` to a nonzero coefficient; the zero
/// polynomial is the empty map. Two polynomials are equal iff their term maps
/// are equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent2Poly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl Laurent2Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::mono(1, 0, 0)
    }

    /// The single-term polynomial `coeff·x^dx·y^dy`; a zero coefficient
    /// yields the zero polynomial.
    pub fn mono(coeff: impl Into<BigInt>, dx: i64, dy: i64) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dx, dy), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms as `((dx, dy), coeff)` in ascending key order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// The coefficient of `x^dx·y^dy` (zero if the term is absent).
    pub fn coeff(&self, dx: i64, dy: i64) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    /// The coefficient of `x^dx` as a polynomial in `y` alone.
    pub fn coeff_of_x(&self, dx: i64) -> Laurent2Poly {
        let terms = self
            .terms
            .range((dx, i64::MIN)..=(dx, i64::MAX))
            .map(|(&(_, dy), c)| ((0, dy), c.clone()))
            .collect();
        Self { terms }
    }

    /// Maximal x-exponent over stored terms; `None` for the zero polynomial.
    pub fn max_deg_x(&self) -> Option<i64> {
        self.terms.keys().map(|&(dx, _)| dx).max()
    }

    /// Minimal x-exponent over stored terms; `None` for the zero polynomial.
    pub fn min_deg_x(&self) -> Option<i64> {
        self.terms.keys().map(|&(dx, _)| dx).min()
    }

    /// Substitutes `x ↦ x⁻¹` (negates every dx; dy unchanged).
    pub fn invert_x(&self) -> Laurent2Poly {
        let terms = self
            .terms
            .iter()
            .map(|(&(dx, dy), c)| ((-dx, dy), c.clone()))
            .collect();
        Self { terms }
    }

    /// Substitutes `y ↦ −y` (negates the coefficient of every odd-dy term).
    pub fn negate_y(&self) -> Laurent2Poly {
        let terms = self
            .terms
            .iter()
            .map(|(&(dx, dy), c)| ((dx, dy), if dy % 2 == 0 { c.clone() } else { -c }))
            .collect();
        Self { terms }
    }

    fn add_term(&mut self, key: (i64, i64), c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Multiplies by the monomial `x^dx·y^dy`.
    pub fn mul_mono(&self, coeff: impl Into<BigInt>, dx: i64, dy: i64) -> Laurent2Poly {
        let c = coeff.into();
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(tx, ty), tc)| ((tx + dx, ty + dy), tc * &c))
            .collect();
        Self { terms }
    }

    /// Returns `r` with `q·r = self`, or [`PolyError::Remainder`] when no
    /// such Laurent polynomial exists.
    pub fn div_exact(&self, q: &Laurent2Poly) -> Result<Laurent2Poly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Normalize both operands by monomial units so that the dividend and
        // divisor are ordinary polynomials; any exact Laurent quotient of the
        // originals is then a monomial shift of an ordinary quotient.
        let (pnx, pny) = (self.min_deg_x().unwrap(), self.min_deg_y());
        let (qnx, qny) = (q.min_deg_x().unwrap(), q.min_deg_y());
        let mut p = self.mul_mono(1, -pnx, -pny);
        let q0 = q.mul_mono(1, -qnx, -qny);
        let qlead_x = q0.max_deg_x().unwrap();
        let qlead = q0.coeff_of_x(qlead_x);

        let mut quot = Self::zero();
        while !p.is_zero() {
            let plead_x = p.max_deg_x().unwrap();
            if plead_x < qlead_x {
                return Err(PolyError::Remainder);
            }
            let t = div_exact_y(&p.coeff_of_x(plead_x), &qlead)?;
            let shifted = t.mul_mono(1, plead_x - qlead_x, 0);
            p = &p - &(&shifted * &q0);
            quot = &quot + &shifted;
        }
        Ok(quot.mul_mono(1, pnx - qnx, pny - qny))
    }

    fn min_deg_y(&self) -> i64 {
        self.terms.keys().map(|&(_, dy)| dy).min().unwrap_or(0)
    }

    fn max_deg_y(&self) -> i64 {
        self.terms.keys().map(|&(_, dy)| dy).max().unwrap_or(0)
    }
}

/// Exact division of Laurent polynomials in `y` alone (dx = 0 on every term).
fn div_exact_y(p: &Laurent2Poly, q: &Laurent2Poly) -> Result<Laurent2Poly, PolyError> {
    let pmin = p.min_deg_y();
    let qmin = q.min_deg_y();
    let mut p = p.mul_mono(1, 0, -pmin);
    let q0 = q.mul_mono(1, 0, -qmin);
    let qd = q0.max_deg_y();
    let qlead = q0.coeff(0, qd);
    let mut quot = Laurent2Poly::zero();
    while !p.is_zero() {
        let pd = p.max_deg_y();
        if pd < qd {
            return Err(PolyError::Remainder);
        }
        let plead = p.coeff(0, pd);
        if (&plead % &qlead) != BigInt::zero() {
            return Err(PolyError::Remainder);
        }
        let t = Laurent2Poly::mono(&plead / &qlead, 0, pd - qd);
        p = &p - &(&t * &q0);
        quot = &quot + &t;
    }
    Ok(quot.mul_mono(1, 0, pmin - qmin))
}

impl Add for &Laurent2Poly {
    type Output = Laurent2Poly;
    fn add(self, rhs: &Laurent2Poly) -> Laurent2Poly {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c);
        }
        out
    }
}

impl Sub for &Laurent2Poly {
    type Output = Laurent2Poly;
    fn sub(self, rhs: &Laurent2Poly) -> Laurent2Poly {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, &-c.clone());
        }
        out
    }
}

impl Neg for &Laurent2Poly {
    type Output = Laurent2Poly;
    fn neg(self) -> Laurent2Poly {
        let terms = self
            .terms
            .iter()
            .map(|(&key, c)| (key, -c.clone()))
            .collect();
        Laurent2Poly { terms }
    }
}

impl Mul for &Laurent2Poly {
    type Output = Laurent2Poly;
    fn mul(self, rhs: &Laurent2Poly) -> Laurent2Poly {
        let mut out = Laurent2Poly::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                out.add_term((ax + bx, ay + by), &(ac * bc));
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Laurent2Poly {
            type Output = Laurent2Poly;
            fn $method(self, rhs: Laurent2Poly) -> Laurent2Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Laurent2Poly {
    type Output = Laurent2Poly;
    fn neg(self) -> Laurent2Poly {
        -&self
    }
}

/// Canonical text form: terms sorted by dx descending, then dy descending;
/// each term is `[int*][y[^e]][*][x[^e]]` with the y factor first.
impl fmt::Display for Laurent2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(dx, dy), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (dx == 0 && dy == 0) {
                factors.push(mag.to_string());
            }
            if dy != 0 {
                factors.push(if dy == 1 {
                    "y".into()
                } else {
                    format!("y^{dy}")
                });
            }
            if dx != 0 {
                factors.push(if dx == 1 {
                    "x".into()
                } else {
                    format!("x^{dx}")
                });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent2Poly({self})")
    }
}

impl FromStr for Laurent2Poly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

/// Parses the canonical polynomial grammar. Accepts the `x`/`y` factors of a
/// term in either order; output of [`fmt::Display`] always round-trips.
pub fn parse_poly(s: &str) -> Result<Laurent2Poly, PolyError> {
    s.parse()
}

/// Formats a polynomial in canonical text form.
pub fn format_poly(p: &Laurent2Poly) -> String {
    p.to_string()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Laurent2Poly, PolyError> {
        let mut out = Laurent2Poly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return Err(self.err("expected '+' or '-' between terms")),
                None => break,
            };
            self.skip_ws();
            let term = self.parse_term()?;
            out = if negative { &out - &term } else { &out + &term };
            first = false;
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<Laurent2Poly, PolyError> {
        let mut coeff: Option<BigInt> = None;
        let mut dx: Option<i64> = None;
        let mut dy: Option<i64> = None;
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if any || coeff.is_some() {
                        return Err(self.err("unexpected integer inside a term"));
                    }
                    coeff = Some(self.parse_int()?);
                }
                Some(v @ (b'x' | b'y')) => {
                    self.pos += 1;
                    let e = self.parse_exponent()?;
                    let slot = if v == b'x' { &mut dx } else { &mut dy };
                    if slot.is_some() {
                        return Err(self.err("variable repeated inside a term"));
                    }
                    *slot = Some(e);
                }
                _ => {
                    if !any {
                        return Err(self.err("expected a term"));
                    }
                    break;
                }
            }
            any = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'x' || c == b'y') {
                    return Err(self.err("expected a factor after '*'"));
                }
            }
        }
        Ok(Laurent2Poly::mono(
            coeff.unwrap_or_else(BigInt::one),
            dx.unwrap_or(0),
            dy.unwrap_or(0),
        ))
    }

    fn parse_int(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        BigInt::parse_bytes(&self.s[start..self.pos], 10).ok_or_else(|| self.err("expected digits"))
    }

    fn parse_exponent(&mut self) -> Result<i64, PolyError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits after '^'"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let mag: i64 = text
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(if negative { -mag } else { mag })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Laurent2Poly {
        s.parse().unwrap()
    }

    fn delta() -> Laurent2Poly {
        p("y^-1*x - y^-1*x^-1 + 1")
    }

    #[test]
    fn mono_zero_coeff_is_zero() {
        assert!(Laurent2Poly::mono(0, 3, 1).is_zero());
        assert_eq!(Laurent2Poly::mono(1, 0, 0), Laurent2Poly::one());
        assert_eq!(Laurent2Poly::mono(-2, 4, 0).to_string(), "-2*x^4");
    }

    #[test]
    fn ring_basics() {
        let a = p("x + 1");
        let b = p("x - 1");
        assert_eq!(&a * &b, p("x^2 - 1"));
        assert!((&a + &-&a).is_zero());
        assert_eq!(&delta() * &p("y"), p("x - x^-1 + y"));
    }

    #[test]
    fn degrees() {
        assert_eq!(delta().max_deg_x(), Some(1));
        assert_eq!(delta().min_deg_x(), Some(-1));
        assert_eq!(Laurent2Poly::zero().max_deg_x(), None);
        assert_eq!(p("y^5 + 2").max_deg_x(), Some(0));
    }

    #[test]
    fn invert_x_examples() {
        assert_eq!(p("x^2 + y").invert_x(), p("x^-2 + y"));
        assert_eq!(delta().invert_x(), p("y^-1*x^-1 - y^-1*x + 1"));
    }

    #[test]
    fn negate_y_examples() {
        assert_eq!(p("x^2 + y - y^-3 + 2").negate_y(), p("x^2 - y + y^-3 + 2"));
        // δ is fixed by the combined substitution x ↦ x⁻¹, y ↦ −y but not by
        // either half alone.
        assert_eq!(delta().invert_x().negate_y(), delta());
        assert_ne!(delta().negate_y(), delta());
        let q = p("3*y^2*x^-1 - 7*y^-5 + x");
        assert_eq!(q.negate_y().negate_y(), q);
    }

    #[test]
    fn div_exact_examples() {
        let d = delta();
        let dd = &d * &d;
        assert_eq!(dd.div_exact(&d).unwrap(), d);
        assert_eq!(d.div_exact(&Laurent2Poly::one()).unwrap(), d);
        assert_eq!(p("x").div_exact(&p("x + 1")), Err(PolyError::Remainder));
        assert_eq!(p("x^2 + y").div_exact(&d), Err(PolyError::Remainder));
        assert_eq!(
            d.div_exact(&Laurent2Poly::zero()),
            Err(PolyError::DivisionByZero)
        );
        // Monomials are units of the Laurent ring and divide everything.
        assert_eq!(p("x").div_exact(&p("y")).unwrap(), p("y^-1*x"));
        assert_eq!(
            p("x^3*y - x").div_exact(&p("x^2")).unwrap(),
            p("x*y - x^-1")
        );
    }

    #[test]
    fn display_is_canonical() {
        let q = p("2*x^-2 - 5 + y*x^5 + y^4 - 2*x^4");
        assert_eq!(q.to_string(), "y*x^5 - 2*x^4 + y^4 - 5 + 2*x^-2");
        assert_eq!(Laurent2Poly::zero().to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("y^2*x^4").to_string(), "y^2*x^4");
    }

    #[test]
    fn parse_rejects_garbage() {
        for (text, _desc) in [
            ("", "empty"),
            ("x +", "trailing operator"),
            ("x^", "missing exponent"),
            ("2 3", "two integers"),
            ("x*x", "repeated variable"),
            ("x^9999999999999999999999", "exponent overflow"),
            ("z", "unknown variable"),
        ] {
            assert!(
                text.parse::<Laurent2Poly>().is_err(),
                "expected parse failure on {text:?}"
            );
        }
    }

    #[test]
    fn parse_positions_are_reported() {
        match "x + ?".parse::<Laurent2Poly>() {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    fn arb_poly() -> impl Strategy<Value = Laurent2Poly> {
        proptest::collection::vec(((-6i64..=6), (-6i64..=6), (-9i64..=9)), 0..8).prop_map(|ts| {
            let mut out = Laurent2Poly::zero();
            for (dx, dy, c) in ts {
                out = &out + &Laurent2Poly::mono(c, dx, dy);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &Laurent2Poly::zero(), a.clone());
            prop_assert_eq!(&a * &Laurent2Poly::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn max_deg_x_is_additive(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(
                prod.max_deg_x().unwrap(),
                a.max_deg_x().unwrap() + b.max_deg_x().unwrap()
            );
            prop_assert_eq!(
                prod.min_deg_x().unwrap(),
                a.min_deg_x().unwrap() + b.min_deg_x().unwrap()
            );
        }

        #[test]
        fn invert_x_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).invert_x(), &a.invert_x() * &b.invert_x());
            prop_assert_eq!((&a + &b).invert_x(), &a.invert_x() + &b.invert_x());
            prop_assert_eq!(a.invert_x().invert_x(), a.clone());
        }

        #[test]
        fn div_exact_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
        }

        #[test]
        fn parse_format_round_trip(a in arb_poly()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<Laurent2Poly>().unwrap(), a);
        }
    }
}
