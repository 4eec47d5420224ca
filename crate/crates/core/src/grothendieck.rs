//! The Grothendieck group `K₀ ≅ ℤ[x]`, with `[P_n] = xⁿ` and
//! `[M_n] = (x−1)ⁿ`, and the operators induced by the functors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::binomial;
use crate::functors::s_count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum K0Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by x-1 leaves remainder {0}")]
    NotDivisible(BigInt),
    #[error("exponent {0} is too large")]
    Exponent(String),
    #[error("cabling needs k >= 1")]
    ZeroCable,
}

/// Which basis the coefficient list refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Powers `xⁿ`, the classes of projectives.
    Projective,
    /// Powers `(x−1)ⁿ`, the classes of standard modules.
    Standard,
}

impl std::str::FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "projective" | "proj" | "x" => Ok(Basis::Projective),
            "standard" | "std" => Ok(Basis::Standard),
            other => Err(format!("unknown basis `{other}`")),
        }
    }
}

/// A class in `K₀`, stored as integer coefficients in one of the two bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyClass {
    basis: Basis,
    coeffs: Vec<BigInt>,
}

impl PolyClass {
    pub fn new(basis: Basis, coeffs: Vec<BigInt>) -> Self {
        let mut c = PolyClass { basis, coeffs };
        c.trim();
        c
    }

    pub fn from_i64(basis: Basis, coeffs: &[i64]) -> Self {
        Self::new(basis, coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new(basis, Vec::new())
    }

    /// `xⁿ` or `(x−1)ⁿ` depending on the basis.
    pub fn monomial(basis: Basis, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Self::new(basis, coeffs)
    }

    /// `[P_n]`.
    pub fn projective(n: usize) -> Self {
        Self::monomial(Basis::Projective, n)
    }

    /// `[M_n]`.
    pub fn standard(n: usize) -> Self {
        Self::monomial(Basis::Standard, n)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero class.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Rewrites the class in `to`. `xⁿ = Σ C(n,m)(x−1)ᵐ` and
    /// `(x−1)ⁿ = Σ (−1)^{n+m} C(n,m) xᵐ`.
    pub fn convert(&self, to: Basis) -> PolyClass {
        if to == self.basis {
            return self.clone();
        }
        let sign = match to {
            Basis::Standard => 1i64,
            Basis::Projective => -1i64,
        };
        let len = self.coeffs.len();
        let mut out = vec![BigInt::zero(); len];
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (m, slot) in out.iter_mut().enumerate().take(n + 1) {
                let mut c = BigInt::from(binomial(n, m));
                if sign < 0 && (n + m) % 2 == 1 {
                    c = -c;
                }
                *slot += a * c;
            }
        }
        PolyClass::new(to, out)
    }

    pub fn add(&self, other: &PolyClass) -> PolyClass {
        let other = other.convert(self.basis);
        let len = self.coeffs.len().max(other.coeffs.len());
        PolyClass::new(
            self.basis,
            (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> PolyClass {
        PolyClass::new(self.basis, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &PolyClass) -> PolyClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> PolyClass {
        PolyClass::new(self.basis, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Product of polynomials. Both bases are closed under multiplication
    /// of powers, so the product is taken in `self`'s basis.
    pub fn mul(&self, other: &PolyClass) -> PolyClass {
        let other = other.convert(self.basis);
        if self.is_zero() || other.is_zero() {
            return PolyClass::zero(self.basis);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyClass::new(self.basis, out)
    }

    pub fn pow(&self, e: usize) -> PolyClass {
        let mut acc = PolyClass::new(self.basis, vec![BigInt::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at `x = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        match self.basis {
            Basis::Projective => self.coeffs.iter().sum(),
            Basis::Standard => self.coeff(0),
        }
    }

    /// Renders in the class's own basis: `x^2 - 2*x + 1` or `(x-1)^2 + (x-1)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let var = match self.basis {
            Basis::Projective => "x",
            Basis::Standard => "(x-1)",
        };
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyClassJson {
    basis: Basis,
    coeffs: Vec<String>,
    rendered: String,
}

impl Serialize for PolyClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyClassJson {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            rendered: self.render(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyClassJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyClass::new(raw.basis, coeffs))
    }
}

/// `(xⁿ, xᵐ) = C(n+m, m)`, extended bilinearly.
pub fn inner_product(f: &PolyClass, g: &PolyClass) -> BigInt {
    let f = f.convert(Basis::Projective);
    let g = g.convert(Basis::Projective);
    let mut acc = BigInt::zero();
    for (n, a) in f.coeffs.iter().enumerate() {
        for (m, b) in g.coeffs.iter().enumerate() {
            acc += a * b * BigInt::from(binomial(n + m, m));
        }
    }
    acc
}

/// `[Res]`: `f ↦ (x f(x) − f(1)) / (x − 1)`, by exact synthetic division.
pub fn op_res(f: &PolyClass) -> Result<PolyClass, K0Error> {
    let p = f.convert(Basis::Projective);
    if p.is_zero() {
        return Ok(p);
    }
    // numerator x f(x) - f(1), coefficients low to high
    let mut num = vec![BigInt::zero(); p.coeffs.len() + 1];
    for (i, c) in p.coeffs.iter().enumerate() {
        num[i + 1] += c;
    }
    num[0] -= p.eval_at_one();
    // divide by (x - 1) from the top
    let deg = num.len() - 1;
    let mut quot = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (1..=deg).rev() {
        carry = &num[i] + carry;
        quot[i - 1] = carry.clone();
    }
    let remainder = &num[0] + carry;
    if !remainder.is_zero() {
        return Err(K0Error::NotDivisible(remainder));
    }
    Ok(PolyClass::new(Basis::Projective, quot))
}

/// `[Ind]`: multiplication by `x`.
pub fn op_ind(f: &PolyClass) -> PolyClass {
    f.convert(Basis::Projective).mul(&PolyClass::projective(1))
}

/// `[F_k]`: keeps the standard-basis terms of degree at most `k`.
pub fn op_fk(f: &PolyClass, k: usize) -> PolyClass {
    let s = f.convert(Basis::Standard);
    let coeffs = s.coeffs.iter().take(k + 1).cloned().collect();
    PolyClass::new(Basis::Standard, coeffs)
}

/// `[^{[k]}−]`: `(x−1)ⁿ ↦ Σ_i S(n,k,i) (x−1)ⁱ`.
pub fn op_cable(f: &PolyClass, k: usize) -> Result<PolyClass, K0Error> {
    if k == 0 {
        return Err(K0Error::ZeroCable);
    }
    let s = f.convert(Basis::Standard);
    let mut out = vec![BigInt::zero(); s.coeffs.len()];
    for (n, a) in s.coeffs.iter().enumerate() {
        for (i, slot) in out.iter_mut().enumerate().take(n + 1) {
            *slot += a * s_count(n, k, i);
        }
    }
    Ok(PolyClass::new(Basis::Standard, out))
}

/// Class of a standard-filtered module read off its weight dimensions:
/// `dim 1_pM = Σ_i c_i C(p, i)` is solved for the `c_i` triangularly.
pub fn class_from_dims(dims: &[usize]) -> PolyClass {
    let mut c: Vec<BigInt> = Vec::with_capacity(dims.len());
    for (p, &d) in dims.iter().enumerate() {
        let mut v = BigInt::from(d);
        for (i, ci) in c.iter().enumerate() {
            v -= ci * BigInt::from(binomial(p, i));
        }
        c.push(v);
    }
    PolyClass::new(Basis::Standard, c)
}

/// Weight dimensions predicted by a class: `dim 1_p = Σ_i c_i C(p, i)`.
pub fn dims_of_class(f: &PolyClass, cutoff: usize) -> Vec<BigInt> {
    let s = f.convert(Basis::Standard);
    (0..=cutoff)
        .map(|p| {
            s.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(binomial(p, i)))
                .sum()
        })
        .collect()
}

/// Parses expressions such as `x^3 - 2*x + 1` or `(x-1)^2` into a class in
/// the projective basis.
pub fn parse_poly(input: &str) -> Result<PolyClass, K0Error> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> K0Error {
        K0Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PolyClass, K0Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyClass, K0Error> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // implicit product such as 3x or 2(x-1)
                Some(b'x') | Some(b'(') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<PolyClass, K0Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e = digits
                .to_usize()
                .filter(|e| *e <= 4096)
                .ok_or_else(|| K0Error::Exponent(String::from_utf8_lossy(&self.src[start..self.pos]).into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or_else(|| BigInt::from(-1))
    }

    fn atom(&mut self) -> Result<PolyClass, K0Error> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(PolyClass::projective(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits();
                Ok(PolyClass::new(Basis::Projective, vec![n]))
            }
            _ => Err(self.error("expected a number, `x` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PolyClass {
        parse_poly(s).unwrap()
    }

    #[test]
    fn conversions() {
        assert_eq!(
            PolyClass::projective(3).convert(Basis::Standard),
            PolyClass::from_i64(Basis::Standard, &[1, 3, 3, 1])
        );
        assert_eq!(
            PolyClass::standard(2).convert(Basis::Projective),
            PolyClass::from_i64(Basis::Projective, &[1, -2, 1])
        );
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(&p("x^2"), &p("x^3")), BigInt::from(10));
        assert_eq!(inner_product(&p("1"), &p("1")), BigInt::from(1));
        assert_eq!(inner_product(&p("x"), &p("x^2 + x")), BigInt::from(5));
    }

    #[test]
    fn operators() {
        assert_eq!(op_res(&p("x^3")).unwrap(), p("x^3 + x^2 + x + 1"));
        assert_eq!(op_fk(&p("x^2"), 1).convert(Basis::Projective), p("2x - 1"));
        assert_eq!(
            op_cable(&PolyClass::standard(2), 2).unwrap(),
            PolyClass::from_i64(Basis::Standard, &[0, 1, 4])
        );
        assert_eq!(op_ind(&p("x^2 - 1")), p("x^3 - x"));
        // [M_n] goes to [M_n] + [M_{n-1}]
        for n in 1..6 {
            let res = op_res(&PolyClass::standard(n)).unwrap();
            assert_eq!(res, PolyClass::standard(n).add(&PolyClass::standard(n - 1)).convert(Basis::Projective));
        }
    }

    #[test]
    fn parsing_and_rendering() {
        assert_eq!(p("(x-1)^2"), PolyClass::from_i64(Basis::Projective, &[1, -2, 1]));
        assert_eq!(p("x^2 - 2*x + 1").render(), "x^2 - 2*x + 1");
        assert_eq!(PolyClass::from_i64(Basis::Standard, &[0, 1, 4]).render(), "4*(x-1)^2 + (x-1)");
        assert_eq!(p("-3").render(), "-3");
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("y").is_err());
        assert!(parse_poly("x^99999").is_err());
    }

    #[test]
    fn dims_round_trip() {
        // P_2 has dims C(p+2, 2)
        let dims: Vec<usize> = (0..8).map(|q| binomial(q + 2, 2) as usize).collect();
        assert_eq!(class_from_dims(&dims).convert(Basis::Projective), p("x^2"));
    }

    fn arb_class() -> impl Strategy<Value = PolyClass> {
        prop::collection::vec(-50i64..50, 0..11).prop_map(|c| PolyClass::from_i64(Basis::Projective, &c))
    }

    proptest! {
        #[test]
        fn conversion_round_trips(f in arb_class()) {
            prop_assert_eq!(f.convert(Basis::Standard).convert(Basis::Projective), f);
        }

        #[test]
        fn fk_is_idempotent(f in arb_class(), k in 0usize..6) {
            prop_assert_eq!(op_fk(&op_fk(&f, k), k), op_fk(&f, k));
        }

        #[test]
        fn res_division_is_exact(f in arb_class()) {
            let r = op_res(&f).unwrap();
            // (x - 1) r(x) = x f(x) - f(1)
            let lhs = r.mul(&p("x - 1"));
            let rhs = f.mul(&p("x")).sub(&PolyClass::new(Basis::Projective, vec![f.eval_at_one()]));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dims_determine_class(f in arb_class()) {
            let d = dims_of_class(&f, 12);
            prop_assume!(d.iter().all(|v| !v.is_negative()));
            let dims: Vec<usize> = d.iter().map(|v| v.to_usize().unwrap()).collect();
            prop_assert_eq!(class_from_dims(&dims).convert(Basis::Projective), f);
        }
    }
}
