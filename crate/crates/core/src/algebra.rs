//! The slarc algebras `A⁻` and `A⁺`: formal linear combinations of diagrams
//! multiplied by concatenation. A floating arc evaluates to 0 in `A⁻` and to
//! 1 in `A⁺`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::field::{rational_from_parts, rational_parts};

/// Exact scalar coefficient of an algebra element.
pub type Scalar = BigRational;

pub fn scalar(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot combine elements of different flavors ({0} and {1})")]
    MixedFlavors(Flavor, Flavor),
    #[error("operation requires the {0} flavor")]
    WrongFlavor(Flavor),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("malformed coefficient {num}/{den}")]
    BadCoefficient { num: String, den: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Floating arcs evaluate to zero.
    Minus,
    /// Floating arcs evaluate to one.
    Plus,
}

impl Flavor {
    /// Coefficient contributed by a concatenation with `floating` floating arcs.
    pub fn floating_factor(self, floating: usize) -> bool {
        match self {
            Flavor::Minus => floating == 0,
            Flavor::Plus => true,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Minus => f.write_str("minus"),
            Flavor::Plus => f.write_str("plus"),
        }
    }
}

/// A finite linear combination of diagrams, possibly spanning several
/// weight blocks `_mA_n`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct AlgebraElement {
    flavor: Flavor,
    terms: BTreeMap<Diagram, Scalar>,
}

impl AlgebraElement {
    pub fn zero(flavor: Flavor) -> Self {
        AlgebraElement {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(flavor: Flavor, d: Diagram) -> Self {
        Self::term(flavor, d, Scalar::one())
    }

    pub fn term(flavor: Flavor, d: Diagram, coeff: Scalar) -> Self {
        let mut e = Self::zero(flavor);
        e.add_term(d, coeff);
        e
    }

    pub fn from_terms(flavor: Flavor, terms: impl IntoIterator<Item = (Diagram, Scalar)>) -> Self {
        let mut e = Self::zero(flavor);
        for (d, c) in terms {
            e.add_term(d, c);
        }
        e
    }

    /// The idempotent `1_n`.
    pub fn unit_idempotent(flavor: Flavor, n: usize) -> Self {
        Self::basis(flavor, Diagram::identity(n))
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, d: Diagram, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    fn same_flavor(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.flavor != other.flavor {
            return Err(AlgebraError::MixedFlavors(self.flavor, other.flavor));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_flavor(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&scalar(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.flavor);
        }
        AlgebraElement {
            flavor: self.flavor,
            terms: self.terms.iter().map(|(d, c)| (*d, c * s)).collect(),
        }
    }

    /// Bilinear extension of concatenation. Mismatched inner endpoint counts
    /// contribute zero, as do floating arcs in the minus flavor.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_flavor(other)?;
        let mut out = Self::zero(self.flavor);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if x.right_count() != y.left_count() {
                    continue;
                }
                let comp = x.compose_unchecked(y);
                if self.flavor.floating_factor(comp.floating) {
                    out.add_term(comp.diagram, cx * cy);
                }
            }
        }
        Ok(out)
    }

    /// Projection onto the weight block `_mA_n`.
    pub fn component(&self, m: usize, n: usize) -> Self {
        AlgebraElement {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.left_count() == m && d.right_count() == n)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    /// Weight blocks `(m, n)` occurring in the element.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut b: Vec<(usize, usize)> = self
            .terms
            .keys()
            .map(|d| (d.left_count(), d.right_count()))
            .collect();
        b.dedup();
        b
    }

    pub fn map_diagrams(&self, f: impl Fn(&Diagram) -> Diagram) -> Self {
        Self::from_terms(self.flavor, self.terms.iter().map(|(d, c)| (f(d), c.clone())))
    }

    pub fn try_map_diagrams(
        &self,
        f: impl Fn(&Diagram) -> Result<Diagram, DiagramError>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.flavor);
        for (d, c) in &self.terms {
            out.add_term(f(d)?, c.clone());
        }
        Ok(out)
    }

    /// Anti-involution induced by mirroring diagrams.
    pub fn reflect(&self) -> Self {
        self.map_diagrams(Diagram::reflect)
    }

    /// Adds a through line at the top of every diagram.
    pub fn iota(&self) -> Self {
        self.map_diagrams(Diagram::iota)
    }

    pub fn cable(&self, k: usize) -> Result<Self, AlgebraError> {
        self.try_map_diagrams(|d| d.cable(k))
    }

    /// Bilinear extension of [`Diagram::stack`] with `self` on top.
    pub fn tensor(&self, bottom: &Self) -> Result<Self, AlgebraError> {
        self.same_flavor(bottom)?;
        let mut out = Self::zero(self.flavor);
        for (x, cx) in &self.terms {
            for (y, cy) in &bottom.terms {
                out.add_term(Diagram::stack(x, y)?, cx * cy);
            }
        }
        Ok(out)
    }

    /// Sarc degree if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Diagram::sarc_degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                if c.is_one() {
                    format!("{d:?}")
                } else {
                    format!("{c}*{d:?}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CoeffJson {
    num: String,
    den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    coeff: CoeffJson,
    diagram: Diagram,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ElementJson {
    flavor: Flavor,
    terms: Vec<TermJson>,
}

impl TryFrom<ElementJson> for AlgebraElement {
    type Error = AlgebraError;

    fn try_from(raw: ElementJson) -> Result<Self, Self::Error> {
        let mut e = AlgebraElement::zero(raw.flavor);
        for t in raw.terms {
            let c = rational_from_parts(&t.coeff.num, &t.coeff.den).ok_or_else(|| {
                AlgebraError::BadCoefficient {
                    num: t.coeff.num.clone(),
                    den: t.coeff.den.clone(),
                }
            })?;
            e.add_term(t.diagram, c);
        }
        Ok(e)
    }
}

impl From<AlgebraElement> for ElementJson {
    fn from(e: AlgebraElement) -> Self {
        ElementJson {
            flavor: e.flavor,
            terms: e
                .terms
                .into_iter()
                .map(|(d, c)| {
                    let (num, den) = rational_parts(&c);
                    TermJson {
                        coeff: CoeffJson { num, den },
                        diagram: d,
                    }
                })
                .collect(),
        }
    }
}

/// A word in `{+, −}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignSequence(pub Vec<Sign>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SignSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|s| **s == Sign::Minus).count()
    }

    pub fn all_minus(m: usize) -> Self {
        SignSequence(vec![Sign::Minus; m])
    }

    /// Every sequence of length `n`, in lexicographic order with `+ < −`.
    pub fn all(n: usize) -> Vec<SignSequence> {
        (0..1usize << n)
            .map(|bits| {
                SignSequence(
                    (0..n)
                        .map(|i| {
                            if bits >> (n - 1 - i) & 1 == 1 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl std::str::FromStr for SignSequence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' | 'p' => Ok(Sign::Plus),
                '-' | '−' | 'm' => Ok(Sign::Minus),
                other => Err(format!("unexpected sign character `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignSequence)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        f.write_str(")")
    }
}

/// The `A⁺` diagram with one left and one right sarc, `e₊` as an element.
pub fn cup_cap() -> Diagram {
    Diagram::validate(1, 1, &[], &[]).expect("valid diagram")
}

/// `e_ε`: tensor product of `e₊ = c` and `e₋ = 1₁ − c`, with `ε_1` at the
/// bottom position.
pub fn sign_idempotent(flavor: Flavor, eps: &SignSequence) -> Result<AlgebraElement, AlgebraError> {
    if flavor != Flavor::Plus {
        return Err(AlgebraError::WrongFlavor(Flavor::Plus));
    }
    let e_plus = AlgebraElement::basis(Flavor::Plus, cup_cap());
    let e_minus = AlgebraElement::unit_idempotent(Flavor::Plus, 1).sub(&e_plus)?;
    let mut acc = AlgebraElement::unit_idempotent(Flavor::Plus, 0);
    for s in &eps.0 {
        let factor = match s {
            Sign::Plus => &e_plus,
            Sign::Minus => &e_minus,
        };
        // later entries sit higher up
        acc = factor.tensor(&acc)?;
    }
    Ok(acc)
}

/// Witness diagrams `(d_{ε→m}, d_{m→ε})` for the equivalence
/// `e_ε ≃ e_{(−^m)}`, `m` the number of minuses.
///
/// `d_{ε→m}` lives in `_nB_m`: its larcs join the minus positions on the
/// left to `1..m` on the right; every plus position is a left sarc.
pub fn equivalence_witness(
    flavor: Flavor,
    eps: &SignSequence,
) -> Result<(AlgebraElement, AlgebraElement), AlgebraError> {
    if flavor != Flavor::Plus {
        return Err(AlgebraError::WrongFlavor(Flavor::Plus));
    }
    let n = eps.len();
    let minus_positions: Vec<usize> = eps
        .0
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Sign::Minus)
        .map(|(i, _)| i + 1)
        .collect();
    let m = minus_positions.len();
    let right: Vec<usize> = (1..=m).collect();
    let to_m = Diagram::validate(n, m, &minus_positions, &right)?;
    Ok((
        AlgebraElement::basis(Flavor::Plus, to_m),
        AlgebraElement::basis(Flavor::Plus, to_m.reflect()),
    ))
}

/// Checks both composite identities realising `e_ε ≃ e_{(−^m)}`.
pub fn verify_equivalence(eps: &SignSequence) -> Result<bool, AlgebraError> {
    let (to_m, from_m) = equivalence_witness(Flavor::Plus, eps)?;
    let e = sign_idempotent(Flavor::Plus, eps)?;
    let f = sign_idempotent(Flavor::Plus, &SignSequence::all_minus(eps.minus_count()))?;
    let lhs1 = f.multiply(&from_m)?.multiply(&e)?.multiply(&to_m)?.multiply(&f)?;
    let lhs2 = e.multiply(&to_m)?.multiply(&f)?.multiply(&from_m)?.multiply(&e)?;
    Ok(lhs1 == f && lhs2 == e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_basis, Side};

    fn b(d: Diagram) -> AlgebraElement {
        AlgebraElement::basis(Flavor::Minus, d)
    }

    #[test]
    fn unit_acts_trivially() {
        let one2 = AlgebraElement::unit_idempotent(Flavor::Minus, 2);
        for n in 0..4 {
            for d in enumerate_basis(2, n) {
                assert_eq!(one2.multiply(&b(d)).unwrap(), b(d));
            }
        }
    }

    #[test]
    fn floating_arc_rule() {
        let c = cup_cap();
        let cm = AlgebraElement::basis(Flavor::Minus, c);
        assert!(cm.multiply(&cm).unwrap().is_zero());
        let cp = AlgebraElement::basis(Flavor::Plus, c);
        assert_eq!(cp.multiply(&cp).unwrap(), cp);
        assert!(matches!(
            cm.multiply(&cp),
            Err(AlgebraError::MixedFlavors(..))
        ));
    }

    #[test]
    fn mismatched_weights_multiply_to_zero() {
        let x = b(Diagram::elementary(2, 1, Side::Left).unwrap());
        assert!(x.multiply(&x).unwrap().is_zero());
        let one1 = AlgebraElement::unit_idempotent(Flavor::Minus, 1);
        let one2 = AlgebraElement::unit_idempotent(Flavor::Minus, 2);
        assert!(one1.multiply(&one2).unwrap().is_zero());
    }

    #[test]
    fn components_partition_terms() {
        let one2 = AlgebraElement::unit_idempotent(Flavor::Minus, 2);
        let c = b(cup_cap());
        let a = one2.add(&c).unwrap();
        assert_eq!(a.component(1, 1), c);
        let mut sum = AlgebraElement::zero(Flavor::Minus);
        for (m, n) in a.blocks() {
            sum = sum.add(&a.component(m, n)).unwrap();
        }
        assert_eq!(sum, a);
    }

    #[test]
    fn sign_idempotents_small() {
        let e_minus = sign_idempotent(Flavor::Plus, &"-".parse().unwrap()).unwrap();
        let expected = AlgebraElement::unit_idempotent(Flavor::Plus, 1)
            .sub(&AlgebraElement::basis(Flavor::Plus, cup_cap()))
            .unwrap();
        assert_eq!(e_minus, expected);
        let e_plus = sign_idempotent(Flavor::Plus, &"+".parse().unwrap()).unwrap();
        assert!(e_plus.multiply(&e_minus).unwrap().is_zero());
        assert!(e_minus.multiply(&e_plus).unwrap().is_zero());
        let emm = sign_idempotent(Flavor::Plus, &"--".parse().unwrap()).unwrap();
        assert_eq!(emm.len(), 4);
        assert_eq!(emm.multiply(&emm).unwrap(), emm);
        assert!(matches!(
            sign_idempotent(Flavor::Minus, &"+".parse().unwrap()),
            Err(AlgebraError::WrongFlavor(Flavor::Plus))
        ));
    }

    #[test]
    fn witnesses() {
        let (a, bb) = equivalence_witness(Flavor::Plus, &"-".parse().unwrap()).unwrap();
        assert_eq!(a, AlgebraElement::unit_idempotent(Flavor::Plus, 1));
        assert_eq!(bb, a);
        let (a, _) = equivalence_witness(Flavor::Plus, &"+".parse().unwrap()).unwrap();
        assert_eq!(a.blocks(), vec![(1, 0)]);
        let eps: SignSequence = "-+--+".parse().unwrap();
        let (a, _) = equivalence_witness(Flavor::Plus, &eps).unwrap();
        let expected = Diagram::validate(5, 3, &[1, 3, 4], &[1, 2, 3]).unwrap();
        assert_eq!(a, AlgebraElement::basis(Flavor::Plus, expected));
        for eps in ["-", "+", "+-", "-+--+", "++"] {
            assert!(verify_equivalence(&eps.parse().unwrap()).unwrap(), "{eps}");
        }
    }

    #[test]
    fn json_shape() {
        let e = AlgebraElement::term(Flavor::Plus, cup_cap(), scalar(-2));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"flavor":"plus","terms":[{"coeff":{"num":"-2","den":"1"},"diagram":{"left":1,"right":1,"larc_left":[],"larc_right":[]}}]}"#
        );
        let back: AlgebraElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
