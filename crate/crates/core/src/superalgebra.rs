//! The Lie superalgebras SVir(N=2, t) as exact structure constants, their
//! `*`-structure, and the spectral flow maps between them.
//!
//! Generators are `L_n`, `J_n` (even, `n ∈ ℤ`), `G⁺_r` with `r ∈ ½ − t + ℤ`,
//! `G⁻_r` with `r ∈ ½ + t + ℤ` (odd) and the even central element `ĉ`.
//! The family parameter `t` is runtime data; mode indices are validated
//! against it whenever a bracket or a flow is taken.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

/// Generator families, declared in PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "C")]
    Central,
    L,
    J,
    #[serde(rename = "G+")]
    Gplus,
    #[serde(rename = "G-")]
    Gminus,
}

impl Family {
    pub fn is_odd(self) -> bool {
        matches!(self, Family::Gplus | Family::Gminus)
    }
}

/// A single mode. The derived ordering (family, then index ascending) is the
/// PBW order used by the module code.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorId {
    #[serde(rename = "fam")]
    pub family: Family,
    #[serde(rename = "idx")]
    pub index: Rational,
}

impl GeneratorId {
    pub fn new(family: Family, index: Rational) -> Self {
        let index = if family == Family::Central { Rational::zero() } else { index };
        GeneratorId { family, index }
    }

    pub fn l(n: i64) -> Self {
        GeneratorId::new(Family::L, n.into())
    }

    pub fn j(n: i64) -> Self {
        GeneratorId::new(Family::J, n.into())
    }

    pub fn gplus(r: Rational) -> Self {
        GeneratorId::new(Family::Gplus, r)
    }

    pub fn gminus(r: Rational) -> Self {
        GeneratorId::new(Family::Gminus, r)
    }

    pub fn central() -> Self {
        GeneratorId::new(Family::Central, Rational::zero())
    }

    pub fn is_odd(&self) -> bool {
        self.family.is_odd()
    }

    /// Whether this is a mode of SVir(N=2, t).
    pub fn is_valid(&self, t: &FlowParam) -> bool {
        let half = Rational::half();
        match self.family {
            Family::Central => self.index.is_zero(),
            Family::L | Family::J => self.index.is_integer(),
            Family::Gplus => (&self.index + &t.0 - &half).is_integer(),
            Family::Gminus => (&self.index - &t.0 - &half).is_integer(),
        }
    }

    pub fn check(&self, t: &FlowParam) -> Result<()> {
        if self.is_valid(t) {
            Ok(())
        } else {
            Err(Error::InvalidGenerator { gen: Box::new(self.clone()), t: Box::new(t.0.clone()) })
        }
    }

    pub fn with_index(&self, index: Rational) -> Self {
        GeneratorId::new(self.family, index)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Central => write!(f, "c"),
            Family::L => write!(f, "L_{{{}}}", self.index),
            Family::J => write!(f, "J_{{{}}}", self.index),
            Family::Gplus => write!(f, "G+_{{{}}}", self.index),
            Family::Gminus => write!(f, "G-_{{{}}}", self.index),
        }
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The spectral flow parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlowParam(pub Rational);

impl FlowParam {
    pub fn ns() -> Self {
        FlowParam(Rational::zero())
    }

    pub fn ramond() -> Self {
        FlowParam(Rational::half())
    }
}

impl From<Rational> for FlowParam {
    fn from(t: Rational) -> Self {
        FlowParam(t)
    }
}

/// A finite linear combination of generators with ℚ(i,√2) coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<GeneratorId, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn generator(g: GeneratorId) -> Self {
        AlgebraElement::term(g, Scalar::one())
    }

    pub fn term(g: GeneratorId, coeff: Scalar) -> Self {
        let mut out = AlgebraElement::zero();
        out.add_term(g, coeff);
        out
    }

    /// `coeff · ĉ`
    pub fn central(coeff: Rational) -> Self {
        AlgebraElement::term(GeneratorId::central(), coeff.into())
    }

    /// `G¹_r = (G⁺_r + G⁻_r)/√2`
    pub fn g1(r: Rational) -> Self {
        let w = Scalar::sqrt2().scale(&Rational::half());
        let mut out = AlgebraElement::term(GeneratorId::gplus(r.clone()), w.clone());
        out.add_term(GeneratorId::gminus(r), w);
        out
    }

    /// `G²_r = −i(G⁺_r − G⁻_r)/√2`
    pub fn g2(r: Rational) -> Self {
        let w = Scalar::i_sqrt2().scale(&Rational::new(-1, 2));
        let mut out = AlgebraElement::term(GeneratorId::gplus(r.clone()), w.clone());
        out.add_term(GeneratorId::gminus(r), -w);
        out
    }

    pub fn add_term(&mut self, g: GeneratorId, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, k: &Scalar) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GeneratorId) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Split into (even, odd) homogeneous parts.
    pub fn parity_parts(&self) -> (AlgebraElement, AlgebraElement) {
        let mut even = AlgebraElement::zero();
        let mut odd = AlgebraElement::zero();
        for (g, c) in &self.terms {
            if g.is_odd() {
                odd.add_term(g.clone(), c.clone());
            } else {
                even.add_term(g.clone(), c.clone());
            }
        }
        (even, odd)
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from(-1));
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(g, c)| if c.is_one_scalar() { g.to_string() } else { format!("({c})·{g}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (g, c) in &self.terms {
            map.serialize_entry(&g.to_string(), c)?;
        }
        map.end()
    }
}

trait IsOneScalar {
    fn is_one_scalar(&self) -> bool;
}

impl IsOneScalar for Scalar {
    fn is_one_scalar(&self) -> bool {
        self.as_rational().is_some_and(Rational::is_one)
    }
}

fn delta_zero(x: &Rational) -> bool {
    x.is_zero()
}

/// The structure constants, without validity checks.
pub(crate) fn bracket_unchecked(a: &GeneratorId, b: &GeneratorId) -> AlgebraElement {
    use Family::*;
    let r = |x: &Rational| x.clone();
    let q = Rational::new;
    match (a.family, b.family) {
        (Central, _) | (_, Central) => AlgebraElement::zero(),
        (L, L) => {
            let (m, n) = (&a.index, &b.index);
            let sum = m + n;
            let mut out = AlgebraElement::term(GeneratorId::l_at(sum.clone()), (m - n).into());
            if delta_zero(&sum) {
                let cubic = m * m * m - m;
                out.add_term(GeneratorId::central(), (cubic * q(1, 12)).into());
            }
            out
        }
        (L, Gplus) | (L, Gminus) => {
            let (m, s) = (&a.index, &b.index);
            let coeff = m * &Rational::half() - s;
            AlgebraElement::term(b.with_index(m + s), coeff.into())
        }
        (Gplus, L) | (Gminus, L) => bracket_unchecked(b, a).scale(&Scalar::from(-1)),
        (Gplus, Gminus) => {
            let (rr, s) = (&a.index, &b.index);
            let sum = rr + s;
            let mut out = AlgebraElement::term(GeneratorId::l_at(sum.clone()), Scalar::from(2));
            out.add_term(GeneratorId::j_at(sum.clone()), (rr - s).into());
            if delta_zero(&sum) {
                let c = (rr * rr - q(1, 4)) * q(1, 3);
                out.add_term(GeneratorId::central(), c.into());
            }
            out
        }
        // odd-odd brackets are symmetric
        (Gminus, Gplus) => bracket_unchecked(b, a),
        (Gplus, Gplus) | (Gminus, Gminus) => AlgebraElement::zero(),
        (L, J) => {
            let (m, n) = (&a.index, &b.index);
            AlgebraElement::term(GeneratorId::j_at(m + n), (-r(n)).into())
        }
        (J, L) => bracket_unchecked(b, a).scale(&Scalar::from(-1)),
        (Gplus, J) | (Gminus, J) => {
            let sign = if a.family == Gplus { -1 } else { 1 };
            AlgebraElement::term(a.with_index(&a.index + &b.index), Scalar::from(sign))
        }
        (J, Gplus) | (J, Gminus) => bracket_unchecked(b, a).scale(&Scalar::from(-1)),
        (J, J) => {
            let (m, n) = (&a.index, &b.index);
            if delta_zero(&(m + n)) {
                AlgebraElement::central(m * &q(1, 3))
            } else {
                AlgebraElement::zero()
            }
        }
    }
}

impl GeneratorId {
    fn l_at(n: Rational) -> Self {
        GeneratorId::new(Family::L, n)
    }

    fn j_at(n: Rational) -> Self {
        GeneratorId::new(Family::J, n)
    }
}

/// The super-bracket `[a, b]` in SVir(N=2, t): an anticommutator when both
/// generators are odd, a commutator otherwise.
pub fn bracket(a: &GeneratorId, b: &GeneratorId, t: &FlowParam) -> Result<AlgebraElement> {
    a.check(t)?;
    b.check(t)?;
    Ok(bracket_unchecked(a, b))
}

/// Bilinear extension of [`bracket`].
pub fn bracket_elem(x: &AlgebraElement, y: &AlgebraElement, t: &FlowParam) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let br = bracket(a, b, t)?;
            out.add_scaled(&br, &(ca * cb));
        }
    }
    Ok(out)
}

/// The anti-linear involution: `L_n ↦ L_{−n}`, `J_n ↦ J_{−n}`,
/// `G^±_r ↦ G^∓_{−r}`, `ĉ ↦ ĉ`, coefficients conjugated.
pub fn adjoint(x: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (g, c) in x.iter() {
        out.add_term(adjoint_generator(g), c.conj());
    }
    out
}

pub fn adjoint_generator(g: &GeneratorId) -> GeneratorId {
    let neg = -&g.index;
    match g.family {
        Family::Central => GeneratorId::central(),
        Family::L | Family::J => g.with_index(neg),
        Family::Gplus => GeneratorId::gminus(neg),
        Family::Gminus => GeneratorId::gplus(neg),
    }
}

fn flow_with_sign(t: &FlowParam, g: &GeneratorId, sign: i64) -> AlgebraElement {
    let t = &t.0 * &Rational::from_integer(sign);
    let zero_mode = g.index.is_zero();
    match g.family {
        Family::Central => AlgebraElement::generator(g.clone()),
        Family::L => {
            let mut out = AlgebraElement::generator(g.clone());
            out.add_term(GeneratorId::j_at(g.index.clone()), t.clone().into());
            if zero_mode {
                out.add_term(GeneratorId::central(), (&t * &t * Rational::new(1, 6)).into());
            }
            out
        }
        Family::J => {
            let mut out = AlgebraElement::generator(g.clone());
            if zero_mode {
                out.add_term(GeneratorId::central(), (&t * &Rational::new(1, 3)).into());
            }
            out
        }
        Family::Gplus => AlgebraElement::generator(g.with_index(&g.index + &t)),
        Family::Gminus => AlgebraElement::generator(g.with_index(&g.index - &t)),
    }
}

/// Spectral flow `η_t : SVir(t) → SVir(0)` on a generator.
pub fn flow(t: &FlowParam, g: &GeneratorId) -> Result<AlgebraElement> {
    g.check(t)?;
    Ok(flow_with_sign(t, g, 1))
}

/// The inverse map `η'_t : SVir(0) → SVir(t)` on a generator.
pub fn flow_inverse(t: &FlowParam, g: &GeneratorId) -> Result<AlgebraElement> {
    g.check(&FlowParam::ns())?;
    Ok(flow_with_sign(t, g, -1))
}

/// Linear extension of [`flow`].
pub fn flow_elem(t: &FlowParam, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&flow(t, g)?, c);
    }
    Ok(out)
}

/// Linear extension of [`flow_inverse`].
pub fn flow_inverse_elem(t: &FlowParam, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&flow_inverse(t, g)?, c);
    }
    Ok(out)
}

fn koszul(a: &GeneratorId, b: &GeneratorId) -> Scalar {
    if a.is_odd() && b.is_odd() {
        Scalar::from(-1)
    } else {
        Scalar::one()
    }
}

/// The graded Jacobi sum
/// `(−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]]`.
pub fn jacobi_defect(a: &GeneratorId, b: &GeneratorId, c: &GeneratorId, t: &FlowParam) -> Result<AlgebraElement> {
    let ga = AlgebraElement::generator(a.clone());
    let gb = AlgebraElement::generator(b.clone());
    let gc = AlgebraElement::generator(c.clone());
    let mut out = AlgebraElement::zero();
    out.add_scaled(&bracket_elem(&ga, &bracket(b, c, t)?, t)?, &koszul(a, c));
    out.add_scaled(&bracket_elem(&gb, &bracket(c, a, t)?, t)?, &koszul(b, a));
    out.add_scaled(&bracket_elem(&gc, &bracket(a, b, t)?, t)?, &koszul(c, b));
    Ok(out)
}

/// Every generator of SVir(t) with mode index in `[lo, hi]`, plus `ĉ`.
pub fn generators_in_window(t: &FlowParam, lo: i64, hi: i64) -> Vec<GeneratorId> {
    let mut out = vec![GeneratorId::central()];
    for n in lo..=hi {
        out.push(GeneratorId::l(n));
        out.push(GeneratorId::j(n));
    }
    let (lo_q, hi_q) = (Rational::from_integer(lo), Rational::from_integer(hi));
    for (family, offset) in [(Family::Gplus, Rational::half() - &t.0), (Family::Gminus, Rational::half() + &t.0)] {
        // indices offset + k within the window
        let base = offset.fract_unit();
        let mut k = lo - 1;
        loop {
            let r = &base + &Rational::from_integer(k);
            if r > hi_q {
                break;
            }
            if r >= lo_q {
                out.push(GeneratorId::new(family, r));
            }
            k += 1;
        }
    }
    out
}
