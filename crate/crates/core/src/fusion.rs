//! The coset sector ring at level n: labels `(l, m, s)` with
//! `m ∈ ℤ/(2n+4)`, `s ∈ ℤ/4`, `l − m + s` even, modulo
//! `(l, m, s) ~ (n − l, m + n + 2, s + 2)`; and the fermionic NS labels
//! `(l, m)` modulo `(l, m) ~ (n − l, m + n + 2)`.
//!
//! Sectors are canonicalized when constructed, so equality, ordering and
//! hashing all act on classes. The coset representative is the one with
//! `s ∈ {0, 1}`; the NS representative is the lexicographically smaller one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{phase_from_exponent, Phase, Rational};
use crate::unitarity::DiscreteLabel;

fn modulus(n: u32) -> i64 {
    2 * i64::from(n) + 4
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetSector {
    n: u32,
    l: u32,
    m: i64,
    s: i64,
}

impl CosetSector {
    /// Canonical representative of `(l, m, s)` at level n.
    pub fn new(n: u32, l: i64, m: i64, s: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLabel("coset sectors need n >= 1".into()));
        }
        if l < 0 || l > i64::from(n) {
            return Err(Error::InvalidLabel(format!("l={l} outside 0..={n}")));
        }
        if (l - m + s).rem_euclid(2) != 0 {
            return Err(Error::InvalidLabel(format!("({l},{m},{s}) violates l-m+s even")));
        }
        let k = modulus(n);
        let a = (l as u32, m.rem_euclid(k), s.rem_euclid(4));
        let b = (n - l as u32, (m + i64::from(n) + 2).rem_euclid(k), (s + 2).rem_euclid(4));
        // the identification shifts s by 2, so exactly one side has s ∈ {0, 1}
        let (l, m, s) = if a.2 < 2 { a } else { b };
        Ok(CosetSector { n, l, m, s })
    }

    pub fn identity(n: u32) -> Self {
        CosetSector::new(n, 0, 0, 0).expect("identity is valid")
    }

    /// `σ = (0, 1, 1)`
    pub fn sigma(n: u32) -> Self {
        CosetSector::new(n, 0, 1, 1).expect("σ is valid")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// The other representative of the class.
    pub fn partner(&self) -> (u32, i64, i64) {
        let k = modulus(self.n);
        (self.n - self.l, (self.m + i64::from(self.n) + 2).rem_euclid(k), (self.s + 2).rem_euclid(4))
    }

    /// Exponent `(l(l+2) − m²)/(4(n+2)) + s²/8` of the statistics phase,
    /// evaluated on the stored representative.
    pub fn phase_exponent(&self) -> Rational {
        phase_exponent_raw(self.n, i64::from(self.l), self.m, self.s)
    }

    pub fn statistics_phase(&self) -> Phase {
        phase_from_exponent(&self.phase_exponent())
    }

    /// Dimension one exactly when `l ∈ {0, n}`.
    pub fn is_dim_one(&self) -> bool {
        self.l == 0 || self.l == self.n
    }

    /// `sin((l+1)π/(n+2)) / sin(π/(n+2))`, for display only.
    pub fn quantum_dimension_float(&self) -> f64 {
        let x = std::f64::consts::PI / f64::from(self.n + 2);
        (f64::from(self.l + 1) * x).sin() / x.sin()
    }

    pub fn conjugate(&self) -> CosetSector {
        CosetSector::new(self.n, i64::from(self.l), -self.m, -self.s).expect("conjugate keeps parity")
    }

    /// Product of two sectors when `self` has dimension one (a single sector).
    pub fn fuse_simple(&self, other: &CosetSector) -> Result<CosetSector> {
        let v = fuse(self, other)?;
        v.single().ok_or_else(|| Error::NotInvertible(format!("{self} * {other} is not a single sector")))
    }

    /// Least k > 0 with `x^k = 1`.
    pub fn order(&self) -> Result<u64> {
        if !self.is_dim_one() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let id = CosetSector::identity(self.n);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.fuse_simple(self)?;
            k += 1;
        }
        Ok(k)
    }
}

pub(crate) fn phase_exponent_raw(n: u32, l: i64, m: i64, s: i64) -> Rational {
    let n = i64::from(n);
    &Rational::new(l * (l + 2) - m * m, 4 * (n + 2)) + &Rational::new(s * s, 8)
}

impl fmt::Display for CosetSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.m, self.s)
    }
}

impl fmt::Debug for CosetSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})@{}", self.l, self.m, self.s, self.n)
    }
}

impl Serialize for CosetSector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CosetSector", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("s", &self.s)?;
        st.end()
    }
}

fn parse_ints(input: &str, what: &'static str) -> Result<(Vec<i64>, Option<u32>)> {
    let err = || Error::Parse { what, input: input.to_string() };
    let (body, n) = match input.split_once('@') {
        Some((b, n)) => (b, Some(n.trim().parse::<u32>().map_err(|_| err())?)),
        None => (input, None),
    };
    let body = body.trim().trim_start_matches('(').trim_end_matches(')');
    let parts = body.split(',').map(|p| p.trim().parse::<i64>().map_err(|_| err())).collect::<Result<Vec<_>>>()?;
    Ok((parts, n))
}

impl CosetSector {
    /// Parse `"l,m,s"` at a given level.
    pub fn parse_at(input: &str, n: u32) -> Result<Self> {
        let (parts, at) = parse_ints(input, "coset sector")?;
        if parts.len() != 3 || at.is_some_and(|a| a != n) {
            return Err(Error::Parse { what: "coset sector", input: input.to_string() });
        }
        CosetSector::new(n, parts[0], parts[1], parts[2])
    }
}

/// Parses `"l,m,s@n"`.
impl FromStr for CosetSector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (parts, n) = parse_ints(s, "coset sector")?;
        match (parts.as_slice(), n) {
            ([l, m, t], Some(n)) => CosetSector::new(n, *l, *m, *t),
            _ => Err(Error::Parse { what: "coset sector", input: s.to_string() }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NSFermiSector {
    n: u32,
    l: u32,
    m: i64,
}

impl NSFermiSector {
    pub fn new(n: u32, l: i64, m: i64) -> Result<Self> {
        if l < 0 || l > i64::from(n) {
            return Err(Error::InvalidLabel(format!("l={l} outside 0..={n}")));
        }
        if (l - m).rem_euclid(2) != 0 {
            return Err(Error::InvalidLabel(format!("({l},{m}) violates l-m even")));
        }
        let k = modulus(n);
        let a = (l as u32, m.rem_euclid(k));
        let b = (n - l as u32, (m + i64::from(n) + 2).rem_euclid(k));
        let (l, m) = a.min(b);
        Ok(NSFermiSector { n, l, m })
    }

    pub fn identity(n: u32) -> Self {
        NSFermiSector::new(n, 0, 0).expect("identity is valid")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// The NS sector of a discrete-series label.
    pub fn from_label(label: &DiscreteLabel) -> Result<Self> {
        if label.sector != crate::lwmodules::SectorType::NS {
            return Err(Error::InvalidLabel(format!("{label} is not an NS label")));
        }
        NSFermiSector::new(label.n, i64::from(label.l), label.m)
    }

    /// The discrete-series NS label `(l, m)` with `|m| ≤ l` in this class.
    pub fn to_label(&self) -> DiscreteLabel {
        let k = modulus(self.n);
        let reps = [(self.l, self.m), (self.n - self.l, self.m + i64::from(self.n) + 2)];
        for (l, m) in reps {
            let l_ = i64::from(l);
            // the unique m' ≡ m (mod 2n+4) in [−l, l], if any (2n+4 > 2l)
            let m_red = (m + l_).rem_euclid(k) - l_;
            if m_red.abs() <= l_ {
                return DiscreteLabel::ns(self.n, l, m_red).expect("representative satisfies NS constraints");
            }
        }
        unreachable!("every NS class has a discrete-series representative")
    }
}

impl fmt::Display for NSFermiSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

impl fmt::Debug for NSFermiSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})@{}", self.l, self.m, self.n)
    }
}

impl Serialize for NSFermiSector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NSFermiSector", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

/// Parses `"l,m@n"`.
impl FromStr for NSFermiSector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (parts, n) = parse_ints(s, "NS sector")?;
        match (parts.as_slice(), n) {
            ([l, m], Some(n)) => NSFermiSector::new(n, *l, *m),
            _ => Err(Error::Parse { what: "NS sector", input: s.to_string() }),
        }
    }
}

/// A formal sum of sectors with nonnegative integer multiplicities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionVector<S: Ord>(BTreeMap<S, u64>);

impl<S: Ord + Clone> FusionVector<S> {
    pub fn zero() -> Self {
        FusionVector(BTreeMap::new())
    }

    pub fn from_sector(x: S) -> Self {
        let mut v = FusionVector::zero();
        v.add(x, 1);
        v
    }

    pub fn add(&mut self, x: S, mult: u64) {
        if mult > 0 {
            *self.0.entry(x).or_default() += mult;
        }
    }

    pub fn add_vector(&mut self, other: &FusionVector<S>) {
        for (x, k) in &other.0 {
            self.add(x.clone(), *k);
        }
    }

    pub fn multiplicity(&self, x: &S) -> u64 {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, &u64)> {
        self.0.iter()
    }

    pub fn sectors(&self) -> impl Iterator<Item = &S> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Total multiplicity.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// The sector, if this vector is a single sector with multiplicity one.
    pub fn single(&self) -> Option<S> {
        match self.0.iter().next() {
            Some((x, 1)) if self.0.len() == 1 => Some(x.clone()),
            _ => None,
        }
    }
}

impl<S: Ord + fmt::Display> fmt::Display for FusionVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(x, k)| if *k == 1 { x.to_string() } else { format!("{k}·{x}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Ord + fmt::Display> fmt::Debug for FusionVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Ord + Serialize> Serialize for FusionVector<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Term<'a, S> {
            sector: &'a S,
            mult: u64,
        }
        let terms: Vec<Term<'_, S>> = self.0.iter().map(|(sector, &mult)| Term { sector, mult }).collect();
        terms.serialize(serializer)
    }
}

/// SU(2)_n truncated Clebsch-Gordan range.
fn su2_range(n: u32, l1: u32, l2: u32) -> impl Iterator<Item = u32> {
    let lo = l1.abs_diff(l2);
    let hi = (l1 + l2).min(2 * n - l1 - l2);
    (lo..=hi).step_by(2)
}

pub fn fuse(a: &CosetSector, b: &CosetSector) -> Result<FusionVector<CosetSector>> {
    if a.n != b.n {
        return Err(Error::MismatchedLevel(a.n, b.n));
    }
    let mut out = FusionVector::zero();
    for l in su2_range(a.n, a.l, b.l) {
        out.add(CosetSector::new(a.n, i64::from(l), a.m + b.m, a.s + b.s)?, 1);
    }
    Ok(out)
}

pub fn fuse_ns(a: &NSFermiSector, b: &NSFermiSector) -> Result<FusionVector<NSFermiSector>> {
    if a.n != b.n {
        return Err(Error::MismatchedLevel(a.n, b.n));
    }
    let mut out = FusionVector::zero();
    for l in su2_range(a.n, a.l, b.l) {
        out.add(NSFermiSector::new(a.n, i64::from(l), a.m + b.m)?, 1);
    }
    Ok(out)
}

/// Bilinear extension of a sector product to formal sums.
pub fn fuse_vectors<S, F>(x: &FusionVector<S>, y: &FusionVector<S>, mut f: F) -> Result<FusionVector<S>>
where
    S: Ord + Clone,
    F: FnMut(&S, &S) -> Result<FusionVector<S>>,
{
    let mut out = FusionVector::zero();
    for (a, ka) in x.iter() {
        for (b, kb) in y.iter() {
            for (c, kc) in f(a, b)?.iter() {
                out.add(c.clone(), ka * kb * kc);
            }
        }
    }
    Ok(out)
}

/// `x^k` in the coset ring (`x^0` is the identity).
pub fn sector_power(x: &CosetSector, k: u64) -> Result<FusionVector<CosetSector>> {
    let mut acc = FusionVector::from_sector(CosetSector::identity(x.n));
    let xv = FusionVector::from_sector(*x);
    for _ in 0..k {
        acc = fuse_vectors(&acc, &xv, fuse)?;
    }
    Ok(acc)
}

/// `x^k` in the NS fermionic ring.
pub fn ns_power(x: &NSFermiSector, k: u64) -> Result<FusionVector<NSFermiSector>> {
    let mut acc = FusionVector::from_sector(NSFermiSector::identity(x.n));
    let xv = FusionVector::from_sector(*x);
    for _ in 0..k {
        acc = fuse_vectors(&acc, &xv, fuse_ns)?;
    }
    Ok(acc)
}

/// Order of a dimension-one sector.
pub fn order_of(x: &CosetSector) -> Result<u64> {
    x.order()
}

/// Every coset sector at level n, canonical and sorted.
pub fn all_sectors(n: u32) -> Vec<CosetSector> {
    let mut out = Vec::new();
    for l in 0..=i64::from(n) {
        for m in 0..modulus(n) {
            for s in 0..4 {
                if let Ok(x) = CosetSector::new(n, l, m, s) {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every NS fermionic sector at level n, canonical and sorted.
pub fn all_ns_sectors(n: u32) -> Vec<NSFermiSector> {
    let mut out = Vec::new();
    for l in 0..=i64::from(n) {
        for m in 0..modulus(n) {
            if let Ok(x) = NSFermiSector::new(n, l, m) {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: u32, l: i64, m: i64, s: i64) -> CosetSector {
        CosetSector::new(n, l, m, s).unwrap()
    }

    fn ns(n: u32, l: i64, m: i64) -> NSFermiSector {
        NSFermiSector::new(n, l, m).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(cs(2, 2, 4, 2), CosetSector::identity(2));
        assert_eq!(cs(10, 10, 12, 2), CosetSector::identity(10));
        let id = cs(3, 0, 0, 0);
        assert_eq!((id.l(), id.m(), id.s()), (0, 0, 0));
        assert!(CosetSector::new(2, 1, 0, 0).is_err());
        assert!(CosetSector::new(2, 3, 1, 0).is_err());
    }

    #[test]
    fn fusion_examples() {
        let x = cs(2, 1, 1, 0);
        let got = fuse(&x, &x).unwrap();
        assert_eq!(got.to_string(), "(0,2,0) + (2,2,0)");
        assert_eq!(cs(2, 0, 6, 2), cs(2, 2, 2, 0));
        let y = cs(1, 1, 1, 0);
        let got = fuse(&y, &y).unwrap();
        assert_eq!(got, FusionVector::from_sector(cs(1, 0, 2, 0)));
        assert_eq!(fuse(&CosetSector::identity(4), &cs(4, 3, 1, 0)).unwrap(), FusionVector::from_sector(cs(4, 3, 1, 0)));
        assert_eq!(fuse(&cs(1, 0, 0, 0), &cs(2, 0, 0, 0)).unwrap_err(), Error::MismatchedLevel(1, 2));
    }

    #[test]
    fn ns_fusion_examples() {
        for n in 1..6 {
            let lam = ns(n, i64::from(n), -i64::from(n));
            assert_eq!(fuse_ns(&lam, &lam).unwrap(), FusionVector::from_sector(ns(n, 0, -2 * i64::from(n))));
            assert_eq!(fuse_ns(&NSFermiSector::identity(n), &lam).unwrap(), FusionVector::from_sector(lam));
        }
        let got = fuse_ns(&ns(2, 1, 1), &ns(2, 1, -1)).unwrap();
        let mut want = FusionVector::from_sector(ns(2, 0, 0));
        want.add(ns(2, 2, 0), 1);
        assert_eq!(got, want);
    }

    #[test]
    fn phases() {
        for n in 1..12 {
            assert!(CosetSector::identity(n).statistics_phase().is_one());
            let x = cs(n, i64::from(n), i64::from(n) + 2, 0);
            assert_eq!(*x.statistics_phase().exponent(), Rational::half());
            assert_eq!(x.order().unwrap(), 2);
        }
        assert!(cs(6, 6, 4, 0).statistics_phase().is_one());
    }

    #[test]
    fn dimensions() {
        assert!(cs(5, 0, 3, 1).is_dim_one());
        assert!(cs(5, 5, 2, 1).is_dim_one());
        let x = cs(2, 1, 1, 0);
        assert!(!x.is_dim_one());
        assert!((x.quantum_dimension_float() - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(matches!(x.order(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn sigma_order() {
        assert_eq!(CosetSector::sigma(2).order().unwrap(), 8);
        assert_eq!(CosetSector::sigma(1).order().unwrap(), 12);
    }

    #[test]
    fn sector_counts() {
        // 4(n+1)(n+2)/2 coset sectors, (n+1)(n+2)/2 NS sectors
        for n in 1..8u32 {
            let n_ = n as usize;
            assert_eq!(all_sectors(n).len(), 2 * (n_ + 1) * (n_ + 2));
            assert_eq!(all_ns_sectors(n).len(), (n_ + 1) * (n_ + 2) / 2);
        }
    }

    #[test]
    fn parse() {
        let x: CosetSector = "1,1,0@2".parse().unwrap();
        assert_eq!(x, cs(2, 1, 1, 0));
        assert_eq!(CosetSector::parse_at("(2,4,2)", 2).unwrap(), CosetSector::identity(2));
        assert!("1,1@2".parse::<CosetSector>().is_err());
        let y: NSFermiSector = "1,-1@2".parse().unwrap();
        assert_eq!(y, ns(2, 1, -1));
    }

    #[test]
    fn ns_labels_round_trip() {
        for n in 0..8 {
            for lab in crate::unitarity::enumerate_labels(n, crate::lwmodules::SectorType::NS) {
                let x = NSFermiSector::from_label(&lab).unwrap();
                assert_eq!(x.to_label(), lab);
            }
        }
    }

    #[test]
    fn sector_power_matches_order() {
        let s = CosetSector::sigma(3);
        assert_eq!(sector_power(&s, 20).unwrap(), FusionVector::from_sector(CosetSector::identity(3)));
        assert_eq!(sector_power(&s, 0).unwrap(), FusionVector::from_sector(CosetSector::identity(3)));
    }
}
