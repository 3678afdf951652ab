//! Unitary lowest weights: the continuum conditions at c ≥ 3 and the
//! discrete series at c = 3n/(n+2).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lwmodules::{HighestWeight, SectorType};
use crate::scalars::Rational;

/// A discrete-series label. NS: `l+m` even and `|m| ≤ l`; R: `l+m+1` even
/// and `|m−1| ≤ l`; both with `0 ≤ l ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DiscreteLabel {
    #[serde(rename = "type")]
    pub sector: SectorType,
    pub n: u32,
    pub l: u32,
    pub m: i64,
}

impl DiscreteLabel {
    pub fn new(sector: SectorType, n: u32, l: u32, m: i64) -> Result<Self> {
        let label = DiscreteLabel { sector, n, l, m };
        let (l_, m_) = (i64::from(l), m);
        let ok = l <= n
            && match sector {
                SectorType::NS => (l_ + m_).rem_euclid(2) == 0 && m_.abs() <= l_,
                SectorType::R => (l_ + m_ + 1).rem_euclid(2) == 0 && (m_ - 1).abs() <= l_,
            };
        if ok {
            Ok(label)
        } else {
            Err(Error::InvalidLabel(format!("{sector} label {label} at n={n}")))
        }
    }

    pub fn ns(n: u32, l: u32, m: i64) -> Result<Self> {
        DiscreteLabel::new(SectorType::NS, n, l, m)
    }

    pub fn r(n: u32, l: u32, m: i64) -> Result<Self> {
        DiscreteLabel::new(SectorType::R, n, l, m)
    }

    /// `(c, h, q)` of the label.
    pub fn hq(&self) -> (Rational, Rational, Rational) {
        let n = i64::from(self.n);
        let l = i64::from(self.l);
        let c = Rational::new(3 * n, n + 2);
        let mut h = Rational::new(l * (l + 2) - self.m * self.m, 4 * (n + 2));
        let mut q = Rational::new(-self.m, n + 2);
        if self.sector == SectorType::R {
            h += &Rational::new(1, 8);
            q += &Rational::half();
        }
        (c, h, q)
    }

    pub fn highest_weight(&self) -> HighestWeight {
        let (c, h, q) = self.hq();
        HighestWeight::new(self.sector, c, h, q).expect("discrete-series weights are admissible")
    }
}

impl fmt::Display for DiscreteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

/// `(c, h, q)` of an NS label; errors if the label is invalid.
pub fn hq_ns(n: u32, l: u32, m: i64) -> Result<(Rational, Rational, Rational)> {
    Ok(DiscreteLabel::ns(n, l, m)?.hq())
}

/// `(c, h, q)` of an R label; errors if the label is invalid.
pub fn hq_r(n: u32, l: u32, m: i64) -> Result<(Rational, Rational, Rational)> {
    Ok(DiscreteLabel::r(n, l, m)?.hq())
}

/// `c_n = 3n/(n+2)`
pub fn central_charge(n: u32) -> Rational {
    Rational::new(3 * i64::from(n), i64::from(n) + 2)
}

/// The n with 3n/(n+2) = c, if any.
pub fn n_from_c(c: &Rational) -> Option<u32> {
    let three = Rational::from(3);
    if *c >= three || c.is_negative() {
        return None;
    }
    // n = 2c/(3 − c)
    let n = (c * &Rational::from(2)).checked_div(&(&three - c)).ok()?;
    if n.is_integer() {
        n.to_i64().and_then(|x| u32::try_from(x).ok())
    } else {
        None
    }
}

/// All discrete-series labels of the given type at level n, ordered by (l, m).
pub fn enumerate_labels(n: u32, sector: SectorType) -> Vec<DiscreteLabel> {
    let mut out = Vec::new();
    for l in 0..=n {
        let l_ = i64::from(l);
        let (lo, hi) = match sector {
            SectorType::NS => (-l_, l_),
            SectorType::R => (1 - l_, 1 + l_),
        };
        let mut m = lo;
        while m <= hi {
            out.push(DiscreteLabel { sector, n, l, m });
            m += 2;
        }
    }
    out
}

/// Which of the six unitarity conditions a weight satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    NS1,
    NS2,
    NS3,
    R1,
    R2,
    R3,
    #[serde(rename = "none")]
    None,
}

impl Region {
    /// NS2 and R2 are necessary conditions only; whether every weight
    /// satisfying them is unitary is not asserted.
    pub fn is_known_sufficient(self) -> bool {
        !matches!(self, Region::NS2 | Region::R2 | Region::None)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::NS1 => "NS1",
            Region::NS2 => "NS2",
            Region::NS3 => "NS3",
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
            Region::None => "none",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub region: Region,
    /// Matching discrete labels (only for NS3/R3).
    pub labels: Vec<DiscreteLabel>,
}

/// The quadratic `a·x² − 2p·x + k` evaluated on the lattice `offset + ℤ`.
/// NS conditions use `offset = 1/2`, R conditions `offset = 0`.
struct LatticeQuadratic {
    a: Rational,
    p: Rational,
    k: Rational,
    offset: Rational,
}

impl LatticeQuadratic {
    fn for_weight(sector: SectorType, c: &Rational, h: &Rational, q: &Rational) -> Self {
        let a = &(c * &Rational::new(1, 3)) - &Rational::one();
        let quarter = Rational::new(1, 4);
        let mut k = &(h * &Rational::from(2)) - &(&a * &quarter);
        let (p, offset) = match sector {
            SectorType::NS => (q.clone(), Rational::half()),
            SectorType::R => {
                k -= &quarter;
                (q - &Rational::half(), Rational::zero())
            }
        };
        LatticeQuadratic { a, p, k, offset }
    }

    fn eval(&self, x: &Rational) -> Rational {
        &(&(&self.a * x) * x) - &(&(&self.p * &Rational::from(2)) * x) + self.k.clone()
    }

    fn on_lattice(&self, x: &Rational) -> bool {
        (x - &self.offset).is_integer()
    }

    /// The lattice points nearest to `x` from below and above.
    fn neighbours(&self, x: &Rational) -> [Rational; 2] {
        let shifted = x - &self.offset;
        let lo = &Rational::from(shifted.floor()) + &self.offset;
        let hi = &Rational::from(shifted.ceil()) + &self.offset;
        [lo, hi]
    }

    /// `min over the lattice ≥ 0`. With `a > 0` the minimum sits at one of
    /// the two lattice points around the vertex `p/a`; with `a = 0` the
    /// function is linear and bounded below only when `p = 0`.
    fn nonnegative_on_lattice(&self) -> bool {
        if self.a.is_positive() {
            let vertex = self.p.checked_div(&self.a).expect("a > 0");
            self.neighbours(&vertex).iter().all(|x| !self.eval(x).is_negative())
        } else if self.a.is_zero() {
            self.p.is_zero() && !self.k.is_negative()
        } else {
            false
        }
    }

    /// Lattice zeros of the quadratic (finitely many unless identically zero).
    fn lattice_zeros(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.a.is_zero() {
            if !self.p.is_zero() {
                // −2p x + k = 0
                roots.push(self.k.checked_div(&(&self.p * &Rational::from(2))).expect("p ≠ 0"));
            }
        } else {
            let disc = &(&self.p * &self.p) - &(&self.a * &self.k);
            if let Some(s) = disc.sqrt_exact() {
                for r in [&self.p + &s, &self.p - &s] {
                    roots.push(r.checked_div(&self.a).expect("a ≠ 0"));
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots.into_iter().filter(|x| self.on_lattice(x)).collect()
    }
}

fn sign(x: &Rational) -> Rational {
    Rational::from(i64::from(x.signum()))
}

fn continuum_region(sector: SectorType, c: &Rational, h: &Rational, q: &Rational) -> Option<Region> {
    if *c < Rational::from(3) {
        return None;
    }
    let f = LatticeQuadratic::for_weight(sector, c, h, q);
    if f.nonnegative_on_lattice() {
        return Some(match sector {
            SectorType::NS => Region::NS1,
            SectorType::R => Region::R1,
        });
    }
    let a = &f.a;
    let supplementary = match sector {
        SectorType::NS => &(&(&(a * &Rational::from(2)) * h) - &(q * q)) + &(c * &Rational::new(1, 3)),
        SectorType::R => {
            let hh = h - &(c * &Rational::new(1, 24));
            let qq = q - &Rational::half();
            &(&(&(a * &Rational::from(2)) * &hh) - &(&qq * &qq)) + &(c * &Rational::new(1, 3))
        }
    };
    if supplementary.is_negative() {
        return None;
    }
    let step = |n: &Rational| match sector {
        SectorType::NS => sign(n),
        SectorType::R => sign(&(n - &Rational::half())),
    };
    let hit = f.lattice_zeros().iter().any(|n| f.eval(&(n + &step(n))).is_negative());
    hit.then_some(match sector {
        SectorType::NS => Region::NS2,
        SectorType::R => Region::R2,
    })
}

/// Classify a weight `(c, h, q)` of the given sector type.
pub fn region_check(sector: SectorType, c: &Rational, h: &Rational, q: &Rational) -> RegionReport {
    if let Some(region) = continuum_region(sector, c, h, q) {
        return RegionReport { region, labels: Vec::new() };
    }
    let labels: Vec<DiscreteLabel> = match n_from_c(c) {
        Some(n) => enumerate_labels(n, sector)
            .into_iter()
            .filter(|lab| {
                let (_, hl, ql) = lab.hq();
                hl == *h && ql == *q
            })
            .collect(),
        None => Vec::new(),
    };
    let region = match (labels.is_empty(), sector) {
        (true, _) => Region::None,
        (false, SectorType::NS) => Region::NS3,
        (false, SectorType::R) => Region::R3,
    };
    RegionReport { region, labels }
}

/// The largest lowest energy among NS labels at level n.
pub fn max_ns_energy(n: u32) -> Rational {
    enumerate_labels(n, SectorType::NS).iter().map(|l| l.hq().1).max().expect("vacuum label always exists")
}
