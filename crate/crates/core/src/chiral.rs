//! Chiral sectors, the chiral ring, Ramond vacua, spectral flow of discrete
//! labels and the index pairing as a graded kernel count.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{fuse_ns, NSFermiSector};
use crate::lwmodules::{build_module, SectorType};
use crate::scalars::Rational;
use crate::unitarity::{central_charge, enumerate_labels, DiscreteLabel};

/// `h = q/2`, i.e. `G⁺_{−1/2}` kills the lowest vector.
pub fn is_chiral(_c: &Rational, h: &Rational, q: &Rational) -> bool {
    h * &Rational::from(2) == *q
}

/// `h = −q/2`
pub fn is_antichiral(_c: &Rational, h: &Rational, q: &Rational) -> bool {
    h * &Rational::from(-2) == *q
}

/// The chiral NS label `(l, −l)`.
pub fn chiral_label(n: u32, l: u32) -> Result<DiscreteLabel> {
    DiscreteLabel::ns(n, l, -i64::from(l))
}

/// Integer combination of chiral labels `(l, −l)`, keyed by l.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChiralRingElement {
    pub n: u32,
    pub coeffs: BTreeMap<u32, i64>,
}

impl ChiralRingElement {
    pub fn zero(n: u32) -> Self {
        ChiralRingElement { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(n: u32, l: u32) -> Result<Self> {
        if l > n {
            return Err(Error::InvalidLabel(format!("chiral label ({l},-{l}) at n={n}")));
        }
        Ok(ChiralRingElement { n, coeffs: BTreeMap::from([(l, 1)]) })
    }

    pub fn one(n: u32) -> Self {
        ChiralRingElement { n, coeffs: BTreeMap::from([(0, 1)]) }
    }

    pub fn add_term(&mut self, l: u32, k: i64) {
        let e = self.coeffs.entry(l).or_insert(0);
        *e += k;
        if *e == 0 {
            self.coeffs.remove(&l);
        }
    }

    pub fn coeff(&self, l: u32) -> i64 {
        self.coeffs.get(&l).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for ChiralRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, k)| {
                let m = -i64::from(*l);
                if *k == 1 {
                    format!("({l},{m})")
                } else {
                    format!("{k}·({l},{m})")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Chiral part of the fermionic fusion of two chiral labels, as a map l ↦ multiplicity.
fn truncated_fusion(n: u32, l1: u32, l2: u32) -> Result<BTreeMap<u32, u64>> {
    let a = NSFermiSector::from_label(&chiral_label(n, l1)?)?;
    let b = NSFermiSector::from_label(&chiral_label(n, l2)?)?;
    let mut out = BTreeMap::new();
    for (x, mult) in fuse_ns(&a, &b)?.iter() {
        let label = x.to_label();
        if label.m == -i64::from(label.l) {
            *out.entry(label.l).or_insert(0) += *mult;
        }
    }
    Ok(out)
}

/// Product in the chiral ring: fermionic fusion truncated to chiral labels,
/// extended bilinearly.
pub fn chiral_product(x: &ChiralRingElement, y: &ChiralRingElement, n: u32) -> Result<ChiralRingElement> {
    if x.n != n || y.n != n {
        return Err(Error::MismatchedLevel(x.n.max(y.n), n));
    }
    let mut out = ChiralRingElement::zero(n);
    for (&l1, &a) in &x.coeffs {
        for (&l2, &b) in &y.coeffs {
            for (l, mult) in truncated_fusion(n, l1, l2)? {
                out.add_term(l, a * b * mult as i64);
            }
        }
    }
    Ok(out)
}

/// Structure constants `N̂_{l1 l2}^{l}` of the chiral ring, indexed `[l1][l2][l]`.
pub fn chiral_structure_constants(n: u32) -> Result<Vec<Vec<Vec<u64>>>> {
    let size = n as usize + 1;
    let mut out = vec![vec![vec![0; size]; size]; size];
    for l1 in 0..=n {
        for l2 in 0..=n {
            for (l, k) in truncated_fusion(n, l1, l2)? {
                out[l1 as usize][l2 as usize][l as usize] = k;
            }
        }
    }
    Ok(out)
}

/// R labels with `h = c/24`.
#[derive(Clone, Debug, Serialize)]
pub struct RamondVacuumSet {
    pub n: u32,
    pub labels: Vec<DiscreteLabel>,
}

pub fn ramond_vacuum_sectors(n: u32) -> RamondVacuumSet {
    let vac = central_charge(n) * Rational::new(1, 24);
    let labels = enumerate_labels(n, SectorType::R).into_iter().filter(|x| x.hq().1 == vac).collect();
    RamondVacuumSet { n, labels }
}

/// Energy and charge of the original lowest vector after flowing by t:
/// `(h + tq + (c/6)t², q + (c/3)t)`.
pub fn flow_lowest_vector(c: &Rational, h: &Rational, q: &Rational, t: &Rational) -> (Rational, Rational) {
    let h2 = h + &(t * q) + &(c * &(t * t) * Rational::new(1, 6));
    let q2 = q + &(c * t * Rational::new(1, 3));
    (h2, q2)
}

/// Result of flowing a discrete label.
#[derive(Clone, Debug, Serialize)]
pub struct FlowResult {
    pub source: DiscreteLabel,
    pub t: Rational,
    pub target: DiscreteLabel,
    pub h: Rational,
    pub q: Rational,
    /// Flowed (energy, charge) of the original lowest vector.
    pub lowest_vector: (Rational, Rational),
}

/// Cutoff used by the flow oracle.
pub const FLOW_CUTOFF: i64 = 2;

/// The flowed irreducible, identified by building the source module, moving
/// every nonzero (level, charge) block to its flowed energy
/// `h + level + t·charge + (c/6)t²` and charge `charge + (c/3)t`, and reading
/// off the lowest weight of the result. In R the lowest weight's q is the
/// larger of the two lowest charges.
pub fn flow_discrete_label(n: u32, label: &DiscreteLabel, t: &Rational) -> Result<FlowResult> {
    if label.n != n {
        return Err(Error::MismatchedLevel(label.n, n));
    }
    if !t.is_half_odd() {
        return Err(Error::InvalidLabel(format!("flow parameter {t} must be a half-odd integer")));
    }
    let (c, h, q) = label.hq();
    let module = build_module(label.highest_weight(), Rational::from(FLOW_CUTOFF))?;
    let shift = &c * &(t * t) * Rational::new(1, 6);
    let charge_shift = &c * t * Rational::new(1, 3);
    let mut lowest: Option<(Rational, Vec<Rational>)> = None;
    for block in module.blocks().filter(|b| b.rank > 0) {
        let e = &(&h + &block.key.level) + &(&(t * &block.key.charge) + &shift);
        let qq = &block.key.charge + &charge_shift;
        match &mut lowest {
            Some((best, charges)) if *best == e => charges.push(qq),
            Some((best, _)) if *best < e => {}
            _ => lowest = Some((e, vec![qq])),
        }
    }
    let (h2, charges) = lowest.ok_or_else(|| Error::Internal("empty module".into()))?;
    let q2 = charges.into_iter().max().expect("nonempty");
    let target_type = label.sector.other();
    let target = enumerate_labels(n, target_type)
        .into_iter()
        .find(|x| {
            let (_, th, tq) = x.hq();
            th == h2 && tq == q2
        })
        .ok_or_else(|| Error::Internal(format!("no {target_type} label with h={h2}, q={q2} at n={n}")))?;
    Ok(FlowResult { source: *label, t: t.clone(), target, h: h2, q: q2, lowest_vector: flow_lowest_vector(&c, &h, &q, t) })
}

/// Pairing of the cocycle of `pi1` with the projection of `pi2`: zero for
/// inequivalent labels, otherwise the graded dimension of ker(L₀ − c/24)
/// (even minus odd) in the module truncated at `cutoff`.
pub fn index_pairing(pi1: &DiscreteLabel, pi2: &DiscreteLabel, n: u32, cutoff: &Rational) -> Result<i64> {
    for x in [pi1, pi2] {
        if x.sector != SectorType::R || x.n != n {
            return Err(Error::InvalidLabel(format!("{} label {x} at n={} is not an R label at n={n}", x.sector, x.n)));
        }
    }
    if *cutoff < Rational::one() {
        return Err(Error::InvalidWeight(format!("cutoff {cutoff} must be at least 1")));
    }
    if pi1 != pi2 {
        return Ok(0);
    }
    let (c, _, _) = pi1.hq();
    let module = build_module(pi1.highest_weight(), cutoff.clone())?;
    let (even, odd) = module.graded_eigenspace_dims(&(c * Rational::new(1, 24)))?;
    Ok(even as i64 - odd as i64)
}

/// Pairing matrix over the Ramond vacua of level n.
#[derive(Clone, Debug, Serialize)]
pub struct PairingMatrix {
    pub n: u32,
    pub labels: Vec<DiscreteLabel>,
    pub matrix: Vec<Vec<i64>>,
}

pub fn pairing_matrix(n: u32, cutoff: &Rational) -> Result<PairingMatrix> {
    let labels = ramond_vacuum_sectors(n).labels;
    let matrix = labels
        .iter()
        .map(|a| labels.iter().map(|b| index_pairing(a, b, n, cutoff)).collect::<Result<Vec<i64>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingMatrix { n, labels, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn chirality_examples() {
        let c = central_charge(2);
        assert!(is_chiral(&c, &Rational::zero(), &Rational::zero()));
        assert!(is_antichiral(&c, &Rational::zero(), &Rational::zero()));
        let (_, h, q) = DiscreteLabel::ns(2, 1, -1).unwrap().hq();
        assert_eq!((h.clone(), q.clone()), (r(1, 8), r(1, 4)));
        assert!(is_chiral(&c, &h, &q));
        let (_, h, q) = DiscreteLabel::ns(2, 1, 1).unwrap().hq();
        assert!(is_antichiral(&c, &h, &q) && !is_chiral(&c, &h, &q));
    }

    #[test]
    fn chiral_products() {
        let x = ChiralRingElement::basis(2, 1).unwrap();
        assert_eq!(chiral_product(&x, &x, 2).unwrap(), ChiralRingElement::basis(2, 2).unwrap());
        let y = ChiralRingElement::basis(1, 1).unwrap();
        assert!(chiral_product(&y, &y, 1).unwrap().is_zero());
        for n in 0..=4 {
            for l in 0..=n {
                let b = ChiralRingElement::basis(n, l).unwrap();
                assert_eq!(chiral_product(&ChiralRingElement::one(n), &b, n).unwrap(), b);
            }
        }
    }

    #[test]
    fn ramond_vacua() {
        let v1: Vec<(u32, i64)> = ramond_vacuum_sectors(1).labels.iter().map(|x| (x.l, x.m)).collect();
        assert_eq!(v1, vec![(0, 1), (1, 2)]);
        assert_eq!(ramond_vacuum_sectors(0).labels.len(), 1);
        for n in 0..=12 {
            assert_eq!(ramond_vacuum_sectors(n).labels.len() as u32, n + 1);
        }
    }

    #[test]
    fn lowest_vector_flow() {
        let c = r(7, 5);
        assert_eq!(flow_lowest_vector(&c, &Rational::zero(), &Rational::zero(), &Rational::one()), (r(7, 30), r(7, 15)));
        let q = r(2, 3);
        let (h2, q2) = flow_lowest_vector(&c, &r(1, 3), &q, &r(-1, 2));
        assert_eq!(h2, &c * &r(1, 24));
        assert_eq!(q2, &q - &(&c * &r(1, 6)));
    }

    #[test]
    fn vacuum_flows_to_ramond_vacuum() {
        let vac = DiscreteLabel::ns(1, 0, 0).unwrap();
        let res = flow_discrete_label(1, &vac, &r(-1, 2)).unwrap();
        assert_eq!((res.target.l, res.target.m), (1, 2));
        assert_eq!(res.q, r(-1, 6));
    }

    #[test]
    fn pairing_n1() {
        let p = pairing_matrix(1, &Rational::from(2)).unwrap();
        assert_eq!(p.matrix, vec![vec![1, 0], vec![0, 1]]);
    }
}
