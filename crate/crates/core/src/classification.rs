//! Simple-current and exceptional extensions of the coset theory at level n.
//!
//! The dimension-one sectors form an abelian group of order 4n+8. An
//! extension by simple currents needs a subgroup all of whose elements have
//! statistics phase 1. [`phase_one_maximal_subgroups`] finds these by brute
//! force over the group table built from [`fuse`](crate::fusion::fuse);
//! [`closed_form_maximal_subgroups`] gives the four-case closed form, built
//! from label arithmetic alone. The two are compared in the tests.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::fusion::{phase_exponent_raw, CosetSector, FusionVector};
use crate::scalars::phase_from_exponent;

/// A subgroup of the dimension-one sectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SimpleCurrentGroup {
    pub n: u32,
    /// Canonical sectors, sorted.
    pub elements: Vec<CosetSector>,
    /// An element generating the group, when it is cyclic (the smallest one).
    pub generator: Option<CosetSector>,
}

impl SimpleCurrentGroup {
    fn from_elements(table: &Dim1Table, mut elements: Vec<CosetSector>) -> Self {
        elements.sort();
        elements.dedup();
        let order = elements.len() as u64;
        let generator = elements.iter().copied().find(|x| table.order(x) == order);
        SimpleCurrentGroup { n: table.n, elements, generator }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator.is_some()
    }

    pub fn contains(&self, x: &CosetSector) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn sector_set(&self) -> BTreeSet<CosetSector> {
        self.elements.iter().copied().collect()
    }

    pub fn all_phase_one(&self) -> bool {
        self.elements.iter().all(|x| x.statistics_phase().is_one())
    }
}

impl fmt::Display for SimpleCurrentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Multiplication table of the dimension-one sectors, computed by fusion.
pub struct Dim1Table {
    pub n: u32,
    pub elements: Vec<CosetSector>,
    index: HashMap<CosetSector, usize>,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl Dim1Table {
    pub fn new(n: u32) -> Result<Self> {
        let elements: Vec<CosetSector> = crate::fusion::all_sectors(n).into_iter().filter(CosetSector::is_dim_one).collect();
        let index: HashMap<CosetSector, usize> = elements.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut mul = Vec::with_capacity(elements.len());
        for a in &elements {
            let row = elements.iter().map(|b| a.fuse_simple(b).map(|c| index[&c])).collect::<Result<Vec<usize>>>()?;
            mul.push(row);
        }
        let identity = index[&CosetSector::identity(n)];
        Ok(Dim1Table { n, elements, index, mul, identity })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn product(&self, a: &CosetSector, b: &CosetSector) -> CosetSector {
        self.elements[self.mul[self.index[a]][self.index[b]]]
    }

    pub fn order(&self, x: &CosetSector) -> u64 {
        let i = self.index[x];
        let (mut cur, mut k) = (i, 1);
        while cur != self.identity {
            cur = self.mul[cur][i];
            k += 1;
        }
        k
    }

    /// The subgroup generated by the given elements (as indices).
    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn generated_by(&self, gens: &[CosetSector]) -> SimpleCurrentGroup {
        let idx: Vec<usize> = gens.iter().map(|g| self.index[g]).collect();
        let elems = self.closure(&idx).into_iter().map(|i| self.elements[i]).collect();
        SimpleCurrentGroup::from_elements(self, elems)
    }

    /// Invariant factors `[d₁, d₂]` with `d₁ | d₂` (or `[d]` when cyclic),
    /// read off from the group order and exponent.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let order = self.len() as u64;
        let exponent = self.elements.iter().map(|x| self.order(x)).max().unwrap_or(1);
        if exponent == order {
            vec![order]
        } else {
            vec![order / exponent, exponent]
        }
    }

    /// Every subgroup all of whose elements have statistics phase 1.
    ///
    /// The group has rank at most two, so every subgroup is generated by two
    /// of its own elements; it is enough to close all pairs of phase-one
    /// elements and keep the closures that stay inside the phase-one set.
    pub fn phase_one_subgroups(&self) -> Vec<SimpleCurrentGroup> {
        let phase_one: Vec<bool> = self.elements.iter().map(|x| x.statistics_phase().is_one()).collect();
        let p: Vec<usize> = (0..self.len()).filter(|&i| phase_one[i]).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for (a_pos, &a) in p.iter().enumerate() {
            for &b in &p[a_pos..] {
                let h = self.closure(&[a, b]);
                if h.iter().all(|&i| phase_one[i]) {
                    found.insert(h);
                }
            }
        }
        let mut out: Vec<SimpleCurrentGroup> =
            found.into_iter().map(|h| SimpleCurrentGroup::from_elements(self, h.into_iter().map(|i| self.elements[i]).collect())).collect();
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }
}

/// The full group of dimension-one sectors, with its standard generators:
/// `σ = (0,1,1)`, plus `τ = (n,0,0)` for n ≡ 2 mod 4 or `τ = (0,n+2,0)` for
/// n ≡ 0 mod 4.
#[derive(Clone, Debug, Serialize)]
pub struct Dim1Group {
    pub n: u32,
    pub elements: Vec<CosetSector>,
    pub sigma: CosetSector,
    pub tau: Option<CosetSector>,
    pub invariant_factors: Vec<u64>,
}

pub fn dim1_group(n: u32) -> Result<Dim1Group> {
    let table = Dim1Table::new(n)?;
    let tau = match n % 4 {
        2 => Some(CosetSector::new(n, i64::from(n), 0, 0)?),
        0 => Some(CosetSector::new(n, 0, i64::from(n) + 2, 0)?),
        _ => None,
    };
    Ok(Dim1Group { n, elements: table.elements.clone(), sigma: CosetSector::sigma(n), tau, invariant_factors: table.invariant_factors() })
}

fn maximal_only(groups: Vec<SimpleCurrentGroup>) -> Vec<SimpleCurrentGroup> {
    let sets: Vec<BTreeSet<CosetSector>> = groups.iter().map(SimpleCurrentGroup::sector_set).collect();
    groups
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !sets.iter().enumerate().any(|(j, s)| j != *i && s.len() > sets[*i].len() && sets[*i].is_subset(s)))
        .map(|(_, g)| g)
        .collect()
}

/// Brute force: the maximal subgroups of phase-one dimension-one sectors.
pub fn phase_one_maximal_subgroups(n: u32) -> Result<Vec<SimpleCurrentGroup>> {
    let table = Dim1Table::new(n)?;
    Ok(maximal_only(table.phase_one_subgroups()))
}

/// Which branch of the closed form applies to n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// n odd
    A,
    /// n ≡ 2 mod 4, maximal group generated by (0, k, 0)
    #[serde(rename = "B(0,k,0)")]
    BPlain,
    /// n ≡ 2 mod 4, maximal group generated by (n, k/2, 0)
    #[serde(rename = "B(n,k/2,0)")]
    BTwisted,
    /// n ≡ 4, 8, 12 mod 16
    C,
    /// n ≡ 0 mod 16
    D,
}

/// Closed-form prediction of the maximal phase-one subgroups, with the
/// case and its minimal exponent k.
#[derive(Clone, Debug, Serialize)]
pub struct CasePrediction {
    pub n: u32,
    pub case: CaseLabel,
    pub k: u64,
    pub groups: Vec<SimpleCurrentGroup>,
}

/// A dimension-one label `(l, m, s)` with `l ∈ {0, n}`, multiplied by adding
/// m and s and combining l in ℤ/2. Independent of the fusion code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Simple {
    top: bool,
    m: i64,
    s: i64,
}

impl Simple {
    fn mul(self, o: Simple) -> Simple {
        Simple { top: self.top ^ o.top, m: self.m + o.m, s: self.s + o.s }
    }

    fn pow(self, k: u64) -> Simple {
        let k = k as i64;
        Simple { top: self.top && k % 2 == 1, m: self.m * k, s: self.s * k }
    }

    fn exponent(self, n: u32) -> crate::scalars::Rational {
        phase_exponent_raw(n, if self.top { i64::from(n) } else { 0 }, self.m, self.s)
    }

    fn sector(self, n: u32) -> CosetSector {
        let l = if self.top { i64::from(n) } else { 0 };
        CosetSector::new(n, l, self.m, self.s).expect("dimension-one label")
    }

    fn cyclic_group(self, n: u32, table: &Dim1Table) -> SimpleCurrentGroup {
        let mut elems = vec![CosetSector::identity(n)];
        let mut x = self;
        loop {
            let sx = x.sector(n);
            if sx == CosetSector::identity(n) {
                break;
            }
            elems.push(sx);
            x = x.mul(self);
        }
        SimpleCurrentGroup::from_elements(table, elems)
    }
}

fn smallest(mut pred: impl FnMut(u64) -> bool, step: u64) -> u64 {
    let mut k = step;
    while !pred(k) {
        k += step;
    }
    k
}

/// The four-case closed form for the maximal phase-one subgroups.
pub fn closed_form_maximal_subgroups(n: u32) -> Result<CasePrediction> {
    let table = Dim1Table::new(n)?;
    let is_one = |x: Simple| phase_from_exponent(&x.exponent(n)).is_one();
    let sigma = Simple { top: false, m: 1, s: 1 };
    let n_ = i64::from(n);
    let prediction = if n % 2 == 1 {
        let k = smallest(|k| is_one(sigma.pow(k)), 1);
        CasePrediction { n, case: CaseLabel::A, k, groups: vec![sigma.pow(k).cyclic_group(n, &table)] }
    } else if n % 4 == 2 {
        let plain = |m: i64| Simple { top: false, m, s: 0 };
        let k = smallest(|k| is_one(plain(k as i64)), 2);
        let half = (k / 2) as i64;
        // the formal phase of (0, k/2, 0) decides between the two sub-cases
        let formal = phase_from_exponent(&plain(half).exponent(n));
        if *formal.exponent() == crate::scalars::Rational::half() {
            let g = Simple { top: true, m: half, s: 0 };
            CasePrediction { n, case: CaseLabel::BTwisted, k, groups: vec![g.cyclic_group(n, &table)] }
        } else {
            CasePrediction { n, case: CaseLabel::BPlain, k, groups: vec![plain(k as i64).cyclic_group(n, &table)] }
        }
    } else if !n.is_multiple_of(16) {
        let modulus = 4 * u64::from(n) + 8;
        let k = smallest(|k| (k * k) % modulus == 0, 1);
        let g = Simple { top: false, m: k as i64, s: 0 };
        let t = Simple { top: true, m: 0, s: 0 };
        let mut elems = g.cyclic_group(n, &table).elements;
        let shifted: Vec<CosetSector> = elems.iter().map(|x| table.product(x, &t.sector(n))).collect();
        elems.extend(shifted);
        CasePrediction { n, case: CaseLabel::C, k, groups: vec![SimpleCurrentGroup::from_elements(&table, elems)] }
    } else {
        let k = smallest(|k| is_one(sigma.pow(k)), 1);
        let tau = Simple { top: false, m: n_ + 2, s: 0 };
        let a = sigma.pow(k).cyclic_group(n, &table);
        let b = sigma.pow(k).mul(tau).cyclic_group(n, &table);
        CasePrediction { n, case: CaseLabel::D, k, groups: vec![a, b] }
    };
    Ok(prediction)
}

/// Kind of extension in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    SimpleCurrent,
    ConformalEmbedding,
    Mirror,
    Combined,
}

/// One extension: its dual canonical endomorphism as a sum of sectors.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRecord {
    pub n: u32,
    pub kind: ExtensionKind,
    pub generators: Vec<CosetSector>,
    pub sectors: FusionVector<CosetSector>,
    pub provenance: String,
}

impl ExtensionRecord {
    pub fn sector_set(&self) -> BTreeSet<CosetSector> {
        self.sectors.sectors().copied().collect()
    }
}

fn record(n: u32, kind: ExtensionKind, labels: &[(i64, i64, i64)], provenance: &str) -> ExtensionRecord {
    let mut sectors = FusionVector::zero();
    for &(l, m, s) in labels {
        sectors.add(CosetSector::new(n, l, m, s).expect("catalog labels are valid"), 1);
    }
    let generators = sectors.sectors().copied().filter(|x| *x != CosetSector::identity(n)).collect();
    ExtensionRecord { n, kind, generators, sectors, provenance: provenance.to_string() }
}

/// The exceptional extensions at n = 10 and n = 28. These are catalog data.
pub fn exceptional_catalog() -> Vec<ExtensionRecord> {
    use ExtensionKind::*;
    vec![
        record(10, ConformalEmbedding, &[(0, 0, 0), (6, 0, 0)], "E6: conformal embedding SU(2)_10 ⊂ SO(5)_1"),
        record(10, Mirror, &[(0, 0, 0), (0, 12, 0)], "E6: conformal embedding U(1)_12 ⊂ U(1)_3, crossed product by Z/2"),
        record(10, Combined, &[(0, 0, 0), (6, 0, 0), (0, 12, 0), (6, 12, 0)], "E6: SO(5)_1 extension followed by a Z/2 crossed product"),
        record(28, ConformalEmbedding, &[(0, 0, 0), (10, 0, 0), (18, 0, 0), (28, 0, 0)], "E8: conformal embedding SU(2)_28 ⊂ (G2)_1"),
    ]
}

/// Every extension at level n: one simple-current record per phase-one
/// subgroup (the trivial group included), then the exceptional records.
/// A simple-current record whose sector set equals an exceptional one is
/// dropped in favour of the catalog entry, which notes the coincidence.
pub fn classify(n: u32) -> Result<Vec<ExtensionRecord>> {
    let table = Dim1Table::new(n)?;
    let mut exceptional: Vec<ExtensionRecord> = exceptional_catalog().into_iter().filter(|r| r.n == n).collect();
    let maximal = maximal_only(table.phase_one_subgroups());
    let mut out = Vec::new();
    for g in table.phase_one_subgroups() {
        let set = g.sector_set();
        if let Some(e) = exceptional.iter_mut().find(|e| e.sector_set() == set) {
            e.provenance.push_str("; also a simple current extension");
            continue;
        }
        let within: Vec<String> =
            maximal.iter().filter(|m| set.is_subset(&m.sector_set())).map(|m| m.generator.map_or("-".into(), |x| x.to_string())).collect();
        let mut sectors = FusionVector::zero();
        for x in &g.elements {
            sectors.add(*x, 1);
        }
        out.push(ExtensionRecord {
            n,
            kind: ExtensionKind::SimpleCurrent,
            generators: g.generator.into_iter().filter(|x| *x != CosetSector::identity(n)).collect(),
            sectors,
            provenance: format!("cyclic group of order {} inside the maximal group generated by {}", g.order(), within.join(" / ")),
        });
    }
    out.extend(exceptional);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: u32, l: i64, m: i64, s: i64) -> CosetSector {
        CosetSector::new(n, l, m, s).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(dim1_group(1).unwrap().invariant_factors, vec![12]);
        assert_eq!(dim1_group(2).unwrap().invariant_factors, vec![2, 8]);
        for n in 1..=12 {
            assert_eq!(dim1_group(n).unwrap().elements.len() as u32, 4 * n + 8);
        }
    }

    #[test]
    fn n6_maximal() {
        let max = phase_one_maximal_subgroups(6).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].order(), 4);
        assert_eq!(max[0].generator, Some(cs(6, 6, 4, 0)));
        assert_eq!(classify(6).unwrap().len(), 3);
    }

    #[test]
    fn n32_two_maximal() {
        let max = phase_one_maximal_subgroups(32).unwrap();
        assert_eq!(max.len(), 2);
        assert!(max.iter().all(|g| g.order() == 4));
        let pred = closed_form_maximal_subgroups(32).unwrap();
        assert_eq!((pred.case, pred.k), (CaseLabel::D, 17));
    }

    #[test]
    fn n10_records() {
        let recs = classify(10).unwrap();
        let exceptional = recs.iter().filter(|r| r.kind != ExtensionKind::SimpleCurrent).count();
        assert_eq!(exceptional, 3);
        assert!(recs.iter().any(|r| r.kind == ExtensionKind::SimpleCurrent));
    }

    #[test]
    fn catalog_counts() {
        let cat = exceptional_catalog();
        assert_eq!(cat.iter().filter(|r| r.n == 10).count(), 3);
        assert_eq!(cat.iter().filter(|r| r.n == 28).count(), 1);
        for r in &cat {
            assert!(r.sectors.sectors().all(|x| x.statistics_phase().is_one()));
        }
    }

    #[test]
    fn closed_form_small_n() {
        for n in 1..=20 {
            let brute: BTreeSet<_> = phase_one_maximal_subgroups(n).unwrap().iter().map(|g| g.sector_set()).collect();
            let pred: BTreeSet<_> = closed_form_maximal_subgroups(n).unwrap().groups.iter().map(|g| g.sector_set()).collect();
            assert_eq!(brute, pred, "n={n}");
        }
    }
}
