//! Truncated lowest-weight modules of the NS (t = 0) and Ramond (t = 1/2)
//! algebras: PBW bases, exact Gram blocks, mode matrices, grading and
//! characters.
//!
//! A module is the Verma-type module spanned by PBW monomials in the
//! creation modes, cut off at a maximal level. Gram blocks are indexed by
//! (level, charge); their ranks give the level spaces of the irreducible
//! quotient and their signatures decide unitarity.

mod linalg;
mod pbw;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use linalg::QMatrix;
pub use pbw::{StateMonomial, Tag, Vector};

use crate::error::{Error, Result};
use crate::scalars::Rational;
use crate::superalgebra::{adjoint_generator, FlowParam, GeneratorId};
use pbw::{LowestData, Straightener};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SectorType {
    NS,
    R,
}

impl SectorType {
    /// The algebra parameter t of the modes acting on this sector type.
    pub fn flow_param(self) -> FlowParam {
        match self {
            SectorType::NS => FlowParam::ns(),
            SectorType::R => FlowParam::ramond(),
        }
    }

    pub fn other(self) -> SectorType {
        match self {
            SectorType::NS => SectorType::R,
            SectorType::R => SectorType::NS,
        }
    }
}

impl fmt::Display for SectorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectorType::NS => write!(f, "NS"),
            SectorType::R => write!(f, "R"),
        }
    }
}

impl std::str::FromStr for SectorType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "NS" | "ns" => Ok(SectorType::NS),
            "R" | "r" => Ok(SectorType::R),
            _ => Err(Error::Parse { what: "sector type", input: s.to_string() }),
        }
    }
}

/// Lowest-weight data `(c, h, q)` of an NS or R module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    pub c: Rational,
    pub h: Rational,
    pub q: Rational,
    #[serde(rename = "type")]
    pub sector: SectorType,
}

impl HighestWeight {
    /// Rejects NS weights with h < 0 and R weights with h < c/24.
    pub fn new(sector: SectorType, c: Rational, h: Rational, q: Rational) -> Result<Self> {
        let hw = HighestWeight { c, h, q, sector };
        match sector {
            SectorType::NS if hw.h.is_negative() => Err(Error::InvalidWeight(format!("NS weight needs h >= 0, got h = {}", hw.h))),
            SectorType::R if hw.h < hw.ramond_ground() => {
                Err(Error::InvalidWeight(format!("R weight needs h >= c/24 = {}, got h = {}", hw.ramond_ground(), hw.h)))
            }
            _ => Ok(hw),
        }
    }

    pub fn ns(c: Rational, h: Rational, q: Rational) -> Result<Self> {
        HighestWeight::new(SectorType::NS, c, h, q)
    }

    pub fn r(c: Rational, h: Rational, q: Rational) -> Result<Self> {
        HighestWeight::new(SectorType::R, c, h, q)
    }

    fn ramond_ground(&self) -> Rational {
        &self.c * &Rational::new(1, 24)
    }

    /// An R weight with h = c/24.
    pub fn is_ramond_vacuum(&self) -> bool {
        self.sector == SectorType::R && self.h == self.ramond_ground()
    }

    pub fn lowest_tags(&self) -> Vec<Tag> {
        if self.sector == SectorType::R && !self.is_ramond_vacuum() {
            vec![Tag::OmegaMinus, Tag::OmegaPlus]
        } else {
            vec![Tag::Omega]
        }
    }
}

/// A graded piece of the module: all basis states of one level and charge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BlockKey {
    pub level: Rational,
    pub charge: Rational,
}

#[derive(Clone, Debug)]
pub struct GramBlock {
    pub key: BlockKey,
    /// Indices into [`ModuleHandle::basis`].
    pub states: Vec<usize>,
    pub gram: QMatrix,
    pub rank: usize,
    pub psd: bool,
}

/// The zero modes whose matrices make up the supercharge identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMode {
    GPlus,
    GMinus,
    L0,
    J0,
}

impl ZeroMode {
    pub fn generator(self) -> GeneratorId {
        match self {
            ZeroMode::GPlus => GeneratorId::gplus(Rational::zero()),
            ZeroMode::GMinus => GeneratorId::gminus(Rational::zero()),
            ZeroMode::L0 => GeneratorId::l(0),
            ZeroMode::J0 => GeneratorId::j(0),
        }
    }
}

/// A truncated lowest-weight module. Immutable after [`build_module`].
pub struct ModuleHandle {
    hw: HighestWeight,
    cutoff: Rational,
    basis: Vec<StateMonomial>,
    index: BTreeMap<StateMonomial, usize>,
    blocks: BTreeMap<BlockKey, GramBlock>,
    engine: Straightener,
}

/// Creation modes with level at most `cutoff`, in PBW order.
fn creation_modes(sector: SectorType, cutoff: &Rational) -> Vec<GeneratorId> {
    let mut out = Vec::new();
    let mut k = 1;
    while Rational::from(k) <= *cutoff {
        out.push(GeneratorId::l(-k));
        out.push(GeneratorId::j(-k));
        k += 1;
    }
    let first = match sector {
        SectorType::NS => Rational::half(),
        SectorType::R => Rational::one(),
    };
    let mut r = first;
    while r <= *cutoff {
        out.push(GeneratorId::gplus(-&r));
        out.push(GeneratorId::gminus(-&r));
        r += &Rational::one();
    }
    out.sort();
    out
}

fn enumerate_monomials(modes: &[GeneratorId], budget: &Rational, prefix: &mut Vec<GeneratorId>, out: &mut Vec<Vec<GeneratorId>>) {
    let Some((g, rest)) = modes.split_first() else {
        out.push(prefix.clone());
        return;
    };
    let cost = -&g.index;
    let max_copies = if g.is_odd() { 1 } else { usize::MAX };
    let mut used = Rational::zero();
    let mut copies = 0;
    loop {
        enumerate_monomials(rest, &(budget - &used), prefix, out);
        copies += 1;
        used += &cost;
        if copies > max_copies || used > *budget {
            break;
        }
        prefix.push(g.clone());
    }
    for _ in 1..copies {
        prefix.pop();
    }
}

/// Build the module spanned by all PBW states of level at most `cutoff`,
/// together with the Gram matrix of every (level, charge) block.
pub fn build_module(hw: HighestWeight, cutoff: Rational) -> Result<ModuleHandle> {
    let hw = HighestWeight::new(hw.sector, hw.c, hw.h, hw.q)?;
    if cutoff.is_negative() {
        return Err(Error::InvalidWeight(format!("cutoff must be >= 0, got {cutoff}")));
    }
    let modes = creation_modes(hw.sector, &cutoff);
    let mut words = Vec::new();
    enumerate_monomials(&modes, &cutoff, &mut Vec::new(), &mut words);
    let mut basis: Vec<StateMonomial> =
        words.into_iter().flat_map(|w| hw.lowest_tags().into_iter().map(move |tag| StateMonomial { modes: w.clone(), tag })).collect();
    basis.sort_by(|a, b| (a.level(), a.charge_offset(), a).cmp(&(b.level(), b.charge_offset(), b)));
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

    let engine = Straightener::new(LowestData { c: hw.c.clone(), h: hw.h.clone(), q: hw.q.clone() });
    let mut grouped: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
    for (i, m) in basis.iter().enumerate() {
        let key = BlockKey { level: m.level(), charge: &hw.q + &Rational::from(m.charge_offset()) };
        grouped.entry(key).or_default().push(i);
    }
    let mut blocks = BTreeMap::new();
    for (key, states) in grouped {
        let n = states.len();
        let mut gram = QMatrix::zeros(n, n);
        for (a, &i) in states.iter().enumerate() {
            for (b, &j) in states.iter().enumerate() {
                let v = Vector::basis(basis[j].clone());
                gram.set(a, b, engine.inner_monomial(&basis[i], &v));
            }
        }
        if !gram.is_symmetric() {
            return Err(Error::Internal(format!("Gram block at {key:?} is not symmetric")));
        }
        let rank = gram.rank();
        let psd = gram.is_psd();
        blocks.insert(key.clone(), GramBlock { key, states, gram, rank, psd });
    }
    Ok(ModuleHandle { hw, cutoff, basis, index, blocks, engine })
}

/// One row of the character table: energy `h + level` and the dimension of
/// that level space in the irreducible quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTerm {
    pub energy: Rational,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSummary {
    pub level: Rational,
    pub dim_verma: usize,
    pub dim_irred: usize,
    pub psd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub c: Rational,
    pub h: Rational,
    pub q: Rational,
    #[serde(rename = "type")]
    pub sector: SectorType,
    pub cutoff: Rational,
    pub levels: Vec<LevelSummary>,
}

impl ModuleHandle {
    pub fn hw(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn basis(&self) -> &[StateMonomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &StateMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &GramBlock> {
        self.blocks.values()
    }

    pub fn block(&self, level: &Rational, charge: &Rational) -> Option<&GramBlock> {
        self.blocks.get(&BlockKey { level: level.clone(), charge: charge.clone() })
    }

    pub fn charge_of(&self, m: &StateMonomial) -> Rational {
        &self.hw.q + &Rational::from(m.charge_offset())
    }

    /// Distinct levels present in the basis, ascending.
    pub fn levels(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.blocks.keys().map(|k| k.level.clone()).collect();
        out.dedup();
        out
    }

    pub fn level_indices(&self, level: &Rational) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].level() == *level).collect()
    }

    fn check_level(&self, level: &Rational) -> Result<()> {
        if *level > self.cutoff {
            return Err(Error::BeyondCutoff { level: Box::new(level.clone()), cutoff: Box::new(self.cutoff.clone()) });
        }
        Ok(())
    }

    /// Rank of the Gram block at (level, charge); 0 when the block is empty.
    pub fn gram_rank(&self, level: &Rational, charge: &Rational) -> Result<usize> {
        self.check_level(level)?;
        Ok(self.block(level, charge).map_or(0, |b| b.rank))
    }

    /// Whether every Gram block up to the cutoff is positive semidefinite.
    pub fn gram_is_psd(&self) -> bool {
        self.blocks.values().all(|b| b.psd)
    }

    /// The first block (in (level, charge) order) that is not PSD.
    pub fn first_non_psd_block(&self) -> Option<&GramBlock> {
        self.blocks.values().find(|b| !b.psd)
    }

    pub fn character_coeffs(&self) -> Vec<CharacterTerm> {
        let mut dims: BTreeMap<Rational, usize> = BTreeMap::new();
        for b in self.blocks.values() {
            *dims.entry(b.key.level.clone()).or_default() += b.rank;
        }
        dims.into_iter().map(|(level, dim)| CharacterTerm { energy: &self.hw.h + &level, dim }).collect()
    }

    /// `+1` on even states, `−1` on odd ones. NS: `e^{iπ(L₀−h)}`; R: `e^{iπ(J₀−q)}`.
    pub fn grading_sign(&self, m: &StateMonomial) -> Result<i32> {
        let odd = match self.hw.sector {
            SectorType::NS => {
                let level = m.level();
                if level.is_integer() {
                    false
                } else if level.is_half_odd() {
                    true
                } else {
                    return Err(Error::Internal(format!("NS state {m} at level {level}")));
                }
            }
            SectorType::R => {
                let shift = &self.charge_of(m) - &self.hw.q;
                let shift = shift.to_i64().ok_or_else(|| Error::Internal(format!("R state {m} has fractional charge shift")))?;
                shift.rem_euclid(2) == 1
            }
        };
        Ok(if odd { -1 } else { 1 })
    }

    /// The grading operator as a diagonal matrix on the whole basis.
    pub fn grading_matrix(&self) -> Result<QMatrix> {
        let signs = self.basis.iter().map(|m| self.grading_sign(m).map(Rational::from)).collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::diagonal(&signs))
    }

    fn check_mode(&self, g: &GeneratorId) -> Result<()> {
        g.check(&self.hw.sector.flow_param())
    }

    /// Action of a single mode on a vector, in the PBW basis (no truncation).
    pub fn apply(&self, g: &GeneratorId, v: &Vector) -> Result<Vector> {
        self.check_mode(g)?;
        Ok(self.engine.act_vector(g, v))
    }

    /// The Shapovalov form `⟨u, v⟩`, conjugate-linear in `u`. All vectors
    /// here have rational coefficients, so it is bilinear in practice.
    pub fn inner(&self, u: &Vector, v: &Vector) -> Rational {
        self.engine.inner(u, v)
    }

    /// Matrix of a mode on the truncated basis (columns are sources). Images
    /// above the cutoff are dropped, so the result is only meaningful between
    /// levels that both lie within the cutoff.
    pub fn mode_matrix(&self, g: &GeneratorId) -> Result<QMatrix> {
        self.check_mode(g)?;
        let n = self.basis.len();
        let mut out = QMatrix::zeros(n, n);
        for (j, m) in self.basis.iter().enumerate() {
            for (target, c) in self.engine.act(g, m).iter() {
                if let Some(&i) = self.index.get(target) {
                    out.add_at(i, j, c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of a zero mode on the whole level space at `level`
    /// (basis order of [`ModuleHandle::level_indices`]).
    pub fn zero_mode_matrix(&self, which: ZeroMode, level: &Rational) -> Result<QMatrix> {
        if self.hw.sector == SectorType::NS && matches!(which, ZeroMode::GPlus | ZeroMode::GMinus) {
            return Err(Error::NsZeroMode);
        }
        self.check_level(level)?;
        let g = which.generator();
        let idx = self.level_indices(level);
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut out = QMatrix::zeros(idx.len(), idx.len());
        for (b, &j) in idx.iter().enumerate() {
            for (target, c) in self.engine.act(&g, &self.basis[j]).iter() {
                let i = self.index[target];
                let a = pos.get(&i).ok_or_else(|| Error::Internal("zero mode changed the level".into()))?;
                out.add_at(*a, b, c);
            }
        }
        Ok(out)
    }

    /// Matrix of a zero mode from the block (level, charge) to the block it
    /// lands in; returns the target charge alongside.
    pub fn zero_mode_block(&self, which: ZeroMode, level: &Rational, charge: &Rational) -> Result<(Rational, QMatrix)> {
        let full = self.zero_mode_matrix(which, level)?;
        let shift = match which {
            ZeroMode::GPlus => 1,
            ZeroMode::GMinus => -1,
            ZeroMode::L0 | ZeroMode::J0 => 0,
        };
        let target = charge + &Rational::from(shift);
        let idx = self.level_indices(level);
        let pick = |q: &Rational| -> Vec<usize> { (0..idx.len()).filter(|&a| self.charge_of(&self.basis[idx[a]]) == *q).collect() };
        Ok((target.clone(), full.select(&pick(&target), &pick(charge))))
    }

    /// Dimension of ker(L₀ − E) in the irreducible quotient, split by grading:
    /// returns (even, odd).
    pub fn graded_eigenspace_dims(&self, energy: &Rational) -> Result<(usize, usize)> {
        let level = energy - &self.hw.h;
        if level.is_negative() {
            return Ok((0, 0));
        }
        self.check_level(&level)?;
        let (mut even, mut odd) = (0, 0);
        for b in self.blocks.values().filter(|b| b.key.level == level) {
            if b.rank == 0 {
                continue;
            }
            if self.grading_sign(&self.basis[b.states[0]])? > 0 {
                even += b.rank;
            } else {
                odd += b.rank;
            }
        }
        Ok((even, odd))
    }

    pub fn summary(&self) -> ModuleSummary {
        let levels = self
            .levels()
            .into_iter()
            .map(|level| {
                let blocks: Vec<&GramBlock> = self.blocks.values().filter(|b| b.key.level == level).collect();
                LevelSummary {
                    dim_verma: blocks.iter().map(|b| b.states.len()).sum(),
                    dim_irred: blocks.iter().map(|b| b.rank).sum(),
                    psd: blocks.iter().all(|b| b.psd),
                    level,
                }
            })
            .collect();
        ModuleSummary {
            c: self.hw.c.clone(),
            h: self.hw.h.clone(),
            q: self.hw.q.clone(),
            sector: self.hw.sector,
            cutoff: self.cutoff.clone(),
            levels,
        }
    }
}

/// The adjoint of a mode; re-exported for adjointness checks.
pub fn mode_adjoint(g: &GeneratorId) -> GeneratorId {
    adjoint_generator(g)
}

/// Creation modes of a sector type up to `cutoff`, in PBW order.
pub fn creation_modes_upto(sector: SectorType, cutoff: &Rational) -> Vec<GeneratorId> {
    creation_modes(sector, cutoff)
}
