//! PBW monomials on a lowest-weight vector and the straightening action of
//! single modes on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::scalars::Rational;
use crate::superalgebra::{bracket_unchecked, Family, GeneratorId};

/// Lowest-energy vector a monomial is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    /// The single lowest vector (NS modules and R modules with h = c/24).
    #[serde(rename = "Ω")]
    Omega,
    /// R module, h > c/24: the lowest vector with `G₀⁺Ω⁻ = 0`, charge q.
    #[serde(rename = "Ω-")]
    OmegaMinus,
    /// R module, h > c/24: `Ω⁺ := G₀⁻Ω⁻` (unnormalized), charge q − 1.
    #[serde(rename = "Ω+")]
    OmegaPlus,
}

/// Creation modes in PBW order applied to a lowest vector. Bosonic modes may
/// repeat, fermionic ones may not.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StateMonomial {
    pub modes: Vec<GeneratorId>,
    pub tag: Tag,
}

impl StateMonomial {
    pub fn lowest(tag: Tag) -> Self {
        StateMonomial { modes: Vec::new(), tag }
    }

    pub fn level(&self) -> Rational {
        let mut out = Rational::zero();
        for g in &self.modes {
            out -= &g.index;
        }
        out
    }

    /// J₀ eigenvalue relative to the charge q of the distinguished lowest vector.
    pub fn charge_offset(&self) -> i64 {
        let mut out: i64 = 0;
        for g in &self.modes {
            match g.family {
                Family::Gplus => out += 1,
                Family::Gminus => out -= 1,
                _ => {}
            }
        }
        if self.tag == Tag::OmegaPlus {
            out -= 1;
        }
        out
    }

    pub fn odd_count(&self) -> usize {
        self.modes.iter().filter(|g| g.is_odd()).count() + usize::from(self.tag == Tag::OmegaPlus)
    }
}

impl fmt::Display for StateMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.modes {
            write!(f, "{g} ")?;
        }
        match self.tag {
            Tag::Omega => write!(f, "Ω"),
            Tag::OmegaMinus => write!(f, "Ω⁻"),
            Tag::OmegaPlus => write!(f, "Ω⁺"),
        }
    }
}

impl fmt::Debug for StateMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite rational combination of monomials; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Vector(BTreeMap<StateMonomial, Rational>);

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(m: StateMonomial) -> Self {
        let mut out = Vector::zero();
        out.add_term(m, Rational::one());
        out
    }

    pub fn add_term(&mut self, m: StateMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &StateMonomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StateMonomial, &Rational)> {
        self.0.iter()
    }
}

/// Data the straightening needs about the module: central charge and the
/// zero-mode action on the lowest space.
#[derive(Clone, Debug)]
pub(crate) struct LowestData {
    pub c: Rational,
    pub h: Rational,
    pub q: Rational,
}

impl LowestData {
    /// `⟨Ω⁺, Ω⁺⟩ = 2h − c/12`
    pub fn omega_plus_norm(&self) -> Rational {
        &(&self.h * &Rational::from(2)) - &(&self.c * &Rational::new(1, 12))
    }

    fn on_tag(&self, x: &GeneratorId, tag: Tag) -> Vector {
        let one = |t: Tag, c: Rational| {
            let mut v = Vector::zero();
            v.add_term(StateMonomial::lowest(t), c);
            v
        };
        if x.index.is_positive() {
            return Vector::zero();
        }
        match (x.family, tag) {
            (Family::Central, t) => one(t, self.c.clone()),
            (Family::L, t) => one(t, self.h.clone()),
            (Family::J, Tag::OmegaPlus) => one(Tag::OmegaPlus, &self.q - &Rational::one()),
            (Family::J, t) => one(t, self.q.clone()),
            (Family::Gplus, Tag::OmegaPlus) => one(Tag::OmegaMinus, self.omega_plus_norm()),
            (Family::Gminus, Tag::OmegaMinus) => one(Tag::OmegaPlus, Rational::one()),
            (Family::Gplus, _) | (Family::Gminus, _) => Vector::zero(),
        }
    }
}

fn is_creation(g: &GeneratorId) -> bool {
    g.family != Family::Central && g.index.is_negative()
}

fn koszul(a: &GeneratorId, b: &GeneratorId) -> Rational {
    if a.is_odd() && b.is_odd() {
        Rational::from(-1)
    } else {
        Rational::one()
    }
}

/// Memoized action of single modes on PBW monomials.
pub(crate) struct Straightener {
    lowest: LowestData,
    cache: Mutex<HashMap<(GeneratorId, StateMonomial), Vector>>,
}

impl Straightener {
    pub fn new(lowest: LowestData) -> Self {
        Straightener { lowest, cache: Mutex::new(HashMap::new()) }
    }

    /// `x · m`, rewritten in the PBW basis. The caller is responsible for
    /// `x` being a mode of the right algebra.
    pub fn act(&self, x: &GeneratorId, m: &StateMonomial) -> Vector {
        if x.family == Family::Central {
            let mut v = Vector::zero();
            v.add_term(m.clone(), self.lowest.c.clone());
            return v;
        }
        let key = (x.clone(), m.clone());
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.act_uncached(x, m);
        self.cache.lock().expect("cache poisoned").insert(key, v.clone());
        v
    }

    fn act_uncached(&self, x: &GeneratorId, m: &StateMonomial) -> Vector {
        let Some(y1) = m.modes.first() else {
            if is_creation(x) {
                return Vector::basis(StateMonomial { modes: vec![x.clone()], tag: m.tag });
            }
            return self.lowest.on_tag(x, m.tag);
        };
        if is_creation(x) {
            if x < y1 {
                let mut modes = Vec::with_capacity(m.modes.len() + 1);
                modes.push(x.clone());
                modes.extend(m.modes.iter().cloned());
                return Vector::basis(StateMonomial { modes, tag: m.tag });
            }
            if x == y1 {
                if x.is_odd() {
                    return Vector::zero();
                }
                let mut modes = m.modes.clone();
                modes.insert(0, x.clone());
                return Vector::basis(StateMonomial { modes, tag: m.tag });
            }
        }
        // x y₁ R = [x, y₁} R + (−1)^{|x||y₁|} y₁ (x R)
        let rest = StateMonomial { modes: m.modes[1..].to_vec(), tag: m.tag };
        let mut out = Vector::zero();
        for (g, c) in bracket_unchecked(x, y1).iter() {
            let c = c.as_rational().expect("structure constants are rational");
            out.add_scaled(&self.act(g, &rest), c);
        }
        let sign = koszul(x, y1);
        let xr = self.act(x, &rest);
        for (mono, c) in xr.iter() {
            out.add_scaled(&self.act(y1, mono), &(c * &sign));
        }
        out
    }

    pub fn act_vector(&self, x: &GeneratorId, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (m, c) in v.iter() {
            out.add_scaled(&self.act(x, m), c);
        }
        out
    }

    pub fn tag_norm(&self, tag: Tag) -> Rational {
        match tag {
            Tag::OmegaPlus => self.lowest.omega_plus_norm(),
            _ => Rational::one(),
        }
    }

    /// `⟨u, v⟩` for a monomial `u`: peel the creation modes of `u` from the
    /// left, acting with their adjoints on `v`.
    pub fn inner_monomial(&self, u: &StateMonomial, v: &Vector) -> Rational {
        let mut w = v.clone();
        for g in &u.modes {
            w = self.act_vector(&crate::superalgebra::adjoint_generator(g), &w);
            if w.is_zero() {
                return Rational::zero();
            }
        }
        let lowest = StateMonomial::lowest(u.tag);
        &w.coeff(&lowest) * &self.tag_norm(u.tag)
    }

    /// The (real, bilinear) inner product of two vectors with rational coefficients.
    pub fn inner(&self, u: &Vector, v: &Vector) -> Rational {
        let mut out = Rational::zero();
        for (m, c) in u.iter() {
            out += &(c * &self.inner_monomial(m, v));
        }
        out
    }
}
