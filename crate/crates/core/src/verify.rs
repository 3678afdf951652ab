//! The invariant suite behind `verify-all`: one named check per invariant,
//! each run over every n up to a bound.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::chiral::{chiral_label, chiral_structure_constants, flow_discrete_label, pairing_matrix, ramond_vacuum_sectors};
use crate::classification::{closed_form_maximal_subgroups, phase_one_maximal_subgroups, Dim1Table};
use crate::error::Result;
use crate::fusion::{all_ns_sectors, all_sectors, fuse, fuse_ns, ns_power, CosetSector, FusionVector, NSFermiSector};
use crate::lwmodules::{build_module, HighestWeight, QMatrix, SectorType, ZeroMode};
use crate::scalars::Rational;
use crate::superalgebra::{
    adjoint, bracket, bracket_elem, flow, flow_elem, flow_inverse_elem, generators_in_window, jacobi_defect, AlgebraElement, FlowParam,
};
use crate::unitarity::{central_charge, enumerate_labels, max_ns_energy, region_check, DiscreteLabel};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_n: u32,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

/// Flow parameters exercised by the algebra checks.
pub fn flow_params() -> Vec<Rational> {
    vec![Rational::new(1, 2), Rational::new(-1, 2), Rational::one(), Rational::from(2), Rational::new(5, 2)]
}

/// Graded Jacobi identity on every triple in the window. Returns the number
/// of triples checked and the first failure.
pub fn check_jacobi(t: &FlowParam, window: i64) -> Result<(usize, Option<String>)> {
    let gens = generators_in_window(t, -window, window);
    let mut count = 0;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                count += 1;
                let d = jacobi_defect(a, b, c, t)?;
                if !d.is_zero() {
                    return Ok((count, Some(format!("({a}, {b}, {c}) -> {d:?}"))));
                }
            }
        }
    }
    Ok((count, None))
}

/// `η'_t ∘ η_t = id`, `[η_t a, η_t b] = η_t [a, b]` and `η_t ∘ * = * ∘ η_t`
/// on every generator pair in the window.
pub fn check_flow(t: &Rational, window: i64) -> Result<(usize, Option<String>)> {
    let tp = FlowParam(t.clone());
    let ns = FlowParam::ns();
    let gens = generators_in_window(&tp, -window, window);
    let mut count = 0;
    for a in &gens {
        let fa = flow(&tp, a)?;
        if flow_inverse_elem(&tp, &fa)? != AlgebraElement::generator(a.clone()) {
            return Ok((count, Some(format!("inverse fails on {a}"))));
        }
        if adjoint(&fa) != flow_elem(&tp, &adjoint(&AlgebraElement::generator(a.clone())))? {
            return Ok((count, Some(format!("adjoint does not commute with flow on {a}"))));
        }
        for b in &gens {
            count += 1;
            let lhs = bracket_elem(&fa, &flow(&tp, b)?, &ns)?;
            let rhs = flow_elem(&tp, &bracket(a, b, &tp)?)?;
            if lhs != rhs {
                return Ok((count, Some(format!("homomorphism fails on ({a}, {b})"))));
            }
        }
    }
    Ok((count, None))
}

/// The weight just outside the n=1 discrete series used as a non-unitarity witness.
pub fn perturbed_weight() -> HighestWeight {
    let h = Rational::new(1, 6) + Rational::new(1, 137);
    HighestWeight::ns(central_charge(1), h, Rational::new(-1, 3)).expect("admissible weight")
}

/// Checks `Q² = 2L₀ − c/12` with `Q = G₀⁺ + G₀⁻`, and `[J₀, Q] = sign·(G₀⁺ − G₀⁻)`,
/// on every level of an R module. Returns (square holds, rotation holds).
pub fn supercharge_identities(label: &DiscreteLabel, cutoff: &Rational, sign: i64) -> Result<(bool, bool)> {
    let module = build_module(label.highest_weight(), cutoff.clone())?;
    let c12 = &module.hw().c * &Rational::new(1, 12);
    let (mut square, mut rotation) = (true, true);
    for level in module.levels() {
        let gp = module.zero_mode_matrix(ZeroMode::GPlus, &level)?;
        let gm = module.zero_mode_matrix(ZeroMode::GMinus, &level)?;
        let l0 = module.zero_mode_matrix(ZeroMode::L0, &level)?;
        let j0 = module.zero_mode_matrix(ZeroMode::J0, &level)?;
        let q = &gp + &gm;
        let rhs = &l0.scale(&Rational::from(2)) - &QMatrix::scalar(q.rows(), &c12);
        square &= &q * &q == rhs;
        let comm = &(&j0 * &q) - &(&q * &j0);
        rotation &= comm == (&gp - &gm).scale(&Rational::from(sign));
    }
    Ok((square, rotation))
}

type Table<S> = HashMap<(S, S), FusionVector<S>>;

fn fusion_table<S, F>(sectors: &[S], mut f: F) -> Result<Table<S>>
where
    S: Ord + Clone + std::hash::Hash,
    F: FnMut(&S, &S) -> Result<FusionVector<S>>,
{
    let mut table = HashMap::new();
    for a in sectors {
        for b in sectors {
            table.insert((a.clone(), b.clone()), f(a, b)?);
        }
    }
    Ok(table)
}

fn times<S: Ord + Clone + std::hash::Hash>(table: &Table<S>, x: &FusionVector<S>, c: &S) -> FusionVector<S> {
    let mut out = FusionVector::zero();
    for (a, k) in x.iter() {
        for (b, j) in table[&(a.clone(), c.clone())].iter() {
            out.add(b.clone(), k * j);
        }
    }
    out
}

fn left_times<S: Ord + Clone + std::hash::Hash>(table: &Table<S>, a: &S, x: &FusionVector<S>) -> FusionVector<S> {
    let mut out = FusionVector::zero();
    for (b, k) in x.iter() {
        for (c, j) in table[&(a.clone(), b.clone())].iter() {
            out.add(c.clone(), k * j);
        }
    }
    out
}

/// Commutativity and associativity over all sector triples. Returns a
/// counterexample description if either fails.
pub fn ring_axioms<S>(sectors: &[S], f: impl FnMut(&S, &S) -> Result<FusionVector<S>>) -> Result<Option<String>>
where
    S: Ord + Clone + std::hash::Hash + std::fmt::Display,
{
    let table = fusion_table(sectors, f)?;
    for a in sectors {
        for b in sectors {
            if table[&(a.clone(), b.clone())] != table[&(b.clone(), a.clone())] {
                return Ok(Some(format!("{a}·{b} ≠ {b}·{a}")));
            }
            let ab = &table[&(a.clone(), b.clone())];
            for c in sectors {
                let left = times(&table, ab, c);
                let right = left_times(&table, a, &table[&(b.clone(), c.clone())]);
                if left != right {
                    return Ok(Some(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
    }
    Ok(None)
}

/// The (n, −n) power identities in the NS ring for n = 4k, 4k−1, 4k−2, 4k−3.
pub fn lemma_powers(k: u32) -> Result<Vec<(u32, bool)>> {
    let mut out = Vec::new();
    let cases: [(i64, u64, i64); 4] = [
        (4 * k as i64, 2 * k as u64 + 1, 0),
        (4 * k as i64 - 2, 2 * k as u64, 0),
        (4 * k as i64 - 1, 2 * k as u64, -1),
        (4 * k as i64 - 3, 2 * k as u64, 1),
    ];
    for (n, power, m) in cases {
        if n < 1 {
            continue;
        }
        let n32 = n as u32;
        let lambda = NSFermiSector::new(n32, n, -n)?;
        let expected = FusionVector::from_sector(NSFermiSector::new(n32, n, m)?);
        out.push((n32, ns_power(&lambda, power)? == expected));
    }
    Ok(out)
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn push(&mut self, module: &'static str, name: &'static str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(CheckResult { module, name, passed, detail });
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>) -> Result<Option<T>> {
    for x in items {
        if !ok(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn report<T: std::fmt::Debug>(found: Option<T>, what: &str) -> (bool, String) {
    match found {
        None => (true, what.to_string()),
        Some(x) => (false, format!("{what}: fails at {x:?}")),
    }
}

/// Runs every invariant. Expensive checks are capped at small n regardless
/// of `max_n`; the caps are part of each check's detail string.
pub fn verify_all(max_n: u32) -> VerifyReport {
    let mut s = Suite { checks: Vec::new() };
    let two = Rational::from(2);
    let small = max_n.min(3);

    for (t, name) in [(FlowParam::ns(), "jacobi t=0"), (FlowParam::ramond(), "jacobi t=1/2")] {
        s.push("superalgebra", name, check_jacobi(&t, 3).map(|(k, f)| report(f, &format!("{k} triples, window [-3,3]"))));
    }
    s.push(
        "superalgebra",
        "flow inverse, homomorphism, adjoint",
        (|| {
            for t in flow_params() {
                if let (_, Some(f)) = check_flow(&t, 3)? {
                    return Ok((false, format!("t={t}: {f}")));
                }
            }
            Ok((true, "t in {1/2,-1/2,1,2,5/2}, window [-3,3]".into()))
        })(),
    );

    s.push(
        "lwmodules",
        "discrete series PSD",
        (|| {
            let labels =
                (1..=small).flat_map(|n| enumerate_labels(n, SectorType::NS).into_iter().chain(enumerate_labels(n, SectorType::R)));
            let bad = first_failure(labels, |x| Ok(build_module(x.highest_weight(), two.clone())?.gram_is_psd()))?;
            Ok(report(bad.map(|x| format!("{} {x} n={}", x.sector, x.n)), &format!("n <= {small}, cutoff 2")))
        })(),
    );
    s.push(
        "lwmodules",
        "perturbed weight not PSD",
        (|| {
            let m = build_module(perturbed_weight(), two.clone())?;
            Ok(match m.first_non_psd_block() {
                Some(b) => (true, format!("non-PSD block at level {}, charge {}", b.key.level, b.key.charge)),
                None => (false, "all blocks PSD".into()),
            })
        })(),
    );
    s.push(
        "lwmodules",
        "vacuum null vectors",
        (|| {
            let bad = first_failure(1..=max_n, |&n| {
                let m = build_module(HighestWeight::ns(central_charge(n), 0.into(), 0.into())?, Rational::one())?;
                let dims: Vec<usize> = m.character_coeffs().iter().map(|t| t.dim).collect();
                Ok(dims == [1, 0, 1])
            })?;
            Ok(report(bad, "irreducible dims 1, 0, 1 at levels 0, 1/2, 1"))
        })(),
    );
    s.push(
        "lwmodules",
        "supercharge square and J0 rotation",
        (|| {
            let labels = (1..=small).flat_map(|n| enumerate_labels(n, SectorType::R));
            let bad = first_failure(labels, |x| Ok(supercharge_identities(x, &two, 1)? == (true, true)))?;
            Ok(report(bad.map(|x| format!("{x} n={}", x.n)), &format!("Q^2 = 2L0 - c/12, [J0,Q] = G0+ - G0-, n <= {small}")))
        })(),
    );
    s.push(
        "lwmodules",
        "Ramond lowest kernel grading",
        (|| {
            let labels = (1..=small).flat_map(|n| enumerate_labels(n, SectorType::R));
            let bad = first_failure(labels, |x| {
                let m = build_module(x.highest_weight(), two.clone())?;
                let dims = m.graded_eigenspace_dims(&(&m.hw().c * &Rational::new(1, 24)))?;
                Ok(dims == if m.hw().is_ramond_vacuum() { (1, 0) } else { (0, 0) })
            })?;
            Ok(report(bad.map(|x| format!("{x} n={}", x.n)), "ker(L0 - c/24) even of dim 1 iff h = c/24"))
        })(),
    );

    s.push(
        "unitarity",
        "discrete series in NS3/R3",
        (|| {
            let labels =
                (1..=max_n).flat_map(|n| enumerate_labels(n, SectorType::NS).into_iter().chain(enumerate_labels(n, SectorType::R)));
            let bad = first_failure(labels, |x| {
                let (c, h, q) = x.hq();
                Ok(region_check(x.sector, &c, &h, &q).labels.contains(x))
            })?;
            Ok(report(bad.map(|x| format!("{} {x} n={}", x.sector, x.n)), "region check recovers every label"))
        })(),
    );
    s.push(
        "unitarity",
        "maximal NS energy",
        (|| {
            let bad = first_failure(1..=max_n, |&n| {
                let n_ = i64::from(n);
                let expected = if n % 2 == 0 { Rational::new(n_, 4) } else { Rational::new(n_, 4) - Rational::new(1, 4 * (n_ + 2)) };
                Ok(max_ns_energy(n) == expected)
            })?;
            Ok(report(bad, "n/4 for even n, n/4 - 1/(4(n+2)) for odd n"))
        })(),
    );

    let fusion_n = max_n.min(5);
    s.push(
        "fusion",
        "coset ring axioms",
        (|| {
            for n in 1..=fusion_n {
                if let Some(f) = ring_axioms(&all_sectors(n), fuse)? {
                    return Ok((false, format!("n={n}: {f}")));
                }
            }
            Ok((true, format!("commutative and associative, n <= {fusion_n}")))
        })(),
    );
    s.push(
        "fusion",
        "NS ring axioms",
        (|| {
            for n in 1..=fusion_n {
                if let Some(f) = ring_axioms(&all_ns_sectors(n), fuse_ns)? {
                    return Ok((false, format!("n={n}: {f}")));
                }
            }
            Ok((true, format!("commutative and associative, n <= {fusion_n}")))
        })(),
    );
    s.push(
        "fusion",
        "identification invariance",
        (|| {
            let bad = first_failure(1..=max_n.min(10), |&n| {
                let n_ = i64::from(n);
                for x in all_sectors(n) {
                    let (l, m, s_) = (i64::from(x.l()), x.m(), x.s());
                    let y = CosetSector::new(n, n_ - l, m + n_ + 2, s_ + 2)?;
                    if y != x || y.statistics_phase() != x.statistics_phase() {
                        return Ok(false);
                    }
                    let z = CosetSector::sigma(n);
                    if fuse(&y, &z)? != fuse(&x, &z)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            Ok(report(bad, "fuse and phase agree on identified labels"))
        })(),
    );
    s.push(
        "fusion",
        "phase and order facts",
        (|| {
            let bad = first_failure(1..=max_n, |&n| {
                let n_ = i64::from(n);
                let x = CosetSector::new(n, n_, n_ + 2, 0)?;
                let expected = if n % 2 == 0 { 2 * n_ + 4 } else { 4 * n_ + 8 } as u64;
                Ok(x.statistics_phase() == crate::scalars::phase_from_exponent(&Rational::half())
                    && CosetSector::sigma(n).order()? == expected)
            })?;
            Ok(report(bad, "phase((n,n+2,0)) = -1, order(sigma) = 2n+4 or 4n+8"))
        })(),
    );
    s.push(
        "fusion",
        "(n,-n) power identities",
        (|| {
            let kmax = (max_n / 4 + 1).max(1);
            for k in 1..=kmax {
                if let Some((n, _)) = lemma_powers(k)?.into_iter().find(|(_, ok)| !ok) {
                    return Ok((false, format!("fails at n={n}")));
                }
            }
            Ok((true, format!("k <= {kmax}")))
        })(),
    );

    s.push(
        "classification",
        "closed form matches brute force",
        (|| {
            let bad = first_failure(1..=max_n, |&n| {
                let brute: BTreeSet<_> = phase_one_maximal_subgroups(n)?.iter().map(|g| g.sector_set()).collect();
                let pred = closed_form_maximal_subgroups(n)?;
                let pred: BTreeSet<_> = pred.groups.iter().map(|g| g.sector_set()).collect();
                Ok(brute == pred)
            })?;
            Ok(report(bad, "maximal phase-one subgroups"))
        })(),
    );
    s.push(
        "classification",
        "maximal subgroups cyclic",
        (|| {
            let bad = first_failure(1..=max_n, |&n| Ok(phase_one_maximal_subgroups(n)?.iter().all(|g| g.is_cyclic())))?;
            Ok(report(bad, "every maximal phase-one subgroup is cyclic"))
        })(),
    );
    s.push(
        "classification",
        "16-divisibility",
        (|| {
            let bad = first_failure(1..=max_n, |&n| {
                let table = Dim1Table::new(n)?;
                let exists = table.elements.iter().any(|x| x.s() == 1 && x.statistics_phase().is_one());
                Ok(!exists || n % 16 == 0)
            })?;
            Ok(report(bad, "phase-one (l,m,1) only when 16 | n"))
        })(),
    );

    s.push(
        "chiral",
        "chiral ring is Z[x]/(x^(n+1))",
        (|| {
            let bad = first_failure(0..=max_n.min(8), |&n| {
                let k = chiral_structure_constants(n)?;
                let size = n as usize + 1;
                Ok((0..size).all(|a| (0..size).all(|b| (0..size).all(|c| k[a][b][c] == u64::from(a + b == c)))))
            })?;
            Ok(report(bad, "structure constants are those of truncated polynomials"))
        })(),
    );
    s.push(
        "chiral",
        "Ramond vacuum count",
        (|| {
            let bad = first_failure(0..=max_n, |&n| Ok(ramond_vacuum_sectors(n).labels.len() as u32 == n + 1))?;
            Ok(report(bad, "n+1 Ramond vacua"))
        })(),
    );
    let flow_n = max_n.min(6);
    s.push(
        "chiral",
        "flow bijection and round trip",
        (|| {
            let (down, up) = (Rational::new(-1, 2), Rational::half());
            let bad = first_failure(0..=flow_n, |&n| {
                let mut image = Vec::new();
                for l in 0..=n {
                    image.push(flow_discrete_label(n, &chiral_label(n, l)?, &down)?.target);
                }
                image.sort();
                if image != ramond_vacuum_sectors(n).labels {
                    return Ok(false);
                }
                for x in enumerate_labels(n, SectorType::NS) {
                    let y = flow_discrete_label(n, &x, &down)?.target;
                    if flow_discrete_label(n, &y, &up)?.target != x {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            Ok(report(bad, &format!("chiral -> Ramond vacua bijective, NS round trip identity, n <= {flow_n}")))
        })(),
    );
    s.push(
        "chiral",
        "index pairing",
        (|| {
            let bad = first_failure(1..=small, |&n| {
                let p = pairing_matrix(n, &two)?;
                let size = p.labels.len();
                let identity = (0..size).all(|i| (0..size).all(|j| p.matrix[i][j] == i64::from(i == j)));
                let others = enumerate_labels(n, SectorType::R)
                    .into_iter()
                    .filter(|x| !p.labels.contains(x))
                    .map(|x| crate::chiral::index_pairing(&x, &x, n, &two))
                    .collect::<Result<Vec<i64>>>()?;
                Ok(identity && others.iter().all(|&v| v == 0))
            })?;
            Ok(report(bad, &format!("identity over Ramond vacua, 0 elsewhere, n <= {small}")))
        })(),
    );

    let all_passed = s.checks.iter().all(|c| c.passed);
    VerifyReport { max_n, checks: s.checks, all_passed }
}
