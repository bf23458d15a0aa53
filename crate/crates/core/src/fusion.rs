//! Orbits of G acting on N = 𝔽ₚ², i.e. Γ-conjugacy classes inside N.
//!
//! Two independent routes produce a [`FusionOrbitSet`] for the dihedral
//! action θ_{i0}: applying every group element to every point, and the
//! closed-form description by `k = n / gcd(i0, n)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dihedral::{DihedralGroup, DihedralParams, GroupElement, Rep2, Subgroup};
use crate::error::{Error, Result};
use crate::ff::{self, FpScalar};

/// Guard for the brute-force enumerations: `p² <= 10⁶`.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// A point `(x, y)` of N in the fixed basis; residues in `[0, p)`.
/// Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NPoint {
    pub x: u64,
    pub y: u64,
}

impl NPoint {
    pub const ZERO: Self = Self { x: 0, y: 0 };

    pub fn new(x: u64, y: u64) -> Self {
        Self { x, y }
    }

    fn index(self, p: u64) -> usize {
        (self.x * p + self.y) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionOrbit<E> {
    pub representative: NPoint,
    #[serde(skip)]
    pub elements: BTreeSet<NPoint>,
    pub size: usize,
    pub stabilizer_order: usize,
    pub stabilizer_gens: Vec<E>,
}

/// Which action an orbit set belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionSpec {
    Dihedral {
        n: usize,
        p: u64,
        omega: u64,
        i0: usize,
    },
    Abelian {
        orders: Vec<usize>,
        p: u64,
        theta1: Vec<u64>,
        theta2: Vec<u64>,
    },
}

/// Partition of N into orbits, sorted by representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionOrbitSet<E> {
    pub action: ActionSpec,
    pub group_order: usize,
    pub p: u64,
    pub orbits: Vec<FusionOrbit<E>>,
}

impl<E> FusionOrbitSet<E> {
    /// The partition alone, as a set of sets.
    pub fn partition(&self) -> BTreeSet<BTreeSet<NPoint>> {
        self.orbits.iter().map(|o| o.elements.clone()).collect()
    }

    pub fn orbit_of(&self, v: NPoint) -> Option<&FusionOrbit<E>> {
        self.orbits.iter().find(|o| o.elements.contains(&v))
    }

    /// Checks the partition, representative and orbit-stabilizer invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let mut total = 0u64;
        let mut seen = BTreeSet::new();
        for o in &self.orbits {
            if o.size != o.elements.len()
                || o.elements.first() != Some(&o.representative)
                || o.size * o.stabilizer_order != self.group_order
            {
                return Err(Error::InvariantViolation(format!(
                    "orbit of {:?}: size {}, |elements| {}, stabilizer {}",
                    o.representative,
                    o.size,
                    o.elements.len(),
                    o.stabilizer_order
                )));
            }
            for &v in &o.elements {
                if !seen.insert(v) {
                    return Err(Error::InvariantViolation(format!("{v:?} in two orbits")));
                }
            }
            total += o.size as u64;
        }
        if total != self.p * self.p {
            return Err(Error::InvariantViolation(format!(
                "orbit sizes sum to {total}, not p^2 = {}",
                self.p * self.p
            )));
        }
        Ok(())
    }
}

/// Census `m ↦ F_{φ,m}`, nonzero entries only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FusionNumbers {
    pub counts: BTreeMap<usize, usize>,
}

impl FusionNumbers {
    pub fn get(&self, m: usize) -> usize {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    /// `Σ m·F_{φ,m}`; equals p² for a partition of N.
    pub fn weighted_total(&self) -> u64 {
        self.counts.iter().map(|(&m, &c)| (m * c) as u64).sum()
    }
}

/// θ_{i0}(g)·v.
pub fn act(params: &DihedralParams, i0: usize, g: GroupElement, v: NPoint) -> Result<NPoint> {
    let rep = Rep2::theta(params, i0)?;
    Ok(apply(&rep.matrix(g), v))
}

fn apply(m: &crate::ff::FpMatrix, v: NPoint) -> NPoint {
    let p = m.modulus().get();
    let row = |i: usize| {
        let r = m.row_values(i);
        (r[0] * v.x + r[1] * v.y) % p
    };
    NPoint { x: row(0), y: row(1) }
}

fn check_guard(p: u64) -> Result<()> {
    let size = p * p;
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force orbit enumeration (p^2)",
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Generic brute-force orbit enumeration. `act(g, v)` applies element `g`;
/// `gens_of(stab)` picks generators for a stabilizer element list.
pub(crate) fn enumerate_orbits<E: Copy>(
    p: u64,
    elements: &[E],
    act: impl Fn(E, NPoint) -> NPoint,
    gens_of: impl Fn(Vec<E>) -> Vec<E>,
) -> Vec<FusionOrbit<E>> {
    let mut visited = vec![false; (p * p) as usize];
    let mut orbits = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let v = NPoint { x, y };
            if visited[v.index(p)] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            let mut stab = Vec::new();
            for &g in elements {
                let w = act(g, v);
                if w == v {
                    stab.push(g);
                }
                orbit.insert(w);
            }
            for w in &orbit {
                visited[w.index(p)] = true;
            }
            orbits.push(FusionOrbit {
                representative: v,
                size: orbit.len(),
                elements: orbit,
                stabilizer_order: stab.len(),
                stabilizer_gens: gens_of(stab),
            });
        }
    }
    orbits
}

fn action_spec(params: &DihedralParams, i0: usize) -> ActionSpec {
    ActionSpec::Dihedral {
        n: params.n(),
        p: params.p(),
        omega: params.omega().value(),
        i0,
    }
}

/// Orbits by applying all 2n elements to every point.
pub fn fusion_orbits_bruteforce(
    params: &DihedralParams,
    i0: usize,
) -> Result<FusionOrbitSet<GroupElement>> {
    let rep = Rep2::theta(params, i0)?;
    let p = params.p();
    let group = params.group();
    check_guard(p)?;
    let elements = group.elements();
    let mats: Vec<_> = elements.iter().map(|&g| rep.matrix(g)).collect();
    let orbits = enumerate_orbits(
        p,
        &elements,
        |g, v| apply(&mats[group.index_of(g)], v),
        |stab| Subgroup::from_elements(&group, stab).generators,
    );
    Ok(FusionOrbitSet {
        action: action_spec(params, i0),
        group_order: group.order(),
        p,
        orbits,
    })
}

/// `k = n / gcd(i0, n)`, the order of `ω^{i0}`.
pub fn orbit_parameter(n: usize, i0: usize) -> usize {
    n / ff::gcd(i0 as u64, n as u64) as usize
}

/// Orbits from the three-case description: `{0}`; size-k orbits of points
/// with both coordinates nonzero and `y/x ∈ ⟨ω^{i0}⟩`; size-2k otherwise.
pub fn fusion_orbits_closed_form(
    params: &DihedralParams,
    i0: usize,
) -> Result<FusionOrbitSet<GroupElement>> {
    params.check_index(i0)?;
    let n = params.n();
    let p = params.p();
    let modulus = params.modulus();
    let k = orbit_parameter(n, i0);
    let g = n / k;
    let group = params.group();
    let zeta = params.omega().pow(i0 as u64);
    let zeta_inv = zeta.inv().expect("unit");
    // ⟨ω^{i0}⟩ as exponent lookup: power j of zeta for j in [0, k)
    let mut log_zeta: BTreeMap<u64, usize> = BTreeMap::new();
    let mut acc = modulus.one();
    for j in 0..k {
        log_zeta.insert(acc.value(), j);
        acc = acc * zeta;
    }
    let rot_stab: Vec<GroupElement> = if k < n {
        vec![GroupElement::rotation(k)]
    } else {
        Vec::new()
    };

    let mut visited = vec![false; (p * p) as usize];
    let mut orbits = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let v = NPoint { x, y };
            if visited[v.index(p)] {
                continue;
            }
            let orbit = if v == NPoint::ZERO {
                FusionOrbit {
                    representative: v,
                    elements: BTreeSet::from([v]),
                    size: 1,
                    stabilizer_order: group.order(),
                    stabilizer_gens: vec![group.r(), group.s()],
                }
            } else {
                let (fx, fy) = (FpScalar::from_residue(x, modulus), FpScalar::from_residue(y, modulus));
                let ratio_log = if x != 0 && y != 0 {
                    log_zeta.get(&(fy * fx.inv().unwrap()).value()).copied()
                } else {
                    None
                };
                let mut elements = BTreeSet::new();
                let (mut cx, mut cy) = (fx, fy);
                for _ in 0..k {
                    elements.insert(NPoint::new(cx.value(), cy.value()));
                    if ratio_log.is_none() {
                        elements.insert(NPoint::new(cy.value(), cx.value()));
                    }
                    cx = cx * zeta;
                    cy = cy * zeta_inv;
                }
                let rep = *elements.first().unwrap();
                let (stabilizer_order, stabilizer_gens) = match ratio_log {
                    Some(_) => {
                        let j0 = reflection_exponent(rep, modulus, &log_zeta);
                        let mut gens = rot_stab.clone();
                        gens.push(GroupElement::reflection(j0));
                        (2 * g, gens)
                    }
                    None => (g, rot_stab.clone()),
                };
                FusionOrbit {
                    representative: rep,
                    size: elements.len(),
                    elements,
                    stabilizer_order,
                    stabilizer_gens,
                }
            };
            for w in &orbit.elements {
                visited[w.index(p)] = true;
            }
            orbits.push(orbit);
        }
    }
    orbits.sort_by_key(|o| o.representative);
    Ok(FusionOrbitSet {
        action: action_spec(params, i0),
        group_order: group.order(),
        p,
        orbits,
    })
}

/// `j0` in `[0, k)` with `y/x = ω^{i0·j0}`, so `s r^{j0}` fixes `(x, y)`.
fn reflection_exponent(
    v: NPoint,
    modulus: ff::PrimeModulus,
    log_zeta: &BTreeMap<u64, usize>,
) -> usize {
    let fx = FpScalar::from_residue(v.x, modulus);
    let fy = FpScalar::from_residue(v.y, modulus);
    log_zeta[&(fy * fx.inv().unwrap()).value()]
}

pub fn fusion_numbers<E>(orbit_set: &FusionOrbitSet<E>) -> FusionNumbers {
    let mut counts = BTreeMap::new();
    for o in &orbit_set.orbits {
        *counts.entry(o.size).or_insert(0) += 1;
    }
    FusionNumbers { counts }
}

/// `{1 ↦ 1, k ↦ p−1, 2k ↦ (p−1)(p+1−k)/(2k)}`. Errors if the last entry is
/// not integral.
pub fn fusion_numbers_closed_form(n: usize, p: u64, i0: usize) -> Result<FusionNumbers> {
    let k = orbit_parameter(n, i0) as u64;
    let num = (p - 1) * (p + 1 - k);
    if num % (2 * k) != 0 {
        return Err(Error::InvariantViolation(format!(
            "(p-1)(p+1-k) = {num} not divisible by 2k = {}",
            2 * k
        )));
    }
    let mut counts = BTreeMap::new();
    counts.insert(1, 1);
    *counts.entry(k as usize).or_insert(0) += (p - 1) as usize;
    let big = (num / (2 * k)) as usize;
    if big > 0 {
        *counts.entry(2 * k as usize).or_insert(0) += big;
    }
    Ok(FusionNumbers { counts })
}

/// θᵢ and θ_{i0} have the same fusion iff `gcd(i, n) = gcd(i0, n)`.
pub fn same_fusion(params: &DihedralParams, i: usize, i0: usize) -> Result<bool> {
    params.check_index(i)?;
    params.check_index(i0)?;
    let n = params.n() as u64;
    Ok(ff::gcd(i as u64, n) == ff::gcd(i0 as u64, n))
}

/// Multiset of orbit sizes, for comparing fusion across actions.
pub fn orbit_size_multiset<E>(orbit_set: &FusionOrbitSet<E>) -> Vec<usize> {
    let mut sizes: Vec<usize> = orbit_set.orbits.iter().map(|o| o.size).collect();
    sizes.sort_unstable();
    sizes
}

/// The stabilizer of the representative, expanded from its generators.
pub fn stabilizer_subgroup(group: &DihedralGroup, orbit: &FusionOrbit<GroupElement>) -> Subgroup {
    Subgroup::generated_by(group, &orbit.stabilizer_gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: usize, p: u64) -> DihedralParams {
        DihedralParams::new(n, p).unwrap()
    }

    #[test]
    fn act_examples() {
        let params = pr(3, 7);
        let g = params.group();
        assert_eq!(act(&params, 1, g.r(), NPoint::new(1, 1)), Ok(NPoint::new(2, 4)));
        assert_eq!(act(&params, 1, g.s(), NPoint::new(3, 5)), Ok(NPoint::new(5, 3)));
        assert_eq!(act(&params, 1, g.r(), NPoint::ZERO), Ok(NPoint::ZERO));
    }

    #[test]
    fn bruteforce_examples() {
        let set = fusion_orbits_bruteforce(&pr(3, 7), 1).unwrap();
        set.check_invariants().unwrap();
        assert_eq!(set.orbit_of(NPoint::ZERO).unwrap().size, 1);
        assert_eq!(set.orbits.len(), 12);
        let set = fusion_orbits_bruteforce(&pr(6, 7), 1).unwrap();
        assert_eq!(set.orbit_of(NPoint::new(1, 0)).unwrap().size, 12);
    }

    #[test]
    fn closed_form_examples() {
        let set = fusion_orbits_closed_form(&pr(3, 7), 1).unwrap();
        set.check_invariants().unwrap();
        let o = set.orbit_of(NPoint::new(1, 1)).unwrap();
        assert_eq!(
            o.elements,
            BTreeSet::from([NPoint::new(1, 1), NPoint::new(2, 4), NPoint::new(4, 2)])
        );
        assert_eq!(o.stabilizer_order, 2);
        let o = set.orbit_of(NPoint::new(1, 0)).unwrap();
        assert_eq!((o.size, o.stabilizer_order), (6, 1));
        assert!(o.stabilizer_gens.is_empty());

        // n=6, p=7, i0=2: k=3, ⟨ω²⟩ = {1,2,4} contains 2, so (1,2) has orbit size 3
        let params = pr(6, 7);
        let set = fusion_orbits_closed_form(&params, 2).unwrap();
        assert_eq!(orbit_parameter(6, 2), 3);
        assert_eq!(set.orbit_of(NPoint::new(1, 2)).unwrap().size, 3);
    }

    #[test]
    fn closed_form_stabilizers_fix_representative() {
        for (n, p) in [(3, 7), (6, 7), (8, 17), (12, 13), (9, 19)] {
            let params = pr(n, p);
            let group = params.group();
            for i0 in params.irr2_indices() {
                let set = fusion_orbits_closed_form(&params, i0).unwrap();
                for o in &set.orbits {
                    let stab = stabilizer_subgroup(&group, o);
                    assert_eq!(stab.order, o.stabilizer_order);
                    for &g in &stab.elements {
                        assert_eq!(act(&params, i0, g, o.representative).unwrap(), o.representative);
                    }
                }
            }
        }
    }

    #[test]
    fn fusion_number_examples() {
        let bf = fusion_numbers(&fusion_orbits_bruteforce(&pr(3, 7), 1).unwrap());
        assert_eq!(bf.counts, BTreeMap::from([(1, 1), (3, 6), (6, 5)]));
        assert_eq!(fusion_numbers_closed_form(3, 7, 1).unwrap(), bf);
        let bf = fusion_numbers(&fusion_orbits_bruteforce(&pr(6, 7), 1).unwrap());
        assert_eq!(bf.counts, BTreeMap::from([(1, 1), (6, 6), (12, 1)]));
        assert_eq!(bf.weighted_total(), 49);
    }

    #[test]
    fn same_fusion_examples() {
        let params = pr(12, 13);
        assert_eq!(same_fusion(&params, 1, 5), Ok(true));
        assert_eq!(same_fusion(&params, 1, 3), Ok(false));
        assert_eq!(same_fusion(&params, 2, 4), Ok(false));
        assert!(same_fusion(&params, 6, 1).is_err());
    }

    #[test]
    fn bruteforce_guard() {
        let params = DihedralParams::smallest(3).unwrap();
        let big = DihedralParams::new(3, 1009).unwrap();
        assert!(fusion_orbits_bruteforce(&params, 1).is_ok());
        assert!(matches!(
            fusion_orbits_bruteforce(&big, 1),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
