//! Abelian G acting diagonally on N = 𝔽ₚ² through a pair of characters
//! φ = (θ₁, θ₂).
//!
//! G = ℤ/m₁ × … × ℤ/m_r; group elements are indexed in mixed radix with
//! the first factor most significant, so index 0 is the identity.

use std::collections::BTreeSet;
use std::fmt;

use crate::cohomology::{self, CohomologyDims, GModule};
use crate::deformation::UdrClass;
use crate::error::{Error, Result};
use crate::ff::{self, FpMatrix, FpScalar, PrimeModulus};
use crate::fusion::{self, ActionSpec, FusionNumbers, FusionOrbitSet, NPoint};

/// Guard for [`abelian_orbits_bruteforce`]: `|G|·p² <= 10⁶`.
pub const ABELIAN_BRUTE_FORCE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianParams {
    cyclic_orders: Vec<usize>,
    p: PrimeModulus,
}

impl AbelianParams {
    /// Requires every `mᵢ >= 1` and `exponent(G) | p − 1`.
    pub fn new(cyclic_orders: Vec<usize>, p: u64) -> Result<Self> {
        if cyclic_orders.is_empty() || cyclic_orders.contains(&0) {
            return Err(Error::InvalidParams(format!(
                "cyclic orders must be nonempty and positive, got {cyclic_orders:?}"
            )));
        }
        let p = PrimeModulus::new(p)?;
        let e = exponent(&cyclic_orders);
        if (p.get() - 1) % e as u64 != 0 {
            return Err(Error::NoRootOfUnity { p: p.get(), n: e as u64 });
        }
        Ok(Self { cyclic_orders, p })
    }

    /// Smallest valid prime for the given orders.
    pub fn smallest(cyclic_orders: Vec<usize>) -> Result<Self> {
        let e = exponent(&cyclic_orders);
        let p = if e < 3 { 3 } else { ff::find_prime(e as u64, 3)? };
        Self::new(cyclic_orders, p)
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().product()
    }

    pub fn exponents(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.cyclic_orders.len()];
        for (k, &m) in self.cyclic_orders.iter().enumerate().rev() {
            out[k] = index % m;
            index /= m;
        }
        out
    }

    pub fn index_of(&self, exps: &[usize]) -> usize {
        self.cyclic_orders
            .iter()
            .zip(exps)
            .fold(0, |acc, (&m, &e)| acc * m + e % m)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (self.exponents(a), self.exponents(b));
        let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        self.index_of(&sum)
    }

    /// Element as a word `g1^a g2^b …`; `e` for the identity.
    pub fn word(&self, index: usize) -> String {
        let parts: Vec<String> = self
            .exponents(index)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| {
                if e == 1 {
                    format!("g{}", k + 1)
                } else {
                    format!("g{}^{e}", k + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }

    /// Greedy generating set of the subgroup with the given elements.
    pub fn generators_of(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [0].into();
        for &g in elements {
            if span.contains(&g) {
                continue;
            }
            gens.push(g);
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                let y = self.add(x, g);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
        gens
    }

    /// All characters of G, in the order of their generator images.
    pub fn characters(&self) -> Vec<Character> {
        let p = self.p;
        let per_gen: Vec<Vec<FpScalar>> = self
            .cyclic_orders
            .iter()
            .map(|&m| {
                (1..p.get())
                    .map(|v| FpScalar::from_residue(v, p))
                    .filter(|x| x.pow(m as u64).is_one())
                    .collect()
            })
            .collect();
        let mut out = vec![Vec::new()];
        for choices in &per_gen {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<FpScalar>| {
                    choices.iter().map(move |&c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|images| Character { images }).collect()
    }
}

fn exponent(orders: &[usize]) -> usize {
    orders
        .iter()
        .fold(1, |acc, &m| acc / ff::gcd(acc as u64, m as u64) as usize * m)
}

/// A character `G → 𝔽ₚ*`, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub images: Vec<FpScalar>,
}

impl Character {
    pub fn new(params: &AbelianParams, images: &[u64]) -> Result<Self> {
        if images.len() != params.cyclic_orders.len() {
            return Err(Error::InvalidParams(format!(
                "{} generator images for {} cyclic factors",
                images.len(),
                params.cyclic_orders.len()
            )));
        }
        let images: Vec<FpScalar> = images
            .iter()
            .map(|&v| FpScalar::from_residue(v % params.p(), params.p))
            .collect();
        for (x, &m) in images.iter().zip(&params.cyclic_orders) {
            if !x.pow(m as u64).is_one() {
                return Err(Error::InvalidParams(format!(
                    "{x} does not have order dividing {m} mod {}",
                    params.p
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn trivial(params: &AbelianParams) -> Self {
        Self {
            images: vec![params.p.one(); params.cyclic_orders.len()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|x| x.is_one())
    }

    pub fn inverse(&self) -> Self {
        Self {
            images: self
                .images
                .iter()
                .map(|x| x.inv().expect("root of unity is a unit"))
                .collect(),
        }
    }

    pub fn eval(&self, params: &AbelianParams, index: usize) -> FpScalar {
        params
            .exponents(index)
            .iter()
            .zip(&self.images)
            .fold(params.p.one(), |acc, (&e, &x)| acc * x.pow(e as u64))
    }

    pub fn residues(&self) -> Vec<u64> {
        self.images.iter().map(|x| x.value()).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterPair {
    pub theta1: Character,
    pub theta2: Character,
}

impl CharacterPair {
    pub fn new(theta1: Character, theta2: Character) -> Self {
        Self { theta1, theta2 }
    }

    /// Number of trivial characters among θ₁, θ₂.
    pub fn trivial_count(&self) -> u32 {
        self.theta1.is_trivial() as u32 + self.theta2.is_trivial() as u32
    }

    /// `φ(g) = diag(θ₁(g), θ₂(g))` for every group element.
    pub fn module(&self, params: &AbelianParams) -> Result<GModule> {
        GModule::from_images(
            (0..params.order())
                .map(|g| {
                    FpMatrix::diag(&[self.theta1.eval(params, g), self.theta2.eval(params, g)])
                })
                .collect(),
        )
    }
}

/// `F_{φ,1} = p^j`, j the number of trivial characters in the pair.
pub fn abelian_fixed_count(pair: &CharacterPair, p: u64) -> u64 {
    p.pow(pair.trivial_count())
}

/// Points of N fixed by every element, counted directly.
pub fn fixed_points_bruteforce(params: &AbelianParams, pair: &CharacterPair) -> u64 {
    let p = params.p();
    let vals: Vec<(FpScalar, FpScalar)> = (0..params.order())
        .map(|g| (pair.theta1.eval(params, g), pair.theta2.eval(params, g)))
        .collect();
    let fixes = |x: u64, a: FpScalar| x == 0 || a.is_one();
    let mut count = 0;
    for x in 0..p {
        for y in 0..p {
            if vals.iter().all(|&(a, b)| fixes(x, a) && fixes(y, b)) {
                count += 1;
            }
        }
    }
    count
}

/// `d¹ = j`, `d² = d¹ + [θ₂ = θ₁⁻¹]`, for every one-dimensional V.
pub fn abelian_dims(pair: &CharacterPair) -> CohomologyDims {
    let d1 = pair.trivial_count() as usize;
    let extra = (pair.theta2 == pair.theta1.inverse()) as usize;
    CohomologyDims { d1, d2: d1 + extra }
}

/// The same dimensions through averaging projectors, with coefficient
/// module V* ⊗ V for the given one-dimensional V.
pub fn abelian_dims_by_projector(
    params: &AbelianParams,
    pair: &CharacterPair,
    v: &Character,
) -> Result<CohomologyDims> {
    let phi = pair.module(params)?;
    let v_mod = GModule::from_images(
        (0..params.order())
            .map(|g| FpMatrix::diag(&[v.eval(params, g)]))
            .collect(),
    )?;
    cohomology::dims_for(&phi, &v_mod)
}

pub fn abelian_udr(pair: &CharacterPair) -> UdrClass {
    match abelian_dims(pair).d1 {
        0 => UdrClass::Zp,
        1 => UdrClass::ZpCp,
        _ => UdrClass::ZpCpSquared,
    }
}

/// Orbits of `g·(x, y) = (θ₁(g)x, θ₂(g)y)`; group elements are indices.
pub fn abelian_orbits_bruteforce(
    params: &AbelianParams,
    pair: &CharacterPair,
) -> Result<FusionOrbitSet<usize>> {
    let p = params.p();
    let size = params.order() as u64 * p * p;
    if size > ABELIAN_BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "abelian orbit enumeration (|G| p^2)",
            size,
            limit: ABELIAN_BRUTE_FORCE_LIMIT,
        });
    }
    let vals: Vec<(u64, u64)> = (0..params.order())
        .map(|g| {
            (
                pair.theta1.eval(params, g).value(),
                pair.theta2.eval(params, g).value(),
            )
        })
        .collect();
    let elements: Vec<usize> = (0..params.order()).collect();
    let orbits = fusion::enumerate_orbits(
        p,
        &elements,
        |g, v| {
            let (a, b) = vals[g];
            NPoint::new(a * v.x % p, b * v.y % p)
        },
        |stab| params.generators_of(&stab),
    );
    Ok(FusionOrbitSet {
        action: ActionSpec::Abelian {
            orders: params.cyclic_orders.clone(),
            p,
            theta1: pair.theta1.residues(),
            theta2: pair.theta2.residues(),
        },
        group_order: params.order(),
        p,
        orbits,
    })
}

pub fn abelian_fusion_numbers(params: &AbelianParams, pair: &CharacterPair) -> Result<FusionNumbers> {
    Ok(fusion::fusion_numbers(&abelian_orbits_bruteforce(params, pair)?))
}

/// Two pairs that agree on `F_{φ,1}`, the dimensions and the UDR class but
/// have different orbit partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderDeterminationWitness {
    pub first: CharacterPair,
    pub second: CharacterPair,
    pub fixed_count: u64,
    pub dims: CohomologyDims,
    pub udr: UdrClass,
}

/// Exhaustive search over all pairs of character pairs, in order.
pub fn find_underdetermination_witness(
    params: &AbelianParams,
) -> Result<Option<UnderDeterminationWitness>> {
    let chars = params.characters();
    let pairs: Vec<CharacterPair> = chars
        .iter()
        .flat_map(|a| chars.iter().map(move |b| CharacterPair::new(a.clone(), b.clone())))
        .collect();
    let p = params.p();
    let data = pairs
        .iter()
        .map(|pair| {
            let key = (abelian_fixed_count(pair, p), abelian_dims(pair), abelian_udr(pair));
            Ok((key, abelian_orbits_bruteforce(params, pair)?.partition()))
        })
        .collect::<Result<Vec<_>>>()?;
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            if data[a].0 == data[b].0 && data[a].1 != data[b].1 {
                let (fixed_count, dims, udr) = data[a].0;
                return Ok(Some(UnderDeterminationWitness {
                    first: pairs[a].clone(),
                    second: pairs[b].clone(),
                    fixed_count,
                    dims,
                    udr,
                }));
            }
        }
    }
    Ok(None)
}
