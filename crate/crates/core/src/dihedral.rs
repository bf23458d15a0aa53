//! The dihedral group D₂ₙ = ⟨r, s | rⁿ, s², srs⁻¹r⟩, its two-dimensional
//! representations θᵢ over 𝔽ₚ, the map T(θᵢ) = Ind(χᵢ²) and the set Ω.
//!
//! Representations are identified by their index `i`; matrices are derived
//! on demand in the basis where `r ↦ diag(ωⁱ, ω⁻ⁱ)` and `s ↦ antidiag(1, 1)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::{self, FpMatrix, FpScalar, PrimeModulus};

/// Arithmetic context `(n, p, ω)`: `n >= 3`, `p = 1 (mod n)`, `ord(ω) = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralParams {
    n: usize,
    p: PrimeModulus,
    omega: FpScalar,
}

impl DihedralParams {
    /// Uses the smallest primitive n-th root of unity.
    pub fn new(n: usize, p: u64) -> Result<Self> {
        let p = Self::check(n, p)?;
        let omega = ff::primitive_root_of_unity(p, n as u64)?;
        Ok(Self { n, p, omega })
    }

    pub fn with_omega(n: usize, p: u64, omega: u64) -> Result<Self> {
        let p = Self::check(n, p)?;
        let omega = FpScalar::from_residue(omega, p);
        if !omega.has_order(n as u64) {
            return Err(Error::InvalidParams(format!(
                "{omega} is not a primitive {n}-th root of unity mod {p}"
            )));
        }
        Ok(Self { n, p, omega })
    }

    /// Smallest valid prime for `n`.
    pub fn smallest(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
        }
        Self::new(n, ff::find_prime(n as u64, 3)?)
    }

    fn check(n: usize, p: u64) -> Result<PrimeModulus> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
        }
        let p = PrimeModulus::new(p)?;
        if p.get() % n as u64 != 1 {
            return Err(Error::InvalidParams(format!("p = {p} is not 1 mod n = {n}")));
        }
        Ok(p)
    }

    /// Same `(n, p)` with another primitive root.
    pub fn reroot(&self, omega: FpScalar) -> Result<Self> {
        Self::with_omega(self.n, self.p.get(), omega.value())
    }

    pub fn all_roots(&self) -> Vec<FpScalar> {
        ff::all_primitive_roots_of_unity(self.p, self.n as u64).expect("validated on construction")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p.get()
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn omega(&self) -> FpScalar {
        self.omega
    }

    pub fn group(&self) -> DihedralGroup {
        DihedralGroup { n: self.n }
    }

    /// Indices `1 <= i < n/2` of Irr₂(G).
    pub fn irr2_indices(&self) -> impl Iterator<Item = usize> + Clone {
        irr2_indices(self.n)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        check_index(self.n, i)
    }
}

pub fn irr2_indices(n: usize) -> impl Iterator<Item = usize> + Clone {
    1..=(n.saturating_sub(1) / 2)
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i >= 1 && 2 * i < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, n })
    }
}

/// `sᵇ rᵃ` in canonical form, `0 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub flip: bool,
    pub rot: usize,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { flip: false, rot: 0 };

    pub fn rotation(a: usize) -> Self {
        Self { flip: false, rot: a }
    }

    pub fn reflection(a: usize) -> Self {
        Self { flip: true, rot: a }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.flip, self.rot) {
            (false, 0) => write!(f, "e"),
            (false, 1) => write!(f, "r"),
            (false, a) => write!(f, "r^{a}"),
            (true, 0) => write!(f, "s"),
            (true, 1) => write!(f, "sr"),
            (true, a) => write!(f, "sr^{a}"),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// D₂ₙ with multiplication derived from `r^a s = s r^{-a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralGroup {
    n: usize,
}

impl DihedralGroup {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        2 * self.n
    }

    pub fn r(&self) -> GroupElement {
        GroupElement::rotation(1 % self.n)
    }

    pub fn s(&self) -> GroupElement {
        GroupElement::reflection(0)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let n = self.n;
        let carried = if b.flip { (n - a.rot) % n } else { a.rot };
        GroupElement {
            flip: a.flip ^ b.flip,
            rot: (carried + b.rot) % n,
        }
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        if a.flip {
            a
        } else {
            GroupElement::rotation((self.n - a.rot) % self.n)
        }
    }

    /// All 2n elements: rotations first, then reflections, each by exponent.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.n)
            .map(GroupElement::rotation)
            .chain((0..self.n).map(GroupElement::reflection))
            .collect()
    }

    /// Position of `g` in [`Self::elements`].
    pub fn index_of(&self, g: GroupElement) -> usize {
        g.rot + if g.flip { self.n } else { 0 }
    }

    pub fn center(&self) -> Subgroup {
        let gens = [self.r(), self.s()];
        let elems = self
            .elements()
            .into_iter()
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_elements(self, elems)
    }
}

/// A subgroup of D₂ₙ, compared by its element set. `generators` is a
/// greedy generating set and carries no identity.
#[derive(Debug, Clone, Serialize)]
pub struct Subgroup {
    pub order: usize,
    pub generators: Vec<GroupElement>,
    #[serde(skip)]
    pub elements: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn generated_by(group: &DihedralGroup, gens: &[GroupElement]) -> Self {
        let elements = closure(group, gens);
        let generators = gens.iter().copied().filter(|g| *g != GroupElement::IDENTITY).collect();
        Self {
            order: elements.len(),
            generators,
            elements,
        }
    }

    /// `elems` must already be closed under multiplication.
    pub fn from_elements(group: &DihedralGroup, mut elems: Vec<GroupElement>) -> Self {
        elems.sort();
        elems.dedup();
        let mut generators = Vec::new();
        let mut span = vec![GroupElement::IDENTITY];
        for &g in &elems {
            if span.binary_search(&g).is_err() {
                generators.push(g);
                span = closure(group, &generators);
            }
        }
        debug_assert_eq!(span, elems, "element list is not a subgroup");
        Self {
            order: elems.len(),
            generators,
            elements: elems,
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order)
    }
}

fn closure(group: &DihedralGroup, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen = BTreeSet::from([GroupElement::IDENTITY]);
    let mut queue = VecDeque::from([GroupElement::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OneDimChar {
    Trivial,
    Sign,
}

/// Identity of a 2-dimensional (or, for bookkeeping, 1-dimensional)
/// representation of D₂ₙ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepLabel {
    /// θᵢ with `1 <= i < n/2`.
    Irr2(usize),
    /// Ind(χⱼ) with `2j = 0 (mod n)`, `j != 0`; splits as two characters.
    ReducibleInd(usize),
    OneDim(OneDimChar),
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Irr2(i) => write!(f, "theta_{i}"),
            RepLabel::ReducibleInd(j) => write!(f, "Ind(chi_{j})"),
            RepLabel::OneDim(OneDimChar::Trivial) => write!(f, "trivial"),
            RepLabel::OneDim(OneDimChar::Sign) => write!(f, "chi_1"),
        }
    }
}

impl Serialize for RepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Label of Ind(χⱼ) for `j != 0 (mod n)`.
pub fn induced_label(n: usize, j: usize) -> RepLabel {
    let j = j % n;
    if 2 * j == n {
        RepLabel::ReducibleInd(j)
    } else if 2 * j < n {
        RepLabel::Irr2(j)
    } else {
        RepLabel::Irr2(n - j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep2 {
    pub label: RepLabel,
    pub mat_r: FpMatrix,
    pub mat_s: FpMatrix,
}

impl Rep2 {
    /// θᵢ in the fixed basis.
    pub fn theta(params: &DihedralParams, i: usize) -> Result<Self> {
        params.check_index(i)?;
        Ok(Self::induced(params, i))
    }

    /// Ind(χⱼ) in the basis `r ↦ diag(ωʲ, ω⁻ʲ)`, `s ↦ antidiag(1, 1)`.
    pub fn induced(params: &DihedralParams, j: usize) -> Self {
        let p = params.modulus();
        let w = params.omega().pow(j as u64);
        let w_inv = w.inv().expect("root of unity is a unit");
        Self {
            label: induced_label(params.n(), j),
            mat_r: FpMatrix::diag(&[w, w_inv]),
            mat_s: FpMatrix::from_rows(p, &[vec![0, 1], vec![1, 0]]).expect("2x2"),
        }
    }

    /// `mat_s^b · mat_r^a` for `g = sᵇ rᵃ`.
    pub fn matrix(&self, g: GroupElement) -> FpMatrix {
        let rot = self.mat_r.pow(g.rot as u64);
        if g.flip {
            self.mat_s.mul(&rot)
        } else {
            rot
        }
    }

    pub fn satisfies_relations(&self, n: usize) -> bool {
        let s_inv = match self.mat_s.inverse() {
            Ok(m) => m,
            Err(_) => return false,
        };
        self.mat_r.pow(n as u64).is_identity()
            && self.mat_s.pow(2).is_identity()
            && self.mat_s.mul(&self.mat_r).mul(&s_inv).mul(&self.mat_r).is_identity()
    }
}

/// [θ₁, …, θ_{⌈n/2⌉−1}] in index order.
pub fn irr2_reps(params: &DihedralParams) -> Vec<Rep2> {
    params
        .irr2_indices()
        .map(|i| Rep2::induced(params, i))
        .collect()
}

pub fn rep_matrix(rep: &Rep2, g: GroupElement) -> FpMatrix {
    rep.matrix(g)
}

/// T(θᵢ) = Ind(χᵢ²) = Ind(χ_{2i}).
pub fn t_map(params: &DihedralParams, i: usize) -> Result<RepLabel> {
    params.check_index(i)?;
    Ok(t_label(params.n(), i))
}

fn t_label(n: usize, i: usize) -> RepLabel {
    let two_i = 2 * i;
    if 2 * two_i < n {
        RepLabel::Irr2(two_i)
    } else if 2 * two_i == n {
        RepLabel::ReducibleInd(two_i)
    } else {
        RepLabel::Irr2(n - two_i)
    }
}

/// Ω: all of Irr₂ for odd n, Irr₂ ∩ T(Irr₂) for even n.
pub fn omega_set(params: &DihedralParams) -> BTreeSet<usize> {
    omega_indices(params.n())
}

pub fn omega_indices(n: usize) -> BTreeSet<usize> {
    if n % 2 == 1 {
        irr2_indices(n).collect()
    } else {
        irr2_indices(n)
            .filter_map(|i| match t_label(n, i) {
                RepLabel::Irr2(j) => Some(j),
                _ => None,
            })
            .collect()
    }
}

pub fn in_omega(n: usize, i: usize) -> bool {
    check_index(n, i).is_ok() && (n % 2 == 1 || i % 2 == 0)
}

/// T⁻¹(θ_{i0}), found by scanning Irr₂.
pub fn t_preimage(params: &DihedralParams, i0: usize) -> Result<BTreeSet<usize>> {
    params.check_index(i0)?;
    let n = params.n();
    if !omega_set(params).contains(&i0) {
        return Err(Error::NotInOmega { index: i0, n });
    }
    let pre: BTreeSet<usize> = params
        .irr2_indices()
        .filter(|&i| t_label(n, i) == RepLabel::Irr2(i0))
        .collect();
    let expected = if n % 2 == 1 { 1 } else { 2 };
    if pre.len() != expected {
        return Err(Error::InvariantViolation(format!(
            "|T^-1(theta_{i0})| = {} for n = {n}",
            pre.len()
        )));
    }
    Ok(pre)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelInvariant {
    pub gcd: usize,
    pub kernel: Subgroup,
}

/// `gcd(i, n)` and `ker θᵢ = ⟨r^{n/gcd}⟩`. The closed form is checked
/// against a scan of all 2n matrices.
pub fn kernel_invariant(params: &DihedralParams, i: usize) -> Result<KernelInvariant> {
    params.check_index(i)?;
    let n = params.n();
    let g = ff::gcd(i as u64, n as u64) as usize;
    let group = params.group();
    let kernel = Subgroup::generated_by(&group, &[GroupElement::rotation((n / g) % n)]);
    let scanned = kernel_by_scan(params, &Rep2::induced(params, i));
    if scanned != kernel {
        return Err(Error::InvariantViolation(format!(
            "kernel of theta_{i}: scan gives {scanned}, closed form {kernel}"
        )));
    }
    Ok(KernelInvariant { gcd: g, kernel })
}

pub fn kernel_by_scan(params: &DihedralParams, rep: &Rep2) -> Subgroup {
    let group = params.group();
    let elems = group
        .elements()
        .into_iter()
        .filter(|&g| rep.matrix(g).is_identity())
        .collect();
    Subgroup::from_elements(&group, elems)
}

/// Whether θ_{i0} is trivial on Z(G), decided from the matrices.
pub fn center_acts_trivially(params: &DihedralParams, i0: usize) -> Result<bool> {
    params.check_index(i0)?;
    let rep = Rep2::induced(params, i0);
    Ok(params
        .group()
        .center()
        .elements
        .iter()
        .all(|&z| rep.matrix(z).is_identity()))
}
