//! Dimensions of H¹ and H² of Γ with coefficients in Hom(V, V).
//!
//! With 𝔽ₚG semisimple these reduce to fixed-point dimensions:
//!
//! ```text
//! d¹ = dim (V_φ̃ ⊗ V*⊗V)^G
//! d² = d¹ + dim (V_{det∘φ̃} ⊗ V*⊗V)^G
//! ```
//!
//! Fixed points are measured as the rank of the averaging idempotent
//! `(1/|G|) Σ_g g`, which is exact for any multiplicity.

mod oracle;

use std::collections::BTreeSet;

use serde::Serialize;

pub use oracle::{d1_oracle_cocycles, ORACLE_LIMIT};

use crate::dihedral::{self, DihedralParams, Rep2};
use crate::error::{Error, Result};
use crate::ff::{FpMatrix, FpScalar, PrimeModulus};

/// A finite-dimensional 𝔽ₚG-module, stored as the image of every group
/// element in a fixed enumeration of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    dim: usize,
    modulus: PrimeModulus,
    images: Vec<FpMatrix>,
}

impl GModule {
    /// `images[k]` is the action of the k-th group element.
    pub fn from_images(images: Vec<FpMatrix>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::DimensionMismatch("module over the empty group".into()))?;
        let (dim, modulus) = (first.rows(), first.modulus());
        if images
            .iter()
            .any(|m| m.rows() != dim || m.cols() != dim || m.modulus() != modulus)
        {
            return Err(Error::DimensionMismatch("inconsistent action matrices".into()));
        }
        Ok(Self {
            dim,
            modulus,
            images,
        })
    }

    /// D₂ₙ-module from generator matrices; checks the presentation relations.
    pub fn dihedral(params: &DihedralParams, mat_r: &FpMatrix, mat_s: &FpMatrix) -> Result<Self> {
        let n = params.n();
        let s_inv = mat_s.inverse()?;
        if !(mat_r.pow(n as u64).is_identity()
            && mat_s.pow(2).is_identity()
            && mat_s.mul(mat_r).mul(&s_inv).mul(mat_r).is_identity())
        {
            return Err(Error::InvariantViolation(
                "generator matrices violate the dihedral relations".into(),
            ));
        }
        let images = params
            .group()
            .elements()
            .into_iter()
            .map(|g| {
                let rot = mat_r.pow(g.rot as u64);
                if g.flip {
                    mat_s.mul(&rot)
                } else {
                    rot
                }
            })
            .collect();
        Self::from_images(images)
    }

    pub fn from_rep(params: &DihedralParams, rep: &Rep2) -> Result<Self> {
        Self::dihedral(params, &rep.mat_r, &rep.mat_s)
    }

    pub fn trivial(params: &DihedralParams, dim: usize) -> Self {
        let id = FpMatrix::identity(dim, params.modulus());
        Self {
            dim,
            modulus: params.modulus(),
            images: vec![id; 2 * params.n()],
        }
    }

    /// The sign character χ₁: `r ↦ 1`, `s ↦ −1`.
    pub fn sign(params: &DihedralParams) -> Self {
        let p = params.modulus();
        let one = FpMatrix::identity(1, p);
        let minus = one.scale(p.elem(-1));
        Self::dihedral(params, &one, &minus).expect("sign character")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn group_order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn images(&self) -> &[FpMatrix] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &FpMatrix {
        &self.images[k]
    }

    pub fn character(&self) -> Vec<FpScalar> {
        self.images.iter().map(FpMatrix::trace).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group_order() != other.group_order() || self.modulus != other.modulus {
            return Err(Error::DimensionMismatch(
                "modules over different groups or fields".into(),
            ));
        }
        Ok(())
    }
}

/// Dual module: `g ↦ (action(g)⁻¹)ᵀ`.
pub fn contragredient(m: &GModule) -> Result<GModule> {
    let images = m
        .images
        .iter()
        .map(|a| {
            a.inverse()
                .map(|inv| inv.transpose())
                .map_err(|_| Error::InvariantViolation("singular action matrix".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    GModule::from_images(images)
}

/// Kronecker-product action on `a ⊗ b`.
pub fn tensor(a: &GModule, b: &GModule) -> Result<GModule> {
    a.check_compatible(b)?;
    GModule::from_images(a.images.iter().zip(&b.images).map(|(x, y)| x.kron(y)).collect())
}

/// `g ↦ det(action(g))` for a 2-dimensional module.
pub fn det_module(m: &GModule) -> Result<GModule> {
    if m.dim != 2 {
        return Err(Error::DimensionMismatch(format!(
            "det_module needs dimension 2, got {}",
            m.dim
        )));
    }
    let images = m
        .images
        .iter()
        .map(|a| a.determinant().map(|d| FpMatrix::diag(&[d])))
        .collect::<Result<Vec<_>>>()?;
    GModule::from_images(images)
}

/// V* ⊗ V ≅ Hom(V, V).
pub fn adjoint(v: &GModule) -> Result<GModule> {
    tensor(&contragredient(v)?, v)
}

/// The averaging idempotent `(1/|G|) Σ_g action(g)`. Requires `p ∤ |G|`.
pub fn averaging_projector(m: &GModule) -> Result<FpMatrix> {
    let order = m.modulus.elem(m.group_order() as i64);
    let inv = order.inv().ok_or_else(|| {
        Error::InvalidParams(format!("p = {} divides |G| = {}", m.modulus, m.group_order()))
    })?;
    let sum = m
        .images
        .iter()
        .skip(1)
        .fold(m.images[0].clone(), |acc, x| acc.add(x));
    Ok(sum.scale(inv))
}

/// `dim m^G` as the rank of the averaging idempotent.
pub fn fixed_point_dim(m: &GModule) -> Result<usize> {
    Ok(averaging_projector(m)?.rank())
}

/// `(1/|G|) Σ_g trace(g)` reduced mod p; equals `dim m^G` when that is `< p`.
pub fn fixed_point_dim_by_character(m: &GModule) -> Result<u64> {
    let p = m.modulus;
    let total = m.character().into_iter().fold(p.zero(), |a, b| a + b);
    let inv = p
        .elem(m.group_order() as i64)
        .inv()
        .ok_or_else(|| Error::InvalidParams("p divides |G|".into()))?;
    Ok((total * inv).value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyDims {
    pub d1: usize,
    pub d2: usize,
}

/// `(d¹, d²)` for the action module `phi` on N and the coefficient module `v`.
/// `phi` must be 2-dimensional (N of rank 2).
pub fn dims_for(phi: &GModule, v: &GModule) -> Result<CohomologyDims> {
    let phi_dual = contragredient(phi)?;
    let ad = adjoint(v)?;
    let d1 = fixed_point_dim(&tensor(&phi_dual, &ad)?)?;
    let wedge = det_module(&phi_dual)?;
    let extra = fixed_point_dim(&tensor(&wedge, &ad)?)?;
    Ok(CohomologyDims { d1, d2: d1 + extra })
}

/// `φ = θ_{i0}`, `V = θ_j`.
pub fn dims(params: &DihedralParams, i0: usize, j: usize) -> Result<CohomologyDims> {
    let phi = GModule::from_rep(params, &Rep2::theta(params, i0)?)?;
    let v = GModule::from_rep(params, &Rep2::theta(params, j)?)?;
    dims_for(&phi, &v)
}

/// `{j : d²_{V_j}` is maximal over Irr₂`}` for the action θ_{i0}.
pub fn cohomologically_maximal_set(params: &DihedralParams, i0: usize) -> Result<BTreeSet<usize>> {
    params.check_index(i0)?;
    let table = params
        .irr2_indices()
        .map(|j| dims(params, i0, j).map(|d| (j, d.d2)))
        .collect::<Result<Vec<_>>>()?;
    let best = table.iter().map(|&(_, d2)| d2).max().unwrap_or(0);
    Ok(table
        .into_iter()
        .filter(|&(_, d2)| d2 == best)
        .map(|(j, _)| j)
        .collect())
}

/// Checks `V*⊗V ≅ 𝔽ₚ ⊕ V_{χ₁} ⊕ V_{T(θᵢ)}` for `V = θᵢ` by characters on all
/// 2n elements, and checks that the spans of `I`, `diag(1,−1)` and
/// `{E₁₂, E₂₁}` inside M₂(𝔽ₚ) are stable under conjugation with the
/// expected actions.
pub fn adjoint_decomposition_check(params: &DihedralParams, i: usize) -> Result<bool> {
    let label = dihedral::t_map(params, i)?;
    let rep = Rep2::theta(params, i)?;
    let v = GModule::from_rep(params, &rep)?;
    let ad = adjoint(&v)?;
    // Ind(χ_{2i}) in the basis where span{f, g} realizes it directly
    let t_rep = Rep2::induced(params, 2 * i);
    if t_rep.label != label {
        return Ok(false);
    }
    let t_mod = GModule::from_rep(params, &t_rep)?;
    let sign = GModule::sign(params);
    let p = params.modulus();

    let characters_agree = (0..ad.group_order()).all(|k| {
        let rhs = p.one() + sign.image(k).trace() + t_mod.image(k).trace();
        ad.image(k).trace() == rhs
    });

    // explicit spans under X ↦ ρ(g) X ρ(g)⁻¹
    let m = |rows: &[Vec<i64>]| FpMatrix::from_rows(p, rows).expect("2x2");
    let ident = m(&[vec![1, 0], vec![0, 1]]);
    let h = m(&[vec![1, 0], vec![0, -1]]);
    let f = m(&[vec![0, 1], vec![0, 0]]);
    let g = m(&[vec![0, 0], vec![1, 0]]);
    let group = params.group();
    let spans_ok = group.elements().into_iter().all(|el| {
        let a = rep.matrix(el);
        let a_inv = a.inverse().expect("invertible");
        let conj = |x: &FpMatrix| a.mul(x).mul(&a_inv);
        let k = group.index_of(el);
        let chi = sign.image(k).get(0, 0);
        // action of el on span{f, g} must be t_rep(el) in the basis (f, g)
        let t = t_rep.matrix(el);
        let expect_f = f.scale(t.get(0, 0)).add(&g.scale(t.get(1, 0)));
        let expect_g = f.scale(t.get(0, 1)).add(&g.scale(t.get(1, 1)));
        conj(&ident) == ident
            && conj(&h) == h.scale(chi)
            && conj(&f) == expect_f
            && conj(&g) == expect_g
    });
    Ok(characters_agree && spans_ok)
}
