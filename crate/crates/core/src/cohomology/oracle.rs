//! dim H¹(Γ, Hom(V,V)) straight from a presentation of Γ = N ⋊ D₂ₙ.
//!
//! Γ is generated by `a = (1,0)`, `b = (0,1)` in N and `r`, `s` in G. A
//! 1-cocycle is fixed by its values on these four generators (16 unknowns
//! in M = M₂(𝔽ₚ)); each relator `w` must satisfy `d(w) = 0`, expanded with
//! `d(xy) = d(x) + x·d(y)`. Then `dim H¹ = dim Z¹ − dim B¹` with
//! `dim B¹ = dim M − dim M^Γ`.
//!
//! Nothing here goes through fixed-point projectors or the tensor
//! decomposition used by [`super::dims`].

use crate::dihedral::{DihedralParams, Rep2};
use crate::error::{Error, Result};
use crate::ff::FpMatrix;

/// Guard on `|Γ| = 2n·p²`.
pub const ORACLE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gen {
    A,
    B,
    R,
    S,
}

const GENS: [Gen; 4] = [Gen::A, Gen::B, Gen::R, Gen::S];

type Word = Vec<(Gen, i64)>;

/// `d1_oracle_cocycles(params, i0, j)`: Γ built from the action θ_{i0},
/// coefficients Hom(θ_j, θ_j).
pub fn d1_oracle_cocycles(params: &DihedralParams, i0: usize, j: usize) -> Result<usize> {
    let n = params.n();
    let p = params.p();
    let size = 2 * n as u64 * p * p;
    if size > ORACLE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "cocycle oracle (|Gamma| = 2n p^2)",
            size,
            limit: ORACLE_LIMIT,
        });
    }
    let phi = Rep2::theta(params, i0)?;
    let v = Rep2::theta(params, j)?;

    // action of each generator on M = M₂(𝔽ₚ), basis E11, E12, E21, E22
    let m_r = conjugation_action(&v.mat_r)?;
    let m_s = conjugation_action(&v.mat_s)?;
    let id4 = FpMatrix::identity(4, params.modulus());
    let action = |g: Gen| match g {
        Gen::A | Gen::B => id4.clone(),
        Gen::R => m_r.clone(),
        Gen::S => m_s.clone(),
    };

    let relators = relators(n, &phi);
    let mut blocks = Vec::with_capacity(relators.len());
    for w in &relators {
        blocks.push(fox_row(w, &action, params)?);
    }
    let system = FpMatrix::vstack(&blocks)?;
    let cocycles = system.nullity();

    let invariants = FpMatrix::vstack(&[m_r.sub(&id4), m_s.sub(&id4)])?.nullity();
    let coboundaries = 4 - invariants;
    cocycles
        .checked_sub(coboundaries)
        .ok_or_else(|| Error::InvariantViolation("dim Z^1 < dim B^1".into()))
}

/// `X ↦ A X A⁻¹` on M₂(𝔽ₚ) as a 4×4 matrix.
fn conjugation_action(a: &FpMatrix) -> Result<FpMatrix> {
    let p = a.modulus();
    let a_inv = a.inverse()?;
    let mut out = FpMatrix::zeros(4, 4, p);
    for col in 0..4 {
        let mut e = FpMatrix::zeros(2, 2, p);
        e.set(col / 2, col % 2, p.one());
        let img = a.mul(&e).mul(&a_inv);
        for row in 0..4 {
            out.set(row, col, img.get(row / 2, row % 2));
        }
    }
    Ok(out)
}

fn relators(n: usize, phi: &Rep2) -> Vec<Word> {
    let p = phi.mat_r.modulus().get() as i64;
    let e = |m: &FpMatrix, i: usize, j: usize| m.get(i, j).value() as i64;
    let mut out: Vec<Word> = vec![
        vec![(Gen::A, p)],
        vec![(Gen::B, p)],
        vec![(Gen::A, 1), (Gen::B, 1), (Gen::A, -1), (Gen::B, -1)],
        vec![(Gen::R, n as i64)],
        vec![(Gen::S, 2)],
        vec![(Gen::S, 1), (Gen::R, 1), (Gen::S, 1), (Gen::R, 1)],
    ];
    // x a x⁻¹ = a^{m00} b^{m10},  x b x⁻¹ = a^{m01} b^{m11}
    for (g, m) in [(Gen::R, &phi.mat_r), (Gen::S, &phi.mat_s)] {
        for (col, n_gen) in [(0, Gen::A), (1, Gen::B)] {
            out.push(vec![
                (g, 1),
                (n_gen, 1),
                (g, -1),
                (Gen::B, -e(m, 1, col)),
                (Gen::A, -e(m, 0, col)),
            ]);
        }
    }
    out
}

/// The 4×16 block `[∂w/∂a | ∂w/∂b | ∂w/∂r | ∂w/∂s]` evaluated in M.
fn fox_row(
    word: &Word,
    action: &impl Fn(Gen) -> FpMatrix,
    params: &DihedralParams,
) -> Result<FpMatrix> {
    let p = params.modulus();
    let mut coeff: Vec<FpMatrix> = GENS.iter().map(|_| FpMatrix::zeros(4, 4, p)).collect();
    let mut prefix = FpMatrix::identity(4, p);
    for &(g, exp) in word {
        let k = GENS.iter().position(|&x| x == g).unwrap();
        let act = action(g);
        if exp >= 0 {
            for _ in 0..exp {
                coeff[k] = coeff[k].add(&prefix);
                prefix = prefix.mul(&act);
            }
        } else {
            let inv = act.inverse()?;
            for _ in 0..exp.unsigned_abs() {
                prefix = prefix.mul(&inv);
                coeff[k] = coeff[k].sub(&prefix);
            }
        }
    }
    let mut row = FpMatrix::zeros(4, 16, p);
    for (k, c) in coeff.iter().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                row.set(i, 4 * k + j, c.get(i, j));
            }
        }
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: usize, p: u64) -> DihedralParams {
        DihedralParams::new(n, p).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(d1_oracle_cocycles(&pr(3, 7), 1, 1), Ok(1));
        assert_eq!(d1_oracle_cocycles(&pr(4, 5), 1, 1), Ok(0));
        assert_eq!(d1_oracle_cocycles(&pr(6, 7), 2, 2), Ok(1));
    }

    #[test]
    fn oracle_guard() {
        // 2·3·31² = 5766 fits, 2·3·43² = 11094 does not
        assert!(d1_oracle_cocycles(&pr(3, 31), 1, 1).is_ok());
        assert!(matches!(
            d1_oracle_cocycles(&pr(3, 43), 1, 1),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn conjugation_matches_definition() {
        let params = pr(5, 11);
        let v = Rep2::theta(&params, 2).unwrap();
        let m = conjugation_action(&v.mat_r).unwrap();
        // E12 ↦ ω^{2i} E12 with i = 2
        let w4 = params.omega().pow(4);
        assert_eq!(m.get(1, 1), w4);
        assert_eq!(m.get(0, 0).value(), 1);
    }

    #[test]
    fn group_ring_dimension_without_n() {
        // Sanity: H¹ of G alone with semisimple coefficients vanishes, so every
        // cocycle on {r, s} is a coboundary; the system restricted to the
        // G-relators has nullity exactly dim B¹.
        let params = pr(5, 11);
        let v = Rep2::theta(&params, 1).unwrap();
        let m_r = conjugation_action(&v.mat_r).unwrap();
        let m_s = conjugation_action(&v.mat_s).unwrap();
        let id4 = FpMatrix::identity(4, params.modulus());
        let action = |g: Gen| match g {
            Gen::A | Gen::B => id4.clone(),
            Gen::R => m_r.clone(),
            Gen::S => m_s.clone(),
        };
        let words: Vec<Word> = vec![
            vec![(Gen::R, 5)],
            vec![(Gen::S, 2)],
            vec![(Gen::S, 1), (Gen::R, 1), (Gen::S, 1), (Gen::R, 1)],
            vec![(Gen::A, 1)],
            vec![(Gen::B, 1)],
        ];
        let blocks: Vec<_> = words.iter().map(|w| fox_row(w, &action, &params).unwrap()).collect();
        let z1 = FpMatrix::vstack(&blocks).unwrap().nullity();
        let inv = FpMatrix::vstack(&[m_r.sub(&id4), m_s.sub(&id4)]).unwrap().nullity();
        assert_eq!(z1, 4 - inv);
    }
}
