//! Symbolic classification of the universal deformation ring R(Γ, V) and
//! the checks that compare kernel sets, signatures and fusion classes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::cohomology;
use crate::dihedral::{self, DihedralParams, RepLabel, Subgroup};
use crate::error::{Error, Result};
use crate::ff;
use crate::fusion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UdrClass {
    /// ℤₚ
    Zp,
    /// ℤₚ[[t]]/(t², pt)
    ZpTtorsion,
    /// ℤₚ[ℤ/p]
    ZpCp,
    /// ℤₚ[ℤ/p × ℤ/p]
    ZpCpSquared,
}

impl UdrClass {
    pub fn ring(self) -> &'static str {
        match self {
            UdrClass::Zp => "Zp",
            UdrClass::ZpTtorsion => "Zp[[t]]/(t^2,pt)",
            UdrClass::ZpCp => "Zp[Z/p]",
            UdrClass::ZpCpSquared => "Zp[Z/pxZ/p]",
        }
    }

    /// Comma-free identifier, for CSV.
    pub fn tag(self) -> &'static str {
        match self {
            UdrClass::Zp => "Zp",
            UdrClass::ZpTtorsion => "ZpTtorsion",
            UdrClass::ZpCp => "ZpCp",
            UdrClass::ZpCpSquared => "ZpCpSquared",
        }
    }

    fn letter(self) -> char {
        match self {
            UdrClass::Zp => 'Z',
            UdrClass::ZpTtorsion => 'T',
            UdrClass::ZpCp => 'C',
            UdrClass::ZpCpSquared => 'D',
        }
    }
}

impl fmt::Display for UdrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ring())
    }
}

impl Serialize for UdrClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.ring())
    }
}

/// `j ↦ R(Γ, θ_j)` over all of Irr₂.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UdrSignature {
    pub per_rep: BTreeMap<usize, UdrClass>,
}

impl UdrSignature {
    /// One letter per j in index order: `Z` for ℤₚ, `T` for ℤₚ[[t]]/(t², pt).
    pub fn digest(&self) -> String {
        self.per_rep.values().map(|c| c.letter()).collect()
    }

    pub fn non_zp(&self) -> BTreeSet<usize> {
        self.per_rep
            .iter()
            .filter(|(_, &c)| c != UdrClass::Zp)
            .map(|(&j, _)| j)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "name")]
    pub check_name: String,
    pub parameters: BTreeMap<String, u64>,
    pub passed: bool,
    pub witness: Option<Value>,
}

impl VerificationReport {
    fn new(name: &str, parameters: &[(&str, u64)]) -> Self {
        Self {
            check_name: name.to_string(),
            parameters: parameters
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            passed: true,
            witness: None,
        }
    }

    fn fail(mut self, witness: Value) -> Self {
        self.passed = false;
        self.witness = Some(witness);
        self
    }
}

fn np(params: &DihedralParams) -> [(&'static str, u64); 2] {
    [("n", params.n() as u64), ("p", params.p())]
}

pub fn udr_class(params: &DihedralParams, i0: usize, j: usize) -> Result<UdrClass> {
    let d = cohomology::dims(params, i0, j)?;
    Ok(if d.d2 == 2 {
        UdrClass::ZpTtorsion
    } else {
        UdrClass::Zp
    })
}

pub fn udr_signature(params: &DihedralParams, i0: usize) -> Result<UdrSignature> {
    params.check_index(i0)?;
    let per_rep = params
        .irr2_indices()
        .map(|j| udr_class(params, i0, j).map(|c| (j, c)))
        .collect::<Result<_>>()?;
    Ok(UdrSignature { per_rep })
}

fn kernel_set(params: &DihedralParams, reps: &BTreeSet<usize>) -> Result<BTreeSet<Subgroup>> {
    reps.iter()
        .map(|&j| dihedral::kernel_invariant(params, j).map(|k| k.kernel))
        .collect()
}

fn kernel_words(set: &BTreeSet<Subgroup>) -> Value {
    json!(set.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

/// (a) kernels of the maximal reps = kernels of the reps with R ≇ ℤₚ;
/// (b) on Ω, equal kernel sets ⇔ same fusion class.
pub fn verify_thm_42(params: &DihedralParams, i0: usize) -> Result<VerificationReport> {
    let n = params.n();
    if !dihedral::omega_set(params).contains(&i0) {
        params.check_index(i0)?;
        return Err(Error::NotInOmega { index: i0, n });
    }
    let [a, b] = np(params);
    let report = VerificationReport::new("thm42", &[a, b, ("i0", i0 as u64)]);

    let maximal = kernel_set(params, &cohomology::cohomologically_maximal_set(params, i0)?)?;
    let non_zp = kernel_set(params, &udr_signature(params, i0)?.non_zp())?;
    if maximal != non_zp {
        return Ok(report.fail(json!({
            "part": "a",
            "maximal_kernels": kernel_words(&maximal),
            "non_zp_kernels": kernel_words(&non_zp),
        })));
    }
    for other in dihedral::omega_set(params) {
        let other_set = kernel_set(params, &udr_signature(params, other)?.non_zp())?;
        let same_kernels = other_set == non_zp;
        let same_fusion = fusion::same_fusion(params, i0, other)?;
        if same_kernels != same_fusion {
            return Ok(report.fail(json!({
                "part": "b",
                "other_i0": other,
                "same_kernel_set": same_kernels,
                "same_fusion": same_fusion,
            })));
        }
    }
    Ok(report)
}

/// (a) ψ maximal for φ ⇔ T(ψ) = φ, for every φ ∈ Ω;
/// (b, c) same fusion ⇔ equal kernel sets of the T-preimages.
pub fn verify_thm_43(params: &DihedralParams) -> Result<VerificationReport> {
    let report = VerificationReport::new("thm43", &np(params));
    let omega = dihedral::omega_set(params);
    for &phi in &omega {
        let maximal = cohomology::cohomologically_maximal_set(params, phi)?;
        for psi in params.irr2_indices() {
            let hits = dihedral::t_map(params, psi)? == RepLabel::Irr2(phi);
            if maximal.contains(&psi) != hits {
                return Ok(report.fail(json!({
                    "part": "a",
                    "phi": phi,
                    "psi": psi,
                    "maximal": maximal.contains(&psi),
                    "t_psi_is_phi": hits,
                })));
            }
        }
    }
    let part = if params.n() % 2 == 1 { "b" } else { "c" };
    let kernels = omega
        .iter()
        .map(|&phi| {
            let pre = dihedral::t_preimage(params, phi)?;
            Ok((phi, kernel_set(params, &pre)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    for (&phi1, k1) in &kernels {
        for (&phi2, k2) in kernels.range(phi1 + 1..) {
            let same_fusion = fusion::same_fusion(params, phi1, phi2)?;
            if same_fusion != (k1 == k2) {
                return Ok(report.fail(json!({
                    "part": part,
                    "phi1": phi1,
                    "phi2": phi2,
                    "same_fusion": same_fusion,
                    "kernels1": kernel_words(k1),
                    "kernels2": kernel_words(k2),
                })));
            }
        }
    }
    Ok(report)
}

/// gcd identities for `i0 = 2d₀ ∈ Ω`, `k = n/2`, `a₀ = gcd(d₀, k)`.
pub fn verify_lemma_410(n: usize, i0: usize) -> Result<VerificationReport> {
    if n % 2 == 1 {
        return Err(Error::InvalidParams(format!("n = {n} must be even")));
    }
    if !dihedral::in_omega(n, i0) {
        return Err(Error::NotInOmega { index: i0, n });
    }
    let report = VerificationReport::new("lemma410", &[("n", n as u64), ("i0", i0 as u64)]);
    let g = |a: usize| ff::gcd(a as u64, n as u64) as usize;
    let k = n / 2;
    let d0 = i0 / 2;
    let a0 = ff::gcd(d0 as u64, k as u64) as usize;
    let lhs: BTreeSet<usize> = [g(d0), g(k - d0)].into();
    let rhs: BTreeSet<usize> = [g(a0), g(k - a0)].into();
    let ok = lhs == rhs && g(i0) == 2 * a0 && g(a0) == a0 && [a0, 2 * a0].contains(&g(k - a0));
    if ok {
        Ok(report)
    } else {
        Ok(report.fail(json!({
            "d0": d0,
            "a0": a0,
            "gcd_set_d0": lhs,
            "gcd_set_a0": rhs,
            "gcd_i0_n": g(i0),
            "gcd_k_minus_a0_n": g(k - a0),
        })))
    }
}

/// Any R ≇ ℤₚ forces the center of G to act trivially on N.
pub fn verify_cor_34(params: &DihedralParams, i0: usize) -> Result<VerificationReport> {
    let [a, b] = np(params);
    let report = VerificationReport::new("cor34", &[a, b, ("i0", i0 as u64)]);
    let non_zp = udr_signature(params, i0)?.non_zp();
    if !non_zp.is_empty() && !dihedral::center_acts_trivially(params, i0)? {
        return Ok(report.fail(json!({ "non_zp": non_zp })));
    }
    Ok(report)
}

/// Whether the fusion class of θ_{i0} can be read off from its UDR signature
/// for every i0, using only the signatures.
pub fn fusion_determinability(params: &DihedralParams) -> Result<VerificationReport> {
    let n = params.n();
    let mut report = VerificationReport::new("determinability", &np(params));
    let sigs = params
        .irr2_indices()
        .map(|i| udr_signature(params, i).map(|s| (i, s)))
        .collect::<Result<Vec<_>>>()?;
    let fusion_class = |i: usize| ff::gcd(i as u64, n as u64);
    for (a, (i, si)) in sigs.iter().enumerate() {
        for (j, sj) in &sigs[a + 1..] {
            if si == sj && fusion_class(*i) != fusion_class(*j) {
                report = report.fail(json!({
                    "pair": [i, j],
                    "gcds": [fusion_class(*i), fusion_class(*j)],
                    "signature": si.digest(),
                }));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// n odd, a power of 2, or twice an odd prime.
pub fn determinability_predicate(n: usize) -> bool {
    n % 2 == 1 || n.is_power_of_two() || (n / 2 % 2 == 1 && ff::is_prime(n as u64 / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: usize, p: u64) -> DihedralParams {
        DihedralParams::new(n, p).unwrap()
    }

    fn sig(pairs: &[(usize, UdrClass)]) -> UdrSignature {
        UdrSignature {
            per_rep: pairs.iter().copied().collect(),
        }
    }

    use UdrClass::*;

    #[test]
    fn class_examples() {
        assert_eq!(udr_class(&pr(5, 11), 2, 1), Ok(ZpTtorsion));
        assert_eq!(udr_class(&pr(5, 11), 2, 2), Ok(Zp));
        assert_eq!(udr_class(&pr(6, 7), 1, 1), Ok(Zp));
        assert_eq!(udr_class(&pr(6, 7), 1, 2), Ok(Zp));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            udr_signature(&pr(6, 7), 2),
            Ok(sig(&[(1, ZpTtorsion), (2, ZpTtorsion)]))
        );
        assert_eq!(udr_signature(&pr(6, 7), 1), Ok(sig(&[(1, Zp), (2, Zp)])));
        assert_eq!(
            udr_signature(&pr(5, 11), 1),
            Ok(sig(&[(1, Zp), (2, ZpTtorsion)]))
        );
        assert_eq!(udr_signature(&pr(5, 11), 1).unwrap().digest(), "ZT");
    }

    #[test]
    fn serialized_names() {
        let s = serde_json::to_string(&[Zp, ZpTtorsion, ZpCp, ZpCpSquared]).unwrap();
        assert_eq!(s, r#"["Zp","Zp[[t]]/(t^2,pt)","Zp[Z/p]","Zp[Z/pxZ/p]"]"#);
        assert!(!ZpTtorsion.tag().contains(','));
    }

    #[test]
    fn thm42_examples() {
        for i0 in [1, 2] {
            assert!(verify_thm_42(&pr(5, 11), i0).unwrap().passed);
        }
        assert!(verify_thm_42(&pr(6, 7), 2).unwrap().passed);
        let p12 = pr(12, 13);
        for i0 in [2, 4] {
            assert!(verify_thm_42(&p12, i0).unwrap().passed);
        }
        let k2 = kernel_set(&p12, &udr_signature(&p12, 2).unwrap().non_zp()).unwrap();
        let k4 = kernel_set(&p12, &udr_signature(&p12, 4).unwrap().non_zp()).unwrap();
        assert_ne!(k2, k4);
        assert!(!fusion::same_fusion(&p12, 2, 4).unwrap());
        assert!(matches!(
            verify_thm_42(&pr(6, 7), 1),
            Err(Error::NotInOmega { .. })
        ));
    }

    #[test]
    fn thm43_examples() {
        for (n, p) in [(9, 19), (6, 7), (12, 13)] {
            let r = verify_thm_43(&pr(n, p)).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn lemma410_examples() {
        for (n, i0) in [(12, 4), (12, 2), (20, 6)] {
            assert!(verify_lemma_410(n, i0).unwrap().passed);
        }
        assert!(verify_lemma_410(12, 3).is_err());
        assert!(verify_lemma_410(9, 2).is_err());
    }

    #[test]
    fn lemma410_all_even_n() {
        for n in (4..=40).step_by(2) {
            for i0 in dihedral::omega_indices(n) {
                assert!(verify_lemma_410(n, i0).unwrap().passed, "n={n} i0={i0}");
            }
        }
    }

    #[test]
    fn cor34_examples() {
        assert!(verify_cor_34(&pr(6, 7), 1).unwrap().passed);
        assert!(udr_signature(&pr(6, 7), 1).unwrap().non_zp().is_empty());
        assert!(verify_cor_34(&pr(6, 7), 2).unwrap().passed);
        assert!(verify_cor_34(&pr(5, 11), 1).unwrap().passed);
    }

    #[test]
    fn determinability_examples() {
        let r = fusion_determinability(&pr(12, 13)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap()["pair"], json!([1, 3]));
        assert!(fusion_determinability(&pr(6, 7)).unwrap().passed);
        assert!(fusion_determinability(&pr(8, 17)).unwrap().passed);
    }

    #[test]
    fn predicate_table() {
        let yes: Vec<usize> = (4..=30).step_by(2).filter(|&n| determinability_predicate(n)).collect();
        assert_eq!(yes, vec![4, 6, 8, 10, 14, 16, 22, 26]);
    }

    #[test]
    fn non_omega_signature_is_constant() {
        for n in 3..=12 {
            let params = DihedralParams::smallest(n).unwrap();
            let omega = dihedral::omega_set(&params);
            for i0 in params.irr2_indices() {
                let s = udr_signature(&params, i0).unwrap();
                if omega.contains(&i0) {
                    assert_eq!(s.non_zp(), dihedral::t_preimage(&params, i0).unwrap());
                } else {
                    assert!(s.non_zp().is_empty());
                }
            }
        }
    }
}
