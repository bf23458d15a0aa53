//! Report assembly for the command-line tool: single-instance analyses,
//! scans and verification suites, as JSON or CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::abelian::{self, AbelianParams, CharacterPair};
use crate::cohomology::{self, ORACLE_LIMIT};
use crate::deformation::{self, UdrClass, VerificationReport};
use crate::dihedral::{self, DihedralParams, RepLabel};
use crate::error::Result;
use crate::ff;
use crate::fusion::{self, FusionOrbitSet};

pub const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport<P, R> {
    pub version: &'static str,
    pub params: P,
    pub fusion: FusionSummary,
    pub reps: Vec<R>,
    pub checks: Vec<VerificationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DihedralParamsOut {
    pub kind: &'static str,
    pub n: usize,
    pub p: u64,
    pub omega: u64,
    pub i0: usize,
    pub omega_set: Vec<usize>,
    pub maximal_set: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AbelianParamsOut {
    pub kind: &'static str,
    pub orders: Vec<usize>,
    pub p: u64,
    pub theta1: Vec<u64>,
    pub theta2: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionSummary {
    pub numbers: BTreeMap<usize, usize>,
    pub orbit_count: usize,
    pub total: u64,
    pub representatives: Vec<OrbitSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub point: [u64; 2],
    pub size: usize,
    pub stabilizer_order: usize,
    pub stabilizer: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepRow {
    pub j: usize,
    pub gcd: usize,
    #[serde(rename = "T")]
    pub t: String,
    pub in_omega: bool,
    pub t_is_i0: bool,
    pub d1: usize,
    pub d2: usize,
    pub udr: UdrClass,
}

/// One row per one-dimensional V; `v` lists its generator images.
#[derive(Debug, Clone, Serialize)]
pub struct AbelianRepRow {
    pub j: usize,
    pub v: Vec<u64>,
    pub d1: usize,
    pub d2: usize,
    pub udr: UdrClass,
}

fn summarize<E>(set: &FusionOrbitSet<E>, word: impl Fn(&E) -> String) -> FusionSummary {
    let numbers = fusion::fusion_numbers(set);
    FusionSummary {
        total: numbers.weighted_total(),
        numbers: numbers.counts,
        orbit_count: set.orbits.len(),
        representatives: set
            .orbits
            .iter()
            .map(|o| OrbitSummary {
                point: [o.representative.x, o.representative.y],
                size: o.size,
                stabilizer_order: o.stabilizer_order,
                stabilizer: o.stabilizer_gens.iter().map(&word).collect(),
            })
            .collect(),
    }
}

pub type DihedralReport = AnalysisReport<DihedralParamsOut, RepRow>;
pub type AbelianReport = AnalysisReport<AbelianParamsOut, AbelianRepRow>;

pub fn analyze_dihedral(params: &DihedralParams, i0: usize) -> Result<DihedralReport> {
    params.check_index(i0)?;
    let n = params.n();
    let omega = dihedral::omega_set(params);
    let orbits = fusion::fusion_orbits_closed_form(params, i0)?;
    let mut reps = Vec::new();
    for j in params.irr2_indices() {
        let d = cohomology::dims(params, i0, j)?;
        let t = dihedral::t_map(params, j)?;
        reps.push(RepRow {
            j,
            gcd: ff::gcd(j as u64, n as u64) as usize,
            t: t.to_string(),
            in_omega: omega.contains(&j),
            t_is_i0: t == RepLabel::Irr2(i0),
            d1: d.d1,
            d2: d.d2,
            udr: deformation::udr_class(params, i0, j)?,
        });
    }

    let mut checks = vec![verify_prop_48(params, i0)?, verify_cor_49(params, i0)?];
    if omega.contains(&i0) {
        checks.push(deformation::verify_thm_42(params, i0)?);
    }
    checks.push(deformation::verify_thm_43(params)?);
    checks.push(deformation::verify_cor_34(params, i0)?);
    checks.push(deformation::fusion_determinability(params)?);
    if let Some(r) = verify_oracle_h1_at(params, i0)? {
        checks.push(r);
    }

    Ok(AnalysisReport {
        version: VERSION,
        params: DihedralParamsOut {
            kind: "dihedral",
            n,
            p: params.p(),
            omega: params.omega().value(),
            i0,
            omega_set: omega.into_iter().collect(),
            maximal_set: cohomology::cohomologically_maximal_set(params, i0)?
                .into_iter()
                .collect(),
        },
        fusion: summarize(&orbits, |g| g.to_string()),
        reps,
        checks,
    })
}

pub fn analyze_abelian(params: &AbelianParams, pair: &CharacterPair) -> Result<AbelianReport> {
    let p = params.p();
    let orbits = abelian::abelian_orbits_bruteforce(params, pair)?;
    let formula = abelian::abelian_dims(pair);
    let udr = abelian::abelian_udr(pair);
    let mut reps = Vec::new();
    for (j, v) in params.characters().into_iter().enumerate() {
        let d = abelian::abelian_dims_by_projector(params, pair, &v)?;
        reps.push(AbelianRepRow {
            j,
            v: v.residues(),
            d1: d.d1,
            d2: d.d2,
            udr,
        });
    }

    let pars: Vec<(&str, u64)> = vec![("order", params.order() as u64), ("p", p)];
    let mut checks = Vec::new();
    let fixed = abelian::abelian_fixed_count(pair, p);
    let brute = abelian::fixed_points_bruteforce(params, pair);
    let census = fusion::fusion_numbers(&orbits).get(1) as u64;
    checks.push(check(
        "fixed_count",
        &pars,
        fixed == brute && fixed == census,
        json!({ "formula": fixed, "bruteforce": brute, "orbit_census": census }),
    ));
    let bad_row = reps.iter().find(|r| r.d1 != formula.d1 || r.d2 != formula.d2);
    checks.push(check(
        "abelian_dims",
        &pars,
        bad_row.is_none(),
        json!({ "formula": formula, "row": bad_row.map(|r| r.j) }),
    ));
    let expected_fixed = match udr {
        UdrClass::Zp => 1,
        UdrClass::ZpCp => p,
        _ => p * p,
    };
    checks.push(check(
        "prop411",
        &pars,
        expected_fixed == fixed,
        json!({ "udr": udr, "fixed_count": fixed }),
    ));

    Ok(AnalysisReport {
        version: VERSION,
        params: AbelianParamsOut {
            kind: "abelian",
            orders: params.cyclic_orders().to_vec(),
            p,
            theta1: pair.theta1.residues(),
            theta2: pair.theta2.residues(),
        },
        fusion: summarize(&orbits, |&g| params.word(g)),
        reps,
        checks,
    })
}

fn check(name: &str, pars: &[(&str, u64)], passed: bool, witness: serde_json::Value) -> VerificationReport {
    VerificationReport {
        check_name: name.to_string(),
        parameters: pars.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        passed,
        witness: (!passed).then_some(witness),
    }
}

fn nip(params: &DihedralParams, i0: usize) -> [(&'static str, u64); 3] {
    [("n", params.n() as u64), ("p", params.p()), ("i0", i0 as u64)]
}

/// Closed-form orbits equal brute-force orbits as partitions, with equal
/// stabilizer subgroups at each representative.
pub fn verify_prop_48(params: &DihedralParams, i0: usize) -> Result<VerificationReport> {
    let closed = fusion::fusion_orbits_closed_form(params, i0)?;
    let brute = fusion::fusion_orbits_bruteforce(params, i0)?;
    closed.check_invariants()?;
    brute.check_invariants()?;
    let group = params.group();
    let mut witness = None;
    if closed.partition() != brute.partition() {
        witness = Some(json!({ "reason": "partitions differ" }));
    } else {
        for (c, b) in closed.orbits.iter().zip(&brute.orbits) {
            let sc = fusion::stabilizer_subgroup(&group, c);
            let sb = fusion::stabilizer_subgroup(&group, b);
            if c.representative != b.representative
                || c.stabilizer_order != b.stabilizer_order
                || sc != sb
            {
                witness = Some(json!({
                    "point": [c.representative.x, c.representative.y],
                    "closed_form": sc.to_string(),
                    "bruteforce": sb.to_string(),
                }));
                break;
            }
        }
    }
    Ok(check(
        "prop48",
        &nip(params, i0),
        witness.is_none(),
        witness.unwrap_or_default(),
    ))
}

/// Brute-force census equals `{1 ↦ 1, k ↦ p−1, 2k ↦ (p−1)(p+1−k)/(2k)}`
/// and sums to p².
pub fn verify_cor_49(params: &DihedralParams, i0: usize) -> Result<VerificationReport> {
    let brute = fusion::fusion_numbers(&fusion::fusion_orbits_bruteforce(params, i0)?);
    let closed = fusion::fusion_numbers_closed_form(params.n(), params.p(), i0)?;
    let p = params.p();
    let ok = brute == closed && brute.weighted_total() == p * p;
    Ok(check(
        "cor49",
        &nip(params, i0),
        ok,
        json!({ "bruteforce": brute.counts, "closed_form": closed.counts }),
    ))
}

/// Cocycle-count d¹ against the fixed-point d¹ for every j, or `None` when
/// the instance is beyond the oracle guard.
pub fn verify_oracle_h1_at(params: &DihedralParams, i0: usize) -> Result<Option<VerificationReport>> {
    let p = params.p();
    if 2 * params.n() as u64 * p * p > ORACLE_LIMIT {
        return Ok(None);
    }
    for j in params.irr2_indices() {
        let oracle = cohomology::d1_oracle_cocycles(params, i0, j)?;
        let formula = cohomology::dims(params, i0, j)?.d1;
        if oracle != formula {
            return Ok(Some(check(
                "oracle-h1",
                &nip(params, i0),
                false,
                json!({ "j": j, "oracle": oracle, "formula": formula }),
            )));
        }
    }
    Ok(Some(check("oracle-h1", &nip(params, i0), true, json!(null))))
}

/// Signature-based determinability against the arithmetic predicate. The
/// witness carries the indistinguishable pair whenever there is one.
pub fn verify_thm_11(params: &DihedralParams) -> Result<VerificationReport> {
    let det = deformation::fusion_determinability(params)?;
    let predicate = deformation::determinability_predicate(params.n());
    let mut r = check(
        "thm11",
        &[("n", params.n() as u64), ("p", params.p())],
        det.passed == predicate,
        json!(null),
    );
    if !det.passed || det.passed != predicate {
        r.witness = Some(json!({
            "determinable": det.passed,
            "predicate": predicate,
            "pair": det.witness.as_ref().map(|w| w["pair"].clone()),
        }));
    }
    Ok(r)
}

/// The `count` smallest valid primes for n.
pub fn primes_for(n: usize, count: usize) -> Result<Vec<u64>> {
    ff::primes_congruent_to_one(n as u64, count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub p: u64,
    pub i0: usize,
    pub k: usize,
    pub in_omega: bool,
    pub determinable: bool,
    pub signature: String,
}

pub const SCAN_CSV_HEADER: &str = "n,p,i0,k,in_omega,determinable,signature";

/// One row per `(n, p, i0)`, sorted.
pub fn scan_dihedral(n_min: usize, n_max: usize, primes_per_n: usize) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for p in primes_for(n, primes_per_n)? {
            let params = DihedralParams::new(n, p)?;
            let determinable = deformation::fusion_determinability(&params)?.passed;
            for i0 in params.irr2_indices() {
                rows.push(ScanRow {
                    n,
                    p,
                    i0,
                    k: fusion::orbit_parameter(n, i0),
                    in_omega: dihedral::in_omega(n, i0),
                    determinable,
                    signature: deformation::udr_signature(&params, i0)?.digest(),
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.n, r.p, r.i0));
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Check {
    Thm42,
    Thm43,
    Thm11,
    Lemma410,
    Cor34,
    Prop48,
    Cor49,
    OracleH1,
    All,
}

impl Check {
    pub const EACH: [Check; 8] = [
        Check::Thm42,
        Check::Thm43,
        Check::Thm11,
        Check::Lemma410,
        Check::Cor34,
        Check::Prop48,
        Check::Cor49,
        Check::OracleH1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Thm42 => "thm42",
            Check::Thm43 => "thm43",
            Check::Thm11 => "thm11",
            Check::Lemma410 => "lemma410",
            Check::Cor34 => "cor34",
            Check::Prop48 => "prop48",
            Check::Cor49 => "cor49",
            Check::OracleH1 => "oracle-h1",
            Check::All => "all",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Check::Lemma410 => 40,
            Check::Thm11 => 30,
            _ => 12,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeterminabilityRow {
    pub n: usize,
    pub p: u64,
    pub determinable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySuite {
    pub version: &'static str,
    pub params: BTreeMap<&'static str, serde_json::Value>,
    pub checks: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinability: Option<Vec<DeterminabilityRow>>,
    pub total: usize,
    pub failed: usize,
}

impl VerifySuite {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn dihedral_grid(n_min: usize, n_max: usize, primes_per_n: usize) -> Result<Vec<DihedralParams>> {
    let mut out = Vec::new();
    for n in n_min.max(3)..=n_max {
        for p in primes_for(n, primes_per_n)? {
            out.push(DihedralParams::new(n, p)?);
        }
    }
    Ok(out)
}

/// Runs one check family (or all of them) over its default grid.
/// `n_max` overrides the family default.
pub fn run_verify(check: Check, n_max: Option<usize>, primes_per_n: usize) -> Result<VerifySuite> {
    let families: Vec<Check> = if check == Check::All {
        Check::EACH.to_vec()
    } else {
        vec![check]
    };
    let mut checks = Vec::new();
    let mut table = None;
    for family in families {
        let top = n_max.unwrap_or(family.default_n_max());
        match family {
            Check::Thm42 => {
                for params in dihedral_grid(3, top, primes_per_n)? {
                    for i0 in dihedral::omega_set(&params) {
                        checks.push(deformation::verify_thm_42(&params, i0)?);
                    }
                }
            }
            Check::Thm43 => {
                for params in dihedral_grid(3, top, primes_per_n)? {
                    checks.push(deformation::verify_thm_43(&params)?);
                }
            }
            Check::Thm11 => {
                let mut rows = Vec::new();
                for params in dihedral_grid(4, top, primes_per_n)? {
                    if params.n() % 2 == 1 {
                        continue;
                    }
                    let r = verify_thm_11(&params)?;
                    let determinable = r
                        .witness
                        .as_ref()
                        .map_or(true, |w| w["determinable"].as_bool() == Some(true));
                    rows.push(DeterminabilityRow {
                        n: params.n(),
                        p: params.p(),
                        determinable,
                    });
                    checks.push(r);
                }
                table = Some(rows);
            }
            Check::Lemma410 => {
                for n in (4..=top).step_by(2) {
                    for i0 in dihedral::omega_indices(n) {
                        checks.push(deformation::verify_lemma_410(n, i0)?);
                    }
                }
            }
            Check::Cor34 => {
                for params in dihedral_grid(3, top, primes_per_n)? {
                    for i0 in params.irr2_indices() {
                        checks.push(deformation::verify_cor_34(&params, i0)?);
                    }
                }
            }
            Check::Prop48 | Check::Cor49 => {
                for params in dihedral_grid(3, top, primes_per_n)? {
                    for i0 in params.irr2_indices() {
                        checks.push(if family == Check::Prop48 {
                            verify_prop_48(&params, i0)?
                        } else {
                            verify_cor_49(&params, i0)?
                        });
                    }
                }
            }
            Check::OracleH1 => {
                for params in dihedral_grid(3, top, primes_per_n)? {
                    for i0 in params.irr2_indices() {
                        checks.extend(verify_oracle_h1_at(&params, i0)?);
                    }
                }
            }
            Check::All => unreachable!(),
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut params = BTreeMap::new();
    params.insert("check", json!(check.name()));
    params.insert("n_max", json!(n_max));
    params.insert("primes_per_n", json!(primes_per_n));
    Ok(VerifySuite {
        version: VERSION,
        params,
        total: checks.len(),
        failed,
        checks,
        determinability: table,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn dihedral_csv(report: &DihedralReport) -> String {
    let p = &report.params;
    let mut out = String::from("n,p,omega,i0,j,gcd,T,in_omega,t_is_i0,d1,d2,udr\n");
    for r in &report.reps {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            p.n,
            p.p,
            p.omega,
            p.i0,
            r.j,
            r.gcd,
            r.t,
            r.in_omega,
            r.t_is_i0,
            r.d1,
            r.d2,
            r.udr.tag()
        );
    }
    out
}

pub fn abelian_csv(report: &AbelianReport) -> String {
    let p = &report.params;
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut out = String::from("orders,p,theta1,theta2,j,v,d1,d2,udr\n");
    let orders: Vec<u64> = p.orders.iter().map(|&m| m as u64).collect();
    for r in &report.reps {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            join(&orders),
            p.p,
            join(&p.theta1),
            join(&p.theta2),
            r.j,
            join(&r.v),
            r.d1,
            r.d2,
            r.udr.tag()
        );
    }
    out
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = format!("{SCAN_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n, r.p, r.i0, r.k, r.in_omega, r.determinable, r.signature
        );
    }
    out
}

pub fn verify_csv(suite: &VerifySuite) -> String {
    let mut out = String::from("name,parameters,passed\n");
    for c in &suite.checks {
        let pars: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{},{},{}", c.check_name, pars.join(";"), c.passed);
    }
    out
}
