//! Cross-verification of the fixture tables against the exact-arithmetic
//! engine. Every function returns a deterministic [`Report`]; nothing is
//! printed here, so callers decide on formatting.

use crate::fixtures::{FailureFixture, FsIntegralRow, ScatteredRow, TemperedRow};
use e6_core::omega::{InfChar, Involution};
use e6_core::rat::{int, Rat};
use e6_core::vec8::Vec8;
use e6_core::Engine;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// One named check with its outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The outcome of a verification run.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Non-fatal observations (missing cross-reference data, vacuous
    /// checks). Warnings do not affect `passed()`.
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.warnings.extend(other.warnings);
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        for w in &self.warnings {
            out.push_str(&format!("warn {w}\n"));
        }
        let (np, nf) = (
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.iter().filter(|c| !c.passed).count(),
        );
        out.push_str(&format!("{np} passed, {nf} failed\n"));
        out
    }
}

fn index_involutions(thetas: &[Involution]) -> BTreeMap<u32, &Involution> {
    thetas.iter().map(|t| (t.kgb_index, t)).collect()
}

/// θ-dependent checks shared by the scattered and integral tables:
/// ν sits in the (−1)-eigenspace of θ_x, and the parameter reproduces the
/// recorded infinitesimal character.
fn check_parameter(
    engine: &Engine,
    report: &mut Report,
    label: &str,
    theta: Option<&&Involution>,
    lambda: &[Rat; 6],
    nu: &[Rat; 6],
    infchar: &InfChar,
) {
    let d = &engine.datum;
    let Some(theta) = theta else {
        report.warn(format!("{label}: no involution record, parameter checks skipped"));
        return;
    };
    let mut nu_amb = Vec8::zero();
    for i in 0..6 {
        nu_amb += d.fundamental_weights[i].scale(nu[i]);
    }
    let reflected = theta.matrix.apply(&nu_amb);
    report.push(
        format!("{label} nu-eigenspace"),
        reflected == nu_amb.scale(int(-1)),
        "theta(nu) = -nu".to_string(),
    );
    match engine.infchar_from_parameter(theta, lambda, nu) {
        Ok(got) => report.push(
            format!("{label} infchar"),
            got == *infchar,
            format!("parameter yields {got:?}, table says {infchar:?}"),
        ),
        Err(e) => report.push(format!("{label} infchar"), false, e.to_string()),
    }
}

pub fn verify_scattered(
    engine: &Engine,
    rows: &[ScatteredRow],
    thetas: Option<&[Involution]>,
) -> Report {
    let mut report = Report::default();
    let by_index = thetas.map(index_involutions);
    report.push(
        "scattered row-count",
        rows.len() == 31,
        format!("{} rows (expected 31)", rows.len()),
    );
    for row in rows {
        let label = format!("x={}", row.x);
        let theta = by_index.as_ref().and_then(|m| m.get(&row.x));
        if by_index.is_some() && theta.is_none() {
            report.push(
                format!("{label} involution"),
                false,
                "involution table has no record for this index",
            );
        }
        check_parameter(
            engine, &mut report, &label, theta, &row.lambda, &row.nu, &row.infchar,
        );
        let target = row.infchar.ambient(&engine.datum);
        let target_norm = target.norm_sq();
        for mu in &row.spin_lkts {
            let sn = engine.spin_norm(mu);
            let hits_target = sn
                .dominant_shifts
                .iter()
                .any(|v| e6_core::weyl::make_dominant(&engine.datum, v, e6_core::weyl::System::Full).vector == target);
            report.push(
                format!("{label} spin {}", mu.to_bracket()),
                sn.norm_sq == target_norm && hits_target,
                format!(
                    "spin-norm² {} vs ‖Λ‖² {}, shift conjugate to Λ: {hits_target}",
                    sn.norm_sq, target_norm
                ),
            );
            report.push(
                format!("{label} usmall {}", mu.to_bracket()),
                engine.is_usmall(mu),
                "spin-lowest K-type is u-small",
            );
        }
        report.push(
            format!("{label} zero-one"),
            row.infchar.conjecture_check(),
            format!("{:?} has all coordinates in {{0,1}}", row.infchar),
        );
    }
    report
}

pub fn verify_fs_integral(
    engine: &Engine,
    rows: &[FsIntegralRow],
    thetas: Option<&[Involution]>,
) -> Report {
    let mut report = Report::default();
    let by_index = thetas.map(index_involutions);
    report.push(
        "integral row-count",
        rows.len() == 32,
        format!("{} rows (expected 32)", rows.len()),
    );
    let rho_c_norm = engine.datum.rho_c.norm_sq();
    for row in rows {
        let label = format!("x={}", row.x);
        let theta = by_index.as_ref().and_then(|m| m.get(&row.x));
        if by_index.is_some() && theta.is_none() {
            report.push(
                format!("{label} involution"),
                false,
                "involution table has no record for this index",
            );
        }
        check_parameter(
            engine, &mut report, &label, theta, &row.lambda, &row.nu, &row.infchar,
        );
        let norm = row.infchar.ambient(&engine.datum).norm_sq();
        report.push(
            format!("{label} small-infchar"),
            norm < rho_c_norm,
            format!("‖Λ‖² = {norm} < ‖ρ_c‖² = {rho_c_norm}"),
        );
    }
    report
}

/// Sample integer parameter points in [0, range]^6 satisfying a row's
/// constraints and check that the resulting lowest K-type has spin norm and
/// lambda norm both equal to ‖Λ‖².
pub fn verify_tempered(
    engine: &Engine,
    rows: &[TemperedRow],
    samples: usize,
    seed: u64,
) -> Report {
    let mut report = Report::default();
    report.push(
        "tempered row-count",
        rows.len() == 27,
        format!("{} rows (expected 27)", rows.len()),
    );
    let range = 6i64;
    for row in rows {
        let mut rng = StdRng::seed_from_u64(seed ^ (row.x as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut accepted = 0usize;
        let mut failures: Vec<String> = Vec::new();
        let max_tries = samples.saturating_mul(200).max(10_000);
        for _ in 0..max_tries {
            if accepted >= samples {
                break;
            }
            let p: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..=range));
            if !row.constraints_hold(&p) {
                continue;
            }
            accepted += 1;
            let lambda = InfChar(p);
            let mu = row.mu(&p);
            if !engine.datum.is_ktype_weight(&mu) {
                failures.push(format!("p={p:?}: formula output {} invalid", mu.to_bracket()));
                continue;
            }
            let target = lambda.ambient(&engine.datum).norm_sq();
            let sn = engine.spin_norm(&mu).norm_sq;
            let ln = engine.lambda_stats(&mu).norm_sq;
            if sn != target || ln != target {
                failures.push(format!(
                    "p={p:?}: spin² {sn}, lambda² {ln}, ‖Λ‖² {target}"
                ));
            }
        }
        if accepted == 0 {
            report.warn(format!(
                "x={}: constraints unsatisfiable in [0,{range}]^6, row skipped",
                row.x
            ));
            continue;
        }
        report.push(
            format!("x={} norms", row.x),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{accepted} sampled parameters: spin² = lambda² = ‖Λ‖²")
            } else {
                failures.join("; ")
            },
        );
    }
    report
}

/// Check that every lowest K-type strictly violates the Dirac inequality at
/// the recorded infinitesimal character.
pub fn verify_failure(engine: &Engine, fixture: &FailureFixture) -> Report {
    let mut report = Report::default();
    if fixture.lkts.is_empty() {
        report.warn("failure fixture lists no lowest K-types; check is vacuous".to_string());
        return report;
    }
    let target = fixture.infchar.ambient(&engine.datum).norm_sq();
    for mu in &fixture.lkts {
        let sn = engine.spin_norm(mu).norm_sq;
        let strict = sn < target;
        let detail = if sn == target {
            format!("spin² {sn} equals ‖Λ‖² {target}: not a failure witness")
        } else {
            format!("spin² {sn} < ‖Λ‖² {target}, margin {}", target - sn)
        };
        report.push(
            format!("failure {}", mu.to_bracket()),
            strict,
            detail,
        );
    }
    report
}
