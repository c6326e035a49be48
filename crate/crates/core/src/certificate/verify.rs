use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use super::{coefficient_table, lambda_vector, Certificate, CoefficientTable};
use crate::colouredgraph::{bad_family, canonical_key, subset_histogram, CanonicalKey};
use crate::exactmath::{psd_check, PsdVerdict, Rational};
use crate::extremal::build_gex;

/// Outcome of checking a certificate. `verified` holds exactly when every
/// block is PSD, every `λ_k ≥ 0`, and `λ_k > 0` wherever a bad graph has
/// positive density.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub bound: Rational,
    /// PSD verdict per block, blocks numbered from 1.
    pub psd: Vec<(usize, PsdVerdict)>,
    pub lambda: BTreeMap<CanonicalKey, Rational>,
    pub min_lambda: Rational,
    pub min_lambda_model: CanonicalKey,
    /// Models with `λ_k < 0`.
    pub negative: Vec<CanonicalKey>,
    /// `(model, bad graph)` pairs with positive density but `λ_k ≤ 0`.
    pub bad_violations: Vec<(CanonicalKey, CanonicalKey)>,
    pub verified: bool,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn psd_failures(&self) -> Vec<usize> {
        self.psd
            .iter()
            .filter(|(_, v)| !v.is_psd())
            .map(|(r, _)| *r)
            .collect()
    }

    pub fn verdict(&self) -> &'static str {
        if self.verified {
            "VERIFIED"
        } else {
            "FAILED"
        }
    }

    /// Human-readable summary naming every failing check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "bound: {}", self.bound).unwrap();
        for (r, v) in &self.psd {
            match v {
                PsdVerdict::Psd { rank } => writeln!(out, "block {r}: PSD (rank {rank})").unwrap(),
                PsdVerdict::NotPsd { value, pivot, .. } => writeln!(
                    out,
                    "block {r}: NOT PSD (pivot {}, witness value {value})",
                    pivot + 1
                )
                .unwrap(),
            }
        }
        writeln!(out, "models: {}", self.lambda.len()).unwrap();
        writeln!(
            out,
            "min lambda: {} at model {}",
            self.min_lambda, self.min_lambda_model
        )
        .unwrap();
        let zeros = self.lambda.values().filter(|l| l.is_zero()).count();
        writeln!(out, "lambda = 0 on {zeros} models").unwrap();
        if !self.negative.is_empty() {
            writeln!(
                out,
                "check lambda_nonnegative FAILED on {} models",
                self.negative.len()
            )
            .unwrap();
            for key in &self.negative {
                writeln!(out, "  lambda[{key}] = {}", self.lambda[key]).unwrap();
            }
        }
        if !self.bad_violations.is_empty() {
            writeln!(
                out,
                "check bad_family_positive FAILED on {} pairs",
                self.bad_violations.len()
            )
            .unwrap();
            for (m, h) in &self.bad_violations {
                writeln!(
                    out,
                    "  model {m} contains bad graph {h} with lambda {}",
                    self.lambda[m]
                )
                .unwrap();
            }
        }
        writeln!(out, "verdict: {}", self.verdict()).unwrap();
        out
    }

    /// One `key=value` per line, ending with `VERDICT VERIFIED|FAILED`.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        writeln!(out, "bound={}", self.bound).unwrap();
        for (r, v) in &self.psd {
            writeln!(
                out,
                "psd.block{r}={}",
                if v.is_psd() { "ok" } else { "fail" }
            )
            .unwrap();
        }
        let failures = self.psd_failures();
        writeln!(
            out,
            "check.psd={}",
            if failures.is_empty() { "ok" } else { "fail" }
        )
        .unwrap();
        writeln!(
            out,
            "check.lambda_nonnegative={}",
            if self.negative.is_empty() {
                "ok"
            } else {
                "fail"
            }
        )
        .unwrap();
        writeln!(
            out,
            "check.bad_family_positive={}",
            if self.bad_violations.is_empty() {
                "ok"
            } else {
                "fail"
            }
        )
        .unwrap();
        writeln!(out, "models={}", self.lambda.len()).unwrap();
        writeln!(out, "lambda.min={}", self.min_lambda).unwrap();
        writeln!(out, "lambda.min_model={}", self.min_lambda_model).unwrap();
        writeln!(out, "lambda.negative_count={}", self.negative.len()).unwrap();
        writeln!(
            out,
            "lambda.zero_count={}",
            self.lambda.values().filter(|l| l.is_zero()).count()
        )
        .unwrap();
        writeln!(out, "bad_family.violations={}", self.bad_violations.len()).unwrap();
        writeln!(out, "elapsed_ms={}", self.elapsed.as_millis()).unwrap();
        writeln!(out, "VERDICT {}", self.verdict()).unwrap();
        out
    }
}

pub fn verify(cert: &Certificate) -> VerificationReport {
    let start = Instant::now();
    let table = coefficient_table(cert);
    let mut report = verify_with_table(cert, &table);
    report.elapsed = start.elapsed();
    report
}

pub fn verify_with_table(cert: &Certificate, table: &CoefficientTable) -> VerificationReport {
    let start = Instant::now();
    let psd: Vec<(usize, PsdVerdict)> = cert
        .blocks
        .iter()
        .enumerate()
        .map(|(r, b)| (r + 1, psd_check(&b.q)))
        .collect();
    let lambda = lambda_vector(cert, table);
    let (min_key, min_val) = lambda
        .iter()
        .min_by(|a, b| a.1.cmp(b.1))
        .expect("792 models");
    let (min_lambda_model, min_lambda) = (min_key.clone(), min_val.clone());
    let negative: Vec<CanonicalKey> = lambda
        .iter()
        .filter(|(_, l)| l.is_negative())
        .map(|(k, _)| k.clone())
        .collect();

    let bad: Vec<CanonicalKey> = bad_family()
        .iter()
        .map(|h| canonical_key(h).unwrap())
        .collect();
    let mut bad_violations = Vec::new();
    for (key, model) in table.models() {
        let lam = &lambda[key];
        if lam.is_positive() {
            continue;
        }
        let hist = subset_histogram(model, 4).expect("4 <= 5");
        for h in bad.iter().filter(|h| hist.contains_key(*h)) {
            bad_violations.push((key.clone(), h.clone()));
        }
    }
    let verified =
        psd.iter().all(|(_, v)| v.is_psd()) && negative.is_empty() && bad_violations.is_empty();
    VerificationReport {
        bound: cert.bound.clone(),
        psd,
        lambda,
        min_lambda,
        min_lambda_model,
        negative,
        bad_violations,
        verified,
        elapsed: start.elapsed(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalZeroEntry {
    pub model: CanonicalKey,
    pub lambda: Rational,
    /// Whether the model is induced by some 5-set of `G_ex(25)`.
    pub occurs: bool,
}

/// `λ_k` next to whether `M_k` occurs in `G_ex(25)`, for every model.
pub fn extremal_zero_report(
    cert: &Certificate,
    table: &CoefficientTable,
) -> Vec<ExtremalZeroEntry> {
    let lambda = lambda_vector(cert, table);
    let gex = build_gex(25, 3, None).expect("default construction").0;
    let occurring = subset_histogram(&gex, 5).expect("5 <= 25");
    lambda
        .into_iter()
        .map(|(model, lambda)| {
            let occurs = occurring.contains_key(&model);
            ExtremalZeroEntry {
                model,
                lambda,
                occurs,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::coefficient_table;

    #[test]
    fn shipped_certificate_verifies() {
        let cert = Certificate::shipped();
        let table = coefficient_table(&cert);
        let report = verify_with_table(&cert, &table);
        assert!(report.verified, "{}", report.to_text());
        assert!(report.min_lambda.is_zero());
        assert!(report.to_key_value().ends_with("VERDICT VERIFIED\n"));
        let zeros = extremal_zero_report(&cert, &table);
        assert_eq!(zeros.len(), 792);
        assert!(zeros.iter().any(|e| e.occurs));
        assert!(zeros
            .iter()
            .filter(|e| e.occurs)
            .all(|e| e.lambda.is_zero()));
    }

    #[test]
    fn raised_bound_fails() {
        let mut cert = Certificate::shipped();
        cert.bound = Rational::new(1, 24);
        let report = verify(&cert);
        assert!(!report.verified);
        assert!(!report.negative.is_empty());
        assert!(report.to_text().contains("check lambda_nonnegative FAILED"));
    }
}
