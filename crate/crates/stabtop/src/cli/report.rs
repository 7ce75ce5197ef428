//! Machine-readable and human-readable run reports.
//!
//! Structured reports are JSON documents with a fixed field order and all
//! integers rendered as decimal strings, so identical inputs produce
//! byte-identical output and arbitrary-precision witnesses survive the
//! round trip. Every report carries the numeric tolerances it was produced
//! under and a digest of its inputs.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::Refutation;
use crate::field::Tolerances;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TolerancesReport {
    pub eps_zero_rel: f64,
    pub adequacy_delta: f64,
    pub winding_residual: f64,
}

impl From<Tolerances> for TolerancesReport {
    fn from(t: Tolerances) -> Self {
        TolerancesReport {
            eps_zero_rel: t.eps_zero_rel,
            adequacy_delta: t.adequacy_delta,
            winding_residual: t.winding_residual,
        }
    }
}

/// A non-membership certificate in report form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RefutationReport {
    /// Row functional annihilating the lattice (modulo `modulus`).
    pub functional: Vec<String>,
    /// Torsion modulus, absent when the functional kills the lattice
    /// exactly over the integers.
    pub modulus: Option<String>,
}

impl From<&Refutation> for RefutationReport {
    fn from(r: &Refutation) -> Self {
        RefutationReport {
            functional: bigints_to_strings(&r.functional),
            modulus: r.modulus.as_ref().map(|m| m.to_string()),
        }
    }
}

/// One run's complete result document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Which necessary condition the outcome refers to, when one applies.
    pub theorem: Option<String>,
    pub outcome: String,
    /// Witness vector (stacked product coordinates) for failed inclusions
    /// or the disagreeing winding pair for distinct comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Membership coefficients per tested class on Pass outcomes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<String>>>,
    /// Generator columns of the image lattice a check ran against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation: Option<RefutationReport>,
    pub tolerances: TolerancesReport,
    #[serde(rename = "inputs-digest")]
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretation: Option<String>,
    /// Command-specific payload (homology listing, per-generator windings,
    /// scenario outcomes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering; the tolerance header comes first so every
    /// verdict is auditable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.tolerances;
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!(
            "tolerances: eps-zero-rel={:e} adequacy-delta={:e} winding-residual={:e}\n",
            t.eps_zero_rel, t.adequacy_delta, t.winding_residual
        ));
        out.push_str(&format!("inputs-digest: {}\n", self.inputs_digest));
        if let Some(theorem) = &self.theorem {
            out.push_str(&format!("test: {theorem}\n"));
        }
        out.push_str(&format!("outcome: {}\n", self.outcome));
        if let Some(witness) = &self.witness {
            out.push_str(&format!("witness: [{}]\n", witness.join(", ")));
        }
        if let Some(lattice) = &self.lattice {
            let cols: Vec<String> = lattice
                .iter()
                .map(|c| format!("({})", c.join(", ")))
                .collect();
            out.push_str(&format!("image lattice columns: {}\n", cols.join(" ")));
        }
        if let Some(coefficients) = &self.coefficients {
            let rows: Vec<String> = coefficients
                .iter()
                .map(|c| format!("({})", c.join(", ")))
                .collect();
            out.push_str(&format!("membership coefficients: {}\n", rows.join(" ")));
        }
        if let Some(refutation) = &self.refutation {
            let modulus = refutation
                .modulus
                .as_ref()
                .map(|m| format!(" mod {m}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "refutation functional{}: [{}]\n",
                modulus,
                refutation.functional.join(", ")
            ));
        }
        if let Some(interpretation) = &self.interpretation {
            out.push_str(&format!("interpretation: {interpretation}\n"));
        }
        if let Some(details) = &self.details {
            out.push_str(&format!(
                "details: {}\n",
                serde_json::to_string_pretty(details).expect("details serialize")
            ));
        }
        out
    }
}

pub fn bigints_to_strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn strings_to_bigints(xs: &[String]) -> Option<Vec<BigInt>> {
    xs.iter().map(|s| s.parse().ok()).collect()
}

/// Hashes role-tagged input files into the report digest.
pub struct DigestBuilder {
    hasher: Sha256,
}

impl DigestBuilder {
    pub fn new() -> Self {
        DigestBuilder {
            hasher: Sha256::new(),
        }
    }

    pub fn add(&mut self, role: &str, bytes: &[u8]) {
        self.hasher.update(role.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.finalize()))
    }
}

impl Default for DigestBuilder {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_depends_on_role_and_content() {
        let mut a = DigestBuilder::new();
        a.add("complex", b"data");
        let mut b = DigestBuilder::new();
        b.add("field", b"data");
        let mut c = DigestBuilder::new();
        c.add("complex", b"data");
        let (da, db, dc) = (a.finish(), b.finish(), c.finish());
        assert_ne!(da, db);
        assert_eq!(da, dc);
        assert!(da.starts_with("sha256:"));
    }

    #[test]
    fn json_report_round_trips() {
        let report = Report {
            command: "check".to_string(),
            theorem: Some("image-lattice-inclusion-necessity".to_string()),
            outcome: "Fail".to_string(),
            witness: Some(vec!["1".to_string(), "0".to_string()]),
            coefficients: None,
            lattice: Some(vec![vec!["1".to_string(), "2".to_string()]]),
            refutation: Some(RefutationReport {
                functional: vec!["-2".to_string(), "1".to_string()],
                modulus: None,
            }),
            tolerances: Tolerances::default().into(),
            inputs_digest: "sha256:00".to_string(),
            interpretation: Some("x".to_string()),
            details: None,
        };
        let json = report.to_json();
        let parsed: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.outcome, "Fail");
        assert_eq!(parsed.witness, report.witness);
        // integers survive as exact strings
        let witness = strings_to_bigints(parsed.witness.as_ref().unwrap()).unwrap();
        assert_eq!(witness, vec![BigInt::from(1), BigInt::from(0)]);
    }
}
