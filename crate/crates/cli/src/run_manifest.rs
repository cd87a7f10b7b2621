use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Outcome;

/// Enough to rerun a command and check that it reproduced its output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// SHA-256 over the input files in argument order.
    pub input_digest: Option<String>,
    pub output_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn for_run(outcome: &Outcome) -> anyhow::Result<Self> {
        let mut args = std::env::args().skip(1);
        let mut arguments = Vec::new();
        // The manifest flag names the manifest itself, not the run.
        while let Some(arg) = args.next() {
            if arg == "--manifest" {
                args.next();
            } else if !arg.starts_with("--manifest=") {
                arguments.push(arg);
            }
        }
        let command = arguments
            .iter()
            .find(|a| !a.starts_with('-'))
            .cloned()
            .unwrap_or_default();
        let input_digest = if outcome.inputs.is_empty() {
            None
        } else {
            let mut hasher = Sha256::new();
            for path in &outcome.inputs {
                hasher.update(std::fs::read(path)?);
            }
            Some(hex::encode(hasher.finalize()))
        };
        Ok(Self {
            command,
            arguments,
            seed: outcome.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
            output_digest: sha256_hex(outcome.text.as_bytes()),
        })
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn manifest_round_trips() {
        let m = RunManifest {
            command: "verify".into(),
            arguments: vec!["verify".into(), "--ell".into(), "12".into()],
            seed: None,
            tool_version: "0.1.0".into(),
            input_digest: Some(sha256_hex(b"3 3\n")),
            output_digest: sha256_hex(b"{}"),
        };
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<RunManifest>(&json).unwrap(), m);
    }
}
