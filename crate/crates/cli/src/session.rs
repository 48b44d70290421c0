//! The JSON session file that carries state between invocations.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qlan_topo::{Graph, QlanNetwork, RecipeReport};
use serde::{Deserialize, Serialize};

pub const SESSION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub version: u32,
    pub network: Option<QlanNetwork>,
    /// Recipe reports in the order they were produced; the last one is the
    /// current result.
    pub reports: Vec<RecipeReport>,
}

impl Session {
    pub fn new(network: QlanNetwork) -> Self {
        Session { version: SESSION_VERSION, network: Some(network), reports: Vec::new() }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read session {}; run `build` first", path.display()))?;
        let session: Session =
            serde_json::from_str(&text).with_context(|| format!("session {} is not valid", path.display()))?;
        if session.version != SESSION_VERSION {
            bail!("session {} has version {}, expected {}", path.display(), session.version, SESSION_VERSION);
        }
        Ok(session)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).with_context(|| format!("cannot write session {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("session is plain data") + "\n"
    }

    pub fn network(&self) -> Result<&QlanNetwork> {
        self.network.as_ref().context("session holds no network; run `build` first")
    }

    pub fn last_report(&self) -> Result<&RecipeReport> {
        self.reports.last().context("no recipe has been applied yet; run `apply` first")
    }

    pub fn shared(&self) -> Result<&Graph> {
        Ok(self.network()?.shared()?)
    }

    pub fn result(&self) -> Result<&Graph> {
        Ok(&self.last_report()?.result)
    }
}
