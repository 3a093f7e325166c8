//! Field catalog and stable-stems data, bundled or read from disk.

use std::path::{Path, PathBuf};

use etasphere::kwcalc::{KwError, StableStemsData};
use etasphere::witt::{Catalog, WittError};
use thiserror::Error;

pub const CATALOG_FILE: &str = "witt_catalog.json";
pub const STEMS_FILE: &str = "stable_stems.json";
pub const DATA_DIR_VAR: &str = "ETASPHERE_DATA_DIR";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("parse error at {location}: {reason}")]
    Parse { location: String, reason: String },
    #[error("invariant violated at {location}: {reason}")]
    Invariant { location: String, reason: String },
}

/// Where to look for data. Explicit paths win over `data_dir`, which wins
/// over the bundled copies.
#[derive(Clone, Debug, Default)]
pub struct ConfigPaths {
    pub catalog: Option<PathBuf>,
    pub stems: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
}

impl ConfigPaths {
    /// `data_dir` taken from the environment.
    pub fn from_env(catalog: Option<PathBuf>, stems: Option<PathBuf>) -> Self {
        let data_dir = std::env::var_os(DATA_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from);
        ConfigPaths { catalog, stems, data_dir }
    }

    fn resolve(&self, explicit: &Option<PathBuf>, file: &str) -> Option<PathBuf> {
        explicit.clone().or_else(|| self.data_dir.as_ref().map(|d| d.join(file)))
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub catalog: Catalog,
    pub stems: StableStemsData,
    /// `"bundled"` or the file path.
    pub catalog_source: String,
    pub stems_source: String,
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })
}

pub fn parse_catalog(text: &str, origin: &str) -> Result<Catalog, ConfigError> {
    Catalog::from_json(text).map_err(|e| match e {
        WittError::InvalidPresentation { name, reason } => {
            ConfigError::Invariant { location: format!("{origin}, field {name:?}"), reason }
        }
        other => ConfigError::Parse { location: origin.to_string(), reason: other.to_string() },
    })
}

pub fn parse_stems(text: &str, origin: &str) -> Result<StableStemsData, ConfigError> {
    StableStemsData::from_json(text).map_err(|e| match e {
        KwError::StemsData { location, reason } => ConfigError::Parse { location: format!("{origin}, {location}"), reason },
        KwError::StemsInvariant { location, reason } => {
            ConfigError::Invariant { location: format!("{origin}, {location}"), reason }
        }
        other => ConfigError::Parse { location: origin.to_string(), reason: other.to_string() },
    })
}

/// Loads and validates both data sets.
pub fn load_config(paths: &ConfigPaths) -> Result<Config, ConfigError> {
    let (catalog, catalog_source) = match paths.resolve(&paths.catalog, CATALOG_FILE) {
        Some(p) => {
            let origin = p.display().to_string();
            (parse_catalog(&read(&p)?, &origin)?, origin)
        }
        None => (Catalog::bundled(), "bundled".to_string()),
    };
    let (stems, stems_source) = match paths.resolve(&paths.stems, STEMS_FILE) {
        Some(p) => {
            let origin = p.display().to_string();
            (parse_stems(&read(&p)?, &origin)?, origin)
        }
        None => (StableStemsData::bundled(), "bundled".to_string()),
    };
    Ok(Config { catalog, stems, catalog_source, stems_source })
}
