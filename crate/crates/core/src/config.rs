//! Run configuration: config file, then flags, then environment.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::nadf::HomologyPath;

pub const CACHE_ENV: &str = "TCRGF_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Contents of an optional TOML config file. Every field may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_degree: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub homology: Option<HomologyPath>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line; `None` means not given.
#[derive(Clone, Debug, Default)]
pub struct FlagConfig {
    pub max_degree: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub json: bool,
    pub threads: Option<usize>,
    pub homology: Option<HomologyPath>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_degree: usize,
    /// `None` keeps results in memory only.
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// `None` lets the thread pool pick.
    pub threads: Option<usize>,
    pub homology: HomologyPath,
}

impl RunConfig {
    pub const DEFAULT_MAX_DEGREE: usize = 6;

    /// Merges the sources. For `cache_dir` the environment wins over flags,
    /// which win over the file; the other fields take flags over file.
    pub fn resolve(file: FileConfig, flags: FlagConfig, env_cache: Option<String>) -> Result<Self> {
        let cache_dir = env_cache.filter(|s| !s.is_empty()).map(PathBuf::from).or(flags.cache_dir).or(file.cache_dir);
        let threads = flags.threads.or(file.threads);
        if threads == Some(0) {
            return Err(Error::Config("thread count must be positive".into()));
        }
        let output_format = if flags.json { OutputFormat::Json } else { file.output_format.unwrap_or_default() };
        Ok(RunConfig {
            max_degree: flags.max_degree.or(file.max_degree).unwrap_or(Self::DEFAULT_MAX_DEGREE),
            cache_dir,
            output_format,
            threads,
            homology: flags.homology.or(file.homology).unwrap_or(HomologyPath::Normalized),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = FileConfig { cache_dir: Some("file".into()), max_degree: Some(3), ..Default::default() };
        let flags = FlagConfig { cache_dir: Some("flag".into()), ..Default::default() };
        let c = RunConfig::resolve(file.clone(), flags.clone(), None).unwrap();
        assert_eq!(c.cache_dir, Some(PathBuf::from("flag")));
        assert_eq!(c.max_degree, 3);
        let c = RunConfig::resolve(file.clone(), flags, Some("env".into())).unwrap();
        assert_eq!(c.cache_dir, Some(PathBuf::from("env")));
        let c = RunConfig::resolve(file, FlagConfig::default(), None).unwrap();
        assert_eq!(c.cache_dir, Some(PathBuf::from("file")));
    }

    #[test]
    fn parse_toml() {
        let f: FileConfig = toml::from_str("max_degree = 4\noutput_format = \"json\"\nhomology = \"moore\"\n").unwrap();
        assert_eq!(f.max_degree, Some(4));
        assert_eq!(f.output_format, Some(OutputFormat::Json));
        assert_eq!(f.homology, Some(HomologyPath::Moore));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }

    #[test]
    fn zero_threads_rejected() {
        let flags = FlagConfig { threads: Some(0), ..Default::default() };
        assert!(RunConfig::resolve(FileConfig::default(), flags, None).is_err());
    }
}
