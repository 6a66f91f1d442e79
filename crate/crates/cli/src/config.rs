//! Run configuration files: flat `key = value` pairs under `[mount]` and
//! `[antenna]` section headers (valid TOML). Units are spelled out in the
//! key names. Missing mount keys fall back to the mid-range mount defaults.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use sattrack_core::{AntennaConfig, MountConfig};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub mount: MountSection,
    pub antenna: Option<AntennaSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MountSection {
    pub v_max_az_deg_s: f64,
    pub v_max_el_deg_s: f64,
    pub accel_az_deg_s2: f64,
    pub accel_el_deg_s2: f64,
    pub latency_s: f64,
    pub command_interval_s: f64,
    pub sim_step_s: f64,
}

impl Default for MountSection {
    fn default() -> Self {
        let cfg = MountConfig::default();
        Self {
            v_max_az_deg_s: cfg.v_max_az,
            v_max_el_deg_s: cfg.v_max_el,
            accel_az_deg_s2: cfg.accel_az,
            accel_el_deg_s2: cfg.accel_el,
            latency_s: cfg.latency,
            command_interval_s: cfg.command_interval,
            sim_step_s: cfg.sim_step,
        }
    }
}

impl MountSection {
    pub fn to_mount_config(&self) -> Result<MountConfig> {
        MountConfig::new(
            self.v_max_az_deg_s,
            self.v_max_el_deg_s,
            self.accel_az_deg_s2,
            self.accel_el_deg_s2,
            self.latency_s,
            self.command_interval_s,
            self.sim_step_s,
        )
        .map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaSection {
    pub gain_dbi: f64,
    pub efficiency: f64,
    pub frequency_ghz: f64,
    pub hpbw_deg: Option<f64>,
}

impl AntennaSection {
    pub fn to_antenna_config(&self) -> Result<AntennaConfig> {
        let cfg = AntennaConfig::new(self.gain_dbi, self.efficiency, self.frequency_ghz * 1e9)
            .map_err(|e| anyhow!("{e}"))?;
        Ok(match self.hpbw_deg {
            Some(h) => cfg.with_hpbw(h),
            None => cfg,
        })
    }
}

/// Loads a config file, failing with the path in the message when the file
/// is missing or malformed.
pub fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("cannot parse config file {}", path.display()))
}

/// Loads the `[antenna]` section of a config file, requiring it to exist.
pub fn load_antenna(path: &Path) -> Result<AntennaConfig> {
    let cfg = load_config(path)?;
    let section = cfg
        .antenna
        .ok_or_else(|| anyhow!("{} has no [antenna] section", path.display()))?;
    section.to_antenna_config()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_mirror_the_standard_mount() {
        let cfg = MountSection::default().to_mount_config().unwrap();
        assert_eq!(cfg, MountConfig::default());
    }

    #[test]
    fn parses_partial_mount_section() {
        let parsed: FileConfig = toml::from_str(
            "[mount]\nv_max_az_deg_s = 5.0\n\n[antenna]\ngain_dbi = 60.0\nefficiency = 0.7\nfrequency_ghz = 130.0\n",
        )
        .unwrap();
        let mount = parsed.mount.to_mount_config().unwrap();
        assert_eq!(mount.v_max_az, 5.0);
        assert_eq!(mount.v_max_el, 10.0);
        let antenna = parsed.antenna.unwrap().to_antenna_config().unwrap();
        assert_eq!(antenna.gain_dbi, 60.0);
        assert_eq!(antenna.hpbw_deg, None);
    }

    #[test]
    fn rejects_unknown_keys() {
        let parsed: Result<FileConfig, _> = toml::from_str("[mount]\nv_max = 5.0\n");
        assert!(parsed.is_err());
    }

    #[test]
    fn missing_file_names_the_path() {
        let err = load_config(Path::new("/nonexistent/config.toml")).unwrap_err();
        assert!(format!("{err}").contains("/nonexistent/config.toml"));
    }

    #[test]
    fn load_antenna_requires_section() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "[mount]").unwrap();
        let err = load_antenna(f.path()).unwrap_err();
        assert!(format!("{err}").contains("[antenna]"));
    }
}
