use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::torus::GroupModel;

/// Declarative pipeline input, read from TOML.
///
/// `polynomial` lists coefficients constant term first, so `x^4 + x + 1`
/// is `[1, 1, 0, 0, 1]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub polynomial: Vec<i64>,
    #[serde(default)]
    pub selection_flip: Option<Vec<bool>>,
    #[serde(default = "default_level")]
    pub level: u8,
    #[serde(default = "default_prime_bound")]
    pub prime_bound: u64,
    #[serde(default = "default_multiplicities")]
    pub multiplicities: [usize; 4],
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
    /// Extra product factor: `elliptic` for the odd-dimensional case,
    /// `p1`, `p2`, ... for a simply connected `Z`.
    #[serde(default)]
    pub factor: Option<String>,
    /// Galois group used by the orbit bound; defaults to the full symmetric
    /// group once the certificate says so.
    #[serde(default)]
    pub group: Option<GroupModel>,
    #[serde(default)]
    pub kummer: KummerConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct KummerConfig {
    /// Terms `[i, j, c]` added to `c_1` of the normal bundle of the
    /// diagonal as `c · e_i ∧ e_j` (1-based); nonempty only in controls.
    #[serde(default)]
    pub diag_c1_shift: Vec<[i64; 3]>,
    /// Number of seeded random classes of `P` tested besides its basis.
    #[serde(default = "default_random_classes")]
    pub random_classes: usize,
}

impl Default for KummerConfig {
    fn default() -> Self {
        Self {
            diag_c1_shift: Vec::new(),
            random_classes: default_random_classes(),
        }
    }
}

fn default_level() -> u8 {
    1
}
fn default_prime_bound() -> u64 {
    1000
}
fn default_multiplicities() -> [usize; 4] {
    [1, 2, 3, 4]
}
fn default_tolerance() -> f64 {
    1e-9
}
fn default_random_classes() -> usize {
    2
}

impl PipelineConfig {
    pub fn for_polynomial(coeffs: &[i64]) -> Self {
        Self {
            polynomial: coeffs.to_vec(),
            selection_flip: None,
            level: default_level(),
            prime_bound: default_prime_bound(),
            multiplicities: default_multiplicities(),
            tolerance: default_tolerance(),
            seed: 0,
            factor: None,
            group: None,
            kummer: KummerConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.poly();
        f.require_monic()?;
        if f.degree() == 0 || f.degree() % 2 == 1 {
            return Err(Error::OddDegree(f.degree()));
        }
        if self.multiplicities.contains(&0) {
            return Err(Error::Config("multiplicities must be positive".into()));
        }
        if !(1..=2).contains(&self.level) {
            return Err(Error::Config(format!(
                "level must be 1 or 2, got {}",
                self.level
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn poly(&self) -> IntPolynomial {
        IntPolynomial::from_i64(&self.polynomial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let c = PipelineConfig::from_toml("polynomial = [1, 1, 0, 0, 1]\nlevel = 2\n").unwrap();
        assert_eq!(c.level, 2);
        assert_eq!(c.multiplicities, [1, 2, 3, 4]);
        assert_eq!(c.kummer.random_classes, 2);
        assert!(PipelineConfig::from_toml("polynomial = [1, 1, 0, 1]").is_err());
        assert!(PipelineConfig::from_toml("polynomial = [1, 1, 0, 0, 2]").is_err());
        assert!(PipelineConfig::from_toml("polynomial = [1, 0, 1]\nbogus = 1").is_err());
        let g = PipelineConfig::from_toml(
            "polynomial = [1, 0, 0, 0, 1]\n[group]\nkind = \"generators\"\ngenerators = [[1, 0, 3, 2]]\n",
        )
        .unwrap();
        assert!(matches!(g.group, Some(GroupModel::Generators { .. })));
    }
}
