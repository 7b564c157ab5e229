//! The zero-spectrum report and its JSON form.
//!
//! Counts are exact. In JSON they are plain numbers up to 2^53 and decimal
//! strings above, so that every consumer reads them without precision loss.
//! Keys appear in declaration order, which makes the output canonical.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;

const JSON_SAFE_MAX: u64 = 1 << 53;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(pub BigUint);

impl ExactCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for ExactCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match u64::try_from(&self.0) {
            Ok(v) if v <= JSON_SAFE_MAX => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(ExactCount(BigUint::from(v))),
            Repr::Text(t) => t
                .parse::<BigUint>()
                .map(ExactCount)
                .map_err(|_| serde::de::Error::custom(format!("{t:?} is not a decimal integer"))),
        }
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroSpectrumReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Number of invariant divisors over `Z_m`.
    pub r_m: usize,
    pub divisors: Vec<u64>,
    /// Rank of the incidence matrix over `Z_2`.
    pub r_bar: usize,
    #[serde(rename = "count_L")]
    pub count_laplacian: ExactCount,
    #[serde(rename = "count_Q")]
    pub count_signless: ExactCount,
    #[serde(rename = "countH_L")]
    pub count_h_laplacian: ExactCount,
    #[serde(rename = "countH_Q")]
    pub count_h_signless: ExactCount,
    #[serde(rename = "countN_L")]
    pub count_n_laplacian: ExactCount,
    #[serde(rename = "countN_Q")]
    pub count_n_signless: ExactCount,
    pub odd_colorable: bool,
    pub odd_bipartite: bool,
    /// Orders of the cyclic factors of the first Laplacian eigenvector module.
    pub module_structure: Vec<u64>,
    pub composition_length: u64,
    /// Only defined for even uniformity.
    pub even_bipartitions: Option<ExactCount>,
    pub odd_bipartitions: Option<ExactCount>,
}

impl ZeroSpectrumReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `Z2 ⊕ Z4 ⊕ Z4`, or `0` for the trivial module.
pub fn format_module_structure(moduli: &[u64]) -> String {
    if moduli.is_empty() {
        return "0".to_string();
    }
    moduli.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" ⊕ ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_counts_become_strings() {
        let small = ExactCount::from(1u64 << 53);
        let big = ExactCount::from((1u64 << 53) + 1);
        assert_eq!(serde_json::to_string(&small).unwrap(), "9007199254740992");
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"9007199254740993\"");
        let huge = ExactCount(BigUint::from(6u32).pow(40));
        let text = serde_json::to_string(&huge).unwrap();
        assert_eq!(serde_json::from_str::<ExactCount>(&text).unwrap(), huge);
        assert!(serde_json::from_str::<ExactCount>("\"12x\"").is_err());
    }

    #[test]
    fn module_strings() {
        assert_eq!(format_module_structure(&[2, 4, 4]), "Z2 ⊕ Z4 ⊕ Z4");
        assert_eq!(format_module_structure(&[]), "0");
    }
}
