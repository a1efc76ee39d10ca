use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::ln_gamma;

use super::{check_overlap, OffsetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdMode {
    /// `sqrt(e^k ℓ! (k-ℓ)! / n^k)`
    Sharp,
    /// `sqrt(ln n / n^k)`, only for ℓ = 1.
    ConjecturalL1,
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdMode::Sharp => "sharp",
            ThresholdMode::ConjecturalL1 => "conjectural-l1",
        })
    }
}

impl FromStr for ThresholdMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sharp" => Ok(Self::Sharp),
            "conjectural-l1" => Ok(Self::ConjecturalL1),
            other => Err(format!("unknown threshold mode {other:?}")),
        }
    }
}

/// How much is known about a returned threshold value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    /// Proven sharp in both directions (k ≥ 6, ℓ ≥ 3).
    Sharp,
    /// Only the lower bound is established; for ℓ = 2 the upper bound is known
    /// only as ω/n^(k/2), for ℓ = 1 not at all.
    LowerBoundOnly,
    /// Unproven.
    Conjectural,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validity::Sharp => "sharp",
            Validity::LowerBoundOnly => "lower-bound-only constant",
            Validity::Conjectural => "conjectural",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub value: f64,
    pub validity: Validity,
}

/// Edge probability at which ℓ-offset Hamiltonicity of H(n, p, k) switches on.
pub fn offset_threshold(
    n: usize,
    k: usize,
    l: usize,
    mode: ThresholdMode,
) -> Result<Threshold, OffsetError> {
    check_overlap(k, l)?;
    let (nf, kf) = (n as f64, k as f64);
    Ok(match mode {
        ThresholdMode::Sharp => {
            let ln = kf + ln_gamma(l as f64 + 1.0) + ln_gamma((k - l) as f64 + 1.0) - kf * nf.ln();
            Threshold {
                value: (0.5 * ln).exp(),
                validity: if l >= 3 {
                    Validity::Sharp
                } else {
                    Validity::LowerBoundOnly
                },
            }
        }
        ThresholdMode::ConjecturalL1 => {
            if l != 1 {
                return Err(OffsetError::ModeNeedsUnitOverlap { mode, l });
            }
            Threshold {
                value: (nf.ln() / nf.powf(kf)).sqrt(),
                validity: Validity::Conjectural,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // sqrt(e^6 * 36 / 24^6)
        let t = offset_threshold(24, 6, 3, ThresholdMode::Sharp).unwrap();
        let direct = (6f64.exp() * 36.0 / 24f64.powi(6)).sqrt();
        assert!((t.value - direct).abs() < 1e-15);
        assert!((t.value - 8.718e-3).abs() < 1e-6);
        assert_eq!(t.validity, Validity::Sharp);

        // 2 e^2 / 10^4
        let t = offset_threshold(100, 4, 2, ThresholdMode::Sharp).unwrap();
        assert!((t.value - 2.0 * 2f64.exp() * 1e-4).abs() < 1e-15);
        assert!((t.value - 1.4778e-3).abs() < 1e-7);
        assert_eq!(t.validity, Validity::LowerBoundOnly);

        let t = offset_threshold(100, 3, 1, ThresholdMode::ConjecturalL1).unwrap();
        assert!((t.value - (100f64.ln() / 1e6).sqrt()).abs() < 1e-15);
        assert!((t.value - 2.146e-3).abs() < 1e-6);
        assert_eq!(t.validity, Validity::Conjectural);
    }

    #[test]
    fn parameter_checks() {
        assert!(offset_threshold(100, 4, 3, ThresholdMode::Sharp).is_err());
        assert!(offset_threshold(100, 4, 0, ThresholdMode::Sharp).is_err());
        assert!(offset_threshold(100, 2, 1, ThresholdMode::Sharp).is_err());
        assert!(matches!(
            offset_threshold(100, 4, 2, ThresholdMode::ConjecturalL1),
            Err(OffsetError::ModeNeedsUnitOverlap { .. })
        ));
        assert_eq!("conjectural-l1".parse(), Ok(ThresholdMode::ConjecturalL1));
        assert!("other".parse::<ThresholdMode>().is_err());
    }
}
