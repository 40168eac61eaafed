use serde::{Deserialize, Serialize};

/// Operating regime by core voltage, most to least stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Deterministic,
    Transitional,
    ResonantCandidate,
    Unstable,
}

impl Regime {
    /// 0 for the most stable regime, 3 for the least.
    pub fn severity(&self) -> u8 {
        match self {
            Regime::Deterministic => 0,
            Regime::Transitional => 1,
            Regime::ResonantCandidate => 2,
            Regime::Unstable => 3,
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Regime::Deterministic => "deterministic",
            Regime::Transitional => "transitional",
            Regime::ResonantCandidate => "resonant-candidate",
            Regime::Unstable => "unstable",
        };
        f.write_str(name)
    }
}

/// Total classification over core voltage. Edges: 950 and 870 fall in
/// Transitional, 850 in ResonantCandidate.
pub fn classify_regime(core_mv: f64) -> Regime {
    if core_mv > 950.0 {
        Regime::Deterministic
    } else if core_mv >= 870.0 {
        Regime::Transitional
    } else if core_mv >= 850.0 {
        Regime::ResonantCandidate
    } else {
        Regime::Unstable
    }
}
