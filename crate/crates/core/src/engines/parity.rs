use crate::endo::Endo;
use crate::involution::{symmetry_type, Builtin, SymmetryType};
use crate::poly::{Axis, Parity, Poly};

use super::{require_keller, EngineError};

/// One applicable parity observation on `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityFinding {
    pub axis: Axis,
    pub parity: Parity,
    pub involution: Builtin,
    pub symmetry: SymmetryType,
}

impl ParityFinding {
    /// `"odd(0,1)"`, `"even(1,0)"`, …
    pub fn case(&self) -> String {
        let kind = if self.parity == Parity::AllOdd { "odd" } else { "even" };
        format!("{kind}{}", self.axis.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityOutcome {
    /// Axis `(0,1)` first, then `(1,0)`; never empty.
    pub findings: Vec<ParityFinding>,
}

/// Reads a `β`/`γ` (skew-)symmetry of `f(x)` off its weighted parities:
/// even in `y` means `β`-symmetric, odd in `y` means `β`-skew, and likewise
/// `x` with `γ`.
pub fn parity_classify(f: &Endo) -> Result<ParityOutcome, EngineError> {
    require_keller(f)?;
    parity_of(&f.p)
}

/// [`parity_classify`] on a bare polynomial.
pub fn parity_of(p: &Poly) -> Result<ParityOutcome, EngineError> {
    let mut findings = Vec::new();
    for (axis, involution) in [(Axis::Y, Builtin::Beta), (Axis::X, Builtin::Gamma)] {
        let parity = p.parity_profile(axis).map_err(|_| EngineError::NotApplicable)?;
        let symmetry = match parity {
            Parity::AllEven => SymmetryType::Symmetric,
            Parity::AllOdd => SymmetryType::Skew,
            Parity::Mixed => continue,
        };
        if symmetry_type(p, &involution.endo()) != symmetry {
            return Err(EngineError::Internal(format!("substitution disagrees with parity on {}", axis.label())));
        }
        findings.push(ParityFinding { axis, parity, involution, symmetry });
    }
    if findings.is_empty() {
        return Err(EngineError::NotApplicable);
    }
    Ok(ParityOutcome { findings })
}
