use serde::{Deserialize, Serialize};

use crate::circuits::{build_sound_g, SoundProfile, SystemDescriptor};
use crate::frege::{split_tagged, tagged, BaseError, BaseSystem, TruthTableBase};
use crate::prop::PropFormula;
use crate::translation::translate;

/// Proofs name a proof system and a length profile; the proved formula is
/// the translation of that system's `Sound_g` at those lengths. This is the
/// reduct of the (true) bounded formula `Sound_g`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReductBase;

#[derive(Serialize, Deserialize)]
struct ReductProof {
    system: SystemDescriptor,
    profile: SoundProfile,
}

impl ReductBase {
    pub const TAG: &'static str = "reduct";

    pub fn proof(system: &SystemDescriptor, profile: &SoundProfile) -> Vec<u8> {
        let body = serde_json::to_vec(&ReductProof {
            system: system.clone(),
            profile: *profile,
        })
        .expect("plain data");
        tagged(Self::TAG, &body)
    }

    pub fn verify_body(body: &[u8]) -> Result<PropFormula, BaseError> {
        let p: ReductProof = serde_json::from_slice(body)
            .map_err(|e| BaseError(format!("bad reduct proof: {e}")))?;
        let sys = p
            .system
            .instantiate()
            .map_err(|e| BaseError(e.to_string()))?;
        let s = build_sound_g(sys.as_ref(), &p.profile).map_err(|e| BaseError(e.to_string()))?;
        translate(&s, &p.profile.to_length_profile()).map_err(|e| BaseError(e.to_string()))
    }
}

impl BaseSystem for ReductBase {
    fn name(&self) -> &str {
        Self::TAG
    }

    fn verify(&self, proof: &[u8]) -> Result<PropFormula, BaseError> {
        match split_tagged(proof)? {
            (Self::TAG, body) => Self::verify_body(body),
            (t, _) => Err(BaseError(format!("unknown base tag `{t}`"))),
        }
    }
}

/// Dispatches on the tag: `truth-table` or `reduct`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardBase;

impl BaseSystem for StandardBase {
    fn name(&self) -> &str {
        "standard"
    }

    fn verify(&self, proof: &[u8]) -> Result<PropFormula, BaseError> {
        match split_tagged(proof)? {
            (TruthTableBase::TAG, body) => TruthTableBase::verify_body(body),
            (ReductBase::TAG, body) => ReductBase::verify_body(body),
            (t, _) => Err(BaseError(format!("unknown base tag `{t}`"))),
        }
    }
}
