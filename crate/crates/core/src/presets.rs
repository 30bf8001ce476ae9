//! The two fixed witness instances: `Q8` and the Zassenhaus quotient for
//! `(n, p, k) = (2, 2, 1)`.

use crate::cover::Surjection;
use crate::error::Result;
use crate::truncalg::{build_phi, enumerate_group, psi_character, CentralCharacter, PhiMap, ZassenhausGroup};

/// A surjection together with the central character used for the projector.
pub struct Preset {
    pub surjection: Surjection,
    pub psi: CentralCharacter,
    pub p: u64,
    pub graded_dims: Option<Vec<u64>>,
}

/// `Q8` with `C = {±1}` and `Ψ(−1) = 1`.
pub fn q8() -> Preset {
    let surjection = Surjection::q8();
    let g = surjection.group();
    let minus_one = g.mul(surjection.images()[0], surjection.images()[0]);
    Preset {
        psi: CentralCharacter {
            p: 2,
            values: vec![(0, 0), (minus_one, 1)],
        },
        surjection,
        p: 2,
        graded_dims: None,
    }
}

/// The Zassenhaus quotient with its group, `Φ` and `Ψ`.
pub struct ZassenhausPreset {
    pub preset: Preset,
    pub group: ZassenhausGroup,
    pub phi: PhiMap,
}

pub fn zassenhaus(n: usize, p: u32, k: u32, cap: usize) -> Result<ZassenhausPreset> {
    let group = enumerate_group(n, p, k, cap)?;
    let phi = build_phi(n, p as u64, k)?;
    let psi = psi_character(&group, &phi)?;
    let surjection = Surjection::new(
        format!("Zassenhaus({n},{p},{k})"),
        group.table.clone(),
        group.generators.clone(),
    )?;
    Ok(ZassenhausPreset {
        preset: Preset {
            surjection,
            psi,
            p: p as u64,
            graded_dims: Some(group.graded_dims.clone()),
        },
        group,
        phi,
    })
}
