use std::fs;

use homocert::cover::Surjection;
use homocert::freegrp::{enumerate_orbit_ball, is_prime, OrbitSpec, DEFAULT_ORBIT_CAP};
use homocert::group::FiniteGroup;
use homocert::presets::{self, Preset};
use homocert::truncalg::{CentralCharacter, DEFAULT_GROUP_CAP};
use homocert::Word;
use serde::Deserialize;

use crate::args::Opts;
use crate::Failure;

/// A surjection read from disk: one permutation per free generator, and
/// optionally a central character given on words.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurjectionFile {
    name: String,
    permutations: Vec<Vec<usize>>,
    #[serde(default)]
    psi: Option<PsiFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiFile {
    p: u64,
    /// `(word, value)` for each nonidentity element of the central subgroup.
    values: Vec<(String, u64)>,
}

pub struct Instance {
    pub name: String,
    pub surjection: Surjection,
    pub psi: Option<CentralCharacter>,
    pub p: Option<u64>,
    pub graded_dims: Option<Vec<u64>>,
}

impl Instance {
    pub fn psi(&self) -> Result<&CentralCharacter, Failure> {
        self.psi
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("preset {} has no central character", self.name)))
    }
}

fn from_preset(name: &str, p: Preset) -> Instance {
    Instance {
        name: name.into(),
        surjection: p.surjection,
        psi: Some(p.psi),
        p: Some(p.p),
        graded_dims: p.graded_dims,
    }
}

pub fn group_cap(o: &Opts) -> usize {
    o.cap.map_or(DEFAULT_GROUP_CAP, |c| c as usize)
}

pub fn zassenhaus_params(o: &Opts) -> (usize, u32, u32) {
    (o.n.unwrap_or(2), o.p.unwrap_or(2) as u32, o.k.unwrap_or(1))
}

pub fn load_instance(o: &Opts) -> Result<Instance, Failure> {
    match o.preset.as_str() {
        "q8" => Ok(from_preset("q8", presets::q8())),
        "zassenhaus" => {
            let (n, p, k) = zassenhaus_params(o);
            let z = presets::zassenhaus(n, p, k, group_cap(o))?;
            Ok(from_preset(&format!("zassenhaus({n},{p},{k})"), z.preset))
        }
        path => load_file(path, group_cap(o)),
    }
}

fn load_file(path: &str, cap: usize) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read preset {path}: {e}")))?;
    let file: SurjectionFile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad surjection file {path}: {e}")))?;
    let rank = file.permutations.len();
    if rank == 0 {
        return Err(Failure::Usage("a surjection needs at least one generator".into()));
    }
    let closure = FiniteGroup::from_permutations(file.name.clone(), &file.permutations, cap)?;
    let surjection = Surjection::new(file.name.clone(), closure.group, closure.generators)?;
    let psi = match file.psi {
        None => None,
        Some(f) => {
            if !is_prime(f.p) {
                return Err(Failure::Usage(format!("psi modulus {} is not prime", f.p)));
            }
            let mut values = vec![(0, 0)];
            for (w, v) in &f.values {
                let g = surjection.eval(&Word::parse(w, rank)?);
                if g != 0 {
                    values.push((g, v % f.p));
                }
            }
            Some(CentralCharacter { p: f.p, values })
        }
    };
    Ok(Instance {
        name: file.name,
        p: psi.as_ref().map(|c| c.p),
        surjection,
        psi,
        graded_dims: None,
    })
}

/// The orbit ball selected by `--orbit` and `--radius`, with its mode label.
pub fn orbit_words(o: &Opts, rank: usize, default_p: Option<u64>) -> Result<(String, Vec<Word>), Failure> {
    let cap = o.cap.map_or(DEFAULT_ORBIT_CAP, |c| c as usize);
    let spec = match o.orbit.as_str() {
        "primitives" => OrbitSpec::primitives(rank, o.radius),
        "p-primitives" => {
            let p =
                o.p.or(default_p)
                    .ok_or_else(|| Failure::Usage("p-primitives needs --p".into()))?;
            OrbitSpec::p_primitives(p, o.radius)?
        }
        other => match other.strip_prefix("words:") {
            Some(list) => {
                let seeds = list
                    .split(',')
                    .map(|w| Word::parse(w.trim(), rank))
                    .collect::<Result<Vec<_>, _>>()?;
                OrbitSpec::custom(seeds, o.radius)?
            }
            None => return Err(Failure::Usage(format!("unknown orbit mode {other}"))),
        },
    };
    let words = enumerate_orbit_ball(&spec, rank, cap)?;
    Ok((spec.mode().to_string(), words))
}
