//! Seeded random testing of the registered identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::identities::{identity, valid_identities, Extras, Identity};
use super::rings::{known_idempotents, ring, DEFAULT_RINGS};
use super::{Checker, ScenarioResult, Witness};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{Budget, Coords, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Samples per identity, spread round-robin over `rings`.
    pub iterations: usize,
    /// Builtin ring names.
    pub rings: Vec<String>,
    pub identities: Vec<String>,
    /// Coordinates of samples over `Z` lie in `[-box_radius, box_radius]`.
    pub box_radius: i64,
}

impl FuzzConfig {
    /// Every valid identity on the default ring set.
    pub fn default_suite(seed: u64, iterations: usize) -> FuzzConfig {
        FuzzConfig {
            seed,
            iterations,
            rings: DEFAULT_RINGS.iter().map(|s| s.to_string()).collect(),
            identities: valid_identities().map(|i| i.name.to_string()).collect(),
            box_radius: 9,
        }
    }

    /// The deliberately false identity alone.
    pub fn self_test(seed: u64, iterations: usize) -> FuzzConfig {
        FuzzConfig {
            identities: vec!["corrupted_right_absorption_n3".into()],
            ..FuzzConfig::default_suite(seed, iterations)
        }
    }
}

/// 64-bit FNV-1a, used to derive a stable per-identity stream.
fn stream_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325 ^ seed, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn random_coords(ring: &Ring, rng: &mut ChaCha8Rng, radius: i64) -> Coords {
    let m = ring.modulus();
    (0..ring.dim())
        .map(|_| {
            if m.is_finite() {
                Int::from(rng.gen_range(0..m.get()))
            } else {
                Int::from(rng.gen_range(-radius..=radius))
            }
        })
        .collect()
}

fn random_beta(ring: &Ring, rng: &mut ChaCha8Rng, radius: i64) -> Int {
    let m = ring.modulus();
    loop {
        let b = if m.is_finite() {
            Int::from(rng.gen_range(1..m.get()))
        } else {
            Int::from(rng.gen_range(-radius..=radius))
        };
        if !b.is_zero() && (!m.is_finite() || m.is_unit(&b)) {
            return b;
        }
    }
}

struct Sampling {
    ring: Ring,
    idempotents: Vec<Coords>,
}

struct Mismatch {
    sample: usize,
    ring: Ring,
    inputs: Vec<Coords>,
    extras: Extras,
    lhs: Coords,
    rhs: Coords,
}

fn run_identity(id: &Identity, rings: &[Sampling], cfg: &FuzzConfig) -> Option<Mismatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, id.name));
    for sample in 0..cfg.iterations {
        let s = &rings[sample % rings.len()];
        let inputs: Vec<Coords> = (0..id.inputs)
            .map(|_| random_coords(&s.ring, &mut rng, cfg.box_radius))
            .collect();
        let extras = Extras {
            beta: random_beta(&s.ring, &mut rng, cfg.box_radius),
            idempotent: s.idempotents[rng.gen_range(0..s.idempotents.len())].clone(),
        };
        let (lhs, rhs) = (id.eval)(&s.ring, &extras, &inputs);
        if lhs != rhs {
            return Some(Mismatch {
                sample,
                ring: s.ring.clone(),
                inputs,
                extras,
                lhs,
                rhs,
            });
        }
    }
    None
}

/// Checks each identity on `iterations` samples and reports the first
/// mismatch of each with its full inputs.
pub fn fuzz_identities(cfg: &FuzzConfig) -> Result<ScenarioResult> {
    if cfg.iterations == 0 {
        return Err(Error::BadParameter("iterations must be positive".into()));
    }
    if cfg.rings.is_empty() || cfg.identities.is_empty() {
        return Err(Error::BadParameter("fuzzing needs at least one ring and one identity".into()));
    }
    if cfg.box_radius < 1 {
        return Err(Error::BadParameter("box radius must be positive".into()));
    }
    let ids: Vec<&Identity> = cfg.identities.iter().map(|n| identity(n)).collect::<Result<_>>()?;
    let rings: Vec<Sampling> = cfg
        .rings
        .iter()
        .map(|name| {
            let r = ring(name, Budget::default())?;
            Ok(Sampling {
                idempotents: known_idempotents(&r)?,
                ring: r,
            })
        })
        .collect::<Result<_>>()?;
    let outcomes: Vec<Option<Mismatch>> = ids.par_iter().map(|id| run_identity(id, &rings, cfg)).collect();

    let mut c = Checker::new("fuzz_identities");
    c.note(format!(
        "seed {}, {} samples per identity over {} rings",
        cfg.seed,
        cfg.iterations,
        rings.len()
    ));
    for (id, outcome) in ids.iter().zip(outcomes) {
        let expected = format!("{} samples agree", cfg.iterations);
        let got = match &outcome {
            None => expected.clone(),
            Some(m) => format!("mismatch at sample {} in {}", m.sample, m.ring.name()),
        };
        c.check(format!("{}: {}", id.name, id.statement), expected, got, || {
            let m = outcome.expect("mismatch present");
            vec![
                Witness::elements(format!("{}: inputs", id.name), &m.ring, &m.inputs),
                Witness::elements(format!("{}: idempotent", id.name), &m.ring, &[&m.extras.idempotent]),
                Witness::message(format!("{}: beta", id.name), m.extras.beta.to_string()),
                Witness::elements(format!("{}: left side", id.name), &m.ring, &[&m.lhs]),
                Witness::elements(format!("{}: right side", id.name), &m.ring, &[&m.rhs]),
            ]
        });
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Status;

    fn cfg(identity: &str, ring: &str, iterations: usize) -> FuzzConfig {
        FuzzConfig {
            seed: 7,
            iterations,
            rings: vec![ring.into()],
            identities: vec![identity.into()],
            box_radius: 9,
        }
    }

    #[test]
    fn right_absorption_on_m2_gf3() {
        let r = fuzz_identities(&cfg("right_absorption_n5", "matrix2x2mod3", 1000)).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn three_brackets_on_strict_upper() {
        let r = fuzz_identities(&cfg("three_bracket_expansion", "strictupper4mod2", 1000)).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn corrupted_identity_fails_with_witness() {
        let r = fuzz_identities(&cfg("corrupted_right_absorption_n3", "matrix2x2mod3", 1000)).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(!r.witnesses.is_empty());
        assert!(r.witnesses[0].label.contains("inputs"));
    }

    #[test]
    fn integer_rings_use_the_box() {
        let r = fuzz_identities(&cfg("beta_three_bracket_expansion", "matrix2x2scale2", 300)).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn reproducible() {
        let a = fuzz_identities(&FuzzConfig::self_test(3, 200)).unwrap();
        let b = fuzz_identities(&FuzzConfig::self_test(3, 200)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_errors() {
        assert_eq!(
            fuzz_identities(&cfg("no_such_identity", "matrix2x2mod2", 10)).unwrap_err(),
            Error::UnknownIdentity("no_such_identity".into())
        );
        assert!(matches!(
            fuzz_identities(&cfg("corner_k2", "matrix2x2mod2", 0)),
            Err(Error::BadParameter(_))
        ));
    }
}
