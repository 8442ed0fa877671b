//! The default ring set used by the scenarios and the fuzzer.

use crate::builtin::by_name;
use crate::error::Result;
use crate::lattice::Subgroup;
use crate::ring::{Budget, Coords, Ring};
use crate::subring::idempotents;

pub const DEFAULT_RINGS: &[&str] = &[
    "matrix2x2mod2",
    "matrix2x2mod3",
    "matrix2x2mod5",
    "upper3mod2",
    "strictupper4mod2",
    "strictupper5mod2",
    "matrix2x2scale2",
    "idempotentspan5mod2",
    "niltrunc2x12mod2",
    "example4n4mod2",
    "example7m2",
];

/// Unital members of the default set.
pub const UNITAL_RINGS: &[&str] = &["matrix2x2mod2", "matrix2x2mod3", "matrix2x2mod5", "upper3mod2", "example7m2"];

pub fn ring(name: &str, budget: Budget) -> Result<Ring> {
    Ok(by_name(name)?.with_budget(budget))
}

pub fn rings(names: &[&str], budget: Budget) -> Result<Vec<Ring>> {
    names.iter().map(|n| ring(n, budget)).collect()
}

/// Largest ring order for which idempotents are found by enumeration.
const IDEMPOTENT_ENUMERATION: u128 = 1 << 12;

/// Idempotents to sample from: all of them for small finite rings, otherwise
/// zero and the unity when present.
pub fn known_idempotents(ring: &Ring) -> Result<Vec<Coords>> {
    if ring.order().is_some_and(|o| o <= IDEMPOTENT_ENUMERATION) {
        return Ok(idempotents(ring)?.into_iter().map(|e| e.into_coords()).collect());
    }
    let mut out = vec![ring.zero_coords()];
    if let Some(u) = ring.unity_coords() {
        out.push(u.to_vec());
    }
    Ok(out)
}

/// Whether `R = R^2`, computed.
pub fn is_idempotent_ring(ring: &Ring) -> Result<bool> {
    Ok(crate::commutator::power_subgroup(ring, 2)?.is_full())
}

/// Whether `2R = R`, computed.
pub fn two_divisible(ring: &Ring) -> bool {
    Subgroup::full(ring).scaled(&2.into()).is_full()
}
