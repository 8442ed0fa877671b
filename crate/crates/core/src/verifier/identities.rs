//! Polynomial identities checked by the fuzzer.
//!
//! Each identity maps sampled ring elements to a pair of sides that must be
//! equal in every associative ring.

use crate::commutator::bracket_coords;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{Coords, Ring};

/// Per-sample data beyond the free variables.
#[derive(Clone, Debug)]
pub struct Extras {
    /// Nonzero scalar, a unit when the ring has finite characteristic.
    pub beta: Int,
    /// An idempotent of the ring.
    pub idempotent: Coords,
}

pub type Eval = fn(&Ring, &Extras, &[Coords]) -> (Coords, Coords);

#[derive(Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    /// Number of sampled free variables.
    pub inputs: usize,
    pub eval: Eval,
    /// Deliberately false; used only to check that the fuzzer can fail.
    pub corrupted: bool,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity").field("name", &self.name).finish()
    }
}

fn br(ring: &Ring, elems: &[Coords]) -> Coords {
    bracket_coords(ring, elems, &Int::ONE)
}

/// `[a_1..a_n] r` as a signed sum of brackets with `r` absorbed at each slot.
/// Slots of the same parity as `n` take `a_j r`, the others `r a_j`.
fn right_absorb(ring: &Ring, a: &[Coords], r: &Coords, flip_last: bool) -> (Coords, Coords) {
    let n = a.len();
    let lhs = ring.mul(&br(ring, a), r);
    let mut rhs = ring.zero_coords();
    for j in 0..n {
        let mut t = a.to_vec();
        t[j] = if (n - 1 - j) % 2 == 0 {
            ring.mul(&a[j], r)
        } else {
            ring.mul(r, &a[j])
        };
        let v = br(ring, &t);
        let negative = (n - 1 - j) % 2 == 1;
        let negative = if flip_last && j == n - 1 { !negative } else { negative };
        rhs = if negative { ring.sub(&rhs, &v) } else { ring.add(&rhs, &v) };
    }
    (lhs, rhs)
}

/// Mirror image of [`right_absorb`]: `r [a_1..a_n]`.
fn left_absorb(ring: &Ring, a: &[Coords], r: &Coords) -> (Coords, Coords) {
    let n = a.len();
    let lhs = ring.mul(r, &br(ring, a));
    let mut rhs = ring.zero_coords();
    for j in 0..n {
        let mut t = a.to_vec();
        t[j] = if (n - 1 - j) % 2 == 0 {
            ring.mul(r, &a[j])
        } else {
            ring.mul(&a[j], r)
        };
        let v = br(ring, &t);
        rhs = if (n - 1 - j) % 2 == 1 { ring.sub(&rhs, &v) } else { ring.add(&rhs, &v) };
    }
    (lhs, rhs)
}

fn right_absorption<const N: usize>(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    right_absorb(ring, &v[..N], &v[N], false)
}

fn right_absorption_corrupted(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    right_absorb(ring, &v[..3], &v[3], true)
}

fn left_absorption<const N: usize>(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    left_absorb(ring, &v[..N], &v[N])
}

/// `[x, z^(n-1)] = [x, z, ..., z]_n`.
fn power_commutator<const N: usize>(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    let (x, z) = (&v[0], &v[1]);
    let lhs = ring.commutator(x, &ring.pow(z, N - 1));
    let mut args = vec![x.clone()];
    args.extend(std::iter::repeat(z.clone()).take(N - 1));
    (lhs, br(ring, &args))
}

/// `x y z^(n-1) - z^(n-1) y x = [x, y, z, ..., z, z^2]_n`.
fn power_sandwich<const N: usize>(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let zp = ring.pow(z, N - 1);
    let lhs = ring.sub(&ring.product(&[x, y, &zp]), &ring.product(&[&zp, y, x]));
    let mut args = vec![x.clone(), y.clone()];
    args.extend(std::iter::repeat(z.clone()).take(N - 3));
    args.push(ring.mul(z, z));
    (lhs, br(ring, &args))
}

fn beta_bracket(ring: &Ring, args: &[Coords], beta: &Int) -> Coords {
    bracket_coords(ring, args, beta)
}

/// `y (a x b - beta b x a) z` as three bracket terms.
fn beta_expansion(ring: &Ring, beta: &Int, v: &[Coords]) -> (Coords, Coords) {
    let (a, b, x, y, z) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
    let inner = ring.sub(&ring.product(&[a, x, b]), &ring.scale(beta, &ring.product(&[b, x, a])));
    let lhs = ring.product(&[y, &inner, z]);
    let t1 = beta_bracket(ring, &[ring.product(&[y, a, x]), b.clone(), z.clone()], beta);
    let t2 = beta_bracket(ring, &[x.clone(), a.clone(), ring.product(&[z, b, y])], beta);
    let t3 = beta_bracket(ring, &[ring.product(&[x, a, z]), b.clone(), y.clone()], beta);
    (lhs, ring.add(&ring.sub(&t1, &t2), &t3))
}

fn three_brackets(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    let (a, b, x, y, z) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
    let lhs = ring.sub(
        &ring.product(&[y, a, x, b, z]),
        &ring.product(&[y, b, x, a, z]),
    );
    let t1 = br(ring, &[ring.product(&[y, a, x]), b.clone(), z.clone()]);
    let t2 = br(ring, &[ring.product(&[z, b, y]), a.clone(), x.clone()]);
    let t3 = br(ring, &[ring.product(&[x, a, z]), b.clone(), y.clone()]);
    (lhs, ring.add(&ring.add(&t1, &t2), &t3))
}

fn beta_three_brackets(ring: &Ring, e: &Extras, v: &[Coords]) -> (Coords, Coords) {
    beta_expansion(ring, &e.beta, v)
}

/// `[x, x^j, y_1, ..., y_(n-1)]_(n+1) = [x^(j+1), y_1, ..., y_(n-1)]_n`.
fn power_shift<const J: usize, const N: usize>(ring: &Ring, _: &Extras, v: &[Coords]) -> (Coords, Coords) {
    let x = &v[0];
    let ys = &v[1..N];
    let mut lhs_args = vec![x.clone(), ring.pow(x, J)];
    lhs_args.extend_from_slice(ys);
    let mut rhs_args = vec![ring.pow(x, J + 1)];
    rhs_args.extend_from_slice(ys);
    (br(ring, &lhs_args), br(ring, &rhs_args))
}

/// For `a_i` in `gRg`: `[a_1, ..., a_k]_k = [a_1, ..., a_k, g]_(k+1)`.
fn corner<const K: usize>(ring: &Ring, e: &Extras, v: &[Coords]) -> (Coords, Coords) {
    let g = &e.idempotent;
    let a: Vec<Coords> = v[..K].iter().map(|x| ring.product(&[g, x, g])).collect();
    let mut with_g = a.clone();
    with_g.push(g.clone());
    (br(ring, &a), br(ring, &with_g))
}

pub const IDENTITIES: &[Identity] = &[
    Identity {
        name: "right_absorption_n3",
        statement: "[a1,a2,a3] r = [a1 r,a2,a3] - [a1,r a2,a3] + [a1,a2,a3 r]",
        inputs: 4,
        eval: right_absorption::<3>,
        corrupted: false,
    },
    Identity {
        name: "right_absorption_n5",
        statement: "[a1..a5] r expanded with r absorbed slot by slot",
        inputs: 6,
        eval: right_absorption::<5>,
        corrupted: false,
    },
    Identity {
        name: "left_absorption_n3",
        statement: "r [a1,a2,a3] = [r a1,a2,a3] - [a1,a2 r,a3] + [a1,a2,r a3]",
        inputs: 4,
        eval: left_absorption::<3>,
        corrupted: false,
    },
    Identity {
        name: "left_absorption_n5",
        statement: "r [a1..a5] expanded with r absorbed slot by slot",
        inputs: 6,
        eval: left_absorption::<5>,
        corrupted: false,
    },
    Identity {
        name: "power_commutator_n3",
        statement: "[x, z^2] = [x,z,z]_3",
        inputs: 2,
        eval: power_commutator::<3>,
        corrupted: false,
    },
    Identity {
        name: "power_commutator_n4",
        statement: "[x, z^3] = [x,z,z,z]_4",
        inputs: 2,
        eval: power_commutator::<4>,
        corrupted: false,
    },
    Identity {
        name: "power_commutator_n5",
        statement: "[x, z^4] = [x,z,z,z,z]_5",
        inputs: 2,
        eval: power_commutator::<5>,
        corrupted: false,
    },
    Identity {
        name: "power_sandwich_n3",
        statement: "x y z^2 - z^2 y x = [x,y,z^2]_3",
        inputs: 3,
        eval: power_sandwich::<3>,
        corrupted: false,
    },
    Identity {
        name: "power_sandwich_n4",
        statement: "x y z^3 - z^3 y x = [x,y,z,z^2]_4",
        inputs: 3,
        eval: power_sandwich::<4>,
        corrupted: false,
    },
    Identity {
        name: "power_sandwich_n5",
        statement: "x y z^4 - z^4 y x = [x,y,z,z,z^2]_5",
        inputs: 3,
        eval: power_sandwich::<5>,
        corrupted: false,
    },
    Identity {
        name: "three_bracket_expansion",
        statement: "y(axb - bxa)z = [yax,b,z] + [zby,a,x] + [xaz,b,y]",
        inputs: 5,
        eval: three_brackets,
        corrupted: false,
    },
    Identity {
        name: "beta_three_bracket_expansion",
        statement: "y(axb - beta bxa)z = [yax,b,z]_beta - [x,a,zby]_beta + [xaz,b,y]_beta",
        inputs: 5,
        eval: beta_three_brackets,
        corrupted: false,
    },
    Identity {
        name: "power_shift_j1_n2",
        statement: "[x,x,y1]_3 = [x^2,y1]_2",
        inputs: 2,
        eval: power_shift::<1, 2>,
        corrupted: false,
    },
    Identity {
        name: "power_shift_j1_n3",
        statement: "[x,x,y1,y2]_4 = [x^2,y1,y2]_3",
        inputs: 3,
        eval: power_shift::<1, 3>,
        corrupted: false,
    },
    Identity {
        name: "power_shift_j2_n3",
        statement: "[x,x^2,y1,y2]_4 = [x^3,y1,y2]_3",
        inputs: 3,
        eval: power_shift::<2, 3>,
        corrupted: false,
    },
    Identity {
        name: "power_shift_j2_n4",
        statement: "[x,x^2,y1,y2,y3]_5 = [x^3,y1,y2,y3]_4",
        inputs: 4,
        eval: power_shift::<2, 4>,
        corrupted: false,
    },
    Identity {
        name: "corner_k2",
        statement: "[a1,a2]_2 = [a1,a2,g]_3 for a_i in gRg, g idempotent",
        inputs: 2,
        eval: corner::<2>,
        corrupted: false,
    },
    Identity {
        name: "corner_k3",
        statement: "[a1,a2,a3]_3 = [a1,a2,a3,g]_4 for a_i in gRg, g idempotent",
        inputs: 3,
        eval: corner::<3>,
        corrupted: false,
    },
    Identity {
        name: "corner_k4",
        statement: "[a1..a4]_4 = [a1..a4,g]_5 for a_i in gRg, g idempotent",
        inputs: 4,
        eval: corner::<4>,
        corrupted: false,
    },
    Identity {
        name: "corrupted_right_absorption_n3",
        statement: "right_absorption_n3 with the sign of the last term flipped (false)",
        inputs: 4,
        eval: right_absorption_corrupted,
        corrupted: true,
    },
];

/// Identities that hold in every associative ring.
pub fn valid_identities() -> impl Iterator<Item = &'static Identity> {
    IDENTITIES.iter().filter(|i| !i.corrupted)
}

pub fn identity(name: &str) -> Result<&'static Identity> {
    IDENTITIES
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}
