//! Built-in ring families.
//!
//! Names accepted by [`parse_name`]:
//!
//! | name                      | ring                                                  |
//! |---------------------------|-------------------------------------------------------|
//! | `matrix{k}x{k}`           | `M_k(Z)`                                              |
//! | `matrix{k}x{k}scale{s}`   | `M_k(sZ)` with basis `s e_ij`                          |
//! | `matrix{k}x{k}mod{m}`     | `M_k(Z/m)`; add `scale{s}` before `mod` for `s e_ij`  |
//! | `strictupper{k}mod{m}`    | strictly upper triangular `k x k` matrices            |
//! | `upper{k}mod{m}`          | upper triangular `k x k` matrices                     |
//! | `idempotentspan{N}mod{p}` | span of `v_1..v_N` with `v_i v_j = v_i` over `GF(p)`   |
//! | `niltrunc{k}x{K}mod{p}`   | `M_k(T_K)`, `T_K` spanned by `v_{a/K}`, `0 < a < K`     |
//! | `example4n{n}mod{p}`      | `F e21 + sum F e_ij (2 <= i <= j <= n)` in `M_n(GF(p))` |
//! | `example7m{k}`            | `Z I + M_k(2Z)`                                       |
//! | `zero{n}mod{m}`           | rank `n` with every product zero                      |
//! | `A+B`                     | direct sum of two builtins over the same scalars      |
//!
//! `mod{m}` may be omitted for scalars `Z`.

use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{make_ring, Modulus, Ring, RingElement, RingPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingFamily {
    Matrix { k: usize, scale: u64, modulus: u64 },
    StrictUpper { k: usize, modulus: u64 },
    UpperTriangular { k: usize, modulus: u64 },
    DirectSum(Box<RingFamily>, Box<RingFamily>),
    IdempotentSpan { n: usize, p: u64 },
    NilTruncation { k: usize, denominator: usize, p: u64 },
    Example4 { n: usize, p: u64 },
    Example7 { k: usize },
    ZeroProduct { n: usize, modulus: u64 },
}

fn suffix(modulus: u64) -> String {
    if modulus == 0 {
        String::new()
    } else {
        format!("mod{modulus}")
    }
}

impl RingFamily {
    /// Canonical builtin name; [`parse_name`] inverts it.
    pub fn name(&self) -> String {
        match self {
            RingFamily::Matrix { k, scale: 1, modulus } => format!("matrix{k}x{k}{}", suffix(*modulus)),
            RingFamily::Matrix { k, scale, modulus } => {
                format!("matrix{k}x{k}scale{scale}{}", suffix(*modulus))
            }
            RingFamily::StrictUpper { k, modulus } => format!("strictupper{k}{}", suffix(*modulus)),
            RingFamily::UpperTriangular { k, modulus } => format!("upper{k}{}", suffix(*modulus)),
            RingFamily::DirectSum(a, b) => format!("{}+{}", a.name(), b.name()),
            RingFamily::IdempotentSpan { n, p } => format!("idempotentspan{n}mod{p}"),
            RingFamily::NilTruncation { k, denominator, p } => format!("niltrunc{k}x{denominator}mod{p}"),
            RingFamily::Example4 { n, p } => format!("example4n{n}mod{p}"),
            RingFamily::Example7 { k } => format!("example7m{k}"),
            RingFamily::ZeroProduct { n, modulus } => format!("zero{n}{}", suffix(*modulus)),
        }
    }
}

fn name_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^(?:matrix(?P<mk>\d+)x(?P<mk2>\d+)(?:scale(?P<ms>\d+))?|strictupper(?P<sk>\d+)|upper(?P<uk>\d+)|idempotentspan(?P<in>\d+)|niltrunc(?P<nk>\d+)x(?P<nd>\d+)|example4n(?P<en>\d+)|example7m(?P<ek>\d+)|zero(?P<zn>\d+))(?:mod(?P<m>\d+))?$",
        )
        .expect("builtin name regex")
    })
}

pub fn parse_name(name: &str) -> Result<RingFamily> {
    if let Some((a, b)) = name.split_once('+') {
        return Ok(RingFamily::DirectSum(
            Box::new(parse_name(a)?),
            Box::new(parse_name(b)?),
        ));
    }
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let caps = name_regex().captures(name).ok_or_else(unknown)?;
    let num = |key: &str| -> Result<Option<u64>> {
        caps.name(key)
            .map(|m| m.as_str().parse::<u64>().map_err(|_| unknown()))
            .transpose()
    };
    let size = |key: &str| -> Result<Option<usize>> { Ok(num(key)?.map(|v| v as usize)) };
    let modulus = num("m")?.unwrap_or(0);
    let prime = || (modulus > 0).then_some(modulus).ok_or_else(unknown);
    let fam = if let Some(k) = size("mk")? {
        if size("mk2")? != Some(k) {
            return Err(unknown());
        }
        RingFamily::Matrix {
            k,
            scale: num("ms")?.unwrap_or(1),
            modulus,
        }
    } else if let Some(k) = size("sk")? {
        RingFamily::StrictUpper { k, modulus }
    } else if let Some(k) = size("uk")? {
        RingFamily::UpperTriangular { k, modulus }
    } else if let Some(n) = size("in")? {
        RingFamily::IdempotentSpan { n, p: prime()? }
    } else if let Some(k) = size("nk")? {
        RingFamily::NilTruncation {
            k,
            denominator: size("nd")?.unwrap_or(0),
            p: prime()?,
        }
    } else if let Some(n) = size("en")? {
        RingFamily::Example4 { n, p: prime()? }
    } else if let Some(k) = size("ek")? {
        if modulus != 0 {
            return Err(unknown());
        }
        RingFamily::Example7 { k }
    } else if let Some(n) = size("zn")? {
        RingFamily::ZeroProduct { n, modulus }
    } else {
        return Err(unknown());
    };
    Ok(fam)
}

/// Builds a ring from a `builtin:` name.
pub fn by_name(name: &str) -> Result<Ring> {
    build(&parse_name(name)?)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

fn check_size(what: &str, k: usize, lo: usize) -> Result<()> {
    // Single-digit indices keep labels such as `e12` unambiguous.
    if (lo..=9).contains(&k) {
        Ok(())
    } else {
        Err(bad(format!("{what} must lie in {lo}..=9, got {k}")))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(bad(format!("{p} is not prime")))
    }
}

/// Ring spanned by `scale * e_ij` for the listed matrix units, closed by assumption.
fn matrix_units(
    name: String,
    units: &[(usize, usize)],
    scale: u64,
    modulus: Modulus,
    unity: bool,
) -> Result<Ring> {
    let label = |&(i, j): &(usize, usize)| {
        if scale == 1 {
            format!("e{i}{j}")
        } else {
            format!("{scale}e{i}{j}")
        }
    };
    let labels = units.iter().map(label).collect();
    let mut p = RingPresentation::zero_products(name, labels, modulus);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(j2, l)) in units.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let c = units
                .iter()
                .position(|&u| u == (i, l))
                .ok_or_else(|| bad(format!("e{i}{l} missing from unit set")))?;
            p.add_product(a, b, c, Int::from(scale));
        }
    }
    if unity {
        p.unity = Some(units.iter().map(|&(i, j)| Int::from(u32::from(i == j))).collect());
    }
    make_ring(p)
}

pub fn build(fam: &RingFamily) -> Result<Ring> {
    let name = fam.name();
    match *fam {
        RingFamily::Matrix { k, scale, modulus } => {
            check_size("matrix size", k, 1)?;
            if scale == 0 {
                return Err(bad("scale must be nonzero"));
            }
            let units: Vec<_> = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).collect();
            matrix_units(name, &units, scale, Modulus::new(modulus), scale == 1)
        }
        RingFamily::StrictUpper { k, modulus } => {
            check_size("matrix size", k, 2)?;
            let units: Vec<_> = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).collect();
            matrix_units(name, &units, 1, Modulus::new(modulus), false)
        }
        RingFamily::UpperTriangular { k, modulus } => {
            check_size("matrix size", k, 1)?;
            let units: Vec<_> = (1..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect();
            matrix_units(name, &units, 1, Modulus::new(modulus), true)
        }
        RingFamily::Example4 { n, p } => {
            check_size("n", n, 3)?;
            check_prime(p)?;
            let mut units = vec![(2, 1)];
            units.extend((2..=n).flat_map(|i| (i..=n).map(move |j| (i, j))));
            matrix_units(name, &units, 1, Modulus::new(p), false)
        }
        RingFamily::IdempotentSpan { n, p } => {
            if n == 0 {
                return Err(bad("idempotent span needs at least one vector"));
            }
            check_prime(p)?;
            let labels = (1..=n).map(|i| format!("v{i}")).collect();
            let mut pr = RingPresentation::zero_products(name, labels, Modulus::new(p));
            for i in 0..n {
                for j in 0..n {
                    pr.add_product(i, j, i, 1);
                }
            }
            if n == 1 {
                pr.unity = Some(vec![Int::ONE]);
            }
            make_ring(pr)
        }
        RingFamily::NilTruncation { k, denominator, p } => {
            check_size("matrix size", k, 1)?;
            check_prime(p)?;
            if denominator < 2 {
                return Err(bad("truncation denominator must be at least 2"));
            }
            let basis: Vec<(usize, usize, usize)> = (1..denominator)
                .flat_map(|a| (1..=k).flat_map(move |i| (1..=k).map(move |j| (a, i, j))))
                .collect();
            let index = |a: usize, i: usize, j: usize| ((a - 1) * k + (i - 1)) * k + (j - 1);
            let labels = basis
                .iter()
                .map(|&(a, i, j)| format!("v{a}/{denominator}e{i}{j}"))
                .collect();
            let mut pr = RingPresentation::zero_products(name, labels, Modulus::new(p));
            for &(a, i, j) in &basis {
                for &(b, j2, l) in &basis {
                    if j == j2 && a + b < denominator {
                        pr.add_product(index(a, i, j), index(b, j2, l), index(a + b, i, l), 1);
                    }
                }
            }
            make_ring(pr)
        }
        RingFamily::Example7 { k } => {
            let sub = example7_subring(k)?;
            let ambient = sub.ambient();
            let labels = sub
                .embedding()
                .iter()
                .map(|row| {
                    if row.as_slice() == ambient.unity_coords().expect("unital") {
                        "I".to_string()
                    } else {
                        crate::text::format_element(ambient, row)
                    }
                })
                .collect();
            sub.ring().renamed(&name, labels)
        }
        RingFamily::ZeroProduct { n, modulus } => {
            if n == 0 {
                return Err(bad("rank must be at least 1"));
            }
            Ok(free_module(n, Modulus::new(modulus)))
        }
        RingFamily::DirectSum(ref a, ref b) => {
            let (a, b) = (build(a)?, build(b)?);
            direct_sum(&a, &b, name)
        }
    }
}

/// `Z I + M_k(2Z)` inside `M_k(Z)`, with its embedding.
pub fn example7_subring(k: usize) -> Result<crate::subring::Subring> {
    check_size("matrix size", k, 2)?;
    let ambient = build(&RingFamily::Matrix {
        k,
        scale: 1,
        modulus: 0,
    })?;
    let mut gens: Vec<RingElement> = vec![ambient.unity().expect("unital")];
    for i in 0..k * k {
        gens.push(ambient.basis_element(i).scale(&Int::from(2)));
    }
    crate::subring::subring_generated(&ambient, &gens)
}

/// Rank `n` ring with zero multiplication and basis `v1..vn`.
pub fn free_module(n: usize, modulus: Modulus) -> Ring {
    let labels = (1..=n).map(|i| format!("v{i}")).collect();
    let name = RingFamily::ZeroProduct {
        n,
        modulus: modulus.get(),
    }
    .name();
    make_ring(RingPresentation::zero_products(name, labels, modulus)).expect("zero ring is valid")
}

/// `A (+) B` with labels suffixed `@1` and `@2`.
pub fn direct_sum(a: &Ring, b: &Ring, name: impl Into<String>) -> Result<Ring> {
    if a.modulus() != b.modulus() {
        return Err(bad("direct summands must share their scalars"));
    }
    let (da, db) = (a.dim(), b.dim());
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("{l}@1"))
        .chain(b.labels().iter().map(|l| format!("{l}@2")))
        .collect();
    let mut p = RingPresentation::zero_products(name, labels, a.modulus());
    for (off, r) in [(0, a), (da, b)] {
        let c = &r.presentation().constants;
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                for (k, v) in c[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        p.add_product(off + i, off + j, off + k, v.clone());
                    }
                }
            }
        }
    }
    if let (Some(ua), Some(ub)) = (a.unity_coords(), b.unity_coords()) {
        p.unity = Some(ua.iter().chain(ub).cloned().collect());
    }
    debug_assert_eq!(p.dim, da + db);
    make_ring(p)
}
