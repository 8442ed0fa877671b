//! Generalized brackets and the subgroups, ideals and closures built from them.
//!
//! The bracket `[a_1, ..., a_n]_{n,beta} = a_1 a_2 ... a_n - beta a_n ... a_2 a_1`
//! is additive in every slot, so every subgroup generated by brackets of
//! subgroup elements is spanned by brackets of basis tuples. Polynomial images
//! such as `{x^k}` are handled by evaluating on a finite coefficient grid.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{saturate, EchelonBuilder, Saturation, Subgroup};
use crate::ring::{Coords, Modulus, Ring, RingElement};

/// Arity, distinguished slot and scalar of a generalized bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    n: usize,
    r: usize,
    beta: Int,
}

fn check_nonzero_beta(modulus: Modulus, beta: &Int) -> Result<Int> {
    let beta = modulus.reduce(beta);
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    Ok(beta)
}

impl BracketSpec {
    /// `n >= 2`, `r <= n - 1`; `beta` nonzero over `Z` and a unit over `Z/m`.
    pub fn new(n: usize, r: usize, beta: impl Into<Int>, modulus: Modulus) -> Result<BracketSpec> {
        if n < 2 {
            return Err(Error::BadParameter(format!("bracket arity must be at least 2, got {n}")));
        }
        if r >= n {
            return Err(Error::BadParameter(format!("slot position {r} out of range for n = {n}")));
        }
        let beta = check_nonzero_beta(modulus, &beta.into())?;
        if modulus.is_finite() && !modulus.is_unit(&beta) {
            return Err(Error::NonUnitBeta {
                beta: beta.to_string(),
                modulus: modulus.get(),
            });
        }
        Ok(BracketSpec { n, r, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ring elements before the distinguished slot.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of ring elements after the distinguished slot.
    pub fn s(&self) -> usize {
        self.n - 1 - self.r
    }

    pub fn beta(&self) -> &Int {
        &self.beta
    }
}

fn budget_check(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { what, needed, budget })
    } else {
        Ok(())
    }
}

fn ensure_all(ring: &Ring, groups: &[&Subgroup]) -> Result<()> {
    groups.iter().try_for_each(|g| ring.ensure_same(g.ring()))
}

/// `a_1 ... a_n - beta a_n ... a_1` on raw coordinates.
pub fn bracket_coords<T: AsRef<[Int]>>(ring: &Ring, elems: &[T], beta: &Int) -> Coords {
    let fwd = ring.product(elems);
    let rev: Vec<&[Int]> = elems.iter().rev().map(AsRef::as_ref).collect();
    let bwd = ring.product(&rev);
    ring.sub(&fwd, &ring.scale(beta, &bwd))
}

/// The generalized bracket of `n >= 2` elements.
pub fn bracket_n(ring: &Ring, elems: &[RingElement], beta: &Int) -> Result<RingElement> {
    if elems.len() < 2 {
        return Err(Error::BadParameter("a bracket needs at least two entries".into()));
    }
    for e in elems {
        ring.ensure_same(e.ring())?;
    }
    let beta = check_nonzero_beta(ring.modulus(), beta)?;
    let coords: Vec<&[Int]> = elems.iter().map(RingElement::coords).collect();
    ring.element(bracket_coords(ring, &coords, &beta))
}

/// Forward and backward products of every basis tuple of a given length.
///
/// Tuples whose forward and backward products both vanish are dropped, since
/// every bracket they enter is zero. The empty tuple stands for an absent factor.
struct TupleProducts {
    fwd: Vec<Option<Coords>>,
    bwd: Vec<Option<Coords>>,
    idx: Vec<Vec<usize>>,
}

fn tuple_products(ring: &Ring, rows: &[Coords], len: usize) -> TupleProducts {
    let mut out = TupleProducts {
        fwd: vec![None],
        bwd: vec![None],
        idx: vec![Vec::new()],
    };
    for _ in 0..len {
        let mut next = TupleProducts {
            fwd: Vec::new(),
            bwd: Vec::new(),
            idx: Vec::new(),
        };
        for t in 0..out.idx.len() {
            for (i, e) in rows.iter().enumerate() {
                let f = match &out.fwd[t] {
                    None => e.clone(),
                    Some(p) => ring.mul(p, e),
                };
                let b = match &out.bwd[t] {
                    None => e.clone(),
                    Some(p) => ring.mul(e, p),
                };
                if ring.is_zero(&f) && ring.is_zero(&b) {
                    continue;
                }
                let mut idx = out.idx[t].clone();
                idx.push(i);
                next.fwd.push(Some(f));
                next.bwd.push(Some(b));
                next.idx.push(idx);
            }
        }
        out = next;
    }
    out
}

fn mul_opt(ring: &Ring, a: Option<&Coords>, b: &[Int]) -> Coords {
    match a {
        None => b.to_vec(),
        Some(a) => ring.mul(a, b),
    }
}

fn mul_opt_right(ring: &Ring, a: &[Int], b: Option<&Coords>) -> Coords {
    match b {
        None => a.to_vec(),
        Some(b) => ring.mul(a, b),
    }
}

fn bracket_dfs(
    ring: &Ring,
    slots: &[&[Coords]],
    beta: &Int,
    fwd: &Coords,
    bwd: &Coords,
    builder: &mut EchelonBuilder,
) {
    if builder.is_full() {
        return;
    }
    let Some((head, rest)) = slots.split_first() else {
        builder.insert(&ring.sub(fwd, &ring.scale(beta, bwd)));
        return;
    };
    for a in head.iter() {
        let f = ring.mul(fwd, a);
        let b = ring.mul(a, bwd);
        if ring.is_zero(&f) && ring.is_zero(&b) {
            continue;
        }
        bracket_dfs(ring, rest, beta, &f, &b, builder);
        if builder.is_full() {
            return;
        }
    }
}

/// `[A_1, ..., A_n]_{n,beta}`, spanned by brackets of basis tuples.
pub fn bracket_subgroup(ring: &Ring, groups: &[&Subgroup], beta: &Int) -> Result<Subgroup> {
    if groups.len() < 2 {
        return Err(Error::BadParameter("a bracket needs at least two entries".into()));
    }
    ensure_all(ring, groups)?;
    let beta = check_nonzero_beta(ring.modulus(), beta)?;
    let tuples = groups
        .iter()
        .try_fold(1u128, |acc, g| acc.checked_mul(g.rank() as u128))
        .unwrap_or(u128::MAX);
    budget_check("bracket tuples", tuples, ring.budget().tuples)?;
    if tuples == 0 {
        return Ok(Subgroup::zero(ring));
    }
    let slots: Vec<&[Coords]> = groups.iter().map(|g| g.rows()).collect();
    let partial: Vec<Vec<Coords>> = slots[0]
        .par_iter()
        .map(|a| {
            let mut b = EchelonBuilder::new(ring.modulus(), ring.dim());
            bracket_dfs(ring, &slots[1..], &beta, a, a, &mut b);
            b.finish()
        })
        .collect();
    Ok(Subgroup::span(ring, partial.iter().flatten()))
}

/// `[R, ..., R]_{n,beta}` with `n` copies of the ring.
pub fn bracket_power(ring: &Ring, n: usize, beta: &Int) -> Result<Subgroup> {
    let full = Subgroup::full(ring);
    let groups = vec![&full; n];
    bracket_subgroup(ring, &groups, beta)
}

/// `AB`: the subgroup generated by products `ab`.
pub fn product_subgroup(ring: &Ring, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    ensure_all(ring, &[a, b])?;
    let mut builder = EchelonBuilder::new(ring.modulus(), ring.dim());
    'outer: for x in a.rows() {
        for y in b.rows() {
            builder.insert(&ring.mul(x, y));
            if builder.is_full() {
                break 'outer;
            }
        }
    }
    Ok(Subgroup::from_builder(ring, builder))
}

/// `R^k`, with `R^1` the whole ring.
pub fn power_subgroup(ring: &Ring, k: usize) -> Result<Subgroup> {
    if k == 0 {
        return Err(Error::BadParameter("powers start at 1".into()));
    }
    let full = Subgroup::full(ring);
    let mut acc = full.clone();
    for _ in 1..k {
        if acc.is_zero() {
            break;
        }
        acc = product_subgroup(ring, &acc, &full)?;
    }
    Ok(acc)
}

/// `I(T) = T + RT + TR + RTR` together with its saturation rounds.
pub fn ideal_saturation(ring: &Ring, t: &Subgroup) -> Result<Saturation> {
    ring.ensure_same(t.ring())?;
    let basis = ring.basis();
    saturate(t.clone(), |s| {
        s.rows()
            .iter()
            .flat_map(|x| basis.iter().flat_map(move |e| [ring.mul(e, x), ring.mul(x, e)]))
            .collect()
    })
}

/// The two-sided ideal generated by `t`.
pub fn ideal_generated(ring: &Ring, t: &Subgroup) -> Result<Subgroup> {
    Ok(ideal_saturation(ring, t)?.result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// A product that leaves a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    /// Factors in multiplication order.
    pub factors: Vec<Coords>,
    pub value: Coords,
}

/// First `e_i a` or `a e_i` outside `a`'s subgroup, if any.
pub fn ideal_witness(ring: &Ring, a: &Subgroup, side: Side) -> Result<Option<Escape>> {
    ring.ensure_same(a.ring())?;
    for x in a.rows() {
        for e in ring.basis() {
            if side != Side::Right {
                let v = ring.mul(&e, x);
                if !a.contains(&v) {
                    return Ok(Some(Escape {
                        factors: vec![e.clone(), x.clone()],
                        value: v,
                    }));
                }
            }
            if side != Side::Left {
                let v = ring.mul(x, &e);
                if !a.contains(&v) {
                    return Ok(Some(Escape {
                        factors: vec![x.clone(), e],
                        value: v,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_ideal(ring: &Ring, a: &Subgroup, side: Side) -> Result<bool> {
    Ok(ideal_witness(ring, a, side)?.is_none())
}

/// `[L, R] ⊆ L`, checked on basis rows.
pub fn is_lie_ideal(ring: &Ring, a: &Subgroup) -> Result<bool> {
    ring.ensure_same(a.ring())?;
    Ok(a.rows()
        .iter()
        .all(|x| ring.basis().iter().all(|e| a.contains(&ring.commutator(x, e)))))
}

/// A bracket `[x_1, ..., x_r, a, y_1, ..., y_s]` that leaves the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieWitness {
    pub xs: Vec<Coords>,
    pub a: Coords,
    pub ys: Vec<Coords>,
    pub value: Coords,
}

struct SlotTables {
    xs: TupleProducts,
    ys: TupleProducts,
}

fn slot_tables(ring: &Ring, spec: &BracketSpec, rank: usize) -> Result<SlotTables> {
    let d = ring.dim() as u128;
    let needed = (d.checked_pow((spec.n - 1) as u32))
        .and_then(|t| t.checked_mul(rank as u128))
        .unwrap_or(u128::MAX);
    budget_check("generalized Lie tuples", needed, ring.budget().tuples)?;
    let basis = ring.basis();
    Ok(SlotTables {
        xs: tuple_products(ring, &basis, spec.r()),
        ys: tuple_products(ring, &basis, spec.s()),
    })
}

fn lie_value(ring: &Ring, t: &SlotTables, xi: usize, yi: usize, a: &[Int], beta: &Int) -> Coords {
    let fwd = mul_opt_right(ring, &mul_opt(ring, t.xs.fwd[xi].as_ref(), a), t.ys.fwd[yi].as_ref());
    let bwd = mul_opt_right(ring, &mul_opt(ring, t.ys.bwd[yi].as_ref(), a), t.xs.bwd[xi].as_ref());
    ring.sub(&fwd, &ring.scale(beta, &bwd))
}

/// Checks the generalized Lie condition at slot `r + 1`; `None` means it holds.
pub fn n_gen_lie_witness(ring: &Ring, a: &Subgroup, spec: &BracketSpec) -> Result<Option<LieWitness>> {
    ring.ensure_same(a.ring())?;
    let t = slot_tables(ring, spec, a.rank())?;
    let basis = ring.basis();
    for row in a.rows() {
        for xi in 0..t.xs.idx.len() {
            for yi in 0..t.ys.idx.len() {
                let v = lie_value(ring, &t, xi, yi, row, &spec.beta);
                if !a.contains(&v) {
                    let pick = |idx: &[usize]| idx.iter().map(|&i| basis[i].clone()).collect();
                    return Ok(Some(LieWitness {
                        xs: pick(&t.xs.idx[xi]),
                        a: row.clone(),
                        ys: pick(&t.ys.idx[yi]),
                        value: v,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_n_gen_lie_ideal(ring: &Ring, a: &Subgroup, spec: &BracketSpec) -> Result<bool> {
    Ok(n_gen_lie_witness(ring, a, spec)?.is_none())
}

/// Smallest generalized Lie ideal at slot `r + 1` containing `seed`.
pub fn n_gen_lie_closure(ring: &Ring, seed: &Subgroup, spec: &BracketSpec) -> Result<Subgroup> {
    ring.ensure_same(seed.ring())?;
    let t = slot_tables(ring, spec, ring.dim())?;
    let sat = saturate(seed.clone(), |s| {
        let mut out = Vec::new();
        for row in s.rows() {
            for xi in 0..t.xs.idx.len() {
                for yi in 0..t.ys.idx.len() {
                    out.push(lie_value(ring, &t, xi, yi, row, &spec.beta));
                }
            }
        }
        out
    })?;
    Ok(sat.result)
}

/// The subgroup generated by all squares.
pub fn squares_subgroup(ring: &Ring) -> Subgroup {
    let basis = ring.basis();
    let mut gens = Vec::new();
    for i in 0..basis.len() {
        gens.push(ring.mul(&basis[i], &basis[i]));
        for j in i + 1..basis.len() {
            gens.push(ring.add(&ring.mul(&basis[i], &basis[j]), &ring.mul(&basis[j], &basis[i])));
        }
    }
    Subgroup::span(ring, gens)
}

/// Coefficient vectors `c` with `c_j >= 0`, `sum c_j <= degree` and, over `Z/m`,
/// `c_j < m`.
///
/// A polynomial map of total degree at most `degree` in the coefficients has
/// every value in the additive span of its values on this grid: the Newton
/// expansion writes `f(c) = sum_b (Delta^b f)(0) prod_j binom(c_j, b_j)` with
/// `|b| <= degree`, and each difference `(Delta^b f)(0)` is an integer
/// combination of values at points below `b`. Over `Z/m` a coefficient of `m`
/// or more can be reduced without leaving the grid.
pub fn simplex_grid(rank: usize, degree: usize, modulus: Modulus) -> Vec<Vec<u32>> {
    let cap = if modulus.is_finite() {
        (modulus.get() - 1).min(degree as u64) as u32
    } else {
        degree as u32
    };
    let mut out = Vec::new();
    let mut cur = vec![0u32; rank];
    fn rec(pos: usize, left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left.min(cap) {
            cur[pos] = c;
            rec(pos + 1, left - c, cap, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, degree as u32, cap, &mut cur, &mut out);
    out
}

/// Number of points [`simplex_grid`] would produce, saturating.
pub fn simplex_grid_size(rank: usize, degree: usize, modulus: Modulus) -> u128 {
    let cap = if modulus.is_finite() {
        (modulus.get() - 1).min(degree as u64) as usize
    } else {
        degree
    };
    // counts[s] = number of prefixes with coordinate sum s.
    let mut counts = vec![0u128; degree + 1];
    counts[0] = 1;
    for _ in 0..rank {
        let mut next = vec![0u128; degree + 1];
        for (s, &c) in counts.iter().enumerate() {
            for v in 0..=cap.min(degree - s) {
                next[s + v] = next[s + v].saturating_add(c);
            }
        }
        counts = next;
    }
    counts.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

fn combine(ring: &Ring, rows: &[Coords], coeffs: &[u32]) -> Coords {
    let mut v = ring.zero_coords();
    for (c, r) in coeffs.iter().zip(rows) {
        if *c != 0 {
            let c = Int::from(*c);
            for (x, y) in v.iter_mut().zip(r) {
                *x += &(&c * y);
            }
        }
    }
    ring.reduce(&mut v);
    v
}

fn grid_span<F>(ring: &Ring, rows: &[Coords], degree: usize, eval: F) -> Result<Subgroup>
where
    F: Fn(&Coords, &mut EchelonBuilder) + Sync,
{
    let needed = simplex_grid_size(rows.len(), degree, ring.modulus());
    budget_check("grid points", needed, ring.budget().grid_points)?;
    let grid = simplex_grid(rows.len(), degree, ring.modulus());
    let chunk = (grid.len() / rayon::current_num_threads().max(1)).max(64);
    let partial: Vec<Vec<Coords>> = grid
        .par_chunks(chunk)
        .map(|pts| {
            let mut b = EchelonBuilder::new(ring.modulus(), ring.dim());
            for p in pts {
                eval(&combine(ring, rows, p), &mut b);
                if b.is_full() {
                    break;
                }
            }
            b.finish()
        })
        .collect();
    Ok(Subgroup::span(ring, partial.iter().flatten()))
}

/// The subgroup generated by `{x^k : x in R}`.
pub fn power_values_subgroup(ring: &Ring, k: usize) -> Result<Subgroup> {
    if k == 0 {
        return Err(Error::BadParameter("powers start at 1".into()));
    }
    grid_span(ring, &ring.basis(), k, |x, b| {
        b.insert(&ring.pow(x, k));
    })
}

/// `K_I`: the subgroup generated by `u z^{n-1} [z^{n-1}, v] w` for `u, v, w, z in I`.
pub fn herstein_k(ring: &Ring, ideal: &Subgroup, n: usize) -> Result<Subgroup> {
    ring.ensure_same(ideal.ring())?;
    if n < 3 {
        return Err(Error::BadParameter(format!("n must be at least 3, got {n}")));
    }
    let rows = ideal.rows();
    grid_span(ring, rows, 2 * (n - 1), |z, b| {
        let p = ring.pow(z, n - 1);
        if ring.is_zero(&p) {
            return;
        }
        for v in rows {
            let c = ring.commutator(&p, v);
            if ring.is_zero(&c) {
                continue;
            }
            let t = ring.mul(&p, &c);
            for u in rows {
                let ut = ring.mul(u, &t);
                if ring.is_zero(&ut) {
                    continue;
                }
                for w in rows {
                    b.insert(&ring.mul(&ut, w));
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::by_name;
    use crate::text::parse_element;
    use proptest::prelude::*;

    fn el(r: &Ring, s: &str) -> Coords {
        parse_element(r, s).unwrap()
    }

    fn one() -> Int {
        Int::ONE
    }

    #[test]
    fn spec_validation() {
        let z = Modulus::INTEGERS;
        assert!(BracketSpec::new(1, 0, 1, z).is_err());
        assert!(BracketSpec::new(3, 3, 1, z).is_err());
        assert_eq!(BracketSpec::new(3, 1, 0, z).unwrap_err(), Error::ZeroBeta);
        assert_eq!(BracketSpec::new(3, 1, 5, Modulus::new(5)).unwrap_err(), Error::ZeroBeta);
        assert!(matches!(
            BracketSpec::new(3, 1, 2, Modulus::new(4)),
            Err(Error::NonUnitBeta { .. })
        ));
        let s = BracketSpec::new(4, 1, 3, Modulus::new(5)).unwrap();
        assert_eq!((s.r(), s.s()), (1, 2));
    }

    #[test]
    fn small_brackets() {
        let r = by_name("matrix2x2scale2").unwrap();
        let a = r.element(el(&r, "2e12")).unwrap();
        let b = r.element(el(&r, "2e22")).unwrap();
        assert_eq!(bracket_n(&r, &[a.clone(), b.clone()], &one()).unwrap().to_string(), "4e12");
        assert!(bracket_n(&r, &[a.clone(), a.clone()], &one()).unwrap().is_zero());
        assert!(bracket_n(&r, &[a.clone(), b.clone(), a.clone()], &one()).unwrap().is_zero());
        assert_eq!(bracket_n(&r, &[a.clone(), b], &Int::ZERO).unwrap_err(), Error::ZeroBeta);
        let other = by_name("matrix2x2scale2").unwrap();
        assert_eq!(
            bracket_n(&r, &[a, other.zero()], &one()).unwrap_err(),
            Error::RingMismatch
        );
    }

    #[test]
    fn strict_upper_brackets_are_powers() {
        let r = by_name("strictupper4mod2").unwrap();
        let b3 = bracket_power(&r, 3, &one()).unwrap();
        assert_eq!(b3, Subgroup::span(&r, [el(&r, "e14")]));
        assert_eq!(b3, power_subgroup(&r, 3).unwrap());
        assert!(power_subgroup(&r, 4).unwrap().is_zero());
    }

    #[test]
    fn commutative_rings_have_no_brackets() {
        let r = by_name("matrix1x1mod7+matrix1x1mod7").unwrap();
        for n in 2..5 {
            assert!(bracket_power(&r, n, &one()).unwrap().is_zero());
        }
        let full = Subgroup::full(&r);
        assert!(herstein_k(&r, &full, 3).unwrap().is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        let r = by_name("niltrunc2x12mod2").unwrap();
        let err = bracket_power(&r, 5, &one()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }), "{err:?}");
    }

    #[test]
    fn ideal_of_scaled_unit() {
        // In M2(Z) the ideal generated by 2e12 is M2(2Z).
        let r = by_name("matrix2x2").unwrap();
        let t = Subgroup::span(&r, [el(&r, "2e12")]);
        let i = ideal_generated(&r, &t).unwrap();
        assert_eq!(i, Subgroup::full(&r).scaled(&Int::from(2)));
        assert!(is_ideal(&r, &i, Side::TwoSided).unwrap());
        assert!(!is_ideal(&r, &t, Side::Left).unwrap());
    }

    #[test]
    fn matrix_unit_is_not_a_lie_ideal() {
        let r = by_name("matrix2x2mod2").unwrap();
        let a = Subgroup::span(&r, [el(&r, "e11")]);
        let spec = BracketSpec::new(2, 0, 1, r.modulus()).unwrap();
        let w = n_gen_lie_witness(&r, &a, &spec).unwrap().unwrap();
        assert!(!a.contains(&w.value));
        assert!(!is_lie_ideal(&r, &a).unwrap());
        let i = Subgroup::full(&r);
        assert!(is_n_gen_lie_ideal(&r, &i, &spec).unwrap());
    }

    #[test]
    fn squares() {
        assert!(squares_subgroup(&by_name("strictupper2mod2").unwrap()).is_zero());
        let r = by_name("matrix2x2mod3").unwrap();
        assert!(squares_subgroup(&r).is_full());
        assert!(squares_subgroup(&by_name("matrix1x1mod2").unwrap()).is_full());
    }

    #[test]
    fn power_values_basics() {
        let r = by_name("strictupper3mod2").unwrap();
        assert!(power_values_subgroup(&r, 1).unwrap().is_full());
        assert!(power_values_subgroup(&r, 3).unwrap().is_zero());
    }

    #[test]
    fn grid_size_matches_enumeration() {
        for (rank, deg, m) in [(3, 4, 0), (4, 6, 3), (2, 5, 2), (5, 2, 0), (1, 0, 0)] {
            let m = Modulus::new(m);
            assert_eq!(simplex_grid(rank, deg, m).len() as u128, simplex_grid_size(rank, deg, m));
        }
    }

    fn sample(r: &Ring, raw: &[i64]) -> Coords {
        let mut v: Coords = raw.iter().take(r.dim()).map(|&x| Int::from(x)).collect();
        r.reduce(&mut v);
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multilinear_in_each_slot(
            raw in prop::collection::vec(prop::collection::vec(-9i64..10, 4), 4),
            extra in prop::collection::vec(-9i64..10, 4),
            slot in 0usize..3,
            beta in 1i64..4,
        ) {
            let r = by_name("matrix2x2").unwrap();
            let xs: Vec<Coords> = raw.iter().take(3).map(|v| sample(&r, v)).collect();
            let e = sample(&r, &extra);
            let beta = Int::from(beta);
            let mut with_e = xs.clone();
            with_e[slot] = e.clone();
            let mut summed = xs.clone();
            summed[slot] = r.add(&xs[slot], &e);
            prop_assert_eq!(
                bracket_coords(&r, &summed, &beta),
                r.add(&bracket_coords(&r, &xs, &beta), &bracket_coords(&r, &with_e, &beta))
            );
        }

        #[test]
        fn reversal_negates(raw in prop::collection::vec(prop::collection::vec(0i64..3, 4), 2..6)) {
            let r = by_name("matrix2x2mod3").unwrap();
            let xs: Vec<Coords> = raw.iter().map(|v| sample(&r, v)).collect();
            let mut rev = xs.clone();
            rev.reverse();
            prop_assert_eq!(bracket_coords(&r, &rev, &one()), r.neg(&bracket_coords(&r, &xs, &one())));
        }
    }
}
