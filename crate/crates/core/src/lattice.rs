//! Additive subgroups of a ring in canonical form.
//!
//! Over `Z` a subgroup is stored in row Hermite normal form: echelon rows with
//! positive pivots and every entry above a pivot reduced into `[0, pivot)`.
//! Over `Z/m` it is stored in Howell form: the same shape with pivots dividing
//! `m`, plus the property that `(m / p) * row` lies in the span of the rows
//! below it. Both forms are unique, so subgroups compare by their rows.

use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{Coords, Modulus, Ring};

/// Incremental echelonization with a single row per pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    modulus: Modulus,
    ncols: usize,
    slots: Vec<Option<Coords>>,
    filled: usize,
}

fn leading(v: &[Int]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

impl EchelonBuilder {
    pub fn new(modulus: Modulus, ncols: usize) -> Self {
        EchelonBuilder {
            modulus,
            ncols,
            slots: vec![None; ncols],
            filled: 0,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce_vec(&self, v: &mut [Int]) {
        if self.modulus.is_finite() {
            for c in v.iter_mut() {
                *c = self.modulus.reduce(c);
            }
        }
    }

    fn normalize(&self, v: &mut [Int], lead: usize) {
        let u = self.modulus.normalizing_unit(&v[lead]);
        if !u.is_one() {
            for c in v.iter_mut() {
                *c = &*c * &u;
            }
        }
        self.reduce_vec(v);
    }

    /// True once every pivot slot holds a unit pivot, i.e. the span is everything.
    pub fn is_full(&self) -> bool {
        self.filled == self.ncols
            && self
                .slots
                .iter()
                .enumerate()
                .all(|(c, s)| s.as_ref().is_some_and(|r| r[c].is_one()))
    }

    /// Adds a vector to the span. Returns whether the span changed.
    pub fn insert(&mut self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut work: Vec<Coords> = vec![v.to_vec()];
        let mut changed = false;
        while let Some(mut v) = work.pop() {
            self.reduce_vec(&mut v);
            loop {
                let Some(c) = leading(&v) else { break };
                match &self.slots[c] {
                    None => {
                        self.normalize(&mut v, c);
                        self.push_annihilated(&v, c, &mut work);
                        self.slots[c] = Some(v);
                        self.filled += 1;
                        changed = true;
                        break;
                    }
                    Some(row) => {
                        let p = &row[c];
                        let a = &v[c];
                        if p.divides(a) {
                            let q = a.div_exact(p);
                            for (x, r) in v.iter_mut().zip(row) {
                                *x -= &(&q * r);
                            }
                            self.reduce_vec(&mut v);
                            continue;
                        }
                        let (g, s, t) = Int::ext_gcd(p, a);
                        let (pg, ag) = (p.div_exact(&g), a.div_exact(&g));
                        let mut new_row: Coords =
                            row.iter().zip(&v).map(|(r, x)| &(&s * r) + &(&t * x)).collect();
                        let rest: Coords =
                            row.iter().zip(&v).map(|(r, x)| &(&pg * x) - &(&ag * r)).collect();
                        self.normalize(&mut new_row, c);
                        self.push_annihilated(&new_row, c, &mut work);
                        self.slots[c] = Some(new_row);
                        changed = true;
                        v = rest;
                        self.reduce_vec(&mut v);
                    }
                }
            }
        }
        changed
    }

    /// Howell closure: over `Z/m` the multiple `(m/p) * row` must stay in the span.
    fn push_annihilated(&self, row: &[Int], lead: usize, work: &mut Vec<Coords>) {
        let Some(m) = self.modulus.as_int() else { return };
        let p = &row[lead];
        if p.is_one() {
            return;
        }
        let k = m.div_exact(p);
        let w: Coords = row.iter().map(|x| &k * x).collect();
        work.push(w);
    }

    /// Canonical rows ordered by pivot column.
    pub fn finish(self) -> Vec<Coords> {
        let modulus = self.modulus;
        let mut rows: Vec<(usize, Coords)> = self
            .slots
            .into_iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i + 1);
            let row = &mut head[i].1;
            for (c, lower) in tail.iter() {
                let p = &lower[*c];
                let q = row[*c].div_floor(p);
                if !q.is_zero() {
                    for (x, l) in row.iter_mut().zip(lower) {
                        *x -= &(&q * l);
                    }
                    if modulus.is_finite() {
                        for x in row.iter_mut() {
                            *x = modulus.reduce(x);
                        }
                    }
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Canonical form of the span of `rows` in `S^ncols`.
pub fn canonical_form(modulus: Modulus, ncols: usize, rows: &[Coords]) -> Vec<Coords> {
    let mut b = EchelonBuilder::new(modulus, ncols);
    for r in rows {
        b.insert(r);
    }
    b.finish()
}

/// Rows spanning `{x : x A = 0}` where `A` has one row per coordinate of `x`.
pub fn left_kernel(modulus: Modulus, a: &[Coords], width: usize) -> Vec<Coords> {
    let n = a.len();
    let augmented: Vec<Coords> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }));
            v
        })
        .collect();
    canonical_form(modulus, width + n, &augmented)
        .into_iter()
        .filter(|r| r[..width].iter().all(Int::is_zero))
        .map(|r| r[width..].to_vec())
        .collect()
}

/// Additive subgroup of a ring, in canonical form.
#[derive(Clone)]
pub struct Subgroup {
    ring: Ring,
    rows: Vec<Coords>,
}

impl Subgroup {
    pub fn zero(ring: &Ring) -> Subgroup {
        Subgroup {
            ring: ring.clone(),
            rows: Vec::new(),
        }
    }

    pub fn full(ring: &Ring) -> Subgroup {
        Subgroup {
            ring: ring.clone(),
            rows: ring.basis(),
        }
    }

    /// Span of the given coordinate vectors.
    pub fn span<I, V>(ring: &Ring, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Int]>,
    {
        let mut b = EchelonBuilder::new(ring.modulus(), ring.dim());
        for g in gens {
            b.insert(g.as_ref());
        }
        Subgroup::from_builder(ring, b)
    }

    pub fn from_builder(ring: &Ring, b: EchelonBuilder) -> Subgroup {
        assert_eq!(b.ncols(), ring.dim());
        Subgroup {
            ring: ring.clone(),
            rows: b.finish(),
        }
    }

    /// Builder seeded with this subgroup's rows.
    pub fn builder(&self) -> EchelonBuilder {
        let mut b = EchelonBuilder::new(self.ring.modulus(), self.ring.dim());
        for r in &self.rows {
            b.insert(r);
        }
        b
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Canonical basis rows.
    pub fn rows(&self) -> &[Coords] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| leading(r).expect("nonzero row")).collect()
    }

    /// Number of canonical rows; the rank over `Z`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ring.dim()
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() })
            })
    }

    /// Number of elements over `Z/m`; `None` over `Z` unless the subgroup is zero.
    pub fn order(&self) -> Option<Int> {
        if self.rows.is_empty() {
            return Some(Int::ONE);
        }
        let m = self.ring.modulus().as_int()?;
        Some(
            self.rows
                .iter()
                .zip(self.pivots())
                .fold(Int::ONE, |acc, (r, c)| &acc * &m.div_exact(&r[c])),
        )
    }

    /// Writes `v` as a combination of the rows, if it is a member.
    pub fn coordinates(&self, v: &[Int]) -> Option<Coords> {
        if v.len() != self.ring.dim() {
            return None;
        }
        let mut v = v.to_vec();
        self.ring.reduce(&mut v);
        let mut coeffs = vec![Int::ZERO; self.rows.len()];
        let pivots = self.pivots();
        let mut next = 0;
        while let Some(c) = leading(&v) {
            while next < pivots.len() && pivots[next] < c {
                next += 1;
            }
            if next == pivots.len() || pivots[next] != c {
                return None;
            }
            let row = &self.rows[next];
            if !row[c].divides(&v[c]) {
                return None;
            }
            let q = v[c].div_exact(&row[c]);
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &(&q * r);
            }
            self.ring.reduce(&mut v);
            coeffs[next] = q;
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.ring.same_as(&other.ring) && other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.ring.ensure_same(&other.ring)?;
        let mut b = self.builder();
        for r in &other.rows {
            b.insert(r);
        }
        Ok(Subgroup::from_builder(&self.ring, b))
    }

    /// Adds generators, returning the enlarged subgroup.
    pub fn extended<I, V>(&self, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Int]>,
    {
        let mut b = self.builder();
        for g in gens {
            b.insert(g.as_ref());
        }
        Subgroup::from_builder(&self.ring, b)
    }

    /// `k * self`.
    pub fn scaled(&self, k: &Int) -> Subgroup {
        Subgroup::span(&self.ring, self.rows.iter().map(|r| self.ring.scale(k, r)))
    }

    /// All elements, for finite scalars within the enumeration budget.
    pub fn elements(&self) -> Result<Vec<Coords>> {
        let m = self.ring.modulus().as_int().ok_or(Error::InfiniteScalar)?;
        let order = self.order().expect("finite order");
        let budget = self.ring.budget().enumeration;
        let needed = order.to_u64().map_or(u128::MAX, u128::from);
        if needed > budget {
            return Err(Error::BudgetExceeded {
                what: "subgroup enumeration",
                needed,
                budget,
            });
        }
        let ranges: Vec<i64> = self
            .rows
            .iter()
            .zip(self.pivots())
            .map(|(r, c)| m.div_exact(&r[c]).to_i64().expect("small range"))
            .collect();
        let mut out = Vec::with_capacity(needed as usize);
        let mut idx = vec![0i64; ranges.len()];
        loop {
            let mut v = self.ring.zero_coords();
            for (k, r) in idx.iter().zip(&self.rows) {
                if *k != 0 {
                    let k = Int::from(*k);
                    for (x, y) in v.iter_mut().zip(r) {
                        *x += &(&k * y);
                    }
                }
            }
            self.ring.reduce(&mut v);
            out.push(v);
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < ranges[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Rows formatted in element syntax.
    pub fn describe(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| crate::text::format_element(&self.ring, r))
            .collect()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.rows == other.rows
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.describe().join(", "))
    }
}

/// Outcome of a saturation: the fixed point and the subgroup after each round.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub result: Subgroup,
    /// `history[0]` is the seed; the last entry equals `result`.
    pub history: Vec<Subgroup>,
}

/// Least subgroup containing `seed` and closed under `expand`.
///
/// Each round adds `expand(current)` to `current` and stops when nothing
/// changes. `expand` must be monotone so the fixed point is the closure.
pub fn saturate<F>(seed: Subgroup, mut expand: F) -> Result<Saturation>
where
    F: FnMut(&Subgroup) -> Vec<Coords>,
{
    let rounds = seed.ring().budget().rounds;
    let mut history = vec![seed.clone()];
    let mut current = seed;
    for _ in 0..rounds {
        let mut b = current.builder();
        let mut changed = false;
        for v in expand(&current) {
            changed |= b.insert(&v);
            if b.is_full() {
                break;
            }
        }
        if !changed {
            return Ok(Saturation {
                result: current,
                history,
            });
        }
        let next = Subgroup::from_builder(current.ring(), b);
        if next == current {
            return Ok(Saturation {
                result: current,
                history,
            });
        }
        history.push(next.clone());
        current = next;
    }
    let n = history.len();
    let last_delta = history[n - 1].rank() as isize - history[n.saturating_sub(2)].rank() as isize;
    Err(Error::SaturationBudget { rounds, last_delta })
}
