//! Finite-rank associative rings given by structure constants.
//!
//! A ring of rank `d` is the free module `S^d` over the scalars `S = Z` or
//! `S = Z/m`, with multiplication fixed by the products `e_i e_j` of basis
//! vectors. Rings are immutable once validated and cheap to clone; two handles
//! denote the same ring exactly when they share the same validated table.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;

/// Coordinate vector with respect to a ring's basis.
pub type Coords = Vec<Int>;

/// Scalar ring selector: `0` means `Z`, `m > 0` means `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus(u64);

impl Modulus {
    pub const INTEGERS: Modulus = Modulus(0);

    pub const fn new(m: u64) -> Modulus {
        Modulus(m)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub const fn is_finite(self) -> bool {
        self.0 > 0
    }

    pub fn as_int(self) -> Option<Int> {
        self.is_finite().then(|| Int::from(self.0))
    }

    /// Canonical representative: identity over `Z`, residue in `[0, m)` otherwise.
    #[inline]
    pub fn reduce(self, x: &Int) -> Int {
        match self.0 {
            0 => x.clone(),
            m => match x {
                Int::Small(v) => Int::Small(v.rem_euclid(m as i64)),
                _ => x.rem_euclid(&Int::from(m)),
            },
        }
    }

    pub fn is_canonical(self, x: &Int) -> bool {
        match self.0 {
            0 => true,
            m => !x.is_negative() && *x < Int::from(m),
        }
    }

    /// Units: `+-1` over `Z`, residues coprime to `m` otherwise.
    pub fn is_unit(self, x: &Int) -> bool {
        match self.0 {
            0 => x.abs().is_one(),
            m => self.reduce(x).gcd(&Int::from(m)).is_one(),
        }
    }

    /// A unit `u` with `u * a == gcd(a, m) (mod m)`, or `sign(a)` over `Z`.
    pub fn normalizing_unit(self, a: &Int) -> Int {
        if self.0 == 0 {
            return if a.is_negative() { Int::from(-1) } else { Int::ONE };
        }
        let m = Int::from(self.0);
        let a = self.reduce(a);
        let g = a.gcd(&m);
        if g.is_zero() || g == m {
            return Int::ONE;
        }
        let m_red = m.div_exact(&g);
        let a_red = a.div_exact(&g);
        let (_, s, _) = Int::ext_gcd(&a_red, &m_red);
        let mut u = s.rem_euclid(&m_red);
        // Lift the inverse mod m/g to a unit mod m; some lift u + k*(m/g) works.
        while !u.gcd(&m).is_one() {
            u = &u + &m_red;
        }
        u
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "Z"),
            m => write!(f, "Z/{m}"),
        }
    }
}

/// Explicit work limits for enumeration-based operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Basis tuples visited when spanning bracket subgroups.
    pub tuples: u128,
    /// Ring elements visited by exhaustive enumeration.
    pub enumeration: u128,
    /// Grid points evaluated for polynomial-image subgroups.
    pub grid_points: u128,
    /// Saturation rounds before declaring an internal error.
    pub rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            tuples: 10_000_000,
            enumeration: 1 << 20,
            grid_points: 2_000_000,
            rounds: 10_000,
        }
    }
}

impl Budget {
    /// Same budget with every limit multiplied by `factor`.
    pub fn scaled(self, factor: u128) -> Budget {
        Budget {
            tuples: self.tuples.saturating_mul(factor),
            enumeration: self.enumeration.saturating_mul(factor),
            grid_points: self.grid_points.saturating_mul(factor),
            rounds: self.rounds,
        }
    }
}

/// Unvalidated description of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub name: String,
    pub dim: usize,
    pub modulus: Modulus,
    pub labels: Vec<String>,
    /// `constants[i][j]` holds the coordinates of `e_i e_j` (0-based).
    pub constants: Vec<Vec<Coords>>,
    pub unity: Option<Coords>,
}

impl RingPresentation {
    /// Presentation of rank `dim` with every product zero.
    pub fn zero_products(name: impl Into<String>, labels: Vec<String>, modulus: Modulus) -> Self {
        let dim = labels.len();
        RingPresentation {
            name: name.into(),
            dim,
            modulus,
            labels,
            constants: vec![vec![vec![Int::ZERO; dim]; dim]; dim],
            unity: None,
        }
    }

    /// Adds `coeff * e_k` to the product `e_i e_j` (0-based).
    pub fn add_product(&mut self, i: usize, j: usize, k: usize, coeff: impl Into<Int>) {
        let slot = &mut self.constants[i][j][k];
        *slot = &*slot + &coeff.into();
    }
}

type SparseRow = Vec<(usize, Vec<(usize, Int)>)>;
type SmallRow = Vec<(usize, Vec<(usize, i64)>)>;

#[derive(Debug)]
struct RingData {
    presentation: RingPresentation,
    /// For each `i`, the `j` with `e_i e_j != 0` and the sparse product.
    rows: Vec<SparseRow>,
    /// Same table in machine words, present when the modulus is small enough
    /// that a full product accumulates without overflow.
    small: Option<Vec<SmallRow>>,
}

/// Validated ring handle.
#[derive(Clone)]
pub struct Ring {
    data: Arc<RingData>,
    budget: Budget,
}

const SMALL_MODULUS_LIMIT: u64 = 1 << 16;

/// Validates a presentation and returns a ring handle.
pub fn make_ring(presentation: RingPresentation) -> Result<Ring> {
    Ring::new(presentation)
}

impl Ring {
    pub fn new(mut p: RingPresentation) -> Result<Ring> {
        let d = p.dim;
        if d == 0 {
            return Err(Error::BadParameter("ring dimension must be at least 1".into()));
        }
        if p.labels.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.labels.len(),
            });
        }
        for label in &p.labels {
            crate::text::check_label(label)?;
        }
        if p.labels.iter().enumerate().any(|(i, l)| p.labels[..i].contains(l)) {
            return Err(Error::BadParameter("duplicate basis label".into()));
        }
        if p.constants.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.constants.len(),
            });
        }
        for row in &mut p.constants {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            for entry in row.iter_mut() {
                if entry.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: entry.len(),
                    });
                }
                for c in entry.iter_mut() {
                    *c = p.modulus.reduce(c);
                }
            }
        }
        if let Some(u) = &mut p.unity {
            if u.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: u.len(),
                });
            }
            for c in u.iter_mut() {
                *c = p.modulus.reduce(c);
            }
        }

        let rows: Vec<SparseRow> = p
            .constants
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(j, prod)| {
                        let sparse: Vec<(usize, Int)> = prod
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, c.clone()))
                            .collect();
                        (!sparse.is_empty()).then_some((j, sparse))
                    })
                    .collect()
            })
            .collect();
        let small = (p.modulus.is_finite() && p.modulus.get() < SMALL_MODULUS_LIMIT).then(|| {
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|(j, prod)| {
                            (
                                *j,
                                prod.iter()
                                    .map(|(k, c)| (*k, c.to_i64().expect("reduced residue")))
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect()
        });

        let ring = Ring {
            data: Arc::new(RingData {
                presentation: p,
                rows,
                small,
            }),
            budget: Budget::default(),
        };
        ring.check_associative()?;
        ring.check_unity()?;
        Ok(ring)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        let basis: Vec<Coords> = (0..d).map(|i| self.basis_coords(i)).collect();
        let products: Vec<Vec<Coords>> = self.data.presentation.constants.clone();
        for i in 0..d {
            for j in 0..d {
                let ij = &products[i][j];
                for k in 0..d {
                    let left = self.mul(ij, &basis[k]);
                    let right = self.mul(&basis[i], &products[j][k]);
                    if left != right {
                        return Err(Error::NonAssociative {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unity(&self) -> Result<()> {
        let Some(u) = &self.data.presentation.unity else {
            return Ok(());
        };
        for i in 0..self.dim() {
            let e = self.basis_coords(i);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(Error::BadUnity { index: i + 1 });
            }
        }
        Ok(())
    }

    /// Same multiplication table under a new name and labels; a distinct ring handle.
    pub fn renamed(&self, name: &str, labels: Vec<String>) -> Result<Ring> {
        let mut p = self.presentation().clone();
        p.name = name.to_string();
        p.labels = labels;
        Ok(Ring::new(p)?.with_budget(self.budget))
    }

    pub fn with_budget(&self, budget: Budget) -> Ring {
        Ring {
            data: Arc::clone(&self.data),
            budget,
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Identity comparison: both handles come from the same validation.
    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn name(&self) -> &str {
        &self.data.presentation.name
    }

    pub fn dim(&self) -> usize {
        self.data.presentation.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.data.presentation.modulus
    }

    pub fn labels(&self) -> &[String] {
        &self.data.presentation.labels
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.data.presentation
    }

    pub fn unity_coords(&self) -> Option<&[Int]> {
        self.data.presentation.unity.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.data.presentation.unity.is_some()
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u128> {
        let m = self.modulus().get();
        if m == 0 {
            return None;
        }
        (m as u128).checked_pow(self.dim() as u32)
    }

    pub fn zero_coords(&self) -> Coords {
        vec![Int::ZERO; self.dim()]
    }

    pub fn basis_coords(&self, i: usize) -> Coords {
        let mut v = self.zero_coords();
        v[i] = Int::ONE;
        v
    }

    pub fn basis(&self) -> Vec<Coords> {
        (0..self.dim()).map(|i| self.basis_coords(i)).collect()
    }

    pub fn check_len(&self, v: &[Int]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            })
        }
    }

    pub fn reduce(&self, v: &mut [Int]) {
        if self.modulus().is_finite() {
            for c in v.iter_mut() {
                *c = self.modulus().reduce(c);
            }
        }
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        v.iter().all(Int::is_zero)
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Coords {
        let mut out: Coords = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn sub(&self, a: &[Int], b: &[Int]) -> Coords {
        let mut out: Coords = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn neg(&self, a: &[Int]) -> Coords {
        let mut out: Coords = a.iter().map(|x| -x).collect();
        self.reduce(&mut out);
        out
    }

    pub fn scale(&self, c: &Int, a: &[Int]) -> Coords {
        let mut out: Coords = a.iter().map(|x| c * x).collect();
        self.reduce(&mut out);
        out
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[Int], b: &[Int]) -> Coords {
        if let Some(small) = &self.data.small {
            return self.mul_small(small, a, b);
        }
        let mut acc = self.zero_coords();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, prod) in &self.data.rows[i] {
                let bj = &b[*j];
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in prod {
                    acc[*k] += &(&ab * c);
                }
            }
        }
        self.reduce(&mut acc);
        acc
    }

    fn mul_small(&self, table: &[SmallRow], a: &[Int], b: &[Int]) -> Coords {
        let m = self.modulus().get() as i64;
        let d = self.dim();
        let residue = |x: &Int| self.modulus().reduce(x).to_i64().expect("small residue");
        let bs: Vec<i64> = b.iter().map(residue).collect();
        let mut acc = vec![0i64; d];
        for (i, ai) in a.iter().enumerate() {
            let ai = residue(ai);
            if ai == 0 {
                continue;
            }
            for (j, prod) in &table[i] {
                let bj = bs[*j];
                if bj == 0 {
                    continue;
                }
                let ab = ai * bj % m;
                for (k, c) in prod {
                    // Each term is below 2^32 and at most d^2 terms land in one slot.
                    acc[*k] += ab * c;
                }
            }
        }
        acc.into_iter().map(|v| Int::Small(v.rem_euclid(m))).collect()
    }

    /// Left-to-right product of a nonempty list of factors.
    pub fn product<T: AsRef<[Int]>>(&self, factors: &[T]) -> Coords {
        let mut it = factors.iter();
        let mut acc = it.next().expect("empty product").as_ref().to_vec();
        for f in it {
            acc = self.mul(&acc, f.as_ref());
        }
        acc
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: &[Int], k: usize) -> Coords {
        assert!(k >= 1, "ring powers start at 1; the ring may lack a unity");
        let mut acc = x.to_vec();
        for _ in 1..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn commutator(&self, a: &[Int], b: &[Int]) -> Coords {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn element(&self, coords: Coords) -> Result<RingElement> {
        self.check_len(&coords)?;
        let mut coords = coords;
        self.reduce(&mut coords);
        Ok(RingElement {
            ring: self.clone(),
            coords,
        })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<RingElement> {
        self.element(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            coords: self.zero_coords(),
        }
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        RingElement {
            ring: self.clone(),
            coords: self.basis_coords(i),
        }
    }

    pub fn unity(&self) -> Option<RingElement> {
        self.unity_coords().map(|u| RingElement {
            ring: self.clone(),
            coords: u.to_vec(),
        })
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("name", &self.name())
            .field("dim", &self.dim())
            .field("modulus", &self.modulus())
            .finish()
    }
}

/// An element of a specific ring.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    coords: Coords,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Coords {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.coords)
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords: self.ring.mul(&self.coords, &other.coords),
        })
    }

    pub fn scale(&self, c: &Int) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coords: self.ring.scale(c, &self.coords),
        }
    }

    pub fn pow(&self, k: usize) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coords: self.ring.pow(&self.coords, k),
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.coords == other.coords
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_element(&self.ring, &self.coords))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_element(&self.ring, &self.coords))
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $ring_op:ident) => {
        impl<'a> $trait<&'a RingElement> for &'a RingElement {
            type Output = RingElement;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                assert!(self.ring.same_as(&rhs.ring), "ring mismatch");
                RingElement {
                    ring: self.ring.clone(),
                    coords: self.ring.$ring_op(&self.coords, &rhs.coords),
                }
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);
element_binop!(Mul, mul, mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coords: self.ring.neg(&self.coords),
        }
    }
}
