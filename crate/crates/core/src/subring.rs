//! Subrings, centers and idempotents.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{left_kernel, saturate, Subgroup};
use crate::ring::{make_ring, Coords, Ring, RingElement, RingPresentation};

/// A subring presented as a ring in its own right, with its embedding.
#[derive(Clone, Debug)]
pub struct Subring {
    ring: Ring,
    lattice: Subgroup,
}

impl Subring {
    /// The subring with the canonical lattice basis as its basis.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The subring as a subgroup of the ambient ring.
    pub fn lattice(&self) -> &Subgroup {
        &self.lattice
    }

    pub fn ambient(&self) -> &Ring {
        self.lattice.ring()
    }

    /// Ambient coordinates of each basis vector of the subring.
    pub fn embedding(&self) -> &[Coords] {
        self.lattice.rows()
    }

    /// Maps subring coordinates into the ambient ring.
    pub fn embed(&self, coords: &[Int]) -> Coords {
        let ambient = self.ambient();
        let mut out = ambient.zero_coords();
        for (c, row) in coords.iter().zip(self.embedding()) {
            if !c.is_zero() {
                out = ambient.add(&out, &ambient.scale(c, row));
            }
        }
        out
    }

    /// Subring coordinates of an ambient element, if it lies in the subring.
    pub fn restrict(&self, coords: &[Int]) -> Result<Coords> {
        self.lattice.coordinates(coords).ok_or(Error::NotMember)
    }
}

/// Smallest subring of `ambient` containing `generators`.
///
/// Over `Z/m` the result must be a free module to carry structure constants,
/// which holds whenever `m` is prime; otherwise [`Error::NotFree`] is returned.
pub fn subring_generated(ambient: &Ring, generators: &[RingElement]) -> Result<Subring> {
    if generators.is_empty() {
        return Err(Error::BadParameter("at least one generator is required".into()));
    }
    for g in generators {
        ambient.ensure_same(g.ring())?;
    }
    let seed = Subgroup::span(ambient, generators.iter().map(RingElement::coords));
    let lattice = saturate(seed, |s| {
        let rows = s.rows();
        rows.iter()
            .flat_map(|a| rows.iter().map(move |b| ambient.mul(a, b)))
            .collect()
    })?
    .result;
    subring_from_lattice(lattice)
}

/// Presents a multiplicatively closed subgroup as a ring.
pub fn subring_from_lattice(lattice: Subgroup) -> Result<Subring> {
    let ambient = lattice.ring().clone();
    let modulus = ambient.modulus();
    let rows = lattice.rows();
    let pivots = lattice.pivots();
    if modulus.is_finite() && rows.iter().zip(&pivots).any(|(r, &c)| !r[c].is_one()) {
        return Err(Error::NotFree {
            modulus: modulus.get(),
        });
    }
    if rows.is_empty() {
        return Err(Error::BadParameter("the zero subgroup has no basis to present".into()));
    }
    let r = rows.len();
    let mut p = RingPresentation::zero_products(
        format!("{}-sub", ambient.name()),
        subring_labels(&ambient, rows),
        modulus,
    );
    for (a, ra) in rows.iter().enumerate() {
        for (b, rb) in rows.iter().enumerate() {
            let prod = ambient.mul(ra, rb);
            p.constants[a][b] = lattice.coordinates(&prod).ok_or_else(|| {
                Error::BadParameter("subgroup is not closed under multiplication".into())
            })?;
        }
    }
    if let Some(u) = ambient.unity_coords() {
        p.unity = lattice.coordinates(u);
    }
    debug_assert_eq!(p.dim, r);
    let ring = make_ring(p)?.with_budget(ambient.budget());
    Ok(Subring { ring, lattice })
}

fn subring_labels(ambient: &Ring, rows: &[Coords]) -> Vec<String> {
    let labels: Vec<String> = rows
        .iter()
        .enumerate()
        .map(|(idx, row)| {
            let support: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
            match support.as_slice() {
                [i] if row[*i].is_one() => ambient.labels()[*i].clone(),
                [_] => crate::text::format_element(ambient, row),
                _ => format!("b{}", idx + 1),
            }
        })
        .collect();
    let unique = labels.iter().enumerate().all(|(i, l)| !labels[..i].contains(l));
    if unique && labels.iter().all(|l| crate::text::check_label(l).is_ok()) {
        labels
    } else {
        (1..=rows.len()).map(|i| format!("b{i}")).collect()
    }
}

/// `Z(R) = {x : x e_i = e_i x for every basis vector e_i}`.
pub fn center(ring: &Ring) -> Subgroup {
    let d = ring.dim();
    let basis = ring.basis();
    let matrix: Vec<Coords> = basis
        .iter()
        .map(|ej| basis.iter().flat_map(|ei| ring.commutator(ej, ei)).collect())
        .collect();
    let kernel = left_kernel(ring.modulus(), &matrix, d * d);
    Subgroup::span(ring, kernel)
}

/// Every `x` with `x^2 = x`, in lexicographic coordinate order.
pub fn idempotents(ring: &Ring) -> Result<Vec<RingElement>> {
    let all = Subgroup::full(ring).elements()?;
    let mut out: Vec<Coords> = all.into_iter().filter(|x| &ring.mul(x, x) == x).collect();
    out.sort();
    out.into_iter().map(|x| ring.element(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::by_name;
    use crate::text::parse_element;

    fn el(r: &Ring, s: &str) -> RingElement {
        r.element(parse_element(r, s).unwrap()).unwrap()
    }

    #[test]
    fn example7_subring() {
        let m = by_name("matrix2x2").unwrap();
        let gens: Vec<_> = ["e11+e22", "2e11", "2e12", "2e21", "2e22"]
            .iter()
            .map(|s| el(&m, s))
            .collect();
        let s = subring_generated(&m, &gens).unwrap();
        assert_eq!(s.ring().dim(), 4);
        assert!(s.ring().is_unital());
        assert_eq!(s.ring().labels(), ["b1", "2e12", "2e21", "2e22"]);
    }

    #[test]
    fn single_idempotent_generator() {
        let m = by_name("matrix2x2").unwrap();
        let s = subring_generated(&m, &[el(&m, "2e11")]).unwrap();
        assert_eq!(s.ring().dim(), 1);
        assert_eq!(s.ring().labels(), ["2e11"]);
        // (2e11)^2 = 2 (2e11).
        assert_eq!(s.ring().presentation().constants[0][0], vec![Int::from(2)]);
    }

    #[test]
    fn basis_generates_everything() {
        let m = by_name("upper3mod2").unwrap();
        let s = subring_generated(&m, &m.basis().into_iter().map(|v| m.element(v).unwrap()).collect::<Vec<_>>())
            .unwrap();
        assert!(s.lattice().is_full());
        assert_eq!(s.ring().presentation().constants, m.presentation().constants);
    }

    #[test]
    fn composite_modulus_may_not_be_free() {
        let m = by_name("matrix1x1mod4").unwrap();
        assert_eq!(
            subring_generated(&m, &[el(&m, "2e11")]).unwrap_err(),
            Error::NotFree { modulus: 4 }
        );
    }

    #[test]
    fn centers() {
        let m = by_name("matrix2x2mod2").unwrap();
        let z = center(&m);
        assert_eq!(z.order(), Some(Int::from(2)));
        assert!(z.contains(m.unity_coords().unwrap()));
        let c = by_name("idempotentspan1mod3").unwrap();
        assert!(center(&c).is_full());
        let mz = by_name("matrix2x2scale2").unwrap();
        assert_eq!(center(&mz).rows(), &[parse_element(&mz, "2e11+2e22").unwrap()]);
    }

    #[test]
    fn idempotent_lists() {
        let f = by_name("matrix1x1mod2").unwrap();
        assert_eq!(idempotents(&f).unwrap().len(), 2);
        let s = by_name("strictupper2mod2").unwrap();
        let ids = idempotents(&s).unwrap();
        assert_eq!(ids.len(), 1);
        assert!(ids[0].is_zero());
        let v = by_name("idempotentspan2mod2").unwrap();
        let ids = idempotents(&v).unwrap();
        for x in ["v1", "v2", "0"] {
            assert!(ids.contains(&el(&v, x)));
        }
        assert_eq!(idempotents(&by_name("matrix2x2").unwrap()).unwrap_err(), Error::InfiniteScalar);
        assert!(matches!(
            idempotents(&by_name("niltrunc2x12mod2").unwrap()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
