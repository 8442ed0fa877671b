//! The registered scenarios. Every value asserted here is computed by the
//! engine; nothing is copied from a table.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rings::{self, is_idempotent_ring, two_divisible, DEFAULT_RINGS, UNITAL_RINGS};
use super::{Checker, ScenarioResult, VerifyConfig, Witness};
use crate::builtin::example7_subring;
use crate::commutator::{
    bracket_n, bracket_power, bracket_subgroup, herstein_k, ideal_generated, is_lie_ideal, n_gen_lie_closure,
    power_subgroup, power_values_subgroup, product_subgroup, squares_subgroup, BracketSpec, Side,
};
use crate::error::Result;
use crate::int::Int;
use crate::lattice::{left_kernel, Subgroup};
use crate::ring::{Budget, Coords, Ring};
use crate::subring::{center, idempotents, subring_generated};
use crate::text::{format_element, parse_element};

pub type ScenarioFn = fn(&VerifyConfig) -> Result<ScenarioResult>;

pub const REGISTRY: &[(&str, ScenarioFn)] = &[
    ("cor3_12", cor3_12),
    ("cor8_5", cor8_5),
    ("example1", example1),
    ("example2", example2),
    ("example4", example4),
    ("example7", example7),
    ("example8", example8),
    ("example9", example9),
    ("lemma2_2", lemma2_2),
    ("lemma4_8_thm4_9", lemma4_8_thm4_9),
    ("prop2_3", prop2_3),
    ("prop3_5", prop3_5),
    ("thm2_1", thm2_1),
    ("thm2_4", thm2_4),
    ("thm3_10_example3", thm3_10_example3),
    ("thm3_4", thm3_4),
    ("thm3_7_cor3_8", thm3_7_cor3_8),
    ("thm4_11_cor4_12", thm4_11_cor4_12),
    ("thm4_4_cor4_13", thm4_4_cor4_13),
    ("thm5_1_instances", thm5_1_instances),
    ("thm7_5_constants", thm7_5_constants),
];

/// Tuple budget for scenarios that take long brackets in the rank-44 ring.
fn raised(cfg: &VerifyConfig) -> Budget {
    cfg.budget.scaled(1000)
}

/// One ring with its bracket subgroups memoized by arity.
struct Probe {
    ring: Ring,
    brackets: BTreeMap<usize, Subgroup>,
    ideal: Option<Subgroup>,
}

impl Probe {
    fn new(name: &str, budget: Budget) -> Result<Probe> {
        Ok(Probe::of(rings::ring(name, budget)?))
    }

    fn of(ring: Ring) -> Probe {
        Probe {
            ring,
            brackets: BTreeMap::new(),
            ideal: None,
        }
    }

    fn name(&self) -> String {
        self.ring.name().to_string()
    }

    fn full(&self) -> Subgroup {
        Subgroup::full(&self.ring)
    }

    /// `[R, ..., R]_n`.
    fn br(&mut self, n: usize) -> Result<Subgroup> {
        if let Some(s) = self.brackets.get(&n) {
            return Ok(s.clone());
        }
        let s = bracket_power(&self.ring, n, &Int::ONE)?;
        self.brackets.insert(n, s.clone());
        Ok(s)
    }

    /// `I([R, R])`.
    fn ideal_rr(&mut self) -> Result<Subgroup> {
        if let Some(s) = &self.ideal {
            return Ok(s.clone());
        }
        let b2 = self.br(2)?;
        let s = ideal_generated(&self.ring, &b2)?;
        self.ideal = Some(s.clone());
        Ok(s)
    }
}

fn el(ring: &Ring, s: &str) -> Result<Coords> {
    parse_element(ring, s)
}

fn probes(names: &[&str], budget: Budget) -> Result<Vec<Probe>> {
    names.iter().map(|n| Probe::new(n, budget)).collect()
}

fn thm2_1(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm2_1");
    for mut p in probes(DEFAULT_RINGS, raised(cfg))? {
        for n in 1..=2 {
            let k = 2 * n + 1;
            let b = p.br(k)?;
            c.ideal(format!("{}: [R..R]_{k} is an ideal", p.name()), &p.ring, &b, Side::TwoSided, Some(k))?;
        }
    }
    Ok(c.finish())
}

fn lemma2_2(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("lemma2_2");
    for mut p in probes(DEFAULT_RINGS, cfg.budget)? {
        let name = p.name();
        let r = p.full();
        let candidates = [
            ("[R,R]", p.br(2)?),
            ("[R,R,R]", p.br(3)?),
            ("Z(R)", center(&p.ring)),
            ("R", r.clone()),
        ];
        let j = p.br(3)?;
        for (label, l) in &candidates {
            c.truth(format!("{name}: {label} is a Lie ideal"), is_lie_ideal(&p.ring, l)?, || {
                vec![Witness::subgroup(format!("{name}: {label}"), l)]
            });
            let ideal = ideal_generated(&p.ring, l)?;
            let lr = l.sum(&product_subgroup(&p.ring, l, &r)?)?;
            let rl = l.sum(&product_subgroup(&p.ring, &r, l)?)?;
            c.equal(format!("{name}: I({label}) = L + LR"), &lr, &ideal);
            c.equal(format!("{name}: I({label}) = L + RL"), &rl, &ideal);
            let jl = product_subgroup(&p.ring, &j, l)?;
            let lj = product_subgroup(&p.ring, l, &j)?;
            c.ideal(format!("{name}: [R,R,R] {label} is an ideal"), &p.ring, &jl, Side::TwoSided, None)?;
            c.ideal(format!("{name}: {label} [R,R,R] is an ideal"), &p.ring, &lj, Side::TwoSided, None)?;
        }
    }
    Ok(c.finish())
}

fn prop2_3(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("prop2_3");
    for mut p in probes(DEFAULT_RINGS, raised(cfg))? {
        let name = p.name();
        let ideal = p.ideal_rr()?;
        let b: Vec<Subgroup> = (0..=6)
            .map(|n| if n < 2 { Ok(Subgroup::zero(&p.ring)) } else { p.br(n) })
            .collect::<Result<_>>()?;
        for (n, bn) in b.iter().enumerate().skip(2) {
            c.subset(format!("{name}: (i) [R..R]_{n} in I([R,R])"), bn, &ideal);
        }
        for n in 2..=3 {
            c.subset(format!("{name}: (ii) [R..R]_{} in [R,R,R]", 2 * n - 1), &b[2 * n - 1], &b[3]);
            let mid = b[2].sum(&b[2 * n - 1])?;
            c.subset(format!("{name}: (iii) [R..R]_{} in [R,R] + [R..R]_{}", 2 * n, 2 * n - 1), &b[2 * n], &mid);
            c.subset(format!("{name}: (iii) [R,R] + [R..R]_{} in I([R,R])", 2 * n - 1), &mid, &ideal);
        }
        c.equal(format!("{name}: (iv) [R,R] + [R,R,R] = I([R,R])"), &b[2].sum(&b[3])?, &ideal);
        let b43 = b[4].sum(&b[3])?;
        c.subset(format!("{name}: (v) [R..R]_6 in [R,R,R,R] + [R,R,R]"), &b[6], &b43);
        if is_idempotent_ring(&p.ring)? {
            for k in 2..=5 {
                c.equal(format!("{name}: (vi) [R..R]_{k} + [R..R]_{} = I([R,R])", k + 1), &b[k].sum(&b[k + 1])?, &ideal);
            }
            for n in 2..=3 {
                c.equal(
                    format!("{name}: (vii) [R,R] + [R..R]_{} = I([R,R])", 2 * n - 1),
                    &b[2].sum(&b[2 * n - 1])?,
                    &ideal,
                );
            }
            let even = crate::commutator::is_ideal(&p.ring, &b[4], Side::TwoSided)?;
            c.note(format!("{name}: R = R^2 holds; [R..R]_4 is an ideal here: {even} (observed, not asserted)"));
        } else {
            c.note(format!("{name}: R != R^2, so (vi) and (vii) are not applicable"));
        }
    }
    Ok(c.finish())
}

fn example1(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example1");
    let mut p = Probe::new("matrix2x2scale2", cfg.budget)?;
    let ring = p.ring.clone();
    let x = el(&ring, "4e12")?;
    let witness = bracket_n(&ring, &[ring.element(el(&ring, "2e12")?)?, ring.element(el(&ring, "2e22")?)?], &Int::ONE)?;
    c.check("[2e12, 2e22] = 4e12", "4e12", witness.to_string(), Vec::new);
    let (b2, b3, b4, b5) = (p.br(2)?, p.br(3)?, p.br(4)?, p.br(5)?);
    let ideal = p.ideal_rr()?;
    // Coordinates are in units of 2, so M2(8Z) is 4R.
    let m8 = p.full().scaled(&Int::from(4));
    c.member("4e12 in [R,R]", &b2, &x, true);
    c.subset("[R,R,R] in M2(8Z)", &b3, &m8);
    c.member("4e12 not in [R,R,R]", &b3, &x, false);
    c.not_subset("[R,R] not in [R,R,R]", &b2, &b3);
    for (n, bn) in [(3, &b3), (4, &b4), (5, &b5)] {
        c.proper_subset(format!("[R..R]_{n} properly inside I([R,R])"), bn, &ideal);
    }
    c.proper_subset("[R..R]_5 properly inside [R,R,R]", &b5, &b3);
    c.proper_subset("[R..R]_4 properly inside [R,R] + [R,R,R]", &b4, &b2.sum(&b3)?);
    for (label, s) in [("[R,R]", &b2), ("[R,R,R]", &b3), ("I([R,R])", &ideal)] {
        c.note(format!("{label} basis: {}", s.describe().join(", ")));
    }
    Ok(c.finish())
}

fn example2(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example2");
    let mut p = Probe::new("strictupper5mod2", cfg.budget)?;
    let powers: Vec<Subgroup> = (0..=5)
        .map(|k| if k == 0 { Ok(p.full()) } else { power_subgroup(&p.ring, k) })
        .collect::<Result<_>>()?;
    for k in 2..=5 {
        c.equal(format!("[R..R]_{k} = R^{k}"), &p.br(k)?, &powers[k]);
    }
    c.is_zero("R^5 = 0", &powers[5], true);
    for k in 1..=4 {
        c.proper_subset(format!("R^{} properly inside R^{k}", k + 1), &powers[k + 1], &powers[k]);
    }
    let ideal = p.ideal_rr()?;
    c.equal("[R,R] = I([R,R])", &p.br(2)?, &ideal);
    c.proper_subset("[R,R,R] + [R,R,R,R] properly inside [R,R]", &p.br(3)?.sum(&p.br(4)?)?, &p.br(2)?);
    Ok(c.finish())
}

fn unital_probes(cfg: &VerifyConfig) -> Result<Vec<Probe>> {
    let ps = probes(UNITAL_RINGS, cfg.budget)?;
    debug_assert!(ps.iter().all(|p| p.ring.is_unital()));
    Ok(ps)
}

fn thm2_4(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm2_4");
    for mut p in unital_probes(cfg)? {
        let name = p.name();
        c.truth(format!("{name}: R = R^2"), is_idempotent_ring(&p.ring)?, Vec::new);
        c.equal(format!("{name}: (i) [R..R]_5 + [R,R,R] = [R,R,R]"), &p.br(5)?.sum(&p.br(3)?)?, &p.br(3)?);
        let ideal = p.ideal_rr()?;
        for n in 1..=2 {
            let even = p.br(2 * n)?;
            if crate::commutator::is_ideal(&p.ring, &even, Side::TwoSided)? {
                c.equal(format!("{name}: (ii) [R..R]_{} is an ideal, so equals I([R,R])", 2 * n), &even, &ideal);
            } else {
                c.note(format!("{name}: [R..R]_{} is not an ideal; (ii) is vacuous", 2 * n));
            }
        }
    }
    Ok(c.finish())
}

fn thm3_4(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm3_4");
    let mut qualifying = 0;
    for mut p in probes(DEFAULT_RINGS, raised(cfg))? {
        let name = p.name();
        if !(two_divisible(&p.ring) && is_idempotent_ring(&p.ring)?) {
            continue;
        }
        qualifying += 1;
        c.equal(format!("{name}: squares generate R"), &squares_subgroup(&p.ring), &p.full());
        let ideal = p.ideal_rr()?;
        for n in 3..=5 {
            c.equal(format!("{name}: [R..R]_{n} = I([R,R])"), &p.br(n)?, &ideal);
        }
    }
    c.truth("at least two default rings satisfy R = R^2 and 2R = R", qualifying >= 2, Vec::new);
    Ok(c.finish())
}

fn thm3_7_cor3_8(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm3_7_cor3_8");
    for mut p in unital_probes(cfg)? {
        let name = p.name();
        let ideal = p.ideal_rr()?;
        for n in 3..=5 {
            c.equal(format!("{name}: [R..R]_{n} = I([R,R])"), &p.br(n)?, &ideal);
        }
    }
    Ok(c.finish())
}

fn thm3_10_example3(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm3_10_example3");
    let mut p = Probe::new("idempotentspan5mod2", cfg.budget)?;
    let ring = p.ring.clone();
    let ids: Vec<Coords> = idempotents(&ring)?.into_iter().map(|e| e.into_coords()).collect();
    let e = Subgroup::span(&ring, &ids);
    let gens: Vec<_> = e.rows().iter().map(|r| ring.element(r.clone())).collect::<Result<_>>()?;
    c.truth("R is generated by its idempotents", subring_generated(&ring, &gens)?.lattice().is_full(), Vec::new);
    let ideal = p.ideal_rr()?;
    for k in 2..=5 {
        c.equal(format!("[R..R]_{k} = I([R,R])"), &p.br(k)?, &ideal);
    }
    let pairs: Vec<Coords> = (0..ring.dim())
        .flat_map(|i| (i + 1..ring.dim()).map(move |j| (i, j)))
        .map(|(i, j)| ring.add(&ring.basis_coords(i), &ring.basis_coords(j)))
        .collect();
    c.equal("I([R,R]) = span{v_i + v_j}", &ideal, &Subgroup::span(&ring, &pairs));
    c.check("rank of I([R,R])", ring.dim() - 1, ideal.rank(), Vec::new);
    c.is_zero("R I([R,R]) = 0", &product_subgroup(&ring, &p.full(), &ideal)?, true);
    c.is_zero("I([R,R])^2 = 0", &product_subgroup(&ring, &ideal, &ideal)?, true);
    c.is_zero("I([R,R]) != 0", &ideal, false);
    c.check("rank of R / I([R,R])", 1, ring.dim() - ideal.rank(), Vec::new);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = None;
    for _ in 0..200 {
        let x: Coords = (0..ring.dim()).map(|_| Int::from(rng.gen_range(0..2u64))).collect();
        let y: Coords = (0..ring.dim()).map(|_| Int::from(rng.gen_range(0..2u64))).collect();
        if !ring.is_zero(&ring.commutator(&ring.mul(&x, &y), &x)) {
            bad = Some((x, y));
            break;
        }
    }
    c.truth("[xy, x] = 0 on 200 seeded samples", bad.is_none(), || {
        vec![Witness::elements("x, y", &ring, &[bad.clone().unwrap().0, bad.unwrap().1])]
    });
    Ok(c.finish())
}

fn example4(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example4");
    let mut p = Probe::new("example4n4mod2", cfg.budget)?;
    let ring = p.ring.clone();
    let n = 4;
    let b2 = p.br(2)?;
    for k in 3..=4 {
        c.equal(format!("[R,R] = [R..R]_{k}"), &b2, &p.br(k)?);
    }
    let ideal = p.ideal_rr()?;
    let mut units = vec!["e21".to_string()];
    units.extend((2..=n).flat_map(|i| (i + 1..=n).map(move |j| format!("e{i}{j}"))));
    let units: Vec<Coords> = units.iter().map(|u| el(&ring, u)).collect::<Result<_>>()?;
    c.equal("[R,R] = span{e21, e_ij : 2 <= i < j <= n}", &b2, &Subgroup::span(&ring, &units));
    c.equal("I([R,R]) = [R,R]", &ideal, &b2);
    c.truth("R = R^2", is_idempotent_ring(&ring)?, Vec::new);
    c.not_equal("R != I([R,R])", &p.full(), &ideal);
    c.check("rank of R / I([R,R])", n - 1, ring.dim() - ideal.rank(), Vec::new);
    let mut index = 1;
    let mut power = ideal.clone();
    while !power.is_zero() && index <= ring.dim() + 1 {
        power = product_subgroup(&ring, &power, &ideal)?;
        index += 1;
    }
    c.note(format!("computed [R,R] basis: {}", b2.describe().join(", ")));
    c.note(format!("computed I([R,R]) basis: {}", ideal.describe().join(", ")));
    c.note(format!("computed nilpotency index of I([R,R]): {index} (reported, not asserted)"));
    c.note(
        "the ring includes the diagonal units e_ii for 2 <= i <= n; with strictly upper units only, \
         the stated [R,R] would be all of R, contradicting R != I([R,R])"
            .to_string(),
    );
    Ok(c.finish())
}

fn prop3_5(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("prop3_5");
    for mut p in unital_probes(cfg)? {
        let name = p.name();
        let lhs = p.br(2)?.sum(&p.br(4)?)?;
        c.equal(format!("{name}: [R,R] + [R,R,R,R] = I([R,R])"), &lhs, &p.ideal_rr()?);
    }
    Ok(c.finish())
}

/// Trace-zero matrices of a full matrix ring `M_k`, as the kernel of the trace.
fn trace_zero(ring: &Ring) -> Result<Subgroup> {
    let k = (ring.dim() as f64).sqrt().round() as usize;
    let column: Vec<Coords> = (0..ring.dim())
        .map(|idx| vec![Int::from(u32::from(idx / k == idx % k))])
        .collect();
    Ok(Subgroup::span(ring, left_kernel(ring.modulus(), &column, 1)))
}

fn thm4_4_cor4_13(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm4_4_cor4_13");
    for mut p in probes(&["matrix2x2mod2", "matrix2x2mod3"], cfg.budget)? {
        let name = p.name();
        let r = p.full();
        c.equal(format!("{name}: I([R,R]) = R"), &p.ideal_rr()?, &r);
        for n in 3..=5 {
            c.equal(format!("{name}: [R..R]_{n} = R"), &p.br(n)?, &r);
        }
        let b2 = p.br(2)?;
        c.not_equal(format!("{name}: [R,R] != R"), &b2, &r);
        c.equal(format!("{name}: [R,R] = trace-zero matrices"), &b2, &trace_zero(&p.ring)?);
    }
    Ok(c.finish())
}

fn example7(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example7");
    let sub = example7_subring(2)?;
    let mut p = Probe::of(sub.ring().clone().with_budget(cfg.budget));
    let ring = p.ring.clone();
    let unity = ring.unity_coords().expect("unital").to_vec();
    for n in 2..=4 {
        c.member(format!("I not in [R..R]_{n}"), &p.br(n)?, &unity, false);
    }
    let ideal = p.ideal_rr()?;
    let ambient = sub.ambient();
    let m4 = Subgroup::full(ambient).scaled(&Int::from(4));
    let image = Subgroup::span(ambient, ideal.rows().iter().map(|r| sub.embed(r)));
    c.subset("I([R,R]) in M2(4Z)", &image, &m4);
    c.note(format!(
        "I([R,R]) in ambient coordinates: {}",
        image.rows().iter().map(|r| format_element(ambient, r)).collect::<Vec<_>>().join(", ")
    ));
    Ok(c.finish())
}

fn example8(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example8");
    let p = Probe::new("matrix2x2scale2", cfg.budget)?;
    let ring = p.ring.clone();
    let r = p.full();
    // Coordinates are in units of 2: M2(4Z) is 2R and M2(16Z) is 8R.
    let n = r.scaled(&Int::from(2));
    let n2 = product_subgroup(&ring, &n, &n)?;
    c.equal("N^2 = M2(16Z)", &n2, &r.scaled(&Int::from(8)));
    c.proper_subset("N^2 properly inside N", &n2, &n);
    for k in 2..=4 {
        let copies = vec![&n; k];
        c.not_equal(format!("[N..N]_{k} != N"), &bracket_subgroup(&ring, &copies, &Int::ONE)?, &n);
    }
    let mut prev = r.clone();
    for k in 1..=5u32 {
        let next = r.scaled(&Int::from(2u64.pow(k)));
        c.ideal(format!("2^{k} R is an ideal"), &ring, &next, Side::TwoSided, None)?;
        c.proper_subset(format!("2^{k} R properly inside 2^{} R", k - 1), &next, &prev);
        prev = next;
    }
    Ok(c.finish())
}

fn example9(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("example9");
    let ring = rings::ring("niltrunc2x12mod2", cfg.budget)?;
    let den = 12;
    let mut index = 1;
    while !power_subgroup(&ring, index)?.is_zero() {
        index += 1;
    }
    c.check("nilpotency index", den, index, Vec::new);
    let v = |a: usize, i: usize, j: usize| el(&ring, &format!("v{a}/{den}e{i}{j}"));
    let one = Int::ONE;
    for a in (2..den).step_by(2) {
        for (i, j) in [(1, 2), (2, 1)] {
            let lhs = v(a, i, j)?;
            let rhs = crate::commutator::bracket_coords(&ring, &[v(a / 2, i, i)?, v(a / 2, i, j)?], &one);
            c.check(
                format!("v{a}/{den} e{i}{j} = [v{}/{den} e{i}{i}, v{}/{den} e{i}{j}]", a / 2, a / 2),
                format_element(&ring, &lhs),
                format_element(&ring, &rhs),
                Vec::new,
            );
        }
    }
    for a in (3..den).step_by(3) {
        for (i, j) in [(1, 2), (2, 1)] {
            let t = a / 3;
            let lhs = v(a, i, i)?;
            let br = crate::commutator::bracket_coords(&ring, &[v(t, i, i)?, v(t, i, j)?], &one);
            let rhs = ring.mul(&br, &v(t, j, i)?);
            c.check(
                format!("v{a}/{den} e{i}{i} = [v{t}/{den} e{i}{i}, v{t}/{den} e{i}{j}] v{t}/{den} e{j}{i}"),
                format_element(&ring, &lhs),
                format_element(&ring, &rhs),
                Vec::new,
            );
        }
    }
    // [a_1..a_k] = [a_1..a_(k-1), v_(alpha/2) b, v_(alpha/2) I] when a_k = v_alpha b.
    let scalar = |a: usize| -> Result<Coords> { Ok(ring.add(&v(a, 1, 1)?, &v(a, 2, 2)?)) };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad: Option<Vec<Coords>> = None;
    for _ in 0..200 {
        let k = rng.gen_range(2..=4);
        let alpha = 2 * rng.gen_range(1..=2);
        let mut args: Vec<Coords> = (0..k - 1)
            .map(|_| (0..ring.dim()).map(|_| Int::from(rng.gen_range(0..2u64))).collect())
            .collect();
        let b: Coords = (0..ring.dim()).map(|_| Int::from(rng.gen_range(0..2u64))).collect();
        let half = scalar(alpha / 2)?;
        let mut longer = args.clone();
        longer.push(ring.mul(&half, &b));
        longer.push(half);
        args.push(ring.mul(&scalar(alpha)?, &b));
        let lhs = crate::commutator::bracket_coords(&ring, &args, &one);
        let rhs = crate::commutator::bracket_coords(&ring, &longer, &one);
        if lhs != rhs {
            bad = Some(args);
            break;
        }
    }
    c.truth("bracket lengthening identity on 200 seeded samples", bad.is_none(), || {
        vec![Witness::elements("arguments", &ring, &bad.unwrap())]
    });
    c.note("R = R^2 and R = [R..R]_k fail in the truncation and are not asserted".to_string());
    Ok(c.finish())
}

fn lemma4_8_thm4_9(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("lemma4_8_thm4_9");
    let names = [
        "matrix2x2mod2",
        "matrix2x2mod3",
        "upper3mod2",
        "strictupper4mod2",
        "matrix2x2scale2",
        "idempotentspan5mod2",
        "example4n4mod2",
    ];
    for mut p in probes(&names, cfg.budget)? {
        let name = p.name();
        let r = p.full();
        for n in 3..=4 {
            let bn = p.br(n)?;
            let powers = power_values_subgroup(&p.ring, n - 1)?;
            let comm = bracket_subgroup(&p.ring, &[&powers, &r], &Int::ONE)?;
            c.subset(format!("{name}: (i) [z^{}, R] in [R..R]_{n}", n - 1), &comm, &bn);
            let b2 = p.br(2)?;
            let left = product_subgroup(&p.ring, &powers, &b2)?;
            c.subset(format!("{name}: (ii) z^{} [R,R] in [R..R]_{n}", n - 1), &left, &bn);
            let k = herstein_k(&p.ring, &r, n)?;
            c.subset(format!("{name}: (iii) sum R z^{0} [z^{0}, R] R in [R..R]_{n}", n - 1), &k, &bn);
        }
    }
    let mut p = Probe::new("matrix2x2mod3", cfg.budget)?;
    for n in 3..=4 {
        let powers = power_values_subgroup(&p.ring, n - 1)?;
        let gens: Vec<_> = powers.rows().iter().map(|r| p.ring.element(r.clone())).collect::<Result<_>>()?;
        let generated = subring_generated(&p.ring, &gens)?;
        c.truth(
            format!("{}: R is generated by the z^{}", p.name(), n - 1),
            generated.lattice().is_full(),
            Vec::new,
        );
        c.equal(format!("{}: [R..R]_{n} = I([R,R])", p.name()), &p.br(n)?, &p.ideal_rr()?);
    }
    Ok(c.finish())
}

fn thm4_11_cor4_12(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm4_11_cor4_12");
    for mut p in probes(&["matrix2x2mod2", "matrix2x2mod3"], cfg.budget)? {
        let name = p.name();
        for n in 3..=4 {
            let k = herstein_k(&p.ring, &p.full(), n)?;
            c.is_zero(format!("{name}: K (n = {n}) is nonzero"), &k, false);
            c.ideal(format!("{name}: K (n = {n}) is an ideal"), &p.ring, &k, Side::TwoSided, None)?;
            c.subset(format!("{name}: K (n = {n}) in [R..R]_{n}"), &k, &p.br(n)?);
            let kk = bracket_subgroup(&p.ring, &[&k, &k], &Int::ONE)?;
            c.is_zero(format!("{name}: [K, K] (n = {n}) is nonzero"), &kk, false);
        }
    }
    Ok(c.finish())
}

fn thm5_1_instances(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm5_1_instances");
    for name in ["matrix2x2mod2", "matrix2x2mod3"] {
        let ring = rings::ring(name, cfg.budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ring.modulus().get());
        let m = ring.modulus().get();
        let samples: Vec<Coords> = std::iter::repeat_with(|| {
            (0..ring.dim()).map(|_| Int::from(rng.gen_range(0..m))).collect::<Coords>()
        })
        .filter(|x| !ring.is_zero(x))
        .take(100)
        .collect();
        for (n, r) in [(3, 1), (3, 0), (4, 2)] {
            let spec = BracketSpec::new(n, r, 1, ring.modulus())?;
            let miss = samples
                .iter()
                .map(|x| Ok((x, n_gen_lie_closure(&ring, &Subgroup::span(&ring, [x]), &spec)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|(_, s)| !s.is_full());
            c.truth(
                format!("{name}: closure of 100 nonzero elements is R (n = {n}, slot {})", r + 1),
                miss.is_none(),
                || {
                    let (x, s) = miss.unwrap();
                    vec![
                        Witness::elements("generator", &ring, &[x]),
                        Witness::subgroup("closure", &s),
                    ]
                },
            );
        }
    }
    Ok(c.finish())
}

fn cor8_5(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("cor8_5");
    let ring = rings::ring("matrix2x2mod5", cfg.budget)?;
    let full = Subgroup::full(&ring);
    for beta in 1..=4 {
        for n in 3..=4 {
            let s = bracket_power(&ring, n, &Int::from(beta))?;
            c.equal(format!("[R..R]_({n}, {beta}) = R"), &s, &full);
        }
    }
    Ok(c.finish())
}

fn thm7_5_constants(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("thm7_5_constants");
    let ring = rings::ring("matrix2x2mod2", cfg.budget)?;
    let parse_set = |items: &[&str]| -> Result<Vec<Coords>> {
        let mut v: Vec<Coords> = items.iter().map(|s| el(&ring, s)).collect::<Result<_>>()?;
        v.sort();
        Ok(v)
    };
    let exceptional = [
        parse_set(&["0", "e12+e21", "e11+e22+e12", "e11+e22+e21"])?,
        parse_set(&["0", "e11+e22", "e11+e12+e21", "e22+e12+e21"])?,
    ];
    for n in 2..=5 {
        let s = bracket_power(&ring, n, &Int::ONE)?;
        let mut elems = s.elements()?;
        elems.sort();
        for (idx, set) in exceptional.iter().enumerate() {
            c.truth(
                format!("[R..R]_({n}, 1) differs from exceptional set {}", idx + 1),
                &elems != set,
                || vec![Witness::elements("common value", &ring, set)],
            );
        }
        c.note(format!("[R..R]_({n}, 1) has {} elements", elems.len()));
    }
    Ok(c.finish())
}

fn cor3_12(cfg: &VerifyConfig) -> Result<ScenarioResult> {
    let mut c = Checker::new("cor3_12");
    for mut p in probes(&["upper2mod2", "upper3mod2"], cfg.budget)? {
        let name = p.name();
        let ring = p.ring.clone();
        let r = p.full();
        let ids: Vec<Coords> = idempotents(&ring)?.into_iter().map(|e| e.into_coords()).collect();
        let e = Subgroup::span(&ring, &ids);
        let gens: Vec<_> = e.rows().iter().map(|x| ring.element(x.clone())).collect::<Result<_>>()?;
        let e_bar = subring_generated(&ring, &gens)?.lattice().clone();
        c.note(format!("{name}: E = span {}", e.describe().join(", ")));
        c.note(format!("{name}: subring generated by E = span {}", e_bar.describe().join(", ")));
        let ce = bracket_subgroup(&ring, &[&e_bar, &e_bar], &Int::ONE)?;
        let mut chain = product_subgroup(&ring, &r, &ce)?;
        for factor in [&r, &ce, &r, &ce, &r] {
            chain = product_subgroup(&ring, &chain, factor)?;
        }
        let lhs = ce.sum(&chain)?;
        for n in 3..=5 {
            c.subset(format!("{name}: [E', E'] + R[E', E']R[E', E']R[E', E']R in [R..R]_{n}"), &lhs, &p.br(n)?);
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let names: Vec<_> = REGISTRY.iter().map(|(n, _)| *n).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        assert!(names.len() >= 19);
    }

    #[test]
    fn trace_zero_in_m2() {
        let r = rings::ring("matrix2x2mod3", Budget::default()).unwrap();
        let t = trace_zero(&r).unwrap();
        assert_eq!(t.rank(), 3);
        assert!(t.contains(&el(&r, "e11+2e22").unwrap()));
        assert!(!t.contains(&el(&r, "e11").unwrap()));
    }
}
