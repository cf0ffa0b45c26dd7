//! Spherical structure constants and the v = 1 specialization.
//!
//! Products of the canonical elements c_{M_x} attached to longest
//! double-coset representatives expand with support again of that form;
//! dividing each coefficient exactly by v^{-L(M0)} π_L yields the
//! integer structure constants r_{x,y,z;L}, which are simultaneously the
//! multiplication table of the spherical part of the asymptotic ring.
//! The normalized spherical elements themselves (which live over the
//! fraction field) are never materialized: all arithmetic happens on
//! c_{M_x}, with the π_L division applied to the constants at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::weyl::AffineElement;

/// Structure constants of c_{M_x} c_{M_y}: nonzero pairs (M_z, r) with
/// every invariant of the theory asserted along the way.
pub fn satake_constants_elems(
    h: &HeckeAlgebra,
    mx: &AffineElement,
    my: &AffineElement,
) -> Result<Vec<(AffineElement, BigInt)>> {
    for m in [mx, my] {
        if !h.group.is_max_coset_rep(m) {
            return Err(Error::Config(
                "spherical product requires longest double-coset representatives".into(),
            ));
        }
    }
    let lm0 = h.l_m0() as i64;
    // v^{-L(M0)} π_L, the common factor of every coefficient.
    let divisor = h.group.poincare_poly().shift(-lm0);
    let mut out = Vec::new();
    for ((_, u), rt) in h.h_constants(mx, my)? {
        if !h.group.is_max_coset_rep(&u) {
            return Err(Error::Assertion(format!(
                "c-support element of weight {} is not spherical",
                h.weight(&u)
            )));
        }
        let q = rt.exact_divide(&divisor)?;
        let r = q.as_constant().ok_or_else(|| {
            Error::Assertion(format!("structure constant {q} is not a bar-symmetric integer"))
        })?;
        // r must equal the top-degree coefficient of the raw h-constant.
        if r != rt.coeff(lm0) {
            return Err(Error::Assertion(format!(
                "constant {r} disagrees with leading coefficient {}",
                rt.coeff(lm0)
            )));
        }
        if !r.is_zero() {
            out.push((u, r));
        }
    }
    Ok(out)
}

/// Structure constants indexed by dominant weights of a realized datum:
/// z-coordinates are read off as the dominant representative of the
/// translation part of each support element.
pub fn satake_constants(
    h: &HeckeAlgebra,
    x: &[i64],
    y: &[i64],
) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let mx = h.group.max_dc_rep(x)?;
    let my = h.group.max_dc_rep(y)?;
    let mut out = BTreeMap::new();
    for (u, r) in satake_constants_elems(h, &mx, &my)? {
        let z = h.group.datum.dominant_rep(&u.translation);
        if h.group.max_dc_rep(&z)? != u {
            return Err(Error::Assertion(format!(
                "support element does not round-trip through its weight {z:?}"
            )));
        }
        out.insert(z, r);
    }
    Ok(out)
}

/// The multiplication table of the spherical asymptotic ring on a
/// dominance-ordered list of longest double-coset representatives.
pub struct SphericalTable {
    /// Index set: the given representatives first, then any further
    /// support elements encountered, all sorted by (L, canonical key).
    pub index: Vec<AffineElement>,
    /// Ambient dominant-weight label of each index entry.
    pub coords: Vec<Vec<i64>>,
    /// Nonzero constants keyed by index triples.
    pub entries: BTreeMap<(usize, usize, usize), BigInt>,
}

impl SphericalTable {
    pub fn get(&self, x: usize, y: usize, z: usize) -> BigInt {
        self.entries
            .get(&(x, y, z))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Constants of the product at row (x, y), as a map z-index → r.
    pub fn row(&self, x: usize, y: usize) -> BTreeMap<usize, BigInt> {
        self.entries
            .range((x, y, 0)..(x, y, usize::MAX))
            .map(|((_, _, z), r)| (*z, r.clone()))
            .collect()
    }

    /// JSON form: entries in lexicographic (x, y, z) coordinate order.
    pub fn to_json(&self, weights: &[u64], datum_label: &str) -> serde_json::Value {
        let mut rows: Vec<(&Vec<i64>, &Vec<i64>, &Vec<i64>, &BigInt)> = self
            .entries
            .iter()
            .map(|((x, y, z), r)| (&self.coords[*x], &self.coords[*y], &self.coords[*z], r))
            .collect();
        rows.sort();
        serde_json::json!({
            "L": weights,
            "datum": datum_label,
            "entries": rows
                .into_iter()
                .map(|(x, y, z, r)| serde_json::json!({
                    "x": x, "y": y, "z": z, "r": r.to_string(),
                }))
                .collect::<Vec<_>>(),
        })
    }

    /// Aligned human-readable table: one line per (x, y) with its
    /// expansion.
    pub fn render_text(&self) -> String {
        let label = |i: usize| {
            format!(
                "[{}]",
                self.coords[i]
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        let mut lines = Vec::new();
        let mut cur: Option<(usize, usize)> = None;
        let mut terms: Vec<String> = Vec::new();
        let mut flush = |cur: &Option<(usize, usize)>, terms: &mut Vec<String>| {
            if let Some((x, y)) = cur {
                lines.push(format!(
                    "{} * {} = {}",
                    label(*x),
                    label(*y),
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    }
                ));
                terms.clear();
            }
        };
        for ((x, y, z), r) in &self.entries {
            if cur != Some((*x, *y)) {
                flush(&cur, &mut terms);
                cur = Some((*x, *y));
            }
            terms.push(if r.is_one() {
                label(*z)
            } else {
                format!("{r} {}", label(*z))
            });
        }
        flush(&cur, &mut terms);
        lines.join("\n")
    }
}

/// Build the table for all pairs from `reps`. Asserts the unit behavior
/// of the first (dominance-minimal, i.e. M_0) entry and symmetry in
/// (x, y).
pub fn j_ring_table(h: &HeckeAlgebra, reps: &[AffineElement]) -> Result<SphericalTable> {
    let mut index: Vec<AffineElement> = reps.to_vec();
    index.sort_by_key(|m| (h.weight(m), m.clone()));
    index.dedup();
    let n_given = index.len();

    // Cells are independent; compute them through whatever rayon pool the
    // caller installed. The assembly below is ordered by (i, j), so the
    // result does not depend on scheduling.
    let pairs: Vec<(usize, usize)> = (0..n_given)
        .flat_map(|i| (i..n_given).map(move |j| (i, j)))
        .collect();
    let raw: Vec<(usize, usize, Vec<(AffineElement, BigInt)>)> = pairs
        .into_par_iter()
        .map(|(i, j)| satake_constants_elems(h, &index[i], &index[j]).map(|row| (i, j, row)))
        .collect::<Result<_>>()?;
    for (_, _, row) in &raw {
        for (u, _) in row {
            if !index.contains(u) {
                index.push(u.clone());
            }
        }
    }
    index[n_given..].sort_by(|a, b| (h.weight(a), a).cmp(&(h.weight(b), b)));
    let pos = |u: &AffineElement| index.iter().position(|v| v == u).unwrap();

    let mut entries = BTreeMap::new();
    for (i, j, row) in raw {
        for (u, r) in row {
            let k = pos(&u);
            entries.insert((i, j, k), r.clone());
            entries.insert((j, i, k), r);
        }
    }

    let table = SphericalTable {
        coords: index
            .iter()
            .map(|m| h.group.datum.dominant_rep(&m.translation))
            .collect(),
        index,
        entries,
    };

    // M_0 (index 0 by dominance order) must act as the unit.
    if table.index[0] != *h.group.longest_finite() {
        return Err(Error::Assertion("dominance-minimal entry is not M_0".into()));
    }
    for y in 0..n_given {
        let row = table.row(0, y);
        if row.len() != 1 || row.get(&y).map(|r| r.is_one()) != Some(true) {
            return Err(Error::Assertion(format!("unit row fails at column {y}")));
        }
    }
    Ok(table)
}

/// Element of the rational group algebra of W: the codomain of ξ.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct GroupAlgebraElt {
    terms: BTreeMap<AffineElement, BigRational>,
}

impl GroupAlgebraElt {
    pub fn zero() -> GroupAlgebraElt {
        GroupAlgebraElt::default()
    }

    pub fn single(w: AffineElement, c: BigRational) -> GroupAlgebraElt {
        let mut e = GroupAlgebraElt::zero();
        e.add_scaled(w, c);
        e
    }

    pub fn coeff(&self, w: &AffineElement) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineElement, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_scaled(&mut self, w: AffineElement, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &BigRational) -> GroupAlgebraElt {
        let mut out = GroupAlgebraElt::zero();
        for (w, a) in self.iter() {
            out.add_scaled(w.clone(), a * c);
        }
        out
    }

    /// Convolution product in the group algebra.
    pub fn mul(&self, rhs: &GroupAlgebraElt) -> GroupAlgebraElt {
        let mut out = GroupAlgebraElt::zero();
        for (w1, c1) in self.iter() {
            for (w2, c2) in rhs.iter() {
                out.add_scaled(w1.mult(w2), c1 * c2);
            }
        }
        out
    }
}

/// ξ: Σ f_w T_w ↦ Σ f_w(1) w, the specialization at v = 1. A ring
/// homomorphism onto the group algebra.
pub fn xi_specialize(a: &HeckeElt) -> GroupAlgebraElt {
    let mut out = GroupAlgebraElt::zero();
    for ((_, w), f) in a.iter() {
        out.add_scaled(w.clone(), BigRational::from(f.eval_at_one()));
    }
    out
}

/// ξ applied to the normalized spherical element 𝔠_x = π_L^{-1}
/// v^{L(M0)} c_{M_x}: the same specialization scaled by 1/#(W_0).
pub fn xi_spherical(h: &HeckeAlgebra, mx: &AffineElement) -> Result<GroupAlgebraElt> {
    let c = h.canonical(mx)?;
    let w0_size = BigRational::from(BigInt::from(h.group.finite_elements().len() as i64));
    Ok(xi_specialize(&c).scaled(&w0_size.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::coxeter::CoxeterDatum;
    use crate::folding::{fold, DiagramAutomorphism};
    use crate::laurent::LaurentPoly;
    use crate::weyl::{DatumSpec, RootDatum};

    fn algebra(spec: &str, cutoff: usize) -> HeckeAlgebra {
        let d = Arc::new(RootDatum::build(DatumSpec::parse(spec).unwrap()).unwrap());
        HeckeAlgebra::new(Arc::new(CoxeterDatum::standard(d, None).unwrap()), cutoff)
    }

    fn folded_a1(cutoff: usize) -> HeckeAlgebra {
        let d = Arc::new(RootDatum::build(DatumSpec::parse("A2~").unwrap()).unwrap());
        let f = fold(d, &DiagramAutomorphism::parse("0,2,1").unwrap()).unwrap();
        HeckeAlgebra::new(Arc::new(f.group), cutoff)
    }

    #[test]
    fn unit_constants() {
        let h = algebra("A1~", 12);
        let r = satake_constants(&h, &[0], &[1]).unwrap();
        assert_eq!(r, BTreeMap::from([(vec![1], BigInt::from(1))]));
        let r = satake_constants(&h, &[0], &[0]).unwrap();
        assert_eq!(r, BTreeMap::from([(vec![0], BigInt::from(1))]));
    }

    #[test]
    fn affine_a1_alpha_squared() {
        // The 3-dimensional representation: 3 ⊗ 3 = 5 + 3 + 1.
        let h = algebra("A1~", 12);
        let r = satake_constants(&h, &[1], &[1]).unwrap();
        let one = BigInt::from(1);
        assert_eq!(
            r,
            BTreeMap::from([
                (vec![0], one.clone()),
                (vec![1], one.clone()),
                (vec![2], one),
            ])
        );
    }

    #[test]
    fn affine_a1_j_table() {
        let h = algebra("A1~", 14);
        let reps: Vec<_> = [[0i64], [1], [2]]
            .iter()
            .map(|x| h.group.max_dc_rep(x).unwrap())
            .collect();
        let t = j_ring_table(&h, &reps).unwrap();
        // τ_{M_α} τ_{M_α} = τ_{M_0} + τ_{M_α} + τ_{M_2α}
        let row = t.row(1, 1);
        assert_eq!(row.len(), 3);
        for z in 0..3 {
            assert_eq!(t.get(1, 1, z), BigInt::from(1));
        }
        // symmetry
        for (&(x, y, z), r) in &t.entries {
            assert_eq!(&t.get(y, x, z), r);
        }
        assert_eq!(t.coords[..3], [vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn folded_a1_first_rows_are_clebsch_gordan() {
        let h = folded_a1(14);
        // Dominance-ordered spherical representatives: L(M_k) = 4k + 3.
        let reps = h.group.dominant_coset_reps(11);
        assert_eq!(reps.len(), 3);
        assert_eq!(
            reps.iter().map(|m| h.weight(m)).collect::<Vec<_>>(),
            vec![3, 7, 11]
        );
        let t = j_ring_table(&h, &reps).unwrap();
        // Clebsch-Gordan: τ_a τ_b = Σ τ_c over c = |a-b|, |a-b|+2, ..., a+b.
        for (a, b) in [(1usize, 1usize), (1, 2), (2, 2)] {
            let row = t.row(a, b);
            let lo = a.abs_diff(b);
            let hi = a + b;
            let expect: BTreeMap<usize, BigInt> = (lo..=hi)
                .step_by(2)
                .map(|c| (c, BigInt::from(1)))
                .collect();
            assert_eq!(row, expect, "CG rule fails at ({a}, {b})");
        }
    }

    #[test]
    fn xi_on_generators() {
        let h = algebra("A1~", 8);
        let s = h.group.generators[1].clone();
        let e = h.group.identity();
        // ξ(T_s) = s
        assert_eq!(
            xi_specialize(&h.t(&s)),
            GroupAlgebraElt::single(s.clone(), BigRational::one())
        );
        // ξ(c_s) = e + s
        let xc = xi_specialize(&h.canonical(&s).unwrap());
        assert_eq!(xc.coeff(&e), BigRational::one());
        assert_eq!(xc.coeff(&s), BigRational::one());
        assert_eq!(xc.iter().count(), 2);
    }

    #[test]
    fn xi_is_ring_homomorphism() {
        let h = algebra("A2~", 8);
        let g0 = h.group.generators[0].clone();
        let g1 = h.group.generators[1].clone();
        let g2 = h.group.generators[2].clone();
        let mut a = h.t(&g1.mult(&g2));
        a.add_scaled(h.key(&g0), LaurentPoly::from_terms([(1, 2), (-3, 1)]));
        let mut b = h.t(&g0.mult(&g1).mult(&g0));
        b.add_scaled(h.key(&g2), LaurentPoly::from_terms([(0, -1), (2, 5)]));
        let lhs = xi_specialize(&h.t_mult(&a, &b).unwrap());
        let rhs = xi_specialize(&a).mul(&xi_specialize(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn xi_spherical_constant_on_double_cosets() {
        // ξ(𝔠_x) = #(W_0)^{-1} Σ_{x'} dim(V_x^{x'}) Σ_{w ∈ W_0 t_x' W_0} w:
        // the coefficient is constant on each double coset.
        let h = algebra("A1~", 10);
        let mx = h.group.max_dc_rep(&[1]).unwrap();
        let xc = xi_spherical(&h, &mx).unwrap();
        let mut by_coset: BTreeMap<Vec<i64>, Vec<BigRational>> = BTreeMap::new();
        for (w, c) in xc.iter() {
            by_coset
                .entry(h.group.datum.dominant_rep(&w.translation))
                .or_default()
                .push(c.clone());
        }
        // Support is the closure {0, α}; each coset has a constant value.
        assert_eq!(by_coset.len(), 2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for (x, vals) in by_coset {
            assert!(vals.iter().all(|c| *c == vals[0]), "not constant on coset");
            // dim V_α^0 = dim V_α^α = 1, #(W_0) = 2.
            assert_eq!(vals[0], half, "wrong value at {x:?}");
        }
    }

    #[test]
    fn table_serialization_shape() {
        let h = algebra("A1~", 12);
        let reps: Vec<_> = [[0i64], [1]]
            .iter()
            .map(|x| h.group.max_dc_rep(x).unwrap())
            .collect();
        let t = j_ring_table(&h, &reps).unwrap();
        let j = t.to_json(&h.group.weights, "A1~");
        assert_eq!(j["datum"], "A1~");
        let entries = j["entries"].as_array().unwrap();
        assert!(!entries.is_empty());
        // lexicographic (x, y, z) order
        let keys: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        let triples: Vec<(Vec<i64>, Vec<i64>, Vec<i64>)> = entries
            .iter()
            .map(|e| {
                let g = |k: &str| {
                    e[k].as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_i64().unwrap())
                        .collect()
                };
                (g("x"), g("y"), g("z"))
            })
            .collect();
        let mut ts = triples.clone();
        ts.sort();
        assert_eq!(triples, ts);
        let text = t.render_text();
        assert!(text.contains("[0] * [0] = [0]"));
    }
}
