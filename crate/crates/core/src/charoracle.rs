//! Independent Weyl character-ring computations for the adjoint group:
//! dimensions, weight multiplicities (Freudenthal), and tensor-product
//! multiplicities (character peeling).
//!
//! Nothing here touches the Hecke algebra; this module exists to
//! cross-check it. The weight lattice is exactly the root lattice Q and
//! all vectors are written in simple-root coordinates.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::RootDatum;

/// W0-invariant integer multiplicity function on Q, sparsely stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CharacterVector {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl CharacterVector {
    pub fn zero() -> CharacterVector {
        CharacterVector::default()
    }

    pub fn mult(&self, w: &[i64]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.terms.iter()
    }

    pub fn add(&mut self, w: Vec<i64>, m: i64) {
        use std::collections::btree_map::Entry;
        if m == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Total mass: the dimension of the representation the character
    /// describes.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Convolution: the character of a tensor product.
    pub fn convolve(&self, rhs: &CharacterVector) -> CharacterVector {
        let mut out = CharacterVector::zero();
        for (a, ma) in self.iter() {
            for (b, mb) in rhs.iter() {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add(sum, ma * mb);
            }
        }
        out
    }

    pub fn is_w0_invariant(&self, datum: &RootDatum) -> bool {
        self.iter().all(|(w, m)| {
            (0..datum.rank).all(|i| {
                let mut r = w.clone();
                r[i] -= datum.simple_pairing(w, i);
                self.mult(&r) == *m
            })
        })
    }

    /// JSON form: comma-joined coordinates → multiplicity, sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (w, m) in &self.terms {
            let key = w
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.insert(key, serde_json::Value::from(*m));
        }
        serde_json::Value::Object(map)
    }
}

/// ⟨x, β∨⟩ for the p-th positive coroot.
fn coroot_pairing(datum: &RootDatum, x: &[i64], p: usize) -> i64 {
    datum.positive_coroots[p]
        .iter()
        .enumerate()
        .map(|(i, c)| c * datum.simple_pairing(x, i))
        .sum()
}

/// Symmetric form (x, y) from the integral symmetrizer:
/// (α_i, α_j) = d_j · ⟨α_i, α_j∨⟩.
fn form(datum: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for j in 0..datum.rank {
        s += y[j] * datum.symmetrizer[j] * datum.simple_pairing(x, j);
    }
    s
}

/// (ρ, y) = Σ_j y_j d_j, since (ρ, α_j) = d_j ⟨ρ, α_j∨⟩ = d_j.
fn rho_form(datum: &RootDatum, y: &[i64]) -> i64 {
    y.iter()
        .zip(&datum.symmetrizer)
        .map(|(c, d)| c * d)
        .sum()
}

fn require_dominant(datum: &RootDatum, x: &[i64]) -> Result<()> {
    if x.len() != datum.rank || !datum.is_dominant(x) {
        return Err(Error::Config(format!("{x:?} is not a dominant weight")));
    }
    Ok(())
}

/// Weyl dimension formula: Π_{α>0} (⟨x, α∨⟩ + ht α∨) / ht α∨.
pub fn weyl_dim(datum: &RootDatum, x: &[i64]) -> Result<BigInt> {
    require_dominant(datum, x)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for p in 0..datum.positive_coroots.len() {
        let ht: i64 = datum.positive_coroots[p].iter().sum();
        num *= BigInt::from(coroot_pairing(datum, x, p) + ht);
        den *= BigInt::from(ht);
    }
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero(), "Weyl formula quotient must be integral");
    Ok(q)
}

/// Dominant weights ν of V_x: ν dominant with x - ν a nonnegative sum of
/// simple roots, sorted by descending height then coordinates.
fn dominant_weights_below(datum: &RootDatum, x: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack = vec![x.to_vec()];
    let mut seen: HashSet<Vec<i64>> = stack.iter().cloned().collect();
    while let Some(v) = stack.pop() {
        if datum.is_dominant(&v) {
            out.push(v.clone());
        }
        for i in 0..datum.rank {
            if v[i] > 0 {
                let mut w = v.clone();
                w[i] -= 1;
                // Stay weakly below x in the dominance cone: coordinates
                // of dominant-chamber candidates are nonnegative.
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
    }
    out.sort_by_key(|v| (-v.iter().sum::<i64>(), v.clone()));
    out
}

/// Orbit of a weight under W0, acting by simple reflections on
/// simple-root coordinates.
fn w0_orbit(datum: &RootDatum, x: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = vec![x.to_vec()];
    seen.insert(x.to_vec());
    while let Some(v) = stack.pop() {
        for i in 0..datum.rank {
            let mut r = v.clone();
            r[i] -= datum.simple_pairing(&v, i);
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Character of the Weyl module V_x by Freudenthal's recursion, working
/// down from the highest weight; extended to all of Q by W0-invariance.
pub fn weight_multiplicities(datum: &RootDatum, x: &[i64]) -> Result<CharacterVector> {
    require_dominant(datum, x)?;
    let dominants = dominant_weights_below(datum, x);
    let mut mults: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    // Multiplicity of any weight via its dominant representative.
    let lookup = |mults: &BTreeMap<Vec<i64>, i64>, w: &[i64]| -> i64 {
        mults.get(&datum.dominant_rep(w)).copied().unwrap_or(0)
    };
    for nu in &dominants {
        if nu == x {
            mults.insert(nu.clone(), 1);
            continue;
        }
        // numerator: 2 Σ_{α>0} Σ_{k>=1} m(ν + kα) (ν + kα, α)
        let mut num: i64 = 0;
        for alpha in &datum.positive_roots {
            for k in 1.. {
                let shifted: Vec<i64> = nu
                    .iter()
                    .zip(alpha)
                    .map(|(c, a)| c + k * a)
                    .collect();
                let m = lookup(&mults, &shifted);
                if m == 0 {
                    break;
                }
                num += 2 * m * form(datum, &shifted, alpha);
            }
        }
        // denominator: (x+ρ, x+ρ) - (ν+ρ, ν+ρ) = (x+ν, x-ν) + 2(ρ, x-ν)
        let sum: Vec<i64> = x.iter().zip(nu).map(|(a, b)| a + b).collect();
        let diff: Vec<i64> = x.iter().zip(nu).map(|(a, b)| a - b).collect();
        let den = form(datum, &sum, &diff) + 2 * rho_form(datum, &diff);
        if den <= 0 || num % den != 0 {
            return Err(Error::Assertion(format!(
                "Freudenthal step at {nu:?}: {num} / {den} not a positive exact quotient"
            )));
        }
        let m = num / den;
        if m != 0 {
            mults.insert(nu.clone(), m);
        }
    }
    let mut chi = CharacterVector::zero();
    for (nu, m) in &mults {
        for w in w0_orbit(datum, nu) {
            chi.add(w, *m);
        }
    }
    // Checksum against the Weyl dimension formula.
    if BigInt::from(chi.total()) != weyl_dim(datum, x)? {
        return Err(Error::Assertion(format!(
            "character mass {} disagrees with Weyl dimension of {x:?}",
            chi.total()
        )));
    }
    Ok(chi)
}

/// dim V_x^y: the y-weight space of V_x.
pub fn weight_space_dim(datum: &RootDatum, x: &[i64], y: &[i64]) -> Result<i64> {
    Ok(weight_multiplicities(datum, x)?.mult(y))
}

/// Multiplicities (V_z : V_x ⊗ V_y) by character peeling: convolve the
/// two characters, then repeatedly subtract the character of the
/// height-maximal surviving dominant weight. Every residue must stay
/// nonnegative and the peeling must exhaust the product exactly.
pub fn tensor_multiplicities(
    datum: &RootDatum,
    x: &[i64],
    y: &[i64],
) -> Result<BTreeMap<Vec<i64>, i64>> {
    require_dominant(datum, x)?;
    require_dominant(datum, y)?;
    let chi_x = weight_multiplicities(datum, x)?;
    let chi_y = weight_multiplicities(datum, y)?;
    let mut residual = chi_x.convolve(&chi_y);
    let target_dim = weyl_dim(datum, x)? * weyl_dim(datum, y)?;
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut dim_check = BigInt::zero();
    loop {
        // Height-maximal dominant weight with surviving multiplicity.
        let top = residual
            .iter()
            .filter(|(w, m)| **m != 0 && datum.is_dominant(w))
            .max_by_key(|(w, _)| (w.iter().sum::<i64>(), (*w).clone()));
        let (z, m) = match top {
            None => break,
            Some((z, m)) => (z.clone(), *m),
        };
        if m < 0 {
            return Err(Error::NegativeResidue(format!(
                "multiplicity {m} at dominant weight {z:?}"
            )));
        }
        let chi_z = weight_multiplicities(datum, &z)?;
        for (w, mw) in chi_z.iter() {
            residual.add(w.clone(), -m * mw);
        }
        dim_check += BigInt::from(m) * weyl_dim(datum, &z)?;
        out.insert(z, m);
    }
    if residual != CharacterVector::zero() {
        return Err(Error::NegativeResidue(format!(
            "peeling left a nonzero residual of mass {}",
            residual.total()
        )));
    }
    if dim_check != target_dim {
        return Err(Error::Assertion(
            "tensor decomposition fails the dimension checksum".into(),
        ));
    }
    Ok(out)
}

/// The SL2 Clebsch-Gordan rule on highest-weight labels:
/// multiplicity 1 exactly for c in {|a-b|, |a-b|+2, ..., a+b}.
pub fn sl2_clebsch_gordan(a: usize, b: usize) -> BTreeMap<usize, i64> {
    (a.abs_diff(b)..=a + b).step_by(2).map(|c| (c, 1)).collect()
}
