//! A weighted Coxeter datum: a set of generators realized as elements of
//! an ambient (finite or affine) Weyl group, together with a positive
//! integer weight per generator.
//!
//! Both the plain case (generators = simple reflections plus s0, weights
//! all 1 or explicit overrides) and the folded case (generators = longest
//! elements of orbit parabolics, weights = their ambient lengths) go
//! through this one type, so the Hecke layer never needs to distinguish
//! them. Descents, Coxeter length and Bruhat order are all derived from
//! the ambient length function, which is valid because a weight function
//! is strictly positive: left-multiplying by a generator decreases the
//! group's own length exactly when it decreases the ambient length.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::weyl::{AffineElement, RootDatum};

const ORDER_CAP: usize = 50;
const PARABOLIC_CAP: usize = 100_000;

pub struct CoxeterDatum {
    pub datum: Arc<RootDatum>,
    pub generators: Vec<AffineElement>,
    pub weights: Vec<u64>,
    /// Index of the special (affine) generator, if any. The remaining
    /// generators span the finite parabolic W0.
    pub special: Option<usize>,
    pub coxeter_matrix: Vec<Vec<u32>>,
    bruhat_memo: Mutex<HashMap<(AffineElement, AffineElement), bool>>,
    longest_finite: OnceLock<AffineElement>,
    finite_elems: OnceLock<Vec<AffineElement>>,
}

impl CoxeterDatum {
    /// Standard datum: the simple reflections (plus s0 for affine types),
    /// with unit weights unless overrides are given. Generator 0 is s0 in
    /// the affine case; finite generators follow in simple-root order.
    pub fn standard(datum: Arc<RootDatum>, weights: Option<Vec<u64>>) -> Result<CoxeterDatum> {
        let mut generators = Vec::new();
        let mut special = None;
        if datum.spec.affine {
            special = Some(0);
            generators.push(datum.affine_reflection());
        }
        for i in 0..datum.rank {
            generators.push(datum.simple_reflection(i));
        }
        let weights = weights.unwrap_or_else(|| vec![1; generators.len()]);
        Self::assemble(datum, generators, weights, special)
    }

    /// Build from explicit generator elements (used by folding).
    pub fn assemble(
        datum: Arc<RootDatum>,
        generators: Vec<AffineElement>,
        weights: Vec<u64>,
        special: Option<usize>,
    ) -> Result<CoxeterDatum> {
        if weights.len() != generators.len() {
            return Err(Error::Config(format!(
                "{} weights for {} generators",
                weights.len(),
                generators.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w == 0) {
            return Err(Error::Config(format!("weight function must be positive, got {w}")));
        }
        let cd = CoxeterDatum {
            coxeter_matrix: coxeter_matrix(&datum, &generators)?,
            datum,
            generators,
            weights,
            special,
            bruhat_memo: Mutex::new(HashMap::new()),
            longest_finite: OnceLock::new(),
            finite_elems: OnceLock::new(),
        };
        cd.validate_weights()?;
        Ok(cd)
    }

    /// Weight well-definedness: generators joined by an odd braid order
    /// are conjugate and must carry equal weights.
    fn validate_weights(&self) -> Result<()> {
        let n = self.generators.len();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.coxeter_matrix[i][j];
                if m != 0 && m % 2 == 1 && self.weights[i] != self.weights[j] {
                    return Err(Error::Config(format!(
                        "generators {i} and {j} are conjugate (braid order {m}) \
                         but have weights {} and {}",
                        self.weights[i], self.weights[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn identity(&self) -> AffineElement {
        self.datum.identity()
    }

    pub fn ambient_length(&self, w: &AffineElement) -> usize {
        self.datum.length(w)
    }

    pub fn left_mult(&self, i: usize, w: &AffineElement) -> AffineElement {
        self.generators[i].mult(w)
    }

    pub fn right_mult(&self, w: &AffineElement, i: usize) -> AffineElement {
        w.mult(&self.generators[i])
    }

    pub fn is_left_descent(&self, i: usize, w: &AffineElement) -> bool {
        self.ambient_length(&self.left_mult(i, w)) < self.ambient_length(w)
    }

    pub fn is_right_descent(&self, w: &AffineElement, i: usize) -> bool {
        self.ambient_length(&self.right_mult(w, i)) < self.ambient_length(w)
    }

    pub fn first_left_descent(&self, w: &AffineElement) -> Option<usize> {
        (0..self.num_generators()).find(|&i| self.is_left_descent(i, w))
    }

    /// Reduced word, leftmost-descent first: w = s_{i0} s_{i1} ... .
    pub fn reduced_word(&self, w: &AffineElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = self.first_left_descent(&cur) {
            word.push(i);
            cur = self.left_mult(i, &cur);
        }
        debug_assert!(cur.is_identity(), "element not in the group span");
        word
    }

    /// Length in the group's own Coxeter system (word length over the
    /// generator set).
    pub fn coxeter_len(&self, w: &AffineElement) -> usize {
        self.reduced_word(w).len()
    }

    /// The weight function L(w): sum of generator weights along a reduced
    /// word. Additivity on reduced products is a theorem; for folded data
    /// it equals the ambient length, which the tests check.
    pub fn weight_len(&self, w: &AffineElement) -> u64 {
        self.reduced_word(w).iter().map(|&i| self.weights[i]).sum()
    }

    /// Bruhat order via the descent recursion, memoized.
    pub fn bruhat_leq(&self, y: &AffineElement, w: &AffineElement) -> bool {
        if y == w || y.is_identity() {
            return true;
        }
        if w.is_identity() {
            return false;
        }
        let key = (y.clone(), w.clone());
        if let Some(&r) = self.bruhat_memo.lock().unwrap().get(&key) {
            return r;
        }
        let s = self
            .first_left_descent(w)
            .expect("non-identity element has a descent");
        let sw = self.left_mult(s, w);
        let r = if self.is_left_descent(s, y) {
            self.bruhat_leq(&self.left_mult(s, y), &sw)
        } else {
            self.bruhat_leq(y, &sw)
        };
        self.bruhat_memo.lock().unwrap().insert(key, r);
        r
    }

    /// All elements of Coxeter length <= bound, sorted by
    /// (length, canonical key), each exactly once.
    pub fn enumerate_to_length(&self, bound: usize) -> Vec<AffineElement> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut out: Vec<AffineElement> = Vec::new();
        let mut layer = vec![self.identity()];
        seen.insert(self.identity());
        for _len in 0..=bound {
            let mut sorted = layer.clone();
            sorted.sort();
            out.extend(sorted);
            if _len == bound {
                break;
            }
            let mut next = Vec::new();
            for e in &layer {
                for i in 0..self.num_generators() {
                    let f = self.right_mult(e, i);
                    if !self.is_right_descent(e, i) && seen.insert(f.clone()) {
                        next.push(f);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Word lengths by breadth-first enumeration; the independent oracle
    /// for the realized length function.
    pub fn bfs_word_lengths(&self, bound: usize) -> BTreeMap<AffineElement, usize> {
        let mut dist: BTreeMap<AffineElement, usize> = BTreeMap::new();
        let mut layer = vec![self.identity()];
        dist.insert(self.identity(), 0);
        for len in 1..=bound {
            let mut next = Vec::new();
            for e in &layer {
                for i in 0..self.num_generators() {
                    let f = self.right_mult(e, i);
                    if !dist.contains_key(&f) {
                        dist.insert(f.clone(), len);
                        next.push(f);
                    }
                }
            }
            layer = next;
        }
        dist
    }

    /// Generator indices spanning the finite parabolic W0 (everything but
    /// the special generator; for a finite datum, all generators).
    pub fn finite_generator_indices(&self) -> Vec<usize> {
        (0..self.num_generators())
            .filter(|i| Some(*i) != self.special)
            .collect()
    }

    /// All elements of the parabolic subgroup generated by the given
    /// generator indices; errors if it is not (small and) finite.
    pub fn enumerate_parabolic(&self, gens: &[usize]) -> Result<Vec<AffineElement>> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut frontier = out.clone();
        while let Some(e) = frontier.pop() {
            for &i in gens {
                let f = self.right_mult(&e, i);
                if seen.insert(f.clone()) {
                    out.push(f.clone());
                    frontier.push(f);
                }
                if out.len() > PARABOLIC_CAP {
                    return Err(Error::NonTermination(PARABOLIC_CAP));
                }
            }
        }
        out.sort_by_key(|e| (self.ambient_length(e), e.clone()));
        Ok(out)
    }

    /// Elements of W0, cached.
    pub fn finite_elements(&self) -> &[AffineElement] {
        self.finite_elems.get_or_init(|| {
            self.enumerate_parabolic(&self.finite_generator_indices())
                .expect("finite parabolic enumeration")
        })
    }

    /// The longest element M0 of the finite parabolic W0.
    pub fn longest_finite(&self) -> &AffineElement {
        self.longest_finite.get_or_init(|| {
            self.finite_elements()
                .iter()
                .max_by_key(|e| (self.ambient_length(e), (*e).clone()))
                .expect("nonempty parabolic")
                .clone()
        })
    }

    /// π_L = Σ_{e ∈ W0} v^{2L(e)}.
    pub fn poincare_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for e in self.finite_elements() {
            p = p + LaurentPoly::monomial(2 * self.weight_len(e) as i64, 1);
        }
        p
    }

    /// True if every finite-parabolic generator is a two-sided descent:
    /// the characterization of the longest double-coset representatives.
    pub fn is_max_coset_rep(&self, w: &AffineElement) -> bool {
        self.finite_generator_indices()
            .iter()
            .all(|&s| self.is_left_descent(s, w) && self.is_right_descent(w, s))
    }

    /// The longest elements M of double cosets W0 · W0 with L(M) <= bound,
    /// sorted by (L, canonical key). This is the dominance-ordered index
    /// set of the spherical tables; for a realized affine datum the k-th
    /// entry corresponds to the k-th dominant weight.
    pub fn dominant_coset_reps(&self, bound: u64) -> Vec<AffineElement> {
        let mut reps: Vec<(u64, AffineElement)> = self
            .enumerate_to_length(bound as usize)
            .into_iter()
            .filter(|w| self.is_max_coset_rep(w))
            .map(|w| (self.weight_len(&w), w))
            .filter(|(l, _)| *l <= bound)
            .collect();
        reps.sort();
        reps.into_iter().map(|(_, w)| w).collect()
    }

    /// Saturate t_x to the longest element M_x of W0 t_x W0 by one-sided
    /// multiplications that increase ambient length.
    pub fn max_dc_rep(&self, x: &[i64]) -> Result<AffineElement> {
        if !self.datum.is_dominant(x) {
            return Err(Error::Config(format!("{x:?} is not dominant")));
        }
        let mut w = self.datum.translation(x);
        let budget = (self.datum.finite_order() as usize).pow(2)
            * (self.ambient_length(&w).max(1))
            + 16;
        let fin = self.finite_generator_indices();
        let mut steps = 0;
        loop {
            let mut grew = false;
            for &s in &fin {
                loop {
                    let left = self.left_mult(s, &w);
                    if self.ambient_length(&left) > self.ambient_length(&w) {
                        w = left;
                        grew = true;
                    } else {
                        break;
                    }
                    steps += 1;
                    if steps > budget {
                        return Err(Error::NonTermination(budget));
                    }
                }
                loop {
                    let right = self.right_mult(&w, s);
                    if self.ambient_length(&right) > self.ambient_length(&w) {
                        w = right;
                        grew = true;
                    } else {
                        break;
                    }
                    steps += 1;
                    if steps > budget {
                        return Err(Error::NonTermination(budget));
                    }
                }
            }
            if !grew {
                break;
            }
        }
        // |sM| = |M| - 1 = |Ms| for all finite generators.
        if !self.is_max_coset_rep(&w) {
            return Err(Error::Assertion(format!(
                "saturation of {x:?} did not reach a two-sided-descent element"
            )));
        }
        Ok(w)
    }

    /// Dominant weights x in Q+ with |M_x| <= bound, sorted by
    /// (|M_x|, coordinates). Uses |t_x| = 2 Σ_j x_j for dominant x in the
    /// root lattice.
    pub fn dominant_weights(&self, bound: u64) -> Result<Vec<Vec<i64>>> {
        if self.special.is_none() {
            return Err(Error::Config(
                "dominant weights need an affine datum".into(),
            ));
        }
        let w0_len = self.ambient_length(self.longest_finite()) as u64;
        if bound < w0_len {
            return Ok(vec![]);
        }
        let coord_budget = ((bound - w0_len) / 2) as i64;
        let rank = self.datum.rank;
        let mut out: Vec<(u64, Vec<i64>)> = Vec::new();
        let mut x = vec![0i64; rank];
        self.collect_dominant(&mut x, 0, coord_budget, &mut out, bound)?;
        out.sort();
        Ok(out.into_iter().map(|(_, x)| x).collect())
    }

    fn collect_dominant(
        &self,
        x: &mut Vec<i64>,
        pos: usize,
        budget: i64,
        out: &mut Vec<(u64, Vec<i64>)>,
        bound: u64,
    ) -> Result<()> {
        if pos == x.len() {
            if self.datum.is_dominant(x) {
                let m = self.max_dc_rep(x)?;
                let l = self.ambient_length(&m) as u64;
                if l <= bound {
                    out.push((l, x.clone()));
                }
            }
            return Ok(());
        }
        for c in 0..=budget {
            x[pos] = c;
            self.collect_dominant(x, pos + 1, budget - c, out, bound)?;
        }
        x[pos] = 0;
        Ok(())
    }

    /// Membership of x in Q+ by the length criterion:
    /// |s t_x| = |t_x| + 1 for every finite generator s.
    pub fn dominant_by_length_criterion(&self, x: &[i64]) -> bool {
        let t = self.datum.translation(x);
        let lt = self.ambient_length(&t);
        self.finite_generator_indices()
            .iter()
            .all(|&s| self.ambient_length(&self.left_mult(s, &t)) == lt + 1)
    }
}

/// Orders of pairwise products of generators; 0 encodes infinity
/// (cap reached on an affine ambient group). On a finite ambient group
/// every order is finite, so reaching the cap is an error.
fn coxeter_matrix(datum: &RootDatum, generators: &[AffineElement]) -> Result<Vec<Vec<u32>>> {
    let n = generators.len();
    let mut m = vec![vec![0u32; n]; n];
    for i in 0..n {
        m[i][i] = 1;
        for j in 0..i {
            let prod = generators[i].mult(&generators[j]);
            let mut acc = prod.clone();
            let mut order = 1u32;
            while !acc.is_identity() && (order as usize) < ORDER_CAP {
                acc = acc.mult(&prod);
                order += 1;
            }
            let entry = if acc.is_identity() {
                order
            } else if datum.spec.affine {
                0 // infinite
            } else {
                return Err(Error::OrderCap {
                    a: j,
                    b: i,
                    cap: ORDER_CAP,
                });
            };
            m[i][j] = entry;
            m[j][i] = entry;
        }
    }
    Ok(m)
}
