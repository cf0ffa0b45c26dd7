//! The Hecke algebra over Z[v, v^-1] of a weighted Coxeter datum:
//! T-basis arithmetic, the bar involution, the canonical basis c_w with
//! its coefficient polynomials P_{y,w;L}, R-polynomials, and the
//! h-structure constants with their leading integer coefficients N.
//!
//! The canonical basis is constructed by bar-fixing: starting from T_w,
//! the defect bar(x) - x is cancelled top-down by correction terms with
//! strictly negative exponents. Uniqueness of the splitting
//! q = p - bar(p) with p in v^-1 Z[v^-1] makes the construction its own
//! correctness proof: the loop ends exactly when the element is
//! bar-invariant.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::coxeter::CoxeterDatum;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::weyl::AffineElement;

/// Basis index: (Coxeter length, element). Ordering by length first makes
/// triangular elimination deterministic.
pub type EltKey = (usize, AffineElement);

/// Sparse element of the Hecke algebra in the T-basis.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct HeckeElt {
    terms: BTreeMap<EltKey, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> HeckeElt {
        HeckeElt::default()
    }

    pub fn single(key: EltKey, coeff: LaurentPoly) -> HeckeElt {
        let mut e = HeckeElt::zero();
        e.add_scaled(key, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &EltKey) -> LaurentPoly {
        self.terms.get(key).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EltKey, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Highest (length, element) key in the support.
    pub fn top(&self) -> Option<(&EltKey, &LaurentPoly)> {
        self.terms.iter().next_back()
    }

    pub fn add_scaled(&mut self, key: EltKey, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &HeckeElt) {
        for (k, c) in rhs.iter() {
            self.add_scaled(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, rhs: &HeckeElt) {
        for (k, c) in rhs.iter() {
            self.add_scaled(k.clone(), -c.clone());
        }
    }

    pub fn scaled(&self, p: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (k, c) in self.iter() {
            out.add_scaled(k.clone(), c * p);
        }
        out
    }
}

#[derive(Default)]
struct Memos {
    info: HashMap<AffineElement, (usize, u64)>,
    bar_t: HashMap<AffineElement, Arc<HeckeElt>>,
    canonical: HashMap<AffineElement, Arc<HeckeElt>>,
    p_polys: HashMap<(AffineElement, AffineElement), LaurentPoly>,
    r_polys: HashMap<(AffineElement, AffineElement), LaurentPoly>,
}

/// Hecke algebra context: the weighted datum, a hard length cutoff, and
/// the memo tables (bar-expansions, canonical basis, P and R
/// polynomials). The memo is append-only and internally synchronized, so
/// one context can serve concurrent workers.
pub struct HeckeAlgebra {
    pub group: Arc<CoxeterDatum>,
    pub cutoff: usize,
    memos: Mutex<Memos>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<CoxeterDatum>, cutoff: usize) -> HeckeAlgebra {
        HeckeAlgebra {
            group,
            cutoff,
            memos: Mutex::new(Memos::default()),
        }
    }

    /// (Coxeter length, weight L) of an element, memoized.
    pub fn info(&self, w: &AffineElement) -> (usize, u64) {
        if let Some(&i) = self.memos.lock().unwrap().info.get(w) {
            return i;
        }
        let word = self.group.reduced_word(w);
        let len = word.len();
        let weight: u64 = word.iter().map(|&i| self.group.weights[i]).sum();
        self.memos
            .lock()
            .unwrap()
            .info
            .insert(w.clone(), (len, weight));
        (len, weight)
    }

    pub fn coxeter_len(&self, w: &AffineElement) -> usize {
        self.info(w).0
    }

    pub fn weight(&self, w: &AffineElement) -> u64 {
        self.info(w).1
    }

    pub fn key(&self, w: &AffineElement) -> EltKey {
        (self.coxeter_len(w), w.clone())
    }

    /// The basis element T_w.
    pub fn t(&self, w: &AffineElement) -> HeckeElt {
        HeckeElt::single(self.key(w), LaurentPoly::one())
    }

    pub fn unit(&self) -> HeckeElt {
        self.t(&self.group.identity())
    }

    fn check_cutoff(&self, len: usize) -> Result<()> {
        if len > self.cutoff {
            Err(Error::Cutoff {
                cutoff: self.cutoff,
                length: len,
            })
        } else {
            Ok(())
        }
    }

    /// `v^{L(s)} - v^{-L(s)}` for generator s.
    fn xi(&self, s: usize) -> LaurentPoly {
        let l = self.group.weights[s] as i64;
        LaurentPoly::diff_of_monomials(l, -l)
    }

    /// a · T_s.
    pub fn right_mult_gen(&self, a: &HeckeElt, s: usize) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for ((len, w), c) in a.iter() {
            let ws = self.group.right_mult(w, s);
            if self.group.is_right_descent(w, s) {
                // T_w T_s = T_ws + (v^L - v^-L) T_w
                out.add_scaled((len - 1, ws), c.clone());
                out.add_scaled((*len, w.clone()), c * &self.xi(s));
            } else {
                self.check_cutoff(len + 1)?;
                out.add_scaled((len + 1, ws), c.clone());
            }
        }
        Ok(out)
    }

    /// T_s · a.
    pub fn left_mult_gen(&self, s: usize, a: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for ((len, w), c) in a.iter() {
            let sw = self.group.left_mult(s, w);
            if self.group.is_left_descent(s, w) {
                out.add_scaled((len - 1, sw), c.clone());
                out.add_scaled((*len, w.clone()), c * &self.xi(s));
            } else {
                self.check_cutoff(len + 1)?;
                out.add_scaled((len + 1, sw), c.clone());
            }
        }
        Ok(out)
    }

    /// Product in the T-basis.
    pub fn t_mult(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for ((_, w), c) in a.iter() {
            // T_w b, expanding T_w along a reduced word from the right.
            let word = self.group.reduced_word(w);
            let mut acc = b.clone();
            for &s in word.iter().rev() {
                acc = self.left_mult_gen(s, &acc)?;
            }
            out.add_assign(&acc.scaled(c));
        }
        Ok(out)
    }

    /// bar(T_w), memoized: bar(T_w) = (T_s - (v^L - v^-L)) · bar(T_{sw}).
    pub fn bar_t(&self, w: &AffineElement) -> Result<Arc<HeckeElt>> {
        if let Some(b) = self.memos.lock().unwrap().bar_t.get(w) {
            return Ok(b.clone());
        }
        let result = match self.group.first_left_descent(w) {
            None => Arc::new(self.unit()),
            Some(s) => {
                let tail = self.bar_t(&self.group.left_mult(s, w))?;
                let mut b = self.left_mult_gen(s, &tail)?;
                b.sub_assign(&tail.scaled(&self.xi(s)));
                Arc::new(b)
            }
        };
        self.memos
            .lock()
            .unwrap()
            .bar_t
            .insert(w.clone(), result.clone());
        Ok(result)
    }

    /// The bar involution: coefficients barred, T_w replaced by bar(T_w).
    pub fn bar(&self, a: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for ((_, w), c) in a.iter() {
            out.add_assign(&self.bar_t(w)?.scaled(&c.bar()));
        }
        Ok(out)
    }

    /// The canonical basis element c_w, constructed by bar-fixing and
    /// memoized. Also records every P_{y,w;L} and enforces the degree and
    /// parity bounds (P in Z[v^2], deg P < L(w) - L(y)).
    pub fn canonical(&self, w: &AffineElement) -> Result<Arc<HeckeElt>> {
        if let Some(c) = self.memos.lock().unwrap().canonical.get(w) {
            return Ok(c.clone());
        }
        let wkey = self.key(w);
        self.check_cutoff(wkey.0)?;
        let (_, lw) = self.info(w);

        let mut c = self.t(w);
        // defect = bar(c) - c; cancel the top term repeatedly.
        let mut defect = self.bar(&c)?;
        defect.sub_assign(&c);
        while let Some((ykey, q)) = defect.top().map(|(k, q)| (k.clone(), q.clone())) {
            if ykey >= wkey {
                return Err(Error::Assertion(format!(
                    "bar defect at or above the leading term of c_w (w len {})",
                    wkey.0
                )));
            }
            // Split q = p - bar(p) with p supported in negative exponents.
            let mut p = LaurentPoly::zero();
            for (e, coeff) in q.iter() {
                if e < 0 {
                    p = p + LaurentPoly::monomial(e, coeff.clone());
                }
            }
            if p.clone() - p.bar() != q {
                return Err(Error::Assertion(
                    "bar defect is not antisymmetric; cannot split".into(),
                ));
            }
            let correction = HeckeElt::single(ykey.clone(), p.clone());
            c.add_assign(&correction);
            // defect gains bar(p · T_y) - p · T_y.
            defect.add_assign(&self.bar_t(&ykey.1)?.scaled(&p.bar()));
            defect.sub_assign(&correction);
        }

        // Record and validate the P polynomials.
        {
            let mut memos = self.memos.lock().unwrap();
            for ((_, y), coeff) in c.iter() {
                if y == w {
                    continue;
                }
                let ly = memos
                    .info
                    .get(y)
                    .map(|i| i.1)
                    .unwrap_or_else(|| self.group.weight_len(y));
                let gap = lw as i64 - ly as i64;
                let p_poly = coeff.shift(gap);
                if !p_poly.in_z_v2() || p_poly.max_exp().unwrap_or(0) >= gap {
                    return Err(Error::DegreeViolation {
                        context: format!("P(y len {}, w len {})", self.group.weight_len(y), lw),
                        detail: format!("P = {p_poly}, bound {gap}"),
                    });
                }
                memos
                    .p_polys
                    .insert((y.clone(), w.clone()), p_poly);
            }
            memos.p_polys.insert((w.clone(), w.clone()), LaurentPoly::one());
        }

        let arc = Arc::new(c);
        self.memos
            .lock()
            .unwrap()
            .canonical
            .insert(w.clone(), arc.clone());
        Ok(arc)
    }

    /// P_{y,w;L}; computes c_w if needed.
    pub fn p_poly(&self, y: &AffineElement, w: &AffineElement) -> Result<LaurentPoly> {
        self.canonical(w)?;
        Ok(self
            .memos
            .lock()
            .unwrap()
            .p_polys
            .get(&(y.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero))
    }

    /// R_{y,w;L} by the descent recursion. Base cases R_{w,w} = 1 and
    /// R_{y,w} = 0 unless y <= w; for a common descent s the polynomial
    /// is invariant; otherwise
    /// R_{y,w} = v^{2L(s)} R_{sy,sw} + (v^{2L(s)} - 1) R_{sy,w}.
    /// This orientation (not the transposed one) is the one that
    /// reproduces the direct T-basis expansion; `verify` certifies that.
    pub fn r_poly(&self, y: &AffineElement, w: &AffineElement) -> Result<LaurentPoly> {
        if y == w {
            return Ok(LaurentPoly::one());
        }
        if !self.group.bruhat_leq(y, w) {
            return Ok(LaurentPoly::zero());
        }
        let memo_key = (y.clone(), w.clone());
        if let Some(r) = self.memos.lock().unwrap().r_polys.get(&memo_key) {
            return Ok(r.clone());
        }
        let s = self
            .group
            .first_left_descent(w)
            .expect("w > y >= e has a descent");
        let sw = self.group.left_mult(s, w);
        let sy = self.group.left_mult(s, y);
        let result = if self.group.is_left_descent(s, y) {
            self.r_poly(&sy, &sw)?
        } else {
            let q = LaurentPoly::monomial(2 * self.group.weights[s] as i64, 1);
            let qm1 = q.clone() - LaurentPoly::one();
            &q * &self.r_poly(&sy, &sw)? + &qm1 * &self.r_poly(&sy, w)?
        };
        self.memos
            .lock()
            .unwrap()
            .r_polys
            .insert(memo_key, result.clone());
        Ok(result)
    }

    /// Transposed-coefficient variant of the recursion's second branch,
    /// kept solely so the certification suite can demonstrate which
    /// orientation matches the defining expansion.
    pub fn r_poly_transposed(&self, y: &AffineElement, w: &AffineElement) -> Result<LaurentPoly> {
        if y == w {
            return Ok(LaurentPoly::one());
        }
        if !self.group.bruhat_leq(y, w) {
            return Ok(LaurentPoly::zero());
        }
        let s = self
            .group
            .first_left_descent(w)
            .expect("w > y >= e has a descent");
        let sw = self.group.left_mult(s, w);
        let sy = self.group.left_mult(s, y);
        if self.group.is_left_descent(s, y) {
            self.r_poly_transposed(&sy, &sw)
        } else {
            let q = LaurentPoly::monomial(2 * self.group.weights[s] as i64, 1);
            let qm1 = q.clone() - LaurentPoly::one();
            Ok(&qm1 * &self.r_poly_transposed(&sy, &sw)? + &q * &self.r_poly_transposed(&sy, w)?)
        }
    }

    /// Expand an element in the canonical basis by triangular peeling
    /// from the top key downward.
    pub fn c_expand(&self, a: &HeckeElt) -> Result<Vec<(EltKey, LaurentPoly)>> {
        let mut rest = a.clone();
        let mut out = Vec::new();
        while let Some((key, coeff)) = rest.top().map(|(k, c)| (k.clone(), c.clone())) {
            let c_elt = self.canonical(&key.1)?;
            rest.sub_assign(&c_elt.scaled(&coeff));
            out.push((key, coeff));
        }
        out.reverse();
        Ok(out)
    }

    /// All h_{w,w',u}: the canonical-basis coefficients of c_w c_{w'}.
    /// Asserts the degree bound deg h <= L(M0) on every coefficient.
    pub fn h_constants(
        &self,
        w: &AffineElement,
        w2: &AffineElement,
    ) -> Result<Vec<(EltKey, LaurentPoly)>> {
        let cw = self.canonical(w)?;
        let cw2 = self.canonical(w2)?;
        let prod = self.t_mult(&cw, &cw2)?;
        let hs = self.c_expand(&prod)?;
        let bound = self.l_m0() as i64;
        for ((_, u), h) in &hs {
            if h.max_exp().unwrap_or(i64::MIN) > bound {
                return Err(Error::DegreeViolation {
                    context: format!("h for product at element of weight {}", self.weight(u)),
                    detail: format!("deg {} exceeds L(M0) = {bound}", h.max_exp().unwrap()),
                });
            }
        }
        Ok(hs)
    }

    /// h_{w,w',w''} as a single coefficient.
    pub fn h_constant(
        &self,
        w: &AffineElement,
        w2: &AffineElement,
        w3: &AffineElement,
    ) -> Result<LaurentPoly> {
        let key = self.key(w3);
        Ok(self
            .h_constants(w, w2)?
            .into_iter()
            .find(|(k, _)| *k == key)
            .map(|(_, h)| h)
            .unwrap_or_else(LaurentPoly::zero))
    }

    /// N_{w,w',w''}: the coefficient of v^{L(M0)} in h_{w,w',w''}.
    pub fn n_constant(
        &self,
        w: &AffineElement,
        w2: &AffineElement,
        w3: &AffineElement,
    ) -> Result<BigInt> {
        Ok(self.h_constant(w, w2, w3)?.coeff(self.l_m0() as i64))
    }

    /// L(M0) for the finite parabolic.
    pub fn l_m0(&self) -> u64 {
        self.weight(&self.group.longest_finite().clone())
    }

    /// Export all stored P polynomials as sorted (y, w, P) triples.
    pub fn export_p_triples(&self) -> Vec<(EltKey, EltKey, LaurentPoly)> {
        let memos = self.memos.lock().unwrap();
        let mut out: Vec<(EltKey, EltKey, LaurentPoly)> = memos
            .p_polys
            .iter()
            .map(|((y, w), p)| {
                let ky = (self.group.coxeter_len(y), y.clone());
                let kw = (self.group.coxeter_len(w), w.clone());
                (kw, ky, p.clone())
            })
            .collect();
        drop(memos);
        out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        out.into_iter().map(|(kw, ky, p)| (ky, kw, p)).collect()
    }

    /// Warm the canonical-basis memo from a stored table: for each w the
    /// complete list of (y, P) pairs reconstructs c_w directly.
    pub fn import_canonical(
        &self,
        w: &AffineElement,
        rows: &[(AffineElement, LaurentPoly)],
    ) -> Result<()> {
        let lw = self.weight(w);
        let mut c = HeckeElt::zero();
        let mut memos_data = Vec::new();
        for (y, p) in rows {
            let ly = self.weight(y);
            c.add_scaled(self.key(y), p.shift(ly as i64 - lw as i64));
            memos_data.push(((y.clone(), w.clone()), p.clone()));
        }
        if c.coeff(&self.key(w)) != LaurentPoly::one() {
            return Err(Error::Format(
                "imported canonical element lacks unit leading term".into(),
            ));
        }
        let mut memos = self.memos.lock().unwrap();
        for (k, p) in memos_data {
            memos.p_polys.insert(k, p);
        }
        memos.canonical.insert(w.clone(), Arc::new(c));
        Ok(())
    }
}
