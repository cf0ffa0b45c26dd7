//! Exact arithmetic in Z[v, v^-1].
//!
//! Every Hecke-side coefficient in this crate lives here: canonical-basis
//! coefficients, R-polynomials, structure constants before specialization.
//! Coefficients are arbitrary-precision integers; there is no floating
//! point anywhere in the pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial in a single variable `v` with integer
/// coefficients. Terms are kept in sorted exponent order and zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * v^n`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `v^a - v^b`.
    pub fn diff_of_monomials(a: i64, b: i64) -> Self {
        Self::monomial(a, 1) - Self::monomial(b, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Coefficient of `v^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    /// The bar involution: `v^n -> v^-n` on every term.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    /// Multiply by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + n, c.clone())).collect(),
        }
    }

    /// Exact division in Z[v, v^-1]; errors with [`Error::Inexact`] if no
    /// exact quotient exists. Division is long division from the top
    /// exponent down, valid for Laurent polynomials after normalizing both
    /// operands to lowest exponent zero.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::Inexact("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let a_min = self.min_exp().unwrap();
        let b_min = divisor.min_exp().unwrap();
        // Work with ordinary polynomials: self = v^a_min * A, divisor = v^b_min * B.
        let mut rem = self.shift(-a_min);
        let b = divisor.shift(-b_min);
        let b_deg = b.max_exp().unwrap();
        let b_lead = b.coeff(b_deg);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let r_deg = rem.max_exp().unwrap();
            if r_deg < b_deg {
                return Err(Error::Inexact(format!(
                    "nonzero remainder {} dividing {} by {}",
                    rem, self, divisor
                )));
            }
            let r_lead = rem.coeff(r_deg);
            let (q, r) = (&r_lead / &b_lead, &r_lead % &b_lead);
            if !r.is_zero() {
                return Err(Error::Inexact(format!(
                    "leading coefficient {} not divisible by {}",
                    r_lead, b_lead
                )));
            }
            let term = LaurentPoly::monomial(r_deg - b_deg, q);
            rem = rem - &term * &b;
            quot = quot + term;
        }
        // Restore exponent offsets.
        Ok(quot.shift(a_min - b_min))
    }

    /// True if all exponents are even and nonnegative, i.e. the value lies
    /// in Z[v^2].
    pub fn in_z_v2(&self) -> bool {
        self.terms.keys().all(|e| *e >= 0 && e % 2 == 0)
    }

    /// Evaluate at `v = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The constant `n` if this polynomial equals `n * v^0`, or zero.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.terms.len() == 1 {
            self.terms.get(&0).cloned()
        } else {
            None
        }
    }

    /// Serialize as `{"<exponent>": <coefficient>}` with exponents as
    /// decimal strings; BTreeMap iteration keeps keys in numeric order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in &self.terms {
            map.insert(e.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Format("polynomial must be a JSON object".into()))?;
        let mut p = LaurentPoly::zero();
        for (k, v) in obj {
            let exp: i64 = k
                .parse()
                .map_err(|_| Error::Format(format!("bad exponent key {k:?}")))?;
            let c: BigInt = match v {
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| Error::Format(format!("bad coefficient {s:?}")))?,
                serde_json::Value::Number(n) => BigInt::from(
                    n.as_i64()
                        .ok_or_else(|| Error::Format(format!("bad coefficient {n}")))?,
                ),
                _ => return Err(Error::Format("coefficient must be string or number".into())),
            };
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest exponent first reads naturally.
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}v", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}v^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a, 'b> Mul<&'b LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(n: i64) -> LaurentPoly {
        LaurentPoly::monomial(n, 1)
    }

    #[test]
    fn difference_of_squares() {
        let a = v(1) + v(-1);
        let b = v(1) - v(-1);
        assert_eq!(&a * &b, v(2) - v(-2));
    }

    #[test]
    fn additive_identity() {
        let p = LaurentPoly::from_terms([(3, 2), (-1, 5)]);
        assert_eq!(p.clone() + LaurentPoly::zero(), p);
    }

    #[test]
    fn binomial_square() {
        let p = LaurentPoly::one() + v(2);
        let expect = LaurentPoly::from_terms([(0, 1), (2, 2), (4, 1)]);
        assert_eq!(&p * &p, expect);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(v(3).bar(), v(-3));
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
        let sym = v(1) + v(-1);
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn exact_divide_examples() {
        let a = LaurentPoly::from_terms([(-1, 1), (1, 2), (3, 1)]);
        let b = LaurentPoly::from_terms([(0, 1), (2, 1)]);
        let q = a.exact_divide(&b).unwrap();
        assert_eq!(q, v(-1) + v(1));

        let p = LaurentPoly::from_terms([(5, 7), (-3, -2)]);
        assert_eq!(p.exact_divide(&LaurentPoly::one()).unwrap(), p);

        let bad = (LaurentPoly::one() + v(1)).exact_divide(&b);
        assert!(matches!(bad, Err(Error::Inexact(_))));
    }

    #[test]
    fn json_round_trip_is_sorted() {
        let p = LaurentPoly::from_terms([(2, 3), (-5, 1), (0, -4)]);
        let j = p.to_json();
        let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["-5", "0", "2"]);
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..=6, -9i64..=9), 0..6)
            .prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_involutive(p in arb_poly()) {
            prop_assert_eq!(p.bar().bar(), p);
        }

        #[test]
        fn bar_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
        }

        #[test]
        fn divide_undoes_multiply(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.exact_divide(&q).unwrap(), p);
        }

        #[test]
        fn ring_axioms_spot(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(q.clone() + &r), (&p * &q) + &(&p * &r));
        }
    }
}
