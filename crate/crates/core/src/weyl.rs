//! Root data and the affine Weyl group W = W0 ⋉ Q realized as affine
//! transformations of Q ⊗ R, written in simple-root coordinates.
//!
//! An element is stored as a pair (translation, finite part): the map
//! x ↦ u(x) + λ. The special generator s0 is the affine reflection in the
//! hyperplane ⟨x, γ∨⟩ = 1 where γ is the highest short root (so γ∨ is the
//! highest coroot). Length is computed by the hyperplane-counting formula
//! and certified against breadth-first word enumeration in the tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Series label of an irreducible Cartan type.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn from_char(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Parsed datum specification such as `A2` (finite) or `A2~` (affine).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DatumSpec {
    pub series: Series,
    pub rank: usize,
    pub affine: bool,
}

impl DatumSpec {
    pub fn parse(s: &str) -> Result<DatumSpec> {
        let s = s.trim();
        let affine = s.ends_with('~');
        let body = s.trim_end_matches('~');
        let mut chars = body.chars();
        let series = chars
            .next()
            .and_then(Series::from_char)
            .ok_or_else(|| Error::InvalidDatum(format!("cannot parse type {s:?}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidDatum(format!("cannot parse rank in {s:?}")))?;
        Ok(DatumSpec {
            series,
            rank,
            affine,
        })
    }
}

impl fmt::Display for DatumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.series,
            self.rank,
            if self.affine { "~" } else { "" }
        )
    }
}

/// Finite part of an affine transformation: an integer matrix acting on
/// column vectors in simple-root coordinates. Row-major, rank x rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0; n];
        for i in 0..n {
            let mut acc = 0;
            for j in 0..n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }
}

/// Element of W (or of W0 when the translation is zero): x ↦ u(x) + λ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub translation: Vec<i64>,
    pub finite: Matrix,
}

impl AffineElement {
    pub fn identity(rank: usize) -> AffineElement {
        AffineElement {
            translation: vec![0; rank],
            finite: Matrix::identity(rank),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&c| c == 0)
            && self.finite == Matrix::identity(self.finite.n)
    }

    /// Group law: (λ1, U1)(λ2, U2) = (λ1 + U1·λ2, U1·U2).
    pub fn mult(&self, rhs: &AffineElement) -> AffineElement {
        let mut t = self.finite.apply(&rhs.translation);
        for (a, b) in t.iter_mut().zip(&self.translation) {
            *a += b;
        }
        AffineElement {
            translation: t,
            finite: self.finite.mul(&rhs.finite),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.finite.n;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.finite.get(i, j)).collect())
            .collect();
        serde_json::json!({ "t": self.translation, "w": rows })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<AffineElement> {
        let t: Vec<i64> = serde_json::from_value(
            value
                .get("t")
                .cloned()
                .ok_or_else(|| Error::Format("element missing \"t\"".into()))?,
        )?;
        let rows: Vec<Vec<i64>> = serde_json::from_value(
            value
                .get("w")
                .cloned()
                .ok_or_else(|| Error::Format("element missing \"w\"".into()))?,
        )?;
        let n = t.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format("element matrix shape mismatch".into()));
        }
        Ok(AffineElement {
            translation: t,
            finite: Matrix {
                n,
                data: rows.into_iter().flatten().collect(),
            },
        })
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={:?}, w={:?})", self.translation, self.finite.data)
    }
}

/// Realized root datum for an irreducible finite or affine Weyl group.
///
/// `cartan[i][j]` is the pairing ⟨α_i, α_j∨⟩, so the simple reflection
/// s_j sends α_i to α_i − cartan[i][j]·α_j.
pub struct RootDatum {
    pub spec: DatumSpec,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, in closure order.
    pub positive_roots: Vec<Vec<i64>>,
    /// Matching positive coroots in simple-coroot coordinates.
    pub positive_coroots: Vec<Vec<i64>>,
    /// pairing_rows[p][j] = ⟨α_j, α_p∨⟩ for the p-th positive root.
    pairing_rows: Vec<Vec<i64>>,
    /// Index into `positive_roots` of the highest short root (affine wall).
    pub highest_short: usize,
    /// Integral symmetrizer: (α_i, α_j) proportional to d_j·cartan[i][j].
    pub symmetrizer: Vec<i64>,
}

fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    let n = rank;
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    fn chain(c: &mut [Vec<i64>], i: usize, j: usize) {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    let ok = match series {
        Series::A => {
            if n < 1 {
                false
            } else {
                for i in 1..n {
                    chain(&mut c, i - 1, i);
                }
                true
            }
        }
        Series::B | Series::C => {
            if n < 2 {
                false
            } else {
                for i in 1..n - 1 {
                    chain(&mut c, i - 1, i);
                }
                // B: last simple root short; C: last simple root long.
                if series == Series::B {
                    c[n - 2][n - 1] = -2;
                    c[n - 1][n - 2] = -1;
                } else {
                    c[n - 2][n - 1] = -1;
                    c[n - 1][n - 2] = -2;
                }
                true
            }
        }
        Series::D => {
            if n < 4 {
                false
            } else {
                for i in 1..n - 1 {
                    chain(&mut c, i - 1, i);
                }
                chain(&mut c, n - 3, n - 1);
                true
            }
        }
        Series::E => {
            if !(6..=8).contains(&n) {
                false
            } else {
                // Bourbaki numbering: node 1 on the branch end, node 2 the
                // short branch, chain 3-4-5-...; stored 0-based.
                chain(&mut c, 0, 2);
                chain(&mut c, 1, 3);
                for i in 3..n {
                    chain(&mut c, i - 1, i);
                }
                true
            }
        }
        Series::F => {
            if n != 4 {
                false
            } else {
                chain(&mut c, 0, 1);
                c[1][2] = -2;
                c[2][1] = -1;
                chain(&mut c, 2, 3);
                true
            }
        }
        Series::G => {
            if n != 2 {
                false
            } else {
                c[0][1] = -1;
                c[1][0] = -3;
                true
            }
        }
    };
    if ok {
        Ok(c)
    } else {
        Err(Error::InvalidDatum(format!(
            "unsupported type {series}{rank}"
        )))
    }
}

fn expected_positive_roots(series: Series, rank: usize) -> usize {
    let n = rank;
    match series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
        Series::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Series::F => 24,
        Series::G => 6,
    }
}

fn finite_weyl_order(series: Series, rank: usize) -> u64 {
    let n = rank as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    match series {
        Series::A => fact(n + 1),
        Series::B | Series::C => (1u64 << n) * fact(n),
        Series::D => (1u64 << (n - 1)) * fact(n),
        Series::E => match rank {
            6 => 51840,
            7 => 2903040,
            _ => 696729600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

impl RootDatum {
    /// Build the datum for an irreducible type; affine data additionally
    /// carry the special generator s0.
    pub fn build(spec: DatumSpec) -> Result<RootDatum> {
        if spec.affine && spec.rank < 1 {
            return Err(Error::InvalidDatum("affine datum needs rank >= 1".into()));
        }
        let cartan = cartan_matrix(spec.series, spec.rank)?;
        let n = spec.rank;

        // Integral symmetrizer d with d_j * cartan[i][j] symmetric:
        // propagate the ratio d_j / d_i = cartan[j][i] / cartan[i][j]
        // along diagram edges as exact fractions, then clear denominators.
        let mut frac: Vec<Option<(i64, i64)>> = vec![None; n];
        frac[0] = Some((1, 1));
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if i != j && cartan[i][j] != 0 {
                        if let (Some((ni, di)), None) = (frac[i], frac[j]) {
                            let num = ni * cartan[j][i].abs();
                            let den = di * cartan[i][j].abs();
                            let g = gcd(num, den);
                            frac[j] = Some((num / g, den / g));
                            changed = true;
                        }
                    }
                }
            }
        }
        if frac.iter().any(|f| f.is_none()) {
            return Err(Error::InvalidDatum(
                "Cartan diagram is not connected (reducible type)".into(),
            ));
        }
        let lcm_den = frac
            .iter()
            .map(|f| f.unwrap().1)
            .fold(1i64, |a, b| a / gcd(a, b) * b);
        let d: Vec<i64> = frac
            .iter()
            .map(|f| {
                let (num, den) = f.unwrap();
                num * (lcm_den / den)
            })
            .collect();
        let g = d.iter().fold(0i64, |a, &b| gcd(a, b));
        let d: Vec<i64> = d.iter().map(|x| x / g).collect();

        // Close the simple (root, coroot) pairs under all simple reflections.
        let mut all: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            all.push((r.clone(), r));
        }
        let mut frontier = all.clone();
        while let Some((r, rc)) = frontier.pop() {
            for i in 0..n {
                let pr: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                let prc: i64 = (0..n).map(|j| rc[j] * cartan[i][j]).sum();
                let mut nr = r.clone();
                nr[i] -= pr;
                let mut nrc = rc.clone();
                nrc[i] -= prc;
                let pair = (nr, nrc);
                if !all.contains(&pair) {
                    all.push(pair.clone());
                    frontier.push(pair);
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = all
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by_key(|(r, _)| (r.iter().sum::<i64>(), r.clone()));
        if pos.len() != expected_positive_roots(spec.series, spec.rank) {
            return Err(Error::InvalidDatum(format!(
                "closure produced {} positive roots, expected {}",
                pos.len(),
                expected_positive_roots(spec.series, spec.rank)
            )));
        }

        // Norm (α, α) up to global scale: Σ a_i a_j d_j cartan[i][j].
        let norm = |r: &[i64]| -> i64 {
            let mut acc = 0;
            for i in 0..n {
                for j in 0..n {
                    acc += r[i] * r[j] * d[j] * cartan[i][j];
                }
            }
            acc
        };
        let min_norm = pos.iter().map(|(r, _)| norm(r)).min().unwrap();
        let highest_short = pos
            .iter()
            .enumerate()
            .filter(|(_, (r, _))| norm(r) == min_norm)
            .max_by_key(|(_, (r, _))| r.iter().sum::<i64>())
            .map(|(i, _)| i)
            .unwrap();

        let pairing_rows: Vec<Vec<i64>> = pos
            .iter()
            .map(|(_, rc)| {
                (0..n)
                    .map(|j| (0..n).map(|i| rc[i] * cartan[j][i]).sum())
                    .collect()
            })
            .collect();

        let (positive_roots, positive_coroots) = pos.into_iter().unzip();
        Ok(RootDatum {
            spec,
            rank: n,
            cartan,
            positive_roots,
            positive_coroots,
            pairing_rows,
            highest_short,
            symmetrizer: d,
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn finite_order(&self) -> u64 {
        finite_weyl_order(self.spec.series, self.spec.rank)
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement::identity(self.rank)
    }

    /// The simple reflection s_i (0-based simple-root index).
    pub fn simple_reflection(&self, i: usize) -> AffineElement {
        let n = self.rank;
        let mut m = Matrix::identity(n);
        for j in 0..n {
            m.data[i * n + j] -= self.cartan[j][i];
        }
        AffineElement {
            translation: vec![0; n],
            finite: m,
        }
    }

    /// The affine reflection s0 = t_γ ∘ s_γ, γ the highest short root.
    pub fn affine_reflection(&self) -> AffineElement {
        let n = self.rank;
        let gamma = &self.positive_roots[self.highest_short];
        let row = &self.pairing_rows[self.highest_short];
        // s_γ(x) = x − ⟨x, γ∨⟩ γ
        let mut m = Matrix::identity(n);
        for k in 0..n {
            for j in 0..n {
                m.data[k * n + j] -= gamma[k] * row[j];
            }
        }
        AffineElement {
            translation: gamma.clone(),
            finite: m,
        }
    }

    pub fn translation(&self, lambda: &[i64]) -> AffineElement {
        AffineElement {
            translation: lambda.to_vec(),
            finite: Matrix::identity(self.rank),
        }
    }

    /// ⟨x, α_i∨⟩ for a weight x in simple-root coordinates.
    pub fn simple_pairing(&self, x: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| x[j] * self.cartan[j][i]).sum()
    }

    /// Dominance by coroot pairings: ⟨x, α_i∨⟩ ≥ 0 for all i.
    pub fn is_dominant(&self, x: &[i64]) -> bool {
        (0..self.rank).all(|i| self.simple_pairing(x, i) >= 0)
    }

    /// Dominant representative of the W0-orbit of x.
    pub fn dominant_rep(&self, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                let p = self.simple_pairing(&v, i);
                if p < 0 {
                    for (k, c) in v.iter_mut().enumerate() {
                        if k == i {
                            *c -= p;
                        }
                    }
                    moved = true;
                }
            }
            if !moved {
                return v;
            }
        }
    }

    /// Hyperplane-counting length of (λ, u): for each positive root α the
    /// contribution is |⟨λ, α∨⟩| if u⁻¹(α) > 0 and |⟨λ, α∨⟩ − 1| otherwise.
    /// Finite elements (λ = 0) degenerate to the inversion count.
    pub fn length(&self, w: &AffineElement) -> usize {
        let mut total: i64 = 0;
        for p in 0..self.positive_roots.len() {
            let pairing: i64 = (0..self.rank)
                .map(|j| w.translation[j] * self.pairing_rows[p][j])
                .sum();
            // u⁻¹(α) > 0  ⟺  the functional x ↦ ⟨u(x), α∨⟩ is a positive
            // coroot functional; equivalently row·u has first nonzero
            // entry positive. We avoid inverting u by testing the sign of
            // the image coroot α∨∘u.
            let image: Vec<i64> = (0..self.rank)
                .map(|j| {
                    (0..self.rank)
                        .map(|k| self.pairing_rows[p][k] * w.finite.get(k, j))
                        .sum()
                })
                .collect();
            let positive = is_positive_functional(&image, self);
            let c = if positive {
                pairing.abs()
            } else {
                (pairing - 1).abs()
            };
            total += c;
        }
        total as usize
    }

    /// Apply a node permutation of the simple roots to an element
    /// (diagram automorphism action on W).
    pub fn permute_element(&self, perm: &[usize], w: &AffineElement) -> AffineElement {
        let n = self.rank;
        let mut t = vec![0; n];
        for (i, &pi) in perm.iter().enumerate() {
            t[pi] = w.translation[i];
        }
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[perm[i] * n + perm[j]] = w.finite.get(i, j);
            }
        }
        AffineElement {
            translation: t,
            finite: Matrix { n, data },
        }
    }
}

/// Decide whether the functional x ↦ Σ image_j x_j is a positive or
/// negative coroot functional. Coroot functionals of the form α∨∘u are
/// always ± a positive-coroot row; compare against the table.
fn is_positive_functional(image: &[i64], datum: &RootDatum) -> bool {
    for row in &datum.pairing_rows {
        if row == image {
            return true;
        }
    }
    let neg: Vec<i64> = image.iter().map(|x| -x).collect();
    for row in &datum.pairing_rows {
        if *row == neg {
            return false;
        }
    }
    // Unreachable for genuine group elements.
    panic!("functional is not ± a positive coroot row");
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
