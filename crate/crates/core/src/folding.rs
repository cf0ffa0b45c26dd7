//! Folding a simply-laced datum along a diagram automorphism: the fixed
//! subgroup with generators the longest elements of orbit parabolics,
//! weighted by their ambient lengths.

use std::sync::Arc;

use crate::coxeter::CoxeterDatum;
use crate::error::{Error, Result};
use crate::weyl::{AffineElement, RootDatum};

/// A permutation of the diagram nodes. Node 0 is the affine node for an
/// affine datum; for a finite datum the nodes are the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    pub node_perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(num_nodes: usize) -> DiagramAutomorphism {
        DiagramAutomorphism {
            node_perm: (0..num_nodes).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<DiagramAutomorphism> {
        let node_perm: Vec<usize> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<_>>()?;
        let mut seen = vec![false; node_perm.len()];
        for &i in &node_perm {
            if i >= node_perm.len() || seen[i] {
                return Err(Error::Config(format!("{s:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(DiagramAutomorphism { node_perm })
    }

    pub fn order(&self) -> usize {
        let mut order = 1;
        let mut cur: Vec<usize> = self.node_perm.clone();
        let id: Vec<usize> = (0..self.node_perm.len()).collect();
        while cur != id {
            cur = cur.iter().map(|&i| self.node_perm[i]).collect();
            order += 1;
            if order > self.node_perm.len() + 1 {
                break;
            }
        }
        order
    }

    pub fn is_identity(&self) -> bool {
        self.node_perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Restriction to the simple roots: drops the affine node for an
    /// affine datum (node 0 must then be fixed).
    fn simple_perm(&self, datum: &RootDatum) -> Result<Vec<usize>> {
        if datum.spec.affine {
            if self.node_perm.len() != datum.rank + 1 {
                return Err(Error::InvalidAutomorphism(format!(
                    "permutation has {} nodes, datum has {}",
                    self.node_perm.len(),
                    datum.rank + 1
                )));
            }
            if self.node_perm[0] != 0 {
                return Err(Error::InvalidAutomorphism(
                    "automorphism must fix the affine node s0".into(),
                ));
            }
            Ok(self.node_perm[1..].iter().map(|&i| i - 1).collect())
        } else {
            if self.node_perm.len() != datum.rank {
                return Err(Error::InvalidAutomorphism(format!(
                    "permutation has {} nodes, datum has rank {}",
                    self.node_perm.len(),
                    datum.rank
                )));
            }
            Ok(self.node_perm.clone())
        }
    }
}

/// Result of folding: one generator per σ-orbit of diagram nodes, with
/// weight the ambient length of that generator.
pub struct FoldedDatum {
    /// Orbits in node numbering, each sorted, ordered by smallest node.
    pub orbits: Vec<Vec<usize>>,
    pub group: CoxeterDatum,
    /// Simple-root permutation realizing σ on the ambient group.
    simple_perm: Vec<usize>,
}

impl FoldedDatum {
    pub fn weights(&self) -> &[u64] {
        &self.group.weights
    }

    /// σ applied to an ambient element (relabeling of root coordinates).
    pub fn apply_sigma(&self, w: &AffineElement) -> AffineElement {
        self.group.datum.permute_element(&self.simple_perm, w)
    }

    /// Membership in 'W = {w : σ(w) = w}.
    pub fn is_fixed(&self, w: &AffineElement) -> bool {
        self.apply_sigma(w) == *w
    }
}

/// Fold `datum` along `sigma`. The generators of the fixed subgroup are
/// the longest elements of the parabolics generated by each node orbit,
/// found by brute-force search inside the (tiny) parabolic.
pub fn fold(datum: Arc<RootDatum>, sigma: &DiagramAutomorphism) -> Result<FoldedDatum> {
    let simple_perm = sigma.simple_perm(&datum)?;
    let order = sigma.order();
    if !sigma.is_identity() && !matches!(order, 2 | 3) {
        return Err(Error::InvalidAutomorphism(format!(
            "automorphism order {order} not in {{2, 3}}"
        )));
    }
    // Simply-laced requirement for nontrivial folding.
    if !sigma.is_identity() {
        let laced = datum
            .cartan
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &c)| i == j || c == 0 || c == -1));
        if !laced {
            return Err(Error::InvalidAutomorphism(
                "nontrivial folding requires a simply-laced datum".into(),
            ));
        }
    }
    // σ must preserve the Cartan matrix.
    for i in 0..datum.rank {
        for j in 0..datum.rank {
            if datum.cartan[i][j] != datum.cartan[simple_perm[i]][simple_perm[j]] {
                return Err(Error::InvalidAutomorphism(
                    "permutation does not preserve the Cartan matrix".into(),
                ));
            }
        }
    }

    // Node orbits.
    let num_nodes = sigma.node_perm.len();
    let mut seen = vec![false; num_nodes];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..num_nodes {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![];
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            orbit.push(cur);
            cur = sigma.node_perm[cur];
        }
        orbit.sort();
        orbits.push(orbit);
    }

    // Base generators of the ambient group indexed by node number.
    let base = CoxeterDatum::standard(datum.clone(), None)?;

    let mut generators = Vec::new();
    let mut weights = Vec::new();
    let mut special = None;
    for (k, orbit) in orbits.iter().enumerate() {
        if datum.spec.affine && orbit.contains(&0) {
            special = Some(k);
        }
        let gen_indices: Vec<usize> = orbit.clone();
        // Longest element of the orbit parabolic by exhaustive search.
        let parabolic = base.enumerate_parabolic(&gen_indices)?;
        let s_orbit = parabolic
            .iter()
            .max_by_key(|e| (base.ambient_length(e), (*e).clone()))
            .unwrap()
            .clone();
        // s_orbit must be a σ-fixed involution.
        if !s_orbit.mult(&s_orbit).is_identity() {
            return Err(Error::InvalidAutomorphism(format!(
                "longest element of orbit {orbit:?} is not an involution"
            )));
        }
        let fixed = datum.permute_element(&simple_perm, &s_orbit);
        if fixed != s_orbit {
            return Err(Error::InvalidAutomorphism(format!(
                "longest element of orbit {orbit:?} is not σ-fixed"
            )));
        }
        weights.push(base.ambient_length(&s_orbit) as u64);
        generators.push(s_orbit);
    }

    let group = CoxeterDatum::assemble(datum, generators, weights, special)?;
    Ok(FoldedDatum {
        orbits,
        group,
        simple_perm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::DatumSpec;

    fn datum(s: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::build(DatumSpec::parse(s).unwrap()).unwrap())
    }

    #[test]
    fn fold_affine_a2_gives_weights_1_3() {
        let d = datum("A2~");
        let sigma = DiagramAutomorphism::parse("0,2,1").unwrap();
        let f = fold(d, &sigma).unwrap();
        assert_eq!(f.orbits, vec![vec![0], vec![1, 2]]);
        assert_eq!(f.weights(), &[1, 3]);
        // Folded type is affine A1: infinite braid order between the two
        // generators, encoded as 0.
        assert_eq!(f.group.coxeter_matrix[0][1], 0);
        assert_eq!(f.group.special, Some(0));
    }

    #[test]
    fn fold_finite_a3_gives_b2() {
        let d = datum("A3");
        let sigma = DiagramAutomorphism::parse("2,1,0").unwrap();
        let f = fold(d, &sigma).unwrap();
        // Orbit {0,2} commuting: weight 2; fixed middle node: weight 1.
        assert_eq!(f.orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!(f.weights(), &[2, 1]);
        // B2 = dihedral of order 8: braid order 4.
        assert_eq!(f.group.coxeter_matrix[0][1], 4);
        assert_eq!(f.group.enumerate_to_length(4).len(), 8);
    }

    #[test]
    fn identity_fold_is_trivial() {
        let d = datum("A2~");
        let sigma = DiagramAutomorphism::identity(3);
        let f = fold(d.clone(), &sigma).unwrap();
        assert_eq!(f.weights(), &[1, 1, 1]);
        let plain = CoxeterDatum::standard(d, None).unwrap();
        assert_eq!(f.group.generators, plain.generators);
    }

    #[test]
    fn sigma_fixed_membership() {
        let d = datum("A2~");
        let sigma = DiagramAutomorphism::parse("0,2,1").unwrap();
        let f = fold(d.clone(), &sigma).unwrap();
        let base = CoxeterDatum::standard(d, None).unwrap();
        let s1 = base.generators[1].clone();
        let s2 = base.generators[2].clone();
        assert!(f.is_fixed(&base.identity()));
        assert!(!f.is_fixed(&s1));
        assert!(f.is_fixed(&s1.mult(&s2).mult(&s1)));
    }

    #[test]
    fn invalid_automorphisms_rejected() {
        let d = datum("A2~");
        // moves the affine node
        assert!(fold(d.clone(), &DiagramAutomorphism::parse("1,0,2").unwrap()).is_err());
        // not a permutation
        assert!(DiagramAutomorphism::parse("0,1,1").is_err());
        // breaks the Cartan matrix (B2 is not simply laced)
        let b = datum("B2");
        assert!(fold(b, &DiagramAutomorphism::parse("1,0").unwrap()).is_err());
    }

    #[test]
    fn folded_length_is_ambient_length() {
        // L on 'W is the restriction of the ambient length function:
        // random reduced words in the folded generators.
        let d = datum("A2~");
        let sigma = DiagramAutomorphism::parse("0,2,1").unwrap();
        let f = fold(d, &sigma).unwrap();
        for w in f.group.enumerate_to_length(5) {
            assert_eq!(f.group.weight_len(&w), f.group.ambient_length(&w) as u64);
            assert!(f.is_fixed(&w));
        }
    }

    #[test]
    fn d4_triality_folds_to_g2_shape() {
        let d = datum("D4");
        // Bourbaki D4: center node is index 1 here? Our D4 chain:
        // 0-1-2 with 3 attached to 1 (chain(n-3, n-1)).
        let sigma = DiagramAutomorphism::parse("2,1,3,0").unwrap();
        let f = fold(d, &sigma).unwrap();
        assert_eq!(f.weights().len(), 2);
        let mut w = f.weights().to_vec();
        w.sort();
        assert_eq!(w, vec![1, 3]);
        // G2 braid order 6.
        let m = f.group.coxeter_matrix[0][1];
        assert_eq!(m, 6);
    }
}
