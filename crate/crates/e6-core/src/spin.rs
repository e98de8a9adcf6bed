//! Spin-module weight combinatorics, the Klimyk-style tensor decomposition
//! E_μ ⊗ S over K, spin-lowest K-type extraction, and Dirac-cohomology
//! computation for a module presented by its branching.

use crate::omega::InfChar;
use crate::rat::Rat;
use crate::root_datum::{KTypeWeight, RootDatum};
use crate::vec8::Vec8;
use crate::weyl::{make_dominant, System};
use crate::{E6Error, Engine};
use num::{BigInt, Zero};
use std::collections::{BTreeMap, HashMap};

/// Weight multiset of the spin module S: all 2¹⁶ half-sums ½Σ ε_β β over
/// β ∈ Δ(p⁺), with multiplicities.
pub struct SpinModule {
    pub entries: Vec<(Vec8, u64)>,
}

impl SpinModule {
    pub fn build(datum: &RootDatum) -> SpinModule {
        let half = Rat::new(1, 2);
        let mut acc: HashMap<Vec8, u64> = HashMap::new();
        acc.insert(Vec8::zero(), 1);
        for beta in &datum.noncompact_positive {
            let h = beta.scale(half);
            let mut next: HashMap<Vec8, u64> = HashMap::with_capacity(acc.len() * 2);
            for (w, m) in &acc {
                *next.entry(*w + h).or_insert(0) += m;
                *next.entry(*w - h).or_insert(0) += m;
            }
            acc = next;
        }
        let mut entries: Vec<(Vec8, u64)> = acc.into_iter().collect();
        entries.sort();
        SpinModule { entries }
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

/// Branching data of a module π: K-types with multiplicities, valid up to
/// the recorded height bound.
#[derive(Debug, Clone)]
pub struct BranchList {
    pub ktypes: Vec<(KTypeWeight, u64)>,
    pub height_bound: i64,
    /// Optional provenance: (kgb index, λ ζ-coords, ν ζ-coords).
    pub source_parameter: Option<(u32, [Rat; 6], [Rat; 6])>,
}

/// Dirac-cohomology output: the support set of highest weights and the
/// accumulated multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdResult {
    pub weights: Vec<KTypeWeight>,
    pub with_multiplicity: BTreeMap<KTypeWeight, i64>,
}

impl HdResult {
    pub fn empty() -> HdResult {
        HdResult {
            weights: Vec::new(),
            with_multiplicity: BTreeMap::new(),
        }
    }
}

impl Engine {
    /// Decompose E_μ ⊗ S into K-types by signed dominance accumulation over
    /// the 2¹⁶ spin weights.
    pub fn tensor_with_spin(&self, mu: &KTypeWeight) -> BTreeMap<KTypeWeight, i64> {
        let d = &self.datum;
        let amb = d.ktype_to_ambient(mu);
        let mut acc: BTreeMap<KTypeWeight, i64> = BTreeMap::new();
        'weights: for (w, m) in &self.spin_module.entries {
            let t = amb + *w + d.rho_c;
            let res = make_dominant(d, &t, System::Compact);
            // Singular terms (those on a wall) cancel and contribute nothing.
            for gamma in &d.k_simple_roots {
                if res.vector.dot(gamma).is_zero() {
                    continue 'weights;
                }
            }
            let key = d
                .ambient_to_ktype(&(res.vector - d.rho_c))
                .expect("dominant shift stays in the weight space");
            *acc.entry(key).or_insert(0) += res.det_sign() * (*m as i64);
        }
        acc.retain(|_, c| *c != 0);
        debug_assert!(acc.values().all(|c| *c > 0), "net coefficients must be ≥ 0");
        acc
    }

    /// Total-dimension conservation check value: Σ coeff · dim over the
    /// tensor decomposition (must equal dim(μ)·2¹⁶).
    pub fn tensor_dimension(&self, tensor: &BTreeMap<KTypeWeight, i64>) -> BigInt {
        tensor
            .iter()
            .map(|(k, c)| self.datum.dim_ktype(k).expect("tensor keys are dominant") * c)
            .sum()
    }

    /// All K-types of the branch attaining the module spin norm, with the
    /// attained minimum.
    pub fn spin_lowest(&self, branch: &BranchList) -> Result<(Vec<KTypeWeight>, Rat), E6Error> {
        if branch.ktypes.is_empty() {
            return Err(E6Error::EmptyBranch);
        }
        let mut best: Option<Rat> = None;
        let mut lowest = Vec::new();
        for (mu, _) in &branch.ktypes {
            if !self.datum.is_ktype_weight(mu) {
                return Err(E6Error::InvalidBranchEntry(mu.to_bracket()));
            }
            let n = self.spin_norm(mu).norm_sq;
            match &best {
                Some(b) if n > *b => {}
                Some(b) if n == *b => lowest.push(*mu),
                _ => {
                    best = Some(n);
                    lowest = vec![*mu];
                }
            }
        }
        Ok((lowest, best.expect("branch nonempty")))
    }

    /// Dirac inequality: ‖μ‖²_spin ≥ ‖Λ‖².
    pub fn dirac_inequality_holds(&self, mu: &KTypeWeight, lambda: &InfChar) -> bool {
        self.spin_norm(mu).norm_sq >= lambda.ambient(&self.datum).norm_sq()
    }

    /// Dirac cohomology of a unitary module presented by its branching:
    /// empty unless the module spin norm equals ‖Λ‖²; otherwise tensor each
    /// spin-lowest K-type with S and keep the γ with ‖γ+ρc‖² = ‖Λ‖² whose
    /// full-Weyl dominant conjugate of γ+ρc is Λ.
    pub fn dirac_cohomology(
        &self,
        branch: &BranchList,
        lambda: &InfChar,
    ) -> Result<HdResult, E6Error> {
        let d = &self.datum;
        let (lowest, module_spin_sq) = self.spin_lowest(branch)?;
        let lambda_amb = lambda.ambient(d);
        let target_sq = lambda_amb.norm_sq();
        if module_spin_sq != target_sq {
            return Ok(HdResult::empty());
        }
        let mut with_multiplicity: BTreeMap<KTypeWeight, i64> = BTreeMap::new();
        for mu in &lowest {
            let mult = branch
                .ktypes
                .iter()
                .find(|(k, _)| k == mu)
                .map(|(_, m)| *m)
                .unwrap_or(0) as i64;
            for (gamma, coeff) in self.tensor_with_spin(mu) {
                let v = d.ktype_to_ambient(&gamma) + d.rho_c;
                if v.norm_sq() != target_sq {
                    continue;
                }
                if make_dominant(d, &v, System::Full).vector != lambda_amb {
                    continue;
                }
                *with_multiplicity.entry(gamma).or_insert(0) += mult * coeff;
            }
        }
        with_multiplicity.retain(|_, c| *c != 0);
        Ok(HdResult {
            weights: with_multiplicity.keys().copied().collect(),
            with_multiplicity,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::test_engine;

    fn ex61_branch() -> BranchList {
        BranchList {
            ktypes: vec![
                (KTypeWeight::from_i64([0, 0, 0, 0, 1, -18]), 1),
                (KTypeWeight::from_i64([0, 1, 0, 0, 1, -21]), 1),
                (KTypeWeight::from_i64([0, 0, 0, 0, 2, -24]), 1),
                (KTypeWeight::from_i64([0, 2, 0, 0, 1, -24]), 1),
            ],
            height_bound: 114,
            source_parameter: None,
        }
    }

    fn ex62_branch() -> BranchList {
        BranchList {
            ktypes: vec![
                (KTypeWeight::from_i64([0, 0, 0, 0, 0, -12]), 1),
                (KTypeWeight::from_i64([0, 1, 0, 0, 0, -15]), 1),
                (KTypeWeight::from_i64([0, 2, 0, 0, 0, -18]), 1),
                (KTypeWeight::from_i64([0, 3, 0, 0, 0, -21]), 1),
            ],
            height_bound: 114,
            source_parameter: None,
        }
    }

    #[test]
    fn spin_weight_multiset_shape() {
        let e = test_engine();
        let s = &e.spin_module;
        assert_eq!(s.total_multiplicity(), 1 << 16);
        // Symmetric under negation.
        for (w, m) in &s.entries {
            let neg = s.entries.iter().find(|(v, _)| *v == -*w).map(|(_, n)| *n);
            assert_eq!(neg, Some(*m));
        }
        // Unique maximal weight ρn.
        let max = s.entries.iter().map(|(w, _)| *w).max_by_key(|w| w.dot(&e.datum.rho)).unwrap();
        assert_eq!(max, e.datum.rho_n);
        let mult = s.entries.iter().find(|(w, _)| *w == e.datum.rho_n).unwrap().1;
        assert_eq!(mult, 1);
    }

    #[test]
    fn tensor_conservation_trivial() {
        let e = test_engine();
        let t = e.tensor_with_spin(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]));
        assert_eq!(e.tensor_dimension(&t), BigInt::from(65536));
        // Coefficient of ρn as a K-type is 1.
        let rho_n_k = e.datum.ambient_to_ktype(&e.datum.rho_n).unwrap();
        assert_eq!(t.get(&rho_n_k), Some(&1));
        assert!(t.values().all(|c| *c > 0));
    }

    #[test]
    fn spin_lowest_examples() {
        let e = test_engine();
        let (lowest, min_sq) = e.spin_lowest(&ex61_branch()).unwrap();
        assert_eq!(min_sq, int(42));
        assert_eq!(
            lowest,
            vec![
                KTypeWeight::from_i64([0, 0, 0, 0, 1, -18]),
                KTypeWeight::from_i64([0, 1, 0, 0, 1, -21]),
                KTypeWeight::from_i64([0, 2, 0, 0, 1, -24]),
            ]
        );
        let (lowest, min_sq) = e.spin_lowest(&ex62_branch()).unwrap();
        assert_eq!(min_sq, int(42));
        assert_eq!(lowest.len(), 4);

        let empty = BranchList {
            ktypes: vec![],
            height_bound: 0,
            source_parameter: None,
        };
        assert!(matches!(e.spin_lowest(&empty), Err(E6Error::EmptyBranch)));
    }

    #[test]
    fn hd_example_61() {
        let e = test_engine();
        let hd = e
            .dirac_cohomology(&ex61_branch(), &InfChar([1, 1, 1, 0, 1, 1]))
            .unwrap();
        let expect: Vec<KTypeWeight> = [
            [0, 0, 0, 0, 0, -12],
            [0, 0, 0, 0, 1, 6],
            [0, 0, 0, 0, 1, -6],
            [1, 0, 0, 0, 0, 3],
            [0, 1, 0, 0, 0, -3],
        ]
        .into_iter()
        .map(KTypeWeight::from_i64)
        .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(hd.weights, expect_sorted);
    }

    #[test]
    fn hd_example_62() {
        let e = test_engine();
        let hd = e
            .dirac_cohomology(&ex62_branch(), &InfChar([1, 1, 1, 0, 1, 1]))
            .unwrap();
        let mut expect: Vec<KTypeWeight> = [
            [0, 0, 0, 0, 0, -12],
            [0, 0, 0, 0, 0, 12],
            [0, 0, 0, 0, 1, 6],
            [0, 0, 0, 0, 1, -6],
            [1, 0, 0, 0, 0, 3],
            [0, 1, 0, 0, 0, -3],
        ]
        .into_iter()
        .map(KTypeWeight::from_i64)
        .collect();
        expect.sort();
        assert_eq!(hd.weights, expect);
        // Symmetry in the ±12 / ±6 pairs.
        for coords in [[0, 0, 0, 0, 0, 12], [0, 0, 0, 0, 1, 6]] {
            let mut neg = coords;
            neg[5] = -neg[5];
            assert!(hd.weights.contains(&KTypeWeight::from_i64(coords)));
            assert!(hd.weights.contains(&KTypeWeight::from_i64(neg)));
        }
    }

    #[test]
    fn hd_trivial_representation() {
        let e = test_engine();
        let branch = BranchList {
            ktypes: vec![(KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]), 1)],
            height_bound: 0,
            source_parameter: None,
        };
        let hd = e
            .dirac_cohomology(&branch, &InfChar([1, 1, 1, 1, 1, 1]))
            .unwrap();
        assert!(!hd.weights.is_empty());
        let d = &e.datum;
        for g in &hd.weights {
            let v = d.ktype_to_ambient(g) + d.rho_c;
            assert_eq!(v.norm_sq(), int(78));
            assert_eq!(make_dominant(d, &v, System::Full).vector, d.rho);
        }
        // Strict inequality ⇒ vanishing.
        let hd = e
            .dirac_cohomology(&branch, &InfChar([0, 1, 1, 0, 1, 0]))
            .unwrap();
        assert!(hd.weights.is_empty());
    }

    #[test]
    fn dirac_inequality_examples() {
        let e = test_engine();
        assert!(e.dirac_inequality_holds(
            &KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]),
            &InfChar([1, 1, 1, 1, 1, 1])
        ));
        assert!(e.dirac_inequality_holds(
            &KTypeWeight::from_i64([0, 0, 0, 0, 1, -18]),
            &InfChar([1, 1, 1, 0, 1, 1])
        ));
    }
}
