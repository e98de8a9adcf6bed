//! The E6(-14) root datum in its 8-coordinate ambient realization, together
//! with all the coordinate systems used downstream: ζ-coordinates
//! (fundamental-weight basis of g) and the K-basis {ϖ1..ϖ5, ¼ζ}.

use crate::linalg;
use crate::rat::{int, is_integer, parse_rat, rat, Rat};
use crate::vec8::Vec8;
use crate::E6Error;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Highest-weight coordinates `[a,b,c,d,e,f]` in the K-basis
/// {ϖ1,...,ϖ5, ¼ζ}: the vector a·ϖ1 + b·ϖ2 + c·ϖ3 + d·ϖ4 + e·ϖ5 + (f/4)·ζ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTypeWeight(pub [Rat; 6]);

impl KTypeWeight {
    pub fn from_i64(v: [i64; 6]) -> Self {
        KTypeWeight(v.map(Rat::from_integer))
    }

    /// Bracketed 6-tuple matching the notation `[a, b, c, d, e, f]`.
    pub fn to_bracket(&self) -> String {
        let inner = self
            .0
            .iter()
            .map(crate::rat::format_rat)
            .collect::<Vec<_>>()
            .join(",");
        format!("[{inner}]")
    }

    pub fn parse_bracket(s: &str) -> Option<Self> {
        let s = s.trim();
        let s = s.strip_prefix('[')?.strip_suffix(']')?;
        let parts: Vec<Rat> = s.split(',').map(parse_rat).collect::<Option<Vec<_>>>()?;
        let arr: [Rat; 6] = parts.try_into().ok()?;
        Some(KTypeWeight(arr))
    }
}

impl fmt::Debug for KTypeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bracket())
    }
}

/// The immutable E6(-14) root datum. Built once; every operation is a pure
/// function of its inputs.
pub struct RootDatum {
    /// α1..α6 (Bourbaki numbering; α2 is the branch node).
    pub simple_roots: [Vec8; 6],
    pub all_roots: Vec<Vec8>,
    pub positive_roots: Vec<Vec8>,
    pub compact_positive: Vec<Vec8>,
    /// Δ(p⁺): the 16 noncompact positive roots.
    pub noncompact_positive: Vec<Vec8>,
    /// ζ1..ζ6: fundamental weights of g, ⟨ζ_i, α_j∨⟩ = δ_ij.
    pub fundamental_weights: [Vec8; 6],
    /// γ1..γ5 = α2..α6: simple roots of k = so(10) ⊕ u(1).
    pub k_simple_roots: [Vec8; 5],
    /// ϖ1..ϖ5: fundamental weights of k extended by zero on the ζ-line.
    pub k_fundamental_weights: [Vec8; 5],
    pub rho: Vec8,
    pub rho_c: Vec8,
    pub rho_n: Vec8,
    /// ζ = ζ1, spanning the center of k.
    pub zeta: Vec8,
    root_set: BTreeSet<Vec8>,
}

/// Build the fixed datum. Construction failures are implementation bugs and
/// panic.
pub fn build_e6_datum() -> RootDatum {
    RootDatum::build()
}

impl RootDatum {
    pub fn build() -> RootDatum {
        let a1 = Vec8::from_scaled([1, -1, -1, -1, -1, -1, -1, 1], 2);
        let a2 = Vec8::from_i64([1, 1, 0, 0, 0, 0, 0, 0]);
        let a3 = Vec8::from_i64([-1, 1, 0, 0, 0, 0, 0, 0]);
        let a4 = Vec8::from_i64([0, -1, 1, 0, 0, 0, 0, 0]);
        let a5 = Vec8::from_i64([0, 0, -1, 1, 0, 0, 0, 0]);
        let a6 = Vec8::from_i64([0, 0, 0, -1, 1, 0, 0, 0]);
        let simple_roots = [a1, a2, a3, a4, a5, a6];

        // Close under root addition: in the simply-laced case α+β is a root
        // iff B(α,β) = −1 for non-proportional roots α, β.
        let mut roots: BTreeSet<Vec8> = simple_roots
            .iter()
            .flat_map(|&a| [a, -a])
            .collect();
        loop {
            let mut new = Vec::new();
            for a in &roots {
                for b in &roots {
                    if a.dot(b) == int(-1) {
                        let s = *a + *b;
                        if !roots.contains(&s) {
                            new.push(s);
                        }
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            roots.extend(new);
        }
        assert_eq!(roots.len(), 72, "root closure must have 72 elements");
        assert!(roots.iter().all(|r| r.norm_sq() == int(2)));

        // Fundamental weights: ζ_i = Σ_j (C^{-1})_{ji} α_j inside span(α).
        let cartan: Vec<Vec<Rat>> = (0..6)
            .map(|i| (0..6).map(|j| simple_roots[i].dot(&simple_roots[j])).collect())
            .collect();
        let cinv = linalg::invert(&cartan).expect("Cartan matrix is invertible");
        let mut fundamental_weights = [Vec8::zero(); 6];
        for i in 0..6 {
            let mut z = Vec8::zero();
            for j in 0..6 {
                z += cinv[j][i] * simple_roots[j];
            }
            fundamental_weights[i] = z;
        }
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { int(1) } else { int(0) };
                assert_eq!(fundamental_weights[i].dot(&simple_roots[j]), expect);
            }
        }
        let zeta = fundamental_weights[0];
        assert_eq!(
            zeta,
            Vec8::from_scaled([0, 0, 0, 0, 0, -2, -2, 2], 3),
            "ζ = ζ1 must match its published coordinates"
        );

        // A root is positive iff its simple-root coefficients are ≥ 0;
        // equivalently B(·, ζ_1 + … + ζ_6) > 0 works for E6, but the
        // coefficient test is the definition.
        let rho_candidate: Vec8 = {
            let mut s = Vec8::zero();
            for z in &fundamental_weights {
                s += *z;
            }
            s
        };
        let positive_roots: Vec<Vec8> = roots
            .iter()
            .copied()
            .filter(|r| r.dot(&rho_candidate).is_positive())
            .collect();
        assert_eq!(positive_roots.len(), 36);

        let compact_positive: Vec<Vec8> = positive_roots
            .iter()
            .copied()
            .filter(|r| r.dot(&zeta).is_zero())
            .collect();
        let noncompact_positive: Vec<Vec8> = positive_roots
            .iter()
            .copied()
            .filter(|r| !r.dot(&zeta).is_zero())
            .collect();
        assert_eq!(compact_positive.len(), 20);
        assert_eq!(noncompact_positive.len(), 16);
        assert!(
            noncompact_positive.iter().all(|r| r.dot(&zeta).is_positive()),
            "Δ(p⁺) must pair positively with ζ"
        );

        let half = rat(1, 2);
        let rho = positive_roots
            .iter()
            .fold(Vec8::zero(), |acc, r| acc + *r)
            .scale(half);
        let rho_c = compact_positive
            .iter()
            .fold(Vec8::zero(), |acc, r| acc + *r)
            .scale(half);
        let rho_n = rho - rho_c;
        assert_eq!(rho, Vec8::from_i64([0, 1, 2, 3, 4, -4, -4, 4]));
        assert_eq!(rho_c, Vec8::from_i64([0, 1, 2, 3, 4, 0, 0, 0]));
        assert_eq!(rho, rho_candidate, "ρ = Σ ζ_i");

        let k_simple_roots = [a2, a3, a4, a5, a6];
        // ϖ_i via the ζ-basis identity: the K-basis vector with a single 1
        // in slot i embeds as a fixed linear combination of ζ's.
        let z = &fundamental_weights;
        let k_fundamental_weights = [
            z[1] - zeta.scale(rat(3, 4)),
            z[2] - zeta.scale(rat(5, 4)),
            z[3] - zeta.scale(rat(3, 2)),
            z[4] - zeta.scale(int(1)),
            z[5] - zeta.scale(rat(1, 2)),
        ];
        for (i, w) in k_fundamental_weights.iter().enumerate() {
            assert!(w.dot(&zeta).is_zero(), "ϖ_{} ⊥ ζ", i + 1);
            for (j, g) in k_simple_roots.iter().enumerate() {
                let expect = if i == j { int(1) } else { int(0) };
                assert_eq!(w.dot(g), expect, "⟨ϖ_{}, γ_{}∨⟩", i + 1, j + 1);
            }
        }

        RootDatum {
            simple_roots,
            all_roots: roots.iter().copied().collect(),
            positive_roots,
            compact_positive,
            noncompact_positive,
            fundamental_weights,
            k_simple_roots,
            k_fundamental_weights,
            rho,
            rho_c,
            rho_n,
            zeta,
            root_set: roots,
        }
    }

    pub fn is_root(&self, v: &Vec8) -> bool {
        self.root_set.contains(v)
    }

    /// A root is compact iff it pairs to zero with ζ.
    pub fn is_compact_root(&self, alpha: &Vec8) -> bool {
        alpha.dot(&self.zeta).is_zero()
    }

    /// ⟨v, α∨⟩ = 2B(v,α)/B(α,α) = B(v,α) (simply laced).
    pub fn coroot_pairing(&self, v: &Vec8, alpha: &Vec8) -> Result<Rat, E6Error> {
        if !self.is_root(alpha) {
            return Err(E6Error::NotARoot);
        }
        Ok(v.dot(alpha))
    }

    /// Embed K-basis coordinates into the ambient space via the ζ-basis
    /// identity
    /// a·ϖ1+…+e·ϖ5+(f/4)·ζ
    ///   = (−3a/4 −5b/4 −3c/2 −d −e/2 + f/4)·ζ1 + a·ζ2 + b·ζ3 + c·ζ4 + d·ζ5 + e·ζ6.
    pub fn ktype_to_ambient(&self, mu: &KTypeWeight) -> Vec8 {
        let [a, b, c, d, e, f] = mu.0;
        let z = &self.fundamental_weights;
        let z1_coeff = -a * rat(3, 4) - b * rat(5, 4) - c * rat(3, 2) - d - e * rat(1, 2)
            + f * rat(1, 4);
        z[0].scale(z1_coeff)
            + z[1].scale(a)
            + z[2].scale(b)
            + z[3].scale(c)
            + z[4].scale(d)
            + z[5].scale(e)
    }

    /// Express a vector of the root span in the ζ-basis (n_i = ⟨v, α_i∨⟩).
    /// Errors when `v` is not in the span of the roots.
    pub fn zeta_coords(&self, v: &Vec8) -> Result<[Rat; 6], E6Error> {
        let n: [Rat; 6] = std::array::from_fn(|i| v.dot(&self.simple_roots[i]));
        let mut rebuilt = Vec8::zero();
        for i in 0..6 {
            rebuilt += n[i] * self.fundamental_weights[i];
        }
        if rebuilt == *v {
            Ok(n)
        } else {
            Err(E6Error::NotInWeightSpace)
        }
    }

    /// Inverse of `ktype_to_ambient` on the root span.
    pub fn ambient_to_ktype(&self, v: &Vec8) -> Result<KTypeWeight, E6Error> {
        let n = self.zeta_coords(v)?;
        let [n1, a, b, c, d, e] = n;
        let f = int(4) * n1 + int(3) * a + int(5) * b + int(6) * c + int(4) * d + int(2) * e;
        Ok(KTypeWeight([a, b, c, d, e, f]))
    }

    /// Eq.-style K(ℝ)-type test: a..e ∈ ℤ≥0, f ∈ ℤ and the parity expression
    /// −(3/4)a −(5/4)b −(3/2)c −d −(1/2)e +(1/4)f is an integer.
    pub fn is_ktype_weight(&self, mu: &KTypeWeight) -> bool {
        let [a, b, c, d, e, f] = mu.0;
        let dominant_integral = [a, b, c, d, e]
            .iter()
            .all(|x| is_integer(x) && !x.is_negative());
        if !dominant_integral || !is_integer(&f) {
            return false;
        }
        let expr = -a * rat(3, 4) - b * rat(5, 4) - c * rat(3, 2) - d - e * rat(1, 2)
            + f * rat(1, 4);
        is_integer(&expr)
    }

    /// Weyl dimension formula over Δ⁺(k,t_f); the ζ-component of μ does not
    /// affect the product.
    pub fn dim_ktype(&self, mu: &KTypeWeight) -> Result<BigInt, E6Error> {
        let [a, b, c, d, e, _] = mu.0;
        if [a, b, c, d, e]
            .iter()
            .any(|x| !is_integer(x) || x.is_negative())
        {
            return Err(E6Error::NotDominant);
        }
        let v = self.ktype_to_ambient(mu) + self.rho_c;
        let mut prod = BigRational::one();
        for alpha in &self.compact_positive {
            let num = v.dot(alpha);
            let den = self.rho_c.dot(alpha);
            let factor = BigRational::new(BigInt::from(*num.numer()), BigInt::from(*num.denom()))
                / BigRational::new(BigInt::from(*den.numer()), BigInt::from(*den.denom()));
            prod *= factor;
        }
        assert!(prod.is_integer(), "Weyl dimension must be an integer");
        Ok(prod.to_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum() -> RootDatum {
        RootDatum::build()
    }

    #[test]
    fn published_constants() {
        let d = datum();
        assert_eq!(d.all_roots.len(), 72);
        assert_eq!(d.positive_roots.len(), 36);
        assert_eq!(d.noncompact_positive.len(), 16);
        assert_eq!(d.compact_positive.len(), 20);
        assert_eq!(d.rho, Vec8::from_i64([0, 1, 2, 3, 4, -4, -4, 4]));
        assert_eq!(d.rho_c, Vec8::from_i64([0, 1, 2, 3, 4, 0, 0, 0]));
        assert_eq!(d.rho.norm_sq(), int(78));
        assert_eq!(d.rho_c.norm_sq(), int(30));
        assert_eq!(d.rho_n, d.rho - d.rho_c);
    }

    #[test]
    fn negation_pairs_positives_with_negatives() {
        let d = datum();
        for r in &d.positive_roots {
            assert!(d.is_root(&-*r));
            assert!(!d.positive_roots.contains(&-*r));
        }
        assert_eq!(d.positive_roots.len() * 2, d.all_roots.len());
    }

    #[test]
    fn compact_split_by_zeta_pairing() {
        let d = datum();
        for r in &d.compact_positive {
            assert!(r.dot(&d.zeta).is_zero());
        }
        for r in &d.noncompact_positive {
            assert!(r.dot(&d.zeta).is_positive());
        }
    }

    #[test]
    fn coroot_pairing_examples() {
        let d = datum();
        assert_eq!(d.coroot_pairing(&d.rho, &d.simple_roots[0]).unwrap(), int(1));
        assert_eq!(
            d.coroot_pairing(&d.fundamental_weights[0], &d.simple_roots[1])
                .unwrap(),
            int(0)
        );
        assert!(d.coroot_pairing(&d.rho, &d.rho).is_err());
    }

    #[test]
    fn beta_is_highest_noncompact() {
        let d = datum();
        let beta = d.ktype_to_ambient(&KTypeWeight::from_i64([1, 0, 0, 0, 0, 3]));
        assert_eq!(beta, Vec8::from_scaled([1, 1, 1, 1, 1, -1, -1, 1], 2));
        assert!(d.noncompact_positive.contains(&beta));
        // Highest: every other noncompact positive is beta minus positives.
        for r in &d.noncompact_positive {
            assert!(!(beta - *r).dot(&d.rho).is_negative());
        }
    }

    #[test]
    fn ktype_round_trip_and_examples() {
        let d = datum();
        let zero = KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]);
        assert!(d.ktype_to_ambient(&zero).is_zero());

        // [0,0,0,0,0,−12] = −3ζ in ζ-coordinates.
        let w = KTypeWeight::from_i64([0, 0, 0, 0, 0, -12]);
        let amb = d.ktype_to_ambient(&w);
        assert_eq!(
            d.zeta_coords(&amb).unwrap(),
            [int(-3), int(0), int(0), int(0), int(0), int(0)]
        );

        for coords in [
            [1, 0, 0, 0, 0, 3],
            [0, 0, 0, 0, 1, -18],
            [0, 2, 0, 0, 1, -24],
            [5, 4, 3, 2, 1, 10],
        ] {
            let mu = KTypeWeight::from_i64(coords);
            let amb = d.ktype_to_ambient(&mu);
            assert_eq!(d.ambient_to_ktype(&amb).unwrap(), mu);
        }

        // Not in the root span: a vector with nonzero component along the
        // fixed complement.
        let outside = Vec8::from_i64([0, 0, 0, 0, 0, 1, 0, 0]);
        assert!(matches!(
            d.zeta_coords(&outside),
            Err(E6Error::NotInWeightSpace)
        ));
    }

    #[test]
    fn ktype_weight_test_examples() {
        let d = datum();
        assert!(d.is_ktype_weight(&KTypeWeight::from_i64([1, 0, 0, 0, 0, 3])));
        assert!(d.is_ktype_weight(&KTypeWeight::from_i64([0, 0, 0, 0, 1, -18])));
        assert!(!d.is_ktype_weight(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 1])));
        assert!(!d.is_ktype_weight(&KTypeWeight::from_i64([-1, 0, 0, 0, 0, 3])));
        assert!(!d.is_ktype_weight(&KTypeWeight([rat(1, 2); 6])));
    }

    #[test]
    fn dim_examples() {
        let d = datum();
        let cases = [
            ([0, 0, 0, 0, 1, -18], 10i64),
            ([0, 2, 0, 0, 1, -24], 1050),
            ([0, 3, 0, 0, 0, -21], 672),
            ([0, 0, 0, 0, 0, 0], 1),
        ];
        for (coords, expect) in cases {
            let mu = KTypeWeight::from_i64(coords);
            assert_eq!(d.dim_ktype(&mu).unwrap(), BigInt::from(expect));
        }
        // Independent of the central coordinate.
        assert_eq!(
            d.dim_ktype(&KTypeWeight::from_i64([0, 0, 0, 0, 1, -18]))
                .unwrap(),
            d.dim_ktype(&KTypeWeight::from_i64([0, 0, 0, 0, 1, 2])).unwrap()
        );
    }

    #[test]
    fn bracket_round_trip() {
        let mu = KTypeWeight::from_i64([0, 2, 0, 0, 1, -24]);
        assert_eq!(mu.to_bracket(), "[0,2,0,0,1,-24]");
        assert_eq!(KTypeWeight::parse_bracket("[0, 2, 0, 0, 1, -24]"), Some(mu));
        assert_eq!(KTypeWeight::parse_bracket("[1,2]"), None);
    }
}
