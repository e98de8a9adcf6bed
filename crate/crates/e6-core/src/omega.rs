//! Candidate infinitesimal-character screening: strong regularity, the
//! ν-vector and quadratic form of an ingested Cartan involution, the finite
//! candidate sets Ω and Ω₂ with their minimal elements, and the partition
//! Ω = Ω₁ ⊔ Ω₂ ⊔ Ω₃.

use crate::rat::{int, is_integer, Rat};
use crate::root_datum::KTypeWeight;
use crate::vec8::Vec8;
use crate::weyl::{make_dominant, System, WeylElement};
use crate::{E6Error, Engine};
use num::Signed;
use std::collections::{BTreeSet, HashMap};

/// A dominant integral infinitesimal character Λ = Σ n_i ζ_i with
/// nonnegative integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfChar(pub [i64; 6]);

impl InfChar {
    pub fn ambient(&self, datum: &crate::root_datum::RootDatum) -> Vec8 {
        let mut v = Vec8::zero();
        for (n, z) in self.0.iter().zip(datum.fundamental_weights.iter()) {
            v += z.scale(int(*n));
        }
        v
    }

    /// Strongly regular iff Λ−ρ is dominant, i.e. every coordinate ≥ 1.
    pub fn is_strongly_regular(&self) -> bool {
        self.0.iter().all(|&n| n >= 1)
    }

    /// Coordinates all in {0,1}.
    pub fn conjecture_check(&self) -> bool {
        self.0.iter().all(|&n| n == 0 || n == 1)
    }

    /// Coordinatewise partial order Λ0 ⪯ Λ1.
    pub fn dominated_by(&self, other: &InfChar) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn to_bracket(&self) -> String {
        let inner = self
            .0
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("[{inner}]")
    }

    pub fn parse_bracket(s: &str) -> Option<InfChar> {
        let s = s.trim().strip_prefix('[')?.strip_suffix(']')?;
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().ok())
            .collect::<Option<Vec<_>>>()?;
        let arr: [i64; 6] = parts.try_into().ok()?;
        Some(InfChar(arr))
    }
}

impl std::fmt::Debug for InfChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_bracket())
    }
}

/// An ingested Cartan involution θ_x with its KGB index and support.
#[derive(Clone, Debug)]
pub struct Involution {
    pub kgb_index: u32,
    pub support: BTreeSet<usize>,
    pub matrix: WeylElement,
}

impl Involution {
    /// Validate the record: θ² = id, B-orthogonality, root permutation, and
    /// the support field matching the computed support of the Weyl element.
    pub fn validate(&self, engine: &Engine) -> Result<(), E6Error> {
        let bad = |msg: &str| E6Error::BadInvolution(self.kgb_index, msg.to_string());
        if !self.matrix.compose(&self.matrix).is_identity() {
            return Err(bad("matrix squared is not the identity"));
        }
        if self.matrix.inverse() != self.matrix {
            return Err(bad("matrix is not B-orthogonal"));
        }
        for r in &engine.datum.all_roots {
            if !engine.datum.is_root(&self.matrix.apply(r)) {
                return Err(bad("matrix does not permute the roots"));
            }
        }
        let computed = weyl_support(&engine.datum, &self.matrix);
        if computed != self.support {
            return Err(bad("support field disagrees with the matrix"));
        }
        Ok(())
    }

    pub fn is_fully_supported(&self) -> bool {
        self.support.len() == 6
    }
}

/// Support of a Weyl element: the set of simple-reflection indices occurring
/// in any reduced word (extracted by repeatedly stripping right descents).
pub fn weyl_support(d: &crate::root_datum::RootDatum, w: &WeylElement) -> BTreeSet<usize> {
    let mut cur = *w;
    let mut support = BTreeSet::new();
    loop {
        // Right descent: w·α_i < 0.
        let descent = (0..6).find(|&i| {
            let img = cur.apply(&d.simple_roots[i]);
            img.dot(&d.rho).is_negative()
        });
        match descent {
            None => {
                assert!(cur.is_identity(), "descent-free element must be e");
                return support;
            }
            Some(i) => {
                support.insert(i);
                cur = cur.compose(&WeylElement::reflection(&d.simple_roots[i]));
            }
        }
    }
}

impl Engine {
    /// ν = (Λ − θΛ)/2.
    pub fn nu_of(&self, lambda: &InfChar, theta: &Involution) -> Vec8 {
        let amb = lambda.ambient(&self.datum);
        (amb - theta.matrix.apply(&amb)).scale(Rat::new(1, 2))
    }

    /// ½(1+θ)λ + ν, dominantized and converted to ζ-coordinates.
    pub fn infchar_from_parameter(
        &self,
        theta: &Involution,
        lambda_zeta: &[Rat; 6],
        nu_zeta: &[Rat; 6],
    ) -> Result<InfChar, E6Error> {
        let d = &self.datum;
        let mut lam = Vec8::zero();
        let mut nu = Vec8::zero();
        for i in 0..6 {
            lam += d.fundamental_weights[i].scale(lambda_zeta[i]);
            nu += d.fundamental_weights[i].scale(nu_zeta[i]);
        }
        let gamma = (lam + theta.matrix.apply(&lam)).scale(Rat::new(1, 2)) + nu;
        let dom = make_dominant(d, &gamma, System::Full).vector;
        let coords = d
            .zeta_coords(&dom)
            .map_err(|_| E6Error::NonIntegralInfChar)?;
        let mut out = [0i64; 6];
        for (slot, c) in out.iter_mut().zip(coords.iter()) {
            if !is_integer(c) {
                return Err(E6Error::NonIntegralInfChar);
            }
            if c.is_negative() {
                return Err(E6Error::NegativeInfChar);
            }
            *slot = *c.numer();
        }
        Ok(InfChar(out))
    }

    /// Q_ij = B((1−θ)ζ_i, (1−θ)ζ_j), so that ‖Λ−θΛ‖² = nᵀQn.
    pub fn quadratic_form(&self, theta: &Involution) -> [[Rat; 6]; 6] {
        let d = &self.datum;
        let cols: Vec<Vec8> = d
            .fundamental_weights
            .iter()
            .map(|z| *z - theta.matrix.apply(z))
            .collect();
        std::array::from_fn(|i| std::array::from_fn(|j| cols[i].dot(&cols[j])))
    }

    /// Ω: union over the (deduplicated) fully supported involutions of all
    /// non-strongly-regular Λ ∈ ℤ≥0⁶ with nᵀQn ≤ ‖2ρ‖² = 312.
    pub fn build_omega(&self, thetas: &[Involution]) -> Result<BTreeSet<InfChar>, E6Error> {
        let mut distinct: HashMap<WeylElement, &Involution> = HashMap::new();
        for t in thetas {
            if !t.is_fully_supported() {
                return Err(E6Error::NotFullySupported);
            }
            distinct.entry(t.matrix).or_insert(t);
        }
        let mut out = BTreeSet::new();
        for t in distinct.values() {
            let q = self.quadratic_form(t);
            // Sign structure: positive diagonal, nonnegative off-diagonal —
            // also what makes the monotone scan complete.
            let mut qi = [[0i64; 6]; 6];
            let mut denom: i64 = 1;
            for row in &q {
                for entry in row {
                    denom = num::integer::lcm(denom, *entry.denom());
                }
            }
            for i in 0..6 {
                for j in 0..6 {
                    qi[i][j] = *(q[i][j] * int(denom)).numer();
                    assert!(qi[i][j] >= 0, "off-diagonal coefficients must be ≥ 0");
                }
                assert!(qi[i][i] > 0, "diagonal coefficients must be > 0");
            }
            let bound = 312 * denom;
            let mut n = [0i64; 6];
            scan_quadratic(&qi, bound, 0, 0, &mut n, &mut out);
        }
        Ok(out)
    }

    /// Ω₂ (fixture-free): dominant full-Weyl conjugates of {μ−ρn^{(j)}}+ρc
    /// over all u-small μ and all j, kept when they are nonnegative-integral
    /// and not strongly regular.
    pub fn build_omega2(&self, usmall: &[KTypeWeight]) -> BTreeSet<InfChar> {
        let d = &self.datum;
        let mut out = BTreeSet::new();
        for mu in usmall {
            let amb = d.ktype_to_ambient(mu);
            for shift in &self.cosets.rho_n_shifts {
                let v =
                    make_dominant(d, &(amb - *shift), System::Compact).vector + d.rho_c;
                let dom = make_dominant(d, &v, System::Full).vector;
                let Ok(coords) = d.zeta_coords(&dom) else {
                    continue;
                };
                let mut n = [0i64; 6];
                let mut ok = true;
                for (slot, c) in n.iter_mut().zip(coords.iter()) {
                    if !is_integer(c) || c.is_negative() {
                        ok = false;
                        break;
                    }
                    *slot = *c.numer();
                }
                if ok {
                    let l = InfChar(n);
                    if !l.is_strongly_regular() {
                        out.insert(l);
                    }
                }
            }
        }
        out
    }

    /// Minimal elements of a finite set under the coordinatewise order.
    pub fn minimal_elements(&self, s: &BTreeSet<InfChar>) -> BTreeSet<InfChar> {
        s.iter()
            .filter(|x| !s.iter().any(|y| y != *x && y.dominated_by(x)))
            .copied()
            .collect()
    }

    /// Partition Ω∖Ω₂ into the part dominating V (Ω₃) and the rest (Ω₁).
    pub fn partition_omega(
        &self,
        omega: &BTreeSet<InfChar>,
        omega2: &BTreeSet<InfChar>,
        v: &BTreeSet<InfChar>,
    ) -> Result<(BTreeSet<InfChar>, BTreeSet<InfChar>), E6Error> {
        if !omega2.is_subset(omega) {
            return Err(E6Error::PartitionPrecondition);
        }
        let mut omega1 = BTreeSet::new();
        let mut omega3 = BTreeSet::new();
        for l in omega.difference(omega2) {
            if v.iter().any(|v0| v0.dominated_by(l)) {
                omega3.insert(*l);
            } else {
                omega1.insert(*l);
            }
        }
        Ok((omega1, omega3))
    }
}

/// Depth-first scan of {n ∈ ℤ≥0⁶ : nᵀQn ≤ bound} for Q with nonnegative
/// entries: the form is monotone in each coordinate, so partial sums prune
/// exactly.
fn scan_quadratic(
    q: &[[i64; 6]; 6],
    bound: i64,
    depth: usize,
    partial: i64,
    n: &mut [i64; 6],
    out: &mut BTreeSet<InfChar>,
) {
    if depth == 6 {
        let l = InfChar(*n);
        if !l.is_strongly_regular() {
            out.insert(l);
        }
        return;
    }
    let mut k = 0i64;
    loop {
        let cross: i64 = (0..depth).map(|i| q[i][depth] * n[i]).sum();
        let value = partial + q[depth][depth] * k * k + 2 * k * cross;
        if value > bound {
            break;
        }
        n[depth] = k;
        scan_quadratic(q, bound, depth + 1, value, n, out);
        k += 1;
    }
    n[depth] = 0;
}
