//! Weyl-group machinery: exact group generation with matrix deduplication,
//! deterministic dominance conjugation, the 27 minimal coset representatives
//! W¹ with their spin shifts ρn^{(j)}, nearest-point projection to the
//! dominant cone, and θ-stable-parabolic range checks.

use crate::linalg;
use crate::rat::{int, Rat};
use crate::root_datum::RootDatum;
use crate::vec8::Vec8;
use num::{Signed, Zero};
use std::collections::HashMap;

/// Scale factor of the compact integer matrix representation: all matrices
/// appearing here (Weyl elements of E6 in the ambient basis, and the ingested
/// Cartan involutions, which are Weyl elements too) have entries in (1/4)ℤ.
const SCALE: i16 = 4;

/// An orthogonal transformation of the ambient space stored as an 8×8 matrix
/// of quarter-integers (entry = q/4). Orthogonality w.r.t. B means the
/// inverse is the transpose.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Row-major entries times 4.
    q: [i8; 64],
}

impl WeylElement {
    pub fn identity() -> Self {
        let mut q = [0i8; 64];
        for i in 0..8 {
            q[i * 9] = SCALE as i8;
        }
        WeylElement { q }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Reflection in a root of squared length 2: s(v) = v − B(v,α)·α.
    pub fn reflection(alpha: &Vec8) -> Self {
        assert_eq!(alpha.norm_sq(), int(2));
        let mut q = [0i8; 64];
        for i in 0..8 {
            for j in 0..8 {
                let mut entry = -alpha.0[i] * alpha.0[j] * int(SCALE as i64);
                if i == j {
                    entry += int(SCALE as i64);
                }
                assert!(entry.denom() == &1, "reflection entry not a quarter-integer");
                let n = *entry.numer();
                assert!((-128..=127).contains(&n));
                q[i * 8 + j] = n as i8;
            }
        }
        WeylElement { q }
    }

    pub fn apply(&self, v: &Vec8) -> Vec8 {
        let mut out = [Rat::zero(); 8];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for j in 0..8 {
                let c = self.q[i * 8 + j];
                if c != 0 {
                    acc += v.0[j] * Rat::new(c as i64, SCALE as i64);
                }
            }
            *slot = acc;
        }
        Vec8(out)
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut q = [0i8; 64];
        for i in 0..8 {
            for j in 0..8 {
                let mut acc: i32 = 0;
                for k in 0..8 {
                    acc += self.q[i * 8 + k] as i32 * other.q[k * 8 + j] as i32;
                }
                debug_assert!(acc % SCALE as i32 == 0, "product left the 1/4-lattice");
                let v = acc / SCALE as i32;
                debug_assert!((-128..=127).contains(&v));
                q[i * 8 + j] = v as i8;
            }
        }
        WeylElement { q }
    }

    /// Inverse = transpose (B-orthogonality).
    pub fn inverse(&self) -> WeylElement {
        let mut q = [0i8; 64];
        for i in 0..8 {
            for j in 0..8 {
                q[i * 8 + j] = self.q[j * 8 + i];
            }
        }
        WeylElement { q }
    }

    pub fn to_rational(&self) -> [[Rat; 8]; 8] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| Rat::new(self.q[i * 8 + j] as i64, SCALE as i64))
        })
    }

    /// Build from an exact rational matrix; `None` if an entry is not a
    /// quarter-integer in range.
    pub fn from_rational(m: &[[Rat; 8]; 8]) -> Option<WeylElement> {
        let mut q = [0i8; 64];
        for i in 0..8 {
            for j in 0..8 {
                let scaled = m[i][j] * int(SCALE as i64);
                if scaled.denom() != &1 {
                    return None;
                }
                let n = *scaled.numer();
                if !(-128..=127).contains(&n) {
                    return None;
                }
                q[i * 8 + j] = n as i8;
            }
        }
        Some(WeylElement { q })
    }
}

impl std::fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "WeylElement[")?;
        for i in 0..8 {
            let row: Vec<String> = (0..8)
                .map(|j| crate::rat::format_rat(&Rat::new(self.q[i * 8 + j] as i64, 4)))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A finite reflection group generated from a list of simple roots, with a
/// membership index over the deduplicated matrices.
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<WeylElement, u32>,
}

impl WeylGroup {
    /// Breadth-first closure over words in the given simple reflections,
    /// deduplicating matrices. The identity is element 0.
    pub fn generate(simple_roots: &[Vec8]) -> WeylGroup {
        let gens: Vec<WeylElement> = simple_roots.iter().map(WeylElement::reflection).collect();
        let mut elements = vec![WeylElement::identity()];
        let mut index = HashMap::new();
        index.insert(elements[0], 0u32);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head];
            head += 1;
            for g in &gens {
                let next = g.compose(&w);
                if !index.contains_key(&next) {
                    index.insert(next, elements.len() as u32);
                    elements.push(next);
                }
            }
        }
        WeylGroup { elements, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.index.contains_key(w)
    }
}

/// Which simple system dominance is measured against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum System {
    /// α1..α6 of g.
    Full,
    /// γ1..γ5 = α2..α6 of k.
    Compact,
}

impl RootDatum {
    pub fn system_simples(&self, system: System) -> &[Vec8] {
        match system {
            System::Full => &self.simple_roots,
            System::Compact => &self.k_simple_roots,
        }
    }

    pub fn is_dominant(&self, v: &Vec8, system: System) -> bool {
        self.system_simples(system)
            .iter()
            .all(|a| !v.dot(a).is_negative())
    }
}

/// Result of `make_dominant`: the dominant conjugate, the conjugating
/// element (w·v = dominant), and the reflection word applied (indices into
/// the system's simple roots, first-applied first).
pub struct DominantResult {
    pub vector: Vec8,
    pub w: WeylElement,
    pub word: Vec<usize>,
}

impl DominantResult {
    /// det(w) = (−1)^{word length}.
    pub fn det_sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Deterministic dominance conjugation: repeatedly reflect in the
/// lowest-index simple root pairing negatively.
pub fn make_dominant(datum: &RootDatum, v: &Vec8, system: System) -> DominantResult {
    let simples = datum.system_simples(system);
    let mut cur = *v;
    let mut w = WeylElement::identity();
    let mut word = Vec::new();
    loop {
        let neg = simples.iter().position(|a| cur.dot(a).is_negative());
        match neg {
            None => return DominantResult { vector: cur, w, word },
            Some(i) => {
                let a = &simples[i];
                cur -= a.scale(cur.dot(a));
                w = WeylElement::reflection(a).compose(&w);
                word.push(i);
            }
        }
    }
}

/// The 27 minimal-length representatives of W(k)\W(g), realized as
/// {w ∈ W : w·ρ strictly Δ⁺(k)-dominant}, identity first, then in
/// generation order; together with the shifts ρn^{(j)} = w^{(j)}ρ − ρc.
pub struct CosetReps {
    pub reps: Vec<WeylElement>,
    pub rho_n_shifts: Vec<Vec8>,
}

pub fn minimal_coset_reps(datum: &RootDatum, w_full: &WeylGroup) -> CosetReps {
    let mut reps: Vec<WeylElement> = w_full
        .elements
        .iter()
        .filter(|w| {
            let v = w.apply(&datum.rho);
            datum
                .k_simple_roots
                .iter()
                .all(|g| v.dot(g).is_positive())
        })
        .copied()
        .collect();
    // Generation order already puts the identity first (it is element 0 of
    // the group); make that explicit and stable.
    if let Some(pos) = reps.iter().position(WeylElement::is_identity) {
        reps.swap(0, pos);
    }
    let rho_n_shifts = reps
        .iter()
        .map(|w| w.apply(&datum.rho) - datum.rho_c)
        .collect();
    CosetReps { reps, rho_n_shifts }
}

/// Nearest point (in B-norm) of the closed dominant cone of the full simple
/// system, by active-set enumeration: for each subset S of simple roots,
/// solve for p = v + Σ_{i∈S} c_i α_i with B(p, α_i) = 0 on S; accept iff all
/// c_i > 0 (strict complementarity) and p is dominant. Exactly one subset is
/// accepted.
pub fn project_dominant_cone(datum: &RootDatum, v: &Vec8) -> Vec8 {
    let simples = &datum.simple_roots;
    let mut accepted: Option<Vec8> = None;
    for mask in 0u32..64 {
        let s: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
        let candidate = if s.is_empty() {
            *v
        } else {
            let gram: Vec<Vec<Rat>> = s
                .iter()
                .map(|&i| s.iter().map(|&j| simples[i].dot(&simples[j])).collect())
                .collect();
            let rhs: Vec<Rat> = s.iter().map(|&i| -v.dot(&simples[i])).collect();
            let c = linalg::solve(&gram, &rhs).expect("Gram matrices of independent roots");
            if !c.iter().all(Rat::is_positive) {
                continue;
            }
            let mut p = *v;
            for (&i, ci) in s.iter().zip(c.iter()) {
                p += simples[i].scale(*ci);
            }
            p
        };
        if datum.is_dominant(&candidate, System::Full) {
            assert!(
                accepted.is_none() || accepted == Some(candidate),
                "active-set projection must be unique"
            );
            accepted = Some(candidate);
        }
    }
    accepted.expect("nearest-point projection always exists")
}

/// θ-stable parabolic data built from a defining weight ξ:
/// Δ(l) = {α : B(ξ,α) = 0}, Δ(u) = {α : B(ξ,α) > 0}.
pub struct ParabolicData {
    pub defining_weight: Vec8,
    pub levi_roots: Vec<Vec8>,
    pub nilrad_roots: Vec<Vec8>,
    pub rho_u: Vec8,
    pub rho_u_cap_p: Vec8,
}

pub fn build_parabolic(datum: &RootDatum, xi: &Vec8) -> ParabolicData {
    let levi_roots: Vec<Vec8> = datum
        .all_roots
        .iter()
        .copied()
        .filter(|a| xi.dot(a).is_zero())
        .collect();
    let nilrad_roots: Vec<Vec8> = datum
        .all_roots
        .iter()
        .copied()
        .filter(|a| xi.dot(a).is_positive())
        .collect();
    assert_eq!(levi_roots.len() + 2 * nilrad_roots.len(), datum.all_roots.len());
    let half = Rat::new(1, 2);
    let rho_u = nilrad_roots
        .iter()
        .fold(Vec8::zero(), |acc, r| acc + *r)
        .scale(half);
    let rho_u_cap_p = nilrad_roots
        .iter()
        .filter(|r| !datum.is_compact_root(r))
        .fold(Vec8::zero(), |acc, r| acc + *r)
        .scale(half);
    ParabolicData {
        defining_weight: *xi,
        levi_roots,
        nilrad_roots,
        rho_u,
        rho_u_cap_p,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Range {
    Good,
    WeaklyGood,
    Neither,
}

/// Range of λ_L relative to the parabolic: good iff ⟨λL+ρ(u), α∨⟩ > 0 on
/// Δ(u); weakly good iff ≥ 0.
pub fn classify_range(lambda_l: &Vec8, p: &ParabolicData) -> Range {
    let shifted = *lambda_l + p.rho_u;
    let mut all_positive = true;
    for a in &p.nilrad_roots {
        let pairing = shifted.dot(a);
        if pairing.is_negative() {
            return Range::Neither;
        }
        if pairing.is_zero() {
            all_positive = false;
        }
    }
    if all_positive {
        Range::Good
    } else {
        Range::WeaklyGood
    }
}

/// Shift-dominance check: γ_L + ρ(u∩p) is Δ⁺(k)-dominant.
pub fn hd_shift_dominant(datum: &RootDatum, gamma_l: &Vec8, p: &ParabolicData) -> bool {
    datum.is_dominant(&(*gamma_l + p.rho_u_cap_p), System::Compact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::KTypeWeight;
    use std::sync::OnceLock;

    fn datum() -> &'static RootDatum {
        static D: OnceLock<RootDatum> = OnceLock::new();
        D.get_or_init(RootDatum::build)
    }

    fn w_full() -> &'static WeylGroup {
        static G: OnceLock<WeylGroup> = OnceLock::new();
        G.get_or_init(|| WeylGroup::generate(&datum().simple_roots))
    }

    #[test]
    fn group_orders() {
        assert_eq!(w_full().order(), 51840);
        let wk = WeylGroup::generate(&datum().k_simple_roots);
        assert_eq!(wk.order(), 1920);
        let trivial = WeylGroup::generate(&[]);
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn elements_permute_roots() {
        let d = datum();
        let g = w_full();
        // Sample a spread of elements.
        for idx in (0..g.order()).step_by(523) {
            let w = &g.elements[idx];
            for r in &d.all_roots {
                assert!(d.is_root(&w.apply(r)));
            }
        }
    }

    #[test]
    fn make_dominant_examples() {
        let d = datum();
        let res = make_dominant(d, &d.rho, System::Full);
        assert_eq!(res.vector, d.rho);
        assert!(res.w.is_identity());

        let s1 = WeylElement::reflection(&d.simple_roots[0]);
        let res = make_dominant(d, &s1.apply(&d.rho), System::Full);
        assert_eq!(res.vector, d.rho);
        assert_eq!(res.word, vec![0]);
        assert_eq!(res.w.apply(&s1.apply(&d.rho)), d.rho);
    }

    #[test]
    fn coset_reps_count_and_shifts() {
        let d = datum();
        let reps = minimal_coset_reps(d, w_full());
        assert_eq!(reps.reps.len(), 27);
        assert!(reps.reps[0].is_identity());
        assert_eq!(
            reps.rho_n_shifts[0],
            Vec8::from_i64([0, 0, 0, 0, 0, -4, -4, 4])
        );
        // Pairwise distinct w·ρ, all strictly compact-dominant.
        let mut seen = std::collections::BTreeSet::new();
        for w in &reps.reps {
            let v = w.apply(&d.rho);
            assert!(d.k_simple_roots.iter().all(|g| v.dot(g).is_positive()));
            assert!(seen.insert(v));
        }
        // Every shift passes the K-type parity test.
        for shift in &reps.rho_n_shifts {
            let mu = d.ambient_to_ktype(shift).unwrap();
            let [a, b, c, dd, e, f] = mu.0;
            let expr = -a * Rat::new(3, 4) - b * Rat::new(5, 4) - c * Rat::new(3, 2)
                - dd
                - e * Rat::new(1, 2)
                + f * Rat::new(1, 4);
            assert_eq!(expr.denom(), &1, "ρn shift fails the parity condition");
        }
    }

    #[test]
    fn projection_examples() {
        let d = datum();
        assert_eq!(project_dominant_cone(d, &d.rho), d.rho);
        assert_eq!(project_dominant_cone(d, &-d.rho), Vec8::zero());
        // Idempotence on a few vectors.
        for v in [
            Vec8::from_i64([1, -2, 3, 0, 0, -1, -1, 1]),
            d.rho_n,
            -d.rho_c,
        ] {
            let p = project_dominant_cone(d, &v);
            assert_eq!(project_dominant_cone(d, &p), p);
        }
    }

    #[test]
    fn parabolic_from_zeta() {
        let d = datum();
        let p = build_parabolic(d, &d.zeta);
        assert_eq!(p.nilrad_roots.len(), 16);
        assert_eq!(p.rho_u, d.rho - d.rho_c);
        assert_eq!(p.rho_u_cap_p, d.rho_n);
        // Eq-style identity ρ = ρ_L + ρ(u): half-sum of Δ⁺(l) plus rho_u.
        let rho_l = p
            .levi_roots
            .iter()
            .filter(|r| r.dot(&d.rho).is_positive())
            .fold(Vec8::zero(), |acc, r| acc + *r)
            .scale(Rat::new(1, 2));
        assert_eq!(rho_l + p.rho_u, d.rho);

        let empty = build_parabolic(d, &Vec8::zero());
        assert!(empty.nilrad_roots.is_empty());
        assert!(empty.rho_u.is_zero());

        let full = build_parabolic(d, &d.rho);
        assert_eq!(full.nilrad_roots.len(), 36);
        assert_eq!(full.rho_u, d.rho);
    }

    #[test]
    fn range_examples() {
        let d = datum();
        let p = build_parabolic(d, &d.rho);
        assert_eq!(classify_range(&Vec8::zero(), &p), Range::Good);
        assert_eq!(classify_range(&-d.rho, &p), Range::WeaklyGood);
        assert_eq!(classify_range(&(-d.rho - d.rho), &p), Range::Neither);
        assert!(hd_shift_dominant(d, &Vec8::zero(), &p));
    }

    #[test]
    fn rational_matrix_round_trip() {
        let d = datum();
        let w = WeylElement::reflection(&d.simple_roots[0]);
        let m = w.to_rational();
        assert_eq!(WeylElement::from_rational(&m), Some(w));
        assert!(w.compose(&w).is_identity());
        assert_eq!(w.inverse(), w);
    }

    #[test]
    fn example_lambda_projection() {
        // μ = 0 (trivial K-type): project ρc·2 − ρ after full dominance; the
        // published dominant-cone projection is (0,1/2,1/2,3/2,3/2,0,0,0).
        let d = datum();
        let mu = d.ktype_to_ambient(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]));
        let res = make_dominant(d, &(mu + d.rho_c + d.rho_c), System::Full);
        let q = project_dominant_cone(d, &(res.vector - d.rho));
        // The published value sits in a different Weyl chamber; it must be
        // W-conjugate to our dominant projection.
        let published = Vec8([
            int(0),
            Rat::new(1, 2),
            Rat::new(1, 2),
            Rat::new(3, 2),
            Rat::new(3, 2),
            int(0),
            int(0),
            int(0),
        ]);
        assert_eq!(make_dominant(d, &published, System::Full).vector, q);
        assert_eq!(q.norm_sq(), int(5));
        assert_eq!(q.dot(&(d.rho + d.rho)), int(38));
    }

    fn int(n: i64) -> Rat {
        Rat::from_integer(n)
    }
}
