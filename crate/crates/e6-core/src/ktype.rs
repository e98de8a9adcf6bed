//! K-type statistics: spin norm, lambda norm / atlas height, u-smallness
//! and the complete u-small census.

use crate::linalg::{simplex_max, LpOutcome};
use crate::rat::{int, Rat};
use crate::root_datum::KTypeWeight;
use crate::vec8::Vec8;
use crate::weyl::{make_dominant, project_dominant_cone, System};
use crate::Engine;
use num::Zero;

/// Result of the spin-norm minimization over the 27 coset shifts.
#[derive(Debug, Clone)]
pub struct SpinNormResult {
    pub norm_sq: Rat,
    /// All indices j attaining the minimum.
    pub argmin_js: Vec<usize>,
    /// For each argmin j, the vector {μ−ρn^{(j)}}+ρc.
    pub dominant_shifts: Vec<Vec8>,
}

/// Lambda norm and atlas height data.
#[derive(Debug, Clone)]
pub struct LambdaResult {
    /// Projection carried back to μ's own chamber (w⁻¹·q).
    pub lambda_a: Vec8,
    pub norm_sq: Rat,
    pub height: i64,
}

/// One u-smallness inequality, pre-expressed in K-basis coordinates:
/// coeffs·[a..f] ≤ rhs, with everything scaled to integers.
pub(crate) struct UsmallForm {
    pub coeffs: [i64; 6],
    pub rhs: i64,
}

pub(crate) fn build_usmall_forms(engine: &Engine) -> Vec<UsmallForm> {
    let d = &engine.datum;
    // Ambient basis vectors of the K-coordinates [a..f].
    let mut basis: Vec<Vec8> = d.k_fundamental_weights.to_vec();
    basis.push(d.zeta.scale(Rat::new(1, 4)));
    let two_rho_c = d.rho_c + d.rho_c;
    let mut forms = Vec::with_capacity(162);
    for w in &engine.cosets.reps {
        for zi in &d.fundamental_weights {
            let wz = w.apply(zi);
            let rhs_rat = (d.rho + d.rho).dot(zi) - two_rho_c.dot(&wz);
            let coeff_rat: Vec<Rat> = basis.iter().map(|b| b.dot(&wz)).collect();
            // Scale to integers.
            let mut denom_lcm: i64 = *rhs_rat.denom();
            for c in &coeff_rat {
                denom_lcm = num::integer::lcm(denom_lcm, *c.denom());
            }
            let scale = int(denom_lcm);
            let coeffs: [i64; 6] =
                std::array::from_fn(|k| *(coeff_rat[k] * scale).numer());
            let rhs = *(rhs_rat * scale).numer();
            forms.push(UsmallForm { coeffs, rhs });
        }
    }
    forms
}

impl Engine {
    /// Spin norm: min over the 27 shifts of ‖{μ−ρn^{(j)}}+ρc‖², with all
    /// minimizers and their dominant shift vectors.
    pub fn spin_norm(&self, mu: &KTypeWeight) -> SpinNormResult {
        let d = &self.datum;
        let amb = d.ktype_to_ambient(mu);
        let mut best: Option<Rat> = None;
        let mut argmin_js = Vec::new();
        let mut dominant_shifts = Vec::new();
        for (j, shift) in self.cosets.rho_n_shifts.iter().enumerate() {
            let v = make_dominant(d, &(amb - *shift), System::Compact).vector + d.rho_c;
            let n = v.norm_sq();
            match &best {
                Some(b) if n > *b => {}
                Some(b) if n == *b => {
                    argmin_js.push(j);
                    dominant_shifts.push(v);
                }
                _ => {
                    best = Some(n);
                    argmin_js = vec![j];
                    dominant_shifts = vec![v];
                }
            }
        }
        SpinNormResult {
            norm_sq: best.expect("27 shifts are nonempty"),
            argmin_js,
            dominant_shifts,
        }
    }

    /// Lambda norm and atlas height, computed chamber-free: conjugate
    /// μ+2ρc dominant, project the −ρ shift to the dominant cone, and read
    /// the height as B(q, 2ρ).
    pub fn lambda_stats(&self, mu: &KTypeWeight) -> LambdaResult {
        let d = &self.datum;
        let amb = d.ktype_to_ambient(mu);
        let res = make_dominant(d, &(amb + d.rho_c + d.rho_c), System::Full);
        let q = project_dominant_cone(d, &(res.vector - d.rho));
        let height_rat = q.dot(&(d.rho + d.rho));
        assert!(
            height_rat.denom() == &1,
            "atlas height must be an integer (projection bug otherwise)"
        );
        LambdaResult {
            lambda_a: res.w.inverse().apply(&q),
            norm_sq: q.norm_sq(),
            height: *height_rat.numer(),
        }
    }

    /// u-smallness: the 27×6 inequalities ⟨μ+2ρc, w^{(j)}ζ_i⟩ ≤ 2⟨ρ, ζ_i⟩.
    pub fn is_usmall(&self, mu: &KTypeWeight) -> bool {
        debug_assert!(mu.0.iter().all(|x| x.denom() == &1));
        let k: [i64; 6] = std::array::from_fn(|i| *mu.0[i].numer());
        self.usmall_forms.iter().all(|f| {
            let lhs: i64 = (0..6).map(|i| f.coeffs[i] * k[i]).sum();
            lhs <= f.rhs
        })
    }

    /// Enumerate every valid K(ℝ)-type highest weight inside the u-small
    /// body. Scan bounds are exact LP maxima of each coordinate over the
    /// 162 inequalities plus dominance, so the census is provably complete.
    pub fn enumerate_usmall(&self) -> Vec<KTypeWeight> {
        // LP data: variables [a..f] free; constraints: usmall forms plus
        // −a ≤ 0 … −e ≤ 0.
        let mut a_rows: Vec<Vec<Rat>> = Vec::new();
        let mut b_rhs: Vec<Rat> = Vec::new();
        for f in &self.usmall_forms {
            a_rows.push(f.coeffs.iter().map(|&c| int(c)).collect());
            b_rhs.push(int(f.rhs));
        }
        for i in 0..5 {
            let mut row = vec![Rat::zero(); 6];
            row[i] = int(-1);
            a_rows.push(row);
            b_rhs.push(Rat::zero());
        }
        let bound = |obj: [i64; 6]| -> i64 {
            let c: Vec<Rat> = obj.iter().map(|&x| int(x)).collect();
            match simplex_max(&a_rows, &b_rhs, &c) {
                LpOutcome::Optimal(v) => v.floor().to_integer(),
                LpOutcome::Unbounded => panic!("u-small body must be bounded"),
            }
        };
        let mut maxes = [0i64; 5];
        for (i, m) in maxes.iter_mut().enumerate() {
            let mut obj = [0i64; 6];
            obj[i] = 1;
            *m = bound(obj);
        }
        let f_max = bound([0, 0, 0, 0, 0, 1]);
        let f_min = -bound([0, 0, 0, 0, 0, -1]);

        let mut out = Vec::new();
        for a in 0..=maxes[0] {
            for b in 0..=maxes[1] {
                for c in 0..=maxes[2] {
                    for dd in 0..=maxes[3] {
                        for e in 0..=maxes[4] {
                            // Parity: f ≡ 3a+5b+6c+4d+2e (mod 4).
                            let residue = (3 * a + 5 * b + 6 * c + 4 * dd + 2 * e).rem_euclid(4);
                            let mut f = f_min + (residue - f_min).rem_euclid(4);
                            while f <= f_max {
                                let k = [a, b, c, dd, e, f];
                                let ok = self.usmall_forms.iter().all(|form| {
                                    let lhs: i64 =
                                        (0..6).map(|i| form.coeffs[i] * k[i]).sum();
                                    lhs <= form.rhs
                                });
                                if ok {
                                    out.push(KTypeWeight::from_i64(k));
                                }
                                f += 4;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::test_engine;

    #[test]
    fn spin_norm_examples() {
        let e = test_engine();
        let cases = [
            ([0, 0, 0, 0, 0, 0], int(78)),
            ([0, 0, 0, 0, 2, -24], int(50)),
            ([0, 3, 0, 0, 0, -21], int(42)),
            ([0, 0, 0, 0, 1, -18], int(42)),
            ([0, 1, 0, 0, 1, -21], int(42)),
            ([0, 2, 0, 0, 1, -24], int(42)),
            ([0, 0, 0, 0, 0, -12], int(42)),
            ([0, 1, 0, 0, 0, -15], int(42)),
            ([0, 2, 0, 0, 0, -18], int(42)),
        ];
        for (coords, expect) in cases {
            let r = e.spin_norm(&KTypeWeight::from_i64(coords));
            assert_eq!(r.norm_sq, expect, "spin norm of {coords:?}");
            for s in &r.dominant_shifts {
                assert_eq!(s.norm_sq(), expect);
            }
            assert!(!r.argmin_js.is_empty());
        }
    }

    #[test]
    fn lambda_examples() {
        let e = test_engine();
        let zero = e.lambda_stats(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 0]));
        assert_eq!(zero.norm_sq, int(5));
        assert_eq!(zero.height, 38);

        // Branch-table heights and squared lambda norms.
        let cases = [
            ([0, 0, 0, 0, 1, -18], 70, int(17)),
            ([0, 1, 0, 0, 1, -21], 91, rat(55, 2)),
            ([0, 0, 0, 0, 2, -24], 94, int(32)),
            ([0, 2, 0, 0, 1, -24], 113, rat(83, 2)),
            ([0, 0, 0, 0, 0, -12], 46, int(8)),
            ([0, 1, 0, 0, 0, -15], 67, rat(31, 2)),
            ([0, 2, 0, 0, 0, -18], 88, int(26)),
            ([0, 3, 0, 0, 0, -21], 110, int(40)),
        ];
        for (coords, height, norm_sq) in cases {
            let r = e.lambda_stats(&KTypeWeight::from_i64(coords));
            assert_eq!(r.height, height, "height of {coords:?}");
            assert_eq!(r.norm_sq, norm_sq, "lambda norm² of {coords:?}");
        }
    }

    #[test]
    fn usmall_examples() {
        let e = test_engine();
        assert!(e.is_usmall(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 0])));
        assert!(e.is_usmall(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 12])));
        // The pure-center family is u-small exactly for |f| ≤ 48.
        assert!(e.is_usmall(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 48])));
        assert!(!e.is_usmall(&KTypeWeight::from_i64([0, 0, 0, 0, 0, 52])));
        assert!(!e.is_usmall(&KTypeWeight::from_i64([0, 0, 0, 0, 0, -52])));
    }

    #[test]
    fn usmall_census() {
        let e = test_engine();
        let all = e.enumerate_usmall();
        assert_eq!(all.len(), 3153);
        for mu in &all {
            assert!(e.datum.is_ktype_weight(mu));
        }
    }
}
