//! Tits-group combinatorics for KGB enumeration. A KGB element is modelled
//! as x = σ_τ · t with τ a twisted involution of W and t an order-2 torus
//! element, written in F₂⁶ coordinates with respect to the simple coroots;
//! t is canonicalized modulo the torus-conjugation subspace D_τ (the mod-2
//! image of the saturation of (1−τ)·X_*).

use crate::minuscule::Minuscule;
use e6_core::root_datum::RootDatum;
use e6_core::vec8::Vec8;
use e6_core::weyl::WeylElement;
use num::Signed;
use std::collections::HashMap;

/// Coordinates of a root-lattice vector in the simple-root basis, mod 2
/// (c_i = B(v, ζ_i), integral for root-lattice vectors).
pub fn coords2(d: &RootDatum, v: &Vec8) -> u8 {
    let mut out = 0u8;
    for i in 0..6 {
        let c = v.dot(&d.fundamental_weights[i]);
        assert!(c.denom() == &1, "root-lattice vector expected");
        if c.numer() & 1 != 0 {
            out |= 1 << i;
        }
    }
    out
}

/// Action of w on t ∈ F₂⁶ (simple-coroot coordinates).
pub fn act(d: &RootDatum, w: &WeylElement, t: u8) -> u8 {
    let mut out = 0u8;
    for j in 0..6 {
        if t & (1 << j) != 0 {
            out ^= coords2(d, &w.apply(&d.simple_roots[j]));
        }
    }
    out
}

/// Pairing ⟨α, t⟩ mod 2 for a root α.
pub fn pairing2(d: &RootDatum, alpha: &Vec8, t: u8) -> u8 {
    let mut out = 0u8;
    for j in 0..6 {
        if t & (1 << j) != 0 {
            let b = alpha.dot(&d.simple_roots[j]);
            assert!(b.denom() == &1);
            out ^= (b.numer() & 1) as u8;
        }
    }
    out
}

/// Smith-style reduction returning an F₂-basis (echelonized bitmasks) of the
/// mod-2 image of the saturation of the column space of the integer matrix.
pub fn saturation_mod2(a: [[i64; 6]; 6]) -> Vec<u8> {
    // Diagonalize by integer row/column operations, tracking the inverse of
    // the accumulated row transform: a0 = uinv · s · v for unimodular uinv.
    let mut s: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
    let mut uinv: Vec<Vec<i64>> = (0..6)
        .map(|i| (0..6).map(|j| i64::from(i == j)).collect())
        .collect();
    let swap_rows = |s: &mut Vec<Vec<i64>>, uinv: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        s.swap(i, j);
        for r in uinv.iter_mut() {
            r.swap(i, j); // column swap on uinv
        }
    };
    // row_i += c·row_j  ⇒  uinv col_j −= c·col_i
    let add_row = |s: &mut Vec<Vec<i64>>, uinv: &mut Vec<Vec<i64>>, i: usize, j: usize, c: i64| {
        for k in 0..6 {
            s[i][k] += c * s[j][k];
        }
        for r in uinv.iter_mut() {
            r[j] -= c * r[i];
        }
    };
    let mut rank = 0usize;
    for p in 0..6 {
        // Find a pivot in the remaining block, minimizing |entry|.
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in p..6 {
                for j in p..6 {
                    if s[i][j] != 0
                        && pivot.map_or(true, |(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(rank, &uinv);
            };
            if pi != p {
                swap_rows(&mut s, &mut uinv, p, pi);
            }
            if pj != p {
                for row in s.iter_mut() {
                    row.swap(p, pj); // column ops don't touch uinv
                }
            }
            // Clear the pivot row and column by division with remainder.
            let mut clean = true;
            for i in p + 1..6 {
                let q = s[i][p].div_euclid(s[p][p]);
                if q != 0 {
                    add_row(&mut s, &mut uinv, i, p, -q);
                }
                if s[i][p] != 0 {
                    clean = false;
                }
            }
            for j in p + 1..6 {
                let q = s[p][j].div_euclid(s[p][p]);
                if q != 0 {
                    for row in s.iter_mut() {
                        row[j] -= q * row[p];
                    }
                }
                if s[p][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        rank = p + 1;
    }
    finish(rank, &uinv)
}

fn finish(rank: usize, uinv: &[Vec<i64>]) -> Vec<u8> {
    // Saturation basis = the first `rank` columns of uinv; echelonize mod 2.
    let mut vecs: Vec<u8> = (0..rank)
        .map(|j| {
            let mut v = 0u8;
            for (i, row) in uinv.iter().enumerate() {
                if row[j] & 1 != 0 {
                    v |= 1 << i;
                }
            }
            v
        })
        .collect();
    echelonize(&mut vecs);
    // Direct summand of rank r stays r-dimensional after reduction mod 2.
    assert_eq!(vecs.len(), rank, "saturation must stay full rank mod 2");
    vecs
}

pub fn echelonize(vecs: &mut Vec<u8>) {
    let mut basis: Vec<u8> = Vec::new();
    for mut v in vecs.drain(..) {
        for b in &basis {
            let lead = 1u8 << (7 - b.leading_zeros());
            if v & lead != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_by_key(|b| std::cmp::Reverse(*b));
        }
    }
    *vecs = basis;
}

pub fn reduce(mut t: u8, basis: &[u8]) -> u8 {
    for b in basis {
        let lead = 1u8 << (7 - b.leading_zeros());
        if t & lead != 0 {
            t ^= b;
        }
    }
    t
}

/// One KGB element: τ canonical as a Weyl matrix, t canonical mod D_τ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Kgb {
    pub tau: WeylElement,
    pub t: u8,
}

/// Per-τ caches: the D_τ subspace and the Ad-sign of σ_τ on each
/// τ-invariant simple root space.
pub struct TauData {
    pub d_basis: Vec<u8>,
    /// eps[i] = Some(−1 | +1) when τ(α_i) = α_i.
    pub eps: [Option<i64>; 6],
}

pub struct Ctx<'a> {
    pub d: &'a RootDatum,
    pub minuscule: Minuscule,
    cache: HashMap<WeylElement, TauData>,
}

impl<'a> Ctx<'a> {
    pub fn new(d: &'a RootDatum) -> Ctx<'a> {
        Ctx {
            d,
            minuscule: Minuscule::build(d),
            cache: HashMap::new(),
        }
    }

    pub fn tau_data(&mut self, tau: &WeylElement) -> &TauData {
        if !self.cache.contains_key(tau) {
            let d = self.d;
            // Integer matrix of 1−τ on the coroot lattice (simple-coroot
            // basis; coroots are identified with roots here).
            let mut a = [[0i64; 6]; 6];
            for (j, alpha) in d.simple_roots[..6].iter().enumerate() {
                let img = *alpha - tau.apply(alpha);
                for (i, row) in a.iter_mut().enumerate() {
                    let c = img.dot(&d.fundamental_weights[i]);
                    assert!(c.denom() == &1);
                    row[j] = *c.numer();
                }
            }
            let d_basis = saturation_mod2(a);
            let sigma_tau = self.minuscule.sigma_of(d, tau);
            let eps = std::array::from_fn(|i| {
                if tau.apply(&d.simple_roots[i]) == d.simple_roots[i] {
                    Some(self.minuscule.ad_sign(&sigma_tau, i))
                } else {
                    None
                }
            });
            self.cache.insert(*tau, TauData { d_basis, eps });
        }
        &self.cache[tau]
    }

    pub fn canonicalize(&mut self, tau: WeylElement, t: u8) -> Kgb {
        let basis = &self.tau_data(&tau).d_basis;
        Kgb {
            tau,
            t: reduce(t, basis),
        }
    }

    fn simple(&self, i: usize) -> WeylElement {
        WeylElement::reflection(&self.d.simple_roots[i])
    }

    /// σ_i · (σ_w t), not canonicalized.
    fn left_mul(&self, i: usize, w: WeylElement, t: u8) -> (WeylElement, u8) {
        let d = self.d;
        let si = self.simple(i);
        let siw = si.compose(&w);
        // Ascent iff w⁻¹(α_i) > 0.
        let pre = w.inverse().apply(&d.simple_roots[i]);
        if pre.dot(&d.rho).is_positive() {
            (siw, t)
        } else {
            // σ_i σ_w = σ_{s_i w} · m_i conjugated through σ_{s_i w}:
            // m_i moves across as (s_i w)⁻¹(α_i∨).
            let m = coords2(d, &siw.inverse().apply(&d.simple_roots[i]));
            (siw, t ^ m)
        }
    }

    /// (σ_w t) · σ_i, not canonicalized.
    fn right_mul(&self, w: WeylElement, t: u8, i: usize) -> (WeylElement, u8) {
        let d = self.d;
        let wsi = w.compose(&self.simple(i));
        let st = act(d, &self.simple(i), t);
        // Ascent iff w(α_i) > 0.
        if w.apply(&d.simple_roots[i]).dot(&d.rho).is_positive() {
            (wsi, st)
        } else {
            (wsi, st ^ (1 << i))
        }
    }

    /// Cross action: σ_i x σ_i⁻¹ with σ_i⁻¹ = σ_i m_i.
    pub fn cross(&mut self, i: usize, x: Kgb) -> Kgb {
        let (w1, t1) = self.left_mul(i, x.tau, x.t);
        let (w2, t2) = self.right_mul(w1, t1, i);
        self.canonicalize(w2, t2 ^ (1 << i))
    }

    /// Status of the simple root α_i at x.
    pub fn status(&mut self, i: usize, x: Kgb) -> RootStatus {
        let d = self.d;
        let img = x.tau.apply(&d.simple_roots[i]);
        if img == d.simple_roots[i] {
            let eps = self.tau_data(&x.tau).eps[i].expect("imaginary simple root");
            let torus = if pairing2(d, &d.simple_roots[i], x.t) == 0 { 1 } else { -1 };
            if eps * torus == 1 {
                RootStatus::ImaginaryCompact
            } else {
                RootStatus::ImaginaryNoncompact
            }
        } else if img == -d.simple_roots[i] {
            RootStatus::Real
        } else {
            RootStatus::Complex
        }
    }

    /// Cayley transform through a noncompact imaginary simple root: σ_i · x.
    pub fn cayley(&mut self, i: usize, x: Kgb) -> Kgb {
        debug_assert_eq!(self.status(i, x), RootStatus::ImaginaryNoncompact);
        let (w, t) = self.left_mul(i, x.tau, x.t);
        self.canonicalize(w, t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootStatus {
    ImaginaryCompact,
    ImaginaryNoncompact,
    Real,
    Complex,
}
