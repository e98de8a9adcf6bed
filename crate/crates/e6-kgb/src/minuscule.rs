//! The 27-dimensional minuscule representation of simply connected E6,
//! realized combinatorially: weights are the W-orbit of ζ1, raising
//! operators are all-ones matrices on the weight-edge graphs, and the
//! simple reflections lift to monomial ±1 matrices
//! σ_i = (1+E_i)(1−F_i)(1+E_i). The lift is used as a sign oracle: for a
//! Weyl element w fixing a simple root α_i, Ad(σ_w) acts on the raising
//! operator E_i by ±1, and that sign is exactly the grading datum needed
//! for compact/noncompact bookkeeping.

use e6_core::rat::int;
use e6_core::root_datum::RootDatum;
use e6_core::vec8::Vec8;
use e6_core::weyl::WeylElement;
use num::{Signed, Zero};

pub const DIM: usize = 27;

pub type Mat = Vec<Vec<i64>>;

fn zeros() -> Mat {
    vec![vec![0i64; DIM]; DIM]
}

fn identity() -> Mat {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = zeros();
    for i in 0..DIM {
        for k in 0..DIM {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..DIM {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

fn add_scaled(a: &Mat, b: &Mat, c: i64) -> Mat {
    let mut out = a.clone();
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] += c * b[i][j];
        }
    }
    out
}

fn transpose(a: &Mat) -> Mat {
    let mut out = zeros();
    for i in 0..DIM {
        for j in 0..DIM {
            out[j][i] = a[i][j];
        }
    }
    out
}

fn neg(a: &Mat) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect()
}

pub struct Minuscule {
    /// The sorted weight list fixes the basis ordering used by the operator
    /// matrices below; retained for debugging and future cross-checks.
    #[allow(dead_code)]
    pub weights: Vec<Vec8>,
    /// Raising operators: e[i] maps the weight space of λ to that of λ+α_i.
    pub e_ops: Vec<Mat>,
    /// Monomial lifts of the simple reflections.
    pub sigma: Vec<Mat>,
}

impl Minuscule {
    pub fn build(d: &RootDatum) -> Minuscule {
        // W-orbit of ζ1.
        let mut weights = vec![d.fundamental_weights[0]];
        let mut head = 0;
        while head < weights.len() {
            let v = weights[head];
            head += 1;
            for a in &d.simple_roots[..6] {
                let img = v - a.scale(v.dot(a));
                if !weights.contains(&img) {
                    weights.push(img);
                }
            }
        }
        assert_eq!(weights.len(), DIM, "orbit of the first fundamental weight");
        weights.sort();
        let idx = |v: &Vec8| weights.iter().position(|w| w == v).unwrap();

        let mut e_ops = Vec::with_capacity(6);
        for a in &d.simple_roots[..6] {
            let mut e = zeros();
            for (k, lam) in weights.iter().enumerate() {
                // Minuscule: pairings with simple coroots lie in {−1, 0, 1};
                // the raising operator moves λ with ⟨λ,α∨⟩ = −1 to λ+α.
                let p = lam.dot(a);
                assert!(p == int(-1) || p.is_zero() || p == int(1));
                if p == int(-1) {
                    e[idx(&(*lam + *a))][k] = 1;
                }
            }
            e_ops.push(e);
        }

        let id = identity();
        let mut sigma = Vec::with_capacity(6);
        for (i, e) in e_ops.iter().enumerate() {
            let f = transpose(e);
            let s = mul(&mul(&add_scaled(&id, e, 1), &add_scaled(&id, &f, -1)), &add_scaled(&id, e, 1));
            // Sanity: monomial with entries ±1, permuting weights like s_i,
            // and squaring to the diagonal torus element m_i = α_i∨(−1).
            for (k, lam) in weights.iter().enumerate() {
                let target = *lam - d.simple_roots[i].scale(lam.dot(&d.simple_roots[i]));
                let ti = idx(&target);
                for (j, row) in s.iter().enumerate() {
                    let v = row[k];
                    if j == ti {
                        assert!(v == 1 || v == -1, "monomial ±1 lift");
                    } else {
                        assert_eq!(v, 0, "monomial lift");
                    }
                }
            }
            let sq = mul(&s, &s);
            for (k, lam) in weights.iter().enumerate() {
                let parity = *lam.dot(&d.simple_roots[i]).numer() & 1;
                let expect = if parity == 0 { 1 } else { -1 };
                assert_eq!(sq[k][k], expect, "σ_i² = m_i");
            }
            sigma.push(s);
        }
        Minuscule { weights, e_ops, sigma }
    }

    /// Lift σ_w for a reduced word of w (left-descent stripping).
    pub fn sigma_of(&self, d: &RootDatum, w: &WeylElement) -> Mat {
        let mut cur = *w;
        let mut out = identity();
        while !cur.is_identity() {
            // Left descent i: w⁻¹(α_i) < 0.
            let inv = cur.inverse();
            let i = (0..6)
                .find(|&i| inv.apply(&d.simple_roots[i]).dot(&d.rho).is_negative())
                .expect("non-identity element has a left descent");
            out = mul(&out, &self.sigma[i]);
            cur = WeylElement::reflection(&d.simple_roots[i]).compose(&cur);
        }
        out
    }

    /// Sign of Ad(σ_w) on the root space of α_i, defined when w(α_i) = α_i:
    /// σ_w E_i σ_w⁻¹ = ±E_i.
    pub fn ad_sign(&self, sigma_w: &Mat, i: usize) -> i64 {
        let conj = mul(&mul(sigma_w, &self.e_ops[i]), &transpose(sigma_w));
        if conj == self.e_ops[i] {
            1
        } else if conj == neg(&self.e_ops[i]) {
            -1
        } else {
            panic!("Ad(σ_w) does not preserve the α_{i} root space");
        }
    }
}
