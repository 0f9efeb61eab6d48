use crate::field::Fq;

use super::{PolyRing, Polynomial};

/// Largest modulus degree for which the Frobenius matrix is materialized
/// (`m²` entries of `u32`).
const MAX_MATRIX_DEGREE: usize = 2048;

/// Applies `h ↦ h^q mod m`.
///
/// Either by repeated squaring, or through the precomputed matrix whose
/// columns are `x^(q·i) mod m`, which turns each application into a
/// matrix-vector product.
pub(crate) enum Frobenius<'r> {
    Powering {
        ring: &'r PolyRing,
        modulus: Polynomial,
    },
    Matrix {
        ring: &'r PolyRing,
        modulus: Polynomial,
        // cols[i] = x^(q*i) mod modulus, length deg(modulus)
        cols: Vec<Vec<u32>>,
    },
}

impl<'r> Frobenius<'r> {
    /// `expected_uses` is how many times the caller will apply the map; it
    /// decides whether the matrix is worth building.
    pub fn new(ring: &'r PolyRing, modulus: &Polynomial, expected_uses: usize) -> Self {
        let m = modulus.deg();
        let q = ring.field().q();
        let log_q = 64 - q.leading_zeros() as usize;
        let mulmod_cost = 2 * m * m;
        let powering = expected_uses.saturating_mul(log_q * 3 / 2).saturating_mul(mulmod_cost);
        let column_cost = (q as usize).min(m + mulmod_cost / m.max(1));
        let matrix = (m * m).saturating_mul(column_cost + expected_uses);
        if !(8..=MAX_MATRIX_DEGREE).contains(&m) || matrix >= powering {
            return Frobenius::Powering { ring, modulus: modulus.clone() };
        }

        let x_q = ring.powmod(&Polynomial::x(), q as u128, modulus);
        let mut cols = Vec::with_capacity(m);
        let mut cur = Polynomial::one();
        for _ in 0..m {
            let mut col: Vec<u32> = cur.coeffs().iter().map(|c| c.0 as u32).collect();
            col.resize(m, 0);
            cols.push(col);
            cur = if (q as usize) <= m {
                let mut shifted = vec![Fq::ZERO; q as usize];
                shifted.extend_from_slice(cur.coeffs());
                ring.rem(&Polynomial::from_fq(shifted), modulus).expect("nonzero modulus")
            } else {
                ring.mulmod(&cur, &x_q, modulus)
            };
        }
        Frobenius::Matrix { ring, modulus: modulus.clone(), cols }
    }

    pub fn modulus(&self) -> &Polynomial {
        match self {
            Frobenius::Powering { modulus, .. } | Frobenius::Matrix { modulus, .. } => modulus,
        }
    }

    /// `h^q mod modulus`; `h` must already be reduced.
    pub fn apply(&self, h: &Polynomial) -> Polynomial {
        match self {
            Frobenius::Powering { ring, modulus } => ring.powmod(h, ring.field().q() as u128, modulus),
            Frobenius::Matrix { ring, cols, .. } => {
                let lazy = ring.lazy();
                let m = cols.len();
                let mut out = vec![0u64; m];
                let mut pending = 0usize;
                for (hi, col) in h.coeffs().iter().zip(cols) {
                    if hi.0 == 0 {
                        continue;
                    }
                    for (o, &c) in out.iter_mut().zip(col) {
                        *o += hi.0 * c as u64;
                    }
                    pending += 1;
                    if pending == lazy.batch {
                        lazy.reduce_all(&mut out);
                        pending = 0;
                    }
                }
                Polynomial::from_fq(out.into_iter().map(|x| Fq(x % lazy.q)).collect())
            }
        }
    }

    /// For the powering variant, switch to a divisor of the current modulus
    /// so later applications work on smaller polynomials. The matrix variant
    /// keeps its modulus. Returns the modulus now in effect.
    pub fn shrink_to(&mut self, divisor: &Polynomial) -> &Polynomial {
        if let Frobenius::Powering { modulus, .. } = self {
            *modulus = divisor.clone();
        }
        self.modulus()
    }
}
