//! Vector fields sum f_i d/dx_i acting on the coordinate ring, with the Lie
//! bracket and the p-th power operation of characteristic p.

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use std::fmt;

/// A derivation of the polynomial ring relative to the base field, stored by
/// its coefficient on each coordinate field d/dx_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: PolyRing,
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(ring: &PolyRing, coeffs: Vec<Poly>) -> Result<Derivation> {
        if coeffs.len() != ring.nvars() || coeffs.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Derivation { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &PolyRing) -> Derivation {
        Derivation { ring: ring.clone(), coeffs: vec![ring.zero(); ring.nvars()] }
    }

    /// The coordinate field d/dx_i.
    pub fn coordinate(ring: &PolyRing, i: usize) -> Derivation {
        let mut coeffs = vec![ring.zero(); ring.nvars()];
        coeffs[i] = ring.one();
        Derivation { ring: ring.clone(), coeffs }
    }

    #[inline]
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Applies the derivation to a polynomial.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = self.ring.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&f.partial_derivative(i)));
        }
        out
    }

    /// k-fold operator iterate applied to f.
    pub fn apply_iterated(&self, f: &Poly, k: u64) -> Poly {
        let mut out = f.clone();
        for _ in 0..k {
            out = self.apply(&out);
        }
        out
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(Derivation { ring: self.ring.clone(), coeffs })
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn scale_residue(&self, c: u64) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Lie bracket of vector fields: the coefficient of d/dx_i in [D1, D2]
    /// is D1(g_i) - D2(f_i).
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let coeffs = (0..self.ring.nvars())
            .map(|i| self.apply(&other.coeffs[i]).sub(&other.apply(&self.coeffs[i])))
            .collect();
        Ok(Derivation { ring: self.ring.clone(), coeffs })
    }

    /// The restricted power D^[p]: the derivation whose value on each
    /// generator x_i is the p-fold operator iterate D^p(x_i).
    pub fn p_power(&self) -> Derivation {
        let p = self.ring.prime().value();
        let coeffs = (0..self.ring.nvars())
            .map(|i| self.apply_iterated(&self.ring.var(i), p))
            .collect();
        Derivation { ring: self.ring.clone(), coeffs }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*d/d{}", c, self.ring.var_name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Prime;

    fn ring(p: u64, vars: &[(&str, bool)]) -> PolyRing {
        PolyRing::new(Prime::new(p).unwrap(), vars).unwrap()
    }

    #[test]
    fn coordinate_p_power_vanishes() {
        // (d/dx)^[3] = 0 over F_3[x]: iterate three times on x
        let r = ring(3, &[("x", false)]);
        let d = Derivation::coordinate(&r, 0);
        assert_eq!(d.apply_iterated(&r.var(0), 3), r.zero());
        assert!(d.p_power().is_zero());
    }

    #[test]
    fn euler_field_is_fixed_by_p_power() {
        for p in [3u64, 5] {
            let r = ring(p, &[("x", false)]);
            let euler = Derivation::new(&r, vec![r.var(0)]).unwrap();
            assert_eq!(euler.p_power(), euler);
        }
    }

    #[test]
    fn zero_p_power() {
        let r = ring(3, &[("x", false), ("y", false)]);
        assert!(Derivation::zero(&r).p_power().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let r = ring(5, &[("x", false)]);
        let d = Derivation::coordinate(&r, 0);
        let euler = Derivation::new(&r, vec![r.var(0)]).unwrap();
        // [d/dx, x d/dx] = d/dx
        assert_eq!(d.bracket(&euler).unwrap(), d);
        // [D, D] = 0
        assert!(euler.bracket(&euler).unwrap().is_zero());
        // coordinate fields commute
        let rxy = ring(5, &[("x", false), ("y", false)]);
        let dx = Derivation::coordinate(&rxy, 0);
        let dy = Derivation::coordinate(&rxy, 1);
        assert!(dx.bracket(&dy).unwrap().is_zero());
    }
}
