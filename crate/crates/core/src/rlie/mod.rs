//! Restricted Lie algebras over F_p and over polynomial rings: brackets,
//! the s_i correction coefficients, p-power operations, and the identity
//! checks built on them.
//!
//! The coefficients s_i(v, u) are read off from ad(vt + u)^(p-1)(v), expanded
//! in the algebra extended by a central variable t. That expansion is the
//! definition, so it doubles as the oracle for every identity in this module.

mod abstract_lie;

pub use abstract_lie::{AbstractElt, AbstractRestrictedLie};

use crate::error::{Error, Result};
use crate::ffpoly::{Derivation, Poly, PolyRing};
use std::fmt;

/// Minimal operations every Lie-algebra element type supports.
pub trait LieOps: Clone + PartialEq + Sized {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn bracket(&self, other: &Self) -> Self;
    /// Multiplication by a field residue.
    fn scale_residue(&self, c: u64) -> Self;
    fn prime_value(&self) -> u64;
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Element types carrying a p-power operation.
pub trait RestrictedPower: LieOps {
    fn p_power(&self) -> Self;
}

/// The coefficients s_1, ..., s_(p-1): s_i is the coefficient of t^(i-1) in
/// ad(vt + u)^(p-1)(v).
pub fn si_coefficients_generic<T: LieOps>(v: &T, u: &T) -> Vec<T> {
    let p = v.prime_value() as usize;
    // w holds a polynomial in t with coefficients in the algebra; start at v.
    let mut w: Vec<T> = vec![v.clone()];
    for _ in 0..(p - 1) {
        let mut next: Vec<T> = vec![v.zero_like(); w.len() + 1];
        for (j, wj) in w.iter().enumerate() {
            next[j] = next[j].add(&u.bracket(wj));
            next[j + 1] = next[j + 1].add(&v.bracket(wj));
        }
        w = next;
    }
    w.truncate(p - 1);
    w
}

/// sum_i s_i(v, u) / i, the correction term of the Jacobson identity.
pub fn jacobson_sum<T: LieOps>(v: &T, u: &T) -> T {
    let p = crate::ffpoly::Prime::new(v.prime_value()).expect("element prime is validated");
    let mut acc = v.zero_like();
    for (k, s) in si_coefficients_generic(v, u).iter().enumerate() {
        let i = (k + 1) as u64;
        acc = acc.add(&s.scale_residue(p.inv(i).expect("1 <= i < p")));
    }
    acc
}

/// Checks (v + u)^[p] = v^[p] + u^[p] + sum_i s_i(v, u)/i exactly.
pub fn jacobson_check_generic<T: RestrictedPower>(v: &T, u: &T) -> bool {
    let lhs = v.add(u).p_power();
    let rhs = v.p_power().add(&u.p_power()).add(&jacobson_sum(v, u));
    lhs == rhs
}

/// Checks sum_i s_i(v, u-v)/i = -sum_i s_i(-v, u)/i exactly.
pub fn l1123_check_generic<T: LieOps>(v: &T, u: &T) -> bool {
    let lhs = jacobson_sum(v, &u.sub(v));
    let rhs = jacobson_sum(&v.neg(), u).neg();
    lhs == rhs
}

/// The matrix algebra gl_n over a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLieAlgebra {
    ring: PolyRing,
    n: usize,
}

impl MatrixLieAlgebra {
    pub fn gl(ring: &PolyRing, n: usize) -> MatrixLieAlgebra {
        assert!(n >= 1, "matrix rank must be at least 1");
        MatrixLieAlgebra { ring: ring.clone(), n }
    }

    #[inline]
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Dimension as an O-module: n^2.
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn zero(&self) -> LieElt {
        LieElt {
            algebra: self.clone(),
            entries: vec![self.ring.zero(); self.n * self.n],
        }
    }

    pub fn identity(&self) -> LieElt {
        let mut m = self.zero();
        for i in 0..self.n {
            m.entries[i * self.n + i] = self.ring.one();
        }
        m
    }

    /// The elementary matrix E_{ab} (0-indexed).
    pub fn basis_elt(&self, a: usize, b: usize) -> LieElt {
        let mut m = self.zero();
        m.entries[a * self.n + b] = self.ring.one();
        m
    }

    pub fn from_entries(&self, entries: Vec<Poly>) -> Result<LieElt> {
        if entries.len() != self.n * self.n || entries.iter().any(|e| e.ring() != &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(LieElt { algebra: self.clone(), entries })
    }

    pub fn diag(&self, d: &[u64]) -> LieElt {
        let mut m = self.zero();
        for (i, &c) in d.iter().enumerate() {
            m.entries[i * self.n + i] = self.ring.constant(c);
        }
        m
    }
}

/// An n x n matrix with polynomial entries, seen as an element of gl_n(O).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElt {
    algebra: MatrixLieAlgebra,
    entries: Vec<Poly>,
}

impl LieElt {
    #[inline]
    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.algebra.n
    }

    pub fn entry(&self, a: usize, b: usize) -> &Poly {
        &self.entries[a * self.algebra.n + b]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn set_entry(&mut self, a: usize, b: usize, f: Poly) {
        assert!(f.ring() == &self.algebra.ring);
        self.entries[a * self.algebra.n + b] = f;
    }

    fn assert_compatible(&self, other: &LieElt) {
        assert!(self.algebra == other.algebra, "Lie algebra mismatch");
    }

    pub fn checked_pair<'a>(&'a self, other: &'a LieElt) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &LieElt) -> LieElt {
        self.assert_compatible(other);
        let n = self.algebra.n;
        let mut out = self.algebra.zero();
        for a in 0..n {
            for b in 0..n {
                let mut acc = self.algebra.ring.zero();
                for c in 0..n {
                    let x = self.entry(a, c);
                    let y = other.entry(c, b);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(y));
                }
                out.entries[a * n + b] = acc;
            }
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> LieElt {
        LieElt {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|e| e.mul(f)).collect(),
        }
    }

    /// Entrywise application of a derivation to the matrix coefficients.
    pub fn apply_derivation(&self, d: &Derivation) -> LieElt {
        LieElt {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|e| d.apply(e)).collect(),
        }
    }

    /// Matrix-vector product over the ring.
    pub fn mul_vector(&self, v: &[Poly]) -> Vec<Poly> {
        let n = self.algebra.n;
        (0..n)
            .map(|a| {
                let mut acc = self.algebra.ring.zero();
                for b in 0..n {
                    if !self.entry(a, b).is_zero() && !v[b].is_zero() {
                        acc = acc.add(&self.entry(a, b).mul(&v[b]));
                    }
                }
                acc
            })
            .collect()
    }
}

impl LieOps for LieElt {
    fn zero_like(&self) -> Self {
        self.algebra.zero()
    }

    fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        LieElt {
            algebra: self.algebra.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        LieElt {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    fn bracket(&self, other: &Self) -> Self {
        self.mat_mul(other).sub(&other.mat_mul(self))
    }

    fn scale_residue(&self, c: u64) -> Self {
        LieElt {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    fn prime_value(&self) -> u64 {
        self.algebra.ring.prime().value()
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl RestrictedPower for LieElt {
    /// v^[p] = v^p, the p-th matrix power.
    fn p_power(&self) -> Self {
        let p = self.prime_value();
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.mat_mul(self);
        }
        acc
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.algebra.n;
        write!(f, "[")?;
        for a in 0..n {
            if a > 0 {
                write!(f, "; ")?;
            }
            for b in 0..n {
                if b > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(a, b))?;
            }
        }
        write!(f, "]")
    }
}

/// s_i coefficients for matrix elements, with an algebra compatibility check.
pub fn si_coefficients(v: &LieElt, u: &LieElt) -> Result<Vec<LieElt>> {
    v.checked_pair(u)?;
    Ok(si_coefficients_generic(v, u))
}

/// Jacobson identity check for matrix elements.
pub fn jacobson_check(v: &LieElt, u: &LieElt) -> Result<bool> {
    v.checked_pair(u)?;
    Ok(jacobson_check_generic(v, u))
}

/// Check of the truncated-sum identity relating s_i(v, u-v) and s_i(-v, u).
pub fn l1123_check(v: &LieElt, u: &LieElt) -> Result<bool> {
    v.checked_pair(u)?;
    Ok(l1123_check_generic(v, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Prime;

    fn gl(p: u64, n: usize) -> MatrixLieAlgebra {
        let ring = PolyRing::scalar(Prime::new(p).unwrap());
        MatrixLieAlgebra::gl(&ring, n)
    }

    #[test]
    fn si_vanishes_for_commuting_and_zero() {
        let a = gl(3, 2);
        let d1 = a.diag(&[1, 2]);
        let d2 = a.diag(&[2, 1]);
        assert!(si_coefficients(&d1, &d2).unwrap().iter().all(|s| s.is_zero()));
        let e12 = a.basis_elt(0, 1);
        assert!(si_coefficients(&e12, &a.zero()).unwrap().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn si_e12_e21_gl2_mod3() {
        // hand expansion of ad(vt+u)^2(v) for v = E12, u = E21:
        // step 1: [u, v] = -h with h = diag(1, -1)
        // step 2: [u, -h] = -2 E21 and [v, -h] = 2 E12
        let a = gl(3, 2);
        let v = a.basis_elt(0, 1);
        let u = a.basis_elt(1, 0);
        let s = si_coefficients(&v, &u).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], u.scale_residue(1)); // -2 = 1 mod 3
        assert_eq!(s[1], v.scale_residue(2));
    }

    #[test]
    fn p_power_examples() {
        let a = gl(3, 2);
        assert!(a.basis_elt(0, 1).p_power().is_zero());
        let d = a.diag(&[1, 2]);
        assert_eq!(d.p_power(), d); // Fermat on the diagonal
    }

    #[test]
    fn jacobson_small_cases() {
        let a = gl(3, 2);
        let v = a.basis_elt(0, 1);
        let u = a.basis_elt(1, 0);
        assert!(jacobson_check(&v, &u).unwrap());
        assert!(jacobson_check(&a.zero(), &u).unwrap());
        let d1 = a.diag(&[1, 2]);
        let d2 = a.diag(&[2, 2]);
        assert!(jacobson_check(&d1, &d2).unwrap());
        assert!(jacobson_sum(&d1, &d2).is_zero());
    }

    #[test]
    fn l1123_trivial_cases() {
        let a = gl(5, 2);
        let u = a.basis_elt(1, 0);
        assert!(l1123_check(&a.zero(), &u).unwrap());
        let v = a.basis_elt(0, 1);
        assert!(l1123_check(&v, &v).unwrap());
    }

    #[test]
    fn algebra_mismatch_is_reported() {
        let a3 = gl(3, 2);
        let a5 = gl(5, 2);
        assert_eq!(
            jacobson_check(&a3.zero(), &a5.zero()).unwrap_err(),
            Error::AlgebraMismatch
        );
    }
}
