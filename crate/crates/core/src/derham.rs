//! Differential forms on the model spaces, the exterior derivative, wedge
//! products, and the Cartier operator with its fixed-point and kernel tests.
//!
//! Degree-q forms keep one polynomial coefficient per strictly increasing
//! index tuple (i_1 < ... < i_q). The Frobenius twist is represented on the
//! same ring: over F_p the twist is canonically the same scheme, with the
//! twisted coordinate y_i standing for x_i^p. `cartier` returns a form whose
//! variables are read through that identification.

use crate::error::{Error, Result};
use crate::ffpoly::{write_term, Derivation, Poly, PolyRing};
use std::collections::BTreeMap;
use std::fmt;

/// A differential form of fixed degree with sparse polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    ring: PolyRing,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Poly>,
}

/// Output of the Cartier operator: a 1-form on the Frobenius twist, carried
/// on the same ring under the y_i = x_i^p identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierResult {
    value: DiffForm,
}

impl CartierResult {
    pub fn value(&self) -> &DiffForm {
        &self.value
    }

    pub fn into_value(self) -> DiffForm {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Sorts an index tuple, returning the permutation sign; None on a repeat.
fn sort_indices(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut swaps = 0usize;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, swaps % 2 == 1))
}

impl DiffForm {
    pub fn zero(ring: &PolyRing, degree: usize) -> DiffForm {
        DiffForm { ring: ring.clone(), degree, coeffs: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn from_poly(f: Poly) -> DiffForm {
        let ring = f.ring().clone();
        let mut form = DiffForm::zero(&ring, 0);
        if !f.is_zero() {
            form.coeffs.insert(Vec::new(), f);
        }
        form
    }

    /// The coordinate 1-form dx_i.
    pub fn d_var(ring: &PolyRing, i: usize) -> DiffForm {
        let mut form = DiffForm::zero(ring, 1);
        form.coeffs.insert(vec![i], ring.one());
        form
    }

    /// f * dx_{i_1} ^ ... ^ dx_{i_q} for an arbitrary index tuple; the tuple
    /// is sorted and the sign absorbed into the coefficient.
    pub fn monomial_form(f: Poly, indices: &[usize]) -> Result<DiffForm> {
        let ring = f.ring().clone();
        if indices.iter().any(|&i| i >= ring.nvars()) {
            return Err(Error::DegreeError { expected: ring.nvars(), got: indices.len() });
        }
        let mut form = DiffForm::zero(&ring, indices.len());
        if f.is_zero() {
            return Ok(form);
        }
        match sort_indices(indices.to_vec()) {
            None => Ok(form),
            Some((idx, flip)) => {
                let f = if flip { f.neg() } else { f };
                form.coeffs.insert(idx, f);
                Ok(form)
            }
        }
    }

    #[inline]
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&[usize], &Poly)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// The coefficient of dx_{i_1}^...^dx_{i_q} for a sorted tuple.
    pub fn coeff(&self, indices: &[usize]) -> Poly {
        self.coeffs.get(indices).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn insert(&mut self, indices: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(indices) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&f);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        assert!(
            self.ring == other.ring && self.degree == other.degree,
            "form addition needs matching ring and degree"
        );
        let mut out = self.clone();
        for (idx, f) in &other.coeffs {
            out.insert(idx.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        let mut out = DiffForm::zero(&self.ring, self.degree);
        for (idx, f) in &self.coeffs {
            out.coeffs.insert(idx.clone(), f.neg());
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> DiffForm {
        let mut out = DiffForm::zero(&self.ring, self.degree);
        if f.is_zero() {
            return out;
        }
        for (idx, g) in &self.coeffs {
            out.insert(idx.clone(), g.mul(f));
        }
        out
    }

    pub fn scale_residue(&self, c: u64) -> DiffForm {
        let mut out = DiffForm::zero(&self.ring, self.degree);
        for (idx, g) in &self.coeffs {
            out.insert(idx.clone(), g.scale(c));
        }
        out
    }

    /// Graded-commutative wedge product.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = DiffForm::zero(&self.ring, self.degree + other.degree);
        for (ia, fa) in &self.coeffs {
            for (ib, fb) in &other.coeffs {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                if let Some((sorted, flip)) = sort_indices(idx) {
                    let prod = fa.mul(fb);
                    out.insert(sorted, if flip { prod.neg() } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. Satisfies d(d(f)) = 0.
    pub fn exterior_derivative(&self) -> DiffForm {
        let mut out = DiffForm::zero(&self.ring, self.degree + 1);
        for (idx, f) in &self.coeffs {
            for i in 0..self.ring.nvars() {
                let df = f.partial_derivative(i);
                if df.is_zero() {
                    continue;
                }
                let mut full = Vec::with_capacity(idx.len() + 1);
                full.push(i);
                full.extend_from_slice(idx);
                if let Some((sorted, flip)) = sort_indices(full) {
                    out.insert(sorted, if flip { df.neg() } else { df });
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_derivative().is_zero()
    }

    /// Contraction of a 1-form against a vector field.
    pub fn pairing(&self, d: &Derivation) -> Result<Poly> {
        if self.degree != 1 {
            return Err(Error::DegreeError { expected: 1, got: self.degree });
        }
        if self.ring != *d.ring() {
            return Err(Error::RingMismatch);
        }
        let mut out = self.ring.zero();
        for (idx, f) in &self.coeffs {
            out = out.add(&f.mul(d.coeff(idx[0])));
        }
        Ok(out)
    }

    /// Coefficient of dx_i, for 1-forms.
    pub fn coeff_of_var(&self, i: usize) -> Poly {
        self.coeff(&[i])
    }

    /// Pullback along the ring map x_i -> images[i]: coefficients are
    /// substituted and each dx_i becomes d(images[i]).
    pub fn pullback(&self, target: &PolyRing, images: &[Poly]) -> Result<DiffForm> {
        let mut out = DiffForm::zero(target, self.degree);
        let d_images: Vec<DiffForm> = images
            .iter()
            .map(|g| DiffForm::from_poly(g.clone()).exterior_derivative())
            .collect();
        for (idx, f) in &self.coeffs {
            let mut part = DiffForm::from_poly(f.substitute(target, images)?);
            for &i in idx {
                part = part.wedge(&d_images[i])?;
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// The Cartier operator on closed 1-forms, computed coordinate-wise: the
    /// coordinate fields generate the tangent sheaf and have vanishing
    /// p-power, so the output coefficient on the i-th twisted coordinate is
    /// the p-th root of -(d/dx_i)^(p-1) applied to the i-th coefficient.
    pub fn cartier(&self) -> Result<CartierResult> {
        if self.degree != 1 {
            return Err(Error::DegreeError { expected: 1, got: self.degree });
        }
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        let p = self.ring.prime().value();
        let mut out = DiffForm::zero(&self.ring, 1);
        for i in 0..self.ring.nvars() {
            let f = self.coeff_of_var(i);
            if f.is_zero() {
                continue;
            }
            let d = Derivation::coordinate(&self.ring, i);
            let h = d.apply_iterated(&f, p - 1).neg();
            if h.is_zero() {
                continue;
            }
            let root = h.pth_root().map_err(|_| {
                Error::InternalCartierError(format!(
                    "coefficient of d{} escaped the Frobenius subring",
                    self.ring.var_name(i)
                ))
            })?;
            out.insert(vec![i], root);
        }
        Ok(CartierResult { value: out })
    }

    /// Membership in the C-fixed module: closed and C(w) = w under the
    /// twist identification. Non-closed forms return false.
    pub fn is_c_fixed(&self) -> bool {
        match self.cartier() {
            Ok(c) => *c.value() == *self,
            Err(_) => false,
        }
    }

    /// Membership in the C-kernel module: closed and C(w) = 0.
    pub fn is_c_kernel(&self) -> bool {
        match self.cartier() {
            Ok(c) => c.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, poly) in &self.coeffs {
            for (exps, c) in poly.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write_term(f, &self.ring, c, exps, idx)?;
            }
        }
        Ok(())
    }
}

/// dlog(u) = u^-1 du for a unit monomial u = c * x^m; used by the
/// classification of multiplicative-type structures.
pub fn dlog(u: &Poly) -> Result<DiffForm> {
    if !u.is_unit() {
        return Err(Error::NotAUnit);
    }
    let du = DiffForm::from_poly(u.clone()).exterior_derivative();
    let (c, exps) = u.as_monomial().expect("unit is a monomial");
    let inv_c = u.ring().prime().inv(c)?;
    let inv_exps: Vec<i64> = exps.iter().map(|&e| -e).collect();
    let u_inv = u.ring().monomial(inv_c, inv_exps)?;
    Ok(du.scale(&u_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Prime;

    fn ring(p: u64, vars: &[(&str, bool)]) -> PolyRing {
        PolyRing::new(Prime::new(p).unwrap(), vars).unwrap()
    }

    #[test]
    fn exterior_derivative_examples() {
        // d(x^2) = 2x dx over F_3[x]
        let r = ring(3, &[("x", false)]);
        let f = DiffForm::from_poly(r.monomial(1, vec![2]).unwrap());
        let df = f.exterior_derivative();
        assert_eq!(df, DiffForm::monomial_form(r.monomial(2, vec![1]).unwrap(), &[0]).unwrap());

        // d(x dy) = dx ^ dy over F_3[x, y]
        let rxy = ring(3, &[("x", false), ("y", false)]);
        let w = DiffForm::monomial_form(rxy.var(0), &[1]).unwrap();
        let dw = w.exterior_derivative();
        assert_eq!(dw, DiffForm::monomial_form(rxy.one(), &[0, 1]).unwrap());
    }

    #[test]
    fn d_squared_is_zero() {
        let r = ring(5, &[("x", true), ("y", false), ("z", false)]);
        let f = r
            .monomial(3, vec![-2, 1, 0])
            .unwrap()
            .add(&r.monomial(4, vec![1, 2, 3]).unwrap())
            .add(&r.constant(2));
        let d1 = DiffForm::from_poly(f).exterior_derivative();
        assert!(d1.exterior_derivative().is_zero());
    }

    #[test]
    fn wedge_signs() {
        let r = ring(3, &[("x", false), ("y", false)]);
        let dx = DiffForm::d_var(&r, 0);
        let dy = DiffForm::d_var(&r, 1);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());
        let a = dx.scale(&r.var(0));
        let b = dy.scale(&r.var(1));
        let ab = a.wedge(&b).unwrap();
        let xy = r.var(0).mul(&r.var(1));
        assert_eq!(ab, DiffForm::monomial_form(xy, &[0, 1]).unwrap());
    }

    #[test]
    fn pairing_examples() {
        let r = ring(3, &[("x", true), ("y", false)]);
        let dx = DiffForm::d_var(&r, 0);
        let ddx = Derivation::coordinate(&r, 0);
        let ddy = Derivation::coordinate(&r, 1);
        assert_eq!(dx.pairing(&ddx).unwrap(), r.one());
        assert_eq!(dx.pairing(&ddy).unwrap(), r.zero());
        // <x d/dx, x^-1 dx> = 1 on the Laurent ring
        let euler = Derivation::new(&r, vec![r.var(0), r.zero()]).unwrap();
        let w = dx.scale(&r.monomial(1, vec![-1, 0]).unwrap());
        assert_eq!(w.pairing(&euler).unwrap(), r.one());
        // degree check
        let two_form = dx.wedge(&DiffForm::d_var(&r, 1)).unwrap();
        assert!(matches!(
            two_form.pairing(&ddx),
            Err(Error::DegreeError { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn cartier_examples() {
        // C(x^(p-1) dx) = dy on F_3[x], reading y = x^p
        let r = ring(3, &[("x", false)]);
        let w = DiffForm::monomial_form(r.monomial(1, vec![2]).unwrap(), &[0]).unwrap();
        let c = w.cartier().unwrap();
        assert_eq!(*c.value(), DiffForm::d_var(&r, 0));

        // C(dx) = 0
        let dx = DiffForm::d_var(&r, 0);
        assert!(dx.cartier().unwrap().is_zero());
        assert!(dx.is_c_kernel());
        assert!(!dx.is_c_fixed());

        // C(x^-1 dx) = y^-1 dy: the dlog fixed point
        let rl = ring(3, &[("x", true)]);
        let w = DiffForm::monomial_form(rl.monomial(1, vec![-1]).unwrap(), &[0]).unwrap();
        let c = w.cartier().unwrap();
        assert_eq!(*c.value(), w);
        assert!(w.is_c_fixed());
        assert!(!w.is_c_kernel());
    }

    #[test]
    fn exact_form_in_kernel() {
        // x dx = d(2 x^2) over F_3 is killed by C
        let r = ring(3, &[("x", false)]);
        let w = DiffForm::monomial_form(r.var(0), &[0]).unwrap();
        assert!(w.is_c_kernel());
        // zero form is C-fixed
        assert!(DiffForm::zero(&r, 1).is_c_fixed());
    }

    #[test]
    fn cartier_rejects_non_closed() {
        let r = ring(3, &[("x", false), ("y", false)]);
        // y dx is not closed
        let w = DiffForm::monomial_form(r.var(1), &[0]).unwrap();
        assert_eq!(w.cartier().unwrap_err(), Error::NotClosed);
        assert!(!w.is_c_fixed());
        assert!(!w.is_c_kernel());
    }

    #[test]
    fn dlog_additivity() {
        let r = ring(5, &[("x", true)]);
        let u = r.monomial(2, vec![3]).unwrap();
        let v = r.monomial(4, vec![7]).unwrap();
        let lhs = dlog(&u.mul(&v)).unwrap();
        let rhs = dlog(&u).unwrap().add(&dlog(&v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_chain_rule() {
        // pull x^2 dx back along x -> x^3 + x: d commutes with pullback
        let r = ring(5, &[("x", false)]);
        let img = vec![r.monomial(1, vec![3]).unwrap().add(&r.var(0))];
        let f = r.monomial(1, vec![2]).unwrap();
        let w = DiffForm::from_poly(f.clone()).exterior_derivative();
        let pulled = w.pullback(&r, &img).unwrap();
        let direct = DiffForm::from_poly(f.substitute(&r, &img).unwrap()).exterior_derivative();
        assert_eq!(pulled, direct);
    }
}
