//! Exact arithmetic kernel: sparse multivariate Laurent polynomials over F_p
//! and derivations with their p-power structure.
//!
//! Terms are kept in a sorted map from exponent vectors to nonzero residues,
//! so every polynomial has exactly one representation and equality is
//! structural. Negative exponents are admitted only on variables declared
//! Laurent.

mod derivation;
mod prime;

pub use derivation::Derivation;
pub use prime::{fp_inv, Prime};

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Var {
    name: String,
    laurent: bool,
}

#[derive(Debug, PartialEq, Eq)]
struct RingRepr {
    prime: Prime,
    vars: Vec<Var>,
}

/// A coordinate ring F_p[x_1, ..., x_n] with an optional Laurent localization
/// per variable. Cheap to clone; two rings compare equal when they have the
/// same prime and the same ordered variable declarations.
#[derive(Debug, Clone)]
pub struct PolyRing(Arc<RingRepr>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    /// Builds a ring from `(name, laurent)` declarations. Names must be unique.
    pub fn new(prime: Prime, vars: &[(&str, bool)]) -> Result<PolyRing> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, _) in vars {
            if !seen.insert(*name) {
                return Err(Error::InvalidStructureConstants(format!(
                    "duplicate variable name {}",
                    name
                )));
            }
        }
        Ok(PolyRing(Arc::new(RingRepr {
            prime,
            vars: vars
                .iter()
                .map(|(n, l)| Var { name: n.to_string(), laurent: *l })
                .collect(),
        })))
    }

    /// A ring with no variables: the field F_p itself.
    pub fn scalar(prime: Prime) -> PolyRing {
        PolyRing(Arc::new(RingRepr { prime, vars: Vec::new() }))
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.0.prime
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.vars[i].name
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.0.vars[i].laurent
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v.name == name)
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Poly {
        let mut poly = self.zero();
        let c = self.prime().reduce(c);
        if c != 0 {
            poly.terms.insert(vec![0; self.nvars()], c);
        }
        poly
    }

    pub fn constant_i64(&self, c: i64) -> Poly {
        self.constant(self.prime().reduce_i64(c))
    }

    /// The generator x_i.
    pub fn var(&self, i: usize) -> Poly {
        let mut exps = vec![0i64; self.nvars()];
        exps[i] = 1;
        self.monomial(1, exps).expect("generator exponent is valid")
    }

    /// A single term c * x^exps, validated against the Laurent declarations.
    pub fn monomial(&self, c: u64, exps: Vec<i64>) -> Result<Poly> {
        let mut poly = self.zero();
        poly.add_term(&exps, c)?;
        Ok(poly)
    }

    /// Doubles the ring: every variable gets a primed twin appended, used for
    /// pullbacks along group multiplication.
    pub fn doubled(&self, suffix: &str) -> PolyRing {
        let mut vars = self.0.vars.clone();
        for v in &self.0.vars {
            vars.push(Var { name: format!("{}{}", v.name, suffix), laurent: v.laurent });
        }
        PolyRing(Arc::new(RingRepr { prime: self.prime(), vars }))
    }
}

/// A sparse multivariate (Laurent) polynomial in canonical form: no zero
/// coefficients, exponent vectors ordered lexicographically by the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Vec<i64>, u64>,
}

impl Poly {
    #[inline]
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], u64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    /// Returns `Some(c)` when the polynomial is the constant c (possibly 0).
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                if exps.iter().all(|&e| e == 0) {
                    Some(*c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Returns `(coeff, exps)` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(u64, &[i64])> {
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            Some((*c, exps.as_slice()))
        } else {
            None
        }
    }

    /// True when the polynomial is a unit of the ring: a nonzero constant
    /// times a monomial supported on Laurent variables only.
    pub fn is_unit(&self) -> bool {
        match self.as_monomial() {
            Some((_, exps)) => exps
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || self.ring.is_laurent(i)),
            None => false,
        }
    }

    fn add_term(&mut self, exps: &[i64], coeff: u64) -> Result<()> {
        let p = self.ring.prime();
        let coeff = p.reduce(coeff);
        if coeff == 0 {
            return Ok(());
        }
        debug_assert_eq!(exps.len(), self.ring.nvars());
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 && !self.ring.is_laurent(i) {
                return Err(Error::NegativeExponent { var: self.ring.var_name(i).to_string() });
            }
        }
        match self.terms.entry(exps.to_vec()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = p.add(*o.get(), coeff);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert!(self.ring == other.ring, "polynomial ring mismatch");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps, *c).expect("existing terms are valid");
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let p = self.ring.prime();
        let mut out = self.ring.zero();
        for (exps, c) in &self.terms {
            out.terms.insert(exps.clone(), p.neg(*c));
        }
        out
    }

    pub fn scale(&self, c: u64) -> Poly {
        let p = self.ring.prime();
        let c = p.reduce(c);
        let mut out = self.ring.zero();
        if c == 0 {
            return out;
        }
        for (exps, a) in &self.terms {
            out.terms.insert(exps.clone(), p.mul(*a, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.checked_mul(other).expect("polynomial ring mismatch or exponent overflow")
    }

    /// Exact product; reports ring mismatch instead of panicking.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let p = self.ring.prime();
        let mut out = self.ring.zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut exps = Vec::with_capacity(ea.len());
                for (x, y) in ea.iter().zip(eb.iter()) {
                    exps.push(x.checked_add(*y).ok_or(Error::ExponentOverflow)?);
                }
                out.add_term(&exps, p.mul(*ca, *cb))?;
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.add(other))
    }

    /// k-th power by repeated squaring.
    pub fn pow(&self, k: u64) -> Result<Poly> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to x_i; exponents act mod p.
    pub fn partial_derivative(&self, i: usize) -> Poly {
        let p = self.ring.prime();
        let mut out = self.ring.zero();
        for (exps, c) in &self.terms {
            let e = exps[i];
            let factor = p.reduce_i64(e);
            if factor == 0 {
                continue;
            }
            let mut new_exps = exps.clone();
            new_exps[i] = e - 1;
            // e = 0 contributes factor 0, so e - 1 < 0 only happens on
            // exponents that were already negative, hence Laurent.
            out.add_term(&new_exps, p.mul(*c, factor)).expect("derivative keeps Laurent validity");
        }
        out
    }

    /// The p-th power, computed by the Frobenius shortcut: over F_p,
    /// (sum c x^e)^p = sum c x^(p e).
    pub fn frobenius(&self) -> Result<Poly> {
        let p = self.ring.prime().value() as i64;
        let mut out = self.ring.zero();
        for (exps, c) in &self.terms {
            let mut new_exps = Vec::with_capacity(exps.len());
            for &e in exps {
                new_exps.push(e.checked_mul(p).ok_or(Error::ExponentOverflow)?);
            }
            out.terms.insert(new_exps, *c);
        }
        Ok(out)
    }

    /// Inverse of `frobenius`: requires every exponent divisible by p.
    /// Coefficients are untouched since F_p is fixed by x -> x^p.
    pub fn pth_root(&self) -> Result<Poly> {
        let p = self.ring.prime().value() as i64;
        let mut out = self.ring.zero();
        for (exps, c) in &self.terms {
            let mut new_exps = Vec::with_capacity(exps.len());
            for &e in exps {
                if e % p != 0 {
                    return Err(Error::NotInFrobeniusSubring);
                }
                new_exps.push(e / p);
            }
            out.terms.insert(new_exps, *c);
        }
        Ok(out)
    }

    /// Image under the ring map sending x_i to `images[i]`. A variable that
    /// occurs with a negative exponent must map to a unit monomial.
    pub fn substitute(&self, target: &PolyRing, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        for img in images {
            if img.ring() != target {
                return Err(Error::RingMismatch);
            }
        }
        let p = self.ring.prime();
        let mut out = target.zero();
        for (exps, c) in &self.terms {
            let mut acc = target.constant(*c);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = if e > 0 {
                    images[i].pow(e as u64)?
                } else {
                    let (mc, mexps) = images[i].as_monomial().ok_or(Error::NotAUnit)?;
                    let inv_c = p.inv(mc)?;
                    let inv_exps: Vec<i64> = mexps.iter().map(|&x| -x).collect();
                    target.monomial(inv_c, inv_exps)?.pow((-e) as u64)?
                };
                acc = acc.checked_mul(&factor)?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering in the CLI expression grammar, for example
    /// `2*x^3*y^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, self.ring(), *c, exps, &[])?;
        }
        Ok(())
    }
}

/// Shared term renderer: coefficient, variable powers, then form symbols.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    ring: &PolyRing,
    coeff: u64,
    exps: &[i64],
    form_vars: &[usize],
) -> fmt::Result {
    let has_factor = exps.iter().any(|&e| e != 0) || !form_vars.is_empty();
    let mut lead = true;
    if coeff != 1 || !has_factor {
        write!(f, "{}", coeff)?;
        lead = false;
    }
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !lead {
            write!(f, "*")?;
        }
        lead = false;
        write!(f, "{}", ring.var_name(i))?;
        if e != 1 {
            write!(f, "^{}", e)?;
        }
    }
    for (k, &i) in form_vars.iter().enumerate() {
        if k == 0 {
            if !lead {
                write!(f, "*")?;
            }
        } else {
            write!(f, "^")?;
        }
        lead = false;
        write!(f, "d{}", ring.var_name(i))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_x(p: u64, laurent: bool) -> PolyRing {
        PolyRing::new(Prime::new(p).unwrap(), &[("x", laurent)]).unwrap()
    }

    #[test]
    fn mul_example_mod3() {
        // (x+1)(x+2) = x^2 + 3x + 2 = x^2 + 2 over F_3
        let r = ring_x(3, false);
        let f = r.var(0).add(&r.constant(1));
        let g = r.var(0).add(&r.constant(2));
        let prod = f.mul(&g);
        let expect = r.monomial(1, vec![2]).unwrap().add(&r.constant(2));
        assert_eq!(prod, expect);
        assert_eq!(prod.to_string(), "2 + x^2");
    }

    #[test]
    fn mul_identity_and_laurent_unit() {
        let r = ring_x(3, true);
        let f = r.monomial(2, vec![5]).unwrap().add(&r.constant(1));
        assert_eq!(f.mul(&r.one()), f);
        let x = r.var(0);
        let xinv = r.monomial(1, vec![-1]).unwrap();
        assert_eq!(x.mul(&xinv), r.one());
    }

    #[test]
    fn ring_mismatch_reported() {
        let r1 = ring_x(3, false);
        let r2 = ring_x(5, false);
        assert_eq!(r1.one().checked_mul(&r2.one()), Err(Error::RingMismatch));
    }

    #[test]
    fn negative_exponent_rejected_on_polynomial_variable() {
        let r = ring_x(3, false);
        assert!(matches!(r.monomial(1, vec![-1]), Err(Error::NegativeExponent { .. })));
    }

    #[test]
    fn derivative_examples() {
        // d/dx (x^3) = 0 over F_3
        let r = ring_x(3, false);
        let f = r.monomial(1, vec![3]).unwrap();
        assert!(f.partial_derivative(0).is_zero());

        // d/dx (x^-1) = 2 x^-2 over F_3 Laurent
        let rl = ring_x(3, true);
        let g = rl.monomial(1, vec![-1]).unwrap();
        assert_eq!(g.partial_derivative(0), rl.monomial(2, vec![-2]).unwrap());

        // d/dy of x is 0
        let rxy =
            PolyRing::new(Prime::new(3).unwrap(), &[("x", false), ("y", false)]).unwrap();
        assert!(rxy.var(0).partial_derivative(1).is_zero());
    }

    #[test]
    fn pth_root_examples() {
        let r = ring_x(3, false);
        let x3 = r.monomial(1, vec![3]).unwrap();
        assert_eq!(x3.pth_root().unwrap(), r.var(0));

        let rxy =
            PolyRing::new(Prime::new(3).unwrap(), &[("x", false), ("y", false)]).unwrap();
        let f = rxy.monomial(2, vec![6, 3]).unwrap();
        let root = f.pth_root().unwrap();
        // oracle: cube the answer and compare
        assert_eq!(root.pow(3).unwrap(), f);
        assert_eq!(root, rxy.monomial(2, vec![2, 1]).unwrap());

        let x2 = r.monomial(1, vec![2]).unwrap();
        assert_eq!(x2.pth_root(), Err(Error::NotInFrobeniusSubring));
    }

    #[test]
    fn frobenius_is_pth_power() {
        let r = ring_x(5, true);
        let f = r.monomial(2, vec![3]).unwrap().add(&r.monomial(4, vec![-1]).unwrap());
        assert_eq!(f.frobenius().unwrap(), f.pow(5).unwrap());
        assert_eq!(f.frobenius().unwrap().pth_root().unwrap(), f);
    }

    #[test]
    fn substitution_inverts_units() {
        // x -> x^-1 on F_3[x^(+/-1)]
        let r = ring_x(3, true);
        let f = r.monomial(2, vec![2]).unwrap().add(&r.constant(1));
        let img = vec![r.monomial(1, vec![-1]).unwrap()];
        let g = f.substitute(&r, &img).unwrap();
        assert_eq!(g, r.monomial(2, vec![-2]).unwrap().add(&r.constant(1)));
    }

    #[test]
    fn display_round_shapes() {
        let r = PolyRing::new(Prime::new(3).unwrap(), &[("x", true), ("y", false)]).unwrap();
        let f = r.monomial(2, vec![3, -0]).unwrap();
        assert_eq!(f.to_string(), "2*x^3");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.constant(1).to_string(), "1");
        let g = r.monomial(1, vec![-1, 0]).unwrap();
        assert_eq!(g.to_string(), "x^-1");
    }
}
