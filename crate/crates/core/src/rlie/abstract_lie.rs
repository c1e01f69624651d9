//! Restricted Lie algebras given by structure constants: a finite basis, an
//! antisymmetric bracket table, and the p-th power of each basis element.
//! Construction validates Jacobi and the restricted axiom on the basis;
//! everything downstream presupposes both.

use super::{jacobson_sum, LieElt, LieOps, MatrixLieAlgebra, RestrictedPower};
use crate::error::{Error, Result};
use crate::ffpoly::{Derivation, Poly, PolyRing, Prime};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct AbstractRestrictedLie {
    prime: Prime,
    names: Vec<String>,
    /// bracket[i][j] = coordinates of [e_i, e_j]; antisymmetric by build.
    bracket: Vec<Vec<Vec<u64>>>,
    /// pth[i] = coordinates of e_i^[p].
    pth: Vec<Vec<u64>>,
}

impl AbstractRestrictedLie {
    /// Builds and validates an algebra. `brackets` lists [e_i, e_j] for
    /// i < j (missing pairs are zero); coordinates are reduced mod p.
    pub fn new(
        prime: Prime,
        names: Vec<String>,
        brackets: &BTreeMap<(usize, usize), Vec<i64>>,
        pth: &[Vec<i64>],
    ) -> Result<Arc<AbstractRestrictedLie>> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::InvalidStructureConstants("empty basis".into()));
        }
        if pth.len() != dim {
            return Err(Error::InvalidStructureConstants(format!(
                "expected {} p-th power rows, got {}",
                dim,
                pth.len()
            )));
        }
        let reduce = |v: &[i64]| -> Result<Vec<u64>> {
            if v.len() != dim {
                return Err(Error::InvalidStructureConstants(format!(
                    "coordinate vector of length {}, expected {}",
                    v.len(),
                    dim
                )));
            }
            Ok(v.iter().map(|&c| prime.reduce_i64(c)).collect())
        };
        let mut table = vec![vec![vec![0u64; dim]; dim]; dim];
        for (&(i, j), coords) in brackets {
            if i >= j || j >= dim {
                return Err(Error::InvalidStructureConstants(format!(
                    "bracket index [{},{}] out of range (need i < j < {})",
                    i, j, dim
                )));
            }
            let c = reduce(coords)?;
            table[i][j] = c.clone();
            table[j][i] = c.iter().map(|&x| prime.neg(x)).collect();
        }
        let alg = AbstractRestrictedLie {
            prime,
            names,
            bracket: table,
            pth: pth.iter().map(|row| reduce(row)).collect::<Result<Vec<_>>>()?,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let basis = |k: usize| -> Vec<u64> {
            let mut v = vec![0u64; dim];
            v[k] = 1;
            v
        };
        // Jacobi on basis triples.
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let a =
                        self.bracket_coords(&self.bracket_coords(&basis(i), &basis(j)), &basis(k));
                    let b =
                        self.bracket_coords(&self.bracket_coords(&basis(j), &basis(k)), &basis(i));
                    let c =
                        self.bracket_coords(&self.bracket_coords(&basis(k), &basis(i)), &basis(j));
                    let sum: Vec<u64> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((&x, &y), &z)| self.prime.add(self.prime.add(x, y), z))
                        .collect();
                    if sum.iter().any(|&x| x != 0) {
                        return Err(Error::InvalidStructureConstants(format!(
                            "Jacobi fails on basis triple ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        // (ad e_i)^p = ad(e_i^[p]) on every basis vector.
        let p = self.prime.value();
        for i in 0..dim {
            for j in 0..dim {
                let mut w = basis(j);
                for _ in 0..p {
                    w = self.bracket_coords(&basis(i), &w);
                }
                let expect = self.bracket_coords(&self.pth[i], &basis(j));
                if w != expect {
                    return Err(Error::InvalidStructureConstants(format!(
                        "(ad e_{})^p differs from ad(e_{}^[p]) on e_{}",
                        i, i, j
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn pth_row(&self, i: usize) -> &[u64] {
        &self.pth[i]
    }

    /// The coefficient of e_k in [e_i, e_j].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.bracket[i][j][k]
    }

    fn bracket_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let dim = self.dim();
        let mut out = vec![0u64; dim];
        for i in 0..dim {
            if a[i] == 0 {
                continue;
            }
            for j in 0..dim {
                if b[j] == 0 || i == j {
                    continue;
                }
                let scale = self.prime.mul(a[i], b[j]);
                for k in 0..dim {
                    let c = self.bracket[i][j][k];
                    if c != 0 {
                        out[k] = self.prime.add(out[k], self.prime.mul(scale, c));
                    }
                }
            }
        }
        out
    }

    /// Loads an algebra from the JSON shape
    /// `{"p":5,"dim":3,"brackets":{"[0,1]":[...]},"pth":[[...],...]}`.
    pub fn from_json_str(src: &str) -> Result<Arc<AbstractRestrictedLie>> {
        let bad = |msg: &str| Error::InvalidStructureConstants(msg.to_string());
        let v: serde_json::Value =
            serde_json::from_str(src).map_err(|e| bad(&format!("malformed JSON: {}", e)))?;
        let obj = v.as_object().ok_or_else(|| bad("top level must be an object"))?;
        let p = obj
            .get("p")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("missing integer field \"p\""))?;
        let prime = Prime::new(p)?;
        let dim = obj
            .get("dim")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("missing integer field \"dim\""))? as usize;
        if dim == 0 || dim > 64 {
            return Err(bad("dim must be between 1 and 64"));
        }
        let names = match obj.get("names") {
            None => (0..dim).map(|i| format!("e{}", i)).collect(),
            Some(ns) => {
                let arr = ns.as_array().ok_or_else(|| bad("\"names\" must be an array"))?;
                if arr.len() != dim {
                    return Err(bad("\"names\" length must equal dim"));
                }
                arr.iter()
                    .map(|x| {
                        x.as_str()
                            .map(|s| s.to_string())
                            .ok_or_else(|| bad("\"names\" entries must be strings"))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let coords_of = |x: &serde_json::Value| -> Result<Vec<i64>> {
            let arr = x.as_array().ok_or_else(|| bad("coordinates must be arrays"))?;
            arr.iter()
                .map(|c| c.as_i64().ok_or_else(|| bad("coordinates must be integers")))
                .collect()
        };
        let mut brackets = BTreeMap::new();
        if let Some(br) = obj.get("brackets") {
            let map = br.as_object().ok_or_else(|| bad("\"brackets\" must be an object"))?;
            for (key, val) in map {
                let inner = key
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("bracket keys look like \"[i,j]\""))?;
                let mut parts = inner.split(',');
                let i: usize = parts
                    .next()
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| bad("bracket keys look like \"[i,j]\""))?;
                let j: usize = parts
                    .next()
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| bad("bracket keys look like \"[i,j]\""))?;
                if parts.next().is_some() {
                    return Err(bad("bracket keys look like \"[i,j]\""));
                }
                brackets.insert((i, j), coords_of(val)?);
            }
        }
        let pth_val = obj.get("pth").ok_or_else(|| bad("missing field \"pth\""))?;
        let pth = pth_val
            .as_array()
            .ok_or_else(|| bad("\"pth\" must be an array of coordinate vectors"))?
            .iter()
            .map(coords_of)
            .collect::<Result<Vec<_>>>()?;
        AbstractRestrictedLie::new(prime, names, &brackets, &pth)
    }

    /// Element with coordinates in the given polynomial ring (the ring's
    /// prime must match the algebra's).
    pub fn elt(self: &Arc<Self>, ring: &PolyRing, coords: Vec<Poly>) -> Result<AbstractElt> {
        if ring.prime() != self.prime {
            return Err(Error::AlgebraMismatch);
        }
        if coords.len() != self.dim() || coords.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(AbstractElt { algebra: self.clone(), ring: ring.clone(), coords })
    }

    /// Element from residue coordinates over the scalar ring.
    pub fn elt_from_residues(self: &Arc<Self>, ring: &PolyRing, coords: &[u64]) -> Result<AbstractElt> {
        self.elt(ring, coords.iter().map(|&c| ring.constant(c)).collect())
    }

    pub fn zero_elt(self: &Arc<Self>, ring: &PolyRing) -> Result<AbstractElt> {
        self.elt(ring, vec![ring.zero(); self.dim()])
    }

    pub fn basis(self: &Arc<Self>, ring: &PolyRing, k: usize) -> Result<AbstractElt> {
        let mut coords = vec![ring.zero(); self.dim()];
        coords[k] = ring.one();
        self.elt(ring, coords)
    }
}

/// An element of an abstract restricted Lie algebra with coordinates in a
/// polynomial ring, i.e. a section of O tensor g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractElt {
    algebra: Arc<AbstractRestrictedLie>,
    ring: PolyRing,
    coords: Vec<Poly>,
}

impl AbstractElt {
    #[inline]
    pub fn algebra(&self) -> &Arc<AbstractRestrictedLie> {
        &self.algebra
    }

    #[inline]
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn scale(&self, f: &Poly) -> AbstractElt {
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn apply_derivation(&self, d: &Derivation) -> AbstractElt {
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| d.apply(c)).collect(),
        }
    }

    /// Image in a matrix algebra under basis images; used to compare the
    /// abstract p-power against a matrix model.
    pub fn map_to_matrix(&self, images: &[LieElt]) -> Result<LieElt> {
        if images.len() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let alg: &MatrixLieAlgebra = images[0].algebra();
        let mut out = alg.zero();
        for (c, img) in self.coords.iter().zip(images) {
            img.checked_pair(&images[0])?;
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }
}

impl LieOps for AbstractElt {
    fn zero_like(&self) -> Self {
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: vec![self.ring.zero(); self.algebra.dim()],
        }
    }

    fn add(&self, other: &Self) -> Self {
        assert!(
            self.algebra == other.algebra && self.ring == other.ring,
            "Lie algebra mismatch"
        );
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn neg(&self) -> Self {
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    fn bracket(&self, other: &Self) -> Self {
        assert!(
            self.algebra == other.algebra && self.ring == other.ring,
            "Lie algebra mismatch"
        );
        let dim = self.algebra.dim();
        let p = self.ring.prime();
        let mut coords = vec![self.ring.zero(); dim];
        for i in 0..dim {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if other.coords[j].is_zero() || i == j {
                    continue;
                }
                let scale = self.coords[i].mul(&other.coords[j]);
                for k in 0..dim {
                    let c = self.algebra.bracket[i][j][k];
                    if c != 0 {
                        coords[k] = coords[k].add(&scale.scale(p.reduce(c)));
                    }
                }
            }
        }
        AbstractElt { algebra: self.algebra.clone(), ring: self.ring.clone(), coords }
    }

    fn scale_residue(&self, c: u64) -> Self {
        AbstractElt {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|x| x.scale(c)).collect(),
        }
    }

    fn prime_value(&self) -> u64 {
        self.ring.prime().value()
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl RestrictedPower for AbstractElt {
    /// Recursive Jacobson splitting: peel off one basis direction at a time,
    /// (a e + w)^[p] = a^p e^[p] + w^[p] + sum_i s_i(a e, w)/i.
    fn p_power(&self) -> Self {
        let support: Vec<usize> =
            (0..self.algebra.dim()).filter(|&k| !self.coords[k].is_zero()).collect();
        match support.len() {
            0 => self.zero_like(),
            1 => {
                let k = support[0];
                let a_p = self.coords[k].frobenius().expect("exponents stay in range");
                let mut coords = vec![self.ring.zero(); self.algebra.dim()];
                for (j, &c) in self.algebra.pth[k].iter().enumerate() {
                    if c != 0 {
                        coords[j] = a_p.scale(c);
                    }
                }
                AbstractElt {
                    algebra: self.algebra.clone(),
                    ring: self.ring.clone(),
                    coords,
                }
            }
            _ => {
                let k = support[0];
                let mut head = self.zero_like();
                head.coords[k] = self.coords[k].clone();
                let mut tail = self.clone();
                tail.coords[k] = self.ring.zero();
                head.p_power().add(&tail.p_power()).add(&jacobson_sum(&head, &tail))
            }
        }
    }
}

/// The split three-dimensional simple algebra {e, h, f} with
/// [h,e] = 2e, [h,f] = -2f, [e,f] = h, e^[p] = f^[p] = 0, h^[p] = h.
pub fn sl2(prime: Prime) -> Arc<AbstractRestrictedLie> {
    let dim = 3;
    let mut brackets = BTreeMap::new();
    // order: e = 0, h = 1, f = 2
    brackets.insert((0, 1), vec![-2, 0, 0]); // [e,h] = -2e
    brackets.insert((0, 2), vec![0, 1, 0]); // [e,f] = h
    brackets.insert((1, 2), vec![0, 0, -2]); // [h,f] = -2f
    let pth = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
    AbstractRestrictedLie::new(
        prime,
        (0..dim).map(|i| ["e", "h", "f"][i].to_string()).collect(),
        &brackets,
        &pth,
    )
    .expect("sl2 table is valid for odd p")
}

/// Matrix model of `sl2` inside gl_2 over the given ring.
pub fn sl2_matrix_model(ring: &PolyRing) -> Vec<LieElt> {
    let gl2 = MatrixLieAlgebra::gl(ring, 2);
    let e = gl2.basis_elt(0, 1);
    let f = gl2.basis_elt(1, 0);
    let mut h = gl2.basis_elt(0, 0);
    h = h.sub(&gl2.basis_elt(1, 1));
    vec![e, h, f]
}

/// The two-dimensional nonabelian algebra {x, y} with [x,y] = y,
/// x^[p] = x, y^[p] = 0: the Lie algebra of the affine transformation group
/// of the line.
pub fn aff1_lie(prime: Prime) -> Arc<AbstractRestrictedLie> {
    let mut brackets = BTreeMap::new();
    brackets.insert((0, 1), vec![0, 1]);
    let pth = vec![vec![1, 0], vec![0, 0]];
    AbstractRestrictedLie::new(prime, vec!["x".into(), "y".into()], &brackets, &pth)
        .expect("aff1 table is valid")
}

/// Matrix model of `aff1_lie` inside gl_2.
pub fn aff1_matrix_model(ring: &PolyRing) -> Vec<LieElt> {
    let gl2 = MatrixLieAlgebra::gl(ring, 2);
    vec![gl2.basis_elt(0, 0), gl2.basis_elt(0, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_scaled_h_power() {
        let alg = sl2(Prime::new(5).unwrap());
        let ring = PolyRing::scalar(Prime::new(5).unwrap());
        for a in 0..5u64 {
            let x = alg.elt_from_residues(&ring, &[0, a, 0]).unwrap();
            let xp = x.p_power();
            // (a h)^[p] = a^p h = a h over F_p
            assert_eq!(xp.coords()[1], ring.constant(a));
            assert!(xp.coords()[0].is_zero() && xp.coords()[2].is_zero());
        }
    }

    #[test]
    fn abstract_power_matches_matrix_model() {
        for p in [3u64, 5] {
            let prime = Prime::new(p).unwrap();
            let ring = PolyRing::scalar(prime);
            let alg = sl2(prime);
            let images = sl2_matrix_model(&ring);
            for a in 0..p {
                for b in 0..p {
                    for c in [0u64, 1, 2] {
                        let x = alg.elt_from_residues(&ring, &[a, b, c]).unwrap();
                        let lhs = x.p_power().map_to_matrix(&images).unwrap();
                        let rhs = x.map_to_matrix(&images).unwrap().p_power();
                        assert_eq!(lhs, rhs, "p={} coords=({},{},{})", p, a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn aff1_power_matches_matrix_model() {
        for p in [3u64, 5, 7] {
            let prime = Prime::new(p).unwrap();
            let ring = PolyRing::scalar(prime);
            let alg = aff1_lie(prime);
            let images = aff1_matrix_model(&ring);
            for a in 0..p {
                for b in 0..p {
                    let x = alg.elt_from_residues(&ring, &[a, b]).unwrap();
                    let lhs = x.p_power().map_to_matrix(&images).unwrap();
                    let rhs = x.map_to_matrix(&images).unwrap().p_power();
                    assert_eq!(lhs, rhs, "p={} coords=({},{})", p, a, b);
                }
            }
        }
    }

    #[test]
    fn invalid_tables_rejected() {
        let prime = Prime::new(3).unwrap();
        // [x,y] = y but x^[p] = 0 breaks (ad x)^p = ad(x^[p])
        let mut brackets = BTreeMap::new();
        brackets.insert((0usize, 1usize), vec![0i64, 1]);
        let pth = vec![vec![0, 0], vec![0, 0]];
        let err = AbstractRestrictedLie::new(
            prime,
            vec!["x".into(), "y".into()],
            &brackets,
            &pth,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidStructureConstants(_)));
    }

    #[test]
    fn json_round() {
        let src = r#"{"p":5,"dim":2,"brackets":{"[0,1]":[0,1]},"pth":[[1,0],[0,0]]}"#;
        let alg = AbstractRestrictedLie::from_json_str(src).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.prime().value(), 5);
        let bad = r#"{"p":5,"dim":2,"brackets":{"[0,1]":[0,1]},"pth":[[0,0],[0,0]]}"#;
        assert!(AbstractRestrictedLie::from_json_str(bad).is_err());
        assert!(AbstractRestrictedLie::from_json_str("not json").is_err());
    }

    #[test]
    fn jacobson_holds_in_abstract_algebras() {
        use crate::rlie::jacobson_check_generic;
        let prime = Prime::new(7).unwrap();
        let ring = PolyRing::scalar(prime);
        let alg = sl2(prime);
        let v = alg.elt_from_residues(&ring, &[1, 2, 3]).unwrap();
        let u = alg.elt_from_residues(&ring, &[4, 0, 6]).unwrap();
        assert!(jacobson_check_generic(&v, &u));
    }
}
