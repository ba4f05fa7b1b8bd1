use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::matrix::PolyMatrix;
use super::monomial::Monomial;
use super::scalar::Scalar;
use super::AlgebraError;

/// Sparse multivariate polynomial in `u1..uN` with exact rational
/// coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(dim, Monomial::one(dim), c)
    }

    /// The coordinate `u_{var+1}` (variables are zero-based in the API).
    pub fn var(dim: usize, var: usize) -> Self {
        assert!(var < dim, "variable {var} out of range for dimension {dim}");
        Self::monomial(dim, Monomial::var(dim, var), Scalar::one())
    }

    pub fn monomial(dim: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.dim(), dim, "monomial dimension mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { dim, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Poly::zero(dim);
        for (exps, c) in terms {
            assert_eq!(exps.len(), dim, "monomial dimension mismatch");
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order (the printing order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.dim))
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_var(&self, var: usize) -> Result<(), AlgebraError> {
        if var >= self.dim {
            Err(AlgebraError::VariableOutOfRange {
                index: var,
                dim: self.dim,
            })
        } else {
            Ok(())
        }
    }

    /// Exact partial derivative with respect to `u_{var+1}`.
    pub fn partial(&self, var: usize) -> Result<Poly, AlgebraError> {
        self.check_var(var)?;
        Ok(self.d(var))
    }

    /// Partial derivative; panics when `var` is out of range.
    pub fn d(&self, var: usize) -> Poly {
        assert!(var < self.dim, "variable {var} out of range");
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.insert(m.shifted(var, -1), c * Scalar::from_integer(e.into()));
            }
        }
        Poly {
            dim: self.dim,
            terms: out,
        }
    }

    /// Antiderivative in `u_{var+1}` with zero integration constant.
    pub fn antiderivative(&self, var: usize) -> Result<Poly, AlgebraError> {
        self.check_var(var)?;
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var) + 1;
            out.insert(m.shifted(var, 1), c / Scalar::from_integer(e.into()));
        }
        Ok(Poly {
            dim: self.dim,
            terms: out,
        })
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.dim).map(|i| self.d(i)).collect()
    }

    /// Symmetric matrix of second partials.
    pub fn hessian(&self) -> PolyMatrix {
        let grad = self.gradient();
        let n = self.dim;
        let mut entries = vec![Poly::zero(n); n * n];
        for i in 0..n {
            for j in i..n {
                let h = grad[i].d(j);
                entries[j * n + i] = h.clone();
                entries[i * n + j] = h;
            }
        }
        PolyMatrix::from_entries(n, n, n, entries)
    }

    /// Multiplies every term of degree `k` by `1 / (k + shift)`. This is the
    /// radial integration step of the polynomial Poincare lemma.
    pub(crate) fn divide_by_degree(&self, shift: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let k = m.degree() + shift;
                    (m.clone(), c / Scalar::from_integer(k.into()))
                })
                .collect(),
        }
    }

    /// Removes the constant and linear terms.
    pub fn without_affine_part(&self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() >= 2)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Composition: replaces `u_i` by `images[i]`. All images share one
    /// target dimension, which becomes the dimension of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "substitution needs {} images, got {}",
                self.dim,
                images.len()
            )));
        }
        let target = images.first().map_or(0, Poly::dim);
        if images.iter().any(|p| p.dim != target) {
            return Err(AlgebraError::DimensionMismatch(
                "substitution images have different dimensions".into(),
            ));
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target), p.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out += &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a space of dimension `new_dim`, mapping
    /// variable `i` to `offset + i`.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Poly {
        assert!(offset + self.dim <= new_dim, "embedding does not fit");
        Poly {
            dim: new_dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = vec![0; new_dim];
                    exps[offset..offset + self.dim].copy_from_slice(m.exponents());
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of [`Poly::embed`]; `None` if a term uses a variable outside
    /// the window.
    pub fn restrict(&self, dim: usize, offset: usize) -> Option<Poly> {
        let mut out = Poly::zero(dim);
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e[..offset].iter().chain(&e[offset + dim..]).any(|&x| x > 0) {
                return None;
            }
            out.terms
                .insert(Monomial::new(e[offset..offset + dim].to_vec()), c.clone());
        }
        Some(out)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Poly::zero(self.dim);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
