//! Polynomial differential forms on ℝⁿ with exact rational coefficients.
//!
//! A [`Polynomial`] is a finite sum of monomials in the coordinates x₁…xₙ; a
//! degree-p [`Form`] is a finite sum `Σ P_K dx_{k₁}∧…∧dx_{k_p}` indexed by
//! strictly increasing tuples `K = (k₁ < … < k_p)` of 1-based coordinate
//! indices. Everything is stored normalized (no zero coefficients, keys
//! sorted), so structural equality is mathematical equality.
//!
//! Conventions, fixed once and used everywhere downstream:
//! - the wedge is the determinant convention *without* factorial weights:
//!   `(dx₁∧dx₂)(v, w) = v₁w₂ − v₂w₁`;
//! - the interior product inserts the vector field into the *first* slot:
//!   `(i_X ω)(v₂,…,v_p) = ω(X, v₂,…,v_p)`;
//! - the Lie derivative is defined through Cartan's magic formula
//!   `L_X = d∘i_X + i_X∘d` (for functions, where i_X is undefined, the
//!   first summand is absent).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar used for all symbolic coefficients.
pub type Rational = BigRational;

/// Errors raised by the exact layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormsError {
    /// A point, vector, or operand lives on the wrong ℝⁿ.
    DimensionMismatch { expected: usize, got: usize },
    /// A degree-p form was fed a number of vectors ≠ p.
    ArityMismatch { expected: usize, got: usize },
    /// A coordinate index outside 1..=n.
    IndexOutOfRange { index: usize, dimension: usize },
    /// Interior product of a degree-0 form: there is no slot to contract.
    ZeroDegreeContraction,
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            FormsError::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: degree-{expected} form applied to {got} vectors")
            }
            FormsError::IndexOutOfRange { index, dimension } => {
                write!(f, "coordinate index {index} out of range 1..={dimension}")
            }
            FormsError::ZeroDegreeContraction => {
                write!(f, "interior product of a degree-0 form is undefined")
            }
        }
    }
}

impl core::error::Error for FormsError {}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// A polynomial in x₁…xₙ with exact rational coefficients.
///
/// Stored as a map from exponent vectors (length n) to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    /// The zero polynomial on ℝⁿ.
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec_of_zeros(n), c);
        }
        p
    }

    /// The coordinate function `x_i` (1-based).
    pub fn variable(n: usize, i: usize) -> Result<Self, FormsError> {
        if i < 1 || i > n {
            return Err(FormsError::IndexOutOfRange { index: i, dimension: n });
        }
        let mut exps = vec_of_zeros(n);
        exps[i - 1] = 1;
        Ok(Polynomial::monomial(n, exps, Rational::from_integer(1.into())))
    }

    /// A single monomial `c · x₁^{e₁}…xₙ^{eₙ}`.
    ///
    /// Panics if `exps.len() != n`; this constructor is for code that already
    /// owns a well-formed exponent vector.
    pub fn monomial(n: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length must equal the dimension");
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Ambient dimension n.
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(exponent vector, coefficient)` pairs in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Total degree (max over monomials of the exponent sum); 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial dimensions must agree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial dimensions must agree");
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                accumulate(&mut out.terms, e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Evaluate at a point, in floating point.
    pub fn eval(&self, x: &[f64]) -> Result<f64, FormsError> {
        if x.len() != self.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = rational_to_f64(c);
            for (xi, &ei) in x.iter().zip(e) {
                m *= pow_f64(*xi, ei);
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Exact partial derivative ∂/∂x_i (1-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial, FormsError> {
        if i < 1 || i > self.n {
            return Err(FormsError::IndexOutOfRange { index: i, dimension: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let ei = e[i - 1];
            if ei == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i - 1] = ei - 1;
            accumulate(&mut out.terms, e2, c.clone() * Rational::from_integer(ei.into()));
        }
        Ok(out)
    }
}

/// Left-to-right integer power; exponents here are tiny, and the fixed
/// association keeps results bit-identical across build configurations.
pub fn pow_f64(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn vec_of_zeros(n: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(n);
    v.resize(n, 0);
    v
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, val: Rational) {
    if val.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(val);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + val;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Convert an exact rational to f64 (numerator/denominator division, so even
/// huge intermediate integers land on the nearest representable quotient).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range BigRational; fall back to a sign-correct infinity.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

/// A polynomial vector field `X = Σ X^i ∂/∂x_i` on ℝⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    n: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    /// Build from components `(X¹, …, Xⁿ)`; each must be a polynomial on ℝⁿ
    /// with n equal to the number of components.
    pub fn new(components: Vec<Polynomial>) -> Result<Self, FormsError> {
        let n = components.len();
        for c in &components {
            if c.dimension() != n {
                return Err(FormsError::DimensionMismatch { expected: n, got: c.dimension() });
            }
        }
        Ok(VectorField { n, components })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Component X^i (1-based).
    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i - 1]
    }
}

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

/// A homogeneous degree-p differential form with polynomial coefficients.
///
/// Keys are strictly increasing tuples of 1-based coordinate indices; the
/// stored coefficient of `dx_K` is exact. A `Form` may have degree > n only
/// when it is zero (e.g. as the result of a wedge that overflows the ambient
/// dimension).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl Form {
    /// The zero form of the given degree.
    pub fn zero(n: usize, degree: usize) -> Self {
        Form { n, degree, terms: BTreeMap::new() }
    }

    /// Degree-0 form from a coefficient function.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let n = p.dimension();
        let mut f = Form::zero(n, 0);
        if !p.is_zero() {
            f.terms.insert(Vec::new(), p);
        }
        f
    }

    /// The constant basis form `dx_{i₁}∧…∧dx_{i_p}` for arbitrary (possibly
    /// unsorted) indices; repeated indices yield the zero form of that degree.
    pub fn basis(n: usize, indices: &[usize]) -> Result<Self, FormsError> {
        for &i in indices {
            if i < 1 || i > n {
                return Err(FormsError::IndexOutOfRange { index: i, dimension: n });
            }
        }
        let one = Polynomial::constant(n, Rational::from_integer(1.into()));
        Form::zero(n, indices.len()).with_term(indices, one)
    }

    /// Add `P · dx_{indices}` to this form, sorting the indices and tracking
    /// the sign of the permutation; repeated indices contribute nothing.
    ///
    /// Errors if an index is out of range, the coefficient lives on a
    /// different ℝⁿ, or the tuple length differs from the form's degree.
    pub fn with_term(mut self, indices: &[usize], coeff: Polynomial) -> Result<Self, FormsError> {
        if coeff.dimension() != self.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: coeff.dimension() });
        }
        if indices.len() != self.degree {
            return Err(FormsError::ArityMismatch { expected: self.degree, got: indices.len() });
        }
        for &i in indices {
            if i < 1 || i > self.n {
                return Err(FormsError::IndexOutOfRange { index: i, dimension: self.n });
            }
        }
        let Some((sorted, sign)) = sort_with_sign(indices) else {
            return Ok(self); // repeated index
        };
        let signed = if sign < 0 { coeff.neg() } else { coeff };
        if !signed.is_zero() {
            let merged = match self.terms.remove(&sorted) {
                Some(existing) => existing.add(&signed),
                None => signed,
            };
            if !merged.is_zero() {
                self.terms.insert(sorted, merged);
            }
        }
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(index tuple, coefficient)` pairs in lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    /// Coefficient of `dx_K` for a sorted key, if present.
    pub fn coefficient(&self, key: &[usize]) -> Option<&Polynomial> {
        self.terms.get(key)
    }

    /// Sum of absolute values of all rational coefficients, as f64.
    ///
    /// Zero iff the form is zero; used as an exact residual magnitude.
    pub fn coefficient_mass(&self) -> f64 {
        let mut acc = 0.0;
        for p in self.terms.values() {
            for (_, c) in p.terms() {
                acc += rational_to_f64(&c.abs());
            }
        }
        acc
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "form dimensions must agree");
        assert_eq!(self.degree, other.degree, "form degrees must agree");
        let mut out = self.clone();
        for (k, p) in &other.terms {
            let merged = match out.terms.remove(k) {
                Some(existing) => existing.add(p),
                None => p.clone(),
            };
            if !merged.is_zero() {
                out.terms.insert(k.clone(), merged);
            }
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.degree);
        }
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            *p = p.scale(c);
        }
        out
    }

    /// Multiply by a scalar function (degree-0 coefficient).
    pub fn scale_polynomial(&self, q: &Polynomial) -> Form {
        assert_eq!(self.n, q.dimension(), "form dimensions must agree");
        let mut out = Form::zero(self.n, self.degree);
        for (k, p) in &self.terms {
            let prod = p.mul(q);
            if !prod.is_zero() {
                out.terms.insert(k.clone(), prod);
            }
        }
        out
    }

    /// Evaluate at a point on p tangent vectors: `Σ_K P_K(x) · det(v_b[k_a])`.
    pub fn eval(&self, x: &[f64], vectors: &[Vec<f64>]) -> Result<f64, FormsError> {
        if x.len() != self.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        if vectors.len() != self.degree {
            return Err(FormsError::ArityMismatch { expected: self.degree, got: vectors.len() });
        }
        for v in vectors {
            if v.len() != self.n {
                return Err(FormsError::DimensionMismatch { expected: self.n, got: v.len() });
            }
        }
        let p = self.degree;
        let mut acc = 0.0;
        let mut matrix: Vec<Vec<f64>> = Vec::new();
        for (key, coeff) in &self.terms {
            matrix.clear();
            for &k in key {
                let mut row = Vec::with_capacity(p);
                for v in vectors {
                    row.push(v[k - 1]);
                }
                matrix.push(row);
            }
            acc += coeff.eval(x)? * determinant(&matrix);
        }
        Ok(acc)
    }

    /// Exterior (wedge) product, determinant convention without factorials.
    pub fn wedge(&self, other: &Form) -> Result<Form, FormsError> {
        if self.n != other.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: other.n });
        }
        let degree = self.degree + other.degree;
        let mut out = Form::zero(self.n, degree);
        if degree > self.n {
            return Ok(out);
        }
        for (ka, pa) in &self.terms {
            for (kb, pb) in &other.terms {
                let Some((key, sign)) = merge_with_sign(ka, kb) else {
                    continue; // shared index
                };
                let mut coeff = pa.mul(pb);
                if sign < 0 {
                    coeff = coeff.neg();
                }
                if !coeff.is_zero() {
                    let merged = match out.terms.remove(&key) {
                        Some(existing) => existing.add(&coeff),
                        None => coeff,
                    };
                    if !merged.is_zero() {
                        out.terms.insert(key, merged);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative: `d(P dx_K) = Σ_i ∂_i P · dx_i∧dx_K`.
    pub fn exterior_derivative(&self) -> Form {
        let mut out = Form::zero(self.n, self.degree + 1);
        for (key, coeff) in &self.terms {
            for i in 1..=self.n {
                if key.contains(&i) {
                    continue;
                }
                let di = coeff.partial(i).expect("index within dimension");
                if di.is_zero() {
                    continue;
                }
                // dx_i must hop over every index in K smaller than i.
                let smaller = key.iter().filter(|&&k| k < i).count();
                let mut new_key = key.clone();
                new_key.push(i);
                new_key.sort_unstable();
                let signed = if smaller % 2 == 1 { di.neg() } else { di };
                let merged = match out.terms.remove(&new_key) {
                    Some(existing) => existing.add(&signed),
                    None => signed,
                };
                if !merged.is_zero() {
                    out.terms.insert(new_key, merged);
                }
            }
        }
        out
    }

    /// Interior product `i_X`, inserting X into the first slot:
    /// `i_X(P dx_{k₁…k_p}) = P Σ_a (−1)^{a−1} X^{k_a} dx_{k₁…k̂_a…k_p}`.
    pub fn interior_product(&self, x: &VectorField) -> Result<Form, FormsError> {
        if self.degree == 0 {
            return Err(FormsError::ZeroDegreeContraction);
        }
        if x.dimension() != self.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: x.dimension() });
        }
        let mut out = Form::zero(self.n, self.degree - 1);
        for (key, coeff) in &self.terms {
            for (a, &k) in key.iter().enumerate() {
                let mut c = coeff.mul(x.component(k));
                if a % 2 == 1 {
                    c = c.neg();
                }
                if c.is_zero() {
                    continue;
                }
                let mut new_key = key.clone();
                new_key.remove(a);
                let merged = match out.terms.remove(&new_key) {
                    Some(existing) => existing.add(&c),
                    None => c,
                };
                if !merged.is_zero() {
                    out.terms.insert(new_key, merged);
                }
            }
        }
        Ok(out)
    }

    /// Lie derivative via Cartan's formula `L_X = d∘i_X + i_X∘d`.
    ///
    /// For degree 0 the first summand is absent (no slot to contract).
    pub fn lie_derivative(&self, x: &VectorField) -> Result<Form, FormsError> {
        if x.dimension() != self.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: x.dimension() });
        }
        let second = self.exterior_derivative().interior_product(x)?;
        if self.degree == 0 {
            return Ok(second);
        }
        let first = self.interior_product(x)?.exterior_derivative();
        Ok(first.add(&second))
    }
}

/// Sort an index tuple, returning `(sorted, sign of the permutation)`;
/// `None` when an index repeats.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v: Vec<usize> = indices.to_vec();
    let mut sign = 1;
    // insertion sort with swap counting: tuples are tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// Merge two sorted disjoint tuples, counting the transpositions needed to
/// interleave them; `None` when they share an index.
fn merge_with_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] hops over the remaining elements of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// Determinant by Laplace expansion; fine for the small matrices arising from
/// form arities.
pub(crate) fn determinant(m: &[Vec<f64>]) -> f64 {
    let k = m.len();
    match k {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0.0;
            for j in 0..k {
                if m[0][j] == 0.0 {
                    continue;
                }
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter_map(|(c, v)| (c != j).then_some(*v))
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * m[0][j] * determinant(&minor);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// x₁²x₂ on ℝ²
    fn p_x1sq_x2() -> Polynomial {
        Polynomial::monomial(2, vec![2, 1], int(1))
    }

    #[test]
    fn poly_eval_monomial() {
        let p = p_x1sq_x2();
        assert_eq!(p.eval(&[2.0, 3.0]).unwrap(), 12.0);
    }

    #[test]
    fn poly_eval_dimension_mismatch() {
        let p = p_x1sq_x2();
        assert_eq!(
            p.eval(&[1.0]),
            Err(FormsError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn poly_partial_drops_degree() {
        let p = p_x1sq_x2();
        let d1 = p.partial(1).unwrap();
        assert_eq!(d1, Polynomial::monomial(2, vec![1, 1], int(2)));
        assert_eq!(d1.eval(&[2.0, 3.0]).unwrap(), 12.0);
        assert!(p.partial(3).is_err());
        assert!(p.partial(0).is_err());
    }

    #[test]
    fn poly_arithmetic_cancels_exactly() {
        let p = p_x1sq_x2();
        let q = p.scale(&rat(1, 3));
        let r = p.sub(&q.scale(&int(3)));
        assert!(r.is_zero());
    }

    #[test]
    fn form_eval_is_determinant() {
        let w = Form::basis(2, &[1, 2]).unwrap();
        let v1 = vec![1.0, 0.0];
        let v2 = vec![0.0, 1.0];
        assert_eq!(w.eval(&[5.0, -1.0], &[v1.clone(), v2.clone()]).unwrap(), 1.0);
        // alternating in the arguments
        assert_eq!(w.eval(&[5.0, -1.0], &[v2, v1]).unwrap(), -1.0);
    }

    #[test]
    fn form_eval_checks_arity() {
        let w = Form::basis(2, &[1, 2]).unwrap();
        assert_eq!(
            w.eval(&[0.0, 0.0], &[vec![1.0, 0.0]]),
            Err(FormsError::ArityMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn basis_normalizes_order_and_repeats() {
        let ab = Form::basis(3, &[1, 3]).unwrap();
        let ba = Form::basis(3, &[3, 1]).unwrap();
        assert_eq!(ba, ab.neg());
        assert!(Form::basis(3, &[2, 2]).unwrap().is_zero());
        assert!(Form::basis(2, &[3]).is_err());
    }

    #[test]
    fn wedge_of_one_forms_anticommutes() {
        let a = Form::basis(3, &[1]).unwrap();
        let b = Form::basis(3, &[2]).unwrap();
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, Form::basis(3, &[1, 2]).unwrap());
        assert_eq!(ba, ab.neg());
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_eval_matches_determinant_convention() {
        // (dx1∧dx2)(v, w) = v1 w2 − v2 w1, no 1/2
        let w = Form::basis(2, &[1]).unwrap().wedge(&Form::basis(2, &[2]).unwrap()).unwrap();
        let v = vec![2.0, 3.0];
        let u = vec![5.0, 7.0];
        assert_eq!(w.eval(&[0.0, 0.0], &[v, u]).unwrap(), 2.0 * 7.0 - 3.0 * 5.0);
    }

    #[test]
    fn wedge_overflow_is_zero() {
        let w = Form::basis(2, &[1, 2]).unwrap();
        let a = Form::basis(2, &[1]).unwrap();
        let z = w.wedge(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 3);
    }

    #[test]
    fn exterior_derivative_example() {
        // d(x1 x2 dx1) = x1 dx2∧dx1 = −x1 dx1∧dx2
        let coeff = Polynomial::monomial(2, vec![1, 1], int(1));
        let w = Form::zero(2, 1).with_term(&[1], coeff).unwrap();
        let dw = w.exterior_derivative();
        let expected = Form::zero(2, 2)
            .with_term(&[1, 2], Polynomial::monomial(2, vec![1, 0], int(-1)))
            .unwrap();
        assert_eq!(dw, expected);
    }

    #[test]
    fn dd_is_zero_spot() {
        let coeff = Polynomial::monomial(3, vec![2, 1, 0], rat(3, 2));
        let w = Form::zero(3, 1).with_term(&[2], coeff).unwrap();
        assert!(w.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn interior_product_first_slot() {
        // i_X(x1 dx1) with X = x2 ∂/∂x1  →  x1 x2
        let x = VectorField::new(vec![
            Polynomial::monomial(2, vec![0, 1], int(1)),
            Polynomial::zero(2),
        ])
        .unwrap();
        let w = Form::zero(2, 1)
            .with_term(&[1], Polynomial::monomial(2, vec![1, 0], int(1)))
            .unwrap();
        let c = w.interior_product(&x).unwrap();
        assert_eq!(c, Form::from_polynomial(Polynomial::monomial(2, vec![1, 1], int(1))));
    }

    #[test]
    fn interior_product_sign_on_two_form() {
        // i_{∂/∂x2}(dx1∧dx2) = −dx1
        let x = VectorField::new(vec![
            Polynomial::zero(2),
            Polynomial::constant(2, int(1)),
        ])
        .unwrap();
        let w = Form::basis(2, &[1, 2]).unwrap();
        assert_eq!(w.interior_product(&x).unwrap(), Form::basis(2, &[1]).unwrap().neg());
    }

    #[test]
    fn interior_product_rejects_functions() {
        let f = Form::from_polynomial(p_x1sq_x2());
        let x = VectorField::new(vec![Polynomial::zero(2), Polynomial::zero(2)]).unwrap();
        assert_eq!(f.interior_product(&x), Err(FormsError::ZeroDegreeContraction));
    }

    #[test]
    fn lie_derivative_example() {
        // L_{∂/∂x1}(x1 dx2) = dx2
        let x = VectorField::new(vec![
            Polynomial::constant(2, int(1)),
            Polynomial::zero(2),
        ])
        .unwrap();
        let w = Form::zero(2, 1)
            .with_term(&[2], Polynomial::monomial(2, vec![1, 0], int(1)))
            .unwrap();
        assert_eq!(w.lie_derivative(&x).unwrap(), Form::basis(2, &[2]).unwrap());
    }

    #[test]
    fn lie_derivative_of_function() {
        // L_X f = X(f): X = ∂/∂x1 on f = x1² x2 → 2 x1 x2
        let x = VectorField::new(vec![
            Polynomial::constant(2, int(1)),
            Polynomial::zero(2),
        ])
        .unwrap();
        let f = Form::from_polynomial(p_x1sq_x2());
        assert_eq!(
            f.lie_derivative(&x).unwrap(),
            Form::from_polynomial(Polynomial::monomial(2, vec![1, 1], int(2)))
        );
    }

    #[test]
    fn graded_leibniz_spot() {
        // d(α∧β) = dα∧β + (−1)^p α∧dβ for α = x2 dx1 (p = 1), β = x1 dx3
        let alpha = Form::zero(3, 1)
            .with_term(&[1], Polynomial::monomial(3, vec![0, 1, 0], int(1)))
            .unwrap();
        let beta = Form::zero(3, 1)
            .with_term(&[3], Polynomial::monomial(3, vec![1, 0, 0], int(1)))
            .unwrap();
        let lhs = alpha.wedge(&beta).unwrap().exterior_derivative();
        let rhs = alpha
            .exterior_derivative()
            .wedge(&beta)
            .unwrap()
            .add(&alpha.wedge(&beta.exterior_derivative()).unwrap().neg());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula_spot() {
        // residual L_X ω − (d i_X ω + i_X dω) must vanish identically
        let omega = Form::zero(3, 2)
            .with_term(&[1, 2], Polynomial::monomial(3, vec![1, 0, 1], rat(2, 3)))
            .unwrap()
            .with_term(&[2, 3], Polynomial::monomial(3, vec![0, 2, 0], int(-1)))
            .unwrap();
        let x = VectorField::new(vec![
            Polynomial::monomial(3, vec![0, 1, 0], int(1)),
            Polynomial::monomial(3, vec![1, 0, 0], int(-2)),
            Polynomial::constant(3, rat(1, 2)),
        ])
        .unwrap();
        let lie = omega.lie_derivative(&x).unwrap();
        let cartan = omega
            .interior_product(&x)
            .unwrap()
            .exterior_derivative()
            .add(&omega.exterior_derivative().interior_product(&x).unwrap());
        assert!(lie.sub(&cartan).is_zero());
        assert_eq!(lie.sub(&cartan).coefficient_mass(), 0.0);
    }

    #[test]
    fn coefficient_mass_tracks_cancellation() {
        let a = Form::basis(2, &[1]).unwrap().scale(&rat(3, 4));
        assert_eq!(a.coefficient_mass(), 0.75);
        assert_eq!(a.sub(&a).coefficient_mass(), 0.0);
    }
}
