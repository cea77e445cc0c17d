//! Free graded-commutative DGAs and the bar / two-sided Hochschild complexes.
//!
//! Everything here is formal and exact. A [`Dga`] is freely generated by named
//! generators with declared degrees and declared exterior derivatives (zero,
//! another generator, or a fresh closed generator of degree+1); elements are
//! rational linear combinations of Koszul-normalized monomials. On top of the
//! DGA sit bar words `[ω₁|…|ω_k]` (all letters of positive degree) in two
//! variants:
//!
//! - `Based`: plain words, modeling forms `∫ω₁…ω_k` on a path space with both
//!   endpoints pinned, where endpoint pullbacks of positive-degree forms
//!   vanish;
//! - `Hochschild`: words with boundary factors `[ω₀|ω₁…ω_k|ω_{k+1}]`, modeling
//!   `φ₀*ω₀ ∧ (∫ω₁…ω_k) ∧ φ₁*ω_{k+1}` on the free path space, whose
//!   differential additionally absorbs the first/last letter into the
//!   boundary factors and differentiates the boundary factors themselves.
//!
//! The point of the module is [`Dga::certify_d_squared`]: the bar differential
//! applied twice must normalize to exactly zero, in exact rational arithmetic,
//! for every word — a machine check that the differential really turns these
//! words into a subcomplex of the de Rham complex of path space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::forms::{accumulate, Rational};

/// Identifier of a generator inside one [`Dga`]; ids are assigned in name
/// order, so comparing ids compares names.
pub type GenId = usize;

/// Declared exterior derivative of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DImage {
    /// d(g) = 0.
    Zero,
    /// d(g) is the named generator (which must be closed and of degree+1).
    Named(String),
    /// Introduce a fresh closed generator `d<name>` of degree+1 as d(g).
    Fresh,
}

/// One generator declaration: `{"name":"a","degree":2,"d":"b"|0|"fresh"}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
    pub d: DImage,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: usize, d: DImage) -> Self {
        GeneratorSpec { name: name.into(), degree, d }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BarError {
    /// Generator names must be unique.
    DuplicateGenerator(String),
    /// Names are identifiers: `[A-Za-z_][A-Za-z0-9_]*`.
    InvalidName(String),
    /// A fresh d-image `d<name>` collides with an existing name.
    FreshNameCollision(String),
    /// A named d-image does not exist.
    UnknownDImage { generator: String, target: String },
    /// d must raise degree by exactly one.
    DImageDegree { generator: String, target: String, expected: usize, got: usize },
    /// The target of a named d-image must itself be closed (d∘d = 0).
    DImageNotClosed { generator: String, target: String },
    /// Unknown generator name in a word or element.
    UnknownGenerator(String),
    /// Word letters must have positive degree.
    ZeroDegreeLetter { letter: String },
}

impl fmt::Display for BarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarError::DuplicateGenerator(n) => write!(f, "duplicate generator name '{n}'"),
            BarError::InvalidName(n) => write!(f, "invalid generator name '{n}'"),
            BarError::FreshNameCollision(n) => {
                write!(f, "fresh d-image name '{n}' collides with an existing generator")
            }
            BarError::UnknownDImage { generator, target } => {
                write!(f, "generator '{generator}' names unknown d-image '{target}'")
            }
            BarError::DImageDegree { generator, target, expected, got } => write!(
                f,
                "d-image '{target}' of '{generator}' must have degree {expected}, has {got}"
            ),
            BarError::DImageNotClosed { generator, target } => {
                write!(f, "d-image '{target}' of '{generator}' must be closed")
            }
            BarError::UnknownGenerator(n) => write!(f, "unknown generator '{n}'"),
            BarError::ZeroDegreeLetter { letter } => {
                write!(f, "word letter '{letter}' has degree 0; letters must have positive degree")
            }
        }
    }
}

impl core::error::Error for BarError {}

// ---------------------------------------------------------------------------
// The free graded-commutative DGA
// ---------------------------------------------------------------------------

struct GenInfo {
    name: String,
    degree: usize,
    d: Option<GenId>,
}

/// A free graded-commutative differential algebra over ℚ.
pub struct Dga {
    gens: Vec<GenInfo>,
    by_name: BTreeMap<String, GenId>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Dga {
    /// Build the algebra from generator declarations, expanding `"fresh"`
    /// d-images into closed generators named `d<name>`.
    pub fn new(specs: Vec<GeneratorSpec>) -> Result<Dga, BarError> {
        let mut raw: Vec<(String, usize, DImage)> = Vec::new();
        let mut names: BTreeSet<String> = BTreeSet::new();
        for spec in &specs {
            if !valid_name(&spec.name) {
                return Err(BarError::InvalidName(spec.name.clone()));
            }
            if !names.insert(spec.name.clone()) {
                return Err(BarError::DuplicateGenerator(spec.name.clone()));
            }
        }
        for spec in specs {
            match spec.d {
                DImage::Fresh => {
                    let fresh = format!("d{}", spec.name);
                    if !names.insert(fresh.clone()) {
                        return Err(BarError::FreshNameCollision(fresh));
                    }
                    raw.push((spec.name.clone(), spec.degree, DImage::Named(fresh.clone())));
                    raw.push((fresh, spec.degree + 1, DImage::Zero));
                }
                d => raw.push((spec.name, spec.degree, d)),
            }
        }
        // ids in name order, so monomials sorted by id are sorted by name
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let by_name: BTreeMap<String, GenId> =
            raw.iter().enumerate().map(|(i, (n, _, _))| (n.clone(), i)).collect();
        let mut gens: Vec<GenInfo> = Vec::with_capacity(raw.len());
        for (name, degree, d) in &raw {
            let d = match d {
                DImage::Zero => None,
                DImage::Named(t) => {
                    let &id = by_name.get(t).ok_or_else(|| BarError::UnknownDImage {
                        generator: name.clone(),
                        target: t.clone(),
                    })?;
                    Some(id)
                }
                DImage::Fresh => unreachable!("fresh expanded above"),
            };
            gens.push(GenInfo { name: name.clone(), degree: *degree, d });
        }
        // d raises degree by one and lands on a closed generator
        for g in &gens {
            if let Some(t) = g.d {
                if gens[t].degree != g.degree + 1 {
                    return Err(BarError::DImageDegree {
                        generator: g.name.clone(),
                        target: gens[t].name.clone(),
                        expected: g.degree + 1,
                        got: gens[t].degree,
                    });
                }
                if gens[t].d.is_some() {
                    return Err(BarError::DImageNotClosed {
                        generator: g.name.clone(),
                        target: gens[t].name.clone(),
                    });
                }
            }
        }
        Ok(Dga { gens, by_name })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn id_of(&self, name: &str) -> Result<GenId, BarError> {
        self.by_name.get(name).copied().ok_or_else(|| BarError::UnknownGenerator(name.into()))
    }

    pub fn name_of(&self, id: GenId) -> &str {
        &self.gens[id].name
    }

    pub fn degree_of(&self, id: GenId) -> usize {
        self.gens[id].degree
    }

    /// The declared d-image, if the generator is not closed.
    pub fn d_of(&self, id: GenId) -> Option<GenId> {
        self.gens[id].d
    }

    /// Iterate `(id, name, degree)` in id (= name) order.
    pub fn generators(&self) -> impl Iterator<Item = (GenId, &str, usize)> {
        self.gens.iter().enumerate().map(|(i, g)| (i, g.name.as_str(), g.degree))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.0.iter().map(|&g| self.gens[g].degree).sum()
    }

    fn odd(&self, id: GenId) -> bool {
        self.gens[id].degree % 2 == 1
    }

    /// Koszul product of two normalized monomials: `None` when an odd
    /// generator squares to zero, else the sorted monomial and the sign
    /// accumulated from transpositions of odd×odd pairs.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i32)> {
        let av = &a.0;
        let bv = &b.0;
        // suffix counts of odd-degree generators in a
        let mut odd_suffix: Vec<usize> = Vec::with_capacity(av.len() + 1);
        odd_suffix.resize(av.len() + 1, 0);
        for i in (0..av.len()).rev() {
            odd_suffix[i] = odd_suffix[i + 1] + usize::from(self.odd(av[i]));
        }
        let mut out = Vec::with_capacity(av.len() + bv.len());
        let mut sign = 1i32;
        let (mut i, mut j) = (0usize, 0usize);
        while i < av.len() && j < bv.len() {
            if av[i] == bv[j] && self.odd(av[i]) {
                return None;
            }
            if av[i] <= bv[j] {
                out.push(av[i]);
                i += 1;
            } else {
                if self.odd(bv[j]) && odd_suffix[i] % 2 == 1 {
                    sign = -sign;
                }
                out.push(bv[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&av[i..]);
        out.extend_from_slice(&bv[j..]);
        Some((Monomial(out), sign))
    }

    /// Graded Leibniz derivative of a monomial.
    pub fn d_monomial(&self, m: &Monomial) -> DgaElement {
        let mut out = DgaElement::zero();
        let mut prefix_degree = 0usize;
        for (a, &g) in m.0.iter().enumerate() {
            let Some(dg) = self.gens[g].d else {
                prefix_degree += self.gens[g].degree;
                continue;
            };
            // g₁…g_{a−1} · dg · g_{a+1}…, rebuilt through Koszul products
            let prefix = Monomial(m.0[..a].to_vec());
            let suffix = Monomial(m.0[a + 1..].to_vec());
            if let Some((left, s1)) = self.mul_monomials(&prefix, &Monomial(alloc::vec![dg])) {
                if let Some((whole, s2)) = self.mul_monomials(&left, &suffix) {
                    let mut sign = s1 * s2;
                    if prefix_degree % 2 == 1 {
                        sign = -sign;
                    }
                    accumulate(&mut out.terms, whole, Rational::from_integer(sign.into()));
                }
            }
            prefix_degree += self.gens[g].degree;
        }
        out
    }

    /// Bilinear extension of the Koszul product.
    pub fn wedge(&self, x: &DgaElement, y: &DgaElement) -> DgaElement {
        let mut out = DgaElement::zero();
        for (ma, ca) in &x.terms {
            for (mb, cb) in &y.terms {
                if let Some((m, s)) = self.mul_monomials(ma, mb) {
                    let mut c = ca.clone() * cb.clone();
                    if s < 0 {
                        c = -c;
                    }
                    accumulate(&mut out.terms, m, c);
                }
            }
        }
        out
    }

    /// Linear extension of the Leibniz derivative.
    pub fn d(&self, x: &DgaElement) -> DgaElement {
        let mut out = DgaElement::zero();
        for (m, c) in &x.terms {
            for (dm, dc) in &self.d_monomial(m).terms {
                accumulate(&mut out.terms, dm.clone(), c.clone() * dc.clone());
            }
        }
        out
    }

    pub fn generator_element(&self, id: GenId) -> DgaElement {
        DgaElement::from_monomial(Monomial(alloc::vec![id]))
    }

    /// Render a monomial as `g1*g2*…` (or `1` for the unit).
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.0.is_empty() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, &g) in m.0.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            out.push_str(&self.gens[g].name);
        }
        out
    }

    /// Render a bar key: `[a|b*c]` for based words, `[L:w|a|b|R:v]` for
    /// Hochschild words (mirroring the CLI input syntax).
    pub fn format_bar_key(&self, variant: BarVariant, key: &BarKey) -> String {
        let mut parts: Vec<String> = Vec::new();
        if variant == BarVariant::Hochschild {
            parts.push(format!("L:{}", self.format_monomial(&key.left)));
        }
        for letter in &key.word {
            parts.push(self.format_monomial(letter));
        }
        if variant == BarVariant::Hochschild {
            parts.push(format!("R:{}", self.format_monomial(&key.right)));
        }
        let mut out = String::from("[");
        out.push_str(&parts.join("|"));
        out.push(']');
        out
    }
}

/// A Koszul-normalized monomial: generator ids sorted ascending (= by name);
/// even-degree generators may repeat, odd-degree ones cannot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<GenId>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(id: GenId) -> Self {
        Monomial(alloc::vec![id])
    }

    pub fn generators(&self) -> &[GenId] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

/// A rational linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl DgaElement {
    pub fn zero() -> Self {
        DgaElement { terms: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        DgaElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &DgaElement) -> DgaElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DgaElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> DgaElement {
        use num_traits::Zero;
        if c.is_zero() {
            return DgaElement::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Bar words
// ---------------------------------------------------------------------------

/// Which complex a [`BarElement`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarVariant {
    /// `[ω₁|…|ω_k]`, both endpoints pinned; no boundary factors.
    Based,
    /// `[ω₀|ω₁…ω_k|ω_{k+1}]` with boundary monomials left and right.
    Hochschild,
}

/// One normalized bar monomial: boundary monomials (units in the based
/// variant) and a word of positive-degree letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BarKey {
    pub left: Monomial,
    pub word: Vec<Monomial>,
    pub right: Monomial,
}

/// A rational linear combination of bar monomials in one variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarElement {
    variant: BarVariant,
    terms: BTreeMap<BarKey, Rational>,
}

impl BarElement {
    pub fn zero(variant: BarVariant) -> Self {
        BarElement { variant, terms: BTreeMap::new() }
    }

    pub fn variant(&self) -> BarVariant {
        self.variant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BarElement) -> BarElement {
        assert_eq!(self.variant, other.variant, "bar variants must agree");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> BarElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl Dga {
    /// `[ω₁|…|ω_k]` in the based variant; letters may be sums and are
    /// expanded multilinearly. Every expanded letter monomial must have
    /// positive degree.
    pub fn based_word(&self, letters: &[DgaElement]) -> Result<BarElement, BarError> {
        self.word(BarVariant::Based, &DgaElement::unit(), letters, &DgaElement::unit())
    }

    /// `[left|ω₁…ω_k|right]` in the Hochschild variant.
    pub fn hochschild_word(
        &self,
        left: &DgaElement,
        letters: &[DgaElement],
        right: &DgaElement,
    ) -> Result<BarElement, BarError> {
        self.word(BarVariant::Hochschild, left, letters, right)
    }

    fn word(
        &self,
        variant: BarVariant,
        left: &DgaElement,
        letters: &[DgaElement],
        right: &DgaElement,
    ) -> Result<BarElement, BarError> {
        for letter in letters {
            for (m, _) in letter.terms() {
                if self.monomial_degree(m) == 0 {
                    return Err(BarError::ZeroDegreeLetter { letter: self.format_monomial(m) });
                }
            }
        }
        let mut out = BarElement::zero(variant);
        // multilinear expansion over boundary factors and letters
        let mut stack: Vec<(usize, Vec<Monomial>, Rational)> = Vec::new();
        for (lm, lc) in left.terms() {
            stack.push((0, alloc::vec![lm.clone()], lc.clone()));
        }
        while let Some((next, chosen, coeff)) = stack.pop() {
            if next == letters.len() {
                for (rm, rc) in right.terms() {
                    let mut word = chosen[1..].to_vec();
                    let key = BarKey {
                        left: chosen[0].clone(),
                        word: core::mem::take(&mut word),
                        right: rm.clone(),
                    };
                    accumulate(&mut out.terms, key, coeff.clone() * rc.clone());
                }
                continue;
            }
            for (m, c) in letters[next].terms() {
                let mut chosen2 = chosen.clone();
                chosen2.push(m.clone());
                stack.push((next + 1, chosen2, coeff.clone() * c.clone()));
            }
        }
        Ok(out)
    }

    /// Total degree of one bar monomial: boundary degrees plus Σ(pᵢ − 1).
    pub fn bar_key_degree(&self, variant: BarVariant, key: &BarKey) -> usize {
        let word: usize = key.word.iter().map(|m| self.monomial_degree(m) - 1).sum();
        match variant {
            BarVariant::Based => word,
            BarVariant::Hochschild => {
                word + self.monomial_degree(&key.left) + self.monomial_degree(&key.right)
            }
        }
    }

    /// The bar differential (based variant) / Hochschild differential
    /// (two-sided variant), with the Koszul signs of the boundary-product
    /// Stokes formula. Linear; exact.
    pub fn bar_differential(&self, e: &BarElement) -> BarElement {
        let mut out = BarElement::zero(e.variant);
        for (key, c) in &e.terms {
            self.bar_d_term(e.variant, key, c, &mut out);
        }
        out
    }

    fn bar_d_term(&self, variant: BarVariant, key: &BarKey, c: &Rational, out: &mut BarElement) {
        let k = key.word.len();
        let hoch = variant == BarVariant::Hochschild;
        let p0 = if hoch { self.monomial_degree(&key.left) } else { 0 };
        let p: Vec<usize> = key.word.iter().map(|m| self.monomial_degree(m)).collect();
        let psum: usize = p.iter().sum();

        let push = |out: &mut BarElement, key: BarKey, coeff: Rational, exp: usize| {
            let signed = if exp % 2 == 1 { -coeff } else { coeff };
            accumulate(&mut out.terms, key, signed);
        };

        // d on letter i, sign (−1)^{p₀+p₁+…+p_{i−1}+i} (p₀ only two-sided)
        let mut prefix = 0usize;
        for i in 1..=k {
            for (dm, dc) in &self.d_monomial(&key.word[i - 1]).terms {
                let mut word = key.word.clone();
                word[i - 1] = dm.clone();
                let new_key = BarKey { left: key.left.clone(), word, right: key.right.clone() };
                push(out, new_key, c.clone() * dc.clone(), p0 + prefix + i);
            }
            prefix += p[i - 1];
        }

        // merge letters i, i+1, sign (−1)^{p₀+p₁+…+pᵢ+i+1}
        let mut through = 0usize;
        for i in 1..k {
            through += p[i - 1]; // p₁+…+pᵢ
            if let Some((merged, s)) = self.mul_monomials(&key.word[i - 1], &key.word[i]) {
                let mut word = key.word.clone();
                word[i - 1] = merged;
                word.remove(i);
                let new_key = BarKey { left: key.left.clone(), word, right: key.right.clone() };
                let mut coeff = c.clone();
                if s < 0 {
                    coeff = -coeff;
                }
                push(out, new_key, coeff, p0 + through + i + 1);
            }
        }

        if !hoch {
            return;
        }

        // d on the left boundary factor, sign +1
        for (dm, dc) in &self.d_monomial(&key.left).terms {
            let new_key = BarKey { left: dm.clone(), word: key.word.clone(), right: key.right.clone() };
            push(out, new_key, c.clone() * dc.clone(), 0);
        }

        // d on the right boundary factor, sign (−1)^{p₀+p₁+…+p_k+k}
        for (dm, dc) in &self.d_monomial(&key.right).terms {
            let new_key = BarKey { left: key.left.clone(), word: key.word.clone(), right: dm.clone() };
            push(out, new_key, c.clone() * dc.clone(), p0 + psum + k);
        }

        if k == 0 {
            return;
        }

        // absorb the first letter into the left factor, sign −(−1)^{p₀}
        if let Some((m, s)) = self.mul_monomials(&key.left, &key.word[0]) {
            let new_key =
                BarKey { left: m, word: key.word[1..].to_vec(), right: key.right.clone() };
            let mut coeff = c.clone();
            if s < 0 {
                coeff = -coeff;
            }
            push(out, new_key, coeff, p0 + 1);
        }

        // absorb the last letter into the right factor,
        // sign (−1)^{p₀+p₁+…+p_{k−1}+k+1}
        if let Some((m, s)) = self.mul_monomials(&key.word[k - 1], &key.right) {
            let new_key =
                BarKey { left: key.left.clone(), word: key.word[..k - 1].to_vec(), right: m };
            let mut coeff = c.clone();
            if s < 0 {
                coeff = -coeff;
            }
            push(out, new_key, coeff, p0 + (psum - p[k - 1]) + k + 1);
        }
    }

    /// Apply the differential twice and normalize. The contract is that the
    /// result is exactly zero for every input; a nonzero return is a
    /// reportable failure of the complex, not a panic.
    pub fn certify_d_squared(&self, e: &BarElement) -> BarElement {
        self.bar_differential(&self.bar_differential(e))
    }
}
