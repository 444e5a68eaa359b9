//! Presentations of `H_n` and `G_n`, words, and representations.
//!
//! Generators are indexed from 1 as in the literature: `r_1..r_n` for `H_n`,
//! `g_1..g_{n−1}` for `G_n` with `g_i = r_n r_i`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::geom2::ProjMatrix;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Generated by `n` involutions with `r_n ⋯ r_1 = 1`.
    H,
    /// The even subgroup, a closed surface group of genus `n/2 − 1`.
    G,
}

impl Kind {
    pub fn letter(&self) -> char {
        match self {
            Kind::H => 'r',
            Kind::G => 'g',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::H => f.write_str("H"),
            Kind::G => f.write_str("G"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    kind: Kind,
    n: usize,
}

impl Presentation {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        if n < 6 || n % 2 != 0 {
            return Err(Error::InvalidPresentation(format!("n = {n} must be even and at least 6")));
        }
        Ok(Self { kind, n })
    }

    pub fn h(n: usize) -> Result<Self> {
        Self::new(Kind::H, n)
    }

    pub fn g(n: usize) -> Result<Self> {
        Self::new(Kind::G, n)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_count(&self) -> usize {
        match self.kind {
            Kind::H => self.n,
            Kind::G => self.n - 1,
        }
    }

    /// The long relator(s): `r_n ⋯ r_1` for `H_n`, both alternating relators
    /// for `G_n`.
    pub fn main_relators(&self) -> Vec<(String, Word)> {
        let n = self.n;
        match self.kind {
            Kind::H => vec![(format!("r_{n}...r_1"), Word::from_letters((1..=n).rev().map(|i| Letter::new(i, 1))))],
            Kind::G => {
                let odd_plus = |i: usize| if i % 2 == 1 { 1 } else { -1 };
                let w1 = Word::from_letters((1..n).rev().map(|i| Letter::new(i, odd_plus(i))));
                let w2 = Word::from_letters((1..n).rev().map(|i| Letter::new(i, -odd_plus(i))));
                vec![(w1.to_string(), w1), (w2.to_string(), w2)]
            }
        }
    }

    /// Every defining relator with a printable name.
    pub fn relators(&self) -> Vec<(String, Word)> {
        let mut out = Vec::new();
        if self.kind == Kind::H {
            for i in 1..=self.n {
                out.push((format!("r_{i}^2"), Word::from_letters([Letter::new(i, 1), Letter::new(i, 1)])));
            }
        }
        out.extend(self.main_relators());
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.n)
    }
}

/// A generator (1-based) raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, exponent: i8) -> Self {
        Self { index, inverse: exponent < 0 }
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x_{}", l.index)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Matrix groups a representation can take values in.
pub trait GroupElement: Copy + Mul<Output = Self> {
    fn identity() -> Self;
    fn inv(&self) -> Self;
    /// Distance to the identity modulo the centre (sign or phase).
    fn distance_to_identity(&self) -> f64;
    /// Entrywise distance modulo the centre.
    fn distance(&self, other: &Self) -> f64;
}

impl GroupElement for ProjMatrix {
    fn identity() -> Self {
        ProjMatrix::IDENTITY
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn distance_to_identity(&self) -> f64 {
        self.dist_to_identity()
    }

    fn distance(&self, other: &Self) -> f64 {
        self.dist(other)
    }
}

/// One image per generator of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<M = ProjMatrix> {
    presentation: Presentation,
    images: Vec<M>,
}

impl<M: GroupElement> Representation<M> {
    /// Checks only the image count.
    pub fn from_parts(presentation: Presentation, images: Vec<M>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::InvalidInput(format!(
                "{presentation} needs {} generator images, got {}",
                presentation.generator_count(),
                images.len()
            )));
        }
        Ok(Self { presentation, images })
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn kind(&self) -> Kind {
        self.presentation.kind
    }

    pub fn n(&self) -> usize {
        self.presentation.n
    }

    pub fn images(&self) -> &[M] {
        &self.images
    }

    /// Image of generator `i` (1-based).
    pub fn image(&self, i: usize) -> Result<M> {
        if i == 0 || i > self.images.len() {
            return Err(Error::IndexOutOfRange { index: i, count: self.images.len() });
        }
        Ok(self.images[i - 1])
    }

    /// Image of generator `i` (1-based); panics when out of range.
    pub fn at(&self, i: usize) -> M {
        self.images[i - 1]
    }

    fn letter_image(&self, l: &Letter) -> Result<M> {
        let m = self.image(l.index)?;
        Ok(if l.inverse { m.inv() } else { m })
    }

    pub fn eval_word(&self, w: &Word) -> Result<M> {
        let mut p = M::identity();
        for l in w.letters() {
            p = p * self.letter_image(l)?;
        }
        Ok(p)
    }

    /// `[1, y₁, y₁y₂, …, y₁⋯y_m]` for `w = y₁⋯y_m`.
    pub fn prefix_products(&self, w: &Word) -> Result<Vec<M>> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut p = M::identity();
        out.push(p);
        for l in w.letters() {
            p = p * self.letter_image(l)?;
            out.push(p);
        }
        Ok(out)
    }

    /// Named residuals of all defining relations.
    pub fn relation_residuals(&self) -> Vec<(String, f64)> {
        let letter = self.kind().letter();
        self.presentation
            .relators()
            .into_iter()
            .map(|(name, w)| {
                let r = self.eval_word(&w).map(|m| m.distance_to_identity()).unwrap_or(f64::INFINITY);
                (name.replace('x', &letter.to_string()), r)
            })
            .collect()
    }

    /// Largest relation residual.
    pub fn relation_residual(&self) -> f64 {
        self.relation_residuals().into_iter().fold(0.0, |m, (_, r)| m.max(r))
    }

    /// `M·ρ·M⁻¹`.
    pub fn conjugated(&self, m: &M) -> Self {
        let mi = m.inv();
        Self { presentation: self.presentation, images: self.images.iter().map(|g| *m * *g * mi).collect() }
    }

    pub fn map<N: GroupElement>(&self, f: impl Fn(&M) -> N) -> Representation<N> {
        Representation { presentation: self.presentation, images: self.images.iter().map(f).collect() }
    }

    /// Largest generator-wise distance (modulo the centre).
    pub fn max_distance(&self, other: &Self) -> f64 {
        if self.presentation != other.presentation {
            return f64::INFINITY;
        }
        self.images.iter().zip(&other.images).fold(0.0, |m, (a, b)| m.max(a.distance(b)))
    }
}

impl Representation<ProjMatrix> {
    /// Checks the image count and, for `H_n`, that every image is a half-turn.
    pub fn new(presentation: Presentation, images: Vec<ProjMatrix>) -> Result<Self> {
        let rep = Self::from_parts(presentation, images)?;
        if rep.kind() == Kind::H {
            for (i, m) in rep.images.iter().enumerate() {
                if m.trace().abs() >= tol::HALF_TURN {
                    return Err(Error::InvalidInput(format!(
                        "r_{} has trace {:e}; H_n images must be half-turns",
                        i + 1,
                        m.trace()
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn canonicalized(&self) -> Self {
        self.map(|m| m.canonical())
    }
}

/// The induced representation of `G_n`, `g_i ↦ ρ(r_n)ρ(r_i)`.
pub fn g_from_r(rep_h: &Representation) -> Result<Representation> {
    if rep_h.kind() != Kind::H {
        return Err(Error::InvalidInput("g_from_r needs an H_n representation".into()));
    }
    let residual = rep_h.relation_residual();
    if !(residual < tol::INPUT_RESIDUAL) {
        return Err(Error::InvalidInput(format!("relation residual {residual:e} is too large")));
    }
    let n = rep_h.n();
    let rn = rep_h.at(n);
    let images = (1..n).map(|i| rn * rep_h.at(i)).collect();
    Representation::new(Presentation::g(n)?, images)
}

/// Extends a `G_n` representation by a half-turn `r` that inverts every
/// generator: `r_n ↦ r`, `r_i ↦ r⁻¹·g_i`.
pub fn h_from_g(rep_g: &Representation, r: &ProjMatrix) -> Result<Representation> {
    if rep_g.kind() != Kind::G {
        return Err(Error::InvalidInput("h_from_g needs a G_n representation".into()));
    }
    if r.trace().abs() >= tol::HALF_TURN {
        return Err(Error::NotAHalfTurn { trace: r.trace() });
    }
    let n = rep_g.n();
    for i in 1..n {
        let g = rep_g.at(i);
        let defect = r.conj(&g).dist(&g.inverse());
        if !(defect < tol::INPUT_RESIDUAL) {
            return Err(Error::NotHyperellipticInvolution { index: i, defect });
        }
    }
    let ri = r.inverse();
    let mut images: Vec<ProjMatrix> = (1..n).map(|i| ri * rep_g.at(i)).collect();
    images.push(*r);
    Representation::new(Presentation::h(n)?, images)
}
