//! Exact symbolic *-algebra generated by the left/right creation operators,
//! the vacuum projection, and the diagonal peripheral unitaries.
//!
//! Every element is a finite linear combination of normal-form monomials
//!
//! ```text
//!     coeff . l_I  r_J  c  r_K*  l_M*        c in { 1, p, x_lambda }
//! ```
//!
//! with creations on the left (left-side before right-side), the central
//! factor in the middle, and annihilations on the right (right-side before
//! left-side). The rewrite rules orienting an arbitrary generator word into
//! this form are the operator relations
//!
//! ```text
//!     l_i* l_j = r_i* r_j = delta_ij
//!     r_i* l_j = l_j r_i* + delta_ij p        l_i* r_j = r_j l_i* + delta_ij p
//!     p l_i = p r_i = l_i* p = r_i* p = 0     p p = p
//!     r_j l_i = l_i r_j                       l_i* r_j* = r_j* l_i*
//! ```
//!
//! together with the phase commutations `x l_i = lambda l_i x`,
//! `r_i* x = lambda x r_i*` (same for the other side), `x y = x_{lambda mu}`
//! and `p x = x p = p` for the diagonal unitaries `x = x_lambda`.

pub mod coeff;

pub use coeff::{gauss, gauss_i_power, ratio, Coeff, GaussianRational};

use crate::error::{Error, Result};
use crate::fock_core::{Weights, Word};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A single generator of the algebra, or a diagonal phase unitary.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator<C: Coeff> {
    LeftCreate(u8),
    RightCreate(u8),
    VacuumProjection,
    /// The unitary acting as `lambda^{|I|}` on the degree-`|I|` subspace.
    Phase(C),
    RightAnnihilate(u8),
    LeftAnnihilate(u8),
}

impl<C: Coeff> Generator<C> {
    /// Position class in the normal form; a word is normal iff classes are
    /// non-decreasing and at most one central generator is present.
    fn class(&self) -> u8 {
        match self {
            Generator::LeftCreate(_) => 0,
            Generator::RightCreate(_) => 1,
            Generator::VacuumProjection | Generator::Phase(_) => 2,
            Generator::RightAnnihilate(_) => 3,
            Generator::LeftAnnihilate(_) => 4,
        }
    }
}

/// Central factor of a normal-form monomial.
#[derive(Debug, Clone, PartialEq)]
pub enum Center<C: Coeff> {
    One,
    Vacuum,
    Phase(C),
}

impl<C: Coeff> Center<C> {
    fn adjoint(&self) -> Center<C> {
        match self {
            Center::One => Center::One,
            Center::Vacuum => Center::Vacuum,
            Center::Phase(l) => Center::Phase(l.conj()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Center::One => 0,
            Center::Vacuum => 1,
            Center::Phase(_) => 2,
        }
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Center::Phase(a), Center::Phase(b)) => a.key_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

/// The shape `l_I r_J c r_K* l_M*` of a monomial; the map key of an element.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialShape<C: Coeff> {
    pub lc: Word,
    pub rc: Word,
    pub center: Center<C>,
    pub ra: Word,
    pub la: Word,
}

impl<C: Coeff> MonomialShape<C> {
    pub fn identity() -> Self {
        MonomialShape {
            lc: Word::empty(),
            rc: Word::empty(),
            center: Center::One,
            ra: Word::empty(),
            la: Word::empty(),
        }
    }

    /// Net degree raise of the monomial as an operator.
    pub fn degree_raise(&self) -> i64 {
        self.lc.len() as i64 + self.rc.len() as i64
            - self.ra.len() as i64
            - self.la.len() as i64
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.lc
            .cmp(&other.lc)
            .then_with(|| self.rc.cmp(&other.rc))
            .then_with(|| self.center.key_cmp(&other.center))
            .then_with(|| self.ra.cmp(&other.ra))
            .then_with(|| self.la.cmp(&other.la))
    }

    /// Generator word realizing the monomial; annihilator letters reversed so
    /// that `r_K* = r_{k_m}* ... r_{k_1}*`.
    fn to_generators(&self) -> Vec<Generator<C>> {
        let mut gens = Vec::new();
        for &i in self.lc.letters() {
            gens.push(Generator::LeftCreate(i));
        }
        for &i in self.rc.letters() {
            gens.push(Generator::RightCreate(i));
        }
        match &self.center {
            Center::One => {}
            Center::Vacuum => gens.push(Generator::VacuumProjection),
            Center::Phase(l) => gens.push(Generator::Phase(l.clone())),
        }
        for &i in self.ra.letters().iter().rev() {
            gens.push(Generator::RightAnnihilate(i));
        }
        for &i in self.la.letters().iter().rev() {
            gens.push(Generator::LeftAnnihilate(i));
        }
        gens
    }
}

impl<C: Coeff> Eq for MonomialShape<C> {}

impl<C: Coeff> PartialOrd for MonomialShape<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_key(other))
    }
}

impl<C: Coeff> Ord for MonomialShape<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other)
    }
}

/// Finite linear combination of normal-form monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<C: Coeff> {
    terms: BTreeMap<MonomialShape<C>, C>,
}

/// Default float-mode element.
pub type Element = AlgebraElement<Complex64>;
/// Exact-mode element over the Gaussian rationals.
pub type ExactElement = AlgebraElement<GaussianRational>;

/// Step budget for a single normal-form computation.
const REWRITE_BUDGET: usize = 2_000_000;

/// Outcome of one rule application at a position: scalar factor and the
/// replacement segment for the two generators matched. `None` means no rule
/// applies at this position.
fn rewrite_pair<C: Coeff>(
    a: &Generator<C>,
    b: &Generator<C>,
) -> Option<Vec<(C, Vec<Generator<C>>)>> {
    use Generator::*;
    match (a, b) {
        // annihilator meets creator
        (LeftAnnihilate(i), LeftCreate(j)) => Some(if i == j {
            vec![(C::one(), vec![])]
        } else {
            vec![]
        }),
        (RightAnnihilate(i), RightCreate(j)) => Some(if i == j {
            vec![(C::one(), vec![])]
        } else {
            vec![]
        }),
        (RightAnnihilate(i), LeftCreate(j)) => {
            let mut out = vec![(
                C::one(),
                vec![LeftCreate(*j), RightAnnihilate(*i)],
            )];
            if i == j {
                out.push((C::one(), vec![VacuumProjection]));
            }
            Some(out)
        }
        (LeftAnnihilate(i), RightCreate(j)) => {
            let mut out = vec![(
                C::one(),
                vec![RightCreate(*j), LeftAnnihilate(*i)],
            )];
            if i == j {
                out.push((C::one(), vec![VacuumProjection]));
            }
            Some(out)
        }
        // vacuum annihilation rules
        (VacuumProjection, LeftCreate(_)) | (VacuumProjection, RightCreate(_)) => Some(vec![]),
        (LeftAnnihilate(_), VacuumProjection) | (RightAnnihilate(_), VacuumProjection) => {
            Some(vec![])
        }
        (VacuumProjection, VacuumProjection) => {
            Some(vec![(C::one(), vec![VacuumProjection])])
        }
        // creations of different sides commute, and the adjoint relation
        (RightCreate(j), LeftCreate(i)) => Some(vec![(
            C::one(),
            vec![LeftCreate(*i), RightCreate(*j)],
        )]),
        (LeftAnnihilate(i), RightAnnihilate(j)) => Some(vec![(
            C::one(),
            vec![RightAnnihilate(*j), LeftAnnihilate(*i)],
        )]),
        // phase commutations
        (Phase(l), LeftCreate(i)) => Some(vec![(
            l.clone(),
            vec![LeftCreate(*i), Phase(l.clone())],
        )]),
        (Phase(l), RightCreate(i)) => Some(vec![(
            l.clone(),
            vec![RightCreate(*i), Phase(l.clone())],
        )]),
        (RightAnnihilate(i), Phase(l)) => Some(vec![(
            l.clone(),
            vec![Phase(l.clone()), RightAnnihilate(*i)],
        )]),
        (LeftAnnihilate(i), Phase(l)) => Some(vec![(
            l.clone(),
            vec![Phase(l.clone()), LeftAnnihilate(*i)],
        )]),
        (Phase(l), Phase(m)) => Some(vec![(C::one(), vec![Phase(l.mul(m))])]),
        (Phase(_), VacuumProjection) | (VacuumProjection, Phase(_)) => {
            Some(vec![(C::one(), vec![VacuumProjection])])
        }
        _ => None,
    }
}

fn all_redexes<C: Coeff>(gens: &[Generator<C>]) -> Vec<usize> {
    (0..gens.len().saturating_sub(1))
        .filter(|&k| rewrite_pair(&gens[k], &gens[k + 1]).is_some())
        .collect()
}

/// Parses a fully rewritten generator word into its monomial shape.
/// Drops `Phase(1)` so the identity has a unique shape.
fn shape_of_normal<C: Coeff>(gens: &[Generator<C>]) -> MonomialShape<C> {
    debug_assert!(gens.windows(2).all(|w| w[0].class() <= w[1].class()));
    let mut shape = MonomialShape::identity();
    let mut ra_rev: Vec<u8> = Vec::new();
    let mut la_rev: Vec<u8> = Vec::new();
    for g in gens {
        match g {
            Generator::LeftCreate(i) => shape.lc = shape.lc.concat(&Word::letter(*i)),
            Generator::RightCreate(i) => shape.rc = shape.rc.concat(&Word::letter(*i)),
            Generator::VacuumProjection => shape.center = Center::Vacuum,
            Generator::Phase(l) => {
                if !l.is_one() {
                    shape.center = Center::Phase(l.clone());
                }
            }
            Generator::RightAnnihilate(i) => ra_rev.push(*i),
            Generator::LeftAnnihilate(i) => la_rev.push(*i),
        }
    }
    ra_rev.reverse();
    la_rev.reverse();
    shape.ra = Word::new(ra_rev);
    shape.la = Word::new(la_rev);
    shape
}

/// Rewrites `coeff * gens` to normal form, choosing the redex with
/// `pick(number_of_redexes)`. The leftmost strategy is `|_| 0`.
fn normal_form_with<C: Coeff>(
    coeff: C,
    gens: Vec<Generator<C>>,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<AlgebraElement<C>> {
    let mut out = AlgebraElement::zero();
    let mut work: Vec<(C, Vec<Generator<C>>)> = vec![(coeff, gens)];
    let mut budget = REWRITE_BUDGET;
    while let Some((c, string)) = work.pop() {
        if c.is_negligible() {
            continue;
        }
        let redexes = all_redexes(&string);
        if redexes.is_empty() {
            out.add_term(shape_of_normal(&string), c);
            continue;
        }
        if budget == 0 {
            return Err(Error::RewriteBudget(REWRITE_BUDGET));
        }
        budget -= 1;
        let k = redexes[pick(redexes.len()) % redexes.len()];
        let results = rewrite_pair(&string[k], &string[k + 1]).expect("redex vanished");
        for (scalar, segment) in results {
            let mut next = Vec::with_capacity(string.len() + segment.len());
            next.extend_from_slice(&string[..k]);
            next.extend(segment);
            next.extend_from_slice(&string[k + 2..]);
            work.push((c.mul(&scalar), next));
        }
    }
    Ok(out)
}

/// Normal form of a generator word with the given coefficient, applying the
/// rewrite rules exhaustively (leftmost redex first).
pub fn normal_form<C: Coeff>(gens: Vec<Generator<C>>, coeff: C) -> Result<AlgebraElement<C>> {
    normal_form_with(coeff, gens, &mut |_| 0)
}

/// Normal form computed with a randomized redex order; used by the confluence
/// property tests.
pub fn normal_form_randomized<C: Coeff, R: Rng>(
    gens: Vec<Generator<C>>,
    coeff: C,
    rng: &mut R,
) -> Result<AlgebraElement<C>> {
    normal_form_with(coeff, gens, &mut |k| rng.gen_range(0..k))
}

impl<C: Coeff> AlgebraElement<C> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(MonomialShape::identity(), C::one())
    }

    pub fn monomial(shape: MonomialShape<C>, coeff: C) -> Self {
        let mut e = Self::zero();
        e.add_term(shape, coeff);
        e
    }

    /// `l_I`
    pub fn left_creation_word(word: Word) -> Self {
        Self::monomial(
            MonomialShape {
                lc: word,
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    /// `r_I`
    pub fn right_creation_word(word: Word) -> Self {
        Self::monomial(
            MonomialShape {
                rc: word,
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    /// `r_I*`
    pub fn right_annihilation_word(word: Word) -> Self {
        Self::monomial(
            MonomialShape {
                ra: word,
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    /// `l_I*`
    pub fn left_annihilation_word(word: Word) -> Self {
        Self::monomial(
            MonomialShape {
                la: word,
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    /// `p`, the vacuum projection.
    pub fn vacuum_projection() -> Self {
        Self::monomial(
            MonomialShape {
                center: Center::Vacuum,
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    /// `x_lambda`, the diagonal phase unitary. `lambda = 1` gives the identity.
    pub fn peripheral_unitary(lambda: C) -> Self {
        if lambda.is_one() {
            return Self::one();
        }
        Self::monomial(
            MonomialShape {
                center: Center::Phase(lambda),
                ..MonomialShape::identity()
            },
            C::one(),
        )
    }

    fn add_term(&mut self, shape: MonomialShape<C>, coeff: C) {
        if coeff.is_negligible() {
            return;
        }
        let entry = self.terms.entry(shape);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_negligible() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialShape<C>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, shape: &MonomialShape<C>) -> C {
        self.terms.get(shape).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (shape, c) in &other.terms {
            out.add_term(shape.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, scalar: &C) -> Self {
        let mut out = Self::zero();
        for (shape, c) in &self.terms {
            out.add_term(shape.clone(), c.mul(scalar));
        }
        out
    }

    /// Normal form of the product, by bilinear extension of the rewrite
    /// system over concatenated monomials.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (sa, ca) in &self.terms {
            let ga = sa.to_generators();
            for (sb, cb) in &other.terms {
                let mut gens = ga.clone();
                gens.extend(sb.to_generators());
                let nf = normal_form(gens, ca.mul(cb))?;
                out = out.add(&nf);
            }
        }
        Ok(out)
    }

    /// Conjugate-linear anti-homomorphism.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (shape, c) in &self.terms {
            let adj = MonomialShape {
                lc: shape.la.clone(),
                rc: shape.ra.clone(),
                center: shape.center.adjoint(),
                ra: shape.rc.clone(),
                la: shape.lc.clone(),
            };
            out.add_term(adj, c.conj());
        }
        out
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_term_distance(&self, other: &Self) -> f64 {
        self.sub(other)
            .terms
            .values()
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).terms.values().all(|c| c.abs_f64() <= tol)
    }

    /// Maximal degree raise over the terms (0 for the zero element).
    pub fn degree_raise(&self) -> i64 {
        self.terms
            .keys()
            .map(|s| s.degree_raise())
            .max()
            .unwrap_or(0)
    }
}

impl<C: Coeff> fmt::Display for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (shape, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let z = c.to_c64();
            write!(f, "({:.6}{:+.6}i)", z.re, z.im)?;
            if !shape.lc.is_empty() {
                write!(f, " l{}", shape.lc)?;
            }
            if !shape.rc.is_empty() {
                write!(f, " r{}", shape.rc)?;
            }
            match &shape.center {
                Center::One => {}
                Center::Vacuum => write!(f, " p")?,
                Center::Phase(l) => {
                    let z = l.to_c64();
                    write!(f, " x[{:.6}{:+.6}i]", z.re, z.im)?;
                }
            }
            if !shape.ra.is_empty() {
                write!(f, " r*{}", shape.ra)?;
            }
            if !shape.la.is_empty() {
                write!(f, " l*{}", shape.la)?;
            }
        }
        Ok(())
    }
}

/// Weight system lifted into the coefficient ring, for the symbolic ucp map.
#[derive(Debug, Clone)]
pub struct SymbolicWeights<C: Coeff> {
    omega: Vec<C>,
}

impl<C: Coeff> SymbolicWeights<C> {
    pub fn new(omega: Vec<C>) -> Self {
        SymbolicWeights { omega }
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn weight(&self, letter: u8) -> &C {
        &self.omega[(letter - 1) as usize]
    }

    /// Product of letter weights along a word.
    pub fn weight_of_word(&self, word: &Word) -> C {
        let mut acc = C::one();
        for &l in word.letters() {
            acc = acc.mul(self.weight(l));
        }
        acc
    }
}

impl SymbolicWeights<Complex64> {
    pub fn from_weights(w: &Weights) -> Self {
        SymbolicWeights {
            omega: w
                .as_slice()
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect(),
        }
    }
}

impl SymbolicWeights<GaussianRational> {
    /// Uniform exact weights 1/n.
    pub fn uniform_exact(n: usize) -> Self {
        SymbolicWeights {
            omega: (0..n)
                .map(|_| GaussianRational::new(ratio(1, n as i64), ratio(0, 1)))
                .collect(),
        }
    }
}

/// The symbolic ucp map: sum over i of `omega_i l_i* x l_i`, normal formed.
pub fn apply_ucp_symbolic<C: Coeff>(
    w: &SymbolicWeights<C>,
    x: &AlgebraElement<C>,
) -> Result<AlgebraElement<C>> {
    let mut out = AlgebraElement::zero();
    for i in 1..=w.n() as u8 {
        for (shape, c) in x.terms() {
            let mut gens = vec![Generator::LeftAnnihilate(i)];
            gens.extend(shape.to_generators());
            gens.push(Generator::LeftCreate(i));
            let nf = normal_form(gens, c.mul(w.weight(i)))?;
            out = out.add(&nf);
        }
    }
    Ok(out)
}

/// Returns `lambda` with `|lambda| = 1` if the element satisfies
/// `P(x) = lambda x` term by term within `tol`; `None` otherwise.
pub fn eigen_check_symbolic<C: Coeff>(
    w: &SymbolicWeights<C>,
    x: &AlgebraElement<C>,
    tol: f64,
) -> Result<Option<C>> {
    if x.is_zero() {
        return Ok(None);
    }
    let y = apply_ucp_symbolic(w, x)?;
    // Ratio at the first (canonical order) substantial term of x.
    let (shape, c) = x
        .terms()
        .find(|(_, c)| c.abs_f64() > tol)
        .expect("nonzero element has a substantial term");
    let lambda = y.coefficient_of(shape).div(c);
    if !coeff::is_unit_modulus(&lambda, tol) {
        return Ok(None);
    }
    if y.approx_eq(&x.scale(&lambda), tol) {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

/// An element together with its verified peripheral eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenTaggedElement<C: Coeff> {
    pub element: AlgebraElement<C>,
    pub lambda: C,
}

impl<C: Coeff> EigenTaggedElement<C> {
    /// Checks `P(x) = lambda x` on construction.
    pub fn new(
        w: &SymbolicWeights<C>,
        element: AlgebraElement<C>,
        tol: f64,
    ) -> Result<Self> {
        match eigen_check_symbolic(w, &element, tol)? {
            Some(lambda) => Ok(EigenTaggedElement { element, lambda }),
            None => {
                let y = apply_ucp_symbolic(w, &element)?;
                let residual = y.max_term_distance(&element);
                Err(Error::NotEigen { residual })
            }
        }
    }
}

/// The modified Choi-Effros product on tagged eigen-elements: iterates
/// `z_{k+1} = (lambda mu)^{-1} P(z_k)` from `z_0 = x y` until the term map
/// stabilizes (exact equality in the exact ring, max coefficient difference
/// below `tol` in the float ring).
pub fn choi_effros_symbolic<C: Coeff>(
    w: &SymbolicWeights<C>,
    x: &EigenTaggedElement<C>,
    y: &EigenTaggedElement<C>,
    tol: f64,
    max_iter: usize,
) -> Result<AlgebraElement<C>> {
    let inv_phase = C::one().div(&x.lambda.mul(&y.lambda));
    let mut z = x.element.multiply(&y.element)?;
    let mut delta = f64::INFINITY;
    for _ in 0..max_iter {
        let next = apply_ucp_symbolic(w, &z)?.scale(&inv_phase);
        delta = next.max_term_distance(&z);
        let stable = if tol == 0.0 { next == z } else { delta <= tol };
        if stable {
            return Ok(next);
        }
        z = next;
    }
    Err(Error::Convergence {
        iters: max_iter,
        delta,
    })
}

/// Canonical JSON form of a monomial; `phase_re`/`phase_im` are present only
/// for phase-centered monomials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialJson {
    pub coeff_re: f64,
    pub coeff_im: f64,
    pub lc: Vec<u8>,
    pub rc: Vec<u8>,
    pub eps: bool,
    pub ra: Vec<u8>,
    pub la: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_im: Option<f64>,
}

impl<C: Coeff> AlgebraElement<C> {
    /// Canonical serialization: one record per monomial, sorted by shape.
    pub fn to_json_terms(&self) -> Vec<MonomialJson> {
        self.terms
            .iter()
            .map(|(shape, c)| {
                let z = c.to_c64();
                let (eps, phase) = match &shape.center {
                    Center::One => (false, None),
                    Center::Vacuum => (true, None),
                    Center::Phase(l) => (false, Some(l.to_c64())),
                };
                MonomialJson {
                    coeff_re: z.re,
                    coeff_im: z.im,
                    lc: shape.lc.letters().to_vec(),
                    rc: shape.rc.letters().to_vec(),
                    eps,
                    ra: shape.ra.letters().to_vec(),
                    la: shape.la.letters().to_vec(),
                    phase_re: phase.map(|p| p.re),
                    phase_im: phase.map(|p| p.im),
                }
            })
            .collect()
    }
}

impl Element {
    pub fn from_json_terms(terms: &[MonomialJson]) -> Self {
        let mut e = Element::zero();
        for t in terms {
            let center = match (t.eps, t.phase_re) {
                (true, _) => Center::Vacuum,
                (false, Some(re)) => Center::Phase(Complex64::new(re, t.phase_im.unwrap_or(0.0))),
                (false, None) => Center::One,
            };
            e.add_term(
                MonomialShape {
                    lc: Word::new(t.lc.clone()),
                    rc: Word::new(t.rc.clone()),
                    center,
                    ra: Word::new(t.ra.clone()),
                    la: Word::new(t.la.clone()),
                },
                Complex64::new(t.coeff_re, t.coeff_im),
            );
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type G = Generator<Complex64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normal_form_commutation_relation() {
        // r_1* l_1 -> l_1 r_1* + p
        let e = normal_form::<Complex64>(
            vec![G::RightAnnihilate(1), G::LeftCreate(1)],
            Coeff::one(),
        )
        .unwrap();
        let expected = Element::left_creation_word(Word::from([1]))
            .multiply(&Element::right_annihilation_word(Word::from([1])))
            .unwrap()
            .add(&Element::vacuum_projection());
        assert!(e.approx_eq(&expected, 0.0));
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn normal_form_vacuum_kills_creation() {
        // p l_1 -> 0
        let e = normal_form::<Complex64>(
            vec![G::VacuumProjection, G::LeftCreate(1)],
            Coeff::one(),
        )
        .unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn normal_form_cross_side_commutes() {
        // l_1* r_2 -> r_2 l_1*
        let e = normal_form::<Complex64>(
            vec![G::LeftAnnihilate(1), G::RightCreate(2)],
            Coeff::one(),
        )
        .unwrap();
        let expected = Element::monomial(
            MonomialShape {
                rc: Word::from([2]),
                la: Word::from([1]),
                ..MonomialShape::identity()
            },
            Coeff::one(),
        );
        assert!(e.approx_eq(&expected, 0.0));
    }

    #[test]
    fn multiply_unit_and_already_normal() {
        let x = Element::left_creation_word(Word::from([1, 2]));
        assert!(Element::one().multiply(&x).unwrap().approx_eq(&x, 0.0));

        // (l_1 l_2) (l_2* l_1*) is already normal: no rule applies.
        let y = Element::left_annihilation_word(Word::from([1, 2]).reverse())
            .adjoint()
            .adjoint();
        let prod = x.multiply(&y).unwrap();
        assert_eq!(prod.num_terms(), 1);
        let (shape, _) = prod.terms().next().unwrap();
        assert_eq!(shape.lc, Word::from([1, 2]));
        assert_eq!(shape.la, Word::from([2, 1]));
    }

    #[test]
    fn multiply_annihilator_meets_creator() {
        // r_1* . l_1 = l_1 r_1* + p
        let prod = Element::right_annihilation_word(Word::from([1]))
            .multiply(&Element::left_creation_word(Word::from([1])))
            .unwrap();
        assert_eq!(prod.num_terms(), 2);
        assert_eq!(
            prod.coefficient_of(&MonomialShape {
                center: Center::Vacuum,
                ..MonomialShape::identity()
            }),
            Coeff::one()
        );
    }

    #[test]
    fn adjoint_examples() {
        let l1 = Element::left_creation_word(Word::from([1]));
        let l1_star = l1.adjoint();
        let (shape, _) = l1_star.terms().next().unwrap();
        assert_eq!(shape.la, Word::from([1]));

        let ip = Element::vacuum_projection().scale(&c(0.0, 1.0));
        let adj = ip.adjoint();
        assert_eq!(
            adj.coefficient_of(&MonomialShape {
                center: Center::Vacuum,
                ..MonomialShape::identity()
            }),
            c(0.0, -1.0)
        );

        // (l_1 r_2*)* = r_2 l_1*
        let x = Element::left_creation_word(Word::from([1]))
            .multiply(&Element::right_annihilation_word(Word::from([2])))
            .unwrap();
        let adj = x.adjoint();
        let (shape, _) = adj.terms().next().unwrap();
        assert_eq!(shape.rc, Word::from([2]));
        assert_eq!(shape.la, Word::from([1]));
        assert!(x.adjoint().adjoint().approx_eq(&x, 0.0));
    }

    #[test]
    fn ucp_symbolic_unital_and_kills_vacuum() {
        let w = SymbolicWeights::from_weights(&Weights::new(vec![0.3, 0.7]).unwrap());
        let one = Element::one();
        assert!(apply_ucp_symbolic(&w, &one).unwrap().approx_eq(&one, 1e-15));
        let p = Element::vacuum_projection();
        assert!(apply_ucp_symbolic(&w, &p).unwrap().is_zero());
    }

    #[test]
    fn ucp_symbolic_right_creation_fixed() {
        let w = SymbolicWeights::from_weights(&Weights::new(vec![0.3, 0.7]).unwrap());
        let r1 = Element::right_creation_word(Word::from([1]));
        let out = apply_ucp_symbolic(&w, &r1).unwrap();
        assert!(out.approx_eq(&r1, 1e-15));
        assert_eq!(
            eigen_check_symbolic(&w, &r1, 1e-12).unwrap(),
            Some(Coeff::one())
        );
    }

    #[test]
    fn ucp_symbolic_phase_eigen() {
        // P(x_lambda) = lambda x_lambda, exactly in the exact ring.
        let w = SymbolicWeights::uniform_exact(2);
        let i = gauss_i_power(1);
        let x = ExactElement::peripheral_unitary(i.clone());
        let out = apply_ucp_symbolic(&w, &x).unwrap();
        assert_eq!(out, x.scale(&i));
        assert_eq!(eigen_check_symbolic(&w, &x, 0.0).unwrap(), Some(i));
    }

    #[test]
    fn eigen_check_rejects_vacuum() {
        let w = SymbolicWeights::from_weights(&Weights::uniform(2).unwrap());
        let p = Element::vacuum_projection();
        assert_eq!(eigen_check_symbolic(&w, &p, 1e-12).unwrap(), None);
    }

    #[test]
    fn ucp_on_r_times_eigen() {
        // P(r_i y) = lambda r_i y + omega_i p y l_i for eigen y; here y = x_i.
        let w = SymbolicWeights::uniform_exact(2);
        let lam = gauss_i_power(1);
        let y = ExactElement::peripheral_unitary(lam.clone());
        let r1y = ExactElement::right_creation_word(Word::from([1]))
            .multiply(&y)
            .unwrap();
        let out = apply_ucp_symbolic(&w, &r1y).unwrap();
        // p x_lambda l_1 = p l_1 = 0, so the correction vanishes here.
        assert_eq!(out, r1y.scale(&lam));
    }

    #[test]
    fn choi_symbolic_phases_multiply() {
        let w = SymbolicWeights::uniform_exact(2);
        let i = gauss_i_power(1);
        let xi = EigenTaggedElement::new(&w, ExactElement::peripheral_unitary(i.clone()), 0.0)
            .unwrap();
        let prod = choi_effros_symbolic(&w, &xi, &xi, 0.0, 8).unwrap();
        assert_eq!(prod, ExactElement::peripheral_unitary(gauss_i_power(2)));
    }

    #[test]
    fn choi_symbolic_r_with_rstar() {
        // r_1 o r_1* = r_1 r_1* + omega_1 p.
        let w = SymbolicWeights::uniform_exact(2);
        let r1 = EigenTaggedElement::new(
            &w,
            ExactElement::right_creation_word(Word::from([1])),
            0.0,
        )
        .unwrap();
        let r1s = EigenTaggedElement::new(
            &w,
            ExactElement::right_annihilation_word(Word::from([1])),
            0.0,
        )
        .unwrap();
        let prod = choi_effros_symbolic(&w, &r1, &r1s, 0.0, 8).unwrap();
        let expected = ExactElement::right_creation_word(Word::from([1]))
            .multiply(&ExactElement::right_annihilation_word(Word::from([1])))
            .unwrap()
            .add(&ExactElement::vacuum_projection().scale(&gauss(1, 2, 0, 1)));
        assert_eq!(prod, expected);
    }

    #[test]
    fn choi_symbolic_unit() {
        let w = SymbolicWeights::from_weights(&Weights::uniform(2).unwrap());
        let one = EigenTaggedElement::new(&w, Element::one(), 1e-12).unwrap();
        let prod = choi_effros_symbolic(&w, &one, &one, 1e-12, 8).unwrap();
        assert!(prod.approx_eq(&Element::one(), 1e-13));
    }

    #[test]
    fn randomized_confluence_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let gens: Vec<G> = vec![
            G::RightAnnihilate(1),
            G::LeftCreate(1),
            G::Phase(c(0.0, 1.0)),
            G::LeftAnnihilate(2),
            G::RightCreate(2),
            G::VacuumProjection,
            G::LeftCreate(2),
        ];
        let reference = normal_form(gens.clone(), Coeff::one()).unwrap();
        for _ in 0..20 {
            let alt = normal_form_randomized(gens.clone(), Coeff::one(), &mut rng).unwrap();
            assert!(alt.approx_eq(&reference, 1e-12));
        }
    }

    #[test]
    fn json_roundtrip() {
        let e = Element::right_creation_word(Word::from([1, 2]))
            .multiply(&Element::peripheral_unitary(c(0.0, 1.0)))
            .unwrap()
            .add(&Element::vacuum_projection().scale(&c(0.25, 0.0)));
        let json = e.to_json_terms();
        let back = Element::from_json_terms(&json);
        assert!(back.approx_eq(&e, 1e-15));
    }
}
