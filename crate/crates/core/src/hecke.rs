//! The Iwahori–Hecke algebra of a Coxeter system with parameter `q`.
//!
//! Basis `e_w`, relations `e_s² = (q − 1)e_s + q·e_1` and the braid
//! relations. Products are computed from the one-letter rule
//! `e_s·e_w = e_{sw}` if `l(sw) > l(w)`, else `(q − 1)e_w + q·e_{sw}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::building::BallGraph;
use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::exact::{Rational, RationalJson};
use crate::harmonic::Cochain;
use crate::{Error, Result};

/// Finite rational combination of basis elements `e_w`.
#[derive(Debug, Clone)]
pub struct HeckeElement {
    system: Arc<CoxeterSystem>,
    q: Rational,
    support: BTreeMap<GroupElement, Rational>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.support == other.support && same_system(&self.system, &other.system)
    }
}

impl Eq for HeckeElement {}

fn same_system(a: &Arc<CoxeterSystem>, b: &Arc<CoxeterSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `e_w` with coefficient 1.
pub fn basis_element(system: &Arc<CoxeterSystem>, w: &GroupElement, q: Rational) -> HeckeElement {
    let w = system.with_length(w.clone()).unwrap_or_else(|_| w.clone());
    HeckeElement::zero(system, q).plus_term(w, Rational::one())
}

impl HeckeElement {
    pub fn zero(system: &Arc<CoxeterSystem>, q: Rational) -> Self {
        HeckeElement { system: Arc::clone(system), q, support: BTreeMap::new() }
    }

    pub fn one(system: &Arc<CoxeterSystem>, q: Rational) -> Self {
        basis_element(system, &system.identity(), q)
    }

    /// `e_s`.
    pub fn generator(system: &Arc<CoxeterSystem>, s: usize, q: Rational) -> Result<Self> {
        Ok(basis_element(system, &system.generator(s)?, q))
    }

    /// `e_w` for the element spelled by `word`.
    pub fn from_word(system: &Arc<CoxeterSystem>, word: &[usize], q: Rational) -> Result<Self> {
        Ok(basis_element(system, &system.element_from_word(word)?, q))
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn support(&self) -> &BTreeMap<GroupElement, Rational> {
        &self.support
    }

    pub fn coefficient(&self, w: &GroupElement) -> Rational {
        self.support.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn plus_term(mut self, w: GroupElement, c: Rational) -> Self {
        self.add_term(w, c);
        self
    }

    fn add_term(&mut self, w: GroupElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&w) + c;
        if sum.is_zero() {
            self.support.remove(&w);
        } else {
            self.support.insert(w, sum);
        }
    }

    fn check_compatible(&self, other: &HeckeElement) -> Result<()> {
        if !same_system(&self.system, &other.system) {
            return Err(Error::HeckeMismatch("different Coxeter systems"));
        }
        if self.q != other.q {
            return Err(Error::HeckeMismatch("different parameters q"));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.support {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> HeckeElement {
        let mut out = HeckeElement::zero(&self.system, self.q.clone());
        for (w, x) in &self.support {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// `e_s · self`.
    pub fn left_mul_generator(&self, s: usize) -> Result<HeckeElement> {
        let sys = &self.system;
        let g = sys.generator(s)?;
        let mut out = HeckeElement::zero(sys, self.q.clone());
        for (u, c) in &self.support {
            let su = sys.with_length(sys.multiply(&g, u))?;
            if sys.length(&su)? > sys.length(u)? {
                out.add_term(su, c.clone());
            } else {
                out.add_term(u.clone(), c * (&self.q - Rational::one()));
                out.add_term(su, c * &self.q);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<HeckeJson> {
        let mut terms = self
            .support
            .iter()
            .map(|(w, c)| {
                Ok(TermJson {
                    word: self.system.reduced_word(w)?,
                    coefficient: c.into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        terms.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        Ok(HeckeJson { q: (&self.q).into(), terms })
    }
}

/// `a · b`, decomposing each `v` in the support of `a` into a reduced word
/// and applying its letters to `b` from the right end.
pub fn multiply(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.check_compatible(b)?;
    let mut out = HeckeElement::zero(&a.system, a.q.clone());
    for (v, c) in &a.support {
        let mut acc = b.scale(c);
        for &s in a.system.reduced_word(v)?.iter().rev() {
            acc = acc.left_mul_generator(s)?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// `χ(Σ c_w e_w) = Σ c_w (−1)^{l(w)}`.
pub fn special_character(x: &HeckeElement) -> Result<Rational> {
    let mut total = Rational::zero();
    for (w, c) in &x.support {
        if x.system.length(w)? % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Ok(total)
}

/// Right action of `e_s` on a finitely supported chamber function:
/// `(f ⋆ e_s)(C)` is the sum of `f` over the other chambers through the
/// type-`s` face of `C`.
pub fn convolve_chamber_function(f: &Cochain, s: usize, ball: &BallGraph) -> Result<Cochain> {
    let n = ball.context().n;
    if s >= n {
        return Err(Error::UnknownGenerator(s));
    }
    let Cochain::Map(values) = f else {
        return Err(Error::SupportOnBoundary);
    };
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (chamber, value) in values {
        let i = ball.index_of(chamber).ok_or(Error::SupportOnBoundary)?;
        let face = &ball.faces()[ball.face_of(i, s)];
        if !face.interior {
            return Err(Error::SupportOnBoundary);
        }
        for &j in &face.chambers {
            if j != i {
                *out.entry(j).or_insert_with(Rational::zero) += value;
            }
        }
    }
    Ok(Cochain::from_values(
        out.into_iter().map(|(j, v)| (ball.chamber(j).clone(), v)),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub q: RationalJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub coefficient: RationalJson,
}
