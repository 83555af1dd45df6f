//! Exact nonnegativity certificates on `Ω`.
//!
//! A certificate writes a polynomial as `Σ kᵢ ∏ atoms` with every `kᵢ ≥ 0`
//! and every atom nonnegative on `Ω`. Checking one is exact polynomial
//! arithmetic: validate each atom, then compare the expansion to the target.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bivariate::{BivariatePoly, OmegaDomain};
use crate::error::{Error, Result};
use crate::scalar::q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn poly(self) -> BivariatePoly {
        match self {
            Var::X => BivariatePoly::x(),
            Var::Y => BivariatePoly::y(),
        }
    }

    fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

/// A factor that is nonnegative on `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub enum NonnegAtom {
    X,
    Y,
    OneMinusX,
    OneMinusY,
    /// `1 − x² − y`.
    OmegaGap,
    /// `a + b·v`; nonnegative on `[0, 1]` iff `a ≥ 0` and `a + b ≥ 0`.
    LinearUnit { var: Var, a: BigRational, b: BigRational },
    /// `a + b·v + c·v²` with `a > 0` and `b² − 4ac < 0`: positive everywhere.
    PositiveQuadratic {
        var: Var,
        a: BigRational,
        b: BigRational,
        c: BigRational,
    },
}

impl NonnegAtom {
    pub fn poly(&self) -> BivariatePoly {
        match self {
            NonnegAtom::X => BivariatePoly::x(),
            NonnegAtom::Y => BivariatePoly::y(),
            NonnegAtom::OneMinusX => one().sub(&BivariatePoly::x()),
            NonnegAtom::OneMinusY => one().sub(&BivariatePoly::y()),
            NonnegAtom::OmegaGap => OmegaDomain::gap().sub(&BivariatePoly::y()),
            NonnegAtom::LinearUnit { var, a, b } => {
                BivariatePoly::constant(a.clone()).add(&var.poly().scale(b))
            }
            NonnegAtom::PositiveQuadratic { var, a, b, c } => {
                let v = var.poly();
                BivariatePoly::constant(a.clone())
                    .add(&v.scale(b))
                    .add(&v.pow(2).scale(c))
            }
        }
    }

    /// Discriminant `b² − 4ac` of a quadratic atom.
    pub fn discriminant(&self) -> Option<BigRational> {
        match self {
            NonnegAtom::PositiveQuadratic { a, b, c, .. } => Some(b * b - q(4, 1) * a * c),
            _ => None,
        }
    }

    /// Checks the side conditions that make the atom nonnegative on `Ω`.
    pub fn check(&self) -> Result<()> {
        let ok = match self {
            NonnegAtom::LinearUnit { a, b, .. } => !a.is_negative() && !(a + b).is_negative(),
            NonnegAtom::PositiveQuadratic { a, .. } => {
                a.is_positive() && self.discriminant().is_some_and(|d| d.is_negative())
            }
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("atom {self} is not nonnegative on the domain")))
        }
    }
}

fn one() -> BivariatePoly {
    BivariatePoly::constant(BigRational::one())
}

fn ratio(r: &BigRational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn signed_term(out: &mut String, k: &BigRational, body: &str) {
    if k.is_zero() {
        return;
    }
    out.push_str(if k.is_negative() { "-" } else { "+" });
    let a = k.abs();
    if a.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("({}){body}", ratio(&a)));
    }
}

impl fmt::Display for NonnegAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonnegAtom::X => f.write_str("x"),
            NonnegAtom::Y => f.write_str("y"),
            NonnegAtom::OneMinusX => f.write_str("(1-x)"),
            NonnegAtom::OneMinusY => f.write_str("(1-y)"),
            NonnegAtom::OmegaGap => f.write_str("(1-x^2-y)"),
            NonnegAtom::LinearUnit { var, a, b } => {
                let mut s = ratio(a);
                signed_term(&mut s, b, &format!("{}", var.symbol()));
                write!(f, "({s})")
            }
            NonnegAtom::PositiveQuadratic { var, a, b, c } => {
                let v = var.symbol();
                let mut s = ratio(a);
                signed_term(&mut s, b, &format!("{v}"));
                signed_term(&mut s, c, &format!("{v}^2"));
                write!(f, "({s})")
            }
        }
    }
}

/// `Σ kᵢ ∏ atomsᵢ` with `kᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignCertificate {
    pub terms: Vec<(BigRational, Vec<NonnegAtom>)>,
}

impl SignCertificate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, k: BigRational, atoms: impl IntoIterator<Item = NonnegAtom>) -> Self {
        self.terms.push((k, atoms.into_iter().collect()));
        self
    }

    pub fn expand(&self) -> BivariatePoly {
        self.terms.iter().fold(BivariatePoly::zero(), |acc, (k, atoms)| {
            let prod = atoms.iter().fold(one(), |p, a| p.mul(&a.poly()));
            acc.add(&prod.scale(k))
        })
    }

    /// Proves `target ≥ 0` on `Ω`: every coefficient nonnegative, every atom
    /// valid, and the expansion equal to `target` exactly.
    pub fn verify(&self, target: &BivariatePoly) -> Result<()> {
        for (k, atoms) in &self.terms {
            if k.is_negative() {
                return Err(Error::InvalidArgument(format!("negative coefficient {}", ratio(k))));
            }
            for a in atoms {
                a.check()?;
            }
        }
        let diff = self.expand().sub(target);
        if diff.is_zero() {
            Ok(())
        } else {
            Err(Error::SymbolicInconsistency {
                form: format!("certificate {self} differs from target by {}", diff.to_unicode()),
            })
        }
    }

    /// Quadratic atoms, for reporting their discriminants.
    pub fn quadratics(&self) -> impl Iterator<Item = &NonnegAtom> {
        self.terms
            .iter()
            .flat_map(|(_, atoms)| atoms.iter())
            .filter(|a| matches!(a, NonnegAtom::PositiveQuadratic { .. }))
    }
}

impl fmt::Display for SignCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, atoms)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !k.is_one() || atoms.is_empty() {
                write!(f, "{}", ratio(k))?;
                if !atoms.is_empty() {
                    f.write_str("*")?;
                }
            }
            for (i, a) in atoms.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}
