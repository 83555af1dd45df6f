//! The four subordination classes, derivation of `a₂…a₅` in terms of the
//! Schwarz coefficients, and the third Hankel determinant
//! `H₃(1) = a₃(a₂a₄−a₃²) − a₄(a₄−a₂a₃) + a₅(a₃−a₂²)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{CoeffPolynomial, NumericPolynomial, c};
use crate::scalar::q;
use crate::series::TruncatedSeries;

type PolySeries = TruncatedSeries<CoeffPolynomial>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    /// `zf'/f ≺ (1+z)/(1−z)`.
    Starlike,
    /// `2zf'/(f(z)−f(−z)) ≺ (1+z)/(1−z)`.
    SymmetricPoints,
    /// `zf'/f ≺ e^z`.
    Exponential,
    /// `zf'/f ≺ z + √(1+z²)`.
    Lune,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [
        ClassId::Starlike,
        ClassId::SymmetricPoints,
        ClassId::Exponential,
        ClassId::Lune,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            ClassId::Starlike => "starlike",
            ClassId::SymmetricPoints => "symmetric",
            ClassId::Exponential => "exponential",
            ClassId::Lune => "lune",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ClassId::Starlike => "S*",
            ClassId::SymmetricPoints => "S*_s",
            ClassId::Exponential => "S*_e",
            ClassId::Lune => "S*_q",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            ClassId::Starlike => "zf'(z)(1-w(z)) = f(z)(1+w(z))",
            ClassId::SymmetricPoints => "2zf'(z)(1-w(z)) = (f(z)-f(-z))(1+w(z))",
            ClassId::Exponential => "zf'(z) = f(z)exp(w(z))",
            ClassId::Lune => "zf'(z) = f(z)(w(z)+sqrt(1+w(z)^2))",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "starlike" => Ok(ClassId::Starlike),
            "symmetric" | "symmetric-points" => Ok(ClassId::SymmetricPoints),
            "exponential" => Ok(ClassId::Exponential),
            "lune" => Ok(ClassId::Lune),
            other => Err(Error::InvalidArgument(format!("unknown class `{other}`"))),
        }
    }
}

/// A class together with its defining functional equation, written as a
/// residual `LHS − RHS` that vanishes for members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSpec {
    pub id: ClassId,
}

impl ClassSpec {
    pub fn new(id: ClassId) -> Self {
        Self { id }
    }

    /// `LHS − RHS` of the defining relation for the given `f` and `ω`.
    pub fn residual<S: crate::scalar::Coefficient>(
        &self,
        f: &TruncatedSeries<S>,
        omega: &TruncatedSeries<S>,
    ) -> Result<TruncatedSeries<S>> {
        let n = f.order();
        let one = TruncatedSeries::one(n);
        let zf = f.z_derivative();
        match self.id {
            ClassId::Starlike => {
                let lhs = zf.checked_mul(&one.checked_sub(omega)?)?;
                let rhs = f.checked_mul(&one.checked_add(omega)?)?;
                lhs.checked_sub(&rhs)
            }
            ClassId::SymmetricPoints => {
                let lhs = zf.scale(&S::from_ratio(2, 1)).checked_mul(&one.checked_sub(omega)?)?;
                let odd = f.checked_sub(&f.negate_argument())?;
                let rhs = odd.checked_mul(&one.checked_add(omega)?)?;
                lhs.checked_sub(&rhs)
            }
            ClassId::Exponential => zf.checked_sub(&f.checked_mul(&omega.exp()?)?),
            ClassId::Lune => {
                let sq = omega.checked_mul(omega)?;
                let target = omega.checked_add(&sq.sqrt1p()?)?;
                zf.checked_sub(&f.checked_mul(&target)?)
            }
        }
    }
}

impl From<ClassId> for ClassSpec {
    fn from(id: ClassId) -> Self {
        Self::new(id)
    }
}

/// `ω(z) = c₁z + ⋯ + c₄z⁴` truncated at `order`.
fn symbolic_omega(order: usize) -> PolySeries {
    let mut coeffs = vec![CoeffPolynomial::zero()];
    coeffs.extend((1..=4).map(c));
    TruncatedSeries::truncated(coeffs, order)
}

/// Solves the class relation order by order for `a₂…a_up_to`.
///
/// At order `k` the residual is affine in the unknown `a_k`; its slope must
/// be a nonzero rational constant.
pub fn derive_coefficients(spec: ClassSpec, up_to: usize) -> Result<Vec<CoeffPolynomial>> {
    if !(2..=5).contains(&up_to) {
        return Err(Error::InvalidArgument(format!(
            "coefficient index {up_to} outside 2..=5"
        )));
    }
    let n = up_to;
    let omega = symbolic_omega(n);
    let mut f = PolySeries::identity(n);
    for k in 2..=n {
        f.set_coeff(k, CoeffPolynomial::zero());
        let r0 = spec.residual(&f, &omega)?.coeff(k).clone();
        f.set_coeff(k, CoeffPolynomial::one());
        let r1 = spec.residual(&f, &omega)?.coeff(k).clone();
        let slope = (&r1 - &r0).as_constant().ok_or_else(|| Error::DerivationFailure {
            order: k,
            reason: String::from("residual is not affine in the unknown coefficient"),
        })?;
        if slope.is_zero() {
            return Err(Error::DerivationFailure {
                order: k,
                reason: String::from("unknown coefficient drops out of the relation"),
            });
        }
        f.set_coeff(k, (-&r0).scale(&slope.recip()));
    }
    let check = spec.residual(&f, &omega)?;
    if let Some(k) = (0..=n).find(|&k| !check.coeff(k).is_zero()) {
        return Err(Error::DerivationFailure {
            order: k,
            reason: String::from("residual does not vanish after solving"),
        });
    }
    Ok(f.into_coeffs().into_iter().skip(2).collect())
}

/// `a₃(a₂a₄−a₃²) − a₄(a₄−a₂a₃) + a₅(a₃−a₂²)` for arbitrary scalars.
pub fn hankel3_determinant<T>(a2: T, a3: T, a4: T, a5: T) -> T
where
    T: Clone + core::ops::Add<Output = T> + core::ops::Sub<Output = T> + core::ops::Mul<Output = T>,
{
    a3.clone() * (a2.clone() * a4.clone() - a3.clone() * a3.clone())
        - a4.clone() * (a4.clone() - a2.clone() * a3.clone())
        + a5 * (a3.clone() - a2.clone() * a2)
}

/// One summand `coefficient · Π factorᵉ` of a grouped display.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedTerm {
    pub coefficient: BigRational,
    pub factors: Vec<(CoeffPolynomial, u32)>,
}

impl GroupedTerm {
    pub fn new(coefficient: BigRational, factors: Vec<(CoeffPolynomial, u32)>) -> Self {
        Self { coefficient, factors }
    }

    pub fn expand(&self) -> CoeffPolynomial {
        self.factors
            .iter()
            .fold(CoeffPolynomial::constant(self.coefficient.clone()), |acc, (p, e)| {
                &acc * &p.pow(*e)
            })
    }

    fn eval(&self, c: &[Complex64; 4]) -> Complex64 {
        self.factors.iter().fold(
            Complex64::new(crate::scalar::to_f64(&self.coefficient), 0.0),
            |acc, (p, e)| acc * p.eval(c).powu(*e),
        )
    }
}

/// `scale · Σ terms`, a structured rendering of `H₃(1)` that exposes the
/// functionals the bound pipelines estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedForm {
    pub name: &'static str,
    pub scale: BigRational,
    pub terms: Vec<GroupedTerm>,
}

impl GroupedForm {
    pub fn expand(&self) -> CoeffPolynomial {
        let sum = self
            .terms
            .iter()
            .fold(CoeffPolynomial::zero(), |acc, t| &acc + &t.expand());
        sum.scale(&self.scale)
    }

    /// Numeric value, evaluated factor by factor without expanding.
    pub fn eval(&self, c: &[Complex64; 4]) -> Complex64 {
        let s: Complex64 = self.terms.iter().map(|t| t.eval(c)).sum();
        s * crate::scalar::to_f64(&self.scale)
    }

    pub fn to_unicode(&self) -> String {
        let mut body = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coefficient < BigRational::zero();
            let a = if neg { -t.coefficient.clone() } else { t.coefficient.clone() };
            if neg {
                body.push('-');
            } else if i > 0 {
                body.push('+');
            }
            if !a.is_one() || t.factors.is_empty() {
                if a.is_integer() {
                    body.push_str(&format!("{}", a.numer()));
                } else {
                    body.push_str(&format!("({}/{})", a.numer(), a.denom()));
                }
            }
            for (p, e) in &t.factors {
                let single = p.len() == 1;
                let s = p.to_unicode();
                let wrapped = if single && !s.starts_with('-') { s } else { format!("({s})") };
                body.push_str(&wrapped);
                if *e > 1 {
                    body.push(['⁰', '¹', '²', '³', '⁴', '⁵', '⁶'][(*e as usize).min(6)]);
                }
            }
        }
        if self.scale.is_one() {
            body
        } else {
            format!("({}/{})[{}]", self.scale.numer(), self.scale.denom(), body)
        }
    }
}

/// `H₃(1)` for one class: the determinant polynomial and the grouped forms
/// that expand to it.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelExpression {
    pub class: ClassId,
    pub coefficients: Vec<CoeffPolynomial>,
    pub polynomial: CoeffPolynomial,
    pub forms: Vec<GroupedForm>,
}

impl HankelExpression {
    /// The grouped decomposition used by the bound pipeline.
    pub fn grouped(&self) -> &GroupedForm {
        self.forms
            .iter()
            .find(|f| f.name == "grouped")
            .expect("every class carries a grouped form")
    }
}

fn mono(coef: BigRational, m: [u8; 4]) -> CoeffPolynomial {
    CoeffPolynomial::monomial(coef, m)
}

fn lin(parts: &[(BigRational, [u8; 4])]) -> CoeffPolynomial {
    parts
        .iter()
        .fold(CoeffPolynomial::zero(), |acc, (k, m)| &acc + &mono(k.clone(), *m))
}

const C2: [u8; 4] = [0, 1, 0, 0];
const C3: [u8; 4] = [0, 0, 1, 0];
const C1C2: [u8; 4] = [1, 1, 0, 0];
const C1_3: [u8; 4] = [3, 0, 0, 0];
const C1_2: [u8; 4] = [2, 0, 0, 0];

/// The grouped displays for each class.
pub fn grouped_forms(id: ClassId) -> Vec<GroupedForm> {
    let c1 = || c(1);
    let c2 = || c(2);
    let c4 = || c(4);
    match id {
        ClassId::Starlike => vec![GroupedForm {
            name: "grouped",
            scale: q(1, 18),
            terms: vec![
                GroupedTerm::new(q(-8, 1), vec![(lin(&[(q(1, 1), C3), (q(-5, 8), C1C2)]), 2)]),
                GroupedTerm::new(q(-63, 8), vec![(c1(), 2), (c2(), 2)]),
                GroupedTerm::new(q(6, 1), vec![(c1(), 3), (lin(&[(q(1, 1), C3), (q(1, 2), C1C2)]), 1)]),
                GroupedTerm::new(q(9, 1), vec![(lin(&[(q(1, 1), C2), (q(-1, 1), C1_2)]), 1), (c4(), 1)]),
            ],
        }],
        ClassId::SymmetricPoints => vec![
            GroupedForm {
                name: "raw",
                scale: q(1, 4),
                terms: vec![
                    GroupedTerm::new(q(-1, 1), vec![(c(3), 2)]),
                    GroupedTerm::new(q(2, 1), vec![(c1(), 1), (c2(), 1), (c(3), 1)]),
                    GroupedTerm::new(q(1, 1), vec![(c1(), 2), (c2(), 2)]),
                    GroupedTerm::new(q(2, 1), vec![(c2(), 1), (c4(), 1)]),
                ],
            },
            GroupedForm {
                name: "grouped",
                scale: q(1, 4),
                terms: vec![
                    GroupedTerm::new(q(-1, 1), vec![(lin(&[(q(1, 1), C3), (q(-1, 1), C1C2)]), 2)]),
                    GroupedTerm::new(q(2, 1), vec![(c1(), 2), (c2(), 2)]),
                    GroupedTerm::new(q(2, 1), vec![(c2(), 1), (c4(), 1)]),
                ],
            },
        ],
        ClassId::Exponential => vec![
            GroupedForm {
                name: "raw",
                scale: q(1, 1),
                terms: vec![
                    GroupedTerm::new(q(5, 72), vec![(c1(), 1), (c2(), 1), (c(3), 1)]),
                    GroupedTerm::new(q(-5, 72), vec![(c1(), 2), (c2(), 2)]),
                    GroupedTerm::new(q(13, 864), vec![(c1(), 4), (c2(), 1)]),
                    GroupedTerm::new(q(17, 432), vec![(c1(), 3), (c(3), 1)]),
                    GroupedTerm::new(q(-1, 9), vec![(c(3), 2)]),
                    GroupedTerm::new(q(-13, 5184), vec![(c1(), 6)]),
                    GroupedTerm::new(q(1, 16), vec![(lin(&[(q(2, 1), C2), (q(-1, 1), C1_2)]), 1), (c4(), 1)]),
                ],
            },
            GroupedForm {
                name: "grouped",
                scale: q(1, 1),
                terms: vec![
                    GroupedTerm::new(q(-1, 9), vec![(lin(&[(q(1, 1), C3), (q(-5, 16), C1C2)]), 2)]),
                    GroupedTerm::new(q(-15, 256), vec![(c1(), 2), (c2(), 2)]),
                    GroupedTerm::new(
                        q(17, 432),
                        vec![(c1(), 3), (lin(&[(q(1, 1), C3), (q(13, 34), C1C2), (q(-13, 204), C1_3)]), 1)],
                    ),
                    GroupedTerm::new(q(1, 16), vec![(lin(&[(q(2, 1), C2), (q(-1, 1), C1_2)]), 1), (c4(), 1)]),
                ],
            },
        ],
        ClassId::Lune => vec![GroupedForm {
            name: "grouped",
            scale: q(1, 1),
            terms: vec![
                GroupedTerm::new(q(-1, 9), vec![(lin(&[(q(1, 1), C3), (q(-5, 16), C1C2)]), 2)]),
                GroupedTerm::new(q(-31, 256), vec![(c1(), 2), (c2(), 2)]),
                GroupedTerm::new(
                    q(11, 144),
                    vec![(c1(), 3), (lin(&[(q(1, 1), C3), (q(5, 11), C1C2), (q(-7, 44), C1_3)]), 1)],
                ),
                GroupedTerm::new(q(1, 8), vec![(lin(&[(q(1, 1), C2), (q(-1, 2), C1_2)]), 1), (c4(), 1)]),
            ],
        }],
    }
}

/// Derives `a₂…a₅`, substitutes them into the determinant and checks every
/// grouped form against the result.
pub fn hankel3_polynomial(spec: ClassSpec) -> Result<HankelExpression> {
    let a = derive_coefficients(spec, 5)?;
    let polynomial = hankel3_determinant(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone());
    let forms = grouped_forms(spec.id);
    for form in &forms {
        if form.expand() != polynomial {
            return Err(Error::SymbolicInconsistency {
                form: format!("{}:{}", spec.id, form.name),
            });
        }
    }
    Ok(HankelExpression {
        class: spec.id,
        coefficients: a,
        polynomial,
        forms,
    })
}

/// Compiled numeric evaluators for `H₃(1)` of one class.
#[derive(Debug, Clone)]
pub struct HankelEvaluator {
    class: ClassId,
    polynomial: NumericPolynomial,
    coefficients: [NumericPolynomial; 4],
    grouped: GroupedForm,
}

impl HankelEvaluator {
    pub fn new(class: ClassId) -> Result<Self> {
        let expr = hankel3_polynomial(class.into())?;
        Ok(Self::from_expression(&expr))
    }

    pub fn from_expression(expr: &HankelExpression) -> Self {
        let a = &expr.coefficients;
        Self {
            class: expr.class,
            polynomial: NumericPolynomial::from(&expr.polynomial),
            coefficients: [
                NumericPolynomial::from(&a[0]),
                NumericPolynomial::from(&a[1]),
                NumericPolynomial::from(&a[2]),
                NumericPolynomial::from(&a[3]),
            ],
            grouped: expr.grouped().clone(),
        }
    }

    pub fn class(&self) -> ClassId {
        self.class
    }

    /// `H₃(1)` from the expanded polynomial.
    pub fn eval(&self, c: &[Complex64; 4]) -> Complex64 {
        self.polynomial.eval(c)
    }

    /// `H₃(1)` by evaluating `a₂…a₅` first and then the 3×3 determinant.
    pub fn eval_via_coefficients(&self, c: &[Complex64; 4]) -> Complex64 {
        let [a2, a3, a4, a5] = [0, 1, 2, 3].map(|i| self.coefficients[i].eval(c));
        hankel3_determinant(a2, a3, a4, a5)
    }

    /// `H₃(1)` from the unexpanded grouped form.
    pub fn eval_via_grouped(&self, c: &[Complex64; 4]) -> Complex64 {
        self.grouped.eval(c)
    }
}

/// Numeric `H₃(1)` at `c`. Builds the evaluator on every call; use
/// [`HankelEvaluator`] in loops.
pub fn eval_hankel3(spec: ClassSpec, c: &[Complex64; 4]) -> Result<Complex64> {
    Ok(HankelEvaluator::new(spec.id)?.eval(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn index_range_is_enforced() {
        let spec = ClassSpec::new(ClassId::Starlike);
        assert!(derive_coefficients(spec, 1).is_err());
        assert!(derive_coefficients(spec, 6).is_err());
        assert_eq!(derive_coefficients(spec, 2).unwrap(), vec![c(1).scale(&q(2, 1))]);
    }

    #[test]
    fn exponential_low_order() {
        let a = derive_coefficients(ClassId::Exponential.into(), 3).unwrap();
        assert_eq!(a[0], c(1));
        assert_eq!(a[1], &c(2).scale(&q(1, 2)) + &c(1).pow(2).scale(&q(3, 4)));
    }

    #[test]
    fn degree_never_exceeds_six() {
        for id in ClassId::ALL {
            let h = hankel3_polynomial(id.into()).unwrap();
            assert!(h.polynomial.total_degree() <= 6, "{id}");
        }
    }

    #[test]
    fn koebe_and_trivial_points() {
        let zero = [z(0.0); 4];
        let e1 = [z(1.0), z(0.0), z(0.0), z(0.0)];
        let star = ClassId::Starlike.into();
        assert_eq!(eval_hankel3(star, &zero).unwrap(), z(0.0));
        assert!(eval_hankel3(star, &e1).unwrap().norm() < 1e-15);
        assert!(eval_hankel3(ClassId::SymmetricPoints.into(), &e1).unwrap().norm() < 1e-15);
    }

    #[test]
    fn class_names_round_trip() {
        for id in ClassId::ALL {
            assert_eq!(id.name().parse::<ClassId>().unwrap(), id);
        }
        assert!("bogus".parse::<ClassId>().is_err());
    }

    #[test]
    fn grouped_rendering() {
        let expr = hankel3_polynomial(ClassId::SymmetricPoints.into()).unwrap();
        assert_eq!(expr.grouped().to_unicode(), "(1/4)[-(c₃-c₁c₂)²+2c₁²c₂²+2c₂c₄]");
    }
}
