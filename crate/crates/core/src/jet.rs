//! Truncated Taylor-jet arithmetic.
//!
//! A [`Jet`] of order `k` stores the scaled derivatives
//! `f, f', f''/2!, ..., f^(k)/k!` of a scalar function along one parameter.
//! Propagating jets through arithmetic yields derivatives that are exact to
//! roundoff, which is what the frame and curvature computations downstream
//! need (nested finite differencing would lose roughly half the significant
//! digits per derivative order).

use smallvec::SmallVec;

use crate::scalar::Scalar;

/// Domain failures of jet arithmetic, without source context.
/// The expression evaluator attaches the offending subexpression.
#[derive(Debug, Clone, PartialEq)]
pub enum JetError {
    DivisionByZero,
    LogNonPositive(f64),
    SqrtNegative(f64),
    SqrtZeroDerivative,
    FractionalPowerNegativeBase(f64),
    TanPole,
}

impl JetError {
    pub fn message(&self) -> String {
        match self {
            JetError::DivisionByZero => "division by zero".to_string(),
            JetError::LogNonPositive(v) => format!("log of non-positive value {v}"),
            JetError::SqrtNegative(v) => format!("sqrt of negative value {v}"),
            JetError::SqrtZeroDerivative => "sqrt of zero with requested derivatives".to_string(),
            JetError::FractionalPowerNegativeBase(v) => {
                format!("fractional power of negative base {v}")
            }
            JetError::TanPole => "tan evaluated at a pole".to_string(),
        }
    }
}

type Coeffs<F> = SmallVec<[F; 8]>;

/// Value plus scaled derivatives to a fixed truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<F> {
    coeffs: Coeffs<F>,
}

impl<F: Scalar> Jet<F> {
    /// Jet of a constant: all derivative coefficients zero.
    pub fn constant(value: F, order: usize) -> Self {
        let mut coeffs = Coeffs::with_capacity(order + 1);
        coeffs.push(value);
        coeffs.resize(order + 1, F::zero());
        Jet { coeffs }
    }

    /// Jet of the identity seed `t ↦ t` at the given value.
    pub fn variable(value: F, order: usize) -> Self {
        let mut jet = Self::constant(value, order);
        if order >= 1 {
            jet.coeffs[1] = F::one();
        }
        jet
    }

    /// Build from raw scaled coefficients `f, f', f''/2!, ...`.
    pub fn from_coeffs(coeffs: &[F]) -> Self {
        assert!(!coeffs.is_empty(), "jet needs at least a value coefficient");
        Jet {
            coeffs: Coeffs::from_slice(coeffs),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> F {
        self.coeffs[0]
    }

    pub fn coeff(&self, j: usize) -> F {
        self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Unscaled derivative `f^(j) = j! * c_j`.
    pub fn derivative(&self, j: usize) -> F {
        let mut factorial = F::one();
        for i in 2..=j {
            factorial *= F::from_usize(i).unwrap();
        }
        self.coeffs[j] * factorial
    }

    /// Jet of `f'` to order `self.order() - 1`, from the same expansion.
    pub fn differentiate(&self) -> Self {
        assert!(self.order() >= 1, "cannot differentiate an order-0 jet");
        let mut coeffs = Coeffs::with_capacity(self.order());
        for j in 1..=self.order() {
            coeffs.push(self.coeffs[j] * F::from_usize(j).unwrap());
        }
        Jet { coeffs }
    }

    /// Truncate (or zero-extend) to a new order.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = Coeffs::with_capacity(order + 1);
        for j in 0..=order {
            coeffs.push(if j < self.coeffs.len() {
                self.coeffs[j]
            } else {
                F::zero()
            });
        }
        Jet { coeffs }
    }

    fn check_same_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "jet arithmetic requires equal orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        Jet { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a - b)
            .collect();
        Jet { coeffs }
    }

    pub fn neg(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scale(&self, s: F) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|&a| a * s).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_order(other);
        let k = self.order();
        let mut coeffs = Coeffs::with_capacity(k + 1);
        for j in 0..=k {
            let mut acc = F::zero();
            for i in 0..=j {
                acc += self.coeffs[i] * other.coeffs[j - i];
            }
            coeffs.push(acc);
        }
        Jet { coeffs }
    }

    pub fn div(&self, other: &Self) -> Result<Self, JetError> {
        self.check_same_order(other);
        if other.coeffs[0] == F::zero() {
            return Err(JetError::DivisionByZero);
        }
        let k = self.order();
        let mut coeffs = Coeffs::with_capacity(k + 1);
        for j in 0..=k {
            let mut acc = self.coeffs[j];
            for i in 0..j {
                acc -= coeffs[i] * other.coeffs[j - i];
            }
            coeffs.push(acc / other.coeffs[0]);
        }
        Ok(Jet { coeffs })
    }

    pub fn recip(&self) -> Result<Self, JetError> {
        Jet::constant(F::one(), self.order()).div(self)
    }

    pub fn exp(&self) -> Self {
        let k = self.order();
        let mut v = Coeffs::with_capacity(k + 1);
        v.push(self.coeffs[0].exp());
        for j in 1..=k {
            let mut acc = F::zero();
            for i in 1..=j {
                acc += F::from_usize(i).unwrap() * self.coeffs[i] * v[j - i];
            }
            v.push(acc / F::from_usize(j).unwrap());
        }
        Jet { coeffs: v }
    }

    pub fn ln(&self) -> Result<Self, JetError> {
        let u0 = self.coeffs[0];
        if u0 <= F::zero() {
            return Err(JetError::LogNonPositive(u0.as_f64()));
        }
        let k = self.order();
        let mut v = Coeffs::with_capacity(k + 1);
        v.push(u0.ln());
        for j in 1..=k {
            let mut acc = F::zero();
            for i in 1..j {
                acc += F::from_usize(i).unwrap() * v[i] * self.coeffs[j - i];
            }
            let cj = (self.coeffs[j] - acc / F::from_usize(j).unwrap()) / u0;
            v.push(cj);
        }
        Ok(Jet { coeffs: v })
    }

    pub fn sqrt(&self) -> Result<Self, JetError> {
        let u0 = self.coeffs[0];
        if u0 < F::zero() {
            return Err(JetError::SqrtNegative(u0.as_f64()));
        }
        let k = self.order();
        if u0 == F::zero() {
            if k == 0 {
                return Ok(Jet::constant(F::zero(), 0));
            }
            return Err(JetError::SqrtZeroDerivative);
        }
        let mut v = Coeffs::with_capacity(k + 1);
        v.push(u0.sqrt());
        let two = F::from_usize(2).unwrap();
        for j in 1..=k {
            let mut acc = F::zero();
            for i in 1..j {
                acc += v[i] * v[j - i];
            }
            v.push((self.coeffs[j] - acc) / (two * v[0]));
        }
        Ok(Jet { coeffs: v })
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let k = self.order();
        let mut s = Coeffs::with_capacity(k + 1);
        let mut c = Coeffs::with_capacity(k + 1);
        s.push(self.coeffs[0].sin());
        c.push(self.coeffs[0].cos());
        for j in 1..=k {
            let mut sa = F::zero();
            let mut ca = F::zero();
            for i in 1..=j {
                let w = F::from_usize(i).unwrap() * self.coeffs[i];
                sa += w * c[j - i];
                ca += w * s[j - i];
            }
            let inv_j = F::one() / F::from_usize(j).unwrap();
            s.push(sa * inv_j);
            c.push(-ca * inv_j);
        }
        (Jet { coeffs: s }, Jet { coeffs: c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Result<Self, JetError> {
        let (s, c) = self.sin_cos();
        s.div(&c).map_err(|_| JetError::TanPole)
    }

    pub fn sinh_cosh(&self) -> (Self, Self) {
        let k = self.order();
        let mut sh = Coeffs::with_capacity(k + 1);
        let mut ch = Coeffs::with_capacity(k + 1);
        sh.push(self.coeffs[0].sinh());
        ch.push(self.coeffs[0].cosh());
        for j in 1..=k {
            let mut sa = F::zero();
            let mut ca = F::zero();
            for i in 1..=j {
                let w = F::from_usize(i).unwrap() * self.coeffs[i];
                sa += w * ch[j - i];
                ca += w * sh[j - i];
            }
            let inv_j = F::one() / F::from_usize(j).unwrap();
            sh.push(sa * inv_j);
            ch.push(ca * inv_j);
        }
        (Jet { coeffs: sh }, Jet { coeffs: ch })
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, e: i64) -> Result<Self, JetError> {
        if e == 0 {
            return Ok(Jet::constant(F::one(), self.order()));
        }
        let mut acc = self.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            acc = acc.recip()?;
        }
        Ok(acc)
    }

    /// General power. Integer exponents (constant jets with integral value)
    /// go through repeated multiplication; everything else through
    /// `exp(e * ln(b))`, which rejects non-positive bases.
    pub fn pow(&self, exponent: &Self) -> Result<Self, JetError> {
        self.check_same_order(exponent);
        let is_const = exponent.coeffs.iter().skip(1).all(|&c| c == F::zero());
        if is_const {
            let e = exponent.value();
            if e.fract() == F::zero() && e.abs() <= F::lit(1e9) {
                return self.powi(e.as_f64() as i64);
            }
            if self.value() < F::zero() {
                return Err(JetError::FractionalPowerNegativeBase(self.value().as_f64()));
            }
        }
        Ok(self.ln()?.mul(exponent).exp())
    }
}

/// Evaluate a truncated series with coefficients `outer` (scaled Taylor,
/// constant term included) at an increment jet `inner`, which must have zero
/// constant term. Plain Horner in jet arithmetic.
pub fn compose<F: Scalar>(outer: &[F], inner: &Jet<F>) -> Jet<F> {
    debug_assert!(inner.value() == F::zero(), "inner series must be centered");
    let mut acc = Jet::constant(*outer.last().unwrap(), inner.order());
    for &c in outer.iter().rev().skip(1) {
        acc = acc.mul(inner);
        acc = acc.add(&Jet::constant(c, inner.order()));
    }
    acc
}

/// Invert a series `s(t) = s0 + a1 h + a2 h^2 + ...` with `a1 != 0`,
/// returning the jet of the inverse map `t(s)` at `s0` with constant term
/// `t_center`. Solves coefficient by coefficient against the identity
/// `s(t(s)) = s`.
pub fn invert_series<F: Scalar>(s: &Jet<F>, t_center: F) -> Result<Jet<F>, JetError> {
    let k = s.order();
    let a1 = s.coeff(1);
    if a1 == F::zero() {
        return Err(JetError::DivisionByZero);
    }
    let mut outer: Vec<F> = s.coeffs().to_vec();
    outer[0] = F::zero();
    let mut b = vec![F::zero(); k + 1];
    if k >= 1 {
        b[1] = F::one() / a1;
    }
    for j in 2..=k {
        let inner = Jet::from_coeffs(&b);
        let c = compose(&outer, &inner);
        b[j] = -c.coeff(j) / a1;
    }
    b[0] = t_center;
    Ok(Jet::from_coeffs(&b))
}
