//! Real quaternions `a + b𝗂 + c𝗃 + d𝗄` over any [`Scalar`] backend.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Tolerance for "real part is zero" checks in float mode.
pub const EPS_PURE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn from_real(a: T) -> Self {
        Self::new(a, T::zero(), T::zero(), T::zero())
    }

    /// The complex number `re + im·𝗂` viewed as a quaternion.
    pub fn from_complex(z: &Complex<T>) -> Self {
        Self::new(z.re.clone(), z.im.clone(), T::zero(), T::zero())
    }

    pub fn from_i64s(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(T::from_i64(a), T::from_i64(b), T::from_i64(c), T::from_i64(d))
    }

    /// Splits `q = z₁ + 𝗃z₂` with `z₁ = a + b𝗂` and `z₂ = c − d𝗂`.
    pub fn complex_parts(&self) -> (Complex<T>, Complex<T>) {
        (
            Complex::new(self.a.clone(), self.b.clone()),
            Complex::new(self.c.clone(), -self.d.clone()),
        )
    }

    /// Inverse of [`Quaternion::complex_parts`].
    pub fn from_complex_parts(z1: &Complex<T>, z2: &Complex<T>) -> Self {
        Self::new(z1.re.clone(), z1.im.clone(), z2.re.clone(), -z2.im.clone())
    }

    pub fn real_part(&self) -> T {
        self.a.clone()
    }

    pub fn pure_part(&self) -> Self {
        Self::new(T::zero(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn norm_sq(&self) -> T {
        self.a.clone() * self.a.clone()
            + self.b.clone() * self.b.clone()
            + self.c.clone() * self.c.clone()
            + self.d.clone() * self.d.clone()
    }

    /// Squared norm of the pure part.
    pub fn pure_norm_sq(&self) -> T {
        self.b.clone() * self.b.clone() + self.c.clone() * self.c.clone() + self.d.clone() * self.d.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// `true` when the `𝗃` and `𝗄` coefficients vanish.
    pub fn is_complex(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// Quaternionic trace of a 1x1 matrix: `2·Re(q)`.
    pub fn trace(&self) -> T {
        self.a.clone() + self.a.clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Hamilton product, reporting overflow in float mode.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let p = self * rhs;
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite_value()
            && self.b.is_finite_value()
            && self.c.is_finite_value()
            && self.d.is_finite_value()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Quaternion<U> {
        Quaternion {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }
}

impl<T: Field> Quaternion<T> {
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let conj = self.conj();
        Ok(Quaternion::new(
            conj.a / n.clone(),
            conj.b / n.clone(),
            conj.c / n.clone(),
            conj.d / n,
        ))
    }

    /// `u q u⁻¹`.
    pub fn conjugate_by(u: &Self, q: &Self) -> Result<Self> {
        let inv = u.inverse()?;
        Ok(&(u * q) * &inv)
    }
}

impl Quaternion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// The one-parameter subgroup `φ_p(s) = e^{sp}` for a pure quaternion `p`.
    pub fn exp_pure(p: &Self, s: f64) -> Result<Self> {
        if p.a.abs() > EPS_PURE {
            return Err(Error::NotPure);
        }
        let norm = p.pure_norm_sq().sqrt();
        if norm == 0.0 {
            return Ok(Self::one());
        }
        let (sin, cos) = (norm * s).sin_cos();
        let f = sin / norm;
        Ok(Self::new(cos, p.b * f, p.c * f, p.d * f))
    }

    /// Unit quaternion in the direction of `self`.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.scale(&(1.0 / n)))
    }
}

impl<T: Scalar> Add for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: Self) -> Quaternion<T> {
        Quaternion::new(
            self.a.clone() + rhs.a.clone(),
            self.b.clone() + rhs.b.clone(),
            self.c.clone() + rhs.c.clone(),
            self.d.clone() + rhs.d.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: Self) -> Quaternion<T> {
        Quaternion::new(
            self.a.clone() - rhs.a.clone(),
            self.b.clone() - rhs.b.clone(),
            self.c.clone() - rhs.c.clone(),
            self.d.clone() - rhs.d.clone(),
        )
    }
}

impl<T: Scalar> Mul for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, q: Self) -> Quaternion<T> {
        let p = self;
        Quaternion::new(
            p.a.clone() * q.a.clone()
                - p.b.clone() * q.b.clone()
                - p.c.clone() * q.c.clone()
                - p.d.clone() * q.d.clone(),
            p.a.clone() * q.b.clone() + p.b.clone() * q.a.clone() + p.c.clone() * q.d.clone()
                - p.d.clone() * q.c.clone(),
            p.a.clone() * q.c.clone() - p.b.clone() * q.d.clone()
                + p.c.clone() * q.a.clone()
                + p.d.clone() * q.b.clone(),
            p.a.clone() * q.d.clone() + p.b.clone() * q.c.clone() - p.c.clone() * q.b.clone()
                + p.d.clone() * q.a.clone(),
        )
    }
}

impl<T: Scalar> Neg for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        Quaternion::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Quaternion<T> {
            type Output = Quaternion<T>;
            fn $m(self, rhs: Self) -> Quaternion<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Quaternion<T>> for Quaternion<T> {
    fn add_assign(&mut self, rhs: &Quaternion<T>) {
        self.a = self.a.clone() + rhs.a.clone();
        self.b = self.b.clone() + rhs.b.clone();
        self.c = self.c.clone() + rhs.c.clone();
        self.d = self.d.clone() + rhs.d.clone();
    }
}

impl<T: Scalar> SubAssign<&Quaternion<T>> for Quaternion<T> {
    fn sub_assign(&mut self, rhs: &Quaternion<T>) {
        self.a = self.a.clone() - rhs.a.clone();
        self.b = self.b.clone() - rhs.b.clone();
        self.c = self.c.clone() - rhs.c.clone();
        self.d = self.d.clone() - rhs.d.clone();
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.a, self.b, self.c, self.d)
    }
}
