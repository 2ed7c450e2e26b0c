//! Points of Euclidean n-space and of its one-point compactification.

use std::ops::{Add, Index, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A finite point of `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point<T>(Vec<T>);

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![T::zero(); n])
    }

    /// The standard basis vector `e_i` (zero-based index).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        Point(v)
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    /// Euclidean norm, scaled to avoid overflow for large coordinates.
    pub fn norm(&self) -> T {
        let scale = self.0.iter().fold(T::zero(), |m, c| m.max(c.abs()));
        if scale == T::zero() || !scale.is_finite() {
            return scale;
        }
        let s = self
            .0
            .iter()
            .fold(T::zero(), |acc, &c| acc + (c / scale) * (c / scale));
        scale * s.sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        (self - other).norm()
    }

    pub fn scale(&self, s: T) -> Self {
        Point(self.0.iter().map(|&c| c * s).collect())
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `self / |self|`; `None` at the origin.
    pub fn unit(&self) -> Option<Self> {
        let r = self.norm();
        (r > T::zero()).then(|| self.scale(r.recip()))
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn cast<U: Real>(&self) -> Point<U> {
        Point(
            self.0
                .iter()
                .map(|c| U::from_f64(c.to_f64().unwrap_or(f64::NAN)).unwrap_or(U::nan()))
                .collect(),
        )
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real> Sub for &Point<T> {
    type Output = Point<T>;
    fn sub(self, rhs: &Point<T>) -> Point<T> {
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl<T: Real> Add for &Point<T> {
    type Output = Point<T>;
    fn add(self, rhs: &Point<T>) -> Point<T> {
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl<T: Real> Mul<T> for &Point<T> {
    type Output = Point<T>;
    fn mul(self, s: T) -> Point<T> {
        self.scale(s)
    }
}

impl<T: Real> From<Vec<T>> for Point<T> {
    fn from(v: Vec<T>) -> Self {
        Point(v)
    }
}

/// A point of the Möbius space `R^n ∪ {∞}`.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedPoint<T> {
    Finite(Point<T>),
    Infinity,
}

impl<T: Real> ExtendedPoint<T> {
    pub fn finite(coords: Vec<T>) -> Self {
        ExtendedPoint::Finite(Point::new(coords))
    }

    pub fn as_finite(&self) -> Option<&Point<T>> {
        match self {
            ExtendedPoint::Finite(p) => Some(p),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }
}

impl<T: Real> From<Point<T>> for ExtendedPoint<T> {
    fn from(p: Point<T>) -> Self {
        ExtendedPoint::Finite(p)
    }
}
