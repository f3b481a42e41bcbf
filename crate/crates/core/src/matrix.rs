use num_complex::Complex64;
use std::ops::Mul;

use crate::cmath::{ONE, ZERO};

/// A 2×2 complex transfer matrix.
///
/// Used both for quantum amplitude pairs `(A, A')` and for reduced
/// electromagnetic field pairs `(E, H)`; the meaning of the rows depends on
/// which module built it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix2 {
    pub const IDENTITY: Self = Self {
        m11: ONE,
        m12: ZERO,
        m21: ZERO,
        m22: ONE,
    };

    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// Largest entrywise difference, relative to the larger of the two
    /// matrices' max-norms (absolute when both are tiny).
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let scale = self
            .entries()
            .iter()
            .chain(other.entries().iter())
            .map(|z| z.norm())
            .fold(1.0f64, f64::max);
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }
}

impl Mul for TransferMatrix2 {
    type Output = TransferMatrix2;

    fn mul(self, o: TransferMatrix2) -> TransferMatrix2 {
        TransferMatrix2 {
            m11: self.m11 * o.m11 + self.m12 * o.m21,
            m12: self.m11 * o.m12 + self.m12 * o.m22,
            m21: self.m21 * o.m11 + self.m22 * o.m21,
            m22: self.m21 * o.m12 + self.m22 * o.m22,
        }
    }
}

/// Product of matrices given in propagation order: `[M1, M2, M3]` → `M3·M2·M1`.
///
/// Returns `None` for an empty list.
pub fn chain(matrices: &[TransferMatrix2]) -> Option<TransferMatrix2> {
    let (first, rest) = matrices.split_first()?;
    Some(rest.iter().fold(*first, |acc, m| *m * acc))
}
