use num_traits::{Float, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar type the solvers are generic over.
///
/// The library is written against this trait so the same kernels run on
/// `f32` and `f64`; the concrete aliases at the crate root fix `f64` as the
/// default. Tolerances are stated as `f64` constants and converted with
/// [`Scalar::cast`].
pub trait Scalar: Float + NumAssign + Sum + Debug + Display + Send + Sync + 'static {
    /// Convert an `f64` constant into the scalar type.
    #[inline]
    fn cast(v: f64) -> Self {
        Self::from(v).expect("constant must be representable in the scalar type")
    }

    /// Convert a count into the scalar type.
    #[inline]
    fn from_count(v: usize) -> Self {
        Self::from(v).expect("count must be representable in the scalar type")
    }

    /// Convert to `f64` for reporting.
    #[inline]
    fn report(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }
}

impl<T> Scalar for T where T: Float + NumAssign + Sum + Debug + Display + Send + Sync + 'static {}
