use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Scalar used by the Bessel layer.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` constant. Every constant used here is representable.
    #[inline]
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("constant fits the scalar type")
    }

    #[inline]
    fn to64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}
