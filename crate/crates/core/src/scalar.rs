use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::Float;

/// Coordinate and field value type.
pub trait Scalar:
    Float + FromStr + Display + LowerExp + Debug + Default + Send + Sync + 'static
{
    /// Storage size of one value, used for migration byte accounting.
    const BYTES: usize;

    /// Number of significant decimal digits needed to round-trip any value.
    const ROUND_TRIP_DIGITS: usize;

    /// Raw bit pattern widened to 64 bits; used for exact canonical comparison.
    fn to_bits_u64(self) -> u64;
}

impl Scalar for f64 {
    const BYTES: usize = 8;
    const ROUND_TRIP_DIGITS: usize = 17;

    fn to_bits_u64(self) -> u64 {
        self.to_bits()
    }
}

impl Scalar for f32 {
    const BYTES: usize = 4;
    const ROUND_TRIP_DIGITS: usize = 9;

    fn to_bits_u64(self) -> u64 {
        u64::from(self.to_bits())
    }
}
