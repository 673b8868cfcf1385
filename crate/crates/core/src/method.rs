//! Identifiers for every representation the crate implements.

use std::fmt;
use std::str::FromStr;

macro_rules! method_ids {
    ($($id:ident),* $(,)?) => {
        /// Names one representation of one quantity.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum MethodId {
            $($id,)*
        }

        impl MethodId {
            pub const ALL: &'static [MethodId] = &[$(MethodId::$id,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(MethodId::$id => stringify!($id),)*
                }
            }
        }
    };
}

method_ids!(
    // first kind
    R320, R322, R325, R326, R327, R330, R522,
    // degree derivative, sign +
    R52, R54, S57, S58, S59, S510, S511, L512,
    C516, R517, R518, R520,
    // degree derivative, sign -
    VIA524, R532, S534, S535, S536, S537, L538,
    // degree derivative assembled from Jacobi parameter derivatives
    J55, J56, J533,
    // second degree derivative
    C631,
    // second kind
    R66, R67, W610, W611, W612, W613, W614,
    R617, R619, C620,
    C623, R624, VIA622,
    // degree derivative of the second kind
    C636, C638, VIA635,
    // Jacobi polynomials
    A1, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13,
    // Jacobi parameter derivatives, general parameters
    A15, A16, A17, A18, A19, A20, A21, A22, A23, A24, A25, A26, A27, A28,
    // Jacobi parameter derivatives, special parameters
    A29, A30, A31, A32, A33, A34, A35,
    A36, A37, A38, A39, A40, A41, A42, A43,
    A44, A45, A46, A47,
    A48, A49, A50, A51,
    A52, A53, A54, A55, A56,
);

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}`")]
pub struct UnknownMethod(pub String);

impl FromStr for MethodId {
    type Err = UnknownMethod;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodId::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

/// A method choice as given by a caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    Auto,
    One(MethodId),
}

impl FromStr for MethodChoice {
    type Err = UnknownMethod;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(MethodChoice::Auto)
        } else {
            s.parse().map(MethodChoice::One)
        }
    }
}
