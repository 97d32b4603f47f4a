//! Scalar cost types and the two ways of aggregating voter dissatisfaction.
//!
//! Solvers are generic over [`Cost`] so the same dynamic programs run on
//! 64-bit integers (the common case) and on exact rationals. Every cost type
//! carries a saturating "infinity" used for infeasible subproblems.

use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

pub trait Cost: Copy + Ord + Debug + Send + Sync + 'static {
    fn zero() -> Self;

    fn infinity() -> Self;

    fn is_infinite(self) -> bool;

    /// Addition that saturates at [`Cost::infinity`].
    fn plus(self, other: Self) -> Self;

    /// Subtraction of finite values.
    fn minus(self, other: Self) -> Self;

    fn to_ratio(self) -> Rational64;

    fn to_f64(self) -> f64;
}

const INT_INFINITY: i64 = i64::MAX / 4;

impl Cost for i64 {
    #[inline]
    fn zero() -> Self {
        0
    }

    #[inline]
    fn infinity() -> Self {
        INT_INFINITY
    }

    #[inline]
    fn is_infinite(self) -> bool {
        self >= INT_INFINITY
    }

    #[inline]
    fn plus(self, other: Self) -> Self {
        // Both operands are at most INT_INFINITY, so the sum cannot wrap.
        (self + other).min(INT_INFINITY)
    }

    #[inline]
    fn minus(self, other: Self) -> Self {
        self - other
    }

    fn to_ratio(self) -> Rational64 {
        Rational64::from_integer(self)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Cost for Rational64 {
    fn zero() -> Self {
        <Rational64 as Zero>::zero()
    }

    fn infinity() -> Self {
        Rational64::from_integer(INT_INFINITY)
    }

    fn is_infinite(self) -> bool {
        self >= Self::infinity()
    }

    fn plus(self, other: Self) -> Self {
        if self.is_infinite() || other.is_infinite() {
            Self::infinity()
        } else {
            (self + other).min(Self::infinity())
        }
    }

    fn minus(self, other: Self) -> Self {
        self - other
    }

    fn to_ratio(self) -> Rational64 {
        self
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

/// Which aggregate of per-voter misrepresentation is minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Objective {
    /// Sum over voters.
    #[default]
    Utilitarian,
    /// Maximum over voters.
    Egalitarian,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Utilitarian => "utilitarian",
            Objective::Egalitarian => "egalitarian",
        }
    }

    pub fn combine<C: Cost>(self, a: C, b: C) -> C {
        match self {
            Objective::Utilitarian => Sum::combine(a, b),
            Objective::Egalitarian => Max::combine(a, b),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "utilitarian" | "util" | "sum" => Ok(Objective::Utilitarian),
            "egalitarian" | "egal" | "max" => Ok(Objective::Egalitarian),
            other => Err(format!("unknown objective `{other}`")),
        }
    }
}

/// Compile-time choice of `+` or `max` for the inner loops of the dynamic
/// programs.
pub(crate) trait Aggregate {
    fn combine<C: Cost>(a: C, b: C) -> C;
}

pub(crate) struct Sum;
pub(crate) struct Max;

impl Aggregate for Sum {
    #[inline(always)]
    fn combine<C: Cost>(a: C, b: C) -> C {
        a.plus(b)
    }
}

impl Aggregate for Max {
    #[inline(always)]
    fn combine<C: Cost>(a: C, b: C) -> C {
        a.max(b)
    }
}

/// Dispatches a generic solver body on an [`Objective`].
macro_rules! with_aggregate {
    ($objective:expr, $agg:ident => $body:expr) => {
        match $objective {
            $crate::cost::Objective::Utilitarian => {
                type $agg = $crate::cost::Sum;
                $body
            }
            $crate::cost::Objective::Egalitarian => {
                type $agg = $crate::cost::Max;
                $body
            }
        }
    };
}
pub(crate) use with_aggregate;
