//! Plane-angle newtype.
//!
//! All angles are stored in radians; degrees appear only at construction and
//! readout. Keeping the unit inside the type prevents the classic
//! degree-vs-radian slip in derivative and trigonometric code.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A plane angle. Internally radians; degree accessors for interfaces.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Angle {
    rad: f64,
}

impl Angle {
    pub const ZERO: Angle = Angle { rad: 0.0 };

    pub fn from_radians(rad: f64) -> Self {
        Angle { rad }
    }

    pub fn from_degrees(deg: f64) -> Self {
        Angle {
            rad: deg.to_radians(),
        }
    }

    pub fn radians(self) -> f64 {
        self.rad
    }

    pub fn degrees(self) -> f64 {
        self.rad.to_degrees()
    }

    pub fn sin(self) -> f64 {
        self.rad.sin()
    }

    pub fn cos(self) -> f64 {
        self.rad.cos()
    }

    pub fn abs(self) -> Self {
        Angle {
            rad: self.rad.abs(),
        }
    }

    /// True if the value is finite (neither NaN nor infinite).
    pub fn is_finite(self) -> bool {
        self.rad.is_finite()
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle {
            rad: self.rad + rhs.rad,
        }
    }
}

impl AddAssign for Angle {
    fn add_assign(&mut self, rhs: Angle) {
        self.rad += rhs.rad;
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle {
            rad: self.rad - rhs.rad,
        }
    }
}

impl SubAssign for Angle {
    fn sub_assign(&mut self, rhs: Angle) {
        self.rad -= rhs.rad;
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle { rad: -self.rad }
    }
}

impl Mul<f64> for Angle {
    type Output = Angle;
    fn mul(self, rhs: f64) -> Angle {
        Angle {
            rad: self.rad * rhs,
        }
    }
}

impl Div<f64> for Angle {
    type Output = Angle;
    fn div(self, rhs: f64) -> Angle {
        Angle {
            rad: self.rad / rhs,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(prec) = f.precision() {
            write!(f, "{:.*}°", prec, self.degrees())
        } else {
            write!(f, "{}°", self.degrees())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn degree_radian_round_trip() {
        let a = Angle::from_degrees(53.0);
        assert_relative_eq!(a.radians(), 53.0_f64.to_radians(), max_relative = 1e-15);
        assert_relative_eq!(a.degrees(), 53.0, max_relative = 1e-15);
    }

    #[test]
    fn arithmetic() {
        let a = Angle::from_degrees(30.0);
        let b = Angle::from_degrees(15.0);
        assert_relative_eq!((a + b).degrees(), 45.0, max_relative = 1e-12);
        assert_relative_eq!((a - b).degrees(), 15.0, max_relative = 1e-12);
        assert_relative_eq!((-a).degrees(), -30.0, max_relative = 1e-12);
        assert_relative_eq!((a * 2.0).degrees(), 60.0, max_relative = 1e-12);
        assert_relative_eq!((a / 2.0).degrees(), 15.0, max_relative = 1e-12);
        assert_relative_eq!((-a).abs().degrees(), 30.0, max_relative = 1e-12);
    }

    #[test]
    fn display_uses_degrees() {
        let a = Angle::from_degrees(73.5);
        assert_eq!(format!("{a:.2}"), "73.50°");
    }
}
