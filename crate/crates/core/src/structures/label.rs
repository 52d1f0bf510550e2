use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An element of the additive group of integers modulo 5.
///
/// All label arithmetic goes through this type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct Z5(u8);

impl Z5 {
    pub const ALL: [Z5; 5] = [Z5(0), Z5(1), Z5(2), Z5(3), Z5(4)];

    pub fn new(value: i64) -> Z5 {
        Z5(value.rem_euclid(5) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add<u8> for Z5 {
    type Output = Z5;

    fn add(self, rhs: u8) -> Z5 {
        Z5((self.0 + rhs % 5) % 5)
    }
}

impl Add for Z5 {
    type Output = Z5;

    fn add(self, rhs: Z5) -> Z5 {
        self + rhs.0
    }
}

impl From<Z5> for u8 {
    fn from(z: Z5) -> u8 {
        z.0
    }
}

impl TryFrom<i64> for Z5 {
    type Error = String;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        if (0..5).contains(&value) {
            Ok(Z5(value as u8))
        } else {
            Err(format!("label {value} is not in 0..5"))
        }
    }
}

impl fmt::Display for Z5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_around() {
        assert_eq!(Z5::new(3) + 2, Z5::new(0));
        assert_eq!(Z5::new(4) + 1, Z5::new(0));
        assert_eq!(Z5::new(-1), Z5::new(4));
        assert_eq!(Z5::new(2) + Z5::new(4), Z5::new(1));
    }

    #[test]
    fn rejects_out_of_range_json() {
        assert!(serde_json::from_str::<Z5>("5").is_err());
        assert_eq!(serde_json::from_str::<Z5>("4").unwrap(), Z5::new(4));
    }
}
