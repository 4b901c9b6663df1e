//! Kodaira fiber labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
    /// Non-reduced fiber of an isotrivial `j = infinity` component.
    N1,
}

impl KodairaType {
    /// Euler number of the fiber; `None` for `N1`.
    pub fn euler(self) -> Option<u32> {
        use KodairaType::*;
        match self {
            I(n) => Some(n),
            II => Some(2),
            III => Some(3),
            IV => Some(4),
            IStar(n) => Some(n + 6),
            IVStar => Some(8),
            IIIStar => Some(9),
            IIStar => Some(10),
            N1 => None,
        }
    }

    pub fn is_singular(self) -> bool {
        self != KodairaType::I(0)
    }

    /// Fibers allowed on a GIT-stable cone: `I_n`, `II`, `III`, `IV`.
    pub fn is_a_type(self) -> bool {
        matches!(
            self,
            KodairaType::I(_) | KodairaType::II | KodairaType::III | KodairaType::IV
        )
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            IStar(n) => write!(f, "I{n}*"),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
            N1 => write!(f, "N1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown Kodaira label {0:?}")]
pub struct ParseKodairaError(pub String);

impl FromStr for KodairaType {
    type Err = ParseKodairaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use KodairaType::*;
        let err = || ParseKodairaError(s.to_string());
        Ok(match s {
            "II" => II,
            "III" => III,
            "IV" => IV,
            "IV*" => IVStar,
            "III*" => IIIStar,
            "II*" => IIStar,
            "N1" => N1,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(err)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err());
                }
                let n: u32 = digits.parse().map_err(|_| err())?;
                if star {
                    IStar(n)
                } else {
                    I(n)
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaType::*;

    #[test]
    fn euler_numbers() {
        let table = [
            (I(0), 0),
            (I(5), 5),
            (II, 2),
            (III, 3),
            (IV, 4),
            (IStar(0), 6),
            (IStar(2), 8),
            (IVStar, 8),
            (IIIStar, 9),
            (IIStar, 10),
        ];
        for (k, e) in table {
            assert_eq!(k.euler(), Some(e), "{k}");
        }
        assert_eq!(N1.euler(), None);
    }

    #[test]
    fn labels_round_trip() {
        for k in [I(0), I(12), II, III, IV, IStar(0), IStar(4), IVStar, IIIStar, IIStar, N1] {
            assert_eq!(k.to_string().parse::<KodairaType>(), Ok(k));
        }
        assert!("I".parse::<KodairaType>().is_err());
        assert!("V".parse::<KodairaType>().is_err());
        assert!("I-1".parse::<KodairaType>().is_err());
    }
}
