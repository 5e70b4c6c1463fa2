use std::fmt;
use std::ops::Not;
use std::str::FromStr;

/// Strong-Kleene truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    Top,
    Bot,
    Undef,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::Top, TruthValue::Bot, TruthValue::Undef];

    pub fn token(self) -> &'static str {
        match self {
            TruthValue::Top => "TRUE",
            TruthValue::Bot => "FALSE",
            TruthValue::Undef => "UNDEF",
        }
    }
}

impl Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::Top => TruthValue::Bot,
            TruthValue::Bot => TruthValue::Top,
            TruthValue::Undef => TruthValue::Undef,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TruthValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "top" | "t" | "true" => Ok(TruthValue::Top),
            "bot" | "f" | "false" => Ok(TruthValue::Bot),
            "uu" | "u" | "undef" => Ok(TruthValue::Undef),
            _ => Err(format!("unknown truth value `{s}` (expected top, bot or uu)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_swaps_top_and_bot() {
        assert_eq!(!TruthValue::Top, TruthValue::Bot);
        assert_eq!(!TruthValue::Bot, TruthValue::Top);
        assert_eq!(!TruthValue::Undef, TruthValue::Undef);
        for v in TruthValue::ALL {
            assert_eq!(!!v, v);
        }
    }

    #[test]
    fn aliases() {
        for (s, v) in [
            ("top", TruthValue::Top),
            ("t", TruthValue::Top),
            ("true", TruthValue::Top),
            ("bot", TruthValue::Bot),
            ("f", TruthValue::Bot),
            ("false", TruthValue::Bot),
            ("uu", TruthValue::Undef),
            ("u", TruthValue::Undef),
            ("undef", TruthValue::Undef),
        ] {
            assert_eq!(s.parse::<TruthValue>().unwrap(), v);
        }
        assert!("maybe".parse::<TruthValue>().is_err());
    }
}
