//! Two-sided sequents and the four logic modes.

use std::fmt;
use std::str::FromStr;

use crate::bag::ResourceBag;

/// Whether unused resources may be discarded (weakening).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weakening {
    Linear,
    Affine,
}

/// Connective fragment: multiplicative-only, or with the additives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    Mll,
    Mall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogicMode {
    pub weakening: Weakening,
    pub fragment: Fragment,
}

pub const LINEAR_MLL: LogicMode = LogicMode {
    weakening: Weakening::Linear,
    fragment: Fragment::Mll,
};
pub const LINEAR_MALL: LogicMode = LogicMode {
    weakening: Weakening::Linear,
    fragment: Fragment::Mall,
};
pub const AFFINE_MLL: LogicMode = LogicMode {
    weakening: Weakening::Affine,
    fragment: Fragment::Mll,
};
pub const AFFINE_MALL: LogicMode = LogicMode {
    weakening: Weakening::Affine,
    fragment: Fragment::Mall,
};

impl fmt::Display for Weakening {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weakening::Linear => write!(f, "linear"),
            Weakening::Affine => write!(f, "affine"),
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::Mll => write!(f, "mll"),
            Fragment::Mall => write!(f, "mall"),
        }
    }
}

impl fmt::Display for LogicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.weakening, self.fragment)
    }
}

impl FromStr for Weakening {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Weakening::Linear),
            "affine" => Ok(Weakening::Affine),
            other => Err(format!("unknown weakening mode {other:?}, expected \"linear\" or \"affine\"")),
        }
    }
}

impl FromStr for Fragment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mll" => Ok(Fragment::Mll),
            "mall" => Ok(Fragment::Mall),
            other => Err(format!("unknown fragment {other:?}, expected \"mll\" or \"mall\"")),
        }
    }
}

impl FromStr for LogicMode {
    type Err = String;
    /// Accepts `"affine mall"` and friends.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let (Some(w), Some(fr), None) = (words.next(), words.next(), words.next()) else {
            return Err(format!("expected \"<linear|affine> <mll|mall>\", got {s:?}"));
        };
        Ok(LogicMode {
            weakening: w.parse()?,
            fragment: fr.parse()?,
        })
    }
}

/// Multiset antecedent and succedent; exchange is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: ResourceBag,
    pub right: ResourceBag,
}

impl Sequent {
    pub fn new(left: ResourceBag, right: ResourceBag) -> Self {
        Sequent { left, right }
    }

    /// Summed formula sizes of both sides: the termination measure.
    pub fn measure(&self) -> usize {
        self.left.formula_size() + self.right.formula_size()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |bag: &ResourceBag| {
            bag.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match (self.left.is_empty(), self.right.is_empty()) {
            (true, true) => write!(f, "|-"),
            (true, false) => write!(f, "|- {}", join(&self.right)),
            (false, true) => write!(f, "{} |-", join(&self.left)),
            (false, false) => write!(f, "{} |- {}", join(&self.left), join(&self.right)),
        }
    }
}
