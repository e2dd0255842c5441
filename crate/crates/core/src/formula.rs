//! Formulas over the reduced connective set.
//!
//! Derived connectives are rewritten away while parsing and never appear in
//! stored formulas: `bot` is `~1`, `0` is `~top`, and `A | B` (par) is
//! `~A -o B`. Everything downstream (printing, proof search, game analysis)
//! only ever sees the eight variants below.

use std::cmp::Ordering;
use std::fmt;

use crate::sequent::Fragment;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    One,
    Top,
    Neg(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Lollipop(Box<Formula>, Box<Formula>),
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.to_string())
}

pub fn neg(a: Formula) -> Formula {
    Formula::Neg(Box::new(a))
}

pub fn tensor(a: Formula, b: Formula) -> Formula {
    Formula::Tensor(Box::new(a), Box::new(b))
}

pub fn with(a: Formula, b: Formula) -> Formula {
    Formula::With(Box::new(a), Box::new(b))
}

pub fn plus(a: Formula, b: Formula) -> Formula {
    Formula::Plus(Box::new(a), Box::new(b))
}

pub fn lolli(a: Formula, b: Formula) -> Formula {
    Formula::Lollipop(Box::new(a), Box::new(b))
}

/// `A | B` in the concrete syntax: stored as `~A -o B`.
pub fn par(a: Formula, b: Formula) -> Formula {
    lolli(neg(a), b)
}

/// `bot` in the concrete syntax: stored as `~1`.
pub fn bot() -> Formula {
    neg(Formula::One)
}

/// `0` in the concrete syntax: stored as `~top`.
pub fn zero() -> Formula {
    neg(Formula::Top)
}

impl Formula {
    /// Number of AST nodes. The proof search terminates because every rule
    /// strictly shrinks the summed size of a sequent.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Top => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::Tensor(a, b)
            | Formula::With(a, b)
            | Formula::Plus(a, b)
            | Formula::Lollipop(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Whether the formula stays inside `fragment`. The multiplicative-only
    /// fragment excludes `top`, `&`, `+` (and therefore `0`).
    pub fn fits_fragment(&self, fragment: Fragment) -> bool {
        self.fragment_offender(fragment).is_none()
    }

    /// First out-of-fragment connective, if any, as its concrete spelling.
    pub fn fragment_offender(&self, fragment: Fragment) -> Option<&'static str> {
        if fragment == Fragment::Mall {
            return None;
        }
        match self {
            Formula::Atom(_) | Formula::One => None,
            Formula::Top => Some("top"),
            Formula::With(_, _) => Some("&"),
            Formula::Plus(_, _) => Some("+"),
            Formula::Neg(a) => a.fragment_offender(fragment),
            Formula::Tensor(a, b) | Formula::Lollipop(a, b) => a
                .fragment_offender(fragment)
                .or_else(|| b.fragment_offender(fragment)),
        }
    }

    fn prec(&self) -> u8 {
        // Binding strength, loosest first: -o, (par), +, &, *, ~ and leaves.
        // Level 2 is reserved for par, which parses but never prints.
        match self {
            Formula::Lollipop(_, _) => 1,
            Formula::Plus(_, _) => 3,
            Formula::With(_, _) => 4,
            Formula::Tensor(_, _) => 5,
            Formula::Neg(_) => 6,
            Formula::Atom(_) | Formula::One | Formula::Top => 7,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::One => write!(f, "1"),
            Formula::Top => write!(f, "top"),
            Formula::Neg(a) => {
                write!(f, "~")?;
                a.fmt_prec(f, 6)
            }
            Formula::Tensor(a, b) => {
                a.fmt_prec(f, 5)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 6)
            }
            Formula::With(a, b) => {
                a.fmt_prec(f, 4)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 5)
            }
            Formula::Plus(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 4)
            }
            Formula::Lollipop(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " -o ")?;
                b.fmt_prec(f, 1)
            }
        }
    }
}

impl fmt::Display for Formula {
    /// Minimal parenthesization: the output reparses to the same formula.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Ord for Formula {
    /// The canonical order everywhere (multiset iteration, tensor folds,
    /// enumeration) is lexicographic on the printed form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing_uses_minimal_parens() {
        assert_eq!(tensor(atom("A"), atom("B")).to_string(), "A * B");
        assert_eq!(
            tensor(tensor(atom("A"), atom("A")), atom("B")).to_string(),
            "A * A * B"
        );
        assert_eq!(
            tensor(atom("A"), tensor(atom("A"), atom("B"))).to_string(),
            "A * (A * B)"
        );
        assert_eq!(
            lolli(atom("flour"), atom("bread")).to_string(),
            "flour -o bread"
        );
        assert_eq!(
            lolli(atom("A"), lolli(atom("B"), atom("C"))).to_string(),
            "A -o B -o C"
        );
        assert_eq!(
            lolli(lolli(atom("A"), atom("B")), atom("C")).to_string(),
            "(A -o B) -o C"
        );
        assert_eq!(neg(tensor(atom("A"), atom("B"))).to_string(), "~(A * B)");
        assert_eq!(neg(neg(atom("A"))).to_string(), "~~A");
        assert_eq!(zero().to_string(), "~top");
        assert_eq!(bot().to_string(), "~1");
        assert_eq!(par(atom("A"), atom("B")).to_string(), "~A -o B");
        assert_eq!(
            plus(with(atom("A"), atom("B")), atom("C")).to_string(),
            "A & B + C"
        );
        assert_eq!(
            with(atom("A"), plus(atom("B"), atom("C"))).to_string(),
            "A & (B + C)"
        );
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(atom("A").size(), 1);
        assert_eq!(neg(atom("A")).size(), 2);
        assert_eq!(lolli(tensor(atom("A"), atom("B")), atom("C")).size(), 5);
    }

    #[test]
    fn mll_rejects_additives() {
        assert!(atom("A").fits_fragment(Fragment::Mll));
        assert!(bot().fits_fragment(Fragment::Mll));
        assert!(!zero().fits_fragment(Fragment::Mll));
        assert_eq!(
            with(atom("A"), atom("B")).fragment_offender(Fragment::Mll),
            Some("&")
        );
        assert_eq!(
            lolli(atom("A"), plus(atom("B"), atom("C"))).fragment_offender(Fragment::Mll),
            Some("+")
        );
        assert!(plus(atom("A"), atom("B")).fits_fragment(Fragment::Mall));
    }

    #[test]
    fn canonical_order_is_printed_lex() {
        let mut v = vec![atom("flour"), tensor(atom("A"), atom("B")), atom("A")];
        v.sort();
        assert_eq!(
            v.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            vec!["A", "A * B", "flour"]
        );
    }
}
