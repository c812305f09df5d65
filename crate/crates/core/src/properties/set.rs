use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Atomic fairness and stability conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    /// Credibility: no profitable unilateral deviation.
    Cr,
    /// Equality: equal weights incur equal cost.
    Eq,
    /// Envy-freeness.
    Ef,
    /// Weak ordered envy-freeness.
    Woe,
    /// Strong monotonicity.
    Sm,
    /// Weak monotonicity.
    Wm,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Cr,
        Property::Eq,
        Property::Ef,
        Property::Woe,
        Property::Sm,
        Property::Wm,
    ];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Cr => "Cr",
            Property::Eq => "Eq",
            Property::Ef => "EF",
            Property::Woe => "WOE",
            Property::Sm => "SM",
            Property::Wm => "WM",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A conjunction of atomic properties.
///
/// Ordered envy-freeness and monotonicity are not atoms: `OE` parses to
/// `WOE+Eq` and `M` to `WM+Eq`. Nothing else is simplified, so `EF+Eq`
/// keeps both atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PropertySet(u8);

impl PropertySet {
    /// The empty conjunction.
    pub const TOP: PropertySet = PropertySet(0);

    pub fn of(atoms: &[Property]) -> Self {
        atoms.iter().fold(PropertySet::TOP, |s, &p| s.with(p))
    }

    pub fn oe() -> Self {
        PropertySet::of(&[Property::Woe, Property::Eq])
    }

    pub fn m() -> Self {
        PropertySet::of(&[Property::Wm, Property::Eq])
    }

    pub fn with(self, p: Property) -> Self {
        PropertySet(self.0 | p.bit())
    }

    pub fn without(self, p: Property) -> Self {
        PropertySet(self.0 & !p.bit())
    }

    pub fn contains(self, p: Property) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn is_subset(self, other: PropertySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: PropertySet) -> Self {
        PropertySet(self.0 | other.0)
    }

    pub fn is_top(self) -> bool {
        self.0 == 0
    }

    /// Atoms in the fixed order Cr, Eq, EF, WOE, SM, WM.
    pub fn atoms(self) -> impl Iterator<Item = Property> {
        Property::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    /// All 64 subsets of the atoms.
    pub fn all_subsets() -> impl Iterator<Item = PropertySet> {
        (0u8..64).map(PropertySet)
    }
}

impl fmt::Display for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return f.write_str("TOP");
        }
        // Display order reads naturally: fairness atoms first, Cr last.
        let order = [
            Property::Ef,
            Property::Woe,
            Property::Sm,
            Property::Wm,
            Property::Eq,
            Property::Cr,
        ];
        let mut first = true;
        for p in order.into_iter().filter(|&p| self.contains(p)) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            f.write_str(p.name())?;
        }
        Ok(())
    }
}

impl FromStr for PropertySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = PropertySet::TOP;
        for raw in s.split('+') {
            let atom = raw.trim();
            let add = match atom.to_ascii_uppercase().as_str() {
                "CR" => PropertySet::of(&[Property::Cr]),
                "EQ" => PropertySet::of(&[Property::Eq]),
                "EF" => PropertySet::of(&[Property::Ef]),
                "WOE" => PropertySet::of(&[Property::Woe]),
                "SM" => PropertySet::of(&[Property::Sm]),
                "WM" => PropertySet::of(&[Property::Wm]),
                "OE" => PropertySet::oe(),
                "M" => PropertySet::m(),
                "TOP" => PropertySet::TOP,
                _ => return Err(Error::UnknownProperty(atom.to_string())),
            };
            set = set.union(add);
        }
        Ok(set)
    }
}

impl Serialize for PropertySet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PropertySet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
